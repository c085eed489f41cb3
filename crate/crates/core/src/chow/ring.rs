//! The coinvariant quotient Q[x_1,…,x_g]/(f_1,…,f_g), f_i = Σ x_j^{2i},
//! with coefficients polynomial in a formal p and formal k-symbols.
//! Normal forms come from per-degree exact linear algebra: in each
//! x-degree the multiples of the generators span a subspace of the
//! monomial span, and we eliminate graded-reverse-lexicographically
//! smallest monomials first, keeping the grevlex-largest as the quotient
//! basis.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::OnceLock;

use num::rational::BigRational;
use num::{BigInt, One, Zero};
use thiserror::Error;

use crate::chow::poly::MPoly;
use crate::rootdata::Weight;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChowError {
    #[error("input is not homogeneous in the x-variables")]
    NotHomogeneous,
    #[error("degree mismatch: class degree {class} + power {power} != g^2 = {top}")]
    DegreeMismatch {
        class: u32,
        power: u32,
        top: u32,
    },
    #[error("normalizer monomial reduces to zero")]
    DegenerateNormalizer,
    #[error("weight length {0} does not match g = {1}")]
    WeightLength(usize, usize),
}

struct DegreeTable {
    basis: Vec<Vec<u16>>,
    // every monomial of this degree -> combination of basis monomials
    nf: HashMap<Vec<u16>, Vec<(usize, BigRational)>>,
}

pub struct ChowRing {
    g: usize,
    // built on first use; degree-16 elimination at g = 4 is costly enough
    // that callers who never touch the top degrees shouldn't pay for it
    tables: Vec<OnceLock<DegreeTable>>,
}

/// grevlex on exponent vectors: higher total degree wins; at equal degree
/// the vector whose rightmost nonzero coordinate of the difference is
/// negative is the larger.
pub fn cmp_grevlex(a: &[u16], b: &[u16]) -> Ordering {
    let da: u32 = a.iter().map(|&x| x as u32).sum();
    let db: u32 = b.iter().map(|&x| x as u32).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller entry on the right means larger in grevlex
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

fn monomials_of_degree(g: usize, d: u32) -> Vec<Vec<u16>> {
    let mut out = Vec::new();
    let mut cur = vec![0u16; g];
    fn rec(g: usize, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Vec<u16>>) {
        if i == g - 1 {
            cur[i] = left as u16;
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[i] = e as u16;
            rec(g, i + 1, left - e, cur, out);
        }
    }
    rec(g, 0, d, &mut cur, &mut out);
    out
}

impl ChowRing {
    pub fn new(g: usize) -> Self {
        assert!((1..=4).contains(&g), "desk scale: 1 <= g <= 4");
        let top = g * g;
        ChowRing {
            g,
            tables: (0..=top).map(|_| OnceLock::new()).collect(),
        }
    }

    fn table(&self, d: u32) -> Option<&DegreeTable> {
        let slot = self.tables.get(d as usize)?;
        Some(slot.get_or_init(|| Self::build_table(self.g, d)))
    }

    pub fn g(&self) -> usize {
        self.g
    }

    pub fn nvars(&self) -> usize {
        2 * self.g + 1
    }

    /// Variable names in context order: p, k_1…k_g, x_1…x_g.
    pub fn var_names(&self) -> Vec<String> {
        let mut names = vec!["p".to_string()];
        for i in 1..=self.g {
            names.push(format!("k{i}"));
        }
        for i in 1..=self.g {
            names.push(format!("x{i}"));
        }
        names
    }

    fn x_index(&self, i: usize) -> usize {
        // x_i (1-based) lives at context slot g + i
        self.g + i
    }

    pub fn p_var(&self) -> MPoly {
        MPoly::var(self.nvars(), 0)
    }

    pub fn k_var(&self, i: usize) -> MPoly {
        assert!((1..=self.g).contains(&i));
        MPoly::var(self.nvars(), i)
    }

    pub fn x_var(&self, i: usize) -> MPoly {
        assert!((1..=self.g).contains(&i));
        MPoly::var(self.nvars(), self.x_index(i))
    }

    /// The generators f_i = x_1^{2i} + … + x_g^{2i}, i = 1…g.
    pub fn invariant_ideal_generators(&self) -> Vec<MPoly> {
        (1..=self.g as u32)
            .map(|i| {
                let mut f = MPoly::zero(self.nvars());
                for j in 1..=self.g {
                    f = f.add(&self.x_var(j).pow(2 * i));
                }
                f
            })
            .collect()
    }

    fn build_table(g: usize, d: u32) -> DegreeTable {
        let mut monos = monomials_of_degree(g, d);
        monos.sort_by(|a, b| cmp_grevlex(a, b));
        let col_of: HashMap<Vec<u16>, usize> = monos
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        // rows: m·f_i for every i and monomial m of degree d − 2i
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for i in 1..=g as u32 {
            if d < 2 * i {
                continue;
            }
            for m in monomials_of_degree(g, d - 2 * i) {
                let mut row = vec![BigRational::zero(); monos.len()];
                for j in 0..g {
                    let mut e = m.clone();
                    e[j] += 2 * i as u16;
                    row[col_of[&e]] += BigRational::one();
                }
                rows.push(row);
            }
        }
        // RREF pivoting on the leftmost (grevlex-smallest) columns
        let ncols = monos.len();
        let mut pivot_of_col: Vec<Option<usize>> = vec![None; ncols];
        let mut rank = 0usize;
        for col in 0..ncols {
            let Some(r) = (rank..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(rank, r);
            let inv = rows[rank][col].recip();
            for c in col..ncols {
                let v = rows[rank][c].clone() * &inv;
                rows[rank][c] = v;
            }
            for r in 0..rows.len() {
                if r != rank && !rows[r][col].is_zero() {
                    let factor = rows[r][col].clone();
                    for c in col..ncols {
                        let delta = rows[rank][c].clone() * &factor;
                        rows[r][c] -= delta;
                    }
                }
            }
            pivot_of_col[col] = Some(rank);
            rank += 1;
        }
        let basis: Vec<Vec<u16>> = (0..ncols)
            .filter(|&c| pivot_of_col[c].is_none())
            .map(|c| monos[c].clone())
            .collect();
        let basis_index: HashMap<Vec<u16>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let mut nf = HashMap::new();
        for (c, m) in monos.iter().enumerate() {
            match pivot_of_col[c] {
                None => {
                    nf.insert(m.clone(), vec![(basis_index[m], BigRational::one())]);
                }
                Some(r) => {
                    // row says m + Σ a_l·b_l = 0 with b_l basis monomials
                    let combo: Vec<(usize, BigRational)> = (0..ncols)
                        .filter(|&l| l != c && !rows[r][l].is_zero())
                        .map(|l| (basis_index[&monos[l]], -rows[r][l].clone()))
                        .collect();
                    nf.insert(m.clone(), combo);
                }
            }
        }
        DegreeTable { basis, nf }
    }

    /// Basis monomials (x-exponent vectors, grevlex ascending) of one
    /// graded piece; empty beyond the top degree.
    pub fn basis(&self, d: u32) -> &[Vec<u16>] {
        static EMPTY: &[Vec<u16>] = &[];
        self.table(d).map(|t| t.basis.as_slice()).unwrap_or(EMPTY)
    }

    pub fn quotient_dimensions(&self) -> Vec<usize> {
        (0..self.tables.len() as u32)
            .map(|d| self.table(d).unwrap().basis.len())
            .collect()
    }

    fn x_part(&self, expo: &[u16]) -> Vec<u16> {
        expo[self.g + 1..].to_vec()
    }

    fn x_degree_of(&self, expo: &[u16]) -> u32 {
        expo[self.g + 1..].iter().map(|&x| x as u32).sum()
    }

    /// x-degree of a class, requiring homogeneity in the x-variables.
    pub fn x_degree(&self, poly: &MPoly) -> Result<u32, ChowError> {
        let mut deg: Option<u32> = None;
        for e in poly.terms().keys() {
            let d = self.x_degree_of(e);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev == d => {}
                Some(_) => return Err(ChowError::NotHomogeneous),
            }
        }
        Ok(deg.unwrap_or(0))
    }

    /// Canonical representative of an x-homogeneous class: every x-monomial
    /// is rewritten into the fixed complement basis of its degree; degrees
    /// above g² collapse to zero. Coefficients in p and k pass through.
    pub fn normal_form(&self, poly: &MPoly) -> Result<MPoly, ChowError> {
        let d = self.x_degree(poly)?;
        let mut out = MPoly::zero(self.nvars());
        let Some(table) = self.table(d) else {
            return Ok(out);
        };
        for (e, c) in poly.terms() {
            let xm = self.x_part(e);
            for (bi, coeff) in &table.nf[&xm] {
                let mut expo = e.to_vec();
                expo[self.g + 1..].copy_from_slice(&table.basis[*bi]);
                out.add_term(expo, c * coeff);
            }
        }
        Ok(out)
    }

    /// c₁(L_λ) with symbolic coefficients: k₁x₁ + … + k_gx_g.
    pub fn c1_symbolic(&self) -> MPoly {
        let mut c = MPoly::zero(self.nvars());
        for i in 1..=self.g {
            c = c.add(&self.k_var(i).mul(&self.x_var(i)));
        }
        c
    }

    /// Coefficient of the class on one x-monomial, as a polynomial in p
    /// and the k-symbols.
    pub fn coeff_of_x_monomial(&self, poly: &MPoly, xm: &[u16]) -> MPoly {
        let mut out = MPoly::zero(self.nvars());
        for (e, c) in poly.terms() {
            if self.x_part(e) == xm {
                let mut expo = e.to_vec();
                for x in &mut expo[self.g + 1..] {
                    *x = 0;
                }
                out.add_term(expo, c.clone());
            }
        }
        out
    }

    /// c₁(L_λ)^power · cls, reduced, read off against the normalizer
    /// monomial with the identification normalizer = 1. The k-symbols stay
    /// formal; the result is a polynomial in p and k₁…k_g.
    pub fn intersection_symbolic(
        &self,
        cls: &MPoly,
        power: u32,
        normalizer: &[u16],
    ) -> Result<MPoly, ChowError> {
        let top = (self.g * self.g) as u32;
        let cls_deg = self.x_degree(cls)?;
        if cls_deg + power != top {
            return Err(ChowError::DegreeMismatch {
                class: cls_deg,
                power,
                top,
            });
        }
        let product = self.normal_form(&self.c1_symbolic().pow(power).mul(cls))?;
        // the top graded piece is one-dimensional; express the normalizer
        // there and divide out its unit
        let table = self.table(top).unwrap();
        assert_eq!(table.basis.len(), 1, "top degree must be one-dimensional");
        let norm_combo = &table.nf[normalizer];
        if norm_combo.is_empty() {
            return Err(ChowError::DegenerateNormalizer);
        }
        let unit = &norm_combo[0].1;
        let coeff = self.coeff_of_x_monomial(&product, &table.basis[0]);
        Ok(coeff.scale(&unit.recip()))
    }

    /// Intersection number with the weight substituted for the k-symbols:
    /// a polynomial in p alone.
    pub fn intersection_number(
        &self,
        cls: &MPoly,
        lambda: &Weight,
        power: u32,
        normalizer: &[u16],
    ) -> Result<MPoly, ChowError> {
        if lambda.len() != self.g {
            return Err(ChowError::WeightLength(lambda.len(), self.g));
        }
        let symbolic = self.intersection_symbolic(cls, power, normalizer)?;
        let mut values: Vec<Option<BigRational>> = vec![None; self.nvars()];
        for (i, &c) in lambda.coords().iter().enumerate() {
            values[1 + i] = Some(BigRational::from_integer(BigInt::from(c)));
        }
        Ok(symbolic.substitute(&values))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chow::poly::parse_expr;

    fn ring2() -> ChowRing {
        ChowRing::new(2)
    }

    fn pe(ring: &ChowRing, s: &str) -> MPoly {
        let names = ring.var_names();
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        parse_expr(s, &refs).unwrap()
    }

    #[test]
    fn grevlex_order() {
        // degree-2 monomials in two variables, ascending
        let mut m = monomials_of_degree(2, 2);
        m.sort_by(|a, b| cmp_grevlex(a, b));
        assert_eq!(m, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }

    #[test]
    fn generators() {
        let r = ring2();
        let gens = r.invariant_ideal_generators();
        assert_eq!(gens[0], pe(&r, "x1^2 + x2^2"));
        assert_eq!(gens[1], pe(&r, "x1^4 + x2^4"));
        assert_eq!(
            ChowRing::new(1).invariant_ideal_generators()[0],
            parse_expr("x1^2", &["p", "k1", "x1"]).unwrap()
        );
    }

    #[test]
    fn quotient_dimensions_small() {
        assert_eq!(ChowRing::new(1).quotient_dimensions(), vec![1, 1]);
        assert_eq!(ring2().quotient_dimensions(), vec![1, 2, 2, 2, 1]);
        let d3 = ChowRing::new(3).quotient_dimensions();
        assert_eq!(d3.iter().sum::<usize>(), 48);
        assert_eq!(*d3.last().unwrap(), 1);
        let rev: Vec<usize> = d3.iter().rev().cloned().collect();
        assert_eq!(d3, rev);
    }

    #[test]
    fn normal_form_examples() {
        let r = ring2();
        assert_eq!(
            r.normal_form(&pe(&r, "x2^2")).unwrap(),
            pe(&r, "-x1^2")
        );
        assert!(r.normal_form(&pe(&r, "x1^2*x2^2")).unwrap().is_zero());
        assert_eq!(
            r.normal_form(&pe(&r, "x1*x2^3")).unwrap(),
            pe(&r, "-x1^3*x2")
        );
        let r3 = ChowRing::new(3);
        let top = pe(&r3, "x1^5*x2^3*x3");
        assert_eq!(r3.normal_form(&top).unwrap(), top);
        assert_eq!(r3.basis(9), &[vec![5, 3, 1]]);
    }

    #[test]
    fn normal_form_is_idempotent_and_kills_ideal() {
        let r = ring2();
        for s in ["x1^3 + x2^3", "x1*x2", "x1^2*x2 - x2^3", "x1^4"] {
            let q = pe(&r, s);
            let n1 = r.normal_form(&q).unwrap();
            assert_eq!(r.normal_form(&n1).unwrap(), n1, "{s}");
        }
        for f in r.invariant_ideal_generators() {
            for m in ["1", "x1", "x2", "x1*x2", "x2^2"] {
                let q = f.mul(&pe(&r, m));
                if r.x_degree(&q).unwrap() <= 4 {
                    assert!(r.normal_form(&q).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn printed_ideal_presentation_is_equivalent() {
        // f2 = f1^2 − 2·x1²x2², so (f1, f2) and (f1, x1²x2²) agree
        let r = ring2();
        let gens = r.invariant_ideal_generators();
        let diff = gens[0].pow(2).sub(&pe(&r, "2*x1^2*x2^2"));
        assert_eq!(diff, gens[1]);
    }

    #[test]
    fn degree_four_pairing() {
        let r = ring2();
        let one = pe(&r, "1");
        let norm = vec![1u16, 3u16];
        let got = r.intersection_symbolic(&one, 4, &norm).unwrap();
        assert_eq!(got, pe(&r, "4*(k1*k2^3 - k1^3*k2)"));
    }

    #[test]
    fn normalizer_covariance() {
        // switching the top-monomial convention rescales every product by
        // the same unit (here −1)
        let r = ring2();
        let cls = pe(&r, "(p^2-1)*(p*x2-x1)*x1^2");
        let a = r.intersection_symbolic(&cls, 1, &[1, 3]).unwrap();
        let b = r.intersection_symbolic(&cls, 1, &[3, 1]).unwrap();
        assert_eq!(a, b.neg());
    }

    #[test]
    fn rejects_degree_mismatch() {
        let r = ring2();
        let one = pe(&r, "1");
        assert!(matches!(
            r.intersection_symbolic(&one, 3, &[1, 3]),
            Err(ChowError::DegreeMismatch { .. })
        ));
        assert!(matches!(
            r.x_degree(&pe(&r, "x1 + 1")),
            Err(ChowError::NotHomogeneous)
        ));
    }
}
