//! Ekedahl–Oort cycle-class fixtures. Classes are inputs, never computed;
//! the file format carries the strata (with lengths and, when printed,
//! their classes), the normalizing top monomial, and the expected
//! intersection products:
//!
//! ```text
//! eo-fixture v1 g=2
//! stratum w0 len=4: 1
//! normalizer: x1*x2^3
//! product w0 lambda=(k1,k2) expect: 4*(k1*k2^3-k1^3*k2)
//! ```
//!
//! A product stanza may carry `len=<l>` for strata whose class is not
//! printed (the expected value then stands alone), and `lambda=(...)`
//! is either the symbolic tuple `(k1,…,kg)` or a concrete weight.

use num::rational::BigRational;
use num::{BigInt, Signed};
use thiserror::Error;

use crate::chow::poly::{parse_expr, ExprError, MPoly};
use crate::chow::ring::{ChowError, ChowRing};
use crate::rootdata::Weight;

pub const FIXTURE_G2: &str = include_str!("../../fixtures/eo_g2.txt");
pub const FIXTURE_G3: &str = include_str!("../../fixtures/eo_g3.txt");

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("malformed fixture: {0}")]
    Malformed(String),
    #[error("fixture expression: {0}")]
    Expr(#[from] ExprError),
    #[error(transparent)]
    Chow(#[from] ChowError),
    #[error("product {label}: expected {expected}, computed {computed}")]
    ProductMismatch {
        label: String,
        expected: String,
        computed: String,
    },
    #[error("stratum {label}: class degree {degree} != g^2 - len = {expected}")]
    ClassDegree {
        label: String,
        degree: u32,
        expected: u32,
    },
}

#[derive(Debug, Clone)]
pub struct Stratum {
    pub label: String,
    pub len: u32,
    pub class: MPoly,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    /// the formal tuple (k1,…,kg)
    Symbolic,
    Concrete(Weight),
}

#[derive(Debug, Clone)]
pub struct ProductSpec {
    pub label: String,
    pub len: Option<u32>,
    pub lambda: LambdaSpec,
    pub expect: MPoly,
}

pub struct EOFixture {
    pub g: usize,
    pub strata: Vec<Stratum>,
    pub normalizer: Vec<u16>,
    pub products: Vec<ProductSpec>,
}

impl EOFixture {
    pub fn parse(text: &str) -> Result<EOFixture, FixtureError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| FixtureError::Malformed("empty file".into()))?;
        let g: usize = header
            .strip_prefix("eo-fixture v1 g=")
            .and_then(|s| s.trim().parse().ok())
            .ok_or_else(|| FixtureError::Malformed(format!("bad header {header:?}")))?;
        let names = fixture_var_names(g);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        let mut strata = Vec::new();
        let mut normalizer: Option<Vec<u16>> = None;
        let mut products = Vec::new();
        for line in lines {
            let line = line.trim();
            if let Some(rest) = line.strip_prefix("stratum ") {
                let (head, expr) = rest
                    .split_once(':')
                    .ok_or_else(|| FixtureError::Malformed(line.into()))?;
                let mut it = head.split_whitespace();
                let label = it
                    .next()
                    .ok_or_else(|| FixtureError::Malformed(line.into()))?
                    .to_string();
                let len: u32 = it
                    .next()
                    .and_then(|s| s.strip_prefix("len="))
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| FixtureError::Malformed(line.into()))?;
                let class = parse_expr(expr, &refs)?;
                strata.push(Stratum { label, len, class });
            } else if let Some(rest) = line.strip_prefix("normalizer:") {
                let mono = parse_expr(rest, &refs)?;
                let terms = mono.terms();
                if terms.len() != 1 {
                    return Err(FixtureError::Malformed(line.into()));
                }
                let expo = terms.keys().next().unwrap();
                normalizer = Some(expo[g + 1..].to_vec());
            } else if let Some(rest) = line.strip_prefix("product ") {
                let (head, expr) = rest
                    .split_once("expect:")
                    .ok_or_else(|| FixtureError::Malformed(line.into()))?;
                let mut label = None;
                let mut len = None;
                let mut lambda = None;
                for piece in head.split_whitespace() {
                    if let Some(v) = piece.strip_prefix("len=") {
                        len = Some(
                            v.parse()
                                .map_err(|_| FixtureError::Malformed(line.into()))?,
                        );
                    } else if let Some(v) = piece.strip_prefix("lambda=") {
                        lambda = Some(parse_lambda(v, g)?);
                    } else if label.is_none() {
                        label = Some(piece.to_string());
                    } else {
                        return Err(FixtureError::Malformed(line.into()));
                    }
                }
                let expect = parse_expr(expr, &refs)?;
                products.push(ProductSpec {
                    label: label.ok_or_else(|| FixtureError::Malformed(line.into()))?,
                    len,
                    lambda: lambda.ok_or_else(|| FixtureError::Malformed(line.into()))?,
                    expect,
                });
            } else {
                return Err(FixtureError::Malformed(line.into()));
            }
        }
        Ok(EOFixture {
            g,
            strata,
            normalizer: normalizer
                .ok_or_else(|| FixtureError::Malformed("missing normalizer".into()))?,
            products,
        })
    }

    pub fn stratum(&self, label: &str) -> Option<&Stratum> {
        self.strata.iter().find(|s| s.label == label)
    }

    /// Checks every stratum's class degree and re-derives every product
    /// stanza that names a stratum with a printed class, comparing
    /// coefficient-exactly. Products without a class are left as stored
    /// expected values.
    pub fn verify(&self, ring: &ChowRing) -> Result<(), FixtureError> {
        assert_eq!(ring.g(), self.g);
        let top = (self.g * self.g) as u32;
        for s in &self.strata {
            let deg = ring.x_degree(&s.class)?;
            if deg + s.len != top {
                return Err(FixtureError::ClassDegree {
                    label: s.label.clone(),
                    degree: deg,
                    expected: top - s.len,
                });
            }
        }
        let names = fixture_var_names(self.g);
        let refs: Vec<&str> = names.iter().map(|s| s.as_str()).collect();
        for prod in &self.products {
            let Some(stratum) = self.stratum(&prod.label) else {
                continue;
            };
            let symbolic =
                ring.intersection_symbolic(&stratum.class, stratum.len, &self.normalizer)?;
            let computed = match &prod.lambda {
                LambdaSpec::Symbolic => symbolic,
                LambdaSpec::Concrete(w) => {
                    let mut values = vec![None; 2 * self.g + 1];
                    for (i, &c) in w.coords().iter().enumerate() {
                        values[1 + i] = Some(BigRational::from_integer(BigInt::from(c)));
                    }
                    symbolic.substitute(&values)
                }
            };
            if computed != prod.expect {
                return Err(FixtureError::ProductMismatch {
                    label: prod.label.clone(),
                    expected: prod.expect.render(&refs),
                    computed: computed.render(&refs),
                });
            }
        }
        Ok(())
    }

    /// Intersection value of one stratum at (λ, p): from its class when
    /// printed, otherwise from a stored product stanza matching λ.
    fn value_at(
        &self,
        ring: &ChowRing,
        label: &str,
        len: u32,
        lambda: &Weight,
        p_value: u64,
    ) -> Result<Option<BigRational>, FixtureError> {
        let p_rat = BigRational::from_integer(BigInt::from(p_value));
        if let Some(s) = self.stratum(label) {
            let in_p = ring.intersection_number(&s.class, lambda, len, &self.normalizer)?;
            let mut values = vec![None; 2 * self.g + 1];
            values[0] = Some(p_rat);
            return Ok(Some(in_p.substitute(&values).constant_value()));
        }
        for prod in &self.products {
            if prod.label != label {
                continue;
            }
            let mut values = vec![None; 2 * self.g + 1];
            values[0] = Some(p_rat.clone());
            match &prod.lambda {
                LambdaSpec::Concrete(w) if w == lambda => {}
                LambdaSpec::Symbolic => {
                    for (i, &c) in lambda.coords().iter().enumerate() {
                        values[1 + i] = Some(BigRational::from_integer(BigInt::from(c)));
                    }
                }
                _ => continue,
            }
            return Ok(Some(prod.expect.substitute(&values).constant_value()));
        }
        Ok(None)
    }

    /// Walks the strata by increasing length and returns the first whose
    /// intersection number against c₁(L_λ)^{l(w)} is negative at p.
    pub fn not_nef_witness(
        &self,
        ring: &ChowRing,
        lambda: &Weight,
        p_value: u64,
    ) -> Result<Option<(String, BigRational)>, FixtureError> {
        let mut entries: Vec<(String, u32)> = self
            .strata
            .iter()
            .map(|s| (s.label.clone(), s.len))
            .collect();
        for prod in &self.products {
            if self.stratum(&prod.label).is_none() {
                let len = prod.len.ok_or_else(|| {
                    FixtureError::Malformed(format!(
                        "product {} has no stratum and no len=",
                        prod.label
                    ))
                })?;
                if !entries.iter().any(|(l, _)| l == &prod.label) {
                    entries.push((prod.label.clone(), len));
                }
            }
        }
        entries.sort_by_key(|&(_, len)| len);
        for (label, len) in entries {
            if let Some(v) = self.value_at(ring, &label, len, lambda, p_value)? {
                if v.is_negative() {
                    return Ok(Some((label, v)));
                }
            }
        }
        Ok(None)
    }
}

pub fn fixture_var_names(g: usize) -> Vec<String> {
    let mut names = vec!["p".to_string()];
    for i in 1..=g {
        names.push(format!("k{i}"));
    }
    for i in 1..=g {
        names.push(format!("x{i}"));
    }
    names
}

fn parse_lambda(src: &str, g: usize) -> Result<LambdaSpec, FixtureError> {
    let inner = src
        .strip_prefix('(')
        .and_then(|s| s.strip_suffix(')'))
        .ok_or_else(|| FixtureError::Malformed(format!("bad lambda {src:?}")))?;
    let pieces: Vec<&str> = inner.split(',').map(|s| s.trim()).collect();
    if pieces.len() != g {
        return Err(FixtureError::Malformed(format!("bad lambda {src:?}")));
    }
    if pieces
        .iter()
        .enumerate()
        .all(|(i, s)| *s == format!("k{}", i + 1))
    {
        return Ok(LambdaSpec::Symbolic);
    }
    let coords: Result<Vec<i64>, _> = pieces.iter().map(|s| s.parse()).collect();
    match coords {
        Ok(c) => Ok(LambdaSpec::Concrete(Weight::new(c))),
        Err(_) => Err(FixtureError::Malformed(format!("bad lambda {src:?}"))),
    }
}
