//! `ample` — command-line surface for the positivity toolkit.
//!
//! Exit codes: 0 success / positive verdict, 1 usage error, 2 negative
//! mathematical verdict, 3 precondition failure (e.g. composite p).

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ample_core::cache::PlethysmCache;
use ample_core::chow::{ChowRing, EOFixture};
use ample_core::hyperbolicity::{
    analyze, k_threshold, lambda_k_sym2, p_threshold, HyperbolicityReport, Verdict,
};
use ample_core::partitions::Partition;
use ample_core::positivity::{
    certify, gamma_of, is_prime, is_z_empty_ample, min_certifying_prime, orbit_ratio_max,
    region_scan, render_region, AmpleCertificate, Route,
};
use ample_core::rootdata::{automorphic_weight, RootDatumC, Weight};
use ample_core::symfunc::{plethysm_with_max_height, restrict_height};

const CACHE_ENV: &str = "AMPLE_CACHE_DIR";

#[derive(Parser)]
#[command(
    name = "ample",
    about = "Plethysm, ampleness certificates, hyperbolicity reports and tautological intersections",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose s_λ ∘ s_μ into Schur constituents
    Plethysm(PlethysmArgs),
    /// Graded pieces of Λ^k ∘ Sym² surviving in g variables
    LambdaSym2(LambdaSym2Args),
    /// Ampleness certificate for one automorphic weight at one prime
    Certify(CertifyArgs),
    /// Smallest certifying prime for a weight, if any
    MinPrime(MinPrimeArgs),
    /// Region files of certified weights, one per prime
    Figure1(Figure1Args),
    /// Full report for S_λ Ω¹(log D) at (g, p)
    Hyperbolicity(HyperbolicityArgs),
    /// Re-derive the intersection-product fixtures for one g
    ChowVerify(ChowVerifyArgs),
    /// The k and p thresholds of the main theorem
    Thresholds(ThresholdsArgs),
}

#[derive(Args)]
struct PlethysmArgs {
    /// Outer partition, e.g. "[4,2]"
    lambda: String,
    /// Inner partition, e.g. "[3,1]"
    mu: String,
    /// Print summary counts instead of the full expansion
    #[arg(long)]
    stats: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Keep only constituents of height ≤ this bound
    #[arg(long)]
    max_height: Option<usize>,
    /// Cache directory (falls back to AMPLE_CACHE_DIR)
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Allow degrees above 40
    #[arg(long)]
    unsafe_large: bool,
}

#[derive(Args)]
struct LambdaSym2Args {
    #[arg(long)]
    k: u32,
    #[arg(long)]
    g: usize,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Show the strict-partition derivation of each graded piece
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct CertifyArgs {
    #[arg(long)]
    g: usize,
    /// Weight tuple, e.g. "(-1,-3)"
    #[arg(long)]
    weight: String,
    #[arg(long)]
    p: u64,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Show the inequalities behind the verdict with numbers substituted
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct MinPrimeArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    weight: String,
}

#[derive(Args)]
struct Figure1Args {
    #[arg(long)]
    g: usize,
    /// Primes, comma separated: --p 5,11,31
    #[arg(long, value_delimiter = ',')]
    p: Vec<u64>,
    /// Coordinate box "lo:hi" applied to both axes
    #[arg(long = "box", allow_hyphen_values = true)]
    coord_box: String,
    /// Directory for the output files (default: current directory)
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    /// text: "k2 k1" rows; json: array of [k2, k1] pairs
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Args)]
struct HyperbolicityArgs {
    #[arg(long)]
    g: usize,
    #[arg(long)]
    p: u64,
    /// Partition, e.g. "[2,2]"
    #[arg(long)]
    partition: String,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Per constituent, show the weight derivation and certificate route
    #[arg(long)]
    explain: bool,
}

#[derive(Args)]
struct ChowVerifyArgs {
    #[arg(long)]
    g: usize,
}

#[derive(Args)]
struct ThresholdsArgs {
    #[arg(long)]
    g: usize,
}

enum Failure {
    /// exit 2: the mathematics said no
    Negative(String),
    /// exit 3: input violates a precondition
    Precondition(String),
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) if e.kind() == ErrorKind::DisplayHelp || e.kind() == ErrorKind::DisplayVersion => {
            print!("{e}");
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Plethysm(a) => cmd_plethysm(a),
        Command::LambdaSym2(a) => cmd_lambda_sym2(a),
        Command::Certify(a) => cmd_certify(a),
        Command::MinPrime(a) => cmd_min_prime(a),
        Command::Figure1(a) => cmd_figure1(a),
        Command::Hyperbolicity(a) => cmd_hyperbolicity(a),
        Command::ChowVerify(a) => cmd_chow_verify(a),
        Command::Thresholds(a) => cmd_thresholds(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(2)
        }
        Err(Failure::Precondition(msg)) => {
            eprintln!("{msg}");
            ExitCode::from(3)
        }
    }
}

fn parse_partition(s: &str) -> Result<Partition, Failure> {
    Partition::from_str(s).map_err(|e| Failure::Precondition(format!("bad partition {s:?}: {e}")))
}

fn parse_weight(s: &str, g: usize) -> Result<Weight, Failure> {
    let w = Weight::from_str(s)
        .map_err(|e| Failure::Precondition(format!("bad weight {s:?}: {e}")))?;
    if w.len() != g {
        return Err(Failure::Precondition(format!(
            "weight {w} has {} coordinates, expected g = {g}",
            w.len()
        )));
    }
    Ok(w)
}

fn require_prime(p: u64) -> Result<(), Failure> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Failure::Precondition(format!("{p} is not prime")))
    }
}

fn require_g(g: usize) -> Result<(), Failure> {
    if (1..=8).contains(&g) {
        Ok(())
    } else {
        Err(Failure::Precondition(format!("g = {g} out of range 1..=8")))
    }
}

#[derive(Serialize)]
struct PlethysmOut {
    lambda: String,
    mu: String,
    constituents: Vec<ConstituentOut>,
}

#[derive(Serialize)]
struct ConstituentOut {
    partition: String,
    multiplicity: u64,
}

fn cmd_plethysm(a: PlethysmArgs) -> Result<(), Failure> {
    let lam = parse_partition(&a.lambda)?;
    let mu = parse_partition(&a.mu)?;
    let degree = lam.size() * mu.size();
    if degree > 40 && !a.unsafe_large {
        return Err(Failure::Precondition(format!(
            "degree {degree} exceeds 40; pass --unsafe-large to proceed"
        )));
    }
    let cache_dir = a
        .cache_dir
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from));
    let full = match cache_dir {
        Some(dir) => PlethysmCache::new(dir)
            .plethysm(&lam, &mu)
            .map_err(|e| Failure::Precondition(format!("plethysm failed: {e}")))?,
        None => plethysm_with_max_height(&lam, &mu, None)
            .map_err(|e| Failure::Precondition(format!("plethysm failed: {e}")))?,
    };
    let res = match a.max_height {
        Some(h) => restrict_height(&full, h),
        None => full,
    };
    if a.stats {
        let max = res.iter().map(|(_, m)| *m).max().unwrap_or(0);
        let total: u64 = res.iter().map(|(_, m)| *m).sum();
        println!("partitions={} max_mult={} total={}", res.len(), max, total);
        return Ok(());
    }
    match a.format {
        Format::Text => {
            for (eta, m) in &res {
                println!("{eta}\t{m}");
            }
        }
        Format::Csv => {
            println!("partition,multiplicity");
            for (eta, m) in &res {
                println!("\"{eta}\",{m}");
            }
        }
        Format::Json => {
            let out = PlethysmOut {
                lambda: lam.to_string(),
                mu: mu.to_string(),
                constituents: res
                    .iter()
                    .map(|(eta, m)| ConstituentOut {
                        partition: eta.to_string(),
                        multiplicity: *m,
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct LambdaSym2Out {
    k: u32,
    g: usize,
    pieces: Vec<PieceOut>,
}

#[derive(Serialize)]
struct PieceOut {
    partition: String,
    weight: String,
}

fn cmd_lambda_sym2(a: LambdaSym2Args) -> Result<(), Failure> {
    require_g(a.g)?;
    if a.k == 0 {
        return Err(Failure::Precondition("k must be positive".into()));
    }
    let pieces = lambda_k_sym2(a.k, a.g);
    if a.explain {
        for (eta, _) in &pieces {
            // recover the strict partition: diagonal hooks of 2[λ] are 2λ_i
            let hooks = eta.diagonal_hooks();
            let strict: Vec<u32> = hooks.iter().map(|h| h / 2).collect();
            println!(
                "# strict {} -> 2[.] = {eta}",
                Partition::new(strict).unwrap()
            );
        }
    }
    match a.format {
        Format::Text => {
            for (eta, _) in &pieces {
                let w = automorphic_weight(eta, a.g).unwrap();
                println!("{eta}\t{w}");
            }
        }
        Format::Csv => {
            println!("partition,weight");
            for (eta, _) in &pieces {
                let w = automorphic_weight(eta, a.g).unwrap();
                println!("\"{eta}\",\"{w}\"");
            }
        }
        Format::Json => {
            let out = LambdaSym2Out {
                k: a.k,
                g: a.g,
                pieces: pieces
                    .iter()
                    .map(|(eta, _)| PieceOut {
                        partition: eta.to_string(),
                        weight: automorphic_weight(eta, a.g).unwrap().to_string(),
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
    }
    Ok(())
}

fn route_name(r: Route) -> &'static str {
    match r {
        Route::Parallel => "parallel",
        Route::Direct => "direct",
        Route::TensorPower => "tensor_power",
        Route::None => "none",
    }
}

fn explain_certificate(c: &AmpleCertificate, g: usize) {
    let datum = RootDatumC::new(g);
    let gamma = gamma_of(&c.weight, &datum);
    println!("# gamma = 2*lambda + 2*rho_L = {gamma}");
    match orbit_ratio_max(&gamma, &datum) {
        Some(r) => println!("# orbit ratio max = {r} (orbitally p-close iff p - 1 >= {r})"),
        None => println!("# orbit ratio undefined (gamma = 0)"),
    }
    println!(
        "# Z_empty-ample: {} (needs strictly decreasing, negative, pairwise-negative sums)",
        is_z_empty_ample(&gamma, &datum)
    );
    println!("# route: {}", route_name(c.route));
}

fn cmd_certify(a: CertifyArgs) -> Result<(), Failure> {
    require_g(a.g)?;
    require_prime(a.p)?;
    let datum = RootDatumC::new(a.g);
    let weight = parse_weight(&a.weight, a.g)?;
    let cert = certify(&weight, a.p, &datum)
        .map_err(|e| Failure::Precondition(format!("certify failed: {e}")))?;
    if a.explain {
        explain_certificate(&cert, a.g);
    }
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&cert).unwrap()),
        _ => {
            println!(
                "weight={} p={} route={} z_empty_ok={} notes={}",
                cert.weight,
                a.p,
                route_name(cert.route),
                cert.z_empty_ok,
                cert.notes
            );
        }
    }
    if cert.route == Route::None {
        return Err(Failure::Negative(format!(
            "no certificate for {weight} at p = {}",
            a.p
        )));
    }
    Ok(())
}

fn cmd_min_prime(a: MinPrimeArgs) -> Result<(), Failure> {
    require_g(a.g)?;
    let datum = RootDatumC::new(a.g);
    let weight = parse_weight(&a.weight, a.g)?;
    let res = min_certifying_prime(&weight, &datum)
        .map_err(|e| Failure::Precondition(format!("search failed: {e}")))?;
    match res {
        Some(p) => {
            println!("{p}");
            Ok(())
        }
        None => {
            println!("none");
            Err(Failure::Negative(format!("no route certifies {weight}")))
        }
    }
}

fn cmd_figure1(a: Figure1Args) -> Result<(), Failure> {
    if a.g != 2 {
        return Err(Failure::Precondition(
            "figure region files are defined for g = 2".into(),
        ));
    }
    let (lo, hi) = a
        .coord_box
        .split_once(':')
        .and_then(|(l, h)| Some((l.parse::<i64>().ok()?, h.parse::<i64>().ok()?)))
        .ok_or_else(|| {
            Failure::Precondition(format!("bad box {:?}, expected lo:hi", a.coord_box))
        })?;
    if lo > hi {
        return Err(Failure::Precondition(format!("empty box {lo}:{hi}")));
    }
    let datum = RootDatumC::new(2);
    std::fs::create_dir_all(&a.out_dir)
        .map_err(|e| Failure::Precondition(format!("cannot create output dir: {e}")))?;
    for &p in &a.p {
        require_prime(p)?;
        let region = region_scan(p, lo, hi, &datum)
            .map_err(|e| Failure::Precondition(format!("scan failed: {e}")))?;
        let (path, body) = match a.format {
            Format::Json => {
                let mut rows: Vec<[i64; 2]> = region
                    .iter()
                    .map(|w| [w.coords()[1], w.coords()[0]])
                    .collect();
                rows.sort_unstable();
                (
                    a.out_dir.join(format!("g={}p={}.json", a.g, p)),
                    serde_json::to_string_pretty(&rows).unwrap(),
                )
            }
            _ => (
                a.out_dir.join(format!("g={}p={}.txt", a.g, p)),
                render_region(&region),
            ),
        };
        std::fs::write(&path, body)
            .map_err(|e| Failure::Precondition(format!("cannot write {}: {e}", path.display())))?;
        println!("{}\t{} points", path.display(), region.len());
    }
    Ok(())
}

fn render_report_text(rep: &HyperbolicityReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "lambda={} g={} p={} filtration_ok={}",
        rep.lambda, rep.g, rep.p, rep.filtration_ok
    );
    for c in &rep.constituents {
        let _ = writeln!(
            s,
            "{}\tx{}\t{}\troute={}",
            c.eta,
            c.multiplicity,
            c.weight,
            route_name(c.certificate.route)
        );
    }
    let verdict = match rep.verdict {
        Verdict::Certified => "certified",
        Verdict::NotCertified => "not_certified",
        Verdict::FiltrationFails => "filtration_fails",
    };
    let _ = write!(s, "verdict={verdict}");
    if !rep.notes.is_empty() {
        let _ = write!(s, " ({})", rep.notes);
    }
    s
}

fn cmd_hyperbolicity(a: HyperbolicityArgs) -> Result<(), Failure> {
    require_g(a.g)?;
    require_prime(a.p)?;
    let lam = parse_partition(&a.partition)?;
    let rep = analyze(&lam, a.g, a.p)
        .map_err(|e| Failure::Precondition(format!("analysis failed: {e}")))?;
    if a.explain {
        for c in &rep.constituents {
            println!(
                "# {} -> weight {} (pad to length {}, reverse, negate)",
                c.eta, c.weight, rep.g
            );
            explain_certificate(&c.certificate, rep.g);
        }
    }
    match a.format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&rep).unwrap()),
        _ => println!("{}", render_report_text(&rep)),
    }
    match rep.verdict {
        Verdict::Certified => Ok(()),
        Verdict::NotCertified => Err(Failure::Negative(format!(
            "uncovered weights: {}",
            rep.uncovered
                .iter()
                .map(|w| w.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        ))),
        Verdict::FiltrationFails => Err(Failure::Precondition(format!(
            "filtration condition fails for {} at p = {}",
            rep.lambda, rep.p
        ))),
    }
}

fn cmd_chow_verify(a: ChowVerifyArgs) -> Result<(), Failure> {
    let text = match a.g {
        2 => ample_core::chow::fixture::FIXTURE_G2,
        3 => ample_core::chow::fixture::FIXTURE_G3,
        _ => {
            return Err(Failure::Precondition(format!(
                "no fixture shipped for g = {}",
                a.g
            )))
        }
    };
    let fixture = EOFixture::parse(text)
        .map_err(|e| Failure::Precondition(format!("fixture parse failed: {e}")))?;
    let ring = ChowRing::new(a.g);
    match fixture.verify(&ring) {
        Ok(()) => {
            println!(
                "g={} strata={} products={} verified",
                a.g,
                fixture.strata.len(),
                fixture.products.len()
            );
            Ok(())
        }
        Err(e) => Err(Failure::Negative(format!("fixture mismatch: {e}"))),
    }
}

fn cmd_thresholds(a: ThresholdsArgs) -> Result<(), Failure> {
    require_g(a.g)?;
    println!(
        "g={} k_threshold={} p_threshold={}",
        a.g,
        k_threshold(a.g),
        p_threshold(a.g)
    );
    Ok(())
}
