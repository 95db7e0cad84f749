mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use factorcert::arith::{FactorConfig, Int};
use factorcert::bivariate::{BivarPoly, certify_coro6, certify_thm5};
use factorcert::criteria::best_bound;
use factorcert::divisors::DivisorClass;
use factorcert::oracle::count_irreducible_factors;
use factorcert::poly::{RatPoly, parse_poly};
use factorcert::report::CriterionReport;

/// Exit codes: 0 = certified/verified, 1 = no certificate, 2 = input error.
#[derive(Parser)]
#[command(name = "factorcert", version, about = "Certified upper bounds on the number of irreducible factors of integer polynomials", long_about = None)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Certify a factor bound for f at a point pair or over a scanned range.
    Analyze {
        /// Polynomial in x, e.g. "35x^4+12x^2+1".
        poly: String,
        /// Left evaluation point.
        #[arg(long, allow_hyphen_values = true, requires = "b", conflicts_with = "scan")]
        a: Option<i64>,
        /// Right evaluation point.
        #[arg(long, allow_hyphen_values = true, requires = "a")]
        b: Option<i64>,
        /// Scan both points over an inclusive range LO..HI, e.g. "-5..5".
        #[arg(long, allow_hyphen_values = true)]
        scan: Option<String>,
        /// Largest k tried on the theorem routes.
        #[arg(long, default_value_t = 16)]
        kmax: u32,
        /// Divisor class: admissible, unitary or any.
        #[arg(long, default_value = "admissible")]
        class: String,
        /// Emit the full report as JSON instead of text.
        #[arg(long)]
        json: bool,
        /// Seed for the factorization splitting rounds (any value is
        /// reproducible; 0 is the canonical sequence).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Certify a factor bound over Q(x) for a polynomial in y given by a
    /// coefficient file with lines "i: <poly in x>".
    Bivariate {
        file: PathBuf,
        /// Substitution g(x) for the perfect-power route.
        #[arg(long, conflicts_with_all = ["ax", "bx"])]
        g: Option<String>,
        /// Value point a(x) for the degree-comparison route.
        #[arg(long, requires = "bx")]
        ax: Option<String>,
        /// Value point b(x) for the degree-comparison route.
        #[arg(long, requires = "ax")]
        bx: Option<String>,
        /// Bound k to certify on the degree-comparison route.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Divisor class: admissible, unitary or any.
        #[arg(long, default_value = "admissible")]
        class: String,
        /// Degree cap for the exact factorization backend.
        #[arg(long, default_value_t = 8)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a claimed factor bound against the exact factorization oracle.
    Verify {
        poly: String,
        claimed_k: u32,
        /// Degree cap for the oracle.
        #[arg(long, default_value_t = 8)]
        cap: usize,
    },
    /// Render the certifying circles and numeric roots to a deterministic SVG.
    Plot {
        poly: String,
        #[arg(long, allow_hyphen_values = true)]
        a: i64,
        #[arg(long, allow_hyphen_values = true)]
        b: i64,
        /// The k whose ratio q_k is drawn.
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Divisor class: admissible, unitary or any.
        #[arg(long, default_value = "admissible")]
        class: String,
        /// Output path for the SVG file.
        #[arg(short, long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_class(s: &str) -> Result<DivisorClass, String> {
    s.parse::<DivisorClass>()
}

fn parse_range(s: &str) -> Result<std::ops::RangeInclusive<i64>, String> {
    let (lo, hi) = s
        .split_once("..")
        .ok_or_else(|| format!("scan range '{s}' is not of the form LO..HI"))?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad range start '{lo}'"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad range end '{hi}'"))?;
    if lo > hi {
        return Err(format!("empty scan range {lo}..{hi}"));
    }
    Ok(lo..=hi)
}

fn emit_report(rep: &CriterionReport, json: bool) -> ExitCode {
    if json {
        println!("{}", rep.to_json());
    } else {
        print!("{}", rep.render_text());
    }
    if rep.certified_k.is_some() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Analyze { poly, a, b, scan, kmax, class, json, seed } => {
            let f = parse_poly(&poly).map_err(|e| e.to_string())?;
            let class = parse_class(&class)?;
            let cfg = FactorConfig { rho_seed: seed, ..FactorConfig::default() };
            let (a_range, b_range) = match (a, b, scan) {
                (Some(a), Some(b), None) => (a..=a, b..=b),
                (None, None, Some(r)) => {
                    let range = parse_range(&r)?;
                    (range.clone(), range)
                }
                _ => return Err("pass either --a and --b, or --scan LO..HI".into()),
            };
            let rep = best_bound(&f, a_range, b_range, kmax, class, &cfg);
            Ok(emit_report(&rep, json))
        }
        Cmd::Bivariate { file, g, ax, bx, k, class, cap, json } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| format!("cannot read {}: {e}", file.display()))?;
            let f = parse_bivar_file(&text)?;
            if f.y_degree().unwrap_or(0) < 1 {
                return Err("the input polynomial is constant in y".into());
            }
            let rep = match (g, ax) {
                (Some(g), None) => {
                    let g = parse_poly(&g).map_err(|e| e.to_string())?.to_rat();
                    certify_coro6(&f, &g, cap)
                }
                (None, Some(ax)) => {
                    let class = parse_class(&class)?;
                    let ax = parse_poly(&ax).map_err(|e| e.to_string())?.to_rat();
                    let bx = parse_poly(&bx.expect("clap enforces bx with ax"))
                        .map_err(|e| e.to_string())?
                        .to_rat();
                    certify_thm5(&f, &ax, &bx, k, class, cap)
                }
                _ => return Err("pass either --g, or --ax and --bx".into()),
            };
            Ok(emit_report(&rep, json))
        }
        Cmd::Verify { poly, claimed_k, cap } => {
            let f = parse_poly(&poly).map_err(|e| e.to_string())?;
            let fc = count_irreducible_factors(&f, cap).map_err(|e| e.to_string())?;
            println!("polynomial: {f}");
            print!("factorization: {}", fc.content);
            for (g, m) in &fc.factors {
                if *m == 1 {
                    print!(" * ({g})");
                } else {
                    print!(" * ({g})^{m}");
                }
            }
            println!();
            println!("irreducible factors with multiplicity: {}", fc.count);
            if fc.count <= claimed_k {
                println!("claimed bound {claimed_k}: holds");
                Ok(ExitCode::SUCCESS)
            } else {
                println!("claimed bound {claimed_k}: VIOLATED");
                Ok(ExitCode::from(1))
            }
        }
        Cmd::Plot { poly, a, b, k, class, out } => {
            let f = parse_poly(&poly).map_err(|e| e.to_string())?;
            let class = parse_class(&class)?;
            if a == b {
                return Err("plot requires two distinct points".into());
            }
            let content = svg::render_plot(&f, &Int::from(a), &Int::from(b), k, class)?;
            std::fs::write(&out, content)
                .map_err(|e| format!("cannot write {}: {e}", out.display()))?;
            println!("wrote {}", out.display());
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// Coefficient file: one `i: <poly>` line per nonzero y^i coefficient,
/// blank lines and `#` comments ignored.
fn parse_bivar_file(text: &str) -> Result<BivarPoly, String> {
    let mut entries: Vec<(usize, RatPoly)> = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let t = line.trim();
        if t.is_empty() || t.starts_with('#') {
            continue;
        }
        let (idx, poly) = t
            .split_once(':')
            .ok_or_else(|| format!("line {}: expected 'i: <poly>'", lineno + 1))?;
        let idx: usize = idx
            .trim()
            .parse()
            .map_err(|_| format!("line {}: bad power '{}'", lineno + 1, idx.trim()))?;
        if entries.iter().any(|(i, _)| *i == idx) {
            return Err(format!("line {}: duplicate power {idx}", lineno + 1));
        }
        let p = parse_poly(poly.trim()).map_err(|e| format!("line {}: {e}", lineno + 1))?;
        entries.push((idx, p.to_rat()));
    }
    if entries.is_empty() {
        return Err("the coefficient file is empty".into());
    }
    let deg = entries.iter().map(|(i, _)| *i).max().unwrap();
    let mut coeffs = vec![RatPoly::zero(); deg + 1];
    for (i, p) in entries {
        coeffs[i] = p;
    }
    Ok(BivarPoly::new(coeffs))
}
