//! Command-line front end: formal and numeric verification sweeps, matrix
//! display, and q-expansion inspection.
//!
//! Exit codes: 0 all checks pass, 1 at least one check failed, 2 usage or
//! configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use heckeform::combinatorics::{check_coeff_equiv, vandermonde_collapse};
use heckeform::matrix::{self, RingMatrix, Side};
use heckeform::poly::{LaurentPoly, Symbol};
use heckeform::qseries::{
    builtin_samples, check_e2_anomaly, check_functional_equations, eisenstein_mu3, sample_points,
    FormSpecFile, HeckeGroupData, NumericReport,
};
use heckeform::vectorform::{
    sweep_specs, transfer_matrix, verify_all, CheckResult, FormSpecSymbolic, Report,
};

#[derive(Parser)]
#[command(name = "heckeform", version, about = "Hecke vector-form construction and verification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Run the exact symbolic verification sweep.
    VerifyFormal {
        /// Largest (even) weight in the sweep.
        #[arg(long, default_value_t = 8)]
        w_max: u32,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run the floating-point checks of the functional equations.
    VerifyNumeric {
        /// Use the built-in mu = 3 sample forms.
        #[arg(long, conflicts_with = "spec")]
        builtin: bool,
        /// JSON form-spec file.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Truncation order of the q-expansions.
        #[arg(long, default_value_t = 64)]
        terms: usize,
        /// Seed for sample-point placement.
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Number of sampled points.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Explicit evaluation point "re,im" (repeatable; overrides sampling).
        #[arg(long = "point", value_parser = parse_complex)]
        explicit_points: Vec<Complex64>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Pretty-print one of the structured matrices.
    Show {
        #[command(subcommand)]
        what: ShowTarget,
    },
    /// Print the q-expansion of a built-in series.
    Qexp {
        #[arg(long, default_value = "E2")]
        series: String,
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Evaluate a built-in series at a point of the upper half-plane.
    Eval {
        #[arg(long, default_value = "E2")]
        series: String,
        #[arg(long, value_parser = parse_complex)]
        z: Complex64,
        #[arg(long, default_value_t = 64)]
        terms: usize,
    },
}

#[derive(Args)]
struct ShowDims {
    #[arg(long, default_value_t = 2)]
    r: usize,
}

#[derive(Subcommand)]
enum ShowTarget {
    /// Generalized Pascal matrix P_r(z).
    Pascal(ShowDims),
    /// Creation matrix A_r(λ).
    Creation(ShowDims),
    /// Exchange matrix ι_r.
    Exchange(ShowDims),
    /// The signed anti-diagonal d_r^y with a_i = (−1)^i.
    Dry(ShowDims),
    /// Transfer matrix P(G_U) of a symbolic form spec.
    Transfer {
        #[arg(long, default_value_t = 4)]
        w: u32,
        #[arg(long, default_value_t = 2)]
        r: u32,
        /// Present coefficient indices, comma separated.
        #[arg(long, value_delimiter = ',')]
        present: Vec<u32>,
    },
}

fn parse_complex(s: &str) -> Result<Complex64, String> {
    let (re, im) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"re,im\", got {s:?}"))?;
    Ok(Complex64::new(
        re.trim().parse().map_err(|e| format!("bad real part: {e}"))?,
        im.trim().parse().map_err(|e| format!("bad imaginary part: {e}"))?,
    ))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::VerifyFormal { w_max, format } => verify_formal(w_max, format),
        Command::VerifyNumeric {
            builtin,
            spec,
            tol,
            terms,
            seed,
            points,
            explicit_points,
            format,
        } => verify_numeric(
            builtin,
            spec,
            tol,
            terms,
            seed,
            points,
            explicit_points,
            format,
        ),
        Command::Show { what } => {
            show(what)?;
            Ok(true)
        }
        Command::Qexp { series, terms } => {
            let s = builtin_series(&series, terms)?;
            for (n, a) in s.coeffs.iter().enumerate() {
                println!("a_{n} = {}", a.re);
            }
            Ok(true)
        }
        Command::Eval { series, z, terms } => {
            let s = builtin_series(&series, terms)?;
            let (value, tail) = s.eval(z).map_err(|e| e.to_string())?;
            println!("{series}({z}) = {value}  (tail estimate {tail:.2e})");
            Ok(true)
        }
    }
}

fn builtin_series(name: &str, terms: usize) -> Result<heckeform::qseries::QSeries, String> {
    let weight = match name {
        "E2" => 2,
        "E4" => 4,
        "E6" => 6,
        other => return Err(format!("unknown series {other:?} (expected E2, E4, E6)")),
    };
    eisenstein_mu3(weight, terms).map_err(|e| e.to_string())
}

fn verify_formal(w_max: u32, format: Format) -> Result<bool, String> {
    if w_max < 2 || w_max % 2 != 0 {
        return Err(format!("--w-max must be even and >= 2, got {w_max}"));
    }
    let mut report = Report::default();

    // Combinatorial grids.
    for r in 0..=10u64 {
        for l in 0..=r {
            for m in 0..=(r - l) {
                for p in 0..=(r - l - m) {
                    let pass = check_coeff_equiv(r, l, m, p).map_err(|e| e.to_string())?;
                    report.checks.push(CheckResult {
                        name: "coeff_equiv".into(),
                        case: format!("r={r} l={l} m={m} p={p}"),
                        pass,
                        difference: None,
                    });
                }
            }
        }
        for n in 0..=r {
            for m in 0..=r {
                let (lhs, rhs) = vandermonde_collapse(n, r, m);
                report.checks.push(CheckResult {
                    name: "vandermonde".into(),
                    case: format!("n={n} r={r} m={m}"),
                    pass: lhs == rhs,
                    difference: None,
                });
            }
        }
    }

    // Matrix laws.
    let z = LaurentPoly::symbol(Symbol::Z);
    let u = LaurentPoly::symbol(Symbol::U);
    let v = LaurentPoly::symbol(Symbol::V);
    let lam = LaurentPoly::symbol(Symbol::Lambda);
    for r in 0..=8usize {
        let pass = &matrix::pascal(r, &u) * &matrix::pascal(r, &v) == matrix::pascal(r, &(&u + &v));
        report.checks.push(CheckResult {
            name: "pascal_additivity".into(),
            case: format!("r={r}"),
            pass,
            difference: None,
        });
        let za = matrix::creation(r, &LaurentPoly::zero()).scale(&z);
        let pass = matrix::nilpotent_exp(&za, (r + 1) as u32).map_err(|e| e.to_string())?
            == matrix::pascal(r, &z);
        report.checks.push(CheckResult {
            name: "pascal_is_exp_of_creation".into(),
            case: format!("r={r}"),
            pass,
            difference: None,
        });
    }
    for r in 0..=10usize {
        let a = matrix::creation(r, &LaurentPoly::zero());
        let pass = a.pow((r + 1) as u32).is_zero() && (r == 0 || !a.pow(r as u32).is_zero());
        report.checks.push(CheckResult {
            name: "creation_nilpotency_index".into(),
            case: format!("r={r}"),
            pass,
            difference: None,
        });
    }
    for r in 0..=6usize {
        let got = matrix::char_poly(&matrix::creation(r, &lam)).map_err(|e| e.to_string())?;
        let expect = (&LaurentPoly::symbol(Symbol::X) - &lam).pow((r + 1) as u32);
        report.checks.push(CheckResult {
            name: "creation_char_poly".into(),
            // The size forces degree r+1, one more than the degree-r display.
            case: format!("r={r} (X-λ)^{}", r + 1),
            pass: got == expect,
            difference: None,
        });
    }

    // Transformation identities over the full sweep.
    for spec in sweep_specs(w_max) {
        report.extend(verify_all(&spec).map_err(|e| e.to_string())?);
    }

    let all_pass = report.all_pass();
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?)
        }
        Format::Text => {
            let mut names: Vec<&str> = Vec::new();
            for c in &report.checks {
                if !names.contains(&c.name.as_str()) {
                    names.push(&c.name);
                }
            }
            for name in names {
                let group: Vec<_> = report.checks.iter().filter(|c| c.name == name).collect();
                let passed = group.iter().filter(|c| c.pass).count();
                println!("{name}: {passed}/{} pass", group.len());
            }
            for c in report.checks.iter().filter(|c| !c.pass) {
                println!(
                    "FAIL {} [{}] difference: {}",
                    c.name,
                    c.case,
                    c.difference.as_deref().unwrap_or("-")
                );
            }
            println!(
                "total: {} checks, {}",
                report.checks.len(),
                if all_pass { "all pass" } else { "FAILURES" }
            );
        }
    }
    Ok(all_pass)
}

#[allow(clippy::too_many_arguments)]
fn verify_numeric(
    builtin: bool,
    spec_path: Option<PathBuf>,
    tol: f64,
    terms: usize,
    seed: u64,
    points: usize,
    explicit_points: Vec<Complex64>,
    format: Format,
) -> Result<bool, String> {
    if tol <= 0.0 {
        return Err("--tol must be positive".into());
    }
    if terms < 8 {
        return Err("--terms must be at least 8".into());
    }
    let specs = match (&spec_path, builtin) {
        (Some(path), _) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let file: FormSpecFile = serde_json::from_str(&text)
                .map_err(|e| format!("invalid form-spec file {}: {e}", path.display()))?;
            vec![file.resolve(terms).map_err(|e| e.to_string())?]
        }
        _ => builtin_samples(terms).map_err(|e| e.to_string())?,
    };

    let zs = if explicit_points.is_empty() {
        sample_points(seed, points)
    } else {
        explicit_points
    };
    // User-given points must satisfy the convergence precondition.
    for &z in &zs {
        if z.im < 0.5 || (-1.0 / z).im < 0.5 {
            return Err(format!(
                "point {z} violates the precondition Im z >= 0.5 and Im(-1/z) >= 0.5"
            ));
        }
    }

    let mut report = NumericReport::default();
    let group = HeckeGroupData::mu3();
    let e2 = eisenstein_mu3(2, terms).map_err(|e| e.to_string())?;
    for &z in &zs {
        report
            .checks
            .push(check_e2_anomaly(&group, &e2, z, tol).map_err(|e| e.to_string())?);
    }
    for spec in &specs {
        for &z in &zs {
            report.extend(check_functional_equations(spec, z, tol).map_err(|e| e.to_string())?);
        }
    }

    let all_pass = report.all_pass();
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string_pretty(&report).map_err(|e| e.to_string())?)
        }
        Format::Text => {
            for c in &report.checks {
                let worst = c.residuals.iter().cloned().fold(0.0, f64::max);
                println!(
                    "{} at ({:.4},{:.4}): max residual {:.3e} {}",
                    c.name,
                    c.point[0],
                    c.point[1],
                    worst,
                    if c.pass { "ok" } else { "FAIL" }
                );
            }
            println!(
                "total: {} checks, {}",
                report.checks.len(),
                if all_pass { "all pass" } else { "FAILURES" }
            );
        }
    }
    Ok(all_pass)
}

fn show(target: ShowTarget) -> Result<(), String> {
    const R_MAX: usize = 12;
    let check_r = |r: usize| {
        if r > R_MAX {
            Err(format!("r = {r} too large for display (max {R_MAX})"))
        } else {
            Ok(())
        }
    };
    let m: RingMatrix = match target {
        ShowTarget::Pascal(d) => {
            check_r(d.r)?;
            matrix::pascal(d.r, &LaurentPoly::symbol(Symbol::Z))
        }
        ShowTarget::Creation(d) => {
            check_r(d.r)?;
            matrix::creation(d.r, &LaurentPoly::symbol(Symbol::Lambda))
        }
        ShowTarget::Exchange(d) => {
            check_r(d.r)?;
            matrix::exchange(d.r)
        }
        ShowTarget::Dry(d) => {
            check_r(d.r)?;
            let signs: Vec<LaurentPoly> = (0..=d.r)
                .map(|i| {
                    if i % 2 == 0 {
                        LaurentPoly::one()
                    } else {
                        -&LaurentPoly::one()
                    }
                })
                .collect();
            matrix::half_transpose(Side::Right, &matrix::diagonal(&signs).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?
        }
        ShowTarget::Transfer { w, r, present } => {
            check_r(r as usize)?;
            let spec = FormSpecSymbolic::new(3, w, r, present).map_err(|e| e.to_string())?;
            transfer_matrix(&spec).map_err(|e| e.to_string())?
        }
    };
    print!("{}", matrix::pretty(&m));
    Ok(())
}
