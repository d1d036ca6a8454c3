//! Command-line front end: JSON ingestion, curve and numerical-range
//! sampling to CSV/SVG, ellipse-package utilities, and the verification
//! suites.

mod io;
mod svg;

use clap::{Args, Parser, Subcommand};
use poncelet_core::ellipse::{self, EllipseComponent};
use poncelet_core::opuc::{self, FociSet};
use poncelet_core::poncelet::{self, PonceletFamily, Pole};
use poncelet_core::util::Rng;
use poncelet_core::{numrange, verify, C64, DEFAULT_TOL};
use std::f64::consts::TAU;
use std::fmt::Write as _;
use std::process::ExitCode;

/// Numerical experiments with curve packages inscribed in polygon families
/// on the unit circle.
#[derive(Parser)]
#[command(name = "poncelet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Samples per curve or boundary (minimum 16).
    #[arg(long, default_value_t = 720)]
    samples: usize,
    /// Numerical tolerance override, between 1e-14 and 1e-4.
    #[arg(long)]
    tol: Option<f64>,
    /// Write CSV output to this path instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Also write an SVG rendering to this path.
    #[arg(long)]
    svg: Option<String>,
    /// Seed for any randomized choices (default 0).
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Sample the complete curve package of a focus set with all foci
    /// inside the unit disk.
    Package {
        /// Path to foci JSON: {"foci": [[re, im], ...]}.
        #[arg(long)]
        foci: String,
        /// Overlay one inscribed polygon per given parameter angle.
        #[arg(long = "lambda")]
        lambdas: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Report the symmetric-form invariants (N, m, d, n) and circle
    /// solution counts of a focus set of arbitrary moduli.
    Bezout {
        /// Path to foci JSON: {"foci": [[re, im], ...]}.
        #[arg(long)]
        foci: String,
        /// Base-point angles for the per-slice solution counts.
        #[arg(long = "lambda")]
        lambdas: Vec<f64>,
        #[command(flatten)]
        common: Common,
    },
    /// Sample the numerical-range boundary of a complex matrix.
    Numrange {
        /// Path to matrix JSON: {"n": int, "entries": [[[re, im], ...], ...]}.
        #[arg(long)]
        matrix: String,
        #[command(flatten)]
        common: Common,
    },
    /// Ellipse-package utilities.
    Ellipse {
        #[command(subcommand)]
        action: EllipseAction,
    },
    /// Run the verification suites and write a JSON report.
    Verify {
        /// Run a single named suite instead of all of them.
        #[arg(long)]
        suite: Option<String>,
        /// Write the JSON report to this path instead of stdout.
        #[arg(long)]
        out: Option<String>,
    },
}

#[derive(Subcommand)]
enum EllipseAction {
    /// Minor semiaxis closing the chord orbit after n steps.
    Close {
        /// First focus as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        f1: String,
        /// Second focus as "re,im".
        #[arg(long, allow_hyphen_values = true)]
        f2: String,
        /// Polygon side count.
        #[arg(long)]
        n: usize,
    },
    /// Factor a focus set (in interior-orbit order) into components.
    Factor {
        /// Path to foci JSON: {"foci": [[re, im], ...]}.
        #[arg(long)]
        foci: String,
        #[command(flatten)]
        common: Common,
    },
    /// Run the chord orbit of an ellipse around the circle.
    Iterate {
        /// Path to ellipse JSON: {"f1": [re, im], "f2": [re, im], "s": real}.
        #[arg(long)]
        input: String,
        /// Starting angle on the circle.
        #[arg(long, default_value_t = 0.0)]
        start: f64,
        /// Maximum number of chord steps.
        #[arg(long, default_value_t = 64)]
        steps: usize,
        /// Run the interior orbit through the foci instead.
        #[arg(long)]
        inner: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                poncelet_core::Error::InvalidInput(_) => 1,
                _ => 2,
            })
        }
    }
}

fn validate(common: &Common) -> poncelet_core::Result<f64> {
    if common.samples < 16 {
        return Err(poncelet_core::Error::InvalidInput(
            "--samples must be at least 16".into(),
        ));
    }
    let tol = common.tol.unwrap_or(DEFAULT_TOL);
    if !(1e-14..=1e-4).contains(&tol) {
        return Err(poncelet_core::Error::InvalidInput(
            "--tol must lie in [1e-14, 1e-4]".into(),
        ));
    }
    Ok(tol)
}

fn run(cli: Cli) -> poncelet_core::Result<ExitCode> {
    match cli.command {
        Command::Package {
            foci,
            lambdas,
            common,
        } => cmd_package(&foci, &lambdas, &common),
        Command::Bezout {
            foci,
            lambdas,
            common,
        } => cmd_bezout(&foci, &lambdas, &common),
        Command::Numrange { matrix, common } => cmd_numrange(&matrix, &common),
        Command::Ellipse { action } => match action {
            EllipseAction::Close { f1, f2, n } => cmd_ellipse_close(&f1, &f2, n),
            EllipseAction::Factor { foci, common } => cmd_ellipse_factor(&foci, &common),
            EllipseAction::Iterate {
                input,
                start,
                steps,
                inner,
                common,
            } => cmd_ellipse_iterate(&input, start, steps, inner, &common),
        },
        Command::Verify { suite, out } => cmd_verify(suite.as_deref(), out.as_deref()),
    }
}

fn cmd_package(
    foci_path: &str,
    lambdas: &[f64],
    common: &Common,
) -> poncelet_core::Result<ExitCode> {
    let tol = validate(common)?;
    let foci = io::read_foci(foci_path)?;
    if foci.iter().any(|f| f.norm() >= 1.0) {
        return Err(poncelet_core::Error::InvalidInput(
            "package requires all foci strictly inside the unit disk; \
             for exterior or unimodular foci use the `bezout` subcommand"
                .into(),
        ));
    }
    let fam = PonceletFamily::new(FociSet::in_disk(foci)?, tol)?;
    let samples = poncelet::sample_package(&fam, common.samples, tol)?;
    let mut csv = String::from("k,theta,point_re,point_im,pole_re,pole_im\n");
    for s in &samples {
        let (pre, pim) = match s.pole {
            Pole::Finite(p) => (p.re, p.im),
            // Infinite pole: emitted as the unit direction scaled by a
            // sentinel magnitude so the row stays finite and parseable.
            Pole::Infinite { direction } => (direction.re * 1e300, direction.im * 1e300),
        };
        writeln!(
            csv,
            "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            s.k, s.theta, s.point.re, s.point.im, pre, pim
        )
        .unwrap();
    }
    io::write_text(common.out.as_deref(), &csv)?;
    if let Some(path) = &common.svg {
        // One polygon per requested angle; with none given, one angle drawn
        // from the seed so renders stay reproducible.
        let mut angles = lambdas.to_vec();
        if angles.is_empty() {
            angles.push(Rng::new(common.seed).range(0.0, TAU));
        }
        let mut polygons = Vec::new();
        for theta in angles {
            let lambda = C64::from_polar(1.0, theta);
            let mut verts = opuc::paraorthogonal_extension(fam.foci(), lambda, tol)?;
            verts.sort_by(|a, b| a.arg().partial_cmp(&b.arg()).unwrap());
            polygons.push(verts);
        }
        let mut curves: Vec<Vec<C64>> = Vec::new();
        for k in 1..=fam.n() / 2 {
            curves.push(
                samples
                    .iter()
                    .filter(|s| s.k == k)
                    .map(|s| s.point)
                    .collect(),
            );
        }
        io::write_text(Some(path), &svg::render(&curves, &polygons))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_bezout(
    foci_path: &str,
    lambdas: &[f64],
    common: &Common,
) -> poncelet_core::Result<ExitCode> {
    let tol = validate(common)?;
    let foci = io::read_foci(foci_path)?;
    let f = FociSet::unrestricted(foci);
    let p = poncelet::bezoutian_build(&f, tol)?;
    let mut text = format!(
        "N={} m={} d={} n={}\n",
        p.big_n(),
        p.m(),
        p.d(),
        p.rank_n()
    );
    let angles: Vec<f64> = if lambdas.is_empty() {
        vec![0.0]
    } else {
        lambdas.to_vec()
    };
    for theta in angles {
        let z0 = C64::from_polar(1.0, theta);
        let (on, off) = poncelet::on_circle_solutions(&p, z0, tol)?;
        writeln!(
            text,
            "z0_angle={:.16e} on_circle={} off_circle={}",
            theta,
            on.len(),
            off.len()
        )
        .unwrap();
    }
    io::write_text(common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_numrange(matrix_path: &str, common: &Common) -> poncelet_core::Result<ExitCode> {
    validate(common)?;
    let a = io::read_matrix(matrix_path)?;
    let boundary = numrange::boundary(&a, common.samples)?;
    let mut csv = String::from("phi,lambda_phi,re,im\n");
    for s in &boundary {
        writeln!(
            csv,
            "{:.16e},{:.16e},{:.16e},{:.16e}",
            s.phi, s.lambda_phi, s.boundary_point.re, s.boundary_point.im
        )
        .unwrap();
    }
    io::write_text(common.out.as_deref(), &csv)?;
    if let Some(path) = &common.svg {
        let pts: Vec<C64> = boundary.iter().map(|s| s.boundary_point).collect();
        io::write_text(Some(path), &svg::render(&[pts], &[]))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn parse_complex(s: &str) -> poncelet_core::Result<C64> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err(poncelet_core::Error::InvalidInput(format!(
            "expected \"re,im\", got {s:?}"
        )));
    }
    let re = parts[0].trim().parse::<f64>();
    let im = parts[1].trim().parse::<f64>();
    match (re, im) {
        (Ok(re), Ok(im)) => Ok(C64::new(re, im)),
        _ => Err(poncelet_core::Error::InvalidInput(format!(
            "could not parse complex number {s:?}"
        ))),
    }
}

fn cmd_ellipse_close(f1: &str, f2: &str, n: usize) -> poncelet_core::Result<ExitCode> {
    let f1 = parse_complex(f1)?;
    let f2 = parse_complex(f2)?;
    let s = ellipse::closure_semiaxis(f1, f2, n)?;
    println!("{s:.16e}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_ellipse_factor(foci_path: &str, common: &Common) -> poncelet_core::Result<ExitCode> {
    let tol = validate(common)?;
    let foci = io::read_foci(foci_path)?;
    let comps = ellipse::package_factor(&FociSet::in_disk(foci)?, tol)?;
    let text = io::components_json(&comps);
    io::write_text(common.out.as_deref(), &text)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_ellipse_iterate(
    input: &str,
    start: f64,
    steps: usize,
    inner: bool,
    common: &Common,
) -> poncelet_core::Result<ExitCode> {
    let tol = validate(common)?;
    let e: EllipseComponent<f64> = io::read_ellipse(input)?;
    let mut csv = String::from("index,re,im\n");
    if inner {
        let pts = ellipse::inner_iteration(&e, false, steps, tol)?;
        for (i, p) in pts.iter().enumerate() {
            writeln!(csv, "{},{:.16e},{:.16e}", i + 1, p.re, p.im).unwrap();
        }
    } else {
        let w0 = C64::from_polar(1.0, start);
        let (pts, period) = ellipse::circular_iteration(&e, w0, steps, tol)?;
        for (i, p) in pts.iter().enumerate() {
            writeln!(csv, "{},{:.16e},{:.16e}", i, p.re, p.im).unwrap();
        }
        match period {
            Some(n) => writeln!(csv, "# closed after {n} steps").unwrap(),
            None => writeln!(csv, "# no closure within {steps} steps").unwrap(),
        }
    }
    io::write_text(common.out.as_deref(), &csv)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify(suite: Option<&str>, out: Option<&str>) -> poncelet_core::Result<ExitCode> {
    let results = match suite {
        None | Some("all") => verify::run_all(),
        Some(name) => match verify::run_named(name) {
            Some(r) => vec![r],
            None => {
                return Err(poncelet_core::Error::InvalidInput(format!(
                    "unknown suite {name:?}"
                )))
            }
        },
    };
    let mut all_pass = true;
    for r in &results {
        eprintln!(
            "{}: {} (measured {:.3e}, bound {:.3e})",
            r.name,
            if r.pass { "pass" } else { "FAIL" },
            r.measured,
            r.bound
        );
        all_pass &= r.pass;
    }
    io::write_text(out, &io::report_json(&results))?;
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}
