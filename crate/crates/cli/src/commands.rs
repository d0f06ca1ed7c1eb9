//! Argument parsing and the subcommands.

use std::path::{Path, PathBuf};
use std::time::Instant;

use bajra_core::catalog::{builtin_function, builtin_pair};
use bajra_core::diagonal::{compare_on_grid, FdSteps};
use bajra_core::functions::Interval;
use bajra_core::invariance::{
    classify_solution, construct_family, diagonal_system_check, invariance_residual, invariance_sweep,
    necessary_residuals, random_family, recover_uv, Tolerances, Verdict,
};
use bajra_core::{BajraktarevicMean64, Error};
use clap::{Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::report::{
    finite, ClassificationDoc, DiagonalDoc, ErrorDoc, RecoveryDoc, ReportDocument, SweepDoc, ToleranceDoc,
};
use crate::spec::{FamilySpec, DEFAULT_GRID};

pub const DEFAULT_DIAGONAL_POINTS: usize = 17;

#[derive(Debug, Parser)]
#[command(name = "bajra", version, about = "Verify solutions of A_{f,p}(x,y) + A_{g,q}(x,y) = x + y")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Write the JSON report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the invariance residual over a grid of the family domain.
    VerifyInvariance {
        #[arg(required_unless_present = "builtin")]
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<String>,
        /// Points per axis; defaults to the spec's `grid`.
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Per-point residuals as `x,y,residual`.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Compare closed-form diagonal derivatives with finite differences.
    VerifyDiagonal {
        #[arg(required_unless_present = "builtin")]
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<String>,
        /// Also check the diagonal system of the pair.
        #[arg(long)]
        system: bool,
        /// One finite-difference step for every order.
        #[arg(long)]
        h: Option<f64>,
        #[arg(long, default_value_t = DEFAULT_DIAGONAL_POINTS)]
        points: usize,
    },
    /// Decide whether a pair belongs to the solution family and reconstruct it.
    Classify {
        #[arg(required_unless_present = "builtin")]
        spec: Option<PathBuf>,
        #[arg(long, conflicts_with = "spec")]
        builtin: Option<String>,
        #[arg(long)]
        grid: Option<usize>,
        #[arg(long, default_value_t = 1e-8)]
        tol_necessary: f64,
    },
    /// Recover `f = u/v` with `u'' = gamma u`, `v'' = gamma v` from a builtin generator.
    Recover {
        /// `identity`, `tan`, `tanh`, `exp`, `cubic` or `"mobius a b c d"`.
        #[arg(long)]
        builtin: String,
        #[arg(long, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, num_args = 2, value_names = ["LO", "HI"], allow_hyphen_values = true, default_values_t = [-1.0, 1.0])]
        domain: Vec<f64>,
    },
    /// Randomized families through the invariance sweep and the classifier.
    Sweep {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true,
              default_values_t = [-2.0, -1.0, -0.25, 0.0, 0.25, 1.0, 2.0])]
        gammas: Vec<f64>,
        #[arg(long, default_value_t = 20)]
        draws: usize,
        #[arg(long, default_value_t = DEFAULT_GRID)]
        grid: usize,
        #[arg(long, env = "BAJRA_SEED", default_value_t = 0)]
        seed: u64,
    },
}

/// Exit status and the report to print.
#[derive(Debug)]
pub struct Outcome {
    pub code: i32,
    pub report: ReportDocument,
}

/// Input problems, as opposed to numerical failures.
pub fn is_rejection(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInterval { .. }
            | Error::OutOfDomain { .. }
            | Error::NotIndependent { .. }
            | Error::NotPositive { .. }
            | Error::AnchorNotPositive { .. }
            | Error::DomainEmpty
            | Error::NotMonotone { .. }
            | Error::InvalidInput(_)
    )
}

fn error_doc(e: &Error) -> ErrorDoc {
    ErrorDoc { kind: e.kind().to_string(), message: e.to_string(), rejected: is_rejection(e) }
}

type Pair = (BajraktarevicMean64, BajraktarevicMean64);

fn load_pair(spec: Option<&Path>, builtin: Option<&str>, report: &mut ReportDocument) -> Result<Pair, Error> {
    match (spec, builtin) {
        (Some(path), _) => {
            let spec = FamilySpec::load(path)?;
            report.spec = Some(spec.clone());
            spec.means()
        }
        (None, Some(name)) => {
            report.builtin = Some(name.to_string());
            builtin_pair(name)
        }
        (None, None) => Err(Error::InvalidInput("give a spec file or --builtin".into())),
    }
}

fn grid_size(flag: Option<usize>, report: &ReportDocument) -> Result<usize, Error> {
    let n = flag.or(report.spec.as_ref().map(|s| s.grid)).unwrap_or(DEFAULT_GRID);
    if n < 2 {
        return Err(Error::InvalidInput("grid needs at least two points per axis".into()));
    }
    Ok(n)
}

pub fn run(command: &Command) -> Outcome {
    let start = Instant::now();
    let tol = Tolerances::<f64>::default();
    let steps = FdSteps::<f64>::default();
    let mut report = ReportDocument::new(name_of(command), ToleranceDoc::new(&tol, &steps));
    let result = match command {
        Command::VerifyInvariance { spec, builtin, grid, tol, csv } => {
            report.tolerances.invariance = *tol;
            verify_invariance(&mut report, spec.as_deref(), builtin.as_deref(), *grid, csv.as_deref())
        }
        Command::VerifyDiagonal { spec, builtin, system, h, points } => {
            verify_diagonal(&mut report, spec.as_deref(), builtin.as_deref(), *system, *h, *points)
        }
        Command::Classify { spec, builtin, grid, tol_necessary } => {
            report.tolerances.necessary = *tol_necessary;
            classify(&mut report, spec.as_deref(), builtin.as_deref(), *grid)
        }
        Command::Recover { builtin, x0, domain } => recover(&mut report, builtin, *x0, domain),
        Command::Sweep { gammas, draws, grid, seed } => sweep(&mut report, gammas, *draws, *grid, *seed),
    };
    let code = match result {
        Ok(()) => {
            report.passed = report.derive_passed();
            if report.passed {
                0
            } else {
                1
            }
        }
        Err(e) => {
            let doc = error_doc(&e);
            let code = if doc.rejected { 2 } else { 1 };
            report.verdict = if doc.rejected { "Rejected".into() } else { "Error".into() };
            report.error = Some(doc);
            report.passed = false;
            code
        }
    };
    report.wall_time = start.elapsed().as_secs_f64();
    Outcome { code, report }
}

fn name_of(command: &Command) -> &'static str {
    match command {
        Command::VerifyInvariance { .. } => "verify-invariance",
        Command::VerifyDiagonal { .. } => "verify-diagonal",
        Command::Classify { .. } => "classify",
        Command::Recover { .. } => "recover",
        Command::Sweep { .. } => "sweep",
    }
}

fn verify_invariance(
    report: &mut ReportDocument,
    spec: Option<&Path>,
    builtin: Option<&str>,
    grid: Option<usize>,
    csv: Option<&Path>,
) -> Result<(), Error> {
    let (f_side, g_side) = load_pair(spec, builtin, report)?;
    let n = grid_size(grid, report)?;
    let points = f_side.domain().interior_grid(n);
    let sweep = invariance_sweep(&f_side, &g_side, &points)?;
    if let Some(path) = csv {
        write_csv(path, &sweep.samples)?;
    }
    let necessary = necessary_residuals(&f_side, &g_side, &points)?.necessary.expect("necessary residuals");
    report.residuals.grid_size = sweep.samples.len();
    report.residuals.max_invariance = Some(finite(sweep.max));
    report.residuals.set_necessary(&necessary);
    report.verdict = if sweep.max <= report.tolerances.invariance { "Invariant" } else { "NotInvariant" }.into();
    Ok(())
}

fn write_csv(path: &Path, samples: &[(f64, f64, f64)]) -> Result<(), Error> {
    let io = |e: csv::Error| Error::InvalidInput(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(io)?;
    w.write_record(["x", "y", "residual"]).map_err(io)?;
    for &(x, y, r) in samples {
        w.serialize((x, y, r)).map_err(io)?;
    }
    w.flush().map_err(|e| io(e.into()))
}

fn verify_diagonal(
    report: &mut ReportDocument,
    spec: Option<&Path>,
    builtin: Option<&str>,
    system: bool,
    h: Option<f64>,
    points: usize,
) -> Result<(), Error> {
    let steps = match h {
        Some(h) if h.is_finite() && h > 0.0 => FdSteps::uniform(h),
        Some(h) => return Err(Error::InvalidInput(format!("step {h} is not a positive number"))),
        None => FdSteps::default(),
    };
    report.tolerances.fd_steps = [steps.first, steps.second, steps.third, steps.fourth];
    let (f_side, g_side) = load_pair(spec, builtin, report)?;
    let grid = f_side.domain().interior_grid(points);
    let mut max = [0.0f64; 4];
    let (mut checked, mut skipped) = (0, 0);
    for mean in [&f_side, &g_side] {
        let cmp = compare_on_grid(mean, &grid, &steps)?;
        for (m, d) in max.iter_mut().zip(cmp.max_discrepancies()) {
            *m = m.max(finite(d));
        }
        checked += cmp.results.len();
        skipped += cmp.skipped.len();
    }
    let system =
        if system { Some(diagonal_system_check(&f_side, &g_side, &grid)?.as_array().map(finite)) } else { None };
    report.residuals.grid_size = grid.len();
    report.diagonal_checks = Some(DiagonalDoc { max_discrepancy: max, points: checked, skipped, system });
    report.verdict = if report.derive_passed() { "FormulasAgree" } else { "FormulasDisagree" }.into();
    Ok(())
}

fn classify(
    report: &mut ReportDocument,
    spec: Option<&Path>,
    builtin: Option<&str>,
    grid: Option<usize>,
) -> Result<(), Error> {
    let (f_side, g_side) = load_pair(spec, builtin, report)?;
    let n = grid_size(grid, report)?;
    let points = f_side.domain().interior_grid(n);
    let tol = report.tolerances.tolerances();
    let c = classify_solution(&f_side, &g_side, &points, &tol)?;
    report.residuals.grid_size = points.len();
    report.residuals.set_necessary(&c.necessary);
    let mut doc = ClassificationDoc {
        gamma: None,
        f_coeffs: None,
        g_coeffs: None,
        eta: None,
        failed_conditions: Vec::new(),
        reason: None,
        system: c.system.as_array().map(finite),
        equal_weight_fraction: c.equal_weight_fraction,
    };
    match &c.verdict {
        Verdict::ConfirmedFamily { gamma, f_coeffs, g_coeffs, eta } => {
            doc.gamma = Some(*gamma);
            doc.f_coeffs = Some(*f_coeffs);
            doc.g_coeffs = Some(*g_coeffs);
            doc.eta = Some(*eta);
        }
        Verdict::NecessaryFail { failed } => {
            doc.failed_conditions = failed.iter().map(|c| c.name().to_string()).collect()
        }
        Verdict::ReconstructionFail { reason } => doc.reason = Some(reason.clone()),
    }
    report.verdict = c.verdict.name().into();
    report.classification = Some(doc);
    Ok(())
}

fn recover(report: &mut ReportDocument, name: &str, x0: f64, domain: &[f64]) -> Result<(), Error> {
    let [lo, hi] = domain[..] else {
        return Err(Error::InvalidInput("--domain takes LO HI".into()));
    };
    report.builtin = Some(name.to_string());
    let mut doc = RecoveryDoc {
        function: name.to_string(),
        x0,
        domain: [lo, hi],
        gamma: None,
        u: None,
        v: None,
        wronskian: None,
        positive: None,
        max_residual: None,
        schwarzian_spread: None,
    };
    let f = builtin_function(name, Interval::new(lo, hi)?)?;
    let outcome = recover_uv(&*f, x0);
    let r = match outcome {
        Ok(r) => r,
        Err(e) => {
            if let Error::NonConstantSchwarzian { spread, .. } = e {
                doc.schwarzian_spread = Some(finite(spread));
            }
            report.recovery = Some(doc);
            return Err(e);
        }
    };
    doc.gamma = Some(r.gamma);
    doc.u = Some([r.u.a, r.u.b]);
    doc.v = Some([r.v.a, r.v.b]);
    doc.wronskian = Some(r.wronskian);
    doc.positive = Some([r.positive.lo(), r.positive.hi()]);
    doc.max_residual = Some(finite(r.max_residual));
    doc.schwarzian_spread = Some(finite(r.schwarzian_spread));
    report.recovery = Some(doc);
    report.verdict = "Recovered".into();
    Ok(())
}

fn sweep(report: &mut ReportDocument, gammas: &[f64], draws: usize, grid: usize, seed: u64) -> Result<(), Error> {
    if grid < 2 {
        return Err(Error::InvalidInput("grid needs at least two points per axis".into()));
    }
    let domain = Interval::new(-1.0, 1.0)?;
    let points = domain.interior_grid(grid);
    let tol = report.tolerances.tolerances();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut doc = SweepDoc {
        seed,
        gammas: gammas.to_vec(),
        draws,
        families: 0,
        invariance_failures: 0,
        classification_failures: 0,
        max_gamma_error: 0.0,
    };
    let mut worst = 0.0f64;
    for &gamma in gammas {
        for _ in 0..draws {
            let family = random_family(gamma, domain, &mut rng);
            let m = construct_family(&family)?;
            doc.families += 1;
            let r = invariance_residual(&m.f_side, &m.g_side, &points)?.max_invariance.unwrap_or(f64::MAX);
            worst = worst.max(finite(r));
            if !(r <= tol.invariance) {
                doc.invariance_failures += 1;
            }
            match classify_solution(&m.f_side, &m.g_side, &points, &tol).map(|c| c.verdict) {
                Ok(Verdict::ConfirmedFamily { gamma: got, .. }) if (got - gamma).abs() <= tol.gamma => {
                    doc.max_gamma_error = doc.max_gamma_error.max((got - gamma).abs());
                }
                _ => doc.classification_failures += 1,
            }
        }
    }
    report.residuals.grid_size = doc.families * points.len() * points.len();
    report.residuals.max_invariance = Some(worst);
    report.sweep = Some(doc);
    report.verdict = if report.derive_passed() { "AllConfirmed" } else { "Failures" }.into();
    Ok(())
}
