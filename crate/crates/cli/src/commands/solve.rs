use std::io::Write;
use std::path::Path;
use std::time::Instant;

use sadprec::problems::read_bundle;
use sadprec::stationary::run_mgss_iteration;
use sadprec::{build_preconditioner, gmres_restarted, InnerSolve, PrecondKind, PrecondSpec, SaddleSystem, StoppingRule};

use crate::cli::{Inner, Method, SolveArgs, SolverOpts};
use crate::error::{usage, CliError, CliResult};
use crate::record::{write_csv, BenchRecord};

const DEFAULT_PARAM: f64 = 1e-3;

/// Bundle plus a short problem id (from `meta.json`, else the directory name).
pub fn load_bundle(dir: &Path) -> CliResult<(SaddleSystem, String)> {
    if !dir.join("meta.json").is_file() {
        return Err(usage(format!("{} is not a bundle directory (no meta.json)", dir.display())));
    }
    let (sys, meta) = read_bundle(dir)?;
    let id = meta
        .config
        .get("id")
        .and_then(|v| v.as_str())
        .map(str::to_string)
        .or_else(|| dir.file_name().map(|s| s.to_string_lossy().into_owned()))
        .unwrap_or_else(|| meta.generator.clone());
    Ok((sys, id))
}

/// Fill in defaults and reject parameters the method does not take.
pub fn resolve_spec(method: Method, alpha: Option<f64>, beta: Option<f64>, inner: Inner) -> CliResult<PrecondSpec> {
    let spec = match method {
        Method::None => {
            if alpha.is_some() || beta.is_some() {
                return Err(usage("--method none takes no --alpha/--beta"));
            }
            PrecondSpec::none()
        }
        Method::Mgss => PrecondSpec::mgss(alpha.unwrap_or(DEFAULT_PARAM), beta.unwrap_or(DEFAULT_PARAM)),
        Method::Rmgss => {
            if alpha.is_some() {
                return Err(usage("rmgss fixes alpha = 0; drop --alpha"));
            }
            PrecondSpec::rmgss(beta.unwrap_or(DEFAULT_PARAM))
        }
        Method::Hss => {
            if beta.is_some() {
                return Err(usage("hss takes only --alpha"));
            }
            PrecondSpec::hss(alpha.ok_or_else(|| usage("hss needs --alpha"))?)
        }
    };
    let spec = match inner {
        Inner::Cg => spec.with_inner(InnerSolve::default()),
        Inner::Direct => spec.direct(),
    };
    spec.validate()?;
    Ok(spec)
}

fn rule(opts: &SolverOpts) -> StoppingRule {
    StoppingRule {
        rel_tol: opts.tol,
        max_outer: opts.max_it,
        restart: opts.restart,
    }
}

/// Build the preconditioner, then time only the solver call.
pub fn run_one(sys: &SaddleSystem, problem: &str, spec: PrecondSpec, opts: &SolverOpts, stationary: bool) -> CliResult<BenchRecord> {
    let rule = rule(opts);
    rule.validate()?;
    let (report, cpu, solver) = if stationary {
        if spec.kind != PrecondKind::Mgss {
            return Err(usage("--stationary runs the MGSS splitting; use --method mgss"));
        }
        let start = Instant::now();
        let report = run_mgss_iteration(sys, spec, rule)?;
        (report, start.elapsed().as_secs_f64(), "stationary".to_string())
    } else {
        let rhs = sys.rhs();
        let precond = match spec.kind {
            PrecondKind::None => None,
            _ => Some(build_preconditioner(sys, spec)?),
        };
        let start = Instant::now();
        let report = gmres_restarted(sys, &rhs, precond.as_deref().map(|p| p as _), rule)?;
        (report, start.elapsed().as_secs_f64(), format!("gmres({})", opts.restart))
    };
    let (alpha, beta) = match spec.kind {
        PrecondKind::None => (None, None),
        PrecondKind::Mgss => (Some(spec.alpha), Some(spec.beta)),
        PrecondKind::Rmgss => (None, Some(spec.beta)),
        PrecondKind::Hss => (Some(spec.alpha), None),
    };
    Ok(BenchRecord {
        problem: problem.to_string(),
        method: spec.kind.name().to_string(),
        alpha,
        beta,
        solver,
        it: report.outer_iterations,
        inner_it: report.total_inner_cg_iterations,
        cpu,
        converged: report.converged,
        rel_residual: report.relative_residual(),
        optimal: false,
    })
}

pub fn solve(args: &SolveArgs, out: &mut dyn Write) -> CliResult<bool> {
    let (sys, id) = load_bundle(&args.input)?;
    let spec = resolve_spec(args.method, args.alpha, args.beta, args.solver.inner)?;
    let record = run_one(&sys, &id, spec, &args.solver, args.stationary)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&record)?)?;
    if let Some(path) = &args.csv {
        let file = std::fs::File::create(path).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        })?;
        write_csv(std::slice::from_ref(&record), file)?;
    }
    Ok(record.converged)
}
