use std::io::Write;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use crate::cli::{Method, SweepArgs};
use crate::error::{usage, CliError, CliResult};
use crate::grid::parse_grid;
use crate::record::{write_csv, BenchRecord};

use super::solve::{load_bundle, resolve_spec, run_one};

/// Row-major over (alpha, beta); missing axes are a single `None`.
fn points(args: &SweepArgs) -> CliResult<Vec<(Option<f64>, Option<f64>)>> {
    let axis = |grid: &Option<String>, name: &str, wanted: bool| -> CliResult<Vec<Option<f64>>> {
        match (grid, wanted) {
            (Some(g), true) => Ok(parse_grid(g)?.into_iter().map(Some).collect()),
            (None, true) => Err(usage(format!("--method {:?} needs --{name}-grid", args.method).to_lowercase())),
            (Some(_), false) => Err(usage(format!("--{name}-grid does not apply to this method"))),
            (None, false) => Ok(vec![None]),
        }
    };
    let (use_alpha, use_beta) = match args.method {
        Method::None => return Err(usage("nothing to sweep for --method none")),
        Method::Mgss => (true, true),
        Method::Rmgss => (false, true),
        Method::Hss => (true, false),
    };
    let alphas = axis(&args.alpha_grid, "alpha", use_alpha)?;
    let betas = axis(&args.beta_grid, "beta", use_beta)?;
    Ok(alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect())
}

/// Fewest iterations among converged rows; the first such row wins ties.
pub fn mark_optimal(records: &mut [BenchRecord]) {
    let best = records
        .iter()
        .enumerate()
        .filter(|(_, r)| r.converged)
        .min_by_key(|(k, r)| (r.it, *k))
        .map(|(k, _)| k);
    if let Some(k) = best {
        records[k].optimal = true;
    }
}

pub fn sweep(args: &SweepArgs, out: &mut dyn Write) -> CliResult<bool> {
    let (sys, id) = load_bundle(&args.input)?;
    let grid = points(args)?;
    let specs = grid
        .iter()
        .map(|&(a, b)| resolve_spec(args.method, a, b, args.solver.inner))
        .collect::<CliResult<Vec<_>>>()?;

    let jobs = args.jobs.clamp(1, specs.len());
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<CliResult<BenchRecord>>>> = specs.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|scope| {
        for _ in 0..jobs {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                if k >= specs.len() {
                    break;
                }
                let result = run_one(&sys, &id, specs[k], &args.solver, false);
                *slots[k].lock().expect("no panics while holding the slot") = Some(result);
            });
        }
    });
    let mut records = slots
        .into_iter()
        .map(|s| s.into_inner().expect("worker finished").expect("every slot filled"))
        .collect::<CliResult<Vec<_>>>()?;
    mark_optimal(&mut records);

    match &args.out {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            write_csv(&records, file)?;
        }
        None => write_csv(&records, &mut *out)?,
    }
    Ok(records.iter().all(|r| r.converged))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(it: usize, converged: bool) -> BenchRecord {
        BenchRecord {
            problem: "p".into(),
            method: "hss".into(),
            alpha: Some(1.0),
            beta: None,
            solver: "gmres(5)".into(),
            it,
            inner_it: 0,
            cpu: 0.0,
            converged,
            rel_residual: 0.0,
            optimal: false,
        }
    }

    #[test]
    fn optimum_ignores_unconverged_rows() {
        let mut rs = vec![rec(40, true), rec(3, false), rec(12, true), rec(12, true)];
        mark_optimal(&mut rs);
        let flags: Vec<bool> = rs.iter().map(|r| r.optimal).collect();
        assert_eq!(flags, vec![false, false, true, false]);

        let mut none = vec![rec(1, false)];
        mark_optimal(&mut none);
        assert!(!none[0].optimal);
    }
}
