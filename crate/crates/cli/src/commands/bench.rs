use std::io::Write;

use sadprec::problems::{generate_stokes_q1p0, StokesConfig};

use crate::cli::{BenchArgs, Method};
use crate::error::{usage, CliError, CliResult};
use crate::record::{format_table, write_csv};

use super::solve::{resolve_spec, run_one};

pub fn bench(args: &BenchArgs, out: &mut dyn Write) -> CliResult<bool> {
    if args.methods.is_empty() || args.grids.is_empty() {
        return Err(usage("bench needs at least one grid and one method"));
    }
    let specs = args
        .methods
        .iter()
        .map(|&m| match m {
            Method::None => resolve_spec(m, None, None, args.solver.inner),
            Method::Mgss => resolve_spec(m, Some(args.alpha), Some(args.beta), args.solver.inner),
            Method::Rmgss => resolve_spec(m, None, Some(args.beta), args.solver.inner),
            Method::Hss => resolve_spec(m, args.hss_alpha, None, args.solver.inner),
        })
        .collect::<CliResult<Vec<_>>>()?;

    let mut records = Vec::new();
    for &q in &args.grids {
        let sys = generate_stokes_q1p0(&StokesConfig::new(q))?;
        let id = format!("stokes_q{q}");
        for &spec in &specs {
            records.push(run_one(&sys, &id, spec, &args.solver, false)?);
        }
    }

    write!(out, "{}", format_table(&records))?;
    writeln!(out, "CPU: wall time of the solver call only (assembly and preconditioner setup excluded)")?;
    match &args.csv {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            write_csv(&records, file)?;
        }
        None => {
            writeln!(out)?;
            write_csv(&records, &mut *out)?;
        }
    }
    Ok(records.iter().all(|r| r.converged))
}
