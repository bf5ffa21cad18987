use serde::{Deserialize, Serialize};

/// One solve: what was run, how many iterations it took and whether it converged.
///
/// `cpu` is wall time in seconds around the solver call only; problem assembly
/// and preconditioner setup (Cholesky of `βI + C`, explicit Schur forms) are excluded.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub problem: String,
    pub method: String,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    /// `gmres(k)` or `stationary`.
    pub solver: String,
    pub it: usize,
    pub inner_it: usize,
    pub cpu: f64,
    pub converged: bool,
    pub rel_residual: f64,
    /// Set on the sweep row with the fewest iterations among converged ones.
    #[serde(default)]
    pub optimal: bool,
}

pub fn write_csv<W: std::io::Write>(records: &[BenchRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in records {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: std::io::Read>(input: R) -> csv::Result<Vec<BenchRecord>> {
    csv::Reader::from_reader(input).deserialize().collect()
}

/// Aligned text table in the column order of the CSV.
pub fn format_table(records: &[BenchRecord]) -> String {
    let header = ["problem", "method", "alpha", "beta", "solver", "IT", "inner", "CPU(s)", "conv", "relres"];
    let opt = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |x| format!("{x}"));
    let rows: Vec<[String; 10]> = records
        .iter()
        .map(|r| {
            [
                r.problem.clone(),
                r.method.clone(),
                opt(r.alpha),
                opt(r.beta),
                r.solver.clone(),
                r.it.to_string(),
                r.inner_it.to_string(),
                format!("{:.3}", r.cpu),
                if r.converged { "yes" } else { "no" }.to_string(),
                format!("{:.2e}", r.rel_residual),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = line(header.to_vec());
    out.push('\n');
    out.push_str(&"-".repeat(out.len() - 1));
    out.push('\n');
    for row in &rows {
        out.push_str(&line(row.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}
