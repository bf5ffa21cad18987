//! Matrix Market coordinate files and plain vector files.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Result, SolverError};
use crate::sparse::{CsrMatrix, TripletMatrix};

/// Shortest decimal that parses back to the same `f64` (at most 17 significant digits).
pub fn format_real(v: f64) -> String {
    let a = v.abs();
    if v == 0.0 || (1e-5..1e16).contains(&a) {
        format!("{v}")
    } else {
        format!("{v:e}")
    }
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> SolverError + '_ {
    move |source| SolverError::Io {
        path: path.to_path_buf(),
        source,
    }
}

pub fn read_matrix_market(path: impl AsRef<Path>) -> Result<CsrMatrix> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    parse_matrix_market(BufReader::new(file), path)
}

/// Parse from any reader; `origin` only labels error messages.
pub fn parse_matrix_market<R: BufRead>(reader: R, origin: &Path) -> Result<CsrMatrix> {
    let err = |line: usize, message: String| SolverError::Parse {
        path: origin.to_path_buf(),
        line,
        message,
    };
    let mut lines = reader.lines().enumerate();

    let (_, header) = lines.next().ok_or_else(|| err(1, "empty file".into()))?;
    let header = header.map_err(|e| err(1, e.to_string()))?;
    let tokens: Vec<String> = header.split_whitespace().map(|t| t.to_ascii_lowercase()).collect();
    if tokens.len() != 5 || tokens[0] != "%%matrixmarket" || tokens[1] != "matrix" {
        return Err(err(1, format!("malformed header '{header}'")));
    }
    if tokens[2] != "coordinate" {
        return Err(err(1, format!("unsupported format '{}', only coordinate is read", tokens[2])));
    }
    if tokens[3] != "real" {
        return Err(err(1, format!("unsupported field '{}', only real is read", tokens[3])));
    }
    let symmetric = match tokens[4].as_str() {
        "general" => false,
        "symmetric" => true,
        other => return Err(err(1, format!("unsupported symmetry '{other}'"))),
    };

    let mut size: Option<(usize, usize, usize)> = None;
    let mut triplets: Option<TripletMatrix> = None;
    let mut seen = 0usize;
    for (idx, line) in lines {
        let lineno = idx + 1;
        let line = line.map_err(|e| err(lineno, e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('%') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match size {
            None => {
                if fields.len() != 3 {
                    return Err(err(lineno, format!("expected 'rows cols entries', got '{trimmed}'")));
                }
                let parse = |s: &str| s.parse::<usize>().map_err(|e| err(lineno, format!("bad size '{s}': {e}")));
                let (r, c, k) = (parse(fields[0])?, parse(fields[1])?, parse(fields[2])?);
                if symmetric && r != c {
                    return Err(err(lineno, "symmetric matrix must be square".into()));
                }
                size = Some((r, c, k));
                triplets = Some(TripletMatrix::with_capacity(r, c, if symmetric { 2 * k } else { k }));
            }
            Some((nrows, ncols, nnz)) => {
                if fields.len() != 3 {
                    return Err(err(lineno, format!("expected 'row col value', got '{trimmed}'")));
                }
                if seen == nnz {
                    return Err(err(lineno, format!("more than the declared {nnz} entries")));
                }
                let index = |s: &str, bound: usize| -> Result<usize> {
                    let i = s.parse::<usize>().map_err(|e| err(lineno, format!("bad index '{s}': {e}")))?;
                    if i == 0 || i > bound {
                        return Err(err(lineno, format!("index {i} out of range 1..={bound}")));
                    }
                    Ok(i - 1)
                };
                let i = index(fields[0], nrows)?;
                let j = index(fields[1], ncols)?;
                let v = fields[2]
                    .parse::<f64>()
                    .map_err(|e| err(lineno, format!("bad value '{}': {e}", fields[2])))?;
                let t = triplets.as_mut().expect("allocated with size line");
                t.push(i, j, v)?;
                if symmetric && i != j {
                    t.push(j, i, v)?;
                }
                seen += 1;
            }
        }
    }
    let (_, _, nnz) = size.ok_or_else(|| err(1, "missing size line".into()))?;
    if seen != nnz {
        return Err(err(0, format!("declared {nnz} entries, found {seen}")));
    }
    Ok(triplets.expect("allocated with size line").to_csr())
}

fn write_entries(
    path: &Path,
    symmetry: &str,
    nrows: usize,
    ncols: usize,
    entries: &[(usize, usize, f64)],
) -> Result<()> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        writeln!(w, "%%MatrixMarket matrix coordinate real {symmetry}")?;
        writeln!(w, "{nrows} {ncols} {}", entries.len())?;
        for &(i, j, v) in entries {
            writeln!(w, "{} {} {}", i + 1, j + 1, format_real(v))?;
        }
        w.flush()
    };
    body().map_err(io_err(path))
}

pub fn write_matrix_market(m: &CsrMatrix, path: impl AsRef<Path>) -> Result<()> {
    let entries: Vec<_> = m.triplets().collect();
    write_entries(path.as_ref(), "general", m.nrows(), m.ncols(), &entries)
}

/// Symmetric storage: only the lower triangle is written.
pub fn write_matrix_market_symmetric(m: &CsrMatrix, path: impl AsRef<Path>) -> Result<()> {
    if m.nrows() != m.ncols() || m.max_asymmetry() != 0.0 {
        return Err(SolverError::NotSymmetric {
            name: "matrix market output",
            asymmetry: m.max_asymmetry(),
        });
    }
    let entries: Vec<_> = m.triplets().filter(|&(i, j, _)| i >= j).collect();
    write_entries(path.as_ref(), "symmetric", m.nrows(), m.ncols(), &entries)
}

/// One decimal per line.
pub fn write_vector(v: &[f64], path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    let mut body = || -> std::io::Result<()> {
        for x in v {
            writeln!(w, "{}", format_real(*x))?;
        }
        w.flush()
    };
    body().map_err(io_err(path))
}

pub fn read_vector(path: impl AsRef<Path>) -> Result<Vec<f64>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(io_err(path))?;
    let mut out = Vec::new();
    for (idx, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(io_err(path))?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        out.push(t.parse::<f64>().map_err(|e| SolverError::Parse {
            path: path.to_path_buf(),
            line: idx + 1,
            message: format!("bad value '{t}': {e}"),
        })?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<CsrMatrix> {
        parse_matrix_market(text.as_bytes(), Path::new("test.mtx"))
    }

    #[test]
    fn minimal_file() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("one.mtx");
        let m = CsrMatrix::from_triplets(1, 1, &[(0, 0, 2.0)]).unwrap();
        write_matrix_market(&m, &p).unwrap();
        let text = std::fs::read_to_string(&p).unwrap();
        assert_eq!(text, "%%MatrixMarket matrix coordinate real general\n1 1 1\n1 1 2\n");
        assert_eq!(read_matrix_market(&p).unwrap(), m);
    }

    #[test]
    fn symmetric_storage_expands() {
        let text = "%%MatrixMarket matrix coordinate real symmetric\n% comment\n2 2 3\n1 1 4\n2 1 2\n2 2 5\n";
        let m = parse(text).unwrap();
        assert_eq!(m.nnz(), 4);
        assert_eq!(m.get(0, 1), 2.0);

        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("sym.mtx");
        write_matrix_market_symmetric(&m, &p).unwrap();
        let written = std::fs::read_to_string(&p).unwrap();
        assert_eq!(written.lines().nth(1), Some("2 2 3"));
        assert_eq!(read_matrix_market(&p).unwrap(), m);
    }

    #[test]
    fn rejections_carry_line_numbers() {
        let e = parse("%%MatrixMarket matrix array real general\n1 1\n2\n").unwrap_err();
        assert!(e.to_string().contains("unsupported format"), "{e}");
        let e = parse("%%MatrixMarket matrix coordinate complex general\n").unwrap_err();
        assert!(e.to_string().contains("unsupported field"), "{e}");
        let e = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n3 1 1.0\n").unwrap_err();
        assert!(matches!(e, SolverError::Parse { line: 3, .. }), "{e}");
        let e = parse("not a header\n").unwrap_err();
        assert!(matches!(e, SolverError::Parse { line: 1, .. }));
        let e = parse("%%MatrixMarket matrix coordinate real general\n2 2 2\n1 1 1.0\n").unwrap_err();
        assert!(e.to_string().contains("declared 2"), "{e}");
        let e = parse("%%MatrixMarket matrix coordinate real general\n2 2 1\n1 1 x\n").unwrap_err();
        assert!(matches!(e, SolverError::Parse { line: 3, .. }));
    }

    #[test]
    fn real_formatting_round_trips() {
        for v in [0.1, -2.0, 1.0 / 3.0, 1e-300, 6.02e23, -0.0, f64::MAX, f64::MIN_POSITIVE, 123456.789] {
            let s = format_real(v);
            assert_eq!(s.parse::<f64>().unwrap().to_bits(), v.to_bits(), "{s}");
        }
        assert_eq!(format_real(2.0), "2");
    }

    #[test]
    fn vector_files() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("v.vec");
        let v = vec![1.5, -1e-9, 0.0, 1.0 / 7.0];
        write_vector(&v, &p).unwrap();
        assert_eq!(read_vector(&p).unwrap(), v);
    }
}
