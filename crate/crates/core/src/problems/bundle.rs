//! A saddle system on disk: `A.mtx`, `B.mtx`, `C.mtx`, `f.vec`, `g.vec` and `meta.json`.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::mtx::{read_matrix_market, read_vector, write_matrix_market, write_vector};
use crate::error::{Result, SolverError};
use crate::saddle::SaddleSystem;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BundleMeta {
    pub n: usize,
    pub m: usize,
    /// `"stokes_q1p0"`, `"random"`, or free text for imported systems.
    pub generator: String,
    /// Generator parameters (grid, seed, ...).
    pub config: serde_json::Value,
}

pub fn write_bundle(sys: &SaddleSystem, dir: impl AsRef<Path>, generator: &str, config: serde_json::Value) -> Result<BundleMeta> {
    let dir = dir.as_ref();
    fs::create_dir_all(dir).map_err(|source| SolverError::Io {
        path: dir.to_path_buf(),
        source,
    })?;
    write_matrix_market(sys.a(), dir.join("A.mtx"))?;
    write_matrix_market(sys.b(), dir.join("B.mtx"))?;
    write_matrix_market(sys.c(), dir.join("C.mtx"))?;
    write_vector(sys.f(), dir.join("f.vec"))?;
    write_vector(sys.g(), dir.join("g.vec"))?;
    let meta = BundleMeta {
        n: sys.n(),
        m: sys.m(),
        generator: generator.to_string(),
        config,
    };
    let path = dir.join("meta.json");
    fs::write(&path, serde_json::to_string_pretty(&meta)?).map_err(|source| SolverError::Io { path, source })?;
    Ok(meta)
}

pub fn read_bundle(dir: impl AsRef<Path>) -> Result<(SaddleSystem, BundleMeta)> {
    let dir = dir.as_ref();
    let path = dir.join("meta.json");
    let text = fs::read_to_string(&path).map_err(|source| SolverError::Io { path, source })?;
    let meta: BundleMeta = serde_json::from_str(&text)?;
    let read_sized = |name: &str, rows: usize, cols: usize| -> Result<_> {
        let m = read_matrix_market(dir.join(name))?;
        // Trailing empty rows/columns are legal in the file; enforce the declared shape.
        if m.nrows() != rows || m.ncols() != cols {
            return Err(SolverError::InvalidParameter(format!(
                "{name} is {}x{}, meta.json implies {rows}x{cols}",
                m.nrows(),
                m.ncols()
            )));
        }
        Ok(m)
    };
    let a = read_sized("A.mtx", meta.n, meta.n)?;
    let b = read_sized("B.mtx", meta.m, meta.n)?;
    let c = read_sized("C.mtx", meta.m, meta.m)?;
    let f = read_vector(dir.join("f.vec"))?;
    let g = read_vector(dir.join("g.vec"))?;
    Ok((SaddleSystem::new(a, b, c, f, g)?, meta))
}
