//! Test problems and their on-disk formats.

pub mod bundle;
pub mod mtx;
pub mod random;
pub mod stokes;

pub use bundle::{read_bundle, write_bundle, BundleMeta};
pub use mtx::{read_matrix_market, read_vector, write_matrix_market, write_matrix_market_symmetric, write_vector};
pub use random::generate_random_saddle;
pub use stokes::{generate_stokes_q1p0, stokes_exact_velocity, StokesConfig};
