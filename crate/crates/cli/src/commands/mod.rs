mod bench;
mod generate;
mod solve;
mod spectrum;
mod sweep;

pub use bench::bench;
pub use generate::generate;
pub use solve::{load_bundle, resolve_spec, run_one, solve};
pub use spectrum::spectrum;
pub use sweep::sweep;
