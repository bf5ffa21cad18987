use std::io::Write;

use sadprec::problems::{generate_random_saddle, generate_stokes_q1p0, write_bundle, StokesConfig};
use serde_json::json;

use crate::cli::GenerateArgs;
use crate::error::{usage, CliResult};
use crate::grid::{optional, parse_pairs, required};

pub fn generate(args: &GenerateArgs, out: &mut dyn Write) -> CliResult<()> {
    let (sys, generator, config) = if let Some(items) = &args.stokes {
        let pairs = parse_pairs(items, &["q", "stab"])?;
        let mut cfg = StokesConfig::new(required(&pairs, "q")?);
        cfg.stab_param = optional(&pairs, "stab", cfg.stab_param)?;
        cfg.pin_pressure = !args.no_pin;
        let sys = generate_stokes_q1p0(&cfg)?;
        let id = format!("stokes_q{}{}", cfg.q, if cfg.pin_pressure { "" } else { "_unpinned" });
        let config = json!({"id": id, "q": cfg.q, "stab_param": cfg.stab_param, "pin_pressure": cfg.pin_pressure});
        (sys, "stokes_q1p0", config)
    } else if let Some(items) = &args.random {
        if args.no_pin {
            return Err(usage("--no-pin only applies to --stokes"));
        }
        let pairs = parse_pairs(items, &["n", "m", "seed", "density"])?;
        let n: usize = required(&pairs, "n")?;
        let m: usize = required(&pairs, "m")?;
        let seed: u64 = required(&pairs, "seed")?;
        let density: f64 = optional(&pairs, "density", 0.3)?;
        let sys = generate_random_saddle(n, m, density, seed)?;
        let config = json!({"id": format!("random_n{n}_m{m}_s{seed}"), "n": n, "m": m, "seed": seed, "density": density});
        (sys, "random", config)
    } else {
        return Err(usage("one of --stokes or --random is required"));
    };
    let meta = write_bundle(&sys, &args.out, generator, config)?;
    writeln!(out, "{}", serde_json::to_string(&meta)?)?;
    Ok(())
}
