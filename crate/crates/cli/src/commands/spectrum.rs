use std::io::Write;
use std::path::Path;

use sadprec::spectral::{
    dense_eigen_real_schur, iteration_matrix_dense, preconditioned_matrix_dense, predicted_rmgss_spectrum,
    DENSE_EIGEN_MAX_ORDER,
};
use sadprec::{assemble_block_saddle, PrecondSpec, Spectrum};

use crate::cli::{SpectrumArgs, SpectrumOperator};
use crate::error::{usage, CliError, CliResult};

use super::solve::load_bundle;

fn operator_title(args: &SpectrumArgs) -> String {
    match args.operator {
        SpectrumOperator::Saddle => "saddle matrix".to_string(),
        SpectrumOperator::MgssPrec => format!("MGSS preconditioned, alpha={}, beta={}", args.alpha, args.beta),
        SpectrumOperator::RmgssPrec => format!("RMGSS preconditioned, beta={}", args.beta),
        SpectrumOperator::Gamma => format!("MGSS iteration matrix, alpha={}, beta={}", args.alpha, args.beta),
        SpectrumOperator::RmgssPredicted => format!("RMGSS predicted, beta={}", args.beta),
    }
}

/// Scatter plot of `csv_name` (relative to the script) into a PNG of the same stem.
pub fn gnuplot_script(csv_name: &str, png_name: &str, title: &str) -> String {
    format!(
        "set terminal pngcairo size 640,560\n\
         set output '{png_name}'\n\
         set datafile separator ','\n\
         set title '{title}'\n\
         set xlabel 'real part'\n\
         set ylabel 'imaginary part'\n\
         set grid\n\
         set key off\n\
         plot '{csv_name}' skip 1 using 1:2 with points pointtype 7 pointsize 0.6\n"
    )
}

pub fn compute(args: &SpectrumArgs) -> CliResult<Spectrum> {
    let (sys, _) = load_bundle(&args.input)?;
    if sys.order() > DENSE_EIGEN_MAX_ORDER {
        return Err(usage(format!(
            "operator order {} exceeds the dense eigensolver cap {DENSE_EIGEN_MAX_ORDER}; generate a smaller grid (q <= 12 for Stokes)",
            sys.order()
        )));
    }
    let spectrum = match args.operator {
        SpectrumOperator::Saddle => {
            let dense = assemble_block_saddle(&sys).to_dense()?;
            dense_eigen_real_schur(&dense)?
        }
        SpectrumOperator::MgssPrec => {
            dense_eigen_real_schur(&preconditioned_matrix_dense(&sys, PrecondSpec::mgss(args.alpha, args.beta).direct())?)?
        }
        SpectrumOperator::RmgssPrec => {
            dense_eigen_real_schur(&preconditioned_matrix_dense(&sys, PrecondSpec::rmgss(args.beta).direct())?)?
        }
        SpectrumOperator::Gamma => dense_eigen_real_schur(&iteration_matrix_dense(&sys, args.alpha, args.beta)?)?,
        SpectrumOperator::RmgssPredicted => predicted_rmgss_spectrum(&sys, args.beta)?,
    };
    Ok(spectrum)
}

fn create(path: &Path) -> CliResult<std::fs::File> {
    std::fs::File::create(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn spectrum(args: &SpectrumArgs, out: &mut dyn Write) -> CliResult<()> {
    let spectrum = compute(args)?;
    spectrum.write_csv(std::io::BufWriter::new(create(&args.out)?))?;

    let script_path = args.out.with_extension("gp");
    let name = |p: &Path| p.file_name().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    let script = gnuplot_script(&name(&args.out), &name(&args.out.with_extension("png")), &operator_title(args));
    create(&script_path)?.write_all(script.as_bytes())?;

    writeln!(
        out,
        "{} eigenvalues, spectral radius {:.6e}; wrote {} and {}",
        spectrum.order(),
        spectrum.spectral_radius(),
        args.out.display(),
        script_path.display()
    )?;
    Ok(())
}
