use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use cl3_rashba::harness::config::parse_list;
use cl3_rashba::harness::export::{render_spectrum, render_texture, spectrum_rows, texture_rows};
use cl3_rashba::harness::{run_suite, ConformanceReport, MomentumGrid, OutputFormat, Status, SuiteConfig};
use cl3_rashba::Result;

#[derive(Parser)]
#[command(name = "cl3-rashba", version, about = "Deformed Cl3 Rashba models: conformance sweeps and spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run every invariant check; exit 1 if any fails.
    Verify(Sweep),
    /// Eigenvalues and eigen-phases over the grid.
    Spectrum(Sweep),
    /// Spin texture (v1, v2, v3) of both branches over the grid.
    Texture(Sweep),
    /// Re-render a saved JSON report.
    Report {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Sweep {
    /// Comma-separated gamma values in (-1, 1).
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<String>,
    /// Comma-separated beta values.
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<String>,
    /// "min:max:n" for both axes, "a:b:n,c:d:m", or "circle:r:n".
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<MomentumGrid>,
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

impl Sweep {
    fn config(self) -> Result<SuiteConfig> {
        let mut c = SuiteConfig::default();
        if let Some(g) = self.gamma {
            c.gamma_values = parse_list(&g)?;
        }
        if let Some(b) = self.beta {
            c.beta_values = parse_list(&b)?;
        }
        if let Some(g) = self.grid {
            c.momentum_grid = g;
        }
        if let Some(n) = self.samples {
            c.samples = n;
        }
        if let Some(s) = self.seed {
            c.seed = s;
        }
        if let Some(t) = self.tol {
            c.tolerance = t;
        }
        if let Some(f) = self.format {
            c.format = f;
        }
        c.output_path = self.out;
        c.validate()?;
        Ok(c)
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(s) => {
            let c = s.config()?;
            let report = run_suite(&c)?;
            for e in report.entries.iter().filter(|e| e.status != Status::Pass) {
                eprintln!(
                    "{:?} {} residual {:?} threshold {:e} {}",
                    e.status, e.test_id, e.max_residual, e.threshold, e.detail
                );
            }
            eprintln!(
                "{} of {} checks passed",
                report.summary.passed, report.summary.total
            );
            emit(&report.render(c.format)?, c.output_path.as_ref())?;
            Ok(report.all_passed())
        }
        Command::Spectrum(s) => {
            let c = s.config()?;
            emit(&render_spectrum(&spectrum_rows(&c)?, c.format)?, c.output_path.as_ref())?;
            Ok(true)
        }
        Command::Texture(s) => {
            let c = s.config()?;
            emit(&render_texture(&texture_rows(&c)?, c.format)?, c.output_path.as_ref())?;
            Ok(true)
        }
        Command::Report { input, format, out } => {
            let text = fs::read_to_string(&input)?;
            let report: ConformanceReport = serde_json::from_str(&text)?;
            emit(&report.render(format)?, out.as_ref())?;
            Ok(report.all_passed())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

