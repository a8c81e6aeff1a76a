use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use unimorph::io::commands::{self, OutputFormat};
use unimorph::io::{MetaOverrides, ProjectConfig};
use unimorph::{Error, Result};

/// Design and characterization toolkit for multilayer piezoelectric unimorph
/// actuators.
///
/// Exit codes: 0 success, 1 I/O error, 2 parse error (command line, project
/// file or trace file), 3 validation error, 4 computation error, 5 no
/// feasible design.
#[derive(Parser)]
#[command(name = "unimorph", version)]
struct Cli {
    /// Project file (TOML).
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Output directory (overrides `output_dir` in the project file).
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Artifact format for `model` and `sweep`.
    #[arg(long, global = true, value_enum, default_value_t)]
    format: OutputFormat,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the configured stack: neutral axis, stiffness, force,
    /// deflection, resonance, mass and feasibility.
    Model,
    /// Evaluate every design in the configured sweep grid.
    Sweep,
    /// Sweep, then extract the force/deflection Pareto front and the
    /// power density ranking.
    Pareto,
    /// Per-cycle work and power from a loaded-displacement trace.
    Characterize {
        trace: PathBuf,
        /// Tip load (kg).
        #[arg(long)]
        load_mass: Option<f64>,
        /// Actuator mass (kg).
        #[arg(long)]
        actuator_mass: Option<f64>,
        /// Drive frequency (Hz).
        #[arg(long)]
        drive_frequency: Option<f64>,
        /// Moving-average window in samples (odd).
        #[arg(long)]
        smoothing_window: Option<usize>,
    },
    /// Frequency response, resonance and Q from a linear chirp trace.
    Resonance {
        trace: PathBuf,
        /// Chirp start frequency (Hz).
        #[arg(long)]
        f_lo: Option<f64>,
        /// Chirp end frequency (Hz).
        #[arg(long)]
        f_hi: Option<f64>,
        /// Number of frequency bins.
        #[arg(long, default_value_t = 200)]
        bins: usize,
    },
    /// Material library operations.
    Materials {
        #[command(subcommand)]
        action: MaterialsAction,
    },
}

#[derive(Subcommand)]
enum MaterialsAction {
    /// Built-in materials merged with project overrides.
    List,
}

fn load_config(path: Option<&Path>, required: bool) -> Result<ProjectConfig> {
    match path {
        Some(p) => ProjectConfig::load(p),
        None if required => Err(Error::validation(
            "--config",
            "this command needs a project file",
        )),
        None => Ok(ProjectConfig::default()),
    }
}

fn print_files(files: &[PathBuf]) {
    for f in files {
        println!("wrote {}", f.display());
    }
}

fn run(cli: Cli) -> Result<()> {
    let needs_config = matches!(
        cli.command,
        Command::Model | Command::Sweep | Command::Pareto
    );
    let config = load_config(cli.config.as_deref(), needs_config)?;
    let out_dir = cli
        .out
        .clone()
        .or_else(|| config.output_dir.clone())
        .unwrap_or_else(|| PathBuf::from("."));

    match cli.command {
        Command::Model => {
            let o = commands::model(&config, &out_dir, cli.format)?;
            print!("{}", o.report.to_text());
            print_files(&o.files);
        }
        Command::Sweep => {
            let o = commands::sweep_cmd(&config, &out_dir, cli.format)?;
            let feasible = o.report.iter().filter(|p| p.feasible).count();
            println!("{} designs evaluated, {feasible} feasible", o.report.len());
            if feasible == 0 {
                eprintln!("warning: no feasible design in the sweep");
            }
            print_files(&o.files);
        }
        Command::Pareto => match commands::pareto(&config, &out_dir) {
            Ok(o) => {
                let r = &o.report;
                println!(
                    "{} designs, {} feasible, {} on the front",
                    r.total_points,
                    r.feasible_points,
                    r.front.len()
                );
                for p in &r.front {
                    println!(
                        "  #{:<6} N={:<3} t_l={:>5.1} um  F={:>8.4} mN  d={:>8.4} mm",
                        p.index,
                        p.params.n_layers,
                        p.params.layer_thickness * 1e6,
                        p.blocked_force() * 1e3,
                        p.free_deflection() * 1e3
                    );
                }
                if let Some(best) = r.ranking.first() {
                    println!(
                        "highest density proxy: #{} at {:.4} W/kg",
                        best.index, best.density_proxy
                    );
                }
                print_files(&o.files);
            }
            Err(e @ Error::EmptyFeasibleSet { .. }) => {
                eprintln!("warning: front is empty");
                return Err(e);
            }
            Err(e) => return Err(e),
        },
        Command::Characterize {
            trace,
            load_mass,
            actuator_mass,
            drive_frequency,
            smoothing_window,
        } => {
            let mut options = config.characterize_options()?;
            if let Some(w) = smoothing_window {
                options.smoothing_window = w;
            }
            let overrides = MetaOverrides {
                load_mass,
                actuator_mass,
                drive_frequency,
                ..Default::default()
            };
            let o = commands::characterize(&trace, &overrides, &options, &out_dir)?;
            print!("{}", o.report.to_text());
            print_files(&o.files);
        }
        Command::Resonance {
            trace,
            f_lo,
            f_hi,
            bins,
        } => {
            let overrides = MetaOverrides {
                f_lo,
                f_hi,
                ..Default::default()
            };
            let o = commands::resonance(&trace, &overrides, bins, &out_dir)?;
            print!("{}", o.report.to_text());
            print_files(&o.files);
        }
        Command::Materials {
            action: MaterialsAction::List,
        } => {
            println!(
                "{:<12} {:>10} {:>10} {:>12} {:>14} {:>10}",
                "name", "E [GPa]", "rho", "d31 [pm/V]", "E_bd [kV/mm]", "max strain"
            );
            for m in commands::materials(&config)? {
                let opt = |v: Option<f64>, scale: f64| {
                    v.map_or_else(|| "-".to_string(), |v| format!("{}", v * scale))
                };
                println!(
                    "{:<12} {:>10} {:>10} {:>12} {:>14} {:>10}",
                    m.name,
                    m.youngs_modulus / 1e9,
                    m.density,
                    m.d31 * 1e12,
                    opt(m.dielectric_strength, 1e-6),
                    opt(m.max_strain, 1.0)
                );
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
