use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use superspectral::actions::{
    chiral_fermionic_action, fermionic_action, gauge_superfields, sector_superfield, spectral_action, ActionDensity,
};
use superspectral::config::Config;
use superspectral::distance::PointMetric;
use superspectral::superspace::chiral_constrain;
use superspectral::triple::{build_total_triple, fluctuate, Fluctuation, JOutcome, OneForm};
use superspectral::verify;
use superspectral::{Error, Result};

#[derive(Parser)]
#[command(name = "superspectral", version, about = "Exact superspace and finite spectral triple computations")]
struct Cli {
    /// Flat key = value configuration file.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Print JSON.
    #[arg(long, global = true, conflicts_with = "tex")]
    json: bool,
    /// Print TeX where available.
    #[arg(long, global = true)]
    tex: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the identity suite.
    Verify {
        /// Only checks whose id starts with this prefix.
        #[arg(long)]
        only: Option<String>,
        /// Leave out wall times (reproducible output).
        #[arg(long)]
        no_timing: bool,
    },
    /// Inner fluctuation of the Dirac operator for a KO-dimension.
    Fluctuate {
        #[arg(long)]
        ko: Option<u8>,
    },
    /// θθ component of an action density.
    Action {
        #[arg(long, value_enum)]
        which: Which,
    },
    /// Connes distances for a point-space instance.
    Distance {
        #[arg(long = "in")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Chiral,
    Fermionic,
    Spectral,
}

enum Format {
    Text,
    Json,
    Tex,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    }
    .with_env()?;
    let fmt = if cli.json {
        Format::Json
    } else if cli.tex {
        Format::Tex
    } else {
        Format::Text
    };
    match cli.command {
        Command::Verify { only, no_timing } => {
            let mut report = verify::run(&cfg, only.as_deref());
            if no_timing {
                report = report.without_timing();
            }
            match fmt {
                Format::Json => println!("{}", report.to_json()),
                _ => print!("{}", report.to_text()),
            }
            Ok(if report.ok() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
        }
        Command::Fluctuate { ko } => {
            fluctuate_cmd(ko.unwrap_or(cfg.ko_dimension), fmt)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Action { which } => {
            let d = action_density(which)?;
            match fmt {
                Format::Json => println!("{}", serde_json::to_string_pretty(&d.to_json()).expect("json")),
                Format::Tex => println!("{}", d.to_tex()),
                Format::Text => println!("{}: {}", d.provenance, d.value),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Distance { input } => {
            let src = std::fs::read_to_string(&input).map_err(|e| Error::Io(format!("{}: {e}", input.display())))?;
            distance_cmd(&PointMetric::from_json(&src)?, fmt)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn fluctuate_cmd(ko: u8, fmt: Format) -> Result<()> {
    let triple = build_total_triple(ko)?;
    match fluctuate(ko, &OneForm::generic())? {
        Fluctuation::Operator { d_a, a_m, .. } => match fmt {
            Format::Json => {
                let entries: Vec<Vec<String>> = d_a.e.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
                let v = json!({
                    "ko": ko,
                    "status": "fluctuation",
                    "triple": triple,
                    "a_m": a_m.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                    "d_a": entries,
                });
                println!("{}", serde_json::to_string_pretty(&v).expect("json"));
            }
            Format::Tex => {
                println!("D_A = \\mathcal{{D}} + \\gamma^m A_m \\otimes \\gamma_F");
                for (m, a) in a_m.iter().enumerate() {
                    println!("A_{m} = {}", a.to_tex());
                }
            }
            Format::Text => {
                println!("KO-{ko}: D_A = D + gamma^m A_m (x) gamma_F = diag(D + gamma^m A_m, D - gamma^m A_m)");
                for (m, a) in a_m.iter().enumerate() {
                    println!("A_{m} = {a}");
                }
            }
        },
        Fluctuation::Obstructed(j) => {
            let body = match &j.outcome {
                JOutcome::Obstructed { body } => body.to_string(),
                JOutcome::Realizable { .. } => unreachable!("obstructed outcome"),
            };
            match fmt {
                Format::Json => {
                    let v = json!({
                        "ko": ko,
                        "status": "obstruction",
                        "constraint": j.constraint.to_string(),
                        "epsilon": j.epsilon,
                        "body": body,
                    });
                    println!("{}", serde_json::to_string_pretty(&v).expect("json"));
                }
                _ => {
                    println!("KO-{ko}: obstruction");
                    println!("J_F^2 = {} needs {} = {}", j.epsilon, j.constraint, j.epsilon);
                    println!("body {body} is a sum of moduli, never {}", j.epsilon);
                }
            }
        }
    }
    Ok(())
}

fn action_density(which: Which) -> Result<ActionDensity> {
    match which {
        Which::Chiral => {
            let cc = chiral_constrain(&sector_superfield('+'), ["psi+", "F+", "chi+"])?;
            chiral_fermionic_action(&cc)
        }
        Which::Fermionic => {
            fermionic_action(6, &sector_superfield('+'), &sector_superfield('-'), &gauge_superfields())
        }
        Which::Spectral => Ok(spectral_action(&gauge_superfields())?.1),
    }
}

fn distance_cmd(m: &PointMetric, fmt: Format) -> Result<()> {
    let n = m.n();
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            rows.push((i, j, m.distance(i, j)?));
        }
    }
    match fmt {
        Format::Json => {
            let v: Vec<_> = rows.iter().map(|(i, j, r)| json!({"i": i, "j": j, "distance": r.value, "certificate": r.certificate})).collect();
            println!("{}", serde_json::to_string_pretty(&json!({"n": n, "pairs": v})).expect("json"));
        }
        _ => {
            for (i, j, r) in rows {
                let cert = r.certificate.map(|f| format!("{f:?}")).unwrap_or_else(|| "-".into());
                println!("d({i},{j}) = {}  f = {cert}", r.value);
            }
        }
    }
    Ok(())
}
