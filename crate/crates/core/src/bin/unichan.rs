//! Command-line front end.
//!
//! Exit codes: 0 = pass, 1 = fail or bound violation or decode failure,
//! 2 = configuration error.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use unichan::bitlinalg::BitVector;
use unichan::harness::{
    build_channel, build_code, check_rate_bound, run_experiment, run_hamming_attack,
    run_oblivious_attack, sweep, ChannelDescriptor, CodeDescriptor, ExperimentSpec,
    HammingAttackSpec, HarnessError, ObliviousAttackSpec, Verdict,
};

#[derive(Parser)]
#[command(
    name = "unichan",
    version,
    about = "Universal channel codes: encode, decode, simulate, attack, bound-check, sweep"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a message under a code descriptor and a seed.
    Encode {
        /// Code descriptor JSON file.
        #[arg(long)]
        code: PathBuf,
        /// Message in the hex wire format, e.g. "6:2a".
        #[arg(long)]
        message: String,
        /// Shared-randomness seed in the hex wire format.
        #[arg(long)]
        seed: String,
    },
    /// Decode a received word against a channel description.
    Decode {
        #[arg(long)]
        code: PathBuf,
        /// Channel descriptor JSON file.
        #[arg(long)]
        channel: PathBuf,
        /// Received word in the hex wire format.
        #[arg(long)]
        received: String,
        #[arg(long)]
        seed: String,
    },
    /// Run a Monte Carlo experiment from a spec file.
    Simulate {
        /// Experiment spec JSON file.
        #[arg(long)]
        spec: PathBuf,
        /// Write the report JSON here as well as stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a shared-randomness lower-bound attack.
    Attack {
        #[arg(long, value_enum)]
        kind: AttackKind,
        /// Attack spec JSON file.
        #[arg(long)]
        spec: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check the sphere-packing rate bound of a code.
    Bounds {
        #[arg(long)]
        code: PathBuf,
    },
    /// Sweep one spec field over a list of values; prints CSV.
    Sweep {
        #[arg(long)]
        spec: PathBuf,
        /// Dotted path into the spec JSON, e.g. code.t or channel.noise.size.
        #[arg(long)]
        axis: String,
        /// Comma-separated numbers.
        #[arg(long, value_delimiter = ',')]
        values: Vec<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackKind {
    Oblivious,
    Hamming,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, HarnessError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
    Ok(serde_json::from_str(&text)?)
}

fn write_out(out: &Option<PathBuf>, text: &str) -> Result<(), HarnessError> {
    if let Some(path) = out {
        std::fs::write(path, text)
            .map_err(|e| HarnessError::Config(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode, HarnessError> {
    match cli.command {
        Command::Encode {
            code,
            message,
            seed,
        } => {
            let desc: CodeDescriptor = read_json(&code)?;
            let code = build_code(&desc)?;
            let m: BitVector = message
                .parse()
                .map_err(|e| HarnessError::Config(format!("bad message: {e}")))?;
            let rho: BitVector = seed
                .parse()
                .map_err(|e| HarnessError::Config(format!("bad seed: {e}")))?;
            let x = code.encode(&m, &rho)?;
            println!("{x}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Decode {
            code,
            channel,
            received,
            seed,
        } => {
            let desc: CodeDescriptor = read_json(&code)?;
            let chan: ChannelDescriptor = read_json(&channel)?;
            let code = build_code(&desc)?;
            let decoder = code.decoder_for(&build_channel(&chan)?)?;
            let xt: BitVector = received
                .parse()
                .map_err(|e| HarnessError::Config(format!("bad received word: {e}")))?;
            let rho: BitVector = seed
                .parse()
                .map_err(|e| HarnessError::Config(format!("bad seed: {e}")))?;
            match decoder.decode(&xt, &rho) {
                Ok(m) => {
                    println!("{m}");
                    Ok(ExitCode::SUCCESS)
                }
                Err(failure) => {
                    eprintln!("decode failure: {failure}");
                    Ok(ExitCode::FAILURE)
                }
            }
        }
        Command::Simulate { spec, out } => {
            let spec: ExperimentSpec = read_json(&spec)?;
            let report = run_experiment(&spec)?;
            let text = serde_json::to_string_pretty(&report)?;
            println!("{text}");
            write_out(&out, &text)?;
            Ok(match report.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                Verdict::Fail => ExitCode::FAILURE,
            })
        }
        Command::Attack { kind, spec, out } => match kind {
            AttackKind::Oblivious => {
                let spec: ObliviousAttackSpec = read_json(&spec)?;
                let outcome = run_oblivious_attack(&spec)?;
                let text = serde_json::to_string_pretty(&outcome)?;
                println!("{text}");
                write_out(&out, &text)?;
                Ok(if outcome.confirmed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                })
            }
            AttackKind::Hamming => {
                let spec: HammingAttackSpec = read_json(&spec)?;
                let outcome = run_hamming_attack(&spec)?;
                let text = serde_json::to_string_pretty(&outcome)?;
                println!("{text}");
                write_out(&out, &text)?;
                Ok(if outcome.confirmed {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::FAILURE
                })
            }
        },
        Command::Bounds { code } => {
            let desc: CodeDescriptor = read_json(&code)?;
            let code = build_code(&desc)?;
            let report = check_rate_bound(code.as_ref());
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(if report.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Sweep {
            spec,
            axis,
            values,
            out,
        } => {
            let spec: ExperimentSpec = read_json(&spec)?;
            let csv = sweep(&spec, &axis, &values)?;
            print!("{csv}");
            write_out(&out, &csv)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(2)
        }
    }
}
