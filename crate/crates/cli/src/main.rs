//! `geoentropy` command-line frontend.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use geoentropy::coding::{build_generic_code, parse_symbols};
use geoentropy::stream::{read_stream, write_stream};
use geoentropy::{
    combinatorial_volumes, EntropySuite, Error, ExactDistribution, JointDistribution, PrefixCode,
    DEFAULT_EXACT_LIMIT,
};
use num_bigint::BigUint;
use serde_json::{json, Value};

const EXIT_INPUT: u8 = 2;
const EXIT_CODEC: u8 = 3;
const EXIT_VIOLATION: u8 = 4;

/// The four distributions of the effective-dimension reference table.
const TABLE1: [(u64, u64); 4] = [(1, 2), (1, 4), (1, 16), (1, 256)];

#[derive(Parser, Debug)]
#[command(name = "geoentropy", version, about = "Generic-space entropy, coding and Born-rule tools")]
struct Cli {
    #[command(flatten)]
    config: Config,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Config {
    /// Logarithm base for entropies.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(2..))]
    base: u32,
    /// Largest generic dimension for which volumes are computed exactly.
    #[arg(long, global = true, default_value_t = DEFAULT_EXACT_LIMIT, value_parser = clap::value_parser!(u64).range(1..))]
    exact_limit: u64,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Seed for randomized operations.
    #[arg(long, global = true, default_value_t = 42)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Entropy report for a distribution file.
    Analyze {
        file: PathBuf,
        /// Rényi order (1 reports Shannon entropy).
        #[arg(long)]
        renyi: Option<f64>,
        /// Tsallis order (1 reports Shannon entropy in nats).
        #[arg(long)]
        tsallis: Option<f64>,
    },
    /// Generic-space prefix coding.
    #[command(subcommand)]
    Code(CodeCommand),
    /// Reproduce the generic/effective dimension table.
    Table1,
    /// Verify the information inequalities on a joint distribution file.
    Check { file: PathBuf },
}

#[derive(Subcommand, Debug)]
enum CodeCommand {
    /// Build the code for a distribution and report its average length.
    Build {
        dist: PathBuf,
        /// Write the code table here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Encode whitespace-separated symbol indices into a GSC1 stream.
    Encode {
        table: PathBuf,
        symbols: PathBuf,
        output: PathBuf,
    },
    /// Decode a GSC1 stream back into symbol indices.
    Decode {
        table: PathBuf,
        stream: PathBuf,
        /// Write the indices here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Self {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

type Outcome = Result<String, Failure>;

fn input_error(path: &Path) -> impl Fn(Error) -> Failure + '_ {
    move |e| Failure::input(format!("{}: {e}", path.display()))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_bytes(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, contents: &[u8]) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Integers that fit in a `u64` become JSON numbers, larger ones decimal strings.
fn big_json(n: &BigUint) -> Value {
    u64::try_from(n).map_or_else(|_| Value::String(n.to_string()), Value::from)
}

fn joined<T: ToString>(items: &[T]) -> String {
    items.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

fn run_analyze(path: &Path, renyi: Option<f64>, tsallis: Option<f64>, cfg: &Config) -> Outcome {
    let dist = ExactDistribution::parse(&read_text(path)?).map_err(input_error(path))?;
    let gs = dist.generic_space();
    let volumes = combinatorial_volumes(&gs, cfg.exact_limit);
    // order 1 is the Shannon limit of both families; the library rejects it
    let suite = EntropySuite::compute(
        &dist,
        cfg.base,
        renyi.filter(|&r| r != 1.0),
        tsallis.filter(|&q| q != 1.0),
    )
    .map_err(input_error(path))?;
    let h_renyi = renyi.map(|_| suite.renyi.map_or(suite.shannon, |(_, h)| h));
    let h_tsallis = tsallis.map(|_| match suite.tsallis {
        Some((_, h)) => h,
        None => suite.shannon * f64::from(cfg.base).ln(),
    });

    if cfg.json {
        let report = json!({
            "D": big_json(gs.dimension()),
            "counts": gs.counts().iter().map(big_json).collect::<Vec<_>>(),
            "v_info": volumes.v_info.as_ref().map(BigUint::to_string),
            "v_uinfo": volumes.v_uinfo.as_ref().map(BigUint::to_string),
            "log2_ratio": volumes.log2_ratio,
            "H_shannon": suite.shannon,
            "H_shannon_via_ratio": suite.shannon_via_ratio,
            "eff_dim": suite.effective_dimension,
            "H_renyi": h_renyi,
            "H_tsallis": h_tsallis,
            "H_projection": suite.projection,
            "base": cfg.base,
        });
        return Ok(format!("{report:#}\n"));
    }

    let mut out = String::new();
    let exact = |v: &Option<BigUint>| {
        v.as_ref().map_or_else(
            || format!("not computed (D > {})", cfg.exact_limit),
            BigUint::to_string,
        )
    };
    let _ = writeln!(out, "distribution         {dist}");
    let _ = writeln!(out, "D                    {}", gs.dimension());
    let _ = writeln!(out, "counts               {}", joined(gs.counts()));
    let _ = writeln!(out, "v_info               {}", exact(&volumes.v_info));
    let _ = writeln!(out, "v_uinfo              {}", exact(&volumes.v_uinfo));
    if let Some(ratio) = &volumes.ratio {
        let _ = writeln!(out, "ratio                {ratio}");
    }
    let _ = writeln!(out, "log2_ratio           {:.12}", volumes.log2_ratio);
    let _ = writeln!(out, "H_shannon            {:.12}", suite.shannon);
    let _ = writeln!(out, "H_shannon_via_ratio  {:.12}", suite.shannon_via_ratio);
    let _ = writeln!(out, "eff_dim              {:.6}", suite.effective_dimension);
    if let (Some(r), Some(h)) = (renyi, h_renyi) {
        let _ = writeln!(out, "{:<21}{h:.12}", format!("H_renyi({r})"));
    }
    if let (Some(q), Some(h)) = (tsallis, h_tsallis) {
        let _ = writeln!(out, "{:<21}{h:.12}", format!("H_tsallis({q})"));
    }
    let _ = writeln!(out, "H_projection         {:.12}", suite.projection);
    let _ = writeln!(out, "base                 {}", cfg.base);
    Ok(out)
}

fn load_table(path: &Path) -> Result<PrefixCode, Failure> {
    PrefixCode::parse_table(&read_text(path)?).map_err(input_error(path))
}

fn run_code(cmd: &CodeCommand, cfg: &Config) -> Outcome {
    match cmd {
        CodeCommand::Build { dist, output } => {
            let p = ExactDistribution::parse(&read_text(dist)?).map_err(input_error(dist))?;
            let code = build_generic_code(&p.generic_space());
            let stats = code.average_length(&p).map_err(input_error(dist))?;
            let table = code.to_table();
            if cfg.json {
                if let Some(path) = output {
                    write_file(path, table.as_bytes())?;
                }
                let report = json!({
                    "mode": code.mode().to_string(),
                    "avg": stats.average_length.to_string(),
                    "entropy_gap": stats.entropy_gap,
                    "kraft_sum": code.kraft_sum().to_string(),
                    "codewords": code.codewords().iter().map(ToString::to_string).collect::<Vec<_>>(),
                });
                return Ok(format!("{report:#}\n"));
            }
            let mut out = match output {
                Some(path) => {
                    write_file(path, table.as_bytes())?;
                    String::new()
                }
                None => table,
            };
            let _ = writeln!(out, "avg = {} ({} mode)", stats.average_length, code.mode());
            Ok(out)
        }
        CodeCommand::Encode {
            table,
            symbols,
            output,
        } => {
            let code = load_table(table)?;
            let symbols_in = parse_symbols(&read_text(symbols)?).map_err(input_error(symbols))?;
            let bits = code.encode(&symbols_in).map_err(input_error(symbols))?;
            write_file(output, &write_stream(&bits))?;
            Ok(if cfg.json {
                format!("{:#}\n", json!({ "symbols": symbols_in.len(), "bits": bits.len() }))
            } else {
                format!("{} symbols -> {} bits\n", symbols_in.len(), bits.len())
            })
        }
        CodeCommand::Decode {
            table,
            stream,
            output,
        } => {
            let code = load_table(table)?;
            let codec = |e: Error| Failure {
                code: EXIT_CODEC,
                message: format!("{}: {e}", stream.display()),
            };
            let bits = read_stream(&read_bytes(stream)?).map_err(codec)?;
            let symbols = code.decode(&bits).map_err(codec)?;
            let text = format!("{}\n", joined(&symbols));
            match output {
                Some(path) => {
                    write_file(path, text.as_bytes())?;
                    Ok(if cfg.json {
                        format!("{:#}\n", json!({ "symbols": symbols.len(), "bits": bits.len() }))
                    } else {
                        format!("{} bits -> {} symbols\n", bits.len(), symbols.len())
                    })
                }
                None if cfg.json => Ok(format!("{:#}\n", json!({ "symbols": symbols }))),
                None => Ok(text),
            }
        }
    }
}

fn run_table1(cfg: &Config) -> Outcome {
    let rows: Vec<(ExactDistribution, BigUint, f64)> = TABLE1
        .iter()
        .map(|&(n, d)| {
            let p = ExactDistribution::from_pairs(&[(n, d), (d - n, d)])
                .expect("table distributions are valid");
            let gs = p.generic_space();
            let eff = geoentropy::effective_dimension(&p);
            (p, gs.dimension().clone(), eff)
        })
        .collect();
    if cfg.json {
        let rows: Vec<Value> = rows
            .iter()
            .map(|(p, d, eff)| {
                json!({ "distribution": p.to_string(), "D": big_json(d), "eff_dim": eff })
            })
            .collect();
        return Ok(format!("{:#}\n", Value::Array(rows)));
    }
    let mut out = format!("{:<16} {:>8} {:>10}\n", "distribution", "D", "eff_dim");
    for (p, d, eff) in &rows {
        let _ = writeln!(out, "{:<16} {:>8} {:>10.4}", p.to_string(), d, eff);
    }
    Ok(out)
}

fn run_check(path: &Path, cfg: &Config) -> Outcome {
    let joint = JointDistribution::parse(&read_text(path)?).map_err(input_error(path))?;
    let r = joint
        .check_inequalities(cfg.base)
        .map_err(input_error(path))?;
    let verdicts = [
        ("conditioning_reduces_entropy", r.conditioning_reduces_entropy()),
        ("mutual_information_nonnegative", r.mutual_information_nonnegative()),
        ("mutual_information_symmetric", r.mutual_information_symmetric()),
        ("independence_implies_zero", r.independence_implies_zero()),
    ];
    let out = if cfg.json {
        let verdict_map: serde_json::Map<String, Value> = verdicts
            .iter()
            .map(|&(name, ok)| (name.to_string(), Value::Bool(ok)))
            .collect();
        let report = json!({
            "H_X": r.h_x,
            "H_Y": r.h_y,
            "H_XY": r.h_xy,
            "H_X_given_Y": r.h_x_given_y,
            "H_Y_given_X": r.h_y_given_x,
            "I_XY": r.i_xy,
            "I_YX": r.i_yx,
            "independent": r.independent,
            "verdicts": verdict_map,
            "base": cfg.base,
        });
        format!("{report:#}\n")
    } else {
        let mut out = String::new();
        let _ = writeln!(out, "H(X)     {:.12}", r.h_x);
        let _ = writeln!(out, "H(Y)     {:.12}", r.h_y);
        let _ = writeln!(out, "H(X,Y)   {:.12}", r.h_xy);
        let _ = writeln!(out, "H(X|Y)   {:.12}", r.h_x_given_y);
        let _ = writeln!(out, "H(Y|X)   {:.12}", r.h_y_given_x);
        let _ = writeln!(out, "I(X;Y)   {:.12}", r.i_xy);
        let _ = writeln!(out, "I(Y;X)   {:.12}", r.i_yx);
        let _ = writeln!(out, "independent  {}", r.independent);
        for (name, ok) in verdicts {
            let _ = writeln!(out, "{}  {name}", if ok { "PASS" } else { "FAIL" });
        }
        out
    };
    if r.all_hold() {
        Ok(out)
    } else {
        // the report still goes to stdout so the violated numbers are visible
        print!("{out}");
        Err(Failure {
            code: EXIT_VIOLATION,
            message: "information inequality violated".into(),
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cfg = &cli.config;
    let outcome = match &cli.command {
        Command::Analyze {
            file,
            renyi,
            tsallis,
        } => run_analyze(file, *renyi, *tsallis, cfg),
        Command::Code(cmd) => run_code(cmd, cfg),
        Command::Table1 => run_table1(cfg),
        Command::Check { file } => run_check(file, cfg),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
