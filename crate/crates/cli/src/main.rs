//! Thin command-line adapter over `singular-core`: every subcommand parses
//! flags and JSON, calls one library operation, and serializes the result.
//! Data goes to stdout, diagnostics to stderr. Exit codes: 0 success,
//! 1 verification failure, 2 invalid input.

use std::io::Read;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde_json::json;

use singular_core::{
    andrews_forward, andrews_inverse, count_restricted, count_restricted_by_m, count_singular,
    count_singular_by_m, decompose_blocks, dotted_configurations, dyson, dyson_frobenius,
    dyson_inverse, gamma_trace, psi_forward, psi_inverse, shift, shifted_conjugate,
    product_series, verify_identities, wright_forward, wright_inverse, DottedSymbol,
    FrobeniusSymbol, ModulusPair, Partition, RestrictedOverpartition, WrightInput,
};

#[derive(Parser)]
#[command(
    name = "singular-lab",
    about = "Exact combinatorics of singular overpartitions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Args)]
struct ModulusArgs {
    /// Modulus k (k >= 3)
    #[arg(long)]
    k: i64,
    /// Residue i (1 <= i <= k-1)
    #[arg(long)]
    i: i64,
}

impl ModulusArgs {
    fn parse(&self) -> Result<ModulusPair, CliError> {
        ModulusPair::new(self.k, self.i).map_err(CliError::from)
    }
}

#[derive(Args)]
struct InputArgs {
    /// Read the JSON payload from this file ('-' for stdin)
    #[arg(long, conflicts_with = "json")]
    input: Option<String>,
    /// Inline JSON payload
    #[arg(long)]
    json: Option<String>,
}

impl InputArgs {
    fn read(&self) -> Result<String, CliError> {
        match (&self.input, &self.json) {
            (Some(path), None) if path == "-" => {
                let mut buffer = String::new();
                std::io::stdin()
                    .read_to_string(&mut buffer)
                    .map_err(|e| CliError(format!("cannot read stdin: {e}")))?;
                Ok(buffer)
            }
            (Some(path), None) => std::fs::read_to_string(path)
                .map_err(|e| CliError(format!("cannot read {path}: {e}"))),
            (None, Some(inline)) => Ok(inline.clone()),
            _ => Err(CliError(
                "exactly one of --input or --json is required".into(),
            )),
        }
    }

    fn parse<T: for<'de> Deserialize<'de>>(&self) -> Result<T, CliError> {
        serde_json::from_str(&self.read()?).map_err(|e| CliError(format!("malformed JSON: {e}")))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Convert between partitions and Frobenius symbols
    Convert {
        #[command(subcommand)]
        direction: ConvertDirection,
    },
    /// Show the (k,i)-parity block decomposition of a Frobenius symbol
    Blocks {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Also list every dotted configuration
        #[arg(long)]
        configs: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Apply one of the bijective maps
    Map {
        #[command(subcommand)]
        operation: MapOperation,
    },
    /// Run the staged bijection and print every intermediate
    Trace {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Count singular overpartitions (or restricted overpartitions)
    Count {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Weight to count
        #[arg(long)]
        n: i64,
        /// Restrict to one value of the statistic m
        #[arg(long, conflicts_with = "by_m")]
        m: Option<i64>,
        /// Report every m separately
        #[arg(long)]
        by_m: bool,
        /// Count restricted overpartitions instead of singular ones
        #[arg(long)]
        restricted: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Exact coefficients of the product generating function
    Series {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Largest exponent to compute
        #[arg(long)]
        limit: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Verify the counting identities and bijection roundtrips
    Verify {
        #[command(flatten)]
        modulus: ModulusArgs,
        /// Largest weight to check
        #[arg(long)]
        max_n: i64,
        /// Worker threads (default: SINGULAR_LAB_THREADS or the rayon default)
        #[arg(long)]
        threads: Option<usize>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum ConvertDirection {
    /// Partition -> Frobenius symbol
    ToFrobenius {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Frobenius symbol -> partition
    FromFrobenius {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Partition -> conjugate partition
    Conjugate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

#[derive(Subcommand)]
enum MapOperation {
    /// Dotted symbol -> partition
    Psi {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Cross-check against the signed dot count of the input
        #[arg(long)]
        m: Option<i64>,
    },
    /// Partition -> dotted symbol with the given signed dot count
    PsiInverse {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
        /// Signed dot count (nonzero)
        #[arg(long)]
        m: i64,
    },
    /// Dyson's map on a partition
    Dyson {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: i64,
    },
    /// Inverse of Dyson's map on a partition
    DysonInverse {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: i64,
    },
    /// Dyson's map in Frobenius casework form
    DysonFrobenius {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        r: i64,
    },
    /// Shift map s_u on a Frobenius symbol
    Shift {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        u: i64,
    },
    /// Shifted conjugate c_u on a Frobenius symbol
    ShiftedConjugate {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        u: i64,
    },
    /// Wright map: {"mu1":[...],"mu2":[...]} -> {"kappa":[...],"m":N}
    Wright {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Inverse Wright map: partition of multiples of k, with --m
    WrightInverse {
        #[command(flatten)]
        modulus: ModulusArgs,
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        m: i64,
    },
    /// Dotted symbol -> restricted overpartition
    Andrews {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Restricted overpartition -> dotted symbol
    AndrewsInverse {
        #[command(flatten)]
        input: InputArgs,
    },
}

struct CliError(String);

impl From<singular_core::Error> for CliError {
    fn from(e: singular_core::Error) -> Self {
        CliError(e.to_string())
    }
}

fn emit(value: serde_json::Value) {
    println!("{value}");
}

fn check_modulus_matches(flags: ModulusPair, payload: ModulusPair) -> Result<(), CliError> {
    if flags != payload {
        return Err(CliError(format!(
            "modulus flags {flags} do not match the payload modulus {payload}"
        )));
    }
    Ok(())
}

#[derive(Deserialize)]
struct WrightPairRepr {
    mu1: Vec<i64>,
    mu2: Vec<i64>,
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    match cli.command {
        Command::Convert { direction } => match direction {
            ConvertDirection::ToFrobenius { input, format } => {
                let p: Partition = input.parse()?;
                let f = p.to_frobenius();
                match format {
                    Format::Json => emit(serde_json::to_value(&f).unwrap()),
                    Format::Table => println!("{f}"),
                }
            }
            ConvertDirection::FromFrobenius { input, format } => {
                let f: FrobeniusSymbol = input.parse()?;
                let p = f.to_partition();
                match format {
                    Format::Json => emit(serde_json::to_value(&p).unwrap()),
                    Format::Table => println!("{p}"),
                }
            }
            ConvertDirection::Conjugate { input, format } => {
                let p: Partition = input.parse()?;
                let c = p.conjugate();
                match format {
                    Format::Json => emit(serde_json::to_value(&c).unwrap()),
                    Format::Table => println!("{c}"),
                }
            }
        },
        Command::Blocks {
            modulus,
            input,
            configs,
            format,
        } => {
            let modulus = modulus.parse()?;
            let symbol: FrobeniusSymbol = input.parse()?;
            let decomposition = decompose_blocks(modulus, &symbol);
            match format {
                Format::Json => {
                    let mut value = json!({
                        "k": modulus.k(),
                        "i": modulus.i(),
                        "blocks": decomposition.blocks,
                    });
                    if configs {
                        value["configurations"] =
                            serde_json::to_value(dotted_configurations(modulus, &symbol)).unwrap();
                    }
                    emit(value);
                }
                Format::Table => {
                    for block in &decomposition.blocks {
                        println!(
                            "{:?} columns {}..{}{}",
                            block.kind,
                            block.start,
                            block.end,
                            block
                                .anchor
                                .map_or(String::new(), |a| format!(" anchor {a}"))
                        );
                    }
                    if configs {
                        for d in dotted_configurations(modulus, &symbol) {
                            println!("{}  m = {}", d.sequence_string(), d.signed_dot_count());
                        }
                    }
                }
            }
        }
        Command::Map { operation } => run_map(operation)?,
        Command::Trace {
            modulus,
            input,
            format,
        } => {
            let modulus = modulus.parse()?;
            let dotted: DottedSymbol = input.parse()?;
            check_modulus_matches(modulus, dotted.modulus())?;
            let trace = gamma_trace(&dotted)?;
            match format {
                Format::Json => emit(serde_json::to_value(&trace).unwrap()),
                Format::Table => {
                    println!(
                        "pipeline under (k,i) = {} with m = {}",
                        trace.modulus(),
                        trace.m()
                    );
                    for (idx, block) in trace.blocks().iter().enumerate() {
                        println!("D_{} = {}", idx + 1, block);
                    }
                    for (idx, gamma) in trace.gammas().iter().enumerate() {
                        println!("Gamma_{} = {}", idx + 1, gamma);
                    }
                    println!("result = {}", trace.result());
                }
            }
        }
        Command::Count {
            modulus,
            n,
            m,
            by_m,
            restricted,
            format,
        } => {
            let modulus = modulus.parse()?;
            if by_m {
                let counts = if restricted {
                    count_restricted_by_m(modulus, n)?
                } else {
                    count_singular_by_m(modulus, n)
                };
                match format {
                    Format::Json => {
                        let mut object = serde_json::Map::new();
                        for (m, count) in &counts {
                            object.insert(
                                m.to_string(),
                                serde_json::from_str(&count.to_string()).unwrap(),
                            );
                        }
                        emit(serde_json::Value::Object(object));
                    }
                    Format::Table => {
                        let mut total = num_bigint::BigUint::from(0u32);
                        for (m, count) in &counts {
                            println!("{m:>4} {count}");
                            total += count;
                        }
                        println!("total {total}");
                    }
                }
            } else {
                let count = if restricted {
                    count_restricted(modulus, n, m)?
                } else {
                    count_singular(modulus, n, m)
                };
                match format {
                    Format::Json => emit(serde_json::from_str(&count.to_string()).unwrap()),
                    Format::Table => println!("{count}"),
                }
            }
        }
        Command::Series {
            modulus,
            limit,
            format,
        } => {
            let modulus = modulus.parse()?;
            let series = product_series(modulus, limit);
            match format {
                Format::Json => {
                    let mut value = series.to_json();
                    value["k"] = json!(modulus.k());
                    value["i"] = json!(modulus.i());
                    emit(value);
                }
                Format::Table => {
                    for (n, coefficient) in series.coefficients().iter().enumerate() {
                        println!("{n:>4} {coefficient}");
                    }
                }
            }
        }
        Command::Verify {
            modulus,
            max_n,
            threads,
            format,
        } => {
            let modulus = modulus.parse()?;
            let threads = threads.or_else(|| {
                std::env::var("SINGULAR_LAB_THREADS")
                    .ok()
                    .and_then(|value| value.parse().ok())
            });
            let report = verify_identities(modulus, max_n, threads);
            match format {
                Format::Json => emit(report.to_json()),
                Format::Table => print!("{report}"),
            }
            if !report.all_ok() {
                eprintln!("verification failed");
                return Ok(ExitCode::from(1));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_map(operation: MapOperation) -> Result<(), CliError> {
    match operation {
        MapOperation::Psi { modulus, input, m } => {
            let modulus = modulus.parse()?;
            let dotted: DottedSymbol = input.parse()?;
            check_modulus_matches(modulus, dotted.modulus())?;
            if let Some(expected) = m {
                if dotted.signed_dot_count() != expected {
                    return Err(CliError(format!(
                        "--m {expected} does not match the signed dot count {}",
                        dotted.signed_dot_count()
                    )));
                }
            }
            emit(serde_json::to_value(psi_forward(&dotted)?).unwrap());
        }
        MapOperation::PsiInverse { modulus, input, m } => {
            let modulus = modulus.parse()?;
            let p: Partition = input.parse()?;
            emit(serde_json::to_value(psi_inverse(modulus, m, &p)?).unwrap());
        }
        MapOperation::Dyson { input, r } => {
            let p: Partition = input.parse()?;
            emit(serde_json::to_value(dyson(r, &p)?).unwrap());
        }
        MapOperation::DysonInverse { input, r } => {
            let p: Partition = input.parse()?;
            emit(serde_json::to_value(dyson_inverse(r, &p)?).unwrap());
        }
        MapOperation::DysonFrobenius { input, r } => {
            let f: FrobeniusSymbol = input.parse()?;
            emit(serde_json::to_value(dyson_frobenius(r, &f)?).unwrap());
        }
        MapOperation::Shift { input, u } => {
            let f: FrobeniusSymbol = input.parse()?;
            emit(serde_json::to_value(shift(u, &f)?).unwrap());
        }
        MapOperation::ShiftedConjugate { input, u } => {
            let f: FrobeniusSymbol = input.parse()?;
            emit(serde_json::to_value(shifted_conjugate(u, &f)?).unwrap());
        }
        MapOperation::Wright { modulus, input } => {
            let modulus = modulus.parse()?;
            let pair: WrightPairRepr = input.parse()?;
            let input = WrightInput::new(
                modulus,
                Partition::new(pair.mu1)?,
                Partition::new(pair.mu2)?,
            )?;
            emit(serde_json::to_value(wright_forward(&input)).unwrap());
        }
        MapOperation::WrightInverse { modulus, input, m } => {
            let modulus = modulus.parse()?;
            let kappa: Partition = input.parse()?;
            let pair = wright_inverse(modulus, &kappa, m)?;
            emit(json!({ "mu1": pair.mu1(), "mu2": pair.mu2() }));
        }
        MapOperation::Andrews { input } => {
            let dotted: DottedSymbol = input.parse()?;
            emit(serde_json::to_value(andrews_forward(&dotted)?).unwrap());
        }
        MapOperation::AndrewsInverse { input } => {
            let r: RestrictedOverpartition = input.parse()?;
            emit(serde_json::to_value(andrews_inverse(&r)?).unwrap());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}
