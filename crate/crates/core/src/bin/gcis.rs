use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use byteorder::{ByteOrder, LittleEndian};
use clap::{Args, Parser, Subcommand, ValueEnum};
use gcis::{bench, corpus, AnyStore, BuildOptions, Encoding, Error, Grammar};

#[derive(Parser)]
#[command(name = "gcis", version, about = "Grammar-compressed self-index")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a file into an index and print its statistics.
    Build {
        input: PathBuf,
        output: PathBuf,
        #[arg(long, value_enum, default_value_t = EncodingArg::Nep)]
        encoding: EncodingArg,
        /// Keep building heights while the text still shrinks.
        #[arg(long)]
        no_abort_heuristic: bool,
        #[arg(long)]
        max_height: Option<u16>,
    },
    /// Print the 1-based positions of every pattern occurrence.
    Locate {
        index: PathBuf,
        #[command(flatten)]
        patterns: PatternArgs,
        #[arg(long)]
        count_only: bool,
        /// Prefix each line with occ, occ_C, occ_C' and the query time in microseconds.
        #[arg(long)]
        report_metrics: bool,
    },
    /// Print the number of occurrences of every pattern.
    Count {
        index: PathBuf,
        #[command(flatten)]
        patterns: PatternArgs,
    },
    /// Write a substring of the indexed text to standard output.
    Extract {
        index: PathBuf,
        #[arg(long)]
        pos: u64,
        #[arg(long)]
        len: u64,
    },
    /// Print |Γ|, g, start rule length, height and text length.
    Stats { index: PathBuf },
    /// Generate a synthetic text.
    Gen {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, required_unless_present = "length")]
        order: Option<u32>,
        #[arg(long)]
        length: Option<usize>,
        #[arg(long, default_value_t = 4)]
        sigma: u16,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        output: PathBuf,
    },
    /// Time locate on patterns sampled from the indexed text.
    Bench {
        index: PathBuf,
        #[arg(long, value_delimiter = ',', default_values_t = [10, 100, 1000])]
        pattern_lengths: Vec<usize>,
        #[arg(long, default_value_t = 100)]
        queries: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct PatternArgs {
    #[arg(
        long,
        conflicts_with = "patterns",
        required_unless_present = "patterns"
    )]
    pattern: Option<String>,
    /// Newline-separated patterns (or length-prefixed records with --binary).
    #[arg(long)]
    patterns: Option<PathBuf>,
    /// Read --patterns as records of a little-endian u32 length and the bytes.
    #[arg(long, requires = "patterns")]
    binary: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum EncodingArg {
    Nep,
    Uni,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Fib,
    ThueMorse,
    RunRich,
    Random,
}

/// A failed command: exit code and message.
struct Failure(u8, String);

impl Failure {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        Failure(1, format!("{}: {e}", path.display()))
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure(1, e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        // a closed pipe downstream is not an error
        Err(Failure(1, msg)) if msg.contains("Broken pipe") => ExitCode::SUCCESS,
        Err(Failure(code, msg)) => {
            eprintln!("gcis: {msg}");
            ExitCode::from(code)
        }
    }
}

fn load(path: &Path) -> Result<Grammar<AnyStore>, Failure> {
    let bytes = fs::read(path).map_err(|e| Failure::io(path, e))?;
    Grammar::from_bytes(&bytes).map_err(|e| Failure::io(path, e))
}

fn read_patterns(args: &PatternArgs) -> Result<Vec<Vec<u8>>, Failure> {
    let malformed = |msg: &str| Failure(3, format!("malformed pattern input: {msg}"));
    let patterns = match (&args.pattern, &args.patterns) {
        (Some(p), _) => vec![p.as_bytes().to_vec()],
        (None, Some(path)) => {
            let data = fs::read(path).map_err(|e| Failure::io(path, e))?;
            if args.binary {
                parse_records(&data).ok_or_else(|| malformed("truncated record"))?
            } else {
                let mut lines: Vec<Vec<u8>> =
                    data.split(|&c| c == b'\n').map(<[u8]>::to_vec).collect();
                if data.ends_with(b"\n") || data.is_empty() {
                    lines.pop();
                }
                lines
            }
        }
        (None, None) => unreachable!("clap requires one pattern source"),
    };
    if patterns.iter().any(Vec::is_empty) {
        return Err(malformed("empty pattern"));
    }
    Ok(patterns)
}

fn parse_records(mut data: &[u8]) -> Option<Vec<Vec<u8>>> {
    let mut out = Vec::new();
    while !data.is_empty() {
        if data.len() < 4 {
            return None;
        }
        let len = LittleEndian::read_u32(data) as usize;
        data = &data[4..];
        if data.len() < len {
            return None;
        }
        out.push(data[..len].to_vec());
        data = &data[len..];
    }
    Some(out)
}

fn run(command: Command) -> Result<(), Failure> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    match command {
        Command::Build {
            input,
            output,
            encoding,
            no_abort_heuristic,
            max_height,
        } => {
            let text = fs::read(&input).map_err(|e| Failure::io(&input, e))?;
            let opts = BuildOptions {
                abort_heuristic: !no_abort_heuristic,
                max_height,
            };
            let encoding = match encoding {
                EncodingArg::Nep => Encoding::Nep,
                EncodingArg::Uni => Encoding::Uni,
            };
            let g =
                gcis::build_index(&text, &opts, encoding).map_err(|e| Failure(2, e.to_string()))?;
            let bytes = g.to_bytes().map_err(|e| Failure(2, e.to_string()))?;
            fs::write(&output, bytes).map_err(|e| Failure::io(&output, e))?;
            writeln!(out, "{}", g.stats())?;
        }
        Command::Locate {
            index,
            patterns,
            count_only,
            report_metrics,
        } => {
            let patterns = read_patterns(&patterns)?;
            let g = load(&index)?;
            for p in &patterns {
                let r = g.locate(p).map_err(|e| Failure(3, e.to_string()))?;
                if report_metrics {
                    write!(
                        out,
                        "{}\t{}\t{}\t{}\t",
                        r.occ,
                        r.occ_core,
                        r.visited_nodes,
                        r.total_time.as_micros()
                    )?;
                }
                if count_only {
                    writeln!(out, "{}", r.occ)?;
                } else {
                    let line: Vec<String> = r.positions.iter().map(u64::to_string).collect();
                    writeln!(out, "{}", line.join(" "))?;
                }
            }
        }
        Command::Count { index, patterns } => {
            let patterns = read_patterns(&patterns)?;
            let g = load(&index)?;
            for p in &patterns {
                let n = g.count(p).map_err(|e| Failure(3, e.to_string()))?;
                writeln!(out, "{n}")?;
            }
        }
        Command::Extract { index, pos, len } => {
            let g = load(&index)?;
            let bytes = g.extract(g.start(), pos, len).map_err(|e| match e {
                Error::OutOfRange { .. } => Failure(4, e.to_string()),
                e => Failure(1, e.to_string()),
            })?;
            out.write_all(&bytes)?;
        }
        Command::Stats { index } => {
            let g = load(&index)?;
            writeln!(out, "{}", g.stats())?;
        }
        Command::Gen {
            family,
            order,
            length,
            sigma,
            seed,
            output,
        } => {
            let invalid = |e: Error| Failure(2, e.to_string());
            let order_arg = || order.ok_or_else(|| Failure(2, "this family needs --order".into()));
            let text = match family {
                Family::Fib => corpus::fibonacci(order_arg()?).map_err(invalid)?,
                Family::ThueMorse => corpus::thue_morse(order_arg()?).map_err(invalid)?,
                Family::RunRich => corpus::run_rich(order_arg()?).map_err(invalid)?,
                Family::Random => {
                    let n = length.ok_or_else(|| Failure(2, "random needs --length".into()))?;
                    corpus::random(n, sigma, seed).map_err(invalid)?
                }
            };
            fs::write(&output, text).map_err(|e| Failure::io(&output, e))?;
        }
        Command::Bench {
            index,
            pattern_lengths,
            queries,
            seed,
        } => {
            let g = load(&index)?;
            let rows = bench::run(&g, &pattern_lengths, queries, seed)
                .map_err(|e| Failure(1, e.to_string()))?;
            writeln!(out, "{}", bench::BenchRow::HEADER)?;
            for row in rows {
                writeln!(out, "{row}")?;
            }
        }
    }
    out.flush()?;
    Ok(())
}
