//! Command-line frontend for the bridgecap library.
//!
//! Exit codes: 0 success, 1 runtime failure (a violated certificate,
//! I/O trouble), 2 malformed input.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

use bridgecap::{
    aux_trace, depth_oracle, distribution, enumerate, even_cf, initial_aux, invariants,
    make_certificate, positive_cf, shortest_cf, verify_many, write_csv, Error, Fraction,
    InvariantRecord, KnotClass, Sign,
};

#[derive(Parser)]
#[command(
    name = "bridgecap",
    version,
    about = "Exact invariants and epimorphism-order certificates for 2-bridge knots"
)]
struct Cli {
    /// Emit JSON instead of plain text
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Crosscap number, genus, crossing number, and depth of the knot P/Q
    Crosscap { fraction: String },
    /// The all-even continued fraction of P/Q (canonicalizing if needed)
    Evencf { fraction: String },
    /// A shortest continued fraction of P/Q, as given
    Shortestcf { fraction: String },
    /// The all-positive continued fraction of P/Q (canonicalizing if needed)
    Positivecf { fraction: String },
    /// Depth of P/Q, with the auxiliary-data trace on request
    Depth {
        fraction: String,
        /// Also print the per-entry auxiliary data of the even expansion
        #[arg(long)]
        trace: bool,
    },
    /// Canonical class representative of P/Q
    Canonical { fraction: String },
    /// Enumerate all classes up to a crossing-number bound
    Census {
        #[arg(long)]
        max_cr: u32,
        /// csv: one row per class; json: the distribution table
        #[arg(long, value_enum, default_value_t = CensusFormat::Csv)]
        format: CensusFormat,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build and check one epimorphism-order certificate
    Order {
        /// Tile entries, comma-separated (an all-even expansion)
        #[arg(long)]
        tile: String,
        /// Tile signs, e.g. "+,-,+"
        #[arg(long)]
        signs: String,
        /// Connector integers c (vector entries are 2c), e.g. "0,0"
        #[arg(long, default_value = "")]
        connectors: String,
    },
    /// Run the randomized certificate harness
    Verify {
        #[arg(long, default_value_t = 10_000)]
        iters: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Read one fraction per line, write one invariant record per line
    Batch {
        /// Input file; `-` streams from stdin
        #[arg(long = "in", value_name = "FILE")]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CensusFormat {
    Csv,
    Json,
}

enum Failure {
    /// exit 2: malformed fraction or arguments
    Input(String),
    /// exit 1: runtime failure (violated certificate, I/O)
    Runtime(String),
}

impl Failure {
    fn report(self) -> ExitCode {
        match self {
            Failure::Input(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(2)
            }
            Failure::Runtime(msg) => {
                eprintln!("error: {msg}");
                ExitCode::from(1)
            }
        }
    }
}

fn input_err(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn parse_fraction(s: &str) -> Result<Fraction, Failure> {
    Fraction::from_str(s).map_err(input_err)
}

fn class_of(f: &Fraction) -> Result<KnotClass, Failure> {
    KnotClass::from_fraction(f).map_err(input_err)
}

/// The fraction itself when it already has an all-even expansion, otherwise
/// the canonical representative of its class.
fn evencf_subject(f: &Fraction) -> Result<Fraction, Failure> {
    let literal = !f.is_infinity()
        && f.numer() > &BigInt::from(0)
        && f.numer() < f.denom()
        && f.numer().is_even()
        && f.denom().is_odd();
    if literal {
        return Ok(f.clone());
    }
    let class = class_of(f)?;
    if class.is_unknot() {
        return Err(Failure::Input(format!(
            "{f} is the unknot; it has no all-even expansion"
        )));
    }
    Ok(class.canonical().clone())
}

fn print_kv(pairs: &[(&str, String)]) {
    for (k, v) in pairs {
        println!("{k}={v}");
    }
}

fn entries_to_string(entries: &[BigInt]) -> String {
    let inner: Vec<String> = entries.iter().map(|a| a.to_string()).collect();
    format!("[{}]", inner.join(", "))
}

fn entries_json(entries: &[BigInt]) -> Value {
    Value::Array(
        entries
            .iter()
            .map(|a| match a.to_i64() {
                Some(v) => json!(v),
                None => json!(a.to_string()),
            })
            .collect(),
    )
}

fn record_json(input: Option<&str>, rec: &InvariantRecord) -> Value {
    let mut obj = Map::new();
    if let Some(input) = input {
        obj.insert("input".into(), json!(input));
    }
    let rest = serde_json::to_value(rec).expect("record serializes");
    for (k, v) in rest.as_object().unwrap() {
        obj.insert(k.clone(), v.clone());
    }
    Value::Object(obj)
}

fn record_plain(rec: &InvariantRecord) -> Vec<(&'static str, String)> {
    vec![
        ("canonical", rec.class.to_string()),
        ("crosscap", rec.crosscap.to_string()),
        ("genus", rec.genus.to_string()),
        ("crossing_number", rec.crossing_number.to_string()),
        ("depth", rec.depth.to_string()),
    ]
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Crosscap { fraction } => {
            let f = parse_fraction(&fraction)?;
            let rec = invariants(&class_of(&f)?);
            if cli.json {
                println!("{}", record_json(Some(&fraction), &rec));
            } else {
                print_kv(&record_plain(&rec));
            }
        }
        Command::Evencf { fraction } => {
            let f = parse_fraction(&fraction)?;
            let subject = evencf_subject(&f)?;
            let cf = even_cf(&subject).map_err(input_err)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"fraction": subject.to_string(), "entries": entries_json(cf.entries())})
                );
            } else {
                print_kv(&[
                    ("fraction", subject.to_string()),
                    ("evencf", entries_to_string(cf.entries())),
                ]);
            }
        }
        Command::Shortestcf { fraction } => {
            let f = parse_fraction(&fraction)?;
            let cf = shortest_cf(&f).map_err(input_err)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "fraction": f.to_string(),
                        "offset": cf.offset().to_i64().map(Value::from)
                            .unwrap_or_else(|| Value::from(cf.offset().to_string())),
                        "entries": entries_json(cf.entries()),
                        "length": cf.len(),
                    })
                );
            } else {
                print_kv(&[
                    ("fraction", f.to_string()),
                    ("offset", cf.offset().to_string()),
                    ("entries", entries_to_string(cf.entries())),
                    ("length", cf.len().to_string()),
                ]);
            }
        }
        Command::Positivecf { fraction } => {
            let f = parse_fraction(&fraction)?;
            let subject =
                if !f.is_infinity() && f.numer() > &BigInt::from(0) && f.numer() < f.denom() {
                    f.clone()
                } else {
                    let class = class_of(&f)?;
                    if class.is_unknot() {
                        return Err(Failure::Input(format!(
                            "{f} is the unknot; it has no all-positive expansion"
                        )));
                    }
                    class.canonical().clone()
                };
            let cf = positive_cf(&subject).map_err(input_err)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"fraction": subject.to_string(), "entries": entries_json(cf.entries())})
                );
            } else {
                print_kv(&[
                    ("fraction", subject.to_string()),
                    ("positivecf", entries_to_string(cf.entries())),
                ]);
            }
        }
        Command::Depth { fraction, trace } => {
            let f = parse_fraction(&fraction)?;
            // The trace lives on the fraction as given; only all-even
            // expansions carry auxiliary data.
            let has_even_cf = even_cf(&f).is_ok();
            if trace && !has_even_cf {
                return Err(Failure::Input(format!(
                    "{f} has no all-even expansion; --trace needs one (try the canonical form)"
                )));
            }
            if has_even_cf {
                let cf = even_cf(&f).map_err(input_err)?;
                let t = aux_trace(cf.entries(), initial_aux(&cf.entries()[0]).unwrap())
                    .expect("even expansion entries are even and nonzero");
                let d = t.depth();
                if cli.json {
                    let mut obj = Map::new();
                    obj.insert("fraction".into(), json!(f.to_string()));
                    obj.insert("depth".into(), json!(d));
                    if trace {
                        let compact: Vec<String> =
                            t.data().iter().map(|a| a.compact().to_string()).collect();
                        obj.insert("trace".into(), json!(compact));
                    }
                    println!("{}", Value::Object(obj));
                } else {
                    let mut pairs = vec![("fraction", f.to_string()), ("depth", d.to_string())];
                    if trace {
                        pairs.push(("trace", t.to_string()));
                    }
                    print_kv(&pairs);
                }
            } else {
                let d = depth_oracle(&f);
                if cli.json {
                    println!("{}", json!({"fraction": f.to_string(), "depth": d}));
                } else {
                    print_kv(&[("fraction", f.to_string()), ("depth", d.to_string())]);
                }
            }
        }
        Command::Canonical { fraction } => {
            let f = parse_fraction(&fraction)?;
            let class = class_of(&f)?;
            if cli.json {
                println!(
                    "{}",
                    json!({"input": fraction, "canonical": class.to_string()})
                );
            } else {
                print_kv(&[("canonical", class.to_string())]);
            }
        }
        Command::Census {
            max_cr,
            format,
            out,
        } => {
            let rows = enumerate(max_cr).map_err(input_err)?;
            let payload = match format {
                CensusFormat::Csv => {
                    let mut buf = Vec::new();
                    write_csv(&rows, &mut buf).map_err(|e| Failure::Runtime(e.to_string()))?;
                    buf
                }
                CensusFormat::Json => {
                    let mut s = distribution(&rows).to_json().to_string();
                    s.push('\n');
                    s.into_bytes()
                }
            };
            match out {
                Some(path) => fs::write(&path, payload)
                    .map_err(|e| Failure::Runtime(format!("{}: {e}", path.display())))?,
                None => std::io::stdout()
                    .write_all(&payload)
                    .map_err(|e| Failure::Runtime(e.to_string()))?,
            }
        }
        Command::Order {
            tile,
            signs,
            connectors,
        } => {
            let tile = parse_int_list(&tile).map_err(input_err)?;
            let signs: Vec<Sign> = split_list(&signs)
                .map(Sign::from_str)
                .collect::<Result<_, _>>()
                .map_err(input_err)?;
            let connectors = parse_int_list(&connectors).map_err(input_err)?;
            match make_certificate(&tile, &signs, &connectors) {
                Ok(cert) => println!("{}", cert.to_json()),
                Err(e @ Error::CertificateViolation { .. }) => {
                    return Err(Failure::Runtime(e.to_string()));
                }
                Err(e) => return Err(input_err(e)),
            }
        }
        Command::Verify { iters, seed } => match verify_many(iters, seed) {
            Ok(summary) => {
                if cli.json {
                    println!("{}", serde_json::to_string(&summary).unwrap());
                } else {
                    print_kv(&[
                        ("iterations", summary.iterations.to_string()),
                        ("case_i", summary.case_i.to_string()),
                        ("case_iia", summary.case_iia.to_string()),
                        ("case_iib", summary.case_iib.to_string()),
                        ("sharp", summary.sharp.to_string()),
                    ]);
                }
            }
            Err(e) => return Err(Failure::Runtime(e.to_string())),
        },
        Command::Batch { input } => {
            let text = if input.as_os_str() == "-" {
                let mut buf = String::new();
                std::io::Read::read_to_string(&mut std::io::stdin().lock(), &mut buf)
                    .map_err(|e| Failure::Runtime(format!("stdin: {e}")))?;
                buf
            } else {
                fs::read_to_string(&input)
                    .map_err(|e| Failure::Runtime(format!("{}: {e}", input.display())))?
            };
            let mut stdout = std::io::stdout().lock();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                let f = Fraction::from_str(line)
                    .map_err(|e| Failure::Input(format!("line {}: {e}", lineno + 1)))?;
                let rec = invariants(
                    &KnotClass::from_fraction(&f)
                        .map_err(|e| Failure::Input(format!("line {}: {e}", lineno + 1)))?,
                );
                if cli.json {
                    writeln!(stdout, "{}", record_json(Some(line), &rec))
                        .map_err(|e| Failure::Runtime(e.to_string()))?;
                } else {
                    let fields: Vec<String> = record_plain(&rec)
                        .iter()
                        .map(|(k, v)| format!("{k}={v}"))
                        .collect();
                    writeln!(stdout, "{} {}", line, fields.join(" "))
                        .map_err(|e| Failure::Runtime(e.to_string()))?;
                }
            }
        }
    }
    Ok(())
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(',').map(str::trim).filter(|t| !t.is_empty())
}

fn parse_int_list(s: &str) -> Result<Vec<BigInt>, Error> {
    split_list(s)
        .map(|t| BigInt::from_str(t).map_err(|_| Error::ParseFraction(t.to_string())))
        .collect()
}

fn configure_threads() {
    if let Ok(v) = std::env::var("BRIDGECAP_THREADS") {
        if let Ok(n) = v.parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(n)
                    .build_global();
            }
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => failure.report(),
    }
}
