//! `val`: command-line front end for the `valtree` library.
//!
//! Exit codes: 0 success, 2 malformed input, 3 domain error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use valtree::blowup::{descent, divisorial_value, first_char_exponent};
use valtree::correspondence::{blowups_to_chain, chain_to_blowups};
use valtree::io::{chain_from_json, chain_from_json_unchecked, chain_to_json, seq_from_json, seq_to_json};
use valtree::keypoly::epsilon_data;
use valtree::tree::{compare, infimum, segment_point, tree_dot};
use valtree::{parse_poly, BaseField, BivarPoly, MacLaneChain, Value};

#[derive(Parser)]
#[command(name = "val", version, about = "Exact valuations on k[x,y] centered at the origin")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Value of a polynomial under a chain.
    Eval {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// The epsilon, I and b data of a polynomial.
    Epsilon {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Check every chain invariant; exit 3 on a violation.
    Validate { chain: PathBuf },
    /// Order of two chains in the valuative tree.
    Compare { first: PathBuf, second: PathBuf },
    /// Greatest common lower bound of two chains.
    Inf {
        first: PathBuf,
        second: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Point at parameter t on the segment from the root to a chain.
    Segment {
        #[arg(long)]
        chain: PathBuf,
        #[arg(long)]
        t: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Blowup sequence of a chain; prints exact=true|false.
    ToBlowups {
        chain: PathBuf,
        #[arg(long, default_value_t = 32)]
        max_steps: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Chain of the divisorial valuation of a blowup sequence.
    FromBlowups {
        seq: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// First characteristic exponent of a polynomial.
    CharExp {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// Divisorial value of a polynomial.
    BlowEval {
        #[arg(long)]
        seq: PathBuf,
        #[arg(long)]
        poly: String,
    },
    /// Multiplicity and characteristic exponent along the followed centers.
    Descent {
        #[arg(long)]
        poly: String,
        #[arg(long, default_value_t = 6)]
        steps: usize,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// DOT graph of chains closed under infimum.
    TreeDot {
        #[arg(long, value_delimiter = ',', required = true)]
        chains: Vec<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    Input(String),
    Domain(String),
}

impl From<valtree::Error> for Failure {
    fn from(e: valtree::Error) -> Self {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write_or_print(output: Option<&Path>, text: &str) -> Outcome {
    match output {
        Some(path) => {
            fs::write(path, format!("{text}\n")).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
        }
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn load_chain(path: &Path) -> Result<MacLaneChain, Failure> {
    chain_from_json(&read(path)?).map_err(|e| match e {
        e if e.is_input_error() => Failure::Input(format!("{}: {e}", path.display())),
        e => Failure::Domain(format!("{}: {e}", path.display())),
    })
}

fn poly(text: &str, field: BaseField) -> Result<BivarPoly, Failure> {
    Ok(parse_poly(text, field)?)
}

fn field(text: &str) -> Result<BaseField, Failure> {
    Ok(text.parse()?)
}

fn run(command: Command) -> Outcome {
    match command {
        Command::Eval { chain, poly: p } => {
            let c = load_chain(&chain)?;
            println!("{}", c.evaluate(&poly(&p, c.field())?));
        }
        Command::Epsilon { chain, poly: p } => {
            let c = load_chain(&chain)?;
            println!("{}", epsilon_data(&c, &poly(&p, c.field())?)?);
        }
        Command::Validate { chain } => {
            let c = chain_from_json_unchecked(&read(&chain)?)?;
            let violations = c.validate();
            if violations.is_empty() {
                println!("ok");
            } else {
                for v in &violations {
                    println!("{v}");
                }
                return Err(Failure::Domain(format!("{} violation(s)", violations.len())));
            }
        }
        Command::Compare { first, second } => {
            let r = compare(&load_chain(&first)?, &load_chain(&second)?)?;
            println!("{}", r.relation);
        }
        Command::Inf { first, second, output } => {
            let m = infimum(&load_chain(&first)?, &load_chain(&second)?)?;
            write_or_print(output.as_deref(), &chain_to_json(&m))?;
        }
        Command::Segment { chain, t, output } => {
            let c = load_chain(&chain)?;
            let t: Value = t.parse()?;
            write_or_print(output.as_deref(), &chain_to_json(&segment_point(&c, &t)?))?;
        }
        Command::ToBlowups { chain, max_steps, output } => {
            let (seq, exact) = chain_to_blowups(&load_chain(&chain)?, max_steps)?;
            println!("exact={exact}");
            write_or_print(output.as_deref(), &seq_to_json(&seq))?;
        }
        Command::FromBlowups { seq, output } => {
            let s = seq_from_json(&read(&seq)?)?;
            write_or_print(output.as_deref(), &chain_to_json(&blowups_to_chain(&s)?))?;
        }
        Command::CharExp { poly: p, field: f } => {
            println!("{}", first_char_exponent(&poly(&p, field(&f)?)?)?);
        }
        Command::BlowEval { seq, poly: p } => {
            let s = seq_from_json(&read(&seq)?)?;
            println!("{}", divisorial_value(&s, &poly(&p, s.field)?)?);
        }
        Command::Descent { poly: p, steps, field: f } => {
            let d = descent(&poly(&p, field(&f)?)?, steps)?;
            println!("i mu e");
            for (i, row) in d.rows.iter().enumerate() {
                println!("{i} {} {}", row.mu, row.e);
            }
            println!("centers {}", d.seq);
        }
        Command::TreeDot { chains, output } => {
            let cs = chains.iter().map(|p| load_chain(p)).collect::<Result<Vec<_>, _>>()?;
            write_or_print(output.as_deref(), tree_dot(&cs)?.trim_end())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
