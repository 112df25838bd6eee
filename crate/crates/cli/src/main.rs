//! `knotdex`: invariants, generators, move verification and bounds from the
//! command line. Results go to stdout as one JSON object per diagram,
//! diagnostics to stderr.
//!
//! Exit codes: 1 parse error, 2 validation failure, 3 illegal step,
//! 4 `--expect` mismatch.

mod report;

use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use clap::{Parser, Subcommand, ValueEnum};
use knotdex::codec::{gen_arnold_base, gen_d, gen_l, gen_random, gen_torus2, parse, serialize, GenError, ParseError};
use knotdex::indices::{winding_number, writhe};
use knotdex::invariants::{cowrithe, hn, jminus, jplus, sci, sci_st_check, st};
use knotdex::moves::{
    format_moves, lower_bounds, parse_moves, regular_l_sequence, table_check, unknot_l_sequence, verify_lines,
};
use knotdex::Diagram;
use serde_json::{json, Map, Value};

const DEFAULT_SEED: u64 = 7;

#[derive(Parser)]
#[command(name = "knotdex", version, about = "Knot-diagram invariants and Reidemeister moves")]
struct Cli {
    /// Worker threads for commands that take several files.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute invariants of KDX diagrams (stdin when no file is given).
    Invariants {
        files: Vec<PathBuf>,
        /// Restrict the output to these invariants.
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Invariant>,
    },
    /// Print a diagram from one of the built-in families as KDX.
    Generate {
        #[arg(value_enum)]
        family: Family,
        /// Family parameters: p, i, n, or `n seed` for random.
        params: Vec<u64>,
    },
    /// Replay a move file against a diagram.
    Verify {
        diagram: PathBuf,
        moves: PathBuf,
        /// Reject plain first moves.
        #[arg(long)]
        framed: bool,
        /// Required final diagram: `circle` or a KDX file.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Print the built-in unknotting sequence for L_n as a move file.
    Sequence {
        n: usize,
        /// The short sequence using plain first moves instead of the framed one.
        #[arg(long)]
        regular: bool,
    },
    /// Lower bounds on unknotting sequences.
    Bound { files: Vec<PathBuf> },
    /// Randomized check of the move-change table.
    #[command(name = "table_check", alias = "table-check")]
    TableCheck {
        #[arg(long, default_value_t = 500)]
        samples: usize,
        /// Defaults to KNOTDEX_SEED, then 7.
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    Sci,
    St,
    Jplus,
    Jminus,
    Hn,
    Cowrithe,
    Writhe,
    Winding,
    SciSt,
}

impl Invariant {
    const ALL: [Invariant; 9] = [
        Invariant::Sci,
        Invariant::St,
        Invariant::Jplus,
        Invariant::Jminus,
        Invariant::Hn,
        Invariant::Cowrithe,
        Invariant::Writhe,
        Invariant::Winding,
        Invariant::SciSt,
    ];

    fn key(self) -> &'static str {
        match self {
            Invariant::Sci => "sci",
            Invariant::St => "st",
            Invariant::Jplus => "jplus",
            Invariant::Jminus => "jminus",
            Invariant::Hn => "hn",
            Invariant::Cowrithe => "cowrithe",
            Invariant::Writhe => "writhe",
            Invariant::Winding => "winding",
            Invariant::SciSt => "sci_st",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Torus2,
    Arnold,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "L", alias = "l")]
    L,
    Random,
}

/// A failed command: exit code and message for stderr.
struct Failure(u8, String);

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        let code = match e {
            ParseError::Syntax { .. } | ParseError::InconsistentLabels(_) => 1,
            ParseError::NotRealizable(_) | ParseError::MissingOuterFace(_) => 2,
        };
        Failure(code, e.to_string())
    }
}

fn read_source(path: Option<&PathBuf>) -> Result<String, Failure> {
    let mut text = String::new();
    match path {
        Some(p) => {
            text = std::fs::read_to_string(p).map_err(|e| Failure(1, format!("{}: {e}", p.display())))?;
        }
        None => {
            io::stdin().read_to_string(&mut text).map_err(|e| Failure(1, format!("stdin: {e}")))?;
        }
    }
    Ok(text)
}

fn load(path: Option<&PathBuf>) -> Result<Diagram, Failure> {
    let name = path.map_or("<stdin>".to_string(), |p| p.display().to_string());
    parse(&read_source(path)?).map_err(|e| {
        let Failure(code, msg) = Failure::from(e);
        Failure(code, format!("{name}: {msg}"))
    })
}

fn invariants_of(d: &Diagram, only: &[Invariant]) -> Result<Map<String, Value>, Failure> {
    let mut m = Map::new();
    m.insert("crossings".into(), json!(d.crossing_count()));
    m.insert("components".into(), json!(d.component_count()));
    let fail = |e: &dyn std::fmt::Display| Failure(2, e.to_string());
    let wanted = if only.is_empty() { &Invariant::ALL[..] } else { only };
    for &inv in wanted {
        let v = match inv {
            Invariant::Sci => json!(sci(d).map_err(|e| fail(&e))?),
            Invariant::St => json!(st(d).map_err(|e| fail(&e))?),
            Invariant::Jplus => json!(jplus(d).map_err(|e| fail(&e))?),
            Invariant::Jminus => json!(jminus(d).map_err(|e| fail(&e))?),
            Invariant::Hn => report::group(&hn(d).map_err(|e| fail(&e))?),
            Invariant::Cowrithe => json!(cowrithe(d).map_err(|e| fail(&e))?),
            Invariant::Writhe => json!(writhe(d)),
            Invariant::Winding => json!(winding_number(d).map_err(|e| fail(&e))?),
            Invariant::SciSt => {
                let r = sci_st_check(d).map_err(|e| fail(&e))?;
                json!({
                    "ascending": r.lowest_point.is_some(),
                    "lowest_point": r.lowest_point,
                    "delta": r.delta.map(report::rational),
                    "predicted": r.predicted.map(report::rational),
                    "holds": r.holds,
                })
            }
        };
        m.insert(inv.key().into(), v);
    }
    Ok(m)
}

/// Runs `f` over `items` on up to `jobs` threads; results keep input order.
fn par_map<T: Sync, R: Send>(items: &[T], jobs: usize, f: impl Fn(&T) -> R + Sync) -> Vec<R> {
    let next = AtomicUsize::new(0);
    let slots: Vec<Mutex<Option<R>>> = items.iter().map(|_| Mutex::new(None)).collect();
    std::thread::scope(|s| {
        for _ in 0..jobs.clamp(1, items.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                if i >= items.len() {
                    break;
                }
                *slots[i].lock().unwrap() = Some(f(&items[i]));
            });
        }
    });
    slots.into_iter().map(|m| m.into_inner().unwrap().expect("every slot filled")).collect()
}

/// Per-file command: one line per input, in input order; the exit code is
/// the first failure's.
fn per_file(
    files: &[PathBuf],
    jobs: usize,
    f: impl Fn(&Diagram) -> Result<Map<String, Value>, Failure> + Sync,
) -> u8 {
    let sources: Vec<Option<PathBuf>> =
        if files.is_empty() { vec![None] } else { files.iter().cloned().map(Some).collect() };
    let results = par_map(&sources, jobs, |p| {
        let mut m = f(&load(p.as_ref())?)?;
        m.insert("source".into(), json!(p.as_ref().map_or("-".to_string(), |p| p.display().to_string())));
        Ok::<_, Failure>(Value::Object(m))
    });
    let mut code = 0;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    for r in results {
        match r {
            Ok(v) => {
                let _ = writeln!(out, "{v}");
            }
            Err(Failure(c, msg)) => {
                eprintln!("error: {msg}");
                if code == 0 {
                    code = c;
                }
            }
        }
    }
    code
}

fn generate(family: Family, params: &[u64]) -> Result<Diagram, Failure> {
    let bad = |e: GenError| Failure(2, e.to_string());
    let one = || match params {
        [x] => Ok(*x as usize),
        _ => Err(Failure(1, format!("expected one parameter, got {}", params.len()))),
    };
    match family {
        Family::Torus2 => gen_torus2(one()?).map_err(bad),
        Family::Arnold => gen_arnold_base(one()?).map_err(bad),
        Family::D => gen_d(one()?).map_err(bad),
        Family::L => gen_l(one()?).map_err(bad),
        Family::Random => match params {
            [n] => gen_random(*n as usize, DEFAULT_SEED).map_err(bad),
            [n, seed] => gen_random(*n as usize, *seed).map_err(bad),
            _ => Err(Failure(1, "random takes `n [seed]`".into())),
        },
    }
}

fn verify(diagram: &PathBuf, moves: &PathBuf, framed: bool, expect: Option<&str>) -> Result<u8, Failure> {
    let d = load(Some(diagram))?;
    let text = read_source(Some(moves))?;
    let lines = parse_moves(&text).map_err(|e| Failure(1, format!("{}: {e}", moves.display())))?;
    let expected = match expect {
        None => None,
        Some("circle") => Some(Diagram::circle()),
        Some(path) => Some(load(Some(&PathBuf::from(path)))?),
    };
    let rep = verify_lines(&d, &lines, framed);
    let mut m = report::verification(&rep, framed, |i| lines[i].line);
    let matches = expected.as_ref().map(|e| {
        if e.is_trivial_circle() {
            rep.final_diagram.is_trivial_circle()
        } else {
            e.canonical_form() == rep.final_diagram.canonical_form()
        }
    });
    m.insert("expect_matched".into(), json!(matches));
    println!("{}", Value::Object(m));
    if let Some(f) = &rep.failure {
        eprintln!("illegal step {} (line {}): {}", f.step, lines[f.step].line, f.reason);
        return Ok(3);
    }
    if !rep.consistent {
        eprintln!("per-step changes do not add up to the total change");
        return Ok(3);
    }
    if matches == Some(false) {
        eprintln!("final diagram differs from --expect");
        return Ok(4);
    }
    Ok(0)
}

fn seed_from_env() -> Result<u64, Failure> {
    match std::env::var("KNOTDEX_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure(1, format!("KNOTDEX_SEED is not an integer: `{s}`"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Invariants { files, only } => {
            Ok(per_file(&files, cli.jobs, |d| invariants_of(d, &only)))
        }
        Command::Bound { files } => Ok(per_file(&files, cli.jobs, |d| {
            let b = lower_bounds(d).map_err(|e| Failure(2, e.to_string()))?;
            let mut m = Map::new();
            m.insert("sci_bound".into(), json!(b.sci_bound));
            m.insert("g_bound".into(), json!(b.g_bound));
            m.insert("crossings".into(), json!(d.crossing_count()));
            Ok(m)
        })),
        Command::Generate { family, params } => {
            print!("{}", serialize(&generate(family, &params)?));
            Ok(0)
        }
        Command::Sequence { n, regular } => {
            let seq = if regular { regular_l_sequence(n) } else { unknot_l_sequence(n) };
            print!("{}", format_moves(&seq.map_err(|e| Failure(2, e.to_string()))?));
            Ok(0)
        }
        Command::Verify { diagram, moves, framed, expect } => verify(&diagram, &moves, framed, expect.as_deref()),
        Command::TableCheck { samples, seed } => {
            let seed = match seed {
                Some(s) => s,
                None => seed_from_env()?,
            };
            let r = table_check(samples, seed);
            println!("{}", report::table(&r, samples, seed));
            if r.passed() {
                Ok(0)
            } else {
                eprint!("{r}");
                Ok(2)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
