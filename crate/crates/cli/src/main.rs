//! Command-line surface for the lipscomb crate. Words, points, and
//! alphabets travel as small JSON files; attractor approximations
//! stream as CSV on stdout with per-iteration telemetry on stderr.
//!
//! Exit codes: 0 on success, 1 on domain errors (machine-readable
//! error JSON on stderr), 2 on usage errors.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::de::DeserializeOwned;
use serde::Deserialize;
use serde_json::json;

use lipscomb::{
    check_sequence, classify, decode, dist_p, embed, equivalent, hausdorff, Alphabet,
    AlphabetData, Exponent, IfsFamily, InfiniteWord, Letter, PointData, PointSet, Real,
    SparsePoint, WordData,
};

const DEFAULT_MAX_POINTS: u64 = 1_000_000;
const DEFAULT_MAX_DEPTH: u64 = 64;
const DEFAULT_M_MAX: u64 = 64;

#[derive(Parser)]
#[command(
    name = "lipscomb",
    version,
    about = "Exact arithmetic for a word-coded self-similar fractal: embed and decode words, measure distances, stream attractor point clouds, run convergence diagnostics",
    long_about = "Exact arithmetic for a word-coded self-similar fractal: embed and decode \
                  words, measure distances, stream attractor point clouds, run convergence \
                  diagnostics.\n\nAlphabets are finite letter lists supplied as JSON \
                  {\"letters\": [..], \"z\": \"z\"}. To explore an infinite alphabet, work \
                  with any finite subfamily: every quantity computed over a sub-alphabet \
                  equals the restriction of its full-space counterpart, so results compose \
                  as the subfamily grows."
)]
struct Cli {
    /// Alphabet JSON file; a built-in four-letter alphabet {z,a,b,c} is
    /// used when omitted.
    #[arg(long, global = true)]
    alphabet: Option<PathBuf>,

    /// Output shape for point-valued results (attract is always CSV).
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Cap on the number of points an iteration may produce
    /// [env: LIPSCOMB_MAX_POINTS] [default: 1000000]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_points: Option<u64>,

    /// Cap on decode peeling depth [env: LIPSCOMB_MAX_DEPTH] [default: 64]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    max_depth: Option<u64>,

    /// Cap on the convergence window depth [env: LIPSCOMB_M_MAX] [default: 64]
    #[arg(long, global = true, value_parser = clap::value_parser!(u64).range(1..))]
    m_max: Option<u64>,

    /// RNG seed for the random seed points of `attract`.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Embed a word into sparse coordinates (prints point JSON).
    Embed {
        /// Word JSON file {"prefix": [..], "tail": [..]}.
        #[arg(long)]
        word: PathBuf,
    },
    /// Recover the word class of an on-attractor point (prints JSON).
    Decode {
        /// Point JSON file {"coords": {"a": "num/den", ..}}.
        #[arg(long)]
        point: PathBuf,
    },
    /// lp distance between two points (pass --point twice).
    Dist {
        #[arg(long = "point", required = true)]
        point: Vec<PathBuf>,
        /// Exponent p >= 1; integral p is computed exactly.
        #[arg(long, default_value = "2")]
        p: String,
    },
    /// Whether two words denote the same point (pass --word twice).
    Equiv {
        #[arg(long = "word", required = true)]
        word: Vec<PathBuf>,
    },
    /// Iterate the map family and stream the depth-n point set as CSV.
    Attract {
        /// Comma-separated letters to iterate, e.g. z,a,b.
        #[arg(long, value_delimiter = ',', required = true)]
        letters: Vec<String>,
        /// Number of iterations.
        #[arg(long)]
        depth: u32,
        /// Exponent for the telemetry distances only; the point set
        /// itself does not depend on p.
        #[arg(long, default_value = "2")]
        p: String,
        /// Seed the iteration with this many random embedded words
        /// instead of the origin.
        #[arg(long, default_value_t = 0)]
        seed_points: usize,
    },
    /// Convergence diagnostics from a JSON job file (prints report JSON).
    Converge {
        /// Job file {"limit": word, "sequence": [word, ..], "p": "2", "m_max": 16}.
        #[arg(long)]
        input: PathBuf,
    },
    /// Exact canonical projection of a word onto the attractor.
    Project {
        #[arg(long)]
        word: PathBuf,
    },
    /// Structural class of a limit word (prints JSON).
    Classify {
        #[arg(long)]
        word: PathBuf,
    },
}

enum Failure {
    Domain { code: String, message: String },
    Usage(String),
}

impl From<lipscomb::Error> for Failure {
    fn from(e: lipscomb::Error) -> Self {
        Failure::Domain {
            code: e.code().to_string(),
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain { code, message }) => {
            eprintln!("{}", json!({"error": {"code": code, "message": message}}));
            ExitCode::from(1)
        }
        Err(Failure::Usage(message)) => {
            eprintln!("error: {}", message);
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let alphabet = load_alphabet(cli.alphabet.as_deref())?;
    match &cli.command {
        Command::Embed { word } => {
            let word = load_word(&alphabet, word)?;
            print_point(embed(&word), cli.format);
        }
        Command::Decode { point } => {
            let x = load_point(&alphabet, point)?;
            let depth = resolve_cap(cli.max_depth, "LIPSCOMB_MAX_DEPTH", DEFAULT_MAX_DEPTH)?;
            let class = decode(&x, depth as usize)?;
            let members: Vec<WordData> = class.members().iter().map(|w| w.to_data()).collect();
            println!("{}", json!({ "members": members }));
        }
        Command::Dist { point, p } => {
            let [first, second] = exactly_two(point, "--point")?;
            let x = load_point(&alphabet, first)?;
            let y = load_point(&alphabet, second)?;
            let p = parse_exponent(p)?;
            let d = dist_p(&x, &y, p)?;
            println!("{}", serde_json::to_string(&d.to_data()).expect("serializable"));
        }
        Command::Equiv { word } => {
            let [first, second] = exactly_two(word, "--word")?;
            let a = load_word(&alphabet, first)?;
            let b = load_word(&alphabet, second)?;
            println!("{}", equivalent(&a, &b)?);
        }
        Command::Attract {
            letters,
            depth,
            p,
            seed_points,
        } => {
            attract(&cli, &alphabet, letters, *depth, p, *seed_points)?;
        }
        Command::Converge { input } => {
            converge(&cli, &alphabet, input)?;
        }
        Command::Project { word } => {
            let word = load_word(&alphabet, word)?;
            let family = IfsFamily::new(&alphabet);
            print_point(family.project(&word)?, cli.format);
        }
        Command::Classify { word } => {
            let word = load_word(&alphabet, word)?;
            println!(
                "{}",
                serde_json::to_string(&classify(&word)).expect("serializable")
            );
        }
    }
    Ok(())
}

fn attract(
    cli: &Cli,
    alphabet: &Arc<Alphabet>,
    letters: &[String],
    depth: u32,
    p: &str,
    seed_points: usize,
) -> Result<(), Failure> {
    let mut chosen = Vec::with_capacity(letters.len());
    for s in letters {
        chosen.push(alphabet.letter(s.trim())?);
    }
    let p = parse_exponent(p)?;
    let max_points = resolve_cap(cli.max_points, "LIPSCOMB_MAX_POINTS", DEFAULT_MAX_POINTS)?;
    let family = IfsFamily::with_max_points(alphabet, max_points as usize);
    let seed = seed_set(alphabet, &chosen, seed_points, cli.seed)?;
    let mut current = seed;
    for n in 1..=depth {
        let next = family.hutchinson_step(&chosen, &current)?;
        let h = hausdorff(&current, &next, p)?;
        eprintln!("n={} points={} h_step={}", n, next.len(), render_real(&h));
        current = next;
    }
    print!("{}", current.to_csv());
    Ok(())
}

/// Origin seed by default; with `--seed-points k`, k embedded random
/// words over the chosen letters (deterministic in `--seed`).
fn seed_set(
    alphabet: &Arc<Alphabet>,
    chosen: &[Letter],
    seed_points: usize,
    seed: u64,
) -> Result<PointSet, Failure> {
    if seed_points == 0 {
        return Ok(PointSet::singleton(SparsePoint::origin(alphabet)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points = Vec::with_capacity(seed_points);
    for _ in 0..seed_points {
        let letters: Vec<Letter> = (0..10)
            .map(|_| chosen[rng.gen_range(0..chosen.len())])
            .collect();
        let word = InfiniteWord::new(alphabet, letters, vec![alphabet.z()])?;
        points.push(embed(&word));
    }
    Ok(PointSet::new(alphabet, points)?)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ConvergeInput {
    limit: WordData,
    sequence: Vec<WordData>,
    p: String,
    m_max: u32,
}

fn converge(cli: &Cli, alphabet: &Arc<Alphabet>, input: &Path) -> Result<(), Failure> {
    let job: ConvergeInput = parse_json(&read_file(input)?, "converge job")?;
    let m_cap = resolve_cap(cli.m_max, "LIPSCOMB_M_MAX", DEFAULT_M_MAX)?;
    if u64::from(job.m_max) > m_cap {
        return Err(lipscomb::Error::CapExceeded {
            what: "m_max",
            limit: m_cap as usize,
            requested: job.m_max as usize,
        }
        .into());
    }
    let limit = InfiniteWord::from_data(alphabet, &job.limit)?;
    let mut seq = Vec::with_capacity(job.sequence.len());
    for data in &job.sequence {
        seq.push(InfiniteWord::from_data(alphabet, data)?);
    }
    let p = parse_exponent(&job.p)?;
    let report = check_sequence(&seq, &limit, p, job.m_max)?;
    println!("{}", serde_json::to_string(&report).expect("serializable"));
    Ok(())
}

fn print_point(x: SparsePoint, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string(&x.to_data()).expect("serializable")
        ),
        Format::Csv => print!("{}", PointSet::singleton(x).to_csv()),
    }
}

/// Exact fraction when the value stayed rational, decimal otherwise.
fn render_real(r: &Real) -> String {
    match r.exact() {
        Some(q) => q.to_fraction_string(),
        None => format!("{}", r.to_f64()),
    }
}

fn exactly_two<'a>(paths: &'a [PathBuf], flag: &str) -> Result<[&'a PathBuf; 2], Failure> {
    match paths {
        [a, b] => Ok([a, b]),
        _ => Err(Failure::Usage(format!(
            "{flag} must be given exactly twice, got {}",
            paths.len()
        ))),
    }
}

fn parse_exponent(s: &str) -> Result<Exponent, Failure> {
    Ok(Exponent::from_str(s)?)
}

fn load_alphabet(path: Option<&Path>) -> Result<Arc<Alphabet>, Failure> {
    let data: AlphabetData = match path {
        Some(p) => parse_json(&read_file(p)?, "alphabet file")?,
        None => AlphabetData {
            letters: ["z", "a", "b", "c"].map(String::from).to_vec(),
            z: "z".to_string(),
        },
    };
    Ok(Arc::new(Alphabet::from_data(&data)?))
}

fn load_word(alphabet: &Arc<Alphabet>, path: &Path) -> Result<InfiniteWord, Failure> {
    let data: WordData = parse_json(&read_file(path)?, "word file")?;
    Ok(InfiniteWord::from_data(alphabet, &data)?)
}

fn load_point(alphabet: &Arc<Alphabet>, path: &Path) -> Result<SparsePoint, Failure> {
    let data: PointData = parse_json(&read_file(path)?, "point file")?;
    Ok(SparsePoint::from_data(alphabet, &data)?)
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Domain {
        code: "io".to_string(),
        message: format!("cannot read {}: {}", path.display(), e),
    })
}

fn parse_json<T: DeserializeOwned>(text: &str, what: &str) -> Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Domain {
        code: "malformed_json".to_string(),
        message: format!("{}: {}", what, e),
    })
}

fn resolve_cap(flag: Option<u64>, env_key: &'static str, default: u64) -> Result<u64, Failure> {
    if let Some(v) = flag {
        return Ok(v);
    }
    match std::env::var(env_key) {
        Ok(raw) => {
            let v: u64 = raw.trim().parse().map_err(|_| Failure::Domain {
                code: "invalid_cap".to_string(),
                message: format!("{} must be a positive integer, got {:?}", env_key, raw),
            })?;
            if v == 0 {
                return Err(Failure::Domain {
                    code: "invalid_cap".to_string(),
                    message: format!("{} must be positive", env_key),
                });
            }
            Ok(v)
        }
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(Failure::Domain {
            code: "invalid_cap".to_string(),
            message: format!("{}: {}", env_key, e),
        }),
    }
}
