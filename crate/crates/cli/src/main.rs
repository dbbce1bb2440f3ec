use std::fs;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use serde::Serialize;
use tilecrystal::crossings::CrossingCrystal;
use tilecrystal::lusztig::{CrystalOp, LusztigDatum, OpOutcome, Oracle};
use tilecrystal::potentials;
use tilecrystal::strings;
use tilecrystal::tiling::{render_svg, Decorations, Tiling};
use tilecrystal::verify::{self, Options, Suite};
use tilecrystal::words::{self, ReducedWord};
use tilecrystal::{bz, Error};

const COORDS: &str = "Flat vectors (Lusztig data, string data, points) list one entry per \
positive root in the convex order of the anchor word: beta_k = w_{k-1}(alpha_{i_k}).";

#[derive(Parser)]
#[command(name = "tilecrystal", version, about = "Rhombic tilings and type A crystal combinatorics", after_help = COORDS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List every reduced word of the longest permutation.
    Words {
        #[arg(long)]
        n: usize,
    },
    /// Tiling of a word as JSON.
    Tiling {
        #[arg(long)]
        word: ReducedWord,
    },
    /// The poset of a-crossings (or dual crossings) as JSON.
    Crossings {
        #[arg(long)]
        word: ReducedWord,
        #[arg(long)]
        a: u8,
        #[arg(long)]
        dual: bool,
    },
    /// Apply f, e, eps or a starred operator to a Lusztig datum.
    #[command(after_help = COORDS)]
    Crystal {
        #[arg(long)]
        word: ReducedWord,
        #[arg(long)]
        op: CrystalOp,
        #[arg(long)]
        a: u8,
        #[arg(long, value_parser = parse_vector)]
        datum: Vector,
        /// Compute by transport to a word where [a,a+1] is extremal.
        #[arg(long)]
        oracle: bool,
    },
    /// String datum of a Lusztig datum, or the string cone of a word.
    #[command(group(ArgGroup::new("what").required(true).args(["datum", "cone"])), after_help = COORDS)]
    String {
        #[arg(long)]
        word: ReducedWord,
        #[arg(long, value_parser = parse_vector)]
        datum: Option<Vector>,
        #[arg(long)]
        cone: bool,
        /// Print the cone as inequalities instead of JSON.
        #[arg(long, requires = "cone")]
        text: bool,
    },
    /// BZ data: reconstruct from a Lusztig datum, apply f_a, or validate.
    #[command(group(ArgGroup::new("action").required(true).args(["from_lusztig", "apply_f", "validate"])))]
    Bz {
        /// Reconstruct from --word and --datum.
        #[arg(long)]
        from_lusztig: bool,
        /// Apply f_a (needs --a) to the BZ datum in --input.
        #[arg(long)]
        apply_f: bool,
        /// Check the BZ datum in --input.
        #[arg(long)]
        validate: bool,
        #[arg(long)]
        word: Option<ReducedWord>,
        #[arg(long, value_parser = parse_vector)]
        datum: Option<Vector>,
        #[arg(long)]
        a: Option<u8>,
        /// BZ JSON file, `-` for stdin.
        #[arg(long)]
        input: Option<String>,
    },
    /// Compare string cone points with string data reached by f*.
    Cone {
        #[arg(long, required = true)]
        polar_check: bool,
        #[arg(long)]
        word: ReducedWord,
        #[arg(long = "box", default_value_t = 4)]
        box_edge: i64,
        #[arg(long, default_value_t = 8)]
        depth: usize,
    },
    /// Laurent polynomials: r_a, its word-coordinate version, GHKK and BK restrictions.
    #[command(group(ArgGroup::new("kind").required(true).args(["ghkk", "bk", "r", "r_word", "quiver"])))]
    Potential {
        #[arg(long)]
        word: ReducedWord,
        #[arg(long)]
        a: Option<u8>,
        #[arg(long)]
        ghkk: bool,
        #[arg(long)]
        bk: bool,
        /// Dual Reineke polynomial in tile coordinates.
        #[arg(long)]
        r: bool,
        /// Sum of the coordinates carrying letter a.
        #[arg(long)]
        r_word: bool,
        #[arg(long)]
        quiver: bool,
    },
    /// Draw the tiling as SVG.
    Render {
        #[arg(long)]
        word: ReducedWord,
        #[arg(long)]
        svg_out: String,
        /// Tiles to fill, e.g. `1,2;1,3`; repeat for more colours.
        #[arg(long)]
        highlight: Vec<String>,
        /// Tile path to draw, e.g. `2,3;1,3;1,2`.
        #[arg(long)]
        crossing: Vec<String>,
        #[arg(long)]
        edge_labels: bool,
        #[arg(long)]
        vertex_labels: bool,
    },
    /// Run verification suites; prints one JSON report per line.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        sample_words: usize,
        #[arg(long, default_value_t = 1000)]
        sample_points: usize,
    },
}

type Vector = Vec<i64>;

fn parse_vector(text: &str) -> Result<Vector, String> {
    text.trim()
        .trim_start_matches(['(', '['])
        .trim_end_matches([')', ']'])
        .split(',')
        .filter(|p| !p.trim().is_empty())
        .map(|p| p.trim().parse::<i64>().map_err(|_| format!("bad entry {p:?}")))
        .collect()
}

enum Failure {
    Usage(String),
    Broken(String),
    Counterexample,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Invariant(_) => Failure::Broken(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn json(value: &impl Serialize) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn need<T>(value: Option<T>, flag: &str) -> Result<T, Failure> {
    value.ok_or_else(|| Failure::Usage(format!("--{flag} is required here")))
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        Ok(fs::read_to_string(path)?)
    }
}

fn parse_pairs(text: &str, n: usize) -> Result<Vec<(u8, u8)>, Failure> {
    text.split(';')
        .filter(|p| !p.trim().is_empty())
        .map(|p| words::parse_pair(p, n).map_err(Failure::from))
        .collect()
}

fn run(cli: Cli, out: &mut String) -> Result<(), Failure> {
    use std::fmt::Write as _;
    match cli.command {
        Command::Words { n } => {
            for w in words::enumerate_reduced_words(n)? {
                let _ = writeln!(out, "{}", join(&w.letters().iter().map(|&l| l as i64).collect::<Vec<_>>()));
            }
        }
        Command::Tiling { word } => {
            let _ = writeln!(out, "{}", json(&Tiling::new(&word).to_json())?);
        }
        Command::Crossings { word, a, dual } => {
            let crystal = CrossingCrystal::new(&word)?;
            if a == 0 || a as usize >= word.n() {
                return Err(Failure::Usage(format!("letter {a} outside [1,{}]", word.n() - 1)));
            }
            let _ = writeln!(out, "{}", json(&crystal.poset(a, dual).to_json(&word))?);
        }
        Command::Crystal { word, op, a, datum, oracle } => {
            let x = LusztigDatum::from_word_coords(&word, &datum)?;
            let outcome = if oracle {
                Oracle::new().apply(op, a, &x)?
            } else {
                CrossingCrystal::new(&word)?.apply(op, a, &x)?
            };
            match outcome {
                OpOutcome::Datum(y) => {
                    let _ = writeln!(out, "{}", join(&y.word_coords()));
                }
                OpOutcome::Undefined => {
                    let _ = writeln!(out, "undefined");
                }
                OpOutcome::Value(v) => {
                    let _ = writeln!(out, "{v}");
                }
            }
        }
        Command::String { word, datum, cone, text } => {
            let crystal = CrossingCrystal::new(&word)?;
            if cone {
                let c = strings::string_cone(&crystal);
                if text {
                    out.push_str(&c.inequalities());
                } else {
                    let _ = writeln!(out, "{}", json(&c)?);
                }
            } else {
                let x = LusztigDatum::from_word_coords(&word, &need(datum, "datum")?)?;
                let _ = writeln!(out, "{}", join(&strings::string_datum(&crystal, &x)?));
            }
        }
        Command::Bz { from_lusztig, apply_f, validate: _, word, datum, a, input } => {
            if from_lusztig {
                let word = need(word, "word")?;
                let x = LusztigDatum::from_word_coords(&word, &need(datum, "datum")?)?;
                let _ = writeln!(out, "{}", json(&bz::bz_from_lusztig(&x)?.to_json())?);
                return Ok(());
            }
            let text = read_input(&need(input, "input")?)?;
            let z = bz::BzDatum::from_json(&serde_json::from_str(&text)?)?;
            if apply_f {
                let fz = bz::bz_crystal_f(need(a, "a")?, &z)?;
                let _ = writeln!(out, "{}", json(&fz.to_json())?);
            } else {
                let report = bz::validate_bz(&z);
                let _ = writeln!(out, "{}", serde_json::to_string(&report)?);
                if !report.ok() {
                    return Err(Failure::Counterexample);
                }
            }
        }
        Command::Cone { polar_check: _, word, box_edge, depth } => {
            let crystal = CrossingCrystal::new(&word)?;
            let report = strings::polar_duality_check(&crystal, box_edge, depth)?;
            let _ = writeln!(out, "{}", serde_json::to_string(&report)?);
            if !report.ok() {
                return Err(Failure::Counterexample);
            }
        }
        Command::Potential { word, a, ghkk, bk, r: _, r_word, quiver } => {
            let crystal = CrossingCrystal::new(&word)?;
            if quiver {
                let _ = writeln!(out, "{}", json(&potentials::quiver(crystal.tiling()).to_json())?);
                return Ok(());
            }
            let a = need(a, "a")?;
            let poly = if ghkk {
                potentials::ghkk_restriction(&crystal, a)?
            } else if bk {
                potentials::bk_restriction(&crystal, a)?
            } else {
                potentials::reineke_poly(&crystal, a, !r_word)?
            };
            let _ = writeln!(out, "{}", json(&poly.to_json())?);
            let _ = writeln!(out, "{poly}");
        }
        Command::Render { word, svg_out, highlight, crossing, edge_labels, vertex_labels } => {
            let n = word.n();
            let deco = Decorations {
                highlight: highlight.iter().map(|h| parse_pairs(h, n)).collect::<Result<_, _>>()?,
                crossings: crossing.iter().map(|c| parse_pairs(c, n)).collect::<Result<_, _>>()?,
                edge_labels,
                vertex_labels,
            };
            let svg = render_svg(&Tiling::new(&word), &deco)?;
            fs::write(&svg_out, svg)?;
            let _ = writeln!(out, "wrote {svg_out}");
        }
        Command::Verify { suite, n, seed, sample_words, sample_points } => {
            let suite: Suite = suite.parse()?;
            let opts = Options { n, seed, sample_words, sample_points };
            let reports = verify::run(suite, &opts)?;
            let mut failed = 0;
            for r in &reports {
                let _ = writeln!(out, "{}", serde_json::to_string(r)?);
                failed += r.failed;
            }
            let _ = writeln!(out, "{failed} counterexamples");
            if failed > 0 || reports.iter().any(|r| !r.ok()) {
                return Err(Failure::Counterexample);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let result = run(cli, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Counterexample) => ExitCode::from(1),
        Err(Failure::Broken(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
