use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commgroup::homology::{free_case_complex, surface_case_complex};
use commgroup::module::{
    abelianize_free, abelianize_surface, act, braces, braces_surface, surface_quotient,
};
use commgroup::{
    rewrite, rewrite_surface, BasisWord, Error, LaurentPoly, ModuleElement, SurfacePresentation,
    Word,
};
use serde_json::{json, Value};

mod selftest;

#[derive(Parser, Debug)]
#[command(
    name = "commgroup",
    version,
    about = "Free bases and abelianizations of commutator subgroups of free and surface groups"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Seed for every random stream used by `selftest`.
    #[arg(long, global = true, default_value_t = 20240601)]
    pub seed: u64,
    /// Half-width of truncation boxes `[-B, B]^rank`.
    #[arg(long = "box", global = true, default_value_t = 3)]
    pub box_bound: i64,
    /// Number of random cases per `selftest` suite.
    #[arg(long, global = true, default_value_t = 100)]
    pub cases: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Express a word of [F_n, F_n] in the free basis, one signed symbol per line.
    Rewrite {
        #[arg(short = 'n', long)]
        rank: usize,
        word: String,
    },
    /// Express a word of the surface commutator subgroup in its free basis.
    RewriteSurface {
        #[arg(short = 'g', long)]
        genus: usize,
        word: String,
    },
    /// Multiply out signed symbol lines (from the argument or stdin) into a reduced word.
    Expand {
        #[arg(short = 'n', long)]
        rank: usize,
        lines: Option<String>,
    },
    /// Decide whether a word is trivial in the genus-g surface group.
    IsTrivial {
        #[arg(short = 'g', long)]
        genus: usize,
        word: String,
    },
    /// Image of a commutator-subgroup word in the abelianized commutator subgroup.
    Abelianize {
        #[arg(short = 'n', long, required_unless_present = "genus", conflicts_with = "genus")]
        rank: Option<usize>,
        #[arg(short = 'g', long)]
        genus: Option<usize>,
        word: String,
    },
    /// Act by a Laurent polynomial (JSON) on a module element (JSON).
    Act { poly: String, element: String },
    /// The class {x_i, x_j}^h.
    Braces {
        #[arg(short = 'n', long, required_unless_present = "genus", conflicts_with = "genus")]
        rank: Option<usize>,
        #[arg(short = 'g', long)]
        genus: Option<usize>,
        i: usize,
        j: usize,
        /// Comma-separated offset vector, zero when omitted.
        #[arg(long, allow_hyphen_values = true)]
        h: Option<String>,
    },
    /// Push a free-case module element (JSON) to the surface quotient.
    QuotientSurface { element: String },
    /// Integral homology of the abelian quotient with coefficients in the commutator module.
    Homology {
        #[command(subcommand)]
        case: HomologyCase,
    },
    /// Run every invariant suite on seeded random inputs.
    Selftest,
}

#[derive(Subcommand, Debug)]
enum HomologyCase {
    Free {
        #[arg(short = 'n', long)]
        rank: usize,
        #[arg(short = 'k', long)]
        degree: usize,
    },
    Surface {
        #[arg(short = 'g', long)]
        genus: usize,
        #[arg(short = 'k', long)]
        degree: usize,
    },
}

struct Output {
    text: String,
    json: Value,
}

fn parse_json(text: &str) -> Value {
    serde_json::from_str(text).expect("library JSON is well formed")
}

fn word_output(rank: usize, letters: &BasisWord) -> Output {
    let json_letters: Vec<Value> = letters
        .letters()
        .iter()
        .map(|(s, e)| json!({"sign": e.value(), "i": s.i, "j": s.j, "k": s.k}))
        .collect();
    Output {
        text: letters.to_lines().join("\n"),
        json: json!({"rank": rank, "letters": json_letters}),
    }
}

fn element_output(m: &ModuleElement) -> Output {
    Output {
        text: m.to_string(),
        json: parse_json(&m.to_json()),
    }
}

fn parse_offset(rank: usize, text: Option<&str>) -> commgroup::Result<Vec<i64>> {
    let Some(text) = text else {
        return Ok(vec![0; rank]);
    };
    let h = text
        .split(',')
        .map(|t| t.trim().parse::<i64>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse {
            what: "offset vector",
            input: text.to_string(),
            reason: e.to_string(),
        })?;
    if h.len() != rank {
        return Err(Error::RankMismatch(format!(
            "offset has {} entries, rank is {rank}",
            h.len()
        )));
    }
    Ok(h)
}

fn run(command: Command) -> commgroup::Result<Output> {
    match command {
        Command::Rewrite { rank, word } => {
            let w = Word::parse(rank, &word)?;
            Ok(word_output(rank, &rewrite(&w)?))
        }
        Command::RewriteSurface { genus, word } => {
            let p = SurfacePresentation::new(genus)?;
            let w = Word::parse(p.rank(), &word)?;
            Ok(word_output(p.rank(), rewrite_surface(&p, &w)?.word()))
        }
        Command::Expand { rank, lines } => {
            let text = match lines {
                Some(t) => t,
                None => {
                    let mut buf = String::new();
                    io::stdin().read_to_string(&mut buf).map_err(|e| {
                        Error::InvalidArgument(format!("cannot read stdin: {e}"))
                    })?;
                    buf
                }
            };
            let w = BasisWord::parse_lines(rank, &text)?.expand();
            Ok(Output {
                text: w.to_string(),
                json: json!({"rank": rank, "word": w.to_string()}),
            })
        }
        Command::IsTrivial { genus, word } => {
            let p = SurfacePresentation::new(genus)?;
            let trivial = p.is_trivial(&Word::parse(p.rank(), &word)?)?;
            Ok(Output {
                text: trivial.to_string(),
                json: json!({"trivial": trivial}),
            })
        }
        Command::Abelianize { rank, genus, word } => {
            let m = match (rank, genus) {
                (Some(n), _) => abelianize_free(&Word::parse(n, &word)?)?,
                (None, Some(g)) => {
                    let p = SurfacePresentation::new(g)?;
                    abelianize_surface(&p, &Word::parse(p.rank(), &word)?)?
                }
                (None, None) => unreachable!("clap requires one of --rank, --genus"),
            };
            Ok(element_output(&m))
        }
        Command::Act { poly, element } => {
            let p = LaurentPoly::from_json(&poly)?;
            let m = ModuleElement::from_json(&element)?;
            Ok(element_output(&act(&p, &m)?))
        }
        Command::Braces {
            rank,
            genus,
            i,
            j,
            h,
        } => {
            let m = match (rank, genus) {
                (Some(n), _) => braces(n, i, j, &parse_offset(n, h.as_deref())?)?,
                (None, Some(g)) => {
                    let p = SurfacePresentation::new(g)?;
                    braces_surface(&p, i, j, &parse_offset(p.rank(), h.as_deref())?)?
                }
                (None, None) => unreachable!("clap requires one of --rank, --genus"),
            };
            Ok(element_output(&m))
        }
        Command::QuotientSurface { element } => {
            let m = ModuleElement::from_json(&element)?;
            Ok(element_output(&surface_quotient(&m)?))
        }
        Command::Homology { case } => {
            let (complex, k) = match case {
                HomologyCase::Free { rank, degree } => (free_case_complex(rank, degree)?, degree),
                HomologyCase::Surface { genus, degree } => {
                    (surface_case_complex(genus, degree)?, degree)
                }
            };
            let h = complex.homology_at(k)?;
            let torsion: Vec<String> = h.torsion.iter().map(ToString::to_string).collect();
            Ok(Output {
                text: format!("betti {} torsion [{}]", h.betti, torsion.join(",")),
                json: parse_json(&h.to_json()),
            })
        }
        Command::Selftest => unreachable!("selftest is dispatched separately"),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let global = cli.global;
    if global.box_bound < 0 {
        eprintln!("error: --box must be >= 0, got {}", global.box_bound);
        return ExitCode::from(1);
    }
    if global.cases == 0 {
        eprintln!("error: --cases must be >= 1");
        return ExitCode::from(1);
    }

    if let Command::Selftest = cli.command {
        let report = selftest::run(&global);
        match global.format {
            Format::Text => print!("{}", report.table()),
            Format::Json => println!("{}", report.json()),
        }
        return if report.all_passed() {
            ExitCode::SUCCESS
        } else {
            ExitCode::from(3)
        };
    }

    match run(cli.command) {
        Ok(out) => {
            match global.format {
                Format::Text => {
                    if !out.text.is_empty() {
                        println!("{}", out.text);
                    }
                }
                Format::Json => println!("{}", out.json),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}: {}", e.code(), e);
            ExitCode::from(2)
        }
    }
}
