//! `wordbound`: word lengths, girth and the bounded-length experiments from the command line.
//!
//! Exit codes: 0 pass, 1 failed verdict, 2 usage or input error, 3 resource budget exhausted.

mod experiment;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wordbound_core::genset::{generates, Generation};
use wordbound_core::girth::{cyclic_reduce, girth, girth_reference, simple_loop_check, LoopVerdict, Word};
use wordbound_core::group::{parse_element, parse_element_list, parse_group, FiniteGroup};
use wordbound_core::lab::{
    aut_group, aut_orbit_bound_check, claim, conjugacy_orbit_growth, heisenberg_center_certificate, render_report,
    uniform_length_exact, uniform_table, Experiment, ExperimentReport, Format,
};
use wordbound_core::metric::{ball, word_length, Length, Mode, SearchOptions, DEFAULT_MEM_LIMIT};
use wordbound_core::snf::{smith_normal_form, IntMatrix};
use wordbound_core::{Error, GenSet, Group, Order, Result};

use experiment::ExperimentCmd;

const MEM_ENV: &str = "WORDBOUND_MEM_LIMIT";

#[derive(Debug, Parser)]
#[command(
    name = "wordbound",
    version,
    about = "Word length and girth in Cayley graphs of finitely generated groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Report format for experiments.
    #[arg(long, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Seed for sampled experiments (default 42).
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Print the claims an experiment checks instead of running it.
    #[arg(long, global = true)]
    explain: bool,

    /// Breadth-first search strategy.
    #[arg(long, global = true, value_enum, default_value_t = SearchMode::Auto)]
    search: SearchMode,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SearchMode {
    Auto,
    Uni,
    Bi,
}

/// A group plus a symmetric generating set.
#[derive(Debug, Args)]
struct Space {
    /// Group descriptor, e.g. "Z x Z/2", "H3", "F 2", "D8".
    #[arg(long)]
    group: Option<String>,
    /// Generating elements, e.g. "[(5,1),(3,0)]"; inverses are added. Defaults to the
    /// standard generators. `@file.json` loads a saved group and generating set.
    #[arg(long, allow_hyphen_values = true)]
    genset: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Product g·h.
    Mul {
        #[arg(long)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Inverse of g.
    Inv {
        #[arg(long)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
    },
    /// g^n.
    Power {
        #[arg(long)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    /// [g,h] = g h g^-1 h^-1.
    Commutator {
        #[arg(long)]
        group: String,
        #[arg(allow_hyphen_values = true)]
        g: String,
        #[arg(allow_hyphen_values = true)]
        h: String,
    },
    /// Order of an element, or "inf".
    Order {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 1 << 20)]
        cap: u64,
    },
    /// Lists the elements of a finite group.
    Enumerate {
        #[arg(long)]
        group: String,
    },
    /// Prints the symmetric generating set, or its JSON form with --json.
    Symmetrize {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        json: bool,
    },
    /// Decides whether the generating set generates the group; exit 0 iff it does.
    Generates {
        #[command(flatten)]
        space: Space,
        /// Search radius for free-group witnesses.
        #[arg(long, default_value_t = 8)]
        budget: i64,
    },
    /// Smith normal form of an integer matrix, rows separated by ';'.
    Snf {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// |B_S(r)| for r = 0..=radius, one "r size" line each.
    Ball {
        #[command(flatten)]
        space: Space,
        #[arg(long)]
        radius: usize,
    },
    /// Word length of an element; ">cap" if it lies outside the ball.
    Length {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long, default_value_t = 16)]
        cap: usize,
        /// Also print a geodesic word.
        #[arg(long)]
        witness: bool,
    },
    /// Shortest nontrivial reduced loop; ">cap" if none is that short.
    Girth {
        #[command(flatten)]
        space: Space,
        #[arg(long, default_value_t = 12)]
        cap: usize,
        /// Use iterative deepening instead of meet-in-the-middle.
        #[arg(long)]
        reference: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Cyclic reduction of a word given as a list of letters.
    Reduce {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// Whether w'^n is a simple loop, w' the cyclic reduction of a word for g and n its order.
    SimpleLoop {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        /// Letters of a word for the element; defaults to a geodesic.
        #[arg(long, allow_hyphen_values = true)]
        word: Option<String>,
        #[arg(long, default_value_t = 1 << 16)]
        order_cap: u64,
    },
    /// Maximum word length over all symmetric generating sets of a small finite group.
    Uniform {
        #[arg(long)]
        group: String,
        /// One element; the whole table if omitted.
        #[arg(long, allow_hyphen_values = true)]
        element: Option<String>,
        #[arg(long, default_value_t = 16)]
        cap: usize,
    },
    /// Automorphisms of a small finite group as images of the enumerated elements.
    Aut {
        #[arg(long)]
        group: String,
    },
    /// Checks |Aut(G)·g| ≤ n^M and Aut(G)·g ⊆ B_S(M).
    OrbitCheck {
        #[command(flatten)]
        space: Space,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        m: usize,
    },
    /// Number of distinct conjugates x g x^-1 with x in the standard ball of each radius.
    Conjugacy {
        #[arg(long)]
        group: String,
        #[arg(long, allow_hyphen_values = true)]
        element: String,
        #[arg(long)]
        radius: usize,
    },
    /// c-exponent of [x,y] in H3 and l_{x,y}(c).
    Center {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
    /// Runs an experiment and reports pass/fail verdicts.
    Experiment {
        #[command(subcommand)]
        which: ExperimentCmd,
    },
}

/// Text to emit and whether the command passed.
struct Outcome {
    text: String,
    passed: bool,
}

impl Outcome {
    fn pass(text: impl Into<String>) -> Self {
        Outcome {
            text: text.into(),
            passed: true,
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    if e.is_resource() {
        3
    } else {
        2
    }
}

fn search_options(mode: SearchMode) -> Result<SearchOptions> {
    let mem_limit = match std::env::var(MEM_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidParameter(format!("{MEM_ENV} must be a byte count, got {v:?}")))?,
        Err(_) => DEFAULT_MEM_LIMIT,
    };
    let mode = match mode {
        SearchMode::Auto => Mode::Auto,
        SearchMode::Uni => Mode::Unidirectional,
        SearchMode::Bi => Mode::Bidirectional,
    };
    Ok(SearchOptions { mem_limit, mode })
}

impl Space {
    fn load(&self) -> Result<(Group, GenSet)> {
        if let Some(path) = self.genset.as_deref().and_then(|s| s.strip_prefix('@')) {
            if self.group.is_some() {
                return Err(Error::InvalidParameter(
                    "--group conflicts with a generating-set file".into(),
                ));
            }
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{path}: {e}")))?;
            return GenSet::from_json(&text);
        }
        let group = parse_group(
            self.group
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter("--group is required".into()))?,
        )?;
        let genset = match &self.genset {
            Some(text) => GenSet::make_symmetric(&group, &parse_element_list(&group, text)?)?,
            None => GenSet::standard(&group)?,
        };
        Ok((group, genset))
    }
}

fn parse_word(group: &Group, genset: &GenSet, text: &str) -> Result<Word> {
    parse_element_list(group, text)?
        .iter()
        .map(|x| {
            genset.position(x).ok_or_else(|| {
                Error::Domain(format!(
                    "{} is not a letter of {}",
                    group.format_element(x),
                    genset.format(group)
                ))
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(Word)
}

fn parse_matrix(text: &str) -> Result<IntMatrix> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split([',', ' '])
                .filter(|t| !t.is_empty())
                .map(|t| {
                    t.parse::<i64>()
                        .map_err(|_| Error::Parse(format!("bad matrix entry {t:?}")))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    IntMatrix::from_rows(&rows)
}

fn render_all(reports: &[ExperimentReport], format: Format) -> String {
    match format {
        Format::Json => {
            let docs: Vec<String> = reports.iter().map(|r| render_report(r, Format::Json)).collect();
            format!(
                "[\n{}\n]\n",
                docs.iter().map(|d| d.trim_end()).collect::<Vec<_>>().join(",\n")
            )
        }
        Format::Csv => reports
            .iter()
            .map(|r| format!("# {}\n{}", r.name, render_report(r, Format::Csv)))
            .collect::<Vec<_>>()
            .join("\n"),
        Format::Table => reports
            .iter()
            .map(|r| render_report(r, Format::Table))
            .collect::<Vec<_>>()
            .join("\n"),
    }
}

fn explain(experiments: &[Experiment]) -> String {
    let mut out = String::new();
    for e in experiments {
        writeln!(out, "{}", e.name()).unwrap();
        for id in e.claims() {
            let c = claim(id).expect("catalogued");
            writeln!(out, "  {}: {}", c.id, c.statement).unwrap();
        }
    }
    out
}

fn run_experiment(cli: &Cli, which: &ExperimentCmd, opts: &SearchOptions) -> Result<Outcome> {
    let (experiments, jobs) = match experiment::build(which, cli.seed)? {
        Some(e) => (vec![e], 1),
        None => {
            let ExperimentCmd::All { jobs } = which else {
                unreachable!()
            };
            let mut all = Experiment::defaults();
            if let Some(s) = cli.seed {
                for e in &mut all {
                    if let Experiment::HeisCenter { seed, .. } | Experiment::Zxd8 { seed, .. } = e {
                        *seed = s;
                    }
                }
            }
            (all, *jobs)
        }
    };
    if cli.explain {
        return Ok(Outcome::pass(explain(&experiments)));
    }
    let mut reports = Vec::new();
    let mut error: Option<Error> = None;
    for (name, result) in experiment::run_all(&experiments, jobs, opts)? {
        match result {
            Ok(r) => reports.push(r),
            Err(e) => {
                eprintln!("wordbound: experiment {name}: {e}");
                // a usage error outranks a resource error
                if error
                    .as_ref()
                    .is_none_or(|prev| exit_code(prev) < exit_code(&e) || !e.is_resource())
                {
                    error = Some(e);
                }
            }
        }
    }
    if let Some(e) = error {
        if experiments.len() == 1 {
            return Err(e);
        }
        emit(cli, &render_all(&reports, cli.format))?;
        return Err(e);
    }
    let passed = reports.iter().all(ExperimentReport::passed);
    let text = if reports.len() == 1 {
        render_report(&reports[0], cli.format)
    } else {
        render_all(&reports, cli.format)
    };
    Ok(Outcome { text, passed })
}

fn run(cli: &Cli) -> Result<Outcome> {
    let opts = search_options(cli.search)?;
    let elem = |group: &Group, text: &str| parse_element(group, text);
    match &cli.command {
        Command::Mul { group, g, h } => {
            let group = parse_group(group)?;
            let r = group.mul(&elem(&group, g)?, &elem(&group, h)?)?;
            Ok(Outcome::pass(format!("{}\n", group.format_element(&r))))
        }
        Command::Inv { group, g } => {
            let group = parse_group(group)?;
            let r = group.inv(&elem(&group, g)?)?;
            Ok(Outcome::pass(format!("{}\n", group.format_element(&r))))
        }
        Command::Power { group, g, n } => {
            let group = parse_group(group)?;
            let r = group.power(&elem(&group, g)?, *n)?;
            Ok(Outcome::pass(format!("{}\n", group.format_element(&r))))
        }
        Command::Commutator { group, g, h } => {
            let group = parse_group(group)?;
            let r = group.commutator(&elem(&group, g)?, &elem(&group, h)?)?;
            Ok(Outcome::pass(format!("{}\n", group.format_element(&r))))
        }
        Command::Order { group, element, cap } => {
            let group = parse_group(group)?;
            match group.element_order(&elem(&group, element)?, *cap)? {
                Order::Finite(n) => Ok(Outcome::pass(format!("{n}\n"))),
                Order::Infinite => Ok(Outcome::pass("inf\n")),
                Order::CapExceeded => Err(Error::CapExceeded(format!("order exceeds {cap}"))),
            }
        }
        Command::Enumerate { group } => {
            let group = parse_group(group)?;
            let mut out = String::new();
            for x in group.enumerate()? {
                writeln!(out, "{}", group.format_element(&x)).unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Symmetrize { space, json } => {
            let (group, s) = space.load()?;
            if *json {
                Ok(Outcome::pass(format!("{}\n", s.to_json(&group)?)))
            } else {
                Ok(Outcome::pass(format!("{}\n", s.format(&group))))
            }
        }
        Command::Generates { space, budget } => {
            let (group, s) = space.load()?;
            let verdict = generates(&group, &s, *budget)?;
            let text = match &verdict {
                Generation::Yes(c) => format!("yes\n{c:?}\n"),
                Generation::No(w) => format!("no\n{w:?}\n"),
                Generation::Inconclusive(why) => format!("inconclusive\n{why}\n"),
            };
            Ok(Outcome {
                text,
                passed: verdict.is_yes(),
            })
        }
        Command::Snf { matrix } => {
            let m = parse_matrix(matrix)?;
            let snf = smith_normal_form(&m)?;
            let factors: Vec<String> = snf.invariant_factors().iter().map(ToString::to_string).collect();
            Ok(Outcome::pass(format!("invariant factors: [{}]\n", factors.join(","))))
        }
        Command::Ball { space, radius } => {
            let (group, s) = space.load()?;
            let b = ball(&group, &s, *radius, &opts)?;
            let mut out = String::new();
            for (r, n) in b.growth().iter().enumerate() {
                writeln!(out, "{r} {n}").unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Length {
            space,
            element,
            cap,
            witness,
        } => {
            let (group, s) = space.load()?;
            let g = elem(&group, element)?;
            let cert = word_length(&group, &s, &g, *cap, &opts)?;
            let mut out = match cert.length {
                Length::Exact(n) => format!("{n}\n"),
                Length::NotInBall => format!(">{cap}\n"),
            };
            if let (true, Some(w)) = (*witness, &cert.witness) {
                writeln!(out, "{}", Word(w.clone()).format(&s, &group)).unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Girth {
            space,
            cap,
            reference,
            witness,
        } => {
            let (group, s) = space.load()?;
            let r = if *reference {
                girth_reference(&group, &s, *cap)?
            } else {
                girth(&group, &s, *cap, &opts)?
            };
            let mut out = format!("{}\n", r.value);
            if let (true, Some(w)) = (*witness, &r.witness) {
                writeln!(out, "{}", w.format(&s, &group)).unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Reduce { space, word } => {
            let (group, s) = space.load()?;
            let w = parse_word(&group, &s, word)?;
            Ok(Outcome::pass(format!(
                "{}\n",
                cyclic_reduce(&s, &w)?.format(&s, &group)
            )))
        }
        Command::SimpleLoop {
            space,
            element,
            word,
            order_cap,
        } => {
            let (group, s) = space.load()?;
            let g = elem(&group, element)?;
            let w = match word {
                Some(text) => parse_word(&group, &s, text)?,
                None => {
                    let cert = word_length(&group, &s, &g, 64, &opts)?;
                    Word(
                        cert.witness
                            .ok_or_else(|| Error::CapExceeded("no word of length ≤ 64".into()))?,
                    )
                }
            };
            Ok(match simple_loop_check(&group, &s, &g, &w, *order_cap)? {
                LoopVerdict::SimpleLoop(n) => Outcome::pass(format!("simple loop of length {n}\n")),
                LoopVerdict::Fails(why) => Outcome {
                    text: format!("fails: {why}\n"),
                    passed: false,
                },
            })
        }
        Command::Uniform { group, element, cap } => {
            let group = parse_group(group)?;
            let table = match element {
                Some(text) => vec![uniform_length_exact(&group, &elem(&group, text)?, *cap)?],
                None => uniform_table(&group, *cap)?,
            };
            let mut out = String::new();
            for u in table {
                writeln!(
                    out,
                    "{} {} {}",
                    group.format_element(&u.element),
                    u.max,
                    u.argmax.format(&group)
                )
                .unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Aut { group } => {
            let group = parse_group(group)?;
            let f = FiniteGroup::new(&group, 1 << 12)?;
            let auts = aut_group(&f)?;
            let mut out = format!("{}\n", auts.len());
            for a in &auts {
                let images: Vec<String> = (0..f.size())
                    .map(|x| group.format_element(f.element(a.apply(x))))
                    .collect();
                writeln!(out, "[{}]", images.join(",")).unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::OrbitCheck { space, element, m } => {
            let (group, s) = space.load()?;
            let c = aut_orbit_bound_check(&group, &elem(&group, element)?, &s, *m, &opts)?;
            Ok(Outcome {
                text: format!(
                    "orbit {} n^M {} inside_ball {}\n",
                    c.orbit.len(),
                    c.bound(),
                    c.inside_ball
                ),
                passed: c.passed(),
            })
        }
        Command::Conjugacy { group, element, radius } => {
            let group = parse_group(group)?;
            let mut out = String::new();
            for (r, n) in conjugacy_orbit_growth(&group, &elem(&group, element)?, *radius, &opts)? {
                writeln!(out, "{r} {n}").unwrap();
            }
            Ok(Outcome::pass(out))
        }
        Command::Center { x, y } => {
            let h = Group::Heisenberg;
            let c = heisenberg_center_certificate(&elem(&h, x)?, &elem(&h, y)?, &opts)?;
            let length = match c.length {
                Length::Exact(n) => n.to_string(),
                Length::NotInBall => ">4".into(),
            };
            Ok(Outcome {
                text: format!("exponent {} length {length}\n", c.exponent),
                passed: c.holds(),
            })
        }
        Command::Experiment { which } => run_experiment(cli, which, &opts),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<()> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| emit(&cli, &o.text).map(|()| o.passed));
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("wordbound: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
