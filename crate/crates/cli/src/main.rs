//! `cellcolor`: generate, color, verify, search and export toroidal complexes.
//!
//! Documents travel as JSON on stdin/stdout (or `--in`/`--out` files), so the
//! subcommands compose with pipes. Exit status: 0 when the requested level
//! holds or a search succeeds, 1 when it does not, 2 on usage or input errors.

use std::collections::BTreeMap;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cellcolor::coloring::{self, ColoringError};
use cellcolor::io::{to_dot, to_svg, ComplexDocument, SearchRecord};
use cellcolor::search::{self, CellOrder, Mode, Outcome, SearchProblem, Target, BOUND_ENV};
use cellcolor::tiling::{gen_family, Generated, Provenance, TilingSpec};
use cellcolor::verify::{verify, Level};
use cellcolor::CellId;
use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "cellcolor", version, about = "Efficient total colorings of toroidal 2-cell complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Io {
    /// Input document (default: stdin).
    #[arg(long = "in", value_name = "FILE")]
    input: Option<PathBuf>,
    /// Output file (default: stdout).
    #[arg(long, value_name = "FILE")]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Build the complex named by a tiling spec such as `triangular@u=7,0;v=2,1`.
    Generate {
        #[arg(long)]
        spec: String,
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Attach a coloring to a generated document.
    Color {
        #[arg(long, value_enum)]
        scheme: Scheme,
        /// Skip the missing-color check when inheriting carved colors.
        #[arg(long)]
        unchecked: bool,
        /// Use a frozen coloring instead of computing one.
        #[arg(long)]
        preset: Option<String>,
        #[arg(long, env = BOUND_ENV, default_value_t = search::DEFAULT_CELL_BOUND)]
        bound: usize,
        #[command(flatten)]
        io: Io,
    },
    /// Check the coloring and attach the report.
    Verify {
        /// Level that must be reached: L1..L5 or axioms, proper_total, etc, etcc, setcc.
        #[arg(long, default_value = "setcc")]
        level: String,
        #[command(flatten)]
        io: Io,
    },
    /// Exhaustive search for a coloring at a level.
    Search {
        #[arg(long, value_enum, default_value = "setcc")]
        level: SearchLevel,
        /// first, exists or count:N
        #[arg(long, default_value = "first")]
        mode: String,
        /// JSON map (or document) of cell colors to keep fixed.
        #[arg(long, value_name = "FILE")]
        fix: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        threads: usize,
        #[arg(long, env = BOUND_ENV, default_value_t = search::DEFAULT_CELL_BOUND)]
        bound: usize,
        /// Colors to use when the document carries none (default: the frame's).
        #[arg(long)]
        k: Option<u8>,
        /// Order in which cells are decided; breadth-first is much faster on carved complexes.
        #[arg(long, value_enum, default_value = "ascending")]
        order: Order,
        #[command(flatten)]
        io: Io,
    },
    /// Write the document as JSON, its skeleton as DOT or a picture as SVG.
    Export {
        #[arg(long, value_enum)]
        format: Format,
        #[arg(long = "in", value_name = "FILE")]
        input: Option<PathBuf>,
        #[arg(long, value_name = "FILE")]
        out: PathBuf,
    },
    /// List the tiling families with their smallest specs.
    Families,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scheme {
    ClosedForm,
    Dual,
    Line,
    Carved,
    Search,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchLevel {
    ProperTotal,
    Etc,
    Etcc,
    Setcc,
}

impl From<SearchLevel> for Target {
    fn from(l: SearchLevel) -> Target {
        match l {
            SearchLevel::ProperTotal => Target::ProperTotal,
            SearchLevel::Etc => Target::Etc,
            SearchLevel::Etcc => Target::Etcc,
            SearchLevel::Setcc => Target::Setcc,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Order {
    Ascending,
    BreadthFirst,
}

impl From<Order> for CellOrder {
    fn from(o: Order) -> CellOrder {
        match o {
            Order::Ascending => CellOrder::Ascending,
            Order::BreadthFirst => CellOrder::BreadthFirst,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Dot,
    Svg,
}

/// Usage or input problem; always exit status 2.
struct Usage(String);

impl<E: std::fmt::Display> From<E> for Usage {
    fn from(e: E) -> Usage {
        Usage(e.to_string())
    }
}

fn read_input(path: &Option<PathBuf>) -> Result<String, Usage> {
    match path {
        Some(p) => std::fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn write_output(path: &Option<PathBuf>, s: &str) -> Result<(), Usage> {
    match path {
        Some(p) => std::fs::write(p, s).map_err(|e| Usage(format!("{}: {e}", p.display()))),
        None => Ok(std::io::stdout().write_all(s.as_bytes())?),
    }
}

fn read_doc(path: &Option<PathBuf>) -> Result<ComplexDocument, Usage> {
    Ok(ComplexDocument::from_json(&read_input(path)?)?)
}

/// Regenerates the construction a document came from and checks that the
/// cells still agree.
fn regenerate(doc: &ComplexDocument) -> Result<Generated, Usage> {
    let spec = doc.spec.ok_or_else(|| Usage("document has no tiling spec".into()))?;
    let g = gen_family(&spec)?;
    if ComplexDocument::from_generated(&spec, &g).cells != doc.cells {
        return Err(Usage("document cells differ from its tiling spec".into()));
    }
    Ok(g)
}

fn parse_mode(s: &str) -> Result<Mode, Usage> {
    match s {
        "first" => Ok(Mode::First),
        "exists" => Ok(Mode::Exists),
        _ => match s.strip_prefix("count:").map(str::parse) {
            Some(Ok(n)) => Ok(Mode::CountUpTo(n)),
            _ => Err(Usage(format!("bad mode {s:?}; expected first, exists or count:N"))),
        },
    }
}

fn read_fixed(path: &Path) -> Result<BTreeMap<CellId, u8>, Usage> {
    let s = read_input(&Some(path.to_path_buf()))?;
    if let Ok(doc) = ComplexDocument::from_json(&s) {
        return doc.colors.ok_or_else(|| Usage(format!("{} has no colors", path.display())));
    }
    Ok(serde_json::from_str(&s)?)
}

fn color(doc: &mut ComplexDocument, scheme: Scheme, unchecked: bool, preset: Option<&str>, bound: usize) -> Result<bool, Usage> {
    let g = regenerate(doc)?;
    if let Some(name) = preset {
        let c = coloring::preset(&doc.spec.unwrap(), name).ok_or_else(|| {
            let known = coloring::preset_names(&doc.spec.unwrap()).join(", ");
            Usage(format!("no preset {name:?} for this complex (known: {known})"))
        })?;
        doc.set_assignment(&c);
        return Ok(true);
    }
    let result = match (scheme, &g.provenance) {
        (Scheme::ClosedForm, Provenance::Base) => coloring::color_closed_form(&g.torus),
        (Scheme::Dual, Provenance::Dual { .. })
        | (Scheme::Line, Provenance::Line { .. })
        | (Scheme::Carved, Provenance::Carved { .. }) => coloring::construction_coloring(&g, !unchecked, bound),
        (Scheme::Search, _) => {
            let fixed = coloring::inherited_vertex_colors(&g, bound)?;
            let p = SearchProblem::new(g.complex(), g.torus.frame.k(), Target::Setcc).fixed(fixed).bound(bound);
            match search::solve(&p)? {
                Outcome::Solution(c) => Ok(c),
                _ => Err(ColoringError::NoCompletion),
            }
        }
        _ => return Err(Usage("scheme does not match how the complex was built".into())),
    };
    match result {
        Ok(c) => {
            doc.set_assignment(&c);
            Ok(true)
        }
        Err(e @ (ColoringError::MissingColorMismatch { .. } | ColoringError::NoCompletion)) => {
            eprintln!("cellcolor: {e}");
            Ok(false)
        }
        Err(e) => Err(e.into()),
    }
}

fn run(cli: Cli) -> Result<bool, Usage> {
    match cli.command {
        Command::Generate { spec, out } => {
            let spec: TilingSpec = spec.parse()?;
            let g = gen_family(&spec)?;
            write_output(&out, &ComplexDocument::from_generated(&spec, &g).to_json())?;
            Ok(true)
        }
        Command::Color { scheme, unchecked, preset, bound, io } => {
            let mut doc = read_doc(&io.input)?;
            let ok = color(&mut doc, scheme, unchecked, preset.as_deref(), bound)?;
            if ok {
                write_output(&io.out, &doc.to_json())?;
            }
            Ok(ok)
        }
        Command::Verify { level, io } => {
            let level = Level::parse(&level).ok_or_else(|| Usage(format!("unknown level {level:?}")))?;
            let mut doc = read_doc(&io.input)?;
            let x = doc.complex()?;
            let c = doc.assignment().ok_or_else(|| Usage("document has no coloring".into()))?;
            let report = verify(&x, &c);
            let ok = report.reaches(level);
            eprintln!(
                "summary: {}",
                report.summary.map_or("none".to_string(), |l| serde_json::to_value(l).unwrap().as_str().unwrap().to_string())
            );
            doc.report = Some(report);
            write_output(&io.out, &doc.to_json())?;
            Ok(ok)
        }
        Command::Search { level, mode, fix, threads, bound, k, order, io } => {
            let mut doc = read_doc(&io.input)?;
            let x = doc.complex()?;
            let k = k.or(doc.k).ok_or_else(|| Usage("no color count: pass --k".into()))?;
            let mode_v = parse_mode(&mode)?;
            let fixed = match &fix {
                Some(p) => read_fixed(p)?,
                None => BTreeMap::new(),
            };
            let target: Target = level.into();
            let p = SearchProblem::new(&x, k, target).fixed(fixed).mode(mode_v).bound(bound).threads(threads).order(order.into());
            let (outcome, stats) = search::solve_with_stats(&p)?;
            let (name, count, ok) = match &outcome {
                Outcome::Solution(c) => {
                    doc.set_assignment(c);
                    ("solution", None, true)
                }
                Outcome::Unsat => ("unsat", None, false),
                Outcome::Exists(true) => ("exists", None, true),
                Outcome::Exists(false) => ("not_exists", None, false),
                Outcome::Count(n) => ("count", Some(*n), *n > 0),
            };
            doc.k = Some(k);
            doc.search = Some(SearchRecord { level: target, mode, outcome: name.into(), count, nodes: stats.nodes });
            eprintln!("search: {name}{}", count.map_or(String::new(), |n| format!(" {n}")));
            write_output(&io.out, &doc.to_json())?;
            Ok(ok)
        }
        Command::Export { format, input, out } => {
            let doc = read_doc(&input)?;
            let text = match format {
                Format::Json => doc.to_json(),
                Format::Dot => to_dot(&doc.complex()?, doc.assignment().as_ref()),
                Format::Svg => to_svg(&regenerate(&doc)?.torus, doc.assignment().as_ref()),
            };
            write_output(&Some(out), &text)?;
            Ok(true)
        }
        Command::Families => {
            for f in cellcolor::tiling::Family::ALL {
                let x = gen_family(&f.smallest()).map(|g| g.complex().counts());
                let counts = x.map_or("?".into(), |(v, e, f)| format!("{v}/{e}/{f}"));
                println!("{:<14} {:<40} {}", f.name(), f.smallest().to_string(), counts);
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("cellcolor: {msg}");
            ExitCode::from(2)
        }
    }
}
