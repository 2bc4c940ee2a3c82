use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hct::configurations::{contour_supports, Configuration};
use hct::eisenstein::{classify_diameter, ground_state_count, loeschian_representations, DiameterCase};
use hct::excitations::{count_defects, enumerate_pair_defects};
use hct::forces::{
    min_delta_nondeletable, verify_inserted_lens_types, verify_inserted_triangle_types,
    verify_removed_types_with_jobs, ForceFamily,
};
use hct::lattice::enumerate_ground_states;
use hct::render::{render_svg, RenderMode, RenderSpec, Viewport};
use hct::scanner::{scan_dominance_with, CSV_HEADER, HEURISTIC_RULE};
use hct::{Error, Sublattice};

#[derive(Parser)]
#[command(name = "hct", version, about = "Hard-core lattice gas on the triangular lattice: exact enumerations")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Case, representations and ground-state count of a squared diameter
    Classify { n: u64 },
    /// Representations n = a² + ab + b² with a >= b >= 0
    Reps { n: u64 },
    /// All ground states (class, reflection, shift)
    GroundStates {
        n: u64,
        /// Print only the number of ground states
        #[arg(long)]
        count: bool,
    },
    /// Pair, triple and quadruple defect counts of a sublattice class
    Defects {
        a: i64,
        b: i64,
        /// Also list the explicit pair defects
        #[arg(long)]
        list: bool,
    },
    /// Repelling-force families
    #[command(subcommand)]
    Forces(ForcesCmd),
    /// Pair-defect dominance scan over attainable squared diameters
    Scan(ScanArgs),
    /// Contour supports of a configuration file
    Contours {
        #[arg(long)]
        config: PathBuf,
    },
    /// Write an SVG picture
    Render(RenderArgs),
}

#[derive(Subcommand)]
enum ForcesCmd {
    /// Check the inserted-site equalities, or the removed-site bound with --removed-types
    Verify {
        #[command(flatten)]
        family: FamilyArg,
        /// Restrict the inserted-site check to one class
        #[arg(long, value_parser = parse_class)]
        sublattice: Option<Sublattice>,
        #[arg(long)]
        removed_types: bool,
        #[arg(long, env = "HCT_JOBS", default_value_t = 1)]
        jobs: usize,
    },
    /// Minimal deficit over non-deletable parallelograms
    MinDelta {
        #[command(flatten)]
        family: FamilyArg,
        #[arg(long, value_parser = parse_class)]
        sublattice: Sublattice,
    },
}

#[derive(Args)]
struct FamilyArg {
    /// d7, d13, d147 or a force-family file
    #[arg(long)]
    family: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ScanArgs {
    #[arg(long)]
    max_n: u64,
    #[arg(long, default_value_t = 2)]
    min_classes: usize,
    #[arg(long, env = "HCT_JOBS", default_value_t = 1)]
    jobs: usize,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, value_parser = parse_mode)]
    mode: RenderMode,
    #[arg(long, value_parser = parse_class)]
    class: Option<Sublattice>,
    #[arg(long)]
    config: Option<PathBuf>,
    /// m0,m1,n0,n1 (inclusive)
    #[arg(long, value_parser = parse_viewport)]
    viewport: Option<Viewport>,
    /// Output file (stdout if absent)
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_class(s: &str) -> Result<Sublattice, String> {
    let (a, b) = s.split_once(',').ok_or("expected a,b")?;
    let a = a.trim().parse().map_err(|_| format!("bad number {a:?}"))?;
    let b = b.trim().parse().map_err(|_| format!("bad number {b:?}"))?;
    Sublattice::new(a, b).map_err(|e| e.to_string())
}

fn parse_mode(s: &str) -> Result<RenderMode, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_viewport(s: &str) -> Result<Viewport, String> {
    Viewport::parse(s).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct Classification {
    n: u64,
    case: DiameterCase,
    representations: Vec<(u64, u64)>,
    ground_states: u64,
}

#[derive(Serialize)]
struct Defects {
    pairs: u64,
    triples: u64,
    quadruples: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pair_list: Option<Vec<((i64, i64), (i64, i64))>>,
}

#[derive(Serialize)]
struct InsertedCheck {
    sublattice: (i64, i64),
    triangle: bool,
    lens: bool,
    triangle_types: Vec<Vec<u64>>,
    lens_types: Vec<Vec<u64>>,
}

fn print_json<T: Serialize>(v: &T) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn load_family(name: &str) -> Result<ForceFamily> {
    match ForceFamily::builtin(name) {
        Ok(f) => Ok(f),
        Err(Error::UnknownFamily(_)) if Path::new(name).exists() => {
            let text = fs::read_to_string(name).with_context(|| format!("reading {name}"))?;
            Ok(ForceFamily::parse(&text)?)
        }
        Err(e) => Err(e.into()),
    }
}

fn load_config(path: &Path) -> Result<Configuration> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(Configuration::parse(&text)?)
}

fn writer(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(io::BufWriter::new(
            fs::File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(io::BufWriter::new(io::stdout())),
    })
}

fn scan(args: &ScanArgs) -> Result<()> {
    eprintln!("# heuristic: {HEURISTIC_RULE}");
    let out = writer(args.out.as_deref())?;
    let mut failed = None;
    match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_HEADER)?;
            scan_dominance_with(args.max_n, args.min_classes, args.jobs, |row| {
                if failed.is_none() {
                    failed = w.write_record(row.csv_record()).err().map(anyhow::Error::from);
                }
            });
            w.flush()?;
        }
        Format::Json => {
            let mut w = out;
            scan_dominance_with(args.max_n, args.min_classes, args.jobs, |row| {
                if failed.is_none() {
                    let r = serde_json::to_writer(&mut w, &row)
                        .map_err(anyhow::Error::from)
                        .and_then(|_| writeln!(w).map_err(Into::into));
                    failed = r.err();
                }
            });
            w.flush()?;
        }
    }
    failed.map_or(Ok(()), Err)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Classify { n } => {
            let c = classify_diameter(n)?;
            print_json(&Classification {
                n,
                case: c.case,
                representations: c.representations,
                ground_states: ground_state_count(n)?,
            })
        }
        Cmd::Reps { n } => {
            if !hct::eisenstein::is_attainable(n) {
                return Err(Error::NotAttainable(n).into());
            }
            print_json(&loeschian_representations(n))
        }
        Cmd::GroundStates { n, count } => {
            if count {
                print_json(&ground_state_count(n)?)
            } else {
                print_json(&enumerate_ground_states(n)?)
            }
        }
        Cmd::Defects { a, b, list } => {
            let s = Sublattice::new(a, b)?;
            let c = count_defects(&s);
            let pair_list = list.then(|| {
                enumerate_pair_defects(&s)
                    .into_iter()
                    .map(|(x, y)| ((x.m, x.n), (y.m, y.n)))
                    .collect()
            });
            print_json(&Defects {
                pairs: c.pairs,
                triples: c.triples,
                quadruples: c.quadruples,
                pair_list,
            })
        }
        Cmd::Forces(ForcesCmd::Verify {
            family,
            sublattice,
            removed_types,
            jobs,
        }) => {
            let f = load_family(&family.family)?;
            if removed_types {
                let report = verify_removed_types_with_jobs(&f, jobs)?;
                return print_json(&report);
            }
            let classes = match sublattice {
                Some(s) => vec![s],
                None => loeschian_representations(f.n())
                    .into_iter()
                    .map(|(a, b)| Sublattice::new(a as i64, b as i64))
                    .collect::<hct::Result<_>>()?,
            };
            let mut checks = Vec::new();
            for s in classes {
                let t = verify_inserted_triangle_types(&f, &s)?;
                let l = verify_inserted_lens_types(&f, &s)?;
                checks.push(InsertedCheck {
                    sublattice: (s.a(), s.b()),
                    triangle: t.holds,
                    lens: l.holds,
                    triangle_types: t.types,
                    lens_types: l.types,
                });
            }
            print_json(&checks)
        }
        Cmd::Forces(ForcesCmd::MinDelta { family, sublattice }) => {
            let f = load_family(&family.family)?;
            println!("{}", min_delta_nondeletable(&f, &sublattice)?);
            Ok(())
        }
        Cmd::Scan(args) => scan(&args),
        Cmd::Contours { config } => print_json(&contour_supports(&load_config(&config)?)?),
        Cmd::Render(args) => {
            let config = args.config.as_deref().map(load_config).transpose()?;
            let spec = RenderSpec {
                mode: args.mode,
                class: args.class,
                config,
                viewport: args.viewport,
            };
            let svg = render_svg(&spec)?;
            let mut w = writer(args.out.as_deref())?;
            w.write_all(svg.as_bytes())?;
            w.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match e.downcast_ref::<Error>() {
                Some(err @ Error::InvalidRenderSpec(_)) => {
                    eprintln!("error: {err}");
                    return ExitCode::from(2);
                }
                Some(err) => eprintln!("error: {err}"),
                None => eprintln!("error: {e:#}"),
            }
            ExitCode::from(1)
        }
    }
}
