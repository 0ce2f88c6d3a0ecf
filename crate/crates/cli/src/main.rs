use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use redraw::bounds::{optimize_growth, ConstraintKind};
use redraw::comb::{
    build_k_nested_double_chain, build_k_nested_regular, tutte_count, CombTriangulation,
};
use redraw::drawings::{
    classify_csv, classify_drawings, count_drawings, count_geometric_triangulations,
    count_mappings, count_polygonalizations, enumerate_geometric_triangulations, find_drawings,
    recursive_layer_count, render_svg, Backend, GeomTriangulation, SearchConfig,
};
use redraw::pointsets::{gen_double_chain, gen_nested_triangles, PointSet};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "redraw",
    version,
    about = "Count drawings of triangulations on point sets"
)]
struct Cli {
    /// Worker threads for the exhaustive searches.
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,

    /// Override every size guard (same as REDRAW_MAX_N).
    #[arg(long, global = true)]
    max_n: Option<usize>,

    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a point set.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
    },
    /// Emit a combinatorial triangulation.
    Build {
        #[command(subcommand)]
        family: BuildFamily,
    },
    /// Triangulations of a triangle with N interior vertices.
    Tutte { n: usize },
    /// Count (or list) the triangulations of a point set.
    Enumerate {
        #[arg(long)]
        points: PathBuf,
        /// Print every triangulation as one JSON document per line.
        #[arg(long)]
        list: bool,
    },
    /// Count drawings of a triangulation on a point set.
    CountDrawings(CountArgs),
    /// Histogram of combinatorial classes over all triangulations.
    Classify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
    },
    /// Count simple polygons on a point set.
    Polygons {
        #[arg(long)]
        points: PathBuf,
    },
    /// Drawings generated layer by layer on the balanced double chain.
    LayerCount { k: usize },
    /// Maximize the growth rate of the layer recursion.
    Bounds {
        #[arg(long, value_enum, default_value_t = Constraint::Paper)]
        constraint: Constraint,
        #[arg(long, default_value_t = 1e-12)]
        tolerance: f64,
    },
    /// Render a drawing as SVG.
    Render(RenderArgs),
    /// Parse and re-emit a point set, triangulation or drawing.
    Validate {
        #[arg(long, conflicts_with_all = ["triangulation", "drawing"])]
        points: Option<PathBuf>,
        #[arg(long, conflicts_with = "drawing")]
        triangulation: Option<PathBuf>,
        #[arg(long)]
        drawing: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenFamily {
    /// Upper chain of UPPER points, lower chain of LOWER points.
    DoubleChain {
        #[arg(long)]
        upper: usize,
        #[arg(long)]
        lower: usize,
    },
    /// Nested triangles on N points.
    NestedTriangles {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum BuildFamily {
    /// Nested regular triangulation on N vertices.
    NestedRegular {
        #[arg(long)]
        n: usize,
    },
    /// K-layer nested double chain triangulation.
    NestedDoubleChain {
        #[arg(long)]
        k: usize,
    },
}

#[derive(Args)]
struct CountArgs {
    /// Interior points of the upper chain. With --l (and t + l = 8) this
    /// counts the one-layer nested double chain on that double chain.
    #[arg(long, requires = "l", conflicts_with_all = ["triangulation", "points"])]
    t: Option<usize>,
    #[arg(long, requires = "t")]
    l: Option<usize>,
    #[arg(long, requires = "points")]
    triangulation: Option<PathBuf>,
    #[arg(long, requires = "triangulation")]
    points: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = BackendArg::Direct)]
    backend: BackendArg,
    /// Also report the number of vertex bijections.
    #[arg(long)]
    mappings: bool,
    /// Write the drawings found, one JSON document per line.
    #[arg(long)]
    witnesses: Option<PathBuf>,
}

#[derive(Args)]
struct RenderArgs {
    #[arg(long, conflicts_with_all = ["triangulation", "points"])]
    drawing: Option<PathBuf>,
    #[arg(long, requires = "points")]
    triangulation: Option<PathBuf>,
    #[arg(long)]
    points: Option<PathBuf>,
    /// Which drawing of the triangulation to render, in edge-list order.
    #[arg(long, default_value_t = 0)]
    index: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Direct,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum Constraint {
    Paper,
    Balance,
    None,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

/// Both backends ran and returned different counts.
#[derive(Debug)]
struct Disagreement {
    direct: u64,
    oracle: u64,
}

impl std::fmt::Display for Disagreement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "backends disagree: direct {}, oracle {}",
            self.direct, self.oracle
        )
    }
}

impl std::error::Error for Disagreement {}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        return Ok(s);
    }
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_points(path: &Path) -> Result<PointSet> {
    Ok(PointSet::from_json(&read_input(path)?)?)
}

fn load_comb(path: &Path) -> Result<CombTriangulation> {
    Ok(CombTriangulation::from_json(&read_input(path)?)?)
}

fn load_drawing(path: &Path) -> Result<GeomTriangulation> {
    Ok(GeomTriangulation::from_json(&read_input(path)?)?)
}

fn json_lines(items: &[GeomTriangulation]) -> String {
    items.iter().map(|g| g.to_json() + "\n").collect()
}

fn run(cli: Cli) -> Result<String> {
    let mut cfg = SearchConfig::from_env().with_jobs(cli.jobs);
    if let Some(n) = cli.max_n {
        cfg.max_enumerate_n = n;
        cfg.max_polygon_n = n;
        cfg.max_direct_n = n;
    }
    let out = match cli.command {
        Command::Gen { family } => {
            (match family {
                GenFamily::DoubleChain { upper, lower } => {
                    gen_double_chain(upper, lower)?.to_json()
                }
                GenFamily::NestedTriangles { n } => gen_nested_triangles(n)?.to_json(),
            }) + "\n"
        }
        Command::Build { family } => {
            (match family {
                BuildFamily::NestedRegular { n } => build_k_nested_regular(n)?.to_json(),
                BuildFamily::NestedDoubleChain { k } => build_k_nested_double_chain(k)?.to_json(),
            }) + "\n"
        }
        Command::Tutte { n } => format!("{}\n", tutte_count(n)?),
        Command::Enumerate { points, list } => {
            let ps = load_points(&points)?;
            if list {
                json_lines(&enumerate_geometric_triangulations(&ps, &cfg)?)
            } else {
                format!("{}\n", count_geometric_triangulations(&ps, &cfg)?)
            }
        }
        Command::CountDrawings(args) => count_command(args, &cfg)?,
        Command::Classify { points, format } => {
            let classes = classify_drawings(&load_points(&points)?, &cfg)?;
            match format {
                TableFormat::Csv => classify_csv(&classes),
                TableFormat::Json => {
                    let rows: Vec<_> = classify_csv(&classes)
                        .lines()
                        .skip(1)
                        .map(|l| {
                            let (h, m) = l.split_once(',').expect("two columns");
                            json!({"code_hash": h, "multiplicity": m.parse::<u64>().expect("integer")})
                        })
                        .collect();
                    serde_json::to_string(&rows)? + "\n"
                }
            }
        }
        Command::Polygons { points } => format!(
            "{}\n",
            count_polygonalizations(&load_points(&points)?, &cfg)?
        ),
        Command::LayerCount { k } => format!("{}\n", recursive_layer_count(k)?),
        Command::Bounds {
            constraint,
            tolerance,
        } => {
            let kind = match constraint {
                Constraint::Paper => ConstraintKind::PaperEqn1,
                Constraint::Balance => ConstraintKind::SymmetricBalance,
                Constraint::None => ConstraintKind::None,
            };
            optimize_growth(kind, tolerance)?.to_json() + "\n"
        }
        Command::Render(args) => {
            let g = match (args.drawing, args.triangulation, args.points) {
                (Some(d), _, _) => load_drawing(&d)?,
                (None, Some(t), Some(p)) => {
                    let drawings =
                        find_drawings(&load_comb(&t)?, &load_points(&p)?, Backend::Direct, &cfg)?;
                    let count = drawings.len();
                    drawings.into_iter().nth(args.index).with_context(|| {
                        format!("drawing {} requested, {count} exist", args.index)
                    })?
                }
                _ => bail!("render needs --drawing, or --triangulation with --points"),
            };
            render_svg(&g)
        }
        Command::Validate {
            points,
            triangulation,
            drawing,
        } => {
            (match (points, triangulation, drawing) {
                (Some(p), None, None) => load_points(&p)?.to_json(),
                (None, Some(t), None) => load_comb(&t)?.to_json(),
                (None, None, Some(d)) => load_drawing(&d)?.to_json(),
                _ => bail!("validate needs exactly one of --points, --triangulation, --drawing"),
            }) + "\n"
        }
    };
    Ok(out)
}

fn count_command(args: CountArgs, cfg: &SearchConfig) -> Result<String> {
    let (t, ps) = match (args.t, args.l, args.triangulation, args.points) {
        (Some(t), Some(l), None, None) => (
            build_k_nested_double_chain(1)?,
            gen_double_chain(t + 2, l + 2)?,
        ),
        (None, None, Some(tp), Some(pp)) => (load_comb(&tp)?, load_points(&pp)?),
        _ => bail!("count-drawings needs --t and --l, or --triangulation and --points"),
    };
    let mut out = String::new();
    let mut witnesses = Vec::new();
    match args.backend {
        BackendArg::Direct | BackendArg::Oracle => {
            let backend = if matches!(args.backend, BackendArg::Direct) {
                Backend::Direct
            } else {
                Backend::Oracle
            };
            if args.witnesses.is_some() {
                witnesses = find_drawings(&t, &ps, backend, cfg)?;
                out += &format!("{}\n", witnesses.len());
            } else {
                out += &format!("{}\n", count_drawings(&t, &ps, backend, cfg)?);
            }
        }
        BackendArg::Both => {
            let direct = find_drawings(&t, &ps, Backend::Direct, cfg)?;
            let oracle = find_drawings(&t, &ps, Backend::Oracle, cfg)?;
            if direct != oracle {
                return Err(Disagreement {
                    direct: direct.len() as u64,
                    oracle: oracle.len() as u64,
                }
                .into());
            }
            out += &format!("{}\n{}\n", direct.len(), oracle.len());
            witnesses = direct;
        }
    }
    if args.mappings {
        out += &format!("mappings {}\n", count_mappings(&t, &ps, cfg)?);
    }
    if let Some(path) = args.witnesses {
        fs::write(&path, json_lines(&witnesses))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(out)
}

fn error_object(e: &anyhow::Error) -> serde_json::Value {
    if let Some(d) = e.downcast_ref::<Disagreement>() {
        return json!({"error": "backend_disagreement", "message": d.to_string(), "direct": d.direct, "oracle": d.oracle});
    }
    let kind = e
        .downcast_ref::<redraw::Error>()
        .map_or("error", |r| r.kind());
    json!({"error": kind, "message": format!("{e:#}")})
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = cli.output.clone();
    let result = run(cli).and_then(|text| match &output {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_object(&e));
            ExitCode::FAILURE
        }
    }
}
