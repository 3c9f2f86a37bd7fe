use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use icotomo_core::convex::{u5, u_ico, uniqueness_experiment_3d, uniqueness_experiment_slice, UniquenessReport};
use icotomo_core::direction::Direction;
use icotomo_core::experiments::{weyl_experiment, ExperimentConfig};
use icotomo_core::io::{patch_csv, read_json, slice_csv, to_json, InstanceFile, PatchRef, SliceExport};
use icotomo_core::modelset::{ModelSet, ModelSetKind, ModelSetPatch};
use icotomo_core::reconstruction::{reconstruct, uniqueness};
use icotomo_core::slicing::{slice_patch, slices_by_height};
use icotomo_core::tomography::{grid, switching_pair, xray};
use icotomo_core::window::{Shift, Window};
use icotomo_core::{GoldenRat, QVec3};

mod selftest;

#[derive(Parser)]
#[command(name = "icotomo", version, about = "Exact discrete tomography of icosahedral model sets")]
struct Cli {
    /// Worker threads for parallel stages (default: all cores).
    #[arg(long, global = true)]
    workers: Option<usize>,
    /// Random seed; overrides the config file.
    #[arg(long, global = true, env = "ICOTOMO_SEED")]
    seed: Option<u64>,
    /// Experiment configuration (JSON).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write JSON here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    B,
    F,
}

impl From<Kind> for ModelSetKind {
    fn from(k: Kind) -> ModelSetKind {
        match k {
            Kind::B => ModelSetKind::B,
            Kind::F => ModelSetKind::F,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum DirSet {
    U5,
    Uico,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a patch Λ ∩ B_R(a).
    Generate {
        #[arg(long = "type", value_enum, default_value = "b")]
        kind: Kind,
        #[arg(long, default_value = "15")]
        radius: String,
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        center: String,
        /// Window shift s, exact coordinates.
        #[arg(long, default_value = "0.001,0.001,0.001", allow_hyphen_values = true)]
        shift: String,
        /// Translate t ∈ ½Z[τ]³.
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        t: String,
        /// Also write the points as CSV.
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// Export the slice of a patch through its point with the given index.
    Slice {
        patch: PathBuf,
        #[arg(long)]
        lambda_index: usize,
        #[arg(long)]
        csv: Option<PathBuf>,
    },
    /// X-ray of a point set (patch file or JSON point list). With two
    /// directions and `--patch`, writes a reconstruction instance instead.
    Xray {
        input: PathBuf,
        #[arg(long = "dir", required = true, allow_hyphen_values = true)]
        dirs: Vec<String>,
        /// Candidate patch referenced by the instance file.
        #[arg(long)]
        patch: Option<PathBuf>,
    },
    /// Grid of a point set with respect to at least two directions.
    Grid {
        input: PathBuf,
        #[arg(long = "dir", required = true, allow_hyphen_values = true)]
        dirs: Vec<String>,
    },
    /// Reconstruct a set from an instance file.
    Reconstruct { instance: PathBuf },
    /// Convex-subset uniqueness experiment.
    Uniq {
        patch: PathBuf,
        #[arg(long, value_enum, default_value = "u5")]
        directions: DirSet,
        #[arg(long)]
        samples: Option<usize>,
        /// Number of (largest) slices for the planar experiment.
        #[arg(long, default_value_t = 5)]
        slices: usize,
    },
    /// Decide uniqueness for an instance file.
    UniqInstance { instance: PathBuf },
    /// Star-centroid experiment over increasing radii.
    Weyl {
        /// Comma-separated radii, e.g. 10,20,40.
        #[arg(long)]
        radii: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        center: Option<String>,
    },
    /// Build a switching pair for the given directions inside a patch.
    Switching {
        #[arg(long = "dir", required = true, allow_hyphen_values = true)]
        dirs: Vec<String>,
        #[arg(long = "type", value_enum, default_value = "b")]
        kind: Kind,
        #[arg(long, default_value = "15")]
        radius: String,
        #[arg(long, default_value = "0,0,0", allow_hyphen_values = true)]
        center: String,
    },
    /// Run a quick invariant suite.
    Selftest,
}

fn parse_rat(s: &str) -> Result<GoldenRat> {
    s.parse().map_err(|e| anyhow!("{s:?}: {e}"))
}

fn parse_vec(s: &str) -> Result<QVec3> {
    s.parse().map_err(|e| anyhow!("{s:?}: {e}"))
}

fn load_config(path: Option<&Path>) -> Result<ExperimentConfig> {
    match path {
        Some(p) => read_json(p).with_context(|| format!("reading config {}", p.display())),
        None => Ok(ExperimentConfig::default()),
    }
}

/// Points of a patch file or a plain JSON list of points, plus the model when known.
fn load_points(path: &Path) -> Result<(Vec<QVec3>, Option<ModelSet>)> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    if let Ok(p) = serde_json::from_str::<ModelSetPatch>(&text) {
        return Ok((p.values(), Some(p.model)));
    }
    let pts: Vec<QVec3> = serde_json::from_str(&text).with_context(|| format!("{} is neither a patch nor a point list", path.display()))?;
    Ok((pts, None))
}

fn directions(specs: &[String], model: Option<&ModelSet>) -> Result<Vec<Direction>> {
    let tag = model.map(ModelSet::tag).unwrap_or(ModelSetKind::B.tag());
    specs.iter().map(|s| Ok(Direction::spatial(&parse_vec(s)?, tag)?)).collect()
}

fn emit(out: Option<&Path>, json: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, format!("{json}\n")).with_context(|| format!("writing {}", p.display())),
        None => match writeln!(std::io::stdout().lock(), "{json}") {
            Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
            r => Ok(r?),
        },
    }
}

fn instance_from(path: &Path) -> Result<icotomo_core::reconstruction::TomographyInstance> {
    let file: InstanceFile = read_json(path)?;
    let base = path.parent().unwrap_or(Path::new("."));
    Ok(file.resolve(base)?)
}

fn run(cli: Cli) -> Result<bool> {
    let out = cli.out.as_deref();
    let mut cfg = load_config(cli.config.as_deref())?;
    if cli.seed.is_some() {
        cfg.seed = cli.seed;
    }
    if let Some(w) = cli.workers.or(cfg.workers) {
        rayon::ThreadPoolBuilder::new().num_threads(w).build_global()?;
    }
    match cli.command {
        Command::Generate { kind, radius, center, shift, t, csv } => {
            let window = Window::icosahedron_with_shift(Shift::Exact(parse_vec(&shift)?));
            let model = ModelSet::new(kind.into(), parse_vec(&t)?, window)?;
            let patch = model.patch(&parse_vec(&center)?, &parse_rat(&radius)?)?;
            eprintln!("generated {} points", patch.len());
            if let Some(c) = csv {
                std::fs::write(&c, patch_csv(&patch))?;
            }
            emit(out, &to_json(&patch))?;
        }
        Command::Slice { patch, lambda_index, csv } => {
            let p: ModelSetPatch = read_json(&patch)?;
            let lambda = p.points.get(lambda_index).ok_or_else(|| anyhow!("patch has only {} points", p.len()))?.value();
            let s = slice_patch(&p, &lambda)?;
            let e = SliceExport::from_slice(&s)?;
            eprintln!("slice at height {} with {} points", e.height, e.points.len());
            if let Some(c) = csv {
                std::fs::write(&c, slice_csv(&e))?;
            }
            emit(out, &to_json(&e))?;
        }
        Command::Xray { input, dirs, patch } => {
            let (pts, model) = load_points(&input)?;
            let u = directions(&dirs, model.as_ref())?;
            match (u.as_slice(), patch) {
                ([d], None) => {
                    let x = xray(&pts, d);
                    eprintln!("{} lines, total {}", x.counts.len(), x.total());
                    emit(out, &to_json(&x))?;
                }
                ([d1, d2], Some(p)) => {
                    let file = InstanceFile {
                        directions: [d1.rep.clone(), d2.rep.clone()],
                        xrays: [xray(&pts, d1), xray(&pts, d2)],
                        patch: PatchRef::Path(p),
                    };
                    emit(out, &to_json(&file))?;
                }
                _ => bail!("give one direction, or two directions together with --patch"),
            }
        }
        Command::Grid { input, dirs } => {
            let (pts, model) = load_points(&input)?;
            let g = grid(&pts, &directions(&dirs, model.as_ref())?)?;
            eprintln!("grid has {} points ({} in the input)", g.len(), pts.len());
            emit(out, &to_json(&g))?;
        }
        Command::Reconstruct { instance } => {
            let inst = instance_from(&instance)?;
            let f = reconstruct(&inst)?;
            eprintln!("reconstructed {} points", f.len());
            emit(out, &to_json(&f))?;
        }
        Command::UniqInstance { instance } => {
            let inst = instance_from(&instance)?;
            let u = uniqueness(&inst)?;
            emit(out, &to_json(&u))?;
        }
        Command::Uniq { patch, directions, samples, slices } => {
            let p: ModelSetPatch = read_json(&patch)?;
            let mut sampler = cfg.sampler.clone();
            sampler.seed = cfg.resolved_seed()?;
            if let Some(n) = samples {
                sampler.samples = n;
            }
            let reports: Vec<UniquenessReport> = match directions {
                DirSet::U5 => {
                    let by_h = slices_by_height(&p.values());
                    let mut order: Vec<&Vec<QVec3>> = by_h.values().collect();
                    order.sort_by_key(|v| std::cmp::Reverse(v.len()));
                    let mut reports = Vec::new();
                    for pts in order.into_iter().take(slices) {
                        let s = slice_patch(&p, &pts[0])?;
                        let mut r = uniqueness_experiment_slice(&s.points, &s.disc_center, &s.disc_radius2, &u5(), &sampler)?;
                        r.slice_height = Some(s.height.clone());
                        reports.push(r);
                    }
                    reports
                }
                DirSet::Uico => vec![uniqueness_experiment_3d(&p, &u_ico(p.model.tag()), &sampler)?],
            };
            let collisions: usize = reports.iter().map(|r| r.collisions.len()).sum();
            eprintln!("{} reports, {} collisions", reports.len(), collisions);
            emit(out, &to_json(&reports))?;
            return Ok(collisions == 0 && reports.iter().all(|r| r.all_convex));
        }
        Command::Weyl { radii, center } => {
            if let Some(r) = radii {
                cfg.radii = r.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<_, _>>()?;
            }
            if let Some(c) = center {
                cfg.center = parse_vec(&c)?;
            }
            let rep = weyl_experiment(&cfg)?;
            for e in &rep.entries {
                eprintln!("R={} card={} deviation={:.6}", e.radius, e.count, e.deviation);
            }
            emit(out, &to_json(&rep))?;
        }
        Command::Switching { dirs, kind, radius, center } => {
            let model = ModelSet::new(kind.into(), QVec3::zero(), Window::icosahedron())?;
            let u = directions(&dirs, Some(&model))?;
            let pair = switching_pair(&u, &model, &parse_vec(&center)?, &parse_rat(&radius)?)?;
            eprintln!("switching pair of size {} (k = {})", pair.f.len(), pair.embedding.k);
            emit(out, &to_json(&pair))?;
        }
        Command::Selftest => {
            let results = selftest::run(cfg.resolved_seed()?);
            for (name, ok) in &results {
                eprintln!("{} {name}", if *ok { "PASS" } else { "FAIL" });
            }
            let json: Vec<serde_json::Value> = results.iter().map(|(n, ok)| serde_json::json!({"check": n, "pass": ok})).collect();
            emit(out, &serde_json::to_string_pretty(&json)?)?;
            return Ok(results.iter().all(|r| r.1));
        }
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
