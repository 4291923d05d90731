//! Command-line front end. [`run_cli`] is the whole program; `main` only
//! wires it to the process streams.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::dynamics::{reidentify, right_of, transitivity_check, Extrapolation, SeatingFrame, Trajectory};
use crate::error::{Error, Result};
use crate::format::{
    self, build_concepts, build_exemplars, build_fuzzy, build_network, build_space, build_taxonomy,
    build_tessellation, build_tracks, parse_cspace, region_outline, serialize, DimKindSpec,
    DimSpec, DomainSpec, Loc, RbfSpec, SpaceSpec, Spanned, SvgItem, SvgScene,
};
use crate::rbf::{train_rbf_with, TrainConfig, WidthRule, DEFAULT_CHIMERA_THRESHOLD};
use crate::regions::{combine, Concept};
use crate::space::{ConceptualSpace, DimensionKind, Point};
use crate::taxonomy::{classify_taxonomy, dual_categorize, SubsumptionConfig};
use crate::tessellation::{categorize_by_exemplars, BoundingBox};

pub const DEFAULT_SEED: u64 = 42;

#[derive(Debug, Parser)]
#[command(name = "cspace", version, about = "Conceptual spaces: categorize, combine, track")]
struct Cli {
    /// Seed for every randomized step.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse and build a space file, then print a summary.
    Validate {
        #[arg(long)]
        space: PathBuf,
    },
    /// Nearest-prototype (or k-nearest-exemplar) label of each point.
    Categorize {
        #[arg(long)]
        space: PathBuf,
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        /// Vote among the k nearest exemplars instead of prototypes.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Typicality of a point in a concept.
    Typicality {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        concept: String,
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Conjunction of two concepts.
    Combine {
        #[arg(long)]
        space: PathBuf,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
        /// SVG picture of both regions and their intersection.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Voronoi cells of the prototypes in a 2-D space.
    Tessellate {
        #[arg(long)]
        space: PathBuf,
        /// `x0,y0,x1,y1`; defaults to the space bounds.
        #[arg(long, allow_hyphen_values = true)]
        bbox: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check asserted conjunction values against their conjuncts.
    FuzzyCheck {
        #[arg(long)]
        space: PathBuf,
    },
    /// Train an RBF network on exemplars and print it as a space file.
    RbfTrain {
        #[arg(long)]
        space: PathBuf,
        /// CSV `label,c1,...`; defaults to the file's exemplar lines.
        #[arg(long)]
        exemplars: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = WidthArg::Nearest)]
        width: WidthArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify points with the file's RBF units and flag chimeras.
    RbfClassify {
        #[arg(long)]
        space: PathBuf,
        #[arg(long = "point", required = true, allow_hyphen_values = true)]
        points: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_CHIMERA_THRESHOLD)]
        threshold: f64,
    },
    /// Re-identify objects across an occlusion.
    Track {
        #[arg(long)]
        space: PathBuf,
        /// CSV `object_id,t,c1,...` for pre-gap tracks; defaults to `track pre` lines.
        #[arg(long)]
        pre: Option<PathBuf>,
        /// CSV for post-gap tracks; defaults to `track post` lines.
        #[arg(long)]
        post: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = ModeArg::Linear)]
        mode: ModeArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// "To the right of" in a seating frame, or a transitivity report.
    Rightof {
        #[arg(long, value_enum)]
        frame: FrameArg,
        /// `id=position`, degrees for circular frames.
        #[arg(long = "seat", required = true, allow_hyphen_values = true)]
        seats: Vec<String>,
        x: Option<String>,
        y: Option<String>,
    },
    /// Super- and subconcepts of a concept, or the two-stage reading of a point.
    Classify {
        #[arg(long)]
        space: PathBuf,
        #[arg(long, conflicts_with = "point", required_unless_present = "point")]
        concept: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WidthArg {
    Nearest,
    Shared,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ModeArg {
    Linear,
    Quadratic,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FrameArg {
    Circular,
    Linear,
}

/// Runs one command. Exit codes: 0 success, 1 domain error, 2 usage or
/// input error.
pub fn run_cli<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(stderr, "{e}");
                2
            } else {
                let _ = write!(stdout, "{e}");
                0
            };
            return code;
        }
    };
    let mut out = Vec::new();
    match run(cli, &mut out) {
        Ok(()) => {
            let _ = stdout.write_all(&out);
            0
        }
        Err(e) => {
            let _ = stdout.write_all(&out);
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Parse(_) | Error::Io(_) | Error::InvalidArgument(_) => 2,
        _ => 1,
    }
}

struct Loaded {
    spec: SpaceSpec,
    space: ConceptualSpace,
}

/// Spec only; for commands that need no dimensions.
fn load_spec(path: &Path) -> Result<SpaceSpec> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    Ok(parse_cspace(&text).map_err(|mut e| {
        e.message = format!("{}: {}", path.display(), e.message);
        e
    })?)
}

fn load(path: &Path) -> Result<Loaded> {
    let spec = load_spec(path)?;
    let space = build_space(&spec).map_err(|e| Error::InvalidArgument(format!("{}: {e}", path.display())))?;
    Ok(Loaded { spec, space })
}

fn parse_point(space: &ConceptualSpace, text: &str) -> Result<Point> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| Error::InvalidArgument(format!("bad coordinate `{s}` in `{text}`")))
        })
        .collect::<Result<Vec<_>>>()?;
    space
        .point(coords)
        .map_err(|e| Error::InvalidArgument(format!("point `{text}`: {e}")))
}

fn find_concept<'a>(concepts: &'a [Concept], label: &str) -> Result<&'a Concept> {
    concepts
        .iter()
        .find(|c| c.label() == label)
        .ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

fn coords_csv(p: &Point) -> String {
    p.coords().iter().map(|v| v.to_string()).collect::<Vec<_>>().join(",")
}

fn bbox_of(space: &ConceptualSpace, arg: Option<&str>) -> Result<BoundingBox> {
    match arg {
        Some(text) => {
            let v = text
                .split(',')
                .map(|s| s.trim().parse::<f64>().ok().filter(|v| v.is_finite()))
                .collect::<Option<Vec<_>>>();
            match v.as_deref() {
                Some(&[x0, y0, x1, y1]) if x0 < x1 && y0 < y1 => Ok(BoundingBox::new(x0, y0, x1, y1)),
                _ => Err(Error::InvalidArgument(format!("bad bounding box `{text}`; expected x0,y0,x1,y1"))),
            }
        }
        None => {
            let b = space.chart_bounds();
            if b.len() != 2 {
                return Err(Error::UnsupportedMetric("pictures need a 2-D space".into()));
            }
            Ok(BoundingBox::new(b[0].0, b[1].0, b[0].1, b[1].1))
        }
    }
}

fn xy(p: &Point) -> [f64; 2] {
    [p.coords()[0], p.coords()[1]]
}

fn run(cli: Cli, out: &mut Vec<u8>) -> Result<()> {
    let seed = cli.seed;
    match cli.command {
        Command::Validate { space: path } => {
            let spec = load_spec(&path)?;
            if spec.dims.is_empty() {
                build_fuzzy(&spec)?.witnesses()?;
                writeln!(out, "ok dims=0 fuzzy={} conjunctions={}", spec.fuzzy.len(), spec.conjunctions.len())?;
                return Ok(());
            }
            let Loaded { spec, space } = load(&path)?;
            let concepts = build_concepts(&spec, &space, seed)?;
            if !spec.prototypes.is_empty() {
                build_tessellation(&spec, &space, &concepts)?;
            }
            build_exemplars(&spec, &space)?;
            build_network(&spec, &space)?;
            build_tracks(&spec, &space)?;
            build_fuzzy(&spec)?.witnesses()?;
            let n_concepts = concepts.len();
            if !spec.isa.is_empty() {
                build_taxonomy(&spec, &space, concepts, SubsumptionConfig { seed, ..Default::default() })?;
            }
            writeln!(
                out,
                "ok dims={} domains={} concepts={} prototypes={} exemplars={} rbf={} isa={} tracks={} fuzzy={}",
                space.dims(),
                space.domains().len(),
                n_concepts,
                spec.prototypes.len(),
                spec.exemplars.len(),
                spec.rbf_units.len(),
                spec.isa.len(),
                spec.tracks.len(),
                spec.fuzzy.len()
            )?;
        }
        Command::Categorize { space, points, k } => {
            let Loaded { spec, space } = load(&space)?;
            match k {
                Some(k) => {
                    let exemplars = build_exemplars(&spec, &space)?;
                    for p in &points {
                        let label = categorize_by_exemplars(&space, &exemplars, &parse_point(&space, p)?, k)?;
                        writeln!(out, "{label}")?;
                    }
                }
                None => {
                    let concepts = if spec.prototypes.is_empty() {
                        build_concepts(&spec, &space, seed)?
                    } else {
                        Vec::new()
                    };
                    let tess = build_tessellation(&spec, &space, &concepts)?;
                    for p in &points {
                        writeln!(out, "{}", tess.categorize(&space, &parse_point(&space, p)?)?)?;
                    }
                }
            }
        }
        Command::Typicality { space, concept, point } => {
            let Loaded { spec, space } = load(&space)?;
            let concepts = build_concepts(&spec, &space, seed)?;
            let p = parse_point(&space, &point)?;
            writeln!(out, "{}", find_concept(&concepts, &concept)?.typicality(&space, &p)?)?;
        }
        Command::Combine { space, a, b, point, out: svg } => {
            let Loaded { spec, space } = load(&space)?;
            let concepts = build_concepts(&spec, &space, seed)?;
            let (ca, cb) = (find_concept(&concepts, &a)?, find_concept(&concepts, &b)?);
            let both = combine(&space, ca, cb, seed)?;
            let p = point.as_deref().map(|t| parse_point(&space, t)).transpose()?;
            writeln!(out, "# seed={seed}")?;
            writeln!(out, "label,sigma,typicality,{}", space.dimension_names().join(","))?;
            for c in [ca, cb, &both] {
                let t = match &p {
                    Some(p) => c.typicality(&space, p)?.to_string(),
                    None => String::new(),
                };
                writeln!(out, "{},{},{},{}", c.label(), c.sigma(), t, coords_csv(c.prototype()))?;
            }
            if let Some(path) = svg {
                let bbox = bbox_of(&space, None)?;
                let mut scene = SvgScene::new(bbox);
                for (c, highlight) in [(ca, false), (cb, false), (&both, true)] {
                    scene.push(SvgItem::Region {
                        label: c.label().to_string(),
                        polygon: region_outline(&space, c.region(), bbox)?,
                        highlight,
                    });
                }
                if let Some(p) = &p {
                    scene.push(SvgItem::Marker { label: "point".into(), at: xy(p) });
                }
                format::emit_svg(&scene, &path)?;
            }
        }
        Command::Tessellate { space, bbox, out: svg } => {
            let Loaded { spec, space } = load(&space)?;
            let concepts = if spec.prototypes.is_empty() {
                build_concepts(&spec, &space, seed)?
            } else {
                Vec::new()
            };
            let tess = build_tessellation(&spec, &space, &concepts)?;
            let bbox = bbox_of(&space, bbox.as_deref())?;
            let cells = tess.tessellate_2d(&space, bbox)?;
            writeln!(out, "# seed={seed}")?;
            writeln!(out, "label,area,polygon")?;
            for cell in &cells {
                let poly = cell
                    .polygon
                    .iter()
                    .map(|p| format!("{} {}", p[0], p[1]))
                    .collect::<Vec<_>>()
                    .join(";");
                writeln!(out, "{},{},{}", cell.label, cell.area(), poly)?;
            }
            if let Some(path) = svg {
                let mut scene = SvgScene::new(bbox);
                for cell in cells {
                    scene.push(SvgItem::Cell(cell));
                }
                for (label, p) in tess.prototypes() {
                    scene.push(SvgItem::Marker { label: label.clone(), at: xy(p) });
                }
                format::emit_svg(&scene, &path)?;
            }
        }
        Command::FuzzyCheck { space } => {
            let spec = load_spec(&space)?;
            for (asserted, report) in build_fuzzy(&spec)?.witnesses()? {
                let norms = report
                    .by_norm
                    .iter()
                    .map(|(n, v)| format!("{}={v}", n.name()))
                    .collect::<Vec<_>>()
                    .join(" ");
                writeln!(
                    out,
                    "{} bound={} asserted={} predicate={} individual={} {norms}",
                    if report.violated { "violated" } else { "consistent" },
                    report.bound,
                    asserted.value,
                    asserted.predicate,
                    asserted.individual
                )?;
            }
        }
        Command::RbfTrain { space, exemplars, k, width, out: model } => {
            let Loaded { spec, space } = load(&space)?;
            let data = match exemplars {
                Some(path) => {
                    let file = std::fs::File::open(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                    format::read_exemplars_csv(file, &space)?
                }
                None => build_exemplars(&spec, &space)?,
            };
            let rule = match width {
                WidthArg::Nearest => WidthRule::NearestCenter,
                WidthArg::Shared => WidthRule::Shared,
            };
            let net = train_rbf_with(&space, &data, TrainConfig::new(k, seed).with_width_rule(rule))?;
            let mut model_spec = space_only(&space);
            model_spec.rbf_units = net
                .units()
                .iter()
                .map(|u| {
                    Spanned::new(
                        RbfSpec { label: u.label.clone(), center: u.center.coords().to_vec(), width: u.width },
                        Loc::default(),
                    )
                })
                .collect();
            let text = format!("# seed={seed} k={k}\n{}", serialize(&model_spec));
            match model {
                Some(path) => std::fs::write(&path, text)?,
                None => out.extend_from_slice(text.as_bytes()),
            }
        }
        Command::RbfClassify { space, points, threshold } => {
            let Loaded { spec, space } = load(&space)?;
            let net = build_network(&spec, &space)?
                .ok_or_else(|| Error::InvalidArgument("space file has no rbf units".into()))?;
            writeln!(out, "label,confidence,ambiguous,ratio")?;
            for p in &points {
                let x = parse_point(&space, p)?;
                let c = net.classify(&space, &x)?;
                let chimera = net.detect_chimera(&space, &x, threshold)?;
                writeln!(out, "{},{},{},{}", c.label, c.confidence, chimera.ambiguous, chimera.ratio)?;
            }
        }
        Command::Track { space, pre, post, mode, out: svg } => {
            let Loaded { spec, space } = load(&space)?;
            let (file_pre, file_post) = build_tracks(&spec, &space)?;
            let read = |path: Option<PathBuf>, fallback: Vec<Trajectory>| -> Result<Vec<Trajectory>> {
                match path {
                    Some(path) => {
                        let file = std::fs::File::open(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                        format::read_trajectories_csv(file, &space)
                    }
                    None => Ok(fallback),
                }
            };
            let (pre, post) = (read(pre, file_pre)?, read(post, file_post)?);
            let mode = match mode {
                ModeArg::Linear => Extrapolation::ConstantVelocity,
                ModeArg::Quadratic => Extrapolation::Quadratic,
            };
            let r = reidentify(&space, &pre, &post, mode)?;
            writeln!(out, "pre,post,cost")?;
            for m in &r.matches {
                writeln!(out, "{},{},{}", m.pre_id, m.post_id, m.cost)?;
            }
            for id in &r.unmatched_pre {
                writeln!(out, "{id},,")?;
            }
            for id in &r.unmatched_post {
                writeln!(out, ",{id},")?;
            }
            if let Some(path) = svg {
                let mut scene = SvgScene::new(bbox_of(&space, None)?);
                for t in pre.iter().chain(&post) {
                    scene.push(SvgItem::Path {
                        label: t.object_id().to_string(),
                        points: t.samples().iter().map(|(_, p)| xy(p)).collect(),
                        dashed: false,
                    });
                }
                for m in &r.matches {
                    let from = pre.iter().find(|t| t.object_id() == m.pre_id).and_then(|t| t.last());
                    let to = post.iter().find(|t| t.object_id() == m.post_id).and_then(|t| t.first());
                    if let (Some((_, a)), Some((_, b))) = (from, to) {
                        scene.push(SvgItem::Path {
                            label: format!("{}->{}", m.pre_id, m.post_id),
                            points: vec![xy(a), xy(b)],
                            dashed: true,
                        });
                    }
                }
                format::emit_svg(&scene, &path)?;
            }
        }
        Command::Rightof { frame, seats, x, y } => {
            let seats = seats
                .iter()
                .map(|s| {
                    let (id, pos) = s
                        .split_once('=')
                        .ok_or_else(|| Error::InvalidArgument(format!("seat `{s}` is not `id=position`")))?;
                    let pos = pos
                        .trim()
                        .parse::<f64>()
                        .ok()
                        .filter(|v| v.is_finite())
                        .ok_or_else(|| Error::InvalidArgument(format!("bad seat position in `{s}`")))?;
                    Ok((id.trim().to_string(), pos))
                })
                .collect::<Result<Vec<_>>>()?;
            let frame = match frame {
                FrameArg::Circular => SeatingFrame::circular([0.0, 0.0], seats)?,
                FrameArg::Linear => SeatingFrame::linear(seats)?,
            };
            match (x, y) {
                (Some(x), Some(y)) => writeln!(out, "{}", right_of(&frame, &x, &y)?)?,
                (None, None) => {
                    let report = transitivity_check(&frame, &frame.ids())?;
                    writeln!(out, "transitive={}", report.transitive)?;
                    writeln!(out, "x,y,z")?;
                    for (a, b, c) in &report.counterexamples {
                        writeln!(out, "{a},{b},{c}")?;
                    }
                }
                _ => return Err(Error::InvalidArgument("give both occupants or neither".into())),
            }
        }
        Command::Classify { space, concept, point } => {
            let Loaded { spec, space } = load(&space)?;
            let concepts = build_concepts(&spec, &space, seed)?;
            let tax = build_taxonomy(&spec, &space, concepts, SubsumptionConfig { seed, ..Default::default() })?;
            if let Some(label) = concept {
                let c = classify_taxonomy(&tax, &label)?;
                writeln!(out, "superconcepts={}", c.superconcepts.join(","))?;
                writeln!(out, "subconcepts={}", c.subconcepts.join(","))?;
            } else if let Some(point) = point {
                let tess = tax.tessellation(&space)?;
                let d = dual_categorize(&space, &tax, &tess, &parse_point(&space, &point)?)?;
                writeln!(out, "type1={}", d.type1_label)?;
                writeln!(out, "typicality={}", d.typicality)?;
                writeln!(out, "ancestors={}", d.type2_ancestors.join(","))?;
            }
        }
    }
    Ok(())
}

/// Domain and dimension lines describing `space`.
fn space_only(space: &ConceptualSpace) -> SpaceSpec {
    let mut spec = SpaceSpec::default();
    if space.inter_exponent() != 1.0 {
        spec.inter_exponent = Some(Spanned::new(space.inter_exponent(), Loc::default()));
    }
    for d in space.domains() {
        let exponent = (d.exponent != 2.0).then_some(d.exponent);
        let weight = (d.weight != 1.0).then_some(d.weight);
        if exponent.is_some() || weight.is_some() {
            spec.domains.push(Spanned::new(
                DomainSpec { name: d.name.clone(), exponent, weight },
                Loc::default(),
            ));
        }
        for dim in &d.dimensions {
            let kind = match dim.kind {
                DimensionKind::Linear { min, max } => DimKindSpec::Linear { min, max },
                DimensionKind::Circular { period } => DimKindSpec::Circular { period },
            };
            spec.dims.push(Spanned::new(
                DimSpec {
                    domain: d.name.clone(),
                    name: dim.name.clone(),
                    kind,
                    weight: (dim.weight != 1.0).then_some(dim.weight),
                },
                Loc::default(),
            ));
        }
    }
    spec
}
