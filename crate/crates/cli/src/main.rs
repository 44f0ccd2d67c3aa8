//! `honeycombs`: classify, render and mesh regular honeycombs `{p,q,r}`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use honeycombs::honeycomb::{enumerate_edges, inradius};
use honeycombs::mesh::{cull, export_obj, export_stl, mesh_edges};
use honeycombs::render::{
    colorize, default_viewport, depth_field, save_png, solid_image, with_workers, Centering, RenderSettings, RgbImage,
};
use honeycombs::schlafli::dihedral_angle;
use honeycombs::simplex::build_simplex;
use honeycombs::{ElementType, Error, ExtendedInt, Geometry, Palette, SchlafliSymbol, ThicknessPolicy, Viewport};

const EXIT_USAGE: u8 = 2;
const EXIT_FAILURE: u8 = 3;

#[derive(Parser, Debug)]
#[command(name = "honeycombs", version, about = "Regular honeycombs {p,q,r}: classification, boundary images and printable meshes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print geometry, vertex and cell types of each symbol.
    Classify {
        /// Symbols such as `{4,3,7}`, `4,3,7`, `437` or `i33`.
        #[arg(required = true)]
        symbols: Vec<String>,
    },
    /// Render the boundary-at-infinity image of a hyperbolic honeycomb.
    Render(RenderArgs),
    /// Render a grid of symbols into `pqr.png` files plus a manifest.
    Table(TableArgs),
    /// Build a printable tube mesh of a honeycomb's edges.
    Mesh(MeshArgs),
    /// Write the honeycomb's edges as text, one `ax ay az bx by bz` per line.
    Edges(EdgeArgs),
}

#[derive(Args, Debug, Clone)]
struct ImageOpts {
    /// Image size as `WxH`.
    #[arg(long, default_value = "512x512", value_parser = parse_res)]
    res: (usize, usize),
    #[arg(long, value_enum, default_value_t = CenterArg::Auto)]
    center: CenterArg,
    /// Explicit window `cx,cy,half` on the boundary plane; overrides `--center`.
    #[arg(long, value_parser = parse_viewport)]
    viewport: Option<[f64; 3]>,
    /// Banana radius in each vertex disk's hyperbolic metric; 0 disables edges.
    #[arg(long, default_value_t = 0.025)]
    banana_radius: f64,
    #[arg(long, default_value_t = 1.0)]
    rate_k: f64,
    #[arg(long, default_value_t = 4000)]
    max_iter: u32,
    /// Where depth 0 sits on the colour hexagon, in [0, 6).
    #[arg(long, default_value_t = 0.0)]
    palette_offset: f64,
    /// Direction of travel around the hexagon: 1 or -1.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    palette_direction: i32,
    /// Worker threads; 0 uses all available cores.
    #[arg(long, default_value_t = 0)]
    workers: usize,
}

#[derive(Args, Debug)]
struct RenderArgs {
    #[arg(long)]
    symbol: String,
    #[command(flatten)]
    image: ImageOpts,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct TableArgs {
    /// Values of p, e.g. `3`, `3-7,i` or `3,4,5`.
    #[arg(long, default_value = "3")]
    p: String,
    #[arg(long, default_value = "3-7,i")]
    q: String,
    #[arg(long, default_value = "3-7,i")]
    r: String,
    #[command(flatten)]
    image: ImageOpts,
    #[arg(long)]
    out_dir: PathBuf,
}

#[derive(Args, Debug, Clone)]
struct EnumOpts {
    #[arg(long)]
    symbol: String,
    /// Edges shorter than this (euclidean, in the unit ball) are not kept.
    #[arg(long, default_value_t = 0.02)]
    min_length: f64,
    /// Maximum number of reflections from the seed edge.
    #[arg(long, default_value_t = 24)]
    max_depth: usize,
}

#[derive(Args, Debug)]
struct MeshArgs {
    #[command(flatten)]
    edges: EnumOpts,
    #[arg(long, value_enum, default_value_t = PolicyArg::Accurate)]
    policy: PolicyArg,
    /// Tube radius at the ball's center (ball units); the euclidean radius
    /// for the constant policy.
    #[arg(long, default_value_t = 0.03)]
    r0: f64,
    /// Millimetres per ball unit.
    #[arg(long, default_value_t = 50.0)]
    scale_mm: f64,
    /// Thinnest printable tube diameter in millimetres.
    #[arg(long, default_value_t = 1.0)]
    min_diam_mm: f64,
    #[arg(long, default_value_t = 16)]
    rings: usize,
    #[arg(long, default_value_t = 12)]
    around: usize,
    #[arg(long, default_value_t = 0)]
    workers: usize,
    /// Output file; `.obj` writes OBJ, anything else binary STL.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args, Debug)]
struct EdgeArgs {
    #[command(flatten)]
    edges: EnumOpts,
    /// Output file; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum CenterArg {
    Cell,
    Edge,
    Auto,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum PolicyArg {
    Accurate,
    Clamped,
    Constant,
}

fn parse_res(s: &str) -> Result<(usize, usize), String> {
    let (w, h) = s.split_once(['x', 'X']).ok_or("expected WxH")?;
    let w: usize = w.trim().parse().map_err(|_| "bad width")?;
    let h: usize = h.trim().parse().map_err(|_| "bad height")?;
    if w == 0 || h == 0 {
        return Err("resolution must be at least 1x1".into());
    }
    Ok((w, h))
}

fn parse_viewport(s: &str) -> Result<[f64; 3], String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|t| t.trim().parse::<f64>().map_err(|_| format!("bad number `{t}`")))
        .collect::<Result<_, _>>()?;
    match v[..] {
        [cx, cy, half] if half > 0.0 && v.iter().all(|x| x.is_finite()) => Ok([cx, cy, half]),
        _ => Err("expected cx,cy,half with half > 0".into()),
    }
}

/// Parses `3-7,i`-style term lists, keeping order and dropping repeats.
fn parse_terms(s: &str) -> Result<Vec<ExtendedInt>, String> {
    let mut out: Vec<ExtendedInt> = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let items: Vec<ExtendedInt> = match part.split_once('-').or_else(|| part.split_once("..")) {
            Some((a, b)) => {
                let (a, b): (u32, u32) = (
                    a.trim().parse().map_err(|_| format!("bad range `{part}`"))?,
                    b.trim().parse().map_err(|_| format!("bad range `{part}`"))?,
                );
                (a..=b)
                    .map(|n| ExtendedInt::new(n).map_err(|e| e.to_string()))
                    .collect::<Result<_, _>>()?
            }
            None => vec![part.parse::<ExtendedInt>().map_err(|e| e.to_string())?],
        };
        for t in items {
            if !out.contains(&t) {
                out.push(t);
            }
        }
    }
    if out.is_empty() {
        return Err(format!("empty term list `{s}`"));
    }
    Ok(out)
}

/// Failure of a subcommand, mapped to an exit code.
enum Failure {
    Usage(String),
    Compute(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::MalformedSymbol(_) | Error::TermOutOfRange(_) | Error::InvalidArgument(_) => {
                Failure::Usage(e.to_string())
            }
            other => Failure::Compute(other.to_string()),
        }
    }
}

fn parse_symbol(s: &str) -> Result<SchlafliSymbol, Failure> {
    s.parse::<SchlafliSymbol>().map_err(Failure::from)
}

fn classify_line(s: SchlafliSymbol) -> String {
    let mut line = format!(
        "{s}: {}, vertices: {}, cells: {}",
        s.geometry(),
        s.vertex_type(),
        s.cell_type()
    );
    let _ = write!(line, ", dihedral: {:.6}°", 360.0 / r_value(s.r));
    if let Ok(a) = dihedral_angle(s.p, s.q) {
        let _ = write!(line, ", euclidean cell dihedral: {:.6}°", a.to_degrees());
    }
    if s.geometry() == Geometry::Hyperbolic && s.cell_type() == ElementType::Material {
        if let Ok(d) = inradius(s) {
            let _ = write!(line, ", inradius: {d:.9}");
        }
    }
    line
}

fn r_value(r: ExtendedInt) -> f64 {
    r.finite().map_or(f64::INFINITY, f64::from)
}

fn palette(opts: &ImageOpts) -> Result<Palette, Failure> {
    if !(0.0..6.0).contains(&opts.palette_offset) {
        return Err(Failure::Usage("--palette-offset must lie in [0, 6)".into()));
    }
    if opts.palette_direction.abs() != 1 {
        return Err(Failure::Usage("--palette-direction must be 1 or -1".into()));
    }
    if !(opts.rate_k > 0.0) {
        return Err(Failure::Usage("--rate-k must be positive".into()));
    }
    Ok(Palette {
        start_offset: opts.palette_offset,
        direction: f64::from(opts.palette_direction),
        rate_k: opts.rate_k,
        ..Palette::default()
    })
}

fn settings(opts: &ImageOpts) -> Result<RenderSettings, Failure> {
    if opts.max_iter == 0 {
        return Err(Failure::Usage("--max-iter must be positive".into()));
    }
    if !(opts.banana_radius >= 0.0) {
        return Err(Failure::Usage("--banana-radius must be non-negative".into()));
    }
    Ok(RenderSettings {
        max_iter: opts.max_iter,
        banana_radius: (opts.banana_radius > 0.0).then_some(opts.banana_radius),
        workers: opts.workers,
        ..RenderSettings::default()
    })
}

fn render_image(s: SchlafliSymbol, opts: &ImageOpts) -> Result<RgbImage, Failure> {
    let sx = build_simplex(s)?;
    let (w, h) = opts.res;
    let vp = match opts.viewport {
        Some([cx, cy, half]) => Viewport::new([cx, cy], half, w, h)?,
        None => {
            let c = match opts.center {
                CenterArg::Cell => Centering::Cell,
                CenterArg::Edge => Centering::Edge,
                CenterArg::Auto => Centering::Auto,
            };
            default_viewport(&sx, c, w, h)?
        }
    };
    let grid = depth_field(&sx, &vp, &settings(opts)?);
    Ok(colorize(&grid, &palette(opts)?)?)
}

fn write_file(path: &Path, bytes: &[u8]) -> Result<(), Failure> {
    fs::write(path, bytes).map_err(|e| Failure::Compute(format!("cannot write {}: {e}", path.display())))
}

fn cmd_classify(symbols: &[String]) -> Result<(), Failure> {
    let parsed: Vec<SchlafliSymbol> = symbols.iter().map(|s| parse_symbol(s)).collect::<Result<_, _>>()?;
    for s in parsed {
        println!("{}", classify_line(s));
    }
    Ok(())
}

fn cmd_render(args: &RenderArgs) -> Result<(), Failure> {
    let s = parse_symbol(&args.symbol)?;
    palette(&args.image)?;
    settings(&args.image)?;
    let img = render_image(s, &args.image)?;
    save_png(&img, &args.out)?;
    Ok(())
}

/// Why a table entry is a placeholder rather than a boundary image.
fn placeholder_reason(s: SchlafliSymbol) -> Option<&'static str> {
    match s.geometry() {
        Geometry::Spherical => Some("spherical"),
        Geometry::Euclidean => Some("euclidean"),
        Geometry::Hyperbolic
            if s.vertex_type() != ElementType::Hyperideal && s.cell_type() != ElementType::Hyperideal =>
        {
            Some("finite volume: the boundary is entirely limit set")
        }
        Geometry::Hyperbolic => None,
    }
}

fn cmd_table(args: &TableArgs) -> Result<(), Failure> {
    let ps = parse_terms(&args.p).map_err(Failure::Usage)?;
    let qs = parse_terms(&args.q).map_err(Failure::Usage)?;
    let rs = parse_terms(&args.r).map_err(Failure::Usage)?;
    palette(&args.image)?;
    settings(&args.image)?;
    fs::create_dir_all(&args.out_dir)
        .map_err(|e| Failure::Compute(format!("cannot create {}: {e}", args.out_dir.display())))?;
    let (w, h) = args.image.res;
    let mut manifest = String::from("file\tsymbol\tstatus\n");
    let mut failures = 0;
    for &p in &ps {
        for &q in &qs {
            for &r in &rs {
                let s = SchlafliSymbol::new(p, q, r);
                let file = format!("{}.png", s.file_stem());
                let path = args.out_dir.join(&file);
                let status = match placeholder_reason(s) {
                    Some(reason) => {
                        let gray = solid_image(w, h, [128, 128, 128]);
                        save_png(&gray, &path).map(|_| format!("placeholder ({reason})"))
                    }
                    None => match render_image(s, &args.image) {
                        Ok(img) => save_png(&img, &path).map(|_| "rendered".to_string()),
                        Err(Failure::Usage(m) | Failure::Compute(m)) => Err(Error::Io(m)),
                    },
                };
                let status = status.unwrap_or_else(|e| {
                    failures += 1;
                    eprintln!("{s}: {e}");
                    format!("failed ({e})")
                });
                let _ = writeln!(manifest, "{file}\t{s}\t{status}");
            }
        }
    }
    write_file(&args.out_dir.join("manifest.tsv"), manifest.as_bytes())?;
    if failures > 0 {
        return Err(Failure::Compute(format!("{failures} table entries failed")));
    }
    Ok(())
}

fn enumerate(opts: &EnumOpts) -> Result<honeycombs::EdgeSet, Failure> {
    let s = parse_symbol(&opts.symbol)?;
    if !(opts.min_length > 0.0) {
        return Err(Failure::Usage("--min-length must be positive".into()));
    }
    Ok(enumerate_edges(s, opts.min_length, opts.max_depth)?)
}

fn cmd_mesh(args: &MeshArgs) -> Result<(), Failure> {
    if !(args.scale_mm > 0.0) || !(args.min_diam_mm > 0.0) {
        return Err(Failure::Usage("--scale-mm and --min-diam-mm must be positive".into()));
    }
    let min_diam = args.min_diam_mm / args.scale_mm;
    let policy = match args.policy {
        PolicyArg::Accurate => ThicknessPolicy::Accurate { r0: args.r0 },
        PolicyArg::Clamped => ThicknessPolicy::AccurateClamped {
            r0: args.r0,
            min_euclidean_diameter: min_diam,
        },
        PolicyArg::Constant => ThicknessPolicy::ConstantEuclidean { radius: args.r0 },
    };
    policy.validate()?;
    let es = enumerate(&args.edges)?;
    // Accurate tubes drop whatever is too thin to print; the other policies
    // thicken those edges instead, so only dangling edges go.
    let cull_below = if matches!(policy, ThicknessPolicy::Accurate { .. }) { min_diam } else { 0.0 };
    let kept = cull(&es, cull_below, args.r0);
    let build = || mesh_edges(&kept, policy, args.rings, args.around);
    let mesh = with_workers(args.workers, build)?;
    let is_obj = args.out.extension().is_some_and(|e| e.eq_ignore_ascii_case("obj"));
    let bytes = if is_obj {
        let scaled = honeycombs::Mesh {
            vertices: mesh.vertices.iter().map(|&v| v * args.scale_mm).collect(),
            triangles: mesh.triangles.clone(),
        };
        export_obj(&scaled)?.into_bytes()
    } else {
        export_stl(&mesh, args.scale_mm)?
    };
    write_file(&args.out, &bytes)?;
    eprintln!(
        "{} edges enumerated, {} kept, {} triangles",
        es.len(),
        kept.len(),
        mesh.triangles.len()
    );
    Ok(())
}

fn cmd_edges(args: &EdgeArgs) -> Result<(), Failure> {
    let es = enumerate(&args.edges)?;
    let text = es.to_text();
    match &args.out {
        Some(path) => write_file(path, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Classify { symbols } => cmd_classify(symbols),
        Command::Render(a) => cmd_render(a),
        Command::Table(a) => cmd_table(a),
        Command::Mesh(a) => cmd_mesh(a),
        Command::Edges(a) => cmd_edges(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Compute(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(EXIT_FAILURE)
        }
    }
}
