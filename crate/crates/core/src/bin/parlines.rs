//! `parlines`: command line front end.
//!
//! Every numeric input is an exact rational (`3/2`, `-4`) except the mesh offsets and stations,
//! which are decimal floats. Output is deterministic: identical invocations give identical bytes.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use parlines::conics::{
    self, offset_poly_closed_form, offset_poly_elimination, singular_points, ConicKind, ConicSpec, OffsetCurve,
    PointTag,
};
use parlines::curve::{plot_svg, trace_implicit, BBox, Figure, Marker, Point2, SvgStyle, TracedCurve};
use parlines::groebner::{reduced_groebner, GroebnerLimits, Ideal};
use parlines::mesh::{export_mesh, generate_mesh, MeshSpec};
use parlines::poly::PolyJson;
use parlines::rational::{format_rational, parse_rational, to_f64};
use parlines::verify::{verify_paper, VerifyId};
use parlines::{Error, MonomialOrder, MultiPoly, OrderKind, Rational, Result, Ring};

/// `println!` that exits quietly when the reader closes the pipe (`parlines ... | head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        if let Err(e) = writeln!(std::io::stdout().lock(), $($arg)*) {
            if e.kind() == std::io::ErrorKind::BrokenPipe {
                std::process::exit(0);
            }
            panic!("writing to stdout: {e}");
        }
    }};
}

#[derive(Parser)]
#[command(name = "parlines", version, about = "Exact offset curves (parallel lines) of conics")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduced Gröbner basis of an ideal read from a file.
    Groebner(GroebnerArgs),
    /// Implicit polynomial g(x, y) of the parallel lines at distance r.
    OffsetPoly(OffsetArgs),
    /// Singular points of the parallel lines.
    Singular(SingularArgs),
    /// Critical offset, regime and singular point counts.
    Classify(ClassifyArgs),
    /// Traces g(x, y) = 0 over a window and optionally draws it as SVG.
    Trace(TraceArgs),
    /// Layered quadrilateral mesh around an ellipse.
    Mesh(MeshArgs),
    /// Re-derives a published instance and reports pass/fail per check.
    VerifyPaper(VerifyArgs),
}

#[derive(Args)]
struct GroebnerArgs {
    /// A JSON array of polynomials in the serialized form, or a text file with one polynomial per line.
    #[arg(long)]
    input: PathBuf,
    /// `lex`, `grevlex` or `block:k`.
    #[arg(long, default_value = "lex")]
    order: String,
    /// Variable order, most significant first (required for text input).
    #[arg(long, value_delimiter = ',')]
    vars: Option<Vec<String>>,
    #[arg(long, default_value_t = GroebnerLimits::default().max_pairs)]
    max_pairs: usize,
    #[arg(long, default_value_t = GroebnerLimits::default().max_degree)]
    max_degree: u32,
    /// Writes the basis as a JSON array of serialized polynomials.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Clone)]
struct ConicArgs {
    #[arg(long)]
    conic: String,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    r: String,
}

impl ConicArgs {
    fn resolve(&self) -> Result<(ConicSpec, Rational)> {
        let q = |s: &Option<String>| s.as_deref().map(parse_rational).transpose();
        let kind = ConicKind::parse(&self.conic)?;
        let conic = ConicSpec::from_params(kind, q(&self.p)?, q(&self.a)?, q(&self.b)?)?;
        let r = parse_rational(&self.r)?;
        if r <= Rational::from_integer(0.into()) {
            return Err(Error::Param(format!("offset r must be positive, got {}", self.r)));
        }
        Ok((conic, r))
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Closed,
    Elim,
}

#[derive(Args)]
struct OffsetArgs {
    #[command(flatten)]
    conic: ConicArgs,
    #[arg(long, value_enum, default_value = "closed")]
    method: Method,
    /// Writes the polynomial (with the conic recorded under `meta`) as JSON.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args)]
struct SingularArgs {
    #[command(flatten)]
    conic: ConicArgs,
    /// Uses the elimination route instead of the closed forms.
    #[arg(long)]
    elim: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Same as `--format json`.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    conic: ConicArgs,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct TraceArgs {
    /// Polynomial JSON as written by `offset-poly --out`.
    #[arg(long)]
    g: PathBuf,
    /// `x0,x1,y0,y1`.
    #[arg(long, allow_hyphen_values = true)]
    bbox: String,
    #[arg(long, default_value_t = 512)]
    res: usize,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Marks the singular points; needs the conic recorded in the input file.
    #[arg(long)]
    mark_singular: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct MeshArgs {
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: String,
    /// Decimal offsets, e.g. `0.2,0.4,0.6`.
    #[arg(long, value_delimiter = ',')]
    offsets: Vec<f64>,
    /// Decimal y stations, top to bottom, e.g. `3.75,3,2,1,0,-1,-2,-3,-3.75`.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    stations: Vec<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// `1`..`9`, `appendixA`, `appendixB`, `mesh` or `all`.
    id: String,
    /// Prints the JSON report (the default output is one line per check).
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Groebner(a) => groebner_cmd(a),
        Command::OffsetPoly(a) => offset_cmd(a),
        Command::Singular(a) => singular_cmd(a),
        Command::Classify(a) => classify_cmd(a),
        Command::Trace(a) => trace_cmd(a),
        Command::Mesh(a) => mesh_cmd(a),
        Command::VerifyPaper(a) => verify_cmd(a),
    };
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn print_json(v: &Value) {
    out!("{}", serde_json::to_string_pretty(v).expect("json value"));
}

fn read_ideal(path: &Path, vars: Option<&[String]>) -> Result<Vec<MultiPoly>> {
    let text = std::fs::read_to_string(path)?;
    let polys: Vec<MultiPoly> = if text.trim_start().starts_with('[') {
        let list: Vec<PolyJson> = serde_json::from_str(&text)?;
        let polys = list.iter().map(PolyJson::to_poly).collect::<Result<Vec<_>>>()?;
        let ring = match vars {
            Some(v) => Ring::new(v)?,
            None => {
                let first = polys.first().ok_or_else(|| Error::Parse("empty polynomial list".into()))?;
                first.ring().clone()
            }
        };
        polys.iter().map(|p| p.embed(&ring)).collect::<Result<_>>()?
    } else {
        let vars = vars.ok_or_else(|| Error::Param("--vars is required for text input".into()))?;
        let ring = Ring::new(vars)?;
        text.lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| MultiPoly::parse(l, &ring))
            .collect::<Result<_>>()?
    };
    Ok(polys)
}

fn groebner_cmd(a: GroebnerArgs) -> Result<u8> {
    let polys = read_ideal(&a.input, a.vars.as_deref())?;
    let ideal = Ideal::new(polys)?;
    let ord = MonomialOrder::new(OrderKind::parse(&a.order)?, ideal.ring().vars())?;
    let limits = GroebnerLimits { max_pairs: a.max_pairs, max_degree: a.max_degree };
    let (gb, raw) = reduced_groebner(&ideal, &ord, &limits)?;
    let stats = &gb.stats;
    let basis: Vec<PolyJson> = gb.polys.iter().map(MultiPoly::to_json).collect();
    if let Some(out) = &a.out {
        std::fs::write(out, serde_json::to_string_pretty(&basis)? + "\n")?;
    }
    let stats_json = json!({
        "pairs_considered": stats.pairs_considered,
        "pairs_skipped_criteria": stats.pairs_skipped_criteria,
        "reductions": stats.reductions,
        "basis_size": stats.basis_size,
        "degree_multiset": stats.degree_multiset,
        "unreduced_basis_size": raw.basis_size,
    });
    if a.json {
        print_json(&json!({ "order": a.order, "vars": ord.vars(), "stats": stats_json, "basis": basis }));
    } else {
        for (k, p) in gb.polys.iter().enumerate() {
            out!("g{} = {}", k + 1, p.to_string_with(ord.kind()));
        }
        out!("# {stats}");
    }
    Ok(0)
}

fn conic_meta(conic: &ConicSpec, r: &Rational) -> Value {
    let mut m = serde_json::Map::new();
    m.insert("conic".into(), json!(conic.kind().name()));
    for (k, v) in conic.params() {
        m.insert(k.into(), json!(format_rational(&v)));
    }
    m.insert("r".into(), json!(format_rational(r)));
    Value::Object(m)
}

fn offset_curve(conic: &ConicSpec, r: &Rational, method: Method) -> Result<OffsetCurve> {
    match method {
        Method::Closed => offset_poly_closed_form(conic, r),
        Method::Elim => offset_poly_elimination(conic, r),
    }
}

fn offset_cmd(a: OffsetArgs) -> Result<u8> {
    let (conic, r) = a.conic.resolve()?;
    let curve = offset_curve(&conic, &r, a.method)?;
    let mut doc = serde_json::to_value(curve.g.to_json())?;
    doc["meta"] = conic_meta(&conic, &r);
    if let Some(out) = &a.out {
        std::fs::write(out, serde_json::to_string_pretty(&doc)? + "\n")?;
    }
    if a.json {
        print_json(&doc);
    } else {
        out!("{}", curve.g);
    }
    Ok(0)
}

fn singular_cmd(a: SingularArgs) -> Result<u8> {
    let (conic, r) = a.conic.resolve()?;
    let rep = if a.elim { conics::singular_points_via_elimination(&conic, &r)? } else { singular_points(&conic, &r)? };
    if a.json || a.format == Format::Json {
        print_json(&serde_json::to_value(&rep)?);
    } else {
        out!(
            "{} r = {}: {} (r_crit = {}), {} real singular points, {} complex",
            rep.conic,
            format_rational(&rep.r),
            rep.regime,
            format_rational(&rep.r_crit),
            rep.points.len(),
            rep.complex_count
        );
        for p in &rep.points {
            let (x, y) = p.xy();
            out!("  {:<8} x = {x:>22.16e}  y = {y:>22.16e}", p.tag.to_string());
        }
        if rep.outside_primary_assumption {
            out!("  note: r >= a, outside the usual assumption r < a");
        }
    }
    Ok(0)
}

fn classify_cmd(a: ClassifyArgs) -> Result<u8> {
    let (conic, r) = a.conic.resolve()?;
    let rep = singular_points(&conic, &r)?;
    let counts = json!({
        "on_curve": rep.count(PointTag::OnCurve),
        "virtual": rep.count(PointTag::Virtual),
        "split": rep.count(PointTag::Split),
        "complex": rep.complex_count,
    });
    if a.json {
        print_json(&json!({
            "conic": rep.conic,
            "r": format_rational(&r),
            "r_crit": format_rational(&rep.r_crit),
            "regime": rep.regime,
            "counts": counts,
        }));
    } else {
        out!("r_crit = {}  regime = {}  counts = {}", format_rational(&rep.r_crit), rep.regime, counts);
    }
    Ok(0)
}

/// The conic recorded under `meta` by `offset-poly --out`.
fn meta_conic(doc: &Value) -> Result<Option<(ConicSpec, Rational)>> {
    let Some(meta) = doc.get("meta") else { return Ok(None) };
    let field = |k: &str| meta.get(k).and_then(Value::as_str).map(parse_rational).transpose();
    let kind = ConicKind::parse(meta.get("conic").and_then(Value::as_str).unwrap_or_default())?;
    let conic = ConicSpec::from_params(kind, field("p")?, field("a")?, field("b")?)?;
    let r = field("r")?.ok_or_else(|| Error::Parse("meta.r missing".into()))?;
    Ok(Some((conic, r)))
}

fn trace_cmd(a: TraceArgs) -> Result<u8> {
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&a.g)?)?;
    let pj: PolyJson = serde_json::from_value(doc.clone())?;
    let g = pj.to_poly()?.embed(&Ring::new(&["x", "y"])?)?;
    let bbox: BBox = a.bbox.parse()?;
    let traced = trace_implicit(&g, bbox, a.res)?;
    let known = meta_conic(&doc)?;
    let mut markers = Vec::new();
    if a.mark_singular {
        let (conic, r) = known
            .as_ref()
            .ok_or_else(|| Error::Precondition("--mark-singular needs the conic recorded in the input (`meta`)".into()))?;
        let rep = singular_points(conic, r)?;
        for p in &rep.points {
            let (x, y) = p.xy();
            if bbox.contains(&Point2::new(x, y)) {
                markers.push(Marker { at: Point2::new(x, y), label: p.tag.to_string() });
            }
        }
    }
    if let Some(svg) = &a.svg {
        let conic_curve: Vec<TracedCurve> = match &known {
            Some((c, _)) => vec![trace_implicit(&c.conic_poly(), bbox, a.res)?],
            None => vec![],
        };
        let fig = Figure { conic: conic_curve, offsets: vec![traced.clone()], grid: vec![], markers: markers.clone() };
        plot_svg(&fig, &SvgStyle::default(), svg)?;
    }
    let vertices = traced.vertices().count();
    if a.json {
        let marks: Vec<Value> = markers.iter().map(|m| json!({"x": m.at.x, "y": m.at.y, "tag": m.label})).collect();
        print_json(&json!({
            "bbox": traced.bbox,
            "resolution": traced.resolution,
            "polylines": traced.polylines.len(),
            "vertices": vertices,
            "markers": marks,
        }));
    } else {
        out!("{} polylines, {} vertices, {} markers", traced.polylines.len(), vertices, markers.len());
    }
    Ok(0)
}

fn mesh_cmd(a: MeshArgs) -> Result<u8> {
    let ellipse = ConicSpec::ellipse(parse_rational(&a.a)?, parse_rational(&a.b)?)?;
    let spec = MeshSpec::new(ellipse.clone(), a.offsets.clone(), a.stations.clone())?;
    let mesh = generate_mesh(&spec)?;
    if let Some(out) = &a.out {
        export_mesh(&mesh, out)?;
    }
    if let Some(svg) = &a.svg {
        let span = a.offsets.iter().cloned().fold(0.0, f64::max) * 1.2;
        let (ea, eb) = match &ellipse {
            ConicSpec::Ellipse { a, b } => (to_f64(a), to_f64(b)),
            _ => unreachable!("constructed as an ellipse"),
        };
        let bbox = BBox::new(-eb - span, eb + span, -ea - span, ea + span)?;
        let res = 400;
        let mut offsets = Vec::new();
        for &r in &a.offsets {
            let g = offset_poly_closed_form(&ellipse, &parlines::rational::decimal_rational(r)?)?.g;
            offsets.push(trace_implicit(&g, bbox, res)?);
        }
        let fig = Figure {
            conic: vec![trace_implicit(&ellipse.conic_poly(), bbox, res)?],
            offsets,
            grid: mesh.grid_lines(bbox),
            markers: vec![],
        };
        plot_svg(&fig, &SvgStyle::default(), svg)?;
    }
    let summary = json!({
        "rows": mesh.rows,
        "cols": mesh.cols,
        "nodes": mesh.nodes.len(),
        "quad4": mesh.quad4.len(),
        "quad9": mesh.quad9.len(),
    });
    if a.json {
        print_json(&summary);
    } else {
        out!(
            "{}x{} nodes ({}), {} four-node and {} nine-node elements",
            mesh.rows,
            mesh.cols,
            mesh.nodes.len(),
            mesh.quad4.len(),
            mesh.quad9.len()
        );
    }
    Ok(0)
}

fn verify_cmd(a: VerifyArgs) -> Result<u8> {
    let ids: Vec<VerifyId> = if a.id == "all" {
        (1..=9)
            .map(VerifyId::Example)
            .chain([VerifyId::AppendixA, VerifyId::AppendixB, VerifyId::Mesh])
            .collect()
    } else {
        vec![VerifyId::parse(&a.id)?]
    };
    let mut all = true;
    let mut reports = Vec::new();
    for id in ids {
        let rep = verify_paper(id)?;
        all &= rep.pass;
        if !a.json {
            out!("{} {}", if rep.pass { "PASS" } else { "FAIL" }, rep.id);
            for c in &rep.checks {
                let mark = match (c.pass, c.gating) {
                    (true, _) => "ok  ",
                    (false, true) => "FAIL",
                    (false, false) => "miss",
                };
                out!("  {mark} {}: {}", c.name, c.detail);
            }
        }
        reports.push(rep);
    }
    if a.json {
        if reports.len() == 1 {
            out!("{}", reports[0].to_json());
        } else {
            print_json(&serde_json::to_value(&reports)?);
        }
    }
    Ok(if all { 0 } else { 1 })
}
