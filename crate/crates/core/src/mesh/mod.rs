//! Layered quadrilateral meshes between an ellipse and its smooth parallel lines.
//!
//! Nodes sit on normal lines to the ellipse: for every y-station the two feet `(±x₀, y₀)` give
//! two columns, and the y-axis vertices `(0, ±a)` close the ring. Rows run from the outermost
//! parallel line through the ellipse to the innermost one, so `rows = 2·|offsets| + 1` and
//! `cols = 2·|stations| + 2`. Columns form a closed ring traversed counter-clockwise, starting at
//! the topmost station on the `x > 0` branch: that station, then `(0, a)`, the `x < 0` stations
//! top to bottom, `(0, −a)`, and the remaining `x > 0` stations bottom to top. The ring closes the
//! element lists: `(rows − 1)·cols` 4-node cells and `((rows − 1)/2)·(cols/2)` 9-node blocks.

use std::path::Path;

use serde::Serialize;

use crate::conics::{offset_poly_closed_form, r_crit, ConicSpec};
use crate::curve::{FloatPoly2, Point2, TracedCurve};
use crate::error::{Error, Result};
use crate::rational::{decimal_rational, to_f64};

/// Newton iterations allowed when placing a node on a parallel line.
const MAX_NEWTON: usize = 50;
/// Required `|g| / max|coeff|` at every placed node.
const NODE_TOL: f64 = 1e-10;

#[derive(Clone, Debug, PartialEq)]
pub struct MeshSpec {
    pub ellipse: ConicSpec,
    /// Strictly ascending, each in `(0, r_crit)`.
    pub offsets: Vec<f64>,
    /// Strictly descending, each in `(−a, a)`.
    pub y_stations: Vec<f64>,
}

impl MeshSpec {
    pub fn new(ellipse: ConicSpec, offsets: Vec<f64>, y_stations: Vec<f64>) -> Result<Self> {
        let spec = MeshSpec { ellipse, offsets, y_stations };
        spec.validate()?;
        Ok(spec)
    }

    /// The layered-mesh instance of the cam example: `a = 4`, `b = 2`, three offsets, nine stations.
    pub fn paper_instance() -> Self {
        let e = ConicSpec::ellipse(crate::rational::int(4), crate::rational::int(2)).expect("valid ellipse");
        MeshSpec::new(e, vec![0.2, 0.4, 0.6], vec![3.75, 3.0, 2.0, 1.0, 0.0, -1.0, -2.0, -3.0, -3.75])
            .expect("valid mesh spec")
    }

    fn axes(&self) -> Result<(f64, f64)> {
        match &self.ellipse {
            ConicSpec::Ellipse { a, b } => Ok((to_f64(a), to_f64(b))),
            other => Err(Error::Spec(format!("meshes need an ellipse, got a {}", other.kind().name()))),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let (a, _) = self.axes()?;
        let rc = to_f64(&r_crit(&self.ellipse));
        if self.offsets.is_empty() {
            return Err(Error::Spec("at least one offset is required".into()));
        }
        if self.y_stations.is_empty() {
            return Err(Error::Spec("at least one y-station is required".into()));
        }
        for w in self.offsets.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Spec(format!("offsets must be strictly ascending ({} then {})", w[0], w[1])));
            }
        }
        for &r in &self.offsets {
            if !(r > 0.0 && r < rc) {
                return Err(Error::Spec(format!("offset {r} is outside (0, r_crit = {rc}); the layer would not be smooth")));
            }
        }
        for w in self.y_stations.windows(2) {
            if w[0] <= w[1] {
                return Err(Error::Spec(format!("y-stations must be strictly descending ({} then {})", w[0], w[1])));
            }
        }
        for &y in &self.y_stations {
            if !(y > -a && y < a) {
                return Err(Error::Spec(format!("y-station {y} is outside (-{a}, {a})")));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Mesh {
    pub rows: usize,
    pub cols: usize,
    /// Row-major.
    pub nodes: Vec<Point2>,
    pub quad4: Vec<[usize; 4]>,
    /// Corners, then edge midpoints (bottom, right, top, left), then the centre.
    pub quad9: Vec<[usize; 9]>,
}

impl Mesh {
    pub fn node(&self, row: usize, col: usize) -> Point2 {
        self.nodes[row * self.cols + col]
    }

    /// Row and column lines as polylines (rings closed), for plotting.
    pub fn grid_lines(&self, bbox: crate::curve::BBox) -> Vec<TracedCurve> {
        let mut lines = Vec::new();
        for i in 0..self.rows {
            let mut l: Vec<Point2> = (0..self.cols).map(|j| self.node(i, j)).collect();
            l.push(self.node(i, 0));
            lines.push(l);
        }
        for j in 0..self.cols {
            lines.push((0..self.rows).map(|i| self.node(i, j)).collect());
        }
        vec![TracedCurve { polylines: lines, bbox, resolution: self.cols }]
    }
}

/// Base point on the ellipse and the outward unit normal, one per column.
fn columns(a: f64, b: f64, stations: &[f64]) -> Vec<(Point2, Point2)> {
    let foot = |y: f64, sign: f64| Point2::new(sign * b * (1.0 - (y / a).powi(2)).max(0.0).sqrt(), y);
    let mut bases = vec![foot(stations[0], 1.0), Point2::new(0.0, a)];
    bases.extend(stations.iter().map(|&y| foot(y, -1.0)));
    bases.push(Point2::new(0.0, -a));
    bases.extend(stations[1..].iter().rev().map(|&y| foot(y, 1.0)));
    bases
        .into_iter()
        .map(|p| {
            // gradient of x²/b² + y²/a²
            let (nx, ny) = (p.x / (b * b), p.y / (a * a));
            let len = nx.hypot(ny);
            (p, Point2::new(nx / len, ny / len))
        })
        .collect()
}

/// Solves `g(base + t·n) = 0` by Newton from `t0`.
fn place_on_line(g: &FloatPoly2, base: Point2, n: Point2, t0: f64) -> Result<Point2> {
    let mut t = t0;
    for _ in 0..MAX_NEWTON {
        let p = Point2::new(base.x + t * n.x, base.y + t * n.y);
        let (v, gx, gy) = g.eval_grad(p.x, p.y);
        if v.abs() <= NODE_TOL * g.scale() {
            return Ok(p);
        }
        let dv = gx * n.x + gy * n.y;
        if dv == 0.0 || !dv.is_finite() {
            break;
        }
        t -= v / dv;
    }
    Err(Error::RootRefine(format!("node on the normal at ({}, {}) with offset {t0}", base.x, base.y)))
}

/// Builds the node matrix and the element lists.
pub fn generate_mesh(spec: &MeshSpec) -> Result<Mesh> {
    spec.validate()?;
    let (a, b) = spec.axes()?;
    let cols_geo = columns(a, b, &spec.y_stations);
    let k = spec.offsets.len();
    let rows = 2 * k + 1;
    let cols = cols_geo.len();
    let curves = spec
        .offsets
        .iter()
        .map(|&r| {
            let g = offset_poly_closed_form(&spec.ellipse, &decimal_rational(r)?)?.g;
            FloatPoly2::new(&g, "x", "y")
        })
        .collect::<Result<Vec<_>>>()?;
    let mut nodes = Vec::with_capacity(rows * cols);
    for row in 0..rows {
        // row k is the ellipse; above it the outer lines (largest first), below the inner ones
        let (layer, side) = match row.cmp(&k) {
            std::cmp::Ordering::Less => (Some(k - 1 - row), 1.0),
            std::cmp::Ordering::Equal => (None, 0.0),
            std::cmp::Ordering::Greater => (Some(row - k - 1), -1.0),
        };
        for (base, n) in &cols_geo {
            nodes.push(match layer {
                None => *base,
                Some(l) => place_on_line(&curves[l], *base, *n, side * spec.offsets[l])?,
            });
        }
    }
    let at = |i: usize, j: usize| i * cols + (j % cols);
    let mut quad4 = Vec::with_capacity((rows - 1) * cols);
    for i in 0..rows - 1 {
        for j in 0..cols {
            quad4.push([at(i, j), at(i, j + 1), at(i + 1, j + 1), at(i + 1, j)]);
        }
    }
    let mut quad9 = Vec::with_capacity((rows - 1) / 2 * (cols / 2));
    for bi in 0..(rows - 1) / 2 {
        for bj in 0..cols / 2 {
            let (i, j) = (2 * bi, 2 * bj);
            quad9.push([
                at(i, j),
                at(i, j + 2),
                at(i + 2, j + 2),
                at(i + 2, j),
                at(i, j + 1),
                at(i + 1, j + 2),
                at(i + 2, j + 1),
                at(i + 1, j),
                at(i + 1, j + 1),
            ]);
        }
    }
    Ok(Mesh { rows, cols, nodes, quad4, quad9 })
}

/// Column-ordering note written into every export.
pub const LAYOUT_NOTE: &str = "rows: outermost parallel line, ..., ellipse, ..., innermost; columns: closed counter-clockwise ring from the topmost x>0 station";

/// JSON text with 17 significant digits per coordinate; identical meshes give identical bytes.
pub fn mesh_json(mesh: &Mesh) -> String {
    let num = |v: f64| format!("{v:.16e}");
    let nodes: Vec<String> = mesh.nodes.iter().map(|p| format!("[{},{}]", num(p.x), num(p.y))).collect();
    let list = |v: Vec<String>| v.join(",");
    let q4: Vec<String> = mesh.quad4.iter().map(|e| format!("{:?}", e).replace(' ', "")).collect();
    let q9: Vec<String> = mesh.quad9.iter().map(|e| format!("{:?}", e).replace(' ', "")).collect();
    format!(
        "{{\"layout\":{},\"rows\":{},\"cols\":{},\"nodes\":[{}],\"quad4\":[{}],\"quad9\":[{}]}}\n",
        serde_json::Value::String(LAYOUT_NOTE.into()),
        mesh.rows,
        mesh.cols,
        list(nodes),
        list(q4),
        list(q9)
    )
}

pub fn export_mesh(mesh: &Mesh, path: &Path) -> Result<()> {
    std::fs::write(path, mesh_json(mesh))?;
    Ok(())
}

/// Reads a file written by [`export_mesh`].
pub fn load_mesh(path: &Path) -> Result<Mesh> {
    #[derive(serde::Deserialize)]
    struct Raw {
        rows: usize,
        cols: usize,
        nodes: Vec<[f64; 2]>,
        quad4: Vec<[usize; 4]>,
        quad9: Vec<[usize; 9]>,
    }
    let raw: Raw = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    if raw.nodes.len() != raw.rows * raw.cols {
        return Err(Error::Spec(format!("{} nodes for a {}x{} matrix", raw.nodes.len(), raw.rows, raw.cols)));
    }
    Ok(Mesh {
        rows: raw.rows,
        cols: raw.cols,
        nodes: raw.nodes.into_iter().map(|[x, y]| Point2::new(x, y)).collect(),
        quad4: raw.quad4,
        quad9: raw.quad9,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn reference_instance_counts() {
        let m = generate_mesh(&MeshSpec::paper_instance()).unwrap();
        assert_eq!((m.rows, m.cols, m.nodes.len(), m.quad4.len(), m.quad9.len()), (7, 20, 140, 120, 30));
        for e in &m.quad4 {
            let mut s = e.to_vec();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 4);
            assert!(e.iter().all(|&i| i < 140));
        }
        for e in &m.quad9 {
            let mut s = e.to_vec();
            s.sort();
            s.dedup();
            assert_eq!(s.len(), 9);
        }
        // closure column (0, a ± r)
        assert!((m.node(0, 1).y - 4.6).abs() < 1e-12 && m.node(0, 1).x.abs() < 1e-15);
        assert!((m.node(6, 1).y - 3.4).abs() < 1e-12);
        assert_eq!(m.node(3, 11), Point2::new(0.0, -4.0));
    }

    #[test]
    fn small_spec_and_rejections() {
        let e = ConicSpec::ellipse(int(4), int(2)).unwrap();
        let m = generate_mesh(&MeshSpec::new(e.clone(), vec![0.2], vec![0.0]).unwrap()).unwrap();
        assert_eq!((m.rows, m.cols), (3, 4));
        assert!(MeshSpec::new(e.clone(), vec![1.0], vec![0.0]).is_err()); // r_crit = 1
        assert!(MeshSpec::new(e.clone(), vec![0.4, 0.2], vec![0.0]).is_err());
        assert!(MeshSpec::new(e.clone(), vec![0.2], vec![4.0]).is_err());
        assert!(MeshSpec::new(e.clone(), vec![0.2], vec![0.0, 1.0]).is_err());
        assert!(MeshSpec::new(e, vec![], vec![0.0]).is_err());
        let p = ConicSpec::parabola(int(1)).unwrap();
        assert!(MeshSpec::new(p, vec![0.2], vec![0.0]).is_err());
    }

    #[test]
    fn export_round_trip() {
        let m = generate_mesh(&MeshSpec::paper_instance()).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("mesh.json");
        export_mesh(&m, &path).unwrap();
        let back = load_mesh(&path).unwrap();
        assert_eq!(back, m);
        assert_eq!(mesh_json(&back), std::fs::read_to_string(&path).unwrap());
    }
}
