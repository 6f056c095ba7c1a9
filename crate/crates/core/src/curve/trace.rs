//! Marching-squares tracing of `g(x, y) = 0`.

use std::collections::HashMap;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{FloatPoly2, Point2};
use crate::error::{Error, Result};
use crate::poly::MultiPoly;

/// Axis-aligned window `[xmin, xmax] × [ymin, ymax]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BBox {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

impl BBox {
    pub fn new(xmin: f64, xmax: f64, ymin: f64, ymax: f64) -> Result<Self> {
        let ok = [xmin, xmax, ymin, ymax].iter().all(|v| v.is_finite()) && xmin < xmax && ymin < ymax;
        if !ok {
            return Err(Error::Param(format!("invalid bounding box [{xmin}, {xmax}] x [{ymin}, {ymax}]")));
        }
        Ok(BBox { xmin, xmax, ymin, ymax })
    }

    pub fn contains(&self, p: &Point2) -> bool {
        (self.xmin..=self.xmax).contains(&p.x) && (self.ymin..=self.ymax).contains(&p.y)
    }

    /// Smallest box containing both.
    pub fn union(&self, o: &BBox) -> BBox {
        BBox {
            xmin: self.xmin.min(o.xmin),
            xmax: self.xmax.max(o.xmax),
            ymin: self.ymin.min(o.ymin),
            ymax: self.ymax.max(o.ymax),
        }
    }
}

impl FromStr for BBox {
    type Err = Error;

    /// `x0,x1,y0,y1`.
    fn from_str(s: &str) -> Result<Self> {
        let v: Vec<f64> = s
            .split(',')
            .map(|t| t.trim().parse::<f64>().map_err(|_| Error::Parse(format!("bad bounding box `{s}`"))))
            .collect::<Result<_>>()?;
        if v.len() != 4 {
            return Err(Error::Parse(format!("bounding box needs four numbers, got `{s}`")));
        }
        BBox::new(v[0], v[1], v[2], v[3])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TracedCurve {
    /// Closed polylines repeat their first vertex at the end.
    pub polylines: Vec<Vec<Point2>>,
    pub bbox: BBox,
    pub resolution: usize,
}

impl TracedCurve {
    pub fn is_empty(&self) -> bool {
        self.polylines.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point2> {
        self.polylines.iter().flatten()
    }

    /// Euclidean distance from `p` to the nearest traced segment (infinite when empty).
    pub fn distance_to(&self, p: &Point2) -> f64 {
        let mut best = f64::INFINITY;
        for line in &self.polylines {
            if line.len() == 1 {
                best = best.min(line[0].dist(p));
            }
            for w in line.windows(2) {
                best = best.min(segment_distance(p, &w[0], &w[1]));
            }
        }
        best
    }

    /// Grid cell diagonal.
    pub fn cell_size(&self) -> f64 {
        let dx = (self.bbox.xmax - self.bbox.xmin) / self.resolution as f64;
        let dy = (self.bbox.ymax - self.bbox.ymin) / self.resolution as f64;
        dx.hypot(dy)
    }
}

fn segment_distance(p: &Point2, a: &Point2, b: &Point2) -> f64 {
    let (dx, dy) = (b.x - a.x, b.y - a.y);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.x - a.x) * dx + (p.y - a.y) * dy) / len2).clamp(0.0, 1.0) };
    p.dist(&Point2::new(a.x + t * dx, a.y + t * dy))
}

/// Contour of `g = 0` on a `resolution × resolution` grid: linear interpolation on cell edges,
/// one Newton step along `∇g` per vertex, saddles resolved by the sign at the cell centre.
pub fn trace_implicit(g: &MultiPoly, bbox: BBox, resolution: usize) -> Result<TracedCurve> {
    if resolution < 8 {
        return Err(Error::Param(format!("resolution must be at least 8, got {resolution}")));
    }
    let f = FloatPoly2::new(g, "x", "y")?;
    let n = resolution;
    let dx = (bbox.xmax - bbox.xmin) / n as f64;
    let dy = (bbox.ymax - bbox.ymin) / n as f64;
    let px = |i: usize| bbox.xmin + dx * i as f64;
    let py = |j: usize| bbox.ymin + dy * j as f64;
    let stride = n + 1;
    let mut vals = Vec::with_capacity(stride * stride);
    for j in 0..=n {
        for i in 0..=n {
            vals.push(f.eval(px(i), py(j)));
        }
    }
    let val = |i: usize, j: usize| vals[j * stride + i];
    let pos = |v: f64| v > 0.0;
    let h_edge = |i: usize, j: usize| 2 * (j * stride + i);
    let v_edge = |i: usize, j: usize| 2 * (j * stride + i) + 1;

    let diag = dx.hypot(dy);
    let mut vertex: HashMap<usize, Point2> = HashMap::new();
    let mut crossing = |id: usize| -> Point2 {
        *vertex.entry(id).or_insert_with(|| {
            let (i, j) = ((id / 2) % stride, (id / 2) / stride);
            let (a, b, q) = if id.is_multiple_of(2) {
                (val(i, j), val(i + 1, j), (Point2::new(px(i), py(j)), Point2::new(px(i + 1), py(j))))
            } else {
                (val(i, j), val(i, j + 1), (Point2::new(px(i), py(j)), Point2::new(px(i), py(j + 1))))
            };
            let t = if a == b { 0.5 } else { a / (a - b) };
            let p = Point2::new(q.0.x + t * (q.1.x - q.0.x), q.0.y + t * (q.1.y - q.0.y));
            newton_step(&f, p, diag)
        })
    };

    let mut segments: Vec<(usize, usize)> = Vec::new();
    for j in 0..n {
        for i in 0..n {
            let s = [pos(val(i, j)), pos(val(i + 1, j)), pos(val(i + 1, j + 1)), pos(val(i, j + 1))];
            // bottom, right, top, left
            let edges = [h_edge(i, j), v_edge(i + 1, j), h_edge(i, j + 1), v_edge(i, j)];
            let cut: Vec<usize> = (0..4).filter(|&k| s[k] != s[(k + 1) % 4]).collect();
            match cut.len() {
                2 => segments.push((edges[cut[0]], edges[cut[1]])),
                4 => {
                    let centre = pos(f.eval(px(i) + dx / 2.0, py(j) + dy / 2.0));
                    if centre == s[0] {
                        // the bottom-left and top-right corners are joined through the centre
                        segments.push((edges[0], edges[1]));
                        segments.push((edges[2], edges[3]));
                    } else {
                        segments.push((edges[3], edges[0]));
                        segments.push((edges[1], edges[2]));
                    }
                }
                _ => {}
            }
        }
    }

    let mut polylines = Vec::new();
    for chain in join_segments(&segments) {
        polylines.push(chain.into_iter().map(&mut crossing).collect());
    }
    Ok(TracedCurve { polylines, bbox, resolution })
}

/// One Newton step towards `g = 0` along the gradient, rejected if it leaves the cell's vicinity.
fn newton_step(f: &FloatPoly2, p: Point2, max_step: f64) -> Point2 {
    let (v, gx, gy) = f.eval_grad(p.x, p.y);
    let gg = gx * gx + gy * gy;
    if gg == 0.0 || !gg.is_finite() {
        return p;
    }
    let q = Point2::new(p.x - v * gx / gg, p.y - v * gy / gg);
    if q.dist(&p) <= max_step && q.x.is_finite() && q.y.is_finite() {
        q
    } else {
        p
    }
}

/// Chains segments sharing edge crossings: open chains first (from their free ends), then cycles.
fn join_segments(segments: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut at: HashMap<usize, Vec<usize>> = HashMap::new();
    for (k, (a, b)) in segments.iter().enumerate() {
        at.entry(*a).or_default().push(k);
        at.entry(*b).or_default().push(k);
    }
    let mut used = vec![false; segments.len()];
    let mut chains = Vec::new();
    let walk = |start_seg: usize, start_node: usize, used: &mut Vec<bool>| -> Vec<usize> {
        let mut chain = vec![start_node];
        let (mut seg, mut node) = (start_seg, start_node);
        loop {
            used[seg] = true;
            let (a, b) = segments[seg];
            node = if a == node { b } else { a };
            chain.push(node);
            match at[&node].iter().find(|&&s| !used[s]) {
                Some(&s) => seg = s,
                None => break,
            }
        }
        chain
    };
    for pass_open in [true, false] {
        for k in 0..segments.len() {
            if used[k] {
                continue;
            }
            let (a, b) = segments[k];
            let start = if at[&a].len() == 1 {
                a
            } else if at[&b].len() == 1 {
                b
            } else if pass_open {
                continue;
            } else {
                a
            };
            chains.push(walk(k, start, &mut used));
        }
    }
    chains
}
