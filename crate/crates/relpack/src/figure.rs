//! Images of concentric circles and of the real diameter, as CSV polylines.

use std::f64::consts::TAU;
use std::io::{Read, Write};

use relpack_core::{DiscMap, DiscPoint, PackingParams, Sigma};

pub const HEADER: [&str; 7] = ["curve_id", "kind", "t", "q", "p", "Q", "P"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CurveKind {
    Circle,
    Diameter,
}

impl CurveKind {
    pub fn as_str(self) -> &'static str {
        match self {
            CurveKind::Circle => "circle",
            CurveKind::Diameter => "diameter",
        }
    }
}

/// One vertex: the source point `(q, p)` at parameter `t` and its image `(Q, P)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FigureRow {
    pub curve_id: usize,
    pub kind: CurveKind,
    pub t: f64,
    pub q: f64,
    pub p: f64,
    pub image_q: f64,
    pub image_p: f64,
}

/// Circles `u_j = (j / circles)^2 r^2`, `j = 1..=circles` (ids `1..=circles`),
/// each sampled at `t = k / points` and closed by repeating the first vertex
/// at `t = 1`; then the diameter `p = 0`, `q = -r + 2 r t` (id 0) with
/// `points` vertices.
///
/// The outermost circle lies on the boundary of the open disc; it is mapped
/// to the boundary curve of the family through its area-sweep parameter.
pub fn figure_rows(
    sigma: &Sigma,
    circles: usize,
    points: usize,
) -> relpack_core::Result<Vec<FigureRow>> {
    let params = *sigma.params();
    let r = params.r();
    let family = sigma.family();
    let mut rows = Vec::with_capacity(circles * (points + 1) + points);
    for j in 1..=circles {
        let radius = r * j as f64 / circles as f64;
        let first = rows.len();
        for k in 0..points {
            let t = k as f64 / points as f64;
            let theta = TAU * t;
            let (q, p) = (radius * theta.cos(), radius * theta.sin());
            let w = if j == circles {
                family.level_curve_point_closed(params.disc_area(), t)?
            } else {
                sigma.sigma(DiscPoint::new(q, p))?
            };
            rows.push(FigureRow {
                curve_id: j,
                kind: CurveKind::Circle,
                t,
                q,
                p,
                image_q: w.Q,
                image_p: w.P,
            });
        }
        let closing = FigureRow {
            t: 1.0,
            ..rows[first]
        };
        rows.push(closing);
    }
    let last = points.max(2) - 1;
    for k in 0..=last {
        let t = k as f64 / last as f64;
        let q = -r + 2.0 * r * t;
        let w = if k == 0 || k == last {
            let phi = if k == 0 { 0.5 } else { 0.0 };
            family.level_curve_point_closed(params.disc_area(), phi)?
        } else {
            sigma.sigma(DiscPoint::new(q, 0.0))?
        };
        rows.push(FigureRow {
            curve_id: 0,
            kind: CurveKind::Diameter,
            t,
            q: if k == last { r } else { q },
            p: 0.0,
            image_q: w.Q,
            image_p: w.P,
        });
    }
    Ok(rows)
}

pub fn write_csv<W: Write>(rows: &[FigureRow], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    for row in rows {
        w.write_record([
            row.curve_id.to_string(),
            row.kind.as_str().to_string(),
            row.t.to_string(),
            row.q.to_string(),
            row.p.to_string(),
            row.image_q.to_string(),
            row.image_p.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<FigureRow>, String> {
    let mut rdr = csv::Reader::from_reader(input);
    let header = rdr.headers().map_err(|e| e.to_string())?.clone();
    if header.iter().ne(HEADER) {
        return Err(format!("unexpected header {header:?}"));
    }
    let mut rows = Vec::new();
    for (line, rec) in rdr.records().enumerate() {
        let rec = rec.map_err(|e| e.to_string())?;
        let bad = |what: &str| format!("row {}: bad {what}", line + 2);
        let f = |i: usize| rec[i].parse::<f64>().map_err(|_| bad(HEADER[i]));
        let kind = match &rec[1] {
            "circle" => CurveKind::Circle,
            "diameter" => CurveKind::Diameter,
            _ => return Err(bad("kind")),
        };
        rows.push(FigureRow {
            curve_id: rec[0].parse().map_err(|_| bad("curve_id"))?,
            kind,
            t: f(2)?,
            q: f(3)?,
            p: f(4)?,
            image_q: f(5)?,
            image_p: f(6)?,
        });
    }
    Ok(rows)
}

/// Geometric checks on exported figure data.
#[derive(Debug, Clone, PartialEq)]
pub struct FigureCheck {
    pub circles: usize,
    /// Largest distance between the first and last vertex of a circle image.
    pub closure_gap: f64,
    /// Smallest `u/2 + eps - |P - c|` over circle vertices, with `u = q^2 + p^2`.
    pub band_margin: f64,
    /// Largest `|P - c|` on the diameter image.
    pub midline_deviation: f64,
    pub diameter_increasing: bool,
    /// Pairs of segments from different circle images that intersect.
    pub crossings: usize,
    /// Every circle image contains the previous one.
    pub nested: bool,
}

impl FigureCheck {
    pub fn passes(&self, expected_circles: usize) -> bool {
        self.circles == expected_circles
            && self.closure_gap <= 1e-9
            && self.band_margin >= -1e-12
            && self.midline_deviation <= 1e-12
            && self.diameter_increasing
            && self.crossings == 0
            && self.nested
    }
}

type Poly = Vec<(f64, f64)>;

fn orient(a: (f64, f64), b: (f64, f64), c: (f64, f64)) -> f64 {
    (b.0 - a.0) * (c.1 - a.1) - (b.1 - a.1) * (c.0 - a.0)
}

fn segments_cross(a: (f64, f64), b: (f64, f64), c: (f64, f64), d: (f64, f64)) -> bool {
    if a.0.max(b.0) < c.0.min(d.0)
        || c.0.max(d.0) < a.0.min(b.0)
        || a.1.max(b.1) < c.1.min(d.1)
        || c.1.max(d.1) < a.1.min(b.1)
    {
        return false;
    }
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    o1 * o2 <= 0.0 && o3 * o4 <= 0.0
}

fn contains(poly: &Poly, pt: (f64, f64)) -> bool {
    let mut inside = false;
    for w in poly.windows(2) {
        let (a, b) = (w[0], w[1]);
        if (a.1 > pt.1) != (b.1 > pt.1) {
            let x = a.0 + (pt.1 - a.1) * (b.0 - a.0) / (b.1 - a.1);
            if pt.0 < x {
                inside = !inside;
            }
        }
    }
    inside
}

fn polylines_cross(a: &Poly, b: &Poly) -> usize {
    let bbox = |p: &Poly| {
        p.iter()
            .fold((f64::MAX, f64::MIN, f64::MAX, f64::MIN), |acc, v| {
                (
                    acc.0.min(v.0),
                    acc.1.max(v.0),
                    acc.2.min(v.1),
                    acc.3.max(v.1),
                )
            })
    };
    let (bx0, bx1, by0, by1) = bbox(b);
    let mut count = 0;
    for s in a.windows(2) {
        let (p0, p1) = (s[0], s[1]);
        if p0.0.max(p1.0) < bx0
            || p0.0.min(p1.0) > bx1
            || p0.1.max(p1.1) < by0
            || p0.1.min(p1.1) > by1
        {
            continue;
        }
        for t in b.windows(2) {
            if segments_cross(p0, p1, t[0], t[1]) {
                count += 1;
            }
        }
    }
    count
}

pub fn check_figure(rows: &[FigureRow], params: &PackingParams) -> FigureCheck {
    let c = params.c();
    let eps = params.epsilon();
    let mut ids: Vec<usize> = rows
        .iter()
        .filter(|r| r.kind == CurveKind::Circle)
        .map(|r| r.curve_id)
        .collect();
    ids.sort_unstable();
    ids.dedup();
    let polys: Vec<Poly> = ids
        .iter()
        .map(|&id| {
            rows.iter()
                .filter(|r| r.kind == CurveKind::Circle && r.curve_id == id)
                .map(|r| (r.image_q, r.image_p))
                .collect()
        })
        .collect();

    let closure_gap = polys
        .iter()
        .map(|p| match (p.first(), p.last()) {
            (Some(a), Some(b)) => (a.0 - b.0).hypot(a.1 - b.1),
            _ => f64::INFINITY,
        })
        .fold(0.0, f64::max);
    let band_margin = rows
        .iter()
        .filter(|r| r.kind == CurveKind::Circle)
        .map(|r| (r.q * r.q + r.p * r.p) / 2.0 + eps - (r.image_p - c).abs())
        .fold(f64::INFINITY, f64::min);
    let diameter: Vec<&FigureRow> = rows
        .iter()
        .filter(|r| r.kind == CurveKind::Diameter)
        .collect();
    let midline_deviation = diameter
        .iter()
        .map(|r| (r.image_p - c).abs())
        .fold(0.0, f64::max);
    let diameter_increasing = !diameter.is_empty()
        && diameter
            .windows(2)
            .all(|w| w[1].q > w[0].q && w[1].image_q > w[0].image_q);

    let mut crossings = 0;
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            crossings += polylines_cross(&polys[i], &polys[j]);
        }
    }
    let nested = polys
        .windows(2)
        .all(|w| w[0].iter().all(|&v| contains(&w[1], v)))
        && polys.iter().all(|p| p.len() >= 4);
    FigureCheck {
        circles: polys.len(),
        closure_gap,
        band_margin,
        midline_deviation,
        diameter_increasing,
        crossings,
        nested,
    }
}
