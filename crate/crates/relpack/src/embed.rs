//! Evaluation of the full embedding at a single point.

use relpack_core::chart::{chart_j, clifford_distance};
use relpack_core::product::phi;
use relpack_core::{DiscMap, ProductPoint};
use serde_json::{json, Value};

use crate::report::number;

#[derive(Debug, Clone, PartialEq)]
pub struct EmbedRecord {
    pub source: Vec<f64>,
    /// `Phi(source)` as `(Q1, P1, ..., Qn, Pn)`.
    pub image: Vec<f64>,
    /// `j(Phi(source))` as `(Re, Im)` pairs.
    pub z: Vec<(f64, f64)>,
    pub clifford_distance: f64,
}

/// Parses `q1,p1,q2,p2,...`.
pub fn parse_point(text: &str) -> Result<ProductPoint, String> {
    let coords = text
        .split(',')
        .map(|s| {
            s.trim()
                .parse::<f64>()
                .map_err(|_| format!("invalid coordinate {s:?}"))
        })
        .collect::<Result<Vec<_>, _>>()?;
    ProductPoint::new(coords).map_err(|e| e.to_string())
}

pub fn embed<M: DiscMap + ?Sized>(
    map: &M,
    point: &ProductPoint,
) -> relpack_core::Result<EmbedRecord> {
    let image = phi(map, point)?;
    let z = chart_j(&image)?;
    Ok(EmbedRecord {
        source: point.coords().to_vec(),
        image: image.coords().to_vec(),
        z: z.coords().iter().map(|w| (w.re, w.im)).collect(),
        clifford_distance: clifford_distance(&z, map.params()),
    })
}

fn join(values: impl Iterator<Item = String>) -> String {
    values.collect::<Vec<_>>().join(", ")
}

pub fn to_text(rec: &EmbedRecord) -> String {
    format!(
        "Phi = ({})\nz = {}\nclifford_distance = {:e}\n",
        join(rec.image.iter().map(|v| format!("{v:?}"))),
        join(rec.z.iter().map(|(re, im)| format!("({re:?}, {im:?})"))),
        rec.clifford_distance,
    )
}

pub fn to_json(rec: &EmbedRecord) -> Value {
    let nums = |v: &[f64]| Value::Array(v.iter().map(|&x| number(x)).collect());
    json!({
        "point": nums(&rec.source),
        "phi": nums(&rec.image),
        "z": rec.z.iter().map(|&(re, im)| json!([number(re), number(im)])).collect::<Vec<_>>(),
        "clifford_distance": number(rec.clifford_distance),
    })
}
