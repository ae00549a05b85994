use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::local_field::WElem;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub start: usize,
    pub end: usize,
    /// Change in valuation per unit of exponent; roots on this edge have valuation `-slope`.
    pub slope: Ratio<i64>,
}

impl Edge {
    pub fn length(&self) -> usize {
        self.end - self.start
    }
    pub fn integral(&self) -> bool {
        self.slope.is_integer()
    }
}

/// Lower convex hull of the points `(i, v_u(a_i))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NewtonPolygonData {
    pub points: Vec<(usize, i64)>,
    pub edges: Vec<Edge>,
}

impl NewtonPolygonData {
    pub fn degree(&self) -> usize {
        self.edges.last().map_or(0, |e| e.end) - self.edges.first().map_or(0, |e| e.start)
    }

    /// An edge of length one with integral slope.
    pub fn length_one_integral(&self) -> Option<&Edge> {
        self.edges.iter().find(|e| e.length() == 1 && e.integral())
    }
}

pub fn newton_polygon(coeffs: &[WElem]) -> Result<NewtonPolygonData> {
    let points: Vec<(usize, i64)> = coeffs.iter().enumerate().filter_map(|(i, c)| c.val().map(|v| (i, v))).collect();
    if points.is_empty() {
        return Err(Error::InvalidConfig("Newton polygon of the zero polynomial".into()));
    }
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &points {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            // drop b when it lies on or above the segment a..pt
            let cross = (b.0 as i64 - a.0 as i64) * (pt.1 - a.1) - (b.1 - a.1) * (pt.0 as i64 - a.0 as i64);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }
    let edges = hull
        .windows(2)
        .map(|w| Edge { start: w[0].0, end: w[1].0, slope: Ratio::new(w[1].1 - w[0].1, (w[1].0 - w[0].0) as i64) })
        .collect();
    Ok(NewtonPolygonData { points, edges })
}
