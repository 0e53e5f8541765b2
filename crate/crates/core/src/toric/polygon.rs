//! The polygon `P_T = {u ∈ R² : ⟨u, vᵢ⟩ ≥ −dᵢ}` of a torus-invariant divisor
//! and exact counts on it.

use num::bigint::BigInt;
use num::{Integer, One};
use serde::Serialize;

use crate::rational::Rational;

use super::fan::{ToricDivisor, ToricFan};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Vertex {
    pub x: Rational,
    pub y: Rational,
}

/// Intersection of facet lines `i` and `j` as `(x·den, y·den, den)` with
/// `den > 0`, or `None` for parallel facets.
fn facet_intersection(fan: &ToricFan, t: &ToricDivisor, i: usize, j: usize) -> Option<[i128; 3]> {
    let [a1, b1] = fan.rays()[i].map(i128::from);
    let [a2, b2] = fan.rays()[j].map(i128::from);
    let c1 = -i128::from(t.coeffs()[i]);
    let c2 = -i128::from(t.coeffs()[j]);
    let mut den = a1 * b2 - a2 * b1;
    if den == 0 {
        return None;
    }
    let mut xn = c1 * b2 - c2 * b1;
    let mut yn = a1 * c2 - a2 * c1;
    if den < 0 {
        den = -den;
        xn = -xn;
        yn = -yn;
    }
    Some([xn, yn, den])
}

fn feasible(fan: &ToricFan, t: &ToricDivisor, p: [i128; 3]) -> bool {
    let [xn, yn, den] = p;
    fan.rays().iter().zip(t.coeffs()).all(|(v, &d)| {
        i128::from(v[0]) * xn + i128::from(v[1]) * yn >= -i128::from(d) * den
    })
}

fn raw_vertices(fan: &ToricFan, t: &ToricDivisor) -> Vec<[i128; 3]> {
    let n = fan.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if let Some(p) = facet_intersection(fan, t, i, j) {
                if feasible(fan, t, p) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Vertices of `P_T` in counterclockwise order (empty for an empty polygon;
/// a point or a segment when degenerate).
pub fn polygon_vertices(fan: &ToricFan, t: &ToricDivisor) -> Vec<Vertex> {
    fan.check_divisor(t).expect("divisor matches fan");
    let mut pts: Vec<Vertex> = raw_vertices(fan, t)
        .into_iter()
        .map(|[xn, yn, den]| Vertex {
            x: Rational::from_bigints(BigInt::from(xn), BigInt::from(den)),
            y: Rational::from_bigints(BigInt::from(yn), BigInt::from(den)),
        })
        .collect();
    pts.sort();
    pts.dedup();
    convex_hull(pts)
}

fn cross(o: &Vertex, a: &Vertex, b: &Vertex) -> Rational {
    (&a.x - &o.x) * (&b.y - &o.y) - (&a.y - &o.y) * (&b.x - &o.x)
}

/// Andrew's monotone chain on sorted, deduplicated points.
fn convex_hull(pts: Vec<Vertex>) -> Vec<Vertex> {
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vertex> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vertex> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// `h⁰` of the divisor: the number of lattice points of `P_T`.
pub fn count_h0(fan: &ToricFan, t: &ToricDivisor) -> u64 {
    fan.check_divisor(t).expect("divisor matches fan");
    let verts = raw_vertices(fan, t);
    if verts.is_empty() {
        return 0;
    }
    let xmin = verts.iter().map(|v| Integer::div_floor(&v[0], &v[2])).min().expect("nonempty");
    let xmax = verts.iter().map(|v| Integer::div_ceil(&v[0], &v[2])).max().expect("nonempty");
    let rays = fan.rays();
    let coeffs = t.coeffs();
    let mut total: u64 = 0;
    'column: for x in xmin..=xmax {
        let mut lo = i128::MIN;
        let mut hi = i128::MAX;
        for (v, &d) in rays.iter().zip(coeffs) {
            let (a, b) = (i128::from(v[0]), i128::from(v[1]));
            // a·x + b·y ≥ −d
            let r = -i128::from(d) - a * x;
            if b > 0 {
                lo = lo.max(Integer::div_ceil(&r, &b));
            } else if b < 0 {
                hi = hi.min(Integer::div_floor(&r, &b));
            } else if r > 0 {
                continue 'column;
            }
        }
        if hi >= lo {
            total += u64::try_from(hi - lo + 1).expect("column count fits");
        }
    }
    total
}

/// `2·area(P_T)`, the volume of the divisor.
pub fn oracle_volume(fan: &ToricFan, t: &ToricDivisor) -> Rational {
    let v = polygon_vertices(fan, t);
    if v.len() < 3 {
        return Rational::zero();
    }
    let n = v.len();
    let twice_area: Rational = (0..n)
        .map(|i| {
            let (p, q) = (&v[i], &v[(i + 1) % n]);
            &p.x * &q.y - &q.x * &p.y
        })
        .sum();
    twice_area.abs()
}

/// Least common denominator of the polygon's vertices: the period of the
/// Ehrhart quasi-polynomial `m ↦ #(m·P_T ∩ Z²)`.
pub fn ehrhart_period(fan: &ToricFan, t: &ToricDivisor) -> u64 {
    let l = polygon_vertices(fan, t)
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.x.denom()).lcm(v.y.denom()));
    u64::try_from(l).expect("period fits in u64")
}
