//! Exact convex hulls and volumes in dimensions one to three.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::rational::{dot, int_to_q, primitive, sub, Q};
use super::ToricError;

fn cross2(o: &[Q], a: &[Q], b: &[Q]) -> Q {
    (&a[0] - &o[0]) * (&b[1] - &o[1]) - (&a[1] - &o[1]) * (&b[0] - &o[0])
}

pub fn dedup(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut v = points.to_vec();
    v.sort();
    v.dedup();
    v
}

/// Counter-clockwise hull vertices of planar points, without collinear ones.
pub fn hull2d(points: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let pts = dedup(points);
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Q>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && cross2(&lower[lower.len() - 2], &lower[lower.len() - 1], p) <= Q::zero() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Q>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && cross2(&upper[upper.len() - 2], &upper[upper.len() - 1], p) <= Q::zero() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Shoelace area of a counter-clockwise polygon.
pub fn polygon_area(ccw: &[Vec<Q>]) -> Q {
    if ccw.len() < 3 {
        return Q::zero();
    }
    let mut twice = Q::zero();
    for i in 0..ccw.len() {
        let a = &ccw[i];
        let b = &ccw[(i + 1) % ccw.len()];
        twice += &a[0] * &b[1] - &a[1] * &b[0];
    }
    twice / Q::from_integer(BigInt::from(2))
}

pub fn area2d(points: &[Vec<Q>]) -> Q {
    polygon_area(&hull2d(points))
}

fn cross3(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// A facet of a 3-dimensional hull: primitive outward normal `u`, offset
/// `h` with `<u, x> <= h` on the hull, and the input points on it.
#[derive(Debug, Clone)]
pub struct Facet3 {
    pub normal: Vec<BigInt>,
    pub offset: Q,
    pub points: Vec<usize>,
}

/// Supporting planes of a 3-dimensional point set, found by testing every
/// triple of points. Returns the deduplicated points and the facets.
pub fn hull3d(points: &[Vec<Q>]) -> Result<(Vec<Vec<Q>>, Vec<Facet3>), ToricError> {
    let pts = dedup(points);
    let m = pts.len();
    let mut planes: BTreeMap<Vec<BigInt>, Q> = BTreeMap::new();
    for i in 0..m {
        for j in i + 1..m {
            let e1 = sub(&pts[j], &pts[i]);
            for k in j + 1..m {
                let e2 = sub(&pts[k], &pts[i]);
                let n = cross3(&e1, &e2);
                if n.iter().all(Zero::is_zero) {
                    continue;
                }
                let u = primitive(&n);
                let uq = int_to_q(&u);
                let h = dot(&uq, &pts[i]);
                let neg: Vec<BigInt> = u.iter().map(|x| -x).collect();
                if planes.get(&u) == Some(&h) || planes.get(&neg) == Some(&-h.clone()) {
                    continue;
                }
                let (mut above, mut below) = (false, false);
                for p in &pts {
                    let s = dot(&uq, p);
                    if s > h {
                        above = true;
                    } else if s < h {
                        below = true;
                    }
                    if above && below {
                        break;
                    }
                }
                match (above, below) {
                    (false, true) => {
                        planes.insert(u, h);
                    }
                    (true, false) => {
                        planes.insert(u.iter().map(|x| -x).collect(), -h);
                    }
                    (false, false) => {
                        return Err(ToricError::Degenerate("points are coplanar".into()));
                    }
                    _ => {}
                }
            }
        }
    }
    if planes.len() < 4 {
        return Err(ToricError::Degenerate("point set is not full-dimensional".into()));
    }
    let facets = planes
        .into_iter()
        .map(|(normal, offset)| {
            let uq = int_to_q(&normal);
            let on: Vec<usize> = (0..m).filter(|&i| dot(&uq, &pts[i]) == offset).collect();
            Facet3 { normal, offset, points: on }
        })
        .collect();
    Ok((pts, facets))
}

/// Lattice area of a planar set of points in `R^3` lying in a plane with
/// primitive normal `u`: projected area divided by `|u_k|`.
pub fn lattice_area(points: &[Vec<Q>], normal: &[BigInt]) -> Q {
    let k = (0..3).max_by_key(|&i| normal[i].abs()).expect("three coordinates");
    let proj: Vec<Vec<Q>> = points
        .iter()
        .map(|p| (0..3).filter(|&i| i != k).map(|i| p[i].clone()).collect())
        .collect();
    area2d(&proj) / Q::from_integer(normal[k].abs())
}

/// Lattice length of collinear points along primitive direction `dir`.
pub fn lattice_length(points: &[Vec<Q>], dir: &[BigInt]) -> Q {
    let d = int_to_q(dir);
    let dd = dot(&d, &d);
    let ts: Vec<Q> = points.iter().map(|p| dot(&d, p) / &dd).collect();
    let max = ts.iter().max().cloned().unwrap_or_else(Q::zero);
    let min = ts.iter().min().cloned().unwrap_or_else(Q::zero);
    max - min
}

/// Euclidean volume of the convex hull of points in `R^d`, `d <= 3`.
pub fn hull_volume(points: &[Vec<Q>], d: usize) -> Result<Q, ToricError> {
    match d {
        1 => {
            let max = points.iter().map(|p| p[0].clone()).max();
            let min = points.iter().map(|p| p[0].clone()).min();
            Ok(match (max, min) {
                (Some(a), Some(b)) => a - b,
                _ => Q::zero(),
            })
        }
        2 => Ok(area2d(points)),
        3 => {
            let (pts, facets) = hull3d(points)?;
            let mut total = Q::zero();
            for f in &facets {
                let on: Vec<Vec<Q>> = f.points.iter().map(|&i| pts[i].clone()).collect();
                total += &f.offset * lattice_area(&on, &f.normal);
            }
            Ok(total / Q::from_integer(BigInt::from(3)))
        }
        _ => Err(ToricError::Dimension(format!("dimension {d} is not supported"))),
    }
}
