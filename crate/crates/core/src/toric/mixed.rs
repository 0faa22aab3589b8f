//! Mixed volumes by polarization of Minkowski-sum volumes.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::hull::{area2d, dedup, lattice_area};
use super::polytope::RationalPolytope;
use super::rational::{add, dot, int_to_q, primitive, sub, Q};
use super::ToricError;

/// Vertex-sum point set of a Minkowski sum (duplicates removed).
pub fn minkowski_sum(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in a {
        for y in b {
            out.push(add(x, y));
        }
    }
    dedup(&out)
}

/// Vertices of `P` maximizing `<u, x>`, and the maximum.
fn support_face(p: &RationalPolytope, u: &[Q]) -> (Q, Vec<Vec<Q>>) {
    let values: Vec<Q> = p.vertices().iter().map(|v| dot(u, v)).collect();
    let h = values.iter().max().cloned().expect("polytope has vertices");
    let face = p.vertices().iter().zip(&values).filter(|(_, s)| **s == h).map(|(v, _)| v.clone()).collect();
    (h, face)
}

fn edge_directions(p: &RationalPolytope) -> Vec<Vec<Q>> {
    p.faces()
        .iter()
        .filter(|f| f.dim == 1)
        .map(|f| sub(&p.vertices()[f.vertices[1]], &p.vertices()[f.vertices[0]]))
        .collect()
}

fn cross(a: &[Q], b: &[Q]) -> Vec<Q> {
    vec![
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

/// Volume of `P_1 + ... + P_k` in `R^3` as `1/3 sum_F h(u_F) LArea(F)`.
/// Every facet of the sum has as normal either a facet normal of a summand
/// or the cross product of edges from two different summands; candidates
/// that are not facets contribute zero area.
fn sum_volume3(parts: &[&RationalPolytope]) -> Q {
    let mut normals: BTreeSet<Vec<BigInt>> = BTreeSet::new();
    for p in parts {
        normals.extend(p.facets().iter().map(|f| f.normal.clone()));
    }
    let edges: Vec<Vec<Vec<Q>>> = parts.iter().map(|p| edge_directions(p)).collect();
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            for e in &edges[i] {
                for f in &edges[j] {
                    let n = cross(e, f);
                    if n.iter().all(Zero::is_zero) {
                        continue;
                    }
                    let u = primitive(&n);
                    normals.insert(u.iter().map(|x| -x).collect());
                    normals.insert(u);
                }
            }
        }
    }
    let mut total = Q::zero();
    for u in &normals {
        let uq = int_to_q(u);
        let mut h = Q::zero();
        let mut face: Vec<Vec<Q>> = vec![vec![Q::zero(); 3]];
        for p in parts {
            let (hp, fp) = support_face(p, &uq);
            h += hp;
            face = minkowski_sum(&face, &fp);
        }
        if face.len() >= 3 {
            total += h * lattice_area(&face, u);
        }
    }
    total / Q::from_integer(3.into())
}

fn sum_volume(parts: &[&RationalPolytope], d: usize) -> Q {
    if d == 2 {
        let mut pts: Vec<Vec<Q>> = vec![vec![Q::zero(); 2]];
        for p in parts {
            pts = minkowski_sum(&pts, p.vertices());
        }
        area2d(&pts)
    } else {
        sum_volume3(parts)
    }
}

/// Mixed volume normalized so that `MV(P, ..., P) = Vol(P)`:
/// `d! MV = sum over nonempty S of (-1)^{d-|S|} Vol(sum_{i in S} P_i)`.
pub fn mixed_volume(polytopes: &[&RationalPolytope]) -> Result<Q, ToricError> {
    let d = polytopes.len();
    if !(2..=3).contains(&d) || polytopes.iter().any(|p| p.dim() != d) {
        return Err(ToricError::Dimension(format!(
            "mixed volume needs exactly as many polytopes as the ambient dimension, 2 or 3 (got {d})"
        )));
    }
    let mut total = Q::zero();
    for mask in 1u32..(1 << d) {
        let parts: Vec<&RationalPolytope> =
            polytopes.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, p)| *p).collect();
        let vol = sum_volume(&parts, d);
        if (d - parts.len()) % 2 == 0 {
            total += vol;
        } else {
            total -= vol;
        }
    }
    let fact: u64 = (1..=d as u64).product();
    Ok(total / Q::from_integer(BigInt::from(fact)))
}
