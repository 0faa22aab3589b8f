//! Full-dimensional rational polytopes in dimension 2 or 3 with their
//! facet descriptions and face lattices.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use super::hull::{dedup, hull2d, hull3d, hull_volume};
use super::rational::{dot, int_to_q, primitive, sub, Q};
use super::ToricError;

/// A facet `<normal, x> <= offset` with a primitive outward normal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<BigInt>,
    pub offset: Q,
}

/// A face, identified by the facets containing it. The polytope itself is
/// the face with no facets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Face {
    pub dim: usize,
    pub facets: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct RationalPolytope {
    dim: usize,
    vertices: Vec<Vec<Q>>,
    facets: Vec<Facet>,
    faces: Vec<Face>,
}

fn det3(a: &[BigInt], b: &[BigInt], c: &[BigInt]) -> BigInt {
    &a[0] * (&b[1] * &c[2] - &b[2] * &c[1]) - &a[1] * (&b[0] * &c[2] - &b[2] * &c[0])
        + &a[2] * (&b[0] * &c[1] - &b[1] * &c[0])
}

fn spans_space(normals: &[&Vec<BigInt>]) -> bool {
    for i in 0..normals.len() {
        for j in i + 1..normals.len() {
            for k in j + 1..normals.len() {
                if !det3(normals[i], normals[j], normals[k]).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

impl RationalPolytope {
    /// Convex hull of the given points; they must span `R^2` or `R^3`.
    pub fn from_points(points: &[Vec<Q>]) -> Result<Self, ToricError> {
        let dim = points.first().map(Vec::len).ok_or_else(|| ToricError::Degenerate("no points".into()))?;
        if points.iter().any(|p| p.len() != dim) {
            return Err(ToricError::Dimension("points have mixed dimensions".into()));
        }
        let (vertices, mut facets) = match dim {
            2 => {
                let ccw = hull2d(points);
                if ccw.len() < 3 {
                    return Err(ToricError::Degenerate("polygon has empty interior".into()));
                }
                let facets = (0..ccw.len())
                    .map(|i| {
                        let e = sub(&ccw[(i + 1) % ccw.len()], &ccw[i]);
                        let normal = primitive(&[e[1].clone(), -e[0].clone()]);
                        let offset = dot(&int_to_q(&normal), &ccw[i]);
                        Facet { normal, offset }
                    })
                    .collect::<Vec<_>>();
                (ccw, facets)
            }
            3 => {
                let (pts, f3) = hull3d(points)?;
                let verts: Vec<Vec<Q>> = (0..pts.len())
                    .filter(|&i| {
                        let on: Vec<&Vec<BigInt>> = f3.iter().filter(|f| f.points.contains(&i)).map(|f| &f.normal).collect();
                        spans_space(&on)
                    })
                    .map(|i| pts[i].clone())
                    .collect();
                let facets = f3.into_iter().map(|f| Facet { normal: f.normal, offset: f.offset }).collect();
                (verts, facets)
            }
            d => return Err(ToricError::Dimension(format!("dimension {d} is not supported; use 2 or 3"))),
        };
        facets.sort_by(|a, b| a.normal.cmp(&b.normal));
        let mut vertices = dedup(&vertices);
        vertices.sort();
        let faces = build_faces(dim, &vertices, &facets);
        Ok(Self { dim, vertices, facets, faces })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> &[Vec<Q>] {
        &self.vertices
    }

    pub fn facets(&self) -> &[Facet] {
        &self.facets
    }

    /// Faces ordered by dimension (descending), then by facet indices.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn volume(&self) -> Result<Q, ToricError> {
        hull_volume(&self.vertices, self.dim)
    }

    /// Vertices of the face cut out by the given facets.
    pub fn face_points(&self, facets: &[usize]) -> Vec<Vec<Q>> {
        self.vertices
            .iter()
            .filter(|v| facets.iter().all(|&f| self.on_facet(v, f)))
            .cloned()
            .collect()
    }

    fn on_facet(&self, v: &[Q], f: usize) -> bool {
        dot(&int_to_q(&self.facets[f].normal), v) == self.facets[f].offset
    }

    /// `s * P` for a positive rational `s`.
    pub fn scaled(&self, s: &Q) -> Result<Self, ToricError> {
        if *s <= Q::zero() {
            return Err(ToricError::Degenerate("scale factor must be positive".into()));
        }
        let pts: Vec<Vec<Q>> = self.vertices.iter().map(|v| v.iter().map(|x| x * s).collect()).collect();
        Self::from_points(&pts)
    }

    /// Facet index sets of all faces, used to compare combinatorial types.
    pub fn face_signature(&self) -> BTreeSet<Vec<usize>> {
        self.faces.iter().map(|f| f.facets.clone()).collect()
    }
}

fn build_faces(dim: usize, vertices: &[Vec<Q>], facets: &[Facet]) -> Vec<Face> {
    let incid: Vec<BTreeSet<usize>> = facets
        .iter()
        .map(|f| {
            let u = int_to_q(&f.normal);
            (0..vertices.len()).filter(|&i| dot(&u, &vertices[i]) == f.offset).collect()
        })
        .collect();
    let facets_of = |verts: &BTreeSet<usize>| -> Vec<usize> {
        (0..facets.len()).filter(|&f| verts.is_subset(&incid[f])).collect()
    };
    let mut faces = vec![Face { dim, facets: vec![], vertices: (0..vertices.len()).collect() }];
    for (f, verts) in incid.iter().enumerate() {
        faces.push(Face { dim: dim - 1, facets: vec![f], vertices: verts.iter().copied().collect() });
    }
    if dim == 3 {
        let mut edges = BTreeSet::new();
        for a in 0..facets.len() {
            for b in a + 1..facets.len() {
                let common: BTreeSet<usize> = incid[a].intersection(&incid[b]).copied().collect();
                if common.len() >= 2 {
                    edges.insert((facets_of(&common), common));
                }
            }
        }
        for (fs, verts) in edges {
            faces.push(Face { dim: 1, facets: fs, vertices: verts.into_iter().collect() });
        }
    }
    for i in 0..vertices.len() {
        let single: BTreeSet<usize> = [i].into_iter().collect();
        faces.push(Face { dim: 0, facets: facets_of(&single), vertices: vec![i] });
    }
    faces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::toric::rational::{q, qf};

    fn poly(v: &[&[i64]]) -> RationalPolytope {
        let pts: Vec<Vec<Q>> = v.iter().map(|p| p.iter().map(|&x| q(x)).collect()).collect();
        RationalPolytope::from_points(&pts).unwrap()
    }

    #[test]
    fn polygon_faces() {
        let t = poly(&[&[0, 0], &[1, 0], &[0, 1], &[0, 0]]);
        assert_eq!(t.vertices().len(), 3);
        assert_eq!(t.facets().len(), 3);
        assert_eq!(t.faces().len(), 7);
        assert_eq!(t.volume().unwrap(), qf(1, 2));
        assert_eq!(t.scaled(&q(2)).unwrap().volume().unwrap(), q(2));
    }

    #[test]
    fn cube_faces() {
        let c = poly(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[1, 1, 0], &[0, 0, 1], &[1, 0, 1], &[0, 1, 1], &[1, 1, 1]]);
        assert_eq!(c.vertices().len(), 8);
        let count = |d| c.faces().iter().filter(|f| f.dim == d).count();
        assert_eq!((count(3), count(2), count(1), count(0)), (1, 6, 12, 8));
        assert!(c.faces().iter().filter(|f| f.dim == 0).all(|f| f.facets.len() == 3));
    }

    #[test]
    fn rejects_flat_input() {
        let pts = vec![vec![q(0), q(0)], vec![q(1), q(1)], vec![q(2), q(2)]];
        assert!(RationalPolytope::from_points(&pts).is_err());
    }
}
