//! Honeycomb edges in the Poincaré ball.
//!
//! The simplex mirrors are carried from the upper half-space to the ball,
//! where the central cell's center sits at the origin whenever it is
//! material. Edges are then generated by reflecting a seed edge around,
//! breadth first, with all arithmetic done on hyperboloid vectors so that
//! reflections are exact linear maps.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use crate::conformal::{sphere_uhs_to_ball, GeneralizedSphere, Vec3};
use crate::error::{Error, Result};
use crate::hyperboloid::{mirror_normal, orthogonal_complement, project, Minkowski};
use crate::schlafli::{ElementType, Geometry, SchlafliSymbol};
use crate::simplex::build_simplex;

/// Grid used to quantize coordinates for deduplication.
pub const KEY_QUANTUM: f64 = 1e-7;

/// Radius at which edges running out to hyperideal vertices are cut when
/// meshed.
pub const TRUNCATION_RADIUS: f64 = 0.9995;

pub type PointKey = [i64; 3];

pub fn point_key(x: Vec3) -> PointKey {
    [x.x, x.y, x.z].map(|c| (c / KEY_QUANTUM).round() as i64)
}

/// An edge of the honeycomb as a pair of ball-model endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Edge {
    pub a: Vec3,
    pub b: Vec3,
    /// Set when the edge runs through the boundary towards hyperideal
    /// vertices. Its endpoints are then the boundary points where it leaves
    /// hyperbolic space rather than vertices of the honeycomb.
    pub truncated: bool,
    key: (PointKey, PointKey),
}

impl Edge {
    pub fn new(a: Vec3, b: Vec3, truncated: bool) -> Self {
        let (ka, kb) = (point_key(a), point_key(b));
        let key = if ka <= kb { (ka, kb) } else { (kb, ka) };
        Edge { a, b, truncated, key }
    }

    /// Canonical key, independent of endpoint order.
    pub fn id(&self) -> (PointKey, PointKey) {
        self.key
    }

    pub fn euclidean_length(&self) -> f64 {
        self.a.dist(self.b)
    }

    /// Whether endpoint `x` of this edge lies on the boundary sphere.
    pub fn is_ideal(x: Vec3) -> bool {
        (x.norm() - 1.0).abs() < 1e-9
    }
}

/// Deduplicated edges with an endpoint-incidence index.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EdgeSet {
    pub edges: Vec<Edge>,
    /// Edge indices incident to each endpoint.
    pub adjacency: HashMap<PointKey, Vec<usize>>,
}

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet::default()
    }

    /// Builds a set from edges, dropping duplicates (first one wins).
    pub fn from_edges(edges: impl IntoIterator<Item = Edge>) -> Self {
        let mut set = EdgeSet::new();
        for e in edges {
            set.insert(e);
        }
        set
    }

    /// Returns `false` when an edge with the same key is already present.
    pub fn insert(&mut self, e: Edge) -> bool {
        if self.adjacency.get(&e.key.0).is_some_and(|ids| ids.iter().any(|&i| self.edges[i].key == e.key)) {
            return false;
        }
        let i = self.edges.len();
        self.edges.push(e);
        self.adjacency.entry(e.key.0).or_default().push(i);
        if e.key.1 != e.key.0 {
            self.adjacency.entry(e.key.1).or_default().push(i);
        }
        true
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.adjacency
            .get(&e.key.0)
            .is_some_and(|ids| ids.iter().any(|&i| self.edges[i].key == e.key))
    }

    pub fn degree(&self, p: &PointKey) -> usize {
        self.adjacency.get(p).map_or(0, Vec::len)
    }

    pub fn keys(&self) -> HashSet<(PointKey, PointKey)> {
        self.edges.iter().map(|e| e.key).collect()
    }

    /// One edge per line: `ax ay az bx by bz`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {} {} {} {}", e.a.x, e.a.y, e.a.z, e.b.x, e.b.y, e.b.z);
        }
        out
    }
}

/// The simplex mirrors in the ball, as unit spacelike hyperboloid normals.
#[derive(Debug, Clone, PartialEq)]
pub struct BallSimplex {
    pub symbol: SchlafliSymbol,
    pub mirrors: [GeneralizedSphere; 4],
    pub normals: [Minkowski; 4],
}

impl BallSimplex {
    pub fn new(s: SchlafliSymbol) -> Result<Self> {
        if s.geometry() != Geometry::Hyperbolic {
            return Err(Error::UnsupportedGeometry(s));
        }
        let sx = build_simplex(s)?;
        let mirrors = sx.mirrors.map(|m| sphere_uhs_to_ball(&m));
        let normals = mirrors.map(|m| mirror_normal(&m).normalized());
        Ok(BallSimplex {
            symbol: s,
            mirrors,
            normals,
        })
    }

    /// The simplex vertex orthogonal to all mirrors except `skip`.
    fn vertex_opposite(&self, skip: usize) -> Minkowski {
        let [a, b, c]: [Minkowski; 3] = {
            let mut it = (0..4).filter(|&i| i != skip).map(|i| self.normals[i]);
            std::array::from_fn(|_| it.next().unwrap())
        };
        let v = orthogonal_complement(&a, &b, &c);
        if v.0[3] < 0.0 {
            v.scale(-1.0)
        } else {
            v
        }
    }

    /// Center of the central cell, when material.
    pub fn cell_center(&self) -> Result<Minkowski> {
        if self.symbol.cell_type() != ElementType::Material {
            return Err(Error::NoMaterialCenter(self.symbol));
        }
        Ok(self.vertex_opposite(3).normalized())
    }

    /// The edge on the line `M2 ∩ M3` through the simplex's edge midpoint.
    pub fn seed_edge(&self) -> (Minkowski, Minkowski, bool) {
        let v = self.vertex_opposite(0);
        if self.symbol.vertex_type() == ElementType::Hyperideal {
            let e = self.vertex_opposite(1).normalized();
            let w = v.sub(&e.scale(v.dot(&e) / e.dot(&e)));
            let w = w.scale(1.0 / w.norm2().sqrt());
            (e.add(&w).normalized(), e.sub(&w).normalized(), true)
        } else {
            let v = v.normalized();
            (v, v.reflect(&self.normals[0]).normalized(), false)
        }
    }
}

fn to_ball(p: &Minkowski) -> Vec3 {
    let x = project(p);
    // Null vectors project onto the sphere up to rounding; snap them.
    let n = x.norm();
    if (n - 1.0).abs() < 1e-12 {
        x / n
    } else {
        x
    }
}

/// Breadth-first reflection of the seed edge through the four ball mirrors.
///
/// An edge is kept when its euclidean length is at least
/// `min_euclidean_length` and it is reached within `max_depth` reflections;
/// only kept edges are reflected further.
pub fn enumerate_edges(s: SchlafliSymbol, min_euclidean_length: f64, max_depth: usize) -> Result<EdgeSet> {
    if !(min_euclidean_length > 0.0) {
        return Err(Error::InvalidArgument("minimum edge length must be positive".into()));
    }
    let bs = BallSimplex::new(s)?;
    let (a, b, truncated) = bs.seed_edge();
    let mut set = EdgeSet::new();
    let seed = Edge::new(to_ball(&a), to_ball(&b), truncated);
    if seed.euclidean_length() < min_euclidean_length {
        return Ok(set);
    }
    set.insert(seed);
    let mut queue = VecDeque::from([(a, b, 0usize)]);
    while let Some((a, b, depth)) = queue.pop_front() {
        if depth >= max_depth {
            continue;
        }
        for n in &bs.normals {
            let (ra, rb) = (a.reflect(n).normalized(), b.reflect(n).normalized());
            let e = Edge::new(to_ball(&ra), to_ball(&rb), truncated);
            if e.euclidean_length() >= min_euclidean_length && set.insert(e) {
                queue.push_back((ra, rb, depth + 1));
            }
        }
    }
    Ok(set)
}

fn minkowski_key(v: &Minkowski) -> [i64; 4] {
    v.0.map(|c| (c / KEY_QUANTUM).round() as i64)
}

/// Face normals of the central cell: the orbit of the cell mirror under the
/// cell's own symmetry group.
pub fn central_cell_faces(bs: &BallSimplex) -> Result<Vec<Minkowski>> {
    bs.cell_center()?;
    let mut seen = HashSet::new();
    let mut faces = vec![bs.normals[3]];
    seen.insert(minkowski_key(&bs.normals[3]));
    let mut i = 0;
    while i < faces.len() {
        for n in &bs.normals[..3] {
            let f = faces[i].reflect(n);
            if seen.insert(minkowski_key(&f)) {
                faces.push(f);
            }
        }
        i += 1;
    }
    Ok(faces)
}

/// Number of cells at each adjacency distance `0..=depth` from the central
/// cell, where adjacent cells share a face.
pub fn cell_layers(s: SchlafliSymbol, depth: usize) -> Result<Vec<usize>> {
    let bs = BallSimplex::new(s)?;
    let center = bs.cell_center()?;
    let faces = central_cell_faces(&bs)?;
    let mut seen = HashSet::from([minkowski_key(&center)]);
    let mut layer = vec![(center, faces)];
    let mut counts = vec![1];
    for _ in 0..depth {
        let mut next = Vec::new();
        for (c, fs) in &layer {
            for f in fs {
                let nc = c.reflect(f).normalized();
                if seen.insert(minkowski_key(&nc)) {
                    next.push((nc, fs.iter().map(|g| g.reflect(f)).collect::<Vec<_>>()));
                }
            }
        }
        counts.push(next.len());
        layer = next;
    }
    Ok(counts)
}

/// Hyperbolic distance from the cell center to the cell mirror.
pub fn inradius(s: SchlafliSymbol) -> Result<f64> {
    let bs = BallSimplex::new(s)?;
    let t = bs.cell_center()?;
    Ok(t.dot(&bs.normals[3]).abs().asinh())
}

/// Scale factor of the boundary image under translation by one cell along
/// a tower of cells: `exp(2 · inradius)`.
pub fn self_similar_scale(s: SchlafliSymbol) -> Result<f64> {
    Ok((2.0 * inradius(s)?).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::ball_distance;
    use std::f64::consts::PI;

    fn sym(t: &str) -> SchlafliSymbol {
        t.parse().unwrap()
    }

    #[test]
    fn central_cell_is_at_the_origin() {
        let bs = BallSimplex::new(sym("{4,3,5}")).unwrap();
        let c = project(&bs.cell_center().unwrap());
        assert!(c.norm() < 1e-12, "{c}");
    }

    #[test]
    fn inradius_of_437_matches_closed_form() {
        let expected = (2f64.sqrt() * (PI / 7.0).cos()).acosh();
        assert!((inradius(sym("{4,3,7}")).unwrap() - expected).abs() < 1e-9);
        assert!((self_similar_scale(sym("{4,3,7}")).unwrap() - 4.25917).abs() < 1e-4);
    }

    #[test]
    fn inradius_matches_distance_to_mirror() {
        // Oracle: closest point of the (ball) cell mirror to the origin.
        for t in ["{4,3,5}", "{4,3,6}", "{5,3,4}", "{3,3,7}"] {
            let bs = BallSimplex::new(sym(t)).unwrap();
            let d = match bs.mirrors[3] {
                GeneralizedSphere::Sphere { center, radius, .. } => {
                    let near = center.norm() - radius;
                    ball_distance(Vec3::ZERO, center.normalized() * near)
                }
                GeneralizedSphere::Plane { .. } => 0.0,
            };
            assert!((inradius(sym(t)).unwrap() - d).abs() < 1e-9, "{t}");
        }
    }

    #[test]
    fn ideal_and_hyperideal_cells_have_no_center() {
        for t in ["{7,3,4}", "{6,3,4}", "{4,4,3}", "{i,3,3}"] {
            assert_eq!(inradius(sym(t)), Err(Error::NoMaterialCenter(sym(t))), "{t}");
        }
    }

    #[test]
    fn cube_has_six_faces_and_layers_grow() {
        let bs = BallSimplex::new(sym("{4,3,5}")).unwrap();
        assert_eq!(central_cell_faces(&bs).unwrap().len(), 6);
        assert_eq!(cell_layers(sym("{4,3,5}"), 2).unwrap(), vec![1, 6, 30]);
        let bs = BallSimplex::new(sym("{5,3,4}")).unwrap();
        assert_eq!(central_cell_faces(&bs).unwrap().len(), 12);
    }

    #[test]
    fn seed_edge_is_a_cube_edge() {
        // Cube edges of {4,3,5} have the length given by the edge midpoint
        // and vertex of the simplex.
        let bs = BallSimplex::new(sym("{4,3,5}")).unwrap();
        let (a, b, truncated) = bs.seed_edge();
        assert!(!truncated);
        let c = bs.cell_center().unwrap();
        let (da, db) = (crate::hyperboloid::distance(&c, &a), crate::hyperboloid::distance(&c, &b));
        assert!((da - db).abs() < 1e-12);
    }

    #[test]
    fn hyperideal_seed_reaches_the_boundary() {
        let bs = BallSimplex::new(sym("{4,3,7}")).unwrap();
        let (a, b, truncated) = bs.seed_edge();
        assert!(truncated);
        for p in [a, b] {
            assert!((to_ball(&p).norm() - 1.0).abs() < 1e-12);
            for i in [2, 3] {
                assert!(p.dot(&bs.normals[i]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn enumeration_is_closed_and_deterministic() {
        let s = sym("{4,3,5}");
        let es = enumerate_edges(s, 0.05, 6).unwrap();
        assert!(es.len() > 12);
        assert_eq!(es.keys(), enumerate_edges(s, 0.05, 6).unwrap().keys());
        assert!(enumerate_edges(s, 10.0, 6).unwrap().is_empty());
        assert_eq!(enumerate_edges(s, 0.05, 0).unwrap().len(), 1);
    }

    #[test]
    fn central_cube_vertices_have_degree_twelve() {
        let es = enumerate_edges(sym("{4,3,5}"), 0.05, 10).unwrap();
        let bs = BallSimplex::new(sym("{4,3,5}")).unwrap();
        let (a, _, _) = bs.seed_edge();
        assert_eq!(es.degree(&point_key(to_ball(&a))), 12);
    }
}
