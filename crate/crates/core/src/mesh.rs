//! Printable tube meshes around honeycomb edges.
//!
//! A tube of constant hyperbolic radius around a geodesic is a Dupin
//! cyclide in the ball. It is the envelope of hyperbolic spheres centered on
//! the geodesic, and each sphere touches it along a circle. Those circles are
//! computed on the hyperboloid as `P cosh r + sinh r (cos θ E1 + sin θ E2)`,
//! with `E1`, `E2` a fixed orthonormal basis of the directions orthogonal to
//! the geodesic's plane. Using the same basis for every ring transports the
//! phase along the edge without twist.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::conformal::Vec3;
use crate::error::{Error, Result};
use crate::honeycomb::{point_key, Edge, EdgeSet, PointKey, TRUNCATION_RADIUS};
use crate::hyperboloid::{lift, orthogonal_complement, project, Minkowski};

/// How thick each ring of a tube is.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ThicknessPolicy {
    /// Constant hyperbolic radius, equal to a euclidean radius `r0` at the
    /// center of the ball.
    Accurate { r0: f64 },
    /// As `Accurate`, but rings never get thinner than the given diameter.
    AccurateClamped { r0: f64, min_euclidean_diameter: f64 },
    ConstantEuclidean { radius: f64 },
}

impl ThicknessPolicy {
    pub fn validate(&self) -> Result<()> {
        let ok = match *self {
            ThicknessPolicy::Accurate { r0 } => r0 > 0.0 && r0 < 1.0,
            ThicknessPolicy::AccurateClamped {
                r0,
                min_euclidean_diameter,
            } => r0 > 0.0 && r0 < 1.0 && min_euclidean_diameter > 0.0,
            ThicknessPolicy::ConstantEuclidean { radius } => radius > 0.0 && radius < 1.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidArgument(format!("invalid thickness policy {self:?}")))
        }
    }
}

/// Hyperbolic radius whose sphere at the origin has euclidean radius `r0`.
pub fn hyperbolic_radius(r0: f64) -> f64 {
    2.0 * r0.atanh()
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Mesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
}

impl Mesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn append(&mut self, other: &Mesh) {
        let base = self.vertices.len() as u32;
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles
            .extend(other.triangles.iter().map(|t| t.map(|i| i + base)));
    }

    /// Every undirected mesh edge is used by exactly two triangles, once in
    /// each direction, and all indices are in range.
    pub fn is_closed_manifold(&self) -> bool {
        let n = self.vertices.len() as u32;
        let mut directed: HashMap<(u32, u32), usize> = HashMap::new();
        for t in &self.triangles {
            if t.iter().any(|&i| i >= n) || t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
                return false;
            }
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        !self.triangles.is_empty()
            && directed
                .iter()
                .all(|(&(a, b), &c)| c == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// Signed enclosed volume; positive when faces wind outward.
    pub fn signed_volume(&self) -> f64 {
        self.triangles
            .iter()
            .map(|t| {
                let [a, b, c] = t.map(|i| self.vertices[i as usize]);
                a.dot(b.cross(c)) / 6.0
            })
            .sum()
    }

    pub fn bounding_box(&self) -> Option<(Vec3, Vec3)> {
        let first = *self.vertices.first()?;
        Some(self.vertices.iter().fold((first, first), |(lo, hi), v| {
            (
                Vec3::new(lo.x.min(v.x), lo.y.min(v.y), lo.z.min(v.z)),
                Vec3::new(hi.x.max(v.x), hi.y.max(v.y), hi.z.max(v.z)),
            )
        }))
    }
}

/// A segment of a geodesic: `P(s) = m cosh s + u sinh s` for `s` in
/// `[s0, s1]`, with ideal ends cut at [`TRUNCATION_RADIUS`].
#[derive(Debug, Clone, Copy)]
struct Segment {
    m: Minkowski,
    u: Minkowski,
    s0: f64,
    s1: f64,
    ideal_end: bool,
}

fn endpoint_vector(x: Vec3) -> (Minkowski, bool) {
    if Edge::is_ideal(x) {
        let x = x.normalized();
        (Minkowski([x.x, x.y, x.z, 1.0]), true)
    } else {
        (lift(x), false)
    }
}

impl Segment {
    fn of(e: &Edge) -> Result<Segment> {
        if e.a.dist(e.b) < 1e-12 || e.a.norm() > 1.0 + 1e-9 || e.b.norm() > 1.0 + 1e-9 {
            return Err(Error::DegenerateArc);
        }
        let (a, ia) = endpoint_vector(e.a);
        let (b, ib) = endpoint_vector(e.b);
        let seg = match (ia, ib) {
            (false, false) => {
                let len = (-a.dot(&b)).max(1.0).acosh();
                if len < 1e-12 {
                    return Err(Error::DegenerateArc);
                }
                let u = b.sub(&a.scale(len.cosh())).scale(1.0 / len.sinh());
                Segment {
                    m: a,
                    u,
                    s0: 0.0,
                    s1: len,
                    ideal_end: false,
                }
            }
            (false, true) | (true, false) => {
                let (p, n, flip) = if ia { (b, a, true) } else { (a, b, false) };
                let u = n.scale(1.0 / -n.dot(&p)).sub(&p);
                let mut seg = Segment {
                    m: p,
                    u,
                    s0: 0.0,
                    s1: 0.0,
                    ideal_end: true,
                };
                seg.s1 = seg.clip(true);
                if flip {
                    seg.u = seg.u.scale(-1.0);
                    seg.s0 = -seg.s1;
                    seg.s1 = 0.0;
                }
                seg
            }
            (true, true) => {
                let k = (-2.0 * a.dot(&b)).sqrt();
                if !(k > 1e-12) {
                    return Err(Error::DegenerateArc);
                }
                let mut seg = Segment {
                    m: a.add(&b).scale(1.0 / k),
                    u: a.sub(&b).scale(1.0 / k),
                    s0: 0.0,
                    s1: 0.0,
                    ideal_end: true,
                };
                seg.s0 = seg.clip(false);
                seg.s1 = seg.clip(true);
                seg
            }
        };
        Ok(seg)
    }

    fn point(&self, s: f64) -> Minkowski {
        self.m.scale(s.cosh()).add(&self.u.scale(s.sinh()))
    }

    /// Parameter of the point nearest the ball's center, unclamped.
    fn closest_to_origin(&self) -> f64 {
        (-self.u.0[3] / self.m.0[3]).atanh()
    }

    /// Parameter, towards `+∞` or `-∞`, where the geodesic crosses the
    /// truncation sphere.
    fn clip(&self, forward: bool) -> f64 {
        let target = hyperbolic_radius(TRUNCATION_RADIUS).cosh();
        let start = self.closest_to_origin();
        let t = |s: f64| self.m.0[3] * s.cosh() + self.u.0[3] * s.sinh();
        let dir = if forward { 1.0 } else { -1.0 };
        let (mut lo, mut hi) = (0.0, 1.0);
        while t(start + dir * hi) < target {
            hi *= 2.0;
        }
        if t(start) >= target {
            return start;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if t(start + dir * mid) < target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        start + dir * 0.5 * (lo + hi)
    }

    /// Unit spacelike vectors orthogonal to the geodesic's plane.
    fn normal_frame(&self) -> (Minkowski, Minkowski) {
        let basis = [
            Minkowski([1.0, 0.0, 0.0, 0.0]),
            Minkowski([0.0, 1.0, 0.0, 0.0]),
            Minkowski([0.0, 0.0, 1.0, 0.0]),
        ];
        let (m, u) = (self.m, self.u);
        let e1 = basis
            .iter()
            .map(|v| v.add(&m.scale(v.dot(&m))).sub(&u.scale(v.dot(&u))))
            .max_by(|a, b| a.norm2().total_cmp(&b.norm2()))
            .unwrap();
        let e1 = e1.scale(1.0 / e1.norm2().sqrt());
        let e2 = orthogonal_complement(&m, &u, &e1);
        // Fix the handedness of (m, u, e1, e2) so every tube winds the same way.
        let sign = det4([m.0, u.0, e1.0, e2.0]).signum();
        (e1, e2.scale(sign / e2.norm2().sqrt()))
    }

    /// Ring parameters: uniform in hyperbolic arc length, or in euclidean
    /// arc length (equivalently, in angle along the arc) when an end is
    /// ideal.
    fn ring_parameters(&self, n: usize) -> Vec<f64> {
        let uniform = |k: usize| self.s0 + (self.s1 - self.s0) * k as f64 / (n - 1) as f64;
        if !self.ideal_end {
            return (0..n).map(uniform).collect();
        }
        let fine = 64 * n;
        let ss: Vec<f64> = (0..=fine)
            .map(|k| self.s0 + (self.s1 - self.s0) * k as f64 / fine as f64)
            .collect();
        let pts: Vec<Vec3> = ss.iter().map(|&s| project(&self.point(s))).collect();
        let mut acc = vec![0.0];
        for w in pts.windows(2) {
            acc.push(acc.last().unwrap() + w[0].dist(w[1]));
        }
        let total = *acc.last().unwrap();
        (0..n)
            .map(|k| {
                let target = total * k as f64 / (n - 1) as f64;
                let j = acc.partition_point(|&l| l < target).clamp(1, fine);
                let f = (target - acc[j - 1]) / (acc[j] - acc[j - 1]).max(f64::MIN_POSITIVE);
                ss[j - 1] + (ss[j] - ss[j - 1]) * f.clamp(0.0, 1.0)
            })
            .collect()
    }
}

fn det4(m: [[f64; 4]; 4]) -> f64 {
    let minor = |c: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != c).collect();
        let e = |r: usize, k: usize| m[r + 1][cols[k]];
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    (0..4).map(|c| if c % 2 == 0 { 1.0 } else { -1.0 } * m[0][c] * minor(c)).sum()
}

fn ring(p: &Minkowski, e1: &Minkowski, e2: &Minkowski, r: f64, n_around: usize) -> Vec<Vec3> {
    (0..n_around)
        .map(|k| {
            let th = 2.0 * std::f64::consts::PI * k as f64 / n_around as f64;
            let x = p
                .scale(r.cosh())
                .add(&e1.scale(r.sinh() * th.cos()))
                .add(&e2.scale(r.sinh() * th.sin()));
            project(&x)
        })
        .collect()
}

fn circumdiameter(a: Vec3, b: Vec3, c: Vec3) -> f64 {
    let (ab, bc, ca) = (a.dist(b), b.dist(c), c.dist(a));
    let area2 = (b - a).cross(c - a).norm();
    if area2 == 0.0 {
        return ab.max(bc).max(ca);
    }
    ab * bc * ca / area2
}

/// Euclidean diameter of the ring of hyperbolic radius `r` about `p`.
fn ring_diameter(p: &Minkowski, e1: &Minkowski, e2: &Minkowski, r: f64) -> f64 {
    let pts = ring(p, e1, e2, r, 3);
    circumdiameter(pts[0], pts[1], pts[2])
}

/// Hyperbolic radius giving a ring of euclidean diameter `d` about `p`.
fn radius_for_diameter(p: &Minkowski, e1: &Minkowski, e2: &Minkowski, d: f64) -> f64 {
    let (mut lo, mut hi) = (0.0, 1.0);
    while ring_diameter(p, e1, e2, hi) < d && hi < 64.0 {
        hi *= 2.0;
    }
    for _ in 0..100 {
        let mid = 0.5 * (lo + hi);
        if ring_diameter(p, e1, e2, mid) < d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

fn ring_radius(policy: &ThicknessPolicy, p: &Minkowski, e1: &Minkowski, e2: &Minkowski) -> f64 {
    match *policy {
        ThicknessPolicy::Accurate { r0 } => hyperbolic_radius(r0),
        ThicknessPolicy::AccurateClamped {
            r0,
            min_euclidean_diameter,
        } => {
            let r = hyperbolic_radius(r0);
            if ring_diameter(p, e1, e2, r) >= min_euclidean_diameter {
                r
            } else {
                radius_for_diameter(p, e1, e2, min_euclidean_diameter)
            }
        }
        ThicknessPolicy::ConstantEuclidean { radius } => radius_for_diameter(p, e1, e2, 2.0 * radius),
    }
}

/// Closed tube around an edge: `n_rings` rings of `n_around` vertices,
/// capped at both ends by triangle fans.
pub fn cyclide_tube(e: &Edge, policy: ThicknessPolicy, n_rings: usize, n_around: usize) -> Result<Mesh> {
    if n_rings < 2 || n_around < 3 {
        return Err(Error::InvalidArgument("tubes need at least 2 rings of 3 vertices".into()));
    }
    policy.validate()?;
    let seg = Segment::of(e)?;
    let (e1, e2) = seg.normal_frame();
    let mut mesh = Mesh::default();
    let params = seg.ring_parameters(n_rings);
    for &s in &params {
        let p = seg.point(s);
        let r = ring_radius(&policy, &p, &e1, &e2);
        mesh.vertices.extend(ring(&p, &e1, &e2, r, n_around));
    }
    let idx = |i: usize, k: usize| (i * n_around + k % n_around) as u32;
    for i in 0..n_rings - 1 {
        for k in 0..n_around {
            mesh.triangles.push([idx(i, k), idx(i + 1, k), idx(i + 1, k + 1)]);
            mesh.triangles.push([idx(i, k), idx(i + 1, k + 1), idx(i, k + 1)]);
        }
    }
    let first = mesh.vertices.len() as u32;
    mesh.vertices.push(project(&seg.point(params[0])));
    mesh.vertices.push(project(&seg.point(params[n_rings - 1])));
    for k in 0..n_around {
        mesh.triangles.push([first, idx(0, k), idx(0, k + 1)]);
        mesh.triangles.push([first + 1, idx(n_rings - 1, k + 1), idx(n_rings - 1, k)]);
    }
    Ok(mesh)
}

/// Largest ring diameter an edge's tube would have under `policy`.
pub fn max_tube_diameter(e: &Edge, policy: ThicknessPolicy) -> Result<f64> {
    policy.validate()?;
    let seg = Segment::of(e)?;
    let (e1, e2) = seg.normal_frame();
    let s = seg.closest_to_origin().clamp(seg.s0, seg.s1);
    let p = seg.point(s);
    Ok(ring_diameter(&p, &e1, &e2, ring_radius(&policy, &p, &e1, &e2)))
}

/// Tubes for every edge of a set, concatenated in edge order.
pub fn mesh_edges(es: &EdgeSet, policy: ThicknessPolicy, n_rings: usize, n_around: usize) -> Result<Mesh> {
    let tubes: Vec<Mesh> = es
        .edges
        .par_iter()
        .map(|e| cyclide_tube(e, policy, n_rings, n_around))
        .collect::<Result<_>>()?;
    let mut mesh = Mesh::default();
    for t in &tubes {
        mesh.append(t);
    }
    Ok(mesh)
}

/// Drops edges thinner than `min_diameter` according to `diameter`, then
/// repeatedly removes edges with a dangling endpoint. Ideal endpoints of
/// truncated edges lie on the boundary sphere and never count as dangling.
pub fn cull_by(es: &EdgeSet, min_diameter: f64, diameter: impl Fn(&Edge) -> f64) -> EdgeSet {
    let mut alive: Vec<bool> = es.edges.iter().map(|e| diameter(e) >= min_diameter).collect();
    let anchored = |e: &Edge, p: Vec3| e.truncated && Edge::is_ideal(p);
    let mut degree: HashMap<PointKey, usize> = HashMap::new();
    for (e, _) in es.edges.iter().zip(&alive).filter(|(_, &a)| a) {
        for p in [e.a, e.b] {
            *degree.entry(point_key(p)).or_default() += 1;
        }
    }
    let mut pending: Vec<PointKey> = degree.iter().filter(|(_, &d)| d == 1).map(|(&k, _)| k).collect();
    pending.sort_unstable();
    let mut visited: HashSet<PointKey> = HashSet::new();
    while let Some(k) = pending.pop() {
        if degree.get(&k) != Some(&1) {
            continue;
        }
        let Some(&i) = es.adjacency.get(&k).and_then(|ids| ids.iter().find(|&&i| alive[i])) else {
            continue;
        };
        let e = &es.edges[i];
        let end = if point_key(e.a) == k { e.a } else { e.b };
        if anchored(e, end) {
            visited.insert(k);
            continue;
        }
        alive[i] = false;
        for p in [e.a, e.b] {
            let pk = point_key(p);
            let d = degree.get_mut(&pk).unwrap();
            *d -= 1;
            if *d == 1 && !visited.contains(&pk) {
                pending.push(pk);
            }
        }
    }
    EdgeSet::from_edges(es.edges.iter().zip(&alive).filter(|(_, &a)| a).map(|(e, _)| *e))
}

/// [`cull_by`] with the tube diameter of an accurate policy of radius `r0`.
/// Edges whose tube cannot be built count as infinitely thin.
pub fn cull(es: &EdgeSet, min_euclidean_diameter: f64, r0: f64) -> EdgeSet {
    let policy = ThicknessPolicy::Accurate { r0 };
    cull_by(es, min_euclidean_diameter, |e| max_tube_diameter(e, policy).unwrap_or(0.0))
}

fn facet_normal(a: Vec3, b: Vec3, c: Vec3) -> Vec3 {
    let n = (b - a).cross(c - a);
    let len = n.norm();
    if len > 0.0 {
        n / len
    } else {
        Vec3::ZERO
    }
}

/// Binary STL, coordinates multiplied by `scale_mm`.
pub fn export_stl(m: &Mesh, scale_mm: f64) -> Result<Vec<u8>> {
    if m.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let mut out = Vec::with_capacity(84 + 50 * m.triangles.len());
    let mut header = [0u8; 80];
    let tag = b"binary STL, units: mm";
    header[..tag.len()].copy_from_slice(tag);
    out.extend_from_slice(&header);
    out.extend_from_slice(&(m.triangles.len() as u32).to_le_bytes());
    for t in &m.triangles {
        let [a, b, c] = t.map(|i| m.vertices[i as usize] * scale_mm);
        for v in [facet_normal(a, b, c), a, b, c] {
            for x in [v.x, v.y, v.z] {
                out.extend_from_slice(&(x as f32).to_le_bytes());
            }
        }
        out.extend_from_slice(&0u16.to_le_bytes());
    }
    Ok(out)
}

pub type StlTriangle = [[f32; 3]; 3];

/// Triangle soup of a binary STL, normals dropped.
pub fn parse_stl(bytes: &[u8]) -> Result<Vec<StlTriangle>> {
    let bad = |msg: &str| Error::InvalidArgument(format!("malformed STL: {msg}"));
    if bytes.len() < 84 {
        return Err(bad("shorter than header"));
    }
    let n = u32::from_le_bytes(bytes[80..84].try_into().unwrap()) as usize;
    if bytes.len() != 84 + 50 * n {
        return Err(bad("length does not match triangle count"));
    }
    let f = |off: usize| f32::from_le_bytes(bytes[off..off + 4].try_into().unwrap());
    Ok((0..n)
        .map(|i| {
            let rec = 84 + 50 * i + 12;
            std::array::from_fn(|v| std::array::from_fn(|c| f(rec + 12 * v + 4 * c)))
        })
        .collect())
}

/// Wavefront OBJ text with 1-based indices.
pub fn export_obj(m: &Mesh) -> Result<String> {
    if m.is_empty() {
        return Err(Error::EmptyMesh);
    }
    let mut out = String::new();
    for v in &m.vertices {
        let _ = writeln!(out, "v {} {} {}", v.x, v.y, v.z);
    }
    for t in &m.triangles {
        let _ = writeln!(out, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conformal::{hyp_sphere_to_euclidean, HypSphere};

    fn tri() -> Mesh {
        Mesh {
            vertices: vec![Vec3::ZERO, Vec3::X, Vec3::Y],
            triangles: vec![[0, 1, 2]],
        }
    }

    #[test]
    fn single_triangle_stl_is_134_bytes() {
        let bytes = export_stl(&tri(), 1.0).unwrap();
        assert_eq!(bytes.len(), 134);
        let soup = parse_stl(&bytes).unwrap();
        assert_eq!(soup, vec![[[0.0, 0.0, 0.0], [1.0, 0.0, 0.0], [0.0, 1.0, 0.0]]]);
        // Normal of the xy triangle is +z.
        assert_eq!(&bytes[84..96], [0f32, 0.0, 1.0].map(f32::to_le_bytes).concat().as_slice());
    }

    #[test]
    fn empty_mesh_is_rejected() {
        assert_eq!(export_stl(&Mesh::default(), 1.0), Err(Error::EmptyMesh));
        assert_eq!(export_obj(&Mesh::default()), Err(Error::EmptyMesh));
    }

    #[test]
    fn obj_uses_one_based_indices() {
        let obj = export_obj(&tri()).unwrap();
        assert!(obj.ends_with("f 1 2 3\n"), "{obj}");
        assert_eq!(obj.lines().filter(|l| l.starts_with("v ")).count(), 3);
    }

    #[test]
    fn diameter_tube_is_coaxial() {
        let e = Edge::new(Vec3::new(0.0, 0.0, -0.6), Vec3::new(0.0, 0.0, 0.6), false);
        let m = cyclide_tube(&e, ThicknessPolicy::Accurate { r0: 0.05 }, 9, 12).unwrap();
        assert!(m.is_closed_manifold());
        assert!(m.signed_volume() > 0.0);
        for ring in m.vertices[..9 * 12].chunks(12) {
            let z = ring[0].z;
            let rad = ring[0].x.hypot(ring[0].y);
            for v in ring {
                assert!((v.z - z).abs() < 1e-9 && (v.x.hypot(v.y) - rad).abs() < 1e-9);
            }
        }
        // Central ring has euclidean radius r0.
        let mid = &m.vertices[4 * 12..5 * 12];
        assert!((mid[0].x.hypot(mid[0].y) - 0.05).abs() < 1e-12);
    }

    #[test]
    fn rings_lie_on_the_enveloped_spheres() {
        // Oracle: each ring sits on the euclidean image of the hyperbolic
        // sphere centered at the ring's core point.
        let e = Edge::new(Vec3::new(0.3, -0.2, 0.1), Vec3::new(-0.1, 0.5, 0.4), false);
        let r0 = 0.04;
        let seg = Segment::of(&e).unwrap();
        let (e1, e2) = seg.normal_frame();
        for s in seg.ring_parameters(5) {
            let p = seg.point(s);
            let pts = ring(&p, &e1, &e2, hyperbolic_radius(r0), 16);
            let h = HypSphere::new(project(&p), hyperbolic_radius(r0)).unwrap();
            let (c, r) = hyp_sphere_to_euclidean(&h);
            for x in pts {
                assert!((x.dist(c) - r).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn off_center_rings_shrink_towards_the_boundary() {
        let e = Edge::new(Vec3::new(0.2, 0.1, 0.0), Vec3::new(0.8, 0.3, 0.1), false);
        let seg = Segment::of(&e).unwrap();
        let (e1, e2) = seg.normal_frame();
        let r = hyperbolic_radius(0.05);
        let d: Vec<f64> = seg
            .ring_parameters(8)
            .iter()
            .map(|&s| ring_diameter(&seg.point(s), &e1, &e2, r))
            .collect();
        assert!(d.windows(2).all(|w| w[1] < w[0]), "{d:?}");
    }

    #[test]
    fn ideal_edges_are_truncated() {
        let a = Vec3::new(1.0, 0.0, 0.0);
        let b = Vec3::new(0.0, 0.6, 0.8);
        let e = Edge::new(a, b, true);
        let m = cyclide_tube(&e, ThicknessPolicy::Accurate { r0: 0.02 }, 12, 8).unwrap();
        assert!(m.is_closed_manifold());
        assert!(m.signed_volume() > 0.0);
        assert!(m.vertices.iter().all(|v| v.norm() < 1.0));
        let seg = Segment::of(&e).unwrap();
        for s in [seg.s0, seg.s1] {
            assert!((project(&seg.point(s)).norm() - TRUNCATION_RADIUS).abs() < 1e-9);
        }
        let half = Edge::new(Vec3::new(0.1, 0.2, 0.0), a, false);
        assert!(cyclide_tube(&half, ThicknessPolicy::Accurate { r0: 0.02 }, 6, 8).is_ok());
    }

    #[test]
    fn clamped_rings_keep_the_minimum_diameter() {
        let e = Edge::new(Vec3::new(0.0, 0.0, 0.0), Vec3::new(0.97, 0.0, 0.0), false);
        let d = 0.02;
        let seg = Segment::of(&e).unwrap();
        let (e1, e2) = seg.normal_frame();
        let acc = ThicknessPolicy::Accurate { r0: 0.05 };
        let clamped = ThicknessPolicy::AccurateClamped {
            r0: 0.05,
            min_euclidean_diameter: d,
        };
        for s in seg.ring_parameters(10) {
            let p = seg.point(s);
            let da = ring_diameter(&p, &e1, &e2, ring_radius(&acc, &p, &e1, &e2));
            let dc = ring_diameter(&p, &e1, &e2, ring_radius(&clamped, &p, &e1, &e2));
            assert!(dc >= d - 1e-12);
            if da >= d {
                assert_eq!(da, dc);
            } else {
                assert!((dc - d).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_edges_fail() {
        let e = Edge::new(Vec3::X * 0.5, Vec3::X * 0.5, false);
        assert_eq!(cyclide_tube(&e, ThicknessPolicy::Accurate { r0: 0.1 }, 3, 3), Err(Error::DegenerateArc));
    }
}
