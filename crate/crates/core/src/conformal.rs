//! Conformal-model primitives.
//!
//! Geodesic surfaces in the Poincaré ball and the upper half-space model are
//! spheres or planes, so everything here is phrased in terms of
//! [`GeneralizedSphere`]. Internally a generalized sphere is also handled in
//! its inversive coordinates: a vector in a 5-dimensional Lorentzian space in
//! which inversion becomes a linear reflection and the angle between two
//! surfaces is a bilinear product. That makes the sphere↔plane cases of
//! inversion uniform.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Index, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::hyperboloid::{self, Minkowski};

/// Radius above which an inverted sphere is replaced by a plane.
pub const PLANE_RADIUS_THRESHOLD: f64 = 1e7;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3::new(0.0, 0.0, 0.0);
    pub const X: Vec3 = Vec3::new(1.0, 0.0, 0.0);
    pub const Y: Vec3 = Vec3::new(0.0, 1.0, 0.0);
    pub const Z: Vec3 = Vec3::new(0.0, 0.0, 1.0);

    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm2(self) -> f64 {
        self.dot(self)
    }

    pub fn norm(self) -> f64 {
        self.norm2().sqrt()
    }

    pub fn normalized(self) -> Vec3 {
        self / self.norm()
    }

    pub fn dist(self, o: Vec3) -> f64 {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    /// Any unit vector orthogonal to `self`.
    pub fn any_orthogonal(self) -> Vec3 {
        let a = if self.x.abs() < 0.6 { Vec3::X } else { Vec3::Y };
        self.cross(a).normalized()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for f64 {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<f64> for Vec3 {
    type Output = Vec3;
    fn div(self, s: f64) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Index<usize> for Vec3 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        match i {
            0 => &self.x,
            1 => &self.y,
            2 => &self.z,
            _ => panic!("Vec3 index {i} out of range"),
        }
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

/// A point of a conformal model, including the point at infinity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Point3 {
    Finite(Vec3),
    AtInfinity,
}

impl Point3 {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Point3::Finite(Vec3::new(x, y, z))
    }

    pub fn finite(self) -> Option<Vec3> {
        match self {
            Point3::Finite(v) => Some(v),
            Point3::AtInfinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Point3::AtInfinity)
    }
}

impl From<Vec3> for Point3 {
    fn from(v: Vec3) -> Self {
        Point3::Finite(v)
    }
}

/// Inversive coordinates `(x, y, z, w, t)` with signature `(+,+,+,+,-)`.
pub type Inversive = [f64; 5];

pub fn inversive_product(a: &Inversive, b: &Inversive) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3] - a[4] * b[4]
}

/// The null vector representing a finite point.
pub fn point_inversive(x: Vec3) -> Inversive {
    let n2 = x.norm2();
    [x.x, x.y, x.z, (n2 - 1.0) / 2.0, (n2 + 1.0) / 2.0]
}

/// An oriented sphere or plane.
///
/// The orientation picks the "inside": for a sphere the open ball unless
/// `inverted`, for a plane the side `normal·x < offset` unless `inverted`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GeneralizedSphere {
    Sphere {
        center: Vec3,
        radius: f64,
        inverted: bool,
    },
    Plane {
        normal: Vec3,
        offset: f64,
        inverted: bool,
    },
}

impl GeneralizedSphere {
    pub fn sphere(center: Vec3, radius: f64) -> Self {
        assert!(radius > 0.0, "sphere radius must be positive");
        GeneralizedSphere::Sphere {
            center,
            radius,
            inverted: false,
        }
    }

    /// Plane `normal·x = offset`; the normal is normalized here.
    pub fn plane(normal: Vec3, offset: f64) -> Self {
        let len = normal.norm();
        assert!(len > 0.0, "plane normal must be non-zero");
        GeneralizedSphere::Plane {
            normal: normal / len,
            offset: offset / len,
            inverted: false,
        }
    }

    pub fn unit_sphere() -> Self {
        Self::sphere(Vec3::ZERO, 1.0)
    }

    pub fn is_inverted(&self) -> bool {
        match *self {
            GeneralizedSphere::Sphere { inverted, .. } | GeneralizedSphere::Plane { inverted, .. } => {
                inverted
            }
        }
    }

    /// Same surface, opposite inside.
    pub fn flipped(self) -> Self {
        match self {
            GeneralizedSphere::Sphere {
                center,
                radius,
                inverted,
            } => GeneralizedSphere::Sphere {
                center,
                radius,
                inverted: !inverted,
            },
            GeneralizedSphere::Plane {
                normal,
                offset,
                inverted,
            } => GeneralizedSphere::Plane {
                normal,
                offset,
                inverted: !inverted,
            },
        }
    }

    pub fn with_inverted(self, inv: bool) -> Self {
        if self.is_inverted() == inv {
            self
        } else {
            self.flipped()
        }
    }

    fn sign(&self) -> f64 {
        if self.is_inverted() {
            -1.0
        } else {
            1.0
        }
    }

    /// Unit spacelike inversive vector, signed by orientation.
    pub fn inversive(&self) -> Inversive {
        let s = self.sign();
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => {
                let a = center.norm2() - radius * radius;
                let k = s / radius;
                [
                    center.x * k,
                    center.y * k,
                    center.z * k,
                    (a - 1.0) / 2.0 * k,
                    (a + 1.0) / 2.0 * k,
                ]
            }
            GeneralizedSphere::Plane { normal, offset, .. } => [
                -normal.x * s,
                -normal.y * s,
                -normal.z * s,
                -offset * s,
                -offset * s,
            ],
        }
    }

    /// Recovers a generalized sphere from an inversive vector (any positive
    /// scale). Very flat spheres come back as planes.
    pub fn from_inversive(v: &Inversive) -> Self {
        let scale = inversive_product(v, v).sqrt();
        let v = v.map(|c| c / scale);
        let k = v[4] - v[3];
        let n = Vec3::new(-v[0], -v[1], -v[2]);
        if k.abs() * PLANE_RADIUS_THRESHOLD <= 1.0 {
            let len = n.norm();
            return GeneralizedSphere::Plane {
                normal: n / len,
                offset: -v[3] / len,
                inverted: false,
            };
        }
        GeneralizedSphere::Sphere {
            center: Vec3::new(v[0], v[1], v[2]) / k,
            radius: 1.0 / k.abs(),
            inverted: k < 0.0,
        }
    }

    /// Signed level function, negative inside. For spheres this is
    /// `(|x-c|² - R²)/(2R)`, for planes the signed distance.
    pub fn signed_value(&self, x: Vec3) -> f64 {
        let s = self.sign();
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => {
                s * ((x - center).norm2() - radius * radius) / (2.0 * radius)
            }
            GeneralizedSphere::Plane { normal, offset, .. } => s * (normal.dot(x) - offset),
        }
    }

    /// Closed inside test with absolute tolerance on [`Self::signed_value`].
    pub fn contains(&self, x: Vec3, tol: f64) -> bool {
        self.signed_value(x) <= tol
    }

    /// Euclidean distance from `x` to the surface.
    pub fn distance_to(&self, x: Vec3) -> f64 {
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => ((x - center).norm() - radius).abs(),
            GeneralizedSphere::Plane { normal, offset, .. } => (normal.dot(x) - offset).abs(),
        }
    }

    /// Inversion of a finite point; `None` for the sphere center.
    #[inline]
    pub fn reflect(&self, x: Vec3) -> Option<Vec3> {
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => {
                let d = x - center;
                let d2 = d.norm2();
                if d2 == 0.0 {
                    None
                } else {
                    Some(center + d * (radius * radius / d2))
                }
            }
            GeneralizedSphere::Plane { normal, offset, .. } => {
                Some(x - normal * (2.0 * (normal.dot(x) - offset)))
            }
        }
    }

    /// Three well-separated points on the surface.
    fn sample_points(&self) -> [Vec3; 3] {
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => [
                center + Vec3::new(radius, 0.0, 0.0),
                center + Vec3::new(0.0, radius, 0.0),
                center + Vec3::new(0.0, 0.0, radius),
            ],
            GeneralizedSphere::Plane { normal, offset, .. } => {
                let base = normal * offset;
                let u = normal.any_orthogonal();
                let v = normal.cross(u);
                [base, base + u, base + v]
            }
        }
    }

    /// Four points on the surface not all on a common circle.
    fn generic_points(&self) -> [Vec3; 4] {
        match *self {
            GeneralizedSphere::Sphere { center, radius, .. } => [
                center + Vec3::new(radius, 0.0, 0.0),
                center + Vec3::new(0.0, radius, 0.0),
                center + Vec3::new(0.0, 0.0, radius),
                center + Vec3::new(-0.48, -0.6, -0.64) * radius,
            ],
            GeneralizedSphere::Plane { .. } => {
                let [a, b, c] = self.sample_points();
                [a, b, c, a + (b - a) * 1.7 - (c - a) * 0.9]
            }
        }
    }
}

/// Inversion (or mirror reflection) of a point.
pub fn invert_point(m: &GeneralizedSphere, x: Point3) -> Point3 {
    match (m, x) {
        (GeneralizedSphere::Sphere { center, .. }, Point3::AtInfinity) => Point3::Finite(*center),
        (GeneralizedSphere::Plane { .. }, Point3::AtInfinity) => Point3::AtInfinity,
        (_, Point3::Finite(v)) => m.reflect(v).map_or(Point3::AtInfinity, Point3::Finite),
    }
}

/// Image of `s` under inversion in `m`. Orientation is carried along: the
/// inside of the image is the image of the inside.
pub fn invert_sphere(m: &GeneralizedSphere, s: &GeneralizedSphere) -> GeneralizedSphere {
    let mv = m.inversive();
    let sv = s.inversive();
    let p = 2.0 * inversive_product(&sv, &mv);
    let image: Inversive = std::array::from_fn(|i| sv[i] - p * mv[i]);
    match GeneralizedSphere::from_inversive(&image) {
        plane @ GeneralizedSphere::Plane { .. } => fit_plane(m, s, &image).unwrap_or(plane),
        GeneralizedSphere::Sphere { center, radius, inverted } => {
            let (center, radius) = image_sphere(m, s).unwrap_or((center, radius));
            GeneralizedSphere::Sphere { center, radius, inverted }
        }
    }
}

/// Center and radius of the image sphere from the euclidean data directly.
/// The inversive route loses digits when the image is small and far from
/// the origin.
fn image_sphere(m: &GeneralizedSphere, s: &GeneralizedSphere) -> Option<(Vec3, f64)> {
    use GeneralizedSphere::{Plane, Sphere};
    let out = match (*m, *s) {
        (Sphere { center: c0, radius: big_r, .. }, Sphere { center, radius, .. }) => {
            let d = center - c0;
            let dn = d.norm();
            let delta = (dn - radius) * (dn + radius);
            (c0 + d * (big_r * big_r / delta), big_r * big_r * radius / delta.abs())
        }
        (Plane { .. }, Sphere { center, radius, .. }) => (m.reflect(center)?, radius),
        (Sphere { center: c0, radius: big_r, .. }, Plane { normal, offset, .. }) => {
            let h = normal.dot(c0) - offset;
            (c0 - normal * (big_r * big_r / (2.0 * h)), big_r * big_r / (2.0 * h.abs()))
        }
        (Plane { .. }, Plane { .. }) => return None,
    };
    (out.0.is_finite() && out.1.is_finite() && out.1 > 0.0).then_some(out)
}

/// Plane through three image points, oriented to agree with `image`.
fn fit_plane(m: &GeneralizedSphere, s: &GeneralizedSphere, image: &Inversive) -> Option<GeneralizedSphere> {
    let pts: Vec<Vec3> = s
        .generic_points()
        .iter()
        .filter_map(|&x| m.reflect(x))
        .filter(|p| p.is_finite())
        .collect();
    if pts.len() < 3 {
        return None;
    }
    let (a, b, c) = (pts[0], pts[1], pts[2]);
    let n = (b - a).cross(c - a);
    if n.norm() == 0.0 || !n.is_finite() {
        return None;
    }
    let mut n = n.normalized();
    let hint = Vec3::new(-image[0], -image[1], -image[2]);
    if n.dot(hint) < 0.0 {
        n = -n;
    }
    Some(GeneralizedSphere::Plane {
        normal: n,
        offset: n.dot(a),
        inverted: false,
    })
}

/// Inversive product of the unit vectors of `a` and `b`, evaluated without
/// going through origin-based coordinates, which cancel badly for small
/// spheres far from the origin.
fn oriented_cos(a: &GeneralizedSphere, b: &GeneralizedSphere) -> f64 {
    use GeneralizedSphere::{Plane, Sphere};
    let sign = a.sign() * b.sign();
    let sphere_plane = |c: Vec3, r: f64, n: Vec3, o: f64| (o - n.dot(c)) / r;
    sign * match (*a, *b) {
        (Sphere { center: ca, radius: ra, .. }, Sphere { center: cb, radius: rb, .. }) => {
            ((ra - rb) * (ra - rb) - (ca - cb).norm2()) / (2.0 * ra * rb) + 1.0
        }
        (Sphere { center, radius, .. }, Plane { normal, offset, .. })
        | (Plane { normal, offset, .. }, Sphere { center, radius, .. }) => sphere_plane(center, radius, normal, offset),
        (Plane { normal: na, .. }, Plane { normal: nb, .. }) => na.dot(nb),
    }
}

/// Angle between the outward normals of two oriented surfaces at a common
/// point, in `[0, π]`. For spheres `cos θ = (r_a² + r_b² - |c_a - c_b|²)/(2 r_a r_b)`.
pub fn dihedral(a: &GeneralizedSphere, b: &GeneralizedSphere) -> Result<f64> {
    let c = oriented_cos(a, b);
    if c.abs() > 1.0 + 1e-9 {
        return Err(Error::Disjoint);
    }
    Ok(c.clamp(-1.0, 1.0).acos())
}

const NORTH: Vec3 = Vec3::Z;

/// The inversion that, followed by `z ↦ -z`, carries the ball onto the upper
/// half-space: center at the north pole, radius √2.
pub fn model_inversion() -> GeneralizedSphere {
    GeneralizedSphere::sphere(NORTH, std::f64::consts::SQRT_2)
}

pub fn boundary_plane() -> GeneralizedSphere {
    GeneralizedSphere::plane(Vec3::Z, 0.0)
}

/// Poincaré ball to upper half-space: the origin goes to `(0,0,1)` and the
/// south pole to the origin; the north pole goes to infinity.
pub fn ball_to_uhs(x: Point3) -> Point3 {
    invert_point(&boundary_plane(), invert_point(&model_inversion(), x))
}

pub fn uhs_to_ball(x: Point3) -> Point3 {
    invert_point(&model_inversion(), invert_point(&boundary_plane(), x))
}

pub fn sphere_ball_to_uhs(s: &GeneralizedSphere) -> GeneralizedSphere {
    invert_sphere(&boundary_plane(), &invert_sphere(&model_inversion(), s))
}

pub fn sphere_uhs_to_ball(s: &GeneralizedSphere) -> GeneralizedSphere {
    invert_sphere(&model_inversion(), &invert_sphere(&boundary_plane(), s))
}

pub fn poincare_to_klein(x: Vec3) -> Vec3 {
    x * (2.0 / (1.0 + x.norm2()))
}

/// Hyperbolic distance between two points of the open Poincaré ball.
pub fn ball_distance(a: Vec3, b: Vec3) -> f64 {
    let num = 2.0 * (a - b).norm2();
    let den = (1.0 - a.norm2()) * (1.0 - b.norm2());
    (1.0 + num / den).acosh()
}

/// A hyperbolic sphere in the Poincaré ball.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypSphere {
    pub center: Vec3,
    pub radius: f64,
}

impl HypSphere {
    pub fn new(center: Vec3, radius: f64) -> Result<Self> {
        if center.norm2() >= 1.0 || radius <= 0.0 || !radius.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "hyperbolic sphere needs |center| < 1 and radius > 0 (got {center}, {radius})"
            )));
        }
        Ok(HypSphere { center, radius })
    }

    /// Euclidean `(center, radius)` of the same sphere.
    pub fn to_euclidean(&self) -> (Vec3, f64) {
        hyp_sphere_to_euclidean(self)
    }
}

pub fn hyp_sphere_to_euclidean(h: &HypSphere) -> (Vec3, f64) {
    let r0 = (h.radius / 2.0).tanh();
    let d2 = h.center.norm2();
    let den = d2 * r0 * r0 - 1.0;
    let center = h.center * ((r0 * r0 - 1.0) / den);
    let radius = r0 * (d2 - 1.0) / den;
    (center, radius)
}

const BOUNDARY_EPS: f64 = 1e-12;

/// `n + 1` samples along the ball-model geodesic from `a` to `b`.
///
/// Interior endpoints are sampled uniformly in hyperbolic arc length. When an
/// endpoint sits on the boundary sphere the length is infinite, so samples are
/// spaced uniformly in the angle subtended along the supporting circle.
pub fn geodesic_arc(a: Vec3, b: Vec3, n: usize) -> Result<Vec<Vec3>> {
    if n == 0 {
        return Err(Error::InvalidArgument("geodesic_arc needs n >= 1".into()));
    }
    if a.dist(b) < 1e-15 {
        return Err(Error::DegenerateArc);
    }
    let interior = |x: Vec3| x.norm2() < 1.0 - BOUNDARY_EPS;
    if interior(a) && interior(b) {
        let pa = hyperboloid::lift(a);
        let pb = hyperboloid::lift(b);
        let d = (-pa.dot(&pb)).max(1.0).acosh();
        let sd = d.sinh();
        return Ok((0..=n)
            .map(|i| {
                let t = i as f64 / n as f64;
                if i == 0 {
                    a
                } else if i == n {
                    b
                } else {
                    let p: Minkowski = pa.scale(((1.0 - t) * d).sinh() / sd).add(&pb.scale((t * d).sinh() / sd));
                    hyperboloid::project(&p)
                }
            })
            .collect());
    }
    let arc = GeodesicCircle::through(a, b);
    Ok((0..=n).map(|i| arc.at(i as f64 / n as f64)).collect())
}

/// The euclidean circle (or diameter) carrying a ball geodesic through two
/// points, parameterized by subtended angle.
#[derive(Debug, Clone, Copy)]
pub struct GeodesicCircle {
    a: Vec3,
    b: Vec3,
    /// `None` for a straight diameter segment.
    circle: Option<(Vec3, Vec3, Vec3, f64, f64, f64)>,
}

impl GeodesicCircle {
    pub fn through(a: Vec3, b: Vec3) -> Self {
        let base = if a.norm() > b.norm() { a } else { b };
        let e1 = base.normalized();
        let other = if a.norm() > b.norm() { b } else { a };
        let perp = other - e1 * other.dot(e1);
        if base.norm() < 1e-300 || perp.norm() < 1e-12 * (1.0 + other.norm()) {
            return GeodesicCircle { a, b, circle: None };
        }
        let e2 = perp.normalized();
        let to2 = |x: Vec3| (x.dot(e1), x.dot(e2));
        let (a1, a2) = to2(a);
        let (b1, b2) = to2(b);
        let ra = (1.0 + a.norm2()) / 2.0;
        let rb = (1.0 + b.norm2()) / 2.0;
        let det = a1 * b2 - a2 * b1;
        let g1 = (ra * b2 - a2 * rb) / det;
        let g2 = (a1 * rb - ra * b1) / det;
        let center = e1 * g1 + e2 * g2;
        let radius = ((a1 - g1).powi(2) + (a2 - g2).powi(2)).sqrt();
        let ta = (a2 - g2).atan2(a1 - g1);
        let tb = (b2 - g2).atan2(b1 - g1);
        let mut sweep = tb - ta;
        while sweep > std::f64::consts::PI {
            sweep -= 2.0 * std::f64::consts::PI;
        }
        while sweep <= -std::f64::consts::PI {
            sweep += 2.0 * std::f64::consts::PI;
        }
        GeodesicCircle {
            a,
            b,
            circle: Some((center, e1, e2, radius, ta, sweep)),
        }
    }

    pub fn at(&self, t: f64) -> Vec3 {
        if t == 0.0 {
            return self.a;
        }
        if t == 1.0 {
            return self.b;
        }
        match self.circle {
            None => self.a + (self.b - self.a) * t,
            Some((center, e1, e2, radius, ta, sweep)) => {
                let th = ta + sweep * t;
                center + (e1 * th.cos() + e2 * th.sin()) * radius
            }
        }
    }

    /// Euclidean center and radius of the supporting circle, if not straight.
    pub fn circle(&self) -> Option<(Vec3, f64)> {
        self.circle.map(|(c, _, _, r, _, _)| (c, r))
    }
}
