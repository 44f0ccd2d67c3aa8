//! The fundamental simplex of a hyperbolic honeycomb in the upper half-space.
//!
//! Mirrors `M0`, `M1`, `M2` are vertical (orthogonal to the boundary plane
//! `z = 0`) and trace the meta-`{p,q}` triangle group on the boundary; `M3`
//! is the cell mirror. With `p` finite, `M0` is the plane `y = 0`, `M1` the
//! vertical plane at angle `π/p` and `M3` a hemisphere centered at the origin.
//! The meta-tiling's curvature decides `M2`:
//!
//! * spherical `{p,q}`: a sphere whose trace meets the unit circle in
//!   antipodal points, so the cell center is `(0,0,1)`;
//! * euclidean `{p,q}`: the plane `x = 1`, so the cell center is at infinity;
//! * hyperbolic `{p,q}`: a sphere orthogonal to the unit circle.
//!
//! With `p = ∞` the meta-tile center is ideal and cannot sit at the origin.
//! `M0` and `M1` are then the parallel planes `y = 0` and `y = cos(π/q)`
//! (tangent at infinity), `M2` is the unit hemisphere and `M3` the plane
//! `x = cos(π/r)`.

use crate::conformal::{inversive_product, GeneralizedSphere, Point3, Vec3};
use crate::error::{Error, Result};
use crate::schlafli::{classify_2d, ExtendedInt, Geometry, SchlafliSymbol};

/// Tolerance of the closed inside test.
pub const DOMAIN_TOLERANCE: f64 = 1e-12;

/// Mirror pairs in the order reported by [`Simplex::verify_angles`].
pub const MIRROR_PAIRS: [(usize, usize); 6] = [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3), (1, 3)];

/// How the meta-`{p,q}` tiling on the boundary is laid out.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetaLayout {
    /// Meta-tile centered at the origin, with the given curvature.
    Centered(Geometry),
    /// `p = ∞`: meta-tile center at the point at infinity.
    Strip,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Simplex {
    pub mirrors: [GeneralizedSphere; 4],
    pub symbol: SchlafliSymbol,
    pub geometry: Geometry,
    pub layout: MetaLayout,
}

/// Outcome of folding a point into the fundamental domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CanonicalizeResult {
    pub point: Point3,
    pub total_reflections: u32,
    /// Number of reflections in the cell mirror `M3`.
    pub cell_reflections: u32,
    pub converged: bool,
}

impl Simplex {
    pub fn build(s: SchlafliSymbol) -> Result<Self> {
        build_simplex(s)
    }

    /// Interior dihedral angle target for a mirror pair; `None` means the
    /// pair is tangent at a boundary point.
    pub fn target_angle(&self, i: usize, j: usize) -> Option<f64> {
        let s = self.symbol;
        let term = match (i.min(j), i.max(j)) {
            (0, 1) => s.p,
            (1, 2) => s.q,
            (2, 3) => s.r,
            _ => return Some(std::f64::consts::FRAC_PI_2),
        };
        match term {
            ExtendedInt::Infinity => None,
            t => Some(t.angle()),
        }
    }

    /// Cosine of the interior dihedral angle of the domain along `Mi ∩ Mj`.
    pub fn interior_cos(&self, i: usize, j: usize) -> f64 {
        -inversive_product(&self.mirrors[i].inversive(), &self.mirrors[j].inversive())
    }

    /// Residuals `|measured - target|` for the six mirror pairs in
    /// [`MIRROR_PAIRS`] order. Tangent pairs report `|1 - cos φ|`.
    pub fn verify_angles(&self) -> [f64; 6] {
        MIRROR_PAIRS.map(|(i, j)| {
            let c = self.interior_cos(i, j);
            match self.target_angle(i, j) {
                None => (1.0 - c).abs(),
                Some(t) => {
                    if c.abs() > 1.0 + 1e-9 {
                        f64::INFINITY
                    } else {
                        (c.clamp(-1.0, 1.0).acos() - t).abs()
                    }
                }
            }
        })
    }

    pub fn in_domain(&self, x: Vec3) -> bool {
        self.mirrors.iter().all(|m| m.contains(x, DOMAIN_TOLERANCE))
    }

    pub fn canonicalize(&self, x: Point3, max_iter: u32) -> CanonicalizeResult {
        match x {
            Point3::Finite(v) => self.canonicalize_vec(v, max_iter),
            Point3::AtInfinity => CanonicalizeResult {
                point: Point3::AtInfinity,
                total_reflections: 0,
                cell_reflections: 0,
                converged: false,
            },
        }
    }

    /// Reflects `x` in the first violated mirror, scanning `M0..M3` in order,
    /// until it lies in the domain or `max_iter` reflections have been made.
    pub fn canonicalize_vec(&self, x: Vec3, max_iter: u32) -> CanonicalizeResult {
        self.canonicalize_bounded(x, max_iter, f64::INFINITY)
    }

    /// [`Self::canonicalize_vec`] that also gives up once the fold has
    /// magnified lengths around `x` by more than `max_stretch`. Beyond that,
    /// rounding in the input decides which chamber the point lands in.
    pub fn canonicalize_bounded(&self, mut x: Vec3, max_iter: u32, max_stretch: f64) -> CanonicalizeResult {
        let mut total = 0u32;
        let mut cell = 0u32;
        let mut stretch = 1.0;
        'outer: loop {
            for (i, m) in self.mirrors.iter().enumerate() {
                if m.signed_value(x) > DOMAIN_TOLERANCE {
                    if total >= max_iter || stretch > max_stretch {
                        break 'outer;
                    }
                    if let GeneralizedSphere::Sphere { center, radius, .. } = *m {
                        stretch *= radius * radius / (x - center).norm2();
                    }
                    match m.reflect(x) {
                        Some(y) if y.is_finite() => x = y,
                        _ => {
                            return CanonicalizeResult {
                                point: Point3::AtInfinity,
                                total_reflections: total + 1,
                                cell_reflections: cell + u32::from(i == 3),
                                converged: false,
                            }
                        }
                    }
                    total += 1;
                    if i == 3 {
                        cell += 1;
                    }
                    continue 'outer;
                }
            }
            return CanonicalizeResult {
                point: Point3::Finite(x),
                total_reflections: total,
                cell_reflections: cell,
                converged: true,
            };
        }
        CanonicalizeResult {
            point: Point3::Finite(x),
            total_reflections: total,
            cell_reflections: cell,
            converged: false,
        }
    }

    /// Applies generator reflections in sequence (`word[0]` first).
    pub fn apply_word(&self, word: &[usize], x: Vec3) -> Option<Vec3> {
        word.iter().try_fold(x, |acc, &g| self.mirrors[g].reflect(acc))
    }

    /// A point strictly inside the domain on the boundary plane, if the
    /// domain reaches the boundary. Found by sampling and folding.
    pub fn boundary_probe(&self) -> Option<Vec3> {
        let n = 64;
        let extent = 4.0;
        let mut best: Option<(f64, Vec3)> = None;
        for i in 0..n {
            for j in 0..n {
                let x = Vec3::new(
                    (i as f64 + 0.5) / n as f64 * 2.0 * extent - extent,
                    (j as f64 + 0.5) / n as f64 * 2.0 * extent - extent,
                    0.0,
                );
                let r = self.canonicalize_vec(x, 4000);
                if let (true, Point3::Finite(y)) = (r.converged, r.point) {
                    let margin = self
                        .mirrors
                        .iter()
                        .map(|m| -m.signed_value(y))
                        .fold(f64::INFINITY, f64::min);
                    if best.is_none_or(|(b, _)| margin > b) {
                        best = Some((margin, y));
                    }
                }
            }
        }
        best.filter(|(m, _)| *m > 1e-9).map(|(_, y)| y)
    }
}

pub fn build_simplex(s: SchlafliSymbol) -> Result<Simplex> {
    let geometry = s.geometry();
    if geometry != Geometry::Hyperbolic {
        return Err(Error::UnsupportedGeometry(s));
    }
    let cos_q = s.q.cos_angle();
    let cos_r = s.r.cos_angle();

    let (mirrors, layout) = match s.p {
        ExtendedInt::Infinity => {
            let m0 = GeneralizedSphere::plane(-Vec3::Y, 0.0);
            let m1 = GeneralizedSphere::plane(Vec3::Y, cos_q);
            let m2 = GeneralizedSphere::unit_sphere().flipped();
            let m3 = GeneralizedSphere::plane(Vec3::X, cos_r);
            ([m0, m1, m2, m3], MetaLayout::Strip)
        }
        ExtendedInt::Finite(_) => {
            let sin_p = s.p.sin_angle();
            let cos_p = s.p.cos_angle();
            let m0 = GeneralizedSphere::plane(-Vec3::Y, 0.0);
            let m1 = GeneralizedSphere::plane(Vec3::new(-sin_p, cos_p, 0.0), 0.0);
            let meta = classify_2d(s.p, s.q);
            let (m2, m3) = match meta {
                Geometry::Spherical => {
                    // Trace meets the unit circle antipodally: c² - R² = -1.
                    let c = cos_q / (sin_p * sin_p - cos_q * cos_q).sqrt();
                    let radius = (c * c + 1.0).sqrt();
                    let m2 = GeneralizedSphere::sphere(Vec3::new(-c, 0.0, 0.0), radius);
                    let rc = radius * cos_r;
                    let rho = rc - (rc * rc - 1.0).sqrt();
                    let m3 = GeneralizedSphere::sphere(Vec3::ZERO, rho).flipped();
                    (m2, m3)
                }
                Geometry::Euclidean => {
                    let m2 = GeneralizedSphere::plane(Vec3::X, 1.0);
                    let m3 = GeneralizedSphere::sphere(Vec3::ZERO, 1.0 / cos_r).flipped();
                    (m2, m3)
                }
                Geometry::Hyperbolic => {
                    // Trace orthogonal to the unit circle: c² - R² = 1.
                    let c = cos_q / (cos_q * cos_q - sin_p * sin_p).sqrt();
                    let radius = (c * c - 1.0).sqrt();
                    let m2 = GeneralizedSphere::sphere(Vec3::new(c, 0.0, 0.0), radius).flipped();
                    let rc = radius * cos_r;
                    let rho = rc + (rc * rc + 1.0).sqrt();
                    let m3 = GeneralizedSphere::sphere(Vec3::ZERO, rho);
                    (m2, m3)
                }
            };
            ([m0, m1, m2, m3], MetaLayout::Centered(meta))
        }
    };
    Ok(Simplex {
        mirrors,
        symbol: s,
        geometry,
        layout,
    })
}
