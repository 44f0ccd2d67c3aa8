//! Minkowski space `R^{3,1}` helpers.
//!
//! Ball-model mirrors are spheres orthogonal to the unit sphere, and their
//! inversive coordinates restricted to `(x, y, z, t)` are exactly the unit
//! spacelike normals of the hyperboloid model. Working here turns reflections
//! into linear maps and vertex computations into null-space problems.

use crate::conformal::{GeneralizedSphere, Vec3};

/// A vector `(x, y, z, t)` with product `xx' + yy' + zz' - tt'`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Minkowski(pub [f64; 4]);

impl Minkowski {
    pub const ORIGIN: Minkowski = Minkowski([0.0, 0.0, 0.0, 1.0]);

    pub fn dot(&self, o: &Minkowski) -> f64 {
        let (a, b) = (self.0, o.0);
        a[0] * b[0] + a[1] * b[1] + a[2] * b[2] - a[3] * b[3]
    }

    pub fn norm2(&self) -> f64 {
        self.dot(self)
    }

    pub fn scale(&self, s: f64) -> Minkowski {
        Minkowski(self.0.map(|c| c * s))
    }

    pub fn add(&self, o: &Minkowski) -> Minkowski {
        Minkowski(std::array::from_fn(|i| self.0[i] + o.0[i]))
    }

    pub fn sub(&self, o: &Minkowski) -> Minkowski {
        Minkowski(std::array::from_fn(|i| self.0[i] - o.0[i]))
    }

    pub fn spatial(&self) -> Vec3 {
        Vec3::new(self.0[0], self.0[1], self.0[2])
    }

    /// Reflection in the hyperplane orthogonal to unit spacelike `n`.
    pub fn reflect(&self, n: &Minkowski) -> Minkowski {
        self.sub(&n.scale(2.0 * self.dot(n) / n.norm2()))
    }

    /// Scale to `|<v,v>| = 1` with the time component made non-negative when
    /// timelike. Null vectors are scaled to `t = 1`.
    pub fn normalized(&self) -> Minkowski {
        let n2 = self.norm2();
        let scale = if n2.abs() < 1e-12 * self.0[3].abs().max(1.0).powi(2) {
            1.0 / self.0[3]
        } else if n2 < 0.0 {
            self.0[3].signum() / (-n2).sqrt()
        } else {
            1.0 / n2.sqrt()
        };
        self.scale(scale)
    }
}

/// Poincaré ball point to hyperboloid.
pub fn lift(x: Vec3) -> Minkowski {
    let n2 = x.norm2();
    let k = 1.0 / (1.0 - n2);
    Minkowski([2.0 * x.x * k, 2.0 * x.y * k, 2.0 * x.z * k, (1.0 + n2) * k])
}

/// Hyperboloid (or null, for ideal points) vector to a ball point.
pub fn project(p: &Minkowski) -> Vec3 {
    let t = p.0[3];
    let n2 = p.norm2();
    if n2 < -1e-12 * t * t {
        let s = t.signum() / (-n2).sqrt();
        let q = p.scale(s);
        q.spatial() / (1.0 + q.0[3])
    } else {
        p.spatial() / t
    }
}

/// Unit spacelike normal of a ball-model geodesic surface. The surface must
/// be orthogonal to the unit sphere.
pub fn mirror_normal(m: &GeneralizedSphere) -> Minkowski {
    let v = m.inversive();
    Minkowski([v[0], v[1], v[2], v[4]])
}

/// A vector orthogonal (in the Minkowski product) to three given vectors.
pub fn orthogonal_complement(a: &Minkowski, b: &Minkowski, c: &Minkowski) -> Minkowski {
    let m = [a.0, b.0, c.0];
    let minor = |skip: usize| {
        let cols: Vec<usize> = (0..4).filter(|&j| j != skip).collect();
        let e = |r: usize, k: usize| m[r][cols[k]];
        e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
            + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
    };
    // Euclidean cofactor vector, then lower the time index.
    let cof: [f64; 4] = std::array::from_fn(|j| if j % 2 == 0 { minor(j) } else { -minor(j) });
    Minkowski([cof[0], cof[1], cof[2], -cof[3]])
}

/// Distance between hyperboloid points.
pub fn distance(a: &Minkowski, b: &Minkowski) -> f64 {
    (-a.dot(b)).max(1.0).acosh()
}
