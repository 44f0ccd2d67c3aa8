//! Thick apparent edges inside vertex disks.
//!
//! A hyperideal vertex shows up on the boundary as a disk holding an apparent
//! `{q,r}` tiling. The disk's circle is orthogonal to the traces of `M1`,
//! `M2` and `M3`, so its interior is a Poincaré disk and the cell mirror's
//! trace is a geodesic of it. A folded point is a banana point when its
//! distance to that geodesic, in the disk's own hyperbolic metric, is at most
//! the banana radius.
//!
//! With `K` the disk's circle and `G` the cell mirror, both as unit inversive
//! vectors and `X` the null vector of the point, that distance is
//! `asinh(|<X,G>| / <X,K>)`. This is the same as replacing `M3` by the
//! equidistant curve at the banana radius: it agrees with `M3` on the disk's
//! circle and bends away from it inside.

use crate::conformal::{inversive_product, point_inversive, Inversive, Vec3};
use crate::hyperboloid::{orthogonal_complement, Minkowski};
use crate::simplex::Simplex;

/// Default banana radius, in the hyperbolic metric of each vertex disk.
pub const DEFAULT_BANANA_RADIUS: f64 = 0.025;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexDisk {
    /// Unit inversive vector of the disk's circle, positive inside the disk.
    pub circle: Inversive,
    /// Unit inversive vector of the cell mirror.
    pub edge: Inversive,
}

/// Drops the `z` slot: vertical mirrors live in the 2D inversive space of
/// the boundary plane.
fn to_plane(v: &Inversive) -> Minkowski {
    Minkowski([v[0], v[1], v[3], v[4]])
}

impl VertexDisk {
    /// The disk of the simplex vertex opposite `M0`, when it is hyperideal.
    pub fn of(sx: &Simplex) -> Option<VertexDisk> {
        let [a, b, c] = [1, 2, 3].map(|i| to_plane(&sx.mirrors[i].inversive()));
        let k = orthogonal_complement(&a, &b, &c);
        let n2 = k.norm2();
        let scale = k.0.iter().map(|x| x * x).sum::<f64>();
        if n2 <= 1e-9 * scale {
            return None;
        }
        let k = k.scale(1.0 / n2.sqrt());
        let mut circle: Inversive = [k.0[0], k.0[1], 0.0, k.0[2], k.0[3]];
        // The disk sits on the domain side of M0 (the plane y = 0, inside
        // y > 0): a circle's interior, or a half-plane's upper side.
        let curv = circle[4] - circle[3];
        let flip = if curv.abs() > 1e-12 {
            let center_y = circle[1] / curv;
            // A circle vector with negative curvature describes an outside.
            curv < 0.0 && center_y > 0.0 || curv > 0.0 && center_y < 0.0
        } else {
            // Half-plane: positive where (-v0, -v1)·x < offset.
            circle[1] < 0.0
        };
        if flip {
            circle = circle.map(|x| -x);
        }
        Some(VertexDisk {
            circle,
            edge: sx.mirrors[3].inversive(),
        })
    }

    pub fn contains(&self, x: Vec3) -> bool {
        inversive_product(&point_inversive(x), &self.circle) > 0.0
    }

    /// Hyperbolic distance, in the disk's metric, from `x` to the cell
    /// mirror's trace. Infinite outside the disk.
    pub fn edge_distance(&self, x: Vec3) -> f64 {
        let px = point_inversive(x);
        let inside = inversive_product(&px, &self.circle);
        if inside <= 0.0 {
            return f64::INFINITY;
        }
        (inversive_product(&px, &self.edge).abs() / inside).asinh()
    }
}

/// Whether a folded boundary point lies on a thick apparent edge.
pub fn banana_test(disk: Option<&VertexDisk>, x: Vec3, radius: f64) -> bool {
    disk.is_some_and(|d| d.edge_distance(x) <= radius)
}
