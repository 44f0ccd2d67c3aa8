//! Boundary-at-infinity images of hyperbolic honeycombs.
//!
//! Rendering runs in two passes. [`depth_field`] folds every subsample of
//! every pixel into the fundamental simplex and records how many times it
//! crossed the cell mirror, plus whether it landed on a thick apparent edge.
//! [`colorize`] then maps depths onto the palette with a rate set by the
//! image's mean depth, and box-filters the 4×4 subsamples of each pixel.

mod banana;
mod palette;

use std::path::Path;

pub use image::RgbImage;
use rayon::prelude::*;

pub use banana::{banana_test, VertexDisk, DEFAULT_BANANA_RADIUS};
pub use palette::{color_path, Palette, Rgb, SKEW_HEXAGON};

use crate::conformal::{GeneralizedSphere, Vec3};
use crate::error::{Error, Result};
use crate::schlafli::{ElementType, Geometry, SchlafliSymbol};
use crate::simplex::{build_simplex, MetaLayout, Simplex};

/// Subsamples per pixel side.
pub const SUPERSAMPLE: usize = 4;
pub const SAMPLES_PER_PIXEL: usize = SUPERSAMPLE * SUPERSAMPLE;
pub const DEFAULT_MAX_ITER: u32 = 4000;
/// Samples whose fold magnifies lengths beyond this are treated as lying on
/// the limit set: their chamber is smaller than the rounding error of the
/// input, so the depth they would report is noise.
pub const DEFAULT_MAX_STRETCH: f64 = 1e10;

/// A hyperbolic isometry of the upper half-space written as a sequence of
/// inversions in spheres and planes orthogonal to the boundary.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Isometry {
    /// Applied first to last.
    pub mirrors: Vec<GeneralizedSphere>,
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry::default()
    }

    /// `self` first, then `other`.
    pub fn then(mut self, other: &Isometry) -> Self {
        self.mirrors.extend(other.mirrors.iter().copied());
        self
    }

    pub fn translation(t: Vec3) -> Self {
        let len = t.norm();
        if len == 0.0 {
            return Isometry::identity();
        }
        let n = t / len;
        Isometry {
            mirrors: vec![
                GeneralizedSphere::plane(n, 0.0),
                GeneralizedSphere::plane(n, len / 2.0),
            ],
        }
    }

    /// Uniform scaling about the origin by `factor > 0`.
    pub fn scaling(factor: f64) -> Self {
        Isometry {
            mirrors: vec![
                GeneralizedSphere::sphere(Vec3::ZERO, 1.0),
                GeneralizedSphere::sphere(Vec3::ZERO, factor.sqrt()),
            ],
        }
    }

    /// Rotation about the vertical axis through the origin.
    pub fn rotation(angle: f64) -> Self {
        let half = angle / 2.0;
        Isometry {
            mirrors: vec![
                GeneralizedSphere::plane(Vec3::Y, 0.0),
                GeneralizedSphere::plane(Vec3::new(-half.sin(), half.cos(), 0.0), 0.0),
            ],
        }
    }

    /// The inversion in the unit sphere about a boundary point, which swaps
    /// that point with infinity.
    pub fn swap_with_infinity(point: Vec3) -> Self {
        Isometry {
            mirrors: vec![GeneralizedSphere::sphere(Vec3::new(point.x, point.y, 0.0), 1.0)],
        }
    }

    /// An isometry taking the origin to `a` and infinity to `b` (both on the
    /// boundary plane; `b = None` means infinity stays put).
    pub fn zero_infinity_to(a: Vec3, b: Option<Vec3>) -> Self {
        let shift = Isometry::translation(a);
        match b {
            None => shift,
            Some(b) => shift.then(&Isometry {
                mirrors: vec![GeneralizedSphere::sphere(b, a.dist(b))],
            }),
        }
    }

    pub fn apply(&self, x: Vec3) -> Option<Vec3> {
        self.mirrors.iter().try_fold(x, |acc, m| m.reflect(acc))
    }

    pub fn apply_sphere(&self, s: &GeneralizedSphere) -> GeneralizedSphere {
        self.mirrors
            .iter()
            .fold(*s, |acc, m| crate::conformal::invert_sphere(m, &acc))
    }

    pub fn inverse(&self) -> Self {
        Isometry {
            mirrors: self.mirrors.iter().rev().copied().collect(),
        }
    }
}

/// The window of the boundary plane being drawn.
#[derive(Debug, Clone, PartialEq)]
pub struct Viewport {
    pub center: [f64; 2],
    /// Half the width of the image in boundary-plane units.
    pub half_extent: f64,
    pub width: usize,
    pub height: usize,
    /// Applied to each sample point before folding.
    pub pre_isometry: Option<Isometry>,
}

impl Viewport {
    pub fn new(center: [f64; 2], half_extent: f64, width: usize, height: usize) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidArgument("viewport resolution must be at least 1x1".into()));
        }
        if !(half_extent > 0.0 && half_extent.is_finite()) {
            return Err(Error::InvalidArgument("viewport half extent must be positive".into()));
        }
        Ok(Viewport {
            center,
            half_extent,
            width,
            height,
            pre_isometry: None,
        })
    }

    pub fn with_isometry(mut self, g: Isometry) -> Self {
        self.pre_isometry = Some(g);
        self
    }

    pub fn pixel_size(&self) -> f64 {
        2.0 * self.half_extent / self.width as f64
    }

    /// Boundary-plane point at fractional pixel coordinates (`col`, `row`),
    /// rows running downward.
    pub fn point_at(&self, col: f64, row: f64) -> Vec3 {
        let px = self.pixel_size();
        Vec3::new(
            self.center[0] + (col - self.width as f64 / 2.0) * px,
            self.center[1] + (self.height as f64 / 2.0 - row) * px,
            0.0,
        )
    }

    /// The 16 sample points of a pixel, row-major over the 4×4 grid.
    pub fn subsamples(&self, col: usize, row: usize) -> [Vec3; SAMPLES_PER_PIXEL] {
        std::array::from_fn(|k| {
            let (sy, sx) = (k / SUPERSAMPLE, k % SUPERSAMPLE);
            self.point_at(
                col as f64 + (sx as f64 + 0.5) / SUPERSAMPLE as f64,
                row as f64 + (sy as f64 + 0.5) / SUPERSAMPLE as f64,
            )
        })
    }
}

/// Which element sits at the center of the default view.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Centering {
    Cell,
    Edge,
    Auto,
}

impl std::str::FromStr for Centering {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cell" => Ok(Centering::Cell),
            "edge" => Ok(Centering::Edge),
            "auto" => Ok(Centering::Auto),
            other => Err(Error::InvalidArgument(format!("unknown centering `{other}`"))),
        }
    }
}

/// Centering chosen for a symbol: edge-centered when neither cells nor
/// vertices are material, cell-centered otherwise.
pub fn auto_centering(s: SchlafliSymbol) -> Centering {
    let both_at_infinity = s.cell_type() != ElementType::Material && s.vertex_type() != ElementType::Material;
    if both_at_infinity {
        Centering::Edge
    } else {
        Centering::Cell
    }
}

/// Boundary points where the traces of two vertical mirrors cross. A
/// returned `None` stands for the point at infinity.
fn trace_crossings(a: &GeneralizedSphere, b: &GeneralizedSphere) -> Option<[Option<Vec3>; 2]> {
    use GeneralizedSphere::{Plane, Sphere};
    match (*a, *b) {
        (Sphere { center: c1, radius: r1, .. }, Sphere { center: c2, radius: r2, .. }) => {
            let d = c1.dist(c2);
            let t = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
            let h2 = r1 * r1 - t * t;
            if h2 < 0.0 {
                return None;
            }
            let u = (c2 - c1) / d;
            let v = Vec3::new(-u.y, u.x, 0.0);
            let base = c1 + u * t;
            let h = h2.sqrt();
            Some([Some(base + v * h), Some(base - v * h)])
        }
        (Sphere { center, radius, .. }, Plane { normal, offset, .. })
        | (Plane { normal, offset, .. }, Sphere { center, radius, .. }) => {
            let dist = normal.dot(center) - offset;
            let h2 = radius * radius - dist * dist;
            if h2 < 0.0 {
                return None;
            }
            let base = center - normal * dist;
            let v = Vec3::new(-normal.y, normal.x, 0.0);
            let h = h2.sqrt();
            Some([Some(base + v * h), Some(base - v * h)])
        }
        (Plane { normal: n1, offset: o1, .. }, Plane { normal: n2, offset: o2, .. }) => {
            let det = n1.x * n2.y - n1.y * n2.x;
            if det.abs() < 1e-15 {
                return Some([None, None]);
            }
            let x = (o1 * n2.y - n1.y * o2) / det;
            let y = (n1.x * o2 - o1 * n2.x) / det;
            Some([Some(Vec3::new(x, y, 0.0)), None])
        }
    }
}

/// Default view of a symbol: either centered on the central cell's axis, or
/// looking straight down the edge `M2 ∩ M3` after moving its endpoints to
/// the origin and infinity.
pub fn default_viewport(sx: &Simplex, centering: Centering, width: usize, height: usize) -> Result<Viewport> {
    let centering = match centering {
        Centering::Auto => auto_centering(sx.symbol),
        c => c,
    };
    let cell_view = || -> Result<Viewport> {
        let (center, half) = match sx.layout {
            MetaLayout::Centered(Geometry::Spherical) => ([0.0, 0.0], 1.0),
            MetaLayout::Centered(Geometry::Euclidean) => ([0.0, 0.0], 2.5),
            MetaLayout::Centered(Geometry::Hyperbolic) => {
                let rho = match sx.mirrors[3] {
                    GeneralizedSphere::Sphere { radius, .. } => radius,
                    _ => 1.0,
                };
                ([0.0, 0.0], 1.25 * rho)
            }
            MetaLayout::Strip => {
                // The cell head is the half-plane x < 0 with its {∞,q} face
                // centers at infinity. Look down the geodesic through a tiling
                // vertex perpendicular to the head instead, which turns the
                // head into a centered disk of radius 2·sin(π/q).
                let (s, c) = (sx.symbol.q.sin_angle(), sx.symbol.q.cos_angle());
                if s > 1e-9 {
                    let g = Isometry::zero_infinity_to(Vec3::new(-s, c, 0.0), Some(Vec3::new(s, c, 0.0)));
                    return Ok(Viewport::new([0.0, 0.0], 2.5 * s, width, height)?.with_isometry(g));
                }
                ([0.0, 0.0], 2.5)
            }
        };
        Viewport::new(center, half, width, height)
    };
    match centering {
        Centering::Cell | Centering::Auto => cell_view(),
        Centering::Edge => {
            let Some([a, b]) = trace_crossings(&sx.mirrors[2], &sx.mirrors[3]) else {
                return cell_view();
            };
            let (near, far) = match (a, b) {
                (Some(a), Some(b)) if a.dist(b) < 1e-12 => return cell_view(),
                (Some(a), Some(b)) => {
                    if a.norm() <= b.norm() {
                        (a, Some(b))
                    } else {
                        (b, Some(a))
                    }
                }
                (Some(a), None) | (None, Some(a)) => (a, None),
                (None, None) => return cell_view(),
            };
            let g = Isometry::zero_infinity_to(near, far);
            Ok(Viewport::new([0.0, 0.0], 2.0, width, height)?.with_isometry(g))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Sample {
    /// Cell-mirror crossings; `None` when folding did not converge.
    pub depth: Option<u32>,
    pub in_banana: bool,
}

/// Per-subsample results of the first rendering pass.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthGrid {
    pub width: usize,
    pub height: usize,
    /// `SAMPLES_PER_PIXEL` entries per pixel, pixels row-major.
    pub samples: Vec<Sample>,
    pub depth_sum: u64,
    pub converged: u64,
}

impl DepthGrid {
    pub fn from_samples(width: usize, height: usize, samples: Vec<Sample>) -> Self {
        assert_eq!(samples.len(), width * height * SAMPLES_PER_PIXEL);
        let (depth_sum, converged) = samples
            .iter()
            .filter_map(|s| s.depth)
            .fold((0u64, 0u64), |(s, n), d| (s + u64::from(d), n + 1));
        DepthGrid {
            width,
            height,
            samples,
            depth_sum,
            converged,
        }
    }

    /// Mean cell depth over converged samples.
    pub fn mean_depth(&self) -> f64 {
        if self.converged == 0 {
            0.0
        } else {
            self.depth_sum as f64 / self.converged as f64
        }
    }

    pub fn pixel(&self, col: usize, row: usize) -> &[Sample] {
        let start = (row * self.width + col) * SAMPLES_PER_PIXEL;
        &self.samples[start..start + SAMPLES_PER_PIXEL]
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RenderSettings {
    pub max_iter: u32,
    /// `None` disables edge drawing.
    pub banana_radius: Option<f64>,
    /// See [`DEFAULT_MAX_STRETCH`].
    pub max_stretch: f64,
    /// Worker threads; `0` uses the global pool.
    pub workers: usize,
}

impl Default for RenderSettings {
    fn default() -> Self {
        RenderSettings {
            max_iter: DEFAULT_MAX_ITER,
            banana_radius: Some(DEFAULT_BANANA_RADIUS),
            max_stretch: DEFAULT_MAX_STRETCH,
            workers: 0,
        }
    }
}

/// Runs `f` on a pool of `workers` threads, or the global pool for `0`.
pub fn with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(workers).build() {
        Ok(pool) => pool.install(f),
        Err(_) => f(),
    }
}

/// Folds one boundary point and classifies it.
pub fn sample_point(sx: &Simplex, disk: Option<&VertexDisk>, x: Vec3, settings: &RenderSettings) -> Sample {
    let r = sx.canonicalize_bounded(x, settings.max_iter, settings.max_stretch);
    match (r.converged, r.point.finite()) {
        (true, Some(y)) => Sample {
            depth: Some(r.cell_reflections),
            in_banana: settings
                .banana_radius
                .is_some_and(|radius| banana_test(disk, y, radius)),
        },
        _ => Sample {
            depth: None,
            in_banana: false,
        },
    }
}

pub fn depth_field(sx: &Simplex, vp: &Viewport, settings: &RenderSettings) -> DepthGrid {
    let disk = VertexDisk::of(sx);
    // Without a hyperideal vertex or cell the group has finite covolume, its
    // limit set is the whole boundary and no sample can ever converge.
    let finite_covolume = sx.symbol.cell_type() != ElementType::Hyperideal
        && sx.symbol.vertex_type() != ElementType::Hyperideal;
    let row_len = vp.width * SAMPLES_PER_PIXEL;
    let mut samples = vec![
        Sample {
            depth: None,
            in_banana: false
        };
        row_len * vp.height
    ];
    if finite_covolume {
        return DepthGrid::from_samples(vp.width, vp.height, samples);
    }
    with_workers(settings.workers, || {
        samples.par_chunks_mut(row_len).enumerate().for_each(|(row, out)| {
            for col in 0..vp.width {
                for (k, x) in vp.subsamples(col, row).into_iter().enumerate() {
                    let x = match &vp.pre_isometry {
                        Some(g) => g.apply(x),
                        None => Some(x),
                    };
                    out[col * SAMPLES_PER_PIXEL + k] = match x {
                        Some(x) if x.is_finite() => sample_point(sx, disk.as_ref(), x, settings),
                        _ => Sample {
                            depth: None,
                            in_banana: false,
                        },
                    };
                }
            }
        });
    });
    DepthGrid::from_samples(vp.width, vp.height, samples)
}

fn to_u8(c: f64) -> u8 {
    (c.clamp(0.0, 1.0) * 255.0).round() as u8
}

pub fn colorize(g: &DepthGrid, pal: &Palette) -> Result<RgbImage> {
    if g.converged == 0 {
        return Err(Error::EmptyGrid);
    }
    let rate = pal.rate(g.mean_depth());
    let mut img = RgbImage::new(g.width as u32, g.height as u32);
    for row in 0..g.height {
        for col in 0..g.width {
            let mut acc = [0.0f64; 3];
            for s in g.pixel(col, row) {
                let c = if s.in_banana {
                    pal.banana
                } else {
                    match s.depth {
                        Some(d) => pal.depth_color(d, rate),
                        None => pal.bailout,
                    }
                };
                for i in 0..3 {
                    acc[i] += c[i];
                }
            }
            let n = SAMPLES_PER_PIXEL as f64;
            img.put_pixel(
                col as u32,
                row as u32,
                image::Rgb([to_u8(acc[0] / n), to_u8(acc[1] / n), to_u8(acc[2] / n)]),
            );
        }
    }
    Ok(img)
}

/// Full pipeline: simplex, depth field with bananas, colours.
pub fn render(s: SchlafliSymbol, vp: &Viewport, pal: &Palette, settings: &RenderSettings) -> Result<RgbImage> {
    let sx = build_simplex(s)?;
    colorize(&depth_field(&sx, vp, settings), pal)
}

/// A single-colour image, used for table entries without a boundary image.
pub fn solid_image(width: usize, height: usize, rgb: [u8; 3]) -> RgbImage {
    RgbImage::from_pixel(width as u32, height as u32, image::Rgb(rgb))
}

/// Writes an 8-bit RGB PNG.
pub fn save_png(img: &RgbImage, path: &Path) -> Result<()> {
    img.save_with_format(path, image::ImageFormat::Png)
        .map_err(|e| Error::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(t: &str) -> SchlafliSymbol {
        t.parse().unwrap()
    }

    #[test]
    fn viewport_validation() {
        assert!(Viewport::new([0.0, 0.0], 1.0, 0, 4).is_err());
        assert!(Viewport::new([0.0, 0.0], 0.0, 4, 4).is_err());
        let vp = Viewport::new([1.0, 2.0], 1.0, 4, 4).unwrap();
        assert_eq!(vp.point_at(2.0, 2.0), Vec3::new(1.0, 2.0, 0.0));
        let s = vp.subsamples(0, 0);
        assert_eq!(s[0], vp.point_at(0.125, 0.125));
        assert_eq!(s[15], vp.point_at(0.875, 0.875));
    }

    #[test]
    fn isometry_helpers() {
        let t = Isometry::translation(Vec3::new(1.0, -2.0, 0.0));
        let x = Vec3::new(0.3, 0.4, 0.5);
        assert!(t.apply(x).unwrap().dist(Vec3::new(1.3, -1.6, 0.5)) < 1e-12);
        assert!(t.inverse().apply(t.apply(x).unwrap()).unwrap().dist(x) < 1e-12);
        let s = Isometry::scaling(4.0);
        assert!(s.apply(x).unwrap().dist(x * 4.0) < 1e-12);
        let r = Isometry::rotation(std::f64::consts::FRAC_PI_2);
        assert!(r.apply(Vec3::X).unwrap().dist(Vec3::Y) < 1e-12);
        let a = Vec3::new(0.5, 0.2, 0.0);
        let b = Vec3::new(-1.0, 3.0, 0.0);
        let g = Isometry::zero_infinity_to(a, Some(b));
        assert!(g.apply(Vec3::ZERO).unwrap().dist(a) < 1e-12);
        let far = g.apply(Vec3::new(1e9, 0.0, 0.0)).unwrap();
        assert!(far.dist(b) < 1e-6);
    }

    #[test]
    fn central_cell_has_depth_zero() {
        let sx = build_simplex(sym("{7,3,4}")).unwrap();
        let vp = Viewport::new([0.05, 0.02], 1e-3, 1, 1).unwrap();
        let g = depth_field(&sx, &vp, &RenderSettings::default());
        assert!(g.samples.iter().all(|s| s.depth == Some(0)), "{:?}", g.samples);
    }

    #[test]
    fn colorize_uniform_grids() {
        let zero = DepthGrid::from_samples(
            2,
            1,
            vec![
                Sample {
                    depth: Some(0),
                    in_banana: false
                };
                2 * SAMPLES_PER_PIXEL
            ],
        );
        let img = colorize(&zero, &Palette::default()).unwrap();
        assert!(img.pixels().all(|p| p.0 == [255, 255, 255]));

        let banana = DepthGrid::from_samples(
            2,
            2,
            vec![
                Sample {
                    depth: Some(3),
                    in_banana: true
                };
                4 * SAMPLES_PER_PIXEL
            ],
        );
        let img = colorize(&banana, &Palette::default()).unwrap();
        assert!(img.pixels().all(|p| p.0 == [0, 0, 0]));

        let empty = DepthGrid::from_samples(
            1,
            1,
            vec![
                Sample {
                    depth: None,
                    in_banana: false
                };
                SAMPLES_PER_PIXEL
            ],
        );
        assert_eq!(colorize(&empty, &Palette::default()), Err(Error::EmptyGrid));
    }

    #[test]
    fn mean_depth_is_exact_integer_average() {
        let mut samples = vec![
            Sample {
                depth: Some(1),
                in_banana: false
            };
            SAMPLES_PER_PIXEL
        ];
        samples[0].depth = Some(9);
        samples[1].depth = None;
        let g = DepthGrid::from_samples(1, 1, samples);
        assert_eq!(g.converged, 15);
        assert_eq!(g.depth_sum, 9 + 14);
        assert!((g.mean_depth() - 23.0 / 15.0).abs() < 1e-15);
    }

    #[test]
    fn render_rejects_non_hyperbolic() {
        let vp = Viewport::new([0.0, 0.0], 1.0, 2, 2).unwrap();
        let r = render(sym("{4,3,4}"), &vp, &Palette::default(), &RenderSettings::default());
        assert!(matches!(r, Err(Error::UnsupportedGeometry(_))));
    }

    #[test]
    fn edge_view_has_isometry_for_doubly_ideal_symbols() {
        for t in ["{3,6,3}", "{3,7,3}", "{5,4,5}", "{3,i,3}"] {
            let sx = build_simplex(sym(t)).unwrap();
            assert_eq!(auto_centering(sx.symbol), Centering::Edge);
            let vp = default_viewport(&sx, Centering::Auto, 8, 8).unwrap();
            assert!(vp.pre_isometry.is_some(), "{t}");
        }
        assert_eq!(auto_centering(sym("{4,3,7}")), Centering::Cell);
    }
}
