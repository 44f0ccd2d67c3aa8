use std::collections::HashMap;

use honeycombs::conformal::{invert_point, invert_sphere, poincare_to_klein, geodesic_arc};
use honeycombs::honeycomb::point_key;
use honeycombs::mesh::cull_by;
use honeycombs::render::{
    color_path, colorize, depth_field, sample_point, Isometry, RenderSettings, Sample, VertexDisk,
    SAMPLES_PER_PIXEL,
};
use honeycombs::simplex::build_simplex;
use honeycombs::{
    DepthGrid, Edge, EdgeSet, GeneralizedSphere, Palette, Point3, SchlafliSymbol, Simplex, Vec3,
    Viewport,
};
use proptest::prelude::*;

fn sym(t: &str) -> SchlafliSymbol {
    t.parse().unwrap()
}

fn vec3(r: f64) -> impl Strategy<Value = Vec3> {
    (-r..r, -r..r, -r..r).prop_map(|(x, y, z)| Vec3::new(x, y, z))
}

fn surface() -> impl Strategy<Value = GeneralizedSphere> {
    prop_oneof![
        (vec3(2.0), 0.2..2.0).prop_map(|(c, r)| GeneralizedSphere::sphere(c, r)),
        (vec3(1.0).prop_filter("nonzero normal", |n| n.norm() > 0.1), -1.0..1.0)
            .prop_map(|(n, o)| GeneralizedSphere::plane(n.normalized(), o)),
    ]
}

fn clear_of_center(m: &GeneralizedSphere, x: Vec3) -> bool {
    match *m {
        GeneralizedSphere::Sphere { center, radius, .. } => x.dist(center) > 0.25 * radius,
        GeneralizedSphere::Plane { .. } => true,
    }
}

fn p437() -> Simplex {
    build_simplex(sym("{4,3,7}")).unwrap()
}

proptest! {
    #[test]
    fn inversion_is_an_involution(m in surface(), x in vec3(3.0)) {
        prop_assume!(clear_of_center(&m, x));
        let back = invert_point(&m, invert_point(&m, Point3::Finite(x))).finite().unwrap();
        prop_assert!(back.dist(x) <= 1e-12 * (1.0 + x.norm()));
    }

    #[test]
    fn inversion_preserves_incidence(m in surface(), c in vec3(2.0), r in 0.2..2.0f64, dir in vec3(1.0)) {
        prop_assume!(dir.norm() > 0.1);
        let s = GeneralizedSphere::sphere(c, r);
        let on = c + dir.normalized() * r;
        prop_assume!(clear_of_center(&m, on));
        let y = invert_point(&m, Point3::Finite(on)).finite().unwrap();
        let image = invert_sphere(&m, &s);
        let scale = match image {
            GeneralizedSphere::Sphere { radius, .. } => 1.0 + radius,
            GeneralizedSphere::Plane { .. } => 1.0 + y.norm(),
        };
        prop_assert!(image.distance_to(y) <= 1e-9 * scale);
    }

    #[test]
    fn klein_images_of_geodesics_are_straight(a in vec3(0.55), b in vec3(0.55)) {
        prop_assume!(a.dist(b) > 1e-3);
        let pts: Vec<Vec3> = geodesic_arc(a, b, 8).unwrap().into_iter().map(poincare_to_klein).collect();
        let (ka, kb) = (pts[0], pts[8]);
        let dir = (kb - ka).normalized();
        for p in &pts {
            let off = (*p - ka) - dir * (*p - ka).dot(dir);
            prop_assert!(off.norm() < 1e-10);
        }
    }

    /// Folding is a retraction onto the domain, and points of one orbit fold
    /// to the same place.
    #[test]
    fn folding_is_group_invariant(x in -0.9..0.9f64, y in -0.9..0.9f64, word in prop::collection::vec(0usize..4, 0..=5)) {
        let sx = p437();
        let p = Vec3::new(x, y, 0.0);
        let base = sx.canonicalize_bounded(p, 4000, 1e6);
        prop_assume!(base.converged);
        let folded = base.point.finite().unwrap();
        prop_assert!(sx.in_domain(folded));
        let again = sx.canonicalize_vec(folded, 4000);
        prop_assert_eq!(again.total_reflections, 0);
        let Some(moved) = sx.apply_word(&word, p) else { return Ok(()) };
        prop_assume!(moved.is_finite() && moved.norm() < 1e6);
        let other = sx.canonicalize_bounded(moved, 4000, 1e6);
        prop_assume!(other.converged);
        prop_assert!(other.point.finite().unwrap().dist(folded) < 1e-9);
    }

    #[test]
    fn bananas_grow_with_radius(x in -1.0..1.0f64, y in 0.0..1.0f64, r in 0.001..0.2f64, extra in 0.0..0.2f64) {
        let sx = p437();
        let disk = VertexDisk::of(&sx);
        let p = Vec3::new(x, y, 0.0);
        let thin = sample_point(&sx, disk.as_ref(), p, &RenderSettings { banana_radius: Some(r), ..RenderSettings::default() });
        let thick = sample_point(&sx, disk.as_ref(), p, &RenderSettings { banana_radius: Some(r + extra), ..RenderSettings::default() });
        prop_assert_eq!(thin.depth, thick.depth);
        prop_assert!(!thin.in_banana || thick.in_banana);
    }

    #[test]
    fn palette_is_periodic(t in -20.0..20.0f64) {
        let (a, b) = (color_path(t), color_path(t + 6.0));
        for i in 0..3 {
            prop_assert!((a[i] - b[i]).abs() < 1e-9);
        }
    }

    /// A pixel's colour is the mean of its subsample colours, so shuffling
    /// samples within a pixel never changes it.
    #[test]
    fn antialiasing_ignores_sample_order(depths in prop::collection::vec(prop::option::of(0u32..20), SAMPLES_PER_PIXEL), rot in 0usize..SAMPLES_PER_PIXEL) {
        prop_assume!(depths.iter().any(|d| d.is_some()));
        let grid = |ds: &[Option<u32>]| {
            DepthGrid::from_samples(1, 1, ds.iter().map(|&depth| Sample { depth, in_banana: false }).collect())
        };
        let mut shuffled = depths.clone();
        shuffled.rotate_left(rot);
        let pal = Palette::default();
        prop_assert_eq!(colorize(&grid(&depths), &pal).unwrap(), colorize(&grid(&shuffled), &pal).unwrap());
    }
}

#[test]
fn viewport_isometry_is_a_pullback() {
    let sx = p437();
    let g = Isometry::zero_infinity_to(Vec3::new(0.3, 0.1, 0.0), Some(Vec3::new(-0.4, 0.6, 0.0)));
    let plain = Viewport::new([0.2, -0.1], 0.7, 12, 10).unwrap();
    let moved = plain.clone().with_isometry(g.clone());
    let settings = RenderSettings::default();
    let grid = depth_field(&sx, &moved, &settings);
    let disk = VertexDisk::of(&sx);
    for row in 0..plain.height {
        for col in 0..plain.width {
            for (k, x) in plain.subsamples(col, row).into_iter().enumerate() {
                let want = sample_point(&sx, disk.as_ref(), g.apply(x).unwrap(), &settings);
                assert_eq!(grid.pixel(col, row)[k], want);
            }
        }
    }
}

#[test]
fn symmetric_isometry_leaves_the_picture_unchanged() {
    // Reflection in M1 is a symmetry of the honeycomb that fixes the
    // central cell, so depths match sample by sample away from the limit set.
    let sx = p437();
    let m1 = Isometry {
        mirrors: vec![sx.mirrors[1]],
    };
    let vp = Viewport::new([0.0, 0.0], 1.0, 32, 32).unwrap();
    let a = depth_field(&sx, &vp, &RenderSettings::default());
    let b = depth_field(&sx, &vp.clone().with_isometry(m1), &RenderSettings::default());
    let same = a.samples.iter().zip(&b.samples).filter(|(x, y)| x.depth == y.depth).count();
    assert!(same as f64 >= 0.99 * a.samples.len() as f64, "{same}");
}

#[test]
fn depths_change_in_small_steps_along_scanlines() {
    let sx = p437();
    let vp = Viewport::new([0.0, 0.0], 1.0, 256, 256).unwrap();
    let g = depth_field(&sx, &vp, &RenderSettings::default());
    let row_len = vp.width * SAMPLES_PER_PIXEL;
    let (mut pairs, mut small) = (0usize, 0usize);
    for row in 0..vp.height {
        // Walk one subsample line of this pixel row, left to right.
        let line: Vec<Option<u32>> = (0..vp.width)
            .flat_map(|col| (0..4).map(move |sxi| (col, sxi)))
            .map(|(col, sxi)| g.samples[row * row_len + col * SAMPLES_PER_PIXEL + sxi].depth)
            .collect();
        for w in line.windows(2) {
            // Near the limit set cells shrink below the sample spacing and
            // neighbours legitimately jump many layers; judge the shallow part.
            if let (Some(a @ 0..=6), Some(b @ 0..=6)) = (w[0], w[1]) {
                pairs += 1;
                if a.abs_diff(b) <= 2 {
                    small += 1;
                }
            }
        }
    }
    assert!(small as f64 >= 0.99 * pairs as f64, "{small}/{pairs}");
}

fn graph(n: usize, pairs: &[(usize, usize, u8)]) -> (EdgeSet, HashMap<(Vec3Key, Vec3Key), f64>) {
    let pts: Vec<Vec3> = (0..n).map(|i| Vec3::new(0.02 * i as f64, 0.1, 0.0)).collect();
    let mut es = EdgeSet::new();
    let mut thick = HashMap::new();
    for &(i, j, t) in pairs {
        let (i, j) = (i % n, j % n);
        if i == j {
            continue;
        }
        let e = Edge::new(pts[i], pts[j], false);
        if es.insert(e) {
            thick.insert(e.id(), f64::from(t) / 255.0);
        }
    }
    (es, thick)
}

type Vec3Key = [i64; 3];

proptest! {
    #[test]
    fn cull_is_a_monotone_idempotent_fixed_point(
        n in 2usize..25,
        pairs in prop::collection::vec((0usize..25, 0usize..25, any::<u8>()), 0..60),
        lo in 0.0..0.5f64,
        hi in 0.5..1.0f64,
    ) {
        let (es, thick) = graph(n, &pairs);
        let d = |e: &Edge| thick[&e.id()];
        let once = cull_by(&es, lo, d);
        prop_assert_eq!(cull_by(&once, lo, d).keys(), once.keys());
        prop_assert!(cull_by(&es, hi, d).keys().is_subset(&once.keys()));
        for e in &once.edges {
            prop_assert!(once.degree(&point_key(e.a)) >= 2);
            prop_assert!(once.degree(&point_key(e.b)) >= 2);
        }
    }
}

#[test]
fn anchored_ideal_ends_survive_culling() {
    let ideal = Vec3::new(1.0, 0.0, 0.0);
    let inner = Vec3::new(0.2, 0.0, 0.0);
    let es = EdgeSet::from_edges([Edge::new(inner, ideal, true)]);
    // The inner end dangles, so the edge still goes.
    assert!(cull_by(&es, 0.0, |_| 1.0).is_empty());
    let other = Vec3::new(0.0, 1.0, 0.0);
    let es = EdgeSet::from_edges([Edge::new(inner, ideal, true), Edge::new(inner, other, true)]);
    assert_eq!(cull_by(&es, 0.0, |_| 1.0).len(), 2);
}
