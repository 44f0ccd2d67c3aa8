//! Colouring by walking the edges of the RGB cube.

pub type Rgb = [f64; 3];

/// white → cyan → blue → black → red → yellow → white.
pub const SKEW_HEXAGON: [Rgb; 7] = [
    [1.0, 1.0, 1.0],
    [0.0, 1.0, 1.0],
    [0.0, 0.0, 1.0],
    [0.0, 0.0, 0.0],
    [1.0, 0.0, 0.0],
    [1.0, 1.0, 0.0],
    [1.0, 1.0, 1.0],
];

fn walk(path: &[Rgb; 7], t: f64) -> Rgb {
    let t = t.rem_euclid(6.0);
    let seg = (t.floor() as usize).min(5);
    let f = t - seg as f64;
    let (a, b) = (path[seg], path[seg + 1]);
    std::array::from_fn(|i| a[i] + (b[i] - a[i]) * f)
}

/// Position `t` along the default hexagon, period 6.
pub fn color_path(t: f64) -> Rgb {
    walk(&SKEW_HEXAGON, t)
}

#[derive(Debug, Clone, PartialEq)]
pub struct Palette {
    /// Closed path: the last vertex repeats the first.
    pub hexagon: [Rgb; 7],
    /// Where depth 0 sits on the path, in `[0, 6)`.
    pub start_offset: f64,
    /// `1.0` or `-1.0`.
    pub direction: f64,
    /// Multiplier on `1/√mean_depth`.
    pub rate_k: f64,
    /// Colour of samples that never reached the fundamental domain.
    pub bailout: Rgb,
    pub banana: Rgb,
}

impl Default for Palette {
    fn default() -> Self {
        Palette {
            hexagon: SKEW_HEXAGON,
            start_offset: 0.0,
            direction: 1.0,
            rate_k: 1.0,
            bailout: [0.0, 0.0, 0.0],
            banana: [0.0, 0.0, 0.0],
        }
    }
}

impl Palette {
    pub fn color_at(&self, t: f64) -> Rgb {
        walk(&self.hexagon, t)
    }

    /// Steps along the path per unit of depth.
    pub fn rate(&self, mean_depth: f64) -> f64 {
        self.rate_k / mean_depth.max(1.0).sqrt()
    }

    pub fn depth_color(&self, depth: u32, rate: f64) -> Rgb {
        self.color_at(self.start_offset + self.direction * depth as f64 * rate)
    }
}
