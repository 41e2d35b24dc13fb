#![allow(dead_code)]

use muscle_fatigue::fatigue::{LoadProfile, MuscleProfile};
use rand::Rng;

/// Random piecewise-linear profile with loads in `[0, max_fraction·MVC]`.
pub fn random_profile<R: Rng>(rng: &mut R, mvc: f64, max_fraction: f64) -> LoadProfile {
    let n = rng.gen_range(2..=12);
    let mut t = 0.0;
    let mut samples = Vec::with_capacity(n);
    for i in 0..n {
        if i > 0 {
            t += rng.gen_range(0.01..0.3);
        }
        samples.push((t, rng.gen_range(0.0..=max_fraction) * mvc));
    }
    LoadProfile::new(samples).unwrap()
}

pub fn random_muscle<R: Rng>(rng: &mut R) -> MuscleProfile {
    MuscleProfile::new(rng.gen_range(50.0..500.0), rng.gen_range(0.5..1.5)).unwrap()
}

pub fn rel_err(got: f64, want: f64) -> f64 {
    if want == 0.0 {
        got.abs()
    } else {
        ((got - want) / want).abs()
    }
}

/// Pearson r straight from the raw-moment form of the definition.
pub fn brute_pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let (mut sa, mut sb, mut saa, mut sbb, mut sab) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for i in 0..a.len() {
        sa += a[i];
        sb += b[i];
        saa += a[i] * a[i];
        sbb += b[i] * b[i];
        sab += a[i] * b[i];
    }
    (n * sab - sa * sb) / ((n * saa - sa * sa) * (n * sbb - sb * sb)).sqrt()
}

/// Two-rater one-way ICC with the within-row sum of squares written as (a − b)²/2.
pub fn brute_icc(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len();
    let mut grand = 0.0;
    for i in 0..n {
        grand += a[i] + b[i];
    }
    grand /= (2 * n) as f64;
    let mut ss_between = 0.0;
    let mut ss_within = 0.0;
    for i in 0..n {
        let row = 0.5 * (a[i] + b[i]);
        ss_between += 2.0 * (row - grand) * (row - grand);
        ss_within += 0.5 * (a[i] - b[i]) * (a[i] - b[i]);
    }
    let ms_between = ss_between / (n - 1) as f64;
    let ms_within = ss_within / n as f64;
    (ms_between - ms_within) / (ms_between + ms_within)
}
