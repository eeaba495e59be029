//! Geodesic parallel and polar charts of the CK spaces and their inverses.

use std::f64::consts::FRAC_PI_2;

use crate::ad::Scalar;
use crate::calculus::fields::{Chart, ChartMap};
use crate::error::{CkError, Result};
use crate::geometry::KappaTriple;
use crate::ktrig::{ck_asin, ck_atan2, ck_cos, ck_sin};

/// Margin kept from chart poles when sampling.
const GUARD: f64 = 0.1;
/// Half-width of the sampling box along noncompact directions.
const NONCOMPACT: f64 = 1.5;

/// Ambient point of geodesic parallel coordinates (x, y, z).
pub fn embed_parallel<S: Scalar>(kappa: KappaTriple, c: &[S]) -> [S; 4] {
    let (x, y, z) = (c[0], c[1], c[2]);
    let (k01, k02, k03) = (kappa.k01(), kappa.k02(), kappa.k03());
    let (c1, s1) = (ck_cos(k01, x), ck_sin(k01, x));
    let (c2, s2) = (ck_cos(k02, y), ck_sin(k02, y));
    let (c3, s3) = (ck_cos(k03, z), ck_sin(k03, z));
    [c1 * c2 * c3, s1 * c2 * c3, s2 * c3, s3]
}

/// Ambient point of geodesic polar coordinates (r, theta, phi); the chart
/// degenerates at r = 0.
pub fn embed_polar<S: Scalar>(kappa: KappaTriple, c: &[S]) -> Result<[S; 4]> {
    if c[0].value() <= 0.0 {
        return Err(CkError::Chart(format!(
            "polar chart needs r > 0, got r = {}",
            c[0].value()
        )));
    }
    Ok(embed_polar_unchecked(kappa, c))
}

fn embed_polar_unchecked<S: Scalar>(kappa: KappaTriple, c: &[S]) -> [S; 4] {
    let (r, th, ph) = (c[0], c[1], c[2]);
    let (c1, s1) = (ck_cos(kappa.k1, r), ck_sin(kappa.k1, r));
    let (c2, s2) = (ck_cos(kappa.k2, th), ck_sin(kappa.k2, th));
    let (c3, s3) = (ck_cos(kappa.k3, ph), ck_sin(kappa.k3, ph));
    [c1, s1 * c2, s1 * s2 * c3, s1 * s2 * s3]
}

/// The parallel chart as a map object (for pullbacks and pushforwards).
pub fn embed_parallel_map(kappa: KappaTriple) -> ChartMap {
    ChartMap::new(
        Chart::Parallel3,
        Chart::Ambient4,
        evaluator!(3, 4; move |p| embed_parallel(kappa, p).to_vec()),
    )
}

/// The polar chart as a map object; callers keep points inside the chart box.
pub fn embed_polar_map(kappa: KappaTriple) -> ChartMap {
    ChartMap::new(
        Chart::Polar3,
        Chart::Ambient4,
        evaluator!(3, 4; move |p| embed_polar_unchecked(kappa, p).to_vec()),
    )
}

/// Invert the parallel chart on its principal box.
pub fn parallel_from_ambient(kappa: KappaTriple, a: &[f64]) -> [f64; 3] {
    let z = ck_asin(kappa.k03(), a[3]);
    let c3 = ck_cos(kappa.k03(), z);
    let y = ck_asin(kappa.k02(), a[2] / c3);
    let x = ck_atan2(kappa.k01(), a[1], a[0]);
    [x, y, z]
}

/// Invert the polar chart for points with r > 0 and theta > 0. Scale factors
/// are recovered from whichever trigonometric component is larger, so the
/// inverse stays well conditioned near the compact-direction poles.
pub fn polar_from_ambient(kappa: KappaTriple, a: &[f64]) -> [f64; 3] {
    let ph = if a[2].abs() < 1e-300 && a[3].abs() < 1e-300 {
        0.0
    } else {
        ck_atan2(kappa.k3, a[3], a[2])
    };
    let w = if a[2].abs() < 1e-300 && a[3].abs() < 1e-300 {
        0.0
    } else {
        let c3 = ck_cos(kappa.k3, ph);
        let s3 = ck_sin(kappa.k3, ph);
        if c3.abs() >= 0.5 {
            a[2] / c3
        } else {
            a[3] / s3
        }
    };
    let th = ck_atan2(kappa.k2, w, a[1]);
    let c2 = ck_cos(kappa.k2, th);
    let s2 = ck_sin(kappa.k2, th);
    let s1 = if c2.abs() >= 0.5 { a[1] / c2 } else { w / s2 };
    let r = ck_atan2(kappa.k1, s1, a[0]);
    [r, th, ph]
}

/// Polar coordinates of a parallel-chart point (round-trip helper).
pub fn polar_from_parallel(kappa: KappaTriple, c: &[f64]) -> [f64; 3] {
    polar_from_ambient(kappa, &embed_parallel(kappa, c))
}

/// Safe sampling box for randomized sweeps: compact directions are kept a
/// guard margin away from the chart poles, noncompact ones span
/// [-1.5, 1.5] (polar radial and colatitude directions stay positive).
pub fn chart_box(kappa: KappaTriple, chart: Chart) -> Vec<(f64, f64)> {
    let compact_half = |k: f64| {
        if k > 0.0 {
            (FRAC_PI_2 - GUARD) / k.sqrt()
        } else {
            NONCOMPACT
        }
    };
    match chart {
        Chart::Parallel3 => vec![
            (-compact_half(kappa.k01()), compact_half(kappa.k01())),
            (-compact_half(kappa.k02()), compact_half(kappa.k02())),
            (-compact_half(kappa.k03()), compact_half(kappa.k03())),
        ],
        Chart::Polar3 => vec![
            (GUARD, compact_half(kappa.k1)),
            (2.0 * GUARD, compact_half(kappa.k2)),
            (-compact_half(kappa.k3), compact_half(kappa.k3)),
        ],
        Chart::Ambient4 => vec![(-2.0, 2.0); 4],
        other => vec![(-NONCOMPACT, NONCOMPACT); other.dim()],
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, sample_box};
    use crate::geometry::constraint_residual;
    use rand::SeedableRng;
    use std::f64::consts::PI;

    #[test]
    fn parallel_chart_examples() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        assert_eq!(embed_parallel(k, &[0.0, 0.0, 0.0]), [1.0, 0.0, 0.0, 0.0]);
        let p = embed_parallel(k, &[PI / 2.0, 0.0, 0.0]);
        assert!(max_abs_diff(&p, &[0.0, 1.0, 0.0, 0.0]) < 1e-15);
        // Flat contraction: the hyperplane x0 = +1.
        let flat = KappaTriple::new(0.0, 1.0, 1.0);
        let q = embed_parallel(flat, &[0.3, -0.8, 1.2]);
        assert!(max_abs_diff(&q, &[1.0, 0.3, -0.8, 1.2]) < 1e-15);
    }

    #[test]
    fn polar_chart_examples() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let p = embed_polar(k, &[PI / 2.0, 0.0, 0.7]).unwrap();
        assert!(max_abs_diff(&p, &[0.0, 1.0, 0.0, 0.0]) < 1e-15);
        let h = KappaTriple::new(-1.0, 1.0, 1.0);
        let q = embed_polar(h, &[1.0, 0.0, 0.0]).unwrap();
        assert!(max_abs_diff(&q, &[1.0f64.cosh(), 1.0f64.sinh(), 0.0, 0.0]) < 1e-15);
    }

    #[test]
    fn polar_rejects_nonpositive_radius() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        assert!(matches!(
            embed_polar(k, &[0.0, 0.3, 0.3]),
            Err(CkError::Chart(_))
        ));
        assert!(matches!(
            embed_polar(k, &[-0.4, 0.3, 0.3]),
            Err(CkError::Chart(_))
        ));
    }

    #[test]
    fn embeds_land_on_the_constraint_surface() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for k in KappaTriple::all_27() {
            let boxp = chart_box(k, Chart::Parallel3);
            let boxq = chart_box(k, Chart::Polar3);
            for _ in 0..50 {
                let c = sample_box(&mut rng, &boxp);
                assert!(
                    constraint_residual(k, &embed_parallel(k, &c)) < 1e-12,
                    "parallel constraint at {k:?}"
                );
                let c = sample_box(&mut rng, &boxq);
                assert!(
                    constraint_residual(k, &embed_polar(k, &c).unwrap()) < 1e-12,
                    "polar constraint at {k:?}"
                );
            }
        }
    }

    #[test]
    fn polar_of_parallel_roundtrip() {
        // embed_polar(polar_from_parallel(c)) must reproduce embed_parallel(c).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for k in KappaTriple::all_27() {
            let bounds = chart_box(k, Chart::Parallel3);
            let mut found = 0;
            while found < 100 {
                let c = sample_box(&mut rng, &bounds);
                let a = embed_parallel(k, &c);
                // Stay clear of the polar-chart degeneracy at theta = r = 0.
                if a[1].abs() < 0.05 || (a[2].abs() < 0.05 && a[3].abs() < 0.05) {
                    continue;
                }
                found += 1;
                let pol = polar_from_parallel(k, &c);
                if pol[0] <= 0.0 {
                    continue; // negative-r branch: outside the principal box
                }
                let b = embed_polar(k, &pol).unwrap();
                assert!(
                    max_abs_diff(&a, &b) < 1e-10,
                    "roundtrip at {k:?}: {a:?} vs {b:?}"
                );
            }
        }
    }

    #[test]
    fn parallel_from_ambient_inverts_embed() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(37);
        for k in KappaTriple::all_27() {
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..40 {
                let c = sample_box(&mut rng, &bounds);
                let back = parallel_from_ambient(k, &embed_parallel(k, &c));
                assert!(max_abs_diff(&c, &back) < 1e-10, "inverse at {k:?}");
            }
        }
    }
}
