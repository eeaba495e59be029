//! Main metric, subsidiary metric and connection of the CK spaces.

use crate::calculus::fields::{Chart, MatrixField};
use crate::error::{CkError, Result};
use crate::geometry::KappaTriple;
use crate::ktrig::{ck_cos, ck_sin, ck_tan};

/// The metric components at a point of an intrinsic chart.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricAt {
    pub chart: Chart,
    pub g: [[f64; 3]; 3],
}

impl MetricAt {
    fn diag(chart: Chart, d: [f64; 3]) -> Self {
        let mut g = [[0.0; 3]; 3];
        for i in 0..3 {
            g[i][i] = d[i];
        }
        MetricAt { chart, g }
    }

    pub fn symmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.g[i][j] - self.g[j][i]).abs());
            }
        }
        worst
    }
}

/// Main metric in geodesic parallel coordinates:
/// diag(C_{k02}^2(y) C_{k03}^2(z), k2 C_{k03}^2(z), k2 k3).
pub fn metric_parallel(kappa: KappaTriple, c: &[f64]) -> MetricAt {
    let c2 = ck_cos(kappa.k02(), c[1]);
    let c3 = ck_cos(kappa.k03(), c[2]);
    MetricAt::diag(
        Chart::Parallel3,
        [
            c2 * c2 * c3 * c3,
            kappa.k2 * c3 * c3,
            kappa.k2 * kappa.k3,
        ],
    )
}

/// Main metric in geodesic polar coordinates:
/// diag(1, k2 S_{k1}^2(r), k2 k3 S_{k1}^2(r) S_{k2}^2(theta)).
pub fn metric_polar(kappa: KappaTriple, c: &[f64]) -> MetricAt {
    let s1 = ck_sin(kappa.k1, c[0]);
    let s2 = ck_sin(kappa.k2, c[1]);
    MetricAt::diag(
        Chart::Polar3,
        [
            1.0,
            kappa.k2 * s1 * s1,
            kappa.k2 * kappa.k3 * s1 * s1 * s2 * s2,
        ],
    )
}

/// Main metric as a matrix field in either intrinsic chart.
pub fn metric_parallel_field(kappa: KappaTriple) -> MatrixField {
    MatrixField::new(
        Chart::Parallel3,
        evaluator!(3, 9; move |p| {
            let c2 = ck_cos(kappa.k02(), p[1]);
            let c3 = ck_cos(kappa.k03(), p[2]);
            let zero = p[0] * 0.0;
            vec![
                c2 * c2 * c3 * c3, zero, zero,
                zero, c3 * c3 * kappa.k2, zero,
                zero, zero, zero + kappa.k2 * kappa.k3,
            ]
        }),
    )
}

pub fn metric_polar_field(kappa: KappaTriple) -> MatrixField {
    MatrixField::new(
        Chart::Polar3,
        evaluator!(3, 9; move |p| {
            let s1 = ck_sin(kappa.k1, p[0]);
            let s2 = ck_sin(kappa.k2, p[1]);
            let zero = p[0] * 0.0;
            vec![
                zero + 1.0, zero, zero,
                zero, s1 * s1 * kappa.k2, zero,
                zero, zero, s1 * s1 * s2 * s2 * (kappa.k2 * kappa.k3),
            ]
        }),
    )
}

/// The flat ambient metric diag(1, k01, k02, k03) on R^4.
pub fn ambient_metric_field(kappa: KappaTriple) -> MatrixField {
    MatrixField::new(
        Chart::Ambient4,
        evaluator!(4, 16; move |p| {
            let zero = p[0] * 0.0;
            let mut out = vec![zero; 16];
            out[0] = zero + 1.0;
            out[5] = zero + kappa.k01();
            out[10] = zero + kappa.k02();
            out[15] = zero + kappa.k03();
            out
        }),
    )
}

/// Nondegenerate subsidiary metric dy (x) dy + dz (x) dz on a Newtonian leaf
/// x = x0; defined only when kappa2 = 0 and independent of the leaf.
pub fn subsidiary_metric(kappa: KappaTriple, _leaf_x0: f64) -> Result<MetricAt> {
    if kappa.k2 != 0.0 {
        return Err(CkError::Domain(format!(
            "subsidiary metric needs kappa2 = 0, got kappa2 = {}",
            kappa.k2
        )));
    }
    Ok(MetricAt::diag(Chart::Parallel3, [0.0, 1.0, 1.0]))
}

/// Connection coefficients at a polar-chart point; `gamma[c][a][b]` is
/// Gamma^c_{ab}, symmetric in (a, b). Unlisted coefficients are zero.
#[derive(Debug, Clone)]
pub struct ConnectionAt {
    pub gamma: [[[f64; 3]; 3]; 3],
}

impl ConnectionAt {
    pub fn get(&self, c: usize, a: usize, b: usize) -> f64 {
        self.gamma[c][a][b]
    }

    /// Geodesic defect: acceleration[c] + Gamma^c_ab v[a] v[b].
    pub fn geodesic_residual(&self, accel: &[f64], vel: &[f64]) -> f64 {
        let mut worst: f64 = 0.0;
        for c in 0..3 {
            let mut acc = accel[c];
            for a in 0..3 {
                for b in 0..3 {
                    acc += self.gamma[c][a][b] * vel[a] * vel[b];
                }
            }
            worst = worst.max(acc.abs());
        }
        worst
    }
}

/// The nonzero coefficients in geodesic polar coordinates (r, theta, phi):
///   Gamma^theta_{theta r} = Gamma^phi_{phi r} = 1 / T_{k1}(r),
///   Gamma^phi_{phi theta} = 1 / T_{k2}(theta),
///   Gamma^r_{theta theta} = -k2 C_{k1}(r) S_{k1}(r),
///   Gamma^r_{phi phi}     = -k2 k3 C_{k1}(r) S_{k1}(r) S_{k2}^2(theta),
///   Gamma^theta_{phi phi} = -k3 C_{k2}(theta) S_{k2}(theta).
pub fn connection_polar(kappa: KappaTriple, c: &[f64]) -> Result<ConnectionAt> {
    let (r, th) = (c[0], c[1]);
    let t1 = ck_tan(kappa.k1, r)?;
    let t2 = ck_tan(kappa.k2, th)?;
    if t1.abs() < 1e-13 || t2.abs() < 1e-13 {
        return Err(CkError::Pole {
            x: if t1.abs() < 1e-13 { r } else { th },
            cos_abs: t1.abs().min(t2.abs()),
        });
    }
    let (c1, s1) = (ck_cos(kappa.k1, r), ck_sin(kappa.k1, r));
    let (c2, s2) = (ck_cos(kappa.k2, th), ck_sin(kappa.k2, th));
    let mut gamma = [[[0.0; 3]; 3]; 3];
    let (ir, ith, iph) = (0, 1, 2);
    gamma[ith][ith][ir] = 1.0 / t1;
    gamma[ith][ir][ith] = 1.0 / t1;
    gamma[iph][iph][ir] = 1.0 / t1;
    gamma[iph][ir][iph] = 1.0 / t1;
    gamma[iph][iph][ith] = 1.0 / t2;
    gamma[iph][ith][iph] = 1.0 / t2;
    gamma[ir][ith][ith] = -kappa.k2 * c1 * s1;
    gamma[ir][iph][iph] = -kappa.k2 * kappa.k3 * c1 * s1 * s2 * s2;
    gamma[ith][iph][iph] = -kappa.k3 * c2 * s2;
    Ok(ConnectionAt { gamma })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::sample_box;
    use crate::geometry::charts::chart_box;
    use rand::SeedableRng;

    #[test]
    fn metric_parallel_examples() {
        let flat = KappaTriple::new(0.0, 1.0, 1.0);
        let m = metric_parallel(flat, &[0.4, -0.9, 1.2]);
        assert_eq!(m.g[0][0], 1.0);
        assert_eq!(m.g[1][1], 1.0);
        assert_eq!(m.g[2][2], 1.0);

        let sphere = KappaTriple::new(1.0, 1.0, 1.0);
        let m = metric_parallel(sphere, &[0.0, 0.0, 0.0]);
        assert_eq!(m.g, [[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]);

        let newton = KappaTriple::new(1.0, 0.0, 1.0);
        let m = metric_parallel(newton, &[0.3, 0.7, -0.5]);
        assert_eq!(m.g[0][0], 1.0);
        assert_eq!(m.g[1][1], 0.0);
        assert_eq!(m.g[2][2], 0.0);
    }

    #[test]
    fn metric_positive_definite_on_riemannian_boxes() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for k1 in [1.0, 0.0, -1.0] {
            let k = KappaTriple::new(k1, 1.0, 1.0);
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..30 {
                let p = sample_box(&mut rng, &bounds);
                let m = metric_parallel(k, &p);
                // Diagonal metric: positive definiteness is positive entries.
                assert!(m.g[0][0] > 0.0 && m.g[1][1] > 0.0 && m.g[2][2] > 0.0);
                assert_eq!(m.symmetry_defect(), 0.0);
            }
        }
    }

    #[test]
    fn subsidiary_metric_rules() {
        for k1 in [1.0, 0.0, -1.0] {
            let k = KappaTriple::new(k1, 0.0, 1.0);
            let m0 = subsidiary_metric(k, 0.0).unwrap();
            let m7 = subsidiary_metric(k, 7.0).unwrap();
            assert_eq!(m0, m7);
            assert_eq!(m0.g[1][1], 1.0);
            assert_eq!(m0.g[2][2], 1.0);
            assert_eq!(m0.g[1][2], 0.0);
        }
        assert!(subsidiary_metric(KappaTriple::new(1.0, 1.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn connection_flat_polar_row() {
        let k = KappaTriple::new(0.0, 1.0, 1.0);
        let r = 0.8;
        let conn = connection_polar(k, &[r, 0.6, 0.2]).unwrap();
        assert!((conn.get(1, 1, 0) - 1.0 / r).abs() < 1e-15);
    }

    #[test]
    fn connection_k3_zero_kills_phi_rows() {
        let k = KappaTriple::new(1.0, 1.0, 0.0);
        let conn = connection_polar(k, &[0.7, 0.5, 0.1]).unwrap();
        assert_eq!(conn.get(0, 2, 2), 0.0);
        assert_eq!(conn.get(1, 2, 2), 0.0);
    }

    #[test]
    fn connection_symmetric_in_lower_indices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for (k, _) in KappaTriple::nine() {
            let bounds = chart_box(k, Chart::Polar3);
            for _ in 0..20 {
                let p = sample_box(&mut rng, &bounds);
                let conn = connection_polar(k, &p).unwrap();
                for c in 0..3 {
                    for a in 0..3 {
                        for b in 0..3 {
                            assert_eq!(conn.get(c, a, b), conn.get(c, b, a));
                        }
                    }
                }
            }
        }
    }
}
