//! The 3D Cayley-Klein family: contraction parameters, ambient model,
//! geodesic charts, metrics, connection, Killing fields and Casimirs.

pub mod casimir;
pub mod charts;
pub mod killing;
pub mod metric;

pub use casimir::{casimir_invariance, casimir_invariance_with_table};
pub use charts::{
    chart_box, embed_parallel, embed_parallel_map, embed_polar, embed_polar_map,
    parallel_from_ambient, polar_from_ambient, polar_from_parallel,
};
pub use killing::{ck_structure_table, group_exp, killing_field, GroupElement};
pub use metric::{
    ambient_metric_field, connection_polar, metric_parallel, metric_parallel_field, metric_polar,
    metric_polar_field, subsidiary_metric, ConnectionAt, MetricAt,
};

use crate::ad::Scalar;

/// The three graded contraction parameters (kappa1, kappa2, kappa3) with the
/// derived two-index products.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KappaTriple {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
}

impl KappaTriple {
    pub const fn new(k1: f64, k2: f64, k3: f64) -> Self {
        KappaTriple { k1, k2, k3 }
    }

    pub fn k01(self) -> f64 {
        self.k1
    }
    pub fn k02(self) -> f64 {
        self.k1 * self.k2
    }
    pub fn k03(self) -> f64 {
        self.k1 * self.k2 * self.k3
    }
    pub fn k12(self) -> f64 {
        self.k2
    }
    pub fn k13(self) -> f64 {
        self.k2 * self.k3
    }
    pub fn k23(self) -> f64 {
        self.k3
    }

    /// Two-index parameter kappa_ab for 0 <= a < b <= 3.
    pub fn ab(self, a: usize, b: usize) -> f64 {
        match (a, b) {
            (0, 1) => self.k01(),
            (0, 2) => self.k02(),
            (0, 3) => self.k03(),
            (1, 2) => self.k12(),
            (1, 3) => self.k13(),
            (2, 3) => self.k23(),
            _ => panic!("kappa_ab needs 0 <= a < b <= 3, got ({a}, {b})"),
        }
    }

    /// The nine normalized spaces with kappa3 = +1, in the paper's layout:
    /// rows kappa2 = +1, 0, -1 and columns kappa1 = +1, 0, -1.
    pub fn nine() -> [(KappaTriple, &'static str); 9] {
        [
            (KappaTriple::new(1.0, 1.0, 1.0), "S3"),
            (KappaTriple::new(0.0, 1.0, 1.0), "E3"),
            (KappaTriple::new(-1.0, 1.0, 1.0), "H3"),
            (KappaTriple::new(1.0, 0.0, 1.0), "NH+"),
            (KappaTriple::new(0.0, 0.0, 1.0), "G"),
            (KappaTriple::new(-1.0, 0.0, 1.0), "NH-"),
            (KappaTriple::new(1.0, -1.0, 1.0), "AdS"),
            (KappaTriple::new(0.0, -1.0, 1.0), "M"),
            (KappaTriple::new(-1.0, -1.0, 1.0), "dS"),
        ]
    }

    /// All 27 sign patterns of (kappa1, kappa2, kappa3) in {-1, 0, +1}^3.
    pub fn all_27() -> Vec<KappaTriple> {
        let vals = [1.0, 0.0, -1.0];
        let mut out = Vec::with_capacity(27);
        for &a in &vals {
            for &b in &vals {
                for &c in &vals {
                    out.push(KappaTriple::new(a, b, c));
                }
            }
        }
        out
    }
}

/// Weierstrass coordinates of an ambient point.
pub type AmbientPoint = [f64; 4];
/// Geodesic parallel coordinates (x, y, z).
pub type ParallelCoords = [f64; 3];
/// Geodesic polar coordinates (r, theta, phi).
pub type PolarCoords = [f64; 3];

/// The ambient bilinear form I_kappa(p, q) =
/// p0 q0 + k01 p1 q1 + k02 p2 q2 + k03 p3 q3.
pub fn quadratic_form<S: Scalar>(kappa: KappaTriple, p: &[S], q: &[S]) -> S {
    p[0] * q[0]
        + p[1] * q[1] * kappa.k01()
        + p[2] * q[2] * kappa.k02()
        + p[3] * q[3] * kappa.k03()
}

/// |I_kappa(p, p) - 1|, the on-manifold constraint residual.
pub fn constraint_residual(kappa: KappaTriple, p: &[f64]) -> f64 {
    (quadratic_form(kappa, p, p) - 1.0).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn derived_two_index_products() {
        let k = KappaTriple::new(2.0, -3.0, 0.5);
        assert_eq!(k.k01(), 2.0);
        assert_eq!(k.k02(), -6.0);
        assert_eq!(k.k03(), -3.0);
        assert_eq!(k.k12(), -3.0);
        assert_eq!(k.k13(), -1.5);
        assert_eq!(k.k23(), 0.5);
        assert_eq!(k.ab(0, 2), k.k02());
    }

    #[test]
    fn quadratic_form_examples() {
        let o = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(quadratic_form(KappaTriple::new(1.0, 1.0, 1.0), &o, &o), 1.0);
        let p = [0.0, 0.0, 1.0, 0.0];
        assert_eq!(
            quadratic_form(KappaTriple::new(1.0, -1.0, 1.0), &p, &p),
            -1.0
        );
        let q = [1.0, 5.0, 2.0, 3.0];
        assert_eq!(quadratic_form(KappaTriple::new(0.0, 1.0, 1.0), &q, &q), 1.0);
    }
}
