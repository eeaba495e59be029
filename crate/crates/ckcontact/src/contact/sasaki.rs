//! The Sasakian structures of the sphere and anti-de Sitter space, built
//! from the ambient almost-complex structure, and the Killing-field route
//! to first integrals of the Reeb flow.

use crate::ad::DiffScalar;
use crate::calculus::fields::{Chart, MatrixField, OneForm, ScalarField, VectorField};
use crate::calculus::ops::{lie_rank2_at, solve_linear};
use crate::contact::{contact_structure, eta_pairing_field, ContactStructure};
use crate::error::{CkError, Result};
use crate::geometry::charts::embed_parallel_map;
use crate::geometry::metric::metric_parallel_field;
use crate::geometry::KappaTriple;

/// An almost contact metric structure (phi, R, eta, g) on the parallel
/// chart of S^3_{[+], k2, +}; epsilon is the causal sign of the Reeb field
/// (space-like for both catalogued spaces).
pub struct AlmostContactMetric {
    pub kappa: KappaTriple,
    pub chart: Chart,
    pub reeb: VectorField,
    pub eta: OneForm,
    pub metric: MatrixField,
    pub epsilon: f64,
    embed: crate::calculus::fields::ChartMap,
}

impl AlmostContactMetric {
    /// The endomorphism phi as a 3x3 matrix in the intrinsic chart:
    /// push a chart vector to the ambient space, apply the almost-complex
    /// structure, project orthogonally onto the complement of the normal
    /// and Reeb directions, and pull back through the chart differential.
    pub fn phi_matrix(&self, p: &[f64]) -> [[f64; 3]; 3] {
        let k2 = self.kappa.k2;
        let (amb, jac) = f64::jacobian(&self.embed.eval, p);
        // Ambient flat metric diag(1, 1, k2, k2) for kappa = (1, k2, 1).
        let gtilde = [1.0, 1.0, k2, k2];
        let dot = |u: &[f64], v: &[f64]| -> f64 {
            (0..4).map(|i| gtilde[i] * u[i] * v[i]).sum()
        };
        // Unit normal nu = position vector; ambient Reeb direction.
        let nu = amb.clone();
        let rbar = [-amb[1], amb[0], -k2 * amb[3], k2 * amb[2]];
        let mut cols = [[0.0; 3]; 3];
        for (i, col) in cols.iter_mut().enumerate() {
            let w: Vec<f64> = (0..4).map(|a| jac[a][i]).collect();
            // J w for J d0 = -d1, J d1 = d0, J d2 = -k2 d3, J d3 = k2 d2.
            let jw = [w[1], -w[0], k2 * w[3], -k2 * w[2]];
            let c_nu = dot(&jw, &nu) / dot(&nu, &nu);
            let c_r = dot(&jw, &rbar) / dot(&rbar, &rbar);
            let proj: Vec<f64> = (0..4).map(|a| jw[a] - c_nu * nu[a] - c_r * rbar[a]).collect();
            // Pull back: solve jac * v = proj via normal equations.
            let mut ata = vec![vec![0.0; 3]; 3];
            let mut atb = vec![0.0; 3];
            for r in 0..3 {
                for c in 0..3 {
                    ata[r][c] = (0..4).map(|a| jac[a][r] * jac[a][c]).sum();
                }
                atb[r] = (0..4).map(|a| jac[a][r] * proj[a]).sum();
            }
            let v = solve_linear(&ata, &atb, 1e-12).expect("chart differential is full rank");
            for r in 0..3 {
                col[r] = v[r];
            }
        }
        // Column-major assembly: phi[r][c] = component r of phi(e_c).
        let mut phi = [[0.0; 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                phi[r][c] = cols[c][r];
            }
        }
        phi
    }

    /// Residual of phi^2 = -Id + eta (x) R at p.
    pub fn phi_square_defect(&self, p: &[f64]) -> f64 {
        let phi = self.phi_matrix(p);
        let ev = self.eta.at(p);
        let rv = self.reeb.at(p);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let mut sq = 0.0;
                for k in 0..3 {
                    sq += phi[i][k] * phi[k][j];
                }
                let id = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((sq + id - rv[i] * ev[j]).abs());
            }
        }
        worst
    }

    /// Residual of phi R = 0 and eta o phi = 0 at p.
    pub fn kernel_defect(&self, p: &[f64]) -> f64 {
        let phi = self.phi_matrix(p);
        let ev = self.eta.at(p);
        let rv = self.reeb.at(p);
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            let phir: f64 = (0..3).map(|j| phi[i][j] * rv[j]).sum();
            worst = worst.max(phir.abs());
            let etaphi: f64 = (0..3).map(|j| ev[j] * phi[j][i]).sum();
            worst = worst.max(etaphi.abs());
        }
        worst
    }

    /// Residual of g(phi X, phi Y) = g(X, Y) - eps eta(X) eta(Y).
    pub fn compatibility_defect(&self, p: &[f64], x: &[f64], y: &[f64]) -> f64 {
        let phi = self.phi_matrix(p);
        let apply = |v: &[f64]| -> Vec<f64> {
            (0..3).map(|i| (0..3).map(|j| phi[i][j] * v[j]).sum()).collect()
        };
        let (px, py) = (apply(x), apply(y));
        let g = self.metric.matrix(p);
        let pair = |u: &[f64], v: &[f64]| -> f64 {
            let mut acc = 0.0;
            for i in 0..3 {
                for j in 0..3 {
                    acc += g[i][j] * u[i] * v[j];
                }
            }
            acc
        };
        let ev = self.eta.at(p);
        let eta_of = |v: &[f64]| -> f64 { ev.iter().zip(v).map(|(a, b)| a * b).sum() };
        (pair(&px, &py) - (pair(x, y) - self.epsilon * eta_of(x) * eta_of(y))).abs()
    }

    /// g(R, R) at p (must equal epsilon).
    pub fn reeb_norm(&self, p: &[f64]) -> f64 {
        let rv = self.reeb.at(p);
        self.metric.pair(p, &rv, &rv)
    }
}

/// The Sasakian structure of S^3 (k2 = +1) or AdS (k2 = -1): the rescaled
/// pair (R/2, 2 eta) together with the main metric on the parallel chart.
pub fn sasaki_phi(k2: f64) -> Result<AlmostContactMetric> {
    if k2 != 1.0 && k2 != -1.0 {
        return Err(CkError::Domain(format!(
            "Sasakian structures are catalogued for kappa = (1, +-1, 1); got kappa2 = {k2}"
        )));
    }
    let kappa = KappaTriple::new(1.0, k2, 1.0);
    let cs = contact_structure(kappa, Chart::Parallel3);
    let reeb = cs.reeb.linear_comb(0.5, &VectorField::zero(Chart::Parallel3), 0.0)?;
    let eta = {
        let base = cs.eta.clone();
        let e0 = base.clone();
        let e1 = base.clone();
        let e2 = base;
        OneForm::new(
            Chart::Parallel3,
            crate::ad::Evaluator::new(
                3,
                3,
                std::sync::Arc::new(move |p: &[f64]| {
                    e0.at(p).iter().map(|v| *v * 2.0).collect()
                }),
                std::sync::Arc::new(move |p: &[crate::ad::D1]| {
                    e1.at(p).iter().map(|v| *v * 2.0).collect()
                }),
                std::sync::Arc::new(move |p: &[crate::ad::D2]| {
                    e2.at(p).iter().map(|v| *v * 2.0).collect()
                }),
            ),
        )
    };
    Ok(AlmostContactMetric {
        kappa,
        chart: Chart::Parallel3,
        reeb,
        eta,
        metric: metric_parallel_field(kappa),
        epsilon: 1.0,
        embed: embed_parallel_map(kappa),
    })
}

/// Killing residual sup ||L_K g||_inf over probes.
pub fn killing_residual(k: &VectorField, g: &MatrixField, probes: &[Vec<f64>]) -> f64 {
    let mut worst: f64 = 0.0;
    for p in probes {
        for row in lie_rank2_at::<f64>(k, &g.eval, p) {
            for v in row {
                worst = worst.max(v.abs());
            }
        }
    }
    worst
}

/// On a K-contact space, eta(K) is a first integral of the Reeb field for
/// every Killing field K. The Killing property is verified against the
/// supplied metric before the pairing field is returned.
pub fn first_integral_from_killing(
    cs: &ContactStructure,
    metric: &MatrixField,
    k: &VectorField,
    probes: &[Vec<f64>],
) -> Result<ScalarField> {
    let res = killing_residual(k, metric, probes);
    if res > 1e-6 {
        return Err(CkError::NotKilling { residual: res });
    }
    eta_pairing_field(&cs.eta, k)
}
