//! Contact structures on the CK family: contact forms, Reeb fields, the
//! contact-Hamiltonian correspondence and the Jacobi bracket.

pub mod sasaki;

pub use sasaki::{first_integral_from_killing, sasaki_phi, AlmostContactMetric};

use std::sync::Arc;

use crate::ad::{DiffScalar, Evaluator, Scalar, D1, D2};
use crate::calculus::fields::{check_chart, Chart, OneForm, ScalarField, VectorField};
use crate::calculus::ops::{derive_along, exterior_d_at, grad_at, solve_linear};
use crate::error::Result;
use crate::geometry::KappaTriple;
use crate::ktrig::{ck_cos, ck_sin, ck_tan_unchecked};

/// Rank tolerance of the pointwise contact solve.
const RANK_TOL: f64 = 1e-10;
/// Liouville detection threshold (the AD noise floor).
pub const LIOUVILLE_TOL: f64 = 1e-9;

/// A co-orientable contact structure: the form and its Reeb field.
#[derive(Clone)]
pub struct ContactStructure {
    pub kappa: Option<KappaTriple>,
    pub chart: Chart,
    pub eta: OneForm,
    pub reeb: VectorField,
}

/// The contact form eta_kappa and Reeb field R_kappa of S^3_{[k1],k2,k3}
/// in one of its three charts.
///
/// Weierstrass: eta = (-x1 dx0 + x0 dx1 - x3 dx2 + x2 dx3)/2,
///              R = 2(-k01 x1 d0 + x0 d1 - k03 x3 d2 + k02 x2 d3);
/// the Reeb axioms hold on the constraint surface.
pub fn contact_structure(kappa: KappaTriple, chart: Chart) -> ContactStructure {
    let (k01, k02, k03) = (kappa.k01(), kappa.k02(), kappa.k03());
    let (eta, reeb) = match chart {
        Chart::Ambient4 => (
            OneForm::new(
                chart,
                evaluator!(4, 4; move |p| vec![-p[1] / 2.0, p[0] / 2.0, -p[3] / 2.0, p[2] / 2.0]),
            ),
            VectorField::new(
                chart,
                evaluator!(4, 4; move |p| vec![
                    p[1] * (-2.0 * k01),
                    p[0] * 2.0,
                    p[3] * (-2.0 * k03),
                    p[2] * (2.0 * k02),
                ]),
            ),
        ),
        Chart::Parallel3 => (
            OneForm::new(
                chart,
                evaluator!(3, 3; move |p| {
                    let c2 = ck_cos(k02, p[1]);
                    let c3 = ck_cos(k03, p[2]);
                    vec![
                        c2 * c2 * c3 * c3 / 2.0,
                        -(c2 * ck_sin(k03, p[2] * 2.0)) / 4.0,
                        ck_sin(k02, p[1]) / 2.0,
                    ]
                }),
            ),
            VectorField::new(
                chart,
                evaluator!(3, 3; move |p| {
                    let one = p[0] * 0.0 + 1.0;
                    vec![
                        one * 2.0,
                        ck_cos(k02, p[1]) * ck_tan_unchecked(k03, p[2]) * (-2.0 * k03),
                        ck_sin(k02, p[1]) * (2.0 * k02),
                    ]
                }),
            ),
        ),
        Chart::Polar3 => (
            OneForm::new(
                chart,
                evaluator!(3, 3; move |p| {
                    let s1 = ck_sin(kappa.k1, p[0]);
                    let s2 = ck_sin(kappa.k2, p[1]);
                    vec![
                        ck_cos(kappa.k2, p[1]) / 2.0,
                        -(ck_sin(kappa.k1, p[0] * 2.0) * s2) * (kappa.k2 / 4.0),
                        s1 * s1 * s2 * s2 / 2.0,
                    ]
                }),
            ),
            VectorField::new(
                chart,
                evaluator!(3, 3; move |p| {
                    vec![
                        ck_cos(kappa.k2, p[1]) * 2.0,
                        -(ck_sin(kappa.k2, p[1]) / ck_tan_unchecked(kappa.k1, p[0])) * 2.0,
                        p[0] * 0.0 + 2.0 * k02,
                    ]
                }),
            ),
        ),
        other => panic!("no CK contact structure catalogued on chart {other:?}"),
    };
    ContactStructure {
        kappa: Some(kappa),
        chart,
        eta,
        reeb,
    }
}

/// The Gibbs contact form eta = dU - T dS + P dV on the thermodynamic
/// affine chart, with Reeb field d/dU.
pub fn thermo_contact() -> ContactStructure {
    let chart = Chart::ThermoAffine5;
    ContactStructure {
        kappa: None,
        chart,
        eta: OneForm::new(
            chart,
            evaluator!(5, 5; move |p| {
                let zero = p[0] * 0.0;
                vec![zero + 1.0, -p[3], p[4], zero, zero]
            }),
        ),
        reeb: VectorField::new(
            chart,
            evaluator!(5, 5; move |p| {
                let zero = p[0] * 0.0;
                vec![zero + 1.0, zero, zero, zero, zero]
            }),
        ),
    }
}

/// Reeb-axiom residual at a point: max(|eta(R) - 1|, ||iota_R d eta||_inf).
/// On the ambient chart the contraction is tested against vectors tangent
/// to the constraint surface.
pub fn reeb_axiom_residual(cs: &ContactStructure, p: &[f64]) -> f64 {
    let ev = cs.eta.at(p);
    let rv = cs.reeb.at(p);
    let pairing: f64 = ev.iter().zip(&rv).map(|(a, b)| a * b).sum();
    let de = exterior_d_at::<f64>(&cs.eta, p);
    let n = p.len();
    let contraction: Vec<f64> = (0..n)
        .map(|j| (0..n).map(|i| rv[i] * de[i][j]).sum())
        .collect();
    let mut worst = (pairing - 1.0).abs();
    match (cs.chart, cs.kappa) {
        (Chart::Ambient4, Some(kappa)) => {
            for v in tangent_basis(kappa, p) {
                let c: f64 = contraction.iter().zip(&v).map(|(a, b)| a * b).sum();
                worst = worst.max(c.abs());
            }
        }
        _ => {
            for c in contraction {
                worst = worst.max(c.abs());
            }
        }
    }
    worst
}

/// A basis of the tangent space of Sigma_kappa at p (kernel of the
/// constraint differential).
pub fn tangent_basis(kappa: KappaTriple, p: &[f64]) -> Vec<Vec<f64>> {
    let df = [
        2.0 * p[0],
        2.0 * kappa.k01() * p[1],
        2.0 * kappa.k02() * p[2],
        2.0 * kappa.k03() * p[3],
    ];
    let pivot = (0..4)
        .max_by(|&i, &j| df[i].abs().total_cmp(&df[j].abs()))
        .unwrap();
    (0..4)
        .filter(|&j| j != pivot)
        .map(|j| {
            let mut v = vec![0.0; 4];
            v[j] = 1.0;
            v[pivot] = -df[j] / df[pivot];
            v
        })
        .collect()
}

/// Scalar density of eta ^ d eta against a frame: on 3D charts the
/// coordinate frame, on the ambient chart a tangent frame of Sigma_kappa.
pub fn verify_contact_condition(cs: &ContactStructure, p: &[f64]) -> f64 {
    let frame: Vec<Vec<f64>> = match (cs.chart, cs.kappa) {
        (Chart::Ambient4, Some(kappa)) => tangent_basis(kappa, p),
        _ => {
            let n = cs.chart.dim();
            assert_eq!(n, 3, "contact density needs a 3D chart or the ambient model");
            (0..3)
                .map(|i| {
                    let mut v = vec![0.0; 3];
                    v[i] = 1.0;
                    v
                })
                .collect()
        }
    };
    let ev = cs.eta.at(p);
    let de = exterior_d_at::<f64>(&cs.eta, p);
    let pair_eta = |v: &[f64]| -> f64 { ev.iter().zip(v).map(|(a, b)| a * b).sum() };
    let pair_de = |v: &[f64], w: &[f64]| -> f64 {
        let n = v.len();
        let mut acc = 0.0;
        for i in 0..n {
            for j in 0..n {
                acc += de[i][j] * v[i] * w[j];
            }
        }
        acc
    };
    let (u, v, w) = (&frame[0], &frame[1], &frame[2]);
    pair_eta(u) * pair_de(v, w) + pair_eta(v) * pair_de(w, u) + pair_eta(w) * pair_de(u, v)
}

/// Pointwise contact-Hamiltonian solve. The defining pair
///   eta(X) = -h,  iota_X d eta = dh - (Rh) eta
/// is folded into the single invertible system
///   iota_X d eta + eta(X) eta = dh - (Rh + h) eta.
pub fn contact_hamiltonian_at<S: DiffScalar>(
    cs: &ContactStructure,
    h: &ScalarField,
    p: &[S],
) -> Result<Vec<S>> {
    let n = p.len();
    let ev = cs.eta.at(p);
    let de = exterior_d_at::<S>(&cs.eta, p);
    let dh = grad_at(h, p);
    let rh = derive_along::<S>(&cs.reeb, h, p);
    let hv = h.at(p);
    let mut a = vec![vec![S::from_f64(0.0); n]; n];
    let mut rhs = vec![S::from_f64(0.0); n];
    for j in 0..n {
        for i in 0..n {
            a[j][i] = de[i][j] + ev[j] * ev[i];
        }
        rhs[j] = dh[j] - (rh + hv) * ev[j];
    }
    solve_linear(&a, &rhs, RANK_TOL)
}

/// The contact-Hamiltonian vector field of `h` as a derived field.
pub fn contact_hamiltonian_field(cs: &ContactStructure, h: &ScalarField) -> Result<VectorField> {
    check_chart(cs.chart, h.chart)?;
    let n = cs.chart.dim();
    let (c0, h0) = (cs.clone(), h.clone());
    let (c1, h1) = (cs.clone(), h.clone());
    Ok(VectorField::new(
        cs.chart,
        Evaluator::first_order(
            n,
            n,
            Arc::new(move |p: &[f64]| {
                contact_hamiltonian_at::<f64>(&c0, &h0, p).expect("singular contact solve")
            }),
            Arc::new(move |p: &[D1]| {
                contact_hamiltonian_at::<D1>(&c1, &h1, p).expect("singular contact solve")
            }),
        ),
    ))
}

/// Jacobi bracket {f, g} = X_f g + g R f at p.
pub fn jacobi_bracket(
    cs: &ContactStructure,
    f: &ScalarField,
    g: &ScalarField,
    p: &[f64],
) -> Result<f64> {
    jacobi_bracket_at::<f64>(cs, f, g, p)
}

pub fn jacobi_bracket_at<S: DiffScalar>(
    cs: &ContactStructure,
    f: &ScalarField,
    g: &ScalarField,
    p: &[S],
) -> Result<S> {
    let xf = contact_hamiltonian_at(cs, f, p)?;
    let dg = grad_at(g, p);
    let xf_g = xf
        .iter()
        .zip(&dg)
        .fold(S::from_f64(0.0), |acc, (&a, &b)| acc + a * b);
    let rf = derive_along::<S>(&cs.reeb, f, p);
    Ok(xf_g + g.at(p) * rf)
}

/// The Jacobi bracket as a derived scalar field (for nested identities).
pub fn jacobi_bracket_field(
    cs: &ContactStructure,
    f: &ScalarField,
    g: &ScalarField,
) -> Result<ScalarField> {
    check_chart(cs.chart, f.chart)?;
    check_chart(cs.chart, g.chart)?;
    let n = cs.chart.dim();
    let (c0, f0, g0) = (cs.clone(), f.clone(), g.clone());
    let (c1, f1, g1) = (cs.clone(), f.clone(), g.clone());
    Ok(ScalarField::new(
        cs.chart,
        Evaluator::first_order(
            n,
            1,
            Arc::new(move |p: &[f64]| {
                vec![jacobi_bracket_at::<f64>(&c0, &f0, &g0, p).expect("singular contact solve")]
            }),
            Arc::new(move |p: &[D1]| {
                vec![jacobi_bracket_at::<D1>(&c1, &f1, &g1, p).expect("singular contact solve")]
            }),
        ),
    ))
}

/// Liouville test: true iff sup |R h| over the samples stays below the
/// detection threshold; the residual is returned alongside.
pub fn is_liouville(cs: &ContactStructure, h: &ScalarField, samples: &[Vec<f64>]) -> (bool, f64) {
    let mut worst: f64 = 0.0;
    for p in samples {
        worst = worst.max(derive_along::<f64>(&cs.reeb, h, p).abs());
    }
    (worst < LIOUVILLE_TOL, worst)
}

/// eta(K) as a scalar field (evaluable at all dual levels).
pub fn eta_pairing_field(eta: &OneForm, k: &VectorField) -> Result<ScalarField> {
    check_chart(eta.chart, k.chart)?;
    let n = eta.chart.dim();
    fn go<S: Scalar>(eta: &OneForm, k: &VectorField, p: &[S]) -> Vec<S> {
        vec![eta.pair(p, &k.at(p))]
    }
    let (e0, k0) = (eta.clone(), k.clone());
    let (e1, k1) = (eta.clone(), k.clone());
    let (e2, k2) = (eta.clone(), k.clone());
    Ok(ScalarField::new(
        eta.chart,
        Evaluator::new(
            n,
            1,
            Arc::new(move |p: &[f64]| go(&e0, &k0, p)),
            Arc::new(move |p: &[D1]| go(&e1, &k1, p)),
            Arc::new(move |p: &[D2]| go(&e2, &k2, p)),
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{differential, max_abs_diff, sample_box};
    use crate::geometry::charts::{chart_box, embed_parallel};
    use rand::SeedableRng;

    #[test]
    fn ambient_values_at_origin() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let cs = contact_structure(k, Chart::Ambient4);
        let o = [1.0, 0.0, 0.0, 0.0];
        assert_eq!(cs.eta.at(&o), vec![0.0, 0.5, 0.0, 0.0]);
        assert_eq!(cs.reeb.at(&o), vec![0.0, 2.0, 0.0, 0.0]);
    }

    #[test]
    fn flat_parallel_structure() {
        // kappa = (0, k2, 1): eta = (dx - z dy + y dz)/2, R = 2 dx.
        for k2 in [1.0, 0.0, -1.0] {
            let k = KappaTriple::new(0.0, k2, 1.0);
            let cs = contact_structure(k, Chart::Parallel3);
            let p = [0.7, -0.3, 1.1];
            assert!(max_abs_diff(&cs.eta.at(&p), &[0.5, -0.55, -0.15]) < 1e-15);
            assert!(max_abs_diff(&cs.reeb.at(&p), &[2.0, 0.0, 0.0]) < 1e-15);
        }
    }

    #[test]
    fn reeb_axioms_on_the_nine_spaces() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(53);
        for (k, name) in KappaTriple::nine() {
            for chart in [Chart::Parallel3, Chart::Polar3] {
                let cs = contact_structure(k, chart);
                let bounds = chart_box(k, chart);
                for _ in 0..30 {
                    let p = sample_box(&mut rng, &bounds);
                    let res = reeb_axiom_residual(&cs, &p);
                    assert!(res < 1e-10, "Reeb axioms on {name} ({chart:?}): {res}");
                }
            }
        }
    }

    #[test]
    fn reeb_axioms_on_ambient_chart() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(59);
        for (k, name) in KappaTriple::nine() {
            let cs = contact_structure(k, Chart::Ambient4);
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..20 {
                let c = sample_box(&mut rng, &bounds);
                let p = embed_parallel(k, &c);
                let res = reeb_axiom_residual(&cs, &p);
                assert!(res < 1e-10, "ambient Reeb axioms on {name}: {res}");
            }
        }
    }

    #[test]
    fn contact_density_is_nonzero_and_dies_for_exact_forms() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let cs = contact_structure(k, Chart::Ambient4);
        let o = [1.0, 0.0, 0.0, 0.0];
        assert!(verify_contact_condition(&cs, &o).abs() > 1e-6);

        // Replacing eta by df must kill the density (d^2 = 0).
        let f = ScalarField::new(Chart::Parallel3, evaluator!(3, 1; move |p| vec![p[0] * p[1]]));
        let exact = ContactStructure {
            kappa: None,
            chart: Chart::Parallel3,
            eta: differential(&f),
            reeb: VectorField::zero(Chart::Parallel3),
        };
        assert!(verify_contact_condition(&exact, &[0.4, 0.2, -0.7]).abs() < 1e-12);
    }

    #[test]
    fn constant_hamiltonian_gives_minus_reeb() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(61);
        for (k, name) in KappaTriple::nine() {
            let cs = contact_structure(k, Chart::Parallel3);
            let one = ScalarField::constant(Chart::Parallel3, 1.0);
            let x = contact_hamiltonian_field(&cs, &one).unwrap();
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..10 {
                let p = sample_box(&mut rng, &bounds);
                let got = x.at(&p);
                let expect: Vec<f64> = cs.reeb.at(&p).iter().map(|v| -v).collect();
                assert!(
                    max_abs_diff(&got, &expect) < 1e-10,
                    "X_1 = -R on {name}"
                );
            }
        }
    }

    #[test]
    fn hamiltonian_recovered_from_field() {
        // h = -eta(X_h) must reproduce the input.
        let k = KappaTriple::new(1.0, -1.0, 1.0);
        let cs = contact_structure(k, Chart::Parallel3);
        let h = ScalarField::new(
            Chart::Parallel3,
            evaluator!(3, 1; move |p| vec![p[0].sin() * p[1] + p[2] * p[2]]),
        );
        let x = contact_hamiltonian_field(&cs, &h).unwrap();
        let recovered = eta_pairing_field(&cs.eta, &x).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(67);
        let bounds = chart_box(k, Chart::Parallel3);
        for _ in 0..20 {
            let p = sample_box(&mut rng, &bounds);
            assert!((recovered.at(&p) + h.at(&p)).abs() < 1e-10);
        }
    }

    #[test]
    fn jacobi_bracket_antisymmetry_diagonal() {
        let k = KappaTriple::new(-1.0, 1.0, 1.0);
        let cs = contact_structure(k, Chart::Parallel3);
        let f = ScalarField::new(
            Chart::Parallel3,
            evaluator!(3, 1; move |p| vec![p[0] * p[2] + p[1].cos()]),
        );
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(71);
        let bounds = chart_box(k, Chart::Parallel3);
        for _ in 0..20 {
            let p = sample_box(&mut rng, &bounds);
            let b = jacobi_bracket(&cs, &f, &f, &p).unwrap();
            assert!(b.abs() < 1e-10);
        }
    }

    #[test]
    fn liouville_detection_on_flat_space() {
        let k = KappaTriple::new(0.0, 1.0, 1.0);
        let cs = contact_structure(k, Chart::Parallel3);
        let bounds = chart_box(k, Chart::Parallel3);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(73);
        let samples: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &bounds)).collect();

        // h_{k,2} = z is a first integral of R = 2 dx.
        let h2 = ScalarField::new(Chart::Parallel3, evaluator!(3, 1; move |p| vec![p[2]]));
        assert!(is_liouville(&cs, &h2, &samples).0);
        // h_{k,1} = S(2x)/2 = x on the flat space is not.
        let h1 = ScalarField::new(Chart::Parallel3, evaluator!(3, 1; move |p| vec![p[0]]));
        let (ok, res) = is_liouville(&cs, &h1, &samples);
        assert!(!ok && res > 1.0);
        // Constants always are.
        let c = ScalarField::constant(Chart::Parallel3, 4.2);
        assert!(is_liouville(&cs, &c, &samples).0);
    }

    #[test]
    fn thermo_contact_axioms() {
        let cs = thermo_contact();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(79);
        for _ in 0..20 {
            let p = sample_box(&mut rng, &[(-1.5, 1.5); 5]);
            assert!(reeb_axiom_residual(&cs, &p) < 1e-12);
        }
    }
}
