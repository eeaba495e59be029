//! Exact symplectic structures, Hamiltonian fields, Poisson brackets,
//! scaling symmetries and the reduction-to-contact machinery.

use std::sync::Arc;

use crate::ad::{DiffScalar, Evaluator, D1};
use crate::calculus::fields::{check_chart, Chart, ChartMap, OneForm, ScalarField, TwoForm, VectorField};
use crate::calculus::ops::{
    bracket_at, derive_along, grad_at, interior_product_at, lie_one_form_at, lie_rank2_at,
    pullback_one_form, solve_linear,
};
use crate::error::{CkError, Result};

/// Rank tolerance for the pointwise symplectic solve.
const RANK_TOL: f64 = 1e-10;

/// An exact symplectic structure on a chart, optionally with the potential
/// lambda = -iota_Delta omega satisfying omega = -d lambda.
#[derive(Clone)]
pub struct SymplecticStructure {
    pub chart: Chart,
    pub omega: TwoForm,
    pub lambda: Option<OneForm>,
}

/// A scaling symmetry: the infinitesimal generator of a principal
/// multiplicative-group action making omega and the Hamiltonians
/// 1-homogeneous.
#[derive(Clone)]
pub struct ScalingSymmetry {
    pub delta: VectorField,
    /// True for the full multiplicative group R \ {0}; numerics always work
    /// on the identity component, the tag is parity bookkeeping only.
    pub full_group: bool,
}

/// A Lie-Hamilton system bundle: structure, Hamiltonians and the reference
/// structure table of the vector-field algebra.
#[derive(Clone)]
pub struct LHSystem {
    pub structure: SymplecticStructure,
    pub hamiltonians: Vec<ScalarField>,
    pub fields: Vec<VectorField>,
    pub field_table: crate::calculus::fields::StructureTable,
}

/// Canonical symplectic form on R^4: dx0 ^ dx1 + dx2 ^ dx3, together with
/// its radial potential.
pub fn canonical_r4() -> SymplecticStructure {
    let omega = TwoForm::new(
        Chart::Ambient4,
        evaluator!(4, 16; move |p| {
            let zero = p[0] * 0.0;
            let one = zero + 1.0;
            vec![
                zero, one, zero, zero,
                -one, zero, zero, zero,
                zero, zero, zero, one,
                zero, zero, -one, zero,
            ]
        }),
    );
    // lambda = -iota_Delta omega = (x1, -x0, x3, -x2)/2.
    let lambda = OneForm::new(
        Chart::Ambient4,
        evaluator!(4, 4; move |p| vec![p[1] / 2.0, -p[0] / 2.0, p[3] / 2.0, -p[2] / 2.0]),
    );
    SymplecticStructure {
        chart: Chart::Ambient4,
        omega,
        lambda: Some(lambda),
    }
}

/// The radial scaling generator Delta = (x0 d0 + x1 d1 + x2 d2 + x3 d3)/2
/// on R^4 minus the origin.
pub fn radial_scaling_r4() -> ScalingSymmetry {
    ScalingSymmetry {
        delta: VectorField::new(
            Chart::Ambient4,
            evaluator!(4, 4; move |p| vec![p[0] / 2.0, p[1] / 2.0, p[2] / 2.0, p[3] / 2.0]),
        ),
        full_group: false,
    }
}

/// Canonical form on a cotangent chart laid out as (q.., p..).
pub fn canonical_cotangent(chart: Chart) -> SymplecticStructure {
    let dim = chart.dim();
    assert!(dim % 2 == 0);
    let half = dim / 2;
    let omega = TwoForm::new(
        chart,
        evaluator!(dim, dim * dim; move |p| {
            let zero = p[0] * 0.0;
            let mut m = vec![zero; dim * dim];
            for i in 0..half {
                m[i * dim + (half + i)] = zero + 1.0;
                m[(half + i) * dim + i] = zero - 1.0;
            }
            m
        }),
    );
    SymplecticStructure {
        chart,
        omega,
        lambda: None,
    }
}

/// Pointwise Hamiltonian vector field: solve iota_X omega = dh at p.
pub fn hamiltonian_field_at<S: DiffScalar>(
    ss: &SymplecticStructure,
    h: &ScalarField,
    p: &[S],
) -> Result<Vec<S>> {
    let n = p.len();
    let dh = grad_at(h, p);
    let m = ss.omega.matrix(p);
    // (iota_X omega)_j = X^i omega_ij, so solve A X = dh with A_ji = omega_ij.
    let a: Vec<Vec<S>> = (0..n).map(|j| (0..n).map(|i| m[i][j]).collect()).collect();
    solve_linear(&a, &dh, RANK_TOL)
}

/// The Hamiltonian field as a derived (first-order) vector field.
pub fn hamiltonian_field(ss: &SymplecticStructure, h: &ScalarField) -> Result<VectorField> {
    check_chart(ss.chart, h.chart)?;
    let n = ss.chart.dim();
    let (s0, h0) = (ss.clone(), h.clone());
    let (s1, h1) = (ss.clone(), h.clone());
    Ok(VectorField::new(
        ss.chart,
        Evaluator::first_order(
            n,
            n,
            Arc::new(move |p: &[f64]| {
                hamiltonian_field_at::<f64>(&s0, &h0, p).expect("singular symplectic solve")
            }),
            Arc::new(move |p: &[D1]| {
                hamiltonian_field_at::<D1>(&s1, &h1, p).expect("singular symplectic solve")
            }),
        ),
    ))
}

/// Poisson bracket {f, g} = omega(X_f, X_g) at p. With the canonical R^4
/// structure this convention reproduces the sp(4, R) function brackets as
/// the negated field table.
pub fn poisson_bracket(
    ss: &SymplecticStructure,
    f: &ScalarField,
    g: &ScalarField,
    p: &[f64],
) -> Result<f64> {
    Ok(poisson_bracket_at::<f64>(ss, f, g, p)?)
}

pub fn poisson_bracket_at<S: DiffScalar>(
    ss: &SymplecticStructure,
    f: &ScalarField,
    g: &ScalarField,
    p: &[S],
) -> Result<S> {
    let xf = hamiltonian_field_at(ss, f, p)?;
    let xg = hamiltonian_field_at(ss, g, p)?;
    let m = ss.omega.matrix(p);
    let n = p.len();
    let mut acc = S::from_f64(0.0);
    for i in 0..n {
        for j in 0..n {
            acc = acc + m[i][j] * xf[i] * xg[j];
        }
    }
    Ok(acc)
}

/// The Poisson bracket as a derived scalar field.
pub fn poisson_bracket_field(
    ss: &SymplecticStructure,
    f: &ScalarField,
    g: &ScalarField,
) -> Result<ScalarField> {
    check_chart(ss.chart, f.chart)?;
    check_chart(ss.chart, g.chart)?;
    let n = ss.chart.dim();
    let (s0, f0, g0) = (ss.clone(), f.clone(), g.clone());
    let (s1, f1, g1) = (ss.clone(), f.clone(), g.clone());
    Ok(ScalarField::new(
        ss.chart,
        Evaluator::first_order(
            n,
            1,
            Arc::new(move |p: &[f64]| {
                vec![poisson_bracket_at::<f64>(&s0, &f0, &g0, p).expect("singular solve")]
            }),
            Arc::new(move |p: &[D1]| {
                vec![poisson_bracket_at::<D1>(&s1, &f1, &g1, p).expect("singular solve")]
            }),
        ),
    ))
}

/// Objects a homogeneity degree can be checked against.
pub enum Homogeneous<'a> {
    Scalar(&'a ScalarField),
    One(&'a OneForm),
    Two(&'a TwoForm),
    Field(&'a VectorField),
}

/// Sup residual of L_Delta obj - ell * obj over the samples (for vector
/// fields: [Delta, Y] - ell * Y).
pub fn homogeneity_check(
    delta: &VectorField,
    obj: Homogeneous<'_>,
    ell: i32,
    samples: &[Vec<f64>],
) -> f64 {
    let ell = f64::from(ell);
    let mut worst: f64 = 0.0;
    for p in samples {
        match obj {
            Homogeneous::Scalar(f) => {
                let lie = derive_along::<f64>(delta, f, p);
                worst = worst.max((lie - ell * f.at(p)).abs());
            }
            Homogeneous::One(a) => {
                let lie = lie_one_form_at::<f64>(delta, a, p);
                for (l, v) in lie.iter().zip(a.at(p)) {
                    worst = worst.max((l - ell * v).abs());
                }
            }
            Homogeneous::Two(w) => {
                let lie = lie_rank2_at::<f64>(delta, &w.eval, p);
                let m = w.matrix(p);
                for i in 0..p.len() {
                    for j in 0..p.len() {
                        worst = worst.max((lie[i][j] - ell * m[i][j]).abs());
                    }
                }
            }
            Homogeneous::Field(y) => {
                let br = bracket_at::<f64>(delta, y, p);
                for (b, v) in br.iter().zip(y.at(p)) {
                    worst = worst.max((b - ell * v).abs());
                }
            }
        }
    }
    worst
}

/// The reduced Hamiltonian h/F (0-homogeneous upstairs); restricting it to
/// the section F = 1 realizes the projected contact Hamiltonian. `probes`
/// guard against F vanishing on the working region.
pub fn reduce_hamiltonian(
    h: &ScalarField,
    big_f: &ScalarField,
    probes: &[Vec<f64>],
) -> Result<ScalarField> {
    check_chart(h.chart, big_f.chart)?;
    for p in probes {
        let v = big_f.at(p);
        if v.abs() < 1e-12 {
            return Err(CkError::Domain(format!(
                "scaling function F vanishes at probe point {p:?}"
            )));
        }
    }
    let n = h.chart.dim();
    let (h0, f0) = (h.clone(), big_f.clone());
    let (h1, f1) = (h.clone(), big_f.clone());
    let (h2, f2) = (h.clone(), big_f.clone());
    Ok(ScalarField::new(
        h.chart,
        Evaluator::new(
            n,
            1,
            Arc::new(move |p: &[f64]| vec![h0.at(p) / f0.at(p)]),
            Arc::new(move |p: &[D1]| vec![h1.at(p) / f1.at(p)]),
            Arc::new(move |p: &[crate::ad::D2]| vec![h2.at(p) / f2.at(p)]),
        ),
    ))
}

/// Contact form of the scaling reduction: the pullback of iota_Delta omega
/// through the section embedding.
pub fn reduced_contact_form(
    ss: &SymplecticStructure,
    delta: &VectorField,
    section: &ChartMap,
) -> Result<OneForm> {
    check_chart(ss.chart, delta.chart)?;
    check_chart(ss.chart, section.target)?;
    let n_up = ss.chart.dim();
    let (w0, d0) = (ss.omega.clone(), delta.clone());
    let (w1, d1) = (ss.omega.clone(), delta.clone());
    let iota = OneForm::new(
        ss.chart,
        Evaluator::new(
            n_up,
            n_up,
            Arc::new(move |p: &[f64]| interior_product_at::<f64>(&w0, &d0, p)),
            Arc::new(move |p: &[D1]| interior_product_at::<D1>(&w1, &d1, p)),
            {
                let (w2, d2) = (ss.omega.clone(), delta.clone());
                Arc::new(move |p: &[crate::ad::D2]| interior_product_at::<crate::ad::D2>(&w2, &d2, p))
            },
        ),
    );
    pullback_one_form(section, &iota)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{exterior_d, max_abs_diff, sample_box};
    use rand::SeedableRng;

    fn h5() -> ScalarField {
        ScalarField::new(
            Chart::Ambient4,
            evaluator!(4, 1; move |p| vec![p[0] * p[0] / 2.0]),
        )
    }

    #[test]
    fn hamiltonian_field_of_h5() {
        let ss = canonical_r4();
        let x5 = hamiltonian_field(&ss, &h5()).unwrap();
        let p = [1.3, -0.4, 0.8, 0.2];
        let got = x5.at(&p);
        assert!(max_abs_diff(&got, &[0.0, -1.3, 0.0, 0.0]) < 1e-12);
    }

    #[test]
    fn constant_hamiltonian_gives_zero_field() {
        let ss = canonical_r4();
        let c = ScalarField::constant(Chart::Ambient4, 3.5);
        let x = hamiltonian_field(&ss, &c).unwrap();
        let got = x.at(&[0.4, 1.0, -0.3, 0.9]);
        assert!(got.iter().all(|v| v.abs() < 1e-12));
    }

    #[test]
    fn omega_is_minus_d_lambda() {
        let ss = canonical_r4();
        let lambda = ss.lambda.clone().unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let p = sample_box(&mut rng, &[(-2.0, 2.0); 4]);
            let dl = exterior_d(&lambda, &p);
            let m = ss.omega.matrix(&p);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((m[i][j] + dl[i][j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn poisson_bracket_antisymmetry_and_sign() {
        let ss = canonical_r4();
        // h1 = x0 x1, h2 = x0 x3; the convention must give {h1, h2} = -h2.
        let h1 = ScalarField::new(Chart::Ambient4, evaluator!(4, 1; move |p| vec![p[0] * p[1]]));
        let h2 = ScalarField::new(Chart::Ambient4, evaluator!(4, 1; move |p| vec![p[0] * p[3]]));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let p = sample_box(&mut rng, &[(-2.0, 2.0); 4]);
            let b12 = poisson_bracket(&ss, &h1, &h2, &p).unwrap();
            assert!((b12 + h2.at(&p)).abs() < 1e-10);
            let b11 = poisson_bracket(&ss, &h1, &h1, &p).unwrap();
            assert!(b11.abs() < 1e-12);
        }
    }

    #[test]
    fn radial_delta_makes_omega_one_homogeneous() {
        let ss = canonical_r4();
        let delta = radial_scaling_r4();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(43);
        let samples: Vec<Vec<f64>> = (0..50)
            .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
            .collect();
        let res = homogeneity_check(&delta.delta, Homogeneous::Two(&ss.omega), 1, &samples);
        assert!(res < 1e-10, "L_Delta omega residual {res}");
        // Negative control: h5 is 1-homogeneous, not 2-homogeneous.
        let res2 = homogeneity_check(&delta.delta, Homogeneous::Scalar(&h5()), 2, &samples);
        assert!(res2 > 1e-3);
    }

    #[test]
    fn reduce_hamiltonian_of_f_itself_is_one() {
        let f = ScalarField::new(
            Chart::Ambient4,
            evaluator!(4, 1; move |p| vec![p[0] * p[0] + p[1] * p[1] + p[2] * p[2] + p[3] * p[3]]),
        );
        let probes = vec![vec![1.0, 0.2, -0.4, 0.6]];
        let red = reduce_hamiltonian(&f, &f, &probes).unwrap();
        assert!((red.at(&[0.3, 0.8, -1.1, 0.5]) - 1.0).abs() < 1e-14);
        // Vanishing F is rejected.
        assert!(reduce_hamiltonian(&f, &f, &[vec![0.0; 4]]).is_err());
    }
}
