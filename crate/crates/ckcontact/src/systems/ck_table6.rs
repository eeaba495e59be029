//! The curved sp(4, R) contact Hamiltonians h_{k,i} and their Hamiltonian
//! vector fields X_{k,i} on S^3_{[k1],k2,k3}, in geodesic parallel
//! coordinates. The printed formulas are stored as data; an independent
//! contact-Hamiltonian solve cross-validates them.

use crate::calculus::fields::{Chart, ScalarField, VectorField};
use crate::geometry::KappaTriple;
use crate::ktrig::{ck_cos, ck_sin, ck_tan_unchecked};

/// Restrictions of the ambient h_i to the constraint surface, written in
/// parallel coordinates.
pub fn hamiltonians(kappa: KappaTriple) -> Vec<ScalarField> {
    let ch = Chart::Parallel3;
    let (k01, k02, k03) = (kappa.k01(), kappa.k02(), kappa.k03());
    vec![
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let c2 = ck_cos(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![ck_sin(k01, p[0] * 2.0) * c2 * c2 * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            vec![ck_cos(k01, p[0]) * ck_cos(k02, p[1]) * ck_sin(k03, p[2] * 2.0) / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let c3 = ck_cos(k03, p[2]);
            vec![ck_sin(k01, p[0]) * ck_sin(k02, p[1] * 2.0) * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            vec![ck_sin(k02, p[1]) * ck_sin(k03, p[2] * 2.0) / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![c1 * c1 * c2 * c2 * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let c3 = ck_cos(k03, p[2]);
            vec![ck_cos(k01, p[0]) * ck_sin(k02, p[1] * 2.0) * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let s2 = ck_sin(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![s2 * s2 * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let s1 = ck_sin(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![s1 * s1 * c2 * c2 * c3 * c3 / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            vec![ck_sin(k01, p[0]) * ck_cos(k02, p[1]) * ck_sin(k03, p[2] * 2.0) / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let s3 = ck_sin(k03, p[2]);
            vec![s3 * s3 / 2.0]
        })),
    ]
}

/// The printed contact Hamiltonian vector fields X_{k,1} .. X_{k,10}.
pub fn fields(kappa: KappaTriple) -> Vec<VectorField> {
    let ch = Chart::Parallel3;
    let (k01, k02, k03) = (kappa.k01(), kappa.k02(), kappa.k03());
    vec![
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c2 = ck_cos(k02, p[1]);
            vec![
                -ck_sin(k01, p[0] * 2.0),
                -(ck_cos(k01, p[0] * 2.0) * ck_sin(k02, p[1] * 2.0)) / 2.0,
                -(ck_cos(k01, p[0] * 2.0) * c2 * c2 * ck_sin(k03, p[2] * 2.0)) / 2.0,
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let s1 = ck_sin(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let s2 = ck_sin(k02, p[1]);
            let t3 = ck_tan_unchecked(k03, p[2]);
            let s3 = ck_sin(k03, p[2]);
            vec![
                -(c1 * t3 / c2),
                c1 * c2 * c2 + s1 * s2 * t3 * k01,
                s1 * c2 * s3 * s3 * k01
                    - c1 * ck_sin(k02, p[1] * 2.0) * ck_sin(k03, p[2] * 2.0) * (k02 / 4.0),
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let s1 = ck_sin(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let s2 = ck_sin(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![
                -(s1 * ck_tan_unchecked(k02, p[1])),
                -(c1 * s2 * s2),
                -(c2 * c3 * c3 * (s1 + c1 * s2 * ck_tan_unchecked(k03, p[2]))),
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            vec![
                p[0] * 0.0,
                ck_sin(k02, p[1] * 2.0) / 2.0,
                ck_sin(k03, p[2] * 2.0) * (ck_cos(k02, p[1] * 2.0) - 3.0) / 4.0,
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let s1d = ck_sin(k01, p[0] * 2.0);
            let c2 = ck_cos(k02, p[1]);
            vec![
                -(c1 * c1),
                s1d * ck_sin(k02, p[1] * 2.0) * (k01 / 4.0),
                s1d * c2 * c2 * ck_sin(k03, p[2] * 2.0) * (k01 / 4.0),
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let s1 = ck_sin(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let s2 = ck_sin(k02, p[1]);
            let c3 = ck_cos(k03, p[2]);
            vec![
                -(c1 * ck_tan_unchecked(k02, p[1])),
                s1 * s2 * s2 * k01,
                -(c1 * c2 * c3 * c3
                    - s1 * ck_sin(k02, p[1] * 2.0) * ck_sin(k03, p[2] * 2.0) * (k01 / 4.0)),
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c3 = ck_cos(k03, p[2]);
            vec![p[0] * 0.0, p[0] * 0.0, -(ck_sin(k02, p[1]) * c3 * c3)]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let s1 = ck_sin(k01, p[0]);
            let s1d = ck_sin(k01, p[0] * 2.0);
            let c2 = ck_cos(k02, p[1]);
            vec![
                -(s1 * s1),
                -(s1d * ck_sin(k02, p[1] * 2.0)) / 4.0,
                -(s1d * c2 * c2 * ck_sin(k03, p[2] * 2.0)) / 4.0,
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c1 = ck_cos(k01, p[0]);
            let s1 = ck_sin(k01, p[0]);
            let c2 = ck_cos(k02, p[1]);
            let s2 = ck_sin(k02, p[1]);
            let t3 = ck_tan_unchecked(k03, p[2]);
            vec![
                -(s1 * t3 / c2),
                s1 * c2 * c2 - c1 * s2 * t3,
                -(c2 * ck_sin(k03, p[2] * 2.0) * (c1 * t3 + s1 * s2 * k02)) / 2.0,
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let s3 = ck_sin(k03, p[2]);
            vec![
                p[0] * 0.0,
                ck_cos(k02, p[1]) * ck_tan_unchecked(k03, p[2]),
                -(ck_sin(k02, p[1]) * s3 * s3 * k02),
            ]
        })),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, sample_box};
    use crate::contact::{contact_hamiltonian_at, contact_structure};
    use crate::geometry::charts::{chart_box, embed_parallel};
    use crate::systems::sp4;
    use rand::SeedableRng;

    #[test]
    fn hamiltonians_match_ambient_restrictions() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(107);
        let ambient = sp4::hamiltonians_r4();
        for (k, name) in KappaTriple::nine() {
            let curved = hamiltonians(k);
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..30 {
                let c = sample_box(&mut rng, &bounds);
                let a = embed_parallel(k, &c);
                for (i, h) in curved.iter().enumerate() {
                    let expect = ambient[i].at(a.as_slice());
                    assert!(
                        (h.at(c.as_slice()) - expect).abs() < 1e-10,
                        "h_{{k,{}}} on {name}",
                        i + 1
                    );
                }
            }
        }
    }

    #[test]
    fn printed_fields_match_contact_solve() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(109);
        for (k, name) in KappaTriple::nine() {
            let cs = contact_structure(k, Chart::Parallel3);
            let hs = hamiltonians(k);
            let xs = fields(k);
            let bounds = chart_box(k, Chart::Parallel3);
            for _ in 0..20 {
                let p = sample_box(&mut rng, &bounds);
                for i in 0..10 {
                    let solved = contact_hamiltonian_at::<f64>(&cs, &hs[i], &p).unwrap();
                    let printed = xs[i].at(&p);
                    assert!(
                        max_abs_diff(&solved, &printed) < 1e-6,
                        "X_{{k,{}}} on {name} at {p:?}",
                        i + 1
                    );
                }
            }
        }
    }
}
