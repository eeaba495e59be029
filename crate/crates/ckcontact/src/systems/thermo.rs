//! The time-dependent thermodynamic system: an sl(3, R) + R Lie-Hamilton
//! system on the punctured cotangent space of R^3, reduced by fiberwise
//! scaling to the energy-representation affine chart (U, S, V, T, P) of the
//! projective cotangent bundle.

use crate::calculus::fields::{Chart, ScalarField, StructureTable, VectorField};

/// h_i = q_a p_b over (q1, q2, q3, p1, p2, p3), in the printed order.
pub fn hamiltonians_upstairs() -> Vec<ScalarField> {
    let ch = Chart::CotangentR3;
    let pairs: [(usize, usize); 9] = [
        (0, 3),
        (0, 4),
        (0, 5),
        (1, 3),
        (1, 4),
        (1, 5),
        (2, 3),
        (2, 4),
        (2, 5),
    ];
    pairs
        .iter()
        .map(|&(a, b)| ScalarField::new(ch, evaluator!(6, 1; move |p| vec![p[a] * p[b]])))
        .collect()
}

/// The paired Hamiltonian fields X_i = q_a d_{q_b} - p_b d_{p_a}.
pub fn fields_upstairs() -> Vec<VectorField> {
    let ch = Chart::CotangentR3;
    let triples: [(usize, usize, usize); 9] = [
        // (source q index, target q index, moved p indices): X for h = q_a p_b
        (0, 0, 3),
        (0, 1, 4),
        (0, 2, 5),
        (1, 0, 3),
        (1, 1, 4),
        (1, 2, 5),
        (2, 0, 3),
        (2, 1, 4),
        (2, 2, 5),
    ];
    triples
        .iter()
        .map(|&(qa, qb, pb)| {
            let pa = qa + 3;
            VectorField::new(ch, evaluator!(6, 6; move |p| {
                let mut out = vec![p[0] * 0.0; 6];
                out[qb] = p[qa];
                out[pa] = -p[pb];
                out
            }))
        })
        .collect()
}

/// Fiberwise scaling generator Delta = p1 d_p1 + p2 d_p2 + p3 d_p3; its
/// flow multiplies covectors and quotients to the projective bundle.
pub fn delta_upstairs() -> VectorField {
    VectorField::new(
        Chart::CotangentR3,
        evaluator!(6, 6; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, zero, zero, p[3], p[4], p[5]]
        }),
    )
}

/// Field bracket table (the printed Poisson table carries the opposite
/// sign, as f -> -X_f is the algebra map for Lie-Hamilton systems).
pub fn table_fields() -> StructureTable {
    poisson_table().negated()
}

/// The printed Poisson table of the h_i.
pub fn poisson_table() -> StructureTable {
    StructureTable::from_upper(
        9,
        &[
            (0, 1, &[(1, -1.0)]),
            (0, 2, &[(2, -1.0)]),
            (0, 3, &[(3, 1.0)]),
            (0, 6, &[(6, 1.0)]),
            (1, 3, &[(0, -1.0), (4, 1.0)]),
            (1, 4, &[(1, -1.0)]),
            (1, 5, &[(2, -1.0)]),
            (1, 6, &[(7, 1.0)]),
            (2, 3, &[(5, 1.0)]),
            (2, 6, &[(0, -1.0), (8, 1.0)]),
            (2, 7, &[(1, -1.0)]),
            (2, 8, &[(2, -1.0)]),
            (3, 4, &[(3, 1.0)]),
            (3, 7, &[(6, 1.0)]),
            (4, 5, &[(5, -1.0)]),
            (4, 7, &[(7, 1.0)]),
            (5, 6, &[(3, -1.0)]),
            (5, 7, &[(4, -1.0), (8, 1.0)]),
            (5, 8, &[(5, -1.0)]),
            (6, 8, &[(6, 1.0)]),
            (7, 8, &[(7, 1.0)]),
        ],
    )
}

/// The projected generators on the affine chart (U, S, V, T, P) with
/// T = -p2/p1 and P = p3/p1.
pub fn fields_affine() -> Vec<VectorField> {
    let ch = Chart::ThermoAffine5;
    vec![
        // pi X1 = U dU + T dT + P dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![p[0], zero, zero, p[3], p[4]]
        })),
        // pi X2 = U dS - T^2 dT - T P dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, p[0], zero, -(p[3] * p[3]), -(p[3] * p[4])]
        })),
        // pi X3 = U dV + T P dT + P^2 dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, zero, p[0], p[3] * p[4], p[4] * p[4]]
        })),
        // pi X4 = S dU + dT
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![p[1], zero, zero, zero + 1.0, zero]
        })),
        // pi X5 = S dS - T dT
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, p[1], zero, -p[3], zero]
        })),
        // pi X6 = S dV + P dT
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, zero, p[1], p[4], zero]
        })),
        // pi X7 = V dU - dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![p[2], zero, zero, zero, zero - 1.0]
        })),
        // pi X8 = V dS + T dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, p[2], zero, zero, p[3]]
        })),
        // pi X9 = V dV - P dP
        VectorField::new(ch, evaluator!(5, 5; move |p| {
            let zero = p[0] * 0.0;
            vec![zero, zero, p[2], zero, -p[4]]
        })),
    ]
}

/// Contact Hamiltonians of the affine fields relative to the Gibbs form
/// eta = dU - T dS + P dV, i.e. h_i = -eta(pi X_i).
pub fn hamiltonians_affine() -> Vec<ScalarField> {
    let ch = Chart::ThermoAffine5;
    vec![
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-p[0]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![p[3] * p[0]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-(p[4] * p[0])])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-p[1]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![p[3] * p[1]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-(p[4] * p[1])])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-p[2]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![p[3] * p[2]])),
        ScalarField::new(ch, evaluator!(5, 1; move |p| vec![-(p[4] * p[2])])),
    ]
}

/// Affine coordinates of a cotangent point with p1 != 0.
pub fn affine_from_cotangent(p: &[f64]) -> [f64; 5] {
    [p[0], p[1], p[2], -p[4] / p[3], p[5] / p[3]]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, sample_box, verify_structure};
    use crate::symplectic::{canonical_cotangent, poisson_bracket};
    use rand::SeedableRng;

    #[test]
    fn upstairs_tables_agree_with_ad() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(137);
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|_| sample_box(&mut rng, &[(-1.5, 1.5); 6]))
            .collect();
        let res = verify_structure(&fields_upstairs(), &table_fields(), &pts).unwrap();
        assert!(res < 1e-10, "thermo field table residual {res}");
    }

    #[test]
    fn printed_poisson_table_holds() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(139);
        let ss = canonical_cotangent(Chart::CotangentR3);
        let hs = hamiltonians_upstairs();
        let tbl = poisson_table();
        for _ in 0..10 {
            let p = sample_box(&mut rng, &[(-1.5, 1.5); 6]);
            for i in 0..9 {
                for j in (i + 1)..9 {
                    let b = poisson_bracket(&ss, &hs[i], &hs[j], &p).unwrap();
                    let mut expect = 0.0;
                    for k in 0..9 {
                        expect += tbl.get(i, j, k) * hs[k].at(p.as_slice());
                    }
                    assert!((b - expect).abs() < 1e-10, "{{h{}, h{}}}", i + 1, j + 1);
                }
            }
        }
    }

    #[test]
    fn affine_fields_are_the_projection() {
        // pi_* X_i evaluated through the quotient map must match the printed
        // affine fields wherever p1 != 0.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(149);
        let up = fields_upstairs();
        let down = fields_affine();
        for _ in 0..40 {
            let mut p = sample_box(&mut rng, &[(-1.5, 1.5); 6]);
            if p[3].abs() < 0.3 {
                p[3] = 0.7;
            }
            let a = affine_from_cotangent(&p);
            for (u, d) in up.iter().zip(&down) {
                // Differential of the quotient map applied to the upstairs field.
                let v = u.at(&p);
                let dt = -(v[4] * p[3] - p[4] * v[3]) / (p[3] * p[3]);
                let dp = (v[5] * p[3] - p[5] * v[3]) / (p[3] * p[3]);
                let pushed = [v[0], v[1], v[2], dt, dp];
                assert!(max_abs_diff(&pushed, &d.at(&a)) < 1e-10);
            }
        }
    }

    #[test]
    fn affine_fields_solve_from_gibbs_hamiltonians() {
        // The contact-Hamiltonian solve under the Gibbs form must reproduce
        // the printed affine generators.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(313);
        let cs = crate::contact::thermo_contact();
        let hams = hamiltonians_affine();
        let fields = fields_affine();
        for _ in 0..15 {
            let p = sample_box(&mut rng, &[(-1.5, 1.5); 5]);
            for (h, x) in hams.iter().zip(&fields) {
                let solved = crate::contact::contact_hamiltonian_at::<f64>(&cs, h, &p).unwrap();
                assert!(max_abs_diff(&solved, &x.at(&p)) < 1e-9);
            }
        }
    }

    #[test]
    fn affine_table_matches_upstairs() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(151);
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|_| sample_box(&mut rng, &[(-1.5, 1.5); 5]))
            .collect();
        let res = verify_structure(&fields_affine(), &table_fields(), &pts).unwrap();
        assert!(res < 1e-9, "thermo affine table residual {res}");
    }
}
