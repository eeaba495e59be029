//! The sp(4, R) realization on R^4: Hamiltonian vector fields, Hamiltonian
//! functions, their bracket table, and the projected fields on the sphere.

use crate::calculus::fields::{Chart, ScalarField, StructureTable, VectorField};
use crate::ad::Scalar;

/// The ten vector fields X_1 .. X_10 of the fundamental sp(4, R)
/// realization in the global coordinates (x0, x1, x2, x3).
pub fn fields_r4() -> Vec<VectorField> {
    let ch = Chart::Ambient4;
    vec![
        // X1 = x0 d0 - x1 d1
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0], -p[1], p[0] * 0.0, p[0] * 0.0])),
        // X2 = x0 d2 - x3 d1
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, -p[3], p[0], p[0] * 0.0])),
        // X3 = x2 d0 - x1 d3
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[2], p[0] * 0.0, p[0] * 0.0, -p[1]])),
        // X4 = x2 d2 - x3 d3
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, p[0] * 0.0, p[2], -p[3]])),
        // X5 = -x0 d1
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, -p[0], p[0] * 0.0, p[0] * 0.0])),
        // X6 = -x2 d1 - x0 d3
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, -p[2], p[0] * 0.0, -p[0]])),
        // X7 = -x2 d3
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, p[0] * 0.0, p[0] * 0.0, -p[2]])),
        // X8 = x1 d0
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[1], p[0] * 0.0, p[0] * 0.0, p[0] * 0.0])),
        // X9 = x3 d0 + x1 d2
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[3], p[0] * 0.0, p[1], p[0] * 0.0])),
        // X10 = x3 d2
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, p[0] * 0.0, p[3], p[0] * 0.0])),
    ]
}

/// The paired Hamiltonian functions h_1 .. h_10 for the canonical form
/// dx0 ^ dx1 + dx2 ^ dx3.
pub fn hamiltonians_r4() -> Vec<ScalarField> {
    let ch = Chart::Ambient4;
    vec![
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[0] * p[1]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[0] * p[3]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[1] * p[2]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[2] * p[3]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[0] * p[0] / 2.0])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[0] * p[2]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[2] * p[2] / 2.0])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[1] * p[1] / 2.0])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[1] * p[3]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[3] * p[3] / 2.0])),
    ]
}

/// Bracket table of the fields X_1 .. X_10 (the Poisson brackets of the
/// h_i are this table with a global minus sign).
pub fn table_r4() -> StructureTable {
    StructureTable::from_upper(
        10,
        &[
            (0, 1, &[(1, 1.0)]),
            (0, 2, &[(2, -1.0)]),
            (0, 4, &[(4, 2.0)]),
            (0, 5, &[(5, 1.0)]),
            (0, 7, &[(7, -2.0)]),
            (0, 8, &[(8, -1.0)]),
            (1, 2, &[(0, 1.0), (3, -1.0)]),
            (1, 3, &[(1, 1.0)]),
            (1, 5, &[(4, 2.0)]),
            (1, 6, &[(5, 1.0)]),
            (1, 7, &[(8, -1.0)]),
            (1, 8, &[(9, -2.0)]),
            (2, 3, &[(2, -1.0)]),
            (2, 4, &[(5, 1.0)]),
            (2, 5, &[(6, 2.0)]),
            (2, 8, &[(7, -2.0)]),
            (2, 9, &[(8, -1.0)]),
            (3, 5, &[(5, 1.0)]),
            (3, 6, &[(6, 2.0)]),
            (3, 8, &[(8, -1.0)]),
            (3, 9, &[(9, -2.0)]),
            (4, 7, &[(0, -1.0)]),
            (4, 8, &[(1, -1.0)]),
            (5, 7, &[(2, -1.0)]),
            (5, 8, &[(0, -1.0), (3, -1.0)]),
            (5, 9, &[(1, -1.0)]),
            (6, 8, &[(2, -1.0)]),
            (6, 9, &[(3, -1.0)]),
        ],
    )
}

/// The projected fields pi_* X_i on S^3 as printed, in ambient coordinates
/// restricted to the unit sphere. Stored verbatim so the radial-pushforward
/// oracle can audit the printed polynomials entry by entry.
pub fn projected_s3_fields() -> Vec<VectorField> {
    let ch = Chart::Ambient4;
    vec![
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                a * (b * b * 2.0 + c * c + d * d),
                -(b * (a * a * 2.0 + c * c + d * d)),
                -(c * (a * a - b * b)),
                -(d * (a * a - b * b)),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                -(a * (a * c - b * d)),
                -(d * (a * a + c * c + d * d) + a * b * c),
                a * (a * a + b * b + d * d) + b * c * d,
                -(d * (a * c - b * d)),
            ]
        })),
        // As printed; the first component carries (x2)^3 where the radial
        // pushforward yields (x2)^2 — the validator reports the entry.
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                c * (b * b + c * c * c + d * d) + a * b * d,
                -(b * (a * c - b * d)),
                -(c * (a * c - b * d)),
                -(b * (a * a + b * b + c * c) + a * c * d),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                -(a * (c * c - d * d)),
                -(b * (c * c - d * d)),
                c * (a * a + b * b + d * d * 2.0),
                -(d * (a * a + b * b + c * c * 2.0)),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                b * a * a,
                -(a * (a * a + c * c + d * d)),
                a * b * c,
                a * b * d,
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                a * (a * d + b * c),
                -(c * (a * a + c * c + d * d) - a * b * d),
                c * (a * d + b * c),
                -(a * (a * a + b * b + c * c) - b * c * d),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                a * c * d,
                b * c * d,
                d * c * c,
                -(c * (a * a + b * b + c * c)),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                b * (b * b + c * c + d * d),
                -(a * b * b),
                -(a * b * c),
                -(a * b * d),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                d * (b * b + c * c + d * d) - a * b * c,
                -(b * (a * d + b * c)),
                b * (a * a + b * b + d * d) - a * c * d,
                -(d * (a * d + b * c)),
            ]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let (a, b, c, d) = (p[0], p[1], p[2], p[3]);
            vec![
                -(a * c * d),
                -(b * c * d),
                d * (a * a + b * b + d * d),
                -(c * d * d),
            ]
        })),
    ]
}

/// Tangential projection of an R^4 field onto the unit sphere: the
/// differential of x -> x/|x| applied at |p| = 1, i.e. X - <X, p> p.
/// This is the independent oracle the printed table is validated against.
pub fn radial_pushforward_at<S: Scalar>(field: &VectorField, p: &[S]) -> Vec<S> {
    let v = field.at(p);
    let mut dot = S::from_f64(0.0);
    for i in 0..4 {
        dot = dot + v[i] * p[i];
    }
    (0..4).map(|i| v[i] - dot * p[i]).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{lie_bracket, max_abs_diff, sample_box, verify_structure};
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn table_reproduced_by_ad_brackets() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(97);
        let fields = fields_r4();
        let table = table_r4();
        let pts: Vec<Vec<f64>> = (0..100)
            .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
            .collect();
        let res = verify_structure(&fields, &table, &pts).unwrap();
        assert!(res < 1e-9, "sp(4,R) table residual {res}");
    }

    #[test]
    fn flipped_sign_is_detected() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(101);
        let fields = fields_r4();
        let mut table = table_r4();
        table.set_pair(0, 1, 1, -1.0); // [X1, X2] = -X2 instead of X2
        let pts: Vec<Vec<f64>> = (0..20)
            .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
            .collect();
        let res = verify_structure(&fields, &table, &pts).unwrap();
        assert!(res > 1e-2);
    }

    #[test]
    fn bracket_example_x5_x8() {
        let fields = fields_r4();
        let p = [1.0, 1.0, 1.0, 1.0];
        let br = lie_bracket(&fields[4], &fields[7], &p).unwrap();
        assert!(max_abs_diff(&br, &[-1.0, 1.0, 0.0, 0.0]) < 1e-13);
    }

    #[test]
    fn printed_projection_validates_except_entry_three() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(103);
        let upstairs = fields_r4();
        let printed = projected_s3_fields();
        let mut bad = Vec::new();
        for (i, (up, pr)) in upstairs.iter().zip(&printed).enumerate() {
            let mut worst: f64 = 0.0;
            for _ in 0..50 {
                let mut p: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0..1.0)).collect();
                let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
                if n < 0.1 {
                    continue;
                }
                for v in &mut p {
                    *v /= n;
                }
                let oracle = radial_pushforward_at::<f64>(up, &p);
                worst = worst.max(max_abs_diff(&oracle, &pr.at(&p)));
            }
            if worst > 1e-6 {
                bad.push(i);
            }
        }
        // The single known misprint is the first component of pi_* X_3.
        assert_eq!(bad, vec![2]);
    }
}
