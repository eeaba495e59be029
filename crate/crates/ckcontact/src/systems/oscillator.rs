//! The time-dependent 2D harmonic oscillator: sl(2, R) Lie-Hamilton system
//! on the punctured cotangent space, its polar-radius chart, and the
//! scaling reduction data.

use crate::calculus::fields::{Chart, ChartMap, OneForm, ScalarField, StructureTable, VectorField};
use crate::ad::Scalar;

/// X1 (kinetic), X2 (dilation), X3 (potential) in (q1, q2, p1, p2).
pub fn fields_canonical() -> Vec<VectorField> {
    let ch = Chart::OscCanonical4;
    vec![
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[2], p[3], p[0] * 0.0, p[0] * 0.0])),
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0], p[1], -p[2], -p[3]])),
        VectorField::new(ch, evaluator!(4, 4; move |p| vec![p[0] * 0.0, p[0] * 0.0, -p[0], -p[1]])),
    ]
}

/// h1 = (p1^2 + p2^2)/2, h2 = q.p, h3 = (q1^2 + q2^2)/2.
pub fn hamiltonians_canonical() -> Vec<ScalarField> {
    let ch = Chart::OscCanonical4;
    vec![
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![(p[2] * p[2] + p[3] * p[3]) / 2.0])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![p[0] * p[2] + p[1] * p[3]])),
        ScalarField::new(ch, evaluator!(4, 1; move |p| vec![(p[0] * p[0] + p[1] * p[1]) / 2.0])),
    ]
}

/// [X1, X2] = 2 X1, [X1, X3] = X2, [X2, X3] = 2 X3.
pub fn table() -> StructureTable {
    StructureTable::from_upper(
        3,
        &[
            (0, 1, &[(0, 2.0)]),
            (0, 2, &[(1, 1.0)]),
            (1, 2, &[(2, 2.0)]),
        ],
    )
}

/// The same generators in the polar-radius chart (rho1, theta1, rho2, theta2)
/// with rho2 = |p|/|q|.
pub fn fields_polar() -> Vec<VectorField> {
    let ch = Chart::OscPhase4;
    vec![
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let d = (p[1] - p[3]).cos();
            let s = (p[1] - p[3]).sin();
            vec![p[0] * p[2] * d, -(p[2] * s), -(p[2] * p[2] * d), p[0] * 0.0]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            vec![p[0], p[0] * 0.0, -(p[2] * 2.0), p[0] * 0.0]
        })),
        VectorField::new(ch, evaluator!(4, 4; move |p| {
            let d = (p[1] - p[3]).cos();
            let s = (p[1] - p[3]).sin();
            vec![p[0] * 0.0, p[0] * 0.0, -d, -(s / p[2])]
        })),
    ]
}

/// Scaling generator Delta = rho1 d_rho1 / 2 in the polar chart.
pub fn delta_polar() -> VectorField {
    VectorField::new(
        Chart::OscPhase4,
        evaluator!(4, 4; move |p| vec![p[0] / 2.0, p[0] * 0.0, p[0] * 0.0, p[0] * 0.0]),
    )
}

/// Scaling generator in canonical coordinates: (q dq + p dp)/2.
pub fn delta_canonical() -> VectorField {
    VectorField::new(
        Chart::OscCanonical4,
        evaluator!(4, 4; move |p| vec![p[0] / 2.0, p[1] / 2.0, p[2] / 2.0, p[3] / 2.0]),
    )
}

/// Chart map (rho1, theta1, rho2, theta2) -> (q1, q2, p1, p2) with
/// q = rho1 (cos theta1, sin theta1), p = rho1 rho2 (cos theta2, sin theta2).
pub fn polar_to_canonical() -> ChartMap {
    ChartMap::new(
        Chart::OscPhase4,
        Chart::OscCanonical4,
        evaluator!(4, 4; move |p| vec![
            p[0] * p[1].cos(),
            p[0] * p[1].sin(),
            p[0] * p[2] * p[3].cos(),
            p[0] * p[2] * p[3].sin(),
        ]),
    )
}

/// Quotient projection (rho1, theta1, rho2, theta2) -> (rho, theta1, theta2).
pub fn reduction_projection() -> ChartMap {
    ChartMap::new(
        Chart::OscPhase4,
        Chart::OscReduced3,
        evaluator!(4, 3; move |p| vec![p[2], p[1], p[3]]),
    )
}

/// Section {rho1 = 1} of the scaling action.
pub fn reduction_section() -> ChartMap {
    ChartMap::new(
        Chart::OscReduced3,
        Chart::OscPhase4,
        evaluator!(3, 4; move |p| vec![p[0] * 0.0 + 1.0, p[1], p[0], p[2]]),
    )
}

/// The projected generators on (rho, theta1, theta2).
pub fn fields_reduced() -> Vec<VectorField> {
    let ch = Chart::OscReduced3;
    vec![
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let d = (p[1] - p[2]).cos();
            let s = (p[1] - p[2]).sin();
            vec![-(p[0] * p[0] * d), -(p[0] * s), p[0] * 0.0]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            vec![-(p[0] * 2.0), p[0] * 0.0, p[0] * 0.0]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let d = (p[1] - p[2]).cos();
            let s = (p[1] - p[2]).sin();
            vec![-d, p[0] * 0.0, -(s / p[0])]
        })),
    ]
}

/// The reduced contact form
/// eta = (cos(t1 - t2) d rho + rho sin(t1 - t2)(d t1 + d t2)) / 2.
pub fn reduced_contact_form_printed() -> OneForm {
    OneForm::new(
        Chart::OscReduced3,
        evaluator!(3, 3; move |p| {
            let d = (p[1] - p[2]).cos();
            let s = (p[1] - p[2]).sin();
            vec![d / 2.0, p[0] * s / 2.0, p[0] * s / 2.0]
        }),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, pushforward_at, sample_box, verify_structure};
    use rand::SeedableRng;

    fn polar_box() -> Vec<(f64, f64)> {
        vec![(0.4, 1.8), (-1.2, 1.2), (0.4, 1.8), (-1.2, 1.2)]
    }

    #[test]
    fn canonical_table_and_polar_table_agree() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(113);
        let pts: Vec<Vec<f64>> = (0..40)
            .map(|_| sample_box(&mut rng, &[(0.2, 1.5); 4]))
            .collect();
        let res = verify_structure(&fields_canonical(), &table(), &pts).unwrap();
        assert!(res < 1e-10);

        let polar_pts: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &polar_box())).collect();
        let res = verify_structure(&fields_polar(), &table(), &polar_pts).unwrap();
        assert!(res < 1e-9, "polar chart table residual {res}");
    }

    #[test]
    fn polar_fields_are_the_chart_transport_of_canonical() {
        // Push the polar-chart fields through the chart map and compare with
        // the canonical ones at the image point.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(127);
        let map = polar_to_canonical();
        let canonical = fields_canonical();
        let polar = fields_polar();
        for _ in 0..40 {
            let p = sample_box(&mut rng, &polar_box());
            let img = map.at(&p);
            for (c, pl) in canonical.iter().zip(&polar) {
                let pushed = pushforward_at::<f64>(&map, pl, &p);
                assert!(max_abs_diff(&pushed, &c.at(&img)) < 1e-9);
            }
        }
    }

    #[test]
    fn reduced_fields_are_projections() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(131);
        let proj = reduction_projection();
        let polar = fields_polar();
        let reduced = fields_reduced();
        for _ in 0..40 {
            let p = sample_box(&mut rng, &polar_box());
            let img = proj.at(&p);
            for (up, down) in polar.iter().zip(&reduced) {
                let pushed = pushforward_at::<f64>(&proj, up, &p);
                assert!(max_abs_diff(&pushed, &down.at(&img)) < 1e-10);
            }
        }
    }
}
