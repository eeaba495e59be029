//! Liouville-type subsystems of the curved sp(4, R) contact systems: their
//! Hamiltonians are first integrals of the Reeb field, so each projects
//! through the Reeb fibration of its space.

use crate::ad::Scalar;
use crate::calculus::fields::{Chart, ScalarField, StructureTable, VectorField};
use crate::geometry::charts::embed_parallel;
use crate::geometry::{quadratic_form, KappaTriple};
use crate::ktrig::{ck_cos, ck_sin, ck_tan_unchecked};

/// Basis (Y1, Y2, Y3, Y4 = R) on S^3 (k2 = +1) or AdS (k2 = -1) in
/// geodesic parallel coordinates; kappa = (1, k2, 1).
pub fn sphere_ads_fields(k2: f64) -> Vec<VectorField> {
    let ch = Chart::Parallel3;
    vec![
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c2 = ck_cos(k2, p[1]);
            let t2 = ck_tan_unchecked(k2, p[2]);
            let s2 = ck_sin(k2, p[1]);
            vec![
                p[0] * 0.0 - 0.5,
                c2 * t2 * (-0.5 * k2),
                s2 * (0.5 * k2),
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let (sx, cx) = (p[0].sin(), p[0].cos());
            let c2y = ck_cos(k2, p[1]);
            let s2y = ck_sin(k2, p[1]);
            let t2y = ck_tan_unchecked(k2, p[1]);
            let t2z = ck_tan_unchecked(k2, p[2]);
            vec![
                (sx * t2y - cx * t2z / c2y * k2) / 2.0,
                (cx + sx * s2y * t2z) * (k2 / 2.0),
                sx * c2y / 2.0,
            ]
        })),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let (sx, cx) = (p[0].sin(), p[0].cos());
            let c2y = ck_cos(k2, p[1]);
            let s2y = ck_sin(k2, p[1]);
            let t2y = ck_tan_unchecked(k2, p[1]);
            let t2z = ck_tan_unchecked(k2, p[2]);
            vec![
                -(cx * t2y + sx * t2z / c2y * k2) / 2.0,
                (sx - cx * s2y * t2z) * (k2 / 2.0),
                -(cx * c2y) / 2.0,
            ]
        })),
        // Y4 = R.
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            let c2 = ck_cos(k2, p[1]);
            let t2 = ck_tan_unchecked(k2, p[2]);
            let s2 = ck_sin(k2, p[1]);
            vec![
                p[0] * 0.0 + 2.0,
                c2 * t2 * (-2.0 * k2),
                s2 * (2.0 * k2),
            ]
        })),
    ]
}

/// The first integrals h'_1 .. h'_4 pulled into the parallel chart via the
/// ambient embedding; h'_4 = I_kappa = 1 identically on the space.
pub fn sphere_ads_hamiltonians(k2: f64) -> Vec<ScalarField> {
    let ch = Chart::Parallel3;
    let kappa = KappaTriple::new(1.0, k2, 1.0);
    vec![
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let a = embed_parallel(kappa, p);
            vec![(a[0] * a[0] + a[1] * a[1] - a[2] * a[2] * k2 - a[3] * a[3] * k2) / 4.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let a = embed_parallel(kappa, p);
            vec![(a[0] * a[3] * k2 - a[1] * a[2]) / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let a = embed_parallel(kappa, p);
            vec![(a[0] * a[2] + a[1] * a[3] * k2) / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let a = embed_parallel(kappa, p);
            vec![quadratic_form(kappa, &a, &a)]
        })),
    ]
}

/// {h'1, h'2} = h'3, {h'1, h'3} = -h'2, {h'2, h'3} = k2 h'1, h'4 central.
pub fn sphere_ads_table(k2: f64) -> StructureTable {
    StructureTable::from_upper(
        4,
        &[
            (0, 1, &[(2, 1.0)]),
            (0, 2, &[(1, -1.0)]),
            (1, 2, &[(0, k2)]),
        ],
    )
}

/// Flat-space basis in the order (b2, b4, b5, b6, b7, b10); the b5 entry is
/// -R/2. Valid for kappa = (0, k2, +1), any signature.
pub fn flat_fields() -> Vec<VectorField> {
    let ch = Chart::Parallel3;
    vec![
        // X_{k,2} = -z dx + dy
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![-p[2], p[0] * 0.0 + 1.0, p[0] * 0.0])),
        // X_{k,4} = y dy - z dz
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[1], -p[2]])),
        // -R/2 = -dx
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0 - 1.0, p[0] * 0.0, p[0] * 0.0])),
        // X_{k,6} = -y dx - dz
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![-p[1], p[0] * 0.0, p[0] * 0.0 - 1.0])),
        // X_{k,7} = -y dz
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[0] * 0.0, -p[1]])),
        // X_{k,10} = z dy
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[2], p[0] * 0.0])),
    ]
}

/// First integrals (z, yz, 1/2, y, y^2/2, z^2/2) in the same order.
pub fn flat_hamiltonians() -> Vec<ScalarField> {
    let ch = Chart::Parallel3;
    vec![
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[2]])),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[1] * p[2]])),
        ScalarField::constant(ch, 0.5),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[1]])),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[1] * p[1] / 2.0])),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[2] * p[2] / 2.0])),
    ]
}

/// Two-photon bracket pattern over (b2, b4, b5, b6, b7, b10).
pub fn flat_table() -> StructureTable {
    StructureTable::from_upper(
        6,
        &[
            (0, 1, &[(0, 1.0)]),
            (0, 3, &[(2, 2.0)]),
            (0, 4, &[(3, 1.0)]),
            (1, 3, &[(3, 1.0)]),
            (1, 4, &[(4, 2.0)]),
            (1, 5, &[(5, -2.0)]),
            (3, 5, &[(0, -1.0)]),
            (4, 5, &[(1, -1.0)]),
        ],
    )
}

/// Newton-Hooke basis (b4, b7, b10, b5) for kappa = (k1, 0, +1), k1 = +-1;
/// the b5 entry is -R/2 = X_{k,5} + k1 X_{k,8}.
pub fn nh_fields() -> Vec<VectorField> {
    let ch = Chart::Parallel3;
    vec![
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[1], -p[2]])),
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[0] * 0.0, -p[1]])),
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0, p[2], p[0] * 0.0])),
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0 - 1.0, p[0] * 0.0, p[0] * 0.0])),
    ]
}

/// (yz, y^2/2, z^2/2, 1/2) in the same order.
pub fn nh_hamiltonians() -> Vec<ScalarField> {
    let ch = Chart::Parallel3;
    vec![
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[1] * p[2]])),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[1] * p[1] / 2.0])),
        ScalarField::new(ch, evaluator!(3, 1; move |p| vec![p[2] * p[2] / 2.0])),
        ScalarField::constant(ch, 0.5),
    ]
}

/// sl(2, R) + R pattern over (b4, b7, b10, b5).
pub fn nh_table() -> StructureTable {
    StructureTable::from_upper(
        4,
        &[
            (0, 1, &[(1, 2.0)]),
            (0, 2, &[(2, -2.0)]),
            (1, 2, &[(0, -1.0)]),
        ],
    )
}

/// Hyperbolic-space basis (b5, b7) for kappa = (-1, +1, +1):
/// b5 -> X7 + X10 - R/2 = -dx, b7 -> X7 + X10.
pub fn h3_fields() -> Vec<VectorField> {
    let ch = Chart::Parallel3;
    vec![
        VectorField::new(ch, evaluator!(3, 3; move |p| vec![p[0] * 0.0 - 1.0, p[0] * 0.0, p[0] * 0.0])),
        VectorField::new(ch, evaluator!(3, 3; move |p| {
            vec![p[0] * 0.0, p[1].cosh() * p[2].tanh(), -p[1].sinh()]
        })),
    ]
}

/// First integrals: h5 - h8 = cosh^2 y cosh^2 z / 2 pairs with -dx, and
/// h7 + h10 = (sinh^2 y cosh^2 z + sinh^2 z)/2 with X7 + X10.
pub fn h3_hamiltonians() -> Vec<ScalarField> {
    let ch = Chart::Parallel3;
    vec![
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let (cy, cz) = (p[1].cosh(), p[2].cosh());
            vec![cy * cy * cz * cz / 2.0]
        })),
        ScalarField::new(ch, evaluator!(3, 1; move |p| {
            let (sy, cz, sz) = (p[1].sinh(), p[2].cosh(), p[2].sinh());
            vec![(sy * sy * cz * cz + sz * sz) / 2.0]
        })),
    ]
}

pub fn h3_table() -> StructureTable {
    StructureTable::zero(2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, sample_box, verify_structure};
    use crate::contact::{contact_structure, is_liouville};
    use crate::geometry::charts::chart_box;
    use crate::systems::ck_table6;
    use rand::SeedableRng;

    #[test]
    fn sphere_ads_fields_are_the_stated_combinations() {
        // Y1 = (X5 + X8 - k2 X7 - k2 X10)/2, Y2 = (k2 X2 - X3)/2,
        // Y3 = (X6 + k2 X9)/2, Y4 = -2(X5 + X8 + k2 X7 + k2 X10).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(157);
        for k2 in [1.0, -1.0] {
            let kappa = KappaTriple::new(1.0, k2, 1.0);
            let x = ck_table6::fields(kappa);
            let y = sphere_ads_fields(k2);
            let bounds = chart_box(kappa, Chart::Parallel3);
            for _ in 0..30 {
                let p = sample_box(&mut rng, &bounds);
                let combo = |coef: &[(usize, f64)]| -> Vec<f64> {
                    let mut acc = vec![0.0; 3];
                    for &(i, c) in coef {
                        for (a, v) in acc.iter_mut().zip(x[i].at(&p)) {
                            *a += c * v;
                        }
                    }
                    acc
                };
                let y1 = combo(&[(4, 0.5), (7, 0.5), (6, -0.5 * k2), (9, -0.5 * k2)]);
                assert!(max_abs_diff(&y1, &y[0].at(&p)) < 1e-12, "Y1 at k2={k2}");
                let y2 = combo(&[(1, 0.5 * k2), (2, -0.5)]);
                assert!(max_abs_diff(&y2, &y[1].at(&p)) < 1e-12, "Y2 at k2={k2}");
                let y3 = combo(&[(5, 0.5), (8, 0.5 * k2)]);
                assert!(max_abs_diff(&y3, &y[2].at(&p)) < 1e-12, "Y3 at k2={k2}");
                let y4 = combo(&[(4, -2.0), (7, -2.0), (6, -2.0 * k2), (9, -2.0 * k2)]);
                assert!(max_abs_diff(&y4, &y[3].at(&p)) < 1e-12, "Y4 at k2={k2}");
            }
        }
    }

    #[test]
    fn tables_hold_and_everything_is_liouville() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(163);
        {
            for k2 in [1.0, -1.0] {
                let kappa = KappaTriple::new(1.0, k2, 1.0);
                let bounds = chart_box(kappa, Chart::Parallel3);
                let pts: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &bounds)).collect();
                let res =
                    verify_structure(&sphere_ads_fields(k2), &sphere_ads_table(k2), &pts).unwrap();
                assert!(res < 1e-9, "sphere/ads table at k2={k2}: {res}");
                let cs = contact_structure(kappa, Chart::Parallel3);
                for h in sphere_ads_hamiltonians(k2) {
                    let (ok, r) = is_liouville(&cs, &h, &pts);
                    assert!(ok, "first integral residual {r} at k2={k2}");
                }
            }
        }
        {
            let kappa = KappaTriple::new(0.0, 1.0, 1.0);
            let bounds = chart_box(kappa, Chart::Parallel3);
            let pts: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &bounds)).collect();
            let res = verify_structure(&flat_fields(), &flat_table(), &pts).unwrap();
            assert!(res < 1e-10, "flat table: {res}");
            let cs = contact_structure(kappa, Chart::Parallel3);
            for h in flat_hamiltonians() {
                assert!(is_liouville(&cs, &h, &pts).0);
            }
        }
        for k1 in [1.0, -1.0] {
            let kappa = KappaTriple::new(k1, 0.0, 1.0);
            let bounds = chart_box(kappa, Chart::Parallel3);
            let pts: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &bounds)).collect();
            let res = verify_structure(&nh_fields(), &nh_table(), &pts).unwrap();
            assert!(res < 1e-10, "NH table: {res}");
            let cs = contact_structure(kappa, Chart::Parallel3);
            for h in nh_hamiltonians() {
                assert!(is_liouville(&cs, &h, &pts).0);
            }
        }
        {
            let kappa = KappaTriple::new(-1.0, 1.0, 1.0);
            let bounds = chart_box(kappa, Chart::Parallel3);
            let pts: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &bounds)).collect();
            let res = verify_structure(&h3_fields(), &h3_table(), &pts).unwrap();
            assert!(res < 1e-10, "H3 table: {res}");
            let cs = contact_structure(kappa, Chart::Parallel3);
            for h in h3_hamiltonians() {
                assert!(is_liouville(&cs, &h, &pts).0);
            }
        }
    }

    #[test]
    fn h4_prime_is_identically_one() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(167);
        for k2 in [1.0, -1.0] {
            let kappa = KappaTriple::new(1.0, k2, 1.0);
            let h4 = &sphere_ads_hamiltonians(k2)[3];
            let bounds = chart_box(kappa, Chart::Parallel3);
            for _ in 0..30 {
                let p = sample_box(&mut rng, &bounds);
                assert!((h4.at(p.as_slice()) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn nh_quadratic_relation() {
        // 4 h7 h10 - h4^2 = 0 identically (the printed Casimir expression
        // h4 h10 - h4^2 does not vanish; see the verification report).
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(173);
        let h = nh_hamiltonians();
        for _ in 0..1000 {
            let p = sample_box(&mut rng, &[(-1.5, 1.5); 3]);
            let (h4, h7, h10) = (h[0].at(p.as_slice()), h[1].at(p.as_slice()), h[2].at(p.as_slice()));
            assert!((4.0 * h7 * h10 - h4 * h4).abs() < 1e-14);
            // The printed expression is generically nonzero.
            if p[1].abs() > 0.5 && p[2].abs() > 0.5 && (p[1] - p[2]).abs() > 0.2 {
                assert!((h4 * h10 - h4 * h4).abs() > 1e-6);
            }
        }
    }
}
