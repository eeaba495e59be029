//! Reeb flows in closed form, the curvature-dependent principal-bundle
//! projections of the eight regular spaces, reduced symplectic forms, and
//! projection/flow commutation checks.

use crate::ad::{DiffScalar, Scalar};
use crate::calculus::fields::{Chart, ChartMap, ScalarField, StructureTable, TimeDependentField, TwoForm, VectorField};
use crate::calculus::integrate::{integrate, SAMPLE_DT};
use crate::calculus::ops::pushforward_at;
use crate::error::{CkError, Result};
use crate::geometry::{KappaTriple};
use crate::ktrig::{ck_cos, ck_sin};
use crate::systems::{BasisEntry, BracketConvention, SystemDescriptor};

/// Closed-form Reeb flow in Weierstrass coordinates: a kappa1-rotation in
/// the (x0, x1)-plane at speed 2 and a kappa3-rotation in (x2, x3) at
/// speed 2 kappa02.
pub fn reeb_flow(kappa: KappaTriple, x: &[f64], t: f64) -> [f64; 4] {
    let (k1, k3) = (kappa.k1, kappa.k3);
    let s = 2.0 * t;
    let u = 2.0 * kappa.k02() * t;
    [
        x[0] * ck_cos(k1, s) - k1 * x[1] * ck_sin(k1, s),
        x[0] * ck_sin(k1, s) + x[1] * ck_cos(k1, s),
        x[2] * ck_cos(k3, u) - k3 * x[3] * ck_sin(k3, u),
        x[2] * ck_sin(k3, u) + x[3] * ck_cos(k3, u),
    ]
}

/// The quotient of a regular CK contact structure by its Reeb flow.
pub struct FibrationMap {
    pub kappa: KappaTriple,
    pub target: Chart,
    /// "S1" for positive curvature, "R" otherwise.
    pub fiber_group: &'static str,
    /// Bundle projection in ambient coordinates.
    pub map: ChartMap,
    /// The reduced symplectic form on the target chart.
    pub omega: TwoForm,
}

fn asinh_s<S: Scalar>(x: S) -> S {
    (x + (x * x + 1.0).sqrt()).ln()
}

/// The space-specific bundle projection and reduced symplectic form.
/// Requires kappa3 = +1 and (kappa1, kappa2) != (-1, -1): the de Sitter
/// Reeb orbits through (1,0,0,0) and (0,0,1,0) are a line and a circle,
/// so its contact structure is not regular.
pub fn fibration(kappa: KappaTriple) -> Result<FibrationMap> {
    let (k1, k2, k3) = (kappa.k1, kappa.k2, kappa.k3);
    if (k1, k2) == (-1.0, -1.0) && k3 == 1.0 {
        return Err(CkError::NotRegular);
    }
    let nine = KappaTriple::nine();
    if !nine.iter().any(|(k, _)| *k == kappa) {
        return Err(CkError::UnsupportedKappa(k1, k2, k3));
    }
    let plane_omega = || {
        TwoForm::new(
            Chart::Plane2,
            evaluator!(2, 4; move |p| {
                let zero = p[0] * 0.0;
                vec![zero, zero + 1.0, zero - 1.0, zero]
            }),
        )
    };
    let last_two = || {
        ChartMap::new(
            Chart::Ambient4,
            Chart::Plane2,
            evaluator!(4, 2; move |p| vec![p[2], p[3]]),
        )
    };
    if k1 == 1.0 && k2 == 1.0 {
        // Hopf fibration onto the unit sphere with the monopole form.
        return Ok(FibrationMap {
            kappa,
            target: Chart::SphereAmbient3,
            fiber_group: "S1",
            map: ChartMap::new(
                Chart::Ambient4,
                Chart::SphereAmbient3,
                evaluator!(4, 3; move |p| vec![
                    p[0] * p[0] + p[1] * p[1] - p[2] * p[2] - p[3] * p[3],
                    (p[0] * p[2] + p[1] * p[3]) * 2.0,
                    (p[1] * p[2] - p[0] * p[3]) * 2.0,
                ]),
            ),
            omega: TwoForm::new(
                Chart::SphereAmbient3,
                evaluator!(3, 9; move |p| {
                    let zero = p[0] * 0.0;
                    vec![
                        zero, -p[2] / 4.0, p[1] / 4.0,
                        p[2] / 4.0, zero, -p[0] / 4.0,
                        -p[1] / 4.0, p[0] / 4.0, zero,
                    ]
                }),
            ),
        });
    }
    if k1 == 1.0 && k2 == -1.0 {
        // AdS -> complex hyperbolic line (Poincare disk), z1 / conj(z0).
        return Ok(FibrationMap {
            kappa,
            target: Chart::Disk2,
            fiber_group: "S1",
            map: ChartMap::new(
                Chart::Ambient4,
                Chart::Disk2,
                evaluator!(4, 2; move |p| {
                    let n = p[0] * p[0] + p[1] * p[1];
                    vec![
                        (p[0] * p[2] - p[1] * p[3]) / n,
                        (p[0] * p[3] + p[1] * p[2]) / n,
                    ]
                }),
            ),
            omega: TwoForm::new(
                Chart::Disk2,
                evaluator!(2, 4; move |p| {
                    let zero = p[0] * 0.0;
                    let den = 1.0 - p[0] * p[0] - p[1] * p[1];
                    let f = 1.0 / (den * den);
                    vec![zero, f, -f, zero]
                }),
            ),
        });
    }
    if k1 == 0.0 || (k2 == 0.0 && k1 == 1.0) {
        // Flat spaces and the oscillating NH space project onto (x2, x3).
        return Ok(FibrationMap {
            kappa,
            target: Chart::Plane2,
            fiber_group: if k1 > 0.0 { "S1" } else { "R" },
            map: last_two(),
            omega: plane_omega(),
        });
    }
    if k1 == -1.0 && k2 == 0.0 {
        // Expanding NH space: same projection, R-fibers.
        return Ok(FibrationMap {
            kappa,
            target: Chart::Plane2,
            fiber_group: "R",
            map: last_two(),
            omega: plane_omega(),
        });
    }
    // Hyperbolic space: z1 rotated by the logarithmic phase
    // phi = log((x0 + x1)/(x0 - x1)) / 2 on the sheet x0 > |x1|. On the
    // hyperboloid (x0)^2 - (x1)^2 = 1 + (x2)^2 + (x3)^2, which gives the
    // cancellation-free form used here (the naive difference loses ~e^{4t}
    // digits along the Reeb flow).
    Ok(FibrationMap {
        kappa,
        target: Chart::Plane2,
        fiber_group: "R",
        map: ChartMap::new(
            Chart::Ambient4,
            Chart::Plane2,
            evaluator!(4, 2; move |p| {
                let m2 = 1.0 + p[2] * p[2] + p[3] * p[3];
                let phi = (p[0] + p[1]).ln() - m2.ln() / 2.0;
                vec![
                    p[2] * phi.cos() - p[3] * phi.sin(),
                    p[2] * phi.sin() + p[3] * phi.cos(),
                ]
            }),
        ),
        omega: plane_omega(),
    })
}

/// |omega(D pi v, D pi w) - d eta(v, w)| for tangent vectors v, w at p.
pub fn verify_pullback(
    fib: &FibrationMap,
    cs: &crate::contact::ContactStructure,
    p: &[f64],
    v: &[f64],
    w: &[f64],
) -> f64 {
    let (img, jac) = f64::jacobian(&fib.map.eval, p);
    let m = fib.target.dim();
    let push = |u: &[f64]| -> Vec<f64> {
        (0..m)
            .map(|a| (0..4).map(|b| jac[a][b] * u[b]).sum())
            .collect()
    };
    let lhs = fib.omega.pair(&img, &push(v), &push(w));
    let de = crate::calculus::ops::exterior_d_at::<f64>(&cs.eta, p);
    let mut rhs = 0.0;
    for i in 0..4 {
        for j in 0..4 {
            rhs += de[i][j] * v[i] * w[j];
        }
    }
    (lhs - rhs).abs()
}

/// Canonical comparison coordinates for a downstairs state: parallel S^2
/// charts are embedded in R^3, disk and plane states compare directly.
pub fn embed_downstairs(chart: Chart, state: &[f64]) -> Vec<f64> {
    match chart {
        Chart::SphereParallel2 => vec![
            state[0].cos() * state[1].cos(),
            state[0].sin() * state[1].cos(),
            state[1].sin(),
        ],
        _ => state.to_vec(),
    }
}

/// Downstairs chart coordinates of a bundle-projected ambient point.
pub fn downstairs_coords(fib: &FibrationMap, target_chart: Chart, p: &[f64]) -> Vec<f64> {
    let img = fib.map.at(p);
    match target_chart {
        Chart::SphereParallel2 => vec![img[1].atan2(img[0]), img[2].clamp(-1.0, 1.0).asin()],
        _ => img,
    }
}

/// The downstairs Lie-Hamilton system of a Liouville-type entry: printed
/// reduced fields and Hamiltonians on the quotient chart; the Reeb
/// direction maps to the zero field, the table is otherwise preserved.
pub fn project_system(d: &SystemDescriptor, fib: &FibrationMap) -> Result<SystemDescriptor> {
    if !d.liouville {
        return Err(CkError::NotLiouville(d.id.clone()));
    }
    let kappa = d.kappa.expect("liouville entries carry kappa");
    if fib.kappa != kappa {
        return Err(CkError::Domain(format!(
            "fibration kappa ({}, {}, {}) does not match system {}",
            fib.kappa.k1, fib.kappa.k2, fib.kappa.k3, d.id
        )));
    }
    let (chart, ids, fields, hams): (Chart, Vec<&str>, Vec<VectorField>, Vec<ScalarField>) =
        match d.id.as_str() {
            "liouville-s3" => (
                Chart::SphereParallel2,
                vec!["a1", "a2", "a3", "a4"],
                vec![
                    VectorField::new(Chart::SphereParallel2, evaluator!(2, 2; move |p| {
                        vec![p[0].cos() * (p[1].sin() / p[1].cos()), -p[0].sin()]
                    })),
                    VectorField::new(Chart::SphereParallel2, evaluator!(2, 2; move |p| {
                        vec![p[0] * 0.0 + 1.0, p[0] * 0.0]
                    })),
                    VectorField::new(Chart::SphereParallel2, evaluator!(2, 2; move |p| {
                        vec![p[0].sin() * (p[1].sin() / p[1].cos()), p[0].cos()]
                    })),
                    VectorField::zero(Chart::SphereParallel2),
                ],
                vec![
                    ScalarField::new(Chart::SphereParallel2, evaluator!(2, 1; move |p| {
                        vec![p[0].cos() * p[1].cos() / 4.0]
                    })),
                    ScalarField::new(Chart::SphereParallel2, evaluator!(2, 1; move |p| {
                        vec![-p[1].sin() / 4.0]
                    })),
                    ScalarField::new(Chart::SphereParallel2, evaluator!(2, 1; move |p| {
                        vec![p[0].sin() * p[1].cos() / 4.0]
                    })),
                    ScalarField::constant(Chart::SphereParallel2, 1.0),
                ],
            ),
            "liouville-ads" => (
                Chart::Disk2,
                vec!["a1", "a2", "a3", "a4"],
                vec![
                    VectorField::new(Chart::Disk2, evaluator!(2, 2; move |p| {
                        vec![p[1], -p[0]]
                    })),
                    VectorField::new(Chart::Disk2, evaluator!(2, 2; move |p| {
                        vec![(p[0] * p[0] - p[1] * p[1] - 1.0) / 2.0, p[0] * p[1]]
                    })),
                    VectorField::new(Chart::Disk2, evaluator!(2, 2; move |p| {
                        vec![p[0] * p[1], -(p[0] * p[0] - p[1] * p[1] + 1.0) / 2.0]
                    })),
                    VectorField::zero(Chart::Disk2),
                ],
                vec![
                    ScalarField::new(Chart::Disk2, evaluator!(2, 1; move |p| {
                        let den = 1.0 - p[0] * p[0] - p[1] * p[1];
                        vec![(1.0 + p[0] * p[0] + p[1] * p[1]) / (den * 4.0)]
                    })),
                    ScalarField::new(Chart::Disk2, evaluator!(2, 1; move |p| {
                        let den = 1.0 - p[0] * p[0] - p[1] * p[1];
                        vec![-(p[1] / (den * 2.0))]
                    })),
                    ScalarField::new(Chart::Disk2, evaluator!(2, 1; move |p| {
                        let den = 1.0 - p[0] * p[0] - p[1] * p[1];
                        vec![p[0] / (den * 2.0)]
                    })),
                    ScalarField::constant(Chart::Disk2, 1.0),
                ],
            ),
            "liouville-flat" => (
                Chart::Plane2,
                vec!["b2", "b4", "b5", "b6", "b7", "b10"],
                vec![
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0] * 0.0 + 1.0, p[0] * 0.0]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0], -p[1]]
                    })),
                    VectorField::zero(Chart::Plane2),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0] * 0.0, p[0] * 0.0 - 1.0]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0] * 0.0, -p[0]]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[1], p[0] * 0.0]
                    })),
                ],
                vec![
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[1]])),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[0] * p[1]])),
                    ScalarField::constant(Chart::Plane2, 0.5),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[0]])),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[0] * p[0] / 2.0])),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[1] * p[1] / 2.0])),
                ],
            ),
            "liouville-nh" => (
                Chart::Plane2,
                vec!["b4", "b7", "b10", "b5"],
                vec![
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0], -p[1]]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[0] * 0.0, -p[0]]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[1], p[0] * 0.0]
                    })),
                    VectorField::zero(Chart::Plane2),
                ],
                vec![
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[0] * p[1]])),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[0] * p[0] / 2.0])),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| vec![p[1] * p[1] / 2.0])),
                    ScalarField::constant(Chart::Plane2, 0.5),
                ],
            ),
            "liouville-h3" => (
                Chart::Plane2,
                vec!["b5", "b7"],
                vec![
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[1], -p[0]]
                    })),
                    VectorField::new(Chart::Plane2, evaluator!(2, 2; move |p| {
                        vec![p[1], -p[0]]
                    })),
                ],
                vec![
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| {
                        vec![(p[0] * p[0] + p[1] * p[1] + 1.0) / 2.0]
                    })),
                    ScalarField::new(Chart::Plane2, evaluator!(2, 1; move |p| {
                        vec![(p[0] * p[0] + p[1] * p[1]) / 2.0]
                    })),
                ],
            ),
            other => return Err(CkError::UnknownSystem(other.into())),
        };
    let basis = ids
        .iter()
        .zip(fields)
        .zip(hams)
        .map(|((id, field), hamiltonian)| BasisEntry {
            id: (*id).to_string(),
            field,
            hamiltonian,
        })
        .collect();
    Ok(SystemDescriptor {
        id: format!("{}/reduced", d.id),
        kappa: Some(kappa),
        chart,
        class_label: d.class_label,
        basis,
        field_table: reduced_table(d),
        convention: BracketConvention::Symplectic,
        presets: d.presets.clone(),
        first_integrals: vec![],
        liouville: false,
    })
}

fn reduced_table(d: &SystemDescriptor) -> StructureTable {
    // The Reeb direction is central upstairs and maps to zero, so the
    // structure constants carry over unchanged.
    d.field_table.clone()
}

/// The projection of an upstairs parallel-chart field by the composition
/// embed -> bundle map, evaluated through a section of the fibration.
/// Used as the independent oracle for the printed reduced fields.
pub fn section_pushforward(
    fib: &FibrationMap,
    d: &SystemDescriptor,
    target_chart: Chart,
    field: &VectorField,
) -> Result<VectorField> {
    let kappa = d.kappa.expect("liouville entries carry kappa");
    // Bundle projection expressed on the parallel chart.
    let par_map = parallel_projection(fib, kappa, target_chart)?;
    let section = parallel_section(fib, kappa, target_chart)?;
    crate::calculus::ops::pushforward_via_section(&par_map, &section, field)
}

/// Bundle projection composed with the parallel-chart embedding.
fn parallel_projection(
    fib: &FibrationMap,
    kappa: KappaTriple,
    target_chart: Chart,
) -> Result<ChartMap> {
    let map = fib.map.clone();
    fn compose<S: DiffScalar>(kappa: KappaTriple, map: &ChartMap, p: &[S]) -> Vec<S> {
        let amb = crate::geometry::charts::embed_parallel(kappa, p);
        map.at(&amb)
    }
    let m0 = map.clone();
    let m1 = map.clone();
    let raw = crate::ad::Evaluator::first_order(
        3,
        fib.target.dim(),
        std::sync::Arc::new(move |p: &[f64]| compose::<f64>(kappa, &m0, p)),
        std::sync::Arc::new(move |p: &[crate::ad::D1]| compose::<crate::ad::D1>(kappa, &m1, p)),
    );
    // Convert the sphere target to its parallel chart analytically where
    // needed; other targets coincide with their canonical chart.
    match (fib.target, target_chart) {
        (t, u) if t == u => Ok(ChartMap::new(Chart::Parallel3, t, raw)),
        (Chart::SphereAmbient3, Chart::SphereParallel2) => {
            let base = ChartMap::new(Chart::Parallel3, Chart::SphereAmbient3, raw);
            let b0 = base.clone();
            let b1 = base.clone();
            fn to_parallel<S: Scalar>(img: Vec<S>) -> Vec<S> {
                // x = atan2(X1, X0), y = asin(X2) via ln/sqrt-free forms:
                // tan x = X1/X0 and sin y = X2 with cos y = sqrt(X0^2 + X1^2).
                let cy = (img[0] * img[0] + img[1] * img[1]).sqrt();
                vec![atan2_s(img[1], img[0]), atan2_s(img[2], cy)]
            }
            Ok(ChartMap::new(
                Chart::Parallel3,
                Chart::SphereParallel2,
                crate::ad::Evaluator::first_order(
                    3,
                    2,
                    std::sync::Arc::new(move |p: &[f64]| to_parallel(b0.at(p))),
                    std::sync::Arc::new(move |p: &[crate::ad::D1]| to_parallel(b1.at(p))),
                ),
            ))
        }
        (t, u) => Err(CkError::Domain(format!(
            "no chart conversion from {t:?} to {u:?}"
        ))),
    }
}

/// Generic-scalar atan2 via the half-angle form; safe away from the branch
/// cut x <= 0, y = 0, which the sweep boxes avoid.
fn atan2_s<S: Scalar>(y: S, x: S) -> S {
    let r = (x * x + y * y).sqrt();
    let t = y / (r + x);
    // atan(t) on |t| < 1 via log form: atan(t) = ln((1+t)/(1-t)) ... is for
    // atanh; use the series-free identity 2*atan(t) with tan half-angle.
    atan_s(t) * 2.0
}

fn atan_s<S: Scalar>(t: S) -> S {
    // atan(t) = asinh(t / sqrt(1 + t^2)) evaluated through ln.
    asinh_s(t / (t * t + 1.0).sqrt())
}

/// A section of the bundle on the parallel chart.
fn parallel_section(
    fib: &FibrationMap,
    kappa: KappaTriple,
    target_chart: Chart,
) -> Result<ChartMap> {
    match (fib.target, target_chart, kappa.k1 as i64, kappa.k2 as i64) {
        // S^2 in parallel coordinates: the Hopf fiber over (x, y) passes
        // through the half-angle point (x/2, y/2, 0)-ish; instead use the
        // Hamiltonian correspondence: the section is only needed for flat,
        // NH and hyperbolic targets, where closed forms are simple.
        (Chart::Plane2, Chart::Plane2, 0, _) | (Chart::Plane2, Chart::Plane2, 1, 0) | (Chart::Plane2, Chart::Plane2, -1, 0) => {
            // Flat and NH spaces: (q, p) = (y, z) on the x = 0 slice.
            Ok(ChartMap::new(
                Chart::Plane2,
                Chart::Parallel3,
                evaluator!(2, 3; move |p| vec![p[0] * 0.0, p[0], p[1]]),
            ))
        }
        (Chart::Plane2, Chart::Plane2, -1, 1) => {
            // Hyperbolic space: x = 0 slice gives phase 0, so
            // y = asinh(q / sqrt(1 + p^2)), z = asinh(p).
            Ok(ChartMap::new(
                Chart::Plane2,
                Chart::Parallel3,
                evaluator!(2, 3; move |p| {
                    let z = asinh_s(p[1]);
                    let y = asinh_s(p[0] / (p[1] * p[1] + 1.0).sqrt());
                    vec![p[0] * 0.0, y, z]
                }),
            ))
        }
        _ => Err(CkError::Domain(format!(
            "no parallel section catalogued for target {target_chart:?} at kappa = ({}, {}, {})",
            kappa.k1, kappa.k2, kappa.k3
        ))),
    }
}

/// Sup over the common sample grid of the distance between the projected
/// upstairs flow and the downstairs flow, compared in canonical target
/// coordinates.
#[allow(clippy::too_many_arguments)]
pub fn commutation_check(
    upstairs: &TimeDependentField,
    downstairs: &TimeDependentField,
    project: &dyn Fn(&[f64]) -> Vec<f64>,
    embed_down: &dyn Fn(&[f64]) -> Vec<f64>,
    x0: &[f64],
    t1: f64,
    tol: f64,
) -> Result<f64> {
    let up = integrate(upstairs, x0, 0.0, t1, tol, &[])?;
    let y0 = project(x0);
    let down = integrate(downstairs, &y0, 0.0, t1, tol, &[])?;
    let mut worst: f64 = 0.0;
    let mut t = 0.0;
    while t <= t1 + 1e-9 {
        if let (Some(us), Some(ds)) = (up.state_at(t), down.state_at(t)) {
            let a = project(us);
            // `project` lands in downstairs chart coordinates already.
            let pa = embed_down(&a);
            let pb = embed_down(ds);
            worst = worst.max(crate::calculus::ops::max_abs_diff(&pa, &pb));
        }
        t += SAMPLE_DT;
    }
    Ok(worst)
}

/// pi(Fl_t(x)) - pi(x) residual over sampled times: fiber invariance of the
/// bundle projection under the Reeb flow.
pub fn fiber_invariance_residual(fib: &FibrationMap, x: &[f64], times: &[f64]) -> f64 {
    let base = fib.map.at(x);
    let mut worst: f64 = 0.0;
    for &t in times {
        let moved = fib.map.at(&reeb_flow(fib.kappa, x, t).to_vec());
        worst = worst.max(crate::calculus::ops::max_abs_diff(&moved, &base));
    }
    worst
}

/// Pointwise pushforward of an ambient field through the bundle map.
pub fn project_field_at(fib: &FibrationMap, field: &VectorField, p: &[f64]) -> Vec<f64> {
    pushforward_at::<f64>(&fib.map, field, p)
}
