//! Randomized verification sweeps over every identity the crate models,
//! bundled into seeded suites with one record per check.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::calculus::fields::{Chart, ScalarField, TimeDependentField, VectorField};
use crate::calculus::integrate::{integrate, Monitor};
use crate::calculus::ops::{
    lie_bracket, max_abs_diff, sample_box, verify_structure,
};
use crate::calculus::parse::parse_coeff;
use crate::contact::{
    contact_hamiltonian_at, contact_structure, eta_pairing_field, jacobi_bracket,
    reeb_axiom_residual, sasaki_phi, verify_contact_condition,
};
use crate::error::Result;
use crate::fibration::{
    commutation_check, downstairs_coords, embed_downstairs, fibration, project_system, reeb_flow,
    verify_pullback,
};
use crate::geometry::charts::{chart_box, embed_parallel, embed_parallel_map, polar_from_ambient};
use crate::geometry::{
    ambient_metric_field, casimir_invariance, ck_structure_table, connection_polar, group_exp,
    killing_field, metric_parallel_field, quadratic_form, KappaTriple,
};
use crate::ktrig::{ck_cos, ck_sin, ck_tan};
use crate::report::CheckRecord;
use crate::symplectic::{
    canonical_cotangent, canonical_r4, hamiltonian_field_at, homogeneity_check, poisson_bracket,
    poisson_bracket_field, radial_scaling_r4, reduce_hamiltonian, reduced_contact_form,
    Homogeneous,
};
use crate::systems::{catalog_get, instantiate, oscillator, sp4, thermo, BracketConvention};

pub const SUITES: [&str; 6] = [
    "ktrig",
    "geometry",
    "contact",
    "symplectic",
    "systems",
    "fibration",
];

/// Substream rule: one ChaCha12 stream per suite over the shared seed.
fn suite_rng(seed: u64, suite_index: u64) -> ChaCha12Rng {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    rng.set_stream(suite_index);
    rng
}

pub fn run_suite(suite: &str, seed: u64) -> Result<Vec<CheckRecord>> {
    let index = SUITES
        .iter()
        .position(|s| *s == suite)
        .ok_or_else(|| crate::error::CkError::Usage(format!("unknown suite {suite:?}")))?;
    let rng = suite_rng(seed, index as u64);
    Ok(match suite {
        "ktrig" => ktrig_suite(rng),
        "geometry" => geometry_suite(rng),
        "contact" => contact_suite(rng),
        "symplectic" => symplectic_suite(rng),
        "systems" => systems_suite(rng),
        "fibration" => fibration_suite(rng),
        _ => unreachable!(),
    })
}

// ---------------------------------------------------------------------
// ktrig
// ---------------------------------------------------------------------

fn ktrig_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let n = 10_000;
    let mut worst_pyth: f64 = 0.0;
    let mut worst_double: f64 = 0.0;
    for _ in 0..n {
        let k: f64 = rng.gen_range(-2.0..2.0);
        let x: f64 = rng.gen_range(-10.0..10.0);
        let (c, s) = (ck_cos(k, x), ck_sin(k, x));
        let scale = (c * c + (k * s * s).abs()).max(1.0);
        worst_pyth = worst_pyth.max((c * c + k * s * s - 1.0).abs() / scale);
        let lhs = ck_sin(k, 2.0 * x);
        worst_double = worst_double.max((lhs - 2.0 * s * c).abs() / lhs.abs().max(1.0));
    }
    checks.push(CheckRecord::below("ktrig.pythagorean", worst_pyth, 1e-12, n));
    checks.push(CheckRecord::below("ktrig.double-angle", worst_double, 1e-12, n));

    let mut worst_der: f64 = 0.0;
    for _ in 0..1000 {
        let k: f64 = rng.gen_range(-2.0..2.0);
        let x: f64 = rng.gen_range(-3.0..3.0);
        let d = crate::ad::D1::variable(x);
        worst_der = worst_der.max((ck_cos(k, d).im + k * ck_sin(k, x)).abs());
        worst_der = worst_der.max((ck_sin(k, d).im - ck_cos(k, x)).abs());
    }
    checks.push(CheckRecord::below(
        "ktrig.derivatives-vs-ad",
        worst_der,
        1e-10,
        1000,
    ));

    let mut worst_cont: f64 = 0.0;
    for i in 0..=200 {
        let x = -10.0 + 0.1 * i as f64;
        for k in [1e-8, -1e-8] {
            worst_cont = worst_cont.max((ck_cos(k, x) - 1.0).abs());
        }
    }
    checks.push(CheckRecord::below(
        "ktrig.continuity-at-kappa-zero",
        worst_cont,
        1e-6,
        402,
    ));

    let pole_ok = matches!(
        ck_tan(1.0, std::f64::consts::FRAC_PI_2),
        Err(crate::error::CkError::Pole { .. })
    );
    checks.push(CheckRecord::below(
        "ktrig.tangent-pole-detection",
        if pole_ok { 0.0 } else { 1.0 },
        0.5,
        1,
    ));
    checks
}

// ---------------------------------------------------------------------
// geometry
// ---------------------------------------------------------------------

fn geometry_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();

    // Embedded points satisfy the quadratic constraint.
    let mut worst_embed: f64 = 0.0;
    let mut n_embed = 0;
    for k in KappaTriple::all_27() {
        let bp = chart_box(k, Chart::Parallel3);
        let bq = chart_box(k, Chart::Polar3);
        for _ in 0..25 {
            let c = sample_box(&mut rng, &bp);
            let a = embed_parallel(k, &c);
            worst_embed = worst_embed.max((quadratic_form(k, &a, &a) - 1.0).abs());
            let c = sample_box(&mut rng, &bq);
            let a = crate::geometry::charts::embed_polar(k, &c).unwrap();
            worst_embed = worst_embed.max((quadratic_form(k, &a, &a) - 1.0).abs());
            n_embed += 2;
        }
    }
    checks.push(CheckRecord::below(
        "geometry.embed-constraint",
        worst_embed,
        1e-12,
        n_embed,
    ));

    // CK commutator table from Killing-field brackets, all 27 patterns.
    let mut worst_ck: f64 = 0.0;
    for k in KappaTriple::all_27() {
        let fields: Vec<VectorField> = crate::geometry::killing::PAIRS
            .iter()
            .map(|&(a, b)| killing_field(k, a, b).unwrap())
            .collect();
        let table = ck_structure_table(k);
        let pts: Vec<Vec<f64>> = (0..30)
            .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
            .collect();
        worst_ck = worst_ck.max(verify_structure(&fields, &table, &pts).unwrap());
    }
    checks.push(CheckRecord::below(
        "geometry.ck-structure-constants-27",
        worst_ck,
        1e-9,
        27 * 30,
    ));

    // Killing property of the J_ab on the ambient metric.
    let mut worst_killing: f64 = 0.0;
    for k in KappaTriple::nine().map(|(k, _)| k) {
        let g = ambient_metric_field(k);
        for &(a, b) in crate::geometry::killing::PAIRS.iter() {
            let j = killing_field(k, a, b).unwrap();
            let pts: Vec<Vec<f64>> = (0..10)
                .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
                .collect();
            worst_killing =
                worst_killing.max(crate::contact::sasaki::killing_residual(&j, &g, &pts));
        }
    }
    checks.push(CheckRecord::below(
        "geometry.killing-fields-preserve-ambient-metric",
        worst_killing,
        1e-8,
        9 * 6 * 10,
    ));

    // Intrinsic metric vs ambient pullback for k1 != 0.
    let mut worst_pull: f64 = 0.0;
    let mut n_pull = 0;
    for k in KappaTriple::all_27() {
        if k.k1 == 0.0 {
            continue;
        }
        let up = ambient_metric_field(k);
        let pulled =
            crate::calculus::ops::pullback_metric(&embed_parallel_map(k), &up).unwrap();
        let intrinsic = metric_parallel_field(k);
        let bounds = chart_box(k, Chart::Parallel3);
        for _ in 0..15 {
            let c = sample_box(&mut rng, &bounds);
            let a = pulled.matrix(&c);
            let b = intrinsic.matrix(&c);
            for i in 0..3 {
                for j in 0..3 {
                    worst_pull = worst_pull.max((a[i][j] / k.k1 - b[i][j]).abs());
                }
            }
            n_pull += 1;
        }
    }
    checks.push(CheckRecord::below(
        "geometry.metric-equals-ambient-pullback",
        worst_pull,
        1e-9,
        n_pull,
    ));

    // One-parameter subgroups are I_kappa-isometries.
    let patterns = KappaTriple::all_27();
    let mut worst_iso: f64 = 0.0;
    for _ in 0..100 {
        let k = patterns[rng.gen_range(0..patterns.len())];
        let (a, b) = crate::geometry::killing::PAIRS[rng.gen_range(0..6)];
        let s: f64 = rng.gen_range(-2.0..2.0);
        worst_iso = worst_iso.max(group_exp(k, a, b, s).unwrap().isometry_defect(k));
    }
    checks.push(CheckRecord::below(
        "geometry.group-exp-isometry",
        worst_iso,
        1e-12,
        100,
    ));

    // Casimir invariance on the linear Poisson realization.
    let worst_cas = KappaTriple::all_27()
        .into_iter()
        .map(casimir_invariance)
        .fold(0.0f64, f64::max);
    checks.push(CheckRecord::below(
        "geometry.casimir-invariance-27",
        worst_cas,
        1e-10,
        27 * 24,
    ));

    // Chart consistency: embed_polar(polar_from_parallel(c)) = embed_parallel(c).
    let mut worst_round: f64 = 0.0;
    let mut n_round = 0;
    for k in KappaTriple::all_27() {
        let bounds = chart_box(k, Chart::Parallel3);
        while n_round < 100 * (1 + patterns.iter().position(|p| *p == k).unwrap()) {
            let c = sample_box(&mut rng, &bounds);
            let a = embed_parallel(k, &c);
            if a[1].abs() < 0.05 || (a[2].abs() < 0.05 && a[3].abs() < 0.05) {
                n_round += 1;
                continue;
            }
            let pol = polar_from_ambient(k, &a);
            if pol[0] > 0.0 {
                let b = crate::geometry::charts::embed_polar(k, &pol).unwrap();
                worst_round = worst_round.max(max_abs_diff(&a, &b));
            }
            n_round += 1;
        }
    }
    checks.push(CheckRecord::below(
        "geometry.polar-parallel-roundtrip",
        worst_round,
        1e-10,
        n_round,
    ));

    checks
}

// ---------------------------------------------------------------------
// contact
// ---------------------------------------------------------------------

fn contact_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();

    // Reeb axioms on both intrinsic charts of the nine spaces.
    let mut worst_reeb: f64 = 0.0;
    let mut min_density = f64::INFINITY;
    for (k, _) in KappaTriple::nine() {
        for chart in [Chart::Parallel3, Chart::Polar3] {
            let cs = contact_structure(k, chart);
            let bounds = chart_box(k, chart);
            for _ in 0..40 {
                let p = sample_box(&mut rng, &bounds);
                worst_reeb = worst_reeb.max(reeb_axiom_residual(&cs, &p));
                min_density = min_density.min(verify_contact_condition(&cs, &p).abs());
            }
        }
    }
    checks.push(CheckRecord::below(
        "contact.reeb-axioms-nine-spaces",
        worst_reeb,
        1e-10,
        9 * 2 * 40,
    ));
    checks.push(CheckRecord::above(
        "contact.min-density-nonvanishing",
        min_density,
        1e-6,
        9 * 2 * 40,
    ));

    // Table 5: Jacobi brackets of the h_{k,i} close on the printed table.
    let mut worst_jac: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let cs = contact_structure(k, Chart::Parallel3);
        let hs = crate::systems::ck_table6::hamiltonians(k);
        let table = sp4::table_r4(); // Table 5 repeats Table 1 verbatim
        let bounds = chart_box(k, Chart::Parallel3);
        let pts: Vec<Vec<f64>> = (0..50).map(|_| sample_box(&mut rng, &bounds)).collect();
        for p in &pts {
            for i in 0..10 {
                for j in (i + 1)..10 {
                    let b = jacobi_bracket(&cs, &hs[i], &hs[j], p).unwrap();
                    let mut expect = 0.0;
                    for l in 0..10 {
                        let c = table.get(i, j, l);
                        if c != 0.0 {
                            expect += c * hs[l].at(p.as_slice());
                        }
                    }
                    worst_jac = worst_jac.max((b - expect).abs());
                }
            }
        }
    }
    checks.push(CheckRecord::below(
        "contact.table5-jacobi-brackets",
        worst_jac,
        1e-8,
        9 * 50,
    ));

    // Table 6: the printed fields against the pointwise contact solve.
    let mut worst_t6: f64 = 0.0;
    let mut discrepant: Vec<String> = Vec::new();
    for (k, name) in KappaTriple::nine() {
        let cs = contact_structure(k, Chart::Parallel3);
        let hs = crate::systems::ck_table6::hamiltonians(k);
        let xs = crate::systems::ck_table6::fields(k);
        let bounds = chart_box(k, Chart::Parallel3);
        for i in 0..10 {
            let mut worst_entry: f64 = 0.0;
            for _ in 0..20 {
                let p = sample_box(&mut rng, &bounds);
                let solved = contact_hamiltonian_at::<f64>(&cs, &hs[i], &p).unwrap();
                worst_entry = worst_entry.max(max_abs_diff(&solved, &xs[i].at(&p)));
            }
            if worst_entry > 1e-6 {
                discrepant.push(format!("{name}:X{}", i + 1));
            } else {
                worst_t6 = worst_t6.max(worst_entry);
            }
        }
    }
    checks.push(CheckRecord::below(
        "contact.table6-vs-contact-solve",
        worst_t6,
        1e-6,
        9 * 10 * 20,
    ));
    checks.push(CheckRecord::below(
        "contact.table6-discrepancy-count",
        discrepant.len() as f64,
        0.5,
        9 * 10,
    ));

    // h = -eta(X_h) inversion.
    let mut worst_inv: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let cs = contact_structure(k, Chart::Parallel3);
        let hs = crate::systems::ck_table6::hamiltonians(k);
        let bounds = chart_box(k, Chart::Parallel3);
        for i in [0usize, 3, 8] {
            for _ in 0..10 {
                let p = sample_box(&mut rng, &bounds);
                let x = contact_hamiltonian_at::<f64>(&cs, &hs[i], &p).unwrap();
                let ev = cs.eta.at(p.as_slice());
                let pairing: f64 = ev.iter().zip(&x).map(|(a, b)| a * b).sum();
                worst_inv = worst_inv.max((pairing + hs[i].at(p.as_slice())).abs());
            }
        }
    }
    checks.push(CheckRecord::below(
        "contact.hamiltonian-inversion",
        worst_inv,
        1e-10,
        9 * 3 * 10,
    ));

    // Sasakian package on the sphere and AdS.
    let mut worst_sas: f64 = 0.0;
    for k2 in [1.0, -1.0] {
        let acm = sasaki_phi(k2).unwrap();
        let bounds = chart_box(acm.kappa, Chart::Parallel3);
        for _ in 0..40 {
            let p = sample_box(&mut rng, &bounds);
            worst_sas = worst_sas.max(acm.phi_square_defect(&p));
            worst_sas = worst_sas.max(acm.kernel_defect(&p));
            worst_sas = worst_sas.max((acm.reeb_norm(&p) - 1.0).abs());
            let x: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let y: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
            worst_sas = worst_sas.max(acm.compatibility_defect(&p, &x, &y));
        }
    }
    checks.push(CheckRecord::below(
        "contact.sasaki-compatibility",
        worst_sas,
        1e-9,
        2 * 40,
    ));

    // First integrals eta(K) drift along the numerically integrated Reeb
    // flow on S^3 and AdS over t in [0, 10].
    let mut worst_drift: f64 = 0.0;
    for k2 in [1.0, -1.0] {
        let kappa = KappaTriple::new(1.0, k2, 1.0);
        let cs = contact_structure(kappa, Chart::Ambient4);
        let reeb_t = TimeDependentField::new(vec![(
            parse_coeff("1").unwrap(),
            cs.reeb.clone(),
        )])
        .unwrap();
        let integrals: Vec<ScalarField> = [(0, 1), (2, 3), (1, 3), (0, 3)]
            .iter()
            .map(|&(a, b)| {
                eta_pairing_field(&cs.eta, &killing_field(kappa, a, b).unwrap()).unwrap()
            })
            .collect();
        let monitors: Vec<Monitor> = integrals
            .into_iter()
            .enumerate()
            .map(|(i, f)| Monitor {
                name: format!("eta(K{i})"),
                f: Box::new(move |_t, x: &[f64]| f.at(x)),
            })
            .collect();
        let x0 = embed_parallel(kappa, &[0.4, 0.3, -0.5]);
        let traj = integrate(&reeb_t, &x0, 0.0, 10.0, 1e-10, &monitors).unwrap();
        for c in 0..traj.monitor_names.len() {
            worst_drift = worst_drift.max(traj.max_drift(c));
        }
    }
    checks.push(CheckRecord::below(
        "contact.first-integral-drift-sphere-ads",
        worst_drift,
        1e-8,
        2 * 4,
    ));

    // The printed flat / NH / H3 first integrals along their Reeb flows.
    let mut worst_drift2: f64 = 0.0;
    for (id, kappa) in [
        ("liouville-flat", KappaTriple::new(0.0, 1.0, 1.0)),
        ("liouville-flat", KappaTriple::new(0.0, -1.0, 1.0)),
        ("liouville-flat", KappaTriple::new(0.0, 0.0, 1.0)),
        ("liouville-nh", KappaTriple::new(1.0, 0.0, 1.0)),
        ("liouville-nh", KappaTriple::new(-1.0, 0.0, 1.0)),
        ("liouville-h3", KappaTriple::new(-1.0, 1.0, 1.0)),
    ] {
        let d = catalog_get(id, crate::systems::kappa_required(id).then_some(kappa)).unwrap();
        let cs = contact_structure(kappa, Chart::Parallel3);
        let reeb_t =
            TimeDependentField::new(vec![(parse_coeff("1").unwrap(), cs.reeb.clone())]).unwrap();
        let monitors: Vec<Monitor> = d
            .first_integrals
            .iter()
            .map(|(name, f)| {
                let f = f.clone();
                Monitor {
                    name: name.clone(),
                    f: Box::new(move |_t, x: &[f64]| f.at(x)),
                }
            })
            .collect();
        let x0 = [0.2, 0.3, -0.4];
        let traj = integrate(&reeb_t, &x0, 0.0, 10.0, 1e-10, &monitors).unwrap();
        for c in 0..traj.monitor_names.len() {
            worst_drift2 = worst_drift2.max(traj.max_drift(c));
        }
    }
    checks.push(CheckRecord::below(
        "contact.first-integral-drift-flat-nh-h3",
        worst_drift2,
        1e-8,
        6,
    ));

    checks
}

// ---------------------------------------------------------------------
// symplectic
// ---------------------------------------------------------------------

fn symplectic_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();
    let ss = canonical_r4();
    let fields = sp4::fields_r4();
    let hams = sp4::hamiltonians_r4();
    let box4 = [(-2.0, 2.0); 4];

    // Printed field / Hamiltonian pairs against the symplectic solve.
    let mut worst_pair: f64 = 0.0;
    for _ in 0..20 {
        let p = sample_box(&mut rng, &box4);
        for (h, x) in hams.iter().zip(&fields) {
            let solved = hamiltonian_field_at::<f64>(&ss, h, &p).unwrap();
            worst_pair = worst_pair.max(max_abs_diff(&solved, &x.at(&p)));
        }
    }
    checks.push(CheckRecord::below(
        "symplectic.sp4-pair-consistency",
        worst_pair,
        1e-10,
        20 * 10,
    ));

    // Poisson sign convention: {h_i, h_j} = -(Table 1).
    let table = sp4::table_r4();
    let mut worst_poisson: f64 = 0.0;
    for _ in 0..20 {
        let p = sample_box(&mut rng, &box4);
        for i in 0..10 {
            for j in (i + 1)..10 {
                let b = poisson_bracket(&ss, &hams[i], &hams[j], &p).unwrap();
                let mut expect = 0.0;
                for l in 0..10 {
                    expect -= table.get(i, j, l) * hams[l].at(p.as_slice());
                }
                worst_poisson = worst_poisson.max((b - expect).abs());
            }
        }
    }
    checks.push(CheckRecord::below(
        "symplectic.poisson-table-minus-sign",
        worst_poisson,
        1e-10,
        20 * 45,
    ));

    // Scaling homogeneity for the three catalogued scaling examples.
    let samples4: Vec<Vec<f64>> = (0..40).map(|_| sample_box(&mut rng, &box4)).collect();
    let delta4 = radial_scaling_r4();
    let mut worst_hom = homogeneity_check(&delta4.delta, Homogeneous::Two(&ss.omega), 1, &samples4);
    for h in &hams {
        worst_hom = worst_hom.max(homogeneity_check(
            &delta4.delta,
            Homogeneous::Scalar(h),
            1,
            &samples4,
        ));
    }
    for x in &fields {
        worst_hom = worst_hom.max(homogeneity_check(
            &delta4.delta,
            Homogeneous::Field(x),
            0,
            &samples4,
        ));
    }
    // Oscillator in canonical coordinates.
    let osc_ss = canonical_cotangent(Chart::OscCanonical4);
    let osc_samples: Vec<Vec<f64>> = (0..30)
        .map(|_| sample_box(&mut rng, &[(0.2, 1.5); 4]))
        .collect();
    let osc_delta = oscillator::delta_canonical();
    worst_hom = worst_hom.max(homogeneity_check(
        &osc_delta,
        Homogeneous::Two(&osc_ss.omega),
        1,
        &osc_samples,
    ));
    for h in oscillator::hamiltonians_canonical() {
        worst_hom = worst_hom.max(homogeneity_check(
            &osc_delta,
            Homogeneous::Scalar(&h),
            1,
            &osc_samples,
        ));
    }
    // Thermodynamic system upstairs, fiberwise scaling.
    let th_ss = canonical_cotangent(Chart::CotangentR3);
    let th_samples: Vec<Vec<f64>> = (0..30)
        .map(|_| sample_box(&mut rng, &[(-1.5, 1.5); 6]))
        .collect();
    let th_delta = thermo::delta_upstairs();
    worst_hom = worst_hom.max(homogeneity_check(
        &th_delta,
        Homogeneous::Two(&th_ss.omega),
        1,
        &th_samples,
    ));
    for h in thermo::hamiltonians_upstairs() {
        worst_hom = worst_hom.max(homogeneity_check(
            &th_delta,
            Homogeneous::Scalar(&h),
            1,
            &th_samples,
        ));
    }
    checks.push(CheckRecord::below(
        "symplectic.scaling-homogeneity",
        worst_hom,
        1e-10,
        40 + 30 + 30,
    ));

    // omega = -d lambda with lambda = -iota_Delta omega.
    let mut worst_exact: f64 = 0.0;
    let lambda = ss.lambda.clone().unwrap();
    for _ in 0..20 {
        let p = sample_box(&mut rng, &box4);
        let dl = crate::calculus::ops::exterior_d(&lambda, &p);
        let m = ss.omega.matrix(&p);
        for i in 0..4 {
            for j in 0..4 {
                worst_exact = worst_exact.max((m[i][j] + dl[i][j]).abs());
            }
        }
    }
    checks.push(CheckRecord::below(
        "symplectic.omega-equals-minus-d-lambda",
        worst_exact,
        1e-12,
        20,
    ));

    // Reduced oscillator contact form against the printed expression.
    let osc_polar_omega = crate::calculus::ops::pullback_two_form(
        &oscillator::polar_to_canonical(),
        &osc_ss.omega,
    )
    .unwrap();
    let osc_struct = crate::symplectic::SymplecticStructure {
        chart: Chart::OscPhase4,
        omega: osc_polar_omega,
        lambda: None,
    };
    let eta_reduced = reduced_contact_form(
        &osc_struct,
        &oscillator::delta_polar(),
        &oscillator::reduction_section(),
    )
    .unwrap();
    let printed = oscillator::reduced_contact_form_printed();
    let mut worst_osc_eta: f64 = 0.0;
    for _ in 0..30 {
        let p = sample_box(&mut rng, &[(0.4, 1.8), (-1.2, 1.2), (-1.2, 1.2)]);
        worst_osc_eta = worst_osc_eta.max(max_abs_diff(
            &eta_reduced.at(p.as_slice()),
            &printed.at(p.as_slice()),
        ));
    }
    checks.push(CheckRecord::below(
        "symplectic.osc-reduced-contact-form",
        worst_osc_eta,
        1e-12,
        30,
    ));

    // The CK contact forms of Table 2 arise as the scaling reduction
    // through the parallel-chart section for every one of the nine spaces.
    let mut worst_ck_eta: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let eta_red = reduced_contact_form(&ss, &delta4.delta, &embed_parallel_map(k)).unwrap();
        let cs = contact_structure(k, Chart::Parallel3);
        let bounds = chart_box(k, Chart::Parallel3);
        for _ in 0..15 {
            let p = sample_box(&mut rng, &bounds);
            worst_ck_eta = worst_ck_eta.max(max_abs_diff(
                &eta_red.at(p.as_slice()),
                &cs.eta.at(p.as_slice()),
            ));
        }
    }
    checks.push(CheckRecord::below(
        "symplectic.ck-contact-form-from-reduction",
        worst_ck_eta,
        1e-12,
        9 * 15,
    ));

    // Poisson brackets of 1-homogeneous functions are 1-homogeneous.
    let mut worst_bh: f64 = 0.0;
    let pairs = [(0usize, 4usize), (1, 2), (4, 7), (5, 8), (2, 9)];
    let small: Vec<Vec<f64>> = (0..15).map(|_| sample_box(&mut rng, &box4)).collect();
    for (i, j) in pairs {
        let pb = poisson_bracket_field(&ss, &hams[i], &hams[j]).unwrap();
        worst_bh = worst_bh.max(homogeneity_check(
            &delta4.delta,
            Homogeneous::Scalar(&pb),
            1,
            &small,
        ));
    }
    checks.push(CheckRecord::below(
        "symplectic.bracket-preserves-homogeneity",
        worst_bh,
        1e-9,
        15 * pairs.len(),
    ));

    // pi* h = h / F: the reduced Hamiltonians restrict to Table 6.
    let mut worst_red: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let f_field = ScalarField::new(
            Chart::Ambient4,
            evaluator!(4, 1; move |p| vec![quadratic_form(k, p, p)]),
        );
        let probes: Vec<Vec<f64>> = (0..5)
            .map(|_| {
                let c = sample_box(&mut rng, &chart_box(k, Chart::Parallel3));
                embed_parallel(k, &c).to_vec()
            })
            .collect();
        let curved = crate::systems::ck_table6::hamiltonians(k);
        let bounds = chart_box(k, Chart::Parallel3);
        for i in 0..10 {
            let reduced = reduce_hamiltonian(&hams[i], &f_field, &probes).unwrap();
            for _ in 0..10 {
                let c = sample_box(&mut rng, &bounds);
                let a = embed_parallel(k, &c);
                worst_red = worst_red
                    .max((reduced.at(a.as_slice()) - curved[i].at(c.as_slice())).abs());
            }
        }
    }
    checks.push(CheckRecord::below(
        "symplectic.reduced-hamiltonians-match-table6",
        worst_red,
        1e-10,
        9 * 10 * 10,
    ));

    checks
}

// ---------------------------------------------------------------------
// systems
// ---------------------------------------------------------------------

fn systems_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();

    // Criterion: Table 1 from AD brackets at 100 points.
    let pts: Vec<Vec<f64>> = (0..100)
        .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
        .collect();
    let res = verify_structure(&sp4::fields_r4(), &sp4::table_r4(), &pts).unwrap();
    checks.push(CheckRecord::below("systems.table1-sp4-r4", res, 1e-9, 100));

    // Every catalog entry reproduces its own bracket table.
    let entries: Vec<(&str, Option<KappaTriple>)> = vec![
        ("osc2d", None),
        ("thermo", None),
        ("sp4-r4", None),
        ("sp4-s3", None),
        ("sp4-ck", Some(KappaTriple::new(1.0, -1.0, 1.0))),
        ("sp4-ck", Some(KappaTriple::new(-1.0, 1.0, 1.0))),
        ("liouville-s3", None),
        ("liouville-ads", None),
        ("liouville-flat", Some(KappaTriple::new(0.0, 1.0, 1.0))),
        ("liouville-nh", Some(KappaTriple::new(1.0, 0.0, 1.0))),
        ("liouville-h3", None),
    ];
    let mut worst_tables: f64 = 0.0;
    for (id, kappa) in &entries {
        let d = catalog_get(id, *kappa).unwrap();
        let bounds = descriptor_box(&d);
        let pts: Vec<Vec<f64>> = (0..50)
            .map(|_| {
                let mut p = sample_box(&mut rng, &bounds);
                if *id == "sp4-s3" {
                    // Projected fields live on the unit sphere.
                    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt().max(0.3);
                    for v in &mut p {
                        *v /= n;
                    }
                }
                p
            })
            .collect();
        // The sp4-s3 entry stores Table 3 verbatim, including the known
        // misprint in pi_* X_3; brackets that touch that entry are excluded
        // here and accounted for by the discrepancy record below.
        let excluded: &[usize] = if *id == "sp4-s3" { &[2] } else { &[] };
        let res = verify_structure_excluding(&d.basis_fields(), &d.field_table, &pts, excluded);
        worst_tables = worst_tables.max(res);
    }
    checks.push(CheckRecord::below(
        "systems.catalog-bracket-tables(sp4-s3-sans-misprint)",
        worst_tables,
        1e-8,
        entries.len() * 50,
    ));

    // Hamiltonian / field pairing per entry convention.
    let mut worst_pairing: f64 = 0.0;
    for (id, kappa) in &entries {
        let d = catalog_get(id, *kappa).unwrap();
        let bounds = descriptor_box(&d);
        match (d.convention, d.chart) {
            (BracketConvention::Contact, Chart::ThermoAffine5) => {
                let cs = crate::contact::thermo_contact();
                for _ in 0..10 {
                    let p = sample_box(&mut rng, &bounds);
                    for e in &d.basis {
                        let solved =
                            contact_hamiltonian_at::<f64>(&cs, &e.hamiltonian, &p).unwrap();
                        worst_pairing = worst_pairing.max(max_abs_diff(&solved, &e.field.at(&p)));
                    }
                }
            }
            (BracketConvention::Symplectic, chart) => {
                let ss = match chart {
                    Chart::Ambient4 => canonical_r4(),
                    Chart::OscCanonical4 | Chart::CotangentR3 => canonical_cotangent(chart),
                    other => panic!("no symplectic structure for {other:?}"),
                };
                for _ in 0..10 {
                    let p = sample_box(&mut rng, &bounds);
                    for e in &d.basis {
                        let solved = hamiltonian_field_at::<f64>(&ss, &e.hamiltonian, &p).unwrap();
                        worst_pairing = worst_pairing.max(max_abs_diff(&solved, &e.field.at(&p)));
                    }
                }
            }
            (BracketConvention::Contact, Chart::Parallel3) => {
                let cs = contact_structure(d.kappa.unwrap(), Chart::Parallel3);
                for _ in 0..10 {
                    let p = sample_box(&mut rng, &bounds);
                    for e in &d.basis {
                        let solved =
                            contact_hamiltonian_at::<f64>(&cs, &e.hamiltonian, &p).unwrap();
                        worst_pairing = worst_pairing.max(max_abs_diff(&solved, &e.field.at(&p)));
                    }
                }
            }
            (BracketConvention::Contact, Chart::Ambient4) => {
                // sp4-s3: tangency to the sphere plus h = -eta(X).
                let cs = contact_structure(d.kappa.unwrap(), Chart::Ambient4);
                for _ in 0..10 {
                    let mut p = sample_box(&mut rng, &bounds);
                    let n = p.iter().map(|v| v * v).sum::<f64>().sqrt().max(0.1);
                    for v in &mut p {
                        *v /= n;
                    }
                    for e in &d.basis {
                        let x = e.field.at(&p);
                        let radial: f64 = x.iter().zip(&p).map(|(a, b)| a * b).sum();
                        worst_pairing = worst_pairing.max(radial.abs());
                        let ev = cs.eta.at(p.as_slice());
                        let pairing: f64 = ev.iter().zip(&x).map(|(a, b)| a * b).sum();
                        worst_pairing =
                            worst_pairing.max((pairing + e.hamiltonian.at(p.as_slice())).abs());
                    }
                }
            }
            (c, chart) => panic!("unhandled pairing case {c:?} on {chart:?}"),
        }
    }
    checks.push(CheckRecord::below(
        "systems.catalog-hamiltonian-pairings",
        worst_pairing,
        1e-9,
        entries.len() * 10,
    ));

    // Criterion: Table 3 validated against the radial pushforward; the
    // discrepancy list must be exactly the known misprint pi_* X_3.
    let upstairs = sp4::fields_r4();
    let printed = sp4::projected_s3_fields();
    let mut worst_t3: f64 = 0.0;
    let mut discrepant: Vec<usize> = Vec::new();
    for (i, (up, pr)) in upstairs.iter().zip(&printed).enumerate() {
        let mut worst_entry: f64 = 0.0;
        for _ in 0..50 {
            let mut p: Vec<f64> = (0..4).map(|_| rng.gen_range(-1.0f64..1.0)).collect();
            let n = p.iter().map(|v| v * v).sum::<f64>().sqrt();
            if n < 0.1 {
                continue;
            }
            for v in &mut p {
                *v /= n;
            }
            let oracle = sp4::radial_pushforward_at::<f64>(up, &p);
            worst_entry = worst_entry.max(max_abs_diff(&oracle, &pr.at(&p)));
        }
        if worst_entry > 1e-6 {
            discrepant.push(i + 1);
        } else {
            worst_t3 = worst_t3.max(worst_entry);
        }
    }
    checks.push(CheckRecord::below(
        "systems.table3-vs-pushforward(validated-entries)",
        worst_t3,
        1e-6,
        10 * 50,
    ));
    checks.push(CheckRecord::below(
        "systems.table3-discrepancies-equal-known-misprint-x3",
        if discrepant == vec![3] { 0.0 } else { 1.0 },
        0.5,
        10,
    ));

    // sp4-ck flow in the ambient realization preserves the constraint.
    let mut worst_const: f64 = 0.0;
    for kappa in [
        KappaTriple::new(1.0, 1.0, 1.0),
        KappaTriple::new(-1.0, 1.0, 1.0),
        KappaTriple::new(1.0, -1.0, 1.0),
    ] {
        let traj = sp4ck_ambient_trajectory(kappa, 10.0, 1e-10).unwrap();
        worst_const = worst_const.max(traj.max_drift(0));
    }
    checks.push(CheckRecord::below(
        "systems.sp4ck-constraint-drift",
        worst_const,
        1e-6,
        3,
    ));

    // NH quadratic invariant at 1000 points (machine precision), plus the
    // record that the printed Casimir expression does not vanish.
    let d = catalog_get("liouville-nh", Some(KappaTriple::new(1.0, 0.0, 1.0))).unwrap();
    let h = &d.first_integrals;
    let mut worst_nh: f64 = 0.0;
    let mut printed_min: f64 = f64::INFINITY;
    let mut printed_max: f64 = 0.0;
    for _ in 0..1000 {
        let p = sample_box(&mut rng, &[(-1.5, 1.5); 3]);
        let h4 = h[0].1.at(p.as_slice());
        let h7 = h[1].1.at(p.as_slice());
        let h10 = h[2].1.at(p.as_slice());
        worst_nh = worst_nh.max((4.0 * h7 * h10 - h4 * h4).abs());
        let printed = (h4 * h10 - h4 * h4).abs();
        printed_min = printed_min.min(printed);
        printed_max = printed_max.max(printed);
    }
    checks.push(CheckRecord::below(
        "systems.nh-invariant-4h7h10-minus-h4sq",
        worst_nh,
        1e-12,
        1000,
    ));
    checks.push(CheckRecord::above(
        "systems.nh-printed-casimir-nonvanishing(suspected-typo)",
        printed_max,
        1e-3,
        1000,
    ));

    // Liouville detection across the catalog, with a negative control.
    let mut liouville_ok = true;
    for (id, kappa) in [
        ("liouville-s3", None),
        ("liouville-ads", None),
        ("liouville-flat", Some(KappaTriple::new(0.0, 0.0, 1.0))),
        ("liouville-nh", Some(KappaTriple::new(-1.0, 0.0, 1.0))),
        ("liouville-h3", None),
    ] {
        let d = catalog_get(id, kappa).unwrap();
        let k = d.kappa.unwrap();
        let cs = contact_structure(k, Chart::Parallel3);
        let bounds = chart_box(k, Chart::Parallel3);
        let pts: Vec<Vec<f64>> = (0..30).map(|_| sample_box(&mut rng, &bounds)).collect();
        for e in &d.basis {
            let (ok, _) = crate::contact::is_liouville(&cs, &e.hamiltonian, &pts);
            liouville_ok &= ok;
        }
    }
    {
        // h_{k,1} on the sphere is not a first integral of the Reeb field.
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let cs = contact_structure(k, Chart::Parallel3);
        let bounds = chart_box(k, Chart::Parallel3);
        let pts: Vec<Vec<f64>> = (0..30).map(|_| sample_box(&mut rng, &bounds)).collect();
        let h1 = &crate::systems::ck_table6::hamiltonians(k)[0];
        liouville_ok &= !crate::contact::is_liouville(&cs, h1, &pts).0;
    }
    checks.push(CheckRecord::below(
        "systems.liouville-detection",
        if liouville_ok { 0.0 } else { 1.0 },
        0.5,
        5 * 30,
    ));

    // Autonomous oscillator preserves its Hamiltonian.
    {
        let d = catalog_get("osc2d", None).unwrap();
        let mut coeffs = std::collections::BTreeMap::new();
        coeffs.insert("b1".to_string(), parse_coeff("1").unwrap());
        coeffs.insert("b3".to_string(), parse_coeff("1").unwrap());
        let f = instantiate(&d, &coeffs).unwrap();
        let h1 = oscillator::hamiltonians_canonical().remove(0);
        let h3 = oscillator::hamiltonians_canonical().remove(2);
        let energy = Monitor {
            name: "h".into(),
            f: Box::new(move |_t, x: &[f64]| h1.at(x) + h3.at(x)),
        };
        let traj = integrate(&f, &[1.0, 0.0, 0.0, 0.0], 0.0, 10.0, 1e-12, &[energy]).unwrap();
        checks.push(CheckRecord::below(
            "systems.osc2d-energy-drift",
            traj.max_drift(0),
            1e-8,
            traj.samples.len(),
        ));
    }

    // Thermodynamic Riccati flow: T(1) = 1/2 from T(0) = 1 under b2 = 1.
    {
        let d = catalog_get("thermo", None).unwrap();
        let f = instantiate(&d, &d.preset_coefficients()).unwrap();
        let traj = integrate(&f, &[0.0, 0.0, 0.0, 1.0, 0.0], 0.0, 1.0, 1e-10, &[]).unwrap();
        checks.push(CheckRecord::below(
            "systems.thermo-riccati-closed-form",
            (traj.final_state()[3] - 0.5).abs(),
            1e-8,
            traj.samples.len(),
        ));
    }

    checks
}

/// verify_structure with an exclusion list: pairs whose members or whose
/// expected bracket image touch an excluded basis index are skipped.
fn verify_structure_excluding(
    fields: &[VectorField],
    table: &crate::calculus::fields::StructureTable,
    points: &[Vec<f64>],
    excluded: &[usize],
) -> f64 {
    let mut worst: f64 = 0.0;
    for p in points {
        for i in 0..fields.len() {
            for j in (i + 1)..fields.len() {
                if excluded.contains(&i) || excluded.contains(&j) {
                    continue;
                }
                if excluded.iter().any(|&k| table.get(i, j, k) != 0.0) {
                    continue;
                }
                let br = lie_bracket(&fields[i], &fields[j], p).unwrap();
                let mut expect = vec![0.0; p.len()];
                for k in 0..fields.len() {
                    let c = table.get(i, j, k);
                    if c != 0.0 {
                        for (e, v) in expect.iter_mut().zip(fields[k].at(p)) {
                            *e += c * v;
                        }
                    }
                }
                worst = worst.max(max_abs_diff(&br, &expect));
            }
        }
    }
    worst
}

fn descriptor_box(d: &crate::systems::SystemDescriptor) -> Vec<(f64, f64)> {
    match (d.chart, d.kappa) {
        (Chart::Parallel3, Some(k)) => chart_box(k, Chart::Parallel3),
        (Chart::Ambient4, _) => vec![(-2.0, 2.0); 4],
        (Chart::OscCanonical4, _) => vec![(0.2, 1.5); 4],
        (chart, _) => vec![(-1.5, 1.5); chart.dim()],
    }
}

/// Constraint-monitored sp4-ck trajectory in the ambient realization, with
/// the preset coefficients.
pub fn sp4ck_ambient_trajectory(
    kappa: KappaTriple,
    t1: f64,
    tol: f64,
) -> Result<crate::calculus::integrate::Trajectory> {
    let d = catalog_get("sp4-ck", Some(kappa))?;
    let rhs = crate::systems::sp4ck_ambient_rhs(kappa, &d.preset_coefficients())?;
    let x0 = embed_parallel(kappa, &[0.3, 0.2, -0.4]);
    let monitor = Monitor {
        name: "I_kappa".into(),
        f: Box::new(move |_t, a: &[f64]| quadratic_form(kappa, a, a)),
    };
    crate::calculus::integrate::integrate_fn(
        &rhs,
        Chart::Ambient4,
        &x0,
        0.0,
        t1,
        tol,
        &[monitor],
    )
}

// ---------------------------------------------------------------------
// fibration
// ---------------------------------------------------------------------

fn fibration_suite(mut rng: ChaCha12Rng) -> Vec<CheckRecord> {
    let mut checks = Vec::new();

    // Closed-form Reeb flow vs numerical integration of R_kappa.
    let mut worst_flow: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let cs = contact_structure(k, Chart::Ambient4);
        let reeb_t =
            TimeDependentField::new(vec![(parse_coeff("1").unwrap(), cs.reeb.clone())]).unwrap();
        let x0 = embed_parallel(k, &[0.3, 0.25, -0.35]);
        let traj = integrate(&reeb_t, &x0, 0.0, 5.0, 1e-10, &[]).unwrap();
        for s in &traj.samples {
            let closed = reeb_flow(k, &x0, s.t);
            worst_flow = worst_flow.max(max_abs_diff(&closed, &s.state));
        }
    }
    checks.push(CheckRecord::below(
        "fibration.reeb-flow-vs-integration",
        worst_flow,
        1e-7,
        9,
    ));

    // Reeb orbits are geodesics: finite-difference acceleration against
    // the connection coefficients in the polar chart.
    let mut worst_geo: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let bounds = chart_box(k, Chart::Polar3);
        for _ in 0..8 {
            let c = sample_box(&mut rng, &bounds);
            let x = crate::geometry::charts::embed_polar(k, &c).unwrap();
            let h = 5e-4;
            let pol = |t: f64| polar_from_ambient(k, &reeb_flow(k, &x, t));
            let (pm, p0, pp) = (pol(-h), pol(0.0), pol(h));
            let vel: Vec<f64> = (0..3).map(|i| (pp[i] - pm[i]) / (2.0 * h)).collect();
            let acc: Vec<f64> = (0..3)
                .map(|i| (pp[i] - 2.0 * p0[i] + pm[i]) / (h * h))
                .collect();
            let conn = connection_polar(k, &p0).unwrap();
            worst_geo = worst_geo.max(conn.geodesic_residual(&acc, &vel));
        }
    }
    checks.push(CheckRecord::below(
        "fibration.reeb-flow-geodesic",
        worst_geo,
        1e-6,
        9 * 8,
    ));

    // Fiber invariance of the eight regular bundles.
    let mut worst_fiber: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let Ok(fib) = fibration(k) else { continue };
        let bounds = chart_box(k, Chart::Parallel3);
        let times: Vec<f64> = (1..=20).map(|i| 0.25 * i as f64).collect();
        for _ in 0..10 {
            let c = sample_box(&mut rng, &bounds);
            let p = embed_parallel(k, &c);
            worst_fiber = worst_fiber
                .max(crate::fibration::fiber_invariance_residual(&fib, &p, &times));
        }
    }
    checks.push(CheckRecord::below(
        "fibration.fiber-invariance",
        worst_fiber,
        1e-9,
        8 * 10 * 20,
    ));

    // Periodicity of the compact fibers, injectivity of the R-fibers.
    let mut worst_per: f64 = 0.0;
    let mut min_disp = f64::INFINITY;
    for (k, _) in KappaTriple::nine() {
        let c = sample_box(&mut rng, &chart_box(k, Chart::Parallel3));
        let p = embed_parallel(k, &c);
        if k.k1 == 1.0 && k.k2.abs() == 1.0 {
            let moved = reeb_flow(k, &p, std::f64::consts::PI);
            worst_per = worst_per.max(max_abs_diff(&moved, &p));
        }
        if k.k1 <= 0.0 && (k.k1, k.k2) != (-1.0, -1.0) {
            for i in 1..=25 {
                let t = 0.2 * i as f64;
                let moved = reeb_flow(k, &p, t);
                min_disp = min_disp.min(max_abs_diff(&moved, &p));
            }
        }
    }
    checks.push(CheckRecord::below(
        "fibration.compact-fiber-periodicity",
        worst_per,
        1e-9,
        2,
    ));
    checks.push(CheckRecord::above(
        "fibration.noncompact-fiber-injectivity",
        min_disp,
        0.05,
        5 * 25,
    ));

    // Pullback identity pi* omega = d eta on the five regular families.
    let mut worst_pull: f64 = 0.0;
    for (k, _) in KappaTriple::nine() {
        let Ok(fib) = fibration(k) else { continue };
        let cs = contact_structure(k, Chart::Ambient4);
        let bounds = chart_box(k, Chart::Parallel3);
        for _ in 0..20 {
            let c = sample_box(&mut rng, &bounds);
            let p = embed_parallel(k, &c);
            let basis = crate::contact::tangent_basis(k, &p);
            let mix = |rng: &mut ChaCha12Rng| -> Vec<f64> {
                let w: Vec<f64> = (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect();
                (0..4)
                    .map(|i| (0..3).map(|j| w[j] * basis[j][i]).sum())
                    .collect()
            };
            let v = mix(&mut rng);
            let w = mix(&mut rng);
            worst_pull = worst_pull.max(verify_pullback(&fib, &cs, &p, &v, &w));
        }
    }
    checks.push(CheckRecord::below(
        "fibration.pullback-identity",
        worst_pull,
        1e-9,
        8 * 20,
    ));
    checks.push(CheckRecord::below(
        "fibration.de-sitter-not-regular",
        if matches!(
            fibration(KappaTriple::new(-1.0, -1.0, 1.0)),
            Err(crate::error::CkError::NotRegular)
        ) {
            0.0
        } else {
            1.0
        },
        0.5,
        1,
    ));

    // Upstairs-vs-downstairs flow commutation for the catalogued
    // reductions.
    for (name, residual) in reduction_commutation_records(5.0, 1e-10) {
        checks.push(CheckRecord::below(name, residual, 1e-6, 100));
    }

    checks
}

/// The five reduction commutation checks of the acceptance gate plus the
/// hyperbolic bonus case; returns (check name, sup residual).
pub fn reduction_commutation_records(t1: f64, tol: f64) -> Vec<(String, f64)> {
    let mut out = Vec::new();

    // (a) Oscillator scaling reduction through the polar chart.
    {
        let omega2 = parse_coeff("(1 + 0.5*sin(t)) * (1 + 0.5*sin(t))").unwrap();
        let one = parse_coeff("1").unwrap();
        let polar = oscillator::fields_polar();
        let up = TimeDependentField::new(vec![
            (one.clone(), polar[0].clone()),
            (omega2.clone(), polar[2].clone()),
        ])
        .unwrap();
        let reduced = oscillator::fields_reduced();
        let down = TimeDependentField::new(vec![
            (one, reduced[0].clone()),
            (omega2, reduced[2].clone()),
        ])
        .unwrap();
        let project = |s: &[f64]| vec![s[2], s[1], s[3]];
        let embed = |s: &[f64]| s.to_vec();
        let res = commutation_check(&up, &down, &project, &embed, &[1.3, 0.4, 0.8, -0.2], t1, tol)
            .expect("oscillator reduction integrates");
        out.push(("fibration.commutation-osc2d".to_string(), res));
    }

    // (b)-(e) + hyperbolic: the Liouville entries through their bundles.
    for (id, kappa, x0) in [
        (
            "liouville-s3",
            KappaTriple::new(1.0, 1.0, 1.0),
            [0.4, 0.3, -0.2],
        ),
        (
            "liouville-ads",
            KappaTriple::new(1.0, -1.0, 1.0),
            [0.4, 0.3, -0.2],
        ),
        (
            "liouville-flat",
            KappaTriple::new(0.0, 1.0, 1.0),
            [0.3, 0.5, -0.4],
        ),
        (
            "liouville-nh",
            KappaTriple::new(1.0, 0.0, 1.0),
            [0.3, 0.5, -0.4],
        ),
        (
            "liouville-h3",
            KappaTriple::new(-1.0, 1.0, 1.0),
            [0.3, 0.4, -0.3],
        ),
    ] {
        let d = catalog_get(id, crate::systems::kappa_required(id).then_some(kappa)).unwrap();
        let fib = fibration(kappa).unwrap();
        let down_desc = project_system(&d, &fib).unwrap();
        let coeffs = d.preset_coefficients();
        let up = instantiate(&d, &coeffs).unwrap();
        let down = instantiate(&down_desc, &coeffs).unwrap();
        let fib2 = fibration(kappa).unwrap();
        let chart = down_desc.chart;
        let project = move |s: &[f64]| -> Vec<f64> {
            let amb = embed_parallel(kappa, s);
            downstairs_coords(&fib2, chart, &amb)
        };
        let embed = move |s: &[f64]| embed_downstairs(chart, s);
        let res = commutation_check(&up, &down, &project, &embed, &x0, t1, tol)
            .expect("reduction integrates");
        out.push((format!("fibration.commutation-{id}"), res));
    }
    out
}
