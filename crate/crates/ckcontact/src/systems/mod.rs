//! The catalog of concrete systems: geometry, basis fields, Hamiltonians,
//! reference bracket tables and reproducible coefficient presets.

pub mod ck_table6;
pub mod liouville;
pub mod oscillator;
pub mod sp4;
pub mod thermo;

use std::collections::BTreeMap;

use crate::calculus::fields::{
    Chart, ScalarField, StructureTable, TimeDependentField, VectorField,
};
use crate::calculus::parse::{parse_coeff, CoefficientExpr};
use crate::error::{CkError, Result};
use crate::geometry::KappaTriple;

/// One basis element: coefficient id, vector field, paired Hamiltonian.
pub struct BasisEntry {
    pub id: String,
    pub field: VectorField,
    pub hamiltonian: ScalarField,
}

/// How the Hamiltonian-function bracket table relates to the field table:
/// identical for contact systems (f -> X_f is an isomorphism), negated for
/// symplectic Lie-Hamilton pairs (f -> -X_f is the isomorphism).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BracketConvention {
    Contact,
    Symplectic,
}

/// A fully populated catalog entry.
pub struct SystemDescriptor {
    pub id: String,
    pub kappa: Option<KappaTriple>,
    pub chart: Chart,
    /// Lie-Hamilton class label of the reduction, where the catalog knows it.
    pub class_label: Option<&'static str>,
    pub basis: Vec<BasisEntry>,
    pub field_table: StructureTable,
    pub convention: BracketConvention,
    /// Reproducible coefficient presets (id, expression source).
    pub presets: Vec<(&'static str, &'static str)>,
    pub first_integrals: Vec<(String, ScalarField)>,
    pub liouville: bool,
}

impl SystemDescriptor {
    pub fn basis_fields(&self) -> Vec<VectorField> {
        self.basis.iter().map(|b| b.field.clone()).collect()
    }

    pub fn coefficient_ids(&self) -> Vec<&str> {
        self.basis.iter().map(|b| b.id.as_str()).collect()
    }

    pub fn preset_coefficients(&self) -> BTreeMap<String, CoefficientExpr> {
        self.presets
            .iter()
            .map(|(id, src)| ((*id).to_string(), parse_coeff(src).expect("preset parses")))
            .collect()
    }
}

pub const CATALOG_IDS: [&str; 10] = [
    "liouville-ads",
    "liouville-flat",
    "liouville-h3",
    "liouville-nh",
    "liouville-s3",
    "osc2d",
    "sp4-ck",
    "sp4-r4",
    "sp4-s3",
    "thermo",
];

/// Whether an id needs an explicit kappa triple.
pub fn kappa_required(id: &str) -> bool {
    matches!(id, "sp4-ck" | "liouville-flat" | "liouville-nh")
}

fn named(ids: &[&str], fields: Vec<VectorField>, hams: Vec<ScalarField>) -> Vec<BasisEntry> {
    ids.iter()
        .zip(fields)
        .zip(hams)
        .map(|((id, field), hamiltonian)| BasisEntry {
            id: (*id).to_string(),
            field,
            hamiltonian,
        })
        .collect()
}

/// Look up a catalog entry; kappa-parametric entries validate the supplied
/// triple against their family pattern.
pub fn catalog_get(id: &str, kappa: Option<KappaTriple>) -> Result<SystemDescriptor> {
    match id {
        "osc2d" => {
            if kappa.is_some() {
                return Err(CkError::Domain("osc2d carries no kappa parameters".into()));
            }
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: None,
                chart: Chart::OscCanonical4,
                class_label: None,
                basis: named(
                    &["b1", "b2", "b3"],
                    oscillator::fields_canonical(),
                    oscillator::hamiltonians_canonical(),
                ),
                field_table: oscillator::table(),
                convention: BracketConvention::Symplectic,
                presets: vec![
                    ("b1", "1"),
                    ("b3", "(1 + 0.5*sin(t)) * (1 + 0.5*sin(t))"),
                ],
                first_integrals: vec![],
                liouville: false,
            })
        }
        "thermo" => {
            if kappa.is_some() {
                return Err(CkError::Domain("thermo carries no kappa parameters".into()));
            }
            let ids = ["b1", "b2", "b3", "b4", "b5", "b6", "b7", "b8", "b9"];
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: None,
                chart: Chart::ThermoAffine5,
                class_label: None,
                basis: named(&ids, thermo::fields_affine(), thermo::hamiltonians_affine()),
                field_table: thermo::table_fields(),
                convention: BracketConvention::Contact,
                presets: vec![("b2", "1")],
                first_integrals: vec![],
                liouville: false,
            })
        }
        "sp4-r4" => {
            if kappa.is_some() {
                return Err(CkError::Domain(
                    "sp4-r4 lives on flat R^4; it carries no kappa parameters".into(),
                ));
            }
            let ids: Vec<String> = (1..=10).map(|i| format!("b{i}")).collect();
            let idrefs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: None,
                chart: Chart::Ambient4,
                class_label: None,
                basis: named(&idrefs, sp4::fields_r4(), sp4::hamiltonians_r4()),
                field_table: sp4::table_r4(),
                convention: BracketConvention::Symplectic,
                presets: vec![
                    ("b1", "0.2"),
                    ("b2", "0.1*sin(t)"),
                    ("b5", "1"),
                    ("b8", "0.5*cos(t)"),
                ],
                first_integrals: vec![],
                liouville: false,
            })
        }
        "sp4-s3" => {
            if kappa.is_some() {
                return Err(CkError::Domain(
                    "sp4-s3 is the round-sphere entry; it carries no kappa parameters".into(),
                ));
            }
            let ids: Vec<String> = (1..=10).map(|i| format!("b{i}")).collect();
            let idrefs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(KappaTriple::new(1.0, 1.0, 1.0)),
                chart: Chart::Ambient4,
                class_label: None,
                basis: named(&idrefs, sp4::projected_s3_fields(), sp4::hamiltonians_r4()),
                field_table: sp4::table_r4(),
                convention: BracketConvention::Contact,
                presets: vec![("b2", "0.3*sin(t)"), ("b5", "1"), ("b7", "0.5")],
                first_integrals: vec![],
                liouville: false,
            })
        }
        "sp4-ck" => {
            let kappa = kappa.ok_or_else(|| CkError::KappaRequired(id.into()))?;
            let ids: Vec<String> = (1..=10).map(|i| format!("b{i}")).collect();
            let idrefs: Vec<&str> = ids.iter().map(|s| s.as_str()).collect();
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(kappa),
                chart: Chart::Parallel3,
                class_label: None,
                basis: named(&idrefs, ck_table6::fields(kappa), ck_table6::hamiltonians(kappa)),
                field_table: sp4::table_r4(),
                convention: BracketConvention::Contact,
                presets: vec![
                    ("b2", "0.3*sin(t)"),
                    ("b5", "1"),
                    ("b7", "0.5"),
                    ("b9", "0.2*cos(t)"),
                    ("b10", "0.4"),
                ],
                first_integrals: vec![],
                liouville: false,
            })
        }
        "liouville-s3" | "liouville-ads" => {
            let k2 = if id == "liouville-s3" { 1.0 } else { -1.0 };
            let fixed = KappaTriple::new(1.0, k2, 1.0);
            if let Some(k) = kappa {
                if k != fixed {
                    return Err(CkError::Domain(format!(
                        "{id} is fixed at kappa = ({}, {}, {})",
                        fixed.k1, fixed.k2, fixed.k3
                    )));
                }
            }
            let hams = liouville::sphere_ads_hamiltonians(k2);
            let names = ["h1'", "h2'", "h3'", "h4'"];
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(fixed),
                chart: Chart::Parallel3,
                class_label: Some("P1"),
                basis: named(
                    &["a1", "a2", "a3", "a4"],
                    liouville::sphere_ads_fields(k2),
                    hams.clone(),
                ),
                field_table: liouville::sphere_ads_table(k2),
                convention: BracketConvention::Contact,
                presets: vec![
                    ("a1", "1"),
                    ("a2", "0.3"),
                    ("a3", "0.2*sin(t)"),
                    ("a4", "0.5"),
                ],
                first_integrals: names
                    .iter()
                    .map(|n| n.to_string())
                    .zip(hams)
                    .collect(),
                liouville: true,
            })
        }
        "liouville-flat" => {
            let kappa = kappa.ok_or_else(|| CkError::KappaRequired(id.into()))?;
            if kappa.k1 != 0.0 || kappa.k3 != 1.0 {
                return Err(CkError::Domain(format!(
                    "liouville-flat needs kappa = (0, k2, 1); got ({}, {}, {})",
                    kappa.k1, kappa.k2, kappa.k3
                )));
            }
            let hams = liouville::flat_hamiltonians();
            let names = ["h2", "h4", "h5", "h6", "h7", "h10"];
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(kappa),
                chart: Chart::Parallel3,
                class_label: Some("P5"),
                basis: named(
                    &["b2", "b4", "b5", "b6", "b7", "b10"],
                    liouville::flat_fields(),
                    hams.clone(),
                ),
                field_table: liouville::flat_table(),
                convention: BracketConvention::Contact,
                presets: vec![
                    ("b2", "1"),
                    ("b4", "0.5*sin(t)"),
                    ("b5", "0.3"),
                    ("b6", "0.4"),
                    ("b7", "0.2"),
                    ("b10", "0.6"),
                ],
                first_integrals: names.iter().map(|n| n.to_string()).zip(hams).collect(),
                liouville: true,
            })
        }
        "liouville-nh" => {
            let kappa = kappa.ok_or_else(|| CkError::KappaRequired(id.into()))?;
            if kappa.k1.abs() != 1.0 || kappa.k2 != 0.0 || kappa.k3 != 1.0 {
                return Err(CkError::Domain(format!(
                    "liouville-nh needs kappa = (+-1, 0, 1); got ({}, {}, {})",
                    kappa.k1, kappa.k2, kappa.k3
                )));
            }
            let hams = liouville::nh_hamiltonians();
            let names = ["h4", "h7", "h10", "h5+k1*h8"];
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(kappa),
                chart: Chart::Parallel3,
                class_label: Some("I5"),
                basis: named(
                    &["b4", "b7", "b10", "b5"],
                    liouville::nh_fields(),
                    hams.clone(),
                ),
                field_table: liouville::nh_table(),
                convention: BracketConvention::Contact,
                presets: vec![
                    ("b4", "0.4"),
                    ("b7", "1"),
                    ("b10", "0.5*cos(t)"),
                    ("b5", "0.3"),
                ],
                first_integrals: names.iter().map(|n| n.to_string()).zip(hams).collect(),
                liouville: true,
            })
        }
        "liouville-h3" => {
            let fixed = KappaTriple::new(-1.0, 1.0, 1.0);
            if let Some(k) = kappa {
                if k != fixed {
                    return Err(CkError::Domain(
                        "liouville-h3 is fixed at kappa = (-1, 1, 1)".into(),
                    ));
                }
            }
            let hams = liouville::h3_hamiltonians();
            let names = ["h5-h8", "h7+h10"];
            Ok(SystemDescriptor {
                id: id.into(),
                kappa: Some(fixed),
                chart: Chart::Parallel3,
                class_label: Some("I1"),
                basis: named(&["b5", "b7"], liouville::h3_fields(), hams.clone()),
                field_table: liouville::h3_table(),
                convention: BracketConvention::Contact,
                presets: vec![("b5", "1"), ("b7", "0.5*sin(t)")],
                first_integrals: names.iter().map(|n| n.to_string()).zip(hams).collect(),
                liouville: true,
            })
        }
        other => Err(CkError::UnknownSystem(other.into())),
    }
}

/// Build the time-dependent field sum_i b_i(t) X_i; ids must name basis
/// elements, missing ids default to the zero coefficient.
pub fn instantiate(
    d: &SystemDescriptor,
    coeffs: &BTreeMap<String, CoefficientExpr>,
) -> Result<TimeDependentField> {
    let known: Vec<&str> = d.coefficient_ids();
    for id in coeffs.keys() {
        if !known.contains(&id.as_str()) {
            return Err(CkError::UnknownCoefficient(id.clone()));
        }
    }
    let mut terms = Vec::new();
    for entry in &d.basis {
        if let Some(c) = coeffs.get(&entry.id) {
            terms.push((c.clone(), entry.field.clone()));
        }
    }
    if terms.is_empty() {
        // All-zero coefficient choice: keep the chart, carry a zero term.
        terms.push((
            parse_coeff("0").expect("literal zero parses"),
            VectorField::zero(d.chart),
        ));
    }
    TimeDependentField::new(terms)
}

/// The printed first-integral set of an entry.
pub fn known_first_integrals(d: &SystemDescriptor) -> &[(String, ScalarField)] {
    &d.first_integrals
}

/// The sp4-ck flow carried in Weierstrass coordinates: the parallel-chart
/// state is recovered from the ambient one, the Table 6 combination is
/// evaluated there and pushed through the embedding differential. The
/// returned right-hand side is tangent to Sigma_kappa, so constraint drift
/// along it genuinely measures integrator quality.
pub fn sp4ck_ambient_rhs(
    kappa: KappaTriple,
    coeffs: &BTreeMap<String, CoefficientExpr>,
) -> Result<impl Fn(f64, &[f64]) -> Vec<f64> + Send + Sync> {
    use crate::ad::DiffScalar;
    let d = catalog_get("sp4-ck", Some(kappa))?;
    let parallel = instantiate(&d, coeffs)?;
    let embed = crate::geometry::charts::embed_parallel_map(kappa);
    Ok(move |t: f64, a: &[f64]| -> Vec<f64> {
        let c = crate::geometry::charts::parallel_from_ambient(kappa, a);
        let v = parallel.at(t, &c);
        let (_, jac) = f64::jacobian(&embed.eval, &c);
        (0..4)
            .map(|i| (0..3).map(|j| jac[i][j] * v[j]).sum())
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::integrate::integrate;

    #[test]
    fn catalog_basis_counts() {
        assert_eq!(catalog_get("sp4-r4", None).unwrap().basis.len(), 10);
        assert_eq!(
            catalog_get("liouville-flat", Some(KappaTriple::new(0.0, 1.0, 1.0)))
                .unwrap()
                .basis
                .len(),
            6
        );
        assert_eq!(catalog_get("thermo", None).unwrap().basis.len(), 9);
        assert_eq!(
            catalog_get("liouville-h3", None).unwrap().basis.len(),
            2
        );
    }

    #[test]
    fn unknown_system_and_missing_kappa() {
        assert!(matches!(
            catalog_get("bogus", None),
            Err(CkError::UnknownSystem(_))
        ));
        assert!(matches!(
            catalog_get("sp4-ck", None),
            Err(CkError::KappaRequired(_))
        ));
        assert!(matches!(
            catalog_get("liouville-nh", Some(KappaTriple::new(0.0, 0.0, 1.0))),
            Err(CkError::Domain(_))
        ));
    }

    #[test]
    fn instantiate_rejects_unknown_ids_and_defaults_to_zero() {
        let d = catalog_get("osc2d", None).unwrap();
        let mut coeffs = BTreeMap::new();
        coeffs.insert("b9".to_string(), parse_coeff("1").unwrap());
        assert!(matches!(
            instantiate(&d, &coeffs),
            Err(CkError::UnknownCoefficient(_))
        ));

        let zero = instantiate(&d, &BTreeMap::new()).unwrap();
        let v = zero.at(0.3, &[1.0, 2.0, 3.0, 4.0]);
        assert!(v.iter().all(|x| *x == 0.0));
    }

    #[test]
    fn thermo_riccati_flow() {
        // Only b2 = 1: dT/dt = -T^2, so T(1) = 1/2 from T(0) = 1.
        let d = catalog_get("thermo", None).unwrap();
        let coeffs = d.preset_coefficients();
        let f = instantiate(&d, &coeffs).unwrap();
        let x0 = [0.0, 0.0, 0.0, 1.0, 0.0];
        let traj = integrate(&f, &x0, 0.0, 1.0, 1e-10, &[]).unwrap();
        let t_final = traj.final_state()[3];
        assert!((t_final - 0.5).abs() < 1e-8, "T(1) = {t_final}");
    }

    #[test]
    fn osc2d_preset_reproduces_the_linear_system() {
        let d = catalog_get("osc2d", None).unwrap();
        let coeffs = d.preset_coefficients();
        let f = instantiate(&d, &coeffs).unwrap();
        let t: f64 = 0.9;
        let omega2 = {
            let w = 1.0 + 0.5 * t.sin();
            w * w
        };
        let p = [0.3, -0.7, 1.1, 0.4];
        let got = f.at(t, &p);
        let expect = [p[2], p[3], -omega2 * p[0], -omega2 * p[1]];
        for (a, b) in got.iter().zip(expect) {
            assert!((a - b).abs() < 1e-14);
        }
    }
}
