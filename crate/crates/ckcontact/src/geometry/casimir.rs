//! Casimir invariance on the linear Poisson realization of the dual space.
//!
//! The CK structure constants induce a linear Poisson bracket on functions
//! of the momentum coordinates m_ab dual to J_ab:
//!   {f, g}(m) = sum_{i,j,k} c_ij^k m_k (d f / d m_i)(d g / d m_j).
//! The graded contractions of the second-order Casimirs must commute with
//! every coordinate function under this bracket, for every kappa.

use crate::calculus::fields::StructureTable;
use crate::geometry::killing::ck_structure_table;
use crate::geometry::KappaTriple;

/// Gradient of the first Casimir
/// C1 = k2 k3 m01^2 + k3 m02^2 + m03^2 + k1 k3 m12^2 + k1 m13^2 + k1 k2 m23^2.
fn grad_c1(kappa: KappaTriple, m: &[f64; 6]) -> [f64; 6] {
    let (k1, k2, k3) = (kappa.k1, kappa.k2, kappa.k3);
    [
        2.0 * k2 * k3 * m[0],
        2.0 * k3 * m[1],
        2.0 * m[2],
        2.0 * k1 * k3 * m[3],
        2.0 * k1 * m[4],
        2.0 * k1 * k2 * m[5],
    ]
}

/// Gradient of the second Casimir C2 = k2 m01 m23 - m02 m13 + m03 m12.
fn grad_c2(kappa: KappaTriple, m: &[f64; 6]) -> [f64; 6] {
    let k2 = kappa.k2;
    [k2 * m[5], -m[4], m[3], m[2], -m[1], k2 * m[0]]
}

/// {f, m_j} for a function with gradient `df` at the point `m`.
fn bracket_with_coordinate(table: &StructureTable, m: &[f64; 6], df: &[f64; 6], j: usize) -> f64 {
    let mut acc = 0.0;
    for i in 0..6 {
        if df[i] == 0.0 {
            continue;
        }
        for k in 0..6 {
            let c = table.get(i, j, k);
            if c != 0.0 {
                acc += c * m[k] * df[i];
            }
        }
    }
    acc
}

/// Deterministic evaluation lattice in the dual space.
fn probe_points() -> Vec<[f64; 6]> {
    let mut pts = Vec::new();
    // A small low-discrepancy-style lattice keeps the check reproducible
    // without threading an RNG through the geometry API.
    for n in 0..24u64 {
        let mut m = [0.0; 6];
        for (i, slot) in m.iter_mut().enumerate() {
            let u = ((n * 6 + i as u64) as f64 * 0.618033988749895).fract();
            *slot = 2.0 * u - 1.0;
        }
        pts.push(m);
    }
    pts
}

/// Sup over Casimirs, coordinate functions and probe points of
/// |{C, m_j}| with the given structure constants.
pub fn casimir_invariance_with_table(kappa: KappaTriple, table: &StructureTable) -> f64 {
    let mut worst: f64 = 0.0;
    for m in probe_points() {
        let g1 = grad_c1(kappa, &m);
        let g2 = grad_c2(kappa, &m);
        for j in 0..6 {
            worst = worst.max(bracket_with_coordinate(table, &m, &g1, j).abs());
            worst = worst.max(bracket_with_coordinate(table, &m, &g2, j).abs());
        }
    }
    worst
}

/// Casimir invariance residual for the CK structure constants of `kappa`.
pub fn casimir_invariance(kappa: KappaTriple) -> f64 {
    casimir_invariance_with_table(kappa, &ck_structure_table(kappa))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn casimirs_commute_for_all_27_patterns() {
        for k in KappaTriple::all_27() {
            let res = casimir_invariance(k);
            assert!(res < 1e-10, "Casimir residual {res} at {k:?}");
        }
    }

    #[test]
    fn fully_contracted_case() {
        assert!(casimir_invariance(KappaTriple::new(0.0, 0.0, 0.0)) < 1e-10);
    }

    #[test]
    fn perturbed_constants_break_invariance() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let mut table = ck_structure_table(k);
        // Bump the [J01, J02] -> J12 constant.
        table.set_pair(0, 1, 3, table.get(0, 1, 3) + 0.1);
        assert!(casimir_invariance_with_table(k, &table) > 1e-3);
    }
}
