//! The CK algebra: Killing-field realization, commutator table, matrix
//! representation and one-parameter subgroups.

use nalgebra::Matrix4;

use crate::calculus::fields::{Chart, StructureTable, VectorField};
use crate::error::{CkError, Result};
use crate::geometry::KappaTriple;
use crate::ktrig::{ck_cos, ck_sin};

/// Index pairs (a, b) with a < b in the fixed basis order
/// J01, J02, J03, J12, J13, J23.
pub const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> Result<usize> {
    PAIRS
        .iter()
        .position(|&(x, y)| (x, y) == (a, b))
        .ok_or_else(|| CkError::Index(format!("Killing index pair needs 0 <= a < b <= 3, got ({a}, {b})")))
}

/// Killing vector field J_ab = kappa_ab x^b d_a - x^a d_b in Weierstrass
/// coordinates. Pairs are stored ordered (a < b); J_ba is -J_ab.
pub fn killing_field(kappa: KappaTriple, a: usize, b: usize) -> Result<VectorField> {
    pair_index(a, b)?;
    let kab = kappa.ab(a, b);
    Ok(VectorField::new(
        Chart::Ambient4,
        evaluator!(4, 4; move |p| {
            let mut out = vec![p[0] * 0.0; 4];
            out[a] = p[b] * kab;
            out[b] = -p[a];
            out
        }),
    ))
}

/// All six Killing fields in basis order.
pub fn killing_basis(kappa: KappaTriple) -> Vec<VectorField> {
    PAIRS
        .iter()
        .map(|&(a, b)| killing_field(kappa, a, b).unwrap())
        .collect()
}

/// Structure constants of so_kappa(4) over (J01, J02, J03, J12, J13, J23):
///   [J01,J02] = k1 J12      [J01,J12] = -J02      [J02,J12] = k2 J01
///   [J01,J03] = k1 J13      [J01,J13] = -J03      [J03,J13] = k2 k3 J01
///   [J02,J03] = k1 k2 J23   [J02,J23] = -J03      [J03,J23] = k3 J02
///   [J12,J13] = k2 J23      [J12,J23] = -J13      [J13,J23] = k3 J12
/// with [J01,J23] = [J02,J13] = [J03,J12] = 0.
pub fn ck_structure_table(kappa: KappaTriple) -> StructureTable {
    let (k1, k2, k3) = (kappa.k1, kappa.k2, kappa.k3);
    StructureTable::from_upper(
        6,
        &[
            (0, 1, &[(3, k1)]),
            (0, 2, &[(4, k1)]),
            (0, 3, &[(1, -1.0)]),
            (0, 4, &[(2, -1.0)]),
            (1, 2, &[(5, k1 * k2)]),
            (1, 3, &[(0, k2)]),
            (1, 5, &[(2, -1.0)]),
            (2, 4, &[(0, k2 * k3)]),
            (2, 5, &[(1, k3)]),
            (3, 4, &[(5, k2)]),
            (3, 5, &[(4, -1.0)]),
            (4, 5, &[(3, k3)]),
        ],
    )
}

/// An element of the CK group SO_kappa(4) in the matrix representation,
/// satisfying m^T I_kappa m = I_kappa.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    pub m: Matrix4<f64>,
}

impl GroupElement {
    pub fn apply(&self, p: &[f64]) -> [f64; 4] {
        let v = self.m * nalgebra::Vector4::new(p[0], p[1], p[2], p[3]);
        [v[0], v[1], v[2], v[3]]
    }

    /// max |(m^T I_kappa m - I_kappa)_ij|.
    pub fn isometry_defect(&self, kappa: KappaTriple) -> f64 {
        let i_k = Matrix4::from_diagonal(&nalgebra::Vector4::new(
            1.0,
            kappa.k01(),
            kappa.k02(),
            kappa.k03(),
        ));
        let d = self.m.transpose() * i_k * self.m - i_k;
        d.iter().fold(0.0f64, |acc, v| acc.max(v.abs()))
    }
}

/// One-parameter subgroup exp(s Gamma(J_ab)): identity outside the (a, b)
/// block; C_{kab}(s) on the block diagonal and S_{kab}(s) off it, weighted
/// by -kappa_ab in the upper corner.
pub fn group_exp(kappa: KappaTriple, a: usize, b: usize, s: f64) -> Result<GroupElement> {
    pair_index(a, b)?;
    let kab = kappa.ab(a, b);
    let (c, si) = (ck_cos(kab, s), ck_sin(kab, s));
    let mut m = Matrix4::identity();
    m[(a, a)] = c;
    m[(b, b)] = c;
    m[(a, b)] = -kab * si;
    m[(b, a)] = si;
    Ok(GroupElement { m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::ops::{max_abs_diff, sample_box, verify_structure};
    use rand::Rng;
    use rand::SeedableRng;

    #[test]
    fn killing_example_at_origin() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let j01 = killing_field(k, 0, 1).unwrap();
        let v = j01.at(&[1.0, 0.0, 0.0, 0.0]);
        assert_eq!(v, vec![0.0, -1.0, 0.0, 0.0]);
    }

    #[test]
    fn killing_rejects_bad_pairs() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        assert!(killing_field(k, 1, 0).is_err());
        assert!(killing_field(k, 2, 2).is_err());
        assert!(killing_field(k, 0, 4).is_err());
    }

    #[test]
    fn bracket_recovery_sample() {
        // [J01, J02] = k1 J12 checked through the AD bracket.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let k = KappaTriple::new(-1.0, 1.0, 1.0);
        let j01 = killing_field(k, 0, 1).unwrap();
        let j02 = killing_field(k, 0, 2).unwrap();
        let j12 = killing_field(k, 1, 2).unwrap();
        for _ in 0..100 {
            let p = sample_box(&mut rng, &[(-2.0, 2.0); 4]);
            let br = crate::calculus::lie_bracket(&j01, &j02, &p).unwrap();
            let expect: Vec<f64> = j12.at(&p).iter().map(|v| v * k.k1).collect();
            assert!(max_abs_diff(&br, &expect) < 1e-9);
        }
    }

    #[test]
    fn structure_constants_for_all_27_patterns() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        for k in KappaTriple::all_27() {
            let fields = killing_basis(k);
            let table = ck_structure_table(k);
            let pts: Vec<Vec<f64>> = (0..25)
                .map(|_| sample_box(&mut rng, &[(-2.0, 2.0); 4]))
                .collect();
            let res = verify_structure(&fields, &table, &pts).unwrap();
            assert!(res < 1e-9, "CK table residual {res} at {k:?}");
        }
    }

    #[test]
    fn group_exp_examples() {
        let k = KappaTriple::new(1.0, 1.0, 1.0);
        let g = group_exp(k, 0, 1, 0.0).unwrap();
        assert_eq!(g.m, Matrix4::identity());

        let s = 0.8;
        let g = group_exp(k, 0, 1, s).unwrap();
        let moved = g.apply(&[1.0, 0.0, 0.0, 0.0]);
        let expect = [ck_cos(k.k1, s), ck_sin(k.k1, s), 0.0, 0.0];
        assert!(max_abs_diff(&moved, &expect) < 1e-15);
    }

    #[test]
    fn group_exp_isometry_invariant() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(29);
        let patterns = KappaTriple::all_27();
        for _ in 0..100 {
            let k = patterns[rng.gen_range(0..patterns.len())];
            let (a, b) = PAIRS[rng.gen_range(0..6)];
            let s: f64 = rng.gen_range(-2.0..2.0);
            let g = group_exp(k, a, b, s).unwrap();
            assert!(g.isometry_defect(k) < 1e-12, "isometry at {k:?} ({a},{b})");
        }
    }
}
