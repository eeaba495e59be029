//! Derivative-based operations on fields: Lie brackets, exterior derivative,
//! Lie derivatives, pushforwards and pullbacks.

use std::sync::Arc;

use crate::ad::{DiffScalar, Evaluator, Scalar, D1};
use crate::calculus::fields::{
    check_chart, ChartMap, MatrixField, OneForm, ScalarField, StructureTable, TwoForm,
    VectorField,
};
use crate::error::{CkError, Result};

/// [X, Y](p) = (DY)X - (DX)Y with Jacobians from forward duals.
pub fn lie_bracket(x: &VectorField, y: &VectorField, p: &[f64]) -> Result<Vec<f64>> {
    check_chart(x.chart, y.chart)?;
    Ok(bracket_at::<f64>(x, y, p))
}

pub(crate) fn bracket_at<S: DiffScalar>(x: &VectorField, y: &VectorField, p: &[S]) -> Vec<S> {
    let (xv, xj) = S::jacobian(&x.eval, p);
    let (yv, yj) = S::jacobian(&y.eval, p);
    let n = p.len();
    (0..n)
        .map(|i| {
            let mut acc = S::from_f64(0.0);
            for j in 0..n {
                acc = acc + yj[i][j] * xv[j] - xj[i][j] * yv[j];
            }
            acc
        })
        .collect()
}

/// The bracket as a derived field (first-order: it cannot be differentiated
/// twice, which is enough for nested Jacobi-identity checks).
pub fn bracket_field(x: &VectorField, y: &VectorField) -> Result<VectorField> {
    check_chart(x.chart, y.chart)?;
    let n = x.chart.dim();
    let (x0, y0) = (x.clone(), y.clone());
    let (x1, y1) = (x.clone(), y.clone());
    Ok(VectorField::new(
        x.chart,
        Evaluator::first_order(
            n,
            n,
            Arc::new(move |p: &[f64]| bracket_at::<f64>(&x0, &y0, p)),
            Arc::new(move |p: &[D1]| bracket_at::<D1>(&x1, &y1, p)),
        ),
    ))
}

/// Sup over (i, j, sample) of ||[X_i, X_j](p) - sum_k c_ijk X_k(p)||_inf.
pub fn verify_structure(
    fields: &[VectorField],
    table: &StructureTable,
    points: &[Vec<f64>],
) -> Result<f64> {
    if fields.len() != table.n {
        return Err(CkError::Domain(format!(
            "structure table of size {} does not match {} fields",
            table.n,
            fields.len()
        )));
    }
    let mut worst = 0.0f64;
    for p in points {
        for i in 0..fields.len() {
            for j in (i + 1)..fields.len() {
                let br = lie_bracket(&fields[i], &fields[j], p)?;
                let mut expect = vec![0.0; p.len()];
                for k in 0..fields.len() {
                    let c = table.get(i, j, k);
                    if c != 0.0 {
                        for (e, v) in expect.iter_mut().zip(fields[k].at(p)) {
                            *e += c * v;
                        }
                    }
                }
                for (a, b) in br.iter().zip(expect) {
                    worst = worst.max((a - b).abs());
                }
            }
        }
    }
    Ok(worst)
}

/// (d alpha)_ij = d_i alpha_j - d_j alpha_i at p.
pub fn exterior_d(alpha: &OneForm, p: &[f64]) -> Vec<Vec<f64>> {
    exterior_d_at::<f64>(alpha, p)
}

pub(crate) fn exterior_d_at<S: DiffScalar>(alpha: &OneForm, p: &[S]) -> Vec<Vec<S>> {
    let (_, j) = S::jacobian(&alpha.eval, p);
    let n = p.len();
    (0..n)
        .map(|a| (0..n).map(|b| j[b][a] - j[a][b]).collect())
        .collect()
}

/// d of a one-form as a TwoForm (first-order derived object).
pub fn exterior_d_form(alpha: &OneForm) -> TwoForm {
    let n = alpha.chart.dim();
    let a0 = alpha.clone();
    let a1 = alpha.clone();
    TwoForm::new(
        alpha.chart,
        Evaluator::first_order(
            n,
            n * n,
            Arc::new(move |p: &[f64]| flatten(exterior_d_at::<f64>(&a0, p))),
            Arc::new(move |p: &[D1]| flatten(exterior_d_at::<D1>(&a1, p))),
        ),
    )
}

/// Differential of a scalar as a OneForm.
pub fn differential(f: &ScalarField) -> OneForm {
    let n = f.chart.dim();
    let (f0, f1) = (f.clone(), f.clone());
    OneForm::new(
        f.chart,
        Evaluator::first_order(
            n,
            n,
            Arc::new(move |p: &[f64]| f64::jacobian(&f0.eval, p).1.remove(0)),
            Arc::new(move |p: &[D1]| D1::jacobian(&f1.eval, p).1.remove(0)),
        ),
    )
}

pub(crate) fn flatten<S: Scalar>(m: Vec<Vec<S>>) -> Vec<S> {
    m.into_iter().flatten().collect()
}

/// Gradient of a scalar field at p.
pub fn grad_at<S: DiffScalar>(f: &ScalarField, p: &[S]) -> Vec<S> {
    S::jacobian(&f.eval, p).1.remove(0)
}

/// X(f) at p.
pub fn derive_along<S: DiffScalar>(x: &VectorField, f: &ScalarField, p: &[S]) -> S {
    let g = grad_at(f, p);
    x.at(p)
        .iter()
        .zip(g)
        .fold(S::from_f64(0.0), |acc, (&v, d)| acc + v * d)
}

/// Lie derivative of a scalar: (L_X f)(p) = X(f)(p).
pub fn lie_derivative_scalar(x: &VectorField, f: &ScalarField, p: &[f64]) -> Result<f64> {
    check_chart(x.chart, f.chart)?;
    Ok(derive_along::<f64>(x, f, p))
}

/// Lie derivative of a one-form: (L_X a)_i = X^j d_j a_i + a_j d_i X^j.
pub fn lie_derivative_one_form(x: &VectorField, a: &OneForm, p: &[f64]) -> Result<Vec<f64>> {
    check_chart(x.chart, a.chart)?;
    Ok(lie_one_form_at::<f64>(x, a, p))
}

pub(crate) fn lie_one_form_at<S: DiffScalar>(x: &VectorField, a: &OneForm, p: &[S]) -> Vec<S> {
    let (xv, xj) = S::jacobian(&x.eval, p);
    let (av, aj) = S::jacobian(&a.eval, p);
    let n = p.len();
    (0..n)
        .map(|i| {
            let mut acc = S::from_f64(0.0);
            for j in 0..n {
                acc = acc + xv[j] * aj[i][j] + av[j] * xj[j][i];
            }
            acc
        })
        .collect()
}

/// Lie derivative of a rank-2 tensor (metric or 2-form), entries row-major:
/// (L_X T)_ij = X^k d_k T_ij + T_kj d_i X^k + T_ik d_j X^k.
pub fn lie_derivative_rank2(x: &VectorField, t: &Evaluator, p: &[f64]) -> Vec<Vec<f64>> {
    lie_rank2_at::<f64>(x, t, p)
}

pub(crate) fn lie_rank2_at<S: DiffScalar>(x: &VectorField, t: &Evaluator, p: &[S]) -> Vec<Vec<S>> {
    let (xv, xj) = S::jacobian(&x.eval, p);
    let (tv, tj) = S::jacobian(t, p);
    let n = p.len();
    let tval = |i: usize, j: usize| tv[i * n + j];
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = S::from_f64(0.0);
                    for k in 0..n {
                        acc = acc
                            + xv[k] * tj[i * n + j][k]
                            + tval(k, j) * xj[k][i]
                            + tval(i, k) * xj[k][j];
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Pushforward of a field through a map, assuming the map has an
/// injective differential and the field is projectable; the result lives on
/// the target chart only along the image, so it is exposed pointwise.
pub fn pushforward_at<S: DiffScalar>(map: &ChartMap, x: &VectorField, p: &[S]) -> Vec<S> {
    let (_, j) = S::jacobian(&map.eval, p);
    let xv = x.at(p);
    let m = map.target.dim();
    (0..m)
        .map(|a| {
            let mut acc = S::from_f64(0.0);
            for (b, &v) in xv.iter().enumerate() {
                acc = acc + j[a][b] * v;
            }
            acc
        })
        .collect()
}

/// Pushforward of a field through a fibration using a section of it:
/// `down(q) = D map(s(q)) . X(s(q))`. Well-defined when X is projectable.
pub fn pushforward_via_section(
    map: &ChartMap,
    section: &ChartMap,
    x: &VectorField,
) -> Result<VectorField> {
    check_chart(map.source, x.chart)?;
    check_chart(section.target, map.source)?;
    let m = map.target.dim();
    let n = section.source.dim();
    assert_eq!(n, m);
    let (ma, sa, xa) = (map.clone(), section.clone(), x.clone());
    let (mb, sb, xb) = (map.clone(), section.clone(), x.clone());
    Ok(VectorField::new(
        map.target,
        Evaluator::first_order(
            n,
            m,
            Arc::new(move |q: &[f64]| pushforward_at::<f64>(&ma, &xa, &sa.at(q))),
            Arc::new(move |q: &[D1]| pushforward_at::<D1>(&mb, &xb, &sb.at(q))),
        ),
    ))
}

/// Pullback of a one-form through a map: (f* a)_i = a_b(f(p)) d_i f^b.
pub fn pullback_one_form(map: &ChartMap, alpha: &OneForm) -> Result<OneForm> {
    check_chart(map.target, alpha.chart)?;
    let n = map.source.dim();
    let (m0, a0) = (map.clone(), alpha.clone());
    let (m1, a1) = (map.clone(), alpha.clone());
    Ok(OneForm::new(
        map.source,
        Evaluator::first_order(
            n,
            n,
            Arc::new(move |p: &[f64]| pullback_one_at::<f64>(&m0, &a0, p)),
            Arc::new(move |p: &[D1]| pullback_one_at::<D1>(&m1, &a1, p)),
        ),
    ))
}

fn pullback_one_at<S: DiffScalar>(map: &ChartMap, alpha: &OneForm, p: &[S]) -> Vec<S> {
    let (fv, fj) = S::jacobian(&map.eval, p);
    let av = alpha.at(&fv);
    let n = p.len();
    (0..n)
        .map(|i| {
            let mut acc = S::from_f64(0.0);
            for (b, &a) in av.iter().enumerate() {
                acc = acc + a * fj[b][i];
            }
            acc
        })
        .collect()
}

/// Pullback of a 2-form: (f* w)_ij = w_ab(f(p)) d_i f^a d_j f^b.
pub fn pullback_two_form(map: &ChartMap, omega: &TwoForm) -> Result<TwoForm> {
    check_chart(map.target, omega.chart)?;
    let n = map.source.dim();
    let (m0, w0) = (map.clone(), omega.clone());
    let (m1, w1) = (map.clone(), omega.clone());
    Ok(TwoForm::new(
        map.source,
        Evaluator::first_order(
            n,
            n * n,
            Arc::new(move |p: &[f64]| flatten(pullback_two_at::<f64>(&m0, &w0, p))),
            Arc::new(move |p: &[D1]| flatten(pullback_two_at::<D1>(&m1, &w1, p))),
        ),
    ))
}

fn pullback_two_at<S: DiffScalar>(map: &ChartMap, omega: &TwoForm, p: &[S]) -> Vec<Vec<S>> {
    let (fv, fj) = S::jacobian(&map.eval, p);
    let wm = omega.matrix(&fv);
    let n = p.len();
    let m = map.target.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let mut acc = S::from_f64(0.0);
                    for a in 0..m {
                        for b in 0..m {
                            acc = acc + wm[a][b] * fj[a][i] * fj[b][j];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// Pullback of a symmetric rank-2 tensor (same formula as for 2-forms).
pub fn pullback_metric(map: &ChartMap, g: &MatrixField) -> Result<MatrixField> {
    check_chart(map.target, g.chart)?;
    let two = TwoForm {
        chart: g.chart,
        eval: g.eval.clone(),
    };
    let pulled = pullback_two_form(map, &two)?;
    Ok(MatrixField {
        chart: pulled.chart,
        eval: pulled.eval,
    })
}

/// Interior product iota_X omega as a one-form (pointwise values).
pub fn interior_product_at<S: Scalar>(omega: &TwoForm, x: &VectorField, p: &[S]) -> Vec<S> {
    let m = omega.matrix(p);
    let xv = x.at(p);
    let n = p.len();
    // (iota_X w)_j = X^i w_ij
    (0..n)
        .map(|j| {
            let mut acc = S::from_f64(0.0);
            for i in 0..n {
                acc = acc + xv[i] * m[i][j];
            }
            acc
        })
        .collect()
}

/// Solve A x = b by Gaussian elimination with partial pivoting, generic over
/// the scalar level so solves can sit inside differentiated pipelines.
/// `rank_tol` bounds the smallest acceptable pivot magnitude.
pub fn solve_linear<S: Scalar>(a: &[Vec<S>], b: &[S], rank_tol: f64) -> Result<Vec<S>> {
    let n = b.len();
    let mut m: Vec<Vec<S>> = a.to_vec();
    let mut rhs = b.to_vec();
    let mut perm: Vec<usize> = (0..n).collect();
    for col in 0..n {
        let (pivot_row, pivot_abs) = (col..n)
            .map(|r| (r, m[r][col].value().abs()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        if pivot_abs < rank_tol {
            return Err(CkError::SingularSolve { pivot: pivot_abs });
        }
        m.swap(col, pivot_row);
        rhs.swap(col, pivot_row);
        perm.swap(col, pivot_row);
        for r in (col + 1)..n {
            let factor = m[r][col] / m[col][col];
            for c in col..n {
                let upd = m[col][c] * factor;
                m[r][c] = m[r][c] - upd;
            }
            let upd = rhs[col] * factor;
            rhs[r] = rhs[r] - upd;
        }
    }
    let mut x = vec![S::from_f64(0.0); n];
    for row in (0..n).rev() {
        let mut acc = rhs[row];
        for c in (row + 1)..n {
            acc = acc - m[row][c] * x[c];
        }
        x[row] = acc / m[row][row];
    }
    Ok(x)
}

/// Uniform random point in a box, used by the sweep suites.
pub fn sample_box(rng: &mut impl rand::Rng, bounds: &[(f64, f64)]) -> Vec<f64> {
    bounds
        .iter()
        .map(|&(lo, hi)| rng.gen_range(lo..hi))
        .collect()
}

/// Infinity norm of a difference.
pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ad::jacobian_fd;
    use rand::SeedableRng;

    use crate::calculus::fields::Chart;

    fn chart() -> Chart {
        Chart::Ambient4
    }

    fn field_a() -> VectorField {
        // X = x0 d0 - x1 d1
        VectorField::new(
            chart(),
            evaluator!(4, 4; move |p| vec![p[0], -p[1], p[0] * 0.0, p[0] * 0.0]),
        )
    }

    fn field_b() -> VectorField {
        // Y = x0 d2 - x3 d1
        VectorField::new(
            chart(),
            evaluator!(4, 4; move |p| vec![p[0] * 0.0, -p[3], p[0], p[0] * 0.0]),
        )
    }

    #[test]
    fn bracket_of_field_with_itself_vanishes() {
        let x = field_a();
        let br = lie_bracket(&x, &x, &[1.2, -0.4, 0.7, 2.0]).unwrap();
        assert!(br.iter().all(|v| v.abs() < 1e-14));
    }

    #[test]
    fn bracket_matches_hand_computation() {
        // [X1, X2] = X2 from the symplectic realization table.
        let x = field_a();
        let y = field_b();
        let p = [0.3, 1.1, -0.6, 0.9];
        let br = lie_bracket(&x, &y, &p).unwrap();
        let expect = y.at(&p);
        assert!(max_abs_diff(&br, &expect) < 1e-13);
    }

    #[test]
    fn bracket_rejects_chart_mismatch() {
        let x = field_a();
        let y = VectorField::zero(Chart::Parallel3);
        assert!(matches!(
            lie_bracket(&x, &y, &[0.0; 4]),
            Err(CkError::ChartMismatch { .. })
        ));
    }

    #[test]
    fn d_of_df_is_zero() {
        // f = x0 * x1
        let f = ScalarField::new(chart(), evaluator!(4, 1; move |p| vec![p[0] * p[1]]));
        let df = differential(&f);
        let dd = exterior_d(&df, &[0.4, 1.3, -0.2, 0.8]);
        for row in dd {
            for v in row {
                assert!(v.abs() < 1e-13);
            }
        }
    }

    #[test]
    fn verify_structure_trivial_cases() {
        let fields = vec![field_a()];
        let table = StructureTable::zero(1);
        let pts = vec![vec![1.0, 2.0, 3.0, 4.0]];
        assert_eq!(verify_structure(&fields, &table, &pts).unwrap(), 0.0);
    }

    #[test]
    fn ad_jacobian_agrees_with_finite_differences() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let x = VectorField::new(
            chart(),
            evaluator!(4, 4; move |p| vec![
                (p[0] * p[1]).sin(),
                p[2].exp() * p[3],
                p[0] * p[0] * p[0],
                p[1].tanh(),
            ]),
        );
        for _ in 0..20 {
            let p = sample_box(&mut rng, &[(-1.5, 1.5); 4]);
            let (_, jad) = f64::jacobian(&x.eval, &p);
            let jfd = jacobian_fd(&x.eval, &p);
            for i in 0..4 {
                for j in 0..4 {
                    assert!((jad[i][j] - jfd[i][j]).abs() < 1e-5);
                }
            }
        }
    }

    #[test]
    fn solve_linear_singular_detection() {
        let a = vec![
            vec![1.0, 2.0, 3.0],
            vec![2.0, 4.0, 6.0],
            vec![0.5, 0.0, 1.0],
        ];
        let b = vec![1.0, 2.0, 0.0];
        assert!(matches!(
            solve_linear(&a, &b, 1e-10),
            Err(CkError::SingularSolve { .. })
        ));
    }

    #[test]
    fn solve_linear_roundtrip() {
        let a = vec![
            vec![2.0, 1.0, -1.0],
            vec![-3.0, -1.0, 2.0],
            vec![-2.0, 1.0, 2.0],
        ];
        let b = vec![8.0, -11.0, -3.0];
        let x = solve_linear(&a, &b, 1e-12).unwrap();
        assert!(max_abs_diff(&x, &[2.0, 3.0, -1.0]) < 1e-12);
    }
}
