//! Chart-tagged tensor objects: vector fields, scalar fields, forms and maps.
//!
//! Each object wraps an [`Evaluator`] compiled at the three dual levels, so
//! the same formula serves point evaluation, Jacobians and nested
//! derivatives. Everything is immutable and cheap to clone.

use crate::ad::{Evaluator, Scalar};
use crate::calculus::parse::CoefficientExpr;
use crate::error::{CkError, Result};

/// Coordinate charts used across the catalog. The tag is part of every
/// field's identity; operations refuse to mix charts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Chart {
    /// Weierstrass ambient coordinates (x0, x1, x2, x3); doubles as the
    /// global chart of the R^4 phase space.
    Ambient4,
    /// Geodesic parallel coordinates (x, y, z).
    Parallel3,
    /// Geodesic polar coordinates (r, theta, phi).
    Polar3,
    /// Oscillator phase space in canonical coordinates (q1, q2, p1, p2).
    OscCanonical4,
    /// Oscillator phase space in polar-radius form (rho1, theta1, rho2, theta2).
    OscPhase4,
    /// Reduced oscillator space (rho, theta1, theta2).
    OscReduced3,
    /// Cotangent space of R^3 (q1, q2, q3, p1, p2, p3).
    CotangentR3,
    /// Thermodynamic affine chart (U, S, V, T, P).
    ThermoAffine5,
    /// Unit 2-sphere inside R^3 (x0, x1, x2).
    SphereAmbient3,
    /// Geodesic parallel coordinates (x, y) on the 2-sphere.
    SphereParallel2,
    /// Poincare disk coordinates (u, v).
    Disk2,
    /// Euclidean plane (q, p).
    Plane2,
}

impl Chart {
    pub fn dim(self) -> usize {
        match self {
            Chart::Ambient4 | Chart::OscCanonical4 | Chart::OscPhase4 => 4,
            Chart::Parallel3 | Chart::Polar3 | Chart::OscReduced3 | Chart::SphereAmbient3 => 3,
            Chart::CotangentR3 => 6,
            Chart::ThermoAffine5 => 5,
            Chart::SphereParallel2 | Chart::Disk2 | Chart::Plane2 => 2,
        }
    }

    pub fn coord_names(self) -> &'static [&'static str] {
        match self {
            Chart::Ambient4 => &["x0", "x1", "x2", "x3"],
            Chart::Parallel3 => &["x", "y", "z"],
            Chart::Polar3 => &["r", "theta", "phi"],
            Chart::OscCanonical4 => &["q1", "q2", "p1", "p2"],
            Chart::OscPhase4 => &["rho1", "theta1", "rho2", "theta2"],
            Chart::OscReduced3 => &["rho", "theta1", "theta2"],
            Chart::CotangentR3 => &["q1", "q2", "q3", "p1", "p2", "p3"],
            Chart::ThermoAffine5 => &["U", "S", "V", "T", "P"],
            Chart::SphereAmbient3 => &["x0", "x1", "x2"],
            Chart::SphereParallel2 => &["x", "y"],
            Chart::Disk2 => &["u", "v"],
            Chart::Plane2 => &["q", "p"],
        }
    }
}

pub(crate) fn check_chart(expected: Chart, got: Chart) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(CkError::ChartMismatch { expected, got })
    }
}

/// A vector field on a chart: point -> tangent components.
#[derive(Clone)]
pub struct VectorField {
    pub chart: Chart,
    pub eval: Evaluator,
}

impl VectorField {
    pub fn new(chart: Chart, eval: Evaluator) -> Self {
        assert_eq!(eval.n_in, chart.dim());
        assert_eq!(eval.n_out, chart.dim());
        VectorField { chart, eval }
    }

    pub fn at<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.eval.eval(p)
    }

    /// The zero field on a chart.
    pub fn zero(chart: Chart) -> Self {
        let n = chart.dim();
        VectorField::new(
            chart,
            evaluator!(n, n; move |p| vec![p[0] * 0.0; n]),
        )
    }

    /// Pointwise linear combination `a*self + b*other`.
    pub fn linear_comb(&self, a: f64, other: &VectorField, b: f64) -> Result<VectorField> {
        check_chart(self.chart, other.chart)?;
        let n = self.chart.dim();
        let (f1, f2) = (self.clone(), other.clone());
        let (g1, g2) = (self.clone(), other.clone());
        let (h1, h2) = (self.clone(), other.clone());
        Ok(VectorField::new(
            self.chart,
            Evaluator::new(
                n,
                n,
                std::sync::Arc::new(move |p: &[f64]| comb(&f1.at(p), &f2.at(p), a, b)),
                std::sync::Arc::new(move |p: &[crate::ad::D1]| comb(&g1.at(p), &g2.at(p), a, b)),
                std::sync::Arc::new(move |p: &[crate::ad::D2]| comb(&h1.at(p), &h2.at(p), a, b)),
            ),
        ))
    }
}

fn comb<S: Scalar>(u: &[S], v: &[S], a: f64, b: f64) -> Vec<S> {
    u.iter().zip(v).map(|(&x, &y)| x * a + y * b).collect()
}

/// A scalar function on a chart.
#[derive(Clone)]
pub struct ScalarField {
    pub chart: Chart,
    pub eval: Evaluator,
}

impl ScalarField {
    pub fn new(chart: Chart, eval: Evaluator) -> Self {
        assert_eq!(eval.n_in, chart.dim());
        assert_eq!(eval.n_out, 1);
        ScalarField { chart, eval }
    }

    pub fn at<S: Scalar>(&self, p: &[S]) -> S {
        self.eval.eval(p)[0]
    }

    pub fn constant(chart: Chart, c: f64) -> Self {
        let n = chart.dim();
        ScalarField::new(chart, evaluator!(n, 1; move |p| vec![p[0] * 0.0 + c]))
    }
}

/// A 1-form on a chart: point -> covector components.
#[derive(Clone)]
pub struct OneForm {
    pub chart: Chart,
    pub eval: Evaluator,
}

impl OneForm {
    pub fn new(chart: Chart, eval: Evaluator) -> Self {
        assert_eq!(eval.n_in, chart.dim());
        assert_eq!(eval.n_out, chart.dim());
        OneForm { chart, eval }
    }

    pub fn at<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.eval.eval(p)
    }

    /// Pairing alpha(v) at p.
    pub fn pair<S: Scalar>(&self, p: &[S], v: &[S]) -> S {
        self.at(p)
            .iter()
            .zip(v)
            .fold(S::from_f64(0.0), |acc, (&a, &b)| acc + a * b)
    }
}

/// An antisymmetric rank-2 form; components flattened row-major.
#[derive(Clone)]
pub struct TwoForm {
    pub chart: Chart,
    pub eval: Evaluator,
}

impl TwoForm {
    pub fn new(chart: Chart, eval: Evaluator) -> Self {
        let n = chart.dim();
        assert_eq!(eval.n_in, n);
        assert_eq!(eval.n_out, n * n);
        TwoForm { chart, eval }
    }

    /// The component matrix at p, `m[i][j] = omega(e_i, e_j)`.
    pub fn matrix<S: Scalar>(&self, p: &[S]) -> Vec<Vec<S>> {
        let n = self.chart.dim();
        let flat = self.eval.eval(p);
        (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// omega(v, w) at p.
    pub fn pair<S: Scalar>(&self, p: &[S], v: &[S], w: &[S]) -> S {
        let m = self.matrix(p);
        let n = self.chart.dim();
        let mut acc = S::from_f64(0.0);
        for i in 0..n {
            for j in 0..n {
                acc = acc + m[i][j] * v[i] * w[j];
            }
        }
        acc
    }

    /// Max antisymmetry defect |m_ij + m_ji| at p (diagnostic).
    pub fn antisymmetry_defect(&self, p: &[f64]) -> f64 {
        let m = self.matrix(p);
        let n = self.chart.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in 0..n {
                worst = worst.max((m[i][j] + m[j][i]).abs());
            }
        }
        worst
    }
}

/// A symmetric rank-2 tensor field (a metric in a chart); flattened row-major.
#[derive(Clone)]
pub struct MatrixField {
    pub chart: Chart,
    pub eval: Evaluator,
}

impl MatrixField {
    pub fn new(chart: Chart, eval: Evaluator) -> Self {
        let n = chart.dim();
        assert_eq!(eval.n_in, n);
        assert_eq!(eval.n_out, n * n);
        MatrixField { chart, eval }
    }

    pub fn matrix<S: Scalar>(&self, p: &[S]) -> Vec<Vec<S>> {
        let n = self.chart.dim();
        let flat = self.eval.eval(p);
        (0..n).map(|i| flat[i * n..(i + 1) * n].to_vec()).collect()
    }

    /// g(v, w) at p.
    pub fn pair<S: Scalar>(&self, p: &[S], v: &[S], w: &[S]) -> S {
        let m = self.matrix(p);
        let n = self.chart.dim();
        let mut acc = S::from_f64(0.0);
        for i in 0..n {
            for j in 0..n {
                acc = acc + m[i][j] * v[i] * w[j];
            }
        }
        acc
    }
}

/// A smooth map between charts, e.g. an embedding or a bundle projection.
#[derive(Clone)]
pub struct ChartMap {
    pub source: Chart,
    pub target: Chart,
    pub eval: Evaluator,
}

impl ChartMap {
    pub fn new(source: Chart, target: Chart, eval: Evaluator) -> Self {
        assert_eq!(eval.n_in, source.dim());
        assert_eq!(eval.n_out, target.dim());
        ChartMap {
            source,
            target,
            eval,
        }
    }

    pub fn at<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        self.eval.eval(p)
    }
}

/// Antisymmetric structure-constant table c[i][j][k] for a basis of size n:
/// `[X_i, X_j] = sum_k c[i][j][k] X_k`.
#[derive(Debug, Clone)]
pub struct StructureTable {
    pub n: usize,
    c: Vec<f64>,
}

impl StructureTable {
    /// Build from the upper-triangular entries `(i, j, [(k, coeff), ...])`
    /// with i < j; antisymmetry is filled in automatically.
    pub fn from_upper(n: usize, entries: &[(usize, usize, &[(usize, f64)])]) -> Self {
        let mut c = vec![0.0; n * n * n];
        for &(i, j, terms) in entries {
            assert!(i < j && j < n);
            for &(k, v) in terms {
                c[(i * n + j) * n + k] = v;
                c[(j * n + i) * n + k] = -v;
            }
        }
        StructureTable { n, c }
    }

    pub fn zero(n: usize) -> Self {
        StructureTable {
            n,
            c: vec![0.0; n * n * n],
        }
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.c[(i * self.n + j) * self.n + k]
    }

    pub fn set_pair(&mut self, i: usize, j: usize, k: usize, v: f64) {
        self.c[(i * self.n + j) * self.n + k] = v;
        self.c[(j * self.n + i) * self.n + k] = -v;
    }

    /// The table with every constant negated (function-bracket convention
    /// for symplectic Lie-Hamilton pairs).
    pub fn negated(&self) -> Self {
        StructureTable {
            n: self.n,
            c: self.c.iter().map(|v| -v).collect(),
        }
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..self.n {
            for j in 0..self.n {
                for k in 0..self.n {
                    worst = worst.max((self.get(i, j, k) + self.get(j, i, k)).abs());
                }
            }
        }
        worst
    }
}

/// A time-dependent field `sum_i b_i(t) X_i` with all basis fields on one chart.
#[derive(Clone)]
pub struct TimeDependentField {
    pub chart: Chart,
    pub terms: Vec<(CoefficientExpr, VectorField)>,
}

impl TimeDependentField {
    pub fn new(terms: Vec<(CoefficientExpr, VectorField)>) -> Result<Self> {
        let chart = terms
            .first()
            .map(|(_, f)| f.chart)
            .ok_or_else(|| CkError::Domain("time-dependent field needs at least one term".into()))?;
        for (_, f) in &terms {
            check_chart(chart, f.chart)?;
        }
        Ok(TimeDependentField { chart, terms })
    }

    pub fn at(&self, t: f64, p: &[f64]) -> Vec<f64> {
        let n = self.chart.dim();
        let mut out = vec![0.0; n];
        for (b, field) in &self.terms {
            let c = b.eval(t);
            if c != 0.0 {
                for (o, v) in out.iter_mut().zip(field.at(p)) {
                    *o += c * v;
                }
            }
        }
        out
    }
}
