//! Forward-mode automatic differentiation on dual numbers.
//!
//! Every geometric evaluator in this crate is compiled at three scalar
//! levels: plain `f64`, first-order duals [`D1`] and second-order duals
//! [`D2`]. Code that needs a Jacobian evaluates the level above the one it
//! runs at, so brackets of brackets (two derivative levels) are available
//! without symbolic machinery.

use std::ops::{Add, Div, Mul, Neg, Sub};
use std::sync::Arc;

/// A dual number `re + eps*im` with nilpotent `eps`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual<T> {
    pub re: T,
    pub im: T,
}

/// First-order dual scalar.
pub type D1 = Dual<f64>;
/// Second-order (nested) dual scalar.
pub type D2 = Dual<Dual<f64>>;

impl<T: Scalar> Dual<T> {
    pub fn new(re: T, im: T) -> Self {
        Dual { re, im }
    }

    /// Lift a value with zero derivative part.
    pub fn constant(re: T) -> Self {
        Dual {
            re,
            im: T::from_f64(0.0),
        }
    }

    /// Seed the derivative part with 1 (the differentiation variable).
    pub fn variable(re: T) -> Self {
        Dual {
            re,
            im: T::from_f64(1.0),
        }
    }
}

impl<T: Scalar> Add for Dual<T> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Dual::new(self.re + o.re, self.im + o.im)
    }
}

impl<T: Scalar> Sub for Dual<T> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Dual::new(self.re - o.re, self.im - o.im)
    }
}

impl<T: Scalar> Mul for Dual<T> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Dual::new(self.re * o.re, self.re * o.im + self.im * o.re)
    }
}

impl<T: Scalar> Div for Dual<T> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        Dual::new(
            self.re / o.re,
            (self.im * o.re - self.re * o.im) / (o.re * o.re),
        )
    }
}

impl<T: Scalar> Neg for Dual<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Dual::new(-self.re, -self.im)
    }
}

// Mixed ops with plain f64 literals keep field formulas readable.
impl<T: Scalar> Add<f64> for Dual<T> {
    type Output = Self;
    fn add(self, o: f64) -> Self {
        Dual::new(self.re + o, self.im)
    }
}
impl<T: Scalar> Sub<f64> for Dual<T> {
    type Output = Self;
    fn sub(self, o: f64) -> Self {
        Dual::new(self.re - o, self.im)
    }
}
impl<T: Scalar> Mul<f64> for Dual<T> {
    type Output = Self;
    fn mul(self, o: f64) -> Self {
        Dual::new(self.re * o, self.im * o)
    }
}
impl<T: Scalar> Div<f64> for Dual<T> {
    type Output = Self;
    fn div(self, o: f64) -> Self {
        Dual::new(self.re / o, self.im / o)
    }
}
impl<T: Scalar> Add<Dual<T>> for f64 {
    type Output = Dual<T>;
    fn add(self, o: Dual<T>) -> Dual<T> {
        o + self
    }
}
impl<T: Scalar> Sub<Dual<T>> for f64 {
    type Output = Dual<T>;
    fn sub(self, o: Dual<T>) -> Dual<T> {
        Dual::new(T::from_f64(self) - o.re, -o.im)
    }
}
impl<T: Scalar> Mul<Dual<T>> for f64 {
    type Output = Dual<T>;
    fn mul(self, o: Dual<T>) -> Dual<T> {
        o * self
    }
}
impl<T: Scalar> Div<Dual<T>> for f64 {
    type Output = Dual<T>;
    fn div(self, o: Dual<T>) -> Dual<T> {
        Dual::constant(T::from_f64(self)) / o
    }
}

/// An evaluator compiled at the three scalar levels. Inputs are chart
/// coordinates, outputs are the components of whatever tensor the wrapper
/// type represents (a scalar is a length-1 output).
#[derive(Clone)]
pub struct Evaluator {
    pub n_in: usize,
    pub n_out: usize,
    e0: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
    e1: Arc<dyn Fn(&[D1]) -> Vec<D1> + Send + Sync>,
    e2: Arc<dyn Fn(&[D2]) -> Vec<D2> + Send + Sync>,
}

impl Evaluator {
    pub fn new(
        n_in: usize,
        n_out: usize,
        e0: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
        e1: Arc<dyn Fn(&[D1]) -> Vec<D1> + Send + Sync>,
        e2: Arc<dyn Fn(&[D2]) -> Vec<D2> + Send + Sync>,
    ) -> Self {
        Evaluator {
            n_in,
            n_out,
            e0,
            e1,
            e2,
        }
    }

    /// Evaluator for derived objects that internally consume one derivative
    /// level. They can be evaluated at `f64` and [`D1`] points; asking for
    /// the [`D2`] level would require third-order duals and panics.
    pub fn first_order(
        n_in: usize,
        n_out: usize,
        e0: Arc<dyn Fn(&[f64]) -> Vec<f64> + Send + Sync>,
        e1: Arc<dyn Fn(&[D1]) -> Vec<D1> + Send + Sync>,
    ) -> Self {
        Evaluator {
            n_in,
            n_out,
            e0,
            e1,
            e2: Arc::new(|_: &[D2]| -> Vec<D2> {
                panic!("second-order differentiation is not supported for derived evaluators")
            }),
        }
    }

    pub fn eval<S: Scalar>(&self, p: &[S]) -> Vec<S> {
        debug_assert_eq!(p.len(), self.n_in);
        S::dispatch(self, p)
    }
}

/// The scalar abstraction all field formulas are written against.
pub trait Scalar:
    Copy
    + std::fmt::Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + Add<f64, Output = Self>
    + Sub<f64, Output = Self>
    + Mul<f64, Output = Self>
    + Div<f64, Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// The underlying value with all derivative parts stripped.
    fn value(&self) -> f64;
    fn sin(self) -> Self;
    fn cos(self) -> Self;
    fn sinh(self) -> Self;
    fn cosh(self) -> Self;
    fn tanh(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn sqrt(self) -> Self;
    fn powi(self, n: i32) -> Self;
    /// Route an [`Evaluator`] call to the instantiation for this scalar.
    fn dispatch(e: &Evaluator, p: &[Self]) -> Vec<Self>;
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn value(&self) -> f64 {
        *self
    }
    fn sin(self) -> Self {
        f64::sin(self)
    }
    fn cos(self) -> Self {
        f64::cos(self)
    }
    fn sinh(self) -> Self {
        f64::sinh(self)
    }
    fn cosh(self) -> Self {
        f64::cosh(self)
    }
    fn tanh(self) -> Self {
        f64::tanh(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powi(self, n: i32) -> Self {
        f64::powi(self, n)
    }
    fn dispatch(e: &Evaluator, p: &[Self]) -> Vec<Self> {
        (e.e0)(p)
    }
}

impl<T: Scalar> Scalar for Dual<T>
where
    Dual<T>: DispatchLevel,
{
    fn from_f64(v: f64) -> Self {
        Dual::constant(T::from_f64(v))
    }
    fn value(&self) -> f64 {
        self.re.value()
    }
    fn sin(self) -> Self {
        Dual::new(self.re.sin(), self.im * self.re.cos())
    }
    fn cos(self) -> Self {
        Dual::new(self.re.cos(), -(self.im * self.re.sin()))
    }
    fn sinh(self) -> Self {
        Dual::new(self.re.sinh(), self.im * self.re.cosh())
    }
    fn cosh(self) -> Self {
        Dual::new(self.re.cosh(), self.im * self.re.sinh())
    }
    fn tanh(self) -> Self {
        let t = self.re.tanh();
        Dual::new(t, self.im * (T::from_f64(1.0) - t * t))
    }
    fn exp(self) -> Self {
        let e = self.re.exp();
        Dual::new(e, self.im * e)
    }
    fn ln(self) -> Self {
        Dual::new(self.re.ln(), self.im / self.re)
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        Dual::new(s, self.im / (s * 2.0))
    }
    fn powi(self, n: i32) -> Self {
        Dual::new(
            self.re.powi(n),
            self.im * self.re.powi(n - 1) * f64::from(n),
        )
    }
    fn dispatch(e: &Evaluator, p: &[Self]) -> Vec<Self> {
        <Self as DispatchLevel>::dispatch_level(e, p)
    }
}

/// Ties each dual depth to the matching [`Evaluator`] slot.
pub trait DispatchLevel: Sized {
    fn dispatch_level(e: &Evaluator, p: &[Self]) -> Vec<Self>;
}

impl DispatchLevel for D1 {
    fn dispatch_level(e: &Evaluator, p: &[Self]) -> Vec<Self> {
        (e.e1)(p)
    }
}

impl DispatchLevel for D2 {
    fn dispatch_level(e: &Evaluator, p: &[Self]) -> Vec<Self> {
        (e.e2)(p)
    }
}

/// Scalars at which one more derivative level is available.
pub trait DiffScalar: Scalar {
    /// Value and Jacobian of an evaluator at `p`: `jac[i][j] = d out_i / d p_j`.
    fn jacobian(e: &Evaluator, p: &[Self]) -> (Vec<Self>, Vec<Vec<Self>>);
}

impl DiffScalar for f64 {
    fn jacobian(e: &Evaluator, p: &[Self]) -> (Vec<Self>, Vec<Vec<Self>>) {
        jac_impl::<f64>(e, p)
    }
}

impl DiffScalar for D1 {
    fn jacobian(e: &Evaluator, p: &[Self]) -> (Vec<Self>, Vec<Vec<Self>>) {
        jac_impl::<D1>(e, p)
    }
}

fn jac_impl<S>(e: &Evaluator, p: &[S]) -> (Vec<S>, Vec<Vec<S>>)
where
    S: Scalar,
    Dual<S>: Scalar,
{
    let n = p.len();
    let mut value = Vec::new();
    let mut jac = vec![vec![S::from_f64(0.0); n]; e.n_out];
    for j in 0..n {
        let lifted: Vec<Dual<S>> = p
            .iter()
            .enumerate()
            .map(|(k, &x)| {
                if k == j {
                    Dual::variable(x)
                } else {
                    Dual::constant(x)
                }
            })
            .collect();
        let out = Dual::<S>::dispatch(e, &lifted);
        if j == 0 {
            value = out.iter().map(|d| d.re).collect();
        }
        for (i, d) in out.iter().enumerate() {
            jac[i][j] = d.im;
        }
    }
    if n == 0 {
        value = e.eval(p);
    }
    (value, jac)
}

/// Directional derivative of an evaluator along `v` at `p`.
pub fn directional<S>(e: &Evaluator, p: &[S], v: &[S]) -> Vec<S>
where
    S: Scalar,
    Dual<S>: Scalar,
{
    let lifted: Vec<Dual<S>> = p
        .iter()
        .zip(v.iter())
        .map(|(&x, &dx)| Dual::new(x, dx))
        .collect();
    Dual::<S>::dispatch(e, &lifted).iter().map(|d| d.im).collect()
}

/// Central finite-difference Jacobian, retained as an independent
/// cross-check of the dual-number derivatives.
pub fn jacobian_fd(e: &Evaluator, p: &[f64]) -> Vec<Vec<f64>> {
    let n = p.len();
    let eps = f64::EPSILON.powf(1.0 / 3.0);
    let mut jac = vec![vec![0.0; n]; e.n_out];
    for j in 0..n {
        let h = eps * p[j].abs().max(1.0);
        let mut pp = p.to_vec();
        let mut pm = p.to_vec();
        pp[j] += h;
        pm[j] -= h;
        let fp = e.eval(&pp);
        let fm = e.eval(&pm);
        for i in 0..e.n_out {
            jac[i][j] = (fp[i] - fm[i]) / (2.0 * h);
        }
    }
    jac
}

/// Build an [`Evaluator`] from a formula valid at every scalar level.
///
/// The body is expanded once per level, so it must only use [`Scalar`] ops
/// (plain `f64` literals are fine on either side of an operation).
#[macro_export]
macro_rules! evaluator {
    ($n_in:expr, $n_out:expr; move |$p:ident| $body:expr) => {
        $crate::ad::Evaluator::new(
            $n_in,
            $n_out,
            ::std::sync::Arc::new(move |$p: &[f64]| -> Vec<f64> { $body }),
            ::std::sync::Arc::new(move |$p: &[$crate::ad::D1]| -> Vec<$crate::ad::D1> { $body }),
            ::std::sync::Arc::new(move |$p: &[$crate::ad::D2]| -> Vec<$crate::ad::D2> { $body }),
        )
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Evaluator {
        evaluator!(2, 1; move |p| vec![p[0] * p[0] * p[1] + p[1].sin()])
    }

    #[test]
    fn first_derivatives_match_hand_values() {
        let e = sample();
        let (val, jac) = f64::jacobian(&e, &[2.0, 0.5]);
        assert!((val[0] - (4.0 * 0.5 + 0.5f64.sin())).abs() < 1e-15);
        assert!((jac[0][0] - 2.0 * 2.0 * 0.5).abs() < 1e-15);
        assert!((jac[0][1] - (4.0 + 0.5f64.cos())).abs() < 1e-15);
    }

    #[test]
    fn nested_duals_give_second_derivatives() {
        // d2/dx2 of x^2 y at (2, 0.5) is 2y = 1.
        let e = sample();
        let p = [D1::variable(2.0), D1::constant(0.5)];
        let (_, jac) = D1::jacobian(&e, &p);
        assert!((jac[0][0].im - 1.0).abs() < 1e-15);
    }

    #[test]
    fn fd_agrees_with_duals() {
        let e = sample();
        let p = [1.3, -0.7];
        let (_, jad) = f64::jacobian(&e, &p);
        let jfd = jacobian_fd(&e, &p);
        for j in 0..2 {
            assert!((jad[0][j] - jfd[0][j]).abs() < 1e-9);
        }
    }

    #[test]
    fn transcendental_chain_rules() {
        let e = evaluator!(1, 1; move |p| vec![(p[0].exp() * p[0].tanh()).ln().sqrt()]);
        let x = 1.7;
        let f = |x: f64| (x.exp() * x.tanh()).ln().sqrt();
        let h = 1e-6;
        let fd = (f(x + h) - f(x - h)) / (2.0 * h);
        let (_, jac) = f64::jacobian(&e, &[x]);
        assert!((jac[0][0] - fd).abs() < 1e-8);
    }
}
