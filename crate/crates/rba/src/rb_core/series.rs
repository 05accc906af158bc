//! Truncated formal power series over any carrier, with the exact
//! exp/log/inverse arithmetic needed by the Spitzer and Magnus formulas,
//! Atkinson's factorization, and the Magnus coefficient series.

use num_traits::One;
use thiserror::Error;

use super::{iterate_left, Algebra, ConjugateRba, RbAlgebra};
use crate::rational::{factorial, rat, Rational};

/// A truncated power series: `coeffs[n]` is the coefficient of `t^n`,
/// arithmetic is exact modulo `t^(order+1)`.
#[derive(Clone, Debug)]
pub struct FormalSeries<T> {
    coeffs: Vec<T>,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SeriesError {
    #[error("constant coefficient must be the carrier unit")]
    ConstantNotUnit,
    #[error("constant coefficient must be zero")]
    ConstantNotZero,
    #[error("carrier has no unit")]
    NoUnit,
}

impl<T: Clone> FormalSeries<T> {
    pub fn new(coeffs: Vec<T>) -> Self {
        assert!(!coeffs.is_empty(), "a series carries at least t^0");
        FormalSeries { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &T {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let upto = order.min(self.order());
        FormalSeries::new(self.coeffs[..=upto].to_vec())
    }
}

pub fn zero<A: Algebra>(alg: &A, order: usize) -> FormalSeries<A::Elem> {
    FormalSeries::new(vec![alg.zero(); order + 1])
}

pub fn unit<A: Algebra>(alg: &A, order: usize) -> FormalSeries<A::Elem> {
    let mut coeffs = vec![alg.zero(); order + 1];
    coeffs[0] = alg.unit_elem();
    FormalSeries::new(coeffs)
}

/// `1 + at`.
pub fn one_plus_at<A: Algebra>(alg: &A, a: &A::Elem, order: usize) -> FormalSeries<A::Elem> {
    let mut s = unit(alg, order);
    if order >= 1 {
        s.coeffs[1] = a.clone();
    }
    s
}

pub fn add<A: Algebra>(
    alg: &A,
    a: &FormalSeries<A::Elem>,
    b: &FormalSeries<A::Elem>,
) -> FormalSeries<A::Elem> {
    let order = a.order().min(b.order());
    FormalSeries::new(
        (0..=order)
            .map(|n| alg.add(&a.coeffs[n], &b.coeffs[n]))
            .collect(),
    )
}

pub fn sub<A: Algebra>(
    alg: &A,
    a: &FormalSeries<A::Elem>,
    b: &FormalSeries<A::Elem>,
) -> FormalSeries<A::Elem> {
    let order = a.order().min(b.order());
    FormalSeries::new(
        (0..=order)
            .map(|n| alg.sub(&a.coeffs[n], &b.coeffs[n]))
            .collect(),
    )
}

pub fn scale<A: Algebra>(
    alg: &A,
    c: &Rational,
    a: &FormalSeries<A::Elem>,
) -> FormalSeries<A::Elem> {
    FormalSeries::new(a.coeffs.iter().map(|x| alg.scalar_mul(c, x)).collect())
}

pub fn mul<A: Algebra>(
    alg: &A,
    a: &FormalSeries<A::Elem>,
    b: &FormalSeries<A::Elem>,
) -> FormalSeries<A::Elem> {
    let order = a.order().min(b.order());
    let mut coeffs = vec![alg.zero(); order + 1];
    for (i, ai) in a.coeffs.iter().enumerate().take(order + 1) {
        for (j, bj) in b.coeffs.iter().enumerate().take(order + 1 - i) {
            coeffs[i + j] = alg.add(&coeffs[i + j], &alg.mul(ai, bj));
        }
    }
    FormalSeries::new(coeffs)
}

/// Apply a linear map coefficientwise, e.g. the Rota-Baxter operator.
pub fn map_coeffs<A: Algebra, F: Fn(&A::Elem) -> A::Elem>(
    _alg: &A,
    f: F,
    a: &FormalSeries<A::Elem>,
) -> FormalSeries<A::Elem> {
    FormalSeries::new(a.coeffs.iter().map(f).collect())
}

pub fn is_zero<A: Algebra>(alg: &A, a: &FormalSeries<A::Elem>) -> bool {
    a.coeffs.iter().all(|c| alg.is_zero(c))
}

pub fn eq<A: Algebra>(
    alg: &A,
    a: &FormalSeries<A::Elem>,
    b: &FormalSeries<A::Elem>,
) -> bool {
    is_zero(alg, &sub(alg, a, b))
}

/// Multiplicative inverse; the constant coefficient must equal the unit.
pub fn inverse<A: Algebra>(
    alg: &A,
    a: &FormalSeries<A::Elem>,
) -> Result<FormalSeries<A::Elem>, SeriesError> {
    let unit_elem = alg.unit().ok_or(SeriesError::NoUnit)?;
    if !alg.eq_elem(&a.coeffs[0], &unit_elem) {
        return Err(SeriesError::ConstantNotUnit);
    }
    let order = a.order();
    let mut coeffs = vec![alg.zero(); order + 1];
    coeffs[0] = unit_elem;
    for n in 1..=order {
        let mut acc = alg.zero();
        for i in 1..=n {
            acc = alg.add(&acc, &alg.mul(&a.coeffs[i], &coeffs[n - i]));
        }
        coeffs[n] = alg.neg(&acc);
    }
    Ok(FormalSeries::new(coeffs))
}

/// Formal derivative in `t`; the order drops by one.
pub fn derivative<A: Algebra>(alg: &A, a: &FormalSeries<A::Elem>) -> FormalSeries<A::Elem> {
    if a.order() == 0 {
        return FormalSeries::new(vec![alg.zero()]);
    }
    FormalSeries::new(
        (1..=a.order())
            .map(|n| alg.scalar_mul(&rat(n as i64), &a.coeffs[n]))
            .collect(),
    )
}

/// Formal antiderivative with vanishing constant term; the order grows by one.
pub fn antiderivative<A: Algebra>(alg: &A, a: &FormalSeries<A::Elem>) -> FormalSeries<A::Elem> {
    let mut coeffs = vec![alg.zero(); a.order() + 2];
    for n in 0..=a.order() {
        coeffs[n + 1] = alg.scalar_mul(&rat(n as i64 + 1).recip(), &a.coeffs[n]);
    }
    FormalSeries::new(coeffs)
}

/// `exp(s) = sum s^k / k!`; the constant coefficient of `s` must vanish.
pub fn exp<A: Algebra>(
    alg: &A,
    s: &FormalSeries<A::Elem>,
) -> Result<FormalSeries<A::Elem>, SeriesError> {
    if alg.unit().is_none() {
        return Err(SeriesError::NoUnit);
    }
    if !alg.is_zero(&s.coeffs[0]) {
        return Err(SeriesError::ConstantNotZero);
    }
    let order = s.order();
    let mut acc = unit(alg, order);
    let mut power = unit(alg, order);
    for k in 1..=order {
        power = mul(alg, &power, s);
        acc = add(alg, &acc, &scale(alg, &factorial(k).recip(), &power));
    }
    Ok(acc)
}

/// `log(s) = sum (-1)^(k+1) (s-1)^k / k`; the constant coefficient of `s`
/// must equal the unit.
pub fn log<A: Algebra>(
    alg: &A,
    s: &FormalSeries<A::Elem>,
) -> Result<FormalSeries<A::Elem>, SeriesError> {
    let unit_elem = alg.unit().ok_or(SeriesError::NoUnit)?;
    if !alg.eq_elem(&s.coeffs[0], &unit_elem) {
        return Err(SeriesError::ConstantNotUnit);
    }
    let order = s.order();
    let mut u = s.clone();
    u.coeffs[0] = alg.zero();
    let mut acc = zero(alg, order);
    let mut power = unit(alg, order);
    let mut sign = Rational::one();
    for k in 1..=order {
        power = mul(alg, &power, &u);
        let c = &sign * rat(k as i64).recip();
        acc = add(alg, &acc, &scale(alg, &c, &power));
        sign = -sign;
    }
    Ok(acc)
}

/// The Atkinson factorization data for a fixed carrier element `a`:
/// `x = 1 + tR(xa)`, `y = 1 + tR~(ay)` solved by coefficient recursion, with
/// the closed-form inverses `x^{-1} = 1 - tR(ay)` and `y^{-1} = 1 - tR~(xa)`.
pub struct Atkinson<T> {
    pub x: FormalSeries<T>,
    pub y: FormalSeries<T>,
    pub x_inv: FormalSeries<T>,
    pub y_inv: FormalSeries<T>,
}

pub fn atkinson<A: RbAlgebra>(alg: &A, a: &A::Elem, order: usize) -> Atkinson<A::Elem> {
    assert!(order >= 1, "the factorization needs order >= 1");
    let conj = ConjugateRba(alg);
    let unit_elem = alg.unit_elem();

    let mut x = Vec::with_capacity(order + 1);
    x.push(unit_elem.clone());
    for n in 1..=order {
        x.push(alg.rb(&alg.mul(&x[n - 1], a)));
    }

    let mut y = Vec::with_capacity(order + 1);
    y.push(unit_elem.clone());
    for n in 1..=order {
        y.push(conj.rb(&alg.mul(a, &y[n - 1])));
    }

    let mut x_inv = Vec::with_capacity(order + 1);
    x_inv.push(unit_elem.clone());
    for n in 1..=order {
        x_inv.push(alg.neg(&alg.rb(&alg.mul(a, &y[n - 1]))));
    }

    let mut y_inv = Vec::with_capacity(order + 1);
    y_inv.push(unit_elem);
    for n in 1..=order {
        y_inv.push(alg.neg(&conj.rb(&alg.mul(&x[n - 1], a))));
    }

    Atkinson {
        x: FormalSeries::new(x),
        y: FormalSeries::new(y),
        x_inv: FormalSeries::new(x_inv),
        y_inv: FormalSeries::new(y_inv),
    }
}

/// The fundamental series `X_a(t) = sum t^n (Ra)^[n]`.
pub fn fundamental_series<A: RbAlgebra>(
    alg: &A,
    a: &A::Elem,
    order: usize,
) -> FormalSeries<A::Elem> {
    FormalSeries::new((0..=order).map(|n| iterate_left(alg, a, n)).collect())
}

/// The Magnus data: the coefficients of `d/dt log X_a(t)`.
///
/// The defining equation's indexing is ambiguous between `K_n` as the
/// coefficient of `t^n` and of `t^(n-1)`, so both readings are exposed.
pub struct MagnusSeries<T> {
    derivative_coeffs: Vec<T>,
}

impl<T> MagnusSeries<T> {
    /// Coefficient of `t^p` in `d/dt log X_a(t)`.
    pub fn coeff_of_power(&self, p: usize) -> &T {
        &self.derivative_coeffs[p]
    }

    /// `K_n` read literally as the coefficient of `t^n`.
    pub fn k_literal(&self, n: usize) -> &T {
        &self.derivative_coeffs[n]
    }

    /// `K_n` read conventionally as the coefficient of `t^(n-1)`.
    pub fn k_conventional(&self, n: usize) -> &T {
        assert!(n >= 1, "conventional Magnus indexing starts at K_1");
        &self.derivative_coeffs[n - 1]
    }

    pub fn coeffs(&self) -> &[T] {
        &self.derivative_coeffs
    }
}

/// Compute `d/dt log X_a(t)` to the given order (of the derivative).
pub fn magnus<A: RbAlgebra>(
    alg: &A,
    a: &A::Elem,
    order: usize,
) -> Result<MagnusSeries<A::Elem>, SeriesError> {
    assert!(order >= 1, "Magnus series needs order >= 1");
    let x = fundamental_series(alg, a, order + 1);
    let logx = log(alg, &x)?;
    let d = derivative(alg, &logx);
    Ok(MagnusSeries {
        derivative_coeffs: d.coeffs().to_vec(),
    })
}
