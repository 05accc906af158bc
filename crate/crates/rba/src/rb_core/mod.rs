//! The abstract Rota-Baxter algebra contract and everything derived from it
//! uniformly over any carrier: the conjugate operator, the double product,
//! pre-Lie and dendriform products, the Spitzer iterates, and truncated
//! formal power series with Atkinson's factorization and Magnus coefficients.

pub mod series;

pub use series::{
    atkinson, magnus, Atkinson, FormalSeries, MagnusSeries, SeriesError,
};

use num_traits::One;

use crate::rational::Rational;

/// An associative algebra over the rationals, with the equality test owned by
/// the carrier so truncated models can compare at their truncation level.
pub trait Algebra {
    type Elem: Clone;

    fn name(&self) -> String;
    fn zero(&self) -> Self::Elem;
    /// `None` for non-unital carriers.
    fn unit(&self) -> Option<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;

    fn is_commutative(&self) -> bool {
        false
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn eq_elem(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_zero(&self.sub(a, b))
    }

    fn unit_elem(&self) -> Self::Elem {
        self.unit().expect("operation requires a unital carrier")
    }

    fn sum<'a, I: IntoIterator<Item = &'a Self::Elem>>(&self, items: I) -> Self::Elem
    where
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }
}

/// A Rota-Baxter algebra of weight theta: a linear operator `R` with
/// `R(a)R(b) = R(R(a)b + aR(b)) + theta R(ab)`.
pub trait RbAlgebra: Algebra {
    fn weight(&self) -> Rational;
    fn rb(&self, a: &Self::Elem) -> Self::Elem;

    /// The conjugate operator `-theta id - R`, Rota-Baxter of the same weight.
    fn rb_tilde(&self, a: &Self::Elem) -> Self::Elem {
        self.neg(&self.add(&self.scalar_mul(&self.weight(), a), &self.rb(a)))
    }
}

/// The same carrier with `R` replaced by its conjugate.
pub struct ConjugateRba<'a, A: RbAlgebra>(pub &'a A);

impl<A: RbAlgebra> Algebra for ConjugateRba<'_, A> {
    type Elem = A::Elem;

    fn name(&self) -> String {
        format!("conjugate({})", self.0.name())
    }
    fn zero(&self) -> Self::Elem {
        self.0.zero()
    }
    fn unit(&self) -> Option<Self::Elem> {
        self.0.unit()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.0.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.0.mul(a, b)
    }
    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem {
        self.0.scalar_mul(c, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.0.is_zero(a)
    }
    fn is_commutative(&self) -> bool {
        self.0.is_commutative()
    }
}

impl<A: RbAlgebra> RbAlgebra for ConjugateRba<'_, A> {
    fn weight(&self) -> Rational {
        self.0.weight()
    }
    fn rb(&self, a: &Self::Elem) -> Self::Elem {
        self.0.rb_tilde(a)
    }
}

/// The same carrier with the operator scaled: `lambda R` has weight
/// `lambda theta`, so scaling a weight-one operator realizes every weight.
pub struct ScaledRba<'a, A: RbAlgebra> {
    pub base: &'a A,
    pub factor: Rational,
}

impl<'a, A: RbAlgebra> ScaledRba<'a, A> {
    pub fn new(base: &'a A, factor: Rational) -> Self {
        ScaledRba { base, factor }
    }
}

impl<A: RbAlgebra> Algebra for ScaledRba<'_, A> {
    type Elem = A::Elem;

    fn name(&self) -> String {
        format!("scaled({}, {})", self.base.name(), self.factor)
    }
    fn zero(&self) -> Self::Elem {
        self.base.zero()
    }
    fn unit(&self) -> Option<Self::Elem> {
        self.base.unit()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.base.add(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        self.base.neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.base.mul(a, b)
    }
    fn scalar_mul(&self, c: &Rational, a: &Self::Elem) -> Self::Elem {
        self.base.scalar_mul(c, a)
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(a)
    }
    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }
}

impl<A: RbAlgebra> RbAlgebra for ScaledRba<'_, A> {
    fn weight(&self) -> Rational {
        &self.factor * &self.base.weight()
    }
    fn rb(&self, a: &Self::Elem) -> Self::Elem {
        self.base.scalar_mul(&self.factor, &self.base.rb(a))
    }
}

/// `R(a)R(b) - R(R(a)b + aR(b)) - theta R(ab)`; the Rota-Baxter relation
/// holds iff this vanishes.
pub fn rb_residual<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    let ra = alg.rb(a);
    let rb = alg.rb(b);
    let lhs = alg.mul(&ra, &rb);
    let inner = alg.add(&alg.mul(&ra, b), &alg.mul(a, &rb));
    let weighted = alg.scalar_mul(&alg.weight(), &alg.rb(&alg.mul(a, b)));
    alg.sub(&alg.sub(&lhs, &alg.rb(&inner)), &weighted)
}

/// The double product `a *_R b = R(a)b + aR(b) + theta ab`.
pub fn double_product<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    let main = alg.add(&alg.mul(&alg.rb(a), b), &alg.mul(a, &alg.rb(b)));
    alg.add(&main, &alg.scalar_mul(&alg.weight(), &alg.mul(a, b)))
}

/// The left pre-Lie product `a o_R b = R(a)b - bR(a) - theta ba`,
/// equivalently `R(a)b + b R~(a)`.
pub fn prelie<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    let ra = alg.rb(a);
    let comm = alg.sub(&alg.mul(&ra, b), &alg.mul(b, &ra));
    alg.sub(&comm, &alg.scalar_mul(&alg.weight(), &alg.mul(b, a)))
}

/// The mirror pre-Lie product `aR(b) - R(b)a - theta ba`, used by the
/// right-nested Bohnenblust-Spitzer rule.
pub fn prelie_mirror<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    let rb = alg.rb(b);
    let comm = alg.sub(&alg.mul(a, &rb), &alg.mul(&rb, a));
    alg.sub(&comm, &alg.scalar_mul(&alg.weight(), &alg.mul(b, a)))
}

/// The dendriform splitting `(a <_R b, a >_R b) = (-a R~(b), R(a)b)`;
/// the two halves sum to the double product.
pub fn dendriform<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> (A::Elem, A::Elem) {
    let left = alg.neg(&alg.mul(a, &alg.rb_tilde(b)));
    let right = alg.mul(&alg.rb(a), b);
    (left, right)
}

/// Left pre-Lie defect `(a.b).c - a.(b.c) - (b.a).c + b.(a.c)`.
pub fn prelie_residual<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem, c: &A::Elem) -> A::Elem {
    let ab_c = prelie(alg, &prelie(alg, a, b), c);
    let a_bc = prelie(alg, a, &prelie(alg, b, c));
    let ba_c = prelie(alg, &prelie(alg, b, a), c);
    let b_ac = prelie(alg, b, &prelie(alg, a, c));
    alg.add(&alg.sub(&ab_c, &a_bc), &alg.sub(&b_ac, &ba_c))
}

/// Residual of the Rota-Baxter relation taken with respect to the pre-Lie
/// product: `R(a).R(b) - R(R(a).b + a.R(b) + theta a.b)`.
pub fn rb_prelie_residual<A: RbAlgebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    let ra = alg.rb(a);
    let rb = alg.rb(b);
    let lhs = prelie(alg, &ra, &rb);
    let inner = alg.add(
        &alg.add(&prelie(alg, &ra, b), &prelie(alg, a, &rb)),
        &alg.scalar_mul(&alg.weight(), &prelie(alg, a, b)),
    );
    alg.sub(&lhs, &alg.rb(&inner))
}

/// `ab - ba`.
pub fn lie_bracket<A: Algebra>(alg: &A, a: &A::Elem, b: &A::Elem) -> A::Elem {
    alg.sub(&alg.mul(a, b), &alg.mul(b, a))
}

/// The left Spitzer iterate `(Ra)^[n]`: `(Ra)^[0] = 1`,
/// `(Ra)^[n+1] = R((Ra)^[n] a)`.
pub fn iterate_left<A: RbAlgebra>(alg: &A, a: &A::Elem, n: usize) -> A::Elem {
    let mut acc = alg.unit_elem();
    for _ in 0..n {
        acc = alg.rb(&alg.mul(&acc, a));
    }
    acc
}

/// The right Spitzer iterate `(Ra)^{n}`: `(Ra)^{0} = 1`,
/// `(Ra)^{n+1} = R(a (Ra)^{n})`.
pub fn iterate_right<A: RbAlgebra>(alg: &A, a: &A::Elem, n: usize) -> A::Elem {
    let mut acc = alg.unit_elem();
    for _ in 0..n {
        acc = alg.rb(&alg.mul(a, &acc));
    }
    acc
}

/// The left-nested pre-Lie word `c^(n)(a_1,...,a_n)`; `c^(1)(a) = a`.
/// Panics on an empty argument list.
pub fn c_word<A: RbAlgebra>(alg: &A, elems: &[A::Elem]) -> A::Elem {
    assert!(!elems.is_empty(), "c-word of an empty argument list");
    let mut acc = elems[0].clone();
    for e in &elems[1..] {
        acc = prelie(alg, &acc, e);
    }
    acc
}

/// `c^(n)(a) = c^(n)(a,...,a)`.
pub fn c_word_iterated<A: RbAlgebra>(alg: &A, a: &A::Elem, n: usize) -> A::Elem {
    assert!(n >= 1, "c-word needs n >= 1");
    let mut acc = a.clone();
    for _ in 1..n {
        acc = prelie(alg, &acc, a);
    }
    acc
}

/// `C^(n)(a) = R(c^(n)(a))`.
pub fn c_word_r<A: RbAlgebra>(alg: &A, a: &A::Elem, n: usize) -> A::Elem {
    assert!(n >= 1, "C-word needs n >= 1");
    alg.rb(&c_word_iterated(alg, a, n))
}

/// All compositions of `n` into strictly positive parts, in lexicographic
/// order of the part sequences.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            let mut comp = vec![first];
            comp.append(&mut rest);
            out.push(comp);
        }
    }
    out
}

/// Degree-`n` component of the inverse Dynkin map applied to the graded
/// sequence `h` (`h[j-1]` is the degree-`j` component):
/// the sum over compositions `i1+...+ik = n` of
/// `h_{i1} ... h_{ik} / (i1 (i1+i2) ... (i1+...+ik))`.
pub fn gamma_component<A: Algebra>(alg: &A, h: &[A::Elem], n: usize) -> A::Elem {
    assert!(
        n >= 1 && n <= h.len(),
        "gamma component degree out of range"
    );
    let mut total = alg.zero();
    for comp in compositions(n) {
        let mut denom = Rational::one();
        let mut partial = 0usize;
        let mut term: Option<A::Elem> = None;
        for &part in &comp {
            partial += part;
            denom *= crate::rational::rat(partial as i64);
            term = Some(match term {
                None => h[part - 1].clone(),
                Some(t) => alg.mul(&t, &h[part - 1]),
            });
        }
        let term = term.expect("compositions of n >= 1 are nonempty");
        total = alg.add(&total, &alg.scalar_mul(&denom.recip(), &term));
    }
    total
}

/// The same composition sum with the telescoping denominators factored out:
/// every composition of `n` ends in some part `q`, and its denominator is
/// the prefix's denominator times `n`, so
/// `Gamma_n = (1/n) sum_q Gamma_{n-q} h_q` with `Gamma_0 = 1`.
/// Pulls partial sums together instead of materializing every composition's
/// product, which matters on big carriers.
pub fn gamma_component_horner<A: Algebra>(alg: &A, h: &[A::Elem], n: usize) -> A::Elem {
    assert!(
        n >= 1 && n <= h.len(),
        "gamma component degree out of range"
    );
    let mut partials: Vec<A::Elem> = vec![alg.unit_elem()];
    for m in 1..=n {
        let mut acc = alg.zero();
        for q in 1..=m {
            acc = alg.add(&acc, &alg.mul(&partials[m - q], &h[q - 1]));
        }
        partials.push(alg.scalar_mul(&crate::rational::rat(m as i64).recip(), &acc));
    }
    partials.pop().unwrap()
}
