//! Concrete Rota-Baxter carriers.
//!
//! The standard carrier is the algebra of truncated sequences of
//! noncommutative polynomials with pointwise operations and the shifted
//! partial-sum operator `rho(y1, y2, ...) = (0, y1, y1+y2, ...)`, which is
//! weight-one Rota-Baxter and free on the generator `X = (x1, x2, ...)`.
//! A commutative rational-sequence carrier serves the classical identities,
//! and a weight-zero carrier (truncated polynomial paths under integration)
//! exercises the general-weight code paths.

use num_traits::{One, Zero};
use rand::Rng;
use std::fmt;

use crate::ncpoly::{NcPoly, Word};
use crate::rational::{rat, Rational};
use crate::rb_core::{Algebra, RbAlgebra};

/// A truncated sequence of noncommutative polynomials; entry `p` (1-based)
/// is the component `y_p`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PolySeq {
    entries: Vec<NcPoly>,
}

impl PolySeq {
    pub fn new(entries: Vec<NcPoly>) -> Self {
        assert!(!entries.is_empty(), "sequences have at least one entry");
        PolySeq { entries }
    }

    pub fn zero(len: usize) -> Self {
        PolySeq::new(vec![NcPoly::zero(); len])
    }

    pub fn unit(len: usize) -> Self {
        PolySeq::new(vec![NcPoly::one(); len])
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[NcPoly] {
        &self.entries
    }

    /// 1-based accessor matching the sequence notation: `entry(1) = y_1`.
    pub fn entry(&self, p: usize) -> &NcPoly {
        assert!(p >= 1 && p <= self.entries.len(), "entry index out of range");
        &self.entries[p - 1]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn map<F: Fn(&NcPoly) -> NcPoly>(&self, f: F) -> PolySeq {
        PolySeq::new(self.entries.iter().map(f).collect())
    }

    pub fn zip<F: Fn(&NcPoly, &NcPoly) -> NcPoly>(&self, other: &PolySeq, f: F) -> PolySeq {
        assert_eq!(
            self.len(),
            other.len(),
            "operations on mismatched truncation lengths"
        );
        PolySeq::new(
            self.entries
                .iter()
                .zip(other.entries.iter())
                .map(|(a, b)| f(a, b))
                .collect(),
        )
    }

    pub fn json_entries(&self) -> Vec<Vec<crate::ncpoly::TermJson>> {
        self.entries.iter().map(|e| e.json_terms()).collect()
    }
}

impl fmt::Display for PolySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

/// The shifted partial-sum operator: entry 1 is 0, entry `p+1` is
/// `y_1 + ... + y_p`.
pub fn rho(s: &PolySeq) -> PolySeq {
    let mut entries = Vec::with_capacity(s.len());
    let mut acc = NcPoly::zero();
    for e in s.entries() {
        entries.push(acc.clone());
        acc = &acc + e;
    }
    PolySeq::new(entries)
}

/// The finite-difference left inverse of `rho`: entry `p` of the result is
/// `y_{p+1} - y_p`, so the result is one entry shorter.
pub fn delta(s: &PolySeq) -> PolySeq {
    assert!(s.len() >= 2, "delta needs at least two entries");
    PolySeq::new(
        s.entries()
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .collect(),
    )
}

/// The free generator `X = (x1, ..., xL)`.
pub fn generator(len: usize) -> PolySeq {
    assert!(len >= 1);
    PolySeq::new((1..=len as u32).map(NcPoly::var).collect())
}

/// Truncation length at which a degree-`n` identity in the free algebra is
/// decided faithfully: the first nonzero entries of `(RX)^[n]` sit at
/// position `n+1`, so two extra entries leave room to distinguish shapes.
pub fn required_length(identity_degree: usize) -> usize {
    identity_degree + 2
}

/// Random sequence with small sparse entries, for the randomized contract
/// checks. Variables range over `x1..xL`.
pub fn random_poly_seq<R: Rng>(rng: &mut R, len: usize, max_word_len: usize) -> PolySeq {
    PolySeq::new(
        (0..len)
            .map(|_| {
                let mut p = NcPoly::zero();
                for _ in 0..rng.gen_range(0..3) {
                    let wl = rng.gen_range(0..=max_word_len);
                    let word = Word::new((0..wl).map(|_| rng.gen_range(1..=len as u32)).collect());
                    p.add_term(word, rat(rng.gen_range(-3..=3)));
                }
                p
            })
            .collect(),
    )
}

/// The standard Rota-Baxter algebra at a fixed truncation length:
/// `(PolySeq, rho)`, weight one.
#[derive(Clone, Copy, Debug)]
pub struct StandardRba {
    len: usize,
}

impl StandardRba {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1);
        StandardRba { len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn generator(&self) -> PolySeq {
        generator(self.len)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> PolySeq {
        random_poly_seq(rng, self.len, 2)
    }
}

impl Algebra for StandardRba {
    type Elem = PolySeq;

    fn name(&self) -> String {
        format!("standard(L={})", self.len)
    }
    fn zero(&self) -> PolySeq {
        PolySeq::zero(self.len)
    }
    fn unit(&self) -> Option<PolySeq> {
        Some(PolySeq::unit(self.len))
    }
    fn add(&self, a: &PolySeq, b: &PolySeq) -> PolySeq {
        a.zip(b, |x, y| x + y)
    }
    fn neg(&self, a: &PolySeq) -> PolySeq {
        a.map(|x| -x)
    }
    fn mul(&self, a: &PolySeq, b: &PolySeq) -> PolySeq {
        a.zip(b, |x, y| x * y)
    }
    fn scalar_mul(&self, c: &Rational, a: &PolySeq) -> PolySeq {
        a.map(|x| x.scalar_mul(c))
    }
    fn is_zero(&self, a: &PolySeq) -> bool {
        assert_eq!(a.len(), self.len);
        a.is_zero()
    }
}

impl RbAlgebra for StandardRba {
    fn weight(&self) -> Rational {
        Rational::one()
    }
    fn rb(&self, a: &PolySeq) -> PolySeq {
        assert_eq!(a.len(), self.len);
        rho(a)
    }
}

/// A truncated sequence of rationals: the commutative carrier for the
/// classical Spitzer and Bohnenblust-Spitzer formulas.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RatSeq {
    entries: Vec<Rational>,
}

impl RatSeq {
    pub fn new(entries: Vec<Rational>) -> Self {
        assert!(!entries.is_empty());
        RatSeq { entries }
    }

    pub fn from_ints(values: &[i64]) -> Self {
        RatSeq::new(values.iter().map(|&v| rat(v)).collect())
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }
}

impl fmt::Display for RatSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, ")")
    }
}

pub fn random_rat_seq<R: Rng>(rng: &mut R, len: usize) -> RatSeq {
    RatSeq::new(
        (0..len)
            .map(|_| {
                let num = rng.gen_range(-4i64..=4);
                let den = rng.gen_range(1i64..=3);
                crate::rational::ratio(num, den)
            })
            .collect(),
    )
}

/// `(RatSeq, partial sums)`: a commutative weight-one Rota-Baxter algebra.
#[derive(Clone, Copy, Debug)]
pub struct RatSeqRba {
    len: usize,
}

impl RatSeqRba {
    pub fn new(len: usize) -> Self {
        assert!(len >= 1);
        RatSeqRba { len }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> RatSeq {
        random_rat_seq(rng, self.len)
    }
}

impl Algebra for RatSeqRba {
    type Elem = RatSeq;

    fn name(&self) -> String {
        format!("rational-seq(L={})", self.len)
    }
    fn zero(&self) -> RatSeq {
        RatSeq::new(vec![Rational::zero(); self.len])
    }
    fn unit(&self) -> Option<RatSeq> {
        Some(RatSeq::new(vec![Rational::one(); self.len]))
    }
    fn add(&self, a: &RatSeq, b: &RatSeq) -> RatSeq {
        assert_eq!(a.len(), b.len());
        RatSeq::new(
            a.entries
                .iter()
                .zip(b.entries.iter())
                .map(|(x, y)| x + y)
                .collect(),
        )
    }
    fn neg(&self, a: &RatSeq) -> RatSeq {
        RatSeq::new(a.entries.iter().map(|x| -x.clone()).collect())
    }
    fn mul(&self, a: &RatSeq, b: &RatSeq) -> RatSeq {
        assert_eq!(a.len(), b.len());
        RatSeq::new(
            a.entries
                .iter()
                .zip(b.entries.iter())
                .map(|(x, y)| x * y)
                .collect(),
        )
    }
    fn scalar_mul(&self, c: &Rational, a: &RatSeq) -> RatSeq {
        RatSeq::new(a.entries.iter().map(|x| x * c).collect())
    }
    fn is_zero(&self, a: &RatSeq) -> bool {
        assert_eq!(a.len(), self.len);
        a.entries.iter().all(|x| x.is_zero())
    }
    fn is_commutative(&self) -> bool {
        true
    }
}

impl RbAlgebra for RatSeqRba {
    fn weight(&self) -> Rational {
        Rational::one()
    }
    fn rb(&self, a: &RatSeq) -> RatSeq {
        let mut entries = Vec::with_capacity(a.len());
        let mut acc = Rational::zero();
        for e in a.entries() {
            entries.push(acc.clone());
            acc += e;
        }
        RatSeq::new(entries)
    }
}

/// A polynomial path: coefficients of `u^0..u^D` with noncommutative
/// polynomial values, truncated at degree `D`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UPoly {
    coeffs: Vec<NcPoly>,
}

impl UPoly {
    pub fn new(coeffs: Vec<NcPoly>) -> Self {
        assert!(!coeffs.is_empty());
        UPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[NcPoly] {
        &self.coeffs
    }

    pub fn udeg(&self) -> usize {
        self.coeffs.len() - 1
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { format!("({c})") } else { format!("({c})*u^{k}") })
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Truncated polynomial paths under the integration operator
/// `R(u^k) = u^(k+1)/(k+1)`: a genuine weight-zero Rota-Baxter algebra
/// (the quotient of integration by parts modulo `u^(D+1)`).
#[derive(Clone, Copy, Debug)]
pub struct IntegrationRba {
    udeg: usize,
}

impl IntegrationRba {
    pub fn new(udeg: usize) -> Self {
        assert!(udeg >= 1);
        IntegrationRba { udeg }
    }

    pub fn constant(&self, p: NcPoly) -> UPoly {
        let mut coeffs = vec![NcPoly::zero(); self.udeg + 1];
        coeffs[0] = p;
        UPoly::new(coeffs)
    }

    pub fn monomial(&self, k: usize, p: NcPoly) -> UPoly {
        assert!(k <= self.udeg);
        let mut coeffs = vec![NcPoly::zero(); self.udeg + 1];
        coeffs[k] = p;
        UPoly::new(coeffs)
    }

    pub fn random<R: Rng>(&self, rng: &mut R) -> UPoly {
        UPoly::new(
            (0..=self.udeg)
                .map(|k| {
                    if k <= 2 {
                        let mut p = NcPoly::zero();
                        for _ in 0..rng.gen_range(0..3) {
                            let wl = rng.gen_range(0..3);
                            let word =
                                Word::new((0..wl).map(|_| rng.gen_range(1..4)).collect());
                            p.add_term(word, rat(rng.gen_range(-3..=3)));
                        }
                        p
                    } else {
                        NcPoly::zero()
                    }
                })
                .collect(),
        )
    }
}

impl Algebra for IntegrationRba {
    type Elem = UPoly;

    fn name(&self) -> String {
        format!("integration(D={})", self.udeg)
    }
    fn zero(&self) -> UPoly {
        UPoly::new(vec![NcPoly::zero(); self.udeg + 1])
    }
    fn unit(&self) -> Option<UPoly> {
        Some(self.constant(NcPoly::one()))
    }
    fn add(&self, a: &UPoly, b: &UPoly) -> UPoly {
        assert_eq!(a.udeg(), b.udeg());
        UPoly::new(
            a.coeffs
                .iter()
                .zip(b.coeffs.iter())
                .map(|(x, y)| x + y)
                .collect(),
        )
    }
    fn neg(&self, a: &UPoly) -> UPoly {
        UPoly::new(a.coeffs.iter().map(|x| -x).collect())
    }
    fn mul(&self, a: &UPoly, b: &UPoly) -> UPoly {
        assert_eq!(a.udeg(), b.udeg());
        let mut coeffs = vec![NcPoly::zero(); self.udeg + 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate().take(self.udeg + 1 - i) {
                if y.is_zero() {
                    continue;
                }
                coeffs[i + j] = &coeffs[i + j] + &(x * y);
            }
        }
        UPoly::new(coeffs)
    }
    fn scalar_mul(&self, c: &Rational, a: &UPoly) -> UPoly {
        UPoly::new(a.coeffs.iter().map(|x| x.scalar_mul(c)).collect())
    }
    fn is_zero(&self, a: &UPoly) -> bool {
        assert_eq!(a.udeg(), self.udeg);
        a.coeffs.iter().all(|x| x.is_zero())
    }
}

impl RbAlgebra for IntegrationRba {
    fn weight(&self) -> Rational {
        Rational::zero()
    }
    fn rb(&self, a: &UPoly) -> UPoly {
        let mut coeffs = vec![NcPoly::zero(); self.udeg + 1];
        for (k, c) in a.coeffs.iter().enumerate() {
            if k + 1 <= self.udeg {
                coeffs[k + 1] = c.scalar_mul(&rat(k as i64 + 1).recip());
            }
        }
        UPoly::new(coeffs)
    }
}
