//! Noncommutative polynomials over the countable ordered variable set
//! `x1, x2, ...` — the tensor algebra with word concatenation as product.
//!
//! Words compare in the lexicographic order `<_L`; a proper prefix sorts
//! below its extensions, which is the unique extension across lengths that
//! keeps the leading monomial multiplicative on homogeneous polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::Serialize;
use crate::rational::Rational;

/// A monomial: an ordered word in variable indices (every index >= 1).
/// The empty word is the multiplicative unit.
///
/// The derived `Ord` on the underlying letter vector is exactly `<_L`:
/// letter-by-letter comparison, shorter-prefix-first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Word {
    letters: Vec<u32>,
}

impl Word {
    pub fn new(letters: Vec<u32>) -> Self {
        assert!(
            letters.iter().all(|&i| i >= 1),
            "variable indices start at 1"
        );
        Word { letters }
    }

    pub fn empty() -> Self {
        Word {
            letters: Vec::new(),
        }
    }

    pub fn letter(i: u32) -> Self {
        Word::new(vec![i])
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn degree(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Largest variable index occurring in the word, 0 for the empty word.
    pub fn max_var(&self) -> u32 {
        self.letters.iter().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        let rendered: Vec<String> = self.letters.iter().map(|i| format!("x{i}")).collect();
        write!(f, "{}", rendered.join("*"))
    }
}

/// The strict lexicographic order `u <_L v`.
pub fn lex_less(u: &Word, v: &Word) -> bool {
    u < v
}

/// A noncommutative polynomial: a finite rational linear combination of
/// words. Terms are kept sorted by `<_L` with no zero coefficients, so
/// structural equality is algebraic equality and `sup` is the last term.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct NcPoly {
    terms: Vec<(Word, Rational)>,
}

/// One term of the JSON rendering.
#[derive(Serialize)]
pub struct TermJson {
    pub coeff: String,
    pub word: Vec<u32>,
}

impl NcPoly {
    pub fn zero() -> Self {
        NcPoly::default()
    }

    pub fn one() -> Self {
        NcPoly::from_word(Word::empty())
    }

    /// The variable `x_i`.
    pub fn var(i: u32) -> Self {
        NcPoly::from_word(Word::letter(i))
    }

    pub fn from_word(w: Word) -> Self {
        NcPoly::from_term(w, Rational::one())
    }

    pub fn from_term(w: Word, c: Rational) -> Self {
        let mut p = NcPoly::zero();
        p.add_term(w, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Rational)>>(it: I) -> Self {
        let mut p = NcPoly::zero();
        for (w, c) in it {
            p.add_term(w, c);
        }
        p
    }

    pub fn constant(c: Rational) -> Self {
        NcPoly::from_term(Word::empty(), c)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in `<_L`-ascending order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Rational)> {
        self.terms.iter().map(|(w, c)| (w, c))
    }

    pub fn coeff(&self, w: &Word) -> Rational {
        match self.terms.binary_search_by(|(t, _)| t.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    /// Add `c * w` in place, dropping the term if it cancels.
    pub fn add_term(&mut self, w: Word, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.binary_search_by(|(t, _)| t.cmp(&w)) {
            Ok(i) => {
                self.terms[i].1 += c;
                if self.terms[i].1.is_zero() {
                    self.terms.remove(i);
                }
            }
            Err(i) => self.terms.insert(i, (w, c)),
        }
    }

    /// Sort an unordered term list, combine equal words and drop zeros.
    fn normalize(mut terms: Vec<(Word, Rational)>) -> NcPoly {
        terms.sort_unstable_by(|(u, _), (v, _)| u.cmp(v));
        let mut out: Vec<(Word, Rational)> = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            match out.last_mut() {
                Some((last, acc)) if *last == w => {
                    *acc += c;
                    if acc.is_zero() {
                        out.pop();
                    }
                }
                _ => {
                    if !c.is_zero() {
                        out.push((w, c));
                    }
                }
            }
        }
        NcPoly { terms: out }
    }

    /// Highest monomial for `<_L`. `None` on the zero polynomial, which has
    /// no leading monomial.
    pub fn sup(&self) -> Option<&Word> {
        self.terms.last().map(|(w, _)| w)
    }

    pub fn scalar_mul(&self, c: &Rational) -> NcPoly {
        if c.is_zero() {
            return NcPoly::zero();
        }
        if c.is_one() {
            return self.clone();
        }
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a * c))
                .collect(),
        }
    }

    /// `Some(d)` if every word has degree `d` (the zero polynomial counts as
    /// homogeneous of every degree and reports `Some(0)`).
    pub fn homogeneous_degree(&self) -> Option<usize> {
        let mut degrees = self.terms.iter().map(|(w, _)| w.degree());
        let first = match degrees.next() {
            None => return Some(0),
            Some(d) => d,
        };
        degrees.all(|d| d == first).then_some(first)
    }

    /// Substitute 0 for every variable with index > l.
    pub fn truncate_vars(&self, l: u32) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| w.max_var() <= l)
                .cloned()
                .collect(),
        }
    }

    pub fn json_terms(&self) -> Vec<TermJson> {
        // descending, matching the text rendering
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| TermJson {
                coeff: c.to_string(),
                word: w.letters().to_vec(),
            })
            .collect()
    }
}

fn merge(a: &NcPoly, b: &NcPoly, negate_b: bool) -> NcPoly {
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let mut left = a.terms.iter().peekable();
    let mut right = b.terms.iter().peekable();
    let signed = |c: &Rational| if negate_b { -c.clone() } else { c.clone() };
    loop {
        match (left.peek(), right.peek()) {
            (Some((u, cu)), Some((v, cv))) => match u.cmp(v) {
                std::cmp::Ordering::Less => {
                    out.push((u.clone(), cu.clone()));
                    left.next();
                }
                std::cmp::Ordering::Greater => {
                    out.push((v.clone(), signed(cv)));
                    right.next();
                }
                std::cmp::Ordering::Equal => {
                    let sum = cu.clone() + signed(cv);
                    if !sum.is_zero() {
                        out.push((u.clone(), sum));
                    }
                    left.next();
                    right.next();
                }
            },
            (Some(_), None) => {
                out.extend(left.cloned());
                break;
            }
            (None, Some(_)) => {
                out.extend(right.map(|(v, cv)| (v.clone(), signed(cv))));
                break;
            }
            (None, None) => break,
        }
    }
    NcPoly { terms: out }
}

impl Add for &NcPoly {
    type Output = NcPoly;
    fn add(self, rhs: &NcPoly) -> NcPoly {
        merge(self, rhs, false)
    }
}

impl Sub for &NcPoly {
    type Output = NcPoly;
    fn sub(self, rhs: &NcPoly) -> NcPoly {
        merge(self, rhs, true)
    }
}

impl Neg for &NcPoly {
    type Output = NcPoly;
    fn neg(self) -> NcPoly {
        NcPoly {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), -c.clone()))
                .collect(),
        }
    }
}

impl Mul for &NcPoly {
    type Output = NcPoly;
    fn mul(self, rhs: &NcPoly) -> NcPoly {
        // Left single-term products preserve the term order (right ones do
        // not: appending can reorder words of different lengths).
        if self.terms.len() == 1 {
            let (u, cu) = &self.terms[0];
            return NcPoly {
                terms: rhs
                    .terms
                    .iter()
                    .map(|(v, cv)| (u.concat(v), cu * cv))
                    .collect(),
            };
        }
        let mut products = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for (u, cu) in self.terms.iter() {
            for (v, cv) in rhs.terms.iter() {
                products.push((u.concat(v), cu * cv));
            }
        }
        NcPoly::normalize(products)
    }
}

impl fmt::Display for NcPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // <_L-descending, signed coefficients, unit coefficients elided
        for (k, (w, c)) in self.terms.iter().rev().enumerate() {
            let negative = c < &Rational::zero();
            let mag = if negative { -c.clone() } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{w}")?;
            } else {
                write!(f, "{mag}*{w}")?;
            }
        }
        Ok(())
    }
}
