//! The Spitzer Hopf algebra `S` (free on divided-powers generators `E_n`)
//! and the double Spitzer Hopf algebra `C` (free on generators `F_n`),
//! with coproduct, antipode (computed by the graded-connected recursion, so
//! the closed antipode formulas stay genuine checks), convolution, the
//! Dynkin operator `D = S * N`, its inverse `Gamma`, and the evaluation
//! morphisms into the standard Rota-Baxter carrier.
//!
//! Generator grading: `E_n` has degree `n` (n >= 1, `E_0` is the unit);
//! `F_n` has degree `n + 1` (n >= 0, `F_{-1}` is the unit).

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};

use crate::ncpoly::NcPoly;
use crate::rational::{rat, Rational};
use crate::rb_core::{self, Algebra};
use crate::seq_rba::{PolySeq, StandardRba};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum HopfTag {
    /// Generators `E_n = (RX)^[n]`, pointwise product.
    Spitzer,
    /// Generators `F_n = (RX)^[n] X`, double product.
    DoubleSpitzer,
}

/// A word in abstract generator indices.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct GenWord {
    letters: Vec<u32>,
}

impl GenWord {
    pub fn new(letters: Vec<u32>) -> Self {
        GenWord { letters }
    }

    pub fn empty() -> Self {
        GenWord::default()
    }

    pub fn letters(&self) -> &[u32] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn concat(&self, other: &GenWord) -> GenWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        GenWord { letters }
    }

    pub fn degree(&self, tag: HopfTag) -> usize {
        match tag {
            HopfTag::Spitzer => self.letters.iter().map(|&n| n as usize).sum(),
            HopfTag::DoubleSpitzer => self.letters.iter().map(|&n| n as usize + 1).sum(),
        }
    }
}

/// An element of `S` or `C`: a rational linear combination of generator
/// words, sorted with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HopfElem {
    tag: HopfTag,
    terms: Vec<(GenWord, Rational)>,
}

impl HopfElem {
    pub fn zero(tag: HopfTag) -> Self {
        HopfElem { tag, terms: vec![] }
    }

    pub fn one(tag: HopfTag) -> Self {
        HopfElem::from_word(tag, GenWord::empty())
    }

    pub fn from_word(tag: HopfTag, w: GenWord) -> Self {
        if let HopfTag::Spitzer = tag {
            assert!(
                w.letters().iter().all(|&n| n >= 1),
                "E_0 is the unit, not a letter"
            );
        }
        HopfElem {
            tag,
            terms: vec![(w, Rational::one())],
        }
    }

    /// `E_n`; `E_0` is the unit word.
    pub fn s_gen(n: u32) -> Self {
        if n == 0 {
            HopfElem::one(HopfTag::Spitzer)
        } else {
            HopfElem::from_word(HopfTag::Spitzer, GenWord::new(vec![n]))
        }
    }

    /// `F_n`, degree `n + 1`.
    pub fn c_gen(n: u32) -> Self {
        HopfElem::from_word(HopfTag::DoubleSpitzer, GenWord::new(vec![n]))
    }

    pub fn tag(&self) -> HopfTag {
        self.tag
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GenWord, &Rational)> {
        self.terms.iter().map(|(w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, w: &GenWord) -> Rational {
        match self.terms.binary_search_by(|(t, _)| t.cmp(w)) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    fn normalize(tag: HopfTag, mut terms: Vec<(GenWord, Rational)>) -> Self {
        terms.sort_unstable_by(|(a, _), (b, _)| a.cmp(b));
        let mut out: Vec<(GenWord, Rational)> = Vec::with_capacity(terms.len());
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
        HopfElem { tag, terms: out }
    }

    pub fn add(&self, other: &HopfElem) -> HopfElem {
        assert_eq!(self.tag, other.tag);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        HopfElem::normalize(self.tag, terms)
    }

    pub fn sub(&self, other: &HopfElem) -> HopfElem {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, c: &Rational) -> HopfElem {
        if c.is_zero() {
            return HopfElem::zero(self.tag);
        }
        HopfElem {
            tag: self.tag,
            terms: self
                .terms
                .iter()
                .map(|(w, a)| (w.clone(), a * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &HopfElem) -> HopfElem {
        assert_eq!(self.tag, other.tag);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (u, c) in &self.terms {
            for (v, d) in &other.terms {
                terms.push((u.concat(v), c * d));
            }
        }
        HopfElem::normalize(self.tag, terms)
    }

    /// Degree of the top word, for truncation-length choices.
    pub fn max_degree(&self) -> usize {
        self.terms
            .iter()
            .map(|(w, _)| w.degree(self.tag))
            .max()
            .unwrap_or(0)
    }

    pub fn json_terms(&self) -> Vec<crate::ncpoly::TermJson> {
        self.terms
            .iter()
            .rev()
            .map(|(w, c)| crate::ncpoly::TermJson {
                coeff: c.to_string(),
                word: w.letters().to_vec(),
            })
            .collect()
    }
}

impl fmt::Display for HopfElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let letter = |n: &u32| match self.tag {
            HopfTag::Spitzer => format!("E{n}"),
            HopfTag::DoubleSpitzer => format!("F{n}"),
        };
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
            let body = if w.is_empty() {
                "1".to_string()
            } else {
                w.letters().iter().map(letter).collect::<Vec<_>>().join("*")
            };
            if w.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{body}")?;
            } else {
                write!(f, "{mag}*{body}")?;
            }
        }
        Ok(())
    }
}

/// The ambient algebra handle, used for the generic composition machinery.
#[derive(Clone, Copy, Debug)]
pub struct HopfOps {
    pub tag: HopfTag,
}

impl Algebra for HopfOps {
    type Elem = HopfElem;

    fn name(&self) -> String {
        match self.tag {
            HopfTag::Spitzer => "spitzer-hopf".into(),
            HopfTag::DoubleSpitzer => "double-spitzer-hopf".into(),
        }
    }
    fn zero(&self) -> HopfElem {
        HopfElem::zero(self.tag)
    }
    fn unit(&self) -> Option<HopfElem> {
        Some(HopfElem::one(self.tag))
    }
    fn add(&self, a: &HopfElem, b: &HopfElem) -> HopfElem {
        a.add(b)
    }
    fn neg(&self, a: &HopfElem) -> HopfElem {
        a.scale(&-Rational::one())
    }
    fn mul(&self, a: &HopfElem, b: &HopfElem) -> HopfElem {
        a.mul(b)
    }
    fn scalar_mul(&self, c: &Rational, a: &HopfElem) -> HopfElem {
        a.scale(c)
    }
    fn is_zero(&self, a: &HopfElem) -> bool {
        a.is_zero()
    }
}

/// An element of `H (x) H`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TensorElem {
    tag: HopfTag,
    terms: Vec<((GenWord, GenWord), Rational)>,
}

impl TensorElem {
    pub fn zero(tag: HopfTag) -> Self {
        TensorElem { tag, terms: vec![] }
    }

    fn normalize(tag: HopfTag, mut terms: Vec<((GenWord, GenWord), Rational)>) -> Self {
        terms.sort_unstable_by(|(a, _), (b, _)| a.cmp(b));
        let mut out: Vec<((GenWord, GenWord), Rational)> = Vec::with_capacity(terms.len());
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
        TensorElem { tag, terms: out }
    }

    /// `a (x) b`, bilinearly.
    pub fn from_pair(a: &HopfElem, b: &HopfElem) -> TensorElem {
        assert_eq!(a.tag, b.tag);
        let mut terms = Vec::new();
        for (u, c) in &a.terms {
            for (v, d) in &b.terms {
                terms.push(((u.clone(), v.clone()), c * d));
            }
        }
        TensorElem::normalize(a.tag, terms)
    }

    pub fn add(&self, other: &TensorElem) -> TensorElem {
        assert_eq!(self.tag, other.tag);
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        TensorElem::normalize(self.tag, terms)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(GenWord, GenWord), &Rational)> {
        self.terms.iter().map(|(w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Swap the two tensor legs.
    pub fn flip(&self) -> TensorElem {
        TensorElem::normalize(
            self.tag,
            self.terms
                .iter()
                .map(|((u, v), c)| ((v.clone(), u.clone()), c.clone()))
                .collect(),
        )
    }
}

/// Coproduct of one generator letter, as pairs of optional letters (None is
/// the empty contribution); every coefficient is one.
fn letter_coproduct(tag: HopfTag, n: u32) -> Vec<(Option<u32>, Option<u32>)> {
    match tag {
        // divided powers: sum over splittings of the index
        HopfTag::Spitzer => (0..=n)
            .map(|m| {
                let left = (m >= 1).then_some(m);
                let right = (n - m >= 1).then_some(n - m);
                (left, right)
            })
            .collect(),
        // 1 (x) F_n + sum F_{n-1-m} (x) F_m + F_n (x) 1
        HopfTag::DoubleSpitzer => {
            let mut out = vec![(None, Some(n)), (Some(n), None)];
            for m in 0..n {
                out.push((Some(n - 1 - m), Some(m)));
            }
            out
        }
    }
}

/// The coproduct, extended multiplicatively from the generator formulas.
pub fn coproduct(elem: &HopfElem) -> TensorElem {
    let tag = elem.tag;
    let mut out_terms = Vec::new();
    for (w, coeff) in &elem.terms {
        let mut partial: Vec<(GenWord, GenWord, Rational)> =
            vec![(GenWord::empty(), GenWord::empty(), coeff.clone())];
        for &letter in w.letters() {
            let splits = letter_coproduct(tag, letter);
            let mut next = Vec::with_capacity(partial.len() * splits.len());
            for (left, right, c) in &partial {
                for (l, r) in &splits {
                    let mut left = left.clone();
                    if let Some(a) = l {
                        left.letters.push(*a);
                    }
                    let mut right = right.clone();
                    if let Some(b) = r {
                        right.letters.push(*b);
                    }
                    next.push((left, right, c.clone()));
                }
            }
            partial = next;
        }
        out_terms.extend(partial.into_iter().map(|(l, r, c)| ((l, r), c)));
    }
    TensorElem::normalize(tag, out_terms)
}

/// Counit: the coefficient of the empty word.
pub fn counit(elem: &HopfElem) -> Rational {
    elem.coeff(&GenWord::empty())
}

thread_local! {
    // antipode values are canonical per (tag, word); memoized across calls
    static ANTIPODE_CACHE: std::cell::RefCell<[HashMap<GenWord, HopfElem>; 2]> =
        std::cell::RefCell::new([HashMap::new(), HashMap::new()]);
}

fn cache_slot(tag: HopfTag) -> usize {
    match tag {
        HopfTag::Spitzer => 0,
        HopfTag::DoubleSpitzer => 1,
    }
}

fn antipode_word(tag: HopfTag, w: &GenWord) -> HopfElem {
    if w.is_empty() {
        return HopfElem::one(tag);
    }
    let hit = ANTIPODE_CACHE.with(|c| c.borrow()[cache_slot(tag)].get(w).cloned());
    if let Some(hit) = hit {
        return hit;
    }
    // S(w) = - sum S(w') w'' over the coproduct terms with w'' nonempty
    let delta = coproduct(&HopfElem::from_word(tag, w.clone()));
    let mut acc = HopfElem::zero(tag);
    for ((w1, w2), c) in delta.terms() {
        if w2.is_empty() {
            continue;
        }
        let s_w1 = antipode_word(tag, w1);
        acc = acc.add(&s_w1.mul(&HopfElem::from_word(tag, w2.clone())).scale(c));
    }
    let result = acc.scale(&-Rational::one());
    ANTIPODE_CACHE.with(|c| {
        c.borrow_mut()[cache_slot(tag)].insert(w.clone(), result.clone());
    });
    result
}

/// The antipode, by the graded-connected recursion
/// `S(w) = -sum S(w_(1)) w_(2)` over the reduced coproduct.
pub fn antipode(elem: &HopfElem) -> HopfElem {
    let mut acc = HopfElem::zero(elem.tag);
    for (w, c) in &elem.terms {
        acc = acc.add(&antipode_word(elem.tag, w).scale(c));
    }
    acc
}

/// Convolution `(f * g)(w) = sum f(w_(1)) g(w_(2))` of linear endomorphisms.
pub fn convolution<F, G>(f: F, g: G, elem: &HopfElem) -> HopfElem
where
    F: Fn(&HopfElem) -> HopfElem,
    G: Fn(&HopfElem) -> HopfElem,
{
    let tag = elem.tag;
    let delta = coproduct(elem);
    let mut acc = HopfElem::zero(tag);
    for ((w1, w2), c) in delta.terms() {
        let left = f(&HopfElem::from_word(tag, w1.clone()));
        let right = g(&HopfElem::from_word(tag, w2.clone()));
        acc = acc.add(&left.mul(&right).scale(c));
    }
    acc
}

/// The grading operator `N`: each word scaled by its degree.
pub fn grading(elem: &HopfElem) -> HopfElem {
    let tag = elem.tag;
    HopfElem::normalize(
        tag,
        elem.terms
            .iter()
            .map(|(w, c)| (w.clone(), c * rat(w.degree(tag) as i64)))
            .collect(),
    )
}

/// The Dynkin operator `D = S * N`.
pub fn dynkin(elem: &HopfElem) -> HopfElem {
    convolution(antipode, grading, elem)
}

/// True iff the element is primitive: `Delta(w) = w (x) 1 + 1 (x) w`.
pub fn primitive_check(elem: &HopfElem) -> bool {
    let expected = TensorElem::from_pair(elem, &HopfElem::one(elem.tag))
        .add(&TensorElem::from_pair(&HopfElem::one(elem.tag), elem));
    coproduct(elem) == expected
}

/// The inverse Dynkin map: given graded components `h[j-1]` of degree `j`,
/// returns `1 + sum over degrees n of the composition sum
/// h_{i1}...h_{ik} / (i1 (i1+i2) ... (i1+...+ik))`, truncated at `h.len()`.
pub fn gamma(h: &[HopfElem]) -> HopfElem {
    assert!(!h.is_empty());
    let ops = HopfOps { tag: h[0].tag };
    let mut acc = ops.unit_elem();
    for n in 1..=h.len() {
        acc = acc.add(&rb_core::gamma_component(&ops, h, n));
    }
    acc
}

/// Evaluation of `S` into the standard carrier: `E_n -> (RX)^[n]`, words by
/// the pointwise product.
///
/// Terms are grouped by their last letter and evaluated recursively
/// (`sum c_w eval(w') . E_l` for each last letter `l`), which is the same
/// bilinear expression but lets partial sums cancel early instead of
/// carrying every word's product separately.
pub fn eval_s(elem: &HopfElem, alg: &StandardRba) -> PolySeq {
    assert_eq!(elem.tag, HopfTag::Spitzer);
    let x = alg.generator();
    let mut gen_values: HashMap<u32, PolySeq> = HashMap::new();
    let terms: Vec<(&[u32], Rational)> = elem
        .terms
        .iter()
        .map(|(w, c)| (w.letters(), c.clone()))
        .collect();
    eval_s_grouped(&terms, alg, &x, &mut gen_values)
}

fn eval_s_grouped(
    terms: &[(&[u32], Rational)],
    alg: &StandardRba,
    x: &PolySeq,
    gen_values: &mut HashMap<u32, PolySeq>,
) -> PolySeq {
    let mut scalar = Rational::zero();
    let mut groups: std::collections::BTreeMap<u32, Vec<(&[u32], Rational)>> =
        std::collections::BTreeMap::new();
    for (w, c) in terms {
        match w.split_last() {
            None => scalar += c,
            Some((&last, prefix)) => groups.entry(last).or_default().push((prefix, c.clone())),
        }
    }
    let mut acc = alg.scalar_mul(&scalar, &alg.unit_elem());
    for (letter, sub) in groups {
        let prefix_value = eval_s_grouped(&sub, alg, x, gen_values);
        let gen_value = gen_values
            .entry(letter)
            .or_insert_with(|| rb_core::iterate_left(alg, x, letter as usize))
            .clone();
        acc = alg.add(&acc, &alg.mul(&prefix_value, &gen_value));
    }
    acc
}

/// An element of the unitization of the double-product algebra: a formal
/// scalar multiple of the unit plus a carrier element.
#[derive(Clone, Debug)]
pub struct CEval {
    pub scalar: Rational,
    pub seq: PolySeq,
}

impl CEval {
    pub fn is_pure_seq(&self) -> bool {
        self.scalar.is_zero()
    }
}

/// Evaluation of `C`: `F_n -> (RX)^[n] X`, words joined by the double
/// product, the abstract unit as a formal scalar summand.
///
/// As in `eval_s`, terms are grouped by their last letter: the evaluation of
/// `sum c_w (w' l)` is `(sum c_w eval(w')) *_R F_l` by bilinearity, with the
/// unitization scalar acting as `s *_R b = s b`.
pub fn eval_c(elem: &HopfElem, alg: &StandardRba) -> CEval {
    assert_eq!(elem.tag, HopfTag::DoubleSpitzer);
    let x = alg.generator();
    let mut gen_values: HashMap<u32, PolySeq> = HashMap::new();
    let terms: Vec<(&[u32], Rational)> = elem
        .terms
        .iter()
        .map(|(w, c)| (w.letters(), c.clone()))
        .collect();
    eval_c_grouped(&terms, alg, &x, &mut gen_values)
}

fn eval_c_grouped(
    terms: &[(&[u32], Rational)],
    alg: &StandardRba,
    x: &PolySeq,
    gen_values: &mut HashMap<u32, PolySeq>,
) -> CEval {
    let mut scalar = Rational::zero();
    let mut groups: std::collections::BTreeMap<u32, Vec<(&[u32], Rational)>> =
        std::collections::BTreeMap::new();
    for (w, c) in terms {
        match w.split_last() {
            None => scalar += c,
            Some((&last, prefix)) => groups.entry(last).or_default().push((prefix, c.clone())),
        }
    }
    let mut seq = alg.zero();
    for (letter, sub) in groups {
        let prefix_value = eval_c_grouped(&sub, alg, x, gen_values);
        let gen_value = gen_values
            .entry(letter)
            .or_insert_with(|| alg.mul(&rb_core::iterate_left(alg, x, letter as usize), x))
            .clone();
        // (s + a) *_R b = s b + a *_R b
        let mut contribution = alg.scalar_mul(&prefix_value.scalar, &gen_value);
        if !alg.is_zero(&prefix_value.seq) {
            contribution = alg.add(
                &contribution,
                &rb_core::double_product(alg, &prefix_value.seq, &gen_value),
            );
        }
        seq = alg.add(&seq, &contribution);
    }
    CEval { scalar, seq }
}

/// The classical Dynkin operator on the tensor algebra: each word
/// `x_{i1}...x_{in}` goes to the left-nested bracket
/// `[...[[x_{i1}, x_{i2}], x_{i3}]..., x_{in}]`, extended linearly.
/// Constants map to zero.
pub fn dynkin_bracket(p: &NcPoly) -> NcPoly {
    let mut acc = NcPoly::zero();
    for (w, c) in p.terms() {
        if w.is_empty() {
            continue;
        }
        let letters = w.letters();
        let mut bracket = NcPoly::var(letters[0]);
        for &l in &letters[1..] {
            let xl = NcPoly::var(l);
            bracket = &(&bracket * &xl) - &(&xl * &bracket);
        }
        acc = &acc + &bracket.scalar_mul(c);
    }
    acc
}

/// Truncation length sufficient to decide identities of the element's degree.
pub fn eval_length(elem: &HopfElem) -> usize {
    crate::seq_rba::required_length(elem.max_degree())
}

/// All degree-`n` words of `S` (compositions of `n` as generator words).
pub fn s_words_of_degree(n: usize) -> Vec<GenWord> {
    rb_core::compositions(n)
        .into_iter()
        .map(|c| GenWord::new(c.into_iter().map(|p| p as u32).collect()))
        .collect()
}

/// All degree-`n` words of `C`: compositions of `n`, each part `p` giving
/// the letter `F_{p-1}`.
pub fn c_words_of_degree(n: usize) -> Vec<GenWord> {
    rb_core::compositions(n)
        .into_iter()
        .map(|c| GenWord::new(c.into_iter().map(|p| (p - 1) as u32).collect()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use crate::rb_core::{c_word_iterated, c_word_r, iterate_right, ConjugateRba};

    fn s_word(letters: &[u32]) -> HopfElem {
        HopfElem::from_word(HopfTag::Spitzer, GenWord::new(letters.to_vec()))
    }

    fn c_word_elem(letters: &[u32]) -> HopfElem {
        HopfElem::from_word(HopfTag::DoubleSpitzer, GenWord::new(letters.to_vec()))
    }

    #[test]
    fn coproduct_of_divided_power() {
        // Delta(E_2) = 1 (x) E_2 + E_1 (x) E_1 + E_2 (x) 1
        let delta = coproduct(&HopfElem::s_gen(2));
        let one = HopfElem::one(HopfTag::Spitzer);
        let e1 = HopfElem::s_gen(1);
        let e2 = HopfElem::s_gen(2);
        let expected = TensorElem::from_pair(&one, &e2)
            .add(&TensorElem::from_pair(&e1, &e1))
            .add(&TensorElem::from_pair(&e2, &one));
        assert_eq!(delta, expected);
    }

    #[test]
    fn coproduct_of_double_generator() {
        // Delta_*(F_1) = 1 (x) F_1 + F_0 (x) F_0 + F_1 (x) 1
        let delta = coproduct(&HopfElem::c_gen(1));
        let one = HopfElem::one(HopfTag::DoubleSpitzer);
        let f0 = HopfElem::c_gen(0);
        let f1 = HopfElem::c_gen(1);
        let expected = TensorElem::from_pair(&one, &f1)
            .add(&TensorElem::from_pair(&f0, &f0))
            .add(&TensorElem::from_pair(&f1, &one));
        assert_eq!(delta, expected);
    }

    #[test]
    fn coproducts_are_cocommutative_on_generators() {
        for n in 1..=6 {
            let d = coproduct(&HopfElem::s_gen(n));
            assert_eq!(d.flip(), d);
            let d = coproduct(&HopfElem::c_gen(n));
            assert_eq!(d.flip(), d);
        }
    }

    /// (Delta (x) id) Delta = (id (x) Delta) Delta, computed as triples.
    fn coassociativity_holds(elem: &HopfElem) -> bool {
        let tag = elem.tag();
        let mut left: Vec<((GenWord, GenWord, GenWord), Rational)> = Vec::new();
        let mut right: Vec<((GenWord, GenWord, GenWord), Rational)> = Vec::new();
        for ((w1, w2), c) in coproduct(elem).terms() {
            for ((a, b), d) in coproduct(&HopfElem::from_word(tag, w1.clone())).terms() {
                left.push(((a.clone(), b.clone(), w2.clone()), c * d));
            }
            for ((a, b), d) in coproduct(&HopfElem::from_word(tag, w2.clone())).terms() {
                right.push(((w1.clone(), a.clone(), b.clone()), c * d));
            }
        }
        let canon = |mut v: Vec<((GenWord, GenWord, GenWord), Rational)>| {
            v.sort_unstable_by(|(a, _), (b, _)| a.cmp(b));
            let mut out: Vec<((GenWord, GenWord, GenWord), Rational)> = Vec::new();
            for (w, c) in v {
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
            out
        };
        canon(left) == canon(right)
    }

    #[test]
    fn coassociativity_on_generators_and_words() {
        for n in 1..=6 {
            assert!(coassociativity_holds(&HopfElem::s_gen(n)));
            assert!(coassociativity_holds(&HopfElem::c_gen(n - 1)));
        }
        let mut rng = crate::test_rng(81);
        use rand::Rng;
        for _ in 0..20 {
            let len = rng.gen_range(1..4);
            let s_letters: Vec<u32> = (0..len).map(|_| rng.gen_range(1..4)).collect();
            assert!(coassociativity_holds(&s_word(&s_letters)));
            let c_letters: Vec<u32> = (0..len).map(|_| rng.gen_range(0..3)).collect();
            assert!(coassociativity_holds(&c_word_elem(&c_letters)));
        }
    }

    #[test]
    fn counit_property() {
        let w = s_word(&[2, 1]);
        // (id (x) eps) Delta = id
        let mut recovered = HopfElem::zero(HopfTag::Spitzer);
        for ((w1, w2), c) in coproduct(&w).terms() {
            if w2.is_empty() {
                recovered =
                    recovered.add(&HopfElem::from_word(HopfTag::Spitzer, w1.clone()).scale(c));
            }
        }
        assert_eq!(recovered, w);
        assert_eq!(counit(&HopfElem::one(HopfTag::Spitzer)), rat(1));
        assert_eq!(counit(&w), rat(0));
    }

    #[test]
    fn antipode_base_cases() {
        let one = HopfElem::one(HopfTag::Spitzer);
        assert_eq!(antipode(&one), one);
        let e1 = HopfElem::s_gen(1);
        assert_eq!(antipode(&e1), e1.scale(&rat(-1)));
    }

    #[test]
    fn antipode_axiom() {
        // S * id = id * S = unit . counit on sample words of both algebras
        let words: Vec<HopfElem> = vec![
            s_word(&[1]),
            s_word(&[2]),
            s_word(&[1, 1]),
            s_word(&[2, 1]),
            s_word(&[3, 2, 1]),
            c_word_elem(&[0]),
            c_word_elem(&[1, 0]),
            c_word_elem(&[2, 1]),
        ];
        for w in words {
            let conv = convolution(antipode, |x| x.clone(), &w);
            let expected = HopfElem::one(w.tag()).scale(&counit(&w));
            assert_eq!(conv, expected, "antipode axiom on {w}");
            let conv2 = convolution(|x| x.clone(), antipode, &w);
            assert_eq!(conv2, expected);
        }
    }

    #[test]
    fn antipode_closed_form_spitzer() {
        // eval_S(S(E_n)) = -R(X (R~X)^{n-1})
        let alg = StandardRba::new(8);
        let conj = ConjugateRba(&alg);
        let x = alg.generator();
        for n in 1..=6usize {
            let s_en = antipode(&HopfElem::s_gen(n as u32));
            let evaluated = eval_s(&s_en, &alg);
            let mirror = iterate_right(&conj, &x, n - 1);
            let expected = alg.neg(&alg.rb(&alg.mul(&x, &mirror)));
            assert!(
                alg.eq_elem(&evaluated, &expected),
                "antipode closed form at n={n}"
            );
        }
    }

    #[test]
    fn antipode_closed_form_double() {
        // eval_C(S(F_n)) = -(X (R~X)^{n})
        let alg = StandardRba::new(9);
        let conj = ConjugateRba(&alg);
        let x = alg.generator();
        for n in 0..=6usize {
            let s_fn = antipode(&HopfElem::c_gen(n as u32));
            let evaluated = eval_c(&s_fn, &alg);
            assert!(evaluated.is_pure_seq());
            let expected = alg.neg(&alg.mul(&x, &iterate_right(&conj, &x, n)));
            assert!(alg.eq_elem(&evaluated.seq, &expected), "aleluya at n={n}");
        }
    }

    #[test]
    fn antipode_transported_divided_powers() {
        // Delta_*(S(F_n)) = 1 (x) S(F_n) + sum S(F_{n-1-m}) (x) S(F_m)
        //                 + S(F_n) (x) 1
        for n in 0..=5u32 {
            let s: Vec<HopfElem> = (0..=n).map(|m| antipode(&HopfElem::c_gen(m))).collect();
            let one = HopfElem::one(HopfTag::DoubleSpitzer);
            let mut expected = TensorElem::from_pair(&one, &s[n as usize])
                .add(&TensorElem::from_pair(&s[n as usize], &one));
            for m in 0..n {
                expected = expected.add(&TensorElem::from_pair(
                    &s[(n - 1 - m) as usize],
                    &s[m as usize],
                ));
            }
            assert_eq!(
                coproduct(&s[n as usize]),
                expected,
                "transported divided powers at n={n}"
            );
        }
    }

    #[test]
    fn convolution_is_associative() {
        let f = |x: &HopfElem| grading(x);
        let g = |x: &HopfElem| antipode(x);
        let h = |x: &HopfElem| x.clone();
        let words = vec![s_word(&[2, 1]), s_word(&[1, 1, 1]), c_word_elem(&[1, 0])];
        for w in words {
            let fg = |x: &HopfElem| convolution(f, g, x);
            let gh = |x: &HopfElem| convolution(g, h, x);
            let left = convolution(fg, h, &w);
            let right = convolution(f, gh, &w);
            assert_eq!(left, right);
        }
    }

    #[test]
    fn dynkin_on_unit_generator() {
        // D(F_0) = F_0
        let d = dynkin(&HopfElem::c_gen(0));
        assert_eq!(d, HopfElem::c_gen(0));
        // D of the unit vanishes (N(1) = 0)
        assert!(dynkin(&HopfElem::one(HopfTag::Spitzer)).is_zero());
    }

    #[test]
    fn dynkin_images_are_primitive() {
        for n in 1..=6 {
            assert!(primitive_check(&dynkin(&HopfElem::s_gen(n))));
        }
        assert!(!primitive_check(&HopfElem::s_gen(2)));
        assert!(!primitive_check(&HopfElem::one(HopfTag::Spitzer)));
    }

    #[test]
    fn dynkin_of_spitzer_generators() {
        // eval_S(D(E_n)) = C^(n)(X)
        let alg = StandardRba::new(8);
        let x = alg.generator();
        for n in 1..=6usize {
            let d = dynkin(&HopfElem::s_gen(n as u32));
            let evaluated = eval_s(&d, &alg);
            let expected = c_word_r(&alg, &x, n);
            assert!(alg.eq_elem(&evaluated, &expected), "Dynkin on E_{n}");
        }
    }

    #[test]
    fn dynkin_of_double_generators() {
        // eval_C(D(F_{n-1})) = c^(n)(X)
        let alg = StandardRba::new(8);
        let x = alg.generator();
        for n in 1..=6usize {
            let d = dynkin(&HopfElem::c_gen((n - 1) as u32));
            let evaluated = eval_c(&d, &alg);
            assert!(evaluated.is_pure_seq());
            let expected = c_word_iterated(&alg, &x, n);
            assert!(
                alg.eq_elem(&evaluated.seq, &expected),
                "Dynkin on F_{}",
                n - 1
            );
        }
    }

    #[test]
    fn grading_is_convolution_of_id_and_dynkin() {
        // id * D = N on the divided-powers generators
        for n in 1..=6 {
            let e = HopfElem::s_gen(n);
            let conv = convolution(|x| x.clone(), dynkin, &e);
            assert_eq!(conv, grading(&e));
        }
    }

    #[test]
    fn dynkin_quasi_idempotent_abstract() {
        // D^2 = n D on every word of degree n <= 6 in S
        for n in 1..=6usize {
            for w in s_words_of_degree(n) {
                let elem = HopfElem::from_word(HopfTag::Spitzer, w);
                let d = dynkin(&elem);
                let dd = dynkin(&d);
                assert_eq!(dd, d.scale(&rat(n as i64)), "D^2 = nD at degree {n}");
            }
        }
    }

    #[test]
    fn dynkin_quasi_idempotent_bracket() {
        // the classical bracket word on T(X): D(D(w)) = n D(w) for
        // w = x1...xn, n <= 5
        for n in 1..=5usize {
            let word = crate::ncpoly::Word::new((1..=n as u32).collect());
            let w = NcPoly::from_word(word);
            let d = dynkin_bracket(&w);
            let dd = dynkin_bracket(&d);
            assert_eq!(
                dd,
                d.scalar_mul(&rat(n as i64)),
                "bracket D^2 = nD at n={n}"
            );
        }
    }

    #[test]
    fn gamma_exponential_case() {
        // h = (E_1, 0, ..., 0): Gamma is the exponential series of E_1
        let e1 = HopfElem::s_gen(1);
        let mut h = vec![e1.clone()];
        for _ in 1..5 {
            h.push(HopfElem::zero(HopfTag::Spitzer));
        }
        let g = gamma(&h);
        let mut expected = HopfElem::one(HopfTag::Spitzer);
        let mut power = HopfElem::one(HopfTag::Spitzer);
        for k in 1..=5usize {
            power = power.mul(&e1);
            expected = expected.add(&power.scale(&crate::rational::factorial(k).recip()));
        }
        assert_eq!(g, expected);
    }

    #[test]
    fn gamma_inverts_dynkin_on_group_like() {
        // d_n = D(E_n); Gamma(d) = 1 + E_1 + ... + E_6
        let h: Vec<HopfElem> = (1..=6).map(|n| dynkin(&HopfElem::s_gen(n))).collect();
        let g = gamma(&h);
        let mut expected = HopfElem::one(HopfTag::Spitzer);
        for n in 1..=6 {
            expected = expected.add(&HopfElem::s_gen(n));
        }
        assert_eq!(g, expected);
    }

    #[test]
    fn key1_via_gamma_under_evaluation() {
        // gamma over (C^(1)(X), ..., C^(n)(X)) reproduces (RX)^[n]
        let alg = StandardRba::new(8);
        let x = alg.generator();
        for n in 1..=6usize {
            let h: Vec<PolySeq> = (1..=n).map(|k| c_word_r(&alg, &x, k)).collect();
            let got = rb_core::gamma_component(&alg, &h, n);
            let expected = rb_core::iterate_left(&alg, &x, n);
            assert!(alg.eq_elem(&got, &expected), "key1 via gamma at n={n}");
        }
    }

    #[test]
    fn eval_s_entry_and_unit() {
        let alg = StandardRba::new(4);
        let e2 = eval_s(&HopfElem::s_gen(2), &alg);
        assert_eq!(
            e2.entry(3),
            &NcPoly::from_word(crate::ncpoly::Word::new(vec![1, 2]))
        );
        let f0 = eval_c(&HopfElem::c_gen(0), &alg);
        assert!(f0.is_pure_seq());
        assert!(alg.eq_elem(&f0.seq, &alg.generator()));
    }

    #[test]
    fn r_isomorphism() {
        // R(eval_C(F_{i1}...F_{ik})) = eval_S(E_{i1+1}...E_{ik+1}),
        // for all words of degree <= 5
        let alg = StandardRba::new(7);
        for n in 1..=5usize {
            for w in c_words_of_degree(n) {
                let c_elem = HopfElem::from_word(HopfTag::DoubleSpitzer, w.clone());
                let lifted = GenWord::new(w.letters().iter().map(|&i| i + 1).collect());
                let s_elem = HopfElem::from_word(HopfTag::Spitzer, lifted);
                let c_val = eval_c(&c_elem, &alg);
                assert!(c_val.is_pure_seq());
                let lhs = alg.rb(&c_val.seq);
                let rhs = eval_s(&s_elem, &alg);
                assert!(alg.eq_elem(&lhs, &rhs), "R-isomorphism on {c_elem}");
            }
        }
    }

    #[test]
    fn double_spitzer_identity() {
        // (RX)^[n-1] X = sum over compositions of c-words joined by the
        // double product, divided by the telescoping denominators
        let alg = StandardRba::new(8);
        let x = alg.generator();
        for n in 1..=6usize {
            let mut rhs = alg.zero();
            for comp in rb_core::compositions(n) {
                let mut denom = Rational::one();
                let mut partial = 0usize;
                let mut term: Option<PolySeq> = None;
                for part in comp {
                    partial += part;
                    denom *= rat(partial as i64);
                    let c = c_word_iterated(&alg, &x, part);
                    term = Some(match term {
                        None => c,
                        Some(t) => rb_core::double_product(&alg, &t, &c),
                    });
                }
                rhs = alg.add(&rhs, &alg.scalar_mul(&denom.recip(), &term.unwrap()));
            }
            let lhs = alg.mul(&rb_core::iterate_left(&alg, &x, n - 1), &x);
            assert!(alg.eq_elem(&lhs, &rhs), "double Spitzer identity at n={n}");
        }
    }

    #[test]
    fn rendering_uses_generator_names() {
        let e = HopfElem::s_gen(2)
            .mul(&HopfElem::s_gen(1))
            .scale(&ratio(1, 2));
        assert_eq!(e.to_string(), "1/2*E2*E1");
        assert_eq!(HopfElem::one(HopfTag::Spitzer).to_string(), "1");
        assert_eq!(HopfElem::c_gen(0).to_string(), "F0");
    }
}
