//! Quasi-symmetric functions over noncommuting variables: the expansion
//! `M_f X` for a surjection `f: [n] -> [k]`, its truncations `M_f^l`, and the
//! bridge identities expressing the Spitzer iterates entrywise.

use itertools::Itertools;
use thiserror::Error;

use crate::ncpoly::{NcPoly, Word};
use crate::rb_core;
use crate::seq_rba::StandardRba;

/// A surjection `[n] -> [k]` given by its value sequence `f(1), ..., f(n)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Surjection {
    values: Vec<u32>,
}

#[derive(Error, Debug, PartialEq, Eq)]
pub enum SurjectionError {
    #[error("value list must be nonempty")]
    Empty,
    #[error("values must be >= 1 (got {0})")]
    NonPositive(u32),
    #[error("image misses {0}: values must cover 1..=max")]
    NotOnto(u32),
}

impl Surjection {
    pub fn new(values: Vec<u32>) -> Result<Self, SurjectionError> {
        if values.is_empty() {
            return Err(SurjectionError::Empty);
        }
        let mut max = 0;
        for &v in &values {
            if v == 0 {
                return Err(SurjectionError::NonPositive(v));
            }
            max = max.max(v);
        }
        for target in 1..=max {
            if !values.contains(&target) {
                return Err(SurjectionError::NotOnto(target));
            }
        }
        Ok(Surjection { values })
    }

    /// The identity map on `[n]`.
    pub fn identity(n: usize) -> Self {
        Surjection {
            values: (1..=n as u32).collect(),
        }
    }

    /// The order-reversing map `omega_n = (n, n-1, ..., 1)`.
    pub fn reversal(n: usize) -> Self {
        Surjection {
            values: (1..=n as u32).rev().collect(),
        }
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn image_size(&self) -> usize {
        *self.values.iter().max().unwrap() as usize
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }
}

/// Expand `M_f^l X`: the sum over increasing injections of `[k]` into `[l]`
/// (equivalently k-subsets of `[l]` read in increasing order) of the word
/// whose j-th letter is the image of `f(j)`. Zero when `l < k`.
pub fn expand(f: &Surjection, l: usize) -> NcPoly {
    let k = f.image_size();
    let mut out = NcPoly::zero();
    if l < k {
        return out;
    }
    for subset in (1..=l as u32).combinations(k) {
        // subset is increasing; subset[j-1] is the image of j
        let word = Word::new(f.values().iter().map(|&v| subset[(v - 1) as usize]).collect());
        out.add_term(word, num_traits::One::one());
    }
    out
}

/// `M^l_{[n]} X`, the elementary quasi-symmetric function.
pub fn elementary(n: usize, l: usize) -> NcPoly {
    assert!(n >= 1);
    expand(&Surjection::identity(n), l)
}

/// `M^l_{omega_n} X`, the reversed pattern.
pub fn omega(n: usize, l: usize) -> NcPoly {
    assert!(n >= 1);
    expand(&Surjection::reversal(n), l)
}

/// True iff entry `l+1` of `(RX)^[n]` equals `M^l_{[n]} X` and entry `l+1`
/// of `(RX)^{n}` equals `M^l_{omega_n} X`, for every `l` up to `l_max`.
pub fn check_bridge(n: usize, l_max: usize) -> bool {
    let alg = StandardRba::new(l_max + 1);
    let x = alg.generator();
    let left = rb_core::iterate_left(&alg, &x, n);
    let right = rb_core::iterate_right(&alg, &x, n);
    for l in 0..=l_max {
        if left.entry(l + 1) != &elementary(n, l) {
            return false;
        }
        if right.entry(l + 1) != &omega(n, l) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn w(letters: &[u32]) -> Word {
        Word::new(letters.to_vec())
    }

    #[test]
    fn surjection_validation() {
        assert!(Surjection::new(vec![1, 3, 3, 2]).is_ok());
        assert_eq!(Surjection::new(vec![]), Err(SurjectionError::Empty));
        assert_eq!(
            Surjection::new(vec![1, 3]),
            Err(SurjectionError::NotOnto(2))
        );
        assert_eq!(
            Surjection::new(vec![0, 1]),
            Err(SurjectionError::NonPositive(0))
        );
    }

    #[test]
    fn paper_example_truncation_three() {
        let f = Surjection::new(vec![1, 3, 3, 2]).unwrap();
        assert_eq!(expand(&f, 3), NcPoly::from_word(w(&[1, 3, 3, 2])));
    }

    #[test]
    fn paper_example_truncation_four() {
        let f = Surjection::new(vec![1, 3, 3, 2]).unwrap();
        let expected = NcPoly::from_terms(vec![
            (w(&[1, 3, 3, 2]), rat(1)),
            (w(&[1, 4, 4, 2]), rat(1)),
            (w(&[1, 4, 4, 3]), rat(1)),
            (w(&[2, 4, 4, 3]), rat(1)),
        ]);
        assert_eq!(expand(&f, 4), expected);
    }

    #[test]
    fn too_small_truncation_vanishes() {
        let f = Surjection::new(vec![1, 2, 3]).unwrap();
        assert!(expand(&f, 2).is_zero());
    }

    #[test]
    fn elementary_degree_two() {
        let expected = NcPoly::from_terms(vec![
            (w(&[1, 2]), rat(1)),
            (w(&[1, 3]), rat(1)),
            (w(&[2, 3]), rat(1)),
        ]);
        assert_eq!(elementary(2, 3), expected);
    }

    #[test]
    fn omega_degree_two() {
        // Oracle: expand by hand over the 2-subsets of [3], reversed pattern.
        let mut expected = NcPoly::zero();
        for hi in 2..=3u32 {
            for lo in 1..hi {
                expected.add_term(w(&[hi, lo]), rat(1));
            }
        }
        assert_eq!(omega(2, 3), expected);
        assert_eq!(
            omega(2, 3),
            NcPoly::from_terms(vec![
                (w(&[2, 1]), rat(1)),
                (w(&[3, 1]), rat(1)),
                (w(&[3, 2]), rat(1)),
            ])
        );
    }

    #[test]
    fn full_truncation_is_single_word() {
        for n in 1..=4usize {
            let e = elementary(n, n);
            let o = omega(n, n);
            assert_eq!(e, NcPoly::from_word(w(&(1..=n as u32).collect::<Vec<_>>())));
            assert_eq!(
                o,
                NcPoly::from_word(w(&(1..=n as u32).rev().collect::<Vec<_>>()))
            );
        }
    }

    #[test]
    fn term_count_is_binomial() {
        let f = Surjection::new(vec![1, 3, 3, 2]).unwrap();
        for l in 0..=6usize {
            let p = expand(&f, l);
            let k = 3usize;
            let expected = if l < k {
                0
            } else {
                (1..=k).fold(1usize, |acc, i| acc * (l - i + 1) / i)
            };
            assert_eq!(p.num_terms(), expected, "C({l},{k})");
            if !p.is_zero() {
                assert_eq!(p.homogeneous_degree(), Some(4));
            }
        }
    }

    #[test]
    fn stability_under_variable_truncation() {
        let f = Surjection::new(vec![2, 1, 2]).unwrap();
        for l in 0..=5usize {
            let big = expand(&f, l + 1);
            assert_eq!(big.truncate_vars(l as u32), expand(&f, l));
        }
    }

    #[test]
    fn bridge_small_cases() {
        assert!(check_bridge(1, 4));
        assert!(check_bridge(2, 4));
        // n = 2 entries: (0, 0, x1x2, x1x2 + x1x3 + x2x3)
        let alg = StandardRba::new(4);
        let it = crate::rb_core::iterate_left(&alg, &alg.generator(), 2);
        assert!(it.entry(1).is_zero());
        assert!(it.entry(2).is_zero());
        assert_eq!(it.entry(3), &NcPoly::from_word(w(&[1, 2])));
        assert_eq!(
            it.entry(4),
            &NcPoly::from_terms(vec![
                (w(&[1, 2]), rat(1)),
                (w(&[1, 3]), rat(1)),
                (w(&[2, 3]), rat(1)),
            ])
        );
    }

    #[test]
    fn leading_monomial_freeness_comparison() {
        // For equal total degree, the product of elementary pieces is
        // ordered by the lexicographic order of the index sequences.
        let l = 8;
        let mut by_total: std::collections::BTreeMap<usize, Vec<Vec<usize>>> =
            std::collections::BTreeMap::new();
        for comp in crate::rb_core::compositions(5) {
            by_total.entry(5).or_default().push(comp);
        }
        for comp in crate::rb_core::compositions(4) {
            by_total.entry(4).or_default().push(comp);
        }
        for (_, comps) in by_total {
            for a in &comps {
                for b in &comps {
                    let prod = |ns: &[usize]| {
                        ns.iter().fold(NcPoly::one(), |acc, &n| {
                            &acc * &elementary(n, l)
                        })
                    };
                    let pa = prod(a);
                    let pb = prod(b);
                    let sup_less = pa.sup().unwrap() < pb.sup().unwrap();
                    // smaller index sequence <=> larger leading monomial
                    let seq_less = a < b;
                    if a != b {
                        assert_eq!(sup_less, !seq_less, "sequences {a:?} vs {b:?}");
                    }
                }
            }
        }
    }
}
