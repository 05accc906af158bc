//! Exact rank computation over sparse rational rows, for the desk-scale
//! linear-independence checks.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::rational::Rational;

/// Rank of the row span by fraction-exact Gaussian elimination. Rows are
/// sparse maps from an ordered column key to a rational coefficient.
pub fn rank<K: Ord + Clone>(rows: Vec<BTreeMap<K, Rational>>) -> usize {
    let mut rows: Vec<BTreeMap<K, Rational>> =
        rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut rank = 0;
    while !rows.is_empty() {
        // pivot on the smallest leading column among the remaining rows
        let pivot_idx = rows
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| a.keys().next().unwrap().cmp(b.keys().next().unwrap()))
            .map(|(i, _)| i)
            .unwrap();
        let pivot = rows.swap_remove(pivot_idx);
        let (col, lead) = {
            let (k, v) = pivot.iter().next().unwrap();
            (k.clone(), v.clone())
        };
        rank += 1;
        rows = rows
            .into_iter()
            .filter_map(|mut row| {
                if let Some(c) = row.get(&col).cloned() {
                    let factor = c / lead.clone();
                    for (k, v) in pivot.iter() {
                        let entry = row.entry(k.clone()).or_insert_with(Rational::zero);
                        *entry -= &factor * v;
                        if entry.is_zero() {
                            row.remove(k);
                        }
                    }
                }
                (!row.is_empty()).then_some(row)
            })
            .collect();
    }
    rank
}

/// True iff the rows are linearly independent.
pub fn independent<K: Ord + Clone>(rows: Vec<BTreeMap<K, Rational>>) -> bool {
    let n = rows.len();
    rank(rows) == n
}
