//! The Bruhat-Chevalley order on the symmetric group.
//!
//! The workhorse is the prefix-dominance criterion: u <= v iff for every
//! k the sorted value sets {u_1..u_k} and {v_1..v_k} compare entrywise.
//! A literal subword test over a fixed reduced expression of v is kept as
//! an independent reference; the two are cross-checked in the test suite.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::poset::FinitePoset;

/// Hard degree budget for the subword reference oracle.
pub const SUBWORD_ORACLE_LIMIT: usize = 6;

fn check_degrees(u: &Permutation, v: &Permutation) -> Result<()> {
    if u.degree() != v.degree() {
        return Err(Error::DegreeMismatch {
            left: u.degree(),
            right: v.degree(),
        });
    }
    Ok(())
}

/// True iff u <= v in Bruhat order, by prefix dominance.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    check_degrees(u, v)?;
    let n = u.degree();
    // Maintain the sorted k-prefix value sets incrementally.
    let mut u_prefix: Vec<u8> = Vec::with_capacity(n);
    let mut v_prefix: Vec<u8> = Vec::with_capacity(n);
    for k in 1..n {
        let u_val = u.entries()[k - 1];
        let v_val = v.entries()[k - 1];
        let u_pos = u_prefix.partition_point(|&x| x < u_val);
        u_prefix.insert(u_pos, u_val);
        let v_pos = v_prefix.partition_point(|&x| x < v_val);
        v_prefix.insert(v_pos, v_val);
        for t in 0..k {
            if u_prefix[t] > v_prefix[t] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// One reduced expression for w, as a sequence of simple indices read
/// left to right, obtained by stripping left descents greedily.
pub(crate) fn reduced_word(w: &Permutation) -> Vec<usize> {
    let mut word = Vec::with_capacity(w.length());
    let mut current = w.clone();
    loop {
        let descents = current.left_descents();
        let Some(i) = descents.iter().next() else {
            break;
        };
        word.push(i);
        current = current.left_mul_simple(i);
    }
    debug_assert_eq!(word.len(), w.length());
    word
}

/// Reference test: u <= v iff some subword of a reduced expression of v is
/// a reduced expression of u.  Exponential in spirit; capped at degree
/// [`SUBWORD_ORACLE_LIMIT`] and intended for certifying [`bruhat_leq`].
pub fn bruhat_leq_subword_oracle(u: &Permutation, v: &Permutation) -> Result<bool> {
    check_degrees(u, v)?;
    let n = u.degree();
    if n > SUBWORD_ORACLE_LIMIT {
        return Err(Error::CapacityExceeded {
            operation: "subword oracle",
            degree: n,
            limit: SUBWORD_ORACLE_LIMIT,
        });
    }
    let target_length = u.length();
    if target_length > v.length() {
        return Ok(false);
    }
    let word = reduced_word(v);
    // reachable[l] = products of the length-l subwords consumed so far.
    let mut reachable: Vec<HashSet<Permutation>> = vec![HashSet::new(); target_length + 1];
    reachable[0].insert(Permutation::identity(n));
    for &letter in &word {
        for l in (0..target_length).rev() {
            let extended: Vec<Permutation> = reachable[l]
                .iter()
                .map(|p| p.right_mul_simple(letter))
                .collect();
            reachable[l + 1].extend(extended);
        }
    }
    // A subword of length l(u) multiplying to u is automatically reduced.
    Ok(reachable[target_length].contains(u))
}

/// Covering pairs of the Bruhat order restricted to `elements`:
/// index pairs (a, b) with a < b and no c in the set strictly between.
/// All elements must share one degree.  Not the covers of the ambient
/// group unless the set is all of S_n.
pub fn covering_pairs(elements: &[Permutation]) -> Result<Vec<(usize, usize)>> {
    let k = elements.len();
    for w in elements.iter().skip(1) {
        check_degrees(&elements[0], w)?;
    }
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = bruhat_leq(&elements[a], &elements[b])?;
        }
    }
    let mut covers = Vec::new();
    for a in 0..k {
        for b in 0..k {
            if a == b || !leq[a * k + b] || leq[b * k + a] {
                continue;
            }
            let implied = (0..k).any(|c| {
                c != a && c != b && leq[a * k + c] && leq[c * k + b] && !leq[c * k + a] && !leq[b * k + c]
            });
            if !implied {
                covers.push((a, b));
            }
        }
    }
    covers.sort_unstable();
    Ok(covers)
}

/// The Bruhat order restricted to `elements`, as a finite poset labeled
/// by one-line words.  The elements must be distinct and share one degree.
pub fn bruhat_poset(elements: &[Permutation]) -> Result<FinitePoset> {
    let k = elements.len();
    for w in elements.iter().skip(1) {
        check_degrees(&elements[0], w)?;
    }
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = bruhat_leq(&elements[a], &elements[b])?;
        }
    }
    let labels = elements.iter().map(|w| w.to_string()).collect();
    FinitePoset::from_order_relation(labels, |a, b| leq[a * k + b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::symmetric_group;

    fn perm(word: &str) -> Permutation {
        let entries: Vec<u8> = word
            .chars()
            .map(|c| c.to_digit(10).expect("digit") as u8)
            .collect();
        Permutation::from_one_line(entries).expect("valid word")
    }

    #[test]
    fn frozen_comparisons_in_s4() {
        assert!(bruhat_leq(&perm("1324"), &perm("3412")).unwrap());
        assert!(!bruhat_leq(&perm("2134"), &perm("1342")).unwrap());
        assert!(!bruhat_leq(&perm("3412"), &perm("1324")).unwrap());
    }

    #[test]
    fn identity_below_everything() {
        let id = Permutation::identity(5);
        for w in symmetric_group(5).unwrap() {
            assert!(bruhat_leq(&id, &w).unwrap());
            assert!(bruhat_leq(&w, &w).unwrap());
        }
    }

    #[test]
    fn rejects_degree_mismatch() {
        assert!(bruhat_leq(&perm("21"), &perm("321")).is_err());
        assert!(bruhat_leq_subword_oracle(&perm("21"), &perm("321")).is_err());
    }

    #[test]
    fn oracle_rejects_degree_past_limit() {
        let id = Permutation::identity(SUBWORD_ORACLE_LIMIT + 1);
        assert!(matches!(
            bruhat_leq_subword_oracle(&id, &id),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn reduced_words_multiply_back() {
        for w in symmetric_group(5).unwrap() {
            let word = reduced_word(&w);
            assert_eq!(word.len(), w.length());
            let mut product = Permutation::identity(5);
            for &i in &word {
                product = product.right_mul_simple(i);
            }
            assert_eq!(product, w);
        }
    }

    #[test]
    fn oracle_agrees_with_dominance_exhaustively_at_degree_4() {
        let all: Vec<Permutation> = symmetric_group(4).unwrap().collect();
        for u in &all {
            for v in &all {
                assert_eq!(
                    bruhat_leq(u, v).unwrap(),
                    bruhat_leq_subword_oracle(u, v).unwrap(),
                    "disagreement at u={u}, v={v}"
                );
            }
        }
    }

    #[test]
    fn order_is_inverse_invariant_at_degree_5() {
        let all: Vec<Permutation> = symmetric_group(5).unwrap().collect();
        for u in all.iter().step_by(7) {
            for v in all.iter().step_by(5) {
                assert_eq!(
                    bruhat_leq(u, v).unwrap(),
                    bruhat_leq(&u.inverse(), &v.inverse()).unwrap()
                );
            }
        }
    }

    #[test]
    fn comparability_forces_length_growth() {
        let all: Vec<Permutation> = symmetric_group(4).unwrap().collect();
        for u in &all {
            for v in &all {
                if u != v && bruhat_leq(u, v).unwrap() {
                    assert!(u.length() < v.length());
                }
            }
        }
    }

    #[test]
    fn covers_of_a_chain() {
        let chain = vec![perm("1234"), perm("1324"), perm("3412")];
        assert_eq!(covering_pairs(&chain).unwrap(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn full_s3_has_eight_covers() {
        let all: Vec<Permutation> = symmetric_group(3).unwrap().collect();
        let covers = covering_pairs(&all).unwrap();
        assert_eq!(covers.len(), 8);
        // Every cover raises length by exactly one in the full group.
        for (a, b) in covers {
            assert_eq!(all[b].length(), all[a].length() + 1);
        }
    }

    #[test]
    fn covers_within_a_subset_can_skip_lengths() {
        // With the middle ranks removed, 1234 is covered by 3412 directly.
        let sparse = vec![perm("1234"), perm("3412")];
        assert_eq!(covering_pairs(&sparse).unwrap(), vec![(0, 1)]);
    }
}
