//! Permutations of {1, ..., n} in one-line notation.
//!
//! Positions and values are 1-based, matching the usual notation
//! w = w_1 w_2 ... w_n.  The simple transposition s_i (1 <= i <= n-1)
//! swaps i and i+1; composition is function composition, so u.compose(v)
//! maps i to u(v(i)), left multiplication by s_i swaps the values i and
//! i+1, and right multiplication swaps the entries in positions i and i+1.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Hard budget for full S_n enumeration (10! is ~3.6 million elements).
/// Larger ranks must go through the contingency-matrix model, which never
/// touches individual permutations.
pub const MAX_ENUMERABLE_DEGREE: usize = 10;

/// Largest degree a [`GeneratorSet`] can index (bitmask-backed).
pub const MAX_GENERATOR_DEGREE: usize = 64;

/// A permutation of {1, ..., n} stored in one-line notation.
///
/// Serializes as the plain array of its values, e.g. `[3,4,1,2]`.
/// The derived `Ord` is lexicographic on the one-line word.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct Permutation {
    entries: Vec<u8>,
}

impl Permutation {
    /// Builds a permutation from its one-line word `w_1 ... w_n`.
    /// The word must be a rearrangement of 1..=n with n >= 1.
    pub fn from_one_line(entries: Vec<u8>) -> Result<Self> {
        let n = entries.len();
        if n == 0 {
            return Err(Error::InvalidPermutation(
                "one-line word must be nonempty".into(),
            ));
        }
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!(
                "degree {n} exceeds the representable maximum {}",
                u8::MAX
            )));
        }
        let mut seen = vec![false; n + 1];
        for &value in &entries {
            let v = value as usize;
            if v == 0 || v > n {
                return Err(Error::InvalidPermutation(format!(
                    "value {v} out of range 1..={n}"
                )));
            }
            if seen[v] {
                return Err(Error::InvalidPermutation(format!("value {v} repeated")));
            }
            seen[v] = true;
        }
        Ok(Permutation { entries })
    }

    /// The identity of S_n.
    pub fn identity(n: usize) -> Self {
        assert!(n >= 1 && n <= u8::MAX as usize, "degree out of range");
        Permutation {
            entries: (1..=n as u8).collect(),
        }
    }

    /// The simple transposition s_i in S_n, swapping i and i+1.
    pub fn simple_transposition(n: usize, i: usize) -> Result<Self> {
        if i == 0 || i >= n {
            return Err(Error::InvalidPermutation(format!(
                "simple transposition index {i} out of range 1..={}",
                n.saturating_sub(1)
            )));
        }
        let mut w = Permutation::identity(n);
        w.entries.swap(i - 1, i);
        Ok(w)
    }

    /// Number of points acted on.
    pub fn degree(&self) -> usize {
        self.entries.len()
    }

    /// The one-line word.
    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    /// The image w(i) of a 1-based point.
    pub fn apply(&self, i: usize) -> usize {
        self.entries[i - 1] as usize
    }

    /// Coxeter length: the number of inversions |{i < j : w_i > w_j}|.
    pub fn length(&self) -> usize {
        let mut count = 0;
        for j in 1..self.entries.len() {
            for i in 0..j {
                if self.entries[i] > self.entries[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut entries = vec![0u8; self.entries.len()];
        for (pos, &value) in self.entries.iter().enumerate() {
            entries[value as usize - 1] = pos as u8 + 1;
        }
        Permutation { entries }
    }

    /// Function composition: `u.compose(v)` maps i to u(v(i)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other.degree(),
            });
        }
        let entries = other
            .entries
            .iter()
            .map(|&v| self.entries[v as usize - 1])
            .collect();
        Ok(Permutation { entries })
    }

    /// Right descent set {i : w(i) > w(i+1)}.
    pub fn right_descents(&self) -> GeneratorSet {
        let mut mask = 0u64;
        for i in 1..self.entries.len() {
            if self.entries[i - 1] > self.entries[i] {
                mask |= 1 << i;
            }
        }
        GeneratorSet {
            n: self.degree() as u16,
            mask,
        }
    }

    /// Right ascent set {i : w(i) < w(i+1)}, the complement of the descents.
    pub fn right_ascents(&self) -> GeneratorSet {
        self.right_descents().complement()
    }

    /// Left descent set, i.e. the right descents of the inverse.
    pub fn left_descents(&self) -> GeneratorSet {
        // i is a left descent iff i+1 appears before i in the one-line word.
        let mut mask = 0u64;
        let inv = self.inverse();
        for i in 1..self.entries.len() {
            if inv.entries[i - 1] > inv.entries[i] {
                mask |= 1 << i;
            }
        }
        GeneratorSet {
            n: self.degree() as u16,
            mask,
        }
    }

    /// s_i * w: swaps the values i and i+1.  Shortens w iff i is a left descent.
    pub fn left_mul_simple(&self, i: usize) -> Permutation {
        debug_assert!(i >= 1 && i < self.degree());
        let entries = self
            .entries
            .iter()
            .map(|&v| {
                if v as usize == i {
                    v + 1
                } else if v as usize == i + 1 {
                    v - 1
                } else {
                    v
                }
            })
            .collect();
        Permutation { entries }
    }

    /// w * s_i: swaps positions i and i+1.  Shortens w iff i is a right descent.
    pub fn right_mul_simple(&self, i: usize) -> Permutation {
        debug_assert!(i >= 1 && i < self.degree());
        let mut entries = self.entries.clone();
        entries.swap(i - 1, i);
        Permutation { entries }
    }
}

impl fmt::Display for Permutation {
    /// One-line word: digits concatenated for n <= 9, comma-separated above.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree() <= 9 {
            for &v in &self.entries {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.entries.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl TryFrom<Vec<u8>> for Permutation {
    type Error = Error;
    fn try_from(entries: Vec<u8>) -> Result<Self> {
        Permutation::from_one_line(entries)
    }
}

impl From<Permutation> for Vec<u8> {
    fn from(w: Permutation) -> Vec<u8> {
        w.entries
    }
}

/// A subset of the simple-transposition indices {1, ..., n-1} of S_n.
///
/// Backed by a bitmask, so the ambient degree is capped at
/// [`MAX_GENERATOR_DEGREE`]; every constructor enforces the cap.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSet {
    n: u16,
    mask: u64,
}

impl GeneratorSet {
    /// The empty subset of {1, ..., n-1}.
    pub fn empty(n: usize) -> Result<Self> {
        Self::check_degree(n)?;
        Ok(GeneratorSet { n: n as u16, mask: 0 })
    }

    /// The full set {1, ..., n-1}.
    pub fn full(n: usize) -> Result<Self> {
        Self::check_degree(n)?;
        let mask = if n >= 2 { ((1u64 << (n - 1)) - 1) << 1 } else { 0 };
        Ok(GeneratorSet { n: n as u16, mask })
    }

    /// Builds the subset from explicit indices, which must lie in 1..=n-1.
    pub fn new(n: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut set = Self::empty(n)?;
        for i in indices {
            if i == 0 || i >= n {
                return Err(Error::InvalidBlocks(format!(
                    "generator index {i} out of range 1..={}",
                    n.saturating_sub(1)
                )));
            }
            set.mask |= 1 << i;
        }
        Ok(set)
    }

    fn check_degree(n: usize) -> Result<()> {
        if n == 0 || n > MAX_GENERATOR_DEGREE {
            return Err(Error::InvalidBlocks(format!(
                "ambient degree {n} out of range 1..={MAX_GENERATOR_DEGREE}"
            )));
        }
        Ok(())
    }

    /// Ambient degree n (the indices live in {1, ..., n-1}).
    pub fn degree(&self) -> usize {
        self.n as usize
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i < self.n as usize && self.mask & (1 << i) != 0
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    /// True iff every index of `self` lies in `other`.
    /// Both sets must share the ambient degree.
    pub fn is_subset_of(&self, other: &GeneratorSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.mask & !other.mask == 0
    }

    /// The complement within {1, ..., n-1}.
    pub fn complement(&self) -> GeneratorSet {
        let full = Self::full(self.n as usize).expect("degree already validated");
        GeneratorSet {
            n: self.n,
            mask: full.mask & !self.mask,
        }
    }

    /// The image under the diagram involution i -> n - i.
    pub fn theta(&self) -> GeneratorSet {
        let n = self.n as usize;
        let mut mask = 0u64;
        for i in 1..n {
            if self.mask & (1 << i) != 0 {
                mask |= 1 << (n - i);
            }
        }
        GeneratorSet { n: self.n, mask }
    }

    /// Indices in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (1..self.n as usize).filter(move |i| mask & (1 << i) != 0)
    }
}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Streams all of S_n in lexicographic order of the one-line word,
/// starting at the identity.
#[derive(Debug)]
pub struct SymmetricGroup {
    next: Option<Vec<u8>>,
}

impl Iterator for SymmetricGroup {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let result = Permutation {
            entries: current.clone(),
        };
        self.next = next_word(current);
        Some(result)
    }
}

/// Lexicographic successor of a one-line word, or None at the last word.
fn next_word(mut word: Vec<u8>) -> Option<Vec<u8>> {
    let n = word.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && word[i - 1] >= word[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while word[j] <= word[i - 1] {
        j -= 1;
    }
    word.swap(i - 1, j);
    word[i..].reverse();
    Some(word)
}

/// Enumerates S_n.  Rejects n = 0 and any n past [`MAX_ENUMERABLE_DEGREE`];
/// computations at larger ranks must use the contingency-matrix model.
pub fn symmetric_group(n: usize) -> Result<SymmetricGroup> {
    if n == 0 || n > MAX_ENUMERABLE_DEGREE {
        return Err(Error::CapacityExceeded {
            operation: "symmetric group enumeration",
            degree: n,
            limit: MAX_ENUMERABLE_DEGREE,
        });
    }
    Ok(SymmetricGroup {
        next: Some((1..=n as u8).collect()),
    })
}
