//! Standard parabolic subgroup pairs of S_n and their minimal double-coset
//! representatives.
//!
//! A block composition (p_1, ..., p_r) of n determines the generator set
//! I = {1, ..., n-1} minus the proper partial sums p_1, p_1+p_2, ...; the
//! parabolic subgroup W_I permutes each block of positions separately.
//! For a pair (I, J) the minimal-length representatives of the double
//! cosets W_I \ W / W_J are exactly the permutations whose right descents
//! avoid J and whose inverse's right descents avoid I.  Bruhat order on
//! them is the inclusion order of the corresponding diagonal orbit
//! closures on the product of the two partial flag varieties.

use std::fmt;
use std::str::FromStr;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::bruhat::{bruhat_poset, covering_pairs};
use crate::error::{Error, Result};
use crate::perm::{symmetric_group, GeneratorSet, Permutation};
use crate::poset::FinitePoset;

/// Hard degree budget for the brute-force factorization search in
/// [`CosetSystem::additive_decomposition`].
pub const DECOMPOSITION_LIMIT: usize = 7;

/// An ordered composition of n into positive blocks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u8>", into = "Vec<u8>")]
pub struct BlockComposition {
    blocks: Vec<u8>,
}

impl BlockComposition {
    pub fn new(blocks: Vec<u8>) -> Result<Self> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlocks("no blocks given".into()));
        }
        if blocks.contains(&0) {
            return Err(Error::InvalidBlocks("blocks must be positive".into()));
        }
        if blocks.iter().map(|&b| b as usize).sum::<usize>() > u8::MAX as usize {
            return Err(Error::InvalidBlocks(format!(
                "total exceeds the representable maximum {}",
                u8::MAX
            )));
        }
        Ok(BlockComposition { blocks })
    }

    pub fn blocks(&self) -> &[u8] {
        &self.blocks
    }

    /// The composed total n.
    pub fn total(&self) -> usize {
        self.blocks.iter().map(|&b| b as usize).sum()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Half-open value ranges (lo, hi] of the blocks, 1-based: the k-th
    /// block covers lo+1..=hi.
    pub fn ranges(&self) -> Vec<(usize, usize)> {
        let mut ranges = Vec::with_capacity(self.blocks.len());
        let mut acc = 0usize;
        for &b in &self.blocks {
            ranges.push((acc, acc + b as usize));
            acc += b as usize;
        }
        ranges
    }

    /// The generator subset: all of {1, ..., n-1} except the proper
    /// partial sums, i.e. the simple transpositions inside the blocks.
    pub fn to_generators(&self) -> Result<GeneratorSet> {
        let n = self.total();
        let mut cuts = Vec::new();
        let mut acc = 0usize;
        for &b in &self.blocks[..self.blocks.len() - 1] {
            acc += b as usize;
            cuts.push(acc);
        }
        Ok(GeneratorSet::new(n, cuts)?.complement())
    }

    /// Inverse of [`Self::to_generators`]: cuts the line at every index
    /// missing from the set.
    pub fn from_generators(generators: &GeneratorSet) -> BlockComposition {
        let n = generators.degree();
        let mut blocks = Vec::new();
        let mut last_cut = 0usize;
        for i in 1..n {
            if !generators.contains(i) {
                blocks.push((i - last_cut) as u8);
                last_cut = i;
            }
        }
        blocks.push((n - last_cut) as u8);
        BlockComposition { blocks }
    }

    /// The reversed composition, matching the diagram involution i -> n-i.
    pub fn reversed(&self) -> BlockComposition {
        let mut blocks = self.blocks.clone();
        blocks.reverse();
        BlockComposition { blocks }
    }

    /// Index of the block containing the 1-based value v.
    pub fn block_of(&self, v: usize) -> usize {
        debug_assert!(v >= 1 && v <= self.total());
        let mut acc = 0usize;
        for (k, &b) in self.blocks.iter().enumerate() {
            acc += b as usize;
            if v <= acc {
                return k;
            }
        }
        unreachable!("value outside composed total")
    }
}

impl fmt::Display for BlockComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, b) in self.blocks.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{b}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for BlockComposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockComposition{self}")
    }
}

impl FromStr for BlockComposition {
    type Err = Error;

    /// Parses comma-separated positive integers, e.g. "2,3,2".
    fn from_str(s: &str) -> Result<Self> {
        let blocks = s
            .split(',')
            .map(|part| {
                part.trim()
                    .parse::<u8>()
                    .map_err(|_| Error::InvalidBlocks(format!("cannot parse block {part:?}")))
            })
            .collect::<Result<Vec<u8>>>()?;
        BlockComposition::new(blocks)
    }
}

impl TryFrom<Vec<u8>> for BlockComposition {
    type Error = Error;
    fn try_from(blocks: Vec<u8>) -> Result<Self> {
        BlockComposition::new(blocks)
    }
}

impl From<BlockComposition> for Vec<u8> {
    fn from(c: BlockComposition) -> Vec<u8> {
        c.blocks
    }
}

/// A pair of standard parabolic subgroups (W_I, W_J) of one S_n, given by
/// block compositions of equal total.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CosetSystem {
    blocks_left: BlockComposition,
    blocks_right: BlockComposition,
    gens_left: GeneratorSet,
    gens_right: GeneratorSet,
}

impl CosetSystem {
    /// Builds the system from the two block compositions.  The left one
    /// cuts W_I (acting on values), the right one W_J (acting on positions).
    pub fn from_blocks(left: BlockComposition, right: BlockComposition) -> Result<Self> {
        if left.total() != right.total() {
            return Err(Error::TotalMismatch(format!(
                "left blocks {left} sum to {}, right blocks {right} to {}",
                left.total(),
                right.total()
            )));
        }
        let gens_left = left.to_generators()?;
        let gens_right = right.to_generators()?;
        Ok(CosetSystem {
            blocks_left: left,
            blocks_right: right,
            gens_left,
            gens_right,
        })
    }

    pub fn degree(&self) -> usize {
        self.blocks_left.total()
    }

    pub fn blocks_left(&self) -> &BlockComposition {
        &self.blocks_left
    }

    pub fn blocks_right(&self) -> &BlockComposition {
        &self.blocks_right
    }

    pub fn generators_left(&self) -> &GeneratorSet {
        &self.gens_left
    }

    pub fn generators_right(&self) -> &GeneratorSet {
        &self.gens_right
    }

    /// Membership test for the minimal-representative set.
    pub fn is_minimal_representative(&self, w: &Permutation) -> bool {
        w.degree() == self.degree()
            && w.left_descents().is_subset_of(&self.gens_left.complement())
            && w.right_descents().is_subset_of(&self.gens_right.complement())
    }

    /// All minimal double-coset representatives, sorted by length and then
    /// lexicographically.  Enumerates S_n, so the degree cap of
    /// [`symmetric_group`] applies.
    pub fn minimal_representatives(&self) -> Result<Vec<Permutation>> {
        let mut reps: Vec<Permutation> = symmetric_group(self.degree())?
            .filter(|w| self.is_minimal_representative(w))
            .collect();
        reps.sort_by_key(|w| (w.length(), w.entries().to_vec()));
        Ok(reps)
    }

    /// The inclusion poset of the double cosets: minimal representatives
    /// under Bruhat order, labeled by their one-line words.
    pub fn coset_poset(&self) -> Result<FinitePoset> {
        bruhat_poset(&self.minimal_representatives()?)
    }

    /// Covering pairs of the coset poset, as indices into
    /// [`Self::minimal_representatives`].
    pub fn coset_covers(&self) -> Result<Vec<(usize, usize)>> {
        covering_pairs(&self.minimal_representatives()?)
    }

    /// The minimal-length element of the double coset W_I x W_J, found by
    /// greedily stripping left descents in I and right descents in J.
    pub fn minimal_representative(&self, x: &Permutation) -> Result<Permutation> {
        self.check_degree(x)?;
        let mut w = x.clone();
        loop {
            let left = w.left_descents();
            if let Some(i) = self.gens_left.iter().find(|&i| left.contains(i)) {
                w = w.left_mul_simple(i);
                continue;
            }
            let right = w.right_descents();
            if let Some(j) = self.gens_right.iter().find(|&j| right.contains(j)) {
                w = w.right_mul_simple(j);
                continue;
            }
            return Ok(w);
        }
    }

    /// The maximal-length element of the double coset W_I x W_J, by the
    /// dual greedy climb along ascents.
    pub fn maximal_representative(&self, x: &Permutation) -> Result<Permutation> {
        self.check_degree(x)?;
        let mut w = x.clone();
        loop {
            let left = w.left_descents().complement();
            if let Some(i) = self.gens_left.iter().find(|&i| left.contains(i)) {
                w = w.left_mul_simple(i);
                continue;
            }
            let right = w.right_descents().complement();
            if let Some(j) = self.gens_right.iter().find(|&j| right.contains(j)) {
                w = w.right_mul_simple(j);
                continue;
            }
            return Ok(w);
        }
    }

    /// The system with both compositions reversed; the diagram involution
    /// identifies its coset poset with this one's.
    pub fn theta_dual(&self) -> CosetSystem {
        CosetSystem::from_blocks(self.blocks_left.reversed(), self.blocks_right.reversed())
            .expect("totals preserved by reversal")
    }

    /// Factors x uniquely as u * w * v with w the minimal representative
    /// of its double coset, v in W_J, and u a minimal-length left-coset
    /// representative of W_I / W_H for H = I intersected with w J w^-1;
    /// the lengths add up.  Exhaustive search, capped at degree
    /// [`DECOMPOSITION_LIMIT`]; finding no (or several) factorizations is
    /// reported as an error.
    pub fn additive_decomposition(&self, x: &Permutation) -> Result<CosetDecomposition> {
        self.check_degree(x)?;
        let n = self.degree();
        if n > DECOMPOSITION_LIMIT {
            return Err(Error::CapacityExceeded {
                operation: "additive coset decomposition",
                degree: n,
                limit: DECOMPOSITION_LIMIT,
            });
        }
        let w = self.minimal_representative(x)?;
        // H = I meet w J w^-1: i such that w carries some adjacent pair
        // {j, j+1} with j in J onto {i, i+1}.
        let mut h_indices = Vec::new();
        for i in self.gens_left.iter() {
            let hit = self.gens_right.iter().any(|j| {
                let a = w.apply(j);
                let b = w.apply(j + 1);
                a.min(b) == i && a.max(b) == i + 1
            });
            if hit {
                h_indices.push(i);
            }
        }
        let subgroup_h = GeneratorSet::new(n, h_indices)?;
        let w_inverse = w.inverse();
        let mut found: Option<CosetDecomposition> = None;
        let mut count = 0usize;
        for u in parabolic_elements(&self.gens_left) {
            // u must be the shortest element of u W_H.
            if !u.right_descents().is_subset_of(&subgroup_h.complement()) {
                continue;
            }
            // x = u w v forces v = w^-1 u^-1 x.
            let v = w_inverse.compose(&u.inverse())?.compose(x)?;
            if !element_of_parabolic(&v, &self.gens_right) {
                continue;
            }
            count += 1;
            if count == 1 {
                found = Some(CosetDecomposition {
                    left: u,
                    rep: w.clone(),
                    right: v,
                });
            }
        }
        let Some(decomposition) = found else {
            return Err(Error::DecompositionFailed {
                element: x.to_string(),
                found: 0,
            });
        };
        if count != 1 {
            return Err(Error::DecompositionFailed {
                element: x.to_string(),
                found: count,
            });
        }
        if decomposition.left.length() + decomposition.rep.length() + decomposition.right.length()
            != x.length()
        {
            return Err(Error::DecompositionFailed {
                element: x.to_string(),
                found: count,
            });
        }
        Ok(decomposition)
    }

    fn check_degree(&self, x: &Permutation) -> Result<()> {
        if x.degree() != self.degree() {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: x.degree(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for CosetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.blocks_left, self.blocks_right)
    }
}

impl fmt::Debug for CosetSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CosetSystem({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CosetSystemData {
    n: usize,
    blocks_i: Vec<u8>,
    blocks_j: Vec<u8>,
}

impl Serialize for CosetSystem {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CosetSystemData {
            n: self.degree(),
            blocks_i: self.blocks_left.blocks().to_vec(),
            blocks_j: self.blocks_right.blocks().to_vec(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CosetSystem {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = CosetSystemData::deserialize(deserializer)?;
        let left = BlockComposition::new(data.blocks_i).map_err(D::Error::custom)?;
        let right = BlockComposition::new(data.blocks_j).map_err(D::Error::custom)?;
        let system = CosetSystem::from_blocks(left, right).map_err(D::Error::custom)?;
        if system.degree() != data.n {
            return Err(D::Error::custom(format!(
                "declared degree {} does not match block total {}",
                data.n,
                system.degree()
            )));
        }
        Ok(system)
    }
}

/// The unique factorization x = u * w * v produced by
/// [`CosetSystem::additive_decomposition`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CosetDecomposition {
    /// Element of W_I, minimal in its left coset modulo W_H.
    pub left: Permutation,
    /// The minimal double-coset representative.
    pub rep: Permutation,
    /// Element of W_J.
    pub right: Permutation,
}

/// All elements of the standard parabolic subgroup generated by the given
/// simple transpositions: the direct product of symmetric groups on the
/// blocks of the complementary composition.
pub fn parabolic_elements(generators: &GeneratorSet) -> Vec<Permutation> {
    let composition = BlockComposition::from_generators(generators);
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for (lo, hi) in composition.ranges() {
        let width = hi - lo;
        let mut extended = Vec::with_capacity(words.len() * (1..=width).product::<usize>());
        for block_perm in symmetric_group(width).expect("block width within budget") {
            for word in &words {
                let mut longer = word.clone();
                longer.extend(block_perm.entries().iter().map(|&v| v + lo as u8));
                extended.push(longer);
            }
        }
        words = extended;
    }
    let mut elements: Vec<Permutation> = words
        .into_iter()
        .map(|word| Permutation::from_one_line(word).expect("block words are permutations"))
        .collect();
    elements.sort_unstable();
    elements
}

/// True iff w fixes every position block of the complementary composition.
pub fn element_of_parabolic(w: &Permutation, generators: &GeneratorSet) -> bool {
    if w.degree() != generators.degree() {
        return false;
    }
    let composition = BlockComposition::from_generators(generators);
    composition
        .ranges()
        .into_iter()
        .all(|(lo, hi)| (lo + 1..=hi).all(|k| w.apply(k) > lo && w.apply(k) <= hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(word: &str) -> Permutation {
        let entries: Vec<u8> = word
            .chars()
            .map(|c| c.to_digit(10).expect("digit") as u8)
            .collect();
        Permutation::from_one_line(entries).expect("valid word")
    }

    fn blocks(s: &str) -> BlockComposition {
        s.parse().expect("valid blocks")
    }

    fn system(left: &str, right: &str) -> CosetSystem {
        CosetSystem::from_blocks(blocks(left), blocks(right)).expect("valid system")
    }

    #[test]
    fn block_composition_validation() {
        assert!(BlockComposition::new(vec![]).is_err());
        assert!(BlockComposition::new(vec![2, 0, 1]).is_err());
        assert!("2,x".parse::<BlockComposition>().is_err());
        assert_eq!(blocks("3,4").total(), 7);
        assert_eq!(blocks("1").to_string(), "(1)");
    }

    #[test]
    fn generators_of_3_4_in_degree_7() {
        let generators = blocks("3,4").to_generators().unwrap();
        let indices: Vec<usize> = generators.iter().collect();
        assert_eq!(indices, vec![1, 2, 4, 5, 6]);
        let complement: Vec<usize> = generators.complement().iter().collect();
        assert_eq!(complement, vec![3]);
    }

    #[test]
    fn generators_round_trip_over_all_compositions_of_6() {
        // Walk all 32 compositions of 6 via cut subsets.
        for cut_mask in 0u32..32 {
            let mut parts = Vec::new();
            let mut last = 0u8;
            for i in 1..6 {
                if cut_mask & (1 << (i - 1)) != 0 {
                    parts.push(i as u8 - last);
                    last = i as u8;
                }
            }
            parts.push(6 - last);
            let composition = BlockComposition::new(parts).unwrap();
            let generators = composition.to_generators().unwrap();
            assert_eq!(BlockComposition::from_generators(&generators), composition);
        }
    }

    #[test]
    fn single_block_gives_full_generator_set() {
        let generators = blocks("5").to_generators().unwrap();
        assert_eq!(generators.len(), 4);
        // All-ones composition gives the empty set.
        let trivial = blocks("1,1,1,1,1").to_generators().unwrap();
        assert!(trivial.is_empty());
    }

    #[test]
    fn system_rejects_total_mismatch() {
        assert!(CosetSystem::from_blocks(blocks("3,3"), blocks("2,2,2,2")).is_err());
    }

    #[test]
    fn minimal_representatives_for_2_2_pair() {
        let reps = system("2,2", "2,2").minimal_representatives().unwrap();
        assert_eq!(reps, vec![perm("1234"), perm("1324"), perm("3412")]);
    }

    #[test]
    fn minimal_representatives_row_eight_case() {
        // Blocks (1,1,2)/(1,2,1): seven representatives.
        let reps = system("1,1,2", "1,2,1").minimal_representatives().unwrap();
        let words: Vec<String> = reps.iter().map(|w| w.to_string()).collect();
        assert_eq!(
            words,
            vec!["1234", "2134", "1342", "3124", "2341", "3142", "3241"]
        );
    }

    #[test]
    fn grassmannian_count_is_binomial() {
        // I = (2,3), W_J trivial: minimal representatives of W_I \ W are
        // counted by the binomial coefficient.
        let reps = system("2,3", "1,1,1,1,1").minimal_representatives().unwrap();
        assert_eq!(reps.len(), 10);
    }

    #[test]
    fn full_right_group_leaves_one_coset() {
        let reps = system("2,3", "5").minimal_representatives().unwrap();
        assert_eq!(reps.len(), 1);
        assert_eq!(reps[0], Permutation::identity(5));
    }

    #[test]
    fn borel_case_recovers_the_whole_group() {
        let reps = system("1,1,1,1", "1,1,1,1").minimal_representatives().unwrap();
        assert_eq!(reps.len(), 24);
    }

    #[test]
    fn projection_reaches_the_frozen_minimum() {
        let sys = system("2,2", "2,2");
        assert_eq!(sys.minimal_representative(&perm("4321")).unwrap(), perm("3412"));
        assert_eq!(sys.maximal_representative(&perm("1234")).unwrap(), perm("2143"));
        assert!(sys.minimal_representative(&perm("123")).is_err());
    }

    #[test]
    fn projection_is_idempotent_and_stays_in_coset() {
        let sys = system("2,1,2", "1,3,1");
        for x in symmetric_group(5).unwrap() {
            let w = sys.minimal_representative(&x).unwrap();
            assert!(sys.is_minimal_representative(&w), "{x} projected to {w}");
            assert_eq!(sys.minimal_representative(&w).unwrap(), w);
            let top = sys.maximal_representative(&x).unwrap();
            assert_eq!(sys.minimal_representative(&top).unwrap(), w);
            assert!(w.length() <= x.length() && x.length() <= top.length());
        }
    }

    #[test]
    fn projection_finds_the_extremes_of_the_brute_forced_coset() {
        // Oracle: multiply out W_I x W_J explicitly and compare the greedy
        // projections against the true extremes.
        let sys = system("1,3", "2,2");
        let w_i = parabolic_elements(sys.generators_left());
        let w_j = parabolic_elements(sys.generators_right());
        for x in symmetric_group(4).unwrap() {
            let mut coset = Vec::new();
            for u in &w_i {
                let ux = u.compose(&x).unwrap();
                for v in &w_j {
                    coset.push(ux.compose(v).unwrap());
                }
            }
            coset.sort_unstable();
            coset.dedup();
            let shortest = coset.iter().min_by_key(|y| y.length()).unwrap().clone();
            let longest = coset.iter().max_by_key(|y| y.length()).unwrap().clone();
            assert_eq!(sys.minimal_representative(&x).unwrap(), shortest);
            assert_eq!(sys.maximal_representative(&x).unwrap(), longest);
            // The extremes are unique at their lengths.
            for extreme in [&shortest, &longest] {
                assert_eq!(
                    coset.iter().filter(|y| y.length() == extreme.length()).count(),
                    1
                );
            }
        }
    }

    #[test]
    fn coset_poset_of_2_2_pair_is_a_chain() {
        let poset = system("2,2", "2,2").coset_poset().unwrap();
        assert_eq!(poset.size(), 3);
        assert_eq!(poset.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(poset.labels(), &["1234", "1324", "3412"]);
    }

    #[test]
    fn coset_poset_of_3_3_by_2_2_2_has_seven_elements() {
        let poset = system("3,3", "2,2,2").coset_poset().unwrap();
        assert_eq!(poset.size(), 7);
        assert_eq!(poset.minimum(), Some(0));
        assert!(poset.maximum().is_some());
    }

    #[test]
    fn theta_dual_blocks_are_reversed() {
        let sys = system("3,4", "2,2,3");
        let dual = sys.theta_dual();
        assert_eq!(dual.blocks_left().to_string(), "(4,3)");
        assert_eq!(dual.blocks_right().to_string(), "(3,2,2)");
        assert_eq!(dual.theta_dual(), sys);
        // Generator sets transform by the diagram involution.
        assert_eq!(sys.generators_left().theta(), *dual.generators_left());
        assert_eq!(sys.generators_right().theta(), *dual.generators_right());
    }

    #[test]
    fn theta_dual_poset_is_isomorphic() {
        for (left, right) in [("2,2", "1,1,2"), ("1,2,1", "1,1,2"), ("3,2", "2,2,1")] {
            let sys = system(left, right);
            let poset = sys.coset_poset().unwrap();
            let dual = sys.theta_dual().coset_poset().unwrap();
            assert!(poset.is_isomorphic_to(&dual), "{sys} vs dual");
        }
    }

    #[test]
    fn parabolic_elements_of_2_2_split() {
        let generators = blocks("2,2").to_generators().unwrap();
        let elements = parabolic_elements(&generators);
        assert_eq!(
            elements,
            vec![perm("1234"), perm("1243"), perm("2134"), perm("2143")]
        );
        for w in &elements {
            assert!(element_of_parabolic(w, &generators));
        }
        assert!(!element_of_parabolic(&perm("1324"), &generators));
    }

    #[test]
    fn decomposition_of_the_frozen_example() {
        let sys = system("2,2", "2,2");
        let decomposition = sys.additive_decomposition(&perm("4321")).unwrap();
        assert_eq!(decomposition.left, perm("1234"));
        assert_eq!(decomposition.rep, perm("3412"));
        assert_eq!(decomposition.right, perm("2143"));
    }

    #[test]
    fn decomposition_is_unique_and_additive_across_s4() {
        for (left, right) in [("2,2", "2,2"), ("1,3", "2,1,1"), ("4", "1,1,1,1")] {
            let sys = system(left, right);
            for x in symmetric_group(4).unwrap() {
                let d = sys.additive_decomposition(&x).unwrap();
                let product = d.left.compose(&d.rep).unwrap().compose(&d.right).unwrap();
                assert_eq!(product, x);
                assert_eq!(
                    d.left.length() + d.rep.length() + d.right.length(),
                    x.length()
                );
            }
        }
    }

    #[test]
    fn decomposition_rejects_degree_past_limit() {
        let sys = system("4,4", "4,4");
        let x = Permutation::identity(8);
        assert!(matches!(
            sys.additive_decomposition(&x),
            Err(Error::CapacityExceeded { .. })
        ));
    }

    #[test]
    fn serde_uses_the_documented_shape() {
        let sys = system("3,4", "2,2,3");
        let json = serde_json::to_string(&sys).unwrap();
        assert_eq!(json, r#"{"n":7,"blocks_i":[3,4],"blocks_j":[2,2,3]}"#);
        let back: CosetSystem = serde_json::from_str(&json).unwrap();
        assert_eq!(back, sys);
        let bad = r#"{"n":6,"blocks_i":[3,4],"blocks_j":[2,2,3]}"#;
        assert!(serde_json::from_str::<CosetSystem>(bad).is_err());
    }
}
