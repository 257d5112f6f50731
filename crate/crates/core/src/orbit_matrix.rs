//! The contingency-matrix model of the double cosets.
//!
//! A double coset of (W_I, W_J) with row blocks (p_1, ..., p_r) and column
//! blocks (q_1, ..., q_s) corresponds to the r x s matrix of nonnegative
//! counts m_ij = #{positions k in column block j : w(k) in value block i};
//! the rows sum to the p_i and the columns to the q_j.  Orbit-closure
//! inclusion becomes dominance of northwest partial sums: larger sums mean
//! a smaller (more special) orbit, and the identity coset has the largest
//! sums of all.  This model never touches individual permutations, so it
//! scales past the enumeration budget of the Bruhat route.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parabolic::{BlockComposition, CosetSystem};
use crate::perm::Permutation;
use crate::poset::FinitePoset;

/// A contingency matrix with its margins.  Entries are indexed 0-based.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OrbitMatrix {
    nrows: usize,
    ncols: usize,
    entries: Vec<u32>,
    row_margins: Vec<u32>,
    col_margins: Vec<u32>,
}

impl OrbitMatrix {
    /// Builds the matrix from row-major entry data; margins are derived.
    /// The grid must be nonempty and rectangular with positive margins.
    pub fn from_rows(rows: Vec<Vec<u32>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::InvalidMatrix("no rows".into()));
        }
        let ncols = rows[0].len();
        if ncols == 0 {
            return Err(Error::InvalidMatrix("no columns".into()));
        }
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::InvalidMatrix("ragged rows".into()));
        }
        let entries: Vec<u32> = rows.into_iter().flatten().collect();
        let mut row_margins = vec![0u32; nrows];
        let mut col_margins = vec![0u32; ncols];
        for i in 0..nrows {
            for j in 0..ncols {
                row_margins[i] += entries[i * ncols + j];
                col_margins[j] += entries[i * ncols + j];
            }
        }
        if row_margins.contains(&0) || col_margins.contains(&0) {
            return Err(Error::InvalidMatrix(
                "zero row or column margin; margins must be block compositions".into(),
            ));
        }
        Ok(OrbitMatrix {
            nrows,
            ncols,
            entries,
            row_margins,
            col_margins,
        })
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn entry(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.ncols + j]
    }

    pub fn row_margins(&self) -> &[u32] {
        &self.row_margins
    }

    pub fn col_margins(&self) -> &[u32] {
        &self.col_margins
    }

    /// The composed total n.
    pub fn total(&self) -> usize {
        self.row_margins.iter().map(|&m| m as usize).sum()
    }

    fn check_comparable(&self, other: &OrbitMatrix) -> Result<()> {
        if self.row_margins != other.row_margins || self.col_margins != other.col_margins {
            return Err(Error::MarginMismatch(format!(
                "cannot compare margins {:?}/{:?} with {:?}/{:?}",
                self.row_margins, self.col_margins, other.row_margins, other.col_margins
            )));
        }
        Ok(())
    }

    /// Northwest partial-sum table: sums(i, j) = sum of entries in rows
    /// 0..=i and columns 0..=j.
    fn partial_sums(&self) -> Vec<u32> {
        let (r, s) = (self.nrows, self.ncols);
        let mut sums = vec![0u32; r * s];
        for i in 0..r {
            for j in 0..s {
                let above = if i > 0 { sums[(i - 1) * s + j] } else { 0 };
                let left = if j > 0 { sums[i * s + j - 1] } else { 0 };
                let diag = if i > 0 && j > 0 {
                    sums[(i - 1) * s + j - 1]
                } else {
                    0
                };
                sums[i * s + j] = self.entries[i * s + j] + above + left - diag;
            }
        }
        sums
    }

    /// Closure order: self <= other iff the orbit of self lies in the
    /// closure of the orbit of other, i.e. every northwest partial sum of
    /// self is at least the corresponding sum of other.  Margins must agree.
    pub fn leq(&self, other: &OrbitMatrix) -> Result<bool> {
        self.check_comparable(other)?;
        let mine = self.partial_sums();
        let theirs = other.partial_sums();
        Ok(mine.iter().zip(&theirs).all(|(a, b)| a >= b))
    }

    /// The minimal double-coset representative with this matrix: each row
    /// block hands its values out to the column blocks in increasing order,
    /// and every column block is filled increasingly.
    pub fn to_minimal_representative(&self) -> Result<Permutation> {
        let n = self.total();
        if n > u8::MAX as usize {
            return Err(Error::InvalidMatrix(format!(
                "total {n} exceeds the representable degree maximum {}",
                u8::MAX
            )));
        }
        let mut column_values: Vec<Vec<u8>> = vec![Vec::new(); self.ncols];
        let mut next_value = 1u8;
        for i in 0..self.nrows {
            for (j, values) in column_values.iter_mut().enumerate() {
                for _ in 0..self.entry(i, j) {
                    values.push(next_value);
                    next_value += 1;
                }
            }
        }
        // Row blocks are visited in increasing value order, so each column
        // block is already sorted increasingly.
        let mut word = Vec::with_capacity(n);
        for values in column_values {
            word.extend(values);
        }
        Permutation::from_one_line(word)
    }

    /// Compact row-major label, e.g. "\[\[2,0\],\[0,2\]\]".
    pub fn entries_label(&self) -> String {
        let mut out = String::from("[");
        for i in 0..self.nrows {
            if i > 0 {
                out.push(',');
            }
            out.push('[');
            for j in 0..self.ncols {
                if j > 0 {
                    out.push(',');
                }
                out.push_str(&self.entry(i, j).to_string());
            }
            out.push(']');
        }
        out.push(']');
        out
    }
}

impl fmt::Display for OrbitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.entries_label())
    }
}

impl fmt::Debug for OrbitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrbitMatrix({})", self.entries_label())
    }
}

#[derive(Serialize, Deserialize)]
struct MatrixData {
    rows: Vec<u32>,
    cols: Vec<u32>,
    entries: Vec<Vec<u32>>,
}

impl Serialize for OrbitMatrix {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixData {
            rows: self.row_margins.clone(),
            cols: self.col_margins.clone(),
            entries: (0..self.nrows)
                .map(|i| (0..self.ncols).map(|j| self.entry(i, j)).collect())
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrbitMatrix {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = MatrixData::deserialize(deserializer)?;
        let matrix = OrbitMatrix::from_rows(data.entries).map_err(D::Error::custom)?;
        if matrix.row_margins != data.rows || matrix.col_margins != data.cols {
            return Err(D::Error::custom(
                "declared margins do not match the entries",
            ));
        }
        Ok(matrix)
    }
}

/// The matrix of the double coset of the minimal representative w.
/// Rejects permutations that are not minimal representatives.
pub fn coset_to_matrix(w: &Permutation, system: &CosetSystem) -> Result<OrbitMatrix> {
    if w.degree() != system.degree() {
        return Err(Error::DegreeMismatch {
            left: system.degree(),
            right: w.degree(),
        });
    }
    if !system.is_minimal_representative(w) {
        return Err(Error::NotMinimalRepresentative(w.to_string()));
    }
    let row_blocks = system.blocks_left();
    let col_ranges = system.blocks_right().ranges();
    let mut rows =
        vec![vec![0u32; system.blocks_right().block_count()]; row_blocks.block_count()];
    for (j, (lo, hi)) in col_ranges.into_iter().enumerate() {
        for k in (lo + 1)..=hi {
            let i = row_blocks.block_of(w.apply(k));
            rows[i][j] += 1;
        }
    }
    OrbitMatrix::from_rows(rows)
}

/// All contingency matrices with the given margins, in increasing
/// lexicographic order of the row-major entry word.
pub fn enumerate_margin_matrices(
    rows: &BlockComposition,
    cols: &BlockComposition,
) -> Result<Vec<OrbitMatrix>> {
    if rows.total() != cols.total() {
        return Err(Error::TotalMismatch(format!(
            "row blocks {rows} sum to {}, column blocks {cols} to {}",
            rows.total(),
            cols.total()
        )));
    }
    let row_margins: Vec<u32> = rows.blocks().iter().map(|&b| b as u32).collect();
    let mut capacity: Vec<u32> = cols.blocks().iter().map(|&b| b as u32).collect();
    let mut grid: Vec<Vec<u32>> = Vec::with_capacity(row_margins.len());
    let mut out = Vec::new();
    fill_rows(&row_margins, &mut capacity, &mut grid, &mut out);
    Ok(out)
}

fn fill_rows(
    row_margins: &[u32],
    capacity: &mut Vec<u32>,
    grid: &mut Vec<Vec<u32>>,
    out: &mut Vec<OrbitMatrix>,
) {
    let i = grid.len();
    if i == row_margins.len() {
        debug_assert!(capacity.iter().all(|&c| c == 0));
        out.push(OrbitMatrix::from_rows(grid.clone()).expect("margins positive by construction"));
        return;
    }
    let mut row = vec![0u32; capacity.len()];
    fill_cells(row_margins, capacity, grid, &mut row, 0, row_margins[i], out);
}

fn fill_cells(
    row_margins: &[u32],
    capacity: &mut Vec<u32>,
    grid: &mut Vec<Vec<u32>>,
    row: &mut Vec<u32>,
    j: usize,
    remaining: u32,
    out: &mut Vec<OrbitMatrix>,
) {
    if j == row.len() {
        if remaining == 0 {
            grid.push(row.clone());
            fill_rows(row_margins, capacity, grid, out);
            grid.pop();
        }
        return;
    }
    // Leave enough capacity in the later columns for the rest of the row.
    let later: u32 = capacity[j + 1..].iter().sum();
    let low = remaining.saturating_sub(later);
    let high = remaining.min(capacity[j]);
    for value in low..=high {
        row[j] = value;
        capacity[j] -= value;
        fill_cells(row_margins, capacity, grid, row, j + 1, remaining - value, out);
        capacity[j] += value;
        row[j] = 0;
    }
}

/// The closure-order poset of all contingency matrices with the given
/// margins, labeled by their entry words.  Elements are ordered by
/// decreasing row-major entry word, which puts the unique minimum (the
/// northwest-greedy matrix of the identity coset) first.
pub fn matrix_poset(rows: &BlockComposition, cols: &BlockComposition) -> Result<FinitePoset> {
    let mut matrices = enumerate_margin_matrices(rows, cols)?;
    matrices.sort_by(|a, b| b.entries.cmp(&a.entries));
    let k = matrices.len();
    let mut leq = vec![false; k * k];
    for a in 0..k {
        for b in 0..k {
            leq[a * k + b] = matrices[a].leq(&matrices[b])?;
        }
    }
    let labels = matrices.iter().map(OrbitMatrix::entries_label).collect();
    FinitePoset::from_order_relation(labels, |a, b| leq[a * k + b])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bruhat::bruhat_leq;

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

    fn matrix(rows: &[&[u32]]) -> OrbitMatrix {
        OrbitMatrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).expect("valid matrix")
    }

    #[test]
    fn from_rows_validates() {
        assert!(OrbitMatrix::from_rows(vec![]).is_err());
        assert!(OrbitMatrix::from_rows(vec![vec![]]).is_err());
        assert!(OrbitMatrix::from_rows(vec![vec![1, 0], vec![1]]).is_err());
        // A zero column margin is not a block composition.
        assert!(OrbitMatrix::from_rows(vec![vec![1, 0], vec![1, 0]]).is_err());
        let m = matrix(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.row_margins(), &[2, 2]);
        assert_eq!(m.col_margins(), &[2, 2]);
        assert_eq!(m.total(), 4);
    }

    #[test]
    fn frozen_coset_matrices_for_the_2_2_pair() {
        let sys = system("2,2", "2,2");
        assert_eq!(
            coset_to_matrix(&perm("1234"), &sys).unwrap(),
            matrix(&[&[2, 0], &[0, 2]])
        );
        assert_eq!(
            coset_to_matrix(&perm("1324"), &sys).unwrap(),
            matrix(&[&[1, 1], &[1, 1]])
        );
        assert_eq!(
            coset_to_matrix(&perm("3412"), &sys).unwrap(),
            matrix(&[&[0, 2], &[2, 0]])
        );
    }

    #[test]
    fn coset_to_matrix_rejects_non_minimal_elements() {
        let sys = system("2,2", "2,2");
        assert!(matches!(
            coset_to_matrix(&perm("4321"), &sys),
            Err(Error::NotMinimalRepresentative(_))
        ));
        assert!(coset_to_matrix(&perm("123"), &sys).is_err());
    }

    #[test]
    fn min_rep_construction_round_trips() {
        assert_eq!(
            matrix(&[&[0, 2], &[2, 0]]).to_minimal_representative().unwrap(),
            perm("3412")
        );
        assert_eq!(
            matrix(&[&[1, 1], &[1, 1]]).to_minimal_representative().unwrap(),
            perm("1324")
        );
    }

    #[test]
    fn matrix_and_coset_routes_are_mutually_inverse() {
        for (left, right) in [("2,2", "2,2"), ("1,1,2", "1,2,1"), ("3,3", "2,2,2")] {
            let sys = system(left, right);
            let reps = sys.minimal_representatives().unwrap();
            let matrices =
                enumerate_margin_matrices(sys.blocks_left(), sys.blocks_right()).unwrap();
            assert_eq!(reps.len(), matrices.len());
            for w in &reps {
                let m = coset_to_matrix(w, &sys).unwrap();
                assert_eq!(&m.to_minimal_representative().unwrap(), w);
            }
            for m in &matrices {
                let w = m.to_minimal_representative().unwrap();
                assert!(sys.is_minimal_representative(&w));
                assert_eq!(&coset_to_matrix(&w, &sys).unwrap(), m);
            }
        }
    }

    #[test]
    fn dominance_on_the_2_2_chain() {
        let bottom = matrix(&[&[2, 0], &[0, 2]]);
        let middle = matrix(&[&[1, 1], &[1, 1]]);
        let top = matrix(&[&[0, 2], &[2, 0]]);
        assert!(bottom.leq(&middle).unwrap());
        assert!(middle.leq(&top).unwrap());
        assert!(bottom.leq(&top).unwrap());
        assert!(!top.leq(&bottom).unwrap());
        assert!(bottom.leq(&bottom).unwrap());
    }

    #[test]
    fn dominance_rejects_margin_mismatch() {
        let a = matrix(&[&[1, 1], &[1, 1]]);
        let b = matrix(&[&[2, 0], &[0, 1]]);
        assert!(a.leq(&b).is_err());
    }

    #[test]
    fn margin_enumeration_counts() {
        let count = |l: &str, r: &str| {
            enumerate_margin_matrices(&blocks(l), &blocks(r))
                .unwrap()
                .len()
        };
        // Hand counts: the first row determines the rest for two-row margins.
        assert_eq!(count("3,3", "2,2,2"), 7);
        assert_eq!(count("2,2", "1,1,1,1"), 6);
        assert_eq!(count("3,6", "3,3,3"), 10);
        assert_eq!(count("4", "4"), 1);
    }

    #[test]
    fn margin_enumeration_rejects_total_mismatch() {
        assert!(enumerate_margin_matrices(&blocks("2,2"), &blocks("2,2,2")).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_respects_margins() {
        let rows = blocks("2,3");
        let cols = blocks("2,2,1");
        let matrices = enumerate_margin_matrices(&rows, &cols).unwrap();
        for m in &matrices {
            assert_eq!(m.row_margins(), &[2, 3]);
            assert_eq!(m.col_margins(), &[2, 2, 1]);
        }
        let words: Vec<Vec<u32>> = matrices.iter().map(|m| m.entries.clone()).collect();
        assert!(words.windows(2).all(|pair| pair[0] < pair[1]));
    }

    #[test]
    fn matrix_poset_of_the_2_2_pair_is_a_chain() {
        let poset = matrix_poset(&blocks("2,2"), &blocks("2,2")).unwrap();
        assert_eq!(poset.size(), 3);
        assert_eq!(poset.covers(), &[(0, 1), (1, 2)]);
        assert_eq!(
            poset.labels(),
            &["[[2,0],[0,2]]", "[[1,1],[1,1]]", "[[0,2],[2,0]]"]
        );
    }

    #[test]
    fn matrix_poset_minimum_is_the_identity_coset() {
        for (left, right) in [("2,2", "2,2"), ("3,3", "2,2,2"), ("1,2,1", "2,1,1")] {
            let sys = system(left, right);
            let poset = matrix_poset(sys.blocks_left(), sys.blocks_right()).unwrap();
            let bottom = poset.minimum().expect("unique minimum");
            let identity_matrix =
                coset_to_matrix(&Permutation::identity(sys.degree()), &sys).unwrap();
            assert_eq!(poset.labels()[bottom], identity_matrix.entries_label());
            assert!(poset.maximum().is_some());
        }
    }

    #[test]
    fn singleton_margins_give_a_point() {
        let poset = matrix_poset(&blocks("4"), &blocks("4")).unwrap();
        assert_eq!(poset.size(), 1);
        assert_eq!(poset.height(), 0);
    }

    #[test]
    fn both_routes_order_identically_on_small_systems() {
        for (left, right) in [("2,2", "2,2"), ("1,1,2", "1,2,1"), ("2,1,1", "1,3")] {
            let sys = system(left, right);
            let reps = sys.minimal_representatives().unwrap();
            for a in &reps {
                for b in &reps {
                    let ma = coset_to_matrix(a, &sys).unwrap();
                    let mb = coset_to_matrix(b, &sys).unwrap();
                    assert_eq!(
                        bruhat_leq(a, b).unwrap(),
                        ma.leq(&mb).unwrap(),
                        "{sys}: {a} vs {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn serde_uses_the_documented_shape() {
        let m = matrix(&[&[2, 0], &[0, 2]]);
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"rows":[2,2],"cols":[2,2],"entries":[[2,0],[0,2]]}"#);
        let back: OrbitMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        let bad = r#"{"rows":[2,2],"cols":[1,3],"entries":[[2,0],[0,2]]}"#;
        assert!(serde_json::from_str::<OrbitMatrix>(bad).is_err());
    }
}
