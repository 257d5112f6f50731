//! Classification of the complexity-one block patterns.
//!
//! Eight parameterized rows of block-composition pairs index the cases.
//! Every instance's coset poset is isomorphic to one of 29 posets; the 49
//! reduced cases listed here carry the labels P.1 ... P.29 and realize all
//! 29 classes.  Classification buckets cases by the canonical certificate
//! of the poset, cross-checking the labels, and the stability sweeps
//! verify that entire parameter ranges stay inside the catalog.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::orbit_matrix::{coset_to_matrix, matrix_poset};
use crate::parabolic::{BlockComposition, CosetSystem};
use crate::poset::FinitePoset;

/// Which route computes a coset poset.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Backend {
    /// Bruhat order on enumerated minimal representatives (degree-capped).
    Bruhat,
    /// Dominance order on contingency matrices (scales past the cap).
    Matrix,
    /// Both routes, hard-failing on any disagreement.
    Both,
}

impl FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruhat" => Ok(Backend::Bruhat),
            "matrix" => Ok(Backend::Matrix),
            "both" => Ok(Backend::Both),
            other => Err(Error::InvalidCase(format!(
                "unknown backend {other:?}; expected bruhat, matrix, or both"
            ))),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Bruhat => "bruhat",
            Backend::Matrix => "matrix",
            Backend::Both => "both",
        })
    }
}

/// A catalog class label P.k.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct ClassLabel(u8);

impl ClassLabel {
    pub fn new(number: u8) -> Result<Self> {
        if number == 0 {
            return Err(Error::InvalidCase("class labels start at P.1".into()));
        }
        Ok(ClassLabel(number))
    }

    pub fn number(&self) -> u8 {
        self.0
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P.{}", self.0)
    }
}

impl FromStr for ClassLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let number = s
            .strip_prefix("P.")
            .and_then(|rest| rest.parse::<u8>().ok())
            .ok_or_else(|| Error::InvalidCase(format!("cannot parse class label {s:?}")))?;
        ClassLabel::new(number)
    }
}

impl Serialize for ClassLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ClassLabel {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// One instance of a parameterized row: the row number and the block pair.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CaseSpec {
    row: u8,
    blocks_left: BlockComposition,
    blocks_right: BlockComposition,
}

impl CaseSpec {
    /// Validates the block pair against the defining constraints of the row.
    pub fn new(row: u8, left: BlockComposition, right: BlockComposition) -> Result<Self> {
        if left.total() != right.total() {
            return Err(Error::InvalidCase(format!(
                "block totals differ: {left} vs {right}"
            )));
        }
        let l = left.blocks();
        let r = right.blocks();
        let constraint_ok = match row {
            1 => l.len() == 2 && l[0] == 3 && l[1] >= 3 && r.len() == 3 && r.iter().all(|&q| q >= 2),
            2 => {
                l.len() == 2
                    && l.iter().all(|&p| p >= 3)
                    && r.len() == 3
                    && r[0] == 2
                    && r[1] == 2
                    && r[2] >= 2
            }
            3 => {
                l.len() == 2
                    && l.iter().all(|&p| p >= 3)
                    && r.len() == 3
                    && r[0] == 2
                    && r[2] == 2
                    && r[1] >= 2
            }
            4 => l.len() == 2 && l[0] == 2 && l[1] >= 3 && r.len() == 4,
            5 => {
                l.len() == 2
                    && l.iter().all(|&p| p >= 2)
                    && r.len() == 4
                    && r[0] == 1
                    && r[1] == 1
                    && r[2] == 1
            }
            6 => {
                l.len() == 2
                    && l.iter().all(|&p| p >= 2)
                    && r.len() == 4
                    && r[0] == 1
                    && r[1] == 1
                    && r[3] == 1
                    && r[2] >= 2
            }
            7 => l.len() == 3 && l[0] == 1 && l[2] == 1 && l[1] >= 2 && r.len() == 3,
            8 => l.len() == 3 && l[0] == 1 && l[1] == 1 && l[2] >= 2 && r.len() == 3,
            other => {
                return Err(Error::InvalidCase(format!(
                    "row {other} out of range 1..=8"
                )))
            }
        };
        if !constraint_ok {
            return Err(Error::InvalidCase(format!(
                "blocks {left}/{right} violate the constraints of row {row}"
            )));
        }
        Ok(CaseSpec {
            row,
            blocks_left: left,
            blocks_right: right,
        })
    }

    pub fn row(&self) -> u8 {
        self.row
    }

    pub fn blocks_left(&self) -> &BlockComposition {
        &self.blocks_left
    }

    pub fn blocks_right(&self) -> &BlockComposition {
        &self.blocks_right
    }

    pub fn degree(&self) -> usize {
        self.blocks_left.total()
    }
}

impl fmt::Display for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "row {} {}/{}",
            self.row, self.blocks_left, self.blocks_right
        )
    }
}

impl fmt::Debug for CaseSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CaseSpec({self})")
    }
}

#[derive(Serialize, Deserialize)]
struct CaseSpecData {
    row: u8,
    blocks_i: Vec<u8>,
    blocks_j: Vec<u8>,
    n: usize,
}

impl Serialize for CaseSpec {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        CaseSpecData {
            row: self.row,
            blocks_i: self.blocks_left.blocks().to_vec(),
            blocks_j: self.blocks_right.blocks().to_vec(),
            n: self.degree(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for CaseSpec {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let data = CaseSpecData::deserialize(deserializer)?;
        let left = BlockComposition::new(data.blocks_i).map_err(D::Error::custom)?;
        let right = BlockComposition::new(data.blocks_j).map_err(D::Error::custom)?;
        let case = CaseSpec::new(data.row, left, right).map_err(D::Error::custom)?;
        if case.degree() != data.n {
            return Err(D::Error::custom(format!(
                "declared degree {} does not match block total {}",
                data.n,
                case.degree()
            )));
        }
        Ok(case)
    }
}

/// A case together with its catalog label, when one is known.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LabeledCase {
    pub case: CaseSpec,
    pub label: Option<ClassLabel>,
}

/// The 49 reduced cases with their catalog labels, in row order.
pub fn reduced_case_list() -> Vec<LabeledCase> {
    const TABLE: &[(u8, &[u8], &[u8], u8)] = &[
        (1, &[3, 3], &[2, 2, 2], 1),
        (1, &[3, 4], &[2, 2, 3], 2),
        (1, &[3, 4], &[3, 2, 2], 3),
        (1, &[3, 4], &[2, 3, 2], 4),
        (1, &[3, 5], &[2, 3, 3], 5),
        (1, &[3, 5], &[3, 2, 3], 6),
        (1, &[3, 5], &[3, 3, 2], 7),
        (1, &[3, 6], &[3, 3, 3], 8),
        (2, &[3, 3], &[2, 2, 2], 1),
        (2, &[3, 4], &[2, 2, 3], 2),
        (2, &[4, 3], &[2, 2, 3], 3),
        (2, &[4, 4], &[2, 2, 4], 6),
        (3, &[3, 3], &[2, 2, 2], 1),
        (3, &[3, 4], &[2, 3, 2], 4),
        (3, &[4, 4], &[2, 4, 2], 9),
        (4, &[2, 3], &[1, 1, 1, 2], 10),
        (4, &[2, 3], &[1, 1, 2, 1], 11),
        (4, &[2, 3], &[1, 2, 1, 1], 12),
        (4, &[2, 3], &[2, 1, 1, 1], 13),
        (4, &[2, 4], &[1, 1, 2, 2], 14),
        (4, &[2, 4], &[1, 2, 1, 2], 29),
        (4, &[2, 4], &[2, 1, 1, 2], 19),
        (4, &[2, 4], &[1, 2, 2, 1], 4),
        (4, &[2, 4], &[2, 1, 2, 1], 15),
        (4, &[2, 4], &[2, 2, 1, 1], 14),
        (4, &[2, 5], &[1, 2, 2, 2], 5),
        (4, &[2, 5], &[2, 1, 2, 2], 16),
        (4, &[2, 5], &[2, 2, 1, 2], 17),
        (4, &[2, 5], &[2, 2, 2, 1], 7),
        (4, &[2, 6], &[2, 2, 2, 2], 8),
        (5, &[2, 2], &[1, 1, 1, 1], 18),
        (5, &[2, 3], &[1, 1, 1, 2], 10),
        (5, &[3, 2], &[1, 1, 1, 2], 13),
        (5, &[3, 3], &[1, 1, 1, 3], 19),
        (6, &[2, 3], &[1, 1, 2, 1], 11),
        (6, &[3, 2], &[1, 1, 2, 1], 12),
        (6, &[3, 3], &[1, 1, 3, 1], 20),
        (7, &[1, 2, 1], &[1, 1, 2], 21),
        (7, &[1, 2, 1], &[1, 2, 1], 1),
        (7, &[1, 3, 1], &[1, 2, 2], 4),
        (7, &[1, 3, 1], &[2, 1, 2], 22),
        (7, &[1, 4, 1], &[2, 2, 2], 9),
        (8, &[1, 1, 2], &[1, 1, 2], 23),
        (8, &[1, 1, 2], &[1, 2, 1], 21),
        (8, &[1, 1, 2], &[2, 1, 1], 24),
        (8, &[1, 1, 3], &[1, 2, 2], 25),
        (8, &[1, 1, 3], &[2, 1, 2], 26),
        (8, &[1, 1, 3], &[2, 2, 1], 27),
        (8, &[1, 1, 4], &[2, 2, 2], 28),
    ];
    TABLE
        .iter()
        .map(|&(row, left, right, label)| LabeledCase {
            case: CaseSpec::new(
                row,
                BlockComposition::new(left.to_vec()).expect("table blocks valid"),
                BlockComposition::new(right.to_vec()).expect("table blocks valid"),
            )
            .expect("table cases satisfy their row constraints"),
            label: Some(ClassLabel::new(label).expect("table labels valid")),
        })
        .collect()
}

/// Computes the coset poset of an arbitrary block pair via the chosen
/// backend.  With [`Backend::Both`] the Bruhat and matrix routes are
/// compared order-by-order under the coset/matrix bijection and any
/// discrepancy is a hard error.
pub fn poset_for_blocks(
    left: &BlockComposition,
    right: &BlockComposition,
    backend: Backend,
) -> Result<FinitePoset> {
    match backend {
        Backend::Matrix => matrix_poset(left, right),
        Backend::Bruhat => {
            CosetSystem::from_blocks(left.clone(), right.clone())?.coset_poset()
        }
        Backend::Both => {
            let system = CosetSystem::from_blocks(left.clone(), right.clone())?;
            let reps = system.minimal_representatives()?;
            let bruhat = crate::bruhat::bruhat_poset(&reps)?;
            let matrix = matrix_poset(left, right)?;
            let case = format!("{left}/{right}");
            if bruhat.size() != matrix.size() {
                return Err(Error::BackendMismatch {
                    case,
                    detail: format!(
                        "{} representatives vs {} matrices",
                        bruhat.size(),
                        matrix.size()
                    ),
                });
            }
            let index_of: BTreeMap<&str, usize> = matrix
                .labels()
                .iter()
                .enumerate()
                .map(|(idx, label)| (label.as_str(), idx))
                .collect();
            let mut image = Vec::with_capacity(reps.len());
            for w in &reps {
                let label = coset_to_matrix(w, &system)?.entries_label();
                let Some(&idx) = index_of.get(label.as_str()) else {
                    return Err(Error::BackendMismatch {
                        case,
                        detail: format!("matrix {label} of {w} missing from enumeration"),
                    });
                };
                image.push(idx);
            }
            verify_order_isomorphism(&bruhat, &matrix, &image, &case)?;
            Ok(bruhat)
        }
    }
}

/// Checks that `image` carries the first order onto the second exactly:
/// a <= b iff image[a] <= image[b] for all pairs.
pub(crate) fn verify_order_isomorphism(
    bruhat: &FinitePoset,
    matrix: &FinitePoset,
    image: &[usize],
    case: &str,
) -> Result<()> {
    for a in 0..bruhat.size() {
        for b in 0..bruhat.size() {
            if bruhat.leq(a, b) != matrix.leq(image[a], image[b]) {
                return Err(Error::BackendMismatch {
                    case: case.to_string(),
                    detail: format!(
                        "{} vs {}: bruhat {} but dominance {}",
                        bruhat.labels()[a],
                        bruhat.labels()[b],
                        bruhat.leq(a, b),
                        matrix.leq(image[a], image[b])
                    ),
                });
            }
        }
    }
    Ok(())
}

/// Computes the poset of a validated case.
pub fn compute_case(case: &CaseSpec, backend: Backend) -> Result<FinitePoset> {
    poset_for_blocks(&case.blocks_left, &case.blocks_right, backend)
}

/// One isomorphism class in a catalog.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PosetClass {
    /// Hex of the canonical certificate.
    pub certificate: String,
    pub label: Option<ClassLabel>,
    pub size: usize,
    pub height: usize,
    pub graded: bool,
    pub lattice: bool,
    /// Cover pairs of the representative, relabeled canonically.
    pub covers: Vec<(usize, usize)>,
    pub members: Vec<CaseSpec>,
}

/// A deterministic catalog of poset classes, ordered by certificate.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ClassCatalog {
    pub classes: Vec<PosetClass>,
}

impl ClassCatalog {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Looks a class up by certificate hex.
    pub fn class_by_certificate(&self, certificate: &str) -> Option<&PosetClass> {
        self.classes
            .iter()
            .find(|class| class.certificate == certificate)
    }

    pub fn class_by_label(&self, label: ClassLabel) -> Option<&PosetClass> {
        self.classes.iter().find(|class| class.label == Some(label))
    }

    /// Serializes the catalog; byte-identical across runs.
    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("catalog serializes");
        out.push('\n');
        out
    }
}

/// Buckets the cases by canonical certificate.  Cases sharing a label
/// must land in one bucket and distinct labels in distinct buckets;
/// any violation is an error.  Case posets are computed in parallel
/// (respecting RAYON_NUM_THREADS); the catalog itself is deterministic.
pub fn classify(cases: &[LabeledCase], backend: Backend) -> Result<ClassCatalog> {
    struct Computed {
        label: Option<ClassLabel>,
        case: CaseSpec,
        certificate: Vec<u8>,
        covers: Vec<(usize, usize)>,
        size: usize,
        height: usize,
        graded: bool,
        lattice: bool,
    }

    let computed: Vec<Computed> = cases
        .par_iter()
        .map(|labeled| -> Result<Computed> {
            let poset = compute_case(&labeled.case, backend)?;
            let form = poset.canonical_form();
            let mut position = vec![0usize; poset.size()];
            for (t, &x) in form.ordering().iter().enumerate() {
                position[x] = t;
            }
            let mut covers: Vec<(usize, usize)> = poset
                .covers()
                .iter()
                .map(|&(a, b)| (position[a], position[b]))
                .collect();
            covers.sort_unstable();
            Ok(Computed {
                label: labeled.label,
                case: labeled.case.clone(),
                certificate: form.certificate().to_vec(),
                covers,
                size: poset.size(),
                height: poset.height(),
                graded: poset.is_graded()?,
                lattice: poset.is_lattice(),
            })
        })
        .collect::<Result<Vec<Computed>>>()?;

    let mut buckets: BTreeMap<Vec<u8>, PosetClass> = BTreeMap::new();
    for item in computed {
        let certificate_hex: String = item
            .certificate
            .iter()
            .map(|byte| format!("{byte:02x}"))
            .collect();
        let class = buckets
            .entry(item.certificate.clone())
            .or_insert_with(|| PosetClass {
                certificate: certificate_hex,
                label: None,
                size: item.size,
                height: item.height,
                graded: item.graded,
                lattice: item.lattice,
                covers: item.covers.clone(),
                members: Vec::new(),
            });
        if let Some(label) = item.label {
            match class.label {
                None => class.label = Some(label),
                Some(existing) if existing != label => {
                    return Err(Error::LabelConflict(format!(
                        "case {} is labeled {label} but its class is already {existing}",
                        item.case
                    )));
                }
                _ => {}
            }
        }
        class.members.push(item.case);
    }
    // Distinct labels must not collide on one bucket, and two buckets must
    // not claim one label.
    let mut seen = BTreeMap::new();
    for class in buckets.values() {
        if let Some(label) = class.label {
            if let Some(previous) = seen.insert(label, &class.certificate) {
                return Err(Error::LabelConflict(format!(
                    "label {label} appears in two distinct classes ({previous} and {})",
                    class.certificate
                )));
            }
        }
    }
    Ok(ClassCatalog {
        classes: buckets.into_values().collect(),
    })
}

/// Summary statistics of a catalog.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct CatalogStatistics {
    pub classes: usize,
    pub max_size: usize,
    pub max_height: usize,
    pub lattices: usize,
    pub non_lattices: usize,
    pub graded: usize,
    pub non_graded: usize,
}

pub fn statistics(catalog: &ClassCatalog) -> CatalogStatistics {
    CatalogStatistics {
        classes: catalog.classes.len(),
        max_size: catalog.classes.iter().map(|c| c.size).max().unwrap_or(0),
        max_height: catalog.classes.iter().map(|c| c.height).max().unwrap_or(0),
        lattices: catalog.classes.iter().filter(|c| c.lattice).count(),
        non_lattices: catalog.classes.iter().filter(|c| !c.lattice).count(),
        graded: catalog.classes.iter().filter(|c| c.graded).count(),
        non_graded: catalog.classes.iter().filter(|c| !c.graded).count(),
    }
}

impl fmt::Display for CatalogStatistics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} classes, max size {}, max height {}, {} lattices, {} non-graded",
            self.classes, self.max_size, self.max_height, self.lattices, self.non_graded
        )
    }
}

/// Default sweep bound: degree 14 for the two-row-block rows 1..=4,
/// 12 for rows 5..=8.
pub fn default_sweep_degree(row: u8) -> usize {
    if row <= 4 {
        14
    } else {
        12
    }
}

/// All compositions of `total` into `parts` parts, each at least `low`,
/// in lexicographic order.
fn compositions(total: usize, parts: usize, low: u8) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut current = vec![0u8; parts];
    fn rec(total: usize, parts: usize, low: u8, at: usize, current: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if at + 1 == parts {
            if total >= low as usize && total <= u8::MAX as usize {
                current[at] = total as u8;
                out.push(current.clone());
            }
            return;
        }
        let rest_low = (parts - at - 1) * low as usize;
        let mut value = low as usize;
        while value + rest_low <= total {
            current[at] = value as u8;
            rec(total - value, parts, low, at + 1, current, out);
            value += 1;
        }
    }
    if parts > 0 {
        rec(total, parts, low, 0, &mut current, &mut out);
    }
    out
}

/// Every instance of the given row with degree at most `max_degree`, in
/// increasing degree and then lexicographic parameter order.
pub fn row_instances(row: u8, max_degree: usize) -> Result<Vec<CaseSpec>> {
    if !(1..=8).contains(&row) {
        return Err(Error::InvalidCase(format!("row {row} out of range 1..=8")));
    }
    let mut out = Vec::new();
    for n in 2..=max_degree {
        let lefts: Vec<Vec<u8>> = match row {
            1 => {
                if n >= 6 {
                    vec![vec![3, (n - 3) as u8]]
                } else {
                    vec![]
                }
            }
            2 | 3 => compositions(n, 2, 3),
            4 => {
                if n >= 5 {
                    vec![vec![2, (n - 2) as u8]]
                } else {
                    vec![]
                }
            }
            5 | 6 => compositions(n, 2, 2),
            7 => {
                if n >= 4 {
                    vec![vec![1, (n - 2) as u8, 1]]
                } else {
                    vec![]
                }
            }
            8 => {
                if n >= 4 {
                    vec![vec![1, 1, (n - 2) as u8]]
                } else {
                    vec![]
                }
            }
            _ => unreachable!(),
        };
        let rights: Vec<Vec<u8>> = match row {
            1 => compositions(n, 3, 2),
            2 => {
                if n >= 6 {
                    vec![vec![2, 2, (n - 4) as u8]]
                } else {
                    vec![]
                }
            }
            3 => {
                if n >= 6 {
                    vec![vec![2, (n - 4) as u8, 2]]
                } else {
                    vec![]
                }
            }
            4 => compositions(n, 4, 1),
            5 => {
                if n >= 4 {
                    vec![vec![1, 1, 1, (n - 3) as u8]]
                } else {
                    vec![]
                }
            }
            6 => {
                if n >= 5 {
                    vec![vec![1, 1, (n - 3) as u8, 1]]
                } else {
                    vec![]
                }
            }
            7 | 8 => compositions(n, 3, 1),
            _ => unreachable!(),
        };
        for left in &lefts {
            for right in &rights {
                let case = CaseSpec::new(
                    row,
                    BlockComposition::new(left.clone())?,
                    BlockComposition::new(right.clone())?,
                );
                match case {
                    Ok(case) => out.push(case),
                    // Parameter combinations outside the row constraints
                    // (e.g. q3 = 1 in row 2) are simply not instances.
                    Err(Error::InvalidCase(_)) => {}
                    Err(other) => return Err(other),
                }
            }
        }
    }
    Ok(out)
}

/// The result of sweeping one row: each instance with its class label.
#[derive(Clone, Debug)]
pub struct SweepReport {
    pub row: u8,
    pub max_degree: usize,
    pub assignments: Vec<(CaseSpec, ClassLabel)>,
}

impl SweepReport {
    /// Instances per label, for summaries.
    pub fn label_counts(&self) -> BTreeMap<ClassLabel, usize> {
        let mut counts = BTreeMap::new();
        for (_, label) in &self.assignments {
            *counts.entry(*label).or_insert(0) += 1;
        }
        counts
    }
}

/// Computes every instance of the row up to `max_degree` with the matrix
/// backend and places it in the catalog of the 29 classes.  An instance
/// matching no class is a hard error.
pub fn stability_sweep(row: u8, max_degree: usize) -> Result<SweepReport> {
    let reference = classify(&reduced_case_list(), Backend::Matrix)?;
    stability_sweep_against(&reference, row, max_degree)
}

/// Like [`stability_sweep`], but reusing an already computed catalog.
pub fn stability_sweep_against(
    reference: &ClassCatalog,
    row: u8,
    max_degree: usize,
) -> Result<SweepReport> {
    let by_certificate: BTreeMap<&str, ClassLabel> = reference
        .classes
        .iter()
        .filter_map(|class| {
            class
                .label
                .map(|label| (class.certificate.as_str(), label))
        })
        .collect();
    let instances = row_instances(row, max_degree)?;
    let assignments: Vec<(CaseSpec, ClassLabel)> = instances
        .into_par_iter()
        .map(|case| -> Result<(CaseSpec, ClassLabel)> {
            let poset = compute_case(&case, Backend::Matrix)?;
            let certificate = poset.canonical_form().hex();
            let Some(&label) = by_certificate.get(certificate.as_str()) else {
                return Err(Error::UnknownClass {
                    case: case.to_string(),
                });
            };
            Ok((case, label))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepReport {
        row,
        max_degree,
        assignments,
    })
}
