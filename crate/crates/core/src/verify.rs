//! The acceptance checks.
//!
//! Ten named checks cover the headline classification figures, the
//! agreement of the two backends, the stability sweeps, and the property
//! suites that certify the primitive operations against independent
//! oracles.  The same battery backs `doubleflag verify` and the
//! acceptance integration test; `quick` trims the sampled and swept
//! ranges without dropping any check.

use std::time::Instant;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;

use crate::bruhat::{bruhat_leq, bruhat_leq_subword_oracle};
use crate::classify::{
    classify, compute_case, default_sweep_degree, reduced_case_list, row_instances,
    stability_sweep_against, statistics, Backend, CaseSpec, ClassCatalog,
};
use crate::orbit_matrix::{enumerate_margin_matrices, matrix_poset};
use crate::parabolic::{BlockComposition, CosetSystem};
use crate::perm::{symmetric_group, Permutation};

/// The check names, in execution order.
pub const CHECK_NAMES: [&str; 10] = [
    "classification",
    "class-sizes",
    "class-heights",
    "lattice-census",
    "graded-census",
    "label-partition",
    "backend-equivalence",
    "stability-sweeps",
    "property-suites",
    "determinism",
];

/// The result of one named check.
#[derive(Clone, Debug)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CheckOutcome {
    /// One status line, as printed by the verification front ends.
    pub fn render(&self) -> String {
        format!(
            "{} {} ({:.2}s) {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.name,
            self.seconds,
            self.detail
        )
    }
}

pub fn all_passed(outcomes: &[CheckOutcome]) -> bool {
    outcomes.iter().all(|outcome| outcome.passed)
}

type Check = std::result::Result<String, String>;

fn run(name: &'static str, budget: Option<f64>, body: impl FnOnce() -> Check) -> CheckOutcome {
    let start = Instant::now();
    let result = body();
    let seconds = start.elapsed().as_secs_f64();
    match result {
        Ok(detail) => {
            if let Some(limit) = budget {
                if seconds > limit {
                    return CheckOutcome {
                        name,
                        passed: false,
                        detail: format!("completed in {seconds:.2}s, over the {limit}s budget: {detail}"),
                        seconds,
                    };
                }
            }
            CheckOutcome {
                name,
                passed: true,
                detail,
                seconds,
            }
        }
        Err(detail) => CheckOutcome {
            name,
            passed: false,
            detail,
            seconds,
        },
    }
}

fn reduced_catalog() -> std::result::Result<ClassCatalog, String> {
    classify(&reduced_case_list(), Backend::Matrix).map_err(|e| e.to_string())
}

/// Runs the full battery.  `quick` shrinks the swept degrees and the
/// sampled suites; every check still runs.
pub fn acceptance_checks(quick: bool) -> Vec<CheckOutcome> {
    vec![
        run(CHECK_NAMES[0], Some(5.0), || {
            let catalog = reduced_catalog()?;
            if catalog.class_count() != 29 {
                return Err(format!(
                    "expected 29 classes, found {}",
                    catalog.class_count()
                ));
            }
            Ok("49 reduced cases form 29 isomorphism classes".into())
        }),
        run(CHECK_NAMES[1], None, || {
            let catalog = reduced_catalog()?;
            let max = catalog.classes.iter().map(|c| c.size).max().unwrap_or(0);
            if max != 10 {
                return Err(format!("expected maximal class size 10, found {max}"));
            }
            Ok("every class has at most 10 elements, attained".into())
        }),
        run(CHECK_NAMES[2], None, || {
            let catalog = reduced_catalog()?;
            let max = catalog.classes.iter().map(|c| c.height).max().unwrap_or(0);
            if max != 6 {
                return Err(format!("expected maximal height 6, found {max}"));
            }
            Ok("every class has height at most 6, attained".into())
        }),
        run(CHECK_NAMES[3], None, || {
            let catalog = reduced_catalog()?;
            let stats = statistics(&catalog);
            if stats.lattices != 21 || stats.non_lattices != 8 {
                return Err(format!(
                    "expected 21 lattices and 8 non-lattices, found {} and {}",
                    stats.lattices, stats.non_lattices
                ));
            }
            for class in &catalog.classes {
                let label = class.label.ok_or("reduced class without a label")?;
                if !class.lattice && class.members.iter().any(|m| m.row() < 7) {
                    return Err(format!(
                        "non-lattice class {label} has a member below row 7"
                    ));
                }
                if class.members.iter().any(|m| m.row() == 8) && class.lattice {
                    return Err(format!("row 8 class {label} is unexpectedly a lattice"));
                }
            }
            Ok("21 lattices; all 8 non-lattices live in rows 7 and 8".into())
        }),
        run(CHECK_NAMES[4], None, || {
            let catalog = reduced_catalog()?;
            let mut non_graded: Vec<u8> = catalog
                .classes
                .iter()
                .filter(|c| !c.graded)
                .map(|c| c.label.map(|l| l.number()).ok_or("unlabeled class"))
                .collect::<std::result::Result<_, _>>()?;
            non_graded.sort_unstable();
            if non_graded != [21, 22, 25, 27, 28] {
                return Err(format!("non-graded labels are {non_graded:?}"));
            }
            Ok("exactly P.21, P.22, P.25, P.27, P.28 are non-graded".into())
        }),
        run(CHECK_NAMES[5], None, || {
            let catalog = reduced_catalog()?;
            let mut labels: Vec<u8> = Vec::new();
            let mut members = 0;
            for class in &catalog.classes {
                labels.push(class.label.ok_or("reduced class without a label")?.number());
                members += class.members.len();
            }
            labels.sort_unstable();
            if labels != (1..=29).collect::<Vec<u8>>() {
                return Err(format!("labels found: {labels:?}"));
            }
            if members != 49 {
                return Err(format!("expected 49 members in total, found {members}"));
            }
            Ok("the 49 case labels induce exactly the computed partition".into())
        }),
        run(CHECK_NAMES[6], Some(30.0), || {
            let cases = reduced_case_list();
            let selected: Vec<_> = cases
                .iter()
                .filter(|c| !quick || c.case.degree() <= 7)
                .collect();
            selected.par_iter().try_for_each(|labeled| {
                compute_case(&labeled.case, Backend::Both)
                    .map(|_| ())
                    .map_err(|e| format!("{}: {e}", labeled.case))
            })?;
            Ok(format!(
                "bruhat and matrix backends agree on {} cases",
                selected.len()
            ))
        }),
        run(CHECK_NAMES[7], Some(60.0), || {
            let reference = reduced_catalog()?;
            let mut total = 0;
            for row in 1..=8 {
                let degree = if quick {
                    default_sweep_degree(row).min(9)
                } else {
                    default_sweep_degree(row)
                };
                let report = stability_sweep_against(&reference, row, degree)
                    .map_err(|e| e.to_string())?;
                total += report.assignments.len();
            }
            Ok(format!(
                "{total} swept instances across rows 1..=8 all land in the 29 classes"
            ))
        }),
        run(CHECK_NAMES[8], None, || {
            let parts = vec![
                dominance_oracle_suite(quick)?,
                decomposition_suite(quick)?,
                duality_suite(quick)?,
                grassmannian_suite(quick)?,
                contingency_count_suite(quick)?,
            ];
            Ok(parts.join("; "))
        }),
        run(CHECK_NAMES[9], None, || {
            let first = reduced_catalog()?.to_json();
            let second = reduced_catalog()?.to_json();
            if first != second {
                return Err("two classification runs serialized differently".into());
            }
            let catalog: ClassCatalog =
                serde_json::from_str(&first).map_err(|e| e.to_string())?;
            let line = statistics(&catalog).to_string();
            let expected = "29 classes, max size 10, max height 6, 21 lattices, 5 non-graded";
            if line != expected {
                return Err(format!("summary line reads {line:?}"));
            }
            Ok("classification output is byte-stable across runs".into())
        }),
    ]
}

/// Dominance against the subword oracle: exhaustive through degree 4,
/// seeded samples at degrees 5 and 6.
fn dominance_oracle_suite(quick: bool) -> Check {
    let mut checked = 0usize;
    for n in 2..=4 {
        let all: Vec<Permutation> = symmetric_group(n)
            .map_err(|e| e.to_string())?
            .collect();
        for u in &all {
            for v in &all {
                let fast = bruhat_leq(u, v).map_err(|e| e.to_string())?;
                let slow = bruhat_leq_subword_oracle(u, v).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!("dominance disagrees with the oracle at {u}, {v}"));
                }
                checked += 1;
            }
        }
    }
    if !quick {
        for (n, samples, seed) in [(5usize, 600usize, 0xd001u64), (6, 400, 0xd002)] {
            let all: Vec<Permutation> = symmetric_group(n)
                .map_err(|e| e.to_string())?
                .collect();
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..samples {
                let u = &all[rng.gen_range(0..all.len())];
                let v = &all[rng.gen_range(0..all.len())];
                let fast = bruhat_leq(u, v).map_err(|e| e.to_string())?;
                let slow = bruhat_leq_subword_oracle(u, v).map_err(|e| e.to_string())?;
                if fast != slow {
                    return Err(format!("dominance disagrees with the oracle at {u}, {v}"));
                }
                checked += 1;
            }
        }
    }
    Ok(format!("dominance matches the subword oracle on {checked} pairs"))
}

fn all_compositions(n: usize) -> Vec<BlockComposition> {
    (0..(1u32 << (n - 1)))
        .map(|mask| composition_from_mask(n, mask))
        .collect()
}

fn composition_from_mask(n: usize, mask: u32) -> BlockComposition {
    let mut blocks = Vec::new();
    let mut current = 1u8;
    for i in 1..n {
        if mask & (1 << (i - 1)) != 0 {
            blocks.push(current);
            current = 1;
        } else {
            current += 1;
        }
    }
    blocks.push(current);
    BlockComposition::new(blocks).expect("cut masks give positive blocks")
}

/// Unique additive decompositions: exhaustive over every block pair and
/// group element through degree 5 (4 in quick mode), seeded samples at
/// degrees 6 and 7.  The decomposition routine hard-fails internally on
/// non-uniqueness or non-additive lengths.
fn decomposition_suite(quick: bool) -> Check {
    let mut checked = 0usize;
    let full_max = if quick { 4 } else { 5 };
    for n in 2..=full_max {
        let compositions = all_compositions(n);
        let elements: Vec<Permutation> = symmetric_group(n)
            .map_err(|e| e.to_string())?
            .collect();
        for left in &compositions {
            for right in &compositions {
                let system = CosetSystem::from_blocks(left.clone(), right.clone())
                    .map_err(|e| e.to_string())?;
                for x in &elements {
                    system
                        .additive_decomposition(x)
                        .map_err(|e| format!("{left}/{right}, x = {x}: {e}"))?;
                    checked += 1;
                }
            }
        }
    }
    if !quick {
        for (n, pairs, per_pair, seed) in [(6usize, 12usize, 30usize, 0xdec6u64), (7, 8, 20, 0xdec7)] {
            let mut rng = StdRng::seed_from_u64(seed);
            for _ in 0..pairs {
                let left = composition_from_mask(n, rng.gen_range(0..(1u32 << (n - 1))));
                let right = composition_from_mask(n, rng.gen_range(0..(1u32 << (n - 1))));
                let system = CosetSystem::from_blocks(left.clone(), right.clone())
                    .map_err(|e| e.to_string())?;
                for _ in 0..per_pair {
                    let mut word: Vec<u8> = (1..=n as u8).collect();
                    word.shuffle(&mut rng);
                    let x = Permutation::from_one_line(word).map_err(|e| e.to_string())?;
                    system
                        .additive_decomposition(&x)
                        .map_err(|e| format!("{left}/{right}, x = {x}: {e}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} additive decompositions are unique"))
}

/// Reversing both block compositions gives an isomorphic poset, for every
/// swept instance (reduced cases only in quick mode).
fn duality_suite(quick: bool) -> Check {
    let instances: Vec<CaseSpec> = if quick {
        reduced_case_list().into_iter().map(|l| l.case).collect()
    } else {
        let mut out = Vec::new();
        for row in 1..=8 {
            out.extend(
                row_instances(row, default_sweep_degree(row)).map_err(|e| e.to_string())?,
            );
        }
        out
    };
    instances.par_iter().try_for_each(|case| -> std::result::Result<(), String> {
        let left = case.blocks_left();
        let right = case.blocks_right();
        let poset = matrix_poset(left, right).map_err(|e| e.to_string())?;
        let dual = matrix_poset(&left.reversed(), &right.reversed())
            .map_err(|e| e.to_string())?;
        if poset.canonical_form().certificate() != dual.canonical_form().certificate() {
            return Err(format!("reversing {case} changes the poset"));
        }
        Ok(())
    })?;
    Ok(format!(
        "block reversal preserves all {} instance posets",
        instances.len()
    ))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut result = 1usize;
    for i in 0..k {
        result = result * (n - i) / (i + 1);
    }
    result
}

/// Grassmannian sanity: I = (k, n-k) against a trivial right group has
/// C(n, k) cosets.
fn grassmannian_suite(quick: bool) -> Check {
    let max = if quick { 6 } else { 8 };
    let mut checked = 0usize;
    for n in 2..=max {
        for k in 1..n {
            let left = BlockComposition::new(vec![k as u8, (n - k) as u8])
                .map_err(|e| e.to_string())?;
            let right = BlockComposition::new(vec![1; n]).map_err(|e| e.to_string())?;
            let system =
                CosetSystem::from_blocks(left, right).map_err(|e| e.to_string())?;
            let count = system
                .minimal_representatives()
                .map_err(|e| e.to_string())?
                .len();
            if count != binomial(n, k) {
                return Err(format!(
                    "({k}, {}) / ({n}) has {count} cosets, expected {}",
                    n - k,
                    binomial(n, k)
                ));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} Grassmannian coset counts match binomials"))
}

/// The margin-matrix enumeration is in bijection with the minimal
/// representatives, over seeded random block pairs.
fn contingency_count_suite(quick: bool) -> Check {
    let max = if quick { 5 } else { 7 };
    let pairs_per_degree = if quick { 6 } else { 12 };
    let mut checked = 0usize;
    let mut rng = StdRng::seed_from_u64(0xc0c0);
    for n in 4..=max {
        for _ in 0..pairs_per_degree {
            let left = composition_from_mask(n, rng.gen_range(0..(1u32 << (n - 1))));
            let right = composition_from_mask(n, rng.gen_range(0..(1u32 << (n - 1))));
            let matrices = enumerate_margin_matrices(&left, &right)
                .map_err(|e| e.to_string())?
                .len();
            let cosets = CosetSystem::from_blocks(left.clone(), right.clone())
                .map_err(|e| e.to_string())?
                .minimal_representatives()
                .map_err(|e| e.to_string())?
                .len();
            if matrices != cosets {
                return Err(format!(
                    "{left}/{right}: {matrices} matrices vs {cosets} cosets"
                ));
            }
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} margin enumerations match the coset counts"
    ))
}
