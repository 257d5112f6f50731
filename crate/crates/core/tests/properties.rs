//! Randomized invariants of the permutation, coset, and poset layers.

use doubleflag_core::bruhat::{bruhat_leq, bruhat_leq_subword_oracle};
use doubleflag_core::parabolic::element_of_parabolic;
use doubleflag_core::poset::FinitePoset;
use doubleflag_core::{
    enumerate_margin_matrices, matrix_poset, coset_to_matrix, BlockComposition, CosetSystem,
    Permutation,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn permutation_of(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|entries| Permutation::from_one_line(entries).expect("shuffled one-line word"))
}

fn permutation(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n).prop_flat_map(permutation_of)
}

fn composition_of(n: usize, mask: usize) -> BlockComposition {
    let mut blocks = Vec::new();
    let mut run = 1u8;
    for i in 1..n {
        if mask & (1 << (i - 1)) != 0 {
            blocks.push(run);
            run = 1;
        } else {
            run += 1;
        }
    }
    blocks.push(run);
    BlockComposition::new(blocks).expect("mask cuts a valid composition")
}

fn composition_pair(max_n: usize) -> impl Strategy<Value = (BlockComposition, BlockComposition)> {
    (2..=max_n).prop_flat_map(|n| {
        (0..1usize << (n - 1), 0..1usize << (n - 1))
            .prop_map(move |(a, b)| (composition_of(n, a), composition_of(n, b)))
    })
}

fn longest_element(n: usize) -> Permutation {
    Permutation::from_one_line((1..=n as u8).rev().collect()).expect("reversed word")
}

proptest! {
    #[test]
    fn length_tracks_inverses_and_simple_products(w in permutation(7)) {
        prop_assert_eq!(w.inverse().inverse().clone(), w.clone());
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(w.left_descents(), w.inverse().right_descents());
        for i in 1..w.degree() {
            let longer = w.right_mul_simple(i);
            if w.right_descents().contains(i) {
                prop_assert_eq!(longer.length() + 1, w.length());
            } else {
                prop_assert_eq!(longer.length(), w.length() + 1);
            }
        }
    }

    #[test]
    fn composition_round_trips_through_generators(
        (left, right) in composition_pair(8),
    ) {
        for c in [&left, &right] {
            let generators = c.to_generators().expect("within degree budget");
            prop_assert_eq!(BlockComposition::from_generators(&generators), c.clone());
            prop_assert_eq!(c.reversed().reversed(), c.clone());
            prop_assert_eq!(
                c.reversed().to_generators().expect("reversal keeps the total"),
                generators.theta()
            );
            prop_assert_eq!(generators.len() + c.block_count(), c.total());
        }
    }

    #[test]
    fn bruhat_symmetries_hold((u, v) in (2..=6usize).prop_flat_map(
        |n| (permutation_of(n), permutation_of(n)),
    )) {
        let n = u.degree();
        let w0 = longest_element(n);
        let id = Permutation::identity(n);
        prop_assert!(bruhat_leq(&id, &u).unwrap());
        prop_assert!(bruhat_leq(&u, &w0).unwrap());
        let forward = bruhat_leq(&u, &v).unwrap();
        if forward {
            prop_assert!(u.length() <= v.length());
            if u.length() == v.length() {
                prop_assert_eq!(u.clone(), v.clone());
            }
        }
        // Inversion and conjugation by the longest element are poset
        // automorphisms; left multiplication by it is an antiautomorphism.
        prop_assert_eq!(bruhat_leq(&u.inverse(), &v.inverse()).unwrap(), forward);
        let cu = w0.compose(&u).unwrap().compose(&w0).unwrap();
        let cv = w0.compose(&v).unwrap().compose(&w0).unwrap();
        prop_assert_eq!(bruhat_leq(&cu, &cv).unwrap(), forward);
        let ru = w0.compose(&u).unwrap();
        let rv = w0.compose(&v).unwrap();
        prop_assert_eq!(bruhat_leq(&rv, &ru).unwrap(), forward);
    }

    #[test]
    fn dominance_matches_the_subword_oracle((u, v) in (2..=5usize).prop_flat_map(
        |n| (permutation_of(n), permutation_of(n)),
    )) {
        prop_assert_eq!(
            bruhat_leq(&u, &v).unwrap(),
            bruhat_leq_subword_oracle(&u, &v).unwrap()
        );
    }

    #[test]
    fn margins_count_cosets((left, right) in composition_pair(6)) {
        let matrices = enumerate_margin_matrices(&left, &right).unwrap();
        let system = CosetSystem::from_blocks(left, right).unwrap();
        let reps = system.minimal_representatives().unwrap();
        prop_assert_eq!(matrices.len(), reps.len());
        for matrix in &matrices {
            let rep = matrix.to_minimal_representative().unwrap();
            prop_assert!(system.is_minimal_representative(&rep));
            let back = coset_to_matrix(&rep, &system).unwrap();
            prop_assert_eq!(back.entries_label(), matrix.entries_label());
        }
    }

    #[test]
    fn decompositions_reconstruct_their_element(
        (left, right, x) in (2..=6usize).prop_flat_map(|n| (
            (0..1usize << (n - 1)).prop_map(move |m| composition_of(n, m)),
            (0..1usize << (n - 1)).prop_map(move |m| composition_of(n, m)),
            permutation_of(n),
        )),
    ) {
        let system = CosetSystem::from_blocks(left, right).unwrap();
        let parts = system.additive_decomposition(&x).unwrap();
        let product = parts
            .left
            .compose(&parts.rep)
            .unwrap()
            .compose(&parts.right)
            .unwrap();
        prop_assert_eq!(product, x.clone());
        prop_assert_eq!(
            parts.left.length() + parts.rep.length() + parts.right.length(),
            x.length()
        );
        prop_assert!(system.is_minimal_representative(&parts.rep));
        prop_assert_eq!(parts.rep.clone(), system.minimal_representative(&x).unwrap());
        prop_assert!(element_of_parabolic(&parts.left, system.generators_left()));
        prop_assert!(element_of_parabolic(&parts.right, system.generators_right()));
    }

    #[test]
    fn coset_posets_have_dihedral_symmetries((left, right) in composition_pair(5)) {
        let poset = matrix_poset(&left, &right).unwrap();
        // The full S_5 Bruhat order is too symmetric to canonicalize quickly.
        prop_assume!(poset.size() <= 60);
        let certificate = poset.canonical_form().hex();
        // Reversing both compositions conjugates by the longest element.
        let reflected = matrix_poset(&left.reversed(), &right.reversed()).unwrap();
        prop_assert_eq!(reflected.canonical_form().hex(), certificate.clone());
        // Swapping the sides inverts the representatives.
        let swapped = matrix_poset(&right, &left).unwrap();
        prop_assert_eq!(swapped.canonical_form().hex(), certificate.clone());
        // The matrix route agrees with the Bruhat route.
        let system = CosetSystem::from_blocks(left, right).unwrap();
        let bruhat = system.coset_poset().unwrap();
        prop_assert_eq!(bruhat.canonical_form().hex(), certificate);
    }

    #[test]
    fn certificates_ignore_relabeling(
        (left, right) in composition_pair(5),
        seed in any::<u64>(),
    ) {
        let poset = matrix_poset(&left, &right).unwrap();
        prop_assume!(poset.size() <= 60);
        let mut map: Vec<usize> = (0..poset.size()).collect();
        map.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let labels = map.iter().map(|x| format!("e{x}")).collect();
        let relabeled =
            FinitePoset::from_order_relation(labels, |a, b| poset.leq(map[a], map[b])).unwrap();
        prop_assert_eq!(
            relabeled.canonical_form().hex(),
            poset.canonical_form().hex()
        );
        prop_assert!(relabeled.is_isomorphic_to(&poset));
    }
}
