//! The EL-shelling route: block labeling of NC_(k)(W) ∪ {1̂}, falling-chain
//! censuses, and the factorization Möbius identities.

use ncp_core::catalan::positive_fuss_catalan;
use ncp_core::coxeter::{build_coxeter_system, CoxeterType};
use ncp_core::kdiv::{build_nc_lower, maximal_factorizations, DEFAULT_ELEMENT_CAP};
use ncp_core::nc::{build_nc, find_el_reflection_order};
use ncp_core::shelling::{
    self, count_falling_maximal_chains, factorization_mobius_sum, falling_maximal_chains,
    lex_block_labeling, sum_mobius_to_maxs,
};

fn small_grid() -> Vec<(CoxeterType, usize)> {
    let mut types = vec![
        CoxeterType::a(1),
        CoxeterType::a(2),
        CoxeterType::a(3),
        CoxeterType::b(2),
        CoxeterType::b(3),
        CoxeterType::i2(5),
        CoxeterType::i2(8),
    ];
    types
        .drain(..)
        .flat_map(|t| (1..=3).map(move |k| (t.clone(), k)))
        .collect()
}

#[test]
fn lex_block_label_set_shape_a2_k2() {
    let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let nc = build_nc(&sys);
    let order = find_el_reflection_order(&nc).unwrap();
    let lower = build_nc_lower(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
    let with_top = lower.poset.adjoin_top();
    let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();
    // 2 blocks of 3 reflections plus the separator.
    assert_eq!(labeling.label_set().len(), 7);
    assert_eq!(labeling.label_set().name(3), "θ"); // position 4, 1-indexed
}

#[test]
fn maximal_chain_words_end_in_separator() {
    let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let nc = build_nc(&sys);
    let order = find_el_reflection_order(&nc).unwrap();
    let lower = build_nc_lower(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
    let with_top = lower.poset.adjoin_top();
    let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();
    // Walk one maximal chain bottom to top and read its word.
    let bottom = with_top.bottom().unwrap();
    let top = with_top.top().unwrap();
    let mut chain = vec![bottom];
    while *chain.last().unwrap() != top {
        let next = with_top.up_covers(*chain.last().unwrap())[0];
        chain.push(next);
    }
    let word = shelling::chain_label_word(&with_top, &labeling, &chain).unwrap();
    assert_eq!(word.len(), 3); // rank n + 1
    let theta = order.len(); // separator position in the label set
    assert_eq!(*word.last().unwrap(), theta);
}

#[test]
fn rising_chain_of_nc_interval_is_strictly_increasing() {
    let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let nc = build_nc(&sys);
    let order = find_el_reflection_order(&nc).unwrap();
    let labeling = nc.natural_labeling(&order);
    let bottom = nc.bottom_index();
    let top = nc.top_index();
    let mut rising_words = Vec::new();
    for &atom in nc.poset().up_covers(bottom) {
        if !nc.poset().up_covers(atom).contains(&top) {
            continue;
        }
        let word = shelling::chain_label_word(nc.poset(), &labeling, &[bottom, atom, top]).unwrap();
        if shelling::is_rising(&word) {
            rising_words.push(word);
        }
    }
    assert_eq!(rising_words.len(), 1);
    assert!(rising_words[0][0] < rising_words[0][1]);
}

#[test]
fn lex_block_is_el_and_counts_match_mobius() {
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let order = find_el_reflection_order(&nc).unwrap();
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let with_top = lower.poset.adjoin_top();
        let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();

        let check = shelling::is_el_labeling(&with_top, &labeling).unwrap();
        assert!(
            check.is_el,
            "{ctype} k={k}: {:?}",
            check.witness.map(|w| w.kind)
        );

        let falling = count_falling_maximal_chains(&with_top, &labeling).unwrap();
        let rank = with_top.rank().unwrap();
        let mu = with_top.mobius_number().unwrap();
        assert_eq!(mu, (-1i64).pow(rank) * falling as i64, "{ctype} k={k}");
    }
}

#[test]
fn falling_chains_force_first_coordinate_to_identity() {
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let order = find_el_reflection_order(&nc).unwrap();
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let with_top = lower.poset.adjoin_top();
        let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();
        let top = with_top.len() - 1;
        for chain in falling_maximal_chains(&with_top, &labeling).unwrap() {
            // Second to last element is the maximal element before the top.
            let last = chain[chain.len() - 2];
            assert_ne!(last, top);
            assert_eq!(
                lower.deltas[last][0],
                sys.identity_id(),
                "{ctype} k={k}: falling chain tops out at delta_1 != e"
            );
        }
    }
}

#[test]
fn decomposition_census_equals_direct_count() {
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let order = find_el_reflection_order(&nc).unwrap();
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let with_top = lower.poset.adjoin_top();
        let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();
        let direct = count_falling_maximal_chains(&with_top, &labeling).unwrap();
        let maxs = maximal_factorizations(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let report = shelling::falling_chain_decomposition_report(&nc, &maxs, &order);
        assert_eq!(direct, report.total, "{ctype} k={k}");
        // Entry products multiply their per-block counts and sum to the total.
        let mut sum = 0u64;
        for entry in &report.entries {
            assert_eq!(entry.delta[0], sys.identity_id(), "{ctype} k={k}");
            assert_eq!(
                entry.per_block.iter().product::<u64>(),
                entry.product,
                "{ctype} k={k}"
            );
            sum += entry.product;
        }
        assert_eq!(sum, report.total, "{ctype} k={k}");
        assert_eq!(
            shelling::falling_chain_decomposition_census(&nc, &maxs, &order),
            direct,
            "{ctype} k={k}"
        );
    }
}

#[test]
fn factorization_mobius_sum_matches_positive_catalan() {
    for ctype in [
        CoxeterType::a(1),
        CoxeterType::a(2),
        CoxeterType::a(3),
        CoxeterType::b(2),
        CoxeterType::b(3),
        CoxeterType::i2(6),
    ] {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let n = sys.rank() as u32;
        for j in 1..=3usize {
            let total = factorization_mobius_sum(&nc, j, DEFAULT_ELEMENT_CAP).unwrap();
            let expected = (-1i128).pow(n) * positive_fuss_catalan(&ctype, j as u64).unwrap();
            assert_eq!(total, expected, "{ctype} j={j}");
        }
    }
}

#[test]
fn factorization_mobius_sum_examples() {
    // Single-term case: j = 1 sums mu([e, gamma]) alone.
    let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let nc = build_nc(&sys);
    assert_eq!(
        factorization_mobius_sum(&nc, 1, DEFAULT_ELEMENT_CAP).unwrap(),
        2
    );
    assert_eq!(
        factorization_mobius_sum(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap(),
        7
    );

    let sys1 = build_coxeter_system(&CoxeterType::a(1)).unwrap();
    let nc1 = build_nc(&sys1);
    assert_eq!(
        factorization_mobius_sum(&nc1, 2, DEFAULT_ELEMENT_CAP).unwrap(),
        -2
    );
}

#[test]
fn sum_to_maxs_matches_positive_catalan() {
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let total = sum_mobius_to_maxs(&lower.poset).unwrap();
        let n = sys.rank() as u32;
        let expected = (-1i128).pow(n) * positive_fuss_catalan(&ctype, k as u64).unwrap();
        assert_eq!(total as i128, expected, "{ctype} k={k}");
    }
}

#[test]
fn sum_to_maxs_examples() {
    let sys = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let nc = build_nc(&sys);
    let l1 = build_nc_lower(&nc, 1, DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(sum_mobius_to_maxs(&l1.poset).unwrap(), 2);
    let l2 = build_nc_lower(&nc, 2, DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(sum_mobius_to_maxs(&l2.poset).unwrap(), 7);

    let sys1 = build_coxeter_system(&CoxeterType::a(1)).unwrap();
    let nc1 = build_nc(&sys1);
    let l = build_nc_lower(&nc1, 2, DEFAULT_ELEMENT_CAP).unwrap();
    assert_eq!(sum_mobius_to_maxs(&l.poset).unwrap(), -2);
}

#[test]
fn top_adjoined_mobius_sign() {
    // mu(NC_(k)(W) ∪ {1̂}) = (-1)^(n-1) Cat+^(k-1)(W): the sign with n-1,
    // not n, is the one the computation supports.
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let with_top = lower.poset.adjoin_top();
        let mu = with_top.mobius_number().unwrap() as i128;
        let n = sys.rank() as u32;
        let catplus = positive_fuss_catalan(&ctype, k as u64 - 1).unwrap();
        assert_eq!(mu, (-1i128).pow(n - 1) * catplus, "{ctype} k={k}");
        if catplus != 0 {
            assert_ne!(mu, (-1i128).pow(n) * catplus, "{ctype} k={k}");
        }
    }
}

#[test]
fn maxs_deletion_check_on_lower_posets() {
    for (ctype, k) in small_grid() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let check = lower.poset.maxs_deletion_check().unwrap();
        assert!(check.equal, "{ctype} k={k}: {check:?}");
    }
}
