//! Acceptance suite: one test per criterion, each printing a pass line.
//!
//! The verification grid is {A1..A4, B2, B3, D4, I2(3..12), H3} x {1, 2, 3};
//! every identity is exact (tolerance zero).

use std::time::Instant;

use ncp_cli::{cmd_verify, CacheConfig, Method, VerifyOptions};
use ncp_core::catalan::{fuss_catalan, positive_fuss_catalan};
use ncp_core::coxeter::{build_coxeter_system, CoxeterSystem, CoxeterType};
use ncp_core::kdiv::{
    build_nc_lower, build_nc_upper, surgered_poset_lower, surgered_poset_upper, DEFAULT_ELEMENT_CAP,
};
use ncp_core::nc::{build_nc, find_el_reflection_order};
use ncp_core::poset::random_graded_poset;
use ncp_core::shelling::{
    count_falling_maximal_chains, factorization_mobius_sum, falling_maximal_chains, is_el_labeling,
    lex_block_labeling, sum_mobius_to_maxs,
};

const HALL_CAP: u64 = 100_000_000;

fn grid_types() -> Vec<CoxeterType> {
    let mut grid = vec![
        CoxeterType::a(1),
        CoxeterType::a(2),
        CoxeterType::a(3),
        CoxeterType::a(4),
        CoxeterType::b(2),
        CoxeterType::b(3),
        CoxeterType::d(4),
        CoxeterType::h3(),
    ];
    for m in 3..=12 {
        grid.push(CoxeterType::i2(m));
    }
    grid
}

fn grid_cells() -> Vec<(CoxeterType, usize)> {
    grid_types()
        .into_iter()
        .flat_map(|t| (1..=3usize).map(move |k| (t.clone(), k)))
        .collect()
}

fn sign(n: u32) -> i128 {
    (-1i128).pow(n)
}

#[test]
fn criterion_1_identity_reproduction() {
    let start = Instant::now();
    for (ctype, k) in grid_cells() {
        let cell_start = Instant::now();
        let report = cmd_verify(&VerifyOptions {
            ctype: ctype.clone(),
            k: k as u64,
            method: Method::Both,
            gamma_perm: None,
            max_elements: DEFAULT_ELEMENT_CAP,
            cache: CacheConfig::disabled(),
        })
        .unwrap();
        let p = &report.payload;
        assert!(p.all_equal, "{ctype} k={k}: {p:?}");
        // All three routes were actually computed and agree with the formula.
        assert_eq!(p.lhs_mobius_upper, Some(p.rhs_formula), "{ctype} k={k}");
        assert_eq!(p.lhs_mobius_lower, Some(p.rhs_formula), "{ctype} k={k}");
        assert_eq!(p.lhs_falling_chain, Some(p.rhs_formula), "{ctype} k={k}");
        let elapsed = cell_start.elapsed();
        if ctype.rank <= 3 && format!("{ctype}").starts_with('A') {
            assert!(
                elapsed.as_secs_f64() < 1.0,
                "{ctype} k={k} took {elapsed:?}, expected under a second"
            );
        }
    }
    let total = start.elapsed();
    assert!(total.as_secs() < 600, "grid took {total:?}");
    println!("criterion 1 (identity via three routes vs formula, full grid): PASS in {total:.1?}");
}

#[test]
fn criterion_2_maxs_deletion_identity() {
    for (ctype, k) in grid_cells() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let check = lower.poset.maxs_deletion_check().unwrap();
        assert!(check.equal, "{ctype} k={k}: {check:?}");
    }
    for seed in 0..1000u64 {
        let p = random_graded_poset(seed, 40);
        assert!(p.len() <= 40);
        let check = p.maxs_deletion_check().unwrap();
        assert!(check.equal, "random poset seed {seed}: {check:?}");
    }
    println!("criterion 2 (maxs-deletion identity, grid + 1000 random graded posets): PASS");
}

#[test]
fn criterion_3_factorization_mobius_sum() {
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let n = sys.rank() as u32;
        for j in 1..=3usize {
            let total = factorization_mobius_sum(&nc, j, DEFAULT_ELEMENT_CAP).unwrap();
            let expected = sign(n) * positive_fuss_catalan(&ctype, j as u64).unwrap();
            assert_eq!(total, expected, "{ctype} j={j}");
        }
    }
    println!("criterion 3 (factorization Möbius sums = signed positive Fuss-Catalan): PASS");
}

struct ElAccepted {
    ctype: CoxeterType,
    k: usize,
    poset: ncp_core::FinitePoset,
    labeling: ncp_core::shelling::EdgeLabeling,
    deltas: Vec<Vec<usize>>,
    identity: usize,
}

fn build_el_accepted() -> (
    Vec<(
        CoxeterType,
        ncp_core::FinitePoset,
        ncp_core::shelling::EdgeLabeling,
    )>,
    Vec<ElAccepted>,
) {
    let mut nat = Vec::new();
    let mut block = Vec::new();
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let order = find_el_reflection_order(&nc).unwrap();
        let labeling = nc.natural_labeling(&order);
        nat.push((ctype.clone(), clone_poset(nc.poset()), labeling));
        for k in 1..=3usize {
            let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
            let with_top = lower.poset.adjoin_top();
            let labeling = lex_block_labeling(&sys, &with_top, &lower.deltas, &order).unwrap();
            block.push(ElAccepted {
                ctype: ctype.clone(),
                k,
                poset: with_top,
                labeling,
                deltas: lower.deltas.clone(),
                identity: sys.identity_id(),
            });
        }
    }
    (nat, block)
}

fn clone_poset(p: &ncp_core::FinitePoset) -> ncp_core::FinitePoset {
    // Rebuild from covers; cheap at these sizes.
    ncp_core::FinitePoset::from_covers(p.labels().to_vec(), p.covers()).unwrap()
}

#[test]
fn criterion_4_el_shellability_exhaustive() {
    let (nat, block) = build_el_accepted();
    for (ctype, poset, labeling) in &nat {
        let check = is_el_labeling(poset, labeling).unwrap();
        assert!(
            check.is_el,
            "NC({ctype}): {:?}",
            check.witness.map(|w| w.kind)
        );
    }
    for item in &block {
        let check = is_el_labeling(&item.poset, &item.labeling).unwrap();
        assert!(
            check.is_el,
            "NC_({}) k={} with top: {:?}",
            item.ctype,
            item.k,
            check.witness.map(|w| w.kind)
        );
    }
    println!(
        "criterion 4 (EL-labelings accepted exhaustively: {} natural + {} block): PASS",
        nat.len(),
        block.len()
    );
}

#[test]
fn criterion_5_falling_chain_rule() {
    let (nat, block) = build_el_accepted();
    for (ctype, poset, labeling) in &nat {
        let falling = count_falling_maximal_chains(poset, labeling).unwrap();
        let rank = poset.rank().unwrap();
        assert_eq!(
            poset.mobius_number().unwrap(),
            (-1i64).pow(rank) * falling as i64,
            "NC({ctype})"
        );
    }
    for item in &block {
        let falling = count_falling_maximal_chains(&item.poset, &item.labeling).unwrap();
        let rank = item.poset.rank().unwrap();
        assert_eq!(
            item.poset.mobius_number().unwrap(),
            (-1i64).pow(rank) * falling as i64,
            "NC_({}) k={}",
            item.ctype,
            item.k
        );
        // Every falling maximal chain tops out at a sequence with first
        // coordinate e.
        let top = item.poset.len() - 1;
        for chain in falling_maximal_chains(&item.poset, &item.labeling).unwrap() {
            let before_top = chain[chain.len() - 2];
            assert_ne!(before_top, top);
            assert_eq!(
                item.deltas[before_top][0], item.identity,
                "NC_({}) k={}: falling chain with delta_1 != e",
                item.ctype, item.k
            );
        }
    }
    println!("criterion 5 (mu = (-1)^rank x falling census; delta_1 = e on falling chains): PASS");
}

#[test]
fn criterion_6_counting_oracles() {
    for (ctype, k) in grid_cells() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let upper = build_nc_upper(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        assert_eq!(
            upper.poset.len() as i128,
            fuss_catalan(&ctype, k as u64).unwrap(),
            "{ctype} k={k}: |NC^(k)|"
        );
        let lower = build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap();
        let n = sys.rank() as u32;
        assert_eq!(
            sign(n) * sum_mobius_to_maxs(&lower.poset).unwrap() as i128,
            positive_fuss_catalan(&ctype, k as u64).unwrap(),
            "{ctype} k={k}: signed sum to maxs"
        );
    }
    // Spot values, frozen from independent enumeration.
    let a2 = build_coxeter_system(&CoxeterType::a(2)).unwrap();
    let a3 = build_coxeter_system(&CoxeterType::a(3)).unwrap();
    assert_eq!(build_nc(&a2).len(), 5);
    assert_eq!(build_nc(&a3).len(), 14);
    let nc_a2 = build_nc(&a2);
    assert_eq!(
        build_nc_upper(&nc_a2, 2, DEFAULT_ELEMENT_CAP)
            .unwrap()
            .poset
            .len(),
        12
    );
    assert_eq!(positive_fuss_catalan(&CoxeterType::a(2), 2).unwrap(), 7);
    println!("criterion 6 (counting oracles and spot values 5/14/12/7): PASS");
}

#[test]
fn criterion_7_cross_oracles() {
    // Absolute length via BFS vs fixed-space codimension, every element.
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        for id in 0..sys.group_order() {
            assert_eq!(
                sys.length_of(id),
                sys.fixed_space_codim_id(id),
                "{ctype}: {}",
                sys.render_id(id)
            );
        }
    }
    // Möbius recursion vs Hall's chain alternation on the bounded posets
    // the earlier criteria build.
    let mut checked = 0usize;
    for (ctype, k) in grid_cells() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let mut posets = vec![
            surgered_poset_upper(&nc, k, DEFAULT_ELEMENT_CAP).unwrap(),
            surgered_poset_lower(&nc, k, DEFAULT_ELEMENT_CAP).unwrap(),
            build_nc_lower(&nc, k, DEFAULT_ELEMENT_CAP)
                .unwrap()
                .poset
                .adjoin_top(),
        ];
        if k == 1 {
            posets.push(clone_poset(nc.poset()));
        }
        for p in posets {
            assert_eq!(
                p.mobius_number().unwrap(),
                p.mobius_by_hall(HALL_CAP).unwrap(),
                "{ctype} k={k}"
            );
            checked += 1;
        }
    }
    println!("criterion 7 (BFS = fixed-space length; recursion = Hall on {checked} posets): PASS");
}

fn _system_is_send_sync(s: CoxeterSystem) -> impl Send + Sync {
    s
}
