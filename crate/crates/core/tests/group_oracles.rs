//! Cross-oracle checks for the group layer: exhaustive closure counts,
//! absolute order axioms, and the fixed-space codimension route to absolute
//! length, which never touches the BFS table.

use ncp_core::catalan::degrees;
use ncp_core::coxeter::{build_coxeter_system, CoxeterSystem, CoxeterType};
use proptest::prelude::*;

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

#[test]
fn closure_counts_match_degree_tables() {
    for ctype in grid_types().into_iter().chain([CoxeterType::f4()]) {
        let sys = build_coxeter_system(&ctype).unwrap();
        let data = degrees(&ctype).unwrap();
        assert_eq!(sys.group_order() as u128, data.group_order(), "{ctype}");
        assert_eq!(
            sys.num_reflections() as u64,
            data.num_reflections(),
            "{ctype}"
        );
        // |T| = n h / 2.
        assert_eq!(
            2 * sys.num_reflections() as u64,
            sys.rank() as u64 * data.coxeter_number,
            "{ctype}"
        );
    }
}

#[test]
fn absolute_length_equals_fixed_space_codimension() {
    for ctype in grid_types().into_iter().chain([CoxeterType::f4()]) {
        let sys = build_coxeter_system(&ctype).unwrap();
        for id in 0..sys.group_order() {
            assert_eq!(
                sys.length_of(id),
                sys.fixed_space_codim_id(id),
                "{ctype}: element {}",
                sys.render_id(id)
            );
        }
    }
}

#[test]
fn absolute_order_is_a_partial_order() {
    // Reflexivity, antisymmetry, transitivity, exhaustively.
    for ctype in grid_types().into_iter().chain([CoxeterType::f4()]) {
        let sys = build_coxeter_system(&ctype).unwrap();
        let n = sys.group_order();
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = sys.leq_ids(a, b);
            }
        }
        for a in 0..n {
            assert!(leq[a * n + a], "{ctype}: reflexivity");
        }
        for a in 0..n {
            for b in 0..n {
                if a != b && leq[a * n + b] {
                    assert!(!leq[b * n + a], "{ctype}: antisymmetry");
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                if !leq[a * n + b] {
                    continue;
                }
                for c in 0..n {
                    if leq[b * n + c] {
                        assert!(leq[a * n + c], "{ctype}: transitivity");
                    }
                }
            }
        }
    }
}

#[test]
fn reflections_are_exactly_the_length_one_elements() {
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let by_length: Vec<usize> = (0..sys.group_order())
            .filter(|&w| sys.length_of(w) == 1)
            .collect();
        let mut by_closure = sys.reflection_ids().to_vec();
        by_closure.sort_unstable();
        assert_eq!(by_length, by_closure, "{ctype}");
    }
}

#[test]
fn length_symmetries_exhaustive_small() {
    for ctype in [CoxeterType::a(3), CoxeterType::b(3), CoxeterType::i2(9)] {
        let sys = build_coxeter_system(&ctype).unwrap();
        for w in 0..sys.group_order() {
            assert_eq!(sys.length_of(w), sys.length_of(sys.inv_id(w)), "{ctype}");
        }
        for u in 0..sys.group_order() {
            for w in 0..sys.group_order() {
                let conj = sys.mul_ids(sys.mul_ids(u, w), sys.inv_id(u));
                assert_eq!(sys.length_of(conj), sys.length_of(w), "{ctype}");
            }
        }
    }
}

fn d4() -> &'static CoxeterSystem {
    use std::sync::OnceLock;
    static SYS: OnceLock<CoxeterSystem> = OnceLock::new();
    SYS.get_or_init(|| build_coxeter_system(&CoxeterType::d(4)).unwrap())
}

proptest! {
    #[test]
    fn group_axioms_sampled(a in 0usize..192, b in 0usize..192, c in 0usize..192) {
        let sys = d4();
        // Associativity.
        let left = sys.mul_ids(sys.mul_ids(a, b), c);
        let right = sys.mul_ids(a, sys.mul_ids(b, c));
        prop_assert_eq!(left, right);
        // Two-sided identity and inverses.
        let e = sys.identity_id();
        prop_assert_eq!(sys.mul_ids(a, e), a);
        prop_assert_eq!(sys.mul_ids(e, a), a);
        prop_assert_eq!(sys.mul_ids(a, sys.inv_id(a)), e);
    }

    #[test]
    fn conjugation_preserves_length_sampled(u in 0usize..192, w in 0usize..192) {
        let sys = d4();
        let conj = sys.mul_ids(sys.mul_ids(u, w), sys.inv_id(u));
        prop_assert_eq!(sys.length_of(conj), sys.length_of(w));
    }

    #[test]
    fn absolute_leq_via_length_identity(a in 0usize..192, b in 0usize..192) {
        let sys = d4();
        let quot = sys.mul_ids(sys.inv_id(a), b);
        let holds = sys.length_of(b) == sys.length_of(a) + sys.length_of(quot);
        prop_assert_eq!(sys.leq_ids(a, b), holds);
    }
}
