//! NC(W) and its EL-shelling across the supported desk-scale grid.

use ncp_core::catalan::{fuss_catalan, positive_fuss_catalan};
use ncp_core::coxeter::{build_coxeter_system, CoxeterType};
use ncp_core::nc::{build_nc, find_el_reflection_order};
use ncp_core::shelling;

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
fn nc_count_matches_fuss_catalan() {
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        assert_eq!(
            nc.len() as i128,
            fuss_catalan(&ctype, 1).unwrap(),
            "{ctype}"
        );
        assert!(nc.poset().is_graded(), "{ctype}");
        assert_eq!(nc.poset().rank(), Some(sys.rank() as u32), "{ctype}");
        // Rank via absolute length.
        for idx in 0..nc.len() {
            assert_eq!(
                nc.poset().rank_of(idx),
                sys.length_of(nc.element_id(idx)),
                "{ctype}"
            );
        }
    }
}

#[test]
fn nc_mobius_is_signed_positive_catalan() {
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let mu = nc.poset().mobius_number().unwrap();
        let n = sys.rank() as u32;
        let expected = (-1i128).pow(n) * positive_fuss_catalan(&ctype, 1).unwrap();
        assert_eq!(mu as i128, expected, "{ctype}");
    }
}

#[test]
fn el_order_found_and_validated_on_grid() {
    for ctype in grid_types() {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        let order = find_el_reflection_order(&nc).unwrap_or_else(|e| panic!("{ctype}: {e}"));
        let labeling = nc.natural_labeling(&order);
        let check = shelling::is_el_labeling(nc.poset(), &labeling).unwrap();
        assert!(check.is_el, "{ctype}: {:?}", check.witness.map(|w| w.kind));

        // Falling-chain rule: mu = (-1)^rank * falling count.
        let falling = shelling::count_falling_maximal_chains(nc.poset(), &labeling).unwrap();
        let rank = nc.poset().rank().unwrap();
        let mu = nc.poset().mobius_number().unwrap();
        assert_eq!(mu, (-1i64).pow(rank) * falling as i64, "{ctype}");
    }
}

#[test]
fn el_search_deterministic() {
    let ctype = CoxeterType::b(3);
    let sys = build_coxeter_system(&ctype).unwrap();
    let nc = build_nc(&sys);
    let o1 = find_el_reflection_order(&nc).unwrap();
    let o2 = find_el_reflection_order(&nc).unwrap();
    assert_eq!(o1.sequence(), o2.sequence());
}

#[test]
fn mobius_equals_hall_on_nc() {
    for ctype in [CoxeterType::a(3), CoxeterType::b(3), CoxeterType::h3()] {
        let sys = build_coxeter_system(&ctype).unwrap();
        let nc = build_nc(&sys);
        assert_eq!(
            nc.poset().mobius_number().unwrap(),
            nc.poset().mobius_by_hall(100_000_000).unwrap(),
            "{ctype}"
        );
    }
}

#[test]
fn interval_mobius_two_routes() {
    let sys = build_coxeter_system(&CoxeterType::a(3)).unwrap();
    let nc = build_nc(&sys);
    // Every rank-2 interval from the bottom is a small lattice whose Möbius
    // number both methods agree on.
    for idx in 0..nc.len() {
        if sys.length_of(nc.element_id(idx)) != 2 {
            continue;
        }
        let interval = nc.poset().interval(nc.bottom_index(), idx).unwrap();
        assert_eq!(
            interval.mobius_number().unwrap(),
            interval.mobius_by_hall(1_000_000).unwrap()
        );
    }
}
