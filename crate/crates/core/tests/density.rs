use idealkit::density::{
    banach_window_density, densities_report, exact_density_structured, prefix_density,
    tile_density_upper_bound, DensityKind,
};
use idealkit::verify::ratio;
use idealkit::witness::{witness_br_r, witness_tr_br};
use idealkit::{parse_set_expr, Rational, SetExpr};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn p(s: &str) -> SetExpr {
    parse_set_expr(s).unwrap()
}

#[test]
fn prefix_density_examples() {
    assert_eq!(prefix_density(&p("AP(2,0)"), 100).unwrap(), ratio(1, 2));
    let f = p("FINITE{1,2,3,500}");
    assert_eq!(prefix_density(&f, 10).unwrap(), ratio(3, 10));
    assert_eq!(prefix_density(&f, 10_000).unwrap(), ratio(4, 10_000));
    assert!(prefix_density(&f, 0).is_err());
}

#[test]
fn br_r_union_density_bound() {
    let fam = witness_br_r(30).unwrap();
    let u = SetExpr::Finite(fam.union_all());
    for m in [10u64, 12, 16] {
        let d = prefix_density(&u, 1 << m).unwrap();
        assert!(d <= ratio(m * (m + 1), 1 << m), "m = {m}");
    }
}

#[test]
fn banach_examples() {
    assert_eq!(banach_window_density(&p("AP(2,0)"), 10, 1000).unwrap(), ratio(1, 2));
    let fam = witness_br_r(5).unwrap();
    assert_eq!(banach_window_density(&SetExpr::Finite(fam.union_all()), 5, 40).unwrap(), Rational::one());
    assert_eq!(banach_window_density(&p("FINITE{}"), 7, 100).unwrap(), Rational::zero());
}

#[test]
fn exact_structured_examples() {
    assert_eq!(exact_density_structured(&p("TILING(8,1,{7})")), Some(ratio(1, 8)));
    assert_eq!(exact_density_structured(&p("AP(3,2)")), Some(ratio(1, 3)));
    assert_eq!(exact_density_structured(&p("UNION(AP(2,0),AP(2,1))")), None);
}

#[test]
fn tile_bound_examples() {
    assert_eq!(tile_density_upper_bound(&p("TILING(8,1,{7})"), 10_000, 16, 4).unwrap(), ratio(1, 8));
    assert_eq!(tile_density_upper_bound(&p("AP(1,0)"), 1000, 8, 8).unwrap(), Rational::one());
    assert!(tile_density_upper_bound(&p("AP(1,0)"), 8, 8, 8).is_err());
}

#[test]
fn anti_tile_blocks_resist_small_periods() {
    let fam = witness_tr_br(8).unwrap();
    let u = SetExpr::Finite(fam.union_all());
    assert_eq!(tile_density_upper_bound(&u, 10_000, 5, 8).unwrap(), Rational::one());
    assert_eq!(tile_density_upper_bound(&u, 50_000, 6, 8).unwrap(), Rational::one());
    // at N = 10^4 the only block of order 6 is incomplete, and period 6 finds a gap
    assert_eq!(tile_density_upper_bound(&u, 10_000, 6, 8).unwrap(), ratio(5, 6));
}

#[test]
fn report_examples() {
    let rows = densities_report(&p("FINITE{1,2,3}"), &[10, 100, 1000]).unwrap();
    let natural: Vec<Rational> = rows
        .iter()
        .filter(|r| r.kind == DensityKind::Natural && !r.exact)
        .map(|r| r.value.clone())
        .collect();
    assert_eq!(natural, vec![ratio(3, 10), ratio(3, 100), ratio(3, 1000)]);

    let rows = densities_report(&p("AP(2,0)"), &[100]).unwrap();
    assert!(rows.iter().all(|r| r.value == ratio(1, 2)));
    assert!(rows.iter().any(|r| r.kind == DensityKind::Banach));
    assert!(rows.iter().any(|r| r.exact));
}

fn tiling() -> impl Strategy<Value = (u64, u64, Vec<u64>)> {
    (1u64..16, 0u64..40).prop_flat_map(|(r, b)| {
        (Just(r), Just(b), prop::collection::btree_set(0..r, 0..=r as usize).prop_map(|s| s.into_iter().collect()))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn banach_dominates_natural(e in prop::collection::vec(1u64..500, 0..40), n in 50u64..500, w in 1u64..50) {
        let x = SetExpr::finite(e);
        let b = banach_window_density(&x, w, n).unwrap();
        let d = prefix_density(&x, n).unwrap();
        prop_assert!(b >= d);
        prop_assert!(b <= Rational::one());
    }

    #[test]
    fn tiling_prefix_density_converges((r, b, t) in tiling(), n in 100u64..5000) {
        let x = SetExpr::tiling(r, b, t.clone()).unwrap();
        let d = prefix_density(&x, n).unwrap();
        let exact = ratio(t.len() as u64, r);
        let err = if d > exact { &d - &exact } else { &exact - &d };
        prop_assert!(err <= ratio(r + b, n));
    }

    #[test]
    fn tile_bound_monotone((r, b, t) in tiling(), r_max in 1u64..12, drop in 0u64..6) {
        let x = SetExpr::tiling(r, b, t).unwrap();
        let n = 2000;
        let base = tile_density_upper_bound(&x, n, r_max, drop).unwrap();
        prop_assert!(tile_density_upper_bound(&x, n, r_max + 1, drop).unwrap() <= base);
        prop_assert!(tile_density_upper_bound(&x, n, r_max, drop + 1).unwrap() <= base);
    }
}
