use idealkit::density::exact_density_structured;
use idealkit::setexpr::{member, symmetric_difference_prefix};
use idealkit::tiling::{
    anti_tile, bin_render, escape_count, normalize_ap_union, proper_tiles, tile_anti_tile_expr,
};
use idealkit::{parse_set_expr, Progression, SetExpr, Tiling};
use proptest::prelude::*;

fn ap(a: u64, b: u64) -> Progression {
    Progression::new(a, b).unwrap()
}

#[test]
fn proper_tile_order() {
    let t3: Vec<Vec<u64>> = vec![vec![], vec![2], vec![1], vec![1, 2], vec![0], vec![0, 2], vec![0, 1]];
    assert_eq!(proper_tiles(3).unwrap(), t3);
    assert_eq!(proper_tiles(1).unwrap(), vec![Vec::<u64>::new()]);
    assert_eq!(proper_tiles(2).unwrap(), vec![vec![], vec![1], vec![0]]);
    assert!(proper_tiles(0).is_err());
}

#[test]
fn anti_tile_examples() {
    assert_eq!(anti_tile(3, 3).unwrap().points, vec![0, 3, 6, 9, 13, 16, 20]);
    assert_eq!(anti_tile(1, 1).unwrap().points, vec![0]);
    assert_eq!(anti_tile(2, 4).unwrap().points, vec![0, 4, 9]);
    assert_eq!(anti_tile(3, 3).unwrap().length, 21);
    assert!(anti_tile(3, 2).is_err());
}

#[test]
fn renders() {
    let a = parse_set_expr("ANTITILE(3,3)").unwrap();
    assert_eq!(bin_render(&a, 21, Some(3)).unwrap(), "100,100,100,100,010,010,001");
    let concat: Vec<u64> = proper_tiles(3)
        .unwrap()
        .iter()
        .enumerate()
        .flat_map(|(i, t)| t.iter().map(move |&x| x + 3 * i as u64))
        .collect();
    assert_eq!(bin_render(&SetExpr::finite(concat), 21, Some(3)).unwrap(), "000,001,010,011,100,101,110");
    assert_eq!(bin_render(&SetExpr::tiling(3, 0, vec![0, 2]).unwrap(), 9, None).unwrap(), "101101101");
    assert!(bin_render(&a, 0, None).is_err());
}

#[test]
fn render_round_trip() {
    let t = SetExpr::tiling(5, 2, vec![0, 3]).unwrap();
    let s = bin_render(&t, 64, None).unwrap();
    let back: Vec<u64> = s.char_indices().filter(|&(_, c)| c == '1').map(|(i, _)| i as u64).collect();
    assert_eq!(bin_render(&SetExpr::finite(back), 64, None).unwrap(), s);
}

#[test]
fn normalization_examples() {
    let t = normalize_ap_union(&[ap(2, 1), ap(3, 2)]).unwrap();
    assert_eq!(t, Tiling::new(6, 2, vec![0, 1, 3, 5]).unwrap());
    let input = parse_set_expr("UNION(AP(2,1),AP(3,2))").unwrap();
    let diff = symmetric_difference_prefix(&input, &SetExpr::Tiling(t), 1, 100_000).unwrap();
    assert_eq!(diff.as_slice(), &[1]);
    assert_eq!(normalize_ap_union(&[ap(1, 0)]).unwrap(), Tiling::new(1, 0, vec![0]).unwrap());
    assert_eq!(normalize_ap_union(&[ap(4, 3)]).unwrap(), Tiling::new(4, 3, vec![0]).unwrap());
    assert!(normalize_ap_union(&[]).is_err());
}

#[test]
fn periodic_extension_examples() {
    let e = tile_anti_tile_expr(&anti_tile(3, 3).unwrap(), 1);
    assert_eq!(e, SetExpr::tiling(21, 1, vec![0, 3, 6, 9, 13, 16, 20]).unwrap());
    assert_eq!(tile_anti_tile_expr(&anti_tile(1, 1).unwrap(), 0), SetExpr::tiling(1, 0, vec![0]).unwrap());
    assert_eq!(tile_anti_tile_expr(&anti_tile(2, 4).unwrap(), 5), SetExpr::tiling(12, 5, vec![0, 4, 9]).unwrap());
}

#[test]
fn escape_examples() {
    let full = Tiling::new(1, 0, vec![0]).unwrap();
    let finite = SetExpr::finite(anti_tile(3, 3).unwrap().points);
    assert_eq!(escape_count(&finite, &full, 100).unwrap(), 0);
    let t = Tiling::new(4, 0, vec![1, 3]).unwrap();
    assert_eq!(escape_count(&parse_set_expr("AP(4,3)").unwrap(), &t, 1000).unwrap(), 0);

    let x = tile_anti_tile_expr(&anti_tile(3, 3).unwrap(), 1);
    for tile in proper_tiles(3).unwrap() {
        for b in 0..=3 {
            let cover = Tiling::new(3, b, tile.clone()).unwrap();
            let counts: Vec<u64> = [100, 1000, 10_000].iter().map(|&n| escape_count(&x, &cover, n).unwrap()).collect();
            assert!(counts[0] > 0 && counts.windows(2).all(|w| w[0] <= w[1]), "T = {tile:?}, b = {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn anti_tile_hits_one_gap_per_block(r in 1u32..6, extra in 0u64..5) {
        let s = r as u64 + extra;
        let spec = anti_tile(r, s).unwrap();
        let tiles = proper_tiles(r).unwrap();
        prop_assert_eq!(spec.points.len(), tiles.len());
        for (i, (t, &pt)) in tiles.iter().zip(&spec.points).enumerate() {
            let local = pt - i as u64 * s;
            prop_assert!(!t.contains(&local));
            prop_assert!((0..local).all(|x| t.contains(&x)));
        }
    }

    #[test]
    fn anti_tile_extension_escapes_every_proper_tiling(
        r in 1u32..5,
        mult in 1u64..3,
        extra in 0u32..2,
        pick in any::<prop::sample::Index>(),
        b in 0u64..10,
    ) {
        // the extension of A(r', s) with r' ≥ r and r | s
        let order = r + extra;
        let s = mult * r as u64 * (order as u64).div_ceil(r as u64);
        let x = tile_anti_tile_expr(&anti_tile(order, s).unwrap(), 1);
        let tiles = proper_tiles(r).unwrap();
        let cover = Tiling::new(r as u64, b, tiles[pick.index(tiles.len())].clone()).unwrap();
        let a = escape_count(&x, &cover, 2_000).unwrap();
        let c = escape_count(&x, &cover, 20_000).unwrap();
        prop_assert!(a > 0 && c > a);
    }

    #[test]
    fn normalization_agrees_past_offset(aps in prop::collection::vec((1u64..10, 0u64..15), 1..4)) {
        let aps: Vec<Progression> = aps.into_iter().map(|(a, b)| ap(a, b)).collect();
        let t = normalize_ap_union(&aps).unwrap();
        let union = SetExpr::union(aps.iter().map(|&p| SetExpr::Ap(p)).collect()).unwrap();
        for n in t.offset()..t.offset() + 3 * t.period() {
            prop_assert_eq!(member(&union, n), t.contains(n));
        }
        let d = exact_density_structured(&SetExpr::Tiling(t.clone())).unwrap();
        prop_assert!(d > num_traits::Zero::zero());
    }
}
