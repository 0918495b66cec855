use anncat::algebra::{
    find_isomorphism, make_bimodule, subquotient, Bimodule, BimoduleSpec, FiniteAbelianGroup, FiniteRing,
    GroupHom, Matrix,
};
use proptest::prelude::*;
use std::collections::HashSet;

mod common;

fn matrix() -> impl Strategy<Value = Matrix<i64>> {
    (1usize..=8, 1usize..=8).prop_flat_map(|(r, c)| {
        prop::collection::vec(-10i64..=10, r * c).prop_map(move |v| {
            let rows: Vec<Vec<i64>> = v.chunks(c).map(<[i64]>::to_vec).collect();
            Matrix::from_rows(c, &rows)
        })
    })
}

proptest! {
    #[test]
    fn smith_form_is_exact(a in matrix()) {
        if let Err(e) = common::check_smith(&a) {
            prop_assert!(false, "{}", e);
        }
    }
}

fn chain() -> impl Strategy<Value = Vec<u64>> {
    prop::sample::select(vec![vec![], vec![2], vec![4], vec![6], vec![2, 2], vec![2, 4], vec![3, 6], vec![2, 2, 2]])
}

fn order(g: &FiniteAbelianGroup, x: &[u64]) -> u64 {
    (1..=g.exponent()).find(|&k| x.iter().zip(g.invariant_factors()).all(|(&a, &d)| a * k % d == 0)).unwrap()
}

fn span(g: &FiniteAbelianGroup, gens: &[Vec<u64>]) -> HashSet<Vec<u64>> {
    let mut set: HashSet<Vec<u64>> = [g.zero()].into();
    let mut frontier = vec![g.zero()];
    while let Some(x) = frontier.pop() {
        for s in gens {
            let y = g.add(&x, s);
            if set.insert(y.clone()) {
                frontier.push(y);
            }
        }
    }
    set
}

proptest! {
    /// `ker(h) / im(k)` against listing both subgroups.
    #[test]
    fn subquotient_matches_listing(gf in chain(), hf in chain(), seeds in prop::collection::vec(any::<u64>(), 8)) {
        let g = FiniteAbelianGroup::new(gf).unwrap();
        let h_grp = FiniteAbelianGroup::new(hf).unwrap();
        let pick = |pool: &[Vec<u64>], s: u64| pool[(s % pool.len() as u64) as usize].clone();
        let h_images: Vec<Vec<u64>> = g
            .invariant_factors()
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let pool: Vec<Vec<u64>> = h_grp.elements().filter(|y| d % order(&h_grp, y) == 0).collect();
                pick(&pool, seeds[i])
            })
            .collect();
        let h = GroupHom::new(g.clone(), h_grp.clone(), &h_images).unwrap();
        let kernel: Vec<Vec<u64>> = g.elements().filter(|x| h.apply(x).iter().all(|&a| a == 0)).collect();
        let k_dom = FiniteAbelianGroup::new(vec![g.exponent(); 2]).unwrap();
        let k_images: Vec<Vec<u64>> = (0..k_dom.rank()).map(|i| pick(&kernel, seeds[4 + i])).collect();
        let k = GroupHom::new(k_dom, g.clone(), &k_images).unwrap();
        let image = span(&g, &k_images);
        let sq = subquotient(&h, &k).unwrap();
        prop_assert_eq!(sq.group().order() * image.len() as u128, kernel.len() as u128);
        for x in &kernel {
            for y in &kernel {
                let same = image.contains(&g.add(x, &g.neg(y)));
                prop_assert_eq!(sq.class_of(x) == sq.class_of(y), same);
            }
            let c = sq.class_of(x).unwrap();
            prop_assert_eq!(sq.class_of(&sq.section(&c)), Some(c));
        }
    }
}

#[test]
fn chinese_remainder_isomorphisms() {
    let z = |n| FiniteRing::cyclic(n).unwrap();
    assert!(find_isomorphism(z(6).rng(), FiniteRing::product(&z(2), &z(3)).rng()).is_some());
    assert!(find_isomorphism(z(4).rng(), FiniteRing::product(&z(2), &z(2)).rng()).is_none());
    assert!(find_isomorphism(z(4).rng(), FiniteRing::dual_numbers(2).unwrap().rng()).is_none());
}

#[test]
fn table_specs_reproduce_modules() {
    let dual = FiniteRing::dual_numbers(2).unwrap();
    let z = |n| FiniteRing::cyclic(n).unwrap();
    for m in [
        Bimodule::regular(&dual),
        Bimodule::regular(&z(4)),
        Bimodule::regular(&FiniteRing::product(&z(2), &z(2))),
        Bimodule::regular(&z(2)).pullback(&z(4), &[0, 1, 0, 1]).unwrap(),
    ] {
        let spec = BimoduleSpec::Tables {
            invariant_factors: m.factors().to_vec(),
            left: m.left_table(),
            right: m.right_table(),
        };
        let m2 = make_bimodule(m.ring(), &spec).unwrap();
        for a in 0..m.order() {
            let b = m2.from_coords(m.coords(a));
            for r in m.ring().elements() {
                assert_eq!(m.coords(m.left(r, a)), m2.coords(m2.left(r, b)));
                assert_eq!(m.coords(m.right(a, r)), m2.coords(m2.right(b, r)));
            }
        }
    }
}

#[test]
fn pullback_along_non_homomorphism_fails() {
    let z = |n| FiniteRing::cyclic(n).unwrap();
    assert!(Bimodule::regular(&z(3)).pullback(&z(4), &[0, 1, 2, 0]).is_err());
}
