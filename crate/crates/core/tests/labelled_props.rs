use cg_core::cantor::{enumerate_points, CantorPoint};
use cg_core::groups::{FiniteGroup, FreeGroup, Group, TrivialGroup, Zn};
use cg_core::labelled::GTable;
use cg_core::random::{case_rng, random_gtable, random_gtable_raw};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::{Rng, RngCore};

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(256)
}

fn table_laws<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 0);
    let [a, b, c] = [0; 3].map(|_| random_gtable(g, &mut rng, 5));
    prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)), "{}", g.name());
    let e = GTable::identity(g.clone());
    prop_assert_eq!(a.mul(&e), a.clone());
    prop_assert_eq!(e.mul(&a), a.clone());
    prop_assert!(a.mul(&a.inv()).is_identity());
    prop_assert!(a.inv().mul(&a).is_identity());
    Ok(())
}

fn normal_form<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 1);
    let k = rng.gen_range(0..=5);
    let t = random_gtable_raw(g, &mut rng, k);
    let r = t.reduce();
    prop_assert!(r.is_reduced());
    prop_assert_eq!(r.reduce(), r.clone());
    let mut u = t.clone();
    for _ in 0..rng.gen_range(0..=6) {
        let i = rng.gen_range(0..u.len());
        u = u.g_expand_at(i).unwrap();
    }
    prop_assert_eq!(u.reduce(), r.clone());
    prop_assert!(u.eq_elem(&t));
    Ok(())
}

fn act_consistency<G: Group>(g: &G, seed: u64, points: &[CantorPoint]) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 2);
    let a = random_gtable(g, &mut rng, 5);
    let b = random_gtable(g, &mut rng, 5);
    let ab = a.mul(&b);
    for x in points {
        let (bx, hb) = b.act(x);
        let (abx, ha) = a.act(&bx);
        let (y, h) = ab.act(x);
        prop_assert_eq!(&y, &abx);
        prop_assert_eq!(h, g.mul(&ha, &hb));
    }
    Ok(())
}

fn text_round_trip<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 3);
    let t = random_gtable(g, &mut rng, 6);
    prop_assert_eq!(GTable::parse(g.clone(), &t.to_string()).unwrap(), t.clone());
    prop_assert_eq!(GTable::from_json(g.clone(), &t.to_json()).unwrap(), t.clone());
    let j = serde_json::to_string(&t.to_json()).unwrap();
    prop_assert_eq!(GTable::from_json(g.clone(), &serde_json::from_str(&j).unwrap()).unwrap(), t);
    Ok(())
}

fn homomorphisms<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 4);
    let x = g.random_elem(&mut rng as &mut dyn RngCore);
    let y = g.random_elem(&mut rng as &mut dyn RngCore);
    let xy = g.mul(&x, &y);
    for iota in [GTable::iota0, GTable::iota_empty] {
        let lhs = iota(g.clone(), xy.clone());
        prop_assert_eq!(&lhs, &iota(g.clone(), x.clone()).mul(&iota(g.clone(), y.clone())));
        prop_assert!(lhs.pi_forget().is_identity());
    }
    let a = random_gtable(g, &mut rng, 5);
    let b = random_gtable(g, &mut rng, 5);
    prop_assert_eq!(a.mul(&b).pi_forget(), a.pi_forget().mul(&b.pi_forget()));
    let z = g.random_elem(&mut rng as &mut dyn RngCore);
    let zi = g.inv(&z);
    let conj = GTable::iota_empty(g.clone(), z.clone()).conj(&a);
    prop_assert_eq!(conj, a.map_labels(g.clone(), |h| g.mul(&g.mul(&z, h), &zi)));
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn gtable_group_laws(seed in any::<u64>()) {
        table_laws(&TrivialGroup, seed)?;
        table_laws(&FiniteGroup::cyclic(2).unwrap(), seed)?;
        table_laws(&FiniteGroup::symmetric3(), seed)?;
        table_laws(&FreeGroup::new(2).unwrap(), seed)?;
        table_laws(&Zn::new(2).unwrap(), seed)?;
    }

    #[test]
    fn reduction_is_confluent_and_idempotent(seed in any::<u64>()) {
        normal_form(&TrivialGroup, seed)?;
        normal_form(&FiniteGroup::symmetric3(), seed)?;
        normal_form(&FreeGroup::new(2).unwrap(), seed)?;
    }

    #[test]
    fn action_is_a_left_action(seed in any::<u64>()) {
        let pts = enumerate_points(2, 3);
        act_consistency(&TrivialGroup, seed, &pts)?;
        act_consistency(&FiniteGroup::symmetric3(), seed, &pts)?;
        act_consistency(&FreeGroup::new(2).unwrap(), seed, &pts)?;
    }

    #[test]
    fn parse_print_round_trip(seed in any::<u64>()) {
        text_round_trip(&TrivialGroup, seed)?;
        text_round_trip(&FiniteGroup::symmetric3(), seed)?;
        text_round_trip(&FreeGroup::new(2).unwrap(), seed)?;
        text_round_trip(&Zn::new(2).unwrap(), seed)?;
    }

    #[test]
    fn structure_maps_are_homomorphisms(seed in any::<u64>()) {
        homomorphisms(&FiniteGroup::symmetric3(), seed)?;
        homomorphisms(&FreeGroup::new(2).unwrap(), seed)?;
    }

    #[test]
    fn equality_matches_pointwise_action(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 5);
        let a = random_gtable(&TrivialGroup, &mut rng, 4);
        // Bias towards equal pairs by sometimes rewriting a.
        let b = if rng.gen_bool(0.5) { random_gtable(&TrivialGroup, &mut rng, 4) } else { a.g_expand_at(0).unwrap() };
        let agree = enumerate_points(3, 3).iter().all(|x| a.act(x).0 == b.act(x).0);
        prop_assert_eq!(a.eq_elem(&b), agree);
    }
}

#[test]
fn torsion_orders() {
    for n in 2..=8 {
        let t = GTable::torsion_generator(FiniteGroup::symmetric3(), n).unwrap();
        assert_eq!(t.order(4 * n), cg_core::labelled::Order::Exact(n));
        assert!(!t.pi_forget().is_identity());
    }
}
