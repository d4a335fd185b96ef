use cg_core::groups::{
    Action, FiniteGroup, FreeGroup, Group, Integers, RegularAction, TranslationAction, TrivialFiniteAction, TrivialGroup,
    Zn,
};
use cg_core::random::case_rng;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;
use rand::RngCore;

fn group_laws<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 0);
    let [a, b, c] = [0; 3].map(|_| g.random_elem(&mut rng as &mut dyn RngCore));
    prop_assert_eq!(g.mul(&g.mul(&a, &b), &c), g.mul(&a, &g.mul(&b, &c)), "{} associativity", g.name());
    let e = g.identity();
    prop_assert_eq!(g.mul(&e, &a), a.clone());
    prop_assert_eq!(g.mul(&a, &e), a.clone());
    prop_assert!(g.is_identity(&g.mul(&a, &g.inv(&a))));
    prop_assert!(g.is_identity(&g.mul(&g.inv(&a), &a)));
    prop_assert_eq!(g.parse_elem(&g.format_elem(&a)).unwrap(), a);
    Ok(())
}

fn action_laws<A: Action>(act: &A, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 1);
    let g = act.group();
    let x = g.random_elem(&mut rng as &mut dyn RngCore);
    let y = g.random_elem(&mut rng as &mut dyn RngCore);
    let s = act.random_point(&mut rng as &mut dyn RngCore);
    prop_assert_eq!(act.apply(&g.mul(&x, &y), &s), act.apply(&x, &act.apply(&y, &s)), "{}", act.name());
    prop_assert_eq!(act.apply(&g.identity(), &s), s.clone());
    prop_assert_eq!(act.parse_point(&act.format_point(&s)).unwrap(), s);
    if !g.is_identity(&x) {
        let moved = act.moved_point(&x);
        prop_assert!(moved.is_some(), "{} fixes every probed point", act.name());
        let m = moved.unwrap();
        prop_assert_ne!(act.apply(&x, &m), m);
    }
    Ok(())
}

proptest! {
    #[test]
    fn oracle_group_laws(seed in any::<u64>()) {
        group_laws(&TrivialGroup, seed)?;
        group_laws(&FiniteGroup::cyclic(2).unwrap(), seed)?;
        group_laws(&FiniteGroup::cyclic(5).unwrap(), seed)?;
        group_laws(&FiniteGroup::symmetric3(), seed)?;
        group_laws(&FreeGroup::new(2).unwrap(), seed)?;
        group_laws(&Zn::new(2).unwrap(), seed)?;
        group_laws(&Integers, seed)?;
    }

    #[test]
    fn action_laws_and_faithfulness(seed in any::<u64>()) {
        action_laws(&TrivialFiniteAction::new(2).unwrap(), seed)?;
        action_laws(&TranslationAction::new(), seed)?;
        action_laws(&RegularAction::new(FreeGroup::new(2).unwrap()), seed)?;
        action_laws(&RegularAction::new(FiniteGroup::symmetric3()), seed)?;
    }

    #[test]
    fn cayley_text_round_trip(n in 1usize..=9) {
        let g = FiniteGroup::cyclic(n).unwrap();
        let h = FiniteGroup::from_cayley_text("again", &g.to_cayley_text()).unwrap();
        prop_assert_eq!(h.to_cayley_text(), g.to_cayley_text());
        prop_assert_eq!(h.centre().len(), n);
    }
}

#[test]
fn finite_centres() {
    assert_eq!(FiniteGroup::symmetric3().centre(), vec![0]);
    assert_eq!(FiniteGroup::cyclic(4).unwrap().centre().len(), 4);
}
