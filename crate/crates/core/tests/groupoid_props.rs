use cg_core::cantor::{enumerate_points, Word};
use cg_core::groupoid::{
    format_brick_set, format_word_set, parse_brick_set, parse_word_set, Bisection, JChoice, StdPart, TwistedBisection,
};
use cg_core::groups::{Action, FiniteGroup, FreeGroup, Group, RegularAction, TranslationAction, TrivialGroup};
use cg_core::random::{
    case_rng, random_bisection, random_clopen_bricks, random_clopen_words, random_full_bisection,
    random_full_twisted_bisection, random_gtable, random_twist_table, random_twisted_bisection,
};
use cg_core::twisted::TwistTable;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn config() -> ProptestConfig {
    ProptestConfig::with_cases(200)
}

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|b| Word::from_bits(&b).unwrap())
}

fn plain_algebra<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 0);
    let [a, b, c] = [0; 3].map(|_| random_bisection(g, &mut rng, 3));
    prop_assert!(a.compose(&b).compose(&c).eq_set(&a.compose(&b.compose(&c))));
    prop_assert!(a.invert().invert().eq_set(&a));
    prop_assert!(a.compose(&b).invert().eq_set(&b.invert().compose(&a.invert())));
    prop_assert!(Bisection::unit(g.clone(), &a.range()).compose(&a).eq_set(&a));
    prop_assert!(a.compose(&Bisection::unit(g.clone(), &a.source())).eq_set(&a));
    prop_assert_eq!(Bisection::parse(g.clone(), &a.to_string()).unwrap(), a.clone());
    prop_assert_eq!(Bisection::from_json(g.clone(), &a.to_json()).unwrap(), a);
    Ok(())
}

fn plain_correspondence<G: Group>(g: &G, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 1);
    let a = random_full_bisection(g, &mut rng, 4);
    let b = random_full_bisection(g, &mut rng, 4);
    prop_assert!(a.is_full() && a.compose(&b).is_full() && a.invert().is_full());
    let (ia, ib) = (a.to_gtable().unwrap(), b.to_gtable().unwrap());
    prop_assert_eq!(a.compose(&b).to_gtable().unwrap().reduce(), ia.mul(&ib));
    prop_assert_eq!(a.invert().to_gtable().unwrap().reduce(), ia.inv());
    let t = random_gtable(g, &mut rng, 5);
    prop_assert_eq!(Bisection::from_gtable(&t).to_gtable().unwrap(), t.clone());
    let other = Bisection::from_gtable_with(&t, JChoice::Inverted);
    prop_assert!(other.eq_set(&Bisection::from_gtable(&t)));
    prop_assert_eq!(other.to_gtable().unwrap().reduce(), t.reduce());
    Ok(())
}

fn twisted_algebra<A: Action>(act: &A, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 2);
    let [a, b, c] = [0; 3].map(|_| random_twisted_bisection(act, &mut rng, 2));
    prop_assert!(a.compose(&b).compose(&c).eq_set(&a.compose(&b.compose(&c))));
    prop_assert!(a.invert().invert().eq_set(&a));
    prop_assert!(a.compose(&b).invert().eq_set(&b.invert().compose(&a.invert())));
    prop_assert!(TwistedBisection::unit(act.clone(), &a.range()).compose(&a).eq_set(&a));
    prop_assert_eq!(TwistedBisection::parse(act.clone(), &a.to_string()).unwrap(), a.clone());
    prop_assert_eq!(TwistedBisection::from_json(act.clone(), &a.to_json()).unwrap(), a);
    Ok(())
}

fn twisted_correspondence<A: Action>(act: &A, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 3);
    let a = random_full_twisted_bisection(act, &mut rng, 2);
    let b = random_full_twisted_bisection(act, &mut rng, 2);
    let (ia, ib) = (a.to_twist_table().unwrap(), b.to_twist_table().unwrap());
    prop_assert!(a.compose(&b).to_twist_table().unwrap().eq_elem(&ia.mul(&ib)));
    let t: TwistTable<A> = random_twist_table(act, &mut rng, 2);
    prop_assert!(TwistedBisection::from_twist_table(&t).to_twist_table().unwrap().eq_elem(&t));
    Ok(())
}

fn twisted_witness<A: Action>(act: &A, seed: u64) -> Result<(), TestCaseError> {
    let mut rng = case_rng(seed, 4);
    let u = random_clopen_bricks(act, &mut rng, 3, false);
    let v = random_clopen_bricks(act, &mut rng, 3, true);
    let w = TwistedBisection::min_witness(act.clone(), &u, &v).unwrap();
    prop_assert!(w.source().set_eq(&u));
    prop_assert!(w.range().is_subset(&v));
    prop_assert_eq!(parse_brick_set(act, &format_brick_set(act, &u)).unwrap(), u);
    Ok(())
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn bisection_algebra(seed in any::<u64>()) {
        plain_algebra(&TrivialGroup, seed)?;
        plain_algebra(&FiniteGroup::symmetric3(), seed)?;
        plain_algebra(&FreeGroup::new(2).unwrap(), seed)?;
    }

    #[test]
    fn full_bisections_are_tables(seed in any::<u64>()) {
        plain_correspondence(&TrivialGroup, seed)?;
        plain_correspondence(&FiniteGroup::symmetric3(), seed)?;
        plain_correspondence(&FreeGroup::new(2).unwrap(), seed)?;
    }

    #[test]
    fn twisted_bisection_algebra(seed in any::<u64>()) {
        twisted_algebra(&TranslationAction::new(), seed)?;
        twisted_algebra(&RegularAction::new(FreeGroup::new(2).unwrap()), seed)?;
    }

    #[test]
    fn full_twisted_bisections_are_tables(seed in any::<u64>()) {
        twisted_correspondence(&TranslationAction::new(), seed)?;
        twisted_correspondence(&RegularAction::new(FreeGroup::new(2).unwrap()), seed)?;
    }

    #[test]
    fn plain_min_witness(seed in any::<u64>()) {
        let mut rng = case_rng(seed, 5);
        let u = random_clopen_words(&mut rng, 5, false);
        let v = random_clopen_words(&mut rng, 5, true);
        let w = Bisection::min_witness(FiniteGroup::symmetric3(), &u, &v).unwrap();
        prop_assert!(w.source().set_eq(&u));
        prop_assert!(w.range().is_subset(&v));
        prop_assert_eq!(parse_word_set(&format_word_set(&u)).unwrap(), u);
    }

    #[test]
    fn twisted_min_witness(seed in any::<u64>()) {
        twisted_witness(&TranslationAction::new(), seed)?;
        twisted_witness(&RegularAction::new(FreeGroup::new(2).unwrap()), seed)?;
    }

    #[test]
    fn shift_is_additive(a in (word(4), word(4)), b in (word(4), word(4))) {
        let pa = StdPart::new(a.0, a.1, ());
        let pb = StdPart::new(b.0, b.1, ());
        let one = |p: &StdPart<()>| Bisection::new(TrivialGroup, vec![p.clone()]).unwrap();
        for pc in one(&pa).compose(&one(&pb)).parts() {
            prop_assert_eq!(pc.shift(), pa.shift() + pb.shift());
        }
    }

    #[test]
    fn isotropy_points_are_fixed(d in word(4), i in word(4)) {
        prop_assume!(d != i);
        let p = StdPart::new(d, i, ());
        let found = p.isotropy_points(4).unwrap();
        for x in &found {
            prop_assert!(x.preperiod().len() <= 4);
            prop_assert_eq!(p.act(x), Some(x.clone()));
        }
        let scan: Vec<_> = enumerate_points(4, 4).into_iter().filter(|x| p.act(x).as_ref() == Some(x)).collect();
        prop_assert!(scan.iter().all(|x| found.contains(x)), "scan found {:?}, solver {:?}", scan, found);
    }
}
