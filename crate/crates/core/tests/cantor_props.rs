use cg_core::cantor::{common_refinement, enumerate_points, CantorPoint, PartitionSet, Word};
use cg_core::dyadic::Dyadic;
use cg_core::random::{case_rng, random_partition};
use proptest::prelude::*;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..=1, 0..=max_len).prop_map(|b| Word::from_bits(&b).unwrap())
}

fn point() -> impl Strategy<Value = CantorPoint> {
    (word(4), prop::collection::vec(0u8..=1, 1..=4))
        .prop_map(|(pre, per)| CantorPoint::new(pre, Word::from_bits(&per).unwrap()).unwrap())
}

/// A partition with at most 12 blocks.
fn partition() -> impl Strategy<Value = PartitionSet> {
    (any::<u64>(), 0usize..=11).prop_map(|(seed, k)| random_partition(&mut case_rng(seed, 0), k))
}

fn assert_valid(p: &PartitionSet) {
    let again = PartitionSet::new(p.words().to_vec()).expect("valid partition");
    assert_eq!(&again, p);
    assert!(p.measure().is_one());
}

proptest! {
    #[test]
    fn expand_adds_one_block(p in partition(), i in any::<prop::sample::Index>()) {
        let i = i.index(p.len());
        let q = p.expand(i).unwrap();
        assert_valid(&q);
        prop_assert_eq!(q.len(), p.len() + 1);
        prop_assert!(q.refines(&p));
    }

    #[test]
    fn refinement_laws(p in partition(), q in partition(), r in partition()) {
        let pq = common_refinement(&p, &q);
        assert_valid(&pq);
        prop_assert_eq!(&pq, &common_refinement(&q, &p));
        prop_assert_eq!(common_refinement(&pq, &r), common_refinement(&p, &common_refinement(&q, &r)));
        prop_assert_eq!(common_refinement(&p, &p), p.clone());
        prop_assert!(pq.refines(&p) && pq.refines(&q));
    }

    #[test]
    fn measure_is_exactly_one(p in partition()) {
        let total: Dyadic = p.words().iter().map(|w| Dyadic::pow2_neg(w.len() as u64)).sum();
        prop_assert!(total.is_one());
        prop_assert_eq!(total, p.measure());
    }

    #[test]
    fn prepend_and_strip_are_inverse(w in word(8), x in point()) {
        let y = x.prepend(&w);
        prop_assert!(y.starts_with(&w));
        prop_assert_eq!(y.strip_prefix(&w), Some(x.clone()));
        prop_assert_eq!(y.shift_by(w.len()), x);
    }

    #[test]
    fn strip_then_prepend(w in word(4), x in point()) {
        match x.strip_prefix(&w) {
            Some(y) => prop_assert_eq!(y.prepend(&w), x),
            None => prop_assert!(!x.starts_with(&w)),
        }
    }

    #[test]
    fn normalization_is_a_retraction(pre in word(4), per in prop::collection::vec(0u8..=1, 1..=4), k in 1usize..=3) {
        let per = Word::from_bits(&per).unwrap();
        let x = CantorPoint::new(pre.clone(), per.clone()).unwrap();
        prop_assert_eq!(x.renormalized(), x.clone());
        prop_assert_eq!(CantorPoint::new(x.preperiod().clone(), x.period().clone()).unwrap(), x.clone());
        // The same infinite word written with a longer preperiod and a repeated period.
        let mut long_per = Word::empty();
        for _ in 0..k {
            long_per = long_per.concat(&per);
        }
        let y = CantorPoint::new(pre.concat(&per), long_per).unwrap();
        prop_assert_eq!(&y, &x);
        for i in 0..24 {
            prop_assert_eq!(x.bit_at(i), if i < pre.len() { pre.bit(i) } else { per.bit((i - pre.len()) % per.len()) });
        }
    }

    #[test]
    fn word_and_point_text_round_trip(w in word(10), x in point()) {
        prop_assert_eq!(w.to_string().parse::<Word>().unwrap(), w);
        prop_assert_eq!(x.to_string().parse::<CantorPoint>().unwrap(), x);
    }

    #[test]
    fn partition_text_round_trip(p in partition()) {
        prop_assert_eq!(p.to_string().parse::<PartitionSet>().unwrap(), p);
    }

    #[test]
    fn block_of_contains_the_point(p in partition(), x in point()) {
        let b = p.block_of(&x);
        prop_assert!(x.starts_with(&p.words()[b]));
    }
}

#[test]
fn shift_inverts_prepend_on_small_points() {
    let xs = enumerate_points(2, 3);
    for n in 0..=8 {
        for w in Word::all_of_length(n) {
            for x in &xs {
                assert_eq!(&x.prepend(&w).shift_by(n), x, "w = {w}, x = {x}");
            }
        }
    }
}
