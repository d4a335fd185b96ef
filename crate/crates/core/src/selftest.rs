//! Randomized and exhaustive property suites.
//!
//! Every case draws from its own seeded stream and results are collected in
//! case order, so a report depends only on `(suite, seed, n)`.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};

use rand::{Rng, RngCore};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::cantor::{enumerate_points, points_iter, CantorPoint, PartitionSet, Word};
use crate::error::{Error, Result};
use crate::groupoid::{
    Bisection, BisectionJson, ClopenSet, JChoice, StdPart, TwistedBisection, TwistedBisectionJson, TwistedPart,
};
use crate::groups::{
    Action, FiniteGroup, FreeGroup, Group, Integers, RegularAction, TranslationAction, TrivialFiniteAction,
    TrivialGroup, Zn,
};
use crate::labelled::{center_probes, CenterResult, GTable, GTableJson, Order};
use crate::random::*;
use crate::twisted::{
    format_brick, format_cube_point, parse_brick, parse_cube_point, twist_apply, CubePoint, TwistTable,
    TwistTableJson,
};

/// Registered suite names, in the order `all` runs them.
pub const SUITES: &[&str] = &[
    "group-axioms",
    "confluence",
    "faithfulness",
    "ij-roundtrip",
    "center",
    "conjugation",
    "torsion",
    "homomorphisms",
    "twist-laws",
    "min-witness",
    "isotropy",
    "coherence",
    "roundtrip",
];

/// Pass/fail counts of one property.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
}

impl CheckReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub n: usize,
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckReport::ok)
    }

    pub fn failures(&self) -> usize {
        self.checks.iter().map(|c| c.failed).sum()
    }
}

pub fn run_suite(name: &str, seed: u64, n: usize) -> Result<SuiteReport> {
    let checks = match name {
        "group-axioms" => group_axioms(seed, n),
        "confluence" => confluence(seed, n),
        "faithfulness" => faithfulness(seed, n),
        "ij-roundtrip" => ij_roundtrip(seed, n),
        "center" => center(seed, n),
        "conjugation" => conjugation(seed, n),
        "torsion" => torsion(),
        "homomorphisms" => homomorphisms(seed, n),
        "twist-laws" => twist_laws(seed, n),
        "min-witness" => min_witness(seed, n),
        "isotropy" => isotropy(seed, n),
        "coherence" => coherence(seed, n),
        "roundtrip" => roundtrip(seed, n),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        seed,
        n,
        checks,
    })
}

type CaseResult = std::result::Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> CaseResult {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// FNV-1a, to give every check its own family of streams.
fn name_hash(name: &str) -> u64 {
    name.bytes()
        .fold(0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

/// Runs `n` independent cases in parallel and tallies them in case order.
pub fn check<F>(name: &str, seed: u64, n: usize, f: F) -> CheckReport
where
    F: Fn(u64, &mut ChaCha8Rng) -> CaseResult + Sync,
{
    let base = seed ^ name_hash(name);
    let outcomes: Vec<Option<String>> = (0..n as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = case_rng(base, i);
            match catch_unwind(AssertUnwindSafe(|| f(i, &mut rng))) {
                Ok(Ok(())) => None,
                Ok(Err(e)) => Some(format!("case {i}: {e}")),
                Err(p) => {
                    let msg = p
                        .downcast_ref::<String>()
                        .cloned()
                        .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                        .unwrap_or_default();
                    Some(format!("case {i}: panic: {msg}"))
                }
            }
        })
        .collect();
    let failed = outcomes.iter().filter(|o| o.is_some()).count();
    CheckReport {
        name: name.to_string(),
        cases: n,
        passed: n - failed,
        failed,
        first_failure: outcomes.into_iter().flatten().next(),
    }
}

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2).expect("order 2")
}

fn z4() -> FiniteGroup {
    FiniteGroup::cyclic(4).expect("order 4")
}

fn s3() -> FiniteGroup {
    FiniteGroup::symmetric3()
}

fn free2() -> FreeGroup {
    FreeGroup::new(2).expect("rank 2")
}

fn zz() -> Zn {
    Zn::new(2).expect("rank 2")
}

fn free2_regular() -> RegularAction<FreeGroup> {
    RegularAction::new(free2())
}

fn trivial_on(n: u32) -> TrivialFiniteAction {
    TrivialFiniteAction::new(n).expect("non-empty")
}

fn dyn_rng(rng: &mut ChaCha8Rng) -> &mut dyn RngCore {
    rng
}

// ---------------------------------------------------------------- axioms

pub fn gtable_axioms<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("axioms:v({})", group.name()), seed, n, |_, rng| {
        let a = random_gtable(group, rng, 4);
        let b = random_gtable(group, rng, 4);
        let c = random_gtable(group, rng, 4);
        let id = GTable::identity(group.clone());
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || {
            format!("associativity: {a} {b} {c}")
        })?;
        ensure(a.mul(&id) == a && id.mul(&a) == a, || format!("identity: {a}"))?;
        ensure(a.mul(&a.inv()) == id && a.inv().mul(&a) == id, || format!("inverse: {a}"))
    })
}

pub fn twist_axioms<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("axioms:sv({})", action.name()), seed, n, |_, rng| {
        let a = random_twist_table(action, rng, 3);
        let b = random_twist_table(action, rng, 3);
        let c = random_twist_table(action, rng, 3);
        let id = TwistTable::identity(action.clone());
        ensure(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || {
            format!("associativity: {a} {b} {c}")
        })?;
        ensure(a.mul(&id) == a && id.mul(&a) == a, || format!("identity: {a}"))?;
        ensure(a.mul(&a.inv()) == id && a.inv().mul(&a) == id, || format!("inverse: {a}"))
    })
}

pub fn group_axioms(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        gtable_axioms(&TrivialGroup, seed, n),
        gtable_axioms(&z2(), seed, n),
        gtable_axioms(&s3(), seed, n),
        gtable_axioms(&free2(), seed, n),
        gtable_axioms(&zz(), seed, n),
        twist_axioms(&trivial_on(2), seed, n),
        twist_axioms(&TranslationAction::new(), seed, n),
        twist_axioms(&free2_regular(), seed, n),
    ]
}

// ------------------------------------------------------------- confluence

pub fn gtable_confluence<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("confluence:v({})", group.name()), seed, n, |_, rng| {
        let t = random_gtable(group, rng, 5);
        let mut reps = Vec::new();
        for _ in 0..2 {
            let mut u = t.clone();
            for _ in 0..rng.gen_range(0..=6) {
                let i = rng.gen_range(0..u.len());
                u = u.g_expand_at(i).map_err(|e| e.to_string())?;
            }
            reps.push(u);
        }
        ensure(reps.iter().all(|u| u.reduce() == t), || {
            format!("{t} expanded to {} and {} does not reduce back", reps[0], reps[1])
        })
    })
}

pub fn twist_confluence<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("confluence:sv({})", action.name()), seed, n, |_, rng| {
        let t = random_twist_table(action, rng, 3);
        let mut reps = Vec::new();
        for _ in 0..2 {
            let mut u = t.clone();
            for _ in 0..rng.gen_range(0..=6) {
                let i = rng.gen_range(0..u.len());
                let s = action.random_point(dyn_rng(rng));
                u = u.expand_piece(i, &s).map_err(|e| e.to_string())?;
            }
            reps.push(u);
        }
        ensure(reps.iter().all(|u| u.canonical() == t), || {
            format!("{t} expanded to {} and {} has another canonical form", reps[0], reps[1])
        })
    })
}

pub fn confluence(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        gtable_confluence(&s3(), seed, n),
        gtable_confluence(&free2(), seed, n),
        twist_confluence(&TranslationAction::new(), seed, n),
        twist_confluence(&free2_regular(), seed, n),
    ]
}

// ----------------------------------------------------------- faithfulness

pub fn v_faithfulness(seed: u64, n: usize) -> CheckReport {
    let pts = enumerate_points(3, 3);
    check("faithful:v", seed, n, |_, rng| {
        let a = random_gtable(&TrivialGroup, rng, 3);
        let b = match rng.gen_range(0..3) {
            0 => random_gtable(&TrivialGroup, rng, 3),
            1 => {
                let mut u = a.clone();
                for _ in 0..rng.gen_range(1..=3) {
                    let i = rng.gen_range(0..u.len());
                    u = u.g_expand_at(i).map_err(|e| e.to_string())?;
                }
                u
            }
            _ => a.mul(&random_gtable(&TrivialGroup, rng, 1)),
        };
        let eq = a.eq_elem(&b);
        let agree = pts.iter().all(|x| a.act(x).0 == b.act(x).0);
        ensure(eq == agree, || format!("eq={eq} but pointwise={agree} for {a} and {b}"))
    })
}

/// Sample cube points adapted to a pair of tables: inside every domain
/// brick, each relevant coordinate gets its own eventually periodic tail.
pub fn brick_corners<A: Action>(a: &TwistTable<A>, b: &TwistTable<A>) -> Vec<CubePoint<A::Point>> {
    let action = a.action();
    let group = action.group();
    let mut coords: BTreeSet<A::Point> = a.coordinates();
    coords.extend(b.coordinates());
    coords.insert(action.base_point());
    let twists: Vec<_> = a.pieces().iter().chain(b.pieces()).map(|p| p.twist.clone()).collect();
    let base: Vec<A::Point> = coords.iter().cloned().collect();
    for g in &twists {
        for s in &base {
            coords.insert(action.apply(g, s));
            coords.insert(action.apply(&group.inv(g), s));
        }
    }
    let tail = |j: usize, bit: u8| {
        let mut w = vec![bit; j];
        w.push(1 - bit);
        CantorPoint::periodic(&Word::from_vec(w)).expect("non-empty")
    };
    let mut out = Vec::new();
    for piece in a.pieces().iter().chain(b.pieces()) {
        for bit in [0u8, 1] {
            let entries = coords
                .iter()
                .enumerate()
                .map(|(j, s)| (s.clone(), tail(j + 1, bit).prepend(&piece.domain.word(s))));
            out.push(CubePoint::new(entries, CantorPoint::constant(bit)));
        }
    }
    out
}

pub fn sv_faithfulness<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("faithful:sv({})", action.name()), seed, n, |_, rng| {
        let a = random_twist_table(action, rng, 3);
        let b = match rng.gen_range(0..3) {
            0 => random_twist_table(action, rng, 3),
            1 => {
                let i = rng.gen_range(0..a.len());
                let s = action.random_point(dyn_rng(rng));
                a.expand_piece(i, &s).map_err(|e| e.to_string())?
            }
            _ => a.mul(&random_twist_table(action, rng, 1)),
        };
        let eq = a.eq_elem(&b);
        let agree = brick_corners(&a, &b).iter().all(|k| a.act(k) == b.act(k));
        ensure(eq == agree, || format!("eq={eq} but pointwise={agree} for {a} and {b}"))
    })
}

pub fn faithfulness(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        v_faithfulness(seed, n),
        sv_faithfulness(&TranslationAction::new(), seed, n),
        sv_faithfulness(&free2_regular(), seed, n),
    ]
}

// ----------------------------------------------------------- I and J maps

pub fn plain_ij<G: Group>(group: &G, seed: u64, n: usize) -> Vec<CheckReport> {
    let g = group.name();
    vec![
        check(&format!("i-after-j:{g}"), seed, n, |_, rng| {
            let t = random_gtable(group, rng, 5);
            let j = Bisection::from_gtable(&t);
            ensure(j.is_full(), || format!("J({t}) is not full"))?;
            let back = j.to_gtable().map_err(|e| e.to_string())?;
            ensure(back == t, || format!("I(J({t})) = {back}"))
        }),
        check(&format!("j-after-i:{g}"), seed, n, |_, rng| {
            let b = random_full_bisection(group, rng, 5);
            let t = b.to_gtable().map_err(|e| e.to_string())?;
            ensure(Bisection::from_gtable(&t).eq_set(&b), || format!("J(I({b})) differs"))
        }),
        check(&format!("i-hom:{g}"), seed, n, |_, rng| {
            let a = random_full_bisection(group, rng, 4);
            let b = random_full_bisection(group, rng, 4);
            let ab = a.compose(&b).to_gtable().map_err(|e| e.to_string())?;
            let prod = a.to_gtable().map_err(|e| e.to_string())?.mul(&b.to_gtable().map_err(|e| e.to_string())?);
            ensure(ab == prod, || format!("I({a} . {b}) = {ab}, product {prod}"))
        }),
        check(&format!("j-choice:{g}"), seed, n, |_, rng| {
            let t = random_gtable(group, rng, 5);
            let std = Bisection::from_gtable_with(&t, JChoice::Standard);
            let alt = Bisection::from_gtable_with(&t, JChoice::Inverted);
            ensure(std.eq_set(&alt), || format!("J choices disagree on {t}"))
        }),
    ]
}

pub fn twisted_ij<A: Action>(action: &A, seed: u64, n: usize) -> Vec<CheckReport> {
    let a_name = action.name();
    vec![
        check(&format!("i-after-j:{a_name}"), seed, n, |_, rng| {
            let t = random_twist_table(action, rng, 3);
            let j = TwistedBisection::from_twist_table(&t);
            ensure(j.is_full(), || format!("J({t}) is not full"))?;
            let back = j.to_twist_table().map_err(|e| e.to_string())?;
            ensure(back == t, || format!("I(J({t})) = {back}"))
        }),
        check(&format!("j-after-i:{a_name}"), seed, n, |_, rng| {
            let b = random_full_twisted_bisection(action, rng, 3);
            let t = b.to_twist_table().map_err(|e| e.to_string())?;
            ensure(TwistedBisection::from_twist_table(&t).eq_set(&b), || {
                format!("J(I({b})) differs")
            })
        }),
        check(&format!("i-hom:{a_name}"), seed, n, |_, rng| {
            let a = random_full_twisted_bisection(action, rng, 3);
            let b = random_full_twisted_bisection(action, rng, 3);
            let ab = a.compose(&b).to_twist_table().map_err(|e| e.to_string())?;
            let ia = a.to_twist_table().map_err(|e| e.to_string())?;
            let ib = b.to_twist_table().map_err(|e| e.to_string())?;
            let prod = ia.mul(&ib);
            ensure(ab == prod, || format!("I({a} . {b}) = {ab}, product {prod}"))
        }),
    ]
}

/// Associativity, involutivity and units for partial bisections.
pub fn bisection_algebra<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("bisection-algebra:{}", group.name()), seed, n, |_, rng| {
        let a = random_bisection(group, rng, 3);
        let b = random_bisection(group, rng, 3);
        let c = random_bisection(group, rng, 3);
        ensure(a.compose(&b).compose(&c).eq_set(&a.compose(&b.compose(&c))), || {
            format!("associativity: {a} {b} {c}")
        })?;
        ensure(a.invert().invert().eq_set(&a), || format!("involution: {a}"))?;
        ensure(a.compose(&b).invert().eq_set(&b.invert().compose(&a.invert())), || {
            format!("anti-homomorphism: {a} {b}")
        })?;
        let unit = Bisection::unit(group.clone(), &a.range());
        ensure(unit.compose(&a).eq_set(&a), || format!("unit: {a}"))?;
        ensure(a.compose(&a.invert()).eq_set(&unit), || format!("a a^-1: {a}"))?;
        for pa in a.parts() {
            for pb in b.parts() {
                let one = |p: &StdPart<G::Elem>| {
                    Bisection::new(group.clone(), vec![p.clone()]).expect("single part")
                };
                for pc in one(pa).compose(&one(pb)).parts() {
                    ensure(pc.shift() == pa.shift() + pb.shift(), || {
                        format!("shift of {pa:?} . {pb:?} is {}", pc.shift())
                    })?;
                }
            }
        }
        Ok(())
    })
}

pub fn twisted_algebra<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("bisection-algebra:{}", action.name()), seed, n, |_, rng| {
        let a = random_twisted_bisection(action, rng, 2);
        let b = random_twisted_bisection(action, rng, 2);
        let c = random_twisted_bisection(action, rng, 2);
        ensure(a.compose(&b).compose(&c).eq_set(&a.compose(&b.compose(&c))), || {
            format!("associativity: {a} {b} {c}")
        })?;
        ensure(a.invert().invert().eq_set(&a), || format!("involution: {a}"))?;
        ensure(a.compose(&b).invert().eq_set(&b.invert().compose(&a.invert())), || {
            format!("anti-homomorphism: {a} {b}")
        })?;
        let unit = TwistedBisection::unit(action.clone(), &a.range());
        ensure(unit.compose(&a).eq_set(&a), || format!("unit: {a}"))?;
        ensure(a.compose(&a.invert()).eq_set(&unit), || format!("a a^-1: {a}"))
    })
}

pub fn ij_roundtrip(seed: u64, n: usize) -> Vec<CheckReport> {
    let mut out = Vec::new();
    out.extend(plain_ij(&TrivialGroup, seed, n));
    out.extend(plain_ij(&s3(), seed, n));
    out.extend(plain_ij(&free2(), seed, n));
    out.extend(twisted_ij(&TranslationAction::new(), seed, n));
    out.extend(twisted_ij(&free2_regular(), seed, n));
    out.extend(twisted_ij(&trivial_on(2), seed, n));
    out.push(bisection_algebra(&TrivialGroup, seed, n));
    out.push(bisection_algebra(&s3(), seed, n));
    out.push(twisted_algebra(&TranslationAction::new(), seed, n));
    out
}

// ----------------------------------------------------------------- centre

/// Partitions with every block of length at most 2, i.e. refined by `P₂`.
fn coarsenings_of_p2() -> Vec<PartitionSet> {
    ["{e}", "{0,1}", "{0,10,11}", "{00,01,1}", "{00,01,10,11}"]
        .iter()
        .map(|s| s.parse().expect("valid partition"))
        .collect()
}

/// All partitions with exactly `n` blocks.
fn partitions_with(n: usize) -> Vec<PartitionSet> {
    let mut level: BTreeSet<PartitionSet> = BTreeSet::from([PartitionSet::trivial()]);
    for _ in 1..n {
        level = level
            .iter()
            .flat_map(|p| (0..p.len()).map(move |i| p.expand(i).expect("in range")))
            .collect();
    }
    level.into_iter().collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn tuples<T: Clone>(pool: &[T], n: usize) -> Vec<Vec<T>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                pool.iter().map(move |x| {
                    let mut u = t.clone();
                    u.push(x.clone());
                    u
                })
            })
            .collect();
    }
    out
}

/// Every table whose domain is refined by `P₂`, over a finite group.
pub fn tables_over_p2<G: Group>(group: &G) -> Vec<GTable<G>> {
    let elems = group.elements().expect("finite group");
    let mut out = Vec::new();
    for domain in coarsenings_of_p2() {
        let k = domain.len();
        for image in partitions_with(k) {
            for perm in permutations(k) {
                for labels in tuples(&elems, k) {
                    out.push(
                        GTable::from_parts(group.clone(), domain.clone(), image.clone(), perm.clone(), labels)
                            .expect("sizes match"),
                    );
                }
            }
        }
    }
    out
}

/// The probe-commuting tables among [`tables_over_p2`] are exactly the
/// `ι_∅(z)` with `z` central, and the centre test agrees.
pub fn center_exhaustive<G: Group>(group: &G) -> CheckReport {
    let name = format!("center-exhaustive:{}", group.name());
    let elems = group.elements().expect("finite group");
    let centre: Vec<G::Elem> = elems
        .iter()
        .filter(|z| elems.iter().all(|h| group.mul(z, h) == group.mul(h, z)))
        .cloned()
        .collect();
    let expected: BTreeSet<String> = centre
        .iter()
        .map(|z| GTable::iota_empty(group.clone(), z.clone()).to_string())
        .collect();
    let probes = center_probes(group);
    let tables = tables_over_p2(group);
    let results: Vec<(Option<String>, Option<String>)> = tables
        .par_iter()
        .map(|t| {
            let r = t.reduce();
            let commutes = probes.iter().all(|p| r.commutes_with(p));
            let test = r.center_test();
            let disagreement = match (&test, commutes) {
                (CenterResult::Central(_), true) | (CenterResult::NotCentral(_), false) => None,
                (CenterResult::NotCentral(w), true) if !r.commutes_with(w) => None,
                _ => Some(format!("{r}: probes commute = {commutes}, test = {test:?}")),
            };
            (commutes.then(|| r.to_string()), disagreement)
        })
        .collect();
    let found: BTreeSet<String> = results.iter().filter_map(|(c, _)| c.clone()).collect();
    let mut failures: Vec<String> = results.into_iter().filter_map(|(_, d)| d).collect();
    if found != expected {
        failures.insert(0, format!("central set {found:?}, expected {expected:?}"));
    }
    CheckReport {
        name,
        cases: tables.len(),
        passed: tables.len().saturating_sub(failures.len()),
        failed: failures.len(),
        first_failure: failures.into_iter().next(),
    }
}

pub fn center_random<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("center-random:{}", group.name()), seed, n, |_, rng| {
        let t = if rng.gen_bool(0.3) {
            GTable::iota_empty(group.clone(), group.random_elem(dyn_rng(rng)))
        } else {
            random_gtable(group, rng, 4)
        };
        let other = random_gtable(group, rng, 4);
        match t.center_test() {
            CenterResult::Central(z) => {
                ensure(t.eq_elem(&GTable::iota_empty(group.clone(), z)), || {
                    format!("{t} declared central but is not a constant-label identity")
                })?;
                ensure(t.commutes_with(&other), || format!("{t} central but not commuting with {other}"))
            }
            CenterResult::NotCentral(w) => {
                ensure(!t.commutes_with(&w), || format!("witness {w} commutes with {t}"))
            }
            CenterResult::Unknown(z) => Err(format!("undecided centrality of {}", group.format_elem(&z))),
        }
    })
}

pub fn center(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        center_exhaustive(&s3()),
        center_exhaustive(&z4()),
        center_random(&s3(), seed, n),
        center_random(&free2(), seed, n),
        center_random(&zz(), seed, n),
    ]
}

// ----------------------------------------------------------- conjugation

pub fn conjugation_formula<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("conjugation:{}", group.name()), seed, n, |_, rng| {
        let z = group.random_elem(dyn_rng(rng));
        let t = random_gtable(group, rng, 5);
        let lhs = GTable::iota_empty(group.clone(), z.clone()).conj(&t);
        let zi = group.inv(&z);
        let rhs = t.map_labels(group.clone(), |g| group.mul(&group.mul(&z, g), &zi));
        ensure(lhs == rhs, || format!("conj by {} of {t}: {lhs} vs {rhs}", group.format_elem(&z)))?;
        let k = rng.gen_range(0..=3);
        let pn = PartitionSet::uniform(k);
        let diag = GTable::from_parts(group.clone(), pn.clone(), pn, (0..1 << k).collect(), vec![z.clone(); 1 << k])
            .map_err(|e| e.to_string())?;
        ensure(diag.reduce() == GTable::iota_empty(group.clone(), z.clone()), || {
            format!("[P{k}, (z,...,z), id] is not iota_E(z)")
        })
    })
}

pub fn conjugation(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![conjugation_formula(&s3(), seed, n), conjugation_formula(&free2(), seed, n)]
}

// ---------------------------------------------------------------- torsion

pub fn torsion_over<G: Group>(group: &G) -> CheckReport {
    check(&format!("torsion:{}", group.name()), 0, 7, |i, _| {
        let n = i as usize + 2;
        let t = GTable::torsion_generator(group.clone(), n).map_err(|e| e.to_string())?;
        ensure(t.order(4 * n) == Order::Exact(n), || format!("order of {t} is {:?}", t.order(4 * n)))?;
        ensure(t.labels().iter().all(|g| group.is_identity(g)), || format!("{t} has labels"))?;
        ensure(!t.pi_forget().is_identity(), || format!("pi({t}) is trivial"))
    })
}

pub fn torsion() -> Vec<CheckReport> {
    vec![torsion_over(&TrivialGroup), torsion_over(&s3()), torsion_over(&free2())]
}

// ---------------------------------------------------------- homomorphisms

pub fn homomorphisms_over<G: Group>(group: &G, seed: u64, n: usize) -> Vec<CheckReport> {
    let g = group.name();
    vec![
        check(&format!("pi-hom:{g}"), seed, n, |_, rng| {
            let a = random_gtable(group, rng, 4);
            let b = random_gtable(group, rng, 4);
            ensure(a.mul(&b).pi_forget() == a.pi_forget().mul(&b.pi_forget()), || {
                format!("pi fails on {a}, {b}")
            })
        }),
        check(&format!("iota0-hom:{g}"), seed, n, |_, rng| {
            let x = group.random_elem(dyn_rng(rng));
            let y = group.random_elem(dyn_rng(rng));
            let i = |e: G::Elem| GTable::iota0(group.clone(), e);
            ensure(i(group.mul(&x, &y)) == i(x.clone()).mul(&i(y.clone())), || {
                format!("iota0 fails on {x:?}, {y:?}")
            })
        }),
        check(&format!("iotaE-hom:{g}"), seed, n, |_, rng| {
            let x = group.random_elem(dyn_rng(rng));
            let y = group.random_elem(dyn_rng(rng));
            let i = |e: G::Elem| GTable::iota_empty(group.clone(), e);
            ensure(i(group.mul(&x, &y)) == i(x.clone()).mul(&i(y.clone())), || {
                format!("iotaE fails on {x:?}, {y:?}")
            })?;
            ensure(i(x.clone()).pi_forget().is_identity(), || format!("pi(iotaE({x:?})) is not trivial"))
        }),
        check(&format!("ker-pi:{g}"), seed, n, |_, rng| {
            let kernel = rng.gen_bool(0.5);
            let t = if kernel {
                let c = random_gtable(group, rng, 3);
                let x = group.random_elem(dyn_rng(rng));
                let y = group.random_elem(dyn_rng(rng));
                c.conj(&GTable::iota0(group.clone(), x)).mul(&GTable::iota_empty(group.clone(), y))
            } else {
                random_gtable(group, rng, 4)
            };
            let fast = t.in_kernel_of_pi();
            ensure(fast == t.pi_forget().is_identity(), || format!("kernel test wrong on {t}"))?;
            ensure(!kernel || fast, || format!("{t} built in the kernel but not detected"))
        }),
    ]
}

pub fn homomorphisms(seed: u64, n: usize) -> Vec<CheckReport> {
    let mut out = homomorphisms_over(&s3(), seed, n);
    out.extend(homomorphisms_over(&free2(), seed, n));
    out.extend(homomorphisms_over(&zz(), seed, n));
    let sum = |v: &Vec<i64>| v.iter().sum::<i64>();
    out.push(check("label-map-hom:z2->int", seed, n, |_, rng| {
        let a = random_gtable(&zz(), rng, 4);
        let b = random_gtable(&zz(), rng, 4);
        let f = |t: &GTable<Zn>| t.map_labels(Integers, sum);
        ensure(f(&a.mul(&b)) == f(&a).mul(&f(&b)), || format!("label map fails on {a}, {b}"))
    }));
    out
}

// ------------------------------------------------------------- twist laws

pub fn twist_laws_over<A: Action>(action: &A, seed: u64, n: usize) -> Vec<CheckReport> {
    let a_name = action.name();
    let group = action.group();
    vec![
        check(&format!("tau-compose:{a_name}"), seed, n, |_, rng| {
            let g = group.random_elem(dyn_rng(rng));
            let h = group.random_elem(dyn_rng(rng));
            let tau = |x: &<A::G as Group>::Elem| TwistTable::global_twist(action.clone(), x.clone());
            let gh = group.mul(&g, &h);
            ensure(tau(&gh) == tau(&g).mul(&tau(&h)), || format!("tables: {g:?}, {h:?}"))?;
            for _ in 0..4 {
                let k = random_cube_point(action, rng);
                let lhs = tau(&gh).act(&k);
                ensure(lhs == tau(&g).act(&tau(&h).act(&k)), || format!("pointwise: {g:?}, {h:?}"))?;
                ensure(lhs == twist_apply(action, &gh, &k), || format!("direct: {g:?}, {h:?}"))?;
            }
            Ok(())
        }),
        check(&format!("tau-injective:{a_name}"), seed, n, |_, rng| {
            let mut g = group.random_elem(dyn_rng(rng));
            while group.is_identity(&g) {
                g = group.random_elem(dyn_rng(rng));
            }
            ensure(!TwistTable::global_twist(action.clone(), g.clone()).is_identity(), || {
                format!("tau of {} is trivial", group.format_elem(&g))
            })
        }),
    ]
}

pub fn twist_laws(seed: u64, n: usize) -> Vec<CheckReport> {
    let mut out = twist_laws_over(&TranslationAction::new(), seed, n);
    out.extend(twist_laws_over(&free2_regular(), seed, n));
    out
}

// ------------------------------------------------------------ min witness

pub fn plain_witness<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("min-witness:{}", group.name()), seed, n, |_, rng| {
        let u = random_clopen_words(rng, 5, false);
        let v = random_clopen_words(rng, 5, true);
        let s = Bisection::min_witness(group.clone(), &u, &v).map_err(|e| e.to_string())?;
        ensure(s.source().set_eq(&u), || format!("source of {s} is not {u:?}"))?;
        ensure(s.range().is_subset(&v), || format!("range of {s} not inside {v:?}"))?;
        ensure(
            matches!(Bisection::min_witness(group.clone(), &u, &ClopenSet::empty()), Err(Error::EmptyTarget)),
            || "empty target accepted".into(),
        )
    })
}

pub fn twisted_witness<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("min-witness:{}", action.name()), seed, n, |_, rng| {
        let u = random_clopen_bricks(action, rng, 4, false);
        let v = random_clopen_bricks(action, rng, 4, true);
        let s = TwistedBisection::min_witness(action.clone(), &u, &v).map_err(|e| e.to_string())?;
        ensure(s.source().set_eq(&u), || format!("source of {s} is not {u:?}"))?;
        ensure(s.range().is_subset(&v), || format!("range of {s} not inside {v:?}"))?;
        ensure(
            matches!(
                TwistedBisection::min_witness(action.clone(), &u, &ClopenSet::empty()),
                Err(Error::EmptyTarget)
            ),
            || "empty target accepted".into(),
        )
    })
}

pub fn min_witness(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        plain_witness(&TrivialGroup, seed, n),
        plain_witness(&s3(), seed, n),
        twisted_witness(&TranslationAction::new(), seed, n),
        twisted_witness(&free2_regular(), seed, n),
    ]
}

// --------------------------------------------------------------- isotropy

/// A standard part of `𝒱₂` with distinct words of length at most 4.
pub fn random_nonunit_part(rng: &mut ChaCha8Rng) -> StdPart<()> {
    loop {
        let p = random_std_part(&TrivialGroup, rng, 4);
        if p.domain != p.image {
            return p;
        }
    }
}

/// The first 64 bits, most significant first.
fn head_bits(x: &CantorPoint) -> u64 {
    (0..64).fold(0u64, |acc, i| (acc << 1) | x.bit_at(i) as u64)
}

fn word_bits(w: &Word) -> u64 {
    w.bits().iter().fold(0u64, |acc, &b| (acc << 1) | b as u64)
}

/// `x = w′z = wz` read off 64 leading bits; exact for points with
/// preperiod at most 4 and period at most 16.
struct Mask {
    a: u32,
    b: u32,
    w: u64,
    w2: u64,
}

impl Mask {
    fn new(p: &StdPart<()>) -> Self {
        Mask {
            a: p.domain.len() as u32,
            b: p.image.len() as u32,
            w: word_bits(&p.domain),
            w2: word_bits(&p.image),
        }
    }

    fn fixes(&self, x: u64) -> bool {
        let top = |k: u32| if k == 0 { 0 } else { x >> (64 - k) };
        if top(self.a) != self.w || top(self.b) != self.w2 {
            return false;
        }
        let d = (x << self.a) ^ (x << self.b);
        d >> self.a.max(self.b) == 0
    }
}

/// Scans the normalized points of `enumerate_points(4, 16)` once and
/// returns, for each part, the points fixed by it.
pub fn brute_force_fixed(parts: &[StdPart<()>]) -> Vec<BTreeSet<CantorPoint>> {
    let masks: Vec<Mask> = parts.iter().map(Mask::new).collect();
    let hits: Vec<(usize, CantorPoint)> = points_iter(4, 16)
        .par_bridge()
        .flat_map_iter(|x| {
            let bits = head_bits(&x);
            masks
                .iter()
                .enumerate()
                .filter(|(_, m)| m.fixes(bits))
                .map(|(i, _)| (i, x.clone()))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut out = vec![BTreeSet::new(); parts.len()];
    for (i, x) in hits {
        out[i].insert(x);
    }
    out
}

pub fn isotropy(seed: u64, n: usize) -> Vec<CheckReport> {
    let fixed = check("isotropy:fixed", seed, n, |_, rng| {
        let p = random_nonunit_part(rng);
        let pts = p.isotropy_points(4).map_err(|e| e.to_string())?;
        for x in &pts {
            ensure(x.preperiod().len() <= 4 && x.renormalized() == *x, || format!("{x} out of range"))?;
            ensure(p.act(x).as_ref() == Some(x), || format!("{x} is not fixed by {p:?}"))?;
        }
        ensure(
            matches!(
                StdPart::new(p.domain.clone(), p.domain.clone(), ()).isotropy_points(4),
                Err(Error::ShiftZeroIdentity(_))
            ),
            || "unit part accepted".into(),
        )
    });
    let base = seed ^ name_hash("isotropy:scan");
    let parts: Vec<StdPart<()>> = (0..n as u64)
        .map(|i| random_nonunit_part(&mut case_rng(base, i)))
        .collect();
    let brute = brute_force_fixed(&parts);
    let scan = check("isotropy:scan", seed, n, |i, _| {
        let p = &parts[i as usize];
        let found: BTreeSet<CantorPoint> = p
            .isotropy_points(4)
            .map_err(|e| e.to_string())?
            .into_iter()
            .collect();
        let expect = &brute[i as usize];
        ensure(expect.iter().all(|x| p.act(x).as_ref() == Some(x)), || {
            format!("scan returned a non-fixed point for {p:?}")
        })?;
        ensure(found == *expect, || format!("{p:?}: computed {found:?}, scan {expect:?}"))
    });
    vec![fixed, scan]
}

// -------------------------------------------------------------- coherence

/// Reads a bisection of `𝒱₂` as a twisted bisection supported on one coordinate.
fn lift<A: Action<G = TrivialGroup>>(action: &A, s: &A::Point, b: &Bisection<TrivialGroup>) -> TwistedBisection<A> {
    let parts = b
        .parts()
        .iter()
        .map(|p| {
            TwistedPart::new(
                crate::twisted::BrickFn::single(s.clone(), p.domain.clone()),
                crate::twisted::BrickFn::single(s.clone(), p.image.clone()),
                (),
            )
        })
        .collect();
    TwistedBisection::new(action.clone(), parts).expect("disjoint")
}

pub fn coherence(seed: u64, n: usize) -> Vec<CheckReport> {
    let action = trivial_on(1);
    let s = 1u32;
    let embed = move |t: &GTable<TrivialGroup>| {
        TwistTable::embed_v_coordinate(action, t, &s).expect("trivial labels")
    };
    vec![
        check("coherence:embed", seed, n, |_, rng| {
            let a = random_gtable(&TrivialGroup, rng, 4);
            let b = random_gtable(&TrivialGroup, rng, 4);
            ensure(embed(&a.mul(&b)) == embed(&a).mul(&embed(&b)), || format!("embed fails on {a}, {b}"))?;
            let back = embed(&a).to_v_coordinate(&s).map_err(|e| e.to_string())?;
            ensure(back == a, || format!("{a} comes back as {back}"))
        }),
        check("coherence:plain-j", seed, n, |_, rng| {
            let a = random_gtable(&TrivialGroup, rng, 4);
            let b = random_gtable(&TrivialGroup, rng, 4);
            let (ja, jb) = (Bisection::from_gtable(&a), Bisection::from_gtable(&b));
            ensure(Bisection::from_gtable(&a.mul(&b)).eq_set(&ja.compose(&jb)), || {
                format!("J fails on {a}, {b}")
            })?;
            let back = ja.compose(&jb).to_gtable().map_err(|e| e.to_string())?;
            ensure(back == a.mul(&b), || format!("I(J(a) J(b)) = {back}"))
        }),
        check("coherence:twisted-j", seed, n, |_, rng| {
            let a = random_gtable(&TrivialGroup, rng, 4);
            let b = random_gtable(&TrivialGroup, rng, 4);
            let (ea, eb) = (embed(&a), embed(&b));
            let (ja, jb) = (TwistedBisection::from_twist_table(&ea), TwistedBisection::from_twist_table(&eb));
            ensure(ja.eq_set(&lift(&action, &s, &Bisection::from_gtable(&a))), || {
                format!("twisted J of {a} differs from plain J")
            })?;
            let prod = ja.compose(&jb).to_twist_table().map_err(|e| e.to_string())?;
            ensure(prod == embed(&a.mul(&b)), || format!("I(J(a) J(b)) = {prod}"))?;
            let plain = prod.to_v_coordinate(&s).map_err(|e| e.to_string())?;
            ensure(plain == a.mul(&b), || format!("back in V: {plain}"))
        }),
    ]
}

// -------------------------------------------------------------- roundtrip

fn text_roundtrip<T: std::fmt::Display + PartialEq>(
    x: &T,
    parse: impl Fn(&str) -> Result<T>,
) -> CaseResult {
    let s = x.to_string();
    match parse(&s) {
        Ok(y) if y == *x => Ok(()),
        Ok(y) => Err(format!("{s} reparsed as {y}")),
        Err(e) => Err(format!("{s}: {e}")),
    }
}

fn json_roundtrip<J>(j: &J) -> std::result::Result<J, String>
where
    J: Serialize + serde::de::DeserializeOwned,
{
    let s = serde_json::to_string(j).map_err(|e| e.to_string())?;
    serde_json::from_str(&s).map_err(|e| format!("{s}: {e}"))
}

fn gtable_roundtrip<G: Group>(group: &G, seed: u64, n: usize) -> CheckReport {
    check(&format!("roundtrip:gtable:{}", group.name()), seed, n, |_, rng| {
        let t = random_gtable(group, rng, 5);
        text_roundtrip(&t, |s| GTable::parse(group.clone(), s))?;
        let j: GTableJson = json_roundtrip(&t.to_json())?;
        ensure(GTable::from_json(group.clone(), &j).ok() == Some(t.clone()), || format!("json of {t}"))?;
        let g = group.random_elem(dyn_rng(rng));
        let txt = group.format_elem(&g);
        ensure(group.parse_elem(&txt).ok() == Some(g), || format!("element {txt}"))?;
        let b = random_bisection(group, rng, 4);
        text_roundtrip(&b, |s| Bisection::parse(group.clone(), s))?;
        let bj: BisectionJson = json_roundtrip(&b.to_json())?;
        ensure(Bisection::from_json(group.clone(), &bj).ok() == Some(b.clone()), || format!("json of {b}"))
    })
}

fn twisted_roundtrip<A: Action>(action: &A, seed: u64, n: usize) -> CheckReport {
    check(&format!("roundtrip:twisted:{}", action.name()), seed, n, |_, rng| {
        let t = random_twist_table(action, rng, 3);
        text_roundtrip(&t, |s| TwistTable::parse(action.clone(), s))?;
        let j: TwistTableJson = json_roundtrip(&t.to_json())?;
        ensure(TwistTable::from_json(action.clone(), &j).ok() == Some(t.clone()), || format!("json of {t}"))?;
        let brick = random_brick_partition(action, rng, 3).swap_remove(0);
        let txt = format_brick(action, &brick);
        ensure(parse_brick(action, &txt).ok() == Some(brick), || format!("brick {txt}"))?;
        let k = random_cube_point(action, rng);
        let txt = format_cube_point(action, &k);
        ensure(parse_cube_point(action, &txt).ok() == Some(k), || format!("cube point {txt}"))?;
        let b = random_twisted_bisection(action, rng, 3);
        text_roundtrip(&b, |s| TwistedBisection::parse(action.clone(), s))?;
        let bj: TwistedBisectionJson = json_roundtrip(&b.to_json())?;
        ensure(TwistedBisection::from_json(action.clone(), &bj).ok() == Some(b.clone()), || {
            format!("json of {b}")
        })
    })
}

pub fn roundtrip(seed: u64, n: usize) -> Vec<CheckReport> {
    vec![
        check("roundtrip:cantor", seed, n, |_, rng| {
            let w = random_word(rng, 12);
            text_roundtrip(&w, |s| s.parse())?;
            let x = random_point(rng);
            text_roundtrip(&x, |s| s.parse())?;
            let p = random_partition(rng, 6);
            text_roundtrip(&p, |s| s.parse())
        }),
        gtable_roundtrip(&TrivialGroup, seed, n),
        gtable_roundtrip(&s3(), seed, n),
        gtable_roundtrip(&free2(), seed, n),
        gtable_roundtrip(&zz(), seed, n),
        twisted_roundtrip(&TranslationAction::new(), seed, n),
        twisted_roundtrip(&free2_regular(), seed, n),
        twisted_roundtrip(&trivial_on(2), seed, n),
        check("roundtrip:cayley", seed, 1, |_, _| {
            for g in [s3(), z4()] {
                let back = FiniteGroup::from_cayley_text(g.name(), &g.to_cayley_text()).map_err(|e| e.to_string())?;
                ensure(back == g, || format!("cayley table of {}", g.name()))?;
            }
            Ok(())
        }),
    ]
}
