//! The twelve acceptance criteria, one report line each. Built without the
//! libtest harness so the lines always reach stdout.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cg_core::groups::FiniteGroup;
use cg_core::selftest::{self, CheckReport};

const SEED: u64 = 0x5eed_2024;
const CRITERION_1_BUDGET: Duration = Duration::from_secs(60);
const CRITERION_5_BUDGET: Duration = Duration::from_secs(300);

struct Outcome {
    id: usize,
    title: &'static str,
    checks: Vec<CheckReport>,
    elapsed: Duration,
    budget: Option<Duration>,
    extra: Vec<String>,
}

impl Outcome {
    fn pass(&self) -> bool {
        self.checks.iter().all(CheckReport::ok)
            && self.budget.is_none_or(|b| self.elapsed <= b)
            && self.extra.is_empty()
    }

    fn line(&self) -> String {
        let cases: usize = self.checks.iter().map(|c| c.cases).sum();
        let failed: usize = self.checks.iter().map(|c| c.failed).sum();
        let mut s = format!(
            "criterion {:>2} {:<34} {} ({} checks, {} cases, {} failed, {:.1}s",
            self.id,
            self.title,
            if self.pass() { "PASS" } else { "FAIL" },
            self.checks.len(),
            cases,
            failed,
            self.elapsed.as_secs_f64()
        );
        if let Some(b) = self.budget {
            s.push_str(&format!(" of {}s budget", b.as_secs()));
        }
        s.push(')');
        for c in self.checks.iter().filter(|c| !c.ok()) {
            s.push_str(&format!("\n    {}: {}", c.name, c.first_failure.as_deref().unwrap_or("")));
        }
        for e in &self.extra {
            s.push_str(&format!("\n    {e}"));
        }
        s
    }
}

fn run(
    id: usize,
    title: &'static str,
    budget: Option<Duration>,
    f: impl FnOnce() -> (Vec<CheckReport>, Vec<String>),
) -> Outcome {
    let start = Instant::now();
    let (checks, extra) = f();
    let o = Outcome {
        id,
        title,
        checks,
        elapsed: start.elapsed(),
        budget,
        extra,
    };
    println!("{}", o.line());
    o
}

fn plain(checks: Vec<CheckReport>) -> (Vec<CheckReport>, Vec<String>) {
    (checks, Vec::new())
}

fn main() -> ExitCode {
    let outcomes = vec![
        run(1, "group axioms", Some(CRITERION_1_BUDGET), || {
            plain(selftest::group_axioms(SEED, 1000))
        }),
        run(2, "normal-form confluence", None, || plain(selftest::confluence(SEED, 500))),
        run(3, "representation faithfulness", None, || plain(selftest::faithfulness(SEED, 500))),
        run(4, "full-group correspondence", None, || plain(selftest::ij_roundtrip(SEED, 500))),
        run(5, "centre at desk scale", Some(CRITERION_5_BUDGET), || {
            let s3 = FiniteGroup::symmetric3();
            let z4 = FiniteGroup::cyclic(4).unwrap();
            let checks = vec![selftest::center_exhaustive(&s3), selftest::center_exhaustive(&z4)];
            // Z(S3) is trivial and Z/4 is abelian.
            let mut extra = Vec::new();
            for (g, size) in [(&s3, 1), (&z4, 4)] {
                if g.centre().len() != size {
                    extra.push(format!("centre of {} has {} elements", cg_core::groups::Group::name(g), g.centre().len()));
                }
            }
            (checks, extra)
        }),
        run(6, "conjugation formula", None, || plain(selftest::conjugation(SEED, 500))),
        run(7, "torsion generators", None, || plain(selftest::torsion())),
        run(8, "wreath and forgetful structure", None, || {
            plain(selftest::homomorphisms(SEED, 1000))
        }),
        run(9, "twist laws", None, || plain(selftest::twist_laws(SEED, 500))),
        run(10, "minimality witnesses", None, || plain(selftest::min_witness(SEED, 200))),
        run(11, "effectiveness shadow", None, || plain(selftest::isotropy(SEED, 200))),
        run(12, "cross-representation coherence", None, || {
            plain(selftest::coherence(SEED, 500))
        }),
    ];
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.pass()).map(|o| o.id).collect();
    if failed.is_empty() {
        println!("acceptance: all {} criteria pass", outcomes.len());
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failed criteria {failed:?}");
        ExitCode::FAILURE
    }
}
