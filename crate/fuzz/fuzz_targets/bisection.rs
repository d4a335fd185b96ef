#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groupoid::{Bisection, BisectionJson};
use cg_core::groups::FiniteGroup;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let g = FiniteGroup::cyclic(2).unwrap();
    if let Ok(b) = Bisection::parse(g.clone(), s) {
        let again = Bisection::parse(g.clone(), &b.to_string()).expect("printed bisection reparses");
        assert_eq!(b, again);
        let back = Bisection::from_json(g.clone(), &b.to_json()).expect("json round trip");
        assert_eq!(b, back);
    }
    if let Ok(j) = serde_json::from_str::<BisectionJson>(s) {
        let _ = Bisection::from_json(g, &j);
    }
});
