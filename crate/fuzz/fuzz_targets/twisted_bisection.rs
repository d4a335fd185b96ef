#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groupoid::{TwistedBisection, TwistedBisectionJson};
use cg_core::groups::TranslationAction;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let a = TranslationAction::new();
    if let Ok(b) = TwistedBisection::parse(a.clone(), s) {
        let printed = b.to_string();
        let again = TwistedBisection::parse(a.clone(), &printed).expect("printed bisection reparses");
        assert_eq!(printed, again.to_string());
        let back = TwistedBisection::from_json(a.clone(), &b.to_json()).expect("json round trip");
        assert_eq!(printed, back.to_string());
    }
    if let Ok(j) = serde_json::from_str::<TwistedBisectionJson>(s) {
        let _ = TwistedBisection::from_json(a, &j);
    }
});
