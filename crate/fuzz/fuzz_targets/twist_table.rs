#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groups::TranslationAction;
use cg_core::twisted::{TwistTable, TwistTableJson};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let a = TranslationAction::new();
    if let Ok(t) = TwistTable::parse(a.clone(), s) {
        let printed = t.to_string();
        let again = TwistTable::parse(a.clone(), &printed).expect("printed table reparses");
        assert_eq!(printed, again.to_string());
        let back = TwistTable::from_json(a.clone(), &t.to_json()).expect("json round trip");
        assert_eq!(printed, back.to_string());
    }
    if let Ok(j) = serde_json::from_str::<TwistTableJson>(s) {
        let _ = TwistTable::from_json(a, &j);
    }
});
