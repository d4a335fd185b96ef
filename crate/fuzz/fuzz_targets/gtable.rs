#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groups::FiniteGroup;
use cg_core::labelled::{GTable, GTableJson};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let g = FiniteGroup::symmetric3();
    if let Ok(t) = GTable::parse(g.clone(), s) {
        let again = GTable::parse(g.clone(), &t.to_string()).expect("printed table reparses");
        assert_eq!(t, again);
        let back = GTable::from_json(g.clone(), &t.to_json()).expect("json round trip");
        assert_eq!(t, back);
    }
    if let Ok(j) = serde_json::from_str::<GTableJson>(s) {
        let _ = GTable::from_json(g, &j);
    }
});
