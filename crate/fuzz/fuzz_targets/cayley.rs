#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groups::{FiniteGroup, Group};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(g) = FiniteGroup::from_cayley_text("fuzz", s) {
        let again = FiniteGroup::from_cayley_text("fuzz", &g.to_cayley_text()).expect("printed table reparses");
        assert_eq!(g.to_cayley_text(), again.to_cayley_text());
        for x in g.elements().unwrap_or_default() {
            assert_eq!(g.parse_elem(&g.format_elem(&x)), Ok(x));
        }
    }
});
