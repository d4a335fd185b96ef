#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groups::TranslationAction;
use cg_core::twisted::{format_brick, format_cube_point, parse_brick, parse_cube_point};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let a = TranslationAction::new();
    if let Ok(b) = parse_brick(&a, s) {
        let again = parse_brick(&a, &format_brick(&a, &b)).expect("printed brick reparses");
        assert_eq!(b, again);
    }
    if let Ok(k) = parse_cube_point(&a, s) {
        let printed = format_cube_point(&a, &k);
        let again = parse_cube_point(&a, &printed).expect("printed point reparses");
        assert_eq!(printed, format_cube_point(&a, &again));
    }
});
