#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::groupoid::{format_brick_set, format_word_set, parse_brick_set, parse_word_set};
use cg_core::groups::TranslationAction;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(u) = parse_word_set(s) {
        let again = parse_word_set(&format_word_set(&u)).expect("printed set reparses");
        assert_eq!(u, again);
    }
    let a = TranslationAction::new();
    if let Ok(u) = parse_brick_set(&a, s) {
        let again = parse_brick_set(&a, &format_brick_set(&a, &u)).expect("printed set reparses");
        assert_eq!(u, again);
    }
});
