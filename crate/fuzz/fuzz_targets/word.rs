#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::cantor::Word;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(w) = s.parse::<Word>() {
        let again: Word = w.to_string().parse().expect("printed word reparses");
        assert_eq!(w, again);
    }
});
