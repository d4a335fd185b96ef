#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::cantor::CantorPoint;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(x) = s.parse::<CantorPoint>() {
        let again: CantorPoint = x.to_string().parse().expect("printed point reparses");
        assert_eq!(x, again);
    }
});
