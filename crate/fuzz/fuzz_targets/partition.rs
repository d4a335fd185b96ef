#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_core::cantor::PartitionSet;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(p) = s.parse::<PartitionSet>() {
        let again: PartitionSet = p.to_string().parse().expect("printed partition reparses");
        assert_eq!(p, again);
    }
});
