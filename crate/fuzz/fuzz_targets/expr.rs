#![no_main]
use libfuzzer_sys::fuzz_target;

use cg_cli::{expr, session};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let _ = expr::parse(s);
    let _ = session::parse_line(s);
});
