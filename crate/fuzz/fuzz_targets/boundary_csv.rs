//! Boundary CSV must never panic on arbitrary input; accepted files must
//! round-trip row for row.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ppicod::oracle::{parse_boundary_csv, write_boundary_csv};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(rows) = parse_boundary_csv(text) {
        let echoed = parse_boundary_csv(&write_boundary_csv(&rows))
            .expect("accepted boundary rows must re-parse");
        assert_eq!(echoed, rows);
    }
});
