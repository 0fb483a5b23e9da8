//! Code JSON must never panic on arbitrary input; accepted codes must
//! round-trip exactly and already be reduced over their field.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ppicod::oracle::{code_from_json_str, code_to_json_string};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(code) = code_from_json_str(text) {
        let echoed = code_from_json_str(&code_to_json_string(&code))
            .expect("accepted codes must serialize to parseable JSON");
        assert_eq!(echoed, code);
        let q = code.field().order();
        assert!(code.entries().iter().all(|&e| e < q));
    }
});
