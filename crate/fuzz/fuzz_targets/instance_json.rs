//! Instance JSON must never panic on arbitrary input, and anything it
//! accepts must survive a write/read round trip unchanged.

#![no_main]

use libfuzzer_sys::fuzz_target;
use ppicod::instance::Instance;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(inst) = Instance::from_json_str(text) {
        let echoed = Instance::from_json_str(&inst.to_json_string())
            .expect("accepted instances must serialize to parseable JSON");
        assert_eq!(echoed, inst);
        // a parsed instance answers structural queries without panicking
        let _ = inst.validate();
        let _ = inst.bipartite();
    }
});
