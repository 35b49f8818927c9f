#![no_main]

use afe_core::io::{parse_instance, serialize_instance};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(inst) = parse_instance(data) {
        let text = serialize_instance(&inst);
        let again = parse_instance(text.as_bytes()).expect("serialized instances parse");
        assert_eq!(serialize_instance(&again), text);
    }
});
