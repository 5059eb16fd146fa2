#![no_main]
use libfuzzer_sys::fuzz_target;
use lebesgue::specfile::parse_spec;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(spec) = parse_spec(text) {
        // canonical form parses back to the same spec
        let printed = spec.to_string();
        assert_eq!(parse_spec(&printed).unwrap(), spec);
    }
});
