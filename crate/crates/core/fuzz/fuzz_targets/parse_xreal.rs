#![no_main]
use libfuzzer_sys::fuzz_target;
use lebesgue::XReal;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(v) = s.parse::<XReal>() {
        let printed = v.to_string();
        assert_eq!(printed.parse::<XReal>().unwrap(), v);
    }
    let _ = lebesgue::xreal::parse_rational(s);
});
