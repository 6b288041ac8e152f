#![no_main]
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(v) = hyptet::cli::parse_angle_list(s) {
            assert_eq!(v.len(), s.split(',').count());
        }
    }
});
