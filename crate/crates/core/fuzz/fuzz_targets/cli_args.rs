#![no_main]
use libfuzzer_sys::fuzz_target;

// Arguments are NUL separated.
fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let mut argv = vec!["hyptet".to_string()];
    argv.extend(s.split('\0').take(40).map(str::to_string));
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = hyptet::cli::run(&argv, &mut out, &mut err);
    assert!((0..=3).contains(&code));
});
