#![no_main]
use hyptet::cli::OutputRecord;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    let Ok(rec) = OutputRecord::from_json(s) else { return };
    // whatever parsed must survive a round trip
    let again = OutputRecord::from_json(&rec.to_json()).expect("round trip");
    assert_eq!(again.command, rec.command);
    let _ = rec.to_csv();
});
