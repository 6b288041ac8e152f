use std::f64::consts::PI;

use hyptet::cli::{parse_angle, parse_angle_list, run, OutputRecord};
use proptest::prelude::*;

#[test]
fn angle_forms() {
    let cases = [
        ("pi", PI),
        ("π", PI),
        ("-pi/3", -PI / 3.0),
        ("2pi/5", 2.0 * PI / 5.0),
        ("2*pi/5", 2.0 * PI / 5.0),
        ("0.5π", PI / 2.0),
        (" 1.25 ", 1.25),
        ("3/4", 0.75),
        ("1e-1", 0.1),
    ];
    for (text, value) in cases {
        assert!((parse_angle(text).unwrap() - value).abs() < 1e-15, "{text}");
    }
    for bad in ["", "pi/0", "2**pi", "pipi", "inf", "NaN", "1/", "pi x", "1e400", "--1"] {
        assert!(parse_angle(bad).is_err(), "{bad}");
    }
}

#[test]
fn lists() {
    assert_eq!(parse_angle_list("1,2, 3").unwrap(), vec![1.0, 2.0, 3.0]);
    assert!(parse_angle_list("").is_err());
    assert!(parse_angle_list("1,,2").is_err());
}

#[test]
fn record_rejects_foreign_schema() {
    let mut rec = OutputRecord::new("tet", &[]);
    rec.schema = "other/1".into();
    assert!(OutputRecord::from_json(&rec.to_json()).is_err());
    assert!(OutputRecord::from_json("{").is_err());
}

#[test]
fn run_writes_errors_to_the_error_stream() {
    let argv: Vec<String> = ["hyptet", "prism", "--n", "3", "--alpha", "0.9", "--beta", "pi/2", "--gamma", "2.0"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let (mut out, mut err) = (Vec::new(), Vec::new());
    assert_eq!(run(&argv, &mut out, &mut err), 3);
    assert!(out.is_empty());
    assert!(!err.is_empty());
}

proptest! {
    #[test]
    fn decimals_round_trip(x in -1e6..1e6f64) {
        prop_assert_eq!(parse_angle(&format!("{x}")).unwrap(), x);
    }

    #[test]
    fn multiples_of_pi(p in -50i32..50, q in 1i32..50) {
        let v = parse_angle(&format!("{p}pi/{q}")).unwrap();
        prop_assert!((v - f64::from(p) * PI / f64::from(q)).abs() < 1e-13);
    }

    #[test]
    fn never_panics(s in "\\PC{0,24}") {
        if let Ok(v) = parse_angle(&s) {
            prop_assert!(v.is_finite());
        }
        let _ = parse_angle_list(&s);
        let _ = OutputRecord::from_json(&s);
    }
}
