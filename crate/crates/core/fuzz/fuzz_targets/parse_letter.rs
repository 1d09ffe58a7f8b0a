#![no_main]
use libfuzzer_sys::fuzz_target;
use streett_fool::parse_letter;

fuzz_target!(|data: &[u8]| {
    if let Ok(line) = std::str::from_utf8(data) {
        if let Ok(letter) = parse_letter(line) {
            assert_eq!(parse_letter(&letter.to_string()).unwrap(), letter);
        }
    }
});
