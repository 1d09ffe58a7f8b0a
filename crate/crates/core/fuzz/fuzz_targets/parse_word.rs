#![no_main]
use libfuzzer_sys::fuzz_target;
use streett_fool::{parse_word, write_word};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    if let Ok(word) = parse_word(text) {
        // anything accepted must survive a round trip
        assert_eq!(parse_word(&write_word(&word)).unwrap(), word);
    }
});
