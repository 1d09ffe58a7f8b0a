#![no_main]
use libfuzzer_sys::fuzz_target;
use streett_fool::QRanking;

fuzz_target!(|data: &[u8]| {
    if let Ok(s) = std::str::from_utf8(data) {
        if let Ok(f) = s.parse::<QRanking>() {
            assert_eq!(f.to_string().parse::<QRanking>().unwrap(), f);
        }
    }
});
