use proptest::prelude::*;
use qsha256::sha256::{self, pad_message, Digest};
use sha2::{Digest as _, Sha256};

fn oracle(msg: &[u8]) -> [u8; 32] {
    Sha256::digest(msg).into()
}

#[test]
fn padding_boundaries_match_oracle() {
    for len in [0usize, 1, 54, 55, 56, 57, 63, 64, 65, 119, 120, 128] {
        let msg: Vec<u8> = (0..len).map(|i| (i * 31 + 7) as u8).collect();
        let blocks = pad_message(&msg).unwrap();
        assert_eq!(blocks.len(), (len + 9).div_ceil(64), "len {len}");
        assert_eq!(sha256::sha256(&msg).0, oracle(&msg), "len {len}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matches_independent_implementation(msg in prop::collection::vec(any::<u8>(), 0..10_000)) {
        prop_assert_eq!(sha256::sha256(&msg).0, oracle(&msg));
    }
}

proptest! {
    #[test]
    fn deterministic_and_hex_roundtrip(msg in prop::collection::vec(any::<u8>(), 0..300)) {
        let d = sha256::sha256(&msg);
        prop_assert_eq!(d, sha256::sha256(&msg));
        let hex = d.to_hex();
        prop_assert_eq!(hex.len(), 64);
        prop_assert_eq!(Digest::from_hex(&hex).unwrap(), d);
    }
}

#[test]
fn bad_hex_rejected() {
    assert!(Digest::from_hex("abc").is_err());
    assert!(Digest::from_hex(&"zz".repeat(32)).is_err());
}
