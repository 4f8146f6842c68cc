// Licensed under the Apache-2.0 license

//! Arbitrary and mutated inputs must never panic or read out of bounds.

use proptest::prelude::*;
use tzaudit::der_x509::{parse_certificate, parse_tlv};
use tzaudit::scanner::scan_image;
use tzaudit::synth::fixtures;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn arbitrary_bytes(bytes in proptest::collection::vec(any::<u8>(), 0..65536), offset in 0usize..70000) {
        if let Ok(node) = parse_tlv(&bytes, offset.min(bytes.len())) {
            prop_assert!(node.end() <= bytes.len());
            prop_assert!((2..=6).contains(&node.header_len));
        }
        let _ = parse_certificate(&bytes);
        let result = scan_image(&bytes, "fuzz");
        for c in &result.certificates {
            prop_assert!(c.source_offset + c.total_len <= bytes.len());
        }
    }

    #[test]
    fn mutated_certificate(flips in proptest::collection::vec((0usize..1224, any::<u8>()), 1..8), cut in 0usize..1225) {
        let mut der = fixtures::nexus6_leaf();
        for (at, b) in flips {
            der[at] ^= b;
        }
        der.truncate(cut);
        if let Ok(cert) = parse_certificate(&der) {
            prop_assert!(cert.total_len <= der.len());
        }
        let _ = scan_image(&der, "mutated");
    }

    #[test]
    fn pattern_prefixed_noise(body in proptest::collection::vec(any::<u8>(), 0..4096), len in any::<u16>()) {
        let mut image = vec![0x30, 0x82];
        image.extend_from_slice(&len.to_be_bytes());
        image.extend_from_slice(&[0x30, 0x82]);
        image.extend_from_slice(&body);
        let result = scan_image(&image, "noise");
        prop_assert_eq!(result.candidates[0].offset, 0);
    }
}
