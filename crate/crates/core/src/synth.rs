// Licensed under the Apache-2.0 license

//! Synthetic certificates and firmware images.
//!
//! Everything here is deterministic given its seed. The certificates are
//! structurally valid DER but carry random key material and random signature
//! bytes; nothing in this crate verifies signatures, so that is enough to
//! exercise scanning, chain building and key comparison.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use crate::der_x509::{oid, tag};

/// Encodes one DER element with a minimal definite length.
pub fn der_tlv(tag_byte: u8, content: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(content.len() + 6);
    out.push(tag_byte);
    let len = content.len();
    if len < 0x80 {
        out.push(len as u8);
    } else {
        let bytes = (len as u32).to_be_bytes();
        let skip = bytes.iter().take_while(|&&b| b == 0).count();
        out.push(0x80 | (4 - skip) as u8);
        out.extend_from_slice(&bytes[skip..]);
    }
    out.extend_from_slice(content);
    out
}

fn seq(parts: &[&[u8]]) -> Vec<u8> {
    der_tlv(tag::SEQUENCE, &parts.concat())
}

fn der_oid(dotted: &str) -> Vec<u8> {
    der_tlv(tag::OID, &oid::encode(dotted).expect("valid OID literal"))
}

fn rng_for(label: &str) -> ChaCha20Rng {
    ChaCha20Rng::from_seed(Sha256::digest(label.as_bytes()).into())
}

/// One attribute of a name to encode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NameEntry {
    pub oid: String,
    pub string_tag: u8,
    pub value: String,
}

impl NameEntry {
    pub fn printable(label: &str, value: &str) -> Self {
        Self::with_tag(label, tag::PRINTABLE_STRING, value)
    }

    pub fn t61(label: &str, value: &str) -> Self {
        Self::with_tag(label, tag::T61_STRING, value)
    }

    pub fn utf8(label: &str, value: &str) -> Self {
        Self::with_tag(label, tag::UTF8_STRING, value)
    }

    pub fn ia5(label: &str, value: &str) -> Self {
        Self::with_tag(label, tag::IA5_STRING, value)
    }

    /// `label` is a short name (`CN`, `OU`, ...) or a dotted OID.
    pub fn with_tag(label: &str, string_tag: u8, value: &str) -> Self {
        let oid = oid::from_short_name(label)
            .map(str::to_string)
            .unwrap_or_else(|| label.to_string());
        Self {
            oid,
            string_tag,
            value: value.to_string(),
        }
    }

    fn encode(&self) -> Vec<u8> {
        let value = match self.string_tag {
            // Latin-1 for the 8-bit string types
            tag::T61_STRING => self.value.chars().map(|c| c as u32 as u8).collect(),
            _ => self.value.as_bytes().to_vec(),
        };
        der_tlv(
            tag::SET,
            &seq(&[&der_oid(&self.oid), &der_tlv(self.string_tag, &value)]),
        )
    }
}

pub fn encode_name(entries: &[NameEntry]) -> Vec<u8> {
    let body: Vec<u8> = entries.iter().flat_map(NameEntry::encode).collect();
    der_tlv(tag::SEQUENCE, &body)
}

/// Random RSA-shaped public key (modulus with top and bottom bits set,
/// exponent 65537), encoded as a SubjectPublicKeyInfo.
pub fn rsa_spki(seed: &str, modulus_bytes: usize) -> Vec<u8> {
    let mut rng = rng_for(&format!("spki:{seed}"));
    let mut modulus = vec![0u8; modulus_bytes];
    rng.fill_bytes(&mut modulus);
    modulus[0] |= 0x80;
    modulus[modulus_bytes - 1] |= 0x01;
    let mut int = vec![0u8];
    int.extend(modulus);
    let rsa_key = seq(&[
        &der_tlv(tag::INTEGER, &int),
        &der_tlv(tag::INTEGER, &[0x01, 0x00, 0x01]),
    ]);
    let mut bits = vec![0u8];
    bits.extend(rsa_key);
    seq(&[
        &seq(&[&der_oid(oid::RSA_ENCRYPTION), &[0x05, 0x00]]),
        &der_tlv(tag::BIT_STRING, &bits),
    ])
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TimeValue {
    Utc(String),
    Generalized(String),
}

impl TimeValue {
    fn encode(&self) -> Vec<u8> {
        match self {
            Self::Utc(s) => der_tlv(tag::UTC_TIME, s.as_bytes()),
            Self::Generalized(s) => der_tlv(tag::GENERALIZED_TIME, s.as_bytes()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Extension {
    pub oid: String,
    pub critical: bool,
    pub value: Vec<u8>,
}

impl Extension {
    fn encode(&self) -> Vec<u8> {
        let mut parts = der_oid(&self.oid);
        if self.critical {
            parts.extend([tag::BOOLEAN, 0x01, 0xFF]);
        }
        parts.extend(der_tlv(tag::OCTET_STRING, &self.value));
        der_tlv(tag::SEQUENCE, &parts)
    }

    pub fn basic_constraints(ca: bool) -> Self {
        let body = if ca {
            seq(&[&[tag::BOOLEAN, 0x01, 0xFF]])
        } else {
            seq(&[])
        };
        Self {
            oid: "2.5.29.19".into(),
            critical: true,
            value: body,
        }
    }

    pub fn key_usage(bits: u8) -> Self {
        let unused = bits.trailing_zeros().min(7) as u8;
        Self {
            oid: "2.5.29.15".into(),
            critical: true,
            value: der_tlv(tag::BIT_STRING, &[unused, bits]),
        }
    }

    pub fn subject_key_id(spki: &[u8]) -> Self {
        let id = &Sha256::digest(spki)[..20];
        Self {
            oid: "2.5.29.14".into(),
            critical: false,
            value: der_tlv(tag::OCTET_STRING, id),
        }
    }

    pub fn authority_key_id(issuer_spki: &[u8]) -> Self {
        let id = &Sha256::digest(issuer_spki)[..20];
        Self {
            oid: "2.5.29.35".into(),
            critical: false,
            value: seq(&[&der_tlv(0x80, id)]),
        }
    }

    /// Opaque private extension under the `2.999` example arc.
    pub fn filler(len: usize) -> Self {
        Self {
            oid: "2.999.1".into(),
            critical: false,
            value: vec![0u8; len],
        }
    }
}

/// Builder for synthetic X.509 certificates.
#[derive(Debug, Clone)]
pub struct CertificateSpec {
    /// `None` omits the version field (X.509 v1).
    pub version: Option<u8>,
    pub serial: Vec<u8>,
    pub issuer: Vec<NameEntry>,
    pub subject: Vec<NameEntry>,
    pub not_before: TimeValue,
    pub not_after: TimeValue,
    pub spki: Vec<u8>,
    pub extensions: Vec<Extension>,
    /// When set, a filler extension is appended so the TBSCertificate content
    /// is exactly this many bytes.
    pub tbs_content_len: Option<usize>,
    pub signature_seed: String,
}

impl CertificateSpec {
    pub fn new(subject: Vec<NameEntry>, issuer: Vec<NameEntry>, key_seed: &str) -> Self {
        Self {
            version: Some(3),
            serial: vec![0x01],
            issuer,
            subject,
            not_before: TimeValue::Utc("170101000000Z".into()),
            not_after: TimeValue::Utc("370101000000Z".into()),
            spki: rsa_spki(key_seed, 256),
            extensions: Vec::new(),
            tbs_content_len: None,
            signature_seed: key_seed.to_string(),
        }
    }

    fn tbs_content(&self, extensions: &[Extension]) -> Vec<u8> {
        let mut out = Vec::new();
        if let Some(v) = self.version {
            out.extend(der_tlv(0xA0, &der_tlv(tag::INTEGER, &[v - 1])));
        }
        out.extend(der_tlv(tag::INTEGER, &self.serial));
        out.extend(sha256_with_rsa());
        out.extend(encode_name(&self.issuer));
        out.extend(seq(&[&self.not_before.encode(), &self.not_after.encode()]));
        out.extend(encode_name(&self.subject));
        out.extend_from_slice(&self.spki);
        if !extensions.is_empty() {
            let list: Vec<u8> = extensions.iter().flat_map(Extension::encode).collect();
            out.extend(der_tlv(0xA3, &der_tlv(tag::SEQUENCE, &list)));
        }
        out
    }

    pub fn encode_tbs(&self) -> Vec<u8> {
        let Some(target) = self.tbs_content_len else {
            return der_tlv(tag::SEQUENCE, &self.tbs_content(&self.extensions));
        };
        // Grow the filler until the content hits the target; header sizes
        // change at 128/256 bytes so a plain subtraction is not always exact.
        for pad in 0..target {
            let mut exts = self.extensions.clone();
            exts.push(Extension::filler(pad));
            let content = self.tbs_content(&exts);
            match content.len().cmp(&target) {
                std::cmp::Ordering::Equal => return der_tlv(tag::SEQUENCE, &content),
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Less => {}
            }
        }
        panic!("cannot pad TBSCertificate to {target} bytes");
    }

    pub fn encode(&self) -> Vec<u8> {
        let mut rng = rng_for(&format!("sig:{}", self.signature_seed));
        let mut sig = vec![0u8; 257];
        rng.fill_bytes(&mut sig[1..]);
        sig[0] = 0;
        seq(&[&self.encode_tbs(), &sha256_with_rsa(), &der_tlv(tag::BIT_STRING, &sig)])
    }
}

fn sha256_with_rsa() -> Vec<u8> {
    seq(&[&der_oid(oid::SHA256_WITH_RSA), &[0x05, 0x00]])
}

/// Certificates and images laid out like the hex dumps of real TEE images
/// (a Nexus 6 `tz` partition and a Samsung S7 `tz.mbn`).
pub mod fixtures {
    use super::*;

    /// Offset of the signing certificate in [`nexus6_tz_image`].
    pub const NEXUS6_LEAF_OFFSET: usize = 0x1348;
    /// Offset of the subject Name SEQUENCE (a `30 82` that is not a certificate).
    pub const NEXUS6_SUBJECT_OFFSET: usize = 0x1407;
    /// Offset of the signing certificate in [`samsung_tz_mbn`].
    pub const SAMSUNG_LEAF_OFFSET: usize = 0x1308;

    const NEXUS6_PRELUDE: [u8; 24] = [
        0x65, 0x63, 0x78, 0xD2, 0x09, 0x40, 0x05, 0x5E, 0xBA, 0xB9, 0x56, 0x13, 0xC5, 0xBB, 0xFF, 0xC1, 0x52, 0x2F,
        0x86, 0x5F, 0xED, 0x10, 0x1A, 0x1D,
    ];
    const SAMSUNG_PRELUDE: [u8; 24] = [
        0xEE, 0x02, 0x95, 0x90, 0x3D, 0x8D, 0x16, 0x8D, 0x2B, 0x88, 0x85, 0xDC, 0x2A, 0x18, 0x14, 0xF6, 0x42, 0xF5,
        0x1B, 0x7C, 0xBF, 0xD4, 0xA5, 0x40,
    ];

    fn qualcomm_attestation_ca_name() -> Vec<NameEntry> {
        vec![
            NameEntry::printable("C", "US"),
            NameEntry::printable("ST", "CA"),
            NameEntry::printable("L", "San Diego"),
            NameEntry::printable("OU", "CDMA Technologies"),
            NameEntry::printable("O", "None"),
            NameEntry::printable("CN", "Generated Attestation CA"),
        ]
    }

    fn qualcomm_root_name() -> Vec<NameEntry> {
        vec![
            NameEntry::printable("C", "US"),
            NameEntry::printable("ST", "CA"),
            NameEntry::printable("L", "San Diego"),
            NameEntry::printable("OU", "CDMA Technologies"),
            NameEntry::printable("O", "None"),
            NameEntry::printable("CN", "Generated Root CA"),
        ]
    }

    fn samsung_attestation_ca_name() -> Vec<NameEntry> {
        vec![
            NameEntry::printable("C", "KR"),
            NameEntry::printable("ST", "South Korea"),
            NameEntry::printable("L", "Suwon City"),
            NameEntry::printable("O", "Samsung Corporation"),
            NameEntry::printable("OU", "DMC"),
            NameEntry::printable("CN", "Samsung AttestationCA cert"),
            NameEntry::ia5("emailAddress", "m.security@samsung.com"),
        ]
    }

    fn samsung_root_name() -> Vec<NameEntry> {
        vec![
            NameEntry::printable("C", "KR"),
            NameEntry::printable("ST", "South Korea"),
            NameEntry::printable("L", "Suwon City"),
            NameEntry::printable("O", "Samsung Corporation"),
            NameEntry::printable("OU", "DMC"),
            NameEntry::printable("CN", "Samsung Root CA"),
        ]
    }

    /// Key seed of the signing certificate in the Nexus 6 layout.
    pub const NEXUS6_SIGNING_KEY: &str = "qualcomm-nexus6-attestation";
    pub const NEXUS6_CA_KEY: &str = "qualcomm-generated-attestation-ca";
    pub const NEXUS6_ROOT_KEY: &str = "qualcomm-generated-root";
    pub const SAMSUNG_SIGNING_KEY: &str = "samsung-s7-sectools";
    pub const SAMSUNG_CA_KEY: &str = "samsung-attestation-ca";
    pub const SAMSUNG_ROOT_KEY: &str = "samsung-root";

    /// Signing certificate with the Nexus 6 layout: 1224 bytes, subject
    /// `Qualcomm Platform Signing Application User` with OEM_ID/SW_SIZE/
    /// MODEL_ID/SHA256 (plus SW_ID/HW_ID/DEBUG) OU metadata.
    pub fn nexus6_leaf_spec(key_seed: &str) -> CertificateSpec {
        let subject = vec![
            NameEntry::printable("C", "US"),
            NameEntry::printable("CN", "Qualcomm Platform Signing Application User"),
            NameEntry::printable("L", "San Diego"),
            NameEntry::printable("O", "ASIC"),
            NameEntry::printable("ST", "California"),
            NameEntry::t61("OU", "04 0000 OEM_ID"),
            NameEntry::t61("OU", "05 00000248 SW_SIZE"),
            NameEntry::t61("OU", "06 0000 MODEL_ID"),
            NameEntry::printable("OU", "07 0001 SHA256"),
            NameEntry::t61("OU", "01 0000000000000000 SW_ID"),
            NameEntry::t61("OU", "02 0000000000000000 HW_ID"),
            NameEntry::t61("OU", "03 0000000000000000 DEBUG"),
        ];
        let mut spec = CertificateSpec::new(subject, qualcomm_attestation_ca_name(), key_seed);
        spec.serial = vec![0x00, 0x97, 0x66];
        spec.not_before = TimeValue::Utc("170222094215Z".into());
        spec.not_after = TimeValue::Utc("370217094215Z".into());
        spec.extensions = vec![
            Extension::basic_constraints(false),
            Extension::key_usage(0x80),
            Extension::subject_key_id(&spec.spki),
            Extension::authority_key_id(&rsa_spki(NEXUS6_CA_KEY, 256)),
        ];
        spec.tbs_content_len = Some(0x03AC);
        spec
    }

    pub fn nexus6_leaf() -> Vec<u8> {
        nexus6_leaf_spec(NEXUS6_SIGNING_KEY).encode()
    }

    pub fn nexus6_attestation_ca() -> Vec<u8> {
        let mut spec = CertificateSpec::new(qualcomm_attestation_ca_name(), qualcomm_root_name(), NEXUS6_CA_KEY);
        spec.serial = vec![0x05, 0x8E, 0x21];
        spec.not_before = TimeValue::Utc("130520220419Z".into());
        spec.not_after = TimeValue::Utc("330515220419Z".into());
        spec.extensions = vec![
            Extension::basic_constraints(true),
            Extension::key_usage(0x06),
            Extension::subject_key_id(&spec.spki),
            Extension::authority_key_id(&rsa_spki(NEXUS6_ROOT_KEY, 256)),
        ];
        spec.encode()
    }

    /// Self-signed X.509 v1 root (no version field, no extensions).
    pub fn nexus6_root() -> Vec<u8> {
        let mut spec = CertificateSpec::new(qualcomm_root_name(), qualcomm_root_name(), NEXUS6_ROOT_KEY);
        spec.version = None;
        spec.serial = vec![0x00, 0xC2, 0x8D, 0x6E, 0x7F, 0x43, 0x14, 0x0A, 0x4B];
        spec.not_before = TimeValue::Utc("120517215503Z".into());
        spec.not_after = TimeValue::Utc("420510215503Z".into());
        spec.encode()
    }

    /// Signing certificate with the Samsung S7 `tz.mbn` layout: 1257 bytes,
    /// SW_ID `0000000200000007`, HW_ID `009470E100200000`.
    pub fn samsung_leaf_spec(key_seed: &str, sw_id: &str) -> CertificateSpec {
        let subject = vec![
            NameEntry::printable("C", "US"),
            NameEntry::printable("CN", "SecTools Test User"),
            NameEntry::printable("L", "San Diego"),
            NameEntry::printable("O", "SecTools"),
            NameEntry::printable("ST", "California"),
            NameEntry::t61("OU", &format!("01 {sw_id} SW_ID")),
            NameEntry::t61("OU", "02 009470E100200000 HW_ID"),
            NameEntry::t61("OU", "04 0020 OEM_ID"),
            NameEntry::t61("OU", "05 00000270 SW_SIZE"),
            NameEntry::t61("OU", "06 0000 MODEL_ID"),
            NameEntry::t61("OU", "07 0001 SHA256"),
            NameEntry::t61("OU", "03 0000000000000000 DEBUG"),
        ];
        let mut spec = CertificateSpec::new(subject, samsung_attestation_ca_name(), key_seed);
        spec.serial = vec![0x01];
        spec.not_before = TimeValue::Utc("170411095851Z".into());
        spec.not_after = TimeValue::Utc("370406095851Z".into());
        spec.extensions = vec![
            Extension::basic_constraints(false),
            Extension::key_usage(0x80),
            Extension::subject_key_id(&spec.spki),
            Extension::authority_key_id(&rsa_spki(SAMSUNG_CA_KEY, 256)),
        ];
        spec.tbs_content_len = Some(0x03CD);
        spec
    }

    pub fn samsung_leaf() -> Vec<u8> {
        samsung_leaf_spec(SAMSUNG_SIGNING_KEY, "0000000200000007").encode()
    }

    pub fn samsung_attestation_ca() -> Vec<u8> {
        let mut spec = CertificateSpec::new(samsung_attestation_ca_name(), samsung_root_name(), SAMSUNG_CA_KEY);
        spec.serial = vec![0x10, 0x00];
        spec.not_before = TimeValue::Generalized("20160301000000Z".into());
        spec.not_after = TimeValue::Generalized("20560301000000Z".into());
        spec.extensions = vec![
            Extension::basic_constraints(true),
            Extension::subject_key_id(&spec.spki),
            Extension::authority_key_id(&rsa_spki(SAMSUNG_ROOT_KEY, 256)),
        ];
        spec.encode()
    }

    pub fn samsung_root() -> Vec<u8> {
        let mut spec = CertificateSpec::new(samsung_root_name(), samsung_root_name(), SAMSUNG_ROOT_KEY);
        spec.serial = vec![0x01];
        spec.not_before = TimeValue::Utc("160101000000Z".into());
        spec.not_after = TimeValue::Generalized("20660101000000Z".into());
        spec.extensions = vec![
            Extension::basic_constraints(true),
            Extension::subject_key_id(&spec.spki),
        ];
        spec.encode()
    }

    /// Certificate exercising UTF8String values and an attribute type
    /// without a short name.
    pub fn utf8_unknown_attribute() -> Vec<u8> {
        let subject = vec![
            NameEntry::utf8("CN", "Trustlet Signer \u{00e9}"),
            NameEntry::utf8("1.3.6.1.4.1.99999.7", "vendor-specific"),
            NameEntry::utf8("OU", "CDMA Technologies"),
        ];
        let issuer = vec![NameEntry::utf8("CN", "Example Issuing CA")];
        let mut spec = CertificateSpec::new(subject, issuer, "utf8-signer");
        spec.serial = vec![0x7F, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF, 0xFF];
        spec.not_before = TimeValue::Utc("491231235959Z".into());
        spec.not_after = TimeValue::Generalized("20491231235959Z".into());
        spec.encode()
    }

    fn image_with(prelude: &[u8; 24], leaf_offset: usize, chain: &[Vec<u8>], len: usize, seed: &str) -> Vec<u8> {
        let mut image = filler(len, seed);
        image[leaf_offset - prelude.len()..leaf_offset].copy_from_slice(prelude);
        let mut at = leaf_offset;
        for cert in chain {
            image[at..at + cert.len()].copy_from_slice(cert);
            at += cert.len();
        }
        image
    }

    /// A `tz` partition image: leaf, attestation CA and root back to back,
    /// with the leaf at 0x1348.
    pub fn nexus6_tz_image() -> Vec<u8> {
        nexus6_tz_image_with_leaf(nexus6_leaf())
    }

    pub fn nexus6_tz_image_with_leaf(leaf: Vec<u8>) -> Vec<u8> {
        image_with(
            &NEXUS6_PRELUDE,
            NEXUS6_LEAF_OFFSET,
            &[leaf, nexus6_attestation_ca(), nexus6_root()],
            0x4000,
            "nexus6-tz",
        )
    }

    /// A `tz.mbn` image with the leaf at 0x1308.
    pub fn samsung_tz_mbn() -> Vec<u8> {
        samsung_tz_mbn_with_leaf(samsung_leaf())
    }

    pub fn samsung_tz_mbn_with_leaf(leaf: Vec<u8>) -> Vec<u8> {
        image_with(
            &SAMSUNG_PRELUDE,
            SAMSUNG_LEAF_OFFSET,
            &[leaf, samsung_attestation_ca(), samsung_root()],
            0x4000,
            "samsung-tz-mbn",
        )
    }
}

/// Pseudo-random bytes standing in for code and data around certificates.
pub fn filler(len: usize, seed: &str) -> Vec<u8> {
    let mut out = vec![0u8; len];
    rng_for(&format!("filler:{seed}")).fill_bytes(&mut out);
    out
}

/// A random image with certificates and decoy pattern hits at known places.
#[derive(Debug, Clone)]
pub struct PlantedCorpus {
    pub image: Vec<u8>,
    /// (offset, length) of each planted certificate, ascending.
    pub certificates: Vec<(usize, usize)>,
    /// Offsets of decoys: `30 82 ?? ?? 30 82` followed by junk.
    pub decoys: Vec<usize>,
}

const WORDS: &[&str] = &[
    "Platform",
    "Signing",
    "Attestation",
    "Root",
    "Trustlet",
    "Secure",
    "Modem",
    "Keymaster",
    "Widevine",
    "Boot",
    "Vendor",
    "Image",
    "Test",
    "Production",
    "Debug",
];

fn random_words(rng: &mut ChaCha20Rng, n: usize) -> String {
    (0..n)
        .map(|_| WORDS[rng.gen_range(0..WORDS.len())])
        .collect::<Vec<_>>()
        .join(" ")
}

/// A random but well-formed certificate; roughly 0.8-1.3 KiB.
pub fn random_certificate(rng: &mut ChaCha20Rng) -> Vec<u8> {
    let label = format!("random-{}", rng.next_u64());
    let mut subject = vec![
        NameEntry::printable("C", ["US", "KR", "CN", "DE"][rng.gen_range(0..4)]),
        NameEntry::printable("CN", &random_words(rng, 3)),
        NameEntry::printable("O", &random_words(rng, 1)),
    ];
    for _ in 0..rng.gen_range(0..5) {
        let tag_code = rng.gen_range(1..8);
        let value = format!("{:016X}", rng.next_u64());
        subject.push(NameEntry::t61("OU", &format!("{tag_code:02} {value} SW_ID")));
    }
    let issuer = vec![
        NameEntry::printable("C", "US"),
        NameEntry::utf8("CN", &random_words(rng, 2)),
    ];
    let mut spec = CertificateSpec::new(subject, issuer, &label);
    if rng.gen_bool(0.2) {
        spec.version = None;
    }
    let mut serial = vec![0u8; rng.gen_range(1..=16)];
    rng.fill_bytes(&mut serial);
    serial[0] &= 0x7F;
    if serial.len() > 1 && serial[0] == 0 {
        serial[0] = 1;
    }
    spec.serial = serial;
    if spec.version.is_some() {
        spec.extensions = vec![
            Extension::basic_constraints(rng.gen_bool(0.3)),
            Extension::subject_key_id(&spec.spki),
        ];
    }
    spec.encode()
}

/// Fills `len` random bytes and plants `n_certs` random certificates and
/// `n_decoys` decoys at non-overlapping positions.
pub fn planted_corpus(seed: u64, len: usize, n_certs: usize, n_decoys: usize) -> PlantedCorpus {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut image = vec![0u8; len];
    rng.fill_bytes(&mut image);

    let mut taken: Vec<(usize, usize)> = Vec::new();
    let mut place = |rng: &mut ChaCha20Rng, size: usize| -> usize {
        loop {
            let at = rng.gen_range(0..len - size);
            // keep a small gap so planted items never abut each other
            if taken.iter().all(|&(o, l)| at + size + 8 <= o || o + l + 8 <= at) {
                taken.push((at, size));
                return at;
            }
        }
    };

    let mut certificates = Vec::new();
    for _ in 0..n_certs {
        let cert = random_certificate(&mut rng);
        let at = place(&mut rng, cert.len());
        image[at..at + cert.len()].copy_from_slice(&cert);
        certificates.push((at, cert.len()));
    }

    let mut decoys = Vec::new();
    for _ in 0..n_decoys {
        let declared: usize = rng.gen_range(0x100..0x800);
        let at = place(&mut rng, declared + 4);
        image[at] = 0x30;
        image[at + 1] = 0x82;
        image[at + 2..at + 4].copy_from_slice(&(declared as u16).to_be_bytes());
        image[at + 4] = 0x30;
        image[at + 5] = 0x82;
        // an inner length that runs past the outer element guarantees a parse failure
        image[at + 6..at + 8].copy_from_slice(&((declared + 0x10) as u16).to_be_bytes());
        decoys.push(at);
    }

    certificates.sort_unstable();
    decoys.sort_unstable();
    PlantedCorpus {
        image,
        certificates,
        decoys,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::der_x509::parse_tlv;

    #[test]
    fn der_lengths_are_minimal() {
        assert_eq!(der_tlv(0x04, &[0; 3])[..2], [0x04, 0x03]);
        assert_eq!(der_tlv(0x04, &[0; 0x80])[..3], [0x04, 0x81, 0x80]);
        assert_eq!(der_tlv(0x04, &[0; 0x100])[..4], [0x04, 0x82, 0x01, 0x00]);
    }

    #[test]
    fn reference_layout_lengths() {
        let leaf = fixtures::nexus6_leaf();
        assert_eq!(leaf.len(), 1224);
        assert_eq!(&leaf[..8], &[0x30, 0x82, 0x04, 0xC4, 0x30, 0x82, 0x03, 0xAC]);
        let leaf = fixtures::samsung_leaf();
        assert_eq!(leaf.len(), 1257);
        assert_eq!(&leaf[..8], &[0x30, 0x82, 0x04, 0xE5, 0x30, 0x82, 0x03, 0xCD]);
    }

    #[test]
    fn corpus_is_deterministic() {
        let a = planted_corpus(7, 1 << 16, 5, 2);
        let b = planted_corpus(7, 1 << 16, 5, 2);
        assert_eq!(a.image, b.image);
        assert_eq!(a.certificates, b.certificates);
        for &(o, l) in &a.certificates {
            assert_eq!(parse_tlv(&a.image, o).unwrap().total_len(), l);
        }
    }
}
