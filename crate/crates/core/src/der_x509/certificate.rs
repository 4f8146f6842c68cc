// Licensed under the Apache-2.0 license

use std::fmt;

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;
use chrono::{DateTime, NaiveDate, Utc};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::name::DistinguishedName;
use super::ou::{parse_ou_field, OuAttributeField};
use super::tlv::{parse_tlv, tag, DerReader, TlvNode};
use super::{oid, DerError};

/// SHA-256 over the DER encoding of a SubjectPublicKeyInfo.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct KeyFingerprint(pub [u8; 32]);

impl KeyFingerprint {
    pub fn of_spki(spki_der: &[u8]) -> Self {
        Self(Sha256::digest(spki_der).into())
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }

    /// First eight hex digits, for compact listings.
    pub fn short(&self) -> String {
        hex::encode(&self.0[..4])
    }

    pub fn from_hex(text: &str) -> Option<Self> {
        let mut out = [0u8; 32];
        hex::decode_to_slice(text, &mut out).ok()?;
        Some(Self(out))
    }
}

impl fmt::Debug for KeyFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "KeyFingerprint({})", self.to_hex())
    }
}

impl fmt::Display for KeyFingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for KeyFingerprint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for KeyFingerprint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Self::from_hex(&text).ok_or_else(|| serde::de::Error::custom("expected 64 hex digits"))
    }
}

/// A decoded X.509 (v1 or v3) certificate together with where it was found.
///
/// The signature algorithm and signature value are kept as opaque bytes; they
/// are never checked.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedCertificate {
    pub version: u8,
    pub serial_hex: String,
    pub tbs_signature_algorithm: String,
    pub subject: DistinguishedName,
    pub issuer: DistinguishedName,
    pub not_before: DateTime<Utc>,
    pub not_after: DateTime<Utc>,
    pub spki_der: Vec<u8>,
    pub public_key_algorithm: String,
    pub key_fingerprint: KeyFingerprint,
    pub ou_fields: Vec<OuAttributeField>,
    pub extension_oids: Vec<String>,
    pub signature_algorithm_der: Vec<u8>,
    pub signature_value: Vec<u8>,
    pub source_offset: usize,
    pub total_len: usize,
    pub raw_der: Vec<u8>,
}

impl ParsedCertificate {
    pub fn is_self_issued(&self) -> bool {
        self.subject == self.issuer
    }

    pub fn source_range(&self) -> std::ops::Range<usize> {
        self.source_offset..self.source_offset + self.total_len
    }

    pub fn ou_field(&self, name: &super::OuFieldName) -> Option<&OuAttributeField> {
        self.ou_fields.iter().find(|f| &f.field_name == name)
    }
}

/// Parses the certificate at the start of `der`. Bytes after the outer
/// SEQUENCE's declared length are ignored.
pub fn parse_certificate(der: &[u8]) -> Result<ParsedCertificate, DerError> {
    parse_certificate_at(der, 0)
}

/// Same as [`parse_certificate`], recording `source_offset` as the position of
/// `der` inside the image it was carved from.
pub fn parse_certificate_at(der: &[u8], source_offset: usize) -> Result<ParsedCertificate, DerError> {
    let outer = parse_tlv(der, 0)?;
    if outer.tag != tag::SEQUENCE {
        return Err(malformed(0, "certificate does not start with a SEQUENCE"));
    }
    let der = &der[..outer.end()];
    let top = DerReader::new(der);
    let mut parts = DerReader::children(der, &outer);

    let tbs = parts.expect(tag::SEQUENCE, "TBSCertificate")?;
    let sig_alg = parts.expect(tag::SEQUENCE, "signatureAlgorithm")?;
    let sig = parts.expect(tag::BIT_STRING, "signatureValue")?;
    if !parts.is_empty() {
        return Err(malformed(sig.end(), "trailing data inside Certificate"));
    }
    algorithm_oid(&top, &sig_alg)?;

    let mut fields = DerReader::children(der, &tbs);

    let version = if fields.peek_tag() == Some(0xA0) {
        let wrapper = fields.next()?;
        let mut inner = DerReader::children(der, &wrapper);
        let int = inner.expect(tag::INTEGER, "version")?;
        if !inner.is_empty() {
            return Err(malformed(wrapper.offset, "trailing data in version"));
        }
        match top.value(&int) {
            [v @ 0..=2] => v + 1,
            _ => return Err(malformed(int.offset, "unsupported certificate version")),
        }
    } else {
        1
    };

    let serial = fields.expect(tag::INTEGER, "serialNumber")?;
    if serial.value_len == 0 {
        return Err(malformed(serial.offset, "empty serial number"));
    }
    let tbs_alg = fields.expect(tag::SEQUENCE, "signature AlgorithmIdentifier")?;
    let tbs_signature_algorithm = algorithm_oid(&top, &tbs_alg)?;
    let issuer_node = fields.expect(tag::SEQUENCE, "issuer Name")?;
    let issuer = DistinguishedName::parse(&top, &issuer_node)?;

    let validity = fields.expect(tag::SEQUENCE, "validity")?;
    let mut times = DerReader::children(der, &validity);
    let not_before = parse_time(&top, &times.next()?)?;
    let not_after = parse_time(&top, &times.next()?)?;
    if !times.is_empty() {
        return Err(malformed(validity.offset, "trailing data in validity"));
    }

    let subject_node = fields.expect(tag::SEQUENCE, "subject Name")?;
    let subject = DistinguishedName::parse(&top, &subject_node)?;

    let spki = fields.expect(tag::SEQUENCE, "SubjectPublicKeyInfo")?;
    let mut spki_parts = DerReader::children(der, &spki);
    let key_alg = spki_parts.expect(tag::SEQUENCE, "SubjectPublicKeyInfo algorithm")?;
    let public_key_algorithm = algorithm_oid(&top, &key_alg)?;
    let key_bits = spki_parts.expect(tag::BIT_STRING, "subjectPublicKey")?;
    if key_bits.value_len == 0 || !spki_parts.is_empty() {
        return Err(malformed(spki.offset, "malformed SubjectPublicKeyInfo"));
    }

    let mut extension_oids = Vec::new();
    let mut last_context = 0u8;
    while !fields.is_empty() {
        let node = fields.next()?;
        match node.tag {
            t @ (0xA1 | 0xA2 | 0x81 | 0x82 | 0xA3) if (t & 0x03) > last_context => {
                last_context = t & 0x03;
                if t == 0xA3 {
                    extension_oids = parse_extensions(&top, &node)?;
                }
            }
            other => {
                return Err(malformed(
                    node.offset,
                    &format!("unexpected element 0x{other:02X} in TBSCertificate"),
                ))
            }
        }
    }

    let spki_der = top.raw(&spki).to_vec();
    let ou_fields = subject.all(oid::ORGANIZATIONAL_UNIT).map(parse_ou_field).collect();

    Ok(ParsedCertificate {
        version,
        serial_hex: hex::encode_upper(top.value(&serial)),
        tbs_signature_algorithm,
        subject,
        issuer,
        not_before,
        not_after,
        key_fingerprint: KeyFingerprint::of_spki(&spki_der),
        spki_der,
        public_key_algorithm,
        ou_fields,
        extension_oids,
        signature_algorithm_der: top.raw(&sig_alg).to_vec(),
        signature_value: top.value(&sig).to_vec(),
        source_offset,
        total_len: outer.total_len(),
        raw_der: der.to_vec(),
    })
}

/// SHA-256 over the certificate's SubjectPublicKeyInfo bytes.
pub fn key_fingerprint(cert: &ParsedCertificate) -> KeyFingerprint {
    KeyFingerprint::of_spki(&cert.spki_der)
}

fn malformed(offset: usize, reason: &str) -> DerError {
    DerError::Malformed {
        offset,
        reason: reason.to_string(),
    }
}

fn algorithm_oid(top: &DerReader<'_>, node: &TlvNode) -> Result<String, DerError> {
    let mut parts = DerReader::children(top.buffer(), node);
    let oid_node = parts.expect(tag::OID, "algorithm OID")?;
    let oid = oid::decode(top.value(&oid_node), oid_node.offset)?;
    // parameters are optional and opaque
    if !parts.is_empty() {
        parts.next()?;
    }
    if !parts.is_empty() {
        return Err(malformed(node.offset, "trailing data in AlgorithmIdentifier"));
    }
    Ok(oid)
}

fn parse_extensions(top: &DerReader<'_>, wrapper: &TlvNode) -> Result<Vec<String>, DerError> {
    let buf = top.buffer();
    let mut outer = DerReader::children(buf, wrapper);
    let list = outer.expect(tag::SEQUENCE, "Extensions")?;
    if !outer.is_empty() {
        return Err(malformed(wrapper.offset, "trailing data after Extensions"));
    }
    let mut oids = Vec::new();
    let mut items = DerReader::children(buf, &list);
    while !items.is_empty() {
        let ext = items.expect(tag::SEQUENCE, "Extension")?;
        let mut parts = DerReader::children(buf, &ext);
        let oid_node = parts.expect(tag::OID, "extnID")?;
        oids.push(oid::decode(top.value(&oid_node), oid_node.offset)?);
        if parts.peek_tag() == Some(tag::BOOLEAN) {
            parts.next()?;
        }
        parts.expect(tag::OCTET_STRING, "extnValue")?;
        if !parts.is_empty() {
            return Err(malformed(ext.offset, "trailing data in Extension"));
        }
    }
    Ok(oids)
}

fn parse_time(top: &DerReader<'_>, node: &TlvNode) -> Result<DateTime<Utc>, DerError> {
    let text = top.value(node);
    let bad = || DerError::BadTime { offset: node.offset };
    let digits = |range: std::ops::Range<usize>| -> Result<u32, DerError> {
        let part = text.get(range).ok_or_else(bad)?;
        if !part.iter().all(u8::is_ascii_digit) {
            return Err(bad());
        }
        Ok(part.iter().fold(0u32, |acc, &b| acc * 10 + (b - b'0') as u32))
    };
    let (year, rest) = match node.tag {
        tag::UTC_TIME if text.len() == 13 => {
            let yy = digits(0..2)?;
            (if yy >= 50 { 1900 + yy } else { 2000 + yy }, 2)
        }
        tag::GENERALIZED_TIME if text.len() == 15 => (digits(0..4)?, 4),
        tag::UTC_TIME | tag::GENERALIZED_TIME => return Err(bad()),
        other => {
            return Err(malformed(
                node.offset,
                &format!("expected a time, found tag 0x{other:02X}"),
            ))
        }
    };
    if text[text.len() - 1] != b'Z' {
        return Err(bad());
    }
    let month = digits(rest..rest + 2)?;
    let day = digits(rest + 2..rest + 4)?;
    let hour = digits(rest + 4..rest + 6)?;
    let minute = digits(rest + 6..rest + 8)?;
    let second = digits(rest + 8..rest + 10)?;
    NaiveDate::from_ymd_opt(year as i32, month, day)
        .and_then(|d| d.and_hms_opt(hour, minute, second))
        .map(|dt| dt.and_utc())
        .ok_or_else(bad)
}

/// Catalog/report form of a certificate: a readable summary plus the DER.
/// Only `source_offset` and `der` are authoritative on load; the certificate
/// is re-parsed and the stored fingerprint is checked against it.
#[derive(Serialize, Deserialize)]
struct StoredCertificate {
    source_offset: usize,
    total_len: usize,
    version: u8,
    serial: String,
    subject: String,
    issuer: String,
    not_before: DateTime<Utc>,
    not_after: DateTime<Utc>,
    key_fingerprint: KeyFingerprint,
    ou: Vec<String>,
    der: String,
}

impl Serialize for ParsedCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        StoredCertificate {
            source_offset: self.source_offset,
            total_len: self.total_len,
            version: self.version,
            serial: self.serial_hex.clone(),
            subject: self.subject.to_string(),
            issuer: self.issuer.to_string(),
            not_before: self.not_before,
            not_after: self.not_after,
            key_fingerprint: self.key_fingerprint,
            ou: self.ou_fields.iter().map(|f| f.raw_text.clone()).collect(),
            der: BASE64.encode(&self.raw_der),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ParsedCertificate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let stored = StoredCertificate::deserialize(d)?;
        let der = BASE64.decode(stored.der.as_bytes()).map_err(D::Error::custom)?;
        let cert = parse_certificate_at(&der, stored.source_offset).map_err(D::Error::custom)?;
        if cert.key_fingerprint != stored.key_fingerprint {
            return Err(D::Error::custom("stored key fingerprint does not match certificate"));
        }
        Ok(cert)
    }
}
