// Licensed under the Apache-2.0 license

//! Minimal DER decoding and X.509 certificate parsing.
//!
//! Only what is needed to identify firmware signing certificates is decoded:
//! names, validity, serial, the SubjectPublicKeyInfo, and the OU metadata
//! strings Qualcomm-style signing tools embed in the subject. Signatures are
//! carried as opaque bytes.

mod certificate;
mod name;
pub mod oid;
mod ou;
mod pem;
mod tlv;

pub use certificate::{key_fingerprint, parse_certificate, parse_certificate_at, KeyFingerprint, ParsedCertificate};
pub use name::{Attribute, DistinguishedName};
pub use ou::{parse_ou_field, OuAttributeField, OuFieldName};
pub use pem::{from_pem, to_pem};
pub use tlv::{parse_tlv, tag, TlvNode};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DerError {
    #[error("truncated element at offset {offset}")]
    Truncated { offset: usize },
    #[error("indefinite length at offset {offset} is not DER")]
    IndefiniteLength { offset: usize },
    #[error("reserved length octet 0xFF at offset {offset}")]
    ReservedLengthForm { offset: usize },
    #[error("length at offset {offset} uses {octets} octets (max 4)")]
    OverlongLength { offset: usize, octets: usize },
    #[error("non-minimal length encoding at offset {offset}")]
    NonMinimalLength { offset: usize },
    #[error("unsupported tag 0x{tag:02X} at offset {offset}")]
    UnsupportedTag { offset: usize, tag: u8 },
    #[error("unsupported string type 0x{tag:02X} at offset {offset}")]
    UnsupportedStringTag { offset: usize, tag: u8 },
    #[error("invalid time value at offset {offset}")]
    BadTime { offset: usize },
    #[error("malformed certificate at offset {offset}: {reason}")]
    Malformed { offset: usize, reason: String },
}

impl DerError {
    /// True for errors that mean the input ended early rather than being
    /// structurally wrong.
    pub fn is_truncation(&self) -> bool {
        matches!(self, Self::Truncated { .. })
    }
}
