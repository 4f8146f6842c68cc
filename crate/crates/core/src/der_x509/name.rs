// Licensed under the Apache-2.0 license

use std::fmt;

use serde::{Deserialize, Serialize};

use super::oid;
use super::tlv::{tag, DerReader, TlvNode};
use super::DerError;

/// One attribute of a distinguished name, exactly as encoded.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Attribute {
    pub oid: String,
    pub value: String,
    pub string_tag: u8,
}

impl Attribute {
    pub fn label(&self) -> &str {
        oid::short_name(&self.oid).unwrap_or(&self.oid)
    }
}

/// Ordered attribute list of an X.509 Name. Multi-valued RDN sets are
/// flattened in encoding order. Equality is exact and order-sensitive.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DistinguishedName {
    pub rdns: Vec<Attribute>,
}

impl DistinguishedName {
    pub fn get(&self, oid: &str) -> Option<&str> {
        self.rdns.iter().find(|a| a.oid == oid).map(|a| a.value.as_str())
    }

    pub fn all<'a>(&'a self, oid: &'a str) -> impl Iterator<Item = &'a str> + 'a {
        self.rdns.iter().filter(move |a| a.oid == oid).map(|a| a.value.as_str())
    }

    pub fn common_name(&self) -> Option<&str> {
        self.get(oid::COMMON_NAME)
    }

    pub fn organization(&self) -> Option<&str> {
        self.get(oid::ORGANIZATION)
    }

    pub fn is_empty(&self) -> bool {
        self.rdns.is_empty()
    }

    pub(crate) fn parse(reader: &DerReader<'_>, node: &TlvNode) -> Result<Self, DerError> {
        let mut rdns = Vec::new();
        let mut sets = DerReader::children(reader.buffer(), node);
        while !sets.is_empty() {
            let set = sets.expect(tag::SET, "RelativeDistinguishedName SET")?;
            let mut members = DerReader::children(reader.buffer(), &set);
            if members.is_empty() {
                return Err(DerError::Malformed {
                    offset: set.offset,
                    reason: "empty RDN set".into(),
                });
            }
            while !members.is_empty() {
                let atv = members.expect(tag::SEQUENCE, "AttributeTypeAndValue")?;
                let mut fields = DerReader::children(reader.buffer(), &atv);
                let oid_node = fields.expect(tag::OID, "attribute type")?;
                let oid = oid::decode(fields.value(&oid_node), oid_node.offset)?;
                let value_node = fields.next()?;
                if !fields.is_empty() {
                    return Err(DerError::Malformed {
                        offset: atv.offset,
                        reason: "trailing data in AttributeTypeAndValue".into(),
                    });
                }
                let value = decode_string(value_node.tag, fields.value(&value_node), value_node.offset)?;
                rdns.push(Attribute {
                    oid,
                    value,
                    string_tag: value_node.tag,
                });
            }
        }
        Ok(Self { rdns })
    }
}

impl fmt::Display for DistinguishedName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, attr) in self.rdns.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}=", attr.label())?;
            for c in attr.value.chars() {
                if matches!(c, ',' | '=' | '\\') {
                    f.write_str("\\")?;
                }
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

/// Decodes a directory string value. Only the string types found in
/// firmware signing certificates are accepted.
pub(crate) fn decode_string(string_tag: u8, content: &[u8], offset: usize) -> Result<String, DerError> {
    match string_tag {
        tag::UTF8_STRING => String::from_utf8(content.to_vec()).map_err(|_| DerError::Malformed {
            offset,
            reason: "invalid UTF8String".into(),
        }),
        tag::PRINTABLE_STRING | tag::IA5_STRING => {
            if content.is_ascii() {
                Ok(content.iter().map(|&b| b as char).collect())
            } else {
                Err(DerError::Malformed {
                    offset,
                    reason: "non-ASCII octet in ASCII string".into(),
                })
            }
        }
        // Latin-1 is the usual practical reading of TeletexString.
        tag::T61_STRING => Ok(content.iter().map(|&b| b as char).collect()),
        other => Err(DerError::UnsupportedStringTag { offset, tag: other }),
    }
}
