// Licensed under the Apache-2.0 license

use std::fmt;

use serde::{Deserialize, Serialize};

/// Known Qualcomm-style OU metadata names.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OuFieldName {
    SwId,
    HwId,
    OemId,
    SwSize,
    ModelId,
    Sha256,
    Debug,
    /// Either a `<tag> <hex> <NAME>` triple with an unrecognized NAME (the
    /// NAME is carried here), or free text that does not follow the
    /// convention (the whole text is carried here).
    Other(String),
}

impl OuFieldName {
    fn from_token(token: &str) -> Self {
        match token {
            "SW_ID" => Self::SwId,
            "HW_ID" => Self::HwId,
            "OEM_ID" => Self::OemId,
            "SW_SIZE" => Self::SwSize,
            "MODEL_ID" => Self::ModelId,
            "SHA256" => Self::Sha256,
            "DEBUG" => Self::Debug,
            other => Self::Other(other.to_string()),
        }
    }

    pub fn as_token(&self) -> &str {
        match self {
            Self::SwId => "SW_ID",
            Self::HwId => "HW_ID",
            Self::OemId => "OEM_ID",
            Self::SwSize => "SW_SIZE",
            Self::ModelId => "MODEL_ID",
            Self::Sha256 => "SHA256",
            Self::Debug => "DEBUG",
            Self::Other(s) => s,
        }
    }

    pub fn is_other(&self) -> bool {
        matches!(self, Self::Other(_))
    }
}

impl fmt::Display for OuFieldName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_token())
    }
}

/// A decoded organizational-unit value such as `01 0000000200000007 SW_ID`.
///
/// `tag_code` and `value_hex` are empty when the text does not follow the
/// `<2 hex digits> <hex digits> <NAME>` layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OuAttributeField {
    pub tag_code: String,
    pub value_hex: String,
    pub field_name: OuFieldName,
    pub raw_text: String,
}

impl OuAttributeField {
    /// True when the text matched the `<tag> <hex> <NAME>` layout.
    pub fn is_structured(&self) -> bool {
        !self.tag_code.is_empty()
    }

    pub fn render(&self) -> String {
        if self.is_structured() {
            format!("{} {} {}", self.tag_code, self.value_hex, self.field_name)
        } else {
            self.raw_text.clone()
        }
    }

    /// Value as an unsigned integer, when it fits in 64 bits.
    pub fn value_u64(&self) -> Option<u64> {
        if !self.is_structured() || self.value_hex.len() > 16 {
            return None;
        }
        u64::from_str_radix(&self.value_hex, 16).ok()
    }
}

fn is_upper_hex(s: &str) -> bool {
    !s.is_empty() && s.bytes().all(|b| matches!(b, b'0'..=b'9' | b'A'..=b'F'))
}

fn is_name_token(s: &str) -> bool {
    let mut bytes = s.bytes();
    matches!(bytes.next(), Some(b'A'..=b'Z')) && bytes.all(|b| matches!(b, b'A'..=b'Z' | b'0'..=b'9' | b'_'))
}

/// Parses an OU value. Never fails; text outside the convention comes back
/// as [`OuFieldName::Other`] with the original text preserved.
pub fn parse_ou_field(ou_text: &str) -> OuAttributeField {
    let parts: Vec<&str> = ou_text.split(' ').collect();
    if let [tag_code, value_hex, name] = parts.as_slice() {
        if tag_code.len() == 2 && is_upper_hex(tag_code) && is_upper_hex(value_hex) && is_name_token(name) {
            return OuAttributeField {
                tag_code: tag_code.to_string(),
                value_hex: value_hex.to_string(),
                field_name: OuFieldName::from_token(name),
                raw_text: ou_text.to_string(),
            };
        }
    }
    OuAttributeField {
        tag_code: String::new(),
        value_hex: String::new(),
        field_name: OuFieldName::Other(ou_text.to_string()),
        raw_text: ou_text.to_string(),
    }
}
