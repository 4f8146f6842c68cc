// Licensed under the Apache-2.0 license

use super::DerError;

pub const COMMON_NAME: &str = "2.5.4.3";
pub const SERIAL_NUMBER: &str = "2.5.4.5";
pub const COUNTRY: &str = "2.5.4.6";
pub const LOCALITY: &str = "2.5.4.7";
pub const STATE: &str = "2.5.4.8";
pub const ORGANIZATION: &str = "2.5.4.10";
pub const ORGANIZATIONAL_UNIT: &str = "2.5.4.11";
pub const EMAIL_ADDRESS: &str = "1.2.840.113549.1.9.1";

pub const RSA_ENCRYPTION: &str = "1.2.840.113549.1.1.1";
pub const SHA256_WITH_RSA: &str = "1.2.840.113549.1.1.11";

/// Short attribute labels used when rendering names, in the style of
/// `openssl x509 -text`.
pub fn short_name(oid: &str) -> Option<&'static str> {
    Some(match oid {
        COMMON_NAME => "CN",
        SERIAL_NUMBER => "serialNumber",
        COUNTRY => "C",
        LOCALITY => "L",
        STATE => "ST",
        ORGANIZATION => "O",
        ORGANIZATIONAL_UNIT => "OU",
        EMAIL_ADDRESS => "emailAddress",
        _ => return None,
    })
}

pub fn from_short_name(label: &str) -> Option<&'static str> {
    Some(match label {
        "CN" => COMMON_NAME,
        "serialNumber" => SERIAL_NUMBER,
        "C" => COUNTRY,
        "L" => LOCALITY,
        "ST" => STATE,
        "O" => ORGANIZATION,
        "OU" => ORGANIZATIONAL_UNIT,
        "emailAddress" => EMAIL_ADDRESS,
        _ => return None,
    })
}

/// Decodes the content octets of an OBJECT IDENTIFIER into dotted-decimal form.
pub fn decode(content: &[u8], offset: usize) -> Result<String, DerError> {
    let malformed = |reason: &str| DerError::Malformed {
        offset,
        reason: format!("bad OID: {reason}"),
    };
    if content.is_empty() {
        return Err(malformed("empty"));
    }
    if content.last().is_some_and(|b| b & 0x80 != 0) {
        return Err(malformed("unterminated arc"));
    }

    let mut arcs: Vec<u128> = Vec::new();
    let mut acc: u128 = 0;
    let mut fresh = true;
    for &b in content {
        if fresh && b == 0x80 {
            return Err(malformed("non-minimal arc"));
        }
        acc = acc
            .checked_mul(128)
            .and_then(|v| v.checked_add((b & 0x7F) as u128))
            .ok_or_else(|| malformed("arc overflow"))?;
        fresh = b & 0x80 == 0;
        if fresh {
            arcs.push(acc);
            acc = 0;
        }
    }

    let first = arcs[0];
    let (a, b) = match first {
        0..=39 => (0, first),
        40..=79 => (1, first - 40),
        _ => (2, first - 80),
    };
    let mut out = format!("{a}.{b}");
    for arc in &arcs[1..] {
        out.push('.');
        out.push_str(&arc.to_string());
    }
    Ok(out)
}

/// Encodes a dotted-decimal OID into its DER content octets.
pub fn encode(dotted: &str) -> Option<Vec<u8>> {
    let arcs: Vec<u128> = dotted.split('.').map(|s| s.parse().ok()).collect::<Option<_>>()?;
    if arcs.len() < 2 || arcs[0] > 2 || (arcs[0] < 2 && arcs[1] > 39) {
        return None;
    }
    let mut out = Vec::new();
    let head = arcs[0] * 40 + arcs[1];
    for arc in std::iter::once(head).chain(arcs[2..].iter().copied()) {
        let mut chunk = vec![(arc & 0x7F) as u8];
        let mut rest = arc >> 7;
        while rest > 0 {
            chunk.push(((rest & 0x7F) as u8) | 0x80);
            rest >>= 7;
        }
        chunk.reverse();
        out.extend(chunk);
    }
    Some(out)
}
