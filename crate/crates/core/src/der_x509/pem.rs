// Licensed under the Apache-2.0 license

use base64::engine::general_purpose::STANDARD as BASE64;
use base64::Engine;

const BEGIN: &str = "-----BEGIN CERTIFICATE-----";
const END: &str = "-----END CERTIFICATE-----";

/// Wraps DER bytes in a PEM `CERTIFICATE` block with 64-column lines.
pub fn to_pem(der: &[u8]) -> String {
    let body = BASE64.encode(der);
    let mut out = String::with_capacity(body.len() + body.len() / 64 + 64);
    out.push_str(BEGIN);
    out.push('\n');
    for line in body.as_bytes().chunks(64) {
        // base64 output is ASCII
        out.push_str(std::str::from_utf8(line).unwrap());
        out.push('\n');
    }
    out.push_str(END);
    out.push('\n');
    out
}

/// Extracts every `CERTIFICATE` block from PEM text. Blocks whose body is not
/// valid base64 are skipped.
pub fn from_pem(text: &str) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut body: Option<String> = None;
    for line in text.lines().map(str::trim) {
        if line == BEGIN {
            body = Some(String::new());
        } else if line == END {
            if let Some(b) = body.take() {
                if let Ok(der) = BASE64.decode(b.as_bytes()) {
                    out.push(der);
                }
            }
        } else if let Some(b) = body.as_mut() {
            b.push_str(line);
        }
    }
    out
}
