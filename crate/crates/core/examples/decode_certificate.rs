// Licensed under the Apache-2.0 license

//! Decode one DER or PEM certificate and show its Qualcomm OU metadata.
//!
//! ```text
//! cargo run --example decode_certificate -- cert.der
//! ```

use std::error::Error;

use tzaudit::der_x509::{from_pem, parse_certificate, parse_tlv, to_pem};
use tzaudit::synth::fixtures;

fn main() -> Result<(), Box<dyn Error>> {
    let der = match std::env::args().nth(1) {
        Some(path) => {
            let bytes = std::fs::read(&path)?;
            match std::str::from_utf8(&bytes).ok().map(from_pem) {
                Some(mut blocks) if !blocks.is_empty() => blocks.remove(0),
                _ => bytes,
            }
        }
        None => fixtures::samsung_leaf(),
    };

    let outer = parse_tlv(&der, 0)?;
    println!(
        "outer SEQUENCE: header {} bytes, content {} bytes",
        outer.header_len, outer.value_len
    );

    let cert = parse_certificate(&der)?;
    println!("version     v{}", cert.version);
    println!("serial      {}", cert.serial_hex);
    println!("subject     {}", cert.subject);
    println!("issuer      {}", cert.issuer);
    println!("valid       {} .. {}", cert.not_before, cert.not_after);
    println!("key         {} ({})", cert.key_fingerprint, cert.public_key_algorithm);
    for ou in &cert.ou_fields {
        match ou.value_u64() {
            Some(v) if ou.is_structured() => {
                println!(
                    "OU {:<10} tag {} value {} ({v:#x})",
                    ou.field_name.to_string(),
                    ou.tag_code,
                    ou.value_hex
                )
            }
            _ => println!("OU {}", ou.raw_text),
        }
    }
    print!("{}", to_pem(&cert.raw_der));
    Ok(())
}
