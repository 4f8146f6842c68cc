#!/usr/bin/env python3
# Licensed under the Apache-2.0 license
"""Decode tests/fixtures/*.der with pyca/cryptography and write manifest.json."""

import hashlib
import json
import pathlib
import sys

from cryptography import x509
from cryptography.hazmat.primitives import serialization

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def serial_hex(n: int) -> str:
    # minimal two's complement, as stored in the INTEGER
    length = max(1, (n.bit_length() + 8) // 8)
    raw = n.to_bytes(length, "big", signed=True)
    while len(raw) > 1 and raw[0] == 0 and raw[1] < 0x80:
        raw = raw[1:]
    return raw.hex().upper()


def name(n: x509.Name):
    return [[a.oid.dotted_string, a.value] for rdn in n.rdns for a in rdn]


def stamp(dt) -> str:
    return dt.strftime("%Y-%m-%dT%H:%M:%SZ")


def main() -> int:
    entries = []
    for der_path in sorted(FIXTURES.glob("*.der")):
        der = der_path.read_bytes()
        cert = x509.load_der_x509_certificate(der)
        pem_cert = x509.load_pem_x509_certificate(der_path.with_suffix(".pem").read_bytes())
        spki = cert.public_key().public_bytes(
            serialization.Encoding.DER, serialization.PublicFormat.SubjectPublicKeyInfo
        )
        entries.append(
            {
                "file": der_path.stem,
                "version": cert.version.value + 1,
                "serial_hex": serial_hex(cert.serial_number),
                "subject": name(cert.subject),
                "issuer": name(cert.issuer),
                "not_before": stamp(cert.not_valid_before_utc),
                "not_after": stamp(cert.not_valid_after_utc),
                "spki_sha256": hashlib.sha256(spki).hexdigest(),
                "pem_matches_der": pem_cert.public_bytes(serialization.Encoding.DER) == der,
            }
        )
    out = FIXTURES / "manifest.json"
    out.write_text(json.dumps(entries, indent=2, ensure_ascii=False) + "\n")
    print(f"wrote {len(entries)} entries to {out}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
