// Licensed under the Apache-2.0 license

use std::ops::Range;

use super::DerError;

/// Tag/length/value geometry of one DER element inside a larger buffer.
///
/// Offsets are absolute positions in the buffer handed to [`parse_tlv`], so a
/// node can be sliced back out of the original image without copying.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TlvNode {
    pub tag: u8,
    pub constructed: bool,
    pub offset: usize,
    pub header_len: usize,
    pub value_len: usize,
}

impl TlvNode {
    pub fn value_start(&self) -> usize {
        self.offset + self.header_len
    }

    pub fn value_range(&self) -> Range<usize> {
        self.value_start()..self.end()
    }

    /// One past the last byte of the element.
    pub fn end(&self) -> usize {
        self.value_start() + self.value_len
    }

    pub fn total_len(&self) -> usize {
        self.header_len + self.value_len
    }

    pub fn range(&self) -> Range<usize> {
        self.offset..self.end()
    }
}

pub mod tag {
    pub const BOOLEAN: u8 = 0x01;
    pub const INTEGER: u8 = 0x02;
    pub const BIT_STRING: u8 = 0x03;
    pub const OCTET_STRING: u8 = 0x04;
    pub const NULL: u8 = 0x05;
    pub const OID: u8 = 0x06;
    pub const UTF8_STRING: u8 = 0x0C;
    pub const PRINTABLE_STRING: u8 = 0x13;
    pub const T61_STRING: u8 = 0x14;
    pub const IA5_STRING: u8 = 0x16;
    pub const UTC_TIME: u8 = 0x17;
    pub const GENERALIZED_TIME: u8 = 0x18;
    pub const SEQUENCE: u8 = 0x30;
    pub const SET: u8 = 0x31;
}

const CONSTRUCTED_BIT: u8 = 0x20;
const HIGH_TAG_NUMBER: u8 = 0x1F;

/// Decodes the DER header at `offset` and checks that the declared value fits
/// inside `buffer`.
///
/// Only definite-length, minimally encoded lengths are accepted. The function
/// never reads past the end of `buffer`.
pub fn parse_tlv(buffer: &[u8], offset: usize) -> Result<TlvNode, DerError> {
    let tag = *buffer.get(offset).ok_or(DerError::Truncated { offset })?;
    if tag & HIGH_TAG_NUMBER == HIGH_TAG_NUMBER {
        return Err(DerError::UnsupportedTag { offset, tag });
    }
    let first = *buffer.get(offset + 1).ok_or(DerError::Truncated { offset })?;

    let (header_len, value_len) = match first {
        0x00..=0x7F => (2, first as usize),
        0x80 => return Err(DerError::IndefiniteLength { offset }),
        0xFF => return Err(DerError::ReservedLengthForm { offset }),
        _ => {
            let count = (first & 0x7F) as usize;
            if count > 4 {
                return Err(DerError::OverlongLength { offset, octets: count });
            }
            let bytes = buffer
                .get(offset + 2..offset + 2 + count)
                .ok_or(DerError::Truncated { offset })?;
            let value_len = bytes.iter().fold(0usize, |acc, &b| (acc << 8) | b as usize);
            // DER: long form only when needed, and without leading zero octets.
            if bytes[0] == 0 || value_len < 0x80 {
                return Err(DerError::NonMinimalLength { offset });
            }
            (2 + count, value_len)
        }
    };

    let node = TlvNode {
        tag,
        constructed: tag & CONSTRUCTED_BIT != 0,
        offset,
        header_len,
        value_len,
    };
    if node.end() > buffer.len() {
        return Err(DerError::Truncated { offset });
    }
    Ok(node)
}

/// Sequential reader over the children of a constructed element.
#[derive(Debug, Clone)]
pub(crate) struct DerReader<'a> {
    buf: &'a [u8],
    pos: usize,
    end: usize,
}

impl<'a> DerReader<'a> {
    pub(crate) fn new(buf: &'a [u8]) -> Self {
        Self {
            buf,
            pos: 0,
            end: buf.len(),
        }
    }

    pub(crate) fn children(buf: &'a [u8], node: &TlvNode) -> Self {
        Self {
            buf,
            pos: node.value_start(),
            end: node.end(),
        }
    }

    pub(crate) fn buffer(&self) -> &'a [u8] {
        self.buf
    }

    pub(crate) fn is_empty(&self) -> bool {
        self.pos >= self.end
    }

    pub(crate) fn peek_tag(&self) -> Option<u8> {
        if self.is_empty() {
            None
        } else {
            self.buf.get(self.pos).copied()
        }
    }

    pub(crate) fn next(&mut self) -> Result<TlvNode, DerError> {
        if self.is_empty() {
            return Err(DerError::Truncated { offset: self.pos });
        }
        let node = parse_tlv(&self.buf[..self.end], self.pos)?;
        self.pos = node.end();
        Ok(node)
    }

    pub(crate) fn expect(&mut self, expected: u8, what: &'static str) -> Result<TlvNode, DerError> {
        let node = self.next()?;
        if node.tag != expected {
            return Err(DerError::Malformed {
                offset: node.offset,
                reason: format!("expected {what} (tag 0x{expected:02X}), found tag 0x{:02X}", node.tag),
            });
        }
        Ok(node)
    }

    pub(crate) fn value(&self, node: &TlvNode) -> &'a [u8] {
        &self.buf[node.value_range()]
    }

    pub(crate) fn raw(&self, node: &TlvNode) -> &'a [u8] {
        &self.buf[node.range()]
    }
}
