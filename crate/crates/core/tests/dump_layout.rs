// Licensed under the Apache-2.0 license

//! The synthetic `tz` / `tz.mbn` images must match the published hex dumps of
//! the real images wherever those dumps show bytes.

use tzaudit::synth::fixtures;

// Rows transcribed from the Nexus 6 `tz` dump (0x1330-0x14EF).
#[rustfmt::skip]
const NEXUS6_DUMP: &[(usize, [u8; 16])] = &[
    (0x1330, [0x65, 0x63, 0x78, 0xD2, 0x09, 0x40, 0x05, 0x5E, 0xBA, 0xB9, 0x56, 0x13, 0xC5, 0xBB, 0xFF, 0xC1]),
    (0x1340, [0x52, 0x2F, 0x86, 0x5F, 0xED, 0x10, 0x1A, 0x1D, 0x30, 0x82, 0x04, 0xC4, 0x30, 0x82, 0x03, 0xAC]),
    (0x1350, [0xA0, 0x03, 0x02, 0x01, 0x02, 0x02, 0x03, 0x00, 0x97, 0x66, 0x30, 0x0D, 0x06, 0x09, 0x2A, 0x86]),
    (0x1360, [0x48, 0x86, 0xF7, 0x0D, 0x01, 0x01, 0x0B, 0x05, 0x00, 0x30, 0x7C, 0x31, 0x0B, 0x30, 0x09, 0x06]),
    (0x1370, [0x03, 0x55, 0x04, 0x06, 0x13, 0x02, 0x55, 0x53, 0x31, 0x0B, 0x30, 0x09, 0x06, 0x03, 0x55, 0x04]),
    (0x1380, [0x08, 0x13, 0x02, 0x43, 0x41, 0x31, 0x12, 0x30, 0x10, 0x06, 0x03, 0x55, 0x04, 0x07, 0x13, 0x09]),
    (0x1390, [0x53, 0x61, 0x6E, 0x20, 0x44, 0x69, 0x65, 0x67, 0x6F, 0x31, 0x1A, 0x30, 0x18, 0x06, 0x03, 0x55]),
    (0x13A0, [0x04, 0x0B, 0x13, 0x11, 0x43, 0x44, 0x4D, 0x41, 0x20, 0x54, 0x65, 0x63, 0x68, 0x6E, 0x6F, 0x6C]),
    (0x13B0, [0x6F, 0x67, 0x69, 0x65, 0x73, 0x31, 0x0D, 0x30, 0x0B, 0x06, 0x03, 0x55, 0x04, 0x0A, 0x13, 0x04]),
    (0x13C0, [0x4E, 0x6F, 0x6E, 0x65, 0x31, 0x21, 0x30, 0x1F, 0x06, 0x03, 0x55, 0x04, 0x03, 0x13, 0x18, 0x47]),
    (0x13D0, [0x65, 0x6E, 0x65, 0x72, 0x61, 0x74, 0x65, 0x64, 0x20, 0x41, 0x74, 0x74, 0x65, 0x73, 0x74, 0x61]),
    (0x13E0, [0x74, 0x69, 0x6F, 0x6E, 0x20, 0x43, 0x41, 0x30, 0x1E, 0x17, 0x0D, 0x31, 0x37, 0x30, 0x32, 0x32]),
    (0x13F0, [0x32, 0x30, 0x39, 0x34, 0x32, 0x31, 0x35, 0x5A, 0x17, 0x0D, 0x33, 0x37, 0x30, 0x32, 0x31, 0x37]),
    (0x1400, [0x30, 0x39, 0x34, 0x32, 0x31, 0x35, 0x5A, 0x30, 0x82, 0x01, 0x51, 0x31, 0x0B, 0x30, 0x09, 0x06]),
    (0x1410, [0x03, 0x55, 0x04, 0x06, 0x13, 0x02, 0x55, 0x53, 0x31, 0x33, 0x30, 0x31, 0x06, 0x03, 0x55, 0x04]),
    (0x1420, [0x03, 0x13, 0x2A, 0x51, 0x75, 0x61, 0x6C, 0x63, 0x6F, 0x6D, 0x6D, 0x20, 0x50, 0x6C, 0x61, 0x74]),
    (0x1430, [0x66, 0x6F, 0x72, 0x6D, 0x20, 0x53, 0x69, 0x67, 0x6E, 0x69, 0x6E, 0x67, 0x20, 0x41, 0x70, 0x70]),
    (0x1440, [0x6C, 0x69, 0x63, 0x61, 0x74, 0x69, 0x6F, 0x6E, 0x20, 0x55, 0x73, 0x65, 0x72, 0x31, 0x12, 0x30]),
    (0x1450, [0x10, 0x06, 0x03, 0x55, 0x04, 0x07, 0x13, 0x09, 0x53, 0x61, 0x6E, 0x20, 0x44, 0x69, 0x65, 0x67]),
    (0x1460, [0x6F, 0x31, 0x0D, 0x30, 0x0B, 0x06, 0x03, 0x55, 0x04, 0x0A, 0x13, 0x04, 0x41, 0x53, 0x49, 0x43]),
    (0x1470, [0x31, 0x13, 0x30, 0x11, 0x06, 0x03, 0x55, 0x04, 0x08, 0x13, 0x0A, 0x43, 0x61, 0x6C, 0x69, 0x66]),
    (0x1480, [0x6F, 0x72, 0x6E, 0x69, 0x61, 0x31, 0x17, 0x30, 0x15, 0x06, 0x03, 0x55, 0x04, 0x0B, 0x14, 0x0E]),
    (0x1490, [0x30, 0x34, 0x20, 0x30, 0x30, 0x30, 0x30, 0x20, 0x4F, 0x45, 0x4D, 0x5F, 0x49, 0x44, 0x31, 0x1C]),
    (0x14A0, [0x30, 0x1A, 0x06, 0x03, 0x55, 0x04, 0x0B, 0x14, 0x13, 0x30, 0x35, 0x20, 0x30, 0x30, 0x30, 0x30]),
    (0x14B0, [0x30, 0x32, 0x34, 0x38, 0x20, 0x53, 0x57, 0x5F, 0x53, 0x49, 0x5A, 0x45, 0x31, 0x19, 0x30, 0x17]),
    (0x14C0, [0x06, 0x03, 0x55, 0x04, 0x0B, 0x14, 0x10, 0x30, 0x36, 0x20, 0x30, 0x30, 0x30, 0x30, 0x20, 0x4D]),
    (0x14D0, [0x4F, 0x44, 0x45, 0x4C, 0x5F, 0x49, 0x44, 0x31, 0x17, 0x30, 0x15, 0x06, 0x03, 0x55, 0x04, 0x0B]),
    (0x14E0, [0x13, 0x0E, 0x30, 0x37, 0x20, 0x30, 0x30, 0x30, 0x31, 0x20, 0x53, 0x48, 0x41, 0x32, 0x35, 0x36]),
];

// Rows transcribed from the Samsung S7 `tz.mbn` dump (0x12F0-0x14BF). The row
// at 0x1470 has seven `30` octets before the `32`; the OU string
// "01 0000000200000007 SW_ID" requires it.
#[rustfmt::skip]
const SAMSUNG_DUMP: &[(usize, [u8; 16])] = &[
    (0x12F0, [0xEE, 0x02, 0x95, 0x90, 0x3D, 0x8D, 0x16, 0x8D, 0x2B, 0x88, 0x85, 0xDC, 0x2A, 0x18, 0x14, 0xF6]),
    (0x1300, [0x42, 0xF5, 0x1B, 0x7C, 0xBF, 0xD4, 0xA5, 0x40, 0x30, 0x82, 0x04, 0xE5, 0x30, 0x82, 0x03, 0xCD]),
    (0x1310, [0xA0, 0x03, 0x02, 0x01, 0x02, 0x02, 0x01, 0x01, 0x30, 0x0D, 0x06, 0x09, 0x2A, 0x86, 0x48, 0x86]),
    (0x1320, [0xF7, 0x0D, 0x01, 0x01, 0x0B, 0x05, 0x00, 0x30, 0x81, 0xB0, 0x31, 0x0B, 0x30, 0x09, 0x06, 0x03]),
    (0x1330, [0x55, 0x04, 0x06, 0x13, 0x02, 0x4B, 0x52, 0x31, 0x14, 0x30, 0x12, 0x06, 0x03, 0x55, 0x04, 0x08]),
    (0x1340, [0x13, 0x0B, 0x53, 0x6F, 0x75, 0x74, 0x68, 0x20, 0x4B, 0x6F, 0x72, 0x65, 0x61, 0x31, 0x13, 0x30]),
    (0x1350, [0x11, 0x06, 0x03, 0x55, 0x04, 0x07, 0x13, 0x0A, 0x53, 0x75, 0x77, 0x6F, 0x6E, 0x20, 0x43, 0x69]),
    (0x1360, [0x74, 0x79, 0x31, 0x1C, 0x30, 0x1A, 0x06, 0x03, 0x55, 0x04, 0x0A, 0x13, 0x13, 0x53, 0x61, 0x6D]),
    (0x1370, [0x73, 0x75, 0x6E, 0x67, 0x20, 0x43, 0x6F, 0x72, 0x70, 0x6F, 0x72, 0x61, 0x74, 0x69, 0x6F, 0x6E]),
    (0x1380, [0x31, 0x0C, 0x30, 0x0A, 0x06, 0x03, 0x55, 0x04, 0x0B, 0x13, 0x03, 0x44, 0x4D, 0x43, 0x31, 0x23]),
    (0x1390, [0x30, 0x21, 0x06, 0x03, 0x55, 0x04, 0x03, 0x13, 0x1A, 0x53, 0x61, 0x6D, 0x73, 0x75, 0x6E, 0x67]),
    (0x13A0, [0x20, 0x41, 0x74, 0x74, 0x65, 0x73, 0x74, 0x61, 0x74, 0x69, 0x6F, 0x6E, 0x43, 0x41, 0x20, 0x63]),
    (0x13B0, [0x65, 0x72, 0x74, 0x31, 0x25, 0x30, 0x23, 0x06, 0x09, 0x2A, 0x86, 0x48, 0x86, 0xF7, 0x0D, 0x01]),
    (0x13C0, [0x09, 0x01, 0x16, 0x16, 0x6D, 0x2E, 0x73, 0x65, 0x63, 0x75, 0x72, 0x69, 0x74, 0x79, 0x40, 0x73]),
    (0x13D0, [0x61, 0x6D, 0x73, 0x75, 0x6E, 0x67, 0x2E, 0x63, 0x6F, 0x6D, 0x30, 0x1E, 0x17, 0x0D, 0x31, 0x37]),
    (0x13E0, [0x30, 0x34, 0x31, 0x31, 0x30, 0x39, 0x35, 0x38, 0x35, 0x31, 0x5A, 0x17, 0x0D, 0x33, 0x37, 0x30]),
    (0x13F0, [0x34, 0x30, 0x36, 0x30, 0x39, 0x35, 0x38, 0x35, 0x31, 0x5A, 0x30, 0x82, 0x01, 0x3D, 0x31, 0x0B]),
    (0x1400, [0x30, 0x09, 0x06, 0x03, 0x55, 0x04, 0x06, 0x13, 0x02, 0x55, 0x53, 0x31, 0x1B, 0x30, 0x19, 0x06]),
    (0x1410, [0x03, 0x55, 0x04, 0x03, 0x13, 0x12, 0x53, 0x65, 0x63, 0x54, 0x6F, 0x6F, 0x6C, 0x73, 0x20, 0x54]),
    (0x1420, [0x65, 0x73, 0x74, 0x20, 0x55, 0x73, 0x65, 0x72, 0x31, 0x12, 0x30, 0x10, 0x06, 0x03, 0x55, 0x04]),
    (0x1430, [0x07, 0x13, 0x09, 0x53, 0x61, 0x6E, 0x20, 0x44, 0x69, 0x65, 0x67, 0x6F, 0x31, 0x11, 0x30, 0x0F]),
    (0x1440, [0x06, 0x03, 0x55, 0x04, 0x0A, 0x13, 0x08, 0x53, 0x65, 0x63, 0x54, 0x6F, 0x6F, 0x6C, 0x73, 0x31]),
    (0x1450, [0x13, 0x30, 0x11, 0x06, 0x03, 0x55, 0x04, 0x08, 0x13, 0x0A, 0x43, 0x61, 0x6C, 0x69, 0x66, 0x6F]),
    (0x1460, [0x72, 0x6E, 0x69, 0x61, 0x31, 0x22, 0x30, 0x20, 0x06, 0x03, 0x55, 0x04, 0x0B, 0x14, 0x19, 0x30]),
    (0x1470, [0x31, 0x20, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30, 0x32, 0x30, 0x30, 0x30, 0x30, 0x30, 0x30]),
    (0x1480, [0x30, 0x37, 0x20, 0x53, 0x57, 0x5F, 0x49, 0x44, 0x31, 0x22, 0x30, 0x20, 0x06, 0x03, 0x55, 0x04]),
    (0x1490, [0x0B, 0x14, 0x19, 0x30, 0x32, 0x20, 0x30, 0x30, 0x39, 0x34, 0x37, 0x30, 0x45, 0x31, 0x30, 0x30]),
    (0x14A0, [0x32, 0x30, 0x30, 0x30, 0x30, 0x30, 0x20, 0x48, 0x57, 0x5F, 0x49, 0x44, 0x31, 0x17, 0x30, 0x15]),
    (0x14B0, [0x06, 0x03, 0x55, 0x04, 0x0B, 0x14, 0x0E, 0x30, 0x34, 0x20, 0x30, 0x30, 0x32, 0x30, 0x20, 0x4F]),
];

fn assert_matches_dump(image: &[u8], dump: &[(usize, [u8; 16])]) {
    for (addr, row) in dump {
        assert_eq!(&image[*addr..*addr + 16], row, "mismatch in row {addr:04X}h");
    }
}

#[test]
fn nexus6_image_matches_dump() {
    assert_matches_dump(&fixtures::nexus6_tz_image(), NEXUS6_DUMP);
}

#[test]
fn samsung_image_matches_dump() {
    assert_matches_dump(&fixtures::samsung_tz_mbn(), SAMSUNG_DUMP);
}

#[test]
fn third_sequence_header_is_the_subject_name() {
    let image = fixtures::nexus6_tz_image();
    let at = fixtures::NEXUS6_SUBJECT_OFFSET;
    assert_eq!(&image[at..at + 6], &[0x30, 0x82, 0x01, 0x51, 0x31, 0x0B]);
}
