// Licensed under the Apache-2.0 license

use std::fmt;

use serde::{Deserialize, Serialize};

/// How a vendor lays out trusted applications and TEE OS images on disk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VendorLayout {
    /// Qualcomm split image: `<name>.mdt` plus `<name>.b00` .. `<name>.bNN`.
    QcSplit,
    /// Trustonic (Samsung Exynos) `<UUID>.tlbin`.
    TrustonicTlbin,
    /// Huawei `<UUID>.sec`.
    HuaweiSec,
    /// Stand-alone TEE OS partition: `tz`, `tzb`, `tzBackup` or `tz.mbn`.
    MonolithicTz,
    Unknown,
}

impl VendorLayout {
    pub fn vendor_hint(self) -> &'static str {
        match self {
            Self::QcSplit | Self::MonolithicTz => "qualcomm",
            Self::TrustonicTlbin => "trustonic",
            Self::HuaweiSec => "huawei",
            Self::Unknown => "unknown",
        }
    }
}

impl fmt::Display for VendorLayout {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::QcSplit => "QC_SPLIT",
            Self::TrustonicTlbin => "TRUSTONIC_TLBIN",
            Self::HuaweiSec => "HUAWEI_SEC",
            Self::MonolithicTz => "MONOLITHIC_TZ",
            Self::Unknown => "UNKNOWN",
        })
    }
}

pub(crate) fn basename(path: &str) -> &str {
    path.rsplit(['/', '\\']).next().unwrap_or(path)
}

/// 32 hex digits, either plain or hyphenated 8-4-4-4-12.
fn is_uuid(s: &str) -> bool {
    let hex = |part: &str, n: usize| part.len() == n && part.bytes().all(|b| b.is_ascii_hexdigit());
    if !s.contains('-') {
        return hex(s, 32);
    }
    let parts: Vec<&str> = s.split('-').collect();
    parts.len() == 5 && parts.iter().zip([8, 4, 4, 4, 12]).all(|(p, n)| hex(p, n))
}

/// Segment number of a `.bNN` suffix.
pub(crate) fn segment_number(ext: &str) -> Option<u32> {
    let digits = ext.strip_prefix('b')?;
    if digits.len() >= 2 && digits.bytes().all(|b| b.is_ascii_digit()) {
        digits.parse().ok()
    } else {
        None
    }
}

/// Splits a QC split-image basename into (stem, extension).
pub(crate) fn split_part(name: &str) -> Option<(&str, &str)> {
    let (stem, ext) = name.rsplit_once('.')?;
    if stem.is_empty() {
        return None;
    }
    (ext == "mdt" || segment_number(ext).is_some()).then_some((stem, ext))
}

/// Classifies a file by its basename; the directory is ignored.
pub fn classify_path(path: &str) -> VendorLayout {
    let name = basename(path);
    if matches!(name, "tz" | "tzb" | "tzBackup" | "tz.mbn") {
        return VendorLayout::MonolithicTz;
    }
    if let Some(stem) = name.strip_suffix(".tlbin") {
        if is_uuid(stem) {
            return VendorLayout::TrustonicTlbin;
        }
    }
    if let Some(stem) = name.strip_suffix(".sec") {
        if is_uuid(stem) {
            return VendorLayout::HuaweiSec;
        }
    }
    if split_part(name).is_some() {
        return VendorLayout::QcSplit;
    }
    VendorLayout::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn nexus_split_files() {
        for f in ["widevine.mdt", "widevine.b00", "widevine.b03", "keymaster.b12"] {
            assert_eq!(
                classify_path(&format!("/system/vendor/firmware/{f}")),
                VendorLayout::QcSplit,
                "{f}"
            );
        }
    }

    #[test]
    fn samsung_tlbin() {
        let p = "/system/app/mcRegistry/ffffffffd0000000000000000000000a.tlbin";
        assert_eq!(classify_path(p), VendorLayout::TrustonicTlbin);
        let old = "/data/app/mcRegistry/ffffffffd0000000000000000000000a.tlbin";
        assert_eq!(classify_path(old), VendorLayout::TrustonicTlbin);
        assert_eq!(
            classify_path("/system/app/mcRegistry/keymaster.tlbin"),
            VendorLayout::Unknown
        );
    }

    #[test]
    fn huawei_sec() {
        for dir in ["/vendor/bin", "/product/bin", "/sbin"] {
            let p = format!("{dir}/9b17660b-8968-4eed-917e-dd32379bd548.sec");
            assert_eq!(classify_path(&p), VendorLayout::HuaweiSec);
        }
        assert_eq!(
            classify_path("/vendor/bin/9b17660b89684eed917edd32379bd548.sec"),
            VendorLayout::HuaweiSec
        );
        assert_eq!(
            classify_path("/vendor/bin/9b17660b-8968-4eed-917edd32379bd548.sec"),
            VendorLayout::Unknown
        );
    }

    #[test]
    fn monolithic_images() {
        for p in [
            "tz",
            "/dev/block/platform/msm_sdcc.1/by-name/tzBackup",
            "tzb",
            "firmware/tz.mbn",
        ] {
            assert_eq!(classify_path(p), VendorLayout::MonolithicTz, "{p}");
        }
    }

    #[test]
    fn unknown_names() {
        for p in [
            "",
            "/",
            "widevine",
            ".mdt",
            "widevine.b1",
            "widevine.bxx",
            "tz.img",
            "boot.img",
        ] {
            assert_eq!(classify_path(p), VendorLayout::Unknown, "{p:?}");
        }
    }

    fn layout_regexes(name: &str) -> [bool; 4] {
        let split = split_part(name).is_some();
        let tlbin = name.strip_suffix(".tlbin").is_some_and(is_uuid);
        let sec = name.strip_suffix(".sec").is_some_and(is_uuid);
        let mono = matches!(name, "tz" | "tzb" | "tzBackup" | "tz.mbn");
        [split, tlbin, sec, mono]
    }

    proptest! {
        #[test]
        fn layouts_are_mutually_exclusive(
            dir in "(/[a-z]{1,8}){0,3}",
            stem in prop_oneof![
                "[0-9a-f]{32}",
                "[0-9a-f]{8}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{4}-[0-9a-f]{12}",
                "[a-zA-Z0-9_.]{0,12}",
                Just("tz".to_string()),
            ],
            ext in prop_oneof![
                Just(String::new()),
                Just(".mdt".to_string()),
                "\\.b[0-9]{2,3}",
                Just(".tlbin".to_string()),
                Just(".sec".to_string()),
                Just(".mbn".to_string()),
                "\\.[a-z]{1,4}",
            ],
        ) {
            let path = format!("{dir}/{stem}{ext}");
            let layout = classify_path(&path);
            prop_assert_eq!(layout, classify_path(&path));
            let hits = layout_regexes(basename(&path));
            prop_assert!(hits.iter().filter(|h| **h).count() <= 1, "{} matched {:?}", path, hits);
            let expected = match hits.iter().position(|h| *h) {
                Some(0) => VendorLayout::QcSplit,
                Some(1) => VendorLayout::TrustonicTlbin,
                Some(2) => VendorLayout::HuaweiSec,
                Some(3) => VendorLayout::MonolithicTz,
                _ => VendorLayout::Unknown,
            };
            prop_assert_eq!(layout, expected);
        }
    }
}
