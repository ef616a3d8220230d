//! Distortion categories, severities and the composite label type with its
//! canonical string codec.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelError {
    #[error("unknown token `{0}`")]
    ParseError(String),
    #[error("label invariant violated: {0}")]
    InvariantViolation(String),
}

/// Distortion categories in canonical order. The declaration order doubles as
/// the enhancement chaining order: the global smoke veil is removed first,
/// then blur, then exposure is corrected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DistortionCategory {
    Smoke,
    MotionBlur,
    OverExposure,
    LowLight,
}

impl DistortionCategory {
    pub const ALL: [DistortionCategory; 4] = [
        DistortionCategory::Smoke,
        DistortionCategory::MotionBlur,
        DistortionCategory::OverExposure,
        DistortionCategory::LowLight,
    ];

    pub fn token(self) -> &'static str {
        match self {
            DistortionCategory::Smoke => "smoke",
            DistortionCategory::MotionBlur => "motion_blur",
            DistortionCategory::OverExposure => "over_exposure",
            DistortionCategory::LowLight => "low_light",
        }
    }

    pub fn from_token(s: &str) -> Result<Self, LabelError> {
        Self::ALL
            .into_iter()
            .find(|c| c.token() == s)
            .ok_or_else(|| LabelError::ParseError(s.to_string()))
    }
}

impl std::fmt::Display for DistortionCategory {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl Serialize for DistortionCategory {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for DistortionCategory {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        DistortionCategory::from_token(&s).map_err(D::Error::custom)
    }
}

/// Severity tier. `Normal` means the category is absent and never appears
/// inside a [`DistortionLabel`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Severity {
    Normal,
    Mild,
    Severe,
}

impl Severity {
    pub fn token(self) -> &'static str {
        match self {
            Severity::Normal => "normal",
            Severity::Mild => "mild",
            Severity::Severe => "severe",
        }
    }

    pub fn from_token(s: &str) -> Result<Self, LabelError> {
        [Severity::Normal, Severity::Mild, Severity::Severe]
            .into_iter()
            .find(|v| v.token() == s)
            .ok_or_else(|| LabelError::ParseError(s.to_string()))
    }
}

impl std::fmt::Display for Severity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.token())
    }
}

impl Serialize for Severity {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.token())
    }
}

impl<'de> Deserialize<'de> for Severity {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Severity::from_token(&s).map_err(D::Error::custom)
    }
}

/// A set of (category, severity) pairs describing the distortions present in
/// one image. Invariants enforced at construction:
///
/// - no duplicate categories, no `Normal` severities (absence is omission)
/// - low-light and over-exposure are mutually exclusive
/// - smoke, when present, is always severe
/// - at most three categories
///
/// Entries are kept sorted in canonical category order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct DistortionLabel {
    entries: Vec<(DistortionCategory, Severity)>,
}

impl DistortionLabel {
    pub fn normal() -> Self {
        Self::default()
    }

    pub fn new(
        entries: impl IntoIterator<Item = (DistortionCategory, Severity)>,
    ) -> Result<Self, LabelError> {
        let mut entries: Vec<_> = entries.into_iter().collect();
        entries.sort_by_key(|(c, _)| *c);
        for window in entries.windows(2) {
            if window[0].0 == window[1].0 {
                return Err(LabelError::InvariantViolation(format!(
                    "duplicate category `{}`",
                    window[0].0
                )));
            }
        }
        for &(cat, sev) in &entries {
            if sev == Severity::Normal {
                return Err(LabelError::InvariantViolation(format!(
                    "severity `normal` on `{cat}` (absence is encoded by omission)"
                )));
            }
            if cat == DistortionCategory::Smoke && sev != Severity::Severe {
                return Err(LabelError::InvariantViolation(
                    "smoke severity must be severe".into(),
                ));
            }
        }
        let has = |c| entries.iter().any(|&(cat, _)| cat == c);
        if has(DistortionCategory::LowLight) && has(DistortionCategory::OverExposure) {
            return Err(LabelError::InvariantViolation(
                "low_light and over_exposure are mutually exclusive".into(),
            ));
        }
        if entries.len() > 3 {
            return Err(LabelError::InvariantViolation(format!(
                "{} categories (at most 3 allowed)",
                entries.len()
            )));
        }
        Ok(Self { entries })
    }

    pub fn single(cat: DistortionCategory, sev: Severity) -> Result<Self, LabelError> {
        Self::new([(cat, sev)])
    }

    pub fn is_normal(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in canonical category order.
    pub fn entries(&self) -> &[(DistortionCategory, Severity)] {
        &self.entries
    }

    pub fn severity_of(&self, cat: DistortionCategory) -> Option<Severity> {
        self.entries.iter().find(|&&(c, _)| c == cat).map(|&(_, s)| s)
    }

    pub fn categories(&self) -> impl Iterator<Item = DistortionCategory> + '_ {
        self.entries.iter().map(|&(c, _)| c)
    }

    pub fn severities(&self) -> impl Iterator<Item = Severity> + '_ {
        self.entries.iter().map(|&(_, s)| s)
    }

    /// Canonical string form: `+`-joined `category:severity` tokens in
    /// canonical order; the empty label encodes as `normal`.
    pub fn encode(&self) -> String {
        if self.entries.is_empty() {
            return "normal".to_string();
        }
        self.entries
            .iter()
            .map(|(c, s)| format!("{}:{}", c.token(), s.token()))
            .collect::<Vec<_>>()
            .join("+")
    }

    pub fn decode(s: &str) -> Result<Self, LabelError> {
        if s == "normal" {
            return Ok(Self::normal());
        }
        let mut entries = Vec::new();
        for token in s.split('+') {
            let (cat, sev) = token
                .split_once(':')
                .ok_or_else(|| LabelError::ParseError(token.to_string()))?;
            entries.push((DistortionCategory::from_token(cat)?, Severity::from_token(sev)?));
        }
        Self::new(entries)
    }

    /// Exhaustive enumeration of all valid labels (30 including `normal`).
    pub fn enumerate_valid() -> Vec<DistortionLabel> {
        use DistortionCategory::*;
        use Severity::*;
        let smoke_choices: [Option<(DistortionCategory, Severity)>; 2] =
            [None, Some((Smoke, Severe))];
        let blur_choices = [None, Some((MotionBlur, Mild)), Some((MotionBlur, Severe))];
        let exposure_choices = [
            None,
            Some((LowLight, Mild)),
            Some((LowLight, Severe)),
            Some((OverExposure, Mild)),
            Some((OverExposure, Severe)),
        ];
        let mut out = Vec::new();
        for s in smoke_choices {
            for b in blur_choices {
                for e in exposure_choices {
                    let entries: Vec<_> = [s, b, e].into_iter().flatten().collect();
                    out.push(DistortionLabel::new(entries).expect("enumerated labels are valid"));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for DistortionLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.encode())
    }
}

impl Serialize for DistortionLabel {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.encode())
    }
}

impl<'de> Deserialize<'de> for DistortionLabel {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        DistortionLabel::decode(&s).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::DistortionCategory::*;
    use super::Severity::*;
    use super::*;

    #[test]
    fn empty_label_is_normal() {
        assert_eq!(DistortionLabel::normal().encode(), "normal");
        assert_eq!(DistortionLabel::decode("normal").unwrap(), DistortionLabel::normal());
    }

    #[test]
    fn canonical_order_in_encoding() {
        let label =
            DistortionLabel::new([(MotionBlur, Severe), (OverExposure, Mild), (Smoke, Severe)])
                .unwrap();
        assert_eq!(label.encode(), "smoke:severe+motion_blur:severe+over_exposure:mild");
    }

    #[test]
    fn smoke_must_be_severe() {
        assert_eq!(
            DistortionLabel::decode("smoke:mild"),
            Err(LabelError::InvariantViolation("smoke severity must be severe".into()))
        );
    }

    #[test]
    fn exposure_states_are_exclusive() {
        assert!(matches!(
            DistortionLabel::decode("low_light:mild+over_exposure:mild"),
            Err(LabelError::InvariantViolation(_))
        ));
    }

    #[test]
    fn rejects_duplicates_normal_severity_and_unknown_tokens() {
        assert!(matches!(
            DistortionLabel::new([(LowLight, Mild), (LowLight, Severe)]),
            Err(LabelError::InvariantViolation(_))
        ));
        assert!(matches!(
            DistortionLabel::new([(MotionBlur, Normal)]),
            Err(LabelError::InvariantViolation(_))
        ));
        assert!(matches!(
            DistortionLabel::decode("fog:severe"),
            Err(LabelError::ParseError(_))
        ));
        assert!(matches!(
            DistortionLabel::decode("smoke"),
            Err(LabelError::ParseError(_))
        ));
    }

    #[test]
    fn valid_label_space_is_exactly_thirty() {
        let all = DistortionLabel::enumerate_valid();
        assert_eq!(all.len(), 30);
        let unique: std::collections::HashSet<String> = all.iter().map(|l| l.encode()).collect();
        assert_eq!(unique.len(), 30);
    }

    #[test]
    fn codec_round_trips_over_the_exhaustive_label_space() {
        for label in DistortionLabel::enumerate_valid() {
            let s = label.encode();
            assert_eq!(DistortionLabel::decode(&s).unwrap(), label, "{s}");
        }
    }

    #[test]
    fn decode_normalizes_entry_order() {
        let shuffled = DistortionLabel::decode("over_exposure:mild+smoke:severe").unwrap();
        assert_eq!(shuffled.encode(), "smoke:severe+over_exposure:mild");
    }

    #[test]
    fn serde_uses_canonical_strings() {
        let label = DistortionLabel::decode("motion_blur:mild").unwrap();
        let json = serde_json::to_string(&label).unwrap();
        assert_eq!(json, "\"motion_blur:mild\"");
        let back: DistortionLabel = serde_json::from_str(&json).unwrap();
        assert_eq!(back, label);
        assert!(serde_json::from_str::<DistortionLabel>("\"smoke:mild\"").is_err());
    }
}
