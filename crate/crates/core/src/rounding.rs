//! Rounding to multiples of 1/10 under the two table conventions.
//!
//! Values are carried as an integer count of tenths so that emission never
//! goes back through binary floating point.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Distance to a rounding boundary below which a value is re-evaluated.
pub const GUARD_WINDOW: f64 = 5e-4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoundingRule {
    /// Nearest multiple of 0.1, ties away from zero.
    Nearest,
    /// Largest multiple of 0.1 not exceeding the value.
    Floor,
}

/// An exact multiple of 0.1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Tenths(pub i64);

impl Tenths {
    pub fn as_f64(self) -> f64 {
        self.0 as f64 / 10.0
    }
}

impl fmt::Display for Tenths {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = if self.0 < 0 { "-" } else { "" };
        let abs = self.0.unsigned_abs();
        write!(f, "{sign}{}.{}", abs / 10, abs % 10)
    }
}

impl RoundingRule {
    pub fn apply(self, value: f64) -> Tenths {
        let scaled = value * 10.0;
        let t = match self {
            RoundingRule::Nearest => scaled.round(),
            RoundingRule::Floor => scaled.floor(),
        };
        Tenths(t as i64)
    }

    /// Distance from `value` to the nearest point where the rounded digit changes.
    pub fn boundary_distance(self, value: f64) -> f64 {
        let scaled = value * 10.0;
        let offset = match self {
            RoundingRule::Nearest => scaled - scaled.floor() - 0.5,
            RoundingRule::Floor => {
                let frac = scaled - scaled.floor();
                frac.min(1.0 - frac)
            }
        };
        offset.abs() / 10.0
    }

    /// Rounds `value`; if it sits within [`GUARD_WINDOW`] of a boundary the
    /// independent `refine` route is evaluated and must agree.
    pub fn guarded<F>(self, value: f64, refine: F) -> Result<Tenths>
    where
        F: FnOnce() -> Result<f64>,
    {
        let rounded = self.apply(value);
        if self.boundary_distance(value) >= GUARD_WINDOW {
            return Ok(rounded);
        }
        let refined = refine()?;
        if self.apply(refined) != rounded {
            return Err(Error::RoundingAmbiguous { value, refined });
        }
        Ok(rounded)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_is_locale_free() {
        assert_eq!(Tenths(652).to_string(), "65.2");
        assert_eq!(Tenths(1650).to_string(), "165.0");
        assert_eq!(Tenths(-3).to_string(), "-0.3");
        assert_eq!(Tenths(5).to_string(), "0.5");
    }

    #[test]
    fn nearest_and_floor() {
        assert_eq!(RoundingRule::Nearest.apply(147.877_87), Tenths(1479));
        assert_eq!(RoundingRule::Floor.apply(147.877_87), Tenths(1478));
        assert_eq!(RoundingRule::Nearest.apply(0.25), Tenths(3));
        assert_eq!(RoundingRule::Nearest.apply(-0.25), Tenths(-3));
        assert_eq!(RoundingRule::Floor.apply(-0.01), Tenths(-1));
    }

    #[test]
    fn boundary_distance_values() {
        assert!((RoundingRule::Nearest.boundary_distance(65.25) - 0.0).abs() < 1e-12);
        assert!((RoundingRule::Floor.boundary_distance(65.2001) - 1e-4).abs() < 1e-9);
        assert!((RoundingRule::Floor.boundary_distance(65.2999) - 1e-4).abs() < 1e-9);
        assert!((RoundingRule::Nearest.boundary_distance(65.2) - 0.05).abs() < 1e-9);
    }

    #[test]
    fn guard_skips_refinement_far_from_boundary() {
        let t = RoundingRule::Floor
            .guarded(65.267, || panic!("should not refine"))
            .unwrap();
        assert_eq!(t, Tenths(652));
    }

    #[test]
    fn guard_accepts_agreeing_refinement() {
        let t = RoundingRule::Floor
            .guarded(65.2001, || Ok(65.20011))
            .unwrap();
        assert_eq!(t, Tenths(652));
    }

    #[test]
    fn guard_rejects_disagreeing_refinement() {
        let err = RoundingRule::Nearest
            .guarded(65.2501, || Ok(65.2499))
            .unwrap_err();
        assert!(matches!(err, Error::RoundingAmbiguous { .. }));
    }
}
