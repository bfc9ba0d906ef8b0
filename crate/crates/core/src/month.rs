//! Month-resolution timestamps.
//!
//! All publication dates and testing times are counted in whole months since
//! January 1893 (month 0). Only differences between stamps enter any score.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EPOCH_YEAR: i64 = 1893;
pub const MAX_MONTH: u32 = 4000;

/// Months elapsed since 1893-01.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
/// Serialized as `YYYY-MM`.
#[serde(try_from = "String", into = "String")]
pub struct MonthStamp(u32);

impl MonthStamp {
    pub fn new(value: u32) -> Result<Self> {
        if value > MAX_MONTH {
            return Err(Error::MonthOutOfRange(value as i64));
        }
        Ok(Self(value))
    }

    /// `month` is 1-based.
    pub fn from_year_month(year: i64, month: u32) -> Result<Self> {
        if !(1..=12).contains(&month) {
            return Err(Error::InvalidDate(format!("{year:04}-{month:02}")));
        }
        let value = (year - EPOCH_YEAR) * 12 + (month as i64 - 1);
        if !(0..=MAX_MONTH as i64).contains(&value) {
            return Err(Error::MonthOutOfRange(value));
        }
        Ok(Self(value as u32))
    }

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn year(self) -> i64 {
        EPOCH_YEAR + (self.0 / 12) as i64
    }

    /// 1-based calendar month.
    pub fn month(self) -> u32 {
        self.0 % 12 + 1
    }

    /// Signed distance `self - earlier` in months.
    pub fn months_since(self, earlier: MonthStamp) -> i64 {
        self.0 as i64 - earlier.0 as i64
    }

    pub fn checked_add(self, months: u32) -> Result<Self> {
        Self::new(self.0.saturating_add(months))
    }
}

impl TryFrom<u32> for MonthStamp {
    type Error = Error;

    fn try_from(value: u32) -> Result<Self> {
        Self::new(value)
    }
}

impl From<MonthStamp> for u32 {
    fn from(m: MonthStamp) -> u32 {
        m.0
    }
}

impl TryFrom<String> for MonthStamp {
    type Error = Error;

    fn try_from(value: String) -> Result<Self> {
        value.parse()
    }
}

impl From<MonthStamp> for String {
    fn from(m: MonthStamp) -> String {
        m.to_string()
    }
}

impl fmt::Display for MonthStamp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:04}-{:02}", self.year(), self.month())
    }
}

/// Parses `YYYY-MM` or `YYYY-MM-DD`; the day, when present, is validated and
/// then dropped.
impl FromStr for MonthStamp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDate(s.to_string());
        let s_trim = s.trim();
        let mut parts = s_trim.split('-');
        let year = parts.next().ok_or_else(bad)?;
        let month = parts.next().ok_or_else(bad)?;
        let day = parts.next();
        if parts.next().is_some() || year.len() != 4 || month.len() != 2 {
            return Err(bad());
        }
        let year: i64 = year.parse().map_err(|_| bad())?;
        let month: u32 = month.parse().map_err(|_| bad())?;
        if !(1..=12).contains(&month) {
            return Err(bad());
        }
        if let Some(day) = day {
            let d: u32 = day.parse().map_err(|_| bad())?;
            if day.len() != 2 || d == 0 || d > days_in_month(year, month) {
                return Err(bad());
            }
        }
        Self::from_year_month(year, month)
    }
}

fn days_in_month(year: i64, month: u32) -> u32 {
    match month {
        4 | 6 | 9 | 11 => 30,
        2 if (year % 4 == 0 && year % 100 != 0) || year % 400 == 0 => 29,
        2 => 28,
        _ => 31,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn serde_uses_text_form() {
        let m: MonthStamp = "2010-01".parse().unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "\"2010-01\"");
        assert_eq!(serde_json::from_str::<MonthStamp>("\"2010-01\"").unwrap(), m);
        assert!(serde_json::from_str::<MonthStamp>("\"1700-01\"").is_err());
    }

    #[test]
    fn epoch_is_month_zero() {
        assert_eq!("1893-01".parse::<MonthStamp>().unwrap().value(), 0);
        assert_eq!("1893-07-01".parse::<MonthStamp>().unwrap().value(), 6);
    }

    #[test]
    fn day_is_truncated() {
        let a: MonthStamp = "2010-01-31".parse().unwrap();
        let b: MonthStamp = "2010-01".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_string(), "2010-01");
        assert_eq!(a.value(), (2010 - 1893) * 12);
    }

    #[test]
    fn rejects_garbage() {
        for s in [
            "",
            "2010",
            "2010-13",
            "2010-00",
            "10-01",
            "2010-02-30",
            "2010-01-01-01",
            "abcd-ef",
        ] {
            assert!(s.parse::<MonthStamp>().is_err(), "{s}");
        }
        assert!("2000-02-29".parse::<MonthStamp>().is_ok());
        assert!("1900-02-29".parse::<MonthStamp>().is_err());
    }

    #[test]
    fn range_limits() {
        assert!(matches!(
            "1892-12".parse::<MonthStamp>(),
            Err(Error::MonthOutOfRange(-1))
        ));
        assert!(MonthStamp::new(4000).is_ok());
        assert!(MonthStamp::new(4001).is_err());
    }
}
