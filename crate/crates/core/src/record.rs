//! Verification records, exact threshold comparisons and their CSV / JSON
//! line encodings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Version tag written as the first line of every CSV file.
pub const CSV_SCHEMA: &str = "# dcdlab-csv v1";

/// A threshold constant `c` for a `>>` inequality, stored exactly as
/// `c^2 = num / den` so that square-root bounds compare without rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub num: u64,
    pub den: u64,
}

impl Threshold {
    /// `c^2 = num / den`.
    pub fn from_squared(num: u64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::InvalidParameter(
                "threshold denominator is zero".into(),
            ));
        }
        let g = gcd(num, den);
        Ok(Threshold {
            num: num / g,
            den: den / g,
        })
    }

    /// `c = p / q`.
    pub fn from_ratio(p: u32, q: u32) -> Result<Self> {
        let (p, q) = (u64::from(p), u64::from(q));
        Self::from_squared(p * p, q * q)
    }

    /// Parses `p/q`, `p`, or `sq:num/den` (the latter gives `c^2` directly).
    pub fn parse(text: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("bad threshold {text:?}"));
        let (squared, body) = match text.strip_prefix("sq:") {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let (n, d) = match body.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (body.trim(), "1"),
        };
        if squared {
            let n: u64 = n.parse().map_err(|_| bad())?;
            let d: u64 = d.parse().map_err(|_| bad())?;
            Self::from_squared(n, d)
        } else {
            let n: u32 = n.parse().map_err(|_| bad())?;
            let d: u32 = d.parse().map_err(|_| bad())?;
            Self::from_ratio(n, d)
        }
    }

    pub fn c(&self) -> f64 {
        (self.num as f64 / self.den as f64).sqrt()
    }

    /// `(c^2)^power` as an exact fraction.
    fn squared_pow(&self, power: u32) -> Result<(u128, u128)> {
        let n = u128::from(self.num)
            .checked_pow(power)
            .ok_or(Error::Overflow)?;
        let d = u128::from(self.den)
            .checked_pow(power)
            .ok_or(Error::Overflow)?;
        Ok((n, d))
    }

    /// Decides `lhs >= c^(2 power) * rhs` exactly.
    pub fn admits(&self, lhs: u128, power: u32, rhs: u128) -> Result<bool> {
        let (n, d) = self.squared_pow(power)?;
        let left = lhs.checked_mul(d).ok_or(Error::Overflow)?;
        let right = rhs.checked_mul(n).ok_or(Error::Overflow)?;
        Ok(left >= right)
    }
}

impl std::fmt::Display for Threshold {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "sq:{}/{}", self.num, self.den)
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a.max(1)
}

/// One experiment: what was measured, against which bound, and whether an
/// exact assertion held. Report-only records carry `pass = None`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub check: String,
    pub family: String,
    pub k: u64,
    #[serde(default)]
    pub params: BTreeMap<String, String>,
    #[serde(default)]
    pub quantities: BTreeMap<String, u128>,
    #[serde(default)]
    pub ratios: BTreeMap<String, f64>,
    pub measured: u128,
    pub bound: f64,
    pub ratio: f64,
    pub pass: Option<bool>,
}

impl VerificationRecord {
    pub fn new(check: &str, family: &str, k: u64) -> Self {
        VerificationRecord {
            check: check.to_string(),
            family: family.to_string(),
            k,
            params: BTreeMap::new(),
            quantities: BTreeMap::new(),
            ratios: BTreeMap::new(),
            measured: 0,
            bound: 1.0,
            ratio: 0.0,
            pass: None,
        }
    }

    pub fn param(mut self, key: &str, value: impl ToString) -> Self {
        self.params.insert(key.to_string(), value.to_string());
        self
    }

    pub fn quantity(&mut self, key: &str, value: impl Into<u128>) -> &mut Self {
        self.quantities.insert(key.to_string(), value.into());
        self
    }

    pub fn add_ratio(&mut self, key: &str, value: f64) -> &mut Self {
        self.ratios.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<u128> {
        self.quantities.get(key).copied()
    }

    /// Sets the headline comparison; `ratio` is derived as `measured / bound`.
    pub fn headline(&mut self, measured: u128, bound: f64, pass: Option<bool>) -> &mut Self {
        self.measured = measured;
        self.bound = bound;
        self.ratio = measured as f64 / bound;
        self.pass = pass;
        self
    }

    /// Failing assertion, if any. Report-only records never fail.
    pub fn failed(&self) -> bool {
        self.pass == Some(false)
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("record serialization is infallible")
    }
}

/// Encodes records as CSV with the versioned header comment.
pub fn to_csv(records: &[VerificationRecord]) -> String {
    let mut out = String::new();
    out.push_str(CSV_SCHEMA);
    out.push('\n');
    out.push_str("check,family,k,measured,bound,ratio,pass\n");
    for r in records {
        let pass = match r.pass {
            Some(true) => "true",
            Some(false) => "false",
            None => "",
        };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            r.check, r.family, r.k, r.measured, r.bound, r.ratio, pass
        );
    }
    out
}

pub fn to_jsonl(records: &[VerificationRecord]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&r.to_json_line());
        out.push('\n');
    }
    out
}

/// Parses JSON lines produced by [`to_jsonl`]; blank lines are skipped.
pub fn parse_jsonl(input: &[u8]) -> Result<Vec<VerificationRecord>> {
    let text = std::str::from_utf8(input).map_err(|e| Error::Parse {
        line: 0,
        msg: format!("not UTF-8: {e}"),
    })?;
    let mut out = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let rec: VerificationRecord = serde_json::from_str(line).map_err(|e| Error::Parse {
            line: idx + 1,
            msg: e.to_string(),
        })?;
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn threshold_parse_and_compare() {
        let t = Threshold::parse("1/2").unwrap();
        assert_eq!(t, Threshold { num: 1, den: 4 });
        assert_eq!(
            Threshold::parse("sq:6/8").unwrap(),
            Threshold { num: 3, den: 4 }
        );
        assert_eq!(Threshold::parse("1").unwrap(), Threshold { num: 1, den: 1 });
        assert!(Threshold::parse("x").is_err());
        assert!(Threshold::parse("1/0").is_err());
        // 3 >= 1 * 2 * sqrt(2)  <=>  9 >= 8
        let one = Threshold::parse("1").unwrap();
        assert!(one.admits(9, 1, 8).unwrap());
        assert!(!one.admits(7, 1, 8).unwrap());
        // c = 1/2, 4th powers: 1 >= (1/16) * 16
        assert!(t.admits(1, 2, 16).unwrap());
        assert!(!t.admits(1, 2, 17).unwrap());
        assert!((t.c() - 0.5).abs() < 1e-15);
        assert_eq!(t.to_string(), "sq:1/4");
        assert_eq!(Threshold::parse(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn record_roundtrip_and_ratio() {
        let mut r = VerificationRecord::new("thm1", "dcd", 6).param("m", 3);
        r.quantity("sumset", 27u32)
            .quantity("huge", u128::from(u64::MAX) * 4);
        r.add_ratio("x", 0.25);
        r.headline(27, 6.0 * 6f64.sqrt(), Some(true));
        assert!((r.ratio - 27.0 / (6.0 * 6f64.sqrt())).abs() < 1e-12);
        let text = to_jsonl(&[r.clone(), r.clone()]);
        let back = parse_jsonl(text.as_bytes()).unwrap();
        assert_eq!(back, vec![r.clone(), r.clone()]);
        let csv = to_csv(&[r]);
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some(CSV_SCHEMA));
        assert_eq!(
            lines.next(),
            Some("check,family,k,measured,bound,ratio,pass")
        );
        assert!(lines.next().unwrap().starts_with("thm1,dcd,6,27,"));
    }

    #[test]
    fn parse_jsonl_errors() {
        assert!(matches!(
            parse_jsonl(b"{}\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_jsonl(b"\n\nnope"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert_eq!(parse_jsonl(b"\n").unwrap(), vec![]);
    }
}
