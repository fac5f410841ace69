use std::fmt;
use std::str::FromStr;

use super::{SetNumError, UnaryNumber};

/// `S(...S(0)...)` with `depth` applications of the successor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PeanoNumeral {
    pub depth: u64,
}

pub fn to_peano(n: u64) -> PeanoNumeral {
    PeanoNumeral { depth: n }
}

impl PeanoNumeral {
    pub fn succ(self) -> PeanoNumeral {
        PeanoNumeral { depth: self.depth + 1 }
    }

    /// Levels at which both numerals have an `S` to unify.
    pub fn shared_depth(self, other: PeanoNumeral) -> u64 {
        self.depth.min(other.depth)
    }
}

impl fmt::Display for PeanoNumeral {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.depth as usize;
        write!(f, "{}0{}", "S(".repeat(d), ")".repeat(d))
    }
}

impl FromStr for PeanoNumeral {
    type Err = SetNumError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let opens = t.len() - t.trim_start_matches("S(").len();
        let depth = opens / 2;
        let rest = &t[opens..];
        if rest.len() != depth + 1 || !rest.starts_with('0') || !rest[1..].bytes().all(|b| b == b')') {
            return Err(SetNumError::BadPeano(s.to_owned()));
        }
        Ok(PeanoNumeral { depth: depth as u64 })
    }
}

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

fn check_base(base: u32) -> Result<(), SetNumError> {
    if (2..=36).contains(&base) {
        Ok(())
    } else {
        Err(SetNumError::BadBase(base))
    }
}

/// Splits the strokes into groups of `base`; the leftover count is the
/// lowest digit and the number of groups is coded the same way in turn.
pub fn unary_to_positional(u: UnaryNumber, base: u32) -> Result<String, SetNumError> {
    check_base(base)?;
    let mut strokes = u.to_string().into_bytes();
    let mut digits = Vec::new();
    loop {
        let groups = strokes.chunks_exact(base as usize);
        let leftover = groups.remainder().len();
        let full = groups.len();
        digits.push(DIGITS[leftover]);
        if full == 0 {
            break;
        }
        strokes.truncate(full);
    }
    digits.reverse();
    Ok(String::from_utf8(digits).expect("ascii digits"))
}

/// Inverse of [`unary_to_positional`]; letters may be either case.
pub fn positional_to_unary(s: &str, base: u32) -> Result<UnaryNumber, SetNumError> {
    check_base(base)?;
    if s.is_empty() {
        return Err(SetNumError::BadDigit(s.to_owned()));
    }
    let mut n: u128 = 0;
    for c in s.chars() {
        let d = c.to_digit(base).ok_or_else(|| SetNumError::BadDigit(s.to_owned()))?;
        n = n * base as u128 + d as u128;
        if n > super::UNARY_LIMIT as u128 {
            return Err(SetNumError::TooLarge(n));
        }
    }
    UnaryNumber::new(n as u64)
}

/// Strokes in the unary form per digit in the positional form.
pub fn compression_ratio(u: UnaryNumber, base: u32) -> Result<f64, SetNumError> {
    let digits = unary_to_positional(u, base)?.len();
    Ok(u.count() as f64 / digits as f64)
}
