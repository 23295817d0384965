//! Rational approximation of √2 by the Babylonian iteration and by the
//! side-diameter ratio iteration, measured exactly.
//!
//! Nothing here touches floating point. Distances to √2 are decided by
//! integer comparisons against `isqrt`, which works because `q·w·√2` is
//! irrational for every positive integer `q·w`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pair::SideDiameterPair;
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("expected a positive rational, got {0}")]
    NonPositive(Rat),
    #[error("square root of negative integer {0}")]
    NegativeInput(BigInt),
    #[error("convergent indices start at 1")]
    ZeroIndex,
}

fn require_positive(t: &Rat) -> Result<(), ApproxError> {
    if t.is_positive() {
        Ok(())
    } else {
        Err(ApproxError::NonPositive(t.clone()))
    }
}

/// `d / a`, already in lowest terms since `gcd(a, d) = 1`.
pub fn ratio(p: &SideDiameterPair) -> Rat {
    Rat::new(p.diameter().clone(), p.side().clone()).expect("side is positive")
}

/// `(t + 2/t) / 2`.
pub fn babylonian_step(t: &Rat) -> Result<Rat, ApproxError> {
    require_positive(t)?;
    let (p, q) = (t.numer(), t.denom());
    Ok(Rat::new(p * p + (q * q) * 2, (p * q) * 2).expect("nonzero"))
}

/// All positive rationals `x` with `(x + 2/x) / 2 = t`, ascending.
///
/// With `t = p/q` the roots of `x² − 2tx + 2 = 0` are `(p ± s)/q` where
/// `s² = p² − 2q²`; they are rational exactly when `p² − 2q²` is a perfect
/// square. Both roots are then positive (their product is 2), and they are
/// distinct because `p² = 2q²` has no solution. So the result is empty or
/// has two elements.
pub fn babylonian_preimage(t: &Rat) -> Result<Vec<Rat>, ApproxError> {
    require_positive(t)?;
    let (p, q) = (t.numer(), t.denom());
    let disc: BigInt = p * p - (q * q) * 2;
    if disc.is_negative() {
        return Ok(Vec::new());
    }
    let s = isqrt(&disc)?;
    if &s * &s != disc {
        return Ok(Vec::new());
    }
    let low = Rat::new(p - &s, q.clone()).expect("nonzero");
    let high = Rat::new(p + &s, q.clone()).expect("nonzero");
    Ok(vec![low, high])
}

/// `(2 + t) / (1 + t)`: the ratio form of `(a, d) → (a + d, 2a + d)`.
pub fn sd_ratio_step(t: &Rat) -> Result<Rat, ApproxError> {
    require_positive(t)?;
    let (p, q) = (t.numer(), t.denom());
    Ok(Rat::new(q * 2 + p, q + p).expect("nonzero"))
}

/// `⌊√n⌋` by Newton's method on integers.
pub fn isqrt(n: &BigInt) -> Result<BigInt, ApproxError> {
    if n.is_negative() {
        return Err(ApproxError::NegativeInput(n.clone()));
    }
    if n.is_zero() {
        return Ok(BigInt::zero());
    }
    // 2^⌈bits/2⌉ > √n, and from above the iteration decreases to ⌊√n⌋.
    let mut x = BigInt::one() << n.bits().div_ceil(2);
    loop {
        let next = (&x + n / &x) >> 1;
        if next >= x {
            return Ok(x);
        }
        x = next;
    }
}

/// Whether `|t − √2| < bound` for positive rational `bound`.
///
/// With `t = p/q` and `bound = u/w` this is `pw − qu < X < pw + qu` for the
/// irrational `X = qw√2`, and for an integer `m`, `X > m ⇔ ⌊X⌋ ≥ m`.
pub fn within_of_sqrt2(t: &Rat, bound: &Rat) -> bool {
    assert!(bound.is_positive(), "bound must be positive");
    let (p, q) = (t.numer(), t.denom());
    let (u, w) = (bound.numer(), bound.denom());
    let qw = q * w;
    let floor_x = isqrt(&((&qw * &qw) * 2)).expect("nonnegative");
    let center = p * w;
    let half_width = q * u;
    floor_x >= &center - &half_width && floor_x < center + half_width
}

/// Largest `k ≤ cap` with `|t − √2| < 10⁻ᵏ`.
///
/// Returns 0 both when the error is below 1 but not below 0.1 and when it
/// is 1 or more.
pub fn correct_digits(t: &Rat, cap: u32) -> Result<u32, ApproxError> {
    require_positive(t)?;
    let within = |k: u32| {
        let bound = Rat::new(1, num_traits::pow(BigInt::from(10), k as usize)).expect("nonzero");
        within_of_sqrt2(t, &bound)
    };
    // The predicate is monotone in k; find the last k where it holds.
    let (mut lo, mut hi) = (0u32, cap);
    if !within(0) {
        return Ok(0);
    }
    while lo < hi {
        let mid = lo + (hi - lo).div_ceil(2);
        if within(mid) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// The `n`-th convergent of `√2 = [1; 2, 2, 2, …]`.
pub fn cf_convergent_sqrt2(n: u64) -> Result<Rat, ApproxError> {
    if n == 0 {
        return Err(ApproxError::ZeroIndex);
    }
    // (h, k) for the convergent before the first, then the first.
    let (mut h_prev, mut k_prev) = (BigInt::one(), BigInt::zero());
    let (mut h, mut k) = (BigInt::one(), BigInt::one());
    for _ in 1..n {
        let h_next = &h * 2 + &h_prev;
        let k_next = &k * 2 + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    Ok(Rat::new(h, k).expect("positive denominator"))
}

/// Decimal expansion with exactly `digits` places, truncated toward zero.
pub fn decimal_truncated(t: &Rat, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (t.numer().abs() * scale) / t.denom();
    let text = scaled.to_string();
    let text = if text.len() <= digits {
        format!("{}{}", "0".repeat(digits + 1 - text.len()), text)
    } else {
        text
    };
    let (int_part, frac_part) = text.split_at(text.len() - digits);
    let sign = if t.is_positive() || t.is_zero() || scaled.is_zero() {
        ""
    } else {
        "-"
    };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Babylonian,
    SideDiameter,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Babylonian => "babylonian",
            Method::SideDiameter => "side_diameter",
        }
    }

    pub fn step(self, t: &Rat) -> Result<Rat, ApproxError> {
        match self {
            Method::Babylonian => babylonian_step(t),
            Method::SideDiameter => sd_ratio_step(t),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which side of √2 a positive rational lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Under,
    Over,
}

impl Side {
    /// Sign of `num² − 2·den²`, which is never zero.
    pub fn of(t: &Rat) -> Side {
        let (p, q) = (t.numer(), t.denom());
        if p * p > (q * q) * 2 {
            Side::Over
        } else {
            Side::Under
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Side::Under => "under",
            Side::Over => "over",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceRow {
    pub step: u64,
    pub value: Rat,
    pub correct_digits: u32,
    pub side: Side,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergenceReport {
    pub method: Method,
    pub start: Rat,
    pub rows: Vec<ConvergenceRow>,
}

pub const CSV_HEADER: &str = "step,value_num,value_den,decimal_value,correct_digits,side";

impl ConvergenceReport {
    /// Iterates `method` `steps` times from `start`, one row per iterate.
    pub fn run(method: Method, start: &Rat, steps: u64, cap: u32) -> Result<Self, ApproxError> {
        require_positive(start)?;
        let mut rows = Vec::with_capacity(steps as usize);
        let mut value = start.clone();
        for step in 1..=steps {
            value = method.step(&value)?;
            rows.push(ConvergenceRow {
                step,
                correct_digits: correct_digits(&value, cap)?,
                side: Side::of(&value),
                value: value.clone(),
            });
        }
        Ok(ConvergenceReport {
            method,
            start: start.clone(),
            rows,
        })
    }

    pub fn digits(&self) -> Vec<u32> {
        self.rows.iter().map(|r| r.correct_digits).collect()
    }

    /// CSV with [`CSV_HEADER`]; `precision` decimal places in `decimal_value`.
    pub fn to_csv(&self, precision: usize) -> String {
        let mut out = String::from(CSV_HEADER);
        out.push('\n');
        for row in &self.record(precision).rows {
            out.push_str(&row.csv_line());
            out.push('\n');
        }
        out
    }

    pub fn record(&self, precision: usize) -> ReportRecord {
        ReportRecord {
            method: self.method,
            start: self.start.to_string(),
            rows: self
                .rows
                .iter()
                .map(|r| RowRecord {
                    step: r.step,
                    value_num: r.value.numer().to_string(),
                    value_den: r.value.denom().to_string(),
                    decimal_value: decimal_truncated(&r.value, precision),
                    correct_digits: r.correct_digits,
                    side: r.side,
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowRecord {
    pub step: u64,
    pub value_num: String,
    pub value_den: String,
    pub decimal_value: String,
    pub correct_digits: u32,
    pub side: Side,
}

impl RowRecord {
    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.step,
            self.value_num,
            self.value_den,
            self.decimal_value,
            self.correct_digits,
            self.side.name()
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRecord {
    pub method: Method,
    pub start: String,
    pub rows: Vec<RowRecord>,
}

/// Runs both iterations from `start`: `(babylonian, side_diameter)`.
pub fn compare_methods(
    start: &Rat,
    steps: u64,
    cap: u32,
) -> Result<(ConvergenceReport, ConvergenceReport), ApproxError> {
    Ok((
        ConvergenceReport::run(Method::Babylonian, start, steps, cap)?,
        ConvergenceReport::run(Method::SideDiameter, start, steps, cap)?,
    ))
}

/// Whether `n` is a perfect square (negative numbers are not).
pub fn is_square(n: &BigInt) -> bool {
    match isqrt(n) {
        Ok(s) => &s * &s == *n,
        Err(_) => false,
    }
}
