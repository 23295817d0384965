//! Side-and-diameter pairs and the operations that generate and unwind them.
//!
//! The sequence is indexed from 1 with the seed `(1, 1)`. The degenerate
//! `(0, 1)` also solves `d² − 2a² = 1` but is not a pair here: sides are
//! at least 1, which keeps descent well founded.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PairError {
    #[error(
        "({a}, {d}) is not a side-and-diameter pair: d² − 2a² = {value}, expected ±1 with a, d ≥ 1"
    )]
    NotAPair { a: BigInt, d: BigInt, value: BigInt },
    #[error("cannot descend below the seed (1, 1): the side would become 0")]
    DescentBelowSeed,
    #[error("sequence indices start at 1")]
    ZeroIndex,
    #[error("side must be at least 1, got {0}")]
    NonPositiveSide(BigInt),
}

/// The sign `e = d² − 2a²` of a pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PellSign {
    /// `d² = 2a² − 1`: the rational diameter falls short of the double by one.
    Minus,
    /// `d² = 2a² + 1`: the rational diameter exceeds the double by one.
    Plus,
}

impl PellSign {
    /// Sign of the `n`-th pair, `(−1)ⁿ`.
    pub fn for_index(n: u64) -> Self {
        if n.is_multiple_of(2) {
            PellSign::Plus
        } else {
            PellSign::Minus
        }
    }

    pub fn from_value(value: &BigInt) -> Option<Self> {
        if value.is_one() {
            Some(PellSign::Plus)
        } else if *value == BigInt::from(-1) {
            Some(PellSign::Minus)
        } else {
            None
        }
    }

    pub fn as_i8(self) -> i8 {
        match self {
            PellSign::Minus => -1,
            PellSign::Plus => 1,
        }
    }

    pub fn to_int(self) -> BigInt {
        BigInt::from(self.as_i8())
    }

    pub fn flipped(self) -> Self {
        match self {
            PellSign::Minus => PellSign::Plus,
            PellSign::Plus => PellSign::Minus,
        }
    }
}

impl fmt::Display for PellSign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PellSign::Minus => f.write_str("-1"),
            PellSign::Plus => f.write_str("+1"),
        }
    }
}

/// `d² − 2a²` for arbitrary integers.
pub fn pell_value(a: &BigInt, d: &BigInt) -> BigInt {
    d * d - (a * a) * 2
}

/// A side number `a` and its rational diameter `d`.
///
/// Always satisfies `a, d ≥ 1` and `d² − 2a² = ±1` (which forces
/// `gcd(a, d) = 1`). When the pair was produced by sequence generation it
/// also carries its 1-based index `n`, and then `d² − 2a² = (−1)ⁿ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SideDiameterPair {
    a: BigInt,
    d: BigInt,
    sign: PellSign,
    index: Option<u64>,
}

impl SideDiameterPair {
    /// Validates `(a, d)`; the result carries no index.
    pub fn new(a: BigInt, d: BigInt) -> Result<Self, PairError> {
        let value = pell_value(&a, &d);
        match PellSign::from_value(&value) {
            Some(sign) if a.is_positive() && d.is_positive() => Ok(SideDiameterPair {
                a,
                d,
                sign,
                index: None,
            }),
            _ => Err(PairError::NotAPair { a, d, value }),
        }
    }

    /// Validates `(a, d)` and checks that `n` is consistent with its sign.
    pub fn with_index(a: BigInt, d: BigInt, n: u64) -> Result<Self, PairError> {
        if n == 0 {
            return Err(PairError::ZeroIndex);
        }
        let mut pair = Self::new(a, d)?;
        if pair.sign != PellSign::for_index(n) {
            return Err(PairError::NotAPair {
                value: pair.sign.to_int(),
                a: pair.a,
                d: pair.d,
            });
        }
        pair.index = Some(n);
        Ok(pair)
    }

    /// The side number `a`.
    pub fn side(&self) -> &BigInt {
        &self.a
    }

    /// The diameter number `d`.
    pub fn diameter(&self) -> &BigInt {
        &self.d
    }

    pub fn sign(&self) -> PellSign {
        self.sign
    }

    pub fn index(&self) -> Option<u64> {
        self.index
    }

    pub fn is_seed(&self) -> bool {
        self.a.is_one() && self.d.is_one()
    }

    /// Same pair without its sequence index.
    pub fn without_index(&self) -> Self {
        SideDiameterPair {
            index: None,
            ..self.clone()
        }
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.a, self.d)
    }

    /// The next pair, `(a + d, 2a + d)`.
    pub fn step(&self) -> Self {
        let a = &self.a + &self.d;
        let d = &self.a * 2 + &self.d;
        SideDiameterPair {
            a,
            d,
            sign: self.sign.flipped(),
            index: self.index.map(|n| n + 1),
        }
    }

    /// The previous pair, `(d − a, 2a − d)`.
    ///
    /// Fails on the seed, whose predecessor would have side 0.
    pub fn descend(&self) -> Result<Self, PairError> {
        if self.is_seed() {
            return Err(PairError::DescentBelowSeed);
        }
        // d > a and d < 2a hold for every pair other than the seed.
        let a = &self.d - &self.a;
        let d = &self.a * 2 - &self.d;
        Ok(SideDiameterPair {
            a,
            d,
            sign: self.sign.flipped(),
            index: self.index.map(|n| n - 1),
        })
    }

    /// The pair of index `m + n` given those of index `m` and `n`, from
    /// `d + a√2 = (1 + √2)ⁿ`.
    fn compose(&self, other: &Self) -> (BigInt, BigInt) {
        let a = &self.a * &other.d + &self.d * &other.a;
        let d = &self.d * &other.d + (&self.a * &other.a) * 2;
        (a, d)
    }
}

impl fmt::Display for SideDiameterPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.a, self.d)
    }
}

/// The seed `(1, 1)`, index 1, sign −1.
pub fn seed() -> SideDiameterPair {
    SideDiameterPair {
        a: BigInt::one(),
        d: BigInt::one(),
        sign: PellSign::Minus,
        index: Some(1),
    }
}

/// The `n`-th pair in `O(log n)` big-integer operations.
///
/// Walks the bits of `n` from the top: doubling takes index `k` to `2k` via
/// `a₂ₖ = 2aₖdₖ`, `d₂ₖ = dₖ² + 2aₖ²`, and a set bit adds one ordinary step.
pub fn nth(n: u64) -> Result<SideDiameterPair, PairError> {
    if n == 0 {
        return Err(PairError::ZeroIndex);
    }
    let mut current = seed();
    let mut k: u64 = 1;
    for bit in (0..n.ilog2()).rev() {
        let (a, d) = current.compose(&current);
        k *= 2;
        current = SideDiameterPair {
            a,
            d,
            sign: PellSign::for_index(k),
            index: Some(k),
        };
        if n >> bit & 1 == 1 {
            current = current.step();
            k += 1;
        }
    }
    debug_assert_eq!(current.index, Some(n));
    Ok(current)
}

/// The `n`-th pair by applying [`SideDiameterPair::step`] `n − 1` times.
pub fn nth_iterative(n: u64) -> Result<SideDiameterPair, PairError> {
    if n == 0 {
        return Err(PairError::ZeroIndex);
    }
    let mut current = seed();
    for _ in 1..n {
        current = current.step();
    }
    Ok(current)
}

/// Pairs `1..=count`.
pub fn generate(count: usize) -> Result<Vec<SideDiameterPair>, PairError> {
    if count == 0 {
        return Err(PairError::ZeroIndex);
    }
    Ok(std::iter::successors(Some(seed()), |p| Some(p.step()))
        .take(count)
        .collect())
}

/// The rational diameter adjacent to side `a`, if `a` is a side number.
///
/// Walks the sequence until the side reaches `a`; sides grow strictly, so
/// the walk is finite.
pub fn adjacent_rational_diameter(a: &BigInt) -> Result<Option<BigInt>, PairError> {
    if !a.is_positive() {
        return Err(PairError::NonPositiveSide(a.clone()));
    }
    let mut current = seed();
    while current.a < *a {
        current = current.step();
    }
    Ok((current.a == *a).then_some(current.d))
}

/// Gaps between `N = d² − 1` and the two squares it sits under.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlatoGaps {
    /// `N = d² − 1`.
    pub number: BigInt,
    /// `d² − N`, always 1.
    pub below_rational_square: BigInt,
    /// `2a² − N`: 2 when the sign is −1, 0 when it is +1.
    pub below_irrational_square: BigInt,
    pub sign: PellSign,
}

/// For the number one less than the square of the rational diameter, report
/// how far it falls short of `d²` and of the irrational diameter's square
/// `2a²`.
///
/// "Short by one and by two" only holds for sign −1 pairs, so the sign is
/// reported alongside.
pub fn plato_check(a: &BigInt, d: &BigInt) -> Result<PlatoGaps, PairError> {
    let pair = SideDiameterPair::new(a.clone(), d.clone())?;
    let d_sq = d * d;
    let number = &d_sq - 1;
    Ok(PlatoGaps {
        below_rational_square: &d_sq - &number,
        below_irrational_square: (a * a) * 2 - &number,
        number,
        sign: pair.sign,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncouragingCheck {
    /// `d² + d′²`.
    pub lhs: BigInt,
    /// `2(a² + a′²)`.
    pub rhs: BigInt,
    pub holds: bool,
}

/// Evaluates `dₙ² + dₙ₊₁² = 2(aₙ² + aₙ₊₁²)` using `p` and `p.step()`.
pub fn encouraging_identity_check(p: &SideDiameterPair) -> EncouragingCheck {
    let next = p.step();
    let lhs = &p.d * &p.d + &next.d * &next.d;
    let rhs = (&p.a * &p.a + &next.a * &next.a) * 2;
    EncouragingCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    }
}
