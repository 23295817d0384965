//! Symbolic identities behind side-and-diameter numbers, the V.19
//! subtraction lemma, and a concrete derivation trace of the step
//! `(a, d) → (a + d, 2a + d)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::pair::{PairError, PellSign, SideDiameterPair};
use crate::poly::{Poly, PolyError, PolyRing};
use crate::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdentityError {
    #[error("proportion has a zero term: x, y and x + y must be nonzero")]
    ZeroDenominator,
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Pair(#[from] PairError),
}

/// A polynomial identity `lhs = rhs` together with where it comes from.
#[derive(Debug, Clone)]
pub struct NamedIdentity {
    pub name: &'static str,
    pub lhs: Poly,
    pub rhs: Poly,
    pub source: &'static str,
}

impl NamedIdentity {
    pub fn verify(&self) -> Result<bool, PolyError> {
        verify_identity(&self.lhs, &self.rhs)
    }
}

/// True iff `lhs − rhs` is the zero polynomial, i.e. the identity holds for
/// every integer (indeed every commutative-ring) assignment.
pub fn verify_identity(lhs: &Poly, rhs: &Poly) -> Result<bool, PolyError> {
    Ok(lhs.try_sub(rhs)?.is_zero())
}

fn two() -> BigInt {
    BigInt::from(2)
}

/// The identities used throughout the crate. Every entry verifies.
pub fn identity_catalog() -> Vec<NamedIdentity> {
    let ring = PolyRing::new(&["a", "d"]);
    let a = ring.var("a").expect("a");
    let d = ring.var("d").expect("d");
    let sq = |p: &Poly| p.pow(2);

    let two_a_d = a.scale(&two()) + d.clone();
    let a_d = &a + &d;
    let doubled_sides = (sq(&a) + sq(&a_d)).scale(&two());
    let pell_gap = sq(&a).scale(&two()) - sq(&d);

    let half_ring = PolyRing::new(&["c", "t"]);
    let c = half_ring.var("c").expect("c");
    let t = half_ring.var("t").expect("t");

    vec![
        NamedIdentity {
            name: "euclid_II_10",
            lhs: sq(&two_a_d) + sq(&d),
            rhs: doubled_sides.clone(),
            source: "Euclid, Elements II.10, arithmetic form with whole line 2a and added line d",
        },
        NamedIdentity {
            name: "euclid_II_9",
            lhs: sq(&(&c + &t)) + sq(&(&c - &t)),
            rhs: (sq(&c) + sq(&t)).scale(&two()),
            source: "Euclid, Elements II.9, arithmetic form with half line c and offset t",
        },
        NamedIdentity {
            name: "elegant_core",
            lhs: sq(&two_a_d) - sq(&a_d).scale(&two()),
            rhs: pell_gap.clone(),
            source: "Elegant Theorem: d² = 2a² ± 1 gives (2a + d)² = 2(a + d)² ∓ 1",
        },
        NamedIdentity {
            name: "encouraging",
            lhs: sq(&d) + sq(&two_a_d),
            rhs: doubled_sides,
            source: "Proclus: the two diameters together are twice the two sides",
        },
        NamedIdentity {
            name: "descent_core",
            lhs: sq(&(a.scale(&two()) - d.clone())) - sq(&(&d - &a)).scale(&two()),
            rhs: pell_gap,
            source: "Infinite descent (d − a, 2a − d) via Euclid II.9",
        },
    ]
}

/// Looks up a catalog entry by name.
pub fn catalog_entry(name: &str) -> Option<NamedIdentity> {
    identity_catalog().into_iter().find(|i| i.name == name)
}

/// Outcome of the subtraction lemma on concrete magnitudes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProportionCheck {
    /// `(u + v) = r(x + y)` and `v = r·y`.
    pub premises_hold: bool,
    /// `u = r·x`.
    pub conclusion_holds: bool,
}

impl ProportionCheck {
    pub fn implication_holds(&self) -> bool {
        !self.premises_hold || self.conclusion_holds
    }
}

/// Both sides of the lemma: if whole is to whole as taken-away is to
/// taken-away, the remainder is to the remainder in the same ratio.
pub fn proportion_check(
    u: &BigInt,
    v: &BigInt,
    x: &BigInt,
    y: &BigInt,
    r: &Rat,
) -> Result<ProportionCheck, IdentityError> {
    let whole = x + y;
    if x.is_zero() || y.is_zero() || whole.is_zero() {
        return Err(IdentityError::ZeroDenominator);
    }
    let scaled = |n: &BigInt| r * &Rat::from_int(n.clone());
    let premises_hold =
        Rat::from_int(u + v) == scaled(&whole) && Rat::from_int(v.clone()) == scaled(y);
    let conclusion_holds = Rat::from_int(u.clone()) == scaled(x);
    Ok(ProportionCheck {
        premises_hold,
        conclusion_holds,
    })
}

/// Whether "premises ⇒ conclusion" holds for the given quadruple. With the
/// integer inputs this also covers the numeric variant of the lemma.
pub fn proportion_subtract(
    u: &BigInt,
    v: &BigInt,
    x: &BigInt,
    y: &BigInt,
    r: &Rat,
) -> Result<bool, IdentityError> {
    proportion_check(u, v, x, y, r).map(|c| c.implication_holds())
}

/// Integer expression tree used to display trace steps with concrete values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Square(Box<Expr>),
}

impl Expr {
    fn num(n: impl Into<BigInt>) -> Expr {
        Expr::Num(n.into())
    }

    fn add(self, other: Expr) -> Expr {
        Expr::Add(Box::new(self), Box::new(other))
    }

    fn sub(self, other: Expr) -> Expr {
        Expr::Sub(Box::new(self), Box::new(other))
    }

    fn times(k: i64, e: Expr) -> Expr {
        Expr::Mul(Box::new(Expr::num(k)), Box::new(e))
    }

    fn sq(self) -> Expr {
        Expr::Square(Box::new(self))
    }

    /// Adds `e` (±1) as `+ 1` or `− 1`.
    fn plus_sign(self, e: PellSign) -> Expr {
        match e {
            PellSign::Plus => self.add(Expr::num(1)),
            PellSign::Minus => self.sub(Expr::num(1)),
        }
    }

    pub fn eval(&self) -> BigInt {
        match self {
            Expr::Num(n) => n.clone(),
            Expr::Add(l, r) => l.eval() + r.eval(),
            Expr::Sub(l, r) => l.eval() - r.eval(),
            Expr::Mul(l, r) => l.eval() * r.eval(),
            Expr::Square(e) => {
                let v = e.eval();
                &v * &v
            }
        }
    }

    fn is_atom(&self) -> bool {
        matches!(self, Expr::Num(n) if !n.is_negative()) || matches!(self, Expr::Square(_))
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expr::Num(n) if n.is_negative() => write!(f, "({n})"),
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Add(l, r) => write!(f, "{l} + {r}"),
            Expr::Sub(l, r) if r.is_atom() || matches!(**r, Expr::Mul(..)) => {
                write!(f, "{l} - {r}")
            }
            Expr::Sub(l, r) => write!(f, "{l} - ({r})"),
            Expr::Mul(l, r) if r.is_atom() => write!(f, "{l}*{r}"),
            Expr::Mul(l, r) => write!(f, "{l}*({r})"),
            Expr::Square(e) if matches!(**e, Expr::Num(_)) => write!(f, "{e}^2"),
            Expr::Square(e) => write!(f, "({e})^2"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Justification {
    #[serde(rename = "II.10")]
    EuclidII10,
    #[serde(rename = "hypothesis-substitution")]
    HypothesisSubstitution,
    #[serde(rename = "V.19-subtraction")]
    V19Subtraction,
    #[serde(rename = "conclusion")]
    Conclusion,
}

impl Justification {
    pub fn tag(self) -> &'static str {
        match self {
            Justification::EuclidII10 => "II.10",
            Justification::HypothesisSubstitution => "hypothesis-substitution",
            Justification::V19Subtraction => "V.19-subtraction",
            Justification::Conclusion => "conclusion",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationStep {
    pub justification: Justification,
    pub lhs: Expr,
    pub rhs: Expr,
    pub lhs_value: BigInt,
    pub rhs_value: BigInt,
}

impl DerivationStep {
    fn new(justification: Justification, lhs: Expr, rhs: Expr) -> Self {
        DerivationStep {
            justification,
            lhs_value: lhs.eval(),
            rhs_value: rhs.eval(),
            lhs,
            rhs,
        }
    }

    pub fn holds(&self) -> bool {
        self.lhs_value == self.rhs_value
    }
}

/// The four-step arithmetic derivation of the next pair's relation from the
/// current pair's: II.10 instance, substitution of `d² = 2a² + e`, the V.19
/// subtraction with `u = (2a+d)² + e, v = 2a², x = (a+d)², y = a²`, and the
/// conclusion `(2a+d)² = 2(a+d)² − e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationTrace {
    pub pair: SideDiameterPair,
    pub steps: Vec<DerivationStep>,
}

impl DerivationTrace {
    pub fn all_steps_hold(&self) -> bool {
        self.steps.iter().all(DerivationStep::holds)
    }

    pub fn conclusion(&self) -> &DerivationStep {
        self.steps.last().expect("trace has four steps")
    }

    /// Serializable form with decimal-string values.
    pub fn record(&self) -> TraceRecord {
        let (a, d) = (self.pair.side(), self.pair.diameter());
        TraceRecord {
            pair: PairRecord {
                a: a.to_string(),
                d: d.to_string(),
                e: self.pair.sign().as_i8(),
            },
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    justification: s.justification,
                    lhs_expr: s.lhs.to_string(),
                    rhs_expr: s.rhs.to_string(),
                    lhs_value: s.lhs_value.to_string(),
                    rhs_value: s.rhs_value.to_string(),
                })
                .collect(),
        }
    }
}

impl fmt::Display for DerivationTrace {
    /// Human-readable table, one line per step.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "pair (a, d) = {}, e = d^2 - 2a^2 = {} (arithmetic reading)",
            self.pair,
            self.pair.sign()
        )?;
        let width = self
            .steps
            .iter()
            .map(|s| s.lhs.to_string().len())
            .max()
            .unwrap_or(0);
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(
                f,
                "{}. [{:<23}] {:<width$} = {}    ({} = {})",
                i + 1,
                s.justification.tag(),
                s.lhs.to_string(),
                s.rhs,
                s.lhs_value,
                s.rhs_value,
            )?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairRecord {
    pub a: String,
    pub d: String,
    pub e: i8,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub justification: Justification,
    pub lhs_expr: String,
    pub rhs_expr: String,
    pub lhs_value: String,
    pub rhs_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceRecord {
    pub pair: PairRecord,
    pub steps: Vec<StepRecord>,
}

/// Replays the derivation of `(2a+d)² = 2(a+d)² − e` for a concrete pair.
pub fn trace_elegant(p: &SideDiameterPair) -> DerivationTrace {
    let e = p.sign();
    let a = || Expr::Num(p.side().clone());
    let d = || Expr::Num(p.diameter().clone());
    let two_a_d = || Expr::times(2, a()).add(d());
    let a_d = || a().add(d());
    let doubled_sides = || Expr::times(2, a().sq().add(a_d().sq()));

    // u = (2a+d)² + e, v = 2a², x = (a+d)², y = a²
    let u = || two_a_d().sq().plus_sign(e);
    let v = || Expr::times(2, a().sq());

    let steps = vec![
        DerivationStep::new(
            Justification::EuclidII10,
            two_a_d().sq().add(d().sq()),
            doubled_sides(),
        ),
        DerivationStep::new(
            Justification::HypothesisSubstitution,
            u().add(v()),
            doubled_sides(),
        ),
        DerivationStep::new(
            Justification::V19Subtraction,
            u(),
            Expr::times(2, a_d().sq()),
        ),
        DerivationStep::new(
            Justification::Conclusion,
            two_a_d().sq(),
            Expr::times(2, a_d().sq()).plus_sign(e.flipped()),
        ),
    ];
    DerivationTrace {
        pair: p.clone(),
        steps,
    }
}

/// [`trace_elegant`] for an unvalidated `(a, d)`.
pub fn trace_elegant_for(a: BigInt, d: BigInt) -> Result<DerivationTrace, IdentityError> {
    Ok(trace_elegant(&SideDiameterPair::new(a, d)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pair::{nth, seed};

    fn pair(a: i64, d: i64) -> SideDiameterPair {
        SideDiameterPair::new(a.into(), d.into()).unwrap()
    }

    #[test]
    fn catalog_verifies() {
        let catalog = identity_catalog();
        let names: Vec<_> = catalog.iter().map(|i| i.name).collect();
        assert_eq!(
            names,
            [
                "euclid_II_10",
                "euclid_II_9",
                "elegant_core",
                "encouraging",
                "descent_core"
            ]
        );
        for identity in &catalog {
            assert!(identity.verify().unwrap(), "{}", identity.name);
        }
        assert_eq!(catalog[0].rhs, catalog[3].rhs);
    }

    #[test]
    fn offset_breaks_ii_10() {
        let id = catalog_entry("euclid_II_10").unwrap();
        let shifted = &id.rhs + &id.rhs.ring().constant(1);
        assert!(!verify_identity(&id.lhs, &shifted).unwrap());
    }

    #[test]
    fn elegant_core_matches_negated_sign() {
        let ring = PolyRing::new(&["a", "d"]);
        let a = ring.var("a").unwrap();
        let d = ring.var("d").unwrap();
        let lhs = (a.scale(&two()) + d.clone()).pow(2) - (&a + &d).pow(2).scale(&two());
        let rhs = -(d.pow(2) - a.pow(2).scale(&two()));
        assert!(verify_identity(&lhs, &rhs).unwrap());

        let core = catalog_entry("elegant_core").unwrap();
        assert_eq!(
            core.lhs.eval_with(&[("a", 2), ("d", 3)]).unwrap(),
            BigInt::from(-1)
        );
        assert_eq!(
            core.rhs.eval_with(&[("a", 2), ("d", 3)]).unwrap(),
            BigInt::from(-1)
        );
    }

    #[test]
    fn verify_rejects_ring_mismatch() {
        let ii9 = catalog_entry("euclid_II_9").unwrap();
        let ii10 = catalog_entry("euclid_II_10").unwrap();
        assert!(verify_identity(&ii9.lhs, &ii10.lhs).is_err());
    }

    #[test]
    fn proportion_from_pair_two_three() {
        // u = (2a+d)² + 1, v = 2a², x = (a+d)², y = a² at (a, d) = (2, 3).
        let r = Rat::from_int(2);
        let c = proportion_check(&50.into(), &8.into(), &25.into(), &4.into(), &r).unwrap();
        assert!(c.premises_hold && c.conclusion_holds);
        let five = BigInt::from(5);
        assert!(proportion_subtract(&five, &five, &five, &five, &Rat::one()).unwrap());
    }

    #[test]
    fn proportion_implication_is_vacuous_without_premises() {
        let r = Rat::from_int(2);
        let c = proportion_check(&1.into(), &1.into(), &1.into(), &1.into(), &r).unwrap();
        assert!(!c.premises_hold);
        assert!(c.implication_holds());
    }

    #[test]
    fn proportion_zero_terms() {
        let r = Rat::from_int(2);
        let z = BigInt::zero();
        let one = BigInt::from(1);
        assert_eq!(
            proportion_subtract(&one, &one, &z, &one, &r),
            Err(IdentityError::ZeroDenominator)
        );
        assert!(proportion_subtract(&one, &one, &one, &z, &r).is_err());
        assert!(proportion_subtract(&one, &one, &one, &BigInt::from(-1), &r).is_err());
    }

    fn conclusion_values(p: &SideDiameterPair) -> (BigInt, BigInt) {
        let t = trace_elegant(p);
        assert!(t.all_steps_hold());
        let c = t.conclusion();
        (c.lhs_value.clone(), c.rhs_value.clone())
    }

    #[test]
    fn trace_conclusions() {
        let t = trace_elegant(&seed());
        assert_eq!(t.conclusion().lhs.to_string(), "(2*1 + 1)^2");
        assert_eq!(t.conclusion().rhs.to_string(), "2*(1 + 1)^2 + 1");
        assert_eq!(conclusion_values(&seed()), (9.into(), 9.into()));

        let t = trace_elegant(&pair(2, 3));
        assert_eq!(t.conclusion().rhs.to_string(), "2*(2 + 3)^2 - 1");
        assert_eq!(conclusion_values(&pair(2, 3)), (49.into(), 49.into()));

        assert_eq!(conclusion_values(&pair(12, 17)), (1681.into(), 1681.into()));
    }

    #[test]
    fn trace_steps_in_order() {
        let t = trace_elegant(&pair(2, 3));
        let tags: Vec<_> = t.steps.iter().map(|s| s.justification).collect();
        assert_eq!(
            tags,
            [
                Justification::EuclidII10,
                Justification::HypothesisSubstitution,
                Justification::V19Subtraction,
                Justification::Conclusion
            ]
        );
        let values: Vec<_> = t.steps.iter().map(|s| s.lhs_value.clone()).collect();
        assert_eq!(values, [58.into(), 58.into(), 50.into(), 49.into()]);
        assert_eq!(t.steps[1].lhs.to_string(), "(2*2 + 3)^2 + 1 + 2*2^2");
        assert_eq!(t.steps[2].lhs.to_string(), "(2*2 + 3)^2 + 1");
    }

    #[test]
    fn trace_record_round_trips_through_json() {
        let t = trace_elegant(&nth(3).unwrap());
        let json = serde_json::to_string(&t.record()).unwrap();
        assert!(json.contains("\"justification\":\"V.19-subtraction\""));
        assert!(json.contains("\"a\":\"5\""));
        let back: TraceRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t.record());
        assert_eq!(back.pair.e, -1);
    }

    #[test]
    fn trace_for_rejects_invalid() {
        assert!(matches!(
            trace_elegant_for(4.into(), 6.into()),
            Err(IdentityError::Pair(_))
        ));
    }

    #[test]
    fn pretty_trace_mentions_every_step() {
        let text = trace_elegant(&pair(2, 3)).to_string();
        for tag in [
            "II.10",
            "hypothesis-substitution",
            "V.19-subtraction",
            "conclusion",
        ] {
            assert!(text.contains(tag), "{text}");
        }
        assert_eq!(text.lines().count(), 5);
    }
}
