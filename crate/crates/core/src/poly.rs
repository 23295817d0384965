//! Multivariate polynomials with integer coefficients in canonical form.
//!
//! A polynomial lives in a ring fixed by an ordered list of variable names.
//! Terms are kept in a map from exponent vectors to nonzero coefficients, so
//! two polynomials over the same ring are equal as polynomials exactly when
//! their term maps are equal. That is what makes [`Poly::is_zero`] a proof
//! of an identity rather than a sample check.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live over different variable lists: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("no value assigned to variable `{0}`")]
    MissingVariable(String),
    #[error("`{0}` is not a variable of this ring")]
    UnknownVariable(String),
}

/// Exponent vector over the ring's variable list.
///
/// Ordered graded-lexicographically: total degree first, then the exponent
/// of the earliest variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(x, y)| x + y).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A fixed, ordered list of variables. Cheap to clone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Arc<[String]>,
}

impl PolyRing {
    pub fn new<S: AsRef<str>>(vars: &[S]) -> Self {
        PolyRing {
            vars: vars.iter().map(|v| v.as_ref().to_owned()).collect(),
        }
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn zero(&self) -> Poly {
        Poly {
            ring: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: impl Into<BigInt>) -> Poly {
        let mut p = self.zero();
        p.add_term(Monomial::one(self.vars.len()), c.into());
        p
    }

    /// The polynomial consisting of the single variable `name`.
    pub fn var(&self, name: &str) -> Result<Poly, PolyError> {
        let pos = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_owned()))?;
        let mut exps = vec![0; self.vars.len()];
        exps[pos] = 1;
        let mut p = self.zero();
        p.add_term(Monomial(exps), BigInt::one());
        Ok(p)
    }

    /// Builds a polynomial from `(coefficient, exponents)` pairs, combining
    /// like terms.
    pub fn from_terms<I>(&self, terms: I) -> Poly
    where
        I: IntoIterator<Item = (BigInt, Vec<u32>)>,
    {
        let mut p = self.zero();
        for (c, exps) in terms {
            assert_eq!(exps.len(), self.vars.len(), "exponent vector length");
            p.add_term(Monomial(exps), c);
        }
        p
    }

    fn same(&self, other: &PolyRing) -> bool {
        Arc::ptr_eq(&self.vars, &other.vars) || self.vars == other.vars
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly {
    ring: PolyRing,
    terms: BTreeMap<Monomial, BigInt>,
}

impl Poly {
    pub fn ring(&self) -> &PolyRing {
        &self.ring
    }

    pub fn vars(&self) -> &[String] {
        self.ring.vars()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_ring(&self, other: &Poly) -> Result<(), PolyError> {
        if self.ring.same(&other.ring) {
            Ok(())
        } else {
            Err(PolyError::VariableMismatch {
                left: self.vars().to_vec(),
                right: other.vars().to_vec(),
            })
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_ring(other)?;
        let mut out = self.ring.zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: &BigInt) -> Poly {
        let mut out = self.ring.zero();
        if k.is_zero() {
            return out;
        }
        out.terms = self.terms.iter().map(|(m, c)| (m.clone(), c * k)).collect();
        out
    }

    pub fn pow(&self, exp: u32) -> Poly {
        let mut result = self.ring.constant(1);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact value under `assignment`. Only variables that actually occur in
    /// the polynomial need a value.
    pub fn eval(&self, assignment: &HashMap<String, BigInt>) -> Result<BigInt, PolyError> {
        let vars = self.vars();
        let mut used = vec![false; vars.len()];
        for m in self.terms.keys() {
            for (i, e) in m.0.iter().enumerate() {
                used[i] |= *e > 0;
            }
        }
        let values = vars
            .iter()
            .zip(&used)
            .map(|(v, &u)| match assignment.get(v) {
                Some(x) => Ok(x.clone()),
                None if !u => Ok(BigInt::zero()),
                None => Err(PolyError::MissingVariable(v.clone())),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.eval_slice(&values))
    }

    /// Convenience form of [`Poly::eval`] taking `(name, value)` pairs.
    pub fn eval_with<V: Into<BigInt> + Clone>(
        &self,
        assignment: &[(&str, V)],
    ) -> Result<BigInt, PolyError> {
        let map = assignment
            .iter()
            .map(|(k, v)| ((*k).to_owned(), v.clone().into()))
            .collect();
        self.eval(&map)
    }

    /// Value with `values[i]` substituted for the `i`-th ring variable.
    pub fn eval_slice(&self, values: &[BigInt]) -> BigInt {
        assert_eq!(values.len(), self.vars().len(), "one value per variable");
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter().zip(values).fold(c.clone(), |acc, (&e, x)| {
                    acc * num_traits::pow(x.clone(), e as usize)
                })
            })
            .sum()
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;

            /// Panics if the operands live in different rings; use the
            /// `try_` form to get an error instead.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl $tr<Poly> for Poly {
            type Output = Poly;

            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        self.scale(&BigInt::from(-1))
    }
}

impl Neg for Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        -&self
    }
}

impl fmt::Display for Poly {
    /// Highest monomial first, e.g. `a^2 + 2*a*d + d^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let sign = if c.is_negative() { "-" } else { "+" };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            let mag = c.abs();
            let factors: Vec<String> =
                m.0.iter()
                    .zip(self.vars())
                    .filter(|(e, _)| **e > 0)
                    .map(|(&e, v)| {
                        if e == 1 {
                            v.clone()
                        } else {
                            format!("{v}^{e}")
                        }
                    })
                    .collect();
            if factors.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                f.write_str(&factors.join("*"))?;
            } else {
                write!(f, "{mag}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}
