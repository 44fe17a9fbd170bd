//! Ordered-division semirings and the tropical-monomial instance.
//!
//! An ordered-division semiring is a tuple (F, 0, 1, ·, ≤, ÷) where ≤ is a
//! total order on F with maximum 1, (F, 0, 1, max, ·) is a commutative
//! semiring (so 0 is also the minimum of ≤), and ÷ is a partial inverse of
//! multiplication: (f ÷ g) · g = f whenever f ≤ g.
//!
//! The built-in carrier [`MonomialClass`] identifies a transition weight
//! `c · ε^α` with its asymptotic class as ε → 0: the coefficient is dropped
//! and only the exponent survives. Larger exponents vanish faster, so the
//! order reverses the order of exponents.

use num_rational::BigRational;
use num_traits::Zero as _;
use std::fmt;
use std::str::FromStr;

/// An ordered-division semiring: total order `le` with maximum `one`,
/// commutative semiring (zero, one, semiring_max, mul), and a division
/// satisfying `mul(div(f, g), g) == f` whenever `le(f, g)`.
///
/// Implementations must be exact: all laws are checked structurally in the
/// property suites, with no tolerance.
pub trait OrderedDivisionSemiring: Clone + Eq + fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;

    /// Semiring multiplication; commutative, associative, `one` neutral,
    /// `zero` absorbing.
    fn mul(&self, other: &Self) -> Self;

    /// Total order with minimum `zero` and maximum `one`.
    fn le(&self, other: &Self) -> bool;

    /// Division, defined when `self.le(other)`.
    ///
    /// # Panics
    /// Panics if `!self.le(other)`; that is a caller bug, the algorithms
    /// here only ever divide by an upper bound.
    fn div(&self, other: &Self) -> Self;

    /// The `le`-larger of the two arguments. This is the semiring addition.
    fn semiring_max(&self, other: &Self) -> Self {
        if self.le(other) {
            other.clone()
        } else {
            self.clone()
        }
    }

    fn is_zero(&self) -> bool {
        *self == Self::zero()
    }

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    /// Formal inverse of a product of nonzero elements, for carriers that
    /// extend to a group on their nonzero part. Returns `None` when the
    /// carrier has no such inverses; vanishing time scales then stay as a
    /// list of divisors.
    fn inverse_product(divisors: &[Self]) -> Option<Self> {
        let _ = divisors;
        None
    }
}

/// The asymptotic class of a monomial perturbation weight: either the class
/// of the zero map, or `Exp(α)` for the class of `ε ↦ ε^α`.
///
/// `Exp(0)` is the semiring one. Exponents are exact rationals kept in
/// reduced form, so structural equality is class equality. Off-diagonal
/// graph weights always have α ≥ 0 (the maps land in [0, 1]); negative
/// exponents only arise as formal inverses in vanishing time scales.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialClass {
    Zero,
    Exp(BigRational),
}

impl MonomialClass {
    /// Class of `ε ↦ ε^n`.
    pub fn exp(n: i64) -> Self {
        MonomialClass::Exp(BigRational::from_integer(n.into()))
    }

    /// Class of `ε ↦ ε^(num/den)`.
    ///
    /// # Panics
    /// Panics if `den == 0`.
    pub fn exp_ratio(num: i64, den: i64) -> Self {
        MonomialClass::Exp(BigRational::new(num.into(), den.into()))
    }

    pub fn from_exponent(alpha: BigRational) -> Self {
        MonomialClass::Exp(alpha)
    }

    /// The exponent, or `None` for the zero class.
    pub fn exponent(&self) -> Option<&BigRational> {
        match self {
            MonomialClass::Zero => None,
            MonomialClass::Exp(a) => Some(a),
        }
    }
}

impl OrderedDivisionSemiring for MonomialClass {
    fn zero() -> Self {
        MonomialClass::Zero
    }

    fn one() -> Self {
        MonomialClass::Exp(BigRational::zero())
    }

    fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (MonomialClass::Zero, _) | (_, MonomialClass::Zero) => MonomialClass::Zero,
            (MonomialClass::Exp(a), MonomialClass::Exp(b)) => MonomialClass::Exp(a + b),
        }
    }

    fn le(&self, other: &Self) -> bool {
        match (self, other) {
            (MonomialClass::Zero, _) => true,
            (MonomialClass::Exp(_), MonomialClass::Zero) => false,
            // ε^α ≤ ε^β asymptotically iff β ≤ α: larger exponents are smaller.
            (MonomialClass::Exp(a), MonomialClass::Exp(b)) => b <= a,
        }
    }

    fn div(&self, other: &Self) -> Self {
        assert!(
            self.le(other),
            "division precondition violated: {self} ≤ {other} does not hold"
        );
        match (self, other) {
            // Any value satisfies (0 ÷ 0) · 0 = 0; picking one keeps the
            // division law checkable without a special case.
            (MonomialClass::Zero, MonomialClass::Zero) => Self::one(),
            (MonomialClass::Zero, MonomialClass::Exp(_)) => MonomialClass::Zero,
            (MonomialClass::Exp(a), MonomialClass::Exp(b)) => MonomialClass::Exp(a - b),
            (MonomialClass::Exp(_), MonomialClass::Zero) => unreachable!("guarded by le"),
        }
    }

    fn inverse_product(divisors: &[Self]) -> Option<Self> {
        let mut total = BigRational::zero();
        for d in divisors {
            match d {
                MonomialClass::Zero => return None,
                MonomialClass::Exp(a) => total += a,
            }
        }
        Some(MonomialClass::Exp(-total))
    }
}

impl fmt::Display for MonomialClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MonomialClass::Zero => write!(f, "0"),
            MonomialClass::Exp(a) if a.is_zero() => write!(f, "1"),
            MonomialClass::Exp(a) => write!(f, "eps^{a}"),
        }
    }
}

/// Parses an exact rational from `"p"`, `"-p"` or `"p/q"` notation.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    BigRational::from_str(s.trim()).map_err(|e| format!("invalid rational {s:?}: {e}"))
}
