//! Exact scalar arithmetic over the rationals and over prime fields GF(p).
//!
//! Every scalar carries the field it lives in, and all binary operations
//! insist on matching fields. Rationals are arbitrary-precision reduced
//! fractions; GF(p) values are residues in `[0, p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Roots;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The field a computation runs over: the rationals, or GF(p) for a prime p.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldSpec {
    Rationals,
    PrimeField(u64),
}

impl FieldSpec {
    /// The field of rational numbers.
    pub fn rationals() -> Self {
        FieldSpec::Rationals
    }

    /// The prime field GF(p). Rejects non-prime moduli.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(FieldSpec::PrimeField(p))
        } else {
            Err(Error::NonPrimeModulus(p))
        }
    }

    /// 0 for the rationals, p for GF(p).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::PrimeField(p) => *p,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::PrimeField(p) => Scalar::Residue {
                modulus: *p,
                value: 0,
            },
        }
    }

    pub fn one(&self) -> Scalar {
        self.integer(1)
    }

    /// The canonical image of an integer in this field.
    pub fn integer(&self, n: i64) -> Scalar {
        self.big_integer(&BigInt::from(n))
    }

    /// The canonical image of an arbitrary-precision integer in this field.
    pub fn big_integer(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(*p);
                let mut r = n % &m;
                if r.is_negative() {
                    r += &m;
                }
                let (_, digits) = r.to_u64_digits();
                Scalar::Residue {
                    modulus: *p,
                    value: digits.first().copied().unwrap_or(0),
                }
            }
        }
    }

    /// The reduced fraction n/d. Errors on d = 0; over GF(p) this is n * d^-1.
    pub fn fraction(&self, n: i64, d: i64) -> Result<Scalar> {
        self.integer(n).try_div(&self.integer(d))
    }

    /// Parses the textual scalar encoding: `n` or `n/d` over the rationals,
    /// a residue in `[0, p)` over GF(p).
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        match self {
            FieldSpec::Rationals => {
                let (num_str, den_str) = match s.find('/') {
                    Some(pos) => (&s[..pos], Some((pos, &s[pos + 1..]))),
                    None => (s, None),
                };
                let num = BigInt::from_str(num_str).map_err(|_| {
                    Error::Parse(format!("invalid integer {:?} at offset 0 in {:?}", num_str, s))
                })?;
                match den_str {
                    None => Ok(Scalar::Rational(BigRational::from_integer(num))),
                    Some((pos, d)) => {
                        let den = BigInt::from_str(d).map_err(|_| {
                            Error::Parse(format!(
                                "invalid denominator {:?} at offset {} in {:?}",
                                d,
                                pos + 1,
                                s
                            ))
                        })?;
                        if den.is_negative() || den.is_zero() {
                            return Err(Error::Parse(format!(
                                "denominator must be positive at offset {} in {:?}",
                                pos + 1,
                                s
                            )));
                        }
                        Ok(Scalar::Rational(BigRational::new(num, den)))
                    }
                }
            }
            FieldSpec::PrimeField(p) => {
                let value = u64::from_str(s).map_err(|_| {
                    Error::Parse(format!("invalid residue {:?} at offset 0", s))
                })?;
                if value >= *p {
                    return Err(Error::Parse(format!(
                        "residue {} out of range [0, {})",
                        value, p
                    )));
                }
                Ok(Scalar::Residue {
                    modulus: *p,
                    value,
                })
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "q"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{}", p),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts the flag syntax `q` or `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        if s == "q" {
            return Ok(FieldSpec::Rationals);
        }
        if let Some(p) = s.strip_prefix("fp:") {
            let p = u64::from_str(p)
                .map_err(|_| Error::Parse(format!("invalid modulus {:?} in field {:?}", p, s)))?;
            return FieldSpec::prime(p);
        }
        Err(Error::Parse(format!(
            "unknown field {:?} (expected \"q\" or \"fp:<prime>\")",
            s
        )))
    }
}

/// An immutable exact field element: a reduced fraction over the rationals,
/// or a residue in `[0, p)` over GF(p). Equality is canonical-representation
/// equality, so scalars from different fields never compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { modulus: u64, value: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// The underlying integer for scalars with trivial denominator.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.denom().is_one() => Some(r.numer().clone()),
            _ => None,
        }
    }

    fn check_same_field(&self, rhs: &Scalar) -> Result<()> {
        let (a, b) = (self.field(), rhs.field());
        if a == b {
            Ok(())
        } else {
            Err(Error::FieldMismatch(a, b))
        }
    }

    /// Canonical sum. Errors if the operands live in different fields.
    pub fn try_add(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Residue { modulus, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    modulus: *modulus,
                    value: ((*a as u128 + *b as u128) % *modulus as u128) as u64,
                }
            }
            _ => unreachable!("fields already matched"),
        })
    }

    /// Canonical difference. Errors if the operands live in different fields.
    pub fn try_sub(&self, rhs: &Scalar) -> Result<Scalar> {
        self.try_add(&rhs.clone().neg())
    }

    /// Canonical product. Errors if the operands live in different fields.
    pub fn try_mul(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        Ok(match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Residue { modulus, value: a }, Scalar::Residue { value: b, .. }) => {
                Scalar::Residue {
                    modulus: *modulus,
                    value: ((*a as u128 * *b as u128) % *modulus as u128) as u64,
                }
            }
            _ => unreachable!("fields already matched"),
        })
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { modulus, value } => Scalar::Residue {
                modulus: *modulus,
                value: mod_inverse(*value, *modulus),
            },
        })
    }

    /// Quotient `self / rhs`. Errors on zero divisor or field mismatch.
    pub fn try_div(&self, rhs: &Scalar) -> Result<Scalar> {
        self.check_same_field(rhs)?;
        self.try_mul(&rhs.inv()?)
    }

    /// Additive inverse.
    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational(-r),
            Scalar::Residue { modulus, value } => Scalar::Residue {
                modulus: *modulus,
                value: if *value == 0 { 0 } else { modulus - value },
            },
        }
    }
}

/// In-field operators for code that has already established a common field
/// (e.g. entries of one matrix). They panic on a field mismatch; fallible
/// callers use the `try_*` methods instead.
impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar addition across fields")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar subtraction across fields")
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar multiplication across fields")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl fmt::Display for Scalar {
    /// The canonical text encoding: `n` or `n/d` over the rationals,
    /// the residue in decimal over GF(p).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, .. } => write!(f, "{}", value),
        }
    }
}

/// Trial division; the moduli in use are small.
fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    if n.is_multiple_of(3) {
        return n == 3;
    }
    let limit = n.sqrt();
    let mut d = 5;
    while d <= limit {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// Inverse of `a` modulo prime `p` by the extended Euclidean algorithm.
fn mod_inverse(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1, "inverse of a nonzero residue modulo a prime");
    ((t % p as i128 + p as i128) % p as i128) as u64
}
