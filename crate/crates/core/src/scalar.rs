//! Exact field scalars: arbitrary-precision rationals and prime fields GF(p).
//!
//! Every container in this crate works over a single field selected at
//! construction time via [`FieldKind`]. Rationals are kept in lowest terms
//! with positive denominator (guaranteed by `num-rational`); GF(p) residues
//! are canonical representatives in `[0, p)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground field a computation runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FieldKind {
    /// The rational numbers, exact.
    Rational,
    /// The prime field GF(p) for a small prime `p`.
    Fp(u64),
}

impl FieldKind {
    pub fn zero(&self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Rat(BigRational::zero()),
            FieldKind::Fp(p) => Scalar::Fp { val: 0, p: *p },
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Rat(BigRational::one()),
            FieldKind::Fp(p) => Scalar::Fp { val: 1, p: *p },
        }
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            FieldKind::Rational => Scalar::Rat(BigRational::from(BigInt::from(v))),
            FieldKind::Fp(p) => {
                let r = v.rem_euclid(*p as i64) as u64;
                Scalar::Fp { val: r, p: *p }
            }
        }
    }

    /// Parses "q"/"Q"/"rational" or a prime such as "2".
    pub fn parse(s: &str) -> Result<FieldKind> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") || t.eq_ignore_ascii_case("rational") {
            return Ok(FieldKind::Rational);
        }
        let t = t
            .trim_start_matches("GF(")
            .trim_start_matches("gf(")
            .trim_end_matches(')');
        let p: u64 = t
            .parse()
            .map_err(|_| Error::Parse(format!("unrecognized field {s:?}")))?;
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("{p} is not prime")));
        }
        Ok(FieldKind::Fp(p))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Rational => write!(f, "Q"),
            FieldKind::Fp(p) => write!(f, "GF({p})"),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of the selected ground field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Fp { val: u64, p: u64 },
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Rat(_) => FieldKind::Rational,
            Scalar::Fp { p, .. } => FieldKind::Fp(*p),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Fp { val, .. } => *val == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Fp { val, .. } => *val == 1,
        }
    }

    fn check_same(&self, other: &Scalar) {
        assert_eq!(
            self.kind(),
            other.kind(),
            "scalar arithmetic across different fields"
        );
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a + b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: (a + b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Fp { val, p } => Scalar::Fp {
                val: if *val == 0 { 0 } else { p - val },
                p: *p,
            },
        }
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        self.check_same(other);
        match (self, other) {
            (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a * b),
            (Scalar::Fp { val: a, p }, Scalar::Fp { val: b, .. }) => Scalar::Fp {
                val: (a * b) % p,
                p: *p,
            },
            _ => unreachable!(),
        }
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Scalar {
        match self {
            Scalar::Rat(a) => {
                assert!(!a.is_zero(), "inverse of zero");
                Scalar::Rat(a.recip())
            }
            Scalar::Fp { val, p } => {
                assert!(*val != 0, "inverse of zero");
                Scalar::Fp {
                    val: mod_inv(*val, *p),
                    p: *p,
                }
            }
        }
    }

    pub fn div(&self, other: &Scalar) -> Scalar {
        self.mul(&other.inv())
    }

    /// Reduces a rational scalar modulo `p`; errors when the denominator
    /// vanishes mod p. GF(q) scalars are accepted only when q = p.
    pub fn reduce_mod(&self, p: u64) -> Result<Scalar> {
        match self {
            Scalar::Rat(r) => {
                let pp = BigInt::from(p);
                let num = r.numer().mod_floor_u64(&pp);
                let den = r.denom().mod_floor_u64(&pp);
                if den == 0 {
                    return Err(Error::InvalidInput(format!(
                        "denominator of {self} vanishes mod {p}"
                    )));
                }
                Ok(Scalar::Fp {
                    val: (num * mod_inv(den, p)) % p,
                    p,
                })
            }
            Scalar::Fp { val, p: q } => {
                if *q == p {
                    Ok(Scalar::Fp { val: *val, p })
                } else {
                    Err(Error::InvalidInput(format!(
                        "cannot reduce GF({q}) value mod {p}"
                    )))
                }
            }
        }
    }
}

trait ModFloorU64 {
    fn mod_floor_u64(&self, p: &BigInt) -> u64;
}

impl ModFloorU64 for BigInt {
    fn mod_floor_u64(&self, p: &BigInt) -> u64 {
        use num_integer::Integer;
        let r = self.mod_floor(p);
        let (_, digits) = r.to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

fn mod_inv(a: u64, p: u64) -> u64 {
    // extended Euclid on (a, p), p prime
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, a as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    assert_eq!(r, 1, "{a} not invertible mod {p}");
    t.rem_euclid(p as i128) as u64
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { val, p } => write!(f, "{val} mod {p}"),
        }
    }
}

/// Parses the canonical text form: "num", "num/den" or "k mod p".
/// The field kind disambiguates plain integers.
pub fn parse_scalar(s: &str, field: &FieldKind) -> Result<Scalar> {
    let t = s.trim();
    if let Some((k, p)) = t.split_once("mod") {
        let val: i64 = k
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad residue in {s:?}")))?;
        let p: u64 = p
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in {s:?}")))?;
        if *field != FieldKind::Fp(p) {
            return Err(Error::Parse(format!(
                "scalar {s:?} does not belong to {field}"
            )));
        }
        return Ok(FieldKind::Fp(p).from_i64(val));
    }
    match field {
        FieldKind::Rational => {
            let (num, den) = match t.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (t, "1"),
            };
            let num = BigInt::from_str(num)
                .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
            let den = BigInt::from_str(den)
                .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
            if den.is_zero() {
                return Err(Error::Parse("zero denominator".into()));
            }
            Ok(Scalar::Rat(BigRational::new(num, den)))
        }
        FieldKind::Fp(_) => {
            let v: i64 = t
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue {s:?}")))?;
            Ok(field.from_i64(v))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_lowest_terms() {
        let f = FieldKind::Rational;
        let half = f.from_i64(2).div(&f.from_i64(4));
        assert_eq!(half.to_string(), "1/2");
        let neg = f.from_i64(-3).div(&f.from_i64(6));
        assert_eq!(neg.to_string(), "-1/2");
    }

    #[test]
    fn fp_canonical_range() {
        let f = FieldKind::Fp(5);
        assert_eq!(f.from_i64(-1), f.from_i64(4));
        assert_eq!(f.from_i64(7).to_string(), "2 mod 5");
        let two = f.from_i64(2);
        assert!(two.mul(&two.inv()).is_one());
    }

    #[test]
    fn mod_inverse_small_primes() {
        for p in [2u64, 3, 5, 7, 11, 101] {
            for a in 1..p.min(40) {
                assert_eq!((a * mod_inv(a, p)) % p, 1);
            }
        }
    }

    #[test]
    fn reduce_rational_mod_p() {
        let f = FieldKind::Rational;
        let x = f.from_i64(1).div(&f.from_i64(2)); // 1/2
        let r = x.reduce_mod(5).unwrap();
        assert_eq!(r, FieldKind::Fp(5).from_i64(3)); // 2*3 = 6 = 1 mod 5
        assert!(x.reduce_mod(2).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["3", "-3/2", "0"] {
            let v = parse_scalar(s, &FieldKind::Rational).unwrap();
            assert_eq!(v.to_string(), s);
        }
        let v = parse_scalar("4 mod 7", &FieldKind::Fp(7)).unwrap();
        assert_eq!(v.to_string(), "4 mod 7");
    }

    #[test]
    fn field_kind_parse() {
        assert_eq!(FieldKind::parse("q").unwrap(), FieldKind::Rational);
        assert_eq!(FieldKind::parse("GF(3)").unwrap(), FieldKind::Fp(3));
        assert_eq!(FieldKind::parse("5").unwrap(), FieldKind::Fp(5));
        assert!(FieldKind::parse("4").is_err());
    }
}
