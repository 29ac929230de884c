//! Sparse multivariate polynomials with exact coefficients.
//!
//! Monomials are exponent vectors ordered by graded reverse lexicographic
//! order with x1 > x2 > ... > xn; that order fixes the canonical text form
//! used in JSON payloads.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::{parse_scalar, FieldKind, Scalar};

/// Exponent vector of a monomial in n variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    /// x_{i+1} for 0-based `i`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    /// Exact division; `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            if a < b {
                return None;
            }
            out.push(a - b);
        }
        Some(Monomial(out))
    }
}

/// Graded reverse lexicographic order: higher total degree wins; ties break
/// by the last differing exponent, smaller exponent there being greater.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        for i in (0..self.0.len()).rev() {
            if self.0[i] != other.0[i] {
                return if self.0[i] < other.0[i] {
                    Ordering::Greater
                } else {
                    Ordering::Less
                };
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of the given total degree, largest first (grevlex).
pub fn monomials_of_degree(nvars: usize, degree: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    if nvars == 0 {
        if degree == 0 {
            out.push(Monomial(vec![]));
        }
        return out;
    }
    let mut cur = vec![0u32; nvars];
    fn rec(nvars: usize, i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if i == nvars - 1 {
            cur[i] = left;
            out.push(Monomial(cur.clone()));
            return;
        }
        for e in 0..=left {
            cur[i] = e;
            rec(nvars, i + 1, left - e, cur, out);
        }
        cur[i] = 0;
    }
    rec(nvars, 0, degree, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Homogeneity {
    Zero,
    Degree(u32),
    Mixed,
}

/// A sparse polynomial: monomial -> nonzero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparsePoly {
    pub nvars: usize,
    pub field: FieldKind,
    terms: BTreeMap<Monomial, Scalar>,
}

impl SparsePoly {
    pub fn zero(nvars: usize, field: FieldKind) -> Self {
        SparsePoly {
            nvars,
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        let mut p = SparsePoly::zero(nvars, c.kind());
        p.add_term(Monomial::one(nvars), c);
        p
    }

    pub fn var(nvars: usize, i: usize, field: FieldKind) -> Self {
        let mut p = SparsePoly::zero(nvars, field);
        p.add_term(Monomial::var(nvars, i), field.one());
        p
    }

    pub fn monomial(nvars: usize, m: Monomial, c: Scalar) -> Self {
        let mut p = SparsePoly::zero(nvars, c.kind());
        p.add_term(m, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in descending order (leading term first).
    pub fn terms_desc(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coeff(&self, m: &Monomial) -> Option<&Scalar> {
        self.terms.get(m)
    }

    pub fn add_term(&mut self, m: Monomial, c: Scalar) {
        debug_assert_eq!(m.0.len(), self.nvars);
        debug_assert_eq!(c.kind(), self.field);
        if c.is_zero() {
            return;
        }
        match self.terms.remove(&m) {
            None => {
                self.terms.insert(m, c);
            }
            Some(old) => {
                let s = old.add(&c);
                if !s.is_zero() {
                    self.terms.insert(m, s);
                }
            }
        }
    }

    pub fn add(&self, other: &SparsePoly) -> Result<SparsePoly> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch(self.nvars, other.nvars));
        }
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars, self.field);
        for (m, c) in &self.terms {
            out.terms.insert(m.clone(), c.neg());
        }
        out
    }

    pub fn sub(&self, other: &SparsePoly) -> Result<SparsePoly> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &SparsePoly) -> Result<SparsePoly> {
        if self.nvars != other.nvars {
            return Err(Error::VarCountMismatch(self.nvars, other.nvars));
        }
        let mut out = SparsePoly::zero(self.nvars, self.field);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                out.add_term(m1.mul(m2), c1.mul(c2));
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Scalar) -> SparsePoly {
        let mut out = SparsePoly::zero(self.nvars, self.field);
        for (m, v) in &self.terms {
            out.add_term(m.clone(), v.mul(c));
        }
        out
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    pub fn homogeneity(&self) -> Homogeneity {
        let mut degs = self.terms.keys().map(|m| m.degree());
        match degs.next() {
            None => Homogeneity::Zero,
            Some(d) => {
                if degs.all(|e| e == d) {
                    Homogeneity::Degree(d)
                } else {
                    Homogeneity::Mixed
                }
            }
        }
    }

    /// Substitutes `images[i]` for x_{i+1}. All images must share a variable
    /// count, which becomes the variable count of the result.
    pub fn substitute(&self, images: &[SparsePoly]) -> Result<SparsePoly> {
        if images.len() != self.nvars {
            return Err(Error::DimensionMismatch(format!(
                "substitution provides {} images for {} variables",
                images.len(),
                self.nvars
            )));
        }
        let out_nvars = images.first().map(|p| p.nvars).unwrap_or(0);
        for im in images {
            if im.nvars != out_nvars {
                return Err(Error::VarCountMismatch(im.nvars, out_nvars));
            }
        }
        let mut out = SparsePoly::zero(out_nvars, self.field);
        for (m, c) in &self.terms {
            let mut acc = SparsePoly::constant(out_nvars, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    acc = acc.mul(&images[i])?;
                }
            }
            out = out.add(&acc)?;
        }
        Ok(out)
    }

    /// Coefficientwise reduction of a rational polynomial mod p.
    pub fn reduce_mod(&self, p: u64) -> Result<SparsePoly> {
        let mut out = SparsePoly::zero(self.nvars, FieldKind::Fp(p));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }
}

impl fmt::Display for SparsePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms_desc().enumerate() {
            let (lead, c_abs) = match c {
                Scalar::Rat(r) if r.numer().sign() == num_bigint::Sign::Minus => {
                    (true, c.neg())
                }
                _ => (false, c.clone()),
            };
            if k == 0 {
                if lead {
                    write!(f, "-")?;
                }
            } else if lead {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote = false;
            if !c_abs.is_one() || m.is_one() {
                write!(f, "{c_abs}")?;
                wrote = true;
            }
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if wrote {
                    write!(f, "*")?;
                }
                write!(f, "x{}", i + 1)?;
                if e > 1 {
                    write!(f, "^{e}")?;
                }
                wrote = true;
            }
        }
        Ok(())
    }
}

/// Parses the canonical polynomial text form produced by `Display`.
pub fn parse_poly(s: &str, nvars: usize, field: &FieldKind) -> Result<SparsePoly> {
    let mut out = SparsePoly::zero(nvars, *field);
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    if s == "0" {
        return Ok(out);
    }
    // split into signed terms at top level
    let mut terms: Vec<(bool, String)> = Vec::new();
    let mut cur = String::new();
    let mut neg = false;
    let mut prev_nonspace = ' ';
    for ch in s.chars() {
        match ch {
            '+' | '-' if !cur.trim().is_empty() && !matches!(prev_nonspace, '+' | '-' | '*' | '/' | '^') => {
                terms.push((neg, cur.trim().to_string()));
                cur = String::new();
                neg = ch == '-';
            }
            '-' if cur.trim().is_empty() && !neg => {
                neg = true;
            }
            _ => cur.push(ch),
        }
        if !ch.is_whitespace() {
            prev_nonspace = ch;
        }
    }
    if !cur.trim().is_empty() {
        terms.push((neg, cur.trim().to_string()));
    }
    for (negated, term) in terms {
        let (m, c) = parse_term(&term, nvars, field)?;
        out.add_term(m, if negated { c.neg() } else { c });
    }
    Ok(out)
}

fn parse_term(term: &str, nvars: usize, field: &FieldKind) -> Result<(Monomial, Scalar)> {
    let mut coeff = field.one();
    let mut mono = Monomial::one(nvars);
    // "k mod p" contains a space-separated modulus; peel it off first
    let mut rest = term.trim();
    if let Some(idx) = rest.find("mod") {
        let after = &rest[idx + 3..];
        let ws = after.len() - after.trim_start().len();
        let digits = after
            .trim_start()
            .chars()
            .take_while(|c| c.is_ascii_digit())
            .count();
        if digits == 0 {
            return Err(Error::Parse(format!("bad modular coefficient in {term:?}")));
        }
        let cut = idx + 3 + ws + digits;
        let (head, tail) = rest.split_at(cut);
        coeff = parse_scalar(head, field)?;
        rest = tail.trim_start().trim_start_matches('*').trim_start();
        if rest.is_empty() {
            return Ok((mono, coeff));
        }
    }
    for factor in rest.split('*') {
        let f = factor.trim();
        if f.is_empty() {
            continue;
        }
        if let Some(v) = f.strip_prefix('x') {
            let (idx_s, exp_s) = match v.split_once('^') {
                Some((i, e)) => (i, Some(e)),
                None => (v, None),
            };
            let idx: usize = idx_s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable {f:?}")))?;
            if idx == 0 || idx > nvars {
                return Err(Error::Parse(format!(
                    "variable x{idx} out of range 1..={nvars}"
                )));
            }
            let exp: u32 = match exp_s {
                Some(e) => e
                    .trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in {f:?}")))?,
                None => 1,
            };
            mono.0[idx - 1] += exp;
        } else {
            coeff = coeff.mul(&parse_scalar(f, field)?);
        }
    }
    Ok((mono, coeff))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldKind {
        FieldKind::Rational
    }

    #[test]
    fn grevlex_order_quadratics() {
        // x1^2 > x1x2 > x2^2 > x1x3 > x2x3 > x3^2
        let ms = monomials_of_degree(3, 2);
        let shown: Vec<String> = ms
            .iter()
            .map(|m| SparsePoly::monomial(3, m.clone(), q().one()).to_string())
            .collect();
        assert_eq!(shown, ["x1^2", "x1*x2", "x2^2", "x1*x3", "x2*x3", "x3^2"]);
    }

    #[test]
    fn monomial_product() {
        let f = q();
        let x1 = SparsePoly::var(2, 0, f);
        let x2 = SparsePoly::var(2, 1, f);
        assert_eq!(x1.mul(&x2).unwrap().to_string(), "x1*x2");
    }

    #[test]
    fn annihilator() {
        let f = q();
        let p = SparsePoly::var(2, 0, f);
        let z = SparsePoly::zero(2, f);
        assert!(p.mul(&z).unwrap().is_zero());
    }

    #[test]
    fn difference_of_squares() {
        let f = q();
        let x1 = SparsePoly::var(2, 0, f);
        let x2 = SparsePoly::var(2, 1, f);
        let s = x1.add(&x2).unwrap();
        let d = x1.sub(&x2).unwrap();
        let prod = s.mul(&d).unwrap();
        assert_eq!(prod.to_string(), "x1^2 - x2^2");
        // schoolbook oracle: expand term-by-term
        let oracle = x1
            .mul(&x1)
            .unwrap()
            .sub(&x2.mul(&x2).unwrap())
            .unwrap();
        assert_eq!(prod, oracle);
    }

    #[test]
    fn degree_additivity() {
        let f = q();
        let x1 = SparsePoly::var(3, 0, f);
        let x3 = SparsePoly::var(3, 2, f);
        let p = x1.add(&x3).unwrap();
        let q2 = x1.mul(&x1).unwrap().add(&x3).unwrap();
        assert_eq!(
            p.mul(&q2).unwrap().degree().unwrap(),
            p.degree().unwrap() + q2.degree().unwrap()
        );
    }

    #[test]
    fn variable_count_mismatch() {
        let f = q();
        let a = SparsePoly::var(2, 0, f);
        let b = SparsePoly::var(3, 0, f);
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn parse_display_roundtrip() {
        let cases = [
            "x1^2 - x2^2",
            "x1*x2 + 2*x3^2",
            "-1/2*x1 + x2",
            "3",
            "0",
            "x1^3*x2",
        ];
        for s in cases {
            let p = parse_poly(s, 3, &q()).unwrap();
            assert_eq!(p.to_string(), s, "roundtrip of {s:?}");
        }
        let f5 = FieldKind::Fp(5);
        for s in ["x1 + 4 mod 5", "2 mod 5*x1*x2", "3 mod 5"] {
            let p = parse_poly(s, 2, &f5).unwrap();
            assert_eq!(p.to_string(), s, "roundtrip of {s:?}");
        }
    }

    #[test]
    fn substitution() {
        let f = q();
        // x1*x2 under x1 -> y1^2, x2 -> y2 (in 2 target vars)
        let p = SparsePoly::var(2, 0, f).mul(&SparsePoly::var(2, 1, f)).unwrap();
        let im = vec![
            SparsePoly::var(2, 0, f).mul(&SparsePoly::var(2, 0, f)).unwrap(),
            SparsePoly::var(2, 1, f),
        ];
        assert_eq!(p.substitute(&im).unwrap().to_string(), "x1^2*x2");
    }

    #[test]
    fn homogeneity_detection() {
        let f = q();
        let x1 = SparsePoly::var(2, 0, f);
        let one = SparsePoly::constant(2, f.one());
        assert_eq!(x1.homogeneity(), Homogeneity::Degree(1));
        assert_eq!(
            x1.add(&one).unwrap().homogeneity(),
            Homogeneity::Mixed
        );
        assert_eq!(SparsePoly::zero(2, f).homogeneity(), Homogeneity::Zero);
    }
}
