use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Integer Laurent polynomial in A; zero coefficients are never stored.
///
/// Coefficient arithmetic wraps modulo 2^64. State sums pass through
/// partial sums far larger than the final coefficients, and ring arithmetic
/// modulo 2^64 returns every final coefficient of magnitude below 2^63 exactly.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1, 0)
    }

    pub fn monomial(coeff: i64, exp: i32) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(coeff, exp);
        p
    }

    /// δ = -A² - A⁻², the value of a split unknotted circle.
    pub fn delta() -> Self {
        LaurentPoly::monomial(-1, 2) + LaurentPoly::monomial(-1, -2)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exp: i32) -> i64 {
        self.terms.get(&exp).copied().unwrap_or(0)
    }

    /// (exponent, coefficient) pairs, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.terms.iter().map(|(&e, &c)| (e, c))
    }

    pub fn add_term(&mut self, coeff: i64, exp: i32) {
        if coeff == 0 {
            return;
        }
        let c = self.terms.entry(exp).or_insert(0);
        *c = c.wrapping_add(coeff);
        if *c == 0 {
            self.terms.remove(&exp);
        }
    }

    /// Multiplies by A^k.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { terms: self.terms.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(LaurentPoly::one(), |acc, _| &acc * self)
    }

    /// (-A³)^k for any integer k.
    pub fn neg_a_cubed_pow(k: i64) -> Self {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        LaurentPoly::monomial(sign, (3 * k) as i32)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (e, c) in rhs.terms {
            self.add_term(c, e);
        }
        self
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        self + (-rhs)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.into_iter().map(|(e, c)| (e, c.wrapping_neg())).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&e1, &c1) in &self.terms {
            for (&e2, &c2) in &rhs.terms {
                out.add_term(c1.wrapping_mul(c2), e1 + e2);
            }
        }
        out
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

/// Terms in descending exponent order: `-A^-4 + A^-8 - 2*A^-12`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.terms.iter().rev().enumerate() {
            let mag = c.unsigned_abs();
            if k == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c < 0 { '-' } else { '+' })?;
            }
            match (mag, e) {
                (_, 0) => write!(f, "{mag}")?,
                (1, _) => write!(f, "A^{e}")?,
                _ => write!(f, "{mag}*A^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn printing() {
        let p = LaurentPoly::monomial(-1, -4) + LaurentPoly::monomial(1, -8) + LaurentPoly::monomial(-1, -12);
        assert_eq!(p.to_string(), "-A^-4 + A^-8 - A^-12");
        assert_eq!(LaurentPoly::delta().to_string(), "-A^2 - A^-2");
        assert_eq!((LaurentPoly::monomial(3, 1) + LaurentPoly::one()).to_string(), "3*A^1 + 1");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }

    #[test]
    fn arithmetic() {
        let d = LaurentPoly::delta();
        let d2 = d.pow(2);
        assert_eq!(d2.coeff(4), 1);
        assert_eq!(d2.coeff(0), 2);
        assert_eq!(d2.coeff(-4), 1);
        assert!((d.clone() - d).is_zero());
        assert_eq!(LaurentPoly::neg_a_cubed_pow(-1), LaurentPoly::monomial(-1, -3));
        assert_eq!(&LaurentPoly::neg_a_cubed_pow(2) * &LaurentPoly::neg_a_cubed_pow(-2), LaurentPoly::one());
    }
}
