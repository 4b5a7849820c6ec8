//! Laurent polynomials in one variable `u` with rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::Rational;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    /// exponent -> coefficient, zero coefficients never stored
    terms: BTreeMap<i32, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * u^e`
    pub fn monomial(c: Rational, e: i32) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &Rational)> {
        self.terms.iter().map(|(&e, c)| (e, c))
    }

    pub fn coeff(&self, e: i32) -> Rational {
        self.terms.get(&e).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.terms.keys().next_back().copied()
    }

    /// True when only the `u^0` term (or nothing) is present.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&e| e == 0)
    }

    pub fn has_negative_powers(&self) -> bool {
        self.min_exponent().is_some_and(|e| e < 0)
    }

    /// Value at `u = 0`; `None` when a negative power makes it undefined.
    pub fn at_zero(&self) -> Option<Rational> {
        if self.has_negative_powers() {
            None
        } else {
            Some(self.coeff(0))
        }
    }

    /// Evaluate at a nonzero rational.
    pub fn eval(&self, u: &Rational) -> Rational {
        assert!(!u.is_zero(), "Laurent polynomial evaluated at zero");
        self.terms.iter().fold(Rational::zero(), |acc, (&e, c)| {
            let p = if e >= 0 {
                num_traits::pow(u.clone(), e as usize)
            } else {
                num_traits::pow(u.recip(), (-e) as usize)
            };
            acc + c * p
        })
    }

    fn add_term(&mut self, e: i32, c: Rational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&e, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "u")?,
                1 => write!(f, "{c}u")?,
                _ if c.is_one() => write!(f, "u^{e}")?,
                _ => write!(f, "{c}u^{e}")?,
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (&e, c) in &rhs.terms {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &rhs.terms {
                out.add_term(a + b, x * y);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(&e, c)| (e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rat, ratio};

    #[test]
    fn inverse_powers_cancel() {
        let a = LaurentPoly::monomial(rat(4), -1);
        let b = LaurentPoly::monomial(rat(1), 1);
        let p = &a * &b;
        assert!(p.is_constant());
        assert_eq!(p.coeff(0), rat(4));
    }

    #[test]
    fn at_zero() {
        let p = &LaurentPoly::monomial(rat(2), 1) + &LaurentPoly::constant(rat(3));
        assert_eq!(p.at_zero(), Some(rat(3)));
        assert_eq!(LaurentPoly::monomial(rat(1), -2).at_zero(), None);
    }

    #[test]
    fn eval_negative_exponent() {
        let p = &LaurentPoly::monomial(rat(3), -2) - &LaurentPoly::monomial(rat(1), 1);
        // 3/(1/4) - 1/2 = 12 - 1/2
        assert_eq!(p.eval(&ratio(1, 2)), ratio(23, 2));
    }

    #[test]
    fn display() {
        let p = &LaurentPoly::monomial(rat(4), -1) + &LaurentPoly::monomial(rat(1), 1);
        assert_eq!(p.to_string(), "4u^-1 + u");
        assert_eq!(LaurentPoly::zero().to_string(), "0");
    }
}
