use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::Zero;

use super::{Rational, TPoly};

/// Laurent polynomial Σ_k c_k u^k with [`TPoly`] coefficients.
///
/// `coeffs[i]` is the coefficient of `u^(low + i)`. Leading and trailing
/// zero coefficients are trimmed; the zero element has no coefficients and
/// `low == 0`. The exponent window is never truncated.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct ULaurent {
    low: i64,
    coeffs: Vec<TPoly>,
}

impl ULaurent {
    pub fn new(low: i64, coeffs: Vec<TPoly>) -> Self {
        let mut out = ULaurent { low, coeffs };
        out.normalize();
        out
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(TPoly::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn zero() -> Self {
        ULaurent::default()
    }

    pub fn one() -> Self {
        Self::constant(TPoly::one())
    }

    pub fn constant(c: TPoly) -> Self {
        Self::monomial(c, 0)
    }

    /// `c·u^k`.
    pub fn monomial(c: TPoly, k: i64) -> Self {
        Self::new(k, vec![c])
    }

    pub fn rational_monomial(c: Rational, k: i64) -> Self {
        Self::monomial(TPoly::constant(c), k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest and highest exponents carrying a nonzero coefficient.
    pub fn window(&self) -> Option<(i64, i64)> {
        (!self.is_zero()).then(|| (self.low, self.low + self.coeffs.len() as i64 - 1))
    }

    /// Coefficient of `u^k`; zero outside the stored window.
    pub fn coefficient(&self, k: i64) -> TPoly {
        let idx = k - self.low;
        if idx < 0 {
            return TPoly::zero();
        }
        self.coeffs.get(idx as usize).cloned().unwrap_or_default()
    }

    /// Nonzero `(exponent, coefficient)` pairs in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &TPoly)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Returns `(c, k)` when `self = c·u^k` with `c` a nonzero rational.
    pub fn as_unit_monomial(&self) -> Option<(Rational, i64)> {
        if self.coeffs.len() != 1 {
            return None;
        }
        let c = self.coeffs[0].as_constant()?;
        (!c.is_zero()).then_some((c, self.low))
    }

    /// True when the only nonzero coefficient sits at `u^0`.
    pub fn is_u_constant(&self) -> bool {
        self.is_zero() || (self.coeffs.len() == 1 && self.low == 0)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        ULaurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|p| p.scale(c)).collect(),
        }
    }

    pub fn scale_tpoly(&self, c: &TPoly) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|p| p * c).collect())
    }

    pub fn pow(&self, e: u64) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

impl Add for &ULaurent {
    type Output = ULaurent;
    fn add(self, rhs: &ULaurent) -> ULaurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for ULaurent {
    type Output = ULaurent;
    fn add(mut self, rhs: ULaurent) -> ULaurent {
        self += &rhs;
        self
    }
}

impl AddAssign<&ULaurent> for ULaurent {
    fn add_assign(&mut self, rhs: &ULaurent) {
        if rhs.is_zero() {
            return;
        }
        if self.is_zero() {
            *self = rhs.clone();
            return;
        }
        let low = self.low.min(rhs.low);
        let high = (self.low + self.coeffs.len() as i64).max(rhs.low + rhs.coeffs.len() as i64);
        let mut coeffs = vec![TPoly::zero(); (high - low) as usize];
        for (src_low, src) in [(self.low, &self.coeffs), (rhs.low, &rhs.coeffs)] {
            let offset = (src_low - low) as usize;
            for (i, c) in src.iter().enumerate() {
                coeffs[offset + i] += c;
            }
        }
        self.low = low;
        self.coeffs = coeffs;
        self.normalize();
    }
}

impl Neg for &ULaurent {
    type Output = ULaurent;
    fn neg(self) -> ULaurent {
        ULaurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Neg for ULaurent {
    type Output = ULaurent;
    fn neg(self) -> ULaurent {
        -&self
    }
}

impl Sub for &ULaurent {
    type Output = ULaurent;
    fn sub(self, rhs: &ULaurent) -> ULaurent {
        self + &(-rhs)
    }
}

impl Mul for &ULaurent {
    type Output = ULaurent;
    fn mul(self, rhs: &ULaurent) -> ULaurent {
        if self.is_zero() || rhs.is_zero() {
            return ULaurent::zero();
        }
        let mut coeffs = vec![TPoly::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += &(a * b);
                }
            }
        }
        ULaurent::new(self.low + rhs.low, coeffs)
    }
}

impl Mul for ULaurent {
    type Output = ULaurent;
    fn mul(self, rhs: ULaurent) -> ULaurent {
        &self * &rhs
    }
}

impl fmt::Display for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c})·u^{k}")?;
        }
        Ok(())
    }
}
