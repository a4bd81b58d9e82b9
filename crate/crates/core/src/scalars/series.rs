use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{abs_u64, binomial, Rational, ULaurent};
use crate::error::{Error, Result};

/// Exponent vector `(α₁, β₁, …, α_r, β_r)` of the monomial x₁^α₁ y₁^β₁ ⋯.
pub type Exponents = Vec<u32>;

/// Truncated power series in x₁,y₁,…,x_r,y_r with [`ULaurent`] coefficients.
///
/// Every stored exponent vector satisfies α_i + β_i ≤ caps[i]; products drop
/// monomials beyond the caps, so every element without constant term is
/// nilpotent. Storage is sparse and ordered, which keeps iteration order
/// (and hence every derived sum) deterministic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    caps: Vec<u32>,
    terms: BTreeMap<Exponents, ULaurent>,
}

impl TruncSeries {
    pub fn zero(caps: &[u32]) -> Self {
        TruncSeries {
            caps: caps.to_vec(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(caps: &[u32]) -> Self {
        Self::constant(caps, ULaurent::one())
    }

    pub fn constant(caps: &[u32], c: ULaurent) -> Self {
        Self::monomial(caps, vec![0; 2 * caps.len()], c)
    }

    /// `c · x^exps`, or zero when `exps` violates the caps.
    pub fn monomial(caps: &[u32], exps: Exponents, c: ULaurent) -> Self {
        assert_eq!(exps.len(), 2 * caps.len(), "exponent vector length");
        let mut out = Self::zero(caps);
        if !c.is_zero() && within_caps(caps, &exps) {
            out.terms.insert(exps, c);
        }
        out
    }

    /// The variable x_i (0-based); zero when caps[i] = 0.
    pub fn x(caps: &[u32], i: usize) -> Self {
        let mut exps = vec![0; 2 * caps.len()];
        exps[2 * i] = 1;
        Self::monomial(caps, exps, ULaurent::one())
    }

    /// The variable y_i (0-based); zero when caps[i] = 0.
    pub fn y(caps: &[u32], i: usize) -> Self {
        let mut exps = vec![0; 2 * caps.len()];
        exps[2 * i + 1] = 1;
        Self::monomial(caps, exps, ULaurent::one())
    }

    pub fn r(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &ULaurent)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u32]) -> ULaurent {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    /// Coefficient of the monomial with all exponents zero.
    pub fn constant_term(&self) -> ULaurent {
        self.coefficient(&vec![0; 2 * self.r()])
    }

    /// Largest total degree a nonzero monomial can have.
    fn nilpotency_bound(&self) -> u64 {
        self.caps.iter().map(|&c| c as u64).sum()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        self.map_coeffs(|a| a.scale(c))
    }

    pub fn scale_laurent(&self, c: &ULaurent) -> Self {
        self.map_coeffs(|a| a * c)
    }

    fn map_coeffs(&self, f: impl Fn(&ULaurent) -> ULaurent) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|(k, v)| (k.clone(), f(v)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        TruncSeries {
            caps: self.caps.clone(),
            terms,
        }
    }

    fn without_constant(&self) -> Self {
        let mut out = self.clone();
        out.terms.remove(&vec![0; 2 * self.r()]);
        out
    }

    fn check_caps(&self, rhs: &TruncSeries) {
        assert_eq!(
            self.caps,
            rhs.caps,
            "{}",
            Error::CapMismatch(self.caps.clone(), rhs.caps.clone())
        );
    }

    /// `self^e` for any integer `e`.
    ///
    /// Splits `self = a₀ + z` with `a₀` the constant term and `z` nilpotent and
    /// sums the binomial series Σ_k C(e,k) a₀^{e−k} z^k, which stops once z^k
    /// vanishes. Negative exponents need `a₀ = c·u^m` with `c` a nonzero
    /// rational; then a₀^{e−k} = c^{e−k} u^{m(e−k)}.
    pub fn pow_int(&self, e: i64) -> Result<Self> {
        let a0 = self.constant_term();
        let z = self.without_constant();
        let unit = a0.as_unit_monomial();
        if e < 0 && unit.is_none() {
            return Err(Error::NonUnitBase);
        }
        let a0_pow = |k: i64| -> ULaurent {
            match &unit {
                Some((c, m)) => {
                    let exp = e - k;
                    let mag = c.pow(abs_u64(exp) as i32);
                    let c_pow = if exp < 0 { mag.recip() } else { mag };
                    ULaurent::rational_monomial(c_pow, m * exp)
                }
                None => a0.pow((e - k) as u64),
            }
        };
        let mut max_k = self.nilpotency_bound();
        if e >= 0 {
            max_k = max_k.min(e as u64);
        }
        let mut out = Self::zero(&self.caps);
        let mut z_pow = Self::one(&self.caps);
        for k in 0..=max_k {
            if z_pow.is_zero() {
                break;
            }
            let c = binomial(e, k);
            if !c.is_zero() {
                let coeff = a0_pow(k as i64).scale(&c);
                out = &out + &z_pow.scale_laurent(&coeff);
            }
            z_pow = &z_pow * &z;
        }
        Ok(out)
    }

    /// `exp(self)`; the argument must have no constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::NonNilpotentExp);
        }
        let mut out = Self::one(&self.caps);
        let mut term = Self::one(&self.caps);
        for k in 1..=self.nilpotency_bound() {
            term = (&term * self).scale(&Rational::new(One::one(), k.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Iterates the monomials whose pair degrees hit the caps exactly.
    pub fn top_terms(&self) -> impl Iterator<Item = (&Exponents, &ULaurent)> {
        self.terms.iter().filter(move |(exps, _)| {
            self.caps
                .iter()
                .enumerate()
                .all(|(i, &cap)| exps[2 * i] + exps[2 * i + 1] == cap)
        })
    }
}

fn within_caps(caps: &[u32], exps: &[u32]) -> bool {
    caps.iter()
        .enumerate()
        .all(|(i, &cap)| exps[2 * i] + exps[2 * i + 1] <= cap)
}

impl Add for &TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_caps(rhs);
        let mut terms = self.terms.clone();
        for (k, v) in &rhs.terms {
            let entry = terms.entry(k.clone()).or_default();
            *entry += v;
            if entry.is_zero() {
                terms.remove(k);
            }
        }
        TruncSeries {
            caps: self.caps.clone(),
            terms,
        }
    }
}

impl Add for TruncSeries {
    type Output = TruncSeries;
    fn add(self, rhs: TruncSeries) -> TruncSeries {
        &self + &rhs
    }
}

impl Neg for &TruncSeries {
    type Output = TruncSeries;
    fn neg(self) -> TruncSeries {
        self.map_coeffs(|a| -a)
    }
}

impl Sub for &TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: &TruncSeries) -> TruncSeries {
        self + &(-rhs)
    }
}

impl Sub for TruncSeries {
    type Output = TruncSeries;
    fn sub(self, rhs: TruncSeries) -> TruncSeries {
        &self - &rhs
    }
}

impl Mul for &TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: &TruncSeries) -> TruncSeries {
        self.check_caps(rhs);
        let mut terms: BTreeMap<Exponents, ULaurent> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let fits =
                    self.caps.iter().enumerate().all(|(i, &cap)| {
                        ea[2 * i] + ea[2 * i + 1] + eb[2 * i] + eb[2 * i + 1] <= cap
                    });
                if !fits {
                    continue;
                }
                let key: Exponents = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *terms.entry(key).or_default() += &(ca * cb);
            }
        }
        terms.retain(|_, v| !v.is_zero());
        TruncSeries {
            caps: self.caps.clone(),
            terms,
        }
    }
}

impl Mul for TruncSeries {
    type Output = TruncSeries;
    fn mul(self, rhs: TruncSeries) -> TruncSeries {
        &self * &rhs
    }
}
