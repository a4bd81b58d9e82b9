//! Exterior algebra over the lattice H¹(X,ℤ) ≅ ℤ^{2q}.
//!
//! An [`AltForm`] is an element Σ_I c_I λ_I of Λ*(ℚ^{2q}), possibly of mixed
//! degree. Index subsets are stored as bitmasks (bit `i-1` for λ_i), which
//! bounds the rank at 2q ≤ 64. Top-degree forms are evaluated on the
//! ordered basis (h₁,…,h_{2q}); callers must express their pairing data in a
//! basis compatible with the complex orientation.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalars::Rational;

pub const MAX_Q: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AltForm {
    q: usize,
    terms: BTreeMap<u64, Rational>,
}

impl AltForm {
    pub fn zero(q: usize) -> Self {
        assert!(q <= MAX_Q, "{}", Error::RankTooLarge { got: q, max: MAX_Q });
        AltForm {
            q,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(q: usize, c: Rational) -> Self {
        let mut out = Self::zero(q);
        if !c.is_zero() {
            out.terms.insert(0, c);
        }
        out
    }

    pub fn one(q: usize) -> Self {
        Self::scalar(q, Rational::one())
    }

    /// Basis one-form λ_i, `1 ≤ i ≤ 2q`.
    pub fn lambda(q: usize, i: usize) -> Result<Self> {
        Self::blade(q, &[i], Rational::one())
    }

    /// `c · λ_{i₁} ∧ ⋯ ∧ λ_{i_k}` for 1-based indices in any order; repeated
    /// indices give zero.
    pub fn blade(q: usize, indices: &[usize], c: Rational) -> Result<Self> {
        if q > MAX_Q {
            return Err(Error::RankTooLarge { got: q, max: MAX_Q });
        }
        let mut out = Self::scalar(q, c);
        for &i in indices {
            if i == 0 || i > 2 * q {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    rank: 2 * q,
                });
            }
            let mut single = Self::zero(q);
            single.terms.insert(1u64 << (i - 1), Rational::one());
            out = out.wedge(&single)?;
        }
        Ok(out)
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(indices, coefficient)` pairs with 1-based strictly increasing indices.
    pub fn terms(&self) -> impl Iterator<Item = (Vec<usize>, &Rational)> {
        self.terms.iter().map(|(&mask, c)| (mask_indices(mask), c))
    }

    /// The degree if the form is nonzero and homogeneous.
    pub fn degree(&self) -> Option<usize> {
        let mut degrees = self.terms.keys().map(|m| m.count_ones() as usize);
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    /// The degree-`k` homogeneous component.
    pub fn component(&self, k: usize) -> Self {
        AltForm {
            q: self.q,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() as usize == k)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    /// Checks that the form is zero or homogeneous of degree `k`.
    pub fn expect_degree(&self, k: usize) -> Result<()> {
        match self.terms.keys().find(|m| m.count_ones() as usize != k) {
            Some(m) => Err(Error::GradedDegree {
                expected: k,
                found: m.count_ones() as usize,
            }),
            None => Ok(()),
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.q);
        }
        AltForm {
            q: self.q,
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    fn check_rank(&self, other: &AltForm) -> Result<()> {
        if self.q != other.q {
            return Err(Error::RankMismatch(self.q, other.q));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &AltForm) -> Result<Self> {
        self.check_rank(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(*m).or_insert_with(Rational::zero);
            *entry += c;
            if entry.is_zero() {
                terms.remove(m);
            }
        }
        Ok(AltForm { q: self.q, terms })
    }

    /// Exterior product with shuffle signs.
    pub fn wedge(&self, other: &AltForm) -> Result<Self> {
        self.check_rank(other)?;
        let mut terms: BTreeMap<u64, Rational> = BTreeMap::new();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                if a & b != 0 {
                    continue;
                }
                let c = ca * cb;
                let c = if shuffle_is_odd(a, b) { -c } else { c };
                *terms.entry(a | b).or_insert_with(Rational::zero) += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(AltForm { q: self.q, terms })
    }

    /// `self^{∧k}`.
    pub fn wedge_pow(&self, k: usize) -> Self {
        let mut acc = Self::one(self.q);
        for _ in 0..k {
            acc = acc.wedge(self).expect("same rank");
        }
        acc
    }

    /// Σ_k a^{∧k}/k! for a form with only even components of degree ≥ 2.
    pub fn exp_even(&self) -> Result<Self> {
        if self.terms.keys().any(|m| m.count_ones() % 2 == 1) {
            return Err(Error::OddExponential);
        }
        if self.terms.contains_key(&0) {
            return Err(Error::ExpConstantTerm);
        }
        let mut out = Self::one(self.q);
        let mut term = Self::one(self.q);
        for k in 1..=self.q {
            term = term.wedge(self)?.scale(&Rational::new(1.into(), k.into()));
            if term.is_zero() {
                break;
            }
            out = &out + &term;
        }
        Ok(out)
    }

    /// Coefficient of λ_{1…2q}, i.e. the value of the degree-2q part on
    /// (h₁,…,h_{2q}).
    pub fn evaluate_top(&self) -> Rational {
        let top = if self.q == 0 {
            0
        } else {
            u64::MAX >> (64 - 2 * self.q)
        };
        self.terms.get(&top).cloned().unwrap_or_else(Rational::zero)
    }
}

/// θ = Σ_{i<j} h_ij λ_i ∧ λ_j for an antisymmetric 2q×2q matrix `h`.
#[allow(clippy::needless_range_loop)]
pub fn theta_form(q: usize, h: &[Vec<Rational>]) -> Result<AltForm> {
    let n = 2 * q;
    if h.len() != n || h.iter().any(|row| row.len() != n) {
        return Err(Error::PairingShape { expected: n });
    }
    for i in 0..n {
        for j in 0..n {
            if h[i][j] != -h[j][i].clone() {
                return Err(Error::NotAntisymmetric);
            }
        }
    }
    let mut theta = AltForm::zero(q);
    for i in 0..n {
        for j in i + 1..n {
            if !h[i][j].is_zero() {
                theta = &theta + &AltForm::blade(q, &[i + 1, j + 1], h[i][j].clone())?;
            }
        }
    }
    Ok(theta)
}

/// Antisymmetric matrix of the standard symplectic pairing, h_{2k−1,2k} = 1.
pub fn standard_symplectic(q: usize) -> Vec<Vec<Rational>> {
    let n = 2 * q;
    let mut h = vec![vec![Rational::zero(); n]; n];
    for k in 0..q {
        h[2 * k][2 * k + 1] = Rational::one();
        h[2 * k + 1][2 * k] = -Rational::one();
    }
    h
}

fn shuffle_is_odd(a: u64, b: u64) -> bool {
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a.checked_shr(j + 1).unwrap_or(0)).count_ones();
    }
    inversions % 2 == 1
}

fn mask_indices(mask: u64) -> Vec<usize> {
    (0..64)
        .filter(|i| mask >> i & 1 == 1)
        .map(|i| i + 1)
        .collect()
}

impl Add for &AltForm {
    type Output = AltForm;
    fn add(self, rhs: &AltForm) -> AltForm {
        self.try_add(rhs)
            .expect("rank mismatch in AltForm addition")
    }
}

impl Neg for &AltForm {
    type Output = AltForm;
    fn neg(self) -> AltForm {
        self.scale(&-Rational::one())
    }
}

impl Sub for &AltForm {
    type Output = AltForm;
    fn sub(self, rhs: &AltForm) -> AltForm {
        self + &(-rhs)
    }
}

impl fmt::Display for AltForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(idx, c)| {
                if idx.is_empty() {
                    c.to_string()
                } else {
                    let name: Vec<String> = idx.iter().map(usize::to_string).collect();
                    format!("{c}·λ_{{{}}}", name.join(","))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::int;

    fn lam(q: usize, i: usize) -> AltForm {
        AltForm::lambda(q, i).unwrap()
    }

    fn blade(q: usize, idx: &[usize]) -> AltForm {
        AltForm::blade(q, idx, Rational::one()).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let q = 1;
        assert_eq!(lam(q, 1).wedge(&lam(q, 2)).unwrap(), blade(q, &[1, 2]));
        assert!(lam(q, 1).wedge(&lam(q, 1)).unwrap().is_zero());
        assert_eq!(lam(q, 2).wedge(&lam(q, 1)).unwrap(), -&blade(q, &[1, 2]));
        assert_eq!(lam(1, 1).wedge(&lam(2, 1)), Err(Error::RankMismatch(1, 2)));
        // beyond the top degree everything vanishes
        let top = blade(1, &[1, 2]);
        assert!(top.wedge(&lam(1, 1)).unwrap().is_zero());
    }

    #[test]
    fn blade_sorting_sign() {
        let b = AltForm::blade(2, &[3, 1, 2], int(1)).unwrap();
        // (3,1,2) -> (1,2,3) is an even permutation
        assert_eq!(b, blade(2, &[1, 2, 3]));
        let b = AltForm::blade(2, &[2, 1, 4], int(1)).unwrap();
        assert_eq!(b, -&blade(2, &[1, 2, 4]));
        assert!(AltForm::blade(1, &[3], int(1)).is_err());
    }

    #[test]
    fn exp_examples() {
        assert_eq!(AltForm::zero(2).exp_even().unwrap(), AltForm::one(2));
        let s1 = blade(1, &[1, 2]);
        assert_eq!(s1.exp_even().unwrap(), &AltForm::one(1) + &s1);
        let a = &blade(2, &[1, 2]) + &blade(2, &[3, 4]);
        let expected = &(&AltForm::one(2) + &a) + &blade(2, &[1, 2, 3, 4]);
        assert_eq!(a.exp_even().unwrap(), expected);
        assert_eq!(lam(2, 1).exp_even(), Err(Error::OddExponential));
    }

    #[test]
    fn evaluate_top_examples() {
        assert_eq!(blade(3, &[1, 2, 3, 4, 5, 6]).evaluate_top(), int(1));
        let a = &blade(2, &[1, 2]) + &blade(2, &[3, 4]);
        assert_eq!(a.wedge_pow(2).evaluate_top(), int(2));
        assert_eq!(a.evaluate_top(), int(0));
        assert_eq!(AltForm::scalar(0, int(5)).evaluate_top(), int(5));
    }

    #[test]
    fn theta_examples() {
        let t = theta_form(1, &standard_symplectic(1)).unwrap();
        assert_eq!(t, blade(1, &[1, 2]));
        let t = theta_form(2, &standard_symplectic(2)).unwrap();
        assert_eq!(t, &blade(2, &[1, 2]) + &blade(2, &[3, 4]));
        let zero = vec![vec![Rational::zero(); 4]; 4];
        assert!(theta_form(2, &zero).unwrap().is_zero());
        let mut bad = standard_symplectic(1);
        bad[1][0] = int(1);
        assert_eq!(theta_form(1, &bad), Err(Error::NotAntisymmetric));
        assert_eq!(
            theta_form(2, &standard_symplectic(1)),
            Err(Error::PairingShape { expected: 4 })
        );
    }

    #[test]
    fn degree_queries() {
        let mixed = &AltForm::one(2) + &blade(2, &[1, 3]);
        assert_eq!(mixed.degree(), None);
        assert_eq!(mixed.component(2).degree(), Some(2));
        assert!(mixed.expect_degree(2).is_err());
        assert!(AltForm::zero(2).expect_degree(4).is_ok());
    }
}
