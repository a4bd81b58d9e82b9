//! Degrees of Grothendieck embeddings j_n: 𝒬uot → ℙ(∧^s H⁰(ℰ₀(n·x₀))).
//!
//! The hyperplane class pulls back to the normalized Kähler class at
//! 𝔱 = n − ḡ, so deg j_n(𝒬uot) = (rd)! · v(n − ḡ).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::localization::{quot_volume, QuotProblem};
use crate::scalars::{as_integer, factorial, int, Rational, TPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingParams {
    pub n: u32,
    /// s = deg E + r(n − g + 1), the dimension of H⁰(E(n·x₀)).
    pub s: i64,
    /// dim V = h⁰(ℰ₀(n·x₀)) = l + r(n − g + 1), assuming h¹ vanishes.
    pub sections: i64,
    /// dim ℙ(∧^s V) = C(dim V, s) − 1, when 0 ≤ s ≤ dim V.
    pub ambient_dim: Option<BigInt>,
}

pub fn embedding_params(p: &QuotProblem, n: u32) -> EmbeddingParams {
    let r = p.r() as i64;
    let twist = n as i64 - p.g as i64 + 1;
    let s = p.kernel_degree() + r * twist;
    let sections = p.l_total() + r * twist;
    let ambient_dim = (s >= 0 && s <= sections).then(|| {
        let (s, v) = (s as u64, sections as u64);
        factorial(v) / (factorial(s) * factorial(v - s)) - BigInt::one()
    });
    EmbeddingParams {
        n,
        s,
        sections,
        ambient_dim,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrothendieckDegree {
    pub degree: BigInt,
    pub params: EmbeddingParams,
    /// False when n < g + d; the value is then only the formula value and
    /// j_n need not be an embedding.
    pub embedding_guaranteed: bool,
    /// n ≥ vanishing_threshold(p): h¹(ℰ(n·x₀)) = 0 for every admissible ℰ.
    pub h1_vanishing: bool,
}

/// Smallest n with h¹(ℰ(n·x₀)) = 0 for every ℰ ⊂ ℰ₀ of colength d.
///
/// Such ℰ contains ℰ₀(−D) for an effective D of degree d, so it suffices that
/// every summand of ℰ₀(n·x₀ − D) has degree > 2g − 2. Sufficient, not sharp.
pub fn vanishing_threshold(p: &QuotProblem) -> i64 {
    let min_l = p.l.iter().copied().min().unwrap_or(0);
    2 * p.g as i64 - 1 + p.d as i64 - min_l
}

/// Degree from an already computed normalized volume.
pub fn degree_from_volume(p: &QuotProblem, volume: &TPoly, n: u32) -> Result<GrothendieckDegree> {
    let at = int(n as i64 - p.gbar());
    let value = Rational::from_integer(factorial(p.dimension())) * volume.eval(&at);
    let degree = as_integer(&value)
        .ok_or_else(|| Error::DegreeIntegrality(format!("(rd)!·v(n−ḡ) = {value} at n = {n}")))?;
    let h1_vanishing = n as i64 >= vanishing_threshold(p);
    if h1_vanishing && degree < BigInt::zero() {
        return Err(Error::DegreeIntegrality(format!(
            "negative degree {degree} at n = {n} inside the vanishing range"
        )));
    }
    Ok(GrothendieckDegree {
        degree,
        params: embedding_params(p, n),
        embedding_guaranteed: n >= p.g + p.d,
        h1_vanishing,
    })
}

/// (rd)! · v(n − ḡ).
pub fn grothendieck_degree(p: &QuotProblem, n: u32) -> Result<GrothendieckDegree> {
    degree_from_volume(p, &quot_volume(p, None)?, n)
}

impl GrothendieckDegree {
    pub fn is_non_negative(&self) -> bool {
        self.degree >= BigInt::zero()
    }
}
