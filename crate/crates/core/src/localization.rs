//! Volumes of Quot spaces of twisted matrix divisors by ℂ*-localization.
//!
//! For ℰ₀ = ℒ₁ ⊕ ⋯ ⊕ ℒ_r on a genus-g curve and d = deg ℰ₀ − deg E, the
//! ℂ* action with pairwise distinct weights w_i has fixed components
//! Q^{d̄} = Π_i X^{(d_i)}, one per weak composition d̄ of d into r parts.
//! Each component contributes the multi-degree-(d₁,…,d_r) part of
//!
//! ```text
//! F = (Σ_i s_i x_i + y_i − s_i w_i u)^{rd}
//!     · Π_{i≠j} ((w_j−w_i)u + x_i)^{ḡ+l_i−d_i−l_j} · exp(y_i / ((w_j−w_i)u + x_i))
//!     / Π_{i<j} ((w_j−w_i)u + x_i − x_j)^{2ḡ}
//! ```
//!
//! with s_i = 𝔱 + l_i − d_i and ḡ = g − 1, where x_i ↦ γ_i and y_i ↦ θ_i.
//! Every such coefficient is concentrated in u⁰; a monomial x^α y^β is
//! evaluated by Π_i g!/(g−β_i)!. The volume is
//!
//! ```text
//! v(𝔱) = (−1)^{ḡ·C(r,2) + (r−1)(l−d)} / (rd)! · Σ_{d̄} ⟨F_{d̄}⟩.
//! ```
//!
//! The sign prefactor is required: without it the r = 2, d = 1 volume comes
//! out as −(𝔱 + μ + ḡ) whenever ḡ + l − d is odd.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::scalars::{
    factorial, falling_factorial, int, rat, sign_power, Rational, TPoly, TruncSeries, ULaurent,
};

/// Full-rank subsheaves E ⊂ ℰ₀ = ⊕ℒ_i of colength d on a genus-g curve.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuotProblem {
    pub g: u32,
    /// Degrees l_i = deg ℒ_i; its length is the rank r.
    pub l: Vec<i64>,
    pub d: u32,
}

impl QuotProblem {
    pub fn new(g: u32, l: Vec<i64>, d: u32) -> Result<Self> {
        if l.is_empty() {
            return Err(Error::EmptyRank);
        }
        Ok(QuotProblem { g, l, d })
    }

    pub fn r(&self) -> usize {
        self.l.len()
    }

    /// l = deg ℰ₀.
    pub fn l_total(&self) -> i64 {
        self.l.iter().sum()
    }

    /// ḡ = g − 1.
    pub fn gbar(&self) -> i64 {
        self.g as i64 - 1
    }

    /// μ = l / r.
    pub fn mu(&self) -> Rational {
        rat(self.l_total(), self.r() as i64)
    }

    /// deg E = l − d.
    pub fn kernel_degree(&self) -> i64 {
        self.l_total() - self.d as i64
    }

    /// dim 𝒬uot = rd.
    pub fn dimension(&self) -> u64 {
        self.r() as u64 * self.d as u64
    }

    /// (−1)^{ḡ·C(r,2) + (r−1)(l−d)}.
    pub fn sign(&self) -> Rational {
        let r = self.r() as i64;
        sign_power(self.gbar() * (r * (r - 1) / 2) + (r - 1) * self.kernel_degree())
    }
}

/// A weak composition (d₁,…,d_r) of d.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn total(&self) -> u32 {
        self.0.iter().sum()
    }
}

/// Pairwise distinct ℂ* weights (w₁,…,w_r).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(weights: Vec<Rational>) -> Result<Self> {
        for (i, a) in weights.iter().enumerate() {
            if weights[i + 1..].contains(a) {
                return Err(Error::DegenerateWeights);
            }
        }
        Ok(WeightVector(weights))
    }

    pub fn from_ints(weights: &[i64]) -> Result<Self> {
        Self::new(weights.iter().map(|&w| int(w)).collect())
    }

    pub fn weights(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// w_i = i.
    pub fn standard(r: usize) -> Self {
        WeightVector((1..=r as i64).map(int).collect())
    }

    /// w_i = i-th prime.
    pub fn primes(r: usize) -> Self {
        let mut primes = Vec::with_capacity(r);
        let mut candidate = 2i64;
        while primes.len() < r {
            if (2..candidate)
                .take_while(|p| p * p <= candidate)
                .all(|p| candidate % p != 0)
            {
                primes.push(int(candidate));
            }
            candidate += 1;
        }
        WeightVector(primes)
    }

    /// Distinct rationals with small numerators and denominators, drawn from a
    /// fixed seed so runs are reproducible.
    pub fn seeded_random(r: usize, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut weights: Vec<Rational> = Vec::with_capacity(r);
        while weights.len() < r {
            let w = rat(rng.gen_range(-40..=40), rng.gen_range(1..=9));
            if !weights.contains(&w) {
                weights.push(w);
            }
        }
        WeightVector(weights)
    }

    fn check_len(&self, r: usize) -> Result<()> {
        if self.len() != r {
            return Err(Error::WeightLength {
                expected: r,
                got: self.len(),
            });
        }
        Ok(())
    }
}

/// The three weight vectors the verifier uses by default: w_i = i, primes,
/// and a seeded random rational vector.
pub fn default_candidates(r: usize) -> Vec<WeightVector> {
    vec![
        WeightVector::standard(r),
        WeightVector::primes(r),
        WeightVector::seeded_random(r, 0x5eed),
    ]
}

/// All (d₁,…,d_r) ∈ ℕ^r with Σd_i = d, in decreasing lexicographic order.
pub fn compositions(d: u32, r: usize) -> Vec<Composition> {
    fn fill(remaining: u32, slots: usize, prefix: &mut Vec<u32>, out: &mut Vec<Composition>) {
        if slots == 1 {
            prefix.push(remaining);
            out.push(Composition(prefix.clone()));
            prefix.pop();
            return;
        }
        for first in (0..=remaining).rev() {
            prefix.push(first);
            fill(remaining - first, slots - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if r > 0 {
        fill(d, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// s_i = 𝔱 + l_i − d_i.
pub fn stability_weights(p: &QuotProblem, c: &Composition) -> Vec<TPoly> {
    p.l.iter()
        .zip(c.parts())
        .map(|(&l, &d)| TPoly::t_plus(int(l - d as i64)))
        .collect()
}

/// The truncated series F for the fixed component `c`.
pub fn integrand(p: &QuotProblem, c: &Composition, w: &WeightVector) -> Result<TruncSeries> {
    let r = p.r();
    w.check_len(r)?;
    let caps = c.parts();
    let gbar = p.gbar();
    let s = stability_weights(p, c);
    let ws = w.weights();
    let u_times =
        |coeff: Rational| TruncSeries::constant(caps, ULaurent::rational_monomial(coeff, 1));

    let mut euler = TruncSeries::one(caps);
    let mut exp_arg = TruncSeries::zero(caps);
    for i in 0..r {
        let x_i = TruncSeries::x(caps, i);
        for j in 0..r {
            if i == j {
                continue;
            }
            let base = &u_times(&ws[j] - &ws[i]) + &x_i;
            let e = gbar + p.l[i] - caps[i] as i64 - p.l[j];
            euler = &euler * &base.pow_int(e)?;
            exp_arg = &exp_arg + &(&TruncSeries::y(caps, i) * &base.pow_int(-1)?);
        }
        for j in i + 1..r {
            let base = &(&u_times(&ws[j] - &ws[i]) + &x_i) - &TruncSeries::x(caps, j);
            euler = &euler * &base.pow_int(-2 * gbar)?;
        }
    }

    let mut linear = TruncSeries::zero(caps);
    let mut u_coeff = TPoly::zero();
    for i in 0..r {
        let s_i = ULaurent::constant(s[i].clone());
        linear = &linear + &TruncSeries::x(caps, i).scale_laurent(&s_i);
        linear = &linear + &TruncSeries::y(caps, i);
        u_coeff += &s[i].scale(&-ws[i].clone());
    }
    linear = &linear + &TruncSeries::constant(caps, ULaurent::monomial(u_coeff, 1));
    let numerator = linear.pow_int(p.dimension() as i64)?;

    Ok(&(&numerator * &euler) * &exp_arg.exp()?)
}

/// Contribution of one fixed component, with the number of top-degree
/// monomials whose u-concentration was checked.
fn evaluate_counted(p: &QuotProblem, c: &Composition, w: &WeightVector) -> Result<(TPoly, usize)> {
    let series = integrand(p, c, w)?;
    let mut total = TPoly::zero();
    let mut checked = 0;
    for (exps, coeff) in series.top_terms() {
        checked += 1;
        if !coeff.is_u_constant() {
            return Err(Error::UConcentration {
                composition: c.parts().to_vec(),
                monomial: exps.clone(),
            });
        }
        let weight = (0..p.r())
            .map(|i| falling_factorial(p.g as u64, exps[2 * i + 1] as u64))
            .fold(Rational::one(), |acc, f| acc * f);
        if !weight.is_zero() {
            total += &coeff.coefficient(0).scale(&weight);
        }
    }
    Ok((total, checked))
}

/// Σ over the multi-degree-(d₁,…,d_r) monomials of the u⁰ coefficient times
/// Π_i g(g−1)⋯(g−β_i+1).
pub fn evaluate_composition(p: &QuotProblem, c: &Composition, w: &WeightVector) -> Result<TPoly> {
    evaluate_counted(p, c, w).map(|(v, _)| v)
}

/// Volume together with bookkeeping from the fixed-point sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VolumeReport {
    pub volume: TPoly,
    pub weights: WeightVector,
    /// Number of fixed components |I(d)|.
    pub components: usize,
    /// Top-degree monomials verified to sit in u⁰.
    pub monomials_checked: usize,
}

pub fn quot_volume_report(p: &QuotProblem, w: Option<&WeightVector>) -> Result<VolumeReport> {
    let weights = w.cloned().unwrap_or_else(|| WeightVector::standard(p.r()));
    weights.check_len(p.r())?;
    let comps = compositions(p.d, p.r());
    let parts: Vec<Result<(TPoly, usize)>> = comps
        .par_iter()
        .map(|c| evaluate_counted(p, c, &weights))
        .collect();
    let mut sum = TPoly::zero();
    let mut checked = 0;
    for part in parts {
        let (v, n) = part?;
        sum += &v;
        checked += n;
    }
    let norm = p.sign() / Rational::from_integer(factorial(p.dimension()));
    Ok(VolumeReport {
        volume: sum.scale(&norm),
        weights,
        components: comps.len(),
        monomials_checked: checked,
    })
}

/// Normalized volume v(𝔱) of 𝒬uot^E_{ℰ₀}; weights default to w_i = i.
pub fn quot_volume(p: &QuotProblem, w: Option<&WeightVector>) -> Result<TPoly> {
    quot_volume_report(p, w).map(|r| r.volume)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightReport {
    pub pass: bool,
    pub volumes: Vec<(WeightVector, TPoly)>,
}

/// Computes the volume for every weight vector and checks exact equality.
pub fn verify_weight_independence(p: &QuotProblem, ws: &[WeightVector]) -> Result<WeightReport> {
    weight_report(p, ws, |w| quot_volume(p, Some(w)))
}

fn weight_report(
    p: &QuotProblem,
    ws: &[WeightVector],
    volume: impl Fn(&WeightVector) -> Result<TPoly> + Sync,
) -> Result<WeightReport> {
    if ws.len() < 2 {
        return Err(Error::TooFewWeights(2));
    }
    for w in ws {
        w.check_len(p.r())?;
    }
    let volumes = ws
        .par_iter()
        .map(|w| volume(w).map(|v| (w.clone(), v)))
        .collect::<Result<Vec<_>>>()?;
    let pass = volumes.windows(2).all(|pair| pair[0].1 == pair[1].1);
    Ok(WeightReport { pass, volumes })
}

/// Binomial C(d+r−1, r−1) = |I(d)|.
pub fn composition_count(d: u32, r: usize) -> BigInt {
    let top = factorial(d as u64 + r as u64 - 1);
    top / (factorial(d as u64) * factorial(r as u64 - 1))
}
