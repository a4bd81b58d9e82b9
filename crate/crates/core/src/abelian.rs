//! Volumes of Quot spaces with rank-one kernel.
//!
//! On a curve the Quot space is the symmetric power X^{(d)} and the Kähler
//! class is θ + (deg E + 𝔱)γ; integrating its d-th power against the
//! Poincaré numbers ⟨γ^{d−j}θ^j⟩ = g!/(g−j)! gives
//!
//! ```text
//! v(𝔱) = Σ_{j=0}^{min(d,g)} C(g,j) (deg E + 𝔱)^{d−j} / (d−j)!
//! ```
//!
//! For an acyclic pair the Quot space is the projective bundle ℙ(𝒱) over
//! Pic^m(X) and the volume reduces to top-degree evaluations of
//! θ^k ∧ s_{q−k}(𝒱) in the exterior algebra of H¹(X,ℤ).

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exterior::{standard_symplectic, theta_form, AltForm};
use crate::scalars::{as_integer, binomial, factorial, falling_factorial, int, Rational, TPoly};

/// Rank-one kernel Quot problem on a genus `g` curve: X^{(d)} with kernel
/// degree `deg_e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveQuotProblem {
    pub g: u32,
    pub deg_e: i64,
    pub d: u32,
}

/// ⟨γ^a θ^b, [X^{(a+b)}]⟩ on a genus `g` curve.
pub fn poincare_number(g: u32, _a: u32, b: u32) -> Rational {
    falling_factorial(g as u64, b as u64)
}

/// Normalized volume of X^{(d)} for the class θ + (deg E + 𝔱)γ.
///
/// The sum starts at j = 0. Multiply by (4π²)^d for the unnormalized volume.
pub fn symmetric_power_volume(p: &CurveQuotProblem) -> TPoly {
    let shifted = TPoly::t_plus(int(p.deg_e));
    (0..=p.d.min(p.g))
        .map(|j| {
            let weight = Rational::new(
                binomial(p.g as i64, j as u64).to_integer(),
                factorial((p.d - j) as u64),
            );
            shifted.pow(p.d - j).scale(&weight)
        })
        .fold(TPoly::zero(), |acc, term| acc + term)
}

/// Both sides of the Manton–Nasir specialization with π replaced by the
/// rational `pi`.
///
/// Returns `(lhs, rhs)` where `lhs = (4π²)^d·v(vol/4π)` with deg E = −d and
/// `rhs = Σ_i (4π)^i C(g,i)/(d−i)! (vol − 4πd)^{d−i}`. As polynomials in π
/// these satisfy lhs = π^d·rhs.
pub fn manton_nasir_check(g: u32, d: u32, vol_x: &Rational, pi: &Rational) -> (Rational, Rational) {
    let four_pi = pi * int(4);
    let ttilde = vol_x / &four_pi;
    let v = symmetric_power_volume(&CurveQuotProblem {
        g,
        deg_e: -(d as i64),
        d,
    });
    let lhs = (pi * pi * int(4)).pow(d as i32) * v.eval(&ttilde);

    let base = vol_x - &four_pi * int(d as i64);
    let rhs = (0..=d.min(g))
        .map(|i| {
            four_pi.pow(i as i32)
                * binomial(g as i64, i as u64)
                * Rational::new(BigInt::one(), factorial((d - i) as u64))
                * base.pow((d - i) as i32)
        })
        .fold(Rational::zero(), |acc, t| acc + t);
    (lhs, rhs)
}

/// exp(Σ_{i≥1} c_i ch_i) split into homogeneous pieces of degree 0, 2, …, 2·top.
fn graded_exp(
    ch: &[AltForm],
    top: usize,
    weight: impl Fn(usize) -> Rational,
) -> Result<Vec<AltForm>> {
    let q = match ch.first() {
        Some(f) => f.q(),
        None => return Err(Error::IncompletePairingData("empty Chern character".into())),
    };
    let mut arg = AltForm::zero(q);
    for (i, c) in ch.iter().enumerate() {
        c.expect_degree(2 * i)?;
        if i == 0 {
            continue;
        }
        arg = arg.try_add(&c.scale(&weight(i)))?;
    }
    let total = arg.exp_even()?;
    Ok((0..=top).map(|j| total.component(2 * j)).collect())
}

/// Segre classes s_0..s_top from 1 + Σ s_i = exp(Σ (−1)^i ch_i / i).
///
/// `ch[i]` must be homogeneous of degree 2i; `ch[0]` (the rank) does not
/// enter.
pub fn segre_from_ch(ch: &[AltForm], top: usize) -> Result<Vec<AltForm>> {
    graded_exp(ch, top, |i| {
        let sign = if i % 2 == 0 { int(1) } else { int(-1) };
        sign / int(i as i64)
    })
}

/// Chern classes c_0..c_top from 1 + Σ c_i = exp(Σ (−1)^{i+1} ch_i / i).
pub fn chern_from_ch(ch: &[AltForm], top: usize) -> Result<Vec<AltForm>> {
    graded_exp(ch, top, |i| {
        let sign = if i % 2 == 0 { int(-1) } else { int(1) };
        sign / int(i as i64)
    })
}

/// Pairing data for an acyclic pair (m, ℰ₀) on an n-dimensional base.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AcyclicData {
    /// Complex dimension of the base.
    pub n: u32,
    /// Half the first Betti number.
    pub q: usize,
    /// 𝔪 = ⟨m ∪ [ω]^{n−1}, [X]⟩.
    pub deg_e: Rational,
    /// P_s = ⟨m^s ∪ C_{n−s}, [X]⟩ for s = 0..=n.
    pub pairings: Vec<Rational>,
    /// Antisymmetric 2q×2q matrix h_ij = ⟨h^i ∪ h^j ∪ [ω^{n−1}], [X]⟩.
    pub h: Vec<Vec<Rational>>,
    /// 𝔨_{m^s C_{n−i−s}} keyed by `(i, s)`; a form of degree 2i.
    pub kappa: BTreeMap<(u32, u32), AltForm>,
}

impl AcyclicData {
    /// R = Σ_s (−1)^s P_s / s!, the rank of 𝒱.
    pub fn rank(&self) -> Result<i64> {
        if self.pairings.len() != self.n as usize + 1 {
            return Err(Error::IncompletePairingData(format!(
                "expected {} pairings P_0..P_n, got {}",
                self.n + 1,
                self.pairings.len()
            )));
        }
        let r = self
            .pairings
            .iter()
            .enumerate()
            .map(|(s, p)| {
                let sign = if s % 2 == 0 { int(1) } else { int(-1) };
                sign * p / Rational::from_integer(factorial(s as u64))
            })
            .fold(Rational::zero(), |acc, t| acc + t);
        as_integer(&r)
            .and_then(|v| i64::try_from(v).ok())
            .ok_or_else(|| Error::NonIntegralRank(r.to_string()))
    }

    /// N = R + q − 1.
    pub fn dimension(&self) -> Result<i64> {
        Ok(self.rank()? + self.q as i64 - 1)
    }

    fn kappa_form(&self, i: u32, s: u32) -> Result<&AltForm> {
        let form = self.kappa.get(&(i, s)).ok_or_else(|| {
            Error::IncompletePairingData(format!("missing kappa form for i={i}, s={s}"))
        })?;
        if form.q() != self.q {
            return Err(Error::RankMismatch(form.q(), self.q));
        }
        form.expect_degree(2 * i as usize)?;
        Ok(form)
    }
}

/// ch_0..ch_q of 𝒱, with ch_i = Σ_{s=0}^{n−i} (−1)^{i+s}/s! · 𝔨_{m^s C_{n−i−s}}
/// and ch_0 = R.
pub fn ch_of_v(data: &AcyclicData) -> Result<Vec<AltForm>> {
    let mut ch = vec![AltForm::scalar(data.q, int(data.rank()?))];
    for i in 1..=data.q as u32 {
        let mut acc = AltForm::zero(data.q);
        // ch_i vanishes above the base dimension.
        let top_s = data.n.checked_sub(i);
        for s in top_s.into_iter().flat_map(|top| 0..=top) {
            let sign = if (i + s) % 2 == 0 { int(1) } else { int(-1) };
            let weight = sign / Rational::from_integer(factorial(s as u64));
            acc = &acc + &data.kappa_form(i, s)?.scale(&weight);
        }
        ch.push(acc);
    }
    Ok(ch)
}

/// Normalized volume of ℙ(𝒱) → Pic^m(X):
///
/// ```text
/// v(𝔱) = (1/N!) Σ_{k=0}^{q} C(N,k) (𝔪 + 𝔱)^{N−k} ⟨θ^k ∧ s_{q−k}(𝒱)⟩
/// ```
///
/// The k-range is the one on which ν_*(γ^{N−k}) = s_{q−k}(𝒱) is nonzero,
/// i.e. R − 1 ≤ N − k ≤ N.
pub fn acyclic_volume(data: &AcyclicData) -> Result<TPoly> {
    let rank = data.rank()?;
    if rank < 1 {
        return Err(Error::EmptyProjectiveBundle(rank.to_string()));
    }
    let dim = data.dimension()? as u64;
    let theta = theta_form(data.q, &data.h)?;
    let segre = segre_from_ch(&ch_of_v(data)?, data.q)?;
    let shifted = TPoly::t_plus(data.deg_e.clone());

    let mut out = TPoly::zero();
    let mut theta_pow = AltForm::one(data.q);
    for k in 0..=data.q.min(dim as usize) {
        let pairing = theta_pow.wedge(&segre[data.q - k])?.evaluate_top();
        if !pairing.is_zero() {
            let weight = binomial(dim as i64, k as u64) * pairing;
            out += &shifted.pow((dim - k as u64) as u32).scale(&weight);
        }
        theta_pow = theta_pow.wedge(&theta)?;
    }
    Ok(out.scale(&Rational::new(BigInt::one(), factorial(dim))))
}

/// True when deg ℰ₀ > r₀m + 2r₀(g−1), the range in which (m, ℰ₀) is acyclic
/// for polystable ℰ₀.
pub fn is_acyclic_range(g: u32, r0: u32, deg_e0: i64, m: i64) -> bool {
    let (g, r0) = (g as i64, r0 as i64);
    deg_e0 > r0 * m + 2 * r0 * (g - 1)
}

/// Pairing data for a rank-r₀ bundle of degree `deg_e0` on a genus-g curve
/// and kernel degree `m`.
///
/// P_0 = ⟨C_1⟩ = deg ℰ₀ + r₀(1−g), P_1 = ⟨m·C_0⟩ = m·r₀, and the only kappa
/// form is 𝔨_{C_0} = r₀·σ with σ the standard symplectic form. Inputs outside
/// [`is_acyclic_range`] are accepted; the formula value is then only a
/// polynomial identity.
pub fn curve_acyclic_data(g: u32, r0: u32, deg_e0: i64, m: i64) -> AcyclicData {
    let q = g as usize;
    let h = standard_symplectic(q);
    let mut kappa = BTreeMap::new();
    if q > 0 {
        let sigma = theta_form(q, &h).expect("standard symplectic matrix is antisymmetric");
        kappa.insert((1, 0), sigma.scale(&int(r0 as i64)));
    }
    let (gi, ri) = (g as i64, r0 as i64);
    AcyclicData {
        n: 1,
        q,
        deg_e: int(m),
        pairings: vec![int(deg_e0 + ri * (1 - gi)), int(m * ri)],
        h,
        kappa,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn vol(g: u32, d: u32, deg_e: i64) -> TPoly {
        symmetric_power_volume(&CurveQuotProblem { g, deg_e, d })
    }

    #[test]
    fn poincare_examples() {
        assert_eq!(poincare_number(1, 0, 1), int(1));
        for g in 0..5 {
            assert_eq!(poincare_number(g, 3, 0), int(1));
        }
        assert_eq!(poincare_number(1, 0, 2), int(0));
        assert_eq!(poincare_number(3, 1, 2), int(6));
    }

    #[test]
    fn symmetric_power_examples() {
        // g = 0: (e + 𝔱)²/2
        let e = 3;
        let expected = TPoly::t_plus(int(e)).pow(2).scale(&rat(1, 2));
        assert_eq!(vol(0, 2, e), expected);
        // g = 1, d = 1: e + 𝔱 + 1, not 1
        assert_eq!(vol(1, 1, -4), TPoly::t_plus(int(-3)));
        for g in 0..4 {
            assert_eq!(vol(g, 0, 7), TPoly::one());
        }
    }

    #[test]
    fn manton_nasir_small_cases() {
        let vol_x = rat(37, 3);
        let (lhs, rhs) = manton_nasir_check(0, 1, &vol_x, &int(1));
        assert_eq!(lhs, rhs);
        let (lhs, rhs) = manton_nasir_check(1, 1, &vol_x, &int(2));
        assert_eq!(lhs / rhs, int(2));
        let (lhs, rhs) = manton_nasir_check(2, 0, &vol_x, &rat(22, 7));
        assert_eq!((lhs, rhs), (int(1), int(1)));
    }

    #[test]
    fn segre_examples() {
        let q = 2;
        let zero_ch = vec![
            AltForm::scalar(q, int(3)),
            AltForm::zero(q),
            AltForm::zero(q),
        ];
        let s = segre_from_ch(&zero_ch, 2).unwrap();
        assert_eq!(s[0], AltForm::one(q));
        assert!(s[1].is_zero() && s[2].is_zero());

        let a = theta_form(q, &standard_symplectic(q)).unwrap();
        let ch = vec![AltForm::scalar(q, int(1)), a.clone(), AltForm::zero(q)];
        let s = segre_from_ch(&ch, 2).unwrap();
        assert_eq!(s[1], -&a);
        assert_eq!(s[2], a.wedge(&a).unwrap().scale(&rat(1, 2)));

        let bad = vec![AltForm::one(q), a.clone(), a];
        assert_eq!(
            segre_from_ch(&bad, 2),
            Err(Error::GradedDegree {
                expected: 4,
                found: 2
            })
        );
    }

    #[test]
    fn ch_examples() {
        let mut data = curve_acyclic_data(2, 1, 5, 0);
        for form in data.kappa.values_mut() {
            *form = AltForm::zero(2);
        }
        let ch = ch_of_v(&data).unwrap();
        assert_eq!(ch.len(), 3);
        assert!(ch[1].is_zero() && ch[2].is_zero());

        // n = 1: ch_1 = −𝔨_{C_0}, ch_2 has an empty s-range
        let data = curve_acyclic_data(2, 1, 5, 0);
        let ch = ch_of_v(&data).unwrap();
        let sigma = theta_form(2, &standard_symplectic(2)).unwrap();
        assert_eq!(ch[1], -&sigma);
        assert!(ch[2].is_zero());
        assert_eq!(ch[0], AltForm::scalar(2, int(4)));

        let mut missing = data;
        missing.kappa.clear();
        assert!(matches!(
            ch_of_v(&missing),
            Err(Error::IncompletePairingData(_))
        ));
    }

    #[test]
    fn curve_data_rank_matches_riemann_roch() {
        for g in 0..4u32 {
            for d in 0..6i64 {
                let data = curve_acyclic_data(g, 1, 0, -d);
                assert_eq!(data.rank().unwrap(), d + 1 - g as i64);
                if data.rank().unwrap() >= 1 {
                    assert_eq!(data.dimension().unwrap(), d);
                }
            }
        }
        assert!(curve_acyclic_data(0, 1, 2, 0).kappa.is_empty());
        let data = curve_acyclic_data(1, 2, 9, 1);
        let expected = AltForm::blade(1, &[1, 2], int(2)).unwrap();
        assert_eq!(data.kappa[&(1, 0)], expected);
    }

    #[test]
    fn acyclic_examples() {
        // g = 1, d = 1 with deg_E = −1
        let data = curve_acyclic_data(1, 1, 0, -1);
        assert_eq!(acyclic_volume(&data).unwrap(), TPoly::t_plus(int(0)));
        assert_eq!(acyclic_volume(&data).unwrap(), vol(1, 1, -1));

        // q = 0: (𝔪 + 𝔱)^N / N!
        let data = AcyclicData {
            n: 2,
            q: 0,
            deg_e: rat(1, 2),
            pairings: vec![int(4), int(2), int(2)],
            h: vec![],
            kappa: BTreeMap::new(),
        };
        assert_eq!(data.rank().unwrap(), 4 - 2 + 1);
        let expected = TPoly::t_plus(rat(1, 2)).pow(2).scale(&rat(1, 2));
        assert_eq!(acyclic_volume(&data).unwrap(), expected);

        // q = 1 with vanishing kappa and θ: every top evaluation is zero
        let data = AcyclicData {
            n: 1,
            q: 1,
            deg_e: int(0),
            pairings: vec![int(2), int(0)],
            h: vec![vec![int(0); 2]; 2],
            kappa: [((1, 0), AltForm::zero(1))].into_iter().collect(),
        };
        assert!(acyclic_volume(&data).unwrap().is_zero());
    }

    #[test]
    fn acyclic_rejects_empty_bundle() {
        let data = curve_acyclic_data(3, 1, 0, 0);
        assert_eq!(data.rank().unwrap(), -2);
        assert!(matches!(
            acyclic_volume(&data),
            Err(Error::EmptyProjectiveBundle(_))
        ));
        let mut frac = curve_acyclic_data(0, 1, 2, 0);
        frac.pairings[1] = rat(1, 2);
        assert!(matches!(frac.rank(), Err(Error::NonIntegralRank(_))));
    }

    #[test]
    fn acyclic_range_predicate() {
        assert!(is_acyclic_range(1, 1, 1, 0));
        assert!(!is_acyclic_range(2, 1, 2, 0));
        assert!(is_acyclic_range(2, 1, 3, 0));
    }
}
