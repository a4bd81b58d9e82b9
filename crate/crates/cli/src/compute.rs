//! Dispatch from a validated [`JobSpec`] to the core library.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use quotvol_core::abelian::{
    acyclic_volume, curve_acyclic_data, is_acyclic_range, manton_nasir_check,
    symmetric_power_volume, AcyclicData, CurveQuotProblem,
};
use quotvol_core::exterior::{standard_symplectic, AltForm, MAX_Q};
use quotvol_core::grothendieck::degree_from_volume;
use quotvol_core::localization::{
    default_candidates, quot_volume, verify_weight_independence, QuotProblem, WeightVector,
};
use quotvol_core::scalars::{as_integer, factorial, format_rational, int, rat};
use quotvol_core::{Rational, TPoly};

use crate::error::CliError;
use crate::job::{Command, JobSpec, Suite, TMode, SCHEMA_VERSION};
use crate::render;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VolumeDoc {
    pub variable: String,
    /// Complex dimension; the volume has 𝔱-degree at most this.
    pub dimension: u64,
    pub coefficients: Vec<String>,
}

impl VolumeDoc {
    fn new(p: &TPoly, dimension: u64) -> Self {
        VolumeDoc {
            variable: "ttilde".into(),
            dimension,
            coefficients: render::coefficients(p),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationDoc {
    pub ttilde: String,
    pub value: String,
}

/// Physical-t report. π is replaced by a rational probe when one is given,
/// so `exact` is always false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhysicalDoc {
    pub exact: bool,
    pub substitution: String,
    pub volume_expression: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_probe: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ttilde: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingDoc {
    pub n: u32,
    pub s: i64,
    pub sections: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient_dim: Option<String>,
    pub embedding_guaranteed: bool,
    pub h1_vanishing: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub suite: Suite,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub candidates: Option<usize>,
    pub checks: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub g: u32,
    pub r: usize,
    pub d: u32,
    pub l: Vec<i64>,
    pub volume: VolumeDoc,
    pub plain: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimingDoc {
    pub wall_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputDoc {
    pub schema: u32,
    pub input: JobSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub volume: Option<VolumeDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvaluationDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub physical: Option<PhysicalDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding: Option<EmbeddingDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifyDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rows: Option<Vec<SweepRow>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub latex: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing: Option<TimingDoc>,
}

impl OutputDoc {
    fn new(input: JobSpec) -> Self {
        OutputDoc {
            schema: SCHEMA_VERSION,
            input,
            volume: None,
            evaluation: None,
            physical: None,
            degree: None,
            embedding: None,
            verify: None,
            rows: None,
            latex: None,
            warnings: Vec::new(),
            timing: None,
        }
    }

    fn set_volume(&mut self, v: &TPoly, dimension: u64) {
        self.volume = Some(VolumeDoc::new(v, dimension));
        self.latex = Some(render::latex(v));
    }
}

/// A volume with the data needed for the physical-t conversion.
struct Volume {
    poly: TPoly,
    dimension: u64,
    /// Complex dimension of the base manifold.
    base_dim: u32,
}

pub fn run_job(spec: &JobSpec) -> Result<OutputDoc, CliError> {
    let mut doc = OutputDoc::new(spec.clone());
    let volume = match spec.command {
        Command::AbelianVolume => Some(abelian(spec, &mut doc)?),
        Command::AcyclicVolume => Some(acyclic(spec, &mut doc)?),
        Command::QuotVolume => Some(quot(spec)?),
        Command::GrothendieckDegree => {
            grothendieck(spec, &mut doc)?;
            None
        }
        Command::Verify => {
            verify(spec, &mut doc)?;
            None
        }
        Command::Sweep => {
            doc.rows = Some(sweep(spec)?);
            None
        }
    };
    match volume {
        Some(v) => {
            doc.set_volume(&v.poly, v.dimension);
            apply_t_mode(spec, &v, &mut doc);
        }
        None if spec.t.is_some() => {
            doc.warnings
                .push(format!("t is ignored by {}", spec.command));
        }
        None => {}
    }
    Ok(doc)
}

fn apply_t_mode(spec: &JobSpec, v: &Volume, doc: &mut OutputDoc) {
    let t = spec.t_spec();
    match t.mode {
        TMode::TtildeSymbolic => {}
        TMode::TtildeValue => {
            let at = t.value.expect("validated").0;
            doc.evaluation = Some(EvaluationDoc {
                ttilde: format_rational(&at),
                value: format_rational(&v.poly.eval(&at)),
            });
        }
        TMode::PhysicalT => {
            let (tv, vol) = (t.value.expect("validated").0, t.vol_x.expect("validated").0);
            let fact = Rational::from_integer(factorial(v.base_dim.saturating_sub(1) as u64));
            let mut phys = PhysicalDoc {
                exact: false,
                substitution: format!(
                    "𝔱 = {}·{}·{}/(2π)",
                    render::short_rational(&fact),
                    render::short_rational(&vol),
                    render::short_rational(&tv)
                ),
                volume_expression: format!("Vol = (4π²)^{}·v(𝔱)", v.dimension),
                pi_probe: None,
                ttilde: None,
                volume: None,
            };
            if let Some(pi) = t.pi_probe {
                let pi = pi.0;
                let ttilde = &fact * &vol * &tv / (int(2) * &pi);
                let scale = (int(4) * &pi * &pi).pow(v.dimension as i32);
                phys.volume = Some(format_rational(&(scale * v.poly.eval(&ttilde))));
                phys.ttilde = Some(format_rational(&ttilde));
                phys.pi_probe = Some(format_rational(&pi));
            }
            doc.physical = Some(phys);
            doc.warnings
                .push("physical-t values depend on the π handling and are not exact".into());
        }
    }
}

fn integer_deg_e(spec: &JobSpec) -> Result<Option<i64>, CliError> {
    match &spec.deg_e {
        None => Ok(None),
        Some(q) => as_integer(&q.0)
            .and_then(|v| i64::try_from(v).ok())
            .map(Some)
            .ok_or_else(|| CliError::input("/deg_E", "deg_E must be an integer for a curve")),
    }
}

fn abelian(spec: &JobSpec, _doc: &mut OutputDoc) -> Result<Volume, CliError> {
    let (g, d) = (spec.require_g()?, spec.require_d()?);
    let deg_e = match (integer_deg_e(spec)?, spec.l.as_deref()) {
        (Some(e), _) => e,
        (None, Some([l])) => l - d as i64,
        (None, Some(_)) => {
            return Err(CliError::input(
                "/l",
                "abelian-volume takes a single entry l = deg ℰ₀",
            ))
        }
        (None, None) => return Err(CliError::input("/deg_E", "missing deg_E (or l)")),
    };
    Ok(Volume {
        poly: symmetric_power_volume(&CurveQuotProblem { g, deg_e, d }),
        dimension: d as u64,
        base_dim: 1,
    })
}

fn acyclic_data(spec: &JobSpec) -> Result<AcyclicData, CliError> {
    let n = spec
        .n_dim
        .ok_or_else(|| CliError::input("/n_dim", "missing n_dim"))?;
    let q = spec.q.ok_or_else(|| CliError::input("/q", "missing q"))?;
    if q > MAX_Q {
        return Err(CliError::input("/q", format!("q must be at most {MAX_Q}")));
    }
    let deg_e = spec
        .deg_e
        .clone()
        .ok_or_else(|| CliError::input("/deg_E", "missing deg_E"))?
        .0;
    let pairings: Vec<Rational> = spec
        .pairings
        .as_ref()
        .ok_or_else(|| CliError::input("/pairings", "missing pairings P_0..P_n"))?
        .iter()
        .map(|p| p.0.clone())
        .collect();
    if pairings.len() != n as usize + 1 {
        return Err(CliError::input(
            "/pairings",
            format!(
                "expected {} pairings P_0..P_n, got {}",
                n + 1,
                pairings.len()
            ),
        ));
    }
    let h = match &spec.h {
        None => standard_symplectic(q),
        Some(rows) => {
            let h: Vec<Vec<Rational>> = rows
                .iter()
                .map(|row| row.iter().map(|c| c.0.clone()).collect())
                .collect();
            check_pairing_matrix(&h, q)?;
            h
        }
    };
    let mut kappa = BTreeMap::new();
    for (k, entry) in spec.kappa.iter().flatten().enumerate() {
        let mut form = AltForm::zero(q);
        for (j, term) in entry.terms.iter().enumerate() {
            let at = format!("/kappa/{k}/terms/{j}/indices");
            if term.indices.len() != 2 * entry.i as usize {
                return Err(CliError::input(
                    &at,
                    format!(
                        "kappa form with i = {} needs {} indices",
                        entry.i,
                        2 * entry.i
                    ),
                ));
            }
            let blade = AltForm::blade(q, &term.indices, term.coeff.0.clone())
                .map_err(|e| CliError::input(&at, e.to_string()))?;
            form = &form + &blade;
        }
        if kappa.insert((entry.i, entry.s), form).is_some() {
            return Err(CliError::input(
                &format!("/kappa/{k}"),
                "duplicate (i, s) entry",
            ));
        }
    }
    for i in 1..=(q as u32).min(n) {
        for s in 0..=n - i {
            kappa.entry((i, s)).or_insert_with(|| AltForm::zero(q));
        }
    }
    Ok(AcyclicData {
        n,
        q,
        deg_e,
        pairings,
        h,
        kappa,
    })
}

fn check_pairing_matrix(h: &[Vec<Rational>], q: usize) -> Result<(), CliError> {
    let size = 2 * q;
    if h.len() != size {
        return Err(CliError::input(
            "/h",
            format!("expected {size} rows, got {}", h.len()),
        ));
    }
    for (i, row) in h.iter().enumerate() {
        if row.len() != size {
            return Err(CliError::input(
                &format!("/h/{i}"),
                format!("expected {size} entries, got {}", row.len()),
            ));
        }
        for (j, c) in row.iter().enumerate() {
            if *c != -h[j][i].clone() {
                return Err(CliError::input(
                    &format!("/h/{i}/{j}"),
                    "h must be antisymmetric",
                ));
            }
        }
    }
    Ok(())
}

fn acyclic(spec: &JobSpec, doc: &mut OutputDoc) -> Result<Volume, CliError> {
    let data = match &spec.curve {
        Some(c) => {
            if !is_acyclic_range(c.g, c.r0, c.deg_e0, c.m) {
                doc.warnings.push(
                    "deg_E0 is outside the acyclic range; the value is a formal polynomial identity"
                        .into(),
                );
            }
            curve_acyclic_data(c.g, c.r0, c.deg_e0, c.m)
        }
        None => acyclic_data(spec)?,
    };
    let poly = acyclic_volume(&data)?;
    Ok(Volume {
        poly,
        dimension: data.dimension()? as u64,
        base_dim: data.n,
    })
}

fn quot_problem(spec: &JobSpec) -> Result<QuotProblem, CliError> {
    let l = spec.require_l()?.to_vec();
    spec.rank()?;
    Ok(QuotProblem::new(spec.require_g()?, l, spec.require_d()?)?)
}

fn weight_vectors(spec: &JobSpec, r: usize) -> Result<Option<Vec<WeightVector>>, CliError> {
    let Some(rows) = &spec.weights else {
        return Ok(None);
    };
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != r {
                return Err(CliError::input(
                    &format!("/weights/{i}"),
                    format!("expected {r} weights, got {}", row.len()),
                ));
            }
            WeightVector::new(row.iter().map(|w| w.0.clone()).collect())
                .map_err(|e| CliError::input(&format!("/weights/{i}"), e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

fn quot(spec: &JobSpec) -> Result<Volume, CliError> {
    let p = quot_problem(spec)?;
    let ws = weight_vectors(spec, p.r())?;
    let w = ws.as_ref().and_then(|ws| ws.first());
    Ok(Volume {
        poly: quot_volume(&p, w)?,
        dimension: p.dimension(),
        base_dim: 1,
    })
}

fn grothendieck(spec: &JobSpec, doc: &mut OutputDoc) -> Result<(), CliError> {
    let n = spec.require_n()?;
    let p = quot_problem(spec)?;
    let v = quot_volume(&p, None)?;
    let deg = degree_from_volume(&p, &v, n)?;
    if !deg.embedding_guaranteed {
        doc.warnings.push(format!(
            "n < g + d: formula value; j_{n} need not be an embedding"
        ));
    }
    if !deg.h1_vanishing {
        doc.warnings.push(format!(
            "n is below the h¹-vanishing bound 2g − 1 + d − min l = {}",
            quotvol_core::grothendieck::vanishing_threshold(&p)
        ));
    }
    doc.set_volume(&v, p.dimension());
    doc.degree = Some(deg.degree.to_string());
    doc.embedding = Some(EmbeddingDoc {
        n,
        s: deg.params.s,
        sections: deg.params.sections,
        ambient_dim: deg.params.ambient_dim.map(|a| a.to_string()),
        embedding_guaranteed: deg.embedding_guaranteed,
        h1_vanishing: deg.h1_vanishing,
    });
    Ok(())
}

fn default_probes() -> Vec<Rational> {
    vec![int(1), int(2), rat(3, 2), rat(22, 7), rat(355, 113)]
}

fn verify(spec: &JobSpec, doc: &mut OutputDoc) -> Result<(), CliError> {
    let suite = spec.suite.expect("validated");
    let (pass, candidates, checks) = match suite {
        Suite::WeightIndependence => {
            let p = quot_problem(spec)?;
            let ws = match weight_vectors(spec, p.r())? {
                Some(ws) if ws.len() >= 2 => ws,
                Some(_) => {
                    return Err(CliError::input(
                        "/weights",
                        "need at least two weight vectors",
                    ))
                }
                None => default_candidates(p.r()),
            };
            let rep = verify_weight_independence(&p, &ws)?;
            if rep.pass {
                doc.set_volume(&rep.volumes[0].1, p.dimension());
            }
            (rep.pass, Some(ws.len()), ws.len())
        }
        Suite::R1Reduction => {
            let (g, d) = (spec.require_g()?, spec.require_d()?);
            let l = match spec.require_l()? {
                [l] => *l,
                _ => return Err(CliError::input("/l", "r1-reduction takes a single entry l")),
            };
            let p = QuotProblem::new(g, vec![l], d)?;
            let local = quot_volume(&p, None)?;
            let direct = symmetric_power_volume(&CurveQuotProblem {
                g,
                deg_e: l - d as i64,
                d,
            });
            doc.set_volume(&direct, d as u64);
            (local == direct, None, 1)
        }
        Suite::MantonNasir => {
            let (g, d) = (spec.require_g()?, spec.require_d()?);
            let vol = spec
                .t
                .as_ref()
                .and_then(|t| t.vol_x.clone())
                .map_or_else(|| int(1), |q| q.0);
            let probes = spec.probes.as_ref().map_or_else(default_probes, |ps| {
                ps.iter().map(|p| p.0.clone()).collect()
            });
            if let Some(i) = probes.iter().position(Zero::is_zero) {
                return Err(CliError::input(
                    &format!("/probes/{i}"),
                    "probe must be nonzero",
                ));
            }
            let distinct: BTreeSet<&Rational> = probes.iter().collect();
            if distinct.len() < probes.len() {
                return Err(CliError::input("/probes", "probes must be distinct"));
            }
            let pass = probes.iter().all(|pi| {
                let (lhs, rhs) = manton_nasir_check(g, d, &vol, pi);
                lhs == pi.pow(d as i32) * rhs
            });
            (pass, None, probes.len())
        }
        Suite::AcyclicCrosscheck => {
            let (g, d) = (spec.require_g()?, spec.require_d()?);
            let m = integer_deg_e(spec)?.unwrap_or(0);
            let acyclic = acyclic_volume(&curve_acyclic_data(g, 1, m + d as i64, m))?;
            let direct = symmetric_power_volume(&CurveQuotProblem { g, deg_e: m, d });
            doc.set_volume(&direct, d as u64);
            (acyclic == direct, None, 1)
        }
    };
    doc.verify = Some(VerifyDoc {
        suite,
        pass,
        candidates,
        checks,
    });
    Ok(())
}

fn inclusive(range: [u32; 2]) -> Vec<u32> {
    (range[0]..=range[1]).collect()
}

/// Non-increasing splittings of `total` into `r` parts of one sign.
fn partitions(total: i64, r: usize) -> Vec<Vec<i64>> {
    fn go(rest: i64, max: i64, slots: usize, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if slots == 0 {
            if rest == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for part in (0..=rest.min(max)).rev() {
            cur.push(part);
            go(rest - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total.abs(), total.abs(), r, &mut Vec::new(), &mut out);
    if total < 0 {
        for p in &mut out {
            p.iter_mut().for_each(|x| *x = -*x);
            p.reverse();
        }
    }
    out
}

fn sweep(spec: &JobSpec) -> Result<Vec<SweepRow>, CliError> {
    let r = spec.rank()?;
    let gs = match (spec.g, spec.g_range) {
        (_, Some(range)) => inclusive(range),
        (Some(g), None) => vec![g],
        (None, None) => return Err(CliError::input("/g", "missing g or g_range")),
    };
    let ds = match (spec.d, spec.d_range) {
        (_, Some(range)) => inclusive(range),
        (Some(d), None) => vec![d],
        (None, None) => return Err(CliError::input("/d", "missing d or d_range")),
    };
    let ls = match (&spec.l, spec.l_total) {
        (_, Some(total)) => partitions(total, r),
        (Some(l), None) => vec![l.clone()],
        (None, None) => return Err(CliError::input("/l", "missing l or l_total")),
    };
    let mut jobs: Vec<(u32, u32, Vec<i64>)> = Vec::new();
    for &g in &gs {
        for &d in &ds {
            jobs.extend(ls.iter().map(|l| (g, d, l.clone())));
        }
    }
    jobs.into_par_iter()
        .map(|(g, d, l)| {
            let p = QuotProblem::new(g, l.clone(), d)?;
            let v = quot_volume(&p, None)?;
            Ok(SweepRow {
                g,
                r,
                d,
                l,
                volume: VolumeDoc::new(&v, p.dimension()),
                plain: render::plain(&v),
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_are_ordered() {
        assert_eq!(partitions(4, 2), vec![vec![4, 0], vec![3, 1], vec![2, 2]]);
        assert_eq!(partitions(-3, 2), vec![vec![0, -3], vec![-1, -2]]);
        assert_eq!(partitions(0, 3), vec![vec![0, 0, 0]]);
        assert!(partitions(2, 0).is_empty());
    }
}
