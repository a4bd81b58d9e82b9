//! Job documents: the versioned JSON input, flag overrides and validation.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::{Map, Value};

use quotvol_core::scalars::{format_rational, parse_rational};
use quotvol_core::Rational;

use crate::error::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// Exact rational, written as `"num/den"` and read from that form, a bare
/// `"n"`, or a JSON integer.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Q(pub Rational);

impl Serialize for Q {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for Q {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Q(Rational::from_integer(n.into()))),
            Raw::Str(s) => parse_rational(&s)
                .map(Q)
                .ok_or_else(|| D::Error::custom(format!("expected \"num/den\", got {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    AbelianVolume,
    AcyclicVolume,
    QuotVolume,
    GrothendieckDegree,
    Verify,
    Sweep,
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = serde_json::to_value(self).expect("unit variant");
        f.write_str(v.as_str().expect("string"))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Json,
    Latex,
    Plain,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    WeightIndependence,
    R1Reduction,
    MantonNasir,
    AcyclicCrosscheck,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TMode {
    #[default]
    TtildeSymbolic,
    TtildeValue,
    PhysicalT,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TSpec {
    pub mode: TMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<Q>,
    #[serde(rename = "vol_X", default, skip_serializing_if = "Option::is_none")]
    pub vol_x: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pi_probe: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbolic_pi: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaTerm {
    pub indices: Vec<usize>,
    pub coeff: Q,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KappaEntry {
    pub i: u32,
    pub s: u32,
    pub terms: Vec<KappaTerm>,
}

/// Rank-r₀ bundle on a curve; expands to full acyclic pairing data.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveShortcut {
    pub g: u32,
    pub r0: u32,
    #[serde(rename = "deg_E0")]
    pub deg_e0: i64,
    pub m: i64,
}

/// One job after flag overrides are merged in. Absent fields stay absent in
/// the echo.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub schema: u32,
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub suite: Option<Suite>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<TSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub format: Option<Format>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_dim: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub q: Option<usize>,
    #[serde(rename = "deg_E", default, skip_serializing_if = "Option::is_none")]
    pub deg_e: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pairings: Option<Vec<Q>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<Vec<Q>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kappa: Option<Vec<KappaEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveShortcut>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probes: Option<Vec<Q>>,
    /// Inclusive `[lo, hi]`; `lo > hi` is an empty range.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_range: Option<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_range: Option<[u32; 2]>,
    /// Sweep over partitions of this total into r parts instead of a fixed l.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_total: Option<i64>,
}

/// Flag values that override fields of the input document.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub suite: Option<Suite>,
    pub g: Option<u32>,
    pub r: Option<usize>,
    pub l: Option<Vec<i64>>,
    pub d: Option<u32>,
    pub n: Option<u32>,
    pub ttilde: Option<String>,
    pub format: Option<Format>,
}

/// Parses the document text (empty means `{}`), applies overrides and
/// deserializes. Errors carry a JSON pointer to the offending field.
pub fn load(text: Option<&str>, overrides: &Overrides) -> Result<JobSpec, CliError> {
    let mut doc = match text.map(str::trim).filter(|t| !t.is_empty()) {
        Some(t) => serde_json::from_str::<Value>(t)
            .map_err(|e| CliError::input("", format!("invalid JSON: {e}")))?,
        None => Value::Object(Map::new()),
    };
    let obj = doc
        .as_object_mut()
        .ok_or_else(|| CliError::input("", "input document must be a JSON object"))?;
    apply_overrides(obj, overrides)?;
    match obj.get("schema") {
        None => {
            obj.insert("schema".into(), SCHEMA_VERSION.into());
        }
        Some(v) if v.as_u64() == Some(SCHEMA_VERSION as u64) => {}
        Some(v) => {
            return Err(CliError::input(
                "/schema",
                format!("unsupported schema {v}; expected {SCHEMA_VERSION}"),
            ))
        }
    }
    if !obj.contains_key("command") {
        return Err(CliError::input("/command", "missing command"));
    }
    let spec: JobSpec = serde_path_to_error::deserialize(doc).map_err(|e| {
        let pointer = pointer_of(e.path());
        CliError::input(&pointer, e.into_inner().to_string())
    })?;
    spec.validate()?;
    Ok(spec)
}

fn apply_overrides(obj: &mut Map<String, Value>, o: &Overrides) -> Result<(), CliError> {
    let mut set = |key: &str, v: Value| {
        obj.insert(key.to_string(), v);
    };
    if let Some(c) = o.command {
        set("command", serde_json::to_value(c).expect("enum"));
    }
    if let Some(s) = o.suite {
        set("suite", serde_json::to_value(s).expect("enum"));
    }
    if let Some(g) = o.g {
        set("g", g.into());
    }
    if let Some(r) = o.r {
        set("r", r.into());
    }
    if let Some(l) = &o.l {
        set("l", l.clone().into());
    }
    if let Some(d) = o.d {
        set("d", d.into());
    }
    if let Some(n) = o.n {
        set("n", n.into());
    }
    if let Some(f) = o.format {
        set("format", serde_json::to_value(f).expect("enum"));
    }
    if let Some(t) = &o.ttilde {
        if parse_rational(t).is_none() {
            return Err(CliError::input(
                "/t/value",
                format!("--ttilde: expected \"num/den\", got {t:?}"),
            ));
        }
        set(
            "t",
            serde_json::json!({ "mode": "ttilde-value", "value": t }),
        );
    }
    Ok(())
}

fn pointer_of(path: &serde_path_to_error::Path) -> String {
    use serde_path_to_error::Segment;
    let mut out = String::new();
    for seg in path.iter() {
        out.push('/');
        match seg {
            Segment::Seq { index } => out.push_str(&index.to_string()),
            Segment::Map { key } => out.push_str(&key.replace('~', "~0").replace('/', "~1")),
            Segment::Enum { variant } => out.push_str(variant),
            Segment::Unknown => out.push('?'),
        }
    }
    out
}

impl JobSpec {
    pub fn format(&self) -> Format {
        self.format.unwrap_or_default()
    }

    pub fn t_spec(&self) -> TSpec {
        self.t.clone().unwrap_or_default()
    }

    pub fn require_g(&self) -> Result<u32, CliError> {
        self.g
            .ok_or_else(|| CliError::input("/g", "missing genus g"))
    }

    pub fn require_d(&self) -> Result<u32, CliError> {
        self.d
            .ok_or_else(|| CliError::input("/d", "missing length d"))
    }

    pub fn require_n(&self) -> Result<u32, CliError> {
        self.n
            .ok_or_else(|| CliError::input("/n", "missing twist order n"))
    }

    pub fn require_l(&self) -> Result<&[i64], CliError> {
        match self.l.as_deref() {
            Some([]) => Err(CliError::input("/l", "l must have at least one entry")),
            Some(l) => Ok(l),
            None => Err(CliError::input("/l", "missing splitting type l")),
        }
    }

    /// Rank from `r`, or from the length of `l` when `r` is absent.
    pub fn rank(&self) -> Result<usize, CliError> {
        match (self.r, self.l.as_ref()) {
            (Some(0), _) => Err(CliError::input("/r", "rank must be positive")),
            (Some(r), Some(l)) if l.len() != r => Err(CliError::input(
                "/l",
                format!("expected {r} entries to match r, got {}", l.len()),
            )),
            (Some(r), _) => Ok(r),
            (None, Some(l)) if !l.is_empty() => Ok(l.len()),
            _ => Err(CliError::input(
                "/r",
                "missing rank r (or splitting type l)",
            )),
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let t = self.t_spec();
        match t.mode {
            TMode::TtildeSymbolic => {}
            TMode::TtildeValue => {
                if t.value.is_none() {
                    return Err(CliError::input(
                        "/t/value",
                        "ttilde-value mode needs a value",
                    ));
                }
            }
            TMode::PhysicalT => {
                if t.value.is_none() {
                    return Err(CliError::input(
                        "/t/value",
                        "physical-t mode needs the value of t",
                    ));
                }
                if t.vol_x.is_none() {
                    return Err(CliError::input("/t/vol_X", "physical-t mode needs vol_X"));
                }
                match (&t.pi_probe, t.symbolic_pi) {
                    (Some(_), Some(true)) => {
                        return Err(CliError::input(
                            "/t",
                            "choose either pi_probe or symbolic_pi",
                        ))
                    }
                    (None, None | Some(false)) => {
                        return Err(CliError::input(
                            "/t",
                            "physical-t mode needs pi_probe or symbolic_pi: true",
                        ))
                    }
                    (Some(p), _) if p.0 <= Rational::from_integer(0.into()) => {
                        return Err(CliError::input("/t/pi_probe", "pi_probe must be positive"))
                    }
                    _ => {}
                }
            }
        }
        if self.command == Command::Verify && self.suite.is_none() {
            return Err(CliError::input("/suite", "verify needs a suite"));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointers_name_the_bad_field() {
        let err = load(
            Some(r#"{"command":"quot-volume","l":[1,"x"]}"#),
            &Overrides::default(),
        )
        .unwrap_err();
        assert_eq!(err.pointer(), Some("/l/1"));
        let err = load(
            Some(r#"{"command":"quot-volume","bogus":1}"#),
            &Overrides::default(),
        )
        .unwrap_err();
        assert!(err.to_string().contains("bogus"));
        let err = load(
            Some(r#"{"schema":2,"command":"sweep"}"#),
            &Overrides::default(),
        )
        .unwrap_err();
        assert_eq!(err.pointer(), Some("/schema"));
    }

    #[test]
    fn flags_override_document() {
        let o = Overrides {
            g: Some(3),
            l: Some(vec![2, 0]),
            ttilde: Some("1/2".into()),
            ..Overrides::default()
        };
        let spec = load(Some(r#"{"command":"quot-volume","g":1,"d":1}"#), &o).unwrap();
        assert_eq!(spec.g, Some(3));
        assert_eq!(spec.rank().unwrap(), 2);
        assert_eq!(spec.t_spec().mode, TMode::TtildeValue);
    }

    #[test]
    fn rationals_accept_strings_and_integers() {
        let q: Vec<Q> = serde_json::from_str(r#"["3/6", 4, "-2"]"#).unwrap();
        assert_eq!(
            serde_json::to_string(&q).unwrap(),
            r#"["1/2","4/1","-2/1"]"#
        );
    }

    #[test]
    fn physical_mode_needs_a_pi_choice() {
        let doc =
            r#"{"command":"abelian-volume","t":{"mode":"physical-t","value":"1","vol_X":"2"}}"#;
        let err = load(Some(doc), &Overrides::default()).unwrap_err();
        assert_eq!(err.pointer(), Some("/t"));
    }
}
