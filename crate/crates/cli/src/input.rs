//! Parsing of groups, representations, K-types and job files.

use std::path::Path;

use ktype_core::compactrep::{parse_label, CompactGroup, IrrepLabel};
use ktype_core::finitemult::FiniteGroupData;
use ktype_core::glstd::{StandardModule, VirtualRep};
use serde::de::DeserializeOwned;
use serde::Deserialize;

/// Input that could not be parsed or is out of range; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

pub type Parsed<T> = std::result::Result<T, InputError>;

fn err<T>(msg: impl Into<String>) -> Parsed<T> {
    Err(InputError(msg.into()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Group {
    /// `GL_n(ℝ)` with maximal compact `O(n)` or `SO(n)`.
    Real(usize),
    /// A complex group given by its maximal compact subgroup.
    Complex(CompactGroup),
}

pub fn parse_group(s: &str) -> Parsed<Group> {
    let t = s.trim();
    let (fam, rest) =
        t.split_once(':').ok_or_else(|| InputError(format!("group {t:?}: expected GL:n or C:U2/C:SU2")))?;
    match fam.to_ascii_uppercase().as_str() {
        "GL" | "GL_R" => rest
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|n| *n >= 1)
            .map(Group::Real)
            .ok_or_else(|| InputError(format!("group {t:?}: bad size"))),
        "C" | "COMPLEX" => match rest.trim().to_ascii_uppercase().as_str() {
            "SU2" | "SU(2)" => Ok(Group::Complex(CompactGroup::su2())),
            "U2" | "U(2)" => Ok(Group::Complex(CompactGroup::u(2))),
            "U1" | "U(1)" => Ok(Group::Complex(CompactGroup::u(1))),
            other => err(format!("group {t:?}: unsupported compact form {other}")),
        },
        _ => err(format!("group {t:?}: unknown family {fam}")),
    }
}

pub fn label(s: &str, default_n: Option<usize>) -> Parsed<IrrepLabel> {
    parse_label(s, default_n).map_err(|e| InputError(format!("ktype: {e}")))
}

/// `1,0` or `[1,0]`.
pub fn weight(s: &str) -> Parsed<Vec<i32>> {
    s.trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|p| !p.is_empty())
        .map(|p| p.parse::<i32>().map_err(|_| InputError(format!("tau: {s:?} is not an integer vector"))))
        .collect()
}

fn is_toml(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("toml"))
}

pub fn read_file(path: &Path) -> Parsed<String> {
    std::fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

/// Deserialize JSON or TOML text, chosen by the file extension.
pub fn decode<T: DeserializeOwned>(text: &str, path: &Path) -> Parsed<T> {
    let what = path.display();
    if is_toml(path) {
        toml::from_str(text).map_err(|e| InputError(format!("{what}: {e}")))
    } else {
        serde_json::from_str(text).map_err(|e| InputError(format!("{what}: {e}")))
    }
}

/// A representation descriptor: a virtual combination if it has `terms`,
/// otherwise a single standard module.
pub fn decode_rep(text: &str, path: &Path) -> Parsed<VirtualRep> {
    #[derive(Deserialize)]
    struct Probe {
        terms: Option<serde::de::IgnoredAny>,
    }
    let probe: Probe = decode(text, path)?;
    if probe.terms.is_some() {
        decode::<VirtualRep>(text, path)
    } else {
        decode::<StandardModule>(text, path).map(VirtualRep::from)
    }
}

pub fn read_rep(path: &Path) -> Parsed<VirtualRep> {
    decode_rep(&read_file(path)?, path)
}

pub fn read_finite(path: &Path) -> Parsed<FiniteGroupData> {
    decode(&read_file(path)?, path)
}

/// A batch job for `mult run`.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub mode: Mode,
    pub group: Option<String>,
    pub rep: Option<serde_json::Value>,
    #[serde(default)]
    pub tau: Vec<Vec<i32>>,
    #[serde(default)]
    pub ktypes: Vec<String>,
    pub data: Option<FiniteGroupData>,
    pub max_n: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Geom,
    Oracle,
    Both,
    Finite,
    Selftest,
}

pub fn read_job(path: &Path) -> Parsed<JobSpec> {
    decode(&read_file(path)?, path)
}

pub fn rep_from_value(v: serde_json::Value) -> Parsed<VirtualRep> {
    let text = v.to_string();
    decode_rep(&text, Path::new("rep.json")).map_err(|e| InputError(e.0.replacen("rep.json", "rep", 1)))
}
