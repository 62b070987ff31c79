//! Job files and the runner behind the command-line tool.
//!
//! ```text
//! version = 1
//! [field]   spec = "Fp: 5"
//! [corr]    f = "x^2"
//! [command] name = "complete-sets"
//!           seed = "[0:1]"
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::analysis::{
    finitary_verdict, genus_upper, naive_height, pakovich_bound, points_of_height, unbalanced_bound,
    Height, VerdictBudgets,
};
use crate::corr::Correspondence;
use crate::error::{Error, Result};
use crate::expr::{parse_rational, parse_univariate};
use crate::field::{FieldSpec, FiniteField, Rationals, RootField};
use crate::graph::{
    adjacency_from_edges, backward_kernel_search, classification_json, classify_edges,
    complete_set_search, dot, enumerate_components, exceptional_set_morphism, Budgets, Explorer,
};
use crate::oper::{almost_split, lin_finitary_test, qtd_check, td_apply, td_matrix, QtdOutcome, DEFAULT_BUFFER};
use crate::point::{parse_point_list, ProjectivePoint};
use crate::universe::Universe;

type Pt<F> = ProjectivePoint<<F as crate::field::Ring>::Elem>;

pub const JOB_VERSION: i64 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandName {
    Graph,
    CompleteSets,
    Classify,
    Compose,
    Transpose,
    Sum,
    TdApply,
    TdMatrix,
    LinFinitary,
    QtdCheck,
    AlmostSplit,
    Finitary,
    Exceptional,
    BackwardKernel,
    Bounds,
    Height,
}

const COMMANDS: [(&str, CommandName); 16] = [
    ("graph", CommandName::Graph),
    ("complete-sets", CommandName::CompleteSets),
    ("classify", CommandName::Classify),
    ("compose", CommandName::Compose),
    ("transpose", CommandName::Transpose),
    ("sum", CommandName::Sum),
    ("td-apply", CommandName::TdApply),
    ("td-matrix", CommandName::TdMatrix),
    ("lin-finitary", CommandName::LinFinitary),
    ("qtd-check", CommandName::QtdCheck),
    ("almost-split", CommandName::AlmostSplit),
    ("finitary", CommandName::Finitary),
    ("exceptional", CommandName::Exceptional),
    ("backward-kernel", CommandName::BackwardKernel),
    ("bounds", CommandName::Bounds),
    ("height", CommandName::Height),
];

impl CommandName {
    pub fn as_str(&self) -> &'static str {
        COMMANDS.iter().find(|(_, c)| c == self).unwrap().0
    }

    /// Accepted keys besides `name` and `rng`, and the required ones.
    fn keys(&self) -> (&'static [&'static str], &'static [&'static str]) {
        use CommandName::*;
        match self {
            Graph => (&["seed", "S", "n", "strict", "max_ext", "max_size"], &[]),
            CompleteSets => (&["seed", "K", "H", "max_ext", "max_size"], &[]),
            Classify => (&["S", "strict"], &["S"]),
            Compose | Sum => (&["G", "g"], &[]),
            Transpose | Exceptional => (&[], &[]),
            TdApply => (&["h"], &["h"]),
            TdMatrix => (&["S", "n"], &["S", "n"]),
            LinFinitary => (&["S", "n", "buffer"], &["S", "n"]),
            QtdCheck => (&["Q", "S", "radius"], &["Q", "S"]),
            AlmostSplit => (&["S", "S1", "S2", "n"], &["S", "S1", "n"]),
            Finitary => (&["M", "n", "max_order", "max_ext", "max_size"], &[]),
            BackwardKernel => (&["K", "H", "max_ext", "max_size"], &[]),
            Bounds => (&["genus"], &[]),
            Height => (&["point", "H"], &[]),
        }
    }

    fn needs_corr(&self) -> bool {
        !matches!(self, CommandName::AlmostSplit | CommandName::Height)
    }
}

impl FromStr for CommandName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        COMMANDS
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, c)| *c)
            .ok_or_else(|| Error::UnknownCommand(s.to_string()))
    }
}

impl fmt::Display for CommandName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Param {
    Int(i64),
    Bool(bool),
    Str(String),
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Int(n) => write!(f, "{n}"),
            Param::Bool(b) => write!(f, "{b}"),
            Param::Str(s) => write!(f, "{s:?}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum CorrSpec {
    #[serde(rename = "F")]
    Poly(String),
    #[serde(rename = "f")]
    Map(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Job {
    pub version: i64,
    pub field: String,
    pub corr: Option<CorrSpec>,
    pub command: CommandName,
    pub params: BTreeMap<String, Param>,
    pub rng: u64,
}

impl Job {
    pub fn new(field: &str, corr: Option<CorrSpec>, command: CommandName) -> Self {
        Job {
            version: JOB_VERSION,
            field: field.to_string(),
            corr,
            command,
            params: BTreeMap::new(),
            rng: 0,
        }
    }

    pub fn with_param(mut self, key: &str, value: Param) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    /// Check command, keys and required fields.
    pub fn validate(&self) -> Result<()> {
        if self.version != JOB_VERSION {
            return Err(Error::InvalidParameter(
                "version".into(),
                format!("unsupported version {}", self.version),
            ));
        }
        self.field.parse::<FieldSpec>()?;
        let (allowed, required) = self.command.keys();
        if let Some(k) = self.params.keys().find(|k| !allowed.contains(&k.as_str())) {
            return Err(Error::InvalidParameter(
                k.clone(),
                format!("not accepted by {}", self.command),
            ));
        }
        if let Some(k) = required.iter().find(|k| !self.params.contains_key(**k)) {
            return Err(Error::MissingField(format!("command.{k}")));
        }
        if self.command.needs_corr() && self.corr.is_none() {
            return Err(Error::MissingField("corr".into()));
        }
        if matches!(self.command, CommandName::Compose | CommandName::Sum)
            && !self.params.contains_key("G")
            && !self.params.contains_key("g")
        {
            return Err(Error::MissingField("command.G".into()));
        }
        Ok(())
    }

    /// Canonical job-file text; parsing it gives back the same job.
    pub fn to_text(&self) -> String {
        let mut s = format!("version = {}\n[field]\nspec = {:?}\n", self.version, self.field);
        match &self.corr {
            Some(CorrSpec::Poly(t)) => s.push_str(&format!("[corr]\nF = {t:?}\n")),
            Some(CorrSpec::Map(t)) => s.push_str(&format!("[corr]\nf = {t:?}\n")),
            None => {}
        }
        s.push_str(&format!("[command]\nname = {:?}\n", self.command.as_str()));
        for (k, v) in &self.params {
            s.push_str(&format!("{k} = {v}\n"));
        }
        s.push_str(&format!("rng = {}\n", self.rng));
        s
    }

    fn int(&self, key: &str) -> Result<Option<i64>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(Param::Int(n)) => Ok(Some(*n)),
            Some(p) => Err(Error::InvalidParameter(key.into(), format!("expected an integer, got {p}"))),
        }
    }

    fn uint(&self, key: &str, default: u64) -> Result<u64> {
        match self.int(key)? {
            None => Ok(default),
            Some(n) if n >= 0 => Ok(n as u64),
            Some(n) => Err(Error::InvalidParameter(key.into(), format!("{n} is negative"))),
        }
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize> {
        self.uint(key, default as u64).map(|n| n as usize)
    }

    fn flag(&self, key: &str) -> Result<bool> {
        match self.params.get(key) {
            None => Ok(false),
            Some(Param::Bool(b)) => Ok(*b),
            Some(p) => Err(Error::InvalidParameter(key.into(), format!("expected a boolean, got {p}"))),
        }
    }

    fn text(&self, key: &str) -> Result<Option<&str>> {
        match self.params.get(key) {
            None => Ok(None),
            Some(Param::Str(s)) => Ok(Some(s)),
            Some(p) => Err(Error::InvalidParameter(key.into(), format!("expected a string, got {p}"))),
        }
    }

    fn required_text(&self, key: &str) -> Result<&str> {
        self.text(key)?
            .ok_or_else(|| Error::MissingField(format!("command.{key}")))
    }

    fn budgets(&self) -> Result<Budgets> {
        let d = Budgets::default();
        Ok(Budgets {
            max_ext: self.uint("max_ext", d.max_ext as u64)? as u32,
            max_size: self.usize("max_size", d.max_size)?,
        })
    }
}

fn syntax(offset: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        offset,
        message: message.into(),
    }
}

/// Parse a value: a quoted string, an integer or a boolean. Returns the
/// value and the number of bytes consumed.
fn parse_value(text: &str, offset: usize) -> Result<(Param, usize)> {
    if let Some(rest) = text.strip_prefix('"') {
        let mut out = String::new();
        let mut chars = rest.char_indices();
        while let Some((i, ch)) = chars.next() {
            match ch {
                '"' => return Ok((Param::Str(out), i + 2)),
                '\\' => match chars.next() {
                    Some((_, c @ ('"' | '\\'))) => out.push(c),
                    Some((_, 'n')) => out.push('\n'),
                    _ => return Err(syntax(offset + i + 1, "bad escape")),
                },
                _ => out.push(ch),
            }
        }
        return Err(syntax(offset, "unterminated string"));
    }
    let end = text
        .find(|c: char| c.is_whitespace() || c == '#')
        .unwrap_or(text.len());
    let word = &text[..end];
    let value = match word {
        "true" => Param::Bool(true),
        "false" => Param::Bool(false),
        _ => Param::Int(
            word.parse()
                .map_err(|_| syntax(offset, format!("expected a value, got {word:?}")))?,
        ),
    };
    Ok((value, end))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Top,
    Field,
    Corr,
    Command,
}

/// Parse a job file. Unknown sections and keys are errors.
pub fn parse_job(text: &str) -> Result<Job> {
    let mut section = Section::Top;
    let mut version = None;
    let mut field = None;
    let mut corr = None;
    let mut name: Option<(String, usize)> = None;
    let mut params: BTreeMap<String, (Param, usize)> = BTreeMap::new();
    let mut rng = None;
    let mut seen = Vec::new();
    let mut line_start = 0;
    for raw in text.split_inclusive('\n') {
        let base = line_start;
        line_start += raw.len();
        let line = raw.trim_end_matches(['\n', '\r']);
        let indent = line.len() - line.trim_start().len();
        let mut rest = line.trim_start();
        let mut pos = base + indent;
        if rest.starts_with('[') {
            let close = rest.find(']').ok_or_else(|| syntax(pos, "unclosed section header"))?;
            section = match rest[1..close].trim() {
                "field" => Section::Field,
                "corr" => Section::Corr,
                "command" => Section::Command,
                other => return Err(syntax(pos + 1, format!("unknown section [{other}]"))),
            };
            if seen.contains(&(section as u8)) {
                return Err(syntax(pos, "duplicate section"));
            }
            seen.push(section as u8);
            let after = &rest[close + 1..];
            let skip = after.len() - after.trim_start().len();
            pos += close + 1 + skip;
            rest = after.trim_start();
        }
        if rest.is_empty() || rest.starts_with('#') {
            continue;
        }
        let eq = rest.find('=').ok_or_else(|| syntax(pos, "expected key = value"))?;
        let key = rest[..eq].trim();
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
            return Err(syntax(pos, format!("bad key {key:?}")));
        }
        let after = &rest[eq + 1..];
        let vpos = pos + eq + 1 + (after.len() - after.trim_start().len());
        let text = after.trim_start();
        // rng spans all of u64, beyond the range of integer values.
        let (value, used) = if section == Section::Command && key == "rng" {
            let end = text.find(|c: char| c.is_whitespace() || c == '#').unwrap_or(text.len());
            let v: u64 = text[..end]
                .parse()
                .map_err(|_| syntax(vpos, "rng must be a non-negative integer"))?;
            if rng.replace(v).is_some() {
                return Err(syntax(pos, "duplicate key \"rng\""));
            }
            (None, end)
        } else {
            let (v, used) = parse_value(text, vpos)?;
            (Some(v), used)
        };
        let tail = text[used..].trim_start();
        if !tail.is_empty() && !tail.starts_with('#') {
            return Err(syntax(vpos + used, "trailing characters"));
        }
        let Some(value) = value else { continue };
        let dup = || syntax(pos, format!("duplicate key {key:?}"));
        let want_str = |v: Param| match v {
            Param::Str(s) => Ok(s),
            other => Err(syntax(vpos, format!("{key} expects a string, got {other}"))),
        };
        match (section, key) {
            (Section::Top, "version") => {
                let Param::Int(v) = value else {
                    return Err(syntax(vpos, "version must be an integer"));
                };
                if version.replace(v).is_some() {
                    return Err(dup());
                }
            }
            (Section::Field, "spec") => {
                if field.replace(want_str(value)?).is_some() {
                    return Err(dup());
                }
            }
            (Section::Corr, "F" | "f") => {
                let s = want_str(value)?;
                let spec = if key == "F" { CorrSpec::Poly(s) } else { CorrSpec::Map(s) };
                if corr.replace(spec).is_some() {
                    return Err(syntax(pos, "[corr] takes exactly one of F or f"));
                }
            }
            (Section::Command, "name") => {
                if name.replace((want_str(value)?, vpos)).is_some() {
                    return Err(dup());
                }
            }
            (Section::Command, _) => {
                if params.insert(key.to_string(), (value, pos)).is_some() {
                    return Err(dup());
                }
            }
            _ => return Err(syntax(pos, format!("unknown key {key:?}"))),
        }
    }
    let version = version.ok_or_else(|| Error::MissingField("version".into()))?;
    let field = field.ok_or_else(|| Error::MissingField("field".into()))?;
    let (name, _) = name.ok_or_else(|| Error::MissingField("command.name".into()))?;
    let command: CommandName = name.parse()?;
    let (allowed, _) = command.keys();
    if let Some((k, (_, at))) = params.iter().find(|(k, _)| !allowed.contains(&k.as_str())) {
        return Err(syntax(*at, format!("unknown key {k:?} for command {command}")));
    }
    let job = Job {
        version,
        field,
        corr,
        command,
        params: params.into_iter().map(|(k, (v, _))| (k, v)).collect(),
        rng: rng.unwrap_or(0),
    };
    job.validate()?;
    Ok(job)
}

/// Result of running a job.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub json: Value,
    pub dot: Option<String>,
}

impl Output {
    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn json_text(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.json).expect("values serialize");
        s.push('\n');
        s
    }
}

/// Field-specific parts of the runner: where searches look for points.
pub trait JobField: RootField {
    /// The correspondence to search and the candidate points.
    fn search_space(c: &Correspondence<Self>, job: &Job) -> Result<(Correspondence<Self>, Vec<Pt<Self>>)>;

    fn height(&self, p: &Pt<Self>) -> Result<Height>;
}

impl JobField for Rationals {
    fn search_space(c: &Correspondence<Self>, job: &Job) -> Result<(Correspondence<Self>, Vec<Pt<Self>>)> {
        Ok((c.clone(), points_of_height(job.uint("H", 3)?)))
    }

    fn height(&self, p: &Pt<Self>) -> Result<Height> {
        Ok(naive_height(p))
    }
}

impl JobField for FiniteField {
    fn search_space(c: &Correspondence<Self>, job: &Job) -> Result<(Correspondence<Self>, Vec<Pt<Self>>)> {
        let u = Universe::new(c.field(), job.uint("K", 1)? as u32)?;
        Ok((u.lift(c)?, u.points()?))
    }

    fn height(&self, p: &Pt<Self>) -> Result<Height> {
        Err(Error::WrongField(p.format(self)))
    }
}

/// Derive the PRNG seed of job `index` in a batch.
pub fn stream_seed(seed: u64, index: u64) -> u64 {
    // splitmix64 finalizer on the pair.
    let mut z = seed ^ index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

pub fn run_job(job: &Job) -> Result<Output> {
    job.validate()?;
    let (result, budgets, dot) = match job.field.parse::<FieldSpec>()? {
        FieldSpec::Rationals => run_in(&Rationals, job)?,
        spec => run_in(&spec.finite()?.with_split_seed(job.rng), job)?,
    };
    let job_json = json!({
        "field": job.field,
        "corr": job.corr,
        "command": job.command,
        "params": job.params,
    });
    let json = json!({
        "job": job_json,
        "result": result,
        "budgets": budgets,
        "seed": job.rng,
        "version": job.version,
    });
    Ok(Output { json, dot })
}

fn load_corr<F: RootField>(field: &F, spec: &CorrSpec) -> Result<Correspondence<F>> {
    match spec {
        CorrSpec::Poly(t) => Correspondence::parse_poly(field, t),
        CorrSpec::Map(t) => Correspondence::parse_map(field, t),
    }
}

fn corr_json<F: RootField>(c: &Correspondence<F>) -> Value {
    let field = c.field();
    let (d1, d2) = c.bidegree();
    json!({
        "polynomial": c.format(),
        "bidegree": [d1, d2],
        "components": c.components().iter().map(|(g, m)| json!({
            "F": g.format(field),
            "multiplicity": m,
        })).collect::<Vec<_>>(),
        "map": c.morphism().map(|m| json!({
            "f": m.map.format(field, "x"),
            "transposed": m.transposed,
        })),
    })
}

fn points_json<F: RootField>(field: &F, pts: &[Pt<F>]) -> Vec<String> {
    pts.iter().map(|p| p.format(field)).collect()
}

type Run = (Value, Value, Option<String>);

fn run_in<F: JobField>(field: &F, job: &Job) -> Result<Run> {
    use CommandName::*;
    let corr = job.corr.as_ref().map(|s| load_corr(field, s)).transpose()?;
    let c = || corr.as_ref().ok_or_else(|| Error::MissingField("corr".into()));
    let points = |key: &str| -> Result<Vec<Pt<F>>> { parse_point_list(field, job.required_text(key)?) };
    let other = || -> Result<Correspondence<F>> {
        match (job.text("G")?, job.text("g")?) {
            (Some(_), Some(_)) => Err(Error::InvalidParameter("G".into(), "give one of G or g".into())),
            (Some(t), None) => Correspondence::parse_poly(field, t),
            (None, Some(t)) => Correspondence::parse_map(field, t),
            (None, None) => Err(Error::MissingField("command.G".into())),
        }
    };
    match job.command {
        Graph | CompleteSets | Classify => run_graph(field, c()?, job),
        Compose => Ok((corr_json(&other()?.compose(c()?)?), json!({}), None)),
        Sum => Ok((corr_json(&c()?.sum(&other()?)?), json!({}), None)),
        Transpose => Ok((corr_json(&c()?.transpose()), json!({}), None)),
        TdApply => {
            let h = parse_rational(field, job.required_text("h")?)?;
            let r = td_apply(c()?, &h)?;
            Ok((
                json!({"input": h.format(field, "x"), "output": r.format(field, "x")}),
                json!({}),
                None,
            ))
        }
        TdMatrix => {
            let n = job.usize("n", 1)?;
            let op = td_matrix(c()?, &points("S")?, n)?;
            let m = &op.matrix;
            let rows: Vec<Vec<String>> = (0..m.rows())
                .map(|i| m.row_slice(i).iter().map(|a| field.format_elem(a)).collect())
                .collect();
            Ok((
                json!({
                    "set": points_json(field, &op.set),
                    "n": op.n,
                    "basis": op.basis.iter().map(|b| b.format(field, "x")).collect::<Vec<_>>(),
                    "matrix": rows,
                    "min_poly": op.min_poly.format(field, "X"),
                    "char_poly": op.char_poly.format(field, "X"),
                }),
                json!({"n": n}),
                None,
            ))
        }
        LinFinitary => {
            let n = job.usize("n", 1)?;
            let buffer = job.usize("buffer", DEFAULT_BUFFER)?;
            let v = lin_finitary_test(c()?, &points("S")?, n, buffer)?;
            Ok((
                json!({
                    "status": v.status.view(field),
                    "levels": v.levels.iter().map(|q| q.format(field, "X")).collect::<Vec<_>>(),
                    "evidence": v.evidence,
                }),
                json!({"n_max": n, "buffer": buffer}),
                None,
            ))
        }
        QtdCheck => {
            let q = parse_univariate(field, job.required_text("Q")?, 'X')?;
            let radius = job.usize("radius", 4)?;
            let outcome = match qtd_check(c()?, &q, &points("S")?, radius)? {
                QtdOutcome::Holds => json!({"holds": true}),
                QtdOutcome::FalsifiedAt(x, y) => json!({
                    "holds": false,
                    "witness": [x.format(field), y.format(field)],
                }),
            };
            Ok((outcome, json!({"radius": radius}), None))
        }
        AlmostSplit => {
            let s2 = match job.text("S2")? {
                Some(t) => Some(parse_point_list(field, t)?),
                None => None,
            };
            let n = job.usize("n", 1)?;
            let r = almost_split(field, &points("S")?, &points("S1")?, s2.as_deref(), n)?;
            let fmt = |v: &[crate::ratfunc::RationalFunction<F::Elem>]| {
                v.iter().map(|b| b.format(field, "x")).collect::<Vec<_>>()
            };
            Ok((
                json!({
                    "n": r.n,
                    "n_prime": r.n_prime,
                    "dim": r.dim,
                    "basis": fmt(&r.basis),
                    "complement_ok": r.complement_ok,
                    "dim_bound": r.dim_bound,
                    "dim_bound_ok": r.dim_bound_ok,
                    "third": r.third.as_ref().map(|t| json!({
                        "n_second": t.n_second,
                        "basis": fmt(&t.basis),
                        "threshold": t.threshold.to_string(),
                        "above_threshold": t.above_threshold,
                        "intersection_trivial": t.intersection_trivial,
                    })),
                }),
                json!({}),
                None,
            ))
        }
        Finitary => {
            let d = VerdictBudgets::default();
            let budgets = VerdictBudgets {
                graph: job.budgets()?,
                core_degree: job.usize("M", d.core_degree)?,
                max_order: job.uint("max_order", d.max_order)?,
                n_max: job.usize("n", d.n_max)?,
            };
            let v = finitary_verdict(c()?, budgets);
            Ok((
                json!({
                    "status": v.status,
                    "core": v.core.as_ref().map(|k| json!({
                        "h": k.h.format(field, "x"),
                        "lambda": field.format_elem(&k.lambda),
                    })),
                    "automorphism_order": v.automorphism_order,
                    "log": v.log,
                }),
                serde_json::to_value(budgets).expect("budgets serialize"),
                None,
            ))
        }
        Exceptional => {
            let c = c()?;
            let f = match c.morphism() {
                Some(m) if !m.transposed => m.map.clone(),
                _ => return Err(Error::NotMorphismType),
            };
            let e = exceptional_set_morphism(field, &f)?;
            Ok((json!({"exceptional_set": points_json(field, &e)}), json!({}), None))
        }
        BackwardKernel => {
            let budgets = job.budgets()?;
            let (lifted, cands) = F::search_space(c()?, job)?;
            let k = backward_kernel_search(&lifted, &cands, budgets);
            let lf = lifted.field();
            Ok((
                json!({
                    "kernel": points_json(lf, &k.kernel),
                    "candidates": cands.len(),
                    "sets": k.sets.iter().map(|s| json!({
                        "vertices": points_json(lf, &s.vertices),
                        "hypothesis": s.hypothesis,
                        "forward_complete": s.forward_complete,
                        "equiramified": s.equiramified,
                        "balanced": s.balanced,
                        "conclusion_holds": s.conclusion_holds(),
                    })).collect::<Vec<_>>(),
                }),
                json!({"graph": budgets, "K": job.uint("K", 1)?, "H": job.uint("H", 3)?}),
                None,
            ))
        }
        Bounds => {
            let c = c()?;
            let genus = job.int("genus")?;
            let g = match genus {
                Some(g) if g < 0 => {
                    return Err(Error::InvalidParameter("genus".into(), "must be non-negative".into()))
                }
                Some(g) => g as u64,
                None => genus_upper(c),
            };
            let (d1, d2) = c.bidegree();
            let unbalanced = match unbalanced_bound(c, Some(g)) {
                Ok(b) => json!({"bound": b.bound.to_string(), "transposed": b.transposed}),
                Err(Error::Balanced) => Value::Null,
                Err(e) => return Err(e),
            };
            let pakovich = if d1 == d2 && field.characteristic() == 0 {
                let (_, p) = pakovich_bound(g as i64, d1 as i64)?;
                serde_json::to_value(p).expect("report serializes")
            } else {
                Value::Null
            };
            Ok((
                json!({
                    "bidegree": [d1, d2],
                    "genus": g,
                    "genus_is_upper_bound": genus.is_none(),
                    "unbalanced": unbalanced,
                    "pakovich": pakovich,
                }),
                json!({}),
                None,
            ))
        }
        Height => {
            let h = |p: &Pt<F>| -> Result<Value> {
                let h = field.height(p)?;
                Ok(json!({
                    "point": p.format(field),
                    "a": h.a.to_string(),
                    "b": h.b.to_string(),
                    "log_height": format!("{:.12}", h.log),
                }))
            };
            match job.text("point")? {
                Some(t) => Ok((h(&ProjectivePoint::parse(field, t)?)?, json!({}), None)),
                None => {
                    if field.characteristic() != 0 {
                        return Err(Error::WrongField(field.spec_string()));
                    }
                    let bound = job.uint("H", 3)?;
                    let list: Vec<String> = points_of_height(bound)
                        .iter()
                        .map(|p| p.format(&Rationals))
                        .collect();
                    Ok((json!({"count": list.len(), "points": list}), json!({"H": bound}), None))
                }
            }
        }
    }
}

fn run_graph<F: JobField>(field: &F, c: &Correspondence<F>, job: &Job) -> Result<Run> {
    let budgets = job.budgets()?;
    let strict = job.flag("strict")?;
    let seed = job.text("seed")?.map(|t| ProjectivePoint::parse(field, t)).transpose()?;
    let set = job.text("S")?.map(|t| parse_point_list(field, t)).transpose()?;
    match (job.command, seed, set) {
        (_, Some(seed), _) => {
            let r = complete_set_search(c, &seed, budgets);
            let mut out = r.to_json(field);
            if job.command == CommandName::Graph && r.is_certified() {
                let a = adjacency_from_edges(&r.vertices, &r.edges);
                out["adjacency"] = json!(a.entries);
            }
            let dot = r.to_dot(field, "complete_set");
            Ok((out, json!(budgets), Some(dot)))
        }
        (CommandName::CompleteSets, None, _) => {
            let (lifted, pts) = F::search_space(c, job)?;
            let lf = lifted.field();
            let mut b = budgets;
            if field.characteristic() != 0 || job.params.contains_key("K") {
                b.max_ext = job.uint("K", budgets.max_ext as u64)? as u32;
            }
            let reports = enumerate_components(&lifted, &pts, b);
            let certified: Vec<_> = reports.iter().filter(|r| r.is_certified()).collect();
            let mut vertices: Vec<Pt<F>> = certified.iter().flat_map(|r| r.vertices.clone()).collect();
            vertices.sort();
            let edges: Vec<_> = certified.iter().flat_map(|r| r.edges.clone()).collect();
            let out = json!({
                "field": lf.spec_string(),
                "points": pts.len(),
                "certified": certified.len(),
                "uncertified": reports.len() - certified.len(),
                "sets": certified.iter().map(|r| r.to_json(lf)).collect::<Vec<_>>(),
            });
            let mut bj = json!(b);
            bj["K"] = json!(job.uint("K", 1)?);
            bj["H"] = json!(job.uint("H", 3)?);
            Ok((out, bj, Some(dot(lf, "complete_sets", &vertices, &edges))))
        }
        (_, None, Some(set)) => {
            let mut vs = set;
            vs.sort();
            vs.dedup();
            let edges = Explorer::new(c).edges_within(&vs);
            let class = classify_edges(field, &vs, &edges, strict)?;
            let a = adjacency_from_edges(&vs, &edges);
            let mut out = json!({
                "vertices": points_json(field, &vs),
                "edges": edges.iter().map(|e| crate::graph::edge_json(field, e)).collect::<Vec<_>>(),
                "classification": classification_json(&class),
                "adjacency": a.entries,
            });
            let mut extra = Map::new();
            if let Some(n) = job.int("n")? {
                let n = usize::try_from(n).map_err(|_| Error::InvalidParameter("n".into(), "negative".into()))?;
                let counts: Vec<Vec<String>> = (0..vs.len())
                    .map(|y| (0..vs.len()).map(|x| a.path_count_idx(x, y, n).to_string()).collect())
                    .collect();
                out["path_counts"] = json!(counts);
                extra.insert("n".into(), json!(n));
            }
            Ok((out, Value::Object(extra), Some(dot(field, "set", &vs, &edges))))
        }
        _ => Err(Error::MissingField("command.seed".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = "version = 1\n[field]   spec = \"Fp: 5\"\n[corr]    f = \"2*x\"\n[command] name = \"graph\"\n          seed = \"[2:1]\"\n";

    #[test]
    fn minimal_job_parses() {
        let job = parse_job(MINIMAL).unwrap();
        assert_eq!(job.command, CommandName::Graph);
        assert_eq!(job.corr, Some(CorrSpec::Map("2*x".into())));
        assert_eq!(job.params["seed"], Param::Str("[2:1]".into()));
        assert_eq!(parse_job(&job.to_text()).unwrap(), job);
    }

    #[test]
    fn structural_errors() {
        let no_field = "version = 1\n[corr] f = \"x^2\"\n[command] name = \"graph\"\nseed = \"0\"\n";
        assert_eq!(parse_job(no_field).unwrap_err(), Error::MissingField("field".into()));
        let unknown = MINIMAL.replace("\"graph\"", "\"spectra\"");
        assert_eq!(parse_job(&unknown).unwrap_err(), Error::UnknownCommand("spectra".into()));
        let extra = format!("{MINIMAL}colour = 3\n");
        assert!(matches!(parse_job(&extra).unwrap_err(), Error::Syntax { .. }));
        let stray = MINIMAL.replace("[field]", "[field]\nbogus = 1\n");
        assert!(matches!(parse_job(&stray).unwrap_err(), Error::Syntax { .. }));
        let no_version = MINIMAL.replace("version = 1\n", "");
        assert_eq!(parse_job(&no_version).unwrap_err(), Error::MissingField("version".into()));
        let bad = MINIMAL.replace("seed = \"[2:1]\"", "seed = [2:1]");
        assert!(matches!(parse_job(&bad).unwrap_err(), Error::Syntax { .. }));
    }

    #[test]
    fn graph_job_runs() {
        let out = run_job(&parse_job(MINIMAL).unwrap()).unwrap();
        assert_eq!(out.json["version"], 1);
        assert_eq!(out.json["result"]["status"], "certified");
        assert_eq!(out.json["result"]["vertices"], json!(["[1:1]", "[2:1]", "[3:1]", "[4:1]"]));
        assert!(out.dot.unwrap().starts_with("digraph"));
    }

    #[test]
    fn precondition_errors_are_not_parse_errors() {
        let job = Job::new("Q", Some(CorrSpec::Map("2*x".into())), CommandName::Exceptional);
        let err = run_job(&job).unwrap_err();
        assert_eq!(err, Error::DegreeOne);
        assert!(!err.is_parse_error());
    }

    #[test]
    fn stream_seeds_differ() {
        assert_ne!(stream_seed(42, 0), stream_seed(42, 1));
        assert_eq!(stream_seed(7, 3), stream_seed(7, 3));
    }
}
