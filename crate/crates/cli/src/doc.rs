//! JSON documents read and written by the command line tool.
//!
//! Polynomials are lists of `{exponents, num, den}` terms over a variable
//! list declared once per document. Integers that may grow without bound are
//! decimal strings; readers also accept plain JSON integers.

use std::fmt;
use std::io::Write;
use std::ops::RangeInclusive;
use std::process::{Command, Stdio};
use std::sync::Arc;

use arith_bertini::arithseek::{NormFamily, ProblemSpec, SectionCertificate, DEFAULT_M_RANGE};
use arith_bertini::bertini::{BadLocusCertificate, LinearSeries};
use arith_bertini::cnsolve::{OffsetVector, ResiduePoint};
use arith_bertini::elimination::{BiSystem, HypersurfaceCertificate, YFactor, YForm};
use arith_bertini::exactalg::{format_rational, indexed_vars, make_vars, parse_rational, Domain, MultiPoly, Scalar, Vars};
use arith_bertini::variety::{SmoothnessReport, VarietyPresentation};
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::de::{self, Deserializer};
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Levels checked by the Hilbert bound validation when a variety is loaded.
pub const HILBERT_CHECK_LEVELS: u32 = 12;

/// A document that parsed as JSON but is not a valid instance.
#[derive(Debug)]
pub struct SchemaError(pub String);

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for SchemaError {}

fn schema(at: &str, msg: impl fmt::Display) -> SchemaError {
    SchemaError(format!("{at}: {msg}"))
}

/// Integer text of any size; reads strings or JSON integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntText(pub BigInt);

impl Serialize for IntText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

impl<'de> Deserialize<'de> for IntText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => s.trim().parse().map(IntText).map_err(|_| de::Error::custom(format!("invalid integer `{s}`"))),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(IntText(n.to_string().parse().expect("integer text"))),
            other => Err(de::Error::custom(format!("expected an integer string, found {other}"))),
        }
    }
}

/// Rational text `a` or `a/b`; reads strings or JSON integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatText(pub BigRational);

impl Serialize for RatText {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(&self.0))
    }
}

impl<'de> Deserialize<'de> for RatText {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        match Value::deserialize(d)? {
            Value::String(s) => parse_rational(&s).map(RatText).map_err(de::Error::custom),
            Value::Number(n) if n.is_i64() || n.is_u64() => Ok(RatText(parse_rational(&n.to_string()).expect("integer text"))),
            other => Err(de::Error::custom(format!("expected a rational string, found {other}"))),
        }
    }
}

fn one() -> IntText {
    IntText(BigInt::from(1))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDoc {
    pub exponents: Vec<u32>,
    pub num: IntText,
    #[serde(default = "one")]
    pub den: IntText,
}

pub type PolyDoc = Vec<TermDoc>;

pub fn poly_to_doc(p: &MultiPoly) -> PolyDoc {
    p.terms()
        .map(|(m, c)| {
            let r = match c {
                Scalar::Rat(r) => r.clone(),
                Scalar::Mod(x) => BigRational::from_integer(BigInt::from(x.value())),
            };
            TermDoc { exponents: m.exponents().to_vec(), num: IntText(r.numer().clone()), den: IntText(r.denom().clone()) }
        })
        .collect()
}

pub fn poly_from_doc(doc: &PolyDoc, vars: &Vars, at: &str) -> Result<MultiPoly, SchemaError> {
    let mut terms = Vec::with_capacity(doc.len());
    for (i, t) in doc.iter().enumerate() {
        if t.exponents.len() != vars.len() {
            return Err(schema(
                &format!("{at}[{i}].exponents"),
                format!("expected {} exponents, found {}", vars.len(), t.exponents.len()),
            ));
        }
        if t.den.0 == BigInt::from(0) {
            return Err(schema(&format!("{at}[{i}].den"), "zero denominator"));
        }
        terms.push((t.exponents.clone(), Scalar::rational(BigRational::new(t.num.0.clone(), t.den.0.clone()))));
    }
    MultiPoly::from_terms(vars, Domain::Rational, terms).map_err(|e| schema(at, e))
}

fn polys_from_doc(docs: &[PolyDoc], vars: &Vars, at: &str) -> Result<Vec<MultiPoly>, SchemaError> {
    docs.iter().enumerate().map(|(i, d)| poly_from_doc(d, vars, &format!("{at}[{i}]"))).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VarietyDoc {
    pub ambient_dim: usize,
    pub dim: usize,
    pub degree: u64,
    pub generators: Vec<PolyDoc>,
}

impl VarietyDoc {
    /// Builds the presentation and checks the Hilbert bound on low levels.
    pub fn load(&self, vars: &Vars, at: &str) -> Result<VarietyPresentation, SchemaError> {
        if vars.len() != self.ambient_dim + 1 {
            return Err(schema(
                &format!("{at}.ambient_dim"),
                format!("{} coordinates declared for ambient dimension {}", vars.len(), self.ambient_dim),
            ));
        }
        let gens = polys_from_doc(&self.generators, vars, &format!("{at}.generators"))?;
        let v = VarietyPresentation::with_vars(vars.clone(), gens, self.dim, self.degree).map_err(|e| schema(at, e))?;
        v.check_hilbert_bound(HILBERT_CHECK_LEVELS).map_err(|e| schema(at, e))?;
        Ok(v)
    }
}

fn coordinate_vars(declared: &Option<Vec<String>>, ambient_dim: usize) -> Result<Vars, SchemaError> {
    match declared {
        Some(names) => {
            let mut sorted = names.clone();
            sorted.sort();
            sorted.dedup();
            if sorted.len() != names.len() || names.iter().any(|n| n.is_empty()) {
                return Err(schema("variables", "names must be distinct and nonempty"));
            }
            Ok(make_vars(names))
        }
        None => Ok(indexed_vars("X", ambient_dim + 1)),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeriesDoc {
    /// Level-one sections; the coordinate hyperplanes when omitted.
    #[serde(default)]
    pub sections: Option<Vec<PolyDoc>>,
    pub kappa: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub enum NormDoc {
    /// `ℓ1(s) · θ^m`.
    Theta(RatText),
    /// A program reading `{m, variables, section}` on stdin and printing
    /// the norm as rational text.
    Command(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointDoc {
    pub coords: Vec<RatText>,
    /// 0 for a rational point, otherwise a prime.
    #[serde(default)]
    pub characteristic: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemDoc {
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub variety: VarietyDoc,
    pub series: SeriesDoc,
    pub norm: NormDoc,
    #[serde(default)]
    pub subvarieties: Vec<VarietyDoc>,
    #[serde(default)]
    pub points: Vec<PointDoc>,
    #[serde(default)]
    pub m_range: Option<String>,
    #[serde(default)]
    pub seed: u64,
}

/// Parses `A..B` as the inclusive range `A..=B`.
pub fn parse_m_range(text: &str) -> Result<RangeInclusive<u32>, SchemaError> {
    let bad = || schema("m_range", format!("expected `A..B`, found `{text}`"));
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let b = b.strip_prefix('=').unwrap_or(b);
    let a: u32 = a.trim().parse().map_err(|_| bad())?;
    let b: u32 = b.trim().parse().map_err(|_| bad())?;
    if a == 0 || a > b {
        return Err(schema("m_range", format!("`{text}` must satisfy 1 <= A <= B")));
    }
    Ok(a..=b)
}

fn external_norm(argv: Vec<String>, vars: Vars) -> NormFamily {
    NormFamily::External(Arc::new(move |s: &MultiPoly, m: u32| {
        let input = serde_json::json!({
            "m": m,
            "variables": vars.iter().collect::<Vec<_>>(),
            "section": poly_to_doc(s),
        });
        let mut child = Command::new(&argv[0])
            .args(&argv[1..])
            .stdin(Stdio::piped())
            .stdout(Stdio::piped())
            .spawn()
            .map_err(|e| format!("cannot start `{}`: {e}", argv[0]))?;
        let mut stdin = child.stdin.take().ok_or("no stdin")?;
        stdin.write_all(input.to_string().as_bytes()).map_err(|e| e.to_string())?;
        drop(stdin);
        let out = child.wait_with_output().map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("`{}` exited with {}", argv[0], out.status));
        }
        let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
        parse_rational(&text).map_err(|e| e.to_string())
    }))
}

impl ProblemDoc {
    /// Builds and validates the problem. `m_range` and `seed` override the
    /// document values.
    pub fn load(&self, m_range: Option<RangeInclusive<u32>>, seed: Option<u64>) -> Result<ProblemSpec, SchemaError> {
        let vars = coordinate_vars(&self.variables, self.variety.ambient_dim)?;
        let x = self.variety.load(&vars, "variety")?;
        let series = match &self.series.sections {
            Some(docs) => LinearSeries::new(x.clone(), polys_from_doc(docs, &vars, "series.sections")?, self.series.kappa),
            None => LinearSeries::hyperplane_series(x.clone(), self.series.kappa),
        }
        .map_err(|e| schema("series", e))?;
        let norm = match &self.norm {
            NormDoc::Theta(t) => NormFamily::l1_theta(t.0.clone()).map_err(|e| schema("norm.theta", e))?,
            NormDoc::Command(argv) if argv.is_empty() => return Err(schema("norm.command", "empty command")),
            NormDoc::Command(argv) => external_norm(argv.clone(), vars.clone()),
        };
        let subvarieties = self
            .subvarieties
            .iter()
            .enumerate()
            .map(|(j, d)| d.load(&vars, &format!("subvarieties[{j}]")))
            .collect::<Result<Vec<_>, _>>()?;
        let mut char0_points = Vec::new();
        let mut charp_points = Vec::new();
        for (i, p) in self.points.iter().enumerate() {
            let coords: Vec<BigRational> = p.coords.iter().map(|c| c.0.clone()).collect();
            if p.characteristic == 0 {
                char0_points.push(coords);
                continue;
            }
            let mut residues = Vec::with_capacity(coords.len());
            for c in &coords {
                let bad = || schema(&format!("points[{i}].coords"), "residue coordinates must be integers in [0, characteristic)");
                if !c.is_integer() {
                    return Err(bad());
                }
                let v: u64 = c.to_integer().try_into().map_err(|_| bad())?;
                if v >= p.characteristic {
                    return Err(bad());
                }
                residues.push(v);
            }
            charp_points.push(ResiduePoint { prime: p.characteristic, coords: residues });
        }
        let m_range = match (m_range, &self.m_range) {
            (Some(r), _) => r,
            (None, Some(text)) => parse_m_range(text)?,
            (None, None) => DEFAULT_M_RANGE,
        };
        let problem = ProblemSpec {
            series,
            norm,
            subvarieties,
            char0_points,
            charp_points,
            m_range,
            seed: seed.unwrap_or(self.seed),
        };
        problem.validate().map_err(|e| schema("problem", e))?;
        Ok(problem)
    }
}

/// SHA-256 of the problem content, ignoring `m_range` and `seed`. Object
/// keys are sorted, so formatting and key order do not matter.
pub fn problem_hash(doc: &Value) -> String {
    let mut v = doc.clone();
    if let Value::Object(map) = &mut v {
        map.remove("m_range");
        map.remove("seed");
    }
    hex::encode(Sha256::digest(serde_json::to_vec(&v).expect("serializable")))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BiSystemDoc {
    /// Coordinates of the variety; equations use these followed by
    /// `Y0, ..., Y{y_count-1}`.
    #[serde(default)]
    pub variables: Option<Vec<String>>,
    pub variety: VarietyDoc,
    pub y_count: usize,
    pub equations: Vec<PolyDoc>,
    #[serde(default)]
    pub p_bound: Option<u64>,
    #[serde(default)]
    pub q_bound: Option<u64>,
}

impl BiSystemDoc {
    pub fn load(&self) -> Result<BiSystem, SchemaError> {
        let xv = coordinate_vars(&self.variables, self.variety.ambient_dim)?;
        let x = self.variety.load(&xv, "variety")?;
        let all = arith_bertini::elimination::bi_vars(&x, self.y_count);
        let eqs = polys_from_doc(&self.equations, &all, "equations")?;
        let sys = BiSystem::new(x, self.y_count, eqs).map_err(|e| schema("equations", e))?;
        let (p, q) = (self.p_bound.unwrap_or(sys.p_bound()), self.q_bound.unwrap_or(sys.q_bound()));
        sys.with_bounds(p, q).map_err(|e| schema("p_bound", e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FactorDoc {
    Poly(PolyDoc),
    /// Determinant of a matrix of forms, not expanded.
    Minor { degree: u64, rows: Vec<Vec<PolyDoc>> },
}

/// Sum over columns of the degree of a nonzero entry.
fn minor_degree(rows: &[Vec<MultiPoly>]) -> u64 {
    let cols = rows.first().map_or(0, Vec::len);
    (0..cols).filter_map(|j| rows.iter().find_map(|r| r[j].total_degree())).sum()
}

pub fn yform_to_doc(f: &YForm) -> Vec<FactorDoc> {
    f.factors()
        .iter()
        .map(|fa| match fa {
            YFactor::Expanded(p) => FactorDoc::Poly(poly_to_doc(p)),
            YFactor::Minor(rows) => FactorDoc::Minor {
                degree: minor_degree(rows),
                rows: rows.iter().map(|r| r.iter().map(poly_to_doc).collect()).collect(),
            },
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HypersurfaceDoc {
    pub variables: Vec<String>,
    pub poly: Vec<FactorDoc>,
    pub degree: u64,
    pub degree_bound: String,
    pub ell: u64,
    pub witness_point: Vec<IntText>,
    pub seed: u64,
}

impl HypersurfaceDoc {
    pub fn new(c: &HypersurfaceCertificate) -> Self {
        HypersurfaceDoc {
            variables: c.poly.vars().iter().cloned().collect(),
            poly: yform_to_doc(&c.poly),
            degree: c.degree,
            degree_bound: c.degree_bound.to_string(),
            ell: c.ell,
            witness_point: c.witness_point.iter().cloned().map(IntText).collect(),
            seed: c.seed,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BadLocusDoc {
    pub problem_hash: String,
    pub m: u32,
    pub variables: Vec<String>,
    pub dual_variables: Vec<String>,
    pub level_basis: Vec<PolyDoc>,
    pub poly: Vec<FactorDoc>,
    pub degree: u64,
    pub bound_value: String,
    pub empty: bool,
    pub point_forms: Vec<PolyDoc>,
    pub hypersurface: Option<HypersurfaceDoc>,
}

impl BadLocusDoc {
    pub fn new(c: &BadLocusCertificate, problem_hash: String, xvars: &Vars) -> Self {
        BadLocusDoc {
            problem_hash,
            m: c.m,
            variables: xvars.iter().cloned().collect(),
            dual_variables: c.y_vars().iter().cloned().collect(),
            level_basis: c.basis.forms.iter().map(poly_to_doc).collect(),
            poly: yform_to_doc(&c.poly),
            degree: c.degree,
            bound_value: c.bound_value.to_string(),
            empty: c.empty,
            point_forms: c.point_forms.iter().map(poly_to_doc).collect(),
            hypersurface: c.hypersurface.as_ref().map(HypersurfaceDoc::new),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CnDoc {
    pub variables: Vec<String>,
    pub oracle: PolyDoc,
    pub grids: Vec<Vec<RatText>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothnessDoc {
    pub smooth: bool,
    /// Description of the singularity evidence.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateDoc {
    pub problem_hash: String,
    pub variables: Vec<String>,
    pub m: u32,
    pub basis: Vec<PolyDoc>,
    pub coefficients: Vec<IntText>,
    pub section: PolyDoc,
    pub norm_value: RatText,
    pub smoothness: Vec<SmoothnessDoc>,
    pub point_values: Vec<RatText>,
    pub residue_values: Vec<u64>,
    pub bad_locus_value: RatText,
    pub bad_locus_degree: u64,
    pub bound_value: IntText,
    pub offsets: OffsetVector,
    pub seed: u64,
}

impl CertificateDoc {
    pub fn new(c: &SectionCertificate, problem_hash: String, vars: &Vars) -> Self {
        CertificateDoc {
            problem_hash,
            variables: vars.iter().cloned().collect(),
            m: c.m,
            basis: c.basis.iter().map(poly_to_doc).collect(),
            coefficients: c.coefficients.iter().cloned().map(IntText).collect(),
            section: poly_to_doc(&c.section),
            norm_value: RatText(c.norm_value.clone()),
            smoothness: c
                .smooth_witnesses
                .iter()
                .map(|r| SmoothnessDoc { smooth: r.smooth, witness: r.witness.as_ref().map(ToString::to_string) })
                .collect(),
            point_values: c.point_values.iter().cloned().map(RatText).collect(),
            residue_values: c.residue_values.clone(),
            bad_locus_value: RatText(c.bad_locus_value.clone()),
            bad_locus_degree: c.bad_locus_degree,
            bound_value: IntText(c.bound_value.clone().into()),
            offsets: c.offsets.clone(),
            seed: c.seed,
        }
    }

    /// Rebuilds the certificate over the problem's coordinates. Recorded
    /// singularity evidence is descriptive and is not reloaded.
    pub fn load(&self, vars: &Vars) -> Result<SectionCertificate, SchemaError> {
        if self.variables.iter().map(String::as_str).ne(vars.iter().map(String::as_str)) {
            return Err(schema("variables", "certificate coordinates differ from the problem's"));
        }
        let bound_value: BigUint =
            self.bound_value.0.clone().try_into().map_err(|_| schema("bound_value", "must be nonnegative"))?;
        Ok(SectionCertificate {
            m: self.m,
            basis: polys_from_doc(&self.basis, vars, "basis")?,
            coefficients: self.coefficients.iter().map(|c| c.0.clone()).collect(),
            section: poly_from_doc(&self.section, vars, "section")?,
            norm_value: self.norm_value.0.clone(),
            smooth_witnesses: self.smoothness.iter().map(|s| SmoothnessReport { smooth: s.smooth, witness: None }).collect(),
            point_values: self.point_values.iter().map(|r| r.0.clone()).collect(),
            residue_values: self.residue_values.clone(),
            bad_locus_value: self.bad_locus_value.0.clone(),
            bad_locus_degree: self.bad_locus_degree,
            bound_value,
            offsets: self.offsets.clone(),
            seed: self.seed,
        })
    }
}
