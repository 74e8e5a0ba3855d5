//! Search for a small section whose divisor is smooth on given
//! subvarieties and avoids given points, and an independent checker for
//! the resulting certificates.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::bertini::{point_forms, restricted_bad_locus, BertiniError, LinearSeries};
use crate::cnsolve::{combined_grid_search, poschr_offsets, CnError, FnOracle, OffsetVector, PolyOracle, ResiduePoint};
use crate::elimination::YForm;
use crate::exactalg::{indexed_vars, AlgebraError, Domain, Monomial, MultiPoly, Scalar};
use crate::linalg::{self, IncrementalBasis};
use crate::variety::{smoothness_check, SmoothnessReport, VarietyError, VarietyPresentation};

/// Default levels tried by the search.
pub const DEFAULT_M_RANGE: RangeInclusive<u32> = 1..=16;
const MAX_REDUCTION_SWEEPS: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Bertini(BertiniError),
    #[error(transparent)]
    Cn(CnError),
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("theta must lie strictly between 0 and 1")]
    ThetaOutOfRange,
    #[error("no section of norm < 1 found for levels up to {last_m}")]
    NormBudgetNotReached { last_m: u32 },
    #[error("bad locus at level {m} covers the dual space")]
    BadLocusCoversSpace { m: u32 },
    #[error("point {index} lies on every level-{m} section")]
    PointInBaseLocus { index: usize, m: u32 },
    #[error("every section vanishes at residue point {index}")]
    ResidueBasePoint { index: usize },
    #[error("sections are linearly dependent")]
    DependentSections,
    #[error("norm oracle failed: {0}")]
    NormOracle(String),
}

impl From<BertiniError> for ArithError {
    fn from(e: BertiniError) -> Self {
        match e {
            BertiniError::BadLocusCoversSpace { m, .. } => ArithError::BadLocusCoversSpace { m },
            BertiniError::PointInBaseLocus { index, m } => ArithError::PointInBaseLocus { index, m },
            other => ArithError::Bertini(other),
        }
    }
}

impl From<CnError> for ArithError {
    fn from(e: CnError) -> Self {
        match e {
            CnError::BasePointAtResidue { index } => ArithError::ResidueBasePoint { index },
            other => ArithError::Cn(other),
        }
    }
}

/// Caller-supplied norm `(section, level) ↦ ‖s‖_m`.
pub type NormFn = dyn Fn(&MultiPoly, u32) -> Result<BigRational, String> + Send + Sync;

/// A multiplicative family of norms on the levels of the series.
#[derive(Clone)]
pub enum NormFamily {
    /// `‖s‖_m = ℓ1(s) · θ^m`.
    L1Theta(BigRational),
    External(Arc<NormFn>),
}

impl fmt::Debug for NormFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormFamily::L1Theta(t) => write!(f, "L1Theta({t})"),
            NormFamily::External(_) => write!(f, "External(..)"),
        }
    }
}

impl NormFamily {
    pub fn l1_theta(theta: BigRational) -> Result<Self, ArithError> {
        if !theta.is_positive() || theta >= BigRational::one() {
            return Err(ArithError::ThetaOutOfRange);
        }
        Ok(NormFamily::L1Theta(theta))
    }

    pub fn eval(&self, s: &MultiPoly, m: u32) -> Result<BigRational, ArithError> {
        match self {
            NormFamily::L1Theta(theta) => l1_theta_norm(s, m, theta),
            NormFamily::External(f) => f(s, m).map_err(ArithError::NormOracle),
        }
    }

    /// `‖s t‖_{m+n} <= ‖s‖_m ‖t‖_n` on one sample.
    pub fn multiplicative_on(&self, s: &MultiPoly, m: u32, t: &MultiPoly, n: u32) -> Result<bool, ArithError> {
        let st = s.checked_mul(t)?;
        Ok(self.eval(&st, m + n)? <= self.eval(s, m)? * self.eval(t, n)?)
    }
}

/// Samples `‖e_i e_j‖_2 <= ‖e_i‖_1 ‖e_j‖_1` over pairs of level-one
/// sections; `false` reports the first violation.
pub fn sample_multiplicativity(norm: &NormFamily, series: &LinearSeries) -> Result<bool, ArithError> {
    let e = series.level_one();
    for i in 0..e.len() {
        for j in i..e.len() {
            if !norm.multiplicative_on(&e[i], 1, &e[j], 1)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `ℓ1(s) · θ^m`.
pub fn l1_theta_norm(s: &MultiPoly, m: u32, theta: &BigRational) -> Result<BigRational, ArithError> {
    if !theta.is_positive() || *theta >= BigRational::one() {
        return Err(ArithError::ThetaOutOfRange);
    }
    Ok(s.l1_norm()? * num_traits::pow(theta.clone(), m as usize))
}

/// Integer sections together with the unimodular change of basis
/// `forms[i] = Σ_j transform[i][j] · input[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedBasis {
    pub forms: Vec<MultiPoly>,
    pub transform: Vec<Vec<BigInt>>,
}

fn coefficient_vectors(forms: &[MultiPoly]) -> Vec<Vec<Scalar>> {
    let mut monos: Vec<Monomial> = forms.iter().flat_map(|f| f.terms().map(|(m, _)| m.clone())).collect();
    monos.sort();
    monos.dedup();
    forms.iter().map(|f| monos.iter().map(|m| f.coefficient(m)).collect()).collect()
}

fn dot(a: &MultiPoly, b: &MultiPoly) -> BigRational {
    a.terms()
        .map(|(m, c)| c.as_rational().unwrap() * b.coefficient(m).as_rational().unwrap())
        .fold(BigRational::zero(), |x, y| x + y)
}

fn round(r: &BigRational) -> BigInt {
    (r + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

/// Pairwise size reduction to a fixed point, then ascending norm order
/// (ties broken by descending leading monomial).
pub fn reduce_basis(sections: &[MultiPoly], norm: &NormFamily, m: u32) -> Result<ReducedBasis, ArithError> {
    let n = sections.len();
    for s in sections {
        if s.integer_coefficients().is_none() {
            return Err(ArithError::InvalidProblem("sections must have integer coefficients".into()));
        }
    }
    if linalg::rank(&coefficient_vectors(sections)) != n {
        return Err(ArithError::DependentSections);
    }
    let mut forms = sections.to_vec();
    let mut transform: Vec<Vec<BigInt>> =
        (0..n).map(|i| (0..n).map(|j| BigInt::from((i == j) as i32)).collect()).collect();
    let mut norms: Vec<BigRational> = forms.iter().map(|f| norm.eval(f, m)).collect::<Result<_, _>>()?;
    for _ in 0..MAX_REDUCTION_SWEEPS {
        let mut changed = false;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let k0 = round(&(dot(&forms[i], &forms[j]) / dot(&forms[j], &forms[j])));
                let mut best: Option<(BigRational, BigInt, MultiPoly)> = None;
                for k in [k0.clone(), &k0 - 1, &k0 + 1] {
                    if k.is_zero() {
                        continue;
                    }
                    let cand = forms[i].checked_sub(&forms[j].scale(&Scalar::from_bigint(&k, Domain::Rational)))?;
                    let v = norm.eval(&cand, m)?;
                    if v < norms[i] && best.as_ref().is_none_or(|b| v < b.0) {
                        best = Some((v, k, cand));
                    }
                }
                if let Some((v, k, cand)) = best {
                    forms[i] = cand;
                    norms[i] = v;
                    let row_j = transform[j].clone();
                    for (t, r) in transform[i].iter_mut().zip(row_j) {
                        *t -= &k * r;
                    }
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        norms[a].cmp(&norms[b]).then_with(|| {
            let la = forms[a].leading_term().map(|t| t.0.clone());
            let lb = forms[b].leading_term().map(|t| t.0.clone());
            lb.cmp(&la)
        })
    });
    Ok(ReducedBasis {
        forms: order.iter().map(|&i| forms[i].clone()).collect(),
        transform: order.iter().map(|&i| transform[i].clone()).collect(),
    })
}

/// Input of the section search.
#[derive(Debug, Clone)]
pub struct ProblemSpec {
    pub series: LinearSeries,
    pub norm: NormFamily,
    /// Smooth subvarieties on which the divisor must be smooth.
    pub subvarieties: Vec<VarietyPresentation>,
    /// Rational points where the section must not vanish.
    pub char0_points: Vec<Vec<BigRational>>,
    /// Points over finite fields where the section must not vanish.
    pub charp_points: Vec<ResiduePoint>,
    pub m_range: RangeInclusive<u32>,
    pub seed: u64,
}

impl ProblemSpec {
    /// Checks integrality of the model and that points lie on the variety.
    pub fn validate(&self) -> Result<(), ArithError> {
        let x = self.series.variety();
        for g in x.generators() {
            if g.integer_coefficients().is_none() {
                return Err(ArithError::InvalidProblem("variety generators must have integer coefficients".into()));
            }
        }
        for e in self.series.level_one() {
            if e.integer_coefficients().is_none() {
                return Err(ArithError::InvalidProblem("sections must have integer coefficients".into()));
            }
        }
        if self.m_range.is_empty() || *self.m_range.start() == 0 {
            return Err(ArithError::InvalidProblem("level range must be nonempty and start at 1 or more".into()));
        }
        for (i, pt) in self.char0_points.iter().enumerate() {
            let sc: Vec<Scalar> = pt.iter().cloned().map(Scalar::rational).collect();
            if sc.len() != x.nvars() || sc.iter().all(Scalar::is_zero) || !x.contains_point(&sc)? {
                return Err(ArithError::InvalidProblem(format!("rational point {i} is not on the variety")));
            }
        }
        for (i, pt) in self.charp_points.iter().enumerate() {
            if !is_prime(pt.prime) {
                return Err(ArithError::InvalidProblem(format!("residue point {i}: {} is not prime", pt.prime)));
            }
            if pt.coords.len() != x.nvars() || pt.coords.iter().any(|&c| c >= pt.prime) || pt.coords.iter().all(|&c| c == 0) {
                return Err(ArithError::InvalidProblem(format!("residue point {i} has invalid coordinates")));
            }
            if !x.contains_point(&pt.scalars())? {
                return Err(ArithError::InvalidProblem(format!("residue point {i} is not on the variety mod {}", pt.prime)));
            }
        }
        for (j, y) in self.subvarieties.iter().enumerate() {
            if y.vars()[..] != x.vars()[..] {
                return Err(ArithError::InvalidProblem(format!("subvariety {j} uses other coordinates")));
            }
        }
        Ok(())
    }
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

/// A section with its recorded evidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SectionCertificate {
    pub m: u32,
    /// The level-`m` basis the coefficients refer to.
    pub basis: Vec<MultiPoly>,
    pub coefficients: Vec<BigInt>,
    pub section: MultiPoly,
    pub norm_value: BigRational,
    pub smooth_witnesses: Vec<SmoothnessReport>,
    pub point_values: Vec<BigRational>,
    pub residue_values: Vec<u64>,
    /// The product of bad-locus forms at the section's coefficients.
    pub bad_locus_value: BigRational,
    pub bad_locus_degree: u64,
    pub bound_value: BigUint,
    pub offsets: OffsetVector,
    pub seed: u64,
}

/// What happened at one level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelRecord {
    pub m: u32,
    pub basis_size: usize,
    /// Degree bound for the oracle: the `P(m)` of each subvariety plus one
    /// per rational point.
    pub bound_value: BigUint,
    pub oracle_degree: u64,
    pub offsets: Option<OffsetVector>,
    pub coefficients: Option<Vec<BigInt>>,
    pub norm: Option<BigRational>,
    pub outcome: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunLog {
    pub levels: Vec<LevelRecord>,
}

impl fmt::Display for RunLog {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.levels {
            write!(f, "m={} N={} deg bound={} deg u={}", r.m, r.basis_size, r.bound_value, r.oracle_degree)?;
            if let Some(o) = &r.offsets {
                write!(f, " F={} offsets={:?}", o.modulus, o.offsets)?;
            }
            if let Some(c) = &r.coefficients {
                let c: Vec<String> = c.iter().map(ToString::to_string).collect();
                write!(f, " coefficients=[{}]", c.join(", "))?;
            }
            if let Some(n) = &r.norm {
                write!(f, " norm={n}")?;
            }
            writeln!(f, " -> {}", r.outcome)?;
        }
        Ok(())
    }
}

/// Runs the search, recording every level in `log`.
pub fn search_with_log(problem: &ProblemSpec, log: &mut RunLog) -> Result<SectionCertificate, ArithError> {
    problem.validate()?;
    for m in problem.m_range.clone() {
        match search_level(problem, m, log)? {
            Some(cert) => return Ok(cert),
            None => continue,
        }
    }
    Err(ArithError::NormBudgetNotReached { last_m: *problem.m_range.end() })
}

pub fn find_small_smooth_section(problem: &ProblemSpec) -> Result<(SectionCertificate, RunLog), ArithError> {
    let mut log = RunLog::default();
    let cert = search_with_log(problem, &mut log)?;
    Ok((cert, log))
}

fn search_level(problem: &ProblemSpec, m: u32, log: &mut RunLog) -> Result<Option<SectionCertificate>, ArithError> {
    let series = &problem.series;
    let x = series.variety();
    let seed = problem.seed ^ (m as u64).wrapping_mul(0x2545_F491_4F6C_DD1D);
    let level = series.level_basis(m)?;
    let n = level.len();
    let reduced = reduce_basis(&level.forms, &problem.norm, m)?;

    let y_vars = indexed_vars("Y", n);
    let mut u = YForm::one(&y_vars);
    let mut bound = BigUint::zero();
    for y in &problem.subvarieties {
        let cert = restricted_bad_locus(series, y, &[], m, seed)?;
        u = u.mul(&cert.poly)?;
        bound += cert.bound_value;
    }
    for form in point_forms(x, &level, &problem.char0_points)? {
        u = u.mul(&YForm::from_poly(form)?)?;
        bound += 1u32;
    }
    let mut record = LevelRecord {
        m,
        basis_size: n,
        bound_value: bound,
        oracle_degree: u.degree(),
        offsets: None,
        coefficients: None,
        norm: None,
        outcome: String::new(),
    };

    let offsets = match poschr_offsets(&reduced.forms, &problem.charp_points, seed) {
        Ok(o) => o,
        Err(CnError::OffsetsNotFound) => {
            record.outcome = "no residue offsets at this level".into();
            log.levels.push(record);
            return Ok(None);
        }
        Err(e) => return Err(e.into()),
    };
    record.offsets = Some(offsets.clone());

    // coordinates on the original basis: c_old = T^t c
    let transform = reduced.transform.clone();
    let to_old = move |c: &[BigRational]| -> Vec<BigRational> {
        (0..n)
            .map(|j| {
                (0..n).fold(BigRational::zero(), |acc, i| acc + &c[i] * BigRational::from_integer(transform[i][j].clone()))
            })
            .collect()
    };
    // a constant bad locus leaves c = 0 admissible; the first coordinate
    // keeps the section nonzero
    let pad = u.degree() == 0;
    let oracle_degree = u.degree() + pad as u64;
    let u_eval = u.clone();
    let oracle = FnOracle {
        arity: n,
        degree: oracle_degree,
        f: |c: &[BigRational]| {
            let v = u_eval.eval_rational(&to_old(c)).expect("arity matches");
            if pad {
                v * &c[0]
            } else {
                v
            }
        },
    };
    let coeffs = combined_grid_search(&oracle, &offsets, oracle_degree, seed)?;
    let pt: Vec<BigRational> = coeffs.iter().cloned().map(BigRational::from_integer).collect();
    let bad_locus_value = oracle.eval(&pt);
    let scalars: Vec<Scalar> = coeffs.iter().map(|c| Scalar::from_bigint(c, Domain::Rational)).collect();
    let level_red = crate::bertini::LevelBasis { m, exponents: Vec::new(), forms: reduced.forms.clone() };
    let section = level_red.combination(&scalars)?;
    let norm_value = problem.norm.eval(&section, m)?;
    record.oracle_degree = oracle_degree;
    record.coefficients = Some(coeffs.clone());
    record.norm = Some(norm_value.clone());
    if norm_value >= BigRational::one() {
        record.outcome = "norm not below 1".into();
        log.levels.push(record);
        return Ok(None);
    }

    let smooth_witnesses = problem
        .subvarieties
        .iter()
        .map(|y| smoothness_check(y, &section))
        .collect::<Result<Vec<_>, _>>()?;
    let point_values = problem
        .char0_points
        .iter()
        .map(|pt| {
            let sc: Vec<Scalar> = pt.iter().cloned().map(Scalar::rational).collect();
            Ok(section.eval(&sc)?.as_rational().unwrap().clone())
        })
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    let residue_values = problem
        .charp_points
        .iter()
        .map(|pt| Ok(section.reduce_mod(pt.prime)?.eval(&pt.scalars())?.as_fp().unwrap().value()))
        .collect::<Result<Vec<_>, AlgebraError>>()?;
    record.outcome = "certificate".into();
    let bound_value = record.bound_value.clone();
    log.levels.push(record);
    Ok(Some(SectionCertificate {
        m,
        basis: reduced.forms,
        coefficients: coeffs,
        section,
        norm_value,
        smooth_witnesses,
        point_values,
        residue_values,
        bad_locus_value,
        bad_locus_degree: u.degree(),
        bound_value,
        offsets,
        seed: problem.seed,
    }))
}

/// One named check of a certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), passed, detail: detail.into() });
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail)?;
        }
        Ok(())
    }
}

/// Re-derives every conclusion of a certificate from the problem.
pub fn verify_certificate(cert: &SectionCertificate, problem: &ProblemSpec) -> VerificationReport {
    let mut report = VerificationReport::default();
    let x = problem.series.variety();
    // later checks use the section the coefficients define
    let derived = (|| -> Result<MultiPoly, ArithError> {
        let mut acc = MultiPoly::zero(x.vars(), Domain::Rational);
        for (b, c) in cert.basis.iter().zip(&cert.coefficients) {
            acc = acc.checked_add(&b.scale(&Scalar::from_bigint(c, Domain::Rational)))?;
        }
        Ok(acc)
    })()
    .unwrap_or_else(|_| cert.section.clone());
    let s = &derived;

    let basis_ok = (|| -> Result<bool, ArithError> {
        if cert.basis.len() != cert.coefficients.len() || cert.basis.is_empty() {
            return Ok(false);
        }
        let level = problem.series.level_basis(cert.m)?;
        let mut span = IncrementalBasis::new();
        let mut all = level.forms.clone();
        all.extend(cert.basis.iter().cloned());
        let vecs = coefficient_vectors(&all);
        for v in &vecs[..level.len()] {
            span.insert(v);
        }
        if !vecs[level.len()..].iter().all(|v| span.contains(v)) {
            return Ok(false);
        }
        Ok(s == &cert.section && !x.contains_form(s)?)
    })();
    match basis_ok {
        Ok(ok) => report.push("section", ok, if ok { "nonzero combination of level sections" } else { "section does not match its coefficients" }),
        Err(e) => report.push("section", false, e.to_string()),
    }

    match problem.norm.eval(s, cert.m) {
        Ok(v) => {
            let ok = v == cert.norm_value && v < BigRational::one();
            report.push("norm", ok, format!("recomputed {v}, recorded {}", cert.norm_value));
        }
        Err(e) => report.push("norm", false, e.to_string()),
    }

    for (i, pt) in problem.char0_points.iter().enumerate() {
        let sc: Vec<Scalar> = pt.iter().cloned().map(Scalar::rational).collect();
        let name = format!("point[{i}]");
        match s.eval(&sc) {
            Ok(v) => {
                let v = v.as_rational().unwrap().clone();
                let ok = !v.is_zero() && cert.point_values.get(i) == Some(&v);
                report.push(name, ok, format!("value {v}"));
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    for (i, pt) in problem.charp_points.iter().enumerate() {
        let name = format!("residue[{i}]");
        match s.reduce_mod(pt.prime).and_then(|r| r.eval(&pt.scalars())) {
            Ok(v) => {
                let v = v.as_fp().unwrap().value();
                let ok = v != 0 && cert.residue_values.get(i) == Some(&v);
                report.push(name, ok, format!("value {v} mod {}", pt.prime));
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    for (j, y) in problem.subvarieties.iter().enumerate() {
        let name = format!("smooth[{j}]");
        match smoothness_check(y, s) {
            Ok(r) if r.smooth => report.push(name, true, "divisor is smooth"),
            Ok(r) => {
                let why = r.witness.map_or_else(|| "singular".to_string(), |w| w.to_string());
                report.push(name, false, why)
            }
            Err(e) => report.push(name, false, e.to_string()),
        }
    }

    let f = BigInt::from(cert.offsets.modulus);
    let residues_ok = cert.offsets.offsets.len() == cert.coefficients.len()
        && cert
            .coefficients
            .iter()
            .zip(&cert.offsets.offsets)
            .all(|(c, &a)| ((c - BigInt::from(a)) % &f).is_zero());
    report.push("offsets", residues_ok, format!("coefficients mod {}", cert.offsets.modulus));
    report.push(
        "bad_locus",
        !cert.bad_locus_value.is_zero(),
        format!("recorded value {}", cert.bad_locus_value),
    );
    report
}
