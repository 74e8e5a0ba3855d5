//! Bad hyperplanes for a base-point-free linear series: the universal
//! hyperplane section, its singular locus, and an explicit hypersurface in
//! the dual projective space containing every hyperplane whose pullback is
//! singular.

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::elimination::{
    bi_vars, eliminate_projection, BiSystem, EliminationError, HypersurfaceCertificate, YForm,
};
use crate::exactalg::{binomial, monomials_of_degree, AlgebraError, Domain, Monomial, MultiPoly, Scalar, Vars};
use crate::linalg::IncrementalBasis;
use crate::variety::{
    common_zero_test, hilbert_bound, jacobian_minors_in, VarietyError, VarietyPresentation, ZeroSetTest,
};

/// Default range over which the constant `D'` is validated.
pub const DEFAULT_M_CHECK: u32 = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BertiniError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error(transparent)]
    Elimination(EliminationError),
    #[error("invalid linear series: {0}")]
    InvalidSeries(String),
    #[error("level-one sections have a common zero on the variety")]
    NotBasePointFree,
    #[error("level must be at least 1")]
    InvalidLevel,
    #[error("bad locus at level {m} covers the dual space (T matrix {rows}x{cols} at exponent {ell})")]
    BadLocusCoversSpace { m: u32, ell: u64, rows: usize, cols: usize },
    #[error("point {index} lies on every level-{m} section")]
    PointInBaseLocus { index: usize, m: u32 },
    #[error("point {index} is not on the subvariety")]
    PointNotOnSubvariety { index: usize },
    #[error("subvariety does not lie in the variety")]
    NotASubvariety,
    #[error("level-{m} certificate degree {degree} exceeds the bound {bound}")]
    DegreeBoundExceeded { m: u32, degree: u64, bound: BigUint },
}

impl From<EliminationError> for BertiniError {
    fn from(e: EliminationError) -> Self {
        BertiniError::Elimination(e)
    }
}

/// Sections `e_0..e_{N_1}` of a common degree `d` on `X`, generating a
/// graded ring whose level `m` is spanned by degree-`m` products.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSeries {
    variety: VarietyPresentation,
    level_one: Vec<MultiPoly>,
    kappa: u32,
    form_degree: u64,
}

/// Basis of level `m`: exponent vectors over the level-one sections and
/// the corresponding forms of degree `m·d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LevelBasis {
    pub m: u32,
    pub exponents: Vec<Monomial>,
    pub forms: Vec<MultiPoly>,
}

impl LevelBasis {
    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    /// `(e_i(point))_i`, the coordinates of the hyperplanes through `point`.
    pub fn values_at(&self, point: &[Scalar]) -> Result<Vec<Scalar>, AlgebraError> {
        let domain = point.first().map_or(Domain::Rational, Scalar::domain);
        self.forms
            .iter()
            .map(|f| match domain {
                Domain::Prime(p) => f.reduce_mod(p)?.eval(point),
                Domain::Rational => f.eval(point),
            })
            .collect()
    }

    /// `Σ c_i e_i` as a form on the ambient space.
    pub fn combination(&self, coeffs: &[Scalar]) -> Result<MultiPoly, AlgebraError> {
        if coeffs.len() != self.forms.len() {
            return Err(AlgebraError::ArityMismatch { expected: self.forms.len(), found: coeffs.len() });
        }
        let vars = self.forms[0].vars().clone();
        let mut acc = MultiPoly::zero(&vars, Domain::Rational);
        for (f, c) in self.forms.iter().zip(coeffs) {
            if !c.is_zero() {
                acc = acc.checked_add(&f.scale(c))?;
            }
        }
        Ok(acc)
    }
}

impl LinearSeries {
    pub fn new(variety: VarietyPresentation, level_one: Vec<MultiPoly>, kappa: u32) -> Result<Self, BertiniError> {
        let Some(first) = level_one.first() else {
            return Err(BertiniError::InvalidSeries("no level-one sections".into()));
        };
        let d = first.total_degree().unwrap_or(0);
        if d == 0 {
            return Err(BertiniError::InvalidSeries("sections must have positive degree".into()));
        }
        if kappa as usize > variety.dim() {
            return Err(BertiniError::InvalidSeries(format!("kappa {kappa} exceeds dim {}", variety.dim())));
        }
        let ident: Vec<usize> = (0..variety.nvars()).collect();
        let mut forms = Vec::with_capacity(level_one.len());
        for (i, e) in level_one.iter().enumerate() {
            if e.vars()[..] != variety.vars()[..] || e.domain() != Domain::Rational {
                return Err(BertiniError::InvalidSeries(format!("section {i} is not a rational form on the ambient space")));
            }
            if e.is_zero() || !e.is_homogeneous() || e.total_degree() != Some(d) {
                return Err(BertiniError::InvalidSeries(format!("section {i} is not a nonzero form of degree {d}")));
            }
            forms.push(e.embed(variety.vars(), &ident)?);
        }
        let series = LinearSeries { variety, level_one: forms, kappa, form_degree: d };
        if series.level_basis(1)?.len() != series.level_one.len() {
            return Err(BertiniError::InvalidSeries("level-one sections are dependent on the variety".into()));
        }
        let mut system = series.variety.generators().to_vec();
        system.extend(series.level_one.iter().cloned());
        if common_zero_test(&system)? != ZeroSetTest::Empty {
            return Err(BertiniError::NotBasePointFree);
        }
        Ok(series)
    }

    /// `O(1)` on `X`: the coordinate functions.
    pub fn hyperplane_series(variety: VarietyPresentation, kappa: u32) -> Result<Self, BertiniError> {
        let forms = (0..variety.nvars()).map(|i| MultiPoly::var(variety.vars(), i, Domain::Rational)).collect();
        LinearSeries::new(variety, forms, kappa)
    }

    pub fn variety(&self) -> &VarietyPresentation {
        &self.variety
    }

    pub fn level_one(&self) -> &[MultiPoly] {
        &self.level_one
    }

    pub fn kappa(&self) -> u32 {
        self.kappa
    }

    pub fn form_degree(&self) -> u64 {
        self.form_degree
    }

    /// `N_1`.
    pub fn n1(&self) -> usize {
        self.level_one.len() - 1
    }

    /// Degree-`m` products of level-one sections, kept greedily in
    /// descending graded-lex order of exponent vectors when independent
    /// modulo `I_X`. `e_0^m` comes first.
    pub fn level_basis(&self, m: u32) -> Result<LevelBasis, BertiniError> {
        self.level_basis_on(&self.variety, m)
    }

    fn level_basis_on(&self, variety: &VarietyPresentation, m: u32) -> Result<LevelBasis, BertiniError> {
        if m == 0 {
            return Err(BertiniError::InvalidLevel);
        }
        let piece = variety.ideal_graded_piece(m * self.form_degree as u32);
        let mut basis = IncrementalBasis::new();
        let mut exponents = Vec::new();
        let mut forms = Vec::new();
        for alpha in monomials_of_degree(self.level_one.len(), m) {
            let mut f = MultiPoly::one(self.variety.vars(), Domain::Rational);
            for (e, &k) in self.level_one.iter().zip(alpha.exponents()) {
                if k > 0 {
                    f = f.checked_mul(&e.pow(k)?)?;
                }
            }
            let coords = piece.normal_form(&piece.coordinates(&f)?);
            if basis.insert(&coords) {
                exponents.push(alpha);
                forms.push(f);
            }
        }
        Ok(LevelBasis { m, exponents, forms })
    }
}

/// `w = Σ_i e_i^{(m)}(X) · Y_i` together with the ideal of the variety.
pub fn universal_hyperplane_system(series: &LinearSeries, m: u32) -> Result<BiSystem, BertiniError> {
    let basis = series.level_basis(m)?;
    universal_system_on(series.variety(), &basis)
}

fn universal_system_on(variety: &VarietyPresentation, basis: &LevelBasis) -> Result<BiSystem, BertiniError> {
    let ny = basis.len();
    let vars = bi_vars(variety, ny);
    let split = variety.nvars();
    let x_map: Vec<usize> = (0..split).collect();
    let mut w = MultiPoly::zero(&vars, Domain::Rational);
    for (i, f) in basis.forms.iter().enumerate() {
        let y = MultiPoly::var(&vars, split + i, Domain::Rational);
        w = w.checked_add(&f.embed(&vars, &x_map)?.checked_mul(&y)?)?;
    }
    Ok(BiSystem::new(variety.clone(), ny, vec![w])?)
}

/// Adds the `(n - dim X + 1)`-minors of the X-Jacobian of the hyperplane
/// equation and the ideal generators. The Y-degree bound is raised to
/// `N_1 + 1`.
pub fn singular_locus_system(w: &BiSystem, n1: usize) -> Result<BiSystem, BertiniError> {
    let v = w.variety();
    let split = w.split();
    let x_map: Vec<usize> = (0..split).collect();
    let mut rows = w.equations().to_vec();
    for g in v.generators() {
        rows.push(g.embed(w.vars(), &x_map)?);
    }
    let c = v.ambient_dim() - v.dim() + 1;
    let minors = jacobian_minors_in(&rows, &x_map, c)?;
    let mut eqs = w.equations().to_vec();
    eqs.extend(minors.into_iter().filter(|p| !p.is_zero()));
    let sys = BiSystem::new(v.clone(), w.y_count(), eqs)?;
    let (p, q) = (sys.p_bound(), sys.q_bound().max(n1 as u64 + 1));
    Ok(sys.with_bounds(p, q)?)
}

/// Constants of the degree bound and the polynomial
/// `P(m) = φ_X(deg X · (D' m^{κ+1})^{dim X + 1}) · (N_1 + 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeBoundProfile {
    pub d1: u64,
    pub d2: u64,
    pub n1: usize,
    pub kappa: u32,
    pub dim: usize,
    pub dprime: u64,
    /// `D'` was checked for `1 <= m <= m_check`.
    pub m_check: u32,
    /// Coefficients of `P`, constant term first.
    pub coeffs: Vec<BigUint>,
}

impl DegreeBoundProfile {
    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn eval(&self, m: u64) -> BigUint {
        let x = BigUint::from(m);
        self.coeffs.iter().rev().fold(BigUint::zero(), |acc, c| acc * &x + c)
    }

    /// `m ↦ P(m)` as text, highest power first.
    pub fn format_polynomial(&self) -> String {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            parts.push(match k {
                0 => c.to_string(),
                1 => format!("{c}*m"),
                _ => format!("{c}*m^{k}"),
            });
        }
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join(" + ")
        }
    }
}

/// Upper bound for `N_m = dim R_m - 1`.
fn n_m_bound(series: &LinearSeries, m: u64) -> u128 {
    let products = binomial(m + series.n1() as u64, series.n1() as u64);
    products.min(hilbert_bound(series.variety(), m * series.form_degree)) - 1
}

pub fn degree_bound_profile(series: &LinearSeries, m_check: u32) -> DegreeBoundProfile {
    profile_on(series, series.variety(), m_check)
}

/// Profile with `D_2`, `φ` and the dimension taken from `target`, which is
/// `X` itself or a subvariety the series is restricted to.
fn profile_on(series: &LinearSeries, target: &VarietyPresentation, m_check: u32) -> DegreeBoundProfile {
    let d1 = series.form_degree;
    let d2 = target.max_generator_degree();
    let n1 = series.n1();
    let kappa = series.kappa;
    let codim = (target.ambient_dim() - target.dim()) as i128;
    let mut dprime: u64 = 1;
    for m in 1..=m_check.max(1) as u64 {
        let lhs = (n1 as i128 + 1) * (d1 as i128 * m as i128 * n_m_bound(series, m) as i128 - 1)
            + codim * (d2 as i128 - 1).max(0);
        let scale = (m as i128).pow(kappa + 1);
        while (dprime as i128) * scale < lhs {
            dprime *= 2;
        }
    }
    let dim = target.dim();
    let deg = BigUint::from(target.degree());
    let lead = &deg * num_traits::pow(BigUint::from(dprime), dim + 1);
    let k = (kappa as usize + 1) * (dim + 1);
    let outer = &deg * BigUint::from(n1 + 1);
    let mut coeffs = vec![BigUint::zero(); k * dim + 1];
    if dim == 0 {
        coeffs[0] = outer;
    } else {
        // (lead·m^k + dim)^dim
        for j in 0..=dim {
            let c = BigUint::from(binomial(dim as u64, j as u64))
                * num_traits::pow(lead.clone(), j)
                * num_traits::pow(BigUint::from(dim), dim - j);
            coeffs[k * j] = &outer * c;
        }
    }
    DegreeBoundProfile { d1, d2, n1, kappa, dim, dprime, m_check, coeffs }
}

/// Hypersurface in the dual space of level `m`, with the forms vanishing on
/// hyperplanes through the given points multiplied in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BadLocusCertificate {
    pub m: u32,
    pub basis: LevelBasis,
    /// `None` when no hyperplane section is singular.
    pub hypersurface: Option<HypersurfaceCertificate>,
    pub point_forms: Vec<MultiPoly>,
    /// Product of the hypersurface and the point forms.
    pub poly: YForm,
    pub degree: u64,
    pub bound_value: BigUint,
    pub empty: bool,
}

impl BadLocusCertificate {
    pub fn y_vars(&self) -> &Vars {
        self.poly.vars()
    }
}

/// True when the equations free of X already have no common zero in Y.
fn pure_y_part_empty(sys: &BiSystem) -> Result<bool, BertiniError> {
    let split = sys.split();
    let ny = sys.y_count();
    let y_map: Vec<usize> = (0..split).map(|_| 0).chain(0..ny).collect();
    let mut forms = Vec::new();
    for e in sys.equations() {
        if e.degree_in(0..split) == 0 {
            forms.push(e.embed(sys.y_vars(), &y_map)?);
        }
    }
    if forms.is_empty() {
        return Ok(false);
    }
    match common_zero_test(&forms) {
        Ok(t) => Ok(t == ZeroSetTest::Empty),
        Err(VarietyError::TooLarge(_)) => Ok(false),
        Err(e) => Err(e.into()),
    }
}

fn singular_part(
    variety: &VarietyPresentation,
    basis: &LevelBasis,
    n1: usize,
    m: u32,
    seed: u64,
) -> Result<Option<HypersurfaceCertificate>, BertiniError> {
    let w = universal_system_on(variety, basis)?;
    let sing = singular_locus_system(&w, n1)?;
    if pure_y_part_empty(&sing)? {
        return Ok(None);
    }
    match eliminate_projection(&sing, seed) {
        Ok(cert) if cert.degree == 0 => Ok(None),
        Ok(cert) => Ok(Some(cert)),
        Err(EliminationError::ProjectionMayCoverSpace { ell, rows, cols }) => {
            Err(BertiniError::BadLocusCoversSpace { m, ell, rows, cols })
        }
        Err(e) => Err(e.into()),
    }
}

pub fn bad_hyperplane_hypersurface(series: &LinearSeries, m: u32, seed: u64) -> Result<BadLocusCertificate, BertiniError> {
    restricted_bad_locus(series, series.variety(), &[], m, seed)
}

/// Bad locus for the series read on a subvariety `Y ⊆ X`, times the
/// linear forms of hyperplanes through each point. Coordinates on the dual
/// space are those of the level-`m` basis on `X`.
pub fn restricted_bad_locus(
    series: &LinearSeries,
    sub: &VarietyPresentation,
    points: &[Vec<BigRational>],
    m: u32,
    seed: u64,
) -> Result<BadLocusCertificate, BertiniError> {
    if m == 0 {
        return Err(BertiniError::InvalidLevel);
    }
    let x = series.variety();
    if sub.vars()[..] != x.vars()[..] {
        return Err(BertiniError::NotASubvariety);
    }
    for g in x.generators() {
        if !sub.contains_form(g)? {
            return Err(BertiniError::NotASubvariety);
        }
    }
    let basis = series.level_basis(m)?;
    let profile = profile_on(series, sub, DEFAULT_M_CHECK);
    let hypersurface = singular_part(sub, &basis, series.n1(), m, seed)?;

    let y_vars = crate::exactalg::indexed_vars("Y", basis.len());
    let mut poly = match &hypersurface {
        Some(h) => h.poly.clone(),
        None => YForm::one(&y_vars),
    };
    let point_forms = point_forms(sub, &basis, points)?;
    for form in &point_forms {
        poly = poly.mul(&YForm::from_poly(form.clone())?)?;
    }

    let bound_value = profile.eval(m as u64) + BigUint::from(points.len());
    let degree = poly.degree();
    if BigUint::from(degree) > bound_value {
        return Err(BertiniError::DegreeBoundExceeded { m, degree, bound: bound_value });
    }
    let empty = hypersurface.is_none();
    Ok(BadLocusCertificate { m, basis, hypersurface, point_forms, poly, degree, bound_value, empty })
}

/// For each point, the linear form `Σ_i e_i^{(m)}(y) Y_i` vanishing exactly
/// on hyperplanes through it, scaled to a primitive integer form.
pub fn point_forms(
    sub: &VarietyPresentation,
    basis: &LevelBasis,
    points: &[Vec<BigRational>],
) -> Result<Vec<MultiPoly>, BertiniError> {
    let y_vars = crate::exactalg::indexed_vars("Y", basis.len());
    let mut out = Vec::with_capacity(points.len());
    for (index, pt) in points.iter().enumerate() {
        let sc: Vec<Scalar> = pt.iter().cloned().map(Scalar::rational).collect();
        if sc.len() != sub.nvars() || sc.iter().all(Scalar::is_zero) || !sub.contains_point(&sc)? {
            return Err(BertiniError::PointNotOnSubvariety { index });
        }
        let vals = basis.values_at(&sc)?;
        if vals.iter().all(Scalar::is_zero) {
            return Err(BertiniError::PointInBaseLocus { index, m: basis.m });
        }
        let terms = vals.into_iter().enumerate().map(|(i, c)| {
            let mut e = vec![0u32; basis.len()];
            e[i] = 1;
            (e, c)
        });
        out.push(MultiPoly::from_terms(&y_vars, Domain::Rational, terms)?.primitive_integer()?);
    }
    Ok(out)
}

/// Whether `P` has the expected degree `dim (dim + 1)(κ + 1)`.
pub fn expected_bound_degree(dim: usize, kappa: u32) -> usize {
    dim * (dim + 1) * (kappa as usize + 1)
}
