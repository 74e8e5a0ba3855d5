//! Projections of bihomogeneous systems on `X × P^m`: a nonzero maximal
//! minor of the multiplication map `T(y)` cuts out a hypersurface of
//! bounded degree containing the image in `P^m`.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::exactalg::{
    binomial, indexed_vars, AlgebraError, Domain, Monomial, MultiPoly, Scalar, Vars,
};
use crate::linalg::{self, IncrementalBasis};
use crate::variety::{hilbert_bound, VarietyError, VarietyPresentation};

/// Prime used to locate nonsingular specializations.
pub const LOCATE_PRIME: u64 = (1 << 61) - 1;
/// Random specializations tried before giving up on a minor.
pub const LOCATE_ATTEMPTS: u32 = 32;
/// Work estimate (`r^3 · M^2`) below which minors are expanded eagerly.
pub const EXPANSION_BUDGET: u128 = 500_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EliminationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
    #[error("invalid system: {0}")]
    InvalidSystem(String),
    #[error("equation {index} is not bihomogeneous")]
    NotBihomogeneous { index: usize },
    #[error("exponent {ell} is below the X-degree {needed} of an equation")]
    ExponentTooSmall { ell: u64, needed: u64 },
    #[error("no nonzero {size}x{size} minor found in a {rows}x{cols} matrix")]
    NoNonzeroMinor { size: usize, rows: usize, cols: usize },
    #[error("projection may cover the whole space (T matrix {rows}x{cols} at exponent {ell})")]
    ProjectionMayCoverSpace { ell: u64, rows: usize, cols: usize },
    #[error("no point off the hypersurface found")]
    NoWitness,
}

/// `X` block followed by `Y0..Y{y_count-1}`.
pub fn bi_vars(variety: &VarietyPresentation, y_count: usize) -> Vars {
    let mut names: Vec<String> = variety.vars().iter().cloned().collect();
    names.extend(indexed_vars("Y", y_count).iter().cloned());
    names.into()
}

/// Equations in `X`-variables and `Y`-variables, read modulo `I_X`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiSystem {
    variety: VarietyPresentation,
    vars: Vars,
    y_vars: Vars,
    equations: Vec<MultiPoly>,
    p_bound: u64,
    q_bound: u64,
}

impl BiSystem {
    /// Equations must use the variable list of [`bi_vars`] (names are
    /// compared, not pointers). Bounds are the actual block maxima.
    pub fn new(variety: VarietyPresentation, y_count: usize, equations: Vec<MultiPoly>) -> Result<Self, EliminationError> {
        if y_count == 0 {
            return Err(EliminationError::InvalidSystem("need at least one Y variable".into()));
        }
        let vars = bi_vars(&variety, y_count);
        let split = variety.nvars();
        let ident: Vec<usize> = (0..vars.len()).collect();
        let mut eqs = Vec::with_capacity(equations.len());
        let (mut p, mut q) = (0, 0);
        for (index, e) in equations.into_iter().enumerate() {
            if e.vars()[..] != vars[..] {
                return Err(EliminationError::InvalidSystem(format!("equation {index} uses a different variable list")));
            }
            if e.domain() != Domain::Rational {
                return Err(AlgebraError::NotRational.into());
            }
            if !e.is_bihomogeneous(split) {
                return Err(EliminationError::NotBihomogeneous { index });
            }
            let bd = e.bidegree(split)?;
            p = p.max(bd.deg_x);
            q = q.max(bd.deg_y);
            eqs.push(e.embed(&vars, &ident)?);
        }
        let y_vars = indexed_vars("Y", y_count);
        Ok(BiSystem { variety, vars, y_vars, equations: eqs, p_bound: p, q_bound: q })
    }

    /// Replaces the degree bounds by larger values.
    pub fn with_bounds(mut self, p_bound: u64, q_bound: u64) -> Result<Self, EliminationError> {
        if p_bound < self.p_bound || q_bound < self.q_bound {
            return Err(EliminationError::InvalidSystem(format!(
                "bounds ({p_bound}, {q_bound}) below the actual degrees ({}, {})",
                self.p_bound, self.q_bound
            )));
        }
        self.p_bound = p_bound;
        self.q_bound = q_bound;
        Ok(self)
    }

    pub fn variety(&self) -> &VarietyPresentation {
        &self.variety
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn y_vars(&self) -> &Vars {
        &self.y_vars
    }

    pub fn split(&self) -> usize {
        self.variety.nvars()
    }

    pub fn y_count(&self) -> usize {
        self.y_vars.len()
    }

    pub fn equations(&self) -> &[MultiPoly] {
        &self.equations
    }

    pub fn p_bound(&self) -> u64 {
        self.p_bound
    }

    pub fn q_bound(&self) -> u64 {
        self.q_bound
    }
}

/// `ℓ = deg X · p^(dim X + 1)`.
pub fn nullstellensatz_exponent(v: &VarietyPresentation, p: u64) -> u64 {
    v.degree() * p.pow(v.dim() as u32 + 1)
}

/// Representation matrix of `(f_i) ↦ Σ u_i f_i` from
/// `⊕ k[X]_{ℓ - deg u_i}` to `k[X]_ℓ` on quotient monomial bases.
#[derive(Debug, Clone)]
pub struct TMatrix {
    pub ell: u64,
    /// `entries[row][col]`, polynomials in the Y variables.
    pub entries: Vec<Vec<MultiPoly>>,
    pub row_monomials: Vec<Monomial>,
    /// `(equation index, multiplier monomial)` per column.
    pub columns: Vec<(usize, Monomial)>,
    /// Y-degree of every entry in the column.
    pub column_degrees: Vec<u64>,
    pub y_vars: Vars,
}

impl TMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Vec<Vec<MultiPoly>> {
        rows.iter().map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect()).collect()
    }
}

pub fn build_t_matrix(sys: &BiSystem, ell: u64) -> Result<TMatrix, EliminationError> {
    let split = sys.split();
    let v = &sys.variety;
    let target = v.ideal_graded_piece(ell as u32);
    let row_monomials: Vec<Monomial> = target.quotient_monomials().cloned().collect();
    let y_vars = sys.y_vars.clone();
    let zero = MultiPoly::zero(&y_vars, Domain::Rational);

    let mut cols: Vec<(u64, usize, Monomial, Vec<MultiPoly>)> = Vec::new();
    for (i, u) in sys.equations.iter().enumerate() {
        let bd = u.bidegree(split)?;
        if bd.deg_x > ell {
            return Err(EliminationError::ExponentTooSmall { ell, needed: bd.deg_x });
        }
        let source = v.ideal_graded_piece((ell - bd.deg_x) as u32);
        for f in source.quotient_monomials() {
            let mut full = vec![zero.clone(); target.monomials.len()];
            for (m, c) in u.terms() {
                let (xe, ye) = m.exponents().split_at(split);
                let xm = Monomial::new(xe.to_vec()).checked_mul(f)?;
                let idx = target.monomial_index(&xm).expect("homogeneous product");
                let ym = MultiPoly::monomial(&y_vars, Monomial::new(ye.to_vec()), c.clone());
                full[idx] = full[idx].checked_add(&ym)?;
            }
            cols.push((bd.deg_y, i, f.clone(), target.normal_form_polys(full)?));
        }
    }
    // low Y-degree columns first, so greedy selection prefers them
    cols.sort_by_key(|a| a.0);
    let nrows = row_monomials.len();
    let mut entries = vec![Vec::with_capacity(cols.len()); nrows];
    let mut columns = Vec::with_capacity(cols.len());
    let mut column_degrees = Vec::with_capacity(cols.len());
    for (deg, i, f, col) in cols {
        for (r, e) in col.into_iter().enumerate() {
            entries[r].push(e);
        }
        columns.push((i, f));
        column_degrees.push(deg);
    }
    Ok(TMatrix { ell, entries, row_monomials, columns, column_degrees, y_vars })
}

fn random_fp_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| Scalar::from_i64(rng.gen_range(0..LOCATE_PRIME as i64), Domain::Prime(LOCATE_PRIME)))
        .collect()
}

fn specialize_mod(mat: &[Vec<MultiPoly>], point: &[Scalar]) -> Option<Vec<Vec<Scalar>>> {
    mat.iter()
        .map(|row| row.iter().map(|e| e.reduce_mod(LOCATE_PRIME).ok()?.eval(point).ok()).collect())
        .collect()
}

/// Row and column indices of an `r × r` submatrix that is nonsingular at
/// some random specialization, hence has a nonzero determinant.
pub fn locate_minor(mat: &[Vec<MultiPoly>], r: usize, seed: u64) -> Result<(Vec<usize>, Vec<usize>), EliminationError> {
    let rows = mat.len();
    let cols = mat.first().map_or(0, Vec::len);
    let fail = EliminationError::NoNonzeroMinor { size: r, rows, cols };
    if r > rows || r > cols {
        return Err(fail);
    }
    if r == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    let nvars = mat[0][0].nvars();
    for attempt in 0..LOCATE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let point = random_fp_point(&mut rng, nvars);
        let Some(spec) = specialize_mod(mat, &point) else { continue };
        let mut basis = IncrementalBasis::new();
        let mut chosen_rows = Vec::new();
        for (i, row) in spec.iter().enumerate() {
            if chosen_rows.len() == r {
                break;
            }
            if basis.insert(row) {
                chosen_rows.push(i);
            }
        }
        if chosen_rows.len() < r {
            continue;
        }
        let sub: Vec<Vec<Scalar>> = chosen_rows.iter().map(|&i| spec[i].clone()).collect();
        let chosen_cols = linalg::independent_columns(&sub, cols);
        debug_assert_eq!(chosen_cols.len(), r);
        return Ok((chosen_rows, chosen_cols));
    }
    Err(fail)
}

/// Determinant of an `r × r` minor that is not identically zero.
pub fn find_nonzero_minor(mat: &[Vec<MultiPoly>], r: usize, seed: u64) -> Result<MultiPoly, EliminationError> {
    let (rows, cols) = locate_minor(mat, r, seed)?;
    let vars = mat.first().and_then(|row| row.first()).map(|e| e.vars().clone());
    let Some(vars) = vars else {
        return Err(EliminationError::NoNonzeroMinor { size: r, rows: mat.len(), cols: 0 });
    };
    let sub: Vec<Vec<MultiPoly>> =
        rows.iter().map(|&i| cols.iter().map(|&j| mat[i][j].clone()).collect()).collect();
    Ok(linalg::bareiss_det(&sub, &vars, Domain::Rational)?)
}

/// A factor of a Y-form: either an explicit polynomial or the determinant
/// of a square polynomial matrix kept unexpanded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YFactor {
    Expanded(MultiPoly),
    Minor(Vec<Vec<MultiPoly>>),
}

/// A homogeneous form in Y, stored as a product of factors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct YForm {
    vars: Vars,
    factors: Vec<YFactor>,
    degree: u64,
}

impl YForm {
    pub fn from_poly(p: MultiPoly) -> Result<YForm, AlgebraError> {
        if !p.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        Ok(YForm { vars: p.vars().clone(), degree: p.total_degree().unwrap_or(0), factors: vec![YFactor::Expanded(p)] })
    }

    /// `degree` must be the degree of the (nonzero) determinant.
    pub fn from_minor(vars: &Vars, mat: Vec<Vec<MultiPoly>>, degree: u64) -> YForm {
        YForm { vars: vars.clone(), factors: vec![YFactor::Minor(mat)], degree }
    }

    pub fn one(vars: &Vars) -> YForm {
        YForm { vars: vars.clone(), factors: Vec::new(), degree: 0 }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    pub fn factors(&self) -> &[YFactor] {
        &self.factors
    }

    pub fn is_expanded(&self) -> bool {
        self.factors.iter().all(|f| matches!(f, YFactor::Expanded(_)))
    }

    pub fn mul(&self, other: &YForm) -> Result<YForm, AlgebraError> {
        if self.vars[..] != other.vars[..] {
            return Err(AlgebraError::VariableMismatch);
        }
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        Ok(YForm { vars: self.vars.clone(), factors, degree: self.degree + other.degree })
    }

    /// Multiplies everything out.
    pub fn expand(&self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = MultiPoly::one(&self.vars, Domain::Rational);
        for f in &self.factors {
            let p = match f {
                YFactor::Expanded(p) => p.clone(),
                YFactor::Minor(m) => linalg::bareiss_det(m, &self.vars, Domain::Rational)?,
            };
            acc = acc.checked_mul(&p)?;
        }
        Ok(acc)
    }

    /// The polynomial itself when there is a single expanded factor.
    pub fn as_poly(&self) -> Option<&MultiPoly> {
        match self.factors.as_slice() {
            [YFactor::Expanded(p)] => Some(p),
            _ => None,
        }
    }

    /// Exact value at `point`; prime-field points reduce the coefficients.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        let domain = point.first().map_or(Domain::Rational, Scalar::domain);
        let lift = |p: &MultiPoly| -> Result<MultiPoly, AlgebraError> {
            match domain {
                Domain::Prime(q) => p.reduce_mod(q),
                Domain::Rational => Ok(p.clone()),
            }
        };
        let mut acc = Scalar::one(domain);
        for f in &self.factors {
            let v = match f {
                YFactor::Expanded(p) => lift(p)?.eval(point)?,
                YFactor::Minor(m) => {
                    let spec: Vec<Vec<Scalar>> = m
                        .iter()
                        .map(|row| row.iter().map(|e| lift(e)?.eval(point)).collect())
                        .collect::<Result<_, _>>()?;
                    linalg::det_field(&spec, domain)
                }
            };
            if v.is_zero() {
                return Ok(v);
            }
            acc = acc.mul(&v);
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, point: &[BigRational]) -> Result<BigRational, AlgebraError> {
        let pt: Vec<Scalar> = point.iter().cloned().map(Scalar::rational).collect();
        Ok(self.eval(&pt)?.as_rational().expect("rational").clone())
    }
}

/// A hypersurface in `P^m` containing the projection of the zero set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersurfaceCertificate {
    pub poly: YForm,
    pub degree: u64,
    pub degree_bound: u128,
    pub ell: u64,
    /// An integer point where `poly` does not vanish.
    pub witness_point: Vec<BigInt>,
    pub seed: u64,
}

fn expansion_cost(r: usize, degree: u64, ny: usize) -> u128 {
    let m = binomial(degree + ny as u64 - 1, ny as u64 - 1);
    (r as u128).pow(3).saturating_mul(m.saturating_mul(m))
}

/// An integer point in a box of growing radius where `form` is nonzero.
pub fn find_witness(form: &YForm, seed: u64) -> Result<Vec<BigInt>, EliminationError> {
    let n = form.vars().len();
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5EED));
    let mut radius = 2 * form.degree() as i64 + 8;
    for _ in 0..8 {
        for _ in 0..16 {
            let pt: Vec<BigInt> = (0..n).map(|_| BigInt::from(rng.gen_range(-radius..=radius))).collect();
            let sc: Vec<Scalar> = pt.iter().map(|v| Scalar::from_bigint(v, Domain::Rational)).collect();
            if !form.eval(&sc)?.is_zero() {
                return Ok(pt);
            }
        }
        radius = radius.saturating_mul(4);
    }
    Err(EliminationError::NoWitness)
}

/// Hypersurface of degree at most `φ_X(ℓ)·q` containing `pr_2(Z)`.
pub fn eliminate_projection(sys: &BiSystem, seed: u64) -> Result<HypersurfaceCertificate, EliminationError> {
    let ell = nullstellensatz_exponent(&sys.variety, sys.p_bound.max(1));
    let t = build_t_matrix(sys, ell)?;
    let r = t.rows();
    let cover = EliminationError::ProjectionMayCoverSpace { ell, rows: r, cols: t.cols() };
    let (rows, cols) = match locate_minor(&t.entries, r, seed) {
        Ok(rc) => rc,
        Err(EliminationError::NoNonzeroMinor { .. }) => return Err(cover),
        Err(e) => return Err(e),
    };
    let degree: u64 = cols.iter().map(|&c| t.column_degrees[c]).sum();
    let sub = t.submatrix(&rows, &cols);
    let poly = if expansion_cost(r, degree, sys.y_count()) <= EXPANSION_BUDGET {
        let det = linalg::bareiss_det(&sub, &t.y_vars, Domain::Rational)?;
        YForm::from_poly(det.primitive_integer()?)?
    } else {
        YForm::from_minor(&t.y_vars, sub, degree)
    };
    let witness_point = find_witness(&poly, seed)?;
    Ok(HypersurfaceCertificate {
        poly,
        degree,
        degree_bound: hilbert_bound(&sys.variety, ell) * sys.q_bound as u128,
        ell,
        witness_point,
        seed,
    })
}

/// Coefficients of a form homogeneous in `(x0, x1)`, highest power of
/// `x0` first, each with `x0, x1` removed.
fn binary_coefficients(f: &MultiPoly, x0: usize, x1: usize) -> Result<(u64, Vec<MultiPoly>), EliminationError> {
    let mut deg = None;
    for (m, _) in f.terms() {
        let d = (m.exponents()[x0] + m.exponents()[x1]) as u64;
        if *deg.get_or_insert(d) != d {
            return Err(AlgebraError::NotBinaryForm.into());
        }
    }
    let d = deg.unwrap_or(0);
    let mut coeffs = vec![MultiPoly::zero(f.vars(), f.domain()); d as usize + 1];
    for (m, c) in f.terms() {
        let i = d as usize - m.exponents()[x0] as usize;
        let mut e = m.exponents().to_vec();
        e[x0] = 0;
        e[x1] = 0;
        coeffs[i] = coeffs[i].checked_add(&MultiPoly::monomial(f.vars(), Monomial::new(e), c.clone()))?;
    }
    Ok((d, coeffs))
}

/// Sylvester resultant of two forms in the variables `x0, x1`; other
/// variables are treated as parameters.
pub fn sylvester_resultant(f: &MultiPoly, g: &MultiPoly, x0: usize, x1: usize) -> Result<MultiPoly, EliminationError> {
    if f.vars()[..] != g.vars()[..] {
        return Err(AlgebraError::VariableMismatch.into());
    }
    if x0 == x1 || x0 >= f.nvars() || x1 >= f.nvars() {
        return Err(AlgebraError::NotBinaryForm.into());
    }
    let vars = f.vars().clone();
    let zero = MultiPoly::zero(&vars, f.domain());
    if f.is_zero() || g.is_zero() {
        return Ok(zero);
    }
    let (m, fc) = binary_coefficients(f, x0, x1)?;
    let (n, gc) = binary_coefficients(g, x0, x1)?;
    let size = (m + n) as usize;
    let mut mat = vec![vec![zero.clone(); size]; size];
    for i in 0..n as usize {
        for (j, c) in fc.iter().enumerate() {
            mat[i][i + j] = c.clone();
        }
    }
    for i in 0..m as usize {
        for (j, c) in gc.iter().enumerate() {
            mat[n as usize + i][i + j] = c.clone();
        }
    }
    Ok(linalg::bareiss_det(&mat, &vars, f.domain())?)
}
