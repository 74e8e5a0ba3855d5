//! Embedded projective varieties: graded pieces of the ideal and the
//! coordinate ring, the Hilbert-type bound, Jacobian minors and a
//! smoothness check for divisors on curves and surfaces of small ambient
//! dimension.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::exactalg::{
    binary_gcd, binomial, format_rational, indexed_vars, linear_root, monomials_of_degree, same_vars, AlgebraError, BinaryForm,
    Domain, Monomial, MultiPoly, Scalar, Vars,
};
use crate::linalg::{self, rref};

/// Largest graded piece (in monomials) the emptiness test will build.
pub const MAX_PIECE_MONOMIALS: u128 = 40_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid variety presentation: {0}")]
    InvalidPresentation(String),
    #[error("dim k[X]_{level} = {quotient_dim} exceeds the bound {bound}")]
    HilbertBoundViolated { level: u32, quotient_dim: usize, bound: u128 },
    #[error("declared {what} {declared} disagrees with the observed value {observed}")]
    InvariantMismatch { what: &'static str, declared: u64, observed: i128 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("graded piece of {0} monomials exceeds the working limit")]
    TooLarge(u128),
    #[error("minor size {size} out of range for a {rows}x{cols} Jacobian")]
    MinorSizeOutOfRange { size: usize, rows: usize, cols: usize },
}

/// `X ⊆ P^n` given by homogeneous generators of its (assumed prime) ideal,
/// with caller-supplied dimension and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarietyPresentation {
    vars: Vars,
    generators: Vec<MultiPoly>,
    dim: usize,
    degree: u64,
}

impl VarietyPresentation {
    pub fn new(ambient_dim: usize, generators: Vec<MultiPoly>, dim: usize, degree: u64) -> Result<Self, VarietyError> {
        let vars = indexed_vars("X", ambient_dim + 1);
        VarietyPresentation::with_vars(vars, generators, dim, degree)
    }

    pub fn with_vars(vars: Vars, generators: Vec<MultiPoly>, dim: usize, degree: u64) -> Result<Self, VarietyError> {
        let ambient_dim = vars.len().checked_sub(1).ok_or_else(|| {
            VarietyError::InvalidPresentation("need at least one coordinate".into())
        })?;
        if dim > ambient_dim {
            return Err(VarietyError::InvalidPresentation(format!("dim {dim} exceeds ambient dimension {ambient_dim}")));
        }
        if degree == 0 {
            return Err(VarietyError::InvalidPresentation("degree must be at least 1".into()));
        }
        let mut gens = Vec::with_capacity(generators.len());
        for g in generators {
            if g.vars()[..] != vars[..] {
                return Err(VarietyError::InvalidPresentation("generator uses a different variable list".into()));
            }
            if g.domain() != Domain::Rational {
                return Err(VarietyError::InvalidPresentation("generators must have rational coefficients".into()));
            }
            if g.is_zero() || !g.is_homogeneous() {
                return Err(VarietyError::InvalidPresentation(format!("generator {g} is zero or not homogeneous")));
            }
            if g.is_constant() {
                return Err(VarietyError::InvalidPresentation("constant generator defines the empty set".into()));
            }
            // re-home onto the shared variable list
            let idx: Vec<usize> = (0..vars.len()).collect();
            gens.push(g.embed(&vars, &idx)?);
        }
        if gens.is_empty() && dim != ambient_dim {
            return Err(VarietyError::InvalidPresentation("no generators but dim < ambient dimension".into()));
        }
        Ok(VarietyPresentation { vars, generators: gens, dim, degree })
    }

    pub fn projective_space(n: usize) -> Self {
        VarietyPresentation::new(n, Vec::new(), n, 1).expect("P^n is valid")
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn ambient_dim(&self) -> usize {
        self.vars.len() - 1
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn generators(&self) -> &[MultiPoly] {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u64 {
        self.degree
    }

    /// Largest generator degree, 0 without generators.
    pub fn max_generator_degree(&self) -> u64 {
        self.generators.iter().filter_map(MultiPoly::total_degree).max().unwrap_or(0)
    }

    pub fn ideal_graded_piece(&self, level: u32) -> GradedPieceBasis {
        ideal_graded_piece(self, level)
    }

    pub fn hilbert_bound(&self, level: u64) -> u128 {
        hilbert_bound(self, level)
    }

    /// Checks `dim k[X]_l <= φ_X(l)` for `0 <= l <= cap`.
    pub fn check_hilbert_bound(&self, cap: u32) -> Result<(), VarietyError> {
        for l in 0..=cap {
            let piece = self.ideal_graded_piece(l);
            let bound = self.hilbert_bound(l as u64);
            if piece.quotient_dim as u128 > bound {
                return Err(VarietyError::HilbertBoundViolated { level: l, quotient_dim: piece.quotient_dim, bound });
            }
        }
        Ok(())
    }

    /// Cross-checks the declared dimension and degree against finite
    /// differences of the Hilbert function near `level`: the `dim`-th
    /// difference should equal `degree` and the next one should vanish.
    pub fn cross_check_dim_degree(&self, level: u32) -> Result<(), VarietyError> {
        let d = self.dim;
        let start = level.checked_sub(d as u32 + 1).ok_or_else(|| {
            VarietyError::InvalidPresentation(format!("cross-check level {level} too small"))
        })?;
        let mut values: Vec<i128> =
            (start..=level).map(|l| self.ideal_graded_piece(l).quotient_dim as i128).collect();
        for _ in 0..d {
            values = values.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let top = *values.last().expect("nonempty");
        if top != self.degree as i128 {
            return Err(VarietyError::InvariantMismatch { what: "degree", declared: self.degree, observed: top });
        }
        let next: Vec<i128> = values.windows(2).map(|w| w[1] - w[0]).collect();
        if next.iter().any(|&v| v != 0) {
            return Err(VarietyError::InvariantMismatch { what: "dimension", declared: d as u64, observed: -1 });
        }
        Ok(())
    }

    /// True when `f` lies in the span of the degree-`deg f` ideal piece.
    pub fn contains_form(&self, f: &MultiPoly) -> Result<bool, VarietyError> {
        if f.is_zero() {
            return Ok(true);
        }
        if !f.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous.into());
        }
        let piece = self.ideal_graded_piece(f.total_degree().unwrap() as u32);
        let coords = piece.coordinates(f)?;
        Ok(piece.normal_form(&coords).iter().all(Scalar::is_zero))
    }

    /// Whether `point` (projective coordinates) satisfies every generator.
    pub fn contains_point(&self, point: &[Scalar]) -> Result<bool, VarietyError> {
        for g in &self.generators {
            let g = match point.first().map(Scalar::domain) {
                Some(Domain::Prime(p)) => g.reduce_mod(p)?,
                _ => g.clone(),
            };
            if !g.eval(point)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Degree-`level` piece of the ideal, row reduced, with the complementary
/// monomials serving as a basis of `k[X]_level`.
#[derive(Debug, Clone)]
pub struct GradedPieceBasis {
    pub level: u32,
    /// All monomials of degree `level`, descending graded-lex.
    pub monomials: Vec<Monomial>,
    pub ideal_rank: usize,
    pub quotient_dim: usize,
    index: HashMap<Monomial, usize>,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
    quotient_cols: Vec<usize>,
}

impl GradedPieceBasis {
    /// Monomials representing the basis of `k[X]_level`.
    pub fn quotient_monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.quotient_cols.iter().map(|&c| &self.monomials[c])
    }

    pub fn monomial_index(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Coordinates of a homogeneous degree-`level` form over all monomials.
    pub fn coordinates(&self, f: &MultiPoly) -> Result<Vec<Scalar>, AlgebraError> {
        let mut v = vec![Scalar::zero(Domain::Rational); self.monomials.len()];
        for (m, c) in f.terms() {
            let i = self.monomial_index(m).ok_or(AlgebraError::NotHomogeneous)?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Reduces a coordinate vector modulo the ideal piece and returns its
    /// coordinates on the quotient monomials.
    pub fn normal_form(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for &j in &self.quotient_cols {
                if !row[j].is_zero() {
                    v[j] = v[j].sub(&row[j].mul(&f));
                }
            }
            v[pc] = Scalar::zero(Domain::Rational);
        }
        self.quotient_cols.iter().map(|&j| v[j].clone()).collect()
    }

    /// Same reduction for vectors of polynomial coefficients.
    pub fn normal_form_polys(&self, mut v: Vec<MultiPoly>) -> Result<Vec<MultiPoly>, AlgebraError> {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if v[pc].is_zero() {
                continue;
            }
            let f = v[pc].clone();
            for &j in &self.quotient_cols {
                if !row[j].is_zero() {
                    v[j] = v[j].checked_sub(&f.scale(&row[j]))?;
                }
            }
            v[pc] = MultiPoly::zero(f.vars(), f.domain());
        }
        Ok(self.quotient_cols.iter().map(|&j| v[j].clone()).collect())
    }
}

/// Builds `I_{X,l}` from all `monomial * generator` products of degree `l`.
pub fn ideal_graded_piece(v: &VarietyPresentation, level: u32) -> GradedPieceBasis {
    let monomials = monomials_of_degree(v.nvars(), level);
    let index: HashMap<Monomial, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let mut rows = Vec::new();
    for g in &v.generators {
        let gd = g.total_degree().unwrap() as u32;
        if gd > level {
            continue;
        }
        for mult in monomials_of_degree(v.nvars(), level - gd) {
            let mut row = vec![Scalar::zero(Domain::Rational); monomials.len()];
            for (m, c) in g.terms() {
                let prod = m.checked_mul(&mult).expect("small exponents");
                row[index[&prod]] = c.clone();
            }
            rows.push(row);
        }
    }
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let quotient_cols: Vec<usize> = (0..monomials.len()).filter(|c| !pivot_set.contains(c)).collect();
    GradedPieceBasis {
        level,
        ideal_rank: pivots.len(),
        quotient_dim: quotient_cols.len(),
        monomials,
        index,
        rows,
        pivots,
        quotient_cols,
    }
}

/// `φ_X(l) = deg X · (l + dim X)^dim X`, or `deg X` for points.
pub fn hilbert_bound(v: &VarietyPresentation, level: u64) -> u128 {
    if v.dim == 0 {
        return v.degree as u128;
    }
    (v.degree as u128) * ((level + v.dim as u64) as u128).pow(v.dim as u32)
}

/// `φ_X` at an arbitrary-size argument.
pub fn hilbert_bound_big(v: &VarietyPresentation, level: &BigUint) -> BigUint {
    if v.dim == 0 {
        return BigUint::from(v.degree);
    }
    BigUint::from(v.degree) * num_traits::pow(level + BigUint::from(v.dim), v.dim)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// All `c × c` minors of `(∂ polys_i / ∂ var_j)` over the listed variables,
/// rows chosen before columns, both in lexicographic order. Zero minors are
/// kept so the count is `C(#polys, c) · C(#vars, c)`.
pub fn jacobian_minors_in(polys: &[MultiPoly], var_indices: &[usize], c: usize) -> Result<Vec<MultiPoly>, VarietyError> {
    if c == 0 || c > polys.len() || c > var_indices.len() {
        return Err(VarietyError::MinorSizeOutOfRange { size: c, rows: polys.len(), cols: var_indices.len() });
    }
    let vars = polys[0].vars().clone();
    let domain = polys[0].domain();
    for p in polys {
        if !same_vars(p.vars(), &vars) {
            return Err(AlgebraError::VariableMismatch.into());
        }
    }
    let jac: Vec<Vec<MultiPoly>> = polys
        .iter()
        .map(|p| var_indices.iter().map(|&j| p.partial_derivative(j)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<_, _>>()?;
    let mut out = Vec::new();
    for rows in combinations(polys.len(), c) {
        for cols in combinations(var_indices.len(), c) {
            let sub: Vec<Vec<MultiPoly>> =
                rows.iter().map(|&r| cols.iter().map(|&cc| jac[r][cc].clone()).collect()).collect();
            out.push(linalg::bareiss_det(&sub, &vars, domain)?);
        }
    }
    Ok(out)
}

/// Jacobian minors with respect to every variable of the ring.
pub fn jacobian_minor_system(polys: &[MultiPoly], codim: usize) -> Result<Vec<MultiPoly>, VarietyError> {
    let n = polys.first().map_or(0, MultiPoly::nvars);
    let all: Vec<usize> = (0..n).collect();
    jacobian_minors_in(polys, &all, codim)
}

/// Outcome of the emptiness test for a homogeneous system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ZeroSetTest {
    Empty,
    /// Some projective zero exists over the algebraic closure; at the test
    /// degree the ideal misses `missing` dimensions.
    Nonempty { degree: u32, missing: usize },
}

/// Decides whether homogeneous rational forms in `n+1` variables have a
/// common zero in `P^n` over the algebraic closure. Without common zeros the
/// ideal contains every form of degree `d_1 + ... + d_{n+1} - n` (three
/// largest degrees, etc.), so one exact rank computation settles it.
pub fn common_zero_test(forms: &[MultiPoly]) -> Result<ZeroSetTest, VarietyError> {
    let Some(first) = forms.first() else {
        return Ok(ZeroSetTest::Nonempty { degree: 0, missing: 1 });
    };
    let nvars = first.nvars();
    let forms: Vec<&MultiPoly> = forms.iter().filter(|f| !f.is_zero()).collect();
    for f in &forms {
        if !f.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous.into());
        }
        if f.is_constant() {
            return Ok(ZeroSetTest::Empty);
        }
    }
    if forms.len() < nvars {
        return Ok(ZeroSetTest::Nonempty { degree: 0, missing: 1 });
    }
    let mut degs: Vec<u64> = forms.iter().map(|f| f.total_degree().unwrap()).collect();
    degs.sort_unstable_by(|a, b| b.cmp(a));
    let target: u64 = degs[..nvars].iter().sum::<u64>() + 1 - nvars as u64;
    let size = binomial(target + nvars as u64 - 1, nvars as u64 - 1);
    if size > MAX_PIECE_MONOMIALS {
        return Err(VarietyError::TooLarge(size));
    }
    let sys = VarietyPresentation {
        vars: first.vars().clone(),
        generators: forms.into_iter().cloned().collect(),
        dim: 0,
        degree: 1,
    };
    let piece = ideal_graded_piece(&sys, target as u32);
    if piece.quotient_dim == 0 {
        Ok(ZeroSetTest::Empty)
    } else {
        Ok(ZeroSetTest::Nonempty { degree: target as u32, missing: piece.quotient_dim })
    }
}

/// Evidence that a divisor is not smooth.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SingularWitness {
    /// The section vanishes on the whole variety.
    VanishesOnVariety,
    /// A rational singular point of the divisor.
    Point(Vec<BigRational>),
    /// A nonconstant common factor of the form and its derivatives.
    CommonFactor(MultiPoly),
    /// The singular system has a common zero (no rational point extracted).
    Deficiency { degree: u32, missing: usize },
}

impl std::fmt::Display for SingularWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SingularWitness::VanishesOnVariety => write!(f, "section vanishes on the variety"),
            SingularWitness::Point(p) => {
                let c: Vec<String> = p.iter().map(format_rational).collect();
                write!(f, "singular point ({})", c.join(", "))
            }
            SingularWitness::CommonFactor(g) => write!(f, "repeated factor {g}"),
            SingularWitness::Deficiency { degree, missing } => {
                write!(f, "singular system has a common zero (quotient dimension {missing} in degree {degree})")
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessReport {
    pub smooth: bool,
    pub witness: Option<SingularWitness>,
}

impl SmoothnessReport {
    fn smooth() -> Self {
        SmoothnessReport { smooth: true, witness: None }
    }

    fn singular(w: SingularWitness) -> Self {
        SmoothnessReport { smooth: false, witness: Some(w) }
    }
}

/// Whether the divisor of `s` on `V` is smooth (the empty divisor counts as
/// smooth). Supported: `P^1`, `P^2`, and plane curves.
pub fn smoothness_check(v: &VarietyPresentation, s: &MultiPoly) -> Result<SmoothnessReport, VarietyError> {
    if !s.is_homogeneous() {
        return Err(AlgebraError::NotHomogeneous.into());
    }
    let idx: Vec<usize> = (0..v.nvars()).collect();
    if s.nvars() != v.nvars() {
        return Err(AlgebraError::VariableMismatch.into());
    }
    let s = s.embed(v.vars(), &idx)?;
    match (v.ambient_dim(), v.generators.len(), v.dim) {
        (1, 0, 1) => Ok(smoothness_on_line(&s)),
        (2, 0, 2) | (2, 1, 1) => smoothness_in_plane(v, &s),
        (n, g, d) => Err(VarietyError::Unsupported(format!(
            "smoothness verification for dim {d} with {g} generators in P^{n}"
        ))),
    }
}

fn smoothness_on_line(s: &MultiPoly) -> SmoothnessReport {
    if s.is_zero() {
        return SmoothnessReport::singular(SingularWitness::VanishesOnVariety);
    }
    let f = BinaryForm::from_poly(s).expect("homogeneous binary form");
    let d0 = BinaryForm::from_poly(&s.partial_derivative(0).unwrap()).unwrap();
    let d1 = BinaryForm::from_poly(&s.partial_derivative(1).unwrap()).unwrap();
    let g = binary_gcd(&binary_gcd(&f, &d0), &d1);
    if g.degree == 0 || f.degree == 0 {
        return SmoothnessReport::smooth();
    }
    match linear_root(&g) {
        Some((x0, x1)) => SmoothnessReport::singular(SingularWitness::Point(vec![x0, x1])),
        None => SmoothnessReport::singular(SingularWitness::CommonFactor(g.to_poly(s.vars()))),
    }
}

fn smoothness_in_plane(v: &VarietyPresentation, s: &MultiPoly) -> Result<SmoothnessReport, VarietyError> {
    if v.contains_form(s)? {
        return Ok(SmoothnessReport::singular(SingularWitness::VanishesOnVariety));
    }
    if s.is_constant() {
        return Ok(SmoothnessReport::smooth());
    }
    let mut rows: Vec<MultiPoly> = v.generators.clone();
    rows.push(s.clone());
    let c = v.ambient_dim() - v.dim + 1;
    let mut system = rows.clone();
    system.extend(jacobian_minor_system(&rows, c)?.into_iter().filter(|m| !m.is_zero()));
    match common_zero_test(&system)? {
        ZeroSetTest::Empty => Ok(SmoothnessReport::smooth()),
        ZeroSetTest::Nonempty { degree, missing } => {
            // cheap rational witness: a coordinate point in the singular set
            for i in 0..v.nvars() {
                let pt: Vec<Scalar> = (0..v.nvars())
                    .map(|j| Scalar::int(if i == j { 1 } else { 0 }))
                    .collect();
                let mut all_zero = true;
                for f in &system {
                    if !f.eval(&pt)?.is_zero() {
                        all_zero = false;
                        break;
                    }
                }
                if all_zero {
                    let coords = (0..v.nvars())
                        .map(|j| if i == j { BigRational::one() } else { BigRational::zero() })
                        .collect();
                    return Ok(SmoothnessReport::singular(SingularWitness::Point(coords)));
                }
            }
            Ok(SmoothnessReport::singular(SingularWitness::Deficiency { degree, missing }))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::make_vars;

    fn conic() -> VarietyPresentation {
        let v = indexed_vars("X", 3);
        let g = MultiPoly::from_int_terms(&v, &[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
        VarietyPresentation::new(2, vec![g], 1, 2).unwrap()
    }

    #[test]
    fn graded_pieces() {
        let p2 = VarietyPresentation::projective_space(2);
        assert_eq!(p2.ideal_graded_piece(3).quotient_dim, 10);
        let c = conic();
        let piece = c.ideal_graded_piece(2);
        assert_eq!((piece.ideal_rank, piece.quotient_dim), (1, 5));
        assert_eq!(c.ideal_graded_piece(0).quotient_dim, 1);
        assert_eq!(c.ideal_graded_piece(3).quotient_dim, 7);
        // the pivot X0 X2 is not a quotient representative
        assert!(piece.quotient_monomials().all(|m| m.exponents() != [1, 0, 1]));
    }

    #[test]
    fn hilbert_bounds() {
        let p1 = VarietyPresentation::projective_space(1);
        assert_eq!(p1.hilbert_bound(5), 6);
        assert_eq!(p1.ideal_graded_piece(5).quotient_dim, 6);
        assert_eq!(p1.hilbert_bound(0), 1);
        assert_eq!(conic().hilbert_bound(3), 8);
        conic().check_hilbert_bound(12).unwrap();
        conic().cross_check_dim_degree(10).unwrap();
        let wrong = VarietyPresentation::new(2, conic().generators().to_vec(), 1, 3).unwrap();
        assert!(wrong.cross_check_dim_degree(10).is_err());
    }

    #[test]
    fn invalid_presentations() {
        let v = indexed_vars("X", 3);
        let inhom = MultiPoly::from_int_terms(&v, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert!(VarietyPresentation::new(2, vec![inhom], 1, 2).is_err());
        assert!(VarietyPresentation::new(2, vec![], 3, 1).is_err());
        assert!(VarietyPresentation::new(2, vec![], 2, 0).is_err());
    }

    #[test]
    fn jacobian_examples() {
        let v = indexed_vars("X", 3);
        let q = MultiPoly::from_int_terms(&v, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        let minors = jacobian_minor_system(&[q], 1).unwrap();
        let expected: Vec<MultiPoly> = (0..3)
            .map(|i| MultiPoly::var(&v, i, Domain::Rational).scale(&Scalar::int(2)))
            .collect();
        assert_eq!(minors, expected);

        let w = make_vars(&["X0", "X1"]);
        let node = MultiPoly::from_int_terms(&w, &[(&[1, 1], 1)]);
        assert_eq!(
            jacobian_minor_system(std::slice::from_ref(&node), 1).unwrap(),
            vec![MultiPoly::var(&w, 1, Domain::Rational), MultiPoly::var(&w, 0, Domain::Rational)]
        );
        let cusp = MultiPoly::from_int_terms(&w, &[(&[2, 1], 1)]);
        assert_eq!(
            jacobian_minor_system(&[cusp], 1).unwrap(),
            vec![
                MultiPoly::from_int_terms(&w, &[(&[1, 1], 2)]),
                MultiPoly::from_int_terms(&w, &[(&[2, 0], 1)])
            ]
        );
        assert!(jacobian_minor_system(std::slice::from_ref(&node), 2).is_err());
        assert_eq!(jacobian_minor_system(&[node.clone(), node], 1).unwrap().len(), 4);
    }

    #[test]
    fn smoothness_on_p1() {
        let p1 = VarietyPresentation::projective_space(1);
        let v = p1.vars().clone();
        let three = MultiPoly::from_int_terms(&v, &[(&[2, 1], 1), (&[1, 2], -1)]);
        assert!(smoothness_check(&p1, &three).unwrap().smooth);
        let double = MultiPoly::from_int_terms(&v, &[(&[2, 1], 1)]);
        let rep = smoothness_check(&p1, &double).unwrap();
        assert!(!rep.smooth);
        assert_eq!(
            rep.witness,
            Some(SingularWitness::Point(vec![BigRational::zero(), BigRational::one()]))
        );
    }

    #[test]
    fn smoothness_in_p2() {
        let p2 = VarietyPresentation::projective_space(2);
        let v = p2.vars().clone();
        let fermat = MultiPoly::from_int_terms(&v, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
        assert!(smoothness_check(&p2, &fermat).unwrap().smooth);
        let nodal = MultiPoly::from_int_terms(&v, &[(&[0, 2, 1], 1), (&[3, 0, 0], -1), (&[2, 0, 1], -1)]);
        let rep = smoothness_check(&p2, &nodal).unwrap();
        assert!(!rep.smooth);
        assert!(matches!(rep.witness, Some(SingularWitness::Point(_))));
    }

    #[test]
    fn divisors_on_the_conic() {
        let c = conic();
        let v = c.vars().clone();
        let x1 = MultiPoly::var(&v, 1, Domain::Rational);
        assert!(smoothness_check(&c, &x1).unwrap().smooth);
        let x0 = MultiPoly::var(&v, 0, Domain::Rational);
        assert!(!smoothness_check(&c, &x0).unwrap().smooth);
        let g = c.generators()[0].clone();
        assert_eq!(smoothness_check(&c, &g).unwrap().witness, Some(SingularWitness::VanishesOnVariety));
    }

    #[test]
    fn unsupported_classes_are_explicit() {
        let p3 = VarietyPresentation::projective_space(3);
        let x = MultiPoly::var(p3.vars(), 0, Domain::Rational);
        assert!(matches!(smoothness_check(&p3, &x), Err(VarietyError::Unsupported(_))));
    }

    #[test]
    fn emptiness() {
        let v = indexed_vars("X", 3);
        let xs: Vec<MultiPoly> = (0..3).map(|i| MultiPoly::var(&v, i, Domain::Rational)).collect();
        assert_eq!(common_zero_test(&xs).unwrap(), ZeroSetTest::Empty);
        assert!(matches!(common_zero_test(&xs[..2]).unwrap(), ZeroSetTest::Nonempty { .. }));
    }
}
