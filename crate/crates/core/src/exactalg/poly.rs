//! Sparse multivariate polynomials over an exact scalar domain.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::monomial::Monomial;
use super::scalar::{Domain, Scalar};
use super::AlgebraError;

/// Shared, ordered list of variable names.
pub type Vars = Arc<[String]>;

pub fn make_vars<S: AsRef<str>>(names: &[S]) -> Vars {
    names.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>().into()
}

/// `prefix0, prefix1, ..., prefix{count-1}`.
pub fn indexed_vars(prefix: &str, count: usize) -> Vars {
    (0..count).map(|i| format!("{prefix}{i}")).collect::<Vec<_>>().into()
}

pub(crate) fn same_vars(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a[..] == b[..]
}

/// Maximum total degrees in the X-block and the Y-block.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct BiDegree {
    pub deg_x: u64,
    pub deg_y: u64,
}

#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: Vars,
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl MultiPoly {
    pub fn zero(vars: &Vars, domain: Domain) -> Self {
        MultiPoly { vars: vars.clone(), domain, terms: BTreeMap::new() }
    }

    pub fn constant(vars: &Vars, c: Scalar) -> Self {
        let domain = c.domain();
        let mut p = MultiPoly::zero(vars, domain);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(vars: &Vars, domain: Domain) -> Self {
        MultiPoly::constant(vars, Scalar::one(domain))
    }

    pub fn var(vars: &Vars, index: usize, domain: Domain) -> Self {
        MultiPoly::monomial(vars, Monomial::unit(vars.len(), index), Scalar::one(domain))
    }

    pub fn monomial(vars: &Vars, mono: Monomial, c: Scalar) -> Self {
        debug_assert_eq!(mono.len(), vars.len());
        let mut p = MultiPoly::zero(vars, c.domain());
        if !c.is_zero() {
            p.terms.insert(mono, c);
        }
        p
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<I>(vars: &Vars, domain: Domain, terms: I) -> Result<Self, AlgebraError>
    where
        I: IntoIterator<Item = (Vec<u32>, Scalar)>,
    {
        let mut p = MultiPoly::zero(vars, domain);
        for (exps, c) in terms {
            if exps.len() != vars.len() {
                return Err(AlgebraError::ArityMismatch { expected: vars.len(), found: exps.len() });
            }
            if c.domain() != domain {
                return Err(AlgebraError::DomainMismatch(domain, c.domain()));
            }
            p.add_term(Monomial(exps), c);
        }
        Ok(p)
    }

    /// Integer-coefficient convenience constructor used heavily in tests.
    pub fn from_int_terms(vars: &Vars, terms: &[(&[u32], i64)]) -> Self {
        MultiPoly::from_terms(
            vars,
            Domain::Rational,
            terms.iter().map(|(e, c)| (e.to_vec(), Scalar::int(*c))),
        )
        .expect("well-formed integer terms")
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().add(&c);
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Scalar)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, mono: &Monomial) -> Scalar {
        self.terms.get(mono).cloned().unwrap_or_else(|| Scalar::zero(self.domain))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    pub fn constant_term(&self) -> Scalar {
        self.coefficient(&Monomial::one(self.nvars()))
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u64> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    /// Homogeneous in each of the two blocks `[0, split)` and `[split, n)`.
    pub fn is_bihomogeneous(&self, split: usize) -> bool {
        let n = self.nvars();
        let mut it = self.terms.keys().map(|m| (m.degree_in(0..split), m.degree_in(split..n)));
        match it.next() {
            None => true,
            Some(first) => it.all(|d| d == first),
        }
    }

    pub fn degree_in(&self, block: std::ops::Range<usize>) -> u64 {
        self.terms.keys().map(|m| m.degree_in(block.clone())).max().unwrap_or(0)
    }

    fn check_compatible(&self, other: &MultiPoly) -> Result<(), AlgebraError> {
        if !same_vars(&self.vars, &other.vars) {
            return Err(AlgebraError::VariableMismatch);
        }
        if self.domain != other.domain {
            return Err(AlgebraError::DomainMismatch(self.domain, other.domain));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.neg());
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(other)?;
        let mut out = MultiPoly::zero(&self.vars, self.domain);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.checked_mul(mb)?, ca.mul(cb));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> MultiPoly {
        MultiPoly {
            vars: self.vars.clone(),
            domain: self.domain,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(&self.vars, self.domain);
        }
        MultiPoly {
            vars: self.vars.clone(),
            domain: self.domain,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Result<MultiPoly, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            terms.insert(m.checked_mul(mono)?, c.clone());
        }
        Ok(MultiPoly { vars: self.vars.clone(), domain: self.domain, terms })
    }

    pub fn pow(&self, e: u32) -> Result<MultiPoly, AlgebraError> {
        let mut acc = MultiPoly::one(&self.vars, self.domain);
        for _ in 0..e {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Exact value at `point`.
    pub fn eval(&self, point: &[Scalar]) -> Result<Scalar, AlgebraError> {
        if point.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars(), found: point.len() });
        }
        if let Some(bad) = point.iter().find(|s| s.domain() != self.domain) {
            return Err(AlgebraError::DomainMismatch(self.domain, bad.domain()));
        }
        let mut acc = Scalar::zero(self.domain);
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// Substitutes the variables whose slot is `Some`, keeping the rest.
    /// The result lives in the same variable list.
    pub fn specialize(&self, values: &[Option<Scalar>]) -> Result<MultiPoly, AlgebraError> {
        if values.len() != self.nvars() {
            return Err(AlgebraError::ArityMismatch { expected: self.nvars(), found: values.len() });
        }
        let mut out = MultiPoly::zero(&self.vars, self.domain);
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = m.0.clone();
            for (i, v) in values.iter().enumerate() {
                if let Some(v) = v {
                    if v.domain() != self.domain {
                        return Err(AlgebraError::DomainMismatch(self.domain, v.domain()));
                    }
                    coeff = coeff.mul(&v.pow(exps[i]));
                    exps[i] = 0;
                }
            }
            out.add_term(Monomial(exps), coeff);
        }
        Ok(out)
    }

    /// Re-expresses the polynomial in `target`, mapping variable `i` to
    /// `target[mapping[i]]`.
    pub fn embed(&self, target: &Vars, mapping: &[usize]) -> Result<MultiPoly, AlgebraError> {
        if mapping.len() != self.nvars() || mapping.iter().any(|&j| j >= target.len()) {
            return Err(AlgebraError::VariableMismatch);
        }
        let mut out = MultiPoly::zero(target, self.domain);
        for (m, c) in &self.terms {
            let mut e = vec![0u32; target.len()];
            for (i, &j) in mapping.iter().enumerate() {
                e[j] += m.0[i];
            }
            out.add_term(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn partial_derivative(&self, var: usize) -> Result<MultiPoly, AlgebraError> {
        if var >= self.nvars() {
            return Err(AlgebraError::UnknownVariable(var.to_string()));
        }
        let mut out = MultiPoly::zero(&self.vars, self.domain);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[var] -= 1;
            out.add_term(Monomial(exps), c.mul(&Scalar::from_i64(e as i64, self.domain)));
        }
        Ok(out)
    }

    pub fn partial_derivative_by_name(&self, name: &str) -> Result<MultiPoly, AlgebraError> {
        let idx = self
            .vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| AlgebraError::UnknownVariable(name.to_string()))?;
        self.partial_derivative(idx)
    }

    /// Block degrees for the partition `[0, split)` / `[split, n)`.
    pub fn bidegree(&self, split: usize) -> Result<BiDegree, AlgebraError> {
        if split > self.nvars() {
            return Err(AlgebraError::InvalidPartition { split, nvars: self.nvars() });
        }
        Ok(BiDegree { deg_x: self.degree_in(0..split), deg_y: self.degree_in(split..self.nvars()) })
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Result<BigRational, AlgebraError> {
        if self.domain != Domain::Rational {
            return Err(AlgebraError::NotRational);
        }
        Ok(self
            .terms
            .values()
            .map(|c| c.abs_rational().expect("rational domain"))
            .fold(BigRational::zero(), |a, b| a + b))
    }

    /// Exact quotient `self / divisor`; errors if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
        self.check_compatible(divisor)?;
        let (lm, lc) = divisor.leading_term().ok_or(AlgebraError::DivisionByZero)?;
        let lc_inv = lc.inv().ok_or(AlgebraError::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(&self.vars, self.domain);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return Err(AlgebraError::InexactDivision);
            }
            let qm = lm.quotient_of(m);
            let qc = c.mul(&lc_inv);
            for (dm, dc) in &divisor.terms {
                rem.add_term(dm.checked_mul(&qm)?, dc.mul(&qc).neg());
            }
            quot.add_term(qm, qc);
        }
        Ok(quot)
    }

    /// Coefficient-wise reduction of a rational polynomial into `F_p`.
    pub fn reduce_mod(&self, p: u64) -> Result<MultiPoly, AlgebraError> {
        let mut out = MultiPoly::zero(&self.vars, Domain::Prime(p));
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c.reduce_mod(p)?);
        }
        Ok(out)
    }

    /// Scales a rational polynomial to integer coefficients with content 1
    /// and a positive leading coefficient. Zero stays zero.
    pub fn primitive_integer(&self) -> Result<MultiPoly, AlgebraError> {
        if self.domain != Domain::Rational {
            return Err(AlgebraError::NotRational);
        }
        if self.is_zero() {
            return Ok(self.clone());
        }
        let mut lcm_den = BigInt::one();
        for c in self.terms.values() {
            lcm_den = lcm_den.lcm(c.as_rational().unwrap().denom());
        }
        let ints: Vec<BigInt> = self
            .terms
            .values()
            .map(|c| {
                let r = c.as_rational().unwrap();
                r.numer() * (&lcm_den / r.denom())
            })
            .collect();
        let mut content = BigInt::zero();
        for v in &ints {
            content = content.gcd(v);
        }
        let lead_negative = ints.last().map(|v| v.is_negative()).unwrap_or(false);
        if lead_negative {
            content = -content;
        }
        let terms = self
            .terms
            .keys()
            .zip(ints)
            .map(|(m, v)| (m.clone(), Scalar::Rat(BigRational::from_integer(v / &content))))
            .collect();
        Ok(MultiPoly { vars: self.vars.clone(), domain: self.domain, terms })
    }

    /// Integer coefficients if every coefficient is an integer.
    pub fn integer_coefficients(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| {
                let r = c.as_rational()?;
                r.is_integer().then(|| (m.clone(), r.numer().clone()))
            })
            .collect()
    }
}

impl std::ops::Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_add(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_sub(rhs).expect("incompatible polynomials")
    }
}

impl std::ops::Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.checked_mul(rhs).expect("incompatible polynomials")
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let negative = c.is_negative();
            let abs = if negative { c.neg() } else { c.clone() };
            if first {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            first = false;
            let mut factors: Vec<String> = Vec::new();
            for (v, &e) in self.vars.iter().zip(&m.0) {
                match e {
                    0 => {}
                    1 => factors.push(v.clone()),
                    _ => factors.push(format!("{v}^{e}")),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Vars {
        make_vars(&["X0", "X1"])
    }

    #[test]
    fn difference_of_squares() {
        let v = xy();
        let p = MultiPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let q = MultiPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], -1)]);
        let expected = MultiPoly::from_int_terms(&v, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert_eq!(&p * &q, expected);
        assert_eq!(expected.to_string(), "X0^2 - X1^2");
    }

    #[test]
    fn monomial_product() {
        let v = xy();
        let p = MultiPoly::from_int_terms(&v, &[(&[1, 0], 2)]);
        let q = MultiPoly::from_int_terms(&v, &[(&[0, 1], 3)]);
        assert_eq!(&p * &q, MultiPoly::from_int_terms(&v, &[(&[1, 1], 6)]));
    }

    #[test]
    fn l1_boundary_case() {
        let v = xy();
        let p = MultiPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let sq = &p * &p;
        let four = BigRational::from_integer(4.into());
        assert_eq!(sq.l1_norm().unwrap(), four);
        assert_eq!(p.l1_norm().unwrap() * p.l1_norm().unwrap(), four);
        let cube = p.pow(3).unwrap();
        assert_eq!(cube.l1_norm().unwrap(), BigRational::from_integer(8.into()));
        assert!(MultiPoly::zero(&v, Domain::Rational).l1_norm().unwrap().is_zero());
        let diff = MultiPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], -1)]);
        assert_eq!(diff.l1_norm().unwrap(), BigRational::from_integer(2.into()));
    }

    #[test]
    fn l1_rejects_prime_field() {
        let v = xy();
        let p = MultiPoly::var(&v, 0, Domain::Prime(5));
        assert!(matches!(p.l1_norm(), Err(AlgebraError::NotRational)));
    }

    #[test]
    fn evaluation_examples() {
        let v = xy();
        let p = MultiPoly::from_int_terms(&v, &[(&[2, 0], 1), (&[0, 2], -1)]);
        assert!(p.eval(&[Scalar::int(1), Scalar::int(1)]).unwrap().is_zero());
        assert_eq!(p.eval(&[Scalar::int(2), Scalar::int(1)]).unwrap(), Scalar::int(3));
        assert!(p.eval(&[Scalar::int(2)]).is_err());

        let abc = make_vars(&["a", "b", "c"]);
        let disc = MultiPoly::from_int_terms(&abc, &[(&[0, 2, 0], 1), (&[1, 0, 1], -4)]);
        assert!(disc.eval(&[Scalar::int(1), Scalar::int(2), Scalar::int(1)]).unwrap().is_zero());
    }

    #[test]
    fn derivatives() {
        let v = xy();
        let cube = MultiPoly::from_int_terms(&v, &[(&[3, 0], 1)]);
        assert_eq!(cube.partial_derivative(0).unwrap(), MultiPoly::from_int_terms(&v, &[(&[2, 0], 3)]));
        let x0x1 = MultiPoly::from_int_terms(&v, &[(&[1, 1], 1)]);
        assert_eq!(x0x1.partial_derivative_by_name("X1").unwrap(), MultiPoly::var(&v, 0, Domain::Rational));
        assert!(x0x1.partial_derivative_by_name("Z").is_err());

        // Euler: X0 f_0 + X1 f_1 = 3 f
        let f = MultiPoly::from_int_terms(&v, &[(&[3, 0], 1), (&[1, 2], 1)]);
        let x0 = MultiPoly::var(&v, 0, Domain::Rational);
        let x1 = MultiPoly::var(&v, 1, Domain::Rational);
        let lhs = &(&x0 * &f.partial_derivative(0).unwrap()) + &(&x1 * &f.partial_derivative(1).unwrap());
        assert_eq!(lhs, f.scale(&Scalar::int(3)));
    }

    #[test]
    fn bidegrees() {
        let v = make_vars(&["X0", "X1", "Y0", "Y1"]);
        let p = MultiPoly::from_int_terms(&v, &[(&[2, 0, 1, 0], 1), (&[1, 1, 0, 1], 1)]);
        assert_eq!(p.bidegree(2).unwrap(), BiDegree { deg_x: 2, deg_y: 1 });
        assert_eq!(MultiPoly::one(&v, Domain::Rational).bidegree(2).unwrap(), BiDegree { deg_x: 0, deg_y: 0 });
        assert!(p.bidegree(5).is_err());
        assert!(p.is_bihomogeneous(2));
    }

    #[test]
    fn mismatched_rings_are_errors() {
        let p = MultiPoly::var(&xy(), 0, Domain::Rational);
        let q = MultiPoly::var(&make_vars(&["A", "B"]), 0, Domain::Rational);
        assert!(matches!(p.checked_mul(&q), Err(AlgebraError::VariableMismatch)));
        let r = MultiPoly::var(&xy(), 0, Domain::Prime(7));
        assert!(matches!(p.checked_mul(&r), Err(AlgebraError::DomainMismatch(..))));
    }

    #[test]
    fn exact_division_and_normalisation() {
        let v = xy();
        let a = MultiPoly::from_int_terms(&v, &[(&[1, 0], 1), (&[0, 1], 1)]);
        let b = MultiPoly::from_int_terms(&v, &[(&[1, 0], 2), (&[0, 1], -3)]);
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert!(matches!(b.div_exact(&a), Err(AlgebraError::InexactDivision)));

        let half = Scalar::Rat(BigRational::new((-1).into(), 2.into()));
        let p = b.scale(&half);
        let n = p.primitive_integer().unwrap();
        assert_eq!(n, b);
    }
}
