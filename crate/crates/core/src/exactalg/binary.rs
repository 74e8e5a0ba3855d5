//! Binary forms over Q via their dehomogenisations.

use num_rational::BigRational;
use num_traits::Zero;

use super::poly::MultiPoly;
use super::scalar::{Domain, Scalar};
use super::AlgebraError;

/// Dense univariate polynomial over Q, coefficients low to high.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UPoly(pub Vec<BigRational>);

impl UPoly {
    fn trimmed(mut c: Vec<BigRational>) -> UPoly {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::trimmed(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer((i as i64).into()))
                .collect(),
        )
    }

    pub fn rem(&self, divisor: &UPoly) -> UPoly {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.0[dd].clone();
        let mut r = self.0.clone();
        while r.len() > dd && !r.is_empty() {
            let top = r.len() - 1;
            let q = &r[top] / &lead;
            if !q.is_zero() {
                let shift = top - dd;
                for (i, c) in divisor.0.iter().enumerate() {
                    r[shift + i] -= &q * c;
                }
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        UPoly::trimmed(r)
    }

    pub fn monic(&self) -> UPoly {
        match self.0.last() {
            None => self.clone(),
            Some(l) => UPoly(self.0.iter().map(|c| c / l).collect()),
        }
    }

    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
}

/// A binary form `sum_i a_i X0^i X1^(d-i)` with a formal degree `d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryForm {
    pub degree: u32,
    /// `coeffs[i]` multiplies `X0^i X1^(d-i)`.
    pub coeffs: Vec<BigRational>,
}

impl BinaryForm {
    /// Reads a homogeneous rational polynomial in exactly two variables.
    pub fn from_poly(p: &MultiPoly) -> Result<BinaryForm, AlgebraError> {
        if p.nvars() != 2 {
            return Err(AlgebraError::NotBinaryForm);
        }
        if p.domain() != Domain::Rational {
            return Err(AlgebraError::NotRational);
        }
        if !p.is_homogeneous() {
            return Err(AlgebraError::NotHomogeneous);
        }
        let d = p.total_degree().unwrap_or(0) as u32;
        let mut coeffs = vec![BigRational::zero(); d as usize + 1];
        for (m, c) in p.terms() {
            coeffs[m.exponents()[0] as usize] = c.as_rational().unwrap().clone();
        }
        Ok(BinaryForm { degree: d, coeffs })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Multiplicity of the root `(1:0)`, i.e. the power of `X1` dividing the form.
    pub fn multiplicity_at_infinity(&self) -> u32 {
        self.coeffs.iter().rev().take_while(|c| c.is_zero()).count() as u32
    }

    pub fn dehomogenize(&self) -> UPoly {
        UPoly::trimmed(self.coeffs.clone())
    }

    /// Rehomogenises `u` to degree `degree` in `X0/X1`.
    pub fn from_upoly(u: &UPoly, degree: u32) -> BinaryForm {
        let mut coeffs = vec![BigRational::zero(); degree as usize + 1];
        for (i, c) in u.0.iter().enumerate() {
            coeffs[i] = c.clone();
        }
        BinaryForm { degree, coeffs }
    }

    pub fn to_poly(&self, vars: &super::poly::Vars) -> MultiPoly {
        let terms = self.coeffs.iter().enumerate().map(|(i, c)| {
            (vec![i as u32, self.degree - i as u32], Scalar::Rat(c.clone()))
        });
        MultiPoly::from_terms(vars, Domain::Rational, terms).expect("two variables")
    }
}

/// Greatest common divisor of two binary forms, monic in the dehomogenised
/// sense. Both zero gives zero.
pub fn binary_gcd(f: &BinaryForm, g: &BinaryForm) -> BinaryForm {
    if f.is_zero() {
        return g.clone();
    }
    if g.is_zero() {
        return f.clone();
    }
    let k = f.multiplicity_at_infinity().min(g.multiplicity_at_infinity());
    let affine = f.dehomogenize().gcd(&g.dehomogenize());
    let deg = affine.degree().unwrap_or(0) as u32 + k;
    BinaryForm::from_upoly(&affine, deg)
}

/// A rational projective root of a linear binary form `a X0 + b X1`.
pub fn linear_root(form: &BinaryForm) -> Option<(BigRational, BigRational)> {
    if form.degree != 1 {
        return None;
    }
    let (b, a) = (&form.coeffs[0], &form.coeffs[1]);
    if a.is_zero() && b.is_zero() {
        return None;
    }
    // a x0 + b x1 = 0  ->  (x0 : x1) = (-b : a)
    Some((-b.clone(), a.clone()))
}
