//! Dense exact linear algebra over a scalar field, and determinants of
//! polynomial matrices.

use crate::exactalg::{AlgebraError, Domain, MultiPoly, Scalar, Vars};

/// Row-reduces `rows` in place to reduced row echelon form and returns the
/// pivot column of each nonzero row, in order. Zero rows are dropped.
pub fn rref(rows: &mut Vec<Vec<Scalar>>) -> Vec<usize> {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].inv().expect("nonzero pivot");
        if !inv.is_one() {
            for x in rows[r].iter_mut().skip(col) {
                *x = x.mul(&inv);
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(col) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank(rows: &[Vec<Scalar>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Echelon basis that accepts vectors one at a time and reports whether
/// each one enlarges the span.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalBasis {
    pub fn new() -> Self {
        IncrementalBasis { rows: Vec::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut v = v.to_vec();
        for (pc, row) in &self.rows {
            if v[*pc].is_zero() {
                continue;
            }
            let f = v[*pc].clone();
            for (x, y) in v.iter_mut().zip(row) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v).iter().all(Scalar::is_zero)
    }

    /// Inserts `v`; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &[Scalar]) -> bool {
        let mut v = self.reduce(v);
        let Some(pc) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[pc].inv().expect("nonzero");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((pc, v));
        true
    }
}

impl Default for IncrementalBasis {
    fn default() -> Self {
        Self::new()
    }
}

/// Determinant of a square scalar matrix by Gaussian elimination.
pub fn det_field(mat: &[Vec<Scalar>], domain: Domain) -> Scalar {
    let n = mat.len();
    let mut m = mat.to_vec();
    let mut det = Scalar::one(domain);
    for col in 0..n {
        let Some(p) = (col..n).find(|&i| !m[i][col].is_zero()) else {
            return Scalar::zero(domain);
        };
        if p != col {
            m.swap(p, col);
            det = det.neg();
        }
        det = det.mul(&m[col][col]);
        let inv = m[col][col].inv().expect("nonzero");
        for i in col + 1..n {
            if m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].mul(&inv);
            let (top, bottom) = m.split_at_mut(i);
            for (x, y) in bottom[0].iter_mut().zip(&top[col]).skip(col) {
                if !y.is_zero() {
                    *x = x.sub(&f.mul(y));
                }
            }
        }
    }
    det
}

/// Solves `a x = b` for some `x` (free variables set to zero), or `None`
/// when inconsistent. `a` is given by rows.
pub fn solve(a: &[Vec<Scalar>], b: &[Scalar], domain: Domain) -> Option<Vec<Scalar>> {
    let ncols = a.first().map_or(0, Vec::len);
    let mut aug: Vec<Vec<Scalar>> = a
        .iter()
        .zip(b)
        .map(|(row, bi)| {
            let mut r = row.clone();
            r.push(bi.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&ncols) {
        return None;
    }
    let mut x = vec![Scalar::zero(domain); ncols];
    for (row, &pc) in aug.iter().zip(&pivots) {
        x[pc] = row[ncols].clone();
    }
    Some(x)
}

/// Greedy choice of linearly independent columns, scanning left to right.
pub fn independent_columns(mat: &[Vec<Scalar>], ncols: usize) -> Vec<usize> {
    let mut basis = IncrementalBasis::new();
    let mut chosen = Vec::new();
    for c in 0..ncols {
        let col: Vec<Scalar> = mat.iter().map(|row| row[c].clone()).collect();
        if basis.insert(&col) {
            chosen.push(c);
        }
    }
    chosen
}

/// Fraction-free (Bareiss) determinant of a square polynomial matrix.
pub fn bareiss_det(mat: &[Vec<MultiPoly>], vars: &Vars, domain: Domain) -> Result<MultiPoly, AlgebraError> {
    let n = mat.len();
    if n == 0 {
        return Ok(MultiPoly::one(vars, domain));
    }
    let mut m = mat.to_vec();
    let mut prev = MultiPoly::one(vars, domain);
    let mut negate = false;
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(p) => {
                    m.swap(k, p);
                    negate = !negate;
                }
                None => return Ok(MultiPoly::zero(vars, domain)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let a = m[i][j].checked_mul(&m[k][k])?;
                let b = m[i][k].checked_mul(&m[k][j])?;
                m[i][j] = a.checked_sub(&b)?.div_exact(&prev)?;
            }
            m[i][k] = MultiPoly::zero(vars, domain);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Laplace expansion along the first row. Exponential; kept as an
/// independent check for small matrices.
pub fn cofactor_det(mat: &[Vec<MultiPoly>], vars: &Vars, domain: Domain) -> Result<MultiPoly, AlgebraError> {
    let n = mat.len();
    if n == 0 {
        return Ok(MultiPoly::one(vars, domain));
    }
    if n == 1 {
        return Ok(mat[0][0].clone());
    }
    let mut acc = MultiPoly::zero(vars, domain);
    for j in 0..n {
        if mat[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<MultiPoly>> = mat[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, x)| x.clone()).collect())
            .collect();
        let term = mat[0][j].checked_mul(&cofactor_det(&minor, vars, domain)?)?;
        acc = if j % 2 == 0 { acc.checked_add(&term)? } else { acc.checked_sub(&term)? };
    }
    Ok(acc)
}
