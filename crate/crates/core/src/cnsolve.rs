//! Nonvanishing points of polynomial functions on product grids, offsets
//! that keep residues nonzero at points over finite fields, and the
//! combined `a + F·b` grid search.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::exactalg::{AlgebraError, MultiPoly, Scalar};

/// Exhaustive offset search is limited to this many candidate vectors.
pub const OFFSET_SEARCH_CAP: u128 = 1_000_000;
/// Random evaluations used to decide that a restriction vanishes.
const RESTRICTION_PROBES: u64 = 3;
/// Bit size of the random probe coordinates.
const PROBE_BITS: u32 = 48;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CnError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("oracle contract violated: {0}")]
    OracleContractViolation(String),
    #[error("grid {index} has {size} points, need at least {needed}")]
    GridTooSmall { index: usize, size: usize, needed: u64 },
    #[error("expected {expected} grids, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("every section vanishes at residue point {index}")]
    BasePointAtResidue { index: usize },
    #[error("no offset vector keeps every residue nonzero")]
    OffsetsNotFound,
    #[error("invalid residue point {index}: {reason}")]
    InvalidResiduePoint { index: usize, reason: String },
}

/// Black-box polynomial function of bounded total degree.
pub trait PolyOracle: Sync {
    fn arity(&self) -> usize;
    fn degree(&self) -> u64;
    fn eval(&self, point: &[BigRational]) -> BigRational;
}

/// A rational polynomial used as an oracle.
#[derive(Debug, Clone)]
pub struct PolyFunction(pub MultiPoly);

impl PolyOracle for PolyFunction {
    fn arity(&self) -> usize {
        self.0.nvars()
    }

    fn degree(&self) -> u64 {
        self.0.total_degree().unwrap_or(0)
    }

    fn eval(&self, point: &[BigRational]) -> BigRational {
        let pt: Vec<Scalar> = point.iter().cloned().map(Scalar::rational).collect();
        self.0.eval(&pt).expect("arity checked by caller").as_rational().expect("rational").clone()
    }
}

/// Oracle from a closure.
pub struct FnOracle<F> {
    pub arity: usize,
    pub degree: u64,
    pub f: F,
}

impl<F> PolyOracle for FnOracle<F>
where
    F: Fn(&[BigRational]) -> BigRational + Sync,
{
    fn arity(&self) -> usize {
        self.arity
    }

    fn degree(&self) -> u64 {
        self.degree
    }

    fn eval(&self, point: &[BigRational]) -> BigRational {
        (self.f)(point)
    }
}

/// Finite coordinate sets, each sorted ascending without repeats.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridSpec {
    sets: Vec<Vec<BigRational>>,
}

impl GridSpec {
    pub fn new(mut sets: Vec<Vec<BigRational>>) -> Self {
        for s in &mut sets {
            s.sort();
            s.dedup();
        }
        GridSpec { sets }
    }

    /// `{0, 1, ..., size-1}` in every coordinate.
    pub fn integer_box(n: usize, size: usize) -> Self {
        let set: Vec<BigRational> = (0..size).map(|i| BigRational::from_integer(BigInt::from(i))).collect();
        GridSpec { sets: vec![set; n] }
    }

    pub fn sets(&self) -> &[Vec<BigRational>] {
        &self.sets
    }

    pub fn arity(&self) -> usize {
        self.sets.len()
    }

    fn check(&self, u: &dyn PolyOracle) -> Result<(), CnError> {
        if self.sets.len() != u.arity() {
            return Err(CnError::ArityMismatch { expected: u.arity(), found: self.sets.len() });
        }
        for (index, s) in self.sets.iter().enumerate() {
            if (s.len() as u64) < u.degree() + 1 {
                return Err(CnError::GridTooSmall { index, size: s.len(), needed: u.degree() + 1 });
            }
        }
        Ok(())
    }
}

fn probe_rng(seed: u64, depth: usize, candidate: usize, probe: u64) -> ChaCha8Rng {
    let mixed = seed
        ^ (depth as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)
        ^ (candidate as u64).wrapping_mul(0xC2B2_AE3D_27D4_EB4F)
        ^ probe.wrapping_mul(0x1656_67B1_9E37_79F9);
    ChaCha8Rng::seed_from_u64(mixed)
}

fn random_rational(rng: &mut ChaCha8Rng) -> BigRational {
    let v: i64 = rng.gen_range(-(1i64 << PROBE_BITS)..(1i64 << PROBE_BITS));
    BigRational::from_integer(BigInt::from(v))
}

/// Whether `u` with the first coordinates fixed to `prefix` is a nonzero
/// polynomial in the rest. A nonzero probe is conclusive; vanishing at all
/// probes is taken as identically zero.
fn restriction_nonzero(u: &dyn PolyOracle, prefix: &[BigRational], seed: u64, candidate: usize) -> bool {
    let n = u.arity();
    if prefix.len() == n {
        return !u.eval(prefix).is_zero();
    }
    (0..RESTRICTION_PROBES).any(|probe| {
        let mut rng = probe_rng(seed, prefix.len(), candidate, probe);
        let mut pt = prefix.to_vec();
        pt.extend((prefix.len()..n).map(|_| random_rational(&mut rng)));
        !u.eval(&pt).is_zero()
    })
}

/// Checks that the `(d+1)`-th finite difference of `u` along a random line
/// vanishes, as it must for total degree `d`.
pub fn degree_spot_check(u: &dyn PolyOracle, seed: u64) -> bool {
    let n = u.arity();
    let d = u.degree() as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xD1FF);
    let base: Vec<BigRational> = (0..n).map(|_| BigRational::from_integer(rng.gen_range(-50i64..=50).into())).collect();
    let dir: Vec<BigRational> = (0..n).map(|_| BigRational::from_integer(rng.gen_range(-50i64..=50).into())).collect();
    let mut values: Vec<BigRational> = (0..=d + 1)
        .map(|t| {
            let t = BigRational::from_integer(BigInt::from(t));
            let pt: Vec<BigRational> = base.iter().zip(&dir).map(|(b, v)| b + &t * v).collect();
            u.eval(&pt)
        })
        .collect();
    for _ in 0..=d {
        values = values.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    values.iter().all(Zero::is_zero)
}

/// First point of the grid, in lexicographic order of ascending coordinate
/// values, where `u` does not vanish.
pub fn cn_search(u: &dyn PolyOracle, grid: &GridSpec, seed: u64) -> Result<Vec<BigRational>, CnError> {
    grid.check(u)?;
    if !degree_spot_check(u, seed) {
        return Err(CnError::OracleContractViolation(format!("degree exceeds the declared {}", u.degree())));
    }
    let mut prefix = Vec::with_capacity(u.arity());
    if dfs(u, grid, seed, &mut prefix) {
        Ok(prefix)
    } else {
        Err(CnError::OracleContractViolation("vanishes on the whole grid".into()))
    }
}

fn dfs(u: &dyn PolyOracle, grid: &GridSpec, seed: u64, prefix: &mut Vec<BigRational>) -> bool {
    let depth = prefix.len();
    if depth == u.arity() {
        return !u.eval(prefix).is_zero();
    }
    let set = &grid.sets[depth];
    let mut start = 0;
    while start < set.len() {
        let found = set[start..].par_iter().enumerate().find_first(|(k, a)| {
            let mut p = prefix.clone();
            p.push((*a).clone());
            restriction_nonzero(u, &p, seed, start + k)
        });
        let Some((k, a)) = found else { return false };
        prefix.push(a.clone());
        if dfs(u, grid, seed, prefix) {
            return true;
        }
        prefix.pop();
        start += k + 1;
    }
    false
}

/// A point over `F_p` given by representatives in `[0, p)`.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ResiduePoint {
    pub prime: u64,
    pub coords: Vec<u64>,
}

impl ResiduePoint {
    pub fn scalars(&self) -> Vec<Scalar> {
        self.coords.iter().map(|&c| Scalar::Mod(crate::exactalg::Fp::new(c, self.prime))).collect()
    }
}

/// Offsets `0 <= a_j < F` with `F` the product of the distinct residue
/// characteristics.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct OffsetVector {
    pub modulus: u64,
    pub offsets: Vec<u64>,
}

/// Product of the distinct primes among the points (1 without points).
pub fn residue_modulus(points: &[ResiduePoint]) -> u64 {
    let mut primes: Vec<u64> = points.iter().map(|p| p.prime).collect();
    primes.sort_unstable();
    primes.dedup();
    primes.iter().product()
}

/// Residues `e_j(y_i)` of integer sections at each point.
pub fn residue_table(sections: &[MultiPoly], points: &[ResiduePoint]) -> Result<Vec<Vec<u64>>, CnError> {
    let mut table = Vec::with_capacity(points.len());
    for (index, pt) in points.iter().enumerate() {
        if pt.coords.iter().any(|&c| c >= pt.prime) || pt.coords.iter().all(|&c| c == 0) {
            return Err(CnError::InvalidResiduePoint { index, reason: "coordinates must be residues, not all zero".into() });
        }
        let sc = pt.scalars();
        let mut row = Vec::with_capacity(sections.len());
        for e in sections {
            let v = e.reduce_mod(pt.prime)?.eval(&sc)?;
            row.push(v.as_fp().expect("prime field").value());
        }
        if row.iter().all(|&v| v == 0) {
            return Err(CnError::BasePointAtResidue { index });
        }
        table.push(row);
    }
    Ok(table)
}

fn offsets_work(table: &[Vec<u64>], points: &[ResiduePoint], a: &[u64]) -> bool {
    table.iter().zip(points).all(|(row, pt)| {
        let p = pt.prime as u128;
        let s = row.iter().zip(a).fold(0u128, |acc, (&e, &x)| (acc + e as u128 * (x as u128 % p)) % p);
        s != 0
    })
}

/// Vectors in `[0, bound)^n` by ascending coordinate sum, then
/// lexicographically, until `visit` returns true.
fn enumerate_by_sum(n: usize, bound: u64, mut visit: impl FnMut(&[u64]) -> bool) -> bool {
    fn rec(cur: &mut Vec<u64>, n: usize, remaining: u64, bound: u64, visit: &mut dyn FnMut(&[u64]) -> bool) -> bool {
        if cur.len() == n - 1 {
            if remaining >= bound {
                return false;
            }
            cur.push(remaining);
            let hit = visit(cur);
            cur.pop();
            return hit;
        }
        for x in 0..bound.min(remaining + 1) {
            cur.push(x);
            let hit = rec(cur, n, remaining - x, bound, visit);
            cur.pop();
            if hit {
                return true;
            }
        }
        false
    }
    if n == 0 {
        return visit(&[]);
    }
    let max_sum = (bound - 1) * n as u64;
    let mut cur = Vec::with_capacity(n);
    (0..=max_sum).any(|s| rec(&mut cur, n, s, bound, &mut visit))
}

/// Offsets such that `Σ (a_j + F b_j) e_j(y_i) ≠ 0` in every residue field
/// for all integers `b_j`.
pub fn poschr_offsets(sections: &[MultiPoly], points: &[ResiduePoint], seed: u64) -> Result<OffsetVector, CnError> {
    let n = sections.len();
    let modulus = residue_modulus(points);
    if points.is_empty() {
        return Ok(OffsetVector { modulus, offsets: vec![0; n] });
    }
    let table = residue_table(sections, points)?;
    let states = (modulus as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if states <= OFFSET_SEARCH_CAP {
        let mut found = None;
        enumerate_by_sum(n, modulus, |a| {
            if offsets_work(&table, points, a) {
                found = Some(a.to_vec());
                true
            } else {
                false
            }
        });
        return found.map(|offsets| OffsetVector { modulus, offsets }).ok_or(CnError::OffsetsNotFound);
    }
    per_prime_offsets(&table, points, modulus, seed)
}

/// Solves each prime separately and glues the residues by CRT.
fn per_prime_offsets(table: &[Vec<u64>], points: &[ResiduePoint], modulus: u64, seed: u64) -> Result<OffsetVector, CnError> {
    let n = table[0].len();
    let mut primes: Vec<u64> = points.iter().map(|p| p.prime).collect();
    primes.sort_unstable();
    primes.dedup();
    let mut offsets = vec![0u64; n];
    let mut acc_mod: u64 = 1;
    for &p in &primes {
        let idx: Vec<usize> = (0..points.len()).filter(|&i| points[i].prime == p).collect();
        let sub_table: Vec<Vec<u64>> = idx.iter().map(|&i| table[i].clone()).collect();
        let sub_points: Vec<ResiduePoint> = idx.iter().map(|&i| points[i].clone()).collect();
        let mut local = None;
        if (p as u128).checked_pow(n as u32).is_some_and(|s| s <= OFFSET_SEARCH_CAP) {
            enumerate_by_sum(n, p, |a| {
                let ok = offsets_work(&sub_table, &sub_points, a);
                if ok {
                    local = Some(a.to_vec());
                }
                ok
            });
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ p);
            for _ in 0..100_000 {
                let a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
                if offsets_work(&sub_table, &sub_points, &a) {
                    local = Some(a);
                    break;
                }
            }
        }
        let local = local.ok_or(CnError::OffsetsNotFound)?;
        // x ≡ offsets (mod acc_mod), x ≡ local (mod p)
        let inv = mod_inverse(acc_mod % p, p);
        for (o, &l) in offsets.iter_mut().zip(&local) {
            let diff = (l + p - *o % p) % p;
            let t = (diff as u128 * inv as u128 % p as u128) as u64;
            *o += acc_mod * t;
        }
        acc_mod *= p;
    }
    debug_assert_eq!(acc_mod, modulus);
    Ok(OffsetVector { modulus, offsets })
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    crate::exactalg::Fp::new(a, p).inv().expect("coprime moduli").value()
}

/// Coefficients `c_j = a_j + F b_j`, `0 <= b_j <= b_cap`, with `u(c) ≠ 0`,
/// chosen by [`cn_search`] on the progressions.
pub fn combined_grid_search(
    u: &dyn PolyOracle,
    offsets: &OffsetVector,
    b_cap: u64,
    seed: u64,
) -> Result<Vec<BigInt>, CnError> {
    if offsets.offsets.len() != u.arity() {
        return Err(CnError::ArityMismatch { expected: u.arity(), found: offsets.offsets.len() });
    }
    let f = BigInt::from(offsets.modulus);
    let sets = offsets
        .offsets
        .iter()
        .map(|&a| (0..=b_cap).map(|b| BigRational::from_integer(BigInt::from(a) + &f * BigInt::from(b))).collect())
        .collect();
    let point = cn_search(u, &GridSpec::new(sets), seed)?;
    Ok(point.into_iter().map(|r| r.to_integer()).collect())
}

/// Full-grid enumeration in the search order; the reference for
/// [`cn_search`].
pub fn brute_force_first_nonzero(u: &dyn PolyOracle, grid: &GridSpec) -> Option<Vec<BigRational>> {
    let n = grid.arity();
    let mut idx = vec![0usize; n];
    if grid.sets.iter().any(Vec::is_empty) {
        return None;
    }
    loop {
        let pt: Vec<BigRational> = idx.iter().zip(&grid.sets).map(|(&i, s)| s[i].clone()).collect();
        if !u.eval(&pt).is_zero() {
            return Some(pt);
        }
        let mut k = n;
        loop {
            if k == 0 {
                return None;
            }
            k -= 1;
            idx[k] += 1;
            if idx[k] < grid.sets[k].len() {
                break;
            }
            idx[k] = 0;
        }
    }
}
