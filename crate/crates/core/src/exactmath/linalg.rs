use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{RatVector, Rational};
use crate::error::{Error, Result};
use crate::field::Field;

/// Reduces `m` in place to reduced row echelon form and returns the pivot
/// columns. Zero rows are dropped.
pub fn rref<K: Field>(m: &mut Vec<Vec<K>>) -> Vec<usize> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inverse();
        for x in m[row].iter_mut() {
            *x = x.clone() * inv.clone();
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                for c in col..ncols {
                    let sub = factor.clone() * m[row][c].clone();
                    m[r][c] = m[r][c].clone() - sub;
                }
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    pivots
}

pub fn rank<K: Field>(rows: &[Vec<K>]) -> usize {
    let mut m = rows.to_vec();
    rref(&mut m).len()
}

/// Basis of the right kernel `{v : M v = 0}` over `K`, one vector per free
/// column, with a 1 in that column.
pub fn kernel_basis_over<K: Field>(rows: &[Vec<K>], ncols: usize) -> Result<Vec<Vec<K>>> {
    if let Some(bad) = rows.iter().position(|r| r.len() != ncols) {
        return Err(Error::input(format!(
            "row {bad} has length {} but {ncols} columns were expected",
            rows[bad].len()
        )));
    }
    let mut m = rows.to_vec();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![K::zero(); ncols];
            v[f] = K::one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m[r][f].clone();
            }
            v
        })
        .collect())
}

/// Scales a rational vector to coprime integers, keeping its direction.
pub fn clear_denominators(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &lcm).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

/// Right kernel of a rational matrix, each basis vector cleared to coprime
/// integers. An empty row list means the whole space is the kernel, which
/// needs the ambient dimension, so use [`kernel_basis_over`] for that case.
pub fn kernel_basis(rows: &[RatVector]) -> Result<Vec<RatVector>> {
    let ncols = rows.first().map_or(0, RatVector::dim);
    let dense: Vec<Vec<Rational>> = rows.iter().map(|r| r.entries().to_vec()).collect();
    Ok(kernel_basis_over(&dense, ncols)?
        .into_iter()
        .map(|v| RatVector::from_bigints(&clear_denominators(&v)))
        .collect())
}

/// Solves `A x = b` when the solution exists and is unique.
pub fn solve_unique<K: Field>(a: &[Vec<K>], b: &[K]) -> Option<Vec<K>> {
    let n = a.first()?.len();
    let mut aug: Vec<Vec<K>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&n) || pivots.len() != n {
        return None;
    }
    Some(aug.iter().map(|r| r[n].clone()).collect())
}

/// Incrementally maintained row space in echelon form, with sparse rows.
///
/// Used where rows arrive one at a time and only the rank (or membership) is
/// wanted: graded pieces of ideals in the dense-rank oracles.
#[derive(Clone, Debug)]
pub struct EchelonSpace<K> {
    ncols: usize,
    // leading column -> row normalised to leading coefficient 1
    pivots: BTreeMap<usize, Vec<(usize, K)>>,
}

impl<K: Field> EchelonSpace<K> {
    pub fn new(ncols: usize) -> Self {
        EchelonSpace {
            ncols,
            pivots: BTreeMap::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Reduces a sparse row (sorted by column, no zeros) against the space.
    pub fn reduce(&self, mut row: Vec<(usize, K)>) -> Vec<(usize, K)> {
        let mut start = 0;
        while start < row.len() {
            let (lead, coef) = row[start].clone();
            match self.pivots.get(&lead) {
                Some(p) => {
                    row = axpy(&row, &coef, p);
                    start = row.partition_point(|(c, _)| *c < lead);
                }
                None => start += 1,
            }
        }
        row
    }

    /// Inserts a row; returns true when it enlarged the space.
    pub fn insert(&mut self, row: Vec<(usize, K)>) -> bool {
        let mut row = self.reduce_leading(row);
        if row.is_empty() {
            return false;
        }
        let inv = row[0].1.inverse();
        for e in row.iter_mut() {
            e.1 = e.1.clone() * inv.clone();
        }
        self.pivots.insert(row[0].0, row);
        true
    }

    pub fn contains(&self, row: Vec<(usize, K)>) -> bool {
        self.reduce(row).is_empty()
    }

    // Reduces only until the leading column is not a pivot.
    fn reduce_leading(&self, mut row: Vec<(usize, K)>) -> Vec<(usize, K)> {
        while let Some((lead, coef)) = row.first().cloned() {
            match self.pivots.get(&lead) {
                Some(p) => row = axpy(&row, &coef, p),
                None => break,
            }
        }
        row
    }
}

// row - coef * pivot, sparse merge
fn axpy<K: Field>(row: &[(usize, K)], coef: &K, pivot: &[(usize, K)]) -> Vec<(usize, K)> {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_piv = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        if take_row {
            out.push(row[i].clone());
            i += 1;
        } else if take_piv {
            out.push((pivot[j].0, -(coef.clone() * pivot[j].1.clone())));
            j += 1;
        } else {
            let v = row[i].1.clone() - coef.clone() * pivot[j].1.clone();
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}
