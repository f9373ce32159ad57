//! Exact rational row reduction and span membership.

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use num::{BigInt, BigRational, One, Zero};

pub type Q = BigRational;

pub fn q(x: i64) -> Q {
    Q::from_integer(BigInt::from(x))
}

/// Reduced row echelon form of a dense matrix; zero rows are dropped.
#[derive(Clone, Debug)]
pub struct Rref {
    pub rows: Vec<Vec<Q>>,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn new(mut rows: Vec<Vec<Q>>, cols: usize) -> Self {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
            rows.swap(r, p);
            let inv = rows[r][c].recip();
            for x in rows[r].iter_mut() {
                *x *= &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&pivot_row) {
                        if !y.is_zero() {
                            *x -= &f * y;
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        Rref { rows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

pub fn rank(rows: Vec<Vec<Q>>, cols: usize) -> usize {
    Rref::new(rows, cols).rank()
}

/// Whether two families of row vectors span the same space.
pub fn same_row_space(a: &[Vec<Q>], b: &[Vec<Q>], cols: usize) -> bool {
    let ra = Rref::new(a.to_vec(), cols);
    let rb = Rref::new(b.to_vec(), cols);
    ra.pivots == rb.pivots && ra.rows == rb.rows
}

/// Column positions for a set of sparse keys.
#[derive(Clone, Debug)]
pub struct KeyIndex<K: Hash + Eq + Clone> {
    pub keys: Vec<K>,
    pos: HashMap<K, usize>,
}

impl<K: Hash + Eq + Clone> KeyIndex<K> {
    pub fn new(keys: Vec<K>) -> Self {
        let pos = keys.iter().cloned().enumerate().map(|(i, k)| (k, i)).collect();
        KeyIndex { keys, pos }
    }

    pub fn get(&self, k: &K) -> Option<usize> {
        self.pos.get(k).copied()
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    /// Dense row from a sparse vector; None if a key is unknown.
    pub fn dense(&self, v: &BTreeMap<K, Q>) -> Option<Vec<Q>>
    where
        K: Ord,
    {
        let mut row = vec![Q::zero(); self.len()];
        for (k, x) in v {
            row[self.get(k)?] = x.clone();
        }
        Some(row)
    }
}

/// Expresses vectors in a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct SpanSolver<K: Hash + Eq + Clone + Ord> {
    index: KeyIndex<K>,
    dim: usize,
    /// Reduced rows: [basis part | combination coefficients].
    rref: Rref,
}

impl<K: Hash + Eq + Clone + Ord> SpanSolver<K> {
    /// Fails if the family is linearly dependent.
    pub fn new(basis: &[BTreeMap<K, Q>]) -> Option<Self> {
        let mut keys: Vec<K> = basis.iter().flat_map(|v| v.keys().cloned()).collect();
        keys.sort();
        keys.dedup();
        let index = KeyIndex::new(keys);
        let dim = basis.len();
        let width = index.len() + dim;
        let rows: Vec<Vec<Q>> = basis
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let mut row = index.dense(v).expect("keys collected from basis");
                row.resize(width, Q::zero());
                row[index.len() + i] = Q::one();
                row
            })
            .collect();
        let rref = Rref::new(rows, width);
        if rref.pivots.iter().filter(|&&p| p < index.len()).count() != dim {
            return None;
        }
        Some(SpanSolver { index, dim, rref })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Coefficients c with Σ c_i basis_i = v, or None if v is outside the span.
    pub fn solve(&self, v: &BTreeMap<K, Q>) -> Option<Vec<Q>> {
        let cols = self.index.len();
        let mut residue = vec![Q::zero(); cols];
        for (k, x) in v {
            match self.index.get(k) {
                Some(i) => residue[i] = x.clone(),
                None if x.is_zero() => {}
                None => return None,
            }
        }
        let mut coeffs = vec![Q::zero(); self.dim];
        for (row, &p) in self.rref.rows.iter().zip(&self.rref.pivots) {
            if p >= cols || residue[p].is_zero() {
                continue;
            }
            let f = residue[p].clone();
            for (x, y) in residue.iter_mut().zip(&row[..cols]) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (c, y) in coeffs.iter_mut().zip(&row[cols..]) {
                if !y.is_zero() {
                    *c += &f * y;
                }
            }
        }
        residue.iter().all(Zero::is_zero).then_some(coeffs)
    }
}

/// Integer value of an exact rational, if integral.
pub fn to_integer(x: &Q) -> Option<BigInt> {
    x.is_integer().then(|| x.to_integer())
}

/// Dense integer matrix product.
pub fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| (0..inner).fold(BigInt::zero(), |acc, t| acc + &row[t] * &b[t][j]))
                .collect()
        })
        .collect()
}

pub fn identity(d: usize) -> Vec<Vec<BigInt>> {
    (0..d)
        .map(|i| (0..d).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

pub fn trace(a: &[Vec<BigInt>]) -> BigInt {
    a.iter().enumerate().fold(BigInt::zero(), |acc, (i, r)| acc + &r[i])
}
