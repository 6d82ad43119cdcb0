//! Exact linear algebra over the rationals: fraction-free rank, kernel
//! bases via rational row reduction, and an incremental span for closure
//! computations. Matrices are dense row-major `Vec<Vec<Rat>>`; the
//! dimensions in play are small (graded pieces at low truncation).

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rat::{denominator_lcm, Rat};

/// Rank via Bareiss fraction-free elimination on a denominator-cleared
/// integer copy of the matrix.
pub fn rank(rows: &[Vec<Rat>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let ncols = rows[0].len();
    // clear denominators row by row; row scaling does not change rank
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "ragged matrix");
            let l = denominator_lcm(r);
            // BigRational keeps denom > 0, so x * l = numer * (l / denom)
            r.iter().map(|x| x.numer() * (&l / x.denom())).collect()
        })
        .collect();
    let nrows = m.len();
    let mut rank = 0usize;
    let mut prev = BigInt::one();
    let mut row = 0usize;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        for r in row + 1..nrows {
            for c in col + 1..ncols {
                let t = &m[row][col] * &m[r][c] - &m[r][col] * &m[row][c];
                m[r][c] = &t / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[row][col].clone();
        row += 1;
        rank += 1;
    }
    rank
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    if nrows == 0 {
        return vec![];
    }
    let ncols = rows[0].len();
    let mut pivots = Vec::new();
    let mut row = 0usize;
    for col in 0..ncols {
        if row >= nrows {
            break;
        }
        let Some(p) = (row..nrows).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, p);
        let inv = rows[row][col].recip();
        for c in col..ncols {
            let v = &rows[row][c] * &inv;
            rows[row][c] = v;
        }
        for r in 0..nrows {
            if r != row && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                for c in col..ncols {
                    let v = &rows[r][c] - &f * &rows[row][c];
                    rows[r][c] = v;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    pivots
}

/// Basis of the right kernel {x : M x = 0}, one vector per free column, in
/// ascending free-column order. Each basis vector has a 1 in its free
/// column.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    for r in &m {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let pivots = rref(&mut m);
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            v[pc] = -m[ri][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Growing row space with exact membership tests, kept in reduced echelon
/// form with a pivot-column map.
#[derive(Clone, Debug, Default)]
pub struct Span {
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl Span {
    pub fn new() -> Self {
        Span::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce v against the span; returns the residue.
    fn reduce(&self, mut v: Vec<Rat>) -> Vec<Rat> {
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone();
                for (c, rv) in row.iter().enumerate() {
                    if !rv.is_zero() {
                        let t = &v[c] - &f * rv;
                        v[c] = t;
                    }
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v.to_vec()).iter().all(|x| x.is_zero())
    }

    /// Add v to the span; true if the dimension grew.
    pub fn add(&mut self, v: &[Rat]) -> bool {
        let mut r = self.reduce(v.to_vec());
        let Some(pc) = r.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r[pc].recip();
        for x in r.iter_mut() {
            *x *= &inv;
        }
        // keep existing rows reduced against the new pivot
        for row in &mut self.rows {
            if !row[pc].is_zero() {
                let f = row[pc].clone();
                for (c, rv) in r.iter().enumerate() {
                    if !rv.is_zero() {
                        let t = &row[c] - &f * rv;
                        row[c] = t;
                    }
                }
            }
        }
        // insert keeping pivot columns ascending
        let at = self.pivots.partition_point(|&q| q < pc);
        self.pivots.insert(at, pc);
        self.rows.insert(at, r);
        true
    }
}
