//! Exact dense linear algebra over the rationals or a prime field.
//!
//! Field arithmetic goes through a context object so the prime modulus can
//! be chosen at runtime. Matrices are small dense row-major arrays; every
//! computation is exact (no floating point anywhere).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub trait FieldCtx: Clone {
    type Elem: Clone + PartialEq + std::fmt::Debug + std::fmt::Display;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Self::Elem;
    fn embed_bigint(&self, a: &BigInt) -> Self::Elem;

    fn characteristic(&self) -> u64;

    /// Rescale a vector to a canonical representative of its line; over
    /// the rationals this clears denominators and common factors so
    /// resolution matrices keep small integer entries.
    fn normalize_primitive(&self, _v: &mut [Self::Elem]) {}
}

/// The field of rational numbers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rationals;

impl FieldCtx for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> BigRational {
        assert!(!a.is_zero(), "division by zero");
        a.recip()
    }
    fn embed_bigint(&self, a: &BigInt) -> BigRational {
        BigRational::from_integer(a.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn normalize_primitive(&self, v: &mut [BigRational]) {
        use num_integer::Integer;
        let mut denom_lcm = BigInt::one();
        for x in v.iter() {
            denom_lcm = denom_lcm.lcm(x.denom());
        }
        let mut content = BigInt::zero();
        let scaled: Vec<BigInt> = v
            .iter()
            .map(|x| (x * &denom_lcm).to_integer())
            .collect();
        for x in &scaled {
            content = content.gcd(x);
        }
        if content.is_zero() {
            return;
        }
        let leading = scaled.iter().find(|x| !x.is_zero()).cloned().unwrap();
        let sign = if leading.is_negative() {
            -BigInt::one()
        } else {
            BigInt::one()
        };
        let scale = content * sign;
        for (slot, x) in v.iter_mut().zip(scaled) {
            *slot = BigRational::from_integer(x / &scale);
        }
    }
}

/// The prime field `F_p` with elements reduced to `0..p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{} is not prime", p);
        PrimeField { p }
    }

    fn pow(&self, base: u64, mut exp: u64) -> u64 {
        let mut acc: u128 = 1;
        let mut b = base as u128 % self.p as u128;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * b % self.p as u128;
            }
            b = b * b % self.p as u128;
            exp >>= 1;
        }
        acc as u64
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldCtx for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> u64 {
        assert!(*a != 0, "division by zero");
        self.pow(*a, self.p - 2)
    }
    fn embed_bigint(&self, a: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let mut r = a % &p;
        if r.is_negative() {
            r += &p;
        }
        let digits = r.to_u64_digits().1;
        if digits.is_empty() {
            0
        } else {
            digits[0]
        }
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

/// Dense matrix over a runtime field context.
#[derive(Clone, Debug)]
pub struct Mat<F: FieldCtx> {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<F::Elem>,
}

impl<F: FieldCtx> Mat<F> {
    pub fn zeros(f: &F, rows: usize, cols: usize) -> Self {
        Mat {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn at(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    /// Row-reduce in place; returns the pivot column of each pivot row.
    /// Pivots are chosen as the first nonzero column left to right, so the
    /// reduced form (and everything derived from it) is deterministic.
    pub fn rref(&mut self, f: &F) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in row..self.rows {
                if !f.is_zero(self.at(r, col)) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != row {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, row * self.cols + c);
                }
            }
            let inv = f.inv(self.at(row, col));
            for c in col..self.cols {
                let v = f.mul(self.at(row, c), &inv);
                self.set(row, c, v);
            }
            for r in 0..self.rows {
                if r != row && !f.is_zero(self.at(r, col)) {
                    let factor = self.at(r, col).clone();
                    for c in col..self.cols {
                        let v = f.sub(self.at(r, c), &f.mul(&factor, self.at(row, c)));
                        self.set(r, c, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self, f: &F) -> usize {
        let mut m = self.clone();
        m.rref(f).len()
    }

    /// One solution of `self * x = target`, or None when inconsistent.
    pub fn solve(&self, f: &F, target: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(target.len(), self.rows);
        let mut aug = Mat::zeros(f, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.at(r, c).clone());
            }
            aug.set(r, self.cols, target[r].clone());
        }
        let pivots = aug.rref(f);
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, col) in pivots.iter().enumerate() {
            x[*col] = aug.at(row, self.cols).clone();
        }
        Some(x)
    }

    /// Basis of the right kernel, one vector per free column, in column
    /// order. Deterministic given the matrix.
    pub fn kernel_basis(&self, f: &F) -> Vec<Vec<F::Elem>> {
        let mut m = self.clone();
        let pivots = m.rref(f);
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (prow, pcol) in pivots.iter().enumerate() {
                v[*pcol] = f.neg(m.at(prow, free));
            }
            basis.push(v);
        }
        basis
    }
}

/// Incremental row space with reduction, used to take quotients by a
/// subspace and to extract independent representatives deterministically.
///
/// Rows are kept in insertion order; each stored row vanishes at the
/// pivot columns of all rows inserted before it, so reduction and
/// coordinate extraction are single passes in insertion order. Stored
/// rows are never mutated after insertion.
pub struct RowSpace<F: FieldCtx> {
    f: F,
    cols: usize,
    rows: Vec<(usize, Vec<F::Elem>)>,
}

impl<F: FieldCtx> RowSpace<F> {
    pub fn new(f: &F, cols: usize) -> Self {
        RowSpace {
            f: f.clone(),
            cols,
            rows: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current space; the result is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: Vec<F::Elem>) -> Vec<F::Elem> {
        let f = &self.f;
        for (pivot, row) in &self.rows {
            if !f.is_zero(&v[*pivot]) {
                let factor = v[*pivot].clone();
                for c in 0..self.cols {
                    v[c] = f.sub(&v[c], &f.mul(&factor, &row[c]));
                }
            }
        }
        v
    }

    /// Insert `v` if independent; returns the normalized reduced vector
    /// (leading coefficient one) when the dimension grew.
    pub fn insert(&mut self, v: Vec<F::Elem>) -> Option<Vec<F::Elem>> {
        let f = self.f.clone();
        let mut v = self.reduce(v);
        let pivot = (0..self.cols).find(|&c| !f.is_zero(&v[c]))?;
        let inv = f.inv(&v[pivot]);
        for c in 0..self.cols {
            v[c] = f.mul(&v[c], &inv);
        }
        self.rows.push((pivot, v.clone()));
        Some(v)
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        let r = self.reduce(v.to_vec());
        r.iter().all(|x| self.f.is_zero(x))
    }

    /// Coordinates of `v` over the stored rows in insertion order, or
    /// None when `v` is outside the span. Valid because later rows vanish
    /// at earlier pivots.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        let f = &self.f;
        let mut v = v.to_vec();
        let mut coords = vec![f.zero(); self.rows.len()];
        for (idx, (pivot, row)) in self.rows.iter().enumerate() {
            if !f.is_zero(&v[*pivot]) {
                let factor = v[*pivot].clone();
                for c in 0..self.cols {
                    v[c] = f.sub(&v[c], &f.mul(&factor, &row[c]));
                }
                coords[idx] = factor;
            }
        }
        if v.iter().all(|x| f.is_zero(x)) {
            Some(coords)
        } else {
            None
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rref_rank_kernel_over_q() {
        let f = Rationals;
        let mut m = Mat::zeros(&f, 2, 3);
        // [[1,2,3],[2,4,6]] has rank 1, kernel dim 2
        for (c, v) in [1, 2, 3].iter().enumerate() {
            m.set(0, c, BigRational::from_integer(BigInt::from(*v)));
        }
        for (c, v) in [2, 4, 6].iter().enumerate() {
            m.set(1, c, BigRational::from_integer(BigInt::from(*v)));
        }
        assert_eq!(m.rank(&f), 1);
        assert_eq!(m.kernel_basis(&f).len(), 2);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let f = Rationals;
        let entries: [[i64; 4]; 3] = [[1, 0, 2, -1], [0, 1, 1, 1], [1, 1, 3, 0]];
        let mut m = Mat::zeros(&f, 3, 4);
        for r in 0..3 {
            for c in 0..4 {
                m.set(r, c, BigRational::from_integer(BigInt::from(entries[r][c])));
            }
        }
        let ker = m.kernel_basis(&f);
        assert_eq!(ker.len(), 4 - m.rank(&f));
        for v in &ker {
            for r in 0..3 {
                let dot: BigRational = (0..4)
                    .map(|c| BigRational::from_integer(BigInt::from(entries[r][c])) * &v[c])
                    .fold(BigRational::zero(), |a, b| a + b);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7);
        assert_eq!(f.add(&5, &4), 2);
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), 5);
        assert_eq!(f.neg(&2), 5);
        assert_eq!(f.embed_bigint(&BigInt::from(-1)), 6);
        assert!(is_prime(2) && is_prime(13) && !is_prime(1) && !is_prime(9));
    }

    #[test]
    fn rowspace_quotient() {
        let f = PrimeField::new(5);
        let mut space = RowSpace::new(&f, 3);
        assert!(space.insert(vec![1, 2, 0]).is_some());
        assert!(space.insert(vec![2, 4, 0]).is_none());
        assert!(space.insert(vec![0, 0, 3]).is_some());
        assert_eq!(space.dim(), 2);
        // span = { (a, 2a, b) }
        assert!(!space.contains(&[1, 1, 0]));
        assert!(space.contains(&[1, 2, 3]));
        assert!(space.contains(&[3, 1, 2]));
    }
}
