//! Dense LU factorization with partial pivoting and the triangular solves
//! behind `x = A \ b`.
//!
//! Matrices are square and row-major. The trailing update of each
//! elimination step can be split across workers by rows; every entry is
//! still produced by the same single expression and the pivot search is a
//! serial scan, so the factors are bitwise identical for every backend.

use rayon::prelude::*;

use crate::backend::Executor;
use crate::error::{try_zeroed, Error, Result};
use crate::real::Real;

/// Below this many trailing entries an elimination step runs inline.
const PAR_THRESHOLD: usize = 1 << 14;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn zeros(n: usize) -> Result<Self> {
        Ok(Matrix {
            n,
            data: try_zeroed(n * n)?,
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n)?;
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        Ok(m)
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for r in rows {
            if r.len() != n {
                return Err(Error::ShapeMismatch {
                    expected: n,
                    found: r.len(),
                });
            }
            data.extend_from_slice(r);
        }
        Ok(Matrix { n, data })
    }

    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: n * n,
                found: data.len(),
            });
        }
        Ok(Matrix { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.n + j] = v;
    }

    pub fn mul_vec(&self, x: &[T]) -> Vec<T> {
        self.data
            .chunks_exact(self.n)
            .map(|row| row.iter().zip(x).fold(T::zero(), |acc, (&a, &b)| acc + a * b))
            .collect()
    }

    /// Max row sum of absolute values.
    pub fn norm_inf(&self) -> T {
        self.data
            .chunks_exact(self.n.max(1))
            .map(|row| row.iter().fold(T::zero(), |acc, v| acc + v.abs()))
            .fold(T::zero(), T::max)
    }
}

/// Compact `P A = L U`: unit-lower `L` below the diagonal, `U` on and above.
/// `perm[i]` is the row of `A` that ended up in row `i`.
#[derive(Debug, Clone, PartialEq)]
pub struct LuFactorization<T> {
    n: usize,
    lu: Vec<T>,
    perm: Vec<usize>,
}

impl<T: Real> LuFactorization<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn l(&self, i: usize, j: usize) -> T {
        match i.cmp(&j) {
            std::cmp::Ordering::Greater => self.lu[i * self.n + j],
            std::cmp::Ordering::Equal => T::one(),
            std::cmp::Ordering::Less => T::zero(),
        }
    }

    pub fn u(&self, i: usize, j: usize) -> T {
        if i <= j {
            self.lu[i * self.n + j]
        } else {
            T::zero()
        }
    }

    pub fn packed(&self) -> &[T] {
        &self.lu
    }
}

pub fn lu_factor<T: Real>(a: &Matrix<T>) -> Result<LuFactorization<T>> {
    lu_factor_with(a.clone(), &Executor::serial())
}

/// Factors `a` in place, parallelizing the trailing updates on `exec`.
pub fn lu_factor_with<T: Real>(a: Matrix<T>, exec: &Executor) -> Result<LuFactorization<T>> {
    let n = a.n;
    let mut lu = a.data;
    let mut perm: Vec<usize> = (0..n).collect();

    for k in 0..n {
        if lu[k * n + k..].iter().step_by(n).any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig(format!("non-finite entry in column {k}")));
        }
        let mut pivot = k;
        let mut best = lu[k * n + k].abs();
        for r in k + 1..n {
            let v = lu[r * n + k].abs();
            if v > best {
                best = v;
                pivot = r;
            }
        }
        if best == T::zero() {
            return Err(Error::SingularMatrix { column: k });
        }
        if pivot != k {
            let (top, bottom) = lu.split_at_mut(pivot * n);
            top[k * n..k * n + n].swap_with_slice(&mut bottom[..n]);
            perm.swap(k, pivot);
        }

        let (head, trailing) = lu.split_at_mut((k + 1) * n);
        let pivot_row = &head[k * n..];
        let diag = pivot_row[k];
        let eliminate = |row: &mut [T]| {
            let l = row[k] / diag;
            row[k] = l;
            for (dst, &p) in row[k + 1..].iter_mut().zip(&pivot_row[k + 1..]) {
                *dst = *dst - l * p;
            }
        };
        if exec.backend().is_serial() || (n - k - 1) * (n - k) < PAR_THRESHOLD {
            trailing.chunks_exact_mut(n).for_each(eliminate);
        } else {
            exec.install(|| trailing.par_chunks_exact_mut(n).for_each(eliminate));
        }
    }
    Ok(LuFactorization { n, lu, perm })
}

/// Forward then back substitution on the permuted right-hand side.
pub fn lu_solve<T: Real>(f: &LuFactorization<T>, b: &[T]) -> Result<Vec<T>> {
    let n = f.n;
    if b.len() != n {
        return Err(Error::ShapeMismatch {
            expected: n,
            found: b.len(),
        });
    }
    let mut x: Vec<T> = f.perm.iter().map(|&p| b[p]).collect();
    for i in 0..n {
        let row = &f.lu[i * n..i * n + i];
        let s = row.iter().zip(&x[..i]).fold(T::zero(), |acc, (&l, &y)| acc + l * y);
        x[i] = x[i] - s;
    }
    for i in (0..n).rev() {
        let row = &f.lu[i * n..(i + 1) * n];
        let s = row[i + 1..]
            .iter()
            .zip(&x[i + 1..])
            .fold(T::zero(), |acc, (&u, &y)| acc + u * y);
        x[i] = (x[i] - s) / row[i];
    }
    Ok(x)
}

/// `||A x - b||_inf / (||A||_inf ||x||_inf + ||b||_inf)`.
pub fn relative_residual<T: Real>(a: &Matrix<T>, x: &[T], b: &[T]) -> T {
    let ax = a.mul_vec(x);
    let inf = |v: &[T]| v.iter().fold(T::zero(), |m, e| m.max(e.abs()));
    let r = ax.iter().zip(b).fold(T::zero(), |m, (&p, &q)| m.max((p - q).abs()));
    let denom = a.norm_inf() * inf(x) + inf(b);
    if denom == T::zero() {
        r
    } else {
        r / denom
    }
}

/// `(2/3) n^3 + 2 n^2`: factorization plus the two triangular solves.
pub fn flop_count_left_division(n: usize) -> f64 {
    let n = n as f64;
    (2.0 / 3.0) * n * n * n + 2.0 * n * n
}
