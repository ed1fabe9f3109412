//! Small dense integer matrices with exact characteristic polynomials.
//!
//! Every matrix in this crate is at most a dozen rows wide, so a flat
//! row-major `Vec<i64>` is plenty. Anything that can grow (characteristic
//! polynomial coefficients, traces of inverses) is carried in `i128`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix { n, data: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    /// The all-ones matrix with a zero diagonal.
    pub fn ones_off_diagonal(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    m[(i, j)] = 1;
                }
            }
        }
        m
    }

    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(IntMatrix { n, data: rows.concat() })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self[(i, i)]).sum()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self[(j, i)])
    }

    pub fn scale(&self, k: i64) -> Self {
        IntMatrix { n: self.n, data: self.data.iter().map(|x| x * k).collect() }
    }

    /// Entrywise (Hadamard) product.
    pub fn hadamard(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        IntMatrix {
            n: self.n,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a * b).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self[(i, j)] == self[(j, i)]))
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..=i).all(|j| self[(i, j)] == -self[(j, i)]))
    }

    /// Coefficients `c[0..=n]` of `det(λI − A)`, lowest degree first.
    ///
    /// Faddeev–LeVerrier recursion; every division is exact over the integers.
    pub fn charpoly(&self) -> Vec<i128> {
        let n = self.n;
        let a: Vec<i128> = self.data.iter().map(|&x| x as i128).collect();
        let mut c = vec![0i128; n + 1];
        c[n] = 1;
        let mut m = vec![0i128; n * n];
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let mut next = vec![0i128; n * n];
            for i in 0..n {
                for j in 0..n {
                    let mut s = 0i128;
                    for l in 0..n {
                        s += a[i * n + l] * m[l * n + j];
                    }
                    next[i * n + j] = s;
                }
                next[i * n + i] += c[n - k + 1];
            }
            m = next;
            let mut tr = 0i128;
            for i in 0..n {
                for l in 0..n {
                    tr += a[i * n + l] * m[l * n + i];
                }
            }
            debug_assert_eq!(tr % k as i128, 0);
            c[n - k] = -tr / k as i128;
        }
        c
    }

    pub fn det(&self) -> i128 {
        let c = self.charpoly();
        if self.n % 2 == 0 {
            c[0]
        } else {
            -c[0]
        }
    }

    /// `tr(A⁻¹)`, or `None` when `A` is singular.
    pub fn trace_of_inverse(&self) -> Option<Rational> {
        let c = self.charpoly();
        if c[0] == 0 {
            return None;
        }
        Some(Rational::new(-c.get(1).copied().unwrap_or(0), c[0]))
    }

    /// Sum of `1/λ` over the nonzero eigenvalues, with multiplicity.
    ///
    /// The characteristic polynomial is factored as `λ^m q(λ)` with
    /// `q(0) ≠ 0`; the sum is `−q₁/q₀`. The zero matrix yields zero.
    pub fn trace_of_pseudo_inverse(&self) -> Rational {
        let c = self.charpoly();
        let m = c.iter().position(|&x| x != 0).unwrap_or(self.n);
        if m >= self.n {
            return Rational::from_integer(0);
        }
        Rational::new(-c[m + 1], c[m])
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.n);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Deletes row and column `k`.
    pub fn minor(&self, k: usize) -> Self {
        let idx: Vec<usize> = (0..self.n).filter(|&i| i != k).collect();
        Self::from_fn(self.n - 1, |i, j| self[(idx[i], idx[j])])
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = i64;
    fn index(&self, (i, j): (usize, usize)) -> &i64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut i64 {
        &mut self.data[i * self.n + j]
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = IntMatrix::zeros(n);
        for i in 0..n {
            for l in 0..n {
                let a = self.data[i * n + l];
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * rhs.data[l * n + j];
                }
            }
        }
        out
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn add(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        IntMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect() }
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;
    fn sub(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.n, rhs.n);
        IntMatrix { n: self.n, data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect() }
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;
    fn neg(self) -> IntMatrix {
        self.scale(-1)
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f)?;
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(|x| format!("{x:>3}")).collect();
            writeln!(f, "[{}]", row.join(" "))?;
        }
        Ok(())
    }
}
