//! Dense square complex matrices with just enough linear algebra for the
//! crate: products, adjoints, LU determinants, and a power iteration.

use crate::{cpoly, lit, Error, Real, Result, C};

/// Dense square complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix<T: Real> {
    n: usize,
    a: Vec<C<T>>,
}

impl<T: Real> ComplexMatrix<T> {
    pub fn zeros(n: usize) -> Self {
        ComplexMatrix {
            n,
            a: vec![C::new(T::zero(), T::zero()); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, C::new(T::one(), T::zero()));
        }
        m
    }

    /// Build from row-major entry rows; every row must have length `n`.
    pub fn from_rows(rows: &[Vec<C<T>>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> C<T> {
        self.a[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: C<T>) {
        self.a[i * self.n + j] = v;
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let aik = self.get(i, k);
                if aik.norm() == T::zero() {
                    continue;
                }
                for j in 0..n {
                    out.set(i, j, out.get(i, j) + aik * other.get(k, j));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = *x + *y;
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n, "dimension mismatch");
        let mut out = self.clone();
        for (x, y) in out.a.iter_mut().zip(other.a.iter()) {
            *x = *x - *y;
        }
        out
    }

    pub fn scale(&self, c: C<T>) -> Self {
        let mut out = self.clone();
        for x in out.a.iter_mut() {
            *x = *x * c;
        }
        out
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out.set(j, i, self.get(i, j).conj());
            }
        }
        out
    }

    /// Principal `k x k` block.
    pub fn principal_block(&self, k: usize) -> Self {
        assert!(k <= self.n);
        let mut out = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                out.set(i, j, self.get(i, j));
            }
        }
        out
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> T {
        self.a
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    pub fn frobenius(&self) -> T {
        self.a
            .iter()
            .map(|c| c.norm_sqr())
            .fold(T::zero(), |a, b| a + b)
            .sqrt()
    }

    pub fn matvec(&self, x: &[C<T>]) -> Vec<C<T>> {
        assert_eq!(x.len(), self.n);
        (0..self.n)
            .map(|i| {
                let mut s = C::new(T::zero(), T::zero());
                for (j, &xj) in x.iter().enumerate() {
                    s = s + self.get(i, j) * xj;
                }
                s
            })
            .collect()
    }

    /// Determinant via LU with partial pivoting.
    pub fn det(&self) -> C<T> {
        let n = self.n;
        let mut a = self.a.clone();
        let mut det = C::new(T::one(), T::zero());
        for col in 0..n {
            let mut piv = col;
            let mut best = a[col * n + col].norm();
            for r in col + 1..n {
                let v = a[r * n + col].norm();
                if v > best {
                    best = v;
                    piv = r;
                }
            }
            if best == T::zero() {
                return C::new(T::zero(), T::zero());
            }
            if piv != col {
                for j in 0..n {
                    a.swap(col * n + j, piv * n + j);
                }
                det = -det;
            }
            let d = a[col * n + col];
            det = det * d;
            for r in col + 1..n {
                let factor = a[r * n + col] / d;
                if factor.norm() == T::zero() {
                    continue;
                }
                for j in col..n {
                    let v = a[col * n + j];
                    a[r * n + j] = a[r * n + j] - factor * v;
                }
            }
        }
        det
    }

    /// Monic characteristic polynomial `det(zI - M)`, recovered by LU
    /// determinant evaluations at `n + 1` equispaced nodes on the circle of
    /// radius 2 followed by interpolation. The radius keeps the nodes away
    /// from any spectrum contained in the closed unit disk.
    pub fn char_poly(&self) -> Result<cpoly::ComplexPoly<T>> {
        let n = self.n;
        if n == 0 {
            return Ok(cpoly::ComplexPoly::one());
        }
        let two = lit::<T>(2.0);
        let pts: Vec<(C<T>, C<T>)> = (0..=n)
            .map(|j| {
                let z = C::from_polar(two, T::TAU() * lit::<T>(j as f64) / lit::<T>((n + 1) as f64));
                let mut m = ComplexMatrix::identity(n).scale(z);
                m = m.sub(self);
                (z, m.det())
            })
            .collect();
        let p = cpoly::interpolate(&pts, n)?;
        // The interpolant of a monic polynomial is monic up to roundoff;
        // renormalize so downstream code can rely on it exactly.
        let lead = p.coeff(n);
        if lead.norm() < lit::<T>(0.5) {
            return Err(Error::Numerical(
                "characteristic polynomial lost its leading coefficient".into(),
            ));
        }
        Ok(p.scale(lead.inv()))
    }
}
