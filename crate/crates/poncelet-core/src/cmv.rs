//! Cut-off CMV matrices, unitary rank-one dilations, characteristic
//! polynomials, and contraction-class diagnostics (defect rank, norm).

use crate::cpoly::ComplexPoly;
use crate::matrix::ComplexMatrix;
use crate::opuc::VerblunskySeq;
use crate::{lit, numrange, Error, Real, Result, C};

/// The 2x2 block `[[conj(a), rho], [rho, -a]]` with `rho = sqrt(1-|a|^2)`.
pub fn theta_block<T: Real>(alpha: C<T>) -> Result<ComplexMatrix<T>> {
    if alpha.norm() > T::one() + lit::<T>(1e-12) {
        return Err(Error::InvalidInput(format!(
            "block parameter has modulus {} > 1",
            alpha.norm()
        )));
    }
    let rho = (T::one() - alpha.norm_sqr()).max(T::zero()).sqrt();
    let rho = C::new(rho, T::zero());
    let mut m = ComplexMatrix::zeros(2);
    m.set(0, 0, alpha.conj());
    m.set(0, 1, rho);
    m.set(1, 0, rho);
    m.set(1, 1, -alpha);
    Ok(m)
}

/// Principal `n x n` block of the CMV matrix attached to the coefficient
/// sequence.
///
/// The even/odd block factors `L = Theta_0 ⊕ Theta_2 ⊕ ...` and
/// `M = 1 ⊕ Theta_1 ⊕ Theta_3 ⊕ ...` are assembled as `(n+2) x (n+2)`
/// truncations (padding the sequence with zeros; the padded entries never
/// reach the principal block), multiplied, and cut down to `n x n`. This
/// sidesteps transcribing the five-diagonal entry pattern by hand and is
/// correct for both parities of `n`.
pub fn cutoff_cmv<T: Real>(alpha: &VerblunskySeq<T>) -> Result<ComplexMatrix<T>> {
    let n = alpha.len();
    if n == 0 {
        return Err(Error::InvalidInput("empty coefficient sequence".into()));
    }
    let big = n + 2;
    let a = |k: usize| -> C<T> {
        alpha
            .alphas()
            .get(k)
            .copied()
            .unwrap_or_else(|| C::new(T::zero(), T::zero()))
    };
    let place_block = |m: &mut ComplexMatrix<T>, top: usize, alpha_k: C<T>| -> Result<()> {
        let blk = theta_block(alpha_k)?;
        for i in 0..2 {
            for j in 0..2 {
                if top + i < big && top + j < big {
                    m.set(top + i, top + j, blk.get(i, j));
                }
            }
        }
        Ok(())
    };
    let mut l = ComplexMatrix::zeros(big);
    let mut k = 0;
    while k < big {
        place_block(&mut l, k, a(k))?;
        k += 2;
    }
    let mut m = ComplexMatrix::zeros(big);
    m.set(0, 0, C::new(T::one(), T::zero()));
    let mut k = 1;
    while k < big {
        place_block(&mut m, k, a(k))?;
        k += 2;
    }
    Ok(l.mul(&m).principal_block(n))
}

/// Unitary rank-one dilation: the cut-off CMV matrix of the sequence
/// extended by a terminal unimodular coefficient.
pub fn unitary_dilation<T: Real>(
    alpha: &VerblunskySeq<T>,
    lambda: C<T>,
    tol: T,
) -> Result<ComplexMatrix<T>> {
    let ext = alpha.extended(lambda, tol)?;
    cutoff_cmv(&ext)
}

/// Unitary dilation for an empty coefficient sequence (dimension 1).
pub fn unitary_dilation_degree_one<T: Real>(lambda: C<T>, tol: T) -> Result<ComplexMatrix<T>> {
    let empty = VerblunskySeq::new(vec![])?;
    unitary_dilation(&empty, lambda, tol)
}

/// Monic characteristic polynomial `det(zI - M)`.
pub fn char_poly<T: Real>(m: &ComplexMatrix<T>) -> Result<ComplexPoly<T>> {
    m.char_poly()
}

/// Numerical rank of `I - M M*`, with singular values below `tol * n`
/// counted as zero. Together with a spectrum-inside-the-disk check this is
/// the membership test for the completely non-unitary defect-one class.
pub fn defect_rank<T: Real>(m: &ComplexMatrix<T>) -> Result<usize> {
    let n = m.dim();
    let id = ComplexMatrix::identity(n);
    let h = id.sub(&m.mul(&m.adjoint()));
    // Hermitian and positive semidefinite for a contraction, so its
    // eigenvalues are its singular values.
    let (eigs, _) = numrange::hermitian_eigs(&h)?;
    let thr = lit::<T>(1e-8) * lit::<T>(n as f64);
    Ok(eigs.iter().filter(|e| e.abs() > thr).count())
}

/// Largest singular value via power iteration on `M* M`.
pub fn operator_norm<T: Real>(m: &ComplexMatrix<T>) -> Result<T> {
    let n = m.dim();
    if n == 0 {
        return Ok(T::zero());
    }
    let gram = m.adjoint().mul(m);
    // Deterministic start with unequal entries so it is never orthogonal to
    // the top eigenspace by symmetry.
    let mut v: Vec<C<T>> = (0..n)
        .map(|i| {
            C::new(
                T::one() + lit::<T>(0.017 * (i as f64 + 1.0)),
                lit::<T>(0.003 * (i * i) as f64),
            )
        })
        .collect();
    normalize(&mut v);
    let mut prev = T::zero();
    for _ in 0..20_000 {
        let mut w = gram.matvec(&v);
        let rayleigh = dot(&v, &w).re;
        normalize(&mut w);
        v = w;
        if (rayleigh - prev).abs() <= lit::<T>(1e-10) * (T::one() + rayleigh.abs()) {
            return Ok(rayleigh.max(T::zero()).sqrt());
        }
        prev = rayleigh;
    }
    Err(Error::NoConvergence(
        "power iteration did not settle".into(),
    ))
}

fn dot<T: Real>(a: &[C<T>], b: &[C<T>]) -> C<T> {
    let mut s = C::new(T::zero(), T::zero());
    for (x, y) in a.iter().zip(b) {
        s = s + x.conj() * *y;
    }
    s
}

fn normalize<T: Real>(v: &mut [C<T>]) {
    let norm = v
        .iter()
        .map(|c| c.norm_sqr())
        .fold(T::zero(), |a, b| a + b)
        .sqrt();
    if norm > T::zero() {
        for x in v.iter_mut() {
            *x = *x / norm;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{C64, DEFAULT_TOL, Matrix64};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn seq(alphas: Vec<C64>) -> VerblunskySeq<f64> {
        VerblunskySeq::new(alphas).unwrap()
    }

    #[test]
    fn theta_block_free() {
        let b = theta_block(c(0.0, 0.0)).unwrap();
        assert_eq!(b.get(0, 0), c(0.0, 0.0));
        assert_eq!(b.get(0, 1), c(1.0, 0.0));
        assert_eq!(b.get(1, 0), c(1.0, 0.0));
        assert_eq!(b.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn theta_block_unimodular() {
        let b = theta_block(c(1.0, 0.0)).unwrap();
        assert_eq!(b.get(0, 0), c(1.0, 0.0));
        assert_eq!(b.get(0, 1), c(0.0, 0.0));
        assert_eq!(b.get(1, 1), c(-1.0, 0.0));
    }

    #[test]
    fn theta_block_three_four_five() {
        let b = theta_block(c(0.6, 0.0)).unwrap();
        assert!((b.get(0, 1) - c(0.8, 0.0)).norm() < 1e-15);
        assert!((b.get(1, 1) + c(0.6, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn cutoff_free_two_by_two() {
        let g = cutoff_cmv(&seq(vec![c(0.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert_eq!(g.get(0, 0), c(0.0, 0.0));
        assert_eq!(g.get(0, 1), c(0.0, 0.0));
        assert_eq!(g.get(1, 0), c(1.0, 0.0));
        assert_eq!(g.get(1, 1), c(0.0, 0.0));
    }

    #[test]
    fn cutoff_char_poly_shifted_power() {
        let a = 0.5;
        let g = cutoff_cmv(&seq(vec![c(a, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]))
            .unwrap();
        let p = char_poly(&g).unwrap();
        // z^4 - 0.5 z^3
        assert!((p.coeff(3) + c(a, 0.0)).norm() < 1e-9);
        for j in 0..3 {
            assert!(p.coeff(j).norm() < 1e-9);
        }
    }

    #[test]
    fn two_by_two_dilation_matches_closed_form() {
        let f = c(0.3, -0.4);
        let lambda = C64::from_polar(1.0, 0.7);
        let g = cutoff_cmv(&seq(vec![f.conj(), lambda])).unwrap();
        let rho = (1.0 - f.norm_sqr()).sqrt();
        assert!((g.get(0, 0) - f).norm() < 1e-15);
        assert!((g.get(0, 1) - lambda.conj() * rho).norm() < 1e-15);
        assert!((g.get(1, 0) - c(rho, 0.0)).norm() < 1e-15);
        assert!((g.get(1, 1) + lambda.conj() * f.conj()).norm() < 1e-15);
    }

    #[test]
    fn dilation_is_unitary() {
        let alphas = seq(vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.0, -0.5)]);
        let u = unitary_dilation(&alphas, C64::from_polar(1.0, 1.1), DEFAULT_TOL).unwrap();
        let delta = u.adjoint().mul(&u).sub(&Matrix64::identity(4));
        assert!(delta.max_abs() < 1e-10);
    }

    #[test]
    fn dilation_free_case_eigenvalues() {
        let u = unitary_dilation(&seq(vec![c(0.0, 0.0)]), c(1.0, 0.0), DEFAULT_TOL).unwrap();
        let p = char_poly(&u).unwrap();
        // popuc(z, 1) = z^2 - 1
        assert!((p.coeff(0) + c(1.0, 0.0)).norm() < 1e-10);
        assert!(p.coeff(1).norm() < 1e-10);
    }

    #[test]
    fn dilation_dimension_one() {
        let u = unitary_dilation_degree_one(c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!(u.dim(), 1);
        assert!((u.get(0, 0) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn char_poly_identity_round_trip() {
        let foci = [c(0.4, 0.2), c(-0.3, 0.3), c(0.1, -0.6)];
        let phi = crate::cpoly::ComplexPoly::from_roots(&foci);
        let alphas = crate::opuc::verblunsky_from_poly(&phi, DEFAULT_TOL).unwrap();
        let g = cutoff_cmv(&alphas).unwrap();
        let p = char_poly(&g).unwrap();
        for j in 0..=3 {
            assert!(
                (p.coeff(j) - phi.coeff(j)).norm() < 1e-9,
                "coefficient {} mismatch",
                j
            );
        }
    }

    #[test]
    fn defect_rank_of_unitary_is_zero() {
        let u = unitary_dilation(&seq(vec![c(0.2, 0.3)]), c(0.0, 1.0), DEFAULT_TOL).unwrap();
        assert_eq!(defect_rank(&u).unwrap(), 0);
    }

    #[test]
    fn defect_rank_of_cutoff_is_one() {
        let g = cutoff_cmv(&seq(vec![c(0.3, 0.1), c(-0.2, 0.4), c(0.1, -0.5)])).unwrap();
        assert_eq!(defect_rank(&g).unwrap(), 1);
    }

    #[test]
    fn defect_rank_of_jordan_block_is_one() {
        let mut j3 = Matrix64::zeros(3);
        j3.set(1, 0, c(1.0, 0.0));
        j3.set(2, 1, c(1.0, 0.0));
        assert_eq!(defect_rank(&j3).unwrap(), 1);
    }

    #[test]
    fn operator_norm_identity_and_diagonal() {
        assert!((operator_norm(&Matrix64::identity(3)).unwrap() - 1.0).abs() < 1e-9);
        let mut d = Matrix64::zeros(2);
        d.set(0, 0, c(0.5, 0.0));
        d.set(1, 1, c(0.2, 0.0));
        assert!((operator_norm(&d).unwrap() - 0.5).abs() < 1e-9);
    }

    #[test]
    fn operator_norm_of_cutoff_is_one() {
        let g = cutoff_cmv(&seq(vec![c(0.5, 0.2), c(-0.1, 0.3), c(0.2, -0.4), c(0.0, 0.6)]))
            .unwrap();
        assert!((operator_norm(&g).unwrap() - 1.0).abs() < 1e-8);
    }
}
