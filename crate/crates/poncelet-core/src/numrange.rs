//! Numerical range machinery: support-function sampling of the boundary,
//! a cyclic Jacobi eigensolver for complex Hermitian matrices, pointwise
//! Kippenhahn-determinant evaluation, the 2x2 elliptical range case, and
//! half-plane intersection for the polygon-hull characterization.

use crate::ellipse::EllipseComponent;
use crate::matrix::ComplexMatrix;
use crate::{lit, Error, Real, Result, C};

/// One support sample of the boundary: direction angle, support value, and
/// the boundary point realizing it.
#[derive(Debug, Clone, Copy)]
pub struct SupportSample<T: Real> {
    pub phi: T,
    pub lambda_phi: T,
    pub boundary_point: C<T>,
}

/// Hermitian part in direction `phi`: `(e^{-i phi} A + e^{i phi} A*) / 2`.
pub fn hermitian_part<T: Real>(a: &ComplexMatrix<T>, phi: T) -> ComplexMatrix<T> {
    let w = C::from_polar(T::one(), -phi);
    let half = C::new(lit::<T>(0.5), T::zero());
    a.scale(w).add(&a.adjoint().scale(w.conj())).scale(half)
}

/// Eigen decomposition of a complex Hermitian matrix by cyclic Jacobi
/// rotations: eigenvalues ascending, orthonormal eigenvectors as the
/// columns of the returned matrix.
pub fn hermitian_eigs<T: Real>(h: &ComplexMatrix<T>) -> Result<(Vec<T>, ComplexMatrix<T>)> {
    let n = h.dim();
    let scale = h.frobenius().max(T::epsilon());
    let herm_defect = h.sub(&h.adjoint()).max_abs();
    if herm_defect > lit::<T>(1e-9) * scale {
        return Err(Error::InvalidInput(format!(
            "matrix is not Hermitian: defect {:e}",
            herm_defect.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let mut a = h.clone();
    // Symmetrize exactly so roundoff in the input cannot drift the sweep.
    for i in 0..n {
        let d = a.get(i, i);
        a.set(i, i, C::new(d.re, T::zero()));
        for j in 0..i {
            let m = (a.get(i, j) + a.get(j, i).conj()).scale(lit::<T>(0.5));
            a.set(i, j, m);
            a.set(j, i, m.conj());
        }
    }
    let mut v = ComplexMatrix::identity(n);
    let target = lit::<T>(1e-12) * scale;
    for _sweep in 0..64 {
        let mut off = T::zero();
        for p in 0..n {
            for q in p + 1..n {
                off = off + a.get(p, q).norm_sqr();
            }
        }
        if (off + off).sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let b = a.get(p, q);
                if b.norm() <= target / lit::<T>(n as f64) {
                    continue;
                }
                let app = a.get(p, p).re;
                let aqq = a.get(q, q).re;
                let phase = b / b.norm(); // e^{i phi}
                let tau = (aqq - app) / (lit::<T>(2.0) * b.norm());
                let t = if tau >= T::zero() {
                    (tau + (T::one() + tau * tau).sqrt()).recip()
                } else {
                    -((-tau + (T::one() + tau * tau).sqrt()).recip())
                };
                let cth = (T::one() + t * t).sqrt().recip();
                let sth = t * cth;
                // Unitary 2x2: columns (cth, -sth * conj(phase)) and
                // (sth, cth * conj(phase)).
                let s_lo = C::new(sth, T::zero()) * phase.conj();
                let c_lo = C::new(cth, T::zero()) * phase.conj();
                // Column update A <- A V.
                for i in 0..n {
                    let aip = a.get(i, p);
                    let aiq = a.get(i, q);
                    a.set(i, p, aip.scale(cth) - aiq * s_lo);
                    a.set(i, q, aip.scale(sth) + aiq * c_lo);
                }
                // Row update A <- V* A.
                for j in 0..n {
                    let apj = a.get(p, j);
                    let aqj = a.get(q, j);
                    a.set(p, j, apj.scale(cth) - aqj * s_lo.conj());
                    a.set(q, j, apj.scale(sth) + aqj * c_lo.conj());
                }
                // Accumulate eigenvectors W <- W V.
                for i in 0..n {
                    let vip = v.get(i, p);
                    let viq = v.get(i, q);
                    v.set(i, p, vip.scale(cth) - viq * s_lo);
                    v.set(i, q, vip.scale(sth) + viq * c_lo);
                }
                // Clean the annihilated pair.
                a.set(p, q, C::new(T::zero(), T::zero()));
                a.set(q, p, C::new(T::zero(), T::zero()));
            }
        }
    }
    let mut pairs: Vec<(T, usize)> = (0..n).map(|i| (a.get(i, i).re, i)).collect();
    pairs.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap());
    let eigs: Vec<T> = pairs.iter().map(|&(e, _)| e).collect();
    let mut vv = ComplexMatrix::zeros(n);
    for (new_col, &(_, old_col)) in pairs.iter().enumerate() {
        for i in 0..n {
            vv.set(i, new_col, v.get(i, old_col));
        }
    }
    Ok((eigs, vv))
}

/// Support value and boundary point of the numerical range in direction
/// `phi`: the top eigenvalue of the Hermitian part and `x* A x` for a top
/// eigenvector `x`. When the top eigenvalue is multiple (a flat edge) any
/// top eigenvector is acceptable.
pub fn support_point<T: Real>(a: &ComplexMatrix<T>, phi: T) -> Result<SupportSample<T>> {
    let n = a.dim();
    let h = hermitian_part(a, phi);
    let (eigs, vecs) = hermitian_eigs(&h)?;
    let lambda_phi = eigs[n - 1];
    let x: Vec<C<T>> = (0..n).map(|i| vecs.get(i, n - 1)).collect();
    let ax = a.matvec(&x);
    let mut bp = C::new(T::zero(), T::zero());
    for (xi, axi) in x.iter().zip(ax) {
        bp = bp + xi.conj() * axi;
    }
    Ok(SupportSample {
        phi,
        lambda_phi,
        boundary_point: bp,
    })
}

/// Uniform support sampling of the boundary, ccw in `phi`.
pub fn boundary<T: Real>(a: &ComplexMatrix<T>, samples: usize) -> Result<Vec<SupportSample<T>>> {
    if samples < 3 {
        return Err(Error::InvalidInput("need at least 3 samples".into()));
    }
    (0..samples)
        .map(|j| support_point(a, T::TAU() * lit::<T>(j as f64) / lit::<T>(samples as f64)))
        .collect()
}

/// `det(u1 Re A + u2 Im A - u3 I)`. With `(1, i, z)` this reduces to
/// `det(A - z I)`, whose zeros are the real foci / eigenvalues.
pub fn kippenhahn_eval<T: Real>(
    a: &ComplexMatrix<T>,
    u1: C<T>,
    u2: C<T>,
    u3: C<T>,
) -> C<T> {
    let n = a.dim();
    let half = C::new(lit::<T>(0.5), T::zero());
    let adj = a.adjoint();
    let re_a = a.add(&adj).scale(half);
    // Im A = (A - A*) / (2i).
    let im_a = a.sub(&adj).scale(C::new(T::zero(), -lit::<T>(0.5)));
    let mut m = re_a.scale(u1).add(&im_a.scale(u2));
    m = m.sub(&ComplexMatrix::identity(n).scale(u3));
    m.det()
}

/// Foci and minor semiaxis of the elliptical numerical range of a 2x2
/// matrix: foci are the eigenvalues, and the minor axis has length
/// `sqrt(tr(A*A) - |f1|^2 - |f2|^2)`.
pub fn ellipse_range_2x2<T: Real>(a: &ComplexMatrix<T>, tol: T) -> Result<EllipseComponent<T>> {
    if a.dim() != 2 {
        return Err(Error::InvalidInput("matrix must be 2x2".into()));
    }
    // Eigenvalues straight from the quadratic formula on
    // z^2 - (tr A) z + det A; this stays exact for repeated eigenvalues
    // where an iterative root finder only reaches square-root accuracy.
    let tr = a.get(0, 0) + a.get(1, 1);
    let det = a.get(0, 0) * a.get(1, 1) - a.get(0, 1) * a.get(1, 0);
    let half = C::new(lit::<T>(0.5), T::zero());
    let disc = (tr * tr - det.scale(lit::<T>(4.0))).sqrt();
    let (f1, f2) = ((tr + disc) * half, (tr - disc) * half);
    let gram = a.adjoint().mul(a);
    let trace = gram.get(0, 0).re + gram.get(1, 1).re;
    let radicand = trace - f1.norm_sqr() - f2.norm_sqr();
    if radicand < -tol {
        return Err(Error::Numerical(format!(
            "negative minor-axis radicand {:e}",
            radicand.to_f64().unwrap_or(f64::NAN)
        )));
    }
    let s = radicand.max(T::zero()).sqrt() * lit::<T>(0.5);
    Ok(EllipseComponent::from_parts(f1, f2, s))
}

/// Intersection of closed half-planes `{x : re(conj(normal) * x) <= offset}`
/// as a ccw convex polygon, by incremental clipping of a large bounding
/// square. Near-parallel planes (normals within 1e-10) are merged keeping
/// the tighter offset.
pub fn halfplane_intersection<T: Real>(
    planes: &[(C<T>, T)],
) -> Result<Vec<C<T>>> {
    if planes.len() < 3 {
        return Err(Error::InvalidInput("need at least 3 half-planes".into()));
    }
    let mut merged: Vec<(C<T>, T)> = Vec::new();
    for &(n, off) in planes {
        let norm = n.norm();
        if norm == T::zero() {
            return Err(Error::InvalidInput("zero normal".into()));
        }
        let unit = n / norm;
        let off = off / norm;
        if let Some(slot) = merged
            .iter_mut()
            .find(|(m, _)| (*m - unit).norm() < lit::<T>(1e-10))
        {
            if off < slot.1 {
                slot.1 = off;
            }
        } else {
            merged.push((unit, off));
        }
    }
    // Bounding square large enough for everything in unit-disk geometry
    // while keeping clipping arithmetic well-scaled.
    let r = lit::<T>(64.0);
    let mut poly = vec![
        C::new(-r, -r),
        C::new(r, -r),
        C::new(r, r),
        C::new(-r, r),
    ];
    for &(n, off) in &merged {
        let inside = |p: C<T>| -> T { off - (n.conj() * p).re };
        let mut next: Vec<C<T>> = Vec::with_capacity(poly.len() + 1);
        for i in 0..poly.len() {
            let cur = poly[i];
            let nxt = poly[(i + 1) % poly.len()];
            let dc = inside(cur);
            let dn = inside(nxt);
            if dc >= T::zero() {
                next.push(cur);
            }
            if (dc > T::zero() && dn < T::zero()) || (dc < T::zero() && dn > T::zero()) {
                let t = dc / (dc - dn);
                next.push(cur + (nxt - cur).scale(t));
            }
        }
        poly = next;
        if poly.is_empty() {
            return Err(Error::Numerical("empty intersection".into()));
        }
    }
    let edge = r - lit::<T>(1e-6);
    if poly
        .iter()
        .any(|p| p.re.abs() >= edge || p.im.abs() >= edge)
    {
        return Err(Error::Numerical("unbounded intersection".into()));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{C64, DEFAULT_TOL, Matrix64};
    use crate::util::Rng;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn jordan(n: usize) -> Matrix64 {
        let mut j = Matrix64::zeros(n);
        for i in 1..n {
            j.set(i, i - 1, c(1.0, 0.0));
        }
        j
    }

    fn random_hermitian(n: usize, rng: &mut Rng) -> Matrix64 {
        let mut h = Matrix64::zeros(n);
        for i in 0..n {
            h.set(i, i, c(rng.range(-1.0, 1.0), 0.0));
            for j in 0..i {
                let v = c(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0));
                h.set(i, j, v);
                h.set(j, i, v.conj());
            }
        }
        h
    }

    #[test]
    fn hermitian_part_of_hermitian_is_itself() {
        let mut h = Matrix64::zeros(2);
        h.set(0, 0, c(1.0, 0.0));
        h.set(0, 1, c(0.0, 2.0));
        h.set(1, 0, c(0.0, -2.0));
        let hp = hermitian_part(&h, 0.0);
        assert!(hp.sub(&h).max_abs() < 1e-15);
    }

    #[test]
    fn hermitian_part_of_jordan_two() {
        let hp = hermitian_part(&jordan(2), 0.0);
        assert!((hp.get(0, 1) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((hp.get(1, 0) - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn hermitian_part_rotates_scalar() {
        let a = Matrix64::identity(2).scale(c(0.0, 1.0));
        let hp = hermitian_part(&a, std::f64::consts::FRAC_PI_2);
        assert!(hp.sub(&Matrix64::identity(2)).max_abs() < 1e-15);
    }

    #[test]
    fn eigs_of_diagonal() {
        let mut d = Matrix64::zeros(3);
        d.set(0, 0, c(3.0, 0.0));
        d.set(1, 1, c(1.0, 0.0));
        d.set(2, 2, c(2.0, 0.0));
        let (e, _) = hermitian_eigs(&d).unwrap();
        assert!((e[0] - 1.0).abs() < 1e-13);
        assert!((e[1] - 2.0).abs() < 1e-13);
        assert!((e[2] - 3.0).abs() < 1e-13);
    }

    #[test]
    fn eigs_of_offdiagonal_half() {
        let h = hermitian_part(&jordan(2), 0.0);
        let (e, _) = hermitian_eigs(&h).unwrap();
        assert!((e[0] + 0.5).abs() < 1e-13);
        assert!((e[1] - 0.5).abs() < 1e-13);
    }

    #[test]
    fn eigs_residual_random_six() {
        let mut rng = Rng::new(11);
        let h = random_hermitian(6, &mut rng);
        let (e, v) = hermitian_eigs(&h).unwrap();
        for (k, &ek) in e.iter().enumerate() {
            let x: Vec<C64> = (0..6).map(|i| v.get(i, k)).collect();
            let hx = h.matvec(&x);
            let mut resid = 0.0f64;
            for i in 0..6 {
                resid += (hx[i] - x[i].scale(ek)).norm_sqr();
            }
            assert!(resid.sqrt() < 1e-9, "residual {}", resid.sqrt());
        }
        // Orthonormality.
        let delta = v.adjoint().mul(&v).sub(&Matrix64::identity(6));
        assert!(delta.max_abs() < 1e-10);
    }

    #[test]
    fn eigs_reject_non_hermitian() {
        assert!(hermitian_eigs(&jordan(2)).is_err());
    }

    #[test]
    fn jordan_support_is_constant_radius() {
        for n in 2..=5 {
            let j = jordan(n);
            let want = (std::f64::consts::PI / (n as f64 + 1.0)).cos();
            for k in 0..12 {
                let s = support_point(&j, TAU * k as f64 / 12.0).unwrap();
                assert!((s.lambda_phi - want).abs() < 1e-10);
                assert!((s.boundary_point.norm() - want).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn support_of_real_diagonal() {
        let mut d = Matrix64::zeros(2);
        d.set(0, 0, c(1.0, 0.0));
        d.set(1, 1, c(-1.0, 0.0));
        let s = support_point(&d, 0.0).unwrap();
        assert!((s.lambda_phi - 1.0).abs() < 1e-12);
        assert!((s.boundary_point - c(1.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn support_sample_invariant() {
        let mut rng = Rng::new(5);
        let mut a = Matrix64::zeros(3);
        for i in 0..3 {
            for j in 0..3 {
                a.set(i, j, c(rng.range(-1.0, 1.0), rng.range(-1.0, 1.0)));
            }
        }
        for k in 0..16 {
            let s = support_point(&a, TAU * k as f64 / 16.0).unwrap();
            let proj = (C64::from_polar(1.0, -s.phi) * s.boundary_point).re;
            assert!((proj - s.lambda_phi).abs() < 1e-9);
        }
    }

    #[test]
    fn boundary_of_normal_matrix_is_hull_of_spectrum() {
        let mut d = Matrix64::zeros(3);
        d.set(0, 0, c(1.0, 0.0));
        d.set(1, 1, c(0.0, 1.0));
        d.set(2, 2, c(-1.0, 0.0));
        let samples = boundary(&d, 360).unwrap();
        // Support function of the triangle hull: max over vertices.
        for s in &samples {
            let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)]
                .iter()
                .map(|v| (C64::from_polar(1.0, -s.phi) * v).re)
                .fold(f64::NEG_INFINITY, f64::max);
            assert!((s.lambda_phi - want).abs() < 1e-10);
        }
    }

    #[test]
    fn kippenhahn_reduces_to_char_poly() {
        let j = jordan(2);
        for &z in &[c(0.3, 0.2), c(-0.5, 0.9), c(0.0, 0.0)] {
            let k = kippenhahn_eval(&j, c(1.0, 0.0), c(0.0, 1.0), z);
            // det(J2 - zI) = z^2
            assert!((k - z * z).norm() < 1e-12);
        }
    }

    #[test]
    fn kippenhahn_real_direction_diagonal() {
        let mut d = Matrix64::zeros(2);
        d.set(0, 0, c(0.7, 0.4));
        d.set(1, 1, c(-0.2, -0.1));
        let t = 0.3;
        let k = kippenhahn_eval(&d, c(1.0, 0.0), c(0.0, 0.0), c(t, 0.0));
        let want = (0.7 - t) * (-0.2 - t);
        assert!((k - c(want, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn ellipse_range_of_jordan_two() {
        let e = ellipse_range_2x2(&jordan(2), DEFAULT_TOL).unwrap();
        assert!(e.f1().norm() < 1e-10);
        assert!(e.f2().norm() < 1e-10);
        assert!((e.s() - 0.5).abs() < 1e-12);
    }

    #[test]
    fn ellipse_range_of_real_diagonal_is_degenerate() {
        let mut d = Matrix64::zeros(2);
        d.set(0, 0, c(1.0, 0.0));
        d.set(1, 1, c(-1.0, 0.0));
        let e = ellipse_range_2x2(&d, DEFAULT_TOL).unwrap();
        assert!(e.s().abs() < 1e-10);
    }

    #[test]
    fn ellipse_range_matches_trace_formula() {
        // 2x2 cut-off CMV of foci {0.6, 0}.
        let phi = crate::cpoly::ComplexPoly::from_roots(&[c(0.6, 0.0), c(0.0, 0.0)]);
        let alphas = crate::opuc::verblunsky_from_poly(&phi, DEFAULT_TOL).unwrap();
        let g = crate::cmv::cutoff_cmv(&alphas).unwrap();
        let e = ellipse_range_2x2(&g, DEFAULT_TOL).unwrap();
        let gram = g.adjoint().mul(&g);
        let want =
            0.5 * (gram.get(0, 0).re + gram.get(1, 1).re - e.f1().norm_sqr() - e.f2().norm_sqr())
                .sqrt();
        assert!((e.s() - want).abs() < 1e-12);
    }

    #[test]
    fn halfplanes_unit_square() {
        let planes = vec![
            (c(1.0, 0.0), 1.0),
            (c(-1.0, 0.0), 1.0),
            (c(0.0, 1.0), 1.0),
            (c(0.0, -1.0), 1.0),
        ];
        let poly = halfplane_intersection(&planes).unwrap();
        assert_eq!(poly.len(), 4);
        for p in &poly {
            assert!((p.re.abs() - 1.0).abs() < 1e-12);
            assert!((p.im.abs() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn halfplanes_equilateral_triangle() {
        // Edges of the triangle with vertices at the cube roots of unity.
        let verts: Vec<C64> = (0..3)
            .map(|k| C64::from_polar(1.0, TAU * k as f64 / 3.0))
            .collect();
        let mut planes = Vec::new();
        for i in 0..3 {
            let a = verts[i];
            let b = verts[(i + 1) % 3];
            let nrm = (b - a) * c(0.0, -1.0);
            let nrm = nrm / nrm.norm();
            planes.push((nrm, (nrm.conj() * a).re));
        }
        let poly = halfplane_intersection(&planes).unwrap();
        assert_eq!(poly.len(), 3);
        for v in &verts {
            assert!(poly.iter().any(|p| (p - v).norm() < 1e-9));
        }
    }

    #[test]
    fn halfplanes_detect_unbounded() {
        let planes = vec![
            (c(1.0, 0.0), 1.0),
            (c(0.0, 1.0), 1.0),
            (
                c(core::f64::consts::FRAC_1_SQRT_2, core::f64::consts::FRAC_1_SQRT_2),
                1.0,
            ),
        ];
        assert!(halfplane_intersection(&planes).is_err());
    }

    #[test]
    fn eigenvalues_lie_inside_sampled_boundary() {
        let mut rng = Rng::new(99);
        for _ in 0..5 {
            let n = 3 + (rng.next_u64() % 3) as usize;
            let mut a = Matrix64::zeros(n);
            for i in 0..n {
                for j in 0..n {
                    a.set(i, j, c(rng.range(-0.5, 0.5), rng.range(-0.5, 0.5)));
                }
            }
            let eigs = a.char_poly().unwrap().roots(DEFAULT_TOL).unwrap();
            for s in boundary(&a, 90).unwrap() {
                for e in &eigs {
                    let proj = (C64::from_polar(1.0, -s.phi) * e).re;
                    assert!(proj <= s.lambda_phi + 1e-8);
                }
            }
        }
    }

    #[test]
    fn support_monotone_under_compression() {
        // Principal 2x2 compression of a random 4x4 dilation.
        let mut rng = Rng::new(17);
        let mut b = Matrix64::zeros(4);
        for i in 0..4 {
            for j in 0..4 {
                b.set(i, j, c(rng.range(-0.5, 0.5), rng.range(-0.5, 0.5)));
            }
        }
        let a = b.principal_block(2);
        for k in 0..24 {
            let phi = TAU * k as f64 / 24.0;
            let sa = support_point(&a, phi).unwrap();
            let sb = support_point(&b, phi).unwrap();
            assert!(sa.lambda_phi <= sb.lambda_phi + 1e-9);
        }
    }
}
