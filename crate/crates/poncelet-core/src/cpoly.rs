//! Dense complex polynomials: evaluation, conjugate reversal, root finding
//! (Aberth–Ehrlich with Newton polish), and interpolation.

use crate::{lit, Error, Real, Result, C};

/// Dense polynomial with complex coefficients; `coeffs[j]` multiplies `z^j`.
///
/// The zero polynomial is stored as `[0]`; the coefficient list is never
/// empty. Trailing zero coefficients are trimmed on construction so that
/// `degree()` is the honest degree (with `degree(0) = 0` by convention).
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPoly<T: Real> {
    coeffs: Vec<C<T>>,
}

impl<T: Real> ComplexPoly<T> {
    /// Build from a coefficient list, trimming trailing zeros.
    pub fn new(mut coeffs: Vec<C<T>>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&C::new(T::zero(), T::zero())) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(C::new(T::zero(), T::zero()));
        }
        ComplexPoly { coeffs }
    }

    /// The constant polynomial `c`.
    pub fn constant(c: C<T>) -> Self {
        ComplexPoly { coeffs: vec![c] }
    }

    /// The constant polynomial `1`.
    pub fn one() -> Self {
        Self::constant(C::new(T::one(), T::zero()))
    }

    /// Monic polynomial with the given roots (empty list gives `1`).
    pub fn from_roots(roots: &[C<T>]) -> Self {
        let mut p = Self::one();
        for &r in roots {
            p = p.mul(&ComplexPoly::new(vec![-r, C::new(T::one(), T::zero())]));
        }
        p
    }

    pub fn coeffs(&self) -> &[C<T>] {
        &self.coeffs
    }

    /// Coefficient of `z^j`, zero beyond the stored degree.
    pub fn coeff(&self, j: usize) -> C<T> {
        self.coeffs
            .get(j)
            .copied()
            .unwrap_or_else(|| C::new(T::zero(), T::zero()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].norm() == T::zero()
    }

    /// Largest coefficient modulus (scale for relative comparisons).
    pub fn max_coeff(&self) -> T {
        self.coeffs
            .iter()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }

    /// Horner evaluation.
    pub fn eval(&self, z: C<T>) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Derivative polynomial.
    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(C::new(T::zero(), T::zero()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &c)| c * C::new(lit::<T>(j as f64), T::zero()))
            .collect();
        ComplexPoly::new(coeffs)
    }

    /// Conjugate-reverse at degree `n`: coefficient `j` of the result is the
    /// conjugate of coefficient `n - j` of `self`.
    pub fn reverse(&self, n: usize) -> Result<Self> {
        if self.degree() > n {
            return Err(Error::InvalidInput(format!(
                "reverse: degree {} exceeds n = {}",
                self.degree(),
                n
            )));
        }
        let coeffs = (0..=n).map(|j| self.coeff(n - j).conj()).collect();
        Ok(ComplexPoly::new(coeffs))
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect();
        ComplexPoly::new(coeffs)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|j| self.coeff(j) - other.coeff(j)).collect();
        ComplexPoly::new(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::constant(C::new(T::zero(), T::zero()));
        }
        let mut coeffs = vec![C::new(T::zero(), T::zero()); self.degree() + other.degree() + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        ComplexPoly::new(coeffs)
    }

    pub fn scale(&self, c: C<T>) -> Self {
        ComplexPoly::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        let mut coeffs = vec![C::new(T::zero(), T::zero()); k];
        coeffs.extend_from_slice(&self.coeffs);
        ComplexPoly::new(coeffs)
    }

    /// Divide by `z`, checking that the constant term is negligible
    /// relative to the coefficient scale.
    pub fn shift_down(&self, tol: T) -> Result<Self> {
        let scale = self.max_coeff().max(T::one());
        if self.coeff(0).norm() > tol * scale {
            return Err(Error::Numerical(format!(
                "division by z is inexact: |constant term| = {:e}",
                self.coeff(0).norm().to_f64().unwrap_or(f64::NAN)
            )));
        }
        if self.coeffs.len() == 1 {
            return Ok(Self::constant(C::new(T::zero(), T::zero())));
        }
        Ok(ComplexPoly::new(self.coeffs[1..].to_vec()))
    }

    /// All roots with multiplicity via Aberth–Ehrlich, Newton-polished.
    ///
    /// Exact zero roots (vanishing low-order coefficients) are deflated
    /// first, which keeps the common repeated-focus-at-origin inputs exact.
    pub fn roots(&self, tol: T) -> Result<Vec<C<T>>> {
        if self.degree() == 0 {
            return Err(Error::InvalidInput(
                "roots: degree must be at least 1".into(),
            ));
        }
        let zero = C::new(T::zero(), T::zero());
        let mut out = Vec::new();
        let mut work = self.coeffs.clone();
        while work.len() > 1 && work[0] == zero {
            out.push(zero);
            work.remove(0);
        }
        if work.len() == 1 {
            return Ok(out);
        }
        let p = ComplexPoly::new(work);
        let lead = *p.coeffs.last().unwrap();
        let monic = p.scale(lead.inv());
        out.extend(aberth(&monic, tol)?);
        // Residual acceptance: |p(r)| <= tol * (1+|r|)^deg * max|coeff|.
        let scale = self.max_coeff();
        for &r in &out {
            let bound = tol * (T::one() + r.norm()).powi(self.degree() as i32) * scale;
            if self.eval(r).norm() > bound {
                return Err(Error::NoConvergence(format!(
                    "root residual {:e} above bound {:e}",
                    self.eval(r).norm().to_f64().unwrap_or(f64::NAN),
                    bound.to_f64().unwrap_or(f64::NAN)
                )));
            }
        }
        Ok(out)
    }
}

/// Aberth–Ehrlich simultaneous iteration on a monic polynomial of degree >= 1.
fn aberth<T: Real>(p: &ComplexPoly<T>, tol: T) -> Result<Vec<C<T>>> {
    let n = p.degree();
    let dp = p.derivative();
    let radius = T::one() + p.max_coeff();
    // Initial guesses on a circle, with a deterministic index-dependent
    // perturbation so no guess falls on a symmetry axis of the root set.
    let mut zs: Vec<C<T>> = (0..n)
        .map(|i| {
            let jitter = lit::<T>(0.376241 + 0.5190423 * ((i * i + 1) % 17) as f64);
            let ang = T::TAU() * (lit::<T>(i as f64) + jitter) / lit::<T>(n as f64);
            C::from_polar(radius, ang)
        })
        .collect();
    let max_iters = 400;
    for _ in 0..max_iters {
        let mut moved = T::zero();
        for i in 0..n {
            let zi = zs[i];
            let pv = p.eval(zi);
            if pv.norm() == T::zero() {
                continue;
            }
            let dv = dp.eval(zi);
            let w = if dv.norm() > T::zero() {
                pv / dv
            } else {
                // Derivative vanished: nudge off the critical point.
                C::new(tol + tol, T::zero())
            };
            let mut s = C::new(T::zero(), T::zero());
            for (j, &zj) in zs.iter().enumerate() {
                if j != i {
                    s = s + (zi - zj).inv();
                }
            }
            let denom = C::new(T::one(), T::zero()) - w * s;
            let step = if denom.norm() > T::epsilon() { w / denom } else { w };
            zs[i] = zi - step;
            let rel = step.norm() / (T::one() + zs[i].norm());
            if rel > moved {
                moved = rel;
            }
        }
        if moved <= tol {
            break;
        }
    }
    // Newton polish sharpens simple roots to machine precision.
    for z in zs.iter_mut() {
        for _ in 0..3 {
            let pv = p.eval(*z);
            let dv = dp.eval(*z);
            if dv.norm() == T::zero() {
                break;
            }
            let step = pv / dv;
            if step.norm() > T::one() {
                break;
            }
            *z = *z - step;
        }
    }
    Ok(zs)
}

/// Newton-form interpolation through the first `degree + 1` nodes.
pub fn interpolate<T: Real>(points: &[(C<T>, C<T>)], degree: usize) -> Result<ComplexPoly<T>> {
    if points.len() < degree + 1 {
        return Err(Error::InvalidInput(format!(
            "interpolate: need {} nodes, got {}",
            degree + 1,
            points.len()
        )));
    }
    let pts = &points[..degree + 1];
    for i in 0..pts.len() {
        for j in 0..i {
            if (pts[i].0 - pts[j].0).norm() == T::zero() {
                return Err(Error::InvalidInput("interpolate: duplicate nodes".into()));
            }
        }
    }
    // Divided differences.
    let mut dd: Vec<C<T>> = pts.iter().map(|&(_, y)| y).collect();
    for level in 1..pts.len() {
        for i in (level..pts.len()).rev() {
            dd[i] = (dd[i] - dd[i - 1]) / (pts[i].0 - pts[i - level].0);
        }
    }
    // Expand the Newton form into monomial coefficients.
    let mut poly = ComplexPoly::constant(C::new(T::zero(), T::zero()));
    let mut basis = ComplexPoly::one();
    for (i, &c) in dd.iter().enumerate() {
        poly = poly.add(&basis.scale(c));
        if i + 1 < dd.len() {
            basis = basis.mul(&ComplexPoly::new(vec![
                -pts[i].0,
                C::new(T::one(), T::zero()),
            ]));
        }
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{C64, DEFAULT_TOL};
    use proptest::prelude::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn sort_key(z: &C64) -> (i64, i64) {
        ((z.re * 1e9).round() as i64, (z.im * 1e9).round() as i64)
    }

    #[test]
    fn eval_at_root_of_quadratic() {
        let p = ComplexPoly::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.eval(c(1.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn eval_identity_polynomial() {
        let p = ComplexPoly::new(vec![c(0.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(p.eval(c(3.0, 4.0)), c(3.0, 4.0));
    }

    #[test]
    fn eval_expanded_product_has_tiny_residual() {
        // (z - 0.5)(z - 0.25i) expanded by hand.
        let p = ComplexPoly::new(vec![c(0.0, 0.125), c(-0.5, -0.25), c(1.0, 0.0)]);
        assert!(p.eval(c(0.0, 0.25)).norm() < 1e-14);
    }

    #[test]
    fn reverse_linear_factor() {
        let a = c(0.3, 0.4);
        let p = ComplexPoly::new(vec![-a, c(1.0, 0.0)]);
        let r = p.reverse(1).unwrap();
        assert_eq!(r.coeff(0), c(1.0, 0.0));
        assert_eq!(r.coeff(1), -a.conj());
    }

    #[test]
    fn reverse_pure_power_is_constant() {
        let p = ComplexPoly::new(vec![c(0.0, 0.0); 3])
            .add(&ComplexPoly::one().shift_up(3));
        let r = p.reverse(3).unwrap();
        assert_eq!(r.degree(), 0);
        assert_eq!(r.coeff(0), c(1.0, 0.0));
    }

    #[test]
    fn reverse_conjugates_coefficients() {
        // z^2 + (1+i) -> (1-i) z^2 + 1
        let p = ComplexPoly::new(vec![c(1.0, 1.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = p.reverse(2).unwrap();
        assert_eq!(r.coeff(0), c(1.0, 0.0));
        assert_eq!(r.coeff(2), c(1.0, -1.0));
    }

    #[test]
    fn reverse_rejects_degree_above_n() {
        let p = ComplexPoly::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        assert!(p.reverse(1).is_err());
    }

    #[test]
    fn roots_of_quadratic() {
        let p = ComplexPoly::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let mut r = p.roots(DEFAULT_TOL).unwrap();
        r.sort_by_key(sort_key);
        assert!((r[0] - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((r[1] - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn roots_of_unity_cubic() {
        let p = ComplexPoly::new(vec![c(-1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = p.roots(DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 3);
        for z in &r {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(3) - c(1.0, 0.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn roots_of_expanded_cubic_match_factors() {
        let roots = [c(0.9, 0.0), c(0.0, 0.1), c(-0.3, 0.0)];
        let p = ComplexPoly::from_roots(&roots);
        let mut got = p.roots(DEFAULT_TOL).unwrap();
        for want in roots {
            let (i, _) = got
                .iter()
                .enumerate()
                .min_by(|a, b| {
                    (a.1 - want)
                        .norm()
                        .partial_cmp(&(b.1 - want).norm())
                        .unwrap()
                })
                .unwrap();
            assert!((got[i] - want).norm() < 1e-10);
            got.remove(i);
        }
    }

    #[test]
    fn roots_deflate_origin_exactly() {
        // z^4 - a z^3 has a triple root at 0, exactly deflated.
        let a = 0.7;
        let p = ComplexPoly::new(vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(-a, 0.0),
            c(1.0, 0.0),
        ]);
        let mut r = p.roots(DEFAULT_TOL).unwrap();
        r.sort_by_key(sort_key);
        assert_eq!(r[0], c(0.0, 0.0));
        assert_eq!(r[1], c(0.0, 0.0));
        assert_eq!(r[2], c(0.0, 0.0));
        assert!((r[3] - c(a, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn interpolate_line() {
        let pts = [(c(0.0, 0.0), c(1.0, 0.0)), (c(1.0, 0.0), c(2.0, 0.0))];
        let p = interpolate(&pts, 1).unwrap();
        assert!((p.coeff(0) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((p.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn interpolate_cubic_at_roots_of_unity() {
        let cube = ComplexPoly::one().shift_up(3);
        let pts: Vec<_> = (0..4)
            .map(|j| {
                let z = C64::from_polar(1.0, std::f64::consts::TAU * j as f64 / 4.0);
                (z, cube.eval(z))
            })
            .collect();
        let p = interpolate(&pts, 3).unwrap();
        for j in 0..3 {
            assert!(p.coeff(j).norm() < 1e-13);
        }
        assert!((p.coeff(3) - c(1.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn interpolate_recovers_squared_factor() {
        let q = ComplexPoly::from_roots(&[c(0.5, 0.0), c(0.5, 0.0)]);
        let nodes = [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 1.0)];
        let pts: Vec<_> = nodes.iter().map(|&z| (z, q.eval(z))).collect();
        let p = interpolate(&pts, 2).unwrap();
        assert!((p.coeff(0) - c(0.25, 0.0)).norm() < 1e-12);
        assert!((p.coeff(1) - c(-1.0, 0.0)).norm() < 1e-12);
        assert!((p.coeff(2) - c(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn interpolate_rejects_duplicate_nodes() {
        let pts = [(c(0.0, 0.0), c(1.0, 0.0)), (c(0.0, 0.0), c(2.0, 0.0))];
        assert!(interpolate(&pts, 1).is_err());
    }

    proptest! {
        #[test]
        fn reverse_is_an_involution(coeffs in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 1..8)) {
            let p = ComplexPoly::new(coeffs.iter().map(|&(re, im)| c(re, im)).collect());
            let n = p.degree() + 2;
            let rr = p.reverse(n).unwrap().reverse(n).unwrap();
            for j in 0..=n {
                prop_assert!((rr.coeff(j) - p.coeff(j)).norm() < 1e-15);
            }
        }

        #[test]
        fn reversal_preserves_modulus_on_circle(
            coeffs in proptest::collection::vec((-2.0..2.0f64, -2.0..2.0f64), 2..8),
            theta in 0.0..std::f64::consts::TAU,
        ) {
            let mut cs: Vec<C64> = coeffs.iter().map(|&(re, im)| c(re, im)).collect();
            cs.push(c(1.0, 0.0)); // force exact degree
            let p = ComplexPoly::new(cs);
            let n = p.degree();
            let z = C64::from_polar(1.0, theta);
            let lhs = p.eval(z).norm();
            let rhs = p.reverse(n).unwrap().eval(z).norm();
            prop_assert!((lhs - rhs).abs() < 1e-10 * (1.0 + lhs));
        }

        #[test]
        fn roots_of_monic_from_roots_round_trip(
            roots in proptest::collection::vec((0.0..2.0f64, 0.0..std::f64::consts::TAU), 1..8)
        ) {
            let rs: Vec<C64> = roots.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
            // Nearly-coincident draws turn into genuine multiple roots whose
            // attainable accuracy degrades like the multiplicity-th root of
            // machine epsilon; keep this test about the simple-root contract.
            for i in 0..rs.len() {
                for j in 0..i {
                    prop_assume!((rs[i] - rs[j]).norm() > 0.05);
                }
            }
            let p = ComplexPoly::from_roots(&rs);
            let got = p.roots(DEFAULT_TOL).unwrap();
            prop_assert_eq!(got.len(), rs.len());
            // Greedy multiset matching.
            let mut pool = got.clone();
            for want in &rs {
                let (i, d) = pool
                    .iter()
                    .enumerate()
                    .map(|(i, z)| (i, (z - want).norm()))
                    .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
                    .unwrap();
                prop_assert!(d < 1e-9);
                pool.remove(i);
            }
        }
    }
}
