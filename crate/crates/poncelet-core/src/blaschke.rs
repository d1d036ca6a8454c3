//! Finite Blaschke products in `Phi / Phi*` normal form, the strictly
//! monotone boundary-argument lift, the solver for `B(z) = conj(lambda)` on
//! the circle, and composition.

use crate::cpoly::ComplexPoly;
use crate::opuc::FociSet;
use crate::util::wrap_angle;
use crate::{lit, Error, Real, Result, C};

/// Finite Blaschke product `B(z) = Phi_n(z) / Phi*_n(z)` with all zeros in
/// the open unit disk.
///
/// A precomputed monotone table of the boundary argument is carried along;
/// it makes the lift and the level solver cheap and is what guarantees no
/// winding is ever missed.
#[derive(Debug, Clone)]
pub struct BlaschkeProduct<T: Real> {
    zeros: Vec<C<T>>,
    numer: ComplexPoly<T>,
    denom: ComplexPoly<T>,
    table: ArgTable<T>,
}

impl<T: Real> BlaschkeProduct<T> {
    /// Build from a zero list (all strictly inside the disk).
    pub fn new(zeros: Vec<C<T>>) -> Result<Self> {
        if zeros.is_empty() {
            return Err(Error::InvalidInput(
                "a Blaschke product needs at least one zero".into(),
            ));
        }
        for (j, z) in zeros.iter().enumerate() {
            if z.norm() >= T::one() {
                return Err(Error::InvalidInput(format!(
                    "zero {} has modulus {} >= 1",
                    j,
                    z.norm()
                )));
            }
        }
        let numer = ComplexPoly::from_roots(&zeros);
        let denom = numer.reverse(zeros.len())?;
        let table = ArgTable::build(&zeros, &numer, &denom)?;
        Ok(BlaschkeProduct {
            zeros,
            numer,
            denom,
            table,
        })
    }

    /// The normalized family attached to a focus set: zeros `{0} ∪ f`,
    /// degree `|f| + 1`, value 0 at 0.
    pub fn from_foci(f: &FociSet<T>) -> Result<Self> {
        let mut zeros = vec![C::new(T::zero(), T::zero())];
        zeros.extend_from_slice(f.foci());
        for z in f.foci() {
            if z.norm() >= T::one() {
                return Err(Error::InvalidInput(
                    "every focus must lie strictly inside the unit disk".into(),
                ));
            }
        }
        Self::new(zeros)
    }

    pub fn degree(&self) -> usize {
        self.zeros.len()
    }

    pub fn zeros(&self) -> &[C<T>] {
        &self.zeros
    }

    pub fn numer(&self) -> &ComplexPoly<T> {
        &self.numer
    }

    pub fn denom(&self) -> &ComplexPoly<T> {
        &self.denom
    }

    pub fn eval(&self, z: C<T>) -> C<T> {
        self.numer.eval(z) / self.denom.eval(z)
    }
}

/// `d/dtheta arg B(e^{i theta})`, evaluated as the positive sum
/// `sum over zeros of (1 - |f|^2) / |z - f|^2` (a zero at the origin
/// contributes exactly 1).
pub fn arg_derivative<T: Real>(b: &BlaschkeProduct<T>, z: C<T>) -> Result<T> {
    if (z.norm() - T::one()).abs() > lit::<T>(1e-8) {
        return Err(Error::InvalidInput(format!(
            "point must be on the unit circle, got modulus {}",
            z.norm()
        )));
    }
    Ok(arg_derivative_unchecked(&b.zeros, z))
}

fn arg_derivative_unchecked<T: Real>(zeros: &[C<T>], z: C<T>) -> T {
    let mut s = T::zero();
    for &f in zeros {
        s = s + (T::one() - f.norm_sqr()) / (z - f).norm_sqr();
    }
    s
}

/// Continuous strictly increasing lift of `theta -> arg B(e^{i theta})`,
/// normalized so that `lifted_arg(0)` is the principal argument of `B(1)`.
pub fn lifted_arg<T: Real>(b: &BlaschkeProduct<T>, theta: T) -> T {
    b.table.lift(&b.numer, &b.denom, theta)
}

/// All `n` solutions of `B(z) = conj(lambda)` on the circle, in ccw order
/// of their angle in `[0, 2pi)`.
pub fn solve<T: Real>(b: &BlaschkeProduct<T>, lambda: C<T>, tol: T) -> Result<Vec<C<T>>> {
    if (lambda.norm() - T::one()).abs() > lit::<T>(1e-8) {
        return Err(Error::InvalidInput(
            "lambda must be unimodular".into(),
        ));
    }
    let n = b.degree();
    let target = lambda.conj().arg();
    let l0 = b.table.lifts[0];
    // Smallest level >= l0 congruent to `target` mod 2pi.
    let tau = T::TAU();
    let mut t0 = target + tau * ((l0 - target) / tau).ceil();
    if t0 < l0 {
        t0 = t0 + tau;
    }
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let level = t0 + tau * lit::<T>(k as f64);
        let theta = b.table.invert(b, level)?;
        let z = C::from_polar(T::one(), theta);
        let resid = (b.eval(z) - lambda.conj()).norm();
        if resid > tol.max(lit::<T>(1e-9)) {
            return Err(Error::NoConvergence(format!(
                "solver residual {:e} at level {}",
                resid.to_f64().unwrap_or(f64::NAN),
                k
            )));
        }
        out.push(z);
    }
    Ok(out)
}

/// Composition `outer ∘ inner`, expanded back into `Phi / Phi*` normal form
/// of degree `m * n`.
///
/// The numerator of the composition is
/// `sum_j a_j Phi_in^j (Phi_in*)^{m-j}` with `a_j` the coefficients of the
/// outer numerator; its roots (the inner preimages of the outer zeros) all
/// lie in the open disk, and the denominator is automatically the
/// conjugate reversal, so the composition is again in normal form with no
/// extra unimodular factor.
pub fn compose<T: Real>(
    outer: &BlaschkeProduct<T>,
    inner: &BlaschkeProduct<T>,
    tol: T,
) -> Result<BlaschkeProduct<T>> {
    let m = outer.degree();
    let mut numer = ComplexPoly::constant(C::new(T::zero(), T::zero()));
    // Powers of the inner numerator / reversed numerator.
    let mut pow_n = vec![ComplexPoly::one()];
    let mut pow_s = vec![ComplexPoly::one()];
    for j in 1..=m {
        pow_n.push(pow_n[j - 1].mul(&inner.numer));
        pow_s.push(pow_s[j - 1].mul(&inner.denom));
    }
    for j in 0..=m {
        let term = pow_n[j].mul(&pow_s[m - j]).scale(outer.numer.coeff(j));
        numer = numer.add(&term);
    }
    let zeros = numer.roots(tol)?;
    for z in &zeros {
        if z.norm() >= T::one() {
            return Err(Error::Numerical(format!(
                "composition zero of modulus {} escaped the disk",
                z.norm()
            )));
        }
    }
    BlaschkeProduct::new(zeros)
}

/// Monotone sampled lift of the boundary argument over one period.
#[derive(Debug, Clone)]
struct ArgTable<T: Real> {
    thetas: Vec<T>,
    /// Principal argument of `B` at each grid angle.
    args: Vec<T>,
    /// Cumulative lift at each grid angle; `lifts[0] = args[0]`.
    lifts: Vec<T>,
}

impl<T: Real> ArgTable<T> {
    fn build(zeros: &[C<T>], numer: &ComplexPoly<T>, denom: &ComplexPoly<T>) -> Result<Self> {
        let n = zeros.len();
        let tau = T::TAU();
        let arg_at = |theta: T| -> T {
            let z = C::from_polar(T::one(), theta);
            (numer.eval(z) / denom.eval(z)).arg()
        };
        // Refine until each step's principal argument increment is small;
        // then the per-interval increments are unambiguous and their sum
        // must reproduce the full winding 2*pi*n, which we verify.
        let quarter = T::PI() / lit::<T>(4.0);
        let mut m = (16 * n).max(64);
        for _attempt in 0..8 {
            let mut thetas: Vec<T> = (0..=m)
                .map(|j| tau * lit::<T>(j as f64) / lit::<T>(m as f64))
                .collect();
            // Split intervals whose increment is still too large. The
            // derivative is available in closed form, so use it to bound
            // the increment instead of trusting the samples alone.
            let mut refined = Vec::with_capacity(thetas.len());
            let mut queue: Vec<(T, T)> = thetas.windows(2).map(|w| (w[0], w[1])).collect();
            refined.push(thetas[0]);
            let mut budget = 200_000usize;
            while let Some((a, bnd)) = queue.first().copied() {
                queue.remove(0);
                let mid = (a + bnd) * lit::<T>(0.5);
                let width = bnd - a;
                let deriv = arg_derivative_unchecked(zeros, C::from_polar(T::one(), mid))
                    .max(arg_derivative_unchecked(zeros, C::from_polar(T::one(), a)));
                if width * deriv > quarter && budget > 0 {
                    budget -= 1;
                    queue.insert(0, (mid, bnd));
                    queue.insert(0, (a, mid));
                } else {
                    refined.push(bnd);
                }
            }
            thetas = refined;
            let args: Vec<T> = thetas.iter().map(|&t| arg_at(t)).collect();
            let mut lifts = Vec::with_capacity(args.len());
            lifts.push(args[0]);
            for i in 1..args.len() {
                let d = wrap_angle(args[i] - args[i - 1]);
                lifts.push(lifts[i - 1] + d);
            }
            let total = *lifts.last().unwrap() - lifts[0];
            let want = tau * lit::<T>(n as f64);
            if (total - want).abs() < lit::<T>(1e-6) {
                return Ok(ArgTable {
                    thetas,
                    args,
                    lifts,
                });
            }
            m *= 4;
        }
        Err(Error::NoConvergence(
            "argument lift table failed to capture the full winding".into(),
        ))
    }

    /// Continuous lift at an arbitrary angle.
    fn lift(&self, numer: &ComplexPoly<T>, denom: &ComplexPoly<T>, theta: T) -> T {
        let tau = T::TAU();
        let n = lit::<T>((self.winding()) as f64);
        let t0 = wrap_angle(theta);
        let windings = ((theta - t0) / tau).round();
        let i = self.interval_of(t0);
        let z = C::from_polar(T::one(), t0);
        let a = (numer.eval(z) / denom.eval(z)).arg();
        // Within one grid interval the increment is below pi/4, so the
        // wrapped difference from the left grid point is the true one.
        let local = wrap_angle(a - self.args[i]);
        self.lifts[i] + local + windings * tau * n
    }

    fn winding(&self) -> usize {
        let total = *self.lifts.last().unwrap() - self.lifts[0];
        (total / T::TAU()).round().to_f64().unwrap_or(0.0) as usize
    }

    /// Index of the grid interval containing `t` in `[0, 2pi)`.
    fn interval_of(&self, t: T) -> usize {
        let mut lo = 0usize;
        let mut hi = self.thetas.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.thetas[mid] <= t {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        lo
    }

    /// Angle in `[0, 2pi * ...)` with `lift(theta) = level`, by bisection in
    /// the bracketing grid interval followed by a Newton polish.
    fn invert(&self, b: &BlaschkeProduct<T>, level: T) -> Result<T> {
        let tau = T::TAU();
        let n = lit::<T>(self.winding() as f64);
        let period = tau * n;
        // Reduce the level into the table's range, remembering the shift.
        let base = self.lifts[0];
        let k = ((level - base) / period).floor();
        let reduced = level - k * period;
        let theta_shift = k * tau;
        // Bracketing grid interval by binary search on the cumulative lift.
        let lifts = &self.lifts;
        let mut lo = 0usize;
        let mut hi = lifts.len() - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if lifts[mid] <= reduced {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut a = self.thetas[lo];
        let mut c = self.thetas[hi];
        let f = |theta: T| -> T {
            let z = C::from_polar(T::one(), theta);
            let arg = b.eval(z).arg();
            lifts[lo] + wrap_angle(arg - self.args[lo]) - reduced
        };
        // Bisection: monotone, unconditionally convergent.
        for _ in 0..64 {
            if c - a <= lit::<T>(1e-13) {
                break;
            }
            let mid = (a + c) * lit::<T>(0.5);
            if f(mid) <= T::zero() {
                a = mid;
            } else {
                c = mid;
            }
        }
        let mut theta = (a + c) * lit::<T>(0.5);
        // One Newton polish with the closed-form derivative.
        let d = arg_derivative_unchecked(&b.zeros, C::from_polar(T::one(), theta));
        if d > T::zero() {
            let step = f(theta) / d;
            let polished = theta - step;
            if polished >= a - (c - a) && polished <= c + (c - a) {
                theta = polished;
            }
        }
        Ok(theta + theta_shift)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{C64, DEFAULT_TOL};
    use proptest::prelude::*;
    use std::f64::consts::TAU;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn circle(theta: f64) -> C64 {
        C64::from_polar(1.0, theta)
    }

    #[test]
    fn from_foci_degrees_and_zero_at_origin() {
        let f = FociSet::in_disk(vec![]).unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        assert_eq!(b.degree(), 1);
        assert!((b.eval(c(0.3, 0.1)) - c(0.3, 0.1)).norm() < 1e-15);

        let f = FociSet::in_disk(vec![c(0.0, 0.0)]).unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        assert_eq!(b.degree(), 2);
        assert!((b.eval(c(0.3, 0.0)) - c(0.09, 0.0)).norm() < 1e-15);

        let f = FociSet::in_disk(vec![c(0.0, 0.0); 3].into_iter().chain([c(0.6, 0.0)]).collect())
            .unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        assert_eq!(b.degree(), 5);
        assert!(b.eval(c(0.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn unimodular_on_circle() {
        let b = BlaschkeProduct::new(vec![c(0.5, 0.2), c(-0.3, 0.6), c(0.0, 0.0)]).unwrap();
        for j in 0..64 {
            let z = circle(TAU * j as f64 / 64.0);
            assert!((b.eval(z).norm() - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rejects_zero_outside_disk() {
        assert!(BlaschkeProduct::new(vec![c(1.0, 0.0)]).is_err());
        assert!(BlaschkeProduct::new(vec![c(1.2, 0.3)]).is_err());
    }

    #[test]
    fn arg_derivative_free_case_is_degree() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0); 4]).unwrap();
        for j in 0..8 {
            let z = circle(TAU * j as f64 / 8.0);
            assert!((arg_derivative(&b, z).unwrap() - 4.0).abs() < 1e-13);
        }
    }

    #[test]
    fn arg_derivative_single_focus_at_one() {
        let f = FociSet::in_disk(vec![c(0.5, 0.0)]).unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        assert!((arg_derivative(&b, c(1.0, 0.0)).unwrap() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn arg_derivative_rejects_interior_point() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0)]).unwrap();
        assert!(arg_derivative(&b, c(0.5, 0.0)).is_err());
    }

    #[test]
    fn lifted_arg_of_pure_power() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0); 3]).unwrap();
        let l0 = lifted_arg(&b, 0.0);
        for j in 1..16 {
            let t = TAU * j as f64 / 16.0;
            assert!((lifted_arg(&b, t) - l0 - 3.0 * t).abs() < 1e-10);
        }
    }

    #[test]
    fn lift_winds_by_two_pi_degree() {
        let b = BlaschkeProduct::new(vec![c(0.4, 0.3), c(-0.2, -0.7), c(0.0, 0.0)]).unwrap();
        let d = lifted_arg(&b, TAU) - lifted_arg(&b, 0.0);
        assert!((d - 3.0 * TAU).abs() < 1e-9);
        // Shift property at a generic angle too.
        let d2 = lifted_arg(&b, 1.2 + TAU) - lifted_arg(&b, 1.2);
        assert!((d2 - 3.0 * TAU).abs() < 1e-9);
    }

    #[test]
    fn lift_agrees_with_quadrature_of_derivative() {
        // Independent route: integrate the closed-form derivative with
        // composite Simpson and compare against the unwrapped lift.
        let f = FociSet::in_disk(vec![c(0.5, 0.0)]).unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        let a = 0.0;
        let z = std::f64::consts::PI;
        let m = 20_000;
        let h = (z - a) / m as f64;
        let mut integral = 0.0;
        for i in 0..m {
            let x0 = a + i as f64 * h;
            let x1 = x0 + 0.5 * h;
            let x2 = x0 + h;
            let f0 = arg_derivative(&b, circle(x0)).unwrap();
            let f1 = arg_derivative(&b, circle(x1)).unwrap();
            let f2 = arg_derivative(&b, circle(x2)).unwrap();
            integral += h / 6.0 * (f0 + 4.0 * f1 + f2);
        }
        let lifted = lifted_arg(&b, z) - lifted_arg(&b, a);
        assert!(
            (integral - lifted).abs() < 1e-8,
            "quadrature {} vs lift {}",
            integral,
            lifted
        );
    }

    #[test]
    fn solve_square() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0); 2]).unwrap();
        let pts = solve(&b, c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 2);
        let mut re: Vec<f64> = pts.iter().map(|z| z.re).collect();
        re.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((re[0] + 1.0).abs() < 1e-11);
        assert!((re[1] - 1.0).abs() < 1e-11);
    }

    #[test]
    fn solve_cube_at_i() {
        let b = BlaschkeProduct::new(vec![c(0.0, 0.0); 3]).unwrap();
        // Solutions of z^3 = conj(i) = -i.
        let pts = solve(&b, c(0.0, 1.0), DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 3);
        for z in &pts {
            assert!((z.powu(3) + c(0.0, 1.0)).norm() < 1e-11);
        }
    }

    #[test]
    fn solve_matches_polynomial_roots() {
        let f = FociSet::in_disk(vec![
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.0, 0.0),
            c(0.9, 0.0),
        ])
        .unwrap();
        let b = BlaschkeProduct::from_foci(&f).unwrap();
        let pts = solve(&b, c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 5);
        let phi = crate::opuc::monic_from_foci(&f);
        let p = crate::opuc::popuc(&phi, c(1.0, 0.0), DEFAULT_TOL).unwrap();
        for z in &pts {
            assert!(p.eval(*z).norm() < 1e-9);
        }
    }

    #[test]
    fn compose_identity_outer() {
        let inner = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.4, -0.1)]).unwrap();
        let outer = BlaschkeProduct::new(vec![c(0.0, 0.0)]).unwrap();
        let comp = compose(&outer, &inner, DEFAULT_TOL).unwrap();
        assert_eq!(comp.degree(), 2);
        for j in 0..16 {
            let z = circle(TAU * j as f64 / 16.0);
            assert!((comp.eval(z) - inner.eval(z)).norm() < 1e-10);
        }
    }

    #[test]
    fn compose_pure_powers() {
        let outer = BlaschkeProduct::new(vec![c(0.0, 0.0); 2]).unwrap();
        let inner = BlaschkeProduct::new(vec![c(0.0, 0.0); 3]).unwrap();
        let comp = compose(&outer, &inner, DEFAULT_TOL).unwrap();
        assert_eq!(comp.degree(), 6);
        let z = c(0.3, 0.4);
        assert!((comp.eval(z) - z.powu(6)).norm() < 1e-11);
    }

    #[test]
    fn compose_ellipse_example_degree_six() {
        // Outer zeros {0, i/2}, inner attached to foci {1/2, -1/2}.
        let outer = BlaschkeProduct::new(vec![c(0.0, 0.0), c(0.0, 0.5)]).unwrap();
        let f = FociSet::in_disk(vec![c(0.5, 0.0), c(-0.5, 0.0)]).unwrap();
        let inner = BlaschkeProduct::from_foci(&f).unwrap();
        let comp = compose(&outer, &inner, DEFAULT_TOL).unwrap();
        assert_eq!(comp.degree(), 6);
        let pts = solve(&comp, c(1.0, 0.0), DEFAULT_TOL).unwrap();
        assert_eq!(pts.len(), 6);
        for z in &pts {
            assert!((z.norm() - 1.0).abs() < 1e-10);
            assert!((comp.eval(*z) - c(1.0, 0.0)).norm() < 1e-9);
        }
        // Composition evaluates as outer(inner(z)).
        for j in 0..12 {
            let z = circle(TAU * j as f64 / 12.0 + 0.05);
            let direct = outer.eval(inner.eval(z));
            assert!((comp.eval(z) - direct).norm() < 1e-9);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn modulus_one_on_circle(
            zeros in proptest::collection::vec((0.0..0.95f64, 0.0..TAU), 1..7)
        ) {
            let zs: Vec<C64> = zeros.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
            let b = BlaschkeProduct::new(zs).unwrap();
            for j in 0..256 {
                let z = circle(TAU * j as f64 / 256.0);
                prop_assert!((b.eval(z).norm() - 1.0).abs() < 1e-12);
            }
        }

        #[test]
        fn solve_hits_target_everywhere(
            zeros in proptest::collection::vec((0.0..0.9f64, 0.0..TAU), 1..6),
            lam in 0.0..TAU,
        ) {
            let zs: Vec<C64> = zeros.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
            let n = zs.len();
            let b = BlaschkeProduct::new(zs).unwrap();
            let lambda = circle(lam);
            let pts = solve(&b, lambda, DEFAULT_TOL).unwrap();
            prop_assert_eq!(pts.len(), n);
            for (i, z) in pts.iter().enumerate() {
                prop_assert!((b.eval(*z) - lambda.conj()).norm() < 1e-9);
                for w in pts.iter().take(i) {
                    prop_assert!((z - w).norm() > 1e-9);
                }
            }
        }

        #[test]
        fn derivative_positive_on_circle(
            zeros in proptest::collection::vec((0.0..0.95f64, 0.0..TAU), 1..7),
            theta in 0.0..TAU,
        ) {
            let zs: Vec<C64> = zeros.iter().map(|&(r, t)| C64::from_polar(r, t)).collect();
            let b = BlaschkeProduct::new(zs).unwrap();
            prop_assert!(arg_derivative(&b, circle(theta)).unwrap() > 0.0);
        }
    }
}
