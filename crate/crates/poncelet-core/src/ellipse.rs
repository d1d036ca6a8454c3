//! Elliptical components of a curve package: the quadratic chord relation,
//! circular and inner orbit iterations, closure of the minor semiaxis, and
//! factorization of the symmetric form into per-component conics.

use crate::cpoly::ComplexPoly;
use crate::opuc::FociSet;
use crate::poncelet::{self, PonceletFamily};
use crate::util::{wrap_angle, Rng};
use crate::{lit, Error, Real, Result, C};

/// An ellipse given by its two foci and minor semiaxis `s`; `s = 0`
/// degenerates to the segment (or point) between the foci.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EllipseComponent<T: Real> {
    f1: C<T>,
    f2: C<T>,
    s: T,
}

impl<T: Real> EllipseComponent<T> {
    /// Validating constructor for components inscribed in the unit disk:
    /// both foci strictly inside, `s >= 0`.
    pub fn new(f1: C<T>, f2: C<T>, s: T) -> Result<Self> {
        if f1.norm() >= T::one() || f2.norm() >= T::one() {
            return Err(Error::InvalidInput(
                "ellipse foci must lie strictly inside the unit disk".into(),
            ));
        }
        // `!(s >= 0)` instead of `s < 0` so NaN is rejected too.
        #[allow(clippy::neg_cmp_op_on_partial_ord)]
        if !(s >= T::zero()) || !s.is_finite() {
            return Err(Error::InvalidInput(
                "minor semiaxis must be a finite non-negative real".into(),
            ));
        }
        Ok(EllipseComponent { f1, f2, s })
    }

    /// Unchecked constructor for components produced by other computations
    /// (for example a numerical range may legitimately have `s = 0` with
    /// distinct foci, or foci outside the disk for non-contractive input).
    pub fn from_parts(f1: C<T>, f2: C<T>, s: T) -> Self {
        EllipseComponent { f1, f2, s }
    }

    pub fn f1(&self) -> C<T> {
        self.f1
    }

    pub fn f2(&self) -> C<T> {
        self.f2
    }

    pub fn s(&self) -> T {
        self.s
    }

    pub fn center(&self) -> C<T> {
        (self.f1 + self.f2).scale(lit::<T>(0.5))
    }

    /// Major semiaxis `sqrt(s^2 + c^2)` with `c` half the focal distance.
    pub fn major_semiaxis(&self) -> T {
        let c = (self.f1 - self.f2).norm() * lit::<T>(0.5);
        (self.s * self.s + c * c).sqrt()
    }

    pub fn is_degenerate(&self) -> bool {
        self.s <= T::zero()
    }
}

/// The disk automorphism factor `(z - f) / (1 - conj(f) z)`.
pub fn b1<T: Real>(z: C<T>, f: C<T>) -> C<T> {
    (z - f) / (C::new(T::one(), T::zero()) - f.conj() * z)
}

fn phi2_star<T: Real>(z: C<T>, f1: C<T>, f2: C<T>) -> C<T> {
    let one = C::new(T::one(), T::zero());
    (one - f1.conj() * z) * (one - f2.conj() * z)
}

/// The chord relation of the component: `w` and `z` are joined by a chord
/// tangent to the ellipse exactly when `q(z, w) = 0`. For `s > 0`,
/// `q = (w + b1(z;f1))(w + b1(z;f2)) - 4 s^2 z w / Phi2*(z)`;
/// for `s = 0` it degenerates to `w + b1(z; f1)`.
pub fn q_eval<T: Real>(e: &EllipseComponent<T>, z: C<T>, w: C<T>) -> C<T> {
    if e.is_degenerate() {
        return w + b1(z, e.f1);
    }
    let lhs = (w + b1(z, e.f1)) * (w + b1(z, e.f2));
    let corr = (z * w).scale(lit::<T>(4.0) * e.s * e.s) / phi2_star(z, e.f1, e.f2);
    lhs - corr
}

/// Both roots in `w` of the quadratic `q(z, ·)`.
fn chord_roots<T: Real>(e: &EllipseComponent<T>, z: C<T>) -> Result<(C<T>, C<T>)> {
    if e.is_degenerate() {
        return Err(Error::InvalidInput(
            "chord relation is quadratic only for s > 0".into(),
        ));
    }
    let u = b1(z, e.f1);
    let v = b1(z, e.f2);
    let b = u + v - z.scale(lit::<T>(4.0) * e.s * e.s) / phi2_star(z, e.f1, e.f2);
    let c = u * v;
    // Stable quadratic roots: compute the larger-magnitude one first.
    let disc = (b * b - c.scale(lit::<T>(4.0))).sqrt();
    let half = lit::<T>(0.5);
    let cand1 = (-b + disc).scale(half);
    let cand2 = (-b - disc).scale(half);
    let big = if cand1.norm() >= cand2.norm() { cand1 } else { cand2 };
    if big.norm() < lit::<T>(1e-300) {
        return Ok((big, -b - big));
    }
    Ok((big, c / big))
}

/// Step the chord orbit: from `cur` with known predecessor `prev`, the next
/// point is the root of `q(cur, ·)` farther from `prev`. If both roots sit
/// within 1e-6 of each other the step is ambiguous and the call fails.
fn step<T: Real>(e: &EllipseComponent<T>, prev: C<T>, cur: C<T>) -> Result<C<T>> {
    let (r1, r2) = chord_roots(e, cur)?;
    let d1 = (r1 - prev).norm();
    let d2 = (r2 - prev).norm();
    let (next, far) = if d1 >= d2 { (r1, d1) } else { (r2, d2) };
    if far < lit::<T>(1e-6) {
        return Err(Error::Numerical(
            "chord orbit step is ambiguous: both continuation roots collide".into(),
        ));
    }
    Ok(next)
}

/// Orbit of circle points under the tangent-chord map, with closure
/// detection. Returns the visited points (starting with `w0`) and the
/// period if the orbit returns to `w0` within `tol`.
///
/// Every iterate must stay on the circle (drift means the ellipse is not
/// inscribed) and consecutive triples must satisfy the product identity
/// `w_{i+1} w_{i-1} = b1(w_i; f1) b1(w_i; f2)`.
pub fn circular_iteration<T: Real>(
    e: &EllipseComponent<T>,
    w0: C<T>,
    max_steps: usize,
    tol: T,
) -> Result<(Vec<C<T>>, Option<usize>)> {
    if e.is_degenerate() {
        return Err(Error::InvalidInput(
            "circular iteration requires s > 0".into(),
        ));
    }
    if (w0.norm() - T::one()).abs() > lit::<T>(1e-8) {
        return Err(Error::InvalidInput("starting point must be on the circle".into()));
    }
    let drift = lit::<T>(1e-7);
    let ctol = tol.max(lit::<T>(1e-12));
    // First step: take the counterclockwise-nearer of the two tangent
    // chords, so forward orbits are deterministic.
    let (r1, r2) = chord_roots(e, w0)?;
    let a1 = wrap_angle((r1 / w0).arg());
    let a2 = wrap_angle((r2 / w0).arg());
    let mut cur = if a1 <= a2 { r1 } else { r2 };
    let mut prev = w0;
    let mut pts = vec![w0];
    for i in 1..=max_steps {
        if (cur.norm() - T::one()).abs() > drift {
            return Err(Error::Numerical(format!(
                "orbit left the circle at step {} (|w| = {})",
                i,
                cur.norm().to_f64().unwrap_or(f64::NAN)
            )));
        }
        if i >= 2 && (cur - w0).norm() <= ctol {
            return Ok((pts, Some(i)));
        }
        pts.push(cur);
        let next = step(e, prev, cur)?;
        // Product-of-roots identity for the quadratic at `cur`.
        let vieta = (next * prev - b1(cur, e.f1) * b1(cur, e.f2)).norm();
        if vieta > lit::<T>(1e-8) {
            return Err(Error::Numerical(format!(
                "chord relation violated at step {} (residual {:e})",
                i,
                vieta.to_f64().unwrap_or(f64::NAN)
            )));
        }
        prev = cur;
        cur = next;
    }
    Ok((pts, None))
}

/// The interior orbit through the foci: starts at `0 -> f_start` and lists
/// the points visited before the orbit returns to `0`. A stationary value
/// (the orbit folding back on a tangency point, which happens for even
/// polygon counts) terminates the list with that value included once.
pub fn inner_iteration<T: Real>(
    e: &EllipseComponent<T>,
    start_at_f2: bool,
    max_steps: usize,
    tol: T,
) -> Result<Vec<C<T>>> {
    let fa = if start_at_f2 { e.f2 } else { e.f1 };
    if e.is_degenerate() {
        return Ok(vec![fa]);
    }
    let rtol = tol.max(lit::<T>(1e-9));
    let mut prev = C::new(T::zero(), T::zero());
    let mut cur = fa;
    let mut pts = vec![fa];
    for _ in 0..max_steps {
        // The interior orbit may legitimately hit a point where the two
        // continuation roots coincide (the orbit folding back on itself);
        // that coincident value is the terminal point.
        let (r1, r2) = chord_roots(e, cur)?;
        let next = if (r1 - r2).norm() < lit::<T>(1e-6) {
            r1
        } else {
            step(e, prev, cur)?
        };
        if next.norm() <= rtol {
            return Ok(pts);
        }
        if (next - cur).norm() <= rtol {
            return Ok(pts);
        }
        pts.push(next);
        prev = cur;
        cur = next;
    }
    Err(Error::NoConvergence(
        "interior orbit did not return to the origin".into(),
    ))
}

/// Total counterclockwise angle advanced by `n` chord steps from `w0 = 1`.
fn advance_after<T: Real>(e: &EllipseComponent<T>, n: usize) -> Result<T> {
    let mut prev = C::new(T::one(), T::zero());
    let (r1, r2) = chord_roots(e, prev)?;
    let a1 = wrap_angle((r1 / prev).arg());
    let a2 = wrap_angle((r2 / prev).arg());
    let mut cur = if a1 <= a2 { r1 } else { r2 };
    let mut total = a1.min(a2);
    if (cur.norm() - T::one()).abs() > lit::<T>(1e-7) {
        return Err(Error::Numerical("chord step left the circle".into()));
    }
    for _ in 1..n {
        let next = step(e, prev, cur)?;
        if (next.norm() - T::one()).abs() > lit::<T>(1e-7) {
            return Err(Error::Numerical("chord step left the circle".into()));
        }
        total = total + wrap_angle((next / cur).arg());
        prev = cur;
        cur = next;
    }
    Ok(total)
}

/// The unique minor semiaxis for which the chord orbit of the ellipse with
/// the given foci closes after `n` steps with one full turn. The total
/// `n`-step advance decreases strictly in `s`, so the value is found by
/// bisection against `2 pi`.
pub fn closure_semiaxis<T: Real>(f1: C<T>, f2: C<T>, n: usize) -> Result<T> {
    if n < 3 {
        return Err(Error::InvalidInput("need at least 3 polygon sides".into()));
    }
    if f1.norm() >= T::one() || f2.norm() >= T::one() {
        return Err(Error::InvalidInput(
            "foci must lie strictly inside the unit disk".into(),
        ));
    }
    let c0 = ((f1 + f2).scale(lit::<T>(0.5))).norm();
    let c = (f1 - f2).norm() * lit::<T>(0.5);
    let cap_sq = (T::one() - c0) * (T::one() - c0) - c * c;
    if cap_sq <= T::zero() {
        return Err(Error::InvalidInput(
            "no ellipse with these foci fits inside the unit disk".into(),
        ));
    }
    let mut lo = lit::<T>(1e-5);
    let mut hi = cap_sq.sqrt() - lit::<T>(1e-9);
    if hi <= lo {
        return Err(Error::InvalidInput("focal configuration too extreme".into()));
    }
    let two_pi = T::TAU();
    let gap = |s: T| -> Option<T> {
        let e = EllipseComponent::from_parts(f1, f2, s);
        advance_after(&e, n).ok().map(|a| a - two_pi)
    };
    // A vanishing semiaxis makes every chord step advance by nearly half a
    // turn, so the total over n >= 3 steps exceeds a full turn; a failed
    // probe at the low end (the two continuation roots collide there)
    // therefore still belongs to the positive side.
    if let Some(g) = gap(lo) {
        if g <= T::zero() {
            return Err(Error::NoConvergence(
                "no inscribed ellipse closes after this many steps".into(),
            ));
        }
    }
    // An ambiguous or off-circle step near the upper end means the ellipse
    // is too large, so failures are treated as the negative side.
    if let Some(g) = gap(hi) {
        if g > T::zero() {
            return Err(Error::NoConvergence(
                "no inscribed ellipse closes after this many steps".into(),
            ));
        }
    }
    let half = lit::<T>(0.5);
    while hi - lo > lit::<T>(1e-13) {
        let mid = (lo + hi) * half;
        match gap(mid) {
            Some(g) if g > T::zero() => lo = mid,
            _ => hi = mid,
        }
    }
    Ok((lo + hi) * half)
}

/// Cleared per-component factor: the chord relation with denominators
/// removed, so that products of these factors are polynomial.
fn cleared_factor<T: Real>(e: &EllipseComponent<T>, z: C<T>, w: C<T>) -> C<T> {
    let one = C::new(T::one(), T::zero());
    let lin = |f: C<T>| w * (one - f.conj() * z) + (z - f);
    if e.is_degenerate() {
        return lin(e.f1);
    }
    lin(e.f1) * lin(e.f2) - (z * w).scale(lit::<T>(4.0) * e.s * e.s)
}

/// Split a focus list (in interior-orbit order) into elliptical
/// components. The interior orbit `w_1, ..., w_{n-1}` visits the two foci
/// of the `k`-diagonal component at positions `k` and `n - k`, so the
/// `k`-th component is the pair `(w_k, w_{n-k})`, with the matching
/// semiaxis recovered from a sampled tangent chord of that diagonal; for
/// even `n` the middle component degenerates to the single point
/// `w_{n/2}`. The recovered factors are verified against the symmetric
/// form of the focus set before returning.
pub fn package_factor<T: Real>(f: &FociSet<T>, tol: T) -> Result<Vec<EllipseComponent<T>>> {
    let fam = PonceletFamily::new(f.clone(), tol)?;
    let n = fam.n();
    let foci = f.foci();
    let z0: C<T> = C::from_polar(T::one(), lit::<T>(0.734_921_3));
    let mut comps = Vec::new();
    for k in 1..=n / 2 {
        if 2 * k == n {
            comps.push(EllipseComponent::from_parts(
                foci[k - 1],
                foci[k - 1],
                T::zero(),
            ));
            continue;
        }
        let fa = foci[k - 1];
        let fb = foci[n - k - 1];
        let w = fam.tau(z0, k, tol)?;
        // Solve the chord relation for s^2 given a tangent chord (z0, w).
        let s_sq = (w + b1(z0, fa)) * (w + b1(z0, fb)) * phi2_star(z0, fa, fb)
            / (z0 * w).scale(lit::<T>(4.0));
        if s_sq.im.abs() > lit::<T>(1e-6) || s_sq.re < -lit::<T>(1e-6) {
            return Err(Error::Numerical(format!(
                "recovered semiaxis is not a non-negative real ({:e} + {:e}i)",
                s_sq.re.to_f64().unwrap_or(f64::NAN),
                s_sq.im.to_f64().unwrap_or(f64::NAN)
            )));
        }
        comps.push(EllipseComponent::from_parts(
            fa,
            fb,
            s_sq.re.max(T::zero()).sqrt(),
        ));
    }
    // Verify: the symmetric form of the foci equals a constant times the
    // product of cleared factors, sampled at pseudo-random points.
    let p = poncelet::bezoutian_build(f, tol)?;
    let scale = p.max_coeff().max(T::one());
    let mut rng = Rng::new(0x51ce_7ab1_e77e_5eed);
    let mut ratio: Option<C<T>> = None;
    for _ in 0..100 {
        let z: C<T> = rng.in_disk(lit::<T>(1.2));
        let w: C<T> = rng.in_disk(lit::<T>(1.2));
        let mut prod = C::new(T::one(), T::zero());
        for e in &comps {
            prod = prod * cleared_factor(e, z, w);
        }
        let pv = p.eval(z, w);
        let c = match ratio {
            Some(c) => c,
            None => {
                if prod.norm() < lit::<T>(1e-8) * scale {
                    continue;
                }
                let c = pv / prod;
                ratio = Some(c);
                c
            }
        };
        if (pv - c * prod).norm() > tol.max(lit::<T>(1e-7)) * scale {
            return Err(Error::Numerical(
                "component factors do not reproduce the symmetric form".into(),
            ));
        }
    }
    if ratio.is_none() {
        return Err(Error::Numerical("factor verification degenerated".into()));
    }
    Ok(comps)
}

/// The slice polynomial `P(z0, ·)` of the product of cleared component
/// factors, used by callers that need its roots.
pub fn cleared_product_slice<T: Real>(
    comps: &[EllipseComponent<T>],
    z: C<T>,
) -> ComplexPoly<T> {
    let one = C::new(T::one(), T::zero());
    let mut prod = ComplexPoly::constant(one);
    for e in comps {
        let lin = |f: C<T>| {
            ComplexPoly::new(vec![z - f, one - f.conj() * z])
        };
        let factor = if e.is_degenerate() {
            lin(e.f1)
        } else {
            let quad = lin(e.f1).mul(&lin(e.f2));
            let corr = ComplexPoly::new(vec![
                C::new(T::zero(), T::zero()),
                z.scale(lit::<T>(4.0) * e.s * e.s),
            ]);
            quad.sub(&corr)
        };
        prod = prod.mul(&factor);
    }
    prod
}
