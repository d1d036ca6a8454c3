//! The polygon correspondence on the circle, chord poles and envelope
//! curves, the symmetric Bezoutian form, the positivity condition for a
//! single complete curve, and solution-count combinatorics.

use crate::blaschke::{self, BlaschkeProduct};
use crate::cpoly::ComplexPoly;
use crate::opuc::{self, FociSet, VerblunskySeq};
use crate::util::wrap_angle;
use crate::{lit, Error, Real, Result, C};

/// A family of inscribed polygons: foci in the open disk, the attached
/// degree-`n` Blaschke product, and the recursion coefficients.
#[derive(Debug, Clone)]
pub struct PonceletFamily<T: Real> {
    foci: FociSet<T>,
    n: usize,
    b: BlaschkeProduct<T>,
    alphas: VerblunskySeq<T>,
}

impl<T: Real> PonceletFamily<T> {
    pub fn new(foci: FociSet<T>, tol: T) -> Result<Self> {
        for f in foci.foci() {
            if f.norm() >= T::one() {
                return Err(Error::InvalidInput(
                    "family foci must lie strictly inside the unit disk".into(),
                ));
            }
        }
        let b = BlaschkeProduct::from_foci(&foci)?;
        let phi = opuc::monic_from_foci(&foci);
        let alphas = if foci.is_empty() {
            VerblunskySeq::new(vec![])?
        } else {
            opuc::verblunsky_from_poly(&phi, tol)?
        };
        let n = foci.len() + 1;
        Ok(PonceletFamily { foci, n, b, alphas })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn foci(&self) -> &FociSet<T> {
        &self.foci
    }

    pub fn blaschke(&self) -> &BlaschkeProduct<T> {
        &self.b
    }

    pub fn alphas(&self) -> &VerblunskySeq<T> {
        &self.alphas
    }

    /// The vertex `k` steps counterclockwise from `z` in the polygon
    /// through `z`: evaluate `conj(lambda) = B(z)`, solve for the full
    /// vertex set, locate `z`, and step `k` positions ccw.
    pub fn tau(&self, z: C<T>, k: usize, tol: T) -> Result<C<T>> {
        if (z.norm() - T::one()).abs() > lit::<T>(1e-8) {
            return Err(Error::InvalidInput("tau: point must be on the circle".into()));
        }
        let value = self.b.eval(z); // = conj(lambda)
        let pts = blaschke::solve(&self.b, value.conj(), tol)?;
        // Locate z among the vertices.
        let (idx, dist) = pts
            .iter()
            .enumerate()
            .map(|(i, w)| (i, (w - z).norm()))
            .min_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
            .unwrap();
        if dist > lit::<T>(1e-7) {
            return Err(Error::Numerical(format!(
                "tau: input not matched among the vertices (distance {:e})",
                dist.to_f64().unwrap_or(f64::NAN)
            )));
        }
        // `solve` returns angles increasing from just above 0, which is the
        // ccw cyclic order.
        Ok(pts[(idx + k) % pts.len()])
    }
}

/// Pole of a chord of the unit circle: finite `2zw/(z+w)` for non-antipodal
/// endpoints, otherwise the direction of the diameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Pole<T: Real> {
    Finite(C<T>),
    /// Antipodal endpoints: the line goes through the center and the pole
    /// is at infinity in this direction.
    Infinite { direction: C<T> },
}

/// Pole (reciprocal point) of the line through two circle points.
pub fn chord_pole<T: Real>(z: C<T>, w: C<T>) -> Pole<T> {
    let sum = z + w;
    if sum.norm() < lit::<T>(1e-12) {
        let dir = w - z;
        return Pole::Infinite {
            direction: dir / dir.norm(),
        };
    }
    Pole::Finite((z * w).scale(lit::<T>(2.0)) / sum)
}

/// Squared distance from the origin of the tangent line at a point where
/// the correspondence has angular speed `wdot`: `(1+wdot)^2 / |z + wdot w|^2`.
pub fn chord_distance_sq<T: Real>(z: C<T>, w: C<T>, wdot: T) -> T {
    let num = (T::one() + wdot) * (T::one() + wdot);
    let den = (z + w.scale(wdot)).norm_sqr();
    num / den
}

/// Envelope point of the `k`-diagonal curve at parameter `z`: the limiting
/// intersection of nearby chords, computed from symmetric finite
/// differences at two step sizes with Richardson extrapolation.
pub fn envelope_point<T: Real>(
    fam: &PonceletFamily<T>,
    z: C<T>,
    k: usize,
    tol: T,
) -> Result<C<T>> {
    let theta = z.arg();
    let at = |delta: T| -> Result<C<T>> {
        let t1 = theta - delta;
        let t2 = theta + delta;
        let z1 = C::from_polar(T::one(), t1);
        let z2 = C::from_polar(T::one(), t2);
        let w1 = fam.tau(z1, k, tol)?;
        let w2 = fam.tau(z2, k, tol)?;
        chord_intersection(z1, w1, z2, w2)
    };
    let d1 = lit::<T>(1e-3);
    let d2 = lit::<T>(5e-4);
    let e1 = at(d1)?;
    let e2 = at(d2)?;
    // Both estimates have O(delta^2) error; halving the step and combining
    // cancels the leading term.
    let third = lit::<T>(1.0 / 3.0);
    Ok(e2 + (e2 - e1).scale(third))
}

/// Intersection of the chord lines through `(z1, w1)` and `(z2, w2)`;
/// a chord of the unit circle through `a, b` is `{p : p + a b conj(p) = a + b}`.
fn chord_intersection<T: Real>(z1: C<T>, w1: C<T>, z2: C<T>, w2: C<T>) -> Result<C<T>> {
    let a1 = z1 * w1;
    let b1 = z1 + w1;
    let a2 = z2 * w2;
    let b2 = z2 + w2;
    let da = a1 - a2;
    if da.norm() < lit::<T>(1e-14) {
        return Err(Error::Numerical("degenerate chord pair".into()));
    }
    let pbar = (b1 - b2) / da;
    Ok(b1 - a1 * pbar)
}

/// One sampled point of a curve in the package: the diagonal index, the
/// parameter angle, the envelope point, and the pole of the sampled chord.
#[derive(Debug, Clone, Copy)]
pub struct CurveSample<T: Real> {
    pub k: usize,
    pub theta: T,
    pub point: C<T>,
    pub pole: Pole<T>,
}

/// Sample the complete package `C_1, ..., C_{floor(n/2)}` at uniform
/// parameter angles. The remaining diagonals repeat these curves with a
/// sign flip, so they are not re-sampled.
pub fn sample_package<T: Real>(
    fam: &PonceletFamily<T>,
    samples: usize,
    tol: T,
) -> Result<Vec<CurveSample<T>>> {
    if samples < 1 {
        return Err(Error::InvalidInput("need at least one sample".into()));
    }
    let n = fam.n();
    let mut out = Vec::new();
    for k in 1..=n / 2 {
        for j in 0..samples {
            let theta = T::TAU() * lit::<T>(j as f64) / lit::<T>(samples as f64);
            let z = C::from_polar(T::one(), theta);
            let point = envelope_point(fam, z, k, tol)?;
            let w = fam.tau(z, k, tol)?;
            let pole = chord_pole(z, w);
            out.push(CurveSample {
                k,
                theta,
                point,
                pole,
            });
        }
    }
    Ok(out)
}

/// The symmetric bivariate form
/// `P(z, w) = (w Phi(w) Phi*(z) - z Phi(z) Phi*(w)) / (w - z)`
/// attached to a focus multiset of arbitrary moduli.
#[derive(Debug, Clone)]
pub struct BezoutianP<T: Real> {
    /// `coeffs[i][j]` multiplies `z^i w^j`; the array is `N x N` with the
    /// polynomial of degree `N - 1` in each variable.
    coeffs: Vec<Vec<C<T>>>,
    foci: FociSet<T>,
    /// Count of foci outside the closed unit disk.
    m: usize,
    /// Count of foci on the unit circle (within tolerance).
    d: usize,
}

impl<T: Real> BezoutianP<T> {
    pub fn coeffs(&self) -> &[Vec<C<T>>] {
        &self.coeffs
    }

    pub fn foci(&self) -> &FociSet<T> {
        &self.foci
    }

    /// Total degree count `N = |foci| + 1`.
    pub fn big_n(&self) -> usize {
        self.foci.len() + 1
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Rank of the polygon family: `n = N - 2m - d`.
    pub fn rank_n(&self) -> usize {
        self.big_n() - 2 * self.m - self.d
    }

    pub fn eval(&self, z: C<T>, w: C<T>) -> C<T> {
        let mut acc = C::new(T::zero(), T::zero());
        for row in self.coeffs.iter().rev() {
            let mut inner = C::new(T::zero(), T::zero());
            for &c in row.iter().rev() {
                inner = inner * w + c;
            }
            acc = acc * z + inner;
        }
        acc
    }

    /// The univariate slice `P(z0, ·)` as a polynomial in `w`.
    pub fn slice_in_w(&self, z0: C<T>) -> ComplexPoly<T> {
        let nn = self.coeffs.len();
        let mut coeffs = vec![C::new(T::zero(), T::zero()); nn];
        let mut zp = C::new(T::one(), T::zero());
        for i in 0..nn {
            for (j, c) in coeffs.iter_mut().enumerate() {
                *c = *c + self.coeffs[i][j] * zp;
            }
            zp = zp * z0;
        }
        ComplexPoly::new(coeffs)
    }

    pub fn max_coeff(&self) -> T {
        self.coeffs
            .iter()
            .flatten()
            .map(|c| c.norm())
            .fold(T::zero(), |a, b| if b > a { b } else { a })
    }
}

/// Build the Bezoutian form by exact division of the numerator by
/// `(w - z)` in the coefficient domain.
///
/// With `n_{ab}` the numerator coefficient of `z^a w^b`, the quotient
/// satisfies `c_{ij} = sum_t n_{i-t, j+1+t}`; the terms are the pairwise
/// antisymmetric products `Phi*_a Phi_{b-1} - Phi_{a-1} Phi*_b`, and each
/// coefficient is computed once for `i <= j` and mirrored, which makes the
/// symmetry of the stored array exact rather than a rounding accident.
pub fn bezoutian_build<T: Real>(f: &FociSet<T>, tol: T) -> Result<BezoutianP<T>> {
    let big_n = f.len() + 1;
    let phi = opuc::monic_from_foci(f); // degree N-1
    let star = phi.reverse(big_n - 1)?;
    let cphi = |j: isize| -> C<T> {
        if j < 0 {
            C::new(T::zero(), T::zero())
        } else {
            phi.coeff(j as usize)
        }
    };
    let cstar = |j: isize| -> C<T> {
        if j < 0 {
            C::new(T::zero(), T::zero())
        } else {
            star.coeff(j as usize)
        }
    };
    // Numerator coefficient of z^a w^b.
    let numer = |a: isize, b: isize| -> C<T> { cstar(a) * cphi(b - 1) - cphi(a - 1) * cstar(b) };
    let mut coeffs = vec![vec![C::new(T::zero(), T::zero()); big_n]; big_n];
    #[allow(clippy::needless_range_loop)] // indices feed the coefficient formula directly
    for i in 0..big_n {
        for j in i..big_n {
            let mut s = C::new(T::zero(), T::zero());
            let mut t: isize = 0;
            while t <= i as isize {
                s = s + numer(i as isize - t, j as isize + 1 + t);
                t += 1;
            }
            coeffs[i][j] = s;
            coeffs[j][i] = s;
        }
    }
    let bez = BezoutianP {
        coeffs,
        foci: f.clone(),
        m: f.count_outside(),
        d: f.count_on_circle(),
    };
    // Guard: multiplying the quotient back by (w - z) must reproduce the
    // numerator; a residual here is an internal bug, not bad input.
    let scale = bez.max_coeff().max(T::one());
    for a in 0..=big_n as isize {
        for b in 0..=big_n as isize {
            // Coefficient of z^a w^b in (w - z) * P.
            let cq = |i: isize, j: isize| -> C<T> {
                if i < 0 || j < 0 || i >= big_n as isize || j >= big_n as isize {
                    C::new(T::zero(), T::zero())
                } else {
                    bez.coeffs[i as usize][j as usize]
                }
            };
            let recon = cq(a, b - 1) - cq(a - 1, b);
            if (recon - numer(a, b)).norm() > tol.max(lit::<T>(1e-10)) * scale {
                return Err(Error::Numerical(
                    "Bezoutian division residual above tolerance".into(),
                ));
            }
        }
    }
    Ok(bez)
}

/// Roots of the slice `P(z0, ·)`, split into on-circle and off-circle
/// points with the standard modulus threshold. If the slice degenerates at
/// `z0` (leading coefficient vanishes), `z0` is perturbed by 1e-9 in angle.
#[allow(clippy::type_complexity)]
pub fn on_circle_solutions<T: Real>(
    p: &BezoutianP<T>,
    z0: C<T>,
    tol: T,
) -> Result<(Vec<C<T>>, Vec<C<T>>)> {
    if (z0.norm() - T::one()).abs() > lit::<T>(1e-8) {
        return Err(Error::InvalidInput("z0 must be on the unit circle".into()));
    }
    let scale = p.max_coeff().max(T::one());
    let mut z = z0;
    let mut slice = p.slice_in_w(z);
    let want_deg = p.big_n() - 1;
    if slice.degree() < want_deg || slice.coeff(want_deg).norm() < lit::<T>(1e-9) * scale {
        z = C::from_polar(T::one(), z0.arg() + lit::<T>(1e-9));
        slice = p.slice_in_w(z);
    }
    let roots = slice.roots(tol)?;
    let thr = lit::<T>(opuc::ON_CIRCLE_TOL);
    let mut on = Vec::new();
    let mut off = Vec::new();
    for r in roots {
        if (r.norm() - T::one()).abs() <= thr {
            on.push(r);
        } else {
            off.push(r);
        }
    }
    Ok((on, off))
}

/// The positivity condition for a single complete curve:
/// `1 + sum (1 - |f_j|^2) / |z - f_j|^2 > 0` on the circle. Returns the
/// verdict and the minimum sampled value. Sampling covers uniform points
/// plus the circle point nearest each exterior focus, where the value is
/// most negative.
pub fn mirman_condition<T: Real>(
    f: &FociSet<T>,
    samples: usize,
    _tol: T,
) -> Result<(bool, T)> {
    if samples < 3 {
        return Err(Error::InvalidInput("need at least 3 samples".into()));
    }
    let thr = lit::<T>(opuc::ON_CIRCLE_TOL);
    for focus in f.foci() {
        if (focus.norm() - T::one()).abs() <= thr {
            return Err(Error::InvalidInput(
                "condition undefined for a focus on the circle".into(),
            ));
        }
    }
    let value = |z: C<T>| -> T {
        let mut s = T::one();
        for &fj in f.foci() {
            s = s + (T::one() - fj.norm_sqr()) / (z - fj).norm_sqr();
        }
        s
    };
    let mut min = T::infinity();
    for j in 0..samples {
        let z = C::from_polar(T::one(), T::TAU() * lit::<T>(j as f64) / lit::<T>(samples as f64));
        let v = value(z);
        if v < min {
            min = v;
        }
    }
    for focus in f.foci() {
        if focus.norm() > T::one() {
            let z = focus / focus.norm();
            let v = value(z);
            if v < min {
                min = v;
            }
        }
    }
    Ok((min > T::zero(), min))
}

/// Rank and turning number of the `k`-diagonal curve:
/// `(n / gcd(k, n), k / gcd(k, n))`.
pub fn component_rank(n: usize, k: usize) -> Result<(usize, usize)> {
    if k == 0 || k >= n {
        return Err(Error::InvalidInput(format!(
            "diagonal index {} out of range 1..{}",
            k,
            n - 1
        )));
    }
    let g = gcd(n, k);
    Ok((n / g, k / g))
}

/// Number of diagonals `k` in `1..=n/2` whose curve has rank `d`, by
/// direct enumeration. Equals half of Euler's totient of `d`.
pub fn totient_count(n: usize, d: usize) -> Result<usize> {
    if d < 3 || !n.is_multiple_of(d) {
        return Err(Error::InvalidInput(
            "rank must be a divisor of n with d >= 3".into(),
        ));
    }
    let mut count = 0;
    for k in 1..=n / 2 {
        if n / gcd(n, k) == d {
            count += 1;
        }
    }
    Ok(count)
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Angular speed of the correspondence at `z`, by a central finite
/// difference of the vertex angle (used by the distance-law checks).
pub fn tau_angular_speed<T: Real>(
    fam: &PonceletFamily<T>,
    z: C<T>,
    k: usize,
    h: T,
    tol: T,
) -> Result<T> {
    let theta = z.arg();
    let wp = fam.tau(C::from_polar(T::one(), theta + h), k, tol)?;
    let wm = fam.tau(C::from_polar(T::one(), theta - h), k, tol)?;
    let dw = wrap_angle(wp.arg() - wm.arg());
    Ok(dw / (h + h))
}
