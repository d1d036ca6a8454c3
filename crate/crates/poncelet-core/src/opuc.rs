//! Szegő recursion machinery: foci to monic polynomials, recursion
//! coefficients (up- and downdates), paraorthogonal polynomials and their
//! root sets, and two-snapshot recovery of the underlying polynomial.

use crate::cpoly::ComplexPoly;
use crate::util::wrap_angle;
use crate::{blaschke, lit, Error, Real, Result, C};

/// Multiset of foci `f_1, ..., f_{n-1}` (repetitions allowed).
///
/// Constructions that need the curve inside the disk require every focus in
/// the open unit disk; the Bezoutian route accepts arbitrary moduli and
/// tracks how many foci fall outside or on the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct FociSet<T: Real> {
    foci: Vec<C<T>>,
}

/// Moduli within this distance of 1 count as "on the circle".
pub const ON_CIRCLE_TOL: f64 = 1e-7;

impl<T: Real> FociSet<T> {
    /// Foci of any modulus (Bezoutian route).
    pub fn unrestricted(foci: Vec<C<T>>) -> Self {
        FociSet { foci }
    }

    /// Foci strictly inside the unit disk; errors otherwise.
    pub fn in_disk(foci: Vec<C<T>>) -> Result<Self> {
        for (j, f) in foci.iter().enumerate() {
            if f.norm() >= T::one() {
                return Err(Error::InvalidInput(format!(
                    "focus {} has modulus {} >= 1",
                    j,
                    f.norm()
                )));
            }
        }
        Ok(FociSet { foci })
    }

    pub fn foci(&self) -> &[C<T>] {
        &self.foci
    }

    pub fn len(&self) -> usize {
        self.foci.len()
    }

    pub fn is_empty(&self) -> bool {
        self.foci.is_empty()
    }

    /// Count of foci strictly outside the closed unit disk (modulus above
    /// the on-circle band).
    pub fn count_outside(&self) -> usize {
        let thr = T::one() + lit::<T>(ON_CIRCLE_TOL);
        self.foci.iter().filter(|f| f.norm() > thr).count()
    }

    /// Count of foci on the unit circle within tolerance.
    pub fn count_on_circle(&self) -> usize {
        let thr = lit::<T>(ON_CIRCLE_TOL);
        self.foci
            .iter()
            .filter(|f| (f.norm() - T::one()).abs() <= thr)
            .count()
    }
}

/// Recursion coefficient sequence `alpha_0, ..., alpha_{n-1}`.
///
/// All entries are strict contractions except possibly the last, which may
/// be unimodular (the terminal coefficient of a paraorthogonal polynomial).
#[derive(Debug, Clone, PartialEq)]
pub struct VerblunskySeq<T: Real> {
    alphas: Vec<C<T>>,
}

impl<T: Real> VerblunskySeq<T> {
    pub fn new(alphas: Vec<C<T>>) -> Result<Self> {
        let n = alphas.len();
        for (k, a) in alphas.iter().enumerate() {
            let m = a.norm();
            if k + 1 < n && m >= T::one() {
                return Err(Error::InvalidInput(format!(
                    "coefficient {} has modulus {} >= 1",
                    k, m
                )));
            }
            if m > T::one() + lit::<T>(1e-12) {
                return Err(Error::InvalidInput(format!(
                    "terminal coefficient has modulus {} > 1",
                    m
                )));
            }
        }
        Ok(VerblunskySeq { alphas })
    }

    pub fn alphas(&self) -> &[C<T>] {
        &self.alphas
    }

    pub fn len(&self) -> usize {
        self.alphas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alphas.is_empty()
    }

    /// `rho_k = sqrt(1 - |alpha_k|^2)`.
    pub fn rho(&self, k: usize) -> T {
        (T::one() - self.alphas[k].norm_sqr()).max(T::zero()).sqrt()
    }

    /// Appends a terminal unimodular coefficient (dilation construction).
    pub fn extended(&self, lambda: C<T>, tol: T) -> Result<Self> {
        if (lambda.norm() - T::one()).abs() > tol {
            return Err(Error::InvalidInput(format!(
                "terminal coefficient must be unimodular, got modulus {}",
                lambda.norm()
            )));
        }
        let mut alphas = self.alphas.clone();
        alphas.push(lambda);
        Ok(VerblunskySeq { alphas })
    }
}

/// Monic polynomial with the foci as roots.
pub fn monic_from_foci<T: Real>(f: &FociSet<T>) -> ComplexPoly<T> {
    ComplexPoly::from_roots(f.foci())
}

/// One recursion update: from monic `phi_k` of degree `k` and coefficient
/// `alpha_k` produce `(phi_{k+1}, phi*_{k+1})`.
pub fn szego_step<T: Real>(
    phi_k: &ComplexPoly<T>,
    alpha_k: C<T>,
) -> Result<(ComplexPoly<T>, ComplexPoly<T>)> {
    if alpha_k.norm() > T::one() + lit::<T>(1e-12) {
        return Err(Error::InvalidInput(format!(
            "recursion coefficient has modulus {} > 1",
            alpha_k.norm()
        )));
    }
    let k = phi_k.degree();
    let star = phi_k.reverse(k)?;
    let z_phi = phi_k.shift_up(1);
    let next = z_phi.sub(&star.scale(alpha_k.conj()));
    let next_star = star.sub(&z_phi.scale(alpha_k));
    Ok((next, next_star))
}

/// Run the recursion from `phi_0 = 1` through a full coefficient sequence.
pub fn szego_chain<T: Real>(alphas: &VerblunskySeq<T>) -> Result<ComplexPoly<T>> {
    let mut phi = ComplexPoly::one();
    for &a in alphas.alphas() {
        phi = szego_step(&phi, a)?.0;
    }
    Ok(phi)
}

/// Invert the recursion: recover `alpha_0, ..., alpha_{n-1}` from a monic
/// degree-`n` polynomial with all roots in the open disk.
///
/// The downdate `phi_k = (phi_{k+1} + conj(alpha_k) phi*_{k+1}) / (z (1 - |alpha_k|^2))`
/// divides by `z` through a coefficient shift after checking that the
/// constant term cancelled as it must.
pub fn verblunsky_from_poly<T: Real>(
    phi_n: &ComplexPoly<T>,
    tol: T,
) -> Result<VerblunskySeq<T>> {
    let n = phi_n.degree();
    if (phi_n.coeff(n) - C::new(T::one(), T::zero())).norm() > tol {
        return Err(Error::InvalidInput("polynomial must be monic".into()));
    }
    if n >= 1 {
        for r in phi_n.roots(tol)? {
            if r.norm() >= T::one() {
                return Err(Error::InvalidInput(format!(
                    "root of modulus {} is not inside the unit disk",
                    r.norm()
                )));
            }
        }
    }
    let mut alphas = vec![C::new(T::zero(), T::zero()); n];
    let mut phi = phi_n.clone();
    for k in (0..n).rev() {
        let alpha = -phi.coeff(0).conj();
        let m = alpha.norm();
        if m >= T::one() {
            return Err(Error::InvalidInput(format!(
                "downdate produced |alpha_{}| = {} >= 1",
                k, m
            )));
        }
        alphas[k] = alpha;
        let star = phi.reverse(k + 1)?;
        let numer = phi.add(&star.scale(alpha.conj()));
        let shifted = numer.shift_down(tol)?;
        let denom = T::one() - m * m;
        phi = shifted.scale(C::new(denom.recip(), T::zero()));
    }
    VerblunskySeq::new(alphas)
}

/// Paraorthogonal polynomial `z phi_{n-1} - conj(lambda) phi*_{n-1}`.
pub fn popuc<T: Real>(
    phi: &ComplexPoly<T>,
    lambda: C<T>,
    tol: T,
) -> Result<ComplexPoly<T>> {
    if (lambda.norm() - T::one()).abs() > tol {
        return Err(Error::InvalidInput(format!(
            "lambda must be unimodular, got modulus {}",
            lambda.norm()
        )));
    }
    let n1 = phi.degree();
    let star = phi.reverse(n1)?;
    Ok(phi.shift_up(1).sub(&star.scale(lambda.conj())))
}

/// The `n` distinct points on the circle extending the foci for a given
/// unimodular `lambda`, sorted by increasing principal argument.
///
/// Root finding delegates to the monotone lifted-argument solver in
/// [`blaschke`], which is unconditionally convergent here.
pub fn paraorthogonal_extension<T: Real>(
    f: &FociSet<T>,
    lambda: C<T>,
    tol: T,
) -> Result<Vec<C<T>>> {
    let b = blaschke::BlaschkeProduct::from_foci(f)?;
    let mut pts = blaschke::solve(&b, lambda, tol)?;
    pts.sort_by(|a, b| {
        principal_arg_key(*a)
            .partial_cmp(&principal_arg_key(*b))
            .unwrap()
    });
    Ok(pts)
}

fn principal_arg_key<T: Real>(z: C<T>) -> T {
    z.arg()
}

/// Recover `phi_{n-1}` from two paraorthogonal root sets at distinct
/// unimodular parameters.
pub fn wendroff_recover<T: Real>(
    z1: &[C<T>],
    lambda1: C<T>,
    z2: &[C<T>],
    lambda2: C<T>,
    tol: T,
) -> Result<ComplexPoly<T>> {
    if z1.len() != z2.len() || z1.is_empty() {
        return Err(Error::InvalidInput(
            "point sets must be nonempty and equal-sized".into(),
        ));
    }
    for (name, l) in [("lambda1", lambda1), ("lambda2", lambda2)] {
        if (l.norm() - T::one()).abs() > tol {
            return Err(Error::InvalidInput(format!("{} must be unimodular", name)));
        }
    }
    let dl = lambda2.conj() - lambda1.conj();
    if dl.norm() <= tol {
        return Err(Error::InvalidInput("parameters must be distinct".into()));
    }
    let p1 = ComplexPoly::from_roots(z1);
    let p2 = ComplexPoly::from_roots(z2);
    let inv = dl.inv();
    let z_phi = p1.scale(lambda2.conj()).sub(&p2.scale(lambda1.conj())).scale(inv);
    let phi = z_phi.shift_down(tol.sqrt())?;
    let star = p1.sub(&p2).scale(inv);
    // Consistency: the second expression must be the conjugate reversal of
    // the first; inconsistent inputs (not extensions of a common
    // polynomial) break this.
    let n1 = phi.degree();
    let check = phi.reverse(n1)?.sub(&star);
    let scale = phi.max_coeff().max(T::one());
    if check.max_coeff() > tol.sqrt() * scale {
        return Err(Error::Inconsistent(
            "point sets are not extensions of a common polynomial".into(),
        ));
    }
    Ok(phi)
}

/// Sort key on the circle: argument wrapped to `[0, 2pi)`.
pub fn ccw_key<T: Real>(z: C<T>) -> T {
    wrap_angle(z.arg())
}
