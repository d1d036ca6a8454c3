//! Small shared helpers: a deterministic RNG for sampling-based checks and
//! angle utilities.

use crate::{lit, Real, C};

/// Deterministic splitmix64 generator.
///
/// Sampling-based verification must be reproducible byte-for-byte across
/// runs, so we use a tiny fixed-algorithm generator instead of a library
/// RNG whose stream could change between versions.
#[derive(Debug, Clone)]
pub struct Rng {
    state: u64,
}

impl Rng {
    pub fn new(seed: u64) -> Self {
        Rng { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn uniform<T: Real>(&mut self) -> T {
        let x = (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
        lit::<T>(x)
    }

    /// Uniform in `[lo, hi)`.
    pub fn range<T: Real>(&mut self, lo: T, hi: T) -> T {
        lo + self.uniform::<T>() * (hi - lo)
    }

    /// Uniform point of the closed disk of radius `r` (area measure).
    pub fn in_disk<T: Real>(&mut self, r: T) -> C<T> {
        let rad = r * self.uniform::<T>().sqrt();
        let ang = self.range(T::zero(), T::TAU());
        C::from_polar(rad, ang)
    }

    /// Uniform point of the unit circle.
    pub fn on_circle<T: Real>(&mut self) -> C<T> {
        C::from_polar(T::one(), self.range(T::zero(), T::TAU()))
    }
}

/// Reduce an angle to `[0, 2π)`.
pub fn wrap_angle<T: Real>(theta: T) -> T {
    let tau = T::TAU();
    let mut t = theta % tau;
    if t < T::zero() {
        t = t + tau;
    }
    // `%` can return exactly tau after the correction when theta is a tiny
    // negative number; normalize that case too.
    if t >= tau {
        t = t - tau;
    }
    t
}

/// Principal value of `a` in `(-π, π]`.
pub fn principal<T: Real>(a: T) -> T {
    let mut t = wrap_angle(a);
    if t > T::PI() {
        t = t - T::TAU();
    }
    t
}
