//! End-to-end verification suites over concrete `f64` scalars. Each suite
//! exercises one headline property of the library and reports a measured
//! value against its bound; the CLI `verify` subcommand and the acceptance
//! integration test both run these.

use crate::blaschke::{self, BlaschkeProduct};
use crate::cmv;
use crate::cpoly::ComplexPoly;
use crate::ellipse::{self, EllipseComponent};
use crate::numrange;
use crate::opuc::{self, FociSet};
use crate::poncelet::{self, PonceletFamily};
use crate::util::Rng;
use crate::{Matrix64, C64, DEFAULT_TOL};
use std::f64::consts::{PI, TAU};

/// Outcome of one verification suite. `pass` holds exactly when
/// `measured <= bound`; suites combining sub-checks with different bounds
/// report the worst sub-check as a ratio against `bound = 1`.
#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub measured: f64,
    pub bound: f64,
    pub pass: bool,
}

fn finish(
    name: &'static str,
    bound: f64,
    body: impl FnOnce() -> crate::Result<f64>,
) -> CheckResult {
    let measured = body().unwrap_or(f64::NAN);
    CheckResult {
        name,
        measured,
        bound,
        pass: measured <= bound,
    }
}

fn jordan_block(n: usize) -> Matrix64 {
    let mut m = Matrix64::zeros(n);
    for i in 0..n - 1 {
        m.set(i + 1, i, C64::new(1.0, 0.0));
    }
    m
}

fn nearest_distance(p: C64, set: &[C64]) -> f64 {
    set.iter()
        .map(|q| (q - p).norm())
        .fold(f64::INFINITY, f64::min)
}

/// Numerical-range boundary of the nilpotent Jordan block is the circle of
/// radius `cos(pi / (n + 1))`, checked for n = 2..6.
pub fn check_jordan_disk() -> CheckResult {
    finish("chapple-jordan-disk", 1e-8, || {
        let mut worst: f64 = 0.0;
        for n in 2..=6 {
            let r = (PI / (n as f64 + 1.0)).cos();
            for sample in numrange::boundary(&jordan_block(n), 360)? {
                worst = worst.max((sample.lambda_phi - r).abs());
                worst = worst.max((sample.boundary_point.norm() - r).abs());
            }
        }
        Ok(worst)
    })
}

fn quintic_foci(a: f64) -> FociSet<f64> {
    FociSet::unrestricted(vec![
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(0.0, 0.0),
        C64::new(a, 0.0),
    ])
}

/// Regime counts for the one-parameter quintic family with foci
/// `{0, 0, 0, a}`: the slice `P(1, .)` has four circle solutions up to the
/// crossing threshold `a = 5/3` and two beyond it, and the positivity
/// condition holds exactly off the crossing band `[1, 5/3]`.
pub fn check_regime_counts() -> CheckResult {
    finish("regime-counts", 0.0, || {
        let mut mismatches = 0.0;
        let z0 = C64::new(1.0, 0.0);
        for (a, want_on) in [
            (0.3, 4),
            (0.7, 4),
            (0.9, 4),
            (1.2, 4),
            (1.5, 4),
            (2.0, 2),
            (2.4, 2),
        ] {
            let f = quintic_foci(a);
            let p = poncelet::bezoutian_build(&f, DEFAULT_TOL)?;
            let want_m = if a > 1.0 { 1 } else { 0 };
            if (p.big_n(), p.m(), p.d()) != (5, want_m, 0) {
                mismatches += 1.0;
            }
            let (on, off) = poncelet::on_circle_solutions(&p, z0, DEFAULT_TOL)?;
            if on.len() != want_on || on.len() + off.len() != 4 {
                mismatches += 1.0;
            }
        }
        for (a, want) in [(1.5, false), (0.9, true), (2.4, true)] {
            let (ok, _) = poncelet::mirman_condition(&quintic_foci(a), 720, DEFAULT_TOL)?;
            if ok != want {
                mismatches += 1.0;
            }
        }
        Ok(mismatches)
    })
}

/// Dehomogenized dual quartic of the quintic family, obtained by expanding
/// `conj(zeta)^4 P(z, w)` in the pole coordinate `zeta = 2zw/(z+w) = u + iv`.
fn dual_quartic(a: f64, u: f64, v: f64) -> (f64, f64) {
    let terms = [
        (a * a - 1.0) * v.powi(4),
        2.0 * (a * a - 1.0) * u * u * v * v,
        -8.0 * a * u * v * v,
        2.0 * (6.0 - 2.0 * a * a) * v * v,
        (a * a - 1.0) * u.powi(4),
        -8.0 * a * u.powi(3),
        (12.0 - 4.0 * a * a) * u * u,
        16.0 * a * u,
        -16.0,
    ];
    let value: f64 = terms.iter().sum();
    let scale: f64 = terms.iter().map(|t| t.abs()).sum();
    (value, scale)
}

/// Poles of sampled tangent chords lie on the explicit dual quartic of the
/// quintic family, for one interior and one exterior focus position.
pub fn check_dual_residual() -> CheckResult {
    finish("dual-residual", 1e-6, || {
        let mut worst: f64 = 0.0;
        for a in [0.9, 2.4] {
            let f = quintic_foci(a);
            let p = poncelet::bezoutian_build(&f, DEFAULT_TOL)?;
            let mut chords = 0usize;
            let mut j = 0usize;
            while chords < 200 {
                let z0 = C64::from_polar(1.0, TAU * j as f64 / 101.0 + 0.0137);
                j += 1;
                let (on, _) = poncelet::on_circle_solutions(&p, z0, DEFAULT_TOL)?;
                for w in on {
                    match poncelet::chord_pole(z0, w) {
                        poncelet::Pole::Finite(pole) => {
                            let (value, scale) = dual_quartic(a, pole.re, pole.im);
                            worst = worst.max(value.abs() / scale);
                            chords += 1;
                        }
                        poncelet::Pole::Infinite { .. } => {}
                    }
                }
            }
        }
        Ok(worst)
    })
}

/// The three realizations of the vertex sets (polynomial extension,
/// Blaschke solve, eigenvalues of the unitary dilation) agree pairwise.
pub fn check_equivalence() -> CheckResult {
    finish("realization-equivalence", 1e-7, || {
        let mut rng = Rng::new(0x8f3a_11c2_95d4_e607);
        let mut worst: f64 = 0.0;
        for _ in 0..20 {
            let count = 1 + (rng.next_u64() % 7) as usize;
            let foci: Vec<C64> = (0..count).map(|_| rng.in_disk(0.9)).collect();
            let f = FociSet::in_disk(foci)?;
            let phi = opuc::monic_from_foci(&f);
            let alphas = opuc::verblunsky_from_poly(&phi, DEFAULT_TOL)?;
            let b = BlaschkeProduct::from_foci(&f)?;
            for j in 0..8 {
                let lambda = C64::from_polar(1.0, TAU * j as f64 / 8.0 + 0.1);
                let ext = opuc::paraorthogonal_extension(&f, lambda, DEFAULT_TOL)?;
                let slv = blaschke::solve(&b, lambda, DEFAULT_TOL)?;
                let dil = cmv::unitary_dilation(&alphas, lambda, DEFAULT_TOL)?;
                let eig = cmv::char_poly(&dil)?.roots(DEFAULT_TOL)?;
                for z in &ext {
                    worst = worst.max(nearest_distance(*z, &slv));
                    worst = worst.max(nearest_distance(*z, &eig));
                }
                for z in &slv {
                    worst = worst.max(nearest_distance(*z, &eig));
                }
            }
        }
        Ok(worst)
    })
}

/// The cut-off CMV matrix of a polynomial's recursion coefficients has that
/// polynomial as characteristic polynomial, unit defect rank, and unit
/// operator norm.
pub fn check_characteristic_identity() -> CheckResult {
    finish("characteristic-identity", 1.0, || {
        let mut rng = Rng::new(0x2b6e_90af_31c8_d754);
        let mut worst: f64 = 0.0;
        for _ in 0..50 {
            let n = 2 + (rng.next_u64() % 6) as usize;
            let roots: Vec<C64> = (0..n).map(|_| rng.in_disk(0.9)).collect();
            let phi = ComplexPoly::from_roots(&roots);
            let alphas = opuc::verblunsky_from_poly(&phi, DEFAULT_TOL)?;
            let m = cmv::cutoff_cmv(&alphas)?;
            let chi = cmv::char_poly(&m)?;
            let mut coeff_dev: f64 = 0.0;
            for j in 0..=n {
                coeff_dev = coeff_dev.max((chi.coeff(j) - phi.coeff(j)).norm());
            }
            worst = worst.max(coeff_dev / 1e-8);
            if cmv::defect_rank(&m)? != 1 {
                worst = worst.max(2.0);
            }
            worst = worst.max((cmv::operator_norm(&m)? - 1.0).abs() / 1e-8);
        }
        Ok(worst)
    })
}

/// Distance from a point to a closed segment.
fn segment_distance(p: C64, a: C64, b: C64) -> f64 {
    let ab = b - a;
    let len_sq = ab.norm_sqr();
    if len_sq == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a).re * ab.re + (p - a).im * ab.im) / len_sq;
    let t = t.clamp(0.0, 1.0);
    (p - (a + ab.scale(t))).norm()
}

fn polygon_distance(p: C64, verts: &[C64]) -> f64 {
    let n = verts.len();
    (0..n)
        .map(|i| segment_distance(p, verts[i], verts[(i + 1) % n]))
        .fold(f64::INFINITY, f64::min)
}

/// The numerical range of the cut-off CMV matrix equals the intersection
/// of the convex hulls of the extended vertex sets, measured as a Hausdorff
/// distance between the sampled boundaries.
pub fn check_intersection_formula() -> CheckResult {
    finish("intersection-formula", 2e-3, || {
        let mut rng = Rng::new(0x7d19_c4e8_6ab0_f523);
        let mut worst: f64 = 0.0;
        for _ in 0..5 {
            let count = 2 + (rng.next_u64() % 4) as usize; // matrix size, n - 1
            let foci: Vec<C64> = (0..count).map(|_| rng.in_disk(0.8)).collect();
            let f = FociSet::in_disk(foci)?;
            let phi = opuc::monic_from_foci(&f);
            let alphas = opuc::verblunsky_from_poly(&phi, DEFAULT_TOL)?;
            let a = cmv::cutoff_cmv(&alphas)?;
            let range: Vec<C64> = numrange::boundary(&a, 720)?
                .into_iter()
                .map(|s| s.boundary_point)
                .collect();
            // Hull edges of every extended vertex set as half-planes.
            let mut planes: Vec<(C64, f64)> = Vec::new();
            for j in 0..128 {
                let lambda = C64::from_polar(1.0, TAU * j as f64 / 128.0);
                let mut pts = opuc::paraorthogonal_extension(&f, lambda, DEFAULT_TOL)?;
                pts.sort_by(|x, y| x.arg().partial_cmp(&y.arg()).unwrap());
                let centroid =
                    pts.iter().fold(C64::new(0.0, 0.0), |s, z| s + z).scale(1.0 / pts.len() as f64);
                for i in 0..pts.len() {
                    let (p1, p2) = (pts[i], pts[(i + 1) % pts.len()]);
                    let edge = p2 - p1;
                    if edge.norm() < 1e-12 {
                        continue;
                    }
                    let mut normal = C64::new(0.0, 1.0) * edge / edge.norm();
                    let mut offset = normal.re * p1.re + normal.im * p1.im;
                    if normal.re * centroid.re + normal.im * centroid.im > offset {
                        normal = -normal;
                        offset = -offset;
                    }
                    planes.push((normal, offset));
                }
            }
            let poly = numrange::halfplane_intersection(&planes)?;
            // One direction: range boundary samples against the polygon.
            for p in &range {
                worst = worst.max(polygon_distance(*p, &poly));
            }
            // Other direction: polygon vertices and edge midpoints against
            // the polyline through the dense range samples.
            let mut probes = poly.clone();
            for i in 0..poly.len() {
                probes.push((poly[i] + poly[(i + 1) % poly.len()]).scale(0.5));
            }
            for p in probes {
                worst = worst.max(polygon_distance(p, &range));
            }
        }
        Ok(worst)
    })
}

/// Every sampled envelope point of a family with all foci interior lies
/// strictly inside the disk, and the tangent-line distance law holds.
pub fn check_envelope_containment() -> CheckResult {
    finish("envelope-containment", 0.0, || {
        let mut rng = Rng::new(0x05c3_f86d_249b_71ea);
        let mut worst = f64::NEG_INFINITY;
        for _ in 0..5 {
            let count = 2 + (rng.next_u64() % 4) as usize;
            let foci: Vec<C64> = (0..count).map(|_| rng.in_disk(0.7)).collect();
            let fam = PonceletFamily::new(FociSet::in_disk(foci)?, DEFAULT_TOL)?;
            for k in 1..=fam.n() / 2 {
                for j in 0..64 {
                    let theta = TAU * j as f64 / 64.0 + 0.01;
                    let z = C64::from_polar(1.0, theta);
                    let point = poncelet::envelope_point(&fam, z, k, DEFAULT_TOL)?;
                    worst = worst.max(point.norm() - 1.0);
                    let wdot = poncelet::tau_angular_speed(&fam, z, k, 1e-5, DEFAULT_TOL)?;
                    let w = fam.tau(z, k, DEFAULT_TOL)?;
                    worst = worst.max(1.0 - poncelet::chord_distance_sq(z, w, wdot));
                }
            }
        }
        Ok(worst)
    })
}

/// Closure of the minor semiaxis at the two reference configurations, and
/// the porism: orbits close at the same count from every starting point.
pub fn check_ellipse_closure() -> CheckResult {
    finish("ellipse-closure", 1.0, || {
        let mut worst: f64 = 0.0;
        let s0 = ellipse::closure_semiaxis(C64::new(0.0, 0.0), C64::new(0.0, 0.0), 3)?;
        worst = worst.max((s0 - 0.5).abs() / 1e-10);
        let s1 = ellipse::closure_semiaxis(C64::new(0.5, 0.0), C64::new(-0.5, 0.0), 3)?;
        worst = worst.max((s1 - 0.375).abs() / 1e-8);
        let mut rng = Rng::new(0x6a02_bd4f_8c13_57e9);
        for (f1, f2, s, n) in [
            (C64::new(0.0, 0.0), C64::new(0.0, 0.0), s0, 3usize),
            (C64::new(0.5, 0.0), C64::new(-0.5, 0.0), s1, 3),
        ] {
            let e = EllipseComponent::new(f1, f2, s)?;
            for _ in 0..32 {
                let w0: C64 = rng.on_circle();
                let (_, period) = ellipse::circular_iteration(&e, w0, 4 * n, 1e-6)?;
                if period != Some(n) {
                    worst = worst.max(2.0);
                }
            }
        }
        Ok(worst)
    })
}

fn factor_residual(f: &FociSet<f64>, comps: &[EllipseComponent<f64>]) -> crate::Result<f64> {
    let p = poncelet::bezoutian_build(f, DEFAULT_TOL)?;
    let scale = p.max_coeff().max(1.0);
    let mut rng = Rng::new(0x3391_04d7_5fa8_2e6c);
    let mut ratio: Option<C64> = None;
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let z: C64 = rng.in_disk(1.2);
        let w: C64 = rng.in_disk(1.2);
        let prod = ellipse::cleared_product_slice(comps, z).eval(w);
        let pv = p.eval(z, w);
        let c = match ratio {
            Some(c) => c,
            None => {
                if prod.norm() < 1e-8 * scale {
                    continue;
                }
                let c = pv / prod;
                ratio = Some(c);
                c
            }
        };
        worst = worst.max((pv - c * prod).norm() / scale);
    }
    Ok(worst)
}

/// Factorization of the symmetric form into per-component conics, for the
/// regular pentagon and for packages harvested from random ellipses with
/// the five-step closure property; recovered components re-close.
pub fn check_package_factorization() -> CheckResult {
    finish("package-factorization", 1.0, || {
        let mut worst: f64 = 0.0;
        let pent = FociSet::in_disk(vec![C64::new(0.0, 0.0); 4])?;
        let comps = ellipse::package_factor(&pent, DEFAULT_TOL)?;
        worst = worst.max(factor_residual(&pent, &comps)? / 1e-7);
        let mut rng = Rng::new(0xc84f_27b9_016d_a3e5);
        for _ in 0..3 {
            let f1: C64 = rng.in_disk(0.3);
            let f2: C64 = rng.in_disk(0.3);
            let s = ellipse::closure_semiaxis(f1, f2, 5)?;
            let e = EllipseComponent::new(f1, f2, s)?;
            let pts = ellipse::inner_iteration(&e, false, 32, 1e-9)?;
            let f = FociSet::in_disk(pts)?;
            let comps = ellipse::package_factor(&f, DEFAULT_TOL)?;
            worst = worst.max(factor_residual(&f, &comps)? / 1e-7);
            worst = worst.max((comps[0].f1() - f1).norm() / 1e-7);
            worst = worst.max((comps[0].f2() - f2).norm() / 1e-7);
            worst = worst.max((comps[0].s() - s).abs() / 1e-7);
            for comp in &comps {
                if comp.is_degenerate() {
                    continue;
                }
                let w0: C64 = rng.on_circle();
                let (_, period) = ellipse::circular_iteration(comp, w0, 20, 1e-6)?;
                if period != Some(5) {
                    worst = worst.max(2.0);
                }
            }
        }
        Ok(worst)
    })
}

/// Rank and multiplicity bookkeeping of the diagonal curves for n = 24.
pub fn check_combinatorics() -> CheckResult {
    finish("diagonal-combinatorics", 0.0, || {
        let ranks = [24, 12, 8, 6, 24, 4, 24, 3, 8, 12, 24, 2];
        let mut mismatches = 0.0;
        for (k, want) in (1..=12).zip(ranks) {
            let (rank, turns) = poncelet::component_rank(24, k)?;
            if rank != want || turns != k / gcd(24, k) {
                mismatches += 1.0;
            }
        }
        for (d, want) in [(24, 4), (12, 2), (8, 2), (6, 1), (4, 1), (3, 1)] {
            if poncelet::totient_count(24, d)? != want {
                mismatches += 1.0;
            }
        }
        Ok(mismatches)
    })
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// The closed-form boundary argument derivative of a Blaschke product
/// matches finite differences of its monotone lift.
pub fn check_derivative_identity() -> CheckResult {
    finish("derivative-identity", 1e-6, || {
        let mut rng = Rng::new(0x48d1_6f2c_b3a7_9e05);
        let mut worst: f64 = 0.0;
        let h = 1e-5;
        for _ in 0..10 {
            let count = 1 + (rng.next_u64() % 7) as usize;
            let foci: Vec<C64> = (0..count).map(|_| rng.in_disk(0.9)).collect();
            let b = BlaschkeProduct::from_foci(&FociSet::in_disk(foci)?)?;
            for j in 0..64 {
                let theta = TAU * j as f64 / 64.0 + 0.007;
                let exact = blaschke::arg_derivative(&b, C64::from_polar(1.0, theta))?;
                let fd = (blaschke::lifted_arg(&b, theta + h)
                    - blaschke::lifted_arg(&b, theta - h))
                    / (2.0 * h);
                worst = worst.max((exact - fd).abs());
            }
        }
        Ok(worst)
    })
}

/// Every verification suite, in reporting order.
pub fn run_all() -> Vec<CheckResult> {
    vec![
        check_jordan_disk(),
        check_regime_counts(),
        check_dual_residual(),
        check_equivalence(),
        check_characteristic_identity(),
        check_intersection_formula(),
        check_envelope_containment(),
        check_ellipse_closure(),
        check_package_factorization(),
        check_combinatorics(),
        check_derivative_identity(),
    ]
}

/// Look up a single suite by its reported name.
pub fn run_named(name: &str) -> Option<CheckResult> {
    match name {
        "chapple-jordan-disk" => Some(check_jordan_disk()),
        "regime-counts" => Some(check_regime_counts()),
        "dual-residual" => Some(check_dual_residual()),
        "realization-equivalence" => Some(check_equivalence()),
        "characteristic-identity" => Some(check_characteristic_identity()),
        "intersection-formula" => Some(check_intersection_formula()),
        "envelope-containment" => Some(check_envelope_containment()),
        "ellipse-closure" => Some(check_ellipse_closure()),
        "package-factorization" => Some(check_package_factorization()),
        "diagonal-combinatorics" => Some(check_combinatorics()),
        "derivative-identity" => Some(check_derivative_identity()),
        _ => None,
    }
}
