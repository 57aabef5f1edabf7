//! Deterministic grid design: uniform planar array geometry, the SEV line
//! search for the optimal element spacing, and placement on the desired
//! plane by rotation.
//!
//! The grid is labeled column-major: element `i` (1-based) sits at
//! `x = ((i-1) mod n1)·d`, `y = ⌊(i-1)/n1⌋·d`. Pairwise quantities reduce
//! to the integer index differences `(ψ1, ψ2)`, which makes the spacing
//! objective cheap to evaluate for any grid size.

use crate::directivity::{directivity_analytic, DirectivityReport, ElementPattern};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_area, rotation_matrix, ArrayLayout, DirectionSpec, Vec3};
use crate::kernel::sinc_kernel_d2;

/// A regular `n1 x n2` grid with spacing `d_min`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UpaSpec {
    pub n1: usize,
    pub n2: usize,
    pub d_min: f64,
}

impl UpaSpec {
    pub fn n_elements(&self) -> usize {
        self.n1 * self.n2
    }
}

/// SEV line-search controls.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SevConfig {
    /// Grid step; the result is exact to within one step.
    pub step_c: f64,
    /// Hard cap on the searched distance.
    pub d_cap: f64,
    /// Iteration guard; the cap normally fires first.
    pub max_iters: usize,
}

impl SevConfig {
    /// Default step 1e-3 with a cap of ten wavelengths.
    pub fn for_direction(dir: &DirectionSpec) -> Self {
        SevConfig {
            step_c: 1e-3,
            d_cap: 10.0 * dir.wavelength(),
            max_iters: usize::MAX,
        }
    }
}

/// Output of the full grid-design pipeline.
#[derive(Debug, Clone)]
pub struct OupaResult {
    pub spec: UpaSpec,
    pub d_min_star: f64,
    /// Rotated positions on the desired plane, unit amplitudes, zero phases.
    pub layout: ArrayLayout,
    pub directivity: DirectivityReport,
    /// Convex-hull area of the grid (rotation preserves it).
    pub area: f64,
    pub g_at_optimum: f64,
}

/// Column/row index differences of two 1-based element labels.
pub fn psi_indices(m: usize, n: usize, n1: usize) -> (i64, i64) {
    let psi1 = ((m - 1) % n1) as i64 - ((n - 1) % n1) as i64;
    let psi2 = ((m - 1) / n1) as i64 - ((n - 1) / n1) as i64;
    (psi1, psi2)
}

/// Pairwise grid distance from the index arithmetic alone.
pub fn upa_pair_distance(m: usize, n: usize, spec: &UpaSpec) -> f64 {
    let (psi1, psi2) = psi_indices(m, n, spec.n1);
    let diff = m.abs_diff(n) as f64;
    if psi1 == 0 {
        diff * spec.d_min / spec.n1 as f64
    } else if psi2 == 0 && m.abs_diff(n) < spec.n1 {
        diff * spec.d_min
    } else {
        spec.d_min * ((psi1 * psi1 + psi2 * psi2) as f64).sqrt()
    }
}

/// Explicit grid coordinates (z = 0), unit amplitudes, zero phases.
pub fn upa_layout(spec: &UpaSpec) -> ArrayLayout {
    let n = spec.n_elements();
    let mut positions = Vec::with_capacity(n);
    for i in 0..n {
        positions.push(Vec3::new(
            (i % spec.n1) as f64 * spec.d_min,
            (i / spec.n1) as f64 * spec.d_min,
            0.0,
        ));
    }
    ArrayLayout::uniform(positions)
}

/// z-difference of the pair `(m, n)` after rotation onto the plane:
/// `-d_min · sinθ0 · (ψ1 cosφ0 + ψ2 sinφ0)`.
pub fn upa_z_mn(m: usize, n: usize, spec: &UpaSpec, dir: &DirectionSpec) -> f64 {
    let (psi1, psi2) = psi_indices(m, n, spec.n1);
    let (sp, cp) = dir.phi0.sin_cos();
    -spec.d_min * dir.theta0.sin() * (psi1 as f64 * cp + psi2 as f64 * sp)
}

/// The spacing objective `G(d_min)` of the rotated grid, evaluated through
/// index-difference classes. Each unordered pair with index difference
/// `(a, b)` contributes the same kernel value; the class multiplicity is
/// `(n1-|a|)(n2-|b|)` over ordered pairs.
pub fn g_upa(d_min: f64, n1: usize, n2: usize, dir: &DirectionSpec) -> f64 {
    let (sp, cp) = dir.phi0.sin_cos();
    let sg = dir.theta0.sin();
    let k = dir.k;
    let inv_2k2 = 1.0 / (2.0 * k * k);
    let mut g = 0.0;
    for a in -(n1 as i64 - 1)..=(n1 as i64 - 1) {
        for b in -(n2 as i64 - 1)..=(n2 as i64 - 1) {
            if a == 0 && b == 0 {
                continue;
            }
            let mult = ((n1 as i64 - a.abs()) * (n2 as i64 - b.abs())) as f64;
            let s2 = d_min * d_min * ((a * a + b * b) as f64);
            let z = -d_min * sg * (a as f64 * cp + b as f64 * sp);
            let beta = (s2 - z * z).max(0.0).sqrt();
            // Halve: the (a,b)/(−a,−b) classes double-count unordered pairs.
            g -= 0.5 * mult * sinc_kernel_d2(beta, z, k) * inv_2k2;
        }
    }
    g
}

/// Forward line search: walk the grid `c, 2c, 3c, ...` and stop at the
/// first point where the objective increases. Returns that grid point.
pub fn sev<F: FnMut(f64) -> f64>(mut g_of_d: F, cfg: &SevConfig) -> Result<f64> {
    let c = cfg.step_c;
    let mut n = 1usize;
    let mut g_prev = g_of_d(c);
    loop {
        let d_next = (n + 1) as f64 * c;
        if d_next > cfg.d_cap || n >= cfg.max_iters {
            return Err(Error::NoLocalMinimum { d_cap: cfg.d_cap });
        }
        let g_next = g_of_d(d_next);
        if g_next - g_prev > 0.0 {
            return Ok(n as f64 * c);
        }
        g_prev = g_next;
        n += 1;
    }
}

/// Full pipeline: optimal spacing by line search, grid construction,
/// rotation onto the plane, closed-form directivity and hull area.
///
/// The spacing search runs SEV first, then continues the scan on the same
/// grid up to the cap: for small grids the first local minimum is also the
/// global one, but large grids develop a deeper later minimum, and the
/// design should use it.
pub fn oupa(dir: &DirectionSpec, n1: usize, n2: usize, cfg: &SevConfig) -> Result<OupaResult> {
    if n1 == 0 || n2 == 0 {
        return Err(Error::InvalidInput("grid dimensions must be positive".into()));
    }
    dir.require_nondegenerate()?;
    let d_sev = sev(|d| g_upa(d, n1, n2, dir), cfg)?;
    let mut d_star = d_sev;
    let mut g_star = g_upa(d_sev, n1, n2, dir);
    let mut n = 1usize;
    loop {
        let d = n as f64 * cfg.step_c;
        if d > cfg.d_cap || n >= cfg.max_iters {
            break;
        }
        let g = g_upa(d, n1, n2, dir);
        if g < g_star {
            g_star = g;
            d_star = d;
        }
        n += 1;
    }
    let spec = UpaSpec {
        n1,
        n2,
        d_min: d_star,
    };
    let flat = upa_layout(&spec);
    let rot = rotation_matrix(dir);
    let positions: Vec<Vec3> = flat.positions.iter().map(|&p| rot.mul_row(p)).collect();
    let layout = ArrayLayout::uniform(positions);
    let directivity = directivity_analytic(&layout, ElementPattern::OMNI, dir)?;
    let flat_xy: Vec<(f64, f64)> = flat.positions.iter().map(|p| (p.x, p.y)).collect();
    Ok(OupaResult {
        spec,
        d_min_star: d_star,
        layout,
        directivity,
        area: convex_hull_area(&flat_xy),
        g_at_optimum: g_upa(d_star, n1, n2, dir),
    })
}

/// Quasi-square factorization `n1·n2 = n` with minimal `|n1 - n2|`,
/// `n1 <= n2`.
pub fn quasi_square_factors(n: usize) -> (usize, usize) {
    let mut a = (n as f64).sqrt().floor() as usize;
    while a > 1 && n % a != 0 {
        a -= 1;
    }
    (a.max(1), n / a.max(1))
}
