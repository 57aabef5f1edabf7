//! Even-order z-derivatives of the spherical sinc kernel
//! `S(β, z) = sin(k·r)/(k·r)` with `r = sqrt(β² + z²)`.
//!
//! These show up in every closed-form radiated-power sum: the pair term of
//! the power integral is a combination of such derivatives evaluated at the
//! pairwise element offsets. The implementation expands
//! `d^n/dz^n S = Σ coeff · z^p · c_m(r)` over the helper functions
//! `c_m(r) = ((1/r) d/dr)^m S`, which reduce to scaled spherical Bessel
//! functions and satisfy a two-term recurrence.

/// Switch point between the Maclaurin series and the closed-form recurrence
/// for `q_m(x) = ((1/x) d/dx)^m sinc(x)`. Below it the series has little
/// cancellation; above it the upward recurrence (seeded with the exact
/// `q_0`, `q_1` forms) is the accurate route.
const SERIES_X_MAX: f64 = 9.0;

fn use_series(max_m: usize, x: f64) -> bool {
    // The upward recurrence loses accuracy once the order approaches the
    // argument, so stretch the series regime for high orders.
    x <= SERIES_X_MAX.max(max_m as f64 + 2.0)
}

/// `q_m(x)` for `m = 0..=max_m`, written into `out[0..=max_m]`.
///
/// `q_m(x) = (-1)^m j_m(x)/x^m` in spherical-Bessel terms.
pub fn q_table(max_m: usize, x: f64, out: &mut [f64]) {
    debug_assert!(out.len() > max_m);
    if use_series(max_m, x) {
        for (m, slot) in out.iter_mut().enumerate().take(max_m + 1) {
            *slot = q_series(m, x);
        }
    } else {
        out[0] = x.sin() / x;
        if max_m >= 1 {
            out[1] = (x * x.cos() - x.sin()) / (x * x * x);
        }
        let x2 = x * x;
        for m in 1..max_m {
            out[m + 1] = -((2 * m + 1) as f64 * out[m] + out[m - 1]) / x2;
        }
    }
}

/// Maclaurin series of `q_m`; converges for moderate `x` and handles the
/// removable singularity at `x = 0` exactly.
fn q_series(m: usize, x: f64) -> f64 {
    // First term: (-1)^m / (2m+1)!!
    let mut term = if m % 2 == 0 { 1.0 } else { -1.0 };
    for j in (3..=(2 * m + 1)).step_by(2) {
        term /= j as f64;
    }
    let x2 = x * x;
    let mut acc = term;
    for i in 0..200usize {
        term *= -x2 / (((2 * i + 2) * (2 * i + 2 * m + 3)) as f64);
        acc += term;
        if term.abs() <= f64::EPSILON * acc.abs().max(1e-300) {
            break;
        }
    }
    acc
}

/// Second z-derivative of the kernel; the hot path of the planar objective.
///
/// `d²S/dz² = k² q₁(kr) + z² k⁴ q₂(kr)`.
pub fn sinc_kernel_d2(beta: f64, z: f64, k: f64) -> f64 {
    let r = (beta * beta + z * z).sqrt();
    let x = k * r;
    let (q1, q2) = if use_series(2, x) {
        (q_series(1, x), q_series(2, x))
    } else {
        let q0 = x.sin() / x;
        let q1 = (x * x.cos() - x.sin()) / (x * x * x);
        let q2 = -(3.0 * q1 + q0) / (x * x);
        (q1, q2)
    };
    k * k * q1 + z * z * k.powi(4) * q2
}

/// Precomputed expansion of `d^order/dz^order S` in terms of `z^p c_m(r)`.
#[derive(Debug, Clone)]
pub struct ZDerivative {
    order: usize,
    /// `(z power, c index, coefficient)` triples.
    terms: Vec<(u32, usize, f64)>,
}

impl ZDerivative {
    pub fn new(order: usize) -> Self {
        // d/dz (z^p c_m) = p z^{p-1} c_m + z^{p+1} c_{m+1}
        let mut cur: Vec<((u32, usize), f64)> = vec![((0, 0), 1.0)];
        for _ in 0..order {
            let mut next: Vec<((u32, usize), f64)> = Vec::new();
            let mut add = |key: (u32, usize), c: f64| {
                if let Some(slot) = next.iter_mut().find(|(k, _)| *k == key) {
                    slot.1 += c;
                } else {
                    next.push((key, c));
                }
            };
            for &((p, m), c) in &cur {
                if p > 0 {
                    add((p - 1, m), p as f64 * c);
                }
                add((p + 1, m + 1), c);
            }
            cur = next;
        }
        let terms = cur.into_iter().map(|((p, m), c)| (p, m, c)).collect();
        ZDerivative { order, terms }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Largest `c_m` index the expansion touches.
    pub fn max_c_index(&self) -> usize {
        self.terms.iter().map(|&(_, m, _)| m).max().unwrap_or(0)
    }

    /// Evaluates given a precomputed `q_m(k·r)` table (`q[m]`, `m` up to
    /// [`Self::max_c_index`]).
    pub fn eval_from_q(&self, q: &[f64], z: f64, k: f64) -> f64 {
        let mut acc = 0.0;
        for &(p, m, c) in &self.terms {
            let zp = match p {
                0 => 1.0,
                1 => z,
                2 => z * z,
                _ => z.powi(p as i32),
            };
            // c_m(r) = k^{2m} q_m(k r)
            acc += c * zp * k.powi(2 * m as i32) * q[m];
        }
        acc
    }
}

/// `d^order/dz^order [ sin(k·sqrt(β²+z²)) / (k·sqrt(β²+z²)) ]`.
///
/// `order = 0` returns the kernel itself. Coincident offsets
/// (`β = z = 0`) evaluate through the series limit.
pub fn sinc_kernel_derivative(beta: f64, z: f64, k: f64, order: usize) -> f64 {
    if order == 2 {
        return sinc_kernel_d2(beta, z, k);
    }
    let deriv = ZDerivative::new(order);
    let r = (beta * beta + z * z).sqrt();
    let mut q = vec![0.0; deriv.max_c_index() + 1];
    q_table(deriv.max_c_index(), k * r, &mut q);
    deriv.eval_from_q(&q, z, k)
}
