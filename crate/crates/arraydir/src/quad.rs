//! Adaptive tensor-product Gauss–Legendre quadrature over the sphere.
//!
//! Used as the ground-truth oracle for the closed-form directivity path.
//! Panels are subdivided greedily by estimated error until the global sum
//! meets a relative target.

use crate::error::{Error, Result};
use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Relative tolerance the oracle aims for.
pub const REL_TOL: f64 = 1e-9;
/// Absolute error floor; integrals below this are considered zero.
pub const ABS_FLOOR: f64 = 1e-14;
/// Node budget per integral (2^24).
pub const MAX_NODES: usize = 1 << 24;

const LO_ORDER: usize = 12;
const HI_ORDER: usize = 15;

/// Gauss–Legendre nodes and weights on `[-1, 1]`, computed once by Newton
/// iteration on the Legendre recurrence.
fn gl_rule(n: usize) -> &'static (Vec<f64>, Vec<f64>) {
    static RULES: OnceLock<[(Vec<f64>, Vec<f64>); 2]> = OnceLock::new();
    let rules = RULES.get_or_init(|| [compute_gl(LO_ORDER), compute_gl(HI_ORDER)]);
    match n {
        LO_ORDER => &rules[0],
        HI_ORDER => &rules[1],
        _ => unreachable!("only the two cached orders are used"),
    }
}

fn compute_gl(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        // Chebyshev-like initial guess, then Newton on P_n(x) = 0.
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_and_derivative(n, x);
            let dx = p / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_and_derivative(n, x);
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn legendre_and_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for j in 2..=n {
        let pj = ((2 * j - 1) as f64 * x * p1 - (j - 1) as f64 * p0) / j as f64;
        p0 = p1;
        p1 = pj;
    }
    let dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, dp)
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    t0: f64,
    t1: f64,
    p0: f64,
    p1: f64,
    value: f64,
    err: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.err == other.err
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.err.total_cmp(&other.err)
    }
}

fn eval_panel<F: Fn(f64, f64) -> f64>(f: &F, t0: f64, t1: f64, p0: f64, p1: f64) -> Panel {
    let tensor = |order: usize| -> f64 {
        let (nodes, weights) = gl_rule(order);
        let ct = 0.5 * (t1 - t0);
        let mt = 0.5 * (t1 + t0);
        let cp = 0.5 * (p1 - p0);
        let mp = 0.5 * (p1 + p0);
        let mut acc = 0.0;
        for (ti, wi) in nodes.iter().zip(weights) {
            let theta = mt + ct * ti;
            let mut row = 0.0;
            for (pj, wj) in nodes.iter().zip(weights) {
                row += wj * f(theta, mp + cp * pj);
            }
            acc += wi * row;
        }
        acc * ct * cp
    };
    let lo = tensor(LO_ORDER);
    let hi = tensor(HI_ORDER);
    Panel {
        t0,
        t1,
        p0,
        p1,
        value: hi,
        err: (hi - lo).abs(),
    }
}

const NODES_PER_PANEL: usize = LO_ORDER * LO_ORDER + HI_ORDER * HI_ORDER;

/// `∫₀^π ∫₀^{2π} f(θ, φ) dφ dθ` to the module's relative tolerance.
pub fn integrate_sphere<F: Fn(f64, f64) -> f64>(f: F) -> Result<f64> {
    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut nodes_used = 0usize;
    let (nt, np) = (4, 8);
    for i in 0..nt {
        for j in 0..np {
            let t0 = PI * i as f64 / nt as f64;
            let t1 = PI * (i + 1) as f64 / nt as f64;
            let p0 = 2.0 * PI * j as f64 / np as f64;
            let p1 = 2.0 * PI * (j + 1) as f64 / np as f64;
            heap.push(eval_panel(&f, t0, t1, p0, p1));
            nodes_used += NODES_PER_PANEL;
        }
    }

    let mut total: f64 = heap.iter().map(|p| p.value).sum();
    let mut total_err: f64 = heap.iter().map(|p| p.err).sum();

    while total_err > (REL_TOL * total.abs()).max(ABS_FLOOR) {
        if nodes_used + 4 * NODES_PER_PANEL > MAX_NODES {
            return Err(Error::QuadratureNotConverged {
                nodes: nodes_used,
                rel_error: total_err / total.abs().max(1e-300),
            });
        }
        let worst = heap.pop().expect("heap never empties");
        total -= worst.value;
        total_err -= worst.err;
        let tm = 0.5 * (worst.t0 + worst.t1);
        let pm = 0.5 * (worst.p0 + worst.p1);
        for (a, b, c, d) in [
            (worst.t0, tm, worst.p0, pm),
            (worst.t0, tm, pm, worst.p1),
            (tm, worst.t1, worst.p0, pm),
            (tm, worst.t1, pm, worst.p1),
        ] {
            let child = eval_panel(&f, a, b, c, d);
            total += child.value;
            total_err += child.err;
            heap.push(child);
        }
        nodes_used += 4 * NODES_PER_PANEL;
        // Incremental sums drift; refresh periodically.
        if heap.len() % 512 == 0 {
            total = heap.iter().map(|p| p.value).sum();
            total_err = heap.iter().map(|p| p.err).sum();
        }
    }

    Ok(heap.iter().map(|p| p.value).sum())
}
