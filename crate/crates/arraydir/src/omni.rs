//! The omnidirectional (u = 0, v = 1) planar objective.
//!
//! With every element pinned to the coherence plane, the directivity
//! numerator is fixed and maximizing directivity reduces to minimizing the
//! pair sum `G` below. `G` relates to the power denominator through
//! `f2 = ΣA²/6 + 2G`, which gives the hard lower bound `G >= -ΣA²/12`.

use crate::directivity::{directivity_analytic, DirectivityReport, ElementPattern};
use crate::error::{Error, Result};
use crate::geometry::{lift_to_plane, plane_constraint_z, ArrayLayout, DirectionSpec};
use crate::kernel::sinc_kernel_d2;

/// Candidate planar placement: free `(x, y)` coordinates; z is implied by
/// the plane constraint of `dir`.
#[derive(Debug, Clone, PartialEq)]
pub struct PlanarSolution {
    pub xs: Vec<f64>,
    pub ys: Vec<f64>,
    pub dir: DirectionSpec,
    pub amplitudes: Vec<f64>,
}

impl PlanarSolution {
    pub fn uniform(xs: Vec<f64>, ys: Vec<f64>, dir: DirectionSpec) -> Self {
        let n = xs.len();
        PlanarSolution {
            xs,
            ys,
            dir,
            amplitudes: vec![1.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.xs.is_empty()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.xs.len();
        if n < 2 {
            return Err(Error::InvalidInput(
                "planar solutions need at least two elements".into(),
            ));
        }
        if self.ys.len() != n || self.amplitudes.len() != n {
            return Err(Error::InvalidInput(
                "planar solution field lengths disagree".into(),
            ));
        }
        Ok(())
    }

    /// The implied 3-D layout: coordinates lifted to the plane, zero phases.
    pub fn to_layout(&self) -> Result<ArrayLayout> {
        let xy: Vec<(f64, f64)> = self.xs.iter().copied().zip(self.ys.iter().copied()).collect();
        let positions = lift_to_plane(&xy, &self.dir)?;
        Ok(ArrayLayout {
            positions,
            amplitudes: self.amplitudes.clone(),
            phases: vec![0.0; self.xs.len()],
        })
    }
}

/// Pairwise-difference box of the planar problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoordBox {
    pub x_max: f64,
    pub y_max: f64,
}

/// Objective value together with its lower bound and the gap to it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveValue {
    pub g: f64,
    pub bound: f64,
    pub gap: f64,
}

/// Numerator sum of the omnidirectional directivity; general phases allowed.
pub fn f1_omni(layout: &ArrayLayout, dir: &DirectionSpec) -> f64 {
    let a0 = dir.unit_vector();
    let sum_a2: f64 = layout.amplitudes.iter().map(|a| a * a).sum();
    let mut pairs = 0.0;
    for j in 1..layout.len() {
        for i in 0..j {
            let d = layout.positions[j].sub(layout.positions[i]);
            let omega = dir.k * d.dot(a0) + (layout.phases[j] - layout.phases[i]);
            pairs += layout.amplitudes[j] * layout.amplitudes[i] * omega.cos();
        }
    }
    dir.theta0.cos().powi(2) * (0.5 * sum_a2 + pairs)
}

/// Denominator sum of the omnidirectional directivity:
/// `ΣA²/6 - Σ_{n>m} A_nA_m cos(α_nm) · S''(β, z)/k²`.
pub fn f2_omni(layout: &ArrayLayout, k: f64) -> Result<f64> {
    let sum_a2: f64 = layout.amplitudes.iter().map(|a| a * a).sum();
    let mut pairs = 0.0;
    for j in 1..layout.len() {
        for i in 0..j {
            let d = layout.positions[j].sub(layout.positions[i]);
            let beta = (d.x * d.x + d.y * d.y).sqrt();
            let alpha = layout.phases[j] - layout.phases[i];
            pairs += layout.amplitudes[j]
                * layout.amplitudes[i]
                * alpha.cos()
                * sinc_kernel_d2(beta, d.z, k);
        }
    }
    let f2 = sum_a2 / 6.0 - pairs / (k * k);
    if !(f2 > 0.0) {
        return Err(Error::NonPositiveDenominator { f2 });
    }
    Ok(f2)
}

/// Per-pair kernel of the planar objective: the even kernel derivative
/// composed with the plane constraint, scaled so that `f2 = ΣA²/6 + 2G`
/// holds identically (each unordered pair appears once in `G`).
pub fn pair_kernel_f(x_mn: f64, y_mn: f64, dir: &DirectionSpec) -> Result<f64> {
    let z = plane_constraint_z(x_mn, y_mn, dir)?;
    let beta = (x_mn * x_mn + y_mn * y_mn).sqrt();
    Ok(sinc_kernel_d2(beta, z, dir.k) / (2.0 * dir.k * dir.k))
}

/// `G` from raw coordinate slices; no box check. This is the optimizer's
/// fitness function, so it avoids allocation.
pub fn g_from_coords(xs: &[f64], ys: &[f64], amplitudes: &[f64], dir: &DirectionSpec) -> f64 {
    let (sp, cp) = dir.phi0.sin_cos();
    let tan_t = dir.theta0.tan();
    let k = dir.k;
    let inv_2k2 = 1.0 / (2.0 * k * k);
    let mut g = 0.0;
    for j in 1..xs.len() {
        for i in 0..j {
            let x = xs[j] - xs[i];
            let y = ys[j] - ys[i];
            let z = -tan_t * (cp * x + sp * y);
            let beta = (x * x + y * y).sqrt();
            g -= amplitudes[j] * amplitudes[i] * sinc_kernel_d2(beta, z, k) * inv_2k2;
        }
    }
    g
}

/// Evaluates the planar objective with its bound and gap, enforcing the
/// pairwise-difference box.
pub fn objective_g(sol: &PlanarSolution, bounds: &CoordBox) -> Result<ObjectiveValue> {
    sol.validate()?;
    sol.dir.require_nondegenerate()?;
    for j in 1..sol.len() {
        for i in 0..j {
            let x = (sol.xs[j] - sol.xs[i]).abs();
            let y = (sol.ys[j] - sol.ys[i]).abs();
            if x > bounds.x_max {
                return Err(Error::BoundsViolation {
                    axis: 'x',
                    value: x,
                    limit: bounds.x_max,
                });
            }
            if y > bounds.y_max {
                return Err(Error::BoundsViolation {
                    axis: 'y',
                    value: y,
                    limit: bounds.y_max,
                });
            }
        }
    }
    let g = g_from_coords(&sol.xs, &sol.ys, &sol.amplitudes, &sol.dir);
    let bound = -sol.amplitudes.iter().map(|a| a * a).sum::<f64>() / 12.0;
    Ok(ObjectiveValue {
        g,
        bound,
        gap: g - bound,
    })
}

/// Directivity of a planar solution: lift, zero phases, omni pattern.
pub fn directivity_from_planar(sol: &PlanarSolution) -> Result<DirectivityReport> {
    let layout = sol.to_layout()?;
    directivity_analytic(&layout, ElementPattern::OMNI, &sol.dir)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::directivity::directivity_quadrature;
    use crate::geometry::pairwise_differences;
    use crate::kernel::sinc_kernel_derivative;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    fn dir_default() -> DirectionSpec {
        DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0)
    }

    fn wide_box() -> CoordBox {
        CoordBox {
            x_max: 1e9,
            y_max: 1e9,
        }
    }

    #[test]
    fn f1_singleton() {
        let layout = ArrayLayout::uniform(vec![crate::geometry::Vec3::new(0.0, 0.0, 0.0)]);
        for theta0 in [0.0, 0.4, 1.1] {
            let dir = DirectionSpec::new(theta0, 0.9, 1.0);
            let want = theta0.cos().powi(2) / 2.0;
            assert!((f1_omni(&layout, &dir) - want).abs() < 1e-15);
        }
    }

    #[test]
    fn f1_on_plane_is_maximal() {
        // On the plane every pair term is cos(0) = 1.
        let dir = dir_default();
        let sol = PlanarSolution::uniform(
            vec![0.0, 1.7, -2.4, 0.3],
            vec![0.0, -0.4, 1.2, 3.3],
            dir,
        );
        let layout = sol.to_layout().unwrap();
        let n = sol.len() as f64;
        let want = dir.theta0.cos().powi(2) * (n / 2.0 + n * (n - 1.0) / 2.0);
        assert!((f1_omni(&layout, &dir) - want).abs() < 1e-10);
    }

    #[test]
    fn f1_vanishes_at_horizon() {
        let layout = ArrayLayout::uniform(vec![
            crate::geometry::Vec3::new(0.0, 0.0, 0.0),
            crate::geometry::Vec3::new(1.0, 0.0, 0.0),
        ]);
        let dir = DirectionSpec::new(FRAC_PI_2, 0.0, 1.0);
        assert!(f1_omni(&layout, &dir).abs() < 1e-30);
    }

    #[test]
    fn f2_singleton_and_decay() {
        let one = ArrayLayout::uniform(vec![crate::geometry::Vec3::new(0.0, 0.0, 0.0)]);
        assert!((f2_omni(&one, 1.0).unwrap() - 1.0 / 6.0).abs() < 1e-15);

        // Widely separated pair: kernel decays like 1/d², so f2 -> 2/6.
        let far = ArrayLayout::uniform(vec![
            crate::geometry::Vec3::new(0.0, 0.0, 0.0),
            crate::geometry::Vec3::new(2000.0, 0.0, 0.0),
        ]);
        let f2 = f2_omni(&far, 1.0).unwrap();
        assert!((f2 - 2.0 / 6.0).abs() < 1e-3);
    }

    #[test]
    fn pair_kernel_small_distance_limit() {
        // S''/(2k²) -> -1/6 as d -> 0.
        let dir = dir_default();
        let f = pair_kernel_f(1e-9, 1e-9, &dir).unwrap();
        assert!((f + 1.0 / 6.0).abs() < 1e-9, "{f}");
    }

    #[test]
    fn pair_kernel_zenith_reduces_to_flat_kernel() {
        let dir = DirectionSpec::new(0.0, 0.3, 1.0);
        for &(x, y) in &[(1.0, 2.0), (0.4, -0.9), (3.0, 0.1)] {
            let f = pair_kernel_f(x, y, &dir).unwrap();
            let beta = (x * x + y * y).sqrt();
            let want = sinc_kernel_derivative(beta, 0.0, 1.0, 2) / 2.0;
            assert!((f - want).abs() < 1e-15);
        }
    }

    #[test]
    fn pair_kernel_matches_finite_difference_composition() {
        let dir = DirectionSpec::new(0.6, 1.1, 1.0);
        let kernel = |beta: f64, z: f64| {
            let r = (beta * beta + z * z).sqrt();
            (dir.k * r).sin() / (dir.k * r)
        };
        for &(x, y) in &[(1.2, 0.7), (-2.0, 1.5), (0.9, -3.1)] {
            let z = plane_constraint_z(x, y, &dir).unwrap();
            let beta = (x * x + y * y).sqrt();
            let h = 1e-3;
            let fd = (-kernel(beta, z + 2.0 * h) + 16.0 * kernel(beta, z + h)
                - 30.0 * kernel(beta, z)
                + 16.0 * kernel(beta, z - h)
                - kernel(beta, z - 2.0 * h))
                / (12.0 * h * h);
            let f = pair_kernel_f(x, y, &dir).unwrap();
            assert!(
                (f - fd / 2.0).abs() < 1e-6,
                "({x},{y}): F={f} vs fd/2={}",
                fd / 2.0
            );
        }
    }

    #[test]
    fn bound_values_for_unit_amplitudes() {
        let dir = dir_default();
        for (n, want) in [(6usize, -0.5), (8, -2.0 / 3.0)] {
            let sol = PlanarSolution::uniform(
                (0..n).map(|i| i as f64 * 2.0).collect(),
                (0..n).map(|i| (i as f64 * 0.7).sin()).collect(),
                dir,
            );
            let val = objective_g(&sol, &wide_box()).unwrap();
            assert!((val.bound - want).abs() < 1e-15);
            assert!(val.g >= val.bound - 1e-9);
            assert!((val.gap - (val.g - val.bound)).abs() < 1e-15);
        }
    }

    #[test]
    fn bounds_violation_detected() {
        let dir = dir_default();
        let sol = PlanarSolution::uniform(vec![0.0, 11.0], vec![0.0, 0.0], dir);
        let out = objective_g(
            &sol,
            &CoordBox {
                x_max: 5.0,
                y_max: 5.0,
            },
        );
        assert!(matches!(out, Err(Error::BoundsViolation { axis: 'x', .. })));
    }

    #[test]
    fn eq23_identity_against_f2() {
        let dir = dir_default();
        let sol = PlanarSolution::uniform(
            vec![0.0, 2.8, 1.1, -0.6, 4.0],
            vec![0.3, -1.2, 2.2, 0.9, -2.5],
            dir,
        );
        let layout = sol.to_layout().unwrap();
        let f2 = f2_omni(&layout, dir.k).unwrap();
        let g = objective_g(&sol, &wide_box()).unwrap().g;
        let sum_a2 = 5.0;
        assert!((f2 - (sum_a2 / 6.0 + 2.0 * g)).abs() < 1e-10);
    }

    #[test]
    fn directivity_from_planar_matches_quadrature() {
        let dir = dir_default();
        let sol = PlanarSolution::uniform(vec![0.0, 2.3, 4.4], vec![0.0, 1.9, -0.8], dir);
        let ana = directivity_from_planar(&sol).unwrap();
        let quad =
            directivity_quadrature(&sol.to_layout().unwrap(), ElementPattern::OMNI, &dir).unwrap();
        let rel = (ana.linear - quad.linear).abs() / quad.linear;
        assert!(rel < 1e-6, "rel {rel:.2e}");
    }

    #[test]
    fn lifted_layout_has_zero_pair_phase_terms() {
        // Every pairwise difference lies on the plane, so the projection
        // onto the look direction vanishes.
        let dir = DirectionSpec::new(1.0, 2.1, 1.7);
        let sol = PlanarSolution::uniform(vec![0.0, 1.0, -2.0], vec![0.5, -0.4, 1.9], dir);
        let layout = sol.to_layout().unwrap();
        let a0 = dir.unit_vector();
        for p in pairwise_differences(&layout, 1.0) {
            let proj = p.x_mn * a0.x + p.y_mn * a0.y + p.z_mn * a0.z;
            assert!(proj.abs() < 1e-12);
        }
    }

    #[test]
    fn two_element_sweep_minimizer_coincides() {
        // For N = 2 the minimizer of g over separation also minimizes f2
        // and maximizes on-plane directivity (f1 is constant on the plane).
        let dir = dir_default();
        let mut arg_g = (f64::INFINITY, 0.0);
        let mut arg_f2 = (f64::INFINITY, 0.0);
        let mut arg_d = (f64::NEG_INFINITY, 0.0);
        for i in 1..1200 {
            let s = i as f64 * 0.01;
            let sol = PlanarSolution::uniform(vec![0.0, s], vec![0.0, 0.0], dir);
            let g = objective_g(&sol, &wide_box()).unwrap().g;
            let layout = sol.to_layout().unwrap();
            let f2 = f2_omni(&layout, dir.k).unwrap();
            let d = directivity_from_planar(&sol).unwrap().linear;
            if g < arg_g.0 {
                arg_g = (g, s);
            }
            if f2 < arg_f2.0 {
                arg_f2 = (f2, s);
            }
            if d > arg_d.0 {
                arg_d = (d, s);
            }
        }
        assert_eq!(arg_g.1, arg_f2.1, "f2 minimizer departs from g's");
        assert_eq!(arg_g.1, arg_d.1, "directivity maximizer departs from g's");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn g_respects_lower_bound_and_identity(
            coords in proptest::collection::vec((-6.0..6.0f64, -6.0..6.0f64), 2..10),
            theta0 in 0.05..1.45f64,
            phi0 in 0.0..(2.0 * PI),
        ) {
            let dir = DirectionSpec::new(theta0, phi0, 1.0);
            let xs: Vec<f64> = coords.iter().map(|c| c.0).collect();
            let ys: Vec<f64> = coords.iter().map(|c| c.1).collect();
            let n = xs.len() as f64;
            let sol = PlanarSolution::uniform(xs, ys, dir);
            let val = objective_g(&sol, &wide_box()).unwrap();
            prop_assert!(val.g >= -n / 12.0 - 1e-9);

            let layout = sol.to_layout().unwrap();
            let f2 = f2_omni(&layout, dir.k).unwrap();
            prop_assert!((f2 - (n / 6.0 + 2.0 * val.g)).abs() <= 1e-10);
        }

        #[test]
        fn g_translation_invariant(
            coords in proptest::collection::vec((-4.0..4.0f64, -4.0..4.0f64), 2..8),
            tx in -10.0..10.0f64,
            ty in -10.0..10.0f64,
        ) {
            let dir = dir_default();
            let xs: Vec<f64> = coords.iter().map(|c| c.0).collect();
            let ys: Vec<f64> = coords.iter().map(|c| c.1).collect();
            let g0 = g_from_coords(&xs, &ys, &vec![1.0; xs.len()], &dir);
            let xs2: Vec<f64> = xs.iter().map(|x| x + tx).collect();
            let ys2: Vec<f64> = ys.iter().map(|y| y + ty).collect();
            let g1 = g_from_coords(&xs2, &ys2, &vec![1.0; xs.len()], &dir);
            prop_assert!((g0 - g1).abs() <= 1e-12 * g0.abs().max(1.0));
        }

        #[test]
        fn g_permutation_invariant(
            coords in proptest::collection::vec((-4.0..4.0f64, -4.0..4.0f64), 3..8),
        ) {
            let dir = dir_default();
            let xs: Vec<f64> = coords.iter().map(|c| c.0).collect();
            let ys: Vec<f64> = coords.iter().map(|c| c.1).collect();
            let amps = vec![1.0; xs.len()];
            let g0 = g_from_coords(&xs, &ys, &amps, &dir);
            let mut xr: Vec<f64> = xs.clone();
            let mut yr: Vec<f64> = ys.clone();
            xr.reverse();
            yr.reverse();
            let g1 = g_from_coords(&xr, &yr, &amps, &dir);
            // Pair terms are identical; only the summation order moves.
            prop_assert!((g0 - g1).abs() <= 1e-13 * g0.abs().max(1e-12));
        }
    }
}
