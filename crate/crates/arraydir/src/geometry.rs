//! Positions, directions, rotations, the plane constraint and hull areas.
//!
//! Everything downstream works with the same few building blocks: element
//! positions as [`Vec3`], a desired look direction as [`DirectionSpec`], and
//! the plane `sin(θ0)cos(φ0)·x + sin(θ0)sin(φ0)·y + cos(θ0)·z = 0` on which
//! zero-phase layouts radiate coherently toward `(θ0, φ0)`.

use crate::error::{Error, Result};

/// Threshold below which `cos(theta0)` is treated as singular for the
/// plane constraint.
pub const COS_THETA_EPS: f64 = 1e-9;

/// A point or displacement in 3-D space, in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, other: Vec3) -> f64 {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn sub(self, other: Vec3) -> Vec3 {
        Vec3::new(self.x - other.x, self.y - other.y, self.z - other.z)
    }
}

/// A 3x3 real matrix, row-major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat3(pub [[f64; 3]; 3]);

impl Mat3 {
    pub fn identity() -> Self {
        Mat3([[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]])
    }

    /// `M v` with `v` as a column vector.
    pub fn mul_vec(&self, v: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            m[0][0] * v.x + m[0][1] * v.y + m[0][2] * v.z,
            m[1][0] * v.x + m[1][1] * v.y + m[1][2] * v.z,
            m[2][0] * v.x + m[2][1] * v.y + m[2][2] * v.z,
        )
    }

    /// `p M` with `p` as a row vector. Position matrices multiply rotations
    /// from the right, so this is the action used to place layouts.
    pub fn mul_row(&self, p: Vec3) -> Vec3 {
        let m = &self.0;
        Vec3::new(
            p.x * m[0][0] + p.y * m[1][0] + p.z * m[2][0],
            p.x * m[0][1] + p.y * m[1][1] + p.z * m[2][1],
            p.x * m[0][2] + p.y * m[1][2] + p.z * m[2][2],
        )
    }

    pub fn transpose(&self) -> Mat3 {
        let m = &self.0;
        Mat3([
            [m[0][0], m[1][0], m[2][0]],
            [m[0][1], m[1][1], m[2][1]],
            [m[0][2], m[1][2], m[2][2]],
        ])
    }

    pub fn det(&self) -> f64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
            - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }
}

/// An antenna array: element positions plus per-element excitation.
#[derive(Debug, Clone, PartialEq)]
pub struct ArrayLayout {
    pub positions: Vec<Vec3>,
    /// Relative amplitudes, all `>= 0`, at least one `> 0`.
    pub amplitudes: Vec<f64>,
    /// Relative phases in radians.
    pub phases: Vec<f64>,
}

impl ArrayLayout {
    /// Layout with unit amplitudes and zero phases.
    pub fn uniform(positions: Vec<Vec3>) -> Self {
        let n = positions.len();
        ArrayLayout {
            positions,
            amplitudes: vec![1.0; n],
            phases: vec![0.0; n],
        }
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    /// Checks the structural invariants: equal lengths, `N >= 1`,
    /// nonnegative amplitudes with at least one positive.
    pub fn validate(&self) -> Result<()> {
        let n = self.positions.len();
        if n == 0 {
            return Err(Error::InvalidInput("layout has no elements".into()));
        }
        if self.amplitudes.len() != n || self.phases.len() != n {
            return Err(Error::InvalidInput(format!(
                "layout field lengths disagree: {} positions, {} amplitudes, {} phases",
                n,
                self.amplitudes.len(),
                self.phases.len()
            )));
        }
        if self.amplitudes.iter().any(|&a| !(a >= 0.0)) {
            return Err(Error::InvalidInput("amplitudes must be >= 0".into()));
        }
        if !self.amplitudes.iter().any(|&a| a > 0.0) {
            return Err(Error::InvalidInput(
                "at least one amplitude must be positive".into(),
            ));
        }
        Ok(())
    }
}

/// The desired look direction and operating wave number.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectionSpec {
    /// Elevation (polar) angle in radians, `[0, pi]`.
    pub theta0: f64,
    /// Azimuth angle in radians, `[0, 2*pi)`.
    pub phi0: f64,
    /// Wave number in 1/m, `> 0`.
    pub k: f64,
}

impl DirectionSpec {
    pub fn new(theta0: f64, phi0: f64, k: f64) -> Self {
        DirectionSpec { theta0, phi0, k }
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.k
    }

    /// Unit vector toward `(theta0, phi0)`; this is also the normal of the
    /// coherence plane.
    pub fn unit_vector(&self) -> Vec3 {
        unit_observation_vector(self.theta0, self.phi0)
    }

    /// Errors out when the plane constraint is singular at this elevation.
    pub fn require_nondegenerate(&self) -> Result<()> {
        if self.theta0.cos().abs() < COS_THETA_EPS {
            Err(Error::DegenerateDirection { theta0: self.theta0 })
        } else {
            Ok(())
        }
    }
}

/// Unit observation vector `(sinθcosφ, sinθsinφ, cosθ)`.
pub fn unit_observation_vector(theta: f64, phi: f64) -> Vec3 {
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    Vec3::new(st * cp, st * sp, ct)
}

/// Rotation taking the xy-plane onto the coherence plane of `dir` under the
/// row action `p_hat = p * R`.
///
/// Axis-angle about the in-plane axis `(sinφ0, -cosφ0, 0)` by the elevation
/// angle. Rows one and two span the target plane; row three is its normal.
pub fn rotation_matrix(dir: &DirectionSpec) -> Mat3 {
    // gamma = theta0 keeps row three equal to the plane normal on both
    // hemispheres; for theta0 <= pi/2 this coincides with acos|cos(theta0)|.
    let gamma = dir.theta0;
    let (sg, cg) = gamma.sin_cos();
    let mu = 1.0 - cg;
    let (sp, cp) = dir.phi0.sin_cos();
    Mat3([
        [sp * sp * mu + cg, -cp * sp * mu, -cp * sg],
        [-sp * cp * mu, cp * cp * mu + cg, -sp * sg],
        [cp * sg, sp * sg, cg],
    ])
}

/// The z-offset that keeps a pairwise difference `(x_nm, y_nm)` on the
/// coherence plane: `z = -tanθ0 (cosφ0 x + sinφ0 y)`.
///
/// The sign is fixed by requiring the plane equation
/// `sinθ0cosφ0·x + sinθ0sinφ0·y + cosθ0·z = 0` to hold exactly.
pub fn plane_constraint_z(x_nm: f64, y_nm: f64, dir: &DirectionSpec) -> Result<f64> {
    dir.require_nondegenerate()?;
    let (sp, cp) = dir.phi0.sin_cos();
    Ok(-dir.theta0.tan() * (cp * x_nm + sp * y_nm))
}

/// Lifts planar coordinates onto the coherence plane by assigning each point
/// the z of [`plane_constraint_z`].
pub fn lift_to_plane(xy_points: &[(f64, f64)], dir: &DirectionSpec) -> Result<Vec<Vec3>> {
    dir.require_nondegenerate()?;
    xy_points
        .iter()
        .map(|&(x, y)| Ok(Vec3::new(x, y, plane_constraint_z(x, y, dir)?)))
        .collect()
}

/// One unordered element pair and its coordinate differences.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairDifference {
    /// Zero-based indices with `n > m`.
    pub m: usize,
    pub n: usize,
    pub x_mn: f64,
    pub y_mn: f64,
    pub z_mn: f64,
    /// `k * sqrt(x² + y² + z²)`; geometric distance when `k = 1`.
    pub d_mn: f64,
}

/// All unordered pair differences of a layout. `k` scales the reported
/// distance; pass `1.0` for the plain Euclidean one.
pub fn pairwise_differences(layout: &ArrayLayout, k: f64) -> Vec<PairDifference> {
    let n = layout.len();
    let mut out = Vec::with_capacity(n * (n - 1) / 2);
    for j in 1..n {
        for i in 0..j {
            let d = layout.positions[j].sub(layout.positions[i]);
            out.push(PairDifference {
                m: i,
                n: j,
                x_mn: d.x,
                y_mn: d.y,
                z_mn: d.z,
                d_mn: k * d.norm(),
            });
        }
    }
    out
}

/// Area of the 2-D convex hull by monotone chain; degenerate inputs
/// (fewer than three points, collinear sets) return 0.
pub fn convex_hull_area(points: &[(f64, f64)]) -> f64 {
    if points.len() < 3 {
        return 0.0;
    }
    let mut pts: Vec<(f64, f64)> = points.to_vec();
    pts.sort_by(|a, b| a.partial_cmp(b).expect("finite coordinates"));
    pts.dedup();
    if pts.len() < 3 {
        return 0.0;
    }

    let cross = |o: (f64, f64), a: (f64, f64), b: (f64, f64)| {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };

    // Monotone chain; collinear points are dropped (cross <= 0 pops).
    let mut lower: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0.0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(f64, f64)> = Vec::with_capacity(pts.len());
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0.0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);

    let ring = &lower;
    if ring.len() < 3 {
        return 0.0;
    }
    let mut twice_area = 0.0;
    for i in 0..ring.len() {
        let (x0, y0) = ring[i];
        let (x1, y1) = ring[(i + 1) % ring.len()];
        twice_area += x0 * y1 - x1 * y0;
    }
    0.5 * twice_area.abs()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, SQRT_2};

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    #[test]
    fn observation_vector_axes() {
        let v = unit_observation_vector(0.0, 1.234);
        assert_close(v.x, 0.0, 1e-14);
        assert_close(v.y, 0.0, 1e-14);
        assert_close(v.z, 1.0, 1e-14);

        let v = unit_observation_vector(FRAC_PI_2, 0.0);
        assert_close(v.x, 1.0, 1e-14);
        assert_close(v.y, 0.0, 1e-14);
        assert_close(v.z, 0.0, 1e-14);

        let v = unit_observation_vector(FRAC_PI_4, FRAC_PI_4);
        assert_close(v.x, 0.5, 1e-14);
        assert_close(v.y, 0.5, 1e-14);
        assert_close(v.z, SQRT_2 / 2.0, 1e-14);
    }

    #[test]
    fn rotation_identity_at_zenith() {
        let r = rotation_matrix(&DirectionSpec::new(0.0, 0.7, 1.0));
        for i in 0..3 {
            for j in 0..3 {
                let want = if i == j { 1.0 } else { 0.0 };
                assert_close(r.0[i][j], want, 1e-15);
            }
        }
    }

    #[test]
    fn rotation_rows_orthonormal_quarter_angles() {
        let r = rotation_matrix(&DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0));
        for i in 0..3 {
            let row = Vec3::new(r.0[i][0], r.0[i][1], r.0[i][2]);
            assert_close(row.norm(), 1.0, 1e-14);
            for j in (i + 1)..3 {
                let other = Vec3::new(r.0[j][0], r.0[j][1], r.0[j][2]);
                assert_close(row.dot(other), 0.0, 1e-14);
            }
        }
        assert_close(r.det(), 1.0, 1e-14);
    }

    #[test]
    fn rotation_third_row_is_plane_normal() {
        let dir = DirectionSpec::new(1.1, 2.3, 1.0);
        let r = rotation_matrix(&dir);
        let n = dir.unit_vector();
        assert_close(r.0[2][0], n.x, 1e-14);
        assert_close(r.0[2][1], n.y, 1e-14);
        assert_close(r.0[2][2], n.z, 1e-14);
    }

    #[test]
    fn plane_z_examples() {
        let dir = DirectionSpec::new(0.0, 0.3, 1.0);
        assert_close(plane_constraint_z(3.7, -1.2, &dir).unwrap(), 0.0, 1e-15);

        // tan(pi/4) * (1*1 + 0*5) with the sign that satisfies the plane
        // equation.
        let dir = DirectionSpec::new(FRAC_PI_4, 0.0, 1.0);
        assert_close(plane_constraint_z(1.0, 5.0, &dir).unwrap(), -1.0, 1e-14);

        let dir = DirectionSpec::new(FRAC_PI_4, FRAC_PI_4, 1.0);
        assert_close(plane_constraint_z(1.0, 1.0, &dir).unwrap(), -SQRT_2, 1e-14);
    }

    #[test]
    fn plane_z_rejects_horizon() {
        let dir = DirectionSpec::new(FRAC_PI_2, 0.0, 1.0);
        assert!(matches!(
            plane_constraint_z(1.0, 1.0, &dir),
            Err(Error::DegenerateDirection { .. })
        ));
    }

    #[test]
    fn lift_satisfies_plane_equation() {
        let dir = DirectionSpec::new(1.2, 0.8, 1.0);
        let pts = vec![(0.0, 0.0), (1.0, 2.0), (-0.5, 0.25), (3.0, -4.0)];
        let lifted = lift_to_plane(&pts, &dir).unwrap();
        let n = dir.unit_vector();
        for p in &lifted {
            assert_close(p.dot(n), 0.0, 1e-12);
        }
    }

    #[test]
    fn lift_zenith_is_flat() {
        let dir = DirectionSpec::new(0.0, 0.0, 1.0);
        let lifted = lift_to_plane(&[(1.0, 2.0), (-3.0, 0.5)], &dir).unwrap();
        assert!(lifted.iter().all(|p| p.z == 0.0));
    }

    #[test]
    fn pairwise_differences_basics() {
        let layout = ArrayLayout::uniform(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(0.0, 0.0, 0.0),
        ]);
        let pairs = pairwise_differences(&layout, 1.0);
        assert_eq!(pairs.len(), 1);
        assert_close(pairs[0].d_mn, 0.0, 0.0);

        let layout = ArrayLayout::uniform(vec![
            Vec3::new(0.0, 0.0, 0.0),
            Vec3::new(1.0, 0.0, 0.0),
            Vec3::new(0.0, 1.0, 0.0),
        ]);
        let pairs = pairwise_differences(&layout, 1.0);
        assert_eq!(pairs.len(), 3);
        assert_close(pairs[0].d_mn, 1.0, 1e-15);
    }

    #[test]
    fn hull_area_examples() {
        let square = [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)];
        assert_close(convex_hull_area(&square), 1.0, 1e-15);

        let collinear = [(0.0, 0.0), (1.0, 1.0), (2.0, 2.0)];
        assert_close(convex_hull_area(&collinear), 0.0, 1e-15);

        let with_center = [
            (0.0, 0.0),
            (1.0, 0.0),
            (1.0, 1.0),
            (0.0, 1.0),
            (0.5, 0.5),
        ];
        assert_close(convex_hull_area(&with_center), 1.0, 1e-15);
    }

    #[test]
    fn hull_area_single_and_pair() {
        assert_eq!(convex_hull_area(&[(2.0, 3.0)]), 0.0);
        assert_eq!(convex_hull_area(&[(0.0, 0.0), (5.0, 1.0)]), 0.0);
    }

    proptest! {
        #[test]
        fn rotation_orthonormal(theta in 0.0..PI, phi in 0.0..(2.0 * PI)) {
            let r = rotation_matrix(&DirectionSpec::new(theta, phi, 1.0));
            let rt = r.transpose();
            for i in 0..3 {
                let ei = Vec3::new(
                    if i == 0 { 1.0 } else { 0.0 },
                    if i == 1 { 1.0 } else { 0.0 },
                    if i == 2 { 1.0 } else { 0.0 },
                );
                let col = r.mul_vec(ei);
                let back = rt.mul_vec(col);
                prop_assert!((back.sub(ei)).norm() <= 1e-12);
            }
            prop_assert!((r.det().abs() - 1.0).abs() <= 1e-12);
        }

        #[test]
        fn rotation_preserves_distances(
            theta in 0.0..PI,
            phi in 0.0..(2.0 * PI),
            ax in -5.0..5.0f64, ay in -5.0..5.0f64,
            bx in -5.0..5.0f64, by in -5.0..5.0f64,
        ) {
            let r = rotation_matrix(&DirectionSpec::new(theta, phi, 1.0));
            let a = Vec3::new(ax, ay, 0.0);
            let b = Vec3::new(bx, by, 0.0);
            let before = a.sub(b).norm();
            let after = r.mul_row(a).sub(r.mul_row(b)).norm();
            prop_assert!((before - after).abs() <= 1e-10);
        }

        #[test]
        fn hull_area_rotation_invariant(
            pts in proptest::collection::vec((-10.0..10.0f64, -10.0..10.0f64), 3..12),
            ang in 0.0..(2.0 * PI),
        ) {
            let area = convex_hull_area(&pts);
            let (s, c) = ang.sin_cos();
            let rotated: Vec<(f64, f64)> = pts
                .iter()
                .map(|&(x, y)| (c * x - s * y, s * x + c * y))
                .collect();
            let area_rot = convex_hull_area(&rotated);
            prop_assert!((area - area_rot).abs() <= 1e-9 * (1.0 + area));
        }
    }
}
