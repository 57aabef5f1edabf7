//! Reference geometries: steered linear and circular arrays, the hexagonal
//! planar lattice, and spacing sweeps for geometry comparison.

use crate::directivity::{directivity_analytic, ElementPattern};
use crate::error::{Error, Result};
use crate::geometry::{convex_hull_area, rotation_matrix, ArrayLayout, DirectionSpec, Vec3};
use crate::oupa::quasi_square_factors;
use std::f64::consts::PI;

/// Published directivity of the subspace-improved 8-element circular
/// array, kept as a comparison fixture for reports.
pub const IMPROVED_UCA_N8_DBI: f64 = 12.00;

/// Which reference geometry a steered array came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryKind {
    Ula,
    Uca,
    Uhpa,
    Upa,
}

impl GeometryKind {
    pub fn parse(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ula" => Ok(GeometryKind::Ula),
            "uca" => Ok(GeometryKind::Uca),
            "uhpa" => Ok(GeometryKind::Uhpa),
            "upa" => Ok(GeometryKind::Upa),
            other => Err(Error::InvalidInput(format!("unknown geometry '{other}'"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GeometryKind::Ula => "ula",
            GeometryKind::Uca => "uca",
            GeometryKind::Uhpa => "uhpa",
            GeometryKind::Upa => "upa",
        }
    }
}

/// A reference layout with its steering phases filled in.
#[derive(Debug, Clone)]
pub struct SteeredArray {
    pub layout: ArrayLayout,
    pub geometry: GeometryKind,
}

/// Phase that points element `p` toward the look direction:
/// `-k p·a(θ0, φ0)`.
fn steer_phase(p: Vec3, dir: &DirectionSpec) -> f64 {
    -dir.k * p.dot(dir.unit_vector())
}

/// Uniform linear array along the x-axis with spacing `d`, phased toward
/// the look direction (`α_n = -k d n sinθ0 cosφ0`).
pub fn ula_steered(n: usize, d: f64, dir: &DirectionSpec) -> SteeredArray {
    let positions: Vec<Vec3> = (0..n).map(|i| Vec3::new(i as f64 * d, 0.0, 0.0)).collect();
    let phases: Vec<f64> = positions.iter().map(|&p| steer_phase(p, dir)).collect();
    let mut layout = ArrayLayout::uniform(positions);
    layout.phases = phases;
    SteeredArray {
        layout,
        geometry: GeometryKind::Ula,
    }
}

/// Uniform circular array in the xy-plane with adjacent-element chord
/// `λ/2` (radius `(λ/2)/(2 sin(π/N))`), phased toward the look direction.
pub fn uca_steered(n: usize, dir: &DirectionSpec) -> SteeredArray {
    let r = dir.wavelength() / 2.0 / (2.0 * (PI / n as f64).sin());
    uca_steered_radius(n, r, dir)
}

/// Circular array with an explicit radius.
pub fn uca_steered_radius(n: usize, radius: f64, dir: &DirectionSpec) -> SteeredArray {
    let positions: Vec<Vec3> = (0..n)
        .map(|i| {
            let gamma = i as f64 * 2.0 * PI / n as f64;
            Vec3::new(radius * gamma.cos(), radius * gamma.sin(), 0.0)
        })
        .collect();
    let phases: Vec<f64> = positions.iter().map(|&p| steer_phase(p, dir)).collect();
    let mut layout = ArrayLayout::uniform(positions);
    layout.phases = phases;
    SteeredArray {
        layout,
        geometry: GeometryKind::Uca,
    }
}

/// Hexagonal planar lattice: a center element, then concentric rings of
/// `6, 12, 18, …` sites filled in order, lattice constant `d_min`. Within
/// a partial ring the sites closest to the center are taken first, so the
/// patch stays compact for every count. Every nearest-neighbor distance
/// equals `d_min`.
pub fn uhpa_layout(n: usize, d_min: f64) -> ArrayLayout {
    let mut sites: Vec<(f64, f64)> = vec![(0.0, 0.0)];
    let mut ring = 1usize;
    while sites.len() < n {
        for corner in 0..6 {
            let ca = corner as f64 * PI / 3.0;
            let (cs, cc) = ca.sin_cos();
            let ea = ca + 2.0 * PI / 3.0;
            let (es, ec) = ea.sin_cos();
            for t in 0..ring {
                sites.push((
                    ring as f64 * cc + t as f64 * ec,
                    ring as f64 * cs + t as f64 * es,
                ));
            }
        }
        ring += 1;
    }
    sites.sort_by(|a, b| {
        let ra = a.0 * a.0 + a.1 * a.1;
        let rb = b.0 * b.0 + b.1 * b.1;
        // Round so lattice-symmetric radii compare equal, then order by
        // angle for a deterministic, evenly spread choice.
        let key = |r2: f64, p: &(f64, f64)| ((r2 * 1e9).round(), p.1.atan2(p.0).rem_euclid(2.0 * PI));
        key(ra, a).partial_cmp(&key(rb, b)).expect("finite sites")
    });
    let positions = sites
        .iter()
        .take(n)
        .map(|&(x, y)| Vec3::new(x * d_min, y * d_min, 0.0))
        .collect();
    ArrayLayout::uniform(positions)
}

/// One sample of a spacing sweep.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub d_min: f64,
    pub directivity_dbi: f64,
    pub area: f64,
}

/// Planar layout of a geometry at spacing `d_min`, before placement on the
/// plane. For the grid the quasi-square factorization is used; for the
/// circle `d_min` is the adjacent chord.
pub fn planar_layout(geometry: GeometryKind, n: usize, d_min: f64) -> ArrayLayout {
    match geometry {
        GeometryKind::Upa => {
            let (n1, n2) = quasi_square_factors(n);
            crate::oupa::upa_layout(&crate::oupa::UpaSpec { n1, n2, d_min })
        }
        GeometryKind::Uhpa => uhpa_layout(n, d_min),
        GeometryKind::Uca => {
            if n == 1 {
                return ArrayLayout::uniform(vec![Vec3::new(0.0, 0.0, 0.0)]);
            }
            let r = d_min / (2.0 * (PI / n as f64).sin());
            let positions = (0..n)
                .map(|i| {
                    let gamma = i as f64 * 2.0 * PI / n as f64;
                    Vec3::new(r * gamma.cos(), r * gamma.sin(), 0.0)
                })
                .collect();
            ArrayLayout::uniform(positions)
        }
        GeometryKind::Ula => {
            let positions = (0..n).map(|i| Vec3::new(i as f64 * d_min, 0.0, 0.0)).collect();
            ArrayLayout::uniform(positions)
        }
    }
}

/// Rotates a flat layout onto the coherence plane (zero phases) and
/// evaluates its directivity and hull area.
pub fn planar_directivity(
    geometry: GeometryKind,
    n: usize,
    d_min: f64,
    dir: &DirectionSpec,
) -> Result<SweepPoint> {
    let flat = planar_layout(geometry, n, d_min);
    let rot = rotation_matrix(dir);
    let positions: Vec<Vec3> = flat.positions.iter().map(|&p| rot.mul_row(p)).collect();
    let layout = ArrayLayout::uniform(positions);
    let report = directivity_analytic(&layout, ElementPattern::OMNI, dir)?;
    let xy: Vec<(f64, f64)> = flat.positions.iter().map(|p| (p.x, p.y)).collect();
    Ok(SweepPoint {
        d_min,
        directivity_dbi: report.dbi,
        area: convex_hull_area(&xy),
    })
}

/// Sweeps the element spacing of a plane-constrained geometry and returns
/// the directivity curve.
pub fn dmin_sweep(
    geometry: GeometryKind,
    n: usize,
    dir: &DirectionSpec,
    d_range: (f64, f64),
    step: f64,
) -> Result<Vec<SweepPoint>> {
    if !(step > 0.0) || !(d_range.0 > 0.0) {
        return Err(Error::InvalidInput(
            "sweep needs a positive start and step".into(),
        ));
    }
    dir.require_nondegenerate()?;
    let mut out = Vec::new();
    let mut d = d_range.0;
    while d <= d_range.1 + 1e-12 {
        out.push(planar_directivity(geometry, n, d, dir)?);
        d += step;
    }
    Ok(out)
}

/// The sweep sample with the highest directivity.
pub fn sweep_argmax(curve: &[SweepPoint]) -> Option<SweepPoint> {
    curve
        .iter()
        .copied()
        .max_by(|a, b| a.directivity_dbi.total_cmp(&b.directivity_dbi))
}
