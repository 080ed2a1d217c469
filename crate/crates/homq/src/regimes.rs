//! Zero-free-region constants and membership checks.
//!
//! The degree-dependent radius is the maximum of
//! `sin(alpha/2) * cos(alpha * max_degree / 2)` over `0 < alpha < 2*pi/(3*max_degree)`.
//! Membership is strict: the algorithmic guarantee needs the open region,
//! so a margin exactly at the threshold counts as outside.

use crate::error::{HomqError, Result};
use crate::hom::SymmetricMatrixAssignment;
use crate::ising::IsingInstance;

/// Where the worst `|1 - .|` quantity was attained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Offender {
    None,
    Edge(usize),
    Vertex(usize),
    MatrixEntry { edge: usize, row: usize, col: usize },
}

#[derive(Clone, Copy, Debug)]
pub struct RegimeReport {
    /// Tight radius: max over the relevant `|1 - .|` quantities.
    pub margin: f64,
    /// Applicable zero-free radius for the instance's degree.
    pub threshold: f64,
    /// `margin < threshold`, strictly.
    pub inside: bool,
    pub worst_offender: Offender,
}

impl RegimeReport {
    fn new(margin: f64, threshold: f64, worst_offender: Offender) -> Self {
        RegimeReport {
            margin,
            threshold,
            inside: margin < threshold,
            worst_offender,
        }
    }
}

fn radius_objective(alpha: f64, max_degree: usize) -> f64 {
    (alpha / 2.0).sin() * (alpha * max_degree as f64 / 2.0).cos()
}

/// Zero-free radius for graphs of maximum degree `max_degree >= 1`.
///
/// The objective is unimodal on the interval (its log-derivative is
/// strictly decreasing), so ternary search converges; accuracy is well
/// below 1e-9.
pub fn zero_free_radius(max_degree: usize) -> f64 {
    assert!(max_degree >= 1, "max_degree must be positive");
    let hi = 2.0 * std::f64::consts::PI / (3.0 * max_degree as f64);
    let mut a = 0.0;
    let mut b = hi;
    for _ in 0..200 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if radius_objective(m1, max_degree) < radius_objective(m2, max_degree) {
            a = m1;
        } else {
            b = m2;
        }
    }
    radius_objective((a + b) / 2.0, max_degree)
}

/// Grid-search fallback for [`zero_free_radius`]: dense scan plus local
/// refinement, independent of the unimodality argument.
pub fn zero_free_radius_grid(max_degree: usize, points: usize) -> f64 {
    assert!(max_degree >= 1 && points >= 3);
    let hi = 2.0 * std::f64::consts::PI / (3.0 * max_degree as f64);
    let step = hi / points as f64;
    let mut best = 0.0f64;
    let mut best_alpha = step;
    for i in 1..points {
        let alpha = i as f64 * step;
        let v = radius_objective(alpha, max_degree);
        if v > best {
            best = v;
            best_alpha = alpha;
        }
    }
    let mut a = (best_alpha - step).max(0.0);
    let mut b = (best_alpha + step).min(hi);
    for _ in 0..100 {
        let m1 = a + (b - a) / 3.0;
        let m2 = b - (b - a) / 3.0;
        if radius_objective(m1, max_degree) < radius_objective(m2, max_degree) {
            a = m1;
        } else {
            b = m2;
        }
    }
    radius_objective((a + b) / 2.0, max_degree)
}

/// Max over edges and entries of `|1 - a_ij|`, against the supplied
/// threshold (the zero-free radius for the instance graph's max degree).
pub fn polydisc_report(matrices: &SymmetricMatrixAssignment, threshold: f64) -> RegimeReport {
    let mut margin = 0.0f64;
    let mut worst = Offender::None;
    let m = matrices.index_count();
    for edge in 0..matrices.edge_count() {
        for i in 0..m {
            for j in 0..m {
                let d = (matrices.entry(edge, i, j) - 1.0).norm();
                if d > margin {
                    margin = d;
                    worst = Offender::MatrixEntry { edge, row: i, col: j };
                }
            }
        }
    }
    RegimeReport::new(margin, threshold, worst)
}

/// Max over edges of `max(|1 - e^w|, |1 - e^-w|)` and over vertices
/// likewise, against the supplied threshold (usually the radius for
/// `max_degree + 1`).
pub fn polyregion_report(inst: &IsingInstance, threshold: f64) -> RegimeReport {
    let mut margin = 0.0f64;
    let mut worst = Offender::None;
    for (e, &w) in inst.edge_weights().iter().enumerate() {
        let d = ((w.exp() - 1.0).norm()).max(((-w).exp() - 1.0).norm());
        if d > margin {
            margin = d;
            worst = Offender::Edge(e);
        }
    }
    for (v, &w) in inst.vertex_weights().iter().enumerate() {
        let d = ((w.exp() - 1.0).norm()).max(((-w).exp() - 1.0).norm());
        if d > margin {
            margin = d;
            worst = Offender::Vertex(v);
        }
    }
    RegimeReport::new(margin, threshold, worst)
}

/// Largest angle certified for graph-induced X-programs at radius `delta`:
/// `2 * arcsin(delta / 2)`.
pub fn max_iqp_angle(delta: f64) -> Result<f64> {
    if !(delta > 0.0 && delta <= 2.0) {
        return Err(HomqError::DeltaOutOfRange { delta });
    }
    Ok(2.0 * (delta / 2.0).asin())
}
