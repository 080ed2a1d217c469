//! Ising model partition functions with complex parameters: exact spin
//! sums, the pendant-gadget reduction to restricted homomorphism
//! instances, and the approximate pipeline.

use num_complex::Complex64;

use crate::error::{HomqError, Result};
use crate::graph::{Graph, VertexSubset};
use crate::hom::{
    approx_hom_restricted, ApproxOptions, ApproxResult, RestrictedHomInstance,
    SymmetricMatrixAssignment,
};
use crate::regimes::{polyregion_report, zero_free_radius};

/// Graph with complex couplings on edges and complex fields on vertices.
#[derive(Clone, Debug)]
pub struct IsingInstance {
    graph: Graph,
    edge_weights: Vec<Complex64>,
    vertex_weights: Vec<Complex64>,
}

impl IsingInstance {
    pub fn new(
        graph: Graph,
        edge_weights: Vec<Complex64>,
        vertex_weights: Vec<Complex64>,
    ) -> Result<Self> {
        if edge_weights.len() != graph.edge_count() {
            return Err(HomqError::CountMismatch {
                what: "edge weights",
                expected: graph.edge_count(),
                found: edge_weights.len(),
            });
        }
        if vertex_weights.len() != graph.vertex_count() {
            return Err(HomqError::CountMismatch {
                what: "vertex weights",
                expected: graph.vertex_count(),
                found: vertex_weights.len(),
            });
        }
        Ok(IsingInstance {
            graph,
            edge_weights,
            vertex_weights,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_weights(&self) -> &[Complex64] {
        &self.edge_weights
    }

    pub fn vertex_weights(&self) -> &[Complex64] {
        &self.vertex_weights
    }
}

/// Total assignment of spins to {-1, +1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpinConfiguration {
    spins: Vec<i8>,
}

impl SpinConfiguration {
    pub fn new(spins: Vec<i8>) -> Self {
        assert!(spins.iter().all(|&s| s == 1 || s == -1));
        SpinConfiguration { spins }
    }

    /// Spin of vertex `v` is +1 iff bit `v` of `code` is set.
    pub fn from_bits(code: usize, n: usize) -> Self {
        SpinConfiguration {
            spins: (0..n)
                .map(|v| if (code >> v) & 1 == 1 { 1 } else { -1 })
                .collect(),
        }
    }

    pub fn spins(&self) -> &[i8] {
        &self.spins
    }
}

/// `w(sigma) = exp(sum of w_e s_u s_v + sum of f_v s_v)`.
pub fn ising_weight(inst: &IsingInstance, sigma: &SpinConfiguration) -> Complex64 {
    let s = sigma.spins();
    let mut energy = Complex64::new(0.0, 0.0);
    for (e, &(u, v)) in inst.graph.edges().iter().enumerate() {
        energy += inst.edge_weights[e] * (s[u] as f64 * s[v] as f64);
    }
    for (v, &f) in inst.vertex_weights.iter().enumerate() {
        energy += f * (s[v] as f64);
    }
    energy.exp()
}

/// Exact partition function: sum of configuration weights over all
/// `2^{|V|}` spin assignments.
pub fn z_ising_exact(inst: &IsingInstance) -> Result<Complex64> {
    let n = inst.graph.vertex_count();
    if n > 26 {
        return Err(HomqError::InstanceTooLarge {
            reason: format!("2^{n} spin configurations exceed the exact enumeration guard"),
        });
    }
    let mut total = Complex64::new(0.0, 0.0);
    for code in 0..(1usize << n) {
        total += ising_weight(inst, &SpinConfiguration::from_bits(code, n));
    }
    Ok(total)
}

/// Knobs for the reduction.
#[derive(Clone, Copy, Debug, Default)]
pub struct ReductionOptions {
    /// Skip the pendant gadget on vertices with exactly zero field.
    /// Preserves the maximum degree for field-free instances.
    pub drop_zero_field_pendants: bool,
}

/// Pendant-gadget reduction: one new vertex and edge per original vertex,
/// pinned to index 2, with matrix entries `exp(w (2i-3)(2j-3))`.
/// Satisfies `Hom(G',S,2;A u B) = Z_Ising(G;Omega,Upsilon)` exactly and
/// raises the maximum degree by one.
pub fn ising_to_hom(inst: &IsingInstance) -> RestrictedHomInstance {
    ising_to_hom_with_options(inst, &ReductionOptions::default())
}

pub fn ising_to_hom_with_options(
    inst: &IsingInstance,
    opts: &ReductionOptions,
) -> RestrictedHomInstance {
    let n = inst.graph.vertex_count();
    let spin_matrix = |w: Complex64| -> Vec<Complex64> {
        // index i in {1,2} carries spin 2i - 3 in {-1, +1}
        vec![w.exp(), (-w).exp(), (-w).exp(), w.exp()]
    };

    let mut pairs: Vec<(usize, usize)> = inst.graph.edges().to_vec();
    let mut mats: Vec<Vec<Complex64>> =
        inst.edge_weights.iter().map(|&w| spin_matrix(w)).collect();
    let mut pinned = Vec::new();
    let mut next = n;
    for (v, &f) in inst.vertex_weights.iter().enumerate() {
        if opts.drop_zero_field_pendants && f == Complex64::new(0.0, 0.0) {
            continue;
        }
        pairs.push((v, next));
        mats.push(spin_matrix(f));
        pinned.push(next);
        next += 1;
    }
    let graph = Graph::new(next, &pairs).expect("gadget graph is simple by construction");
    let matrices = SymmetricMatrixAssignment::new(2, mats).expect("gadget matrices symmetric");
    RestrictedHomInstance::new(graph, matrices, VertexSubset::new(pinned), 2)
        .expect("gadget instance valid")
}

/// Multiplicative epsilon-approximation of `Z_Ising` through the reduction.
///
/// The weights must lie strictly inside the polyregion of radius
/// `zero_free_radius(max_degree + 1)`; the tight per-instance margin is
/// used as the polydisc cap for truncation-order selection.
pub fn z_ising_approx(
    inst: &IsingInstance,
    epsilon: f64,
    opts: &ApproxOptions,
) -> Result<ApproxResult> {
    z_ising_approx_with_reduction(inst, epsilon, opts, &ReductionOptions::default())
}

pub fn z_ising_approx_with_reduction(
    inst: &IsingInstance,
    epsilon: f64,
    opts: &ApproxOptions,
    red: &ReductionOptions,
) -> Result<ApproxResult> {
    let hom_inst = ising_to_hom_with_options(inst, red);
    let threshold = zero_free_radius(hom_inst.graph.max_degree().max(1));
    let report = polyregion_report(inst, threshold);
    if !report.inside && !opts.force {
        return Err(HomqError::OutsideZeroFreeRegion {
            margin: report.margin,
            threshold: report.threshold,
        });
    }
    approx_hom_restricted(&hom_inst, epsilon, Some(report.margin), opts)
}
