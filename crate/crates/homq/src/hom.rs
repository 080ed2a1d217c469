//! Exact and interpolation-based evaluation of the restricted multivariate
//! graph homomorphism partition function.
//!
//! The approximate path evaluates the normalized polynomial
//! `P(G,S,k;z) = m^{-|V \ S|} Hom(G,S,k;A(z))` at `z = 1` through the
//! truncated Taylor expansion of its log. The inverse power sums of its
//! roots are assembled additively from connected vertex subsets: with every
//! edge carrying a distinct colour, each connected induced restricted
//! subgraph is its own isomorphism type, so the coefficient extraction
//! collapses to a recursion over connected subsets of the instance itself.

use std::collections::HashMap;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{HomqError, Result};
use crate::graph::{Graph, VertexSubset};
use crate::interp::{
    newton_power_sums_to, taylor_log_truncated, truncation_order, CoefficientPrefix, PowerSums,
};
use crate::regimes::{polydisc_report, zero_free_radius};

/// Hard cap on exact map enumeration: `m^free_vertices` must stay below this.
const EXACT_ENUMERATION_GUARD: f64 = 1e8;

/// One `m x m` complex symmetric matrix per edge, indexed by edge id.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetricMatrixAssignment {
    m: usize,
    per_edge: Vec<Vec<Complex64>>,
}

impl SymmetricMatrixAssignment {
    /// `per_edge[e]` is the row-major `m x m` matrix for edge `e`.
    /// Symmetry is required exactly as stored.
    pub fn new(m: usize, per_edge: Vec<Vec<Complex64>>) -> Result<Self> {
        assert!(m >= 1, "index-set size must be positive");
        for (edge, mat) in per_edge.iter().enumerate() {
            if mat.len() != m * m {
                return Err(HomqError::CountMismatch {
                    what: "matrix entries",
                    expected: m * m,
                    found: mat.len(),
                });
            }
            for i in 0..m {
                for j in (i + 1)..m {
                    if mat[i * m + j] != mat[j * m + i] {
                        return Err(HomqError::MatrixNotSymmetric { edge, row: i, col: j });
                    }
                }
            }
        }
        Ok(SymmetricMatrixAssignment { m, per_edge })
    }

    pub fn all_ones(m: usize, edge_count: usize) -> Self {
        SymmetricMatrixAssignment {
            m,
            per_edge: vec![vec![Complex64::new(1.0, 0.0); m * m]; edge_count],
        }
    }

    /// The index-set size `m`.
    pub fn index_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.per_edge.len()
    }

    /// Entry `a_ij` of the matrix on `edge`, 0-based indices.
    pub fn entry(&self, edge: usize, i: usize, j: usize) -> Complex64 {
        self.per_edge[edge][i * self.m + j]
    }

    /// Entrywise interpolation `1 + z (a - 1)`; symmetry is preserved.
    pub fn at_z(&self, z: Complex64) -> Self {
        let one = Complex64::new(1.0, 0.0);
        SymmetricMatrixAssignment {
            m: self.m,
            per_edge: self
                .per_edge
                .iter()
                .map(|mat| mat.iter().map(|&a| one + z * (a - one)).collect())
                .collect(),
        }
    }
}

/// Convenience alias for [`SymmetricMatrixAssignment::at_z`].
pub fn matrices_at(a: &SymmetricMatrixAssignment, z: Complex64) -> SymmetricMatrixAssignment {
    a.at_z(z)
}

/// A graph with per-edge matrices, a pinned vertex set, and the pin index.
#[derive(Clone, Debug)]
pub struct RestrictedHomInstance {
    pub graph: Graph,
    pub matrices: SymmetricMatrixAssignment,
    pub pinned: VertexSubset,
    /// 1-based index in `[1, m]` that pinned vertices map to.
    pub pin_index: usize,
}

impl RestrictedHomInstance {
    pub fn new(
        graph: Graph,
        matrices: SymmetricMatrixAssignment,
        pinned: VertexSubset,
        pin_index: usize,
    ) -> Result<Self> {
        if matrices.edge_count() != graph.edge_count() {
            return Err(HomqError::CountMismatch {
                what: "edge matrices",
                expected: graph.edge_count(),
                found: matrices.edge_count(),
            });
        }
        if pin_index < 1 || pin_index > matrices.index_count() {
            return Err(HomqError::PinIndexOutOfRange {
                k: pin_index,
                m: matrices.index_count(),
            });
        }
        if let Some(&v) = pinned.members().last() {
            if v >= graph.vertex_count() {
                return Err(HomqError::VertexOutOfRange {
                    edge: usize::MAX,
                    vertex: v,
                    vertex_count: graph.vertex_count(),
                });
            }
        }
        Ok(RestrictedHomInstance {
            graph,
            matrices,
            pinned,
            pin_index,
        })
    }

    pub fn free_vertex_count(&self) -> usize {
        self.graph.vertex_count() - self.pinned.len()
    }

    /// `m^{|V \ S|}`, the trivial scale of the partition function.
    pub fn scale(&self) -> f64 {
        (self.matrices.index_count() as f64).powi(self.free_vertex_count() as i32)
    }
}

/// Power-sum contributions of one connected vertex subset.
#[derive(Clone, Debug)]
pub struct LocalGamma {
    pub subset: VertexSubset,
    pub gammas: Vec<Complex64>,
}

/// Diagnostics attached to an approximation run.
#[derive(Clone, Copy, Debug)]
pub struct Diagnostics {
    pub subset_count: usize,
    pub max_subset_size: usize,
    pub regime_margin: f64,
}

/// Result of the interpolation pipeline.
#[derive(Clone, Copy, Debug)]
pub struct ApproxResult {
    pub value: Complex64,
    pub epsilon: f64,
    pub order: usize,
    pub diagnostics: Diagnostics,
}

/// Knobs for the approximation pipeline.
#[derive(Clone, Copy, Debug)]
pub struct ApproxOptions {
    /// Run outside the certified region; voids the guarantee.
    pub force: bool,
    /// Use subset size bound `2M` instead of the tightened `M + 1`.
    pub doubled_subset_bound: bool,
    /// Abort if connected-subset enumeration exceeds this many subsets.
    pub subset_budget: usize,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        ApproxOptions {
            force: false,
            doubled_subset_bound: false,
            subset_budget: 1_000_000,
        }
    }
}

fn guard_enumeration(m: usize, digits: usize) -> Result<()> {
    if (m as f64).powi(digits as i32) > EXACT_ENUMERATION_GUARD {
        return Err(HomqError::InstanceTooLarge {
            reason: format!("{m}^{digits} maps exceed the exact enumeration guard"),
        });
    }
    Ok(())
}

/// Calls `f` for every assignment of `digits` values in `0..m`.
fn for_each_assignment<F: FnMut(&[usize])>(digits: usize, m: usize, mut f: F) {
    let mut a = vec![0usize; digits];
    loop {
        f(&a);
        let mut i = 0;
        loop {
            if i == digits {
                return;
            }
            a[i] += 1;
            if a[i] < m {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// Exact `Hom(G;A)`: sum over all `m^{|V|}` maps of edge-entry products.
pub fn hom_exact(graph: &Graph, matrices: &SymmetricMatrixAssignment) -> Result<Complex64> {
    let inst = RestrictedHomInstance::new(
        graph.clone(),
        matrices.clone(),
        VertexSubset::empty(),
        1,
    )?;
    hom_restricted_exact(&inst)
}

/// Exact `Hom(G,S,k;A)`: sum over maps pinning every vertex of `S` to `k`.
pub fn hom_restricted_exact(inst: &RestrictedHomInstance) -> Result<Complex64> {
    let n = inst.graph.vertex_count();
    let m = inst.matrices.index_count();
    let free: Vec<usize> = (0..n).filter(|&v| !inst.pinned.contains(v)).collect();
    guard_enumeration(m, free.len())?;

    let mut phi = vec![inst.pin_index - 1; n];
    let mut total = Complex64::new(0.0, 0.0);
    let edges = inst.graph.edges();
    for_each_assignment(free.len(), m, |assign| {
        for (slot, &v) in free.iter().enumerate() {
            phi[v] = assign[slot];
        }
        let mut prod = Complex64::new(1.0, 0.0);
        for (e, &(u, v)) in edges.iter().enumerate() {
            prod *= inst.matrices.entry(e, phi[u], phi[v]);
        }
        total += prod;
    });
    Ok(total)
}

/// Coefficients `a_0..a_min(order, |E(G[U])|)` of the normalized local
/// polynomial `m^{-|U \ S|} Hom(G[U], S cap U, k; A(z))`.
///
/// Computed by enumerating the `m^{|U \ S|}` maps on `U` and expanding the
/// product of edge factors `1 + z (a - 1)` truncated at `order`; this equals
/// the edge-subset expansion term by term.
pub fn local_coefficients(
    inst: &RestrictedHomInstance,
    subset: &VertexSubset,
    order: usize,
) -> Result<CoefficientPrefix> {
    if !inst.graph.is_connected_subset(subset)? {
        return Err(HomqError::SubsetNotConnected);
    }
    let m = inst.matrices.index_count();
    let members = subset.members();
    let local_index: HashMap<usize, usize> =
        members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let free: Vec<usize> = (0..members.len())
        .filter(|&i| !inst.pinned.contains(members[i]))
        .collect();
    guard_enumeration(m, free.len())?;

    // (local u, local v, edge id) for edges inside U
    let local_edges: Vec<(usize, usize, usize)> = inst
        .graph
        .induced_edges(subset)
        .into_iter()
        .map(|e| {
            let (u, v) = inst.graph.endpoints(e);
            (local_index[&u], local_index[&v], e)
        })
        .collect();

    let max_deg = order.min(local_edges.len());
    let one = Complex64::new(1.0, 0.0);
    // flattened per-edge tables of `a - 1`, indexed by phi(u) * m + phi(v)
    let m2 = m * m;
    let mut diffs = Vec::with_capacity(local_edges.len() * m2);
    for &(_, _, e) in &local_edges {
        for i in 0..m {
            for j in 0..m {
                diffs.push(inst.matrices.entry(e, i, j) - one);
            }
        }
    }
    let mut acc = vec![Complex64::new(0.0, 0.0); max_deg + 1];
    let mut phi = vec![inst.pin_index - 1; members.len()];
    let mut poly = vec![Complex64::new(0.0, 0.0); max_deg + 1];
    for_each_assignment(free.len(), m, |assign| {
        for (slot, &i) in free.iter().enumerate() {
            phi[i] = assign[slot];
        }
        poly[..max_deg + 1].fill(Complex64::new(0.0, 0.0));
        poly[0] = one;
        for (le, &(lu, lv, _)) in local_edges.iter().enumerate() {
            let w = diffs[le * m2 + phi[lu] * m + phi[lv]];
            let top = (le + 1).min(max_deg);
            for i in (1..=top).rev() {
                let lower = poly[i - 1];
                poly[i] += lower * w;
            }
        }
        for (a, p) in acc.iter_mut().zip(&poly) {
            *a += p;
        }
    });
    let norm = (m as f64).powi(free.len() as i32);
    for a in acc.iter_mut() {
        *a /= norm;
    }
    CoefficientPrefix::new(acc)
}

/// Per-subset power-sum contributions up to `order`, subset sizes bounded
/// by `order + 1`.
pub fn gamma_decomposition(inst: &RestrictedHomInstance, order: usize) -> Result<Vec<LocalGamma>> {
    gamma_decomposition_with_bound(inst, order, order + 1, ApproxOptions::default().subset_budget)
}

/// As [`gamma_decomposition`] with an explicit subset size bound and budget.
///
/// For each connected `U` in increasing `(|U|, members)` order,
/// `gamma_U = p(U) - sum of gamma_W over connected proper subsets W`,
/// where `p(U)` are the local power sums of `U`'s normalized polynomial.
pub fn gamma_decomposition_with_bound(
    inst: &RestrictedHomInstance,
    order: usize,
    subset_bound: usize,
    subset_budget: usize,
) -> Result<Vec<LocalGamma>> {
    let n = inst.graph.vertex_count();
    let bound = subset_bound.min(n).max(1);
    let subsets = inst.graph.enumerate_connected_subsets(bound);
    if subsets.len() > subset_budget {
        return Err(HomqError::InstanceTooLarge {
            reason: format!(
                "{} connected subsets exceed the budget of {subset_budget}",
                subsets.len()
            ),
        });
    }

    let local: Vec<Vec<Complex64>> = subsets
        .par_iter()
        .map(|u| {
            local_coefficients(inst, u, order)
                .map(|c| newton_power_sums_to(&c, order).sums().to_vec())
        })
        .collect::<Result<Vec<_>>>()?;

    // Moebius step: submask walk for small subsets, linear scan with mask
    // containment tests otherwise (cheaper once 2^|U| exceeds the number of
    // processed subsets)
    let masks: Option<Vec<u128>> = if n <= 128 {
        Some(subsets.iter().map(|s| s.mask().expect("ids < 128")).collect())
    } else {
        None
    };
    let mut mask_index: HashMap<u128, usize> = HashMap::new();
    let mut gammas: Vec<Vec<Complex64>> = Vec::with_capacity(subsets.len());
    for (idx, subset) in subsets.iter().enumerate() {
        let mut g = local[idx].clone();
        match &masks {
            Some(masks) => {
                let mask = masks[idx];
                let walk = subset.len() < usize::BITS as usize
                    && (1usize << subset.len()) < idx.max(1) * 4;
                if walk {
                    let mut sub = mask.wrapping_sub(1) & mask;
                    while sub != 0 {
                        if let Some(&widx) = mask_index.get(&sub) {
                            for (a, b) in g.iter_mut().zip(&gammas[widx]) {
                                *a -= b;
                            }
                        }
                        sub = sub.wrapping_sub(1) & mask;
                    }
                } else {
                    for (widx, &wm) in masks[..idx].iter().enumerate() {
                        if wm & mask == wm {
                            for (a, b) in g.iter_mut().zip(&gammas[widx]) {
                                *a -= b;
                            }
                        }
                    }
                }
                mask_index.insert(mask, idx);
            }
            None => {
                for widx in 0..idx {
                    if subsets[widx].len() < subset.len() && subsets[widx].is_subset_of(subset) {
                        for (a, b) in g.iter_mut().zip(&gammas[widx]) {
                            *a -= b;
                        }
                    }
                }
            }
        }
        gammas.push(g);
    }

    Ok(subsets
        .into_iter()
        .zip(gammas)
        .map(|(subset, gammas)| LocalGamma { subset, gammas })
        .collect())
}

/// Connected components as sorted vertex subsets, ordered by smallest member.
fn connected_components(graph: &Graph) -> Vec<VertexSubset> {
    let n = graph.vertex_count();
    let mut seen = vec![false; n];
    let mut components = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut stack = vec![start];
        seen[start] = true;
        let mut members = Vec::new();
        while let Some(v) = stack.pop() {
            members.push(v);
            for &(u, _) in graph.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        components.push(VertexSubset::new(members));
    }
    components
}

/// Global power sums computed per connected component. Equivalent to the
/// gamma decomposition whenever the subset size bound covers the whole
/// graph: the recursion telescopes to the local sums of each component.
fn component_power_sums(
    inst: &RestrictedHomInstance,
    order: usize,
) -> Result<(PowerSums, Diagnostics)> {
    let components = connected_components(&inst.graph);
    let locals: Vec<PowerSums> = components
        .par_iter()
        .map(|comp| {
            local_coefficients(inst, comp, order).map(|c| newton_power_sums_to(&c, order))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut total = PowerSums::zeros(order);
    for p in &locals {
        total.add_assign(p);
    }
    let diagnostics = Diagnostics {
        subset_count: components.len(),
        max_subset_size: components.iter().map(|c| c.len()).max().unwrap_or(0),
        regime_margin: 0.0,
    };
    Ok((total, diagnostics))
}

/// Global inverse power sums `p_1..p_order` of the normalized polynomial,
/// summed over connected subsets in the deterministic enumeration order.
pub fn global_power_sums(inst: &RestrictedHomInstance, order: usize) -> Result<PowerSums> {
    let gammas = gamma_decomposition(inst, order)?;
    Ok(sum_gammas(&gammas, order))
}

fn sum_gammas(gammas: &[LocalGamma], order: usize) -> PowerSums {
    let mut total = PowerSums::zeros(order);
    for g in gammas {
        total.add_assign(&PowerSums::new(g.gammas.clone()));
    }
    total
}

/// Multiplicative epsilon-approximation of `Hom(G,S,k;A)` by truncated
/// Taylor expansion of `log P` at `z = 1`.
///
/// `delta_cap` is the polydisc radius assumed for the matrices; when absent
/// the tight margin of the instance is used. The guarantee requires the cap
/// to sit strictly below the zero-free radius for the graph's max degree.
pub fn approx_hom_restricted(
    inst: &RestrictedHomInstance,
    epsilon: f64,
    delta_cap: Option<f64>,
    opts: &ApproxOptions,
) -> Result<ApproxResult> {
    if !(epsilon > 0.0 && epsilon < 1.0) {
        return Err(HomqError::EpsilonOutOfRange { epsilon });
    }
    let degree = inst.graph.max_degree().max(1);
    let threshold = zero_free_radius(degree);
    let report = polydisc_report(&inst.matrices, threshold);
    let cap = delta_cap.unwrap_or(report.margin);
    if !opts.force {
        if report.margin > cap {
            return Err(HomqError::OutsideZeroFreeRegion {
                margin: report.margin,
                threshold: cap,
            });
        }
        if cap >= threshold {
            return Err(HomqError::OutsideZeroFreeRegion {
                margin: report.margin,
                threshold,
            });
        }
    }
    // ratio floor keeps the order formula defined for all-ones instances;
    // overestimating the ratio only raises the order.
    let ratio = (cap / threshold).clamp(1e-6, 0.99);
    let plan = truncation_order(inst.graph.edge_count().max(1), epsilon, ratio)?;
    let order = plan.order;
    let bound = if opts.doubled_subset_bound {
        2 * order
    } else {
        order + 1
    };
    // a bound covering the whole graph telescopes to per-component sums;
    // the subset machinery only pays off below that
    let (sums, mut diagnostics) = if bound >= inst.graph.vertex_count() {
        component_power_sums(inst, order)?
    } else {
        let gammas = gamma_decomposition_with_bound(inst, order, bound, opts.subset_budget)?;
        let sums = sum_gammas(&gammas, order);
        let diagnostics = Diagnostics {
            subset_count: gammas.len(),
            max_subset_size: gammas.iter().map(|g| g.subset.len()).max().unwrap_or(0),
            regime_margin: 0.0,
        };
        (sums, diagnostics)
    };
    diagnostics.regime_margin = report.margin;
    let log_p = taylor_log_truncated(&sums, Complex64::new(1.0, 0.0));
    let value = inst.scale() * log_p.exp();
    Ok(ApproxResult {
        value,
        epsilon,
        order,
        diagnostics,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn single_edge_instance(a: Complex64, b: Complex64, d: Complex64) -> RestrictedHomInstance {
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(2, vec![vec![a, b, b, d]]).unwrap();
        RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap()
    }

    #[test]
    fn exact_edgeless() {
        let g = Graph::new(4, &[]).unwrap();
        let a = SymmetricMatrixAssignment::all_ones(3, 0);
        assert_eq!(hom_exact(&g, &a).unwrap(), c(81.0, 0.0));
    }

    #[test]
    fn exact_single_edge() {
        let inst = single_edge_instance(c(2.0, 0.0), c(0.5, 0.5), c(-1.0, 0.0));
        let got = hom_restricted_exact(&inst).unwrap();
        assert!((got - c(2.0 + 1.0 - 1.0, 1.0)).norm() < 1e-14); // a + 2b + d
    }

    #[test]
    fn exact_all_ones() {
        let g = Graph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)]).unwrap();
        let a = SymmetricMatrixAssignment::all_ones(2, g.edge_count());
        assert_eq!(hom_exact(&g, &a).unwrap(), c(32.0, 0.0));
    }

    #[test]
    fn restricted_all_pinned() {
        let g = Graph::new(3, &[(0, 1), (1, 2)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(
            2,
            vec![
                vec![c(2.0, 0.0), c(3.0, 0.0), c(3.0, 0.0), c(5.0, 0.0)],
                vec![c(1.0, 1.0), c(0.0, 2.0), c(0.0, 2.0), c(4.0, 0.0)],
            ],
        )
        .unwrap();
        let inst =
            RestrictedHomInstance::new(g, mats, VertexSubset::new(vec![0, 1, 2]), 2).unwrap();
        // single map: product of a_22 entries
        let got = hom_restricted_exact(&inst).unwrap();
        assert!((got - c(5.0, 0.0) * c(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn restricted_no_pins_matches_unrestricted() {
        let g = Graph::new(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(
            2,
            (0..3)
                .map(|i| {
                    let t = i as f64;
                    vec![c(1.1 + t * 0.01, 0.02), c(0.9, -0.03), c(0.9, -0.03), c(1.0, 0.05)]
                })
                .collect(),
        )
        .unwrap();
        let unres = hom_exact(&g, &mats).unwrap();
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let res = hom_restricted_exact(&inst).unwrap();
        assert!((unres - res).norm() < 1e-12);
    }

    #[test]
    fn restricted_matches_filter_oracle() {
        // independent route: enumerate all m^|V| maps, skip pin violations
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 2)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(
            2,
            (0..4)
                .map(|i| {
                    let t = 0.1 * i as f64;
                    vec![c(1.0 + t, 0.05), c(1.0 - t, -0.02), c(1.0 - t, -0.02), c(0.95, t)]
                })
                .collect(),
        )
        .unwrap();
        let pinned = VertexSubset::new(vec![1, 3]);
        let k = 2usize;
        let inst = RestrictedHomInstance::new(g.clone(), mats.clone(), pinned.clone(), k).unwrap();

        let mut expected = c(0.0, 0.0);
        for code in 0..(2usize.pow(4)) {
            let phi: Vec<usize> = (0..4).map(|v| (code >> v) & 1).collect();
            if pinned.members().iter().any(|&s| phi[s] != k - 1) {
                continue;
            }
            let mut prod = c(1.0, 0.0);
            for (e, &(u, v)) in g.edges().iter().enumerate() {
                prod *= mats.entry(e, phi[u], phi[v]);
            }
            expected += prod;
        }
        let got = hom_restricted_exact(&inst).unwrap();
        assert!((got - expected).norm() < 1e-12 * expected.norm().max(1.0));
    }

    #[test]
    fn interpolated_matrices() {
        let mats =
            SymmetricMatrixAssignment::new(1, vec![vec![c(3.0, 0.0)], vec![c(0.0, 2.0)]]).unwrap();
        let at0 = mats.at_z(c(0.0, 0.0));
        assert_eq!(at0.entry(0, 0, 0), c(1.0, 0.0));
        assert_eq!(at0.entry(1, 0, 0), c(1.0, 0.0));
        let at1 = mats.at_z(c(1.0, 0.0));
        assert_eq!(at1.entry(0, 0, 0), c(3.0, 0.0));
        let ath = mats.at_z(c(0.5, 0.0));
        assert_eq!(ath.entry(0, 0, 0), c(2.0, 0.0));
    }

    #[test]
    fn local_coefficients_singleton() {
        let inst = single_edge_instance(c(1.2, 0.0), c(0.8, 0.1), c(1.0, -0.1));
        let coeffs = local_coefficients(&inst, &VertexSubset::singleton(0), 4).unwrap();
        assert_eq!(coeffs.coeffs(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn local_coefficients_single_edge() {
        let (a, b, d) = (c(1.3, 0.2), c(0.7, -0.1), c(1.1, 0.0));
        let inst = single_edge_instance(a, b, d);
        let coeffs = local_coefficients(&inst, &VertexSubset::new(vec![0, 1]), 4).unwrap();
        let expected = (a + b + b + d) / 4.0 - 1.0;
        assert!((coeffs.coeffs()[1] - expected).norm() < 1e-14);
        assert_eq!(coeffs.coeffs().len(), 2);
    }

    /// Solves the square complex linear system `V x = y` in place.
    #[allow(clippy::needless_range_loop)]
    fn solve_dense(mut v: Vec<Vec<Complex64>>, mut y: Vec<Complex64>) -> Vec<Complex64> {
        let n = y.len();
        for col in 0..n {
            let piv = (col..n)
                .max_by(|&a, &b| v[a][col].norm().total_cmp(&v[b][col].norm()))
                .unwrap();
            v.swap(col, piv);
            y.swap(col, piv);
            let p = v[col][col];
            for r in (col + 1)..n {
                let f = v[r][col] / p;
                for cc in col..n {
                    let sub = v[col][cc] * f;
                    v[r][cc] -= sub;
                }
                let sub = y[col] * f;
                y[r] -= sub;
            }
        }
        let mut x = vec![c(0.0, 0.0); n];
        for row in (0..n).rev() {
            let mut acc = y[row];
            for cc in (row + 1)..n {
                acc -= v[row][cc] * x[cc];
            }
            x[row] = acc / v[row][row];
        }
        x
    }

    #[test]
    fn local_coefficients_match_vandermonde_oracle() {
        // triangle plus pendant, pinned vertex, m = 2
        let g = Graph::new(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(
            2,
            (0..4)
                .map(|i| {
                    let t = 0.07 * (i as f64 + 1.0);
                    vec![c(1.0 + t, 0.03), c(1.0 - t, 0.05), c(1.0 - t, 0.05), c(1.0, -t)]
                })
                .collect(),
        )
        .unwrap();
        let inst =
            RestrictedHomInstance::new(g, mats, VertexSubset::new(vec![1]), 2).unwrap();
        let subset = VertexSubset::new(vec![0, 1, 2, 3]);
        let order = 4;
        let coeffs = local_coefficients(&inst, &subset, order).unwrap();

        // oracle: evaluate the normalized sub-instance at order+1 sample
        // points via full map enumeration and solve the Vandermonde system
        let members = subset.members().to_vec();
        let sub_edges: Vec<(usize, usize)> = inst
            .graph
            .induced_edges(&subset)
            .iter()
            .map(|&e| {
                let (u, v) = inst.graph.endpoints(e);
                let lu = members.iter().position(|&x| x == u).unwrap();
                let lv = members.iter().position(|&x| x == v).unwrap();
                (lu, lv)
            })
            .collect();
        let edge_ids = inst.graph.induced_edges(&subset);
        let sub_graph = Graph::new(members.len(), &sub_edges).unwrap();
        let sub_pins = VertexSubset::new(
            members
                .iter()
                .enumerate()
                .filter(|(_, &v)| inst.pinned.contains(v))
                .map(|(i, _)| i)
                .collect(),
        );
        let free = members.len() - sub_pins.len();
        let n_pts = order + 1;
        let mut vmat = Vec::new();
        let mut rhs = Vec::new();
        for t in 0..n_pts {
            let z = c(0.15 + 0.1 * t as f64, 0.05 * t as f64);
            let sub_mats = SymmetricMatrixAssignment::new(
                2,
                edge_ids
                    .iter()
                    .map(|&e| {
                        (0..4)
                            .map(|ij| {
                                let (i, j) = (ij / 2, ij % 2);
                                c(1.0, 0.0) + z * (inst.matrices.entry(e, i, j) - 1.0)
                            })
                            .collect()
                    })
                    .collect(),
            )
            .unwrap();
            let sub_inst = RestrictedHomInstance::new(
                sub_graph.clone(),
                sub_mats,
                sub_pins.clone(),
                inst.pin_index,
            )
            .unwrap();
            let val = hom_restricted_exact(&sub_inst).unwrap() / (2f64).powi(free as i32);
            vmat.push((0..n_pts).map(|p| z.powu(p as u32)).collect());
            rhs.push(val);
        }
        let oracle = solve_dense(vmat, rhs);
        for (i, (&got, &want)) in coeffs.coeffs().iter().zip(&oracle).enumerate() {
            assert!(
                (got - want).norm() < 1e-8 * want.norm().max(1.0),
                "coefficient {i}: {got} vs {want}"
            );
        }
    }

    #[test]
    fn gamma_singleton_and_single_edge() {
        let inst = single_edge_instance(c(1.2, 0.1), c(0.9, 0.0), c(1.05, -0.1));
        let gammas = gamma_decomposition(&inst, 3).unwrap();
        assert_eq!(gammas.len(), 3); // {0}, {1}, {0,1}
        for g in &gammas[..2] {
            assert!(g.gammas.iter().all(|x| x.norm() < 1e-14));
        }
        let edge_p = newton_power_sums_to(
            &local_coefficients(&inst, &VertexSubset::new(vec![0, 1]), 3).unwrap(),
            3,
        );
        for (a, b) in gammas[2].gammas.iter().zip(edge_p.sums()) {
            assert!((a - b).norm() < 1e-14);
        }
    }

    #[test]
    fn gamma_disjoint_union() {
        // two disjoint edges: gammas equal the union of per-component runs
        let g = Graph::new(4, &[(0, 1), (2, 3)]).unwrap();
        let mk = |t: f64| vec![c(1.0 + t, 0.02), c(1.0 - t, 0.0), c(1.0 - t, 0.0), c(1.0, t)];
        let mats = SymmetricMatrixAssignment::new(2, vec![mk(0.08), mk(0.05)]).unwrap();
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let gammas = gamma_decomposition(&inst, 4).unwrap();

        let comp = |t: f64| {
            let g = Graph::new(2, &[(0, 1)]).unwrap();
            let mats = SymmetricMatrixAssignment::new(2, vec![mk(t)]).unwrap();
            let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
            gamma_decomposition(&inst, 4).unwrap()
        };
        let c1 = comp(0.08);
        let c2 = comp(0.05);
        let edge_gamma = |gs: &[LocalGamma]| {
            gs.iter()
                .find(|g| g.subset.len() == 2)
                .map(|g| g.gammas.clone())
                .unwrap()
        };
        let g01 = gammas
            .iter()
            .find(|g| g.subset.members() == [0, 1])
            .unwrap();
        let g23 = gammas
            .iter()
            .find(|g| g.subset.members() == [2, 3])
            .unwrap();
        for (a, b) in g01.gammas.iter().zip(edge_gamma(&c1)) {
            assert!((a - b).norm() < 1e-13);
        }
        for (a, b) in g23.gammas.iter().zip(edge_gamma(&c2)) {
            assert!((a - b).norm() < 1e-13);
        }
    }

    #[test]
    fn global_power_sums_edgeless() {
        let g = Graph::new(3, &[]).unwrap();
        let mats = SymmetricMatrixAssignment::all_ones(2, 0);
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let p = global_power_sums(&inst, 5).unwrap();
        assert!(p.sums().iter().all(|x| x.norm() == 0.0));
    }

    #[test]
    fn global_power_sums_match_full_polynomial() {
        let g = Graph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(
            2,
            (0..5)
                .map(|i| {
                    let t = 0.05 * (i as f64 + 1.0);
                    vec![c(1.0 + t, 0.04), c(1.0, -t), c(1.0, -t), c(1.0 - t, 0.02)]
                })
                .collect(),
        )
        .unwrap();
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::new(vec![2]), 1).unwrap();
        let order = 6;
        let got = global_power_sums(&inst, order).unwrap();
        let full = crate::oracle::full_polynomial_coefficients(&inst).unwrap();
        let want = newton_power_sums_to(&full, order);
        for (j, (a, b)) in got.sums().iter().zip(want.sums()).enumerate() {
            assert!(
                (a - b).norm() < 1e-9 * b.norm().max(1.0),
                "power sum {}: {a} vs {b}",
                j + 1
            );
        }
    }

    #[test]
    fn approx_all_ones_is_exact() {
        let g = Graph::new(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)]).unwrap();
        let mats = SymmetricMatrixAssignment::all_ones(2, g.edge_count());
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let res = approx_hom_restricted(&inst, 0.01, None, &ApproxOptions::default()).unwrap();
        assert!((res.value - c(64.0, 0.0)).norm() < 1e-10);
    }

    #[test]
    fn approx_single_edge_guarantee() {
        let inst = single_edge_instance(c(1.0, 0.1), c(1.0, 0.1), c(1.0, 0.1));
        let eps = 0.01;
        let res = approx_hom_restricted(&inst, eps, None, &ApproxOptions::default()).unwrap();
        let exact = hom_restricted_exact(&inst).unwrap();
        let ratio = res.value / exact;
        assert!(ratio.norm() <= eps.exp() && ratio.norm() >= (-eps).exp());
        assert!(ratio.arg().abs() <= eps);
    }

    #[test]
    fn approx_rejects_outside_region() {
        let inst = single_edge_instance(c(2.0, 0.0), c(1.0, 0.0), c(1.0, 0.0));
        assert!(matches!(
            approx_hom_restricted(&inst, 0.01, None, &ApproxOptions::default()),
            Err(HomqError::OutsideZeroFreeRegion { .. })
        ));
        // force runs anyway
        let forced = approx_hom_restricted(
            &inst,
            0.01,
            None,
            &ApproxOptions {
                force: true,
                ..Default::default()
            },
        );
        assert!(forced.is_ok());
    }
}
