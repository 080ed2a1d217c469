//! Independent brute-force oracles and seeded instance generators used by
//! the test suites. The oracles use different algebraic routes from the
//! production pipeline: exhaustive edge-subset expansion here, map/spin
//! enumeration and statevector simulation elsewhere, never the
//! subset-recursion path they validate.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{HomqError, Result};
use crate::graph::{Graph, VertexSubset};
use crate::hom::{RestrictedHomInstance, SymmetricMatrixAssignment};
use crate::interp::CoefficientPrefix;
use crate::iqp::GraphXProgram;
use crate::ising::IsingInstance;
use crate::regimes::{max_iqp_angle, zero_free_radius};

/// Exact normalized coefficients `a_0..a_|E|` of `P(G,S,k;z)` by
/// exhaustive expansion over all `2^{|E|}` edge subsets, with the map sum
/// factorized over connected components of each subset.
pub fn full_polynomial_coefficients(inst: &RestrictedHomInstance) -> Result<CoefficientPrefix> {
    let edge_count = inst.graph.edge_count();
    if edge_count > 14 {
        return Err(HomqError::InstanceTooLarge {
            reason: format!("2^{edge_count} edge subsets exceed the oracle guard"),
        });
    }
    let m = inst.matrices.index_count();
    let n = inst.graph.vertex_count();
    let mut coeffs = vec![Complex64::new(0.0, 0.0); edge_count + 1];
    coeffs[0] = Complex64::new(1.0, 0.0);

    let mut parent = vec![0usize; n];
    for subset in 1u32..(1u32 << edge_count) {
        let edges: Vec<usize> = (0..edge_count).filter(|&e| subset >> e & 1 == 1).collect();
        // union-find over the endpoints of the chosen edges
        for (v, p) in parent.iter_mut().enumerate() {
            *p = v;
        }
        fn find(parent: &mut [usize], v: usize) -> usize {
            let mut v = v;
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &e in &edges {
            let (u, v) = inst.graph.endpoints(e);
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru != rv {
                parent[ru] = rv;
            }
        }
        let mut contribution = Complex64::new(1.0, 0.0);
        let mut roots: Vec<usize> = Vec::new();
        for &e in &edges {
            let (u, _) = inst.graph.endpoints(e);
            let r = find(&mut parent, u);
            if !roots.contains(&r) {
                roots.push(r);
            }
        }
        for &root in &roots {
            let comp_edges: Vec<usize> = edges
                .iter()
                .copied()
                .filter(|&e| find(&mut parent, inst.graph.endpoints(e).0) == root)
                .collect();
            let mut verts: Vec<usize> = Vec::new();
            for &e in &comp_edges {
                let (u, v) = inst.graph.endpoints(e);
                for w in [u, v] {
                    if !verts.contains(&w) {
                        verts.push(w);
                    }
                }
            }
            verts.sort_unstable();
            let free: Vec<usize> = verts
                .iter()
                .copied()
                .filter(|&v| !inst.pinned.contains(v))
                .collect();
            let mut phi: std::collections::HashMap<usize, usize> =
                verts.iter().map(|&v| (v, inst.pin_index - 1)).collect();
            let mut sum = Complex64::new(0.0, 0.0);
            let mut assign = vec![0usize; free.len()];
            'maps: loop {
                for (slot, &v) in free.iter().enumerate() {
                    phi.insert(v, assign[slot]);
                }
                let mut prod = Complex64::new(1.0, 0.0);
                for &e in &comp_edges {
                    let (u, v) = inst.graph.endpoints(e);
                    prod *= inst.matrices.entry(e, phi[&u], phi[&v]) - 1.0;
                }
                sum += prod;
                let mut i = 0;
                loop {
                    if i == free.len() {
                        break 'maps;
                    }
                    assign[i] += 1;
                    if assign[i] < m {
                        break;
                    }
                    assign[i] = 0;
                    i += 1;
                }
            }
            contribution *= sum / (m as f64).powi(free.len() as i32);
        }
        coeffs[edges.len()] += contribution;
    }
    CoefficientPrefix::new(coeffs)
}

/// Seeded generator of random bounded-degree instances. Generation is a
/// pure function of the seed.
#[derive(Clone, Copy, Debug)]
pub struct InstanceGenerator {
    pub seed: u64,
    pub max_vertices: usize,
    pub max_degree: usize,
    /// Weights are sampled inside `radius_fraction` times the applicable
    /// zero-free radius.
    pub radius_fraction: f64,
}

impl InstanceGenerator {
    fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Random connected graph with `2..=max_vertices` vertices and maximum
    /// degree at most `max_degree` (spanning tree plus random extra edges).
    fn random_graph(&self, rng: &mut ChaCha8Rng) -> Graph {
        let n = rng.gen_range(2..=self.max_vertices.max(2));
        let bound = self.max_degree.max(2);
        let mut deg = vec![0usize; n];
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for v in 1..n {
            let candidates: Vec<usize> = (0..v).filter(|&u| deg[u] < bound).collect();
            let u = candidates[rng.gen_range(0..candidates.len())];
            pairs.push((u, v));
            deg[u] += 1;
            deg[v] += 1;
        }
        let extra_tries = rng.gen_range(0..=n);
        for _ in 0..extra_tries {
            let u = rng.gen_range(0..n);
            let v = rng.gen_range(0..n);
            if u == v || deg[u] >= bound || deg[v] >= bound {
                continue;
            }
            let key = (u.min(v), u.max(v));
            if pairs.iter().any(|&(a, b)| (a.min(b), a.max(b)) == key) {
                continue;
            }
            pairs.push(key);
            deg[u] += 1;
            deg[v] += 1;
        }
        Graph::new(n, &pairs).expect("construction keeps the graph simple")
    }

    fn disc_sample(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
        let r = radius * rng.gen_range(0.0f64..=1.0).sqrt();
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        Complex64::from_polar(r, theta)
    }

    /// Restricted-hom instances with `m = 2` and entries inside the
    /// fraction-scaled polydisc of the sampled graph's degree radius.
    pub fn sample_hom(&self, count: usize) -> Vec<RestrictedHomInstance> {
        let mut rng = self.rng();
        (0..count)
            .map(|_| {
                let g = self.random_graph(&mut rng);
                let target =
                    self.radius_fraction * zero_free_radius(g.max_degree().max(1));
                let mats = SymmetricMatrixAssignment::new(
                    2,
                    (0..g.edge_count())
                        .map(|_| {
                            let a = 1.0 + Self::disc_sample(&mut rng, target);
                            let b = 1.0 + Self::disc_sample(&mut rng, target);
                            let d = 1.0 + Self::disc_sample(&mut rng, target);
                            vec![a, b, b, d]
                        })
                        .collect(),
                )
                .expect("entries symmetric by construction");
                let pinned = VertexSubset::new(
                    (0..g.vertex_count())
                        .filter(|_| rng.gen_bool(0.25))
                        .collect(),
                );
                let pin_index = rng.gen_range(1..=2);
                RestrictedHomInstance::new(g, mats, pinned, pin_index)
                    .expect("sampled instance valid")
            })
            .collect()
    }

    /// Ising instances with weights inside the fraction-scaled polyregion
    /// for degree `max_degree(G) + 1`: `|w| <= ln(1 + target)` guarantees
    /// `|1 - e^{+-w}| <= target`.
    pub fn sample_ising(&self, count: usize) -> Vec<IsingInstance> {
        let mut rng = self.rng();
        (0..count)
            .map(|_| {
                let g = self.random_graph(&mut rng);
                let target =
                    self.radius_fraction * zero_free_radius(g.max_degree() + 1);
                let radius = target.ln_1p();
                let edge_weights = (0..g.edge_count())
                    .map(|_| Self::disc_sample(&mut rng, radius))
                    .collect();
                let vertex_weights = (0..g.vertex_count())
                    .map(|_| Self::disc_sample(&mut rng, radius))
                    .collect();
                IsingInstance::new(g, edge_weights, vertex_weights).expect("weights per element")
            })
            .collect()
    }

    /// Ising instances with arbitrary complex weights of modulus at most
    /// `radius` (no regime constraint); used by the reduction identity.
    pub fn sample_ising_unrestricted(&self, count: usize, radius: f64) -> Vec<IsingInstance> {
        let mut rng = self.rng();
        (0..count)
            .map(|_| {
                let g = self.random_graph(&mut rng);
                let edge_weights = (0..g.edge_count())
                    .map(|_| Self::disc_sample(&mut rng, radius))
                    .collect();
                let vertex_weights = (0..g.vertex_count())
                    .map(|_| Self::disc_sample(&mut rng, radius))
                    .collect();
                IsingInstance::new(g, edge_weights, vertex_weights).expect("weights per element")
            })
            .collect()
    }

    /// Graph-induced X-programs with angles inside the certified bound
    /// `2 arcsin(target / 2)` for the fraction-scaled radius.
    pub fn sample_iqp(&self, count: usize) -> Vec<GraphXProgram> {
        let mut rng = self.rng();
        (0..count)
            .map(|_| {
                let g = self.random_graph(&mut rng);
                let target =
                    self.radius_fraction * zero_free_radius(g.max_degree() + 1);
                let bound = max_iqp_angle(target.min(2.0)).expect("target in (0, 2]");
                let edge_angles = (0..g.edge_count())
                    .map(|_| rng.gen_range(-bound..=bound))
                    .collect();
                let vertex_angles = (0..g.vertex_count())
                    .map(|_| rng.gen_range(-bound..=bound))
                    .collect();
                GraphXProgram::new(g, edge_angles, vertex_angles).expect("angles within bound")
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::{hom_restricted_exact, matrices_at};
    use crate::regimes::polyregion_report;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn edgeless_polynomial() {
        let g = Graph::new(3, &[]).unwrap();
        let inst = RestrictedHomInstance::new(
            g,
            SymmetricMatrixAssignment::all_ones(2, 0),
            VertexSubset::empty(),
            1,
        )
        .unwrap();
        let p = full_polynomial_coefficients(&inst).unwrap();
        assert_eq!(p.coeffs(), &[c(1.0, 0.0)]);
    }

    #[test]
    fn single_edge_uniform_entries() {
        let a = c(1.3, 0.4);
        let g = Graph::new(2, &[(0, 1)]).unwrap();
        let mats = SymmetricMatrixAssignment::new(2, vec![vec![a, a, a, a]]).unwrap();
        let inst = RestrictedHomInstance::new(g, mats, VertexSubset::empty(), 1).unwrap();
        let p = full_polynomial_coefficients(&inst).unwrap();
        assert!((p.coeffs()[1] - (a - 1.0)).norm() < 1e-14);
    }

    #[test]
    fn dual_path_evaluation() {
        let gen = InstanceGenerator {
            seed: 7,
            max_vertices: 6,
            max_degree: 3,
            radius_fraction: 0.9,
        };
        for inst in gen.sample_hom(5) {
            if inst.graph.edge_count() > 12 {
                continue;
            }
            let coeffs = full_polynomial_coefficients(&inst).unwrap();
            for z in [c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.5)] {
                let poly: Complex64 = coeffs
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(k, &a)| a * z.powu(k as u32))
                    .sum();
                let scaled = RestrictedHomInstance::new(
                    inst.graph.clone(),
                    matrices_at(&inst.matrices, z),
                    inst.pinned.clone(),
                    inst.pin_index,
                )
                .unwrap();
                let direct = hom_restricted_exact(&scaled).unwrap() / inst.scale();
                assert!(
                    (poly - direct).norm() < 1e-10 * direct.norm().max(1.0),
                    "mismatch at z = {z}"
                );
            }
        }
    }

    #[test]
    fn generator_is_deterministic() {
        let gen = InstanceGenerator {
            seed: 42,
            max_vertices: 8,
            max_degree: 3,
            radius_fraction: 0.9,
        };
        let a = gen.sample_ising(4);
        let b = gen.sample_ising(4);
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.graph(), y.graph());
            assert_eq!(x.edge_weights(), y.edge_weights());
            assert_eq!(x.vertex_weights(), y.vertex_weights());
        }
    }

    #[test]
    fn sampled_instances_respect_bounds() {
        let gen = InstanceGenerator {
            seed: 11,
            max_vertices: 9,
            max_degree: 3,
            radius_fraction: 0.9,
        };
        for inst in gen.sample_ising(20) {
            assert!(inst.graph().max_degree() <= 3);
            let threshold = zero_free_radius(inst.graph().max_degree() + 1);
            let report = polyregion_report(&inst, threshold);
            assert!(report.inside, "sampled instance escaped the polyregion");
        }
        for gxp in gen.sample_iqp(20) {
            assert!(gxp.graph().max_degree() <= 3);
        }
        for inst in gen.sample_hom(20) {
            assert!(inst.graph.max_degree() <= 3);
        }
    }
}
