//! Graph-induced X-programs and their all-zeros output amplitude,
//! computed through the Ising identity `psi = 2^{-|V|} Z(G; iW, iF)` and
//! cross-checked by a direct statevector route.

use num_complex::Complex64;

use crate::error::{HomqError, Result};
use crate::graph::Graph;
use crate::hom::{ApproxOptions, ApproxResult};
use crate::ising::{z_ising_approx, z_ising_exact, IsingInstance};

const PI: f64 = std::f64::consts::PI;

/// An X-program: binary matrix of Hamiltonian terms plus one angle.
#[derive(Clone, Debug)]
pub struct XProgram {
    rows: Vec<Vec<u8>>,
    theta: f64,
}

impl XProgram {
    /// `rows` are the Hamiltonian terms over `qubits` columns; entries 0/1.
    pub fn new(rows: Vec<Vec<u8>>, qubits: usize, theta: f64) -> Result<Self> {
        if !(-PI..=PI).contains(&theta) {
            return Err(HomqError::AngleOutOfRange { angle: theta });
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != qubits {
                return Err(HomqError::CountMismatch {
                    what: "row entries",
                    expected: qubits,
                    found: row.len(),
                });
            }
            assert!(
                row.iter().all(|&b| b <= 1),
                "row {i} contains a non-binary entry"
            );
        }
        Ok(XProgram { rows, theta })
    }

    pub fn qubits(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }
}

/// X-program induced by a weighted graph: one- and two-qubit terms only.
#[derive(Clone, Debug)]
pub struct GraphXProgram {
    graph: Graph,
    edge_angles: Vec<f64>,
    vertex_angles: Vec<f64>,
}

impl GraphXProgram {
    pub fn new(graph: Graph, edge_angles: Vec<f64>, vertex_angles: Vec<f64>) -> Result<Self> {
        if edge_angles.len() != graph.edge_count() {
            return Err(HomqError::CountMismatch {
                what: "edge angles",
                expected: graph.edge_count(),
                found: edge_angles.len(),
            });
        }
        if vertex_angles.len() != graph.vertex_count() {
            return Err(HomqError::CountMismatch {
                what: "vertex angles",
                expected: graph.vertex_count(),
                found: vertex_angles.len(),
            });
        }
        for &a in edge_angles.iter().chain(&vertex_angles) {
            if !(-PI..=PI).contains(&a) {
                return Err(HomqError::AngleOutOfRange { angle: a });
            }
        }
        Ok(GraphXProgram {
            graph,
            edge_angles,
            vertex_angles,
        })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn edge_angles(&self) -> &[f64] {
        &self.edge_angles
    }

    pub fn vertex_angles(&self) -> &[f64] {
        &self.vertex_angles
    }

    /// The imaginary-weight Ising instance of the amplitude identity.
    pub fn to_ising(&self) -> IsingInstance {
        IsingInstance::new(
            self.graph.clone(),
            self.edge_angles
                .iter()
                .map(|&a| Complex64::new(0.0, a))
                .collect(),
            self.vertex_angles
                .iter()
                .map(|&a| Complex64::new(0.0, a))
                .collect(),
        )
        .expect("weight counts match by construction")
    }
}

/// How an amplitude was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AmplitudeMethod {
    ViaIsingExact,
    ViaIsingApprox,
    Statevector,
}

#[derive(Clone, Copy, Debug)]
pub struct Amplitude {
    pub value: Complex64,
    pub method: AmplitudeMethod,
    pub epsilon: Option<f64>,
}

/// Evaluation mode for the Ising route.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsingMode {
    Exact,
    Approx,
}

/// Converts an X-program with rows of Hamming weight 1 or 2 into a
/// graph-induced X-program. Weight-2 rows become edges with the program
/// angle; weight-1 rows accumulate on the vertex.
pub fn xprogram_to_graph(xp: &XProgram) -> Result<GraphXProgram> {
    let n = xp.qubits();
    let mut pairs = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut vertex_angles = vec![0.0f64; n];
    for (i, row) in xp.rows.iter().enumerate() {
        let support: Vec<usize> = row
            .iter()
            .enumerate()
            .filter(|(_, &b)| b == 1)
            .map(|(j, _)| j)
            .collect();
        match support.as_slice() {
            [v] => {
                vertex_angles[*v] += xp.theta;
                if !(-PI..=PI).contains(&vertex_angles[*v]) {
                    return Err(HomqError::AngleOutOfRange {
                        angle: vertex_angles[*v],
                    });
                }
            }
            [u, v] => {
                if !seen.insert((*u, *v)) {
                    return Err(HomqError::DuplicateEdgeRow { u: *u, v: *v });
                }
                pairs.push((*u, *v));
            }
            _ => {
                return Err(HomqError::RowWeightUnsupported {
                    row: i,
                    weight: support.len(),
                })
            }
        }
    }
    let graph = Graph::new(n, &pairs)?;
    let edge_angles = vec![xp.theta; pairs.len()];
    GraphXProgram::new(graph, edge_angles, vertex_angles)
}

/// Amplitude through the Ising identity, exactly or approximately.
pub fn psi_via_ising(
    gxp: &GraphXProgram,
    mode: IsingMode,
    epsilon: Option<f64>,
    opts: &ApproxOptions,
) -> Result<Amplitude> {
    let inst = gxp.to_ising();
    let scale = 0.5f64.powi(gxp.graph.vertex_count() as i32);
    match mode {
        IsingMode::Exact => {
            let z = z_ising_exact(&inst)?;
            Ok(Amplitude {
                value: scale * z,
                method: AmplitudeMethod::ViaIsingExact,
                epsilon: None,
            })
        }
        IsingMode::Approx => {
            let eps = epsilon.unwrap_or(0.01);
            let res = z_ising_approx(&inst, eps, opts)?;
            Ok(Amplitude {
                value: scale * res.value,
                method: AmplitudeMethod::ViaIsingApprox,
                epsilon: Some(eps),
            })
        }
    }
}

/// As [`psi_via_ising`] in approx mode, returning the full pipeline result
/// alongside the amplitude.
pub fn psi_via_ising_approx_detailed(
    gxp: &GraphXProgram,
    epsilon: f64,
    opts: &ApproxOptions,
) -> Result<(Amplitude, ApproxResult)> {
    let inst = gxp.to_ising();
    let scale = 0.5f64.powi(gxp.graph.vertex_count() as i32);
    let res = z_ising_approx(&inst, epsilon, opts)?;
    Ok((
        Amplitude {
            value: scale * res.value,
            method: AmplitudeMethod::ViaIsingApprox,
            epsilon: Some(epsilon),
        },
        res,
    ))
}

/// Direct statevector oracle: applies `exp(i w XX)` per edge and
/// `exp(i u X)` per vertex to `|0...0>` and reads the amplitude at index 0.
/// All terms commute, so application order is irrelevant.
pub fn psi_statevector(gxp: &GraphXProgram) -> Result<Amplitude> {
    let n = gxp.graph.vertex_count();
    if n > 20 {
        return Err(HomqError::InstanceTooLarge {
            reason: format!("2^{n} statevector amplitudes exceed the simulator guard"),
        });
    }
    let dim = 1usize << n;
    let mut state = vec![Complex64::new(0.0, 0.0); dim];
    state[0] = Complex64::new(1.0, 0.0);

    // exp(i t X...X) on the qubits of `mask`:
    // a -> cos(t) a + i sin(t) b with b the mask-flipped partner
    let mut apply = |mask: usize, t: f64| {
        let (cos, sin) = (t.cos(), t.sin());
        let is = Complex64::new(0.0, sin);
        for idx in 0..dim {
            let partner = idx ^ mask;
            if partner > idx {
                let (a, b) = (state[idx], state[partner]);
                state[idx] = cos * a + is * b;
                state[partner] = cos * b + is * a;
            }
        }
    };
    for (e, &(u, v)) in gxp.graph.edges().iter().enumerate() {
        apply((1 << u) | (1 << v), gxp.edge_angles[e]);
    }
    for (v, &t) in gxp.vertex_angles.iter().enumerate() {
        apply(1 << v, t);
    }
    Ok(Amplitude {
        value: state[0],
        method: AmplitudeMethod::Statevector,
        epsilon: None,
    })
}

/// `|psi|^2` at the all-zeros string. In approx mode the probability
/// carries a multiplicative `e^{+-2 epsilon}` guarantee.
pub fn output_probability_zero(
    gxp: &GraphXProgram,
    mode: IsingMode,
    epsilon: Option<f64>,
    opts: &ApproxOptions,
) -> Result<f64> {
    let amp = psi_via_ising(gxp, mode, epsilon, opts)?;
    Ok(amp.value.norm_sqr())
}
