//! Orbits of states under generator sets, drawn as reachability graphs.

mod census;
mod export;
mod iso;

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

pub use census::{entropy_census, entropy_census_with, count_distinct_nonzero, EntropyCensus, CENSUS_AUDIT_TOL, CENSUS_TOL};
pub use export::{palette_color, GraphFormat, PALETTE};
pub use iso::{certify_non_isomorphic, wl_histogram, NonIsomorphism};

use crate::base::LogBase;
use crate::dicke::{make_dicke, state_entropy_vector, DickeSpec, EntropyForm, EntropyVector};
use crate::error::{Error, Result};
use crate::exact_state::{CanonicalStateKey, Gate, PureState};
use crate::groups::{clifford_stabilizers, enumerate_group, pauli_stabilizers, GroupKind, DEFAULT_GROUP_CAP};

/// Default vertex cap for [`build_orbit`].
pub const DEFAULT_ORBIT_CAP: usize = 1_000_000;
/// Per-component tolerance for grouping entropy vectors into classes.
pub const CLASS_TOL: f64 = 1e-9;
/// Default acting qubits for two-qubit groups (qubits 1 and 2).
pub const DEFAULT_TARGETS: [usize; 2] = [0, 1];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: String,
    /// False for self-inverse generators.
    pub directed: bool,
}

/// Vertices in BFS discovery order from the seed, with one edge per
/// (vertex, generator) pair.
#[derive(Clone, Debug, PartialEq)]
pub struct ReachabilityGraph {
    pub n: usize,
    pub generators: Vec<Gate>,
    pub vertices: Vec<CanonicalStateKey>,
    pub states: Vec<PureState>,
    pub edges: Vec<Edge>,
    /// Class id per vertex once classified.
    pub vertex_class: Option<Vec<usize>>,
    /// Reduced entropy vector per class id.
    pub class_table: Vec<EntropyVector>,
}

impl ReachabilityGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn num_classes(&self) -> usize {
        self.class_table.len()
    }

    /// Outgoing edges per vertex (generator applications), always the
    /// generator count.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.len()];
        for e in &self.edges {
            d[e.from] += 1;
        }
        d
    }

    pub fn self_loops(&self) -> usize {
        self.edges.iter().filter(|e| e.from == e.to).count()
    }

    /// Every vertex reachable from vertex 0 along edges.
    pub fn is_connected(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let mut adj = vec![Vec::new(); self.len()];
        for e in &self.edges {
            adj[e.from].push(e.to);
            adj[e.to].push(e.from);
        }
        let mut seen = vec![false; self.len()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &u in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    stack.push(u);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Breadth-first orbit of `seed`; every generator is applied at every vertex.
pub fn build_orbit(seed: &PureState, generators: &[Gate], cap: usize) -> Result<ReachabilityGraph> {
    for g in generators {
        g.validate(seed.num_qubits())?;
    }
    let labels: Vec<String> = generators.iter().map(Gate::to_string).collect();
    let mut index: HashMap<CanonicalStateKey, usize> = HashMap::new();
    let seed_key = seed.canonical_key();
    index.insert(seed_key.clone(), 0);
    let mut vertices = vec![seed_key];
    let mut states = vec![seed.clone()];
    let mut edges = Vec::with_capacity(generators.len());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for (g, label) in generators.iter().zip(&labels) {
            let image = states[v].apply_gate(*g)?;
            let key = image.canonical_key();
            let to = match index.get(&key) {
                Some(&i) => i,
                None => {
                    if vertices.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let i = vertices.len();
                    index.insert(key.clone(), i);
                    vertices.push(key);
                    states.push(image);
                    queue.push_back(i);
                    i
                }
            };
            edges.push(Edge { from: v, to, label: label.clone(), directed: !g.is_self_inverse() });
        }
    }
    Ok(ReachabilityGraph {
        n: seed.num_qubits(),
        generators: generators.to_vec(),
        vertices,
        states,
        edges,
        vertex_class: None,
        class_table: Vec::new(),
    })
}

/// Orbit of `seed` under a named group, two-qubit groups lifted onto `targets`.
pub fn orbit_under(seed: &PureState, kind: GroupKind, targets: &[usize], cap: usize) -> Result<ReachabilityGraph> {
    let targets: Vec<usize> = match kind.local_qubits() {
        Some(t) if targets.len() > t => targets[..t].to_vec(),
        _ => targets.to_vec(),
    };
    build_orbit(seed, &kind.generators(seed.num_qubits(), &targets)?, cap)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitRow {
    pub spec: DickeSpec,
    pub group: GroupKind,
    pub orbit_size: usize,
}

pub fn orbit_size_table(specs: &[DickeSpec], kind: GroupKind) -> Result<Vec<OrbitRow>> {
    specs
        .iter()
        .map(|&spec| {
            let g = orbit_under(&make_dicke(spec)?, kind, &DEFAULT_TARGETS, DEFAULT_ORBIT_CAP)?;
            Ok(OrbitRow { spec, group: kind, orbit_size: g.len() })
        })
        .collect()
}

/// Groups vertices by reduced entropy vector (per-component tolerance
/// [`CLASS_TOL`]); class ids follow first appearance in vertex order.
pub fn classify_vertices(graph: &mut ReachabilityGraph, base: LogBase) -> Result<()> {
    let vectors: Vec<EntropyVector> =
        graph.states.iter().map(|s| state_entropy_vector(s, EntropyForm::Reduced, base)).collect::<Result<_>>()?;
    let mut table: Vec<EntropyVector> = Vec::new();
    let mut class = Vec::with_capacity(vectors.len());
    for v in vectors {
        match table.iter().position(|t| t.approx_eq(&v, CLASS_TOL)) {
            Some(i) => class.push(i),
            None => {
                class.push(table.len());
                table.push(v);
            }
        }
    }
    graph.vertex_class = Some(class);
    graph.class_table = table;
    Ok(())
}

/// `|G|`, `|orbit|` and `|Stab|` for one seed and group.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitStabilizer {
    pub group_order: u128,
    pub orbit_size: usize,
    pub stabilizer_order: usize,
}

impl OrbitStabilizer {
    pub fn holds(&self) -> bool {
        self.group_order == self.orbit_size as u128 * self.stabilizer_order as u128
    }
}

/// Computes both sides of the orbit-stabilizer identity independently:
/// the orbit by BFS over states, the stabilizer by scanning the group.
pub fn orbit_stabilizer(seed: &PureState, kind: GroupKind, targets: &[usize]) -> Result<OrbitStabilizer> {
    let orbit = orbit_under(seed, kind, targets, DEFAULT_ORBIT_CAP)?;
    match kind.local_qubits() {
        None => {
            let st = pauli_stabilizers(seed)?;
            Ok(OrbitStabilizer { group_order: 1u128 << (2 * seed.num_qubits()), orbit_size: orbit.len(), stabilizer_order: st.order })
        }
        Some(t) => {
            let group = enumerate_group(&kind.local_generators(), t, DEFAULT_GROUP_CAP)?;
            let st = clifford_stabilizers(seed, &group, &targets[..t])?;
            Ok(OrbitStabilizer { group_order: group.order() as u128, orbit_size: orbit.len(), stabilizer_order: st.order })
        }
    }
}

/// Gates generating the three-qubit Clifford group on a register:
/// `H` and `P` on each qubit plus CNOTs along the chain in both directions.
pub fn c3_generators() -> Vec<Gate> {
    let mut g = Vec::new();
    for q in 0..3 {
        g.push(Gate::H(q));
        g.push(Gate::P(q));
    }
    g.extend([Gate::Cnot(0, 1), Gate::Cnot(1, 0), Gate::Cnot(1, 2), Gate::Cnot(2, 1)]);
    g
}

/// First three-qubit stabilizer state (in BFS order of the `C₃` orbit of
/// `|000⟩`) whose `(HC)₁,₂` orbit has `orbit_size` vertices.
pub fn find_stabilizer_seed(orbit_size: usize) -> Result<Option<PureState>> {
    let stabilizer_states = build_orbit(&PureState::basis(3, 0)?, &c3_generators(), DEFAULT_ORBIT_CAP)?;
    for s in &stabilizer_states.states {
        if orbit_under(s, GroupKind::Hc12, &DEFAULT_TARGETS, DEFAULT_ORBIT_CAP)?.len() == orbit_size {
            return Ok(Some(s.clone()));
        }
    }
    Ok(None)
}
