use std::collections::hash_map::DefaultHasher;
use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::ReachabilityGraph;

/// Invariant that separates two graphs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NonIsomorphism {
    VertexCount(usize, usize),
    EdgeCount(usize, usize),
    SelfLoops(usize, usize),
    /// Color-refinement histograms differ after `round` rounds.
    Refinement { round: usize, labelled: bool },
}

impl fmt::Display for NonIsomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NonIsomorphism::VertexCount(a, b) => write!(f, "vertex counts differ ({a} vs {b})"),
            NonIsomorphism::EdgeCount(a, b) => write!(f, "edge counts differ ({a} vs {b})"),
            NonIsomorphism::SelfLoops(a, b) => write!(f, "self-loop counts differ ({a} vs {b})"),
            NonIsomorphism::Refinement { round: 0, labelled } => {
                write!(f, "{} degree multisets differ", if *labelled { "labelled" } else { "unlabelled" })
            }
            NonIsomorphism::Refinement { round, labelled } => write!(
                f,
                "{} color refinement separates the graphs after {round} rounds",
                if *labelled { "labelled" } else { "unlabelled" }
            ),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Incidence {
    Out,
    In,
    Undirected,
    Loop,
}

type Neighbourhood = Vec<Vec<(String, Incidence, usize)>>;

fn neighbourhoods(g: &ReachabilityGraph, labelled: bool) -> Neighbourhood {
    let mut nb = vec![Vec::new(); g.len()];
    for e in g.edges.iter().filter(|e| e.directed || e.from <= e.to) {
        let label = if labelled { e.label.clone() } else { String::new() };
        if e.from == e.to {
            nb[e.from].push((label, Incidence::Loop, e.to));
        } else if e.directed {
            nb[e.from].push((label.clone(), Incidence::Out, e.to));
            nb[e.to].push((label, Incidence::In, e.from));
        } else {
            nb[e.from].push((label.clone(), Incidence::Undirected, e.to));
            nb[e.to].push((label, Incidence::Undirected, e.from));
        }
    }
    nb
}

fn hash_of<T: Hash>(t: &T) -> u64 {
    let mut h = DefaultHasher::new();
    t.hash(&mut h);
    h.finish()
}

fn refine(nb: &Neighbourhood, colors: &[u64]) -> Vec<u64> {
    nb.iter()
        .enumerate()
        .map(|(v, adj)| {
            let mut sig: Vec<(&str, Incidence, u64)> = adj.iter().map(|(l, i, u)| (l.as_str(), *i, colors[*u])).collect();
            sig.sort_unstable();
            hash_of(&(colors[v], sig))
        })
        .collect()
}

fn histogram(colors: &[u64]) -> Vec<(u64, usize)> {
    let mut m = BTreeMap::new();
    for &c in colors {
        *m.entry(c).or_insert(0) += 1;
    }
    m.into_iter().collect()
}

/// Sorted color histogram after `rounds` rounds of refinement, starting from
/// uniform colors (round 1 therefore encodes the degree multiset).
pub fn wl_histogram(g: &ReachabilityGraph, rounds: usize, labelled: bool) -> Vec<(u64, usize)> {
    let nb = neighbourhoods(g, labelled);
    let mut colors = vec![0u64; g.len()];
    for _ in 0..rounds {
        colors = refine(&nb, &colors);
    }
    histogram(&colors)
}

fn refinement_split(a: &ReachabilityGraph, b: &ReachabilityGraph, labelled: bool, max_rounds: usize) -> Option<usize> {
    let (na, nb) = (neighbourhoods(a, labelled), neighbourhoods(b, labelled));
    let (mut ca, mut cb) = (vec![0u64; a.len()], vec![0u64; b.len()]);
    let mut classes = 1;
    for round in 0..max_rounds {
        ca = refine(&na, &ca);
        cb = refine(&nb, &cb);
        let (ha, hb) = (histogram(&ca), histogram(&cb));
        if ha != hb {
            return Some(round);
        }
        if ha.len() == classes {
            return None;
        }
        classes = ha.len();
    }
    None
}

/// A reason the two graphs cannot be isomorphic, or `None` when none of the
/// invariants separates them. Unlabelled invariants are tried first, so a
/// reason with `labelled: false` rules out every isomorphism, not only
/// label-preserving ones.
pub fn certify_non_isomorphic(a: &ReachabilityGraph, b: &ReachabilityGraph) -> Option<NonIsomorphism> {
    if a.len() != b.len() {
        return Some(NonIsomorphism::VertexCount(a.len(), b.len()));
    }
    if a.edges.len() != b.edges.len() {
        return Some(NonIsomorphism::EdgeCount(a.edges.len(), b.edges.len()));
    }
    if a.self_loops() != b.self_loops() {
        return Some(NonIsomorphism::SelfLoops(a.self_loops(), b.self_loops()));
    }
    let max_rounds = a.len() + 1;
    for labelled in [false, true] {
        if let Some(round) = refinement_split(a, b, labelled, max_rounds) {
            return Some(NonIsomorphism::Refinement { round, labelled });
        }
    }
    None
}
