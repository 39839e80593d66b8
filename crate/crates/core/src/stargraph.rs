//! Weighted star graphs whose min-cuts reproduce symmetrized Dicke entropies.
//!
//! A star graph on `N` parties has `N` unit legs and one purifier leg of
//! weight `w` (possibly negative). Cutting off an `ℓ`-party region costs
//! either `ℓ` (the region legs) or `N − 1 − ℓ + w` (the other unit legs plus
//! the purifier leg).

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::base::LogBase;
use crate::dicke::{binom, format_sig, symmetrized_entropy, DickeSpec};
use crate::error::{Error, Result};

/// Relative tolerance for weight comparisons.
pub const WEIGHT_TOL: f64 = 1e-12;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarGraph {
    pub n: usize,
    /// Weight of the purifier leg `O`; the `N` party legs have weight 1.
    pub w: f64,
}

impl StarGraph {
    pub fn new(n: usize, w: f64) -> Self {
        StarGraph { n, w }
    }

    /// `(label, weight)` for every leg, parties first (`1..N`) then `O`.
    pub fn legs(&self) -> Vec<(String, f64)> {
        (1..=self.n).map(|i| (i.to_string(), 1.0)).chain(std::iter::once(("O".to_string(), self.w))).collect()
    }

    /// Number of legs with weight `≤ 0`.
    pub fn non_positive_legs(&self) -> usize {
        self.legs().iter().filter(|(_, w)| *w <= 0.0).count()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CutSide {
    /// The `ℓ` region legs are cut.
    Region,
    /// The remaining unit legs and the purifier leg are cut.
    Complement,
}

/// `min{ℓ, N−1−ℓ+w}` with the side achieving it; exact ties report `Region`.
pub fn star_min_cut_side(g: &StarGraph, l: usize) -> (f64, CutSide) {
    let region = l as f64;
    let comp = g.n as f64 - 1.0 - l as f64 + g.w;
    if region <= comp {
        (region, CutSide::Region)
    } else {
        (comp, CutSide::Complement)
    }
}

pub fn star_min_cut(g: &StarGraph, l: usize) -> f64 {
    star_min_cut_side(g, l).0
}

fn check_interior(n: usize, l: usize) -> Result<()> {
    if n < 2 || l == 0 || l >= n {
        return Err(Error::SubsystemSizeOutOfRange { l, n });
    }
    Ok(())
}

/// `w₁ = ℓ + log(N/(N−ℓ)) − (N−1)`.
pub fn solve_w1(n: usize, l: usize, base: LogBase) -> Result<f64> {
    check_interior(n, l)?;
    Ok(l as f64 + base.log(n as f64 / (n - l) as f64) - (n as f64 - 1.0))
}

/// `w₂ = log(N/ℓ) − ℓ + 1`.
pub fn solve_w2(n: usize, l: usize, base: LogBase) -> Result<f64> {
    check_interior(n, l)?;
    Ok(base.log(n as f64 / l as f64) - l as f64 + 1.0)
}

/// The bound `ℓ < (N−1) − log(N/(N−ℓ))` predicting `w₁ < 0`.
pub fn w1_bound_negative(n: usize, l: usize, base: LogBase) -> Result<bool> {
    check_interior(n, l)?;
    Ok((l as f64) < (n as f64 - 1.0) - base.log(n as f64 / (n - l) as f64))
}

/// The bound `ℓ > 1 + log(N/ℓ)` predicting `w₂ < 0`.
pub fn w2_bound_negative(n: usize, l: usize, base: LogBase) -> Result<bool> {
    check_interior(n, l)?;
    Ok((l as f64) > 1.0 + base.log(n as f64 / l as f64))
}

/// Two-graph realization of `S̃_ℓ(|W_N⟩)`:
/// `(1/N)[(N−ℓ)·min{ℓ, N−1−ℓ+w₁} + ℓ·min{N−ℓ, w₂+ℓ−1}]`.
pub fn wstate_startilde(n: usize, l: usize, base: LogBase) -> Result<f64> {
    let g1 = StarGraph::new(n, solve_w1(n, l, base)?);
    let g2 = StarGraph::new(n, solve_w2(n, l, base)?);
    let nf = n as f64;
    Ok(((n - l) as f64 * star_min_cut(&g1, l) + l as f64 * star_min_cut(&g2, n - l)) / nf)
}

/// One summand `i` of the entropy of the `part`-sized region.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarGraphTerm {
    /// Region size of the entropy this term belongs to (`ℓ` or `N−ℓ`).
    pub part: usize,
    /// Number of excitations inside that region.
    pub i: usize,
    /// Hypergeometric probability `binom(part,i) binom(N−part,k−i) / binom(N,k)`.
    pub probability: f64,
    /// Part weight times `probability`.
    pub coefficient: f64,
    /// `−log p_i`, the min-cut value the graph has to produce.
    pub target: f64,
    /// Region size at which the min-cut is evaluated.
    pub selector: usize,
    pub graph: StarGraph,
    /// Whether the min-cut at `selector` reaches `target`; false when
    /// `target` exceeds every available region size.
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StarGraphSum {
    pub spec: DickeSpec,
    pub l: usize,
    pub base: LogBase,
    /// `binom(N−1,ℓ)/binom(N,ℓ)` and `binom(N−1,N−ℓ)/binom(N,ℓ)`.
    pub part_weights: (f64, f64),
    pub terms: Vec<StarGraphTerm>,
}

/// Graphs of a sum after combining terms with equal selector and weight.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergedGraph {
    pub coefficient: f64,
    pub selector: usize,
    pub graph: StarGraph,
}

fn ratio(a: u128, b: u128) -> f64 {
    a as f64 / b as f64
}

fn build_part(spec: DickeSpec, part: usize, weight: f64, base: LogBase) -> Result<Vec<StarGraphTerm>> {
    let (n, k) = (spec.n, spec.k);
    let total = binom(n, k).ok_or(Error::Overflow)?;
    let nf = n as f64;
    let mut out = Vec::new();
    for i in 0..=part.min(k) {
        let c = binom(part, i).ok_or(Error::Overflow)? * binom(n - part, k - i).ok_or(Error::Overflow)?;
        if c == 0 {
            out.push(StarGraphTerm {
                part,
                i,
                probability: 0.0,
                coefficient: 0.0,
                target: 0.0,
                selector: part,
                graph: StarGraph::new(n, 0.0),
                feasible: true,
            });
            continue;
        }
        let p = ratio(c, total);
        let target = -base.log(p);
        // fewer excitations inside than outside: cut the region itself
        let preferred = if i <= k - i { part } else { n - part };
        let other = n - preferred;
        let fits = |s: usize| target <= s as f64 + WEIGHT_TOL * target.abs().max(1.0);
        let (selector, feasible) = if fits(preferred) {
            (preferred, true)
        } else if fits(other) {
            (other, true)
        } else {
            (preferred.max(other), false)
        };
        let w = target - (nf - 1.0 - selector as f64);
        out.push(StarGraphTerm {
            part,
            i,
            probability: p,
            coefficient: weight * p,
            target,
            selector,
            graph: StarGraph::new(n, w),
            feasible,
        });
    }
    Ok(out)
}

/// Star-graph sum for `S̃_ℓ`: `min(ℓ,k)+1` graphs for the `S_ℓ` part and
/// `min(N−ℓ,k)+1` for the `S_{N−ℓ}` part, one per summand.
pub fn build_stargraph_sum(spec: DickeSpec, l: usize, base: LogBase) -> Result<StarGraphSum> {
    let spec = DickeSpec::new(spec.n, spec.k)?;
    let n = spec.n;
    check_interior(n, l)?;
    let c = binom(n, l).ok_or(Error::Overflow)?;
    let a = ratio(binom(n - 1, l).ok_or(Error::Overflow)?, c);
    let b = ratio(binom(n - 1, n - l).ok_or(Error::Overflow)?, c);
    let mut terms = build_part(spec, l, a, base)?;
    terms.extend(build_part(spec, n - l, b, base)?);
    Ok(StarGraphSum { spec, l, base, part_weights: (a, b), terms })
}

impl StarGraphSum {
    pub fn evaluate(&self) -> f64 {
        evaluate(self)
    }

    pub fn terms_for_part(&self, part: usize) -> impl Iterator<Item = &StarGraphTerm> {
        self.terms.iter().filter(move |t| t.part == part)
    }

    pub fn all_feasible(&self) -> bool {
        self.terms.iter().all(|t| t.feasible)
    }

    /// Terms with non-zero coefficient, combined when selector and weight agree.
    pub fn merged(&self) -> Vec<MergedGraph> {
        let mut out: Vec<MergedGraph> = Vec::new();
        for t in self.terms.iter().filter(|t| t.coefficient != 0.0) {
            let same = |m: &MergedGraph| {
                m.selector == t.selector && (m.graph.w - t.graph.w).abs() <= WEIGHT_TOL * m.graph.w.abs().max(1.0)
            };
            match out.iter_mut().find(|m| same(m)) {
                Some(m) => m.coefficient += t.coefficient,
                None => out.push(MergedGraph { coefficient: t.coefficient, selector: t.selector, graph: t.graph.clone() }),
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("star graph sum serializes")
    }

    /// Undirected DOT graph with one cluster per term: hub `t<j>` joined to
    /// party vertices and the purifier `O`, each edge labelled by weight.
    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph stargraph {{");
        let _ = writeln!(
            s,
            "  label=\"D^{}_{} l={} base {}\";",
            self.spec.n, self.spec.k, self.l, self.base
        );
        for (j, t) in self.terms.iter().enumerate() {
            let _ = writeln!(s, "  subgraph cluster_{j} {{");
            let _ = writeln!(
                s,
                "    label=\"S_{} i={} coef={} cut at {}\";",
                t.part,
                t.i,
                format_sig(t.coefficient, 10),
                t.selector
            );
            let _ = writeln!(s, "    t{j} [shape=point];");
            for (label, w) in t.graph.legs() {
                let node = format!("t{j}_{label}");
                let _ = writeln!(s, "    {node} [label=\"{label}\"];");
                let style = if w <= 0.0 { ", style=dashed" } else { "" };
                let _ = writeln!(s, "    t{j} -- {node} [label=\"{}\"{style}];", format_sig(w, 10));
            }
            let _ = writeln!(s, "  }}");
        }
        let _ = writeln!(s, "}}");
        s
    }
}

/// `Σ coefficient · min-cut(graph, selector)`.
pub fn evaluate(sum: &StarGraphSum) -> f64 {
    sum.terms.iter().map(|t| t.coefficient * star_min_cut(&t.graph, t.selector)).sum()
}

/// Absolute difference between the star-graph evaluation and the closed
/// form `S̃_ℓ`.
pub fn stargraph_residual(sum: &StarGraphSum) -> Result<f64> {
    Ok((evaluate(sum) - symmetrized_entropy(sum.spec, sum.l, sum.base)?).abs())
}
