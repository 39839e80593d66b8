use serde::Serialize;

use super::{classify_vertices, orbit_under, ReachabilityGraph, DEFAULT_ORBIT_CAP, DEFAULT_TARGETS};
use crate::base::LogBase;
use crate::dicke::{make_dicke, DickeSpec};
use crate::error::{Error, Result};
use crate::groups::GroupKind;

pub const CENSUS_TOL: f64 = 1e-9;
/// Recount tolerance; a census whose count moves under it is flagged unstable.
pub const CENSUS_AUDIT_TOL: f64 = 5e-10;

/// Per-orbit counts: vertices, entropy-vector classes and distinct non-zero
/// subsystem entropies over all classes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EntropyCensus {
    pub spec: DickeSpec,
    pub group: GroupKind,
    pub orbit_size: usize,
    pub num_classes: usize,
    pub num_distinct_entropies: usize,
    pub audit_distinct_entropies: usize,
}

impl EntropyCensus {
    pub const CSV_HEADER: &'static str = "n,k,group,orbit_size,num_classes,num_distinct_entropies";

    pub fn stable(&self) -> bool {
        self.num_distinct_entropies == self.audit_distinct_entropies
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{}",
            self.spec.n, self.spec.k, self.group, self.orbit_size, self.num_classes, self.num_distinct_entropies
        )
    }
}

/// Clusters sorted values whose neighbours sit within `tol`, ignoring
/// everything at or below `tol` (the zero entropy).
pub fn count_distinct_nonzero(values: &[f64], tol: f64) -> usize {
    let mut v: Vec<f64> = values.iter().copied().filter(|x| *x > tol).collect();
    v.sort_by(f64::total_cmp);
    let mut count = 0;
    let mut last = f64::NEG_INFINITY;
    for x in v {
        if x - last > tol {
            count += 1;
        }
        last = x;
    }
    count
}

pub fn entropy_census(spec: DickeSpec, group: GroupKind) -> Result<EntropyCensus> {
    let mut graph = orbit_under(&make_dicke(spec)?, group, &DEFAULT_TARGETS, DEFAULT_ORBIT_CAP)?;
    classify_vertices(&mut graph, LogBase::Two)?;
    entropy_census_with(spec, group, &graph)
}

/// Census of an already classified graph.
pub fn entropy_census_with(spec: DickeSpec, group: GroupKind, graph: &ReachabilityGraph) -> Result<EntropyCensus> {
    if graph.vertex_class.is_none() {
        return Err(Error::Precondition("graph has not been classified".into()));
    }
    let all: Vec<f64> = graph.class_table.iter().flat_map(|v| v.entries.iter().copied()).collect();
    let census = EntropyCensus {
        spec,
        group,
        orbit_size: graph.len(),
        num_classes: graph.num_classes(),
        num_distinct_entropies: count_distinct_nonzero(&all, CENSUS_TOL),
        audit_distinct_entropies: count_distinct_nonzero(&all, CENSUS_AUDIT_TOL),
    };
    Ok(census)
}
