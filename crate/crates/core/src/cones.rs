//! Entropy-cone inequality families evaluated on entropy vectors.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dicke::{format_sig, full_subsystems, subsystem_label, EntropyForm, EntropyVector};
use crate::error::{Error, Result};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Subadditivity,
    Mmi,
    Sqec,
    Shec,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Subadditivity, Family::Mmi, Family::Sqec, Family::Shec];

    /// The form of vector this family is evaluated on.
    pub fn input_form(self) -> EntropyForm {
        match self {
            Family::Subadditivity | Family::Mmi => EntropyForm::Full,
            Family::Sqec | Family::Shec => EntropyForm::Symmetrized,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Subadditivity => "subadditivity",
            Family::Mmi => "mmi",
            Family::Sqec => "sqec",
            Family::Shec => "shec",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "subadditivity" | "sa" => Ok(Family::Subadditivity),
            "mmi" => Ok(Family::Mmi),
            "sqec" => Ok(Family::Sqec),
            "shec" => Ok(Family::Shec),
            _ => Err(Error::Parse(format!("unknown inequality family {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Satisfied,
    Saturated,
    Violated,
}

impl Status {
    pub fn from_slack(slack: f64, tol: f64) -> Status {
        if slack.abs() <= tol {
            Status::Saturated
        } else if slack > tol {
            Status::Satisfied
        } else {
            Status::Violated
        }
    }
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Satisfied => "satisfied",
            Status::Saturated => "saturated",
            Status::Violated => "violated",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Instance {
    /// Subsystems separated by `:` (`"1:23"`), or `l=3` for symmetrized families.
    pub label: String,
    /// `lhs − rhs` of the inequality written as `lhs ≥ rhs`.
    pub slack: f64,
    pub status: Status,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub family: Family,
    pub tolerance: f64,
    pub instances: Vec<Instance>,
}

impl InequalityReport {
    fn new(family: Family, tolerance: f64, raw: Vec<(String, f64)>) -> Self {
        let instances = raw
            .into_iter()
            .map(|(label, slack)| Instance { label, slack, status: Status::from_slack(slack, tolerance) })
            .collect();
        InequalityReport { family, tolerance, instances }
    }

    pub fn count(&self, status: Status) -> usize {
        self.instances.iter().filter(|i| i.status == status).count()
    }

    pub fn has_violation(&self) -> bool {
        self.count(Status::Violated) > 0
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_table(&self) -> String {
        let width = self.instances.iter().map(|i| i.label.len()).max().unwrap_or(0).max(8);
        let mut out = format!(
            "{} ({} instances: {} satisfied, {} saturated, {} violated; tol {:e})\n",
            self.family,
            self.instances.len(),
            self.count(Status::Satisfied),
            self.count(Status::Saturated),
            self.count(Status::Violated),
            self.tolerance
        );
        for i in &self.instances {
            out.push_str(&format!("  {:<width$}  {:>18}  {}\n", i.label, format_sig(i.slack, 10), i.status));
        }
        out
    }
}

fn expect_form(v: &EntropyVector, form: EntropyForm) -> Result<()> {
    if v.form != form {
        return Err(Error::WrongForm { expected: form_name(form), found: form_name(v.form) });
    }
    Ok(())
}

fn form_name(f: EntropyForm) -> &'static str {
    match f {
        EntropyForm::Full => "full",
        EntropyForm::Reduced => "reduced",
        EntropyForm::Symmetrized => "symmetrized",
    }
}

/// `S` indexed by subsystem bitmask (bit `q` set when qubit `q` is included).
fn by_mask(v: &EntropyVector) -> Result<Vec<f64>> {
    let subs = full_subsystems(v.n);
    if v.entries.len() != subs.len() {
        return Err(Error::MissingEntries(format!("full vector for {} parties needs {} entries, got {}", v.n, subs.len(), v.entries.len())));
    }
    let mut table = vec![0.0; 1 << v.n];
    for (s, &e) in subs.iter().zip(&v.entries) {
        table[s.iter().map(|q| 1usize << q).sum::<usize>()] = e;
    }
    Ok(table)
}

fn mask_label(mask: usize, n: usize) -> String {
    let qs: Vec<usize> = (0..n).filter(|q| mask >> q & 1 == 1).collect();
    subsystem_label(&qs)
}

/// Enumerates unordered tuples of `parts` disjoint non-empty subsystems,
/// each tuple listed once with blocks ordered by their lowest qubit.
fn disjoint_tuples(n: usize, parts: usize) -> Vec<Vec<usize>> {
    let radix = parts + 1;
    let total = radix.pow(n as u32);
    let mut out = Vec::new();
    let mut digits = vec![0usize; n];
    for code in 0..total {
        let mut c = code;
        for d in digits.iter_mut() {
            *d = c % radix;
            c /= radix;
        }
        let mut masks = vec![0usize; parts];
        let mut first = vec![usize::MAX; parts];
        for (q, &d) in digits.iter().enumerate() {
            if d > 0 {
                masks[d - 1] |= 1 << q;
                first[d - 1] = first[d - 1].min(q);
            }
        }
        if first.iter().all(|&f| f != usize::MAX) && first.windows(2).all(|w| w[0] < w[1]) {
            out.push(masks);
        }
    }
    out
}

pub fn check_subadditivity(v: &EntropyVector) -> Result<InequalityReport> {
    check_subadditivity_tol(v, DEFAULT_TOLERANCE)
}

/// `S_I + S_J ≥ S_IJ` for every unordered disjoint pair.
pub fn check_subadditivity_tol(v: &EntropyVector, tol: f64) -> Result<InequalityReport> {
    expect_form(v, EntropyForm::Full)?;
    let s = by_mask(v)?;
    let raw = disjoint_tuples(v.n, 2)
        .into_iter()
        .map(|m| {
            let (i, j) = (m[0], m[1]);
            (format!("{}:{}", mask_label(i, v.n), mask_label(j, v.n)), s[i] + s[j] - s[i | j])
        })
        .collect();
    Ok(InequalityReport::new(Family::Subadditivity, tol, raw))
}

pub fn check_mmi(v: &EntropyVector) -> Result<InequalityReport> {
    check_mmi_tol(v, DEFAULT_TOLERANCE)
}

/// `S_IJ + S_IK + S_JK ≥ S_I + S_J + S_K + S_IJK` for every unordered
/// disjoint triple.
pub fn check_mmi_tol(v: &EntropyVector, tol: f64) -> Result<InequalityReport> {
    expect_form(v, EntropyForm::Full)?;
    if v.n < 3 {
        return Err(Error::Precondition(format!("MMI needs at least 3 parties, got {}", v.n)));
    }
    let s = by_mask(v)?;
    let raw = disjoint_tuples(v.n, 3)
        .into_iter()
        .map(|m| {
            let (i, j, k) = (m[0], m[1], m[2]);
            let slack = s[i | j] + s[i | k] + s[j | k] - s[i] - s[j] - s[k] - s[i | j | k];
            (format!("{}:{}:{}", mask_label(i, v.n), mask_label(j, v.n), mask_label(k, v.n)), slack)
        })
        .collect();
    Ok(InequalityReport::new(Family::Mmi, tol, raw))
}

/// `S_0 = 0` followed by the symmetrized entries.
fn with_zero(v: &EntropyVector) -> Result<Vec<f64>> {
    expect_form(v, EntropyForm::Symmetrized)?;
    if v.entries.len() != v.n {
        return Err(Error::MissingEntries(format!("symmetrized vector for {} parties needs {} entries, got {}", v.n, v.n, v.entries.len())));
    }
    Ok(std::iter::once(0.0).chain(v.entries.iter().copied()).collect())
}

pub fn check_sqec(v: &EntropyVector) -> Result<InequalityReport> {
    check_sqec_tol(v, DEFAULT_TOLERANCE)
}

/// `−S_{ℓ−1} + 2 S_ℓ − S_{ℓ+1} ≥ 0` for `1 ≤ ℓ ≤ ⌈N/2⌉`.
pub fn check_sqec_tol(v: &EntropyVector, tol: f64) -> Result<InequalityReport> {
    let s = with_zero(v)?;
    if v.n < 2 {
        return Err(Error::MissingEntries(format!("SQEC at l=1 needs S_2, vector has {} parties", v.n)));
    }
    let raw = (1..=v.n.div_ceil(2)).map(|l| (format!("l={l}"), -s[l - 1] + 2.0 * s[l] - s[l + 1])).collect();
    Ok(InequalityReport::new(Family::Sqec, tol, raw))
}

pub fn check_shec(v: &EntropyVector) -> Result<InequalityReport> {
    check_shec_tol(v, DEFAULT_TOLERANCE)
}

/// `−ℓ(ℓ+1) S_{ℓ−1} + 2(ℓ−1)(ℓ+1) S_ℓ − ℓ(ℓ−1) S_{ℓ+1} ≥ 0` for
/// `2 ≤ ℓ ≤ ⌊N/2⌋`; empty below four parties.
pub fn check_shec_tol(v: &EntropyVector, tol: f64) -> Result<InequalityReport> {
    let s = with_zero(v)?;
    let raw = (2..=v.n / 2)
        .map(|l| {
            let lf = l as f64;
            let slack = -lf * (lf + 1.0) * s[l - 1] + 2.0 * (lf - 1.0) * (lf + 1.0) * s[l] - lf * (lf - 1.0) * s[l + 1];
            (format!("l={l}"), slack)
        })
        .collect();
    Ok(InequalityReport::new(Family::Shec, tol, raw))
}

pub fn check_family(family: Family, v: &EntropyVector, tol: f64) -> Result<InequalityReport> {
    match family {
        Family::Subadditivity => check_subadditivity_tol(v, tol),
        Family::Mmi => check_mmi_tol(v, tol),
        Family::Sqec => check_sqec_tol(v, tol),
        Family::Shec => check_shec_tol(v, tol),
    }
}

/// Membership in the stabilizer entropy cone is not decided: its facets
/// for five or more parties are not available to this tool.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StabilizerConeMembership {
    Unsupported,
}

pub fn stabilizer_cone_membership(_v: &EntropyVector) -> StabilizerConeMembership {
    StabilizerConeMembership::Unsupported
}
