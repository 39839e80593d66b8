use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use dicke_core::cones::{check_family, Family, Status, DEFAULT_TOLERANCE};
use dicke_core::dicke::{
    dicke_entropy, dicke_entropy_vector, format_sig, make_dicke, symmetrized_entropy, DickeSpec, EntropyForm,
};
use dicke_core::groups::{
    clifford_stabilizers, enumerate_group, pauli_stabilizers, GroupKind, DEFAULT_GROUP_CAP,
};
use dicke_core::reachability::{
    classify_vertices, entropy_census_with, orbit_under, EntropyCensus, GraphFormat, DEFAULT_ORBIT_CAP,
};
use dicke_core::stargraph::{
    build_stargraph_sum, solve_w1, solve_w2, stargraph_residual, w1_bound_negative, w2_bound_negative, WEIGHT_TOL,
};
use dicke_core::{Error, LogBase, PureState};

const SIG: usize = 10;

// stdout may be closed early by a pager or `head`; output after that is dropped
macro_rules! say {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! say_raw {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

/// Exact Dicke-state entropies, entropy-cone checks, star graphs and Clifford orbits.
#[derive(Parser, Debug)]
#[command(name = "dicke", version)]
struct Cli {
    /// Directory for output files when no explicit path is given.
    #[arg(long, global = true, env = "DICKE_OUT_DIR")]
    out_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Subsystem entropies S_l and the entropy vector of D^N_k.
    Entropy(EntropyArgs),
    /// Check entropy-cone inequality families on D^N_k.
    Cone(ConeArgs),
    /// Orbit (reachability graph) of a state under a gate group.
    Orbit(OrbitArgs),
    /// Stabilizer subgroup of a state.
    Stab(StabArgs),
    /// Distinct-entropy census over (N,k), written as CSV.
    Scan(ScanArgs),
    /// Star-graph weights and min-cut evaluation of S~_l.
    Stargraph(StargraphArgs),
}

#[derive(Args, Debug)]
struct EntropyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Single subsystem size; all sizes 0..=N when omitted.
    #[arg(long)]
    l: Option<usize>,
    /// Logarithm base: 2 or e.
    #[arg(long, default_value = "2")]
    base: LogBase,
    /// Entropy vector form: full, reduced or symmetrized.
    #[arg(long, default_value = "reduced")]
    form: EntropyForm,
    /// Print JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ConeArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Comma-separated families: subadditivity, mmi, sqec, shec.
    #[arg(long, value_delimiter = ',', default_value = "subadditivity,mmi,sqec,shec")]
    families: Vec<Family>,
    #[arg(long, default_value = "2")]
    base: LogBase,
    /// Saturation tolerance on the slack.
    #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
    tol: f64,
    /// Write the JSON report here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print every instance.
    #[arg(long)]
    verbose: bool,
}

#[derive(Args, Debug)]
struct OrbitArgs {
    /// `dicke:N:K` or `basis:BITS` (e.g. `basis:010`).
    #[arg(long)]
    state: String,
    /// pauli, c1, hc12 or c2.
    #[arg(long)]
    group: GroupKind,
    /// Acting qubits for local groups, 1-based.
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    targets: Vec<usize>,
    /// Color vertices by entropy-vector class.
    #[arg(long)]
    color: bool,
    #[arg(long, default_value = "2")]
    base: LogBase,
    /// dot, graphml or json.
    #[arg(long, default_value = "dot")]
    format: GraphFormat,
    /// Graph file; defaults to the output directory if one is set.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Maximum number of vertices.
    #[arg(long, default_value_t = DEFAULT_ORBIT_CAP)]
    cap: usize,
}

#[derive(Args, Debug)]
struct StabArgs {
    #[arg(long)]
    state: String,
    #[arg(long)]
    group: GroupKind,
    #[arg(long, value_delimiter = ',', default_value = "1,2")]
    targets: Vec<usize>,
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, default_value_t = 10)]
    nmax: usize,
    /// Largest k; every k up to N when omitted.
    #[arg(long)]
    kmax: Option<usize>,
    #[arg(long, default_value = "hc12")]
    group: GroupKind,
    /// CSV file; defaults to the output directory if one is set, else stdout only.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct StargraphArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value = "e")]
    base: LogBase,
    /// Write the JSON description here.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write a DOT drawing of the merged graphs here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

/// `Ok(false)` reports a violation or mismatch (exit 1).
type CmdResult = Result<bool, Error>;

fn sig(x: f64) -> String {
    format_sig(x, SIG)
}

fn parse_state(s: &str) -> Result<PureState, Error> {
    if let Some(bits) = s.strip_prefix("basis:") {
        if bits.is_empty() || !bits.chars().all(|c| c == '0' || c == '1') {
            return Err(Error::Parse(format!("bad basis state {s:?}")));
        }
        let value = usize::from_str_radix(bits, 2).map_err(|e| Error::Parse(e.to_string()))?;
        return PureState::basis(bits.len(), value);
    }
    make_dicke(s.parse::<DickeSpec>()?)
}

fn zero_based(targets: &[usize]) -> Result<Vec<usize>, Error> {
    targets
        .iter()
        .map(|&t| t.checked_sub(1).ok_or_else(|| Error::Parse("qubit labels start at 1".into())))
        .collect()
}

fn local_targets(group: GroupKind, targets: &[usize]) -> Result<Vec<usize>, Error> {
    let t = zero_based(targets)?;
    Ok(match group.local_qubits() {
        Some(q) if t.len() > q => t[..q].to_vec(),
        _ => t,
    })
}

fn resolve_out(explicit: &Option<PathBuf>, out_dir: &Option<PathBuf>, default_name: &str) -> Option<PathBuf> {
    explicit.clone().or_else(|| out_dir.as_ref().map(|d| d.join(default_name)))
}

fn write_file(path: &Path, contents: &str) -> Result<(), Error> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|e| Error::Io(format!("{}: {e}", parent.display())))?;
    }
    fs::write(path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    eprintln!("wrote {}", path.display());
    Ok(())
}

fn cmd_entropy(a: &EntropyArgs) -> CmdResult {
    let spec = DickeSpec::new(a.n, a.k)?;
    let sizes: Vec<usize> = match a.l {
        Some(l) => vec![l],
        None => (0..=a.n).collect(),
    };
    let values = sizes.iter().map(|&l| dicke_entropy(spec, l, a.base)).collect::<Result<Vec<_>, _>>()?;
    let vector = dicke_entropy_vector(spec, a.form, a.base)?;
    if a.json {
        let out = serde_json::json!({
            "spec": spec,
            "base": a.base,
            "s": sizes.iter().zip(&values).map(|(l, v)| serde_json::json!({"l": l, "value": v})).collect::<Vec<_>>(),
            "vector": serde_json::from_str::<serde_json::Value>(&vector.to_json()).expect("vector json"),
        });
        say!("{}", serde_json::to_string_pretty(&out).expect("json"));
        return Ok(true);
    }
    say!("{spec}, base {}", a.base);
    for (l, v) in sizes.iter().zip(&values) {
        say!("S_{l} = {}", sig(*v));
    }
    let labels = vector.labels();
    let entries: Vec<String> = labels.iter().zip(&vector.entries).map(|(lab, v)| format!("{lab}={}", sig(*v))).collect();
    say!("{} vector: {}", a.form, entries.join(" "));
    Ok(true)
}

fn cmd_cone(a: &ConeArgs, out_dir: &Option<PathBuf>) -> CmdResult {
    let spec = DickeSpec::new(a.n, a.k)?;
    let mut ok = true;
    let mut reports = Vec::new();
    for &family in &a.families {
        let v = dicke_entropy_vector(spec, family.input_form(), a.base)?;
        let r = check_family(family, &v, a.tol)?;
        say!(
            "{family}: {} instances, {} satisfied, {} saturated, {} violated",
            r.instances.len(),
            r.count(Status::Satisfied),
            r.count(Status::Saturated),
            r.count(Status::Violated)
        );
        if a.verbose {
            say_raw!("{}", r.to_table());
        } else {
            for i in r.instances.iter().filter(|i| i.status == Status::Violated) {
                say!("  violated {} slack {}", i.label, sig(i.slack));
            }
        }
        ok &= !r.has_violation();
        reports.push(serde_json::from_str::<serde_json::Value>(&r.to_json()).expect("report json"));
    }
    if let Some(path) = resolve_out(&a.out, out_dir, &format!("cone_{}_{}.json", a.n, a.k)) {
        let doc = serde_json::json!({"spec": spec, "base": a.base, "reports": reports});
        write_file(&path, &serde_json::to_string_pretty(&doc).expect("json"))?;
    }
    Ok(ok)
}

fn cmd_orbit(a: &OrbitArgs, out_dir: &Option<PathBuf>) -> CmdResult {
    let seed = parse_state(&a.state)?;
    let targets = local_targets(a.group, &a.targets)?;
    let mut graph = orbit_under(&seed, a.group, &targets, a.cap)?;
    if a.color {
        classify_vertices(&mut graph, a.base)?;
        say!("{} vertices, {} classes", graph.len(), graph.num_classes());
        for (i, v) in graph.class_table.iter().enumerate() {
            let entries: Vec<String> = v.entries.iter().map(|x| sig(*x)).collect();
            say!("  {} ({}): ({})", i, dicke_core::reachability::palette_color(i), entries.join(", "));
        }
    } else {
        say!("{} vertices", graph.len());
    }
    let name = format!("orbit_{}_{}.{}", a.state.replace(':', "_"), a.group, a.format.extension());
    if let Some(path) = resolve_out(&a.out, out_dir, &name) {
        write_file(&path, &graph.export(a.format))?;
    }
    Ok(true)
}

fn cmd_stab(a: &StabArgs) -> CmdResult {
    let state = parse_state(&a.state)?;
    let (text, json, order, host) = match a.group.local_qubits() {
        None => {
            let st = pauli_stabilizers(&state)?;
            (st.to_string(), st.to_json(), st.order, st.host_order.to_string())
        }
        Some(t) => {
            let group = enumerate_group(&a.group.local_generators(), t, DEFAULT_GROUP_CAP)?;
            let st = clifford_stabilizers(&state, &group, &local_targets(a.group, &a.targets)?)?;
            (st.to_string(), st.to_json(), st.order, st.host_order.to_string())
        }
    };
    if a.json {
        say!("{json}");
    } else {
        say!("{text}");
        say!("order {order} of {host}");
    }
    Ok(true)
}

fn cmd_scan(a: &ScanArgs, out_dir: &Option<PathBuf>) -> CmdResult {
    let mut csv = format!("{}\n", EntropyCensus::CSV_HEADER);
    say_raw!("{csv}");
    let mut ok = true;
    for n in 2..=a.nmax {
        for k in 1..=a.kmax.unwrap_or(n).min(n) {
            let spec = DickeSpec::new(n, k)?;
            let seed = make_dicke(spec)?;
            let targets: Vec<usize> = if a.group.local_qubits() == Some(1) { vec![0] } else { vec![0, 1] };
            let mut graph = orbit_under(&seed, a.group, &targets, DEFAULT_ORBIT_CAP)?;
            classify_vertices(&mut graph, LogBase::Two)?;
            let c = entropy_census_with(spec, a.group, &graph)?;
            let row = c.to_csv_row();
            say!("{row}");
            csv.push_str(&row);
            csv.push('\n');
            if !c.stable() {
                eprintln!("warning: ({n},{k}) count changes under the audit tolerance");
            }
            if k == 1 && a.group == GroupKind::Hc12 && c.num_distinct_entropies != (5 * n - 7) / 2 {
                eprintln!("({n},1): {} distinct entropies, conjectured {}", c.num_distinct_entropies, (5 * n - 7) / 2);
                ok = false;
            }
        }
    }
    if let Some(path) = resolve_out(&a.out, out_dir, &format!("scan_{}.csv", a.group)) {
        write_file(&path, &csv)?;
    }
    Ok(ok)
}

fn cmd_stargraph(a: &StargraphArgs, out_dir: &Option<PathBuf>) -> CmdResult {
    let spec = DickeSpec::new(a.n, a.k)?;
    let sum = build_stargraph_sum(spec, a.l, a.base)?;
    say!("{spec}, l = {}, base {}", a.l, a.base);
    if a.k == 1 {
        let w1 = solve_w1(a.n, a.l, a.base)?;
        let w2 = solve_w2(a.n, a.l, a.base)?;
        say!("w1 = {} (bound predicts negative: {})", sig(w1), w1_bound_negative(a.n, a.l, a.base)?);
        say!("w2 = {} (bound predicts negative: {})", sig(w2), w2_bound_negative(a.n, a.l, a.base)?);
    }
    say!("part weights {} {}", sig(sum.part_weights.0), sig(sum.part_weights.1));
    for t in &sum.terms {
        say!(
            "  part {} i {}: p = {}, target = {}, cut at {}, w = {}{}",
            t.part,
            t.i,
            sig(t.probability),
            sig(t.target),
            t.selector,
            sig(t.graph.w),
            if t.feasible { "" } else { " (infeasible)" }
        );
    }
    let merged = sum.merged();
    say!("{} distinct graphs after merging", merged.len());
    let closed = symmetrized_entropy(spec, a.l, a.base)?;
    let residual = stargraph_residual(&sum)?;
    say!("min-cut sum = {}", sig(sum.evaluate()));
    say!("S~_{} = {}", a.l, sig(closed));
    say!("residual = {}", sig(residual));
    let name = format!("stargraph_{}_{}_{}", a.n, a.k, a.l);
    if let Some(path) = resolve_out(&a.out, out_dir, &format!("{name}.json")) {
        write_file(&path, &sum.to_json())?;
    }
    if let Some(path) = a.dot.clone() {
        write_file(&path, &sum.to_dot())?;
    }
    Ok(sum.all_feasible() && residual <= WEIGHT_TOL * closed.abs().max(1.0))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Entropy(a) => cmd_entropy(a),
        Command::Cone(a) => cmd_cone(a, &cli.out_dir),
        Command::Orbit(a) => cmd_orbit(a, &cli.out_dir),
        Command::Stab(a) => cmd_stab(a),
        Command::Scan(a) => cmd_scan(a, &cli.out_dir),
        Command::Stargraph(a) => cmd_stargraph(a, &cli.out_dir),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
