use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use mostar::duality::{
    claim2_margins, claim2_solution, dprime_feasible, dual_feasible, lift_certificate, sqrt3_over_18,
};
use mostar::families::{
    complete_bipartite, extremal_split, mo_complete_bipartite, mo_split_join, split_join,
};
use mostar::graph::{all_edge_unbalances, mostar_index};
use mostar::lp::{build_primal, primal_scale, solve_simplex, SimplexStatus};
use mostar::rational::{int, to_f64, to_fraction_string as frac, Rational};
use mostar::search::{
    conjecture19_scan, max_mostar_bipartite, max_mostar_split, search_bipartite_sides, search_split_k,
    sharpness_gap, GapFamily, KPolicy,
};
use mostar::split_bounds::split_bound_chain;
use mostar::{edgelist, Error};

// a closed pipe (e.g. `| head`) ends output quietly instead of panicking
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        if writeln!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0)
        }
    }};
}

macro_rules! out_raw {
    ($($t:tt)*) => {{
        use std::io::Write;
        if write!(std::io::stdout(), $($t)*).is_err() {
            std::process::exit(0)
        }
    }};
}

#[derive(Parser, Debug)]
#[command(name = "mostar", version, about = "Exact Mostar index computations and certified bounds")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Tolerance for floating-point feasibility checks
    #[arg(long, default_value_t = 1e-9, global = true)]
    tol: f64,
    /// Worker threads for enumeration and certificate sweeps
    #[arg(long, global = true)]
    shards: Option<usize>,
    /// Lift the capacity guards on exhaustive searches
    #[arg(long, global = true)]
    force: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mostar index of a graph in edge-list format
    Compute { path: PathBuf },
    /// Build a family member: `kab A B`, `split-join K N`, `extremal-split N K M`
    Family {
        name: String,
        params: Vec<usize>,
        /// Write the edge list here instead of stdout
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Optimal value of the primal degree-profile program
    Lp {
        n: usize,
        /// Single side size; all 1 ≤ k ≤ n/2 when omitted
        k: Option<usize>,
        /// Tabulate every order 2..=n
        #[arg(long)]
        upto: bool,
        /// Print the program in text form instead of solving it
        #[arg(long)]
        dump: bool,
    },
    /// Dual certificate for bipartite graphs with sides k ≤ n − k
    Certify { n: usize, k: usize },
    /// Margins of the high-ratio dual pair on a grid
    Margins {
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// Split-graph bound chain for (n, k, m)
    Splitbound {
        n: usize,
        k: usize,
        m: Option<usize>,
        #[arg(long)]
        sweep_m: bool,
    },
    /// Exhaustive maximum over `bipartite` or `split` graphs of order n
    Search {
        class: String,
        n: usize,
        /// Restrict to one side size (bipartite) or clique size (split)
        #[arg(long)]
        part: Option<usize>,
    },
    /// Compare K_{⌊n/3⌋,·} with the best complete bipartite graph
    Conjecture19 {
        #[arg(default_value_t = 100)]
        n_max: usize,
    },
    /// Sharpness table: `complete-bipartite` or `extremal-split`
    Gap {
        family: String,
        /// Order range `lo..hi` (inclusive)
        #[arg(long, default_value = "10..200")]
        n: String,
        /// Clique fraction `p/q` for extremal-split (default: best)
        #[arg(long)]
        k_fraction: Option<String>,
    },
}

enum Failure {
    Input(Error),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

type CmdResult = std::result::Result<(), Failure>;

fn emit<T: Serialize>(value: &T) {
    out!("{}", serde_json::to_string_pretty(value).expect("serializable"));
}

fn check(ok: bool, what: impl FnOnce() -> String) -> CmdResult {
    if ok {
        Ok(())
    } else {
        Err(Failure::Check(what()))
    }
}

fn cmd_compute(cli: &Cli, path: &PathBuf) -> CmdResult {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?;
    let g = edgelist::parse(&text)?;
    let edges = all_edge_unbalances(&g);
    let mo: u64 = edges.iter().map(|e| e.abs_diff() as u64).sum();
    match cli.format {
        Format::Json => emit(&json!({
            "n": g.order(),
            "m": g.size(),
            "mostar": mo,
            "edges": edges.iter().map(|e| json!({
                "u": e.u, "v": e.v, "n_uv": e.n_uv, "n_vu": e.n_vu, "equidistant": e.equidistant,
            })).collect::<Vec<_>>(),
        })),
        Format::Csv => {
            out!("u,v,n_uv,n_vu,equidistant,contribution");
            for e in &edges {
                out!("{},{},{},{},{},{}", e.u, e.v, e.n_uv, e.n_vu, e.equidistant, e.abs_diff());
            }
        }
        Format::Human => {
            out!("mostar = {mo}");
            for e in &edges {
                out!(
                    "  {}-{}: n_uv = {}, n_vu = {}, ties = {}, |diff| = {}",
                    e.u, e.v, e.n_uv, e.n_vu, e.equidistant, e.abs_diff()
                );
            }
        }
    }
    Ok(())
}

fn cmd_family(cli: &Cli, name: &str, params: &[usize], output: Option<&PathBuf>) -> CmdResult {
    let bad = || Error::InvalidSplit(format!("wrong parameters {params:?} for family `{name}`"));
    let (g, closed): (_, Option<u64>) = match (name, params) {
        ("kab", &[a, b]) => (complete_bipartite(a, b), Some(mo_complete_bipartite(a, b))),
        ("split-join", &[k, n]) => {
            if k > n {
                return Err(bad().into());
            }
            (split_join(k, n), Some(mo_split_join(k, n)))
        }
        ("extremal-split", &[n, k, m]) => (extremal_split(n, k, m)?.1, None),
        ("kab" | "split-join" | "extremal-split", _) => return Err(bad().into()),
        _ => return Err(Error::UnknownFamily(name.to_string()).into()),
    };
    let bfs = mostar_index(&g);
    let text = edgelist::write(&g);
    match output {
        Some(path) => fs::write(path, &text)
            .map_err(|e| Error::Parse { line: 0, msg: format!("{}: {e}", path.display()) })?,
        None => out_raw!("{text}"),
    }
    let record = json!({ "family": name, "params": params, "closed_form": closed, "bfs": bfs });
    // the edge list owns stdout unless written to a file
    let summary = match cli.format {
        Format::Json => serde_json::to_string(&record).unwrap(),
        _ => match closed {
            Some(c) => format!("closed_form = {c}\nmostar = {bfs}"),
            None => format!("mostar = {bfs}"),
        },
    };
    if output.is_some() {
        out!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    check(closed.is_none_or(|c| c == bfs), || {
        format!("closed form {closed:?} disagrees with BFS value {bfs}")
    })
}

#[derive(Serialize)]
struct LpRow {
    n: usize,
    k: usize,
    status: SimplexStatus,
    opt_p: String,
    opt_p_f64: f64,
    dual_sum: String,
    scaled_opt: String,
    certified_bound: String,
    weak_duality: bool,
}

fn cmd_lp(cli: &Cli, n: usize, k: Option<usize>, upto: bool, dump: bool) -> CmdResult {
    if dump {
        let k = k.ok_or(Error::Degenerate { n, k: 0 })?;
        out_raw!("{}", build_primal(n, k)?.to_text());
        return Ok(());
    }
    let orders: Vec<usize> = if upto { (2..=n).collect() } else { vec![n] };
    let mut rows = Vec::new();
    for n in orders {
        let ks: Vec<usize> = match k {
            Some(k) if !upto => vec![k],
            _ => (1..=n / 2).collect(),
        };
        for k in ks {
            let lp = build_primal(n, k)?;
            let res = solve_simplex(&lp)?;
            let pair = claim2_solution(n, k)?;
            let value = res.value.clone().unwrap_or_else(|| int(-1));
            let scale = primal_scale(n, k);
            rows.push(LpRow {
                n,
                k,
                status: res.status,
                opt_p: frac(&value),
                opt_p_f64: to_f64(&value),
                dual_sum: frac(&pair.sum()),
                scaled_opt: frac(&(&scale * &value)),
                certified_bound: frac(&(&scale * pair.sum())),
                weak_duality: res.status == SimplexStatus::Optimal && res.verify(&lp) && value <= pair.sum(),
            });
        }
    }
    match cli.format {
        Format::Json => emit(&rows),
        _ => {
            out!("n,k,status,opt_p,opt_p_f64,dual_sum,scaled_opt,certified_bound,weak_duality");
            for r in &rows {
                out!(
                    "{},{},{:?},{},{},{},{},{},{}",
                    r.n, r.k, r.status, r.opt_p, r.opt_p_f64, r.dual_sum, r.scaled_opt, r.certified_bound,
                    r.weak_duality
                );
            }
        }
    }
    check(rows.iter().all(|r| r.weak_duality), || "weak duality check failed".into())
}

fn cmd_certify(cli: &Cli, n: usize, k: usize) -> CmdResult {
    let pair = claim2_solution(n, k)?;
    let cert = lift_certificate(&pair, n, k);
    let feas = dual_feasible(&cert, cli.tol);
    let (p, q) = pair.to_f64();
    let alpha = k as f64 / n as f64;
    let dprime = dprime_feasible(p, q, alpha, cli.tol)?;
    let bound: Rational = primal_scale(n, k) * pair.sum();
    let passed = feas.feasible && dprime.feasible;
    let record = json!({
        "n": n,
        "k": k,
        "alpha": frac(&mostar::rational::ratio(k as i64, n as i64)),
        "case": pair.case,
        "p": frac(&pair.p),
        "q": frac(&pair.q),
        "bound": frac(&bound),
        "bound_f64": to_f64(&bound),
        "theorem1_bound_f64": sqrt3_over_18() * (n as f64).powi(3),
        "worst_dual_slack": frac(&feas.worst_slack),
        "worst_dual_constraint": feas.worst_at,
        "dual_violations": feas.violations,
        "dprime_feasible": dprime.feasible,
        "dprime_slacks": dprime.slacks,
        "passed": passed,
    });
    match cli.format {
        Format::Json => emit(&record),
        _ => {
            out!("case = {:?}", pair.case);
            out!("p = {}  q = {}", frac(&pair.p), frac(&pair.q));
            out!("bound = {} (~{:.6})", frac(&bound), to_f64(&bound));
            out!("worst dual slack = {} at {:?}", frac(&feas.worst_slack), feas.worst_at);
            out!("passed = {passed}");
        }
    }
    check(passed, || format!("certificate for (n, k) = ({n}, {k}) is infeasible"))
}

fn cmd_margins(cli: &Cli, grid: usize) -> CmdResult {
    if grid < 2 {
        return Err(Error::InvalidHyperbola("grid needs at least 2 points".into()).into());
    }
    let r = claim2_margins(grid);
    match cli.format {
        Format::Json => emit(&r),
        _ => {
            out!("function,min,argmin");
            for (name, m) in [("q", r.q), ("f1", r.f1), ("f2", r.f2), ("f3", r.f3)] {
                out!("{name},{},{}", m.min, m.argmin);
            }
        }
    }
    let monotone = r.q_nonincreasing && r.f1_nondecreasing && r.f2_nondecreasing && r.f3_nonincreasing;
    check(r.all_positive() && monotone, || "margin check failed".into())
}

fn cmd_splitbound(cli: &Cli, n: usize, k: usize, m: Option<usize>, sweep: bool) -> CmdResult {
    let ms: Vec<usize> = match (m, sweep) {
        (_, true) => (0..=k * n.saturating_sub(k)).collect(),
        (Some(m), false) => vec![m],
        (None, false) => vec![k * n.saturating_sub(k)],
    };
    let chains = ms
        .into_iter()
        .map(|m| split_bound_chain(n, k, m))
        .collect::<mostar::Result<Vec<_>>>()?;
    match cli.format {
        Format::Json => emit(&chains),
        _ => {
            out!("n,k,m,g,g_f64,piecewise,cap,case,m_star,claim3_slack");
            for c in &chains {
                out!(
                    "{},{},{},{},{},{},{},{:?},{},{}",
                    c.n,
                    c.k,
                    c.m,
                    frac(&c.g_value),
                    to_f64(&c.g_value),
                    frac(&c.piecewise_value),
                    frac(&c.cap_value),
                    c.case_taken,
                    frac(&c.m_star),
                    c.claim3_slack.as_ref().map(frac).unwrap_or_default()
                );
            }
        }
    }
    check(chains.iter().all(|c| c.is_ordered()), || "bound chain out of order".into())
}

fn cmd_search(cli: &Cli, class: &str, n: usize, part: Option<usize>) -> CmdResult {
    let (violations, passed) = match (class, part) {
        ("bipartite", Some(a)) => {
            if a > n {
                return Err(Error::InvalidPartition(format!("side {a} exceeds order {n}")).into());
            }
            let r = search_bipartite_sides(a.min(n - a), a.max(n - a), cli.force)?;
            emit(&r);
            (r.violations(), r.violations() == 0)
        }
        ("split", Some(k)) => {
            let r = search_split_k(n, k, cli.force)?;
            emit(&r);
            (r.violations(), r.violations() == 0)
        }
        ("bipartite" | "split", None) => {
            let r = if class == "bipartite" {
                max_mostar_bipartite(n, cli.force)?
            } else {
                max_mostar_split(n, cli.force)?
            };
            match cli.format {
                Format::Json => emit(&r),
                _ => {
                    out!("class = {}, n = {}", r.class, r.n);
                    out!("instances = {}", r.instances);
                    out!("max mostar = {} (part {})", r.max_mostar, r.maximizer_part);
                    out!("maximizer edges = {:?}", r.maximizer.edges);
                    if let Some(c) = r.max_connected {
                        out!("max over connected = {c}");
                    }
                    out!("gap to headline bound = {:.4}", r.gap);
                    out!("violations = {}", r.violations);
                }
            }
            (r.violations, r.passed())
        }
        _ => return Err(Error::UnknownFamily(class.to_string()).into()),
    };
    check(passed, || format!("{violations} bound violations"))
}

fn cmd_conjecture19(cli: &Cli, n_max: usize) -> CmdResult {
    if n_max < 3 {
        return Err(Error::Degenerate { n: n_max, k: 0 }.into());
    }
    let scan = conjecture19_scan(n_max);
    match cli.format {
        Format::Json => emit(&scan),
        _ => {
            out!("n,third_a,mo_third,best_a,mo_best,flagged");
            for r in &scan.rows {
                out!("{},{},{},{},{},{}", r.n, r.third_a, r.mo_third, r.best_a, r.mo_best, r.flagged);
            }
            eprintln!(
                "flagged {} of {} orders; smallest flagged n = {:?}",
                scan.flagged,
                scan.rows.len(),
                scan.smallest_flagged
            );
        }
    }
    Ok(())
}

fn parse_range(s: &str) -> Option<(usize, usize)> {
    let (lo, hi) = s.split_once("..")?;
    let hi = hi.trim_start_matches('=');
    Some((lo.trim().parse().ok()?, hi.trim().parse().ok()?))
}

fn cmd_gap(cli: &Cli, family: &str, range: &str, k_fraction: Option<&str>) -> CmdResult {
    let (lo, hi) = parse_range(range)
        .filter(|(lo, hi)| lo <= hi)
        .ok_or_else(|| Error::Parse { line: 0, msg: format!("bad order range `{range}`") })?;
    let fam = match family {
        "complete-bipartite" | "kab" => GapFamily::CompleteBipartiteAlpha1,
        "extremal-split" => {
            let k = match k_fraction {
                None => KPolicy::BestPiecewise,
                Some(f) => {
                    let (num, den) = f
                        .split_once('/')
                        .and_then(|(a, b)| Some((a.parse().ok()?, b.parse().ok()?)))
                        .ok_or_else(|| Error::Parse { line: 0, msg: format!("bad fraction `{f}`") })?;
                    KPolicy::Fraction { num, den }
                }
            };
            GapFamily::ExtremalSplit { k }
        }
        _ => return Err(Error::UnknownFamily(family.to_string()).into()),
    };
    let table = sharpness_gap(fam, lo..=hi)?;
    match cli.format {
        Format::Json => emit(&table),
        _ => {
            out_raw!("{}", table.to_csv());
            eprintln!(
                "max gap/n^2 = {:.6}; growth ratio (upper/lower half) = {:.4}",
                table.max_gap_over_n2,
                table.growth_ratio()
            );
        }
    }
    check(table.all_nonnegative, || "negative gap: a construction exceeds its bound".into())
}

fn run(cli: &Cli) -> CmdResult {
    match &cli.command {
        Command::Compute { path } => cmd_compute(cli, path),
        Command::Family { name, params, output } => cmd_family(cli, name, params, output.as_ref()),
        Command::Lp { n, k, upto, dump } => cmd_lp(cli, *n, *k, *upto, *dump),
        Command::Certify { n, k } => cmd_certify(cli, *n, *k),
        Command::Margins { grid } => cmd_margins(cli, *grid),
        Command::Splitbound { n, k, m, sweep_m } => cmd_splitbound(cli, *n, *k, *m, *sweep_m),
        Command::Search { class, n, part } => cmd_search(cli, class, *n, *part),
        Command::Conjecture19 { n_max } => cmd_conjecture19(cli, *n_max),
        Command::Gap { family, n, k_fraction } => cmd_gap(cli, family, n, k_fraction.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.tol.is_nan() || cli.tol <= 0.0 {
        eprintln!("{}", json!({ "status": "error", "error": "--tol must be positive" }));
        return ExitCode::from(2);
    }
    if let Some(threads) = cli.shards {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("{}", json!({ "status": "error", "error": e.to_string() }));
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Input(e)) => {
            eprintln!("{}", json!({ "status": "error", "error": e.to_string() }));
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("{}", json!({ "status": "failed", "error": msg }));
            ExitCode::from(1)
        }
    }
}
