//! The `jetinv` command line.
//!
//! Exit codes: 0 ok, 1 a computed result violates an expectation, 2 invalid
//! input, 3 resource limit.

use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::error::Error;
use crate::exact::rational::parse_rational;
use crate::exact::Rational;
use crate::fixtures::{self, matrix_json, multi_index_labels, rat_matrix_json, sym_labels};
use crate::flag::{p_point, phi};
use crate::invariants::{generator_set, solution_space_equals_perp, test_curve_system};
use crate::jet::{gk_entry, gkp_entry, group_matrix, symbolic_jet, symbolic_reparam, JetMap};
use crate::orbit::lie::{infinitesimal_stabilizer, Algebra, Mode, Twist};
use crate::orbit::report::{check_resources, codim_report, p1_probe_conjecture, twist_power, DEFAULT_RESOURCE_LIMIT};
use crate::orbit::weights::{lambda_tilde, limit_point, z_closed_form, Kind, OneParamSubgroup};
use crate::random::Sampler;
use crate::sym::{sym_le_dim, SymBasis};

#[derive(Parser, Debug)]
#[command(name = "jetinv", about = "Exact computations for invariant jet differentials")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub common: Common,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Seed for all random sampling.
    #[arg(long, global = true, default_value_t = 1)]
    pub seed: u64,
    /// Bound on numerators and denominators of random rationals.
    #[arg(long = "coeff-bound", global = true, default_value_t = 20)]
    pub coeff_bound: i64,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also write the JSON result to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run past the resource limit.
    #[arg(long, global = true)]
    pub force: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Matrix of an element of G_{k,p} acting on jet coefficients.
    GroupMatrix {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        k: usize,
        /// Generic element with parameters a[..].
        #[arg(long)]
        symbolic: bool,
        /// Coefficients of the element, comma separated, in basis order.
        #[arg(long, allow_hyphen_values = true)]
        params: Option<String>,
        /// Compare with the closed-form entry formula.
        #[arg(long = "closed-form")]
        closed_form: bool,
    },
    /// The embedding φ of a jet.
    Phi {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        symbolic: bool,
        /// A jet as JSON text or a path to a JSON file.
        #[arg(long)]
        jet: Option<String>,
    },
    /// Plücker-minor generators of the invariant algebra.
    Generators {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Run randomized exact invariance checks.
        #[arg(long)]
        verify: bool,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        /// Keep one generator per class of polynomials equal up to scalar.
        #[arg(long)]
        distinct: bool,
    },
    /// The linear system of test curves through a jet.
    TestCurve {
        #[arg(long, default_value_t = 1)]
        p: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long = "N", default_value_t = 1)]
        big_n: usize,
        #[arg(long, default_value_t = 1)]
        trials: usize,
        /// Print the system for the generic jet.
        #[arg(long)]
        symbolic: bool,
    },
    /// Orbit analysis of the distinguished point.
    Orbit {
        #[command(subcommand)]
        command: OrbitCommand,
    },
    /// Golden outputs for the worked examples.
    Fixtures {
        #[arg(value_enum, default_value_t = FixtureAction::Check)]
        action: FixtureAction,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum OrbitCommand {
    /// Limit of p_k under a one-parameter subgroup.
    Limit {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long, value_enum, default_value_t = KindArg::Lambda)]
        kind: KindArg,
    },
    /// Closed form of the limit point, compared with the computed limit.
    ClosedForm {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        sigma: usize,
        #[arg(long, value_enum, default_value_t = KindArg::Lambda)]
        kind: KindArg,
    },
    /// Stabilizer dimension of p_k ⊗ e1^K, or of a limit point with --sigma.
    Stabilizer {
        #[arg(long)]
        k: usize,
        #[arg(long = "M", default_value_t = 1)]
        m: usize,
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long, value_enum, default_value_t = KindArg::Lambda)]
        kind: KindArg,
    },
    /// Projective stabilizers of all boundary candidates.
    CodimReport {
        #[arg(long)]
        k: usize,
        #[arg(long = "M", default_value_t = 1)]
        m: usize,
    },
    /// Stabilizer of p_{k,p} ⊗ (e1∧…∧ep)^K against p·n − 1.
    ProbeP {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value_t = 2)]
        k: usize,
        #[arg(long = "M", default_value_t = 1)]
        m: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum KindArg {
    Lambda,
    Mu,
    Tilde,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FixtureAction {
    Regenerate,
    Check,
}

/// Output of one command: JSON, a human rendering, and the exit code.
pub struct Outcome {
    pub json: Value,
    pub text: String,
    pub code: i32,
}

impl Outcome {
    fn ok(json: Value, text: String) -> Self {
        Outcome { json, text, code: 0 }
    }

    fn expect(json: Value, text: String, ok: bool) -> Self {
        Outcome { json, text, code: if ok { 0 } else { 1 } }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit(_) => 3,
        Error::Assertion(_) => 1,
        _ => 2,
    }
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn positive(name: &str, v: usize) -> crate::Result<()> {
    if v == 0 {
        return Err(invalid(format!("--{name} must be positive")));
    }
    Ok(())
}

fn limit(common: &Common) -> u128 {
    if common.force {
        u128::MAX
    } else {
        DEFAULT_RESOURCE_LIMIT
    }
}

fn table(rows: &[String], cols: &[String], cells: &Value) -> String {
    let mut out = String::new();
    out.push_str(&format!("{:>10} | {}\n", "", cols.join(" | ")));
    for (label, row) in rows.iter().zip(cells.as_array().unwrap()) {
        let cells: Vec<&str> = row.as_array().unwrap().iter().map(|c| c.as_str().unwrap()).collect();
        out.push_str(&format!("{label:>10} | {}\n", cells.join(" | ")));
    }
    out
}

fn read_jet(src: &str) -> crate::Result<JetMap<Rational>> {
    let text = if src.trim_start().starts_with('{') {
        src.to_string()
    } else {
        std::fs::read_to_string(src).map_err(|e| invalid(format!("{src}: {e}")))?
    };
    let v: Value = serde_json::from_str(&text).map_err(|e| invalid(format!("jet JSON: {e}")))?;
    JetMap::from_json(&v)
}

fn subgroup(kind: KindArg, sigma: Option<usize>, k: usize) -> crate::Result<OneParamSubgroup> {
    match kind {
        KindArg::Tilde => Ok(lambda_tilde(k)),
        KindArg::Lambda => Kind::Lambda.subgroup(sigma.ok_or_else(|| invalid("--sigma is required"))?, k),
        KindArg::Mu => Kind::Mu.subgroup(sigma.ok_or_else(|| invalid("--sigma is required"))?, k),
    }
}

fn closed_kind(kind: KindArg) -> crate::Result<Kind> {
    match kind {
        KindArg::Lambda => Ok(Kind::Lambda),
        KindArg::Mu => Ok(Kind::Mu),
        KindArg::Tilde => Err(invalid("closed forms exist for lambda and mu only")),
    }
}

pub fn execute(cli: &Cli) -> crate::Result<Outcome> {
    let c = &cli.common;
    if c.coeff_bound < 1 {
        return Err(invalid("--coeff-bound must be at least 1"));
    }
    match &cli.command {
        Command::GroupMatrix { p, k, symbolic, params, closed_form } => {
            group_matrix_cmd(c, *p, *k, *symbolic, params.as_deref(), *closed_form)
        }
        Command::Phi { p, n, k, symbolic, jet } => phi_cmd(c, *p, *n, *k, *symbolic, jet.as_deref()),
        Command::Generators { p, n, k, verify, trials, distinct } => {
            generators_cmd(c, *p, *n, *k, *verify, *trials, *distinct)
        }
        Command::TestCurve { p, n, k, big_n, trials, symbolic } => {
            test_curve_cmd(c, *p, *n, *k, *big_n, *trials, *symbolic)
        }
        Command::Orbit { command } => orbit_cmd(c, command),
        Command::Fixtures { action, dir } => {
            let dir = dir.clone().unwrap_or_else(fixtures::default_dir);
            match action {
                FixtureAction::Regenerate => {
                    let paths = fixtures::regenerate(&dir)?;
                    let names: Vec<String> = paths.iter().map(|p| p.display().to_string()).collect();
                    Ok(Outcome::ok(json!({ "written": names }), format!("wrote {}\n", names.join("\n      "))))
                }
                FixtureAction::Check => {
                    let stale = fixtures::check(&dir);
                    let text = if stale.is_empty() {
                        "all fixtures match\n".to_string()
                    } else {
                        format!("stale fixtures: {}\n", stale.join(", "))
                    };
                    Ok(Outcome::expect(json!({ "stale": stale }), text, stale.is_empty()))
                }
            }
        }
    }
}

fn group_matrix_cmd(
    c: &Common,
    p: usize,
    k: usize,
    symbolic: bool,
    params: Option<&str>,
    closed_form: bool,
) -> crate::Result<Outcome> {
    positive("p", p)?;
    positive("k", k)?;
    let rows = sym_labels(&SymBasis::new(p, k));
    let cols = multi_index_labels(&SymBasis::new(p, k));
    if symbolic || closed_form {
        let (psi, _) = symbolic_reparam(p, k);
        let g = group_matrix(&psi)?;
        let mut out = json!({ "p": p, "k": k, "rows": rows, "cols": cols, "matrix": matrix_json(&g) });
        let mut ok = true;
        if closed_form {
            let basis = SymBasis::new(p, k);
            let alpha: Vec<_> = (0..basis.len()).map(|i| psi.coeff_at(i)[0].clone()).collect();
            for (i, tau) in basis.elems().iter().enumerate() {
                for (j, nu) in basis.elems().iter().enumerate() {
                    let e = if p == 1 { gk_entry(i + 1, j + 1, &alpha) } else { gkp_entry(tau, nu, &psi) };
                    ok &= e == g[(i, j)];
                }
            }
            out["closed_form_match"] = json!(ok);
        }
        let mut text = table(&rows, &cols, &out["matrix"]);
        if closed_form {
            text.push_str(&format!("closed-form entries match: {ok}\n"));
        }
        return Ok(Outcome::expect(out, text, ok));
    }
    let psi = match params {
        Some(list) => {
            let vals: Vec<Rational> = list.split(',').map(|s| parse_rational(s.trim())).collect::<crate::Result<_>>()?;
            let basis = SymBasis::new(p, k);
            if vals.len() != basis.len() * p {
                return Err(invalid(format!("expected {} parameters, got {}", basis.len() * p, vals.len())));
            }
            let coeffs = vals.chunks(p).map(<[Rational]>::to_vec).collect();
            JetMap::new(p, p, k, coeffs, Rational::from_integer(0.into()))?
        }
        None => Sampler::new(c.seed, c.coeff_bound).reparam(p, k),
    };
    let g = group_matrix(&psi)?;
    let out = json!({ "p": p, "k": k, "element": psi.to_json(), "rows": rows, "cols": cols, "matrix": rat_matrix_json(&g) });
    let text = table(&rows, &cols, &out["matrix"]);
    Ok(Outcome::ok(out, text))
}

fn phi_cmd(c: &Common, p: usize, n: usize, k: usize, symbolic: bool, jet: Option<&str>) -> crate::Result<Outcome> {
    positive("p", p)?;
    positive("n", n)?;
    positive("k", k)?;
    let (rows, cols, matrix, source) = if symbolic {
        let (j, _) = symbolic_jet(p, n, k);
        let f = phi(&j);
        (sym_labels(&f.rows), multi_index_labels(&f.cols), matrix_json(&f.matrix), Value::Null)
    } else {
        let j = match jet {
            Some(src) => read_jet(src)?,
            None => Sampler::new(c.seed, c.coeff_bound).regular_jet(p, n, k),
        };
        if (j.source_dim(), j.target_dim(), j.order()) != (p, n, k) {
            return Err(invalid("jet sizes disagree with --p/--n/--k"));
        }
        let f = phi(&j);
        (sym_labels(&f.rows), multi_index_labels(&f.cols), rat_matrix_json(&f.matrix), j.to_json())
    };
    let text = table(&rows, &cols, &matrix);
    Ok(Outcome::ok(json!({ "p": p, "n": n, "k": k, "jet": source, "rows": rows, "cols": cols, "phi": matrix }), text))
}

fn generators_cmd(
    c: &Common,
    p: usize,
    n: usize,
    k: usize,
    verify: bool,
    trials: usize,
    distinct: bool,
) -> crate::Result<Outcome> {
    positive("p", p)?;
    positive("n", n)?;
    positive("k", k)?;
    let basis = sym_le_dim(n, k) as u128;
    if !c.force && basis.pow(2) * sym_le_dim(p, k) as u128 > 200_000 {
        return Err(Error::ResourceLimit(format!("generator set for n={n}, k={k}, p={p} is too large")));
    }
    let g = generator_set(n, k, p)?;
    let chosen: Vec<usize> = if distinct { g.distinct_up_to_scalar() } else { (0..g.len()).collect() };
    let mut by_degree: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in &chosen {
        *by_degree.entry(g[i].degree).or_default() += 1;
    }
    let mut text = format!("{} generators (n={n}, k={k}, p={p})\n  degree  count\n", chosen.len());
    for (d, count) in &by_degree {
        text.push_str(&format!("  {d:>6}  {count:>5}\n"));
    }
    let mut out = json!({
        "n": n, "k": k, "p": p,
        "generators": chosen.iter().map(|&i| g[i].to_json()).collect::<Vec<_>>(),
    });
    let mut ok = true;
    if verify {
        let report = g.verify(trials, c.seed, c.coeff_bound);
        ok = report.passed();
        text.push_str(&format!(
            "verified {} generators over {} trials: {} invariance failures, {} homogeneity failures\n",
            report.generators, report.trials, report.invariance_failures, report.homogeneity_failures
        ));
        out["verification"] = serde_json::to_value(&report).unwrap();
    }
    Ok(Outcome::expect(out, text, ok))
}

fn test_curve_cmd(
    c: &Common,
    p: usize,
    n: usize,
    k: usize,
    big_n: usize,
    trials: usize,
    symbolic: bool,
) -> crate::Result<Outcome> {
    positive("p", p)?;
    positive("n", n)?;
    positive("k", k)?;
    positive("N", big_n)?;
    let expected = big_n * sym_le_dim(p, k);
    if symbolic {
        let (j, _) = symbolic_jet(p, n, k);
        let sys = test_curve_system(&j, big_n)?;
        let m = matrix_json(&sys.matrix);
        let rows: Vec<String> = multi_index_labels(&sys.source)
            .iter()
            .flat_map(|s| (1..=big_n).map(move |t| format!("{s}:{t}")))
            .collect();
        let cols: Vec<String> = (1..=big_n)
            .flat_map(|t| sym_labels(&sys.target).into_iter().map(move |r| format!("{t}:{r}")))
            .collect();
        let text = table(&rows, &cols, &m);
        return Ok(Outcome::ok(json!({ "p": p, "n": n, "k": k, "N": big_n, "rows": rows, "cols": cols, "matrix": m }), text));
    }
    let mut s = Sampler::new(c.seed, c.coeff_bound);
    let mut results = Vec::new();
    let mut ok = true;
    let mut text = format!("expected rank {expected}\n");
    for t in 0..trials {
        let gamma = s.regular_jet(p, n, k);
        let rank = test_curve_system(&gamma, big_n)?.matrix.rank();
        let perp = solution_space_equals_perp(&gamma, big_n)?;
        ok &= rank == expected && perp;
        text.push_str(&format!("trial {t}: rank {rank}, solution space = perp: {perp}\n"));
        results.push(json!({ "gamma": gamma.to_json(), "rank": rank, "perp": perp }));
    }
    Ok(Outcome::expect(
        json!({ "p": p, "n": n, "k": k, "N": big_n, "expected_rank": expected, "trials": results }),
        text,
        ok,
    ))
}

fn orbit_cmd(c: &Common, cmd: &OrbitCommand) -> crate::Result<Outcome> {
    match cmd {
        OrbitCommand::Limit { k, sigma, kind } => {
            positive("k", *k)?;
            check_resources(1, *k, limit(c))?;
            let lambda = subgroup(*kind, *sigma, *k)?;
            let z = limit_point(&p_point(1, *k), &lambda)?;
            let weights: Vec<String> = lambda.weights.iter().map(|w| w.to_string()).collect();
            Ok(Outcome::ok(z.to_json(), format!("weights ({})\n{z}\n", weights.join(", "))))
        }
        OrbitCommand::ClosedForm { k, sigma, kind } => {
            positive("k", *k)?;
            check_resources(1, *k, limit(c))?;
            let kind = closed_kind(*kind)?;
            let z = z_closed_form(*sigma, *k, kind)?;
            let brute = limit_point(&p_point(1, *k), &kind.subgroup(*sigma, *k)?)?;
            let same = z == brute;
            Ok(Outcome::expect(
                json!({ "closed_form": z.to_json(), "matches_limit": same }),
                format!("{z}\nmatches limit point: {same}\n"),
                same,
            ))
        }
        OrbitCommand::Stabilizer { k, m, sigma, kind } => {
            positive("k", *k)?;
            positive("M", *m)?;
            check_resources(1, *k, limit(c))?;
            let twist = Twist::e1(twist_power(*k, *m));
            let p = p_point(1, *k);
            let (w, mode) = match sigma {
                None => (p, Mode::Affine),
                Some(_) => (limit_point(&p, &subgroup(*kind, *sigma, *k)?)?, Mode::Projective),
            };
            let s = infinitesimal_stabilizer(&w, Some(&twist), Algebra::Sl, mode)?;
            let basis: Vec<Value> = s.basis.iter().map(|x| rat_matrix_json(&x.matrix)).collect();
            let mode_name = if mode == Mode::Affine { "affine" } else { "projective" };
            Ok(Outcome::ok(
                json!({ "k": k, "M": m, "K": twist.b, "mode": mode_name, "dimension": s.dimension, "basis": basis }),
                format!("{mode_name} sl({k}) stabilizer, K = {}: dimension {}\n", twist.b, s.dimension),
            ))
        }
        OrbitCommand::CodimReport { k, m } => {
            let r = codim_report(*k, *m, limit(c))?;
            let mut text = format!(
                "k={} M={} K={}  affine stabilizer of p_k: {} (expected {})\n",
                r.k,
                r.m,
                r.twist,
                r.base_stabilizer_dim,
                r.k - 1
            );
            text.push_str("  kind    sigma  proj_stab_dim  orbit_codim  bound_ok\n");
            for cand in &r.candidates {
                let kind = serde_json::to_value(cand.kind).unwrap();
                text.push_str(&format!(
                    "  {:<7} {:>5}  {:>13}  {:>11}  {}\n",
                    kind.as_str().unwrap(),
                    cand.sigma,
                    cand.proj_stab_dim,
                    cand.orbit_codim,
                    cand.bound_ok
                ));
            }
            let ok = r.base_stabilizer_dim + 1 == r.k && (r.k < 4 || r.all_ok());
            Ok(Outcome::expect(serde_json::to_value(&r).unwrap(), text, ok))
        }
        OrbitCommand::ProbeP { p, k, m } => {
            let r = p1_probe_conjecture(*p, *k, *m, limit(c))?;
            let text = format!(
                "p={} k={} M={}: n={}, K={}, measured stabilizer dim {}, predicted {}{}\n",
                r.p,
                r.k,
                r.m,
                r.n,
                r.twist,
                r.measured,
                r.predicted,
                if r.matches { "" } else { " (mismatch)" }
            );
            Ok(Outcome::ok(serde_json::to_value(&r).unwrap(), text))
        }
    }
}

/// Renders an outcome; returns the exit code.
pub fn emit(common: &Common, outcome: &Outcome) -> i32 {
    let json_text = serde_json::to_string_pretty(&outcome.json).unwrap();
    if let Some(path) = &common.out {
        if let Err(e) = std::fs::write(path, format!("{json_text}\n")) {
            eprintln!("error: {}: {e}", path.display());
            return 2;
        }
    }
    if common.json {
        println!("{json_text}");
    } else {
        print!("{}", outcome.text);
    }
    outcome.code
}

pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(outcome) => emit(&cli.common, &outcome),
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
