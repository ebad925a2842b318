//! Command line surface for polar space tables, bounds, code search and
//! Steiner verdicts.
//!
//! Exit codes: 0 success or resolved verdict, 1 verification failure,
//! 2 usage error, 3 open case. All rationals print exactly, as
//! "numerator/denominator" (or a bare integer); JSON output never contains
//! floats.

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::One;
use polar_core::bounds::{code_bound, product_inequalities_check, simplified_bounds_check};
use polar_core::lp::{lp_bound_table, verify_certificate, LpStatus};
use polar_core::oracle::checks::{generators_per_next_to_max, verify_axioms, verify_idempotents};
use polar_core::oracle::rankmap::{rank_map_check, rank_map_sample, MatrixClass};
use polar_core::oracle::{enumerate_with, export_text, import_text, OracleConfig};
use polar_core::qarith::Rat;
use polar_core::schemes::{
    eig_table, eig_table_ordered, hahn_binomial_identity_check, hahn_table, multiplicities,
    p_number, p_number_phi, qnum_binomial_identity_check, scheme_size, valency, EigTable,
    PolarKind, SchemeSpec, TableOrdering,
};
use polar_core::steiner::{full_verdict, isotropic_count, steiner_size, Certificate, Outcome};
use serde_json::{json, Value};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "polar",
    version,
    about = "Exact eigenvalue tables, code bounds and Steiner verdicts for the six classical polar spaces"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print scheme parameters: size, valencies, multiplicities
    Params(ParamsArgs),
    /// Print the exact P and Q eigenvalue tables
    Eigenvalues(EigArgs),
    /// Print the closed-form upper bound for d-codes
    Bound(BoundArgs),
    /// Solve the exact linear program for d-codes and verify its certificate
    Lp(BoundArgs),
    /// Resolve the existence of a t-Steiner system
    Steiner(SteinerArgs),
    /// Run verification suites
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Ordering {
    Standard,
    Alternate,
}

#[derive(Args)]
struct ParamsArgs {
    /// Family name, Carter (2A-odd, 2A-even, B, C, D, 2D) or classical
    /// (hermitian-odd, hermitian-even, parabolic, symplectic, hyperbolic,
    /// elliptic)
    #[arg(long)]
    space: String,
    /// Rank
    #[arg(long)]
    n: i64,
    /// Field size (square base for the hermitian families)
    #[arg(long)]
    q: u64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct EigArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    q: u64,
    /// Eigenvalue ordering; alternate is defined for 2A-odd only
    #[arg(long, value_enum, default_value_t = Ordering::Standard)]
    ordering: Ordering,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    q: u64,
    /// Minimum distance, 1 <= d <= n+1
    #[arg(long)]
    d: i64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Args)]
struct SteinerArgs {
    #[arg(long)]
    space: String,
    #[arg(long)]
    n: i64,
    #[arg(long)]
    q: u64,
    /// Steiner parameter, 1 <= t <= n
    #[arg(long)]
    t: i64,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    All,
    Tables,
    Identities,
    Bounds,
    Lp,
    Oracle,
    Rankmap,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum, default_value_t = Suite::All)]
    suite: Suite,
    /// Cap on enumerated objects per level and on matrix side lengths
    #[arg(long, default_value_t = 20000)]
    max_size: usize,
    /// Seed for the sampled rank-map checks
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Directory holding enumerated instances in the text exchange format
    #[arg(long)]
    cache_dir: Option<PathBuf>,
    /// Corrupt one table entry before checking (forces a failure)
    #[arg(long, hide = true)]
    inject_corruption: bool,
}

fn main() -> ExitCode {
    match Cli::parse().cmd {
        Cmd::Params(a) => cmd_params(&a),
        Cmd::Eigenvalues(a) => cmd_eigenvalues(&a),
        Cmd::Bound(a) => cmd_bound(&a),
        Cmd::Lp(a) => cmd_lp(&a),
        Cmd::Steiner(a) => cmd_steiner(&a),
        Cmd::Verify(a) => cmd_verify(&a),
    }
}

/// Resolves a family name or exits with the list of valid names.
fn parse_space(name: &str) -> Result<PolarKind, ExitCode> {
    match PolarKind::parse(name) {
        Some(kind) => Ok(kind),
        None => {
            let names: Vec<String> = PolarKind::BASE
                .iter()
                .map(|k| format!("{} ({})", k.label(), k.classical_name()))
                .collect();
            eprintln!(
                "error: unknown family '{name}'; valid names: {}",
                names.join(", ")
            );
            Err(ExitCode::from(2))
        }
    }
}

fn make_spec(space: &str, n: i64, q: u64) -> Result<SchemeSpec, ExitCode> {
    let kind = parse_space(space)?;
    SchemeSpec::new(kind, n, q).map_err(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}

fn rats(v: &[Rat]) -> Vec<Value> {
    v.iter().map(|r| Value::String(r.to_string())).collect()
}

fn cmd_params(a: &ParamsArgs) -> ExitCode {
    let spec = match make_spec(&a.space, a.n, a.q) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let size = scheme_size(&spec);
    let vals: Vec<_> = (0..=spec.classes())
        .map(|i| valency(&spec, i).unwrap())
        .collect();
    let mults = multiplicities(&spec).unwrap();
    let e = Rat::new(spec.two_e.into(), 2.into());
    match a.format {
        Format::Json => {
            let out = json!({
                "space": spec.kind.label(),
                "classical": spec.kind.classical_name(),
                "n": spec.n,
                "q": spec.q,
                "p": spec.p().to_string(),
                "e": e.to_string(),
                "x_size": size.to_string(),
                "valencies": vals.iter().map(|v| Value::String(v.to_string())).collect::<Vec<_>>(),
                "multiplicities": mults.iter().map(|m| Value::String(m.to_string())).collect::<Vec<_>>(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!(
                "space {} ({})  n = {}  q = {}",
                spec.kind.label(),
                spec.kind.classical_name(),
                spec.n,
                spec.q
            );
            println!("p = {}  e = {}", spec.p(), e);
            println!("|X| = {size}");
            println!("{:>3} {:>20} {:>20}", "i", "v_i", "mu_i");
            for i in 0..vals.len() {
                println!("{:>3} {:>20} {:>20}", i, vals[i], mults[i]);
            }
        }
    }
    ExitCode::SUCCESS
}

fn table_json(table: &EigTable, ordering: &str) -> Value {
    let k = table.classes;
    let pm: Vec<Vec<String>> = (0..=k)
        .map(|i| (0..=k).map(|j| table.p(i, j).to_string()).collect())
        .collect();
    let qm: Vec<Vec<String>> = (0..=k)
        .map(|i| (0..=k).map(|j| table.q(i, j).to_string()).collect())
        .collect();
    let ints = |v: &[num_bigint::BigInt]| {
        v.iter()
            .map(|x| Value::String(x.to_string()))
            .collect::<Vec<_>>()
    };
    json!({
        "space": table.spec.kind.label(),
        "classical": table.spec.kind.classical_name(),
        "n": table.spec.n,
        "q": table.spec.q,
        "ordering": ordering,
        "x_size": table.x_size.to_string(),
        "valencies": ints(&table.valencies),
        "multiplicities": ints(&table.multiplicities),
        "p": pm,
        "q_numbers": qm,
    })
}

fn print_matrix(name: &str, k: i64, at: impl Fn(i64, i64) -> String) {
    println!("{name}:");
    let width = (0..=k)
        .flat_map(|i| (0..=k).map(move |j| (i, j)))
        .map(|(i, j)| at(i, j).len())
        .max()
        .unwrap_or(1)
        + 2;
    for i in 0..=k {
        let row: Vec<String> = (0..=k).map(|j| format!("{:>width$}", at(i, j))).collect();
        println!("{}", row.join(""));
    }
}

fn cmd_eigenvalues(a: &EigArgs) -> ExitCode {
    let spec = match make_spec(&a.space, a.n, a.q) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let (ordering, name) = match a.ordering {
        Ordering::Standard => (TableOrdering::Standard, "standard"),
        Ordering::Alternate => (TableOrdering::Alternate, "alternate"),
    };
    let table = match eig_table_ordered(&spec, ordering) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match a.format {
        Format::Json => {
            println!(
                "{}",
                serde_json::to_string_pretty(&table_json(&table, name)).unwrap()
            );
        }
        Format::Table => {
            println!(
                "space {} ({})  n = {}  q = {}  ordering {}",
                spec.kind.label(),
                spec.kind.classical_name(),
                spec.n,
                spec.q,
                name
            );
            print_matrix("P (rows i, columns k)", table.classes, |i, k| {
                table.p(i, k).to_string()
            });
            print_matrix("Q (rows k, columns i)", table.classes, |k, i| {
                table.q(k, i).to_string()
            });
        }
    }
    ExitCode::SUCCESS
}

fn cmd_bound(a: &BoundArgs) -> ExitCode {
    let spec = match make_spec(&a.space, a.n, a.q) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let res = match code_bound(&spec, a.d) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match a.format {
        Format::Json => {
            let out = json!({
                "space": spec.kind.label(),
                "n": spec.n,
                "q": spec.q,
                "d": a.d,
                "value": res.value.to_string(),
                "floor": res.floor().to_string(),
                "formula": res.formula.label(),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!(
                "space {}  n = {}  q = {}  d = {}",
                spec.kind.label(),
                spec.n,
                spec.q,
                a.d
            );
            println!("bound = {}  (floor {})", res.value, res.floor());
            println!("formula = {}", res.formula.label());
        }
    }
    ExitCode::SUCCESS
}

fn cmd_lp(a: &BoundArgs) -> ExitCode {
    let spec = match make_spec(&a.space, a.n, a.q) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let table = match eig_table(&spec) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let res = match lp_bound_table(&table, a.d) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let verified = res.status == LpStatus::Optimal && verify_certificate(&table, a.d, &res);
    match a.format {
        Format::Json => {
            let out = json!({
                "space": spec.kind.label(),
                "n": spec.n,
                "q": spec.q,
                "d": a.d,
                "status": match res.status {
                    LpStatus::Optimal => "optimal",
                    LpStatus::Infeasible => "infeasible",
                    LpStatus::Unbounded => "unbounded",
                },
                "optimum": res.optimum.to_string(),
                "floor": res.optimum.floor().to_integer().to_string(),
                "primal": rats(&res.primal),
                "dual": rats(&res.dual),
                "certificate_verified": verified,
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!(
                "space {}  n = {}  q = {}  d = {}",
                spec.kind.label(),
                spec.n,
                spec.q,
                a.d
            );
            println!(
                "lp optimum = {}  (floor {})",
                res.optimum,
                res.optimum.floor().to_integer()
            );
            let primal: Vec<String> = res.primal.iter().map(|r| r.to_string()).collect();
            let dual: Vec<String> = res.dual.iter().map(|r| r.to_string()).collect();
            println!("primal a_i = [{}]", primal.join(", "));
            println!("dual y_k = [{}]", dual.join(", "));
            println!("certificate verified = {verified}");
        }
    }
    if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn certificate_json(cert: &Certificate) -> Value {
    match cert {
        Certificate::Ratio {
            code_bound,
            steiner_size,
            ratio,
        } => json!({
            "kind": "ratio",
            "code_bound": code_bound.to_string(),
            "steiner_size": steiner_size.to_string(),
            "ratio": ratio.to_string(),
        }),
        Certificate::DualNegativity {
            witness,
            witness_value,
            negative_indices,
        } => json!({
            "kind": "dual-negativity",
            "witness": witness,
            "witness_value": witness_value.to_string(),
            "negative_indices": negative_indices,
        }),
        Certificate::LiteratureRef { tag } => json!({
            "kind": "literature",
            "tag": tag,
        }),
        Certificate::HalfHyperbolicConstruction => json!({
            "kind": "half-hyperbolic-construction",
        }),
        Certificate::NoCertificate => json!({
            "kind": "none",
        }),
    }
}

fn cmd_steiner(a: &SteinerArgs) -> ExitCode {
    let spec = match make_spec(&a.space, a.n, a.q) {
        Ok(s) => s,
        Err(c) => return c,
    };
    let verdict = match full_verdict(&spec, a.t) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let size = steiner_size(&spec, a.t).unwrap();
    match a.format {
        Format::Json => {
            let out = json!({
                "space": spec.kind.label(),
                "n": spec.n,
                "q": spec.q,
                "t": a.t,
                "steiner_size": size.to_string(),
                "outcome": verdict.outcome.to_string(),
                "case": verdict.case.to_string(),
                "certificate": certificate_json(&verdict.certificate),
            });
            println!("{}", serde_json::to_string_pretty(&out).unwrap());
        }
        Format::Table => {
            println!(
                "space {}  n = {}  q = {}  t = {}",
                spec.kind.label(),
                spec.n,
                spec.q,
                a.t
            );
            println!("forced size = {size}");
            println!("outcome = {}  (case {})", verdict.outcome, verdict.case);
            match &verdict.certificate {
                Certificate::Ratio {
                    code_bound,
                    steiner_size,
                    ratio,
                } => println!("certificate: bound {code_bound} / size {steiner_size} = R {ratio} < 1"),
                Certificate::DualNegativity {
                    witness,
                    witness_value,
                    negative_indices,
                } => println!(
                    "certificate: dual entry A'_{witness} = {witness_value} < 0 (negative at {negative_indices:?})"
                ),
                Certificate::LiteratureRef { tag } => println!("certificate: {tag}"),
                Certificate::HalfHyperbolicConstruction => {
                    println!("certificate: a bipartite half of the generator graph")
                }
                Certificate::NoCertificate => println!("certificate: none"),
            }
        }
    }
    if verdict.outcome == Outcome::Open {
        ExitCode::from(3)
    } else {
        ExitCode::SUCCESS
    }
}

/// One named check in a verification suite.
struct Report {
    failures: u64,
    checks: u64,
}

impl Report {
    fn new() -> Report {
        Report {
            failures: 0,
            checks: 0,
        }
    }

    fn check(&mut self, name: &str, ok: bool) {
        self.checks += 1;
        if ok {
            println!("ok   {name}");
        } else {
            self.failures += 1;
            println!("FAIL {name}");
        }
    }
}

fn base_specs(max_n: i64, qs: &[u64]) -> Vec<SchemeSpec> {
    let mut out = Vec::new();
    for kind in PolarKind::BASE {
        for n in 1..=max_n {
            for &q in qs {
                out.push(SchemeSpec::new(kind, n, q).unwrap());
            }
        }
    }
    out
}

fn suite_tables(rep: &mut Report, inject: bool) {
    for spec in base_specs(6, &[2, 3, 4]) {
        let mut table = eig_table(&spec).unwrap();
        if inject && spec.kind == PolarKind::Symplectic && spec.n == 2 && spec.q == 2 {
            let bumped = &table.pmat[1][1] + Rat::one();
            table.pmat[1][1] = bumped;
        }
        let name = format!(
            "tables {} n={} q={} invariants",
            spec.kind.label(),
            spec.n,
            spec.q
        );
        rep.check(&name, table.verify_invariants().is_ok());
        let entries_ok = (0..=spec.classes()).all(|i| {
            (0..=spec.classes())
                .all(|k| p_number(&spec, i, k).unwrap() == p_number_phi(&spec, i, k).unwrap())
        });
        rep.check(
            &format!(
                "tables {} n={} q={} sum form matches series form",
                spec.kind.label(),
                spec.n,
                spec.q
            ),
            entries_ok,
        );
    }
}

fn suite_identities(rep: &mut Report) {
    for spec in base_specs(6, &[2, 3]) {
        let table = eig_table(&spec).unwrap();
        let ok = (0..=spec.n)
            .all(|i| (0..=spec.n).all(|j| qnum_binomial_identity_check(&table, i, j)));
        rep.check(
            &format!(
                "identities {} n={} q={} eigenvalue binomial sum",
                spec.kind.label(),
                spec.n,
                spec.q
            ),
            ok,
        );
    }
    for q in [2u64, 3] {
        for n in 2..=5 {
            let spec = SchemeSpec::new(PolarKind::HermitianOdd, n, q).unwrap();
            let table = hahn_table(&spec).unwrap();
            let ok = (0..=spec.classes())
                .all(|i| (0..=spec.classes()).all(|j| hahn_binomial_identity_check(&table, i, j)));
            rep.check(&format!("identities 2A-odd n={n} q={q} hahn sum"), ok);
        }
        for m in 4..=8 {
            let spec = SchemeSpec::new(PolarKind::HalfHyperbolic, m, q).unwrap();
            let table = hahn_table(&spec).unwrap();
            let ok = (0..=spec.classes())
                .all(|i| (0..=spec.classes()).all(|j| hahn_binomial_identity_check(&table, i, j)));
            rep.check(&format!("identities half-D m={m} q={q} hahn sum"), ok);
        }
    }
}

fn suite_bounds(rep: &mut Report) {
    let mut ok = true;
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for n in 1..=20 {
            for d in 1..=n {
                ok &= simplified_bounds_check(n, d, q).unwrap();
            }
        }
        ok &= product_inequalities_check(30, q);
    }
    rep.check("bounds closed-form estimates on the grid", ok);
    let mut sym = true;
    for q in [2u64, 3] {
        for n in 2..=8 {
            let b = SchemeSpec::new(PolarKind::Parabolic, n, q).unwrap();
            let c = SchemeSpec::new(PolarKind::Symplectic, n, q).unwrap();
            for d in 1..=n {
                sym &= code_bound(&b, d).unwrap().value == code_bound(&c, d).unwrap().value;
            }
        }
    }
    rep.check("bounds parabolic equals symplectic", sym);
    let mut mono = true;
    for spec in base_specs(8, &[2, 3]) {
        let mut prev: Option<Rat> = None;
        for d in 1..=spec.n {
            let cur = code_bound(&spec, d).unwrap().value;
            if let Some(p) = prev {
                mono &= cur <= p;
            }
            prev = Some(cur);
        }
    }
    rep.check("bounds monotone in d", mono);
}

fn suite_lp(rep: &mut Report) {
    for spec in base_specs(3, &[2, 3]) {
        let table = eig_table(&spec).unwrap();
        for d in 1..=spec.n {
            let res = lp_bound_table(&table, d).unwrap();
            let name = format!(
                "lp {} n={} q={} d={} certificate",
                spec.kind.label(),
                spec.n,
                spec.q,
                d
            );
            rep.check(
                &name,
                res.status == LpStatus::Optimal && verify_certificate(&table, d, &res),
            );
            if d == 1 {
                rep.check(
                    &format!(
                        "lp {} n={} q={} d=1 equals |X|",
                        spec.kind.label(),
                        spec.n,
                        spec.q
                    ),
                    res.optimum == table.x_rat(),
                );
            }
        }
    }
    let spec = SchemeSpec::new(PolarKind::Hyperbolic, 4, 2).unwrap();
    let table = eig_table(&spec).unwrap();
    let res = lp_bound_table(&table, 2).unwrap();
    rep.check(
        "lp D n=4 q=2 d=2 equals 135",
        res.optimum == Rat::from(num_bigint::BigInt::from(135)),
    );
}

fn suite_oracle(rep: &mut Report, max_size: usize, cache_dir: Option<&PathBuf>) {
    let config = OracleConfig {
        max_enumerate: max_size,
        max_axioms: max_size.min(600),
        max_idempotents: max_size,
        max_clique: max_size.min(500),
    };
    let cells = [
        (PolarKind::Symplectic, 2),
        (PolarKind::Parabolic, 2),
        (PolarKind::Hyperbolic, 2),
        (PolarKind::Hyperbolic, 3),
        (PolarKind::HermitianOdd, 2),
        (PolarKind::Elliptic, 2),
    ];
    for (kind, n) in cells {
        let spec = SchemeSpec::new(kind, n, 2).unwrap();
        let tag = format!("oracle {} n={} q=2", kind.label(), n);
        let inst = match enumerate_with(&spec, &config) {
            Ok(i) => i,
            Err(e) => {
                rep.check(&format!("{tag} enumerate ({e})"), false);
                continue;
            }
        };
        rep.check(
            &format!("{tag} size matches closed form"),
            num_bigint::BigInt::from(inst.size()) == scheme_size(&spec),
        );
        match verify_axioms(&inst, &config) {
            Ok(vals) => {
                let expect: Vec<u64> = (0..=spec.classes())
                    .map(|i| {
                        u64::try_from(valency(&spec, i).unwrap()).expect("valency fits in u64")
                    })
                    .collect();
                rep.check(&format!("{tag} scheme axioms and valencies"), vals == expect);
            }
            Err(e) => rep.check(&format!("{tag} scheme axioms ({e})"), false),
        }
        let table = eig_table(&spec).unwrap();
        match verify_idempotents(&inst, &table, &config) {
            Ok(ranks) => {
                let expect: Vec<u64> = table
                    .multiplicities
                    .iter()
                    .map(|m| u64::try_from(m).expect("multiplicity fits in u64"))
                    .collect();
                rep.check(&format!("{tag} idempotent ranks"), ranks == expect);
            }
            Err(e) => rep.check(&format!("{tag} idempotent ranks ({e})"), false),
        }
        let counts_ok = (1..=spec.n).all(|t| {
            inst.count_isotropic(t)
                .map(|c| num_bigint::BigInt::from(c) == isotropic_count(&spec, t).unwrap())
                .unwrap_or(false)
        });
        rep.check(&format!("{tag} isotropic space counts"), counts_ok);
        match generators_per_next_to_max(&inst) {
            Ok(g) => rep.check(
                &format!("{tag} generators per next-to-max space"),
                num_bigint::BigInt::from(g) == spec.generators_per_next_to_max(),
            ),
            Err(e) => rep.check(&format!("{tag} generators per next-to-max ({e})"), false),
        }
        if let Some(dir) = cache_dir {
            let path = dir.join(format!("{}-n{}-q2.txt", kind.classical_name(), n));
            if path.exists() {
                let ok = std::fs::read_to_string(&path)
                    .ok()
                    .and_then(|text| import_text(&text).ok())
                    .map(|(cached_spec, mut gens)| {
                        let mut fresh = inst.generators().to_vec();
                        gens.sort();
                        fresh.sort();
                        cached_spec == spec && gens == fresh
                    })
                    .unwrap_or(false);
                rep.check(&format!("{tag} cache file consistent"), ok);
            } else if let Err(e) =
                std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, export_text(&inst)))
            {
                rep.check(&format!("{tag} cache write ({e})"), false);
            }
        }
    }
}

fn suite_rankmap(rep: &mut Report, seed: u64) {
    let cells = [
        (MatrixClass::Hermitian, 2, 2),
        (MatrixClass::Symmetric, 3, 2),
        (MatrixClass::Symmetric, 3, 3),
        (MatrixClass::Alternating, 4, 2),
    ];
    for (class, n, q) in cells {
        let name = format!("rankmap {class} {n}x{n} q={q} exhaustive");
        match rank_map_check(class, n, q) {
            Ok(report) => rep.check(&name, report.pairs_checked > 0),
            Err(_) => rep.check(&name, false),
        }
    }
    for (class, n, q) in [
        (MatrixClass::Symmetric, 4, 3),
        (MatrixClass::Alternating, 6, 2),
        (MatrixClass::Hermitian, 3, 2),
    ] {
        let name = format!("rankmap {class} {n}x{n} q={q} sampled");
        match rank_map_sample(class, n, q, 200, seed) {
            Ok(report) => rep.check(&name, report.pairs_checked > 0),
            Err(_) => rep.check(&name, false),
        }
    }
}

fn cmd_verify(a: &VerifyArgs) -> ExitCode {
    let mut rep = Report::new();
    let run_tables = matches!(a.suite, Suite::All | Suite::Tables);
    let run_identities = matches!(a.suite, Suite::All | Suite::Identities);
    let run_bounds = matches!(a.suite, Suite::All | Suite::Bounds);
    let run_lp = matches!(a.suite, Suite::All | Suite::Lp);
    let run_oracle = matches!(a.suite, Suite::All | Suite::Oracle);
    let run_rankmap = matches!(a.suite, Suite::All | Suite::Rankmap);
    if run_tables {
        suite_tables(&mut rep, a.inject_corruption);
    }
    if run_identities {
        suite_identities(&mut rep);
    }
    if run_bounds {
        suite_bounds(&mut rep);
    }
    if run_lp {
        suite_lp(&mut rep);
    }
    if run_oracle {
        suite_oracle(&mut rep, a.max_size, a.cache_dir.as_ref());
    }
    if run_rankmap {
        suite_rankmap(&mut rep, a.seed);
    }
    println!(
        "{} checks, {} failures",
        rep.checks, rep.failures
    );
    if rep.failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
