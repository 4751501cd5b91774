//! Batch CLI over the qjacobi library.
//!
//! Subcommands: `uniruled`, `coeff`, `table`, `series`, `fano verify`,
//! `sweep`. All rationals are printed exactly as `p/q` (plain integers when
//! the denominator is 1), never as decimals. `--json` switches to a single
//! machine-readable object; values are identical to text mode.
//!
//! Exit codes: 0 on successful computation regardless of boolean outcome,
//! 1 on an internal assertion failure, 2 on usage errors.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use qjacobi::criterion::{self, BetaClass};
use qjacobi::fano;
use qjacobi::jacobi::{self, jcoeff, NamedForm};
use qjacobi::{parse_rat, Rat};

#[derive(Parser)]
#[command(
    name = "qjacobi",
    about = "Exact quasi-Jacobi form expansions, the uniruled-divisor criterion for K3^[n]-type varieties, and Fano-of-lines intersection numbers",
    version
)]
struct Cli {
    /// Emit a single JSON object instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Raise the q-expansion precision (never lowers the automatic choice)
    #[arg(long, global = true)]
    qprec: Option<i64>,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide existence of a uniruled divisor in a primitive curve class
    Uniruled(UniruledArgs),
    /// Exact coefficient of a named form at a norm/residue pair
    Coeff(CoeffArgs),
    /// Reproduce the multiplicity or eigenvalue tables
    Table(TableArgs),
    /// Dump the stored terms of a named form
    Series(SeriesArgs),
    /// Intersection-theory computations on the Fano variety of lines
    Fano(FanoArgs),
    /// Sweep phi^{n-1}/Delta for vanishing coefficients, n = 2..=7
    Sweep(SweepArgs),
}

#[derive(Args)]
struct UniruledArgs {
    /// Half the dimension: the variety is of K3^[n] type
    #[arg(long)]
    n: u32,
    /// Beauville-Bogomolov norm of the class, as p/q or an integer
    #[arg(long)]
    norm: String,
    /// A representative of the residue set in Z/(2n-2)Z
    #[arg(long)]
    residue: i64,
    /// Also search for an explicit witness decomposition
    #[arg(long)]
    witness: bool,
    #[arg(long, default_value_t = 6)]
    r_bound: i64,
    #[arg(long, default_value_t = 12)]
    d_bound: i64,
}

#[derive(Args)]
struct CoeffArgs {
    #[arg(long, value_enum)]
    form: CoeffForm,
    /// K3^[n] type; forms of index 1 require n = 2
    #[arg(long, default_value_t = 2)]
    n: u32,
    #[arg(long)]
    norm: String,
    #[arg(long)]
    residue: i64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CoeffForm {
    F,
    G,
    Phi,
    PhiPowOverDelta,
}

#[derive(Args)]
struct TableArgs {
    #[arg(long, value_enum)]
    which: TableKind,
    /// Largest norm to include (default 6, the last column of the tables)
    #[arg(long)]
    max_norm: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Multiplicities,
    Eigenvalues,
}

#[derive(Args)]
struct SeriesArgs {
    #[arg(long, value_enum)]
    form: SeriesForm,
    /// Exponent of phi^{n-1}/Delta (only with --form phi-pow-over-delta)
    #[arg(long)]
    n: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesForm {
    Theta,
    E2,
    E4,
    E6,
    Delta,
    Phi,
    PhiM21,
    Phi01,
    F,
    G,
    PhiPowOverDelta,
}

#[derive(Args)]
struct FanoArgs {
    #[command(subcommand)]
    action: FanoAction,
}

#[derive(Subcommand)]
enum FanoAction {
    /// Run the full verification suite and print PASS/FAIL per named value
    Verify,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 6)]
    max_d: i64,
}

struct Output {
    subcommand: &'static str,
    inputs: Map<String, Value>,
    results: Map<String, Value>,
    text: String,
    exit: i32,
}

struct UsageError {
    flag: &'static str,
    message: String,
}

impl UsageError {
    fn new(flag: &'static str, message: impl Into<String>) -> Self {
        UsageError {
            flag,
            message: message.into(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let qprec = cli.qprec;
    let out = match cli.cmd {
        Cmd::Uniruled(a) => run_uniruled(a, qprec),
        Cmd::Coeff(a) => run_coeff(a, qprec),
        Cmd::Table(a) => run_table(a, qprec),
        Cmd::Series(a) => run_series(a, qprec),
        Cmd::Fano(a) => run_fano(a),
        Cmd::Sweep(a) => run_sweep(a),
    };
    match out {
        Ok(out) => {
            if cli.json {
                let obj = json!({
                    "subcommand": out.subcommand,
                    "inputs": Value::Object(out.inputs),
                    "results": Value::Object(out.results),
                });
                println!("{obj}");
            } else {
                print!("{}", out.text);
            }
            std::process::exit(out.exit);
        }
        Err(e) => {
            eprintln!("error: invalid value for {}: {}", e.flag, e.message);
            std::process::exit(2);
        }
    }
}

fn effective_prec(auto: i64, user: Option<i64>) -> i64 {
    auto.max(user.unwrap_or(i64::MIN))
}

fn parse_norm(s: &str) -> Result<Rat, UsageError> {
    parse_rat(s).map_err(|e| UsageError::new("--norm", e.to_string()))
}

fn beta_class(n: u32, norm: &str, residue: i64) -> Result<BetaClass, UsageError> {
    let norm = parse_norm(norm)?;
    BetaClass::new(n, norm, residue).map_err(|e| match e {
        criterion::CriterionError::InvalidDimension(_) => UsageError::new("--n", e.to_string()),
        criterion::CriterionError::NormDenominator { .. } => {
            UsageError::new("--norm", e.to_string())
        }
        other => UsageError::new("--residue", other.to_string()),
    })
}

fn rs(x: &Rat) -> String {
    x.to_string()
}

fn run_uniruled(a: UniruledArgs, qprec: Option<i64>) -> Result<Output, UsageError> {
    let beta = beta_class(a.n, &a.norm, a.residue)?;
    let decision = criterion::decide_uniruled_with_prec(&beta, qprec.unwrap_or(0));
    let (exists, multiplicity) = (decision.exists, decision.multiplicity);

    let mut inputs = Map::new();
    inputs.insert("n".into(), json!(a.n.to_string()));
    inputs.insert("norm".into(), json!(rs(beta.norm())));
    inputs.insert("residue".into(), json!(a.residue.to_string()));

    let mut results = Map::new();
    results.insert("exists".into(), json!(exists));
    results.insert("multiplicity".into(), json!(rs(&multiplicity)));

    let mut text = format!("exists = {exists}, multiplicity = {}\n", rs(&multiplicity));
    if a.witness {
        inputs.insert("r_bound".into(), json!(a.r_bound.to_string()));
        inputs.insert("d_bound".into(), json!(a.d_bound.to_string()));
        let found = criterion::search_witness(&beta, a.r_bound, a.d_bound);
        let rendered = match &found {
            Some(w) => format!(
                "[{}]",
                w.pairs
                    .iter()
                    .map(|(d, r)| format!("({d}, {r})"))
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
            None => format!("none (r_bound = {}, d_bound = {})", a.r_bound, a.d_bound),
        };
        results.insert("witness".into(), json!(rendered));
        text.push_str(&format!("witness = {rendered}\n"));
    }
    Ok(Output {
        subcommand: "uniruled",
        inputs,
        results,
        text,
        exit: 0,
    })
}

fn run_coeff(a: CoeffArgs, qprec: Option<i64>) -> Result<Output, UsageError> {
    let (name, index_n) = match a.form {
        CoeffForm::F => (NamedForm::F, 2),
        CoeffForm::G => (NamedForm::G, 2),
        CoeffForm::Phi => (NamedForm::Phi, 2),
        CoeffForm::PhiPowOverDelta => (NamedForm::PhiPowOverDelta(a.n), a.n),
    };
    if a.n != index_n {
        return Err(UsageError::new(
            "--n",
            format!("form has index 1, so n must be 2 (got {})", a.n),
        ));
    }
    let beta = beta_class(index_n, &a.norm, a.residue)?;
    let auto = criterion::auto_prec_for(&beta);
    let form = jacobi::named_form(name, effective_prec(auto, qprec));
    let value = jcoeff(&form, beta.norm(), beta.residue())
        .map_err(|e| UsageError::new("--norm", e.to_string()))?;

    let mut inputs = Map::new();
    inputs.insert("form".into(), json!(coeff_form_name(a.form)));
    inputs.insert("n".into(), json!(a.n.to_string()));
    inputs.insert("norm".into(), json!(rs(beta.norm())));
    inputs.insert("residue".into(), json!(a.residue.to_string()));
    let mut results = Map::new();
    results.insert("coeff".into(), json!(rs(&value)));
    Ok(Output {
        subcommand: "coeff",
        inputs,
        results,
        text: format!("coeff = {}\n", rs(&value)),
        exit: 0,
    })
}

fn coeff_form_name(f: CoeffForm) -> &'static str {
    match f {
        CoeffForm::F => "f",
        CoeffForm::G => "g",
        CoeffForm::Phi => "phi",
        CoeffForm::PhiPowOverDelta => "phi-pow-over-delta",
    }
}

/// Admissible K3^[2] norms from -5/2 up to `max`, stepping through the
/// half-integer grid: even integers (residue 0) and 3/2 + 2Z (residue 1).
fn k3two_norms(max: &Rat) -> Vec<(Rat, i64)> {
    let mut out = Vec::new();
    let mut k = -5i64; // twice the norm
    loop {
        let norm = qjacobi::rat(k, 2);
        if &norm > max {
            break;
        }
        match k.rem_euclid(4) {
            0 => out.push((norm, 0)),
            3 => out.push((norm, 1)),
            _ => {}
        }
        k += 1;
    }
    out
}

fn run_table(a: TableArgs, qprec: Option<i64>) -> Result<Output, UsageError> {
    let max = match &a.max_norm {
        Some(s) => parse_rat(s).map_err(|e| UsageError::new("--max-norm", e.to_string()))?,
        None => qjacobi::rat_i(6),
    };
    let norms = k3two_norms(&max);
    let mut inputs = Map::new();
    let mut results = Map::new();
    let mut text = String::new();
    match a.which {
        TableKind::Multiplicities => {
            inputs.insert("which".into(), json!("multiplicities"));
            inputs.insert("max_norm".into(), json!(rs(&max)));
            text.push_str("(b,b)\tf\n");
            for (norm, rep) in norms {
                let beta = BetaClass::new(2, norm.clone(), rep).expect("grid is admissible");
                let m = criterion::multiplicity_with_prec(&beta, qprec.unwrap_or(0));
                text.push_str(&format!("{}\t{}\n", rs(&norm), rs(&m)));
                results.insert(format!("f({})", rs(&norm)), json!(rs(&m)));
            }
        }
        TableKind::Eigenvalues => {
            inputs.insert("which".into(), json!("eigenvalues"));
            inputs.insert("max_norm".into(), json!(rs(&max)));
            text.push_str("(b,b)\tlambda1\tlambda2\n");
            for (norm, rep) in norms {
                let key1 = format!("lambda1({})", rs(&norm));
                let key2 = format!("lambda2({})", rs(&norm));
                if norm == qjacobi::rat_i(0) {
                    // excluded by the nonzero-norm hypothesis
                    text.push_str(&format!("{}\t-\t-\n", rs(&norm)));
                    results.insert(key1, json!("-"));
                    results.insert(key2, json!("-"));
                    continue;
                }
                let beta = BetaClass::new(2, norm.clone(), rep).expect("grid is admissible");
                let (l1, l2) =
                    criterion::eigenvalues_with_prec(&beta, qprec.unwrap_or(0)).expect("norm != 0");
                text.push_str(&format!("{}\t{}\t{}\n", rs(&norm), rs(&l1), rs(&l2)));
                results.insert(key1, json!(rs(&l1)));
                results.insert(key2, json!(rs(&l2)));
            }
        }
    }
    Ok(Output {
        subcommand: "table",
        inputs,
        results,
        text,
        exit: 0,
    })
}

fn run_series(a: SeriesArgs, qprec: Option<i64>) -> Result<Output, UsageError> {
    let q = effective_prec(12, qprec);
    let (name, label) = match a.form {
        SeriesForm::Theta => (NamedForm::Theta, "theta".to_string()),
        SeriesForm::E2 => (NamedForm::E2, "e2".to_string()),
        SeriesForm::E4 => (NamedForm::E4, "e4".to_string()),
        SeriesForm::E6 => (NamedForm::E6, "e6".to_string()),
        SeriesForm::Delta => (NamedForm::Delta, "delta".to_string()),
        SeriesForm::Phi => (NamedForm::Phi, "phi".to_string()),
        SeriesForm::PhiM21 => (NamedForm::PhiM21, "phi-m21".to_string()),
        SeriesForm::Phi01 => (NamedForm::Phi01, "phi-01".to_string()),
        SeriesForm::F => (NamedForm::F, "f".to_string()),
        SeriesForm::G => (NamedForm::G, "g".to_string()),
        SeriesForm::PhiPowOverDelta => {
            let n = a
                .n
                .ok_or_else(|| UsageError::new("--n", "required with --form phi-pow-over-delta"))?;
            if n < 1 {
                return Err(UsageError::new("--n", "n must be >= 1"));
            }
            (
                NamedForm::PhiPowOverDelta(n),
                format!("phi-pow-over-delta({n})"),
            )
        }
    };
    if a.n.is_some() && !matches!(a.form, SeriesForm::PhiPowOverDelta) {
        return Err(UsageError::new(
            "--n",
            "only meaningful with --form phi-pow-over-delta",
        ));
    }
    let form = jacobi::named_form(name, q);
    let mut text = String::new();
    let mut results = Map::new();
    for (d, r2, c) in form.series.terms() {
        text.push_str(&format!("{d} {r2} {}\n", rs(c)));
        results.insert(format!("{d},{r2}"), json!(rs(c)));
    }
    let mut inputs = Map::new();
    inputs.insert("form".into(), json!(label));
    inputs.insert("qprec".into(), json!(q.to_string()));
    Ok(Output {
        subcommand: "series",
        inputs,
        results,
        text,
        exit: 0,
    })
}

fn run_fano(a: FanoArgs) -> Result<Output, UsageError> {
    let FanoAction::Verify = a.action;
    let mut text = String::new();
    let mut results = Map::new();
    let mut all_pass = true;
    let mut check = |name: &str, value: String, pass: bool| {
        text.push_str(&format!(
            "{name} = {value} {}\n",
            if pass { "PASS" } else { "FAIL" }
        ));
        results.insert(name.to_string(), json!(value));
        results.insert(format!("{name}.pass"), json!(pass));
        all_pass &= pass;
    };

    match fano::surface_class() {
        Ok(s) => {
            let rendered = format!(
                "({}) h^2 + ({}) h + ({})",
                s.coeffs[2], s.coeffs[1], s.coeffs[0]
            );
            check("surface-class", rendered, true);
        }
        Err(e) => check("surface-class", e.to_string(), false),
    }
    match fano::surface_numbers() {
        Ok((a1, a2, a3)) => {
            let expected = qjacobi::rat_i(315);
            check(
                "surface-numbers",
                format!("({}, {}, {})", a1, a2, a3),
                a1 == expected && a2 == expected && a3 == expected,
            );
        }
        Err(e) => check("surface-numbers", e.to_string(), false),
    }
    match fano::eigenvalue_chain() {
        Ok(chain) => {
            check(
                "pushforward-coefficient",
                rs(&chain.pushforward_coefficient),
                chain.pushforward_coefficient == qjacobi::rat_i(15),
            );
            check(
                "n70875",
                rs(&chain.n70875),
                chain.n70875 == qjacobi::rat_i(70875),
            );
            check(
                "n42525",
                rs(&chain.n42525),
                chain.n42525 == qjacobi::rat_i(42525),
            );
            check("n945", rs(&chain.n945), chain.n945 == qjacobi::rat_i(945));
        }
        Err(e) => check("eigenvalue-chain", e.to_string(), false),
    }
    match fano::consistency_web() {
        Ok(report) => {
            for c in &report.checks {
                check(
                    c.name,
                    format!("{} = {}", rs(&c.lhs), rs(&c.rhs)),
                    c.passes(),
                );
            }
        }
        Err(e) => check("consistency-web", e.to_string(), false),
    }

    Ok(Output {
        subcommand: "fano-verify",
        inputs: Map::new(),
        results,
        text,
        exit: if all_pass { 0 } else { 1 },
    })
}

fn run_sweep(a: SweepArgs) -> Result<Output, UsageError> {
    if a.max_d < 2 {
        return Err(UsageError::new("--max-d", "must be >= 2"));
    }
    let report = criterion::sweep_low_n(a.max_d);
    let mut text = format!(
        "max_d = {}, invariant floor = {} (conservative effectivity cutoff)\n",
        report.max_d,
        rs(&report.invariant_floor)
    );
    let mut results = Map::new();
    let mut nonneg = 0usize;
    for z in &report.zeros {
        text.push_str(&format!(
            "n={}: zero at (d, r) = ({}, {}), invariant {}\n",
            z.n,
            z.d,
            z.r,
            rs(&z.invariant)
        ));
        results.insert(
            format!("zero(n={},d={},r={})", z.n, z.d, z.r),
            json!(rs(&z.invariant)),
        );
        if z.invariant >= qjacobi::rat_i(0) {
            nonneg += 1;
        }
    }
    text.push_str(&format!(
        "n=8: coefficient at (d, r) = (1, 5) is {} (invariant 3/14)\n",
        rs(&report.k3n8_coefficient)
    ));
    text.push_str(&format!(
        "nonnegative-invariant zeros for n <= 7: {nonneg}\n"
    ));
    results.insert(
        "k3n8-coefficient".into(),
        json!(rs(&report.k3n8_coefficient)),
    );
    results.insert(
        "nonnegative-invariant-zeros".into(),
        json!(nonneg.to_string()),
    );
    let mut inputs = Map::new();
    inputs.insert("max_d".into(), json!(a.max_d.to_string()));
    Ok(Output {
        subcommand: "sweep",
        inputs,
        results,
        text,
        exit: 0,
    })
}
