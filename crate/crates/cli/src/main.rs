mod report;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use implic::basket::witness_baskets;
use implic::constraint::parse_implication_with_cap;
use implic::deciders::{inequality_violation, matus_slack, step_counterexample};
use implic::instances::{
    coefficient, coefficient_inequality, coefficient_inequality_with, triangle,
};
use implic::models::{
    i_measure, kr_distribution, parity_distribution, step_decomposition, Relation,
};
use implic::{
    differential_implication, disjoint_saturated_unit, ei_check, elemental_cover_certificate,
    eval_imeasure_constraint, fd_consequent_certificate, min_lambda, parse_constraint,
    quadratic_certificate, to_polymatroid, verify_certificate, verify_inequality, BasketSet,
    Constraint, Error, Implication, ModelClass, NumericMode, Rational, Scalar, SetFunction, VarSet,
    VarUniverse, MAX_VARS,
};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use report::{error_json, rat, table_f64, table_rational, Report, Status};

/// Largest universe the polymatroid LP accepts.
const GAMMA_MAX_N: usize = 8;

#[derive(Parser)]
#[command(
    name = "implic",
    version,
    about = "Decide and certify implications between information-theoretic constraints",
    after_help = "Entropic cones are not offered as a model class: polymatroids (gamma) are \
                  sound but incomplete for them, and step functions (step) decide the \
                  saturated/conditional fragment exactly.\n\
                  IMPLIC_MAX_N lowers the variable cap (at most 20)."
)]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide Σ ⇒ τ over a model class.
    Check {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Class::Step)]
        class: Class,
        /// Print the counter-model's full value table.
        #[arg(long)]
        witness: bool,
    },
    /// Smallest λ with h(τ) ≤ λ·h(Σ) over all polymatroids.
    Minlambda { file: PathBuf },
    /// Build and verify a relaxation certificate.
    Certify {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Strategy::Quadratic)]
        strategy: Strategy,
    },
    /// Degrees of satisfaction on the empirical distribution of a relation.
    Entropy(EntropyArgs),
    /// I-measure atoms and step decomposition.
    Imeasure(SourceArgs),
    /// Differential implication over basket data.
    Basket {
        #[arg(long)]
        baskets: PathBuf,
        implication: PathBuf,
    },
    /// Reproduce a built-in computation.
    Demo {
        /// parity | kr:<ε> | matus:<k> | coefficients | triangle
        #[arg(long)]
        which: String,
    },
}

#[derive(Args)]
struct EntropyArgs {
    /// CSV file with a header row.
    #[arg(long)]
    relation: PathBuf,
    /// Constraint such as `I(A;B|C)` or `H(B|A)`; repeatable.
    #[arg(long)]
    constraint: Vec<String>,
    /// All X → y with |X| ≤ --max-lhs.
    #[arg(long)]
    all_fds: bool,
    #[arg(long, default_value_t = 2)]
    max_lhs: usize,
    /// All saturated X ↠ Y | Z.
    #[arg(long)]
    all_mvds: bool,
    /// Drop duplicate tuples first.
    #[arg(long)]
    distinct: bool,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SourceArgs {
    #[arg(long)]
    relation: Option<PathBuf>,
    #[arg(long)]
    baskets: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    Step,
    Gamma,
    Positive,
}

impl Class {
    fn model(self) -> ModelClass {
        match self {
            Class::Step => ModelClass::StepFunctions,
            Class::Gamma => ModelClass::Polymatroids,
            Class::Positive => ModelClass::PositivePolymatroids,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Class::Step => "step functions",
            Class::Gamma => "polymatroids",
            Class::Positive => "positive polymatroids",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Elemental,
    Quadratic,
    Fd,
    Disjoint,
    Lp,
}

struct CliError(String);

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = Cli::parse();
    let mut report = Report::new(args.clone(), NumericMode::Exact);
    let outcome = run(&cli.command, &mut report);
    match outcome {
        Ok(()) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&report.to_json()).expect("json")
                );
            } else {
                println!("{}", report.to_text());
            }
            ExitCode::from(report.status as u8)
        }
        Err(CliError(msg)) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string_pretty(&error_json(&args, &msg)).expect("json")
                );
            } else {
                eprintln!("error: {msg}");
            }
            ExitCode::from(Status::Error as u8)
        }
    }
}

fn run(command: &Command, r: &mut Report) -> CliResult<()> {
    let cap = variable_cap()?;
    match command {
        Command::Check {
            file,
            class,
            witness,
        } => cmd_check(r, &load_implication(file, cap)?, *class, *witness),
        Command::Minlambda { file } => cmd_minlambda(r, &load_implication(file, cap)?),
        Command::Certify { file, strategy } => {
            cmd_certify(r, &load_implication(file, cap)?, *strategy)
        }
        Command::Entropy(args) => cmd_entropy(r, args, cap),
        Command::Imeasure(args) => cmd_imeasure(r, args, cap),
        Command::Basket {
            baskets,
            implication,
        } => {
            let imp = load_implication(implication, cap)?;
            let text = read(baskets)?;
            let data = BasketSet::parse(&text, Some(imp.universe.clone()))?;
            cmd_basket(r, &imp, &data)
        }
        Command::Demo { which } => cmd_demo(r, which),
    }
}

fn variable_cap() -> CliResult<usize> {
    match std::env::var("IMPLIC_MAX_N") {
        Err(_) => Ok(MAX_VARS),
        Ok(v) => {
            let n: usize = v
                .trim()
                .parse()
                .map_err(|_| CliError(format!("IMPLIC_MAX_N=`{v}` is not a number")))?;
            Ok(n.min(MAX_VARS))
        }
    }
}

fn read(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_implication(path: &Path, cap: usize) -> CliResult<Implication> {
    Ok(parse_implication_with_cap(&read(path)?, cap)?)
}

fn check_cap(u: &VarUniverse, cap: usize) -> CliResult<()> {
    if u.n() > cap {
        return Err(CliError(format!(
            "{} variables exceed the cap of {cap}",
            u.n()
        )));
    }
    Ok(())
}

fn echo_implication(r: &mut Report, imp: &Implication) {
    let u = &imp.universe;
    let ants: Vec<String> = imp.antecedents.iter().map(|c| c.display(u)).collect();
    r.field("variables", json!(u.names()));
    r.field("antecedents", json!(ants));
    r.field("consequent", imp.consequent.display(u));
    r.line(format!("Σ = {{{}}}", ants.join(", ")));
    r.line(format!("τ = {}", imp.consequent.display(u)));
}

fn witness_summary(r: &mut Report, imp: &Implication, h: &SetFunction<Rational>, full: bool) {
    let u = &imp.universe;
    let sigma: Rational = imp.antecedents.iter().map(|c| c.eval(h)).sum();
    let tau = imp.consequent.eval(h);
    let (table, lines) = table_rational(h);
    let mut w = json!({ "h_sigma": rat(&sigma), "h_tau": rat(&tau) });
    if let Some(top) = zero_set(h) {
        if top != u.full() && step_label_matches(h, top) {
            w["step_function"] = json!(u.fmt_set(top));
            r.line(format!("witness: step function h_{{{}}}", u.fmt_set(top)));
        }
    }
    r.line(format!(
        "witness: h(Σ) = {}, h(τ) = {}",
        rat(&sigma),
        rat(&tau)
    ));
    if full {
        w["table"] = table;
        r.line("witness table:");
        for l in lines {
            r.line(l);
        }
    }
    r.field("witness", w);
}

/// Largest set on which `h` vanishes.
fn zero_set(h: &SetFunction<Rational>) -> Option<VarSet> {
    let u = h.universe();
    (0..u.num_subsets() as u32)
        .map(VarSet::from_bits)
        .filter(|&w| h.get(w).is_zero())
        .max_by_key(|w| w.len())
}

fn step_label_matches(h: &SetFunction<Rational>, top: VarSet) -> bool {
    (0..h.universe().num_subsets() as u32)
        .map(VarSet::from_bits)
        .all(|w| {
            let expect = if w.is_subset(top) { 0 } else { 1 };
            *h.get(w) == Rational::from_integer(expect.into())
        })
}

fn cmd_check(r: &mut Report, imp: &Implication, class: Class, full: bool) -> CliResult<()> {
    if matches!(class, Class::Gamma) && imp.n() > GAMMA_MAX_N {
        return Err(CliError(format!(
            "the polymatroid check supports at most {GAMMA_MAX_N} variables; use --class step"
        )));
    }
    echo_implication(r, imp);
    r.field("class", class.name());
    let v = ei_check(imp, class.model())?;
    r.field("holds", v.holds);
    if v.holds {
        r.line(format!("holds over {}", class.name()));
        if let Some(cert) = &v.certificate {
            if !verify_certificate(cert.certificate(), imp) {
                return Err(CliError("certificate failed re-verification".into()));
            }
            r.field("certificate", cert.to_json());
            r.line(format!(
                "certificate verified with {} elemental terms",
                cert.certificate().elementals.len()
            ));
        }
    } else {
        r.fail();
        r.line(format!("fails over {}", class.name()));
        if let Some(h) = &v.witness {
            witness_summary(r, imp, h, full);
        }
    }
    Ok(())
}

fn cmd_minlambda(r: &mut Report, imp: &Implication) -> CliResult<()> {
    echo_implication(r, imp);
    let m = min_lambda(imp)?;
    match (&m.lambda, &m.certificate) {
        (Some(lambda), Some(cert)) => {
            if !verify_certificate(cert.certificate(), imp) {
                return Err(CliError("certificate failed re-verification".into()));
            }
            r.field("lambda", rat(lambda));
            r.field("certificate", cert.to_json());
            r.line(format!("λ* = {}", rat(lambda)));
            r.line(format!(
                "h(τ) ≤ {}·h(Σ) verified over polymatroids",
                rat(lambda)
            ));
        }
        _ => {
            r.fail();
            r.field("lambda", "unbounded");
            r.line("λ* = unbounded");
            if let Some(h) = &m.witness {
                witness_summary(r, imp, h, false);
            }
        }
    }
    Ok(())
}

fn cmd_certify(r: &mut Report, imp: &Implication, strategy: Strategy) -> CliResult<()> {
    echo_implication(r, imp);
    if !imp.has_differential() {
        if let Some(w) = step_counterexample(imp) {
            r.fail();
            r.field("holds", false);
            r.field(
                "witness",
                json!({ "step_function": imp.universe.fmt_set(w) }),
            );
            r.line(format!(
                "no certificate: step function h_{{{}}} refutes the implication",
                imp.universe.fmt_set(w)
            ));
            return Ok(());
        }
    }
    if let Strategy::Lp = strategy {
        return cmd_minlambda(r, imp);
    }
    let result = match strategy {
        Strategy::Elemental => elemental_cover_certificate(imp),
        Strategy::Quadratic => quadratic_certificate(imp),
        Strategy::Fd => fd_consequent_certificate(imp),
        Strategy::Disjoint => disjoint_saturated_unit(imp),
        Strategy::Lp => unreachable!(),
    }?;
    if !verify_certificate(result.certificate.certificate(), imp) {
        return Err(CliError("certificate failed re-verification".into()));
    }
    r.field("holds", true);
    r.field("result", result.to_json());
    r.line(format!(
        "certificate verified: λ = {} (bound {})",
        rat(&result.certificate.lambda()),
        rat(&result.bound_claimed)
    ));
    r.line(format!("derivation: {} steps", result.derivation.len()));
    for step in &result.derivation {
        let s = step.to_json(&imp.universe);
        r.line(format!(
            "  {} {} ⟶ {}",
            s["rule"].as_str().unwrap_or("?"),
            s["before"],
            s["after"]
        ));
    }
    Ok(())
}

fn load_relation(path: &Path, cap: usize) -> CliResult<Relation> {
    let file = fs::File::open(path).map_err(|e| CliError(format!("{}: {e}", path.display())))?;
    let rel = Relation::from_csv(file, None)?;
    check_cap(rel.universe(), cap)?;
    Ok(rel)
}

fn cmd_entropy(r: &mut Report, args: &EntropyArgs, cap: usize) -> CliResult<()> {
    let mut rel = load_relation(&args.relation, cap)?;
    if args.distinct {
        rel = rel.distinct();
    }
    if args.constraint.is_empty() && !args.all_fds && !args.all_mvds {
        return Err(CliError(
            "give --constraint, --all-fds or --all-mvds".into(),
        ));
    }
    r.set_mode(NumericMode::Approximate);
    let u = rel.universe().clone();
    let h = rel.empirical_entropy();
    r.field("variables", json!(u.names()));
    r.field("rows", rel.num_rows());
    r.line(format!(
        "{} rows over {}",
        rel.num_rows(),
        u.names().join(", ")
    ));
    let mut degrees = Vec::new();
    let mut push = |r: &mut Report, label: String, v: f64| {
        r.line(format!("  {label} = {v:.6}"));
        degrees.push(json!({ "constraint": label, "degree": v, "satisfied": v <= 1e-9 }));
    };
    for text in &args.constraint {
        let c = parse_constraint(text, &u)?;
        push(r, c.display(&u), c.eval(&h));
    }
    if args.all_fds {
        for x in u.full().subsets().filter(|x| x.len() <= args.max_lhs) {
            for y in (u.full() - x).iter() {
                let c = Constraint::conditional(x, VarSet::singleton(y));
                push(r, c.display(&u), c.eval(&h));
            }
        }
    }
    if args.all_mvds {
        let n = u.n();
        for code in 0..3usize.pow(n as u32) {
            let labels: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
            let part = |k| VarSet::from_indices((0..n).filter(|&i| labels[i] == k));
            let (x, y, z) = (part(0), part(1), part(2));
            if y.is_empty() || z.is_empty() || y.first() > z.first() {
                continue;
            }
            let c = Constraint::ci(y, z, x);
            push(r, c.display(&u), c.eval(&h));
        }
    }
    r.field("degrees", Value::Array(degrees));
    Ok(())
}

fn cmd_imeasure(r: &mut Report, args: &SourceArgs, cap: usize) -> CliResult<()> {
    if let Some(path) = &args.relation {
        let rel = load_relation(path, cap)?;
        r.set_mode(NumericMode::Approximate);
        let h = rel.empirical_entropy();
        let (table, _) = table_f64(&h);
        r.field("entropy", table);
        atoms_report(r, &h, |v| json!(v), |v| format!("{v:.6}"));
    } else if let Some(path) = &args.baskets {
        let b = BasketSet::parse(&read(path)?, None)?;
        check_cap(b.universe(), cap)?;
        let h = to_polymatroid(&b);
        r.field("baskets", b.len());
        atoms_report(r, &h, |v| json!(rat(v)), rat);
    }
    Ok(())
}

fn atoms_report<T: Scalar>(
    r: &mut Report,
    h: &SetFunction<T>,
    to_json: impl Fn(&T) -> Value,
    show: impl Fn(&T) -> String,
) {
    let u = h.universe();
    r.field("variables", json!(u.names()));
    let mu = i_measure(h);
    let mut atoms = serde_json::Map::new();
    r.line("atoms (variables outside the atom → μ*):");
    for (w, v) in mu.iter() {
        let v = &if v.near_zero() { T::zero() } else { v.clone() };
        let label = u.fmt_set(u.full() - w);
        r.line(format!("  {label} → {}", show(v)));
        atoms.insert(label, to_json(v));
    }
    r.field("atoms", Value::Object(atoms));
    r.line("step decomposition (nonzero terms):");
    let mut steps = serde_json::Map::new();
    for (w, c) in step_decomposition(h) {
        if c.near_zero() {
            continue;
        }
        r.line(format!("  {} · h_{{{}}}", show(&c), u.fmt_set(w)));
        steps.insert(u.fmt_set(w), to_json(&c));
    }
    r.field("step_decomposition", Value::Object(steps));
}

fn cmd_basket(r: &mut Report, imp: &Implication, data: &BasketSet) -> CliResult<()> {
    echo_implication(r, imp);
    let u = &imp.universe;
    let v = differential_implication(imp)?;
    r.field("holds", v.holds);
    r.line(format!(
        "{} over positive polymatroids",
        if v.holds { "holds" } else { "fails" }
    ));
    if !v.holds {
        r.fail();
        if let Some(b) = witness_baskets(&v) {
            r.field("witness_baskets", b.to_text());
            r.line("witness baskets:");
            for l in b.to_text().lines() {
                r.line(format!("  {l}"));
            }
        }
    }
    let h = to_polymatroid(data);
    let mut values = Vec::new();
    let mut total = Rational::zero();
    r.line(format!("values on {} baskets:", data.len()));
    for c in &imp.antecedents {
        let x = eval_imeasure_constraint(&h, c)?;
        r.line(format!("  {} = {}", c.display(u), rat(&x)));
        values.push(json!({ "constraint": c.display(u), "value": rat(&x) }));
        total += &x;
    }
    let t = eval_imeasure_constraint(&h, &imp.consequent)?;
    r.line(format!("  {} = {}", imp.consequent.display(u), rat(&t)));
    r.line(format!("  τ ≤ Σ on this data: {}", t <= total));
    r.field("antecedent_values", Value::Array(values));
    r.field("consequent_value", rat(&t));
    r.field("antecedent_total", rat(&total));
    r.field("consequent_bounded_on_data", t <= total);
    Ok(())
}

fn cmd_demo(r: &mut Report, which: &str) -> CliResult<()> {
    r.field("demo", which);
    match which.split_once(':') {
        None if which == "parity" => demo_parity(r),
        None if which == "coefficients" || which == "eq9" => demo_coefficients(r),
        None if which == "triangle" => demo_triangle(r),
        Some(("kr", eps)) => {
            let eps: f64 = eps
                .parse()
                .map_err(|_| CliError(format!("bad ε `{eps}`")))?;
            demo_kr(r, eps)
        }
        Some(("matus", k)) => {
            let k: i64 = k
                .parse()
                .ok()
                .filter(|&k| k >= 1)
                .ok_or_else(|| CliError(format!("bad k `{k}`; expected a positive integer")))?;
            demo_matus(r, k)
        }
        _ => Err(CliError(format!(
            "unknown demo `{which}`; expected parity, kr:<ε>, matus:<k>, coefficients or triangle"
        ))),
    }
}

fn mi(h: &SetFunction<f64>, a: &str, b: &str, c: &str) -> CliResult<f64> {
    let u = h.universe();
    Ok(h.mutual_info(u.parse_set(a)?, u.parse_set(b)?, u.parse_set(c)?)?)
}

fn demo_parity(r: &mut Report) -> CliResult<()> {
    r.set_mode(NumericMode::Approximate);
    let h = parity_distribution().entropy();
    let values = [
        ("I(Y;Z)", mi(&h, "Y", "Z", "0")?),
        ("I(Y;Z|X)", mi(&h, "Y", "Z", "X")?),
        ("I(X;Y)", mi(&h, "X", "Y", "0")?),
        ("I(X;Z)", mi(&h, "X", "Z", "0")?),
        ("I(X;Y,Z)", mi(&h, "X", "Y,Z", "0")?),
    ];
    for (k, v) in values {
        r.line(format!("{k} = {v}"));
        r.field(k, v);
    }
    let imp = implic::parse_implication("vars: X,Y,Z\nI(X;Y)\nI(X;Z)\n=>\nI(X;Y,Z)\n")?;
    let step = ei_check(&imp, ModelClass::StepFunctions)?.holds;
    r.line(format!(
        "I(X;Y), I(X;Z) ⇒ I(X;Y,Z) over step functions: {step}"
    ));
    r.line("the parity distribution satisfies both antecedents and violates the consequent");
    r.field("step_functions_imply", step);
    if !(step && values[0].1 == 0.0 && values[1].1 == 1.0 && values[4].1 == 1.0) {
        r.fail();
    }
    Ok(())
}

fn demo_kr(r: &mut Report, eps: f64) -> CliResult<()> {
    r.set_mode(NumericMode::Approximate);
    let h = kr_distribution(eps)?.entropy();
    let zeros = [
        ("I(C;D|A)", mi(&h, "C", "D", "A")?),
        ("I(C;D|B)", mi(&h, "C", "D", "B")?),
        ("I(A;B)", mi(&h, "A", "B", "0")?),
    ];
    let icd = mi(&h, "C", "D", "0")?;
    let ibcd = mi(&h, "B", "C", "D")?;
    r.field("epsilon", eps);
    for (k, v) in zeros {
        r.line(format!("{k} = {v:e}"));
        r.field(k, v);
    }
    r.line(format!(
        "I(C;D) = {icd:.6e}   (I(C;D)/ε = {:.4})",
        icd / eps
    ));
    r.line(format!(
        "I(B;C|D) = {ibcd:.6e}   (I(B;C|D)/ε² = {:.4})",
        ibcd / (eps * eps)
    ));
    r.field("I(C;D)", icd);
    r.field("I(B;C|D)", ibcd);
    if zeros.iter().any(|(_, v)| v.abs() > 1e-12) || icd <= 0.0 {
        r.fail();
    }
    Ok(())
}

fn demo_matus(r: &mut Report, k: i64) -> CliResult<()> {
    r.set_mode(NumericMode::Approximate);
    r.field("k", k);
    r.line(format!(
        "I(C;D) ≤ I(C;D|A) + {}·I(C;D|B) + I(A;B) + {}·I(B;C|D) + {}·I(B;D|C)",
        rat(&Rational::new((k + 3).into(), 2.into())),
        rat(&Rational::new((k - 1).into(), 2.into())),
        rat(&Rational::new(1.into(), k.into())),
    ));
    let mut rows = Vec::new();
    for eps in [0.01, 0.001] {
        let h = kr_distribution(eps)?.entropy();
        let slack = matus_slack(&h, k)?;
        r.line(format!("  ε = {eps}: slack = {slack:.6e}"));
        rows.push(json!({ "epsilon": eps, "slack": slack }));
        if slack < -1e-9 {
            r.fail();
        }
    }
    r.field("slack", Value::Array(rows));
    Ok(())
}

fn demo_coefficients(r: &mut Report) -> CliResult<()> {
    let ineq = coefficient_inequality();
    let u = &ineq.universe;
    let show = |terms: &[(Rational, Constraint)]| {
        terms
            .iter()
            .map(|(c, t)| format!("{}·{}", rat(c), t.display(u)))
            .collect::<Vec<_>>()
            .join(" + ")
    };
    r.line(format!(
        "{} ≤ {}",
        ineq.target.display(u),
        show(&ineq.terms)
    ));
    let v = verify_inequality(u, &ineq.terms, &ineq.target)?;
    r.field("verified", v.holds);
    match &v.certificate {
        Some(cert) if v.holds && verify_certificate(cert.certificate(), cert.implication()) => {
            r.line(format!(
                "verified ({} elemental terms)",
                cert.certificate().elementals.len()
            ));
            r.field("certificate", cert.to_json());
        }
        _ => {
            r.fail();
            r.line("not verified");
        }
    }
    let mut tight = Vec::new();
    for (ca, cb) in [("2.999", "2"), ("3", "1.999")] {
        let weak = coefficient_inequality_with(coefficient(ca)?, coefficient(cb)?);
        let v = verify_inequality(u, &weak.terms, &weak.target)?;
        let gap = v
            .witness
            .as_ref()
            .map(|h| inequality_violation(h, &weak.terms, &weak.target));
        match (&gap, v.holds) {
            (Some(g), false) if g.is_positive() => {
                r.line(format!("coefficients ({ca}, {cb}): violated by {}", rat(g)));
            }
            _ => {
                r.fail();
                r.line(format!("coefficients ({ca}, {cb}): no violation found"));
            }
        }
        tight.push(json!({
            "c_a": ca,
            "c_b": cb,
            "holds": v.holds,
            "violation": gap.as_ref().map(rat),
            "witness": v.witness.as_ref().map(|h| table_rational(h).0),
        }));
    }
    r.field("lowered", Value::Array(tight));
    Ok(())
}

fn demo_triangle(r: &mut Report) -> CliResult<()> {
    let imp = triangle();
    echo_implication(r, &imp);
    for class in [Class::Step, Class::Gamma, Class::Positive] {
        let holds = ei_check(&imp, class.model())?.holds;
        r.line(format!(
            "{}: {}",
            class.name(),
            if holds { "holds" } else { "fails" }
        ));
        r.field(class.name(), holds);
        if !holds {
            r.fail();
        }
    }
    let m = min_lambda(&imp)?;
    if let Some(l) = &m.lambda {
        r.line(format!("λ* = {}", rat(l)));
        r.field("lambda", rat(l));
    }
    Ok(())
}
