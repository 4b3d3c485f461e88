use std::path::Path;

use circuitkit_core::augment::{self, Engine, Rule, TraceStatus};
use circuitkit_core::generate::{self, Generated, GeneratorSpec};
use circuitkit_core::graver::{self, ConjectureReport, ConjectureSearch, ConjectureStatus};
use circuitkit_core::imbalance;
use circuitkit_core::lp::{self, LpInstance, LpStatus};
use circuitkit_core::num::{self, Rational};
use circuitkit_core::proximity;
use circuitkit_core::subspace;
use circuitkit_core::{Error, RatMatrix, Subspace};
use serde_json::{json, Value};

use crate::format::*;
use crate::{
    BlackboxArgs, CliError, Command, ConjectureArgs, Family, GenerateArgs, InputArgs, Outcome, ProxArgs, ProxCheck,
    RuleArg, SolveArgs,
};

type Res<T> = Result<T, CliError>;

pub fn execute(cmd: &Command) -> Res<Outcome> {
    match cmd {
        Command::Analyze(a) => analyze(a),
        Command::Solve(a) => solve(a),
        Command::Prox(a) => prox(a),
        Command::Blackbox(a) => blackbox(a),
        Command::Graver(a) => graver_cmd(a),
        Command::Conjecture(a) => conjecture(a),
        Command::Appendix => appendix(),
        Command::Generate(a) => generate_cmd(a),
        Command::Diameter(a) => diameter(a),
    }
}

fn outcome(verb: &str, body: Value) -> Outcome {
    Outcome { report: report(verb, body), csv: None, finding: false }
}

fn is_csv(path: &Path) -> bool {
    path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv"))
}

fn read(path: &Path) -> Res<String> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn load_json(path: &Path) -> Res<Value> {
    serde_json::from_str(&read(path)?).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

fn check_width(n: usize) -> Res<()> {
    let cap = crate::max_cols()?;
    if n > cap {
        return Err(CliError::Input(format!("{n} columns exceed the cap of {cap} (CIRCUITKIT_MAX_COLS)")));
    }
    Ok(())
}

fn load_subspace(path: &Path) -> Res<Subspace> {
    let w = if is_csv(path) {
        Subspace::kernel_of(&matrix_from_csv(&read(path)?)?)
    } else {
        subspace_from_json(&load_json(path)?)?
    };
    check_width(w.ambient_dim())?;
    Ok(w)
}

/// `"subspace"` or `"A"` (read as its kernel) inside a larger object.
fn embedded_subspace(v: &Value) -> Res<Subspace> {
    let w = match (v.get("subspace"), v.get("A")) {
        (Some(s), _) => subspace_from_json(s)?,
        (None, Some(a)) => Subspace::kernel_of(&matrix_from_json(a)?),
        _ => return Err(CliError::Input("expected a \"subspace\" or \"A\" field".into())),
    };
    check_width(w.ambient_dim())?;
    Ok(w)
}

fn vec_field(v: &Value, key: &str) -> Res<Vec<Rational>> {
    vec_from_json(v.get(key).ok_or_else(|| CliError::Input(format!("missing field \"{key}\"")))?)
}

fn infeasible(verb: &str, farkas: &[Rational]) -> Outcome {
    outcome(verb, json!({ "status": "infeasible", "farkas": vec_to_json(farkas) }))
}

fn analyze(args: &InputArgs) -> Res<Outcome> {
    let w = load_subspace(args.path()?)?;
    let circs = subspace::circuits(&w);
    let rep = imbalance::imbalances_from(&circs);
    let separable = |e: &Error| matches!(e, Error::SeparableInput);
    let kappa_star = match imbalance::kappa_star(&w) {
        Ok(k) => json!({
            "product": rational_to_json(&k.value.product),
            "length": k.value.length,
            "cycle": k.cycle,
        }),
        Err(e) if separable(&e) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let pairwise = match imbalance::pairwise(&w) {
        Ok(g) => Value::Array(
            g.ratio_sets
                .iter()
                .map(|(&(i, j), set)| json!({ "i": i, "j": j, "kappa_ij": rational_to_json(set.last().expect("nonempty")) }))
                .collect(),
        ),
        Err(e) if separable(&e) => Value::Null,
        Err(e) => return Err(e.into()),
    };
    let wit = &rep.witnesses;
    let witnesses = json!({
        "kappa": wit.kappa.as_ref().map(|(g, i, j)| json!({ "circuit": circuit_to_json(g), "i": i, "j": j })),
        "kappa_bar": wit.kappa_bar.as_ref().map(|(g, i)| json!({ "circuit": circuit_to_json(g), "index": i })),
        "kappa_dot": wit.kappa_dot.iter().map(circuit_to_json).collect::<Vec<_>>(),
    });
    let body = json!({
        "n": w.ambient_dim(),
        "dim": w.dim(),
        "kappa": rational_to_json(&rep.kappa),
        "kappa_dot": int_to_json(&rep.kappa_dot),
        "kappa_bar": int_to_json(&rep.kappa_bar),
        "kappa_star": kappa_star,
        "witnesses": witnesses,
        "pairwise": pairwise,
        "components": subspace::components_with(w.ambient_dim(), &circs),
        "circuits": circs.iter().map(circuit_to_json).collect::<Vec<_>>(),
    });
    Ok(outcome("analyze", body))
}

fn rule_of(r: RuleArg) -> Rule {
    match r {
        RuleArg::Steepest => Rule::SteepestDescent,
        RuleArg::Dantzig => Rule::Dantzig,
        RuleArg::Deepest => Rule::DeepestDescent,
        RuleArg::Ratio => Rule::RatioCircuit,
        RuleArg::Support => Rule::SupportCircuit,
        RuleArg::Guided => Rule::GuidedWalk,
    }
}

fn rule_name(r: Rule) -> &'static str {
    match r {
        Rule::SteepestDescent => "steepest",
        Rule::Dantzig => "dantzig",
        Rule::DeepestDescent => "deepest",
        Rule::RatioCircuit => "ratio",
        Rule::SupportCircuit => "support",
        Rule::GuidedWalk => "guided",
    }
}

fn opt_rational(v: Option<&Rational>) -> Value {
    v.map_or(Value::Null, rational_to_json)
}

fn solve(args: &SolveArgs) -> Res<Outcome> {
    let v = load_json(args.input.path()?)?;
    let lp = lp_from_json(&v)?;
    check_width(lp.num_vars())?;
    let start = v.get("start").map(vec_from_json).transpose()?;
    let exact = lp::solve(&lp)?;
    match exact.status {
        LpStatus::Optimal => {}
        LpStatus::Infeasible => return Ok(infeasible("solve", exact.farkas.as_deref().unwrap_or_default())),
        LpStatus::Unbounded => {
            let ray = exact.ray.unwrap_or_default();
            return Ok(outcome("solve", json!({ "status": "unbounded", "ray": vec_to_json(&ray) })));
        }
    }
    let lp_objective = exact.objective.clone().expect("optimal");
    let (engine, _) = Engine::from_lp(&lp)?;
    let a = engine.matrix();
    let kappa = imbalance::imbalances(&Subspace::kernel_of(a)).kappa;
    let cap = args.cap.unwrap_or_else(|| augment::default_cap(a.cols(), a.rows(), &kappa));
    let rule = rule_of(args.rule);
    let mut guided = Value::Null;
    let trace = if rule == Rule::GuidedWalk {
        let start = match start {
            Some(x) => x,
            None => {
                let zero = vec![Rational::from_integer(0.into()); lp.num_vars()];
                lp::solve(&lp.with_cost(zero))?.primal
            }
        };
        let walk = augment::guided_walk(&lp, &start, &exact.primal)?;
        guided = json!({
            "step_lengths": vec_to_json(&walk.step_lengths),
            "nonbasic_mass": vec_to_json(&walk.nonbasic_mass),
            "nonbasic": walk.nonbasic,
        });
        walk.trace
    } else {
        augment::run(&lp, rule, cap, start)?
    };
    let mut finding = false;
    let audit = if rule == Rule::SteepestDescent {
        match augment::audit_trace(&trace, &engine) {
            Ok(r) => json!({
                "ok": true,
                "kappa": rational_to_json(&r.kappa),
                "factor": rational_to_json(&r.factor),
                "rank_factor": rational_to_json(&r.rank_factor),
                "rank_factor_holds": r.rank_factor_holds,
                "windows_checked": r.windows_checked,
                "worst_window_ratio": opt_rational(r.worst_window_ratio.as_ref()),
                "epsilons": vec_to_json(&r.epsilons),
                "frozen": r.frozen,
            }),
            Err(e @ Error::AuditFailure { .. }) => {
                finding = true;
                json!({ "ok": false, "failure": e.to_string() })
            }
            Err(e) => return Err(e.into()),
        }
    } else {
        Value::Null
    };
    let status = match trace.status {
        TraceStatus::Optimal => "optimal",
        TraceStatus::IterationCap => "iteration_cap",
        TraceStatus::BasicReached => "basic_reached",
    };
    let last_objective = trace.steps.last().map_or(&trace.start_objective, |s| &s.objective);
    let steps: Vec<Value> = trace
        .steps
        .iter()
        .map(|s| {
            json!({
                "x": vec_to_json(&s.x),
                "circuit": circuit_to_json(&s.circuit),
                "alpha": rational_to_json(&s.alpha),
                "objective": rational_to_json(&s.objective),
                "epsilon": opt_rational(s.epsilon.as_ref()),
            })
        })
        .collect();
    if let Some(path) = &args.trace {
        let doc = report("trace", json!({ "rule": rule_name(rule), "start": vec_to_json(&trace.start), "steps": steps }));
        let text = serde_json::to_string_pretty(&doc).map_err(|e| CliError::Output(e.to_string()))?;
        std::fs::write(path, text).map_err(|e| CliError::Output(format!("{}: {e}", path.display())))?;
    }
    let mut csv = String::from("step,objective,epsilon,alpha\n");
    csv.push_str(&format!("0,{},{},\n", num::fmt_rational(&trace.start_objective), trace.start_epsilon.as_ref().map(num::fmt_rational).unwrap_or_default()));
    for (k, s) in trace.steps.iter().enumerate() {
        let eps = s.epsilon.as_ref().map(num::fmt_rational).unwrap_or_default();
        csv.push_str(&format!("{},{},{},{}\n", k + 1, num::fmt_rational(&s.objective), eps, num::fmt_rational(&s.alpha)));
    }
    let body = json!({
        "status": status,
        "rule": rule_name(rule),
        "cap": cap,
        "start": vec_to_json(&trace.start),
        "x": vec_to_json(trace.last_point()),
        "objective": rational_to_json(last_objective),
        "lp_objective": rational_to_json(&lp_objective),
        "steps": trace.steps.len(),
        "audit": audit,
        "guided": guided,
    });
    Ok(Outcome { report: report("solve", body), csv: Some(csv), finding })
}

fn witness_json(w: &proximity::ProximityWitness) -> Value {
    json!({
        "point": vec_to_json(&w.point),
        "bound": rational_to_json(&w.bound),
        "distance": rational_to_json(&w.distance),
        "slack": rational_to_json(&w.slack),
        "holds": w.distance <= w.bound,
    })
}

fn pairs_json(v: &[(usize, Rational)]) -> Value {
    Value::Array(v.iter().map(|(i, x)| json!({ "index": i, "value": rational_to_json(x) })).collect())
}

fn prox(args: &ProxArgs) -> Res<Outcome> {
    let v = load_json(args.input.path()?)?;
    let verb = "prox";
    let result = match args.check {
        ProxCheck::Feasibility => {
            let w = embedded_subspace(&v)?;
            proximity::hoffman_feasibility_witness(&w, &vec_field(&v, "d")?).map(|x| witness_json(&x))
        }
        ProxCheck::Optimal => {
            let w = embedded_subspace(&v)?;
            proximity::hoffman_opt_witness(&w, &vec_field(&v, "d")?, &vec_field(&v, "c")?).map(|x| witness_json(&x))
        }
        ProxCheck::Transfer => {
            let w = embedded_subspace(&v)?;
            let d = vec_field(&v, "d")?;
            let d_new = vec_field(&v, "d_new")?;
            let (x_tilde, s) = match (v.get("x_tilde"), v.get("s")) {
                (Some(x), Some(s)) => (vec_from_json(x)?, vec_from_json(s)?),
                _ => {
                    let res = lp::solve(&LpInstance::subspace(w.clone(), d.clone(), vec_field(&v, "c")?)?)?;
                    match res.status {
                        LpStatus::Optimal => (res.primal, res.reduced),
                        LpStatus::Infeasible => return Ok(infeasible(verb, res.farkas.as_deref().unwrap_or_default())),
                        LpStatus::Unbounded => return Err(CliError::Input("the starting program is unbounded".into())),
                    }
                }
            };
            proximity::verify_transfer(&w, &x_tilde, &s, &d_new).map(|t| {
                json!({
                    "x_tilde": vec_to_json(&x_tilde),
                    "s": vec_to_json(&s),
                    "bound": rational_to_json(&t.bound),
                    "r": t.r,
                    "nearest": vec_to_json(&t.nearest),
                    "nearest_distance": rational_to_json(&t.nearest_distance),
                    "dual_maxima": pairs_json(&t.dual_maxima),
                    "holds": t.holds(),
                })
            })
        }
        ProxCheck::Fixing => {
            let lp = lp_from_json(&v)?;
            check_width(lp.num_vars())?;
            let c2 = vec_field(&v, "c2")?;
            let (a, b, u) = lp.constraints();
            let res = lp::solve(&lp)?;
            match res.status {
                LpStatus::Optimal => {}
                LpStatus::Infeasible => return Ok(infeasible(verb, res.farkas.as_deref().unwrap_or_default())),
                LpStatus::Unbounded => return Err(CliError::Input("the program with cost c is unbounded".into())),
            }
            proximity::verify_fixing(&a, &b, &u, lp.cost(), &c2, &res.primal, &res.dual).map(|f| {
                json!({
                    "x1": vec_to_json(&res.primal),
                    "y1": vec_to_json(&res.dual),
                    "r0": f.r0,
                    "ru": f.ru,
                    "r0_maxima": pairs_json(&f.r0_maxima),
                    "ru_minima": pairs_json(&f.ru_minima),
                    "holds": f.holds,
                })
            })
        }
    };
    let check = format!("{:?}", args.check).to_lowercase();
    match result {
        Ok(mut body) => {
            let finding = body["holds"] == Value::Bool(false);
            body["check"] = json!(check);
            body["status"] = json!("ok");
            Ok(Outcome { report: report(verb, body), csv: None, finding })
        }
        Err(Error::Infeasible { farkas }) => Ok(infeasible(verb, &farkas)),
        Err(e) => Err(e.into()),
    }
}

fn blackbox(args: &BlackboxArgs) -> Res<Outcome> {
    let v = load_json(args.input.path()?)?;
    let w = embedded_subspace(&v)?;
    let d = vec_field(&v, "d")?;
    let epsilon = match &args.epsilon {
        Some(s) => num::parse_rational(s).map_err(|e| CliError::Input(e.to_string()))?,
        None => proximity::default_epsilon(&w),
    };
    match proximity::feasibility_simplified(&w, &d, &epsilon, args.seed) {
        Ok(run) => {
            let levels: Vec<Value> = run
                .levels
                .iter()
                .map(|l| {
                    json!({
                        "coords": l.coords,
                        "kappa": rational_to_json(&l.kappa),
                        "x_tilde": vec_to_json(&l.x_tilde),
                        "large": l.large,
                        "lift": vec_to_json(&l.lift),
                    })
                })
                .collect();
            let body = json!({
                "status": "feasible",
                "epsilon": rational_to_json(&epsilon),
                "seed": args.seed,
                "x": vec_to_json(&run.x),
                "depth": run.depth(),
                "levels": levels,
            });
            Ok(outcome("blackbox", body))
        }
        Err(Error::OracleInfeasible { farkas }) => Ok(infeasible("blackbox", &farkas)),
        Err(e) => Err(e.into()),
    }
}

/// An integer matrix with kernel `W`: the given one when integral.
fn integer_matrix(v: &Value, path: &Path) -> Res<RatMatrix> {
    if is_csv(path) {
        let a = matrix_from_csv(&read(path)?)?;
        if a.is_integral() {
            return Ok(a);
        }
        return Ok(imbalance::int_representation(&Subspace::kernel_of(&a)).matrix);
    }
    if v.get("entries").is_some() {
        let a = matrix_from_json(v)?;
        if a.is_integral() {
            return Ok(a);
        }
    }
    Ok(imbalance::int_representation(&subspace_from_json(v)?).matrix)
}

fn graver_cmd(args: &InputArgs) -> Res<Outcome> {
    let path = args.path()?;
    let v = if is_csv(path) { Value::Null } else { load_json(path)? };
    let lp_mode = v.get("A").is_some();
    let a = if lp_mode {
        let a = matrix_from_json(&v["A"])?;
        a.check_integral()?;
        a
    } else {
        integer_matrix(&v, path)?
    };
    check_width(a.cols())?;
    let mut finding = false;
    let mut csv = String::new();
    // With an LP the basis is optional: a box that is too large only skips it.
    let basis = match graver::graver_basis(&a) {
        Ok(gb) => {
            let sw = graver::graver_sandwich(&a, &gb)?;
            finding |= !(sw.holds && sw.contains_circuits && sw.fractional_decompositions);
            for g in &gb.elements {
                csv.push_str(&g.iter().map(ToString::to_string).collect::<Vec<_>>().join(","));
                csv.push('\n');
            }
            json!({
                "elements": gb.elements.iter().map(|g| int_vec_to_json(g)).collect::<Vec<_>>(),
                "count": gb.elements.len(),
                "g1": int_to_json(&gb.g1),
                "ginf": int_to_json(&gb.ginf),
                "radius": int_to_json(&gb.radius),
                "points": gb.points.to_string(),
                "method": format!("{:?}", gb.method).to_lowercase(),
                "sandwich": {
                    "kappa_bar": int_to_json(&sw.kappa_bar),
                    "n": sw.n,
                    "holds": sw.holds,
                    "contains_circuits": sw.contains_circuits,
                    "fractional_decompositions": sw.fractional_decompositions,
                },
            })
        }
        Err(e @ Error::BoxTooLarge { .. }) if lp_mode => json!({ "skipped": e.to_string() }),
        Err(e) => return Err(e.into()),
    };
    let ip = if lp_mode {
        let b = vec_field(&v, "b")?;
        let c = vec_field(&v, "c")?;
        match graver::ip_proximity_check(&a, &b, &c) {
            Ok(r) => {
                finding |= !r.holds();
                json!({
                    "status": "optimal",
                    "x_lp": vec_to_json(&r.x_lp),
                    "lp_objective": rational_to_json(&r.lp_objective),
                    "x_ip": vec_to_json(&r.x_ip),
                    "ip_objective": rational_to_json(&r.ip_objective),
                    "distance": rational_to_json(&r.distance),
                    "distance_inf": rational_to_json(&r.distance_inf),
                    "bound": rational_to_json(&r.bound),
                    "holds": r.holds(),
                    "full_enumeration": r.full_enumeration,
                })
            }
            Err(Error::Infeasible { .. }) => json!({ "status": "infeasible" }),
            Err(Error::Unbounded { .. }) => json!({ "status": "unbounded" }),
            Err(e) => return Err(e.into()),
        }
    } else {
        Value::Null
    };
    let body = json!({ "matrix": matrix_to_json(&a), "graver": basis, "ip_proximity": ip });
    Ok(Outcome { report: report("graver", body), csv: Some(csv), finding })
}

fn conjecture_json(r: &ConjectureReport) -> Value {
    let (status, terms) = match &r.status {
        ConjectureStatus::Holds { terms } => (
            "holds",
            terms.iter().map(|(l, g)| json!({ "lambda": rational_to_json(l), "circuit": circuit_to_json(g) })).collect(),
        ),
        ConjectureStatus::Violated => ("violated", Vec::new()),
    };
    json!({
        "target": int_vec_to_json(&r.target),
        "status": status,
        "terms": terms,
        "verified": r.verify(),
        "searched": r.searched,
        "conformal": r.conformal.iter().map(circuit_to_json).collect::<Vec<_>>(),
    })
}

fn conjecture(args: &ConjectureArgs) -> Res<Outcome> {
    let path = args.input.path()?;
    let (w, a) = if is_csv(path) {
        let a = integer_matrix(&Value::Null, path)?;
        (Subspace::kernel_of(&a), a)
    } else {
        let v = load_json(path)?;
        (subspace_from_json(&v)?, integer_matrix(&v, path)?)
    };
    check_width(w.ambient_dim())?;
    let targets: Vec<Vec<_>> = match &args.target {
        Some(t) => {
            let v = load_json(t)?;
            let z = v.get("z").or_else(|| v.get("target")).unwrap_or(&v);
            vec![int_vec_from_json(z)?]
        }
        None => graver::graver_basis(&a)?.elements,
    };
    let search = ConjectureSearch::new(&w);
    let mut results = Vec::with_capacity(targets.len());
    let mut violated = 0usize;
    for z in &targets {
        let r = match search.decompose(z) {
            Ok(r) => r,
            Err(Error::NotIntegerKernelVector) => {
                return Err(CliError::Input("target is not an integer vector of the subspace".into()));
            }
            Err(e) => return Err(e.into()),
        };
        if !r.holds() || !r.verify() {
            violated += 1;
        }
        results.push(conjecture_json(&r));
    }
    let body = json!({
        "kappa_dot": int_to_json(search.kappa_dot()),
        "targets": results.len(),
        "violated": violated,
        "results": results,
    });
    Ok(Outcome { report: report("conjecture", body), csv: None, finding: violated > 0 })
}

fn appendix() -> Res<Outcome> {
    let r = graver::appendix_counterexample();
    let reps: Vec<Value> = r
        .representations
        .iter()
        .map(|rep| json!({ "b": rep.b, "product": rep.product, "bad_columns": rep.bad_columns }))
        .collect();
    let body = json!({
        "kappa_dot": int_to_json(&r.kappa_dot),
        "rows": r.rows,
        "representations": reps,
        "legs": {
            "kappa_dot": r.kappa_leg(),
            "rows": r.rows_leg(),
            "representations": r.representation_leg(),
        },
        "passes": r.passes(),
    });
    Ok(Outcome { report: report("appendix", body), csv: None, finding: !r.passes() })
}

fn generate_cmd(args: &GenerateArgs) -> Res<Outcome> {
    let spec = match args.family {
        Family::Flow => GeneratorSpec::Flow { nodes: args.nodes, arcs: args.arcs, seed: args.seed },
        Family::Incidence => GeneratorSpec::Incidence { nodes: args.nodes },
        Family::Dumbbell => GeneratorSpec::Dumbbell,
        Family::TuNetwork => GeneratorSpec::TuNetwork { rows: args.rows, cols: args.cols, seed: args.seed },
        Family::RandomRational => GeneratorSpec::RandomRational {
            rows: args.rows,
            cols: args.cols,
            seed: args.seed,
            max_abs: args.max_abs,
            max_den: args.max_den,
        },
    };
    let family = format!("{:?}", args.family).to_lowercase();
    let generated = generate::generate(&spec).map_err(|e| match e {
        Error::BadParameters(m) => CliError::Input(m),
        other => other.into(),
    })?;
    let (mut body, csv) = match generated {
        Generated::Matrix(a) => (matrix_to_json(&a), Some(matrix_to_csv(&a)?)),
        Generated::Flow(net) => {
            let mut body = lp_to_json(&augment::flow_to_lp(&net)?);
            body["nodes"] = json!(net.nodes);
            body["arcs"] = json!(net.arcs);
            (body, None)
        }
    };
    body["family"] = json!(family);
    body["seed"] = json!(args.seed);
    Ok(Outcome { report: report("generate", body), csv, finding: false })
}

fn diameter(args: &InputArgs) -> Res<Outcome> {
    let lp = lp_from_json(&load_json(args.path()?)?)?;
    check_width(lp.num_vars())?;
    if !lp::is_bounded(&lp)? {
        return Err(CliError::Input("the feasible region is unbounded".into()));
    }
    let vertices = lp::vertices(&lp)?;
    if vertices.is_empty() {
        return Ok(infeasible("diameter", &[]));
    }
    let diam = lp::edge_graph_diameter(&lp)?;
    let (a, _, _) = lp.constraints();
    let kappa = imbalance::imbalances(&Subspace::kernel_of(&a)).kappa;
    let shape = imbalance::diameter_bound(a.cols(), a.rows(), &kappa);
    let body = json!({
        "status": "ok",
        "vertices": vertices.len(),
        "diameter": diam,
        "kappa": rational_to_json(&kappa),
        "bound_shape": shape.to_string(),
    });
    Ok(outcome("diameter", body))
}
