//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::time::Instant;

use circuitkit_core::augment::{self, audit_trace, guided_walk, max_flow_lp, Engine, Rule, TraceStatus};
use circuitkit_core::error::Error;
use circuitkit_core::generate::{complete_graph_incidence, dumbbell, flow_network, random_rational, tu_network};
use circuitkit_core::graver::{self, ConjectureSearch, ConjectureStatus};
use circuitkit_core::imbalance::{self, GeoMeanValue};
use circuitkit_core::lp::{self, LpInstance, LpStatus};
use circuitkit_core::num::{self, frac, rat};
use circuitkit_core::proximity;
use circuitkit_core::subspace::{self, Subspace};
use circuitkit_core::{linalg, RatMatrix, Rational};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

struct Fixture {
    name: String,
    w: Subspace,
    /// Integer matrix with kernel `w`.
    a: RatMatrix,
}

impl Fixture {
    fn kernel(name: impl Into<String>, a: RatMatrix) -> Self {
        let a = integer_rows(&a);
        Fixture { name: name.into(), w: Subspace::kernel_of(&a), a }
    }

    fn span(name: impl Into<String>, s: RatMatrix) -> Self {
        let w = Subspace::span_of(&s);
        let a = integer_rows(w.kernel_rep());
        Fixture { name: name.into(), w, a }
    }

    fn n(&self) -> usize {
        self.w.ambient_dim()
    }
}

/// Scales each row by the lcm of its denominators.
fn integer_rows(m: &RatMatrix) -> RatMatrix {
    let rows: Vec<Vec<Rational>> = m
        .to_rows()
        .into_iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
            row.iter().map(|v| v * num::from_int(&l)).collect()
        })
        .collect();
    RatMatrix::from_rows(m.cols(), &rows).expect("same width")
}

fn a_app() -> RatMatrix {
    RatMatrix::from_i64(&[&[1, 3, 4, 3], &[0, 13, 9, 10]])
}

fn w3() -> Subspace {
    Subspace::span_of(&RatMatrix::from_i64(&[&[0, 1, 1, 3], &[1, 0, 3, 1]]))
}

/// Named examples plus seeded network and random integer matrices.
fn fixtures() -> Vec<Fixture> {
    let mut out = vec![
        Fixture::kernel("A_app", a_app()),
        Fixture::kernel("A_int", RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1]])),
        Fixture::kernel("A_db", dumbbell()),
        Fixture::span("W_3", RatMatrix::from_i64(&[&[0, 1, 1, 3], &[1, 0, 3, 1]])),
        Fixture::kernel("K4", complete_graph_incidence(4).unwrap()),
    ];
    for seed in 0..4 {
        let n = tu_network(3, 3, seed).unwrap().hstack(&RatMatrix::identity(3)).unwrap();
        out.push(Fixture::kernel(format!("tu[3x3|I] seed {seed}"), n));
    }
    for seed in 0..6 {
        let (m, n) = (1 + seed as usize % 2, 4 + seed as usize % 3);
        let a = random_rational(m, n, 100 + seed, 3, 1).unwrap();
        if linalg::rank(&a) == m {
            out.push(Fixture::kernel(format!("int {m}x{n} seed {}", 100 + seed), a));
        }
    }
    out
}

fn bullet(ok: bool, what: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what())
    }
}

fn appendix() -> Outcome {
    let start = Instant::now();
    let r = graver::appendix_counterexample();
    let elapsed = start.elapsed().as_secs_f64();
    bullet(r.kappa_leg(), || format!("kappa_dot = {}", r.kappa_dot))?;
    bullet(r.rows_leg(), || format!("row vectors {:?}", r.rows))?;
    bullet(r.representation_leg(), || format!("{} representations", r.representations.len()))?;
    bullet(elapsed < 10.0, || format!("took {elapsed:.2}s"))?;
    Ok(format!(
        "kappa_dot = {}, {} row vectors, {} representations all with a bad inverse, {elapsed:.3}s",
        r.kappa_dot,
        r.rows.len(),
        r.representations.len()
    ))
}

/// Reduced row echelon form with zero rows dropped: a basis form of `a`.
fn basis_form(a: &RatMatrix) -> RatMatrix {
    let (r, pivots) = linalg::rref(a);
    r.select_rows(&(0..pivots.len()).collect::<Vec<_>>())
}

fn unimodularity() -> Outcome {
    let mut cases = Vec::new();
    for seed in 0..25u64 {
        let (r, c) = (2 + seed as usize % 3, 2 + (seed as usize / 3) % 3);
        cases.push(tu_network(r, c, seed).unwrap().hstack(&RatMatrix::identity(r)).unwrap());
    }
    for seed in 0..25u64 {
        let (m, n) = (2 + seed as usize % 2, 4 + seed as usize % 4);
        let max_abs = if seed % 2 == 0 { 1 } else { 2 };
        cases.push(random_rational(m, n, 1000 + seed, max_abs, 1).unwrap());
    }
    let mut tu = 0;
    for (k, a) in cases.iter().enumerate() {
        let w = Subspace::kernel_of(a);
        let unimodular = imbalance::imbalances(&w).kappa.is_one();
        let is_tu = imbalance::is_tu(&basis_form(a)).is_ok();
        bullet(unimodular == is_tu, || format!("case {k}: kappa = 1 is {unimodular}, basis form TU is {is_tu}"))?;
        tu += usize::from(is_tu);
    }
    Ok(format!("{} matrices, {tu} unimodular, equivalence holds on all", cases.len()))
}

fn duality_and_chain() -> Outcome {
    let mut list = fixtures();
    list.push(Fixture::kernel("K5", complete_graph_incidence(5).unwrap()));
    for seed in 0..6 {
        list.push(Fixture::kernel(format!("rational seed {seed}"), random_rational(2, 5, 200 + seed, 3, 3).unwrap()));
    }
    for f in &list {
        let (w, d) = (imbalance::imbalances(&f.w), imbalance::imbalances(&subspace::dual(&f.w)));
        bullet(w.kappa == d.kappa && w.kappa_dot == d.kappa_dot, || {
            format!("{}: kappa {} vs {}, kappa_dot {} vs {}", f.name, w.kappa, d.kappa, w.kappa_dot, d.kappa_dot)
        })?;
        let (bar, dot) = (num::from_int(&w.kappa_bar), num::from_int(&w.kappa_dot));
        bullet(Rational::one() <= w.kappa && w.kappa <= bar && bar <= dot, || {
            format!("{}: chain broken at {} / {} / {}", f.name, w.kappa, w.kappa_bar, w.kappa_dot)
        })?;
    }
    Ok(format!("{} subspaces with n <= 10", list.len()))
}

/// Seeded non-separable subspaces, named ones first.
fn connected_fixtures(count: usize, max_n: usize) -> Vec<Fixture> {
    let mut out: Vec<Fixture> =
        fixtures().into_iter().filter(|f| f.n() <= max_n && subspace::components(&f.w).len() == 1).collect();
    let mut seed = 300;
    while out.len() < count {
        let (m, n) = (1 + seed as usize % 3, 4 + seed as usize % (max_n - 3));
        let a = random_rational(m, n, seed, 3, 2).unwrap();
        let w = Subspace::kernel_of(&a);
        if w.dim() > 0 && subspace::components(&w).len() == 1 {
            out.push(Fixture::kernel(format!("rational seed {seed}"), a));
        }
        seed += 1;
    }
    out
}

fn triangle() -> Outcome {
    let list = connected_fixtures(30, 7);
    let mut triples = 0usize;
    for f in &list {
        let g = imbalance::pairwise(&f.w).map_err(|e| format!("{}: {e}", f.name))?;
        let n = f.n();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if i == j || j == k || i == k {
                        continue;
                    }
                    let (Some(ij), Some(ik), Some(kj)) = (g.kappa_ij(i, j), g.kappa_ij(i, k), g.kappa_ij(k, j)) else {
                        return Err(format!("{}: missing ratio among {i},{j},{k}", f.name));
                    };
                    bullet(ij <= &(ik * kj), || format!("{}: kappa_{i}{j} = {ij} > {ik} * {kj}", f.name))?;
                    triples += 1;
                }
            }
        }
    }
    Ok(format!("{} non-separable subspaces, {triples} ordered triples", list.len()))
}

fn condition_numbers() -> Outcome {
    let list: Vec<Fixture> = fixtures().into_iter().filter(|f| f.n() <= 7).collect();
    let mut worst_low = f64::INFINITY;
    for f in &list {
        let a = basis_form(&f.a);
        let chi = imbalance::chibar(&a).map_err(|e| format!("{}: {e}", f.name))?;
        let kappa = num::to_f64(&imbalance::imbalances(&f.w).kappa);
        let low = (1.0 + kappa * kappa).sqrt();
        let high = f.n() as f64 * kappa;
        bullet(low <= chi + 1e-6 && chi <= high + 1e-6, || format!("{}: {low} <= {chi} <= {high} fails", f.name))?;
        worst_low = worst_low.min(chi - low);
    }
    Ok(format!("{} matrices, tightest lower slack {worst_low:.3e}", list.len()))
}

fn cycle_mean() -> Outcome {
    let list = connected_fixtures(20, 6);
    let mut cycles = 0usize;
    for f in &list {
        let g = imbalance::pairwise(&f.w).map_err(|e| e.to_string())?;
        let ks = imbalance::kappa_star(&f.w).map_err(|e| e.to_string())?;
        let mut worst: Option<Vec<usize>> = None;
        imbalance::for_each_simple_cycle(f.n(), |c| {
            if let Some(v) = g.cycle_value(c) {
                cycles += 1;
                if v > ks.value && worst.is_none() {
                    worst = Some(c.to_vec());
                }
            }
        });
        if let Some(c) = worst {
            return Err(format!("{}: cycle {c:?} beats kappa* {}", f.name, ks.value.to_f64()));
        }
        bullet(g.cycle_value(&ks.cycle).as_ref() == Some(&ks.value), || {
            format!("{}: witness cycle {:?} does not attain kappa*", f.name, ks.cycle)
        })?;
    }
    let w = w3();
    let g = imbalance::pairwise(&w).map_err(|e| e.to_string())?;
    let ks = imbalance::kappa_star(&w).map_err(|e| e.to_string())?;
    let three = GeoMeanValue::new(rat(3), 1);
    let two_cycle = g.cycle_value(&[2, 3]);
    bullet(two_cycle.as_ref().is_some_and(|v| *v >= three) && ks.value >= three, || {
        format!("W_3: 2-cycle {:?}, kappa* {}", two_cycle.map(|v| v.to_f64()), ks.value.to_f64())
    })?;
    Ok(format!("{} subspaces, {cycles} cycles dominated; W_3 kappa* = {:.4} >= 3", list.len(), ks.value.to_f64()))
}

struct ProxInstance {
    a: RatMatrix,
    w: Subspace,
    x0: Vec<Rational>,
    d: Vec<Rational>,
    c: Vec<Rational>,
}

fn prox_instance(seed: u64) -> ProxInstance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = rng.gen_range(1..=3);
    let n = rng.gen_range(m + 2..=8);
    let a = RatMatrix::from_vec(m, n, (0..m * n).map(|_| rat(rng.gen_range(-3..=3))).collect()).unwrap();
    let w = Subspace::kernel_of(&a);
    let x0: Vec<Rational> = (0..n).map(|_| if rng.gen_bool(0.4) { rat(0) } else { rat(rng.gen_range(1..=3)) }).collect();
    let coefs: Vec<Rational> = (0..w.dim()).map(|_| rat(rng.gen_range(-3..=3))).collect();
    let d = num::add(&x0, &w.span_rep().vec_mul(&coefs).unwrap());
    let c = (0..n).map(|_| rat(rng.gen_range(-2..=4))).collect();
    ProxInstance { a, w, x0, d, c }
}

fn hoffman_suite() -> Outcome {
    let (mut transfer, mut fixing, mut vacuous) = (0, 0, 0);
    let total = 100u64;
    for seed in 0..total {
        let p = prox_instance(seed);
        let ctx = |e: Error| format!("instance {seed}: {e}");
        proximity::hoffman_feasibility_witness(&p.w, &p.d).map_err(ctx)?;
        let c_pos: Vec<Rational> = p.c.iter().map(|v| v.abs()).collect();
        proximity::hoffman_opt_witness(&p.w, &p.d, &c_pos).map_err(ctx)?;

        let res = lp::solve(&LpInstance::subspace(p.w.clone(), p.x0.clone(), p.c.clone()).unwrap()).map_err(ctx)?;
        if res.status == LpStatus::Optimal {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
            let den = rng.gen_range(1..=8);
            let moved: Vec<Rational> = res.primal.iter().map(|x| x + frac(rng.gen_range(-2..=2), den)).collect();
            match proximity::verify_transfer(&p.w, &res.primal, &res.reduced, &moved) {
                Ok(chk) => {
                    bullet(chk.holds(), || format!("instance {seed}: transfer {chk:?}"))?;
                    transfer += 1;
                }
                Err(Error::Infeasible { .. }) => {}
                Err(e) => return Err(ctx(e)),
            }
        }

        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xf1f1);
        let n = p.x0.len();
        let u: Vec<Option<Rational>> = (0..n).map(|_| rng.gen_bool(0.5).then(|| rat(rng.gen_range(1..=5)))).collect();
        let start: Vec<Rational> =
            p.x0.iter().zip(&u).map(|(x, ub)| if ub.as_ref().is_some_and(|ub| x > ub) { ub.clone().unwrap() } else { x.clone() }).collect();
        let b = p.a.mul_vec(&start).unwrap();
        let res = lp::solve(&LpInstance::bounded(p.a.clone(), b.clone(), p.c.clone(), u.clone()).unwrap()).map_err(ctx)?;
        if res.status == LpStatus::Optimal {
            let den = rng.gen_range(4..=40);
            let c2: Vec<Rational> = p.c.iter().map(|c| c + frac(rng.gen_range(-1..=1), den)).collect();
            match proximity::verify_fixing(&p.a, &b, &u, &p.c, &c2, &res.primal, &res.dual) {
                Ok(chk) => {
                    bullet(chk.holds, || format!("instance {seed}: fixing {chk:?}"))?;
                    fixing += 1;
                }
                // No optimum under c2: nothing to pin.
                Err(Error::Unbounded { .. }) => vacuous += 1,
                Err(e) => return Err(format!("instance {seed}: fixing: {e}")),
            }
        }

        let run = proximity::feasibility_simplified(&p.w, &p.d, &proximity::default_epsilon(&p.w), seed).map_err(ctx)?;
        bullet(run.x.iter().all(|v| !v.is_negative()) && p.w.contains(&num::sub(&run.x, &p.d)), || {
            format!("instance {seed}: black-box point infeasible")
        })?;
        let apx = proximity::apx_oracle(&p.w, &p.d, &c_pos, &frac(1, 20), seed).map_err(ctx)?;
        bullet(apx.satisfies(&p.w, &p.d, &c_pos), || format!("instance {seed}: oracle contract broken"))?;
    }
    Ok(format!("{total} instances: feasibility, optimality, black-box on all; transfer on {transfer}, fixing on {fixing} ({vacuous} unbounded under c2)"))
}

struct AugInstance {
    name: String,
    lp: LpInstance,
    start: Vec<Rational>,
}

/// Bounded random LPs with `m ≥ 2` rows and a known feasible start.
fn random_aug_instances(count: usize) -> Vec<AugInstance> {
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < count {
        let mut rng = ChaCha8Rng::seed_from_u64(5000 + seed);
        let m = rng.gen_range(2..=3);
        let n = rng.gen_range(m + 2..=6);
        let a = RatMatrix::from_vec(m, n, (0..m * n).map(|_| rat(rng.gen_range(-3..=3))).collect()).unwrap();
        let x: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..=4))).collect();
        let c: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-5..=5))).collect();
        let u: Vec<Option<Rational>> = (0..n).map(|_| rng.gen_bool(0.3).then(|| rat(rng.gen_range(4..=6)))).collect();
        let b = a.mul_vec(&x).unwrap();
        let lp = LpInstance::bounded(a, b, c, u).unwrap();
        if lp::solve(&lp).is_ok_and(|r| r.status == LpStatus::Optimal) {
            out.push(AugInstance { name: format!("random seed {}", 5000 + seed), lp, start: x });
        }
        seed += 1;
    }
    out
}

fn max_flow_instances(count: usize) -> Vec<AugInstance> {
    (0..count as u64)
        .map(|seed| {
            let nodes = 4 + seed as usize % 3;
            let net = flow_network(nodes, nodes + 3, 7000 + seed).unwrap();
            let lp = max_flow_lp(nodes, &net.arcs, &net.capacity, 0, nodes - 1).unwrap();
            let start = vec![rat(0); lp.num_vars()];
            AugInstance { name: format!("max-flow seed {}", 7000 + seed), lp, start }
        })
        .collect()
}

fn optimum(lp: &LpInstance) -> Result<Rational, String> {
    lp::solve(lp).map_err(|e| e.to_string())?.objective.ok_or_else(|| "no optimum".into())
}

fn steepest_audits() -> Outcome {
    let mut list = random_aug_instances(20);
    list.extend(max_flow_instances(10));
    let mut worst_ratio: f64 = 0.0;
    for inst in &list {
        let (engine, _) = Engine::from_lp(&inst.lp).map_err(|e| e.to_string())?;
        let (m, n) = (engine.matrix().rows(), engine.matrix().cols());
        let kappa = imbalance::imbalances(&Subspace::kernel_of(engine.matrix())).kappa;
        let cap = augment::default_cap(n, m, &kappa);
        let trace =
            augment::run(&inst.lp, Rule::SteepestDescent, cap, Some(inst.start.clone())).map_err(|e| format!("{}: {e}", inst.name))?;
        let report = audit_trace(&trace, &engine).map_err(|e| format!("{}: {e}", inst.name))?;
        let final_obj = trace.steps.last().map_or(&trace.start_objective, |s| &s.objective);
        let opt = optimum(&inst.lp)?;
        bullet(trace.status == TraceStatus::Optimal && *final_obj == opt, || {
            format!("{}: stopped at {final_obj} ({:?}), optimum {opt}", inst.name, trace.status)
        })?;
        bullet(report.epsilons.last().is_some_and(Zero::is_zero), || format!("{}: final epsilon nonzero", inst.name))?;
        let k = num::to_f64(&kappa);
        let shape = (n * n * m) as f64 * k * (k + n as f64).log2();
        worst_ratio = worst_ratio.max(trace.steps.len() as f64 / shape);
    }
    bullet(worst_ratio < 10.0, || format!("iterations / n^2 m kappa log2(kappa+n) reached {worst_ratio:.3}"))?;
    Ok(format!("{} instances (10 max-flow), all audited and optimal, worst iterations/shape ratio {worst_ratio:.4}", list.len()))
}

fn ratio_circuit() -> Outcome {
    let list = random_aug_instances(20);
    let mut steps = 0;
    for inst in &list {
        let opt = optimum(&inst.lp)?;
        let trace = augment::run(&inst.lp, Rule::RatioCircuit, 500, Some(inst.start.clone())).map_err(|e| format!("{}: {e}", inst.name))?;
        augment::ratio_decrease_holds(&trace, &opt, inst.lp.num_vars()).map_err(|e| format!("{}: {e}", inst.name))?;
        steps += trace.steps.len();
    }
    Ok(format!("{} runs, {steps} steps, every gap shrank by at least 1 - 1/n", list.len()))
}

fn guided() -> Outcome {
    let mut list = random_aug_instances(20);
    list.extend(max_flow_instances(5));
    let mut steps = 0;
    for inst in &list {
        let target = lp::solve(&inst.lp).map_err(|e| e.to_string())?.primal;
        let walk = guided_walk(&inst.lp, &inst.start, &target).map_err(|e| format!("{}: {e}", inst.name))?;
        let width = rat((inst.lp.num_vars() + inst.lp.constraints().2.iter().flatten().count()) as i64);
        bullet(walk.step_lengths.iter().all(|a| *a >= rat(1) && *a <= width), || {
            format!("{}: step lengths {:?}", inst.name, walk.step_lengths)
        })?;
        bullet(walk.nonbasic_mass.windows(2).all(|p| p[1] < p[0]), || format!("{}: nonbasic mass not decreasing", inst.name))?;
        bullet(walk.trace.last_point() == target.as_slice(), || format!("{}: target not reached", inst.name))?;
        steps += walk.step_lengths.len();
    }
    Ok(format!("{} walks, {steps} steps, lengths in [1, n], nonbasic mass strictly decreasing", list.len()))
}

fn graver_checks() -> Outcome {
    let (mut bases, mut skipped, mut ip_runs) = (0, Vec::new(), 0);
    for f in &fixtures() {
        let basis = match graver::graver_basis(&f.a) {
            Ok(b) => b,
            Err(Error::BoxTooLarge { .. }) => {
                skipped.push(f.name.clone());
                continue;
            }
            Err(e) => return Err(format!("{}: {e}", f.name)),
        };
        let s = graver::graver_sandwich(&f.a, &basis).map_err(|e| e.to_string())?;
        bullet(s.holds && s.contains_circuits && s.fractional_decompositions, || format!("{}: sandwich {s:?}", f.name))?;
        bases += 1;
        let n = f.n();
        for seed in 0..3u64 {
            let mut rng = ChaCha8Rng::seed_from_u64(9000 + seed);
            let x0: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(0..=3))).collect();
            let c: Vec<Rational> = (0..n).map(|_| rat(rng.gen_range(-3..=3))).collect();
            let b = f.a.mul_vec(&x0).unwrap();
            match graver::ip_proximity_check(&f.a, &b, &c) {
                Ok(r) => {
                    bullet(r.holds() && r.distance_inf <= r.bound, || format!("{}: IP proximity {r:?}", f.name))?;
                    ip_runs += 1;
                }
                Err(Error::Unbounded { .. } | Error::BoxTooLarge { .. }) => {}
                Err(e) => return Err(format!("{}: {e}", f.name)),
            }
        }
    }
    let note = if skipped.is_empty() { String::new() } else { format!(", box over 10^6 for {}", skipped.join(", ")) };
    Ok(format!("{bases} Graver bases sandwiched, {ip_runs} IP proximity checks{note}"))
}

fn integrality() -> Outcome {
    let list = fixtures();
    for (k, f) in list.iter().enumerate() {
        let r = graver::hk_check(&f.w, 50, 11_000 + k as u64).map_err(|e| format!("{}: {e}", f.name))?;
        bullet(r.holds(), || format!("{}: {r:?}", f.name))?;
    }
    let db = graver::hk_check(&Subspace::kernel_of(&dumbbell()), 50, 0).map_err(|e| e.to_string())?;
    let two = BigInt::from(2);
    bullet(db.witnesses.iter().any(|w| w.denominator == two) && db.witness_lcm == two, || {
        format!("A_db: witness denominators {:?}", db.witnesses.iter().map(|w| w.denominator.to_string()).collect::<Vec<_>>())
    })?;
    Ok(format!("{} subspaces x 50 shifts, fractionality divides kappa_dot; A_db vertex with denominator 2", list.len()))
}

fn conjecture() -> Outcome {
    let (mut subspaces, mut elements) = (0, 0);
    for f in fixtures().iter().filter(|f| f.n() <= 6) {
        let basis = graver::graver_basis(&f.a).map_err(|e| format!("{}: {e}", f.name))?;
        let search = ConjectureSearch::new(&f.w);
        for g in &basis.elements {
            let r = search.decompose(g).map_err(|e| format!("{}: {e}", f.name))?;
            if let ConjectureStatus::Violated = r.status {
                return Err(format!("{}: {g:?} has no decomposition ({} candidates searched)", f.name, r.searched));
            }
            bullet(r.verify(), || format!("{}: certificate for {g:?} fails verification", f.name))?;
            elements += 1;
        }
        subspaces += 1;
    }
    Ok(format!("{subspaces} subspaces, {elements} Graver elements decomposed with verified certificates"))
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("appendix example reproduced exactly", appendix),
        ("unimodular iff basis form is TU", unimodularity),
        ("duality and kappa <= kappa_bar <= kappa_dot", duality_and_chain),
        ("pairwise triangle inequality", triangle),
        ("sqrt(1+kappa^2) <= chi_bar <= n kappa", condition_numbers),
        ("kappa* dominates every cycle mean", cycle_mean),
        ("Hoffman proximity suite", hoffman_suite),
        ("steepest-descent audits", steepest_audits),
        ("ratio-circuit contraction", ratio_circuit),
        ("guided walk", guided),
        ("Graver sandwich and IP proximity", graver_checks),
        ("vertex fractionality divides kappa_dot", integrality),
        ("1/kappa_dot conformal decompositions", conjecture),
    ];
    let mut failed = 0;
    for (k, (title, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {:>2} ({title}): {detail} [{secs:.2}s]", k + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {:>2} ({title}): {detail} [{secs:.2}s]", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
