//! End-to-end acceptance checks. Runs as a plain binary so the verdict lines
//! show up in the test output; exits non-zero if any check fails.

mod common;

use std::time::Instant;

use autarky::brute::{enumerate_autarkies, AdversarialOracle, AutarkyCatalog, DEFAULT_LIMIT};
use autarky::oracle::Oracle;
use autarky::translation::{encode_at_least, lift_partial, lift_total, project};
use autarky::{
    algo_a0, algo_a01, algo_a1, algo_abs, extend_quasi_maximal, gen_family, scheme_s01_with,
    translate_full, AlgorithmResult, ClauseSet, Engine, InternalOracle, PartialAssignment,
    S01Options, Steering, Var, VarSet,
};

use common::{a01_bound, a0_bound, a1_bound, abs_bound, family_corpus, full_corpus, random_corpus};

type Verdict = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

#[derive(Clone, Copy, Debug)]
enum Policy {
    Internal,
    Adversarial,
}

fn run_all(f: &ClauseSet, policy: Policy) -> Result<Vec<(&'static str, AlgorithmResult)>, String> {
    fn go<O: Oracle>(f: &ClauseSet, mk: impl Fn() -> O) -> Result<Vec<(&'static str, AlgorithmResult)>, String> {
        let e = |e: autarky::AlgorithmError| e.to_string();
        Ok(vec![
            ("a0", algo_a0(f, mk()).map_err(e)?),
            ("a1", algo_a1(f, mk()).map_err(e)?),
            ("abs", algo_abs(f, mk()).map_err(e)?),
            ("a01", algo_a01(f, mk()).map_err(e)?),
        ])
    }
    match policy {
        Policy::Internal => go(f, InternalOracle::default),
        Policy::Adversarial => go(f, AdversarialOracle::default),
    }
}

fn brute_force_equivalence() -> Verdict {
    let corpus = full_corpus();
    let mut checked = 0;
    for inst in &corpus {
        let f = &inst.formula;
        let cat = enumerate_autarkies(f, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        for (name, mut r) in run_all(f, Policy::Internal)? {
            if name == "a0" {
                r.autarky = extend_quasi_maximal(&r.autarky, f).map_err(|e| e.to_string())?;
            }
            ensure(r.autarky.vars() == cat.largest_var_set(), || {
                format!("{name} on {}: variable set differs", inst.name)
            })?;
            ensure(&r.autarky.apply(f) == cat.lean_kernel(), || {
                format!("{name} on {}: lean kernel differs", inst.name)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} runs on {} instances", corpus.len()))
}

fn translation_sizes() -> Verdict {
    let (mut checked, mut collided) = (0, 0);
    for i in 0..200u64 {
        let family = ["random-3cnf", "mixed", "units", "units-pairs"][(i % 4) as usize];
        let f = gen_family(family, 1 + (i % 12) as u32, i).unwrap();
        let t = translate_full(&f);
        if t.collision {
            collided += 1;
            continue;
        }
        ensure(t.clauses.n() == 3 * f.n(), || format!("instance {i}: n(t(F)) = {}", t.clauses.n()))?;
        ensure(t.clauses.c() == f.ell() + 4 * f.n(), || {
            format!("instance {i}: c(t(F)) = {}", t.clauses.c())
        })?;
        checked += 1;
    }
    Ok(format!("{checked} instances exact, {collided} with collisions skipped"))
}

fn all_partial_assignments(vars: &[Var]) -> Vec<PartialAssignment> {
    let mut out = vec![PartialAssignment::new()];
    for &v in vars {
        let mut next = Vec::new();
        for phi in &out {
            next.push(phi.clone());
            for b in [false, true] {
                let mut p = phi.clone();
                p.set(v, b);
                next.push(p);
            }
        }
        out = next;
    }
    out
}

fn round_trips() -> Verdict {
    let map = autarky::VarMap::new(4);
    let mut checked = 0;
    for k in 0..=4u32 {
        let vars: Vec<Var> = (1..=k).map(Var::new).collect();
        let window: VarSet = vars.iter().copied().collect();
        for phi in all_partial_assignments(&vars) {
            let total = lift_total(&phi, &window, &map).map_err(|e| e.to_string())?;
            let partial = lift_partial(&phi, &map).map_err(|e| e.to_string())?;
            ensure(project(&total, &map).ok() == Some(phi.clone()), || format!("total lift of {phi}"))?;
            ensure(project(&partial, &map).ok() == Some(phi.clone()), || format!("partial lift of {phi}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} assignments"))
}

fn lifted_autarkies() -> Verdict {
    let small: Vec<_> = family_corpus()
        .into_iter()
        .chain(random_corpus(500))
        .filter(|i| i.formula.n() <= 4)
        .collect();
    let (mut lifts, mut models) = (0, 0);
    for inst in &small {
        let f = &inst.formula;
        let t = translate_full(f);
        let cat = enumerate_autarkies(f, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        for phi in cat.autarkies() {
            let lifted = lift_total(&phi, &f.vars(), &t.varmap).map_err(|e| e.to_string())?;
            ensure(lifted.satisfies(&t.clauses), || format!("{}: lift of {phi}", inst.name))?;
            lifts += 1;
        }
        let mut steered = t.clauses.clone();
        steered.extend(autarky::SteeringClauses::full(&f.vars()).into_clauses());
        for seed in 1..=10 {
            for target in [&t.clauses, &steered] {
                if let Some(model) = Engine::new(seed).solve_sat(target) {
                    let psi = project(&model, &t.varmap).map_err(|e| e.to_string())?;
                    ensure(psi.is_autarky_for(f) && psi.vars().is_subset(&f.vars()), || {
                        format!("{}: projection {psi} (seed {seed})", inst.name)
                    })?;
                    models += 1;
                }
            }
        }
    }
    Ok(format!("{lifts} lifted autarkies, {models} projected models, {} instances", small.len()))
}

fn core_soundness() -> Verdict {
    let mut answers = 0;
    for inst in full_corpus() {
        let f = &inst.formula;
        let cat = enumerate_autarkies(f, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        let largest = cat.largest_var_set();
        for policy in [Policy::Internal, Policy::Adversarial] {
            let mut runs = run_all(f, policy)?;
            for steering in [Steering::Units, Steering::Full] {
                let p = steering.clauses(&f.vars());
                let r = match policy {
                    Policy::Internal => scheme_s01_with(f, &p, InternalOracle::default(), S01Options::default()),
                    Policy::Adversarial => scheme_s01_with(f, &p, AdversarialOracle::default(), S01Options::default()),
                }
                .map_err(|e| e.to_string())?;
                runs.push(("s01", r.0));
            }
            for (name, r) in runs {
                for excluded in &r.stats.excluded {
                    ensure(excluded.is_disjoint(&largest), || {
                        format!("{name} on {} ({policy:?}): excluded {excluded:?}", inst.name)
                    })?;
                    answers += 1;
                }
            }
        }
    }
    Ok(format!("{answers} UNSAT answers"))
}

fn call_bounds() -> Verdict {
    let mut runs = 0;
    for inst in full_corpus() {
        let f = &inst.formula;
        let cat: AutarkyCatalog = enumerate_autarkies(f, DEFAULT_LIMIT).map_err(|e| e.to_string())?;
        for policy in [Policy::Internal, Policy::Adversarial] {
            for (name, r) in run_all(f, policy)? {
                let bound = match name {
                    "a0" => a0_bound(f, &cat),
                    "a1" => a1_bound(f, &cat),
                    "abs" => abs_bound(f),
                    _ => a01_bound(f, &cat),
                };
                let calls = r.stats.total_calls();
                ensure(calls <= bound, || {
                    format!("{name} on {} ({policy:?}): {calls} calls, bound {bound}", inst.name)
                })?;
                runs += 1;
            }
        }
    }
    Ok(format!("{runs} runs within bounds"))
}

fn worst_case_traces() -> Verdict {
    let oracle = || AdversarialOracle::with_limit(25);
    let calls = |r: Result<AlgorithmResult, autarky::AlgorithmError>| -> Result<usize, String> {
        r.map(|r| r.stats.total_calls()).map_err(|e| e.to_string())
    };
    for n in [1u32, 4, 9, 16, 25] {
        let s = autarky::algorithms::ceil_sqrt(n as usize);
        let pairs = gen_family("units-pairs", n, 0).unwrap();
        let units = gen_family("units", n, 0).unwrap();
        let expect = |what: &str, got: usize, want: usize| {
            ensure(got == want, || format!("{what}, n = {n}: {got} calls, expected {want}"))
        };
        expect("a0 on units-pairs", calls(algo_a0(&pairs, oracle()))?, n as usize)?;
        expect("a1 on units-pairs", calls(algo_a1(&pairs, oracle()))?, 1)?;
        expect("a1 on units", calls(algo_a1(&units, oracle()))?, n as usize)?;
        let abs = calls(algo_abs(&units, oracle()))?;
        ensure(abs <= abs_bound(&units), || format!("abs on units, n = {n}: {abs} calls"))?;
        expect("a01 on units-pairs", calls(algo_a01(&pairs, oracle()))?, s)?;
        expect("a01 on units", calls(algo_a01(&units, oracle()))?, s)?;
    }
    Ok("n in {1, 4, 9, 16, 25}".into())
}

fn scheme_invariant() -> Verdict {
    let options = S01Options {
        audit: true,
        ..S01Options::default()
    };
    let mut rounds = 0;
    for (i, inst) in random_corpus(100).into_iter().enumerate() {
        let f = &inst.formula;
        for steering in [Steering::Sqrt, Steering::Units, Steering::Full] {
            let p = steering.clauses(&f.vars());
            let audits = if i % 2 == 0 {
                scheme_s01_with(f, &p, InternalOracle::new(i as u64), options)
            } else {
                scheme_s01_with(f, &p, AdversarialOracle::default(), options)
            }
            .map_err(|e| e.to_string())?
            .1;
            for (k, a) in audits.iter().enumerate() {
                ensure(a.translation_matches(), || {
                    format!(
                        "{} ({steering:?}) round {}: {} unexpected, {} missing clauses",
                        inst.name,
                        k + 1,
                        a.unexpected.c(),
                        a.missing.c()
                    )
                })?;
                ensure(a.steering_matches, || {
                    format!("{} ({steering:?}) round {}: steering clauses", inst.name, k + 1)
                })?;
                rounds += 1;
            }
        }
    }
    Ok(format!("{rounds} rounds on 100 instances"))
}

fn cardinality_semantics() -> Verdict {
    let engine = Engine::default();
    let mut cases = 0;
    for size in 0..=6u32 {
        let map = autarky::VarMap::new(size);
        let vars: VarSet = (1..=size).map(Var::new).collect();
        for bound in 0..=size as usize {
            let enc = encode_at_least(&vars, bound, &map, map.cardinality_base()).map_err(|e| e.to_string())?;
            for bits in 0u32..1 << size {
                let alpha: PartialAssignment = (1..=size).map(|i| (Var::new(i), bits >> (i - 1) & 1 == 1)).collect();
                let residual = alpha.apply(&enc.clauses);
                let extends = !residual.has_empty_clause() && engine.solve_decision(&residual);
                let wanted = bits.count_ones() as usize >= bound;
                ensure(extends == wanted, || {
                    format!("|V| = {size}, m = {bound}: {alpha} extends = {extends}")
                })?;
                cases += 1;
            }
        }
    }
    Ok(format!("{cases} assignments"))
}

type Criterion = (&'static str, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 9] = [
        ("brute-force equivalence", brute_force_equivalence),
        ("translation size formulas", translation_sizes),
        ("lift/projection round trips", round_trips),
        ("lifts and projections of autarkies", lifted_autarkies),
        ("core soundness", core_soundness),
        ("call-count bounds", call_bounds),
        ("worst-case traces", worst_case_traces),
        ("scheme invariant", scheme_invariant),
        ("cardinality encoding semantics", cardinality_semantics),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let verdict = check();
        let secs = start.elapsed().as_secs_f64();
        match verdict {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
