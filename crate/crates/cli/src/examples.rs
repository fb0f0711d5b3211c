//! The worked examples as a regression table.

use std::thread;

use crossprod::analyzer::{classify_s3, cyclic_analyze, factor_tensor, homogeneous_irreducibility, S3Case};
use crossprod::crossed::build_crossed_model;
use crossprod::fixtures;
use crossprod::numkit::Tolerance;
use crossprod::reps::{are_equivalent, is_irreducible, Rep};
use crossprod::structures::{S3_ETA, S3_TAU};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct Row {
    pub name: String,
    pub expected: String,
    pub computed: String,
    pub pass: bool,
}

type Outcome = crossprod::Result<String>;
type Runner = Box<dyn Fn(u64, &Tolerance) -> Outcome + Send + Sync>;

struct Case {
    name: String,
    expected: String,
    run: Runner,
}

fn case(name: impl Into<String>, expected: impl Into<String>, run: impl Fn(u64, &Tolerance) -> Outcome + Send + Sync + 'static) -> Case {
    Case { name: name.into(), expected: expected.into(), run: Box::new(run) }
}

/// `π ≃ π∘α_τ` and `π ≃ π∘α_η` for a representation of `C*(F₃)`.
fn translates(pi: &Rep, tol: &Tolerance) -> Outcome {
    let action = fixtures::s3_free_action();
    let tau = are_equivalent(pi, &pi.compose(&action, S3_TAU)?, tol)?;
    let eta = are_equivalent(pi, &pi.compose(&action, S3_ETA)?, tol)?;
    Ok(format!("tau_equivalent={} eta_equivalent={}", tau.equivalent, eta.equivalent))
}

fn cases() -> Vec<Case> {
    let mut cases: Vec<Case> = [2usize, 3, 5]
        .into_iter()
        .map(|q| {
            case(format!("quantum_mq q={q}"), format!("span={} irreducible=true", q * q), move |_, tol| {
                let model = build_crossed_model(&fixtures::quantum_action(q), tol)?;
                let irr = is_irreducible(&fixtures::quantum(q).to_rep(), tol)?;
                Ok(format!("span={} irreducible={irr}", model.span_dim))
            })
        })
        .collect();
    cases.extend([
        case("quantum_weyl", "lambda=V irreducible=true", |_, tol| {
            let psi = fixtures::homogeneous_weyl();
            let (u, v) = fixtures::weyl_pair();
            let lam = factor_tensor(psi.unitary(1), &u, 2)?;
            let phase = (0..2).flat_map(|i| (0..2).map(move |j| (i, j))).map(|(i, j)| lam.get(i, j) * v.get(i, j).conj()).sum::<crossprod::numkit::C64>() / 2.0;
            let is_v = phase.norm() > 0.0 && lam.dist(&v.scale(phase)) < 1e-8;
            let irr = homogeneous_irreducibility(&psi, 2, tol)?;
            Ok(format!("lambda={} irreducible={irr}", if is_v { "V" } else { "other" }))
        }),
        case("first_example", "tau_equivalent=true eta_equivalent=false", |_, tol| translates(&fixtures::first_example(), tol)),
        case("minimal", "irreducible=true case=Minimal", |seed, tol| {
            let pi = fixtures::minimal();
            let irr = is_irreducible(&pi.to_rep(), tol)?;
            Ok(format!("irreducible={irr} case={:?}", classify_s3(&pi, seed, tol)?.case))
        }),
        case("expermutation2", "tau_equivalent=false eta_equivalent=true", |_, tol| translates(&fixtures::expermutation2(), tol)),
        case("torus1_regular", "irreducible=true case=Regular6 translates_distinct=true", |seed, tol| {
            let pi = fixtures::torus1_regular();
            let irr = is_irreducible(&pi.to_rep(), tol)?;
            let cls = classify_s3(&pi, seed, tol)?;
            Ok(format!("irreducible={irr} case={:?} translates_distinct={}", cls.case, cls.structure.checks.orbit_disjoint))
        }),
        case("s3_multiplicity_two", "case=TauPair r=2 irreducible=true", |seed, tol| {
            let pi = fixtures::expermutation1();
            let irr = is_irreducible(&pi.to_rep(), tol)?;
            let cls = classify_s3(&pi, seed, tol)?;
            let r = if cls.case == S3Case::TauPair { cls.structure.multiplicity } else { 0 };
            Ok(format!("case={:?} r={r} irreducible={irr}", cls.case))
        }),
        case("cute_example", "irreducible=true minimal=false m=2 k=2 phi_count=2", |seed, tol| {
            let pi = fixtures::cute_example();
            let irr = is_irreducible(&pi.to_rep(), tol)?;
            let rep = cyclic_analyze(&pi, seed, tol)?;
            Ok(format!("irreducible={irr} minimal={} m={} k={} phi_count={}", rep.minimal, rep.m, rep.k, rep.fixed_pt_irreps.len()))
        }),
    ]);
    cases
}

/// Runs every example, one thread each.
pub fn run(seed: u64, tol: &Tolerance) -> Vec<Row> {
    let cases = cases();
    thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|c| {
                s.spawn(move || {
                    let computed = match (c.run)(seed, tol) {
                        Ok(s) => s,
                        Err(e) => format!("error: {e}"),
                    };
                    Row { name: c.name.clone(), pass: computed == c.expected, expected: c.expected.clone(), computed }
                })
            })
            .collect();
        handles
            .into_iter()
            .zip(&cases)
            .map(|(h, c)| {
                h.join().unwrap_or_else(|_| Row {
                    name: c.name.clone(),
                    expected: c.expected.clone(),
                    computed: "panicked".into(),
                    pass: false,
                })
            })
            .collect()
    })
}
