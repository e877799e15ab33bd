use std::collections::BTreeMap;
use std::time::Instant;

use qjoin_core::classic::{
    build_join, build_join_prime, check_free, check_map_eq6, iterated_join_sphere_census, parse_grid, FiniteGSpace,
};
use qjoin_core::corep::{clutching_inverse_check, fundamental_u, verify_corep, ComoduleVector, MatrixCorep};
use qjoin_core::hopfalg::{
    classical_limit_check, corrupted_su_q2_presentation, finite_group_algebra, hopf_axiom_suite,
    normal_form_confluence_check, su_q2, su_q2_presentation, HopfElement,
};
use qjoin_core::index::{certified_index, parse_rational, relation_residuals, TorusHalf};
use qjoin_core::join::{
    ellwood_freeness_check, milnor_idempotent, random_x_pair, verify_x_equivalence, RegularCoaction, TrivialCoaction,
};
use qjoin_core::FiniteGroup;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::config::{RunConfig, Suite};
use crate::report::{Check, Report};
use crate::CliError;

/// Degree bound for random Hopf algebra samples.
const DEGREE: usize = 6;
/// Residual tolerance for the represented relations.
const RESIDUAL_TOL: f64 = 1e-12;

/// Runs the selected suites in parallel and assembles the report in a
/// fixed order.
pub fn run_suite(config: &RunConfig) -> Result<Report, CliError> {
    config.validate()?;
    let suites = config.suite.expand();
    let results: Vec<(Suite, Vec<Check>, f64)> = suites
        .par_iter()
        .map(|&s| {
            let start = Instant::now();
            let checks = run_one(s, config);
            (s, checks, start.elapsed().as_secs_f64())
        })
        .collect();
    let mut checks = Vec::new();
    let mut timings = BTreeMap::new();
    for (s, c, t) in results {
        checks.extend(c);
        timings.insert(s.name().to_string(), t);
    }
    if checks.is_empty() {
        return Err(CliError::NoChecks);
    }
    Ok(Report { config: config.clone(), checks, timings })
}

fn run_one(suite: Suite, config: &RunConfig) -> Vec<Check> {
    let seed = config.suite_seed(suite);
    match suite {
        Suite::Hopf => hopf(config.samples, seed),
        Suite::Corep => corep(config.samples, seed),
        Suite::Join => join(config.samples, seed),
        Suite::Idempotent => idempotent(),
        Suite::Index => index(config),
        Suite::Classic => classic(config),
        Suite::All => unreachable!("expanded by the caller"),
    }
}

fn hopf(samples: usize, seed: u64) -> Vec<Check> {
    const S: &str = "hopf";
    if samples == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    match hopf_axiom_suite(&su_q2(), samples, DEGREE, seed) {
        Ok(rep) => {
            for a in rep.axioms {
                let detail = json!({"samples": samples, "degree": DEGREE, "seed": seed, "failed": a.failed});
                out.push(Check::new(S, a.name, a.failed == 0, detail).with_counterexample(a.counterexample));
            }
        }
        Err(e) => out.push(Check::error(S, "axioms", e)),
    }
    out.push(match normal_form_confluence_check(&su_q2_presentation(), samples, 8, seed) {
        Ok(rep) => {
            let cx = rep.divergences.first().map(|d| json!(d));
            let detail = json!({"trials": rep.trials, "max_len": rep.max_len, "critical_pairs": rep.critical_pairs, "divergences": rep.divergences.len()});
            Check::new(S, "confluence", rep.is_confluent(), detail).with_counterexample(cx)
        }
        Err(e) => Check::error(S, "confluence", e),
    });
    out.push(match normal_form_confluence_check(&corrupted_su_q2_presentation(), samples, 8, seed) {
        Ok(rep) => Check::new(
            S,
            "corrupted presentation rejected",
            !rep.is_confluent(),
            json!({"divergences": rep.divergences.len()}),
        ),
        Err(e) => Check::error(S, "corrupted presentation rejected", e),
    });
    for g in FiniteGroup::all_up_to_order_6() {
        let name = format!("C({}) axioms", g.name());
        out.push(match finite_group_algebra(&g).and_then(|h| hopf_axiom_suite(&h, samples.div_ceil(10), 3, seed)) {
            Ok(rep) => {
                let cx = rep.axioms.iter().find_map(|a| a.counterexample.clone());
                Check::new(S, name, rep.passed(), json!({"samples": rep.samples})).with_counterexample(cx)
            }
            Err(e) => Check::error(S, name, e),
        });
    }
    out.push(match classical_limit_check(&su_q2(), samples, 4, seed) {
        Ok(rep) => {
            Check::new(S, "classical limit", rep.passed(), json!({"samples": rep.samples, "vanishing": rep.vanishing}))
                .with_counterexample(rep.counterexample)
        }
        Err(e) => Check::error(S, "classical limit", e),
    });
    out
}

fn fundamental_comodule() -> Result<ComoduleVector, String> {
    let u = fundamental_u(&su_q2()).map_err(|e| e.to_string())?;
    ComoduleVector::new(u).map_err(|e| e.to_string())
}

fn corep(samples: usize, seed: u64) -> Vec<Check> {
    const S: &str = "corep";
    let mut out = Vec::new();
    match fundamental_u(&su_q2()).and_then(|u| verify_corep(&u)) {
        Ok(rep) => {
            for c in rep.checks {
                let cx = c.counterexample.map(|x| json!(x));
                out.push(Check::new(S, c.name, c.passed, json!({"dim": rep.dim})).with_counterexample(cx));
            }
        }
        Err(e) => out.push(Check::error(S, "verify", e)),
    }
    if samples > 0 {
        let name = "clutching inverse";
        out.push(match fundamental_comodule() {
            Ok(v) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let alg = su_q2();
                let xs: Vec<Vec<HopfElement>> = (0..samples)
                    .map(|_| (0..v.dim()).map(|_| alg.random_element(&mut rng, 4, 2)).collect())
                    .collect();
                match clutching_inverse_check(&v, &xs) {
                    Ok(rep) => Check::new(
                        S,
                        name,
                        rep.passed(),
                        json!({"samples": rep.samples, "matrix_identity": rep.matrix_identity, "failures": rep.failures.len()}),
                    )
                    .with_counterexample(rep.failures.first().cloned()),
                    Err(e) => Check::error(S, name, e),
                }
            }
            Err(e) => Check::error(S, name, e),
        });
    }
    out
}

fn join(samples: usize, seed: u64) -> Vec<Check> {
    const S: &str = "join";
    let mut out = Vec::new();
    if samples > 0 {
        let name = "chi gluing <=> Lambda gluing";
        out.push(match fundamental_comodule() {
            Ok(v) => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut glued = 0usize;
                let mut mismatch = None;
                let mut error = None;
                for i in 0..samples {
                    let r = random_x_pair(&v, &mut rng, 3, i % 2 == 0)
                        .and_then(|(b1, b2)| verify_x_equivalence(&v, &b1, &b2).map(|x| (x, b1, b2)));
                    match r {
                        Ok((x, b1, b2)) => {
                            glued += x.chi_form as usize;
                            if !x.equivalent() && mismatch.is_none() {
                                mismatch = Some(json!({
                                    "b1": b1.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                                    "b2": b2.iter().map(|p| p.to_json()).collect::<Vec<_>>(),
                                    "chi_form": x.chi_form,
                                    "lambda_form": x.lambda_form,
                                }));
                            }
                        }
                        Err(e) => {
                            error = Some(e.to_string());
                            break;
                        }
                    }
                }
                match error {
                    Some(e) => Check::error(S, name, e),
                    None => Check::new(S, name, mismatch.is_none(), json!({"samples": samples, "glued": glued}))
                        .with_counterexample(mismatch),
                }
            }
            Err(e) => Check::error(S, name, e),
        });
    }
    for g in FiniteGroup::all_up_to_order_6() {
        let h = match finite_group_algebra(&g) {
            Ok(h) => h,
            Err(e) => {
                out.push(Check::error(S, format!("freeness C({})", g.name()), e));
                continue;
            }
        };
        let name = format!("regular coaction on C({}) free", g.name());
        out.push(match ellwood_freeness_check(&RegularCoaction::new(&h)) {
            Ok(r) => Check::new(S, name, r.free, json!(r)),
            Err(e) => Check::error(S, name, e),
        });
        // for the trivial group the trivial coaction is Δ itself
        let expect_free = g.order() == 1;
        let name = format!("trivial coaction on C({}) {}", g.name(), if expect_free { "free" } else { "not free" });
        out.push(match ellwood_freeness_check(&TrivialCoaction::new(&h, &h)) {
            Ok(r) => Check::new(S, name, r.free == expect_free, json!(r)),
            Err(e) => Check::error(S, name, e),
        });
    }
    out
}

fn idempotent() -> Vec<Check> {
    const S: &str = "idempotent";
    let p = match fundamental_u(&su_q2())
        .map_err(|e| e.to_string())
        .and_then(|u: MatrixCorep| milnor_idempotent(&u.adjoint()).map_err(|e| e.to_string()))
    {
        Ok(p) => p,
        Err(e) => return vec![Check::error(S, "construct p", e)],
    };
    let mut out = Vec::new();
    out.push(match p.is_idempotent() {
        Ok(ok) => Check::new(S, "p^2 = p", ok, json!({"size": p.size()})),
        Err(e) => Check::error(S, "p^2 = p", e),
    });
    out.push(Check::new(S, "p* = p", p.is_self_adjoint(), json!({"size": p.size()})));
    out.push(match p.has_scalar_endpoints() {
        Ok(ok) => Check::new(S, "scalar endpoint fibers", ok, json!({"size": p.size()})),
        Err(e) => Check::error(S, "scalar endpoint fibers", e),
    });
    out
}

fn index(config: &RunConfig) -> Vec<Check> {
    const S: &str = "index";
    let q0 = match parse_rational(&config.q) {
        Ok(q) => q,
        Err(e) => return vec![Check::error(S, "parameters", e)],
    };
    let precision = match config.precision() {
        Ok(p) => p,
        Err(e) => return vec![Check::error(S, "parameters", e)],
    };
    let u = match fundamental_u(&su_q2()) {
        Ok(u) => u,
        Err(e) => return vec![Check::error(S, "fundamental U", e)],
    };
    let mut out = Vec::new();
    let run =
        |m: &MatrixCorep| certified_index(m, &q0, config.n, config.k, TorusHalf::Negative, config.threshold, precision);
    let (rs, ru) = rayon::join(|| run(&u.adjoint()), || run(&u));
    let mut indices = Vec::new();
    for (name, r, expected) in [("index(U*) = -1", rs, -1), ("index(U) = +1", ru, 1)] {
        out.push(match r {
            Ok(res) => {
                indices.push(res.index);
                Check::new(S, name, res.index == expected && res.certified(), res.to_json())
            }
            Err(e) => Check::error(S, name, e),
        });
    }
    if indices.len() == 2 {
        out.push(Check::new(
            S,
            "index(U*) + index(U) = 0",
            indices[0] + indices[1] == 0,
            json!({"sum": indices[0] + indices[1]}),
        ));
    }
    // residuals only need a moderate box
    let (rn, rk) = (config.n.min(24), config.k.min(24));
    match relation_residuals(&su_q2(), &q0, rn, rk) {
        Ok(res) => {
            for r in res {
                let name = format!("residual {}", r.relation);
                out.push(Check::new(S, name, r.max <= RESIDUAL_TOL, json!({"max": r.max, "n": rn, "k": rk})));
            }
        }
        Err(e) => out.push(Check::error(S, "residuals", e)),
    }
    out
}

fn classic(config: &RunConfig) -> Vec<Check> {
    const S: &str = "classic";
    let grid = match parse_grid(&config.grid) {
        Ok(g) => g,
        Err(e) => return vec![Check::error(S, "grid", e)],
    };
    let mut out = Vec::new();
    for g in FiniteGroup::all_up_to_order_6() {
        let x = FiniteGSpace::regular(&g);
        let name = format!("identification map {}", g.name());
        out.push(match check_map_eq6(&x, &grid) {
            Ok(r) => Check::new(S, name, r.passed(), r.to_json()),
            Err(e) => Check::error(S, name, e),
        });
        let name = format!("join free {}", g.name());
        out.push(match (build_join(&x, &x, &grid), build_join_prime(&x, &grid)) {
            (Ok(j), Ok(p)) => {
                let ok = check_free(&j) && check_free(&p) && j.is_idempotent() && p.is_idempotent();
                Check::new(S, name, ok, json!({"join": j.layer_counts(), "joinprime": p.layer_counts()}))
            }
            (Err(e), _) | (_, Err(e)) => Check::error(S, name, e),
        });
    }
    out.push(match iterated_join_sphere_census(3, &grid) {
        Ok(r) => Check::new(S, "iterated Z2 joins free (n <= 3)", r.all_free(), json!(r)),
        Err(e) => Check::error(S, "iterated Z2 joins free (n <= 3)", e),
    });
    out
}
