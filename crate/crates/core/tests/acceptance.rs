//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use std::time::Instant;

use common::*;
use mpc_core::analysis::{good_set_probability, good_set_probability_exact, random_vector, trial_rng};
use mpc_core::unit_mpc::DEFAULT_MODULE_CAP;
use mpc_core::{
    gs_params, tau_bound, AnyDecoder, BlockWord, DecodeOptions, DistanceInfo, Field, Polynomial, RingElement,
};
use num_rational::BigRational;
use rand::Rng;

// Tolerances: every criterion is exact (integer or rational equality, or a
// 100% success count); no floating-point slack is allowed anywhere.
const SEED: u64 = 20_240_601;
const MEMBERSHIP_TRIALS_MPC: usize = 1000;
const MEMBERSHIP_TRIALS_QC: usize = 500;
const ORACLE_TRIALS: usize = 200;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn gs_table() -> Outcome {
    let table = [
        ((15, 10, 4), 3),
        ((15, 4, 4), 7),
        ((15, 8, 2), 4),
        ((15, 5, 1), 5),
        ((15, 5, 8), 7),
        ((15, 13, 1), 1),
        ((15, 8, 1), 3),
    ];
    let bad: Vec<String> = table
        .iter()
        .filter_map(|&((m, k, v), want)| {
            let got = gs_params(m, k, v).map(|p| p.tau).ok();
            (got != Some(want)).then(|| format!("({m},{k},{v}) -> {got:?}, want {want}"))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "7/7 tuples".into() } else { bad.join("; ") })
}

fn tau_values() -> Outcome {
    let specs = [("mpc_30_14", 7), ("qc_30_8", 9), ("qc_30_5", 11), ("qc_30_5_list", 15), ("qc_30_21", 3)];
    let mut bad = Vec::new();
    for (name, want) in specs {
        let (_, dec) = load(name);
        let direct = tau_bound(dec.num_blocks(), &dec.taus());
        if dec.tau() != want || direct != want {
            bad.push(format!("{name}: {} / {direct}, want {want}", dec.tau()));
        }
    }
    outcome(bad.is_empty(), if bad.is_empty() { "7, 9, 11, 15, 3".into() } else { bad.join("; ") })
}

fn worked_example() -> Outcome {
    let (_, dec) = load("mpc_30_14");
    let f = dec.field().clone();
    let p1 = block(&f, 15, "a^2*x + a*x^5 + a^5*x^6 + a^14*x^13");
    let p2 = block(&f, 15, "a^5*x^2 + a^7*x^6 + a^8*x^10");
    let ell = block(&f, 15, "a^2*x + a*x^5 + a^5*x^6 + a^14*x^7 + a^10*x^13 + a^5*x^14");
    let received = BlockWord::new(vec![p1.clone(), p2.clone()]).unwrap();
    let out = match dec.list_decode(&received, DecodeOptions { first_hit: false, record_lists: true }) {
        Ok(o) => o,
        Err(e) => return outcome(false, e.to_string()),
    };
    let zero = BlockWord::zero(2, 15);
    let zb = vec![f.zero(); 15];
    let has_zero = out.contains(&zero) && zero.distance(&received) == 7;
    let t21 = out.tuple(&[2, 1]).unwrap();
    let lists21: Vec<_> = t21.stages.iter().map(|s| s.lists.clone().unwrap()).collect();
    let path21 = lists21.len() == 2
        && lists21[0].len() == 1
        && lists21[0][0].input == p2
        && lists21[0][0].list == vec![zb.clone()]
        && lists21[1][0].input == p1
        && lists21[1][0].list == vec![zb];
    let t12 = out.tuple(&[1, 2]).unwrap();
    let stage1 = &t12.stages[0].lists.as_ref().unwrap()[0];
    let branch_input: Vec<_> = p2.iter().zip(&ell).map(|(&a, &b)| f.sub(a, b)).collect();
    let path12 = stage1.list.contains(&ell)
        && t12.stages.len() == 2
        && t12.stages[1]
            .lists
            .as_ref()
            .unwrap()
            .iter()
            .any(|r| r.input == branch_input && r.list.is_empty());
    outcome(
        has_zero && path21 && path12,
        format!(
            "zero at distance 7: {has_zero}; (2,1): 0 then 0: {path21}; (1,2): stage-2 empty: {path12}; list size {}",
            out.codewords.len()
        ),
    )
}

fn good_set() -> Outcome {
    let half = BigRational::new(1.into(), 2.into());
    let a = good_set_probability(15, 2, 2, 7, &[3]);
    let b = good_set_probability_exact(15, 2, 2, 7, &[3, 7]);
    match (a, b) {
        (Ok(a), Ok(b)) => outcome(a == half && b == half, format!("closed form {a}, enumeration {b}")),
        (a, b) => outcome(false, format!("{a:?} {b:?}")),
    }
}

fn quasi_cyclic_distance() -> Outcome {
    let (spec, dec) = load("qc_30_5");
    let AnyDecoder::Unit(u) = &dec else { return outcome(false, "not a unit code") };
    let ds = match u.code().d_star(&spec.constituent_distances(), DEFAULT_MODULE_CAP) {
        Ok(d) => d,
        Err(e) => return outcome(false, e.to_string()),
    };
    let d = dec.to_linear_code().and_then(|c| c.min_distance_bruteforce(1 << 24));
    match d {
        Ok(d) => outcome(d == 24 && ds.value == 22, format!("brute force d = {d}, d* = {}", ds.value)),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn oracle_equality(name: &str, seed: u64, pivots: &mut usize) -> Result<usize, String> {
    let (_, dec) = load(name);
    let whole = dec.to_linear_code().map_err(|e| e.to_string())?;
    let tau = dec.tau();
    let mut mismatches = 0;
    for t in 0..ORACLE_TRIALS {
        let mut rng = trial_rng(seed, t as u64);
        let c = dec.encode_flat(&random_vector(dec.field(), dec.dimension(), &mut rng)).unwrap();
        let w = rng.gen_range(0..=tau);
        let e = random_error(&dec, w, &mut rng);
        let p = c.add(dec.field(), &e);
        let out = dec.list_decode(&p, DecodeOptions::default()).map_err(|e| e.to_string())?;
        *pivots += out.pivots_checked;
        let got: Vec<_> = out.codewords.iter().map(BlockWord::to_flat).collect();
        let want = whole.list_decode_bruteforce(&p.to_flat(), tau, 1 << 20).map_err(|e| e.to_string())?;
        let mut got_sorted = got.clone();
        got_sorted.sort();
        if got_sorted != want {
            mismatches += 1;
        }
    }
    Ok(mismatches)
}

fn oracle(pivots: &mut usize) -> Outcome {
    let a = oracle_equality("gf8_mpc", SEED, pivots);
    let b = oracle_equality("gf8_unit", SEED + 1, pivots);
    match (a, b) {
        (Ok(a), Ok(b)) => outcome(
            a == 0 && b == 0,
            format!("mismatches: scalar {a}/{ORACLE_TRIALS}, unit {b}/{ORACLE_TRIALS}"),
        ),
        (a, b) => outcome(false, format!("{a:?} {b:?}")),
    }
}

/// Counts trials where the sent word is in the list (or, with `exact`, is
/// the whole list) at error weight exactly `tau`.
fn membership_run(name: &str, trials: usize, exact: bool, pivots: &mut usize) -> Result<(usize, usize), String> {
    let (spec, dec) = load(name);
    let dec = if exact {
        let d = dec.distance_info(&spec).map_err(|e| e.to_string())?;
        let DistanceInfo::Declared(d) = d else { return Err(format!("{name}: no declared distance")) };
        let t = (d - 1) / 2;
        if dec.tau_bound() < t {
            return Err(format!("{name}: bound {} below {t}", dec.tau_bound()));
        }
        dec.with_tau(t)
    } else {
        dec
    };
    let tau = dec.tau();
    let r = mpc_core::simulate(&dec, tau, trials, SEED, DecodeOptions::default()).map_err(|e| e.to_string())?;
    *pivots += r.pivots_checked;
    Ok((if exact { r.exact } else { r.member }, tau))
}

fn membership(pivots: &mut usize) -> Outcome {
    let runs = [
        ("mpc_30_14", MEMBERSHIP_TRIALS_MPC, false),
        ("qc_30_8", MEMBERSHIP_TRIALS_QC, true),
        ("qc_30_5", MEMBERSHIP_TRIALS_QC, true),
        ("qc_30_21", MEMBERSHIP_TRIALS_QC, true),
    ];
    let mut ok = true;
    let mut parts = Vec::new();
    for (name, trials, exact) in runs {
        match membership_run(name, trials, exact, pivots) {
            Ok((hits, tau)) => {
                ok &= hits == trials;
                parts.push(format!("{name} tau={tau} {hits}/{trials}"));
            }
            Err(e) => {
                ok = false;
                parts.push(e);
            }
        }
    }
    outcome(ok, parts.join(", "))
}

fn hygiene(pivots: usize) -> Outcome {
    let mut violations = 0;
    for (p, m) in [(2, 3), (2, 4), (3, 2), (5, 1), (7, 1)] {
        let f = Field::gf(p, m).unwrap();
        let els: Vec<_> = f.elements().collect();
        for &a in &els {
            if f.add(a, f.neg(a)) != f.zero() || f.mul(a, f.one()) != a {
                violations += 1;
            }
            if !a.is_zero() && f.mul(a, f.inv(a).unwrap()) != f.one() {
                violations += 1;
            }
            for &b in &els {
                if f.mul(a, b) != f.mul(b, a) || f.add(a, b) != f.add(b, a) {
                    violations += 1;
                }
                for &c in els.iter().step_by(3) {
                    if f.mul(a, f.add(b, c)) != f.add(f.mul(a, b), f.mul(a, c))
                        || f.mul(f.mul(a, b), c) != f.mul(a, f.mul(b, c))
                    {
                        violations += 1;
                    }
                }
            }
        }
    }
    let f = Field::gf(2, 4).unwrap();
    let mut rng = trial_rng(SEED, 0);
    let mut units = 0;
    for _ in 0..300 {
        let a = Polynomial::new(&f, random_vector(&f, rng.gen_range(1..12), &mut rng));
        let b = Polynomial::new(&f, random_vector(&f, rng.gen_range(1..12), &mut rng));
        if a.is_zero() && b.is_zero() {
            continue;
        }
        let (g, s, t) = Polynomial::gcd_ext(&a, &b).unwrap();
        if s.mul(&a).add(&t.mul(&b)) != g {
            violations += 1;
        }
        let r = RingElement::new(&a, 15);
        if r.is_unit() {
            units += 1;
            let inv = r.inv().unwrap();
            if !r.mul(&inv).unwrap().sub(&RingElement::one(&f, 15)).unwrap().is_zero() {
                violations += 1;
            }
        } else if r.inv().is_ok() {
            violations += 1;
        }
    }
    outcome(
        violations == 0 && pivots > 0 && units > 0,
        format!("{violations} violations; {pivots} decoder pivots checked, all invertible; {units} ring inverses verified"),
    )
}

fn main() {
    let mut pivots = 0;
    let mut failed = 0;
    let mut report = |n: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        let o = f();
        let secs = start.elapsed().as_secs_f64();
        println!("{} {n} {name}: {} [{secs:.1}s]", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    };
    report(1, "gs-parameter-table", &mut gs_table);
    report(2, "tau-bound", &mut tau_values);
    report(3, "worked-example", &mut worked_example);
    report(4, "good-set-probability", &mut good_set);
    report(5, "quasi-cyclic-distance", &mut quasi_cyclic_distance);
    report(6, "oracle-set-equality", &mut || oracle(&mut pivots));
    report(7, "membership", &mut || membership(&mut pivots));
    let total = pivots;
    report(8, "numerical-hygiene", &mut || hygiene(total));
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
