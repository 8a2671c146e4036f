//! Replays the bundled codes end to end and compares every computed value
//! with `specs/examples.expected`.

use std::process::ExitCode;

use mpc_core::analysis::{any_good_tuple_probability, good_set_probability, good_set_probability_exact};
use mpc_core::unit_mpc::DEFAULT_MODULE_CAP;
use mpc_core::{gs_params, simulate, AnyDecoder, BlockWord, CodeSpec, DecodeOptions, DistanceInfo, RingElement};

const SPECS: &[(&str, &str)] = &[
    ("mpc_30_14", include_str!("../../../specs/mpc_30_14.spec")),
    ("qc_30_8", include_str!("../../../specs/qc_30_8.spec")),
    ("qc_30_5", include_str!("../../../specs/qc_30_5.spec")),
    ("qc_30_5_list", include_str!("../../../specs/qc_30_5_list.spec")),
    ("qc_30_21", include_str!("../../../specs/qc_30_21.spec")),
    ("gf8_mpc", include_str!("../../../specs/gf8_mpc.spec")),
    ("gf8_unit", include_str!("../../../specs/gf8_unit.spec")),
];

const EXPECTED: &str = include_str!("../../../specs/examples.expected");

const SIM_TRIALS: usize = 100;
const SIM_SEED: u64 = 7;

fn load(name: &str) -> mpc_core::Result<(CodeSpec, AnyDecoder)> {
    let text = SPECS.iter().find(|(n, _)| *n == name).expect("bundled spec").1;
    let spec = CodeSpec::parse(text)?;
    let dec = spec.build()?;
    Ok((spec, dec))
}

fn compute() -> mpc_core::Result<Vec<String>> {
    let mut out = Vec::new();
    for (m, k, v) in [(15, 10, 4), (15, 4, 4), (15, 8, 2), (15, 5, 1), (15, 5, 8), (15, 13, 1), (15, 8, 1)] {
        out.push(format!("gs-params {m} {k} {v}: tau={}", gs_params(m, k, v)?.tau));
    }
    for (name, _) in SPECS {
        let (spec, dec) = load(name)?;
        out.push(format!("{name}: n={} k={} taus={:?} tau={}", dec.length(), dec.dimension(), dec.taus(), dec.tau()));
        match dec.distance_info(&spec)? {
            DistanceInfo::NestedFormula(d) => out.push(format!("{name}: distance={d} (nested formula)")),
            DistanceInfo::Declared(d) => out.push(format!("{name}: distance={d} (declared)")),
            DistanceInfo::LowerBound(_) => {}
        }
        if let AnyDecoder::Unit(u) = &dec {
            let ds = u.code().d_star(&spec.constituent_distances(), DEFAULT_MODULE_CAP)?;
            out.push(format!("{name}: d*={} D={:?}", ds.value, ds.row_distances));
        }
    }
    let (_, dec) = load("qc_30_5")?;
    out.push(format!("qc_30_5: brute-force distance={}", dec.to_linear_code()?.min_distance_bruteforce(1 << 24)?));

    let (_, dec) = load("mpc_30_14")?;
    let f = dec.field().clone();
    let block = |t: &str| RingElement::parse(&f, 15, t).map(RingElement::into_coeffs);
    let received = BlockWord::new(vec![
        block("a^2*x + a*x^5 + a^5*x^6 + a^14*x^13")?,
        block("a^5*x^2 + a^7*x^6 + a^8*x^10")?,
    ])?;
    let res = dec.list_decode(&received, DecodeOptions::default())?;
    let zero = BlockWord::zero(2, 15);
    out.push(format!(
        "worked example: list size={} contains zero={} distance={}",
        res.codewords.len(),
        res.contains(&zero),
        zero.distance(&received)
    ));
    for t in &res.trace {
        let lists: Vec<_> = t.stages.iter().map(|s| s.list_sizes.clone()).collect();
        out.push(format!(
            "worked example tuple {:?}: list sizes {:?} accepted={}",
            t.tuple, lists, t.accepted
        ));
    }

    out.push(format!("good-set-prob 15 2 2 7 [3] = {}", good_set_probability(15, 2, 2, 7, &[3])?));
    out.push(format!("good-set-exact 15 2 2 7 [3, 7] = {}", good_set_probability_exact(15, 2, 2, 7, &[3, 7])?));
    out.push(format!("any-good 15 2 2 7 [3, 7] = {}", any_good_tuple_probability(15, 2, 2, 7, &[3, 7])?));

    for (name, unique) in [("mpc_30_14", false), ("qc_30_8", true), ("qc_30_5", true), ("qc_30_5_list", false), ("qc_30_21", true)] {
        let (spec, mut dec) = load(name)?;
        if unique {
            let d = dec.distance_info(&spec)?.exact().expect("declared distance");
            dec = dec.with_tau((d - 1) / 2);
        }
        let w = dec.tau();
        let r = simulate(&dec, w, SIM_TRIALS, SIM_SEED, DecodeOptions::default())?;
        let score = if unique { r.exact } else { r.member };
        out.push(format!(
            "simulate {name} weight={w} {}: {score}/{SIM_TRIALS}",
            if unique { "exact" } else { "member" }
        ));
    }
    Ok(out)
}

pub fn run() -> ExitCode {
    let got = match compute() {
        Ok(g) => g,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(4);
        }
    };
    let want: Vec<&str> = EXPECTED.lines().filter(|l| !l.trim().is_empty()).collect();
    let mut failures = 0;
    for i in 0..got.len().max(want.len()) {
        match (got.get(i), want.get(i)) {
            (Some(g), Some(w)) if g == w => println!("ok   {g}"),
            (g, w) => {
                failures += 1;
                println!("DIFF got: {}", g.map_or("<missing>", String::as_str));
                println!("     expected: {}", w.unwrap_or(&"<missing>"));
            }
        }
    }
    if failures == 0 {
        println!("ALL PASS");
        ExitCode::SUCCESS
    } else {
        println!("{failures} mismatches");
        ExitCode::from(1)
    }
}
