//! Probability and cost accounting for the block-elimination decoder:
//! good-index-tuple probabilities (closed form and exhaustive), Monte Carlo
//! estimates of constituent list ambiguity, and branch-count budgets.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::distributions::{Distribution, WeightedIndex};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::constituent::ListDecoder;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::reed_solomon::{GsDecoder, RsCode};

fn binom(n: usize, k: usize) -> BigUint {
    if k > n {
        BigUint::zero()
    } else {
        binomial(BigUint::from(n), BigUint::from(k))
    }
}

fn ratio(num: BigUint, den: BigUint) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Nearest `f64` to an exact probability.
pub fn approx(p: &BigRational) -> f64 {
    p.to_f64().unwrap_or(f64::NAN)
}

fn check_shape(m: usize, l: usize, s: usize, tau: usize) -> Result<()> {
    if s == 0 || s > l {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= l, got s={s}, l={l}")));
    }
    if tau > m * l {
        return Err(Error::InvalidParameter(format!("tau={tau} exceeds the length {}", m * l)));
    }
    Ok(())
}

/// Closed-form probability that a fixed ordered tuple is good when exactly
/// `tau` errors hit `m l` positions uniformly. Only `taus[..s-1]` are used:
/// block `i_s` is lumped with the `l - s` undecoded blocks.
pub fn good_set_probability(m: usize, l: usize, s: usize, tau: usize, taus: &[usize]) -> Result<BigRational> {
    check_shape(m, l, s, tau)?;
    if taus.len() + 1 < s {
        return Err(Error::LengthMismatch { expected: s - 1, found: taus.len() });
    }
    fn rec(m: usize, rest_len: usize, tau_left: usize, caps: &[usize]) -> BigUint {
        match caps.split_first() {
            None => binom(rest_len, tau_left),
            Some((&cap, tail)) => (0..=cap.min(tau_left))
                .map(|a| binom(m, a) * rec(m, rest_len, tau_left - a, tail))
                .sum(),
        }
    }
    let num = rec(m, m * (l - s + 1), tau, &taus[..s - 1]);
    Ok(ratio(num, binom(m * l, tau)))
}

/// Exhaustive counterpart of [`good_set_probability`] that enforces all `s`
/// caps, including `w_{i_s} <= tau_s`, by summing over weight compositions.
pub fn good_set_probability_exact(
    m: usize,
    l: usize,
    s: usize,
    tau: usize,
    taus: &[usize],
) -> Result<BigRational> {
    check_shape(m, l, s, tau)?;
    if taus.len() < s {
        return Err(Error::LengthMismatch { expected: s, found: taus.len() });
    }
    let mut caps = vec![m; l];
    for (c, &t) in caps.iter_mut().zip(&taus[..s]) {
        *c = t.min(m);
    }
    let num = composition_count(m, &caps, tau);
    Ok(ratio(num, binom(m * l, tau)))
}

/// Number of weight-`tau` supports with `w_i <= caps[i]` in each block of size `m`.
fn composition_count(m: usize, caps: &[usize], tau: usize) -> BigUint {
    match caps.split_first() {
        None => {
            if tau == 0 {
                BigUint::one()
            } else {
                BigUint::zero()
            }
        }
        Some((&cap, tail)) => (0..=cap.min(tau))
            .map(|w| binom(m, w) * composition_count(m, tail, tau - w))
            .sum(),
    }
}

/// Probability that at least one ordered tuple is good, by exhaustive
/// enumeration of block weight compositions.
pub fn any_good_tuple_probability(
    m: usize,
    l: usize,
    s: usize,
    tau: usize,
    taus: &[usize],
) -> Result<BigRational> {
    check_shape(m, l, s, tau)?;
    if taus.len() < s {
        return Err(Error::LengthMismatch { expected: s, found: taus.len() });
    }
    let mut weights = vec![0usize; l];
    let mut num = BigUint::zero();
    fn walk(
        m: usize,
        idx: usize,
        left: usize,
        weights: &mut Vec<usize>,
        taus: &[usize],
        num: &mut BigUint,
    ) {
        if idx == weights.len() {
            if left == 0 && crate::decoder::good_index_tuple(weights, taus).is_some() {
                *num += weights.iter().map(|&w| binom(m, w)).product::<BigUint>();
            }
            return;
        }
        for w in 0..=left.min(m) {
            weights[idx] = w;
            walk(m, idx + 1, left - w, weights, taus, num);
        }
    }
    walk(m, 0, tau, &mut weights, &taus[..s], &mut num);
    Ok(ratio(num, binom(m * l, tau)))
}

/// How error weights are drawn for Monte Carlo trials.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeightModel {
    /// Every error pattern of weight at most `tau` equally likely: weight `w`
    /// has probability proportional to `C(n, w) (q - 1)^w`.
    #[default]
    Proportional,
    /// Weight uniform on `0..=tau`, then a uniform pattern of that weight.
    UniformWeight,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ProbEstimate {
    pub p: f64,
    pub hits: usize,
    pub trials: usize,
    pub seed: u64,
    /// `sqrt(p (1 - p) / trials)`.
    pub stderr: f64,
}

impl ProbEstimate {
    pub fn from_counts(hits: usize, trials: usize, seed: u64) -> ProbEstimate {
        let p = hits as f64 / trials as f64;
        ProbEstimate { p, hits, trials, seed, stderr: (p * (1.0 - p) / trials as f64).sqrt() }
    }
}

/// Generator for trial `t` of a run seeded with `seed`; independent of how
/// trials are scheduled across threads.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn weight_sampler(n: usize, q: u32, tau: usize, model: WeightModel) -> Result<WeightedIndex<f64>> {
    let tau = tau.min(n);
    let weights: Vec<f64> = match model {
        WeightModel::UniformWeight => vec![1.0; tau + 1],
        WeightModel::Proportional => {
            // Work in log space: C(n, w) (q-1)^w overflows f64 for moderate n.
            let logs: Vec<f64> = (0..=tau)
                .map(|w| ln_binom(n, w) + w as f64 * f64::from(q - 1).ln())
                .collect();
            let top = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
            logs.iter().map(|x| (x - top).exp()).collect()
        }
    };
    WeightedIndex::new(weights).map_err(|e| Error::InvalidParameter(e.to_string()))
}

fn ln_binom(n: usize, k: usize) -> f64 {
    (0..k).map(|i| ((n - i) as f64).ln() - ((i + 1) as f64).ln()).sum()
}

/// Uniform error of weight `w` on `n` positions with uniform nonzero values.
pub fn random_error(field: &Field, n: usize, w: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    let mut e = vec![FieldElement::ZERO; n];
    for pos in sample(rng, n, w) {
        e[pos] = field.element(rng.gen_range(1..field.order()));
    }
    e
}

/// Uniformly random vector over the field.
pub fn random_vector(field: &Field, n: usize, rng: &mut impl Rng) -> Vec<FieldElement> {
    (0..n).map(|_| field.element(rng.gen_range(0..field.order()))).collect()
}

/// Fraction of trials in which `decoder` returns two or more codewords for a
/// random codeword plus a random error of weight at most its radius.
pub fn estimate_list_ambiguity(
    decoder: &dyn ListDecoder,
    trials: usize,
    seed: u64,
    model: WeightModel,
) -> Result<ProbEstimate> {
    if trials == 0 {
        return Err(Error::InvalidParameter("trials must be at least 1".into()));
    }
    let code = decoder.code();
    let f = code.field();
    let q = f.order();
    let n = code.length();
    let weights = weight_sampler(n, q, decoder.tau(), model)?;
    let hits = (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<usize> {
            let mut rng = trial_rng(seed, t);
            let c = code.encode(&random_vector(f, code.dimension(), &mut rng))?;
            let w = weights.sample(&mut rng);
            let e = random_error(f, n, w, &mut rng);
            let p: Vec<_> = c.iter().zip(&e).map(|(&a, &b)| f.add(a, b)).collect();
            Ok(usize::from(decoder.decode(&p)?.len() >= 2))
        })
        .try_reduce(|| 0, |a, b| Ok(a + b))?;
    Ok(ProbEstimate::from_counts(hits, trials, seed))
}

/// Monte Carlo estimate of the probability that Guruswami-Sudan decoding at
/// multiplicity `v` returns more than one codeword.
pub fn estimate_p_tau(code: &RsCode, v: usize, trials: usize, seed: u64, model: WeightModel) -> Result<ProbEstimate> {
    let dec = GsDecoder::new(code.clone(), v)?;
    estimate_list_ambiguity(&dec, trials, seed, model)
}

fn check_probability(p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{p} is not a probability")))
    }
}

/// `prod (1 - p_i)`: every constituent decoder along a good tuple returns a
/// single codeword.
pub fn decoder_success_probability(ps: &[f64]) -> Result<f64> {
    ps.iter().try_fold(1.0, |acc, &p| {
        check_probability(p)?;
        Ok(acc * (1.0 - p))
    })
}

/// `min(1, l p_1)`: bound on a wrong candidate from a bad tuple surviving the
/// final distance filter.
pub fn bad_tuple_survival_bound(l: usize, p_tau1: f64) -> Result<f64> {
    check_probability(p_tau1)?;
    Ok((l as f64 * p_tau1).min(1.0))
}

/// Worst-case work `s! C(l, s) (D_1 + sum_{i>=2} (prod_{j<i} D_j) R_i)`.
/// For `s = 1` the sum is empty and the value is `l D_1`.
pub fn complexity_estimate(l: usize, s: usize, list_caps: &[u64], costs: &[u64]) -> Result<BigUint> {
    if s == 0 || s > l {
        return Err(Error::InvalidParameter(format!("need 1 <= s <= l, got s={s}, l={l}")));
    }
    if list_caps.len() < s {
        return Err(Error::LengthMismatch { expected: s, found: list_caps.len() });
    }
    if costs.len() < s && s > 1 {
        return Err(Error::LengthMismatch { expected: s, found: costs.len() });
    }
    let tuples: BigUint = (1..=s).map(BigUint::from).product::<BigUint>() * binom(l, s);
    let mut inner = BigUint::from(list_caps[0]);
    let mut prefix = BigUint::one();
    for i in 1..s {
        prefix *= list_caps[i - 1];
        inner += &prefix * costs[i];
    }
    Ok(tuples * inner)
}
