//! Channel simulation: random codewords plus errors of an exact weight,
//! decoded with the matrix-product list decoder.

use rayon::prelude::*;

use crate::analysis::{random_error, random_vector, trial_rng};
use crate::codespec::AnyDecoder;
use crate::decoder::DecodeOptions;
use crate::error::{Error, Result};
use crate::matrix_product::BlockWord;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SimReport {
    pub trials: usize,
    pub weight: usize,
    pub seed: u64,
    /// Sent word in the output list.
    pub member: usize,
    /// Output list is exactly the sent word.
    pub exact: usize,
    pub empty: usize,
    pub max_list: usize,
    pub pivots_checked: usize,
}

impl SimReport {
    pub fn member_rate(&self) -> f64 {
        self.member as f64 / self.trials as f64
    }

    pub fn exact_rate(&self) -> f64 {
        self.exact as f64 / self.trials as f64
    }

    fn merge(mut self, o: SimReport) -> SimReport {
        self.member += o.member;
        self.exact += o.exact;
        self.empty += o.empty;
        self.max_list = self.max_list.max(o.max_list);
        self.pivots_checked += o.pivots_checked;
        self
    }
}

/// Runs `trials` independent trials; trial `t` draws from stream `t` of
/// `seed`, so the report does not depend on thread count.
pub fn simulate(dec: &AnyDecoder, weight: usize, trials: usize, seed: u64, opts: DecodeOptions) -> Result<SimReport> {
    if weight > dec.length() {
        return Err(Error::InvalidParameter(format!(
            "weight {weight} exceeds the length {}",
            dec.length()
        )));
    }
    let f = dec.field();
    let base = SimReport { trials, weight, seed, ..SimReport::default() };
    (0..trials as u64)
        .into_par_iter()
        .map(|t| -> Result<SimReport> {
            let mut rng = trial_rng(seed, t);
            let sent = dec.encode_flat(&random_vector(f, dec.dimension(), &mut rng))?;
            let e = BlockWord::from_flat(&random_error(f, dec.length(), weight, &mut rng), dec.block_len())?;
            let out = dec.list_decode(&sent.add(f, &e), opts)?;
            let member = out.contains(&sent);
            Ok(SimReport {
                member: member as usize,
                exact: (member && out.codewords.len() == 1) as usize,
                empty: out.codewords.is_empty() as usize,
                max_list: out.codewords.len(),
                pivots_checked: out.pivots_checked,
                ..SimReport::default()
            })
        })
        .try_reduce(SimReport::default, |a, b| Ok(a.merge(b)))
        .map(|r| SimReport { trials, weight, seed, ..base }.merge(r))
}
