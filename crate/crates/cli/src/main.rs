mod examples;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mpc_core::analysis::{
    any_good_tuple_probability, approx, bad_tuple_survival_bound, complexity_estimate, decoder_success_probability,
    estimate_p_tau, good_set_probability, good_set_probability_exact,
};
use mpc_core::decoder::DecodeOutput;
use mpc_core::{
    gs_params, simulate, AnyDecoder, BigRational, BlockWord, CodeSpec, DecodeOptions, DistanceInfo, Error, Field, RingElement,
    RsCode, WeightModel,
};

#[derive(Parser)]
#[command(name = "mpc", version, about = "Matrix-product codes: encode, list decode, simulate, analyze")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SpecArgs {
    /// Code description file.
    spec: PathBuf,
    /// Field modulus override, coefficients low to high (e.g. 1,1,0,0,1).
    #[arg(long, value_delimiter = ',')]
    modulus: Option<Vec<u32>>,
}

#[derive(Subcommand)]
enum Command {
    /// Print code parameters and decoder radii.
    Info {
        #[command(flatten)]
        spec: SpecArgs,
    },
    /// Encode a message of sum(k_i) comma-separated element tokens.
    Encode {
        #[command(flatten)]
        spec: SpecArgs,
        message: String,
    },
    /// List decode a received word (comma-separated tokens, block-major).
    Decode {
        #[command(flatten)]
        spec: SpecArgs,
        word: String,
        /// Read the word as `;`-separated block polynomials in x.
        #[arg(long)]
        poly: bool,
        /// Override the acceptance radius.
        #[arg(long)]
        tau: Option<usize>,
        /// Stop at the first index tuple that yields a codeword.
        #[arg(long)]
        first_hit: bool,
        /// Print per-tuple branch diagnostics.
        #[arg(long)]
        trace: bool,
        /// Decode up to half the known minimum distance.
        #[arg(long)]
        unique: bool,
    },
    /// Random codewords plus errors of exact weight, decoded and scored.
    Simulate {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        weight: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use radius floor((d-1)/2) for the known distance d.
        #[arg(long)]
        unique: bool,
    },
    /// Guruswami-Sudan parameters for an [m, k] Reed-Solomon code.
    GsParams { m: usize, k: usize, v: usize },
    #[command(subcommand)]
    Analyze(Analyze),
    /// Replay the bundled examples and compare against stored results.
    Examples,
}

#[derive(Subcommand)]
enum Analyze {
    /// Closed-form probability that a fixed tuple is good (taus 1..s-1).
    GoodSetProb { m: usize, l: usize, s: usize, tau: usize, taus: Vec<usize> },
    /// Exhaustive probability that a fixed tuple is good (taus 1..s).
    GoodSetExact { m: usize, l: usize, s: usize, tau: usize, taus: Vec<usize> },
    /// Exhaustive probability that some ordered tuple is good (taus 1..s).
    AnyGood { m: usize, l: usize, s: usize, tau: usize, taus: Vec<usize> },
    /// Monte Carlo estimate of Guruswami-Sudan list ambiguity.
    PTau {
        #[arg(long, default_value_t = 2)]
        p: u32,
        #[arg(long, default_value_t = 4)]
        m: u32,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        v: usize,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Draw the error weight uniformly instead of by pattern count.
        #[arg(long)]
        uniform_weight: bool,
    },
    /// Worst-case branch work.
    Complexity {
        l: usize,
        s: usize,
        #[arg(long, value_delimiter = ',')]
        caps: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        costs: Vec<u64>,
    },
    /// Probability that every constituent returns one codeword.
    Success { ps: Vec<f64> },
    /// Bound on a bad-tuple candidate surviving the distance filter.
    Survival { l: usize, p: f64 },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse(_) => 2,
        Error::PivotViolation(_) => 4,
        _ => 3,
    }
}

fn load(args: &SpecArgs) -> mpc_core::Result<(CodeSpec, AnyDecoder)> {
    let text = read(&args.spec)?;
    let spec = CodeSpec::parse_with_modulus(&text, args.modulus.as_deref())?;
    let dec = spec.build()?;
    Ok((spec, dec))
}

fn read(path: &Path) -> mpc_core::Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn header(spec: &CodeSpec, dec: &AnyDecoder) -> mpc_core::Result<String> {
    let d = match dec.distance_info(spec)? {
        DistanceInfo::NestedFormula(d) | DistanceInfo::Declared(d) => format!("d={d}"),
        DistanceInfo::LowerBound(ds) => format!("d>={}", ds.value),
    };
    Ok(format!("# n={} k={} {d} tau={}", dec.length(), dec.dimension(), dec.tau()))
}

fn known_distance(spec: &CodeSpec, dec: &AnyDecoder) -> mpc_core::Result<usize> {
    dec.distance_info(spec)?.exact().ok_or_else(|| {
        Error::InvalidParameter("minimum distance unknown; add a `distance d=` line to the spec".into())
    })
}

fn parse_word(f: &Field, dec: &AnyDecoder, text: &str, poly: bool) -> mpc_core::Result<BlockWord> {
    let m = dec.block_len();
    let flat = if poly {
        let blocks: Vec<&str> = text.split(';').collect();
        if blocks.len() != dec.num_blocks() {
            return Err(Error::Parse(format!("expected {} blocks, found {}", dec.num_blocks(), blocks.len())));
        }
        let mut out = Vec::new();
        for b in blocks {
            let p = mpc_core::Polynomial::parse(f, b)?;
            if p.degree().is_some_and(|d| d >= m) {
                return Err(Error::Parse(format!("block polynomial {p} has degree >= {m}")));
            }
            out.extend(RingElement::new(&p, m).into_coeffs());
        }
        out
    } else {
        f.parse_vector(text)?
    };
    if flat.len() != dec.length() {
        return Err(Error::Parse(format!("word has {} symbols, expected {}", flat.len(), dec.length())));
    }
    BlockWord::from_flat(&flat, m)
}

fn run(cmd: Command) -> mpc_core::Result<ExitCode> {
    match cmd {
        Command::Info { spec } => {
            let (spec, dec) = load(&spec)?;
            println!("{}", header(&spec, &dec)?);
            println!("field GF({}^{}) modulus {:?}", spec.field.characteristic(), spec.field.degree(), spec.field.modulus());
            println!("blocks l={} block length m={} kind={}", dec.num_blocks(), dec.block_len(), if dec.is_unit() { "polynomial-unit" } else { "scalar" });
            for (i, (c, d)) in spec.constituents.iter().zip(dec.decoders()).enumerate() {
                println!("C_{}: [{}, {}, {}] decoder: {}", i + 1, c.code.length(), c.code.dimension(), c.distance, d.describe());
            }
            println!("taus={:?} tau={} bound={}", dec.taus(), dec.tau(), dec.tau_bound());
            if let Some(cap) = dec.branch_cap() {
                println!("branch cap per tuple={cap}");
            }
            if let DistanceInfo::LowerBound(ds) = dec.distance_info(&spec)? {
                println!("d* = {} (D_i = {:?}, {:?})", ds.value, ds.row_distances, ds.provenance);
            }
        }
        Command::Encode { spec, message } => {
            let (spec, dec) = load(&spec)?;
            let msg = spec.field.parse_vector(&message)?;
            if msg.len() != dec.dimension() {
                return Err(Error::Parse(format!("message has {} symbols, expected {}", msg.len(), dec.dimension())));
            }
            let word = dec.encode_flat(&msg)?;
            println!("{}", header(&spec, &dec)?);
            println!("{}", spec.field.format_vector(&word.to_flat()));
        }
        Command::Decode { spec, word, poly, tau, first_hit, trace, unique } => {
            let (spec, mut dec) = load(&spec)?;
            let f = spec.field.clone();
            let received = parse_word(&f, &dec, &word, poly)?;
            if let Some(t) = tau {
                dec = dec.with_tau(t);
            }
            println!("{}", header(&spec, &dec)?);
            if unique {
                let d = known_distance(&spec, &dec)?;
                match dec.unique_decode(&received, d)? {
                    Some(c) => println!("{} distance={}", f.format_vector(&c.to_flat()), c.distance(&received)),
                    None => println!("NONE"),
                }
                return Ok(ExitCode::SUCCESS);
            }
            let out = dec.list_decode(&received, DecodeOptions { first_hit, record_lists: false })?;
            if trace {
                print_trace(&out);
            }
            if out.codewords.is_empty() {
                println!("NONE");
            }
            for c in &out.codewords {
                println!("{} distance={}", f.format_vector(&c.to_flat()), c.distance(&received));
            }
        }
        Command::Simulate { spec, weight, trials, seed, unique } => {
            let (spec, mut dec) = load(&spec)?;
            if unique {
                let d = known_distance(&spec, &dec)?;
                let t = (d - 1) / 2;
                if dec.tau_bound() < t {
                    return Err(Error::InvalidParameter(format!("decoder bound {} is below {t}", dec.tau_bound())));
                }
                dec = dec.with_tau(t);
            }
            let r = simulate(&dec, weight, trials, seed, DecodeOptions::default())?;
            println!("{}", header(&spec, &dec)?);
            println!("{:>6} {:>8} {:>8} {:>8} {:>8} {:>8}", "weight", "trials", "member", "exact", "empty", "max_list");
            println!("{:>6} {:>8} {:>8} {:>8} {:>8} {:>8}", r.weight, r.trials, r.member, r.exact, r.empty, r.max_list);
            println!("member_rate={:.6} exact_rate={:.6} seed={}", r.member_rate(), r.exact_rate(), r.seed);
        }
        Command::GsParams { m, k, v } => {
            let p = gs_params(m, k, v)?;
            println!("{:>4} {:>4} {:>4} {:>4} {:>6} {:>4} {:>8}", "m", "k", "v", "r", "l", "tau", "list_cap");
            println!("{:>4} {:>4} {:>4} {:>4} {:>6} {:>4} {:>8}", m, k, v, p.r, p.l, p.tau, p.list_cap);
            println!("tau={} r={} l={} list_cap={}", p.tau, p.r, p.l, p.list_cap);
        }
        Command::Analyze(a) => analyze(a)?,
        Command::Examples => return Ok(examples::run()),
    }
    Ok(ExitCode::SUCCESS)
}

fn print_trace(out: &DecodeOutput) {
    for t in &out.trace {
        let tuple = t.tuple.iter().map(ToString::to_string).collect::<Vec<_>>().join(",");
        let stages = t
            .stages
            .iter()
            .map(|s| format!("LDC_{} on block {}: inputs={} lists={:?}", s.constituent, s.block, s.inputs, s.list_sizes))
            .collect::<Vec<_>>()
            .join("; ");
        let end = match t.abandoned_at {
            Some(j) => format!("abandoned at stage {j}"),
            None => format!("candidates={} accepted={}", t.candidates, t.accepted),
        };
        println!("trace ({tuple}): {stages}; {end}");
    }
    println!("trace pivots_checked={}", out.pivots_checked);
}

fn analyze(a: Analyze) -> mpc_core::Result<()> {
    match a {
        Analyze::GoodSetProb { m, l, s, tau, taus } => {
            let p = good_set_probability(m, l, s, tau, &taus)?;
            print_rational("closed-form", m, l, s, tau, &taus, &p);
        }
        Analyze::GoodSetExact { m, l, s, tau, taus } => {
            let p = good_set_probability_exact(m, l, s, tau, &taus)?;
            print_rational("enumeration", m, l, s, tau, &taus, &p);
        }
        Analyze::AnyGood { m, l, s, tau, taus } => {
            let p = any_good_tuple_probability(m, l, s, tau, &taus)?;
            print_rational("any-tuple", m, l, s, tau, &taus, &p);
        }
        Analyze::PTau { p, m, k, v, trials, seed, uniform_weight } => {
            let f = Field::gf(p, m)?;
            let rs = RsCode::new(&f, k)?;
            let params = gs_params(rs.length(), k, v)?;
            let model = if uniform_weight { WeightModel::UniformWeight } else { WeightModel::Proportional };
            let est = estimate_p_tau(&rs, v, trials, seed, model)?;
            println!("{:>4} {:>4} {:>4} {:>4} {:>8} {:>6} {:>10} {:>10}", "n", "k", "v", "tau", "trials", "hits", "p", "stderr");
            println!(
                "{:>4} {:>4} {:>4} {:>4} {:>8} {:>6} {:>10.6} {:>10.6}",
                rs.length(), k, v, params.tau, est.trials, est.hits, est.p, est.stderr
            );
            println!("p={} stderr={} trials={} seed={} model={:?}", est.p, est.stderr, est.trials, est.seed, model);
        }
        Analyze::Complexity { l, s, caps, costs } => {
            let c = complexity_estimate(l, s, &caps, &costs)?;
            println!("complexity={c}");
        }
        Analyze::Success { ps } => {
            println!("success={}", decoder_success_probability(&ps)?);
        }
        Analyze::Survival { l, p } => {
            println!("survival_bound={}", bad_tuple_survival_bound(l, p)?);
        }
    }
    Ok(())
}

fn print_rational(
    label: &str,
    m: usize,
    l: usize,
    s: usize,
    tau: usize,
    taus: &[usize],
    p: &BigRational,
) {
    let approx = approx(p);
    println!("{:>4} {:>4} {:>4} {:>5} {:>12} {:>12}", "m", "l", "s", "tau", "taus", label);
    println!("{:>4} {:>4} {:>4} {:>5} {:>12} {:>12}", m, l, s, tau, format!("{taus:?}"), p.to_string());
    println!("probability={p} approx={approx:.6}");
}
