//! `starprod` command-line front end.
//!
//! Exit codes: 0 success, 2 usage or input error, 3 a bound was violated
//! beyond statistical doubt, 4 rejection sampling gave up.

mod tables;

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use starprod::bounds::{self, BoundValue};
use starprod::codes::{rs_code_standard, simplex_code};
use starprod::exactdist::{self, RankModel};
use starprod::experiments::{self, EstimateResult, ExperimentConfig, SamplingModel, Target, Verdict};
use starprod::{genfile, gf, Error, Field};

const EXIT_USAGE: u8 = 2;
const EXIT_VIOLATED: u8 = 3;
const EXIT_SAMPLING: u8 = 4;

#[derive(Parser)]
#[command(name = "starprod", version, about = "Star products of random codes and rank-one span probabilities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed-form bound.
    Bounds(BoundsArgs),
    /// Exact rank-walk computations.
    Exact(ExactArgs),
    /// Monte Carlo estimate of one failure probability.
    Mc(McArgs),
    /// Square-code distinguisher on a generator matrix file.
    Distinguish(DistinguishArgs),
    /// Write the verification tables.
    Tables(TablesArgs),
    /// Write a generator matrix file.
    Gen(GenArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Cq,
    Cdoubleprime,
    Cprime,
    Span,
    Psw,
    Dependent,
    Dmax,
    Toy,
    Gap,
    GapExact,
    Ssw,
    SswGap,
    Chi,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long, value_enum)]
    which: Which,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long)]
    l: Option<u32>,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    w: Option<u32>,
    #[arg(long)]
    g: Option<u32>,
    /// Ambient dimension for `toy`.
    #[arg(long)]
    m: Option<u32>,
    /// Rank for `toy`.
    #[arg(long)]
    r: Option<u32>,
    /// Power for `chi`.
    #[arg(long)]
    s: Option<u32>,
    #[arg(long, default_value = "1/2")]
    epsilon: String,
    #[arg(long, default_value = "0.23")]
    kappa: String,
    /// Rank-one model for `ssw` and `ssw-gap`.
    #[arg(long, default_value = "L")]
    model: String,
}

#[derive(Args)]
#[command(group(clap::ArgGroup::new("query").required(true).args(["ps0_upto", "ndecomp", "pn"])))]
struct ExactArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long, default_value = "L")]
    model: String,
    /// `P[s_w = 0]` for w = 0..=W.
    #[arg(long, value_name = "W")]
    ps0_upto: Option<usize>,
    /// N(r, w), decompositions of a rank-r matrix into w rank-one terms.
    #[arg(long, num_args = 2, value_names = ["R", "W"])]
    ndecomp: Option<Vec<usize>>,
    /// Exact probability that n samples fail to reach full rank.
    #[arg(long, value_name = "N")]
    pn: Option<usize>,
}

#[derive(Args)]
struct McArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    #[arg(long)]
    l: usize,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value = "L")]
    model: String,
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    #[arg(long)]
    seed: u64,
    /// span, dependence, deficit:G, dmax or histogram.
    #[arg(long, default_value = "span")]
    target: String,
    #[arg(long, default_value = "1/2")]
    epsilon: String,
    #[arg(long, default_value = "0.23")]
    kappa: String,
    #[arg(long)]
    threads: Option<usize>,
    /// CSV destination; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct DistinguishArgs {
    #[arg(long)]
    gen: PathBuf,
    /// Also report dmax of the dual of the square.
    #[arg(long)]
    dual_dmax: bool,
}

#[derive(Args)]
struct TablesArgs {
    /// `default` or a campaign CSV with columns
    /// q,k,l,n,model,target,trials,seed[,epsilon,kappa].
    #[arg(long, default_value = "default")]
    campaign: String,
    #[arg(long)]
    out: PathBuf,
    /// Trials per row of the default campaign.
    #[arg(long, default_value_t = 10_000)]
    trials: u64,
    /// Base seed of the default campaign.
    #[arg(long, default_value_t = tables::DEFAULT_SEED)]
    seed: u64,
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum GenKind {
    Random,
    Rs,
    Simplex,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum, default_value = "random")]
    kind: GenKind,
    #[arg(long)]
    q: u64,
    #[arg(long)]
    k: usize,
    /// Length; unused for simplex codes.
    #[arg(long)]
    n: Option<usize>,
    /// Required for random matrices.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

/// Failure of a command, mapped to an exit code.
enum Failure {
    Usage(String),
    Sampling(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RejectionCapExceeded { .. } => Failure::Sampling(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

/// 12 significant digits; fixed notation for moderate magnitudes.
pub(crate) fn fmt_sig(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let exp = x.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        format!("{:.*}", (11 - exp) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub(crate) fn fmt_rat(x: &BigRational) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn need<T>(v: Option<T>, flag: &str, which: &str) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("--which {which} needs --{flag}")))
}

fn rank_model(s: &str) -> Result<RankModel, Failure> {
    match s {
        "L" => Ok(RankModel::L),
        "R1" => Ok(RankModel::R1),
        _ => Err(usage(format!("unknown rank-one model {s:?}, expected L or R1"))),
    }
}

fn print_bound(out: &mut impl Write, b: &BoundValue, in_space: Option<bool>) -> io::Result<()> {
    writeln!(out, "formula         {}", b.formula.name())?;
    match b.exact() {
        Some(x) => {
            writeln!(out, "exact           {}", fmt_rat(x))?;
            writeln!(out, "value           {}", fmt_sig(bounds::to_f64(x)))?;
        }
        None => {
            writeln!(out, "interval        [{}, {}]", fmt_rat(&b.value.lo), fmt_rat(&b.value.hi))?;
            writeln!(out, "value           [{}, {}]", fmt_sig(b.lo_f64()), fmt_sig(b.hi_f64()))?;
        }
    }
    writeln!(out, "vacuous         {}", b.vacuous)?;
    writeln!(out, "asserted        {}", b.asserted)?;
    if let Some(p) = in_space {
        writeln!(out, "in_param_space  {p}")?;
    }
    Ok(())
}

fn cmd_bounds(a: BoundsArgs) -> CmdResult {
    let eps = bounds::parse_rational(&a.epsilon)?;
    let kappa = bounds::parse_rational(&a.kappa)?;
    let name = a.which.to_possible_value().map(|v| v.get_name().to_string()).unwrap_or_default();
    let w = name.as_str();
    let q = a.q;
    if gf::prime_power(q).is_none() {
        return Err(Error::NotPrimePower(q).into());
    }
    let k = || need(a.k, "k", w);
    let l = || need(a.l, "l", w);
    let n = || need(a.n, "n", w);
    let g = || need(a.g, "g", w);
    let mut out = io::stdout().lock();
    let b = match a.which {
        Which::Cq => {
            let iv = bounds::c_q(q, &bounds::default_precision());
            BoundValue::new(iv, bounds::Formula::Cq, true)
        }
        Which::Cdoubleprime => bounds::c_doubleprime(q, &eps)?,
        Which::Cprime => bounds::exact_cprime(q, k()?, l()?, n()?)?,
        Which::Span => bounds::bound_thm_span(q, k()?, l()?, n()?, &eps, &kappa)?,
        Which::Psw => bounds::bound_thm_psw(q, k()?, l()?, need(a.w, "w", w)?)?,
        Which::Dependent => bounds::bound_thm_dependent(q, k()?, l()?, n()?, &eps)?,
        Which::Dmax => bounds::bound_thm_dmax(q, k()?, l()?, n()?)?,
        Which::Toy => bounds::bound_prop_toy(q, need(a.m, "m", w)?, n()?, need(a.r, "r", w)?)?,
        Which::Gap => bounds::bound_gap_markov(q, k()?, l()?, n()?, g()?)?,
        Which::GapExact => bounds::bound_gap_markov_exact(q, k()?, l()?, n()?, g()?)?,
        Which::Ssw | Which::SswGap => {
            let chain = exactdist::build_chain(q, k()? as usize, l()? as usize, rank_model(&a.model)?)?;
            let n = n()? as usize;
            if matches!(a.which, Which::Ssw) {
                exactdist::ssw_bound_exact(&chain, n)
            } else {
                exactdist::gap_bound_exact(&chain, n, g()? as usize)
            }
        }
        Which::Chi => {
            let k = k()? as usize;
            let s = need(a.s, "s", w)? as usize;
            let chi = bounds::chi_q(k, s, q)?;
            let free = bounds::binomial((k + s - 1) as u64, s as u64);
            writeln!(out, "chi             {chi}")?;
            writeln!(out, "binomial        {free}")?;
            writeln!(out, "strict          {}", num_bigint::BigUint::from(chi) < free)?;
            return Ok(0);
        }
    };
    let in_space = match (a.k, a.l) {
        (Some(k), Some(l)) => Some(bounds::param_space_member(k, l, q, &eps, &kappa)),
        _ => None,
    };
    print_bound(&mut out, &b, in_space)?;
    Ok(0)
}

fn cmd_exact(a: ExactArgs) -> CmdResult {
    let model = rank_model(&a.model)?;
    let mut wtr = csv_writer(io::stdout().lock());
    if let Some(wmax) = a.ps0_upto {
        let chain = exactdist::build_chain(a.q, a.k, a.l, model)?;
        wtr.write_record(["w", "ps0", "decimal"])?;
        for (w, p) in chain.ps0_sequence(wmax).iter().enumerate() {
            wtr.write_record([w.to_string(), fmt_rat(p), fmt_sig(bounds::to_f64(p))])?;
        }
    } else if let Some(rw) = a.ndecomp {
        let (r, w) = (rw[0], rw[1]);
        let count = exactdist::n_decomp(a.q, a.k, a.l, r, w)?;
        wtr.write_record(["r", "w", "count"])?;
        wtr.write_record([r.to_string(), w.to_string(), count.to_string()])?;
    } else if let Some(n) = a.pn {
        let p = exactdist::exact_pn_bruteforce(a.q, a.k, a.l, n, model)?;
        wtr.write_record(["n", "pn", "decimal"])?;
        wtr.write_record([n.to_string(), fmt_rat(&p), fmt_sig(bounds::to_f64(&p))])?;
    }
    wtr.flush()?;
    Ok(0)
}

pub(crate) fn csv_writer<W: Write>(w: W) -> csv::Writer<W> {
    csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(w)
}

pub(crate) const MC_HEADER: [&str; 17] = [
    "q",
    "k",
    "l",
    "n",
    "model",
    "target",
    "trials",
    "seed",
    "successes",
    "estimate",
    "ci_low",
    "ci_high",
    "bound_low",
    "bound_high",
    "in_param_space",
    "vacuous",
    "verdict",
];

pub(crate) fn mc_record(r: &EstimateResult) -> Vec<String> {
    let c = &r.config;
    let (lo, hi, vacuous) = match &r.bound {
        Some(b) => (fmt_sig(b.lo_f64()), fmt_sig(b.hi_f64()), b.vacuous.to_string()),
        None => (String::new(), String::new(), String::new()),
    };
    vec![
        c.q.to_string(),
        c.k.to_string(),
        c.l.to_string(),
        c.n.to_string(),
        c.model.name().to_string(),
        c.target.name(),
        c.trials.to_string(),
        c.seed.to_string(),
        r.successes.to_string(),
        fmt_sig(r.estimate),
        fmt_sig(r.ci_low),
        fmt_sig(r.ci_high),
        lo,
        hi,
        r.in_param_space.to_string(),
        vacuous,
        r.verdict.name().to_string(),
    ]
}

pub(crate) fn run_estimate(cfg: &ExperimentConfig, threads: Option<usize>) -> starprod::Result<EstimateResult> {
    match threads {
        Some(t) => experiments::estimate_with_threads(cfg, t),
        None => experiments::estimate(cfg),
    }
}

fn cmd_mc(a: McArgs) -> CmdResult {
    let model: SamplingModel = a.model.parse()?;
    let target: Target = a.target.parse()?;
    if a.threads == Some(0) {
        return Err(usage("--threads must be >= 1"));
    }
    let mut cfg = ExperimentConfig::new(a.q, a.k, a.l, a.n, model, target, a.trials, a.seed);
    cfg.epsilon = bounds::parse_rational(&a.epsilon)?;
    cfg.kappa = bounds::parse_rational(&a.kappa)?;
    let r = run_estimate(&cfg, a.threads)?;
    match &a.out {
        Some(path) => {
            let mut wtr = csv_writer(fs::File::create(path)?);
            wtr.write_record(MC_HEADER)?;
            wtr.write_record(mc_record(&r))?;
            wtr.flush()?;
        }
        None => {
            let mut wtr = csv_writer(io::stdout().lock());
            wtr.write_record(MC_HEADER)?;
            wtr.write_record(mc_record(&r))?;
            wtr.flush()?;
        }
    }
    let bound = match &r.bound {
        Some(b) => format!("[{}, {}]", fmt_sig(b.lo_f64()), fmt_sig(b.hi_f64())),
        None => "none".into(),
    };
    let summary = format!(
        "{} q={} k={} l={} n={} model={} trials={} successes={} estimate={} ci=[{}, {}] bound={} in_param_space={}",
        r.verdict.name(),
        cfg.q,
        cfg.k,
        cfg.l,
        cfg.n,
        cfg.model,
        cfg.trials,
        r.successes,
        fmt_sig(r.estimate),
        fmt_sig(r.ci_low),
        fmt_sig(r.ci_high),
        bound,
        r.in_param_space,
    );
    if a.out.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(if r.verdict == Verdict::Violated { EXIT_VIOLATED } else { 0 })
}

fn cmd_distinguish(a: DistinguishArgs) -> CmdResult {
    let text = fs::read_to_string(&a.gen).map_err(|e| usage(format!("{}: {e}", a.gen.display())))?;
    let code = genfile::parse_code(&text).map_err(|e| usage(format!("{}: {e}", a.gen.display())))?;
    let r = experiments::distinguish(&code, a.dual_dmax)?;
    let mut out = io::stdout().lock();
    writeln!(out, "n               {}", r.n)?;
    writeln!(out, "k               {}", r.k)?;
    writeln!(out, "dim_square      {}", r.square_dim)?;
    writeln!(out, "expected        {}", r.expected)?;
    writeln!(out, "deficit         {}", r.deficit)?;
    if a.dual_dmax {
        let threshold = 2 * r.k;
        match r.dual_dmax {
            Some(d) => writeln!(out, "dual_dmax       {d} (threshold k+k = {threshold}, reached: {})", d >= threshold)?,
            None => writeln!(out, "dual_dmax       not enumerable")?,
        }
    }
    writeln!(out, "verdict         {}, deficit {}", r.verdict.name(), r.deficit)?;
    if r.deficit == 0 {
        writeln!(
            out,
            "note            probabilistic verdict: a random code has no deficit only with high probability"
        )?;
    }
    Ok(0)
}

fn cmd_gen(a: GenArgs) -> CmdResult {
    let field = Field::with_order(a.q)?;
    let code = match a.kind {
        GenKind::Random => {
            let seed = a.seed.ok_or_else(|| usage("--kind random needs --seed"))?;
            let n = a.n.ok_or_else(|| usage("--kind random needs --n"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let (g, _) = experiments::sample_generator(&field, a.k, n, SamplingModel::L, &mut rng)?;
            starprod::LinearCode::new(g)
        }
        GenKind::Rs => rs_code_standard(&field, a.k, a.n.ok_or_else(|| usage("--kind rs needs --n"))?)?,
        GenKind::Simplex => simplex_code(&field, a.k)?,
    };
    let text = genfile::write(code.generator());
    match a.out {
        Some(p) => fs::write(p, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let res = match cli.command {
        Command::Bounds(a) => cmd_bounds(a),
        Command::Exact(a) => cmd_exact(a),
        Command::Mc(a) => cmd_mc(a),
        Command::Distinguish(a) => cmd_distinguish(a),
        Command::Tables(a) => tables::cmd_tables(a),
        Command::Gen(a) => cmd_gen(a),
    };
    match res {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Sampling(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_SAMPLING)
        }
    }
}
