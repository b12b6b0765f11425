//! Seeded Monte Carlo estimates of the failure probabilities of random
//! products, with Clopper-Pearson intervals and the matching bounds.
//!
//! Trials run in chunks of [`CHUNK`]. Chunk `i` draws from ChaCha8 keyed by
//! `seed_from_u64(seed)` on stream `i`, so every trial sees the same random
//! bits whatever the number of worker threads.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use statrs::distribution::{Beta, ContinuousCDF};

use crate::bounds::{self, BoundValue};
use crate::codes::LinearCode;
use crate::error::{Error, Result};
use crate::exactdist::{self, RankModel};
use crate::gf::{Field, FieldElem};
use crate::linalg::Matrix;

/// Trials per deterministic chunk.
pub const CHUNK: u64 = 4096;
/// Rejected draws allowed per generator matrix.
pub const REJECTION_CAP: u64 = 10_000;
/// Confidence level of the reported intervals.
pub const CONFIDENCE: f64 = 0.95;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SamplingModel {
    /// Uniform generator matrices; rank-one factors may be zero.
    L,
    /// Every column nonzero, drawn directly.
    R1,
    /// Full support: uniform matrices conditioned on no zero column.
    FS,
    /// Full support and full rank.
    FR,
}

impl SamplingModel {
    pub fn name(self) -> &'static str {
        match self {
            SamplingModel::L => "L",
            SamplingModel::R1 => "R1",
            SamplingModel::FS => "FS",
            SamplingModel::FR => "FR",
        }
    }

    /// The rank-one model whose relation counts describe the columns of
    /// the product generator.
    pub fn column_model(self) -> RankModel {
        match self {
            SamplingModel::L | SamplingModel::FR => RankModel::L,
            SamplingModel::R1 | SamplingModel::FS => RankModel::R1,
        }
    }
}

impl fmt::Display for SamplingModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SamplingModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "L" => Ok(SamplingModel::L),
            "R1" => Ok(SamplingModel::R1),
            "FS" => Ok(SamplingModel::FS),
            "FR" => Ok(SamplingModel::FR),
            _ => Err(Error::InvalidArgument(format!("unknown model {s:?}, expected L, R1, FS or FR"))),
        }
    }
}

/// Event whose probability is estimated. `d` is `dim C*C'`, `m = kl`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Target {
    /// `d < m`, for `n >= m`.
    Span,
    /// `d < n`, for `n <= m`.
    Dependence,
    /// `d < min(n, m) - g`.
    Deficit(u32),
    /// `dmax((C*C')^perp) >= k + l`.
    Dmax,
    /// Full histogram of `d`; the tallied event is `d < min(n, m)`.
    Histogram,
}

impl Target {
    pub fn name(self) -> String {
        match self {
            Target::Span => "span".into(),
            Target::Dependence => "dependence".into(),
            Target::Deficit(g) => format!("deficit:{g}"),
            Target::Dmax => "dmax".into(),
            Target::Histogram => "histogram".into(),
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Target {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "span" => Ok(Target::Span),
            "dependence" => Ok(Target::Dependence),
            "dmax" => Ok(Target::Dmax),
            "histogram" => Ok(Target::Histogram),
            _ => match s.strip_prefix("deficit:") {
                Some(g) => {
                    g.parse().map(Target::Deficit).map_err(|_| Error::InvalidArgument(format!("bad deficit in {s:?}")))
                }
                None => Err(Error::InvalidArgument(format!(
                    "unknown target {s:?}, expected span, dependence, deficit:G, dmax or histogram"
                ))),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExperimentConfig {
    pub q: u64,
    pub k: usize,
    pub l: usize,
    pub n: usize,
    pub model: SamplingModel,
    pub trials: u64,
    pub seed: u64,
    pub epsilon: BigRational,
    pub kappa: BigRational,
    pub target: Target,
}

impl ExperimentConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        q: u64,
        k: usize,
        l: usize,
        n: usize,
        model: SamplingModel,
        target: Target,
        trials: u64,
        seed: u64,
    ) -> Self {
        ExperimentConfig {
            q,
            k,
            l,
            n,
            model,
            trials,
            seed,
            epsilon: bounds::ratio(1, 2),
            kappa: bounds::default_kappa(),
            target,
        }
    }

    fn full_dim(&self) -> usize {
        self.n.min(self.k * self.l)
    }

    fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidArgument("trials must be >= 1".into()));
        }
        if self.k == 0 || self.l == 0 || self.n == 0 {
            return Err(Error::InvalidArgument("k, l and n must be >= 1".into()));
        }
        let entries = self.k * self.l * self.n;
        if entries > crate::linalg::MAX_ENTRIES {
            return Err(Error::MatrixTooLarge { rows: self.k * self.l, cols: self.n });
        }
        let m = self.k * self.l;
        match self.target {
            Target::Span if self.n < m => Err(Error::Precondition(format!("span target needs n >= kl = {m}"))),
            Target::Dependence if self.n > m => {
                Err(Error::Precondition(format!("dependence target needs n <= kl = {m}")))
            }
            Target::Deficit(g) if g as usize >= self.full_dim() => {
                Err(Error::Precondition(format!("deficit {g} must be below min(n, kl) = {}", self.full_dim())))
            }
            Target::Dmax if self.n < self.k + self.l || self.n > m => Err(Error::Precondition(format!(
                "dmax target needs k+l <= n <= kl, got k={} l={} n={}",
                self.k, self.l, self.n
            ))),
            _ => Ok(()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Consistent,
    Violated,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Consistent => "consistent",
            Verdict::Violated => "violated",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct EstimateResult {
    pub config: ExperimentConfig,
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Matching upper bound, absent for the histogram target.
    pub bound: Option<BoundValue>,
    pub in_param_space: bool,
    pub verdict: Verdict,
    /// Trials per value of `dim C*C'`, indexed `0..=min(n, kl)`.
    pub histogram: Vec<u64>,
    /// Trials per `(dim C cap C', dim C*C')`.
    pub joint: Vec<Vec<u64>>,
    /// Generator matrices accepted and drawn, for the rejection models.
    pub accepted: u64,
    pub attempts: u64,
}

impl EstimateResult {
    pub fn acceptance_rate(&self) -> f64 {
        self.accepted as f64 / self.attempts as f64
    }

    /// `P[d = j]` for each `j`.
    pub fn histogram_estimate(&self) -> Vec<f64> {
        self.histogram.iter().map(|&c| c as f64 / self.trials as f64).collect()
    }
}

/// Two-sided Clopper-Pearson interval for `x` successes in `n` trials.
pub fn clopper_pearson(x: u64, n: u64, confidence: f64) -> (f64, f64) {
    assert!(n > 0 && x <= n);
    let alpha = 1.0 - confidence;
    let (xf, nf) = (x as f64, n as f64);
    let lo = if x == 0 { 0.0 } else { Beta::new(xf, nf - xf + 1.0).expect("positive shape").inverse_cdf(alpha / 2.0) };
    let hi =
        if x == n { 1.0 } else { Beta::new(xf + 1.0, nf - xf).expect("positive shape").inverse_cdf(1.0 - alpha / 2.0) };
    let p = xf / nf;
    (lo.min(p), hi.max(p))
}

fn uniform_vector<R: Rng>(q: u32, len: usize, rng: &mut R, out: &mut Vec<FieldElem>) {
    out.clear();
    out.extend((0..len).map(|_| FieldElem(rng.random_range(0..q) as u16)));
}

fn nonzero_vector<R: Rng>(q: u32, len: usize, rng: &mut R) -> Vec<FieldElem> {
    let mut v = Vec::with_capacity(len);
    loop {
        uniform_vector(q, len, rng, &mut v);
        if v.iter().any(|x| !x.is_zero()) {
            return v;
        }
    }
}

/// Random `u = p q^T` under model L or R1.
pub fn sample_rank1<R: Rng>(field: &Field, k: usize, l: usize, model: SamplingModel, rng: &mut R) -> Result<Matrix> {
    let q = field.q();
    let (p, qv) = match model {
        SamplingModel::L => {
            let mut p = Vec::new();
            let mut qv = Vec::new();
            uniform_vector(q, k, rng, &mut p);
            uniform_vector(q, l, rng, &mut qv);
            (p, qv)
        }
        SamplingModel::R1 => (nonzero_vector(q, k, rng), nonzero_vector(q, l, rng)),
        _ => return Err(Error::InvalidArgument(format!("rank-one sampling needs model L or R1, got {model}"))),
    };
    Matrix::outer(field, &p, &qv)
}

/// Random `rows x n` generator matrix, with the number of draws it took.
pub fn sample_generator<R: Rng>(
    field: &Field,
    rows: usize,
    n: usize,
    model: SamplingModel,
    rng: &mut R,
) -> Result<(Matrix, u64)> {
    let q = field.q();
    match model {
        SamplingModel::L => {
            let mut data = Vec::new();
            uniform_vector(q, rows * n, rng, &mut data);
            Ok((Matrix::from_elems(field, rows, n, data)?, 1))
        }
        SamplingModel::R1 => {
            let mut g = Matrix::zeros(field, rows, n)?;
            for t in 0..n {
                let col = nonzero_vector(q, rows, rng);
                for (i, v) in col.into_iter().enumerate() {
                    g.set(i, t, v);
                }
            }
            Ok((g, 1))
        }
        SamplingModel::FS | SamplingModel::FR => {
            let mut data = Vec::new();
            for attempt in 1..=REJECTION_CAP {
                uniform_vector(q, rows * n, rng, &mut data);
                let full_support = (0..n).all(|t| (0..rows).any(|i| !data[i * n + t].is_zero()));
                if !full_support {
                    continue;
                }
                let g = Matrix::from_elems(field, rows, n, data.clone())?;
                if model == SamplingModel::FR && g.rank() < rows {
                    continue;
                }
                return Ok((g, attempt));
            }
            Err(Error::RejectionCapExceeded { attempts: REJECTION_CAP })
        }
    }
}

/// Random pair of codes of length `n` with generators of `k` and `l` rows.
pub fn sample_code_pair<R: Rng>(
    field: &Field,
    k: usize,
    l: usize,
    n: usize,
    model: SamplingModel,
    rng: &mut R,
) -> Result<(LinearCode, LinearCode)> {
    let (g, _) = sample_generator(field, k, n, model, rng)?;
    let (h, _) = sample_generator(field, l, n, model, rng)?;
    Ok((LinearCode::new(g), LinearCode::new(h)))
}

/// The `kl x n` matrix whose column `t` is `vec(g_t h_t^T)`; its row space
/// is `C*C'`.
fn product_columns(g: &Matrix, h: &Matrix) -> Result<Matrix> {
    let field = g.field();
    let (k, l, n) = (g.rows(), h.rows(), g.cols());
    let mut out = Matrix::zeros(field, k * l, n)?;
    for t in 0..n {
        for i in 0..k {
            let a = g.get(i, t);
            if a.is_zero() {
                continue;
            }
            for j in 0..l {
                out.set(i * l + j, t, field.mul(a, h.get(j, t)));
            }
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Default)]
struct Tally {
    successes: u64,
    histogram: Vec<u64>,
    joint: Vec<Vec<u64>>,
    accepted: u64,
    attempts: u64,
}

impl Tally {
    fn new(cfg: &ExperimentConfig) -> Tally {
        let top = cfg.full_dim() + 1;
        Tally {
            successes: 0,
            histogram: vec![0; top],
            joint: vec![vec![0; top]; cfg.k.min(cfg.l).min(cfg.n) + 1],
            accepted: 0,
            attempts: 0,
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.successes += other.successes;
        self.accepted += other.accepted;
        self.attempts += other.attempts;
        for (a, b) in self.histogram.iter_mut().zip(other.histogram) {
            *a += b;
        }
        for (ra, rb) in self.joint.iter_mut().zip(other.joint) {
            for (a, b) in ra.iter_mut().zip(rb) {
                *a += b;
            }
        }
        self
    }
}

fn run_chunk(cfg: &ExperimentConfig, field: &Field, chunk: u64) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(chunk);
    let count = CHUNK.min(cfg.trials - chunk * CHUNK);
    let mut tally = Tally::new(cfg);
    let full = cfg.full_dim();
    for _ in 0..count {
        let (g, ag) = sample_generator(field, cfg.k, cfg.n, cfg.model, &mut rng)?;
        let (h, ah) = sample_generator(field, cfg.l, cfg.n, cfg.model, &mut rng)?;
        tally.accepted += 2;
        tally.attempts += ag + ah;
        let prod = product_columns(&g, &h)?;
        let d = prod.rank();
        let inter = g.rank() + h.rank() - g.vstack(&h)?.rank();
        tally.histogram[d] += 1;
        tally.joint[inter][d] += 1;
        let hit = match cfg.target {
            Target::Span | Target::Dependence | Target::Histogram => d < full,
            Target::Deficit(g) => d + (g as usize) < full,
            Target::Dmax => {
                let dual = LinearCode::new(prod).dual();
                dual.dim() > 0 && dual.dmax()? >= cfg.k + cfg.l
            }
        };
        tally.successes += hit as u64;
    }
    Ok(tally)
}

/// Upper bound matched to the configured event, and whether `(k, l)` lies
/// in the admissible parameter space.
pub fn matched_bound(cfg: &ExperimentConfig) -> Result<(Option<BoundValue>, bool)> {
    cfg.validate()?;
    let (q, k, l, n) = (cfg.q, cfg.k as u32, cfg.l as u32, cfg.n as u32);
    let in_space = bounds::param_space_member(k, l, q, &cfg.epsilon, &cfg.kappa);
    let chain = || exactdist::build_chain(q, cfg.k, cfg.l, cfg.model.column_model());
    let bound = match cfg.target {
        Target::Span => Some(bounds::bound_thm_span(q, k, l, n, &cfg.epsilon, &cfg.kappa)?),
        Target::Dependence => Some(match chain() {
            Ok(c) => exactdist::ssw_bound_exact(&c, cfg.n),
            Err(Error::SizeGuard(_)) => bounds::bound_thm_dependent(q, k, l, n, &cfg.epsilon)?,
            Err(e) => return Err(e),
        }),
        Target::Deficit(g) => Some(if n >= k * l {
            bounds::bound_gap_markov(q, k, l, n, g)?
        } else {
            match chain() {
                Ok(c) => exactdist::gap_bound_exact(&c, cfg.n, g as usize),
                Err(Error::SizeGuard(_)) => bounds::bound_gap_markov_exact(q, k, l, n, g)?,
                Err(e) => return Err(e),
            }
        }),
        Target::Dmax => Some(bounds::bound_thm_dmax(q, k, l, n)?),
        Target::Histogram => None,
    };
    // the proofs cover independent columns only
    let bound = bound.map(|mut b| {
        if cfg.model == SamplingModel::FR {
            b.asserted = false;
        }
        b
    });
    Ok((bound, in_space))
}

/// Runs the configured trials on the global thread pool.
pub fn estimate(cfg: &ExperimentConfig) -> Result<EstimateResult> {
    let field = Field::with_order(cfg.q)?;
    let (bound, in_param_space) = matched_bound(cfg)?;
    let chunks = cfg.trials.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|i| run_chunk(cfg, &field, i))
        .try_reduce(|| Tally::new(cfg), |a, b| Ok(a.merge(b)))?;
    let (ci_low, ci_high) = clopper_pearson(tally.successes, cfg.trials, CONFIDENCE);
    let verdict = match &bound {
        Some(b) if ci_low > bounds::to_f64(&b.value.hi) => Verdict::Violated,
        _ => Verdict::Consistent,
    };
    Ok(EstimateResult {
        config: cfg.clone(),
        successes: tally.successes,
        trials: cfg.trials,
        estimate: tally.successes as f64 / cfg.trials as f64,
        ci_low,
        ci_high,
        bound,
        in_param_space,
        verdict,
        histogram: tally.histogram,
        joint: tally.joint,
        accepted: tally.accepted,
        attempts: tally.attempts,
    })
}

/// [`estimate`] on a dedicated pool of `threads` workers. The result does
/// not depend on `threads`.
pub fn estimate_with_threads(cfg: &ExperimentConfig, threads: usize) -> Result<EstimateResult> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(format!("thread pool: {e}")))?;
    pool.install(|| estimate(cfg))
}

/// `rho^n <= P(n) <= c'` checked against the exact probability of not
/// spanning.
#[derive(Clone, Debug, PartialEq)]
pub struct Sandwich {
    pub lower: BigRational,
    pub exact: BigRational,
    pub upper: BigRational,
}

impl Sandwich {
    pub fn holds(&self) -> bool {
        self.lower <= self.exact && self.exact <= self.upper
    }
}

/// The sandwich for `n >= kl` random rank-at-most-one matrices under model
/// L, when exhaustive enumeration is within its guard.
pub fn sandwich(q: u64, k: usize, l: usize, n: usize) -> Result<Option<Sandwich>> {
    if n < k * l {
        return Ok(None);
    }
    let exact = match exactdist::exact_pn_bruteforce(q, k, l, n, RankModel::L) {
        Ok(p) => p,
        Err(Error::SizeGuard(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let lower = bounds::pow_rat(&bounds::rho(q), n as u32);
    let upper = bounds::exact_cprime(q, k as u32, l as u32, n as u32)?.value.lo;
    Ok(Some(Sandwich { lower, exact, upper }))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignRow {
    pub result: EstimateResult,
    pub sandwich: Option<Sandwich>,
}

/// Runs every configuration; span rows under model L also get the exact
/// sandwich check where enumeration is feasible.
pub fn verify_campaign(grid: &[ExperimentConfig]) -> Result<Vec<CampaignRow>> {
    grid.iter()
        .map(|cfg| {
            let result = estimate(cfg)?;
            let sandwich = if cfg.target == Target::Span && cfg.model == SamplingModel::L {
                sandwich(cfg.q, cfg.k, cfg.l, cfg.n)?
            } else {
                None
            };
            Ok(CampaignRow { result, sandwich })
        })
        .collect()
}

/// Default desk-scale grid: every target over small shapes, `n` near `kl`.
pub fn default_grid(trials: u64, seed: u64) -> Vec<ExperimentConfig> {
    let mut grid = Vec::new();
    let mut push = |q, k, l, n, model, target| {
        let s = seed.wrapping_add(grid.len() as u64);
        grid.push(ExperimentConfig::new(q, k, l, n, model, target, trials, s));
    };
    for q in [2u64, 3] {
        for (k, l) in [(2usize, 2usize), (2, 3), (3, 3), (3, 4)] {
            let m = k * l;
            for model in [SamplingModel::L, SamplingModel::R1] {
                for n in [m, m + 2, m + 4] {
                    push(q, k, l, n, model, Target::Span);
                }
                for n in [m.saturating_sub(2).max(1), m] {
                    push(q, k, l, n, model, Target::Dependence);
                }
                push(q, k, l, m, model, Target::Deficit(1));
                if k + l <= m {
                    push(q, k, l, (k + l).max(m - 2), model, Target::Dmax);
                }
            }
        }
    }
    grid
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Structure {
    RandomLike,
    Structured,
}

impl Structure {
    pub fn name(self) -> &'static str {
        match self {
            Structure::RandomLike => "random-like",
            Structure::Structured => "structured",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishReport {
    pub n: usize,
    pub k: usize,
    pub square_dim: usize,
    /// `min(n, k(k+1)/2)`.
    pub expected: usize,
    pub deficit: usize,
    /// `dmax((C*C)^perp)`, zero for the zero code; `None` when not
    /// requested or too large to enumerate.
    pub dual_dmax: Option<usize>,
    pub verdict: Structure,
}

/// Compares `dim C^(*2)` with its value for a random code.
pub fn distinguish(code: &LinearCode, dual_dmax: bool) -> Result<DistinguishReport> {
    let n = code.length();
    let k = code.dim();
    let square = code.star_power(2)?;
    let expected = n.min(k * (k + 1) / 2);
    let deficit = expected.saturating_sub(square.dim());
    let dual_dmax = if dual_dmax {
        let dual = square.dual();
        if dual.dim() == 0 {
            Some(0)
        } else {
            match dual.dmax() {
                Ok(d) => Some(d),
                Err(Error::CodeTooLarge { .. }) | Err(Error::SizeGuard(_)) => None,
                Err(e) => return Err(e),
            }
        }
    } else {
        None
    };
    Ok(DistinguishReport {
        n,
        k,
        square_dim: square.dim(),
        expected,
        deficit,
        dual_dmax,
        verdict: if deficit > 0 { Structure::Structured } else { Structure::RandomLike },
    })
}

/// Exact `P[u = 0]` under model L, `1 - (1 - q^-k)(1 - q^-l)`.
pub fn zero_prob_l(q: u64, k: usize, l: usize) -> BigRational {
    let one = BigRational::from_integer(1.into());
    let a = &one - bounds::uniform_zero_prob(q, k as u32);
    let b = &one - bounds::uniform_zero_prob(q, l as u32);
    let p = &one - a * b;
    debug_assert!(p >= BigRational::zero());
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clopper_pearson_edges() {
        let (lo, hi) = clopper_pearson(0, 100, 0.95);
        assert_eq!(lo, 0.0);
        assert!((hi - 0.036217).abs() < 1e-5);
        let (lo, hi) = clopper_pearson(50, 100, 0.95);
        assert!((lo - 0.398321).abs() < 1e-5);
        assert!((hi - 0.601679).abs() < 1e-5);
        assert_eq!(clopper_pearson(7, 7, 0.95).1, 1.0);
    }

    #[test]
    fn parse_names() {
        for m in ["L", "R1", "FS", "FR"] {
            assert_eq!(m.parse::<SamplingModel>().unwrap().name(), m);
        }
        for t in ["span", "dependence", "deficit:2", "dmax", "histogram"] {
            assert_eq!(t.parse::<Target>().unwrap().name(), t);
        }
        assert!("deficit:x".parse::<Target>().is_err());
        assert!("X".parse::<SamplingModel>().is_err());
    }

    #[test]
    fn r1_rank_one() {
        let f = Field::with_order(3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            assert_eq!(sample_rank1(&f, 2, 3, SamplingModel::R1, &mut rng).unwrap().rank(), 1);
        }
        assert!(sample_rank1(&f, 2, 3, SamplingModel::FS, &mut rng).is_err());
    }

    #[test]
    fn fr_full_rank() {
        let f = Field::with_order(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let (c, d) = sample_code_pair(&f, 3, 4, 6, SamplingModel::FR, &mut rng).unwrap();
            assert_eq!((c.dim(), d.dim()), (3, 4));
        }
    }

    #[test]
    fn rejection_cap() {
        // a 1 x 40 binary matrix has full support with probability 2^-40
        let f = Field::with_order(2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(
            sample_generator(&f, 1, 40, SamplingModel::FS, &mut rng).unwrap_err(),
            Error::RejectionCapExceeded { attempts: REJECTION_CAP }
        );
    }

    #[test]
    fn invalid_configs() {
        let c = ExperimentConfig::new(2, 2, 2, 3, SamplingModel::L, Target::Span, 10, 0);
        assert!(matches!(estimate(&c), Err(Error::Precondition(_))));
        let c = ExperimentConfig::new(2, 2, 3, 4, SamplingModel::L, Target::Dmax, 10, 0);
        assert!(matches!(estimate(&c), Err(Error::Precondition(_))));
        let c = ExperimentConfig::new(2, 2, 3, 6, SamplingModel::L, Target::Span, 0, 0);
        assert!(estimate(&c).is_err());
    }

    #[test]
    fn histogram_sums() {
        let c = ExperimentConfig::new(2, 2, 2, 4, SamplingModel::L, Target::Histogram, 5000, 9);
        let r = estimate(&c).unwrap();
        assert_eq!(r.histogram.iter().sum::<u64>(), 5000);
        let total: f64 = r.histogram_estimate().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        assert_eq!(r.joint.iter().flatten().sum::<u64>(), 5000);
        assert!(r.bound.is_none());
    }

    #[test]
    fn distinguish_dim_one() {
        let f = Field::with_order(5).unwrap();
        let c = LinearCode::from_values(&f, 1, 4, &[1, 2, 3, 4]).unwrap();
        let r = distinguish(&c, true).unwrap();
        assert_eq!((r.square_dim, r.expected, r.verdict), (1, 1, Structure::RandomLike));
        assert_eq!(r.dual_dmax, Some(4));
    }
}
