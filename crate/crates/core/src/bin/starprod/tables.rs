//! The `tables` subcommand: Monte Carlo campaigns plus exact side tables.

use std::fs;
use std::io::Write;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::One;

use starprod::bounds;
use starprod::codes::{simplex_code, tensor_code};
use starprod::exactdist::{self, RankModel};
use starprod::experiments::{self, CampaignRow, ExperimentConfig, SamplingModel, Target, Verdict};
use starprod::{Error, Field};

use super::{csv_writer, fmt_rat, fmt_sig, mc_record, usage, CmdResult, Failure, TablesArgs, EXIT_VIOLATED, MC_HEADER};

pub const DEFAULT_SEED: u64 = 20_140_301;

type Writer = csv::Writer<fs::File>;

fn create(dir: &Path, name: &str) -> Result<Writer, Failure> {
    Ok(csv_writer(fs::File::create(dir.join(name))?))
}

fn write_mc_rows<'a>(dir: &Path, name: &str, rows: impl Iterator<Item = &'a CampaignRow>) -> Result<(), Failure> {
    let mut w = create(dir, name)?;
    w.write_record(MC_HEADER)?;
    for row in rows {
        w.write_record(mc_record(&row.result))?;
    }
    w.flush()?;
    Ok(())
}

fn write_joint(dir: &Path, rows: &[CampaignRow]) -> Result<(), Failure> {
    let mut w = create(dir, "joint.csv")?;
    w.write_record(["q", "k", "l", "n", "model", "target", "seed", "dim_intersection", "dim_product", "count"])?;
    for row in rows {
        let c = &row.result.config;
        for (i, line) in row.result.joint.iter().enumerate() {
            for (d, &count) in line.iter().enumerate() {
                if count > 0 {
                    w.write_record([
                        c.q.to_string(),
                        c.k.to_string(),
                        c.l.to_string(),
                        c.n.to_string(),
                        c.model.name().to_string(),
                        c.target.name(),
                        c.seed.to_string(),
                        i.to_string(),
                        d.to_string(),
                        count.to_string(),
                    ])?;
                }
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn write_sandwich(dir: &Path, rows: &[CampaignRow]) -> Result<(), Failure> {
    let mut w = create(dir, "sandwich.csv")?;
    w.write_record(["q", "k", "l", "n", "rho_pow_n", "exact_pn", "exact_pn_decimal", "cprime", "holds"])?;
    for row in rows {
        if let Some(s) = &row.sandwich {
            let c = &row.result.config;
            w.write_record([
                c.q.to_string(),
                c.k.to_string(),
                c.l.to_string(),
                c.n.to_string(),
                fmt_sig(bounds::to_f64(&s.lower)),
                fmt_rat(&s.exact),
                fmt_sig(bounds::to_f64(&s.exact)),
                fmt_sig(bounds::to_f64(&s.upper)),
                s.holds().to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn model_grid(trials: u64, seed: u64) -> Vec<ExperimentConfig> {
    let shapes = [
        (2u64, 2usize, 3usize, 6usize, Target::Span),
        (2, 2, 3, 8, Target::Span),
        (2, 2, 3, 5, Target::Dependence),
        (2, 3, 3, 9, Target::Span),
        (3, 2, 2, 4, Target::Span),
        (3, 2, 3, 5, Target::Dependence),
    ];
    let mut grid = Vec::new();
    for (q, k, l, n, target) in shapes {
        for model in [SamplingModel::L, SamplingModel::R1, SamplingModel::FS, SamplingModel::FR] {
            let s = seed.wrapping_add(1000 + grid.len() as u64);
            grid.push(ExperimentConfig::new(q, k, l, n, model, target, trials, s));
        }
    }
    grid
}

fn write_models(dir: &Path, trials: u64, seed: u64) -> Result<bool, Failure> {
    let mut w = create(dir, "models.csv")?;
    let mut header: Vec<&str> = MC_HEADER.to_vec();
    header.extend(["bound_asserted", "acceptance_rate"]);
    w.write_record(&header)?;
    let mut violated = false;
    for cfg in model_grid(trials, seed) {
        let r = experiments::estimate(&cfg)?;
        violated |= r.verdict == Verdict::Violated;
        let mut rec = mc_record(&r);
        rec.push(r.bound.as_ref().map(|b| b.asserted.to_string()).unwrap_or_default());
        rec.push(fmt_sig(r.acceptance_rate()));
        w.write_record(&rec)?;
    }
    w.flush()?;
    Ok(violated)
}

fn small_shapes() -> Vec<(u64, usize, usize)> {
    let mut v = Vec::new();
    for q in [2u64, 3] {
        for k in 2..=3usize {
            for l in k..=4usize {
                v.push((q, k, l));
            }
        }
    }
    v
}

fn write_psw(dir: &Path) -> Result<(), Failure> {
    let mut w = create(dir, "psw.csv")?;
    w.write_record(["q", "k", "l", "w", "ps0", "bound_low", "bound_high", "formula", "holds"])?;
    for (q, k, l) in small_shapes() {
        let chain = exactdist::build_chain(q, k, l, RankModel::L)?;
        for (wi, p) in chain.ps0_sequence(30).iter().enumerate().skip(1) {
            let b = bounds::bound_thm_psw(q, k as u32, l as u32, wi as u32)?;
            w.write_record([
                q.to_string(),
                k.to_string(),
                l.to_string(),
                wi.to_string(),
                fmt_sig(bounds::to_f64(p)),
                fmt_sig(b.lo_f64()),
                fmt_sig(b.hi_f64()),
                b.formula.name().to_string(),
                (p <= &b.value.lo).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn write_convergence(dir: &Path) -> Result<(), Failure> {
    let mut w = create(dir, "convergence.csv")?;
    w.write_record(["q", "k", "l", "model", "w", "deviation"])?;
    for (q, k, l) in small_shapes() {
        for model in [RankModel::L, RankModel::R1] {
            let chain = exactdist::build_chain(q, k, l, model)?;
            let prof = exactdist::convergence_profile(&chain, 100 * k * l)?;
            for wi in [1, k * l, 2 * k * l, 5 * k * l, 10 * k * l, 100 * k * l] {
                w.write_record([
                    q.to_string(),
                    k.to_string(),
                    l.to_string(),
                    model.name().to_string(),
                    wi.to_string(),
                    fmt_sig(bounds::to_f64(&prof[wi])),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

fn write_chi(dir: &Path) -> Result<(), Failure> {
    let mut w = create(dir, "chi.csv")?;
    w.write_record(["q", "k", "s", "chi", "binomial", "simplex_power_dim"])?;
    for q in [2u64, 3] {
        let field = Field::with_order(q)?;
        for k in 1..=4usize {
            let simplex = simplex_code(&field, k)?;
            for s in 1..=4usize {
                w.write_record([
                    q.to_string(),
                    k.to_string(),
                    s.to_string(),
                    bounds::chi_q(k, s, q)?.to_string(),
                    bounds::binomial((k + s - 1) as u64, s as u64).to_string(),
                    simplex.star_power(s)?.dim().to_string(),
                ])?;
            }
        }
    }
    w.flush()?;
    Ok(())
}

/// `N(0, w)` beside the weight distribution `A_w` of the dual of the tensor
/// of two simplex codes. A weight-`w` dual word is a relation among `w`
/// pairwise non-proportional rank-one matrices, so `w! A_w <= N(0, w)`.
fn write_ndecomp_weights(dir: &Path) -> Result<(), Failure> {
    let mut w = create(dir, "ndecomp_weights.csv")?;
    w.write_record(["q", "k", "l", "w", "n0w", "dual_weight_count", "ordered_distinct"])?;
    for (q, k, l) in [(2u64, 2usize, 2usize), (2, 2, 3), (2, 3, 3), (3, 2, 2)] {
        let field = Field::with_order(q)?;
        let tensor = tensor_code(&simplex_code(&field, k)?, &simplex_code(&field, l)?)?;
        let weights = tensor.dual().weight_enumerator()?;
        let table = exactdist::n_decomp_table(q, k, l, 6)?;
        let mut fact = BigUint::one();
        for (wi, row) in table.iter().enumerate() {
            if wi > 0 {
                fact *= wi as u64;
            }
            let a = weights.get(wi).copied().unwrap_or(0);
            w.write_record([
                q.to_string(),
                k.to_string(),
                l.to_string(),
                wi.to_string(),
                row[0].to_string(),
                a.to_string(),
                (&fact * BigUint::from(a)).to_string(),
            ])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn read_campaign(path: &Path) -> Result<Vec<ExperimentConfig>, Failure> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .map_err(|e| usage(format!("{}: {e}", path.display())))?;
    let headers = rdr.headers()?.clone();
    let col = |name: &str| headers.iter().position(|h| h == name);
    let required = ["q", "k", "l", "n", "model", "target", "trials", "seed"];
    let mut idx = Vec::new();
    for name in required {
        idx.push(col(name).ok_or_else(|| usage(format!("{}: missing column {name:?}", path.display())))?);
    }
    let (eps_col, kappa_col) = (col("epsilon"), col("kappa"));
    let mut grid = Vec::new();
    for (i, rec) in rdr.records().enumerate() {
        let rec = rec?;
        let line = i + 2;
        let field = |j: usize| rec.get(idx[j]).unwrap_or("");
        let bad = |what: &str, e: String| usage(format!("{}: row {line}: {what}: {e}", path.display()));
        let num = |j: usize| field(j).parse::<u64>().map_err(|e| bad(required[j], e.to_string()));
        let model: SamplingModel = field(4).parse().map_err(|e: Error| bad("model", e.to_string()))?;
        let target: Target = field(5).parse().map_err(|e: Error| bad("target", e.to_string()))?;
        let mut cfg = ExperimentConfig::new(
            num(0)?,
            num(1)? as usize,
            num(2)? as usize,
            num(3)? as usize,
            model,
            target,
            num(6)?,
            num(7)?,
        );
        if let Some(c) = eps_col.and_then(|c| rec.get(c)).filter(|s| !s.is_empty()) {
            cfg.epsilon = bounds::parse_rational(c).map_err(|e| bad("epsilon", e.to_string()))?;
        }
        if let Some(c) = kappa_col.and_then(|c| rec.get(c)).filter(|s| !s.is_empty()) {
            cfg.kappa = bounds::parse_rational(c).map_err(|e| bad("kappa", e.to_string()))?;
        }
        grid.push(cfg);
    }
    Ok(grid)
}

fn run(a: &TablesArgs) -> CmdResult {
    fs::create_dir_all(&a.out).map_err(|e| usage(format!("{}: {e}", a.out.display())))?;
    let dir = a.out.as_path();
    let mut violated = false;
    let mut manifest = Vec::new();
    if a.campaign == "default" {
        let rows = experiments::verify_campaign(&experiments::default_grid(a.trials, a.seed))?;
        violated |= rows.iter().any(|r| r.result.verdict == Verdict::Violated);
        for (name, pick) in [
            ("span.csv", (|t| t == Target::Span) as fn(Target) -> bool),
            ("dependence.csv", |t| t == Target::Dependence),
            ("deficit.csv", |t| matches!(t, Target::Deficit(_))),
            ("dmax.csv", |t| t == Target::Dmax),
        ] {
            write_mc_rows(dir, name, rows.iter().filter(|r| pick(r.result.config.target)))?;
            manifest.push(name);
        }
        write_joint(dir, &rows)?;
        write_sandwich(dir, &rows)?;
        violated |= write_models(dir, a.trials, a.seed)?;
        write_psw(dir)?;
        write_convergence(dir)?;
        write_chi(dir)?;
        write_ndecomp_weights(dir)?;
        manifest.extend([
            "joint.csv",
            "sandwich.csv",
            "models.csv",
            "psw.csv",
            "convergence.csv",
            "chi.csv",
            "ndecomp_weights.csv",
        ]);
    } else {
        let grid = read_campaign(Path::new(&a.campaign))?;
        let rows = experiments::verify_campaign(&grid)?;
        violated |= rows.iter().any(|r| r.result.verdict == Verdict::Violated);
        write_mc_rows(dir, "campaign.csv", rows.iter())?;
        manifest.push("campaign.csv");
    }
    let mut out = std::io::stdout().lock();
    for name in manifest {
        writeln!(out, "{}", dir.join(name).display())?;
    }
    Ok(if violated { EXIT_VIOLATED } else { 0 })
}

pub(super) fn cmd_tables(a: TablesArgs) -> CmdResult {
    match a.threads {
        Some(0) => Err(usage("--threads must be >= 1")),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(t).build().map_err(|e| usage(e.to_string()))?;
            pool.install(|| run(&a))
        }
        None => run(&a),
    }
}
