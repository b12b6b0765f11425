use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use starprod::bounds::to_f64;
use starprod::codes::rs_code_standard;
use starprod::exactdist::{exact_pn_bruteforce, RankModel};
use starprod::experiments::*;
use starprod::{Error, Field};

fn cfg(n: usize, model: SamplingModel, target: Target, trials: u64, seed: u64) -> ExperimentConfig {
    ExperimentConfig::new(2, 2, 2, n, model, target, trials, seed)
}

#[test]
fn thread_count_does_not_change_results() {
    for (model, target) in [
        (SamplingModel::L, Target::Span),
        (SamplingModel::R1, Target::Dependence),
        (SamplingModel::FS, Target::Histogram),
        (SamplingModel::FR, Target::Deficit(1)),
    ] {
        let mut c = cfg(4, model, target, 9_000, 5);
        if target == Target::Dependence {
            c.n = 3;
        }
        let one = estimate_with_threads(&c, 1).unwrap();
        let three = estimate_with_threads(&c, 3).unwrap();
        assert_eq!(one, three, "{model} {target}");
        let again = estimate_with_threads(&c, 1).unwrap();
        assert_eq!(one, again);
        assert!(one.ci_low <= one.estimate && one.estimate <= one.ci_high);
    }
}

#[test]
fn estimate_brackets_exact_probability() {
    // dependence at n = 3 <= kl is the event d < 3 = min(n, kl)
    let c = cfg(3, SamplingModel::L, Target::Dependence, 100_000, 31);
    let r = estimate(&c).unwrap();
    let exact = exact_pn_bruteforce(2, 2, 2, 3, RankModel::L).unwrap();
    let (lo, hi) = clopper_pearson(r.successes, r.trials, 0.999);
    let p = to_f64(&exact);
    assert!(lo <= p && p <= hi, "exact {p} outside [{lo}, {hi}]");
    // and the span event at n = 6 > kl against its exact value
    let c = cfg(6, SamplingModel::L, Target::Span, 50_000, 32);
    let r = estimate(&c).unwrap();
    let p = to_f64(&exact_pn_bruteforce(2, 2, 2, 6, RankModel::L).unwrap());
    let (lo, hi) = clopper_pearson(r.successes, r.trials, 0.999);
    assert!(lo <= p && p <= hi);
}

#[test]
fn rank_one_draws_follow_the_model() {
    let f = Field::with_order(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let draws = 100_000u64;
    let mut ranks = [0u64; 3];
    for _ in 0..draws {
        let u = sample_rank1(&f, 2, 2, SamplingModel::L, &mut rng).unwrap();
        ranks[u.rank()] += 1;
    }
    assert_eq!(ranks[2], 0);
    let (lo, hi) = clopper_pearson(ranks[0], draws, 0.999);
    let p0 = 7.0 / 16.0;
    assert!(lo <= p0 && p0 <= hi, "P[u = 0] {p0} outside [{lo}, {hi}]");
    assert_eq!(to_f64(&zero_prob_l(2, 2, 2)), p0);

    let f3 = Field::with_order(3).unwrap();
    let mut zeros = 0;
    for _ in 0..draws {
        if sample_rank1(&f3, 2, 3, SamplingModel::L, &mut rng).unwrap().is_zero() {
            zeros += 1;
        }
    }
    let p = 1.0 - (1.0 - 1.0 / 9.0) * (1.0 - 1.0 / 27.0);
    let (lo, hi) = clopper_pearson(zeros, draws, 0.999);
    assert!(lo <= p && p <= hi);
    for _ in 0..1000 {
        assert_eq!(sample_rank1(&f3, 2, 3, SamplingModel::R1, &mut rng).unwrap().rank(), 1);
    }
}

#[test]
fn full_support_acceptance_rate() {
    let f = Field::with_order(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(51);
    let draws = 40_000u64;
    let mut attempts = 0;
    for _ in 0..draws {
        let (g, a) = sample_generator(&f, 3, 8, SamplingModel::FS, &mut rng).unwrap();
        assert!((0..8).all(|t| (0..3).any(|i| !g.get(i, t).is_zero())));
        attempts += a;
    }
    let p = (1.0 - 0.125f64).powi(8);
    let (lo, hi) = clopper_pearson(draws, attempts, 0.999);
    assert!(lo <= p && p <= hi, "{p} outside [{lo}, {hi}]");

    let r = estimate(&cfg(5, SamplingModel::FS, Target::Span, 4096, 52)).unwrap();
    assert_eq!(r.accepted, 2 * 4096);
    let p = (1.0 - 0.25f64).powi(5);
    assert!((r.acceptance_rate() - p).abs() < 0.02);
}

#[test]
fn nonzero_model_fails_less_often() {
    let l = estimate(&cfg(6, SamplingModel::L, Target::Span, 40_000, 61)).unwrap();
    let r1 = estimate(&cfg(6, SamplingModel::R1, Target::Span, 40_000, 62)).unwrap();
    assert!(r1.ci_low <= l.ci_high, "R1 {} vs L {}", r1.estimate, l.estimate);
    assert!(r1.estimate < l.estimate);
}

#[test]
fn failure_rate_decays_above_rank() {
    let r = estimate(&cfg(12, SamplingModel::L, Target::Span, 20_000, 71)).unwrap();
    let near = estimate(&cfg(6, SamplingModel::L, Target::Span, 20_000, 72)).unwrap();
    assert!(r.ci_high < near.ci_low);
    let union = starprod::bounds::exact_cprime(2, 2, 2, 12).unwrap();
    assert!(r.ci_low <= union.hi_f64(), "{} vs {}", r.estimate, union.hi_f64());
    assert!(r.ci_high >= 0.75f64.powi(12));
    assert_eq!(r.verdict, Verdict::Consistent);
    assert!(r.ci_low <= r.bound.unwrap().hi_f64());
}

#[test]
fn histogram_and_joint_tallies() {
    let r = estimate(&cfg(1, SamplingModel::L, Target::Histogram, 30_000, 81)).unwrap();
    assert!(r.bound.is_none());
    assert_eq!(r.histogram.len(), 2);
    assert_eq!(r.histogram.iter().sum::<u64>(), r.trials);
    let h = r.histogram_estimate();
    assert!((h[0] - 7.0 / 16.0).abs() < 0.02, "{h:?}");
    let joint_total: u64 = r.joint.iter().flatten().sum();
    assert_eq!(joint_total, r.trials);
}

#[test]
fn rejects_invalid_configs() {
    let bad = [
        cfg(3, SamplingModel::L, Target::Span, 10, 1),
        cfg(5, SamplingModel::L, Target::Dependence, 10, 1),
        cfg(4, SamplingModel::L, Target::Deficit(4), 10, 1),
        cfg(3, SamplingModel::L, Target::Dmax, 10, 1),
        cfg(4, SamplingModel::L, Target::Span, 0, 1),
    ];
    for c in bad {
        assert!(matches!(estimate(&c), Err(Error::Precondition(_) | Error::InvalidArgument(_))), "{}", c.target);
    }
}

#[test]
fn rejection_cap_is_reported() {
    // a 1 x 40 binary generator with full support is all ones: 2^-40 per attempt
    let f = Field::with_order(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(91);
    assert!(matches!(
        sample_generator(&f, 1, 40, SamplingModel::FS, &mut rng),
        Err(Error::RejectionCapExceeded { .. })
    ));
}

#[test]
fn campaign_rows_are_consistent() {
    assert!(verify_campaign(&[]).unwrap().is_empty());
    let grid: Vec<ExperimentConfig> =
        default_grid(2_000, 7).into_iter().filter(|c| c.q == 2 && c.k == 2 && c.l == 2).collect();
    assert!(!grid.is_empty());
    let rows = verify_campaign(&grid).unwrap();
    assert_eq!(rows.len(), grid.len());
    for row in &rows {
        let r = &row.result;
        assert_eq!(r.verdict, Verdict::Consistent, "{} {} n={}", r.config.model, r.config.target, r.config.n);
        if let Some(s) = &row.sandwich {
            assert!(s.holds());
            assert_eq!(r.config.target, Target::Span);
        }
    }
}

#[test]
fn distinguisher_reports() {
    let f11 = Field::with_order(11).unwrap();
    let rs = rs_code_standard(&f11, 4, 11).unwrap();
    let r = distinguish(&rs, true).unwrap();
    assert_eq!((r.n, r.k, r.square_dim, r.expected, r.deficit), (11, 4, 7, 10, 3));
    assert_eq!(r.verdict, Structure::Structured);
    assert!(r.dual_dmax.is_some());
    let f2 = Field::with_order(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1504);
    let (g, _) = sample_generator(&f2, 5, 20, SamplingModel::L, &mut rng).unwrap();
    let r = distinguish(&starprod::LinearCode::new(g), false).unwrap();
    assert_eq!((r.square_dim, r.verdict), (15, Structure::RandomLike));
}

#[test]
fn sandwich_values() {
    let s = sandwich(2, 2, 2, 5).unwrap().unwrap();
    assert!(s.holds());
    assert_eq!(s.exact.to_f64().unwrap(), 59191.0 / 65536.0);
    assert!(sandwich(2, 2, 2, 3).unwrap().is_none());
}

#[test]
fn names_round_trip() {
    for m in [SamplingModel::L, SamplingModel::R1, SamplingModel::FS, SamplingModel::FR] {
        assert_eq!(m.name().parse::<SamplingModel>().unwrap(), m);
    }
    for t in [Target::Span, Target::Dependence, Target::Deficit(2), Target::Dmax, Target::Histogram] {
        assert_eq!(t.to_string().parse::<Target>().unwrap(), t);
    }
    assert!("deficit:x".parse::<Target>().is_err());
    assert!("U".parse::<SamplingModel>().is_err());
}
