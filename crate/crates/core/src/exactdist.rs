//! Exact distribution of `s_w = u_1 + ... + u_w` for random rank-at-most-one
//! `k x l` matrices.
//!
//! The distribution of `u` is invariant under `u -> A u B` for invertible
//! `A`, `B`, so the walk `s_w` lumps onto rank classes: the probability of
//! moving from rank `r` to rank `r'` does not depend on which rank-`r`
//! matrix the walk sits at. Transition rows are tallied exactly by
//! enumerating every factor pair `(p, q)` against the block-identity
//! representative of each rank. The lumping itself is not proven here; the
//! integration tests check it against the full unlumped walk.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bounds::{binomial, pow_rat, BoundValue, Formula, Interval};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::{EchelonBasis, Matrix};

/// Exact probability as a reduced fraction.
pub type ExactProb = BigRational;

/// Largest number of factor pairs or outcome tuples enumerated.
pub const MAX_ENUMERATION: u64 = 1 << 26;

/// How a random rank-at-most-one matrix `u = p q^T` is drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RankModel {
    /// `p`, `q` uniform, possibly zero.
    L,
    /// `p`, `q` uniform nonzero: `u` uniform among rank-one matrices.
    R1,
}

impl RankModel {
    pub fn name(self) -> &'static str {
        match self {
            RankModel::L => "L",
            RankModel::R1 => "R1",
        }
    }
}

/// All vectors of `GF(q)^len`, in canonical-integer order.
pub(crate) fn all_vectors(field: &Field, len: usize) -> Vec<Vec<FieldElem>> {
    let q = field.q() as u64;
    let total = q.pow(len as u32);
    (0..total)
        .map(|mut x| {
            (0..len)
                .map(|_| {
                    let d = (x % q) as u16;
                    x /= q;
                    FieldElem(d)
                })
                .collect()
        })
        .collect()
}

fn factor_vectors(field: &Field, len: usize, model: RankModel) -> Vec<Vec<FieldElem>> {
    let mut v = all_vectors(field, len);
    if model == RankModel::R1 {
        v.retain(|x| x.iter().any(|c| !c.is_zero()));
    }
    v
}

fn check_pairs(q: u32, k: usize, l: usize) -> Result<()> {
    let total = (q as u64).checked_pow((k + l) as u32);
    match total {
        Some(t) if t <= MAX_ENUMERATION => Ok(()),
        _ => Err(Error::SizeGuard(format!("q^(k+l) = {q}^{} factor pairs exceeds 2^26", k + l))),
    }
}

/// Block-identity `k x l` matrix of rank `r`.
pub fn rank_representative(field: &Field, k: usize, l: usize, r: usize) -> Result<Matrix> {
    let mut m = Matrix::zeros(field, k, l)?;
    for i in 0..r {
        m.set(i, i, FieldElem::ONE);
    }
    Ok(m)
}

/// Tally of `rank(rep + sign * p q^T)` over all factor pairs of the model.
pub fn transition_counts(rep: &Matrix, model: RankModel, subtract: bool) -> Result<Vec<u64>> {
    let field = rep.field();
    let (k, l) = (rep.rows(), rep.cols());
    check_pairs(field.q(), k, l)?;
    let ps = factor_vectors(field, k, model);
    let qs = factor_vectors(field, l, model);
    let mut counts = vec![0u64; k.min(l) + 1];
    let mut m = rep.clone();
    for p in &ps {
        for qv in &qs {
            for i in 0..k {
                for j in 0..l {
                    let prod = field.mul(p[i], qv[j]);
                    let v = if subtract { field.sub(rep.get(i, j), prod) } else { field.add(rep.get(i, j), prod) };
                    m.set(i, j, v);
                }
            }
            counts[m.rank()] += 1;
        }
    }
    Ok(counts)
}

/// Exact transition kernel of the rank walk.
#[derive(Clone, Debug)]
pub struct RankOrbitChain {
    pub q: u64,
    pub k: usize,
    pub l: usize,
    pub model: RankModel,
    /// `transition[r][r'] = P[rank(M + u) = r' | rank M = r]`.
    pub transition: Vec<Vec<BigRational>>,
    /// Factor pairs moving rank `r` to `r'`; `transition = counts / total`.
    pub counts: Vec<Vec<u64>>,
    /// Number of factor pairs of the model.
    pub total: u64,
    /// Number of `k x l` matrices of each rank.
    pub orbit_sizes: Vec<BigUint>,
}

impl RankOrbitChain {
    pub fn build(q: u64, k: usize, l: usize, model: RankModel) -> Result<RankOrbitChain> {
        let field = Field::with_order(q)?;
        let reps = (0..=k.min(l)).map(|r| rank_representative(&field, k, l, r)).collect::<Result<Vec<_>>>()?;
        RankOrbitChain::build_from(q, k, l, model, &reps)
    }

    /// Builds the kernel from caller-supplied representatives, one per rank
    /// in increasing order. Any representatives must give the same kernel.
    pub fn build_from(q: u64, k: usize, l: usize, model: RankModel, reps: &[Matrix]) -> Result<RankOrbitChain> {
        if k == 0 || l == 0 {
            return Err(Error::InvalidArgument("k and l must be >= 1".into()));
        }
        let field = Field::with_order(q)?;
        check_pairs(field.q(), k, l)?;
        let size = k.min(l) + 1;
        if reps.len() != size {
            return Err(Error::InvalidArgument(format!("need {size} representatives")));
        }
        for (r, rep) in reps.iter().enumerate() {
            if rep.rows() != k || rep.cols() != l || rep.rank() != r {
                return Err(Error::InvalidArgument(format!("representative {r} has the wrong shape or rank")));
            }
        }
        let counts = reps.par_iter().map(|rep| transition_counts(rep, model, false)).collect::<Result<Vec<_>>>()?;
        let total = match model {
            RankModel::L => q.pow((k + l) as u32),
            RankModel::R1 => (q.pow(k as u32) - 1) * (q.pow(l as u32) - 1),
        };
        for (r, row) in counts.iter().enumerate() {
            assert_eq!(row.iter().sum::<u64>(), total, "transition row {r}");
            for (r2, &c) in row.iter().enumerate() {
                // adding a rank-one matrix moves the rank by at most one
                assert!(r.abs_diff(r2) <= 1 || c == 0);
            }
        }
        let big_total = BigInt::from(total);
        let transition = counts
            .iter()
            .map(|row| row.iter().map(|&c| BigRational::new(BigInt::from(c), big_total.clone())).collect())
            .collect();
        let orbit_sizes = (0..size).map(|r| crate::bounds::count_rank(k as u32, l as u32, r as u32, q)).collect();
        Ok(RankOrbitChain { q, k, l, model, transition, counts, total, orbit_sizes })
    }

    pub fn states(&self) -> usize {
        self.transition.len()
    }

    /// One step of the walk applied to a distribution over ranks.
    pub fn step(&self, dist: &[BigRational]) -> Vec<BigRational> {
        let n = self.states();
        let mut out = vec![BigRational::zero(); n];
        for (r, pr) in dist.iter().enumerate() {
            if pr.is_zero() {
                continue;
            }
            for (r2, t) in self.transition[r].iter().enumerate() {
                if !t.is_zero() {
                    out[r2] += pr * t;
                }
            }
        }
        out
    }

    /// One step on numerators over the common denominator `total^w`.
    fn step_numerators(&self, cur: &[BigUint]) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.states()];
        for (r, x) in cur.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r2, &c) in self.counts[r].iter().enumerate() {
                if c != 0 {
                    out[r2] += x * c;
                }
            }
        }
        out
    }

    fn start(&self) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.states()];
        v[0] = BigUint::one();
        v
    }

    fn ratio(&self, num: &BigUint, w: usize) -> BigRational {
        BigRational::new(num.clone().into(), BigInt::from(self.total).pow(w as u32))
    }

    /// Distribution of `rank(s_w)`, starting from `s_0 = 0`.
    pub fn rank_distribution(&self, w: usize) -> Vec<BigRational> {
        let mut cur = self.start();
        for _ in 0..w {
            cur = self.step_numerators(&cur);
        }
        cur.iter().map(|x| self.ratio(x, w)).collect()
    }

    /// Numerators of `P[s_w = 0]` over `total^w`, for `w = 0..=w_max`.
    pub fn ps0_numerators(&self, w_max: usize) -> Vec<BigUint> {
        let mut cur = self.start();
        let mut out = Vec::with_capacity(w_max + 1);
        out.push(cur[0].clone());
        for _ in 0..w_max {
            cur = self.step_numerators(&cur);
            out.push(cur[0].clone());
        }
        out
    }

    /// `P[s_w = 0]` for `w = 0..=w_max`.
    pub fn ps0_sequence(&self, w_max: usize) -> Vec<ExactProb> {
        self.ps0_numerators(w_max).iter().enumerate().map(|(w, x)| self.ratio(x, w)).collect()
    }

    /// Whether the support of the model lies in an affine hyperplane
    /// missing the origin over GF(2), the case where `P[s_w = 0]` oscillates
    /// with the parity of `w`. Model L contains the zero matrix and spans,
    /// and for `k + l > 2` rank-one matrices cannot all satisfy
    /// `p^T B q = 1`, so this only happens for 1x1 over GF(2) under R1.
    pub fn is_periodic(&self) -> bool {
        self.q == 2 && self.model == RankModel::R1 && self.k == 1 && self.l == 1
    }
}

pub fn build_chain(q: u64, k: usize, l: usize, model: RankModel) -> Result<RankOrbitChain> {
    RankOrbitChain::build(q, k, l, model)
}

/// `P[s_w = 0]`; equal to 1 at `w = 0`.
pub fn exact_ps0(chain: &RankOrbitChain, w: usize) -> ExactProb {
    chain.rank_distribution(w)[0].clone()
}

/// Table `N[w][r]` of ordered decompositions of a rank-`r` matrix into `w`
/// rank-one matrices, for `w = 0..=w_max`.
pub fn n_decomp_table(q: u64, k: usize, l: usize, w_max: usize) -> Result<Vec<Vec<BigUint>>> {
    let field = Field::with_order(q)?;
    check_pairs(field.q(), k, l)?;
    let size = k.min(l) + 1;
    // K[r][r''] = #{rank-one u : rank(M_r - u) = r''}; each u arises from
    // q - 1 proportional factor pairs.
    let kernel: Vec<Vec<BigUint>> = (0..size)
        .map(|r| {
            let rep = rank_representative(&field, k, l, r)?;
            let counts = transition_counts(&rep, RankModel::R1, true)?;
            Ok(counts
                .into_iter()
                .map(|c| {
                    assert_eq!(c % (q - 1), 0);
                    BigUint::from(c / (q - 1))
                })
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut table = Vec::with_capacity(w_max + 1);
    let mut cur: Vec<BigUint> = (0..size).map(|r| if r == 0 { BigUint::one() } else { BigUint::zero() }).collect();
    table.push(cur.clone());
    for _ in 0..w_max {
        let next: Vec<BigUint> = (0..size).map(|r| kernel[r].iter().zip(&cur).map(|(a, b)| a * b).sum()).collect();
        table.push(next.clone());
        cur = next;
    }
    Ok(table)
}

/// `N(r, w)`: ordered decompositions of a rank-`r` matrix as a sum of `w`
/// rank-one matrices.
pub fn n_decomp(q: u64, k: usize, l: usize, r: usize, w: usize) -> Result<BigUint> {
    if r > k.min(l) {
        return Err(Error::InvalidArgument(format!("rank {r} exceeds min(k, l)")));
    }
    Ok(n_decomp_table(q, k, l, w)?[w][r].clone())
}

/// `sum_{w=1..n} C(n, w) (q-1)^(w-1) P[s_w = 0]`: union bound on the
/// probability that `n` samples are linearly dependent, counting relations
/// up to proportionality.
pub fn ssw_bound_exact(chain: &RankOrbitChain, n: usize) -> BoundValue {
    let ps0 = chain.ps0_sequence(n);
    let qm1 = BigRational::from_integer(BigInt::from(chain.q - 1));
    let mut total = BigRational::zero();
    for (w, p) in ps0.iter().enumerate().skip(1) {
        let c = BigRational::from_integer(BigInt::from(binomial(n as u64, w as u64)));
        total += c * pow_rat(&qm1, (w - 1) as u32) * p;
    }
    BoundValue::new(Interval::exact(total), Formula::RelationUnion, true)
}

/// `(1/(q^(g+1) - 1)) sum_{w=1..n} C(n, w) (q-1)^w P[s_w = 0]`: Markov bound
/// on `P[dim < n - g]`.
pub fn gap_bound_exact(chain: &RankOrbitChain, n: usize, g: usize) -> BoundValue {
    let ps0 = chain.ps0_sequence(n);
    let qm1 = BigRational::from_integer(BigInt::from(chain.q - 1));
    let mut total = BigRational::zero();
    for (w, p) in ps0.iter().enumerate().skip(1) {
        let c = BigRational::from_integer(BigInt::from(binomial(n as u64, w as u64)));
        total += c * pow_rat(&qm1, w as u32) * p;
    }
    let denom = BigInt::from(chain.q).pow((g + 1) as u32) - 1;
    total /= BigRational::from_integer(denom);
    BoundValue::new(Interval::exact(total), Formula::RelationMarkov, true)
}

/// `|P[s_w = 0] - q^-(kl)|` for `w = 0..=w_max`.
pub fn convergence_profile(chain: &RankOrbitChain, w_max: usize) -> Result<Vec<BigRational>> {
    if chain.is_periodic() {
        return Err(Error::Precondition(
            "support lies in an affine hyperplane over GF(2); P[s_w = 0] oscillates".into(),
        ));
    }
    // |x / t^w - q^-m| = |x q^m - t^w| / (t^w q^m)
    let qm = BigInt::from(chain.q).pow((chain.k * chain.l) as u32);
    let t = BigInt::from(chain.total);
    let mut tw = BigInt::one();
    let mut out = Vec::with_capacity(w_max + 1);
    for x in chain.ps0_numerators(w_max) {
        let diff = BigInt::from(x) * &qm - &tw;
        let diff = if diff < BigInt::zero() { -diff } else { diff };
        out.push(BigRational::new(diff, &tw * &qm));
        tw *= &t;
    }
    Ok(out)
}

/// Outcomes of `u = p q^T`, each with its multiplicity.
pub type Support = Vec<(Vec<FieldElem>, u64)>;

/// Distinct outcomes of `u = p q^T` with multiplicities, and the total
/// number of factor pairs.
pub fn rank_one_support(field: &Field, k: usize, l: usize, model: RankModel) -> Result<(Support, u64)> {
    check_pairs(field.q(), k, l)?;
    let ps = factor_vectors(field, k, model);
    let qs = factor_vectors(field, l, model);
    let mut tally: HashMap<Vec<FieldElem>, u64> = HashMap::new();
    for p in &ps {
        for qv in &qs {
            let u = Matrix::outer(field, p, qv)?.vec();
            *tally.entry(u).or_default() += 1;
        }
    }
    let mut support: Vec<_> = tally.into_iter().collect();
    support.sort();
    Ok((support, (ps.len() * qs.len()) as u64))
}

/// Exact `P[dim <u_1..u_n> < min(n, kl)]` by enumerating every tuple of
/// outcomes of `u` (distinct matrices weighted by how many factor pairs
/// produce them). Branches whose fate is already decided are summed without
/// expanding them.
pub fn exact_pn_bruteforce(q: u64, k: usize, l: usize, n: usize, model: RankModel) -> Result<ExactProb> {
    let field = Field::with_order(q)?;
    let (support, total) = rank_one_support(&field, k, l, model)?;
    let outcomes = (support.len() as u64).checked_pow(n as u32);
    if !matches!(outcomes, Some(t) if t <= MAX_ENUMERATION) {
        return Err(Error::SizeGuard(format!("{}^{n} outcome tuples exceeds 2^26", support.len())));
    }
    let denom = (total as u128)
        .checked_pow(n as u32)
        .ok_or_else(|| Error::SizeGuard("outcome weights overflow 128 bits".into()))?;
    let dim = k * l;
    let target = n.min(dim);
    // total^j for the weight of undecided suffixes
    let powers: Vec<u128> = (0..=n).map(|j| (total as u128).pow(j as u32)).collect();

    struct Walk<'a> {
        support: &'a [(Vec<FieldElem>, u64)],
        powers: &'a [u128],
        n: usize,
        dim: usize,
        target: usize,
    }

    impl Walk<'_> {
        /// Weight of failing completions below this node.
        fn fail(&self, basis: &EchelonBasis, depth: usize, weight: u128) -> u128 {
            let remaining = self.n - depth;
            if basis.rank() + remaining < self.target {
                return weight * self.powers[remaining];
            }
            if basis.rank() == self.dim || remaining == 0 {
                return 0;
            }
            let mut acc = 0u128;
            for (u, mult) in self.support {
                let mut next = basis.clone();
                next.insert(u);
                acc += self.fail(&next, depth + 1, weight * *mult as u128);
            }
            acc
        }
    }

    let walk = Walk { support: &support, powers: &powers, n, dim, target };
    let failing = walk.fail(&EchelonBasis::new(&field, dim), 0, 1);
    Ok(BigRational::new(BigInt::from(failing), BigInt::from(denom)))
}
