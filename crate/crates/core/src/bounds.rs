//! Closed-form counts and probability bounds for spans of random rank-one
//! matrices and for dimensions of star products.
//!
//! Everything is exact rational arithmetic except the constant
//! `C_q = prod_{j>=1} (1 - q^-j)^-1`, which is irrational and is carried as a
//! rational interval `[lo, hi]` known to contain it. Every bound that involves
//! `C_q` inherits an interval, so comparisons against it are rigorous.
//!
//! Bounds are never clamped: a value of at least 1 is returned as is and
//! flagged `vacuous`. When the hypotheses behind a formula do not
//! hold (for instance the shape lies outside the admissible parameter space)
//! the value is still computed and `asserted` is false.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::codes::{multisets, projective_points};
use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::Matrix;

/// Default width of the `C_q` enclosure.
pub fn default_precision() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(10u64).pow(15))
}

/// The default `kappa = 23/100`.
pub fn default_kappa() -> BigRational {
    BigRational::new(23.into(), 100.into())
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn q_pow(q: u64, e: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(q).pow(e as u32))
}

fn q_pow_neg(q: u64, e: u64) -> BigRational {
    q_pow(q, e).recip()
}

pub fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Parses `a/b`, an integer, or a plain decimal such as `0.23`, exactly.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational number: {s:?}"));
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    if int.is_empty() && frac.is_empty() || !int.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits: BigInt = format!("0{int}{frac}").parse().map_err(|_| bad())?;
    let value = BigRational::new(digits, BigInt::from(10).pow(frac.len() as u32));
    Ok(if neg { -value } else { value })
}

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Interval {
    pub fn exact(x: BigRational) -> Interval {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(2.into())))
    }

    /// Product with a nonnegative scalar.
    pub fn scale(&self, c: &BigRational) -> Interval {
        debug_assert!(c >= &BigRational::zero());
        Interval { lo: &self.lo * c, hi: &self.hi * c }
    }

    /// Product of two nonnegative intervals.
    pub fn mul(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo * &other.lo, hi: &self.hi * &other.hi }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    /// Reciprocal of a positive interval.
    pub fn recip(&self) -> Interval {
        Interval { lo: self.hi.recip(), hi: self.lo.recip() }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_exact() {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "[{:.12e}, {:.12e}]", to_f64(&self.lo), to_f64(&self.hi))
        }
    }
}

/// Which closed form a [`BoundValue`] instantiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Cq,
    CDoublePrime,
    /// Union bound over hyperplanes, exact.
    UnionExact,
    /// `c'' rho^(n - kl)` for the probability of not spanning.
    SpanClosed,
    /// `P[s_w = 0]` bound, short relations.
    PswShort,
    /// `P[s_w = 0]` bound, long relations.
    PswLong,
    /// Bound on linear dependence for `n <= kl`.
    DependenceClosed,
    /// Bound on `dmax` of the dual of the product.
    DmaxClosed,
    /// Span deficit of uniform vectors.
    UniformDeficit,
    /// Markov inequality on the hyperplane count, `c' rho^(n-m)` form.
    GapMarkov,
    /// Markov inequality on the hyperplane count, exact sum.
    GapMarkovExact,
    /// Union bound over relations up to proportionality, exact.
    RelationUnion,
    /// Markov inequality on the number of relations, exact.
    RelationMarkov,
}

impl Formula {
    pub fn name(self) -> &'static str {
        match self {
            Formula::Cq => "C_q",
            Formula::CDoublePrime => "c''",
            Formula::UnionExact => "union-exact",
            Formula::SpanClosed => "span",
            Formula::PswShort => "psw-short",
            Formula::PswLong => "psw-long",
            Formula::DependenceClosed => "dependent",
            Formula::DmaxClosed => "dmax",
            Formula::UniformDeficit => "toy",
            Formula::GapMarkov => "gap-markov",
            Formula::GapMarkovExact => "gap-markov-exact",
            Formula::RelationUnion => "ssw-exact",
            Formula::RelationMarkov => "ssw-gap-exact",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BoundValue {
    pub value: Interval,
    pub formula: Formula,
    /// The value is at least 1 and so says nothing about a probability.
    pub vacuous: bool,
    /// The hypotheses under which the formula is a proven bound hold.
    pub asserted: bool,
}

impl BoundValue {
    pub fn new(value: Interval, formula: Formula, asserted: bool) -> BoundValue {
        let vacuous = value.lo >= BigRational::one();
        BoundValue { value, formula, vacuous, asserted }
    }

    pub fn exact(&self) -> Option<&BigRational> {
        self.value.is_exact().then_some(&self.value.lo)
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.value.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.value.hi)
    }
}

/// Number of `r`-dimensional subspaces of `GF(q)^m`; zero when `r > m`.
pub fn gaussian_binomial(m: u32, r: u32, q: u64) -> BigUint {
    if r > m {
        return BigUint::zero();
    }
    let q = BigUint::from(q);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for j in 1..=r {
        num *= q.pow(m - r + j) - 1u32;
        den *= q.pow(j) - 1u32;
    }
    num / den
}

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `|GL_r(F_q)|`.
pub fn gl_order(r: u32, q: u64) -> BigUint {
    let q = BigUint::from(q);
    let qr = q.pow(r);
    (0..r).fold(BigUint::one(), |acc, i| acc * (&qr - q.pow(i)))
}

/// Number of `k x l` matrices of rank `r` over GF(q).
pub fn count_rank(k: u32, l: u32, r: u32, q: u64) -> BigUint {
    if r > k.min(l) {
        return BigUint::zero();
    }
    let qb = BigUint::from(q);
    let (qk, ql, qr) = (qb.pow(k), qb.pow(l), qb.pow(r));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..r {
        let qi = qb.pow(i);
        num *= (&qk - &qi) * (&ql - &qi);
        den *= &qr - &qi;
    }
    num / den
}

/// Enclosure of `C_q` with width at most `precision`.
///
/// The partial product `P_J = prod_{j<=J} (1 - q^-j)^-1` is a lower bound;
/// since `prod (1 - x_j) >= 1 - sum x_j`, the tail is at most
/// `1 / (1 - q^-J / (q - 1))`, which gives the upper end.
pub fn c_q(q: u64, precision: &BigRational) -> Interval {
    assert!(q >= 2, "C_q needs q >= 2");
    let qb = BigInt::from(q);
    // partial product num/den; the tail factor is at most M/(M-1), M = q^j (q-1)
    let (mut num, mut den) = (BigInt::one(), BigInt::one());
    let mut qj = BigInt::one();
    loop {
        qj *= &qb;
        num *= &qj;
        den *= &qj - 1;
        let m = &qj * (&qb - 1);
        if &num * precision.denom() <= precision.numer() * &den * (&m - 1) {
            let bits = 128usize;
            let lo = (&num << bits) / &den;
            let hi_den = &den * (&m - 1);
            let hi = ((&num * &m) << bits) + &hi_den - 1;
            let scale: BigInt = BigInt::one() << bits;
            return Interval { lo: BigRational::new(lo, scale.clone()), hi: BigRational::new(hi / hi_den, scale) };
        }
    }
}

fn cq_default(q: u64) -> Interval {
    c_q(q, &default_precision())
}

/// `P[l_B(u) = 0] = (1/q)(1 + (q-1)/q^r)` for a form of rank `r` and `u`
/// drawn from the possibly-zero rank-one model.
pub fn hyperplane_prob(q: u64, r: u32) -> BigRational {
    let qr = q_pow(q, r as u64);
    let qq = q_pow(q, 1);
    (BigRational::one() + (&qq - BigRational::one()) / qr) / qq
}

/// `rho = max_H P[u in H]`, attained by rank-one forms.
pub fn rho(q: u64) -> BigRational {
    hyperplane_prob(q, 1)
}

/// `c'' = (q C_q / (q-1)^2) (1 + 1/(1 - eps))`.
pub fn c_doubleprime(q: u64, epsilon: &BigRational) -> Result<BoundValue> {
    check_epsilon(epsilon)?;
    let factor = prefactor(q) * (BigRational::one() + (BigRational::one() - epsilon).recip());
    Ok(BoundValue::new(cq_default(q).scale(&factor), Formula::CDoublePrime, true))
}

/// `q / (q-1)^2`
fn prefactor(q: u64) -> BigRational {
    let qm1 = BigRational::from_integer(BigInt::from(q - 1));
    BigRational::from_integer(BigInt::from(q)) / (&qm1 * &qm1)
}

fn check_epsilon(epsilon: &BigRational) -> Result<()> {
    if epsilon <= &BigRational::zero() || epsilon >= &BigRational::one() {
        return Err(Error::InvalidArgument(format!("epsilon = {epsilon} not in (0, 1)")));
    }
    Ok(())
}

/// Exact union bound `sum_H P[u in H]^n` over hyperplanes of the `k x l`
/// matrix space: hyperplanes are forms `B != 0` up to scalars, grouped by
/// rank.
pub fn exact_cprime(q: u64, k: u32, l: u32, n: u32) -> Result<BoundValue> {
    if n == 0 {
        return Err(Error::Precondition("exponent n must be >= 1".into()));
    }
    let qm1 = BigRational::from_integer(BigInt::from(q - 1));
    let mut total = BigRational::zero();
    for r in 1..=k.min(l) {
        let count = BigRational::from_integer(count_rank(k, l, r, q).into());
        total += count / &qm1 * pow_rat(&hyperplane_prob(q, r), n);
    }
    Ok(BoundValue::new(Interval::exact(total), Formula::UnionExact, true))
}

pub fn pow_rat(x: &BigRational, e: u32) -> BigRational {
    BigRational::new(x.numer().pow(e), x.denom().pow(e))
}

/// Signed integer power of a positive rational.
pub fn pow_rat_signed(x: &BigRational, e: i64) -> BigRational {
    let p = pow_rat(x, e.unsigned_abs() as u32);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

// Directed-rounding binary floating point for cheap, rigorous comparison of
// huge integer powers. `m * 2^e` with `m` normalized to [2^63, 2^64).
#[derive(Clone, Copy, Debug)]
struct Dyadic {
    m: u64,
    e: i64,
}

impl Dyadic {
    fn from_u64(x: u64) -> Dyadic {
        debug_assert!(x > 0);
        let lz = x.leading_zeros();
        Dyadic { m: x << lz, e: -(lz as i64) }
    }

    fn mul(self, other: Dyadic, up: bool) -> Dyadic {
        let p = self.m as u128 * other.m as u128;
        let shift = if p >> 127 == 1 { 64 } else { 63 };
        let mut m = (p >> shift) as u64;
        let mut e = self.e + other.e + shift as i64;
        if up && p & ((1u128 << shift) - 1) != 0 {
            match m.checked_add(1) {
                Some(v) => m = v,
                None => {
                    m = 1 << 63;
                    e += 1;
                }
            }
        }
        Dyadic { m, e }
    }

    fn pow(base: u64, mut n: u64, up: bool) -> Dyadic {
        let mut acc = Dyadic::from_u64(1);
        let mut b = Dyadic::from_u64(base);
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(b, up);
            }
            n >>= 1;
            if n > 0 {
                b = b.mul(b, up);
            }
        }
        acc
    }

    fn cmp(&self, other: &Dyadic) -> Ordering {
        self.e.cmp(&other.e).then(self.m.cmp(&other.m))
    }
}

/// Decides `a^x >= b^y` for positive integers by directed rounding, falling
/// back to exact big integers when the enclosures overlap.
fn int_pow_ge(a: u64, x: u64, b: u64, y: u64) -> bool {
    let (a_lo, a_hi) = (Dyadic::pow(a, x, false), Dyadic::pow(a, x, true));
    let (b_lo, b_hi) = (Dyadic::pow(b, y, false), Dyadic::pow(b, y, true));
    if a_lo.cmp(&b_hi) != Ordering::Less {
        return true;
    }
    if a_hi.cmp(&b_lo) == Ordering::Less {
        return false;
    }
    BigUint::from(a).pow(x as u32) >= BigUint::from(b).pow(y as u32)
}

/// Whether `q^((1-kappa)^2) >= 1 + (q-1)/q`, decided without logarithms.
///
/// With `kappa = a/b` both sides are raised to the power `b^2`:
/// `q^((b-a)^2 + b^2) >= (2q-1)^(b^2)`.
pub fn kappa_valid(q: u64, kappa: &BigRational) -> bool {
    if kappa <= &BigRational::zero() {
        return false;
    }
    let a = kappa.numer().to_i64().expect("kappa numerator fits i64");
    let b = kappa.denom().to_i64().expect("kappa denominator fits i64");
    let diff = (b - a).unsigned_abs();
    let bb = (b as u64) * (b as u64);
    int_pow_ge(q, diff * diff + bb, 2 * q - 1, bb)
}

/// Whether `2 <= k <= l <= eps q^(kappa k) / ((q-1) k)`.
pub fn param_space_member(k: u32, l: u32, q: u64, epsilon: &BigRational, kappa: &BigRational) -> bool {
    if k < 2 || k > l {
        return false;
    }
    // l (q-1) k / eps <= q^(kappa k), i.e. (u/v)^d <= q^c with kappa k = c/d
    let x = BigRational::from_integer(BigInt::from(l as u64 * (q - 1) * k as u64)) / epsilon;
    let kk = kappa * BigRational::from_integer(BigInt::from(k));
    let c = kk.numer().to_u32().expect("exponent fits u32");
    let d = kk.denom().to_u32().expect("exponent fits u32");
    let lhs = x.numer().pow(d);
    let rhs = BigInt::from(q).pow(c) * x.denom().pow(d);
    lhs <= rhs
}

/// `eps q^(kappa k) / ((q-1) k)`, for display.
pub fn param_space_ceiling(k: u32, q: u64, epsilon: &BigRational, kappa: &BigRational) -> f64 {
    to_f64(epsilon) * (q as f64).powf(to_f64(kappa) * k as f64) / ((q - 1) as f64 * k as f64)
}

/// Probability that `n >= kl` random rank-at-most-one matrices fail to span:
/// `c'' rho^(n - kl)`. Asserted when `(k, l)` is admissible for
/// `(eps, kappa)` and `kappa` satisfies its defining inequality.
pub fn bound_thm_span(
    q: u64,
    k: u32,
    l: u32,
    n: u32,
    epsilon: &BigRational,
    kappa: &BigRational,
) -> Result<BoundValue> {
    let m = k * l;
    if n < m {
        return Err(Error::Precondition(format!("span bound needs n >= kl = {m}, got n = {n}")));
    }
    let c2 = c_doubleprime(q, epsilon)?;
    let value = c2.value.scale(&pow_rat(&rho(q), n - m));
    let asserted = kappa_valid(q, kappa) && param_space_member(k, l, q, epsilon, kappa);
    Ok(BoundValue::new(value, Formula::SpanClosed, asserted))
}

/// Enclosure of `q^(-t/2)`.
fn q_pow_neg_half(q: u64, t: u64) -> Interval {
    if t.is_multiple_of(2) {
        return Interval::exact(q_pow_neg(q, t / 2));
    }
    let base = q_pow_neg(q, t / 2);
    // sqrt(q) in [s / 2^P, (s + 1) / 2^P]
    const P: u32 = 96;
    let scaled = BigUint::from(q) << (2 * P);
    let s = scaled.sqrt();
    let exact_root = &s * &s == scaled;
    let den = BigInt::one() << P;
    let s = BigInt::from(s);
    let root_lo = BigRational::new(s.clone(), den.clone());
    let root_hi = if exact_root { root_lo.clone() } else { BigRational::new(s + 1, den) };
    Interval { lo: &base / root_hi, hi: &base / root_lo }
}

/// Bound on `P[s_w = 0]` for `s_w` a sum of `w` random rank-at-most-one
/// `k x l` matrices, `k <= l`:
/// `(2 q C_q / (q-1)) / q^(kw/2)` for `w < k + l`, and
/// `C_q (1 - q^-(w-l))^-1 / q^(kl)` for `w >= k + l`.
pub fn bound_thm_psw(q: u64, k: u32, l: u32, w: u32) -> Result<BoundValue> {
    if k > l {
        return Err(Error::Precondition(format!("needs k <= l, got k={k} l={l}")));
    }
    if w == 0 {
        return Err(Error::Precondition("needs w >= 1".into()));
    }
    let cq = cq_default(q);
    if w < k + l {
        let factor = BigRational::from_integer(BigInt::from(2 * q)) / BigRational::from_integer(BigInt::from(q - 1));
        let value = cq.scale(&factor).mul(&q_pow_neg_half(q, k as u64 * w as u64));
        Ok(BoundValue::new(value, Formula::PswShort, true))
    } else {
        let tail = (BigRational::one() - q_pow_neg(q, (w - l) as u64)).recip();
        let value = cq.scale(&(tail * q_pow_neg(q, (k * l) as u64)));
        Ok(BoundValue::new(value, Formula::PswLong, true))
    }
}

/// Bound on the probability that `n <= kl` random rank-at-most-one matrices
/// are linearly dependent: `(q C_q/(q-1)^2)(2 eps/(1-eps) + q^-(kl-n))`.
/// Asserted when `(k, l)` is admissible for `(eps, 1/2)`.
pub fn bound_thm_dependent(q: u64, k: u32, l: u32, n: u32, epsilon: &BigRational) -> Result<BoundValue> {
    check_epsilon(epsilon)?;
    let m = k * l;
    if n > m {
        return Err(Error::Precondition(format!("dependence bound needs n <= kl = {m}, got {n}")));
    }
    let inner =
        BigRational::from_integer(2.into()) * epsilon / (BigRational::one() - epsilon) + q_pow_neg(q, (m - n) as u64);
    let value = cq_default(q).scale(&(prefactor(q) * inner));
    let asserted = param_space_member(k, l, q, epsilon, &ratio(1, 2));
    Ok(BoundValue::new(value, Formula::DependenceClosed, asserted))
}

/// `P[dmax((C*C')^perp) >= k + l] <= (q C_q/(q-1)^2) q^-(kl-n)` for
/// `k + l <= n <= kl`.
pub fn bound_thm_dmax(q: u64, k: u32, l: u32, n: u32) -> Result<BoundValue> {
    if n < k + l || n > k * l {
        return Err(Error::Precondition(format!("dmax bound needs k+l <= n <= kl, got k={k} l={l} n={n}")));
    }
    let value = cq_default(q).scale(&(prefactor(q) * q_pow_neg(q, (k * l - n) as u64)));
    Ok(BoundValue::new(value, Formula::DmaxClosed, true))
}

/// `P[dim <u_1..u_n> <= r] <= C_q q^-((n-r)(m-r))` for uniform vectors of
/// `GF(q)^m`.
pub fn bound_prop_toy(q: u64, m: u32, n: u32, r: u32) -> Result<BoundValue> {
    if r > m.min(n) {
        return Err(Error::Precondition(format!("needs r <= min(m, n), got r={r}")));
    }
    let e = (n - r) as u64 * (m - r) as u64;
    let value = cq_default(q).scale(&q_pow_neg(q, e));
    Ok(BoundValue::new(value, Formula::UniformDeficit, true))
}

fn gap_factor(q: u64, g: u32) -> BigRational {
    BigRational::new(BigInt::from(q - 1), BigInt::from(q).pow(g + 1) - 1)
}

/// `P[dim < kl - g] <= c' rho^(n - kl) (q-1)/(q^(g+1) - 1)` with
/// `c' = exact_cprime(q, k, l, kl)`. The `c' rho^(n-m)` step needs
/// `n >= kl`; below that the value is returned unasserted.
pub fn bound_gap_markov(q: u64, k: u32, l: u32, n: u32, g: u32) -> Result<BoundValue> {
    let m = k * l;
    if g > m.min(n) {
        return Err(Error::Precondition(format!("needs g <= min(kl, n), got g={g}")));
    }
    let cprime = exact_cprime(q, k, l, m)?;
    let value = cprime.value.lo * pow_rat_signed(&rho(q), n as i64 - m as i64) * gap_factor(q, g);
    Ok(BoundValue::new(Interval::exact(value), Formula::GapMarkov, n >= m))
}

/// `P[dim < kl - g] <= (sum_H P[u in H]^n) (q-1)/(q^(g+1) - 1)`, valid for
/// every `n`.
pub fn bound_gap_markov_exact(q: u64, k: u32, l: u32, n: u32, g: u32) -> Result<BoundValue> {
    let cprime = exact_cprime(q, k, l, n)?;
    let value = cprime.value.lo * gap_factor(q, g);
    Ok(BoundValue::new(Interval::exact(value), Formula::GapMarkovExact, true))
}

/// Dimension of the degree-`s` part of `F_q[t_1..t_k]/(t_i^q t_j - t_i t_j^q)`,
/// computed as the rank of the evaluation of all degree-`s` monomials at
/// the canonical projective points of `GF(q)^k`.
pub fn chi_q(k: usize, s: usize, q: u64) -> Result<usize> {
    if k == 0 || s == 0 {
        return Err(Error::InvalidArgument("chi_q needs k >= 1 and s >= 1".into()));
    }
    let field = Field::with_order(q)?;
    let points = projective_points(&field, k)?;
    let exponents: Vec<Vec<u32>> = multisets(k, s)
        .into_iter()
        .map(|m| {
            let mut e = vec![0u32; k];
            for i in m {
                e[i] += 1;
            }
            e
        })
        .collect();
    let mut eval = Matrix::zeros(&field, exponents.len(), points.len())?;
    for (r, e) in exponents.iter().enumerate() {
        for (c, pt) in points.iter().enumerate() {
            let v = pt.iter().zip(e).fold(FieldElem::ONE, |acc, (&x, &d)| field.mul(acc, field.pow(x, d as u64)));
            eval.set(r, c, v);
        }
    }
    Ok(eval.rank())
}

/// `q^-m` as an exact rational.
pub fn uniform_zero_prob(q: u64, m: u32) -> BigRational {
    q_pow_neg(q, m as u64)
}
