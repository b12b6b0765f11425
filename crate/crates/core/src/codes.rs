//! Linear codes, star products and standard constructions.
//!
//! A code is the row space of a generator matrix. Generators are not forced
//! to full rank; `dim` is the rank. Weight enumeration is exhaustive with a
//! hard size guard, and doubles as an oracle for everything built on top.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem};
use crate::linalg::Matrix;

/// Largest number of codewords enumerated by [`LinearCode::weight_enumerator`].
pub const MAX_CODEWORDS: u64 = 1 << 26;

#[derive(Clone, Debug)]
pub struct LinearCode {
    gen: Matrix,
    dim: usize,
}

/// `(a, b, g)`: every `a` columns of a full-rank generator are independent,
/// every `b` columns span, and the column set is in `g`-almost general
/// position.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneralPosition {
    pub a: usize,
    pub b: usize,
    pub g: i64,
}

/// Componentwise product of two words.
pub fn star(field: &Field, x: &[FieldElem], y: &[FieldElem]) -> Vec<FieldElem> {
    x.iter().zip(y).map(|(&a, &b)| field.mul(a, b)).collect()
}

pub fn hamming_weight(x: &[FieldElem]) -> usize {
    x.iter().filter(|v| !v.is_zero()).count()
}

fn q_pow_guarded(q: u32, exp: usize, limit: u64) -> Option<u64> {
    let mut acc = 1u64;
    for _ in 0..exp {
        acc = acc.checked_mul(q as u64)?;
        if acc > limit {
            return None;
        }
    }
    Some(acc)
}

/// Generator of `C * C'` whose rows are all products `x_i * y_j` of the rows
/// of `g1` and `g2`, row index `i * rows(g2) + j`.
pub fn product_generator_rows(g1: &Matrix, g2: &Matrix) -> Result<Matrix> {
    if g1.field() != g2.field() {
        return Err(Error::FieldMismatch);
    }
    if g1.cols() != g2.cols() {
        return Err(Error::DimensionMismatch(format!("code lengths {} and {}", g1.cols(), g2.cols())));
    }
    let f = g1.field();
    let n = g1.cols();
    let mut data = Vec::with_capacity(g1.rows() * g2.rows() * n);
    for i in 0..g1.rows() {
        for j in 0..g2.rows() {
            data.extend(star(f, g1.row(i), g2.row(j)));
        }
    }
    Matrix::from_elems(f, g1.rows() * g2.rows(), n, data)
}

/// Generator of `C * C'` assembled column by column: column `t` is the
/// flattened rank-at-most-one matrix `p_t q_t^T` built from column `t` of
/// each generator.
pub fn product_generator_columns(g1: &Matrix, g2: &Matrix) -> Result<Matrix> {
    if g1.field() != g2.field() {
        return Err(Error::FieldMismatch);
    }
    if g1.cols() != g2.cols() {
        return Err(Error::DimensionMismatch(format!("code lengths {} and {}", g1.cols(), g2.cols())));
    }
    let f = g1.field();
    let (k, l, n) = (g1.rows(), g2.rows(), g1.cols());
    let mut out = Matrix::zeros(f, k * l, n)?;
    for t in 0..n {
        let p: Vec<FieldElem> = (0..k).map(|i| g1.get(i, t)).collect();
        let q: Vec<FieldElem> = (0..l).map(|j| g2.get(j, t)).collect();
        let column = Matrix::outer(f, &p, &q)?.vec();
        for (r, v) in column.into_iter().enumerate() {
            out.set(r, t, v);
        }
    }
    Ok(out)
}

/// Multisets of size `s` drawn from `0..k`, as nondecreasing index vectors in
/// lexicographic order.
pub fn multisets(k: usize, s: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, k: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for i in start..k {
            cur.push(i);
            rec(i, k, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, k, s, &mut Vec::with_capacity(s), &mut out);
    out
}

/// Canonical representatives of the projective points of GF(q)^k: first
/// nonzero coordinate equal to 1, ordered by the integer whose base-q digits
/// are the coordinates (coordinate 0 least significant).
pub fn projective_points(field: &Field, k: usize) -> Result<Vec<Vec<FieldElem>>> {
    let q = field.q();
    let total = q_pow_guarded(q, k, MAX_CODEWORDS).ok_or(Error::CodeTooLarge { q, dim: k })?;
    let mut points = Vec::new();
    for v in 1..total {
        let mut x = v;
        let coords: Vec<FieldElem> = (0..k)
            .map(|_| {
                let d = (x % q as u64) as u16;
                x /= q as u64;
                FieldElem(d)
            })
            .collect();
        if coords.iter().find(|c| !c.is_zero()) == Some(&FieldElem::ONE) {
            points.push(coords);
        }
    }
    Ok(points)
}

impl LinearCode {
    pub fn new(gen: Matrix) -> LinearCode {
        let dim = gen.rank();
        LinearCode { gen, dim }
    }

    pub fn from_values(field: &Field, rows: usize, n: usize, values: &[u32]) -> Result<LinearCode> {
        Ok(LinearCode::new(Matrix::from_values(field, rows, n, values)?))
    }

    pub fn zero(field: &Field, n: usize) -> Result<LinearCode> {
        Ok(LinearCode::new(Matrix::zeros(field, 0, n)?))
    }

    pub fn full(field: &Field, n: usize) -> Result<LinearCode> {
        Ok(LinearCode::new(Matrix::identity(field, n)?))
    }

    /// The code spanned by the all-ones word, the identity for `*`.
    pub fn all_ones(field: &Field, n: usize) -> Result<LinearCode> {
        Ok(LinearCode::new(Matrix::from_elems(field, 1, n, vec![FieldElem::ONE; n])?))
    }

    pub fn field(&self) -> &Field {
        self.gen.field()
    }

    pub fn length(&self) -> usize {
        self.gen.cols()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator(&self) -> &Matrix {
        &self.gen
    }

    /// Canonical basis (reduced row echelon rows).
    pub fn basis(&self) -> Matrix {
        self.gen.row_basis()
    }

    pub fn same_code(&self, other: &LinearCode) -> Result<bool> {
        self.gen.row_space_equal(&other.gen)
    }

    /// C + C'
    pub fn sum(&self, other: &LinearCode) -> Result<LinearCode> {
        Ok(LinearCode::new(self.gen.vstack(&other.gen)?))
    }

    pub fn is_subcode_of(&self, other: &LinearCode) -> Result<bool> {
        Ok(self.sum(other)?.dim == other.dim)
    }

    pub fn intersection_dim(&self, other: &LinearCode) -> Result<usize> {
        Ok(self.dim + other.dim - self.sum(other)?.dim)
    }

    pub fn contains(&self, word: &[FieldElem]) -> Result<bool> {
        let w = Matrix::from_elems(self.field(), 1, word.len(), word.to_vec())?;
        self.sum(&LinearCode::new(w)).map(|s| s.dim == self.dim)
    }

    fn check_compatible(&self, other: &LinearCode) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        if self.length() != other.length() {
            return Err(Error::DimensionMismatch(format!("code lengths {} and {}", self.length(), other.length())));
        }
        Ok(())
    }

    /// `C * C'`, spanned by the products of basis rows.
    pub fn star_product(&self, other: &LinearCode) -> Result<LinearCode> {
        self.check_compatible(other)?;
        let gen = product_generator_rows(&self.basis(), &other.basis())?;
        let out = LinearCode::new(gen);
        assert!(out.dim <= self.length().min(self.dim * other.dim));
        Ok(out)
    }

    /// `C^{*s}`, spanned by all degree-`s` star monomials in the basis rows.
    pub fn star_power(&self, s: usize) -> Result<LinearCode> {
        if s == 0 {
            return Err(Error::InvalidArgument("star power exponent must be >= 1".into()));
        }
        let f = self.field();
        let basis = self.basis();
        let n = self.length();
        let monomials = multisets(basis.rows(), s);
        let mut rows = Vec::with_capacity(monomials.len());
        for mono in &monomials {
            let mut w = vec![FieldElem::ONE; n];
            for &i in mono {
                w = star(f, &w, basis.row(i));
            }
            rows.push(w);
        }
        let gen = if rows.is_empty() { Matrix::zeros(f, 0, n)? } else { Matrix::from_rows(f, &rows)? };
        let out = LinearCode::new(gen);
        assert!(out.dim <= n.min(monomials.len()));
        Ok(out)
    }

    pub fn dual(&self) -> LinearCode {
        LinearCode::new(self.gen.kernel())
    }

    /// Number of codewords of each weight `0..=n`.
    ///
    /// Enumerates whichever of `C` and its dual is smaller and applies the
    /// MacWilliams transform when it is the dual; fails with `CodeTooLarge`
    /// when both exceed 2^26 words.
    pub fn weight_enumerator(&self) -> Result<Vec<u64>> {
        let q = self.field().q();
        let n = self.length();
        if q_pow_guarded(q, self.dim, MAX_CODEWORDS).is_some() {
            return Ok(enumerate_weights(&self.basis()));
        }
        if q_pow_guarded(q, n - self.dim, MAX_CODEWORDS).is_some()
            && q_pow_guarded(q, self.dim, i64::MAX as u64).is_some()
        {
            let dual = self.dual();
            let dual_counts = enumerate_weights(&dual.basis());
            return Ok(macwilliams(&dual_counts, n, q, dual.dim));
        }
        Err(Error::CodeTooLarge { q, dim: self.dim })
    }

    pub fn dmin(&self) -> Result<usize> {
        if self.dim == 0 {
            return Err(Error::ZeroCode);
        }
        let we = self.weight_enumerator()?;
        Ok((1..we.len()).find(|&w| we[w] > 0).expect("nonzero code"))
    }

    pub fn dmax(&self) -> Result<usize> {
        if self.dim == 0 {
            return Err(Error::ZeroCode);
        }
        let we = self.weight_enumerator()?;
        Ok((0..we.len()).rev().find(|&w| we[w] > 0).expect("nonzero code"))
    }

    /// `a = dmin(C^perp) - 1`, `b = n - dmin(C) + 1`,
    /// `g = min(dim C - a, b - dim C)`. When the dual is the zero code every
    /// column subset is independent and `a = n`.
    pub fn general_position_profile(&self) -> Result<GeneralPosition> {
        let n = self.length();
        let dual = self.dual();
        let a = if dual.dim == 0 { n } else { dual.dmin()? - 1 };
        let b = n - self.dmin()? + 1;
        let k = self.dim as i64;
        let g = (k - a as i64).min(b as i64 - k);
        Ok(GeneralPosition { a, b, g })
    }

    /// Tensor product code of length `n * n'`; coordinate `(s, t)` sits at
    /// index `s * n' + t`.
    pub fn tensor(&self, other: &LinearCode) -> Result<LinearCode> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch);
        }
        let f = self.field();
        let (g1, g2) = (self.basis(), other.basis());
        let (n1, n2) = (g1.cols(), g2.cols());
        let mut out = Matrix::zeros(f, g1.rows() * g2.rows(), n1 * n2)?;
        for i in 0..g1.rows() {
            for j in 0..g2.rows() {
                let r = i * g2.rows() + j;
                for s in 0..n1 {
                    for t in 0..n2 {
                        out.set(r, s * n2 + t, f.mul(g1.get(i, s), g2.get(j, t)));
                    }
                }
            }
        }
        Ok(LinearCode::new(out))
    }
}

/// The q-ary simplex code: one generator column per projective point.
pub fn simplex_code(field: &Field, k: usize) -> Result<LinearCode> {
    let points = projective_points(field, k)?;
    let mut gen = Matrix::zeros(field, k, points.len())?;
    for (t, pt) in points.iter().enumerate() {
        for (i, &x) in pt.iter().enumerate() {
            gen.set(i, t, x);
        }
    }
    Ok(LinearCode::new(gen))
}

/// Reed-Solomon code: row `i` evaluates `x^i` at the given distinct points.
pub fn rs_code(field: &Field, k: usize, n: usize, eval_points: &[FieldElem]) -> Result<LinearCode> {
    if eval_points.len() != n {
        return Err(Error::InvalidArgument(format!("{} evaluation points for length {n}", eval_points.len())));
    }
    if k > n || n as u64 > field.q() as u64 {
        return Err(Error::Precondition(format!("Reed-Solomon needs k <= n <= q, got k={k} n={n} q={}", field.q())));
    }
    let mut seen = std::collections::HashSet::new();
    for p in eval_points {
        if p.value() >= field.q() || !seen.insert(*p) {
            return Err(Error::InvalidArgument("evaluation points must be distinct field elements".into()));
        }
    }
    let mut gen = Matrix::zeros(field, k, n)?;
    for (t, &x) in eval_points.iter().enumerate() {
        let mut pw = FieldElem::ONE;
        for i in 0..k {
            gen.set(i, t, pw);
            pw = field.mul(pw, x);
        }
    }
    Ok(LinearCode::new(gen))
}

/// Reed-Solomon code evaluated at the first `n` field elements `0, 1, ...`.
pub fn rs_code_standard(field: &Field, k: usize, n: usize) -> Result<LinearCode> {
    let pts: Vec<FieldElem> = field.elements().take(n).collect();
    rs_code(field, k, n, &pts)
}

pub fn tensor_code(a: &LinearCode, b: &LinearCode) -> Result<LinearCode> {
    a.tensor(b)
}

/// Weight counts of the span of the rows of `basis` (assumed independent).
fn enumerate_weights(basis: &Matrix) -> Vec<u64> {
    let n = basis.cols();
    let k = basis.rows();
    let f = basis.field();
    let q = f.q() as u64;
    // Split on the top `split` coefficients so chunks can run in parallel;
    // the total does not depend on how chunks are scheduled.
    let mut split = 0;
    let mut chunks = 1u64;
    while split < k && chunks < 256 && q.pow((k - split) as u32) > 1 << 14 {
        split += 1;
        chunks *= q;
    }
    let low = k - split;
    let partials: Vec<Vec<u64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut start = vec![FieldElem::ZERO; n];
            let mut x = c;
            for i in low..k {
                let coeff = FieldElem((x % q) as u16);
                x /= q;
                f.sub_scaled(&mut start, basis.row(i), f.neg(coeff));
            }
            if f.is_binary() {
                enumerate_chunk_gf2(basis, low, &start)
            } else {
                enumerate_chunk(basis, low, start)
            }
        })
        .collect();
    let mut counts = vec![0u64; n + 1];
    for part in partials {
        for (c, p) in counts.iter_mut().zip(part) {
            *c += p;
        }
    }
    counts
}

/// Odometer over the coefficients of the first `low` basis rows.
fn enumerate_chunk(basis: &Matrix, low: usize, mut word: Vec<FieldElem>) -> Vec<u64> {
    let f = basis.field();
    let q = f.q();
    let n = basis.cols();
    let mut counts = vec![0u64; n + 1];
    let mut coeffs = vec![0u32; low];
    counts[hamming_weight(&word)] += 1;
    'outer: loop {
        let mut i = 0;
        loop {
            if i == low {
                break 'outer;
            }
            let old = FieldElem(coeffs[i] as u16);
            let next = coeffs[i] + 1;
            let new = if next < q { next } else { 0 };
            // word += (new - old) * row_i
            let delta = f.sub(FieldElem(new as u16), old);
            f.sub_scaled(&mut word, basis.row(i), f.neg(delta));
            coeffs[i] = new;
            if new != 0 {
                break;
            }
            i += 1;
        }
        counts[hamming_weight(&word)] += 1;
    }
    counts
}

/// Gray-code walk over GF(2) combinations of the first `low` rows.
fn enumerate_chunk_gf2(basis: &Matrix, low: usize, start: &[FieldElem]) -> Vec<u64> {
    let n = basis.cols();
    let words = n.div_ceil(64).max(1);
    let pack = |row: &[FieldElem]| {
        let mut w = vec![0u64; words];
        for (j, x) in row.iter().enumerate() {
            if x.0 & 1 == 1 {
                w[j / 64] |= 1 << (j % 64);
            }
        }
        w
    };
    let rows: Vec<Vec<u64>> = (0..low).map(|i| pack(basis.row(i))).collect();
    let mut cur = pack(start);
    let mut counts = vec![0u64; n + 1];
    let weight = |w: &[u64]| w.iter().map(|x| x.count_ones() as usize).sum::<usize>();
    counts[weight(&cur)] += 1;
    for step in 1u64..(1u64 << low) {
        let i = step.trailing_zeros() as usize;
        for (c, r) in cur.iter_mut().zip(&rows[i]) {
            *c ^= r;
        }
        counts[weight(&cur)] += 1;
    }
    counts
}

fn binom_big(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::from(1);
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

/// Weight enumerator of the dual from that of a code of dimension `dim`,
/// via Krawtchouk polynomials.
pub fn macwilliams(counts: &[u64], n: usize, q: u32, dim: usize) -> Vec<u64> {
    let size = BigInt::from(q).pow(dim as u32);
    let qm1 = BigInt::from(q - 1);
    (0..=n)
        .map(|w| {
            let mut total = BigInt::zero();
            for (j, &a) in counts.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let mut kraw = BigInt::zero();
                for i in 0..=w.min(j) {
                    let term = binom_big(j, i) * binom_big(n - j, w - i) * qm1.pow((w - i) as u32);
                    if i % 2 == 0 {
                        kraw += term;
                    } else {
                        kraw -= term;
                    }
                }
                total += BigInt::from(a) * kraw;
            }
            assert!((&total % &size).is_zero() && !total.is_negative());
            (total / &size).to_u64().expect("fits in u64")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn gf(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn code(f: &Field, rows: &[&str]) -> LinearCode {
        let vals: Vec<u32> = rows.iter().flat_map(|r| r.chars().map(|c| c.to_digit(10).unwrap())).collect();
        LinearCode::from_values(f, rows.len(), rows[0].len(), &vals).unwrap()
    }

    fn random_code(f: &Field, k: usize, n: usize, rng: &mut ChaCha8Rng) -> LinearCode {
        let vals: Vec<u32> = (0..k * n).map(|_| rng.random_range(0..f.q())).collect();
        LinearCode::from_values(f, k, n, &vals).unwrap()
    }

    /// Oracle: list every codeword as a coefficient combination of the raw
    /// generator rows and count distinct words by weight.
    fn brute_enumerator(c: &LinearCode) -> Vec<u64> {
        let f = c.field();
        let g = c.generator();
        let q = f.q() as usize;
        let mut words = std::collections::HashSet::new();
        for idx in 0..q.pow(g.rows() as u32) {
            let mut w = vec![FieldElem::ZERO; g.cols()];
            let mut x = idx;
            for i in 0..g.rows() {
                let coeff = FieldElem((x % q) as u16);
                x /= q;
                f.sub_scaled(&mut w, g.row(i), f.neg(coeff));
            }
            words.insert(w);
        }
        let mut counts = vec![0u64; g.cols() + 1];
        for w in words {
            counts[hamming_weight(&w)] += 1;
        }
        counts
    }

    #[test]
    fn star_product_examples() {
        let f = gf(2);
        let c = code(&f, &["1100", "0011"]);
        let p = c.star_product(&c).unwrap();
        assert_eq!(p.dim(), 2);
        assert!(p.same_code(&c).unwrap());

        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let f9 = gf(9);
        let c = random_code(&f9, 3, 7, &mut rng);
        let ones = LinearCode::all_ones(&f9, 7).unwrap();
        assert!(c.star_product(&ones).unwrap().same_code(&c).unwrap());
        assert!(c.star_product(&LinearCode::zero(&f9, 6).unwrap()).is_err());
    }

    #[test]
    fn product_descriptions_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..100 {
            let q = [2u64, 3, 4, 5][rng.random_range(0..4)];
            let f = gf(q);
            let (k, l, n) = (rng.random_range(1..5), rng.random_range(1..5), rng.random_range(1..14));
            let g1 = random_code(&f, k, n, &mut rng);
            let g2 = random_code(&f, l, n, &mut rng);
            let by_rows = product_generator_rows(g1.generator(), g2.generator()).unwrap();
            let by_cols = product_generator_columns(g1.generator(), g2.generator()).unwrap();
            assert!(by_rows.row_space_equal(&by_cols).unwrap());
            let prod = g1.star_product(&g2).unwrap();
            assert_eq!(prod.dim(), by_cols.rank());
        }
    }

    #[test]
    fn star_product_is_commutative_and_monotone() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = gf(3);
        for _ in 0..30 {
            let c = random_code(&f, 2, 8, &mut rng);
            let extra = random_code(&f, 1, 8, &mut rng);
            let d = c.sum(&extra).unwrap();
            let c2 = random_code(&f, 3, 8, &mut rng);
            let a = c.star_product(&c2).unwrap();
            assert!(a.same_code(&c2.star_product(&c).unwrap()).unwrap());
            assert!(a.is_subcode_of(&d.star_product(&c2).unwrap()).unwrap());
            let sq = c2.star_power(2).unwrap();
            assert!(sq.dim() <= 6);
            assert!(sq.same_code(&c2.star_product(&c2).unwrap()).unwrap());
        }
    }

    #[test]
    fn star_power_examples() {
        let f = gf(2);
        let c = code(&f, &["1101", "0111"]);
        assert!(c.star_power(1).unwrap().same_code(&c).unwrap());
        assert!(c.star_power(0).is_err());
        let s3 = simplex_code(&f, 3).unwrap();
        assert_eq!(s3.length(), 7);
        // the 6 monomial rows x_i * x_j
        assert_eq!(multisets(3, 2).len(), 6);
        assert_eq!(s3.star_power(2).unwrap().dim(), 6);
    }

    #[test]
    fn dual_examples() {
        let f = gf(2);
        assert_eq!(LinearCode::full(&f, 5).unwrap().dual().dim(), 0);
        let d = code(&f, &["111"]).dual();
        assert_eq!(d.dim(), 2);
        assert!(d.same_code(&code(&f, &["110", "011"])).unwrap());
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for q in [2u64, 4, 7] {
            let f = gf(q);
            for _ in 0..20 {
                let c = random_code(&f, 3, 6, &mut rng);
                let d = c.dual();
                assert_eq!(d.dim(), 6 - c.dim());
                assert!(d.dual().same_code(&c).unwrap());
                if d.dim() > 0 {
                    assert!(c.generator().mul(&d.generator().transpose()).unwrap().is_zero());
                }
            }
        }
    }

    #[test]
    fn distances_and_enumerators() {
        let f = gf(5);
        let full = LinearCode::full(&f, 3).unwrap();
        assert_eq!(full.dmin().unwrap(), 1);
        assert_eq!(full.dmax().unwrap(), 3);
        let s2 = simplex_code(&gf(2), 2).unwrap();
        assert_eq!(s2.weight_enumerator().unwrap(), vec![1, 0, 3, 0]);
        assert_eq!((s2.dmin().unwrap(), s2.dmax().unwrap()), (2, 2));
        let rep = LinearCode::all_ones(&gf(3), 4).unwrap();
        assert_eq!(rep.weight_enumerator().unwrap(), vec![1, 0, 0, 0, 2]);
        let zero = LinearCode::zero(&f, 4).unwrap();
        assert_eq!(zero.dmin(), Err(Error::ZeroCode));
        assert_eq!(zero.dmax(), Err(Error::ZeroCode));
    }

    #[test]
    fn enumerator_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for q in [2u64, 3, 4, 5, 8] {
            let f = gf(q);
            for _ in 0..10 {
                let k = rng.random_range(1..5);
                let c = random_code(&f, k, 9, &mut rng);
                let we = c.weight_enumerator().unwrap();
                assert_eq!(we, brute_enumerator(&c));
                assert_eq!(we.iter().sum::<u64>(), q.pow(c.dim() as u32));
            }
        }
    }

    #[test]
    fn parallel_chunks_cover_large_binary_code() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let f = gf(2);
        let c = random_code(&f, 20, 40, &mut rng);
        let we = c.weight_enumerator().unwrap();
        assert_eq!(we.iter().sum::<u64>(), 1 << c.dim());
        let f3 = gf(3);
        let c3 = random_code(&f3, 10, 16, &mut rng);
        let we3 = c3.weight_enumerator().unwrap();
        assert_eq!(we3.iter().sum::<u64>(), 3u64.pow(c3.dim() as u32));
        assert_eq!(we3[0], 1);
    }

    #[test]
    fn macwilliams_matches_direct_dual_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        for q in [2u64, 3, 4] {
            let f = gf(q);
            for _ in 0..10 {
                let c = random_code(&f, 3, 7, &mut rng);
                let direct = c.dual().weight_enumerator().unwrap();
                let via = macwilliams(&c.weight_enumerator().unwrap(), 7, q as u32, c.dim());
                assert_eq!(direct, via);
            }
        }
    }

    #[test]
    fn enumerator_guard() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        let f = gf(2);
        let c = random_code(&f, 30, 70, &mut rng);
        assert!(matches!(c.weight_enumerator(), Err(Error::CodeTooLarge { .. })));
        // a big code with a small dual goes through MacWilliams
        let s3 = simplex_code(&f, 3).unwrap();
        let t = s3.tensor(&s3).unwrap().dual();
        assert_eq!(t.dim(), 40);
        let we = t.weight_enumerator().unwrap();
        assert_eq!(we.iter().sum::<u64>(), 1 << 40);
    }

    #[test]
    fn general_position_examples() {
        let f = gf(3);
        let id = LinearCode::full(&f, 4).unwrap();
        let gp = id.general_position_profile().unwrap();
        assert_eq!(gp, GeneralPosition { a: 4, b: 4, g: 0 });

        let s2 = simplex_code(&gf(2), 2).unwrap();
        assert_eq!(s2.dual().dmin().unwrap(), 3);
        assert_eq!(s2.general_position_profile().unwrap(), GeneralPosition { a: 2, b: 2, g: 0 });

        let rep_col = LinearCode::from_values(&f, 2, 4, &[1, 1, 0, 1, 2, 2, 1, 0]).unwrap();
        assert!(rep_col.general_position_profile().unwrap().a <= 1);
    }

    fn subsets(n: usize, size: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n)
            .filter(|m| m.count_ones() as usize == size)
            .map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect())
            .collect()
    }

    #[test]
    fn profile_matches_column_subsets() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        for q in [2u64, 3] {
            let f = gf(q);
            for _ in 0..15 {
                let c = random_code(&f, 3, 7, &mut rng);
                if c.dim() == 0 {
                    continue;
                }
                let g = c.basis();
                let gp = c.general_position_profile().unwrap();
                for s in subsets(7, gp.a) {
                    assert_eq!(g.select_cols(&s).rank(), gp.a);
                }
                for s in subsets(7, gp.b) {
                    assert_eq!(g.select_cols(&s).rank(), c.dim());
                }
                // a + 1 columns can be dependent, b - 1 can fail to span
                if gp.a < c.dim() {
                    assert!(subsets(7, gp.a + 1).iter().any(|s| g.select_cols(s).rank() <= gp.a));
                }
                assert!(gp.g >= 0);
            }
        }
    }

    #[test]
    fn constructions() {
        let f2 = gf(2);
        let s2 = simplex_code(&f2, 2).unwrap();
        let expected = Matrix::from_values(&f2, 2, 3, &[1, 0, 1, 0, 1, 1]).unwrap();
        assert_eq!(s2.generator(), &expected);
        let f3 = gf(3);
        let rs = rs_code(&f3, 2, 3, &[FieldElem(0), FieldElem(1), FieldElem(2)]).unwrap();
        assert_eq!(rs.generator(), &Matrix::from_values(&f3, 2, 3, &[1, 1, 1, 0, 1, 2]).unwrap());
        assert_eq!(rs.dim(), 2);
        assert!(rs_code(&f3, 2, 2, &[FieldElem(1), FieldElem(1)]).is_err());
        assert!(rs_code_standard(&f3, 2, 4).is_err());
        let s3 = simplex_code(&gf(3), 3).unwrap();
        assert_eq!(s3.length(), 13);
        assert_eq!(s3.dim(), 3);
    }

    #[test]
    fn rs_square_dimension() {
        let f = gf(11);
        let rs = rs_code_standard(&f, 4, 11).unwrap();
        assert_eq!(rs.star_product(&rs).unwrap().dim(), 7);
        for k in 1..=6 {
            let c = rs_code_standard(&f, k, 11).unwrap();
            assert_eq!(c.star_power(2).unwrap().dim(), 11.min(2 * k - 1));
        }
    }

    #[test]
    fn tensor_code_dimension() {
        let f = gf(2);
        let a = simplex_code(&f, 2).unwrap();
        let b = simplex_code(&f, 3).unwrap();
        let t = tensor_code(&a, &b).unwrap();
        assert_eq!((t.length(), t.dim()), (21, 6));
        assert_eq!(t.dual().dim(), 15);
    }
}
