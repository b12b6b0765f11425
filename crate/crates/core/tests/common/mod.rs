//! Brute-force oracles shared by the integration tests. They only use field
//! arithmetic from the library and do their own elimination.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use starprod::{Field, FieldElem, Matrix};

pub fn vectors(f: &Field, len: usize) -> Vec<Vec<FieldElem>> {
    let q = f.q() as u64;
    (0..q.pow(len as u32))
        .map(|mut x| {
            (0..len)
                .map(|_| {
                    let d = x % q;
                    x /= q;
                    FieldElem(d as u16)
                })
                .collect()
        })
        .collect()
}

/// Reduced echelon rows of the span, used as a canonical key.
pub fn echelon(f: &Field, rows: &[Vec<FieldElem>]) -> Vec<Vec<FieldElem>> {
    let mut m: Vec<Vec<FieldElem>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let inv = f.inv(m[rank][c]).unwrap();
        for x in m[rank].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = f.mul(factor, m[rank][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        rank += 1;
    }
    m.truncate(rank);
    m
}

pub fn naive_rank(f: &Field, rows: &[Vec<FieldElem>]) -> usize {
    echelon(f, rows).len()
}

/// Number of subspaces of each dimension of `GF(q)^m`, found by growing
/// every subspace by one vector at a time.
pub fn subspace_counts(q: u64, m: usize) -> Vec<u64> {
    let f = Field::with_order(q).unwrap();
    let all = vectors(&f, m);
    let mut level: HashSet<Vec<Vec<FieldElem>>> = HashSet::new();
    level.insert(Vec::new());
    let mut counts = vec![1u64];
    for _ in 0..m {
        let mut next = HashSet::new();
        for basis in &level {
            for v in &all {
                let mut rows = basis.clone();
                rows.push(v.clone());
                let e = echelon(&f, &rows);
                if e.len() == basis.len() + 1 {
                    next.insert(e);
                }
            }
        }
        counts.push(next.len() as u64);
        level = next;
    }
    counts
}

/// Number of `k x l` matrices of each rank.
pub fn rank_counts(q: u64, k: usize, l: usize) -> Vec<u64> {
    let f = Field::with_order(q).unwrap();
    let mut counts = vec![0u64; k.min(l) + 1];
    for v in vectors(&f, k * l) {
        let rows: Vec<Vec<FieldElem>> = v.chunks(l).map(|c| c.to_vec()).collect();
        counts[naive_rank(&f, &rows)] += 1;
    }
    counts
}

pub fn factor_pairs(f: &Field, k: usize, l: usize, nonzero: bool) -> Vec<Vec<FieldElem>> {
    let keep = |v: &Vec<FieldElem>| !nonzero || v.iter().any(|x| !x.is_zero());
    let ps: Vec<_> = vectors(f, k).into_iter().filter(keep).collect();
    let qs: Vec<_> = vectors(f, l).into_iter().filter(keep).collect();
    let mut out = Vec::new();
    for p in &ps {
        for qv in &qs {
            let mut u = Vec::with_capacity(k * l);
            for &a in p {
                for &b in qv {
                    u.push(f.mul(a, b));
                }
            }
            out.push(u);
        }
    }
    out
}

fn add_vec(f: &Field, a: &[FieldElem], b: &[FieldElem]) -> Vec<FieldElem> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

/// `P[s_w = 0]` by listing every `w`-tuple of factor pairs.
pub fn ps0_enumerated(q: u64, k: usize, l: usize, w: usize, nonzero: bool) -> BigRational {
    let f = Field::with_order(q).unwrap();
    let us = factor_pairs(&f, k, l, nonzero);
    let zero = vec![FieldElem::ZERO; k * l];
    let mut sums = vec![zero.clone()];
    for _ in 0..w {
        sums = sums.iter().flat_map(|s| us.iter().map(|u| add_vec(&f, s, u))).collect();
    }
    let hits = sums.iter().filter(|s| **s == zero).count();
    BigRational::new(BigInt::from(hits), BigInt::from(us.len()).pow(w as u32))
}

/// Distribution of `rank(M + s_w)` from the unlumped walk on all matrices.
pub fn full_walk_ranks(q: u64, k: usize, l: usize, nonzero: bool, start: &[FieldElem], w: usize) -> Vec<BigRational> {
    let f = Field::with_order(q).unwrap();
    let us = factor_pairs(&f, k, l, nonzero);
    let total = BigInt::from(us.len());
    let mut dist: HashMap<Vec<FieldElem>, BigInt> = HashMap::new();
    dist.insert(start.to_vec(), BigInt::from(1));
    for _ in 0..w {
        let mut next: HashMap<Vec<FieldElem>, BigInt> = HashMap::new();
        for (m, c) in &dist {
            for u in &us {
                *next.entry(add_vec(&f, m, u)).or_default() += c;
            }
        }
        dist = next;
    }
    let mut out = vec![BigRational::from_integer(0.into()); k.min(l) + 1];
    let den = total.pow(w as u32);
    for (m, c) in dist {
        let rows: Vec<Vec<FieldElem>> = m.chunks(l).map(|c| c.to_vec()).collect();
        out[naive_rank(&f, &rows)] += BigRational::new(c, den.clone());
    }
    out
}

/// `C(k+s-1, s)` minus the dimension of the degree-`s` part of the ideal
/// generated by `t_i^q t_j - t_i t_j^q`.
pub fn chi_quotient(k: usize, s: usize, q: u64) -> usize {
    let f = Field::with_order(q).unwrap();
    let deg = |e: &[usize]| e.iter().sum::<usize>();
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    let mut stack = vec![(Vec::new(), 0usize)];
    while let Some((e, d)) = stack.pop() {
        if e.len() == k {
            if d == s {
                monomials.push(e);
            }
            continue;
        }
        for a in 0..=(s - d) {
            let mut e2 = e.clone();
            e2.push(a);
            stack.push((e2, d + a));
        }
    }
    monomials.sort();
    let index: HashMap<Vec<usize>, usize> = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    let qd = q as usize;
    let mut rows: Vec<Vec<FieldElem>> = Vec::new();
    if s > qd {
        for mult in all_monomials(k, s - qd - 1) {
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let mut a = mult.clone();
                    a[i] += qd;
                    a[j] += 1;
                    let mut b = mult.clone();
                    b[i] += 1;
                    b[j] += qd;
                    debug_assert_eq!(deg(&a), s);
                    let mut row = vec![FieldElem::ZERO; monomials.len()];
                    row[index[&a]] = f.add(row[index[&a]], FieldElem::ONE);
                    row[index[&b]] = f.sub(row[index[&b]], FieldElem::ONE);
                    rows.push(row);
                }
            }
        }
    }
    monomials.len() - if rows.is_empty() { 0 } else { naive_rank(&f, &rows) }
}

fn all_monomials(k: usize, d: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for a in 0..=d {
        for mut rest in all_monomials(k - 1, d - a) {
            rest.insert(0, a);
            out.push(rest);
        }
    }
    out
}

pub fn random_matrix<R: Rng>(f: &Field, rows: usize, cols: usize, rng: &mut R) -> Matrix {
    let vals: Vec<u32> = (0..rows * cols).map(|_| rng.random_range(0..f.q())).collect();
    Matrix::from_values(f, rows, cols, &vals).unwrap()
}

pub fn random_invertible<R: Rng>(f: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = random_matrix(f, n, n, rng);
        if naive_rank(f, &m.row_vecs()) == n {
            return m;
        }
    }
}
