use std::sync::OnceLock;

use proptest::prelude::*;
use starprod::gf::prime_power;
use starprod::{Error, Field, FieldElem};

const ORDERS: [u64; 14] = [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 64, 256, 65536];

fn fields() -> &'static [Field] {
    static FIELDS: OnceLock<Vec<Field>> = OnceLock::new();
    FIELDS.get_or_init(|| ORDERS.iter().map(|&q| Field::with_order(q).unwrap()).collect())
}

fn field_and_triple() -> impl Strategy<Value = (Field, FieldElem, FieldElem, FieldElem)> {
    prop::sample::select(fields().to_vec()).prop_flat_map(|f| {
        let q = f.q() as u64;
        let e = (0..q).prop_map(|v| FieldElem(v as u16));
        (Just(f), e.clone(), e.clone(), e)
    })
}

proptest! {
    #[test]
    fn field_axioms((f, a, b, c) in field_and_triple()) {
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, FieldElem::ZERO), a);
        prop_assert_eq!(f.mul(a, FieldElem::ONE), a);
        prop_assert_eq!(f.add(a, f.neg(a)), FieldElem::ZERO);
        prop_assert_eq!(f.add(f.sub(a, b), b), a);
        prop_assert!(a.value() < f.q());
        if !a.is_zero() {
            let inv = f.inv(a).unwrap();
            prop_assert_eq!(f.mul(a, inv), FieldElem::ONE);
            prop_assert_eq!(f.div(f.mul(b, a), a).unwrap(), b);
        } else {
            prop_assert_eq!(f.inv(a), Err(Error::DivisionByZero));
        }
        // Frobenius fixes every element and is additive
        prop_assert_eq!(f.pow(a, f.q() as u64), a);
        let p = f.p() as u64;
        prop_assert_eq!(f.pow(f.add(a, b), p), f.add(f.pow(a, p), f.pow(b, p)));
    }
}

/// `a(x) mod m(x)` over GF(p), coefficients low degree first.
fn poly_rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    let dm = m.len() - 1;
    let lead_inv = (1..p).find(|x| x * m[dm] % p == 1).unwrap();
    while r.len() > dm {
        let top = *r.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = r.len() - 1 - dm;
            for (i, &mi) in m.iter().enumerate() {
                r[shift + i] = (r[shift + i] + p - c * mi % p) % p;
            }
        }
        r.pop();
    }
    r
}

fn monic_polys(p: u64, deg: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for mut x in 0..p.pow(deg as u32) {
        let mut c = Vec::with_capacity(deg + 1);
        for _ in 0..deg {
            c.push(x % p);
            x /= p;
        }
        c.push(1);
        out.push(c);
    }
    out
}

fn irreducible(m: &[u64], p: u64) -> bool {
    let e = m.len() - 1;
    (1..=e / 2).all(|d| monic_polys(p, d).iter().all(|g| poly_rem(m, g, p).iter().any(|&c| c != 0)))
}

#[test]
fn modulus_is_smallest_irreducible() {
    for q in [4u64, 8, 9, 16, 25, 27, 32, 49, 64, 81, 125, 243] {
        let (p, e) = prime_power(q).unwrap();
        let f = Field::with_order(q).unwrap();
        let m: Vec<u64> = f.modulus().iter().map(|&c| c as u64).collect();
        assert_eq!(m.len(), e as usize + 1, "q={q}");
        assert!(irreducible(&m, p), "q={q}: modulus {m:?} reducible");
        // Vec ordering compares c_0 first, then c_1, ...
        let best = monic_polys(p, e as usize).into_iter().filter(|c| irreducible(c, p)).min().unwrap();
        assert_eq!(m, best, "q={q}");
    }
}

#[test]
fn gf16_and_gf4_examples() {
    let f16 = Field::with_order(16).unwrap();
    // x^4 + x^3 + 1 precedes x^4 + x + 1 when c_1 is compared first
    assert_eq!(f16.modulus(), &[1, 0, 0, 1, 1]);
    let f4 = Field::with_order(4).unwrap();
    // x * x = x + 1
    assert_eq!(f4.mul(FieldElem(2), FieldElem(2)), FieldElem(3));
}

#[test]
fn multiplicative_group_generator() {
    for f in fields() {
        let q = f.q() as u64;
        let Some(g) = f.generator() else {
            assert_eq!(f.e(), 1, "q={q}: extension field without a generator");
            continue;
        };
        let mut seen = vec![false; q as usize];
        let mut x = FieldElem::ONE;
        for _ in 0..q - 1 {
            assert!(!seen[x.value() as usize], "q={q}: generator order below q-1");
            seen[x.value() as usize] = true;
            x = f.mul(x, g);
        }
        assert_eq!(x, FieldElem::ONE, "q={q}: period is not q-1");
    }
}

#[test]
fn rejects_bad_orders() {
    assert_eq!(Field::with_order(6).unwrap_err(), Error::NotPrimePower(6));
    assert_eq!(Field::with_order(1).unwrap_err(), Error::NotPrimePower(1));
    assert!(matches!(Field::with_order(1 << 17), Err(Error::FieldTooLarge { .. })));
    let f = Field::with_order(5).unwrap();
    assert_eq!(f.elem(5), Err(Error::ElementOutOfRange { value: 5, q: 5 }));
    assert_eq!(f.elements().count(), 5);
    assert_eq!(f.nonzero_elements().count(), 4);
}
