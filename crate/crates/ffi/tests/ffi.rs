use std::ffi::{CStr, CString};
use std::ptr;

use starprod_ffi::*;

fn last_error() -> String {
    unsafe { CStr::from_ptr(sp_last_error()) }.to_string_lossy().into_owned()
}

fn code_from(q: u64, rows: usize, cols: usize, values: &[u32]) -> *mut SpCode {
    let mut out = ptr::null_mut();
    let st = unsafe { sp_code_from_values(q, rows, cols, values.as_ptr(), &mut out) };
    assert_eq!(st, SpStatus::Ok, "{}", last_error());
    out
}

fn read_string(f: impl Fn(*mut std::ffi::c_char, usize, *mut usize) -> SpStatus) -> String {
    let mut needed = 0usize;
    assert_eq!(f(ptr::null_mut(), 0, &mut needed), SpStatus::BufferTooSmall);
    let mut buf = vec![0 as std::ffi::c_char; needed];
    assert_eq!(f(buf.as_mut_ptr(), buf.len(), ptr::null_mut()), SpStatus::Ok);
    unsafe { CStr::from_ptr(buf.as_ptr()) }.to_str().unwrap().to_owned()
}

#[test]
fn code_lifecycle() {
    unsafe {
        let c = code_from(2, 2, 4, &[1, 1, 0, 0, 0, 1, 1, 0]);
        assert_eq!((sp_code_length(c), sp_code_dim(c), sp_code_field_order(c)), (4, 2, 2));
        let mut sq = ptr::null_mut();
        assert_eq!(sp_code_star_power(c, 2, &mut sq), SpStatus::Ok);
        assert_eq!(sp_code_dim(sq), 3);
        let mut dual = ptr::null_mut();
        assert_eq!(sp_code_dual(c, &mut dual), SpStatus::Ok);
        assert_eq!(sp_code_dim(dual), 2);
        let mut d = 0usize;
        assert_eq!(sp_code_dmin(c, &mut d), SpStatus::Ok);
        assert_eq!(d, 2);
        assert_eq!(sp_code_dmax(c, &mut d), SpStatus::Ok);
        assert_eq!(d, 2);
        let mut we = [0u64; 5];
        assert_eq!(sp_code_weight_enumerator(c, we.as_mut_ptr(), 5), SpStatus::Ok);
        assert_eq!(we, [1, 0, 3, 0, 0]);
        assert_eq!(sp_code_weight_enumerator(c, we.as_mut_ptr(), 4), SpStatus::BufferTooSmall);
        let mut basis = [0u32; 8];
        assert_eq!(sp_code_basis(c, basis.as_mut_ptr(), 8), SpStatus::Ok);
        assert_eq!(basis, [1, 0, 1, 0, 0, 1, 1, 0]);
        let mut prod = ptr::null_mut();
        assert_eq!(sp_code_star_product(c, c, &mut prod), SpStatus::Ok);
        let mut eq = false;
        assert_eq!(sp_code_equal(prod, sq, &mut eq), SpStatus::Ok);
        assert!(eq);
        for p in [c, sq, dual, prod] {
            sp_code_free(p);
        }
        sp_code_free(ptr::null_mut());
    }
}

#[test]
fn parse_and_write_round_trip() {
    unsafe {
        let text = CString::new("# rs\nq 5\nrows 2 cols 4\n1 1 1 1\n0 1 2 3\n").unwrap();
        let mut c = ptr::null_mut();
        assert_eq!(sp_code_parse(text.as_ptr(), &mut c), SpStatus::Ok);
        let written = read_string(|b, l, n| sp_code_write(c, b, l, n));
        assert_eq!(written, "q 5\nrows 2 cols 4\n1 1 1 1\n0 1 2 3\n");
        let again = CString::new(written).unwrap();
        let mut d = ptr::null_mut();
        assert_eq!(sp_code_parse(again.as_ptr(), &mut d), SpStatus::Ok);
        let mut eq = false;
        assert_eq!(sp_code_equal(c, d, &mut eq), SpStatus::Ok);
        assert!(eq);
        sp_code_free(c);
        sp_code_free(d);

        let bad = CString::new("q 5\nrows 1 cols 2\n1 7\n").unwrap();
        let mut e = ptr::null_mut();
        assert_eq!(sp_code_parse(bad.as_ptr(), &mut e), SpStatus::Parse);
        assert!(last_error().starts_with("line 3"), "{}", last_error());
        assert!(e.is_null());
    }
}

#[test]
fn error_codes() {
    unsafe {
        let mut out = ptr::null_mut();
        assert_eq!(sp_code_from_values(6, 1, 1, [0u32].as_ptr(), &mut out), SpStatus::Field);
        assert!(last_error().contains("prime power"));
        assert_eq!(sp_code_from_values(5, 1, 2, [0u32, 9].as_ptr(), &mut out), SpStatus::Field);
        assert_eq!(sp_code_from_values(5, 1, 2, ptr::null(), &mut out), SpStatus::NullPointer);
        assert_eq!(sp_code_simplex(2, 3, ptr::null_mut()), SpStatus::NullPointer);
        let mut d = 0usize;
        assert_eq!(sp_code_dmin(ptr::null(), &mut d), SpStatus::NullPointer);
        let z = code_from(2, 1, 3, &[0, 0, 0]);
        assert_eq!(sp_code_dmin(z, &mut d), SpStatus::Precondition);
        let mut sq = ptr::null_mut();
        assert_eq!(sp_code_star_power(z, 0, &mut sq), SpStatus::InvalidArgument);
        sp_code_free(z);
        let mut b = SpBound::default();
        assert_eq!(sp_bound_dmax(2, 2, 3, 4, &mut b), SpStatus::Precondition);
        let mut ch = ptr::null_mut();
        assert_eq!(sp_chain_new(2, 13, 14, SpModel::L, &mut ch), SpStatus::SizeGuard);
        assert_eq!(sp_chain_new(2, 2, 2, SpModel::FS, &mut ch), SpStatus::InvalidArgument);
    }
}

#[test]
fn distinguisher() {
    unsafe {
        let mut rs = ptr::null_mut();
        assert_eq!(sp_code_reed_solomon(11, 4, 11, &mut rs), SpStatus::Ok);
        let mut r = SpDistinguish::default();
        assert_eq!(sp_distinguish(rs, &mut r), SpStatus::Ok);
        assert_eq!((r.n, r.k, r.square_dim, r.expected, r.deficit, r.structured), (11, 4, 7, 10, 3, true));
        sp_code_free(rs);
        let mut s = ptr::null_mut();
        assert_eq!(sp_code_simplex(3, 2, &mut s), SpStatus::Ok);
        assert_eq!(sp_code_length(s), 4);
        sp_code_free(s);
    }
}

#[test]
fn chains_and_counts() {
    unsafe {
        let mut ch = ptr::null_mut();
        assert_eq!(sp_chain_new(2, 1, 1, SpModel::L, &mut ch), SpStatus::Ok);
        let mut p = 0.0;
        assert_eq!(sp_chain_ps0(ch, 2, &mut p), SpStatus::Ok);
        assert_eq!(p, 0.625);
        assert_eq!(read_string(|b, l, n| sp_chain_ps0_exact(ch, 2, b, l, n)), "5/8");
        let mut b = SpBound::default();
        assert_eq!(sp_chain_ssw_bound(ch, 1, &mut b), SpStatus::Ok);
        assert_eq!((b.lo, b.hi), (0.75, 0.75));
        sp_chain_free(ch);
        assert_eq!(read_string(|b, l, n| sp_ndecomp(2, 2, 2, 0, 2, b, l, n)), "9");
        assert_eq!(read_string(|b, l, n| sp_exact_pn(2, 2, 2, 1, SpModel::L, b, l, n)), "7/16");
    }
}

#[test]
fn bounds() {
    unsafe {
        let mut b = SpBound::default();
        assert_eq!(sp_bound_cq(2, &mut b), SpStatus::Ok);
        assert!((b.lo - 3.462746619).abs() < 1e-8 && b.lo <= b.hi);
        assert_eq!(sp_bound_cq(1, &mut b), SpStatus::InvalidArgument);
        assert_eq!(sp_bound_psw(2, 2, 2, 4, &mut b), SpStatus::Ok);
        assert!(!b.vacuous && b.asserted);
        assert_eq!(sp_bound_psw(2, 3, 2, 4, &mut b), SpStatus::Precondition);
        assert_eq!(sp_bound_span(2, 2, 3, 6, 1, 2, 23, 100, &mut b), SpStatus::Ok);
        assert!(b.vacuous);
        assert_eq!(sp_bound_span(2, 2, 3, 6, 1, 0, 23, 100, &mut b), SpStatus::InvalidArgument);
        let mut ok = false;
        assert_eq!(sp_kappa_valid(16, 23, 100, &mut ok), SpStatus::Ok);
        assert!(ok);
    }
}

#[test]
fn estimate_is_thread_independent() {
    let mut cfg = SpConfig {
        q: 2,
        k: 2,
        l: 2,
        n: 4,
        model: SpModel::L,
        target: SpTarget::Span,
        deficit: 0,
        trials: 9000,
        seed: 7,
        threads: 1,
    };
    let mut a = SpEstimate::default();
    let mut b = SpEstimate::default();
    unsafe {
        assert_eq!(sp_estimate(&cfg, &mut a), SpStatus::Ok);
        cfg.threads = 4;
        assert_eq!(sp_estimate(&cfg, &mut b), SpStatus::Ok);
    }
    assert_eq!(a, b);
    assert!(a.has_bound && !a.violated && a.ci_low <= a.estimate && a.estimate <= a.ci_high);
    cfg.n = 3;
    unsafe {
        assert_eq!(sp_estimate(&cfg, &mut a), SpStatus::Precondition);
        assert_eq!(sp_estimate(ptr::null(), &mut a), SpStatus::NullPointer);
    }
}

#[test]
fn version_string() {
    let v = unsafe { CStr::from_ptr(sp_version()) }.to_str().unwrap();
    assert_eq!(v, env!("CARGO_PKG_VERSION"));
}
