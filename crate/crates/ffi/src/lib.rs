//! C ABI over `starprod`.
//!
//! Objects cross the boundary as opaque pointers created by `sp_*_new`-style
//! constructors and released with the matching `sp_*_free`. Every fallible
//! call returns an [`SpStatus`]; on failure [`sp_last_error`] describes the
//! most recent error on the calling thread. Panics are caught and reported
//! as [`SpStatus::Internal`].

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use num_traits::ToPrimitive;
use starprod::bounds::{self, BoundValue};
use starprod::exactdist::{self, RankModel, RankOrbitChain};
use starprod::experiments::{self, ExperimentConfig, SamplingModel, Structure, Target, Verdict};
use starprod::{codes, genfile, Error, Field, LinearCode};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Field = 3,
    Dimension = 4,
    SizeGuard = 5,
    Precondition = 6,
    Parse = 7,
    RejectionCap = 8,
    BufferTooSmall = 9,
    Internal = 10,
}

impl From<&Error> for SpStatus {
    fn from(e: &Error) -> Self {
        match e {
            Error::NotPrime(_)
            | Error::FieldTooLarge { .. }
            | Error::NotPrimePower(_)
            | Error::DivisionByZero
            | Error::ElementOutOfRange { .. }
            | Error::FieldMismatch => SpStatus::Field,
            Error::DimensionMismatch(_) => SpStatus::Dimension,
            Error::MatrixTooLarge { .. } | Error::CodeTooLarge { .. } | Error::SizeGuard(_) => SpStatus::SizeGuard,
            Error::ZeroCode | Error::Precondition(_) => SpStatus::Precondition,
            Error::InvalidArgument(_) => SpStatus::InvalidArgument,
            Error::RejectionCapExceeded { .. } => SpStatus::RejectionCap,
            Error::Parse { .. } => SpStatus::Parse,
        }
    }
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpModel {
    L = 0,
    R1 = 1,
    FS = 2,
    FR = 3,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpTarget {
    Span = 0,
    Dependence = 1,
    Deficit = 2,
    Dmax = 3,
    Histogram = 4,
}

/// Bound endpoints rounded to `double`.
#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpBound {
    pub lo: f64,
    pub hi: f64,
    pub vacuous: bool,
    pub asserted: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpConfig {
    pub q: u64,
    pub k: u32,
    pub l: u32,
    pub n: u32,
    pub model: SpModel,
    pub target: SpTarget,
    /// Used by `SpTarget::Deficit`.
    pub deficit: u32,
    pub trials: u64,
    pub seed: u64,
    /// Worker threads; 0 uses the global pool.
    pub threads: u32,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SpEstimate {
    pub successes: u64,
    pub trials: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub has_bound: bool,
    pub bound: SpBound,
    pub in_param_space: bool,
    pub violated: bool,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SpDistinguish {
    pub n: usize,
    pub k: usize,
    pub square_dim: usize,
    pub expected: usize,
    pub deficit: usize,
    pub structured: bool,
}

/// A linear code.
pub struct SpCode(LinearCode);

/// Exact rank-walk kernel.
pub struct SpChain(RankOrbitChain);

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_error(msg: String) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

fn guard<F: FnOnce() -> Result<(), (SpStatus, String)>>(f: F) -> SpStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => SpStatus::Ok,
        Ok(Err((status, msg))) => {
            set_error(msg);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            SpStatus::Internal
        }
    }
}

trait Lift<T> {
    fn lift(self) -> Result<T, (SpStatus, String)>;
}

impl<T> Lift<T> for starprod::Result<T> {
    fn lift(self) -> Result<T, (SpStatus, String)> {
        self.map_err(|e| (SpStatus::from(&e), e.to_string()))
    }
}

fn null(what: &str) -> (SpStatus, String) {
    (SpStatus::NullPointer, format!("{what} is null"))
}

fn invalid(msg: impl Into<String>) -> (SpStatus, String) {
    (SpStatus::InvalidArgument, msg.into())
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, (SpStatus, String)> {
    p.as_ref().ok_or_else(|| null(what))
}

unsafe fn put<T>(out: *mut T, v: T) -> Result<(), (SpStatus, String)> {
    if out.is_null() {
        return Err(null("output pointer"));
    }
    out.write(v);
    Ok(())
}

unsafe fn put_code(out: *mut *mut SpCode, code: LinearCode) -> Result<(), (SpStatus, String)> {
    put(out, Box::into_raw(Box::new(SpCode(code))))
}

fn bound_to_c(b: &BoundValue) -> SpBound {
    SpBound { lo: b.lo_f64(), hi: b.hi_f64(), vacuous: b.vacuous, asserted: b.asserted }
}

/// Copies `s` plus a terminating NUL into `buf` when it fits. `needed`
/// receives the full length including the NUL.
unsafe fn write_str(s: &str, buf: *mut c_char, len: usize, needed: *mut usize) -> Result<(), (SpStatus, String)> {
    let bytes = s.as_bytes();
    if !needed.is_null() {
        needed.write(bytes.len() + 1);
    }
    if buf.is_null() || len < bytes.len() + 1 {
        return Err((SpStatus::BufferTooSmall, format!("need {} bytes", bytes.len() + 1)));
    }
    ptr::copy_nonoverlapping(bytes.as_ptr(), buf as *mut u8, bytes.len());
    *buf.add(bytes.len()) = 0;
    Ok(())
}

/// Message of the last failed call on this thread. Valid until the next
/// failing call on the same thread; never null.
#[no_mangle]
pub extern "C" fn sp_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Crate version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn sp_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Builds the code spanned by the rows of a `rows x cols` row-major matrix of
/// canonical field values.
///
/// # Safety
/// `values` must point to `rows * cols` readable integers; `out` must be
/// writable.
#[no_mangle]
pub unsafe extern "C" fn sp_code_from_values(
    q: u64,
    rows: usize,
    cols: usize,
    values: *const u32,
    out: *mut *mut SpCode,
) -> SpStatus {
    guard(|| {
        let len = rows.checked_mul(cols).ok_or_else(|| invalid("rows * cols overflows"))?;
        if values.is_null() && len > 0 {
            return Err(null("values"));
        }
        let vals = if len == 0 { &[][..] } else { std::slice::from_raw_parts(values, len) };
        let field = Field::with_order(q).lift()?;
        let code = LinearCode::from_values(&field, rows, cols, vals).lift()?;
        put_code(out, code)
    })
}

/// Parses a generator matrix file held in a NUL-terminated string.
///
/// # Safety
/// `text` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_code_parse(text: *const c_char, out: *mut *mut SpCode) -> SpStatus {
    guard(|| {
        if text.is_null() {
            return Err(null("text"));
        }
        let s = CStr::from_ptr(text).to_str().map_err(|_| invalid("text is not UTF-8"))?;
        put_code(out, genfile::parse_code(s).lift()?)
    })
}

/// Reed-Solomon `[n, k]` code evaluated at `0, 1, ..., n-1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_code_reed_solomon(q: u64, k: usize, n: usize, out: *mut *mut SpCode) -> SpStatus {
    guard(|| {
        let field = Field::with_order(q).lift()?;
        put_code(out, codes::rs_code_standard(&field, k, n).lift()?)
    })
}

/// Simplex code of dimension `k`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_code_simplex(q: u64, k: usize, out: *mut *mut SpCode) -> SpStatus {
    guard(|| {
        let field = Field::with_order(q).lift()?;
        put_code(out, codes::simplex_code(&field, k).lift()?)
    })
}

/// Releases a code; null is ignored.
///
/// # Safety
/// `code` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sp_code_free(code: *mut SpCode) {
    if !code.is_null() {
        drop(Box::from_raw(code));
    }
}

/// Length, or 0 for null.
///
/// # Safety
/// `code` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_length(code: *const SpCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.length())
}

/// Dimension, or 0 for null.
///
/// # Safety
/// `code` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_dim(code: *const SpCode) -> usize {
    code.as_ref().map_or(0, |c| c.0.dim())
}

/// Field order, or 0 for null.
///
/// # Safety
/// `code` must be null or valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_field_order(code: *const SpCode) -> u64 {
    code.as_ref().map_or(0, |c| c.0.field().q() as u64)
}

/// Copies the reduced row echelon basis, `dim x length` row-major.
///
/// # Safety
/// `buf` must hold `len` integers.
#[no_mangle]
pub unsafe extern "C" fn sp_code_basis(code: *const SpCode, buf: *mut u32, len: usize) -> SpStatus {
    guard(|| {
        let c = deref(code, "code")?;
        let basis = c.0.basis();
        let entries = basis.entries();
        if buf.is_null() || len < entries.len() {
            return Err((SpStatus::BufferTooSmall, format!("need {} entries", entries.len())));
        }
        for (i, x) in entries.iter().enumerate() {
            *buf.add(i) = x.value();
        }
        Ok(())
    })
}

/// Writes the code in generator matrix file format.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sp_code_write(
    code: *const SpCode,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SpStatus {
    guard(|| {
        let c = deref(code, "code")?;
        write_str(&genfile::write(c.0.generator()), buf, len, needed)
    })
}

/// Whether two codes are equal as subspaces.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_equal(a: *const SpCode, b: *const SpCode, out: *mut bool) -> SpStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put(out, a.0.same_code(&b.0).lift()?)
    })
}

/// Componentwise product code `a * b`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_star_product(a: *const SpCode, b: *const SpCode, out: *mut *mut SpCode) -> SpStatus {
    guard(|| {
        let (a, b) = (deref(a, "a")?, deref(b, "b")?);
        put_code(out, a.0.star_product(&b.0).lift()?)
    })
}

/// `s`-th componentwise power, `s >= 1`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_star_power(code: *const SpCode, s: usize, out: *mut *mut SpCode) -> SpStatus {
    guard(|| put_code(out, deref(code, "code")?.0.star_power(s).lift()?))
}

/// Dual code.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_dual(code: *const SpCode, out: *mut *mut SpCode) -> SpStatus {
    guard(|| put_code(out, deref(code, "code")?.0.dual()))
}

/// Minimum distance of a nonzero code.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_dmin(code: *const SpCode, out: *mut usize) -> SpStatus {
    guard(|| put(out, deref(code, "code")?.0.dmin().lift()?))
}

/// Largest codeword weight of a nonzero code.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_code_dmax(code: *const SpCode, out: *mut usize) -> SpStatus {
    guard(|| put(out, deref(code, "code")?.0.dmax().lift()?))
}

/// Number of codewords of each weight `0..=length`; `buf` needs
/// `length + 1` slots.
///
/// # Safety
/// `buf` must hold `len` integers.
#[no_mangle]
pub unsafe extern "C" fn sp_code_weight_enumerator(code: *const SpCode, buf: *mut u64, len: usize) -> SpStatus {
    guard(|| {
        let c = deref(code, "code")?;
        let we = c.0.weight_enumerator().lift()?;
        if buf.is_null() || len < we.len() {
            return Err((SpStatus::BufferTooSmall, format!("need {} entries", we.len())));
        }
        ptr::copy_nonoverlapping(we.as_ptr(), buf, we.len());
        Ok(())
    })
}

/// Square-code distinguisher.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_distinguish(code: *const SpCode, out: *mut SpDistinguish) -> SpStatus {
    guard(|| {
        let r = experiments::distinguish(&deref(code, "code")?.0, false).lift()?;
        put(
            out,
            SpDistinguish {
                n: r.n,
                k: r.k,
                square_dim: r.square_dim,
                expected: r.expected,
                deficit: r.deficit,
                structured: r.verdict == Structure::Structured,
            },
        )
    })
}

fn rank_model(m: SpModel) -> Result<RankModel, (SpStatus, String)> {
    match m {
        SpModel::L => Ok(RankModel::L),
        SpModel::R1 => Ok(RankModel::R1),
        _ => Err(invalid("rank walk needs model L or R1")),
    }
}

/// Builds the exact rank-walk kernel for `k x l` matrices.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_chain_new(q: u64, k: usize, l: usize, model: SpModel, out: *mut *mut SpChain) -> SpStatus {
    guard(|| {
        let chain = exactdist::build_chain(q, k, l, rank_model(model)?).lift()?;
        put(out, Box::into_raw(Box::new(SpChain(chain))))
    })
}

/// Releases a chain; null is ignored.
///
/// # Safety
/// `chain` must come from this library and not be used afterwards.
#[no_mangle]
pub unsafe extern "C" fn sp_chain_free(chain: *mut SpChain) {
    if !chain.is_null() {
        drop(Box::from_raw(chain));
    }
}

/// `P[s_w = 0]` rounded to `double`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_chain_ps0(chain: *const SpChain, w: usize, out: *mut f64) -> SpStatus {
    guard(|| {
        let p = exactdist::exact_ps0(&deref(chain, "chain")?.0, w);
        put(out, p.to_f64().unwrap_or(f64::NAN))
    })
}

/// `P[s_w = 0]` exactly, as `"num/den"`.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sp_chain_ps0_exact(
    chain: *const SpChain,
    w: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SpStatus {
    guard(|| {
        let p = exactdist::exact_ps0(&deref(chain, "chain")?.0, w);
        write_str(&format!("{}/{}", p.numer(), p.denom()), buf, len, needed)
    })
}

/// Exact union bound on linear dependence of `n` samples.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_chain_ssw_bound(chain: *const SpChain, n: usize, out: *mut SpBound) -> SpStatus {
    guard(|| put(out, bound_to_c(&exactdist::ssw_bound_exact(&deref(chain, "chain")?.0, n))))
}

/// `N(r, w)` as a decimal string.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sp_ndecomp(
    q: u64,
    k: usize,
    l: usize,
    r: usize,
    w: usize,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SpStatus {
    guard(|| {
        let v = exactdist::n_decomp(q, k, l, r, w).lift()?;
        write_str(&v.to_string(), buf, len, needed)
    })
}

/// Exact probability that `n` samples fail to reach full rank, by
/// enumeration, as `"num/den"`.
///
/// # Safety
/// `buf` must hold `len` bytes; `needed` may be null.
#[no_mangle]
pub unsafe extern "C" fn sp_exact_pn(
    q: u64,
    k: usize,
    l: usize,
    n: usize,
    model: SpModel,
    buf: *mut c_char,
    len: usize,
    needed: *mut usize,
) -> SpStatus {
    guard(|| {
        let p = exactdist::exact_pn_bruteforce(q, k, l, n, rank_model(model)?).lift()?;
        write_str(&format!("{}/{}", p.numer(), p.denom()), buf, len, needed)
    })
}

/// Enclosure of `prod_{j>=1} (1 - q^-j)^-1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_bound_cq(q: u64, out: *mut SpBound) -> SpStatus {
    guard(|| {
        if q < 2 {
            return Err(invalid("q must be >= 2"));
        }
        let iv = bounds::c_q(q, &bounds::default_precision());
        put(out, bound_to_c(&BoundValue::new(iv, bounds::Formula::Cq, true)))
    })
}

/// Bound on `P[s_w = 0]`, `k <= l`, `w >= 1`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_bound_psw(q: u64, k: u32, l: u32, w: u32, out: *mut SpBound) -> SpStatus {
    guard(|| put(out, bound_to_c(&bounds::bound_thm_psw(q, k, l, w).lift()?)))
}

/// Bound on the probability that `n >= kl` samples fail to span.
/// `epsilon` and `kappa` are given as `num/den` pairs.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_bound_span(
    q: u64,
    k: u32,
    l: u32,
    n: u32,
    eps_num: i64,
    eps_den: i64,
    kappa_num: i64,
    kappa_den: i64,
    out: *mut SpBound,
) -> SpStatus {
    guard(|| {
        if eps_den == 0 || kappa_den == 0 {
            return Err(invalid("zero denominator"));
        }
        let b =
            bounds::bound_thm_span(q, k, l, n, &bounds::ratio(eps_num, eps_den), &bounds::ratio(kappa_num, kappa_den))
                .lift()?;
        put(out, bound_to_c(&b))
    })
}

/// Bound on `P[dmax((C*C')^perp) >= k + l]`, `k + l <= n <= kl`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_bound_dmax(q: u64, k: u32, l: u32, n: u32, out: *mut SpBound) -> SpStatus {
    guard(|| put(out, bound_to_c(&bounds::bound_thm_dmax(q, k, l, n).lift()?)))
}

/// Whether `kappa = num/den` satisfies its defining inequality for `q`.
///
/// # Safety
/// `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn sp_kappa_valid(q: u64, num: i64, den: i64, out: *mut bool) -> SpStatus {
    guard(|| {
        if den == 0 || q < 2 {
            return Err(invalid("need den != 0 and q >= 2"));
        }
        put(out, bounds::kappa_valid(q, &bounds::ratio(num, den)))
    })
}

fn config_from_c(c: &SpConfig) -> ExperimentConfig {
    let model = match c.model {
        SpModel::L => SamplingModel::L,
        SpModel::R1 => SamplingModel::R1,
        SpModel::FS => SamplingModel::FS,
        SpModel::FR => SamplingModel::FR,
    };
    let target = match c.target {
        SpTarget::Span => Target::Span,
        SpTarget::Dependence => Target::Dependence,
        SpTarget::Deficit => Target::Deficit(c.deficit),
        SpTarget::Dmax => Target::Dmax,
        SpTarget::Histogram => Target::Histogram,
    };
    ExperimentConfig::new(c.q, c.k as usize, c.l as usize, c.n as usize, model, target, c.trials, c.seed)
}

/// Seeded Monte Carlo estimate with its matching bound, using the default
/// `epsilon = 1/2`, `kappa = 23/100`.
///
/// # Safety
/// Pointers must be valid.
#[no_mangle]
pub unsafe extern "C" fn sp_estimate(config: *const SpConfig, out: *mut SpEstimate) -> SpStatus {
    guard(|| {
        let c = deref(config, "config")?;
        let cfg = config_from_c(c);
        let r = if c.threads == 0 {
            experiments::estimate(&cfg)
        } else {
            experiments::estimate_with_threads(&cfg, c.threads as usize)
        }
        .lift()?;
        put(
            out,
            SpEstimate {
                successes: r.successes,
                trials: r.trials,
                estimate: r.estimate,
                ci_low: r.ci_low,
                ci_high: r.ci_high,
                has_bound: r.bound.is_some(),
                bound: r.bound.as_ref().map(bound_to_c).unwrap_or_default(),
                in_param_space: r.in_param_space,
                violated: r.verdict == Verdict::Violated,
            },
        )
    })
}
