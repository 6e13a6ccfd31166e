//! C ABI for the `embedjoin` library.
//!
//! Every fallible function returns an [`EjStatus`]; on failure a message is
//! available from [`ej_last_error_message`] on the same thread. Corpora and
//! results are opaque handles released with their `_free` function.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;
use std::slice;

use embedjoin::{
    banded_edit_distance, bench, embed_join, full_edit_distance, match_probability,
    resolve_parameters, Corpus, Error, JoinResult, Mode, Overrides, Truncation,
};

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EjStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Io = 3,
    Data = 4,
    Panic = 5,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EjMode {
    Auto = 0,
    Basic = 1,
    Plus = 2,
}

/// Join parameters. A zero numeric field selects the library default.
#[repr(C)]
#[derive(Clone, Copy, Debug)]
pub struct EjJoinParams {
    pub reps: usize,
    pub tables: usize,
    pub bits: usize,
    pub delta: usize,
    pub match_threshold: usize,
    /// Embedding length; 0 picks it from the length statistics.
    pub truncation: usize,
    pub mode: EjMode,
    pub grouping: bool,
    pub seed: u64,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EjPair {
    pub a: usize,
    pub b: usize,
    pub distance: usize,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EjMetrics {
    pub candidates_raw: usize,
    pub candidates_deduped: usize,
    pub pairs_verified: usize,
    pub pairs_output: usize,
    pub time_embed_ms: u64,
    pub time_filter_ms: u64,
    pub time_verify_ms: u64,
}

/// Opaque corpus handle.
pub struct EjCorpus(Corpus);

/// Opaque join result handle.
pub struct EjResult(JoinResult);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn status_of(err: &Error) -> EjStatus {
    match err {
        Error::Io { .. } => EjStatus::Io,
        Error::EmptyCorpus
        | Error::EmptyLine { .. }
        | Error::ReservedByte { .. }
        | Error::AlphabetTooLarge(_)
        | Error::MalformedPairLine { .. } => EjStatus::Data,
        _ => EjStatus::InvalidArgument,
    }
}

fn fail(status: EjStatus, msg: impl Into<String>) -> EjStatus {
    set_error(msg);
    status
}

/// Runs `f`, converting library errors and panics into status codes.
fn guard(f: impl FnOnce() -> Result<(), (EjStatus, String)>) -> EjStatus {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => EjStatus::Ok,
        Ok(Err((status, msg))) => fail(status, msg),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            fail(EjStatus::Panic, format!("panic: {msg}"))
        }
    }
}

fn lib_err(err: Error) -> (EjStatus, String) {
    (status_of(&err), err.to_string())
}

fn null(name: &str) -> (EjStatus, String) {
    (EjStatus::NullPointer, format!("{name} is null"))
}

unsafe fn bytes<'a>(
    data: *const u8,
    len: usize,
    name: &str,
) -> Result<&'a [u8], (EjStatus, String)> {
    if len == 0 {
        return Ok(&[]);
    }
    if data.is_null() {
        return Err(null(name));
    }
    Ok(slice::from_raw_parts(data, len))
}

unsafe fn store<T>(out: *mut *mut T, value: T) {
    *out = Box::into_raw(Box::new(value));
}

/// Message for the last failed call on this thread, or null. The pointer is
/// valid until the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn ej_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn ej_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Builds a corpus from `n` NUL-terminated lines.
///
/// # Safety
/// `lines` must point to `n` valid C strings; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ej_corpus_from_lines(
    lines: *const *const c_char,
    n: usize,
    out: *mut *mut EjCorpus,
) -> EjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        if lines.is_null() && n > 0 {
            return Err(null("lines"));
        }
        let ptrs = if n == 0 {
            &[][..]
        } else {
            slice::from_raw_parts(lines, n)
        };
        let mut owned = Vec::with_capacity(n);
        for (i, &p) in ptrs.iter().enumerate() {
            if p.is_null() {
                return Err(null(&format!("lines[{i}]")));
            }
            owned.push(CStr::from_ptr(p).to_bytes());
        }
        let corpus = Corpus::from_lines(owned).map_err(lib_err)?;
        store(out, EjCorpus(corpus));
        Ok(())
    })
}

/// Parses a newline-separated buffer, one string per line.
///
/// # Safety
/// `data` must point to `len` readable bytes; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ej_corpus_parse(
    data: *const u8,
    len: usize,
    out: *mut *mut EjCorpus,
) -> EjStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let corpus = Corpus::parse(bytes(data, len, "data")?).map_err(lib_err)?;
        store(out, EjCorpus(corpus));
        Ok(())
    })
}

/// Loads a corpus file, one string per line.
///
/// # Safety
/// `path` must be a valid C string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ej_corpus_load(path: *const c_char, out: *mut *mut EjCorpus) -> EjStatus {
    guard(|| {
        if path.is_null() {
            return Err(null("path"));
        }
        if out.is_null() {
            return Err(null("out"));
        }
        let path = CStr::from_ptr(path).to_str().map_err(|_| {
            (
                EjStatus::InvalidArgument,
                "path is not valid UTF-8".to_string(),
            )
        })?;
        let corpus = Corpus::load(path).map_err(lib_err)?;
        store(out, EjCorpus(corpus));
        Ok(())
    })
}

/// Number of strings in the corpus; 0 for null.
///
/// # Safety
/// `corpus` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ej_corpus_len(corpus: *const EjCorpus) -> usize {
    corpus.as_ref().map_or(0, |c| c.0.len())
}

/// # Safety
/// `corpus` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ej_corpus_free(corpus: *mut EjCorpus) {
    if !corpus.is_null() {
        drop(Box::from_raw(corpus));
    }
}

/// All-defaults parameters.
#[no_mangle]
pub extern "C" fn ej_join_params_default() -> EjJoinParams {
    EjJoinParams {
        reps: 0,
        tables: 0,
        bits: 0,
        delta: 0,
        match_threshold: 0,
        truncation: 0,
        mode: EjMode::Auto,
        grouping: false,
        seed: 0,
    }
}

fn overrides(p: &EjJoinParams) -> Overrides {
    let opt = |v: usize| (v > 0).then_some(v);
    Overrides {
        reps: opt(p.reps),
        tables: opt(p.tables),
        bits: opt(p.bits),
        delta: opt(p.delta),
        match_threshold: opt(p.match_threshold),
        truncation: match p.truncation {
            0 => Truncation::Auto,
            n => Truncation::Fixed(n),
        },
        mode: match p.mode {
            EjMode::Auto => Mode::Auto,
            EjMode::Basic => Mode::Basic,
            EjMode::Plus => Mode::Plus,
        },
        grouping: p.grouping,
        seed: p.seed,
        ..Default::default()
    }
}

/// Similarity self-join with threshold `k`. `params` may be null for the
/// defaults.
///
/// # Safety
/// `corpus` must be a live handle, `params` null or valid, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ej_join(
    corpus: *const EjCorpus,
    k: usize,
    params: *const EjJoinParams,
    out: *mut *mut EjResult,
) -> EjStatus {
    guard(|| {
        let corpus = &corpus.as_ref().ok_or_else(|| null("corpus"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        let params = params
            .as_ref()
            .copied()
            .unwrap_or_else(|| ej_join_params_default());
        let cfg = resolve_parameters(corpus, k, &overrides(&params)).map_err(lib_err)?;
        let result = embed_join(corpus, &cfg).map_err(lib_err)?;
        store(out, EjResult(result));
        Ok(())
    })
}

/// Exact self-join with threshold `k`.
///
/// # Safety
/// `corpus` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ej_oracle_join(
    corpus: *const EjCorpus,
    k: usize,
    out: *mut *mut EjResult,
) -> EjStatus {
    guard(|| {
        let corpus = &corpus.as_ref().ok_or_else(|| null("corpus"))?.0;
        if out.is_null() {
            return Err(null("out"));
        }
        store(out, EjResult(bench::oracle_join(corpus, k)));
        Ok(())
    })
}

/// Number of output pairs; 0 for null.
///
/// # Safety
/// `result` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn ej_result_len(result: *const EjResult) -> usize {
    result.as_ref().map_or(0, |r| r.0.pairs.len())
}

/// Pair `index` in ascending `(a, b)` order.
///
/// # Safety
/// `result` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ej_result_pair(
    result: *const EjResult,
    index: usize,
    out: *mut EjPair,
) -> EjStatus {
    guard(|| {
        let result = &result.as_ref().ok_or_else(|| null("result"))?.0;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let p = result.pairs.get(index).ok_or_else(|| {
            (
                EjStatus::InvalidArgument,
                format!(
                    "index {index} out of range for {} pairs",
                    result.pairs.len()
                ),
            )
        })?;
        *out = EjPair {
            a: p.a,
            b: p.b,
            distance: p.distance,
        };
        Ok(())
    })
}

/// # Safety
/// `result` must be a live handle, `out` writable.
#[no_mangle]
pub unsafe extern "C" fn ej_result_metrics(
    result: *const EjResult,
    out: *mut EjMetrics,
) -> EjStatus {
    guard(|| {
        let m = &result.as_ref().ok_or_else(|| null("result"))?.0.metrics;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = EjMetrics {
            candidates_raw: m.candidates_raw,
            candidates_deduped: m.candidates_deduped,
            pairs_verified: m.pairs_verified,
            pairs_output: m.pairs_output,
            time_embed_ms: m.time_embed_ms,
            time_filter_ms: m.time_filter_ms,
            time_verify_ms: m.time_verify_ms,
        };
        Ok(())
    })
}

/// # Safety
/// `result` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn ej_result_free(result: *mut EjResult) {
    if !result.is_null() {
        drop(Box::from_raw(result));
    }
}

/// Levenshtein distance of two byte strings.
///
/// # Safety
/// `x` and `y` must point to `x_len` and `y_len` readable bytes.
#[no_mangle]
pub unsafe extern "C" fn ej_edit_distance(
    x: *const u8,
    x_len: usize,
    y: *const u8,
    y_len: usize,
    out: *mut usize,
) -> EjStatus {
    guard(|| {
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        *out = full_edit_distance(bytes(x, x_len, "x")?, bytes(y, y_len, "y")?);
        Ok(())
    })
}

/// Sets `*within` to whether the distance is at most `k`, and `*out` to the
/// distance when it is.
///
/// # Safety
/// `x` and `y` must point to `x_len` and `y_len` readable bytes; `within`
/// and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn ej_banded_edit_distance(
    x: *const u8,
    x_len: usize,
    y: *const u8,
    y_len: usize,
    k: usize,
    within: *mut bool,
    out: *mut usize,
) -> EjStatus {
    guard(|| {
        let within = within.as_mut().ok_or_else(|| null("within"))?;
        let out = out.as_mut().ok_or_else(|| null("out"))?;
        let d = banded_edit_distance(bytes(x, x_len, "x")?, bytes(y, y_len, "y")?, k);
        *within = d.is_some();
        *out = d.unwrap_or(0);
        Ok(())
    })
}

/// Probability that at least `t` of `z` independent functions collide when
/// each collides with probability `p`. NaN for invalid arguments.
#[no_mangle]
pub extern "C" fn ej_match_probability(p: f64, z: usize, t: usize) -> f64 {
    if !(0.0..=1.0).contains(&p) || t > z {
        return f64::NAN;
    }
    match_probability(p, z, t)
}
