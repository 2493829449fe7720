//! C ABI for the mltransfer engine.
//!
//! Every fallible call returns an [`MltStatus`]; on failure a message is
//! available from [`mlt_last_error`] on the same thread. Strings handed
//! out by this library must be released with [`mlt_string_free`].

use std::cell::RefCell;
use std::ffi::{CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use libc::{c_char, c_double};
use mltransfer::harness::{parse_corpus, parse_grades, run_corpus, score_grades, EvalMode};
use mltransfer::{translate_document, Dictionaries};

/// Loaded dictionaries. Immutable once built; may be shared across threads.
pub struct MltEngine {
    dicts: Dictionaries,
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MltStatus {
    Ok = 0,
    NullArgument = 1,
    InvalidUtf8 = 2,
    DictionaryError = 3,
    /// At least one sentence failed; the output holds the rest.
    TranslationError = 4,
    CorpusError = 5,
    GradeError = 6,
    Panic = 7,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: impl Into<String>) {
    let msg = msg.into().replace('\0', " ");
    LAST_ERROR.with(|e| *e.borrow_mut() = CString::new(msg).ok());
}

fn clear_error() {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
}

fn guard(f: impl FnOnce() -> MltStatus) -> MltStatus {
    clear_error();
    catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|_| {
        set_error("internal panic");
        MltStatus::Panic
    })
}

unsafe fn read_str<'a>(p: *const c_char) -> Result<&'a str, MltStatus> {
    if p.is_null() {
        set_error("null string argument");
        return Err(MltStatus::NullArgument);
    }
    CStr::from_ptr(p).to_str().map_err(|_| {
        set_error("argument is not valid UTF-8");
        MltStatus::InvalidUtf8
    })
}

fn into_c(s: String) -> *mut c_char {
    CString::new(s.replace('\0', " ")).map_or(ptr::null_mut(), CString::into_raw)
}

/// Engine over the built-in dictionaries. Never returns NULL.
#[no_mangle]
pub extern "C" fn mlt_engine_new_builtin() -> *mut MltEngine {
    Box::into_raw(Box::new(MltEngine {
        dicts: Dictionaries::builtin(),
    }))
}

/// Loads `categories.tsv`, `lexicon.tsv`, `patterns.tsv` and `rewrites.tsv`
/// from directory `dir`.
///
/// # Safety
/// `dir` must be NULL or a NUL-terminated string; `out` must be NULL or
/// point to writable storage for one pointer.
#[no_mangle]
pub unsafe extern "C" fn mlt_engine_open(dir: *const c_char, out: *mut *mut MltEngine) -> MltStatus {
    guard(|| {
        if out.is_null() {
            set_error("null output pointer");
            return MltStatus::NullArgument;
        }
        *out = ptr::null_mut();
        let dir = match read_str(dir) {
            Ok(d) => d,
            Err(s) => return s,
        };
        match Dictionaries::load(dir) {
            Ok(dicts) => {
                *out = Box::into_raw(Box::new(MltEngine { dicts }));
                MltStatus::Ok
            }
            Err(e) => {
                set_error(e.to_string());
                MltStatus::DictionaryError
            }
        }
    })
}

/// # Safety
/// `engine` must be NULL or a pointer from this library not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlt_engine_free(engine: *mut MltEngine) {
    if !engine.is_null() {
        drop(Box::from_raw(engine));
    }
}

/// Translates `text`. `out_text` receives the English; `out_trace`, if not
/// NULL, receives the decision trace. Both are set even when the status is
/// `TranslationError`.
///
/// # Safety
/// `engine` must be a live engine, `text` a NUL-terminated string,
/// `out_text` writable, `out_trace` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mlt_translate(
    engine: *const MltEngine,
    text: *const c_char,
    out_text: *mut *mut c_char,
    out_trace: *mut *mut c_char,
) -> MltStatus {
    guard(|| {
        if engine.is_null() || out_text.is_null() {
            set_error("null engine or output pointer");
            return MltStatus::NullArgument;
        }
        *out_text = ptr::null_mut();
        if !out_trace.is_null() {
            *out_trace = ptr::null_mut();
        }
        let text = match read_str(text) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let doc = translate_document(&(*engine).dicts, text);
        *out_text = into_c(doc.text);
        if !out_trace.is_null() {
            *out_trace = into_c(doc.trace.to_string());
        }
        if doc.errors.is_empty() {
            MltStatus::Ok
        } else {
            let msgs: Vec<String> = doc.errors.iter().map(|e| e.to_string()).collect();
            set_error(msgs.join("\n"));
            MltStatus::TranslationError
        }
    })
}

/// Runs a corpus given as file contents. `out_report` receives the report
/// text and `out_pass_rate`, if not NULL, the pass rate.
///
/// # Safety
/// `engine` must be a live engine, `corpus` a NUL-terminated string,
/// `out_report` writable, `out_pass_rate` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mlt_eval_corpus(
    engine: *const MltEngine,
    corpus: *const c_char,
    out_report: *mut *mut c_char,
    out_pass_rate: *mut c_double,
) -> MltStatus {
    guard(|| {
        if engine.is_null() || out_report.is_null() {
            set_error("null engine or output pointer");
            return MltStatus::NullArgument;
        }
        *out_report = ptr::null_mut();
        let text = match read_str(corpus) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let report = match parse_corpus(text).and_then(|c| run_corpus(&(*engine).dicts, &c, EvalMode::Blind)) {
            Ok(r) => r,
            Err(e) => {
                set_error(e.to_string());
                return MltStatus::CorpusError;
            }
        };
        if !out_pass_rate.is_null() {
            *out_pass_rate = report.pass_rate();
        }
        *out_report = into_c(report.render());
        MltStatus::Ok
    })
}

/// Scores grade records given as file contents.
///
/// # Safety
/// `records` must be a NUL-terminated string, `out_report` writable,
/// `out_pass_rate` NULL or writable.
#[no_mangle]
pub unsafe extern "C" fn mlt_score_grades(
    records: *const c_char,
    out_report: *mut *mut c_char,
    out_pass_rate: *mut c_double,
) -> MltStatus {
    guard(|| {
        if out_report.is_null() {
            set_error("null output pointer");
            return MltStatus::NullArgument;
        }
        *out_report = ptr::null_mut();
        let text = match read_str(records) {
            Ok(t) => t,
            Err(s) => return s,
        };
        let summary = match parse_grades(text).and_then(|r| score_grades(&r, None)) {
            Ok(s) => s,
            Err(e) => {
                set_error(e.to_string());
                return MltStatus::GradeError;
            }
        };
        if !out_pass_rate.is_null() {
            *out_pass_rate = summary.pass_rate();
        }
        *out_report = into_c(summary.render());
        MltStatus::Ok
    })
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn mlt_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// # Safety
/// `s` must be NULL or a string returned by this library, not yet freed.
#[no_mangle]
pub unsafe extern "C" fn mlt_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Library version, statically allocated.
#[no_mangle]
pub extern "C" fn mlt_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}
