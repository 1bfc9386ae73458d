//! C ABI over `f2growth`.
//!
//! Objects are opaque handles released with their `*_free` function.
//! Strings returned through `char **` are owned by the caller and released
//! with `f2_string_free`. Every call returns an [`F2Status`]; on failure
//! `f2_last_error` describes the error until the next call on that thread.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use f2growth::cosetgraph::ExportFormat;
use f2growth::counting::dp_counts;
use f2growth::recurrence::{default_max_steps, run_omega};
use f2growth::subgroup::{fold, SubgroupPresentation};
use f2growth::{CoefficientTable, CosetAction, CosetGraph, Error, SubgroupSpec, Word};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum F2Status {
    Ok = 0,
    NullPointer = 1,
    InvalidUtf8 = 2,
    InvalidInput = 3,
    InfiniteIndex = 4,
    NotTransitive = 5,
    OutOfRange = 6,
    CapExceeded = 7,
    Panic = 8,
}

/// A finite-index subgroup with its coset graph.
pub struct F2Subgroup {
    graph: CosetGraph,
}

/// A coefficient table computed for one target coset.
pub struct F2Recurrence {
    graph: CosetGraph,
    table: CoefficientTable,
    entries: Vec<((usize, usize), u64)>,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(message: String) {
    let c = CString::new(message.replace('\0', " ")).expect("no interior nul");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

struct Failure(F2Status, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::InfiniteIndex { .. } => F2Status::InfiniteIndex,
            Error::NotTransitive { .. } => F2Status::NotTransitive,
            Error::VertexOutOfRange { .. } => F2Status::OutOfRange,
            Error::CapExceeded { .. } => F2Status::CapExceeded,
            _ => F2Status::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn guard<F: FnOnce() -> Result<(), Failure>>(f: F) -> F2Status {
    LAST_ERROR.with(|e| *e.borrow_mut() = None);
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => F2Status::Ok,
        Ok(Err(Failure(status, message))) => {
            set_error(message);
            status
        }
        Err(_) => {
            set_error("internal panic".into());
            F2Status::Panic
        }
    }
}

fn null(what: &str) -> Failure {
    Failure(F2Status::NullPointer, format!("{what} is null"))
}

unsafe fn read_str<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(F2Status::InvalidUtf8, format!("{what} is not UTF-8")))
}

unsafe fn write_out<T>(out: *mut T, value: T, what: &str) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null(what));
    }
    out.write(value);
    Ok(())
}

unsafe fn write_string(out: *mut *mut c_char, s: String) -> Result<(), Failure> {
    let c = CString::new(s).map_err(|_| Failure(F2Status::InvalidInput, "nul in output".into()))?;
    write_out(out, c.into_raw(), "out")
}

unsafe fn subgroup<'a>(h: *const F2Subgroup) -> Result<&'a F2Subgroup, Failure> {
    h.as_ref().ok_or_else(|| null("subgroup"))
}

unsafe fn recurrence<'a>(r: *const F2Recurrence) -> Result<&'a F2Recurrence, Failure> {
    r.as_ref().ok_or_else(|| null("recurrence"))
}

fn boxed(action: CosetAction) -> *mut F2Subgroup {
    Box::into_raw(Box::new(F2Subgroup {
        graph: CosetGraph::build(action),
    }))
}

/// Folds comma-separated generators such as `"aa,bb,Aba,Bab"`.
///
/// # Safety
/// `generators` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_from_generators(
    generators: *const c_char,
    out: *mut *mut F2Subgroup,
) -> F2Status {
    guard(|| {
        let text = read_str(generators, "generators")?;
        let words: Vec<&str> = text.split(',').map(str::trim).collect();
        let action = fold(&SubgroupPresentation::parse(&words)?)?;
        write_out(out, boxed(action), "out")
    })
}

/// Builds a subgroup from two permutation image arrays of length `degree`.
///
/// # Safety
/// `sigma_a` and `sigma_b` must point to `degree` readable values.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_from_action(
    sigma_a: *const usize,
    sigma_b: *const usize,
    degree: usize,
    basepoint: usize,
    out: *mut *mut F2Subgroup,
) -> F2Status {
    guard(|| {
        if sigma_a.is_null() || sigma_b.is_null() {
            return Err(null("permutation"));
        }
        let sa = std::slice::from_raw_parts(sigma_a, degree).to_vec();
        let sb = std::slice::from_raw_parts(sigma_b, degree).to_vec();
        let action = CosetAction::new(sa, sb, basepoint)?;
        write_out(out, boxed(action), "out")
    })
}

/// Accepts the JSON spec format read by the command-line tool.
///
/// # Safety
/// `json` must be a nul-terminated string; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_from_spec_json(
    json: *const c_char,
    out: *mut *mut F2Subgroup,
) -> F2Status {
    guard(|| {
        let spec = SubgroupSpec::from_json(read_str(json, "json")?)?;
        write_out(out, boxed(spec.resolve()?), "out")
    })
}

/// # Safety
/// `subgroup` must come from an `f2_subgroup_from_*` call, or be null.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_free(subgroup: *mut F2Subgroup) {
    if !subgroup.is_null() {
        drop(Box::from_raw(subgroup));
    }
}

/// # Safety
/// `subgroup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_index(
    subgroup: *const F2Subgroup,
    out: *mut usize,
) -> F2Status {
    guard(|| write_out(out, self::subgroup(subgroup)?.graph.degree(), "out"))
}

/// # Safety
/// `subgroup` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_has_odd_element(
    subgroup: *const F2Subgroup,
    out: *mut bool,
) -> F2Status {
    guard(|| {
        let odd = self::subgroup(subgroup)?.graph.action().has_odd_element();
        write_out(out, odd, "out")
    })
}

/// Exports the coset graph as `"dot"` or `"json"`.
///
/// # Safety
/// `subgroup` must be a live handle; `format` a nul-terminated string.
#[no_mangle]
pub unsafe extern "C" fn f2_subgroup_export(
    subgroup: *const F2Subgroup,
    format: *const c_char,
    out: *mut *mut c_char,
) -> F2Status {
    guard(|| {
        let g = &self::subgroup(subgroup)?.graph;
        let format: ExportFormat = read_str(format, "format")?.parse()?;
        write_string(out, g.export(format))
    })
}

/// `|wH ∩ Sₙ|` as a decimal string.
///
/// # Safety
/// `subgroup` must be a live handle; `coset` a nul-terminated word.
#[no_mangle]
pub unsafe extern "C" fn f2_count(
    subgroup: *const F2Subgroup,
    coset: *const c_char,
    n: usize,
    out: *mut *mut c_char,
) -> F2Status {
    guard(|| {
        let g = &self::subgroup(subgroup)?.graph;
        let w = Word::parse(read_str(coset, "coset")?)?;
        let counts = dp_counts(g, n);
        write_string(out, counts.count(g.coset_of(&w), n).to_string())
    })
}

/// Computes the coefficients for target coset `target` (a word, `""` for
/// `H`). `max_steps == 0` selects the default cap.
///
/// # Safety
/// `subgroup` must be a live handle; `target` a nul-terminated word.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_compute(
    subgroup: *const F2Subgroup,
    target: *const c_char,
    max_steps: usize,
    out: *mut *mut F2Recurrence,
) -> F2Status {
    guard(|| {
        let g = self::subgroup(subgroup)?.graph.clone();
        let y = Word::parse(read_str(target, "target")?)?;
        let steps = if max_steps == 0 {
            default_max_steps(g.degree())
        } else {
            max_steps
        };
        let table = run_omega(&g, &y, steps);
        let entries = table.entries.iter().map(|(&k, &a)| (k, a)).collect();
        let r = F2Recurrence {
            graph: g,
            table,
            entries,
        };
        write_out(out, Box::into_raw(Box::new(r)), "out")
    })
}

/// # Safety
/// `recurrence` must come from `f2_recurrence_compute`, or be null.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_free(recurrence: *mut F2Recurrence) {
    if !recurrence.is_null() {
        drop(Box::from_raw(recurrence));
    }
}

/// # Safety
/// `recurrence` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_terminated(
    recurrence: *const F2Recurrence,
    out: *mut bool,
) -> F2Status {
    guard(|| write_out(out, self::recurrence(recurrence)?.table.terminated, "out"))
}

/// Last nonempty step, or the cap when not terminated.
///
/// # Safety
/// `recurrence` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_last_step(
    recurrence: *const F2Recurrence,
    out: *mut usize,
) -> F2Status {
    guard(|| write_out(out, self::recurrence(recurrence)?.table.last_step, "out"))
}

/// Number of nonzero coefficients.
///
/// # Safety
/// `recurrence` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_entry_count(
    recurrence: *const F2Recurrence,
    out: *mut usize,
) -> F2Status {
    guard(|| write_out(out, self::recurrence(recurrence)?.entries.len(), "out"))
}

/// Entry `i` in (step, vertex) order. `vertex` indexes the coset labels of
/// the graph export.
///
/// # Safety
/// `recurrence` must be a live handle; all out pointers writable.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_entry(
    recurrence: *const F2Recurrence,
    i: usize,
    step: *mut usize,
    vertex: *mut usize,
    coefficient: *mut u64,
) -> F2Status {
    guard(|| {
        let r = self::recurrence(recurrence)?;
        let &((s, v), a) = r.entries.get(i).ok_or_else(|| {
            Failure(
                F2Status::OutOfRange,
                format!("entry {i} of {}", r.entries.len()),
            )
        })?;
        write_out(step, s, "step")?;
        write_out(vertex, v, "vertex")?;
        write_out(coefficient, a, "coefficient")
    })
}

/// The table as JSON with coset labels.
///
/// # Safety
/// `recurrence` must be a live handle; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn f2_recurrence_to_json(
    recurrence: *const F2Recurrence,
    out: *mut *mut c_char,
) -> F2Status {
    guard(|| {
        let r = self::recurrence(recurrence)?;
        write_string(out, r.table.to_json(&r.graph))
    })
}

/// # Safety
/// `s` must come from this library, or be null.
#[no_mangle]
pub unsafe extern "C" fn f2_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Message for the last failed call on this thread, or null. The pointer
/// stays valid until the next library call on the same thread.
#[no_mangle]
pub extern "C" fn f2_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}
