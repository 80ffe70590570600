//! C ABI over `pathend`.
//!
//! Objects cross the boundary as opaque handles owned by the caller and
//! released with the matching `_free` function. Every fallible call returns a
//! [`PathendStatus`] and writes its result through an out pointer; on failure
//! the out pointer is left untouched and [`pathend_last_error`] describes the
//! problem. Strings returned through `char **` are freed with
//! [`pathend_string_free`].

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use pathend::{
    count_class_dp, enumerate_class, family, generates_class, pseudo_inverse, rank_formula, regular_by_criterion,
    verify_structure, wend_count, EndoClass, Error, FamilyName, MonoidSet, Transformation,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathendStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidArgument = 2,
    Parse = 3,
    OutOfRange = 4,
    SizeMismatch = 5,
    CapExceeded = 6,
    NotInClass = 7,
    NotRegular = 8,
    Unsupported = 9,
    Internal = 10,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathendClass {
    End = 0,
    WEnd = 1,
    SEnd = 2,
    SWEnd = 3,
    Aut = 4,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PathendFamilyName {
    APrime = 0,
    ADoublePrime = 1,
    A = 2,
    B = 3,
    SwGens = 4,
}

impl From<PathendClass> for EndoClass {
    fn from(c: PathendClass) -> Self {
        match c {
            PathendClass::End => EndoClass::End,
            PathendClass::WEnd => EndoClass::WEnd,
            PathendClass::SEnd => EndoClass::SEnd,
            PathendClass::SWEnd => EndoClass::SWEnd,
            PathendClass::Aut => EndoClass::Aut,
        }
    }
}

impl From<PathendFamilyName> for FamilyName {
    fn from(f: PathendFamilyName) -> Self {
        match f {
            PathendFamilyName::APrime => FamilyName::APrime,
            PathendFamilyName::ADoublePrime => FamilyName::ADoublePrime,
            PathendFamilyName::A => FamilyName::A,
            PathendFamilyName::B => FamilyName::B,
            PathendFamilyName::SwGens => FamilyName::SwGens,
        }
    }
}

/// Opaque transformation of `{1,…,n}`.
pub struct PathendTransformation(Transformation);

/// Opaque sorted set of transformations.
pub struct PathendMonoidSet(MonoidSet);

/// Opaque generator family.
pub struct PathendFamily {
    members: Vec<Transformation>,
    labels: Vec<CString>,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let clean = CString::new(msg.replace('\0', " ")).expect("nul bytes removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = clean);
}

fn status_of(e: &Error) -> PathendStatus {
    match e {
        Error::Parse(_) => PathendStatus::Parse,
        Error::VertexCount { .. } | Error::VertexOutOfRange { .. } | Error::ParameterOutOfRange { .. } => {
            PathendStatus::OutOfRange
        }
        Error::SizeMismatch { .. } => PathendStatus::SizeMismatch,
        Error::CapExceeded { .. } | Error::ClosureTooLarge { .. } => PathendStatus::CapExceeded,
        Error::NotInClass { .. } | Error::NotAMember(_) => PathendStatus::NotInClass,
        Error::NotRegular(_) => PathendStatus::NotRegular,
        Error::NoRankFormula(_) | Error::UndefinedFamily { .. } | Error::Precondition(_) => PathendStatus::Unsupported,
        Error::EmptyGenerators | Error::Hypothesis(_) => PathendStatus::InvalidArgument,
        Error::Consistency(_) => PathendStatus::Internal,
    }
}

/// Runs `body`, mapping library errors and panics to status codes.
fn guard(body: impl FnOnce() -> Result<(), PathendStatus>) -> PathendStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            set_last_error("");
            PathendStatus::Ok
        }
        Ok(Err(status)) => status,
        Err(_) => {
            set_last_error("internal panic");
            PathendStatus::Internal
        }
    }
}

fn lib<T>(r: pathend::Result<T>) -> Result<T, PathendStatus> {
    r.map_err(|e| {
        set_last_error(&e.to_string());
        status_of(&e)
    })
}

fn null_check<T>(p: *const T, what: &str) -> Result<(), PathendStatus> {
    if p.is_null() {
        set_last_error(&format!("{what} is null"));
        Err(PathendStatus::NullPointer)
    } else {
        Ok(())
    }
}

unsafe fn deref<'a, T>(p: *const T, what: &str) -> Result<&'a T, PathendStatus> {
    null_check(p, what)?;
    Ok(&*p)
}

unsafe fn write<T>(out: *mut T, value: T) {
    ptr::write(out, value);
}

fn boxed(t: Transformation) -> *mut PathendTransformation {
    Box::into_raw(Box::new(PathendTransformation(t)))
}

fn to_c_string(s: String) -> Result<*mut c_char, PathendStatus> {
    CString::new(s).map(CString::into_raw).map_err(|_| {
        set_last_error("string contains a nul byte");
        PathendStatus::Internal
    })
}

/// Message for the last failed call on this thread; empty after a success.
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn pathend_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Static description of a status code.
#[no_mangle]
pub extern "C" fn pathend_status_message(status: PathendStatus) -> *const c_char {
    let s: &'static CStr = match status {
        PathendStatus::Ok => c"ok",
        PathendStatus::NullPointer => c"null pointer",
        PathendStatus::InvalidArgument => c"invalid argument",
        PathendStatus::Parse => c"parse error",
        PathendStatus::OutOfRange => c"value out of range",
        PathendStatus::SizeMismatch => c"size mismatch",
        PathendStatus::CapExceeded => c"size cap exceeded",
        PathendStatus::NotInClass => c"not in class",
        PathendStatus::NotRegular => c"not regular",
        PathendStatus::Unsupported => c"unsupported",
        PathendStatus::Internal => c"internal error",
    };
    s.as_ptr()
}

/// Frees a string returned by this library. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pathend_string_free(s: *mut c_char) {
    if !s.is_null() {
        drop(CString::from_raw(s));
    }
}

/// Parses `"2,1,2,3"`-style text.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_parse(
    text: *const c_char,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        null_check(text, "text")?;
        null_check(out, "out")?;
        let s = CStr::from_ptr(text).to_str().map_err(|_| {
            set_last_error("text is not UTF-8");
            PathendStatus::Parse
        })?;
        let t = lib(s.parse::<Transformation>())?;
        write(out, boxed(t));
        Ok(())
    })
}

/// Builds a transformation from `n` one-based images.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_from_images(
    images: *const usize,
    n: usize,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        null_check(images, "images")?;
        null_check(out, "out")?;
        let v = std::slice::from_raw_parts(images, n).to_vec();
        let t = lib(Transformation::new(v))?;
        write(out, boxed(t));
        Ok(())
    })
}

/// Releases a transformation. Null is ignored.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_free(t: *mut PathendTransformation) {
    if !t.is_null() {
        drop(Box::from_raw(t));
    }
}

/// Number of vertices, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_n(t: *const PathendTransformation) -> usize {
    t.as_ref().map_or(0, |t| t.0.n())
}

/// Image of the one-based vertex `x`.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_apply(
    t: *const PathendTransformation,
    x: usize,
    out: *mut usize,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        if x == 0 || x > t.n() {
            return lib(Err(Error::VertexOutOfRange { value: x, n: t.n() }));
        }
        write(out, t.apply(x));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_to_string(
    t: *const PathendTransformation,
    out: *mut *mut c_char,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        write(out, to_c_string(t.to_string())?);
        Ok(())
    })
}

/// Left-to-right product: `x ↦ (x a) b`.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_compose(
    a: *const PathendTransformation,
    b: *const PathendTransformation,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        let a = &deref(a, "a")?.0;
        let b = &deref(b, "b")?.0;
        null_check(out, "out")?;
        let c = lib(a.compose(b))?;
        write(out, boxed(c));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_is_in_class(
    t: *const PathendTransformation,
    class: PathendClass,
    out: *mut bool,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        write(out, t.is_in_class(class.into()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_inversion_count(
    t: *const PathendTransformation,
    out: *mut usize,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        write(out, t.inversions().len());
        Ok(())
    })
}

/// Whether `t` is regular in `class` (`End` or `wEnd`).
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_is_regular(
    t: *const PathendTransformation,
    class: PathendClass,
    out: *mut bool,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        let report = lib(regular_by_criterion(t, class.into()))?;
        write(out, report.regular);
        Ok(())
    })
}

/// An endomorphism `β` with `t β t = t`; `PATHEND_STATUS_NOT_REGULAR` if none exists.
#[no_mangle]
pub unsafe extern "C" fn pathend_transformation_pseudo_inverse(
    t: *const PathendTransformation,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        let b = lib(pseudo_inverse(t))?;
        write(out, boxed(b));
        Ok(())
    })
}

/// Materializes a class; subject to the enumeration cap.
#[no_mangle]
pub unsafe extern "C" fn pathend_enumerate(
    class: PathendClass,
    n: usize,
    out: *mut *mut PathendMonoidSet,
) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        let set = lib(enumerate_class(class.into(), n))?;
        write(out, Box::into_raw(Box::new(PathendMonoidSet(set))));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_set_free(set: *mut PathendMonoidSet) {
    if !set.is_null() {
        drop(Box::from_raw(set));
    }
}

/// Number of elements, or 0 for a null handle.
#[no_mangle]
pub unsafe extern "C" fn pathend_set_len(set: *const PathendMonoidSet) -> usize {
    set.as_ref().map_or(0, |s| s.0.len())
}

/// A copy of element `index` (zero-based, lexicographic order).
#[no_mangle]
pub unsafe extern "C" fn pathend_set_get(
    set: *const PathendMonoidSet,
    index: usize,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        let s = &deref(set, "set")?.0;
        null_check(out, "out")?;
        let t = s.elements().get(index).ok_or_else(|| {
            set_last_error(&format!("index {index} out of range for a set of {}", s.len()));
            PathendStatus::OutOfRange
        })?;
        write(out, boxed(t.clone()));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_set_contains(
    set: *const PathendMonoidSet,
    t: *const PathendTransformation,
    out: *mut bool,
) -> PathendStatus {
    guard(|| {
        let s = &deref(set, "set")?.0;
        let t = &deref(t, "t")?.0;
        null_check(out, "out")?;
        write(out, s.contains(t));
        Ok(())
    })
}

/// `|End P_n|` or `|wEnd P_n|` as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn pathend_count_dp(class: PathendClass, n: usize, out: *mut *mut c_char) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        let c = lib(count_class_dp(class.into(), n))?;
        write(out, to_c_string(c.to_string())?);
        Ok(())
    })
}

/// `|wEnd P_n|` from the closed formula, as a decimal string.
#[no_mangle]
pub unsafe extern "C" fn pathend_wend_count(n: usize, out: *mut *mut c_char) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        let c = lib(wend_count(n))?;
        write(out, to_c_string(c.to_string())?);
        Ok(())
    })
}

/// Rank of `End`, `wEnd` or `swEnd` of `P_n`.
#[no_mangle]
pub unsafe extern "C" fn pathend_rank_formula(class: PathendClass, n: usize, out: *mut usize) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        write(out, lib(rank_formula(class.into(), n))?);
        Ok(())
    })
}

/// Whether every structural check passes for `P_n`.
#[no_mangle]
pub unsafe extern "C" fn pathend_verify_structure(n: usize, out: *mut bool) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        write(out, lib(verify_structure(n))?.passed());
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_family(
    name: PathendFamilyName,
    n: usize,
    out: *mut *mut PathendFamily,
) -> PathendStatus {
    guard(|| {
        null_check(out, "out")?;
        let fam = lib(family(name.into(), n))?;
        let labels = fam
            .labels
            .into_iter()
            .map(|l| CString::new(l).expect("labels are ASCII"))
            .collect();
        write(
            out,
            Box::into_raw(Box::new(PathendFamily {
                members: fam.members,
                labels,
            })),
        );
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn pathend_family_free(fam: *mut PathendFamily) {
    if !fam.is_null() {
        drop(Box::from_raw(fam));
    }
}

#[no_mangle]
pub unsafe extern "C" fn pathend_family_len(fam: *const PathendFamily) -> usize {
    fam.as_ref().map_or(0, |f| f.members.len())
}

/// A copy of member `index`.
#[no_mangle]
pub unsafe extern "C" fn pathend_family_get(
    fam: *const PathendFamily,
    index: usize,
    out: *mut *mut PathendTransformation,
) -> PathendStatus {
    guard(|| {
        let f = deref(fam, "fam")?;
        null_check(out, "out")?;
        let t = f.members.get(index).ok_or_else(|| {
            set_last_error(&format!(
                "index {index} out of range for a family of {}",
                f.members.len()
            ));
            PathendStatus::OutOfRange
        })?;
        write(out, boxed(t.clone()));
        Ok(())
    })
}

/// Label of member `index`, such as `"alpha_2"`; owned by the family, null if out of range.
#[no_mangle]
pub unsafe extern "C" fn pathend_family_label(fam: *const PathendFamily, index: usize) -> *const c_char {
    fam.as_ref()
        .and_then(|f| f.labels.get(index))
        .map_or(ptr::null(), |l| l.as_ptr())
}

/// Whether the family generates the whole class.
#[no_mangle]
pub unsafe extern "C" fn pathend_family_generates(
    fam: *const PathendFamily,
    class: PathendClass,
    out: *mut bool,
) -> PathendStatus {
    guard(|| {
        let f = deref(fam, "fam")?;
        null_check(out, "out")?;
        let n = f.members.first().map_or(0, Transformation::n);
        write(out, lib(generates_class(&f.members, class.into(), n))?);
        Ok(())
    })
}
