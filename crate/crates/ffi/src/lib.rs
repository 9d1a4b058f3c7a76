//! C ABI over `qha-core`.
//!
//! Every object crosses the boundary as an opaque heap handle created by a
//! `*_new`, `*_read` or transform function and released with the matching
//! `*_free`. Functions return a [`QhaStatus`]; on failure the thread-local
//! message from [`qha_last_error`] describes the cause. Results are written
//! through out-pointers, which are left untouched on failure. Complex
//! arrays use [`QhaComplex`], row-major for symbols (frequency index
//! fastest) and kernels.

use std::cell::RefCell;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use qha_core::{
    build_symbol, convolve_symbols, cross_wigner, fourier_weyl, io, lp_norm, op_conv, rank_one,
    schatten_norm, symplectic_fourier, trace, weyl_quantize, weyl_symbol, Complex64, ConvMethod,
    Exponent, OperatorMatrix, PhaseGrid, QhaError, SymbolGrid, SymbolSpec, WindowVector,
};

/// Result code of every fallible call.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhaStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidParameter = 2,
    GridMismatch = 3,
    Domain = 4,
    HypothesisViolation = 5,
    Format = 6,
    Io = 7,
    Panic = 8,
}

/// Operator-convolution algorithm selector.
#[repr(C)]
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum QhaConvMethod {
    Direct = 0,
    Fast = 1,
}

#[repr(C)]
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct QhaComplex {
    pub re: f64,
    pub im: f64,
}

/// Opaque phase-space grid.
pub struct QhaGrid(PhaseGrid);
/// Opaque sampled symbol.
pub struct QhaSymbol(SymbolGrid);
/// Opaque operator kernel.
pub struct QhaOperator(OperatorMatrix);
/// Opaque window vector.
pub struct QhaVector(WindowVector);

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: String) {
    let msg = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(msg));
}

enum Failure {
    Null(&'static str),
    Core(QhaError),
}

impl From<QhaError> for Failure {
    fn from(e: QhaError) -> Self {
        Failure::Core(e)
    }
}

fn status_of(e: &QhaError) -> QhaStatus {
    match e {
        QhaError::InvalidParameter(_) | QhaError::Unknown { .. } => QhaStatus::InvalidParameter,
        QhaError::GridMismatch(_) | QhaError::GridAlignment(_) => QhaStatus::GridMismatch,
        QhaError::Domain(_) => QhaStatus::Domain,
        QhaError::HypothesisViolation(_) => QhaStatus::HypothesisViolation,
        QhaError::Format { .. } => QhaStatus::Format,
        QhaError::Io { .. } => QhaStatus::Io,
    }
}

fn guard(body: impl FnOnce() -> Result<(), Failure>) -> QhaStatus {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            QhaStatus::Ok
        }
        Ok(Err(Failure::Null(what))) => {
            set_error(format!("null pointer: {what}"));
            QhaStatus::NullPointer
        }
        Ok(Err(Failure::Core(e))) => {
            set_error(e.to_string());
            status_of(&e)
        }
        Err(panic) => {
            let msg = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(format!("internal error: {msg}"));
            QhaStatus::Panic
        }
    }
}

unsafe fn get<'a, T>(p: *const T, what: &'static str) -> Result<&'a T, Failure> {
    unsafe { p.as_ref() }.ok_or(Failure::Null(what))
}

unsafe fn put<T>(out: *mut *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    unsafe { *out = Box::into_raw(Box::new(value)) };
    Ok(())
}

unsafe fn put_value<T>(out: *mut T, value: T) -> Result<(), Failure> {
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    unsafe { *out = value };
    Ok(())
}

unsafe fn text<'a>(s: *const c_char, what: &'static str) -> Result<&'a str, Failure> {
    if s.is_null() {
        return Err(Failure::Null(what));
    }
    unsafe { CStr::from_ptr(s) }
        .to_str()
        .map_err(|_| Failure::Core(QhaError::InvalidParameter(format!("{what} is not UTF-8"))))
}

unsafe fn complex_in(data: *const QhaComplex, len: usize) -> Result<Vec<Complex64>, Failure> {
    if len == 0 {
        return Ok(Vec::new());
    }
    if data.is_null() {
        return Err(Failure::Null("data"));
    }
    let slice = unsafe { std::slice::from_raw_parts(data, len) };
    Ok(slice.iter().map(|c| Complex64::new(c.re, c.im)).collect())
}

unsafe fn complex_out(
    values: &[Complex64],
    out: *mut QhaComplex,
    len: usize,
) -> Result<(), Failure> {
    if len != values.len() {
        return Err(Failure::Core(QhaError::GridMismatch(format!(
            "buffer of length {len}, expected {}",
            values.len()
        ))));
    }
    if out.is_null() {
        return Err(Failure::Null("out"));
    }
    let slice = unsafe { std::slice::from_raw_parts_mut(out, len) };
    for (dst, v) in slice.iter_mut().zip(values) {
        *dst = QhaComplex { re: v.re, im: v.im };
    }
    Ok(())
}

fn exponent(p: f64) -> Result<Exponent, Failure> {
    Ok(Exponent::new(p)?)
}

/// Message of the last failed call on this thread, or null. Valid until
/// the next call into the library on the same thread.
#[no_mangle]
pub extern "C" fn qha_last_error() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |s| s.as_ptr()))
}

/// Static name of a status code.
#[no_mangle]
pub extern "C" fn qha_status_name(status: QhaStatus) -> *const c_char {
    let name: &'static CStr = match status {
        QhaStatus::Ok => c"ok",
        QhaStatus::NullPointer => c"null pointer",
        QhaStatus::InvalidParameter => c"invalid parameter",
        QhaStatus::GridMismatch => c"grid mismatch",
        QhaStatus::Domain => c"domain error",
        QhaStatus::HypothesisViolation => c"hypothesis violation",
        QhaStatus::Format => c"file format error",
        QhaStatus::Io => c"i/o error",
        QhaStatus::Panic => c"internal error",
    };
    name.as_ptr()
}

/// Grid with `n` samples per axis on `[-half_width, half_width)`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_grid_new(
    n: usize,
    half_width: f64,
    out: *mut *mut QhaGrid,
) -> QhaStatus {
    guard(|| unsafe { put(out, QhaGrid(PhaseGrid::new(n, half_width)?)) })
}

/// Grid with equal position and frequency spacing, `L = √n / 2`.
///
/// # Safety
/// `out` must be valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_grid_self_dual(n: usize, out: *mut *mut QhaGrid) -> QhaStatus {
    guard(|| unsafe { put(out, QhaGrid(PhaseGrid::self_dual(n)?)) })
}

/// # Safety
/// `grid` must be null or a live grid handle.
#[no_mangle]
pub unsafe extern "C" fn qha_grid_n(grid: *const QhaGrid) -> usize {
    unsafe { grid.as_ref() }.map_or(0, |g| g.0.n())
}

/// # Safety
/// `grid` must be null or a live grid handle.
#[no_mangle]
pub unsafe extern "C" fn qha_grid_half_width(grid: *const QhaGrid) -> f64 {
    unsafe { grid.as_ref() }.map_or(f64::NAN, |g| g.0.half_width())
}

/// # Safety
/// `grid` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qha_grid_free(grid: *mut QhaGrid) {
    if !grid.is_null() {
        drop(unsafe { Box::from_raw(grid) });
    }
}

trait Handle: Sized {
    type Inner: Clone;
    fn wrap(inner: Self::Inner) -> Self;
    fn inner(&self) -> &Self::Inner;
    fn make(grid: PhaseGrid, data: Vec<Complex64>) -> qha_core::Result<Self::Inner>;
    fn data(inner: &Self::Inner) -> &[Complex64];
    fn grid_of(inner: &Self::Inner) -> PhaseGrid;
    fn read(path: &str) -> qha_core::Result<Self::Inner>;
    fn write(path: &str, inner: &Self::Inner) -> qha_core::Result<()>;
}

macro_rules! impl_handle {
    ($handle:ident, $inner:ty, $data:ident, $read:path, $write:path) => {
        impl Handle for $handle {
            type Inner = $inner;
            fn wrap(inner: $inner) -> Self {
                $handle(inner)
            }
            fn inner(&self) -> &$inner {
                &self.0
            }
            fn make(grid: PhaseGrid, data: Vec<Complex64>) -> qha_core::Result<$inner> {
                <$inner>::new(grid, data)
            }
            fn data(inner: &$inner) -> &[Complex64] {
                inner.$data()
            }
            fn grid_of(inner: &$inner) -> PhaseGrid {
                *inner.grid()
            }
            fn read(path: &str) -> qha_core::Result<$inner> {
                $read(path)
            }
            fn write(path: &str, inner: &$inner) -> qha_core::Result<()> {
                $write(path, inner)
            }
        }
    };
}

impl_handle!(
    QhaSymbol,
    SymbolGrid,
    values,
    io::read_symbol,
    io::write_symbol
);
impl_handle!(
    QhaOperator,
    OperatorMatrix,
    kernel,
    io::read_operator,
    io::write_operator
);
impl_handle!(
    QhaVector,
    WindowVector,
    values,
    io::read_vector,
    io::write_vector
);

unsafe fn h_new<H: Handle>(
    grid: *const QhaGrid,
    data: *const QhaComplex,
    len: usize,
    out: *mut *mut H,
) -> QhaStatus {
    guard(|| unsafe {
        let grid = get(grid, "grid")?.0;
        put(out, H::wrap(H::make(grid, complex_in(data, len)?)?))
    })
}

unsafe fn h_len<H: Handle>(h: *const H) -> usize {
    unsafe { h.as_ref() }.map_or(0, |h| H::data(h.inner()).len())
}

unsafe fn h_values<H: Handle>(h: *const H, out: *mut QhaComplex, len: usize) -> QhaStatus {
    guard(|| unsafe { complex_out(H::data(get(h, "handle")?.inner()), out, len) })
}

unsafe fn h_grid<H: Handle>(h: *const H, out: *mut *mut QhaGrid) -> QhaStatus {
    guard(|| unsafe { put(out, QhaGrid(H::grid_of(get(h, "handle")?.inner()))) })
}

unsafe fn h_read<H: Handle>(path: *const c_char, out: *mut *mut H) -> QhaStatus {
    guard(|| unsafe { put(out, H::wrap(H::read(text(path, "path")?)?)) })
}

unsafe fn h_write<H: Handle>(h: *const H, path: *const c_char) -> QhaStatus {
    guard(|| unsafe { Ok(H::write(text(path, "path")?, get(h, "handle")?.inner())?) })
}

unsafe fn h_copy<H: Handle>(h: *const H, out: *mut *mut H) -> QhaStatus {
    guard(|| unsafe { put(out, H::wrap(get(h, "handle")?.inner().clone())) })
}

unsafe fn h_free<H>(h: *mut H) {
    if !h.is_null() {
        drop(unsafe { Box::from_raw(h) });
    }
}

/// Wraps `len` symbol samples on `grid`; the length must match the grid.
///
/// # Safety
/// `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_new(
    grid: *const QhaGrid,
    data: *const QhaComplex,
    len: usize,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    unsafe { h_new(grid, data, len, out) }
}

/// Number of symbol samples, 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_len(h: *const QhaSymbol) -> usize {
    unsafe { h_len(h) }
}

/// Copies the symbol samples into `out`, which must hold exactly `len` entries.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_values(
    h: *const QhaSymbol,
    out: *mut QhaComplex,
    len: usize,
) -> QhaStatus {
    unsafe { h_values(h, out, len) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_grid(h: *const QhaSymbol, out: *mut *mut QhaGrid) -> QhaStatus {
    unsafe { h_grid(h, out) }
}

/// # Safety
/// `path` must be NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_read(
    path: *const c_char,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    unsafe { h_read(path, out) }
}

/// # Safety
/// `h` must be a live handle and `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_write(h: *const QhaSymbol, path: *const c_char) -> QhaStatus {
    unsafe { h_write(h, path) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_copy(
    h: *const QhaSymbol,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    unsafe { h_copy(h, out) }
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_free(h: *mut QhaSymbol) {
    unsafe { h_free(h) }
}

/// Wraps `len` kernel samples on `grid`; the length must match the grid.
///
/// # Safety
/// `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_new(
    grid: *const QhaGrid,
    data: *const QhaComplex,
    len: usize,
    out: *mut *mut QhaOperator,
) -> QhaStatus {
    unsafe { h_new(grid, data, len, out) }
}

/// Number of kernel samples, 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_len(h: *const QhaOperator) -> usize {
    unsafe { h_len(h) }
}

/// Copies the kernel samples into `out`, which must hold exactly `len` entries.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_kernel(
    h: *const QhaOperator,
    out: *mut QhaComplex,
    len: usize,
) -> QhaStatus {
    unsafe { h_values(h, out, len) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_grid(
    h: *const QhaOperator,
    out: *mut *mut QhaGrid,
) -> QhaStatus {
    unsafe { h_grid(h, out) }
}

/// # Safety
/// `path` must be NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_read(
    path: *const c_char,
    out: *mut *mut QhaOperator,
) -> QhaStatus {
    unsafe { h_read(path, out) }
}

/// # Safety
/// `h` must be a live handle and `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_write(
    h: *const QhaOperator,
    path: *const c_char,
) -> QhaStatus {
    unsafe { h_write(h, path) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_copy(
    h: *const QhaOperator,
    out: *mut *mut QhaOperator,
) -> QhaStatus {
    unsafe { h_copy(h, out) }
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qha_operator_free(h: *mut QhaOperator) {
    unsafe { h_free(h) }
}

/// Wraps `len` vector samples on `grid`; the length must match the grid.
///
/// # Safety
/// `grid` must be a live handle, `data` valid for `len` reads, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_new(
    grid: *const QhaGrid,
    data: *const QhaComplex,
    len: usize,
    out: *mut *mut QhaVector,
) -> QhaStatus {
    unsafe { h_new(grid, data, len, out) }
}

/// Number of vector samples, 0 for null.
///
/// # Safety
/// `h` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_len(h: *const QhaVector) -> usize {
    unsafe { h_len(h) }
}

/// Copies the vector samples into `out`, which must hold exactly `len` entries.
///
/// # Safety
/// `h` must be a live handle and `out` valid for `len` writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_values(
    h: *const QhaVector,
    out: *mut QhaComplex,
    len: usize,
) -> QhaStatus {
    unsafe { h_values(h, out, len) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_grid(h: *const QhaVector, out: *mut *mut QhaGrid) -> QhaStatus {
    unsafe { h_grid(h, out) }
}

/// # Safety
/// `path` must be NUL-terminated and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_read(
    path: *const c_char,
    out: *mut *mut QhaVector,
) -> QhaStatus {
    unsafe { h_read(path, out) }
}

/// # Safety
/// `h` must be a live handle and `path` NUL-terminated.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_write(h: *const QhaVector, path: *const c_char) -> QhaStatus {
    unsafe { h_write(h, path) }
}

/// # Safety
/// `h` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_copy(
    h: *const QhaVector,
    out: *mut *mut QhaVector,
) -> QhaStatus {
    unsafe { h_copy(h, out) }
}

/// # Safety
/// `h` must be null or a handle not yet freed.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_free(h: *mut QhaVector) {
    unsafe { h_free(h) }
}

/// Samples a descriptor such as `gaussian:2,0.7071`, `projector`,
/// `constant:1` or `coordinate:x`.
///
/// # Safety
/// `grid` must be a live handle, `spec` NUL-terminated, `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symbol_build(
    grid: *const QhaGrid,
    spec: *const c_char,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe {
        let spec: SymbolSpec = text(spec, "spec")?.parse()?;
        put(out, QhaSymbol(build_symbol(&get(grid, "grid")?.0, &spec)?))
    })
}

/// `φ₀(t) = 2^{1/4} e^{−πt²}` sampled on `grid`.
///
/// # Safety
/// `grid` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_vector_gaussian(
    grid: *const QhaGrid,
    out: *mut *mut QhaVector,
) -> QhaStatus {
    guard(|| unsafe {
        put(
            out,
            QhaVector(WindowVector::standard_gaussian(&get(grid, "grid")?.0)),
        )
    })
}

/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_symplectic_fourier(
    s: *const QhaSymbol,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe { put(out, QhaSymbol(symplectic_fourier(&get(s, "symbol")?.0))) })
}

/// # Safety
/// `a`, `b` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_convolve(
    a: *const QhaSymbol,
    b: *const QhaSymbol,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe {
        put(
            out,
            QhaSymbol(convolve_symbols(&get(a, "a")?.0, &get(b, "b")?.0)?),
        )
    })
}

/// `‖s‖_p`; pass `INFINITY` for the sup norm.
///
/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_lp_norm(s: *const QhaSymbol, p: f64, out: *mut f64) -> QhaStatus {
    guard(|| unsafe { put_value(out, lp_norm(&get(s, "symbol")?.0, exponent(p)?)?) })
}

/// # Safety
/// `s` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_weyl_quantize(
    s: *const QhaSymbol,
    out: *mut *mut QhaOperator,
) -> QhaStatus {
    guard(|| unsafe { put(out, QhaOperator(weyl_quantize(&get(s, "symbol")?.0))) })
}

/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_weyl_symbol(
    t: *const QhaOperator,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe { put(out, QhaSymbol(weyl_symbol(&get(t, "operator")?.0))) })
}

/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_fourier_weyl(
    t: *const QhaOperator,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe { put(out, QhaSymbol(fourier_weyl(&get(t, "operator")?.0))) })
}

/// Cross-Wigner distribution `W(psi, phi)`.
///
/// # Safety
/// `psi`, `phi` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_cross_wigner(
    psi: *const QhaVector,
    phi: *const QhaVector,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe {
        put(
            out,
            QhaSymbol(cross_wigner(&get(psi, "psi")?.0, &get(phi, "phi")?.0)?),
        )
    })
}

/// The operator `f ↦ ⟨f, h⟩ g`.
///
/// # Safety
/// `g`, `h` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_rank_one(
    g: *const QhaVector,
    h: *const QhaVector,
    out: *mut *mut QhaOperator,
) -> QhaStatus {
    guard(|| unsafe {
        put(
            out,
            QhaOperator(rank_one(&get(g, "g")?.0, &get(h, "h")?.0)?),
        )
    })
}

/// `‖t‖_{S^p}`; pass `INFINITY` for the operator norm.
///
/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_schatten_norm(
    t: *const QhaOperator,
    p: f64,
    out: *mut f64,
) -> QhaStatus {
    guard(|| unsafe {
        put_value(
            out,
            schatten_norm(&get(t, "operator")?.0, exponent(p)?)?.value,
        )
    })
}

/// # Safety
/// `t` must be a live handle and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_trace(t: *const QhaOperator, out: *mut QhaComplex) -> QhaStatus {
    guard(|| unsafe {
        let z = trace(&get(t, "operator")?.0);
        put_value(out, QhaComplex { re: z.re, im: z.im })
    })
}

/// Operator convolution `t ⋆ s`, a symbol.
///
/// # Safety
/// `t`, `s` must be live handles and `out` valid for writes.
#[no_mangle]
pub unsafe extern "C" fn qha_op_conv(
    t: *const QhaOperator,
    s: *const QhaOperator,
    method: QhaConvMethod,
    out: *mut *mut QhaSymbol,
) -> QhaStatus {
    guard(|| unsafe {
        let method = match method {
            QhaConvMethod::Direct => ConvMethod::Direct,
            QhaConvMethod::Fast => ConvMethod::Fast,
        };
        put(
            out,
            QhaSymbol(op_conv(&get(t, "t")?.0, &get(s, "s")?.0, method)?),
        )
    })
}
