use std::ffi::{CStr, CString};
use std::path::PathBuf;
use std::process::Command;
use std::ptr;

use qha_ffi::*;

fn ok(status: QhaStatus) {
    assert_eq!(status, QhaStatus::Ok, "{}", last_error());
}

fn last_error() -> String {
    let p = qha_last_error();
    if p.is_null() {
        String::new()
    } else {
        unsafe { CStr::from_ptr(p) }.to_string_lossy().into_owned()
    }
}

fn grid(n: usize) -> *mut QhaGrid {
    let mut g = ptr::null_mut();
    ok(unsafe { qha_grid_self_dual(n, &mut g) });
    g
}

fn projector(g: *const QhaGrid) -> *mut QhaOperator {
    let mut phi = ptr::null_mut();
    let mut t = ptr::null_mut();
    unsafe {
        ok(qha_vector_gaussian(g, &mut phi));
        ok(qha_rank_one(phi, phi, &mut t));
        qha_vector_free(phi);
    }
    t
}

#[test]
fn projector_norms_and_trace() {
    let g = grid(64);
    let t = projector(g);
    for p in [1.0, 2.0, 3.5, f64::INFINITY] {
        let mut v = 0.0;
        ok(unsafe { qha_schatten_norm(t, p, &mut v) });
        assert!((v - 1.0).abs() < 1e-10, "p={p}: {v}");
    }
    let mut tr = QhaComplex::default();
    ok(unsafe { qha_trace(t, &mut tr) });
    assert!((tr.re - 1.0).abs() < 1e-12 && tr.im.abs() < 1e-12);
    unsafe {
        qha_operator_free(t);
        qha_grid_free(g);
    }
}

#[test]
fn weyl_round_trip_and_wigner() {
    let g = grid(64);
    let mut phi = ptr::null_mut();
    let mut w = ptr::null_mut();
    let mut t = ptr::null_mut();
    let mut back = ptr::null_mut();
    unsafe {
        ok(qha_vector_gaussian(g, &mut phi));
        ok(qha_cross_wigner(phi, phi, &mut w));
        ok(qha_weyl_quantize(w, &mut t));
        ok(qha_weyl_symbol(t, &mut back));
        let n = qha_symbol_len(w);
        assert_eq!(n, 64 * 64);
        let mut a = vec![QhaComplex::default(); n];
        let mut b = vec![QhaComplex::default(); n];
        ok(qha_symbol_values(w, a.as_mut_ptr(), n));
        ok(qha_symbol_values(back, b.as_mut_ptr(), n));
        let err = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.re - y.re).hypot(x.im - y.im))
            .fold(0.0, f64::max);
        assert!(err < 1e-12, "{err}");
        // W(φ₀,φ₀)(0) = 2
        let c = 32 * 64 + 32;
        assert!((a[c].re - 2.0).abs() < 1e-10, "{:?}", a[c]);

        let p = projector(g);
        let mut k1 = vec![QhaComplex::default(); qha_operator_len(t)];
        let mut k2 = k1.clone();
        ok(qha_operator_kernel(t, k1.as_mut_ptr(), k1.len()));
        ok(qha_operator_kernel(p, k2.as_mut_ptr(), k2.len()));
        let err = k1
            .iter()
            .zip(&k2)
            .map(|(x, y)| (x.re - y.re).hypot(x.im - y.im))
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
        qha_operator_free(p);

        for h in [w, back] {
            qha_symbol_free(h);
        }
        qha_operator_free(t);
        qha_vector_free(phi);
        qha_grid_free(g);
    }
}

#[test]
fn transforms_agree() {
    let g = grid(32);
    let t = projector(g);
    let mut direct = ptr::null_mut();
    let mut fast = ptr::null_mut();
    let mut fw = ptr::null_mut();
    let mut ffw = ptr::null_mut();
    let mut w = ptr::null_mut();
    let mut ww = ptr::null_mut();
    unsafe {
        ok(qha_op_conv(t, t, QhaConvMethod::Direct, &mut direct));
        ok(qha_op_conv(t, t, QhaConvMethod::Fast, &mut fast));
        let n = qha_symbol_len(direct);
        let mut a = vec![QhaComplex::default(); n];
        let mut b = vec![QhaComplex::default(); n];
        ok(qha_symbol_values(direct, a.as_mut_ptr(), n));
        ok(qha_symbol_values(fast, b.as_mut_ptr(), n));
        let err = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.re - y.re).hypot(x.im - y.im))
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");

        // F_W(T) = F_σ(symbol of T), and P⋆P = W∗W for the projector.
        ok(qha_fourier_weyl(t, &mut fw));
        ok(qha_weyl_symbol(t, &mut w));
        ok(qha_symplectic_fourier(w, &mut ffw));
        ok(qha_symbol_values(fw, a.as_mut_ptr(), n));
        ok(qha_symbol_values(ffw, b.as_mut_ptr(), n));
        let err = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.re - y.re).hypot(x.im - y.im))
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");
        ok(qha_convolve(w, w, &mut ww));
        ok(qha_symbol_values(ww, a.as_mut_ptr(), n));
        ok(qha_symbol_values(direct, b.as_mut_ptr(), n));
        let err = a
            .iter()
            .zip(&b)
            .map(|(x, y)| (x.re - y.re).hypot(x.im - y.im))
            .fold(0.0, f64::max);
        assert!(err < 1e-10, "{err}");

        let mut l1 = 0.0;
        ok(qha_lp_norm(direct, 1.0, &mut l1));
        assert!((l1 - 1.0).abs() < 1e-8, "{l1}");
        for h in [direct, fast, fw, ffw, w, ww] {
            qha_symbol_free(h);
        }
        qha_operator_free(t);
        qha_grid_free(g);
    }
}

#[test]
fn errors_are_reported() {
    let mut g = ptr::null_mut();
    unsafe {
        assert_eq!(qha_grid_new(7, 2.0, &mut g), QhaStatus::InvalidParameter);
        assert!(g.is_null());
        assert!(!last_error().is_empty());
        assert_eq!(
            qha_grid_self_dual(16, ptr::null_mut()),
            QhaStatus::NullPointer
        );
        assert!(last_error().contains("null"));

        let g = grid(16);
        let mut s = ptr::null_mut();
        let spec = CString::new("gaussian:nope").unwrap();
        assert_eq!(
            qha_symbol_build(g, spec.as_ptr(), &mut s),
            QhaStatus::InvalidParameter
        );
        let spec = CString::new("constant:1").unwrap();
        ok(qha_symbol_build(g, spec.as_ptr(), &mut s));
        assert!(qha_last_error().is_null());

        let mut v = 0.0;
        assert_eq!(qha_lp_norm(s, 0.5, &mut v), QhaStatus::InvalidParameter);
        let mut buf = vec![QhaComplex::default(); 3];
        assert_eq!(
            qha_symbol_values(s, buf.as_mut_ptr(), 3),
            QhaStatus::GridMismatch
        );
        let mut vec = ptr::null_mut();
        let data = [QhaComplex::default(); 5];
        assert_eq!(
            qha_vector_new(g, data.as_ptr(), 5, &mut vec),
            QhaStatus::GridMismatch
        );

        let g2 = grid(32);
        let mut other = ptr::null_mut();
        ok(qha_symbol_build(g2, spec.as_ptr(), &mut other));
        let mut c = ptr::null_mut();
        assert_eq!(qha_convolve(s, other, &mut c), QhaStatus::GridMismatch);
        assert!(c.is_null());

        let missing = CString::new("/nonexistent/qha/file.bin").unwrap();
        let mut r = ptr::null_mut();
        assert_eq!(qha_symbol_read(missing.as_ptr(), &mut r), QhaStatus::Io);
        assert_eq!(qha_grid_n(ptr::null()), 0);
        qha_symbol_free(ptr::null_mut());

        let name = CStr::from_ptr(qha_status_name(QhaStatus::Format));
        assert_eq!(name.to_str().unwrap(), "file format error");
        qha_symbol_free(s);
        qha_symbol_free(other);
        qha_grid_free(g);
        qha_grid_free(g2);
    }
}

#[test]
fn files_round_trip_through_handles() {
    let dir = tempfile::tempdir().unwrap();
    let g = grid(16);
    let data: Vec<QhaComplex> = (0..16)
        .map(|j| QhaComplex {
            re: j as f64 * 0.1,
            im: -(j as f64).sqrt(),
        })
        .collect();
    let path = CString::new(dir.path().join("v.bin").to_str().unwrap()).unwrap();
    let mut v = ptr::null_mut();
    let mut copy = ptr::null_mut();
    let mut back = ptr::null_mut();
    let mut vg = ptr::null_mut();
    unsafe {
        ok(qha_vector_new(g, data.as_ptr(), data.len(), &mut v));
        ok(qha_vector_copy(v, &mut copy));
        ok(qha_vector_write(copy, path.as_ptr()));
        ok(qha_vector_read(path.as_ptr(), &mut back));
        let mut out = vec![QhaComplex::default(); 16];
        ok(qha_vector_values(back, out.as_mut_ptr(), 16));
        assert_eq!(out, data);
        ok(qha_vector_grid(back, &mut vg));
        assert_eq!(qha_grid_n(vg), 16);
        assert_eq!(qha_grid_half_width(vg), 2.0);

        let mut s = ptr::null_mut();
        assert_eq!(qha_symbol_read(path.as_ptr(), &mut s), QhaStatus::Format);
        assert!(last_error().contains("offset"));

        for h in [v, copy, back] {
            qha_vector_free(h);
        }
        qha_grid_free(vg);
        qha_grid_free(g);
    }
}

const C_PROGRAM: &str = r#"
#include <math.h>
#include <stdio.h>
#include "qha.h"

int main(void) {
    QhaGrid *g = NULL;
    QhaVector *phi = NULL;
    QhaOperator *t = NULL;
    double s1 = 0.0, sinf = 0.0;
    if (qha_grid_self_dual(64, &g) != QHA_STATUS_OK) return 1;
    if (qha_vector_gaussian(g, &phi) != QHA_STATUS_OK) return 2;
    if (qha_rank_one(phi, phi, &t) != QHA_STATUS_OK) return 3;
    if (qha_schatten_norm(t, 1.0, &s1) != QHA_STATUS_OK) return 4;
    if (qha_schatten_norm(t, INFINITY, &sinf) != QHA_STATUS_OK) return 5;
    if (qha_schatten_norm(t, 0.5, &s1) != QHA_STATUS_INVALID_PARAMETER) return 6;
    if (qha_last_error() == NULL) return 7;
    printf("%.12f %.12f\n", s1, sinf);
    qha_operator_free(t);
    qha_vector_free(phi);
    qha_grid_free(g);
    return 0;
}
"#;

/// Compiles and runs a C client against the generated header and the
/// static library. Skipped when no C compiler is available.
#[test]
fn c_client_links_against_static_library() {
    let Some(cc) = ["cc", "gcc", "clang"]
        .into_iter()
        .find(|c| Command::new(c).arg("--version").output().is_ok())
    else {
        eprintln!("no C compiler found; skipping");
        return;
    };
    let include = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("include");
    let profile_dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"))
        .parent()
        .unwrap()
        .join(if cfg!(debug_assertions) {
            "debug"
        } else {
            "release"
        });
    let lib = profile_dir.join("libqha_ffi.a");
    assert!(lib.exists(), "static library missing at {}", lib.display());

    let dir = tempfile::tempdir().unwrap();
    let src = dir.path().join("client.c");
    let exe = dir.path().join("client");
    std::fs::write(&src, C_PROGRAM).unwrap();
    let build = Command::new(cc)
        .arg("-std=c99")
        .arg("-Wall")
        .arg("-Werror")
        .arg("-I")
        .arg(&include)
        .arg(&src)
        .arg(&lib)
        .args(["-lm", "-lpthread", "-ldl", "-o"])
        .arg(&exe)
        .output()
        .unwrap();
    assert!(
        build.status.success(),
        "{}",
        String::from_utf8_lossy(&build.stderr)
    );
    let run = Command::new(&exe).output().unwrap();
    assert!(
        run.status.success(),
        "client exited with {:?}",
        run.status.code()
    );
    assert_eq!(
        String::from_utf8_lossy(&run.stdout).trim(),
        "1.000000000000 1.000000000000"
    );
}
