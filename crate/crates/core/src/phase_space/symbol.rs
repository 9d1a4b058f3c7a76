use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_complex::Complex64;
use std::f64::consts::PI;

use super::{PhaseGrid, PhasePoint, Region};
use crate::error::{invalid, QhaError, Result};
use crate::exponent::Exponent;
use crate::fft;

/// Complex samples of a phase-space function on a [`PhaseGrid`].
///
/// Row index is position (`x_i`), column index is frequency (`ξ_k`).
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolGrid {
    grid: PhaseGrid,
    values: Vec<Complex64>,
}

impl SymbolGrid {
    pub fn new(grid: PhaseGrid, values: Vec<Complex64>) -> Result<Self> {
        let n = grid.n();
        if values.len() != n * n {
            return Err(QhaError::GridMismatch(format!(
                "expected {} samples for N={n}, got {}",
                n * n,
                values.len()
            )));
        }
        if let Some(pos) = values
            .iter()
            .position(|v| !(v.re.is_finite() && v.im.is_finite()))
        {
            return Err(invalid(format!("non-finite sample at index {pos}")));
        }
        Ok(SymbolGrid { grid, values })
    }

    pub(crate) fn from_raw(grid: PhaseGrid, values: Vec<Complex64>) -> Self {
        debug_assert_eq!(values.len(), grid.n() * grid.n());
        SymbolGrid { grid, values }
    }

    pub fn zeros(grid: &PhaseGrid) -> Self {
        let n = grid.n();
        SymbolGrid {
            grid: *grid,
            values: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn from_fn(grid: &PhaseGrid, f: impl Fn(PhasePoint) -> Complex64) -> Self {
        let n = grid.n();
        let values = (0..n * n)
            .map(|idx| f(grid.point(idx / n, idx % n)))
            .collect();
        SymbolGrid {
            grid: *grid,
            values,
        }
    }

    pub fn from_real_fn(grid: &PhaseGrid, f: impl Fn(PhasePoint) -> f64) -> Self {
        SymbolGrid::from_fn(grid, |z| Complex64::new(f(z), 0.0))
    }

    pub fn grid(&self) -> &PhaseGrid {
        &self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Complex64> {
        self.values
    }

    pub fn at(&self, i: usize, k: usize) -> Complex64 {
        self.values[i * self.grid.n() + k]
    }

    pub fn map(&self, f: impl Fn(Complex64) -> Complex64) -> SymbolGrid {
        SymbolGrid {
            grid: self.grid,
            values: self.values.iter().map(|&v| f(v)).collect(),
        }
    }

    /// Pointwise combination of two symbols on the same grid.
    pub fn zip_with(
        &self,
        other: &SymbolGrid,
        f: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<SymbolGrid> {
        self.grid.ensure_same(&other.grid)?;
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(&a, &b)| f(a, b))
            .collect();
        Ok(SymbolGrid {
            grid: self.grid,
            values,
        })
    }

    pub fn sub(&self, other: &SymbolGrid) -> Result<SymbolGrid> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &SymbolGrid) -> Result<SymbolGrid> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: Complex64) -> SymbolGrid {
        self.map(|v| v * s)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn max_abs_imag(&self) -> f64 {
        self.values.iter().map(|v| v.im.abs()).fold(0.0, f64::max)
    }

    /// Periodic grid translation: returns `S(· − z)` for `z = (di·h, dk·Δξ)`.
    pub fn translate(&self, di: isize, dk: isize) -> SymbolGrid {
        let n = self.grid.n() as isize;
        let mut values = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for i in 0..n {
            let si = (i - di).rem_euclid(n);
            for k in 0..n {
                let sk = (k - dk).rem_euclid(n);
                values[(i * n + k) as usize] = self.values[(si * n + sk) as usize];
            }
        }
        SymbolGrid {
            grid: self.grid,
            values,
        }
    }

    /// `S(−·)` under the periodic index reflection.
    pub fn reflect(&self) -> SymbolGrid {
        let n = self.grid.n();
        let mut values = vec![Complex64::new(0.0, 0.0); self.values.len()];
        for i in 0..n {
            for k in 0..n {
                values[i * n + k] = self.values[self.grid.reflect(i) * n + self.grid.reflect(k)];
            }
        }
        SymbolGrid {
            grid: self.grid,
            values,
        }
    }

    /// Fraction of the squared L² mass lying outside `region`.
    pub fn energy_outside(&self, region: &Region) -> f64 {
        let n = self.grid.n();
        let (mut outside, mut total) = (0.0, 0.0);
        for (idx, v) in self.values.iter().enumerate() {
            let e = v.norm_sqr();
            total += e;
            if !region.contains(self.grid.point(idx / n, idx % n)) {
                outside += e;
            }
        }
        if total == 0.0 {
            0.0
        } else {
            outside / total
        }
    }

    /// Relative L² distance `‖self − other‖₂ / ‖other‖₂`.
    pub fn relative_l2_error(&self, reference: &SymbolGrid) -> Result<f64> {
        let diff = lp_norm(&self.sub(reference)?, Exponent::TWO)?;
        let base = lp_norm(reference, Exponent::TWO)?;
        Ok(if base == 0.0 { diff } else { diff / base })
    }

    /// Relative sup distance `‖self − other‖_∞ / ‖other‖_∞`.
    pub fn relative_sup_error(&self, reference: &SymbolGrid) -> Result<f64> {
        let diff = self.sub(reference)?.max_abs();
        let base = reference.max_abs();
        Ok(if base == 0.0 { diff } else { diff / base })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    Position,
    Frequency,
}

/// Descriptor for [`build_symbol`].
#[derive(Clone, Debug, PartialEq)]
pub enum SymbolSpec {
    /// `z ↦ amplitude·exp(−π|z|²/width²)`.
    Gaussian {
        amplitude: f64,
        width: f64,
    },
    Constant {
        value: f64,
    },
    /// `z ↦ x` or `z ↦ ξ`.
    Coordinate {
        axis: Axis,
    },
    /// A `QHAGRID1` file.
    File {
        path: PathBuf,
    },
}

impl SymbolSpec {
    /// `2·exp(−2π|z|²)`, the Weyl symbol of the projector onto the
    /// normalized Gaussian.
    pub fn gaussian_projector() -> SymbolSpec {
        SymbolSpec::Gaussian {
            amplitude: 2.0,
            width: std::f64::consts::FRAC_1_SQRT_2,
        }
    }
}

impl FromStr for SymbolSpec {
    type Err = QhaError;

    /// `gaussian:A,W`, `projector`, `constant:C`, `coordinate:x|xi`, `file:PATH`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, arg) = s.split_once(':').unwrap_or((s, ""));
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| invalid(format!("bad number `{t}` in `{s}`")))
        };
        match kind.trim() {
            "gaussian" => {
                let (a, w) = arg.split_once(',').ok_or_else(|| invalid("gaussian:A,W"))?;
                Ok(SymbolSpec::Gaussian {
                    amplitude: num(a)?,
                    width: num(w)?,
                })
            }
            "projector" => Ok(SymbolSpec::gaussian_projector()),
            "constant" => Ok(SymbolSpec::Constant { value: num(arg)? }),
            "coordinate" => match arg.trim() {
                "x" => Ok(SymbolSpec::Coordinate {
                    axis: Axis::Position,
                }),
                "xi" | "ξ" => Ok(SymbolSpec::Coordinate {
                    axis: Axis::Frequency,
                }),
                other => Err(QhaError::Unknown {
                    kind: "axis",
                    name: other.to_string(),
                }),
            },
            "file" => Ok(SymbolSpec::File {
                path: PathBuf::from(arg),
            }),
            other => Err(QhaError::Unknown {
                kind: "symbol kind",
                name: other.to_string(),
            }),
        }
    }
}

impl fmt::Display for SymbolSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymbolSpec::Gaussian { amplitude, width } => write!(f, "gaussian:{amplitude},{width}"),
            SymbolSpec::Constant { value } => write!(f, "constant:{value}"),
            SymbolSpec::Coordinate {
                axis: Axis::Position,
            } => f.write_str("coordinate:x"),
            SymbolSpec::Coordinate {
                axis: Axis::Frequency,
            } => f.write_str("coordinate:xi"),
            SymbolSpec::File { path } => write!(f, "file:{}", path.display()),
        }
    }
}

pub fn build_symbol(grid: &PhaseGrid, spec: &SymbolSpec) -> Result<SymbolGrid> {
    match *spec {
        SymbolSpec::Gaussian { amplitude, width } => {
            if !(width.is_finite() && width > 0.0 && amplitude.is_finite()) {
                return Err(invalid(
                    "gaussian needs finite amplitude and positive width",
                ));
            }
            Ok(SymbolGrid::from_real_fn(grid, |z| {
                amplitude * (-PI * z.norm_sqr() / (width * width)).exp()
            }))
        }
        SymbolSpec::Constant { value } => Ok(SymbolGrid::from_real_fn(grid, |_| value)),
        SymbolSpec::Coordinate { axis } => Ok(SymbolGrid::from_real_fn(grid, |z| match axis {
            Axis::Position => z.x,
            Axis::Frequency => z.xi,
        })),
        SymbolSpec::File { ref path } => {
            let s = crate::io::read_symbol(path)?;
            grid.ensure_same(s.grid())?;
            Ok(s)
        }
    }
}

/// Periodic convolution `(A∗B)(z) = Σ_w A(z − w)·B(w)·h·Δξ`.
pub fn convolve_symbols(a: &SymbolGrid, b: &SymbolGrid) -> Result<SymbolGrid> {
    a.grid.ensure_same(&b.grid)?;
    let n = a.grid.n();
    let c = a.grid.center();
    let mut fa = a.values.clone();
    let mut fb = b.values.clone();
    fft::plain_2d(&mut fa, n, false);
    fft::plain_2d(&mut fb, n, false);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x *= y;
    }
    fft::plain_2d(&mut fa, n, true);
    let scale = a.grid.cell_area() / (n * n) as f64;
    // x_i − x_i' sits at index i − i' + c
    let mut values = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        let si = (i + c) % n;
        for k in 0..n {
            values[i * n + k] = fa[si * n + (k + c) % n] * scale;
        }
    }
    Ok(SymbolGrid {
        grid: a.grid,
        values,
    })
}

/// `(h·Δξ·Σ|S|^p)^{1/p}`, or `max|S|` for `p = ∞`.
pub fn lp_norm(s: &SymbolGrid, p: Exponent) -> Result<f64> {
    Ok(p.norm_of(s.values.iter().map(|v| v.norm()), s.grid.cell_area()))
}
