use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{PhaseGrid, PhasePoint, SymbolGrid};
use crate::error::{invalid, QhaError, Result};

/// Default width of the cutoff transition band.
pub const DEFAULT_MARGIN: f64 = 0.5;

/// A bounded region Ω of phase space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "lowercase")]
pub enum Region {
    Disc {
        center: PhasePoint,
        radius: f64,
    },
    /// Axis-aligned rectangle `|x − x₀| ≤ half_x`, `|ξ − ξ₀| ≤ half_xi`.
    Rect {
        center: PhasePoint,
        half_x: f64,
        half_xi: f64,
    },
}

impl Region {
    pub fn disc(radius: f64) -> Result<Self> {
        Region::disc_at(PhasePoint::ORIGIN, radius)
    }

    pub fn disc_at(center: PhasePoint, radius: f64) -> Result<Self> {
        Region::Disc { center, radius }.validated()
    }

    pub fn rect(center: PhasePoint, half_x: f64, half_xi: f64) -> Result<Self> {
        Region::Rect {
            center,
            half_x,
            half_xi,
        }
        .validated()
    }

    fn validated(self) -> Result<Self> {
        let (center, extents) = match self {
            Region::Disc { center, radius } => (center, [radius, radius]),
            Region::Rect {
                center,
                half_x,
                half_xi,
            } => (center, [half_x, half_xi]),
        };
        if !center.is_finite() {
            return Err(invalid("region center must be finite"));
        }
        if extents.iter().any(|e| !(e.is_finite() && *e > 0.0)) {
            return Err(invalid("region extents must be positive and finite"));
        }
        Ok(self)
    }

    pub fn center(&self) -> PhasePoint {
        match *self {
            Region::Disc { center, .. } | Region::Rect { center, .. } => center,
        }
    }

    /// Euclidean distance from `z` to the region (zero inside).
    pub fn distance(&self, z: PhasePoint) -> f64 {
        match *self {
            Region::Disc { center, radius } => ((z - center).norm() - radius).max(0.0),
            Region::Rect {
                center,
                half_x,
                half_xi,
            } => {
                let dx = ((z.x - center.x).abs() - half_x).max(0.0);
                let dxi = ((z.xi - center.xi).abs() - half_xi).max(0.0);
                dx.hypot(dxi)
            }
        }
    }

    pub fn contains(&self, z: PhasePoint) -> bool {
        self.distance(z) == 0.0
    }

    pub fn inradius(&self) -> f64 {
        match *self {
            Region::Disc { radius, .. } => radius,
            Region::Rect {
                half_x, half_xi, ..
            } => half_x.min(half_xi),
        }
    }

    /// The region with every extent reduced by `amount`, if anything is left.
    pub fn shrink(&self, amount: f64) -> Option<Region> {
        match *self {
            Region::Disc { center, radius } if radius > amount => Some(Region::Disc {
                center,
                radius: radius - amount,
            }),
            Region::Rect {
                center,
                half_x,
                half_xi,
            } if half_x.min(half_xi) > amount => Some(Region::Rect {
                center,
                half_x: half_x - amount,
                half_xi: half_xi - amount,
            }),
            _ => None,
        }
    }

    /// The reflected region `−Ω`.
    pub fn reflected(&self) -> Region {
        match *self {
            Region::Disc { center, radius } => Region::Disc {
                center: -center,
                radius,
            },
            Region::Rect {
                center,
                half_x,
                half_xi,
            } => Region::Rect {
                center: -center,
                half_x,
                half_xi,
            },
        }
    }

    fn bounding_half_extents(&self) -> (f64, f64) {
        match *self {
            Region::Disc { radius, .. } => (radius, radius),
            Region::Rect {
                half_x, half_xi, ..
            } => (half_x, half_xi),
        }
    }

    /// Checks that the region dilated by `margin` lies inside the grid window.
    pub fn ensure_fits(&self, grid: &PhaseGrid, margin: f64) -> Result<()> {
        let (ex, exi) = self.bounding_half_extents();
        let c = self.center();
        let x_reach = c.x.abs() + ex + margin;
        let xi_reach = c.xi.abs() + exi + margin;
        if x_reach > grid.half_width() || xi_reach > grid.freq_half_width() {
            return Err(QhaError::Domain(format!(
                "{self} dilated by {margin} reaches ({x_reach}, {xi_reach}), outside window \
                 [-{}, {}) x [-{}, {})",
                grid.half_width(),
                grid.half_width(),
                grid.freq_half_width(),
                grid.freq_half_width()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Region::Disc { center, radius } => {
                write!(f, "disc:{radius}@{},{}", center.x, center.xi)
            }
            Region::Rect {
                center,
                half_x,
                half_xi,
            } => {
                write!(f, "rect:{half_x},{half_xi}@{},{}", center.x, center.xi)
            }
        }
    }
}

impl FromStr for Region {
    type Err = QhaError;

    /// `disc:R`, `disc:R@x,xi`, `rect:HX,HXI` or `rect:HX,HXI@x,xi`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || invalid(format!("cannot parse region `{s}`"));
        let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        let (dims, center) = match rest.split_once('@') {
            Some((d, c)) => {
                let (x, xi) = c.split_once(',').ok_or_else(bad)?;
                (d, PhasePoint::new(num(x)?, num(xi)?))
            }
            None => (rest, PhasePoint::ORIGIN),
        };
        match kind.trim() {
            "disc" => Region::disc_at(center, num(dims)?),
            "rect" => {
                let (hx, hxi) = dims.split_once(',').ok_or_else(bad)?;
                Region::rect(center, num(hx)?, num(hxi)?)
            }
            other => Err(QhaError::Unknown {
                kind: "region shape",
                name: other.to_string(),
            }),
        }
    }
}

/// `s ↦ exp(1 − 1/(1 − s²))` on `[0, 1)`, equal to 1 for `s ≤ 0` and 0 for
/// `s ≥ 1`. Smooth and nonincreasing.
pub fn bump_profile(s: f64) -> f64 {
    if s <= 0.0 {
        1.0
    } else if s >= 1.0 {
        0.0
    } else {
        (1.0 - 1.0 / (1.0 - s * s)).exp()
    }
}

/// A smooth cutoff equal to 1 on `region` and 0 outside `region + margin`.
pub fn smooth_cutoff(grid: &PhaseGrid, region: &Region, margin: f64) -> Result<SymbolGrid> {
    if !(margin.is_finite() && margin > 0.0) {
        return Err(invalid(format!("margin must be positive, got {margin}")));
    }
    region.ensure_fits(grid, margin)?;
    Ok(SymbolGrid::from_real_fn(grid, |z| {
        bump_profile(region.distance(z) / margin)
    }))
}
