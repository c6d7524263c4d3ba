//! Potential function `H(K;u)`, longitude function `v_K(u)`, volume
//! function and the checks built on them.

mod checks;
mod potential;
mod volume;

pub use checks::{
    gukov_check, gukov_check_with_v, mm_check, newton_root, nz_potential, shared_root_check, FactorRef,
    GukovEntry, GukovPair, GukovReport, MmReport, SharedRoot, SharedRootReport, MM_GATE,
};
pub use potential::{
    default_schedule, dh_closed, h_closed, h_numeric, h_numeric_with, in_torus_region, solve_y, v_from_h,
    v_numeric, v_of_u, xi, SaddleY, MIN_SCHEDULE_END,
};
pub use volume::{
    geodesic_length, schlafli_residual, surgery_coefficients, volume, volume_from, volume_via_length, Surgery,
};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::knots::KnotSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointSource {
    ClosedForm,
    NumericLimit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointFlag {
    /// Torus knot outside the region where the closed forms are the limit.
    OutOfRegion,
    /// Surgery coefficients within `1e-6` of a coprime integer pair.
    IntegralSurgery,
    /// The surgery system has rank one.
    UnderdeterminedSurgery,
    /// No real surgery coefficients exist.
    NoSurgery,
    /// `v` comes from the closed form while `H` is a numeric limit.
    ClosedFormV,
    /// Extrapolation error above the requested tolerance.
    LargeError,
}

impl PointFlag {
    pub fn as_str(self) -> &'static str {
        match self {
            PointFlag::OutOfRegion => "out_of_region",
            PointFlag::IntegralSurgery => "integral_surgery",
            PointFlag::UnderdeterminedSurgery => "underdetermined_surgery",
            PointFlag::NoSurgery => "no_surgery",
            PointFlag::ClosedFormV => "closed_form_v",
            PointFlag::LargeError => "large_error",
        }
    }
}

/// Everything computed at one deformation parameter `u`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryPoint {
    pub u: Complex64,
    #[serde(rename = "H")]
    pub h: Complex64,
    pub v: Complex64,
    #[serde(rename = "V")]
    pub volume: f64,
    pub geodesic_length: f64,
    pub surgery: Option<Surgery>,
    pub source: PointSource,
    /// Extrapolation error of `H` for numeric points.
    pub error_estimate: Option<f64>,
    pub flags: Vec<PointFlag>,
}

impl GeometryPoint {
    fn assemble(
        knot: KnotSpec,
        u: Complex64,
        h: Complex64,
        v: Complex64,
        source: PointSource,
        error_estimate: Option<f64>,
    ) -> Self {
        let mut flags = Vec::new();
        if !in_torus_region(knot, u) {
            flags.push(PointFlag::OutOfRegion);
        }
        let surgery = surgery_coefficients(u, v).ok();
        match surgery {
            None => flags.push(PointFlag::NoSurgery),
            Some(s) => {
                if s.integral {
                    flags.push(PointFlag::IntegralSurgery);
                }
                if s.underdetermined {
                    flags.push(PointFlag::UnderdeterminedSurgery);
                }
            }
        }
        GeometryPoint {
            u,
            h,
            v,
            volume: volume_from(u, h, v),
            geodesic_length: geodesic_length(u, v),
            surgery,
            source,
            error_estimate,
            flags,
        }
    }

    /// Point from the closed forms.
    pub fn closed_form(knot: KnotSpec, u: Complex64) -> Result<Self> {
        let h = h_closed(knot, u)?;
        let v = v_of_u(knot, u)?;
        Ok(Self::assemble(knot, u, h, v, PointSource::ClosedForm, None))
    }

    /// Point with `H` from the extrapolated limit. `v` is taken from the
    /// closed form (flagged), since differentiating a numeric limit costs
    /// four more sequences per point.
    pub fn numeric(knot: KnotSpec, u: Complex64, schedule: &[u32]) -> Result<Self> {
        let est = h_numeric(knot, u, schedule)?;
        let v = v_of_u(knot, u)?;
        let mut p = Self::assemble(knot, u, est.value, v, PointSource::NumericLimit, Some(est.error_estimate));
        if knot != KnotSpec::Unknot {
            p.flags.push(PointFlag::ClosedFormV);
        }
        Ok(p)
    }

    pub fn flags_string(&self) -> String {
        self.flags.iter().map(|f| f.as_str()).collect::<Vec<_>>().join(";")
    }
}
