//! Reference constants used as cross-check anchors.
//!
//! The literals are 17 significant digits; [`ConstantsRegistry::validated`]
//! recomputes γ, ln 2 and ζ(2) through the crate's own special functions and
//! refuses to hand out the registry if any of them disagrees by more than
//! [`CROSS_CHECK_TOL`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::numerics::{digamma, hurwitz_zeta, log_gamma};

// Kept at 17 digits on purpose; the cross-check is what guards them.
#[allow(clippy::excessive_precision)]
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_86;
#[allow(clippy::excessive_precision, clippy::approx_constant)]
pub const LN_2: f64 = 0.693_147_180_559_945_31;
pub const ZETA_2: f64 = 1.644_934_066_848_226_4;
/// `M = ∫_0^1 (ψ(1+t) + γ)/t dt`
pub const M_REFERENCE: f64 = 1.257_746_886_944_369_6;
/// `M₁ = ∫_1^2 (ψ(1+t) + γ)/t dt`
#[allow(clippy::excessive_precision)]
pub const M1_REFERENCE: f64 = 0.860_620_192_853_138_36;

/// Largest tolerated disagreement between a stored constant and its recomputation.
pub const CROSS_CHECK_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConstantsRegistry {
    pub gamma: f64,
    pub ln2: f64,
    pub zeta2: f64,
    pub m_reference: f64,
    pub m1_reference: f64,
}

impl Default for ConstantsRegistry {
    fn default() -> Self {
        Self {
            gamma: EULER_GAMMA,
            ln2: LN_2,
            zeta2: ZETA_2,
            m_reference: M_REFERENCE,
            m1_reference: M1_REFERENCE,
        }
    }
}

impl ConstantsRegistry {
    /// The stored constants, after checking them against `-ψ(1)`, `ln Γ(3)`
    /// and `ζ(2, 1)`.
    pub fn validated() -> Result<Self> {
        let reg = Self::default();
        reg.cross_check()?;
        Ok(reg)
    }

    /// Every `(name, stored, recomputed)` triple used by [`Self::cross_check`].
    pub fn cross_check_table(&self) -> Result<Vec<(&'static str, f64, f64)>> {
        Ok(vec![
            ("gamma", self.gamma, -digamma(1.0)?),
            ("ln2", self.ln2, log_gamma(3.0)?),
            ("zeta2", self.zeta2, hurwitz_zeta(2.0, 1.0)?),
        ])
    }

    pub fn cross_check(&self) -> Result<()> {
        for (name, stored, computed) in self.cross_check_table()? {
            let diff = (stored - computed).abs();
            if !(diff <= CROSS_CHECK_TOL) {
                return Err(Error::ConstantMismatch {
                    name,
                    stored,
                    computed,
                    diff,
                });
            }
        }
        Ok(())
    }

    /// `π²/6 - γ`, the value of the Furdui series.
    pub fn furdui(&self) -> f64 {
        self.zeta2 - self.gamma
    }
}
