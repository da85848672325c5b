use crate::error::{Error, Result};

/// Couplings of the triple-well Hamiltonian together with the boson number.
///
/// `u`, `j` and `eps` share one (arbitrary) energy unit. The semiclassical
/// routines only look at the couplings and ignore `n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelParams {
    pub u: f64,
    pub j: f64,
    pub eps: f64,
    pub n: u64,
}

impl ModelParams {
    pub fn new(u: f64, j: f64, eps: f64, n: u64) -> Result<Self> {
        let p = Self { u, j, eps, n };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidParams("boson number must be at least 1".into()));
        }
        for (name, v) in [("U", self.u), ("J", self.j), ("eps", self.eps)] {
            if !v.is_finite() {
                return Err(Error::InvalidParams(format!("{name} is not finite ({v})")));
            }
        }
        Ok(())
    }

    /// Same model with `J` replaced by `|J|`. The spectrum does not depend on
    /// the sign of `J`.
    pub fn canonical(&self) -> Self {
        Self { j: self.j.abs(), ..*self }
    }

    pub fn with_n(&self, n: u64) -> Self {
        Self { n, ..*self }
    }

    /// Largest coupling magnitude; zero only for the free, untilted model.
    pub fn coupling_scale(&self) -> f64 {
        self.u.abs().max(self.j.abs()).max(self.eps.abs())
    }
}

/// Energy normalization used when reporting per-particle energies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EnergyUnit {
    /// E / (N |J|)
    J,
    /// E / (N |eps|)
    Eps,
    /// E / N in the bare coupling units.
    #[default]
    None,
}

impl EnergyUnit {
    /// Divisor that turns an energy per particle into the chosen unit.
    pub fn divisor(&self, p: &ModelParams) -> Result<f64> {
        let d = match self {
            EnergyUnit::J => p.j.abs(),
            EnergyUnit::Eps => p.eps.abs(),
            EnergyUnit::None => return Ok(1.0),
        };
        if d == 0.0 {
            return Err(Error::InvalidParams(format!(
                "cannot normalize energies by a vanishing coupling ({self:?})"
            )));
        }
        Ok(d)
    }
}
