use crate::{Result, SchemeError};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    AllenCahn,
    Burgers,
    Nse2d,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    GalerkinImex,
    CollocationImex,
    CollocationOde,
    Strang,
    GalerkinOde,
    GalerkinEuler,
}

impl Scheme {
    pub fn is_ode(self) -> bool {
        matches!(self, Scheme::CollocationOde | Scheme::GalerkinOde)
    }

    pub fn is_galerkin(self) -> bool {
        matches!(self, Scheme::GalerkinImex | Scheme::GalerkinOde | Scheme::GalerkinEuler)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum InitialData {
    /// Expression in `x` (and `y` in 2D), sampled on the grid nodes. On a
    /// Galerkin grid the samples are projected onto the band.
    BandLimitedExpression { expr: String },
    /// Node values; the length must equal the grid's node count.
    NodeSamples { values: Vec<f64> },
    /// Seeded i.i.d. node values, uniform in `[-bound, bound]`.
    RoughLinf { bound: f64 },
    /// Worst-case sign data for the collocation heat or resolvent kernel.
    Adversarial { kernel: AdversarialKernel },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AdversarialKernel {
    Heat,
    Resolvent,
}

fn default_d() -> usize {
    1
}

fn default_samples() -> usize {
    100
}

/// One time-stepping experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeConfig {
    pub equation: Equation,
    pub scheme: Scheme,
    #[serde(default = "default_d")]
    pub d: usize,
    pub nu: f64,
    /// Time step; absent for the ODE schemes.
    #[serde(default)]
    pub tau: Option<f64>,
    pub n: usize,
    /// Number of steps (stepping schemes only).
    #[serde(default)]
    pub steps: Option<usize>,
    /// Final time; required for the ODE schemes.
    #[serde(default)]
    pub t_final: Option<f64>,
    pub initial: InitialData,
    #[serde(default)]
    pub seed: u64,
    /// Reference bound for the margin `||u^n||_inf - bound`. Defaults to 1
    /// for Allen-Cahn and to `||u^0||_inf` otherwise.
    #[serde(default)]
    pub bound: Option<f64>,
    /// Uniformly spaced diagnostic samples for the ODE schemes.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default)]
    pub atol: Option<f64>,
    #[serde(default)]
    pub rtol: Option<f64>,
}

impl SchemeConfig {
    pub fn validate(&self) -> Result<()> {
        use Equation::*;
        use Scheme::*;
        let bad = |m: String| Err(SchemeError::Config(m));
        let allowed: &[Scheme] = match self.equation {
            AllenCahn => &[GalerkinImex, CollocationImex, CollocationOde, Strang, GalerkinOde],
            Burgers => &[GalerkinEuler, GalerkinOde, CollocationOde],
            Nse2d => &[GalerkinEuler, GalerkinOde],
        };
        if !allowed.contains(&self.scheme) {
            return bad(format!("scheme {:?} is not available for {:?}", self.scheme, self.equation));
        }
        let d_ok = match (self.equation, self.scheme) {
            (Nse2d, _) => self.d == 2,
            (AllenCahn, GalerkinImex | GalerkinOde) => self.d == 1 || self.d == 2,
            _ => self.d == 1,
        };
        if !d_ok {
            return bad(format!("d = {} not supported for {:?}/{:?}", self.d, self.equation, self.scheme));
        }
        if !(self.nu > 0.0 && self.nu.is_finite()) {
            return bad(format!("nu must be positive, got {}", self.nu));
        }
        if self.n == 0 {
            return bad("N must be positive".into());
        }
        if !self.scheme.is_galerkin() && self.n % 2 != 0 {
            return bad(format!("collocation needs even N, got {}", self.n));
        }
        if self.d == 2 && self.n > 128 {
            return bad(format!("2D runs are capped at N = 128, got {}", self.n));
        }
        if self.scheme.is_ode() {
            if self.tau.is_some() || self.steps.is_some() {
                return bad("ODE schemes take t_final, not tau/steps".into());
            }
            match self.t_final {
                Some(t) if t > 0.0 && t.is_finite() => {}
                _ => return bad("ODE schemes need a positive t_final".into()),
            }
            if self.samples == 0 {
                return bad("samples must be positive".into());
            }
        } else {
            match self.tau {
                Some(t) if t > 0.0 && t.is_finite() => {}
                _ => return bad("stepping schemes need a positive tau".into()),
            }
            if self.steps.is_some() == self.t_final.is_some() {
                return bad("give exactly one of steps and t_final".into());
            }
        }
        if let InitialData::RoughLinf { bound } = self.initial {
            if !(bound >= 0.0 && bound.is_finite()) {
                return bad(format!("rough data bound must be non-negative, got {bound}"));
            }
        }
        Ok(())
    }

    /// Number of steps of a stepping scheme.
    pub fn step_count(&self) -> usize {
        match (self.steps, self.t_final, self.tau) {
            (Some(s), _, _) => s,
            (None, Some(t), Some(tau)) => (t / tau).round() as usize,
            _ => 0,
        }
    }

    /// SHA-256 of the canonical JSON form, in hex.
    pub fn hash(&self) -> String {
        let json = serde_json::to_vec(self).expect("config serialises");
        Sha256::digest(&json).iter().map(|b| format!("{b:02x}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> SchemeConfig {
        SchemeConfig {
            equation: Equation::AllenCahn,
            scheme: Scheme::CollocationImex,
            d: 1,
            nu: 1.0,
            tau: Some(0.5),
            n: 8,
            steps: Some(10),
            t_final: None,
            initial: InitialData::RoughLinf { bound: 1.0 },
            seed: 3,
            bound: None,
            samples: 100,
            atol: None,
            rtol: None,
        }
    }

    #[test]
    fn compatibility_table() {
        assert!(base().validate().is_ok());
        let mut c = base();
        c.equation = Equation::Nse2d;
        assert!(c.validate().is_err());
        c.scheme = Scheme::GalerkinEuler;
        assert!(c.validate().is_err());
        c.d = 2;
        assert!(c.validate().is_ok());
        let mut c = base();
        c.n = 7;
        assert!(c.validate().is_err());
        let mut c = base();
        c.scheme = Scheme::CollocationOde;
        assert!(c.validate().is_err());
        c.tau = None;
        c.steps = None;
        c.t_final = Some(1.0);
        assert!(c.validate().is_ok());
    }

    #[test]
    fn hash_is_stable_and_sensitive() {
        let a = base();
        let mut b = base();
        assert_eq!(a.hash(), b.hash());
        b.seed = 4;
        assert_ne!(a.hash(), b.hash());
        assert_eq!(a.hash().len(), 64);
    }
}
