//! Shape-invariant potential models.
//!
//! Each model carries a parameter chain `a_j`, a remainder `R(a_j)`, a
//! superpotential `W(x; a_j)` and an ansatz pair `(C, f)` with
//! `R(a_j) = C [f(a_j) - f(a_{j+1})]`. Everything is expressed in natural
//! units `hbar = m = e = 1`, so energies are `hbar_omega * e_n` with
//! dimensionless `e_n`.
//!
//! Catalog:
//!
//! * harmonic oscillator — bookkeeping chain `a_j = j`, `R = 1`,
//!   `W = omega x / sqrt(2)`, `hbar_omega = omega`;
//! * Morse `V(x) = V0 (e^{-2 lambda x} - 2 b e^{-lambda x})` —
//!   `a_j = b - (lambda/sqrt(2 V0)) (j - 1/2)`, `R = a_j^2 - a_{j+1}^2`,
//!   `W = sqrt(V0) (a_j - e^{-lambda x})`, `hbar_omega = V0`;
//! * Scarf `V(x) = -V0 / cosh^2(lambda x)` —
//!   `a_j = (sqrt(8 V0 / lambda^2 + 1) - 2j + 1) / 2`,
//!   `R = a_j^2 - a_{j+1}^2`, `W = (lambda/sqrt(2)) a_j tanh(lambda x)`,
//!   `hbar_omega = lambda^2 / 2` (the unique pair for which the factorized
//!   Hamiltonian really has the spectrum `hbar_omega (a_1^2 - a_{n+1}^2)`;
//!   the coordinate eigensolver in [`crate::oracle`] pins this down);
//! * Coulomb `V(r) = -Z/r` at angular momentum `L` — chain over
//!   `l = L, L+1, ...`, `R(l) = 1/(l+1)^2 - 1/(l+2)^2`,
//!   `W = (Z/sqrt(2))/(l+1) - (l+1)/(sqrt(2) r)`, `hbar_omega = Z^2/2`.
//!
//! Two index views coexist. The *catalog* view is what [`param_at`],
//! [`remainder`] and [`ansatz_f`] expose; for the Coulomb model it starts at
//! `l = L + j`. The *ladder* view is the chain the operator algebra runs on:
//! step `k` of the energy ladder consumes `ladder_remainder(k)`, and for the
//! Coulomb model that chain starts one step lower (`l = L + k - 1`), so that
//! `e_n = 1/(L+1)^2 - 1/(n+L+1)^2` reproduces the hydrogen gaps. For every
//! other model the two views are identical. At `L = 0` the ladder has no
//! index-0 entry (it would sit at `l = -1`), which is why the ladder
//! accessors return `Option`.
//!
//! [`param_at`]: PotentialModel::param_at
//! [`remainder`]: PotentialModel::remainder
//! [`ansatz_f`]: PotentialModel::ansatz_f

use std::collections::BTreeMap;
use std::fmt;

use serde::Deserialize;

use crate::{Error, Result};

/// Cap on the bound-state window for models with infinite ladders.
pub const LADDER_CAP: usize = 64;

const SQRT_2: f64 = std::f64::consts::SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PotentialKind {
    HarmonicOscillator,
    Morse,
    Scarf,
    Coulomb,
}

impl PotentialKind {
    pub fn name(&self) -> &'static str {
        match self {
            PotentialKind::HarmonicOscillator => "HarmonicOscillator",
            PotentialKind::Morse => "Morse",
            PotentialKind::Scarf => "Scarf",
            PotentialKind::Coulomb => "Coulomb",
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Params {
    HarmonicOscillator { omega: f64 },
    Morse { v0: f64, lambda: f64, b: f64 },
    Scarf { v0: f64, lambda: f64 },
    Coulomb { z: f64, l: u32 },
}

/// A validated shape-invariant potential model.
#[derive(Debug, Clone)]
pub struct PotentialModel {
    kind: PotentialKind,
    params: Params,
    hbar_omega: f64,
    ansatz_c: f64,
    base_index_offset: u32,
    bound_states: usize,
}

#[derive(Deserialize)]
struct ModelJson {
    kind: String,
    params: BTreeMap<String, f64>,
}

impl PotentialModel {
    pub fn harmonic_oscillator(omega: f64) -> Result<Self> {
        if !(omega.is_finite() && omega > 0.0) {
            return Err(Error::InvalidModel(format!(
                "omega must be > 0, got {omega}"
            )));
        }
        Ok(Self::finish(
            PotentialKind::HarmonicOscillator,
            Params::HarmonicOscillator { omega },
            omega,
            0,
        ))
    }

    pub fn morse(v0: f64, lambda: f64, b: f64) -> Result<Self> {
        for (name, v) in [("V0", v0), ("lambda", lambda), ("b", b)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidModel(format!("{name} must be > 0, got {v}")));
            }
        }
        // a_1 = b - s/2 must stay positive or the well holds no bound state.
        let s = lambda / (2.0 * v0).sqrt();
        if 0.5 * s >= b {
            return Err(Error::InvalidModel(format!(
                "Morse has no bound state: lambda/sqrt(2 V0)/2 = {} >= b = {b}",
                0.5 * s
            )));
        }
        Ok(Self::finish(
            PotentialKind::Morse,
            Params::Morse { v0, lambda, b },
            v0,
            0,
        ))
    }

    pub fn scarf(v0: f64, lambda: f64) -> Result<Self> {
        for (name, v) in [("V0", v0), ("lambda", lambda)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidModel(format!("{name} must be > 0, got {v}")));
            }
        }
        let hw = 0.5 * lambda * lambda;
        Ok(Self::finish(
            PotentialKind::Scarf,
            Params::Scarf { v0, lambda },
            hw,
            0,
        ))
    }

    pub fn coulomb(z: f64, l: u32) -> Result<Self> {
        if !(z.is_finite() && z > 0.0) {
            return Err(Error::InvalidModel(format!("Z must be > 0, got {z}")));
        }
        Ok(Self::finish(
            PotentialKind::Coulomb,
            Params::Coulomb { z, l },
            0.5 * z * z,
            l,
        ))
    }

    fn finish(kind: PotentialKind, params: Params, hbar_omega: f64, offset: u32) -> Self {
        let mut model = Self {
            kind,
            params,
            hbar_omega,
            ansatz_c: 1.0,
            base_index_offset: offset,
            bound_states: LADDER_CAP,
        };
        model.bound_states = model.compute_bound_states();
        model
    }

    /// Build a model from a named-parameter map.
    ///
    /// Expected keys: `HarmonicOscillator {omega}`, `Morse {V0, lambda, b}`,
    /// `Scarf {V0, lambda}`, `Coulomb {Z, L}`.
    pub fn from_params(kind: PotentialKind, raw: &BTreeMap<String, f64>) -> Result<Self> {
        let get = |key: &str| -> Result<f64> {
            raw.get(key).copied().ok_or_else(|| {
                Error::InvalidModel(format!("missing parameter `{key}` for {}", kind.name()))
            })
        };
        let expected: &[&str] = match kind {
            PotentialKind::HarmonicOscillator => &["omega"],
            PotentialKind::Morse => &["V0", "lambda", "b"],
            PotentialKind::Scarf => &["V0", "lambda"],
            PotentialKind::Coulomb => &["Z", "L"],
        };
        for key in raw.keys() {
            if !expected.contains(&key.as_str()) {
                return Err(Error::InvalidModel(format!(
                    "unexpected parameter `{key}` for {}",
                    kind.name()
                )));
            }
        }
        match kind {
            PotentialKind::HarmonicOscillator => Self::harmonic_oscillator(get("omega")?),
            PotentialKind::Morse => Self::morse(get("V0")?, get("lambda")?, get("b")?),
            PotentialKind::Scarf => Self::scarf(get("V0")?, get("lambda")?),
            PotentialKind::Coulomb => {
                let l = get("L")?;
                if l < 0.0 || l.fract() != 0.0 || l > u32::MAX as f64 {
                    return Err(Error::InvalidModel(format!(
                        "L must be a non-negative integer, got {l}"
                    )));
                }
                Self::coulomb(get("Z")?, l as u32)
            }
        }
    }

    /// Parse a model from a JSON document `{"kind": "...", "params": {...}}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ModelJson = serde_json::from_str(text)
            .map_err(|e| Error::InvalidModel(format!("malformed model JSON: {e}")))?;
        let kind = match doc.kind.as_str() {
            "HarmonicOscillator" => PotentialKind::HarmonicOscillator,
            "Morse" => PotentialKind::Morse,
            "Scarf" => PotentialKind::Scarf,
            "Coulomb" => PotentialKind::Coulomb,
            other => {
                return Err(Error::InvalidModel(format!(
                    "unknown kind `{other}` (expected HarmonicOscillator, Morse, Scarf or Coulomb)"
                )))
            }
        };
        Self::from_params(kind, &doc.params)
    }

    pub fn kind(&self) -> PotentialKind {
        self.kind
    }

    /// Energy scale `hbar Omega`; the physical spectrum is `hbar_omega * e_n`.
    pub fn hbar_omega(&self) -> f64 {
        self.hbar_omega
    }

    /// Constant `C` of the remainder ansatz (1 for every catalog model).
    pub fn ansatz_c(&self) -> f64 {
        self.ansatz_c
    }

    /// Origin of the parameter chain (the Coulomb model starts at `a_L = L`).
    pub fn base_index_offset(&self) -> u32 {
        self.base_index_offset
    }

    pub fn raw_params(&self) -> BTreeMap<String, f64> {
        let mut m = BTreeMap::new();
        match self.params {
            Params::HarmonicOscillator { omega } => {
                m.insert("omega".into(), omega);
            }
            Params::Morse { v0, lambda, b } => {
                m.insert("V0".into(), v0);
                m.insert("lambda".into(), lambda);
                m.insert("b".into(), b);
            }
            Params::Scarf { v0, lambda } => {
                m.insert("V0".into(), v0);
                m.insert("lambda".into(), lambda);
            }
            Params::Coulomb { z, l } => {
                m.insert("Z".into(), z);
                m.insert("L".into(), l as f64);
            }
        }
        m
    }

    /// Catalog parameter `a_j`.
    pub fn param_at(&self, j: usize) -> f64 {
        let j = j as f64;
        match self.params {
            Params::HarmonicOscillator { .. } => j,
            Params::Morse { v0, lambda, b } => b - lambda / (2.0 * v0).sqrt() * (j - 0.5),
            Params::Scarf { v0, lambda } => {
                0.5 * ((8.0 * v0 / (lambda * lambda) + 1.0).sqrt() - 2.0 * j + 1.0)
            }
            Params::Coulomb { l, .. } => l as f64 + j,
        }
    }

    /// Remainder `R(a_j)` in the catalog indexing; errors past the window.
    pub fn remainder(&self, j: usize) -> Result<f64> {
        if j > self.bound_states {
            return Err(Error::OutOfRange(format!(
                "remainder index {j} beyond bound_state_count {}",
                self.bound_states
            )));
        }
        Ok(self.remainder_raw(j))
    }

    fn remainder_raw(&self, j: usize) -> f64 {
        match self.params {
            Params::HarmonicOscillator { .. } => 1.0,
            Params::Morse { .. } | Params::Scarf { .. } => {
                let a = self.param_at(j);
                let b = self.param_at(j + 1);
                a * a - b * b
            }
            Params::Coulomb { l, .. } => {
                let m = (l as usize + j) as f64;
                1.0 / ((m + 1.0) * (m + 1.0)) - 1.0 / ((m + 2.0) * (m + 2.0))
            }
        }
    }

    /// Remainder consumed by step `k >= 1` of the energy ladder, i.e. the
    /// `R(a_k)` of the operator algebra. `None` only for the Coulomb model at
    /// `L = 0`, `k = 0`, where the chain has no entry below the base.
    pub fn ladder_remainder(&self, k: usize) -> Option<f64> {
        match self.params {
            Params::Coulomb { l, .. } => {
                if l == 0 && k == 0 {
                    return None;
                }
                let m = (l as usize + k) as f64; // chain value + 1 = L + k
                Some(1.0 / (m * m) - 1.0 / ((m + 1.0) * (m + 1.0)))
            }
            _ => Some(self.remainder_raw(k)),
        }
    }

    pub(crate) fn ladder_remainder_i(&self, k: i64) -> Option<f64> {
        if k < 0 {
            None
        } else {
            self.ladder_remainder(k as usize)
        }
    }

    /// Ansatz exponent `C f(a_k)` along the ladder chain. Same `Option`
    /// convention as [`Self::ladder_remainder`] (for Coulomb at `L = 0` the
    /// base value `1/L^2` diverges).
    pub(crate) fn ladder_ansatz_value(&self, k: usize) -> Option<f64> {
        match self.params {
            Params::HarmonicOscillator { .. } => Some(-(k as f64)),
            Params::Morse { .. } | Params::Scarf { .. } => {
                let a = self.param_at(k);
                Some(a * a)
            }
            Params::Coulomb { l, .. } => {
                if l == 0 && k == 0 {
                    return None;
                }
                let m = (l as usize + k) as f64;
                Some(1.0 / (m * m))
            }
        }
    }

    /// Number of ladder steps on which the bound spectrum is defined: the
    /// largest `n` with `R(a_j) > 0` for every catalog index `j <= n`
    /// (capped at [`LADDER_CAP`] for the infinite oscillator and Coulomb
    /// ladders).
    pub fn bound_state_count(&self) -> usize {
        self.bound_states
    }

    fn compute_bound_states(&self) -> usize {
        match self.params {
            Params::HarmonicOscillator { .. } | Params::Coulomb { .. } => LADDER_CAP,
            Params::Morse { .. } | Params::Scarf { .. } => {
                let mut n = 0;
                while n < LADDER_CAP && self.remainder_raw(n + 1) > 0.0 {
                    n += 1;
                }
                // remainder_raw(0) > 0 is guaranteed by construction
                n
            }
        }
    }

    /// Dimensionless energies `e_0..e_{n_max}`, with
    /// `e_n = e_{n-1} + ladder_remainder(n)` and `e_0 = 0`.
    pub fn energy_ladder(&self, n_max: usize) -> Result<Vec<f64>> {
        if n_max > self.bound_states {
            return Err(Error::OutOfRange(format!(
                "n_max {n_max} beyond bound_state_count {}",
                self.bound_states
            )));
        }
        let mut e = Vec::with_capacity(n_max + 1);
        e.push(0.0);
        for k in 1..=n_max {
            let r = self
                .ladder_remainder(k)
                .expect("ladder steps k >= 1 are always defined");
            e.push(e[k - 1] + r);
        }
        Ok(e)
    }

    /// Superpotential `W(x; a_j)` at catalog parameter `a_j`.
    pub fn superpotential(&self, j: usize, x: f64) -> Result<f64> {
        self.w_value(self.param_at(j), x)
    }

    fn w_value(&self, a: f64, x: f64) -> Result<f64> {
        match self.params {
            Params::HarmonicOscillator { omega } => Ok(omega * x / SQRT_2),
            Params::Morse { v0, lambda, .. } => Ok(v0.sqrt() * (a - (-lambda * x).exp())),
            Params::Scarf { lambda, .. } => Ok(lambda / SQRT_2 * a * (lambda * x).tanh()),
            Params::Coulomb { z, .. } => {
                if x <= 0.0 {
                    return Err(Error::Domain(format!(
                        "Coulomb radial coordinate must be positive, got {x}"
                    )));
                }
                Ok(z / SQRT_2 / (a + 1.0) - (a + 1.0) / (SQRT_2 * x))
            }
        }
    }

    fn w_derivative(&self, a: f64, x: f64) -> f64 {
        match self.params {
            Params::HarmonicOscillator { omega } => omega / SQRT_2,
            Params::Morse { v0, lambda, .. } => v0.sqrt() * lambda * (-lambda * x).exp(),
            Params::Scarf { lambda, .. } => {
                let c = (lambda * x).cosh();
                lambda * lambda / SQRT_2 * a / (c * c)
            }
            Params::Coulomb { .. } => (a + 1.0) / (SQRT_2 * x * x),
        }
    }

    /// Ladder-chain parameter at step `k` (differs from [`Self::param_at`]
    /// only for Coulomb, where the chain starts at `l = L`).
    fn ladder_param(&self, k: usize) -> f64 {
        match self.params {
            Params::Coulomb { l, .. } => l as f64 + k as f64 - 1.0,
            _ => self.param_at(k),
        }
    }

    /// Coordinate potential of `H_1 = -(1/2) d^2/dx^2 + V_1`, i.e.
    /// `W(x; a_1)^2 - W'(x; a_1)/sqrt(2)` on the ladder chain. The ground
    /// state of `H_1` sits exactly at zero energy.
    pub fn partner_potential_v1(&self, x: f64) -> Result<f64> {
        let a1 = self.ladder_param(1);
        let w = self.w_value(a1, x)?;
        Ok(w * w - self.w_derivative(a1, x) / SQRT_2)
    }

    /// Ansatz function `f(a_j)` in catalog indexing: `a_j^2` for Morse and
    /// Scarf, `1/(L+j+1)^2` for Coulomb, `-j` for the oscillator.
    pub fn ansatz_f(&self, j: usize) -> f64 {
        match self.params {
            Params::HarmonicOscillator { .. } => -(j as f64),
            Params::Morse { .. } | Params::Scarf { .. } => {
                let a = self.param_at(j);
                a * a
            }
            Params::Coulomb { l, .. } => {
                let m = (l as usize + j) as f64;
                1.0 / ((m + 1.0) * (m + 1.0))
            }
        }
    }

    /// Max over `j <= j_max` of `|R(a_j) - C (f(a_j) - f(a_{j+1}))|`.
    pub fn validate_ansatz(&self, j_max: usize) -> Result<f64> {
        if j_max > self.bound_states {
            return Err(Error::OutOfRange(format!(
                "j_max {j_max} beyond bound_state_count {}",
                self.bound_states
            )));
        }
        let mut worst: f64 = 0.0;
        for j in 0..=j_max {
            let lhs = self.remainder_raw(j);
            let rhs = self.ansatz_c * (self.ansatz_f(j) - self.ansatz_f(j + 1));
            worst = worst.max((lhs - rhs).abs());
        }
        Ok(worst)
    }

    /// Short human-readable description of the ansatz pair.
    pub fn ansatz_description(&self) -> String {
        match self.params {
            Params::HarmonicOscillator { .. } => {
                "C = 1, f(a_j) = -j  (R = 1 for every step)".to_string()
            }
            Params::Morse { .. } | Params::Scarf { .. } => "C = 1, f(a_j) = a_j^2".to_string(),
            Params::Coulomb { .. } => "C = 1, f(L) = 1/(L+1)^2".to_string(),
        }
    }
}

impl fmt::Display for PotentialModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let params = self
            .raw_params()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "{}{{{params}}}", self.kind.name())
    }
}
