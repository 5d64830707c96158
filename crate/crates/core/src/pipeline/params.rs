//! The constant ledger of the decomposition strategy.
//!
//! Five base parameters `ε ≪ γ ≪ ξ ≪ μ ≪ η` fix every probability used to
//! split vertices, colours and edges, plus the integer sizes `t, m, s, r, b`.
//! The colour-absorption constant `ρ` is identical to `η` in the argument;
//! it is exposed separately as `eta_mc` so experiments can vary it, and the
//! regime flags report whether the two agree.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// Base parameters as stored in a params file.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineParams {
    pub n: usize,
    pub eps: f64,
    pub gamma: f64,
    pub xi: f64,
    pub mu: f64,
    pub eta: f64,
    /// `ρ`; defaults to `η`.
    #[serde(default)]
    pub eta_mc: Option<f64>,
}

/// Every derived constant.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Derived {
    pub t: usize,
    pub rho: f64,
    pub p_rb: f64,
    pub q_rb: f64,
    pub p_mc: f64,
    pub q_mc: f64,
    pub m: i64,
    pub s: i64,
    pub r: i64,
    pub b: i64,
    pub p_tilde_prime: f64,
    pub p_tilde: f64,
    pub beta_tilde: f64,
    pub q_tilde: f64,
    pub p_circ: f64,
    pub q_circ1: f64,
    pub q_circ2: f64,
    pub beta_circ1: f64,
    pub beta_circ2: f64,
    pub q_tri: f64,
    pub beta_tri: f64,
}

/// One displayed split: `parent = Σ parts`, all as fractions of the ground set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SplitRow {
    pub name: String,
    pub parent: f64,
    pub parts: Vec<(String, f64)>,
}

impl SplitRow {
    fn new(name: &str, parent: f64, parts: &[(&str, f64)]) -> Self {
        SplitRow {
            name: name.to_string(),
            parent,
            parts: parts.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
        }
    }

    pub fn total(&self) -> f64 {
        self.parts.iter().map(|p| p.1).sum()
    }

    /// Parts divided by the parent: the conditional weights, summing to 1.
    pub fn conditional(&self) -> Vec<f64> {
        self.parts.iter().map(|p| p.1 / self.parent).collect()
    }

    /// `|Σ parts / parent - 1|`.
    pub fn defect(&self) -> f64 {
        (self.total() / self.parent - 1.0).abs()
    }
}

/// Whether the base parameters sit in the ordered regime the argument needs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegimeFlags {
    /// `0 < ε < γ < ξ < μ < η < 1`.
    pub ordered: bool,
    /// `ρ = η`.
    pub rho_is_eta: bool,
    /// Every probability lies in `[0, 1]`.
    pub probabilities_valid: bool,
    /// `ξ^{1/3} < μ`, so the pendant matching is nonempty in the limit.
    pub xi_cube_root_below_mu: bool,
}

impl RegimeFlags {
    pub fn holds(&self) -> bool {
        self.ordered && self.rho_is_eta && self.probabilities_valid && self.xi_cube_root_below_mu
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

pub const IDENTITY_TOLERANCE: f64 = 1e-12;

fn ceil_n(x: f64, n: usize) -> i64 {
    // guard against 0.30000000000000004-style overshoot above an integer
    let v = x * n as f64;
    (v - 1e-9).ceil() as i64
}

impl PipelineParams {
    /// The shipped default: a point deep in the ordered regime.
    pub fn published_defaults(n: usize) -> Self {
        PipelineParams { n, eps: 1e-36, gamma: 1e-30, xi: 1e-24, mu: 1e-7, eta: 1e-4, eta_mc: None }
    }

    pub fn rho(&self) -> f64 {
        self.eta_mc.unwrap_or(self.eta)
    }

    pub fn validate(&self) -> Result<()> {
        let vals = [self.eps, self.gamma, self.xi, self.mu, self.eta, self.rho()];
        if vals.iter().any(|v| !v.is_finite() || *v <= 0.0 || *v >= 1.0) {
            return Err(invalid("parameters must lie strictly between 0 and 1"));
        }
        if self.n < 2 || self.n % 2 == 1 {
            return Err(invalid(format!("n = {} must be even and at least 2", self.n)));
        }
        Ok(())
    }

    pub fn derived(&self) -> Derived {
        let (n, eps, gamma, xi, mu, eta, rho) =
            (self.n, self.eps, self.gamma, self.xi, self.mu, self.eta, self.rho());
        let p_rb = 2.0 * eta;
        let q_rb = eta / 192.0;
        let p_mc = 3072.0 * rho;
        let q_mc = 6.0 * rho;
        let p_tilde_prime = p_rb + p_mc;
        let p_tilde = eta / 256.0 + 6.0 * rho;
        let beta_tilde = 2.0 * p_tilde_prime;
        let q_tilde = beta_tilde;
        let p_circ = 1.0 - p_tilde_prime * (1.0 + gamma) - (p_tilde_prime + p_tilde) * (1.0 + xi) - 2.0 * mu;
        let q_circ1 = 1.0 - q_rb - q_mc * (1.0 + gamma) - q_tilde * (1.0 + xi) - mu;
        let q_circ2 = p_circ - q_circ1;
        let beta_circ1 = 1.0 - 8.0 * rho - beta_tilde * (1.0 + xi) - mu;
        let beta_circ2 = p_circ - beta_circ1;
        let q_tri = (q_rb / 2.0 - q_circ2) / 3.0;
        let beta_tri = (4.0 * rho - eta * (1.0 + gamma) - beta_circ2) / 3.0;
        Derived {
            t: n / 2,
            rho,
            p_rb,
            q_rb,
            p_mc,
            q_mc,
            m: ceil_n(rho - eps / 5.0, n),
            s: ceil_n(q_rb / 4.0 - 2.0 * gamma / 5.0, n),
            r: ceil_n(eta / 256.0 + 6.0 * rho + 3.0 * gamma, n),
            b: ceil_n(mu - xi.cbrt(), n),
            p_tilde_prime,
            p_tilde,
            beta_tilde,
            q_tilde,
            p_circ,
            q_circ1,
            q_circ2,
            beta_circ1,
            beta_circ2,
            q_tri,
            beta_tri,
        }
    }

    /// The displayed splits of vertices, colours and edges.
    pub fn split_rows(&self) -> Vec<SplitRow> {
        let d = self.derived();
        let (gamma, xi, mu, eta) = (self.gamma, self.xi, self.mu, self.eta);
        vec![
            SplitRow::new(
                "V = U_i ∪ Ṽ_i ∪ V°_i ∪ A_i ∪ B_i",
                1.0,
                &[
                    ("U", d.p_tilde_prime * (1.0 + gamma)),
                    ("V~", (d.p_tilde_prime + d.p_tilde) * (1.0 + xi)),
                    ("V°", d.p_circ),
                    ("A", mu),
                    ("B", mu),
                ],
            ),
            SplitRow::new(
                "U_i = V^rb_i ∪ V^mc_i",
                d.p_tilde_prime * (1.0 + gamma),
                &[("V^rb", d.p_rb * (1.0 + gamma)), ("V^mc", d.p_mc * (1.0 + gamma))],
            ),
            SplitRow::new("B_i = B_i1 ∪ B_i2", mu, &[("B1", mu / 2.0), ("B2", mu / 2.0)]),
            SplitRow::new(
                "C = C_i1 ∪ C_i2 ∪ D_i ∪ C~_i ∪ C•_i ∪ C°1_i",
                1.0,
                &[
                    ("C1", d.q_rb / 2.0),
                    ("C2", d.q_rb / 2.0),
                    ("D", d.q_mc * (1.0 + gamma)),
                    ("C~", d.q_tilde * (1.0 + xi)),
                    ("C•", mu),
                    ("C°1", d.q_circ1),
                ],
            ),
            SplitRow::new(
                "C_i1 = C△1 ∪ C△2 ∪ C△3 ∪ C°2",
                d.q_rb / 2.0,
                &[("C△1", d.q_tri), ("C△2", d.q_tri), ("C△3", d.q_tri), ("C°2", d.q_circ2)],
            ),
            SplitRow::new(
                "K_n = G_1 ∪ G_2 ∪ G~ ∪ G• ∪ G°1",
                1.0,
                &[
                    ("G1", 4.0 * d.rho),
                    ("G2", 4.0 * d.rho),
                    ("G~", d.beta_tilde * (1.0 + xi)),
                    ("G•", mu),
                    ("G°1", d.beta_circ1),
                ],
            ),
            SplitRow::new(
                "G_1 = G^rb ∪ G△1 ∪ G△2 ∪ G△3 ∪ G°2",
                4.0 * d.rho,
                &[
                    ("G^rb", eta * (1.0 + gamma)),
                    ("G△1", d.beta_tri),
                    ("G△2", d.beta_tri),
                    ("G△3", d.beta_tri),
                    ("G°2", d.beta_circ2),
                ],
            ),
            SplitRow::new("C° = C°1 ∪ C°2", d.p_circ, &[("C°1", d.q_circ1), ("C°2", d.q_circ2)]),
            SplitRow::new("G° = G°1 ∪ G°2", d.p_circ, &[("G°1", d.beta_circ1), ("G°2", d.beta_circ2)]),
        ]
    }

    pub fn regime(&self) -> RegimeFlags {
        let d = self.derived();
        let probs = [
            d.p_rb, d.q_rb, d.p_mc, d.q_mc, d.p_tilde_prime, d.p_tilde, d.beta_tilde, d.q_tilde, d.p_circ,
            d.q_circ1, d.q_circ2, d.beta_circ1, d.beta_circ2, d.q_tri, d.beta_tri,
        ];
        RegimeFlags {
            ordered: 0.0 < self.eps
                && self.eps < self.gamma
                && self.gamma < self.xi
                && self.xi < self.mu
                && self.mu < self.eta
                && self.eta < 1.0,
            rho_is_eta: self.rho() == self.eta,
            probabilities_valid: probs.iter().all(|p| (0.0..=1.0).contains(p)),
            xi_cube_root_below_mu: self.xi.cbrt() < self.mu,
        }
    }

    /// The exact identities (definitional, so hold for any parameters) and,
    /// when the regime flags hold, the two approximations and lower bounds on `q_△`, `β_△`.
    pub fn identity_checks(&self) -> Vec<IdentityCheck> {
        let d = self.derived();
        let eq = |name: &str, lhs: f64, rhs: f64| IdentityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: (lhs - rhs).abs() <= IDENTITY_TOLERANCE,
        };
        let mut out = vec![
            eq("q_circ2 = p_circ - q_circ1", d.q_circ2, d.p_circ - d.q_circ1),
            eq("beta_circ2 = p_circ - beta_circ1", d.beta_circ2, d.p_circ - d.beta_circ1),
            eq("q_tilde = beta_tilde = 2 p_tilde'", d.q_tilde, 2.0 * d.p_tilde_prime),
            eq("p_tilde' = p_rb + p_mc", d.p_tilde_prime, d.p_rb + d.p_mc),
            eq("q_rb/2 = 3 q_tri + q_circ2", d.q_rb / 2.0, 3.0 * d.q_tri + d.q_circ2),
            eq("4 rho = eta(1+gamma) + 3 beta_tri + beta_circ2", 4.0 * d.rho, self.eta * (1.0 + self.gamma) + 3.0 * d.beta_tri + d.beta_circ2),
        ];
        // q_circ2 = η/768 - μ ± ξ and β_circ2 = 2ρ - η/256 - μ ± ξ, with ξ(1+...)
        // absorbing the (1+ξ), (1+γ) corrections.
        // Floating-point rounding of the order-one sums is ~1e-16, hence the
        // additive tolerance on top of the ξ, γ error terms.
        let slack = 10.0 * (self.xi + self.gamma) + IDENTITY_TOLERANCE;
        let approx = |name: &str, lhs: f64, rhs: f64| IdentityCheck {
            name: name.to_string(),
            lhs,
            rhs,
            holds: (lhs - rhs).abs() <= slack,
        };
        if self.regime().holds() {
            out.push(approx("q_circ2 ≈ eta/768 - mu", d.q_circ2, self.eta / 768.0 - self.mu));
            out.push(approx("beta_circ2 ≈ 2 rho - eta/256 - mu", d.beta_circ2, 2.0 * d.rho - self.eta / 256.0 - self.mu));
            out.push(IdentityCheck {
                name: "q_tri >= eta/2304".into(),
                lhs: d.q_tri,
                rhs: self.eta / 2304.0,
                holds: d.q_tri >= self.eta / 2304.0,
            });
            out.push(IdentityCheck {
                name: "beta_tri >= rho/3".into(),
                lhs: d.beta_tri,
                rhs: d.rho / 3.0,
                holds: d.beta_tri >= d.rho / 3.0,
            });
        }
        out
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let p: PipelineParams = serde_json::from_str(&text)?;
        p.validate()?;
        Ok(p)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }
}

/// The default params file shipped with the crate.
pub const DEFAULT_PARAMS_JSON: &str = include_str!("../../params/default.json");

pub fn default_params() -> PipelineParams {
    serde_json::from_str(DEFAULT_PARAMS_JSON).expect("shipped params parse")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_file_matches_constructor() {
        assert_eq!(default_params(), PipelineParams::published_defaults(100));
    }

    #[test]
    fn regime_detects_disorder() {
        let mut p = PipelineParams::published_defaults(100);
        assert!(p.regime().holds());
        p.mu = 0.5;
        assert!(!p.regime().ordered);
        let q = PipelineParams { eta_mc: Some(2e-4), ..PipelineParams::published_defaults(100) };
        assert!(!q.regime().rho_is_eta);
    }

    #[test]
    fn integers_at_small_n() {
        let d = PipelineParams::published_defaults(100).derived();
        assert_eq!(d.t, 50);
        assert_eq!((d.m, d.s, d.r, d.b), (1, 1, 1, 1));
    }
}
