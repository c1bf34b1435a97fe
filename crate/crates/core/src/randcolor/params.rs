use serde::{Deserialize, Serialize};

use super::RandError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Large,
    Small,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Large => "large",
            Variant::Small => "small",
        }
    }
}

/// Knobs of the randomized pipeline. `None` fields take their derived default.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandConfig {
    /// Multiplier `c` of the small-Δ radius `c · log₂ log₂ n`.
    pub small_c: f64,
    /// Largest Δ accepted by the small-Δ variant.
    pub small_delta_cap: usize,
    pub r: Option<usize>,
    /// Backoff distance; `p` follows it unless set too.
    pub b: Option<usize>,
    pub p: Option<f64>,
    pub n_cap: Option<usize>,
}

impl Default for RandConfig {
    fn default() -> Self {
        RandConfig {
            small_c: 6.0,
            small_delta_cap: 6,
            r: None,
            b: None,
            p: None,
            n_cap: None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MarkingParams {
    /// Selection probability.
    pub p: f64,
    /// Backoff distance.
    pub b: usize,
    /// DCC and happiness radius.
    pub r: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandParams {
    /// Covering parameter of the ruling set on the virtual DCC graph.
    pub beta: usize,
    /// Number of B-layers.
    pub s: usize,
    /// Largest allowed leftover component.
    pub n_cap: usize,
    /// DCC radius inside leftover components.
    pub r_small: usize,
}

/// Smallest even `r` with `(Δ-2)^{r/2} Δ^{-12} / 12 >= (4r + 32) ln Δ`.
pub fn large_delta_r(delta: usize) -> Option<usize> {
    if delta < 4 {
        return None;
    }
    let d = delta as f64;
    (2..=4096).step_by(2).find(|&r| {
        let lhs = (r as f64 / 2.0) * (d - 2.0).ln() - 12.0 * d.ln() - 12f64.ln();
        let rhs = ((4 * r + 32) as f64 * d.ln()).ln();
        lhs >= rhs
    })
}

/// `ceil(c · log₂ log₂ n)` rounded up to a multiple of 6.
pub fn small_delta_r(n: usize, c: f64) -> usize {
    let ll = (n.max(4) as f64).log2().log2();
    let r = ((c * ll) - 1e-9).ceil().max(1.0) as usize;
    r.div_ceil(6) * 6
}

/// `ceil(Δ^{2b} log₂ n)`, saturating.
pub fn default_n_cap(n: usize, delta: usize, b: usize) -> usize {
    let v = (delta as f64).powi(2 * b as i32) * (n.max(2) as f64).log2();
    if v >= usize::MAX as f64 {
        usize::MAX
    } else {
        v.ceil() as usize
    }
}

/// `2 log_{Δ-2} N + 1`; for Δ = 3 the growth rate `4^{1/6}` per level
/// replaces `Δ - 2`, giving `6 log₄ N + 1`.
pub fn small_component_radius(n_cap: usize, delta: usize) -> usize {
    let ln_n = (n_cap.max(2) as f64).ln();
    if delta == 3 {
        (6.0 * (ln_n / 4f64.ln()) - 1e-9).ceil() as usize + 1
    } else {
        (2.0 * ln_n / ((delta - 2) as f64).ln() - 1e-9).ceil() as usize + 1
    }
}

/// `ceil(4 ln Δ_v / ln Δ)`, so that `Δ_v^{2/γ} <= √Δ`; at least 1.
pub fn gamma(virtual_degree: usize, delta: usize) -> usize {
    if virtual_degree <= 1 {
        return 1;
    }
    ((4.0 * (virtual_degree as f64).ln() / (delta as f64).ln()) - 1e-9)
        .ceil()
        .max(1.0) as usize
}

pub fn derive(
    n: usize,
    delta: usize,
    variant: Variant,
    cfg: &RandConfig,
) -> Result<(MarkingParams, RandParams), RandError> {
    let (b, default_r) = match variant {
        Variant::Large => {
            if delta < 3 {
                return Err(RandError::DeltaUnsupported { variant, delta });
            }
            // Δ = 3 has no constant radius; it borrows the small-Δ one.
            (
                6,
                large_delta_r(delta).unwrap_or_else(|| small_delta_r(n, cfg.small_c)),
            )
        }
        Variant::Small => {
            if delta < 3 || delta > cfg.small_delta_cap {
                return Err(RandError::DeltaUnsupported { variant, delta });
            }
            (12, small_delta_r(n, cfg.small_c))
        }
    };
    let b = cfg.b.unwrap_or(b);
    let r = cfg.r.unwrap_or(default_r).max(1);
    let p = cfg.p.unwrap_or_else(|| (delta as f64).powi(-(b as i32)));
    let beta = 6 * r;
    let n_cap = cfg.n_cap.unwrap_or_else(|| default_n_cap(n, delta, b));
    let rp = RandParams {
        beta,
        s: beta * (r + 1),
        n_cap,
        r_small: small_component_radius(n_cap, delta),
    };
    Ok((MarkingParams { p, b, r }, rp))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn large_r_satisfies_inequality_minimally() {
        for delta in 4..=10 {
            let r = large_delta_r(delta).unwrap();
            assert_eq!(r % 2, 0);
            let d = delta as f64;
            let holds = |r: usize| {
                (d - 2.0).powf(r as f64 / 2.0) / d.powi(12) / 12.0 >= (4 * r + 32) as f64 * d.ln()
            };
            assert!(holds(r));
            assert!(r == 2 || !holds(r - 2));
        }
        assert_eq!(large_delta_r(3), None);
    }

    #[test]
    fn small_r_values() {
        // log₂ log₂ 2^16 = 4, so 24.
        assert_eq!(small_delta_r(1 << 16, 6.0), 24);
        assert_eq!(small_delta_r(100_000, 6.0), 30);
        assert_eq!(small_delta_r(10, 6.0) % 6, 0);
    }

    #[test]
    fn derived_params() {
        let (m, r) = derive(1024, 3, Variant::Small, &RandConfig::default()).unwrap();
        assert_eq!(m.b, 12);
        assert_eq!(r.beta, 6 * m.r);
        assert_eq!(r.s, r.beta * (m.r + 1));
        assert_eq!(r.n_cap, 3usize.pow(24) * 10);
        assert!(derive(1024, 7, Variant::Small, &RandConfig::default()).is_err());
        let (m, _) = derive(1024, 6, Variant::Large, &RandConfig::default()).unwrap();
        assert_eq!(m.b, 6);
        assert!((m.p - 6f64.powi(-6)).abs() < 1e-15);
    }

    #[test]
    fn gamma_bound() {
        for (dv, d) in [(2, 3), (50, 4), (1000, 6), (7, 9)] {
            let g = gamma(dv, d);
            assert!((dv as f64).powf(2.0 / g as f64) <= (d as f64).sqrt() + 1e-9);
        }
    }
}
