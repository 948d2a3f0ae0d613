//! Closed-form thresholds and inequalities for largest monochromatic
//! components, monochromatic 1-cores and long loose cycles.
//!
//! Every formula is generic over [`Scalar`]. With [`crate::Rational`] the
//! value is exact, and any root that is irrational makes the evaluation fail
//! with [`Error::Inexact`]; callers then fall back to `f64`. Parameter
//! windows are enforced strictly: evaluating outside one is an error.
//!
//! A deletion fraction `ε = 0` is accepted everywhere as the limiting case of
//! the open windows `0 < ε < …`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{binomial, Scalar};

/// A threshold value together with its evaluation flags.
#[derive(Clone, Debug, PartialEq)]
pub struct Threshold<S> {
    pub value: S,
    /// Set when the raw formula went negative and was clamped to zero.
    pub degenerate: bool,
}

impl<S: Scalar> Threshold<S> {
    fn plain(value: S) -> Self {
        Self {
            value,
            degenerate: false,
        }
    }
}

/// Which component bound to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ComponentBound {
    /// `mc_k(K^k_n) = n`.
    KColorsComplete,
    /// `mc_{k+1}(K^k_n) ≥ k n / (k+1)`.
    KPlusOneComplete,
    /// `mc_k(G) ≥ (1 - 8 ε^{1/k}) n` for nearly complete `G`.
    KColorsNearComplete,
    /// `mc_{k+1}(G) ≥ (k/(k+1) - √(k^k ε)) n` under a minimum-degree condition.
    KPlusOneMinDegree,
    /// `mc_{k+1}(G) ≥ (k/(k+1) - 2 k^{(k+1)/2} ε^{1/4}) n` for nearly complete `G`.
    KPlusOneNearComplete,
    /// `mc_r(K^k_n) ≥ n / q` with `q` from [`fg_q`].
    AffineQ,
    /// `mc_5(K^3_n) ≥ 5n/7`.
    FiveColorsTriples,
    /// `mc_6(K^3_n) ≥ 2n/3`.
    SixColorsTriples,
}

impl ComponentBound {
    pub const ALL: [ComponentBound; 8] = [
        ComponentBound::KColorsComplete,
        ComponentBound::KPlusOneComplete,
        ComponentBound::KColorsNearComplete,
        ComponentBound::KPlusOneMinDegree,
        ComponentBound::KPlusOneNearComplete,
        ComponentBound::AffineQ,
        ComponentBound::FiveColorsTriples,
        ComponentBound::SixColorsTriples,
    ];

    pub fn id(self) -> &'static str {
        match self {
            ComponentBound::KColorsComplete => "1.1a",
            ComponentBound::KPlusOneComplete => "1.1b",
            ComponentBound::KColorsNearComplete => "4.1",
            ComponentBound::KPlusOneMinDegree => "5.1",
            ComponentBound::KPlusOneNearComplete => "cor5.2",
            ComponentBound::AffineQ => "7.1",
            ComponentBound::FiveColorsTriples => "7.2-5col",
            ComponentBound::SixColorsTriples => "7.2-6col",
        }
    }
}

impl fmt::Display for ComponentBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for ComponentBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ComponentBound::ALL
            .into_iter()
            .find(|b| b.id() == s)
            .ok_or_else(|| Error::arg(format!("unknown component bound `{s}`")))
    }
}

/// Parameters for [`mc_threshold`]; unused fields are ignored.
#[derive(Clone, Debug)]
pub struct ComponentParams<S> {
    pub k: usize,
    pub n: u64,
    pub r: Option<u64>,
    pub eps: Option<S>,
}

fn int<S: Scalar>(x: u64) -> S {
    S::from_count(x)
}

fn root_of<S: Scalar>(x: &S, n: u32, what: &str) -> Result<S> {
    x.root(n)
        .ok_or_else(|| Error::Inexact(format!("{what}: {n}-th root of {x:?} is not representable")))
}

fn require_eps<S: Scalar>(eps: &Option<S>) -> Result<S> {
    let eps = eps.clone().ok_or_else(|| Error::arg("this bound needs ε"))?;
    if eps < S::zero() {
        return Err(Error::window("ε must be non-negative"));
    }
    Ok(eps)
}

fn require_k_at_least(k: usize, min: usize, what: &str) -> Result<()> {
    if k < min {
        return Err(Error::window(format!("{what} requires k >= {min}, got {k}")));
    }
    Ok(())
}

/// Lower bound on the largest monochromatic component guaranteed by `bound`.
pub fn mc_threshold<S: Scalar>(bound: ComponentBound, params: &ComponentParams<S>) -> Result<Threshold<S>> {
    let k = params.k;
    let n: S = int(params.n);
    let kk: S = int(k as u64);
    let one = S::one();
    let value = match bound {
        ComponentBound::KColorsComplete | ComponentBound::KPlusOneComplete => {
            require_k_at_least(k, 3, bound.id())?;
            if (params.n as usize) < k {
                return Err(Error::window(format!("{} requires n >= k", bound.id())));
            }
            if bound == ComponentBound::KColorsComplete {
                n
            } else {
                kk.clone() * n / (kk + one)
            }
        }
        ComponentBound::KColorsNearComplete => {
            require_k_at_least(k, 3, "4.1")?;
            let eps = require_eps(&params.eps)?;
            let cap = one.clone() / int::<S>(16).powi(k as u32);
            if eps >= cap {
                return Err(Error::window("4.1 requires ε < 16^-k"));
            }
            (one - int::<S>(8) * root_of(&eps, k as u32, "ε^(1/k)")?) * n
        }
        ComponentBound::KPlusOneMinDegree => {
            require_k_at_least(k, 3, "5.1")?;
            let eps = require_eps(&params.eps)?;
            let cap = one.clone() / (kk.powi(5 * k as u32) * int::<S>(2).powi(8 * k as u32));
            if eps >= cap {
                return Err(Error::window("5.1 requires ε < k^-5k 2^-8k"));
            }
            let slack = root_of(&(kk.powi(k as u32) * eps), 2, "√(k^k ε)")?;
            (kk.clone() / (kk + one) - slack) * n
        }
        ComponentBound::KPlusOneNearComplete => {
            require_k_at_least(k, 3, "cor5.2")?;
            let eps = require_eps(&params.eps)?;
            let cap = one.clone() / (kk.powi(10 * k as u32 + 2) * int::<S>(2).powi(16 * k as u32 + 2));
            if eps >= cap {
                return Err(Error::window("cor5.2 requires ε < k^-(10k+2) 2^-(16k+2)"));
            }
            let k_pow = root_of(&kk.powi(k as u32 + 1), 2, "k^((k+1)/2)")?;
            let slack = int::<S>(2) * k_pow * root_of(&eps, 4, "ε^(1/4)")?;
            (kk.clone() / (kk + one) - slack) * n
        }
        ComponentBound::AffineQ => {
            let r = params.r.ok_or_else(|| Error::arg("7.1 needs r"))?;
            if k < 2 || r < 2 {
                return Err(Error::window("7.1 requires k, r >= 2"));
            }
            n / int(fg_q(k, r))
        }
        ComponentBound::FiveColorsTriples | ComponentBound::SixColorsTriples => {
            if k != 3 {
                return Err(Error::window(format!("{} concerns k = 3 only", bound.id())));
            }
            if bound == ComponentBound::FiveColorsTriples {
                int::<S>(5) * n / int(7)
            } else {
                int::<S>(2) * n / int(3)
            }
        }
    };
    Ok(Threshold::plain(value))
}

/// Smallest `q` with `r ≤ q^{k-1} + … + q + 1`.
pub fn fg_q(k: usize, r: u64) -> u64 {
    let mut q = 1u64;
    loop {
        let mut sum = 0u128;
        let mut term = 1u128;
        for _ in 0..k {
            sum += term;
            term = term.saturating_mul(q as u128);
        }
        if r as u128 <= sum {
            return q;
        }
        q += 1;
    }
}

/// `((2k-2)/(2k-1) - α) n`, clamped at zero.
pub fn cycle_threshold<S: Scalar>(k: usize, n: u64, alpha: S) -> Result<Threshold<S>> {
    if k < 2 {
        return Err(Error::window("cycle threshold requires k >= 2"));
    }
    if alpha < S::zero() {
        return Err(Error::window("α must be non-negative"));
    }
    let k2: S = int(2 * k as u64);
    let raw = ((k2.clone() - int(2)) / (k2 - S::one()) - alpha) * int(n);
    if raw < S::zero() {
        return Ok(Threshold {
            value: S::zero(),
            degenerate: true,
        });
    }
    Ok(Threshold::plain(raw))
}

/// Both sides of `C(|U|-1, k-1) - ε C(n-1, k-1) ≥ (1 - kε/λ^{k-1}) C(|U|-1, k-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BinomialCheck<S> {
    pub holds: bool,
    pub lhs: S,
    pub rhs: S,
}

pub fn binom_inequality_check<S: Scalar>(n: u64, k: usize, eps: S, lambda: S, u_size: u64) -> Result<BinomialCheck<S>> {
    if k < 2 || n < k as u64 {
        return Err(Error::window("requires n >= k >= 2"));
    }
    if eps < S::zero() || eps > S::one() {
        return Err(Error::window("requires 0 <= ε <= 1"));
    }
    if lambda <= S::zero() || lambda > S::one() {
        return Err(Error::window("requires 0 < λ <= 1"));
    }
    let u: S = int(u_size);
    let implied = lambda.clone() * int(n);
    let mismatch = (implied - u.clone()).abs();
    let tolerance = if S::EXACT { S::zero() } else { S::from_ratio(1, 1_000_000) * u.clone() };
    if mismatch > tolerance {
        return Err(Error::arg(format!("|U| = {u_size} differs from λ n")));
    }
    if u_size < (k * k) as u64 {
        return Err(Error::window(format!("requires |U| >= k^2 = {}", k * k)));
    }
    let cu = binomial_scalar::<S>(u_size - 1, k as u64 - 1)?;
    let cn = binomial_scalar::<S>(n - 1, k as u64 - 1)?;
    let lhs = cu.clone() - eps.clone() * cn;
    let rhs = (S::one() - int::<S>(k as u64) * eps / lambda.powi(k as u32 - 1)) * cu;
    Ok(BinomialCheck {
        holds: lhs >= rhs,
        lhs,
        rhs,
    })
}

fn binomial_scalar<S: Scalar>(n: u64, k: u64) -> Result<S> {
    let c = binomial(n, k);
    if c == u128::MAX {
        return Err(Error::arg(format!("C({n}, {k}) overflows")));
    }
    S::from_u128(c).ok_or_else(|| Error::internal("binomial conversion"))
}

/// Minimum monochromatic 1-core order for `k+ℓ` colors: `(k/(k+ℓ) - √ε) n`.
pub fn one_core_threshold<S: Scalar>(k: usize, ell: usize, eps: S, n: u64) -> Result<Threshold<S>> {
    if k < 2 || ell < 1 {
        return Err(Error::window("requires k >= 2 and ℓ >= 1"));
    }
    if eps < S::zero() || eps >= S::one() / int::<S>(256).powi(k as u32) {
        return Err(Error::window("requires 0 < ε < 256^-k"));
    }
    let kk: S = int(k as u64);
    let value = (kk.clone() / (kk + int(ell as u64)) - root_of(&eps, 2, "√ε")?) * int(n);
    Ok(Threshold::plain(value))
}

/// `min{(1 - 8 ε^{1/(2k)}) n, |A| - √ε n + ((k-1)/k - √k ε^{1/(4k)} / 2^{k-1}) |B|}`.
pub fn lemma64_threshold<S: Scalar>(k: usize, eps: S, n: u64, a: u64, b: u64) -> Result<Threshold<S>> {
    if k < 2 {
        return Err(Error::window("requires k >= 2"));
    }
    if eps < S::zero() || eps > S::one() / int::<S>(512).powi(k as u32) {
        return Err(Error::window("requires 0 < ε <= 512^-k"));
    }
    if a + b != n {
        return Err(Error::arg("|A| + |B| must equal n"));
    }
    let nn: S = int(n);
    let sqrt_eps = root_of(&eps, 2, "√ε")?;
    if int::<S>(a) <= sqrt_eps.clone() * nn.clone() {
        return Err(Error::window("requires |A| > √ε n"));
    }
    let kk: S = int(k as u64);
    let first = (S::one() - int::<S>(8) * root_of(&eps, 2 * k as u32, "ε^(1/2k)")?) * nn.clone();
    // √k ε^{1/(4k)} = (k^{2k} ε)^{1/(4k)}
    let mixed = root_of(&(kk.powi(2 * k as u32) * eps), 4 * k as u32, "√k ε^(1/4k)")?;
    let coeff = (kk.clone() - S::one()) / kk - mixed / int::<S>(2).powi(k as u32 - 1);
    let second = int::<S>(a) - sqrt_eps * nn + coeff * int(b);
    Ok(Threshold::plain(first.min_of(second)))
}

/// Every named bound the command line can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NamedBound {
    Component(ComponentBound),
    Cycle,
    OneCore,
    Lemma64,
    Binomial,
}

impl FromStr for NamedBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" | "cor1.6" => NamedBound::Cycle,
            "lemma6.3" | "one-core" => NamedBound::OneCore,
            "lemma6.4" => NamedBound::Lemma64,
            "obs6.1" | "binom" => NamedBound::Binomial,
            other => NamedBound::Component(other.parse()?),
        })
    }
}

/// Loosely typed query, as it arrives from the command line.
#[derive(Clone, Debug, Default)]
pub struct BoundQuery {
    pub k: usize,
    pub n: u64,
    pub r: Option<u64>,
    pub eps: Option<f64>,
    pub alpha: Option<f64>,
    pub ell: Option<usize>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub lambda: Option<f64>,
    pub u: Option<u64>,
}

/// Outcome of [`evaluate`]; `value` is a ratio of decimals when exact.
#[derive(Clone, Debug, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    pub exact: Option<String>,
    pub degenerate: bool,
    /// Only set for the binomial inequality.
    pub holds: Option<bool>,
}

fn eval_in<S: Scalar>(bound: NamedBound, q: &BoundQuery) -> Result<(S, bool, Option<bool>)> {
    let conv = |x: Option<f64>, name: &str| -> Result<S> {
        let x = x.ok_or_else(|| Error::arg(format!("missing --{name}")))?;
        S::from_decimal(x).ok_or_else(|| Error::arg(format!("--{name} must be finite")))
    };
    let th = match bound {
        NamedBound::Component(c) => {
            let eps = q.eps.map(|e| S::from_decimal(e).ok_or_else(|| Error::arg("--eps must be finite")));
            let params = ComponentParams {
                k: q.k,
                n: q.n,
                r: q.r,
                eps: eps.transpose()?,
            };
            mc_threshold(c, &params)?
        }
        NamedBound::Cycle => cycle_threshold(q.k, q.n, conv(q.alpha.or(Some(0.0)), "alpha")?)?,
        NamedBound::OneCore => {
            let ell = q.ell.ok_or_else(|| Error::arg("missing --ell"))?;
            one_core_threshold(q.k, ell, conv(q.eps, "eps")?, q.n)?
        }
        NamedBound::Lemma64 => {
            let a = q.a.ok_or_else(|| Error::arg("missing --a"))?;
            let b = q.b.unwrap_or(q.n.saturating_sub(a));
            lemma64_threshold(q.k, conv(q.eps, "eps")?, q.n, a, b)?
        }
        NamedBound::Binomial => {
            let u = q.u.ok_or_else(|| Error::arg("missing --u"))?;
            let c = binom_inequality_check(q.n, q.k, conv(q.eps, "eps")?, conv(q.lambda, "lambda")?, u)?;
            return Ok((c.lhs - c.rhs, false, Some(c.holds)));
        }
    };
    Ok((th.value, th.degenerate, None))
}

/// Evaluates exactly when every root is rational, otherwise in `f64`.
pub fn evaluate(bound: NamedBound, q: &BoundQuery) -> Result<Evaluation> {
    match eval_in::<crate::Rational>(bound, q) {
        Ok((v, degenerate, holds)) => Ok(Evaluation {
            value: v.as_f64(),
            exact: Some(v.to_string()),
            degenerate,
            holds,
        }),
        Err(Error::Inexact(_)) => {
            let (v, degenerate, holds) = eval_in::<f64>(bound, q)?;
            Ok(Evaluation {
                value: v,
                exact: None,
                degenerate,
                holds,
            })
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn params(k: usize, n: u64, eps: Option<Rational>) -> ComponentParams<Rational> {
        ComponentParams { k, n, r: None, eps }
    }

    #[test]
    fn complete_bounds() {
        let t = mc_threshold(ComponentBound::KPlusOneComplete, &params(3, 12, None)).unwrap();
        assert_eq!(t.value, q(9, 1));
        let t = mc_threshold(ComponentBound::KColorsComplete, &params(3, 5, None)).unwrap();
        assert_eq!(t.value, q(5, 1));
        assert!(mc_threshold(ComponentBound::KColorsComplete, &params(2, 5, None)).is_err());
    }

    #[test]
    fn near_complete_k_colors() {
        let t = mc_threshold(ComponentBound::KColorsNearComplete, &params(3, 100, Some(q(1, 1_000_000)))).unwrap();
        assert_eq!(t.value, q(92, 1));
        let err = mc_threshold(ComponentBound::KColorsNearComplete, &params(3, 100, Some(q(1, 4096))));
        assert!(matches!(err, Err(Error::OutOfValidity(_))));
        // irrational root: exact evaluation refuses, f64 succeeds
        let err = mc_threshold(ComponentBound::KColorsNearComplete, &params(3, 100, Some(q(2, 1_000_000))));
        assert!(matches!(err, Err(Error::Inexact(_))));
    }

    #[test]
    fn gyarfas_haxell_values() {
        let t = mc_threshold(ComponentBound::FiveColorsTriples, &params(3, 7, None)).unwrap();
        assert_eq!(t.value, q(5, 1));
        let t = mc_threshold(ComponentBound::SixColorsTriples, &params(3, 6, None)).unwrap();
        assert_eq!(t.value, q(4, 1));
        assert!(mc_threshold(ComponentBound::SixColorsTriples, &params(4, 6, None)).is_err());
    }

    #[test]
    fn fg_q_examples() {
        assert_eq!(fg_q(3, 7), 2);
        assert_eq!(fg_q(2, 2), 1);
        assert_eq!(fg_q(2, 5), 4);
        assert_eq!(fg_q(3, 8), 3);
    }

    #[test]
    fn cycle_threshold_examples() {
        assert_eq!(cycle_threshold(3, 10, q(0, 1)).unwrap().value, q(8, 1));
        assert_eq!(cycle_threshold(2, 10, q(0, 1)).unwrap().value, q(20, 3));
        let t = cycle_threshold(3, 10, q(1, 1)).unwrap();
        assert!(t.degenerate);
        assert_eq!(t.value, q(0, 1));
    }

    #[test]
    fn binomial_inequality_examples() {
        let c = binom_inequality_check(100, 3, q(1, 100), q(1, 2), 50).unwrap();
        assert!(c.holds);
        // lhs = C(49,2) - C(99,2)/100 = 1176 - 48.51
        assert_eq!(c.lhs, q(1176, 1) - q(4851, 100));
        // rhs = (1 - 3·0.01·4) · 1176
        assert_eq!(c.rhs, q(88, 100) * q(1176, 1));
        let c = binom_inequality_check(100, 3, q(0, 1), q(1, 2), 50).unwrap();
        assert_eq!(c.lhs, c.rhs);
        assert_eq!(c.lhs, q(1176, 1));
        assert!(binom_inequality_check(100, 3, q(1, 100), q(1, 1), 100).unwrap().holds);
        assert!(matches!(
            binom_inequality_check(100, 3, q(1, 100), q(8, 100), 8),
            Err(Error::OutOfValidity(_))
        ));
    }

    #[test]
    fn one_core_examples() {
        assert_eq!(one_core_threshold(3, 1, q(0, 1), 8).unwrap().value, q(6, 1));
        assert_eq!(one_core_threshold(2, 2, q(0, 1), 8).unwrap().value, q(4, 1));
        let cap = q(1, 1) / q(256, 1).powi(3);
        assert!(matches!(one_core_threshold(3, 1, cap, 8), Err(Error::OutOfValidity(_))));
    }

    #[test]
    fn lemma64_examples() {
        assert_eq!(lemma64_threshold(3, q(0, 1), 10, 10, 0).unwrap().value, q(10, 1));
        assert!(matches!(lemma64_threshold(3, 1e-9f64, 1000, 0, 1000), Err(Error::OutOfValidity(_))));
        // ε^{1/12} is irrational
        assert!(matches!(
            lemma64_threshold(3, q(1, 1_000_000_000), 1000, 600, 400),
            Err(Error::Inexact(_))
        ));
    }

    #[test]
    fn evaluate_falls_back_to_floats() {
        let e = evaluate(
            NamedBound::Component(ComponentBound::KColorsNearComplete),
            &BoundQuery {
                k: 3,
                n: 100,
                eps: Some(1e-6),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(e.exact.as_deref(), Some("92"));
        let e = evaluate(
            NamedBound::Lemma64,
            &BoundQuery {
                k: 3,
                n: 1000,
                eps: Some(1e-9),
                a: Some(600),
                ..Default::default()
            },
        )
        .unwrap();
        assert!(e.exact.is_none());
        assert!(e.value > 0.0);
    }
}
