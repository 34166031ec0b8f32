//! Analytic bounds on the upper directed p-domination number.
//!
//! Upper bounds are real-valued and strict; certified lower bounds come from
//! the first-moment method and are decided with exact integer arithmetic.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::coloring::Coloring;
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::orientation::check_prefix_length;
use crate::{Hypergraph, VertexSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundKind {
    Upper,
    Lower,
}

/// One named bound value and where it came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub name: String,
    pub kind: BoundKind,
    pub value: f64,
    pub certified: bool,
    pub parameters: BTreeMap<String, serde_json::Value>,
}

fn check_uniformity(r: usize) -> Result<()> {
    if r < 2 {
        return Err(Error::Uniformity(r));
    }
    Ok(())
}

/// r(1 + ln(n + (r-1)^2)), a strict upper bound on Γ⃗_p(H(n, r)) for every
/// 1 ≤ p ≤ r-1.
pub fn upper_bound_thm2i(n: usize, r: usize) -> Result<f64> {
    check_uniformity(r)?;
    if n < r {
        return Err(Error::Invalid(format!("need n >= r, got n = {n}, r = {r}")));
    }
    let (n, r) = (n as f64, r as f64);
    Ok(r * (1.0 + (n + (r - 1.0).powi(2)).ln()))
}

/// Largest integer strictly below a strict real upper bound.
pub fn strict_integer_bound(bound: f64) -> i64 {
    bound.ceil() as i64 - 1
}

/// The greedy-partition value with f(x) = (x + (r-1)^2) / r and t = 2r - 1,
/// before the final relaxation: (2r-1) + r ln((n + (r-1)^2) / r^2).
pub fn gpl_closed_form(n: usize, r: usize) -> Result<f64> {
    check_uniformity(r)?;
    let t = 2 * r - 1;
    if n < t {
        return Err(Error::Invalid(format!("need n >= 2r - 1 = {t}, got {n}")));
    }
    let (n, r) = (n as f64, r as f64);
    Ok(t as f64 + r * ((n + (r - 1.0).powi(2)) / (r * r)).ln())
}

/// t + ∫_t^{max(n,t)} 1/f(x) dx by adaptive Simpson quadrature
/// (absolute tolerance 1e-9).
pub fn gpl_integral_bound(f: impl Fn(f64) -> f64, t: f64, n: f64) -> Result<f64> {
    let b = n.max(t);
    if b <= t {
        let ft = f(t);
        if ft.is_nan() || ft <= 0.0 {
            return Err(Error::Invalid(format!("f({t}) = {ft} is not positive")));
        }
        return Ok(t);
    }
    let mut bad = None;
    let g = |x: f64| {
        let v = f(x);
        if (v.is_nan() || v <= 0.0) && bad.is_none() {
            bad = Some((x, v));
        }
        1.0 / v
    };
    let integral = adaptive_simpson(g, t, b, 1e-9);
    if let Some((x, v)) = bad {
        return Err(Error::Invalid(format!("f({x}) = {v} is not positive")));
    }
    Ok(t + integral)
}

fn adaptive_simpson(mut g: impl FnMut(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(
        g: &mut dyn FnMut(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (g(lm), g(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            return left + right + delta / 15.0;
        }
        step(g, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
            + step(g, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
    // split into panels first so very long intervals are not judged on 5 samples
    let panels = 64;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for i in 0..panels {
        let lo = a + h * i as f64;
        let hi = if i + 1 == panels { b } else { lo + h };
        let (fa, fm, fb) = (g(lo), g(0.5 * (lo + hi)), g(hi));
        let whole = (hi - lo) / 6.0 * (fa + 4.0 * fm + fb);
        total += step(&mut g, lo, hi, fa, fm, fb, whole, tol / panels as f64, 48);
    }
    total
}

/// Exact-integer witness that E[x] < 1 for directed (r-1)-dominating sets of
/// size t in a uniformly random orientation of H(n, r):
/// C(n,t) · (r^B − (r−1)^B)^{n−t} < r^{B(n−t)} with B = C(t, r−1).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstMomentCertificate {
    pub n: usize,
    pub r: usize,
    pub t: usize,
    pub lhs: BigUint,
    pub rhs: BigUint,
}

impl FirstMomentCertificate {
    /// Recomputes both sides and checks `lhs < rhs`.
    pub fn verify(&self) -> bool {
        match exact_sides(self.n, self.r, self.t) {
            Ok((lhs, rhs)) => lhs == self.lhs && rhs == self.rhs && lhs < rhs,
            Err(_) => false,
        }
    }

    /// Γ⃗_{r-1}(H(n, r)) ≥ t + 1.
    pub fn certified_lower(&self) -> usize {
        self.t + 1
    }
}

/// Serialized form: bit lengths plus hex digits of both sides.
impl Serialize for FirstMomentCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("FirstMomentCertificate", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("r", &self.r)?;
        st.serialize_field("t", &self.t)?;
        st.serialize_field("lhs_bits", &self.lhs.bits())?;
        st.serialize_field("rhs_bits", &self.rhs.bits())?;
        st.serialize_field("lhs_hex", &self.lhs.to_str_radix(16))?;
        st.serialize_field("rhs_hex", &self.rhs.to_str_radix(16))?;
        st.end()
    }
}

fn check_first_moment_args(n: usize, r: usize, t: usize) -> Result<()> {
    check_uniformity(r)?;
    if t + 1 < r || t > n {
        return Err(Error::Invalid(format!(
            "need r - 1 <= t <= n, got r = {r}, t = {t}, n = {n}"
        )));
    }
    Ok(())
}

fn prefix_count(t: usize, r: usize) -> Result<u32> {
    u32::try_from(binomial(t as u64, r as u64 - 1))
        .map_err(|_| Error::Unsupported(format!("C({t}, {}) too large", r - 1)))
}

fn exact_sides(n: usize, r: usize, t: usize) -> Result<(BigUint, BigUint)> {
    check_first_moment_args(n, r, t)?;
    let b = prefix_count(t, r)?;
    let m = u32::try_from(n - t).map_err(|_| Error::Unsupported("n - t too large".into()))?;
    let rb = BigUint::from(r).pow(b);
    let a = &rb - BigUint::from(r - 1).pow(b);
    let lhs = big_binomial(n, t) * a.pow(m);
    let rhs = rb.pow(m);
    Ok((lhs, rhs))
}

fn big_binomial(n: usize, k: usize) -> BigUint {
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Decides E[x] < 1 exactly. Returns the certificate when it holds.
///
/// A cheap exact refutation runs first: (1 − y)^m ≥ 1 − m·y, so
/// C(n,t)·(r^B − m(r−1)^B) ≥ r^B already implies lhs ≥ rhs. Only instances
/// surviving that test pay for the full powers.
pub fn first_moment_certify(
    n: usize,
    r: usize,
    t: usize,
) -> Result<Option<FirstMomentCertificate>> {
    check_first_moment_args(n, r, t)?;
    let m = n - t;
    if m == 0 {
        return Ok(None);
    }
    let b = prefix_count(t, r)?;
    let rb = BigUint::from(r).pow(b);
    let mq = BigUint::from(m) * BigUint::from(r - 1).pow(b);
    if rb > mq && big_binomial(n, t) * (&rb - &mq) >= rb {
        return Ok(None);
    }
    let (lhs, rhs) = exact_sides(n, r, t)?;
    Ok((lhs < rhs).then_some(FirstMomentCertificate { n, r, t, lhs, rhs }))
}

/// ln(1 − e^x) for x ≤ 0.
fn log1m_exp(x: f64) -> f64 {
    if x > -std::f64::consts::LN_2 {
        (-x.exp_m1()).ln()
    } else {
        (-x.exp()).ln_1p()
    }
}

fn ln_binomial(n: usize, t: usize) -> f64 {
    let t = t.min(n - t);
    (0..t).map(|i| ((n - i) as f64 / (i + 1) as f64).ln()).sum()
}

/// ln E[x] = ln C(n,t) + (n−t)·ln(1 − q^B), q = (r−1)/r, B = C(t, r−1).
/// Floating point; advisory only.
pub fn first_moment_expectation_log(n: usize, r: usize, t: usize) -> Result<f64> {
    check_first_moment_args(n, r, t)?;
    if t == n {
        return Ok(0.0);
    }
    let b = binomial(t as u64, r as u64 - 1) as f64;
    let log_q = ((r - 1) as f64 / r as f64).ln();
    Ok(ln_binomial(n, t) + (n - t) as f64 * log1m_exp(b * log_q))
}

/// Largest t in [r−1, ⌈r(1 + ln(n + (r−1)^2))⌉] whose first-moment
/// inequality certifies, giving Γ⃗_{r−1}(H(n, r)) ≥ t + 1.
pub fn first_moment_lower_bound(n: usize, r: usize) -> Result<Option<FirstMomentCertificate>> {
    let upper = upper_bound_thm2i(n, r)?.ceil() as usize;
    let mut best = None;
    for t in r - 1..=upper.min(n) {
        if let Some(cert) = first_moment_certify(n, r, t)? {
            best = Some(cert);
        }
    }
    Ok(best)
}

/// c(r) = ((r−1)/e) · (2 ln(r/(r−1)))^{−1/(r−1)}. Informational only: the
/// asymptotic argument behind it holds for n large enough.
pub fn asymptotic_lower_constant(r: usize) -> Result<f64> {
    check_uniformity(r)?;
    let r = r as f64;
    Ok((r - 1.0) / std::f64::consts::E * (2.0 * (r / (r - 1.0)).ln()).powf(-1.0 / (r - 1.0)))
}

/// Σ_i bound(H[V_i]) over a cover of the vertex set. With exact per-part
/// values this upper-bounds Γ⃗_p(H).
pub fn cover_bound(
    h: &Hypergraph,
    cover: &[VertexSet],
    p: usize,
    per_part_bound: impl Fn(&Hypergraph, usize) -> Result<f64>,
) -> Result<f64> {
    check_prefix_length(p, h.r())?;
    let mut union = VertexSet::new(h.n());
    for part in cover {
        union.union_with(&part.with_universe(h.n()));
    }
    if let Some(v) = union.first_missing() {
        return Err(Error::NotACover(v));
    }
    cover
        .iter()
        .map(|part| per_part_bound(&h.induced(&part.with_universe(h.n())).hypergraph, p))
        .sum()
}

/// Chromatic bound evaluated on a proper coloring of the complement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChiBound {
    pub class_sizes: Vec<usize>,
    /// Σ_i r(1 + ln(q_i + (r−1)^2)).
    pub sum_form: f64,
    /// r·t·(1 + ln(n/t + (r−1)^2)) with t classes.
    pub jensen_form: f64,
}

pub fn chi_bound_thm3(h: &Hypergraph, coloring: &Coloring, p: usize) -> Result<ChiBound> {
    check_prefix_length(p, h.r())?;
    crate::coloring::check_complement_proper(h, coloring)?;
    let r = h.r() as f64;
    let shift = (r - 1.0).powi(2);
    let class_sizes: Vec<usize> = coloring.classes().iter().map(Vec::len).collect();
    let sum_form = class_sizes
        .iter()
        .map(|&q| r * (1.0 + (q as f64 + shift).ln()))
        .sum();
    let t = class_sizes.len() as f64;
    let jensen_form = if class_sizes.is_empty() {
        0.0
    } else {
        r * t * (1.0 + (h.n() as f64 / t + shift).ln())
    };
    Ok(ChiBound {
        class_sizes,
        sum_form,
        jensen_form,
    })
}

/// One row of the `bounds` table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsRow {
    pub n: usize,
    pub r: usize,
    pub p: usize,
    pub thm2i_upper: f64,
    pub gpl_closed: Option<f64>,
    pub t_star: Option<usize>,
    pub certified_lower: Option<usize>,
    /// c(r)·(ln n)^{1/(r−1)}; not a certified bound.
    pub asymptotic_informational: f64,
}

/// Bounds for H(n, r) and prefix length p. The first-moment lower bound
/// only concerns p = r − 1 and is omitted otherwise.
pub fn bounds_row(n: usize, r: usize, p: usize) -> Result<BoundsRow> {
    check_prefix_length(p, r)?;
    let thm2i_upper = upper_bound_thm2i(n, r)?;
    let gpl_closed = (n >= 2 * r - 1)
        .then(|| gpl_closed_form(n, r))
        .transpose()?;
    let t_star = if p + 1 == r {
        first_moment_lower_bound(n, r)?.map(|c| c.t)
    } else {
        None
    };
    let c = asymptotic_lower_constant(r)?;
    Ok(BoundsRow {
        n,
        r,
        p,
        thm2i_upper,
        gpl_closed,
        t_star,
        certified_lower: t_star.map(|t| t + 1),
        asymptotic_informational: c * (n as f64).ln().powf(1.0 / (r as f64 - 1.0)),
    })
}

/// The rows of [`bounds_row`] as named reports.
pub fn bound_reports(n: usize, r: usize, p: usize) -> Result<Vec<BoundReport>> {
    let row = bounds_row(n, r, p)?;
    let params = |extra: &[(&str, serde_json::Value)]| {
        let mut m = BTreeMap::from([
            ("n".to_string(), n.into()),
            ("r".to_string(), r.into()),
            ("p".to_string(), p.into()),
        ]);
        for (k, v) in extra {
            m.insert(k.to_string(), v.clone());
        }
        m
    };
    let mut out = vec![BoundReport {
        name: "complete_upper".into(),
        kind: BoundKind::Upper,
        value: row.thm2i_upper,
        certified: true,
        parameters: params(&[]),
    }];
    if let Some(v) = row.gpl_closed {
        out.push(BoundReport {
            name: "gpl_closed_form".into(),
            kind: BoundKind::Upper,
            value: v,
            certified: true,
            parameters: params(&[("t", (2 * r - 1).into())]),
        });
    }
    if let Some(t) = row.t_star {
        out.push(BoundReport {
            name: "first_moment_lower".into(),
            kind: BoundKind::Lower,
            value: (t + 1) as f64,
            certified: true,
            parameters: params(&[("t_star", t.into())]),
        });
    }
    out.push(BoundReport {
        name: "asymptotic_constant".into(),
        kind: BoundKind::Lower,
        value: row.asymptotic_informational,
        certified: false,
        parameters: params(&[("c", asymptotic_lower_constant(r)?.into())]),
    });
    Ok(out)
}
