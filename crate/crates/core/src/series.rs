//! Truncated Jack hypergeometric series in one and two alphabets, stored by their coefficients
//! `C_λ`, with expansion into the orbit basis and closed forms of a few special cases.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::jack::{jack_in_form, to_jack_basis, JackForm};
use crate::partitions::{alpha_pochhammer, partitions_up_to, ParamSet, Partition};
use crate::scalar::Rational;
use crate::sympoly::{BiPoly, SymPoly};

/// Which coefficient formula a series was built from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    /// `C_λ = (a)_λ / (b)_λ`.
    Pfq,
    /// `C_λ = (a)_λ (b)_λ / (c)_{|λ|}` with `upper = [a, b]`, `lower = [c]`.
    TwoF1Hat,
}

/// `Σ_λ C_λ α^{|λ|} J*_λ(x)` over `|λ| ≤ maxdeg`, `ℓ(λ) ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JackSeries {
    pub params: ParamSet,
    pub family: Family,
    pub maxdeg: u32,
    #[serde(with = "coeff_list")]
    pub coeffs: BTreeMap<Partition, Rational>,
}

/// `Σ_λ C_λ α^{|λ|} Ω_λ(x) J*_λ(y)` over `|λ| ≤ maxdeg`, `ℓ(λ) ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagSeries {
    pub params: ParamSet,
    pub maxdeg: u32,
    #[serde(with = "coeff_list")]
    pub coeffs: BTreeMap<Partition, Rational>,
}

/// Serializes a partition-keyed map as a list of `{"part", "coef"}` records.
pub mod coeff_list {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::partitions::Partition;
    use crate::scalar::Rational;

    #[derive(Serialize, Deserialize)]
    struct Entry {
        part: Partition,
        coef: Rational,
    }

    pub fn serialize<S: Serializer>(map: &BTreeMap<Partition, Rational>, s: S) -> Result<S::Ok, S::Error> {
        let v: Vec<Entry> = map.iter().map(|(k, c)| Entry { part: k.clone(), coef: c.clone() }).collect();
        v.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<Partition, Rational>, D::Error> {
        let v: Vec<Entry> = Vec::deserialize(d)?;
        Ok(v.into_iter().map(|e| (e.part, e.coef)).collect())
    }
}

/// `(a)_λ / (b)_λ`, or a pole error naming `λ` and the offending `b_k`.
pub fn pfq_coefficient(lambda: &Partition, params: &ParamSet) -> Result<Rational> {
    let alpha = &params.alpha;
    let mut num = Rational::one();
    for a in &params.upper {
        num *= alpha_pochhammer(a, lambda, alpha);
    }
    let mut den = Rational::one();
    for b in &params.lower {
        let v = alpha_pochhammer(b, lambda, alpha);
        if v.is_zero() {
            return Err(Error::Pole(format!("(b)_λ vanishes at λ = {lambda}, b = {b}")));
        }
        den *= v;
    }
    Ok(num / den)
}

/// `(a)_λ (b)_λ / (c)_{|λ|}` for `upper = [a, b]`, `lower = [c]`.
pub fn two_f1_hat_coefficient(lambda: &Partition, params: &ParamSet) -> Result<Rational> {
    let (a, b, c) = hat_params(params)?;
    let alpha = &params.alpha;
    let den = c.rising(lambda.size());
    if den.is_zero() {
        return Err(Error::Pole(format!("(c)_{} vanishes at c = {c}", lambda.size())));
    }
    Ok(alpha_pochhammer(a, lambda, alpha) * alpha_pochhammer(b, lambda, alpha) / den)
}

pub(crate) fn hat_params(params: &ParamSet) -> Result<(&Rational, &Rational, &Rational)> {
    match (params.upper.as_slice(), params.lower.as_slice()) {
        ([a, b], [c]) => Ok((a, b, c)),
        _ => Err(Error::InvalidInput(format!(
            "the two-parameter series needs p = 2 and q = 1, got p = {}, q = {}",
            params.p(),
            params.q()
        ))),
    }
}

fn coefficients(
    params: &ParamSet,
    maxdeg: u32,
    f: impl Fn(&Partition, &ParamSet) -> Result<Rational>,
) -> Result<BTreeMap<Partition, Rational>> {
    partitions_up_to(maxdeg, params.n).into_iter().map(|l| f(&l, params).map(|c| (l, c))).collect()
}

pub fn build_pfq(params: &ParamSet, maxdeg: u32) -> Result<JackSeries> {
    Ok(JackSeries {
        params: params.clone(),
        family: Family::Pfq,
        maxdeg,
        coeffs: coefficients(params, maxdeg, pfq_coefficient)?,
    })
}

pub fn build_pfq_diag(params: &ParamSet, maxdeg: u32) -> Result<DiagSeries> {
    Ok(DiagSeries { params: params.clone(), maxdeg, coeffs: coefficients(params, maxdeg, pfq_coefficient)? })
}

pub fn build_2f1hat(
    a: Rational,
    b: Rational,
    c: Rational,
    n: usize,
    alpha: Rational,
    maxdeg: u32,
) -> Result<JackSeries> {
    let params = ParamSet::new(alpha, vec![a, b], vec![c], n)?;
    let coeffs = coefficients(&params, maxdeg, two_f1_hat_coefficient)?;
    Ok(JackSeries { params, family: Family::TwoF1Hat, maxdeg, coeffs })
}

/// `Σ C_λ α^{|λ|} J*_λ` in the orbit basis of `n` variables; keys with `ℓ(λ) > n` vanish there.
pub fn jstar_sum(coeffs: &BTreeMap<Partition, Rational>, n: usize, alpha: &Rational) -> Result<SymPoly> {
    let mut out = SymPoly::zero(n);
    for (lambda, c) in coeffs {
        if lambda.len() > n || c.is_zero() {
            continue;
        }
        let js = jack_in_form(lambda, n, alpha, JackForm::Jstar)?;
        out.add_assign_scaled(&js, &(c * alpha.pow(lambda.size() as i32)))?;
    }
    Ok(out)
}

impl JackSeries {
    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.coeffs.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    /// Orbit-basis expansion in `n` variables (any `n`; the series is stable).
    pub fn to_sympoly(&self, n: usize) -> Result<SymPoly> {
        jstar_sum(&self.coeffs, n, &self.params.alpha)
    }
}

impl DiagSeries {
    /// Expansion over `m_μ(x) m_ν(y)` in `params.n` variables per alphabet.
    pub fn to_bipoly(&self) -> Result<BiPoly> {
        let (n, alpha) = (self.params.n, &self.params.alpha);
        let mut out = BiPoly::zero(n);
        for (lambda, c) in &self.coeffs {
            if c.is_zero() {
                continue;
            }
            let omega = jack_in_form(lambda, n, alpha, JackForm::Omega)?;
            let js = jack_in_form(lambda, n, alpha, JackForm::Jstar)?;
            out.add_tensor(&omega, &js, &(c * alpha.pow(lambda.size() as i32)))?;
        }
        Ok(out)
    }
}

pub fn diag_to_bipoly(series: &DiagSeries) -> Result<BiPoly> {
    series.to_bipoly()
}

pub fn to_sympoly(series: &JackSeries) -> Result<SymPoly> {
    series.to_sympoly(series.params.n)
}

/// Expands `F` in Jack polynomials in `y` and then in `x`, returning the nonzero coefficients
/// `(λ, μ) ↦ c` with `F = Σ c J_λ(x) J_μ(y)`.
pub fn bi_jack_coefficients(f: &BiPoly, alpha: &Rational) -> Result<BTreeMap<(Partition, Partition), Rational>> {
    let n = f.n();
    // transpose to F = Σ_κ m_κ(x) B_κ(y)
    let mut by_x: BTreeMap<Partition, SymPoly> = BTreeMap::new();
    for ((x, y), v) in f.terms() {
        by_x.entry(x.clone()).or_insert_with(|| SymPoly::zero(n)).add_term(y.clone(), v.clone());
    }
    // F = Σ_μ A_μ(x) J_μ(y)
    let mut per_mu: BTreeMap<Partition, SymPoly> = BTreeMap::new();
    for (kappa, b) in by_x {
        for (mu, c) in to_jack_basis(&b, alpha, JackForm::J)? {
            per_mu.entry(mu).or_insert_with(|| SymPoly::zero(n)).add_term(kappa.clone(), c);
        }
    }
    let mut out = BTreeMap::new();
    for (mu, a) in per_mu {
        for (lambda, c) in to_jack_basis(&a, alpha, JackForm::J)? {
            out.insert((lambda, mu.clone()), c);
        }
    }
    Ok(out)
}

/// Whether `F` is a combination of `J_λ(x) J_λ(y)` only.
pub fn is_jack_diagonal(f: &BiPoly, alpha: &Rational) -> Result<bool> {
    Ok(bi_jack_coefficients(f, alpha)?.keys().all(|(l, m)| l == m))
}

/// `exp(p_1)` truncated at degree `d`, as `Σ_k p_1^k / k!`.
pub fn exp_p1(n: usize, d: u32) -> SymPoly {
    let p1 = SymPoly::monomial(Partition::row(1), n);
    let mut out = SymPoly::zero(n);
    let mut power = SymPoly::constant(n, Rational::one());
    for k in 0..=d {
        out.add_assign_scaled(&power, &Rational::factorial(k).recip().expect("k! > 0")).expect("same n");
        power = power.mul(&p1).expect("same n");
    }
    out
}

/// `Π_i (1 − x_i)^{−a}` truncated at degree `d`; the coefficient of `m_λ` is `Π_i (a)_{λ_i}/λ_i!`.
pub fn one_f_zero_product(a: &Rational, n: usize, d: u32) -> SymPoly {
    let mut out = SymPoly::zero(n);
    for lambda in partitions_up_to(d, n) {
        let c: Rational = lambda.parts().iter().map(|&k| a.rising(k) / Rational::factorial(k)).product();
        out.add_term(lambda, c);
    }
    out
}

/// `Π_{i,j} (1 − x_i y_j)^{−s}` truncated at bidegree `(d, d)`.
///
/// The coefficient of `x^e y^f` sums `Π_{ij} (s)_{K_ij}/K_ij!` over nonnegative integer matrices
/// `K` with row sums `e` and column sums `f`.
pub fn cauchy_product(s: &Rational, n: usize, d: u32) -> BiPoly {
    let mut out = BiPoly::zero(n);
    let keys = partitions_up_to(d, n);
    for e in &keys {
        for f in keys.iter().filter(|f| f.size() == e.size()) {
            let mut total = Rational::zero();
            let mut cols = f.padded(n);
            matrix_sum(s, &e.padded(n), 0, &mut cols, Rational::one(), &mut total);
            out.add_term(e.clone(), f.clone(), total);
        }
    }
    out
}

fn matrix_sum(s: &Rational, rows: &[u32], i: usize, cols: &mut [u32], acc: Rational, total: &mut Rational) {
    if i == rows.len() {
        if cols.iter().all(|&c| c == 0) {
            *total += acc;
        }
        return;
    }
    row_fill(s, rows, i, 0, rows[i], cols, acc, total);
}

#[allow(clippy::too_many_arguments)]
fn row_fill(s: &Rational, rows: &[u32], i: usize, j: usize, left: u32, cols: &mut [u32], acc: Rational, total: &mut Rational) {
    if j == cols.len() {
        if left == 0 {
            matrix_sum(s, rows, i + 1, cols, acc, total);
        }
        return;
    }
    for k in 0..=left.min(cols[j]) {
        cols[j] -= k;
        let w = &acc * s.rising(k) / Rational::factorial(k);
        row_fill(s, rows, i, j + 1, left - k, cols, w, total);
        cols[j] += k;
    }
}

/// Gauss coefficient `(a)_k (b)_k / ((c)_k k!)`.
pub fn gauss_coefficient(a: &Rational, b: &Rational, c: &Rational, k: u32) -> Result<Rational> {
    let den = c.rising(k) * Rational::factorial(k);
    (a.rising(k) * b.rising(k)).checked_div(&den, "Gauss denominator")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::jack_j;
    use crate::part;
    use crate::scalar::rat;

    fn params(alpha: (i64, i64), upper: &[(i64, i64)], lower: &[(i64, i64)], n: usize) -> ParamSet {
        let r = |(p, q): (i64, i64)| rat(p, q).unwrap();
        ParamSet::new(r(alpha), upper.iter().copied().map(r).collect(), lower.iter().copied().map(r).collect(), n).unwrap()
    }

    #[test]
    fn zero_f_zero_is_exp() {
        let p = params((3, 2), &[], &[], 3);
        let s = build_pfq(&p, 4).unwrap();
        assert!(s.coeffs.values().all(Rational::is_one));
        assert_eq!(s.to_sympoly(3).unwrap(), exp_p1(3, 4));
        let zero = build_pfq(&p, 0).unwrap();
        assert_eq!(zero.to_sympoly(3).unwrap(), SymPoly::constant(3, Rational::one()));
    }

    #[test]
    fn one_f_zero_is_product() {
        let p = params((5, 3), &[(2, 7)], &[], 2);
        let s = build_pfq(&p, 4).unwrap();
        assert_eq!(s.to_sympoly(2).unwrap(), one_f_zero_product(&p.upper[0], 2, 4));
    }

    #[test]
    fn gauss_at_one_variable() {
        let p = params((7, 3), &[(1, 2), (3, 1)], &[(5, 3)], 1);
        let s = build_pfq(&p, 5).unwrap();
        let f = s.to_sympoly(1).unwrap();
        for k in 0..=5 {
            let want = gauss_coefficient(&p.upper[0], &p.upper[1], &p.lower[0], k).unwrap();
            assert_eq!(f.coeff(&Partition::row(k)), want);
        }
    }

    #[test]
    fn pole_is_reported() {
        let p = params((1, 1), &[], &[(-1, 1)], 2);
        match build_pfq(&p, 3) {
            Err(Error::Pole(msg)) => assert!(msg.contains("b = -1"), "{msg}"),
            other => panic!("expected a pole, got {other:?}"),
        }
    }

    #[test]
    fn cauchy_identity() {
        let alpha = rat(3, 2).unwrap();
        let s = Rational::from(2usize) / &alpha;
        let p = ParamSet::new(alpha.clone(), vec![s], vec![], 2).unwrap();
        let d = build_pfq_diag(&p, 3).unwrap();
        let want = cauchy_product(&alpha.recip().unwrap(), 2, 3);
        assert_eq!(d.to_bipoly().unwrap(), want);
        assert!(is_jack_diagonal(&want, &alpha).unwrap());
    }

    #[test]
    fn off_diagonal_detected() {
        let alpha = rat(2, 1).unwrap();
        let f = BiPoly::tensor(&jack_j(&part![2], 2, &alpha).unwrap(), &jack_j(&part![1, 1], 2, &alpha).unwrap()).unwrap();
        assert!(!is_jack_diagonal(&f, &alpha).unwrap());
    }

    #[test]
    fn hat_coefficients() {
        let alpha = rat(5, 2).unwrap();
        let (a, b, c) = (rat(1, 3).unwrap(), rat(-2, 7).unwrap(), rat(9, 4).unwrap());
        let s = build_2f1hat(a.clone(), b.clone(), c.clone(), 2, alpha.clone(), 3).unwrap();
        assert_eq!(s.coeff(&Partition::empty()), Rational::one());
        let inv = alpha.recip().unwrap();
        let want = &a * (&a - &inv) * &b * (&b - &inv) / (&c * (&c + Rational::one()));
        assert_eq!(s.coeff(&part![1, 1]), want);
        let json = serde_json::to_string(&s).unwrap();
        let back: JackSeries = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
