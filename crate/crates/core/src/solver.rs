//! Coefficient recursions that determine a hypergeometric series from its differential
//! equations, and residual checks that apply those equations to a truncated series.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::jack::{binom_up, from_jack_basis, jack_eval_ones, jack_in_form, to_jack_basis, JackForm};
use crate::operators::{
    apply_box, apply_e, apply_lowering_l, apply_raising_r, lowering_on_omega, m_eigenvalue, n_eigenvalue,
    raising_on_jstar,
};
use crate::partitions::{covered_with_rows, covers_with_rows, hooks, partitions_up_to, reverse_lex_order, rho_skew, ParamSet, Partition};
use crate::scalar::Rational;
use crate::series::{build_pfq, hat_params, jstar_sum, DiagSeries, Family, JackSeries};
use crate::sympoly::{BiPoly, SymPoly};

/// A graded piece of an operator image.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum SliceKey {
    Degree(u32),
    Bidegree(u32, u32),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Slice {
    /// Whether the truncation retains everything that maps into this slice.
    pub complete: bool,
    /// Nonzero orbit-basis coefficients, keyed by one partition (or two for bidegrees).
    pub terms: Vec<(Vec<Partition>, Rational)>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Residual {
    pub slices: BTreeMap<SliceKey, Slice>,
}

impl Residual {
    /// Splits `f` by degree; degrees `0..=complete_upto` are marked complete.
    pub fn from_sympoly(f: &SymPoly, top: u32, complete_upto: Option<u32>) -> Residual {
        let mut slices = BTreeMap::new();
        for k in 0..=top {
            let terms = f.homogeneous(k).terms().iter().map(|(l, c)| (vec![l.clone()], c.clone())).collect();
            let complete = complete_upto.is_some_and(|d| k <= d);
            slices.insert(SliceKey::Degree(k), Slice { complete, terms });
        }
        Residual { slices }
    }

    /// Splits `f` by bidegree over the listed keys.
    pub fn from_bipoly(f: &BiPoly, keys: impl IntoIterator<Item = ((u32, u32), bool)>) -> Residual {
        let mut slices = BTreeMap::new();
        for ((dx, dy), complete) in keys {
            let terms = f
                .terms()
                .iter()
                .filter(|((x, y), _)| x.size() == dx && y.size() == dy)
                .map(|((x, y), c)| (vec![x.clone(), y.clone()], c.clone()))
                .collect();
            slices.insert(SliceKey::Bidegree(dx, dy), Slice { complete, terms });
        }
        Residual { slices }
    }

    pub fn complete_count(&self) -> usize {
        self.slices.values().filter(|s| s.complete).count()
    }

    /// True when every complete slice vanishes and at least one slice is complete.
    pub fn all_complete_zero(&self) -> bool {
        self.complete_count() > 0 && self.slices.values().filter(|s| s.complete).all(|s| s.terms.is_empty())
    }

    /// Largest absolute coefficient over complete slices.
    pub fn max_abs(&self) -> Rational {
        self.slices
            .values()
            .filter(|s| s.complete)
            .flat_map(|s| s.terms.iter().map(|(_, c)| c.abs()))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// First complete slice with a nonzero coefficient.
    pub fn first_failure(&self) -> Option<(&SliceKey, &Slice)> {
        self.slices.iter().find(|(_, s)| s.complete && !s.terms.is_empty())
    }

    pub fn slice(&self, key: &SliceKey) -> Option<&Slice> {
        self.slices.get(key)
    }
}

fn shifted_product(lambda: &Partition, mu: &Partition, shifts: &[Rational], alpha: &Rational) -> Result<Rational> {
    let r = rho_skew(lambda, mu, alpha)?;
    Ok(shifts.iter().map(|s| &r + s).product())
}

fn check_params(params: &ParamSet) -> Result<()> {
    if !params.alpha.is_positive() || params.n == 0 {
        return Err(Error::InvalidInput("need alpha > 0 and n >= 1".into()));
    }
    Ok(())
}

/// Solves `C_λ Π(ρ(λ/μ)+b_k) = C_μ Π(ρ(λ/μ)+a_k)` from `C_(0) = 1`, using the first cover of each
/// `λ` and checking every other cover against it.
pub fn solve_theorem_a(params: &ParamSet, maxdeg: u32) -> Result<DiagSeries> {
    check_params(params)?;
    let alpha = &params.alpha;
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    coeffs.insert(Partition::empty(), Rational::one());
    for lambda in partitions_up_to(maxdeg, params.n).into_iter().skip(1) {
        let mut value: Option<Rational> = None;
        for (_, mu) in covered_with_rows(&lambda) {
            let bf = shifted_product(&lambda, &mu, &params.lower, alpha)?;
            if bf.is_zero() {
                return Err(Error::Pole(format!("lower factor vanishes at {lambda} over {mu}")));
            }
            let c = (&coeffs[&mu] * shifted_product(&lambda, &mu, &params.upper, alpha)?) / bf;
            match &value {
                None => value = Some(c),
                Some(v) if *v != c => {
                    return Err(Error::Internal(format!("covers of {lambda} disagree: {v} vs {c} via {mu}")));
                }
                Some(_) => {}
            }
        }
        coeffs.insert(lambda, value.expect("nonempty partition has a cover"));
    }
    Ok(DiagSeries { params: params.clone(), maxdeg, coeffs })
}

/// Which alphabet carries the lowering operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Variant {
    /// `L^{(x)} − R^{(y)}`.
    Standard,
    /// `L^{(y)} − R^{(x)}`.
    Mirrored,
}

/// `(L − R)` applied to the two-alphabet series term by term. Slices `(j, j+1)` (standard) or
/// `(j+1, j)` (mirrored) with `j + 1 ≤ maxdeg` are complete.
pub fn residual_theorem_a(series: &DiagSeries, variant: Variant) -> Result<Residual> {
    let params = &series.params;
    let (n, alpha) = (params.n, &params.alpha);
    let mut out = BiPoly::zero(n);
    for (lambda, c) in &series.coeffs {
        let w = c * alpha.pow(lambda.size() as i32);
        let omega = jack_in_form(lambda, n, alpha, JackForm::Omega)?;
        let js = jack_in_form(lambda, n, alpha, JackForm::Jstar)?;
        let minus = -w.clone();
        match variant {
            Variant::Standard => {
                out.add_tensor(&apply_lowering_l(params, &omega)?, &js, &w)?;
                out.add_tensor(&omega, &apply_raising_r(params, &js)?, &minus)?;
            }
            Variant::Mirrored => {
                out.add_tensor(&js, &apply_lowering_l(params, &omega)?, &w)?;
                out.add_tensor(&apply_raising_r(params, &js)?, &omega, &minus)?;
            }
        }
    }
    let d = series.maxdeg;
    let keys = (0..=d).map(|j| {
        let key = match variant {
            Variant::Standard => (j, j + 1),
            Variant::Mirrored => (j + 1, j),
        };
        (key, j < d)
    });
    Ok(Residual::from_bipoly(&out, keys))
}

/// Solves `C_λ Σ_{μ⋖λ} Π(ρ+b_k) binom(λ,μ) = Σ_{μ⋖λ} C_μ Π(ρ+a_k) binom(λ,μ)` from `C_(0) = 1`.
pub fn solve_theorem_c(params: &ParamSet, maxdeg: u32) -> Result<JackSeries> {
    check_params(params)?;
    let alpha = &params.alpha;
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    coeffs.insert(Partition::empty(), Rational::one());
    for lambda in partitions_up_to(maxdeg, params.n).into_iter().skip(1) {
        let mut num = Rational::zero();
        let mut den = Rational::zero();
        for (_, mu) in covered_with_rows(&lambda) {
            let binom = binom_up(&lambda, &mu, alpha)?;
            num += &coeffs[&mu] * shifted_product(&lambda, &mu, &params.upper, alpha)? * &binom;
            den += shifted_product(&lambda, &mu, &params.lower, alpha)? * binom;
        }
        if den.is_zero() {
            return Err(Error::Degenerate(format!("lower weight sum vanishes at {lambda}")));
        }
        coeffs.insert(lambda, num / den);
    }
    Ok(JackSeries { params: params.clone(), family: Family::Pfq, maxdeg, coeffs })
}

/// How the raising or lowering part of a one-alphabet residual is evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Mode {
    /// Genuine differentiation of the orbit-basis expansion.
    Differential,
    /// Coefficient transport along covers of the Jack expansion.
    Transport,
}

/// `(N − R)F` in `n` variables. Degrees `0..=maxdeg` are complete.
pub fn residual_theorem_c(series: &JackSeries, mode: Mode) -> Result<Residual> {
    let params = &series.params;
    let (n, alpha) = (params.n, &params.alpha);
    let f = series.to_sympoly(n)?;
    let weighted: BTreeMap<Partition, Rational> = series
        .coeffs
        .iter()
        .filter(|(l, _)| l.len() <= n)
        .map(|(l, c)| (l.clone(), c * alpha.pow(l.size() as i32)))
        .collect();
    let mut nf = BTreeMap::new();
    for (lambda, c) in &weighted {
        nf.insert(lambda.clone(), c * n_eigenvalue(lambda, params)?);
    }
    let nf = from_jack_basis(&nf, n, alpha, JackForm::Jstar)?;
    let rf = match mode {
        Mode::Differential => apply_raising_r(params, &f)?,
        Mode::Transport => from_jack_basis(&raising_on_jstar(&weighted, &params.upper, alpha, n)?, n, alpha, JackForm::Jstar)?,
    };
    let res = nf.sub(&rf)?;
    Ok(Residual::from_sympoly(&res, series.maxdeg + 1, Some(series.maxdeg)))
}

/// One elimination step of the lowering-operator solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BStep {
    pub mu: Partition,
    /// Number of covers of `μ` first determined at this step (0, 1 or 2).
    pub new_unknowns: usize,
    /// Determinant of the 2×2 system when two unknowns are solved together.
    pub determinant: Option<Rational>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BSolution {
    pub series: JackSeries,
    pub steps: Vec<BStep>,
}

/// The pair of kernels `(K_b, K_a)` on a cover `λ ⋗ μ`.
type Kernel<'a> = dyn Fn(&Partition, &Partition) -> Result<(Rational, Rational)> + 'a;

/// For each `μ` (graded, reverse-lex within a degree) the covers `λ` satisfy
/// `Σ_λ C_λ K_b (m + αρ) = C_μ Σ_λ K_a (m + αρ)` for every `m` with `ℓ(μ) ≤ m ≤ n`.
/// When `ℓ(μ) < n` this yields the two equations with weights `1` and `ρ`; otherwise only the
/// `m = n` equation is available.
fn eliminate(params: &ParamSet, maxdeg: u32, kernel: &Kernel<'_>) -> Result<(BTreeMap<Partition, Rational>, Vec<BStep>)> {
    let (n, alpha) = (params.n, &params.alpha);
    let nn = Rational::from(n);
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    coeffs.insert(Partition::empty(), Rational::one());
    let mut steps = Vec::new();
    for d in 0..maxdeg {
        for mu in reverse_lex_order(d, n) {
            let two = mu.len() < n;
            // rows of the linear system: weight(ρ) for each available equation
            let weights: Vec<Box<dyn Fn(&Rational) -> Rational>> = if two {
                vec![Box::new(|_| Rational::one()), Box::new(|r: &Rational| r.clone())]
            } else {
                let nn = nn.clone();
                vec![Box::new(move |r: &Rational| &nn + alpha * r)]
            };
            let cm = coeffs[&mu].clone();
            let mut rhs = vec![Rational::zero(); weights.len()];
            let mut unknowns: Vec<(Partition, Vec<Rational>)> = Vec::new();
            for (_, lambda) in covers_with_rows(&mu, n) {
                let (kb, ka) = kernel(&lambda, &mu)?;
                let r = rho_skew(&lambda, &mu, alpha)?;
                let row: Vec<Rational> = weights.iter().map(|w| &kb * w(&r)).collect();
                for (k, w) in weights.iter().enumerate() {
                    rhs[k] += &cm * &ka * w(&r);
                }
                match coeffs.get(&lambda) {
                    Some(c) => {
                        for (k, x) in row.iter().enumerate() {
                            rhs[k] -= c * x;
                        }
                    }
                    None => unknowns.push((lambda, row)),
                }
            }
            let mut step = BStep { mu: mu.clone(), new_unknowns: unknowns.len(), determinant: None };
            match unknowns.len() {
                0 => {
                    if rhs.iter().any(|r| !r.is_zero()) {
                        return Err(Error::Internal(format!("equations at {mu} are inconsistent")));
                    }
                }
                1 => {
                    let (lambda, row) = unknowns.pop().expect("one unknown");
                    if row[0].is_zero() {
                        return Err(Error::Degenerate(format!("kernel vanishes at {lambda} over {mu}")));
                    }
                    let c = &rhs[0] / &row[0];
                    if row.len() == 2 && &row[1] * &c != rhs[1] {
                        return Err(Error::Internal(format!("second equation at {mu} fails for {lambda}")));
                    }
                    coeffs.insert(lambda, c);
                }
                2 if weights.len() == 2 => {
                    let (l2, r2) = unknowns.pop().expect("two unknowns");
                    let (l1, r1) = unknowns.pop().expect("two unknowns");
                    let det = &r1[0] * &r2[1] - &r2[0] * &r1[1];
                    if det.is_zero() {
                        return Err(Error::Degenerate(format!("2x2 determinant vanishes at {mu}")));
                    }
                    let x1 = (&rhs[0] * &r2[1] - &r2[0] * &rhs[1]) / &det;
                    let x2 = (&r1[0] * &rhs[1] - &rhs[0] * &r1[1]) / &det;
                    coeffs.insert(l1, x1);
                    coeffs.insert(l2, x2);
                    step.determinant = Some(det);
                }
                k => {
                    return Err(Error::Internal(format!("{k} new unknowns at {mu} with {} equations", weights.len())));
                }
            }
            steps.push(step);
        }
    }
    Ok((coeffs, steps))
}

/// Jack-hook ratio `j_μ / j_λ`.
fn hook_ratio(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<Rational> {
    hooks(mu, alpha).j.checked_div(&hooks(lambda, alpha).j, "hook product")
}

/// Solves the lowering equation with the stability condition by reverse-lex elimination.
pub fn solve_theorem_b(params: &ParamSet, maxdeg: u32) -> Result<BSolution> {
    check_params(params)?;
    let alpha = &params.alpha;
    let kernel = |lambda: &Partition, mu: &Partition| -> Result<(Rational, Rational)> {
        let base = binom_up(lambda, mu, alpha)? * hook_ratio(lambda, mu, alpha)?;
        let kb = shifted_product(lambda, mu, &params.lower, alpha)? * &base;
        let ka = shifted_product(lambda, mu, &params.upper, alpha)? * base;
        Ok((kb, ka))
    };
    let (coeffs, steps) = eliminate(params, maxdeg, &kernel)?;
    Ok(BSolution { series: JackSeries { params: params.clone(), family: Family::Pfq, maxdeg, coeffs }, steps })
}

/// `(L − M)` in `m` variables on the restriction of the series; degrees `0..maxdeg−1` are complete.
pub fn residual_theorem_b(series: &JackSeries, m: usize, mode: Mode) -> Result<Residual> {
    let params = series.params.with_n(m);
    let alpha = &params.alpha;
    if m == 0 || m > series.params.n {
        return Err(Error::InvalidInput(format!("m = {m} must lie in 1..={}", series.params.n)));
    }
    let weighted: BTreeMap<Partition, Rational> = series
        .coeffs
        .iter()
        .filter(|(l, _)| l.len() <= m)
        .map(|(l, c)| (l.clone(), c * alpha.pow(l.size() as i32)))
        .collect();
    let mut mf = BTreeMap::new();
    for (lambda, c) in &weighted {
        mf.insert(lambda.clone(), c * m_eigenvalue(lambda, &params)?);
    }
    let mf = from_jack_basis(&mf, m, alpha, JackForm::Jstar)?;
    let lf = match mode {
        Mode::Differential => apply_lowering_l(&params, &jstar_sum(&series.coeffs, m, alpha)?)?,
        Mode::Transport => {
            let mut omega = BTreeMap::new();
            for (lambda, c) in &weighted {
                let scale = jack_eval_ones(lambda, m, alpha).checked_div(&hooks(lambda, alpha).j, "hook product")?;
                omega.insert(lambda.clone(), c * scale);
            }
            from_jack_basis(&lowering_on_omega(&omega, &params.lower, alpha)?, m, alpha, JackForm::Omega)?
        }
    };
    let res = lf.sub(&mf)?;
    Ok(Residual::from_sympoly(&res, series.maxdeg, series.maxdeg.checked_sub(1)))
}

/// `(L − M)f` for an arbitrary symmetric `f` in `params.n` variables, truncated at degree `d`;
/// `M` acts through the Jack expansion of `f`.
pub fn residual_b_generic(params: &ParamSet, f: &SymPoly, d: u32) -> Result<Residual> {
    let alpha = &params.alpha;
    let f = f.truncate(d);
    let coeffs = to_jack_basis(&f, alpha, JackForm::J)?;
    let mut mf = BTreeMap::new();
    for (lambda, c) in coeffs {
        let v = c * m_eigenvalue(&lambda, params)?;
        mf.insert(lambda, v);
    }
    let mf = from_jack_basis(&mf, params.n, alpha, JackForm::J)?;
    let res = apply_lowering_l(params, &f)?.sub(&mf)?;
    Ok(Residual::from_sympoly(&res, d, d.checked_sub(1)))
}

/// Outcome of the two-variable non-uniqueness example `G = exp(x₁+x₂) H(x₁−x₂)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StabilityReport {
    pub maxdeg: u32,
    pub g: SymPoly,
    /// `(E_1 − 2)G` in two variables.
    pub two_variable: Residual,
    /// `(E_1 − 1)G(x₁, 0)`.
    pub one_variable: Residual,
    pub passes_two_variable: bool,
    pub fails_one_variable: bool,
    /// Lowest degree at which `G` differs from `exp(p_1)`, if any.
    pub differs_from_exp_at: Option<u32>,
}

/// `h[k]` is the coefficient of `z^{2k}` in the even function `H`.
pub fn stability_counterexample(h: &[Rational], maxdeg: u32) -> Result<StabilityReport> {
    if h.first().is_none_or(|c| !c.is_one()) {
        return Err(Error::InvalidInput("H must satisfy H(0) = 1".into()));
    }
    let n = 2;
    // (x₁ − x₂)² = m_(2) − 2 m_(1,1)
    let z2 = SymPoly::from_terms(n, [(Partition::row(2), Rational::one()), (Partition::column(2), Rational::integer(-2))])?;
    let mut hpoly = SymPoly::zero(n);
    let mut power = SymPoly::constant(n, Rational::one());
    for c in h {
        hpoly.add_assign_scaled(&power, c)?;
        power = power.mul(&z2)?.truncate(maxdeg);
    }
    let exp = crate::series::exp_p1(n, maxdeg);
    let g = exp.mul(&hpoly)?.truncate(maxdeg);
    let alpha = Rational::one();
    let two = residual_b_generic(&ParamSet::new(alpha.clone(), vec![], vec![], 2)?, &g, maxdeg)?;
    let one = residual_b_generic(&ParamSet::new(alpha, vec![], vec![], 1)?, &g.restrict(1), maxdeg)?;
    let diff = g.sub(&exp)?;
    let differs_from_exp_at = (0..=maxdeg).find(|&k| !diff.homogeneous(k).is_zero());
    Ok(StabilityReport {
        maxdeg,
        passes_two_variable: two.all_complete_zero(),
        fails_one_variable: one.first_failure().is_some(),
        g,
        two_variable: two,
        one_variable: one,
        differs_from_exp_at,
    })
}

/// The two problems for the series `C_λ = (a)_λ (b)_λ / (c)_{|λ|}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HatSolver {
    /// `((c + E_2)E_1 − M(a,b))F = 0` with the stability condition.
    Bhat,
    /// `((c − 1 + E_2)E_2 − R(a,b))F = 0`.
    Chat,
}

/// `params` must carry `upper = [a, b]`, `lower = [c]`.
pub fn solve_hat(kind: HatSolver, params: &ParamSet, maxdeg: u32) -> Result<JackSeries> {
    check_params(params)?;
    let (a, b, c) = hat_params(params)?;
    let alpha = &params.alpha;
    let ab = [a.clone(), b.clone()];
    let coeffs = match kind {
        HatSolver::Bhat => {
            let kernel = |lambda: &Partition, mu: &Partition| -> Result<(Rational, Rational)> {
                let base = binom_up(lambda, mu, alpha)? * hook_ratio(lambda, mu, alpha)?;
                let kb = (c + Rational::from(mu.size())) * &base;
                let ka = shifted_product(lambda, mu, &ab, alpha)? * base;
                Ok((kb, ka))
            };
            eliminate(params, maxdeg, &kernel)?.0
        }
        HatSolver::Chat => {
            let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
            coeffs.insert(Partition::empty(), Rational::one());
            for lambda in partitions_up_to(maxdeg, params.n).into_iter().skip(1) {
                let mut num = Rational::zero();
                let mut den = Rational::zero();
                for (_, mu) in covered_with_rows(&lambda) {
                    let binom = binom_up(&lambda, &mu, alpha)?;
                    num += &coeffs[&mu] * shifted_product(&lambda, &mu, &ab, alpha)? * &binom;
                    den += (c + Rational::from(mu.size())) * binom;
                }
                if den.is_zero() {
                    return Err(Error::Degenerate(format!("c + |μ| vanishes below {lambda}")));
                }
                coeffs.insert(lambda, num / den);
            }
            coeffs
        }
    };
    Ok(JackSeries { params: params.clone(), family: Family::TwoF1Hat, maxdeg, coeffs })
}

/// Applies the two-parameter series equation differentially. For `Bhat` the restriction to `m` variables is
/// checked with `M(a,b) = 2□ + (a+b+1+(m−1)/α)E_2 + abm`; `Chat` ignores `m`.
pub fn residual_hat(kind: HatSolver, series: &JackSeries, m: usize) -> Result<Residual> {
    let params = &series.params;
    let (a, b, c) = hat_params(params)?;
    let alpha = &params.alpha;
    let d = series.maxdeg;
    match kind {
        HatSolver::Bhat => {
            if m == 0 || m > params.n {
                return Err(Error::InvalidInput(format!("m = {m} must lie in 1..={}", params.n)));
            }
            let f = jstar_sum(&series.coeffs, m, alpha)?;
            let e1f = apply_e(1, &f)?;
            let lhat = e1f.scale(c).add(&apply_e(2, &e1f)?)?;
            let mm = Rational::from(m);
            let e2_coef = a + b + Rational::one() + (&mm - Rational::one()) / alpha;
            let mut mf = apply_box(&f, alpha).scale(&Rational::integer(2));
            mf.add_assign_scaled(&apply_e(2, &f)?, &e2_coef)?;
            mf.add_assign_scaled(&f, &(a * b * &mm))?;
            Ok(Residual::from_sympoly(&lhat.sub(&mf)?, d, d.checked_sub(1)))
        }
        HatSolver::Chat => {
            let n = params.n;
            let f = series.to_sympoly(n)?;
            let e2f = apply_e(2, &f)?;
            let nhat = e2f.scale(&(c - Rational::one())).add(&apply_e(2, &e2f)?)?;
            // R(a,b) = ab e_1 + (a+b)[□,e_1] + [□,[□,e_1]]
            let raise = apply_raising_r(&ParamSet::new(alpha.clone(), vec![a.clone(), b.clone()], vec![], n)?, &f)?;
            Ok(Residual::from_sympoly(&nhat.sub(&raise)?, d + 1, Some(d)))
        }
    }
}

/// Convenience: `build_pfq` coefficients for comparison with a solver.
pub fn oracle_coefficients(params: &ParamSet, maxdeg: u32) -> Result<BTreeMap<Partition, Rational>> {
    Ok(build_pfq(params, maxdeg)?.coeffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::rat;
    use crate::series::{build_2f1hat, build_pfq_diag};

    fn r(p: i64, q: i64) -> Rational {
        rat(p, q).unwrap()
    }

    #[test]
    fn two_alphabet_solver_small() {
        let params = ParamSet::new(r(3, 2), vec![r(1, 3), r(2, 5)], vec![r(7, 4)], 2).unwrap();
        let s = solve_theorem_a(&params, 4).unwrap();
        assert_eq!(s.coeffs, oracle_coefficients(&params, 4).unwrap());
        let two = s.coeffs[&part![1]].clone() * (r(4, 3) * r(7, 5)) / r(11, 4);
        assert_eq!(s.coeffs[&part![2]], two);
        for v in [Variant::Standard, Variant::Mirrored] {
            let res = residual_theorem_a(&build_pfq_diag(&params, 3).unwrap(), v).unwrap();
            assert!(res.all_complete_zero(), "{v:?}: {:?}", res.first_failure());
        }
    }

    #[test]
    fn lowering_solver_small() {
        let params = ParamSet::new(r(5, 3), vec![r(1, 2), r(-2, 7)], vec![r(9, 4)], 3).unwrap();
        let sol = solve_theorem_b(&params, 4).unwrap();
        assert_eq!(sol.series.coeffs, oracle_coefficients(&params, 4).unwrap());
        assert!(sol.steps.iter().any(|s| s.determinant.is_some()));
        for m in 1..=3 {
            for mode in [Mode::Differential, Mode::Transport] {
                let res = residual_theorem_b(&sol.series, m, mode).unwrap();
                assert!(res.all_complete_zero(), "m = {m}, {mode:?}: {:?}", res.first_failure());
            }
        }
    }

    #[test]
    fn raising_solver_small() {
        let params = ParamSet::new(r(2, 3), vec![r(1, 2), r(3, 1)], vec![r(5, 3)], 2).unwrap();
        let s = solve_theorem_c(&params, 4).unwrap();
        assert_eq!(s.coeffs, oracle_coefficients(&params, 4).unwrap());
        for mode in [Mode::Differential, Mode::Transport] {
            let res = residual_theorem_c(&s, mode).unwrap();
            assert!(res.all_complete_zero(), "{mode:?}: {:?}", res.first_failure());
            assert!(!res.slice(&SliceKey::Degree(5)).unwrap().complete);
        }
    }

    #[test]
    fn counterexample() {
        let rep = stability_counterexample(&[Rational::one(), Rational::one()], 4).unwrap();
        assert!(rep.passes_two_variable);
        assert!(rep.fails_one_variable);
        assert_eq!(rep.differs_from_exp_at, Some(2));
        let slice = rep.one_variable.slice(&SliceKey::Degree(1)).unwrap();
        assert_eq!(slice.terms, vec![(vec![part![1]], Rational::integer(2))]);
        let plain = stability_counterexample(&[Rational::one()], 4).unwrap();
        assert!(plain.passes_two_variable && !plain.fails_one_variable);
        assert_eq!(plain.differs_from_exp_at, None);
    }

    #[test]
    fn hat_solvers_match_coefficients() {
        let (a, b, c, alpha) = (r(1, 3), r(-5, 2), r(7, 4), r(3, 1));
        let oracle = build_2f1hat(a, b, c, 2, alpha, 4).unwrap();
        for kind in [HatSolver::Bhat, HatSolver::Chat] {
            let s = solve_hat(kind, &oracle.params, 4).unwrap();
            assert_eq!(s.coeffs, oracle.coeffs, "{kind:?}");
        }
        for m in 1..=2 {
            let res = residual_hat(HatSolver::Bhat, &oracle, m).unwrap();
            assert!(res.all_complete_zero(), "m = {m}: {:?}", res.first_failure());
        }
        let res = residual_hat(HatSolver::Chat, &oracle, 2).unwrap();
        assert!(res.all_complete_zero(), "{:?}", res.first_failure());
    }
}
