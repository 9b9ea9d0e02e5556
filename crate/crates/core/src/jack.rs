//! Jack polynomials via the Laplace–Beltrami eigenproblem, their normalizations, generalized
//! binomial coefficients and Pieri coefficients.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partitions::{hooks, lower_hook, reverse_lex_order, rho, shifted_parts, upper_hook, Partition};
use crate::poly::Poly;
use crate::scalar::Rational;
use crate::sympoly::SymPoly;

/// Normalization of a Jack polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum JackForm {
    /// Integral form `J_λ`.
    J,
    /// Dual form `J*_λ = J_λ/j_λ`.
    Jstar,
    /// Unital form `Ω_λ = J_λ/J_λ(1_n)`.
    Omega,
    /// Statistics form `C_λ = α^{|λ|} |λ|! J*_λ`.
    C,
}

impl fmt::Display for JackForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            JackForm::J => "J",
            JackForm::Jstar => "Jstar",
            JackForm::Omega => "Omega",
            JackForm::C => "C",
        };
        f.write_str(s)
    }
}

impl FromStr for JackForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "J" => Ok(JackForm::J),
            "Jstar" | "J*" => Ok(JackForm::Jstar),
            "Omega" => Ok(JackForm::Omega),
            "C" => Ok(JackForm::C),
            other => Err(Error::InvalidInput(format!("unknown Jack form {other:?}"))),
        }
    }
}

/// `□` on the orbit basis of one degree, computed in as many variables as the degree.
/// `□ m_μ = diag_μ m_μ + (1/α) Σ_ν sing_{νμ} m_ν`.
struct BoxTable {
    diag: BTreeMap<Partition, Rational>,
    sing: BTreeMap<Partition, BTreeMap<Partition, Rational>>,
}

fn box_table(d: u32) -> Arc<BoxTable> {
    static TABLES: OnceLock<Mutex<HashMap<u32, Arc<BoxTable>>>> = OnceLock::new();
    let tables = TABLES.get_or_init(Default::default);
    if let Some(t) = tables.lock().expect("box table lock").get(&d) {
        return Arc::clone(t);
    }
    let n = d.max(1) as usize;
    let mut diag = BTreeMap::new();
    let mut sing = BTreeMap::new();
    for mu in reverse_lex_order(d, n) {
        let diag_val: u64 = mu.parts().iter().map(|&p| u64::from(p) * u64::from(p.saturating_sub(1)) / 2).sum();
        diag.insert(mu.clone(), Rational::from(diag_val as usize));
        let image = Poly::from_sym(&SymPoly::monomial(mu.clone(), n)).apply_box_singular().to_sym();
        sing.insert(mu, image.into_terms());
    }
    let table = Arc::new(BoxTable { diag, sing });
    tables.lock().expect("box table lock").insert(d, Arc::clone(&table));
    table
}

type JackKey = (Partition, Rational);

fn jack_cache() -> &'static Mutex<HashMap<JackKey, Arc<SymPoly>>> {
    static CACHE: OnceLock<Mutex<HashMap<JackKey, Arc<SymPoly>>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `J_λ` in `|λ|` variables. Restricting this to fewer variables gives `J_λ` there.
fn jack_stable(lambda: &Partition, alpha: &Rational) -> Result<Arc<SymPoly>> {
    let key = (lambda.clone(), alpha.clone());
    if let Some(hit) = jack_cache().lock().expect("jack cache lock").get(&key) {
        return Ok(Arc::clone(hit));
    }
    let d = lambda.size();
    let n = d.max(1) as usize;
    let table = box_table(d);
    let inv_alpha = alpha.recip()?;
    let target = rho(lambda, alpha);

    // B_{νμ} v_μ summed over μ above ν; walk ν downward in lex order starting at λ
    let mut coeffs: BTreeMap<Partition, Rational> = BTreeMap::new();
    coeffs.insert(lambda.clone(), Rational::one());
    let order = reverse_lex_order(d, n);
    let start = order.iter().position(|p| p == lambda).expect("λ is listed among its own degree");
    for nu in &order[start + 1..] {
        let mut rhs = Rational::zero();
        for (mu, v) in &coeffs {
            if let Some(c) = table.sing[mu].get(nu) {
                rhs += v * c;
            }
        }
        if rhs.is_zero() {
            continue;
        }
        rhs *= &inv_alpha;
        let self_sing = table.sing[nu].get(nu).cloned().unwrap_or_default();
        let gap = &target - &table.diag[nu] - self_sing * &inv_alpha;
        if gap.is_zero() {
            return Err(Error::Degenerate(format!("eigenvalues of {lambda} and {nu} collide at alpha = {alpha}")));
        }
        coeffs.insert(nu.clone(), rhs / gap);
    }

    let last = Partition::column(d);
    let lead = coeffs
        .get(&last)
        .cloned()
        .ok_or_else(|| Error::Degenerate(format!("J_{lambda} has no m_(1^{d}) term at alpha = {alpha}")))?;
    let scale = Rational::factorial(d) / lead;
    let poly = SymPoly::from_terms(n, coeffs.into_iter().map(|(k, v)| (k, v * &scale)))?;
    let poly = Arc::new(poly);
    jack_cache().lock().expect("jack cache lock").insert(key, Arc::clone(&poly));
    Ok(poly)
}

/// Integral-form Jack polynomial `J_λ(x_1..x_n; α)` in the orbit basis.
pub fn jack_j(lambda: &Partition, n: usize, alpha: &Rational) -> Result<SymPoly> {
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
    }
    if !alpha.is_positive() {
        return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
    }
    Ok(jack_stable(lambda, alpha)?.restrict(n))
}

/// `J_λ(1_n) = Π_{(i,j)∈λ} ((j−1)α + n − i + 1) = α^{|λ|} (n/α)_λ`.
pub fn jack_eval_ones(lambda: &Partition, n: usize, alpha: &Rational) -> Rational {
    lambda
        .boxes()
        .map(|(i, j)| alpha * Rational::from(j - 1) + Rational::integer(n as i64 - i as i64 + 1))
        .product()
}

/// `s` with `form_λ = J_λ / s`.
fn form_scale(lambda: &Partition, form: JackForm, n: usize, alpha: &Rational) -> Rational {
    match form {
        JackForm::J => Rational::one(),
        JackForm::Jstar => hooks(lambda, alpha).j,
        JackForm::Omega => jack_eval_ones(lambda, n, alpha),
        JackForm::C => {
            let k = lambda.size();
            hooks(lambda, alpha).j / (alpha.pow(k as i32) * Rational::factorial(k))
        }
    }
}

/// Re-expresses `f · from_λ` as a multiple of `to_λ`. The statistics form uses `β = 2/α`.
pub fn convert_form(
    f: &Rational,
    lambda: &Partition,
    from: JackForm,
    to: JackForm,
    n: usize,
    alpha: &Rational,
) -> Result<Rational> {
    if from == to {
        return Ok(f.clone());
    }
    let num = form_scale(lambda, to, n, alpha);
    let den = form_scale(lambda, from, n, alpha);
    (f * num).checked_div(&den, &format!("{from} normalization of {lambda}"))
}

/// The Jack polynomial of `λ` in the requested normalization.
pub fn jack_in_form(lambda: &Partition, n: usize, alpha: &Rational, form: JackForm) -> Result<SymPoly> {
    let j = jack_j(lambda, n, alpha)?;
    let s = form_scale(lambda, form, n, alpha);
    Ok(j.scale(&s.recip()?))
}

/// Expands `f` in the Jack basis of the requested form. Keys with `ℓ > n` never appear.
pub fn to_jack_basis(f: &SymPoly, alpha: &Rational, form: JackForm) -> Result<BTreeMap<Partition, Rational>> {
    let n = f.n();
    let mut rest = f.clone();
    let mut out = BTreeMap::new();
    // the first key of each degree is lex-largest, hence maximal in dominance among the rest
    while let Some((lambda, c)) = rest.terms().iter().next().map(|(k, v)| (k.clone(), v.clone())) {
        let basis = jack_in_form(&lambda, n, alpha, form)?;
        let lead = basis.coeff(&lambda);
        let coef = c.checked_div(&lead, "Jack leading coefficient")?;
        rest.add_assign_scaled(&basis, &-coef.clone())?;
        out.insert(lambda, coef);
    }
    Ok(out)
}

/// `Σ c_λ form_λ` in the orbit basis.
pub fn from_jack_basis(
    coeffs: &BTreeMap<Partition, Rational>,
    n: usize,
    alpha: &Rational,
    form: JackForm,
) -> Result<SymPoly> {
    let mut out = SymPoly::zero(n);
    for (lambda, c) in coeffs {
        if lambda.len() > n {
            continue;
        }
        out.add_assign_scaled(&jack_in_form(lambda, n, alpha, form)?, c)?;
    }
    Ok(out)
}

static BINOM_FAULT: AtomicBool = AtomicBool::new(false);

/// Corrupts [`binom_up`] by adding one to every value. Used to exercise failure reporting.
#[doc(hidden)]
pub fn set_binom_fault(on: bool) {
    BINOM_FAULT.store(on, Ordering::SeqCst);
}

fn binom_fault() -> bool {
    BINOM_FAULT.load(Ordering::SeqCst)
}

/// Generalized binomial coefficient for `λ ⋗ μ` from the hook ratios over the other boxes of
/// the added box's column (`c`) and row (`c'`).
pub fn binom_up(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<Rational> {
    let i0 = lambda
        .added_row(mu)
        .ok_or_else(|| Error::InvalidInput(format!("{lambda} does not cover {mu}")))?;
    let j0 = lambda.part(i0);
    let lc = lambda.conjugate();
    let mc = mu.conjugate();
    let mut out = Rational::one();
    for i in 1..i0 {
        let num = upper_hook(lambda, &lc, i, j0, alpha);
        let den = upper_hook(mu, &mc, i, j0, alpha);
        out *= num.checked_div(&den, "upper hook ratio")?;
    }
    for j in 1..j0 {
        let num = lower_hook(lambda, &lc, i0, j, alpha);
        let den = lower_hook(mu, &mc, i0, j, alpha);
        out *= num.checked_div(&den, "lower hook ratio")?;
    }
    if binom_fault() {
        out += Rational::one();
    }
    Ok(out)
}

/// Closed form for `binom(λ, λ−ε_{i0})` with 1-based row `i0 ≤ n`; zero when `λ−ε_{i0}` is not
/// a partition.
pub fn binom_down_row(lambda: &Partition, i0: usize, alpha: &Rational, n: usize) -> Result<Rational> {
    if lambda.len() > n || i0 == 0 || i0 > n {
        return Err(Error::InvalidInput(format!("row {i0} of {lambda} is outside 1..={n}")));
    }
    let w = shifted_parts(lambda, n, alpha);
    let inv_alpha = alpha.recip()?;
    let w0 = &w[i0 - 1];
    let mut out = w0 + Rational::from(n - 1) * &inv_alpha;
    for (i, wi) in w.iter().enumerate() {
        if i + 1 == i0 {
            continue;
        }
        let diff = wi - w0;
        out *= (&diff + &inv_alpha).checked_div(&diff, "shifted-part difference")?;
    }
    Ok(out)
}

/// [`binom_down_row`] for a covered partition `μ ⋖ λ`.
pub fn binom_down_formula(lambda: &Partition, mu: &Partition, alpha: &Rational, n: usize) -> Result<Rational> {
    let i0 = lambda
        .added_row(mu)
        .ok_or_else(|| Error::InvalidInput(format!("{lambda} does not cover {mu}")))?;
    binom_down_row(lambda, i0, alpha, n)
}

type BinomKey = (Partition, Partition, Rational, bool);

fn binom_cache() -> &'static Mutex<HashMap<BinomKey, Rational>> {
    static CACHE: OnceLock<Mutex<HashMap<BinomKey, Rational>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn contains(lambda: &Partition, mu: &Partition) -> bool {
    mu.len() <= lambda.len() && mu.parts().iter().zip(lambda.parts()).all(|(m, l)| m <= l)
}

/// Generalized binomial coefficient `binom(λ, μ)`, zero unless `μ ⊆ λ`, from
/// `(|λ|−|μ|) b_{λμ} = Σ_{ν⋖λ} b_{λν} b_{νμ}`.
pub fn binom_general(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<Rational> {
    if !contains(lambda, mu) {
        return Ok(Rational::zero());
    }
    if lambda == mu {
        return Ok(Rational::one());
    }
    let gap = lambda.size() - mu.size();
    if gap == 1 {
        return binom_up(lambda, mu, alpha);
    }
    let key = (lambda.clone(), mu.clone(), alpha.clone(), binom_fault());
    if let Some(hit) = binom_cache().lock().expect("binom cache lock").get(&key) {
        return Ok(hit.clone());
    }
    let mut sum = Rational::zero();
    for (_, nu) in crate::partitions::covered_with_rows(lambda) {
        if !contains(&nu, mu) {
            continue;
        }
        sum += binom_up(lambda, &nu, alpha)? * binom_general(&nu, mu, alpha)?;
    }
    let out = sum / Rational::from(gap);
    binom_cache().lock().expect("binom cache lock").insert(key, out.clone());
    Ok(out)
}

/// Pieri coefficient: `e_1 J_μ = Σ_{λ⋗μ} φ_{λ/μ} J_λ`, for the 1-based row `i0 ≤ n`.
/// Zero when `μ+ε_{i0}` is not a partition.
pub fn pieri_phi_row(mu: &Partition, i0: usize, alpha: &Rational, n: usize) -> Result<Rational> {
    if mu.len() > n || i0 == 0 || i0 > n {
        return Err(Error::InvalidInput(format!("row {i0} of {mu} is outside 1..={n}")));
    }
    let w = shifted_parts(mu, n, alpha);
    let inv_alpha = alpha.recip()?;
    let w0 = &w[i0 - 1];
    let mut out = inv_alpha.checked_div(&(w0 + Rational::from(n) * &inv_alpha), "Pieri denominator")?;
    for (i, wi) in w.iter().enumerate() {
        if i + 1 == i0 {
            continue;
        }
        let diff = w0 - wi;
        out *= (&diff + &inv_alpha).checked_div(&diff, "shifted-part difference")?;
    }
    Ok(out)
}

/// [`pieri_phi_row`] for `λ ⋗ μ` with `ℓ(λ) ≤ n`.
pub fn pieri_phi(lambda: &Partition, mu: &Partition, alpha: &Rational, n: usize) -> Result<Rational> {
    let i0 = lambda
        .added_row(mu)
        .ok_or_else(|| Error::InvalidInput(format!("{lambda} does not cover {mu}")))?;
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
    }
    pieri_phi_row(mu, i0, alpha, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::rat;
    use crate::sympoly::hall_inner;

    fn m(l: Partition, n: usize) -> SymPoly {
        SymPoly::monomial(l, n)
    }

    #[test]
    fn low_degree_expansions() {
        let alpha = rat(5, 2).unwrap();
        assert_eq!(jack_j(&part![1], 3, &alpha).unwrap(), m(part![1], 3));
        let want = m(part![2], 3)
            .scale(&(&alpha + Rational::one()))
            .add(&m(part![1, 1], 3).scale(&Rational::integer(2)))
            .unwrap();
        assert_eq!(jack_j(&part![2], 3, &alpha).unwrap(), want);
        assert_eq!(jack_j(&part![1, 1], 2, &alpha).unwrap(), m(part![1, 1], 2).scale(&Rational::integer(2)));
        assert_eq!(jack_j(&Partition::empty(), 2, &alpha).unwrap(), SymPoly::constant(2, Rational::one()));
        assert!(jack_j(&part![1, 1, 1], 2, &alpha).is_err());
    }

    #[test]
    fn norm_and_evaluation() {
        let alpha = rat(3, 7).unwrap();
        let j2 = jack_j(&part![2], 3, &alpha).unwrap();
        assert_eq!(hall_inner(&j2, &j2, &alpha).unwrap(), hooks(&part![2], &alpha).j);
        for lambda in [part![2, 1], part![3], part![1, 1, 1]] {
            let j = jack_j(&lambda, 3, &alpha).unwrap();
            assert_eq!(j.eval_ones(), jack_eval_ones(&lambda, 3, &alpha));
        }
        assert_eq!(jack_eval_ones(&part![1, 1], 2, &alpha), Rational::integer(2));
        assert_eq!(jack_eval_ones(&Partition::empty(), 4, &alpha), Rational::one());
    }

    #[test]
    fn binomials() {
        let alpha = rat(7, 3).unwrap();
        assert_eq!(binom_up(&part![2], &part![1], &alpha).unwrap(), Rational::integer(2));
        assert_eq!(binom_up(&part![1, 1], &part![1], &alpha).unwrap(), Rational::integer(2));
        assert_eq!(binom_up(&part![1], &Partition::empty(), &alpha).unwrap(), Rational::one());
        assert!(binom_up(&part![3], &part![1], &alpha).is_err());
        assert_eq!(binom_general(&part![2], &Partition::empty(), &alpha).unwrap(), Rational::one());
        assert_eq!(binom_general(&part![2], &part![1, 1], &alpha).unwrap(), Rational::zero());
        for n in 1..4 {
            assert_eq!(binom_down_formula(&part![2], &part![1], &alpha, n).unwrap(), Rational::integer(2));
        }
        assert_eq!(
            binom_down_formula(&part![2, 2], &part![2, 1], &alpha, 2).unwrap(),
            binom_up(&part![2, 2], &part![2, 1], &alpha).unwrap()
        );
        assert_eq!(binom_down_row(&part![1, 1], 1, &alpha, 3).unwrap(), Rational::zero());
    }

    #[test]
    fn pieri() {
        let alpha = rat(2, 5).unwrap();
        assert_eq!(pieri_phi(&part![1], &Partition::empty(), &alpha, 1).unwrap(), Rational::one());
        let want = &alpha * Rational::integer(2) * hooks(&part![1], &alpha).j / hooks(&part![2], &alpha).j;
        assert_eq!(pieri_phi(&part![2], &part![1], &alpha, 2).unwrap(), want);
        assert_eq!(pieri_phi_row(&part![1], 2, &alpha, 1).ok(), None);
        assert_eq!(pieri_phi_row(&part![1, 1], 2, &alpha, 3).unwrap(), Rational::zero());
    }

    #[test]
    fn forms() {
        let alpha = rat(3, 2).unwrap();
        let lambda = part![2, 1];
        let one = Rational::one();
        let j = hooks(&lambda, &alpha).j;
        assert_eq!(convert_form(&one, &lambda, JackForm::Jstar, JackForm::J, 3, &alpha).unwrap(), one.clone() / &j);
        assert_eq!(convert_form(&one, &lambda, JackForm::J, JackForm::Jstar, 3, &alpha).unwrap(), j);
        assert_eq!(convert_form(&one, &lambda, JackForm::C, JackForm::C, 3, &alpha).unwrap(), one);
        let f = jack_j(&part![2], 2, &alpha).unwrap().add(&jack_j(&part![1, 1], 2, &alpha).unwrap()).unwrap();
        let coeffs = to_jack_basis(&f, &alpha, JackForm::J).unwrap();
        assert_eq!(coeffs.len(), 2);
        assert!(coeffs.values().all(Rational::is_one));
    }
}
