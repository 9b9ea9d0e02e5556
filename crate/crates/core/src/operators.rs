//! Differential operators on symmetric polynomials (`E_r`, `□`, multiplication by `e_1`, their
//! commutators, the lowering and raising operators) and the eigenvalues of the diagonal
//! operators built from the Debiard–Sekiguchi family.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::jack::{binom_up, jack_eval_ones};
use crate::partitions::{covered_with_rows, covers_with_rows, hooks, rho, rho_skew, shifted_parts, ParamSet, Partition};
use crate::poly::Poly;
use crate::scalar::{complete_homogeneous, elementary, ps_inv, ps_mul, Rational, UniSeries};
use crate::sympoly::SymPoly;

/// `E_r = Σ_i x_i^{r−1} ∂_i`, `r ≥ 1`.
pub fn apply_e(r: u32, f: &SymPoly) -> Result<SymPoly> {
    if r == 0 {
        return Err(Error::InvalidInput("E_r needs r >= 1".into()));
    }
    Ok(Poly::from_sym(f).apply_e(r).to_sym())
}

/// Laplace–Beltrami operator `□`.
pub fn apply_box(f: &SymPoly, alpha: &Rational) -> SymPoly {
    Poly::from_sym(f).apply_box(alpha).to_sym()
}

/// Multiplication by `e_1 = p_1`.
pub fn mul_e1(f: &SymPoly) -> SymPoly {
    Poly::from_sym(f).mul_e1().to_sym()
}

/// A composable operator on symmetric polynomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OpExpr {
    E(u32),
    Box,
    MulE1,
    /// Multiplication by a constant.
    Scalar(Rational),
    Sum(std::boxed::Box<OpExpr>, std::boxed::Box<OpExpr>),
    Neg(std::boxed::Box<OpExpr>),
    /// `Compose(A, B)` applies `B` first, then `A`.
    Compose(std::boxed::Box<OpExpr>, std::boxed::Box<OpExpr>),
    Commutator(std::boxed::Box<OpExpr>, std::boxed::Box<OpExpr>),
    /// `ad_a^r(b)`
    Ad { a: std::boxed::Box<OpExpr>, b: std::boxed::Box<OpExpr>, r: u32 },
}

use std::boxed::Box as B;

impl OpExpr {
    pub fn sum(a: OpExpr, b: OpExpr) -> OpExpr {
        OpExpr::Sum(B::new(a), B::new(b))
    }

    pub fn compose(a: OpExpr, b: OpExpr) -> OpExpr {
        OpExpr::Compose(B::new(a), B::new(b))
    }

    pub fn commutator(a: OpExpr, b: OpExpr) -> OpExpr {
        OpExpr::Commutator(B::new(a), B::new(b))
    }

    pub fn ad(a: OpExpr, b: OpExpr, r: u32) -> OpExpr {
        OpExpr::Ad { a: B::new(a), b: B::new(b), r }
    }

    pub fn neg(a: OpExpr) -> OpExpr {
        OpExpr::Neg(B::new(a))
    }

    /// Change in polynomial degree, or `None` when the summands shift by different amounts.
    pub fn degree_shift(&self) -> Option<i32> {
        match self {
            OpExpr::E(r) => Some(*r as i32 - 2),
            OpExpr::Box | OpExpr::Scalar(_) => Some(0),
            OpExpr::MulE1 => Some(1),
            OpExpr::Neg(a) => a.degree_shift(),
            OpExpr::Sum(a, b) => {
                let (x, y) = (a.degree_shift()?, b.degree_shift()?);
                (x == y).then_some(x)
            }
            OpExpr::Compose(a, b) | OpExpr::Commutator(a, b) => Some(a.degree_shift()? + b.degree_shift()?),
            OpExpr::Ad { a, b, r } => Some(a.degree_shift()? * *r as i32 + b.degree_shift()?),
        }
    }

    pub fn apply(&self, f: &SymPoly, alpha: &Rational) -> Result<SymPoly> {
        match self {
            OpExpr::E(r) => apply_e(*r, f),
            OpExpr::Box => Ok(apply_box(f, alpha)),
            OpExpr::MulE1 => Ok(mul_e1(f)),
            OpExpr::Scalar(c) => Ok(f.scale(c)),
            OpExpr::Neg(a) => Ok(a.apply(f, alpha)?.scale(&-Rational::one())),
            OpExpr::Sum(a, b) => a.apply(f, alpha)?.add(&b.apply(f, alpha)?),
            OpExpr::Compose(a, b) => a.apply(&b.apply(f, alpha)?, alpha),
            OpExpr::Commutator(a, b) => {
                let ab = a.apply(&b.apply(f, alpha)?, alpha)?;
                let ba = b.apply(&a.apply(f, alpha)?, alpha)?;
                ab.sub(&ba)
            }
            OpExpr::Ad { a, b, r } => apply_ad_power(a, b, *r, f, alpha),
        }
    }

    /// Parses expressions such as `ad(-box,E1)^2`, `[box,e1] + 3/2*E2`, `E1*box`.
    ///
    /// Atoms are `E<r>`, `box`, `e1`, rationals, `ad(A,B)^r`, `[A,B]` and parenthesized
    /// expressions. `*` composes (right factor applied first), `^k` on anything other than
    /// `ad(..)` is a composition power.
    pub fn parse(src: &str) -> Result<OpExpr> {
        let tokens = tokenize(src)?;
        let mut p = Parser { tokens, pos: 0 };
        let e = p.expr()?;
        if p.pos != p.tokens.len() {
            return Err(Error::InvalidInput(format!("unexpected {:?} in operator {src:?}", p.tokens[p.pos])));
        }
        Ok(e)
    }
}

impl fmt::Display for OpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OpExpr::E(r) => write!(f, "E{r}"),
            OpExpr::Box => f.write_str("box"),
            OpExpr::MulE1 => f.write_str("e1"),
            OpExpr::Scalar(c) => write!(f, "{c}"),
            OpExpr::Neg(a) => write!(f, "-({a})"),
            OpExpr::Sum(a, b) => write!(f, "({a} + {b})"),
            OpExpr::Compose(a, b) => write!(f, "({a})*({b})"),
            OpExpr::Commutator(a, b) => write!(f, "[{a},{b}]"),
            OpExpr::Ad { a, b, r } => write!(f, "ad({a},{b})^{r}"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Sym(char),
}

fn tokenize(src: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '/') {
                i += 1;
            }
            let lit: String = chars[start..i].iter().collect();
            out.push(Tok::Num(lit.parse()?));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*^(),[]".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::InvalidInput(format!("unexpected character {c:?} in operator {src:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!("expected {c:?} in operator, found {:?}", self.peek())))
        }
    }

    fn integer(&mut self) -> Result<u32> {
        match self.tokens.get(self.pos) {
            Some(Tok::Num(r)) if r.is_integer() && !r.is_negative() => {
                self.pos += 1;
                r.to_string().parse().map_err(|_| Error::InvalidInput(format!("exponent {r} too large")))
            }
            other => Err(Error::InvalidInput(format!("expected a non-negative integer, found {other:?}"))),
        }
    }

    fn expr(&mut self) -> Result<OpExpr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = OpExpr::sum(lhs, self.term()?);
            } else if self.eat('-') {
                lhs = OpExpr::sum(lhs, OpExpr::neg(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<OpExpr> {
        let mut lhs = self.factor()?;
        while self.eat('*') {
            lhs = OpExpr::compose(lhs, self.factor()?);
        }
        Ok(lhs)
    }

    fn factor(&mut self) -> Result<OpExpr> {
        if self.eat('-') {
            return Ok(OpExpr::neg(self.factor()?));
        }
        let (atom, is_ad) = self.atom()?;
        if is_ad || !self.eat('^') {
            return Ok(atom);
        }
        let k = self.integer()?;
        let mut out = OpExpr::Scalar(Rational::one());
        for _ in 0..k {
            out = OpExpr::compose(atom.clone(), out);
        }
        Ok(out)
    }

    fn atom(&mut self) -> Result<(OpExpr, bool)> {
        let tok = self.peek().cloned().ok_or_else(|| Error::InvalidInput("operator ends early".into()))?;
        self.pos += 1;
        match tok {
            Tok::Num(c) => Ok((OpExpr::Scalar(c), false)),
            Tok::Sym('(') => {
                let e = self.expr()?;
                self.expect(')')?;
                Ok((e, false))
            }
            Tok::Sym('[') => {
                let a = self.expr()?;
                self.expect(',')?;
                let b = self.expr()?;
                self.expect(']')?;
                Ok((OpExpr::commutator(a, b), false))
            }
            Tok::Ident(name) => match name.as_str() {
                "box" => Ok((OpExpr::Box, false)),
                "e1" => Ok((OpExpr::MulE1, false)),
                "ad" => {
                    self.expect('(')?;
                    let a = self.expr()?;
                    self.expect(',')?;
                    let b = self.expr()?;
                    self.expect(')')?;
                    let r = if self.eat('^') { self.integer()? } else { 1 };
                    Ok((OpExpr::ad(a, b, r), true))
                }
                _ => match name.strip_prefix('E').map(str::parse::<u32>) {
                    Some(Ok(r)) if r >= 1 => Ok((OpExpr::E(r), false)),
                    _ => Err(Error::InvalidInput(format!("unknown operator atom {name:?}"))),
                },
            },
            Tok::Sym(c) => Err(Error::InvalidInput(format!("unexpected {c:?} in operator"))),
        }
    }
}

fn binomial(n: u32, k: u32) -> Rational {
    (0..k).fold(Rational::one(), |acc, i| acc * Rational::from(n - i) / Rational::from(i + 1))
}

/// `ad_A^r(B) f = Σ_k (−1)^k C(r,k) A^{r−k} B A^k f`.
pub fn apply_ad_power(a: &OpExpr, b: &OpExpr, r: u32, f: &SymPoly, alpha: &Rational) -> Result<SymPoly> {
    let mut powers = vec![f.clone()];
    for k in 0..r as usize {
        let next = a.apply(&powers[k], alpha)?;
        powers.push(next);
    }
    let mut out: Option<SymPoly> = None;
    for k in 0..=r {
        let mut g = b.apply(&powers[k as usize], alpha)?;
        for _ in 0..(r - k) {
            g = a.apply(&g, alpha)?;
        }
        let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
        let c = binomial(r, k) * sign;
        match out.as_mut() {
            None => out = Some(g.scale(&c)),
            Some(acc) => acc.add_assign_scaled(&g, &c)?,
        }
    }
    Ok(out.expect("at least one term"))
}

/// `Σ_{r=0}^{q} e_{q−r}(params) ad_A^r(B) f`, evaluated in nested form so that `A` is applied
/// `2q` times and `B` is applied `q+1` times.
fn commutator_polynomial(
    params: &[Rational],
    f: &SymPoly,
    a: impl Fn(&SymPoly) -> Result<SymPoly>,
    b: impl Fn(&SymPoly) -> Result<SymPoly>,
) -> Result<SymPoly> {
    let q = params.len();
    let e: Vec<Rational> = (0..=q).map(|k| elementary(params, k)).collect();
    // Y_k = B(A^k f)
    let mut ak = f.clone();
    let mut ys = Vec::with_capacity(q + 1);
    for k in 0..=q {
        if k > 0 {
            ak = a(&ak)?;
        }
        ys.push(b(&ak)?);
    }
    let n_out = ys[0].n();
    // Z_j = Σ_k e_{q−j−k} (−1)^k C(j+k, k) Y_k, result = Z_0 + A(Z_1 + A(Z_2 + ...))
    let mut acc = SymPoly::zero(n_out);
    for j in (0..=q).rev() {
        let mut z = SymPoly::zero(n_out);
        for (k, y) in ys.iter().enumerate().take(q - j + 1) {
            let sign = if k % 2 == 0 { Rational::one() } else { -Rational::one() };
            let c = &e[q - j - k] * binomial((j + k) as u32, k as u32) * sign;
            z.add_assign_scaled(y, &c)?;
        }
        acc = if j == q { z } else { z.add(&a(&acc)?)? };
    }
    Ok(acc)
}

/// Lowering operator `L = Σ_{r=0}^{q} e_{q−r}(b) ad_{−□}^r(E_1)` with `b = params.lower`.
pub fn apply_lowering_l(params: &ParamSet, f: &SymPoly) -> Result<SymPoly> {
    let alpha = &params.alpha;
    let minus = -Rational::one();
    commutator_polynomial(
        &params.lower,
        f,
        |g| Ok(apply_box(g, alpha).scale(&minus)),
        |g| apply_e(1, g),
    )
}

/// Raising operator `R = Σ_{r=0}^{p} e_{p−r}(a) ad_□^r(e_1)` with `a = params.upper`.
pub fn apply_raising_r(params: &ParamSet, f: &SymPoly) -> Result<SymPoly> {
    let alpha = &params.alpha;
    commutator_polynomial(&params.upper, f, |g| Ok(apply_box(g, alpha)), |g| Ok(mul_e1(g)))
}

fn shifted_product(lambda: &Partition, mu: &Partition, shifts: &[Rational], alpha: &Rational) -> Result<Rational> {
    let r = rho_skew(lambda, mu, alpha)?;
    Ok(shifts.iter().map(|s| &r + s).product())
}

/// `L` on unital-form coordinates: `L(Ω_λ) = Σ_{μ⋖λ} Π_k(ρ(λ/μ)+b_k) binom(λ,μ) Ω_μ`.
pub fn lowering_on_omega(
    coeffs: &BTreeMap<Partition, Rational>,
    lower: &[Rational],
    alpha: &Rational,
) -> Result<BTreeMap<Partition, Rational>> {
    let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (lambda, c) in coeffs {
        for (_, mu) in covered_with_rows(lambda) {
            let w = c * shifted_product(lambda, &mu, lower, alpha)? * binom_up(lambda, &mu, alpha)?;
            *out.entry(mu).or_default() += w;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// `R` on dual-form coordinates: `R(J*_μ) = α Σ_{λ⋗μ, ℓ(λ)≤n} Π_k(ρ(λ/μ)+a_k) binom(λ,μ) J*_λ`.
pub fn raising_on_jstar(
    coeffs: &BTreeMap<Partition, Rational>,
    upper: &[Rational],
    alpha: &Rational,
    n: usize,
) -> Result<BTreeMap<Partition, Rational>> {
    let mut out: BTreeMap<Partition, Rational> = BTreeMap::new();
    for (mu, c) in coeffs {
        for (_, lambda) in covers_with_rows(mu, n) {
            let w = c * alpha * shifted_product(&lambda, mu, upper, alpha)? * binom_up(&lambda, mu, alpha)?;
            *out.entry(lambda).or_default() += w;
        }
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Debiard–Sekiguchi eigenvalue `D(t)(J_λ) = Π_{i=1}^n (w_i + t) J_λ`.
pub fn sekiguchi_eigenvalue(lambda: &Partition, t: &Rational, n: usize, alpha: &Rational) -> Rational {
    shifted_parts(lambda, n, alpha).iter().map(|w| w + t).product()
}

/// Eigenvalue `e_r(w_1..w_n)` of `D_r`.
pub fn d_r_eigenvalue(lambda: &Partition, r: usize, n: usize, alpha: &Rational) -> Rational {
    elementary(&shifted_parts(lambda, n, alpha), r)
}

/// Eigenvalue `e_r(w_1−1..w_n−1)` of `D̃_r`, where `D(t) = Σ_r (t+1)^{n−r} D̃_r`.
pub fn dtilde_r_eigenvalue(lambda: &Partition, r: usize, n: usize, alpha: &Rational) -> Rational {
    let w: Vec<Rational> = shifted_parts(lambda, n, alpha).into_iter().map(|w| w - Rational::one()).collect();
    elementary(&w, r)
}

fn check_len(lambda: &Partition, n: usize) -> Result<()> {
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
    }
    Ok(())
}

/// `(1 + c s)^k` truncated at `order`.
fn linear_power(c: &Rational, k: usize, order: usize) -> UniSeries {
    UniSeries::linear(Rational::one(), c.clone(), order).pow(k)
}

/// `Σ_r (−s)^r (1 + c s)^{n−r} X_r / Σ_r (−s)^r X_r` for eigenvalues `X_0 = 1, X_1, ..., X_n`.
fn sekiguchi_quotient(x: &[Rational], c: &Rational, order: usize) -> Result<UniSeries> {
    let n = x.len() - 1;
    let mut num = UniSeries::zero(order);
    let mut den = UniSeries::zero(order);
    for (r, xr) in x.iter().enumerate() {
        let sign = if r % 2 == 0 { Rational::one() } else { -Rational::one() };
        let mono = UniSeries::new(
            (0..=r).map(|k| if k == r { sign.clone() * xr } else { Rational::zero() }).collect(),
            order,
        );
        num = num.add(&ps_mul(&mono, &linear_power(c, n - r, order))?)?;
        den = den.add(&mono)?;
    }
    ps_mul(&num, &ps_inv(&den)?)
}

/// `𝓖_n(s)` on `J_μ`: `α D(−1/s−1/α)/D(−1/s)` expanded through the `D_r` eigenvalues.
pub fn g_generating(mu: &Partition, n: usize, alpha: &Rational, order: usize) -> Result<UniSeries> {
    check_len(mu, n)?;
    let d: Vec<Rational> = (0..=n).map(|r| d_r_eigenvalue(mu, r, n, alpha)).collect();
    Ok(sekiguchi_quotient(&d, &alpha.recip()?, order)?.scale(alpha))
}

/// `g_{r,n}(μ)`, the coefficient of `s^{r+1}` in `𝓖_n(s)` acting on `J_μ`.
pub fn g_eigenvalue(mu: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    Ok(g_generating(mu, n, alpha, r + 1)?.coeff(r + 1))
}

/// `g_{r,n}(μ)` from the product `α Π_i (1 − (w_i − 1/α)s)/(1 − w_i s)`.
pub fn g_eigenvalue_product(mu: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    check_len(mu, n)?;
    let inv = alpha.recip()?;
    let order = r + 1;
    let mut acc = UniSeries::one(order);
    for w in shifted_parts(mu, n, alpha) {
        let num = UniSeries::linear(Rational::one(), -(&w - &inv), order);
        let den = UniSeries::linear(Rational::one(), -w, order);
        acc = ps_mul(&ps_mul(&acc, &num)?, &ps_inv(&den)?)?;
    }
    Ok(acc.coeff(order) * alpha)
}

/// `g_{r,n}(μ) = α Σ_{p=0}^{r+1} (−1)^p e_p(w − 1/α) h_{r+1−p}(w)`.
pub fn g_eigenvalue_eh(mu: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    check_len(mu, n)?;
    let inv = alpha.recip()?;
    let w = shifted_parts(mu, n, alpha);
    let shifted: Vec<Rational> = w.iter().map(|x| x - &inv).collect();
    let mut acc = Rational::zero();
    for p in 0..=r + 1 {
        let term = elementary(&shifted, p) * complete_homogeneous(&w, r + 1 - p);
        if p % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    Ok(acc * alpha)
}

/// `g_{r,n}(μ) = α Σ_{λ⋗μ} ρ(λ/μ)^r binom(λ,μ) (J_λ(1_n)/j_λ)(j_μ/J_μ(1_n))`, summed directly.
pub fn g_eigenvalue_brute(mu: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    check_len(mu, n)?;
    let jm = hooks(mu, alpha).j;
    let em = jack_eval_ones(mu, n, alpha);
    let mut acc = Rational::zero();
    for (_, lambda) in covers_with_rows(mu, n) {
        let ratio = (jack_eval_ones(&lambda, n, alpha) * &jm).checked_div(&(hooks(&lambda, alpha).j * &em), "g ratio")?;
        acc += rho_skew(&lambda, mu, alpha)?.pow(r as i32) * binom_up(&lambda, mu, alpha)? * ratio;
    }
    Ok(acc * alpha)
}

/// `F(μ; s) = Σ_r f_r(μ) s^r` by the closed form
/// `(1/(1+ns/α)) (Π (1−(w_i−1/α)s)/(1−w_i s) − Π (w_i+(n−1)/α)/(w_i+n/α))`.
pub fn f_generating(mu: &Partition, n: usize, alpha: &Rational, order: usize) -> Result<UniSeries> {
    check_len(mu, n)?;
    let inv = alpha.recip()?;
    let w = shifted_parts(mu, n, alpha);
    let mut prod = UniSeries::one(order);
    let mut subtrahend = Rational::one();
    let nn = Rational::from(n);
    for wi in &w {
        let num = UniSeries::linear(Rational::one(), -(wi - &inv), order);
        let den = UniSeries::linear(Rational::one(), -wi.clone(), order);
        prod = ps_mul(&ps_mul(&prod, &num)?, &ps_inv(&den)?)?;
        let top = wi + (&nn - Rational::one()) * &inv;
        let bottom = wi + &nn * &inv;
        subtrahend *= top.checked_div(&bottom, "f subtrahend")?;
    }
    let inner = prod.sub(&UniSeries::new(vec![subtrahend], order))?;
    let front = ps_inv(&UniSeries::linear(Rational::one(), &nn * &inv, order))?;
    ps_mul(&front, &inner)
}

/// `f_r(μ) = α Σ_{λ⋗μ, ℓ(λ)≤n} ρ(λ/μ)^r binom(λ,μ) j_μ/j_λ`, summed directly.
pub fn f_eigenvalue_brute(mu: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    check_len(mu, n)?;
    let jm = hooks(mu, alpha).j;
    let mut acc = Rational::zero();
    for (_, lambda) in covers_with_rows(mu, n) {
        let ratio = jm.checked_div(&hooks(&lambda, alpha).j, "f ratio")?;
        acc += rho_skew(&lambda, mu, alpha)?.pow(r as i32) * binom_up(&lambda, mu, alpha)? * ratio;
    }
    Ok(acc * alpha)
}

/// `H̃(s)` on `J_λ`: `D(−1/s−1+1/α)/D(−1/s−1)` expanded through the `D̃_r` eigenvalues.
pub fn htilde_generating(lambda: &Partition, n: usize, alpha: &Rational, order: usize) -> Result<UniSeries> {
    check_len(lambda, n)?;
    let d: Vec<Rational> = (0..=n).map(|r| dtilde_r_eigenvalue(lambda, r, n, alpha)).collect();
    sekiguchi_quotient(&d, &-alpha.recip()?, order)
}

/// `H_r(λ) = −α H̃_{r+2}(λ) − (α+n−1) H̃_{r+1}(λ)`.
pub fn h_eigenvalue(lambda: &Partition, r: usize, n: usize, alpha: &Rational) -> Result<Rational> {
    let ht = htilde_generating(lambda, n, alpha, r + 2)?;
    let c = alpha + Rational::from(n) - Rational::one();
    Ok(-(alpha * ht.coeff(r + 2)) - c * ht.coeff(r + 1))
}

/// `H(λ; s) = (α/s²)(1 + (1−1/α)s − (1 + (1+(n−1)/α)s) H̃(λ; s))` with `H̃` taken from the product
/// `Π (1−(w_i−1+1/α)s)/(1−(w_i−1)s)`.
pub fn h_generating(lambda: &Partition, n: usize, alpha: &Rational, order: usize) -> Result<UniSeries> {
    check_len(lambda, n)?;
    let inv = alpha.recip()?;
    let big = order + 2;
    let mut ht = UniSeries::one(big);
    for w in shifted_parts(lambda, n, alpha) {
        let wm = w - Rational::one();
        let num = UniSeries::linear(Rational::one(), -(&wm + &inv), big);
        let den = UniSeries::linear(Rational::one(), -wm, big);
        ht = ps_mul(&ps_mul(&ht, &num)?, &ps_inv(&den)?)?;
    }
    let lead = UniSeries::linear(Rational::one(), Rational::one() - &inv, big);
    let tail = UniSeries::linear(Rational::one(), Rational::one() + Rational::from(n - 1) * &inv, big);
    let inner = lead.sub(&ps_mul(&tail, &ht)?)?;
    for k in 0..2 {
        if !inner.coeff(k).is_zero() {
            return Err(Error::Internal(format!("H({lambda}; s) has a pole of order {}", 2 - k)));
        }
    }
    Ok(UniSeries::new(inner.coeffs()[2..].iter().map(|c| c * alpha).collect(), order))
}

/// `H_r(λ) = Σ_{μ⋖λ} ρ(λ/μ)^r binom(λ,μ)`, summed directly.
pub fn h_eigenvalue_brute(lambda: &Partition, r: usize, alpha: &Rational) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (_, mu) in covered_with_rows(lambda) {
        acc += rho_skew(lambda, &mu, alpha)?.pow(r as i32) * binom_up(lambda, &mu, alpha)?;
    }
    Ok(acc)
}

/// Eigenvalue of `M = Σ_r e_{p−r}(a) 𝓖_{r,n}` on `J_μ`.
pub fn m_eigenvalue(mu: &Partition, params: &ParamSet) -> Result<Rational> {
    let p = params.p();
    let series = g_generating(mu, params.n, &params.alpha, p + 1)?;
    Ok((0..=p).map(|r| elementary(&params.upper, p - r) * series.coeff(r + 1)).sum())
}

/// `α Σ_{λ⋗μ} Π_k(ρ(λ/μ)+a_k) binom(λ,μ) (J_λ(1_n)/j_λ)(j_μ/J_μ(1_n))`, summed directly.
pub fn m_eigenvalue_brute(mu: &Partition, params: &ParamSet) -> Result<Rational> {
    let (n, alpha) = (params.n, &params.alpha);
    check_len(mu, n)?;
    let jm = hooks(mu, alpha).j;
    let em = jack_eval_ones(mu, n, alpha);
    let mut acc = Rational::zero();
    for (_, lambda) in covers_with_rows(mu, n) {
        let ratio = (jack_eval_ones(&lambda, n, alpha) * &jm).checked_div(&(hooks(&lambda, alpha).j * &em), "M ratio")?;
        acc += shifted_product(&lambda, mu, &params.upper, alpha)? * binom_up(&lambda, mu, alpha)? * ratio;
    }
    Ok(acc * alpha)
}

/// Eigenvalue of `N = Σ_r e_{q−r}(b) H_r` on `J_λ`.
pub fn n_eigenvalue(lambda: &Partition, params: &ParamSet) -> Result<Rational> {
    let q = params.q();
    let (n, alpha) = (params.n, &params.alpha);
    check_len(lambda, n)?;
    let ht = htilde_generating(lambda, n, alpha, q + 2)?;
    let c = alpha + Rational::from(n) - Rational::one();
    let mut acc = Rational::zero();
    for r in 0..=q {
        let h = -(alpha * ht.coeff(r + 2)) - &c * ht.coeff(r + 1);
        acc += elementary(&params.lower, q - r) * h;
    }
    Ok(acc)
}

/// `Σ_{μ⋖λ} Π_k(ρ(λ/μ)+b_k) binom(λ,μ)`, summed directly.
pub fn n_eigenvalue_brute(lambda: &Partition, params: &ParamSet) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (_, mu) in covered_with_rows(lambda) {
        acc += shifted_product(lambda, &mu, &params.lower, &params.alpha)? * binom_up(lambda, &mu, &params.alpha)?;
    }
    Ok(acc)
}

/// Scalar parts of the two-parameter lowering and raising eigen-operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HatEigen {
    /// The factor `c + |λ| − 1` by which `(c + E_2)E_1` exceeds `E_1` on `J*_λ`.
    LhatScalar,
    /// Eigenvalue `(c + |λ| − 1)|λ|` of `(c − 1 + E_2)E_2`.
    Nhat,
}

pub fn hat_eigenvalue(kind: HatEigen, lambda: &Partition, c: &Rational) -> Rational {
    let size = Rational::from(lambda.size());
    let factor = c + &size - Rational::one();
    match kind {
        HatEigen::LhatScalar => factor,
        HatEigen::Nhat => factor * size,
    }
}

/// A degree-preserving operator known through its eigenvalues on the Jack basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EigenOp {
    /// Debiard–Sekiguchi `D_r`.
    D(usize),
    /// `𝓖_{r,n}`.
    G(usize),
    /// `H_r`.
    H(usize),
    /// `H̃_r`.
    HTilde(usize),
    /// `M` with upper parameters `a`.
    M(Vec<Rational>),
    /// `N` with lower parameters `b`.
    N(Vec<Rational>),
    /// `(c − 1 + E_2)E_2`.
    NHat(Rational),
}

impl EigenOp {
    pub fn name(&self) -> String {
        match self {
            EigenOp::D(r) => format!("D_{r}"),
            EigenOp::G(r) => format!("G_{r}"),
            EigenOp::H(r) => format!("H_{r}"),
            EigenOp::HTilde(r) => format!("Htilde_{r}"),
            EigenOp::M(a) => format!("M(p={})", a.len()),
            EigenOp::N(b) => format!("N(q={})", b.len()),
            EigenOp::NHat(_) => "Nhat".into(),
        }
    }

    /// Eigenvalue on `J_λ` in `n` variables.
    pub fn eigenvalue(&self, lambda: &Partition, n: usize, alpha: &Rational) -> Result<Rational> {
        match self {
            EigenOp::D(r) => Ok(d_r_eigenvalue(lambda, *r, n, alpha)),
            EigenOp::G(r) => g_eigenvalue(lambda, *r, n, alpha),
            EigenOp::H(r) => h_eigenvalue(lambda, *r, n, alpha),
            EigenOp::HTilde(r) => Ok(htilde_generating(lambda, n, alpha, *r)?.coeff(*r)),
            EigenOp::M(a) => m_eigenvalue(lambda, &ParamSet::new(alpha.clone(), a.clone(), vec![], n)?),
            EigenOp::N(b) => n_eigenvalue(lambda, &ParamSet::new(alpha.clone(), vec![], b.clone(), n)?),
            EigenOp::NHat(c) => Ok(hat_eigenvalue(HatEigen::Nhat, lambda, c)),
        }
    }

    /// Scales each coordinate of a Jack-basis expansion (any normalization) by its eigenvalue.
    pub fn apply(
        &self,
        coeffs: &BTreeMap<Partition, Rational>,
        n: usize,
        alpha: &Rational,
    ) -> Result<BTreeMap<Partition, Rational>> {
        let mut out = BTreeMap::new();
        for (lambda, c) in coeffs {
            let v = c * self.eigenvalue(lambda, n, alpha)?;
            if !v.is_zero() {
                out.insert(lambda.clone(), v);
            }
        }
        Ok(out)
    }
}

/// `ρ(λ)` as the `□` eigenvalue; re-exported here for operator-centric callers.
pub fn box_eigenvalue(lambda: &Partition, alpha: &Rational) -> Rational {
    rho(lambda, alpha)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::jack::{jack_in_form, jack_j, JackForm};
    use crate::part;
    use crate::scalar::rat;

    fn m(l: Partition, n: usize) -> SymPoly {
        SymPoly::monomial(l, n)
    }

    #[test]
    fn atoms() {
        assert_eq!(apply_e(1, &m(part![1], 4)).unwrap(), SymPoly::constant(4, Rational::integer(4)));
        let alpha = rat(3, 1).unwrap();
        assert_eq!(apply_box(&m(part![2], 1), &alpha), m(part![2], 1));
        assert!(apply_e(0, &m(part![1], 2)).is_err());
    }

    #[test]
    fn parser_round_trip() {
        let e = OpExpr::parse("ad(-box,E1)^2").unwrap();
        assert_eq!(e, OpExpr::ad(OpExpr::neg(OpExpr::Box), OpExpr::E(1), 2));
        assert_eq!(e.degree_shift(), Some(-1));
        let c = OpExpr::parse("[box, e1] - E3").unwrap();
        assert_eq!(c.degree_shift(), Some(1));
        assert_eq!(OpExpr::parse("3/2*E2").unwrap(), OpExpr::compose(OpExpr::Scalar(rat(3, 2).unwrap()), OpExpr::E(2)));
        assert!(OpExpr::parse("foo").is_err());
        assert!(OpExpr::parse("E1 +").is_err());
        assert!(OpExpr::parse("E0").is_err());
    }

    #[test]
    fn commutator_is_e3() {
        let alpha = rat(5, 3).unwrap();
        let lhs = OpExpr::parse("[box,e1]").unwrap();
        for lambda in [part![2, 1], part![3], part![1, 1, 1], part![2, 2]] {
            let f = m(lambda, 3);
            assert_eq!(lhs.apply(&f, &alpha).unwrap(), apply_e(3, &f).unwrap());
        }
    }

    #[test]
    fn lowering_matches_direct_sum() {
        let alpha = rat(7, 4).unwrap();
        let b = vec![rat(1, 3).unwrap(), rat(-2, 5).unwrap()];
        let params = ParamSet::new(alpha.clone(), vec![], b.clone(), 2).unwrap();
        let omega = jack_in_form(&part![2, 1], 2, &alpha, JackForm::Omega).unwrap();
        let got = apply_lowering_l(&params, &omega).unwrap();
        let mut want = SymPoly::zero(2);
        for (_, mu) in covered_with_rows(&part![2, 1]) {
            let c = shifted_product(&part![2, 1], &mu, &b, &alpha).unwrap() * binom_up(&part![2, 1], &mu, &alpha).unwrap();
            want.add_assign_scaled(&jack_in_form(&mu, 2, &alpha, JackForm::Omega).unwrap(), &c).unwrap();
        }
        assert_eq!(got, want);
        // against the plain commutator expansion
        let l = OpExpr::sum(
            OpExpr::compose(OpExpr::Scalar(elementary(&b, 2)), OpExpr::E(1)),
            OpExpr::sum(
                OpExpr::compose(OpExpr::Scalar(elementary(&b, 1)), OpExpr::ad(OpExpr::neg(OpExpr::Box), OpExpr::E(1), 1)),
                OpExpr::ad(OpExpr::neg(OpExpr::Box), OpExpr::E(1), 2),
            ),
        );
        assert_eq!(l.apply(&omega, &alpha).unwrap(), got);
    }

    #[test]
    fn raising_matches_transport() {
        let alpha = rat(2, 3).unwrap();
        let a = vec![rat(1, 2).unwrap(), rat(3, 1).unwrap()];
        let params = ParamSet::new(alpha.clone(), a.clone(), vec![], 2).unwrap();
        let js = jack_in_form(&part![1], 2, &alpha, JackForm::Jstar).unwrap();
        let got = apply_raising_r(&params, &js).unwrap();
        let coeffs = raising_on_jstar(&BTreeMap::from([(part![1], Rational::one())]), &a, &alpha, 2).unwrap();
        let want = crate::jack::from_jack_basis(&coeffs, 2, &alpha, JackForm::Jstar).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn eigenvalue_special_values() {
        let alpha = rat(9, 4).unwrap();
        let n = 3;
        for mu in [Partition::empty(), part![1], part![2, 1], part![3, 1, 1]] {
            assert_eq!(g_eigenvalue(&mu, 0, n, &alpha).unwrap(), Rational::from(n));
            assert_eq!(g_eigenvalue(&mu, 1, n, &alpha).unwrap(), Rational::from(mu.size()));
            let g2 = (Rational::one() + Rational::from(n - 1) / &alpha) * Rational::from(mu.size())
                + rho(&mu, &alpha) * Rational::integer(2);
            assert_eq!(g_eigenvalue(&mu, 2, n, &alpha).unwrap(), g2);
            assert_eq!(h_eigenvalue(&mu, 0, n, &alpha).unwrap(), Rational::from(mu.size()));
            assert_eq!(h_eigenvalue(&mu, 1, n, &alpha).unwrap(), rho(&mu, &alpha) * Rational::integer(2));
            for r in 0..4 {
                let g = g_eigenvalue_brute(&mu, r, n, &alpha).unwrap();
                assert_eq!(g_eigenvalue(&mu, r, n, &alpha).unwrap(), g);
                assert_eq!(g_eigenvalue_product(&mu, r, n, &alpha).unwrap(), g);
                assert_eq!(g_eigenvalue_eh(&mu, r, n, &alpha).unwrap(), g);
                assert_eq!(f_generating(&mu, n, &alpha, 4).unwrap().coeff(r), f_eigenvalue_brute(&mu, r, n, &alpha).unwrap());
                let h = h_eigenvalue_brute(&mu, r, &alpha).unwrap();
                assert_eq!(h_eigenvalue(&mu, r, n, &alpha).unwrap(), h);
                assert_eq!(h_generating(&mu, n, &alpha, 4).unwrap().coeff(r), h);
            }
        }
        assert_eq!(d_r_eigenvalue(&part![2, 1], 0, 3, &alpha), Rational::one());
        assert_eq!(
            d_r_eigenvalue(&part![2, 1], 1, 3, &alpha),
            Rational::integer(3) - Rational::integer(3) / &alpha
        );
    }

    #[test]
    fn m_and_n() {
        let alpha = rat(4, 7).unwrap();
        let (a, b) = (rat(1, 5).unwrap(), rat(-3, 2).unwrap());
        let params = ParamSet::new(alpha.clone(), vec![a.clone(), b.clone()], vec![rat(2, 9).unwrap()], 3).unwrap();
        let mu = part![2, 1];
        let n = Rational::from(3usize);
        let want = rho(&mu, &alpha) * Rational::integer(2)
            + (&a + &b + Rational::one() + (&n - Rational::one()) / &alpha) * Rational::from(mu.size())
            + &a * &b * &n;
        assert_eq!(m_eigenvalue(&mu, &params).unwrap(), want);
        assert_eq!(m_eigenvalue_brute(&mu, &params).unwrap(), want);
        let c = params.lower[0].clone();
        let nwant = &c * Rational::from(mu.size()) + rho(&mu, &alpha) * Rational::integer(2);
        assert_eq!(n_eigenvalue(&mu, &params).unwrap(), nwant);
        assert_eq!(n_eigenvalue_brute(&mu, &params).unwrap(), nwant);
    }

    #[test]
    fn eigen_op_on_jack() {
        let alpha = rat(3, 2).unwrap();
        let j = jack_j(&part![2, 1], 3, &alpha).unwrap();
        let e2 = apply_e(2, &j).unwrap();
        let coeffs = crate::jack::to_jack_basis(&j, &alpha, JackForm::J).unwrap();
        let via = EigenOp::H(0).apply(&coeffs, 3, &alpha).unwrap();
        assert_eq!(crate::jack::from_jack_basis(&via, 3, &alpha, JackForm::J).unwrap(), e2);
        assert_eq!(hat_eigenvalue(HatEigen::Nhat, &part![2, 1], &alpha), (&alpha + Rational::integer(2)) * Rational::integer(3));
        assert_eq!(hat_eigenvalue(HatEigen::Nhat, &Partition::empty(), &alpha), Rational::zero());
    }
}
