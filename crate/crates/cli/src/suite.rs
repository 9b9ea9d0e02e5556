//! The verification matrix. Each criterion expands into named checks; every check draws its
//! parameters from a stream derived from `(seed, check id)`, so reports are reproducible and
//! independent of execution order.

use std::collections::BTreeMap;

use jackpfq_core::jack::{
    binom_down_formula, binom_general, binom_up, jack_eval_ones, jack_in_form, jack_j, pieri_phi, JackForm,
};
use jackpfq_core::operators::{
    apply_ad_power, apply_box, apply_e, apply_raising_r, d_r_eigenvalue, f_eigenvalue_brute, f_generating, g_eigenvalue,
    g_eigenvalue_brute, g_eigenvalue_eh, g_eigenvalue_product, h_eigenvalue, h_eigenvalue_brute, h_generating,
    m_eigenvalue, m_eigenvalue_brute, mul_e1, n_eigenvalue, n_eigenvalue_brute, sekiguchi_eigenvalue,
};
use jackpfq_core::partitions::{alpha_pochhammer, covered_with_rows, covers_with_rows, hooks, partitions_up_to, reverse_lex_order, rho, rho_skew};
use jackpfq_core::poly::Poly;
use jackpfq_core::series::{
    build_2f1hat, build_pfq, build_pfq_diag, cauchy_product, exp_p1, gauss_coefficient, is_jack_diagonal,
    one_f_zero_product,
};
use jackpfq_core::solver::{
    residual_hat, residual_theorem_a, residual_theorem_b, residual_theorem_c, solve_hat, solve_theorem_a,
    solve_theorem_b, solve_theorem_c, stability_counterexample, HatSolver, Mode, Variant,
};
use jackpfq_core::sympoly::{hall_inner, schur};
use jackpfq_core::{BiPoly, OpExpr, ParamSet, Partition, Rational, Residual, SliceKey, SymPoly};
use serde::Serialize;

use crate::sampling::Sampler;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Level {
    Smoke,
    Full,
}

/// Size limits for one suite level.
#[derive(Clone, Copy, Debug)]
pub struct Ranges {
    pub n_max: usize,
    pub maxdeg: u32,
    pub draws: usize,
    /// Degree bound for the per-partition identity checks.
    pub part_deg: u32,
}

impl Level {
    pub fn ranges(self) -> Ranges {
        match self {
            Level::Smoke => Ranges { n_max: 2, maxdeg: 3, draws: 1, part_deg: 3 },
            Level::Full => Ranges { n_max: 3, maxdeg: 5, draws: 3, part_deg: 5 },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub id: String,
    pub criterion: u32,
    pub passed: bool,
    pub detail: String,
}

pub const CRITERIA: [(u32, &str); 9] = [
    (1, "two-alphabet lowering/raising residual"),
    (2, "lowering equation with stability: elimination solver and residuals"),
    (3, "raising equation: solver, residuals, Euler operator at n = 1"),
    (4, "non-uniqueness without the stability condition"),
    (5, "eigenvalue generating functions against direct sums"),
    (6, "operator actions on Jack polynomials and the Pieri rule"),
    (7, "special series in closed form"),
    (8, "Jack polynomial consistency"),
    (9, "two-parameter series: both solvers and residuals"),
];

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($arg:tt)*) => {
        if !$cond {
            return Err(format!($($arg)*));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn run_check(out: &mut Vec<Check>, criterion: u32, id: String, f: impl FnOnce() -> Outcome) {
    let (passed, detail) = match f() {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    out.push(Check { id: format!("c{criterion}/{id}"), criterion, passed, detail });
}

fn list(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("[{}]", parts.join(","))
}

pub fn describe(p: &ParamSet) -> String {
    format!("alpha={} a={} b={} n={}", p.alpha, list(&p.upper), list(&p.lower), p.n)
}

fn residual_ok(r: &Residual, what: &str) -> Outcome {
    if r.all_complete_zero() {
        return Ok(format!("{what}: {} complete slices zero", r.complete_count()));
    }
    match r.first_failure() {
        Some((key, slice)) => Err(format!("{what}: slice {key:?} has {} nonzero terms, max |c| = {}", slice.terms.len(), r.max_abs())),
        None => Err(format!("{what}: no complete slices")),
    }
}

fn seed_for(seed: u64, id: &str) -> Sampler {
    Sampler::derived(seed, id)
}

/// Runs every check of one criterion.
pub fn run_criterion(criterion: u32, level: Level, seed: u64) -> Vec<Check> {
    let r = level.ranges();
    let mut out = Vec::new();
    match criterion {
        1 => criterion_1(&mut out, level, r, seed),
        2 => criterion_2(&mut out, r, seed),
        3 => criterion_3(&mut out, level, r, seed),
        4 => criterion_4(&mut out, level),
        5 => criterion_5(&mut out, r, seed),
        6 => criterion_6(&mut out, r, seed),
        7 => criterion_7(&mut out, level, r, seed),
        8 => criterion_8(&mut out, r, seed),
        9 => criterion_9(&mut out, level, r, seed),
        _ => {}
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    out
}

fn criterion_1(out: &mut Vec<Check>, level: Level, r: Ranges, seed: u64) {
    let maxdeg = if level == Level::Full { 4 } else { 3 };
    for (p, q) in [(0, 0), (1, 0), (0, 1), (1, 1), (2, 1), (3, 2), (2, 2)] {
        for draw in 0..r.draws {
            let id = format!("p={p},q={q}/draw{draw}");
            let mut s = seed_for(seed, &format!("c1/{id}"));
            run_check(out, 1, id, || {
                let (params, series) = s
                    .retry(|s| {
                        let params = s.params(p, q, 2);
                        let series = build_pfq_diag(&params, maxdeg)?;
                        Ok((params, series))
                    })
                    .map_err(err)?;
                let solved = solve_theorem_a(&params, maxdeg).map_err(err)?;
                ensure!(solved.coeffs == series.coeffs, "{}: recursion differs from (a)/(b)", describe(&params));
                let mut notes = vec![describe(&params)];
                for variant in [Variant::Standard, Variant::Mirrored] {
                    let res = residual_theorem_a(&series, variant).map_err(err)?;
                    notes.push(residual_ok(&res, &format!("{variant:?}")).map_err(|e| format!("{}: {e}", describe(&params)))?);
                }
                let expanded = series.to_bipoly().map_err(err)?;
                ensure!(is_jack_diagonal(&expanded, &params.alpha).map_err(err)?, "expansion is not Jack-diagonal");
                Ok(notes.join("; "))
            });
        }
    }
}

fn criterion_2(out: &mut Vec<Check>, r: Ranges, seed: u64) {
    let n = r.n_max;
    for p in 0..=3 {
        for q in 0..=3 {
            for draw in 0..r.draws {
                let id = format!("p={p},q={q}/draw{draw}");
                let mut s = seed_for(seed, &format!("c2/{id}"));
                run_check(out, 2, id, || {
                    let (params, sol) = s
                        .retry(|s| {
                            let params = s.params(p, q, n);
                            build_pfq(&params, r.maxdeg)?;
                            let sol = solve_theorem_b(&params, r.maxdeg)?;
                            Ok((params, sol))
                        })
                        .map_err(err)?;
                    let oracle = build_pfq(&params, r.maxdeg).map_err(err)?;
                    ensure!(sol.series.coeffs == oracle.coeffs, "{}: elimination differs from (a)/(b)", describe(&params));
                    let dets: Vec<&Rational> = sol.steps.iter().filter_map(|st| st.determinant.as_ref()).collect();
                    ensure!(dets.iter().all(|d| !d.is_zero()), "zero determinant");
                    for m in 1..=n {
                        for mode in [Mode::Differential, Mode::Transport] {
                            let res = residual_theorem_b(&oracle, m, mode).map_err(err)?;
                            residual_ok(&res, &format!("m={m} {mode:?}")).map_err(|e| format!("{}: {e}", describe(&params)))?;
                        }
                    }
                    Ok(format!("{}; {} steps, {} 2x2 eliminations, residuals zero for m=1..={n}", describe(&params), sol.steps.len(), dets.len()))
                });
            }
        }
    }
}

/// `z·(z(1−z)∂² + (c−(a+b+1)z)∂ − ab)` on `x^k` in one variable, as `(coef of x^k, coef of x^{k+1})`.
fn z_euler_on_power(a: &Rational, b: &Rational, c: &Rational, k: u32) -> (Rational, Rational) {
    let kk = Rational::from(k);
    let km1 = &kk - Rational::one();
    let same = &kk * &km1 + c * &kk;
    let up = -(&kk * &km1 + (a + b + Rational::one()) * &kk + a * b);
    (same, up)
}

fn criterion_3(out: &mut Vec<Check>, level: Level, r: Ranges, seed: u64) {
    let n = r.n_max;
    for p in 0..=3 {
        for q in 0..=3 {
            for draw in 0..r.draws {
                let id = format!("p={p},q={q}/draw{draw}");
                let mut s = seed_for(seed, &format!("c3/{id}"));
                run_check(out, 3, id, || {
                    let (params, solved) = s
                        .retry(|s| {
                            let params = s.params(p, q, n);
                            build_pfq(&params, r.maxdeg)?;
                            let solved = solve_theorem_c(&params, r.maxdeg)?;
                            Ok((params, solved))
                        })
                        .map_err(err)?;
                    let oracle = build_pfq(&params, r.maxdeg).map_err(err)?;
                    ensure!(solved.coeffs == oracle.coeffs, "{}: recursion differs from (a)/(b)", describe(&params));
                    let mut notes = vec![describe(&params)];
                    for mode in [Mode::Differential, Mode::Transport] {
                        let res = residual_theorem_c(&oracle, mode).map_err(err)?;
                        notes.push(residual_ok(&res, &format!("{mode:?}")).map_err(|e| format!("{}: {e}", describe(&params)))?);
                    }
                    Ok(notes.join("; "))
                });
            }
        }
    }
    let top = if level == Level::Full { 6 } else { 4 };
    for draw in 0..r.draws {
        let id = format!("euler/draw{draw}");
        let mut s = seed_for(seed, &format!("c3/{id}"));
        run_check(out, 3, id, || {
            let params = s
                .retry(|s| {
                    let params = s.params(2, 1, 1);
                    build_pfq(&params, top + 1)?;
                    Ok(params)
                })
                .map_err(err)?;
            let (a, b, c) = (&params.upper[0], &params.upper[1], &params.lower[0]);
            // (N − R) equals z times the Euler operator on every power x^k
            for k in 0..=top + 1 {
                let xk = SymPoly::monomial(Partition::row(k), 1);
                let nval = n_eigenvalue(&Partition::row(k), &params).map_err(err)?;
                let image = xk.scale(&nval).sub(&apply_raising_r(&params, &xk).map_err(err)?).map_err(err)?;
                let (same, up) = z_euler_on_power(a, b, c, k);
                let want = SymPoly::from_terms(1, [(Partition::row(k), same), (Partition::row(k + 1), up)]).map_err(err)?;
                ensure!(image == want, "{}: (N - R) x^{k} differs from z times the Euler operator", describe(&params));
            }
            let series = build_pfq(&params, top + 1).map_err(err)?;
            let f = series.to_sympoly(1).map_err(err)?;
            for k in 0..=top {
                let fk = gauss_coefficient(a, b, c, k).map_err(err)?;
                ensure!(f.coeff(&Partition::row(k)) == fk, "series coefficient {k} is not the Gauss coefficient");
            }
            // Euler: z(1−z)F'' + (c − (a+b+1)z)F' − abF, coefficient of z^k
            let coef = |k: u32| f.coeff(&Partition::row(k));
            for k in 0..=top {
                let kk = Rational::from(k);
                let k1 = &kk + Rational::one();
                let v = &k1 * &kk * coef(k + 1) - &kk * (&kk - Rational::one()) * coef(k) + c * &k1 * coef(k + 1)
                    - (a + b + Rational::one()) * &kk * coef(k)
                    - a * b * coef(k);
                ensure!(v.is_zero(), "{}: Euler operator leaves {v} at degree {k}", describe(&params));
            }
            let res = residual_theorem_c(&series, Mode::Differential).map_err(err)?;
            let note = residual_ok(&res, "residual")?;
            Ok(format!("{}; Euler operator annihilates the series to degree {top}; {note}", describe(&params)))
        });
    }
}

fn criterion_4(out: &mut Vec<Check>, level: Level) {
    let maxdeg = if level == Level::Full { 6 } else { 4 };
    run_check(out, 4, "counterexample".into(), || {
        let rep = stability_counterexample(&[Rational::one(), Rational::one()], maxdeg).map_err(err)?;
        ensure!(rep.passes_two_variable, "G fails the two-variable equation");
        ensure!(rep.fails_one_variable, "G passes the one-variable equation");
        let deg1 = rep.one_variable.slice(&SliceKey::Degree(1)).ok_or("missing degree-1 slice")?;
        ensure!(
            deg1.terms == vec![(vec![Partition::row(1)], Rational::integer(2))],
            "one-variable residual at degree 1 is {:?}, expected 2x",
            deg1.terms
        );
        ensure!(rep.differs_from_exp_at == Some(2), "G first differs from exp(p1) at {:?}", rep.differs_from_exp_at);
        let want = SymPoly::from_terms(2, [(Partition::row(2), Rational::one()), (Partition::column(2), Rational::integer(-2))])
            .map_err(err)?;
        let diff = rep.g.homogeneous(2).sub(&exp_p1(2, 2).homogeneous(2)).map_err(err)?;
        ensure!(diff == want, "degree-2 difference from exp(p1) is {diff:?}");
        Ok(format!("two-variable residual zero on {} slices; one-variable residual 2x at degree 1", rep.two_variable.complete_count()))
    });
    run_check(out, 4, "trivial-h".into(), || {
        let rep = stability_counterexample(&[Rational::one()], maxdeg).map_err(err)?;
        ensure!(rep.passes_two_variable && !rep.fails_one_variable, "H = 1 should pass both equations");
        ensure!(rep.differs_from_exp_at.is_none(), "H = 1 should reproduce exp(p1)");
        Ok("H = 1 reproduces exp(p1) and passes both equations".into())
    });
}

fn criterion_5(out: &mut Vec<Check>, r: Ranges, seed: u64) {
    for n in 1..=r.n_max {
        for draw in 0..r.draws {
            let id = format!("n={n}/draw{draw}");
            let mut s = seed_for(seed, &format!("c5/{id}"));
            run_check(out, 5, id, || {
                let alpha = s.alpha();
                let ts: Vec<Rational> = (0..3).map(|_| s.param()).collect();
                let mut count = 0usize;
                for mu in partitions_up_to(r.part_deg, n) {
                    let ctx = format!("alpha={alpha} n={n} {mu}");
                    let size = Rational::from(mu.size());
                    let nn = Rational::from(n);
                    let fgen = f_generating(&mu, n, &alpha, 4).map_err(err)?;
                    let hgen = h_generating(&mu, n, &alpha, 4).map_err(err)?;
                    for rr in 0..=4usize {
                        let g = g_eigenvalue(&mu, rr, n, &alpha).map_err(err)?;
                        ensure!(g == g_eigenvalue_brute(&mu, rr, n, &alpha).map_err(err)?, "{ctx}: g_{rr} series vs direct sum");
                        ensure!(g == g_eigenvalue_product(&mu, rr, n, &alpha).map_err(err)?, "{ctx}: g_{rr} product form");
                        ensure!(g == g_eigenvalue_eh(&mu, rr, n, &alpha).map_err(err)?, "{ctx}: g_{rr} e/h form");
                        ensure!(fgen.coeff(rr) == f_eigenvalue_brute(&mu, rr, n, &alpha).map_err(err)?, "{ctx}: f_{rr}");
                        let h = h_eigenvalue_brute(&mu, rr, &alpha).map_err(err)?;
                        ensure!(hgen.coeff(rr) == h, "{ctx}: H_{rr} closed form");
                        ensure!(h_eigenvalue(&mu, rr, n, &alpha).map_err(err)? == h, "{ctx}: H_{rr} recurrence");
                        // α f_{r+1} + n f_r = g_r
                        if rr < 4 {
                            ensure!(&alpha * fgen.coeff(rr + 1) + &nn * fgen.coeff(rr) == g, "{ctx}: g_{rr} from f");
                        }
                        count += 1;
                    }
                    ensure!(g_eigenvalue(&mu, 0, n, &alpha).map_err(err)? == nn, "{ctx}: g_0 = n");
                    ensure!(g_eigenvalue(&mu, 1, n, &alpha).map_err(err)? == size, "{ctx}: g_1 = |mu|");
                    let g2 = (Rational::one() + (&nn - Rational::one()) / &alpha) * &size + rho(&mu, &alpha) * Rational::integer(2);
                    ensure!(g_eigenvalue(&mu, 2, n, &alpha).map_err(err)? == g2, "{ctx}: g_2");
                    ensure!(hgen.coeff(0) == size, "{ctx}: H_0 = |lambda|");
                    ensure!(hgen.coeff(1) == rho(&mu, &alpha) * Rational::integer(2), "{ctx}: H_1 = 2 rho");
                    if n > mu.len() {
                        ensure!(fgen.coeff(0).is_one(), "{ctx}: f_0 = 1 when n > length");
                    }
                    for t in &ts {
                        let total: Rational = (0..=n).map(|k| t.pow((n - k) as i32) * d_r_eigenvalue(&mu, k, n, &alpha)).sum();
                        ensure!(sekiguchi_eigenvalue(&mu, t, n, &alpha) == total, "{ctx}: D(t) expansion at t={t}");
                    }
                    for (p, q) in [(1, 1), (2, 1), (3, 2)] {
                        let params = ParamSet::new(alpha.clone(), (0..p).map(|_| s.param()).collect(), (0..q).map(|_| s.param()).collect(), n)
                            .map_err(err)?;
                        ensure!(
                            m_eigenvalue(&mu, &params).map_err(err)? == m_eigenvalue_brute(&mu, &params).map_err(err)?,
                            "{ctx}: M eigenvalue, {}",
                            describe(&params)
                        );
                        ensure!(
                            n_eigenvalue(&mu, &params).map_err(err)? == n_eigenvalue_brute(&mu, &params).map_err(err)?,
                            "{ctx}: N eigenvalue, {}",
                            describe(&params)
                        );
                    }
                }
                Ok(format!("alpha={alpha}: {count} (partition, r) cases agree"))
            });
        }
    }
}

fn omega(l: &Partition, n: usize, alpha: &Rational) -> std::result::Result<SymPoly, String> {
    jack_in_form(l, n, alpha, JackForm::Omega).map_err(err)
}

fn jstar(l: &Partition, n: usize, alpha: &Rational) -> std::result::Result<SymPoly, String> {
    jack_in_form(l, n, alpha, JackForm::Jstar).map_err(err)
}

fn combo(n: usize, terms: impl IntoIterator<Item = (SymPoly, Rational)>) -> std::result::Result<SymPoly, String> {
    let mut acc = SymPoly::zero(n);
    for (f, c) in terms {
        acc.add_assign_scaled(&f, &c).map_err(err)?;
    }
    Ok(acc)
}

fn contains(l: &Partition, m: &Partition) -> bool {
    m.len() <= l.len() && m.parts().iter().zip(l.parts()).all(|(a, b)| a <= b)
}

fn criterion_6(out: &mut Vec<Check>, r: Ranges, seed: u64) {
    let box_op = OpExpr::Box;
    let neg_box = OpExpr::neg(OpExpr::Box);
    for n in 1..=r.n_max {
        for draw in 0..r.draws {
            let id = format!("n={n}/draw{draw}");
            let mut s = seed_for(seed, &format!("c6/{id}"));
            let (box_op, neg_box) = (box_op.clone(), neg_box.clone());
            run_check(out, 6, id, || {
                let alpha = s.alpha();
                let ts = [s.param(), s.param()];
                let d = r.part_deg;
                let parts = partitions_up_to(d, n);
                for lambda in &parts {
                    let ctx = format!("alpha={alpha} n={n} {lambda}");
                    let j = jack_j(lambda, n, &alpha).map_err(err)?;
                    let om = omega(lambda, n, &alpha)?;
                    let js = jstar(lambda, n, &alpha)?;
                    ensure!(apply_e(2, &j).map_err(err)? == j.scale(&Rational::from(lambda.size())), "{ctx}: E2 eigenvalue");
                    ensure!(apply_box(&j, &alpha) == j.scale(&rho(lambda, &alpha)), "{ctx}: box eigenvalue");
                    // lowering actions on the unital form
                    let covered = covered_with_rows(lambda);
                    for rr in 0..=3u32 {
                        let lhs = apply_ad_power(&neg_box, &OpExpr::E(1), rr, &om, &alpha).map_err(err)?;
                        let mut terms = Vec::new();
                        for (_, mu) in &covered {
                            let w = rho_skew(lambda, mu, &alpha).map_err(err)?.pow(rr as i32) * binom_up(lambda, mu, &alpha).map_err(err)?;
                            terms.push((omega(mu, n, &alpha)?, w));
                        }
                        ensure!(lhs == combo(n, terms)?, "{ctx}: ad(-box)^{rr}(E1) on the unital form");
                    }
                    // raising actions on the dual form
                    let covers = covers_with_rows(lambda, n);
                    for rr in 0..=3u32 {
                        let lhs = apply_ad_power(&box_op, &OpExpr::MulE1, rr, &js, &alpha).map_err(err)?;
                        let mut terms = Vec::new();
                        for (_, nu) in &covers {
                            let w = &alpha * rho_skew(nu, lambda, &alpha).map_err(err)?.pow(rr as i32) * binom_up(nu, lambda, &alpha).map_err(err)?;
                            terms.push((jstar(nu, n, &alpha)?, w));
                        }
                        ensure!(lhs == combo(n, terms)?, "{ctx}: ad(box)^{rr}(e1) on the dual form");
                    }
                    ensure!(
                        mul_e1(&js) == apply_ad_power(&box_op, &OpExpr::MulE1, 0, &js, &alpha).map_err(err)?,
                        "{ctx}: e1 action"
                    );
                    // translation x -> x + t
                    for t in &ts {
                        let shifted = Poly::from_sym(&om).translate(t).to_sym();
                        let mut terms = Vec::new();
                        for mu in parts.iter().filter(|m| m.size() <= lambda.size() && contains(lambda, m)) {
                            let w = t.pow((lambda.size() - mu.size()) as i32) * binom_general(lambda, mu, &alpha).map_err(err)?;
                            terms.push((omega(mu, n, &alpha)?, w));
                        }
                        ensure!(shifted == combo(n, terms)?, "{ctx}: translation by t={t}");
                        // exp(t e1) on the dual form, to degree d
                        let mut lhs = SymPoly::zero(n);
                        let mut power = js.clone();
                        for k in 0..=(d - lambda.size()) {
                            lhs.add_assign_scaled(&power, &(t.pow(k as i32) / Rational::factorial(k))).map_err(err)?;
                            power = mul_e1(&power);
                        }
                        let mut terms = Vec::new();
                        for nu in parts.iter().filter(|m| contains(m, lambda)) {
                            let gap = (nu.size() - lambda.size()) as i32;
                            let w = (t * &alpha).pow(gap) * binom_general(nu, lambda, &alpha).map_err(err)?;
                            terms.push((jstar(nu, n, &alpha)?, w));
                        }
                        ensure!(lhs == combo(n, terms)?, "{ctx}: exp(t e1) at t={t}");
                    }
                    // Pieri coefficients and the downward binomial formula
                    for (_, nu) in &covers {
                        let closed = pieri_phi(nu, lambda, &alpha, n).map_err(err)?;
                        let via = &alpha * binom_up(nu, lambda, &alpha).map_err(err)? * hooks(lambda, &alpha).j / hooks(nu, &alpha).j;
                        ensure!(closed == via, "{ctx}: Pieri coefficient for {nu}");
                        ensure!(
                            binom_down_formula(nu, lambda, &alpha, n).map_err(err)? == binom_up(nu, lambda, &alpha).map_err(err)?,
                            "{ctx}: binomial of {nu} over {lambda} from shifted parts"
                        );
                    }
                    let e1j = mul_e1(&j);
                    let mut terms = Vec::new();
                    for (_, nu) in &covers {
                        terms.push((jack_j(nu, n, &alpha).map_err(err)?, pieri_phi(nu, lambda, &alpha, n).map_err(err)?));
                    }
                    ensure!(e1j == combo(n, terms)?, "{ctx}: Pieri expansion of e1 J");
                }
                Ok(format!("alpha={alpha} t={},{}: {} partitions, r <= 3", ts[0], ts[1], parts.len()))
            });
        }
    }
}

fn criterion_7(out: &mut Vec<Check>, level: Level, r: Ranges, seed: u64) {
    let (d0, d1, dc) = if level == Level::Full { (6, 5, 3) } else { (4, 3, 2) };
    for n in 1..=r.n_max {
        let id = format!("0F0/n={n}");
        let mut s = seed_for(seed, &format!("c7/{id}"));
        run_check(out, 7, id, || {
            let params = s.params(0, 0, n);
            let f = build_pfq(&params, d0).map_err(err)?.to_sympoly(n).map_err(err)?;
            ensure!(f == exp_p1(n, d0), "alpha={}: 0F0 differs from exp(p1)", params.alpha);
            Ok(format!("alpha={} degree {d0}", params.alpha))
        });
        for draw in 0..r.draws {
            let id = format!("1F0/n={n}/draw{draw}");
            let mut s = seed_for(seed, &format!("c7/{id}"));
            run_check(out, 7, id, || {
                let params = s.params(1, 0, n);
                let f = build_pfq(&params, d1).map_err(err)?.to_sympoly(n).map_err(err)?;
                ensure!(f == one_f_zero_product(&params.upper[0], n, d1), "{}: 1F0 differs from the product", describe(&params));
                Ok(format!("{} degree {d1}", describe(&params)))
            });
        }
    }
    for draw in 0..r.draws {
        let id = format!("cauchy/draw{draw}");
        let mut s = seed_for(seed, &format!("c7/{id}"));
        run_check(out, 7, id, || {
            let alpha = s.alpha();
            let n = 2;
            let params = ParamSet::new(alpha.clone(), vec![Rational::from(n) / &alpha], vec![], n).map_err(err)?;
            let bi = build_pfq_diag(&params, dc).map_err(err)?.to_bipoly().map_err(err)?;
            ensure!(bi == cauchy_product(&alpha.recip().map_err(err)?, n, dc), "alpha={alpha}: Cauchy product differs");
            ensure!(is_jack_diagonal(&bi, &alpha).map_err(err)?, "Cauchy kernel not Jack-diagonal");
            let off = BiPoly::tensor(&jack_j(&Partition::row(2), n, &alpha).map_err(err)?, &jack_j(&Partition::column(2), n, &alpha).map_err(err)?)
                .map_err(err)?;
            ensure!(!is_jack_diagonal(&off, &alpha).map_err(err)?, "off-diagonal product reported diagonal");
            Ok(format!("alpha={alpha} bidegree ({dc},{dc})"))
        });
        let id = format!("two-alphabet/draw{draw}");
        let mut s = seed_for(seed, &format!("c7/{id}"));
        run_check(out, 7, id, || {
            let d = r.maxdeg.min(4);
            let params = s.retry(|s| {
                let p = s.params(2, 1, 2);
                build_pfq(&p, d)?;
                Ok(p)
            })
            .map_err(err)?;
            let bi = build_pfq_diag(&params, d).map_err(err)?.to_bipoly().map_err(err)?;
            let one = build_pfq(&params, d).map_err(err)?;
            ensure!(bi.eval_y_ones() == one.to_sympoly(2).map_err(err)?, "{}: y = 1 specialization", describe(&params));
            ensure!(bi.swap() == bi, "{}: x/y symmetry", describe(&params));
            for nn in 2..=r.n_max {
                let big = one.to_sympoly(nn).map_err(err)?;
                for m in 1..nn {
                    ensure!(big.restrict(m) == one.to_sympoly(m).map_err(err)?, "{}: restriction {nn} -> {m}", describe(&params));
                }
            }
            Ok(describe(&params))
        });
    }
}

fn criterion_8(out: &mut Vec<Check>, r: Ranges, seed: u64) {
    for draw in 0..r.draws {
        let id = format!("orthogonality/draw{draw}");
        let mut s = seed_for(seed, &format!("c8/{id}"));
        run_check(out, 8, id, || {
            let alpha = s.alpha();
            for d in 0..=r.part_deg {
                let nv = (d as usize).max(1);
                let parts = reverse_lex_order(d, nv);
                let js: Vec<SymPoly> = parts.iter().map(|l| jack_j(l, nv, &alpha)).collect::<Result<_, _>>().map_err(err)?;
                for (i, li) in parts.iter().enumerate() {
                    for (k, lk) in parts.iter().enumerate() {
                        let ip = hall_inner(&js[i], &js[k], &alpha).map_err(err)?;
                        let want = if i == k { hooks(li, &alpha).j } else { Rational::zero() };
                        ensure!(ip == want, "alpha={alpha}: <J_{li}, J_{lk}> = {ip}, expected {want}");
                    }
                    ensure!(js[i].coeff(&Partition::column(d)) == Rational::factorial(d), "alpha={alpha}: {li} normalization");
                }
            }
            Ok(format!("alpha={alpha} degree <= {}", r.part_deg))
        });
        let id = format!("evaluation-stability/draw{draw}");
        let mut s = seed_for(seed, &format!("c8/{id}"));
        run_check(out, 8, id, || {
            let alpha = s.alpha();
            let nmax = r.part_deg as usize;
            for lambda in partitions_up_to(r.part_deg, nmax) {
                for n in lambda.len().max(1)..=nmax {
                    let j = jack_j(&lambda, n, &alpha).map_err(err)?;
                    let ones = alpha.pow(lambda.size() as i32) * alpha_pochhammer(&(Rational::from(n) / &alpha), &lambda, &alpha);
                    ensure!(j.eval_ones() == ones, "alpha={alpha}: J_{lambda}(1_{n})");
                    ensure!(jack_eval_ones(&lambda, n, &alpha) == ones, "alpha={alpha}: closed J_{lambda}(1_{n})");
                    for m in lambda.len().max(1)..n {
                        ensure!(j.restrict(m) == jack_j(&lambda, m, &alpha).map_err(err)?, "alpha={alpha}: J_{lambda} restriction {n} -> {m}");
                    }
                }
            }
            Ok(format!("alpha={alpha} n <= {nmax}"))
        });
    }
    run_check(out, 8, "schur".into(), || {
        let one = Rational::one();
        for lambda in partitions_up_to(r.part_deg, r.part_deg as usize) {
            let n = lambda.size().max(1) as usize;
            let j = jack_j(&lambda, n, &one).map_err(err)?;
            let sch = schur(&lambda, n).map_err(err)?.scale(&hooks(&lambda, &one).c);
            ensure!(j == sch, "J_{lambda} at alpha = 1 is not the hook-length multiple of s_{lambda}");
        }
        Ok(format!("degree <= {}", r.part_deg))
    });
}

fn criterion_9(out: &mut Vec<Check>, level: Level, r: Ranges, seed: u64) {
    let maxdeg = if level == Level::Full { 4 } else { 3 };
    for draw in 0..r.draws {
        let id = format!("n=2/draw{draw}");
        let mut s = seed_for(seed, &format!("c9/{id}"));
        run_check(out, 9, id, || {
            let series = s
                .retry(|s| {
                    let (a, b, c, alpha) = (s.param(), s.param(), s.param(), s.alpha());
                    build_2f1hat(a, b, c, 2, alpha, maxdeg)
                })
                .map_err(err)?;
            let params = &series.params;
            for kind in [HatSolver::Bhat, HatSolver::Chat] {
                let solved = solve_hat(kind, params, maxdeg).map_err(err)?;
                ensure!(solved.coeffs == series.coeffs, "{}: {kind:?} solver differs", describe(params));
            }
            let mut notes = vec![describe(params)];
            for m in 1..=2 {
                let res = residual_hat(HatSolver::Bhat, &series, m).map_err(err)?;
                notes.push(residual_ok(&res, &format!("Bhat m={m}")).map_err(|e| format!("{}: {e}", describe(params)))?);
            }
            let res = residual_hat(HatSolver::Chat, &series, 2).map_err(err)?;
            notes.push(residual_ok(&res, "Chat").map_err(|e| format!("{}: {e}", describe(params)))?);
            Ok(notes.join("; "))
        });
        let id = format!("n=1/draw{draw}");
        let mut s = seed_for(seed, &format!("c9/{id}"));
        run_check(out, 9, id, || {
            let series = s
                .retry(|s| {
                    let (a, b, c, alpha) = (s.param(), s.param(), s.param(), s.alpha());
                    build_2f1hat(a, b, c, 1, alpha, maxdeg + 2)
                })
                .map_err(err)?;
            let p = &series.params;
            let f = series.to_sympoly(1).map_err(err)?;
            for k in 0..=maxdeg + 2 {
                let want = gauss_coefficient(&p.upper[0], &p.upper[1], &p.lower[0], k).map_err(err)?;
                ensure!(f.coeff(&Partition::row(k)) == want, "{}: coefficient {k} differs from Gauss", describe(p));
            }
            let res = residual_hat(HatSolver::Chat, &series, 1).map_err(err)?;
            residual_ok(&res, "Chat n=1").map_err(|e| format!("{}: {e}", describe(p)))?;
            Ok(format!("{}: matches Gauss to degree {}", describe(p), maxdeg + 2))
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub schema: u32,
    pub command: &'static str,
    pub level: Level,
    pub seed: u64,
    pub fault: Option<String>,
    pub total: usize,
    pub failed: usize,
    pub first_failure: Option<Check>,
    pub criteria: BTreeMap<u32, CriterionSummary>,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionSummary {
    pub title: &'static str,
    pub checks: usize,
    pub failed: usize,
}

pub fn run_suite(level: Level, seed: u64, fault: Option<String>) -> SuiteReport {
    let mut checks = Vec::new();
    let mut criteria = BTreeMap::new();
    for (k, title) in CRITERIA {
        let part = run_criterion(k, level, seed);
        let failed = part.iter().filter(|c| !c.passed).count();
        criteria.insert(k, CriterionSummary { title, checks: part.len(), failed });
        checks.extend(part);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    let first_failure = checks.iter().find(|c| !c.passed).cloned();
    SuiteReport { schema: 1, command: "suite", level, seed, fault, total: checks.len(), failed, first_failure, criteria, checks }
}
