//! Symmetric polynomials in `n` variables stored in the monomial-orbit basis `m_λ`.

use std::collections::BTreeMap;

use serde::ser::SerializeStruct;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::partitions::{reverse_lex_order, Partition};
use crate::poly::{distinct_permutations, Poly};
use crate::scalar::Rational;

/// `Σ_λ c_λ m_λ(x_1..x_n)` with every key of length at most `n` and no zero coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymPoly {
    n: usize,
    terms: BTreeMap<Partition, Rational>,
}

fn check_same_n(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::InvalidInput(format!("variable counts differ: {a} vs {b}")));
    }
    Ok(())
}

fn add_into<K: Ord>(map: &mut BTreeMap<K, Rational>, key: K, coef: Rational) {
    if coef.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Occupied(mut e) => {
            *e.get_mut() += coef;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(coef);
        }
    }
}

/// Number of distinct monomials in the orbit `m_λ(x_1..x_n)`.
pub fn orbit_size(lambda: &Partition, n: usize) -> Rational {
    if lambda.len() > n {
        return Rational::zero();
    }
    let mut denom = Rational::factorial((n - lambda.len()) as u32);
    for (_, mult) in multiplicities(lambda) {
        denom *= Rational::factorial(mult);
    }
    Rational::factorial(n as u32) / denom
}

/// Part sizes with their multiplicities, largest part first.
pub fn multiplicities(lambda: &Partition) -> Vec<(u32, u32)> {
    let mut out: Vec<(u32, u32)> = Vec::new();
    for &p in lambda.parts() {
        match out.last_mut() {
            Some((q, m)) if *q == p => *m += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

/// `z_λ = Π_r r^{m_r} m_r!`.
pub fn z_lambda(lambda: &Partition) -> Rational {
    multiplicities(lambda)
        .into_iter()
        .map(|(r, m)| Rational::from(r).pow(m as i32) * Rational::factorial(m))
        .product()
}

impl SymPoly {
    pub fn zero(n: usize) -> Self {
        SymPoly { n, terms: BTreeMap::new() }
    }

    pub fn constant(n: usize, c: Rational) -> Self {
        let mut out = SymPoly::zero(n);
        out.add_term(Partition::empty(), c);
        out
    }

    /// `m_λ`; panics if `ℓ(λ) > n`. See [`basis_m`] for the checked form.
    pub fn monomial(lambda: Partition, n: usize) -> Self {
        assert!(lambda.len() <= n, "{lambda} has more than {n} parts");
        let mut out = SymPoly::zero(n);
        out.add_term(lambda, Rational::one());
        out
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Partition, Rational)>) -> Result<Self> {
        let mut out = SymPoly::zero(n);
        for (lambda, c) in terms {
            if lambda.len() > n {
                return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
            }
            out.add_term(lambda, c);
        }
        Ok(out)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Partition, Rational> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Partition, Rational> {
        self.terms
    }

    pub fn coeff(&self, lambda: &Partition) -> Rational {
        self.terms.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coef · m_λ`; keys longer than `n` vanish in `n` variables and are dropped.
    pub fn add_term(&mut self, lambda: Partition, coef: Rational) {
        if lambda.len() > self.n {
            return;
        }
        add_into(&mut self.terms, lambda, coef);
    }

    /// Highest degree present, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(Partition::size).max()
    }

    pub fn scale(&self, c: &Rational) -> SymPoly {
        if c.is_zero() {
            return SymPoly::zero(self.n);
        }
        SymPoly { n: self.n, terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect() }
    }

    pub fn add_assign_scaled(&mut self, other: &SymPoly, c: &Rational) -> Result<()> {
        check_same_n(self.n, other.n)?;
        if c.is_zero() {
            return Ok(());
        }
        for (k, v) in &other.terms {
            add_into(&mut self.terms, k.clone(), v * c);
        }
        Ok(())
    }

    pub fn add(&self, other: &SymPoly) -> Result<SymPoly> {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one())?;
        Ok(out)
    }

    pub fn sub(&self, other: &SymPoly) -> Result<SymPoly> {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one())?;
        Ok(out)
    }

    /// Product, re-expressed in the orbit basis.
    pub fn mul(&self, other: &SymPoly) -> Result<SymPoly> {
        check_same_n(self.n, other.n)?;
        let expanded = Poly::from_sym(self);
        let mut out = SymPoly::zero(self.n);
        for (mu, b) in &other.terms {
            let orbit = distinct_permutations(&mu.padded(self.n));
            for (e, a) in expanded.terms() {
                let ab = a * b;
                for s in &orbit {
                    let sum: Vec<u32> = e.iter().zip(s).map(|(x, y)| x + y).collect();
                    if sum.windows(2).all(|w| w[0] >= w[1]) {
                        out.add_term(Partition::from_exponents(&sum), ab.clone());
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> SymPoly {
        let mut acc = SymPoly::constant(self.n, Rational::one());
        for _ in 0..k {
            acc = acc.mul(self).expect("same n");
        }
        acc
    }

    /// Degree-`d` component.
    pub fn homogeneous(&self, d: u32) -> SymPoly {
        SymPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(k, _)| k.size() == d).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Drops everything above degree `d`.
    pub fn truncate(&self, d: u32) -> SymPoly {
        SymPoly {
            n: self.n,
            terms: self.terms.iter().filter(|(k, _)| k.size() <= d).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    /// Sets `x_{m+1} = ... = x_n = 0` (drops keys longer than `m`) and views the result in
    /// `m` variables. With `m ≥ n` this only re-labels the variable count.
    pub fn restrict(&self, m: usize) -> SymPoly {
        SymPoly {
            n: m,
            terms: self.terms.iter().filter(|(k, _)| k.len() <= m).map(|(k, v)| (k.clone(), v.clone())).collect(),
        }
    }

    pub fn eval_ones(&self) -> Rational {
        self.terms.iter().map(|(k, v)| v * orbit_size(k, self.n)).sum()
    }

    pub fn eval_point(&self, point: &[Rational]) -> Result<Rational> {
        if point.len() != self.n {
            return Err(Error::InvalidInput(format!("point has {} coordinates, need {}", point.len(), self.n)));
        }
        Ok(Poly::from_sym(self).eval(point))
    }

    /// Expansion in power sums `p_λ`. Faithful only when `n` is at least the degree.
    pub fn to_power_sums(&self) -> Result<BTreeMap<Partition, Rational>> {
        if let Some(d) = self.degree() {
            if (d as usize) > self.n {
                return Err(Error::InvalidInput(format!(
                    "power-sum expansion of degree {d} needs at least {d} variables, have {}",
                    self.n
                )));
            }
        }
        let mut rest = self.clone();
        let mut out = BTreeMap::new();
        // p_λ = (Π m_i(λ)!) m_λ + (terms coarser than λ); peel the finest key first
        while let Some((lambda, c)) = pick_finest(&rest) {
            let pl = basis_p_product(&lambda, self.n);
            let lead = pl.coeff(&lambda);
            let coef = c.checked_div(&lead, "power-sum leading coefficient")?;
            rest.add_assign_scaled(&pl, &-coef.clone())?;
            out.insert(lambda, coef);
        }
        Ok(out)
    }
}

/// Within the lowest degree present, the lexicographically smallest key.
fn pick_finest(f: &SymPoly) -> Option<(Partition, Rational)> {
    let d = f.terms.keys().next()?.size();
    f.terms.iter().rfind(|(k, _)| k.size() == d).map(|(k, v)| (k.clone(), v.clone()))
}

/// `p_λ = Π_i p_{λ_i}` in the orbit basis.
fn basis_p_product(lambda: &Partition, n: usize) -> SymPoly {
    lambda
        .parts()
        .iter()
        .fold(SymPoly::constant(n, Rational::one()), |acc, &r| acc.mul(&basis_p(r, n)).expect("same n"))
}

impl Serialize for SymPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Term<'a> {
            part: &'a Partition,
            coef: &'a Rational,
        }
        let terms: Vec<Term> = self.terms.iter().map(|(part, coef)| Term { part, coef }).collect();
        let mut s = serializer.serialize_struct("SymPoly", 2)?;
        s.serialize_field("n", &self.n)?;
        s.serialize_field("terms", &terms)?;
        s.end()
    }
}

impl<'de> Deserialize<'de> for SymPoly {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Term {
            part: Partition,
            coef: Rational,
        }
        #[derive(Deserialize)]
        struct Raw {
            n: usize,
            terms: Vec<Term>,
        }
        let raw = Raw::deserialize(deserializer)?;
        SymPoly::from_terms(raw.n, raw.terms.into_iter().map(|t| (t.part, t.coef))).map_err(serde::de::Error::custom)
    }
}

pub fn basis_m(lambda: &Partition, n: usize) -> Result<SymPoly> {
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
    }
    Ok(SymPoly::monomial(lambda.clone(), n))
}

/// `e_r = m_(1^r)`, zero when `r > n`.
pub fn basis_e(r: u32, n: usize) -> SymPoly {
    let mut out = SymPoly::zero(n);
    out.add_term(Partition::column(r), Rational::one());
    out
}

/// `p_r = m_(r)`; `p_0 = 1`.
pub fn basis_p(r: u32, n: usize) -> SymPoly {
    if r == 0 {
        return SymPoly::constant(n, Rational::one());
    }
    SymPoly::monomial(Partition::row(r), n)
}

/// `h_r = Σ_{|λ|=r} m_λ`.
pub fn basis_h(r: u32, n: usize) -> SymPoly {
    let mut out = SymPoly::zero(n);
    for lambda in reverse_lex_order(r, n) {
        out.add_term(lambda, Rational::one());
    }
    out
}

/// Schur polynomial via the Jacobi–Trudi determinant `det(h_{λ_i − i + j})`.
pub fn schur(lambda: &Partition, n: usize) -> Result<SymPoly> {
    if lambda.len() > n {
        return Err(Error::InvalidInput(format!("{lambda} has more than {n} parts")));
    }
    let l = lambda.len();
    if l == 0 {
        return Ok(SymPoly::constant(n, Rational::one()));
    }
    let max_index = lambda.part(1) as i64 + l as i64;
    let hs: Vec<SymPoly> = (0..=max_index as u32).map(|r| basis_h(r, n)).collect();
    let entry = |i: usize, j: usize| -> Option<&SymPoly> {
        let k = lambda.part(i + 1) as i64 - i as i64 + j as i64;
        (k >= 0).then(|| &hs[k as usize])
    };
    let mut out = SymPoly::zero(n);
    let idx: Vec<usize> = (0..l).collect();
    for perm in permutations(&idx) {
        let mut term = SymPoly::constant(n, Rational::one());
        let mut vanished = false;
        for (i, &j) in perm.iter().enumerate() {
            match entry(i, j) {
                Some(h) => term = term.mul(h)?,
                None => {
                    vanished = true;
                    break;
                }
            }
        }
        if !vanished {
            let sign = if inversions(&perm).is_multiple_of(2) { Rational::one() } else { -Rational::one() };
            out.add_assign_scaled(&term, &sign)?;
        }
    }
    Ok(out)
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len()).map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count()).sum()
}

pub fn eval_ones(f: &SymPoly) -> Rational {
    f.eval_ones()
}

pub fn eval_point(f: &SymPoly, point: &[Rational]) -> Result<Rational> {
    f.eval_point(point)
}

pub fn to_power_sums(f: &SymPoly) -> Result<BTreeMap<Partition, Rational>> {
    f.to_power_sums()
}

/// α-Hall inner product `⟨p_λ, p_μ⟩ = δ_{λμ} z_λ α^{ℓ(λ)}`.
pub fn hall_inner(f: &SymPoly, g: &SymPoly, alpha: &Rational) -> Result<Rational> {
    check_same_n(f.n, g.n)?;
    let pf = f.to_power_sums()?;
    let pg = g.to_power_sums()?;
    Ok(pf
        .iter()
        .filter_map(|(lambda, a)| {
            pg.get(lambda).map(|b| a * b * z_lambda(lambda) * alpha.pow(lambda.len() as i32))
        })
        .sum())
}

/// `Σ c_{λμ} m_λ(x) m_μ(y)` in two alphabets of `n` variables each.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct BiPoly {
    n: usize,
    terms: BTreeMap<(Partition, Partition), Rational>,
}

impl BiPoly {
    pub fn zero(n: usize) -> Self {
        BiPoly { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, Partition), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &Partition, y: &Partition) -> Rational {
        self.terms.get(&(x.clone(), y.clone())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, x: Partition, y: Partition, coef: Rational) {
        if x.len() > self.n || y.len() > self.n {
            return;
        }
        add_into(&mut self.terms, (x, y), coef);
    }

    /// Adds `c · f(x) g(y)`.
    pub fn add_tensor(&mut self, f: &SymPoly, g: &SymPoly, c: &Rational) -> Result<()> {
        check_same_n(self.n, f.n)?;
        check_same_n(self.n, g.n)?;
        for (kx, vx) in &f.terms {
            let cx = vx * c;
            for (ky, vy) in &g.terms {
                add_into(&mut self.terms, (kx.clone(), ky.clone()), &cx * vy);
            }
        }
        Ok(())
    }

    pub fn tensor(f: &SymPoly, g: &SymPoly) -> Result<BiPoly> {
        let mut out = BiPoly::zero(f.n);
        out.add_tensor(f, g, &Rational::one())?;
        Ok(out)
    }

    pub fn add_assign_scaled(&mut self, other: &BiPoly, c: &Rational) -> Result<()> {
        check_same_n(self.n, other.n)?;
        for (k, v) in &other.terms {
            add_into(&mut self.terms, k.clone(), v * c);
        }
        Ok(())
    }

    pub fn sub(&self, other: &BiPoly) -> Result<BiPoly> {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one())?;
        Ok(out)
    }

    /// Interchanges the two alphabets.
    pub fn swap(&self) -> BiPoly {
        BiPoly { n: self.n, terms: self.terms.iter().map(|((x, y), v)| ((y.clone(), x.clone()), v.clone())).collect() }
    }

    /// Keeps the terms of bidegree at most `(dx, dy)`.
    pub fn truncate(&self, dx: u32, dy: u32) -> BiPoly {
        BiPoly {
            n: self.n,
            terms: self
                .terms
                .iter()
                .filter(|((x, y), _)| x.size() <= dx && y.size() <= dy)
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Specializes `y = 1_n`.
    pub fn eval_y_ones(&self) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for ((x, y), v) in &self.terms {
            out.add_term(x.clone(), v * orbit_size(y, self.n));
        }
        out
    }

    /// Groups terms by the `y` key: `F = Σ_κ A_κ(x) m_κ(y)`.
    pub fn by_y(&self) -> BTreeMap<Partition, SymPoly> {
        let mut out: BTreeMap<Partition, SymPoly> = BTreeMap::new();
        for ((x, y), v) in &self.terms {
            out.entry(y.clone()).or_insert_with(|| SymPoly::zero(self.n)).add_term(x.clone(), v.clone());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::rat;

    fn m(l: Partition, n: usize) -> SymPoly {
        SymPoly::monomial(l, n)
    }

    #[test]
    fn products() {
        let m1 = m(part![1], 2);
        let want = m(part![2], 2).add(&m(part![1, 1], 2).scale(&Rational::integer(2))).unwrap();
        assert_eq!(m1.mul(&m1).unwrap(), want);
        let f = m(part![2, 1], 3);
        assert_eq!(SymPoly::constant(3, Rational::one()).mul(&f).unwrap(), f);
        let e1 = basis_e(1, 3);
        let want3 = m(part![2], 3).add(&m(part![1, 1], 3).scale(&Rational::integer(2))).unwrap();
        assert_eq!(e1.mul(&e1).unwrap(), want3);
        assert!(m1.mul(&m(part![1], 3)).is_err());
    }

    #[test]
    fn classical_bases() {
        assert_eq!(basis_e(2, 3), m(part![1, 1], 3));
        assert_eq!(basis_p(3, 2), m(part![3], 2));
        assert_eq!(basis_h(2, 2), m(part![2], 2).add(&m(part![1, 1], 2)).unwrap());
        assert!(basis_e(3, 2).is_zero());
        assert!(basis_m(&part![1, 1, 1], 2).is_err());
    }

    #[test]
    fn schur_small() {
        assert_eq!(schur(&part![1], 3).unwrap(), m(part![1], 3));
        assert_eq!(schur(&part![2], 3).unwrap(), basis_h(2, 3));
        assert_eq!(schur(&part![1, 1], 3).unwrap(), basis_e(2, 3));
        // s_(2,1) = m_(2,1) + 2 m_(1,1,1)
        let want = m(part![2, 1], 3).add(&m(part![1, 1, 1], 3).scale(&Rational::integer(2))).unwrap();
        assert_eq!(schur(&part![2, 1], 3).unwrap(), want);
    }

    #[test]
    fn evaluations() {
        assert_eq!(m(part![1], 5).eval_ones(), Rational::integer(5));
        assert_eq!(m(part![1, 1], 3).eval_ones(), Rational::integer(3));
        let v = basis_p(2, 2).eval_point(&[rat(1, 2).unwrap(), rat(1, 3).unwrap()]).unwrap();
        assert_eq!(v, rat(13, 36).unwrap());
        assert_eq!(m(part![2, 1], 3).eval_ones(), Rational::integer(6));
    }

    #[test]
    fn power_sums_and_inner_product() {
        let alpha = rat(3, 4).unwrap();
        let p1 = basis_p(1, 2);
        assert_eq!(hall_inner(&p1, &p1, &alpha).unwrap(), alpha);
        let p2 = basis_p(2, 3);
        assert_eq!(hall_inner(&p2, &p2, &alpha).unwrap(), &alpha * Rational::integer(2));
        // e_2 = (p_1² − p_2)/2
        let ps = basis_e(2, 3).to_power_sums().unwrap();
        assert_eq!(ps[&part![1, 1]], rat(1, 2).unwrap());
        assert_eq!(ps[&part![2]], rat(-1, 2).unwrap());
        assert!(basis_p(3, 2).to_power_sums().is_err());
    }

    #[test]
    fn json_shape() {
        let f = m(part![2], 2).add(&m(part![1, 1], 2).scale(&Rational::integer(2))).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"n":2,"terms":[{"part":[2],"coef":"1"},{"part":[1,1],"coef":"2"}]}"#);
        let back: SymPoly = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }

    #[test]
    fn bipoly_basics() {
        let f = m(part![1], 2);
        let g = m(part![2], 2);
        let b = BiPoly::tensor(&f, &g).unwrap();
        assert_eq!(b.coeff(&part![1], &part![2]), Rational::one());
        assert_eq!(b.swap().coeff(&part![2], &part![1]), Rational::one());
        assert_eq!(b.eval_y_ones(), f.scale(&Rational::integer(2)));
    }
}
