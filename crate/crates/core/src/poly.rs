//! Polynomials over exponent vectors. This is the working representation for the
//! differential operators; results are folded back into the orbit basis by [`Poly::to_sym`].

use std::collections::BTreeMap;

use crate::partitions::Partition;
use crate::scalar::Rational;
use crate::sympoly::SymPoly;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    n: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

/// Distinct permutations of `v`, in lexicographic order.
pub fn distinct_permutations(v: &[u32]) -> Vec<Vec<u32>> {
    let mut cur = v.to_vec();
    cur.sort_unstable();
    let mut out = vec![cur.clone()];
    loop {
        // standard next-permutation step
        let Some(i) = (0..cur.len().saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..cur.len()).rev().find(|&j| cur[j] > cur[i]).expect("pivot exists");
        cur.swap(i, j);
        cur[i + 1..].reverse();
        out.push(cur.clone());
    }
    out
}

/// `(x_i^A x_j^B − x_i^B x_j^A)/(x_i − x_j)` as a list of `(exp_i, exp_j)` pairs, up to sign.
/// Returns `(+1, pairs)` for `A > B`, `(-1, pairs)` for `A < B`, empty for `A = B`.
fn divided_difference(a: u32, b: u32) -> (i32, Vec<(u32, u32)>) {
    if a == b {
        return (0, Vec::new());
    }
    let (hi, lo, sign) = if a > b { (a, b, 1) } else { (b, a, -1) };
    (sign, (lo..hi).map(|k| (k, hi + lo - 1 - k)).collect())
}

impl Poly {
    pub fn zero(n: usize) -> Self {
        Poly { n, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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

    /// Expands every orbit `m_λ` into its monomials.
    pub fn from_sym(f: &SymPoly) -> Self {
        let mut out = Poly::zero(f.n());
        for (lambda, c) in f.terms() {
            for e in distinct_permutations(&lambda.padded(f.n())) {
                out.add_term(e, c.clone());
            }
        }
        out
    }

    /// Reads the orbit coefficients off the sorted monomials. The input must be symmetric.
    pub fn to_sym(&self) -> SymPoly {
        let mut out = SymPoly::zero(self.n);
        for (e, c) in &self.terms {
            if e.windows(2).all(|w| w[0] >= w[1]) {
                out.add_term(Partition::from_exponents(e), c.clone());
            }
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.n);
        }
        Poly { n: self.n, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn add_assign_scaled(&mut self, other: &Poly, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (e, x) in &other.terms {
            self.add_term(e.clone(), x * c);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        out.add_assign_scaled(other, &-Rational::one());
        out
    }

    /// `E_r = Σ_i x_i^{r−1} ∂_i`.
    pub fn apply_e(&self, r: u32) -> Poly {
        assert!(r >= 1, "E_r needs r >= 1");
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            for i in 0..self.n {
                if e[i] == 0 {
                    continue;
                }
                let mut f = e.clone();
                f[i] = e[i] - 1 + (r - 1);
                out.add_term(f, c * Rational::from(e[i]));
            }
        }
        out
    }

    /// Multiplication by `e_1 = x_1 + ... + x_n`.
    pub fn mul_e1(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            for i in 0..self.n {
                let mut f = e.clone();
                f[i] += 1;
                out.add_term(f, c.clone());
            }
        }
        out
    }

    /// `(1/2) Σ_i x_i² ∂_i²`.
    pub fn apply_box_diagonal(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            let w: u64 = e.iter().map(|&k| u64::from(k) * u64::from(k.saturating_sub(1)) / 2).sum();
            if w > 0 {
                out.add_term(e.clone(), c * Rational::integer(w as i64));
            }
        }
        out
    }

    /// `Σ_{i≠j} x_i x_j/(x_i − x_j) ∂_i` on a symmetric input.
    ///
    /// For each pair `i < j` the monomial `x^e` and its `(i j)`-swap are handled together:
    /// with `a = e_i > b = e_j` their joint contribution is `a·T(a, b+1) − b·T(a+1, b)` times the
    /// remaining factors, where `T(A,B) = (x_i^A x_j^B − x_i^B x_j^A)/(x_i − x_j)`. A monomial
    /// fixed by the swap (`a = b`) contributes `−a·x^e`.
    pub fn apply_box_singular(&self) -> Poly {
        let mut out = Poly::zero(self.n);
        for (e, c) in &self.terms {
            for i in 0..self.n {
                for j in i + 1..self.n {
                    let (a, b) = (e[i], e[j]);
                    if a < b {
                        continue;
                    }
                    if a == b {
                        if a > 0 {
                            out.add_term(e.clone(), -(c * Rational::from(a)));
                        }
                        continue;
                    }
                    for (weight, (ta, tb)) in [(i64::from(a), (a, b + 1)), (-i64::from(b), (a + 1, b))] {
                        if weight == 0 {
                            continue;
                        }
                        let (sign, pairs) = divided_difference(ta, tb);
                        let coef = c * Rational::integer(weight * i64::from(sign));
                        for (ki, kj) in pairs {
                            let mut f = e.clone();
                            f[i] = ki;
                            f[j] = kj;
                            out.add_term(f, coef.clone());
                        }
                    }
                }
            }
        }
        out
    }

    /// Laplace–Beltrami operator `□ = (1/2)Σ x_i²∂_i² + (1/α)Σ_{i≠j} x_i x_j/(x_i−x_j) ∂_i`.
    pub fn apply_box(&self, alpha: &Rational) -> Poly {
        let mut out = self.apply_box_diagonal();
        out.add_assign_scaled(&self.apply_box_singular(), &alpha.recip().expect("alpha is nonzero"));
        out
    }

    /// Substitutes `x_i → x_i + t` in every variable.
    pub fn translate(&self, t: &Rational) -> Poly {
        let mut cur = self.clone();
        for i in 0..self.n {
            let mut next = Poly::zero(self.n);
            for (e, c) in &cur.terms {
                let top = e[i];
                // (x + t)^top = Σ_k C(top, k) t^{top−k} x^k
                let mut binom = Rational::one();
                for k in (0..=top).rev() {
                    let mut f = e.clone();
                    f[i] = k;
                    next.add_term(f, c * &binom * t.pow((top - k) as i32));
                    binom = binom * Rational::from(k) / Rational::from(top - k + 1);
                }
            }
            cur = next;
        }
        cur
    }

    pub fn eval(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.n, "point dimension");
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = c.clone();
                for (x, &k) in point.iter().zip(e) {
                    v *= x.pow(k as i32);
                }
                v
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::part;
    use crate::scalar::rat;

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 0]), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(distinct_permutations(&[1, 1, 0]).len(), 3);
        assert_eq!(distinct_permutations(&[2, 1, 0]).len(), 6);
        assert_eq!(distinct_permutations(&[]), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn divided_differences() {
        assert_eq!(divided_difference(3, 1), (1, vec![(1, 2), (2, 1)]));
        assert_eq!(divided_difference(1, 3).0, -1);
        assert_eq!(divided_difference(2, 2), (0, vec![]));
    }

    #[test]
    fn singular_part_small_cases() {
        // x1 x2 (∂1 − ∂2)(x1² + x2²)/(x1 − x2) = 2 x1 x2
        let f = Poly::from_sym(&SymPoly::monomial(part![2], 2));
        assert_eq!(f.apply_box_singular().to_sym(), SymPoly::monomial(part![1, 1], 2).scale(&Rational::integer(2)));
        // x1 x2 (x2 − x1)/(x1 − x2) = −x1 x2
        let g = Poly::from_sym(&SymPoly::monomial(part![1, 1], 2));
        assert_eq!(g.apply_box_singular().to_sym(), SymPoly::monomial(part![1, 1], 2).scale(&-Rational::one()));
        let h = Poly::from_sym(&SymPoly::monomial(part![1], 2));
        assert!(h.apply_box_singular().is_zero());
    }

    #[test]
    fn box_on_degree_two_jack() {
        let alpha = rat(5, 2).unwrap();
        let mut j2 = SymPoly::monomial(part![2], 2).scale(&(&alpha + Rational::one()));
        j2 = j2.add(&SymPoly::monomial(part![1, 1], 2).scale(&Rational::integer(2))).unwrap();
        assert_eq!(Poly::from_sym(&j2).apply_box(&alpha).to_sym(), j2);
    }

    #[test]
    fn evaluation() {
        let p = Poly::from_sym(&SymPoly::monomial(part![2], 2));
        assert_eq!(p.eval(&[rat(1, 2).unwrap(), rat(1, 3).unwrap()]), rat(13, 36).unwrap());
    }
}
