//! Integer partitions, box statistics, order relations and α-Pochhammer symbols.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Rational;

/// Weakly decreasing sequence of positive integers. The zero partition is the empty sequence.
///
/// Ordering is graded: smaller size first, and within one size the lexicographically larger
/// partition comes first, so `(2) < (1,1)` and `(3) < (2,1) < (1,1,1)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Validates the parts and strips trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidInput(format!("{parts:?} is not weakly decreasing")));
        }
        if parts.contains(&0) {
            return Err(Error::InvalidInput(format!("{parts:?} has an interior zero")));
        }
        Ok(Partition(parts))
    }

    /// Sorts an arbitrary exponent vector into a partition (the orbit representative).
    pub fn from_exponents(exps: &[u32]) -> Self {
        let mut parts: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition(parts)
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// `(1^k)`
    pub fn column(k: u32) -> Self {
        Partition(vec![1; k as usize])
    }

    /// `(k)`, or the empty partition when `k = 0`.
    pub fn row(k: u32) -> Self {
        if k == 0 {
            Partition::empty()
        } else {
            Partition(vec![k])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Length ℓ(λ).
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Size |λ|.
    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// `λ_i` with 1-based `i`; zero past the length.
    pub fn part(&self, i: usize) -> u32 {
        if i == 0 {
            return 0;
        }
        self.0.get(i - 1).copied().unwrap_or(0)
    }

    /// Exponent vector padded with zeros to `n` entries.
    pub fn padded(&self, n: usize) -> Vec<u32> {
        let mut v = self.0.clone();
        v.resize(n.max(v.len()), 0);
        v
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        Partition((1..=first).map(|j| self.0.iter().filter(|&&p| p >= j).count() as u32).collect())
    }

    /// Whether the 1-based box `(i, j)` lies in the diagram.
    pub fn contains_box(&self, i: usize, j: u32) -> bool {
        i >= 1 && j >= 1 && self.part(i) >= j
    }

    /// Boxes in row-major order as 1-based `(row, column)`.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &p)| (1..=p).map(move |j| (i + 1, j)))
    }

    /// `self + ε_row` when that is a partition.
    pub fn add_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() + 1 {
            return None;
        }
        if row > 1 && self.part(row - 1) == self.part(row) {
            return None;
        }
        let mut v = self.0.clone();
        if row == v.len() + 1 {
            v.push(1);
        } else {
            v[row - 1] += 1;
        }
        Some(Partition(v))
    }

    /// `self − ε_row` when that is a partition.
    pub fn remove_box(&self, row: usize) -> Option<Partition> {
        if row == 0 || row > self.len() || self.part(row) == self.part(row + 1) {
            return None;
        }
        let mut v = self.0.clone();
        v[row - 1] -= 1;
        Partition::new(v).ok()
    }

    /// The single row where `self` and a partition it covers differ.
    pub fn added_row(&self, mu: &Partition) -> Option<usize> {
        if !relations(self, mu).covers {
            return None;
        }
        (1..=self.len()).find(|&i| self.part(i) != mu.part(i))
    }
}

impl Ord for Partition {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size().cmp(&other.size()).then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "(0)");
        }
        write!(f, "(")?;
        for (k, p) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts comma separated parts such as `3,1,1`; `0` or an empty string is the zero partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if s.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidInput(format!("malformed partition part '{}'", tok.trim())))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<u32>::deserialize(deserializer)?;
        Partition::new(v).map_err(serde::de::Error::custom)
    }
}

/// Build a partition from a literal list; panics on invalid input. Intended for tests and constants.
#[macro_export]
macro_rules! part {
    () => { $crate::partitions::Partition::empty() };
    ($($p:expr),+ $(,)?) => {
        $crate::partitions::Partition::new(vec![$($p),+]).expect("valid partition literal")
    };
}

pub fn conjugate(lambda: &Partition) -> Partition {
    lambda.conjugate()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BoxStats {
    pub arm: u32,
    pub coarm: u32,
    pub leg: u32,
    pub coleg: u32,
}

/// Arm, co-arm, leg and co-leg of the 1-based box `(i, j)`.
pub fn box_stats(lambda: &Partition, i: usize, j: u32) -> Result<BoxStats> {
    if !lambda.contains_box(i, j) {
        return Err(Error::InvalidInput(format!("box ({i},{j}) is outside {lambda}")));
    }
    let conj = lambda.conjugate();
    Ok(BoxStats {
        arm: lambda.part(i) - j,
        coarm: j - 1,
        leg: conj.part(j as usize) - i as u32,
        coleg: (i - 1) as u32,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Relations {
    pub contains: bool,
    pub covers: bool,
    pub dominates: bool,
}

pub fn relations(lambda: &Partition, mu: &Partition) -> Relations {
    let rows = lambda.len().max(mu.len());
    let contains = (1..=rows).all(|i| lambda.part(i) >= mu.part(i));
    let covers = contains && lambda.size() == mu.size() + 1;
    let dominates = lambda.size() == mu.size() && {
        let (mut sl, mut sm) = (0u32, 0u32);
        (1..=rows).all(|i| {
            sl += lambda.part(i);
            sm += mu.part(i);
            sl >= sm
        })
    };
    Relations { contains, covers, dominates }
}

/// All `λ ⋗ μ` with `ℓ(λ) ≤ n`, with the row that received the new box, in increasing row order.
pub fn covers_with_rows(mu: &Partition, n: usize) -> Vec<(usize, Partition)> {
    (1..=(mu.len() + 1).min(n)).filter_map(|i| mu.add_box(i).map(|l| (i, l))).collect()
}

/// All `λ ⋗ μ` with `ℓ(λ) ≤ n`, in increasing row order.
pub fn covers_of(mu: &Partition, n: usize) -> Vec<Partition> {
    covers_with_rows(mu, n).into_iter().map(|(_, l)| l).collect()
}

/// All `μ ⋖ λ` with the row that lost a box, in increasing row order.
pub fn covered_with_rows(lambda: &Partition) -> Vec<(usize, Partition)> {
    (1..=lambda.len()).filter_map(|i| lambda.remove_box(i).map(|m| (i, m))).collect()
}

pub fn covered_by(lambda: &Partition) -> Vec<Partition> {
    covered_with_rows(lambda).into_iter().map(|(_, m)| m).collect()
}

/// α-content `a'(s) − l'(s)/α` of the 1-based box `(i, j)`.
pub fn content(i: usize, j: u32, alpha: &Rational) -> Rational {
    Rational::from(j - 1) - Rational::from(i - 1) / alpha
}

/// `ρ(λ) = Σ_i (λ_i(λ_i−1)/2 − λ_i(i−1)/α)`.
pub fn rho(lambda: &Partition, alpha: &Rational) -> Rational {
    let mut quad = 0i64;
    let mut lin = 0i64;
    for (idx, &p) in lambda.parts().iter().enumerate() {
        let p = i64::from(p);
        quad += p * (p - 1) / 2;
        lin += p * idx as i64;
    }
    Rational::integer(quad) - Rational::integer(lin) / alpha
}

/// `ρ(λ/μ) = ρ(λ) − ρ(μ)` for `λ ⋗ μ`: the α-content of the added box.
pub fn rho_skew(lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<Rational> {
    let row = lambda
        .added_row(mu)
        .ok_or_else(|| Error::InvalidInput(format!("{lambda} does not cover {mu}")))?;
    Ok(content(row, lambda.part(row), alpha))
}

/// α-Pochhammer symbol `(a)_λ = Π_i (a − (i−1)/α)_{λ_i}`.
pub fn alpha_pochhammer(a: &Rational, lambda: &Partition, alpha: &Rational) -> Rational {
    lambda
        .parts()
        .iter()
        .enumerate()
        .map(|(i, &p)| (a - Rational::from(i) / alpha).rising(p))
        .product()
}

/// `a + ρ(λ/μ)`, the ratio `(a)_λ/(a)_μ` for `λ ⋗ μ`.
pub fn poch_ratio_check(a: &Rational, lambda: &Partition, mu: &Partition, alpha: &Rational) -> Result<Rational> {
    Ok(a + rho_skew(lambda, mu, alpha)?)
}

/// Upper hook factor `c_λ(i,j) = (λ_i − j)α + λ'_j − i + 1`.
pub fn upper_hook(lambda: &Partition, conj: &Partition, i: usize, j: u32, alpha: &Rational) -> Rational {
    let arm = i64::from(lambda.part(i)) - i64::from(j);
    let leg = i64::from(conj.part(j as usize)) - i as i64;
    alpha * Rational::integer(arm) + Rational::integer(leg + 1)
}

/// Lower hook factor `c'_λ(i,j) = (λ_i − j + 1)α + λ'_j − i`.
pub fn lower_hook(lambda: &Partition, conj: &Partition, i: usize, j: u32, alpha: &Rational) -> Rational {
    let arm = i64::from(lambda.part(i)) - i64::from(j);
    let leg = i64::from(conj.part(j as usize)) - i as i64;
    alpha * Rational::integer(arm + 1) + Rational::integer(leg)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hooks {
    pub c: Rational,
    pub cprime: Rational,
    pub j: Rational,
}

/// Hook products `c_λ`, `c'_λ` and `j_λ = c_λ c'_λ`.
pub fn hooks(lambda: &Partition, alpha: &Rational) -> Hooks {
    let conj = lambda.conjugate();
    let mut c = Rational::one();
    let mut cprime = Rational::one();
    for (i, j) in lambda.boxes() {
        c *= upper_hook(lambda, &conj, i, j, alpha);
        cprime *= lower_hook(lambda, &conj, i, j, alpha);
    }
    let j = &c * &cprime;
    Hooks { c, cprime, j }
}

/// Partitions of `d` with at most `n` parts, lexicographically decreasing: `(d) >_L (d−1,1) >_L ...`.
pub fn reverse_lex_order(d: u32, n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fill_partitions(d, d, n, &mut cur, &mut out);
    out
}

fn fill_partitions(rest: u32, max_part: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if rest == 0 {
        out.push(Partition(cur.clone()));
        return;
    }
    if slots == 0 {
        return;
    }
    for p in (1..=rest.min(max_part)).rev() {
        cur.push(p);
        fill_partitions(rest - p, p, slots - 1, cur, out);
        cur.pop();
    }
}

/// Every partition with `|λ| ≤ maxdeg` and `ℓ(λ) ≤ n`, graded, each degree in reverse-lex order.
pub fn partitions_up_to(maxdeg: u32, n: usize) -> Vec<Partition> {
    (0..=maxdeg).flat_map(|d| reverse_lex_order(d, n)).collect()
}

/// Shifted parts `w_i = λ_i − (i−1)/α` for `i = 1..=n`; rows past ℓ(λ) contribute `−(i−1)/α`.
pub fn shifted_parts(lambda: &Partition, n: usize, alpha: &Rational) -> Vec<Rational> {
    (1..=n).map(|i| content(i, lambda.part(i) + 1, alpha)).collect()
}

/// Parameters of a hypergeometric series: `α`, upper `a_1..a_p`, lower `b_1..b_q`, variable count `n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub alpha: Rational,
    pub upper: Vec<Rational>,
    pub lower: Vec<Rational>,
    pub n: usize,
}

impl ParamSet {
    pub fn new(alpha: Rational, upper: Vec<Rational>, lower: Vec<Rational>, n: usize) -> Result<Self> {
        if !alpha.is_positive() {
            return Err(Error::InvalidInput(format!("alpha must be positive, got {alpha}")));
        }
        if n == 0 {
            return Err(Error::InvalidInput("need at least one variable".into()));
        }
        Ok(ParamSet { alpha, upper, lower, n })
    }

    pub fn p(&self) -> usize {
        self.upper.len()
    }

    pub fn q(&self) -> usize {
        self.lower.len()
    }

    /// Same parameters in a different number of variables.
    pub fn with_n(&self, n: usize) -> Self {
        ParamSet { n, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn canonical_and_ordering() {
        assert_eq!(Partition::new(vec![2, 1, 0, 0]).unwrap(), part![2, 1]);
        assert!(Partition::new(vec![1, 2]).is_err());
        assert_eq!(Partition::new(vec![0]).unwrap(), Partition::empty());
        assert!(part![2] < part![1, 1]);
        assert!(part![1, 1] < part![3]);
        assert_eq!("3,1".parse::<Partition>().unwrap(), part![3, 1]);
        assert_eq!("0".parse::<Partition>().unwrap(), Partition::empty());
        assert!("3,x".parse::<Partition>().is_err());
    }

    #[test]
    fn conjugates() {
        assert_eq!(part![7, 7, 6, 4, 4, 2, 1].conjugate(), part![7, 6, 5, 5, 3, 3, 2]);
        assert_eq!(Partition::empty().conjugate(), Partition::empty());
        assert_eq!(part![3].conjugate(), part![1, 1, 1]);
    }

    #[test]
    fn box_statistics() {
        let l = part![7, 7, 6, 4, 4, 2, 1];
        assert_eq!(box_stats(&l, 3, 2).unwrap(), BoxStats { arm: 4, coarm: 1, leg: 3, coleg: 2 });
        assert_eq!(box_stats(&part![1], 1, 1).unwrap(), BoxStats { arm: 0, coarm: 0, leg: 0, coleg: 0 });
        assert_eq!(box_stats(&part![2, 2], 1, 1).unwrap(), BoxStats { arm: 1, coarm: 0, leg: 1, coleg: 0 });
        assert!(box_stats(&part![2, 2], 3, 1).is_err());
    }

    #[test]
    fn order_relations() {
        assert!(relations(&part![2], &part![1]).covers);
        let r = relations(&part![2], &part![1, 1]);
        assert!(r.dominates && !r.contains);
        assert!(relations(&part![3, 1], &part![2, 1]).covers);
        assert!(!relations(&part![1, 1], &part![2]).dominates);
    }

    #[test]
    fn covers_lists() {
        assert_eq!(covers_of(&part![1], 2), vec![part![2], part![1, 1]]);
        assert_eq!(covers_of(&Partition::empty(), 1), vec![part![1]]);
        assert_eq!(covers_of(&part![2, 2], 2), vec![part![3, 2]]);
        assert_eq!(covered_by(&part![2, 2, 1]), vec![part![2, 1, 1], part![2, 2]]);
    }

    #[test]
    fn contents_and_rho() {
        let a = rat(5, 2).unwrap();
        assert_eq!(rho(&part![2], &a), Rational::one());
        assert_eq!(rho(&Partition::empty(), &a), Rational::zero());
        assert_eq!(rho(&part![1, 1], &a), -a.recip().unwrap());
        assert_eq!(rho_skew(&part![1, 1], &part![1], &a).unwrap(), -a.recip().unwrap());
    }

    #[test]
    fn pochhammers() {
        let alpha = rat(3, 1).unwrap();
        let a = rat(2, 7).unwrap();
        assert_eq!(alpha_pochhammer(&a, &part![4], &alpha), a.rising(4));
        assert_eq!(alpha_pochhammer(&a, &Partition::empty(), &alpha), Rational::one());
        assert!(alpha_pochhammer(&rat(1, 2).unwrap(), &part![1, 1], &rat(2, 1).unwrap()).is_zero());
        assert_eq!(poch_ratio_check(&a, &part![2], &part![1], &alpha).unwrap(), &a + Rational::one());
        assert_eq!(poch_ratio_check(&a, &part![1], &Partition::empty(), &alpha).unwrap(), a);
    }

    #[test]
    fn hook_products() {
        let alpha = rat(7, 3).unwrap();
        let h1 = hooks(&part![1], &alpha);
        assert_eq!((h1.c.clone(), h1.cprime.clone(), h1.j.clone()), (Rational::one(), alpha.clone(), alpha.clone()));
        let two = Rational::integer(2);
        let one = Rational::one();
        assert_eq!(&h1.j / &hooks(&part![2], &alpha).j, (&two * &alpha * (&alpha + &one)).recip().unwrap());
        assert_eq!(&h1.j / &hooks(&part![1, 1], &alpha).j, (&two * (&alpha + &one)).recip().unwrap());
    }

    #[test]
    fn reverse_lex() {
        let got: Vec<String> = reverse_lex_order(6, 6).iter().map(|p| p.to_string()).collect();
        assert_eq!(
            got,
            [
                "(6)", "(5,1)", "(4,2)", "(4,1,1)", "(3,3)", "(3,2,1)", "(3,1,1,1)", "(2,2,2)", "(2,2,1,1)",
                "(2,1,1,1,1)", "(1,1,1,1,1,1)"
            ]
        );
        assert_eq!(reverse_lex_order(0, 3), vec![Partition::empty()]);
        assert_eq!(reverse_lex_order(2, 1), vec![part![2]]);
    }
}
