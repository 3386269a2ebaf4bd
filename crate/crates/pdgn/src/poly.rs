//! Exact sparse multivariate polynomials over the rationals and a Buchberger
//! engine for reduced Groebner bases under weight orders.
//!
//! The term order compares weights in the MIN convention (a smaller weight
//! inner product makes a monomial *leading*), with graded reverse
//! lexicographic tie-breaking on the variable order. Such an order is only
//! well-founded degree by degree, so the engine insists on homogeneous input
//! whenever the weight vector is nonzero; every ideal handled here is
//! generated in a single degree.

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;

pub type Coef = BigRational;
pub type Exponents = Vec<u8>;

pub fn coef_int(x: i64) -> Coef {
    BigRational::from_integer(BigInt::from(x))
}

/// Sparse polynomial: exponent vector -> nonzero rational coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    pub terms: BTreeMap<Exponents, Coef>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(exps: Exponents, c: Coef) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Self { terms }
    }

    pub fn add_term(&mut self, exps: Exponents, c: Coef) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Coef) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect(),
        }
    }

    /// Multiply by the single term `c * x^exps`.
    pub fn mul_term(&self, exps: &[u8], c: &Coef) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(e, x)| {
                    let prod: Exponents = e.iter().zip(exps).map(|(a, b)| a + b).collect();
                    (prod, x * c)
                })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (e, c) in &other.terms {
            for (e2, c2) in &self.terms {
                let prod: Exponents = e2.iter().zip(e).map(|(a, b)| a + b).collect();
                out.add_term(prod, c * c2);
            }
        }
        out
    }

    pub fn total_degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|e| e.iter().map(|&x| x as u32).sum())
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.total_degrees();
        match degs.next() {
            None => true,
            Some(d) => degs.all(|x| x == d),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

/// Weight-refined order: a monomial with smaller `<u, w>` is *leading*;
/// ties fall through to graded reverse lexicographic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    pub weights: Vec<i64>,
}

impl TermOrder {
    pub fn new(weights: Vec<i64>) -> Self {
        Self { weights }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self { weights: vec![0; nvars] }
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    fn weight_of(&self, u: &[u8]) -> i64 {
        u.iter()
            .zip(&self.weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    }

    /// `Ordering::Greater` means `u` is closer to leading than `v`.
    pub fn cmp(&self, u: &[u8], v: &[u8]) -> Ordering {
        match self.weight_of(v).cmp(&self.weight_of(u)) {
            Ordering::Equal => {}
            ord => return ord, // smaller weight wins
        }
        let du: u32 = u.iter().map(|&x| x as u32).sum();
        let dv: u32 = v.iter().map(|&x| x as u32).sum();
        match du.cmp(&dv) {
            Ordering::Equal => {}
            ord => return ord,
        }
        // reverse lexicographic: last nonzero entry of u - v negative => u greater
        for i in (0..u.len()).rev() {
            match u[i].cmp(&v[i]) {
                Ordering::Equal => {}
                Ordering::Less => return Ordering::Greater,
                Ordering::Greater => return Ordering::Less,
            }
        }
        Ordering::Equal
    }

    pub fn leading<'a>(&self, f: &'a Polynomial) -> Option<(&'a Exponents, &'a Coef)> {
        f.terms
            .iter()
            .max_by(|(u, _), (v, _)| self.cmp(u, v).then(u.cmp(v)))
    }

    /// Terms of `f` sorted leading-first (ties broken by the raw exponent
    /// encoding so output is deterministic).
    pub fn sorted_terms<'a>(&self, f: &'a Polynomial) -> Vec<(&'a Exponents, &'a Coef)> {
        let mut terms: Vec<_> = f.terms.iter().collect();
        terms.sort_by(|(u, _), (v, _)| self.cmp(v, u).then(v.cmp(u)));
        terms
    }
}

fn divides(a: &[u8], b: &[u8]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

fn exp_sub(a: &[u8], b: &[u8]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn exp_lcm(a: &[u8], b: &[u8]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

fn exp_mul(a: &[u8], b: &[u8]) -> Exponents {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

/// Working representation inside the Buchberger engine: terms sorted
/// leading-first under the active order. Term orders are translation
/// invariant, so multiplying by a monomial preserves the sorting and
/// arithmetic reduces to sorted-list merges.
#[derive(Clone, Debug, PartialEq, Eq)]
struct SortedPoly {
    terms: Vec<(Exponents, Coef)>,
}

impl SortedPoly {
    fn from_poly(f: &Polynomial, ord: &TermOrder) -> Self {
        Self {
            terms: ord
                .sorted_terms(f)
                .into_iter()
                .map(|(e, c)| (e.clone(), c.clone()))
                .collect(),
        }
    }

    fn into_poly(self) -> Polynomial {
        Polynomial { terms: self.terms.into_iter().collect() }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn leading(&self) -> &(Exponents, Coef) {
        &self.terms[0]
    }

    /// `self - c * x^shift * g`, merging two sorted term lists.
    fn sub_scaled_shift(&self, g: &SortedPoly, shift: &[u8], c: &Coef, ord: &TermOrder) -> SortedPoly {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if j == g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let ge = exp_mul(&g.terms[j].0, shift);
            if i == self.terms.len() {
                out.push((ge, -(&g.terms[j].1 * c)));
                j += 1;
                continue;
            }
            match ord.cmp(&self.terms[i].0, &ge).then(self.terms[i].0.cmp(&ge).reverse()) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push((ge, -(&g.terms[j].1 * c)));
                    j += 1;
                }
                Ordering::Equal => {
                    let coef = &self.terms[i].1 - &g.terms[j].1 * c;
                    if !coef.is_zero() {
                        out.push((ge, coef));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        SortedPoly { terms: out }
    }
}

/// Repeatedly cancels the leading term of `f` against `basis` until it is
/// irreducible or `f` vanishes; `full` also reduces the tail.
fn reduce(mut f: SortedPoly, basis: &[SortedPoly], ord: &TermOrder, full: bool) -> SortedPoly {
    let mut done: Vec<(Exponents, Coef)> = Vec::new();
    'outer: while !f.is_zero() {
        let (lt, lc) = f.leading().clone();
        for g in basis {
            let (ge, gc) = g.leading();
            if divides(ge, &lt) {
                let factor = &lc / gc;
                let shift = exp_sub(&lt, ge);
                f = f.sub_scaled_shift(g, &shift, &factor, ord);
                continue 'outer;
            }
        }
        if !full {
            break;
        }
        done.push((lt.clone(), lc));
        f.terms.remove(0);
    }
    if full {
        done.extend(f.terms);
        SortedPoly { terms: done }
    } else {
        f
    }
}

/// Fully reduces `f` modulo `basis` (every term, not just the leading one).
pub fn normal_form(f: &Polynomial, basis: &[Polynomial], ord: &TermOrder) -> Polynomial {
    let sorted_basis: Vec<SortedPoly> = basis
        .iter()
        .map(|g| SortedPoly::from_poly(g, ord))
        .collect();
    reduce(SortedPoly::from_poly(f, ord), &sorted_basis, ord, true).into_poly()
}

/// Buchberger with the product and chain criteria and normal pair selection
/// (smallest lcm first); the result is the reduced Groebner basis for
/// `ord`, sorted leading-term-descending with monic generators.
pub fn buchberger(gens: &[Polynomial], ord: &TermOrder) -> Result<Vec<Polynomial>> {
    let nonzero_weights = ord.weights.iter().any(|&w| w != 0);
    let mut basis: Vec<SortedPoly> = Vec::new();
    for g in gens {
        if g.is_zero() {
            return Err(Error::InvalidInput("zero generator".into()));
        }
        if nonzero_weights && !g.is_homogeneous() {
            return Err(Error::InvalidInput(
                "weight orders require homogeneous generators".into(),
            ));
        }
        let s = SortedPoly::from_poly(g, ord);
        if !basis.contains(&s) {
            basis.push(s);
        }
    }
    // pending pairs keyed by their lcm; processed pairs enable the chain
    // criterion
    let mut pairs: Vec<(usize, usize, Exponents)> = Vec::new();
    let add_pairs = |basis: &[SortedPoly], pairs: &mut Vec<(usize, usize, Exponents)>, j: usize| {
        for i in 0..j {
            let l = exp_lcm(&basis[i].leading().0, &basis[j].leading().0);
            pairs.push((i, j, l));
        }
    };
    for j in 0..basis.len() {
        add_pairs(&basis, &mut pairs, j);
    }
    let mut done: Vec<(usize, usize)> = Vec::new();
    while !pairs.is_empty() {
        // normal strategy: smallest lcm in the active order
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                ord.cmp(&pairs[b].2, &pairs[a].2)
                    .then(pairs[a].2.cmp(&pairs[b].2))
            })
            .unwrap();
        let (i, j, l) = pairs.swap_remove(best);
        done.push((i, j));
        let (ei, ci) = basis[i].leading().clone();
        let (ej, cj) = basis[j].leading().clone();
        // product criterion
        if ei.iter().zip(ej.iter()).all(|(a, b)| *a == 0 || *b == 0) {
            continue;
        }
        // chain criterion: some k with lt_k | lcm and both side pairs handled
        let chained = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && divides(&basis[k].leading().0, &l)
                && done.contains(&(i.min(k), i.max(k)))
                && done.contains(&(j.min(k), j.max(k)))
        });
        if chained {
            continue;
        }
        // s = x^(l-ei) f_i - (ci/cj) x^(l-ej) f_j
        let s = SortedPoly { terms: Vec::new() }
            .sub_scaled_shift(&basis[i], &exp_sub(&l, &ei), &(-Coef::one()), ord)
            .sub_scaled_shift(&basis[j], &exp_sub(&l, &ej), &(&ci / &cj), ord);
        let r = reduce(s, &basis, ord, false);
        if !r.is_zero() {
            let idx = basis.len();
            basis.push(r);
            add_pairs(&basis, &mut pairs, idx);
        }
    }
    Ok(inter_reduce(
        basis.into_iter().map(SortedPoly::into_poly).collect(),
        ord,
    ))
}

/// Minimalizes and tail-reduces a Groebner basis; also usable to turn any
/// generating set that is already a Groebner basis into the reduced one.
pub fn inter_reduce(basis: Vec<Polynomial>, ord: &TermOrder) -> Vec<Polynomial> {
    let mut sorted: Vec<SortedPoly> = basis
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| SortedPoly::from_poly(g, ord))
        .collect();
    // drop generators whose leading term is divisible by another's
    let mut keep = vec![true; sorted.len()];
    for i in 0..sorted.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..sorted.len() {
            if i == j || !keep[j] {
                continue;
            }
            let (ei, _) = sorted[i].leading();
            let (ej, _) = sorted[j].leading();
            if divides(ej, ei) && (ej != ei || j < i) {
                keep[i] = false;
                break;
            }
        }
    }
    let mut minimal: Vec<SortedPoly> = sorted
        .drain(..)
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();
    // tail-reduce each against the others until stable
    loop {
        let mut changed = false;
        for i in 0..minimal.len() {
            let others: Vec<SortedPoly> = minimal
                .iter()
                .enumerate()
                .filter(|&(j, _g)| j != i).map(|(_j, g)| g.clone())
                .collect();
            let r = reduce(minimal[i].clone(), &others, ord, true);
            if r != minimal[i] {
                minimal[i] = r;
                changed = true;
            }
        }
        minimal.retain(|g| !g.is_zero());
        if !changed {
            break;
        }
    }
    let mut out: Vec<Polynomial> = minimal
        .into_iter()
        .map(|mut g| {
            let inv = Coef::one() / g.leading().1.clone();
            if !inv.is_one() {
                for (_, c) in g.terms.iter_mut() {
                    *c = &*c * &inv;
                }
            }
            g.into_poly()
        })
        .collect();
    out.sort_by(|f, g| {
        let (ef, _) = ord.leading(f).unwrap();
        let (eg, _) = ord.leading(g).unwrap();
        ord.cmp(eg, ef).then(eg.cmp(ef))
    });
    out
}

/// Sum of the terms of `f` whose weight inner product is minimal.
pub fn initial_form(f: &Polynomial, weights: &[i64]) -> Result<Polynomial> {
    if f.is_zero() {
        return Err(Error::InvalidInput("initial form of the zero polynomial".into()));
    }
    let weight = |u: &Exponents| -> i64 {
        u.iter()
            .zip(weights)
            .map(|(&e, &w)| e as i64 * w)
            .sum()
    };
    let min = f.terms.keys().map(weight).min().unwrap();
    Ok(Polynomial {
        terms: f
            .terms
            .iter()
            .filter(|(u, _)| weight(u) == min)
            .map(|(u, c)| (u.clone(), c.clone()))
            .collect(),
    })
}

/// Writes `f` with variables named by `names`, leading terms first.
pub fn render(f: &Polynomial, names: &[String], ord: &TermOrder) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (idx, (e, c)) in ord.sorted_terms(f).into_iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        if !abs.is_one() || e.iter().all(|&x| x == 0) {
            factors.push(abs.to_string());
        }
        for (i, &p) in e.iter().enumerate() {
            match p {
                0 => {}
                1 => factors.push(names[i].clone()),
                _ => factors.push(format!("{}^{}", names[i], p)),
            }
        }
        out.push_str(&factors.join("*"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(i: usize, n: usize) -> Polynomial {
        let mut e = vec![0u8; n];
        e[i] = 1;
        Polynomial::term(e, coef_int(1))
    }

    #[test]
    fn arithmetic_basics() {
        let x = var(0, 3);
        let y = var(1, 3);
        let f = x.add(&y);
        let g = x.sub(&y);
        let prod = f.mul(&g); // x^2 - y^2
        assert_eq!(prod.num_terms(), 2);
        assert!(prod.sub(&prod).is_zero());
        assert!(f.is_homogeneous());
        let inhom = f.add(&Polynomial::term(vec![0, 0, 0], coef_int(1)));
        assert!(!inhom.is_homogeneous());
    }

    #[test]
    fn grevlex_comparisons() {
        let ord = TermOrder::grevlex(3);
        // x > y > z in grevlex
        assert_eq!(ord.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Greater);
        assert_eq!(ord.cmp(&[0, 1, 0], &[0, 0, 1]), Ordering::Greater);
        // degree dominates
        assert_eq!(ord.cmp(&[2, 0, 0], &[0, 1, 1]), Ordering::Less.reverse());
        // x*z vs y^2: last nonzero of difference (1,-2,1) is positive => smaller
        assert_eq!(ord.cmp(&[1, 0, 1], &[0, 2, 0]), Ordering::Less);
    }

    #[test]
    fn weight_dominates_tiebreak() {
        let ord = TermOrder::new(vec![5, 0, 0]);
        // weight 5 vs 0: smaller weight leads
        assert_eq!(ord.cmp(&[1, 0, 0], &[0, 1, 0]), Ordering::Less);
    }

    #[test]
    fn toy_reduced_basis() {
        let n = 3;
        let names = ["x".to_string(), "y".to_string(), "z".to_string()];
        let gens = vec![var(0, n).sub(&var(1, n)), var(1, n).sub(&var(2, n))];
        let ord = TermOrder::grevlex(n);
        let basis = buchberger(&gens, &ord).unwrap();
        let rendered: Vec<String> = basis.iter().map(|g| render(g, &names, &ord)).collect();
        assert_eq!(rendered, vec!["x - z", "y - z"]);
        // any weight presents the same ideal: re-reducing the weighted basis
        // under grevlex recovers the canonical one
        for w in [vec![3, 1, 2], vec![-1, 4, 0]] {
            let weighted = buchberger(&gens, &TermOrder::new(w)).unwrap();
            assert_eq!(basis, buchberger(&weighted, &ord).unwrap());
        }
    }

    #[test]
    fn buchberger_idempotent_and_deterministic() {
        let n = 4;
        let f = var(0, n).mul(&var(3, n)).sub(&var(1, n).mul(&var(2, n)));
        let g = var(0, n).mul(&var(2, n)).sub(&var(1, n).mul(&var(1, n)));
        let ord = TermOrder::grevlex(n);
        let b1 = buchberger(&[f.clone(), g.clone()], &ord).unwrap();
        let b2 = buchberger(&b1, &ord).unwrap();
        assert_eq!(b1, b2);
        let b3 = buchberger(&[g, f], &ord).unwrap();
        assert_eq!(b1, b3);
    }

    #[test]
    fn initial_form_min_convention() {
        let n = 2;
        let f = var(0, n).add(&var(1, n));
        assert_eq!(initial_form(&f, &[0, 0]).unwrap(), f);
        let g = initial_form(&f, &[1, 0]).unwrap();
        assert_eq!(g, var(1, n));
        assert!(initial_form(&Polynomial::zero(), &[0, 0]).is_err());
        // max on -w keeps the same terms as min on w
        let h = initial_form(&f, &[-1, 0]).unwrap();
        assert_eq!(h, var(0, n));
    }

    #[test]
    fn rejects_inhomogeneous_with_weights() {
        let n = 2;
        let f = var(0, n).add(&Polynomial::term(vec![0, 0], coef_int(1)));
        assert!(buchberger(std::slice::from_ref(&f), &TermOrder::new(vec![1, 1])).is_err());
        assert!(buchberger(&[f], &TermOrder::grevlex(n)).is_ok());
    }
}
