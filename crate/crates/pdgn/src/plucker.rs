//! Pluecker coordinates, weight vectors, Pluecker ideal generators, weight
//! initial forms and ideal classification under the signed S_n action.

use crate::error::{Error, Result};
use crate::poly::{self, coef_int, Coef, Polynomial, TermOrder};
use itertools::Itertools;
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

/// An ordered basis of k-subsets of {1..n}; Pluecker variables are indexed
/// by their position in this list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetOrder {
    pub k: usize,
    pub n: usize,
    pub name: String,
    subsets: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl SubsetOrder {
    fn from_list(k: usize, n: usize, name: &str, subsets: Vec<Vec<usize>>) -> Self {
        let index = subsets
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        Self { k, n, name: name.to_string(), subsets, index }
    }

    /// k-subsets of {1..n} in lexicographic order.
    pub fn lex(k: usize, n: usize) -> Self {
        let subsets: Vec<Vec<usize>> = (1..=n).combinations(k).collect();
        Self::from_list(k, n, "lex", subsets)
    }

    pub fn by_name(name: &str, k: usize, n: usize) -> Result<Self> {
        match name {
            "lex" => Ok(Self::lex(k, n)),
            "paper36" if k == 3 && n == 6 => Ok(crate::gr36::paper36_order()),
            _ => Err(Error::InvalidInput(format!(
                "unknown subset order {name:?} for k={k}, n={n}"
            ))),
        }
    }

    pub(crate) fn from_raw(k: usize, n: usize, name: &str, subsets: Vec<Vec<usize>>) -> Self {
        Self::from_list(k, n, name, subsets)
    }

    pub fn len(&self) -> usize {
        self.subsets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsets.is_empty()
    }

    pub fn subsets(&self) -> &[Vec<usize>] {
        &self.subsets
    }

    pub fn position(&self, subset: &[usize]) -> Option<usize> {
        self.index.get(subset).copied()
    }

    pub fn variable_names(&self) -> Vec<String> {
        self.subsets
            .iter()
            .map(|s| format!("P_{{{}}}", s.iter().join("")))
            .collect()
    }

    /// Monomial with a single variable `P_subset`.
    pub fn var(&self, subset: &[usize]) -> Polynomial {
        let mut e = vec![0u8; self.len()];
        e[self.position(subset).expect("subset in order")] = 1;
        Polynomial::term(e, coef_int(1))
    }
}

/// Integer weight vector over the Pluecker variables of a fixed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector {
    pub order: SubsetOrder,
    pub entries: Vec<i64>,
}

#[derive(Serialize, Deserialize)]
struct WeightJson {
    k: usize,
    n: usize,
    order: String,
    weights: Vec<i64>,
}

impl WeightVector {
    pub fn new(order: SubsetOrder, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != order.len() {
            return Err(Error::InvalidInput(format!(
                "weight vector length {} does not match the {} subsets",
                entries.len(),
                order.len()
            )));
        }
        Ok(Self { order, entries })
    }

    pub fn get(&self, subset: &[usize]) -> i64 {
        self.entries[self.order.position(subset).expect("subset in order")]
    }

    pub fn negated(&self) -> Self {
        Self {
            order: self.order.clone(),
            entries: self.entries.iter().map(|&w| -w).collect(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "k": self.order.k,
            "n": self.order.n,
            "order": self.order.name,
            "weights": self.entries,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let parsed: WeightJson = serde_json::from_value(v.clone())
            .map_err(|e| Error::InvalidInput(format!("bad weight JSON: {e}")))?;
        let order = SubsetOrder::by_name(&parsed.order, parsed.k, parsed.n)?;
        WeightVector::new(order, parsed.weights)
    }
}

/// A reduced Groebner basis together with the weight order that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedBasis {
    pub order: SubsetOrder,
    pub weights: Vec<i64>,
    pub generators: Vec<Polynomial>,
}

impl ReducedBasis {
    pub fn render(&self) -> Vec<String> {
        let names = self.order.variable_names();
        let ord = TermOrder::new(self.weights.clone());
        self.generators
            .iter()
            .map(|g| poly::render(g, &names, &ord))
            .collect()
    }
}

/// Quadratic Pluecker relations generating the ideal of Gr(k,n); supported
/// for k=2 (any n >= 4) and (k,n) = (3,6).
pub fn plucker_generators(order: &SubsetOrder) -> Result<Vec<Polynomial>> {
    let (k, n) = (order.k, order.n);
    match (k, n) {
        (2, n) if n >= 4 => {}
        (3, 6) => {}
        _ => {
            return Err(Error::InvalidInput(format!(
                "Pluecker generators unsupported for k={k}, n={n}"
            )))
        }
    }
    Ok(exchange_relations(order))
}

/// The full family of quadratic exchange relations: for every (k-1)-subset I
/// and (k+1)-subset J, the signed sum over j in J of P_{I u j} P_{J \ j},
/// deduplicated with zero relations discarded.
pub fn exchange_relations(order: &SubsetOrder) -> Vec<Polynomial> {
    dedup_relations(raw_exchange_relations(order), order)
}

pub fn raw_exchange_relations(order: &SubsetOrder) -> Vec<Polynomial> {
    let (k, n) = (order.k, order.n);
    let mut rels = Vec::new();
    for i_set in (1..=n).combinations(k - 1) {
        for j_set in (1..=n).combinations(k + 1) {
            let mut rel = Polynomial::zero();
            for (t, &j) in j_set.iter().enumerate() {
                if i_set.contains(&j) {
                    continue;
                }
                let (first, sign1) = sort_with_sign(i_set.iter().copied().chain([j]));
                let second: Vec<usize> = j_set.iter().copied().filter(|&x| x != j).collect();
                let sign = if t % 2 == 0 { 1 } else { -1 } * sign1;
                let term = order.var(&first).mul(&order.var(&second));
                rel = rel.add(&term.scale(&coef_int(sign)));
            }
            if !rel.is_zero() {
                rels.push(rel);
            }
        }
    }
    rels
}

fn dedup_relations(rels: Vec<Polynomial>, order: &SubsetOrder) -> Vec<Polynomial> {
    let ord = TermOrder::grevlex(order.len());
    let mut seen = Vec::new();
    let mut out = Vec::new();
    for rel in rels {
        let (_, c) = ord.leading(&rel).expect("nonzero relation");
        let monic = rel.scale(&(Coef::one() / c.clone()));
        if !seen.contains(&monic) {
            seen.push(monic);
            out.push(rel);
        }
    }
    out
}

/// Sorts the index sequence, returning the sorted subset and the sign of the
/// sorting permutation; a repeated index gives sign 0.
pub fn sort_with_sign<I: IntoIterator<Item = usize>>(indices: I) -> (Vec<usize>, i64) {
    let mut v: Vec<usize> = indices.into_iter().collect();
    let mut sign = 1i64;
    for i in 0..v.len() {
        for j in (i + 1..v.len()).rev() {
            if v[j - 1] > v[j] {
                v.swap(j - 1, j);
                sign = -sign;
            }
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        return (v, 0);
    }
    (v, sign)
}

/// Which of the three pairings of a quadruple i<j<k<l a two-term initial
/// form drops.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Pairing {
    /// pairs {i,j} | {k,l}
    IjKl,
    /// pairs {i,k} | {j,l}
    IkJl,
    /// pairs {i,l} | {j,k}
    IlJk,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadrupleClass {
    pub quad: [usize; 4],
    /// `None` when all three pair-sums tie and the relation is kept in full.
    pub dropped: Option<Pairing>,
}

/// Initial forms of the three-term Gr(2,n) Pluecker relations under `w`
/// (MIN convention), with the per-quadruple record of the dropped pairing.
/// Fails when some quadruple attains its minimum pair-sum only once.
pub fn gr2_initial_generators(
    w: &WeightVector,
) -> Result<(Vec<Polynomial>, Vec<QuadrupleClass>)> {
    let order = &w.order;
    if order.k != 2 {
        return Err(Error::InvalidInput("gr2 initial generators need k = 2".into()));
    }
    let n = order.n;
    let mut gens = Vec::new();
    let mut classes = Vec::new();
    for quad in (1..=n).combinations(4) {
        let (i, j, k, l) = (quad[0], quad[1], quad[2], quad[3]);
        let pairings = [
            (Pairing::IjKl, [i, j], [k, l], 1),
            (Pairing::IkJl, [i, k], [j, l], -1),
            (Pairing::IlJk, [i, l], [j, k], 1),
        ];
        let sums: Vec<i64> = pairings
            .iter()
            .map(|(_, a, b, _)| w.get(a) + w.get(b))
            .collect();
        let min = *sums.iter().min().unwrap();
        let kept: Vec<usize> = (0..3).filter(|&t| sums[t] == min).collect();
        if kept.len() < 2 {
            return Err(Error::NotTropical([i, j, k, l]));
        }
        let dropped = if kept.len() == 3 {
            None
        } else {
            Some(pairings[(0..3).find(|t| !kept.contains(t)).unwrap()].0)
        };
        let mut f = Polynomial::zero();
        for &t in &kept {
            let (_, a, b, sign) = pairings[t];
            f = f.add(&order.var(&a).mul(&order.var(&b)).scale(&coef_int(sign)));
        }
        gens.push(f);
        classes.push(QuadrupleClass { quad: [i, j, k, l], dropped });
    }
    Ok((gens, classes))
}

/// Reduced Groebner basis of the ideal generated by `gens` under the weight
/// order (MIN convention, grevlex tie-break on the active index order).
pub fn buchberger_reduced(
    gens: &[Polynomial],
    order: &SubsetOrder,
    weights: &[i64],
) -> Result<ReducedBasis> {
    let ord = TermOrder::new(weights.to_vec());
    let generators = poly::buchberger(gens, &ord)?;
    Ok(ReducedBasis {
        order: order.clone(),
        weights: weights.to_vec(),
        generators,
    })
}

/// Reduced basis of `in_w(<gens>)`: Groebner basis under w-then-grevlex,
/// then initial forms, then reduction of that generating set.
pub fn initial_ideal(
    gens: &[Polynomial],
    order: &SubsetOrder,
    weights: &[i64],
) -> Result<ReducedBasis> {
    let basis = buchberger_reduced(gens, order, weights)?;
    let initials: Vec<Polynomial> = basis
        .generators
        .iter()
        .map(|g| poly::initial_form(g, weights))
        .collect::<Result<_>>()?;
    buchberger_reduced(&initials, order, weights)
}

/// True when no generator of the reduced basis is a single term. Requires a
/// binomial-or-monomial basis: reduction by two-term generators maps
/// monomials to monomials, so a monomial lies in the ideal exactly when a
/// monomial generator appears.
pub fn is_monomial_free(basis: &ReducedBasis) -> Result<bool> {
    for g in &basis.generators {
        if g.num_terms() > 2 {
            return Err(Error::UnsupportedShape(format!(
                "generator with {} terms; monomial-freeness is only decided for binomial bases",
                g.num_terms()
            )));
        }
    }
    Ok(basis.generators.iter().all(|g| g.num_terms() != 1))
}

/// Monomial-freeness certificate for reduced bases that need not be
/// binomial: a common zero with every coordinate nonzero rules out all
/// monomial members at once. Returns `Ok(true)` when every generator
/// vanishes at `point`; `Ok(false)` is inconclusive for the ideal and an
/// error when the point has a zero coordinate.
pub fn monomial_free_by_witness(basis: &ReducedBasis, point: &[i64]) -> Result<bool> {
    if point.len() != basis.order.len() {
        return Err(Error::InvalidInput("witness point length mismatch".into()));
    }
    if point.contains(&0) {
        return Err(Error::InvalidInput(
            "witness point must have nonzero coordinates".into(),
        ));
    }
    for g in &basis.generators {
        let mut value = Coef::from_integer(0.into());
        for (e, c) in &g.terms {
            let mut term = c.clone();
            for (i, &p) in e.iter().enumerate() {
                for _ in 0..p {
                    term *= coef_int(point[i]);
                }
            }
            value += term;
        }
        if !num_traits::Zero::is_zero(&value) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The signed action of a permutation of {1..n} on a polynomial in Pluecker
/// variables: P_I maps to sign(sort) * P_{sort(sigma(I))}, extended
/// multiplicatively.
pub fn signed_permutation_action(
    f: &Polynomial,
    sigma: &[usize],
    order: &SubsetOrder,
) -> Polynomial {
    let images: Vec<(usize, i64)> = order
        .subsets()
        .iter()
        .map(|s| {
            let (sorted, sign) = sort_with_sign(s.iter().map(|&x| sigma[x - 1]));
            debug_assert!(sign != 0, "permutation image has a repeat");
            (order.position(&sorted).expect("image subset in order"), sign)
        })
        .collect();
    let mut out = Polynomial::zero();
    for (e, c) in &f.terms {
        let mut img = vec![0u8; e.len()];
        let mut sign = 1i64;
        for (var, &p) in e.iter().enumerate() {
            if p == 0 {
                continue;
            }
            let (tgt, s) = images[var];
            img[tgt] += p;
            if p % 2 == 1 {
                sign *= s;
            }
        }
        out.add_term(img, c * coef_int(sign));
    }
    out
}

/// Index transport of a weight vector: entry at sigma(I) is the old entry
/// at I. No signs are involved.
pub fn permute_weight_vector(w: &WeightVector, sigma: &[usize]) -> WeightVector {
    let mut entries = vec![0i64; w.entries.len()];
    for (pos, s) in w.order.subsets().iter().enumerate() {
        let (sorted, _) = sort_with_sign(s.iter().map(|&x| sigma[x - 1]));
        entries[w.order.position(&sorted).expect("image in order")] = w.entries[pos];
    }
    WeightVector { order: w.order.clone(), entries }
}

/// Canonical form of the ideal spanned by `gens`: its reduced Groebner basis
/// under the zero-weight grevlex order.
pub fn canonical_basis(gens: &[Polynomial], order: &SubsetOrder) -> Result<ReducedBasis> {
    buchberger_reduced(gens, order, &vec![0; order.len()])
}

/// Two ideals are equal exactly when their canonical reduced bases agree.
pub fn ideal_equal(a: &[Polynomial], b: &[Polynomial], order: &SubsetOrder) -> Result<bool> {
    Ok(canonical_basis(a, order)?.generators == canonical_basis(b, order)?.generators)
}

#[derive(Clone, Debug)]
pub struct IdealClass {
    /// Indices into the input list, in input order.
    pub members: Vec<usize>,
    /// For each non-representative member, a permutation mapping the
    /// representative's ideal onto the member's ideal.
    pub witnesses: Vec<(usize, Vec<usize>)>,
}

fn invert(sigma: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; sigma.len()];
    for (i, &s) in sigma.iter().enumerate() {
        inv[s - 1] = i + 1;
    }
    inv
}

/// Whether `sigma` maps the ideal of `a` onto the ideal of `b`, by two-way
/// membership against the reduced bases (each is a Groebner basis for its
/// own weight order, so reduction to zero decides membership exactly).
fn maps_ideal_onto(a: &ReducedBasis, b: &ReducedBasis, sigma: &[usize]) -> bool {
    let ord_b = TermOrder::new(b.weights.clone());
    let order = &a.order;
    for g in &a.generators {
        let moved = signed_permutation_action(g, sigma, order);
        if !poly::normal_form(&moved, &b.generators, &ord_b).is_zero() {
            return false;
        }
    }
    let inv = invert(sigma);
    let ord_a = TermOrder::new(a.weights.clone());
    for h in &b.generators {
        let moved = signed_permutation_action(h, &inv, order);
        if !poly::normal_form(&moved, &a.generators, &ord_a).is_zero() {
            return false;
        }
    }
    true
}

/// Partition of the given ideals into S_n-equivalence classes: two ideals
/// are equivalent when some signed permutation maps one onto the other.
/// Witnesses are the lexicographically first permutations found.
pub fn orbit_classify(bases: &[ReducedBasis], n: usize) -> Result<Vec<IdealClass>> {
    let all_perms: Vec<Vec<usize>> = (1..=n).permutations(n).collect();
    let mut classes: Vec<IdealClass> = Vec::new();
    for (idx, basis) in bases.iter().enumerate() {
        let mut joined = false;
        for class in classes.iter_mut() {
            let rep = &bases[class.members[0]];
            let witness = all_perms
                .par_iter()
                .find_first(|sigma| maps_ideal_onto(rep, basis, sigma));
            if let Some(sigma) = witness {
                class.members.push(idx);
                class.witnesses.push((idx, sigma.clone()));
                joined = true;
                break;
            }
        }
        if !joined {
            classes.push(IdealClass { members: vec![idx], witnesses: Vec::new() });
        }
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lex_order_layout() {
        let o = SubsetOrder::lex(2, 5);
        assert_eq!(o.len(), 10);
        assert_eq!(o.subsets()[0], vec![1, 2]);
        assert_eq!(o.subsets()[7], vec![3, 4]);
        assert_eq!(o.position(&[4, 5]), Some(9));
    }

    #[test]
    fn sort_with_sign_examples() {
        assert_eq!(sort_with_sign([1, 2]), (vec![1, 2], 1));
        assert_eq!(sort_with_sign([2, 1]), (vec![1, 2], -1));
        assert_eq!(sort_with_sign([3, 1, 2]), (vec![1, 2, 3], 1));
        assert_eq!(sort_with_sign([1, 3, 2]), (vec![1, 2, 3], -1));
        assert_eq!(sort_with_sign([2, 2]).1, 0);
    }

    #[test]
    fn gr2_generators() {
        let o = SubsetOrder::lex(2, 4);
        let gens = plucker_generators(&o).unwrap();
        assert_eq!(gens.len(), 1);
        let want = o
            .var(&[1, 2])
            .mul(&o.var(&[3, 4]))
            .sub(&o.var(&[1, 3]).mul(&o.var(&[2, 4])))
            .add(&o.var(&[1, 4]).mul(&o.var(&[2, 3])));
        assert_eq!(gens[0], want);
        let ord = TermOrder::grevlex(o.len());
        let txt = poly::render(&gens[0], &o.variable_names(), &ord);
        assert_eq!(txt, "P_{14}*P_{23} - P_{13}*P_{24} + P_{12}*P_{34}");

        let o5 = SubsetOrder::lex(2, 5);
        assert_eq!(plucker_generators(&o5).unwrap().len(), 5);
        assert!(plucker_generators(&SubsetOrder::lex(3, 7)).is_err());
    }

    #[test]
    fn gr36_generator_family_self_consistent() {
        let o = SubsetOrder::lex(3, 6);
        let dedup = plucker_generators(&o).unwrap();
        let raw = raw_exchange_relations(&o);
        assert!(raw.len() > dedup.len());
        let w = vec![0i64; o.len()];
        let a = buchberger_reduced(&dedup, &o, &w).unwrap();
        let b = buchberger_reduced(&raw, &o, &w).unwrap();
        assert_eq!(a.generators, b.generators);
        assert!(!a.generators.is_empty());
    }

    #[test]
    fn initial_generators_for_pentagon_palm_weights() {
        // plabic weights of the palm pentagon, lex order on pairs
        let o = SubsetOrder::lex(2, 5);
        let w = WeightVector::new(o.clone(), vec![0, 0, 0, 0, 0, 0, 0, 2, 1, 1]).unwrap();
        let (gens, classes) = gr2_initial_generators(&w).unwrap();
        assert_eq!(gens.len(), 5);
        let cls: HashMap<[usize; 4], Option<Pairing>> =
            classes.iter().map(|c| (c.quad, c.dropped)).collect();
        // quadruple (2,3,4,5): sums 1, 1, 2 -> drops the il|jk pairing
        assert_eq!(cls[&[2, 3, 4, 5]], Some(Pairing::IlJk));
        let q = classes.iter().position(|c| c.quad == [2, 3, 4, 5]).unwrap();
        let want = o
            .var(&[2, 3])
            .mul(&o.var(&[4, 5]))
            .sub(&o.var(&[2, 4]).mul(&o.var(&[3, 5])));
        assert_eq!(gens[q], want);
        // the same two-term form from the negated tree weights (a-degrees)
        let tree = WeightVector::new(o.clone(), vec![0, 2, 2, 1, 2, 2, 1, 0, 1, 1]).unwrap();
        let (gens_t, classes_t) = gr2_initial_generators(&tree.negated()).unwrap();
        let qt = classes_t.iter().position(|c| c.quad == [2, 3, 4, 5]).unwrap();
        assert_eq!(classes_t[qt].dropped, Some(Pairing::IlJk));
        assert_eq!(gens_t[qt], gens[q]);

        // zero weights keep everything
        let zero = WeightVector::new(o.clone(), vec![0; 10]).unwrap();
        let (gens0, classes0) = gr2_initial_generators(&zero).unwrap();
        assert!(classes0.iter().all(|c| c.dropped.is_none()));
        assert!(gens0.iter().all(|g| g.num_terms() == 3));

        // a four-point violation is rejected
        let o4 = SubsetOrder::lex(2, 4);
        let bad = WeightVector::new(o4, vec![2, 1, 0, 0, 1, 2]).unwrap();
        match gr2_initial_generators(&bad) {
            Err(Error::NotTropical(q)) => assert_eq!(q, [1, 2, 3, 4]),
            other => panic!("expected four-point violation, got {other:?}"),
        }
    }

    #[test]
    fn quadric_is_its_own_basis() {
        let o = SubsetOrder::lex(2, 4);
        let gens = plucker_generators(&o).unwrap();
        let basis = buchberger_reduced(&gens, &o, &[0; 6]).unwrap();
        assert_eq!(basis.generators.len(), 1);
        assert_eq!(basis.generators[0], gens[0]);
    }

    #[test]
    fn signed_action_basics() {
        let o = SubsetOrder::lex(2, 4);
        let id = vec![1, 2, 3, 4];
        let gens = plucker_generators(&o).unwrap();
        assert_eq!(signed_permutation_action(&gens[0], &id, &o), gens[0]);
        // transposition (1 2): P_12 -> -P_12
        let tau = vec![2, 1, 3, 4];
        let p12 = o.var(&[1, 2]);
        let moved = signed_permutation_action(&p12, &tau, &o);
        assert_eq!(moved, p12.scale(&coef_int(-1)));
    }

    #[test]
    fn plucker_ideal_is_sn_invariant() {
        for o in [SubsetOrder::lex(2, 5), SubsetOrder::lex(3, 6)] {
            let gens = plucker_generators(&o).unwrap();
            let canon = canonical_basis(&gens, &o).unwrap();
            let mut perms: Vec<Vec<usize>> = (1..=o.n).permutations(o.n).collect();
            // a deterministic spread of 20 permutations
            let step = perms.len() / 20;
            perms = perms.into_iter().step_by(step.max(1)).take(20).collect();
            for sigma in perms {
                let moved: Vec<Polynomial> = gens
                    .iter()
                    .map(|g| signed_permutation_action(g, &sigma, &o))
                    .collect();
                let canon2 = canonical_basis(&moved, &o).unwrap();
                assert_eq!(canon.generators, canon2.generators, "sigma={sigma:?}");
            }
        }
    }

    #[test]
    fn initial_ideal_at_zero_weight_is_identity() {
        let o = SubsetOrder::lex(2, 5);
        let gens = plucker_generators(&o).unwrap();
        let w = vec![0i64; o.len()];
        let a = initial_ideal(&gens, &o, &w).unwrap();
        let b = buchberger_reduced(&gens, &o, &w).unwrap();
        assert_eq!(a.generators, b.generators);
    }

    #[test]
    fn initial_ideal_matches_two_term_generators_for_palm() {
        let o = SubsetOrder::lex(2, 5);
        let gens = plucker_generators(&o).unwrap();
        let w = WeightVector::new(o.clone(), vec![0, 0, 0, 0, 0, 0, 0, 2, 1, 1]).unwrap();
        let ideal = initial_ideal(&gens, &o, &w.entries).unwrap();
        assert!(ideal.generators.iter().all(|g| g.num_terms() == 2));
        let (two_term, _) = gr2_initial_generators(&w).unwrap();
        assert!(ideal_equal(&ideal.generators, &two_term, &o).unwrap());
        assert!(is_monomial_free(&ideal).unwrap());
    }

    #[test]
    fn monomial_freeness_cases() {
        let o = SubsetOrder::lex(2, 4);
        let sq = o.var(&[1, 2]).mul(&o.var(&[1, 2]));
        let basis = buchberger_reduced(&[sq], &o, &[0; 6]).unwrap();
        assert!(!is_monomial_free(&basis).unwrap());
        let binom = o.var(&[1, 2]).mul(&o.var(&[3, 4])).sub(&o.var(&[1, 3]).mul(&o.var(&[2, 4])));
        let basis2 = buchberger_reduced(&[binom], &o, &[0; 6]).unwrap();
        assert!(is_monomial_free(&basis2).unwrap());
        let tri = plucker_generators(&o).unwrap();
        let basis3 = buchberger_reduced(&tri, &o, &[0; 6]).unwrap();
        assert!(is_monomial_free(&basis3).is_err());
    }

    #[test]
    fn orbit_classify_identical_inputs() {
        let o = SubsetOrder::lex(2, 4);
        let w = WeightVector::new(o.clone(), vec![0, 0, 0, 0, 0, 0]).unwrap();
        let gens = plucker_generators(&o).unwrap();
        let b = initial_ideal(&gens, &o, &w.entries).unwrap();
        let classes = orbit_classify(&[b.clone(), b], 4).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].members, vec![0, 1]);
    }

    #[test]
    fn action_on_weights_transports_initial_ideals() {
        // canonical basis of in_{sigma w}(I) equals sigma applied to the
        // basis of in_w(I)
        let o = SubsetOrder::lex(2, 5);
        let gens = plucker_generators(&o).unwrap();
        let w = WeightVector::new(o.clone(), vec![0, 0, 0, 0, 0, 0, 0, 2, 1, 1]).unwrap();
        let sigma = vec![3, 1, 4, 5, 2];
        let moved_w = permute_weight_vector(&w, &sigma);
        let lhs = initial_ideal(&gens, &o, &moved_w.entries).unwrap();
        let rhs: Vec<Polynomial> = initial_ideal(&gens, &o, &w.entries)
            .unwrap()
            .generators
            .iter()
            .map(|g| signed_permutation_action(g, &sigma, &o))
            .collect();
        assert!(ideal_equal(&lhs.generators, &rhs, &o).unwrap());
    }
}
