//! Submonoid generation and everything built on it: generating-set checks,
//! irredundancy, rank formulas, exhaustive rank search, rank certificates,
//! relative rank and shortest words.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{enumerate_class, MonoidSet};
use crate::error::{Error, Result};
use crate::generators::{beta_stratum_size, family, gamma, FamilyName};
use crate::transformation::{EndoClass, Transformation};

/// Default size guard for [`generate`].
pub const DEFAULT_CLOSURE_LIMIT: usize = 10_000_000;

/// Default number of subsets an exhaustive search may test.
pub const DEFAULT_SUBSET_BUDGET: u64 = 5_000_000;

fn common_n(gens: &[Transformation]) -> Result<usize> {
    let first = gens.first().ok_or(Error::EmptyGenerators)?;
    let n = first.n();
    if let Some(bad) = gens.iter().find(|g| g.n() != n) {
        return Err(Error::SizeMismatch {
            left: n,
            right: bad.n(),
        });
    }
    Ok(n)
}

/// The submonoid `⟨gens⟩`, with the default size guard.
pub fn generate(gens: &[Transformation]) -> Result<MonoidSet> {
    generate_with_limit(gens, DEFAULT_CLOSURE_LIMIT)
}

/// Worklist closure: starting from the identity, right-multiply each newly
/// found element by every generator until nothing new appears.
pub fn generate_with_limit(gens: &[Transformation], limit: usize) -> Result<MonoidSet> {
    let n = common_n(gens)?;
    let id = Transformation::identity(n)?;
    let mut seen: HashSet<Transformation> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while !frontier.is_empty() {
        let products: Vec<Transformation> = frontier
            .par_iter()
            .flat_map_iter(|x| gens.iter().map(move |g| x.then(g)))
            .collect();
        frontier = Vec::new();
        for p in products {
            if !seen.contains(&p) {
                seen.insert(p.clone());
                frontier.push(p);
                if seen.len() > limit {
                    return Err(Error::ClosureTooLarge { limit });
                }
            }
        }
    }
    MonoidSet::from_elements(n, seen)
}

/// Whether `⟨gens⟩` is exactly the class `class` of `P_n`.
pub fn generates_class(gens: &[Transformation], class: EndoClass, n: usize) -> Result<bool> {
    if common_n(gens)? != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: gens[0].n(),
        });
    }
    let target = enumerate_class(class, n)?;
    if !gens.iter().all(|g| target.contains(g)) {
        return Ok(false);
    }
    let generated = generate_with_limit(gens, target.len() + 1)?;
    Ok(generated == target)
}

/// Whether `gens` generates `class` and no single member can be dropped.
pub fn irredundant(gens: &[Transformation], class: EndoClass, n: usize) -> Result<bool> {
    if !generates_class(gens, class, n)? {
        return Ok(false);
    }
    for skip in 0..gens.len() {
        let rest: Vec<Transformation> = gens
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != skip)
            .map(|(_, g)| g.clone())
            .collect();
        // the identity alone always generates {1}
        let still = if rest.is_empty() {
            enumerate_class(class, n)?.len() == 1
        } else {
            generates_class(&rest, class, n)?
        };
        if still {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Rank of `End P_n`, `wEnd P_n` or `swEnd P_n` from the closed formulas (`n ≥ 2`).
pub fn rank_formula(class: EndoClass, n: usize) -> Result<usize> {
    if n < 2 {
        return Err(Error::VertexCount { n, min: 2 });
    }
    match class {
        EndoClass::End => Ok(1 + (n - 1) / 2 + beta_stratum_size(n)),
        EndoClass::WEnd => Ok(n + beta_stratum_size(n)),
        EndoClass::SWEnd => Ok(n.div_ceil(2) + 1),
        other => Err(Error::NoRankFormula(other)),
    }
}

/// Multiplication table of a finite monoid, indexed by lexicographic position.
pub struct CayleyTable {
    size: usize,
    identity: usize,
    table: Vec<u32>,
}

impl CayleyTable {
    pub fn new(monoid: &MonoidSet) -> Result<Self> {
        let size = monoid.len();
        let identity = monoid
            .index_of(&Transformation::identity(monoid.n())?)
            .ok_or_else(|| Error::Consistency("monoid lacks the identity".into()))?;
        let elements = monoid.elements();
        let rows: Vec<Vec<u32>> = elements
            .par_iter()
            .map(|a| {
                elements
                    .iter()
                    .map(|b| {
                        monoid
                            .index_of(&a.then(b))
                            .map(|k| k as u32)
                            .ok_or_else(|| Error::Consistency(format!("{a}·{b} leaves the monoid")))
                    })
                    .collect::<Result<Vec<u32>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CayleyTable {
            size,
            identity,
            table: rows.concat(),
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn product(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b] as usize
    }

    /// Size of the submonoid generated by the given element indices.
    pub fn closure_size(&self, gens: &[usize]) -> usize {
        let mut seen = vec![false; self.size];
        let mut stack = vec![self.identity];
        seen[self.identity] = true;
        let mut count = 1;
        while let Some(x) = stack.pop() {
            for &g in gens {
                let p = self.product(x, g);
                if !seen[p] {
                    seen[p] = true;
                    count += 1;
                    stack.push(p);
                }
            }
        }
        count
    }

    pub fn generates_all(&self, gens: &[usize]) -> bool {
        self.closure_size(gens) == self.size
    }
}

/// Advances `combo` to the next `k`-subset of `0..m` in lexicographic order.
fn next_combination(combo: &mut [usize], m: usize) -> bool {
    let k = combo.len();
    for pos in (0..k).rev() {
        if combo[pos] < m - k + pos {
            combo[pos] += 1;
            for later in pos + 1..k {
                combo[later] = combo[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Smallest `k` such that some `k` elements generate the class, found by
/// testing subsets in increasing size and lexicographic order.
///
/// The identity is never a candidate, since dropping it from a generating set
/// leaves a generating set. Returns `None` once `budget` subsets have been
/// tested without an answer.
pub fn brute_force_rank(class: EndoClass, n: usize, budget: u64) -> Result<Option<usize>> {
    let monoid = enumerate_class(class, n)?;
    let table = CayleyTable::new(&monoid)?;
    if table.size() == 1 {
        return Ok(Some(0));
    }
    let candidates: Vec<usize> = (0..table.size()).filter(|&k| k != table.identity()).collect();
    let m = candidates.len();
    let mut tested = 0u64;
    for k in 1..=m {
        let mut combo: Vec<usize> = (0..k).collect();
        let mut gens = vec![0; k];
        loop {
            if tested >= budget {
                return Ok(None);
            }
            tested += 1;
            for (slot, &c) in gens.iter_mut().zip(&combo) {
                *slot = candidates[c];
            }
            if table.generates_all(&gens) {
                return Ok(Some(k));
            }
            if !next_combination(&mut combo, m) {
                break;
            }
        }
    }
    Err(Error::Consistency(format!(
        "{class} P_{n} is not generated by all its elements"
    )))
}

/// Members of a generating family sorted by inversion count and End-membership.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub contains_tau: bool,
    /// endomorphisms with no inversions (`τ`, or the identity)
    pub end_inv0: usize,
    pub end_inv1: usize,
    pub end_inv2: usize,
    pub end_inv_more: usize,
    /// weak, non-endomorphism members with no inversions
    pub non_end_inv0: usize,
    pub non_end_other: usize,
}

impl Census {
    pub fn of(members: &[Transformation]) -> Result<Self> {
        let n = common_n(members)?;
        let tau = Transformation::reversal(n)?;
        let mut census = Census {
            contains_tau: members.contains(&tau),
            ..Census::default()
        };
        for m in members {
            let inv = m.inversions().len();
            match (m.is_endomorphism(), inv) {
                (true, 0) => census.end_inv0 += 1,
                (true, 1) => census.end_inv1 += 1,
                (true, 2) => census.end_inv2 += 1,
                (true, _) => census.end_inv_more += 1,
                (false, 0) => census.non_end_inv0 += 1,
                (false, _) => census.non_end_other += 1,
            }
        }
        Ok(census)
    }
}

/// Evidence that the generating family for `End` or `wEnd` has minimum size.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankCertificate {
    pub class: EndoClass,
    pub n: usize,
    pub family_size: usize,
    pub formula_value: usize,
    pub census: Census,
    /// the family generates the whole class
    pub closure_ok: bool,
    /// the census reaches every per-stratum lower bound
    pub lower_bound_ok: bool,
    /// the per-stratum bounds are over disjoint strata and add up to the formula
    pub strata_sum_ok: bool,
    pub irredundant: bool,
}

impl RankCertificate {
    pub fn is_valid(&self) -> bool {
        self.closure_ok
            && self.lower_bound_ok
            && self.strata_sum_ok
            && self.irredundant
            && self.family_size == self.formula_value
    }
}

/// Builds `A` (for `End`) or `B` (for `wEnd`) and checks it against the rank formula.
pub fn rank_certificate(class: EndoClass, n: usize) -> Result<RankCertificate> {
    let name = match class {
        EndoClass::End => FamilyName::A,
        EndoClass::WEnd => FamilyName::B,
        other => return Err(Error::NoRankFormula(other)),
    };
    let fam = family(name, n)?;
    let formula_value = rank_formula(class, n)?;
    let census = Census::of(&fam.members)?;

    let need_inv1 = (n - 1) / 2;
    let need_inv2 = beta_stratum_size(n);
    let need_non_end = if class == EndoClass::WEnd { n / 2 } else { 0 };
    let lower_bound_ok = census.contains_tau
        && census.end_inv1 >= need_inv1
        && census.end_inv2 >= need_inv2
        && census.non_end_inv0 >= need_non_end;
    let strata_sum_ok = 1 + need_inv1 + need_inv2 + need_non_end == formula_value;

    let closure_ok = generates_class(&fam.members, class, n)?;
    let irredundant = closure_ok && irredundant(&fam.members, class, n)?;
    Ok(RankCertificate {
        class,
        n,
        family_size: fam.len(),
        formula_value,
        census,
        closure_ok,
        lower_bound_ok,
        strata_sum_ok,
        irredundant,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RelativeRankCheck {
    /// `End P_n ∪ {γ_1,…,γ_⌊n/2⌋}` generates `wEnd P_n`
    pub upper_ok: bool,
    /// no `⌊n/2⌋ - 1` elements of `wEnd P_n \ End P_n` suffice; `None` if over budget
    pub lower_ok: Option<bool>,
}

fn binomial_capped(m: usize, k: usize, cap: u64) -> u64 {
    let mut acc: u128 = 1;
    for t in 0..k {
        acc = acc * (m - t) as u128 / (t + 1) as u128;
        if acc > cap as u128 {
            return cap.saturating_add(1);
        }
    }
    acc as u64
}

/// Checks that the relative rank of `wEnd P_n` modulo `End P_n` is `⌊n/2⌋`.
///
/// Only subsets of size exactly `⌊n/2⌋ - 1` are tested: a smaller set that
/// worked would extend to one of that size. When more than `budget`
/// subsets would be needed, `lower_ok` is `None`.
pub fn relative_rank_check(n: usize, budget: u64) -> Result<RelativeRankCheck> {
    let wend = enumerate_class(EndoClass::WEnd, n)?;
    let end = enumerate_class(EndoClass::End, n)?;
    let half = n / 2;

    let mut gens: Vec<Transformation> = end.elements().to_vec();
    for i in 1..=half {
        gens.push(gamma(n, i)?);
    }
    let upper_ok = generate_with_limit(&gens, wend.len() + 1)? == wend;

    let lower_ok = if half == 0 {
        Some(true)
    } else {
        let k = half - 1;
        let extra: Vec<usize> = wend
            .iter()
            .enumerate()
            .filter(|(_, t)| !end.contains(t))
            .map(|(idx, _)| idx)
            .collect();
        if k > extra.len() || binomial_capped(extra.len(), k, budget) > budget {
            None
        } else {
            let table = CayleyTable::new(&wend)?;
            let base: Vec<usize> = end.iter().map(|t| wend.index_of(t).expect("End ⊆ wEnd")).collect();
            let mut combo: Vec<usize> = (0..k).collect();
            let mut found = false;
            loop {
                let mut g = base.clone();
                g.extend(combo.iter().map(|&c| extra[c]));
                if table.generates_all(&g) {
                    found = true;
                    break;
                }
                if k == 0 || !next_combination(&mut combo, extra.len()) {
                    break;
                }
            }
            Some(!found)
        }
    };
    Ok(RelativeRankCheck { upper_ok, lower_ok })
}

/// Shortest word `g_{w_1} g_{w_2} ⋯` (applied left to right) equal to
/// `target`, or `None` if `target ∉ ⟨gens⟩`. The identity is the empty word.
pub fn word_for(gens: &[Transformation], target: &Transformation) -> Result<Option<Vec<usize>>> {
    word_for_with_limit(gens, target, DEFAULT_CLOSURE_LIMIT)
}

pub fn word_for_with_limit(
    gens: &[Transformation],
    target: &Transformation,
    limit: usize,
) -> Result<Option<Vec<usize>>> {
    let n = common_n(gens)?;
    if target.n() != n {
        return Err(Error::SizeMismatch {
            left: n,
            right: target.n(),
        });
    }
    let id = Transformation::identity(n)?;
    // element -> (predecessor, generator index)
    let mut parent: HashMap<Transformation, Option<(Transformation, usize)>> = HashMap::new();
    parent.insert(id.clone(), None);
    let mut queue = std::collections::VecDeque::from([id]);
    let mut found = parent.contains_key(target);
    while !found {
        let Some(x) = queue.pop_front() else { break };
        for (gi, g) in gens.iter().enumerate() {
            let p = x.then(g);
            if parent.contains_key(&p) {
                continue;
            }
            parent.insert(p.clone(), Some((x.clone(), gi)));
            if parent.len() > limit {
                return Err(Error::ClosureTooLarge { limit });
            }
            if &p == target {
                found = true;
                break;
            }
            queue.push_back(p);
        }
    }
    if !found {
        return Ok(None);
    }
    let mut word = Vec::new();
    let mut cur = target.clone();
    while let Some(Some((prev, gi))) = parent.get(&cur) {
        word.push(*gi);
        cur = prev.clone();
    }
    word.reverse();
    Ok(Some(word))
}

/// Evaluates a word over `gens`, left to right, starting from the identity.
pub fn evaluate_word(gens: &[Transformation], word: &[usize]) -> Result<Transformation> {
    let n = common_n(gens)?;
    let mut acc = Transformation::identity(n)?;
    for &w in word {
        let g = gens
            .get(w)
            .ok_or_else(|| Error::Precondition(format!("word letter {w} has no generator")))?;
        acc = acc.then(g);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{alpha, family, FamilyName};

    fn t(s: &str) -> Transformation {
        s.parse().unwrap()
    }

    #[test]
    fn generate_small() {
        let r = generate(&[Transformation::reversal(4).unwrap()]).unwrap();
        assert_eq!(r.len(), 2);
        let a4 = family(FamilyName::A, 4).unwrap();
        assert_eq!(
            generate(&a4.members).unwrap(),
            enumerate_class(EndoClass::End, 4).unwrap()
        );
        let b5 = family(FamilyName::B, 5).unwrap();
        assert_eq!(generate(&b5.members).unwrap().len(), 259);
        assert!(generate(&[]).is_err());
        assert!(generate(&[t("1,2"), t("1,2,3")]).is_err());
    }

    #[test]
    fn generate_is_idempotent() {
        let b4 = family(FamilyName::B, 4).unwrap();
        let once = generate(&b4.members).unwrap();
        let twice = generate(once.elements()).unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn size_guard() {
        let b6 = family(FamilyName::B, 6).unwrap();
        assert!(matches!(
            generate_with_limit(&b6.members, 100),
            Err(Error::ClosureTooLarge { limit: 100 })
        ));
    }

    #[test]
    fn generating_class_checks() {
        let a7 = family(FamilyName::A, 7).unwrap();
        assert!(generates_class(&a7.members, EndoClass::End, 7).unwrap());
        let no_tau: Vec<_> = family(FamilyName::ADoublePrime, 6).unwrap().members[1..].to_vec();
        assert!(!generates_class(&no_tau, EndoClass::End, 6).unwrap());
        let sw3 = family(FamilyName::SwGens, 3).unwrap();
        assert!(generates_class(&sw3.members, EndoClass::SWEnd, 3).unwrap());
    }

    #[test]
    fn irredundancy() {
        assert!(irredundant(&family(FamilyName::A, 6).unwrap().members, EndoClass::End, 6).unwrap());
        assert!(irredundant(&family(FamilyName::B, 5).unwrap().members, EndoClass::WEnd, 5).unwrap());
        let mut padded = family(FamilyName::A, 4).unwrap().members;
        padded.push(Transformation::identity(4).unwrap());
        assert!(!irredundant(&padded, EndoClass::End, 4).unwrap());
    }

    #[test]
    fn formulas() {
        assert_eq!(rank_formula(EndoClass::End, 8).unwrap(), 6);
        assert_eq!(rank_formula(EndoClass::WEnd, 6).unwrap(), 7);
        assert_eq!(rank_formula(EndoClass::SWEnd, 4).unwrap(), 3);
        assert!(rank_formula(EndoClass::Aut, 4).is_err());
        assert!(rank_formula(EndoClass::End, 1).is_err());
    }

    #[test]
    fn exhaustive_ranks() {
        assert_eq!(
            brute_force_rank(EndoClass::End, 4, DEFAULT_SUBSET_BUDGET).unwrap(),
            Some(2)
        );
        assert_eq!(
            brute_force_rank(EndoClass::SWEnd, 3, DEFAULT_SUBSET_BUDGET).unwrap(),
            Some(3)
        );
        assert_eq!(
            brute_force_rank(EndoClass::SWEnd, 4, DEFAULT_SUBSET_BUDGET).unwrap(),
            Some(3)
        );
        assert_eq!(brute_force_rank(EndoClass::End, 1, 10).unwrap(), Some(0));
        // rank of End P_5 is 3, so a 10-subset budget cannot certify it
        assert_eq!(brute_force_rank(EndoClass::End, 5, 10).unwrap(), None);
    }

    #[test]
    fn combinations_in_order() {
        let mut c = vec![0, 1];
        let mut all = vec![c.clone()];
        while next_combination(&mut c, 4) {
            all.push(c.clone());
        }
        assert_eq!(
            all,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn certificates() {
        let c = rank_certificate(EndoClass::End, 7).unwrap();
        assert!(c.is_valid());
        assert_eq!(c.family_size, 5);
        let w = rank_certificate(EndoClass::WEnd, 8).unwrap();
        assert!(w.is_valid());
        assert_eq!(w.family_size, 10);
        let e2 = rank_certificate(EndoClass::End, 2).unwrap();
        assert!(e2.is_valid());
        assert_eq!(e2.family_size, 1);
        assert!(rank_certificate(EndoClass::SWEnd, 4).is_err());
    }

    #[test]
    fn relative_rank() {
        for n in [2, 4] {
            let r = relative_rank_check(n, DEFAULT_SUBSET_BUDGET).unwrap();
            assert_eq!(
                r,
                RelativeRankCheck {
                    upper_ok: true,
                    lower_ok: Some(true)
                }
            );
        }
        assert!(relative_rank_check(6, 10).unwrap().upper_ok);
        assert_eq!(relative_rank_check(6, 10).unwrap().lower_ok, None);
    }

    #[test]
    fn words() {
        let a4 = family(FamilyName::A, 4).unwrap();
        assert_eq!(
            word_for(&a4.members, &Transformation::identity(4).unwrap()).unwrap(),
            Some(vec![])
        );
        let w = word_for(&a4.members, &alpha(4, 2).unwrap()).unwrap().unwrap();
        assert_eq!(evaluate_word(&a4.members, &w).unwrap(), t("3,2,1,2"));
        assert_eq!(w, vec![0, 1]);
        let b5 = family(FamilyName::B, 5).unwrap();
        let g = crate::generators::gamma(5, 4).unwrap();
        let w = word_for(&b5.members, &g).unwrap().unwrap();
        assert_eq!(evaluate_word(&b5.members, &w).unwrap(), g);
        // a constant is not reachable from End generators
        assert_eq!(word_for(&a4.members, &t("1,1,1,1")).unwrap(), None);
    }
}
