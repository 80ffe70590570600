//! Exhaustive generation of the endomorphism classes of `P_n` and
//! memory-light counters for `End P_n` and `wEnd P_n`.

use std::collections::HashMap;
use std::io::{self, Write};

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::transformation::{EndoClass, Transformation};

/// Default largest `n` for which a class is materialized.
pub const DEFAULT_CAP: usize = 12;

/// A deduplicated set of transformations of one `{1,…,n}`, kept in
/// lexicographic order of image sequences.
#[derive(Clone, Debug)]
pub struct MonoidSet {
    n: usize,
    elements: Vec<Transformation>,
    index: HashMap<Transformation, usize>,
}

impl MonoidSet {
    /// Collects `items` into a set, removing duplicates and sorting.
    pub fn from_elements(n: usize, items: impl IntoIterator<Item = Transformation>) -> Result<Self> {
        let mut elements: Vec<Transformation> = items.into_iter().collect();
        if let Some(bad) = elements.iter().find(|t| t.n() != n) {
            return Err(Error::SizeMismatch {
                left: n,
                right: bad.n(),
            });
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(Self::from_sorted(n, elements))
    }

    fn from_sorted(n: usize, elements: Vec<Transformation>) -> Self {
        let index = elements.iter().enumerate().map(|(k, t)| (t.clone(), k)).collect();
        MonoidSet { n, elements, index }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn cardinality(&self) -> BigUint {
        BigUint::from(self.elements.len())
    }

    pub fn elements(&self) -> &[Transformation] {
        &self.elements
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Transformation> {
        self.elements.iter()
    }

    pub fn contains(&self, t: &Transformation) -> bool {
        self.index.contains_key(t)
    }

    /// Position of `t` in the lexicographic order.
    pub fn index_of(&self, t: &Transformation) -> Option<usize> {
        self.index.get(t).copied()
    }

    /// Contains the identity and every product of two members.
    pub fn is_monoid(&self) -> bool {
        let Ok(id) = Transformation::identity(self.n) else {
            return false;
        };
        self.contains(&id)
            && self
                .elements
                .par_iter()
                .all(|a| self.elements.iter().all(|b| self.contains(&a.then(b))))
    }

    /// Members of `self` missing from `other`, in order.
    pub fn difference<'a>(&'a self, other: &'a MonoidSet) -> impl Iterator<Item = &'a Transformation> + 'a {
        self.elements.iter().filter(move |t| !other.contains(t))
    }

    /// Writes one transformation per line in the textual format.
    pub fn write_dump<W: Write>(&self, mut out: W) -> io::Result<()> {
        for t in &self.elements {
            writeln!(out, "{t}")?;
        }
        Ok(())
    }
}

impl PartialEq for MonoidSet {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.elements == other.elements
    }
}

impl Eq for MonoidSet {}

impl<'a> IntoIterator for &'a MonoidSet {
    type Item = &'a Transformation;
    type IntoIter = std::slice::Iter<'a, Transformation>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

/// Appends every step-constrained completion of `prefix` to `out`, in
/// lexicographic order.
fn extend_walks(n: u16, allow_stay: bool, prefix: &mut Vec<u16>, out: &mut Vec<Transformation>) {
    if prefix.len() == n as usize {
        out.push(Transformation::from_raw(prefix.clone().into_boxed_slice()));
        return;
    }
    let last = *prefix.last().expect("prefix starts nonempty");
    let candidates = [last.wrapping_sub(1), last, last + 1];
    for next in candidates {
        if next == 0 || next > n || (next == last && !allow_stay) {
            continue;
        }
        prefix.push(next);
        extend_walks(n, allow_stay, prefix, out);
        prefix.pop();
    }
}

fn walks(n: usize, allow_stay: bool) -> Vec<Transformation> {
    let width = n as u16;
    let branches: Vec<Vec<Transformation>> = (1..=width)
        .into_par_iter()
        .map(|start| {
            let mut prefix = Vec::with_capacity(n);
            prefix.push(start);
            let mut out = Vec::new();
            extend_walks(width, allow_stay, &mut prefix, &mut out);
            out
        })
        .collect();
    branches.into_iter().flatten().collect()
}

/// Environment variable that overrides [`DEFAULT_CAP`].
pub const CAP_ENV: &str = "PATHEND_CAP";

/// The materialization cap: `PATHEND_CAP` if set to an integer, else [`DEFAULT_CAP`].
pub fn default_cap() -> usize {
    std::env::var(CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_CAP)
}

/// Enumerates `class` for `P_n` under [`default_cap`].
pub fn enumerate_class(class: EndoClass, n: usize) -> Result<MonoidSet> {
    enumerate_class_capped(class, n, default_cap())
}

/// Enumerates every transformation of `{1,…,n}` in `class`, in lexicographic order.
///
/// `End` and `wEnd` are generated directly by step-constrained backtracking;
/// the remaining classes are obtained by filtering `wEnd P_n` with their
/// defining predicates.
pub fn enumerate_class_capped(class: EndoClass, n: usize, cap: usize) -> Result<MonoidSet> {
    if n == 0 {
        return Err(Error::VertexCount { n, min: 1 });
    }
    if n > cap {
        return Err(Error::CapExceeded { class, n, cap });
    }
    let elements = match class {
        EndoClass::End => walks(n, false),
        EndoClass::WEnd => walks(n, true),
        other => walks(n, true)
            .into_par_iter()
            .filter(|t| t.is_in_class(other))
            .collect(),
    };
    // walks() is already sorted and duplicate-free
    Ok(MonoidSet::from_sorted(n, elements))
}

/// Counts `End P_n` or `wEnd P_n` by propagating walk counts along the path.
pub fn count_class_dp(class: EndoClass, n: usize) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::VertexCount { n, min: 1 });
    }
    let allow_stay = match class {
        EndoClass::End => false,
        EndoClass::WEnd => true,
        other => return Err(Error::Precondition(format!("no walk counter for {other}"))),
    };
    // ways[v] = number of valid prefixes ending at vertex v+1
    let mut ways = vec![BigUint::one(); n];
    for _ in 1..n {
        let mut next = vec![BigUint::zero(); n];
        for (v, slot) in next.iter_mut().enumerate() {
            if v > 0 {
                *slot += &ways[v - 1];
            }
            if allow_stay {
                *slot += &ways[v];
            }
            if v + 1 < n {
                *slot += &ways[v + 1];
            }
        }
        ways = next;
    }
    Ok(ways.into_iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(n: usize, items: &[&str]) -> MonoidSet {
        MonoidSet::from_elements(n, items.iter().map(|s| s.parse().unwrap())).unwrap()
    }

    #[test]
    fn small_classes() {
        let w2 = enumerate_class(EndoClass::WEnd, 2).unwrap();
        assert_eq!(w2, set(2, &["1,1", "1,2", "2,1", "2,2"]));
        assert_eq!(w2.cardinality(), BigUint::from(4u32));
        assert_eq!(enumerate_class(EndoClass::End, 2).unwrap(), set(2, &["1,2", "2,1"]));
        for c in EndoClass::ALL {
            assert_eq!(enumerate_class(c, 1).unwrap(), set(1, &["1"]));
        }
    }

    #[test]
    fn table_value_at_eight() {
        assert_eq!(enumerate_class(EndoClass::WEnd, 8).unwrap().len(), 11814);
    }

    #[test]
    fn automorphisms_are_identity_and_reversal() {
        for n in 2..=8 {
            let aut = enumerate_class(EndoClass::Aut, n).unwrap();
            let expected = MonoidSet::from_elements(
                n,
                [
                    Transformation::identity(n).unwrap(),
                    Transformation::reversal(n).unwrap(),
                ],
            )
            .unwrap();
            assert_eq!(aut, expected);
        }
    }

    #[test]
    fn lexicographic_order() {
        let w = enumerate_class(EndoClass::WEnd, 5).unwrap();
        assert!(w.elements().windows(2).all(|p| p[0] < p[1]));
        assert_eq!(w.index_of(&"1,1,1,1,1".parse().unwrap()), Some(0));
    }

    #[test]
    fn cap_guard() {
        let err = enumerate_class(EndoClass::WEnd, 13).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { n: 13, cap: 12, .. }));
        assert!(enumerate_class_capped(EndoClass::End, 13, 13).is_ok());
        assert!(enumerate_class(EndoClass::End, 0).is_err());
    }

    #[test]
    fn dp_counts() {
        assert_eq!(count_class_dp(EndoClass::WEnd, 1).unwrap(), BigUint::one());
        assert_eq!(
            count_class_dp(EndoClass::WEnd, 16).unwrap(),
            BigUint::from(170028792u64)
        );
        assert_eq!(count_class_dp(EndoClass::End, 5).unwrap(), BigUint::from(42u32));
        assert!(count_class_dp(EndoClass::Aut, 5).is_err());
    }

    #[test]
    fn enumeration_matches_dp() {
        for n in 1..=10 {
            for c in [EndoClass::End, EndoClass::WEnd] {
                assert_eq!(
                    enumerate_class(c, n).unwrap().cardinality(),
                    count_class_dp(c, n).unwrap()
                );
            }
        }
    }

    #[test]
    fn classes_are_monoids() {
        for n in 1..=6 {
            for c in EndoClass::ALL {
                assert!(enumerate_class(c, n).unwrap().is_monoid(), "{c} n={n}");
            }
        }
    }

    #[test]
    fn dump_format() {
        let mut buf = Vec::new();
        enumerate_class(EndoClass::End, 2)
            .unwrap()
            .write_dump(&mut buf)
            .unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "1,2\n2,1\n");
    }
}
