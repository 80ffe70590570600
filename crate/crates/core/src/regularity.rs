//! Regularity in `End P_n` and `wEnd P_n`.
//!
//! An element is regular exactly when some vertex interval of size
//! `|im α|` is mapped onto `im α`. From such an interval an explicit
//! `β ∈ End P_n` with `αβα = α` can be written down.

use rayon::prelude::*;
use serde::Serialize;

use crate::enumeration::{enumerate_class, MonoidSet};
use crate::error::{Error, Result};
use crate::transformation::{EndoClass, Transformation};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityReport {
    pub element: Transformation,
    pub class: EndoClass,
    pub regular: bool,
    /// `β ∈ End P_n` with `αβα = α`
    pub witness: Option<Transformation>,
    /// first interval `[i, j]` mapped bijectively onto the image
    pub interval: Option<(usize, usize)>,
}

fn check_class(t: &Transformation, class: EndoClass) -> Result<()> {
    match class {
        EndoClass::End | EndoClass::WEnd if t.is_in_class(class) => Ok(()),
        EndoClass::End | EndoClass::WEnd => Err(Error::NotInClass {
            element: t.to_string(),
            class,
        }),
        other => Err(Error::Precondition(format!(
            "regularity criterion applies to End or wEnd, not {other}"
        ))),
    }
}

/// First interval `[i, j]` (smallest `i`) with `|[i,j]| = |im t|` and `[i,j]t = im t`.
pub fn regular_interval(t: &Transformation) -> Option<(usize, usize)> {
    let n = t.n();
    let image = t.image_set();
    let size = image.len();
    let mut hit = vec![false; n];
    (1..=n + 1 - size).find_map(|i| {
        let j = i + size - 1;
        hit.iter_mut().for_each(|h| *h = false);
        let mut distinct = 0;
        for x in i..=j {
            let slot = &mut hit[t.apply(x) - 1];
            if !*slot {
                *slot = true;
                distinct += 1;
            }
        }
        // images of [i, j] always lie in im t, so `size` distinct values cover it
        (distinct == size).then_some((i, j))
    })
}

/// Decides regularity of `t` in `class` by the interval criterion and, when
/// regular, attaches the constructed pseudo-inverse.
pub fn regular_by_criterion(t: &Transformation, class: EndoClass) -> Result<RegularityReport> {
    check_class(t, class)?;
    let interval = regular_interval(t);
    let witness = match interval {
        Some(iv) => Some(pseudo_inverse_on(t, iv)?),
        None => None,
    };
    Ok(RegularityReport {
        element: t.clone(),
        class,
        regular: interval.is_some(),
        witness,
        interval,
    })
}

/// An endomorphism `β` with `tβt = t`, for `t` in `wEnd P_n` satisfying the
/// interval criterion.
pub fn pseudo_inverse(t: &Transformation) -> Result<Transformation> {
    if !t.is_weak_endomorphism() {
        return Err(Error::NotInClass {
            element: t.to_string(),
            class: EndoClass::WEnd,
        });
    }
    let iv = regular_interval(t).ok_or_else(|| Error::NotRegular(t.to_string()))?;
    pseudo_inverse_on(t, iv)
}

fn pseudo_inverse_on(t: &Transformation, (i, j): (usize, usize)) -> Result<Transformation> {
    let n = t.n();
    if i == j {
        // constant: t·β·t = t for every β, and the identity lies in End P_n
        return Transformation::identity(n);
    }
    let (ti, tj) = (t.apply(i), t.apply(j));
    // t is strictly monotone on [i, j]; β inverts it on the image and
    // zig-zags between the two nearest preimages on either side of it, the
    // phase chosen by parity so the zig-zag meets the inverse with a ±1 step.
    Transformation::from_fn(n, |y| {
        if ti < tj {
            let (lo, hi) = (ti, tj);
            if y < lo {
                i + (lo - y) % 2
            } else if y > hi {
                j - (y - hi) % 2
            } else {
                i + (y - lo)
            }
        } else {
            let (lo, hi) = (tj, ti);
            if y < lo {
                j - (lo - y) % 2
            } else if y > hi {
                i + (y - hi) % 2
            } else {
                j - (y - lo)
            }
        }
    })
}

/// Regularity by definition: some `x` in `monoid` has `t·x·t = t`.
pub fn regular_by_oracle(t: &Transformation, monoid: &MonoidSet) -> Result<bool> {
    if !monoid.contains(t) {
        return Err(Error::NotAMember(t.to_string()));
    }
    Ok(monoid.iter().any(|x| &t.then(x).then(t) == t))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassVerdict {
    pub regular: bool,
    /// lexicographically first non-regular element
    pub counterexample: Option<Transformation>,
}

/// Whether every element of `class` (End or wEnd) of `P_n` is regular.
pub fn class_regular(class: EndoClass, n: usize) -> Result<ClassVerdict> {
    if !matches!(class, EndoClass::End | EndoClass::WEnd) {
        return Err(Error::Precondition(format!(
            "regularity criterion applies to End or wEnd, not {class}"
        )));
    }
    let monoid = enumerate_class(class, n)?;
    let counterexample = monoid
        .elements()
        .par_iter()
        .position_first(|t| regular_interval(t).is_none())
        .map(|k| monoid.elements()[k].clone());
    Ok(ClassVerdict {
        regular: counterexample.is_none(),
        counterexample,
    })
}

/// `[1,2,3,2,3,4,…,n-2]`, a non-regular element of `End P_n` for `n ≥ 6`.
pub fn end_witness(n: usize) -> Result<Transformation> {
    if n < 6 {
        return Err(Error::VertexCount { n, min: 6 });
    }
    Transformation::from_fn(n, |x| if x <= 3 { x } else { x - 2 })
}

/// `[1,2,2,3,…,n-1]`, a non-regular element of `wEnd P_n` for `n ≥ 4`.
pub fn wend_witness(n: usize) -> Result<Transformation> {
    if n < 4 {
        return Err(Error::VertexCount { n, min: 4 });
    }
    Transformation::from_fn(n, |x| if x <= 2 { x } else { x - 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{alpha, gamma};

    fn holds(t: &Transformation, beta: &Transformation) -> bool {
        beta.is_endomorphism() && &t.then(beta).then(t) == t
    }

    #[test]
    fn alpha_one_is_regular() {
        let a = alpha(4, 1).unwrap();
        let r = regular_by_criterion(&a, EndoClass::End).unwrap();
        assert!(r.regular);
        assert_eq!(r.interval, Some((2, 4)));
        assert!(holds(&a, r.witness.as_ref().unwrap()));
        assert!(holds(&a, &pseudo_inverse(&a).unwrap()));
    }

    #[test]
    fn identity_inverts_to_identity() {
        for n in 1..8 {
            let id = Transformation::identity(n).unwrap();
            assert_eq!(pseudo_inverse(&id).unwrap(), id);
        }
    }

    #[test]
    fn witnesses_are_not_regular() {
        for n in 4..9 {
            let w = wend_witness(n).unwrap();
            assert_eq!(w, gamma(n, 2).unwrap());
            assert!(!regular_by_criterion(&w, EndoClass::WEnd).unwrap().regular);
            assert!(matches!(pseudo_inverse(&w), Err(Error::NotRegular(_))));
        }
        for n in 6..10 {
            let w = end_witness(n).unwrap();
            assert!(!regular_by_criterion(&w, EndoClass::End).unwrap().regular);
        }
        assert_eq!(end_witness(6).unwrap().to_string(), "1,2,3,2,3,4");
    }

    #[test]
    fn class_mismatch_is_rejected() {
        let g: Transformation = "1,2,2,3".parse().unwrap();
        assert!(regular_by_criterion(&g, EndoClass::End).is_err());
        assert!(regular_by_criterion(&g, EndoClass::Aut).is_err());
        assert!(pseudo_inverse(&"1,3,1".parse().unwrap()).is_err());
    }

    #[test]
    fn constants_use_identity_witness() {
        let c = Transformation::constant(5, 3).unwrap();
        let r = regular_by_criterion(&c, EndoClass::WEnd).unwrap();
        assert_eq!(r.interval, Some((1, 1)));
        assert!(holds(&c, r.witness.as_ref().unwrap()));
    }

    #[test]
    fn oracle_small() {
        let w3 = enumerate_class(EndoClass::WEnd, 3).unwrap();
        assert!(w3.iter().all(|t| regular_by_oracle(t, &w3).unwrap()));
        let w4 = enumerate_class(EndoClass::WEnd, 4).unwrap();
        assert!(!regular_by_oracle(&wend_witness(4).unwrap(), &w4).unwrap());
        assert!(regular_by_oracle(&"1,3,1".parse().unwrap(), &w3).is_err());
    }

    #[test]
    fn class_verdicts() {
        assert!(class_regular(EndoClass::WEnd, 3).unwrap().regular);
        assert!(class_regular(EndoClass::End, 5).unwrap().regular);
        let v = class_regular(EndoClass::End, 6).unwrap();
        assert!(!v.regular && v.counterexample.is_some());
        assert!(!class_regular(EndoClass::WEnd, 4).unwrap().regular);
    }
}
