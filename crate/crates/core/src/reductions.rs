//! The constructive steps behind the generating-set arguments:
//! peeling a repetition off a weak endomorphism (`α = γ_i β`), removing one
//! inversion at a fibre of `1` (Case 1) or two inversions at a peak and a
//! valley (Case 3), plus the structural checks for `Aut`, `sEnd` and `swEnd`.

use std::fmt;

use serde::Serialize;

use crate::closure::generate;
use crate::enumeration::{enumerate_class, MonoidSet};
use crate::error::{Error, Result};
use crate::generators::{alpha, beta, beta_indices_in_a, beta_j_max, family, gamma, FamilyName};
use crate::transformation::{EndoClass, InversionProfile, Transformation};

/// A reduction hypothesis that the input failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Hypothesis {
    NotWeakEndomorphism,
    NotEndomorphism,
    NoRepetition,
    TooFewInversions {
        need: usize,
        got: usize,
    },
    NotAnInversion(usize),
    /// the inversion's image is not 1
    FibreNotOne(usize),
    /// 1 is not in the image
    ImageMissesOne,
    /// the preimage of `{1, max im}` is not `{1, n}`
    ExtremesNotAtEnds,
}

impl fmt::Display for Hypothesis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Hypothesis::NotWeakEndomorphism => f.write_str("not a weak endomorphism"),
            Hypothesis::NotEndomorphism => f.write_str("not an endomorphism"),
            Hypothesis::NoRepetition => f.write_str("no repetition"),
            Hypothesis::TooFewInversions { need, got } => write!(f, "needs {need} inversions, has {got}"),
            Hypothesis::NotAnInversion(p) => write!(f, "{p} is not an inversion"),
            Hypothesis::FibreNotOne(p) => write!(f, "image of inversion {p} is not 1"),
            Hypothesis::ImageMissesOne => f.write_str("1 is not in the image"),
            Hypothesis::ExtremesNotAtEnds => f.write_str("preimage of {1, max im} is not {1, n}"),
        }
    }
}

fn reject(h: Hypothesis) -> Error {
    Error::Hypothesis(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReductionKind {
    /// `input = γ_i · output`
    Repetition { i: usize },
    /// inversion `i_k` (at `position`) with image 1 removed; `a` is the max image right of it
    Case1 { k: usize, position: usize, a: usize },
    /// inversions `i_k` and `i_ℓ` removed; `c`, `d` the peak and valley values
    Case3 {
        k: usize,
        l: usize,
        c: usize,
        d: usize,
        mirrored: bool,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionStep {
    pub kind: ReductionKind,
    /// the element being reduced (after reversal normalization for Case 3)
    pub input: Transformation,
    pub output: Transformation,
    /// `α_{a-1}` for Case 1, `β_{c-d,d-1}` for Case 3
    pub factor: Option<Transformation>,
}

impl ReductionStep {
    /// Re-checks every postcondition of the step.
    pub fn verify(&self) -> std::result::Result<(), String> {
        let inv_in = self.input.inversions();
        match &self.kind {
            ReductionKind::Repetition { i } => {
                let g = gamma(self.input.n(), *i).map_err(|e| e.to_string())?;
                if g.then(&self.output) != self.input {
                    return Err(format!("γ_{i}·{} ≠ {}", self.output, self.input));
                }
                if !self.output.is_weak_endomorphism() {
                    return Err(format!("{} is not weak", self.output));
                }
                if self.output.repetitions().len() + 1 != self.input.repetitions().len() {
                    return Err(format!("rep({}) did not drop by one", self.output));
                }
            }
            ReductionKind::Case1 { position, .. } => {
                self.check_end_and_inversions(&inv_in.without(&[*position]))?;
            }
            ReductionKind::Case3 { k, l, .. } => {
                let pk = inv_in.positions()[k - 1];
                let pl = inv_in.positions()[l - 1];
                self.check_end_and_inversions(&inv_in.without(&[pk, pl]))?;
            }
        }
        Ok(())
    }

    fn check_end_and_inversions(&self, expected_out: &InversionProfile) -> std::result::Result<(), String> {
        if !self.output.is_endomorphism() {
            return Err(format!("{} is not an endomorphism", self.output));
        }
        if &self.output.inversions() != expected_out {
            return Err(format!(
                "Inv({}) = {:?}, expected {:?}",
                self.output,
                self.output.inversions(),
                expected_out
            ));
        }
        let factor = self.factor.as_ref().ok_or("missing factor")?;
        let recombined = self.output.then(factor);
        if recombined.inversions() != self.input.inversions() {
            return Err(format!("Inv({recombined}) ≠ Inv({})", self.input));
        }
        Ok(())
    }
}

/// Splits off the first repetition `i`: `t = γ_i β` with `rep(β) = rep(t) - 1`.
pub fn factor_repetition(t: &Transformation) -> Result<ReductionStep> {
    if !t.is_weak_endomorphism() {
        return Err(reject(Hypothesis::NotWeakEndomorphism));
    }
    let i = *t.repetitions().first().ok_or(reject(Hypothesis::NoRepetition))?;
    let n = t.n();
    let last = t.apply(n);
    let tail = if last >= 2 { last - 1 } else { last + 1 };
    let output = Transformation::from_fn(n, |x| match x {
        x if x <= i => t.apply(x),
        x if x < n => t.apply(x + 1),
        _ => tail,
    })?;
    Ok(ReductionStep {
        kind: ReductionKind::Repetition { i },
        input: t.clone(),
        output,
        factor: None,
    })
}

/// Repeatedly factors repetitions until an endomorphism remains.
/// Returns the extracted `γ` indices and the final endomorphism.
pub fn strip_repetitions(t: &Transformation) -> Result<(Vec<usize>, Transformation)> {
    let mut cur = t.clone();
    let mut peeled = Vec::new();
    while !cur.is_endomorphism() {
        let step = factor_repetition(&cur)?;
        if let ReductionKind::Repetition { i } = step.kind {
            peeled.push(i);
        }
        cur = step.output;
    }
    Ok((peeled, cur))
}

fn require_end_with_inversions(t: &Transformation, need: usize) -> Result<InversionProfile> {
    if !t.is_endomorphism() {
        return Err(reject(Hypothesis::NotEndomorphism));
    }
    let inv = t.inversions();
    if inv.len() < need {
        return Err(reject(Hypothesis::TooFewInversions { need, got: inv.len() }));
    }
    Ok(inv)
}

/// Removes the inversion at `position`, whose image must be 1:
/// `xβ = xα + a - 1` left of it and `a + 1 - xα` from it on,
/// with `a` the largest image at or right of `position`.
pub fn case1_reduce(t: &Transformation, position: usize) -> Result<ReductionStep> {
    let inv = require_end_with_inversions(t, 2)?;
    let k = inv
        .positions()
        .iter()
        .position(|&p| p == position)
        .ok_or(reject(Hypothesis::NotAnInversion(position)))?
        + 1;
    if t.apply(position) != 1 {
        return Err(reject(Hypothesis::FibreNotOne(position)));
    }
    let n = t.n();
    let a = (position..=n).map(|x| t.apply(x)).max().expect("nonempty");
    let output = Transformation::from_fn(n, |x| {
        if x < position {
            t.apply(x) + a - 1
        } else {
            a + 1 - t.apply(x)
        }
    })?;
    let factor = alpha(n, a - 1)?;
    Ok(ReductionStep {
        kind: ReductionKind::Case1 { k, position, a },
        input: t.clone(),
        output,
        factor: Some(factor),
    })
}

/// Checks the Case 3 shape and returns the element normalized so that
/// `1 ↦ 1` and `n ↦ max im`, with whether a reversal was applied.
fn case3_normalize(t: &Transformation) -> Result<(Transformation, bool)> {
    require_end_with_inversions(t, 3)?;
    let image = t.image_set();
    if image[0] != 1 {
        return Err(reject(Hypothesis::ImageMissesOne));
    }
    let top = *image.last().expect("nonempty image");
    let n = t.n();
    let preimage: Vec<usize> = (1..=n).filter(|&x| t.apply(x) == 1 || t.apply(x) == top).collect();
    if preimage != [1, n] {
        return Err(reject(Hypothesis::ExtremesNotAtEnds));
    }
    if t.apply(1) == 1 {
        Ok((t.clone(), false))
    } else {
        Ok((Transformation::reversal(n)?.then(t), true))
    }
}

/// Removes a peak inversion `i_k` (the highest among all but the last) and the
/// lowest later inversion `i_ℓ` by reflecting the segment `[i_k, i_ℓ]` about `c`.
/// Ties pick the smallest index.
pub fn case3_reduce(t: &Transformation) -> Result<ReductionStep> {
    let (input, mirrored) = case3_normalize(t)?;
    let inv = input.inversions();
    let pos = inv.positions();
    let r_plus_1 = pos.len();
    let image_at = |k: usize| input.apply(pos[k - 1]);

    let c = (1..r_plus_1).map(image_at).max().expect("at least two inversions");
    let k = (1..r_plus_1).find(|&k| image_at(k) == c).expect("max attained");
    let d = (k + 1..=r_plus_1).map(image_at).min().expect("k < r+1");
    let l = (k + 1..=r_plus_1).find(|&l| image_at(l) == d).expect("min attained");
    let (ik, il) = (pos[k - 1], pos[l - 1]);

    let n = input.n();
    let output = Transformation::from_fn(n, |x| {
        let y = input.apply(x);
        if x < ik {
            y
        } else if x <= il {
            2 * c - y
        } else {
            y + 2 * c - 2 * d
        }
    })?;
    let factor = beta(n, c - d, d - 1)?;
    Ok(ReductionStep {
        kind: ReductionKind::Case3 { k, l, c, d, mirrored },
        input,
        output,
        factor: Some(factor),
    })
}

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    /// number of elements or cases examined
    pub examined: usize,
    pub detail: Option<String>,
}

impl CheckOutcome {
    fn new(name: &str, examined: usize, failure: Option<String>) -> Self {
        CheckOutcome {
            name: name.to_string(),
            passed: failure.is_none(),
            examined,
            detail: failure,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub n: usize,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn parse_all(items: &[&str]) -> Vec<Transformation> {
    items
        .iter()
        .map(|s| s.parse().expect("literal transformation"))
        .collect()
}

/// `sEnd P_3`, listed explicitly.
pub fn send_p3() -> Vec<Transformation> {
    parse_all(&["1,2,3", "3,2,1", "1,2,1", "2,1,2", "2,3,2", "3,2,3"])
}

/// `swEnd P_3`, listed explicitly.
pub fn swend_p3() -> Vec<Transformation> {
    parse_all(&[
        "1,2,3", "3,2,1", "1,2,1", "2,1,2", "2,3,2", "3,2,3", "1,1,1", "2,2,2", "3,3,3",
    ])
}

fn set_of(n: usize, items: Vec<Transformation>) -> Result<MonoidSet> {
    MonoidSet::from_elements(n, items)
}

fn compare_sets(name: &str, got: &MonoidSet, want: &MonoidSet) -> CheckOutcome {
    let failure = (got != want).then(|| {
        let missing: Vec<String> = want.difference(got).take(5).map(|t| t.to_string()).collect();
        let extra: Vec<String> = got.difference(want).take(5).map(|t| t.to_string()).collect();
        format!(
            "size {} vs {}; missing {missing:?}; extra {extra:?}",
            got.len(),
            want.len()
        )
    });
    CheckOutcome::new(name, got.len(), failure)
}

fn first_failure<T>(
    items: impl IntoIterator<Item = T>,
    mut check: impl FnMut(&T) -> Option<String>,
) -> (usize, Option<String>) {
    let mut count = 0;
    for item in items {
        count += 1;
        if let Some(msg) = check(&item) {
            return (count, Some(msg));
        }
    }
    (count, None)
}

/// Every map of `{1,…,n}` when that is small enough, otherwise `wEnd P_n`.
fn containment_domain(n: usize) -> Result<Vec<Transformation>> {
    if n > 6 {
        return Ok(enumerate_class(EndoClass::WEnd, n)?.elements().to_vec());
    }
    let total = n.pow(n as u32);
    (0..total)
        .map(|mut code| {
            let images = (0..n)
                .map(|_| {
                    let v = code % n + 1;
                    code /= n;
                    v
                })
                .collect();
            Transformation::new(images)
        })
        .collect()
}

/// Structure of `Aut`, `sEnd`, `swEnd`, the class containments, the
/// one-inversion base case and the index bounds for `β` in `A`.
pub fn verify_structure(n: usize) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    let id = Transformation::identity(n)?;
    let tau = Transformation::reversal(n)?;
    let aut_expected = set_of(n, vec![id.clone(), tau.clone()])?;

    let aut = enumerate_class(EndoClass::Aut, n)?;
    checks.push(compare_sets("aut_is_identity_and_reversal", &aut, &aut_expected));

    let wend = enumerate_class(EndoClass::WEnd, n)?;
    let (examined, failure) = first_failure(wend.iter(), |t| {
        let via_end = t.is_bijective() && t.is_endomorphism();
        (via_end != t.is_automorphism()).then(|| format!("{t}: bijective endomorphism test disagrees"))
    });
    checks.push(CheckOutcome::new("aut_bijective_end_agrees", examined, failure));

    let send = enumerate_class(EndoClass::SEnd, n)?;
    let send_expected = if n == 3 {
        set_of(3, send_p3())?
    } else {
        aut_expected.clone()
    };
    checks.push(compare_sets("send_structure", &send, &send_expected));

    let swend = enumerate_class(EndoClass::SWEnd, n)?;
    let swend_expected = if n == 3 {
        set_of(3, swend_p3())?
    } else {
        let mut items = vec![id.clone(), tau.clone()];
        for v in 1..=n {
            items.push(Transformation::constant(n, v)?);
        }
        set_of(n, items)?
    };
    let mut sw = compare_sets("swend_structure", &swend, &swend_expected);
    let expected_size = match n {
        1 => 1,
        3 => 9,
        _ => n + 2,
    };
    if sw.passed && swend.len() != expected_size {
        sw.passed = false;
        sw.detail = Some(format!("|swEnd| = {} ≠ {expected_size}", swend.len()));
    }
    checks.push(sw);

    let domain = containment_domain(n)?;
    let (examined, failure) = first_failure(domain.iter(), |t| {
        let c = |class| t.is_in_class(class);
        let chain = [
            (c(EndoClass::Aut), c(EndoClass::SEnd), "Aut ⊆ sEnd"),
            (c(EndoClass::SEnd), c(EndoClass::End), "sEnd ⊆ End"),
            (c(EndoClass::End), c(EndoClass::WEnd), "End ⊆ wEnd"),
            (c(EndoClass::SEnd), c(EndoClass::SWEnd), "sEnd ⊆ swEnd"),
            (c(EndoClass::SWEnd), c(EndoClass::WEnd), "swEnd ⊆ wEnd"),
        ];
        chain
            .iter()
            .find(|(sub, sup, _)| *sub && !*sup)
            .map(|(_, _, what)| format!("{t} violates {what}"))
    });
    checks.push(CheckOutcome::new("class_containments", examined, failure));

    if n >= 3 {
        let end = enumerate_class(EndoClass::End, n)?;
        let generated = generate(&family(FamilyName::APrime, n)?.members)?;
        let (examined, failure) = first_failure(end.iter().filter(|t| t.inversions().len() == 1), |t| {
            let p = t.inversions().positions()[0];
            let same = alpha(n, p - 1)
                .map(|a| a.inversions() == t.inversions())
                .unwrap_or(false);
            if !same {
                Some(format!("Inv({t}) is not Inv(α_{})", p - 1))
            } else if !generated.contains(t) {
                Some(format!("{t} not in ⟨A′⟩"))
            } else {
                None
            }
        });
        checks.push(CheckOutcome::new("one_inversion_base_case", examined, failure));
    }

    let (examined, failure) = first_failure(beta_indices_in_a(n), |&(j, i)| {
        let ok = (2..=n - 2).contains(&(i + 1))
            && (4..=n - 2).contains(&(i + 2 * j + 1))
            && (5..=n - 1).contains(&(i + 3 * j + 1));
        (!ok).then(|| format!("bounds fail at j={j} i={i}"))
    });
    checks.push(CheckOutcome::new("beta_index_bounds", examined, failure));

    Ok(VerificationReport { n, checks })
}

/// Repetition stripping on every element of `wEnd P_n`.
pub fn check_repetition_factorization(n: usize) -> Result<CheckOutcome> {
    let wend = enumerate_class(EndoClass::WEnd, n)?;
    let (examined, failure) = first_failure(wend.iter(), |t| {
        let t: &Transformation = t;
        let mut cur = t.clone();
        let mut gammas = Vec::new();
        while !cur.is_endomorphism() {
            let step = match factor_repetition(&cur) {
                Ok(s) => s,
                Err(e) => return Some(format!("{cur}: {e}")),
            };
            if let Err(msg) = step.verify() {
                return Some(msg);
            }
            if let ReductionKind::Repetition { i } = step.kind {
                gammas.push(gamma(n, i).expect("valid repetition index"));
            }
            cur = step.output;
        }
        if gammas.len() != t.repetitions().len() {
            return Some(format!("{t}: {} steps for rep {}", gammas.len(), t.repetitions().len()));
        }
        let rebuilt = gammas.iter().rev().fold(cur, |acc, g| g.then(&acc));
        (&rebuilt != t).then(|| format!("{t}: recomposition gives {rebuilt}"))
    });
    Ok(CheckOutcome::new("repetition_factorization", examined, failure))
}

/// Case 1 on every qualifying (element, inversion) pair of `End P_n`.
pub fn check_case1(n: usize) -> Result<CheckOutcome> {
    let end = enumerate_class(EndoClass::End, n)?;
    let cases = end.iter().flat_map(|t| {
        let inv = t.inversions();
        let ps: Vec<usize> = if inv.len() >= 2 {
            inv.positions().iter().copied().filter(|&p| t.apply(p) == 1).collect()
        } else {
            Vec::new()
        };
        ps.into_iter().map(move |p| (t, p))
    });
    let (examined, failure) = first_failure(cases, |(t, p)| match case1_reduce(t, *p) {
        Ok(step) => step.verify().err().map(|m| format!("{t} at {p}: {m}")),
        Err(e) => Some(format!("{t} at {p}: {e}")),
    });
    Ok(CheckOutcome::new("case1_reduction", examined, failure))
}

/// `ker(t·τ·α_{n-b}) = ker(t)` for `t ∈ End P_n` with image `[1, b]`, `2 ≤ b ≤ n-1`,
/// and every inversion with image `b` is sent to 1 by the composite.
pub fn check_case2_kernel(n: usize) -> Result<CheckOutcome> {
    if n < 3 {
        return Ok(CheckOutcome::new("case2_kernel_identity", 0, None));
    }
    let end = enumerate_class(EndoClass::End, n)?;
    let tau = Transformation::reversal(n)?;
    let cases = end.iter().filter(|t| {
        let img = t.image_set();
        img[0] == 1 && *img.last().unwrap() < n
    });
    let (examined, failure) = first_failure(cases, |t| {
        let b = *t.image_set().last().unwrap();
        let composite = t.then(&tau).then(&alpha(n, n - b).expect("2 ≤ b ≤ n-1"));
        if composite.kernel() != t.kernel() {
            return Some(format!("{t}: kernel changes under τα_{}", n - b));
        }
        t.inversions()
            .positions()
            .iter()
            .find(|&&p| t.apply(p) == b && composite.apply(p) != 1)
            .map(|p| format!("{t}: inversion {p} not sent to 1"))
    });
    Ok(CheckOutcome::new("case2_kernel_identity", examined, failure))
}

/// Case 3 on every element of `End P_n` meeting its hypotheses.
pub fn check_case3(n: usize) -> Result<CheckOutcome> {
    let end = enumerate_class(EndoClass::End, n)?;
    let mut examined = 0;
    for t in end.iter() {
        let step = match case3_reduce(t) {
            Ok(s) => s,
            Err(Error::Hypothesis(_)) => continue,
            Err(e) => {
                return Ok(CheckOutcome::new(
                    "case3_reduction",
                    examined + 1,
                    Some(format!("{t}: {e}")),
                ))
            }
        };
        examined += 1;
        if let Err(m) = step.verify() {
            return Ok(CheckOutcome::new(
                "case3_reduction",
                examined,
                Some(format!("{t}: {m}")),
            ));
        }
    }
    Ok(CheckOutcome::new("case3_reduction", examined, None))
}

/// With two inversions and the Case 3 shape, the element is exactly
/// `β_{j,i}` for `j = i_2 - i_1`, `i = 2i_1 - i_2 - 1`.
pub fn check_beta_identification(n: usize) -> Result<CheckOutcome> {
    let end = enumerate_class(EndoClass::End, n)?;
    let cases = end.iter().filter(|t| {
        if t.inversions().len() != 2 || t.apply(1) != 1 {
            return false;
        }
        let top = *t.image_set().last().unwrap();
        t.apply(n) == top && (2..n).all(|x| t.apply(x) != 1 && t.apply(x) != top)
    });
    let (examined, failure) = first_failure(cases, |t| {
        let inv = t.inversions();
        let (i1, i2) = (inv.positions()[0], inv.positions()[1]);
        let j = i2 - i1;
        let Some(i) = (2 * i1).checked_sub(i2 + 1) else {
            return Some(format!("{t}: 2i_1 - i_2 - 1 < 0"));
        };
        if j > beta_j_max(n) || i == 0 || i > n - 3 * j - 2 {
            return Some(format!("{t}: (j, i) = ({j}, {i}) outside the β range"));
        }
        match beta(n, j, i) {
            Ok(b) if &b == *t => None,
            Ok(b) => Some(format!("{t} ≠ β_{{{j},{i}}} = {b}")),
            Err(e) => Some(e.to_string()),
        }
    });
    Ok(CheckOutcome::new("beta_identification", examined, failure))
}

/// Reduction property suites run by `verify` alongside [`verify_structure`].
pub fn reduction_suites(n: usize) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        check_repetition_factorization(n)?,
        check_case1(n)?,
        check_case2_kernel(n)?,
        check_case3(n)?,
        check_beta_identification(n)?,
    ])
}

/// Structure checks followed by the reduction suites.
pub fn verify_all(n: usize) -> Result<VerificationReport> {
    let mut report = verify_structure(n)?;
    report.checks.extend(reduction_suites(n)?);
    Ok(report)
}
