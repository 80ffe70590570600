//! Independent oracles and the exhaustive check suites shared by the
//! integration tests and the acceptance run. The oracles work on plain
//! image vectors and never call the library's own structural helpers.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use pathend::generators::{beta_indices_all, beta_indices_in_a};
use pathend::{alpha, beta, enumerate_class, family, EndoClass, FamilyName, Transformation};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

pub type Check = Result<(), String>;

pub fn t(s: &str) -> Transformation {
    s.parse().unwrap()
}

pub fn class(c: EndoClass, n: usize) -> Vec<Transformation> {
    enumerate_class(c, n).unwrap().elements().to_vec()
}

/// `x ↦ (x a) b` on image vectors.
pub fn mul(a: &[usize], b: &[usize]) -> Vec<usize> {
    a.iter().map(|&x| b[x - 1]).collect()
}

/// Inversions straight from the definition.
pub fn inversions_of(v: &[usize]) -> Vec<usize> {
    let n = v.len();
    (2..n).filter(|&i| v[i - 2] == v[i] && v[i - 1] != v[i]).collect()
}

pub fn same_kernel(a: &[usize], b: &[usize]) -> bool {
    let n = a.len();
    (0..n).all(|x| (0..n).all(|y| (a[x] == a[y]) == (b[x] == b[y])))
}

pub fn steps_within(v: &[usize], allowed: &[isize]) -> bool {
    v.windows(2).all(|w| allowed.contains(&(w[1] as isize - w[0] as isize)))
}

pub fn is_weak(v: &[usize]) -> bool {
    steps_within(v, &[-1, 0, 1])
}

pub fn is_end(v: &[usize]) -> bool {
    steps_within(v, &[-1, 1])
}

/// Every weak walk `x_1 … x_len` on `{1,…,n}`, by nested counting rather than backtracking.
pub fn weak_walks(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut walks: Vec<Vec<usize>> = (1..=n).map(|s| vec![s]).collect();
    for _ in 1..len {
        walks = walks
            .into_iter()
            .flat_map(|w| {
                let last = *w.last().unwrap() as isize;
                [-1isize, 0, 1].into_iter().filter_map(move |d| {
                    let next = last + d;
                    (1..=n as isize).contains(&next).then(|| {
                        let mut w2 = w.clone();
                        w2.push(next as usize);
                        w2
                    })
                })
            })
            .collect();
    }
    walks
}

/// Plain breadth-first closure of image vectors, identity included.
pub fn closure_oracle(gens: &[Vec<usize>]) -> HashSet<Vec<usize>> {
    let n = gens[0].len();
    let id: Vec<usize> = (1..=n).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

pub fn images(ts: &[Transformation]) -> Vec<Vec<usize>> {
    ts.iter().map(|x| x.images()).collect()
}

fn fail(msg: String) -> Check {
    Err(msg)
}

/// Equal kernels iff equal inversion sets, for every pair in `End P_n`.
pub fn invker(n: usize) -> Check {
    let end = images(&class(EndoClass::End, n));
    for a in &end {
        for b in &end {
            let k = same_kernel(a, b);
            let i = inversions_of(a) == inversions_of(b);
            if k != i {
                return fail(format!("n={n}: {a:?} {b:?} kernel {k} inversions {i}"));
            }
        }
    }
    Ok(())
}

/// Every interval of every weak endomorphism maps onto an interval.
pub fn interval(n: usize) -> Check {
    for x in class(EndoClass::WEnd, n) {
        let v = x.images();
        for u in 1..=n {
            for w in u..=n {
                let img: HashSet<usize> = v[u - 1..w].iter().copied().collect();
                let (lo, hi) = (*img.iter().min().unwrap(), *img.iter().max().unwrap());
                if img.len() != hi - lo + 1 {
                    return fail(format!("{x} maps [{u},{w}] to a non-interval"));
                }
                match x.image_interval(u, w) {
                    Ok(got) if got == (lo, hi) => {}
                    other => return fail(format!("{x} [{u},{w}]: library gave {other:?}, oracle ({lo},{hi})")),
                }
            }
        }
    }
    Ok(())
}

/// The three product laws on one pair of weak endomorphisms.
pub fn product_laws(a: &[usize], b: &[usize]) -> Check {
    let n = a.len();
    let ab = mul(a, b);
    let inv_a = inversions_of(a);
    let inv_b = inversions_of(b);
    let inv_ab = inversions_of(&ab);
    if is_end(&ab) {
        if !is_end(a) {
            return fail(format!("{a:?}·{b:?} is End but {a:?} is not"));
        }
        if !inv_a.iter().all(|i| inv_ab.contains(i)) {
            return fail(format!("Inv({a:?}) ⊄ Inv({a:?}·{b:?})"));
        }
        if let Some(i) = (2..n).find(|&i| inv_b.contains(&a[i - 1]) && !inv_ab.contains(&i)) {
            return fail(format!("{i}α ∈ Inv(β) but {i} ∉ Inv(αβ) for {a:?}, {b:?}"));
        }
    }
    if let Some(&i) = inv_ab
        .iter()
        .find(|&&i| !inv_a.contains(&i) && !inv_b.contains(&a[i - 1]))
    {
        return fail(format!("{i} ∈ Inv(αβ) \\ Inv(α) but iα ∉ Inv(β) for {a:?}, {b:?}"));
    }
    let tau: Vec<usize> = (1..=n).rev().collect();
    let inv_ta = inversions_of(&mul(&tau, a));
    if let Some(i) = (2..n).find(|&i| inv_a.contains(&i) != inv_ta.contains(&(n - i + 1))) {
        return fail(format!("mirror law fails at {i} for {a:?}"));
    }
    Ok(())
}

pub fn product_laws_exhaustive(n: usize) -> Check {
    let w = images(&class(EndoClass::WEnd, n));
    for a in &w {
        for b in &w {
            product_laws(a, b)?;
        }
    }
    Ok(())
}

pub fn product_laws_random(n: usize, pairs: usize, seed: u64) -> Check {
    let w = images(&class(EndoClass::WEnd, n));
    let mut rng = StdRng::seed_from_u64(seed);
    for _ in 0..pairs {
        let a = &w[rng.gen_range(0..w.len())];
        let b = &w[rng.gen_range(0..w.len())];
        product_laws(a, b)?;
    }
    Ok(())
}

fn family_images(name: FamilyName, n: usize) -> Vec<Vec<usize>> {
    images(&family(name, n).unwrap().members)
}

/// Same-kernel endomorphisms lie in `⟨A″, α⟩`.
pub fn le2(n: usize) -> Check {
    let end = images(&class(EndoClass::End, n));
    let base = family_images(FamilyName::ADoublePrime, n);
    for a in &end {
        let mut gens = base.clone();
        gens.push(a.clone());
        let gen = closure_oracle(&gens);
        if let Some(b) = end.iter().find(|b| same_kernel(a, b) && !gen.contains(*b)) {
            return fail(format!("n={n}: {b:?} has the kernel of {a:?} but is outside ⟨A″, α⟩"));
        }
    }
    Ok(())
}

/// Membership in `⟨A″⟩` and in `⟨A′⟩` depends only on the inversion set.
pub fn rem(n: usize) -> Check {
    let end = images(&class(EndoClass::End, n));
    for name in [FamilyName::ADoublePrime, FamilyName::APrime] {
        let gen = closure_oracle(&family_images(name, n));
        let mut verdict: HashMap<Vec<usize>, bool> = HashMap::new();
        for a in &end {
            let inside = gen.contains(a);
            if let Some(prev) = verdict.insert(inversions_of(a), inside) {
                if prev != inside {
                    return fail(format!("n={n} {name}: membership splits the inversion class of {a:?}"));
                }
            }
        }
    }
    Ok(())
}

/// The `α` mirror identities, the `β` kernel identities, and that both
/// families sit inside `⟨A⟩`.
pub fn le_and_le1(n: usize) -> Check {
    let tau = Transformation::reversal(n).unwrap();
    let gen = closure_oracle(&family_images(FamilyName::A, n));
    for i in 1..=n.saturating_sub(2) {
        let a = alpha(n, i).unwrap();
        let mirrored = tau.compose(&alpha(n, n - 1 - i).unwrap()).unwrap();
        if a != mirrored {
            return fail(format!("n={n}: α_{i} ≠ τα_{}", n - 1 - i));
        }
        if !gen.contains(&a.images()) {
            return fail(format!("n={n}: α_{i} ∉ ⟨A⟩"));
        }
    }
    let in_a: HashSet<(usize, usize)> = beta_indices_in_a(n).into_iter().collect();
    for (j, i) in beta_indices_all(n) {
        let b = beta(n, j, i).unwrap();
        if !in_a.contains(&(j, i)) {
            let partner = tau.compose(&beta(n, j, n - 3 * j - 1 - i).unwrap()).unwrap();
            if !same_kernel(&b.images(), &partner.images()) {
                return fail(format!(
                    "n={n}: ker β_{{{j},{i}}} ≠ ker τβ_{{{j},{}}}",
                    n - 3 * j - 1 - i
                ));
            }
        }
        if !gen.contains(&b.images()) {
            return fail(format!("n={n}: β_{{{j},{i}}} ∉ ⟨A⟩"));
        }
    }
    Ok(())
}

/// Arithmetic bounds on the `β` indices used by `A`.
pub fn uneq(n: usize) -> Check {
    let jmax = if n >= 3 { (n - 3) / 3 } else { 0 };
    for j in 1..=jmax {
        for i in 1..=(n - 3 * j - 1) / 2 {
            let ok = (2..=n - 2).contains(&(i + 1))
                && (4..=n - 2).contains(&(i + 2 * j + 1))
                && (5..=n - 1).contains(&(i + 3 * j + 1));
            if !ok {
                return fail(format!("n={n}: bounds fail at j={j}, i={i}"));
            }
        }
    }
    Ok(())
}

/// Counts prefixes `1α … (k+1)α` of weak endomorphisms by their endpoints.
pub fn prefix_counts(n: usize, k: usize) -> HashMap<(usize, usize), u64> {
    let mut seen = HashSet::new();
    let mut counts = HashMap::new();
    for x in class(EndoClass::WEnd, n) {
        let prefix: Vec<usize> = x.images()[..=k].to_vec();
        if seen.insert(prefix.clone()) {
            *counts.entry((prefix[0], prefix[k])).or_insert(0) += 1;
        }
    }
    counts
}

/// Regularity by definition: some member `x` of the class with `t x t = t`.
pub fn regular_oracle(v: &[usize], members: &[Vec<usize>]) -> bool {
    members.iter().any(|x| mul(&mul(v, x), v) == v)
}
