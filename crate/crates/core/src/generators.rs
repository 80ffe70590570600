//! The named transformations `τ`, `α_i`, `β_{j,i}`, `γ_i` and the generating
//! families assembled from them.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::transformation::Transformation;

fn param(name: &'static str, value: usize, lo: usize, hi: usize, n: usize) -> Result<()> {
    if value < lo || value > hi {
        return Err(Error::ParameterOutOfRange { name, value, lo, hi, n });
    }
    Ok(())
}

/// `τ`, the reversal `k ↦ n-k+1`.
pub fn tau(n: usize) -> Result<Transformation> {
    Transformation::reversal(n)
}

/// `α_i`: reflect `1..=i+1` onto `i+1..=1`, then shift down by `i`.
///
/// The only inversion sits at `i+1`.
pub fn alpha(n: usize, i: usize) -> Result<Transformation> {
    if n < 3 {
        return Err(Error::VertexCount { n, min: 3 });
    }
    param("i", i, 1, n - 2, n)?;
    Transformation::from_fn(n, |x| if x <= i + 1 { i + 2 - x } else { x - i })
}

/// Largest admissible `j` for `β_{j,i}`, i.e. `⌊(n-3)/3⌋` (0 when `n < 6`).
pub fn beta_j_max(n: usize) -> usize {
    n.saturating_sub(3) / 3
}

/// `β_{j,i}`: identity up to `i+j+1`, a reflection back down to `i+1`, then
/// a shift by `-2j`. Inversions are `{i+j+1, i+2j+1}`.
pub fn beta(n: usize, j: usize, i: usize) -> Result<Transformation> {
    if n < 6 {
        return Err(Error::VertexCount { n, min: 6 });
    }
    param("j", j, 1, beta_j_max(n), n)?;
    param("i", i, 1, n - 3 * j - 2, n)?;
    beta_unchecked(n, j, i)
}

/// Evaluates the piecewise formula; callers validate `j` and `i`.
fn beta_unchecked(n: usize, j: usize, i: usize) -> Result<Transformation> {
    let pivot = i + j + 1;
    let images = (1..=n)
        .map(|x| {
            if x <= pivot {
                x as isize
            } else if x <= i + 2 * j + 1 {
                2 * pivot as isize - x as isize
            } else {
                x as isize - 2 * j as isize
            }
        })
        .map(|v| {
            if v < 1 {
                Err(Error::VertexOutOfRange { value: 0, n })
            } else {
                Ok(v as usize)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Transformation::new(images)
}

/// `γ_i`: collapses `i+1` onto `i` and shifts the tail down by one.
pub fn gamma(n: usize, i: usize) -> Result<Transformation> {
    if n < 2 {
        return Err(Error::VertexCount { n, min: 2 });
    }
    param("i", i, 1, n - 1, n)?;
    Transformation::from_fn(n, |x| if x <= i { x } else { x - 1 })
}

/// `Σ_{j=1}^{⌊(n-3)/3⌋} ⌊(n-3j-1)/2⌋`, the number of `β` generators in `A`.
pub fn beta_stratum_size(n: usize) -> usize {
    (1..=beta_j_max(n)).map(|j| (n - 3 * j - 1) / 2).sum()
}

/// `(j, i)` pairs of the `β` members of `A`, in lexicographic order.
pub fn beta_indices_in_a(n: usize) -> Vec<(usize, usize)> {
    (1..=beta_j_max(n))
        .flat_map(|j| (1..=(n - 3 * j - 1) / 2).map(move |i| (j, i)))
        .collect()
}

/// `(j, i)` pairs of every `β_{j,i}` in `A′`.
pub fn beta_indices_all(n: usize) -> Vec<(usize, usize)> {
    (1..=beta_j_max(n))
        .flat_map(|j| (1..=n - 3 * j - 2).map(move |i| (j, i)))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FamilyName {
    /// `{τ} ∪ {α_i : i ≤ n-2} ∪ {β_{j,i} : i ≤ n-3j-2}`
    APrime,
    /// `{τ} ∪ {α_i : i ≤ n-2}`
    ADoublePrime,
    /// The minimum-size generating set of `End P_n`.
    A,
    /// `A ∪ {γ_i : i ≤ ⌊n/2⌋}`, generating `wEnd P_n`.
    B,
    /// Reversal plus constants `1..=⌈n/2⌉`; a special triple at `n = 3`.
    SwGens,
}

impl FamilyName {
    pub const ALL: [FamilyName; 5] = [
        FamilyName::APrime,
        FamilyName::ADoublePrime,
        FamilyName::A,
        FamilyName::B,
        FamilyName::SwGens,
    ];

    pub fn key(self) -> &'static str {
        match self {
            FamilyName::APrime => "aprime",
            FamilyName::ADoublePrime => "adoubleprime",
            FamilyName::A => "a",
            FamilyName::B => "b",
            FamilyName::SwGens => "swgens",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyName::APrime => "A'",
            FamilyName::ADoublePrime => "A''",
            FamilyName::A => "A",
            FamilyName::B => "B",
            FamilyName::SwGens => "SwGens",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "a'" | "aprime" | "a1" => Ok(FamilyName::APrime),
            "a''" | "adoubleprime" | "a2" => Ok(FamilyName::ADoublePrime),
            "a" => Ok(FamilyName::A),
            "b" => Ok(FamilyName::B),
            "swgens" | "sw" => Ok(FamilyName::SwGens),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

/// An ordered, labelled list of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorFamily {
    pub name: FamilyName,
    pub n: usize,
    pub members: Vec<Transformation>,
    pub labels: Vec<String>,
}

impl GeneratorFamily {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    fn push(&mut self, label: String, t: Transformation) {
        self.labels.push(label);
        self.members.push(t);
    }
}

/// Builds a family: `τ` first, then `α` by `i`, `β` by `(j, i)`, `γ` by `i`.
///
/// The `A`-type families need `n ≥ 2`; at `n = 2` they reduce to `{τ}`.
pub fn family(name: FamilyName, n: usize) -> Result<GeneratorFamily> {
    if n < 2 {
        return Err(Error::UndefinedFamily { family: name.key(), n });
    }
    let mut fam = GeneratorFamily {
        name,
        n,
        members: Vec::new(),
        labels: Vec::new(),
    };
    if name == FamilyName::SwGens {
        if n == 3 {
            for s in ["3,2,1", "2,1,2", "1,1,1"] {
                fam.push(format!("({s})"), s.parse()?);
            }
        } else {
            fam.push("tau".into(), tau(n)?);
            for v in 1..=n.div_ceil(2) {
                fam.push(format!("const_{v}"), Transformation::constant(n, v)?);
            }
        }
        return Ok(fam);
    }

    fam.push("tau".into(), tau(n)?);
    let alpha_max = match name {
        FamilyName::A | FamilyName::B => (n - 1) / 2,
        _ => n.saturating_sub(2),
    };
    for i in 1..=alpha_max {
        fam.push(format!("alpha_{i}"), alpha(n, i)?);
    }
    let betas = match name {
        FamilyName::APrime => beta_indices_all(n),
        FamilyName::A | FamilyName::B => beta_indices_in_a(n),
        _ => Vec::new(),
    };
    for (j, i) in betas {
        fam.push(format!("beta_{j},{i}"), beta(n, j, i)?);
    }
    if name == FamilyName::B {
        for i in 1..=n / 2 {
            fam.push(format!("gamma_{i}"), gamma(n, i)?);
        }
    }
    Ok(fam)
}
