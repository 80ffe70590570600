//! Full transformations of `{1,…,n}` and the predicates that single out the
//! endomorphism classes of the path `P_n`.
//!
//! A [`Transformation`] is stored as its image sequence with 1-based vertices.
//! Products are read left to right: `a.compose(&b)` maps `x` to `(x a) b`,
//! so `a` is applied first.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A full self-map of `{1,…,n}`, identified by its image sequence.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Transformation {
    images: Box<[u16]>,
}

/// The five monoids of (weak, strong, strong weak) endomorphisms and automorphisms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EndoClass {
    End,
    WEnd,
    SEnd,
    SWEnd,
    Aut,
}

impl EndoClass {
    pub const ALL: [EndoClass; 5] = [
        EndoClass::End,
        EndoClass::WEnd,
        EndoClass::SEnd,
        EndoClass::SWEnd,
        EndoClass::Aut,
    ];

    /// Lower-case name used on the command line and in JSON output.
    pub fn key(self) -> &'static str {
        match self {
            EndoClass::End => "end",
            EndoClass::WEnd => "wend",
            EndoClass::SEnd => "send",
            EndoClass::SWEnd => "swend",
            EndoClass::Aut => "aut",
        }
    }
}

impl fmt::Display for EndoClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            EndoClass::End => "End",
            EndoClass::WEnd => "wEnd",
            EndoClass::SEnd => "sEnd",
            EndoClass::SWEnd => "swEnd",
            EndoClass::Aut => "Aut",
        };
        f.write_str(name)
    }
}

impl FromStr for EndoClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "end" => Ok(EndoClass::End),
            "wend" => Ok(EndoClass::WEnd),
            "send" => Ok(EndoClass::SEnd),
            "swend" => Ok(EndoClass::SWEnd),
            "aut" => Ok(EndoClass::Aut),
            other => Err(Error::Parse(format!("unknown class {other:?}"))),
        }
    }
}

/// Kernel of a transformation: vertex `k` lies in block `block_ids()[k-1]`,
/// blocks numbered from 0 in order of first appearance.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KernelPartition {
    block_ids: Vec<usize>,
}

impl KernelPartition {
    pub fn block_ids(&self) -> &[usize] {
        &self.block_ids
    }

    pub fn block_count(&self) -> usize {
        self.block_ids.iter().max().map_or(0, |m| m + 1)
    }

    /// Blocks as sorted lists of 1-based vertices, in block order.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = vec![Vec::new(); self.block_count()];
        for (k, &b) in self.block_ids.iter().enumerate() {
            blocks[b].push(k + 1);
        }
        blocks
    }
}

/// The set `Inv(α)` of inversion positions, each in `2..=n-1`, sorted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct InversionProfile {
    positions: Vec<usize>,
}

impl InversionProfile {
    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn len(&self) -> usize {
        self.positions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.positions.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.positions.binary_search(&i).is_ok()
    }

    pub fn is_subset(&self, other: &InversionProfile) -> bool {
        self.positions.iter().all(|&i| other.contains(i))
    }

    /// The profile with the given positions removed.
    pub fn without(&self, removed: &[usize]) -> InversionProfile {
        InversionProfile {
            positions: self
                .positions
                .iter()
                .copied()
                .filter(|i| !removed.contains(i))
                .collect(),
        }
    }
}

impl<const K: usize> From<[usize; K]> for InversionProfile {
    fn from(mut positions: [usize; K]) -> Self {
        positions.sort_unstable();
        InversionProfile {
            positions: positions.to_vec(),
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::VertexCount { n, min: 1 });
    }
    if n > u16::MAX as usize {
        return Err(Error::VertexOutOfRange {
            value: n,
            n: u16::MAX as usize,
        });
    }
    Ok(())
}

impl Transformation {
    /// Builds a transformation from 1-based images, validating every entry.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        check_n(n)?;
        let mut out = Vec::with_capacity(n);
        for value in images {
            if value == 0 || value > n {
                return Err(Error::VertexOutOfRange { value, n });
            }
            out.push(value as u16);
        }
        Ok(Transformation {
            images: out.into_boxed_slice(),
        })
    }

    /// Builds the transformation `x ↦ f(x)` on `{1,…,n}`.
    pub fn from_fn(n: usize, f: impl Fn(usize) -> usize) -> Result<Self> {
        Self::new((1..=n).map(f).collect())
    }

    pub(crate) fn from_raw(images: Box<[u16]>) -> Self {
        debug_assert!(!images.is_empty());
        Transformation { images }
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::from_fn(n, |k| k)
    }

    /// The automorphism `k ↦ n-k+1`.
    pub fn reversal(n: usize) -> Result<Self> {
        check_n(n)?;
        Self::from_fn(n, |k| n - k + 1)
    }

    pub fn constant(n: usize, v: usize) -> Result<Self> {
        check_n(n)?;
        if v == 0 || v > n {
            return Err(Error::VertexOutOfRange { value: v, n });
        }
        Self::from_fn(n, |_| v)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based vertex `x`.
    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    /// Left-to-right product: apply `self`, then `other`.
    pub fn compose(&self, other: &Transformation) -> Result<Transformation> {
        if self.n() != other.n() {
            return Err(Error::SizeMismatch {
                left: self.n(),
                right: other.n(),
            });
        }
        Ok(self.then(other))
    }

    /// Unchecked variant of [`compose`](Self::compose) for callers that already
    /// know both sides act on the same vertex set.
    #[inline]
    pub(crate) fn then(&self, other: &Transformation) -> Transformation {
        debug_assert_eq!(self.n(), other.n());
        Transformation {
            images: self.images.iter().map(|&y| other.images[y as usize - 1]).collect(),
        }
    }

    fn steps(&self) -> impl Iterator<Item = usize> + '_ {
        self.images
            .windows(2)
            .map(|w| (w[0] as i32 - w[1] as i32).unsigned_abs() as usize)
    }

    pub fn is_weak_endomorphism(&self) -> bool {
        self.steps().all(|d| d <= 1)
    }

    pub fn is_endomorphism(&self) -> bool {
        self.steps().all(|d| d == 1)
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.n()];
        for &v in self.images.iter() {
            let slot = &mut seen[v as usize - 1];
            if *slot {
                return false;
            }
            *slot = true;
        }
        true
    }

    fn adjacent_images(&self, u: usize, v: usize) -> bool {
        self.apply(u).abs_diff(self.apply(v)) == 1
    }

    pub fn is_strong_endomorphism(&self) -> bool {
        let n = self.n();
        (1..=n).all(|u| (u + 1..=n).all(|v| (v - u == 1) == self.adjacent_images(u, v)))
    }

    pub fn is_strong_weak_endomorphism(&self) -> bool {
        let n = self.n();
        (1..=n).all(|u| {
            (u + 1..=n).all(|v| {
                let edge_kept = v - u == 1 && self.apply(u) != self.apply(v);
                edge_kept == self.adjacent_images(u, v)
            })
        })
    }

    /// Automorphism test as "bijective strong endomorphism".
    pub fn is_automorphism(&self) -> bool {
        self.is_bijective() && self.is_strong_endomorphism()
    }

    pub fn is_in_class(&self, class: EndoClass) -> bool {
        match class {
            EndoClass::WEnd => self.is_weak_endomorphism(),
            EndoClass::End => self.is_endomorphism(),
            EndoClass::SEnd => self.is_strong_endomorphism(),
            EndoClass::SWEnd => self.is_strong_weak_endomorphism(),
            EndoClass::Aut => self.is_automorphism(),
        }
    }

    /// Positions `i` in `2..=n-1` with `(i-1)α = (i+1)α ≠ iα`.
    pub fn inversions(&self) -> InversionProfile {
        let positions = (2..self.n())
            .filter(|&i| {
                let (l, m, r) = (self.apply(i - 1), self.apply(i), self.apply(i + 1));
                l == r && l != m
            })
            .collect();
        InversionProfile { positions }
    }

    /// Positions `i` in `1..=n-1` with `iα = (i+1)α`, sorted.
    pub fn repetitions(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.apply(i) == self.apply(i + 1)).collect()
    }

    pub fn kernel(&self) -> KernelPartition {
        let mut label = vec![usize::MAX; self.n()];
        let mut next = 0;
        let block_ids = self
            .images
            .iter()
            .map(|&v| {
                let slot = &mut label[v as usize - 1];
                if *slot == usize::MAX {
                    *slot = next;
                    next += 1;
                }
                *slot
            })
            .collect();
        KernelPartition { block_ids }
    }

    /// Sorted image set.
    pub fn image_set(&self) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        for &v in self.images.iter() {
            seen[v as usize - 1] = true;
        }
        (1..=self.n()).filter(|&v| seen[v - 1]).collect()
    }

    pub fn rank(&self) -> usize {
        self.image_set().len()
    }

    /// Minimum and maximum of the image of the vertex interval `[u, v]`.
    ///
    /// For weak endomorphisms the image is additionally checked to be the
    /// whole interval `[lo, hi]`; a gap is reported as a consistency failure.
    pub fn image_interval(&self, u: usize, v: usize) -> Result<(usize, usize)> {
        let n = self.n();
        if u == 0 || u > n {
            return Err(Error::VertexOutOfRange { value: u, n });
        }
        if v < u || v > n {
            return Err(Error::VertexOutOfRange { value: v, n });
        }
        let window = &self.images[u - 1..v];
        let lo = *window.iter().min().expect("nonempty window") as usize;
        let hi = *window.iter().max().expect("nonempty window") as usize;
        if self.is_weak_endomorphism() {
            let mut hit = vec![false; hi - lo + 1];
            for &y in window {
                hit[y as usize - lo] = true;
            }
            if let Some(gap) = hit.iter().position(|h| !h) {
                return Err(Error::Consistency(format!(
                    "image of [{u},{v}] under {self} misses {}",
                    lo + gap
                )));
            }
        }
        Ok((lo, hi))
    }
}

impl fmt::Display for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.images.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Transformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

impl FromStr for Transformation {
    type Err = Error;

    /// Parses the comma-separated image list, e.g. `"2,1,2,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split(',')
            .map(|part| {
                let part = part.trim();
                part.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad image {part:?} in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Transformation::new(images)
    }
}

impl Serialize for Transformation {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Transformation {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
