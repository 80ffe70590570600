//! Exact counting of weak endomorphisms of `P_n` through the `a(r,i)`
//! table, its row sums `b(r)`, and the `c(i)` prefix recursion.
//!
//! Everything is computed in arbitrary precision; `|wEnd P_n|` has 50
//! decimal digits already at `n = 100`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// `a(r, i)` for `1 ≤ r ≤ n-2`, `1 ≤ i ≤ n-1`.
///
/// `a(r, i)` counts the restrictions of weak endomorphisms to `{1,…,r+1}`
/// that start at `i` and end at `1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ATable {
    n: usize,
    rows: Vec<Vec<BigUint>>,
}

impl ATable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Entry `a(r, i)`, 1-based in both indices.
    pub fn get(&self, r: usize, i: usize) -> &BigUint {
        &self.rows[r - 1][i - 1]
    }

    /// Row `r` as `a(r,1), …, a(r,n-1)`.
    pub fn row(&self, r: usize) -> &[BigUint] {
        &self.rows[r - 1]
    }

    pub fn row_count(&self) -> usize {
        self.rows.len()
    }
}

/// Builds the `a(r,i)` table row by row.
///
/// The generic three-term rule covers columns `2..=n-2`; the last column is
/// then set by the boundary rules, with `a(n-2, n-1) = 1` applied last.
pub fn a_table(n: usize) -> Result<ATable> {
    if n < 3 {
        return Err(Error::VertexCount { n, min: 3 });
    }
    let cols = n - 1;
    let mut first = vec![BigUint::zero(); cols];
    first[0] = BigUint::one();
    first[1] = BigUint::one();
    let mut rows = vec![first];
    for _k in 2..=n - 2 {
        let prev = rows.last().expect("row 1 exists");
        let mut row = vec![BigUint::zero(); cols];
        row[0] = &prev[0] + &prev[1];
        for p in 2..=n - 2 {
            row[p - 1] = &prev[p - 2] + &prev[p - 1] + &prev[p];
        }
        // a(k, n-1) = 0 for k <= n-3; overwritten below for k = n-2
        row[cols - 1] = BigUint::zero();
        rows.push(row);
    }
    rows[n - 3][cols - 1] = BigUint::one();
    Ok(ATable { n, rows })
}

/// `b(r) = 2 Σ_i a(r,i)` for `r = 1..=n-2`.
pub fn b_values(n: usize) -> Result<Vec<BigUint>> {
    let table = a_table(n)?;
    Ok(table
        .rows
        .iter()
        .map(|row| row.iter().sum::<BigUint>() * 2u32)
        .collect())
}

fn b_values_or_empty(n: usize) -> Result<Vec<BigUint>> {
    match n {
        0 | 1 => Err(Error::VertexCount { n, min: 2 }),
        2 => Ok(Vec::new()),
        _ => b_values(n),
    }
}

/// `|wEnd P_n| = 3^{n-2}(3n-2) - Σ_{r=1}^{n-2} 3^{n-r-2} b(r)`, for `n ≥ 2`.
pub fn wend_count_closed(n: usize) -> Result<BigUint> {
    let b = b_values_or_empty(n)?;
    let three = BigInt::from(3u32);
    let mut total = three.pow((n - 2) as u32) * BigInt::from(3 * n - 2);
    for (idx, br) in b.iter().enumerate() {
        let r = idx + 1;
        total -= three.pow((n - r - 2) as u32) * BigInt::from(br.clone());
    }
    total
        .to_biguint()
        .ok_or_else(|| Error::Consistency(format!("closed formula is negative at n={n}")))
}

/// `c(n-1)` from `c(1) = 3n-2` and `c(i+1) = 3c(i) - b(i)`, for `n ≥ 2`.
pub fn wend_count_recursive(n: usize) -> Result<BigUint> {
    let b = b_values_or_empty(n)?;
    let mut c = BigUint::from(3 * n - 2);
    for bi in &b {
        c = c * 3u32 - bi;
    }
    Ok(c)
}

/// `|wEnd P_n|` for every `n ≥ 1`, answering `n = 1` directly.
pub fn wend_count(n: usize) -> Result<BigUint> {
    match n {
        0 => Err(Error::VertexCount { n, min: 1 }),
        1 => Ok(BigUint::one()),
        _ => wend_count_closed(n),
    }
}
