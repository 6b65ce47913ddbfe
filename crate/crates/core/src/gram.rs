//! Gram matrices of the two pairings over an isoclass basis, and exact rank.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::algebra::Variant;
use crate::canonical::{enumerate_isoclasses_with, CanonicalKey};
use crate::dqp::{DoubleQuasiPoset, Family};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::pictures::pairing;

/// Largest `n` accepted by [`gram`]. Beyond it exact rank over a basis of
/// a thousand or more elements is no longer desk scale.
pub const MAX_GRAM_N: usize = 3;

/// Pairing values `⟨b_i, b_j⟩` over a sorted isoclass basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix {
    pub basis: Vec<CanonicalKey>,
    pub entries: Vec<Vec<u64>>,
    pub variant: Variant,
}

impl GramMatrix {
    /// Builds the matrix over an explicit basis.
    pub fn over(basis: Vec<CanonicalKey>, variant: Variant, exec: Execution) -> Self {
        let reps: Vec<DoubleQuasiPoset> = basis.iter().map(CanonicalKey::to_dqp).collect();
        // Only the upper triangle is computed; symmetry of the pairing fills
        // in the rest and is verified separately.
        let upper = exec.map_range(reps.len(), |i| {
            (i..reps.len())
                .map(|j| pairing(&reps[i], &reps[j], variant))
                .collect::<Vec<u64>>()
        });
        let dim = reps.len();
        let mut entries = vec![vec![0u64; dim]; dim];
        for (i, row) in upper.into_iter().enumerate() {
            for (offset, value) in row.into_iter().enumerate() {
                entries[i][i + offset] = value;
                entries[i + offset][i] = value;
            }
        }
        GramMatrix {
            basis,
            entries,
            variant,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<BigInt>> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        exact_rank(rows)
    }

    /// Integer CSV with a header row of canonical key codes.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        let header: Vec<String> = self.basis.iter().map(CanonicalKey::code).collect();
        out.push_str(&header.join(","));
        out.push('\n');
        for row in &self.entries {
            let cells: Vec<String> = row.iter().map(u64::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// The Gram matrix of `variant` over all isoclasses of `family` on `n` points.
pub fn gram(n: usize, family: Family, variant: Variant) -> Result<GramMatrix> {
    gram_with(n, family, variant, Execution::default())
}

pub fn gram_with(
    n: usize,
    family: Family,
    variant: Variant,
    exec: Execution,
) -> Result<GramMatrix> {
    Error::check_limit("gram matrix", n, MAX_GRAM_N)?;
    let basis = enumerate_isoclasses_with(n, family, exec)?;
    Ok(GramMatrix::over(basis, variant, exec))
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn exact_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    let mut prev = BigInt::from(1);
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            for c in col + 1..cols {
                let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                m[r][c] = v;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].abs();
        rank += 1;
    }
    rank
}
