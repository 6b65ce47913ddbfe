//! Index-based tables for the exhaustive sweeps: bases with lookup,
//! pairing matrices and sparse internal-product tables.

use std::collections::HashMap;

use num_traits::ToPrimitive;

use crate::algebra::{Element, Variant};
use crate::canonical::{enumerate_isoclasses_with, CanonicalKey};
use crate::dqp::{DoubleQuasiPoset, Family};
use crate::error::Result;
use crate::internal::{internal_product_dqp, InternalKind};
use crate::par::Execution;
use crate::pictures::pairing;

/// Isoclasses of sizes `0..=max_n`, smallest first.
pub fn keys_upto(max_n: usize, family: Family, exec: Execution) -> Result<Vec<CanonicalKey>> {
    let mut out = Vec::new();
    for n in 0..=max_n {
        out.extend(enumerate_isoclasses_with(n, family, exec)?);
    }
    Ok(out)
}

/// Sparse integer vector over a basis.
pub type Sparse = Vec<(usize, i64)>;

/// An ordered basis of one graded piece.
#[derive(Debug, Clone)]
pub struct Basis {
    keys: Vec<CanonicalKey>,
    reps: Vec<DoubleQuasiPoset>,
    index: HashMap<CanonicalKey, usize>,
}

impl Basis {
    pub fn new(keys: Vec<CanonicalKey>) -> Self {
        let reps = keys.iter().map(CanonicalKey::to_dqp).collect();
        let index = keys.iter().enumerate().map(|(i, k)| (*k, i)).collect();
        Basis { keys, reps, index }
    }

    pub fn isoclasses(n: usize, family: Family, exec: Execution) -> Result<Self> {
        Ok(Self::new(enumerate_isoclasses_with(n, family, exec)?))
    }

    pub fn len(&self) -> usize {
        self.keys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.keys.is_empty()
    }

    pub fn keys(&self) -> &[CanonicalKey] {
        &self.keys
    }

    pub fn key(&self, i: usize) -> CanonicalKey {
        self.keys[i]
    }

    pub fn rep(&self, i: usize) -> &DoubleQuasiPoset {
        &self.reps[i]
    }

    pub fn index_of(&self, key: &CanonicalKey) -> Option<usize> {
        self.index.get(key).copied()
    }

    /// Coordinates of an integral element supported on this basis.
    ///
    /// # Panics
    /// If a term lies outside the basis or has a non-integer coefficient.
    pub fn coordinates(&self, a: &Element) -> Sparse {
        a.iter()
            .map(|(k, c)| {
                let i = self
                    .index_of(k)
                    .unwrap_or_else(|| panic!("{k:?} outside the basis"));
                assert!(c.is_integer(), "non-integral coefficient {c}");
                (i, c.to_integer().to_i64().expect("coefficient fits in i64"))
            })
            .collect()
    }
}

/// `entries[i][j] = ⟨b_i, b_j⟩`, every entry computed (no symmetry assumed).
pub fn pairing_matrix(basis: &Basis, variant: Variant, exec: Execution) -> Vec<Vec<u64>> {
    exec.map_range(basis.len(), |i| {
        (0..basis.len())
            .map(|j| pairing(basis.rep(i), basis.rep(j), variant))
            .collect()
    })
}

/// `cells[i * dim + j]` holds the coordinates of `b_i ⊴ b_j` or `b_i ◁ b_j`.
pub struct ProductTable {
    dim: usize,
    cells: Vec<Sparse>,
}

impl ProductTable {
    pub fn internal(basis: &Basis, kind: InternalKind, exec: Execution) -> Self {
        let dim = basis.len();
        let cells = exec.map_range(dim * dim, |ij| {
            let (i, j) = (ij / dim, ij % dim);
            basis.coordinates(&internal_product_dqp(basis.rep(i), basis.rep(j), kind))
        });
        ProductTable { dim, cells }
    }

    pub fn get(&self, i: usize, j: usize) -> &Sparse {
        &self.cells[i * self.dim + j]
    }

    /// `x · b_j` for a sparse `x`.
    pub fn left_apply(&self, x: &Sparse, j: usize, acc: &mut Accumulator, sign: i64) {
        for &(d, c) in x {
            for &(e, c2) in self.get(d, j) {
                acc.add(e, sign * c * c2);
            }
        }
    }

    /// `b_i · y` for a sparse `y`.
    pub fn right_apply(&self, i: usize, y: &Sparse, acc: &mut Accumulator, sign: i64) {
        for &(d, c) in y {
            for &(e, c2) in self.get(i, d) {
                acc.add(e, sign * c * c2);
            }
        }
    }
}

/// Dense scratch vector that remembers which slots it touched.
pub struct Accumulator {
    values: Vec<i64>,
    touched: Vec<usize>,
}

impl Accumulator {
    pub fn new(dim: usize) -> Self {
        Accumulator {
            values: vec![0; dim],
            touched: Vec::new(),
        }
    }

    pub fn add(&mut self, i: usize, v: i64) {
        if self.values[i] == 0 {
            self.touched.push(i);
        }
        self.values[i] += v;
    }

    /// Clears the accumulator, reporting whether it was zero.
    pub fn drain_is_zero(&mut self) -> bool {
        let mut zero = true;
        for &i in &self.touched {
            zero &= self.values[i] == 0;
            self.values[i] = 0;
        }
        self.touched.clear();
        zero
    }
}

/// `Σ x_d · M[d][c]` for a sparse `x`.
pub fn pair_sparse_left(x: &Sparse, matrix: &[Vec<u64>], c: usize) -> i64 {
    x.iter().map(|&(d, v)| v * matrix[d][c] as i64).sum()
}

/// `Σ y_e · M[a][e]` for a sparse `y`.
pub fn pair_sparse_right(a: usize, matrix: &[Vec<u64>], y: &Sparse) -> i64 {
    y.iter().map(|&(e, v)| v * matrix[a][e] as i64).sum()
}

/// `⟨x, y⟩` for two sparse vectors.
pub fn pair_sparse(x: &Sparse, matrix: &[Vec<u64>], y: &Sparse) -> i64 {
    x.iter()
        .map(|&(d, v)| v * pair_sparse_right(d, matrix, y))
        .sum()
}
