//! Canonical labelling of double quasi-posets.
//!
//! The key of `P` is the lexicographically smallest `(≤1 bits, ≤2 bits)`
//! over all relabellings of `{0, .., n-1}`; automorphisms fall out of the
//! same scan. Plain factorial search, adequate for `n ≤ 8`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use crate::dqp::{DoubleQuasiPoset, Family};
use crate::error::{Error, Result};
use crate::par::Execution;
use crate::perm::Permutation;
use crate::preorder::{enumerate_preorders, Preorder};

/// Largest `n` accepted by [`canonical_form`].
pub const MAX_CANONICAL_N: usize = 8;

/// Basis key of an isoclass. Ordered by size, then by the serialized bits.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalKey {
    n: u8,
    le1: u64,
    le2: u64,
}

impl CanonicalKey {
    /// Key of the empty double quasi-poset.
    pub fn empty() -> Self {
        CanonicalKey {
            n: 0,
            le1: 0,
            le2: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.n as usize
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// The canonical representative.
    pub fn to_dqp(&self) -> DoubleQuasiPoset {
        let n = self.len();
        let le1 = Preorder::from_grid_bits(n, self.le1).expect("key holds a preorder");
        let le2 = Preorder::from_grid_bits(n, self.le2).expect("key holds a preorder");
        DoubleQuasiPoset::from_parts(le1, le2)
    }

    /// Compact textual key, `n:le1hex:le2hex`.
    pub fn code(&self) -> String {
        format!("{}:{:x}:{:x}", self.n, self.le1, self.le2)
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.code())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.code(), self.to_dqp())
    }
}

#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub key: CanonicalKey,
    /// Automorphisms of the input structure (not of the representative).
    pub aut: Vec<Permutation>,
    /// A relabelling sending the input onto [`CanonicalKey::to_dqp`].
    pub labelling: Permutation,
}

fn permutations(n: usize) -> &'static [Permutation] {
    static TABLES: OnceLock<Vec<Vec<Permutation>>> = OnceLock::new();
    &TABLES.get_or_init(|| (0..=MAX_CANONICAL_N).map(Permutation::all).collect())[n]
}

fn relabelled_bits(p: &DoubleQuasiPoset, sigma: &[usize]) -> (u64, u64) {
    let q = p.relabel(sigma);
    (q.le1().grid_bits(), q.le2().grid_bits())
}

/// Full canonical form with automorphism group.
pub fn canonical_form(p: &DoubleQuasiPoset) -> Result<CanonicalForm> {
    let n = p.len();
    Error::check_limit("canonical form", n, MAX_CANONICAL_N)?;
    let identity = (p.le1().grid_bits(), p.le2().grid_bits());
    let mut best: Option<((u64, u64), &Permutation)> = None;
    let mut aut = Vec::new();
    for sigma in permutations(n) {
        let bits = relabelled_bits(p, sigma.images());
        if bits == identity {
            aut.push(sigma.clone());
        }
        if best.is_none_or(|(b, _)| bits < b) {
            best = Some((bits, sigma));
        }
    }
    let ((le1, le2), sigma) = best.expect("at least one relabelling");
    Ok(CanonicalForm {
        key: CanonicalKey {
            n: n as u8,
            le1,
            le2,
        },
        aut,
        labelling: sigma.clone(),
    })
}

/// Canonical key only.
///
/// # Panics
/// If `p` has more than [`MAX_CANONICAL_N`] elements.
pub fn canonical_key(p: &DoubleQuasiPoset) -> CanonicalKey {
    let n = p.len();
    assert!(
        n <= MAX_CANONICAL_N,
        "canonical form: size {n} exceeds the supported limit {MAX_CANONICAL_N}"
    );
    let (le1, le2) = permutations(n)
        .iter()
        .map(|sigma| relabelled_bits(p, sigma.images()))
        .min()
        .expect("at least one relabelling");
    CanonicalKey {
        n: n as u8,
        le1,
        le2,
    }
}

pub fn is_isomorphic(p: &DoubleQuasiPoset, q: &DoubleQuasiPoset) -> bool {
    p.len() == q.len() && canonical_key(p) == canonical_key(q)
}

/// The automorphism group of `p`.
pub fn automorphisms(p: &DoubleQuasiPoset) -> Result<Vec<Permutation>> {
    Ok(canonical_form(p)?.aut)
}

/// Largest `n` accepted by [`enumerate_isoclasses`] for `family`.
pub fn isoclass_limit(family: Family) -> usize {
    match family {
        Family::Dqp | Family::Sqp | Family::Dp => 4,
        Family::Tqp => 5,
    }
}

/// One canonical key per isoclass of `family` on `n` points, sorted.
pub fn enumerate_isoclasses(n: usize, family: Family) -> Result<Vec<CanonicalKey>> {
    enumerate_isoclasses_with(n, family, Execution::default())
}

pub fn enumerate_isoclasses_with(
    n: usize,
    family: Family,
    exec: Execution,
) -> Result<Vec<CanonicalKey>> {
    Error::check_limit(
        match family {
            Family::Dqp => "dqp isoclass enumeration",
            Family::Sqp => "sqp isoclass enumeration",
            Family::Dp => "dp isoclass enumeration",
            Family::Tqp => "tqp isoclass enumeration",
        },
        n,
        isoclass_limit(family),
    )?;
    let all = enumerate_preorders(n, false)?;
    let (first, second): (Vec<Preorder>, Vec<Preorder>) = match family {
        Family::Dqp => (all.clone(), all),
        Family::Sqp => (all, enumerate_preorders(n, true)?),
        Family::Dp => {
            let orders: Vec<Preorder> = all.into_iter().filter(|p| p.is_order()).collect();
            (orders.clone(), orders)
        }
        Family::Tqp => (vec![Preorder::discrete(n)], all),
    };
    // `≤1` only matters up to relabelling: one representative per orbit.
    let first = distinct_up_to_relabelling(&first);
    let keys: Vec<Vec<CanonicalKey>> = exec.map(&first, |le1| {
        let mut keys: Vec<CanonicalKey> = second
            .iter()
            .map(|le2| canonical_key(&DoubleQuasiPoset::from_parts(*le1, *le2)))
            .collect();
        keys.sort_unstable();
        keys.dedup();
        keys
    });
    let set: BTreeSet<CanonicalKey> = keys.into_iter().flatten().collect();
    Ok(set.into_iter().collect())
}

fn distinct_up_to_relabelling(preorders: &[Preorder]) -> Vec<Preorder> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for p in preorders {
        let n = p.len();
        let min = permutations(n)
            .iter()
            .map(|s| p.relabel(s.images()))
            .min()
            .expect("at least one relabelling");
        if seen.insert(min) {
            out.push(*p);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::preorder::enumerate_preorders;

    fn c2() -> DoubleQuasiPoset {
        DoubleQuasiPoset::new(Preorder::chain(2), Preorder::chain(2)).unwrap()
    }

    #[test]
    fn keys_are_relabelling_invariant() {
        for le1 in enumerate_preorders(3, false).unwrap() {
            for le2 in enumerate_preorders(3, false).unwrap().iter().step_by(5) {
                let p = DoubleQuasiPoset::new(le1, *le2).unwrap();
                let key = canonical_key(&p);
                for sigma in Permutation::all(3) {
                    assert_eq!(canonical_key(&p.relabel(sigma.images())), key);
                }
                let form = canonical_form(&p).unwrap();
                assert_eq!(form.key, key);
                assert_eq!(p.relabel(form.labelling.images()), key.to_dqp());
                assert_eq!(canonical_key(&key.to_dqp()), key);
            }
        }
    }

    #[test]
    fn automorphism_examples() {
        let d1 = DoubleQuasiPoset::point();
        assert_eq!(automorphisms(&d1.product(&d1)).unwrap().len(), 1);
        assert_eq!(
            automorphisms(&DoubleQuasiPoset::discrete(2)).unwrap().len(),
            2
        );
        assert_eq!(automorphisms(&c2()).unwrap().len(), 1);
        assert_eq!(
            automorphisms(&DoubleQuasiPoset::discrete(4)).unwrap().len(),
            24
        );
    }

    #[test]
    fn automorphisms_form_a_group() {
        for le1 in enumerate_preorders(3, false).unwrap() {
            let p = DoubleQuasiPoset::new(le1, Preorder::discrete(3)).unwrap();
            let aut = automorphisms(&p).unwrap();
            assert!(aut.iter().any(|a| a.is_identity()));
            for a in &aut {
                assert!(aut.contains(&a.inverse()));
                for b in &aut {
                    assert!(aut.contains(&a.compose(b)));
                }
            }
        }
    }

    #[test]
    fn size_guard() {
        let big = DoubleQuasiPoset::discrete(9);
        assert!(matches!(canonical_form(&big), Err(Error::SizeLimit { .. })));
        assert!(matches!(
            enumerate_isoclasses(5, Family::Dqp),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn small_isoclass_counts() {
        let counts: Vec<usize> = (0..=3)
            .map(|n| enumerate_isoclasses(n, Family::Dqp).unwrap().len())
            .collect();
        assert_eq!(counts, vec![1, 1, 10, 166]);
        let sqp: Vec<usize> = (1..=3)
            .map(|n| enumerate_isoclasses(n, Family::Sqp).unwrap().len())
            .collect();
        assert_eq!(sqp, vec![1, 7, 74]);
    }

    #[test]
    fn sqp_of_size_two() {
        // The seven diagrams: two chains with distinct labels, a chain with
        // equal labels, two antichains, two fused vertices.
        let keys = enumerate_isoclasses(2, Family::Sqp).unwrap();
        let mut shapes: Vec<(bool, bool, bool, bool)> = keys
            .iter()
            .map(|k| {
                let p = k.to_dqp();
                (
                    p.le1().is_discrete(),
                    p.le1().is_order(),
                    p.le2().is_order(),
                    p.le1().comparable(0, 1)
                        && p.le1().is_order()
                        && p.le2().le(0, 1) == p.le1().le(0, 1),
                )
            })
            .collect();
        shapes.sort();
        let chains_distinct = shapes.iter().filter(|s| !s.0 && s.1 && s.2).count();
        let chain_equal = shapes.iter().filter(|s| !s.0 && s.1 && !s.2).count();
        let antichains = shapes.iter().filter(|s| s.0).count();
        let fused = shapes.iter().filter(|s| !s.1).count();
        assert_eq!(
            (chains_distinct, chain_equal, antichains, fused),
            (2, 1, 2, 2)
        );
    }

    #[test]
    fn sequential_and_parallel_agree() {
        for family in Family::ALL {
            assert_eq!(
                enumerate_isoclasses_with(3, family, Execution::Sequential).unwrap(),
                enumerate_isoclasses_with(3, family, Execution::Parallel).unwrap()
            );
        }
    }
}
