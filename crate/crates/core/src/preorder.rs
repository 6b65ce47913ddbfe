//! Preorders on `{0, .., n-1}`, i.e. finite topologies.
//!
//! A [`Preorder`] is stored as a dense bit matrix (`rows[i]` has bit `j` set
//! iff `i ≤ j`), always reflexive and transitive. Indices in the Rust API are
//! 0-based; the textual form is 1-based.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// Largest ground set a [`Preorder`] can hold.
pub const MAX_N: usize = 16;

/// Largest `n` accepted by [`enumerate_preorders`].
pub const MAX_ENUMERATE_N: usize = 5;

/// A subset of the ground set as a bit mask (bit `i` ↔ element `i`).
pub type Subset = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Preorder {
    n: u8,
    rows: [u16; MAX_N],
}

impl Preorder {
    /// The discrete preorder (only `i ≤ i`).
    pub fn discrete(n: usize) -> Self {
        assert!(n <= MAX_N, "ground set of size {n} exceeds {MAX_N}");
        let mut rows = [0u16; MAX_N];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        Preorder { n: n as u8, rows }
    }

    /// The indiscrete preorder (everything equivalent).
    pub fn indiscrete(n: usize) -> Self {
        let mut p = Self::discrete(n);
        let full = full_mask(n) as u16;
        for row in p.rows.iter_mut().take(n) {
            *row = full;
        }
        p
    }

    /// The chain `0 < 1 < .. < n-1`.
    pub fn chain(n: usize) -> Self {
        let mut p = Self::discrete(n);
        for i in 0..n {
            p.rows[i] = (full_mask(n) & !((1u32 << i) - 1)) as u16;
        }
        p
    }

    /// The total preorder `i ≤ j ⇔ rank[i] ≤ rank[j]`.
    pub fn from_ranks<T: Ord>(ranks: &[T]) -> Self {
        let n = ranks.len();
        let mut p = Self::discrete(n);
        for i in 0..n {
            for j in 0..n {
                if ranks[i] <= ranks[j] {
                    p.rows[i] |= 1 << j;
                }
            }
        }
        p
    }

    /// Reflexive-transitive closure of `pairs` (0-based).
    pub fn closure(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Error::check_limit("preorder", n, MAX_N)?;
        let mut p = Self::discrete(n);
        for &(i, j) in pairs {
            for x in [i, j] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            p.rows[i] |= 1 << j;
        }
        p.close();
        Ok(p)
    }

    /// Builds from pairs that must already be closed (strict ingestion).
    pub fn from_closed_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        Error::check_limit("preorder", n, MAX_N)?;
        let mut p = Self::discrete(n);
        for &(i, j) in pairs {
            for x in [i, j] {
                if x >= n {
                    return Err(Error::IndexOutOfRange { index: x, n });
                }
            }
            p.rows[i] |= 1 << j;
        }
        if let Some((i, k)) = p.transitivity_violation() {
            return Err(Error::NotClosed(i, k));
        }
        Ok(p)
    }

    /// Builds from raw rows; `None` unless reflexive and transitive.
    pub(crate) fn from_rows(n: usize, raw: &[u16]) -> Option<Self> {
        let mut rows = [0u16; MAX_N];
        rows[..n].copy_from_slice(&raw[..n]);
        let p = Preorder { n: n as u8, rows };
        let reflexive = (0..n).all(|i| rows[i] & (1 << i) != 0);
        (reflexive && p.transitivity_violation().is_none()).then_some(p)
    }

    fn close(&mut self) {
        // Warshall on bit rows.
        let n = self.len();
        for k in 0..n {
            for i in 0..n {
                if self.rows[i] & (1 << k) != 0 {
                    self.rows[i] |= self.rows[k];
                }
            }
        }
    }

    fn transitivity_violation(&self) -> Option<(usize, usize)> {
        let n = self.len();
        for i in 0..n {
            for j in bits(self.rows[i] as u32) {
                let missing = self.rows[j] & !self.rows[i];
                if missing != 0 {
                    return Some((i, missing.trailing_zeros() as usize));
                }
            }
        }
        None
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.rows[i] & (1 << j) != 0
    }

    #[inline]
    pub fn equiv(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && self.le(j, i)
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.le(i, j) && !self.le(j, i)
    }

    /// `i <_1 j` with range checking.
    pub fn strictly_less(&self, i: usize, j: usize) -> Result<bool> {
        for x in [i, j] {
            if x >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: x,
                    n: self.len(),
                });
            }
        }
        Ok(self.lt(i, j))
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.le(i, j) || self.le(j, i)
    }

    /// Up-set of `i` as a mask.
    #[inline]
    pub fn row(&self, i: usize) -> Subset {
        self.rows[i] as Subset
    }

    /// The `∼`-classes, each sorted, ordered by smallest member.
    pub fn equivalence_classes(&self) -> Vec<Vec<usize>> {
        let mut seen: Subset = 0;
        let mut classes = Vec::new();
        for i in 0..self.len() {
            if seen & (1 << i) != 0 {
                continue;
            }
            let class: Vec<usize> = (i..self.len()).filter(|&j| self.equiv(i, j)).collect();
            for &j in &class {
                seen |= 1 << j;
            }
            classes.push(class);
        }
        classes
    }

    pub fn is_total(&self) -> bool {
        (0..self.len()).all(|i| (0..self.len()).all(|j| self.comparable(i, j)))
    }

    /// Antisymmetric, i.e. a partial order.
    pub fn is_order(&self) -> bool {
        (0..self.len()).all(|i| (i + 1..self.len()).all(|j| !self.equiv(i, j)))
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.len()).all(|i| self.rows[i] == 1 << i)
    }

    /// Number of pairs `(i, j)` with `i ≤ j`, reflexive pairs included.
    pub fn pair_count(&self) -> usize {
        self.rows[..self.len()]
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    /// Non-reflexive related pairs, lexicographically sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in bits(self.row(i)) {
                if i != j {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The strict part plus equality. Always an order.
    pub fn splitting(&self) -> Self {
        let mut p = Self::discrete(self.len());
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.lt(i, j) {
                    p.rows[i] |= 1 << j;
                }
            }
        }
        p
    }

    /// Restriction to `subset`, relabelled in increasing order.
    pub fn restrict(&self, subset: Subset) -> Self {
        let members: Vec<usize> = bits(subset).collect();
        let mut p = Self::discrete(members.len());
        for (a, &i) in members.iter().enumerate() {
            for (b, &j) in members.iter().enumerate() {
                if self.le(i, j) {
                    p.rows[a] |= 1 << b;
                }
            }
        }
        p
    }

    /// Transport along a bijection: `σ(i) ≤' σ(j) ⇔ i ≤ j`.
    pub fn relabel(&self, sigma: &[usize]) -> Self {
        let mut p = Self::discrete(self.len());
        for i in 0..self.len() {
            let mut row = 0u16;
            for j in bits(self.row(i)) {
                row |= 1 << sigma[j];
            }
            p.rows[sigma[i]] = row;
        }
        p
    }

    /// Pull back along a map: `i ≤' j ⇔ f(i) ≤ f(j)`.
    pub fn pullback(&self, f: &[usize]) -> Self {
        let n = f.len();
        let mut p = Self::discrete(n);
        for i in 0..n {
            for j in 0..n {
                if self.le(f[i], f[j]) {
                    p.rows[i] |= 1 << j;
                }
            }
        }
        p
    }

    /// Disjoint union with `other` shifted by `self.len()`; when `join` is
    /// set, every element of `self` is also placed below every element of
    /// `other`.
    pub(crate) fn concat(&self, other: &Preorder, join: bool) -> Self {
        let (a, b) = (self.len(), other.len());
        assert!(
            a + b <= MAX_N,
            "ground set of size {} exceeds {MAX_N}",
            a + b
        );
        let mut p = Self::discrete(a + b);
        let upper = ((full_mask(b)) << a) as u16;
        for i in 0..a {
            p.rows[i] = self.rows[i] | if join { upper } else { 0 };
        }
        for i in 0..b {
            p.rows[a + i] = other.rows[i] << a;
        }
        p
    }

    /// Subsets `X` with `i ∈ X, i ≤ j ⇒ j ∈ X` (open sets), or with `<` in
    /// place of `≤` when `strict` (preopen sets). Sorted by mask value.
    pub fn up_sets(&self, strict: bool) -> Vec<Subset> {
        let n = self.len();
        let above: Vec<Subset> = (0..n)
            .map(|i| {
                if strict {
                    self.strict_row(i)
                } else {
                    self.row(i)
                }
            })
            .collect();
        (0..=full_mask(n))
            .filter(|&x| bits(x).all(|i| above[i] & !x == 0))
            .collect()
    }

    fn strict_row(&self, i: usize) -> Subset {
        (0..self.len())
            .filter(|&j| self.lt(i, j))
            .fold(0, |acc, j| acc | (1 << j))
    }

    /// Serialized relation bits over the `n × n` grid, row-major, most
    /// significant bit first. Requires `n ≤ 8`.
    pub(crate) fn grid_bits(&self) -> u64 {
        let n = self.len();
        debug_assert!(n <= 8);
        let mut out = 0u64;
        for i in 0..n {
            out = (out << n) | reverse_low_bits(self.rows[i] as u64, n);
        }
        out
    }

    pub(crate) fn from_grid_bits(n: usize, grid: u64) -> Option<Self> {
        let mut rows = [0u16; MAX_N];
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            let shift = (n - 1 - i) * n;
            let chunk = (grid >> shift) & ((1u64 << n) - 1);
            *row = reverse_low_bits(chunk, n) as u16;
        }
        Self::from_rows(n, &rows)
    }

    /// Parses `n; (i,j),(k,l),...` (1-based). In strict mode the pairs must
    /// already be closed.
    pub fn parse_text(text: &str, strict: bool) -> Result<Self> {
        let (n_part, pairs_part) = text
            .split_once(';')
            .ok_or_else(|| Error::Parse(format!("expected `n; pairs`, got {text:?}")))?;
        let n: usize = n_part
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size {:?}", n_part.trim())))?;
        let pairs = parse_pair_list(pairs_part, n)?;
        if strict {
            Self::from_closed_pairs(n, &pairs)
        } else {
            Self::closure(n, &pairs)
        }
    }

    /// The pair list `(i,j),...` (1-based) of the non-reflexive pairs.
    pub fn pair_list_text(&self) -> String {
        self.pairs()
            .iter()
            .map(|(i, j)| format!("({},{})", i + 1, j + 1))
            .join(",")
    }
}

impl fmt::Display for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{};", self.len())?;
        let pairs = self.pair_list_text();
        if !pairs.is_empty() {
            write!(f, " {pairs}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Preorder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Preorder({self})")
    }
}

/// Parses a 1-based pair list `(i,j),(k,l)` into 0-based pairs.
pub(crate) fn parse_pair_list(text: &str, n: usize) -> Result<Vec<(usize, usize)>> {
    let text = text.trim();
    if text.is_empty() {
        return Ok(Vec::new());
    }
    let mut pairs = Vec::new();
    let mut rest = text;
    loop {
        rest = rest.trim_start();
        let body = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected `(` at {rest:?}")))?;
        let (inner, tail) = body
            .split_once(')')
            .ok_or_else(|| Error::Parse(format!("unclosed pair at {rest:?}")))?;
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("bad pair ({inner})")))?;
        let parse = |s: &str| -> Result<usize> {
            let v: usize = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad element {:?}", s.trim())))?;
            if v == 0 || v > n {
                return Err(Error::IndexOutOfRange { index: v, n });
            }
            Ok(v - 1)
        };
        pairs.push((parse(a)?, parse(b)?));
        let tail = tail.trim_start();
        if tail.is_empty() {
            break;
        }
        rest = tail
            .strip_prefix(',')
            .ok_or_else(|| Error::Parse(format!("expected `,` at {tail:?}")))?;
    }
    Ok(pairs)
}

/// All labelled preorders on `n` elements (optionally only total ones), by
/// brute force over reflexive relations with a transitivity filter.
pub fn enumerate_preorders(n: usize, total_only: bool) -> Result<Vec<Preorder>> {
    Error::check_limit("preorder enumeration", n, MAX_ENUMERATE_N)?;
    let off_diagonal: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut rows = [0u16; MAX_N];
    for code in 0u32..(1u32 << off_diagonal.len()) {
        for (i, row) in rows.iter_mut().enumerate().take(n) {
            *row = 1 << i;
        }
        for (b, &(i, j)) in off_diagonal.iter().enumerate() {
            if code & (1 << b) != 0 {
                rows[i] |= 1 << j;
            }
        }
        if let Some(p) = Preorder::from_rows(n, &rows) {
            if !total_only || p.is_total() {
                out.push(p);
            }
        }
    }
    Ok(out)
}

/// All packed rank vectors of length `k` (surjections onto `{0, .., m-1}`),
/// in lexicographic order.
pub fn packed_rank_vectors(k: usize) -> Vec<Vec<usize>> {
    fn grow(word: &mut Vec<usize>, used: &mut [bool], k: usize, out: &mut Vec<Vec<usize>>) {
        let remaining = k - word.len();
        if remaining == 0 {
            out.push(word.clone());
            return;
        }
        for letter in 0..k {
            let was_used = used[letter];
            used[letter] = true;
            // Letters below the new maximum that still have to appear.
            let top = used.iter().rposition(|&u| u).unwrap_or(0);
            let missing = used[..top].iter().filter(|&&u| !u).count();
            if missing < remaining {
                word.push(letter);
                grow(word, used, k, out);
                word.pop();
            }
            used[letter] = was_used;
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::with_capacity(k), &mut vec![false; k], k, &mut out);
    out
}

/// All total preorders on `k` elements, generated directly from packed rank
/// vectors (no size guard beyond [`MAX_N`]).
pub fn total_preorders(k: usize) -> Vec<Preorder> {
    packed_rank_vectors(k)
        .iter()
        .map(|r| Preorder::from_ranks(r))
        .collect()
}

pub(crate) fn full_mask(n: usize) -> Subset {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Iterates the set bits of a mask, lowest first.
pub fn bits(mut mask: Subset) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

fn reverse_low_bits(x: u64, n: usize) -> u64 {
    if n == 0 {
        0
    } else {
        x.reverse_bits() >> (64 - n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(elems: &[usize]) -> Subset {
        elems.iter().fold(0, |m, &i| m | (1 << i))
    }

    #[test]
    fn closure_examples() {
        let d = Preorder::closure(2, &[]).unwrap();
        assert!(d.is_discrete());
        let c = Preorder::closure(3, &[(0, 1), (1, 2)]).unwrap();
        assert!(c.le(0, 2));
        let ind = Preorder::closure(2, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(ind, Preorder::indiscrete(2));
        assert!(ind.equiv(0, 1));
        assert!(matches!(
            Preorder::closure(2, &[(0, 2)]),
            Err(Error::IndexOutOfRange { index: 2, n: 2 })
        ));
    }

    #[test]
    fn equivalence_class_examples() {
        assert_eq!(
            Preorder::discrete(3).equivalence_classes(),
            vec![vec![0], vec![1], vec![2]]
        );
        assert_eq!(
            Preorder::indiscrete(3).equivalence_classes(),
            vec![vec![0, 1, 2]]
        );
        let p = Preorder::closure(3, &[(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(p.equivalence_classes(), vec![vec![0, 1], vec![2]]);
    }

    #[test]
    fn strictly_less_examples() {
        let chain = Preorder::chain(2);
        assert!(chain.strictly_less(0, 1).unwrap());
        assert!(!Preorder::indiscrete(2).strictly_less(0, 1).unwrap());
        for p in enumerate_preorders(3, false).unwrap() {
            for i in 0..3 {
                assert!(!p.strictly_less(i, i).unwrap());
            }
        }
        assert!(chain.strictly_less(0, 2).is_err());
    }

    #[test]
    fn up_set_examples() {
        assert_eq!(
            Preorder::chain(2).up_sets(false),
            vec![0, set(&[1]), set(&[0, 1])]
        );
        assert_eq!(
            Preorder::indiscrete(2).up_sets(false),
            vec![0, set(&[0, 1])]
        );
        assert_eq!(Preorder::indiscrete(2).up_sets(true).len(), 4);
    }

    #[test]
    fn enumeration_counts() {
        // Oracle: independent count of transitive reflexive relations,
        // checking all triples on a plain boolean matrix.
        fn brute(n: usize, total_only: bool) -> usize {
            let off: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
                .collect();
            let mut count = 0;
            for code in 0u32..(1 << off.len()) {
                let mut m = vec![vec![false; n]; n];
                for (i, row) in m.iter_mut().enumerate() {
                    row[i] = true;
                }
                for (b, &(i, j)) in off.iter().enumerate() {
                    m[i][j] = code & (1 << b) != 0;
                }
                let transitive = (0..n)
                    .all(|i| (0..n).all(|j| (0..n).all(|k| !(m[i][j] && m[j][k]) || m[i][k])));
                let total = (0..n).all(|i| (0..n).all(|j| m[i][j] || m[j][i]));
                if transitive && (!total_only || total) {
                    count += 1;
                }
            }
            count
        }
        assert_eq!(brute(2, false), 4);
        assert_eq!(brute(3, true), 13);
        for n in 0..=4 {
            for total in [false, true] {
                assert_eq!(
                    enumerate_preorders(n, total).unwrap().len(),
                    brute(n, total)
                );
            }
        }
        assert_eq!(enumerate_preorders(1, false).unwrap().len(), 1);
        assert!(matches!(
            enumerate_preorders(6, false),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn enumerated_preorders_are_closed_and_topological() {
        for n in 0..=4 {
            for p in enumerate_preorders(n, false).unwrap() {
                assert_eq!(Preorder::closure(n, &p.pairs()).unwrap(), p);
                let open = p.up_sets(false);
                let preopen = p.up_sets(true);
                assert!(open.iter().all(|x| preopen.contains(x)));
                for family in [&open, &preopen] {
                    assert!(family.contains(&0) && family.contains(&full_mask(n)));
                    for &a in family.iter() {
                        for &b in family.iter() {
                            assert!(family.contains(&(a | b)));
                            assert!(family.contains(&(a & b)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn text_form() {
        let p = Preorder::closure(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.to_string(), "3; (1,2),(1,3),(2,3)");
        assert_eq!(Preorder::parse_text(&p.to_string(), true).unwrap(), p);
        assert_eq!(Preorder::discrete(2).to_string(), "2;");
        assert_eq!(
            Preorder::parse_text("2;", true).unwrap(),
            Preorder::discrete(2)
        );
        assert!(matches!(
            Preorder::parse_text("3; (1,2),(2,3)", true),
            Err(Error::NotClosed(0, 2))
        ));
        assert_eq!(Preorder::parse_text("3; (1,2),(2,3)", false).unwrap(), p);
        assert!(matches!(
            Preorder::parse_text("2; (1,3)", false),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(Preorder::parse_text("2 (1,2)", false).is_err());
    }

    #[test]
    fn packed_rank_vectors_are_fubini_many() {
        let counts: Vec<usize> = (0..=6).map(|k| packed_rank_vectors(k).len()).collect();
        assert_eq!(counts, vec![1, 1, 3, 13, 75, 541, 4683]);
        assert_eq!(
            packed_rank_vectors(2),
            vec![vec![0, 0], vec![0, 1], vec![1, 0]]
        );
        for k in 0..=4 {
            let mut direct = total_preorders(k);
            let mut brute = enumerate_preorders(k, true).unwrap();
            direct.sort();
            brute.sort();
            assert_eq!(direct, brute);
        }
    }

    #[test]
    fn grid_bits_round_trip() {
        for n in 0..=3 {
            for p in enumerate_preorders(n, false).unwrap() {
                assert_eq!(Preorder::from_grid_bits(n, p.grid_bits()), Some(p));
            }
        }
    }

    #[test]
    fn splitting_is_the_strict_part() {
        for p in enumerate_preorders(4, false).unwrap() {
            let s = p.splitting();
            assert!(s.is_order());
            for i in 0..4 {
                for j in 0..4 {
                    assert_eq!(s.lt(i, j), p.lt(i, j));
                }
            }
            assert_eq!(p.up_sets(true), s.up_sets(false));
        }
    }
}
