//! Packed words, the special double posets `P_w`, compatible permutations,
//! and the internal products restricted to words.

use std::fmt;

use itertools::Itertools;

use crate::dqp::DoubleQuasiPoset;
use crate::error::{Error, Result};
use crate::internal::InternalKind;
use crate::lincomb::LinearCombination;
use crate::perm::Permutation;
use crate::preorder::Preorder;

/// Largest length accepted by [`enumerate_packed_words`].
pub const MAX_WORD_N: usize = 6;

/// A word over `1, 2, ..` whose letter set is `{1, .., k}` for some `k`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWord(Vec<usize>);

pub type WordCombination = LinearCombination<PackedWord>;
/// Elements of the group algebra of `S_n`.
pub type GroupElement = LinearCombination<Permutation>;

impl PackedWord {
    pub fn new(letters: Vec<usize>) -> Result<Self> {
        let k = letters.iter().copied().max().unwrap_or(0);
        let mut present = vec![false; k + 1];
        for &l in &letters {
            present[l] = true;
        }
        if present[0] || !present[1..].iter().all(|&p| p) {
            return Err(Error::NotPacked(format!("{letters:?}")));
        }
        Ok(PackedWord(letters))
    }

    /// Comma-separated letters, or plain digits when every letter is `≤ 9`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let letters: Option<Vec<usize>> = if text.contains(',') {
            text.split(',').map(|t| t.trim().parse().ok()).collect()
        } else {
            text.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize))
                .collect()
        };
        let letters = letters.ok_or_else(|| Error::Parse(format!("bad packed word {text:?}")))?;
        Self::new(letters)
    }

    /// The permutation with this one-line notation as a packed word.
    pub fn from_permutation(sigma: &Permutation) -> Self {
        PackedWord(sigma.one_line())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of distinct letters.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn is_permutation(&self) -> bool {
        self.max_letter() == self.len()
    }

    pub fn to_permutation(&self) -> Option<Permutation> {
        self.is_permutation()
            .then(|| Permutation::from_one_line(&self.0).expect("packed word of full range"))
    }

    /// `|w⁻¹(i)|` for each letter `i`.
    pub fn content(&self) -> Vec<usize> {
        let mut counts = vec![0; self.max_letter()];
        for &l in &self.0 {
            counts[l - 1] += 1;
        }
        counts
    }

    /// `w ∘ σ`, the word with `i`-th letter `w_{σ(i)}`.
    pub fn compose(&self, sigma: &Permutation) -> PackedWord {
        assert_eq!(self.len(), sigma.len(), "length mismatch in composition");
        PackedWord((0..self.len()).map(|i| self.0[sigma.apply(i)]).collect())
    }

    /// `P_w`: `i ≤1 j` iff `w_i ≤ w_j`, `≤2` the usual order.
    pub fn to_dqp(&self) -> DoubleQuasiPoset {
        DoubleQuasiPoset::new(Preorder::from_ranks(&self.0), Preorder::chain(self.len()))
            .expect("same ground set")
    }

    /// Inverse of [`PackedWord::to_dqp`] on labelled structures: `Some(w)`
    /// when `≤2` is the usual order and `≤1` is total.
    pub fn from_dqp(p: &DoubleQuasiPoset) -> Option<PackedWord> {
        let n = p.len();
        if *p.le2() != Preorder::chain(n) || !p.le1().is_total() {
            return None;
        }
        // The letter of `i` counts the classes weakly below it, each class
        // represented by its smallest member.
        let le1 = p.le1();
        let letters = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| le1.le(j, i) && (0..j).all(|m| !le1.equiv(m, j)))
                    .count()
            })
            .collect();
        Some(PackedWord(letters))
    }
}

impl fmt::Display for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.iter().all(|&l| l <= 9) {
            for l in &self.0 {
                write!(f, "{l}")?;
            }
            Ok(())
        } else {
            f.write_str(&self.0.iter().join(","))
        }
    }
}

impl fmt::Debug for PackedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Comp(w)`: permutations `σ` with `w_i < w_j ⇒ σ(i) < σ(j)`, sorted.
///
/// Built block by block: the positions carrying letter `l` receive the
/// values just above those used by smaller letters, in any order.
pub fn compatible(w: &PackedWord) -> Vec<Permutation> {
    let n = w.len();
    if n == 0 {
        return vec![Permutation::identity(0)];
    }
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); w.max_letter()];
    for (i, &l) in w.letters().iter().enumerate() {
        blocks[l - 1].push(i);
    }
    let mut start = 0;
    let choices: Vec<Vec<Vec<(usize, usize)>>> = blocks
        .iter()
        .map(|positions| {
            let values: Vec<usize> = (start..start + positions.len()).collect();
            start += positions.len();
            values
                .iter()
                .copied()
                .permutations(values.len())
                .map(|vals| positions.iter().copied().zip(vals).collect())
                .collect()
        })
        .collect();
    let mut out: Vec<Permutation> = choices
        .into_iter()
        .multi_cartesian_product()
        .map(|parts| {
            let mut images = vec![0; n];
            for (pos, val) in parts.into_iter().flatten() {
                images[pos] = val;
            }
            Permutation::from_images(images).expect("blocks partition the values")
        })
        .collect();
    out.sort();
    out
}

/// `P_u ◁ P_v = Σ_{σ ∈ Comp(u)} P_{v∘σ}`; `P_u ⊴ P_v = P_{v∘u}` when `u` is a
/// permutation and zero otherwise.
pub fn word_internal(
    u: &PackedWord,
    v: &PackedWord,
    kind: InternalKind,
) -> Result<WordCombination> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch(u.len(), v.len()));
    }
    Ok(match kind {
        InternalKind::Lt => WordCombination::from_keys(compatible(u).iter().map(|s| v.compose(s))),
        InternalKind::Le => match u.to_permutation() {
            Some(sigma) => WordCombination::basis(v.compose(&sigma)),
            None => WordCombination::zero(),
        },
    })
}

/// `ζ(P_w) = Σ_{σ ∈ Comp(w)} σ⁻¹`.
pub fn zeta(w: &PackedWord) -> GroupElement {
    GroupElement::from_keys(compatible(w).iter().map(Permutation::inverse))
}

/// Linear extension of [`zeta`].
pub fn zeta_linear(x: &WordCombination) -> GroupElement {
    x.map_linear(zeta)
}

/// `ζ′(σ) = P_{σ⁻¹}`.
pub fn zeta_prime(sigma: &Permutation) -> PackedWord {
    PackedWord::from_permutation(&sigma.inverse())
}

/// Product in the group algebra, `(Σ a_τ τ)(Σ b_σ σ) = Σ a_τ b_σ τ∘σ`.
pub fn group_multiply(a: &GroupElement, b: &GroupElement) -> GroupElement {
    a.bilinear(b, |t, s| GroupElement::basis(t.compose(s)))
}

/// Packed words of length `n` in lexicographic order, optionally restricted
/// to exactly `k` distinct letters and to weakly increasing words.
pub fn enumerate_packed_words(
    n: usize,
    k: Option<usize>,
    increasing_only: bool,
) -> Result<Vec<PackedWord>> {
    Error::check_limit("packed word enumeration", n, MAX_WORD_N)?;
    let mut out = Vec::new();
    let mut word = Vec::with_capacity(n);
    fill(n, &mut word, &mut out);
    Ok(out
        .into_iter()
        .filter_map(|letters| PackedWord::new(letters).ok())
        .filter(|w| k.is_none_or(|k| w.max_letter() == k))
        .filter(|w| !increasing_only || w.letters().windows(2).all(|p| p[0] <= p[1]))
        .collect())
}

fn fill(n: usize, word: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if word.len() == n {
        out.push(word.clone());
        return;
    }
    for letter in 1..=n {
        word.push(letter);
        fill(n, word, out);
        word.pop();
    }
}
