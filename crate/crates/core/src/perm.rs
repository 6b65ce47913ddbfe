use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A bijection of `{0, .., n-1}`, stored as its image list.
///
/// Bijections between two ground sets `[n]` (pictures, automorphisms,
/// compatible permutations) all use this type. Displayed 1-based in
/// one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || seen[x] {
                return Err(Error::NotBijection(format!("{images:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation(images))
    }

    /// Builds from 1-based one-line notation.
    pub fn from_one_line(letters: &[usize]) -> Result<Self> {
        if letters.contains(&0) {
            return Err(Error::NotBijection(format!("{letters:?}")));
        }
        Self::from_images(letters.iter().map(|&x| x - 1).collect())
    }

    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        Permutation(images)
    }

    /// All permutations of `n` elements in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        (0..n).permutations(n).map(Permutation).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`, i.e. `i ↦ self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.len(),
            other.len(),
            "composing permutations of different sizes"
        );
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// 1-based one-line notation.
    pub fn one_line(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }
}

/// Depth-first search over bijections `f` of `{0, .., n-1}`.
///
/// `pair_ok(i, j, f(i), f(j))` is checked for every ordered pair of assigned
/// points (including `i == j`) as soon as both are assigned, so branches die
/// on their first violated constraint. `visit` receives each complete
/// bijection and returns `false` to stop the search.
pub fn search_bijections<C, V>(n: usize, pair_ok: C, mut visit: V)
where
    C: Fn(usize, usize, usize, usize) -> bool,
    V: FnMut(&[usize]) -> bool,
{
    let mut images = vec![usize::MAX; n];
    let mut used = vec![false; n];
    extend(0, n, &pair_ok, &mut visit, &mut images, &mut used);
}

fn extend<C, V>(
    depth: usize,
    n: usize,
    pair_ok: &C,
    visit: &mut V,
    images: &mut [usize],
    used: &mut [bool],
) -> bool
where
    C: Fn(usize, usize, usize, usize) -> bool,
    V: FnMut(&[usize]) -> bool,
{
    if depth == n {
        return visit(images);
    }
    for target in 0..n {
        if used[target] {
            continue;
        }
        let consistent = pair_ok(depth, depth, target, target)
            && (0..depth).all(|j| {
                pair_ok(depth, j, target, images[j]) && pair_ok(j, depth, images[j], target)
            });
        if !consistent {
            continue;
        }
        images[depth] = target;
        used[target] = true;
        let keep_going = extend(depth + 1, n, pair_ok, visit, images, used);
        used[target] = false;
        if !keep_going {
            return false;
        }
    }
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sep = if self.len() > 9 { "," } else { "" };
        write!(f, "{}", self.one_line().iter().join(sep))
    }
}
