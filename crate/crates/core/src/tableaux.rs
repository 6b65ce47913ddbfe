//! Young diagrams as double quasi-posets, and filling counts computed
//! directly on diagrams.
//!
//! A diagram is given by its row lengths from the top row down, so lengths
//! weakly increase. Cells sit in `N²` with `x` the column and `y` the height
//! above the bottom row, ordered componentwise. Cells are numbered in
//! reading order: top row first, left to right.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dqp::DoubleQuasiPoset;
use crate::error::{Error, Result};
use crate::preorder::{Preorder, MAX_N};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

/// Whether fillings must increase strictly or weakly along rows and columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FillingMode {
    Strict,
    Weak,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self> {
        if rows.contains(&0) {
            return Err(Error::InvalidShape(format!("{rows:?} has an empty row")));
        }
        if rows.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidShape(format!(
                "{rows:?}: row lengths must weakly increase from the top"
            )));
        }
        let n: usize = rows.iter().sum();
        Error::check_limit("young diagram", n, MAX_N)?;
        Ok(YoungDiagram { rows })
    }

    /// Comma-separated row lengths, top row first.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.is_empty() {
            return Self::new(Vec::new());
        }
        let rows = text
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::Parse(format!("bad row lengths {text:?}")))?;
        Self::new(rows)
    }

    /// Every diagram with `n` cells.
    pub fn all(n: usize) -> Vec<YoungDiagram> {
        fn grow(left: usize, max: usize, parts: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            if left == 0 {
                let rows = parts.iter().rev().copied().collect();
                out.push(YoungDiagram { rows });
                return;
            }
            for part in (1..=left.min(max)).rev() {
                parts.push(part);
                grow(left - part, part, parts, out);
                parts.pop();
            }
        }
        let mut out = Vec::new();
        grow(n, n, &mut Vec::new(), &mut out);
        out
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// `(x, y)` of each cell in reading order.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let height = self.rows.len();
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| (0..len).map(move |x| (x, height - 1 - r)))
            .collect()
    }

    /// The transposed diagram.
    pub fn conjugate(&self) -> YoungDiagram {
        let width = self.rows.last().copied().unwrap_or(0);
        let rows = (0..width)
            .rev()
            .map(|x| self.rows.iter().filter(|&&len| len > x).count())
            .collect();
        YoungDiagram { rows }
    }

    /// The componentwise order on cells.
    pub fn cell_order(&self) -> Preorder {
        let cells = self.cells();
        let pairs: Vec<(usize, usize)> = (0..cells.len())
            .cartesian_product(0..cells.len())
            .filter(|&(i, j)| cells[i].0 <= cells[j].0 && cells[i].1 <= cells[j].1)
            .collect();
        Preorder::closure(cells.len(), &pairs).expect("indices in range")
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.rows.iter().join(","))
    }
}

impl fmt::Debug for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "λ({self})")
    }
}

/// `Q_λ`: the cell order as `≤1`; `≤2` defaults to the reading order.
pub fn q_lambda(lambda: &YoungDiagram, le2: Option<Preorder>) -> Result<DoubleQuasiPoset> {
    let le2 = le2.unwrap_or_else(|| Preorder::chain(lambda.len()));
    DoubleQuasiPoset::new(lambda.cell_order(), le2)
}

/// `P_λ`: the cell order, with the reading order as `≤2`.
pub fn p_lambda(lambda: &YoungDiagram) -> DoubleQuasiPoset {
    q_lambda(lambda, None).expect("sizes agree")
}

/// `Q(𝐧)`: discrete `≤1`, and `≤2` the total preorder with consecutive
/// blocks of sizes `n_1, .., n_k`.
pub fn q_of_composition(parts: &[usize]) -> Result<DoubleQuasiPoset> {
    if parts.contains(&0) {
        return Err(Error::InvalidShape(format!("{parts:?} has a zero part")));
    }
    let n: usize = parts.iter().sum();
    Error::check_limit("composition", n, MAX_N)?;
    let ranks: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(block, &len)| std::iter::repeat_n(block, len))
        .collect();
    DoubleQuasiPoset::new(Preorder::discrete(n), Preorder::from_ranks(&ranks))
}

/// Parses a comma-separated composition.
pub fn parse_composition(text: &str) -> Result<Vec<usize>> {
    let parts = text
        .split(',')
        .map(|t| t.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::Parse(format!("bad composition {text:?}")))?;
    if parts.contains(&0) {
        return Err(Error::InvalidShape(format!("{parts:?} has a zero part")));
    }
    Ok(parts)
}

/// Fill order for the oracles: bottom row first, left to right, so the
/// left and lower neighbours of a cell are always filled before it.
/// Returns, per step, the cell index and the steps of its left and lower
/// neighbours.
fn fill_plan(lambda: &YoungDiagram) -> Vec<(usize, Option<usize>, Option<usize>)> {
    let cells = lambda.cells();
    let mut order: Vec<usize> = (0..cells.len()).collect();
    order.sort_by_key(|&c| (cells[c].1, cells[c].0));
    let step_of = |x: usize, y: usize| order.iter().position(|&c| cells[c] == (x, y));
    order
        .iter()
        .map(|&c| {
            let (x, y) = cells[c];
            let left = x.checked_sub(1).and_then(|x| step_of(x, y));
            let below = y.checked_sub(1).and_then(|y| step_of(x, y));
            (c, left, below)
        })
        .collect()
}

/// Fillings of `λ` by the elements of `Q`, each used once, increasing
/// along rows (left to right) and columns (bottom to top) for `≤2` of `Q`.
pub fn tableau_oracle(
    lambda: &YoungDiagram,
    q: &DoubleQuasiPoset,
    mode: FillingMode,
) -> Result<u64> {
    if lambda.len() != q.len() {
        return Err(Error::SizeMismatch(lambda.len(), q.len()));
    }
    let plan = fill_plan(lambda);
    let le2 = q.le2();
    let ok = |a: usize, b: usize| match mode {
        FillingMode::Strict => le2.lt(a, b),
        FillingMode::Weak => le2.le(a, b),
    };
    fn go(
        step: usize,
        plan: &[(usize, Option<usize>, Option<usize>)],
        filled: &mut Vec<usize>,
        used: &mut [bool],
        ok: &dyn Fn(usize, usize) -> bool,
    ) -> u64 {
        if step == plan.len() {
            return 1;
        }
        let (_, left, below) = plan[step];
        let mut total = 0;
        for v in 0..used.len() {
            if used[v]
                || left.is_some_and(|s| !ok(filled[s], v))
                || below.is_some_and(|s| !ok(filled[s], v))
            {
                continue;
            }
            used[v] = true;
            filled.push(v);
            total += go(step + 1, plan, filled, used, ok);
            filled.pop();
            used[v] = false;
        }
        total
    }
    Ok(go(
        0,
        &plan,
        &mut Vec::new(),
        &mut vec![false; q.len()],
        &ok,
    ))
}

/// Fillings of `λ` by values `1..=k` where value `i` appears `content[i-1]`
/// times, weakly increasing along rows and columns.
pub fn content_filling_count(lambda: &YoungDiagram, content: &[usize]) -> Result<u64> {
    let total: usize = content.iter().sum();
    if total != lambda.len() {
        return Err(Error::SizeMismatch(lambda.len(), total));
    }
    let plan = fill_plan(lambda);
    fn go(
        step: usize,
        plan: &[(usize, Option<usize>, Option<usize>)],
        filled: &mut Vec<usize>,
        left_over: &mut [usize],
    ) -> u64 {
        if step == plan.len() {
            return 1;
        }
        let (_, left, below) = plan[step];
        let floor = left
            .map(|s| filled[s])
            .into_iter()
            .chain(below.map(|s| filled[s]))
            .max()
            .unwrap_or(0);
        let mut total = 0;
        for v in floor..left_over.len() {
            if left_over[v] == 0 {
                continue;
            }
            left_over[v] -= 1;
            filled.push(v);
            total += go(step + 1, plan, filled, left_over);
            filled.pop();
            left_over[v] += 1;
        }
        total
    }
    Ok(go(0, &plan, &mut Vec::new(), &mut content.to_vec()))
}

/// A reproducible pool of preorders on `n` points: the discrete, chain and
/// indiscrete ones, every block preorder of a composition of `n`, and
/// `extra` closures of random relations.
pub fn preorder_pool(n: usize, extra: usize, seed: u64) -> Vec<Preorder> {
    let mut pool = BTreeSet::new();
    pool.insert(Preorder::discrete(n));
    pool.insert(Preorder::chain(n));
    pool.insert(Preorder::indiscrete(n));
    for k in 1..=n {
        for cuts in (1..n).combinations(k - 1) {
            let ranks: Vec<usize> = (0..n)
                .map(|i| cuts.iter().filter(|&&c| c <= i).count())
                .collect();
            pool.insert(Preorder::from_ranks(&ranks));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..extra {
        let density = rng.random_range(0.05..0.5);
        let pairs: Vec<(usize, usize)> = (0..n)
            .cartesian_product(0..n)
            .filter(|&(i, j)| i != j && rng.random_bool(density))
            .collect();
        pool.insert(Preorder::closure(n, &pairs).expect("indices in range"));
    }
    pool.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::automorphisms;

    fn shape(rows: &[usize]) -> YoungDiagram {
        YoungDiagram::new(rows.to_vec()).unwrap()
    }

    #[test]
    fn validation() {
        assert!(YoungDiagram::new(vec![2, 1]).is_err());
        assert!(YoungDiagram::new(vec![0]).is_err());
        assert_eq!(YoungDiagram::parse("1,3,3").unwrap(), shape(&[1, 3, 3]));
        assert!(YoungDiagram::parse("1;3").is_err());
        assert!(q_of_composition(&[1, 0]).is_err());
    }

    #[test]
    fn reading_order_of_the_seven_cell_shape() {
        let lambda = shape(&[1, 3, 3]);
        assert_eq!(
            lambda.cells(),
            vec![(0, 2), (0, 1), (1, 1), (2, 1), (0, 0), (1, 0), (2, 0)]
        );
        let p = p_lambda(&lambda);
        // The bottom-left cell (label 5) lies below everything.
        assert!((0..7).all(|c| p.le1().le(4, c)));
        assert!(p.le2().lt(0, 6));
    }

    #[test]
    fn single_cell_is_a_point() {
        assert_eq!(p_lambda(&shape(&[1])), DoubleQuasiPoset::trivial_chain(1));
    }

    #[test]
    fn conjugation() {
        assert_eq!(shape(&[1, 3, 3]).conjugate(), shape(&[2, 2, 3]));
        for n in 0..=6 {
            for lambda in YoungDiagram::all(n) {
                assert_eq!(lambda.conjugate().conjugate(), lambda);
            }
        }
        let counts: Vec<usize> = (0..=6).map(|n| YoungDiagram::all(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn p_lambda_is_rigid() {
        for n in 1..=6 {
            for lambda in YoungDiagram::all(n) {
                assert_eq!(
                    automorphisms(&p_lambda(&lambda)).unwrap().len(),
                    1,
                    "{lambda}"
                );
            }
        }
    }

    #[test]
    fn composition_automorphisms() {
        assert_eq!(
            q_of_composition(&[1, 1, 1]).unwrap(),
            DoubleQuasiPoset::trivial_chain(3)
        );
        assert_eq!(
            automorphisms(&q_of_composition(&[2, 3, 2, 1]).unwrap())
                .unwrap()
                .len(),
            24
        );
        assert_eq!(
            automorphisms(&q_of_composition(&[4]).unwrap())
                .unwrap()
                .len(),
            24
        );
    }

    #[test]
    fn oracle_examples() {
        let chain3 = DoubleQuasiPoset::trivial_chain(3);
        assert_eq!(
            tableau_oracle(&shape(&[1, 2]), &chain3, FillingMode::Strict).unwrap(),
            2
        );
        assert_eq!(
            tableau_oracle(
                &shape(&[1, 1, 1, 1]),
                &DoubleQuasiPoset::trivial_chain(4),
                FillingMode::Strict
            )
            .unwrap(),
            1
        );
        let flat = DoubleQuasiPoset::new(Preorder::discrete(3), Preorder::indiscrete(3)).unwrap();
        assert_eq!(
            tableau_oracle(&shape(&[1, 2]), &flat, FillingMode::Weak).unwrap(),
            6
        );
        assert!(tableau_oracle(
            &shape(&[1, 2]),
            &DoubleQuasiPoset::point(),
            FillingMode::Weak
        )
        .is_err());
    }

    #[test]
    fn standard_counts_are_conjugation_invariant() {
        for n in 1..=6 {
            let chain = DoubleQuasiPoset::trivial_chain(n);
            for lambda in YoungDiagram::all(n) {
                assert_eq!(
                    tableau_oracle(&lambda, &chain, FillingMode::Strict).unwrap(),
                    tableau_oracle(&lambda.conjugate(), &chain, FillingMode::Strict).unwrap()
                );
            }
        }
    }

    #[test]
    fn content_fillings() {
        // Shape (2,1): the corner holds the smallest value, the other two
        // cells are unconstrained relative to each other.
        assert_eq!(
            content_filling_count(&shape(&[1, 2]), &[1, 1, 1]).unwrap(),
            2
        );
        assert_eq!(content_filling_count(&shape(&[1, 2]), &[2, 1]).unwrap(), 2);
        assert_eq!(content_filling_count(&shape(&[1, 2]), &[1, 2]).unwrap(), 1);
        assert_eq!(content_filling_count(&shape(&[3]), &[1, 2]).unwrap(), 1);
        assert_eq!(content_filling_count(&shape(&[1, 1]), &[2]).unwrap(), 1);
    }

    #[test]
    fn pool_is_reproducible() {
        assert_eq!(preorder_pool(4, 10, 3), preorder_pool(4, 10, 3));
        assert!(preorder_pool(4, 10, 3).len() >= 8);
    }
}
