//! Double quasi-posets: a ground set `{0, .., n-1}` carrying two preorders.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::perm::search_bijections;
use crate::preorder::{self, full_mask, total_preorders, Preorder, Subset};

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DoubleQuasiPoset {
    le1: Preorder,
    le2: Preorder,
}

/// The families of double quasi-posets that carry their own sub-Hopf
/// algebras.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    /// All double quasi-posets.
    Dqp,
    /// Special: `≤2` total.
    Sqp,
    /// Double posets: both relations antisymmetric.
    Dp,
    /// Trivial: `≤1` discrete.
    Tqp,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Dqp, Family::Sqp, Family::Dp, Family::Tqp];

    pub fn contains(self, p: &DoubleQuasiPoset) -> bool {
        match self {
            Family::Dqp => true,
            Family::Sqp => p.is_special(),
            Family::Dp => p.is_double_poset(),
            Family::Tqp => p.is_trivial(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Dqp => "dqp",
            Family::Sqp => "sqp",
            Family::Dp => "dp",
            Family::Tqp => "tqp",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "dqp" => Ok(Family::Dqp),
            "sqp" => Ok(Family::Sqp),
            "dp" => Ok(Family::Dp),
            "tqp" => Ok(Family::Tqp),
            other => Err(Error::Parse(format!("unknown family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl DoubleQuasiPoset {
    pub fn new(le1: Preorder, le2: Preorder) -> Result<Self> {
        if le1.len() != le2.len() {
            return Err(Error::SizeMismatch(le1.len(), le2.len()));
        }
        Ok(DoubleQuasiPoset { le1, le2 })
    }

    /// The empty double quasi-poset, unit of the product.
    pub fn empty() -> Self {
        Self::discrete(0)
    }

    /// The one-point double quasi-poset.
    pub fn point() -> Self {
        Self::discrete(1)
    }

    /// Both relations discrete.
    pub fn discrete(n: usize) -> Self {
        DoubleQuasiPoset {
            le1: Preorder::discrete(n),
            le2: Preorder::discrete(n),
        }
    }

    /// `P_[n]`: discrete `≤1`, `≤2` the chain `0 < .. < n-1`.
    pub fn trivial_chain(n: usize) -> Self {
        DoubleQuasiPoset {
            le1: Preorder::discrete(n),
            le2: Preorder::chain(n),
        }
    }

    pub(crate) fn from_parts(le1: Preorder, le2: Preorder) -> Self {
        debug_assert_eq!(le1.len(), le2.len());
        DoubleQuasiPoset { le1, le2 }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.le1.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.le1.is_empty()
    }

    #[inline]
    pub fn le1(&self) -> &Preorder {
        &self.le1
    }

    #[inline]
    pub fn le2(&self) -> &Preorder {
        &self.le2
    }

    /// The product `PQ`: disjoint union for `≤1`; for `≤2` every element of
    /// `self` also lies below every element of `other`. Elements of `other`
    /// are shifted by `self.len()`.
    pub fn product(&self, other: &DoubleQuasiPoset) -> DoubleQuasiPoset {
        DoubleQuasiPoset {
            le1: self.le1.concat(&other.le1, false),
            le2: self.le2.concat(&other.le2, true),
        }
    }

    /// Restriction to a subset given as a mask, relabelled increasingly.
    pub fn restrict(&self, subset: Subset) -> DoubleQuasiPoset {
        debug_assert_eq!(subset & !full_mask(self.len()), 0);
        DoubleQuasiPoset {
            le1: self.le1.restrict(subset),
            le2: self.le2.restrict(subset),
        }
    }

    /// Restriction to a list of 0-based members.
    pub fn restrict_to(&self, members: &[usize]) -> Result<DoubleQuasiPoset> {
        let mut mask: Subset = 0;
        for &m in members {
            if m >= self.len() {
                return Err(Error::IndexOutOfRange {
                    index: m,
                    n: self.len(),
                });
            }
            mask |= 1 << m;
        }
        Ok(self.restrict(mask))
    }

    /// `pos(P)`: both relations replaced by their strict part plus equality.
    pub fn splitting(&self) -> DoubleQuasiPoset {
        DoubleQuasiPoset {
            le1: self.le1.splitting(),
            le2: self.le2.splitting(),
        }
    }

    /// Swaps the two preorders.
    pub fn iota(&self) -> DoubleQuasiPoset {
        DoubleQuasiPoset {
            le1: self.le2,
            le2: self.le1,
        }
    }

    /// Transport along a bijection of the ground set.
    pub fn relabel(&self, sigma: &[usize]) -> DoubleQuasiPoset {
        DoubleQuasiPoset {
            le1: self.le1.relabel(sigma),
            le2: self.le2.relabel(sigma),
        }
    }

    pub fn is_special(&self) -> bool {
        self.le2.is_total()
    }

    pub fn is_strict_special(&self) -> bool {
        self.le2.is_total() && self.le2.is_order()
    }

    pub fn is_trivial(&self) -> bool {
        self.le1.is_discrete()
    }

    pub fn is_double_poset(&self) -> bool {
        self.le1.is_order() && self.le2.is_order()
    }

    /// `(x_P, y_P)`: the number of pairs related by `≤1` and by `≤2`,
    /// reflexive pairs included.
    pub fn pair_stats(&self) -> (usize, usize) {
        (self.le1.pair_count(), self.le2.pair_count())
    }

    /// Open sets (`strict = false`) or preopen sets (`strict = true`) of `≤1`.
    pub fn up_sets(&self, strict: bool) -> Vec<Subset> {
        self.le1.up_sets(strict)
    }

    /// Replace `≤1` on one `∼1`-class by a total preorder on that class,
    /// leaving all other relations as they are. `class` must be sorted.
    fn blow_up_class(le1: &Preorder, class: &[usize], total: &Preorder) -> Preorder {
        let n = le1.len();
        let class_mask: Subset = class.iter().fold(0, |m, &i| m | (1 << i));
        let mut rows: Vec<u16> = (0..n).map(|i| le1.row(i) as u16).collect();
        for (a, &i) in class.iter().enumerate() {
            let inside = class
                .iter()
                .enumerate()
                .filter(|&(b, _)| total.le(a, b))
                .fold(0 as Subset, |m, (_, &j)| m | (1 << j));
            rows[i] = ((le1.row(i) & !class_mask) | inside) as u16;
        }
        Preorder::from_rows(n, &rows).expect("blowing up a class preserves transitivity")
    }

    /// The elementary blow-ups: one non-trivial `∼1`-class re-ordered by a
    /// total preorder. Includes `self` (indiscrete choice) once per class.
    pub fn elementary_blow_ups(&self) -> Vec<DoubleQuasiPoset> {
        let mut out = Vec::new();
        for class in self.le1.equivalence_classes() {
            if class.len() < 2 {
                continue;
            }
            for total in total_preorders(class.len()) {
                out.push(DoubleQuasiPoset {
                    le1: Self::blow_up_class(&self.le1, &class, &total),
                    le2: self.le2,
                });
            }
        }
        out
    }

    /// `B(P)`: every labelled structure obtained by choosing, for each
    /// non-trivial `∼1`-class independently, a total preorder on it.
    ///
    /// `P` itself is the all-indiscrete choice and comes first. Isomorphic
    /// results are kept separately.
    pub fn blow_ups(&self) -> Vec<DoubleQuasiPoset> {
        let classes: Vec<Vec<usize>> = self
            .le1
            .equivalence_classes()
            .into_iter()
            .filter(|c| c.len() >= 2)
            .collect();
        let choices: Vec<Vec<Preorder>> =
            classes.iter().map(|c| total_preorders(c.len())).collect();
        let mut out = vec![*self];
        for (class, totals) in classes.iter().zip(&choices) {
            out = out
                .iter()
                .flat_map(|partial| {
                    totals.iter().map(move |total| DoubleQuasiPoset {
                        le1: Self::blow_up_class(&partial.le1, class, total),
                        le2: partial.le2,
                    })
                })
                .collect();
        }
        out
    }

    /// The blow-up order `P ≤ Q`: some bijection `f` preserves
    /// `≤1`-comparability both ways, maps `<1` into `<1`, reflects `∼1`, and
    /// preserves `≤2` both ways.
    pub fn is_blowup_le(&self, other: &DoubleQuasiPoset) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let (p, q) = (self, other);
        let mut found = false;
        search_bijections(
            p.len(),
            |i, j, fi, fj| {
                p.le1.comparable(i, j) == q.le1.comparable(fi, fj)
                    && (!p.le1.lt(i, j) || q.le1.lt(fi, fj))
                    && (!q.le1.equiv(fi, fj) || p.le1.equiv(i, j))
                    && p.le2.le(i, j) == q.le2.le(fi, fj)
            },
            |_| {
                found = true;
                false
            },
        );
        found
    }

    /// Text form `dqp n; <≤1 pairs>; <≤2 pairs>` with 1-based sorted
    /// non-reflexive pairs.
    pub fn parse_text(text: &str) -> Result<Self> {
        let body = text
            .trim()
            .strip_prefix("dqp")
            .ok_or_else(|| Error::Parse(format!("expected `dqp` prefix in {text:?}")))?;
        let parts: Vec<&str> = body.split(';').collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!(
                "expected `dqp n; pairs; pairs`, got {text:?}"
            )));
        }
        let n: usize = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad size {:?}", parts[0].trim())))?;
        Error::check_limit("double quasi-poset", n, preorder::MAX_N)?;
        let le1 = Preorder::from_closed_pairs(n, &preorder::parse_pair_list(parts[1], n)?)?;
        let le2 = Preorder::from_closed_pairs(n, &preorder::parse_pair_list(parts[2], n)?)?;
        Ok(DoubleQuasiPoset { le1, le2 })
    }
}

impl fmt::Display for DoubleQuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let section = |p: &Preorder| {
            let pairs = p.pair_list_text();
            if pairs.is_empty() {
                String::new()
            } else {
                format!(" {pairs}")
            }
        };
        write!(
            f,
            "dqp {};{};{}",
            self.len(),
            section(&self.le1),
            section(&self.le2)
        )
    }
}

impl fmt::Debug for DoubleQuasiPoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders the `∼1`-classes of `≤1` with their strict covering relations,
/// e.g. `{1}<{2,3}`. Used in diagnostics only.
pub fn describe_le1(p: &DoubleQuasiPoset) -> String {
    let classes = p.le1.equivalence_classes();
    let name = |c: &Vec<usize>| format!("{{{}}}", c.iter().map(|i| i + 1).join(","));
    let mut parts: Vec<String> = Vec::new();
    for a in &classes {
        for b in &classes {
            if p.le1.lt(a[0], b[0]) {
                let covered = classes
                    .iter()
                    .all(|c| !(p.le1.lt(a[0], c[0]) && p.le1.lt(c[0], b[0])));
                if covered {
                    parts.push(format!("{}<{}", name(a), name(b)));
                }
            }
        }
    }
    for c in &classes {
        if !parts.iter().any(|s| s.contains(&name(c))) {
            parts.push(name(c));
        }
    }
    parts.join(" ")
}
