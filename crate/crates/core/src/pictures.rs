//! Pictures and their relatives: bijections `f : V(P) → V(Q)` subject to
//! order implications between `≤1` on one side and `≤2` on the other.

use std::collections::BTreeSet;
use std::fmt;

use crate::algebra::Variant;
use crate::canonical::automorphisms;
use crate::dqp::DoubleQuasiPoset;
use crate::error::{Error, Result};
use crate::perm::{search_bijections, Permutation};

/// The five classes of bijections.
///
/// Forward implications go from `≤1` of `P` to `≤2` of `Q`; reflected ones
/// from `≤1` of `Q` back to `≤2` of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapKind {
    /// `≤ ⇒ ≤` and `< ⇒ <`, forward and reflected.
    Picture,
    /// `< ⇒ <`, forward and reflected.
    Prepicture,
    /// `< ⇒ ≤`, forward and reflected.
    SemiStandard,
    /// `≤ ⇒ ≤` and `< ⇒ <`, forward only (`I(P,Q)`).
    Semi,
    /// `< ⇒ <`, forward only (`I<(P,Q)`).
    SemiPrepicture,
}

impl MapKind {
    pub const ALL: [MapKind; 5] = [
        MapKind::Picture,
        MapKind::Prepicture,
        MapKind::SemiStandard,
        MapKind::Semi,
        MapKind::SemiPrepicture,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MapKind::Picture => "picture",
            MapKind::Prepicture => "prepicture",
            MapKind::SemiStandard => "semistandard",
            MapKind::Semi => "semi",
            MapKind::SemiPrepicture => "semiprepicture",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        MapKind::ALL
            .into_iter()
            .find(|k| k.name() == name)
            .ok_or_else(|| Error::Parse(format!("unknown map kind {name:?}")))
    }

    /// The kind counted by the pairing of the given variant.
    pub fn of_pairing(variant: Variant) -> Self {
        match variant {
            Variant::Standard => MapKind::Picture,
            Variant::Strict => MapKind::Prepicture,
        }
    }

    /// Does the ordered pair `(i, j) ↦ (fi, fj)` satisfy every implication
    /// of this kind?
    #[inline]
    pub fn admits(
        self,
        p: &DoubleQuasiPoset,
        q: &DoubleQuasiPoset,
        (i, j): (usize, usize),
        (fi, fj): (usize, usize),
    ) -> bool {
        let (p1, p2, q1, q2) = (p.le1(), p.le2(), q.le1(), q.le2());
        let fwd_weak = || !p1.le(i, j) || q2.le(fi, fj);
        let fwd_strict = || !p1.lt(i, j) || q2.lt(fi, fj);
        let fwd_semistandard = || !p1.lt(i, j) || q2.le(fi, fj);
        let back_weak = || !q1.le(fi, fj) || p2.le(i, j);
        let back_strict = || !q1.lt(fi, fj) || p2.lt(i, j);
        let back_semistandard = || !q1.lt(fi, fj) || p2.le(i, j);
        match self {
            MapKind::Picture => fwd_weak() && fwd_strict() && back_weak() && back_strict(),
            MapKind::Prepicture => fwd_strict() && back_strict(),
            MapKind::SemiStandard => fwd_semistandard() && back_semistandard(),
            MapKind::Semi => fwd_weak() && fwd_strict(),
            MapKind::SemiPrepicture => fwd_strict(),
        }
    }

    /// Checks a complete bijection against every pair.
    pub fn is_satisfied_by(
        self,
        p: &DoubleQuasiPoset,
        q: &DoubleQuasiPoset,
        f: &Permutation,
    ) -> bool {
        p.len() == q.len()
            && f.len() == p.len()
            && (0..p.len())
                .all(|i| (0..p.len()).all(|j| self.admits(p, q, (i, j), (f.apply(i), f.apply(j)))))
    }
}

impl fmt::Display for MapKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Every bijection `V(P) → V(Q)` of the given kind, in lexicographic order
/// of image lists. Empty when the sizes differ.
pub fn enumerate_maps(
    p: &DoubleQuasiPoset,
    q: &DoubleQuasiPoset,
    kind: MapKind,
) -> Vec<Permutation> {
    let mut out = Vec::new();
    if p.len() != q.len() {
        return out;
    }
    search_bijections(
        p.len(),
        |i, j, fi, fj| kind.admits(p, q, (i, j), (fi, fj)),
        |f| {
            out.push(Permutation::from_images_unchecked(f.to_vec()));
            true
        },
    );
    out
}

/// `|enumerate_maps(p, q, kind)|` without materialising the maps.
pub fn count_maps(p: &DoubleQuasiPoset, q: &DoubleQuasiPoset, kind: MapKind) -> u64 {
    if p.len() != q.len() {
        return 0;
    }
    let mut count = 0u64;
    search_bijections(
        p.len(),
        |i, j, fi, fj| kind.admits(p, q, (i, j), (fi, fj)),
        |_| {
            count += 1;
            true
        },
    );
    count
}

/// `⟨P, Q⟩ = |Pic(P,Q)|` or `⟨P, Q⟩< = |Pic<(P,Q)|`; zero when sizes differ.
pub fn pairing(p: &DoubleQuasiPoset, q: &DoubleQuasiPoset, variant: Variant) -> u64 {
    count_maps(p, q, MapKind::of_pairing(variant))
}

/// A double coset `Aut(Q) · f · Aut(P)` of semi-standard pictures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternOrbit {
    /// The lexicographically smallest member.
    pub representative: Permutation,
    pub size: usize,
}

/// `Pat(P,Q)`: semi-standard pictures modulo `f ↦ ψ ∘ f ∘ φ` for
/// `φ ∈ Aut(P)`, `ψ ∈ Aut(Q)`. Sorted by representative.
pub fn patterns(p: &DoubleQuasiPoset, q: &DoubleQuasiPoset) -> Result<Vec<PatternOrbit>> {
    let maps = enumerate_maps(p, q, MapKind::SemiStandard);
    if maps.is_empty() {
        return Ok(Vec::new());
    }
    let aut_p = automorphisms(p)?;
    let aut_q = automorphisms(q)?;
    let mut remaining: BTreeSet<Permutation> = maps.into_iter().collect();
    let mut orbits = Vec::new();
    while let Some(start) = remaining.pop_first() {
        // Both groups are closed under composition, so one layer of
        // ψ ∘ f ∘ φ already gives the whole double coset.
        let mut orbit = BTreeSet::new();
        for psi in &aut_q {
            let left = psi.compose(&start);
            for phi in &aut_p {
                orbit.insert(left.compose(phi));
            }
        }
        for g in &orbit {
            remaining.remove(g);
        }
        orbits.push(PatternOrbit {
            representative: start,
            size: orbit.len(),
        });
    }
    Ok(orbits)
}
