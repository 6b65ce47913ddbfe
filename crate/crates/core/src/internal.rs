//! The product over a bijection and the two internal products built on it.

use std::fmt;

use crate::algebra::Element;
use crate::canonical::canonical_key;
use crate::dqp::DoubleQuasiPoset;
use crate::error::{Error, Result};
use crate::pictures::{enumerate_maps, MapKind};

/// `⊴` sums over semi-pictures, `◁` over semi-prepictures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InternalKind {
    Le,
    Lt,
}

impl InternalKind {
    pub const BOTH: [InternalKind; 2] = [InternalKind::Le, InternalKind::Lt];

    pub fn map_kind(self) -> MapKind {
        match self {
            InternalKind::Le => MapKind::Semi,
            InternalKind::Lt => MapKind::SemiPrepicture,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            InternalKind::Le => "le",
            InternalKind::Lt => "lt",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        match name {
            "le" => Ok(InternalKind::Le),
            "lt" => Ok(InternalKind::Lt),
            other => Err(Error::Parse(format!(
                "unknown internal product kind {other:?}"
            ))),
        }
    }
}

impl fmt::Display for InternalKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `P ×_f Q`: ground set `V(P)`, `≤1` pulled back from `Q` along `f`, and
/// `≤2` taken from `P`. `f` is given by its image list.
pub fn product_over(
    p: &DoubleQuasiPoset,
    q: &DoubleQuasiPoset,
    f: &[usize],
) -> Result<DoubleQuasiPoset> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch(p.len(), q.len()));
    }
    if f.len() != p.len() {
        return Err(Error::NotBijection(format!("{f:?}")));
    }
    let mut seen = vec![false; f.len()];
    for &image in f {
        if image >= f.len() || std::mem::replace(&mut seen[image], true) {
            return Err(Error::NotBijection(format!("{f:?}")));
        }
    }
    DoubleQuasiPoset::new(q.le1().pullback(f), *p.le2())
}

/// `P ⊴ Q` or `P ◁ Q` on basis elements; zero when the sizes differ.
pub fn internal_product_dqp(
    p: &DoubleQuasiPoset,
    q: &DoubleQuasiPoset,
    kind: InternalKind,
) -> Element {
    Element::from_keys(enumerate_maps(p, q, kind.map_kind()).iter().map(|f| {
        let term = product_over(p, q, f.images()).expect("enumerated maps are bijections");
        canonical_key(&term)
    }))
}

/// Bilinear extension of [`internal_product_dqp`].
pub fn internal_product(a: &Element, b: &Element, kind: InternalKind) -> Element {
    a.bilinear(b, |x, y| {
        internal_product_dqp(&x.to_dqp(), &y.to_dqp(), kind)
    })
}
