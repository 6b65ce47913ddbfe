//! The Hopf algebra spanned by isoclasses of double quasi-posets.
//!
//! Elements are [`LinearCombination`]s over [`CanonicalKey`]s. The product
//! is [`DoubleQuasiPoset::product`] extended bilinearly; there are two
//! coproducts, over open sets ([`Variant::Standard`]) and over preopen sets
//! ([`Variant::Strict`]).

use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::Zero;

use crate::canonical::{canonical_key, CanonicalKey};
use crate::dqp::DoubleQuasiPoset;
use crate::lincomb::LinearCombination;
use crate::preorder::full_mask;

pub type Element = LinearCombination<CanonicalKey>;
pub type Tensor = LinearCombination<(CanonicalKey, CanonicalKey)>;
pub type Tensor3 = LinearCombination<(CanonicalKey, CanonicalKey, CanonicalKey)>;

/// Selects the open-set / picture flavour or the preopen-set / prepicture
/// flavour of the coproduct, antipode and pairing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `Δ`, `Top(P)`, `Pic`, `⟨-,-⟩`.
    Standard,
    /// `Δ<`, `Top<(P)`, `Pic<`, `⟨-,-⟩<`.
    Strict,
}

impl Variant {
    pub const BOTH: [Variant; 2] = [Variant::Standard, Variant::Strict];

    pub fn is_strict(self) -> bool {
        self == Variant::Strict
    }

    pub fn name(self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Strict => "strict",
        }
    }
}

/// The basis element of `p`'s isoclass.
pub fn element(p: &DoubleQuasiPoset) -> Element {
    Element::basis(canonical_key(p))
}

/// The unit, i.e. the empty double quasi-poset.
pub fn unit() -> Element {
    Element::basis(CanonicalKey::empty())
}

pub fn multiply_keys(a: &CanonicalKey, b: &CanonicalKey) -> CanonicalKey {
    canonical_key(&a.to_dqp().product(&b.to_dqp()))
}

pub fn multiply(a: &Element, b: &Element) -> Element {
    a.bilinear(b, |x, y| Element::basis(multiply_keys(x, y)))
}

/// `Σ_O P|(V∖O) ⊗ P|O` over open (or preopen) sets `O` of `≤1`.
pub fn coproduct_dqp(p: &DoubleQuasiPoset, variant: Variant) -> Tensor {
    let full = full_mask(p.len());
    Tensor::from_keys(p.up_sets(variant.is_strict()).into_iter().map(|open| {
        (
            canonical_key(&p.restrict(full & !open)),
            canonical_key(&p.restrict(open)),
        )
    }))
}

pub fn coproduct(a: &Element, variant: Variant) -> Tensor {
    a.map_linear(|k| coproduct_dqp(&k.to_dqp(), variant))
}

/// Coefficient of the empty double quasi-poset.
pub fn counit(a: &Element) -> BigRational {
    a.coefficient(&CanonicalKey::empty())
}

/// `a ⊗ b`.
pub fn tensor(a: &Element, b: &Element) -> Tensor {
    a.bilinear(b, |x, y| Tensor::basis((*x, *y)))
}

/// Componentwise product in the tensor square.
pub fn tensor_multiply(x: &Tensor, y: &Tensor) -> Tensor {
    x.bilinear(y, |(a, b), (c, d)| {
        Tensor::basis((multiply_keys(a, c), multiply_keys(b, d)))
    })
}

/// `(f ⊗ g)(t)` for linear maps given on basis elements.
pub fn tensor_map<F, G>(t: &Tensor, mut f: F, mut g: G) -> Tensor
where
    F: FnMut(&CanonicalKey) -> Element,
    G: FnMut(&CanonicalKey) -> Element,
{
    t.map_linear(|(a, b)| tensor(&f(a), &g(b)))
}

/// `(Δ ⊗ id)(t)`.
pub fn coproduct_left(t: &Tensor, variant: Variant) -> Tensor3 {
    t.map_linear(|(a, b)| coproduct_dqp(&a.to_dqp(), variant).map_keys(|(x, y)| (*x, *y, *b)))
}

/// `(id ⊗ Δ)(t)`.
pub fn coproduct_right(t: &Tensor, variant: Variant) -> Tensor3 {
    t.map_linear(|(a, b)| coproduct_dqp(&b.to_dqp(), variant).map_keys(|(x, y)| (*a, *x, *y)))
}

/// `(ε ⊗ id)(t)`.
pub fn counit_left(t: &Tensor) -> Element {
    t.map_linear(|(a, b)| {
        if a.is_empty() {
            Element::basis(*b)
        } else {
            Element::zero()
        }
    })
}

/// `(id ⊗ ε)(t)`.
pub fn counit_right(t: &Tensor) -> Element {
    t.map_linear(|(a, b)| {
        if b.is_empty() {
            Element::basis(*a)
        } else {
            Element::zero()
        }
    })
}

/// `m(t)`.
pub fn multiply_tensor(t: &Tensor) -> Element {
    t.map_linear(|(a, b)| Element::basis(multiply_keys(a, b)))
}

/// Memoised antipode of one of the two bialgebra structures, computed by
/// the recursion `S(P) = -P - Σ S(P') P''` over the terms of `Δ(P)` with
/// both factors non-empty.
pub struct Antipode {
    variant: Variant,
    cache: HashMap<CanonicalKey, Element>,
}

impl Antipode {
    pub fn new(variant: Variant) -> Self {
        Antipode {
            variant,
            cache: HashMap::new(),
        }
    }

    pub fn of_key(&mut self, key: &CanonicalKey) -> Element {
        if let Some(hit) = self.cache.get(key) {
            return hit.clone();
        }
        let value = if key.is_empty() {
            unit()
        } else {
            let mut s = -Element::basis(*key);
            for ((left, right), c) in coproduct_dqp(&key.to_dqp(), self.variant).iter() {
                if left.is_empty() || right.is_empty() {
                    continue;
                }
                let s_left = self.of_key(left);
                let term = multiply(&s_left, &Element::basis(*right));
                s.add_scaled(&term, &-c.clone());
            }
            s
        };
        self.cache.insert(*key, value.clone());
        value
    }

    pub fn apply(&mut self, a: &Element) -> Element {
        a.map_linear(|k| self.of_key(k))
    }
}

pub fn antipode_dqp(p: &DoubleQuasiPoset, variant: Variant) -> Element {
    Antipode::new(variant).of_key(&canonical_key(p))
}

pub fn antipode(a: &Element, variant: Variant) -> Element {
    Antipode::new(variant).apply(a)
}

/// `b(P)`: the sum of all blow-ups of `P`, isomorphic ones accumulating.
pub fn upsilon_dqp(p: &DoubleQuasiPoset) -> Element {
    Element::from_keys(p.blow_ups().iter().map(canonical_key))
}

/// `Υ`, the linear extension of `P ↦ b(P)`.
pub fn upsilon(a: &Element) -> Element {
    a.map_linear(|k| upsilon_dqp(&k.to_dqp()))
}

/// The linear extension of the splitting map `pos`.
pub fn splitting_linear(a: &Element) -> Element {
    a.map_keys(|k| canonical_key(&k.to_dqp().splitting()))
}

/// `m ∘ (S ⊗ id) ∘ Δ` and `m ∘ (id ⊗ S) ∘ Δ` applied to `a`.
pub fn antipode_convolutions(a: &Element, variant: Variant) -> (Element, Element) {
    let mut s = Antipode::new(variant);
    let delta = coproduct(a, variant);
    let mut left = Element::zero();
    let mut right = Element::zero();
    for ((x, y), c) in delta.iter() {
        left.add_scaled(&multiply(&s.of_key(x), &Element::basis(*y)), c);
        right.add_scaled(&multiply(&Element::basis(*x), &s.of_key(y)), c);
    }
    (left, right)
}

/// `u(ε(a))`.
pub fn unit_counit(a: &Element) -> Element {
    let c = counit(a);
    if c.is_zero() {
        Element::zero()
    } else {
        unit().scale(&c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canonical::enumerate_isoclasses;
    use crate::dqp::Family;
    use crate::lincomb::rational;
    use crate::preorder::Preorder;

    fn d1() -> Element {
        element(&DoubleQuasiPoset::point())
    }

    fn fused_pair() -> DoubleQuasiPoset {
        DoubleQuasiPoset::new(Preorder::indiscrete(2), Preorder::chain(2)).unwrap()
    }

    #[test]
    fn multiply_examples() {
        let p = element(&fused_pair());
        assert_eq!(multiply(&unit(), &p), p);
        assert_eq!(multiply(&p, &unit()), p);
        let pt = DoubleQuasiPoset::point();
        assert_eq!(multiply(&d1(), &d1()), element(&pt.product(&pt)));
        let a = &d1() + &p;
        let b = element(&DoubleQuasiPoset::discrete(2)).scale(&rational(3));
        let c = &p - &d1();
        assert_eq!(
            multiply(&(&a + &b), &c),
            &multiply(&a, &c) + &multiply(&b, &c)
        );
    }

    #[test]
    fn coproduct_examples() {
        let k1 = canonical_key(&DoubleQuasiPoset::point());
        let e = CanonicalKey::empty();
        assert_eq!(
            coproduct(&d1(), Variant::Standard),
            Tensor::from_keys([(k1, e), (e, k1)])
        );
        let p = fused_pair();
        let kp = canonical_key(&p);
        assert_eq!(
            coproduct_dqp(&p, Variant::Standard),
            Tensor::from_keys([(kp, e), (e, kp)])
        );
        assert_eq!(
            coproduct_dqp(&p, Variant::Strict),
            Tensor::from_keys([(kp, e), (e, kp), (k1, k1), (k1, k1)])
        );
    }

    #[test]
    fn counit_examples() {
        assert_eq!(counit(&unit()), rational(1));
        assert_eq!(counit(&d1()), rational(0));
        for n in 0..=3 {
            for k in enumerate_isoclasses(n, Family::Dqp).unwrap() {
                for v in Variant::BOTH {
                    let delta = coproduct(&Element::basis(k), v);
                    assert_eq!(counit_left(&delta), Element::basis(k));
                    assert_eq!(counit_right(&delta), Element::basis(k));
                }
            }
        }
    }

    #[test]
    fn antipode_examples() {
        for v in Variant::BOTH {
            assert_eq!(antipode(&unit(), v), unit());
            assert_eq!(antipode(&d1(), v), -d1());
        }
        let pt = DoubleQuasiPoset::point();
        let pp = pt.product(&pt);
        let s = antipode_dqp(&pp, Variant::Standard);
        // ≤1 is discrete, so all four subsets are open and
        // S(D1·D1) = -D1·D1 - 2·S(D1)·D1 = D1·D1.
        assert_eq!(s, element(&pp));
        for n in 1..=3 {
            for k in enumerate_isoclasses(n, Family::Dqp).unwrap() {
                for v in Variant::BOTH {
                    let (left, right) = antipode_convolutions(&Element::basis(k), v);
                    assert!(left.is_zero(), "{k:?}");
                    assert!(right.is_zero(), "{k:?}");
                }
            }
        }
    }

    #[test]
    fn upsilon_examples() {
        let c2 = DoubleQuasiPoset::new(Preorder::chain(2), Preorder::chain(2)).unwrap();
        assert_eq!(upsilon(&element(&c2)), element(&c2));
        let fused3 = DoubleQuasiPoset::new(
            Preorder::closure(3, &[(0, 1), (1, 2), (2, 1)]).unwrap(),
            Preorder::chain(3),
        )
        .unwrap();
        let u = upsilon(&element(&fused3));
        assert_eq!(u.len(), 3);
        assert_eq!(u.coefficient(&canonical_key(&fused3)), rational(1));
        let ind3 = DoubleQuasiPoset::new(Preorder::indiscrete(3), Preorder::chain(3)).unwrap();
        assert_eq!(upsilon(&element(&ind3)).coefficient_sum(), rational(13));
    }

    #[test]
    fn splitting_examples() {
        for n in 0..=3 {
            for k in enumerate_isoclasses(n, Family::Dqp).unwrap() {
                let e = Element::basis(k);
                let once = splitting_linear(&e);
                assert_eq!(splitting_linear(&once), once);
                assert!(once.keys().all(|k| k.to_dqp().is_double_poset()));
            }
        }
        let a = &d1() + &element(&fused_pair());
        let b = element(&fused_pair()).scale(&rational(2));
        assert_eq!(
            splitting_linear(&multiply(&a, &b)),
            multiply(&splitting_linear(&a), &splitting_linear(&b))
        );
    }
}
