//! Finitely supported formal linear combinations with exact rational
//! coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// `Σ c_k · k` over keys `K`. Zero coefficients are never stored, so two
/// combinations are equal iff they are equal as vectors.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearCombination<K: Ord> {
    terms: BTreeMap<K, BigRational>,
}

impl<K: Ord> Default for LinearCombination<K> {
    fn default() -> Self {
        LinearCombination {
            terms: BTreeMap::new(),
        }
    }
}

pub fn rational(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

impl<K: Ord + Clone> LinearCombination<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The basis vector `1 · key`.
    pub fn basis(key: K) -> Self {
        Self::term(key, BigRational::one())
    }

    pub fn term(key: K, coefficient: BigRational) -> Self {
        let mut out = Self::zero();
        out.add_term(key, coefficient);
        out
    }

    pub fn from_terms<I: IntoIterator<Item = (K, BigRational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_term(k, c);
        }
        out
    }

    /// Sum of basis vectors, with repeated keys accumulating multiplicity.
    pub fn from_keys<I: IntoIterator<Item = K>>(keys: I) -> Self {
        Self::from_terms(keys.into_iter().map(|k| (k, BigRational::one())))
    }

    pub fn add_term(&mut self, key: K, coefficient: BigRational) {
        if coefficient.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coefficient);
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coefficient;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, factor: &BigRational) {
        if factor.is_zero() {
            return;
        }
        for (k, c) in &other.terms {
            self.add_term(k.clone(), c * factor);
        }
    }

    pub fn coefficient(&self, key: &K) -> BigRational {
        self.terms
            .get(key)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of basis elements in the support.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = (&K, &BigRational)> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &K> {
        self.terms.keys()
    }

    pub fn coefficient_sum(&self) -> BigRational {
        self.terms
            .values()
            .fold(BigRational::zero(), |acc, c| acc + c)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    /// Linear extension of a map on basis elements.
    pub fn map_linear<K2, F>(&self, mut f: F) -> LinearCombination<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> LinearCombination<K2>,
    {
        let mut out = LinearCombination::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Linear extension of a map sending basis elements to basis elements.
    pub fn map_keys<K2, F>(&self, mut f: F) -> LinearCombination<K2>
    where
        K2: Ord + Clone,
        F: FnMut(&K) -> K2,
    {
        LinearCombination::from_terms(self.terms.iter().map(|(k, c)| (f(k), c.clone())))
    }

    /// Bilinear extension of a map on pairs of basis elements.
    pub fn bilinear<K2, K3, F>(
        &self,
        other: &LinearCombination<K2>,
        mut f: F,
    ) -> LinearCombination<K3>
    where
        K2: Ord + Clone,
        K3: Ord + Clone,
        F: FnMut(&K, &K2) -> LinearCombination<K3>,
    {
        let mut out = LinearCombination::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &(ca * cb));
            }
        }
        out
    }

    /// Every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<K: Ord + Clone> AddAssign<&LinearCombination<K>> for LinearCombination<K> {
    fn add_assign(&mut self, rhs: &LinearCombination<K>) {
        self.add_scaled(rhs, &BigRational::one());
    }
}

impl<K: Ord + Clone> Add for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn add(self, rhs: Self) -> LinearCombination<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Add for LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn add(mut self, rhs: Self) -> LinearCombination<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn sub(self, rhs: Self) -> LinearCombination<K> {
        let mut out = self.clone();
        out.add_scaled(rhs, &-BigRational::one());
        out
    }
}

impl<K: Ord + Clone> Sub for LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn sub(self, rhs: Self) -> LinearCombination<K> {
        &self - &rhs
    }
}

impl<K: Ord + Clone> Neg for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn neg(self) -> LinearCombination<K> {
        self.scale(&-BigRational::one())
    }
}

impl<K: Ord + Clone> Neg for LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn neg(self) -> LinearCombination<K> {
        -&self
    }
}

impl<K: Ord + Clone> Mul<&BigRational> for &LinearCombination<K> {
    type Output = LinearCombination<K>;
    fn mul(self, rhs: &BigRational) -> LinearCombination<K> {
        self.scale(rhs)
    }
}

impl<K: Ord + Clone> FromIterator<(K, BigRational)> for LinearCombination<K> {
    fn from_iter<I: IntoIterator<Item = (K, BigRational)>>(iter: I) -> Self {
        Self::from_terms(iter)
    }
}

impl<K: Ord + fmt::Debug> fmt::Debug for LinearCombination<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{c}·{k:?}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn combo(terms: &[(u8, i64)]) -> LinearCombination<u8> {
        terms.iter().map(|&(k, c)| (k, rational(c))).collect()
    }

    #[test]
    fn zero_coefficients_are_dropped() {
        let mut a = combo(&[(1, 2), (2, 3)]);
        a.add_term(1, rational(-2));
        assert_eq!(a, combo(&[(2, 3)]));
        assert_eq!(a.len(), 1);
        assert!((&a - &a).is_zero());
        assert_eq!(a.coefficient(&7), rational(0));
    }

    #[test]
    fn map_linear_accumulates() {
        let a = combo(&[(1, 1), (2, 1)]);
        let b = a.map_keys(|_| 0u8);
        assert_eq!(b, combo(&[(0, 2)]));
        let c = a.map_linear(|k| combo(&[(*k, 1), (9, 1)]));
        assert_eq!(c, combo(&[(1, 1), (2, 1), (9, 2)]));
    }

    fn arb_combo() -> impl Strategy<Value = LinearCombination<u8>> {
        prop::collection::vec((0u8..6, -5i64..5), 0..6).prop_map(|t| combo(&t))
    }

    proptest! {
        #[test]
        fn vector_space_laws(a in arb_combo(), b in arb_combo(), c in arb_combo()) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert!((&a - &a).is_zero());
            prop_assert_eq!(-(-a.clone()), a.clone());
            let two = rational(2);
            prop_assert_eq!((&a + &b).scale(&two), &a.scale(&two) + &b.scale(&two));
        }
    }
}
