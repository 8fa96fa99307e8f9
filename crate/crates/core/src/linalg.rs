//! Finitely supported linear combinations over exact rationals.
//!
//! [`Element`] is the one container used for every algebra in the crate; the
//! key type decides the basis. Keys are kept in a `BTreeMap`, so iteration
//! follows the key type's canonical `Ord` and two elements are equal exactly
//! when their serializations are.

use std::collections::btree_map::{self, Entry};
use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub type Coeff = BigRational;

pub fn int(n: i64) -> Coeff {
    Coeff::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Coeff {
    Coeff::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"3"`, `"-7"` or `"1/2"`.
pub fn parse_coeff(s: &str) -> Result<Coeff> {
    let bad = || Error::Parse {
        offset: 0,
        message: format!("invalid coefficient {s:?}"),
    };
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(Error::Parse {
                    offset: 0,
                    message: "zero denominator".into(),
                });
            }
            Ok(Coeff::new(p, q))
        }
        None => Ok(Coeff::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Element<K: Ord> {
    terms: BTreeMap<K, Coeff>,
}

pub type TensorElement<K> = Element<(K, K)>;

impl<K: Ord> Default for Element<K> {
    fn default() -> Self {
        Element {
            terms: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> Element<K> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(key: K) -> Self {
        Self::term(key, Coeff::one())
    }

    pub fn term(key: K, c: Coeff) -> Self {
        let mut e = Self::zero();
        e.add_term(key, c);
        e
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (K, Coeff)>) -> Self {
        let mut e = Self::zero();
        for (k, c) in terms {
            e.add_term(k, c);
        }
        e
    }

    /// Sum of the given keys, each with coefficient one.
    pub fn sum_of(keys: impl IntoIterator<Item = K>) -> Self {
        Self::from_terms(keys.into_iter().map(|k| (k, Coeff::one())))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, Coeff> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, Coeff> {
        self.terms.keys()
    }

    pub fn coeff(&self, key: &K) -> Coeff {
        self.terms.get(key).cloned().unwrap_or_else(Coeff::zero)
    }

    pub fn leading(&self) -> Option<(&K, &Coeff)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: K, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &Self, c: &Coeff) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v * c);
        }
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Element {
            terms: self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect(),
        }
    }

    /// Terms whose key satisfies `pred`.
    pub fn filter(&self, mut pred: impl FnMut(&K) -> bool) -> Self {
        Element {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| pred(k))
                .map(|(k, v)| (k.clone(), v.clone()))
                .collect(),
        }
    }

    /// Linear extension of a key-to-key map.
    pub fn map_keys<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> L) -> Element<L> {
        Element::from_terms(self.terms.iter().map(|(k, v)| (f(k), v.clone())))
    }

    /// Linear extension of a key-to-element map.
    pub fn map_linear<L: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Element<L>) -> Element<L> {
        let mut out = Element::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k), v);
        }
        out
    }

    pub fn try_map_linear<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> std::result::Result<Element<L>, E>,
    ) -> std::result::Result<Element<L>, E> {
        let mut out = Element::zero();
        for (k, v) in &self.terms {
            out.add_scaled(&f(k)?, v);
        }
        Ok(out)
    }

    /// True when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }
}

impl<K: Ord + Clone> AddAssign<&Element<K>> for Element<K> {
    fn add_assign(&mut self, rhs: &Element<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), v.clone());
        }
    }
}

impl<K: Ord + Clone> SubAssign<&Element<K>> for Element<K> {
    fn sub_assign(&mut self, rhs: &Element<K>) {
        for (k, v) in &rhs.terms {
            self.add_term(k.clone(), -v.clone());
        }
    }
}

impl<K: Ord + Clone> Add for Element<K> {
    type Output = Element<K>;

    fn add(mut self, rhs: Element<K>) -> Element<K> {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone> Add<&Element<K>> for &Element<K> {
    type Output = Element<K>;

    fn add(self, rhs: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl<K: Ord + Clone> Sub for Element<K> {
    type Output = Element<K>;

    fn sub(mut self, rhs: Element<K>) -> Element<K> {
        self -= &rhs;
        self
    }
}

impl<K: Ord + Clone> Sub<&Element<K>> for &Element<K> {
    type Output = Element<K>;

    fn sub(self, rhs: &Element<K>) -> Element<K> {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl<K: Ord + Clone> Neg for Element<K> {
    type Output = Element<K>;

    fn neg(self) -> Element<K> {
        Element {
            terms: self.terms.into_iter().map(|(k, v)| (k, -v)).collect(),
        }
    }
}

impl<K: Ord + Clone> FromIterator<(K, Coeff)> for Element<K> {
    fn from_iter<I: IntoIterator<Item = (K, Coeff)>>(iter: I) -> Self {
        Element::from_terms(iter)
    }
}

pub fn add<K: Ord + Clone>(x: &Element<K>, y: &Element<K>) -> Element<K> {
    x + y
}

pub fn scale<K: Ord + Clone>(c: &Coeff, x: &Element<K>) -> Element<K> {
    x.scale(c)
}

/// Extends a rule on basis pairs bilinearly.
pub fn bilinear_extend<A, B, C, E>(
    mut rule: impl FnMut(&A, &B) -> std::result::Result<Element<C>, E>,
    x: &Element<A>,
    y: &Element<B>,
) -> std::result::Result<Element<C>, E>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let r = rule(a, b)?;
            out.add_scaled(&r, &(ca * cb));
        }
    }
    Ok(out)
}

/// Infallible form of [`bilinear_extend`].
pub fn bilinear<A, B, C>(
    mut rule: impl FnMut(&A, &B) -> Element<C>,
    x: &Element<A>,
    y: &Element<B>,
) -> Element<C>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    bilinear_extend(|a, b| Ok::<_, std::convert::Infallible>(rule(a, b)), x, y)
        .unwrap_or_else(|e| match e {})
}

pub fn tensor<K: Ord + Clone>(x: &Element<K>, y: &Element<K>) -> TensorElement<K> {
    let mut out = Element::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            out.add_term((a.clone(), b.clone()), ca * cb);
        }
    }
    out
}

/// Incrementally built row-echelon form.
///
/// Each stored row has a distinct leading key (its smallest key in canonical
/// order) normalized to coefficient one, and every other key of the row
/// sorts after it. A vector lies in the span exactly when repeated
/// elimination of its leading key reaches zero.
#[derive(Clone, Debug)]
pub struct EchelonBasis<K: Ord> {
    rows: BTreeMap<K, Element<K>>,
}

impl<K: Ord> Default for EchelonBasis<K> {
    fn default() -> Self {
        EchelonBasis {
            rows: BTreeMap::new(),
        }
    }
}

impl<K: Ord + Clone> EchelonBasis<K> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` after eliminating pivot keys from the front.
    pub fn reduce(&self, v: &Element<K>) -> Element<K> {
        let mut x = v.clone();
        while let Some((lead, c)) = x.leading() {
            let Some(row) = self.rows.get(lead) else {
                break;
            };
            let c = -c.clone();
            x.add_scaled(row, &c);
        }
        x
    }

    pub fn contains(&self, v: &Element<K>) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the rank grew.
    pub fn insert(&mut self, v: &Element<K>) -> bool {
        let r = self.reduce(v);
        let Some((lead, c)) = r.leading() else {
            return false;
        };
        let lead = lead.clone();
        let inv = c.recip();
        self.rows.insert(lead, r.scale(&inv));
        true
    }
}

pub fn rank_of_span<K: Ord + Clone>(vectors: &[Element<K>]) -> usize {
    let mut basis = EchelonBasis::new();
    for v in vectors {
        basis.insert(v);
    }
    basis.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(terms: &[(&'static str, i64)]) -> Element<&'static str> {
        Element::from_terms(terms.iter().map(|&(k, c)| (k, int(c))))
    }

    #[test]
    fn add_and_scale() {
        let m1 = el(&[("1", 1)]);
        assert_eq!(add(&m1, &m1), el(&[("1", 2)]));
        assert!(scale(&int(0), &m1).is_zero());
        let x = el(&[("11", 3), ("12", -2)]);
        assert!(add(&x, &scale(&int(-1), &x)).is_zero());
    }

    #[test]
    fn zero_coefficients_are_pruned() {
        let mut x = el(&[("a", 1)]);
        x.add_term("a", int(-1));
        x.add_term("b", int(0));
        assert!(x.is_zero());
        assert_eq!(x.len(), 0);
    }

    #[test]
    fn bilinear_examples() {
        let concat = |a: &String, b: &String| Element::basis(format!("{a}{b}"));
        let x = Element::basis("a1".to_string());
        let y = Element::sum_of(["a2".to_string(), "a3".to_string()]);
        assert_eq!(
            bilinear(concat, &x, &y),
            Element::sum_of(["a1a2".to_string(), "a1a3".to_string()])
        );
        assert!(bilinear(concat, &Element::zero(), &y).is_zero());
        assert_eq!(
            bilinear(concat, &x.scale(&int(2)), &y.scale(&int(3))),
            bilinear(concat, &x, &y).scale(&int(6))
        );
    }

    #[test]
    fn rank_examples() {
        let a = el(&[("11", 1)]);
        let b = el(&[("12", 1)]);
        assert_eq!(rank_of_span(&[a.clone(), b]), 2);
        assert_eq!(rank_of_span(&[a.clone(), a.scale(&int(2))]), 1);
        assert_eq!(rank_of_span::<&str>(&[]), 0);
    }

    #[test]
    fn rank_with_fractions() {
        let v = [
            el(&[("a", 2), ("b", 3)]),
            el(&[("a", 3), ("b", 5)]),
            el(&[("a", 1), ("b", 2)]),
        ];
        assert_eq!(rank_of_span(&v), 2);
        let mut basis = EchelonBasis::new();
        basis.insert(&v[0]);
        assert!(!basis.contains(&v[1]));
        basis.insert(&v[1]);
        assert!(basis.contains(&el(&[("b", 7)])));
    }

    #[test]
    fn tensor_examples() {
        let x = el(&[("1", 1)]);
        let x2 = el(&[("2", 5)]);
        let y = el(&[("", 1)]);
        let t = tensor(&x, &y);
        assert_eq!(t.len(), 1);
        assert_eq!(t.coeff(&("1", "")), int(1));
        assert!(tensor(&Element::zero(), &y).is_zero());
        assert_eq!(tensor(&(&x + &x2), &y), tensor(&x, &y) + tensor(&x2, &y));
    }

    #[test]
    fn parse_coefficients() {
        assert_eq!(parse_coeff("3").unwrap(), int(3));
        assert_eq!(parse_coeff("-1/2").unwrap(), ratio(-1, 2));
        assert_eq!(parse_coeff("4/6").unwrap(), ratio(2, 3));
        assert!(parse_coeff("1/0").is_err());
        assert!(parse_coeff("x").is_err());
    }
}
