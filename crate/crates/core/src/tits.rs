//! Face product on packed words of a fixed length.
//!
//! A packed word of length `n` is a face of the type `A_{n-1}` Coxeter
//! complex. The product of `u` and `v` packs the word of pairs
//! `(u_i, v_i)` ordered lexicographically, so the left operand's blocks
//! dominate and the right operand only refines them. [`face_compose`] is
//! the same operation written directly on ordered set partitions and is
//! kept as an independent implementation.

use std::collections::{BTreeSet, HashMap};
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::linalg::{bilinear_extend, Element};
use crate::ncqsym::NcqElement;
use crate::words::{Letter, OrderedSetPartition, PackedWord};

pub fn tits_product(u: &PackedWord, v: &PackedWord) -> Result<PackedWord> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            left: u.len(),
            right: v.len(),
        });
    }
    let pairs: Vec<(Letter, Letter)> = u
        .letters()
        .iter()
        .copied()
        .zip(v.letters().iter().copied())
        .collect();
    let mut ranks = pairs.clone();
    ranks.sort_unstable();
    ranks.dedup();
    let w = pairs
        .iter()
        .map(|p| ranks.binary_search(p).unwrap() as Letter + 1)
        .collect();
    Ok(PackedWord::from_vec_unchecked(w))
}

/// The identity face `1^n`.
pub fn identity(n: usize) -> PackedWord {
    PackedWord::from_vec_unchecked(vec![1; n])
}

/// Blocks `P_i ∩ Q_j` in lexicographic order of `(i, j)`, empty ones dropped.
pub fn face_compose(
    p: &OrderedSetPartition,
    q: &OrderedSetPartition,
) -> Result<OrderedSetPartition> {
    if p.ground_size() != q.ground_size() {
        return Err(Error::GroundSetMismatch {
            left: p.ground_size(),
            right: q.ground_size(),
        });
    }
    let mut blocks = Vec::new();
    for a in p.blocks() {
        for b in q.blocks() {
            let c: BTreeSet<usize> = a.intersection(b).copied().collect();
            if !c.is_empty() {
                blocks.push(c);
            }
        }
    }
    Ok(OrderedSetPartition::from_blocks_unchecked(blocks))
}

/// Linear extension of [`tits_product`] to degree-`n` elements.
pub fn tits_product_element(x: &NcqElement, y: &NcqElement) -> Result<NcqElement> {
    bilinear_extend(|u, v| Ok(Element::basis(tits_product(u, v)?)), x, y)
}

/// Memoized face products for one length.
#[derive(Debug)]
pub struct FaceProductTable {
    n: usize,
    memo: RwLock<HashMap<(PackedWord, PackedWord), PackedWord>>,
}

impl FaceProductTable {
    pub fn new(n: usize) -> Self {
        FaceProductTable {
            n,
            memo: RwLock::new(HashMap::new()),
        }
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn product(&self, u: &PackedWord, v: &PackedWord) -> Result<PackedWord> {
        for w in [u, v] {
            if w.len() != self.n {
                return Err(Error::LengthMismatch {
                    left: self.n,
                    right: w.len(),
                });
            }
        }
        let key = (u.clone(), v.clone());
        if let Some(w) = self.memo.read().unwrap().get(&key) {
            return Ok(w.clone());
        }
        let w = tits_product(u, v)?;
        self.memo.write().unwrap().insert(key, w.clone());
        Ok(w)
    }

    pub fn cached(&self) -> usize {
        self.memo.read().unwrap().len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{enumerate_packed, to_osp};

    fn pw(v: &[Letter]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn product_examples() {
        for v in enumerate_packed(3).unwrap() {
            assert_eq!(tits_product(&identity(3), &v).unwrap(), v);
        }
        assert_eq!(
            tits_product(&pw(&[1, 2, 1]), &pw(&[1, 1, 2])).unwrap(),
            pw(&[1, 3, 2])
        );
        assert_eq!(
            tits_product(&pw(&[2, 1]), &pw(&[1, 2])).unwrap(),
            pw(&[2, 1])
        );
        assert_eq!(
            tits_product(&pw(&[1]), &pw(&[1, 1])),
            Err(Error::LengthMismatch { left: 1, right: 2 })
        );
    }

    #[test]
    fn compose_examples() {
        let osp = |s: &str| s.parse::<OrderedSetPartition>().unwrap();
        let q = osp("({2},{1,3})");
        assert_eq!(face_compose(&osp("({1,2,3})"), &q).unwrap(), q);
        assert_eq!(
            face_compose(&osp("({1,3},{2})"), &osp("({1,2},{3})"))
                .unwrap()
                .to_string(),
            "({1},{3},{2})"
        );
        assert_eq!(face_compose(&q, &q).unwrap(), q);
        assert_eq!(
            face_compose(&q, &osp("({1})")),
            Err(Error::GroundSetMismatch { left: 3, right: 1 })
        );
    }

    #[test]
    fn compose_matches_product_at_degree_three() {
        let all = enumerate_packed(3).unwrap();
        for u in &all {
            for v in &all {
                let w = tits_product(u, v).unwrap();
                assert_eq!(to_osp(&w), face_compose(&to_osp(u), &to_osp(v)).unwrap());
            }
        }
    }

    #[test]
    fn table_memoizes() {
        let t = FaceProductTable::new(2);
        let (a, b) = (pw(&[1, 1]), pw(&[2, 1]));
        assert_eq!(t.product(&a, &b).unwrap(), b);
        assert_eq!(t.product(&a, &b).unwrap(), b);
        assert_eq!(t.cached(), 1);
        assert!(t.product(&pw(&[1]), &a).is_err());
    }

    #[test]
    fn element_lift() {
        let x = Element::sum_of([pw(&[1, 1]), pw(&[1, 2])]);
        let y = Element::basis(pw(&[2, 1]));
        assert_eq!(
            tits_product_element(&x, &y).unwrap(),
            Element::sum_of([pw(&[2, 1]), pw(&[1, 2])])
        );
    }
}
