//! The sylvester congruence and the quotient of the packed-word algebra by it.
//!
//! The congruence is generated by `ac⋯b ≡ ca⋯b` for letters `a ≤ b < c`:
//! an adjacent pair `a, c` may be swapped whenever some letter `b` with
//! `a ≤ b < c` occurs strictly to its right. Classes are computed by
//! breadth-first closure; the representative is the lexicographically
//! smallest member.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::Element;
use crate::ncqsym::NcqElement;
use crate::words::{enumerate_packed_with, PackedWord, Word};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SylvesterClass {
    pub representative: Word,
    pub members: BTreeSet<Word>,
}

impl SylvesterClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn neighbors_of(w: &[u32], out: &mut Vec<Vec<u32>>) {
    for i in 0..w.len().saturating_sub(1) {
        let (x, y) = (w[i], w[i + 1]);
        if x == y {
            continue;
        }
        let (a, c) = (x.min(y), x.max(y));
        if w[i + 2..].iter().any(|&b| a <= b && b < c) {
            let mut s = w.to_vec();
            s.swap(i, i + 1);
            out.push(s);
        }
    }
}

/// Words one rewriting step away from `w`, in either direction.
pub fn sylv_neighbors(w: &Word) -> Result<BTreeSet<Word>> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let mut out = Vec::new();
    neighbors_of(w.letters(), &mut out);
    Ok(out.into_iter().map(Word::from_vec_unchecked).collect())
}

pub fn sylv_class(w: &Word) -> Result<SylvesterClass> {
    sylv_class_with(w, &Limits::global())
}

pub fn sylv_class_with(w: &Word, limits: &Limits) -> Result<SylvesterClass> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    limits.check(w.len())?;
    let mut members = BTreeSet::new();
    let mut queue = VecDeque::new();
    members.insert(w.letters().to_vec());
    queue.push_back(w.letters().to_vec());
    let mut next = Vec::new();
    while let Some(x) = queue.pop_front() {
        next.clear();
        neighbors_of(&x, &mut next);
        for y in next.drain(..) {
            if members.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    // Members share a length, so the plain lexicographic minimum is the
    // first element of the set.
    let representative = Word::from_vec_unchecked(members.iter().next().unwrap().clone());
    Ok(SylvesterClass {
        representative,
        members: members.into_iter().map(Word::from_vec_unchecked).collect(),
    })
}

/// Class representative of every packed word up to some degree.
#[derive(Clone, Debug, Default)]
pub struct SylvesterTable {
    representative: BTreeMap<PackedWord, PackedWord>,
    classes: BTreeMap<usize, usize>,
}

impl SylvesterTable {
    pub fn up_to(n: usize) -> Result<Self> {
        Self::up_to_with(n, &Limits::global())
    }

    pub fn up_to_with(n: usize, limits: &Limits) -> Result<Self> {
        let mut table = SylvesterTable::default();
        for d in 1..=n {
            let mut count = 0;
            for u in enumerate_packed_with(d, limits)? {
                if table.representative.contains_key(&u) {
                    continue;
                }
                let class = sylv_class_with(&u.as_word(), limits)?;
                let rep = PackedWord::try_from(class.representative)?;
                for m in class.members {
                    table
                        .representative
                        .insert(PackedWord::try_from(m)?, rep.clone());
                }
                count += 1;
            }
            table.classes.insert(d, count);
        }
        Ok(table)
    }

    pub fn class_count(&self, n: usize) -> Option<usize> {
        self.classes.get(&n).copied()
    }

    /// Representative of `u`; the empty word is its own class.
    pub fn representative(&self, u: &PackedWord) -> Option<PackedWord> {
        if u.is_empty() {
            return Some(PackedWord::empty());
        }
        self.representative.get(u).cloned()
    }

    pub fn congruent(&self, u: &PackedWord, v: &PackedWord) -> bool {
        matches!((self.representative(u), self.representative(v)), (Some(a), Some(b)) if a == b)
    }

    /// Quotient map on an element whose degrees are within the table.
    pub fn project(&self, x: &NcqElement) -> Result<NcqElement> {
        x.try_map_linear(|u| {
            self.representative(u)
                .map(Element::basis)
                .ok_or(Error::ResourceLimit {
                    requested: u.len(),
                    bound: self.classes.len(),
                })
        })
    }

    /// Pairs `(u, v)` with `u < v` in the same class, degree by degree.
    pub fn congruent_pairs(&self, n: usize) -> Vec<(PackedWord, PackedWord)> {
        let mut by_rep: BTreeMap<&PackedWord, Vec<&PackedWord>> = BTreeMap::new();
        for (u, r) in &self.representative {
            if u.len() == n {
                by_rep.entry(r).or_default().push(u);
            }
        }
        let mut out = Vec::new();
        for members in by_rep.values() {
            for (i, u) in members.iter().enumerate() {
                for v in &members[i + 1..] {
                    out.push(((*u).clone(), (*v).clone()));
                }
            }
        }
        out
    }
}

pub fn sylv_class_count(n: usize) -> Result<usize> {
    sylv_class_count_with(n, &Limits::global())
}

pub fn sylv_class_count_with(n: usize, limits: &Limits) -> Result<usize> {
    if n == 0 {
        limits.check(0)?;
        return Ok(1);
    }
    let mut reps = BTreeSet::new();
    let mut seen = BTreeSet::new();
    for u in enumerate_packed_with(n, limits)? {
        if seen.contains(u.letters()) {
            continue;
        }
        let class = sylv_class_with(&u.as_word(), limits)?;
        seen.extend(class.members.into_iter().map(Word::into_letters));
        reps.insert(class.representative);
    }
    Ok(reps.len())
}

/// `M_u ↦ [rep(u)]`, extended linearly; the unit maps to itself.
pub fn quotient_project(x: &NcqElement) -> Result<NcqElement> {
    x.try_map_linear(|u| {
        if u.is_empty() {
            return Ok(Element::basis(u.clone()));
        }
        let class = sylv_class(&u.as_word())?;
        Ok(Element::basis(PackedWord::try_from(class.representative)?))
    })
}
