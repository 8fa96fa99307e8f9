//! Plane trees with every internal node of arity at least two.
//!
//! The text form is bit-exact: a leaf is `o`, an internal node is its
//! children separated by single spaces inside parentheses, e.g.
//! `(o (o o) o)`. Trees compare by that serialization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::words::{enumerate_packed_with, Letter, PackedWord, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PlaneTree {
    Leaf,
    Node(Vec<PlaneTree>),
}

impl PlaneTree {
    /// Builds an internal node; fewer than two children is rejected.
    pub fn node(children: Vec<PlaneTree>) -> Result<Self> {
        if children.len() < 2 {
            return Err(Error::Parse {
                offset: 0,
                message: format!(
                    "internal node needs at least 2 children, got {}",
                    children.len()
                ),
            });
        }
        Ok(PlaneTree::Node(children))
    }

    /// The `k`-ary corolla.
    pub fn corolla(arity: usize) -> Self {
        assert!(arity >= 2);
        PlaneTree::Node(vec![PlaneTree::Leaf; arity])
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlaneTree::Leaf => 1,
            PlaneTree::Node(ch) => ch.iter().map(PlaneTree::leaves).sum(),
        }
    }

    /// Number of leaves minus one.
    pub fn degree(&self) -> usize {
        self.leaves() - 1
    }

    pub fn serialize(&self) -> String {
        self.to_string()
    }

    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for PlaneTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaneTree::Leaf => f.write_str("o"),
            PlaneTree::Node(ch) => {
                f.write_str("(")?;
                for (i, c) in ch.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" ")?;
                    }
                    write!(f, "{c}")?;
                }
                f.write_str(")")
            }
        }
    }
}

impl Ord for PlaneTree {
    fn cmp(&self, other: &Self) -> Ordering {
        self.to_string().cmp(&other.to_string())
    }
}

impl PartialOrd for PlaneTree {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct TreeParser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl TreeParser<'_> {
    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            offset: self.pos,
            message: message.into(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn tree(&mut self) -> Result<PlaneTree> {
        self.skip_ws();
        match self.src.get(self.pos) {
            Some(b'o') => {
                self.pos += 1;
                Ok(PlaneTree::Leaf)
            }
            Some(b'(') => {
                let open = self.pos;
                self.pos += 1;
                let mut children = Vec::new();
                loop {
                    self.skip_ws();
                    match self.src.get(self.pos) {
                        Some(b')') => {
                            self.pos += 1;
                            break;
                        }
                        None => return Err(self.error("unbalanced parenthesis")),
                        _ => children.push(self.tree()?),
                    }
                }
                if children.len() < 2 {
                    return Err(Error::Parse {
                        offset: open,
                        message: "internal node needs at least 2 children".into(),
                    });
                }
                Ok(PlaneTree::Node(children))
            }
            Some(&c) => Err(self.error(format!("unexpected character {:?}", c as char))),
            None => Err(self.error("unexpected end of input")),
        }
    }
}

impl FromStr for PlaneTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = TreeParser {
            src: s.as_bytes(),
            pos: 0,
        };
        let t = p.tree()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.error("trailing input"));
        }
        Ok(t)
    }
}

fn tree_of_letters(w: &[Letter]) -> PlaneTree {
    let Some(&m) = w.iter().max() else {
        return PlaneTree::Leaf;
    };
    PlaneTree::Node(w.split(|&l| l == m).map(tree_of_letters).collect())
}

/// Factor `w` around the occurrences of its largest letter and graft the
/// trees of the factors, in order, on a common root. Empty factors become
/// leaves.
pub fn tree_of_word(w: &Word) -> Result<PlaneTree> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(tree_of_letters(w.letters()))
}

pub fn tree_of_packed(u: &PackedWord) -> Result<PlaneTree> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(tree_of_letters(u.letters()))
}

pub fn leaves(t: &PlaneTree) -> usize {
    t.leaves()
}

/// All plane trees with `n + 1` leaves, sorted by serialization.
pub fn enumerate_trees(n: usize) -> Result<Vec<PlaneTree>> {
    enumerate_trees_with(n, &Limits::global())
}

pub fn enumerate_trees_with(n: usize, limits: &Limits) -> Result<Vec<PlaneTree>> {
    limits.check(n)?;
    // by_leaves[l] holds every tree with l leaves.
    let mut by_leaves: Vec<Vec<PlaneTree>> = vec![Vec::new(), vec![PlaneTree::Leaf]];
    for l in 2..=n + 1 {
        let mut trees = Vec::new();
        let mut parts = Vec::new();
        grafts(l, &by_leaves, &mut parts, &mut trees);
        by_leaves.push(trees);
    }
    let mut out = std::mem::take(&mut by_leaves[n + 1]);
    out.sort_by_cached_key(PlaneTree::to_string);
    Ok(out)
}

/// Every tree whose root has children with leaf counts summing to `rest`.
fn grafts(
    rest: usize,
    by_leaves: &[Vec<PlaneTree>],
    parts: &mut Vec<usize>,
    out: &mut Vec<PlaneTree>,
) {
    if rest == 0 {
        if parts.len() >= 2 {
            let mut acc: Vec<Vec<PlaneTree>> = vec![Vec::new()];
            for &p in parts.iter() {
                acc = acc
                    .into_iter()
                    .flat_map(|prefix| {
                        by_leaves[p].iter().map(move |t| {
                            let mut v = prefix.clone();
                            v.push(t.clone());
                            v
                        })
                    })
                    .collect();
            }
            out.extend(acc.into_iter().map(PlaneTree::Node));
        }
        return;
    }
    // A single part equal to the whole would give a unary root.
    let cap = if parts.is_empty() { rest - 1 } else { rest };
    for p in 1..=cap {
        parts.push(p);
        grafts(rest - p, by_leaves, parts, out);
        parts.pop();
    }
}

/// Groups the packed words of degree `n` by their tree.
pub fn fibers_by_tree(n: usize) -> Result<BTreeMap<PlaneTree, Vec<PackedWord>>> {
    fibers_by_tree_with(n, &Limits::global())
}

pub fn fibers_by_tree_with(
    n: usize,
    limits: &Limits,
) -> Result<BTreeMap<PlaneTree, Vec<PackedWord>>> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let mut map: BTreeMap<PlaneTree, Vec<PackedWord>> = BTreeMap::new();
    for u in enumerate_packed_with(n, limits)? {
        map.entry(tree_of_letters(u.letters())).or_default().push(u);
    }
    Ok(map)
}

/// Packed words `u` of degree `leaves(t) - 1` with `tree_of_word(u) = t`.
pub fn word_fiber(t: &PlaneTree) -> Result<Vec<PackedWord>> {
    let n = t.degree();
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    Ok(enumerate_packed_with(n, &Limits::global())?
        .into_iter()
        .filter(|u| &tree_of_letters(u.letters()) == t)
        .collect())
}
