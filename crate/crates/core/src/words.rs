//! Words over the positive integers, packing, parking words and ordered set
//! partitions.
//!
//! All word-like keys order themselves length-lex: shorter words first, then
//! lexicographically on the letter sequence. Every enumeration in this crate
//! returns its results in that order.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::limits::Limits;

/// A letter `a_i` is stored as its subscript `i >= 1`.
pub type Letter = u32;

fn length_lex(a: &[Letter], b: &[Letter]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

fn write_letters(f: &mut fmt::Formatter<'_>, letters: &[Letter]) -> fmt::Result {
    for (i, l) in letters.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{l}")?;
    }
    Ok(())
}

/// Parses the comma-separated literal format, e.g. `"1,2,1"`. The empty
/// string (or only whitespace) is the empty word.
pub(crate) fn parse_letters(s: &str) -> Result<Vec<Letter>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in s.split(',') {
        let t = piece.trim();
        let at = offset + (piece.len() - piece.trim_start().len());
        let v: Letter = t.parse().map_err(|_| Error::Parse {
            offset: at,
            message: format!("expected a positive integer, found {t:?}"),
        })?;
        if v == 0 {
            return Err(Error::Parse {
                offset: at,
                message: "letters must be positive".into(),
            });
        }
        out.push(v);
        offset += piece.len() + 1;
    }
    Ok(out)
}

macro_rules! word_like {
    ($name:ident) => {
        impl $name {
            pub fn letters(&self) -> &[Letter] {
                &self.0
            }

            pub fn len(&self) -> usize {
                self.0.len()
            }

            pub fn is_empty(&self) -> bool {
                self.0.is_empty()
            }

            pub fn into_letters(self) -> Vec<Letter> {
                self.0
            }
        }

        impl Ord for $name {
            fn cmp(&self, other: &Self) -> Ordering {
                length_lex(&self.0, &other.0)
            }
        }

        impl PartialOrd for $name {
            fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
                Some(self.cmp(other))
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write_letters(f, &self.0)
            }
        }
    };
}

/// An arbitrary finite word over the letters `1, 2, ...`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

word_like!(Word);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&l| l == 0) {
            return Err(Error::InvalidLetter(bad));
        }
        Ok(Word(letters))
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(letters.iter().all(|&l| l >= 1));
        Word(letters)
    }

    pub fn max_letter(&self) -> Result<Letter> {
        max_letter(&self.0)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Word(parse_letters(s)?))
    }
}

impl From<PackedWord> for Word {
    fn from(u: PackedWord) -> Self {
        Word(u.0)
    }
}

/// A word whose letters are exactly `{1, ..., k}` for some `k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct PackedWord(Vec<Letter>);

word_like!(PackedWord);

impl PackedWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.contains(&0) || !is_packed(&letters) {
            let w = Word(letters);
            return Err(Error::NotPacked(w.to_string()));
        }
        Ok(PackedWord(letters))
    }

    /// The empty packed word, which keys the unit of the algebra.
    pub fn empty() -> Self {
        PackedWord(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(letters: Vec<Letter>) -> Self {
        debug_assert!(is_packed(&letters));
        PackedWord(letters)
    }

    /// Number of distinct letters; zero for the empty word.
    pub fn max_letter(&self) -> Letter {
        self.0.iter().copied().max().unwrap_or(0)
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }
}

impl FromStr for PackedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PackedWord::new(parse_letters(s)?)
    }
}

impl TryFrom<Word> for PackedWord {
    type Error = Error;

    fn try_from(w: Word) -> Result<Self> {
        PackedWord::new(w.0)
    }
}

/// A word whose nondecreasing rearrangement `b` satisfies `b_i <= i`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ParkingWord(Vec<Letter>);

word_like!(ParkingWord);

impl ParkingWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        let w = Word::new(letters)?;
        if w.is_empty() || parking_criterion(&w.0) {
            Ok(ParkingWord(w.0))
        } else {
            Err(Error::Parse {
                offset: 0,
                message: format!("{w} is not a parking word"),
            })
        }
    }

    pub fn as_word(&self) -> Word {
        Word(self.0.clone())
    }
}

/// A sequence of positive parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Composition(Vec<u32>);

impl Composition {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&p| p == 0) {
            return Err(Error::InvalidLetter(bad));
        }
        Ok(Composition(parts))
    }

    pub fn empty() -> Self {
        Composition(Vec::new())
    }

    pub(crate) fn from_vec_unchecked(parts: Vec<u32>) -> Self {
        Composition(parts)
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> usize {
        self.0.iter().map(|&p| p as usize).sum()
    }

    /// All compositions of `n` in length-lex order.
    pub fn all_of(n: usize) -> Vec<Composition> {
        fn go(rest: u32, cur: &mut Vec<u32>, out: &mut Vec<Composition>) {
            if rest == 0 {
                out.push(Composition(cur.clone()));
                return;
            }
            for p in 1..=rest {
                cur.push(p);
                go(rest - p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n as u32, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

impl Ord for Composition {
    fn cmp(&self, other: &Self) -> Ordering {
        length_lex(&self.0, &other.0)
    }
}

impl PartialOrd for Composition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_letters(f, &self.0)
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Composition(parse_letters(s)?))
    }
}

/// Blocks of positions `1..=n`, in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderedSetPartition {
    blocks: Vec<BTreeSet<usize>>,
}

impl OrderedSetPartition {
    pub fn new(blocks: Vec<BTreeSet<usize>>) -> Result<Self> {
        let n: usize = blocks.iter().map(BTreeSet::len).sum();
        let mut seen = vec![false; n + 1];
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::InvalidPartition("empty block".into()));
            }
            for &p in b {
                if p == 0 || p > n || seen[p] {
                    return Err(Error::InvalidPartition(format!(
                        "position {p} is out of range or repeated"
                    )));
                }
                seen[p] = true;
            }
        }
        Ok(OrderedSetPartition { blocks })
    }

    pub(crate) fn from_blocks_unchecked(blocks: Vec<BTreeSet<usize>>) -> Self {
        OrderedSetPartition { blocks }
    }

    pub fn blocks(&self) -> &[BTreeSet<usize>] {
        &self.blocks
    }

    /// Size of the ground set.
    pub fn ground_size(&self) -> usize {
        self.blocks.iter().map(BTreeSet::len).sum()
    }
}

impl fmt::Display for OrderedSetPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, p) in b.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{p}")?;
            }
            f.write_str("}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for OrderedSetPartition {
    type Err = Error;

    /// Accepts `"({1,3},{2})"`; whitespace is ignored.
    fn from_str(s: &str) -> Result<Self> {
        let err = |offset: usize, message: &str| Error::Parse {
            offset,
            message: message.to_string(),
        };
        let chars: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .collect();
        let mut i = 0;
        let expect = |i: &mut usize, want: char| -> Result<()> {
            match chars.get(*i) {
                Some(&(_, c)) if c == want => {
                    *i += 1;
                    Ok(())
                }
                Some(&(o, c)) => Err(err(o, &format!("expected '{want}', found '{c}'"))),
                None => Err(err(
                    s.len(),
                    &format!("expected '{want}', found end of input"),
                )),
            }
        };
        expect(&mut i, '(')?;
        let mut blocks = Vec::new();
        while matches!(chars.get(i), Some(&(_, '{'))) {
            i += 1;
            let mut block = BTreeSet::new();
            loop {
                let start = i;
                while matches!(chars.get(i), Some(&(_, c)) if c.is_ascii_digit()) {
                    i += 1;
                }
                if start == i {
                    let o = chars.get(i).map_or(s.len(), |&(o, _)| o);
                    return Err(err(o, "expected a position"));
                }
                let digits: String = chars[start..i].iter().map(|&(_, c)| c).collect();
                let p: usize = digits
                    .parse()
                    .map_err(|_| err(chars[start].0, "position out of range"))?;
                block.insert(p);
                match chars.get(i) {
                    Some(&(_, ',')) => i += 1,
                    Some(&(_, '}')) => {
                        i += 1;
                        break;
                    }
                    Some(&(o, c)) => return Err(err(o, &format!("unexpected '{c}'"))),
                    None => return Err(err(s.len(), "unterminated block")),
                }
            }
            blocks.push(block);
            if matches!(chars.get(i), Some(&(_, ','))) {
                i += 1;
            }
        }
        expect(&mut i, ')')?;
        if let Some(&(o, _)) = chars.get(i) {
            return Err(err(o, "trailing input"));
        }
        OrderedSetPartition::new(blocks)
    }
}

pub fn max_letter(w: &[Letter]) -> Result<Letter> {
    w.iter().copied().max().ok_or(Error::EmptyWord)
}

/// Rank-compresses the letters: the `j`-th smallest distinct letter becomes `j`.
pub fn pack_letters(w: &[Letter]) -> Vec<Letter> {
    let mut distinct: Vec<Letter> = w.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    w.iter()
        .map(|l| distinct.binary_search(l).unwrap() as Letter + 1)
        .collect()
}

pub fn pack(w: &Word) -> PackedWord {
    PackedWord(pack_letters(&w.0))
}

pub fn is_packed(w: &[Letter]) -> bool {
    let k = w.iter().copied().max().unwrap_or(0) as usize;
    let mut seen = vec![false; k + 1];
    for &l in w {
        if l == 0 {
            return false;
        }
        seen[l as usize] = true;
    }
    seen[1..].iter().all(|&s| s)
}

/// All packed words of length `n`, in lexicographic order, using the
/// process-wide resource bound.
pub fn enumerate_packed(n: usize) -> Result<Vec<PackedWord>> {
    enumerate_packed_with(n, &Limits::global())
}

pub fn enumerate_packed_with(n: usize, limits: &Limits) -> Result<Vec<PackedWord>> {
    limits.check(n)?;
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(n);
    for k in 1..=n as Letter {
        surjections(
            n,
            k,
            &mut vec![0usize; k as usize + 1],
            0,
            &mut cur,
            &mut out,
        );
    }
    if n == 0 {
        out.push(PackedWord::empty());
    }
    out.sort();
    Ok(out)
}

fn surjections(
    n: usize,
    k: Letter,
    counts: &mut Vec<usize>,
    missing_used: usize,
    cur: &mut Vec<Letter>,
    out: &mut Vec<PackedWord>,
) {
    // `missing_used` counts letters of 1..=k used at least once so far.
    let missing = k as usize - missing_used;
    let remaining = n - cur.len();
    if remaining == 0 {
        if missing == 0 {
            out.push(PackedWord(cur.clone()));
        }
        return;
    }
    if missing > remaining {
        return;
    }
    for l in 1..=k {
        let fresh = counts[l as usize] == 0;
        counts[l as usize] += 1;
        cur.push(l);
        surjections(n, k, counts, missing_used + fresh as usize, cur, out);
        cur.pop();
        counts[l as usize] -= 1;
    }
}

/// Multiplicities of the letters `1, ..., k` of a packed word.
pub fn evaluation(u: &PackedWord) -> Composition {
    let k = u.max_letter() as usize;
    let mut parts = vec![0u32; k];
    for &l in &u.0 {
        parts[l as usize - 1] += 1;
    }
    Composition(parts)
}

pub fn to_osp(u: &PackedWord) -> OrderedSetPartition {
    let k = u.max_letter() as usize;
    let mut blocks = vec![BTreeSet::new(); k];
    for (i, &l) in u.0.iter().enumerate() {
        blocks[l as usize - 1].insert(i + 1);
    }
    OrderedSetPartition { blocks }
}

pub fn from_osp(p: &OrderedSetPartition) -> PackedWord {
    let mut letters = vec![0; p.ground_size()];
    for (j, b) in p.blocks.iter().enumerate() {
        for &pos in b {
            letters[pos - 1] = j as Letter + 1;
        }
    }
    PackedWord(letters)
}

fn parking_criterion(a: &[Letter]) -> bool {
    let mut sorted = a.to_vec();
    sorted.sort_unstable();
    sorted.iter().enumerate().all(|(i, &b)| b as usize <= i + 1)
}

pub fn is_parking(a: &Word) -> Result<bool> {
    if a.is_empty() {
        return Err(Error::EmptyWord);
    }
    Ok(parking_criterion(&a.0))
}

/// Parking words `a` with `pack(a) = u`, in lexicographic order.
///
/// Candidates are the images of `u` under the strictly increasing maps
/// `{1..k} -> {1..n}`; the fiber is the parking ones among them.
pub fn parking_fiber(u: &PackedWord) -> Vec<ParkingWord> {
    let n = u.len();
    let k = u.max_letter() as usize;
    if n == 0 {
        return vec![ParkingWord(Vec::new())];
    }
    let mut out = Vec::new();
    let mut values = Vec::with_capacity(k);
    fn go(u: &[Letter], n: usize, k: usize, values: &mut Vec<Letter>, out: &mut Vec<ParkingWord>) {
        if values.len() == k {
            let a: Vec<Letter> = u.iter().map(|&l| values[l as usize - 1]).collect();
            if parking_criterion(&a) {
                out.push(ParkingWord(a));
            }
            return;
        }
        let lo = values.last().map_or(1, |&v| v + 1);
        let slots_left = (k - values.len() - 1) as Letter;
        for v in lo..=(n as Letter - slots_left) {
            values.push(v);
            go(u, n, k, values, out);
            values.pop();
        }
    }
    go(&u.0, n, k, &mut values, &mut out);
    out.sort();
    out
}

/// Maximal unpacking: letter `j` becomes one plus the number of positions
/// holding letters smaller than `j`.
pub fn detass(u: &PackedWord) -> Result<ParkingWord> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    let eval = evaluation(u);
    let mut start = Vec::with_capacity(eval.len());
    let mut below = 0;
    for &p in eval.parts() {
        start.push(below + 1);
        below += p;
    }
    Ok(ParkingWord(
        u.0.iter().map(|&l| start[l as usize - 1]).collect(),
    ))
}

/// Lexicographic maximum of the parking fiber; the defining characterization
/// that [`detass`] computes in closed form.
pub fn detass_by_fiber(u: &PackedWord) -> Result<ParkingWord> {
    if u.is_empty() {
        return Err(Error::EmptyWord);
    }
    parking_fiber(u)
        .into_iter()
        .max_by(|a, b| a.0.cmp(&b.0))
        .ok_or(Error::EmptyWord)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(v: &[Letter]) -> Word {
        Word::new(v.to_vec()).unwrap()
    }

    fn pw(v: &[Letter]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn max_letter_examples() {
        assert_eq!(w(&[2, 1, 2]).max_letter(), Ok(2));
        assert_eq!(w(&[1]).max_letter(), Ok(1));
        assert_eq!(w(&[3, 1, 4, 1, 5]).max_letter(), Ok(5));
        assert_eq!(Word::empty().max_letter(), Err(Error::EmptyWord));
    }

    #[test]
    fn pack_examples() {
        assert_eq!(pack(&w(&[3, 1, 3, 5])), pw(&[2, 1, 2, 3]));
        assert_eq!(pack(&w(&[1, 2, 1])), pw(&[1, 2, 1]));
        assert_eq!(pack(&w(&[7, 7, 7])), pw(&[1, 1, 1]));
        assert_eq!(pack(&Word::empty()), PackedWord::empty());
    }

    #[test]
    fn is_packed_examples() {
        assert!(is_packed(&[1, 2, 1]));
        assert!(!is_packed(&[1, 3, 1]));
        assert!(is_packed(&[2, 1]));
        assert!(matches!(
            PackedWord::new(vec![1, 3]),
            Err(Error::NotPacked(_))
        ));
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_packed(0).unwrap(), vec![PackedWord::empty()]);
        assert_eq!(enumerate_packed(1).unwrap(), vec![pw(&[1])]);
        assert_eq!(
            enumerate_packed(2).unwrap(),
            vec![pw(&[1, 1]), pw(&[1, 2]), pw(&[2, 1])]
        );
    }

    #[test]
    fn enumerate_respects_bound() {
        let l = Limits::new(3);
        assert!(enumerate_packed_with(3, &l).is_ok());
        assert!(matches!(
            enumerate_packed_with(4, &l),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn evaluation_examples() {
        assert_eq!(evaluation(&pw(&[1, 2, 1])).parts(), &[2, 1]);
        assert_eq!(evaluation(&pw(&[1, 1, 1])).parts(), &[3]);
        assert_eq!(evaluation(&pw(&[1, 2, 3])).parts(), &[1, 1, 1]);
        assert!(evaluation(&PackedWord::empty()).is_empty());
    }

    #[test]
    fn osp_examples() {
        assert_eq!(to_osp(&pw(&[1, 2, 1])).to_string(), "({1,3},{2})");
        assert_eq!(to_osp(&pw(&[2, 1])).to_string(), "({2},{1})");
        let p: OrderedSetPartition = "({1,3},{2})".parse().unwrap();
        assert_eq!(from_osp(&p), pw(&[1, 2, 1]));
    }

    #[test]
    fn osp_rejects_malformed() {
        assert!(matches!(
            "({1,3},{3})".parse::<OrderedSetPartition>(),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            "({1,4},{2})".parse::<OrderedSetPartition>(),
            Err(Error::InvalidPartition(_))
        ));
        assert!(matches!(
            "({1,2}".parse::<OrderedSetPartition>(),
            Err(Error::Parse { .. })
        ));
        assert!(OrderedSetPartition::new(vec![BTreeSet::new()]).is_err());
    }

    #[test]
    fn parking_examples() {
        assert_eq!(is_parking(&w(&[1, 1, 2])), Ok(true));
        assert_eq!(is_parking(&w(&[2, 3, 3])), Ok(false));
        assert_eq!(is_parking(&w(&[1, 3, 1])), Ok(true));
        assert_eq!(is_parking(&Word::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn fiber_examples() {
        let f: Vec<String> = parking_fiber(&pw(&[1, 2, 1]))
            .iter()
            .map(ToString::to_string)
            .collect();
        assert_eq!(f, vec!["1,2,1", "1,3,1"]);
        assert_eq!(parking_fiber(&pw(&[1, 1, 1])).len(), 1);
    }

    #[test]
    fn detass_examples() {
        assert_eq!(detass(&pw(&[1, 1, 2])).unwrap().letters(), &[1, 1, 3]);
        assert_eq!(detass(&pw(&[1, 2, 1])).unwrap().letters(), &[1, 3, 1]);
        assert_eq!(detass(&pw(&[1, 1, 1])).unwrap().letters(), &[1, 1, 1]);
        assert_eq!(detass(&PackedWord::empty()), Err(Error::EmptyWord));
    }

    #[test]
    fn literal_parsing() {
        assert_eq!("1, 2,1".parse::<Word>().unwrap(), w(&[1, 2, 1]));
        assert!(matches!(
            "1,0".parse::<Word>(),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!("1,x".parse::<Word>(), Err(Error::Parse { .. })));
        assert!(matches!(
            "1,3".parse::<PackedWord>(),
            Err(Error::NotPacked(_))
        ));
    }

    #[test]
    fn length_lex_order() {
        let mut v = vec![w(&[2]), w(&[1, 1]), w(&[1]), w(&[])];
        v.sort();
        assert_eq!(v, vec![w(&[]), w(&[1]), w(&[2]), w(&[1, 1])]);
    }
}
