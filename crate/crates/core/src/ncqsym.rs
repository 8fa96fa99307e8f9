//! Packed-word algebra in the monomial basis `M_u` and its tridendriform
//! structure.
//!
//! The product `M_u · M_v` is the sum of `M_w` over packed words `w = w' w''`
//! with `pack(w') = u` and `pack(w'') = v`. Such a `w` is determined by two
//! strictly increasing maps sending the letter sets of `u` and `v` into
//! `{1..m}` whose images cover `{1..m}`, i.e. by a quasi-shuffle of the two
//! chains `1 < ... < k` and `1 < ... < l`. The three partial products keep
//! the terms whose prefix maximum is greater than (`≺`), equal to (`∘`) or
//! smaller than (`≻`) the suffix maximum.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use once_cell::sync::OnceCell;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::linalg::{bilinear, tensor, Coeff, EchelonBasis, Element, TensorElement};
use crate::qsym::QSymElement;
use crate::trees::{fibers_by_tree_with, word_fiber, PlaneTree};
use crate::words::{evaluation, Letter, PackedWord};

pub type NcqElement = Element<PackedWord>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TriOp {
    Full,
    Prec,
    Circ,
    Succ,
}

impl TriOp {
    pub const SPLIT: [TriOp; 3] = [TriOp::Prec, TriOp::Circ, TriOp::Succ];
    pub const ALL: [TriOp; 4] = [TriOp::Full, TriOp::Prec, TriOp::Circ, TriOp::Succ];

    /// Which partial product a concatenation with these block maxima falls in.
    pub fn classify(prefix_max: Letter, suffix_max: Letter) -> TriOp {
        match prefix_max.cmp(&suffix_max) {
            std::cmp::Ordering::Greater => TriOp::Prec,
            std::cmp::Ordering::Equal => TriOp::Circ,
            std::cmp::Ordering::Less => TriOp::Succ,
        }
    }

    pub fn keeps(self, prefix_max: Letter, suffix_max: Letter) -> bool {
        self == TriOp::Full || self == TriOp::classify(prefix_max, suffix_max)
    }

    pub fn name(self) -> &'static str {
        match self {
            TriOp::Full => "full",
            TriOp::Prec => "prec",
            TriOp::Circ => "circ",
            TriOp::Succ => "succ",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            TriOp::Full => "·",
            TriOp::Prec => "≺",
            TriOp::Circ => "∘",
            TriOp::Succ => "≻",
        }
    }
}

impl fmt::Display for TriOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TriOp {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(TriOp::Full),
            "prec" => Ok(TriOp::Prec),
            "circ" => Ok(TriOp::Circ),
            "succ" => Ok(TriOp::Succ),
            other => Err(Error::Parse {
                offset: 0,
                message: format!("unknown operation {other:?}"),
            }),
        }
    }
}

/// Enumerates the quasi-shuffles of `1..=k` and `1..=l`, reporting the two
/// increasing maps for each.
fn quasi_shuffles(k: usize, l: usize, mut visit: impl FnMut(&[Letter], &[Letter])) {
    fn go(
        k: usize,
        l: usize,
        m: Letter,
        a: &mut Vec<Letter>,
        b: &mut Vec<Letter>,
        visit: &mut dyn FnMut(&[Letter], &[Letter]),
    ) {
        let (i, j) = (a.len(), b.len());
        if i == k && j == l {
            visit(a, b);
            return;
        }
        if i < k {
            a.push(m + 1);
            go(k, l, m + 1, a, b, visit);
            a.pop();
        }
        if j < l {
            b.push(m + 1);
            go(k, l, m + 1, a, b, visit);
            b.pop();
        }
        if i < k && j < l {
            a.push(m + 1);
            b.push(m + 1);
            go(k, l, m + 1, a, b, visit);
            a.pop();
            b.pop();
        }
    }
    go(
        k,
        l,
        0,
        &mut Vec::with_capacity(k),
        &mut Vec::with_capacity(l),
        &mut visit,
    );
}

/// Keys of the basis-level product `M_u op M_v`. Every structure constant is
/// zero or one, so the result is a set of keys.
///
/// With an empty operand only [`TriOp::Full`] is meaningful; the split
/// operations return no terms in that case.
pub fn product_keys(u: &PackedWord, v: &PackedWord, op: TriOp) -> Vec<PackedWord> {
    if u.is_empty() || v.is_empty() {
        if op != TriOp::Full {
            return Vec::new();
        }
        let w = if u.is_empty() { v } else { u };
        return vec![w.clone()];
    }
    let (k, l) = (u.max_letter() as usize, v.max_letter() as usize);
    let mut out = Vec::new();
    quasi_shuffles(k, l, |a, b| {
        if !op.keeps(a[k - 1], b[l - 1]) {
            return;
        }
        let w: Vec<Letter> = u
            .letters()
            .iter()
            .map(|&x| a[x as usize - 1])
            .chain(v.letters().iter().map(|&y| b[y as usize - 1]))
            .collect();
        out.push(PackedWord::from_vec_unchecked(w));
    });
    out
}

fn has_unit(x: &NcqElement) -> bool {
    !x.coeff(&PackedWord::empty()).is_zero()
}

/// Any of the four products, extended bilinearly.
pub fn product(op: TriOp, x: &NcqElement, y: &NcqElement) -> Result<NcqElement> {
    if op != TriOp::Full && (has_unit(x) || has_unit(y)) {
        return Err(Error::UnitOperand);
    }
    Ok(bilinear(
        |u, v| Element::sum_of(product_keys(u, v, op)),
        x,
        y,
    ))
}

pub fn product_full(x: &NcqElement, y: &NcqElement) -> NcqElement {
    bilinear(
        |u, v| Element::sum_of(product_keys(u, v, TriOp::Full)),
        x,
        y,
    )
}

pub fn product_prec(x: &NcqElement, y: &NcqElement) -> Result<NcqElement> {
    product(TriOp::Prec, x, y)
}

pub fn product_circ(x: &NcqElement, y: &NcqElement) -> Result<NcqElement> {
    product(TriOp::Circ, x, y)
}

pub fn product_succ(x: &NcqElement, y: &NcqElement) -> Result<NcqElement> {
    product(TriOp::Succ, x, y)
}

/// `M_1`, the sum of all the variables.
pub fn generator() -> NcqElement {
    Element::basis(PackedWord::from_vec_unchecked(vec![1]))
}

pub fn unit() -> NcqElement {
    Element::basis(PackedWord::empty())
}

pub fn m(letters: &[Letter]) -> Result<NcqElement> {
    Ok(Element::basis(PackedWord::new(letters.to_vec())?))
}

/// Degree-`n` component.
pub fn homogeneous_part(x: &NcqElement, n: usize) -> NcqElement {
    x.filter(|u| u.len() == n)
}

fn check_homogeneous(x: &NcqElement, n: usize) -> Result<()> {
    match x.keys().find(|u| u.len() != n) {
        Some(u) => Err(Error::InhomogeneousInput {
            expected: n,
            found: u.len(),
        }),
        None => Ok(()),
    }
}

/// `Δ M_w = Σ_i M_{w restricted to letters ≤ i} ⊗ M_{pack(w restricted to letters > i)}`.
pub fn coproduct_keys(w: &PackedWord) -> Vec<(PackedWord, PackedWord)> {
    let k = w.max_letter();
    (0..=k)
        .map(|i| {
            let low: Vec<Letter> = w.letters().iter().copied().filter(|&x| x <= i).collect();
            let high: Vec<Letter> = w
                .letters()
                .iter()
                .filter(|&&x| x > i)
                .map(|&x| x - i)
                .collect();
            (
                PackedWord::from_vec_unchecked(low),
                PackedWord::from_vec_unchecked(high),
            )
        })
        .collect()
}

pub fn coproduct(x: &NcqElement) -> TensorElement<PackedWord> {
    x.map_linear(|w| Element::sum_of(coproduct_keys(w)))
}

pub fn counit(x: &NcqElement) -> Coeff {
    x.coeff(&PackedWord::empty())
}

/// Componentwise product on the tensor square: `(a⊗b)(c⊗d) = ac ⊗ bd`.
pub fn tensor_product(
    x: &TensorElement<PackedWord>,
    y: &TensorElement<PackedWord>,
) -> TensorElement<PackedWord> {
    bilinear(
        |(a, b), (c, d)| {
            tensor(
                &Element::sum_of(product_keys(a, c, TriOp::Full)),
                &Element::sum_of(product_keys(b, d, TriOp::Full)),
            )
        },
        x,
        y,
    )
}

/// `MM_T`, the sum of `M_u` over the packed words whose tree is `T`.
pub fn mm_of_tree(t: &PlaneTree) -> Result<NcqElement> {
    let fiber = word_fiber(t)?;
    if fiber.is_empty() {
        return Err(Error::UnknownTree(t.to_string()));
    }
    Ok(Element::sum_of(fiber))
}

/// Commutative image: `M_u ↦ M_I` with `I` the evaluation of `u`.
pub fn abelianize(x: &NcqElement) -> QSymElement {
    x.map_keys(evaluation)
}

/// The sub-trialgebra generated by `M_1`, built degree by degree.
///
/// Degree `n` is spanned by `a op b` for `op` in `≺, ∘, ≻` and `a`, `b`
/// running over the bases already chosen in degrees `i` and `n - i`.
/// Candidates are inserted in a fixed order (split `i` ascending, then `a`,
/// then `b`, then the operation) and kept when they raise the rank, so the
/// chosen basis is reproducible.
#[derive(Clone, Debug)]
pub struct FreeTrialgebra {
    // Index 0 is unused: the trialgebra lives in positive degree.
    bases: Vec<Vec<NcqElement>>,
    echelons: Vec<EchelonBasis<PackedWord>>,
    // Tree fibers per degree, built on the first membership query.
    fibers: Vec<OnceCell<BTreeMap<PlaneTree, Vec<PackedWord>>>>,
}

impl FreeTrialgebra {
    pub fn new() -> Self {
        let mut e = EchelonBasis::new();
        e.insert(&generator());
        FreeTrialgebra {
            bases: vec![Vec::new(), vec![generator()]],
            echelons: vec![EchelonBasis::new(), e],
            fibers: vec![OnceCell::new(), OnceCell::new()],
        }
    }

    /// Closure up to degree `n`, checked against the global resource bound.
    pub fn up_to(n: usize) -> Result<Self> {
        Self::up_to_with(n, &Limits::global())
    }

    pub fn up_to_with(n: usize, limits: &Limits) -> Result<Self> {
        limits.check(n)?;
        let mut f = Self::new();
        f.extend_to(n);
        Ok(f)
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    fn extend_to(&mut self, n: usize) {
        while self.max_degree() < n {
            let d = self.max_degree() + 1;
            let mut jobs = Vec::new();
            for i in 1..d {
                for a in 0..self.bases[i].len() {
                    for b in 0..self.bases[d - i].len() {
                        for op in TriOp::SPLIT {
                            jobs.push((i, a, b, op));
                        }
                    }
                }
            }
            let bases = &self.bases;
            let candidates: Vec<NcqElement> = jobs
                .par_iter()
                .map(|&(i, a, b, op)| {
                    product(op, &bases[i][a], &bases[d - i][b]).expect("positive-degree operands")
                })
                .collect();
            let mut echelon = EchelonBasis::new();
            let mut basis = Vec::new();
            for c in candidates {
                if echelon.insert(&c) {
                    basis.push(c);
                }
            }
            self.bases.push(basis);
            self.echelons.push(echelon);
            self.fibers.push(OnceCell::new());
        }
    }

    pub fn basis(&self, n: usize) -> &[NcqElement] {
        self.bases.get(n).map_or(&[], Vec::as_slice)
    }

    pub fn dim(&self, n: usize) -> usize {
        self.basis(n).len()
    }

    pub fn hilbert_series(&self) -> Vec<usize> {
        (1..=self.max_degree()).map(|n| self.dim(n)).collect()
    }

    /// Whether a homogeneous element of degree `n` lies in the closure.
    pub fn contains(&self, x: &NcqElement, n: usize) -> Result<bool> {
        check_homogeneous(x, n)?;
        if x.is_zero() {
            return Ok(true);
        }
        match self.echelons.get(n) {
            Some(e) if n >= 1 => Ok(e.contains(x)),
            _ => Err(Error::ResourceLimit {
                requested: n,
                bound: self.max_degree(),
            }),
        }
    }

    pub fn membership(&self, x: &NcqElement, n: usize) -> Result<Membership> {
        let member = self.contains(x, n)?;
        let coordinates = if member && n >= 1 {
            let fibers =
                self.fibers[n].get_or_try_init(|| fibers_by_tree_with(n, &Limits::global()))?;
            mm_coordinates_with(x, n, fibers)?
        } else {
            None
        };
        Ok(Membership {
            member,
            coordinates,
        })
    }
}

impl Default for FreeTrialgebra {
    fn default() -> Self {
        Self::new()
    }
}

/// Outcome of a membership query against the free trialgebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Membership {
    pub member: bool,
    /// Coordinates over `{MM_T}`, present when `x` is a combination of them.
    pub coordinates: Option<Element<PlaneTree>>,
}

/// Reads coordinates over the `MM_T` of degree `n`. The `MM_T` have disjoint
/// supports, so `x` is in their span exactly when it is constant on each
/// tree fiber.
pub fn mm_coordinates(x: &NcqElement, n: usize) -> Result<Option<Element<PlaneTree>>> {
    check_homogeneous(x, n)?;
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    let fibers = fibers_by_tree_with(n, &Limits::global())?;
    mm_coordinates_with(x, n, &fibers)
}

/// [`mm_coordinates`] against precomputed tree fibers of degree `n`.
pub fn mm_coordinates_with(
    x: &NcqElement,
    n: usize,
    fibers: &BTreeMap<PlaneTree, Vec<PackedWord>>,
) -> Result<Option<Element<PlaneTree>>> {
    check_homogeneous(x, n)?;
    let mut coords = Element::zero();
    for (t, fiber) in fibers {
        let c = x.coeff(&fiber[0]);
        if fiber.iter().any(|u| x.coeff(u) != c) {
            return Ok(None);
        }
        coords.add_term(t.clone(), c);
    }
    Ok(Some(coords))
}

pub fn generate_free(n: usize) -> Result<Vec<NcqElement>> {
    if n == 0 {
        return Err(Error::EmptyWord);
    }
    Ok(FreeTrialgebra::up_to(n)?.basis(n).to_vec())
}

pub fn membership(x: &NcqElement, n: usize) -> Result<Membership> {
    check_homogeneous(x, n)?;
    FreeTrialgebra::up_to(n)?.membership(x, n)
}

/// Sum of the coefficients; handy for checking `0/1` structure constants.
pub fn coefficient_sum(x: &NcqElement) -> Coeff {
    x.iter().fold(Coeff::zero(), |acc, (_, c)| acc + c)
}

pub fn is_unit(x: &NcqElement) -> bool {
    x.len() == 1 && x.coeff(&PackedWord::empty()).is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int;
    use crate::words::Composition;

    fn mm(v: &[Letter]) -> NcqElement {
        m(v).unwrap()
    }

    fn pw(v: &[Letter]) -> PackedWord {
        PackedWord::new(v.to_vec()).unwrap()
    }

    #[test]
    fn generator_is_m1() {
        assert_eq!(generator(), mm(&[1]));
        assert!(generator().keys().all(|u| u.len() == 1));
        assert_eq!(
            abelianize(&generator()),
            Element::basis(Composition::new(vec![1]).unwrap())
        );
    }

    #[test]
    fn full_product_examples() {
        let m1 = generator();
        assert_eq!(
            product_full(&m1, &m1),
            mm(&[1, 1]) + mm(&[1, 2]) + mm(&[2, 1])
        );
        assert_eq!(
            product_full(&m1, &mm(&[1, 1])),
            mm(&[1, 1, 1]) + mm(&[1, 2, 2]) + mm(&[2, 1, 1])
        );
        let u = mm(&[2, 1, 2, 3]);
        assert_eq!(product_full(&unit(), &u), u);
        assert_eq!(product_full(&u, &unit()), u);
    }

    #[test]
    fn split_examples() {
        let m1 = generator();
        assert_eq!(product_succ(&m1, &m1).unwrap(), mm(&[1, 2]));
        assert_eq!(product_circ(&m1, &m1).unwrap(), mm(&[1, 1]));
        assert_eq!(product_prec(&m1, &m1).unwrap(), mm(&[2, 1]));
        assert_eq!(product_prec(&m1, &mm(&[1, 1])).unwrap(), mm(&[2, 1, 1]));
        assert_eq!(product_prec(&unit(), &m1), Err(Error::UnitOperand));
        assert_eq!(
            product_succ(&m1, &(unit() + m1.clone())),
            Err(Error::UnitOperand)
        );
    }

    #[test]
    fn product_term_counts_are_delannoy() {
        // quasi-shuffles of two chains of lengths k and l
        let d = |u: &[Letter], v: &[Letter]| product_keys(&pw(u), &pw(v), TriOp::Full).len();
        assert_eq!(d(&[1], &[1]), 3);
        assert_eq!(d(&[1, 2], &[1]), 5);
        assert_eq!(d(&[1, 2], &[2, 1]), 13);
    }

    #[test]
    fn coproduct_examples() {
        let e = PackedWord::empty();
        let d1 = coproduct(&generator());
        assert_eq!(
            d1,
            Element::sum_of([(pw(&[1]), e.clone()), (e.clone(), pw(&[1]))])
        );
        assert_eq!(
            coproduct(&mm(&[1, 2, 1])),
            Element::sum_of([
                (pw(&[1, 2, 1]), e.clone()),
                (pw(&[1, 1]), pw(&[1])),
                (e.clone(), pw(&[1, 2, 1])),
            ])
        );
        assert_eq!(
            coproduct(&mm(&[2, 1])),
            Element::sum_of([
                (pw(&[2, 1]), e.clone()),
                (pw(&[1]), pw(&[1])),
                (e.clone(), pw(&[2, 1])),
            ])
        );
        assert_eq!(counit(&generator()), int(0));
        assert_eq!(counit(&unit()), int(1));
    }

    #[test]
    fn mm_examples() {
        let t = |s: &str| s.parse::<PlaneTree>().unwrap();
        assert_eq!(mm_of_tree(&t("(o o)")).unwrap(), mm(&[1]));
        assert_eq!(mm_of_tree(&t("(o o o)")).unwrap(), mm(&[1, 1]));
        assert_eq!(
            mm_of_tree(&t("((o o) (o o))")).unwrap(),
            mm(&[1, 2, 1]) + mm(&[1, 3, 2]) + mm(&[2, 3, 1])
        );
    }

    #[test]
    fn free_small_degrees() {
        let f = FreeTrialgebra::up_to(3).unwrap();
        assert_eq!(f.hilbert_series(), vec![1, 3, 11]);
        assert_eq!(generate_free(1).unwrap(), vec![generator()]);
        let mut e = EchelonBasis::new();
        for x in generate_free(2).unwrap() {
            e.insert(&x);
        }
        for u in [[1, 1], [1, 2], [2, 1]] {
            assert!(e.contains(&mm(&u)));
        }
    }

    #[test]
    fn membership_examples() {
        let f = FreeTrialgebra::up_to(3).unwrap();
        let r = f.membership(&mm(&[1, 2, 1]), 3).unwrap();
        assert!(!r.member);
        assert_eq!(r.coordinates, None);
        let z = f.membership(&Element::zero(), 3).unwrap();
        assert!(z.member);
        assert!(z.coordinates.unwrap().is_zero());
        let t: PlaneTree = "((o o) (o o))".parse().unwrap();
        let r = f.membership(&mm_of_tree(&t).unwrap(), 3).unwrap();
        assert!(r.member);
        assert_eq!(r.coordinates, Some(Element::basis(t)));
        assert_eq!(
            f.membership(&(mm(&[1]) + mm(&[1, 1])), 2),
            Err(Error::InhomogeneousInput {
                expected: 2,
                found: 1
            })
        );
    }

    #[test]
    fn abelianize_examples() {
        let c = |v: &[u32]| Composition::new(v.to_vec()).unwrap();
        assert_eq!(abelianize(&mm(&[1, 2, 1])), Element::basis(c(&[2, 1])));
        let m1 = generator();
        assert_eq!(
            abelianize(&product_full(&m1, &m1)),
            Element::term(c(&[1, 1]), int(2)) + Element::basis(c(&[2]))
        );
        assert_eq!(abelianize(&unit()), Element::basis(Composition::empty()));
    }

    #[test]
    fn op_names_round_trip() {
        for op in TriOp::ALL {
            assert_eq!(op.name().parse::<TriOp>().unwrap(), op);
        }
        assert!("star".parse::<TriOp>().is_err());
    }
}
