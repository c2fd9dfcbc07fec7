//! Sparse elements of the tensor algebra over the free vector space on the
//! vertex set, indexed by words of vertex indices.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::exactla::Matrix;
use crate::field::{FieldSpec, Scalar};

/// A word over the vertex indices; the empty word is the unit of degree 0.
///
/// Ordered graded-lexicographically: by length, then letterwise.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word(Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Self {
        Word(letters)
    }

    pub fn unit() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<Vec<usize>> for Word {
    fn from(v: Vec<usize>) -> Self {
        Word(v)
    }
}

/// A finitely supported map from words to nonzero scalars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TensorElem {
    terms: BTreeMap<Word, Scalar>,
    field: FieldSpec,
}

impl TensorElem {
    pub fn zero(field: FieldSpec) -> Self {
        TensorElem {
            terms: BTreeMap::new(),
            field,
        }
    }

    /// The unit `1` of degree zero.
    pub fn unit(field: FieldSpec) -> Self {
        TensorElem::pure(field, Vec::new())
    }

    /// The pure tensor `u_1 ⊗ ... ⊗ u_k` with coefficient one.
    pub fn pure(field: FieldSpec, letters: Vec<usize>) -> Self {
        TensorElem::monomial(Word(letters), field.one())
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let field = coeff.field();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        TensorElem { terms, field }
    }

    /// Sums repeated words and drops zero coefficients.
    pub fn from_terms(field: FieldSpec, terms: impl IntoIterator<Item = (Word, Scalar)>) -> Result<Self> {
        let mut t = TensorElem::zero(field);
        for (w, c) in terms {
            if c.field() != field {
                return Err(Error::FieldMismatch(format!("{} vs {field}", c.field())));
            }
            t.accumulate(w, &c);
        }
        Ok(t)
    }

    fn accumulate(&mut self, word: Word, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&word) {
            Some(x) => {
                *x = &*x + c;
                if x.is_zero() {
                    self.terms.remove(&word);
                }
            }
            None => {
                self.terms.insert(word, c.clone());
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
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

    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys()
    }

    pub fn coeff(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.terms.keys().map(Word::degree).max()
    }

    fn check_field(&self, other: &TensorElem) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn add(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_field(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.accumulate(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &TensorElem) -> Result<TensorElem> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> TensorElem {
        TensorElem {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
            field: self.field,
        }
    }

    pub fn scale(&self, s: &Scalar) -> Result<TensorElem> {
        if s.field() != self.field {
            return Err(Error::FieldMismatch(format!("{} vs {}", s.field(), self.field)));
        }
        Ok(TensorElem {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c * s))
                .filter(|(_, c)| !c.is_zero())
                .collect(),
            field: self.field,
        })
    }

    /// Concatenation product of the tensor algebra.
    pub fn mul(&self, other: &TensorElem) -> Result<TensorElem> {
        self.check_field(other)?;
        let mut out = TensorElem::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.accumulate(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    fn filter_degree(&self, keep: impl Fn(usize) -> bool) -> TensorElem {
        TensorElem {
            terms: self
                .terms
                .iter()
                .filter(|(w, _)| keep(w.degree()))
                .map(|(w, c)| (w.clone(), c.clone()))
                .collect(),
            field: self.field,
        }
    }

    /// Component of degree exactly `k`.
    pub fn degree_component(&self, k: usize) -> TensorElem {
        self.filter_degree(|d| d == k)
    }

    /// Components of degree at most `k`.
    pub fn truncate_le(&self, k: usize) -> TensorElem {
        self.filter_degree(|d| d <= k)
    }

    /// Coordinates against a sorted word index; words outside the index must
    /// not occur in the support.
    pub fn coordinates(&self, index: &[Word]) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); index.len()];
        for (w, c) in &self.terms {
            let i = index.binary_search(w).expect("word missing from coordinate index");
            v[i] = c.clone();
        }
        v
    }
}

/// Support first (as a graded-lex sequence of words), then coefficients.
/// The zero tensor is the smallest element.
impl Ord for TensorElem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.terms
            .keys()
            .cmp(other.terms.keys())
            .then_with(|| self.terms.values().cmp(other.terms.values()))
            .then_with(|| self.field.characteristic().cmp(&other.field.characteristic()))
    }
}

impl PartialOrd for TensorElem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TensorElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(w, c)| {
                let word = if w.degree() == 0 {
                    "1".to_string()
                } else {
                    w.letters().iter().map(|x| format!("v{x}")).collect::<Vec<_>>().join("⊗")
                };
                if c.is_one() {
                    word
                } else {
                    format!("{c}·{word}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

fn factorial_mod(n: usize, field: FieldSpec) -> Scalar {
    (2..=n).fold(field.one(), |acc, i| &acc * &field.from_i64(i as i64))
}

/// Multiplicities of a multiset given as a list, keyed by vertex.
fn multiplicities(multiset: &[usize]) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &v in multiset {
        *m.entry(v).or_insert(0) += 1;
    }
    m
}

/// Next lexicographic permutation in place; false once the last is reached.
fn next_permutation(v: &mut [usize]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Symmetrization of the pure tensor on a multiset of vertices.
///
/// Uses the closed form: every distinct arrangement of the multiset appears
/// with coefficient `∏ m_v!`, reduced into the field. The `k!` permutations
/// are never enumerated.
pub fn sym(field: FieldSpec, multiset: &[usize]) -> Result<TensorElem> {
    if multiset.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let coeff = multiplicities(multiset)
        .values()
        .fold(field.one(), |acc, &m| &acc * &factorial_mod(m, field));
    if coeff.is_zero() {
        return Ok(TensorElem::zero(field));
    }
    let mut arrangement = multiset.to_vec();
    arrangement.sort_unstable();
    let mut terms = BTreeMap::new();
    loop {
        terms.insert(Word(arrangement.clone()), coeff.clone());
        if !next_permutation(&mut arrangement) {
            break;
        }
    }
    Ok(TensorElem { terms, field })
}

/// True iff the symmetrization vanishes: positive characteristic `p` and
/// some vertex multiplicity at least `p`.
pub fn sym_vanishes(multiset: &[usize], field: FieldSpec) -> Result<bool> {
    if multiset.is_empty() {
        return Err(Error::EmptyMultiset);
    }
    let p = field.characteristic();
    Ok(p > 0 && multiplicities(multiset).values().any(|&m| m as u64 >= p))
}

/// Standard inner product with the word basis orthonormal; rationals only.
pub fn inner_product(s: &TensorElem, t: &TensorElem) -> Result<Scalar> {
    s.check_field(t)?;
    if !s.field.is_rationals() {
        return Err(Error::FieldMismatch(format!(
            "inner product needs Q, got {}",
            s.field
        )));
    }
    let (small, large) = if s.len() <= t.len() { (s, t) } else { (t, s) };
    let mut acc = s.field.zero();
    for (w, a) in &small.terms {
        if let Some(b) = large.terms.get(w) {
            acc = &acc + &(a * b);
        }
    }
    Ok(acc)
}

/// Union of supports in graded-lex order, and one coordinate row per element.
pub fn basis_of_span(field: FieldSpec, elems: &[TensorElem]) -> Result<(Vec<Word>, Matrix)> {
    let mut words: Vec<Word> = Vec::new();
    for e in elems {
        if e.field != field {
            return Err(Error::FieldMismatch(format!("{} vs {field}", e.field)));
        }
        words.extend(e.support().cloned());
    }
    words.sort();
    words.dedup();
    let rows: Vec<Vec<Scalar>> = elems.iter().map(|e| e.coordinates(&words)).collect();
    let m = Matrix::from_rows(field, words.len(), rows)?;
    Ok((words, m))
}

/// `∏ m_v!` as an integer, for reporting.
pub fn multinomial_weight(multiset: &[usize]) -> BigInt {
    multiplicities(multiset)
        .values()
        .map(|&m| (2..=m).fold(BigInt::one(), |acc, i| acc * i))
        .product()
}
