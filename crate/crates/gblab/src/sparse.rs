//! Finitely supported coefficient vectors, index sets and decreasing
//! rearrangements.
//!
//! A `SparseVector` is the universal argument of every norm and algorithm in
//! this crate: a finite map from 1-based basis index to a real or complex
//! coefficient. Zero coefficients are dropped on construction so the support
//! size is always well-defined.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

/// 1-based basis index.
pub type Index = u64;

/// Scalar field tag carried by norm oracles and samplers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Finitely supported vector of basis coefficients. Stored entries are
/// nonzero and keyed by index ≥ 1.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SparseVector {
    entries: BTreeMap<Index, Complex64>,
}

impl SparseVector {
    pub fn zero() -> Self {
        Self::default()
    }

    /// Build from (index, coefficient) pairs. Duplicate indices are summed,
    /// zeros are dropped, and index 0 is rejected.
    pub fn from_entries<I: IntoIterator<Item = (Index, Complex64)>>(iter: I) -> Self {
        let mut entries: BTreeMap<Index, Complex64> = BTreeMap::new();
        for (i, v) in iter {
            assert!(i >= 1, "basis indices are 1-based");
            *entries.entry(i).or_insert(Complex64::new(0.0, 0.0)) += v;
        }
        entries.retain(|_, v| v.norm_sqr() != 0.0);
        Self { entries }
    }

    pub fn from_real_entries<I: IntoIterator<Item = (Index, f64)>>(iter: I) -> Self {
        Self::from_entries(iter.into_iter().map(|(i, v)| (i, Complex64::new(v, 0.0))))
    }

    /// Unit coefficient at a single index.
    pub fn basis_vector(i: Index) -> Self {
        Self::from_real_entries([(i, 1.0)])
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// Support size |supp(x)|.
    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, i: Index) -> Complex64 {
        self.entries
            .get(&i)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Index, Complex64)> + '_ {
        self.entries.iter().map(|(&i, &v)| (i, v))
    }

    pub fn support(&self) -> IndexSet {
        IndexSet::from_iter(self.entries.keys().copied())
    }

    pub fn max_index(&self) -> Option<Index> {
        self.entries.keys().next_back().copied()
    }

    pub fn max_magnitude(&self) -> f64 {
        self.entries.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// True when every stored coefficient has zero imaginary part.
    pub fn is_real(&self) -> bool {
        self.entries.values().all(|v| v.im == 0.0)
    }

    /// Coordinate projection S_A: keep exactly the entries indexed by `set`.
    pub fn project(&self, set: &IndexSet) -> SparseVector {
        // Iterate over the smaller of the two collections.
        if set.len() < self.entries.len() {
            Self {
                entries: set
                    .iter()
                    .filter_map(|i| self.entries.get(&i).map(|&v| (i, v)))
                    .collect(),
            }
        } else {
            Self {
                entries: self
                    .entries
                    .iter()
                    .filter(|(i, _)| set.contains(**i))
                    .map(|(&i, &v)| (i, v))
                    .collect(),
            }
        }
    }

    pub fn add(&self, other: &SparseVector) -> SparseVector {
        Self::from_entries(self.iter().chain(other.iter()))
    }

    pub fn sub(&self, other: &SparseVector) -> SparseVector {
        Self::from_entries(self.iter().chain(other.iter().map(|(i, v)| (i, -v))))
    }

    pub fn scale(&self, factor: Complex64) -> SparseVector {
        Self::from_entries(self.iter().map(|(i, v)| (i, v * factor)))
    }

    pub fn scale_real(&self, factor: f64) -> SparseVector {
        self.scale(Complex64::new(factor, 0.0))
    }

    /// Entries as sorted `(index, re, im)` triples, the canonical wire form.
    pub fn to_triples(&self) -> Vec<(Index, f64, f64)> {
        self.iter().map(|(i, v)| (i, v.re, v.im)).collect()
    }
}

impl Serialize for SparseVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.entries.len()))?;
        for (i, v) in self.iter() {
            seq.serialize_element(&(i, v.re, v.im))?;
        }
        seq.end()
    }
}

impl fmt::Display for SparseVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, (i, v)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ", ")?;
            }
            if v.im == 0.0 {
                write!(f, "{}:{}", i, v.re)?;
            } else {
                write!(f, "{}:{}{:+}i", i, v.re, v.im)?;
            }
        }
        write!(f, "}}")
    }
}

/// Finite sorted set of basis indices.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct IndexSet {
    elements: BTreeSet<Index>,
}

impl IndexSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Closed interval {lo, lo+1, ..., hi}; empty when hi < lo.
    pub fn interval(lo: Index, hi: Index) -> Self {
        assert!(lo >= 1, "basis indices are 1-based");
        Self {
            elements: (lo..=hi).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, i: Index) -> bool {
        self.elements.contains(&i)
    }

    pub fn insert(&mut self, i: Index) -> bool {
        assert!(i >= 1, "basis indices are 1-based");
        self.elements.insert(i)
    }

    pub fn iter(&self) -> impl Iterator<Item = Index> + '_ {
        self.elements.iter().copied()
    }

    pub fn max(&self) -> Option<Index> {
        self.elements.iter().next_back().copied()
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        Self {
            elements: self.elements.union(&other.elements).copied().collect(),
        }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        Self {
            elements: self
                .elements
                .intersection(&other.elements)
                .copied()
                .collect(),
        }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        Self {
            elements: self
                .elements
                .difference(&other.elements)
                .copied()
                .collect(),
        }
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.elements.is_disjoint(&other.elements)
    }

    pub fn to_vec(&self) -> Vec<Index> {
        self.elements.iter().copied().collect()
    }
}

impl FromIterator<Index> for IndexSet {
    fn from_iter<T: IntoIterator<Item = Index>>(iter: T) -> Self {
        let elements: BTreeSet<Index> = iter.into_iter().collect();
        assert!(
            !elements.contains(&0),
            "basis indices are 1-based"
        );
        Self { elements }
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.elements.len()))?;
        for i in self.iter() {
            seq.serialize_element(&i)?;
        }
        seq.end()
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.iter().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

/// Indicator vector 1_A with unit coefficient at every index of `set`.
pub fn indicator(set: &IndexSet) -> SparseVector {
    SparseVector::from_real_entries(set.iter().map(|i| (i, 1.0)))
}

/// Decreasing rearrangement of coefficient magnitudes, with the permutation
/// that realizes it. Ties are broken by ascending index, so the order is
/// canonical.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rearrangement {
    /// Magnitudes |a_{π(1)}| ≥ |a_{π(2)}| ≥ ...
    pub magnitudes: Vec<f64>,
    /// The permutation π as the list of indices in selection order.
    pub order: Vec<Index>,
}

impl Rearrangement {
    /// k-th largest magnitude (1-based); zero beyond the support.
    pub fn magnitude(&self, k: usize) -> f64 {
        if k >= 1 && k <= self.magnitudes.len() {
            self.magnitudes[k - 1]
        } else {
            0.0
        }
    }
}

/// Sort the coefficients of `x` by nonincreasing magnitude, ties by ascending
/// index. Magnitude comparison is exact floating comparison.
pub fn rearrangement(x: &SparseVector) -> Rearrangement {
    let mut items: Vec<(Index, f64)> = x.iter().map(|(i, v)| (i, v.norm())).collect();
    items.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then(a.0.cmp(&b.0)));
    Rearrangement {
        magnitudes: items.iter().map(|&(_, m)| m).collect(),
        order: items.iter().map(|&(i, _)| i).collect(),
    }
}
