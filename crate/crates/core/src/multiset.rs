//! Multisets of vertex ids.
//!
//! Source and sink multisets of path decompositions, as well as the in/out
//! degree multisets `V_in`/`V_out` of a digraph, are all values of this type.
//! Difference is saturating: removing more copies than present yields zero
//! copies. Callers that need exact subtraction check [`VertexMultiset::contains`]
//! first.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

/// A finite multiset over vertex ids.
///
/// Zero multiplicities are never stored, so two multisets are equal exactly
/// when their stored maps are equal.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexMultiset {
    counts: BTreeMap<u32, u64>,
}

impl VertexMultiset {
    /// The empty multiset.
    pub fn new() -> Self {
        Self::default()
    }

    /// Multiset with the listed elements (repetitions allowed).
    pub fn from_elements<I: IntoIterator<Item = u32>>(elements: I) -> Self {
        let mut m = Self::new();
        for v in elements {
            m.insert(v);
        }
        m
    }

    /// Multiset from `(vertex, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_counts<I: IntoIterator<Item = (u32, u64)>>(pairs: I) -> Self {
        let mut m = Self::new();
        for (v, k) in pairs {
            m.insert_many(v, k);
        }
        m
    }

    /// `{v}`.
    pub fn singleton(v: u32) -> Self {
        Self::from_elements([v])
    }

    /// Adds one copy of `v`.
    pub fn insert(&mut self, v: u32) {
        *self.counts.entry(v).or_insert(0) += 1;
    }

    /// Adds `k` copies of `v`.
    pub fn insert_many(&mut self, v: u32, k: u64) {
        if k > 0 {
            *self.counts.entry(v).or_insert(0) += k;
        }
    }

    /// Multiplicity of `v`.
    pub fn count(&self, v: u32) -> u64 {
        self.counts.get(&v).copied().unwrap_or(0)
    }

    /// Total size (sum of multiplicities).
    pub fn len(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    /// `(vertex, multiplicity)` pairs in ascending vertex order.
    pub fn iter_counts(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.counts.iter().map(|(&v, &k)| (v, k))
    }

    /// Elements with repetition, ascending.
    pub fn elements(&self) -> impl Iterator<Item = u32> + '_ {
        self.counts
            .iter()
            .flat_map(|(&v, &k)| std::iter::repeat(v).take(k as usize))
    }

    /// Is `other` a sub-multiset of `self`?
    pub fn contains(&self, other: &Self) -> bool {
        other.iter_counts().all(|(v, k)| self.count(v) >= k)
    }

    /// Saturating difference: per vertex, `max(0, self - x)`.
    pub fn difference(&self, x: &Self) -> Self {
        let mut out = Self::new();
        for (v, k) in self.iter_counts() {
            let r = k.saturating_sub(x.count(v));
            out.insert_many(v, r);
        }
        out
    }

    /// Pointwise sum of multiplicities.
    pub fn merge(&self, x: &Self) -> Self {
        let mut out = self.clone();
        for (v, k) in x.iter_counts() {
            out.insert_many(v, k);
        }
        out
    }

    /// Removes one copy of `v` (saturating).
    pub fn remove_one(&self, v: u32) -> Self {
        self.difference(&Self::singleton(v))
    }

    /// Every sub-multiset of `self` (multiplicities range over `0..=count`),
    /// in ascending canonical order. The count is the product of
    /// `count(v) + 1` over the support.
    pub fn sub_multisets(&self) -> Vec<Self> {
        let support: Vec<(u32, u64)> = self.iter_counts().collect();
        let mut out = vec![Self::new()];
        for &(v, k) in &support {
            let mut next = Vec::with_capacity(out.len() * (k as usize + 1));
            for base in &out {
                for c in 0..=k {
                    let mut m = base.clone();
                    m.insert_many(v, c);
                    next.push(m);
                }
            }
            out = next;
        }
        out.sort();
        out
    }
}

/// Order: lexicographic on the multiplicity vector `(count(1), count(2), ...)`
/// with implicit zeros. This matches the term order used when multisets index
/// monomials `x^I`.
impl Ord for VertexMultiset {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.counts.iter().peekable();
        let mut b = other.counts.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                // The side whose next stored vertex is smaller has a positive
                // count where the other has zero.
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(&va, &ka)), Some(&(&vb, &kb))) => match va.cmp(&vb) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if ka != kb {
                            return ka.cmp(&kb);
                        }
                        a.next();
                        b.next();
                    }
                },
            }
        }
    }
}

impl PartialOrd for VertexMultiset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for VertexMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<u32> for VertexMultiset {
    fn from_iter<I: IntoIterator<Item = u32>>(iter: I) -> Self {
        Self::from_elements(iter)
    }
}
