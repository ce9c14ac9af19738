//! The `n`-th Weyl algebra with integer coefficients.
//!
//! Monomials are normally ordered powers `x^alpha d^beta` (all `x` factors to
//! the left of all `d` factors); elements are finite integer combinations of
//! monomials, kept canonical (no zero coefficients, terms ordered
//! lexicographically on `(alpha, beta)`).
//!
//! Products are computed by the closed-form pair rule
//!
//! ```text
//! d^beta x^gamma = sum_k  prod_i C(beta_i, k_i) C(gamma_i, k_i) k_i!
//!                         x^(gamma - k) d^(beta - k)
//! ```
//!
//! whose correctness is anchored by the elementary rewriting engine in
//! [`rewrite`], which applies the defining relation `d_i x_j = x_j d_i +
//! delta_ij` one swap at a time. [`graph_expand`] computes products of
//! length-0 monomials a third way, through Stirling tables of the block
//! digraph, and must agree with [`normal_order_product`] exactly.
//!
//! # Text syntax
//!
//! `2 x1 x2 d2 d1 + x4 d2` - terms separated by `+`/`-`, each an optional
//! integer coefficient followed by whitespace-separated factors `x<i>` and
//! `d<i>` with optional exponents (`x1^2`). Canonical printing uses ascending
//! variable indices, `x` factors before `d` factors, exponent syntax for
//! powers, and ascending term order; parse of a canonical string prints back
//! identically.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

use crate::decomp::StirlingTable;
use crate::digraph::{Edge, LabeledDigraph};
use crate::multiset::VertexMultiset;
use crate::shuffle::binomial;
use crate::{Error, Result};

/// A normally ordered monomial `x^alpha d^beta` in `n` variables.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeylMonomial {
    alpha: Vec<u32>,
    beta: Vec<u32>,
}

impl WeylMonomial {
    pub fn new(alpha: Vec<u32>, beta: Vec<u32>) -> Result<Self> {
        if alpha.len() != beta.len() {
            return Err(Error::DimensionMismatch {
                expected: alpha.len(),
                found: beta.len(),
            });
        }
        Ok(Self { alpha, beta })
    }

    /// The identity monomial (all exponents zero).
    pub fn one(n: usize) -> Self {
        Self {
            alpha: vec![0; n],
            beta: vec![0; n],
        }
    }

    /// The basis monomial `x_i d_j` of the span of first-order pairs.
    pub fn xd(n: usize, i: u32, j: u32) -> Result<Self> {
        if i == 0 || i as usize > n || j == 0 || j as usize > n {
            return Err(Error::Invalid(format!("indices ({i}, {j}) outside 1..={n}")));
        }
        let mut alpha = vec![0; n];
        let mut beta = vec![0; n];
        alpha[i as usize - 1] = 1;
        beta[j as usize - 1] = 1;
        Ok(Self { alpha, beta })
    }

    /// Monomial given by lists of `x` indices and `d` indices (1-based,
    /// repetition allowed).
    pub fn from_indices(n: usize, xs: &[u32], ds: &[u32]) -> Result<Self> {
        let mut alpha = vec![0; n];
        let mut beta = vec![0; n];
        for &i in xs {
            if i == 0 || i as usize > n {
                return Err(Error::Invalid(format!("x index {i} outside 1..={n}")));
            }
            alpha[i as usize - 1] += 1;
        }
        for &j in ds {
            if j == 0 || j as usize > n {
                return Err(Error::Invalid(format!("d index {j} outside 1..={n}")));
            }
            beta[j as usize - 1] += 1;
        }
        Ok(Self { alpha, beta })
    }

    pub fn dimension(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self) -> &[u32] {
        &self.alpha
    }

    pub fn beta(&self) -> &[u32] {
        &self.beta
    }

    /// Total `x` degree `|alpha|`.
    pub fn x_degree(&self) -> u64 {
        self.alpha.iter().map(|&a| a as u64).sum()
    }

    /// Total `d` degree `|beta|`; this is the order of the monomial.
    pub fn order(&self) -> u64 {
        self.beta.iter().map(|&b| b as u64).sum()
    }

    /// Length `sum_i (alpha_i - beta_i)`.
    pub fn length(&self) -> i64 {
        self.x_degree() as i64 - self.order() as i64
    }

    /// Weight `(alpha_1 - beta_1, ..., alpha_n - beta_n)`.
    pub fn weight(&self) -> Vec<i64> {
        self.alpha
            .iter()
            .zip(&self.beta)
            .map(|(&a, &b)| a as i64 - b as i64)
            .collect()
    }

    /// Membership in the bidegree slice `|alpha| = p, |beta| = q`.
    pub fn is_in_pq(&self, p: u64, q: u64) -> bool {
        self.x_degree() == p && self.order() == q
    }

    /// Membership in the length-0 subalgebra (`|alpha| = |beta|`).
    pub fn is_length_zero(&self) -> bool {
        self.length() == 0
    }

    /// If this is a basis monomial `x_i d_j`, returns `(i, j)`.
    pub fn as_basis_pair(&self) -> Option<(u32, u32)> {
        if self.x_degree() != 1 || self.order() != 1 {
            return None;
        }
        let i = self.alpha.iter().position(|&a| a == 1)? as u32 + 1;
        let j = self.beta.iter().position(|&b| b == 1)? as u32 + 1;
        Some((i, j))
    }

    /// Parses a single monomial: whitespace-separated factors `x<i>`/`d<i>`
    /// with optional `^<e>`; no coefficient, no `+`/`-`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut alpha = vec![0u32; n];
        let mut beta = vec![0u32; n];
        let mut any = false;
        for token in text.split_whitespace() {
            if token == "1" && !any {
                any = true;
                continue;
            }
            let (idx, exp, is_x) = parse_factor(token, n)?;
            any = true;
            if is_x {
                alpha[idx - 1] += exp;
            } else {
                beta[idx - 1] += exp;
            }
        }
        if !any {
            return Err(Error::Parse {
                line: 1,
                msg: "empty monomial".into(),
            });
        }
        Ok(Self { alpha, beta })
    }
}

impl fmt::Display for WeylMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, &a) in self.alpha.iter().enumerate() {
            if a > 0 {
                if wrote {
                    write!(f, " ")?;
                }
                write!(f, "x{}", i + 1)?;
                if a > 1 {
                    write!(f, "^{a}")?;
                }
                wrote = true;
            }
        }
        for (j, &b) in self.beta.iter().enumerate() {
            if b > 0 {
                if wrote {
                    write!(f, " ")?;
                }
                write!(f, "d{}", j + 1)?;
                if b > 1 {
                    write!(f, "^{b}")?;
                }
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        Ok(())
    }
}

/// A finite integer combination of normally ordered monomials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeylElement {
    n: usize,
    terms: BTreeMap<WeylMonomial, BigInt>,
}

impl WeylElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_monomial(m: WeylMonomial) -> Self {
        let n = m.dimension();
        let mut terms = BTreeMap::new();
        terms.insert(m, BigInt::one());
        Self { n, terms }
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical (lexicographic) order.
    pub fn terms(&self) -> impl Iterator<Item = (&WeylMonomial, &BigInt)> {
        self.terms.iter()
    }

    /// Coefficient of a monomial (zero when absent).
    pub fn coefficient(&self, m: &WeylMonomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Order: maximal `|beta|` over stored terms; `None` for the zero element.
    pub fn order(&self) -> Option<u64> {
        self.terms.keys().map(|m| m.order()).max()
    }

    /// Adds `coeff * m`, keeping the representation canonical.
    pub fn add_term(&mut self, m: WeylMonomial, coeff: BigInt) {
        debug_assert_eq!(m.dimension(), self.n);
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_dim(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        let mut out = Self::zero(self.n);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * k);
        }
        out
    }

    fn check_dim(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        Ok(())
    }

    /// Parses the element syntax described in the module docs.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut out = Self::zero(n);
        for (sign, term_tokens) in split_terms(text)? {
            let mut coeff: Option<BigInt> = None;
            let mut alpha = vec![0u32; n];
            let mut beta = vec![0u32; n];
            let mut saw_factor = false;
            for token in term_tokens {
                if token.chars().next().is_some_and(|c| c.is_ascii_digit()) {
                    if coeff.is_some() || saw_factor {
                        return Err(Error::Parse {
                            line: 1,
                            msg: format!("unexpected integer {token:?} inside a term"),
                        });
                    }
                    coeff = Some(token.parse().map_err(|_| Error::Parse {
                        line: 1,
                        msg: format!("bad integer {token:?}"),
                    })?);
                    continue;
                }
                let (idx, exp, is_x) = parse_factor(&token, n)?;
                saw_factor = true;
                if is_x {
                    alpha[idx - 1] += exp;
                } else {
                    beta[idx - 1] += exp;
                }
            }
            let c = coeff.unwrap_or_else(BigInt::one) * BigInt::from(sign);
            out.add_term(WeylMonomial { alpha, beta }, c);
        }
        Ok(out)
    }
}

/// Splits an element string into signed term token groups.
fn split_terms(text: &str) -> Result<Vec<(i32, Vec<String>)>> {
    let mut tokens: Vec<String> = text.split_whitespace().map(str::to_owned).collect();
    if tokens.is_empty() {
        return Err(Error::Parse {
            line: 1,
            msg: "empty element".into(),
        });
    }
    // A sign glued to the very first token ("-3", "-x1") acts as a leading sign.
    if tokens[0].len() > 1 && (tokens[0].starts_with('-') || tokens[0].starts_with('+')) {
        let head = tokens[0].clone();
        tokens[0] = head[..1].to_owned();
        tokens.insert(1, head[1..].to_owned());
    }
    let mut terms = Vec::new();
    let mut pos = 0;
    let mut first = true;
    while pos < tokens.len() {
        let mut sign = 1i32;
        if tokens[pos] == "+" || tokens[pos] == "-" {
            sign = if tokens[pos] == "-" { -1 } else { 1 };
            pos += 1;
        } else if !first {
            return Err(Error::Parse {
                line: 1,
                msg: format!("expected + or - before {:?}", tokens[pos]),
            });
        }
        let start = pos;
        while pos < tokens.len() && tokens[pos] != "+" && tokens[pos] != "-" {
            pos += 1;
        }
        if start == pos {
            return Err(Error::Parse {
                line: 1,
                msg: "empty term".into(),
            });
        }
        terms.push((sign, tokens[start..pos].to_vec()));
        first = false;
    }
    Ok(terms)
}

fn parse_factor(token: &str, n: usize) -> Result<(usize, u32, bool)> {
    let err = |msg: String| Error::Parse { line: 1, msg };
    let is_x = match token.chars().next() {
        Some('x') => true,
        Some('d') => false,
        _ => {
            return Err(err(format!(
                "expected factor like x1 or d2, found {token:?}"
            )))
        }
    };
    let rest = &token[1..];
    let (idx_str, exp) = match rest.split_once('^') {
        Some((i, e)) => {
            let exp: u32 = e
                .parse()
                .map_err(|_| err(format!("bad exponent in {token:?}")))?;
            if exp == 0 {
                return Err(err(format!("zero exponent in {token:?}")));
            }
            (i, exp)
        }
        None => (rest, 1),
    };
    let idx: usize = idx_str
        .parse()
        .map_err(|_| err(format!("bad variable index in {token:?}")))?;
    if idx == 0 || idx > n {
        return Err(err(format!("variable index {idx} outside 1..={n}")));
    }
    Ok((idx, exp, is_x))
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let magnitude = c.abs();
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let constant = m.x_degree() == 0 && m.order() == 0;
            if !magnitude.is_one() || constant {
                write!(f, "{magnitude}")?;
                if !constant {
                    write!(f, " ")?;
                }
            }
            if !constant {
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

fn factorial(k: u32) -> BigUint {
    (1..=k as u64).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// The normally ordered product, by the closed-form pair rule.
pub fn multiply(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            found: b.n,
        });
    }
    let n = a.n;
    let mut out = WeylElement::zero(n);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let beta = &ma.beta;
            let gamma = &mb.alpha;
            let limits: Vec<u32> = (0..n).map(|i| beta[i].min(gamma[i])).collect();
            let mut k = vec![0u32; n];
            loop {
                let mut coeff = BigUint::one();
                for i in 0..n {
                    if k[i] > 0 {
                        coeff *= binomial(beta[i] as u64, k[i] as u64)
                            * binomial(gamma[i] as u64, k[i] as u64)
                            * factorial(k[i]);
                    }
                }
                let alpha: Vec<u32> = (0..n).map(|i| ma.alpha[i] + gamma[i] - k[i]).collect();
                let delta: Vec<u32> = (0..n).map(|i| beta[i] + mb.beta[i] - k[i]).collect();
                out.add_term(
                    WeylMonomial { alpha, beta: delta },
                    ca * cb * BigInt::from(coeff),
                );
                let mut pos = 0;
                while pos < n {
                    k[pos] += 1;
                    if k[pos] <= limits[pos] {
                        break;
                    }
                    k[pos] = 0;
                    pos += 1;
                }
                if pos == n {
                    break;
                }
            }
        }
    }
    Ok(out)
}

/// Left fold of [`multiply`] over a nonempty monomial sequence.
pub fn normal_order_product(ws: &[WeylMonomial]) -> Result<WeylElement> {
    let first = ws
        .first()
        .ok_or_else(|| Error::Invalid("empty product".into()))?;
    let n = first.dimension();
    let mut acc = WeylElement::from_monomial(first.clone());
    for w in &ws[1..] {
        if w.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.dimension(),
            });
        }
        acc = multiply(&acc, &WeylElement::from_monomial(w.clone()))?;
    }
    Ok(acc)
}

/// The block of edges representing a length-0 monomial: the s-th smallest
/// `x` index paired with the s-th largest `d` index. Any pairing yields the
/// same graph expansion; this one is the fixed canonical choice.
pub fn block_of(w: &WeylMonomial) -> Result<Vec<Edge>> {
    block_of_with_pairing(w, None)
}

/// [`block_of`] with an explicit pairing permutation of the `d` index list
/// (1-based images over the block size); exercises pairing independence.
pub fn block_of_with_pairing(w: &WeylMonomial, pairing: Option<&[u32]>) -> Result<Vec<Edge>> {
    if !w.is_length_zero() {
        return Err(Error::NotLengthZero);
    }
    let mut xs = Vec::new();
    let mut ds = Vec::new();
    for (i, &a) in w.alpha.iter().enumerate() {
        xs.extend(std::iter::repeat(i as u32 + 1).take(a as usize));
    }
    for (j, &b) in w.beta.iter().enumerate() {
        ds.extend(std::iter::repeat(j as u32 + 1).take(b as usize));
    }
    ds.reverse(); // canonical: descending d indices
    let p = xs.len();
    match pairing {
        None => Ok(xs
            .into_iter()
            .zip(ds)
            .map(|(i, j)| Edge::new(i, j))
            .collect()),
        Some(images) => {
            if images.len() != p {
                return Err(Error::SizeMismatch {
                    expected: p,
                    found: images.len(),
                });
            }
            Ok((0..p)
                .map(|s| Edge::new(xs[s], ds[images[s] as usize - 1]))
                .collect())
        }
    }
}

/// Builds the block digraph of a sequence of length-0 monomials: one block
/// per monomial, labels increasing with block order, on `n` vertices.
/// Identity monomials contribute no edges.
pub fn block_digraph(ws: &[WeylMonomial]) -> Result<LabeledDigraph> {
    let first = ws
        .first()
        .ok_or_else(|| Error::Invalid("empty product".into()))?;
    let n = first.dimension();
    let mut edges = Vec::new();
    let mut sizes = Vec::new();
    for w in ws {
        if w.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.dimension(),
            });
        }
        let block = block_of(w)?;
        if block.is_empty() {
            continue;
        }
        sizes.push(block.len());
        edges.extend(block);
    }
    LabeledDigraph::with_block_sizes(n as u32, edges, &sizes)
}

/// Assembles `sum_I S_G(I) x^I d^J` from a Stirling table.
pub(crate) fn element_from_stirling_table(n: usize, table: &StirlingTable) -> WeylElement {
    let mut out = WeylElement::zero(n);
    for (i, s) in table.rows() {
        let j = table.sinks_for(i);
        out.add_term(
            monomial_from_multisets(n, i, &j),
            BigInt::from(s.clone()),
        );
    }
    out
}

/// The monomial `x^I d^J`.
pub(crate) fn monomial_from_multisets(
    n: usize,
    i: &VertexMultiset,
    j: &VertexMultiset,
) -> WeylMonomial {
    let mut alpha = vec![0u32; n];
    let mut beta = vec![0u32; n];
    for (v, k) in i.iter_counts() {
        alpha[v as usize - 1] = k as u32;
    }
    for (v, k) in j.iter_counts() {
        beta[v as usize - 1] = k as u32;
    }
    WeylMonomial { alpha, beta }
}

/// Expands the product of length-0 monomials through the Stirling table of
/// their block digraph:
///
/// ```text
/// w_1 ... w_m = sum_I S_G(I) x^I d^J,   J = V_in (+) I - V_out.
/// ```
///
/// Agrees with [`normal_order_product`] exactly.
pub fn graph_expand(ws: &[WeylMonomial]) -> Result<WeylElement> {
    let n = ws
        .first()
        .ok_or_else(|| Error::Invalid("empty product".into()))?
        .dimension();
    let g = block_digraph(ws)?;
    let table = crate::decomp::stirling_table(&g);
    Ok(element_from_stirling_table(n, &table))
}

pub mod rewrite {
    //! Reference products by elementary one-swap rewriting.
    //!
    //! Words over the generators are rewritten with `d_i x_j -> x_j d_i +
    //! delta_ij` until no `d` precedes an `x`, then collected into canonical
    //! monomials. Exponentially slower than the closed form; it exists to
    //! validate the closed form on small cases.

    use super::*;

    #[derive(Clone, Copy, PartialEq, Eq)]
    enum Gen {
        X(u32),
        D(u32),
    }

    fn word_of(m: &WeylMonomial) -> Vec<Gen> {
        let mut w = Vec::new();
        for (i, &a) in m.alpha().iter().enumerate() {
            w.extend(std::iter::repeat(Gen::X(i as u32 + 1)).take(a as usize));
        }
        for (j, &b) in m.beta().iter().enumerate() {
            w.extend(std::iter::repeat(Gen::D(j as u32 + 1)).take(b as usize));
        }
        w
    }

    /// Product of two elements by one-swap rewriting.
    pub fn product(a: &WeylElement, b: &WeylElement) -> Result<WeylElement> {
        if a.dimension() != b.dimension() {
            return Err(Error::DimensionMismatch {
                expected: a.dimension(),
                found: b.dimension(),
            });
        }
        let n = a.dimension();
        let mut out = WeylElement::zero(n);
        for (ma, ca) in a.terms() {
            for (mb, cb) in b.terms() {
                let mut word = word_of(ma);
                word.extend(word_of(mb));
                normalize(n, word, ca * cb, &mut out);
            }
        }
        Ok(out)
    }

    fn normalize(n: usize, word: Vec<Gen>, coeff: BigInt, out: &mut WeylElement) {
        let mut work = vec![(word, coeff)];
        while let Some((w, c)) = work.pop() {
            let swap_at = w
                .windows(2)
                .position(|pair| matches!((pair[0], pair[1]), (Gen::D(_), Gen::X(_))));
            match swap_at {
                None => {
                    let mut alpha = vec![0u32; n];
                    let mut beta = vec![0u32; n];
                    for g in &w {
                        match *g {
                            Gen::X(i) => alpha[i as usize - 1] += 1,
                            Gen::D(j) => beta[j as usize - 1] += 1,
                        }
                    }
                    out.add_term(WeylMonomial { alpha, beta }, c);
                }
                Some(p) => {
                    let (Gen::D(i), Gen::X(j)) = (w[p], w[p + 1]) else {
                        unreachable!()
                    };
                    let mut swapped = w.clone();
                    swapped.swap(p, p + 1);
                    if i == j {
                        let mut contracted = w;
                        contracted.drain(p..=p + 1);
                        work.push((contracted, c.clone()));
                    }
                    work.push((swapped, c));
                }
            }
        }
    }
}
