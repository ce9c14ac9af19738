//! Path decompositions of labeled digraphs and the Stirling function `S_G`.
//!
//! A *principal* decomposition partitions the edge set into directed paths
//! along which edge labels strictly increase, with the extra constraint that
//! two edges of one block never share a path. `S_G(I)` counts principal
//! decompositions whose multiset of path sources is exactly `I`; it is
//! computed here by two independent routes:
//!
//! * [`stirling_count`] - exhaustive backtracking over label order, where each
//!   edge either opens a new path or extends an open path ending at its tail;
//! * [`stirling_recurrence`] - peeling the maximum-label edge `e = (i, j)` of
//!   the last block: `S_G(I) = S_{G-e}(I - {i}) + (k_i - r_e) S_{G-e}(I)`,
//!   where `k_i` counts `i` in `(J - {j}) (+) {i}` and `r_e` counts the other
//!   last-block edges with head `i`. Memoized on (label prefix, sources),
//!   since the peeled graph is always a label-prefix subgraph.
//!
//! [`enumerate_all_decompositions`] drops the increasing-label constraint
//! (keeping walks) and underlies the shuffle formula for the symmetrized
//! characteristic; it is restricted to graphs with singleton blocks.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::digraph::LabeledDigraph;
use crate::multiset::VertexMultiset;
use crate::shuffle::ChainFamily;
use crate::{Error, Result};

/// A directed path recorded as a nonempty sequence of edge labels.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    labels: Vec<u32>,
}

impl Path {
    /// Validates that the labels form a walk in `g` (head of each edge equals
    /// the tail of the next) without repeated labels.
    pub fn new(labels: Vec<u32>, g: &LabeledDigraph) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::Invalid("empty path".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for &l in &labels {
            g.edge(l)?;
            if !seen.insert(l) {
                return Err(Error::Invalid(format!("label {l} repeated in path")));
            }
        }
        for w in labels.windows(2) {
            let a = g.edge(w[0])?;
            let b = g.edge(w[1])?;
            if a.head != b.tail {
                return Err(Error::Invalid(format!(
                    "labels {} and {} are not walk-connected",
                    w[0], w[1]
                )));
            }
        }
        Ok(Self { labels })
    }

    fn from_labels(labels: Vec<u32>) -> Self {
        Self { labels }
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // a path is nonempty by construction
    }

    pub fn min_label(&self) -> u32 {
        *self.labels.iter().min().expect("path is nonempty")
    }

    /// Labels strictly increase along the path.
    pub fn is_increasing(&self) -> bool {
        self.labels.windows(2).all(|w| w[0] < w[1])
    }

    /// Tail of the first edge.
    pub fn source(&self, g: &LabeledDigraph) -> u32 {
        g.edge(self.labels[0]).expect("label valid").tail
    }

    /// Head of the last edge.
    pub fn sink(&self, g: &LabeledDigraph) -> u32 {
        g.edge(*self.labels.last().expect("path is nonempty"))
            .expect("label valid")
            .head
    }
}

/// A partition of the edge set into paths. Canonical form: paths sorted by
/// their smallest contained label, which makes the unordered collection
/// comparable; decompositions order lexicographically on that form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Decomposition {
    paths: Vec<Path>,
}

impl Decomposition {
    /// Validates the partition, the walk property of every path, and the
    /// block constraint (no two labels of one block in the same path).
    pub fn new(paths: Vec<Vec<u32>>, g: &LabeledDigraph) -> Result<Self> {
        let mut all: Vec<u32> = paths.iter().flatten().copied().collect();
        all.sort_unstable();
        let expected: Vec<u32> = (1..=g.edge_count() as u32).collect();
        if all != expected {
            return Err(Error::Invalid(
                "paths do not partition the label set".into(),
            ));
        }
        let mut validated = Vec::with_capacity(paths.len());
        for labels in paths {
            let mut blocks_used = std::collections::HashSet::new();
            for &l in &labels {
                if !blocks_used.insert(g.block_of_index(l as usize - 1)) {
                    return Err(Error::Invalid(format!(
                        "two labels of one block share the path containing {l}"
                    )));
                }
            }
            validated.push(Path::new(labels, g)?);
        }
        Ok(Self::from_paths(validated))
    }

    fn from_paths(mut paths: Vec<Path>) -> Self {
        paths.sort_by_key(|p| p.min_label());
        Self { paths }
    }

    pub fn paths(&self) -> &[Path] {
        &self.paths
    }

    pub fn path_count(&self) -> usize {
        self.paths.len()
    }

    /// Multiset of first-edge tails.
    pub fn sources(&self, g: &LabeledDigraph) -> VertexMultiset {
        VertexMultiset::from_elements(self.paths.iter().map(|p| p.source(g)))
    }

    /// Multiset of last-edge heads.
    pub fn sinks(&self, g: &LabeledDigraph) -> VertexMultiset {
        VertexMultiset::from_elements(self.paths.iter().map(|p| p.sink(g)))
    }

    /// All paths strictly increasing.
    pub fn is_principal(&self) -> bool {
        self.paths.iter().all(|p| p.is_increasing())
    }

    /// The paths as a chain family over the full label set, for signed
    /// shuffle sums.
    pub fn chain_family(&self) -> ChainFamily {
        ChainFamily::new(self.paths.iter().map(|p| p.labels.clone()).collect())
            .expect("decomposition paths partition 1..=m")
    }
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.paths.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, p) in self.paths.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            for (k, l) in p.labels().iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "e{l}")?;
            }
        }
        Ok(())
    }
}

struct OpenPath {
    labels: Vec<u32>,
    endpoint: u32,
    blocks: u128,
}

/// Enumerates every principal decomposition of `g` exactly once, in
/// lexicographic order of canonical forms.
///
/// Edges are processed in label order; each either opens a new path or
/// extends an open path whose endpoint matches its tail and which does not
/// yet contain a label of its block. Distinct choice sequences yield distinct
/// decompositions, so no deduplication is needed.
pub fn enumerate_principal(g: &LabeledDigraph) -> Vec<Decomposition> {
    let m = g.edge_count();
    assert!(
        g.blocks().len() <= 128,
        "block mask limited to 128 blocks (enumeration is infeasible far earlier)"
    );
    let block_id: Vec<usize> = (0..m).map(|idx| g.block_of_index(idx)).collect();
    let mut open: Vec<OpenPath> = Vec::new();
    let mut out: Vec<Decomposition> = Vec::new();

    fn rec(
        g: &LabeledDigraph,
        block_id: &[usize],
        idx: usize,
        open: &mut Vec<OpenPath>,
        out: &mut Vec<Decomposition>,
    ) {
        let m = g.edge_count();
        if idx == m {
            let paths = open
                .iter()
                .map(|p| Path::from_labels(p.labels.clone()))
                .collect();
            // Paths are created in order of their first (= smallest) label,
            // so this is already canonical.
            out.push(Decomposition { paths });
            return;
        }
        let e = g.edges()[idx];
        let bit = 1u128 << block_id[idx];
        for p in 0..open.len() {
            if open[p].endpoint == e.tail && open[p].blocks & bit == 0 {
                let saved_endpoint = open[p].endpoint;
                open[p].labels.push(idx as u32 + 1);
                open[p].endpoint = e.head;
                open[p].blocks |= bit;
                rec(g, block_id, idx + 1, open, out);
                open[p].labels.pop();
                open[p].endpoint = saved_endpoint;
                open[p].blocks &= !bit;
            }
        }
        open.push(OpenPath {
            labels: vec![idx as u32 + 1],
            endpoint: e.head,
            blocks: bit,
        });
        rec(g, block_id, idx + 1, open, out);
        open.pop();
    }

    rec(g, &block_id, 0, &mut open, &mut out);
    out.sort();
    out
}

/// `S_G(I)` by exhaustive enumeration: the number of principal decompositions
/// with source multiset exactly `i`. Zero when `i` is not a sub-multiset of
/// `V_out`. Branches that have already opened more paths at some vertex than
/// `i` allows are pruned.
pub fn stirling_count(g: &LabeledDigraph, i: &VertexMultiset) -> BigUint {
    let m = g.edge_count();
    assert!(g.blocks().len() <= 128, "block mask limited to 128 blocks");
    if !g.out_multiset().contains(i) {
        return BigUint::zero();
    }
    let block_id: Vec<usize> = (0..m).map(|idx| g.block_of_index(idx)).collect();

    struct State<'a> {
        g: &'a LabeledDigraph,
        block_id: Vec<usize>,
        target: &'a VertexMultiset,
        endpoints: Vec<(u32, u128)>, // (endpoint, blocks) per open path
        opened: VertexMultiset,
        count: BigUint,
    }
    fn rec(s: &mut State, idx: usize) {
        if idx == s.g.edge_count() {
            if s.opened == *s.target {
                s.count += BigUint::one();
            }
            return;
        }
        let e = s.g.edges()[idx];
        let bit = 1u128 << s.block_id[idx];
        for p in 0..s.endpoints.len() {
            if s.endpoints[p].0 == e.tail && s.endpoints[p].1 & bit == 0 {
                let saved = s.endpoints[p];
                s.endpoints[p] = (e.head, saved.1 | bit);
                rec(s, idx + 1);
                s.endpoints[p] = saved;
            }
        }
        if s.opened.count(e.tail) < s.target.count(e.tail) {
            s.opened.insert(e.tail);
            s.endpoints.push((e.head, bit));
            rec(s, idx + 1);
            s.endpoints.pop();
            s.opened = s.opened.remove_one(e.tail);
        }
    }

    let mut state = State {
        g,
        block_id,
        target: i,
        endpoints: Vec::new(),
        opened: VertexMultiset::new(),
        count: BigUint::zero(),
    };
    rec(&mut state, 0);
    state.count
}

/// Shared memoized evaluator for the peel-the-last-edge recurrence. All
/// queries against one graph reuse the `(prefix length, sources)` memo.
struct StirlingRecurrence<'g> {
    g: &'g LabeledDigraph,
    /// Per prefix length `k`: out/in degree of each vertex (index `v-1`)
    /// within the first `k` edges.
    out_pref: Vec<Vec<u64>>,
    in_pref: Vec<Vec<u64>>,
    /// `r_e` for the prefix of length `k` (index `k-1`): edges before `e` in
    /// `e`'s block whose head equals `tail(e)`, where `e` is edge `k`.
    r_last: Vec<u64>,
    memo: HashMap<(usize, VertexMultiset), BigUint>,
}

impl<'g> StirlingRecurrence<'g> {
    fn new(g: &'g LabeledDigraph) -> Self {
        let n = g.vertex_count() as usize;
        let m = g.edge_count();
        let mut out_pref = vec![vec![0u64; n]; m + 1];
        let mut in_pref = vec![vec![0u64; n]; m + 1];
        for k in 1..=m {
            out_pref[k] = out_pref[k - 1].clone();
            in_pref[k] = in_pref[k - 1].clone();
            let e = g.edges()[k - 1];
            out_pref[k][e.tail as usize - 1] += 1;
            in_pref[k][e.head as usize - 1] += 1;
        }
        let r_last = (0..m)
            .map(|idx| {
                let e = g.edges()[idx];
                let block = &g.blocks()[g.block_of_index(idx)];
                (block.start..idx)
                    .filter(|&u| g.edges()[u].head == e.tail)
                    .count() as u64
            })
            .collect();
        Self {
            g,
            out_pref,
            in_pref,
            r_last,
            memo: HashMap::new(),
        }
    }

    fn eval(&mut self, k: usize, i: &VertexMultiset) -> BigUint {
        if k == 0 {
            return if i.is_empty() {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        let key = (k, i.clone());
        if let Some(v) = self.memo.get(&key) {
            return v.clone();
        }
        let n = self.g.vertex_count();
        let e = self.g.edges()[k - 1];

        // Sinks forced by the sources: J(v) = in(v) + I(v) - out(v). Any
        // negative count, or a missing copy of head(e), means no
        // decomposition: the maximum-label edge always ends its path.
        let mut feasible = true;
        for v in 1..=n {
            let have = self.in_pref[k][v as usize - 1] + i.count(v);
            if have < self.out_pref[k][v as usize - 1] {
                feasible = false;
                break;
            }
        }
        let j_at = |this: &Self, v: u32| {
            this.in_pref[k][v as usize - 1] + i.count(v) - this.out_pref[k][v as usize - 1]
        };
        let result = if !feasible || j_at(self, e.head) == 0 {
            BigUint::zero()
        } else {
            // k_i: copies of tail(e) in (J - {head}) (+) {tail}.
            let j_tail = j_at(self, e.tail);
            let k_i = j_tail - u64::from(e.is_loop()) + 1;
            let r_e = self.r_last[k - 1];
            let same_sources = self.eval(k - 1, i);
            let mut total = if k_i >= r_e {
                same_sources * BigUint::from(k_i - r_e)
            } else {
                debug_assert!(same_sources.is_zero());
                BigUint::zero()
            };
            if i.count(e.tail) > 0 {
                total += self.eval(k - 1, &i.remove_one(e.tail));
            }
            total
        };
        self.memo.insert(key, result.clone());
        result
    }
}

/// `S_G(I)` by the recurrence of the peel-the-last-edge route. Equals
/// [`stirling_count`] for every graph and every `i`.
pub fn stirling_recurrence(g: &LabeledDigraph, i: &VertexMultiset) -> BigUint {
    StirlingRecurrence::new(g).eval(g.edge_count(), i)
}

/// The full Stirling table of a graph: every source multiset realized by some
/// principal decomposition, with its count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StirlingTable {
    v_out: VertexMultiset,
    v_in: VertexMultiset,
    rows: BTreeMap<VertexMultiset, BigUint>,
}

impl StirlingTable {
    /// Count for `i` (zero when absent).
    pub fn get(&self, i: &VertexMultiset) -> BigUint {
        self.rows.get(i).cloned().unwrap_or_else(BigUint::zero)
    }

    /// Rows `(I, S_G(I))` with positive counts, in canonical source order.
    pub fn rows(&self) -> impl Iterator<Item = (&VertexMultiset, &BigUint)> {
        self.rows.iter()
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Sinks forced by sources `i` for the underlying graph.
    pub fn sinks_for(&self, i: &VertexMultiset) -> VertexMultiset {
        self.v_in.merge(i).difference(&self.v_out)
    }
}

/// Computes the Stirling table by sweeping the recurrence over all
/// sub-multisets of `V_out` with a shared memo.
pub fn stirling_table(g: &LabeledDigraph) -> StirlingTable {
    let mut ctx = StirlingRecurrence::new(g);
    let m = g.edge_count();
    let v_out = g.out_multiset();
    let mut rows = BTreeMap::new();
    for i in v_out.sub_multisets() {
        let s = ctx.eval(m, &i);
        if !s.is_zero() {
            rows.insert(i, s);
        }
    }
    StirlingTable {
        v_out,
        v_in: g.in_multiset(),
        rows,
    }
}

/// Enumerates every decomposition of `g` into edge-disjoint walks (the
/// increasing-label constraint is dropped) whose source multiset is exactly
/// `i`, each once, in canonical order. Only graphs whose blocks are all
/// singletons are supported.
///
/// A decomposition is identified with its successor assignment: each edge
/// either ends its path or is followed by a unique edge whose tail is its
/// head; chains must stay acyclic. Backtracking assigns successors in label
/// order; a branch is pruned when the remaining chain starts can no longer
/// cover `i`.
pub fn enumerate_all_decompositions(
    g: &LabeledDigraph,
    i: &VertexMultiset,
) -> Result<Vec<Decomposition>> {
    if g.has_nontrivial_blocks() {
        return Err(Error::BlocksUnsupported);
    }
    let m = g.edge_count();
    if m == 0 {
        return Ok(if i.is_empty() {
            vec![Decomposition { paths: Vec::new() }]
        } else {
            Vec::new()
        });
    }

    struct State<'a> {
        g: &'a LabeledDigraph,
        target: &'a VertexMultiset,
        succ: Vec<Option<usize>>,
        has_pred: Vec<bool>,
        start_of: Vec<usize>, // valid at chain ends
        end_of: Vec<usize>,   // valid at chain starts
        start_tails: Vec<u64>,
        out: Vec<Decomposition>,
    }

    fn emit(s: &mut State) {
        let mut sources = VertexMultiset::new();
        for e in 0..s.succ.len() {
            if !s.has_pred[e] {
                sources.insert(s.g.edges()[e].tail);
            }
        }
        if sources != *s.target {
            return;
        }
        let mut paths = Vec::new();
        for e in 0..s.succ.len() {
            if s.has_pred[e] {
                continue;
            }
            let mut labels = Vec::new();
            let mut cur = Some(e);
            while let Some(c) = cur {
                labels.push(c as u32 + 1);
                cur = s.succ[c];
            }
            paths.push(Path::from_labels(labels));
        }
        s.out.push(Decomposition::from_paths(paths));
    }

    fn rec(s: &mut State, e: usize) {
        let m = s.succ.len();
        if e == m {
            emit(s);
            return;
        }
        let head = s.g.edges()[e].head;
        // End the chain at e.
        rec(s, e + 1);
        // Or join e to a chain start f with matching tail, avoiding cycles
        // (f being the start of e's own chain would close one).
        for f in 0..m {
            if s.has_pred[f] || s.g.edges()[f].tail != head || s.start_of[e] == f {
                continue;
            }
            let f_tail = s.g.edges()[f].tail;
            // Joining consumes the start at f; prune if i still needs it.
            if s.start_tails[f_tail as usize - 1] <= s.target.count(f_tail) {
                continue;
            }
            let chain_start = s.start_of[e];
            let chain_end = s.end_of[f];
            s.succ[e] = Some(f);
            s.has_pred[f] = true;
            s.start_of[chain_end] = chain_start;
            s.end_of[chain_start] = chain_end;
            s.start_tails[f_tail as usize - 1] -= 1;
            rec(s, e + 1);
            s.start_tails[f_tail as usize - 1] += 1;
            s.end_of[chain_start] = e;
            s.start_of[chain_end] = f;
            s.has_pred[f] = false;
            s.succ[e] = None;
        }
    }

    let mut start_tails = vec![0u64; g.vertex_count() as usize];
    for e in g.edges() {
        start_tails[e.tail as usize - 1] += 1;
    }
    // If even the all-singleton split cannot reach i, nothing can.
    for (v, k) in i.iter_counts() {
        if start_tails[v as usize - 1] < k {
            return Ok(Vec::new());
        }
    }
    let mut state = State {
        g,
        target: i,
        succ: vec![None; m],
        has_pred: vec![false; m],
        start_of: (0..m).collect(),
        end_of: (0..m).collect(),
        start_tails,
        out: Vec::new(),
    };
    rec(&mut state, 0);
    let mut out = state.out;
    out.sort();
    Ok(out)
}
