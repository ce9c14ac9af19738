//! The symmetrized characteristic `E_G`, skew-symmetric polynomial evaluation,
//! and identity sweeps on the span of the basis monomials `x_i d_j`.
//!
//! `E_G(I)` is the signed sum of Stirling counts over all `m!` edge
//! relabelings. Three routes compute it:
//!
//! * [`eg_symmetrization`] - the literal signed sum over relabelings
//!   (factorial budget, the independent oracle);
//! * [`eg_decomposition`] - sum of signed shuffle counts `E(P)` over all
//!   (not necessarily increasing) decompositions with the given sources;
//! * [`eg_table`] - the same decomposition sum with the shuffle signs
//!   distributed through one dynamic program over (edge subset, sources
//!   so far), producing the whole table at once. This is the route the
//!   sweeps use; the other two fence it in the tests.
//!
//! Evaluating the standard skew-symmetric polynomial
//! `s_m(w_1, ..., w_m) = sum_sigma sgn(sigma) w_sigma(1) ... w_sigma(m)` on
//! basis monomials reduces to `sum_I E_G(I) x^I d^J` over the edge graph of
//! the arguments; [`identity_check`] sweeps all unordered argument subsets
//! (duplicates vanish by alternation, order only flips the sign) to certify
//! or refute `s_m = 0` on the whole span.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::decomp::{enumerate_all_decompositions, stirling_recurrence, stirling_table};
use crate::digraph::{Edge, LabeledDigraph};
use crate::multiset::VertexMultiset;
use crate::perm::for_each_permutation;
use crate::shuffle::{binomial, signed_shuffle_sum};
use crate::weyl::{monomial_from_multisets, normal_order_product, WeylElement, WeylMonomial};
use crate::{Error, Result};

/// Largest edge count for which the factorial symmetrization route runs.
pub const SYMMETRIZATION_EDGE_BUDGET: usize = 8;

/// Largest `m` for which the direct alternating product sum runs.
pub const DIRECT_SUM_BUDGET: usize = 9;

/// Signed table `I -> E_G(I)` over source multisets realizable by some
/// decomposition. Entries cancelling to zero may be stored or omitted;
/// [`EgTable::get`] treats absent keys as zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EgTable {
    v_out: VertexMultiset,
    v_in: VertexMultiset,
    entries: std::collections::BTreeMap<VertexMultiset, BigInt>,
}

impl EgTable {
    pub fn get(&self, i: &VertexMultiset) -> BigInt {
        self.entries.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Entries in canonical source order.
    pub fn rows(&self) -> impl Iterator<Item = (&VertexMultiset, &BigInt)> {
        self.entries.iter()
    }

    pub fn is_all_zero(&self) -> bool {
        self.entries.values().all(|v| v.is_zero())
    }

    /// First source multiset (in canonical order) carrying a nonzero value.
    pub fn first_nonzero(&self) -> Option<(&VertexMultiset, &BigInt)> {
        self.entries.iter().find(|(_, v)| !v.is_zero())
    }

    /// Sinks forced by sources `i` for the underlying graph.
    pub fn sinks_for(&self, i: &VertexMultiset) -> VertexMultiset {
        self.v_in.merge(i).difference(&self.v_out)
    }
}

fn require_singleton_blocks(g: &LabeledDigraph) -> Result<()> {
    if g.has_nontrivial_blocks() {
        return Err(Error::BlocksUnsupported);
    }
    Ok(())
}

/// `E_G(I)` as the literal signed sum over all `m!` relabelings; refuses
/// graphs beyond [`SYMMETRIZATION_EDGE_BUDGET`] edges.
pub fn eg_symmetrization(g: &LabeledDigraph, i: &VertexMultiset) -> Result<BigInt> {
    require_singleton_blocks(g)?;
    let m = g.edge_count();
    if m > SYMMETRIZATION_EDGE_BUDGET {
        return Err(Error::BudgetExceeded {
            detail: format!(
                "symmetrization sweeps {m}! relabelings; budget is {SYMMETRIZATION_EDGE_BUDGET} edges \
                 (use the decomposition route)"
            ),
        });
    }
    let edges = g.edges();
    let n = g.vertex_count();
    let mut acc = BigInt::zero();
    for_each_permutation(m, |p, sign| {
        let permuted: Vec<Edge> = p.iter().map(|&k| edges[k]).collect();
        let gp = LabeledDigraph::blockless(n, permuted).expect("relabeled graph is valid");
        let s = BigInt::from(stirling_recurrence(&gp, i));
        if sign > 0 {
            acc += s;
        } else {
            acc -= s;
        }
    });
    Ok(acc)
}

/// Full `E_G` table by the symmetrization route (same budget).
pub fn eg_symmetrization_table(g: &LabeledDigraph) -> Result<EgTable> {
    require_singleton_blocks(g)?;
    let m = g.edge_count();
    if m > SYMMETRIZATION_EDGE_BUDGET {
        return Err(Error::BudgetExceeded {
            detail: format!(
                "symmetrization sweeps {m}! relabelings; budget is {SYMMETRIZATION_EDGE_BUDGET} edges"
            ),
        });
    }
    let edges = g.edges();
    let n = g.vertex_count();
    let mut acc: std::collections::BTreeMap<VertexMultiset, BigInt> = Default::default();
    for_each_permutation(m, |p, sign| {
        let permuted: Vec<Edge> = p.iter().map(|&k| edges[k]).collect();
        let gp = LabeledDigraph::blockless(n, permuted).expect("relabeled graph is valid");
        for (i, s) in stirling_table(&gp).rows() {
            let entry = acc.entry(i.clone()).or_insert_with(BigInt::zero);
            if sign > 0 {
                *entry += BigInt::from(s.clone());
            } else {
                *entry -= BigInt::from(s.clone());
            }
        }
    });
    Ok(EgTable {
        v_out: g.out_multiset(),
        v_in: g.in_multiset(),
        entries: acc,
    })
}

/// `E_G(I)` as the sum of signed shuffle counts over all decompositions with
/// sources `i` (the shuffle route).
pub fn eg_decomposition(g: &LabeledDigraph, i: &VertexMultiset) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for d in enumerate_all_decompositions(g, i)? {
        acc += signed_shuffle_sum(&d.chain_family());
    }
    Ok(acc)
}

/// Full `E_G` table by one dynamic program.
///
/// States are pairs (set of placed edges, sources opened so far). Placing
/// edge `e` next in the relabeling contributes the sign
/// `(-1)^(unplaced labels below e)`; the edge then either opens a new path
/// (recording its tail as a source) or extends one of the paths currently
/// ending at its tail, whose number is determined by the state:
/// `in_placed(v) + sources(v) - out_placed(v)`. Summing over all interleaved
/// placements reproduces the decomposition-times-shuffle sum exactly.
pub fn eg_table(g: &LabeledDigraph) -> Result<EgTable> {
    require_singleton_blocks(g)?;
    let m = g.edge_count();
    if m > 60 {
        return Err(Error::BudgetExceeded {
            detail: format!("table dynamic program is limited to 60 edges, got {m}"),
        });
    }
    let edges = g.edges();
    let n = g.vertex_count() as usize;
    type Level = HashMap<(u64, VertexMultiset), BigInt>;
    let mut level: Level = HashMap::new();
    level.insert((0, VertexMultiset::new()), BigInt::one());
    for _ in 0..m {
        let mut next: Level = HashMap::with_capacity(level.len() * 2);
        for ((mask, opened), val) in &level {
            if val.is_zero() {
                continue;
            }
            let mut in_placed = vec![0i64; n];
            let mut out_placed = vec![0i64; n];
            for (k, e) in edges.iter().enumerate() {
                if mask & (1 << k) != 0 {
                    out_placed[e.tail as usize - 1] += 1;
                    in_placed[e.head as usize - 1] += 1;
                }
            }
            for (k, e) in edges.iter().enumerate() {
                let bit = 1u64 << k;
                if mask & bit != 0 {
                    continue;
                }
                let unplaced_below = (!mask & (bit - 1)).count_ones();
                let signed = if unplaced_below % 2 == 0 {
                    val.clone()
                } else {
                    -val.clone()
                };
                let t = e.tail as usize - 1;
                let ending_here =
                    in_placed[t] + opened.count(e.tail) as i64 - out_placed[t];
                debug_assert!(ending_here >= 0);
                if ending_here > 0 {
                    let entry = next
                        .entry((mask | bit, opened.clone()))
                        .or_insert_with(BigInt::zero);
                    *entry += &signed * BigInt::from(ending_here);
                }
                let entry = next
                    .entry((mask | bit, opened.merge(&VertexMultiset::singleton(e.tail))))
                    .or_insert_with(BigInt::zero);
                *entry += signed;
            }
        }
        level = next;
    }
    let entries = level
        .into_iter()
        .map(|((_, i), v)| (i, v))
        .collect();
    Ok(EgTable {
        v_out: g.out_multiset(),
        v_in: g.in_multiset(),
        entries,
    })
}

/// `E_G(I)` with route selection: the factorial symmetrization within its
/// budget, the decomposition-and-shuffle route beyond it.
pub fn eg_value(g: &LabeledDigraph, i: &VertexMultiset) -> Result<BigInt> {
    if g.edge_count() <= SYMMETRIZATION_EDGE_BUDGET {
        eg_symmetrization(g, i)
    } else {
        eg_decomposition(g, i)
    }
}

fn basis_graph(ws: &[WeylMonomial]) -> Result<(usize, LabeledDigraph)> {
    let first = ws
        .first()
        .ok_or_else(|| Error::Invalid("empty argument list".into()))?;
    let n = first.dimension();
    let mut edges = Vec::with_capacity(ws.len());
    for w in ws {
        if w.dimension() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: w.dimension(),
            });
        }
        let (i, j) = w.as_basis_pair().ok_or(Error::NotBasisMonomial)?;
        edges.push(Edge::new(i, j));
    }
    Ok((n, LabeledDigraph::blockless(n as u32, edges)?))
}

/// `s_m` on basis monomials through the edge graph: `sum_I E_G(I) x^I d^J`.
pub fn s_m_evaluate(ws: &[WeylMonomial]) -> Result<WeylElement> {
    let (n, g) = basis_graph(ws)?;
    let table = eg_table(&g)?;
    let mut out = WeylElement::zero(n);
    for (i, coeff) in table.rows() {
        if coeff.is_zero() {
            continue;
        }
        let j = table.sinks_for(i);
        out.add_term(monomial_from_multisets(n, i, &j), coeff.clone());
    }
    Ok(out)
}

/// `s_m` as the literal alternating sum of `m!` normally ordered products;
/// the oracle for [`s_m_evaluate`]. Arguments may be any monomials.
pub fn s_m_direct(ws: &[WeylMonomial]) -> Result<WeylElement> {
    let first = ws
        .first()
        .ok_or_else(|| Error::Invalid("empty argument list".into()))?;
    let m = ws.len();
    if m > DIRECT_SUM_BUDGET {
        return Err(Error::BudgetExceeded {
            detail: format!("direct alternating sum over {m}! products; budget is {DIRECT_SUM_BUDGET}"),
        });
    }
    let n = first.dimension();
    let mut acc = WeylElement::zero(n);
    let mut failure: Option<Error> = None;
    for_each_permutation(m, |p, sign| {
        if failure.is_some() {
            return;
        }
        let arranged: Vec<WeylMonomial> = p.iter().map(|&k| ws[k].clone()).collect();
        match normal_order_product(&arranged) {
            Ok(prod) => {
                let signed = if sign > 0 { prod } else { prod.neg() };
                match acc.add(&signed) {
                    Ok(sum) => acc = sum,
                    Err(e) => failure = Some(e),
                }
            }
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(acc),
    }
}

/// Options for [`identity_check`].
#[derive(Clone, Debug)]
pub struct IdentityOptions {
    /// Permit sweeps beyond the default budget.
    pub long_running: bool,
    /// Collapse argument subsets related by a vertex relabeling.
    pub use_symmetry: bool,
    /// Worker threads for class evaluation (1 = sequential).
    pub jobs: usize,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        Self {
            long_running: false,
            use_symmetry: true,
            jobs: 1,
        }
    }
}

/// A refutation: an argument subset (as labeled edges), a source multiset,
/// and the nonzero coefficient of the corresponding term.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WitnessInfo {
    pub edges: Vec<Edge>,
    pub sources: VertexMultiset,
    pub coefficient: BigInt,
}

/// Result of an identity sweep.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityVerdict {
    pub holds: bool,
    pub witness: Option<WitnessInfo>,
    pub cases_checked: u64,
    pub symmetry_classes: u64,
}

/// Sweep estimate used for the budget gate.
fn sweep_cost(n_sq: u64, m: usize) -> BigInt {
    BigInt::from(binomial(n_sq, m as u64)) << m.min(60)
}

/// Decides whether `s_m = 0` holds identically on the span of the `n^2`
/// basis monomials `x_i d_j`.
///
/// By multilinearity and alternation it suffices to evaluate `s_m` on
/// unordered subsets of distinct basis monomials: repeated arguments vanish
/// and reordering only flips the sign. When `m` exceeds `n^2` no such subset
/// exists; the sweep then verifies the single degenerate repeated-argument
/// case, which must vanish.
///
/// Subsets related by relabeling the `n` vertices share a verdict; with
/// `use_symmetry` only one representative per class is evaluated (pruning
/// correctness is itself under test via pruned-vs-unpruned comparison).
pub fn identity_check(n: u32, m: usize, opts: &IdentityOptions) -> Result<IdentityVerdict> {
    if n == 0 || m == 0 {
        return Err(Error::Invalid("need n >= 1 and m >= 1".into()));
    }
    let n_sq = (n as u64) * (n as u64);
    let nu = n as usize;

    if (m as u64) > n_sq {
        // Degenerate: every argument tuple repeats a monomial, so s_m
        // vanishes by alternation. Verified on one representative.
        let ws = vec![WeylMonomial::xd(nu, 1, 1)?; m];
        let value = s_m_evaluate(&ws)?;
        let verdict_holds = value.is_zero();
        let witness = if verdict_holds {
            None
        } else {
            // Unreachable mathematically; reported honestly if it occurs.
            let g = LabeledDigraph::blockless(n, vec![Edge::new(1, 1); m])?;
            let table = eg_table(&g)?;
            table.first_nonzero().map(|(i, c)| WitnessInfo {
                edges: g.edges().to_vec(),
                sources: i.clone(),
                coefficient: c.clone(),
            })
        };
        return Ok(IdentityVerdict {
            holds: verdict_holds,
            witness,
            cases_checked: 1,
            symmetry_classes: 1,
        });
    }

    if !opts.long_running && sweep_cost(n_sq, m) > BigInt::from(1_000_000_000u64) {
        return Err(Error::BudgetExceeded {
            detail: format!(
                "sweep of C({n_sq}, {m}) argument subsets needs the long-running flag"
            ),
        });
    }

    let basis: Vec<Edge> = (1..=n)
        .flat_map(|i| (1..=n).map(move |j| Edge::new(i, j)))
        .collect();

    // Vertex permutations for canonical forms.
    let mut vertex_perms: Vec<Vec<u32>> = Vec::new();
    let mut perm: Vec<u32> = (1..=n).collect();
    loop {
        vertex_perms.push(perm.clone());
        // next_permutation in lexicographic order
        let mut i = perm.len().wrapping_sub(1);
        while i > 0 && perm[i - 1] >= perm[i] {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        let mut j = perm.len() - 1;
        while perm[j] <= perm[i - 1] {
            j -= 1;
        }
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }

    let canonical_key = |subset: &[usize]| -> Vec<(u32, u32)> {
        let mut best: Option<Vec<(u32, u32)>> = None;
        for vp in &vertex_perms {
            let mut relabeled: Vec<(u32, u32)> = subset
                .iter()
                .map(|&k| {
                    let e = basis[k];
                    (vp[e.tail as usize - 1], vp[e.head as usize - 1])
                })
                .collect();
            relabeled.sort_unstable();
            if best.as_ref().is_none_or(|b| relabeled < *b) {
                best = Some(relabeled);
            }
        }
        best.expect("at least the identity relabeling")
    };

    // Pass 1: enumerate subsets in lexicographic order, grouping into classes.
    let mut class_of_subset: Vec<u32> = Vec::new();
    let mut class_reps: Vec<Vec<usize>> = Vec::new();
    let mut class_index: HashMap<Vec<(u32, u32)>, u32> = HashMap::new();
    let mut subset: Vec<usize> = (0..m).collect();
    loop {
        let class = if opts.use_symmetry {
            let key = canonical_key(&subset);
            *class_index.entry(key).or_insert_with(|| {
                class_reps.push(subset.clone());
                class_reps.len() as u32 - 1
            })
        } else {
            class_reps.push(subset.clone());
            class_reps.len() as u32 - 1
        };
        class_of_subset.push(class);
        if !next_combination(&mut subset, n_sq as usize) {
            break;
        }
    }
    let cases_checked = class_of_subset.len() as u64;
    let symmetry_classes = class_reps.len() as u64;

    // Pass 2: evaluate one E_G table per class.
    let class_nonzero = evaluate_classes(&basis, &class_reps, n, opts.jobs)?;

    // Pass 3: the witness is the lexicographically first subset lying in a
    // refuting class; its own table supplies the reported coefficient (the
    // class verdict transfers to every member under vertex relabeling).
    let holds = !class_nonzero.iter().any(|&b| b);
    let mut witness = None;
    if !holds {
        let mut subset: Vec<usize> = (0..m).collect();
        for &class in &class_of_subset {
            if class_nonzero[class as usize] {
                let edges: Vec<Edge> = subset.iter().map(|&k| basis[k]).collect();
                let g = LabeledDigraph::blockless(n, edges.clone())?;
                let table = eg_table(&g)?;
                let (i, c) = table
                    .first_nonzero()
                    .expect("class verdict transfers to every member");
                witness = Some(WitnessInfo {
                    edges,
                    sources: i.clone(),
                    coefficient: c.clone(),
                });
                break;
            }
            next_combination(&mut subset, n_sq as usize);
        }
    }

    Ok(IdentityVerdict {
        holds,
        witness,
        cases_checked,
        symmetry_classes,
    })
}

/// Advances `subset` to the next `m`-combination of `0..total` in
/// lexicographic order; returns `false` when exhausted.
fn next_combination(subset: &mut [usize], total: usize) -> bool {
    let m = subset.len();
    let mut i = m;
    while i > 0 {
        i -= 1;
        if subset[i] != i + total - m {
            subset[i] += 1;
            for k in i + 1..m {
                subset[k] = subset[k - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn evaluate_classes(
    basis: &[Edge],
    class_reps: &[Vec<usize>],
    n: u32,
    jobs: usize,
) -> Result<Vec<bool>> {
    let eval_one = |rep: &Vec<usize>| -> Result<bool> {
        let edges: Vec<Edge> = rep.iter().map(|&k| basis[k]).collect();
        let g = LabeledDigraph::blockless(n, edges)?;
        Ok(!eg_table(&g)?.is_all_zero())
    };
    if jobs <= 1 || class_reps.len() < 2 {
        return class_reps.iter().map(eval_one).collect();
    }
    let chunk = class_reps.len().div_ceil(jobs);
    let mut results: Vec<Result<Vec<bool>>> = Vec::new();
    std::thread::scope(|scope| {
        let handles: Vec<_> = class_reps
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(eval_one).collect::<Result<Vec<bool>>>()))
            .collect();
        for h in handles {
            results.push(h.join().expect("worker panicked"));
        }
    });
    let mut flat = Vec::with_capacity(class_reps.len());
    for r in results {
        flat.extend(r?);
    }
    Ok(flat)
}

/// The counterexample graphs with `E_G({1,1}) != 0`: for even `n` the doubled
/// `n`-cycle (labels `1..n` forward, `n+1..2n` backward); for odd `n` the
/// doubled `(n-1)`-cycle plus a doubled pendant edge between vertices `2` and
/// `n` carrying the last two labels.
pub fn fig3_graph(n: u32) -> Result<LabeledDigraph> {
    if n < 4 {
        return Err(Error::Invalid(format!(
            "counterexample family starts at n = 4, got {n}"
        )));
    }
    let mut edges = Vec::with_capacity(2 * n as usize);
    if n % 2 == 0 {
        for i in 1..n {
            edges.push(Edge::new(i, i + 1));
        }
        edges.push(Edge::new(n, 1));
        edges.push(Edge::new(1, n));
        for k in 2..=n {
            edges.push(Edge::new(n - k + 2, n - k + 1));
        }
    } else {
        let c = n - 1; // cycle length
        for i in 1..c {
            edges.push(Edge::new(i, i + 1));
        }
        edges.push(Edge::new(c, 1));
        edges.push(Edge::new(1, c));
        for k in 1..=c - 1 {
            edges.push(Edge::new(c - k + 1, c - k));
        }
        edges.push(Edge::new(2, n));
        edges.push(Edge::new(n, 2));
    }
    LabeledDigraph::blockless(n, edges)
}

/// A certificate that `s_N` escapes the span of the `x_i d_j` for
/// `2 < N < 2n`: the edge graph of the first `N` operators of the staircase
/// `x_1 d_1, x_1 d_2, x_2 d_2, x_2 d_3, ...` together with the source
/// multiset whose coefficient in the expansion of `s_N` is nonzero of
/// `d`-degree 2.
#[derive(Clone, Debug)]
pub struct NCommutatorWitness {
    pub graph: LabeledDigraph,
    pub sources: VertexMultiset,
    pub coefficient: BigInt,
}

/// Builds the staircase witness for `s_N` on the `n`-variable span.
/// Sources are `{1,1}` for odd `N = 2r-1` and `{1,2}` for even `N = 2r`.
pub fn ncommutator_witness(n: u32, big_n: usize) -> Result<NCommutatorWitness> {
    if big_n <= 2 || big_n >= 2 * n as usize {
        return Err(Error::Invalid(format!(
            "need 2 < N < 2n, got N = {big_n}, n = {n}"
        )));
    }
    let edges: Vec<Edge> = (1..=big_n as u32)
        .map(|k| {
            if k % 2 == 1 {
                Edge::new(k.div_ceil(2), k.div_ceil(2))
            } else {
                Edge::new(k / 2, k / 2 + 1)
            }
        })
        .collect();
    let graph = LabeledDigraph::blockless(n, edges)?;
    let sources = if big_n % 2 == 1 {
        VertexMultiset::from_elements([1, 1])
    } else {
        VertexMultiset::from_elements([1, 2])
    };
    let coefficient = eg_value(&graph, &sources)?;
    Ok(NCommutatorWitness {
        graph,
        sources,
        coefficient,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ms(elems: &[u32]) -> VertexMultiset {
        VertexMultiset::from_elements(elems.iter().copied())
    }

    fn two_cycle() -> LabeledDigraph {
        LabeledDigraph::blockless(2, vec![Edge::new(1, 2), Edge::new(2, 1)]).unwrap()
    }

    #[test]
    fn two_cycle_eg_golden() {
        let g = two_cycle();
        for (i, expected) in [
            (ms(&[1]), 1i64),
            (ms(&[2]), -1),
            (ms(&[1, 2]), 0),
        ] {
            let expected = BigInt::from(expected);
            assert_eq!(eg_symmetrization(&g, &i).unwrap(), expected, "sym {i}");
            assert_eq!(eg_decomposition(&g, &i).unwrap(), expected, "dec {i}");
            assert_eq!(eg_table(&g).unwrap().get(&i), expected, "table {i}");
        }
    }

    #[test]
    fn eg_at_full_sources_vanishes() {
        // I = V_out realizes exactly one principal decomposition per
        // relabeling, so the signed sum over S_m vanishes for m >= 2.
        for g in [
            two_cycle(),
            LabeledDigraph::blockless(3, vec![Edge::new(1, 2), Edge::new(2, 3), Edge::new(3, 1)])
                .unwrap(),
        ] {
            assert_eq!(
                eg_symmetrization(&g, &g.out_multiset()).unwrap(),
                BigInt::zero()
            );
        }
    }

    #[test]
    fn single_edge_eg() {
        let g = LabeledDigraph::blockless(2, vec![Edge::new(1, 2)]).unwrap();
        assert_eq!(eg_value(&g, &ms(&[1])).unwrap(), BigInt::one());
        let table = eg_table(&g).unwrap();
        assert_eq!(table.get(&ms(&[1])), BigInt::one());
        assert!(table.get(&ms(&[2])).is_zero());
    }

    #[test]
    fn three_routes_agree_on_small_graphs() {
        let graphs = [
            two_cycle(),
            LabeledDigraph::blockless(
                3,
                vec![
                    Edge::new(1, 2),
                    Edge::new(2, 1),
                    Edge::new(2, 3),
                    Edge::new(3, 2),
                ],
            )
            .unwrap(),
            LabeledDigraph::blockless(
                2,
                vec![
                    Edge::new(1, 1),
                    Edge::new(1, 2),
                    Edge::new(2, 2),
                    Edge::new(2, 1),
                    Edge::new(1, 1),
                ],
            )
            .unwrap(),
        ];
        for g in &graphs {
            let table = eg_table(g).unwrap();
            for i in g.out_multiset().sub_multisets() {
                let sym = eg_symmetrization(g, &i).unwrap();
                let dec = eg_decomposition(g, &i).unwrap();
                assert_eq!(sym, dec, "sym vs dec on {i}");
                assert_eq!(table.get(&i), sym, "table vs sym on {i}");
            }
        }
    }

    #[test]
    fn s2_on_equal_arguments_vanishes() {
        let xd = WeylMonomial::xd(1, 1, 1).unwrap();
        let r = s_m_evaluate(&[xd.clone(), xd]).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn s4_vanishes_on_the_two_variable_basis() {
        let ws = [
            WeylMonomial::xd(2, 1, 1).unwrap(),
            WeylMonomial::xd(2, 2, 2).unwrap(),
            WeylMonomial::xd(2, 1, 2).unwrap(),
            WeylMonomial::xd(2, 2, 1).unwrap(),
        ];
        assert!(s_m_evaluate(&ws).unwrap().is_zero());
        assert!(s_m_direct(&ws).unwrap().is_zero());
    }

    #[test]
    fn repeated_argument_vanishes() {
        let ws = [
            WeylMonomial::xd(2, 1, 2).unwrap(),
            WeylMonomial::xd(2, 2, 1).unwrap(),
            WeylMonomial::xd(2, 1, 2).unwrap(),
        ];
        assert!(s_m_evaluate(&ws).unwrap().is_zero());
        assert!(s_m_direct(&ws).unwrap().is_zero());
    }

    #[test]
    fn evaluation_matches_direct_sum() {
        let n = 2;
        let all: Vec<WeylMonomial> = (1..=2)
            .flat_map(|i| (1..=2).map(move |j| WeylMonomial::xd(n, i, j).unwrap()))
            .collect();
        // All 3-subsets of the 4 basis monomials.
        for a in 0..all.len() {
            for b in a + 1..all.len() {
                for c in b + 1..all.len() {
                    let ws = [all[a].clone(), all[b].clone(), all[c].clone()];
                    assert_eq!(
                        s_m_evaluate(&ws).unwrap(),
                        s_m_direct(&ws).unwrap(),
                        "subset ({a},{b},{c})"
                    );
                }
            }
        }
    }

    #[test]
    fn swapping_arguments_negates() {
        let ws = [
            WeylMonomial::xd(2, 1, 1).unwrap(),
            WeylMonomial::xd(2, 1, 2).unwrap(),
            WeylMonomial::xd(2, 2, 1).unwrap(),
        ];
        let swapped = [ws[1].clone(), ws[0].clone(), ws[2].clone()];
        let a = s_m_direct(&ws).unwrap();
        let b = s_m_direct(&swapped).unwrap();
        assert_eq!(a.neg(), b);
        assert!(!a.is_zero());
    }

    #[test]
    fn identity_check_degenerate_and_tiny() {
        let v = identity_check(1, 2, &IdentityOptions::default()).unwrap();
        assert!(v.holds);
        assert_eq!(v.cases_checked, 1);

        let v = identity_check(2, 4, &IdentityOptions::default()).unwrap();
        assert!(v.holds, "s_4 is an identity on the 2-variable span");
        assert_eq!(v.cases_checked, 1); // C(4, 4)
        assert_eq!(v.symmetry_classes, 1);
    }

    #[test]
    fn identity_check_finds_s3_witness_for_n2() {
        // s_4 is minimal for n = 2, so s_3 must be refuted.
        let pruned = identity_check(2, 3, &IdentityOptions::default()).unwrap();
        let unpruned = identity_check(
            2,
            3,
            &IdentityOptions {
                use_symmetry: false,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!pruned.holds);
        assert!(!unpruned.holds);
        assert_eq!(pruned.cases_checked, 4); // C(4, 3)
        assert_eq!(unpruned.cases_checked, 4);
        assert_eq!(unpruned.symmetry_classes, 4);
        assert_eq!(pruned.witness, unpruned.witness);
        // The reported coefficient reproduces under re-evaluation.
        let w = pruned.witness.unwrap();
        let g = LabeledDigraph::blockless(2, w.edges).unwrap();
        assert_eq!(eg_value(&g, &w.sources).unwrap(), w.coefficient);
        assert!(!w.coefficient.is_zero());
    }

    #[test]
    fn fig3_even_structure_and_value() {
        let g = fig3_graph(4).unwrap();
        let expected = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (1, 4),
            (4, 3),
            (3, 2),
            (2, 1),
        ];
        let got: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(got, expected);
        // E_G({1,1}) = -1 - (-1)^4 + C(4, 2) = 4.
        assert_eq!(eg_table(&g).unwrap().get(&ms(&[1, 1])), BigInt::from(4));
    }

    #[test]
    fn fig3_odd_structure() {
        let g = fig3_graph(5).unwrap();
        let expected = [
            (1, 2),
            (2, 3),
            (3, 4),
            (4, 1),
            (1, 4),
            (4, 3),
            (3, 2),
            (2, 1),
            (2, 5),
            (5, 2),
        ];
        let got: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(got, expected);
        assert!(fig3_graph(3).is_err());
    }

    #[test]
    fn s8_is_refuted_on_four_variables() {
        // The doubled 4-cycle is a refuting subset, so the full sweep of
        // C(16, 8) = 12870 argument subsets must report a witness.
        let verdict = identity_check(
            4,
            8,
            &IdentityOptions {
                jobs: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert!(!verdict.holds);
        assert_eq!(verdict.cases_checked, 12870);
        let w = verdict.witness.unwrap();
        let g = LabeledDigraph::blockless(4, w.edges).unwrap();
        assert_eq!(eg_table(&g).unwrap().get(&w.sources), w.coefficient);
        assert!(!w.coefficient.is_zero());
        // The doubled cycle's own refuting coefficient.
        assert_eq!(
            eg_table(&fig3_graph(4).unwrap()).unwrap().get(&ms(&[1, 1])),
            BigInt::from(4)
        );
    }

    #[test]
    fn three_routes_agree_on_a_seven_edge_graph() {
        let g = LabeledDigraph::blockless(
            4,
            vec![
                Edge::new(1, 2),
                Edge::new(2, 3),
                Edge::new(3, 4),
                Edge::new(4, 1),
                Edge::new(1, 3),
                Edge::new(3, 1),
                Edge::new(2, 2),
            ],
        )
        .unwrap();
        let sym = eg_symmetrization_table(&g).unwrap();
        let table = eg_table(&g).unwrap();
        for i in g.out_multiset().sub_multisets() {
            let dec = eg_decomposition(&g, &i).unwrap();
            assert_eq!(sym.get(&i), dec, "sym vs dec at {i}");
            assert_eq!(table.get(&i), dec, "table vs dec at {i}");
        }
    }

    #[test]
    fn ncommutator_odd_case() {
        let w = ncommutator_witness(3, 3).unwrap();
        assert_eq!(w.sources, ms(&[1, 1]));
        assert_eq!(w.coefficient, BigInt::one());
        let edges: Vec<(u32, u32)> = w.graph.edges().iter().map(|e| (e.tail, e.head)).collect();
        assert_eq!(edges, [(1, 1), (1, 2), (2, 2)]);
        assert!(ncommutator_witness(3, 2).is_err());
        assert!(ncommutator_witness(3, 6).is_err());
    }
}
