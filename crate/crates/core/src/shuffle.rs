//! Shuffles of label chains and signed shuffle sums.
//!
//! A *chain family* is a collection of disjoint sequences whose labels
//! together form `{1, ..., M}`. Its shuffle set consists of all interleavings
//! preserving each chain's internal order (the linear extensions of a poset
//! of separated chains). The signed sum over a shuffle set is what a path
//! decomposition contributes to the symmetrized characteristic `E_G`.
//!
//! For two contiguous increasing chains of lengths `m` and `n` the signed sum
//! is `q(m, n)`, a binomial coefficient at alternating sign: `q` is symmetric,
//! vanishes when both arguments are odd, and otherwise equals
//! `C(floor(m/2) + floor(n/2), floor(n/2))`.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::perm::Permutation;
use crate::{Error, Result};

/// Disjoint label chains covering `{1, ..., M}`. Within-chain order is data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainFamily {
    chains: Vec<Vec<u32>>,
    total: usize,
}

impl ChainFamily {
    /// Validates disjointness and that the union of labels is exactly `1..=M`.
    pub fn new(chains: Vec<Vec<u32>>) -> Result<Self> {
        let total: usize = chains.iter().map(|c| c.len()).sum();
        let mut seen = vec![false; total];
        for chain in &chains {
            if chain.is_empty() {
                return Err(Error::Invalid("empty chain".into()));
            }
            for &v in chain {
                if v == 0 || v as usize > total {
                    return Err(Error::Invalid(format!(
                        "label {v} outside 1..={total} in chain family"
                    )));
                }
                if seen[v as usize - 1] {
                    return Err(Error::Invalid(format!("label {v} repeated across chains")));
                }
                seen[v as usize - 1] = true;
            }
        }
        Ok(Self { chains, total })
    }

    /// Builds a family from sequences of arbitrary distinct labels by
    /// compacting them order-preservingly onto `1..=M`. The signed shuffle
    /// sum depends only on the relative order of labels, so this is the
    /// canonical way to form a family from path label sequences.
    pub fn from_sequences(seqs: Vec<Vec<u32>>) -> Result<Self> {
        let mut all: Vec<u32> = seqs.iter().flatten().copied().collect();
        all.sort_unstable();
        if all.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Invalid("label repeated across chains".into()));
        }
        let rank = |v: u32| all.binary_search(&v).expect("label present") as u32 + 1;
        Self::new(
            seqs.into_iter()
                .map(|s| s.into_iter().map(rank).collect())
                .collect(),
        )
    }

    pub fn chains(&self) -> &[Vec<u32>] {
        &self.chains
    }

    /// Total number of labels `M`.
    pub fn total_len(&self) -> usize {
        self.total
    }
}

/// All interleavings of the chains, each as a permutation of `1..=M` in
/// one-line form. The count is the multinomial coefficient of the chain
/// lengths. Deterministic order: at each position the next chain is tried in
/// family order.
pub fn enumerate_shuffles(family: &ChainFamily) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut positions = vec![0usize; family.chains.len()];
    let mut current: Vec<u32> = Vec::with_capacity(family.total);
    fn rec(
        family: &ChainFamily,
        positions: &mut [usize],
        current: &mut Vec<u32>,
        out: &mut Vec<Permutation>,
    ) {
        if current.len() == family.total {
            out.push(Permutation::from_images(current.clone()).expect("shuffle is a permutation"));
            return;
        }
        for t in 0..family.chains.len() {
            if positions[t] < family.chains[t].len() {
                current.push(family.chains[t][positions[t]]);
                positions[t] += 1;
                rec(family, positions, current, out);
                positions[t] -= 1;
                current.pop();
            }
        }
    }
    rec(family, &mut positions, &mut current, &mut out);
    out
}

/// Signed sum over the shuffle set, by dynamic programming over tuples of
/// consumed prefix lengths.
///
/// Building the interleaving left to right, appending the value `v` next
/// contributes the sign `(-1)^(number of still unplaced labels smaller than v)`:
/// those are exactly the inversions in which `v` is the left, larger element,
/// and every inversion is counted once at its left element. The state of the
/// walk is the tuple of per-chain consumed prefix lengths, so the sum
/// factorizes over at most `prod(len_t + 1)` states.
pub fn signed_shuffle_sum(family: &ChainFamily) -> BigInt {
    let chains = &family.chains;
    let k = chains.len();
    let total = family.total;
    if total == 0 {
        return BigInt::one();
    }

    // smaller_in_suffix[t][pos][v] = #{x in chains[t][pos..] : x < v}, v in 0..=M.
    let smaller_in_suffix: Vec<Vec<Vec<u32>>> = chains
        .iter()
        .map(|chain| {
            let l = chain.len();
            let mut table = vec![vec![0u32; total + 1]; l + 1];
            for pos in (0..l).rev() {
                let x = chain[pos] as usize;
                for v in 0..=total {
                    table[pos][v] = table[pos + 1][v] + u32::from(x < v);
                }
            }
            table
        })
        .collect();

    // Mixed-radix state index over consumed prefix lengths.
    let mut strides = vec![1usize; k];
    for t in 1..k {
        strides[t] = strides[t - 1] * (chains[t - 1].len() + 1);
    }
    let states: usize = strides[k - 1] * (chains[k - 1].len() + 1);

    // f[state] = signed sum over completions from this state; process states
    // by descending number of consumed labels.
    let mut f: Vec<BigInt> = vec![BigInt::zero(); states];
    let mut by_consumed: Vec<Vec<usize>> = vec![Vec::new(); total + 1];
    {
        let mut tuple = vec![0usize; k];
        'outer: loop {
            let state: usize = tuple.iter().zip(&strides).map(|(c, s)| c * s).sum();
            by_consumed[tuple.iter().sum::<usize>()].push(state);
            for t in 0..k {
                if tuple[t] < chains[t].len() {
                    tuple[t] += 1;
                    continue 'outer;
                }
                tuple[t] = 0;
            }
            break;
        }
    }
    let full: usize = (0..k).map(|t| chains[t].len() * strides[t]).sum();
    f[full] = BigInt::one();
    for consumed in (0..total).rev() {
        for &state in &by_consumed[consumed] {
            let mut tuple = vec![0usize; k];
            let mut rest = state;
            for t in (0..k).rev() {
                tuple[t] = rest / strides[t];
                rest %= strides[t];
            }
            let mut acc = BigInt::zero();
            for t in 0..k {
                let pos = tuple[t];
                if pos == chains[t].len() {
                    continue;
                }
                let v = chains[t][pos] as usize;
                let mut unplaced_smaller: u32 = 0;
                for (s, entry) in smaller_in_suffix.iter().enumerate() {
                    let p = tuple[s] + usize::from(s == t); // v itself is not counted
                    unplaced_smaller += entry[p][v];
                }
                let next = &f[state + strides[t]];
                if unplaced_smaller % 2 == 0 {
                    acc += next;
                } else {
                    acc -= next;
                }
            }
            f[state] = acc;
        }
    }
    f[0].clone()
}

/// Binomial coefficient `C(n, k)` in exact arithmetic.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Signed shuffle sum of the two contiguous chains `(1..m)` and `(m+1..m+n)`.
///
/// Closed form: symmetric in its arguments, zero when both are odd, and
/// `C(floor(m/2) + floor(n/2), floor(n/2))` otherwise. Satisfies the
/// recurrence `q(m, n) = q(m, n-1) + (-1)^n q(m-1, n)`.
pub fn q(m: u64, n: u64) -> BigInt {
    if m % 2 == 1 && n % 2 == 1 {
        return BigInt::zero();
    }
    BigInt::from(binomial(m / 2 + n / 2, n / 2))
}
