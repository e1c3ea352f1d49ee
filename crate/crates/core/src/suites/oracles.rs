//! Brute-force oracles that share no code with the structures they check.

use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::rootdata::{RootDatum, WeylElement};

/// Word length by 0-1 breadth-first search in the Cayley graph (free Ω moves), restricted to
/// translations with coordinates bounded by `bound`.
pub fn word_lengths(d: &RootDatum, bound: i64) -> HashMap<WeylElement, usize> {
    let inside = |w: &WeylElement| w.trans.iter().all(|c| c.abs() <= bound);
    let mut omega: Vec<WeylElement> = d.omega_generators().to_vec();
    omega.extend(d.omega_generators().iter().map(|u| d.inverse(u)));
    let mut dist = HashMap::from([(d.identity(), 0usize)]);
    let mut queue = VecDeque::from([d.identity()]);
    while let Some(w) = queue.pop_front() {
        let dw = dist[&w];
        for u in &omega {
            let v = d.mul(&w, u);
            if inside(&v) && dist.get(&v).is_none_or(|x| *x > dw) {
                dist.insert(v.clone(), dw);
                queue.push_front(v);
            }
        }
        for g in d.generators() {
            let v = d.mul(&w, &g.elt);
            if inside(&v) && dist.get(&v).is_none_or(|x| *x > dw + 1) {
                dist.insert(v.clone(), dw + 1);
                queue.push_back(v);
            }
        }
    }
    dist
}

/// Supports of the `{0,1}`-valued maps `x` on nonempty subsets of `{1..n}` (bitmasks) with
/// `x({1..n}) = 1` and `x(I)x(J) = x(I∪J)x(I∩J)` when `yz = 0`, `x(I)x(J) = 0` otherwise,
/// where `x(∅) = 1`. Each support is sorted by size.
pub fn f2_flag_supports(n: usize) -> BTreeSet<Vec<u32>> {
    let subs: Vec<u32> = (1..1u32 << n).collect();
    let full = (1u32 << n) - 1;
    let mut out = BTreeSet::new();
    for bits in 0u64..1 << subs.len() {
        let x = |m: u32| -> u64 {
            if m == 0 {
                1
            } else {
                bits >> (m - 1) & 1
            }
        };
        if x(full) != 1 {
            continue;
        }
        let ok = subs.iter().all(|&i| {
            subs.iter().all(|&j| {
                let c = (i & j).count_ones();
                let yz = (i.count_ones() - c) * (j.count_ones() - c);
                let rhs = if yz == 0 { x(i | j) * x(i & j) } else { 0 };
                x(i) * x(j) == rhs
            })
        });
        if ok {
            let mut support: Vec<u32> = subs.iter().copied().filter(|m| x(*m) == 1).collect();
            support.sort_by_key(|m| (m.count_ones(), *m));
            out.insert(support);
        }
    }
    out
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Size of the `S_n`-orbit of a chain of subsets, by applying every permutation.
pub fn chain_orbit_size(n: usize, chain: &[u32]) -> usize {
    let permute = |mask: u32, perm: &[usize]| (0..n).filter(|i| mask >> i & 1 == 1).fold(0u32, |a, i| a | 1 << perm[i]);
    permutations(n)
        .iter()
        .map(|p| chain.iter().map(|m| permute(*m, p)).collect::<Vec<u32>>())
        .collect::<BTreeSet<_>>()
        .len()
}
