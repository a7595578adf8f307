#![allow(dead_code)]

use std::collections::VecDeque;
use std::sync::Arc;

use cayleyiso::bits::BitMatrix;
use cayleyiso::group::{named_group, ElemSet, FiniteGroup};
use cayleyiso::mcayley::ConnectionSymbol;
use rand::Rng;

/// Every corpus group of order at most 16.
pub const SMALL_CORPUS: [&str; 34] = [
    "Z1", "Z2", "Z3", "Z2^2", "Z4", "Z5", "Z6", "D6", "Z7", "Z8", "Z2^3", "Z4xZ2", "D8", "Q8", "Z9", "Z3^2", "Z10",
    "D10", "Z11", "Z12", "Z6xZ2", "A4", "D12", "Dic12", "Z13", "Z14", "D14", "Z15", "Z16", "Z2^4", "Z4xZ2^2", "Z4^2",
    "Q8xZ2", "D8xZ2",
];

pub fn grp(spec: &str) -> Arc<FiniteGroup> {
    Arc::new(named_group(spec).unwrap_or_else(|e| panic!("{spec}: {e}")))
}

/// Whether every vertex is reachable from vertex 0 along arcs in either direction.
pub fn bfs_connected(adj: &BitMatrix) -> bool {
    let n = adj.size();
    if n == 0 {
        return true;
    }
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0]);
    let mut count = 1;
    while let Some(u) = queue.pop_front() {
        for v in 0..n {
            if !seen[v] && (adj.get(u, v) || adj.get(v, u)) {
                seen[v] = true;
                count += 1;
                queue.push_back(v);
            }
        }
    }
    count == n
}

/// `|Aut(G)|` by trying every bijection that fixes the identity. Only for `|G| ≤ 8`.
pub fn brute_aut_order(g: &FiniteGroup) -> u128 {
    let n = g.order();
    assert!(n <= 8);
    let mut images: Vec<usize> = (0..n).collect();
    let mut count = 0;
    permute(&mut images, 1, &mut |p| {
        if (0..n).all(|a| (0..n).all(|b| p[g.mul(a, b)] == g.mul(p[a], p[b]))) {
            count += 1;
        }
    });
    count
}

fn permute(v: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k >= v.len() {
        visit(v);
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, visit);
        v.swap(k, i);
    }
}

pub fn random_set<R: Rng>(g: &FiniteGroup, rng: &mut R) -> ElemSet {
    ElemSet(rng.gen::<u64>()).intersection(g.all())
}

pub fn random_symbol<R: Rng>(g: &FiniteGroup, m: usize, rng: &mut R) -> ConnectionSymbol {
    let mut sym = ConnectionSymbol::empty(m);
    for i in 0..m {
        for j in 0..m {
            let s = random_set(g, rng);
            sym.set(i, j, if i == j { s.without(0) } else { s });
        }
    }
    sym
}
