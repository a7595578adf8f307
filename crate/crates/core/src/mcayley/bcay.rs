use std::collections::VecDeque;
use std::sync::Arc;

use super::{build_bcay, build_mcayley, ConnectionSymbol, MCayleyDigraph};
use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup, GroupMap};

/// Whether `BCay(G, S)` is connected.
///
/// Answered twice: algebraically as `⟨S S⁻¹⟩ = G`, and by breadth-first search
/// on the built graph. A disagreement is reported as an internal error.
pub fn is_connected_bcay(g: &Arc<FiniteGroup>, s: ElemSet) -> Result<bool> {
    let algebraic = !s.is_empty() && g.closure(g.product_set(s, g.inverse_set(s))) == g.all();
    let d = build_bcay(g, s)?;
    let adj = d.adjacency();
    let nv = d.vertex_count();
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        // BCay is undirected, so out-neighbours suffice
        for v in adj.out_neighbors(u) {
            if !seen[v] {
                seen[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    let searched = reached == nv;
    if searched != algebraic {
        return Err(Error::Internal(format!(
            "connectivity of BCay({}, {}) disagrees: algebraic {algebraic}, search {searched}",
            g.name(),
            g.format_set(s)
        )));
    }
    Ok(algebraic)
}

/// `g₀⁻¹ S` for the least element `g₀` of `S`; the result contains the identity.
pub fn normalize_connection_set(g: &FiniteGroup, s: ElemSet) -> Result<ElemSet> {
    let g0 = s.min().ok_or(Error::EmptySet)?;
    Ok(g.left_translate(g.inv(g0), s))
}

/// Replaces `S_{0,1}` and `S_{1,0}` by their complements in `G`.
pub fn bipartite_complement(d: &MCayleyDigraph) -> Result<MCayleyDigraph> {
    let sym = d.symbol();
    if sym.parts() != 2 || !sym.is_partite() {
        return Err(Error::Not2PCayley);
    }
    let n = d.group().order();
    let mut out = ConnectionSymbol::empty(2);
    out.set(0, 1, sym.get(0, 1).complement(n));
    out.set(1, 0, sym.get(1, 0).complement(n));
    build_mcayley(d.group(), &out)
}

/// `BCay(G, π⁻¹(S̄))` and `BCay(G/H, S̄)` for a normal subgroup `H`.
#[derive(Clone, Debug)]
pub struct QuotientPair {
    pub lifted: MCayleyDigraph,
    pub quotient: MCayleyDigraph,
    pub projection: GroupMap,
}

pub fn quotient_bcay(g: &Arc<FiniteGroup>, h: ElemSet, s_bar: ElemSet) -> Result<QuotientPair> {
    let (q, projection) = g.quotient_group(h)?;
    let q = Arc::new(q);
    s_bar.iter().try_for_each(|c| {
        if c < q.order() {
            Ok(())
        } else {
            Err(Error::MalformedInput("coset index outside G/H".into()))
        }
    })?;
    let lifted_set: ElemSet = g.elements().filter(|&x| s_bar.contains(projection.apply(x))).collect();
    Ok(QuotientPair { lifted: build_bcay(g, lifted_set)?, quotient: build_bcay(&q, s_bar)?, projection })
}

/// Lexicographic product `X[k K₁]`: vertex `v` becomes `v·k + t` for `t < k`,
/// with an arc `(u, s) → (v, t)` whenever `u → v`.
pub fn lexicographic_blowup(adj: &BitMatrix, k: usize) -> BitMatrix {
    let mut out = BitMatrix::new(adj.size() * k);
    for u in 0..adj.size() {
        for v in adj.out_neighbors(u) {
            for s in 0..k {
                for t in 0..k {
                    out.set(u * k + s, v * k + t);
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(spec).unwrap())
    }

    #[test]
    fn connectivity_examples() {
        let z4 = grp("Z4");
        assert!(is_connected_bcay(&z4, ElemSet::from_elems([0, 1])).unwrap());
        assert!(!is_connected_bcay(&z4, ElemSet::from_elems([0, 2])).unwrap());
        assert!(!is_connected_bcay(&z4, ElemSet::EMPTY).unwrap());
        assert!(!is_connected_bcay(&grp("Z1"), ElemSet::EMPTY).unwrap());
        assert!(is_connected_bcay(&grp("Z1"), ElemSet::singleton(0)).unwrap());
    }

    #[test]
    fn normalization_left_shifts() {
        let z8 = named_group("Z8").unwrap();
        assert_eq!(normalize_connection_set(&z8, ElemSet::from_elems([1, 2])).unwrap(), ElemSet::from_elems([0, 1]));
        assert_eq!(normalize_connection_set(&z8, ElemSet::from_elems([0, 3])).unwrap(), ElemSet::from_elems([0, 3]));
        assert!(matches!(normalize_connection_set(&z8, ElemSet::EMPTY), Err(Error::EmptySet)));
    }

    #[test]
    fn complement_is_an_involution() {
        let z4 = grp("Z4");
        let d = build_bcay(&z4, ElemSet::from_elems([0, 1])).unwrap();
        let c = bipartite_complement(&d).unwrap();
        assert_eq!(c.symbol().get(0, 1), ElemSet::from_elems([2, 3]));
        assert_eq!(bipartite_complement(&c).unwrap().adjacency(), d.adjacency());
        let full = build_bcay(&z4, z4.all()).unwrap();
        assert_eq!(bipartite_complement(&full).unwrap().adjacency().arc_count(), 0);
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::singleton(1));
        assert!(matches!(bipartite_complement(&build_mcayley(&z4, &sym).unwrap()), Err(Error::Not2PCayley)));
    }

    #[test]
    fn quotient_with_full_set_is_complete() {
        let z4 = grp("Z4");
        let pair = quotient_bcay(&z4, ElemSet::from_elems([0, 2]), ElemSet::from_elems([0, 1])).unwrap();
        assert_eq!(pair.lifted.adjacency().arc_count(), 32);
        assert_eq!(lexicographic_blowup(pair.quotient.adjacency(), 2).arc_count(), 32);
        let trivial = quotient_bcay(&z4, ElemSet::singleton(0), ElemSet::from_elems([0, 1])).unwrap();
        assert_eq!(trivial.lifted.adjacency(), trivial.quotient.adjacency());
        assert!(matches!(
            quotient_bcay(&grp("D8"), ElemSet::from_elems([0, 4]), ElemSet::singleton(0)),
            Err(Error::NotNormal)
        ));
    }
}
