//! m-Cayley digraphs `Cay(G, S_{i,j})` over a table group, their part structure,
//! and the normalizer `N` of the right-regular copy `R(G)` with its kernel `K`.
//!
//! Parts are numbered from 0 in code. Vertex `x` of part `i` has index `i·|G| + x`.

mod bcay;
mod normalizer;

pub use bcay::{
    bipartite_complement, is_connected_bcay, lexicographic_blowup, normalize_connection_set, quotient_bcay,
    QuotientPair,
};
pub use normalizer::{
    apply_normalizer, brute_force_normalizer, normalizer_and_kernel, right_regular, NormalizerElement, NormalizerGroups,
};

use std::sync::Arc;

use serde::Serialize;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::group::{named_group, ElemSet, FiniteGroup};

/// The `m × m` family of connection sets `S_{i,j}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ConnectionSymbol {
    m: usize,
    sets: Vec<ElemSet>,
}

impl ConnectionSymbol {
    /// All sets empty.
    pub fn empty(m: usize) -> Self {
        ConnectionSymbol { m, sets: vec![ElemSet::EMPTY; m * m] }
    }

    /// The bi-Cayley symbol: `S_{0,1} = S`, `S_{1,0} = S⁻¹`, diagonal empty.
    pub fn bcay(g: &FiniteGroup, s: ElemSet) -> Self {
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 1, s);
        sym.set(1, 0, g.inverse_set(s));
        sym
    }

    pub fn parts(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> ElemSet {
        self.sets[i * self.m + j]
    }

    pub fn set(&mut self, i: usize, j: usize, s: ElemSet) {
        self.sets[i * self.m + j] = s;
    }

    /// Every set only uses elements of a group of the given order.
    pub fn check_over(&self, order: usize) -> Result<()> {
        let full = ElemSet::full(order);
        if self.sets.iter().all(|s| s.is_subset(full)) {
            Ok(())
        } else {
            Err(Error::MalformedInput("connection set element outside the group".into()))
        }
    }

    /// `S_{j,i} = S_{i,j}⁻¹` for all `i, j`.
    pub fn is_undirected(&self, g: &FiniteGroup) -> bool {
        (0..self.m).all(|i| (0..self.m).all(|j| self.get(j, i) == g.inverse_set(self.get(i, j))))
    }

    /// All diagonal sets are empty.
    pub fn is_partite(&self) -> bool {
        (0..self.m).all(|i| self.get(i, i).is_empty())
    }

    /// The same symbol with empty rows and columns appended up to `m_new` parts.
    pub fn padded(&self, m_new: usize) -> Result<Self> {
        if m_new < self.m {
            return Err(Error::MalformedInput(format!("cannot pad {} parts down to {m_new}", self.m)));
        }
        let mut out = ConnectionSymbol::empty(m_new);
        for i in 0..self.m {
            for j in 0..self.m {
                out.set(i, j, self.get(i, j));
            }
        }
        Ok(out)
    }
}

/// `Cay(G, S_{i,j} : i, j)` with its arc matrix.
#[derive(Clone, Debug)]
pub struct MCayleyDigraph {
    group: Arc<FiniteGroup>,
    symbol: ConnectionSymbol,
    adj: BitMatrix,
}

/// Builds the digraph with arcs `(x_i, (s x)_j)` for `s ∈ S_{i,j}`.
pub fn build_mcayley(g: &Arc<FiniteGroup>, sym: &ConnectionSymbol) -> Result<MCayleyDigraph> {
    sym.check_over(g.order())?;
    let n = g.order();
    let m = sym.parts();
    let mut adj = BitMatrix::new(m * n);
    for i in 0..m {
        for j in 0..m {
            for s in sym.get(i, j).iter() {
                for x in 0..n {
                    adj.set(i * n + x, j * n + g.mul(s, x));
                }
            }
        }
    }
    Ok(MCayleyDigraph { group: g.clone(), symbol: sym.clone(), adj })
}

/// `BCay(G, S)`.
pub fn build_bcay(g: &Arc<FiniteGroup>, s: ElemSet) -> Result<MCayleyDigraph> {
    build_mcayley(g, &ConnectionSymbol::bcay(g, s))
}

#[derive(Serialize)]
struct AdjacencyJson<'a> {
    group: &'a str,
    parts: usize,
    vertices: usize,
    rows: Vec<String>,
}

impl MCayleyDigraph {
    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn symbol(&self) -> &ConnectionSymbol {
        &self.symbol
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn parts(&self) -> usize {
        self.symbol.parts()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.size()
    }

    pub fn vertex(&self, part: usize, x: usize) -> usize {
        part * self.group.order() + x
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    /// Part index of every vertex.
    pub fn part_colors(&self) -> Vec<usize> {
        let n = self.group.order();
        (0..self.vertex_count()).map(|v| v / n).collect()
    }

    pub fn is_undirected(&self) -> bool {
        self.adj.is_symmetric()
    }

    /// Text form: a header line, then `S i j : labels` for each nonempty set (parts 1-based).
    pub fn to_text(&self) -> String {
        let g = &self.group;
        let m = self.parts();
        let mut out = format!("mcay m={m} n={} group={}\n", g.order(), g.name());
        for i in 0..m {
            for j in 0..m {
                let s = self.symbol.get(i, j);
                if !s.is_empty() {
                    out.push_str(&format!("S {} {} : {}\n", i + 1, j + 1, g.format_set(s)));
                }
            }
        }
        out
    }

    /// Parses the text form written by [`MCayleyDigraph::to_text`].
    pub fn from_text(text: &str) -> Result<MCayleyDigraph> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let header = lines.next().ok_or_else(|| Error::Parse("empty digraph file".into()))?;
        let mut fields = header.split_whitespace();
        if fields.next() != Some("mcay") {
            return Err(Error::Parse("digraph file must start with `mcay`".into()));
        }
        let (mut m, mut n, mut spec) = (None, None, None);
        for f in fields {
            match f.split_once('=') {
                Some(("m", v)) => m = v.parse::<usize>().ok(),
                Some(("n", v)) => n = v.parse::<usize>().ok(),
                Some(("group", v)) => spec = Some(v.to_string()),
                _ => return Err(Error::Parse(format!("unexpected header field `{f}`"))),
            }
        }
        let (m, spec) = match (m, spec) {
            (Some(m), Some(s)) if m > 0 => (m, s),
            _ => return Err(Error::Parse("header needs m=<parts> and group=<spec>".into())),
        };
        let g = Arc::new(named_group(&spec)?);
        if n.is_some_and(|n| n != g.order()) {
            return Err(Error::Parse(format!("header n does not match |{spec}| = {}", g.order())));
        }
        let mut sym = ConnectionSymbol::empty(m);
        for line in lines {
            let rest = line.strip_prefix('S').ok_or_else(|| Error::Parse(format!("bad line `{line}`")))?;
            let (idx, labels) = rest.split_once(':').ok_or_else(|| Error::Parse(format!("bad line `{line}`")))?;
            let ij: Vec<usize> = idx.split_whitespace().filter_map(|t| t.parse().ok()).collect();
            match ij[..] {
                [i, j] if (1..=m).contains(&i) && (1..=m).contains(&j) => {
                    sym.set(i - 1, j - 1, g.parse_set(labels)?);
                }
                _ => return Err(Error::Parse(format!("bad part indices in `{line}`"))),
            }
        }
        build_mcayley(&g, &sym)
    }

    /// Exact adjacency export, one `0`/`1` string per row.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(AdjacencyJson {
            group: self.group.name(),
            parts: self.parts(),
            vertices: self.vertex_count(),
            rows: self.adj.to_rows(),
        })
        .expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(spec).unwrap())
    }

    #[test]
    fn triangle_plus_isolated_vertices() {
        let g = grp("Z3");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::from_elems([1, 2]));
        let d = build_mcayley(&g, &sym).unwrap();
        assert_eq!(d.vertex_count(), 6);
        assert_eq!(d.adjacency().arc_count(), 6);
        for v in 3..6 {
            assert_eq!(d.adjacency().out_neighbors(v).count(), 0);
            assert!((0..6).all(|u| !d.has_arc(u, v)));
        }
        assert!(d.is_undirected());
    }

    #[test]
    fn trivial_group_single_arc() {
        let g = grp("Z1");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 1, ElemSet::singleton(0));
        let d = build_mcayley(&g, &sym).unwrap();
        assert_eq!(d.vertex_count(), 2);
        assert!(d.has_arc(0, 1) && !d.has_arc(1, 0));
    }

    #[test]
    fn full_set_gives_complete_bipartite() {
        let g = grp("Q8");
        let d = build_bcay(&g, g.all()).unwrap();
        for u in 0..16 {
            for v in 0..16 {
                assert_eq!(d.has_arc(u, v), (u < 8) != (v < 8));
            }
        }
    }

    #[test]
    fn undirected_flag_matches_symmetry() {
        let g = grp("D6");
        let s = ElemSet::from_elems([0, 1, 3]);
        let sym = ConnectionSymbol::bcay(&g, s);
        assert!(sym.is_undirected(&g) && sym.is_partite());
        assert!(build_mcayley(&g, &sym).unwrap().is_undirected());
        let mut one_way = ConnectionSymbol::empty(2);
        one_way.set(0, 1, s);
        assert!(!one_way.is_undirected(&g));
        assert!(!build_mcayley(&g, &one_way).unwrap().is_undirected());
    }

    #[test]
    fn padding_adds_isolated_parts() {
        let g = grp("Z3");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::from_elems([1, 2]));
        assert_eq!(sym.padded(2).unwrap(), sym);
        let padded = sym.padded(3).unwrap();
        let d = build_mcayley(&g, &padded).unwrap();
        assert_eq!(d.vertex_count(), 9);
        assert_eq!(d.adjacency().arc_count(), 6);
        assert!((0..3).all(|k| padded.get(2, k).is_empty() && padded.get(k, 2).is_empty()));
        assert!(sym.padded(1).is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = grp("Dic12");
        let s = g.parse_set("x^2,xy,xy^-1,x^-1,e,yx").unwrap();
        let d = build_bcay(&g, s).unwrap();
        let text = d.to_text();
        assert!(text.starts_with("mcay m=2 n=12 group=Dic12\n"));
        let back = MCayleyDigraph::from_text(&text).unwrap();
        assert_eq!(back.adjacency(), d.adjacency());
        assert!(MCayleyDigraph::from_text("mcay m=2 n=5 group=Z4\n").is_err());
        assert!(build_mcayley(&grp("Z2"), &ConnectionSymbol::bcay(&g, s)).is_err());
    }
}
