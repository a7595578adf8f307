//! Automorphism groups, canonical forms and isomorphisms of vertex-colored digraphs.
//!
//! Two color modes are supported. In [`ColorMode::Fixed`] every color class is
//! mapped to itself. In [`ColorMode::Permutable`] color classes may be mapped onto
//! each other as blocks; this is reduced to the fixed mode by adding one extra
//! vertex per color class with arcs to all vertices of that class.

mod search;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};
use crate::mcayley::MCayleyDigraph;
use crate::perm::{PermGroup, Permutation};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 160;

/// Default cap on search-tree nodes per canonical labeling.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

const CANON_VERSION: u8 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ColorMode {
    Fixed,
    Permutable,
}

/// A digraph whose vertices carry color indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColoredDigraph {
    adj: BitMatrix,
    colors: Vec<usize>,
}

impl ColoredDigraph {
    pub fn new(adj: BitMatrix, colors: Vec<usize>) -> Result<Self> {
        if adj.size() != colors.len() {
            return Err(Error::MalformedInput("color vector length differs from vertex count".into()));
        }
        Ok(ColoredDigraph { adj, colors })
    }

    /// All vertices the same color.
    pub fn uncolored(adj: BitMatrix) -> Self {
        let n = adj.size();
        ColoredDigraph { adj, colors: vec![0; n] }
    }

    /// Colors are the parts.
    pub fn from_mcayley(d: &MCayleyDigraph) -> Self {
        ColoredDigraph { adj: d.adjacency().clone(), colors: d.part_colors() }
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    /// Relabels vertices: vertex `v` becomes `p(v)`.
    pub fn relabeled(&self, p: &Permutation) -> ColoredDigraph {
        let mut colors = vec![0; self.colors.len()];
        for (v, &c) in self.colors.iter().enumerate() {
            colors[p.apply(v)] = c;
        }
        ColoredDigraph { adj: self.adj.permuted(p), colors }
    }

    /// Whether `p` is an isomorphism from `self` to `other` in the given mode.
    pub fn is_isomorphism_to(&self, other: &ColoredDigraph, p: &Permutation, mode: ColorMode) -> bool {
        let n = self.vertex_count();
        if other.vertex_count() != n || p.degree() != n || self.adj.permuted(p) != other.adj {
            return false;
        }
        match mode {
            ColorMode::Fixed => (0..n).all(|v| self.colors[v] == other.colors[p.apply(v)]),
            ColorMode::Permutable => {
                // the induced map on colors must be a well-defined bijection
                let mut fwd = std::collections::HashMap::new();
                let mut back = std::collections::HashMap::new();
                (0..n).all(|v| {
                    let (a, b) = (self.colors[v], other.colors[p.apply(v)]);
                    *fwd.entry(a).or_insert(b) == b && *back.entry(b).or_insert(a) == a
                })
            }
        }
    }

    /// The graph the search runs on: itself in fixed mode, or with one marker
    /// vertex per color class in permutable mode.
    fn search_input(&self, mode: ColorMode) -> (BitMatrix, Vec<usize>) {
        match mode {
            ColorMode::Fixed => (self.adj.clone(), self.colors.clone()),
            ColorMode::Permutable => {
                let n = self.vertex_count();
                let mut classes: Vec<usize> = self.colors.clone();
                classes.sort_unstable();
                classes.dedup();
                let total = n + classes.len();
                let mut adj = BitMatrix::new(total);
                for u in 0..n {
                    for v in self.adj.out_neighbors(u) {
                        adj.set(u, v);
                    }
                }
                for v in 0..n {
                    let k = classes.binary_search(&self.colors[v]).expect("present");
                    adj.set(n + k, v);
                }
                let mut colors = vec![0; n];
                colors.extend(std::iter::repeat_n(1, classes.len()));
                (adj, colors)
            }
        }
    }
}

/// Canonical labeling with the automorphisms found along the way.
#[derive(Clone, Debug)]
pub struct CanonicalForm {
    /// Vertex `v` goes to canonical position `labeling(v)`.
    pub labeling: Permutation,
    /// Equal for two colored digraphs exactly when they are isomorphic in the same mode.
    pub bytes: Vec<u8>,
    pub automorphism_generators: Vec<Permutation>,
    pub search_nodes: u64,
}

impl CanonicalForm {
    pub fn hex(&self) -> String {
        self.bytes.iter().map(|b| format!("{b:02x}")).collect()
    }
}

fn check_size(d: &ColoredDigraph) -> Result<()> {
    if d.vertex_count() > MAX_VERTICES {
        return Err(Error::cap("digraph vertex count", MAX_VERTICES as u128, d.vertex_count() as u128));
    }
    Ok(())
}

/// Canonical form with the default node budget.
pub fn canonical(d: &ColoredDigraph, mode: ColorMode) -> Result<CanonicalForm> {
    canonical_with_budget(d, mode, DEFAULT_NODE_BUDGET)
}

pub fn canonical_with_budget(d: &ColoredDigraph, mode: ColorMode, budget: u64) -> Result<CanonicalForm> {
    check_size(d)?;
    let n = d.vertex_count();
    let (adj, colors) = d.search_input(mode);
    let res = search::run(&adj, &colors, budget)?;
    let total = colors.len();

    let labeling = Permutation::from_images(res.canonical_pos[..n].to_vec())?;
    let mut generators = Vec::new();
    for g in &res.generators {
        let p = Permutation::from_images(g[..n].to_vec())?;
        if !p.is_identity() && !generators.contains(&p) {
            generators.push(p);
        }
    }

    // version, mode, original and searched vertex counts, colors by canonical
    // position, then the canonical adjacency packed row-major, least significant bit first
    let mut bytes = vec![CANON_VERSION, matches!(mode, ColorMode::Permutable) as u8];
    bytes.extend_from_slice(&(n as u32).to_le_bytes());
    bytes.extend_from_slice(&(total as u32).to_le_bytes());
    let mut by_pos = vec![0usize; total];
    for v in 0..total {
        by_pos[res.canonical_pos[v]] = v;
    }
    if mode == ColorMode::Fixed {
        for &v in &by_pos {
            bytes.extend_from_slice(&(colors[v] as u32).to_le_bytes());
        }
    } else {
        for &v in &by_pos {
            bytes.push(colors[v] as u8);
        }
    }
    let words = total.div_ceil(64).max(1);
    let mut acc = 0u8;
    let mut nbits = 0;
    for row in 0..total {
        for col in 0..total {
            let bit = res.canonical_cert[row * words + col / 64] >> (col % 64) & 1;
            acc |= (bit as u8) << nbits;
            nbits += 1;
            if nbits == 8 {
                bytes.push(acc);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        bytes.push(acc);
    }
    Ok(CanonicalForm { labeling, bytes, automorphism_generators: generators, search_nodes: res.nodes })
}

/// The full automorphism group in the given mode; every generator is checked
/// to preserve the arcs and the color mode.
pub fn automorphisms(d: &ColoredDigraph, mode: ColorMode) -> Result<PermGroup> {
    let cf = canonical(d, mode)?;
    for g in &cf.automorphism_generators {
        if !d.is_isomorphism_to(d, g, mode) {
            return Err(Error::Internal("search produced a non-automorphism".into()));
        }
    }
    PermGroup::new(d.vertex_count(), cf.automorphism_generators)
}

/// An isomorphism `d1 → d2` in the given mode, verified before it is returned.
pub fn find_isomorphism(d1: &ColoredDigraph, d2: &ColoredDigraph, mode: ColorMode) -> Result<Option<Permutation>> {
    if d1.vertex_count() != d2.vertex_count() {
        return Ok(None);
    }
    let c1 = canonical(d1, mode)?;
    let c2 = canonical(d2, mode)?;
    if c1.bytes != c2.bytes {
        return Ok(None);
    }
    let iso = c1.labeling.then(&c2.labeling.inverse());
    if !d1.is_isomorphism_to(d2, &iso, mode) {
        return Err(Error::Internal("canonical labelings do not compose to an isomorphism".into()));
    }
    Ok(Some(iso))
}

#[cfg(test)]
mod tests {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    fn digraph(n: usize, arcs: &[(usize, usize)]) -> BitMatrix {
        let mut m = BitMatrix::new(n);
        for &(u, v) in arcs {
            m.set(u, v);
        }
        m
    }

    fn undirected(n: usize, edges: &[(usize, usize)]) -> BitMatrix {
        let mut m = BitMatrix::new(n);
        for &(u, v) in edges {
            m.set(u, v);
            m.set(v, u);
        }
        m
    }

    fn cycle(n: usize) -> Vec<(usize, usize)> {
        (0..n).map(|i| (i, (i + 1) % n)).collect()
    }

    /// Oracle: count all permutations preserving arcs and colors.
    fn brute_force_aut_order(d: &ColoredDigraph, mode: ColorMode) -> u128 {
        let n = d.vertex_count();
        let mut images: Vec<usize> = (0..n).collect();
        let mut count = 0;
        loop {
            let p = Permutation::from_images(images.clone()).unwrap();
            if d.is_isomorphism_to(d, &p, mode) {
                count += 1;
            }
            let Some(i) = (1..n).rev().find(|&i| images[i - 1] < images[i]) else {
                break;
            };
            let j = (i..n).rev().find(|&j| images[j] > images[i - 1]).unwrap();
            images.swap(i - 1, j);
            images[i..].reverse();
        }
        count
    }

    fn random_perm(n: usize, rng: &mut ChaCha8Rng) -> Permutation {
        let mut v: Vec<usize> = (0..n).collect();
        v.shuffle(rng);
        Permutation::from_images(v).unwrap()
    }

    #[test]
    fn directed_three_cycle() {
        let d = ColoredDigraph::uncolored(digraph(3, &cycle(3)));
        assert_eq!(automorphisms(&d, ColorMode::Fixed).unwrap().order(), 3);
    }

    #[test]
    fn complete_bipartite_orders() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in 4..8 {
                edges.push((u, v));
            }
        }
        let colors = (0..8).map(|v| v / 4).collect();
        let d = ColoredDigraph::new(undirected(8, &edges), colors).unwrap();
        assert_eq!(automorphisms(&d, ColorMode::Fixed).unwrap().order(), 576);
        assert_eq!(automorphisms(&d, ColorMode::Permutable).unwrap().order(), 1152);
        let plain = ColoredDigraph::uncolored(d.adjacency().clone());
        assert_eq!(automorphisms(&plain, ColorMode::Fixed).unwrap().order(), 1152);
    }

    #[test]
    fn small_graphs_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for trial in 0..40 {
            let n = 3 + trial % 5;
            let mut m = BitMatrix::new(n);
            for u in 0..n {
                for v in 0..n {
                    if u != v && rand::Rng::gen_bool(&mut rng, 0.4) {
                        m.set(u, v);
                    }
                }
            }
            let colors: Vec<usize> = (0..n).map(|v| if trial % 3 == 0 { v % 2 } else { 0 }).collect();
            let d = ColoredDigraph::new(m, colors).unwrap();
            for mode in [ColorMode::Fixed, ColorMode::Permutable] {
                assert_eq!(automorphisms(&d, mode).unwrap().order(), brute_force_aut_order(&d, mode), "trial {trial}");
            }
        }
    }

    #[test]
    fn canonical_bytes_are_label_invariant() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let petersen_edges: Vec<(usize, usize)> =
            (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]).collect();
        let graphs = [
            ColoredDigraph::uncolored(undirected(10, &petersen_edges)),
            ColoredDigraph::new(
                digraph(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3)]),
                vec![0, 0, 0, 1, 1, 1],
            )
            .unwrap(),
        ];
        for d in &graphs {
            for mode in [ColorMode::Fixed, ColorMode::Permutable] {
                let base = canonical(d, mode).unwrap();
                for _ in 0..50 {
                    let p = random_perm(d.vertex_count(), &mut rng);
                    let e = d.relabeled(&p);
                    assert_eq!(canonical(&e, mode).unwrap().bytes, base.bytes);
                    let iso = find_isomorphism(d, &e, mode).unwrap().unwrap();
                    assert!(d.is_isomorphism_to(&e, &iso, mode));
                }
            }
        }
        assert_eq!(automorphisms(&graphs[0], ColorMode::Fixed).unwrap().order(), 120);
    }

    #[test]
    fn six_cycle_versus_two_triangles() {
        let c6 = ColoredDigraph::uncolored(undirected(6, &cycle(6)));
        let two = ColoredDigraph::uncolored(undirected(6, &[(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)]));
        assert_ne!(canonical(&c6, ColorMode::Fixed).unwrap().bytes, canonical(&two, ColorMode::Fixed).unwrap().bytes);
        assert!(find_isomorphism(&c6, &two, ColorMode::Fixed).unwrap().is_none());
        assert_eq!(
            find_isomorphism(&c6, &c6, ColorMode::Fixed).unwrap().map(|p| c6.is_isomorphism_to(
                &c6,
                &p,
                ColorMode::Fixed
            )),
            Some(true)
        );
    }

    #[test]
    fn color_swap_needs_permutable_mode() {
        let adj = digraph(4, &[(0, 2), (1, 3)]);
        let d1 = ColoredDigraph::new(adj.clone(), vec![0, 0, 1, 1]).unwrap();
        let d2 = ColoredDigraph::new(digraph(4, &[(2, 0), (3, 1)]), vec![0, 0, 1, 1]).unwrap();
        let swapped = ColoredDigraph::new(adj, vec![1, 1, 0, 0]).unwrap();
        assert!(find_isomorphism(&d1, &swapped, ColorMode::Fixed).unwrap().is_none());
        assert!(find_isomorphism(&d1, &swapped, ColorMode::Permutable).unwrap().is_some());
        assert!(find_isomorphism(&d1, &d2, ColorMode::Fixed).unwrap().is_none());
        assert!(find_isomorphism(&d1, &d2, ColorMode::Permutable).unwrap().is_some());
    }

    #[test]
    fn size_cap() {
        let d = ColoredDigraph::uncolored(BitMatrix::new(MAX_VERTICES + 1));
        assert!(matches!(canonical(&d, ColorMode::Fixed), Err(Error::CapExceeded { .. })));
    }
}
