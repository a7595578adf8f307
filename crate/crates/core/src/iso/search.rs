//! Individualization-refinement search over ordered partitions.

use std::cmp::Ordering;
use std::collections::VecDeque;

use crate::bits::BitMatrix;
use crate::error::{Error, Result};

/// Stable 64-bit mixing for traces; independent of std's randomized hasher.
#[inline]
fn mix(h: u64, x: u64) -> u64 {
    let v = (h ^ x).wrapping_mul(0x0000_0100_0000_01b3);
    v ^ (v >> 29) ^ (v << 17)
}

const TRACE_SEED: u64 = 0xcbf2_9ce4_8422_2325;

/// Ordered partition of the vertices: cells are contiguous ranges of `elems`,
/// identified by their start position.
#[derive(Clone)]
struct Partition {
    elems: Vec<usize>,
    pos: Vec<usize>,
    cell: Vec<usize>,
    end: Vec<usize>,
    cells: usize,
}

impl Partition {
    /// Cells in ascending order of `colors`.
    fn from_colors(colors: &[usize]) -> Self {
        let n = colors.len();
        let mut elems: Vec<usize> = (0..n).collect();
        elems.sort_by_key(|&v| (colors[v], v));
        let mut pos = vec![0; n];
        let mut cell = vec![0; n];
        let mut end = vec![0; n + 1];
        let mut cells = 0;
        let mut s = 0;
        while s < n {
            let mut e = s;
            while e < n && colors[elems[e]] == colors[elems[s]] {
                e += 1;
            }
            for p in s..e {
                pos[elems[p]] = p;
                cell[elems[p]] = s;
            }
            end[s] = e;
            cells += 1;
            s = e;
        }
        Partition { elems, pos, cell, end, cells }
    }

    fn is_discrete(&self) -> bool {
        self.cells == self.elems.len()
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.cells);
        let mut s = 0;
        while s < self.elems.len() {
            out.push(s);
            s = self.end[s];
        }
        out
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        let mut best: Option<(usize, usize)> = None;
        let mut s = 0;
        while s < self.elems.len() {
            let size = self.end[s] - s;
            if size > 1 && best.is_none_or(|(_, b)| size < b) {
                best = Some((s, size));
            }
            s = self.end[s];
        }
        best.map(|(s, _)| s)
    }

    /// Splits `v` off the front of its cell; returns the new singleton's start.
    fn individualize(&mut self, v: usize) -> usize {
        let s = self.cell[v];
        let e = self.end[s];
        let p = self.pos[v];
        let u = self.elems[s];
        self.elems.swap(s, p);
        self.pos[u] = p;
        self.pos[v] = s;
        self.end[s] = s + 1;
        self.end[s + 1] = e;
        for q in s + 1..e {
            self.cell[self.elems[q]] = s + 1;
        }
        self.cells += 1;
        s
    }
}

pub(crate) struct Graph<'a> {
    pub adj: &'a BitMatrix,
    pub adj_t: BitMatrix,
    pub colors: &'a [usize],
}

impl Graph<'_> {
    fn n(&self) -> usize {
        self.colors.len()
    }

    /// Refines to the coarsest equitable partition (by in- and out-counts into
    /// each cell), returning a trace hash of every split made.
    fn refine(&self, p: &mut Partition, initial: &[usize], mut trace: u64) -> u64 {
        let n = self.n();
        let words = self.adj.words_per_row();
        let mut queue: VecDeque<usize> = initial.iter().copied().collect();
        let mut in_queue = vec![false; n + 1];
        for &s in initial {
            in_queue[s] = true;
        }
        let mut w_bits = vec![0u64; words];
        let mut keyed: Vec<(u64, usize)> = Vec::with_capacity(n);
        while let Some(w) = queue.pop_front() {
            in_queue[w] = false;
            if p.is_discrete() {
                break;
            }
            w_bits.iter_mut().for_each(|x| *x = 0);
            for q in w..p.end[w] {
                let v = p.elems[q];
                w_bits[v / 64] |= 1u64 << (v % 64);
            }
            let mut s = 0;
            while s < n {
                let e = p.end[s];
                if e - s == 1 {
                    s = e;
                    continue;
                }
                keyed.clear();
                for q in s..e {
                    let v = p.elems[q];
                    let out = count_and(self.adj.row(v), &w_bits);
                    let inn = count_and(self.adj_t.row(v), &w_bits);
                    keyed.push(((out << 32) | inn, v));
                }
                let k0 = keyed[0].0;
                if keyed.iter().all(|&(k, _)| k == k0) {
                    s = e;
                    continue;
                }
                keyed.sort_unstable();
                trace = mix(mix(trace, w as u64), s as u64);
                let was_queued = in_queue[s];
                let mut start = s;
                for idx in 0..keyed.len() {
                    let (k, v) = keyed[idx];
                    let q = s + idx;
                    p.elems[q] = v;
                    p.pos[v] = q;
                    if idx > 0 && keyed[idx - 1].0 != k {
                        p.end[start] = q;
                        trace = mix(mix(trace, (q - start) as u64), keyed[idx - 1].0);
                        if !(start == s && was_queued) {
                            queue.push_back(start);
                            in_queue[start] = true;
                        }
                        start = q;
                        p.cells += 1;
                    }
                    p.cell[v] = start;
                }
                p.end[start] = e;
                trace = mix(mix(trace, (e - start) as u64), keyed[keyed.len() - 1].0);
                queue.push_back(start);
                in_queue[start] = true;
                s = e;
            }
        }
        mix(trace, p.cells as u64)
    }

    fn certificate(&self, p: &Partition) -> Vec<u64> {
        let n = self.n();
        let words = n.div_ceil(64).max(1);
        let mut cert = vec![0u64; n * words];
        for (row, &v) in p.elems.iter().enumerate() {
            for w in self.adj.out_neighbors(v) {
                let c = p.pos[w];
                cert[row * words + c / 64] |= 1u64 << (c % 64);
            }
        }
        cert
    }
}

#[inline]
fn count_and(a: &[u64], b: &[u64]) -> u64 {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as u64).sum()
}

struct Leaf {
    /// Position → vertex.
    lab: Vec<usize>,
    /// Vertex → position.
    pos: Vec<usize>,
    cert: Vec<u64>,
    traces: Vec<u64>,
    path: Vec<usize>,
}

/// Result of a complete search.
pub(crate) struct SearchResult {
    /// Vertex → canonical position.
    pub canonical_pos: Vec<usize>,
    pub canonical_cert: Vec<u64>,
    /// Automorphisms as image arrays; together they generate the automorphism group.
    pub generators: Vec<Vec<usize>>,
    pub nodes: u64,
}

struct Searcher<'g, 'a> {
    graph: &'g Graph<'a>,
    first: Option<Leaf>,
    best: Option<Leaf>,
    /// Comparison of each node on the current path with the best leaf's trace prefix.
    cmp_stack: Vec<Ordering>,
    gens: Vec<Vec<usize>>,
    nodes: u64,
    budget: u64,
}

fn common_prefix(a: &[usize], b: &[usize]) -> usize {
    a.iter().zip(b).take_while(|(x, y)| x == y).count()
}

impl Searcher<'_, '_> {
    /// Explores the subtree below `part`. `Some(level)` asks the caller to
    /// unwind to the node at depth `level`.
    fn search(
        &mut self,
        part: &Partition,
        path: &mut Vec<usize>,
        traces: &mut Vec<u64>,
        eq_first: bool,
    ) -> Result<Option<usize>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded(format!("canonical labeling search exceeded {} nodes", self.budget)));
        }
        if part.is_discrete() {
            return Ok(self.leaf(part, path, traces, eq_first));
        }
        let depth = path.len();
        let target = part.target_cell().expect("non-discrete partition has a target cell");
        let mut children: Vec<usize> = part.elems[target..part.end[target]].to_vec();
        children.sort_unstable();
        let mut explored: Vec<usize> = Vec::new();
        for c in children {
            if !explored.is_empty() && self.in_explored_orbit(c, &explored, path) {
                continue;
            }
            explored.push(c);
            let mut child = part.clone();
            let s = child.individualize(c);
            let seed = mix(mix(TRACE_SEED, s as u64), (part.end[target] - target) as u64);
            let t = self.graph.refine(&mut child, &[s], seed);
            let child_eq_first = match &self.first {
                None => true,
                Some(f) => eq_first && f.traces.get(depth + 1) == Some(&t),
            };
            let parent_cmp = self.cmp_stack[depth];
            let child_cmp = match (&self.best, parent_cmp) {
                (None, _) => Ordering::Equal,
                (Some(b), Ordering::Equal) => match b.traces.get(depth + 1) {
                    Some(bt) => t.cmp(bt),
                    None => Ordering::Greater,
                },
                (Some(_), other) => other,
            };
            if self.first.is_some() && !child_eq_first && child_cmp == Ordering::Less {
                continue;
            }
            path.push(c);
            traces.push(t);
            self.cmp_stack.push(child_cmp);
            let jump = self.search(&child, path, traces, child_eq_first)?;
            self.cmp_stack.pop();
            traces.pop();
            path.pop();
            if let Some(level) = jump {
                if level < depth {
                    return Ok(Some(level));
                }
            }
        }
        Ok(None)
    }

    fn in_explored_orbit(&self, c: usize, explored: &[usize], path: &[usize]) -> bool {
        let usable: Vec<&Vec<usize>> = self.gens.iter().filter(|g| path.iter().all(|&v| g[v] == v)).collect();
        if usable.is_empty() {
            return false;
        }
        let mut seen = vec![false; self.graph.n()];
        let mut stack: Vec<usize> = explored.to_vec();
        for &e in explored {
            seen[e] = true;
        }
        while let Some(x) = stack.pop() {
            if x == c {
                return true;
            }
            for g in &usable {
                let y = g[x];
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        false
    }

    fn leaf(&mut self, part: &Partition, path: &[usize], traces: &[u64], eq_first: bool) -> Option<usize> {
        let cert = self.graph.certificate(part);
        let leaf =
            Leaf { lab: part.elems.clone(), pos: part.pos.clone(), cert, traces: traces.to_vec(), path: path.to_vec() };
        let Some(first) = &self.first else {
            self.best = Some(Leaf {
                lab: leaf.lab.clone(),
                pos: leaf.pos.clone(),
                cert: leaf.cert.clone(),
                traces: leaf.traces.clone(),
                path: leaf.path.clone(),
            });
            self.first = Some(leaf);
            return None;
        };
        if eq_first && first.traces == leaf.traces && first.cert == leaf.cert {
            let gamma = automorphism_between(&first.lab, &leaf.lab);
            let level = common_prefix(&first.path, path);
            self.add_generator(gamma);
            return Some(level);
        }
        let best = self.best.as_ref().expect("best is set with first");
        let depth = path.len();
        let cmp = self.cmp_stack[depth]
            .then_with(|| leaf.traces.len().cmp(&best.traces.len()))
            .then_with(|| leaf.cert.cmp(&best.cert));
        match cmp {
            Ordering::Equal => {
                let gamma = automorphism_between(&best.lab, &leaf.lab);
                let level = common_prefix(&best.path, path);
                self.add_generator(gamma);
                Some(level)
            }
            Ordering::Greater => {
                self.best = Some(leaf);
                self.cmp_stack.iter_mut().for_each(|c| *c = Ordering::Equal);
                None
            }
            Ordering::Less => None,
        }
    }

    fn add_generator(&mut self, gamma: Vec<usize>) {
        if gamma.iter().enumerate().any(|(i, &x)| i != x) && !self.gens.contains(&gamma) {
            self.gens.push(gamma);
        }
    }
}

/// The map sending `from[p]` to `to[p]` for every position `p`.
fn automorphism_between(from: &[usize], to: &[usize]) -> Vec<usize> {
    let mut gamma = vec![0; from.len()];
    for (p, &v) in from.iter().enumerate() {
        gamma[v] = to[p];
    }
    gamma
}

/// Runs the full search on a vertex-colored digraph with colors fixed.
pub(crate) fn run(adj: &BitMatrix, colors: &[usize], budget: u64) -> Result<SearchResult> {
    let graph = Graph { adj, adj_t: adj.transpose(), colors };
    let n = colors.len();
    if n == 0 {
        return Ok(SearchResult {
            canonical_pos: Vec::new(),
            canonical_cert: Vec::new(),
            generators: Vec::new(),
            nodes: 0,
        });
    }
    let mut root = Partition::from_colors(colors);
    let starts = root.cell_starts();
    let mut seed = TRACE_SEED;
    for &s in &starts {
        seed = mix(seed, (root.end[s] - s) as u64);
    }
    let t0 = graph.refine(&mut root, &starts, seed);
    let mut searcher = Searcher {
        graph: &graph,
        first: None,
        best: None,
        cmp_stack: vec![Ordering::Equal],
        gens: Vec::new(),
        nodes: 0,
        budget,
    };
    searcher.search(&root, &mut Vec::new(), &mut vec![t0], true)?;
    let best = searcher.best.take().expect("search reaches at least one leaf");
    Ok(SearchResult {
        canonical_pos: best.pos,
        canonical_cert: best.cert,
        generators: searcher.gens,
        nodes: searcher.nodes,
    })
}
