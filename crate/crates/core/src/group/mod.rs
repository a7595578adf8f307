//! Finite groups of order at most 64 as multiplication tables.

mod aut;
mod named;
mod parse;
mod predicates;
mod set;
mod subgroups;

pub use aut::{group_isomorphic, GroupMap, AUT_LIST_CAP};
pub use named::named_group;
pub use predicates::{SubgroupEquivalence, SylowReport, SylowVerdict};
pub use set::{ElemIter, ElemSet, Subsets};
pub use subgroups::Subgroup;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Largest supported group order.
pub const MAX_ORDER: usize = 64;

/// How element labels are written and read back.
#[derive(Clone, Debug)]
pub(crate) enum LabelStyle {
    /// Cyclic group: residues `0..n`, or powers of `x`.
    Residues,
    /// Products of generator powers, e.g. `a^2bc` or `e1x`.
    Words { gens: Vec<(String, usize)> },
    /// Permutations in 1-based cycle notation.
    Cycles,
    /// Tuples over direct factors, e.g. `(i,1)`.
    Tuples { factors: Vec<Arc<FiniteGroup>> },
    /// Only the stored labels are understood.
    Plain,
}

/// A finite group given by its full multiplication table; element 0 is the identity.
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<u8>,
    inv: Vec<u8>,
    labels: Vec<String>,
    label_index: HashMap<String, usize>,
    pub(crate) style: LabelStyle,
    perms: Option<Vec<Permutation>>,
    pub(crate) aut_cache: OnceLock<Option<Arc<Vec<GroupMap>>>>,
    pub(crate) aut_chain: OnceLock<Arc<aut::AutChain>>,
    pub(crate) subgroup_cache: OnceLock<Arc<Vec<Subgroup>>>,
}

impl Clone for FiniteGroup {
    fn clone(&self) -> Self {
        FiniteGroup {
            name: self.name.clone(),
            order: self.order,
            table: self.table.clone(),
            inv: self.inv.clone(),
            labels: self.labels.clone(),
            label_index: self.label_index.clone(),
            style: self.style.clone(),
            perms: self.perms.clone(),
            aut_cache: OnceLock::new(),
            aut_chain: OnceLock::new(),
            subgroup_cache: OnceLock::new(),
        }
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup").field("name", &self.name).field("order", &self.order).finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a product function, checking the group axioms.
    ///
    /// `mul(a, b)` must return the index of `a·b`; element 0 must be the identity.
    pub(crate) fn from_fn(
        name: impl Into<String>,
        order: usize,
        mul: impl Fn(usize, usize) -> usize,
        labels: Vec<String>,
        style: LabelStyle,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(Error::Internal(format!("product {a}*{b} out of range")));
                }
                table.push(c as u8);
            }
        }
        Self::from_table(name, order, table, labels, style, None)
    }

    pub(crate) fn from_table(
        name: impl Into<String>,
        order: usize,
        table: Vec<u8>,
        labels: Vec<String>,
        style: LabelStyle,
        perms: Option<Vec<Permutation>>,
    ) -> Result<Self> {
        let name = name.into();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::MalformedInput(format!("group order {order} outside 1..={MAX_ORDER}")));
        }
        if table.len() != order * order || labels.len() != order {
            return Err(Error::Internal("table or label size mismatch".into()));
        }
        let at = |a: usize, b: usize| table[a * order + b] as usize;
        for x in 0..order {
            if at(0, x) != x || at(x, 0) != x {
                return Err(Error::Internal(format!("{name}: element 0 is not the identity")));
            }
        }
        let mut inv = vec![0u8; order];
        for x in 0..order {
            let mut found = None;
            for y in 0..order {
                if at(x, y) == 0 {
                    if at(y, x) != 0 || found.is_some() {
                        return Err(Error::Internal(format!("{name}: inverse law fails at {x}")));
                    }
                    found = Some(y);
                }
            }
            inv[x] = found.ok_or_else(|| Error::Internal(format!("{name}: {x} has no inverse")))? as u8;
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(Error::Internal(format!("{name}: associativity fails")));
                    }
                }
            }
        }
        let mut label_index = HashMap::new();
        for (i, l) in labels.iter().enumerate() {
            if label_index.insert(l.clone(), i).is_some() {
                return Err(Error::Internal(format!("{name}: duplicate label {l}")));
            }
        }
        Ok(FiniteGroup {
            name,
            order,
            table,
            inv,
            labels,
            label_index,
            style,
            perms,
            aut_cache: OnceLock::new(),
            aut_chain: OnceLock::new(),
            subgroup_cache: OnceLock::new(),
        })
    }

    /// Group generated by permutations of `{0..degree}`; elements are ordered by
    /// image array so the identity comes first.
    pub fn from_permutations(name: impl Into<String>, degree: usize, gens: &[Permutation]) -> Result<Self> {
        let id = Permutation::identity(degree);
        let mut elems = vec![id.clone()];
        let mut index: HashMap<Permutation, usize> = HashMap::from([(id, 0)]);
        let mut pos = 0;
        while pos < elems.len() {
            for g in gens {
                let y = elems[pos].then(g);
                if !index.contains_key(&y) {
                    if elems.len() >= MAX_ORDER {
                        return Err(Error::cap("permutation group order", MAX_ORDER as u128, elems.len() as u128 + 1));
                    }
                    index.insert(y.clone(), elems.len());
                    elems.push(y);
                }
            }
            pos += 1;
        }
        elems.sort();
        let index: HashMap<Permutation, usize> = elems.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let n = elems.len();
        let mut table = Vec::with_capacity(n * n);
        for a in &elems {
            for b in &elems {
                table.push(index[&a.then(b)] as u8);
            }
        }
        let labels = elems.iter().map(cycle_label).collect();
        Self::from_table(name, n, table, labels, LabelStyle::Cycles, Some(elems))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub(crate) fn set_name(&mut self, name: impl Into<String>) {
        self.name = name.into();
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() % self.element_order(a) as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    /// `x⁻¹ a x`.
    pub fn conj(&self, a: usize, x: usize) -> usize {
        self.mul(self.mul(self.inv(x), a), x)
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn all(&self) -> ElemSet {
        ElemSet::full(self.order)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// The permutation realising element `a`, for groups built from permutations.
    pub fn permutation(&self, a: usize) -> Option<&Permutation> {
        self.perms.as_ref().map(|p| &p[a])
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1, |acc, a| {
            let o = self.element_order(a);
            acc / gcd(acc, o) * o
        })
    }

    /// Histogram of element orders, indexed by order.
    pub fn order_histogram(&self) -> Vec<usize> {
        let mut h = vec![0; self.order + 1];
        for a in 0..self.order {
            h[self.element_order(a)] += 1;
        }
        h
    }

    // ---- set operations --------------------------------------------------

    /// `g·S`.
    pub fn left_translate(&self, g: usize, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.mul(g, x)).collect()
    }

    /// `S·g`.
    pub fn right_translate(&self, s: ElemSet, g: usize) -> ElemSet {
        s.iter().map(|x| self.mul(x, g)).collect()
    }

    pub fn inverse_set(&self, s: ElemSet) -> ElemSet {
        s.iter().map(|x| self.inv(x)).collect()
    }

    /// `S·T`.
    pub fn product_set(&self, s: ElemSet, t: ElemSet) -> ElemSet {
        let mut out = ElemSet::EMPTY;
        for x in s.iter() {
            for y in t.iter() {
                out = out.with(self.mul(x, y));
            }
        }
        out
    }

    /// Subgroup generated by `s`.
    pub fn closure(&self, s: ElemSet) -> ElemSet {
        let gens: Vec<usize> = s.iter().filter(|&x| x != 0).collect();
        let mut members = ElemSet::singleton(0);
        let mut queue = vec![0usize];
        while let Some(x) = queue.pop() {
            for &g in &gens {
                let y = self.mul(x, g);
                if !members.contains(y) {
                    members = members.with(y);
                    queue.push(y);
                }
            }
        }
        members
    }

    /// Greedy generating sequence: repeatedly adds the element that enlarges
    /// the generated subgroup the most (ties broken by least index).
    pub fn generating_sequence(&self) -> Vec<usize> {
        let mut seq = Vec::new();
        let mut current = ElemSet::singleton(0);
        while current.len() < self.order {
            let mut best = (0, usize::MAX);
            for x in 0..self.order {
                if current.contains(x) {
                    continue;
                }
                let size = self.closure(current.with(x)).len();
                if size > best.0 {
                    best = (size, x);
                }
            }
            seq.push(best.1);
            current = self.closure(current.with(best.1));
        }
        seq
    }

    // ---- labels ------------------------------------------------------------

    /// Parses one element label in this group's canonical labelling.
    pub fn parse_element(&self, text: &str) -> Result<usize> {
        parse::parse_element(self, text)
    }

    /// Parses a comma-separated set of labels (commas inside parentheses do not split).
    pub fn parse_set(&self, text: &str) -> Result<ElemSet> {
        let mut out = ElemSet::EMPTY;
        for item in parse::split_top_level(text) {
            out = out.with(self.parse_element(&item)?);
        }
        Ok(out)
    }

    pub fn format_set(&self, s: ElemSet) -> String {
        s.iter().map(|x| self.labels[x].clone()).collect::<Vec<_>>().join(",")
    }

    pub(crate) fn lookup_label(&self, text: &str) -> Option<usize> {
        self.label_index.get(text).copied()
    }

    /// Permutation groups only: index of a permutation on the realisation's points.
    pub(crate) fn lookup_permutation(&self, p: &Permutation) -> Option<usize> {
        let perms = self.perms.as_ref()?;
        perms.binary_search(p).ok()
    }

    /// Subgroup given by `members` as a group in its own right, with the
    /// embedding of its elements into `self`.
    pub fn subgroup_as_group(&self, members: ElemSet) -> Result<(FiniteGroup, Vec<usize>)> {
        if !members.contains(0) || self.closure(members) != members {
            return Err(Error::MalformedInput("set is not a subgroup".into()));
        }
        let embed: Vec<usize> = members.to_vec();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &x) in embed.iter().enumerate() {
            pos[x] = i;
        }
        let n = embed.len();
        let labels = embed.iter().map(|&x| self.labels[x].clone()).collect();
        let g = FiniteGroup::from_fn(
            format!("subgroup of {}", self.name),
            n,
            |a, b| pos[self.mul(embed[a], embed[b])],
            labels,
            LabelStyle::Plain,
        )?;
        Ok((g, embed))
    }

    /// JSON export of the multiplication table.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct TableJson<'a> {
            name: &'a str,
            order: usize,
            labels: &'a [String],
            table: Vec<Vec<u8>>,
        }
        serde_json::to_value(TableJson {
            name: &self.name,
            order: self.order,
            labels: &self.labels,
            table: self.table.chunks(self.order).map(|r| r.to_vec()).collect(),
        })
        .expect("serializable")
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// 1-based cycle notation, points run together when all are single digits.
pub(crate) fn cycle_label(p: &Permutation) -> String {
    let cycles = p.cycles();
    if cycles.is_empty() {
        return "e".to_string();
    }
    let compact = p.degree() <= 9;
    cycles
        .iter()
        .map(|c| {
            let pts: Vec<String> = c.iter().map(|x| (x + 1).to_string()).collect();
            format!("({})", pts.join(if compact { "" } else { " " }))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutation_group_labels() {
        let a = Permutation::from_cycles(4, &[vec![0, 1, 2]]).unwrap();
        let b = Permutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
        let g = FiniteGroup::from_permutations("A4", 4, &[a, b]).unwrap();
        assert_eq!(g.order(), 12);
        assert_eq!(g.label(0), "e");
        let x = g.parse_element("(143)").unwrap();
        assert_eq!(g.label(x), "(143)");
        assert_eq!(g.element_order(x), 3);
        assert_eq!(g.parse_element("(13)(24)").map(|y| g.element_order(y)).unwrap(), 2);
    }

    #[test]
    fn closure_and_generating_sequence() {
        let g = named_group("Z4xZ2").unwrap();
        let seq = g.generating_sequence();
        assert_eq!(seq.len(), 2);
        assert_eq!(g.closure(ElemSet::from_elems(seq.iter().copied())).len(), 8);
    }

    #[test]
    fn subgroup_as_group_keeps_labels() {
        let g = named_group("Z6").unwrap();
        let h = g.closure(ElemSet::singleton(2));
        let (sub, embed) = g.subgroup_as_group(h).unwrap();
        assert_eq!(sub.order(), 3);
        assert_eq!(embed, vec![0, 2, 4]);
        assert_eq!(sub.label(1), "2");
    }
}
