//! Group-level predicates: subgroup equivalence under automorphisms,
//! iso-groups, FIF-groups, homogeneity and the Sylow screen for 2PCI-groups.

use std::collections::HashMap;

use serde::Serialize;

use super::aut::orbit_under;
use super::{group_isomorphic, ElemSet, FiniteGroup};
use crate::error::{Error, Result};

/// Outcome of checking that same-order subgroups are `Aut(G)`-equivalent.
#[derive(Clone, Debug, Serialize)]
pub struct SubgroupEquivalence {
    /// `(order, number of subgroups, number of Aut(G)-orbits)` for every subgroup order.
    pub per_order: Vec<(usize, usize, usize)>,
    /// Two subgroups of equal order in different orbits, as member lists.
    pub failing_pair: Option<(Vec<usize>, Vec<usize>)>,
}

/// Verdict for one prime dividing `|G|`.
#[derive(Clone, Debug, Serialize)]
pub struct SylowVerdict {
    pub prime: usize,
    pub order: usize,
    /// Isomorphism type of the Sylow subgroup, e.g. `Z3^2`, `Z4`, `Q8`, `D8`.
    pub kind: String,
    pub allowed: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct SylowReport {
    pub solvable: bool,
    pub primes: Vec<SylowVerdict>,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let next = self.0[y];
            self.0[y] = r;
            y = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn prime_factors(mut n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        let mut k = 0;
        while n.is_multiple_of(p) {
            n /= p;
            k += 1;
        }
        if k > 0 {
            out.push((p, k));
        }
        p += 1;
    }
    out
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

impl FiniteGroup {
    /// Union-find of the subgroup list under the automorphism generators.
    fn subgroup_aut_orbits(&self) -> (Vec<ElemSet>, UnionFind) {
        let subs: Vec<ElemSet> = self.all_subgroups().iter().map(|s| s.members).collect();
        let index: HashMap<ElemSet, usize> = subs.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let mut uf = UnionFind::new(subs.len());
        for a in self.automorphism_generators() {
            for (i, &s) in subs.iter().enumerate() {
                uf.union(i, index[&a.map_set(s)]);
            }
        }
        (subs, uf)
    }

    /// Whether any two subgroups of the same order are equivalent under `Aut(G)`.
    pub fn same_order_subgroups_aut_equivalent(&self) -> (bool, SubgroupEquivalence) {
        let (subs, mut uf) = self.subgroup_aut_orbits();
        let mut per_order: Vec<(usize, usize, usize)> = Vec::new();
        let mut failing_pair = None;
        let mut first_of_order: HashMap<usize, usize> = HashMap::new();
        let mut roots: HashMap<usize, Vec<usize>> = HashMap::new();
        for (i, s) in subs.iter().enumerate() {
            let r = uf.find(i);
            let first = *first_of_order.entry(s.len()).or_insert(i);
            if failing_pair.is_none() && uf.find(first) != r {
                failing_pair = Some((subs[first].to_vec(), s.to_vec()));
            }
            let rs = roots.entry(s.len()).or_default();
            if !rs.contains(&r) {
                rs.push(r);
            }
        }
        let mut orders: Vec<usize> = first_of_order.keys().copied().collect();
        orders.sort_unstable();
        for o in orders {
            let count = subs.iter().filter(|s| s.len() == o).count();
            per_order.push((o, count, roots[&o].len()));
        }
        (failing_pair.is_none(), SubgroupEquivalence { per_order, failing_pair })
    }

    /// Any two subgroups of the same order are isomorphic.
    pub fn is_iso_group(&self) -> Result<bool> {
        let subs = self.all_subgroups();
        let mut first_of_order: HashMap<usize, FiniteGroup> = HashMap::new();
        for s in subs.iter() {
            let (h, _) = self.subgroup_as_group(s.members)?;
            match first_of_order.get(&s.order()) {
                None => {
                    first_of_order.insert(s.order(), h);
                }
                Some(rep) => {
                    if group_isomorphic(rep, &h).is_none() {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// For all elements `x, y` of equal order some automorphism maps `x` to `y` or to `y⁻¹`.
    pub fn is_fif_group(&self) -> bool {
        let gens = self.automorphism_generators();
        let mut orbit_id = vec![usize::MAX; self.order()];
        for x in self.elements() {
            if orbit_id[x] == usize::MAX {
                for y in orbit_under(ElemSet::singleton(x), &gens).iter() {
                    orbit_id[y] = x;
                }
            }
        }
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.element_order(x) != self.element_order(y)
                    || orbit_id[x] == orbit_id[y]
                    || orbit_id[x] == orbit_id[self.inv(y)]
            })
        })
    }

    /// Every isomorphism between two subgroups extends to an automorphism of the group.
    ///
    /// Checked as: isomorphic subgroups lie in one `Aut(G)`-orbit, and for each
    /// orbit representative `M` the stabiliser `Aut(G)_M` restricts onto `Aut(M)`.
    pub fn is_homogeneous(&self) -> Result<bool> {
        const HOMOGENEITY_ORDER_CAP: usize = 32;
        if self.order() > HOMOGENEITY_ORDER_CAP {
            return Err(Error::cap(
                "homogeneity check group order",
                HOMOGENEITY_ORDER_CAP as u128,
                self.order() as u128,
            ));
        }
        let auts = self.automorphisms()?;
        let (subs, mut uf) = self.subgroup_aut_orbits();
        let as_groups: Vec<(FiniteGroup, Vec<usize>)> =
            subs.iter().map(|&s| self.subgroup_as_group(s)).collect::<Result<_>>()?;
        for i in 0..subs.len() {
            for j in i + 1..subs.len() {
                if subs[i].len() == subs[j].len()
                    && uf.find(i) != uf.find(j)
                    && group_isomorphic(&as_groups[i].0, &as_groups[j].0).is_some()
                {
                    return Ok(false);
                }
            }
        }
        for i in 0..subs.len() {
            if uf.find(i) != i {
                continue;
            }
            let (sub, embed) = &as_groups[i];
            let mut restrictions: std::collections::HashSet<Vec<usize>> = std::collections::HashSet::new();
            for a in auts.iter() {
                if a.map_set(subs[i]) == subs[i] {
                    restrictions.insert(embed.iter().map(|&x| a.apply(x)).collect());
                }
            }
            if restrictions.len() as u128 != sub.aut_order() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All index-2 subgroups form one `Aut(G)`-orbit (vacuously true when there are none).
    pub fn index2_subgroups_equivalent(&self) -> bool {
        if !self.order().is_multiple_of(2) {
            return true;
        }
        let (subs, mut uf) = self.subgroup_aut_orbits();
        let idx: Vec<usize> = (0..subs.len()).filter(|&i| subs[i].len() * 2 == self.order()).collect();
        idx.windows(2).all(|w| uf.find(w[0]) == uf.find(w[1]))
    }

    /// A Sylow `p`-subgroup, found by one greedy pass: an element is adjoined
    /// whenever the result is still a `p`-group. An element rejected early stays
    /// rejected later, so the result is a maximal `p`-subgroup, hence Sylow.
    pub fn sylow_subgroup(&self, p: usize) -> ElemSet {
        let mut current = ElemSet::singleton(0);
        for x in self.elements() {
            if current.contains(x) || !is_power_of(self.element_order(x), p) {
                continue;
            }
            let next = self.closure(current.with(x));
            if is_power_of(next.len(), p) {
                current = next;
            }
        }
        current
    }

    /// Necessary conditions for a 2PCI-group: solvable, the Sylow 3-subgroup is
    /// `Z3`, `Z3^2` or `Z9`, and every other Sylow subgroup is elementary abelian,
    /// `Z4` or `Q8`.
    pub fn sylow_condition_2pci(&self) -> (bool, SylowReport) {
        let solvable = self.is_solvable();
        let mut primes = Vec::new();
        for (p, k) in prime_factors(self.order()) {
            let members = self.sylow_subgroup(p);
            debug_assert_eq!(members.len(), p.pow(k as u32));
            let (sub, _) = self.subgroup_as_group(members).expect("Sylow subgroup is a subgroup");
            let kind = describe_p_group(&sub, p);
            let elementary = sub.is_abelian() && sub.exponent() == p;
            let allowed = if p == 3 {
                matches!(kind.as_str(), "Z3" | "Z3^2" | "Z9")
            } else {
                elementary || kind == "Z4" || kind == "Q8"
            };
            primes.push(SylowVerdict { prime: p, order: members.len(), kind, allowed });
        }
        let pass = solvable && primes.iter().all(|v| v.allowed);
        (pass, SylowReport { solvable, primes })
    }
}

/// Names a `p`-group: abelian invariants such as `Z4xZ2` or `Z3^2`, or `Q8`/`D8`.
fn describe_p_group(g: &FiniteGroup, p: usize) -> String {
    let n = g.order();
    if n == 1 {
        return "Z1".to_string();
    }
    if g.is_abelian() {
        // count elements with order dividing p^j to read off the invariant factors
        let hist = g.order_histogram();
        let mut counts = vec![1usize];
        let mut q = 1;
        while counts.last() != Some(&n) {
            q *= p;
            counts.push((1..=q).filter(|d| q % d == 0).map(|d| hist.get(d).copied().unwrap_or(0)).sum());
        }
        // log_p counts[j] = sum_i min(j, λ_i); the number of λ_i ≥ j is the first difference
        let logs: Vec<usize> = counts.iter().map(|&c| (c as f64).log(p as f64).round() as usize).collect();
        let ge: Vec<usize> = logs.windows(2).map(|w| w[1] - w[0]).collect();
        let mut factors: Vec<(usize, usize)> = Vec::new();
        for j in 1..=ge.len() {
            let exactly = ge[j - 1] - ge.get(j).copied().unwrap_or(0);
            if exactly > 0 {
                factors.push((p.pow(j as u32), exactly));
            }
        }
        factors.reverse();
        return factors
            .iter()
            .map(|&(m, k)| if k == 1 { format!("Z{m}") } else { format!("Z{m}^{k}") })
            .collect::<Vec<_>>()
            .join("x");
    }
    let involutions = g.order_histogram().get(2).copied().unwrap_or(0);
    match (n, involutions) {
        (8, 1) => "Q8".to_string(),
        (8, 5) => "D8".to_string(),
        _ => format!("non-abelian of order {n}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    fn g(spec: &str) -> FiniteGroup {
        named_group(spec).unwrap()
    }

    #[test]
    fn subgroup_equivalence() {
        assert!(g("Z2^4").same_order_subgroups_aut_equivalent().0);
        assert!(g("Z7").same_order_subgroups_aut_equivalent().0);
        let (ok, cert) = g("Z4xZ2").same_order_subgroups_aut_equivalent();
        assert!(!ok);
        let (a, b) = cert.failing_pair.unwrap();
        assert_eq!(a.len(), b.len());
    }

    #[test]
    fn iso_groups() {
        assert!(g("Q8").is_iso_group().unwrap());
        assert!(!g("Z4xZ2").is_iso_group().unwrap());
        assert!(g("Z2^3").is_iso_group().unwrap());
    }

    #[test]
    fn fif_groups() {
        assert!(g("Z8").is_fif_group());
        assert!(!g("D8").is_fif_group());
        assert!(g("Q8").is_fif_group());
    }

    #[test]
    fn homogeneity() {
        assert!(g("Z2^3").is_homogeneous().unwrap());
        assert!(!g("Z4xZ2").is_homogeneous().unwrap());
        assert!(g("Z5").is_homogeneous().unwrap());
        assert!(g("Q8").is_homogeneous().unwrap());
    }

    #[test]
    fn index_two_subgroups() {
        assert!(g("Z9").index2_subgroups_equivalent());
        assert!(!g("D8").index2_subgroups_equivalent());
        assert!(g("Z2^2").index2_subgroups_equivalent());
    }

    #[test]
    fn sylow_screen() {
        assert!(g("Z9").sylow_condition_2pci().0);
        let (ok, rep) = g("Z27").sylow_condition_2pci();
        assert!(!ok);
        assert_eq!(rep.primes[0].prime, 3);
        assert_eq!(rep.primes[0].kind, "Z27");
        let (ok, rep) = g("D8").sylow_condition_2pci();
        assert!(!ok);
        assert_eq!(rep.primes[0].kind, "D8");
        let (ok, rep) = g("A5").sylow_condition_2pci();
        assert!(!ok && !rep.solvable && rep.primes.iter().all(|v| v.allowed));
        assert!(g("Q8xZ2").sylow_condition_2pci().1.primes[0].kind == "non-abelian of order 16");
        assert_eq!(g("Z4xZ2^2").sylow_condition_2pci().1.primes[0].kind, "Z4xZ2^2");
        assert!(g("F8").sylow_condition_2pci().0);
        assert!(g("G18").sylow_condition_2pci().0);
    }
}
