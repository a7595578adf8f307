use crate::budget::{exceeded, Budgets};
use crate::error::{Error, Result};
use crate::group::{ElemSet, FiniteGroup};
use crate::mcayley::{right_regular, ConnectionSymbol, MCayleyDigraph, NormalizerElement};
use crate::perm::{PermGroup, Permutation};

/// `N_{Aut(Γ)}(R(G))`, the part of the normalizer that preserves the digraph.
#[derive(Clone, Debug)]
pub struct NormalizerInAut {
    group: PermGroup,
    coset_reps: Vec<NormalizerElement>,
    part_images: Vec<Vec<usize>>,
    parts: usize,
    checks: u64,
}

impl NormalizerInAut {
    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn order(&self) -> u128 {
        self.group.order()
    }

    /// One element per coset of `R(G)`, written with the first translation
    /// and the right multiplier equal to the identity.
    pub fn coset_representatives(&self) -> &[NormalizerElement] {
        &self.coset_reps
    }

    /// The distinct permutations of the parts that occur, sorted.
    pub fn induced_part_permutations(&self) -> &[Vec<usize>] {
        &self.part_images
    }

    pub fn induces_symmetric_group(&self) -> bool {
        self.part_images.len() as u128 == factorial(self.parts)
    }

    pub fn is_transitive_on_parts(&self) -> bool {
        let mut seen = vec![false; self.parts];
        seen[0] = true;
        for sigma in &self.part_images {
            seen[sigma[0]] = true;
        }
        seen.iter().all(|&s| s)
    }

    /// Orbit of vertex 0 under the group covers every vertex.
    pub fn is_vertex_transitive(&self) -> bool {
        self.group.orbit_of(0).len() == self.group.degree()
    }

    /// Symbol checks performed.
    pub fn checks(&self) -> u64 {
        self.checks
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "order": self.order().to_string(),
            "induced_part_permutations": self.part_images,
            "induces_symmetric_group": self.induces_symmetric_group(),
            "transitive_on_parts": self.is_transitive_on_parts(),
            "vertex_transitive": self.is_vertex_transitive(),
        })
    }
}

pub(crate) fn factorial(m: usize) -> u128 {
    (1..=m as u128).product()
}

/// All permutations of `0..m` in lexicographic order.
pub(crate) fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut out = vec![cur.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..m).rev().find(|&j| cur[j] > cur[i - 1]).expect("successor exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
        out.push(cur.clone());
    }
    out
}

/// Computes `N_{Aut(Γ)}(R(G))` as the elements of `N` that fix the connection symbol.
///
/// Right multiplications fix every symbol, so only tuples with trivial right
/// part and trivial first translation are scanned; the group is then generated
/// together with `R(G)`. For every `σ` and `α` the remaining translations are
/// assigned one part at a time, checking each set equation as soon as both of
/// its translations are known.
pub fn normalizer_in_aut(d: &MCayleyDigraph, budgets: &Budgets) -> Result<NormalizerInAut> {
    let g = d.group().as_ref();
    let n = g.order();
    let m = d.parts();
    let sym = d.symbol();
    let nominal = (g.aut_order()).saturating_mul((n as u128).saturating_pow(m as u32 - 1)).saturating_mul(factorial(m));
    if nominal > budgets.aut as u128 {
        return Err(exceeded("normalizer symbol checks", budgets.aut));
    }
    let autos = g.automorphisms()?;
    let mut checks = 0u64;
    let mut coset_reps = Vec::new();
    for sigma in all_permutations(m) {
        for alpha in autos.iter() {
            let images: Vec<ElemSet> = (0..m * m).map(|k| alpha.map_set(sym.get(k / m, k % m))).collect();
            let mut u = vec![0usize; m];
            let mut solutions = Vec::new();
            assign(g, sym, &sigma, &images, &mut u, 0, &mut checks, &mut solutions);
            let alpha_inv = alpha.inverse();
            for sol in solutions {
                let translations = sol.iter().map(|&x| alpha_inv.apply(x)).collect();
                coset_reps.push(NormalizerElement {
                    translations,
                    right: 0,
                    alpha: alpha.clone(),
                    sigma: sigma.clone(),
                });
            }
        }
    }

    let degree = m * n;
    let mut gens: Vec<Permutation> = right_regular(g, m).generators().to_vec();
    let mut group = PermGroup::new(degree, gens.clone())?;
    for rep in &coset_reps {
        let p = rep.vertex_permutation(g);
        if !group.contains(&p) {
            if !d.adjacency().is_preserved_by(&p) {
                return Err(Error::Internal("symbol-fixing normalizer element moves an arc".into()));
            }
            gens.push(p);
            group = PermGroup::new(degree, gens.clone())?;
        }
    }
    if group.order() != coset_reps.len() as u128 * n as u128 {
        return Err(Error::Internal(format!(
            "normalizer in Aut has order {} but {} cosets of R(G) were found",
            group.order(),
            coset_reps.len()
        )));
    }
    let mut part_images: Vec<Vec<usize>> = coset_reps.iter().map(|r| r.sigma.clone()).collect();
    part_images.sort();
    part_images.dedup();
    Ok(NormalizerInAut { group, coset_reps, part_images, parts: m, checks })
}

/// Depth-first assignment of `u_k = g_k^α`; `u_0` is the identity.
#[allow(clippy::too_many_arguments)]
fn assign(
    g: &FiniteGroup,
    sym: &ConnectionSymbol,
    sigma: &[usize],
    images: &[ElemSet],
    u: &mut Vec<usize>,
    k: usize,
    checks: &mut u64,
    out: &mut Vec<Vec<usize>>,
) {
    let m = sigma.len();
    let consistent = |u: &[usize], i: usize, j: usize| {
        let t = g.left_translate(g.inv(u[j]), g.right_translate(images[i * m + j], u[i]));
        t == sym.get(sigma[i], sigma[j])
    };
    let choices: Vec<usize> = if k == 0 { vec![0] } else { g.elements().collect() };
    for x in choices {
        u[k] = x;
        *checks += 1;
        if (0..=k).all(|i| consistent(u, i, k) && consistent(u, k, i)) {
            if k + 1 == m {
                out.push(u.clone());
            } else {
                assign(g, sym, sigma, images, u, k + 1, checks, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::group::named_group;
    use crate::mcayley::{build_bcay, build_mcayley};

    fn grp(spec: &str) -> Arc<FiniteGroup> {
        Arc::new(named_group(spec).unwrap())
    }

    /// Elements of `N` preserving the arcs, by direct enumeration.
    fn intersection_by_enumeration(d: &MCayleyDigraph) -> u128 {
        let g = d.group();
        let m = d.parts();
        let autos = g.automorphisms().unwrap();
        let n = g.order();
        let mut found = std::collections::HashSet::new();
        for sigma in all_permutations(m) {
            for alpha in autos.iter() {
                for code in 0..n.pow(m as u32 + 1) {
                    let mut c = code;
                    let mut translations = Vec::new();
                    for _ in 0..m {
                        translations.push(c % n);
                        c /= n;
                    }
                    let e = NormalizerElement { translations, right: c, alpha: alpha.clone(), sigma: sigma.clone() };
                    let p = e.vertex_permutation(g);
                    if d.adjacency().is_preserved_by(&p) {
                        found.insert(p);
                    }
                }
            }
        }
        found.len() as u128
    }

    #[test]
    fn permutation_listing() {
        assert_eq!(all_permutations(3).len(), 6);
        assert_eq!(all_permutations(1), vec![vec![0]]);
        assert_eq!(all_permutations(3)[1], vec![0, 2, 1]);
    }

    #[test]
    fn complete_bipartite_keeps_whole_normalizer() {
        for spec in ["Z2", "Z3", "D6", "Q8"] {
            let g = grp(spec);
            let d = build_bcay(&g, g.all()).unwrap();
            let nai = normalizer_in_aut(&d, &Budgets::default()).unwrap();
            let full = 2 * g.aut_order() * (g.order() as u128).pow(2);
            assert_eq!(nai.order(), full, "{spec}");
            assert!(nai.induces_symmetric_group());
        }
    }

    #[test]
    fn triangle_example_is_not_transitive_on_parts() {
        let g = grp("Z3");
        let mut sym = ConnectionSymbol::empty(2);
        sym.set(0, 0, ElemSet::from_elems([1, 2]));
        let nai = normalizer_in_aut(&build_mcayley(&g, &sym).unwrap(), &Budgets::default()).unwrap();
        assert!(!nai.is_transitive_on_parts());
        assert!(!nai.induces_symmetric_group());
        assert!(!nai.is_vertex_transitive());
    }

    #[test]
    fn abelian_groups_always_swap_parts() {
        let g = grp("Z6");
        let inv = g.inversion_map();
        for bits in [0b1u64, 0b11, 0b1011, 0b100101, 0b110110] {
            let d = build_bcay(&g, ElemSet(bits)).unwrap();
            let nai = normalizer_in_aut(&d, &Budgets::default()).unwrap();
            assert!(nai.is_vertex_transitive());
            let swap = NormalizerElement { alpha: inv.clone(), ..NormalizerElement::part_permutation(&g, vec![1, 0]) };
            assert!(nai.group().contains(&swap.vertex_permutation(&g)));
        }
    }

    #[test]
    fn agrees_with_enumerated_intersection() {
        let cases: Vec<(&str, Vec<(usize, usize, u64)>)> = vec![
            ("Z4", vec![(0, 1, 0b0011), (1, 0, 0b1001)]),
            ("Z4", vec![(0, 1, 0b0101), (1, 0, 0b0101)]),
            ("D6", vec![(0, 1, 0b001011), (1, 0, 0b001011)]),
            ("Z3", vec![(0, 0, 0b110), (0, 1, 0b001), (1, 2, 0b011)]),
            ("Z2", vec![(0, 1, 0b01), (1, 0, 0b01)]),
        ];
        for (spec, sets) in cases {
            let g = grp(spec);
            let m = sets.iter().map(|&(i, j, _)| i.max(j)).max().unwrap() + 1;
            let mut sym = ConnectionSymbol::empty(m);
            for (i, j, bits) in sets {
                sym.set(i, j, ElemSet(bits));
            }
            let d = build_mcayley(&g, &sym).unwrap();
            let nai = normalizer_in_aut(&d, &Budgets::default()).unwrap();
            assert_eq!(nai.order(), intersection_by_enumeration(&d), "{spec}");
            assert_eq!(nai.order() % (g.order() as u128), 0);
            assert!(nai.group().contains_group(&right_regular(&g, m)));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let g = grp("Z2^4");
        let d = build_bcay(&g, ElemSet::from_elems([0, 1, 2])).unwrap();
        let tight = Budgets { aut: 1000, ..Budgets::default() };
        assert!(matches!(normalizer_in_aut(&d, &tight), Err(Error::BudgetExceeded(_))));
    }
}
