use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::ConnectionSymbol;
use crate::error::Result;
use crate::group::{FiniteGroup, GroupMap};
use crate::perm::{PermGroup, Permutation};

/// An element of `N = (L_1 × ⋯ × L_m) ⋊ (S_m × Aut(G))` in factored form.
///
/// It moves vertex `x` of part `i` to `(g_i⁻¹ · x · g)^α` in part `σ(i)`, where
/// `g_i = translations[i]`, `g = right`, `α = alpha`, `σ = sigma`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NormalizerElement {
    pub translations: Vec<usize>,
    pub right: usize,
    pub alpha: GroupMap,
    pub sigma: Vec<usize>,
}

#[derive(Serialize)]
struct NormalizerJson {
    translations: Vec<usize>,
    right: usize,
    alpha: Vec<usize>,
    sigma: Vec<usize>,
}

impl NormalizerElement {
    pub fn identity(g: &FiniteGroup, m: usize) -> Self {
        NormalizerElement {
            translations: vec![0; m],
            right: 0,
            alpha: GroupMap::identity(g.order()),
            sigma: (0..m).collect(),
        }
    }

    /// `R(h)`: `x_i ↦ (x h)_i`.
    pub fn right_mult(g: &FiniteGroup, m: usize, h: usize) -> Self {
        NormalizerElement { right: h, ..Self::identity(g, m) }
    }

    /// `L_i(h)`: `x_i ↦ (h⁻¹ x)_i`, other parts fixed.
    pub fn left_mult(g: &FiniteGroup, m: usize, part: usize, h: usize) -> Self {
        let mut e = Self::identity(g, m);
        e.translations[part] = h;
        e
    }

    pub fn automorphism(g: &FiniteGroup, m: usize, alpha: GroupMap) -> Self {
        NormalizerElement { alpha, ..Self::identity(g, m) }
    }

    /// Permutes the parts: part `i` goes to `sigma[i]`.
    pub fn part_permutation(g: &FiniteGroup, sigma: Vec<usize>) -> Self {
        NormalizerElement { sigma: sigma.clone(), ..Self::identity(g, sigma.len()) }
    }

    pub fn parts(&self) -> usize {
        self.sigma.len()
    }

    pub fn is_kernel(&self) -> bool {
        self.sigma.iter().enumerate().all(|(i, &s)| i == s)
    }

    /// The permutation of the `m·|G|` vertices.
    pub fn vertex_permutation(&self, g: &FiniteGroup) -> Permutation {
        let n = g.order();
        let m = self.parts();
        let mut images = vec![0usize; m * n];
        for i in 0..m {
            let gi_inv = g.inv(self.translations[i]);
            for x in 0..n {
                let y = self.alpha.apply(g.mul(g.mul(gi_inv, x), self.right));
                images[i * n + x] = self.sigma[i] * n + y;
            }
        }
        Permutation::from_images(images).expect("normalizer element is a bijection")
    }

    /// The same vertex permutation written with `g_1 = 1`: `h_i = g_i g_1⁻¹`,
    /// `h = g g_1⁻¹`, and `α` preceded by conjugation `y ↦ g_1⁻¹ y g_1`.
    pub fn reduced(&self, g: &FiniteGroup) -> Self {
        let g1 = self.translations[0];
        let g1_inv = g.inv(g1);
        let translations = self.translations.iter().map(|&gi| g.mul(gi, g1_inv)).collect();
        let right = g.mul(self.right, g1_inv);
        let conj = GroupMap::from_images(g.elements().map(|y| g.conj(y, g1)).collect());
        NormalizerElement { translations, right, alpha: conj.then(&self.alpha), sigma: self.sigma.clone() }
    }

    /// A pseudo-random element: uniform translations and part permutation; the
    /// automorphism is uniform when `Aut(G)` can be listed and otherwise a random
    /// word in its generators.
    pub fn random<R: Rng + ?Sized>(g: &FiniteGroup, m: usize, rng: &mut R) -> Self {
        let n = g.order();
        let translations = (0..m).map(|_| rng.gen_range(0..n)).collect();
        let right = rng.gen_range(0..n);
        let alpha = match g.automorphisms() {
            Ok(all) => all[rng.gen_range(0..all.len())].clone(),
            Err(_) => {
                let gens = g.automorphism_generators();
                let mut a = GroupMap::identity(n);
                for _ in 0..4 * gens.len() {
                    a = a.then(&gens[rng.gen_range(0..gens.len())]);
                }
                a
            }
        };
        let mut sigma: Vec<usize> = (0..m).collect();
        sigma.shuffle(rng);
        NormalizerElement { translations, right, alpha, sigma }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(NormalizerJson {
            translations: self.translations.clone(),
            right: self.right,
            alpha: self.alpha.images(),
            sigma: self.sigma.clone(),
        })
        .expect("serializable")
    }
}

/// Transforms a symbol by a normalizer element: `T_{σ(i),σ(j)} = (g_j⁻¹ S_{i,j} g_i)^α`.
///
/// The digraph of the result is the image of the digraph of `sym` under the
/// element's vertex permutation.
pub fn apply_normalizer(g: &FiniteGroup, sym: &ConnectionSymbol, n: &NormalizerElement) -> ConnectionSymbol {
    let m = sym.parts();
    let mut out = ConnectionSymbol::empty(m);
    for i in 0..m {
        for j in 0..m {
            let gj_inv = g.inv(n.translations[j]);
            let gi = n.translations[i];
            let t = sym.get(i, j).iter().map(|s| n.alpha.apply(g.mul(g.mul(gj_inv, s), gi))).collect();
            out.set(n.sigma[i], n.sigma[j], t);
        }
    }
    out
}

/// `R(G)` on `m` parts.
pub fn right_regular(g: &FiniteGroup, m: usize) -> PermGroup {
    let gens = g
        .generating_sequence()
        .into_iter()
        .map(|h| NormalizerElement::right_mult(g, m, h).vertex_permutation(g))
        .collect();
    PermGroup::new(m * g.order(), gens).expect("degree matches")
}

/// `N`, its kernel `K` on the parts, and the stabiliser in `K` of vertex `(1_G)` in part 0.
#[derive(Clone, Debug)]
pub struct NormalizerGroups {
    pub normalizer: PermGroup,
    pub kernel: PermGroup,
    pub kernel_point_stabilizer: PermGroup,
}

pub fn normalizer_and_kernel(g: &FiniteGroup, m: usize) -> Result<NormalizerGroups> {
    let degree = m * g.order();
    let seq = g.generating_sequence();
    let mut kernel_gens: Vec<Permutation> = Vec::new();
    for &h in &seq {
        kernel_gens.push(NormalizerElement::right_mult(g, m, h).vertex_permutation(g));
        for part in 0..m {
            kernel_gens.push(NormalizerElement::left_mult(g, m, part, h).vertex_permutation(g));
        }
    }
    for a in g.automorphism_generators() {
        kernel_gens.push(NormalizerElement::automorphism(g, m, a).vertex_permutation(g));
    }
    let mut all_gens = kernel_gens.clone();
    if m >= 2 {
        let mut swap: Vec<usize> = (0..m).collect();
        swap.swap(0, 1);
        let cycle: Vec<usize> = (0..m).map(|i| (i + 1) % m).collect();
        for sigma in [swap, cycle] {
            all_gens.push(NormalizerElement::part_permutation(g, sigma).vertex_permutation(g));
        }
    }
    let kernel = PermGroup::new(degree, kernel_gens)?;
    let kernel_point_stabilizer = kernel.pointwise_stabilizer(&[0])?;
    let normalizer = PermGroup::new(degree, all_gens)?;
    Ok(NormalizerGroups { normalizer, kernel, kernel_point_stabilizer })
}

/// Every permutation of the `m·|G|` vertices normalizing `R(G)`, by scanning
/// the full symmetric group. Only for at most 8 vertices.
pub fn brute_force_normalizer(g: &FiniteGroup, m: usize) -> Result<Vec<Permutation>> {
    let degree = m * g.order();
    if degree > 8 {
        return Err(crate::error::Error::cap("brute-force normalizer degree", 8, degree as u128));
    }
    let r = right_regular(g, m);
    let r_gens = r.generators().to_vec();
    let mut out = Vec::new();
    let mut images: Vec<usize> = (0..degree).collect();
    loop {
        let p = Permutation::from_images(images.clone())?;
        if r_gens.iter().all(|x| r.contains(&x.conjugate_by(&p))) {
            out.push(p);
        }
        // next permutation in lexicographic order
        let Some(i) = (1..degree).rev().find(|&i| images[i - 1] < images[i]) else {
            break;
        };
        let j = (i..degree).rev().find(|&j| images[j] > images[i - 1]).expect("exists");
        images.swap(i - 1, j);
        images[i..].reverse();
    }
    Ok(out)
}
