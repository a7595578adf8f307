//! Named constructors and the group spec mini-language.
//!
//! Accepted factors: `Z<n>`, `Z<n>^<k>`, `D<2n>`, `Q8`, `Dic<4n>`, `A4`, `A5`,
//! `S<n>` (n ≤ 4), `F8` and `G18`; factors combine into direct products with
//! `x`, as in `Z4xZ2^2` or `Q8xZ2`.

use std::sync::Arc;

use super::{FiniteGroup, LabelStyle, MAX_ORDER};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Letters used for the generators of abelian products (no `e`, which means the identity).
const ABELIAN_LETTERS: [&str; 6] = ["a", "b", "c", "d", "f", "g"];

enum Factor {
    /// A cyclic factor of the given order; powers are expanded beforehand.
    Cyclic(usize),
    Other(FiniteGroup),
}

/// Builds the group described by `spec`.
pub fn named_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    let pieces = split_product(spec);
    if pieces.is_empty() {
        return Err(Error::Parse("empty group spec".into()));
    }
    let mut factors = Vec::new();
    for piece in &pieces {
        factors.extend(parse_factor(piece)?);
    }
    let total: usize = factors
        .iter()
        .map(|f| match f {
            Factor::Cyclic(n) => *n,
            Factor::Other(g) => g.order(),
        })
        .product();
    if total > MAX_ORDER {
        return Err(Error::cap(format!("order of {spec}"), MAX_ORDER as u128, total as u128));
    }
    let mut group = if factors.iter().all(|f| matches!(f, Factor::Cyclic(_))) {
        let orders: Vec<usize> = factors
            .iter()
            .map(|f| match f {
                Factor::Cyclic(n) => *n,
                Factor::Other(_) => unreachable!(),
            })
            .collect();
        let single_cyclic = pieces.len() == 1 && !pieces[0].contains('^');
        if single_cyclic {
            cyclic(orders[0])?
        } else {
            abelian(&orders)?
        }
    } else if factors.len() == 1 {
        match factors.pop() {
            Some(Factor::Other(g)) => g,
            _ => unreachable!(),
        }
    } else {
        let groups: Vec<Arc<FiniteGroup>> = factors
            .into_iter()
            .map(|f| match f {
                Factor::Cyclic(n) => cyclic(n).map(Arc::new),
                Factor::Other(g) => Ok(Arc::new(g)),
            })
            .collect::<Result<_>>()?;
        tuple_product(&groups)?
    };
    group.set_name(spec);
    Ok(group)
}

/// Splits `AxB` at each `x` that starts a new factor (followed by an upper-case letter).
fn split_product(spec: &str) -> Vec<String> {
    let chars: Vec<char> = spec.chars().collect();
    let mut out = Vec::new();
    let mut cur = String::new();
    for i in 0..chars.len() {
        if chars[i] == 'x' && i > 0 && chars.get(i + 1).is_some_and(|c| c.is_ascii_uppercase()) {
            out.push(std::mem::take(&mut cur));
        } else {
            cur.push(chars[i]);
        }
    }
    if !cur.is_empty() {
        out.push(cur);
    }
    out
}

fn number(s: &str, spec: &str) -> Result<usize> {
    s.parse::<usize>().map_err(|_| Error::Parse(format!("unknown group spec `{spec}`")))
}

fn parse_factor(piece: &str) -> Result<Vec<Factor>> {
    let unknown = || Error::Parse(format!("unknown group spec `{piece}`"));
    let too_big = |n: usize| Error::cap(format!("order of {piece}"), MAX_ORDER as u128, n as u128);
    match piece {
        "Q8" => return Ok(vec![Factor::Other(dicyclic(2, true)?)]),
        "A4" => return Ok(vec![Factor::Other(perm_group("A4", 4, &[vec![vec![1, 2, 3]], vec![vec![2, 3, 4]]])?)]),
        "A5" => {
            return Ok(vec![Factor::Other(perm_group("A5", 5, &[vec![vec![1, 2, 3]], vec![vec![1, 2, 3, 4, 5]]])?)])
        }
        "F8" => return Ok(vec![Factor::Other(frobenius_56()?)]),
        "G18" => return Ok(vec![Factor::Other(generalized_dihedral_18()?)]),
        _ => {}
    }
    if let Some(rest) = piece.strip_prefix("Dic") {
        let n4 = number(rest, piece)?;
        if n4 < 8 || n4 % 4 != 0 {
            return Err(unknown());
        }
        if n4 > MAX_ORDER {
            return Err(too_big(n4));
        }
        return Ok(vec![Factor::Other(dicyclic(n4 / 4, false)?)]);
    }
    if let Some(rest) = piece.strip_prefix('D') {
        let n2 = number(rest, piece)?;
        if n2 < 4 || n2 % 2 != 0 {
            return Err(unknown());
        }
        if n2 > MAX_ORDER {
            return Err(too_big(n2));
        }
        return Ok(vec![Factor::Other(dihedral(n2 / 2)?)]);
    }
    if let Some(rest) = piece.strip_prefix('S') {
        let n = number(rest, piece)?;
        return match n {
            2 => Ok(vec![Factor::Cyclic(2)]),
            3 | 4 => {
                let all: Vec<usize> = (1..=n).collect();
                Ok(vec![Factor::Other(perm_group(piece, n, &[vec![vec![1, 2]], vec![all]])?)])
            }
            _ if n > 4 => Err(too_big((1..=n).product())),
            _ => Err(unknown()),
        };
    }
    if let Some(rest) = piece.strip_prefix('Z') {
        let (base, power) = match rest.split_once('^') {
            Some((b, k)) => (number(b, piece)?, number(k, piece)?),
            None => (number(rest, piece)?, 1),
        };
        if base == 0 || power == 0 {
            return Err(unknown());
        }
        if base > MAX_ORDER || (base > 1 && power > 6) {
            return Err(too_big(base.saturating_pow(power as u32)));
        }
        if base == 1 {
            return Ok(vec![Factor::Cyclic(1)]);
        }
        return Ok((0..power).map(|_| Factor::Cyclic(base)).collect());
    }
    Err(unknown())
}

/// Cyclic group with residue labels `0..n`.
pub(crate) fn cyclic(n: usize) -> Result<FiniteGroup> {
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_fn(format!("Z{n}"), n, |a, b| (a + b) % n, labels, LabelStyle::Residues)
}

/// Direct product of cyclic groups with word labels in `a, b, c, …`.
fn abelian(orders: &[usize]) -> Result<FiniteGroup> {
    let orders: Vec<usize> = orders.iter().copied().filter(|&n| n > 1).collect();
    if orders.is_empty() {
        return cyclic(1);
    }
    if orders.len() > ABELIAN_LETTERS.len() {
        return Err(Error::Parse("too many cyclic factors".into()));
    }
    let n: usize = orders.iter().product();
    let decode = |mut x: usize| {
        let mut e = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            e[i] = x % orders[i];
            x /= orders[i];
        }
        e
    };
    let encode = |e: &[usize]| e.iter().zip(&orders).fold(0, |acc, (v, m)| acc * m + v);
    let labels =
        (0..n)
            .map(|x| {
                let e = decode(x);
                let word: String =
                    e.iter()
                        .enumerate()
                        .filter(|(_, &v)| v > 0)
                        .map(|(i, &v)| {
                            if v == 1 {
                                ABELIAN_LETTERS[i].to_string()
                            } else {
                                format!("{}^{v}", ABELIAN_LETTERS[i])
                            }
                        })
                        .collect();
                if word.is_empty() {
                    "e".to_string()
                } else {
                    word
                }
            })
            .collect();
    let gens = (0..orders.len())
        .map(|i| {
            let mut e = vec![0; orders.len()];
            e[i] = 1;
            (ABELIAN_LETTERS[i].to_string(), encode(&e))
        })
        .collect();
    FiniteGroup::from_fn(
        "abelian",
        n,
        |a, b| {
            let (ea, eb) = (decode(a), decode(b));
            let sum: Vec<usize> = ea.iter().zip(&eb).zip(&orders).map(|((x, y), m)| (x + y) % m).collect();
            encode(&sum)
        },
        labels,
        LabelStyle::Words { gens },
    )
}

fn power_word(name: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{k}"),
    }
}

fn word_or_e(w: String) -> String {
    if w.is_empty() {
        "e".to_string()
    } else {
        w
    }
}

/// Dihedral group of order `2n`: elements `r^i s^j` at index `j·n + i`.
fn dihedral(n: usize) -> Result<FiniteGroup> {
    let labels = (0..2 * n).map(|x| word_or_e(power_word("r", x % n) + &power_word("s", x / n))).collect();
    FiniteGroup::from_fn(
        format!("D{}", 2 * n),
        2 * n,
        |a, b| {
            let (i1, j1, i2, j2) = (a % n, a / n, b % n, b / n);
            let i = if j1 == 0 { (i1 + i2) % n } else { (i1 + n - i2) % n };
            ((j1 + j2) % 2) * n + i
        },
        labels,
        LabelStyle::Words { gens: vec![("r".into(), 1), ("s".into(), n)] },
    )
}

/// Dicyclic group `⟨x, y | x^{2n} = 1, y² = xⁿ, y⁻¹xy = x⁻¹⟩` of order `4n`,
/// elements `x^a y^b` at index `b·2n + a`. With `quaternion` the generators are named `i`, `j` (and `k = ij`).
fn dicyclic(n: usize, quaternion: bool) -> Result<FiniteGroup> {
    let m = 2 * n;
    let (xn, yn) = if quaternion { ("i", "j") } else { ("x", "y") };
    let labels = (0..2 * m).map(|t| word_or_e(power_word(xn, t % m) + &power_word(yn, t / m))).collect();
    let mut gens = vec![(xn.to_string(), 1), (yn.to_string(), m)];
    if quaternion {
        gens.push(("k".to_string(), m + 1));
    }
    FiniteGroup::from_fn(
        if quaternion { "Q8".to_string() } else { format!("Dic{}", 4 * n) },
        2 * m,
        |p, q| {
            let (a1, b1, a2, b2) = (p % m, p / m, q % m, q / m);
            let mut a = if b1 == 0 { (a1 + a2) % m } else { (a1 + m - a2) % m };
            let mut b = b1 + b2;
            if b >= 2 {
                b -= 2;
                a = (a + n) % m;
            }
            b * m + a
        },
        labels,
        LabelStyle::Words { gens },
    )
}

/// `⟨e1, e2, x | e1³ = e2³ = x² = [e1, e2] = 1, e1^x = e1⁻¹, e2^x = e2⁻¹⟩`,
/// elements `e1^a e2^b x^c` at index `6a + 2b + c`.
fn generalized_dihedral_18() -> Result<FiniteGroup> {
    let dec = |t: usize| (t / 6, (t / 2) % 3, t % 2);
    let labels = (0..18)
        .map(|t| {
            let (a, b, c) = dec(t);
            word_or_e(power_word("e1", a) + &power_word("e2", b) + &power_word("x", c))
        })
        .collect();
    FiniteGroup::from_fn(
        "G18",
        18,
        |p, q| {
            let ((a1, b1, c1), (a2, b2, _)) = (dec(p), dec(q));
            let c2 = q % 2;
            let (a, b) = if c1 == 0 { ((a1 + a2) % 3, (b1 + b2) % 3) } else { ((a1 + 3 - a2) % 3, (b1 + 3 - b2) % 3) };
            6 * a + 2 * b + (c1 + c2) % 2
        },
        labels,
        LabelStyle::Words { gens: vec![("e1".into(), 6), ("e2".into(), 2), ("x".into(), 1)] },
    )
}

/// Permutation group from 1-based cycles; each generator is a list of cycles.
fn perm_group(name: &str, degree: usize, gens: &[Vec<Vec<usize>>]) -> Result<FiniteGroup> {
    let perms = gens
        .iter()
        .map(|cycles| {
            let zero: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
            Permutation::from_cycles(degree, &zero)
        })
        .collect::<Result<Vec<_>>>()?;
    FiniteGroup::from_permutations(name, degree, &perms)
}

/// The Frobenius group of order 56 on eight points, generated by
/// x = (2687453), y = (13)(24)(57)(68), z = (12)(34)(56)(78), t = (15)(26)(37)(48).
fn frobenius_56() -> Result<FiniteGroup> {
    perm_group(
        "F8",
        8,
        &[
            vec![vec![2, 6, 8, 7, 4, 5, 3]],
            vec![vec![1, 3], vec![2, 4], vec![5, 7], vec![6, 8]],
            vec![vec![1, 2], vec![3, 4], vec![5, 6], vec![7, 8]],
            vec![vec![1, 5], vec![2, 6], vec![3, 7], vec![4, 8]],
        ],
    )
}

/// Direct product with tuple labels `(l1,l2,…)`; indices are mixed radix, first factor most significant.
fn tuple_product(factors: &[Arc<FiniteGroup>]) -> Result<FiniteGroup> {
    let orders: Vec<usize> = factors.iter().map(|f| f.order()).collect();
    let n: usize = orders.iter().product();
    let decode = |mut x: usize| {
        let mut e = vec![0; orders.len()];
        for i in (0..orders.len()).rev() {
            e[i] = x % orders[i];
            x /= orders[i];
        }
        e
    };
    let encode = |e: &[usize]| e.iter().zip(&orders).fold(0, |acc, (v, m)| acc * m + v);
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<&str> = decode(x).iter().zip(factors).map(|(&v, f)| f.label(v)).collect();
            format!("({})", parts.join(","))
        })
        .collect();
    FiniteGroup::from_fn(
        "product",
        n,
        |a, b| {
            let (ea, eb) = (decode(a), decode(b));
            let prod: Vec<usize> = ea.iter().zip(&eb).zip(factors).map(|((x, y), f)| f.mul(*x, *y)).collect();
            encode(&prod)
        },
        labels,
        LabelStyle::Tuples { factors: factors.to_vec() },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(spec: &str, order: usize, abelian: bool) -> FiniteGroup {
        let g = named_group(spec).unwrap();
        assert_eq!(g.order(), order, "{spec}");
        assert_eq!(g.is_abelian(), abelian, "{spec}");
        g
    }

    #[test]
    fn orders_and_abelianness() {
        check("Z1", 1, true);
        check("Z9", 9, true);
        check("Z2^4", 16, true);
        check("Z4xZ2^2", 16, true);
        check("D8", 8, false);
        check("D6", 6, false);
        check("S3", 6, false);
        check("S4", 24, false);
        check("Q8", 8, false);
        check("Dic12", 12, false);
        check("A4", 12, false);
        check("A5", 60, false);
        check("F8", 56, false);
        check("G18", 18, false);
        check("Q8xZ2", 16, false);
        assert!(named_group("Z65").is_err());
        assert!(named_group("Foo").is_err());
        assert!(named_group("S5").is_err());
    }

    #[test]
    fn dicyclic_relations() {
        let g = named_group("Dic12").unwrap();
        let x = g.parse_element("x").unwrap();
        let y = g.parse_element("y").unwrap();
        assert_eq!(g.element_order(x), 6);
        assert_eq!(g.element_order(y), 4);
        assert_eq!(g.pow(x, 3), g.pow(y, 2));
        assert_eq!(g.conj(x, y), g.inv(x));
    }

    #[test]
    fn g18_relations() {
        let g = named_group("G18").unwrap();
        let e1 = g.parse_element("e1").unwrap();
        let e2 = g.parse_element("e2").unwrap();
        let x = g.parse_element("x").unwrap();
        assert_eq!(g.element_order(e1), 3);
        assert_eq!(g.element_order(e2), 3);
        assert_eq!(g.element_order(x), 2);
        assert_eq!(g.mul(e1, e2), g.mul(e2, e1));
        assert_eq!(g.conj(e1, x), g.inv(e1));
        assert_eq!(g.conj(e2, x), g.inv(e2));
        // generalized dihedral: every element outside ⟨e1,e2⟩ is an involution
        assert_eq!(g.order_histogram()[2], 9);
    }

    #[test]
    fn frobenius_group_structure() {
        let g = named_group("F8").unwrap();
        let hist = g.order_histogram();
        assert_eq!(hist[7], 48, "eight Sylow 7-subgroups with six generators each");
        assert_eq!(hist[2], 7);
        assert_eq!(hist[1] + hist[2] + hist[7], 56);
        for label in ["(1327846)", "(18)(27)(36)(45)", "(1742365)"] {
            g.parse_element(label).unwrap();
        }
    }

    #[test]
    fn quaternion_and_dihedral_involutions() {
        assert_eq!(named_group("Q8").unwrap().order_histogram()[2], 1);
        assert_eq!(named_group("D8").unwrap().order_histogram()[2], 5);
        let q = named_group("Q8").unwrap();
        let i = q.parse_element("i").unwrap();
        let j = q.parse_element("j").unwrap();
        assert_eq!(q.parse_element("k").unwrap(), q.mul(i, j));
        assert_eq!(q.mul(i, j), q.mul(q.mul(j, i), q.pow(i, 2)));
    }

    #[test]
    fn abelian_word_labels() {
        let g = named_group("Z3^3").unwrap();
        let x = g.parse_element("a^2bc").unwrap();
        assert_eq!(g.label(x), "a^2bc");
        assert_eq!(g.parse_element("(2,1,1)").unwrap(), x);
        let h = named_group("Z4xZ2").unwrap();
        assert_eq!(h.label(h.parse_element("a^2b").unwrap()), "a^2b");
        let p = named_group("Q8xZ2").unwrap();
        let t = p.parse_element("(ij,1)").unwrap();
        assert_eq!(p.label(t), "(ij,1)");
    }
}
