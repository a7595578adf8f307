use super::{FiniteGroup, LabelStyle};
use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Splits on commas that are not nested inside brackets. A set wrapped in
/// braces has them removed first; empty items are dropped.
pub(crate) fn split_top_level(text: &str) -> Vec<String> {
    let mut t = text.trim();
    if t.starts_with('{') && t.ends_with('}') {
        t = &t[1..t.len() - 1];
    }
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in t.chars() {
        match ch {
            '(' | '[' | '{' => {
                depth += 1;
                cur.push(ch);
            }
            ')' | ']' | '}' => {
                depth -= 1;
                cur.push(ch);
            }
            ',' if depth == 0 => {
                if !cur.trim().is_empty() {
                    out.push(cur.trim().to_string());
                }
                cur.clear();
            }
            _ => cur.push(ch),
        }
    }
    if !cur.trim().is_empty() {
        out.push(cur.trim().to_string());
    }
    out
}

fn is_identity_alias(t: &str, residues: bool) -> bool {
    matches!(t, "e" | "Id" | "id" | "()" | "1_G")
        || t.starts_with("Id(")
        || (t.starts_with("1_") && t.len() <= 4)
        || (t == "1" && !residues)
}

pub(crate) fn parse_element(g: &FiniteGroup, text: &str) -> Result<usize> {
    let t: String = text.trim().to_string();
    let bad = || Error::Parse(format!("`{t}` is not an element of {}", g.name()));
    if t.is_empty() {
        return Err(bad());
    }
    let residues = matches!(g.style, LabelStyle::Residues);
    if is_identity_alias(&t, residues) {
        return Ok(0);
    }
    if let Some(i) = g.lookup_label(&t) {
        return Ok(i);
    }
    match &g.style {
        LabelStyle::Residues => {
            if let Ok(k) = t.parse::<i64>() {
                return Ok(k.rem_euclid(g.order() as i64) as usize);
            }
            let gen = if g.order() > 1 { 1 } else { 0 };
            parse_word(g, &t, &[("x".to_string(), gen), ("a".to_string(), gen)]).ok_or_else(bad)
        }
        LabelStyle::Words { gens } => {
            if t.starts_with('(') && t.ends_with(')') {
                // exponent vector over the generators
                let parts = split_top_level(&t[1..t.len() - 1]);
                if parts.len() == gens.len() {
                    let mut acc = 0;
                    for (p, (_, x)) in parts.iter().zip(gens) {
                        let k: i64 = p.parse().map_err(|_| bad())?;
                        acc = g.mul(acc, g.pow(*x, k));
                    }
                    return Ok(acc);
                }
                return Err(bad());
            }
            parse_word(g, &t, gens).ok_or_else(bad)
        }
        LabelStyle::Cycles => {
            let degree = g.permutation(0).map(|p| p.degree()).ok_or_else(bad)?;
            let p = parse_cycles(&t, degree).ok_or_else(bad)?;
            g.lookup_permutation(&p).ok_or_else(bad)
        }
        LabelStyle::Tuples { factors } => {
            if !(t.starts_with('(') && t.ends_with(')')) {
                return Err(bad());
            }
            let parts = split_top_level(&t[1..t.len() - 1]);
            if parts.len() != factors.len() {
                return Err(bad());
            }
            let mut idx = 0;
            for (p, f) in parts.iter().zip(factors) {
                idx = idx * f.order() + f.parse_element(p)?;
            }
            Ok(idx)
        }
        LabelStyle::Plain => Err(bad()),
    }
}

/// Parses a product of generator powers such as `a^2bc`, `xy^-1`, `e_1^{-1}x`.
fn parse_word(g: &FiniteGroup, text: &str, gens: &[(String, usize)]) -> Option<usize> {
    let cleaned: String = text.chars().filter(|c| !c.is_whitespace() && *c != '_' && *c != '*' && *c != '·').collect();
    let bytes = cleaned.as_bytes();
    let mut names: Vec<&(String, usize)> = gens.iter().collect();
    names.sort_by_key(|(n, _)| std::cmp::Reverse(n.len()));
    let mut pos = 0;
    let mut acc = 0;
    let mut any = false;
    while pos < bytes.len() {
        let (name, x) = names.iter().find(|(n, _)| cleaned[pos..].starts_with(n.as_str()))?;
        pos += name.len();
        let mut exp: i64 = 1;
        if pos < bytes.len() && bytes[pos] == b'^' {
            pos += 1;
            let braced = pos < bytes.len() && bytes[pos] == b'{';
            if braced {
                pos += 1;
            }
            let start = pos;
            if pos < bytes.len() && bytes[pos] == b'-' {
                pos += 1;
            }
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            exp = cleaned[start..pos].parse().ok()?;
            if braced {
                if pos >= bytes.len() || bytes[pos] != b'}' {
                    return None;
                }
                pos += 1;
            }
        }
        acc = g.mul(acc, g.pow(*x, exp));
        any = true;
    }
    any.then_some(acc)
}

/// Parses 1-based cycle notation into a permutation of the given degree.
/// Products of several (possibly overlapping) cycles compose left to right.
pub(crate) fn parse_cycles(text: &str, degree: usize) -> Option<Permutation> {
    let mut acc = Permutation::identity(degree);
    let mut rest = text.trim();
    if rest.is_empty() {
        return None;
    }
    while !rest.is_empty() {
        let open = rest.strip_prefix('(')?;
        let close = open.find(')')?;
        let body = &open[..close];
        rest = open[close + 1..].trim_start();
        let points: Vec<usize> = if body.contains(' ') || body.contains(',') {
            body.split([' ', ','])
                .filter(|s| !s.is_empty())
                .map(|s| s.parse::<usize>().ok())
                .collect::<Option<Vec<_>>>()?
        } else {
            body.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect::<Option<Vec<_>>>()?
        };
        if points.is_empty() {
            continue;
        }
        if points.iter().any(|&p| p == 0 || p > degree) {
            return None;
        }
        let zero_based: Vec<usize> = points.iter().map(|p| p - 1).collect();
        let cycle = Permutation::from_cycles(degree, &[zero_based]).ok()?;
        acc = acc.then(&cycle);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::named_group;

    #[test]
    fn splitting_respects_parentheses() {
        assert_eq!(split_top_level("(1,2),e, x"), vec!["(1,2)", "e", "x"]);
        assert_eq!(split_top_level("{a, b}"), vec!["a", "b"]);
        assert!(split_top_level("").is_empty());
    }

    #[test]
    fn words_and_aliases() {
        let g = named_group("Dic12").unwrap();
        let x = g.parse_element("x").unwrap();
        let y = g.parse_element("y").unwrap();
        assert_eq!(g.parse_element("xy^-1").unwrap(), g.mul(x, g.inv(y)));
        assert_eq!(g.parse_element("xy^{-1}").unwrap(), g.mul(x, g.inv(y)));
        assert_eq!(g.parse_element("Id").unwrap(), 0);
        assert_eq!(g.parse_element("1").unwrap(), 0);
        let h = named_group("G18").unwrap();
        assert_eq!(h.parse_element("e_1").unwrap(), h.parse_element("e1").unwrap());
    }

    #[test]
    fn residues_keep_one_as_generator() {
        let g = named_group("Z8").unwrap();
        assert_eq!(g.parse_element("1").unwrap(), 1);
        assert_eq!(g.parse_element("1_K").unwrap(), 0);
        assert_eq!(g.parse_element("x^5").unwrap(), 5);
        assert_eq!(g.parse_element("-2").unwrap(), 6);
    }

    #[test]
    fn cycles_parse_with_overlap() {
        let p = parse_cycles("(12)(23)", 3).unwrap();
        // apply (12) first then (23): 1 -> 2 -> 3
        assert_eq!(p.apply(0), 2);
        assert!(parse_cycles("(14)", 3).is_none());
    }
}
