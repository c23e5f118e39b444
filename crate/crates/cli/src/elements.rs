//! Subgroup generator lists: cycle notation `[(0 1 2)(3 4), (0 1)]` or
//! image arrays `[[1,0,2], [0,2,1]]`.

use sigma_forge::{Elem, FiniteGroup};

pub type Images = Vec<usize>;

pub fn parse_generators(input: &str, degree: usize) -> Result<Vec<Images>, String> {
    let s = input.trim();
    let body = s
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| format!("generator list must be bracketed: {input}"))?
        .trim();
    if body.is_empty() {
        return Ok(Vec::new());
    }
    if body.starts_with('[') {
        let arrays: Vec<Vec<usize>> =
            serde_json::from_str(s).map_err(|e| format!("bad image arrays {input}: {e}"))?;
        for a in &arrays {
            check_images(a, degree)?;
        }
        return Ok(arrays);
    }
    body.split(',')
        .map(|c| parse_cycles(c.trim(), degree))
        .collect()
}

fn check_images(images: &[usize], degree: usize) -> Result<(), String> {
    if images.len() != degree {
        return Err(format!(
            "image array {images:?} has length {}, expected {degree}",
            images.len()
        ));
    }
    let mut seen = vec![false; degree];
    for &x in images {
        if x >= degree || std::mem::replace(&mut seen[x], true) {
            return Err(format!("{images:?} is not a permutation of 0..{degree}"));
        }
    }
    Ok(())
}

/// One permutation written as a product of disjoint or overlapping cycles,
/// composed left to right. `()` is the identity.
pub fn parse_cycles(text: &str, degree: usize) -> Result<Images, String> {
    let mut perm: Images = (0..degree).collect();
    let mut rest = text.trim();
    if rest.is_empty() {
        return Err("empty permutation".into());
    }
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix('(')
            .ok_or_else(|| format!("expected '(' in {text}"))?;
        let close = inner
            .find(')')
            .ok_or_else(|| format!("unclosed cycle in {text}"))?;
        let points = inner[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                let p: usize = t
                    .parse()
                    .map_err(|_| format!("bad point {t:?} in {text}"))?;
                if p >= degree {
                    Err(format!("point {p} out of range for degree {degree}"))
                } else {
                    Ok(p)
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        let mut distinct = points.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != points.len() {
            return Err(format!("repeated point in cycle of {text}"));
        }
        let mut cyc: Images = (0..degree).collect();
        for (i, &p) in points.iter().enumerate() {
            cyc[p] = points[(i + 1) % points.len()];
        }
        perm = perm.iter().map(|&x| cyc[x]).collect();
        rest = inner[close + 1..].trim_start();
    }
    Ok(perm)
}

/// Group elements for the given images, naming the first one not in `g`.
pub fn resolve(g: &FiniteGroup, gens: &[Images]) -> Result<Vec<Elem>, String> {
    gens.iter()
        .map(|p| {
            g.find_permutation(p)
                .ok_or_else(|| format!("{p:?} is not an element of the group"))
        })
        .collect()
}
