//! Named constructions of permutation groups.
//!
//! Grammar, whitespace-insensitive:
//!
//! ```text
//! expr := C(n) | D(2n) | Q8 | S(n) | A(n) | E(p,k)
//!       | DP(expr,expr) | SDC(r,t,e) | PERM(<group literal json>)
//! ```
//!
//! `D(m)` is dihedral of order `m`. `SDC(r,t,e)` is `C_r ⋊ C_t` with the
//! generator of `C_t` acting by `x ↦ x^e`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{is_prime, pow_mod, PrimePartition};
use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupLiteral};
use crate::limits::Limits;
use crate::subgroup::Subgroup;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupExpr {
    Cyclic(usize),
    Dihedral(usize),
    Quaternion,
    Symmetric(usize),
    Alternating(usize),
    Elementary(u64, u32),
    Direct(Box<GroupExpr>, Box<GroupExpr>),
    Semidirect(u64, u64, u64),
    Perm(GroupLiteral),
}

impl fmt::Display for GroupExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupExpr::Cyclic(n) => write!(f, "C({n})"),
            GroupExpr::Dihedral(m) => write!(f, "D({m})"),
            GroupExpr::Quaternion => write!(f, "Q8"),
            GroupExpr::Symmetric(n) => write!(f, "S({n})"),
            GroupExpr::Alternating(n) => write!(f, "A({n})"),
            GroupExpr::Elementary(p, k) => write!(f, "E({p},{k})"),
            GroupExpr::Direct(a, b) => write!(f, "DP({a},{b})"),
            GroupExpr::Semidirect(r, t, e) => write!(f, "SDC({r},{t},{e})"),
            GroupExpr::Perm(lit) => {
                write!(
                    f,
                    "PERM({})",
                    serde_json::to_string(lit).map_err(|_| fmt::Error)?
                )
            }
        }
    }
}

struct Parser<'a> {
    input: &'a str,
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(self.input, format!("{} at byte {}", msg.into(), self.pos))
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.src[self.pos..].chars().next() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn eat(&mut self, c: char) -> Result<()> {
        self.skip_ws();
        if self.src[self.pos..].starts_with(c) {
            self.pos += c.len_utf8();
            Ok(())
        } else {
            Err(self.err(format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Result<&'a str> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_alphanumeric())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a constructor name"));
        }
        self.pos += len;
        Ok(&rest[..len])
    }

    fn number(&mut self) -> Result<u64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(rest.len());
        if len == 0 {
            return Err(self.err("expected a number"));
        }
        let n = rest[..len]
            .parse()
            .map_err(|_| self.err("number out of range"))?;
        self.pos += len;
        Ok(n)
    }

    fn args(&mut self, n: usize) -> Result<Vec<u64>> {
        self.eat('(')?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            if i > 0 {
                self.eat(',')?;
            }
            out.push(self.number()?);
        }
        self.eat(')')?;
        Ok(out)
    }

    fn small_arg(&mut self) -> Result<usize> {
        let v = self.args(1)?[0];
        usize::try_from(v).map_err(|_| self.err("argument too large"))
    }

    fn expr(&mut self) -> Result<GroupExpr> {
        let name = self.ident()?;
        Ok(match name {
            "C" => GroupExpr::Cyclic(self.small_arg()?),
            "D" => GroupExpr::Dihedral(self.small_arg()?),
            "Q8" => GroupExpr::Quaternion,
            "S" => GroupExpr::Symmetric(self.small_arg()?),
            "A" => GroupExpr::Alternating(self.small_arg()?),
            "E" => {
                let a = self.args(2)?;
                let k = u32::try_from(a[1]).map_err(|_| self.err("exponent too large"))?;
                GroupExpr::Elementary(a[0], k)
            }
            "SDC" => {
                let a = self.args(3)?;
                GroupExpr::Semidirect(a[0], a[1], a[2])
            }
            "DP" => {
                self.eat('(')?;
                let a = self.expr()?;
                self.eat(',')?;
                let b = self.expr()?;
                self.eat(')')?;
                GroupExpr::Direct(Box::new(a), Box::new(b))
            }
            "PERM" => {
                self.eat('(')?;
                let rest = &self.src[self.pos..];
                let mut stream =
                    serde_json::Deserializer::from_str(rest).into_iter::<GroupLiteral>();
                let lit = match stream.next() {
                    Some(Ok(lit)) => lit,
                    Some(Err(e)) => return Err(self.err(format!("bad group literal: {e}"))),
                    None => return Err(self.err("missing group literal")),
                };
                self.pos += stream.byte_offset();
                self.eat(')')?;
                GroupExpr::Perm(lit)
            }
            other => return Err(self.err(format!("unknown constructor `{other}`"))),
        })
    }
}

impl FromStr for GroupExpr {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            input: s,
            src: s,
            pos: 0,
        };
        let e = p.expr()?;
        p.skip_ws();
        if p.pos != s.len() {
            return Err(p.err("trailing input"));
        }
        e.validate()?;
        Ok(e)
    }
}

fn cycle(degree: usize, points: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = (0..degree).collect();
    for (i, &p) in points.iter().enumerate() {
        img[p] = points[(i + 1) % points.len()];
    }
    img
}

fn check_prime(p: u64, what: &str) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::domain(format!("{what} = {p} is not prime")));
    }
    Ok(())
}

/// Largest permutation degree a constructor may produce.
pub const MAX_DEGREE: usize = 1 << 16;

impl GroupExpr {
    /// Degree of the permutation representation [`GroupExpr::literal`] uses.
    pub fn degree(&self) -> usize {
        match *self {
            GroupExpr::Cyclic(n) | GroupExpr::Symmetric(n) | GroupExpr::Alternating(n) => n,
            GroupExpr::Dihedral(m) => match m / 2 {
                1 => 2,
                2 => 4,
                n => n,
            },
            GroupExpr::Quaternion => 8,
            GroupExpr::Elementary(p, k) => (p as usize).saturating_mul(k as usize).max(1),
            GroupExpr::Semidirect(r, _, _) => r as usize,
            GroupExpr::Direct(ref a, ref b) => a.degree().saturating_add(b.degree()),
            GroupExpr::Perm(ref l) => l.degree,
        }
    }

    /// Parameter checks that do not require building the group.
    pub fn validate(&self) -> Result<()> {
        if self.degree() > MAX_DEGREE {
            return Err(Error::resource(format!(
                "{self}: degree exceeds {MAX_DEGREE}"
            )));
        }
        match *self {
            GroupExpr::Cyclic(n) | GroupExpr::Symmetric(n) | GroupExpr::Alternating(n)
                if n == 0 =>
            {
                Err(Error::domain(format!("{self}: argument must be positive")))
            }
            GroupExpr::Dihedral(m) if m < 2 || m % 2 == 1 => Err(Error::domain(format!(
                "{self}: order must be even and at least 2"
            ))),
            GroupExpr::Elementary(p, _) => check_prime(p, "p"),
            GroupExpr::Semidirect(r, t, e) => {
                check_prime(r, "r")?;
                check_prime(t, "t")?;
                if e % r == 1 || e % r == 0 {
                    return Err(Error::domain(format!(
                        "{self}: e must be a unit other than 1 mod r"
                    )));
                }
                if pow_mod(e, t, r) != 1 {
                    return Err(Error::domain(format!("{self}: e^t is not 1 mod r")));
                }
                Ok(())
            }
            GroupExpr::Direct(ref a, ref b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Degree and generating permutations.
    pub fn literal(&self) -> Result<GroupLiteral> {
        self.validate()?;
        let lit = |degree: usize, generators: Vec<Vec<usize>>| GroupLiteral { degree, generators };
        Ok(match *self {
            GroupExpr::Cyclic(n) => {
                let gens = if n > 1 {
                    vec![cycle(n, &(0..n).collect::<Vec<_>>())]
                } else {
                    vec![]
                };
                lit(n, gens)
            }
            GroupExpr::Dihedral(m) => match m / 2 {
                1 => lit(2, vec![vec![1, 0]]),
                2 => lit(4, vec![vec![1, 0, 2, 3], vec![0, 1, 3, 2]]),
                n => {
                    let rot = cycle(n, &(0..n).collect::<Vec<_>>());
                    let refl = (0..n).map(|i| (n - i) % n).collect();
                    lit(n, vec![rot, refl])
                }
            },
            GroupExpr::Quaternion => lit(
                8,
                // right multiplication by i and j on 1, -1, i, -i, j, -j, k, -k
                vec![vec![2, 3, 1, 0, 7, 6, 4, 5], vec![4, 5, 6, 7, 1, 0, 3, 2]],
            ),
            GroupExpr::Symmetric(n) => {
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(cycle(n, &[0, 1]));
                }
                if n >= 3 {
                    gens.push(cycle(n, &(0..n).collect::<Vec<_>>()));
                }
                lit(n, gens)
            }
            GroupExpr::Alternating(n) => lit(n, (2..n).map(|k| cycle(n, &[0, 1, k])).collect()),
            GroupExpr::Elementary(p, k) => {
                let p = p as usize;
                let degree = (p * k as usize).max(1);
                let gens = (0..k as usize)
                    .map(|i| cycle(degree, &(i * p..(i + 1) * p).collect::<Vec<_>>()))
                    .collect();
                lit(degree, gens)
            }
            GroupExpr::Semidirect(r, _, e) => {
                let (r, e) = (r as usize, e as usize);
                let shift = (0..r).map(|x| (x + 1) % r).collect();
                let scale = (0..r).map(|x| x * e % r).collect();
                lit(r, vec![shift, scale])
            }
            GroupExpr::Direct(ref a, ref b) => {
                let la = a.literal()?;
                let lb = b.literal()?;
                let degree = la.degree + lb.degree;
                let mut gens = Vec::new();
                for g in &la.generators {
                    let mut img = g.clone();
                    img.extend(la.degree..degree);
                    gens.push(img);
                }
                for g in &lb.generators {
                    let mut img: Vec<usize> = (0..la.degree).collect();
                    img.extend(g.iter().map(|&x| x + la.degree));
                    gens.push(img);
                }
                lit(degree, gens)
            }
            GroupExpr::Perm(ref l) => l.clone(),
        })
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        self.build_with(&Limits::default())
    }

    pub fn build_with(&self, limits: &Limits) -> Result<FiniteGroup> {
        let lit = self.literal()?;
        FiniteGroup::from_permutations_with(lit.degree, &lit.generators, limits)
    }
}

/// Parse and build in one step.
pub fn build(expr: &str) -> Result<FiniteGroup> {
    expr.parse::<GroupExpr>()?.build()
}

/// Expressions of the standard test matrix.
pub fn standard_suite_exprs() -> Vec<GroupExpr> {
    let mut out: Vec<GroupExpr> = (1..=12).map(GroupExpr::Cyclic).collect();
    for s in [
        "E(2,2)",
        "E(3,2)",
        "D(8)",
        "D(10)",
        "D(12)",
        "Q8",
        "S(3)",
        "S(4)",
        "A(4)",
        "A(5)",
        "SDC(5,2,4)",
        "SDC(11,5,3)",
        "SDC(7,3,2)",
        "DP(A(4),SDC(11,5,3))",
    ] {
        out.push(s.parse().expect("suite expression parses"));
    }
    out
}

/// The standard test matrix, built and checked against the group axioms.
pub fn standard_suite() -> Vec<(GroupExpr, FiniteGroup)> {
    standard_suite_exprs()
        .into_iter()
        .map(|e| {
            let g = e.build().expect("suite group builds");
            debug_assert!(g.validate_axioms(200));
            (e, g)
        })
        .collect()
}

/// A group with a subgroup `a` that is σ-quasinormal but not subnormal, and
/// a subgroup `b` that is not modular.
#[derive(Debug)]
pub struct ModularExample {
    pub expr: GroupExpr,
    pub group: FiniteGroup,
    pub a: Subgroup,
    pub b: Subgroup,
    pub sigma: PrimePartition,
}

/// `A(4) × (C_11 ⋊ C_5)` of order 660; `a` is a complement `C_5` in the
/// second factor, `b` an order-2 subgroup of the Klein four-group and
/// `σ = {{2,5,11}, {2,5,11}′}`.
pub fn example12_analog() -> ModularExample {
    let expr: GroupExpr = "DP(A(4),SDC(11,5,3))".parse().expect("valid");
    let group = expr.build().expect("builds");
    let mut t: Vec<usize> = (0..15).collect();
    for x in 0..11 {
        t[4 + x] = 4 + x * 3 % 11;
    }
    let t = group.find_permutation(&t).expect("t lies in the group");
    let mut v: Vec<usize> = (0..15).collect();
    v[..4].copy_from_slice(&[1, 0, 3, 2]);
    let v = group
        .find_permutation(&v)
        .expect("involution lies in the group");
    let a = Subgroup::generated(&group, &[t]);
    let b = Subgroup::generated(&group, &[v]);
    let sigma = "classes:[{2,5,11}]".parse().expect("valid");
    ModularExample {
        expr,
        group,
        a,
        b,
        sigma,
    }
}

// GF(3)[x] polynomials of degree < 6 packed as base-3 digits.
fn gf3_mul_x(v: usize, modulus: &[usize; 6]) -> usize {
    let mut d = [0usize; 6];
    let mut w = v;
    for c in d.iter_mut() {
        *c = w % 3;
        w /= 3;
    }
    let top = d[5];
    let mut out = [0usize; 6];
    for i in (1..6).rev() {
        out[i] = d[i - 1];
    }
    // x^6 = -(m_0 + m_1 x + ... + m_5 x^5)
    for i in 0..6 {
        out[i] = (out[i] + 3 * 3 - top * modulus[i]) % 3;
    }
    out.iter().rev().fold(0, |acc, &c| acc * 3 + c)
}

fn gf3_primitive_modulus() -> [usize; 6] {
    'search: for code in 0..729usize {
        let mut m = [0usize; 6];
        let mut w = code;
        for c in m.iter_mut() {
            *c = w % 3;
            w /= 3;
        }
        if m[0] == 0 {
            continue;
        }
        // order of x must be exactly 728 = 2^3 · 7 · 13
        let mut pow = vec![0usize; 729];
        let mut cur = 1usize;
        for (k, slot) in pow.iter_mut().enumerate() {
            *slot = cur;
            cur = gf3_mul_x(cur, &m);
            if cur == 1 && k + 1 < 728 {
                continue 'search;
            }
        }
        if pow[728] == 1 {
            return m;
        }
    }
    unreachable!("GF(3^6) has primitive polynomials")
}

/// The smallest instance with all size hypotheses:
/// `(Q ⋊ C_7) × (C_5 ⋊ C_2)` where `Q = GF(3^6)` with `C_7` acting by
/// multiplication by a seventh root of unity. Order 51030, degree 734.
/// Far beyond lattice scale, so only element-level checks apply.
pub fn example12_full() -> Result<ModularExample> {
    let m = gf3_primitive_modulus();
    let q = 729usize;
    let mut gens = Vec::new();
    for i in 0..6 {
        let step = 3usize.pow(i);
        let mut img: Vec<usize> = (0..q + 5).collect();
        for (v, slot) in img.iter_mut().enumerate().take(q) {
            // add the basis vector x^i digitwise mod 3
            let digit = v / step % 3;
            *slot = v - digit * step + (digit + 1) % 3 * step;
        }
        gens.push(img);
    }
    let mut zeta: Vec<usize> = (0..q + 5).collect();
    for (v, slot) in zeta.iter_mut().enumerate().take(q) {
        let mut w = v;
        for _ in 0..104 {
            w = gf3_mul_x(w, &m);
        }
        *slot = w;
    }
    gens.push(zeta);
    let inner = GroupExpr::Semidirect(5, 2, 4).literal()?;
    let mut tperm = Vec::new();
    for g in &inner.generators {
        let mut img: Vec<usize> = (0..q).collect();
        img.extend(g.iter().map(|&x| x + q));
        gens.push(img.clone());
        tperm = img;
    }
    let lit = GroupLiteral {
        degree: q + 5,
        generators: gens,
    };
    let group = FiniteGroup::from_literal(&lit)?;
    let t = group
        .find_permutation(&tperm)
        .expect("generator lies in the group");
    let b = group
        .find_permutation(&lit.generators[0])
        .expect("generator lies in the group");
    Ok(ModularExample {
        expr: GroupExpr::Perm(lit),
        a: Subgroup::generated(&group, &[t]),
        b: Subgroup::generated(&group, &[b]),
        group,
        sigma: "classes:[{2,3,5}]".parse().expect("valid"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chief::is_p_group_of_type;

    #[test]
    fn parse_and_display() {
        for s in [
            "C(6)",
            "D(8)",
            "Q8",
            "S(4)",
            "A(5)",
            "E(2,3)",
            "SDC(11,5,3)",
            "DP(A(4),SDC(11,5,3))",
        ] {
            let e: GroupExpr = s.parse().unwrap();
            assert_eq!(e.to_string(), s);
        }
        let e: GroupExpr = " DP( C(2) , S( 3 ) ) ".parse().unwrap();
        assert_eq!(e.to_string(), "DP(C(2),S(3))");
        let e: GroupExpr = r#"PERM({"degree": 3, "generators": [[1,0,2],[1,2,0]]})"#
            .parse()
            .unwrap();
        assert_eq!(e.build().unwrap().order(), 6);
        assert_eq!(e.to_string().parse::<GroupExpr>().unwrap(), e);
        for bad in [
            "",
            "C",
            "C(",
            "C(0)",
            "X(3)",
            "D(7)",
            "SDC(11,5,1)",
            "SDC(11,4,3)",
            "SDC(12,5,3)",
            "SDC(11,5,2)",
            "C(3) x",
            "PERM({)",
        ] {
            assert!(bad.parse::<GroupExpr>().is_err(), "{bad}");
        }
        assert!(matches!(
            "SDC(11,5,1)".parse::<GroupExpr>(),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            "C(3".parse::<GroupExpr>(),
            Err(Error::Parse { .. })
        ));
    }

    #[test]
    fn orders_and_markers() {
        let cases = [
            ("C(1)", 1, true),
            ("C(6)", 6, true),
            ("D(2)", 2, true),
            ("D(4)", 4, true),
            ("D(8)", 8, false),
            ("D(12)", 12, false),
            ("Q8", 8, false),
            ("S(1)", 1, true),
            ("S(3)", 6, false),
            ("S(4)", 24, false),
            ("A(3)", 3, true),
            ("A(4)", 12, false),
            ("A(5)", 60, false),
            ("E(2,2)", 4, true),
            ("E(3,2)", 9, true),
            ("SDC(11,5,3)", 55, false),
            ("DP(A(4),SDC(11,5,3))", 660, false),
        ];
        for (s, order, abelian) in cases {
            let g = build(s).unwrap();
            assert_eq!(g.order(), order, "{s}");
            assert_eq!(g.is_abelian(), abelian, "{s}");
            assert!(g.validate_axioms(200), "{s}");
        }
        let q8 = build("Q8").unwrap();
        assert_eq!(q8.center_order(), 2);
        assert_eq!(q8.exponent(), 4);
        assert_eq!(build("D(8)").unwrap().center_order(), 2);
        assert_eq!(build("D(10)").unwrap().center_order(), 1);
        assert_eq!(build("E(3,2)").unwrap().exponent(), 3);
    }

    #[test]
    fn semidirect_products_are_p_groups() {
        assert_eq!(
            is_p_group_of_type(&build("SDC(11,5,3)").unwrap()),
            Some((11, 5))
        );
        assert_eq!(
            is_p_group_of_type(&build("SDC(7,3,2)").unwrap()),
            Some((7, 3))
        );
        assert_eq!(
            is_p_group_of_type(&build("SDC(5,2,4)").unwrap()),
            Some((5, 2))
        );
    }

    #[test]
    fn suite_contents() {
        let suite = standard_suite();
        assert_eq!(suite.len(), 26);
        assert!(suite
            .iter()
            .any(|(e, g)| e.to_string() == "SDC(7,3,2)" && g.order() == 21));
    }

    #[test]
    fn analog_example() {
        let ex = example12_analog();
        assert_eq!(ex.group.order(), 660);
        assert_eq!(ex.a.order(), 5);
        assert_eq!(ex.b.order(), 2);
        assert_eq!(ex.sigma.to_string(), "pi:{2,5,11}");
    }

    #[test]
    fn gf3_field() {
        let m = gf3_primitive_modulus();
        // multiplication by x is a bijection on nonzero elements
        let mut seen = vec![false; 729];
        for v in 0..729 {
            seen[gf3_mul_x(v, &m)] = true;
        }
        assert!(seen.iter().all(|&s| s));
    }
}
