//! Integer-side machinery: factorization, prime partitions and the
//! class sets `σ(n)` they induce on positive integers.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Prime factorization by trial division, primes strictly increasing.
pub fn factorize(n: u64) -> Result<Vec<(u64, u32)>> {
    if n == 0 {
        return Err(Error::domain("cannot factorize 0"));
    }
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m, 1));
    }
    Ok(out)
}

/// `π(n)`: the primes dividing `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factorize(n.max(1))
        .expect("n >= 1")
        .into_iter()
        .map(|(p, _)| p)
        .collect()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

pub fn pow_mod(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    acc
}

/// How primes outside every explicit class are grouped.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RemainderPolicy {
    /// All unlisted primes form one final class.
    Complement,
    /// Every unlisted prime is a class of its own.
    Singletons,
}

/// Identifier of one class `σ_i` of a [`PrimePartition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassId {
    Explicit(usize),
    Complement,
    Singleton(u64),
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Explicit(i) => write!(f, "class{i}"),
            ClassId::Complement => write!(f, "complement"),
            ClassId::Singleton(p) => write!(f, "{{{p}}}"),
        }
    }
}

/// A partition σ of the set of all primes, finitely presented as a list of
/// explicit classes plus a rule for the remaining primes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePartition {
    explicit: Vec<BTreeSet<u64>>,
    remainder: RemainderPolicy,
}

impl PrimePartition {
    pub fn new(classes: Vec<BTreeSet<u64>>, remainder: RemainderPolicy) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (i, class) in classes.iter().enumerate() {
            if class.is_empty() {
                return Err(Error::domain(format!("explicit class {i} is empty")));
            }
            for &p in class {
                if !is_prime(p) {
                    return Err(Error::domain(format!("{p} is not a prime")));
                }
                if !seen.insert(p) {
                    return Err(Error::domain(format!("prime {p} listed in two classes")));
                }
            }
        }
        Ok(PrimePartition {
            explicit: classes,
            remainder,
        })
    }

    /// σ¹ = {{2}, {3}, {5}, …}.
    pub fn sigma1() -> Self {
        PrimePartition {
            explicit: Vec::new(),
            remainder: RemainderPolicy::Singletons,
        }
    }

    /// σ^π = {π, π′}.
    pub fn pi(pi: &[u64]) -> Result<Self> {
        Self::new(
            vec![pi.iter().copied().collect()],
            RemainderPolicy::Complement,
        )
    }

    /// σ^{1π} = {{p_1}, …, {p_n}, π′}.
    pub fn one_pi(pi: &[u64]) -> Result<Self> {
        let set: BTreeSet<u64> = pi.iter().copied().collect();
        Self::new(
            set.into_iter().map(|p| BTreeSet::from([p])).collect(),
            RemainderPolicy::Complement,
        )
    }

    pub fn explicit_classes(&self) -> &[BTreeSet<u64>] {
        &self.explicit
    }

    pub fn remainder_policy(&self) -> RemainderPolicy {
        self.remainder
    }

    /// The set π when this partition has the shape {…explicit…, π′}: the
    /// union of the explicit classes. `None` under the singletons policy.
    pub fn listed_primes(&self) -> Option<BTreeSet<u64>> {
        match self.remainder {
            RemainderPolicy::Complement => Some(self.explicit.iter().flatten().copied().collect()),
            RemainderPolicy::Singletons => None,
        }
    }

    pub fn class_of(&self, p: u64) -> ClassId {
        if let Some(i) = self.explicit.iter().position(|c| c.contains(&p)) {
            return ClassId::Explicit(i);
        }
        match self.remainder {
            RemainderPolicy::Complement => ClassId::Complement,
            RemainderPolicy::Singletons => ClassId::Singleton(p),
        }
    }

    /// Whether `class` names a class of this partition.
    pub fn has_class(&self, class: ClassId) -> bool {
        match (class, self.remainder) {
            (ClassId::Explicit(i), _) => i < self.explicit.len(),
            (ClassId::Complement, RemainderPolicy::Complement) => true,
            (ClassId::Singleton(p), RemainderPolicy::Singletons) => {
                is_prime(p) && self.explicit.iter().all(|c| !c.contains(&p))
            }
            _ => false,
        }
    }

    pub fn contains(&self, class: ClassId, p: u64) -> bool {
        self.class_of(p) == class
    }

    /// `σ(n)`: the classes meeting `π(n)`.
    pub fn sigma_of(&self, n: u64) -> Result<BTreeSet<ClassId>> {
        Ok(factorize(n)?
            .into_iter()
            .map(|(p, _)| self.class_of(p))
            .collect())
    }

    /// Largest divisor of `n` whose primes all lie in `class`.
    pub fn sigma_part(&self, n: u64, class: ClassId) -> Result<u64> {
        if !self.has_class(class) {
            return Err(Error::domain(format!("unknown class identifier {class}")));
        }
        Ok(factorize(n)?
            .into_iter()
            .filter(|&(p, _)| self.class_of(p) == class)
            .map(|(p, e)| p.pow(e))
            .product())
    }

    /// `|σ(n)| ≤ 1`.
    pub fn is_primary_number(&self, n: u64) -> bool {
        self.sigma_of(n).map(|s| s.len() <= 1).unwrap_or(false)
    }

    /// All primes of `n` lie in `class` (a σ_i-number).
    pub fn is_class_number(&self, n: u64, class: ClassId) -> bool {
        prime_divisors(n)
            .into_iter()
            .all(|p| self.class_of(p) == class)
    }

    /// Blocks induced on a finite prime set.
    pub fn restrict(&self, primes: &BTreeSet<u64>) -> BTreeSet<BTreeSet<u64>> {
        let mut blocks: std::collections::BTreeMap<ClassId, BTreeSet<u64>> = Default::default();
        for &p in primes {
            blocks.entry(self.class_of(p)).or_default().insert(p);
        }
        blocks.into_values().collect()
    }

    /// Whether both partitions group the primes of `primes` identically.
    pub fn agrees_on(&self, other: &PrimePartition, primes: &BTreeSet<u64>) -> bool {
        self.restrict(primes) == other.restrict(primes)
    }
}

fn fmt_set(f: &mut fmt::Formatter<'_>, set: &BTreeSet<u64>) -> fmt::Result {
    write!(f, "{{")?;
    for (i, p) in set.iter().enumerate() {
        if i > 0 {
            write!(f, ",")?;
        }
        write!(f, "{p}")?;
    }
    write!(f, "}}")
}

impl fmt::Display for PrimePartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use RemainderPolicy::*;
        match (self.explicit.len(), self.remainder) {
            (0, Singletons) => write!(f, "sigma1"),
            (1, Complement) => {
                write!(f, "pi:")?;
                fmt_set(f, &self.explicit[0])
            }
            (_, Complement) if self.explicit.iter().all(|c| c.len() == 1) => {
                write!(f, "onepi:")?;
                fmt_set(f, &self.explicit.iter().flatten().copied().collect())
            }
            _ => {
                write!(f, "classes:[")?;
                for (i, c) in self.explicit.iter().enumerate() {
                    if i > 0 {
                        write!(f, ";")?;
                    }
                    fmt_set(f, c)?;
                }
                let rest = match self.remainder {
                    Complement => "complement",
                    Singletons => "singletons",
                };
                write!(f, "];rest={rest}")
            }
        }
    }
}

fn parse_prime_set(input: &str, body: &str) -> Result<BTreeSet<u64>> {
    let inner = body
        .strip_prefix('{')
        .and_then(|b| b.strip_suffix('}'))
        .ok_or_else(|| Error::parse(input, format!("expected `{{p,...}}`, found `{body}`")))?;
    if inner.is_empty() {
        return Ok(BTreeSet::new());
    }
    inner
        .split(',')
        .map(|tok| {
            tok.parse::<u64>()
                .map_err(|_| Error::parse(input, format!("`{tok}` is not a decimal prime")))
        })
        .collect()
}

impl FromStr for PrimePartition {
    type Err = Error;

    /// Grammar: `sigma1`, `pi:{p,...}`, `onepi:{p,...}`,
    /// `classes:[{p,...};{q,...}];rest=complement|singletons`.
    fn from_str(input: &str) -> Result<Self> {
        let s: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        let reparse = |e: Error| match e {
            Error::Domain(m) => Error::parse(input, m),
            other => other,
        };
        if s == "sigma1" {
            return Ok(PrimePartition::sigma1());
        }
        if let Some(body) = s.strip_prefix("pi:") {
            let set = parse_prime_set(input, body)?;
            return PrimePartition::pi(&set.into_iter().collect::<Vec<_>>()).map_err(reparse);
        }
        if let Some(body) = s.strip_prefix("onepi:") {
            let set = parse_prime_set(input, body)?;
            if set.is_empty() {
                return Err(Error::parse(input, "onepi needs at least one prime"));
            }
            return PrimePartition::one_pi(&set.into_iter().collect::<Vec<_>>()).map_err(reparse);
        }
        if let Some(body) = s.strip_prefix("classes:[") {
            let (list, tail) = body
                .split_once(']')
                .ok_or_else(|| Error::parse(input, "unterminated class list"))?;
            let remainder = match tail {
                "" | ";rest=complement" => RemainderPolicy::Complement,
                ";rest=singletons" => RemainderPolicy::Singletons,
                other => return Err(Error::parse(input, format!("unexpected trailer `{other}`"))),
            };
            let classes = if list.is_empty() {
                Vec::new()
            } else {
                list.split(';')
                    .map(|c| parse_prime_set(input, c))
                    .collect::<Result<Vec<_>>>()?
            };
            return PrimePartition::new(classes, remainder).map_err(reparse);
        }
        Err(Error::parse(input, "unknown sigma specification"))
    }
}

impl Serialize for PrimePartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for PrimePartition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn trial_division_oracle(mut n: u64) -> Vec<(u64, u32)> {
        let mut out: Vec<(u64, u32)> = Vec::new();
        let mut d = 2;
        while n > 1 {
            while n.is_multiple_of(d) {
                n /= d;
                match out.last_mut() {
                    Some((p, e)) if *p == d => *e += 1,
                    _ => out.push((d, 1)),
                }
            }
            d += 1;
        }
        out
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(1).unwrap(), vec![]);
        assert_eq!(factorize(12).unwrap(), vec![(2, 2), (3, 1)]);
        assert_eq!(
            factorize(660).unwrap(),
            vec![(2, 2), (3, 1), (5, 1), (11, 1)]
        );
        assert!(matches!(factorize(0), Err(Error::Domain(_))));
    }

    #[test]
    fn sigma_of_examples() {
        let s1 = PrimePartition::sigma1();
        assert!(s1.sigma_of(1).unwrap().is_empty());
        assert_eq!(
            s1.sigma_of(12).unwrap(),
            BTreeSet::from([ClassId::Singleton(2), ClassId::Singleton(3)])
        );
        let c: PrimePartition = "classes:[{2,5,11}]".parse().unwrap();
        assert_eq!(
            c.sigma_of(660).unwrap(),
            BTreeSet::from([ClassId::Explicit(0), ClassId::Complement])
        );
    }

    #[test]
    fn sigma_part_examples() {
        let s1 = PrimePartition::sigma1();
        assert_eq!(s1.sigma_part(12, ClassId::Singleton(2)).unwrap(), 4);
        let c: PrimePartition = "classes:[{2,5,11}];rest=complement".parse().unwrap();
        assert_eq!(c.sigma_part(660, ClassId::Explicit(0)).unwrap(), 220);
        assert_eq!(s1.sigma_part(7, ClassId::Singleton(5)).unwrap(), 1);
        assert!(s1.sigma_part(12, ClassId::Complement).is_err());
        assert!(s1.sigma_part(12, ClassId::Explicit(0)).is_err());
        assert!(c.sigma_part(12, ClassId::Singleton(3)).is_err());
    }

    #[test]
    fn primary_numbers() {
        let s1 = PrimePartition::sigma1();
        assert!(s1.is_primary_number(1));
        assert!(!s1.is_primary_number(12));
        assert!(PrimePartition::pi(&[2, 3]).unwrap().is_primary_number(12));
    }

    #[test]
    fn spec_grammar() {
        let p: PrimePartition = " onepi : { 3 , 2 } ".parse().unwrap();
        assert_eq!(p.explicit_classes().len(), 2);
        assert_eq!(p.remainder_policy(), RemainderPolicy::Complement);
        assert_eq!(p.to_string(), "onepi:{2,3}");
        assert_eq!(
            "sigma1".parse::<PrimePartition>().unwrap(),
            PrimePartition::sigma1()
        );
        let q: PrimePartition = "classes:[{2,3};{5}];rest=singletons".parse().unwrap();
        assert_eq!(q.class_of(7), ClassId::Singleton(7));
        assert_eq!(q.class_of(5), ClassId::Explicit(1));
        assert_eq!(q.to_string().parse::<PrimePartition>().unwrap(), q);
        for bad in [
            "pi:{4}",
            "pi:{}",
            "classes:[{2};{2}]",
            "sigma2",
            "pi:{2,x}",
            "classes:[{}]",
        ] {
            assert!(
                matches!(bad.parse::<PrimePartition>(), Err(Error::Parse { .. })),
                "{bad}"
            );
        }
    }

    #[test]
    fn equivalent_presentations_agree() {
        let primes: BTreeSet<u64> = [2, 3, 5, 7, 11].into();
        let a: PrimePartition = "pi:{2}".parse().unwrap();
        let b: PrimePartition = "onepi:{2}".parse().unwrap();
        assert!(a.agrees_on(&b, &primes));
        let c: PrimePartition = "classes:[{2};{3};{5};{7};{11}];rest=singletons"
            .parse()
            .unwrap();
        assert!(c.agrees_on(&PrimePartition::sigma1(), &primes));
        assert!(!a.agrees_on(&PrimePartition::sigma1(), &primes));
    }

    #[test]
    fn class_of_is_total_below_a_million() {
        let parts = [
            PrimePartition::sigma1(),
            PrimePartition::pi(&[2, 3]).unwrap(),
            PrimePartition::one_pi(&[2, 5, 7]).unwrap(),
            "classes:[{2,5,11};{3,13}];rest=singletons".parse().unwrap(),
        ];
        let mut sieve = vec![true; 1_000_001];
        for p in 2..=1_000_000usize {
            if !sieve[p] {
                continue;
            }
            for m in (p * p..=1_000_000).step_by(p) {
                sieve[m] = false;
            }
            for part in &parts {
                let c = part.class_of(p as u64);
                assert!(part.has_class(c));
                assert!(part.contains(c, p as u64));
            }
        }
    }

    fn partitions() -> impl Strategy<Value = PrimePartition> {
        prop_oneof![
            Just(PrimePartition::sigma1()),
            Just(PrimePartition::pi(&[2, 3]).unwrap()),
            Just(PrimePartition::pi(&[2, 5]).unwrap()),
            Just(PrimePartition::one_pi(&[2, 3]).unwrap()),
            Just("classes:[{2,5,11}]".parse().unwrap()),
            Just("classes:[{3};{2,7}];rest=singletons".parse().unwrap()),
        ]
    }

    proptest! {
        #[test]
        fn factorization_matches_oracle(n in 1u64..200_000) {
            let f = factorize(n).unwrap();
            prop_assert_eq!(&f, &trial_division_oracle(n));
            prop_assert_eq!(f.iter().map(|&(p, e)| p.pow(e)).product::<u64>(), n);
        }

        #[test]
        fn sigma_of_is_multiplicative(n in 1u64..5000, m in 1u64..5000, sigma in partitions()) {
            let mut union = sigma.sigma_of(n).unwrap();
            union.extend(sigma.sigma_of(m).unwrap());
            prop_assert_eq!(sigma.sigma_of(n * m).unwrap(), union);
        }

        #[test]
        fn sigma_parts_multiply_back(n in 1u64..100_000, m in 1u64..1000, sigma in partitions()) {
            let classes = sigma.sigma_of(n).unwrap();
            let prod: u64 = classes.iter().map(|&c| sigma.sigma_part(n, c).unwrap()).product();
            prop_assert_eq!(prod, n);
            if gcd(n, m) == 1 {
                for c in sigma.sigma_of(n * m).unwrap() {
                    prop_assert_eq!(
                        sigma.sigma_part(n * m, c).unwrap(),
                        sigma.sigma_part(n, c).unwrap() * sigma.sigma_part(m, c).unwrap()
                    );
                }
            }
        }
    }
}
