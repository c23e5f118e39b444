//! σ-properties of groups and subgroups.

use std::cell::RefCell;
use std::collections::{BTreeSet, HashMap, HashSet};

use crate::arith::{prime_divisors, ClassId, PrimePartition};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::lattice::Lattice;
use crate::subgroup::{core_in, permutes, Closure, Subgroup};

/// `|G|` involves at most one σ-class.
pub fn is_sigma_primary_group(g: &FiniteGroup, sigma: &PrimePartition) -> bool {
    sigma.is_primary_number(g.order() as u64)
}

/// σ-nilpotency from elements: for each class `c` of `|G|` the elements whose
/// order is a `c`-number form a subgroup of order the `c`-part of `|G|`.
pub fn is_sigma_nilpotent(g: &FiniteGroup, sigma: &PrimePartition) -> bool {
    let n = g.order() as u64;
    let classes = sigma.sigma_of(n).expect("group order is positive");
    if classes.len() <= 1 {
        return true;
    }
    let elem_class: Vec<BTreeSet<ClassId>> = {
        let mut by_order: HashMap<usize, BTreeSet<ClassId>> = HashMap::new();
        g.elements()
            .map(|x| {
                let o = g.element_order(x);
                by_order
                    .entry(o)
                    .or_insert_with(|| sigma.sigma_of(o as u64).expect("positive"))
                    .clone()
            })
            .collect()
    };
    classes.iter().all(|&c| {
        let part = sigma.sigma_part(n, c).expect("class of |G|") as usize;
        let members: Vec<Elem> = g
            .elements()
            .filter(|&x| elem_class[x].iter().all(|&d| d == c))
            .collect();
        if members.len() != part {
            return false;
        }
        let mut closure = Closure::trivial(g);
        for &x in &members {
            if !closure.contains(x) {
                closure.add(x);
                if closure.len() > part {
                    return false;
                }
            }
        }
        true
    })
}

/// One link of a σ-subnormal chain: `B ⊴ C`, or `C/B_C` is σ-primary.
pub fn step_ok(
    g: &FiniteGroup,
    b: &Subgroup,
    c: &Subgroup,
    sigma: &PrimePartition,
) -> Result<bool> {
    if b.parent_id() != c.parent_id() || b.parent_id() != g.id() {
        return Err(Error::domain("subgroups belong to different groups"));
    }
    if !b.is_subgroup_of(c) {
        return Err(Error::domain("step requires B ≤ C"));
    }
    Ok(step_holds(g, b, c, sigma))
}

fn step_holds(g: &FiniteGroup, b: &Subgroup, c: &Subgroup, sigma: &PrimePartition) -> bool {
    if sigma.is_primary_number(c.order() as u64) || b.is_normal_in(g, c) {
        return true;
    }
    let core = core_in(g, c, b);
    sigma.is_primary_number((c.order() / core.order()) as u64)
}

/// A chain `A_0 ≤ A_1 ≤ … ≤ A_n` of subgroups of one group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaChain {
    terms: Vec<Subgroup>,
}

impl SigmaChain {
    pub fn new(terms: Vec<Subgroup>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::domain("empty chain"));
        }
        for w in terms.windows(2) {
            if w[0].parent_id() != w[1].parent_id() {
                return Err(Error::domain("chain terms belong to different groups"));
            }
            if !w[0].is_subgroup_of(&w[1]) {
                return Err(Error::domain("chain terms are not nested"));
            }
        }
        Ok(SigmaChain { terms })
    }

    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    pub fn bottom(&self) -> &Subgroup {
        &self.terms[0]
    }

    pub fn top(&self) -> &Subgroup {
        self.terms.last().expect("non-empty")
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Every link of the chain satisfies [`step_ok`].
pub fn verify_sigma_chain(
    g: &FiniteGroup,
    chain: &SigmaChain,
    sigma: &PrimePartition,
) -> Result<bool> {
    if chain.bottom().parent_id() != g.id() {
        return Err(Error::domain("chain belongs to a different group"));
    }
    for w in chain.terms.windows(2) {
        if !step_ok(g, &w[0], &w[1], sigma)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Subgroups reachable downward from an ambient by σ-chain links.
#[derive(Debug, Clone)]
pub struct Reach {
    ambient: usize,
    members: BitSet,
    parent: Vec<Option<usize>>,
}

impl Reach {
    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Lattice indices of the subgroups σ-subnormal in the ambient.
    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(i)
    }
}

/// σ-subnormality decisions over one lattice and one σ, with a cache of
/// chain links shared between queries.
pub struct SigmaSubnormality<'l, 'g> {
    lattice: &'l Lattice<'g>,
    sigma: PrimePartition,
    steps: RefCell<HashMap<(usize, usize), bool>>,
}

impl<'l, 'g> SigmaSubnormality<'l, 'g> {
    pub fn new(lattice: &'l Lattice<'g>, sigma: &PrimePartition) -> Self {
        SigmaSubnormality {
            lattice,
            sigma: sigma.clone(),
            steps: RefCell::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &'l Lattice<'g> {
        self.lattice
    }

    pub fn sigma(&self) -> &PrimePartition {
        &self.sigma
    }

    /// Link check between lattice entries `b < c`.
    pub fn step(&self, b: usize, c: usize) -> bool {
        if let Some(&v) = self.steps.borrow().get(&(b, c)) {
            return v;
        }
        let l = self.lattice;
        let v = step_holds(l.group(), l.get(b), l.get(c), &self.sigma);
        self.steps.borrow_mut().insert((b, c), v);
        v
    }

    /// All subgroups of `ambient` (optionally only those containing `floor`)
    /// that are σ-subnormal in it.
    pub fn reach(&self, ambient: usize, floor: Option<usize>) -> Reach {
        let p = self.lattice.poset();
        let n = p.len();
        let mut nodes = p.down(ambient).clone();
        if let Some(f) = floor {
            nodes.intersect_with(p.up(f));
        }
        let mut members = BitSet::new(n);
        let mut parent = vec![None; n];
        let mut depth = vec![0usize; n];
        members.insert(ambient);
        let order: Vec<usize> = nodes.iter().collect();
        for &b in order.iter().rev() {
            if b == ambient {
                continue;
            }
            // candidates above b inside the interval that are already reached
            let mut above = p.up(b).intersection(&members);
            above.remove(b);
            // shortest witness: the reachable parent nearest the ambient
            if let Some(c) = above
                .iter()
                .filter(|&c| self.step(b, c))
                .min_by_key(|&c| (depth[c], c))
            {
                members.insert(b);
                parent[b] = Some(c);
                depth[b] = depth[c] + 1;
            }
        }
        Reach {
            ambient,
            members,
            parent,
        }
    }

    /// Witness chain from `a` up to the ambient of `reach`, of minimal length.
    pub fn chain(&self, reach: &Reach, a: usize) -> Option<SigmaChain> {
        if !reach.contains(a) {
            return None;
        }
        let mut terms = vec![self.lattice.get(a).clone()];
        let mut cur = a;
        while cur != reach.ambient {
            cur = reach.parent[cur].expect("reached entries have parents");
            terms.push(self.lattice.get(cur).clone());
        }
        Some(SigmaChain::new(terms).expect("lattice chain is nested"))
    }

    /// Decide whether `a` is σ-subnormal in `ambient`, with a witness chain.
    pub fn query(&self, a: usize, ambient: usize) -> Result<(bool, Option<SigmaChain>)> {
        if !self.lattice.poset().le(a, ambient) {
            return Err(Error::domain("subgroup is not contained in the ambient"));
        }
        let reach = self.reach(ambient, Some(a));
        let chain = self.chain(&reach, a);
        Ok((chain.is_some(), chain))
    }
}

/// σ-subnormality of `a` in the whole group, with a witness chain when true.
pub fn is_sigma_subnormal(
    lattice: &Lattice,
    a: &Subgroup,
    sigma: &PrimePartition,
) -> Result<(bool, Option<SigmaChain>)> {
    let ai = lattice.index_of(a)?;
    SigmaSubnormality::new(lattice, sigma).query(ai, lattice.top())
}

/// σ-subnormality of `a` in the subgroup `ambient`.
pub fn is_sigma_subnormal_in(
    lattice: &Lattice,
    a: &Subgroup,
    ambient: &Subgroup,
    sigma: &PrimePartition,
) -> Result<(bool, Option<SigmaChain>)> {
    let ai = lattice.index_of(a)?;
    let ki = lattice.index_of(ambient)?;
    SigmaSubnormality::new(lattice, sigma).query(ai, ki)
}

/// Which modular identity failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModularLaw {
    /// `⟨X, A ∩ Z⟩ = ⟨X, A⟩ ∩ Z` for `X ≤ Z`
    First,
    /// `⟨A, Y ∩ Z⟩ = ⟨A, Y⟩ ∩ Z` for `A ≤ Z`
    Second,
}

/// A pair violating one of the modular identities for `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModularViolation {
    pub law: ModularLaw,
    /// `X` for the first law, `Y` for the second.
    pub other: Subgroup,
    pub z: Subgroup,
}

/// First violation of the modular identities for lattice entry `a`, with
/// all quantifiers ranging over subgroups of `ambient`.
pub fn modular_violation_in(
    lattice: &Lattice,
    a: usize,
    ambient: usize,
) -> Option<ModularViolation> {
    let p = lattice.poset();
    let within: Vec<usize> = p.down(ambient).iter().collect();
    for &z in &within {
        let az = lattice.meet(a, z);
        for x in p.down(z).iter() {
            let lhs = lattice.join(x, az);
            let rhs = lattice.meet(lattice.join(x, a), z);
            if lhs != rhs {
                return Some(ModularViolation {
                    law: ModularLaw::First,
                    other: lattice.get(x).clone(),
                    z: lattice.get(z).clone(),
                });
            }
        }
    }
    for z in p.up(a).iter().filter(|&z| p.le(z, ambient)) {
        for &y in &within {
            let lhs = lattice.join(a, lattice.meet(y, z));
            let rhs = lattice.meet(lattice.join(a, y), z);
            if lhs != rhs {
                return Some(ModularViolation {
                    law: ModularLaw::Second,
                    other: lattice.get(y).clone(),
                    z: lattice.get(z).clone(),
                });
            }
        }
    }
    None
}

/// Exhaustive modularity of `a` in the whole group.
pub fn is_modular(lattice: &Lattice, a: &Subgroup) -> Result<bool> {
    let ai = lattice.index_of(a)?;
    Ok(modular_violation_in(lattice, ai, lattice.top()).is_none())
}

/// Exhaustive modularity of `a` in the subgroup `ambient` (`a ≤ ambient`).
pub fn is_modular_in(lattice: &Lattice, a: &Subgroup, ambient: &Subgroup) -> Result<bool> {
    let ai = lattice.index_of(a)?;
    let ki = lattice.index_of(ambient)?;
    if !lattice.poset().le(ai, ki) {
        return Err(Error::domain("subgroup is not contained in the ambient"));
    }
    Ok(modular_violation_in(lattice, ai, ki).is_none())
}

/// Search for a violation of modularity among cyclic subgroups and joins of
/// `a` with cyclic subgroups, checking at most `budget` pairs. `None` means
/// no violation was found, not that `a` is modular.
pub fn refute_modular(
    g: &FiniteGroup,
    a: &Subgroup,
    budget: usize,
) -> Result<Option<ModularViolation>> {
    if a.parent_id() != g.id() {
        return Err(Error::domain("subgroup belongs to a different group"));
    }
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut pool: Vec<Subgroup> = Vec::new();
    let mut cyclics = Vec::new();
    for x in g.elements() {
        let c = Subgroup::generated(g, &[x]);
        if seen.insert(c.members().clone()) {
            cyclics.push(c.clone());
            pool.push(c);
        }
    }
    for c in &cyclics {
        let j = Subgroup::join(g, a, c)?;
        if seen.insert(j.members().clone()) {
            pool.push(j);
        }
    }
    if seen.insert(a.members().clone()) {
        pool.push(a.clone());
    }
    pool.sort();
    let mut checked = 0usize;
    for z in &pool {
        let az = Subgroup::meet(g, a, z)?;
        for x in pool.iter().filter(|x| x.is_subgroup_of(z)) {
            if checked >= budget {
                return Ok(None);
            }
            checked += 1;
            let lhs = Subgroup::join(g, x, &az)?;
            let rhs = Subgroup::meet(g, &Subgroup::join(g, x, a)?, z)?;
            if lhs != rhs {
                return Ok(Some(ModularViolation {
                    law: ModularLaw::First,
                    other: x.clone(),
                    z: z.clone(),
                }));
            }
        }
        if !a.is_subgroup_of(z) {
            continue;
        }
        for y in &pool {
            if checked >= budget {
                return Ok(None);
            }
            checked += 1;
            let lhs = Subgroup::join(g, a, &Subgroup::meet(g, y, z)?)?;
            let rhs = Subgroup::meet(g, &Subgroup::join(g, a, y)?, z)?;
            if lhs != rhs {
                return Ok(Some(ModularViolation {
                    law: ModularLaw::Second,
                    other: y.clone(),
                    z: z.clone(),
                }));
            }
        }
    }
    Ok(None)
}

/// `A` permutes with every cyclic subgroup, which is equivalent to
/// permuting with every subgroup.
pub fn is_quasinormal(g: &FiniteGroup, a: &Subgroup) -> Result<bool> {
    if a.parent_id() != g.id() {
        return Err(Error::domain("subgroup belongs to a different group"));
    }
    if a.is_normal(g) {
        return Ok(true);
    }
    let mut done = a.members().clone();
    for x in g.elements() {
        if done.contains(x) {
            continue;
        }
        let c = Subgroup::generated(g, &[x]);
        for y in c.members().iter() {
            if g.element_order(y) == c.order() {
                done.insert(y);
            }
        }
        if !permutes(g, a, &c)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `A` permutes with every subgroup in the lattice.
pub fn is_quasinormal_by_lattice(lattice: &Lattice, a: &Subgroup) -> Result<bool> {
    lattice.index_of(a)?;
    for s in lattice.subgroups() {
        if !permutes(lattice.group(), a, s)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Modular and σ-subnormal.
pub fn is_sigma_quasinormal(
    lattice: &Lattice,
    a: &Subgroup,
    sigma: &PrimePartition,
) -> Result<bool> {
    Ok(is_modular(lattice, a)? && is_sigma_subnormal(lattice, a, sigma)?.0)
}

fn normalizes(g: &FiniteGroup, x: Elem, a: &Subgroup) -> bool {
    a.gens().iter().all(|&h| a.contains(g.conjugate(h, x)))
}

/// Every `x` with `π(|x|) ∩ π(|A|) = ∅` normalizes `A`.
pub fn is_seminormal(g: &FiniteGroup, a: &Subgroup) -> Result<bool> {
    if a.parent_id() != g.id() {
        return Err(Error::domain("subgroup belongs to a different group"));
    }
    let pa = prime_divisors(a.order() as u64);
    Ok(g.elements().all(|x| {
        let px = prime_divisors(g.element_order(x) as u64);
        px.iter().any(|p| pa.contains(p)) || normalizes(g, x, a)
    }))
}

/// Every `x` with `σ(|x|) ∩ σ(|A|) = ∅` normalizes `A`.
pub fn is_sigma_seminormal(g: &FiniteGroup, a: &Subgroup, sigma: &PrimePartition) -> Result<bool> {
    if a.parent_id() != g.id() {
        return Err(Error::domain("subgroup belongs to a different group"));
    }
    let sa = sigma.sigma_of(a.order() as u64)?;
    let mut cache: HashMap<usize, bool> = HashMap::new();
    for x in g.elements() {
        let o = g.element_order(x);
        let disjoint = *cache
            .entry(o)
            .or_insert_with(|| sigma.sigma_of(o as u64).expect("positive").is_disjoint(&sa));
        if disjoint && !normalizes(g, x, a) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `G = O_π(G) × O_π′(G)`.
pub fn is_pi_decomposable(g: &FiniteGroup, pi: &[u64]) -> Result<bool> {
    Ok(is_sigma_nilpotent(g, &PrimePartition::pi(pi)?))
}

/// `G = O_{p_1}(G) × ⋯ × O_{p_n}(G) × O_π′(G)`.
pub fn is_pi_special(g: &FiniteGroup, pi: &[u64]) -> Result<bool> {
    Ok(is_sigma_nilpotent(g, &PrimePartition::one_pi(pi)?))
}
