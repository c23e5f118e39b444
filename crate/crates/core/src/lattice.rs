//! Subgroup lattices.
//!
//! A [`Poset`] keeps a sorted, duplicate-free list of subgroups together with
//! the up- and down-sets of every entry as bitsets over lattice indices.
//! Because the list is sorted by order, the join of two entries is the first
//! common upper bound and the meet the last common lower bound.

use std::collections::{HashMap, HashSet};

use crate::arith::{ClassId, PrimePartition};
use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::limits::Limits;
use crate::subgroup::{normal_closure, Closure, Subgroup};

#[derive(Debug, Clone)]
pub struct Poset {
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
    up: Vec<BitSet>,
    down: Vec<BitSet>,
}

impl Poset {
    pub fn new(mut subgroups: Vec<Subgroup>) -> Self {
        subgroups.sort();
        subgroups.dedup();
        let n = subgroups.len();
        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        let mut up = vec![BitSet::new(n); n];
        let mut down = vec![BitSet::new(n); n];
        for i in 0..n {
            up[i].insert(i);
            down[i].insert(i);
            for j in i + 1..n {
                let (a, b) = (&subgroups[i], &subgroups[j]);
                if b.order() % a.order() == 0 && a.is_subgroup_of(b) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }
        Poset {
            subgroups,
            index,
            up,
            down,
        }
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn find(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s.members()).copied()
    }

    pub fn up(&self, i: usize) -> &BitSet {
        &self.up[i]
    }

    pub fn down(&self, i: usize) -> &BitSet {
        &self.down[i]
    }

    /// `subgroups[i] ≤ subgroups[j]`
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    /// Least common upper bound, if the poset has one.
    pub fn join(&self, i: usize, j: usize) -> Option<usize> {
        self.up[i].first_common(&self.up[j])
    }

    /// Greatest common lower bound, if the poset has one.
    pub fn meet(&self, i: usize, j: usize) -> Option<usize> {
        self.down[i].last_common(&self.down[j])
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.len() - 1
    }

    /// Entries strictly above `i` with nothing strictly between.
    pub fn covers_above(&self, i: usize) -> Vec<usize> {
        self.up[i]
            .iter()
            .filter(|&j| j != i && self.down[j].intersection_count(&self.up[i]) == 2)
            .collect()
    }

    /// Entries strictly below `i` with nothing strictly between.
    pub fn covers_below(&self, i: usize) -> Vec<usize> {
        self.down[i]
            .iter()
            .filter(|&j| j != i && self.up[j].intersection_count(&self.down[i]) == 2)
            .collect()
    }
}

fn cyclic_subgroups(g: &FiniteGroup) -> Vec<(Elem, Subgroup)> {
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut out = Vec::new();
    for x in g.elements() {
        let c = Subgroup::generated(g, &[x]);
        if seen.insert(c.members().clone()) {
            out.push((x, c));
        }
    }
    out
}

fn check_lattice_limits(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.max_lattice_order {
        return Err(Error::resource(format!(
            "group order {} exceeds lattice limit {}",
            g.order(),
            limits.max_lattice_order
        )));
    }
    Ok(())
}

/// All subgroups, by closing the cyclic subgroups under joins with cyclic
/// subgroups (every subgroup is a join of cyclic ones).
pub fn enumerate_by_cyclic_joins(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    check_lattice_limits(g, limits)?;
    let cyclics = cyclic_subgroups(g);
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<Subgroup> = Vec::new();
    for (_, c) in &cyclics {
        seen.insert(c.members().clone());
        found.push(c.clone());
    }
    let mut next = 0;
    while next < found.len() {
        limits.check_deadline("lattice enumeration")?;
        let h = found[next].clone();
        next += 1;
        for (x, _) in &cyclics {
            if h.contains(*x) {
                continue;
            }
            let mut c = Closure::from_subgroup(g, &h);
            c.add(*x);
            let j = c.finish();
            if seen.insert(j.members().clone()) {
                found.push(j);
                if found.len() > limits.max_subgroups {
                    return Err(Error::resource(format!(
                        "more than {} subgroups",
                        limits.max_subgroups
                    )));
                }
            }
        }
    }
    found.sort();
    Ok(found)
}

// Plain breadth-first closure, kept separate from the coset-based closure so
// the two enumerators share no closure code.
fn naive_closure(g: &FiniteGroup, gens: &[Elem]) -> BitSet {
    let mut set = BitSet::new(g.order());
    set.insert(0);
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for &s in gens {
            let y = g.mul(x, s);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

/// All subgroups, by extending every subgroup found so far by one element
/// from each of its right cosets. Independent of
/// [`enumerate_by_cyclic_joins`]; used as a cross-check.
pub fn enumerate_by_extension(g: &FiniteGroup, limits: &Limits) -> Result<Vec<Subgroup>> {
    check_lattice_limits(g, limits)?;
    let mut seen: HashSet<BitSet> = HashSet::new();
    let mut found: Vec<(BitSet, Vec<Elem>)> = vec![(naive_closure(g, &[]), Vec::new())];
    seen.insert(found[0].0.clone());
    let mut next = 0;
    while next < found.len() {
        limits.check_deadline("lattice enumeration")?;
        let (h, gens) = found[next].clone();
        next += 1;
        let members: Vec<Elem> = h.iter().collect();
        let mut covered = h.clone();
        for x in g.elements() {
            if covered.contains(x) {
                continue;
            }
            for &m in &members {
                covered.insert(g.mul(m, x));
            }
            let mut ext = gens.clone();
            ext.push(x);
            let k = naive_closure(g, &ext);
            if seen.insert(k.clone()) {
                found.push((k, ext));
                if found.len() > limits.max_subgroups {
                    return Err(Error::resource(format!(
                        "more than {} subgroups",
                        limits.max_subgroups
                    )));
                }
            }
        }
    }
    let mut out: Vec<Subgroup> = found
        .into_iter()
        .map(|(set, _)| Subgroup::from_members(g, set))
        .collect();
    out.sort();
    Ok(out)
}

/// The full subgroup lattice of a group.
#[derive(Debug, Clone)]
pub struct Lattice<'g> {
    group: &'g FiniteGroup,
    poset: Poset,
    normal: Vec<bool>,
    cyclic: Vec<usize>,
}

impl<'g> Lattice<'g> {
    pub fn build(group: &'g FiniteGroup) -> Result<Self> {
        Self::build_with(group, &Limits::default())
    }

    pub fn build_with(group: &'g FiniteGroup, limits: &Limits) -> Result<Self> {
        let subs = enumerate_by_cyclic_joins(group, limits)?;
        let poset = Poset::new(subs);
        let normal = poset
            .subgroups()
            .iter()
            .map(|s| s.is_normal(group))
            .collect();
        let mut cyclic: Vec<usize> = cyclic_subgroups(group)
            .iter()
            .map(|(_, c)| poset.find(c).expect("cyclic subgroup enumerated"))
            .collect();
        cyclic.sort_unstable();
        Ok(Lattice {
            group,
            poset,
            normal,
            cyclic,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        self.poset.subgroups()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        self.poset.get(i)
    }

    pub fn index_of(&self, s: &Subgroup) -> Result<usize> {
        if s.parent_id() != self.group.id() {
            return Err(Error::domain("subgroup belongs to a different group"));
        }
        self.poset
            .find(s)
            .ok_or_else(|| Error::domain("subgroup not found in lattice"))
    }

    pub fn is_normal(&self, i: usize) -> bool {
        self.normal[i]
    }

    /// Indices of the cyclic subgroups.
    pub fn cyclic(&self) -> &[usize] {
        &self.cyclic
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.poset.join(i, j).expect("lattice has a top")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.poset.meet(i, j).expect("lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        self.poset.top()
    }

    /// Normal subgroups, filtered from the lattice.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        (0..self.len())
            .filter(|&i| self.normal[i])
            .map(|i| self.get(i).clone())
            .collect()
    }

    /// Normal `M > N` with no normal subgroup strictly between.
    pub fn minimal_normal_above(&self, n: &Subgroup) -> Result<Vec<Subgroup>> {
        let ni = self.index_of(n)?;
        if !self.normal[ni] {
            return Err(Error::domain("anchor is not normal"));
        }
        let above: Vec<usize> = self
            .poset
            .up(ni)
            .iter()
            .filter(|&j| j != ni && self.normal[j])
            .collect();
        Ok(above
            .iter()
            .copied()
            .filter(|&m| !above.iter().any(|&k| k != m && self.poset.le(k, m)))
            .map(|m| self.get(m).clone())
            .collect())
    }

    /// Subgroups whose order is the `class`-part of `|G|`.
    pub fn hall_subgroups(&self, class: ClassId, sigma: &PrimePartition) -> Result<Vec<Subgroup>> {
        let part = sigma.sigma_part(self.group.order() as u64, class)? as usize;
        Ok(self
            .subgroups()
            .iter()
            .filter(|s| s.order() == part)
            .cloned()
            .collect())
    }

    pub fn sylow_subgroups(&self, p: u64) -> Result<Vec<Subgroup>> {
        if !crate::arith::is_prime(p) {
            return Err(Error::domain(format!("{p} is not prime")));
        }
        self.hall_subgroups(ClassId::Singleton(p), &PrimePartition::sigma1())
    }
}

/// The lattice of normal subgroups, built without the full subgroup
/// lattice: normal closures of single elements, closed under products.
#[derive(Debug, Clone)]
pub struct NormalLattice<'g> {
    group: &'g FiniteGroup,
    poset: Poset,
}

impl<'g> NormalLattice<'g> {
    pub fn build(group: &'g FiniteGroup) -> Result<Self> {
        Self::build_with(group, &Limits::default())
    }

    pub fn build_with(group: &'g FiniteGroup, limits: &Limits) -> Result<Self> {
        let mut seen: HashSet<BitSet> = HashSet::new();
        let mut found: Vec<Subgroup> = Vec::new();
        let mut done = BitSet::new(group.order());
        for x in group.elements() {
            if done.contains(x) {
                continue;
            }
            let n = normal_closure(group, &Subgroup::generated(group, &[x]));
            // every conjugate of x has the same normal closure
            for g in group.elements() {
                done.insert(group.conjugate(x, g));
            }
            if seen.insert(n.members().clone()) {
                found.push(n);
            }
        }
        let classes = found.clone();
        let mut next = 0;
        while next < found.len() {
            limits.check_deadline("normal subgroup enumeration")?;
            let h = found[next].clone();
            next += 1;
            for c in &classes {
                if c.is_subgroup_of(&h) {
                    continue;
                }
                let j = Subgroup::join(group, &h, c)?;
                if seen.insert(j.members().clone()) {
                    found.push(j);
                    if found.len() > limits.max_subgroups {
                        return Err(Error::resource("too many normal subgroups"));
                    }
                }
            }
        }
        Ok(NormalLattice {
            group,
            poset: Poset::new(found),
        })
    }

    pub fn from_lattice(l: &Lattice<'g>) -> Self {
        NormalLattice {
            group: l.group(),
            poset: Poset::new(l.normal_subgroups()),
        }
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        self.poset.subgroups()
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        self.poset.get(i)
    }

    pub fn index_of(&self, s: &Subgroup) -> Result<usize> {
        if s.parent_id() != self.group.id() {
            return Err(Error::domain("subgroup belongs to a different group"));
        }
        self.poset
            .find(s)
            .ok_or_else(|| Error::domain("subgroup is not normal"))
    }

    /// Product of two normal subgroups.
    pub fn join(&self, i: usize, j: usize) -> usize {
        self.poset.join(i, j).expect("normal lattice has a top")
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.poset.meet(i, j).expect("normal lattice has a bottom")
    }

    pub fn trivial(&self) -> usize {
        self.poset.bottom()
    }

    pub fn whole(&self) -> usize {
        self.poset.top()
    }

    pub fn minimal_normal_above(&self, n: &Subgroup) -> Result<Vec<Subgroup>> {
        let i = self.index_of(n)?;
        Ok(self
            .poset
            .covers_above(i)
            .into_iter()
            .map(|j| self.get(j).clone())
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap()
    }

    #[test]
    fn subgroup_counts() {
        let c6 = FiniteGroup::from_permutations(6, &[vec![1, 2, 3, 4, 5, 0]]).unwrap();
        let lim = Limits::default();
        assert_eq!(enumerate_by_cyclic_joins(&c6, &lim).unwrap().len(), 4);
        assert_eq!(enumerate_by_cyclic_joins(&s3(), &lim).unwrap().len(), 6);
        assert_eq!(enumerate_by_extension(&s3(), &lim).unwrap().len(), 6);
        let g = s4();
        let a = enumerate_by_cyclic_joins(&g, &lim).unwrap();
        let b = enumerate_by_extension(&g, &lim).unwrap();
        assert_eq!(a.len(), 30);
        assert_eq!(a, b);
    }

    #[test]
    fn lattice_limits() {
        let tight = Limits {
            max_subgroups: 10,
            ..Limits::default()
        };
        assert!(matches!(
            enumerate_by_cyclic_joins(&s4(), &tight),
            Err(Error::Resource(_))
        ));
        let small = Limits {
            max_lattice_order: 10,
            ..Limits::default()
        };
        assert!(matches!(
            Lattice::build_with(&s4(), &small),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn lattice_is_sorted_and_closed() {
        let g = s4();
        let l = Lattice::build(&g).unwrap();
        assert!(l.get(0).is_trivial());
        assert!(l.get(l.top()).is_whole(&g));
        for i in 0..l.len() {
            for j in 0..l.len() {
                let join = Subgroup::join(&g, l.get(i), l.get(j)).unwrap();
                assert_eq!(l.join(i, j), l.index_of(&join).unwrap());
                let meet = Subgroup::meet(&g, l.get(i), l.get(j)).unwrap();
                assert_eq!(l.meet(i, j), l.index_of(&meet).unwrap());
            }
        }
        for s in l.subgroups() {
            for x in g.elements() {
                assert!(l.index_of(&s.conjugate_by(&g, x)).is_ok());
            }
        }
    }

    #[test]
    fn normal_subgroups_examples() {
        let g = s3();
        let l = Lattice::build(&g).unwrap();
        let normals: Vec<usize> = l.normal_subgroups().iter().map(|s| s.order()).collect();
        assert_eq!(normals, vec![1, 3, 6]);
        let min = l.minimal_normal_above(&Subgroup::trivial(&g)).unwrap();
        assert_eq!(min.len(), 1);
        assert_eq!(min[0].order(), 3);

        let c6 = FiniteGroup::from_permutations(6, &[vec![1, 2, 3, 4, 5, 0]]).unwrap();
        let l6 = Lattice::build(&c6).unwrap();
        assert_eq!(l6.normal_subgroups().len(), l6.len());

        let gs = s4();
        let ls = Lattice::build(&gs).unwrap();
        let nl = NormalLattice::build(&gs).unwrap();
        assert_eq!(nl.subgroups(), &ls.normal_subgroups()[..]);
        assert_eq!(
            nl.minimal_normal_above(&Subgroup::trivial(&gs)).unwrap(),
            ls.minimal_normal_above(&Subgroup::trivial(&gs)).unwrap()
        );
    }

    #[test]
    fn hall_and_sylow() {
        let g = s3();
        let l = Lattice::build(&g).unwrap();
        assert_eq!(l.sylow_subgroups(2).unwrap().len(), 3);
        assert_eq!(l.sylow_subgroups(3).unwrap().len(), 1);
        let s1 = PrimePartition::sigma1();
        let h = l.hall_subgroups(ClassId::Singleton(5), &s1).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].is_trivial());
        let pi = PrimePartition::pi(&[2, 3]).unwrap();
        let h = l.hall_subgroups(ClassId::Explicit(0), &pi).unwrap();
        assert_eq!(h.len(), 1);
        assert!(h[0].is_whole(&g));
        assert!(l.sylow_subgroups(4).is_err());
    }
}
