//! Subgroups as member bitsets, and the element-level operations on them.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// A subgroup of a particular [`FiniteGroup`], stored as its member set
/// together with some generating set.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    members: BitSet,
    order: usize,
    gens: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

/// By order, then by the ascending member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp_sorted(&other.members))
            .then_with(|| self.parent.cmp(&other.parent))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Incremental closure (Dimino): `elems` is always the subgroup generated by
/// `gens`, stored as a union of right cosets of the previous stage.
pub(crate) struct Closure<'g> {
    g: &'g FiniteGroup,
    elems: Vec<Elem>,
    set: BitSet,
    gens: Vec<Elem>,
}

impl<'g> Closure<'g> {
    pub(crate) fn trivial(g: &'g FiniteGroup) -> Self {
        let mut set = BitSet::new(g.order());
        set.insert(0);
        Closure {
            g,
            elems: vec![0],
            set,
            gens: Vec::new(),
        }
    }

    pub(crate) fn from_subgroup(g: &'g FiniteGroup, h: &Subgroup) -> Self {
        Closure {
            g,
            elems: h.elements(),
            set: h.members.clone(),
            gens: h.gens.clone(),
        }
    }

    pub(crate) fn contains(&self, x: Elem) -> bool {
        self.set.contains(x)
    }

    pub(crate) fn len(&self) -> usize {
        self.elems.len()
    }

    pub(crate) fn add(&mut self, x: Elem) {
        if self.set.contains(x) {
            return;
        }
        let g = self.g;
        let base = self.elems.clone();
        self.gens.push(x);
        let mut rep_pos = base.len();
        for &d in &base {
            let y = g.mul(d, x);
            self.set.insert(y);
            self.elems.push(y);
        }
        while rep_pos < self.elems.len() {
            let rep = self.elems[rep_pos];
            for gi in 0..self.gens.len() {
                let y = g.mul(rep, self.gens[gi]);
                if !self.set.contains(y) {
                    for &d in &base {
                        let z = g.mul(d, y);
                        self.set.insert(z);
                        self.elems.push(z);
                    }
                }
            }
            rep_pos += base.len();
        }
    }

    pub(crate) fn finish(self) -> Subgroup {
        Subgroup {
            parent: self.g.id(),
            order: self.elems.len(),
            members: self.set,
            gens: self.gens,
        }
    }
}

/// Greedy generating set of the subgroup formed by `members` (which must be
/// closed): scan in increasing handle order, keep what is not yet generated.
pub(crate) fn greedy_generators(
    g: &FiniteGroup,
    members: impl IntoIterator<Item = Elem>,
) -> Vec<Elem> {
    let mut c = Closure::trivial(g);
    for x in members {
        if !c.contains(x) {
            c.add(x);
        }
    }
    c.gens
}

impl Subgroup {
    pub fn trivial(g: &FiniteGroup) -> Self {
        Closure::trivial(g).finish()
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup {
            parent: g.id(),
            members: BitSet::full(g.order()),
            order: g.order(),
            gens: g.generators().to_vec(),
        }
    }

    /// `⟨seed⟩`
    pub fn generated(g: &FiniteGroup, seed: &[Elem]) -> Self {
        let mut c = Closure::trivial(g);
        for &x in seed {
            c.add(x);
        }
        c.finish()
    }

    /// Wraps a member set that is already known to be a subgroup.
    pub fn from_members(g: &FiniteGroup, members: BitSet) -> Self {
        debug_assert_eq!(members.universe(), g.order());
        let gens = greedy_generators(g, members.iter());
        let order = members.count();
        debug_assert_eq!(
            Subgroup::generated(g, &gens).order,
            order,
            "member set not closed"
        );
        Subgroup {
            parent: g.id(),
            members,
            order,
            gens,
        }
    }

    /// Checks closure before wrapping.
    pub fn try_from_members(g: &FiniteGroup, members: BitSet) -> Result<Self> {
        if members.universe() != g.order() || !members.contains(0) {
            return Err(Error::domain("member set is not a subgroup"));
        }
        let gens = greedy_generators(g, members.iter());
        let closed = Subgroup::generated(g, &gens);
        if closed.members != members {
            return Err(Error::domain("member set is not closed"));
        }
        Ok(closed)
    }

    pub fn parent_id(&self) -> u64 {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn gens(&self) -> &[Elem] {
        &self.gens
    }

    pub fn elements(&self) -> Vec<Elem> {
        self.members.iter().collect()
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(&other.members)
    }

    pub fn is_whole(&self, g: &FiniteGroup) -> bool {
        self.parent == g.id() && self.order == g.order()
    }

    fn check_parent(&self, other: &Subgroup) -> Result<()> {
        if self.parent != other.parent {
            return Err(Error::domain("subgroups belong to different groups"));
        }
        Ok(())
    }

    /// `⟨A, B⟩`
    pub fn join(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        a.check_parent(b)?;
        let (big, small) = if a.order >= b.order { (a, b) } else { (b, a) };
        let mut c = Closure::from_subgroup(g, big);
        for &x in &small.gens {
            c.add(x);
        }
        Ok(c.finish())
    }

    /// `A ∩ B`
    pub fn meet(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<Subgroup> {
        a.check_parent(b)?;
        if a.is_subgroup_of(b) {
            return Ok(a.clone());
        }
        if b.is_subgroup_of(a) {
            return Ok(b.clone());
        }
        Ok(Subgroup::from_members(
            g,
            a.members.intersection(&b.members),
        ))
    }

    /// `A^x = x⁻¹ A x`
    pub fn conjugate_by(&self, g: &FiniteGroup, x: Elem) -> Subgroup {
        let members =
            BitSet::from_indices(g.order(), self.members.iter().map(|a| g.conjugate(a, x)));
        Subgroup {
            parent: self.parent,
            members,
            order: self.order,
            gens: self.gens.iter().map(|&a| g.conjugate(a, x)).collect(),
        }
    }

    /// `A ⊴ K`, assuming `A ≤ K`.
    pub fn is_normal_in(&self, g: &FiniteGroup, ambient: &Subgroup) -> bool {
        ambient
            .gens
            .iter()
            .all(|&k| self.gens.iter().all(|&a| self.contains(g.conjugate(a, k))))
    }

    pub fn is_normal(&self, g: &FiniteGroup) -> bool {
        g.generators()
            .iter()
            .all(|&k| self.gens.iter().all(|&a| self.contains(g.conjugate(a, k))))
    }
}

/// `{ab : a ∈ A, b ∈ B}`
pub fn product_set(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<BitSet> {
    a.check_parent(b)?;
    let mut out = BitSet::new(g.order());
    let belems = b.elements();
    for x in a.members.iter() {
        for &y in &belems {
            out.insert(g.mul(x, y));
        }
    }
    Ok(out)
}

/// `AB = BA`
pub fn permutes(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> Result<bool> {
    a.check_parent(b)?;
    if a.is_subgroup_of(b) || b.is_subgroup_of(a) {
        return Ok(true);
    }
    // AB = BA iff AB is a subgroup iff BA ⊆ AB (the sizes agree)
    let ab = product_set(g, a, b)?;
    let aelems = a.elements();
    Ok(b.members
        .iter()
        .all(|y| aelems.iter().all(|&x| ab.contains(g.mul(y, x)))))
}

/// `N_G(A)`
pub fn normalizer(g: &FiniteGroup, a: &Subgroup) -> Subgroup {
    let members = BitSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| a.gens.iter().all(|&h| a.contains(g.conjugate(h, x)))),
    );
    Subgroup::from_members(g, members)
}

/// `C_G(S)`
pub fn centralizer(g: &FiniteGroup, set: &[Elem]) -> Subgroup {
    let members = BitSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| set.iter().all(|&s| g.mul(x, s) == g.mul(s, x))),
    );
    Subgroup::from_members(g, members)
}

/// Core of `A` in `K` (`A ≤ K`): the largest subgroup of `A` normal in `K`.
pub fn core_in(g: &FiniteGroup, ambient: &Subgroup, a: &Subgroup) -> Subgroup {
    let mut cur = a.members.clone();
    loop {
        let mut changed = false;
        for &k in &ambient.gens {
            let conj = BitSet::from_indices(g.order(), cur.iter().map(|x| g.conjugate(x, k)));
            if conj != cur {
                cur.intersect_with(&conj);
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
    if cur == a.members {
        return a.clone();
    }
    Subgroup::from_members(g, cur)
}

/// Normal closure of `A` in `K` (`A ≤ K`): the smallest normal subgroup of
/// `K` containing `A`.
pub fn normal_closure_in(g: &FiniteGroup, ambient: &Subgroup, a: &Subgroup) -> Subgroup {
    let mut c = Closure::from_subgroup(g, a);
    let mut i = 0;
    while i < c.gens.len() {
        let h = c.gens[i];
        for &k in &ambient.gens {
            let y = g.conjugate(h, k);
            if !c.contains(y) {
                c.add(y);
            }
        }
        i += 1;
    }
    c.finish()
}

/// `A_G`
pub fn core(g: &FiniteGroup, a: &Subgroup) -> Subgroup {
    core_in(g, &Subgroup::whole(g), a)
}

/// `A^G`
pub fn normal_closure(g: &FiniteGroup, a: &Subgroup) -> Subgroup {
    normal_closure_in(g, &Subgroup::whole(g), a)
}

/// Subnormality via the descending series `G_0 = G`, `G_{k+1} = A^{G_k}`.
pub fn is_subnormal(g: &FiniteGroup, a: &Subgroup) -> bool {
    let mut cur = Subgroup::whole(g);
    loop {
        let next = normal_closure_in(g, &cur, a);
        if next == cur {
            return cur == *a;
        }
        cur = next;
    }
}
