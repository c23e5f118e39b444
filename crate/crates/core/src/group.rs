//! Fully enumerated finite groups.
//!
//! Elements are dense handles `0..order` with handle 0 the identity. Groups
//! up to [`TABLE_LIMIT`] elements carry a Cayley table; larger ones multiply
//! by composing permutation images and looking the result up.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::subgroup::Subgroup;

/// Element handle. Only meaningful relative to the group that issued it.
pub type Elem = usize;

/// A point moved by a permutation.
pub type Point = u16;

/// Groups of at most this order get a Cayley table.
pub const TABLE_LIMIT: usize = 4096;

static NEXT_GROUP_ID: AtomicU64 = AtomicU64::new(1);

fn fresh_id() -> u64 {
    NEXT_GROUP_ID.fetch_add(1, Ordering::Relaxed)
}

/// `{"degree": d, "generators": [[...], ...]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLiteral {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone)]
struct PermStore {
    degree: usize,
    images: Vec<Point>,
    // fingerprint -> handles sharing it
    index: HashMap<u64, Vec<u32>>,
}

impl PermStore {
    fn get(&self, e: Elem) -> &[Point] {
        &self.images[e * self.degree..(e + 1) * self.degree]
    }

    fn lookup(&self, img: &[Point]) -> Option<Elem> {
        self.index
            .get(&fingerprint(img))?
            .iter()
            .map(|&h| h as Elem)
            .find(|&h| self.get(h) == img)
    }

    fn push(&mut self, img: &[Point]) -> Elem {
        let h = self.images.len() / self.degree;
        self.images.extend_from_slice(img);
        self.index
            .entry(fingerprint(img))
            .or_default()
            .push(h as u32);
        h
    }
}

fn fingerprint(img: &[Point]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &p in img {
        h ^= p as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn compose_into(x: &[Point], y: &[Point], out: &mut [Point]) {
    // apply x first, then y
    for (o, &xi) in out.iter_mut().zip(x) {
        *o = y[xi as usize];
    }
}

fn perm_order(img: &[Point]) -> usize {
    let mut seen = vec![false; img.len()];
    let mut acc = 1usize;
    for start in 0..img.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut p = start;
        while !seen[p] {
            seen[p] = true;
            p = img[p] as usize;
            len += 1;
        }
        acc = acc / gcd(acc as u64, len as u64) as usize * len;
    }
    acc
}

/// A finite group with every element enumerated.
#[derive(Debug, Clone)]
pub struct FiniteGroup {
    id: u64,
    order: usize,
    table: Option<Vec<u32>>,
    perms: Option<PermStore>,
    inverse: Vec<u32>,
    elem_order: Vec<u32>,
    gens: OnceLock<Vec<Elem>>,
}

impl FiniteGroup {
    /// Closure of permutation generators under composition, with the
    /// default element limit.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self> {
        Self::from_permutations_with(degree, generators, &Limits::default())
    }

    pub fn from_literal(lit: &GroupLiteral) -> Result<Self> {
        Self::from_permutations(lit.degree, &lit.generators)
    }

    pub fn from_permutations_with(
        degree: usize,
        generators: &[Vec<usize>],
        limits: &Limits,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::domain("degree must be positive"));
        }
        if degree > Point::MAX as usize + 1 {
            return Err(Error::resource(format!(
                "degree {degree} exceeds {}",
                Point::MAX as usize + 1
            )));
        }
        let mut gens: Vec<Vec<Point>> = Vec::with_capacity(generators.len());
        for (i, g) in generators.iter().enumerate() {
            if g.len() != degree {
                return Err(Error::domain(format!(
                    "generator {i} has {} images, expected {degree}",
                    g.len()
                )));
            }
            let mut hit = vec![false; degree];
            for &p in g {
                if p >= degree || std::mem::replace(&mut hit[p], true) {
                    return Err(Error::domain(format!("generator {i} is not a bijection")));
                }
            }
            gens.push(g.iter().map(|&p| p as Point).collect());
        }

        let mut store = PermStore {
            degree,
            images: Vec::new(),
            index: HashMap::new(),
        };
        let identity: Vec<Point> = (0..degree as Point).collect();
        store.push(&identity);
        // BFS; right_mul[i * k + j] = handle of element_i * gen_j
        let k = gens.len();
        let mut right_mul: Vec<u32> = Vec::new();
        let mut parent: Vec<(u32, u32)> = vec![(0, 0)];
        let mut buf = vec![0 as Point; degree];
        let mut i = 0;
        while i < store.images.len() / degree {
            if i % 4096 == 0 {
                limits.check_deadline("group closure")?;
            }
            for (j, g) in gens.iter().enumerate() {
                compose_into(store.get(i), g, &mut buf);
                let h = match store.lookup(&buf) {
                    Some(h) => h,
                    None => {
                        let h = store.push(&buf);
                        if h >= limits.max_elements {
                            return Err(Error::resource(format!(
                                "closure exceeds {} elements",
                                limits.max_elements
                            )));
                        }
                        parent.push((i as u32, j as u32));
                        h
                    }
                };
                right_mul.push(h as u32);
            }
            i += 1;
        }
        let order = store.images.len() / degree;

        let table = (order <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; order * order];
            for a in 0..order {
                t[a * order] = a as u32;
                for b in 1..order {
                    let (pb, gb) = parent[b];
                    let prefix = t[a * order + pb as usize] as usize;
                    t[a * order + b] = right_mul[prefix * k + gb as usize];
                }
            }
            t
        });

        let mut inv_buf = vec![0 as Point; degree];
        let mut inverse = vec![0u32; order];
        let mut elem_order = vec![1u32; order];
        for e in 0..order {
            let img = store.get(e);
            for (p, &q) in img.iter().enumerate() {
                inv_buf[q as usize] = p as Point;
            }
            inverse[e] = store.lookup(&inv_buf).expect("closed under inverses") as u32;
            elem_order[e] = perm_order(img) as u32;
        }

        Ok(FiniteGroup {
            id: fresh_id(),
            order,
            table,
            perms: Some(store),
            inverse,
            elem_order,
            gens: OnceLock::new(),
        })
    }

    /// Builds a group from a Cayley table (`table[a * n + b] = a·b`) with
    /// handle 0 as identity. Checks the Latin-square and identity laws and
    /// associativity (exhaustively up to order 200, sampled above).
    pub fn from_cayley_table(order: usize, table: Vec<u32>) -> Result<Self> {
        if order == 0 || table.len() != order * order {
            return Err(Error::domain("table size does not match order"));
        }
        if order > TABLE_LIMIT {
            return Err(Error::resource(format!(
                "table groups are limited to {TABLE_LIMIT} elements"
            )));
        }
        for a in 0..order {
            if table[a] as usize != a || table[a * order] as usize != a {
                return Err(Error::domain("handle 0 is not an identity"));
            }
            let mut row = vec![false; order];
            let mut col = vec![false; order];
            for b in 0..order {
                let r = table[a * order + b] as usize;
                let c = table[b * order + a] as usize;
                if r >= order
                    || c >= order
                    || std::mem::replace(&mut row[r], true)
                    || std::mem::replace(&mut col[c], true)
                {
                    return Err(Error::domain("table is not a Latin square"));
                }
            }
        }
        let g = Self::from_table_unchecked(order, table, None);
        if !g.check_associativity(200) {
            return Err(Error::domain("table is not associative"));
        }
        Ok(g)
    }

    pub(crate) fn from_table_unchecked(
        order: usize,
        table: Vec<u32>,
        perms: Option<(usize, Vec<Point>)>,
    ) -> Self {
        let mut inverse = vec![0u32; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            inverse[a] = row.iter().position(|&x| x == 0).expect("latin row") as u32;
        }
        let mut elem_order = vec![1u32; order];
        for (a, slot) in elem_order.iter_mut().enumerate() {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        let perms = perms.map(|(degree, images)| {
            let mut index: HashMap<u64, Vec<u32>> = HashMap::new();
            for h in 0..order {
                index
                    .entry(fingerprint(&images[h * degree..(h + 1) * degree]))
                    .or_default()
                    .push(h as u32);
            }
            PermStore {
                degree,
                images,
                index,
            }
        });
        FiniteGroup {
            id: fresh_id(),
            order,
            table: Some(table),
            perms,
            inverse,
            elem_order,
            gens: OnceLock::new(),
        }
    }

    /// Identity used to detect parent mismatches between subgroups.
    pub fn id(&self) -> u64 {
        self.id
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.table {
            Some(t) => t[a * self.order + b] as Elem,
            None => {
                let store = self.perms.as_ref().expect("table or permutations");
                let mut buf = vec![0 as Point; store.degree];
                compose_into(store.get(a), store.get(b), &mut buf);
                store.lookup(&buf).expect("closed under multiplication")
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as Elem
    }

    /// `g⁻¹ x g`
    #[inline]
    pub fn conjugate(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.inv(g), self.mul(x, g))
    }

    /// `[g, h] = g⁻¹ h⁻¹ g h`
    pub fn commutator(&self, g: Elem, h: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), self.inv(h)), self.mul(g, h))
    }

    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        let mut acc = 0;
        let mut base = a;
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Least `k ≥ 1` with `a^k = 1`.
    #[inline]
    pub fn element_order(&self, a: Elem) -> usize {
        self.elem_order[a] as usize
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn exponent(&self) -> usize {
        self.elem_order.iter().fold(1usize, |acc, &o| {
            acc / gcd(acc as u64, o as u64) as usize * o as usize
        })
    }

    pub fn center_order(&self) -> usize {
        let gens = self.generators();
        self.elements()
            .filter(|&z| gens.iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .count()
    }

    /// A (small, not necessarily minimal) generating set of the whole group.
    pub fn generators(&self) -> &[Elem] {
        self.gens
            .get_or_init(|| crate::subgroup::greedy_generators(self, self.elements()))
    }

    pub fn has_table(&self) -> bool {
        self.table.is_some()
    }

    pub fn degree(&self) -> Option<usize> {
        self.perms.as_ref().map(|p| p.degree)
    }

    /// Permutation images of `a`, when the group carries them.
    pub fn perm_images(&self, a: Elem) -> Option<Vec<usize>> {
        self.perms
            .as_ref()
            .map(|p| p.get(a).iter().map(|&x| x as usize).collect())
    }

    /// Handle of the element with the given images.
    pub fn find_permutation(&self, images: &[usize]) -> Option<Elem> {
        let store = self.perms.as_ref()?;
        if images.len() != store.degree || images.iter().any(|&p| p > Point::MAX as usize) {
            return None;
        }
        let img: Vec<Point> = images.iter().map(|&p| p as Point).collect();
        store.lookup(&img)
    }

    /// Right regular representation: `g ↦ (x ↦ x·g)` on `0..order`.
    pub fn regular_representation(&self) -> Vec<Vec<usize>> {
        self.generators()
            .iter()
            .map(|&g| self.elements().map(|x| self.mul(x, g)).collect())
            .collect()
    }

    /// Exhaustive associativity when `order ≤ exhaustive_up_to`, otherwise
    /// a deterministic sample of triples.
    pub fn check_associativity(&self, exhaustive_up_to: usize) -> bool {
        let n = self.order;
        if n <= exhaustive_up_to {
            for a in 0..n {
                for b in 0..n {
                    let ab = self.mul(a, b);
                    for c in 0..n {
                        if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                            return false;
                        }
                    }
                }
            }
            return true;
        }
        let mut s: u64 = 0x9e37_79b9_7f4a_7c15;
        let mut next = || {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            (s % n as u64) as usize
        };
        (0..20_000).all(|_| {
            let (a, b, c) = (next(), next(), next());
            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
        })
    }

    /// Group axioms: identity, inverses, Lagrange for element orders, and
    /// associativity (exhaustive up to `exhaustive_up_to`, sampled above).
    pub fn validate_axioms(&self, exhaustive_up_to: usize) -> bool {
        let n = self.order;
        let identity_ok = (0..n).all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let unique_identity = (1..n).all(|a| self.mul(a, a) != a);
        let inverse_ok =
            (0..n).all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let lagrange = (0..n).all(|a| n.is_multiple_of(self.element_order(a)));
        identity_ok
            && unique_identity
            && inverse_ok
            && lagrange
            && self.check_associativity(exhaustive_up_to)
    }

    /// The subgroup `H` as a group in its own right, together with the
    /// embedding `new handle ↦ handle in self`.
    pub fn restrict_to(&self, h: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        let elems = h.elements();
        let m = elems.len();
        if m <= TABLE_LIMIT {
            let mut pos = vec![u32::MAX; self.order];
            for (i, &e) in elems.iter().enumerate() {
                pos[e] = i as u32;
            }
            let mut table = vec![0u32; m * m];
            for (i, &a) in elems.iter().enumerate() {
                for (j, &b) in elems.iter().enumerate() {
                    table[i * m + j] = pos[self.mul(a, b)];
                }
            }
            let perms = self.perms.as_ref().map(|p| {
                let mut images = Vec::with_capacity(m * p.degree);
                for &e in &elems {
                    images.extend_from_slice(p.get(e));
                }
                (p.degree, images)
            });
            return Ok((FiniteGroup::from_table_unchecked(m, table, perms), elems));
        }
        let Some(store) = &self.perms else {
            return Err(Error::resource(
                "subgroup too large for a table and no permutations available",
            ));
        };
        let gens: Vec<Vec<usize>> = h
            .gens()
            .iter()
            .map(|&g| store.get(g).iter().map(|&x| x as usize).collect())
            .collect();
        let sub = FiniteGroup::from_permutations(store.degree, &gens)?;
        let embed = sub
            .elements()
            .map(|e| {
                self.find_permutation(&sub.perm_images(e).expect("perm group"))
                    .expect("subgroup element")
            })
            .collect();
        Ok((sub, embed))
    }
}

/// A homomorphism given by its full handle map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    source_id: u64,
    target_id: u64,
    map: Vec<Elem>,
}

impl GroupHom {
    pub fn apply(&self, x: Elem) -> Elem {
        self.map[x]
    }

    pub fn map(&self) -> &[Elem] {
        &self.map
    }

    pub fn source_id(&self) -> u64 {
        self.source_id
    }

    pub fn target_id(&self) -> u64 {
        self.target_id
    }

    pub fn kernel(&self, source: &FiniteGroup) -> Subgroup {
        Subgroup::from_members(
            source,
            crate::bitset::BitSet::from_indices(
                source.order(),
                source.elements().filter(|&x| self.map[x] == 0),
            ),
        )
    }

    /// Image of a subgroup of the source.
    pub fn image(&self, target: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let gens: Vec<Elem> = h.gens().iter().map(|&g| self.map[g]).collect();
        Subgroup::generated(target, &gens)
    }

    /// Full preimage of a subgroup of the target.
    pub fn preimage(&self, source: &FiniteGroup, h: &Subgroup) -> Subgroup {
        Subgroup::from_members(
            source,
            crate::bitset::BitSet::from_indices(
                source.order(),
                source.elements().filter(|&x| h.contains(self.map[x])),
            ),
        )
    }

    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> bool {
        source.elements().all(|x| {
            source
                .elements()
                .all(|y| self.map[source.mul(x, y)] == target.mul(self.map[x], self.map[y]))
        })
    }
}

/// `G/N` as a freshly enumerated group, plus the canonical surjection.
/// Cosets are numbered by their smallest handle, in increasing order.
pub fn quotient_group(g: &FiniteGroup, n: &Subgroup) -> Result<(FiniteGroup, GroupHom)> {
    if n.parent_id() != g.id() {
        return Err(Error::domain(
            "normal subgroup belongs to a different group",
        ));
    }
    if !n.is_normal_in(g, &Subgroup::whole(g)) {
        return Err(Error::domain("quotient by a non-normal subgroup"));
    }
    let m = g.order() / n.order();
    if m > TABLE_LIMIT {
        return Err(Error::resource(format!(
            "quotient of order {m} exceeds table limit"
        )));
    }
    let n_elems = n.elements();
    let mut coset = vec![u32::MAX; g.order()];
    let mut reps = Vec::with_capacity(m);
    for x in g.elements() {
        if coset[x] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        reps.push(x);
        for &k in &n_elems {
            coset[g.mul(x, k)] = id;
        }
    }
    debug_assert_eq!(reps.len(), m);
    let mut table = vec![0u32; m * m];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i * m + j] = coset[g.mul(a, b)];
        }
    }
    let q = FiniteGroup::from_table_unchecked(m, table, None);
    let hom = GroupHom {
        source_id: g.id(),
        target_id: q.id(),
        map: coset.into_iter().map(|c| c as Elem).collect(),
    };
    Ok((q, hom))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s3() -> FiniteGroup {
        FiniteGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap()
    }

    #[test]
    fn closure_examples() {
        let g = s3();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        let triv = FiniteGroup::from_permutations(1, &[]).unwrap();
        assert_eq!(triv.order(), 1);
        let v4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap();
        assert_eq!(v4.order(), 4);
        assert_eq!(v4.exponent(), 2);
    }

    #[test]
    fn bad_generators() {
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![0, 0, 1]]),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            FiniteGroup::from_permutations(3, &[vec![0, 1]]),
            Err(Error::Domain(_))
        ));
        let tight = Limits {
            max_elements: 10,
            ..Limits::default()
        };
        // S4 has 24 elements
        assert!(matches!(
            FiniteGroup::from_permutations_with(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]], &tight),
            Err(Error::Resource(_))
        ));
    }

    #[test]
    fn element_orders_and_conjugation() {
        let g = s3();
        let t = g.find_permutation(&[1, 0, 2]).unwrap();
        let c = g.find_permutation(&[1, 2, 0]).unwrap();
        let c_inv = g.find_permutation(&[2, 0, 1]).unwrap();
        assert_eq!(g.element_order(0), 1);
        assert_eq!(g.element_order(t), 2);
        assert_eq!(g.element_order(c), 3);
        assert_eq!(g.conjugate(c, t), c_inv);
        assert_eq!(g.conjugate(c, 0), c);
        assert_eq!(g.inv(c), c_inv);
    }

    #[test]
    fn composition_applies_left_factor_first() {
        let g = s3();
        let t = g.find_permutation(&[1, 0, 2]).unwrap();
        let c = g.find_permutation(&[1, 2, 0]).unwrap();
        // t then c: 0 -> 1 -> 2, 1 -> 0 -> 1, 2 -> 2 -> 0
        assert_eq!(g.perm_images(g.mul(t, c)).unwrap(), vec![2, 1, 0]);
    }

    #[test]
    fn table_and_permutation_backings_agree() {
        // S6 has 720 elements; build it once with and once without a table
        let gens = vec![vec![1, 0, 2, 3, 4, 5], vec![1, 2, 3, 4, 5, 0]];
        let g = FiniteGroup::from_permutations(6, &gens).unwrap();
        let mut untabled = g.clone();
        untabled.table = None;
        for a in (0..720).step_by(7) {
            for b in (0..720).step_by(11) {
                assert_eq!(g.mul(a, b), untabled.mul(a, b));
            }
        }
    }

    #[test]
    fn cayley_table_validation() {
        let g = s3();
        let table: Vec<u32> = (0..6)
            .flat_map(|a| (0..6).map(move |b| (a, b)))
            .map(|(a, b)| g.mul(a, b) as u32)
            .collect();
        let h = FiniteGroup::from_cayley_table(6, table.clone()).unwrap();
        assert!(h.validate_axioms(100));
        let mut broken = table;
        broken.swap(7, 8);
        assert!(FiniteGroup::from_cayley_table(6, broken).is_err());
    }

    #[test]
    fn quotient_examples() {
        let g = s3();
        let (q, hom) = quotient_group(&g, &Subgroup::trivial(&g)).unwrap();
        assert_eq!(q.order(), 6);
        assert!(hom.is_homomorphism(&g, &q));
        let (q, _) = quotient_group(&g, &Subgroup::whole(&g)).unwrap();
        assert_eq!(q.order(), 1);
        let c = g.find_permutation(&[1, 2, 0]).unwrap();
        let c3 = Subgroup::generated(&g, &[c]);
        let (q, hom) = quotient_group(&g, &c3).unwrap();
        assert_eq!(q.order(), 2);
        assert!(hom.is_homomorphism(&g, &q));
        assert_eq!(hom.kernel(&g), c3);
        let t = g.find_permutation(&[1, 0, 2]).unwrap();
        assert!(matches!(
            quotient_group(&g, &Subgroup::generated(&g, &[t])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn regular_representation_rebuilds_isomorphic_copy() {
        let g = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
        let reg = g.regular_representation();
        let h = FiniteGroup::from_permutations(g.order(), &reg).unwrap();
        assert_eq!(h.order(), g.order());
        let mut og: Vec<_> = g.elements().map(|x| g.element_order(x)).collect();
        let mut oh: Vec<_> = h.elements().map(|x| h.element_order(x)).collect();
        og.sort_unstable();
        oh.sort_unstable();
        assert_eq!(og, oh);
        assert_eq!(g.center_order(), h.center_order());
    }

    proptest! {
        #[test]
        fn conjugation_is_a_right_action(x in 0usize..24, g in 0usize..24, h in 0usize..24) {
            let s4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
            prop_assert_eq!(
                s4.conjugate(s4.conjugate(x, g), h),
                s4.conjugate(x, s4.mul(g, h))
            );
        }

        #[test]
        fn quotient_orders_divide(x in 0usize..24) {
            let s4 = FiniteGroup::from_permutations(4, &[vec![1, 0, 2, 3], vec![1, 2, 3, 0]]).unwrap();
            let v4 = Subgroup::generated(
                &s4,
                &[
                    s4.find_permutation(&[1, 0, 3, 2]).unwrap(),
                    s4.find_permutation(&[2, 3, 0, 1]).unwrap(),
                ],
            );
            let (q, hom) = quotient_group(&s4, &v4).unwrap();
            prop_assert_eq!(q.order(), 6);
            prop_assert_eq!(s4.element_order(x) % q.element_order(hom.apply(x)), 0);
        }
    }
}
