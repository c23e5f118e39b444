//! Chief series, σ-centrality and σ-structure.

use crate::arith::{factorize, gcd, ClassId, PrimePartition};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::lattice::{Lattice, NormalLattice};
use crate::predicates::is_modular;
use crate::predicates::is_quasinormal;
use crate::subgroup::{core, greedy_generators, Subgroup};

/// A chief factor `H/K` of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiefFactor {
    upper: Subgroup,
    lower: Subgroup,
}

impl ChiefFactor {
    /// Checked constructor: `K < H`, both normal, nothing normal in between.
    pub fn new(nl: &NormalLattice, upper: Subgroup, lower: Subgroup) -> Result<Self> {
        let h = nl.index_of(&upper)?;
        let k = nl.index_of(&lower)?;
        if h == k || !nl.poset().le(k, h) {
            return Err(Error::domain("chief factor requires K < H"));
        }
        if !nl.poset().covers_above(k).contains(&h) {
            return Err(Error::domain(
                "a normal subgroup lies strictly between K and H",
            ));
        }
        Ok(ChiefFactor { upper, lower })
    }

    pub fn upper(&self) -> &Subgroup {
        &self.upper
    }

    pub fn lower(&self) -> &Subgroup {
        &self.lower
    }

    /// `|H/K|`
    pub fn order(&self) -> usize {
        self.upper.order() / self.lower.order()
    }

    /// Re-checks the defining invariant against a normal-subgroup lattice.
    pub fn is_valid(&self, nl: &NormalLattice) -> bool {
        ChiefFactor::new(nl, self.upper.clone(), self.lower.clone()).is_ok()
    }
}

fn check_anchor_chain(nl: &NormalLattice, anchors: &[Subgroup]) -> Result<Vec<usize>> {
    let idx = anchors
        .iter()
        .map(|a| nl.index_of(a))
        .collect::<Result<Vec<_>>>()?;
    for w in idx.windows(2) {
        if !nl.poset().le(w[0], w[1]) {
            return Err(Error::domain("anchors do not form an ascending chain"));
        }
    }
    Ok(idx)
}

fn factors_from_terms(nl: &NormalLattice, terms: &[usize]) -> Vec<ChiefFactor> {
    terms
        .windows(2)
        .map(|w| ChiefFactor {
            upper: nl.get(w[1]).clone(),
            lower: nl.get(w[0]).clone(),
        })
        .collect()
}

/// Chief series refining `1 ≤ N_1 ≤ … ≤ N_k ≤ G`, built upward by always
/// taking the first minimal normal subgroup above the current term that
/// stays inside the next anchor.
pub fn chief_series_through(nl: &NormalLattice, anchors: &[Subgroup]) -> Result<Vec<ChiefFactor>> {
    let mut targets = check_anchor_chain(nl, anchors)?;
    targets.push(nl.whole());
    let p = nl.poset();
    let mut cur = nl.trivial();
    let mut terms = vec![cur];
    for t in targets {
        while cur != t {
            cur = p
                .covers_above(cur)
                .into_iter()
                .find(|&m| p.le(m, t))
                .expect("a cover below the target exists");
            terms.push(cur);
        }
    }
    Ok(factors_from_terms(nl, &terms))
}

/// A second chief series through the same anchors, built downward from `G`
/// by always taking the last maximal normal subgroup that still contains
/// the next anchor.
pub fn chief_series_descending(
    nl: &NormalLattice,
    anchors: &[Subgroup],
) -> Result<Vec<ChiefFactor>> {
    let mut targets = check_anchor_chain(nl, anchors)?;
    targets.insert(0, nl.trivial());
    let p = nl.poset();
    let mut cur = nl.whole();
    let mut terms = vec![cur];
    for &t in targets.iter().rev() {
        while cur != t {
            cur = p
                .covers_below(cur)
                .into_iter()
                .rev()
                .find(|&m| p.le(t, m))
                .expect("a cover above the target exists");
            terms.push(cur);
        }
    }
    terms.reverse();
    Ok(factors_from_terms(nl, &terms))
}

/// `C_G(H/K) = {g : [g, h] ∈ K for all h ∈ H}`
pub fn chief_factor_centralizer(g: &FiniteGroup, f: &ChiefFactor) -> Subgroup {
    section_centralizer(g, &f.upper, &f.lower)
}

/// `C_G(H/K)` for normal `K ≤ H`, not necessarily a chief factor.
pub fn section_centralizer(g: &FiniteGroup, upper: &Subgroup, lower: &Subgroup) -> Subgroup {
    let gens = upper.gens();
    let members = crate::bitset::BitSet::from_indices(
        g.order(),
        g.elements()
            .filter(|&x| gens.iter().all(|&h| lower.contains(g.commutator(x, h)))),
    );
    Subgroup::from_members(g, members)
}

/// `(H/K) ⋊ (G/C_G(H/K))` is σ-primary, decided on its order.
pub fn is_sigma_central(g: &FiniteGroup, f: &ChiefFactor, sigma: &PrimePartition) -> bool {
    if sigma.is_primary_number(g.order() as u64) {
        return true;
    }
    let c = chief_factor_centralizer(g, f);
    sigma.is_primary_number((f.order() * (g.order() / c.order())) as u64)
}

/// σ-nilpotency as "every chief factor is σ-central".
pub fn is_sigma_nilpotent_by_chief(nl: &NormalLattice, sigma: &PrimePartition) -> Result<bool> {
    let g = nl.group();
    Ok(chief_series_through(nl, &[])?
        .iter()
        .all(|f| is_sigma_central(g, f, sigma)))
}

/// `Z_σ(G)`, by ascending iteration: each step adds every normal subgroup
/// covering the current term with a σ-central factor.
pub fn sigma_hypercentre(nl: &NormalLattice, sigma: &PrimePartition) -> Subgroup {
    let g = nl.group();
    let p = nl.poset();
    let mut cur = nl.trivial();
    for _ in 0..=g.order() {
        let mut next = cur;
        for m in p.covers_above(cur) {
            let f = ChiefFactor {
                upper: nl.get(m).clone(),
                lower: nl.get(cur).clone(),
            };
            if is_sigma_central(g, &f, sigma) {
                next = nl.join(next, m);
            }
        }
        if next == cur {
            break;
        }
        cur = next;
    }
    nl.get(cur).clone()
}

/// `Z_σ(G)` as the largest normal `T` admitting a chief series of `G` below
/// `T` with only σ-central factors.
pub fn sigma_hypercentre_oracle(nl: &NormalLattice, sigma: &PrimePartition) -> Subgroup {
    let g = nl.group();
    let p = nl.poset();
    let mut good = vec![false; nl.len()];
    good[nl.trivial()] = true;
    for t in 0..nl.len() {
        if good[t] {
            continue;
        }
        good[t] = p.covers_below(t).into_iter().any(|k| {
            good[k]
                && is_sigma_central(
                    g,
                    &ChiefFactor {
                        upper: nl.get(t).clone(),
                        lower: nl.get(k).clone(),
                    },
                    sigma,
                )
        });
    }
    let best = (0..nl.len())
        .filter(|&t| good[t])
        .max_by_key(|&t| (nl.get(t).order(), t));
    nl.get(best.expect("the trivial subgroup qualifies"))
        .clone()
}

/// `O_{σ_i}(G)`: the largest normal σ_i-subgroup.
pub fn o_sigma(nl: &NormalLattice, class: ClassId, sigma: &PrimePartition) -> Subgroup {
    let mut cur = nl.trivial();
    for (i, n) in nl.subgroups().iter().enumerate() {
        if sigma.is_class_number(n.order() as u64, class) {
            cur = nl.join(cur, i);
        }
    }
    nl.get(cur).clone()
}

/// `O^{σ_i}(G)`: the smallest normal subgroup with σ_i-quotient.
pub fn o_sigma_residual(nl: &NormalLattice, class: ClassId, sigma: &PrimePartition) -> Subgroup {
    let order = nl.group().order();
    let mut cur = nl.whole();
    for (i, n) in nl.subgroups().iter().enumerate() {
        if sigma.is_class_number((order / n.order()) as u64, class) {
            cur = nl.meet(cur, i);
        }
    }
    nl.get(cur).clone()
}

/// Structure of a nonabelian group `A ⋊ ⟨t⟩` where `A` is a normal
/// elementary abelian Sylow `p`-subgroup and `t` of prime order `q ≠ p`
/// acts on `A` as `a ↦ a^e`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PGroupType {
    pub p: u64,
    pub q: u64,
    pub sylow: Subgroup,
    pub t: Elem,
    pub e: u64,
}

fn is_power_of(mut n: usize, p: usize) -> bool {
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// [`PGroupType`] for a subgroup `S`, if it is such a group.
pub fn p_group_structure(g: &FiniteGroup, s: &Subgroup) -> Option<PGroupType> {
    let gens = s.gens();
    let abelian = gens
        .iter()
        .all(|&a| gens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)));
    if abelian {
        return None;
    }
    let f = factorize(s.order() as u64).ok()?;
    if f.len() != 2 {
        return None;
    }
    for (qi, &(q, qe)) in f.iter().enumerate() {
        if qe != 1 {
            continue;
        }
        let (p, pe) = f[1 - qi];
        let pk = (p as usize).pow(pe);
        let members = s.elements();
        let pelems: Vec<Elem> = members
            .iter()
            .copied()
            .filter(|&x| is_power_of(g.element_order(x), p as usize))
            .collect();
        if pelems.len() != pk
            || pelems
                .iter()
                .any(|&x| x != 0 && g.element_order(x) != p as usize)
        {
            continue;
        }
        let agens = greedy_generators(g, pelems.iter().copied());
        if !agens
            .iter()
            .all(|&a| agens.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
        {
            continue;
        }
        let t = *members
            .iter()
            .find(|&&x| g.element_order(x) == q as usize)?;
        let a0 = agens[0];
        let image = g.conjugate(a0, t);
        let e = (1..p).find(|&e| g.pow(a0, e) == image)?;
        if e == 1 || !agens.iter().all(|&a| g.conjugate(a, t) == g.pow(a, e)) {
            continue;
        }
        let sylow =
            Subgroup::from_members(g, crate::bitset::BitSet::from_indices(g.order(), pelems));
        return Some(PGroupType { p, q, sylow, t, e });
    }
    None
}

/// `(p, q)` when the group is a nonabelian P-group of that type.
pub fn is_p_group_of_type(g: &FiniteGroup) -> Option<(u64, u64)> {
    p_group_structure(g, &Subgroup::whole(g)).map(|t| (t.p, t.q))
}

/// `G = S_1 × ⋯ × S_r × K` attached to a modular, core-free subgroup `M`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchmidtDecomposition {
    pub factors: Vec<Subgroup>,
    pub complement: Subgroup,
    pub sylows: Vec<Subgroup>,
}

struct Candidate {
    s: usize,
    complement: usize,
    q: Subgroup,
}

fn candidates(lattice: &Lattice, nl: &NormalLattice, m: &Subgroup) -> Result<Vec<Candidate>> {
    let g = lattice.group();
    let mut out = Vec::new();
    for (si, s) in nl.subgroups().iter().enumerate() {
        let Some(ty) = p_group_structure(g, s) else {
            continue;
        };
        let q = Subgroup::meet(g, m, s)?;
        if q.order() as u64 != ty.q || q.is_normal_in(g, s) {
            continue;
        }
        let comp = nl.subgroups().iter().position(|n| {
            n.order() * s.order() == g.order() && gcd(n.order() as u64, s.order() as u64) == 1
        });
        if let Some(ci) = comp {
            out.push(Candidate {
                s: si,
                complement: ci,
                q,
            });
        }
    }
    Ok(out)
}

/// Decomposition of `G` around a modular subgroup `M` with trivial core.
/// An exhausted search is reported as [`Error::Falsified`].
pub fn schmidt_decomposition(lattice: &Lattice, m: &Subgroup) -> Result<SchmidtDecomposition> {
    let g = lattice.group();
    if !is_modular(lattice, m)? {
        return Err(Error::domain("subgroup is not modular"));
    }
    if !core(g, m).is_trivial() {
        return Err(Error::domain("subgroup has non-trivial core"));
    }
    let nl = NormalLattice::from_lattice(lattice);
    let cands = candidates(lattice, &nl, m)?;
    let mut chosen = Vec::new();
    if let Some(d) = search(lattice, &nl, m, &cands, 0, &mut chosen)? {
        return Ok(d);
    }
    Err(Error::Falsified(format!(
        "no decomposition found for a modular core-free subgroup of order {}",
        m.order()
    )))
}

fn search(
    lattice: &Lattice,
    nl: &NormalLattice,
    m: &Subgroup,
    cands: &[Candidate],
    i: usize,
    chosen: &mut Vec<usize>,
) -> Result<Option<SchmidtDecomposition>> {
    if i == cands.len() {
        let mut k = nl.whole();
        for &c in chosen.iter() {
            k = nl.meet(k, cands[c].complement);
        }
        let d = SchmidtDecomposition {
            factors: chosen.iter().map(|&c| nl.get(cands[c].s).clone()).collect(),
            complement: nl.get(k).clone(),
            sylows: chosen.iter().map(|&c| cands[c].q.clone()).collect(),
        };
        return Ok(if verify_schmidt(lattice.group(), m, &d)? {
            Some(d)
        } else {
            None
        });
    }
    let si = cands[i].s;
    let coprime = chosen
        .iter()
        .all(|&c| gcd(nl.get(cands[c].s).order() as u64, nl.get(si).order() as u64) == 1);
    if coprime {
        chosen.push(i);
        if let Some(d) = search(lattice, nl, m, cands, i + 1, chosen)? {
            return Ok(Some(d));
        }
        chosen.pop();
    }
    search(lattice, nl, m, cands, i + 1, chosen)
}

fn commute(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.gens()
        .iter()
        .all(|&x| b.gens().iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
}

/// Checks that `d` is an internal direct decomposition of `G` with the
/// four defining properties relative to `m`.
pub fn verify_schmidt(g: &FiniteGroup, m: &Subgroup, d: &SchmidtDecomposition) -> Result<bool> {
    if d.factors.len() != d.sylows.len() {
        return Ok(false);
    }
    let mut parts: Vec<&Subgroup> = d.factors.iter().collect();
    parts.push(&d.complement);
    // direct product: normal, pairwise commuting, coprime, orders multiply
    if parts.iter().map(|s| s.order()).product::<usize>() != g.order() {
        return Ok(false);
    }
    for (i, a) in parts.iter().enumerate() {
        if !a.is_normal(g) {
            return Ok(false);
        }
        for b in &parts[i + 1..] {
            if gcd(a.order() as u64, b.order() as u64) != 1 || !commute(g, a, b) {
                return Ok(false);
            }
        }
    }
    let mk = Subgroup::meet(g, m, &d.complement)?;
    let mut m_order = mk.order();
    for (s, q) in d.factors.iter().zip(&d.sylows) {
        let Some(ty) = p_group_structure(g, s) else {
            return Ok(false);
        };
        let is_sylow = q.is_subgroup_of(s) && q.order() as u64 == ty.q;
        if !is_sylow || q.is_normal_in(g, s) || !q.is_subgroup_of(m) {
            return Ok(false);
        }
        m_order *= q.order();
    }
    if m_order != m.order() {
        return Ok(false);
    }
    is_quasinormal(g, &mk)
}
