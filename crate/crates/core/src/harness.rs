//! Exhaustive verification of the quasinormality theorems and supporting
//! lemmas on concrete groups, with structured reports.

use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{ClassId, PrimePartition, RemainderPolicy};
use crate::catalog::GroupExpr;
use crate::chief::{
    chief_factor_centralizer, chief_series_through, is_sigma_central, o_sigma_residual,
    p_group_structure, section_centralizer, sigma_hypercentre, sigma_hypercentre_oracle,
    ChiefFactor,
};
use crate::error::{Error, Result};
use crate::group::{quotient_group, FiniteGroup, GroupHom};
use crate::lattice::{Lattice, NormalLattice};
use crate::limits::Limits;
use crate::predicates::{
    is_quasinormal, is_sigma_nilpotent, is_sigma_seminormal, modular_violation_in,
    SigmaSubnormality,
};
use crate::subgroup::{
    centralizer, core, is_subnormal, normal_closure, normal_closure_in, permutes, Subgroup,
};

/// Every claim id, in report order.
pub const CLAIM_IDS: [&str; 18] = [
    "A", "B.i", "B.ii", "C.i", "C.ii", "C.iii", "C.iv", "C.v", "L2.1", "L2.3.1", "L2.3.2",
    "L2.3.3", "L2.4.1", "L2.4.2", "L2.5", "L2.6", "Cor1.3", "Cor1.4",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Verified,
    Violated,
    Skipped,
}

/// A subgroup in a witness, by permutation images of its generators.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSubgroup {
    pub role: String,
    pub order: usize,
    pub generators: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub detail: String,
    pub subgroups: Vec<WitnessSubgroup>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimRecord {
    pub id: String,
    pub subjects: usize,
    pub outcome: Outcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

impl ClaimRecord {
    fn verified(id: &str, subjects: usize) -> Self {
        ClaimRecord {
            id: id.to_string(),
            subjects,
            outcome: Outcome::Verified,
            reason: None,
            witness: None,
        }
    }

    fn skipped(id: &str, reason: impl Into<String>) -> Self {
        ClaimRecord {
            id: id.to_string(),
            subjects: 0,
            outcome: Outcome::Skipped,
            reason: Some(reason.into()),
            witness: None,
        }
    }

    fn from_error(id: &str, e: Error) -> Self {
        match e {
            Error::Resource(msg) => ClaimRecord::skipped(id, msg),
            other => ClaimRecord {
                id: id.to_string(),
                subjects: 0,
                outcome: Outcome::Violated,
                reason: Some(other.to_string()),
                witness: None,
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub group: String,
    pub sigma: String,
    pub claims: Vec<ClaimRecord>,
}

impl VerificationReport {
    pub fn claim(&self, id: &str) -> Option<&ClaimRecord> {
        self.claims.iter().find(|c| c.id == id)
    }

    pub fn is_failing(&self) -> bool {
        self.claims.iter().any(|c| c.outcome == Outcome::Violated)
    }

    fn skipped_all(group: String, sigma: String, reason: &str) -> Self {
        VerificationReport {
            group,
            sigma,
            claims: CLAIM_IDS
                .iter()
                .map(|id| ClaimRecord::skipped(id, reason))
                .collect(),
        }
    }
}

/// Whether any report in a survey contains a violation.
pub fn aggregate_failing(reports: &[VerificationReport]) -> bool {
    reports.iter().any(VerificationReport::is_failing)
}

// Accumulates subjects and the first failure of one claim.
struct Tally {
    id: &'static str,
    subjects: usize,
    failure: Option<(String, Vec<(String, Subgroup)>)>,
}

impl Tally {
    fn new(id: &'static str) -> Self {
        Tally {
            id,
            subjects: 0,
            failure: None,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> (String, Vec<(String, Subgroup)>)) {
        if !ok && self.failure.is_none() {
            self.failure = Some(detail());
        }
    }

    fn finish(self, g: &FiniteGroup) -> ClaimRecord {
        match self.failure {
            None => ClaimRecord::verified(self.id, self.subjects),
            Some((detail, subs)) => ClaimRecord {
                id: self.id.to_string(),
                subjects: self.subjects,
                outcome: Outcome::Violated,
                reason: Some(detail.clone()),
                witness: Some(Witness {
                    detail,
                    subgroups: subs
                        .into_iter()
                        .map(|(role, s)| witness_subgroup(g, role, &s))
                        .collect(),
                }),
            },
        }
    }
}

fn witness_subgroup(g: &FiniteGroup, role: String, s: &Subgroup) -> WitnessSubgroup {
    WitnessSubgroup {
        role,
        order: s.order(),
        generators: s.gens().iter().filter_map(|&x| g.perm_images(x)).collect(),
    }
}

fn one(role: &str, s: &Subgroup) -> Vec<(String, Subgroup)> {
    vec![(role.to_string(), s.clone())]
}

/// `A^G/A_G` and the data attached to it, shared by every σ.
struct Section {
    lower: Subgroup,
    upper: Subgroup,
    centralizer: Subgroup,
    quotient: FiniteGroup,
    top: FiniteGroup,
    factors: Vec<(ChiefFactor, usize)>,
}

/// σ-independent data for one group: lattices, flags and sections.
pub struct GroupAnalysis<'g> {
    name: String,
    group: &'g FiniteGroup,
    limits: Limits,
    lattice: Lattice<'g>,
    normal: NormalLattice<'g>,
    modular: Vec<bool>,
    quasinormal: Vec<bool>,
    subnormal: Vec<bool>,
    section_of: Vec<usize>,
    sections: Vec<Section>,
}

fn sigma_set(sigma: &PrimePartition, n: usize) -> BTreeSet<ClassId> {
    sigma.sigma_of(n as u64).expect("positive order")
}

impl<'g> GroupAnalysis<'g> {
    pub fn new(name: impl Into<String>, group: &'g FiniteGroup, limits: &Limits) -> Result<Self> {
        let lattice = Lattice::build_with(group, limits)?;
        let normal = NormalLattice::from_lattice(&lattice);
        let n = lattice.len();
        let top = lattice.top();
        let mut modular = Vec::with_capacity(n);
        let mut quasinormal = Vec::with_capacity(n);
        let mut subnormal = Vec::with_capacity(n);
        let mut section_key: HashMap<(usize, usize), usize> = HashMap::new();
        let mut section_of = Vec::with_capacity(n);
        let mut sections = Vec::new();
        for i in 0..n {
            limits.check_deadline("subgroup classification")?;
            let a = lattice.get(i);
            modular.push(modular_violation_in(&lattice, i, top).is_none());
            quasinormal.push(is_quasinormal(group, a)?);
            subnormal.push(is_subnormal(group, a));
            let lo = core(group, a);
            let hi = normal_closure(group, a);
            let key = (normal.index_of(&lo)?, normal.index_of(&hi)?);
            let next = sections.len();
            let idx = *section_key.entry(key).or_insert(next);
            if idx == next {
                sections.push(Self::section(group, &normal, lo, hi)?);
            }
            section_of.push(idx);
        }
        Ok(GroupAnalysis {
            name: name.into(),
            group,
            limits: limits.clone(),
            lattice,
            normal,
            modular,
            quasinormal,
            subnormal,
            section_of,
            sections,
        })
    }

    fn section(
        g: &FiniteGroup,
        nl: &NormalLattice,
        lower: Subgroup,
        upper: Subgroup,
    ) -> Result<Section> {
        let centralizer = section_centralizer(g, &upper, &lower);
        let (gbar, hom) = quotient_group(g, &lower)?;
        let (quotient, _) = gbar.restrict_to(&hom.image(&gbar, &upper))?;
        let (top, _) = quotient_group(g, &centralizer)?;
        let series = chief_series_through(nl, &[lower.clone(), upper.clone()])?;
        let factors = series
            .into_iter()
            .filter(|f| lower.is_subgroup_of(f.lower()) && f.upper().is_subgroup_of(&upper))
            .map(|f| {
                let c = chief_factor_centralizer(g, &f).order();
                (f, c)
            })
            .collect();
        Ok(Section {
            lower,
            upper,
            centralizer,
            quotient,
            top,
            factors,
        })
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn lattice(&self) -> &Lattice<'g> {
        &self.lattice
    }

    pub fn normal_lattice(&self) -> &NormalLattice<'g> {
        &self.normal
    }

    pub fn is_modular(&self, i: usize) -> bool {
        self.modular[i]
    }

    pub fn is_quasinormal(&self, i: usize) -> bool {
        self.quasinormal[i]
    }

    pub fn is_subnormal(&self, i: usize) -> bool {
        self.subnormal[i]
    }

    /// Lattice indices of the σ-quasinormal subgroups.
    pub fn sigma_quasinormal(&self, sigma: &PrimePartition) -> Vec<usize> {
        let search = SigmaSubnormality::new(&self.lattice, sigma);
        let reach = search.reach(self.lattice.top(), None);
        (0..self.lattice.len())
            .filter(|&i| self.modular[i] && reach.contains(i))
            .collect()
    }

    fn hall_subgroups(&self, sigma: &PrimePartition) -> Vec<(ClassId, Vec<usize>)> {
        let order = self.group.order();
        sigma_set(sigma, order)
            .into_iter()
            .map(|c| {
                let part = sigma.sigma_part(order as u64, c).expect("class of |G|") as usize;
                let hs = (0..self.lattice.len())
                    .filter(|&i| self.lattice.get(i).order() == part)
                    .collect();
                (c, hs)
            })
            .collect()
    }

    /// Theorem A: quasinormal ⟺ modular and subnormal, for every subgroup.
    pub fn verify_theorem_a(&self) -> ClaimRecord {
        let mut t = Tally::new("A");
        for i in 0..self.lattice.len() {
            t.subjects += 1;
            let lhs = self.quasinormal[i];
            let rhs = self.modular[i] && self.subnormal[i];
            t.check(lhs == rhs, || {
                (
                    format!("quasinormal = {lhs} but modular and subnormal = {rhs}"),
                    one("A", self.lattice.get(i)),
                )
            });
        }
        t.finish(self.group)
    }

    /// Theorem B over quasinormal subgroups, cross-checked against the
    /// σ¹ instance of Theorem C.
    pub fn verify_theorem_b(&self) -> Vec<ClaimRecord> {
        let g = self.group;
        let s1 = PrimePartition::sigma1();
        let subjects: Vec<usize> = (0..self.lattice.len())
            .filter(|&i| self.quasinormal[i])
            .collect();
        let mut bi = Tally::new("B.i");
        let mut bii = Tally::new("B.ii");
        for &i in &subjects {
            let a = self.lattice.get(i);
            let sec = &self.sections[self.section_of[i]];
            bi.subjects += 1;
            bii.subjects += 1;
            bi.check(is_sigma_nilpotent(&sec.quotient, &s1), || {
                ("A^G/A_G is not nilpotent".into(), one("A", a))
            });
            for (f, c) in &sec.factors {
                bii.check(*c == g.order(), || {
                    (
                        format!("chief factor of order {} is not central", f.order()),
                        vec![
                            ("A".into(), a.clone()),
                            ("H".into(), f.upper().clone()),
                            ("K".into(), f.lower().clone()),
                        ],
                    )
                });
            }
        }
        let c_subjects = self.sigma_quasinormal(&s1);
        let c = self.verify_theorem_c(&s1);
        let mut out = vec![bi.finish(g), bii.finish(g)];
        for (rec, cid) in out.iter_mut().zip(["C.ii", "C.iii"]) {
            let crec = c.iter().find(|r| r.id == cid).expect("claim present");
            if c_subjects != subjects {
                rec.outcome = Outcome::Violated;
                rec.reason =
                    Some("quasinormal subgroups differ from σ¹-quasinormal subgroups".into());
            } else if crec.outcome != rec.outcome {
                rec.outcome = Outcome::Violated;
                rec.reason = Some(format!("disagrees with {cid} at sigma1"));
            }
        }
        out
    }

    /// Theorem C (i)–(v) over σ-quasinormal subgroups.
    pub fn verify_theorem_c(&self, sigma: &PrimePartition) -> Vec<ClaimRecord> {
        let g = self.group;
        let subjects = self.sigma_quasinormal(sigma);
        let halls = self.hall_subgroups(sigma);
        let mut t: Vec<Tally> = ["C.i", "C.ii", "C.iii", "C.iv", "C.v"]
            .into_iter()
            .map(Tally::new)
            .collect();
        for &i in &subjects {
            let a = self.lattice.get(i);
            let sec = &self.sections[self.section_of[i]];
            for x in t.iter_mut() {
                x.subjects += 1;
            }
            for (_, hs) in &halls {
                for &h in hs {
                    let hall = self.lattice.get(h);
                    let ok = permutes(g, a, hall).unwrap_or(false);
                    t[0].check(ok, || {
                        (
                            "does not permute with a Hall subgroup".into(),
                            vec![("A".into(), a.clone()), ("H".into(), hall.clone())],
                        )
                    });
                }
            }
            let q_ok = is_sigma_nilpotent(&sec.quotient, sigma);
            let top_ok = is_sigma_nilpotent(&sec.top, sigma);
            t[1].check(q_ok && top_ok, || {
                let which = if q_ok { "G/C_G(A^G/A_G)" } else { "A^G/A_G" };
                (format!("{which} is not σ-nilpotent"), one("A", a))
            });
            for (f, c) in &sec.factors {
                let ok = sigma.is_primary_number((f.order() * (g.order() / c)) as u64);
                t[2].check(ok, || {
                    (
                        format!("chief factor of order {} is not σ-central", f.order()),
                        vec![
                            ("A".into(), a.clone()),
                            ("H".into(), f.upper().clone()),
                            ("K".into(), f.lower().clone()),
                        ],
                    )
                });
            }
            let lhs = sigma_set(sigma, g.order() / sec.centralizer.order());
            let rhs = sigma_set(sigma, sec.upper.order() / sec.lower.order());
            t[3].check(lhs.is_subset(&rhs), || {
                (
                    "σ(G/C_G(A^G/A_G)) is not contained in σ(A^G/A_G)".into(),
                    one("A", a),
                )
            });
            let ok = is_sigma_seminormal(g, a, sigma).unwrap_or(false);
            t[4].check(ok, || ("not σ-seminormal".into(), one("A", a)));
        }
        t.into_iter().map(|x| x.finish(g)).collect()
    }

    /// Lemma 2.1 on every subgroup that is a P-group.
    pub fn verify_lemma_2_1(&self) -> ClaimRecord {
        let g = self.group;
        let mut t = Tally::new("L2.1");
        for s in self.lattice.subgroups() {
            if let Some(ty) = p_group_structure(g, s) {
                t.subjects += 1;
                let tg = Subgroup::generated(g, &[ty.t]);
                t.check(normal_closure_in(g, s, &tg) == *s, || {
                    (
                        "⟨t⟩ has a proper normal closure".into(),
                        vec![("S".into(), s.clone()), ("t".into(), tg.clone())],
                    )
                });
            }
        }
        t.finish(g)
    }

    /// Lemmas 2.1 and 2.3–2.6.
    pub fn verify_lemmas(&self, sigma: &PrimePartition) -> Vec<ClaimRecord> {
        let mut out = vec![self.verify_lemma_2_1()];
        match self.lemmas_2_3_2_4(sigma) {
            Ok(recs) => out.extend(recs),
            Err(e) => {
                for id in ["L2.3.1", "L2.3.2", "L2.3.3", "L2.4.1", "L2.4.2"] {
                    out.push(ClaimRecord::from_error(id, e.clone()));
                }
            }
        }
        out.push(self.lemma_2_5(sigma));
        out.push(self.lemma_2_6(sigma));
        out
    }

    fn lemmas_2_3_2_4(&self, sigma: &PrimePartition) -> Result<Vec<ClaimRecord>> {
        let g = self.group;
        let l = &self.lattice;
        let search = SigmaSubnormality::new(l, sigma);
        let reach_top = search.reach(l.top(), None);
        let sub: Vec<usize> = (0..l.len()).filter(|&i| reach_top.contains(i)).collect();
        let qn: Vec<usize> = sub.iter().copied().filter(|&i| self.modular[i]).collect();

        let mut t1 = Tally::new("L2.3.1");
        let mut t41 = Tally::new("L2.4.1");
        for b in 0..l.len() {
            self.limits.check_deadline("lemma sweep")?;
            let reach_b = search.reach(b, None);
            for &a in &sub {
                t1.subjects += 1;
                let m = l.meet(a, b);
                t1.check(reach_b.contains(m), || {
                    (
                        "A ∩ B is not σ-subnormal in B".into(),
                        vec![
                            ("A".into(), l.get(a).clone()),
                            ("B".into(), l.get(b).clone()),
                        ],
                    )
                });
            }
            for &a in qn.iter().filter(|&&a| l.poset().le(a, b)) {
                t41.subjects += 1;
                let ok = reach_b.contains(a) && modular_violation_in(l, a, b).is_none();
                t41.check(ok, || {
                    (
                        "A is not σ-quasinormal in B".into(),
                        vec![
                            ("A".into(), l.get(a).clone()),
                            ("B".into(), l.get(b).clone()),
                        ],
                    )
                });
            }
        }

        let mut t2 = Tally::new("L2.3.2");
        let mut t42 = Tally::new("L2.4.2");
        for n in self.normal.subgroups() {
            self.limits.check_deadline("lemma sweep")?;
            let (gbar, hom) = quotient_group(g, n)?;
            let lbar = Lattice::build_with(&gbar, &self.limits)?;
            let sbar = SigmaSubnormality::new(&lbar, sigma);
            let rbar = sbar.reach(lbar.top(), None);
            let image =
                |a: usize| -> Result<usize> { lbar.index_of(&image_of(&hom, &gbar, l.get(a))) };
            for &a in &sub {
                t2.subjects += 1;
                let ia = image(a)?;
                t2.check(rbar.contains(ia), || {
                    (
                        "AN/N is not σ-subnormal in G/N".into(),
                        vec![("A".into(), l.get(a).clone()), ("N".into(), n.clone())],
                    )
                });
            }
            for &a in &qn {
                t42.subjects += 1;
                let ia = image(a)?;
                let ok = rbar.contains(ia) && modular_violation_in(&lbar, ia, lbar.top()).is_none();
                t42.check(ok, || {
                    (
                        "AN/N is not σ-quasinormal in G/N".into(),
                        vec![("A".into(), l.get(a).clone()), ("N".into(), n.clone())],
                    )
                });
            }
        }

        let mut t3 = Tally::new("L2.3.3");
        for (c, hs) in self.hall_subgroups(sigma) {
            for &h in &hs {
                for &a in &sub {
                    t3.subjects += 1;
                    let ah = l.get(l.meet(a, h));
                    let part = sigma.sigma_part(l.get(a).order() as u64, c)? as usize;
                    t3.check(ah.order() == part, || {
                        (
                            format!("A ∩ H is not a Hall {c}-subgroup of A"),
                            vec![
                                ("A".into(), l.get(a).clone()),
                                ("H".into(), l.get(h).clone()),
                            ],
                        )
                    });
                }
            }
        }
        Ok(vec![
            t1.finish(g),
            t2.finish(g),
            t3.finish(g),
            t41.finish(g),
            t42.finish(g),
        ])
    }

    fn lemma_2_5(&self, sigma: &PrimePartition) -> ClaimRecord {
        let g = self.group;
        let nl = &self.normal;
        let z = sigma_hypercentre(nl, sigma);
        let mut t = Tally::new("L2.5");
        let oracle = sigma_hypercentre_oracle(nl, sigma);
        t.check(oracle == z, || {
            (
                "ascending Z_σ differs from the largest σ-hypercentral normal subgroup".into(),
                vec![("Z".into(), z.clone()), ("oracle".into(), oracle.clone())],
            )
        });
        // every chief factor H/K of G with H ≤ Z_σ(G)
        let p = nl.poset();
        let zi = nl.index_of(&z).expect("normal");
        for h in p.down(zi).iter() {
            for k in p.covers_below(h) {
                t.subjects += 1;
                let f = ChiefFactor::new(nl, nl.get(h).clone(), nl.get(k).clone()).expect("cover");
                t.check(is_sigma_central(g, &f, sigma), || {
                    (
                        "chief factor below Z_σ is not σ-central".into(),
                        vec![
                            ("H".into(), f.upper().clone()),
                            ("K".into(), f.lower().clone()),
                        ],
                    )
                });
            }
        }
        t.finish(g)
    }

    fn lemma_2_6(&self, sigma: &PrimePartition) -> ClaimRecord {
        let g = self.group;
        let nl = &self.normal;
        let z = sigma_hypercentre(nl, sigma);
        let mut t = Tally::new("L2.6");
        for n in nl.subgroups().iter().filter(|n| !n.is_trivial()) {
            let classes = sigma_set(sigma, n.order());
            if classes.len() != 1 {
                continue;
            }
            let c = *classes.iter().next().expect("one class");
            t.subjects += 1;
            let lhs = n.is_subgroup_of(&z);
            let resid = o_sigma_residual(nl, c, sigma);
            let rhs = resid.is_subgroup_of(&centralizer(g, n.gens()));
            t.check(lhs == rhs, || {
                (
                    format!("N ≤ Z_σ(G) is {lhs} but O^σi(G) ≤ C_G(N) is {rhs}"),
                    vec![("N".into(), n.clone()), ("Z".into(), z.clone())],
                )
            });
        }
        t.finish(g)
    }

    /// Corollaries 1.3 and 1.4 for the set `π` of explicit primes of σ.
    pub fn verify_corollaries(&self, sigma: &PrimePartition) -> Vec<ClaimRecord> {
        match corollary_pi(sigma) {
            Some(pi) => self.verify_corollaries_pi(&pi),
            None => vec![
                ClaimRecord::skipped("Cor1.3", "σ lists no finite set π of primes"),
                ClaimRecord::skipped("Cor1.4", "σ lists no finite set π of primes"),
            ],
        }
    }

    pub fn verify_corollaries_pi(&self, pi: &[u64]) -> Vec<ClaimRecord> {
        let (s_pi, s_1pi) = match (PrimePartition::pi(pi), PrimePartition::one_pi(pi)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => {
                return vec![
                    ClaimRecord::from_error("Cor1.3", e.clone()),
                    ClaimRecord::from_error("Cor1.4", e),
                ]
            }
        };
        let g = self.group;
        let in_pi = |n: usize| {
            crate::arith::prime_divisors(n as u64)
                .iter()
                .all(|p| pi.contains(p))
        };
        let in_pi_prime = |n: usize| {
            crate::arith::prime_divisors(n as u64)
                .iter()
                .all(|p| !pi.contains(p))
        };

        let mut c13 = Tally::new("Cor1.3");
        let base = self.verify_theorem_c(&s_pi);
        for &i in &self.sigma_quasinormal(&s_pi) {
            c13.subjects += 1;
            let a = self.lattice.get(i);
            let sec = &self.sections[self.section_of[i]];
            let ok =
                is_sigma_nilpotent(&sec.quotient, &s_pi) && is_sigma_nilpotent(&sec.top, &s_pi);
            c13.check(ok, || {
                ("a quotient is not π-decomposable".into(), one("A", a))
            });
            for (f, c) in &sec.factors {
                let prod = f.order() * (g.order() / c);
                c13.check(in_pi(prod) || in_pi_prime(prod), || {
                    (
                        "chief factor action is neither a π- nor a π′-group".into(),
                        vec![("A".into(), a.clone()), ("H".into(), f.upper().clone())],
                    )
                });
            }
        }
        let mut r13 = c13.finish(g);
        merge_theorem_c(&mut r13, &base);

        let mut c14 = Tally::new("Cor1.4");
        let base = self.verify_theorem_c(&s_1pi);
        let sylows: Vec<usize> = pi
            .iter()
            .flat_map(|&p| {
                let pp = PrimePartition::sigma1()
                    .sigma_part(g.order() as u64, ClassId::Singleton(p))
                    .expect("singleton class") as usize;
                (0..self.lattice.len()).filter(move |&i| self.lattice.get(i).order() == pp)
            })
            .collect();
        for &i in &self.sigma_quasinormal(&s_1pi) {
            c14.subjects += 1;
            let a = self.lattice.get(i);
            let sec = &self.sections[self.section_of[i]];
            for &s in &sylows {
                let sy = self.lattice.get(s);
                c14.check(permutes(g, a, sy).unwrap_or(false), || {
                    (
                        "does not permute with a Sylow p-subgroup for p ∈ π".into(),
                        vec![("A".into(), a.clone()), ("P".into(), sy.clone())],
                    )
                });
            }
            let ok =
                is_sigma_nilpotent(&sec.quotient, &s_1pi) && is_sigma_nilpotent(&sec.top, &s_1pi);
            c14.check(ok, || ("a quotient is not π-special".into(), one("A", a)));
            for (f, c) in &sec.factors {
                if *c == g.order() {
                    continue;
                }
                let prod = f.order() * (g.order() / c);
                c14.check(in_pi_prime(prod), || {
                    (
                        "non-central chief factor action is not a π′-group".into(),
                        vec![("A".into(), a.clone()), ("H".into(), f.upper().clone())],
                    )
                });
            }
        }
        let mut r14 = c14.finish(g);
        merge_theorem_c(&mut r14, &base);
        vec![r13, r14]
    }

    /// All claims for one σ.
    pub fn report(&self, sigma: &PrimePartition) -> VerificationReport {
        let a = self.verify_theorem_a();
        let b = self.verify_theorem_b();
        self.report_with(sigma, &a, &b)
    }

    fn report_with(
        &self,
        sigma: &PrimePartition,
        a: &ClaimRecord,
        b: &[ClaimRecord],
    ) -> VerificationReport {
        let mut claims = vec![a.clone()];
        claims.extend(b.iter().cloned());
        claims.extend(self.verify_theorem_c(sigma));
        claims.extend(self.verify_lemmas(sigma));
        claims.extend(self.verify_corollaries(sigma));
        if let Err(e) = self.limits.check_deadline("verification") {
            for c in claims.iter_mut().filter(|c| c.outcome == Outcome::Verified) {
                *c = ClaimRecord::from_error(&c.id.clone(), e.clone());
            }
        }
        VerificationReport {
            group: self.name.clone(),
            sigma: sigma.to_string(),
            claims,
        }
    }

    /// Reports for several σ, sharing the σ-independent claims.
    pub fn reports(&self, sigmas: &[PrimePartition]) -> Vec<VerificationReport> {
        let a = self.verify_theorem_a();
        let b = self.verify_theorem_b();
        sigmas.iter().map(|s| self.report_with(s, &a, &b)).collect()
    }
}

fn image_of(hom: &GroupHom, gbar: &FiniteGroup, a: &Subgroup) -> Subgroup {
    hom.image(gbar, a)
}

// A corollary also fails when its Theorem C instance fails.
fn merge_theorem_c(rec: &mut ClaimRecord, base: &[ClaimRecord]) {
    if rec.outcome != Outcome::Verified {
        return;
    }
    if let Some(bad) = base.iter().find(|r| r.outcome != Outcome::Verified) {
        rec.outcome = bad.outcome;
        rec.reason = Some(format!("{} fails in this instance", bad.id));
        rec.witness = bad.witness.clone();
    }
}

/// `π` for the corollaries: the explicitly listed primes of σ when the rest
/// forms a single complement class.
pub fn corollary_pi(sigma: &PrimePartition) -> Option<Vec<u64>> {
    if sigma.remainder_policy() != RemainderPolicy::Complement {
        return None;
    }
    let primes: Vec<u64> = sigma.listed_primes()?.into_iter().collect();
    (!primes.is_empty()).then_some(primes)
}

/// Full report for one group and σ.
pub fn verify_all(
    name: &str,
    g: &FiniteGroup,
    sigma: &PrimePartition,
    limits: &Limits,
) -> VerificationReport {
    match GroupAnalysis::new(name, g, limits) {
        Ok(a) => a.report(sigma),
        Err(e) => {
            VerificationReport::skipped_all(name.to_string(), sigma.to_string(), &e.to_string())
        }
    }
}

/// Worker count from `SIGMA_FORGE_THREADS`, if set to a positive integer.
pub fn thread_cap() -> Option<usize> {
    std::env::var("SIGMA_FORGE_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

fn survey_group(
    expr: &GroupExpr,
    sigmas: &[PrimePartition],
    limits: &Limits,
) -> Vec<VerificationReport> {
    let name = expr.to_string();
    let skip = |reason: String| {
        sigmas
            .iter()
            .map(|s| VerificationReport::skipped_all(name.clone(), s.to_string(), &reason))
            .collect()
    };
    let g = match expr.build_with(limits) {
        Ok(g) => g,
        Err(e) => return skip(e.to_string()),
    };
    match GroupAnalysis::new(name.clone(), &g, limits) {
        Ok(a) => a.reports(sigmas),
        Err(e) => skip(e.to_string()),
    }
}

/// Every claim for every (group, σ) pair, groups in parallel. Reports are
/// ordered by group, then σ.
pub fn survey(
    exprs: &[GroupExpr],
    sigmas: &[PrimePartition],
    limits: &Limits,
) -> Vec<VerificationReport> {
    let run = || -> Vec<VerificationReport> {
        exprs
            .par_iter()
            .map(|e| survey_group(e, sigmas, limits))
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    };
    match thread_cap().and_then(|n| rayon::ThreadPoolBuilder::new().num_threads(n).build().ok()) {
        Some(pool) => pool.install(run),
        None => run(),
    }
}

/// The σ list used by the standard survey.
pub fn standard_sigmas() -> Vec<PrimePartition> {
    [
        "sigma1",
        "pi:{2,3}",
        "pi:{2,5}",
        "onepi:{2,3}",
        "classes:[{2,5,11}]",
    ]
    .iter()
    .map(|s| s.parse().expect("valid σ"))
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::build;

    #[test]
    fn s3_report() {
        let g = build("S(3)").unwrap();
        let sigma: PrimePartition = "pi:{2,3}".parse().unwrap();
        let r = verify_all("S(3)", &g, &sigma, &Limits::default());
        let ids: Vec<&str> = r.claims.iter().map(|c| c.id.as_str()).collect();
        assert_eq!(ids, CLAIM_IDS);
        assert!(!r.is_failing(), "{r:#?}");
        assert_eq!(r.claim("A").unwrap().subjects, 6);
        // every subgroup of S3 is modular and σ-subnormal for this σ
        assert_eq!(r.claim("C.i").unwrap().subjects, 6);
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn corollaries_skip_without_pi() {
        let g = build("C(4)").unwrap();
        let r = verify_all("C(4)", &g, &PrimePartition::sigma1(), &Limits::default());
        assert_eq!(r.claim("Cor1.3").unwrap().outcome, Outcome::Skipped);
        assert!(r.claim("Cor1.3").unwrap().reason.is_some());
        assert_eq!(r.claim("A").unwrap().outcome, Outcome::Verified);
    }

    #[test]
    fn oversized_groups_are_skipped() {
        let g = build("S(7)").unwrap();
        let r = verify_all("S(7)", &g, &PrimePartition::sigma1(), &Limits::default());
        assert_eq!(r.claims.len(), 18);
        assert!(r.claims.iter().all(|c| c.outcome == Outcome::Skipped));
    }

    #[test]
    fn pi_derivation() {
        let s: PrimePartition = "classes:[{2,5,11}]".parse().unwrap();
        assert_eq!(corollary_pi(&s), Some(vec![2, 5, 11]));
        assert_eq!(corollary_pi(&PrimePartition::sigma1()), None);
        let s: PrimePartition = "onepi:{2,3}".parse().unwrap();
        assert_eq!(corollary_pi(&s), Some(vec![2, 3]));
    }

    #[test]
    fn empty_survey() {
        assert!(survey(&[], &standard_sigmas(), &Limits::default()).is_empty());
    }
}
