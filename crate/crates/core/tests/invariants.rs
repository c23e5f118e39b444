use std::collections::BTreeSet;

use proptest::prelude::*;
use sigma_forge::arith::ClassId;
use sigma_forge::catalog::{build, example12_analog, standard_suite, GroupExpr};
use sigma_forge::chief::{
    chief_factor_centralizer, chief_series_descending, chief_series_through, is_p_group_of_type,
    p_group_structure, schmidt_decomposition, verify_schmidt,
};
use sigma_forge::harness::{standard_sigmas, GroupAnalysis, Outcome};
use sigma_forge::lattice::NormalLattice;
use sigma_forge::predicates::{
    is_modular, is_quasinormal, is_quasinormal_by_lattice, refute_modular, SigmaSubnormality,
};
use sigma_forge::subgroup::{core, is_subnormal, normal_closure};
use sigma_forge::{Error, FiniteGroup, Lattice, Limits, PrimePartition, RemainderPolicy, Subgroup};

fn small_suite() -> Vec<(GroupExpr, FiniteGroup)> {
    standard_suite()
        .into_iter()
        .filter(|(_, g)| g.order() <= 100)
        .collect()
}

#[test]
fn sigma1_subnormality_is_subnormality() {
    let s1 = PrimePartition::sigma1();
    for (e, g) in standard_suite() {
        let l = Lattice::build(&g).unwrap();
        let reach = SigmaSubnormality::new(&l, &s1).reach(l.top(), None);
        for (i, a) in l.subgroups().iter().enumerate() {
            assert_eq!(reach.contains(i), is_subnormal(&g, a), "{e}");
        }
    }
}

#[test]
fn quasinormality_by_cyclic_reduction_matches_lattice() {
    for (e, g) in small_suite() {
        let l = Lattice::build(&g).unwrap();
        for a in l.subgroups() {
            let q = is_quasinormal(&g, a).unwrap();
            assert_eq!(q, is_quasinormal_by_lattice(&l, a).unwrap(), "{e}");
            if q {
                assert!(
                    is_modular(&l, a).unwrap(),
                    "{e}: quasinormal but not modular"
                );
            }
        }
    }
}

#[test]
fn refutation_is_sound() {
    for (e, g) in small_suite() {
        let l = Lattice::build(&g).unwrap();
        for a in l.subgroups() {
            if refute_modular(&g, a, 10_000).unwrap().is_some() {
                assert!(!is_modular(&l, a).unwrap(), "{e}");
            }
        }
    }
}

#[test]
fn chief_series_are_valid_and_stable() {
    for (e, g) in standard_suite() {
        let l = Lattice::build(&g).unwrap();
        let nl = NormalLattice::from_lattice(&l);
        assert_eq!(
            nl.subgroups(),
            NormalLattice::build(&g).unwrap().subgroups(),
            "{e}"
        );
        for a in l.subgroups() {
            let anchors = [core(&g, a), normal_closure(&g, a)];
            let up = chief_series_through(&nl, &anchors).unwrap();
            let down = chief_series_descending(&nl, &anchors).unwrap();
            for fs in [&up, &down] {
                assert!(fs.iter().all(|f| f.is_valid(&nl)), "{e}");
                assert_eq!(
                    fs.iter().map(|f| f.order()).product::<usize>(),
                    g.order(),
                    "{e}"
                );
                for anchor in &anchors {
                    assert!(
                        anchor.is_trivial() || fs.iter().any(|f| f.upper() == anchor),
                        "{e}: anchor missing"
                    );
                }
            }
            let profile = |fs: &[sigma_forge::chief::ChiefFactor]| {
                let mut v: Vec<(usize, usize)> = fs
                    .iter()
                    .map(|f| (f.order(), chief_factor_centralizer(&g, f).order()))
                    .collect();
                v.sort();
                v
            };
            assert_eq!(profile(&up), profile(&down), "{e}");
        }
    }
}

#[test]
fn chief_series_rejects_non_chains() {
    let g = build("S(4)").unwrap();
    let l = Lattice::build(&g).unwrap();
    let nl = NormalLattice::from_lattice(&l);
    let v4 = nl
        .subgroups()
        .iter()
        .find(|n| n.order() == 4)
        .unwrap()
        .clone();
    let a4 = nl
        .subgroups()
        .iter()
        .find(|n| n.order() == 12)
        .unwrap()
        .clone();
    assert!(chief_series_through(&nl, &[a4.clone(), v4.clone()]).is_err());
    let orders: Vec<usize> = chief_series_through(&nl, &[v4])
        .unwrap()
        .iter()
        .map(|f| f.order())
        .collect();
    assert_eq!(orders, vec![4, 3, 2]);
}

#[test]
fn analog_chief_factors_and_centralizers() {
    let ex = example12_analog();
    let g = &ex.group;
    let nl = NormalLattice::build(g).unwrap();
    let hi = normal_closure(g, &ex.a);
    let fs = chief_series_through(&nl, &[Subgroup::trivial(g), hi]).unwrap();
    assert_eq!(fs[0].order(), 11);
    assert_eq!(chief_factor_centralizer(g, &fs[0]).order(), 132);
    assert_eq!(fs[1].order(), 5);
}

#[test]
fn schmidt_decompositions_exist_for_modular_core_free_subgroups() {
    let mut found = 0;
    for (e, g) in standard_suite() {
        let l = Lattice::build(&g).unwrap();
        for m in l.subgroups() {
            if !core(&g, m).is_trivial() || !is_modular(&l, m).unwrap() {
                continue;
            }
            let d = schmidt_decomposition(&l, m).unwrap_or_else(|err| panic!("{e}: {err}"));
            assert!(verify_schmidt(&g, m, &d).unwrap(), "{e}");
            found += 1;
        }
    }
    assert!(found > 0);
}

#[test]
fn schmidt_on_the_analog() {
    let ex = example12_analog();
    let g = &ex.group;
    let l = Lattice::build(g).unwrap();
    let d = schmidt_decomposition(&l, &ex.a).unwrap();
    assert_eq!(d.factors.len(), 1);
    assert_eq!(d.factors[0].order(), 55);
    assert_eq!(d.complement.order(), 12);
    assert_eq!(d.sylows[0], ex.a);
    assert!(Subgroup::meet(g, &ex.a, &d.complement)
        .unwrap()
        .is_trivial());
    assert!(matches!(
        schmidt_decomposition(&l, &ex.b),
        Err(Error::Domain(_))
    ));
}

#[test]
fn p_group_recognition_on_suite() {
    for (e, g) in standard_suite() {
        if let Some(ty) = p_group_structure(&g, &Subgroup::whole(&g)) {
            let t = Subgroup::generated(&g, &[ty.t]);
            assert!(normal_closure(&g, &t).is_whole(&g), "{e}");
            assert_ne!(ty.e % ty.p, 1);
        }
    }
    for (s, want) in [
        ("S(3)", Some((3, 2))),
        ("SDC(5,2,4)", Some((5, 2))),
        ("D(10)", Some((5, 2))),
        ("D(8)", None),
        ("A(5)", None),
    ] {
        assert_eq!(is_p_group_of_type(&build(s).unwrap()), want, "{s}");
    }
}

// The chain link may be read as "σ-primary quotient over the core" or as
// "σ-nilpotent quotient over the core"; on the suite both readings give the
// same σ-subnormal subgroups.
#[test]
fn primary_and_nilpotent_links_agree() {
    use sigma_forge::predicates::is_sigma_nilpotent;
    use sigma_forge::quotient_group;
    use sigma_forge::subgroup::core_in;
    for (e, g) in small_suite() {
        let l = Lattice::build(&g).unwrap();
        for s in standard_sigmas() {
            let reach = SigmaSubnormality::new(&l, &s).reach(l.top(), None);
            let n = l.len();
            let mut alt = vec![false; n];
            alt[l.top()] = true;
            for b in (0..n).rev() {
                if alt[b] {
                    continue;
                }
                alt[b] = l
                    .poset()
                    .up(b)
                    .iter()
                    .filter(|&c| c != b && alt[c])
                    .any(|c| {
                        let (bb, cc) = (l.get(b), l.get(c));
                        if bb.is_normal_in(&g, cc) {
                            return true;
                        }
                        let (h, emb) = g.restrict_to(cc).unwrap();
                        let k = core_in(&g, cc, bb);
                        let members = sigma_forge::BitSet::from_indices(
                            h.order(),
                            (0..h.order()).filter(|&x| k.contains(emb[x])),
                        );
                        let k_in_h = Subgroup::from_members(&h, members);
                        let (q, _) = quotient_group(&h, &k_in_h).unwrap();
                        is_sigma_nilpotent(&q, &s)
                    });
            }
            for (i, &a) in alt.iter().enumerate() {
                assert_eq!(reach.contains(i), a, "{e} {s}");
            }
        }
    }
}

fn sigma_strategy() -> impl Strategy<Value = PrimePartition> {
    let primes = [2u64, 3, 5, 7, 11];
    (proptest::collection::vec(0usize..4, 5), any::<bool>()).prop_map(move |(labels, singles)| {
        let mut classes: Vec<BTreeSet<u64>> = vec![BTreeSet::new(); 3];
        for (p, l) in primes.iter().zip(labels) {
            if l < 3 {
                classes[l].insert(*p);
            }
        }
        classes.retain(|c| !c.is_empty());
        let policy = if singles {
            RemainderPolicy::Singletons
        } else {
            RemainderPolicy::Complement
        };
        PrimePartition::new(classes, policy).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn theorems_hold_for_random_partitions(sigma in sigma_strategy(), gi in 0usize..19) {
        let suite = small_suite();
        let (e, g) = &suite[gi % suite.len()];
        let an = GroupAnalysis::new(e.to_string(), g, &Limits::default()).unwrap();
        let report = an.report(&sigma);
        for c in &report.claims {
            prop_assert_ne!(c.outcome, Outcome::Violated, "{} {} {}: {:?}", e, sigma, c.id, c.reason);
        }
    }

    #[test]
    fn generated_subgroups_lie_in_the_lattice(seed in proptest::collection::vec(0usize..24, 0..4)) {
        let g = build("S(4)").unwrap();
        let l = Lattice::build(&g).unwrap();
        let h = Subgroup::generated(&g, &seed);
        let i = l.index_of(&h).unwrap();
        for &x in &seed {
            prop_assert!(l.get(i).contains(x));
        }
        let c = core(&g, &h);
        let n = normal_closure(&g, &h);
        prop_assert!(c.is_subgroup_of(&h) && h.is_subgroup_of(&n));
        prop_assert!(c.is_normal(&g) && n.is_normal(&g));
    }

    #[test]
    fn sigma_subnormality_passes_to_intersections(sigma in sigma_strategy()) {
        let g = build("S(4)").unwrap();
        let l = Lattice::build(&g).unwrap();
        let search = SigmaSubnormality::new(&l, &sigma);
        let top = search.reach(l.top(), None);
        for b in 0..l.len() {
            let rb = search.reach(b, None);
            for a in top.members().iter() {
                prop_assert!(rb.contains(l.meet(a, b)));
            }
        }
    }
}

#[test]
fn hall_subgroups_of_the_analog() {
    let ex = example12_analog();
    let l = Lattice::build(&ex.group).unwrap();
    let halls = l.hall_subgroups(ClassId::Explicit(0), &ex.sigma).unwrap();
    assert!(!halls.is_empty());
    assert!(halls.iter().all(|h| h.order() == 220));
    assert_eq!(l.sylow_subgroups(11).unwrap().len(), 1);
}

#[test]
#[ignore = "builds a group of order 51030; run with --ignored"]
fn full_size_modular_example() {
    use sigma_forge::catalog::example12_full;
    use sigma_forge::predicates::{step_ok, verify_sigma_chain, SigmaChain};
    let ex = example12_full().unwrap();
    let g = &ex.group;
    assert_eq!(g.order(), 51030);
    assert_eq!(g.degree(), Some(734));
    assert_eq!(ex.a.order(), 2);
    let hi = normal_closure(g, &ex.a);
    assert_eq!(hi.order(), 10);
    assert!(core(g, &ex.a).is_trivial());
    assert!(!is_subnormal(g, &ex.a));
    let whole = Subgroup::whole(g);
    let chain = SigmaChain::new(vec![ex.a.clone(), hi.clone(), whole.clone()]).unwrap();
    assert!(verify_sigma_chain(g, &chain, &ex.sigma).unwrap());
    assert!(!step_ok(g, &ex.a, &whole, &ex.sigma).unwrap());
    assert_eq!(ex.b.order(), 3);
    assert!(!is_quasinormal(g, &ex.a).unwrap());
}
