mod common;

use std::collections::HashSet;

use common::*;
use weightsmith_core::arith::prime_divisors;
use weightsmith_core::chartab::product;
use weightsmith_core::group::{Caps, PermGroup};
use weightsmith_core::perm::Perm;
use weightsmith_core::section::Section;
use weightsmith_core::weights::{p_radical_subgroups, WeightSystem, WeightOrbit};

fn ws(g: &PermGroup, p: u64) -> WeightSystem {
    WeightSystem::new(g, p, g.exponent(), &Caps::default()).unwrap()
}

fn is_p_power(n: u64, p: u64) -> bool {
    let mut n = n;
    while n.is_multiple_of(p) {
        n /= p;
    }
    n == 1
}

/// p-regular classes counted directly from element orders.
fn pregular_oracle(g: &PermGroup, p: u64) -> usize {
    g.conjugacy_classes().iter().filter(|c| c.rep.order() % p != 0).count()
}

/// All p-subgroups of g grown from p-elements of g, without using a Sylow subgroup.
fn all_p_subgroups(g: &PermGroup, p: u64) -> Vec<PermGroup> {
    let pelts: Vec<Perm> = g.elements().iter().filter(|x| is_p_power(x.order(), p)).cloned().collect();
    let mut seen: HashSet<Vec<Perm>> = HashSet::new();
    let triv = PermGroup::trivial(g.degree());
    seen.insert(triv.elements().to_vec());
    let mut out = vec![triv];
    let mut k = 0;
    while k < out.len() {
        let s = out[k].clone();
        for x in &pelts {
            if s.contains(x) {
                continue;
            }
            let mut gens = s.gens().to_vec();
            gens.push(x.clone());
            let t = g.subgroup(gens).unwrap();
            if is_p_power(t.order(), p) && seen.insert(t.elements().to_vec()) {
                out.push(t);
            }
        }
        k += 1;
    }
    out
}

/// O_p(N) as the intersection of all Sylow p-subgroups of N.
fn p_core_oracle(n: &PermGroup, p: u64) -> u64 {
    let s = n.sylow(p).unwrap();
    let mut core: HashSet<Perm> = s.elements().iter().cloned().collect();
    for g in n.elements() {
        let conj: HashSet<Perm> = s.elements().iter().map(|x| x.conj(g)).collect();
        core.retain(|x| conj.contains(x));
    }
    core.len() as u64
}

fn radical_class_orders_oracle(g: &PermGroup, p: u64) -> Vec<u64> {
    let mut classes: Vec<PermGroup> = Vec::new();
    for q in all_p_subgroups(g, p) {
        let n = g.normalizer(&q);
        if p_core_oracle(&n, p) != q.order() {
            continue;
        }
        if !classes.iter().any(|c| g.conjugating_element(c, &q).is_some()) {
            classes.push(q);
        }
    }
    let mut orders: Vec<u64> = classes.iter().map(|c| c.order()).collect();
    orders.sort();
    orders
}

#[test]
fn radical_subgroup_examples() {
    let caps = Caps::default();
    let orders = |g: &PermGroup, p| -> Vec<u64> {
        p_radical_subgroups(g, p, &caps).unwrap().iter().map(|q| q.order()).collect()
    };
    assert_eq!(orders(&s4(), 2), vec![4, 8]);
    assert_eq!(orders(&a5(), 2), vec![1, 4]);
    assert_eq!(orders(&d8(), 2), vec![8]);
    assert_eq!(orders(&q8(), 2), vec![8]);
}

#[test]
fn radical_subgroups_match_oracle() {
    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let ours: Vec<u64> = p_radical_subgroups(&g, p, &Caps::default())
                .unwrap()
                .iter()
                .map(|q| q.order())
                .collect();
            assert_eq!(ours, radical_class_orders_oracle(&g, p), "{name} p={p}");
        }
    }
}

#[test]
fn weights_vanish_off_radical_subgroups() {
    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let w = ws(&g, p);
            let radicals = p_radical_subgroups(&g, p, &Caps::default()).unwrap();
            for (q, count) in w.weights_per_p_subgroup().unwrap() {
                let radical = radicals.iter().any(|r| r == &q);
                if count > 0 {
                    assert!(radical, "{name} p={p}");
                }
            }
        }
    }
}

#[test]
fn weight_orbit_examples() {
    let w = ws(&s3(), 2);
    let shape: Vec<(u64, u64)> = w
        .orbits
        .iter()
        .map(|o| (w.radical(o).q.order(), w.theta_degree(o)))
        .collect();
    assert_eq!(shape, vec![(1, 2), (2, 1)]);
    let w = ws(&s3(), 3);
    let shape: Vec<(u64, u64, usize)> = w
        .orbits
        .iter()
        .map(|o| (w.radical(o).q.order(), w.theta_degree(o), o.theta))
        .collect();
    assert_eq!(shape, vec![(3, 1, 0), (3, 1, 1)]);
    let w = ws(&s4(), 2);
    let shape: Vec<(u64, u64)> = w
        .orbits
        .iter()
        .map(|o| (w.radical(o).q.order(), w.theta_degree(o)))
        .collect();
    assert_eq!(shape, vec![(4, 2), (8, 1)]);
}

#[test]
fn alperin_spot_values() {
    let cases: Vec<(PermGroup, u64, usize)> = vec![
        (s3(), 2, 2),
        (s3(), 3, 2),
        (s4(), 2, 2),
        (s4(), 3, pregular_oracle(&s4(), 3)),
        (a5(), 2, 4),
        (a5(), 3, 4),
        (a5(), 5, 3),
        (s5(), 2, 3),
        (cyclic(5), 5, 1),
    ];
    for (g, p, expected) in cases {
        let r = ws(&g, p).alperin_check();
        assert_eq!(r.weights, expected);
        assert_eq!(r.pregular, expected);
        assert!(r.pass);
    }
    let r = ws(&s3(), 7).alperin_check();
    assert_eq!((r.weights, r.pregular, r.pass), (3, 3, true));
}

#[test]
fn alperin_and_blockwise_on_corpus() {
    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let w = ws(&g, p);
            let r = w.alperin_check();
            assert_eq!(r.pregular, pregular_oracle(&g, p), "{name} p={p}");
            assert!(r.pass, "{name} p={p}: {r:?}");
            let counts = w.blockwise_check().unwrap();
            assert!(counts.iter().all(|c| c.pass), "{name} p={p}: {counts:?}");
            let total: usize = counts.iter().map(|c| c.weights).sum();
            assert_eq!(total, w.orbits.len());
            let brauer: usize = counts.iter().map(|c| c.brauer).sum();
            assert_eq!(brauer, r.pregular);
        }
    }
}

#[test]
fn count_is_independent_of_sylow() {
    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let s = g.sylow(p).unwrap();
            let t = g.elements().iter().find(|t| s.conjugate(t) != s);
            let Some(t) = t else { continue };
            let other = s.conjugate(t);
            let a = ws(&g, p);
            let b = WeightSystem::with_sylow(&g, p, g.exponent(), &other, &Caps::default()).unwrap();
            assert_eq!(a.orbits, b.orbits, "{name} p={p}");
        }
    }
}

#[test]
fn block_of_weight_examples() {
    let w = ws(&s3(), 2);
    let b0 = w.block_of_weight(&w.orbits[0]).unwrap();
    let b1 = w.block_of_weight(&w.orbits[1]).unwrap();
    assert_eq!(w.blocks.blocks[b0].members, vec![2]);
    assert!(w.blocks.blocks[b1].is_principal);
    let w = ws(&d8(), 2);
    assert_eq!(w.orbits.len(), 1);
    assert_eq!(w.block_of_weight(&w.orbits[0]).unwrap(), 0);
}

#[test]
fn lin_action_examples_and_laws() {
    let w = ws(&s3(), 3);
    let t = w.group.table();
    assert_eq!(t.linear_pprime(3), vec![0, 1]);
    assert_eq!(w.lin_action(1, &w.orbits[0]).unwrap(), w.orbits[1]);
    assert_eq!(w.lin_action(1, &w.orbits[1]).unwrap(), w.orbits[0]);
    assert!(w.lin_action(0, &w.orbits[0]).is_ok());
    let w2 = ws(&s3(), 2);
    assert!(w2.lin_action(1, &w2.orbits[0]).is_err());

    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let w = ws(&g, p);
            let t = w.group.table();
            let lin = t.linear_pprime(p);
            for o in &w.orbits {
                assert_eq!(w.lin_action(0, o).unwrap(), *o);
                for &a in &lin {
                    for &b in &lin {
                        let ab = t.index_of(&product(t.chi(a), t.chi(b))).unwrap();
                        let lhs = w.lin_action(ab, o).unwrap();
                        let rhs = w.lin_action(a, &w.lin_action(b, o).unwrap()).unwrap();
                        assert_eq!(lhs, rhs, "{name}");
                    }
                    // block of the twisted weight is the twisted block
                    let twisted = w.lin_action(a, o).unwrap();
                    let b = w.block_of_weight(o).unwrap();
                    let member = w.blocks.blocks[b].members[0];
                    let moved = t.index_of(&product(t.chi(member), t.chi(a))).unwrap();
                    assert_eq!(w.block_of_weight(&twisted).unwrap(), w.blocks.block_of[moved]);
                }
            }
        }
    }
}

/// Acting on a conjugate copy of a weight then canonicalizing agrees with
/// acting on the canonical representative.
#[test]
fn lin_action_commutes_with_conjugation() {
    for g in [s3(), s4(), gl2_3()] {
        for p in prime_divisors(g.order()) {
            let w = ws(&g, p);
            let t = w.group.table();
            for o in &w.orbits {
                let r = w.radical(o);
                for x in g.elements().iter().step_by(5) {
                    let q2 = r.q.conjugate(x);
                    let sec2 = Section::new(&g.normalizer(&q2), &q2).unwrap();
                    // θ^x(y) = θ(x y x⁻¹)
                    let theta2 = sec2.pull(&r.section, w.theta(o), Some(x)).unwrap();
                    assert_eq!(w.canonicalize(&sec2, &theta2).unwrap(), Some(*o));
                    for &mu in &t.linear_pprime(p) {
                        let mu2 = sec2.pull(&w.group, t.chi(mu), None).unwrap();
                        let acted = product(&theta2, &mu2);
                        assert_eq!(
                            w.canonicalize(&sec2, &acted).unwrap(),
                            Some(w.lin_action(mu, o).unwrap())
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn alp_over_central_partitions() {
    let g = sl2_3();
    let z = Section::whole(&g.center()).unwrap();
    let w = ws(&g, 3);
    let a = w.alp_over_central(&z, 0).unwrap();
    let b = w.alp_over_central(&z, 1).unwrap();
    assert!(a.iter().all(|i| !b.contains(i)));
    assert_eq!(a.len() + b.len(), w.orbits.len());
    assert!(!b.is_empty());
    let w = ws(&g, 2);
    assert_eq!(w.alp_over_central(&z, 0).unwrap().len(), w.orbits.len());
    assert!(w.alp_over_central(&z, 1).is_err());
    let g = s4();
    let z = Section::whole(&g.center()).unwrap();
    let w = ws(&g, 2);
    assert_eq!(w.alp_over_central(&z, 0).unwrap().len(), w.orbits.len());
}

#[test]
fn orbit_sizes_divide_group_order() {
    for (_, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let w = ws(&g, p);
            for o in &w.orbits {
                assert_eq!(g.order() % w.orbit_size(o), 0);
            }
            let _: Vec<WeightOrbit> = w.orbits.clone();
        }
    }
}
