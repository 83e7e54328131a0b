mod common;

use std::collections::BTreeSet;

use common::*;
use weightsmith_core::arith::prime_divisors;
use weightsmith_core::clifford::{rdz, DgnOutcome, NormalPair, Verdict};
use weightsmith_core::group::{Caps, PermGroup};
use weightsmith_core::hom::AutAction;
use weightsmith_core::perm::Perm;
use weightsmith_core::section::Section;
use weightsmith_core::weights::WeightOrbit;

fn pair(gt: &PermGroup, g: &PermGroup, p: u64) -> NormalPair {
    NormalPair::new(gt, g, p, &Caps::default()).unwrap()
}

fn pairs() -> Vec<(&'static str, PermGroup, PermGroup)> {
    vec![
        ("A3<S3", s3(), a3()),
        ("A4<S4", s4(), a4()),
        ("A5<S5", s5(), a5()),
        ("SL2(3)<GL2(3)", gl2_3(), sl2_3()),
    ]
}

fn is_trivial_theta(pr: &NormalPair, w: &WeightOrbit) -> bool {
    pr.small.theta(w).iter().all(|v| v.as_integer() == Some(1))
}

#[test]
fn a3_in_s3_covering() {
    let pr = pair(&s3(), &a3(), 2);
    assert_eq!(pr.small.orbits.len(), 3);
    assert_eq!(pr.big.orbits.len(), 2);
    assert_eq!(pr.gt_orbits.len(), 2);
    let sizes: BTreeSet<usize> = pr.gt_orbits.iter().map(|o| o.len()).collect();
    assert_eq!(sizes, [1, 2].into());
    for (i, wt) in pr.big.orbits.iter().enumerate() {
        let rec = pr.cover_record(wt).unwrap();
        let q_order = pr.big.radical(wt).q.order();
        let trivial = pr.small.orbits.iter().position(|w| is_trivial_theta(&pr, w)).unwrap();
        if q_order == 2 {
            // (C2, 1) covers (1, 1)
            assert_eq!(rec.members, vec![trivial]);
        } else {
            // (1, χ2) covers (1, ω) and (1, ω̄)
            assert_eq!(pr.big.theta_degree(wt), 2);
            assert_eq!(rec.members.len(), 2);
            assert!(!rec.members.contains(&trivial));
        }
        assert_eq!(rec.covering, i);
        assert!(pr.blocks_consistent(&rec).unwrap());
    }
}

#[test]
fn rdz_in_s3() {
    let s3s = Section::whole(&s3()).unwrap();
    let a3s = Section::whole(&a3()).unwrap();
    let t = a3s.table();
    for i in 0..3 {
        let out = rdz(&s3s, &a3s, t.chi(i), 2).unwrap();
        if t.chi(i).iter().all(|v| v.as_integer() == Some(1)) {
            assert!(out.is_empty());
        } else {
            assert_eq!(out.len(), 1);
            assert_eq!(s3s.table().degree(out[0]), 2);
        }
        // p ∤ |S3 : A3|
        let all = rdz(&s3s, &a3s, t.chi(i), 3).unwrap();
        assert_eq!(all, s3s.irr_over(&a3s, t.chi(i)).unwrap());
    }
}

#[test]
fn dgn_in_s3() {
    let pr = pair(&s3(), &a3(), 2);
    let c2 = sub(&s3(), &["(1 2)"]);
    let frame = pr.frame_for(&c2).unwrap();
    assert!(frame.complement && frame.direct_product);
    assert_eq!(frame.m_sec.order(), 6);
    assert_eq!(frame.c_sec.order(), 1);
    let one = frame.n_sec.table().trivial_character();
    let DgnOutcome::Found(res) = frame.correspond(&one).unwrap() else {
        panic!("trivial character has a correspondent");
    };
    assert_eq!(frame.c_sec.chi(res.pi)[0].as_integer(), Some(1));
    assert!(frame.m_blocks.blocks[res.b].is_principal);
    // ω is not invariant under C2
    let omega = (0..3).find(|&i| frame.n_sec.chi(i) != &one).unwrap();
    assert!(matches!(
        frame.correspond(frame.n_sec.chi(omega)).unwrap(),
        DgnOutcome::NotInvariant
    ));
    let trivial_w = *pr.small.orbits.iter().find(|w| is_trivial_theta(&pr, w)).unwrap();
    let report = pr.delta_theta_checks(&trivial_w, &c2).unwrap().unwrap();
    assert_eq!((report.rdz_count, report.dz_count), (1, 1));
    assert!(report.pass);
}

#[test]
fn d_trivial_is_degenerate() {
    let pr = pair(&s3(), &a3(), 2);
    let one = PermGroup::trivial(3);
    let frame = pr.frame_for(&one).unwrap();
    for theta in frame.n_sec.dz(2) {
        let chi = frame.n_sec.chi(theta);
        let DgnOutcome::Found(res) = frame.correspond(chi).unwrap() else {
            panic!("D = 1 always corresponds");
        };
        assert_eq!(&frame.c_sec.pull(&frame.n_sec, chi, None).unwrap(), frame.c_sec.chi(res.pi));
    }
}

#[test]
fn corpus_partition_and_lemmas() {
    for (name, gt, g) in pairs() {
        for p in prime_divisors(gt.order()) {
            let pr = pair(&gt, &g, p);
            let records = pr.clifford_partition().unwrap();
            let fibers = NormalPair::fibers(&records, pr.gt_orbits.len());
            assert!(fibers.iter().all(|f| !f.is_empty()), "{name} p={p}: empty fiber");
            let total: usize = fibers.iter().map(|f| f.len()).sum();
            assert_eq!(total, pr.big.orbits.len());
            for rec in &records {
                assert!(pr.blocks_consistent(rec).unwrap(), "{name} p={p}");
            }
            let hyp = pr.check_hypothesis().unwrap();
            assert!(hyp.weights_extend && hyp.constituents_extend, "{name} p={p}: {hyp:?}");
            let pi = pr.pi_bijection(&records).unwrap();
            assert!(pi.bijective(), "{name} p={p}: {pi:?}");
            for rec in &records {
                let jg = pr.stabilizer_formula_check(rec, &records).unwrap();
                assert!(jg.fiber_is_orbit && jg.formula_holds, "{name} p={p}: {jg:?}");
            }
        }
    }
}

#[test]
fn corpus_delta_checks() {
    for (name, gt, g) in pairs() {
        for p in prime_divisors(gt.order()) {
            let pr = pair(&gt, &g, p);
            let reports = pr.delta_all().unwrap();
            assert!(!reports.is_empty());
            for r in reports {
                assert!(r.pass, "{name} p={p}: {r:?}");
            }
        }
    }
}


#[test]
fn trivial_extension_is_identity() {
    for g in [s3(), a4()] {
        for p in prime_divisors(g.order()) {
            let pr = pair(&g, &g, p);
            assert_eq!(pr.gt_orbits.len(), pr.small.orbits.len());
            let records = pr.clifford_partition().unwrap();
            for rec in &records {
                assert_eq!(rec.members, vec![rec.covering]);
                assert_eq!(pr.jg_weight(rec).unwrap(), g);
            }
        }
    }
}

#[test]
fn jg_is_everything_for_pprime_quotient() {
    let pr = pair(&s3(), &a3(), 3);
    for rec in pr.clifford_partition().unwrap() {
        assert_eq!(pr.jg_weight(&rec).unwrap().order(), 6);
    }
}

#[test]
fn covering_commutes_with_conjugation() {
    for (name, gt, g) in pairs() {
        for p in prime_divisors(gt.order()) {
            let pr = pair(&gt, &g, p);
            for wt in &pr.big.orbits {
                let rt = pr.big.radical(wt);
                let (frame, covered, _, _) = pr.covered_characters(wt).unwrap();
                for x in gt.gens() {
                    let qx = rt.q.conjugate(x);
                    let sec_x = Section::new(&rt.normalizer.conjugate(x), &qx).unwrap();
                    let theta_x = sec_x.pull(&rt.section, pr.big.theta(wt), Some(x)).unwrap();
                    let (frame_x, covered_x, _, _) = pr.covered_by(&sec_x, &theta_x).unwrap();
                    let moved: BTreeSet<usize> = covered
                        .iter()
                        .map(|&t| {
                            let f = frame_x.n_sec.pull(&frame.n_sec, frame.n_sec.chi(t), Some(x)).unwrap();
                            frame_x.n_sec.index_of(&f).unwrap()
                        })
                        .collect();
                    assert_eq!(moved, covered_x.into_iter().collect(), "{name} p={p}");
                }
            }
        }
    }
}

#[test]
fn correspondent_is_equivariant() {
    for (name, gt, g) in pairs() {
        for p in prime_divisors(gt.order()) {
            let pr = pair(&gt, &g, p);
            for wt in &pr.big.orbits {
                let frame = pr.frame_for(&pr.big.radical(wt).q).unwrap();
                let acting = gt.normalizer(&frame.q).intersection(&gt.normalizer(&frame.qt));
                for theta in frame.n_sec.dz(p) {
                    let chi = frame.n_sec.chi(theta);
                    let DgnOutcome::Found(res) = frame.correspond(chi).unwrap() else {
                        continue;
                    };
                    for t in acting.gens() {
                        let moved = frame.n_sec.pull(&frame.n_sec, chi, Some(t)).unwrap();
                        let DgnOutcome::Found(res_t) = frame.correspond(&moved).unwrap() else {
                            panic!("{name} p={p}: conjugate lost its correspondent");
                        };
                        let pi_t = frame.c_sec.pull(&frame.c_sec, frame.c_sec.chi(res.pi), Some(t)).unwrap();
                        assert_eq!(&pi_t, frame.c_sec.chi(res_t.pi), "{name} p={p}");
                    }
                }
            }
        }
    }
}

#[test]
fn audit_with_trivial_action() {
    let pr = pair(&s3(), &a3(), 2);
    let report = pr.criterion_audit().unwrap();
    let verdict = |id: &str| report.conditions.iter().find(|c| c.condition == id).unwrap().verdict;
    assert_eq!(verdict("i.derived"), Verdict::Pass);
    assert_eq!(verdict("ii.a"), Verdict::Pass);
    assert_eq!(verdict("iv"), Verdict::Pass);
    assert_eq!(verdict("iii"), Verdict::Unverified);
    assert_eq!(report.e_order, 1);

    let pr = pair(&gl2_3(), &sl2_3(), 2);
    let report = pr.criterion_audit().unwrap();
    for c in &report.conditions {
        assert_ne!(c.verdict, Verdict::Fail, "{c:?}");
    }
}

#[test]
fn audit_with_outer_action() {
    let a5 = a5();
    let t = Perm::parse(5, "(1 2)").unwrap();
    let images = a5.gens().iter().map(|x| x.conj(&t)).collect();
    let action = AutAction::new(a5.clone(), vec![vec![0, 1], vec![1, 0]], vec![(1, images)]).unwrap();
    for p in [2, 3, 5] {
        let pr = NormalPair::with_action(&a5, &a5, p, Some(&action), &Caps::default()).unwrap();
        assert_eq!(pr.e.order(), 2);
        assert_eq!(pr.ambient.order(), 120);
        let report = pr.criterion_audit().unwrap();
        for c in &report.conditions {
            assert_ne!(c.verdict, Verdict::Fail, "p={p}: {c:?}");
        }
    }
}

#[test]
fn audit_reports_failures() {
    let c6 = cyclic(6);
    let c3 = sub(&c6, &["(1 3 5)(2 4 6)"]);
    let report = pair(&c6, &c3, 2).criterion_audit().unwrap();
    let derived = report.conditions.iter().find(|c| c.condition == "i.derived").unwrap();
    assert_eq!(derived.verdict, Verdict::Fail);
    assert_eq!(report.overall(), Verdict::Fail);
}
