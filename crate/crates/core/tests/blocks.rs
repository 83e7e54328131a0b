mod common;

use common::*;
use weightsmith_core::blocks::{
    block_central_pprime_character, block_distribution, block_induction, covers, l_count,
    pregular_class_count, BlockSystem,
};
use weightsmith_core::arith::prime_divisors;
use weightsmith_core::chartab::class_multiplication;
use weightsmith_core::cyclotomic::Cyclotomic;
use weightsmith_core::ffield::FpEmbedding;
use weightsmith_core::group::PermGroup;
use weightsmith_core::section::Section;

fn blocks_of(sec: &Section, p: u64, master: u64) -> BlockSystem {
    let emb = FpEmbedding::new(p, master).unwrap();
    block_distribution(sec.table(), p, &emb).unwrap()
}

fn whole(g: &PermGroup) -> Section {
    Section::whole(g).unwrap()
}

/// Osima: blocks are the components of the graph joining χ and ψ whenever
/// Σ over p-regular elements of χ(g)·conj(ψ(g)) is nonzero.
fn osima_blocks(sec: &Section, p: u64) -> Vec<Vec<usize>> {
    let t = sec.table();
    let n = t.irr().len();
    let reg = t.pregular_classes(p);
    let mut comp: Vec<usize> = (0..n).collect();
    fn find(c: &mut Vec<usize>, x: usize) -> usize {
        if c[x] != x {
            let r = find(c, c[x]);
            c[x] = r;
        }
        c[x]
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut s = Cyclotomic::zero(1);
            for &c in &reg {
                s = &s + &(&t.chi(i)[c] * &t.chi(j)[c].conj()).scale(t.classes()[c].size as i64);
            }
            if !s.is_zero() {
                let (a, b) = (find(&mut comp, i), find(&mut comp, j));
                comp[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut label: Vec<Option<usize>> = vec![None; n];
    for i in 0..n {
        let r = find(&mut comp, i);
        match label[r] {
            Some(g) => groups[g].push(i),
            None => {
                label[r] = Some(groups.len());
                groups.push(vec![i]);
            }
        }
    }
    groups
}

#[test]
fn distribution_matches_osima_oracle() {
    for (name, g) in corpus() {
        let sec = whole(&g);
        for p in prime_divisors(g.order()) {
            let bs = blocks_of(&sec, p, g.exponent());
            let ours: Vec<Vec<usize>> = bs.blocks.iter().map(|b| b.members.clone()).collect();
            assert_eq!(ours, osima_blocks(&sec, p), "{name} p={p}");
        }
    }
}

#[test]
fn s3_examples() {
    let sec = whole(&s3());
    let bs = blocks_of(&sec, 3, 6);
    assert_eq!(bs.blocks.len(), 1);
    assert_eq!(bs.blocks[0].members, vec![0, 1, 2]);
    assert_eq!(bs.blocks[0].defect, 1);
    assert_eq!(bs.blocks[0].defect_group.order(), 3);
    let bs = blocks_of(&sec, 2, 6);
    assert_eq!(bs.blocks.len(), 2);
    assert_eq!(bs.blocks[0].members, vec![0, 1]);
    assert!(bs.blocks[0].is_principal);
    assert_eq!(bs.blocks[0].defect, 1);
    assert_eq!(bs.blocks[1].members, vec![2]);
    assert_eq!(bs.blocks[1].defect, 0);
    assert!(bs.blocks[1].defect_group.is_trivial());
    assert_eq!(l_count(sec.table(), &bs.blocks[0]).unwrap(), 1);
    let bs = blocks_of(&sec, 5, 6);
    assert_eq!(bs.blocks.len(), 3);
    assert!(bs.blocks.iter().all(|b| b.defect == 0 && b.members.len() == 1));
}

#[test]
fn block_invariants_on_corpus() {
    for (name, g) in corpus() {
        let sec = whole(&g);
        let t = sec.table();
        let cm = class_multiplication(&g);
        for p in prime_divisors(g.order()) {
            let bs = blocks_of(&sec, p, g.exponent());
            let emb = &bs.embedding;
            let mut total = 0;
            for b in &bs.blocks {
                let dmax = b.members.iter().map(|&c| t.defect(c, p)).max().unwrap();
                assert_eq!(b.defect, dmax);
                assert_eq!(b.defect_group.order(), p.pow(b.defect), "{name}");
                assert!(b.defect_group.is_subgroup_of(&g));
                if b.is_principal {
                    assert_eq!(b.defect_group.order(), t.order_p_part(p));
                }
                let l = l_count(t, b).unwrap();
                if b.defect == 0 {
                    assert_eq!(l, 1);
                }
                total += l;
                let reg = &bs.pregular;
                for &a in reg {
                    for &c2 in reg {
                        let lhs = emb.mul(b.lambda[a], b.lambda[c2]);
                        let mut rhs = 0;
                        for &c in reg {
                            let m = emb.from_int(cm.get(a, c2, c) as i64);
                            rhs = emb.add(rhs, emb.mul(m, b.lambda[c]));
                        }
                        assert_eq!(lhs, rhs, "{name} p={p}");
                    }
                }
            }
            assert_eq!(total, pregular_class_count(t, p), "{name} p={p}");
        }
    }
}

#[test]
fn pregular_counts() {
    assert_eq!(pregular_class_count(whole(&a5()).table(), 2), 4);
    assert_eq!(pregular_class_count(whole(&s5()).table(), 2), 3);
    assert_eq!(pregular_class_count(whole(&s3()).table(), 7), 3);
}

#[test]
fn induction_examples() {
    let g = s3();
    let sg = whole(&g);
    let bg = blocks_of(&sg, 2, 6);
    let h = sub(&g, &["(1 2)"]);
    let sh = whole(&h);
    let bh = blocks_of(&sh, 2, 6);
    assert_eq!(bh.blocks.len(), 1);
    let ind = block_induction(&sh, &bh.blocks[0], &sg, &bg).unwrap();
    assert_eq!(ind, Some(bg.block_of[0]));
    for (i, b) in bg.blocks.iter().enumerate() {
        assert_eq!(block_induction(&sg, b, &sg, &bg).unwrap(), Some(i));
    }
}

/// Brauer's third main theorem on N_G(P) and transitivity through an
/// intermediate subgroup.
#[test]
fn induction_from_sylow_normalizers() {
    for (name, g) in corpus() {
        for p in prime_divisors(g.order()) {
            let e = g.exponent();
            let sg = whole(&g);
            let bg = blocks_of(&sg, p, e);
            let sylow = g.sylow(p).unwrap();
            let n = g.normalizer(&sylow);
            let sn = whole(&n);
            let bn = blocks_of(&sn, p, e);
            for b in &bn.blocks {
                let ind = block_induction(&sn, b, &sg, &bg).unwrap();
                if b.is_principal {
                    assert_eq!(ind, Some(bg.block_of[0]), "{name} p={p}");
                } else if let Some(i) = ind {
                    assert!(!bg.blocks[i].is_principal, "{name} p={p}");
                }
            }
            let c = g.centralizer_of(&sylow).join(&sylow, 1 << 20).unwrap();
            let sc = whole(&c);
            let bc = blocks_of(&sc, p, e);
            for b in &bc.blocks {
                let direct = block_induction(&sc, b, &sg, &bg).unwrap();
                if let Some(mid) = block_induction(&sc, b, &sn, &bn).unwrap() {
                    let two_step = block_induction(&sn, &bn.blocks[mid], &sg, &bg).unwrap();
                    assert_eq!(direct, two_step, "{name} p={p}");
                }
            }
        }
    }
}

#[test]
fn covering_examples() {
    let pairs = vec![(s3(), a3()), (s4(), a4()), (s5(), a5()), (gl2_3(), sl2_3())];
    for (gt, g) in pairs {
        let st = whole(&gt);
        let sg = whole(&g);
        for p in prime_divisors(gt.order()) {
            let e = gt.exponent();
            let bt = blocks_of(&st, p, e);
            let bg = blocks_of(&sg, p, e);
            assert!(covers(&st, bt.principal(), &sg, bg.principal()).unwrap());
            for b in &bt.blocks {
                let covered: Vec<usize> = (0..bg.blocks.len())
                    .filter(|&i| covers(&st, b, &sg, &bg.blocks[i]).unwrap())
                    .collect();
                assert!(!covered.is_empty());
                // covered blocks form one orbit under conjugation by gt
                let first = &bg.blocks[covered[0]];
                let orbit: Vec<usize> = gt
                    .elements()
                    .iter()
                    .map(|t| {
                        let f = sg.pull(&sg, sg.chi(first.members[0]), Some(t)).unwrap();
                        bg.block_of[sg.index_of(&f).unwrap()]
                    })
                    .collect();
                let mut orbit_set = orbit.clone();
                orbit_set.sort();
                orbit_set.dedup();
                assert_eq!(orbit_set, covered);
            }
        }
    }
    let st = whole(&s3());
    let sa = whole(&a3());
    let bt = blocks_of(&st, 3, 6);
    let ba = blocks_of(&sa, 3, 6);
    assert_eq!((bt.blocks.len(), ba.blocks.len()), (1, 1));
    assert!(covers(&st, &bt.blocks[0], &sa, &ba.blocks[0]).unwrap());
    let bs = blocks_of(&st, 2, 6);
    assert!(!covers(&st, &bs.blocks[1], &st, &bs.blocks[0]).unwrap());
    assert!(covers(&st, &bs.blocks[1], &st, &bs.blocks[1]).unwrap());
}

#[test]
fn central_pprime_characters() {
    let g = sl2_3();
    let sec = whole(&g);
    let z = whole(&g.center());
    assert_eq!(z.order(), 2);
    let bs = blocks_of(&sec, 3, g.exponent());
    for b in &bs.blocks {
        let nu = block_central_pprime_character(&sec, b, &z).unwrap();
        if b.is_principal {
            assert_eq!(nu, 0);
        }
        let faithful = b.members.iter().any(|&c| {
            sec.table().degree(c) == 2
        });
        assert_eq!(nu == 1, faithful);
    }
    // p = 2: the central character has 2-power order, so its p'-part is trivial
    let bs = blocks_of(&sec, 2, g.exponent());
    for b in &bs.blocks {
        assert_eq!(block_central_pprime_character(&sec, b, &z).unwrap(), 0);
    }
    let s = whole(&s3());
    let trivial = whole(&PermGroup::trivial(3));
    let bs = blocks_of(&s, 2, 6);
    for b in &bs.blocks {
        assert_eq!(block_central_pprime_character(&s, b, &trivial).unwrap(), 0);
    }
}
