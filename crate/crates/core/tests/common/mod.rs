#![allow(dead_code)]

use weightsmith_core::group::{PermGroup, DEFAULT_MAX_ORDER};
use weightsmith_core::perm::Perm;

pub fn group(degree: usize, gens: &[&str]) -> PermGroup {
    let gens = gens.iter().map(|s| Perm::parse(degree, s).unwrap()).collect();
    PermGroup::new(degree, gens, DEFAULT_MAX_ORDER).unwrap()
}

pub fn sub(g: &PermGroup, gens: &[&str]) -> PermGroup {
    let gens = gens.iter().map(|s| Perm::parse(g.degree(), s).unwrap()).collect();
    g.subgroup(gens).unwrap()
}

pub fn cyclic(n: usize) -> PermGroup {
    let cyc: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(n, &[&format!("({})", cyc.join(" "))])
}

pub fn symmetric(n: usize) -> PermGroup {
    let cyc: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    group(n, &[&format!("({})", cyc.join(" ")), "(1 2)"])
}

pub fn s3() -> PermGroup {
    symmetric(3)
}

pub fn a3() -> PermGroup {
    group(3, &["(1 2 3)"])
}

pub fn s4() -> PermGroup {
    symmetric(4)
}

pub fn a4() -> PermGroup {
    group(4, &["(1 2 3)", "(2 3 4)"])
}

pub fn v4() -> PermGroup {
    group(4, &["(1 2)(3 4)", "(1 3)(2 4)"])
}

pub fn d8() -> PermGroup {
    group(4, &["(1 2 3 4)", "(1 3)"])
}

pub fn s5() -> PermGroup {
    symmetric(5)
}

pub fn a5() -> PermGroup {
    group(5, &["(1 2 3)", "(3 4 5)"])
}

pub fn q8() -> PermGroup {
    group(8, &["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"])
}

/// A matrix group over `F_q` (q prime) acting on the nonzero vectors of `F_q^2`.
pub fn matrix_group(q: u64, mats: &[[u64; 4]]) -> PermGroup {
    let vecs: Vec<(u64, u64)> = (0..q)
        .flat_map(|a| (0..q).map(move |b| (a, b)))
        .filter(|&v| v != (0, 0))
        .collect();
    let gens = mats
        .iter()
        .map(|m| {
            let images = vecs
                .iter()
                .map(|&(x, y)| {
                    let w = ((m[0] * x + m[1] * y) % q, (m[2] * x + m[3] * y) % q);
                    vecs.iter().position(|&v| v == w).unwrap()
                })
                .collect();
            Perm::from_images(images).unwrap()
        })
        .collect();
    PermGroup::new(vecs.len(), gens, DEFAULT_MAX_ORDER).unwrap()
}

pub fn sl2_3() -> PermGroup {
    matrix_group(3, &[[1, 1, 0, 1], [0, 2, 1, 0]])
}

pub fn gl2_3() -> PermGroup {
    matrix_group(3, &[[1, 1, 0, 1], [0, 2, 1, 0], [2, 0, 0, 1]])
}

pub fn sl2_5() -> PermGroup {
    matrix_group(5, &[[1, 1, 0, 1], [0, 4, 1, 0]])
}

/// Every small group used by the test suites, with a name.
pub fn corpus() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("C6", cyclic(6)),
        ("S3", s3()),
        ("D8", d8()),
        ("Q8", q8()),
        ("A4", a4()),
        ("S4", s4()),
        ("SL2(3)", sl2_3()),
        ("A5", a5()),
        ("S5", s5()),
        ("GL2(3)", gl2_3()),
        ("SL2(5)", sl2_5()),
    ]
}
