//! Dense linear algebra over a prime field `F_l`.

use crate::arith::inv_mod;

pub type Mat = Vec<Vec<u64>>;

fn sub_mod(a: u64, b: u64, l: u64) -> u64 {
    (a + l - b) % l
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(m: &mut Mat, l: u64) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = m[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = inv_mod(m[r][c], l);
        for x in m[r].iter_mut() {
            *x = *x * inv % l;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    *x = sub_mod(*x, f * y % l, l);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    pivots
}

pub fn rank(m: &Mat, l: u64) -> usize {
    let mut m = m.clone();
    rref(&mut m, l).len()
}

/// Basis of the right null space `{y : m y = 0}`.
pub fn kernel(m: &Mat, cols: usize, l: u64) -> Mat {
    let mut a = m.clone();
    let pivots = rref(&mut a, l);
    let mut basis = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![0u64; cols];
        v[free] = 1;
        for (row, &pc) in a.iter().zip(&pivots) {
            v[pc] = (l - row[free]) % l;
        }
        basis.push(v);
    }
    basis
}

pub fn mat_vec(m: &Mat, v: &[u64], l: u64) -> Vec<u64> {
    m.iter()
        .map(|row| row.iter().zip(v).fold(0, |acc, (a, b)| (acc + a * b) % l))
        .collect()
}

/// Characteristic polynomial `det(x I - c)`, coefficients low degree first.
pub fn charpoly(c: &Mat, l: u64) -> Vec<u64> {
    let n = c.len();
    let mut h = c.clone();
    // Similarity reduction to upper Hessenberg form.
    for k in 0..n.saturating_sub(2) {
        let Some(piv) = (k + 1..n).find(|&i| h[i][k] != 0) else {
            continue;
        };
        if piv != k + 1 {
            h.swap(piv, k + 1);
            for row in h.iter_mut() {
                row.swap(piv, k + 1);
            }
        }
        let inv = inv_mod(h[k + 1][k], l);
        for i in k + 2..n {
            let f = h[i][k] * inv % l;
            if f == 0 {
                continue;
            }
            // row_i -= f row_{k+1}; col_{k+1} += f col_i
            for j in 0..n {
                let t = f * h[k + 1][j] % l;
                h[i][j] = sub_mod(h[i][j], t, l);
            }
            for row in h.iter_mut() {
                row[k + 1] = (row[k + 1] + f * row[i]) % l;
            }
        }
    }
    // p_m = (x - h_mm) p_{m-1} - Σ_{i<m} h_im (Π_{j=i+1}^{m} h_{j,j-1}) p_{i-1}
    let mut ps: Vec<Vec<u64>> = vec![vec![1]];
    for m in 0..n {
        let prev = &ps[m];
        let mut next = vec![0u64; m + 2];
        for (d, &a) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + a) % l;
            next[d] = sub_mod(next[d], a * h[m][m] % l, l);
        }
        let mut prod = 1u64;
        for i in (0..m).rev() {
            prod = prod * h[i + 1][i] % l;
            let coef = h[i][m] * prod % l;
            if coef != 0 {
                for (d, &a) in ps[i].iter().enumerate() {
                    next[d] = sub_mod(next[d], coef * a % l, l);
                }
            }
        }
        ps.push(next);
    }
    ps.pop().unwrap()
}

pub fn eval_poly(p: &[u64], x: u64, l: u64) -> u64 {
    p.iter().rev().fold(0, |acc, &c| (acc * x + c) % l)
}
