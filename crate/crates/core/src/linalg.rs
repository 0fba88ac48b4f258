//! Dense linear algebra over F_p on `u32` residues.

use alloc::vec;
use alloc::vec::Vec;

fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

/// Reduced row echelon form of the span of `rows`; returns the nonzero rows
/// and their pivot columns.
pub fn rref_mod_p(rows: &[Vec<u32>], p: u32) -> (Vec<Vec<u32>>, Vec<usize>) {
    let mut m: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x % p).collect()).collect();
    let ncols = m.iter().map(|r| r.len()).max().unwrap_or(0);
    for r in m.iter_mut() {
        r.resize(ncols, 0);
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..m.len()).find(|&r| m[r][col] != 0) else {
            continue;
        };
        m.swap(row, piv);
        let inv = inv_mod(m[row][col], p) as u64;
        for x in m[row].iter_mut() {
            *x = (*x as u64 * inv % p as u64) as u32;
        }
        for r in 0..m.len() {
            if r == row || m[r][col] == 0 {
                continue;
            }
            let f = (p - m[r][col]) as u64;
            for c in 0..ncols {
                m[r][c] = ((m[r][c] as u64 + f * m[row][c] as u64) % p as u64) as u32;
            }
        }
        pivots.push(col);
        row += 1;
        if row == m.len() {
            break;
        }
    }
    m.truncate(row);
    (m, pivots)
}

pub fn rank_mod_p(rows: &[Vec<u32>], p: u32) -> usize {
    rref_mod_p(rows, p).1.len()
}

/// Basis of `{x : rows * x = 0}` with `ncols` unknowns.
pub fn kernel_mod_p(rows: &[Vec<u32>], ncols: usize, p: u32) -> Vec<Vec<u32>> {
    let padded: Vec<Vec<u32>> = rows
        .iter()
        .map(|r| {
            let mut r = r.clone();
            r.resize(ncols, 0);
            r
        })
        .collect();
    let (red, pivots) = rref_mod_p(&padded, p);
    let mut basis = Vec::new();
    for free in 0..ncols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![0u32; ncols];
        v[free] = 1;
        for (r, &pc) in red.iter().zip(&pivots) {
            v[pc] = (p - r[free] % p) % p;
        }
        basis.push(v);
    }
    basis
}

/// Remainder of `v` after eliminating against an RREF basis.
pub fn reduce_mod_p(red: &[Vec<u32>], pivots: &[usize], v: &[u32], p: u32) -> Vec<u32> {
    let mut v: Vec<u32> = v.iter().map(|&x| x % p).collect();
    for (r, &pc) in red.iter().zip(pivots) {
        if pc >= v.len() || v[pc] == 0 {
            continue;
        }
        let f = (p - v[pc]) as u64;
        for (c, x) in v.iter_mut().enumerate() {
            let rc = r.get(c).copied().unwrap_or(0) as u64;
            *x = ((*x as u64 + f * rc) % p as u64) as u32;
        }
    }
    v
}

pub fn in_span_mod_p(red: &[Vec<u32>], pivots: &[usize], v: &[u32], p: u32) -> bool {
    reduce_mod_p(red, pivots, v, p).iter().all(|&x| x == 0)
}

/// One solution of `a * x = rhs` (free variables set to 0), if any.
pub fn solve_mod_p(a: &[Vec<u32>], rhs: &[u32], ncols: usize, p: u32) -> Option<Vec<u32>> {
    let aug: Vec<Vec<u32>> = a
        .iter()
        .zip(rhs)
        .map(|(r, &b)| {
            let mut r = r.clone();
            r.resize(ncols, 0);
            r.push(b % p);
            r
        })
        .collect();
    let (red, pivots) = rref_mod_p(&aug, p);
    if pivots.contains(&ncols) {
        return None;
    }
    let mut x = vec![0u32; ncols];
    for (r, &pc) in red.iter().zip(&pivots) {
        x[pc] = r[ncols];
    }
    Some(x)
}
