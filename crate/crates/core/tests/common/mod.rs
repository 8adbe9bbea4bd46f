//! Brute-force oracles, written independently of the library search code.

#![allow(dead_code)]

use qpl_core::{Perm, Quasigroup};

/// Counts Latin squares row by row: each row is a permutation avoiding the
/// symbols already used in every column. `reduced` fixes the first row and
/// column to `0..n`.
pub fn count_latin(n: usize, reduced: bool) -> u64 {
    fn rows(n: usize, r: usize, cols: &mut [u64], reduced: bool) -> u64 {
        if r == n {
            return 1;
        }
        let mut total = 0;
        let mut row = vec![0usize; n];
        place(n, r, 0, 0, &mut row, cols, reduced, &mut total);
        total
    }
    #[allow(clippy::too_many_arguments)]
    fn place(
        n: usize,
        r: usize,
        c: usize,
        used: u64,
        row: &mut [usize],
        cols: &mut [u64],
        reduced: bool,
        total: &mut u64,
    ) {
        if c == n {
            for (j, &v) in row.iter().enumerate() {
                cols[j] |= 1 << v;
            }
            *total += rows(n, r + 1, cols, reduced);
            for (j, &v) in row.iter().enumerate() {
                cols[j] &= !(1 << v);
            }
            return;
        }
        for v in 0..n {
            if reduced && ((r == 0 && v != c) || (c == 0 && v != r)) {
                continue;
            }
            if used & (1 << v) == 0 && cols[c] & (1 << v) == 0 {
                row[c] = v;
                place(n, r, c + 1, used | (1 << v), row, cols, reduced, total);
            }
        }
    }
    rows(n, 0, &mut vec![0; n], reduced)
}

/// All permutations of `0..n` in lexicographic order, by Heap-free
/// next-permutation stepping.
pub fn perms_lex(n: usize) -> Vec<Vec<usize>> {
    let mut p: Vec<usize> = (0..n).collect();
    let mut out = vec![p.clone()];
    loop {
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        out.push(p.clone());
    }
}

/// The least isomorphism `a -> b` by scanning all n! maps.
pub fn scan_isomorphism(a: &Quasigroup, b: &Quasigroup) -> Option<Vec<usize>> {
    let n = a.order();
    if b.order() != n {
        return None;
    }
    perms_lex(n)
        .into_iter()
        .find(|phi| (0..n).all(|x| (0..n).all(|y| phi[a.op(x, y)] == b.op(phi[x], phi[y]))))
}

/// Associativity by the definition.
pub fn associative(q: &Quasigroup) -> bool {
    let n = q.order();
    (0..n).all(|x| (0..n).all(|y| (0..n).all(|z| q.op(q.op(x, y), z) == q.op(x, q.op(y, z)))))
}

/// Relabels `q` by `phi`: the result has `xφ ∘ yφ = (xy)φ`.
pub fn relabel(q: &Quasigroup, phi: &Perm) -> Quasigroup {
    let n = q.order();
    let inv = phi.inverse();
    Quasigroup::from_fn(n, |u, v| phi.apply(q.op(inv.apply(u), inv.apply(v)))).unwrap()
}
