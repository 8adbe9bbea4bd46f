//! Exhaustive and seeded generation of Latin squares, loops and groups.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quasigroup::Quasigroup;
use crate::Element;

pub const LATIN_EXHAUSTIVE_BOUND: usize = 5;
pub const LOOP_EXHAUSTIVE_BOUND: usize = 6;
pub const GROUP_BOUND: usize = 8;
pub const RANDOM_BOUND: usize = 32;

/// Depth-first completion of a partial square, cell by cell in row-major
/// order with ascending candidates, so squares come out in lexicographic
/// row-major order.
pub struct LatinSquares {
    n: usize,
    cells: Vec<Element>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    /// Cells filled by the search, in order.
    free: Vec<usize>,
    /// Next candidate to try at each depth of `free`.
    next: Vec<Element>,
    depth: usize,
    done: bool,
}

impl LatinSquares {
    fn new(n: usize, reduced: bool) -> LatinSquares {
        let mut cells = vec![usize::MAX; n * n];
        let mut row_used = vec![0u64; n];
        let mut col_used = vec![0u64; n];
        if reduced {
            for i in 0..n {
                for (r, c) in [(0, i), (i, 0)] {
                    cells[r * n + c] = i;
                    row_used[r] |= 1 << i;
                    col_used[c] |= 1 << i;
                }
            }
        }
        let free: Vec<usize> = (0..n * n).filter(|&i| cells[i] == usize::MAX).collect();
        let depth_count = free.len();
        LatinSquares {
            n,
            cells,
            row_used,
            col_used,
            free,
            next: vec![0; depth_count + 1],
            depth: 0,
            done: n == 0,
        }
    }

    fn unset(&mut self, cell: usize) {
        let (r, c, v) = (cell / self.n, cell % self.n, self.cells[cell]);
        self.row_used[r] &= !(1 << v);
        self.col_used[c] &= !(1 << v);
        self.cells[cell] = usize::MAX;
    }
}

impl Iterator for LatinSquares {
    type Item = Quasigroup;

    fn next(&mut self) -> Option<Quasigroup> {
        if self.done {
            return None;
        }
        let n = self.n;
        // resuming after an emitted square: backtrack from the last cell
        if self.depth == self.free.len() && self.depth > 0 {
            self.depth -= 1;
            self.unset(self.free[self.depth]);
        } else if self.free.is_empty() {
            // fully fixed square (n = 1 reduced, say): emit once
            self.done = true;
            return Some(Quasigroup::new(n, self.cells.clone()).expect("fixed border is Latin"));
        }
        loop {
            let cell = self.free[self.depth];
            let (r, c) = (cell / n, cell % n);
            let blocked = self.row_used[r] | self.col_used[c];
            let placed = (self.next[self.depth]..n).find(|&v| blocked & (1 << v) == 0);
            match placed {
                Some(v) => {
                    self.cells[cell] = v;
                    self.row_used[r] |= 1 << v;
                    self.col_used[c] |= 1 << v;
                    self.next[self.depth] = v + 1;
                    self.depth += 1;
                    if self.depth == self.free.len() {
                        return Some(
                            Quasigroup::new(n, self.cells.clone()).expect("search keeps rows and columns distinct"),
                        );
                    }
                    self.next[self.depth] = 0;
                }
                None => {
                    if self.depth == 0 {
                        self.done = true;
                        return None;
                    }
                    self.depth -= 1;
                    self.unset(self.free[self.depth]);
                }
            }
        }
    }
}

fn bound(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyCarrier)
    } else if n > limit {
        Err(Error::BoundExceeded { what, limit, actual: n })
    } else {
        Ok(())
    }
}

/// Every Latin square of order `n`, each once, in lexicographic row-major order.
pub fn latin_squares(n: usize) -> Result<LatinSquares> {
    bound("Latin square enumeration order", n, LATIN_EXHAUSTIVE_BOUND)?;
    Ok(LatinSquares::new(n, false))
}

/// Latin squares whose first row and column are `0, 1, .., n-1`: loops with
/// identity element 0.
pub fn loops(n: usize) -> Result<LatinSquares> {
    bound("loop enumeration order", n, LOOP_EXHAUSTIVE_BOUND)?;
    Ok(LatinSquares::new(n, true))
}

/// Associative members of [`loops`]: one table per labelling, not up to
/// isomorphism. Same order as filtering [`loops`], but the search prunes on
/// associativity as each cell is placed, which keeps orders 7 and 8 cheap.
pub fn groups(n: usize) -> Result<impl Iterator<Item = Quasigroup>> {
    bound("group enumeration order", n, GROUP_BOUND)?;
    let mut search = GroupSearch::new(n);
    search.run(0);
    Ok(search.found.into_iter())
}

struct GroupSearch {
    n: usize,
    cells: Vec<Element>,
    row_used: Vec<u64>,
    col_used: Vec<u64>,
    found: Vec<Quasigroup>,
}

const UNSET: Element = usize::MAX;

impl GroupSearch {
    fn new(n: usize) -> GroupSearch {
        let mut s = GroupSearch {
            n,
            cells: vec![UNSET; n * n],
            row_used: vec![0; n],
            col_used: vec![0; n],
            found: Vec::new(),
        };
        for i in 0..n {
            s.set(0, i, i);
            if i > 0 {
                s.set(i, 0, i);
            }
        }
        s
    }

    fn get(&self, x: Element, y: Element) -> Element {
        self.cells[x * self.n + y]
    }

    fn set(&mut self, x: Element, y: Element, v: Element) {
        self.cells[x * self.n + y] = v;
        self.row_used[x] |= 1 << v;
        self.col_used[y] |= 1 << v;
    }

    fn clear(&mut self, x: Element, y: Element) {
        let v = self.get(x, y);
        self.cells[x * self.n + y] = UNSET;
        self.row_used[x] &= !(1 << v);
        self.col_used[y] &= !(1 << v);
    }

    /// Every associativity instance that uses cell `(x, y)` and is fully
    /// determined agrees.
    fn consistent(&self, x: Element, y: Element) -> bool {
        let n = self.n;
        let v = self.get(x, y);
        let agree = |l: Element, r: Element| l == UNSET || r == UNSET || l == r;
        for z in 0..n {
            // (x·y)·z = x·(y·z)
            let yz = self.get(y, z);
            if yz != UNSET && !agree(self.get(v, z), self.get(x, yz)) {
                return false;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // cell as the outer left product: (a·b)·y with a·b = x
                if self.get(a, b) == x {
                    let by = self.get(b, y);
                    if by != UNSET && !agree(v, self.get(a, by)) {
                        return false;
                    }
                }
                // cell as the outer right product: x·(a·b) with a·b = y
                if self.get(a, b) == y {
                    let xa = self.get(x, a);
                    if xa != UNSET && !agree(self.get(xa, b), v) {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn run(&mut self, cell: usize) {
        let n = self.n;
        if cell == n * n {
            let table = self.cells.clone();
            self.found
                .push(Quasigroup::new(n, table).expect("search keeps rows and columns distinct"));
            return;
        }
        let (x, y) = (cell / n, cell % n);
        if self.get(x, y) != UNSET {
            return self.run(cell + 1);
        }
        let blocked = self.row_used[x] | self.col_used[y];
        for v in 0..n {
            if blocked & (1 << v) == 0 {
                self.set(x, y, v);
                if self.consistent(x, y) {
                    self.run(cell + 1);
                }
                self.clear(x, y);
            }
        }
    }
}

/// A seeded random Latin square, filled row by row.
///
/// Each row is a random system of distinct representatives found by
/// shuffled backtracking; a row that exceeds its node budget is retried
/// with a fresh shuffle.
pub fn random_quasigroup(n: usize, seed: u64) -> Result<Quasigroup> {
    random_square(n, seed, false)
}

/// A seeded random loop with identity element 0.
pub fn random_loop(n: usize, seed: u64) -> Result<Quasigroup> {
    random_square(n, seed, true)
}

fn random_square(n: usize, seed: u64, reduced: bool) -> Result<Quasigroup> {
    bound("random quasigroup order", n, RANDOM_BOUND)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut col_used = vec![0u64; n];
    let mut table = Vec::with_capacity(n * n);
    for r in 0..n {
        let row = if reduced && r == 0 {
            (0..n).collect()
        } else {
            let fixed_first = reduced.then_some(r);
            loop {
                if let Some(row) = random_row(n, &col_used, fixed_first, &mut rng) {
                    break row;
                }
            }
        };
        for (c, &v) in row.iter().enumerate() {
            col_used[c] |= 1 << v;
        }
        table.extend(row);
    }
    Quasigroup::new(n, table)
}

fn random_row(n: usize, col_used: &[u64], first: Option<Element>, rng: &mut impl Rng) -> Option<Vec<Element>> {
    let mut candidates: Vec<Vec<Element>> = (0..n)
        .map(|c| {
            let mut v: Vec<Element> = (0..n).filter(|&s| col_used[c] & (1 << s) == 0).collect();
            v.shuffle(rng);
            v
        })
        .collect();
    if let Some(f) = first {
        candidates[0] = vec![f];
    }
    let mut row = vec![0; n];
    let mut budget = 64 * n * n;
    fn go(c: usize, used: u64, row: &mut [Element], cands: &[Vec<Element>], budget: &mut usize) -> bool {
        if c == row.len() {
            return true;
        }
        for &v in &cands[c] {
            if *budget == 0 {
                return false;
            }
            *budget -= 1;
            if used & (1 << v) == 0 {
                row[c] = v;
                if go(c + 1, used | (1 << v), row, cands, budget) {
                    return true;
                }
            }
        }
        false
    }
    go(0, 0, &mut row, &candidates, &mut budget).then_some(row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EnumerationKind {
    AllLatin,
    ReducedLatin,
    Loops,
    Groups,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSpec {
    pub order: usize,
    pub kind: EnumerationKind,
    /// Switches Latin squares and loops to seeded sampling.
    pub seed: Option<u64>,
    pub limit: Option<usize>,
}

/// Runs an [`EnumerationSpec`]. Sampling mode requires a `limit`.
pub fn enumerate(spec: EnumerationSpec) -> Result<Box<dyn Iterator<Item = Quasigroup>>> {
    let n = spec.order;
    let limit = spec.limit.unwrap_or(usize::MAX);
    if let Some(seed) = spec.seed {
        if spec.limit.is_none() {
            return Err(Error::Precondition("sampling needs a limit".into()));
        }
        let reduced = match spec.kind {
            EnumerationKind::AllLatin => false,
            EnumerationKind::ReducedLatin | EnumerationKind::Loops => true,
            EnumerationKind::Groups => return Err(Error::Precondition("groups are enumerated, not sampled".into())),
        };
        bound("random quasigroup order", n, RANDOM_BOUND)?;
        let samples =
            (0..limit as u64).map(move |i| random_square(n, sample_seed(seed, n, i), reduced).expect("order checked"));
        return Ok(Box::new(samples));
    }
    Ok(match spec.kind {
        EnumerationKind::AllLatin => Box::new(latin_squares(n)?.take(limit)),
        EnumerationKind::ReducedLatin | EnumerationKind::Loops => Box::new(loops(n)?.take(limit)),
        EnumerationKind::Groups => Box::new(groups(n)?.take(limit)),
    })
}

/// Seed for the `index`-th sample of order `n` in a seeded corpus.
pub fn sample_seed(seed: u64, n: usize, index: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(n as u64);
    rng.set_word_pos(u128::from(index) * 2);
    rng.gen()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        assert_eq!(latin_squares(1).unwrap().count(), 1);
        assert_eq!(latin_squares(2).unwrap().count(), 2);
        assert_eq!(latin_squares(3).unwrap().count(), 12);
        assert_eq!(loops(1).unwrap().count(), 1);
        assert_eq!(loops(3).unwrap().count(), 1);
        assert_eq!(loops(4).unwrap().count(), 4);
    }

    #[test]
    fn lexicographic_and_distinct() {
        let squares: Vec<_> = latin_squares(4).unwrap().map(|q| q.table().to_vec()).collect();
        assert!(squares.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn groups_of_small_order() {
        let g3: Vec<_> = groups(3).unwrap().collect();
        assert_eq!(g3, vec![Quasigroup::cyclic(3)]);
        let g4: Vec<_> = groups(4).unwrap().collect();
        assert_eq!(g4.len(), 4);
        let exp2 = g4.iter().filter(|g| g.loop_profile().exponent_two).count();
        assert_eq!(exp2, 1);
        // 4!/|Aut Z5| labellings fixing the identity
        let g5: Vec<_> = groups(5).unwrap().collect();
        assert_eq!(g5.len(), 6);
        assert!(g5.contains(&Quasigroup::cyclic(5)));
        for n in 1..=5 {
            let filtered: Vec<_> = loops(n).unwrap().filter(Quasigroup::associative).collect();
            assert_eq!(groups(n).unwrap().collect::<Vec<_>>(), filtered);
        }
    }

    #[test]
    fn bounds() {
        assert!(matches!(latin_squares(6), Err(Error::BoundExceeded { .. })));
        assert!(matches!(loops(7), Err(Error::BoundExceeded { .. })));
        assert!(groups(9).is_err());
        assert!(matches!(latin_squares(0), Err(Error::EmptyCarrier)));
        assert!(random_quasigroup(33, 0).is_err());
    }

    #[test]
    fn random_is_deterministic_and_latin() {
        assert_eq!(random_quasigroup(7, 42).unwrap(), random_quasigroup(7, 42).unwrap());
        assert_eq!(random_quasigroup(1, 9).unwrap().table(), &[0]);
        random_quasigroup(5, 1).unwrap();
        for seed in 0..20 {
            random_quasigroup(32, seed).unwrap();
            let l = random_loop(9, seed).unwrap();
            assert_eq!(l.identity_element(), Some(0));
        }
        let distinct: std::collections::HashSet<_> = (0..50).map(|s| random_quasigroup(5, s).unwrap()).collect();
        assert!(distinct.len() > 40);
    }

    #[test]
    fn spec_driven_enumeration() {
        let spec = EnumerationSpec {
            order: 4,
            kind: EnumerationKind::AllLatin,
            seed: None,
            limit: Some(10),
        };
        assert_eq!(enumerate(spec).unwrap().count(), 10);
        let spec = EnumerationSpec {
            order: 6,
            kind: EnumerationKind::Loops,
            seed: Some(3),
            limit: Some(5),
        };
        let a: Vec<_> = enumerate(spec).unwrap().collect();
        let b: Vec<_> = enumerate(spec).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|q| q.identity_element() == Some(0)));
        let spec = EnumerationSpec {
            order: 4,
            kind: EnumerationKind::Groups,
            seed: Some(1),
            limit: Some(1),
        };
        assert!(enumerate(spec).is_err());
    }
}
