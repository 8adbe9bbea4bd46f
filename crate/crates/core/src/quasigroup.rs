//! Cayley-table quasigroups.
//!
//! A [`Quasigroup`] owns its multiplication table together with both
//! division tables, so `mul`, `a\b` and `a/b` are all single lookups.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::Element;

/// Which argument a translation or division acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NucleusKind {
    Left,
    Middle,
    Right,
}

/// Identity elements and a few cheap structural flags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LoopProfile {
    pub two_sided_identity: Option<Element>,
    pub left_identities: BTreeSet<Element>,
    pub right_identities: BTreeSet<Element>,
    pub commutative: bool,
    /// A loop in which every element squares to the identity.
    pub exponent_two: bool,
}

impl LoopProfile {
    pub fn is_loop(&self) -> bool {
        self.two_sided_identity.is_some()
    }
}

/// A finite quasigroup of order `n` on `{0, .., n-1}`.
///
/// Every row and every column of the table is a permutation; the
/// constructor rejects anything else.
#[derive(Clone, Serialize)]
pub struct Quasigroup {
    order: usize,
    /// `table[x * n + y] = x * y`
    table: Vec<Element>,
    /// `ldiv[a * n + b] = a \ b`, the `y` with `a * y = b`
    #[serde(skip)]
    ldiv: Vec<Element>,
    /// `rdiv[a * n + b] = a / b`, the `x` with `x * b = a`
    #[serde(skip)]
    rdiv: Vec<Element>,
}

impl Quasigroup {
    /// Builds a quasigroup from a row-major table, validating the Latin property.
    pub fn new(order: usize, table: Vec<Element>) -> Result<Quasigroup> {
        if order == 0 {
            return Err(Error::EmptyCarrier);
        }
        if table.len() != order * order {
            return Err(Error::TableShape {
                order,
                expected: order * order,
                actual: table.len(),
            });
        }
        if let Some(&value) = table.iter().find(|&&v| v >= order) {
            return Err(Error::ElementOutOfRange { value, order });
        }
        let n = order;
        let mut ldiv = vec![usize::MAX; n * n];
        let mut rdiv = vec![usize::MAX; n * n];
        for x in 0..n {
            for y in 0..n {
                let z = table[x * n + y];
                if ldiv[x * n + z] != usize::MAX {
                    return Err(Error::RowNotPermutation { row: x, symbol: z });
                }
                ldiv[x * n + z] = y;
            }
        }
        for y in 0..n {
            for x in 0..n {
                let z = table[x * n + y];
                if rdiv[z * n + y] != usize::MAX {
                    return Err(Error::ColumnNotPermutation { column: y, symbol: z });
                }
                rdiv[z * n + y] = x;
            }
        }
        Ok(Quasigroup {
            order,
            table,
            ldiv,
            rdiv,
        })
    }

    pub fn from_rows<R: AsRef<[Element]>>(rows: &[R]) -> Result<Quasigroup> {
        let n = rows.len();
        let mut table = Vec::with_capacity(n * n);
        for row in rows {
            let row = row.as_ref();
            if row.len() != n {
                return Err(Error::TableShape {
                    order: n,
                    expected: n * n,
                    actual: n * (n - 1) + row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        Quasigroup::new(n, table)
    }

    pub fn from_fn(order: usize, f: impl Fn(Element, Element) -> Element) -> Result<Quasigroup> {
        let table = (0..order)
            .flat_map(|x| (0..order).map(move |y| (x, y)))
            .map(|(x, y)| f(x, y))
            .collect();
        Quasigroup::new(order, table)
    }

    /// The cyclic group `Z_n` under addition mod `n`.
    pub fn cyclic(n: usize) -> Quasigroup {
        Quasigroup::from_fn(n, |x, y| (x + y) % n).expect("Z_n is Latin")
    }

    /// `Z_2 x Z_2` with elements coded as two-bit integers under XOR.
    pub fn klein_four() -> Quasigroup {
        Quasigroup::from_fn(4, |x, y| x ^ y).expect("Klein four is Latin")
    }

    /// `x * y = -(x + y) mod 3`, equal to all six of its parastrophes.
    pub fn totally_symmetric_z3() -> Quasigroup {
        Quasigroup::from_fn(3, |x, y| (6 - x - y) % 3).expect("Latin")
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Element]> {
        self.table.chunks(self.order)
    }

    fn check(&self, x: Element) -> Result<()> {
        if x < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                value: x,
                order: self.order,
            })
        }
    }

    /// Checked product `x * y`.
    pub fn mul(&self, x: Element, y: Element) -> Result<Element> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.op(x, y))
    }

    /// Checked division: `Left` gives `a \ b`, `Right` gives `a / b`.
    pub fn divide(&self, side: Side, a: Element, b: Element) -> Result<Element> {
        self.check(a)?;
        self.check(b)?;
        Ok(match side {
            Side::Left => self.ldiv(a, b),
            Side::Right => self.rdiv(a, b),
        })
    }

    /// Unchecked product for hot loops.
    #[inline]
    pub fn op(&self, x: Element, y: Element) -> Element {
        self.table[x * self.order + y]
    }

    /// `a \ b`: the unique `y` with `a * y = b`.
    #[inline]
    pub fn ldiv(&self, a: Element, b: Element) -> Element {
        self.ldiv[a * self.order + b]
    }

    /// `a / b`: the unique `x` with `x * b = a`.
    #[inline]
    pub fn rdiv(&self, a: Element, b: Element) -> Element {
        self.rdiv[a * self.order + b]
    }

    /// `L_x: y -> x * y` or `R_x: y -> y * x`.
    pub fn translation(&self, side: Side, x: Element) -> Result<Perm> {
        self.check(x)?;
        let n = self.order;
        let images = match side {
            Side::Left => self.table[x * n..(x + 1) * n].to_vec(),
            Side::Right => (0..n).map(|y| self.op(y, x)).collect(),
        };
        Ok(Perm::from_images_unchecked(images))
    }

    /// First `(x, y, z)` in lexicographic order with `(xy)z != x(yz)`.
    pub fn is_associative(&self) -> Option<(Element, Element, Element)> {
        let n = self.order;
        for x in 0..n {
            for y in 0..n {
                let xy = self.op(x, y);
                for z in 0..n {
                    if self.op(xy, z) != self.op(x, self.op(y, z)) {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn associative(&self) -> bool {
        self.is_associative().is_none()
    }

    pub fn is_commutative(&self) -> bool {
        let n = self.order;
        (0..n).all(|x| (x + 1..n).all(|y| self.op(x, y) == self.op(y, x)))
    }

    pub fn loop_profile(&self) -> LoopProfile {
        let n = self.order;
        let left_identities: BTreeSet<_> = (0..n).filter(|&a| (0..n).all(|y| self.op(a, y) == y)).collect();
        let right_identities: BTreeSet<_> = (0..n).filter(|&a| (0..n).all(|y| self.op(y, a) == y)).collect();
        let two_sided_identity = left_identities.intersection(&right_identities).next().copied();
        let exponent_two = match two_sided_identity {
            Some(e) => (0..n).all(|x| self.op(x, x) == e),
            None => false,
        };
        LoopProfile {
            two_sided_identity,
            left_identities,
            right_identities,
            commutative: self.is_commutative(),
            exponent_two,
        }
    }

    /// The two-sided identity, if this is a loop.
    pub fn identity_element(&self) -> Option<Element> {
        let n = self.order;
        (0..n).find(|&e| (0..n).all(|y| self.op(e, y) == y && self.op(y, e) == y))
    }

    pub fn in_nucleus(&self, kind: NucleusKind, c: Element) -> bool {
        let n = self.order;
        (0..n).all(|x| {
            (0..n).all(|y| match kind {
                NucleusKind::Left => self.op(c, self.op(x, y)) == self.op(self.op(c, x), y),
                NucleusKind::Middle => self.op(x, self.op(c, y)) == self.op(self.op(x, c), y),
                NucleusKind::Right => self.op(self.op(x, y), c) == self.op(x, self.op(y, c)),
            })
        })
    }

    /// Elements associating with every pair in the `kind` slot. May be empty.
    pub fn nucleus(&self, kind: NucleusKind) -> BTreeSet<Element> {
        (0..self.order).filter(|&c| self.in_nucleus(kind, c)).collect()
    }

    /// Entrywise table equality; this is the `≡` used by the holomorph and
    /// corollary checks. Isomorphism is a separate notion.
    pub fn tables_equal(&self, other: &Quasigroup) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl PartialEq for Quasigroup {
    fn eq(&self, other: &Self) -> bool {
        self.tables_equal(other)
    }
}

impl Eq for Quasigroup {}

impl std::hash::Hash for Quasigroup {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for Quasigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

impl<'de> Deserialize<'de> for Quasigroup {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Element>,
        }
        let raw = Raw::deserialize(deserializer)?;
        Quasigroup::new(raw.order, raw.table).map_err(serde::de::Error::custom)
    }
}
