//! Automorphism groups and the holomorph `Aut(L) × L` with
//! `(α, x) ∘ (β, y) = (αβ, xβ · y)`.
//!
//! Automorphisms compose left to right (`αβ` is α first, then β) and
//! holomorph elements are coded as `aut_index * n + point`.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::claim::{all_ok, Claim};
use crate::error::{Error, Result};
use crate::isotopy::all_isomorphisms;
use crate::parastrophe::{parastrophe, ParastropheKind};
use crate::perm::Perm;
use crate::quasigroup::Quasigroup;
use crate::Element;

/// Default cap on `|Aut(L)| * |L|`.
pub const DEFAULT_HOLOMORPH_BOUND: usize = 200;

/// Largest order for which automorphisms are enumerated.
pub const DEFAULT_AUTOMORPHISM_BOUND: usize = 32;

/// All automorphisms of a quasigroup, sorted by image tuple (identity first).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AutomorphismGroup {
    perms: Vec<Perm>,
}

impl AutomorphismGroup {
    pub fn perms(&self) -> &[Perm] {
        &self.perms
    }

    pub fn len(&self) -> usize {
        self.perms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perms.is_empty()
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.perms.binary_search(p).ok()
    }

    /// `compose[i * len + j]` is the index of `perms[i]` then `perms[j]`.
    fn composition_table(&self) -> Vec<usize> {
        let index: HashMap<&Perm, usize> = self.perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut out = Vec::with_capacity(self.len() * self.len());
        for a in &self.perms {
            for b in &self.perms {
                out.push(index[&a.then(b)]);
            }
        }
        out
    }

    /// Closure under composition and inverses, and membership of the identity.
    pub fn is_group(&self) -> bool {
        let Some(first) = self.perms.first() else {
            return false;
        };
        let index: HashMap<&Perm, usize> = self.perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        first.is_identity()
            && self
                .perms
                .iter()
                .all(|a| index.contains_key(&a.inverse()) && self.perms.iter().all(|b| index.contains_key(&a.then(b))))
    }
}

pub fn automorphism_group(q: &Quasigroup) -> Result<AutomorphismGroup> {
    if q.order() > DEFAULT_AUTOMORPHISM_BOUND {
        return Err(Error::BoundExceeded {
            what: "automorphism search order",
            limit: DEFAULT_AUTOMORPHISM_BOUND,
            actual: q.order(),
        });
    }
    Ok(AutomorphismGroup {
        perms: all_isomorphisms(q, q),
    })
}

/// A coded element of the holomorph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct HolomorphElement {
    pub aut_index: usize,
    pub point: Element,
}

#[derive(Debug, Clone, Serialize)]
pub struct Holomorph {
    pub automorphisms: AutomorphismGroup,
    pub base_order: usize,
    pub table: Quasigroup,
}

impl Holomorph {
    pub fn encode(&self, e: HolomorphElement) -> Element {
        e.aut_index * self.base_order + e.point
    }

    pub fn decode(&self, code: Element) -> HolomorphElement {
        HolomorphElement {
            aut_index: code / self.base_order,
            point: code % self.base_order,
        }
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }
}

pub fn build_holomorph(q: &Quasigroup) -> Result<Holomorph> {
    build_holomorph_bounded(q, DEFAULT_HOLOMORPH_BOUND)
}

pub fn build_holomorph_bounded(q: &Quasigroup, bound: usize) -> Result<Holomorph> {
    let aut = automorphism_group(q)?;
    holomorph_over(q, aut, bound)
}

/// Holomorph of `q` over a given automorphism group.
pub fn holomorph_over(q: &Quasigroup, aut: AutomorphismGroup, bound: usize) -> Result<Holomorph> {
    let n = q.order();
    let m = aut.len();
    let size = m * n;
    if size > bound {
        return Err(Error::BoundExceeded {
            what: "holomorph size",
            limit: bound,
            actual: size,
        });
    }
    let compose = aut.composition_table();
    let mut table = vec![0; size * size];
    for alpha in 0..m {
        for x in 0..n {
            let row = (alpha * n + x) * size;
            for (beta, b) in aut.perms.iter().enumerate() {
                let xb = b.apply(x);
                let ab = compose[alpha * m + beta];
                for y in 0..n {
                    table[row + beta * n + y] = ab * n + q.op(xb, y);
                }
            }
        }
    }
    Ok(Holomorph {
        automorphisms: aut,
        base_order: n,
        table: Quasigroup::new(size, table)?,
    })
}

/// A loop is a group iff its holomorph is.
pub fn holomorph_group_claim(q: &Quasigroup) -> Result<Claim> {
    let h = build_holomorph(q)?;
    Ok(Claim::new(
        "group-iff-holomorph-group",
        q.associative(),
        h.table.associative(),
    ))
}

/// `ops` applied left to right to the holomorph of the `base` parastrophe.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct HolomorphComposite {
    pub symbol: &'static str,
    pub base: ParastropheKind,
    pub ops: &'static [ParastropheKind],
}

impl HolomorphComposite {
    fn build(&self, holomorphs: &HolomorphFamily) -> Quasigroup {
        self.ops
            .iter()
            .fold(holomorphs.of(self.base).table.clone(), |acc, &k| parastrophe(&acc, k))
    }
}

/// Holomorphs of all six parastrophes of one quasigroup.
struct HolomorphFamily {
    holomorphs: Vec<Holomorph>,
}

impl HolomorphFamily {
    fn new(q: &Quasigroup, bound: usize) -> Result<(HolomorphFamily, bool)> {
        let aut = automorphism_group(q)?;
        let mut shared = true;
        let mut holomorphs = Vec::new();
        for kind in ParastropheKind::ALL {
            let p = parastrophe(q, kind);
            let pa = automorphism_group(&p)?;
            shared &= pa == aut;
            holomorphs.push(holomorph_over(&p, pa, bound)?);
        }
        Ok((HolomorphFamily { holomorphs }, shared))
    }

    fn of(&self, kind: ParastropheKind) -> &Holomorph {
        &self.holomorphs[kind as usize]
    }
}

/// One `LHS ≡ RHS ⟺ condition` line.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct InterchangeCase {
    pub label: &'static str,
    pub lhs: HolomorphComposite,
    pub rhs: HolomorphComposite,
}

use ParastropheKind::{Pi1, Pi2, Pi3, Pi4, Pi5, Pi6};

const fn composite(symbol: &'static str, base: ParastropheKind, ops: &'static [ParastropheKind]) -> HolomorphComposite {
    HolomorphComposite { symbol, base, ops }
}

/// Parastrophes of the holomorph against re-parastrophes of holomorphs of
/// parastrophes, transcribed symbol by symbol. The condition for case `k`
/// is `θ ≡ π_{k+1}(θ)`.
pub const INTERCHANGE_CASES: [InterchangeCase; 5] = [
    InterchangeCase {
        label: "case1",
        lhs: composite("∘*", Pi1, &[Pi2]),
        rhs: composite("(∘_*)*", Pi2, &[Pi2]),
    },
    InterchangeCase {
        label: "case2",
        lhs: composite("∘⁻¹", Pi1, &[Pi3]),
        rhs: composite("(∘_{-1})⁻¹", Pi3, &[Pi3]),
    },
    InterchangeCase {
        label: "case3",
        lhs: composite("⁻¹∘", Pi1, &[Pi4]),
        rhs: composite("⁻¹(_{-1}∘)", Pi4, &[Pi4]),
    },
    InterchangeCase {
        label: "case4",
        lhs: composite("(∘⁻¹)*", Pi1, &[Pi5]),
        rhs: composite("(((∘_{-1})_*)⁻¹)*", Pi5, &[Pi3, Pi2]),
    },
    InterchangeCase {
        label: "case5",
        lhs: composite("(⁻¹∘)*", Pi1, &[Pi6]),
        rhs: composite("(⁻¹((_{-1}∘)_*))*", Pi6, &[Pi4, Pi2]),
    },
];

/// Holomorph equivalences for a group, each paired with associativity of
/// one division parastrophe of the group.
pub const GROUP_INTERCHANGE_CASES: [(InterchangeCase, ParastropheKind); 4] = [
    (
        InterchangeCase {
            label: "part1",
            lhs: composite("∘⁻¹", Pi1, &[Pi3]),
            rhs: composite("((∘_{-1})⁻¹)*", Pi3, &[Pi3, Pi2]),
        },
        Pi3,
    ),
    (
        InterchangeCase {
            label: "part2",
            lhs: composite("⁻¹∘", Pi1, &[Pi4]),
            rhs: composite("(⁻¹(_{-1}∘))*", Pi4, &[Pi4, Pi2]),
        },
        Pi4,
    ),
    (
        InterchangeCase {
            label: "part3",
            lhs: composite("(∘⁻¹)*", Pi1, &[Pi3, Pi2]),
            rhs: composite("(((∘_{-1})_*)⁻¹)*", Pi5, &[Pi3, Pi2]),
        },
        Pi5,
    ),
    (
        InterchangeCase {
            label: "part4",
            lhs: composite("(⁻¹∘)*", Pi1, &[Pi4, Pi2]),
            rhs: composite("(⁻¹((_{-1}∘)_*))*", Pi6, &[Pi4, Pi2]),
        },
        Pi6,
    ),
];

#[derive(Debug, Clone, Serialize)]
pub struct InterchangeReport {
    pub holomorph_order: usize,
    pub claims: Vec<Claim>,
}

impl InterchangeReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// For each case: `LHS ≡ RHS` iff `θ ≡` the matching parastrophe of `θ`.
///
/// Also records whether all six parastrophes share one automorphism group,
/// which the common carrier of the compared holomorphs presumes.
pub fn holomorph_interchange_check(q: &Quasigroup) -> Result<InterchangeReport> {
    holomorph_interchange_check_bounded(q, DEFAULT_HOLOMORPH_BOUND)
}

pub fn holomorph_interchange_check_bounded(q: &Quasigroup, bound: usize) -> Result<InterchangeReport> {
    let (family, shared) = HolomorphFamily::new(q, bound)?;
    let mut claims = vec![Claim::fact("aut-shared", shared)];
    let kinds = [Pi2, Pi3, Pi4, Pi5, Pi6];
    let results: Vec<Claim> = INTERCHANGE_CASES
        .par_iter()
        .zip(kinds.par_iter())
        .map(|(case, &kind)| {
            let equal = case.lhs.build(&family).tables_equal(&case.rhs.build(&family));
            Claim::new(case.label, equal, q.tables_equal(&parastrophe(q, kind)))
        })
        .collect();
    claims.extend(results);
    Ok(InterchangeReport {
        holomorph_order: family.of(Pi1).order(),
        claims,
    })
}

/// For a group: each holomorph equivalence iff the named division
/// parastrophe of the group is associative.
pub fn group_holomorph_interchange_check(g: &Quasigroup) -> Result<InterchangeReport> {
    if g.identity_element().is_none() || !g.associative() {
        return Err(Error::Precondition("not a group".into()));
    }
    let (family, shared) = HolomorphFamily::new(g, DEFAULT_HOLOMORPH_BOUND)?;
    let mut claims = vec![Claim::fact("aut-shared", shared)];
    let results: Vec<Claim> = GROUP_INTERCHANGE_CASES
        .par_iter()
        .map(|(case, kind)| {
            let equal = case.lhs.build(&family).tables_equal(&case.rhs.build(&family));
            Claim::new(case.label, equal, parastrophe(g, *kind).associative())
        })
        .collect();
    claims.extend(results);
    Ok(InterchangeReport {
        holomorph_order: family.of(Pi1).order(),
        claims,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isotopy::find_isomorphism;

    #[test]
    fn automorphism_groups_by_brute_force() {
        let brute = |q: &Quasigroup| -> Vec<Perm> {
            Perm::all(q.order())
                .filter(|p| {
                    (0..q.order()).all(|x| (0..q.order()).all(|y| q.op(p.apply(x), p.apply(y)) == p.apply(q.op(x, y))))
                })
                .collect()
        };
        for q in [
            Quasigroup::cyclic(2),
            Quasigroup::cyclic(3),
            Quasigroup::cyclic(4),
            Quasigroup::klein_four(),
            Quasigroup::totally_symmetric_z3(),
        ] {
            let aut = automorphism_group(&q).unwrap();
            assert_eq!(aut.perms(), brute(&q).as_slice());
            assert!(aut.is_group());
            assert!(aut.perms()[0].is_identity());
        }
        assert_eq!(
            automorphism_group(&Quasigroup::cyclic(3)).unwrap().perms()[1].images(),
            &[0, 2, 1]
        );
        assert_eq!(automorphism_group(&Quasigroup::cyclic(2)).unwrap().len(), 1);
        assert_eq!(automorphism_group(&Quasigroup::klein_four()).unwrap().len(), 6);
    }

    #[test]
    fn holomorph_of_z2_is_z2() {
        let h = build_holomorph(&Quasigroup::cyclic(2)).unwrap();
        assert_eq!(h.table, Quasigroup::cyclic(2));
    }

    #[test]
    fn holomorph_of_z3_is_s3() {
        let h = build_holomorph(&Quasigroup::cyclic(3)).unwrap();
        assert_eq!(h.order(), 6);
        assert!(h.table.associative());
        assert!(!h.table.is_commutative());
        assert_eq!(h.table.identity_element(), Some(0));
        // S3 as permutations of three points, composed left to right
        let perms: Vec<Perm> = Perm::all(3).collect();
        let s3 = Quasigroup::from_fn(6, |a, b| {
            let c = perms[a].then(&perms[b]);
            perms.iter().position(|p| *p == c).unwrap()
        })
        .unwrap();
        assert!(find_isomorphism(&h.table, &s3).is_some());
    }

    #[test]
    fn holomorph_product_rule() {
        let q = Quasigroup::totally_symmetric_z3();
        let h = build_holomorph(&q).unwrap();
        assert_eq!(h.order(), h.automorphisms.len() * 3);
        let auts = h.automorphisms.perms();
        for code1 in 0..h.order() {
            for code2 in 0..h.order() {
                let (e1, e2) = (h.decode(code1), h.decode(code2));
                let ab = auts[e1.aut_index].then(&auts[e2.aut_index]);
                let expected = HolomorphElement {
                    aut_index: h.automorphisms.index_of(&ab).unwrap(),
                    point: q.op(auts[e2.aut_index].apply(e1.point), e2.point),
                };
                assert_eq!(h.decode(h.table.op(code1, code2)), expected);
                assert_eq!(h.encode(e1), code1);
            }
        }
    }

    #[test]
    fn holomorph_bound() {
        let q = Quasigroup::klein_four();
        assert!(matches!(
            build_holomorph_bounded(&q, 23),
            Err(Error::BoundExceeded { .. })
        ));
        assert_eq!(build_holomorph_bounded(&q, 24).unwrap().order(), 24);
    }

    #[test]
    fn interchange_examples() {
        let r = holomorph_interchange_check(&Quasigroup::cyclic(3)).unwrap();
        assert!(r.all_ok(), "{r:?}");
        let case = |id: &str| r.claims.iter().find(|c| c.id == id).unwrap().clone();
        assert!(case("case1").lhs && case("case1").rhs);
        assert!(!case("case2").lhs && !case("case2").rhs);

        let r = holomorph_interchange_check(&Quasigroup::cyclic(2)).unwrap();
        assert!(r.all_ok());
        assert!(r.claims.iter().all(|c| c.lhs && c.rhs));
    }

    #[test]
    fn group_interchange_small() {
        let r = group_holomorph_interchange_check(&Quasigroup::cyclic(2)).unwrap();
        assert!(r.claims.iter().all(|c| c.lhs && c.rhs));
        let r = group_holomorph_interchange_check(&Quasigroup::cyclic(3)).unwrap();
        let part1 = r.claims.iter().find(|c| c.id == "part1").unwrap();
        assert!(!part1.lhs && !part1.rhs);
        assert!(matches!(
            group_holomorph_interchange_check(&Quasigroup::totally_symmetric_z3()),
            Err(Error::Precondition(_))
        ));
    }
}
