//! Isotopisms, isotopy and isomorphism search, and the checks built on them.

use rayon::prelude::*;
use serde::Serialize;

use crate::claim::{all_ok, Claim};
use crate::error::{Error, Result};
use crate::parastrophe::{parastrophe, ParastropheKind};
use crate::perm::Perm;
use crate::quasigroup::{NucleusKind, Quasigroup, Side};
use crate::Element;

/// Largest order accepted by [`find_isotopism`] without an explicit bound.
pub const DEFAULT_ISOTOPY_BOUND: usize = 6;

/// `(A, B, C)` with `xA ⊗ yB = (x ⊕ y)C`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IsotopismTriple {
    pub a: Perm,
    pub b: Perm,
    pub c: Perm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TripleShape {
    /// `(A, I, A)`
    LeftOnly,
    /// `(I, B, B)`
    RightOnly,
    Other,
}

impl IsotopismTriple {
    pub fn new(a: Perm, b: Perm, c: Perm) -> Result<IsotopismTriple> {
        for p in [&b, &c] {
            if p.degree() != a.degree() {
                return Err(Error::DegreeMismatch {
                    left: a.degree(),
                    right: p.degree(),
                });
            }
        }
        Ok(IsotopismTriple { a, b, c })
    }

    pub fn identity(n: usize) -> IsotopismTriple {
        let i = Perm::identity(n);
        IsotopismTriple {
            a: i.clone(),
            b: i.clone(),
            c: i,
        }
    }

    /// `(φ, φ, φ)`
    pub fn isomorphism(phi: Perm) -> IsotopismTriple {
        IsotopismTriple {
            a: phi.clone(),
            b: phi.clone(),
            c: phi,
        }
    }

    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    pub fn inverse(&self) -> IsotopismTriple {
        IsotopismTriple {
            a: self.a.inverse(),
            b: self.b.inverse(),
            c: self.c.inverse(),
        }
    }

    /// Componentwise `self` then `other`.
    pub fn then(&self, other: &IsotopismTriple) -> IsotopismTriple {
        IsotopismTriple {
            a: self.a.then(&other.a),
            b: self.b.then(&other.b),
            c: self.c.then(&other.c),
        }
    }

    pub fn shape(&self) -> TripleShape {
        if self.b.is_identity() && self.a == self.c {
            TripleShape::LeftOnly
        } else if self.a.is_identity() && self.b == self.c {
            TripleShape::RightOnly
        } else {
            TripleShape::Other
        }
    }
}

fn same_degree(t: &IsotopismTriple, q1: &Quasigroup, q2: &Quasigroup) -> Result<()> {
    for n in [q1.order(), q2.order()] {
        if n != t.degree() {
            return Err(Error::DegreeMismatch {
                left: t.degree(),
                right: n,
            });
        }
    }
    Ok(())
}

/// `mul_q2(xA, yB) == mul_q1(x, y)C` for every pair.
pub fn is_isotopism(t: &IsotopismTriple, q1: &Quasigroup, q2: &Quasigroup) -> Result<bool> {
    same_degree(t, q1, q2)?;
    let n = q1.order();
    Ok((0..n).all(|x| (0..n).all(|y| q2.op(t.a.apply(x), t.b.apply(y)) == t.c.apply(q1.op(x, y)))))
}

/// The same test through translations: `R'_{xB} = A⁻¹ R_x C` for every `x`.
pub fn is_isotopism_by_translations(t: &IsotopismTriple, q1: &Quasigroup, q2: &Quasigroup) -> Result<bool> {
    same_degree(t, q1, q2)?;
    let a_inv = t.a.inverse();
    for x in 0..q1.order() {
        let lhs = q2.translation(Side::Right, t.b.apply(x))?;
        let rhs = a_inv.then(&q1.translation(Side::Right, x)?).then(&t.c);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Left-translation form: `L'_{yA} = B⁻¹ L_y C` for every `y`.
pub fn is_isotopism_by_left_translations(t: &IsotopismTriple, q1: &Quasigroup, q2: &Quasigroup) -> Result<bool> {
    same_degree(t, q1, q2)?;
    let b_inv = t.b.inverse();
    for y in 0..q1.order() {
        let lhs = q2.translation(Side::Left, t.a.apply(y))?;
        let rhs = b_inv.then(&q1.translation(Side::Left, y)?).then(&t.c);
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The isotope `x ∘ y = (xA⁻¹ · yB⁻¹)C`, so that `t` maps `q` onto it.
pub fn apply_isotopism(q: &Quasigroup, t: &IsotopismTriple) -> Result<Quasigroup> {
    if q.order() != t.degree() {
        return Err(Error::DegreeMismatch {
            left: t.degree(),
            right: q.order(),
        });
    }
    let n = q.order();
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            table[t.a.apply(x) * n + t.b.apply(y)] = t.c.apply(q.op(x, y));
        }
    }
    Quasigroup::new(n, table)
}

/// Forces `C` from `(A, B)`: `C(x·y) := xA ∘ yB`, if that is a bijection.
fn forced_third(q1: &Quasigroup, q2: &Quasigroup, a: &Perm, b: &Perm) -> Option<Perm> {
    let n = q1.order();
    let mut c = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            let src = q1.op(x, y);
            let dst = q2.op(a.apply(x), b.apply(y));
            if c[src] == usize::MAX {
                if used[dst] {
                    return None;
                }
                c[src] = dst;
                used[dst] = true;
            } else if c[src] != dst {
                return None;
            }
        }
    }
    Some(Perm::from_images_unchecked(c))
}

/// Searches for an isotopism `q1 -> q2` with the default order bound.
pub fn find_isotopism(q1: &Quasigroup, q2: &Quasigroup) -> Result<Option<IsotopismTriple>> {
    find_isotopism_bounded(q1, q2, DEFAULT_ISOTOPY_BOUND)
}

/// Exhaustive over `(A, B)`; `C` is forced. Returns the least `(A, B)` in
/// lexicographic order independent of thread count.
pub fn find_isotopism_bounded(q1: &Quasigroup, q2: &Quasigroup, bound: usize) -> Result<Option<IsotopismTriple>> {
    let n = q1.order();
    if q2.order() != n {
        return Ok(None);
    }
    if n > bound {
        return Err(Error::BoundExceeded {
            what: "isotopism search order",
            limit: bound,
            actual: n,
        });
    }
    let perms: Vec<Perm> = Perm::all(n).collect();
    let found = perms.par_iter().find_map_first(|a| {
        perms.iter().find_map(|b| {
            forced_third(q1, q2, a, b).map(|c| IsotopismTriple {
                a: a.clone(),
                b: b.clone(),
                c,
            })
        })
    });
    Ok(found)
}

struct IsoSearch<'a> {
    q1: &'a Quasigroup,
    q2: &'a Quasigroup,
}

impl IsoSearch<'_> {
    /// Closes the partial map under products. `mapped[..start]` is already
    /// closed; every later point is paired against everything before it.
    /// Returns false on a contradiction.
    fn propagate(&self, map: &mut [usize], used: &mut [bool], mut mapped: Vec<Element>, start: usize) -> bool {
        let mut head = start;
        while head < mapped.len() {
            let x = mapped[head];
            head += 1;
            for i in 0..head {
                let y = mapped[i];
                for (u, v) in [(x, y), (y, x)] {
                    let src = self.q1.op(u, v);
                    let dst = self.q2.op(map[u], map[v]);
                    if map[src] == usize::MAX {
                        if used[dst] {
                            return false;
                        }
                        map[src] = dst;
                        used[dst] = true;
                        mapped.push(src);
                    } else if map[src] != dst {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn search(&self, map: Vec<usize>, used: Vec<bool>, out: &mut Vec<Perm>, first_only: bool) {
        let Some(x) = map.iter().position(|&m| m == usize::MAX) else {
            out.push(Perm::from_images_unchecked(map));
            return;
        };
        let mapped: Vec<Element> = (0..map.len()).filter(|&i| map[i] != usize::MAX).collect();
        for y in 0..map.len() {
            if used[y] {
                continue;
            }
            let (mut m, mut u) = (map.clone(), used.clone());
            m[x] = y;
            u[y] = true;
            let start = mapped.len();
            let mut points = mapped.clone();
            points.push(x);
            if self.propagate(&mut m, &mut u, points, start) {
                self.search(m, u, out, first_only);
                if first_only && !out.is_empty() {
                    return;
                }
            }
        }
    }
}

fn isomorphisms(q1: &Quasigroup, q2: &Quasigroup, first_only: bool) -> Vec<Perm> {
    let n = q1.order();
    if q2.order() != n {
        return Vec::new();
    }
    let search = IsoSearch { q1, q2 };
    let mut out = Vec::new();
    search.search(vec![usize::MAX; n], vec![false; n], &mut out, first_only);
    out
}

/// Lexicographically least isomorphism `φ` with `(xy)φ = xφ ∘ yφ`, if any.
///
/// Backtracks over the image of the least unmapped point and closes the
/// partial map under products after every choice.
pub fn find_isomorphism(q1: &Quasigroup, q2: &Quasigroup) -> Option<Perm> {
    isomorphisms(q1, q2, true).into_iter().next()
}

/// Every isomorphism `q1 -> q2`, in lexicographic order of image tuples.
pub fn all_isomorphisms(q1: &Quasigroup, q2: &Quasigroup) -> Vec<Perm> {
    isomorphisms(q1, q2, false)
}

/// One of the four translation families that witness associativity.
#[derive(Debug, Clone, Serialize)]
pub struct TripleFamily {
    pub label: &'static str,
    pub source: ParastropheKind,
    pub target: ParastropheKind,
    /// `(s, triple, is an isotopism source -> target)` for every `s`.
    pub members: Vec<(Element, IsotopismTriple, bool)>,
}

impl TripleFamily {
    pub fn all_isotopisms(&self) -> bool {
        self.members.iter().all(|m| m.2)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct AssociativityFamiliesReport {
    pub associative: bool,
    pub families: Vec<TripleFamily>,
    pub claims: Vec<Claim>,
}

impl AssociativityFamiliesReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// The four families, built from `𝓡_s: z ↦ z \ s` and `𝐋_s: z ↦ s / z`:
///
/// 1. `(𝓡_s, I, 𝓡_s): θ → (θ⁻¹)*`
/// 2. `(I, 𝓡_s, 𝓡_s): θ* → θ⁻¹`
/// 3. `(I, 𝐋_s, 𝐋_s): θ → (⁻¹θ)*`
/// 4. `(𝐋_s, I, 𝐋_s): θ* → ⁻¹θ`
pub fn associativity_families(q: &Quasigroup) -> Vec<TripleFamily> {
    use ParastropheKind::*;
    let n = q.order();
    let id = Perm::identity(n);
    let p3 = parastrophe(q, Pi3);
    let p4 = parastrophe(q, Pi4);
    let curly_r = |s| p3.translation(Side::Right, s).expect("in range");
    let bold_l = |s| p4.translation(Side::Left, s).expect("in range");
    type Member<'a> = Box<dyn Fn(Element) -> IsotopismTriple + 'a>;
    let specs: [(&'static str, ParastropheKind, ParastropheKind, Member); 4] = [
        (
            "eq1",
            Pi1,
            Pi5,
            Box::new(|s| {
                let r = curly_r(s);
                IsotopismTriple {
                    a: r.clone(),
                    b: id.clone(),
                    c: r,
                }
            }),
        ),
        (
            "eq2",
            Pi2,
            Pi3,
            Box::new(|s| {
                let r = curly_r(s);
                IsotopismTriple {
                    a: id.clone(),
                    b: r.clone(),
                    c: r,
                }
            }),
        ),
        (
            "eq3",
            Pi1,
            Pi6,
            Box::new(|s| {
                let l = bold_l(s);
                IsotopismTriple {
                    a: id.clone(),
                    b: l.clone(),
                    c: l,
                }
            }),
        ),
        (
            "eq4",
            Pi2,
            Pi4,
            Box::new(|s| {
                let l = bold_l(s);
                IsotopismTriple {
                    a: l.clone(),
                    b: id.clone(),
                    c: l,
                }
            }),
        ),
    ];
    specs
        .iter()
        .map(|(label, source, target, make)| {
            let from = parastrophe(q, *source);
            let to = parastrophe(q, *target);
            let members = (0..n)
                .map(|s| {
                    let t = make(s);
                    let holds = is_isotopism(&t, &from, &to).expect("same degree");
                    (s, t, holds)
                })
                .collect();
            TripleFamily {
                label,
                source: *source,
                target: *target,
                members,
            }
        })
        .collect()
}

/// Each family consists entirely of isotopisms iff `q` is associative, and
/// every emitted triple has shape `(A, I, A)` or `(I, B, B)`.
pub fn associativity_families_check(q: &Quasigroup) -> AssociativityFamiliesReport {
    let associative = q.associative();
    let families = associativity_families(q);
    let mut claims: Vec<Claim> = families
        .iter()
        .map(|f| Claim::new(f.label, f.all_isotopisms(), associative))
        .collect();
    claims.push(Claim::new(
        "all",
        families.iter().all(TripleFamily::all_isotopisms),
        associative,
    ));
    let shapes_ok = families
        .iter()
        .flat_map(|f| &f.members)
        .all(|(_, t, _)| t.shape() != TripleShape::Other);
    claims.push(Claim::fact("remark-shape", shapes_ok));
    AssociativityFamiliesReport {
        associative,
        families,
        claims,
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct NucleusCriterionReport {
    pub claims: Vec<Claim>,
}

impl NucleusCriterionReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// For a loop `g` with identity `e` and an isotopism `t: g -> h`:
/// with `C = B`, `A` is an isomorphism iff `eB` is in the right nucleus of
/// `h`; with `C = A`, `B` is an isomorphism iff `eA` is in the left nucleus.
///
/// Also records the factorisations `B = A R'_{eB}` and `A = B L'_{eA}` and
/// the autotopism `(I, R'_c, R'_c)` (resp. `(L'_c, I, L'_c)`) of `h`.
pub fn nucleus_criterion_check(g: &Quasigroup, h: &Quasigroup, t: &IsotopismTriple) -> Result<NucleusCriterionReport> {
    let e = g
        .identity_element()
        .ok_or_else(|| Error::Precondition("source quasigroup has no identity element".into()))?;
    if !is_isotopism(t, g, h)? {
        return Err(Error::Precondition("triple is not an isotopism".into()));
    }
    let right_case = t.c == t.b;
    let left_case = t.c == t.a;
    if !right_case && !left_case {
        return Err(Error::Precondition("triple has neither C = B nor C = A".into()));
    }
    let n = g.order();
    let id = Perm::identity(n);
    let mut claims = vec![
        Claim::fact("translations/right", is_isotopism_by_translations(t, g, h)?),
        Claim::fact("translations/left", is_isotopism_by_left_translations(t, g, h)?),
    ];
    if right_case {
        let c = t.b.apply(e);
        let r = h.translation(Side::Right, c)?;
        let a_iso = is_isotopism(&IsotopismTriple::isomorphism(t.a.clone()), g, h)?;
        claims.push(Claim::new("case1", a_iso, h.in_nucleus(NucleusKind::Right, c)));
        claims.push(Claim::fact("case1/factor", t.b == t.a.then(&r)));
        let auto = IsotopismTriple {
            a: id.clone(),
            b: r.clone(),
            c: r,
        };
        claims.push(Claim::new(
            "case1/autotopism",
            is_isotopism(&auto, h, h)?,
            h.in_nucleus(NucleusKind::Right, c),
        ));
    }
    if left_case {
        let c = t.a.apply(e);
        let l = h.translation(Side::Left, c)?;
        let b_iso = is_isotopism(&IsotopismTriple::isomorphism(t.b.clone()), g, h)?;
        claims.push(Claim::new("case2", b_iso, h.in_nucleus(NucleusKind::Left, c)));
        claims.push(Claim::fact("case2/factor", t.a == t.b.then(&l)));
        let auto = IsotopismTriple {
            a: l.clone(),
            b: id.clone(),
            c: l,
        };
        claims.push(Claim::new(
            "case2/autotopism",
            is_isotopism(&auto, h, h)?,
            h.in_nucleus(NucleusKind::Left, c),
        ));
    }
    Ok(NucleusCriterionReport { claims })
}

#[derive(Debug, Clone, Serialize)]
pub struct ParastropheIsotopyReport {
    pub base: IsotopismTriple,
    /// Witness for each of the six parastrophes, `None` if none was found.
    pub witnesses: Vec<(ParastropheKind, Option<IsotopismTriple>)>,
    pub claims: Vec<Claim>,
}

impl ParastropheIsotopyReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// If `q` is isotopic to the group `g`, so is every parastrophe of `q`.
pub fn group_isotope_parastrophes_check(q: &Quasigroup, g: &Quasigroup) -> Result<ParastropheIsotopyReport> {
    if !g.associative() {
        return Err(Error::Precondition("target is not a group".into()));
    }
    let base =
        find_isotopism(q, g)?.ok_or_else(|| Error::Precondition("quasigroup is not isotopic to the group".into()))?;
    let mut witnesses = Vec::new();
    let mut claims = Vec::new();
    for kind in ParastropheKind::ALL {
        let w = find_isotopism(&parastrophe(q, kind), g)?;
        claims.push(Claim::fact(kind.name(), w.is_some()));
        witnesses.push((kind, w));
    }
    Ok(ParastropheIsotopyReport {
        base,
        witnesses,
        claims,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct IsotopyIsomorphyReport {
    pub claims: Vec<Claim>,
}

impl IsotopyIsomorphyReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// For a group `g`: each of the four family isotopisms at `s` collapses to
/// the identity isomorphism (tables equal) iff the target parastrophe is
/// associative, iff the nucleus condition holds at the image of the
/// identity element.
pub fn isotopy_isomorphy_check(g: &Quasigroup) -> Result<IsotopyIsomorphyReport> {
    let e = g
        .identity_element()
        .filter(|_| g.associative())
        .ok_or_else(|| Error::Precondition("not a group".into()))?;
    let mut claims = Vec::new();
    for (part, family) in associativity_families(g).into_iter().enumerate() {
        let part = part + 1;
        let source = parastrophe(g, family.source);
        let target = parastrophe(g, family.target);
        let equal = source.tables_equal(&target);
        let target_assoc = target.associative();
        claims.push(Claim::new(format!("part{part}"), equal, target_assoc));
        debug_assert_eq!(source.identity_element(), Some(e));
        for (s, t, holds) in &family.members {
            claims.push(Claim::fact(format!("part{part}/isotopism/s{s}"), *holds));
            if !holds {
                continue;
            }
            let report = nucleus_criterion_check(&source, &target, t)?;
            // with B = I (resp. A = I) the isomorphism component is the
            // identity, i.e. the tables coincide
            let case = match t.shape() {
                TripleShape::LeftOnly => "case2",
                _ => "case1",
            };
            let nucleus = report.claims.iter().find(|c| c.id == case).expect("case claim present");
            claims.push(Claim::new(format!("part{part}/nucleus/s{s}"), equal, nucleus.rhs));
        }
    }
    Ok(IsotopyIsomorphyReport { claims })
}

/// One instance of the broad reading: is `source` isotopic (by any triple)
/// to `target`, compared with associativity of `q`.
#[derive(Debug, Clone, Serialize)]
pub struct ConverseProbe {
    pub label: &'static str,
    pub associative: bool,
    pub isotopic: bool,
    pub witness: Option<IsotopismTriple>,
}

impl ConverseProbe {
    /// Isotopic by some triple, yet not associative.
    pub fn is_counterexample(&self) -> bool {
        self.isotopic && !self.associative
    }
}

/// Runs an unrestricted isotopy search for each of the four
/// source/target pairs of the associativity families.
pub fn probe_isotopy_converse(q: &Quasigroup) -> Result<Vec<ConverseProbe>> {
    use ParastropheKind::*;
    let associative = q.associative();
    [
        ("eq1", Pi1, Pi5),
        ("eq2", Pi2, Pi3),
        ("eq3", Pi1, Pi6),
        ("eq4", Pi2, Pi4),
    ]
    .into_iter()
    .map(|(label, s, t)| {
        let witness = find_isotopism(&parastrophe(q, s), &parastrophe(q, t))?;
        Ok(ConverseProbe {
            label,
            associative,
            isotopic: witness.is_some(),
            witness,
        })
    })
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use ParastropheKind::*;

    fn z3() -> Quasigroup {
        Quasigroup::cyclic(3)
    }

    #[test]
    fn identity_triple_is_an_isotopism() {
        let q = Quasigroup::totally_symmetric_z3();
        assert!(is_isotopism(&IsotopismTriple::identity(3), &q, &q).unwrap());
        let z2 = Quasigroup::cyclic(2);
        assert!(is_isotopism(&IsotopismTriple::identity(2), &z2, &parastrophe(&z2, Pi5)).unwrap());
    }

    #[test]
    fn degree_mismatch_is_an_error() {
        let t = IsotopismTriple::identity(2);
        assert!(matches!(
            is_isotopism(&t, &z3(), &z3()),
            Err(Error::DegreeMismatch { .. })
        ));
        assert!(IsotopismTriple::new(Perm::identity(2), Perm::identity(3), Perm::identity(2)).is_err());
    }

    #[test]
    fn z3_eq1_at_zero() {
        let q = z3();
        let r0 = parastrophe(&q, Pi3).translation(Side::Right, 0).unwrap();
        // z \ 0 = -z
        assert_eq!(r0.images(), &[0, 2, 1]);
        let t = IsotopismTriple::new(r0.clone(), Perm::identity(3), r0).unwrap();
        assert!(is_isotopism(&t, &q, &parastrophe(&q, Pi5)).unwrap());
    }

    #[test]
    fn apply_isotopism_examples() {
        let q = Quasigroup::totally_symmetric_z3();
        assert_eq!(apply_isotopism(&q, &IsotopismTriple::identity(3)).unwrap(), q);
        let cyc = IsotopismTriple::isomorphism(Perm::cycle(3));
        let image = apply_isotopism(&z3(), &cyc).unwrap();
        assert!(is_isotopism(&cyc, &z3(), &image).unwrap());
        assert!(find_isomorphism(&z3(), &image).is_some());
        let t = IsotopismTriple::new(
            Perm::from_images(vec![2, 0, 1]).unwrap(),
            Perm::from_images(vec![1, 0, 2]).unwrap(),
            Perm::identity(3),
        )
        .unwrap();
        let iso = apply_isotopism(&q, &t).unwrap();
        assert!(is_isotopism(&t, &q, &iso).unwrap());
    }

    #[test]
    fn isotopism_search_examples() {
        let ts3 = Quasigroup::totally_symmetric_z3();
        let t = find_isotopism(&ts3, &ts3).unwrap().unwrap();
        assert!(is_isotopism(&t, &ts3, &ts3).unwrap());
        let t = find_isotopism(&z3(), &ts3).unwrap().unwrap();
        assert!(is_isotopism(&t, &z3(), &ts3).unwrap());
        assert!(find_isotopism(&Quasigroup::cyclic(4), &Quasigroup::klein_four())
            .unwrap()
            .is_none());
        assert!(find_isotopism(&z3(), &Quasigroup::cyclic(2)).unwrap().is_none());
        let big = Quasigroup::cyclic(7);
        assert!(matches!(find_isotopism(&big, &big), Err(Error::BoundExceeded { .. })));
    }

    #[test]
    fn isomorphism_search_examples() {
        let q = Quasigroup::cyclic(4);
        assert!(find_isomorphism(&q, &q).unwrap().is_identity());
        assert!(find_isomorphism(&q, &Quasigroup::klein_four()).is_none());
        let swap = IsotopismTriple::isomorphism(Perm::transposition(3, 0, 1).unwrap());
        let relabelled = apply_isotopism(&z3(), &swap).unwrap();
        let phi = find_isomorphism(&z3(), &relabelled).unwrap();
        assert!(is_isotopism(&IsotopismTriple::isomorphism(phi), &z3(), &relabelled).unwrap());
        assert_eq!(all_isomorphisms(&z3(), &z3()).len(), 2);
        assert_eq!(
            all_isomorphisms(&Quasigroup::klein_four(), &Quasigroup::klein_four()).len(),
            6
        );
    }

    #[test]
    fn families_on_named_tables() {
        let r = associativity_families_check(&z3());
        assert!(r.associative && r.all_ok());
        assert!(r.families.iter().all(|f| f.all_isotopisms() && f.members.len() == 3));

        let r = associativity_families_check(&Quasigroup::totally_symmetric_z3());
        assert!(!r.associative && r.all_ok());
        assert!(r.families.iter().any(|f| !f.all_isotopisms()));
    }

    #[test]
    fn nucleus_criterion_identity_triple() {
        let r = nucleus_criterion_check(&z3(), &z3(), &IsotopismTriple::identity(3)).unwrap();
        assert!(r.all_ok());
        assert!(r.claims.iter().any(|c| c.id == "case1" && c.lhs && c.rhs));
    }

    #[test]
    fn nucleus_criterion_preconditions() {
        let ts3 = Quasigroup::totally_symmetric_z3();
        let t = IsotopismTriple::identity(3);
        assert!(matches!(
            nucleus_criterion_check(&ts3, &ts3, &t),
            Err(Error::Precondition(_))
        ));
        let bad = IsotopismTriple::isomorphism(Perm::cycle(3));
        assert!(matches!(
            nucleus_criterion_check(&z3(), &z3(), &bad),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn parastrophes_of_group_isotopes() {
        let r = group_isotope_parastrophes_check(&z3(), &z3()).unwrap();
        assert!(r.all_ok());
        let r = group_isotope_parastrophes_check(&Quasigroup::totally_symmetric_z3(), &z3()).unwrap();
        assert!(r.all_ok());
        let t = IsotopismTriple::new(
            Perm::from_images(vec![1, 3, 0, 2]).unwrap(),
            Perm::from_images(vec![2, 1, 3, 0]).unwrap(),
            Perm::from_images(vec![3, 0, 2, 1]).unwrap(),
        )
        .unwrap();
        let iso = apply_isotopism(&Quasigroup::cyclic(4), &t).unwrap();
        let r = group_isotope_parastrophes_check(&iso, &Quasigroup::cyclic(4)).unwrap();
        assert!(r.all_ok());
        assert!(matches!(
            group_isotope_parastrophes_check(&z3(), &Quasigroup::totally_symmetric_z3()),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn isotopy_isomorphy_on_small_groups() {
        let r = isotopy_isomorphy_check(&Quasigroup::cyclic(2)).unwrap();
        assert!(r.all_ok());
        assert!(r
            .claims
            .iter()
            .filter(|c| c.id.starts_with("part") && c.id.len() == 5)
            .all(|c| c.lhs && c.rhs));
        let r = isotopy_isomorphy_check(&z3()).unwrap();
        assert!(r.all_ok());
        assert!(r.claims.iter().filter(|c| c.id.len() == 5).all(|c| !c.lhs && !c.rhs));
    }

    #[test]
    fn converse_probe_finds_ts3() {
        let probes = probe_isotopy_converse(&Quasigroup::totally_symmetric_z3()).unwrap();
        assert!(probes.iter().all(ConverseProbe::is_counterexample));
        let probes = probe_isotopy_converse(&z3()).unwrap();
        assert!(probes.iter().all(|p| p.isotopic && !p.is_counterexample()));
    }
}
