//! Equational identities over `*`, `\` and `/`, checked by exhaustive
//! assignment in a finite quasigroup.

mod parse;
mod term;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

pub use parse::{parse_identity, parse_term};
pub use term::{BinOp, Identity, Term};

use crate::claim::{all_ok, Claim};
use crate::error::{Error, Result};
use crate::isotopy::{associativity_families, IsotopismTriple};
use crate::parastrophe::{parastrophe, ParastropheKind};
use crate::perm::Perm;
use crate::quasigroup::Quasigroup;
use crate::Element;

/// Most variables [`identity_holds`] will enumerate over.
pub const MAX_IDENTITY_VARS: usize = 6;

/// Largest order accepted by [`khalil_suite`].
pub const KHALIL_ORDER_BOUND: usize = 16;

pub type Assignment = BTreeMap<char, Element>;

pub fn evaluate_term(q: &Quasigroup, t: &Term, asg: &Assignment) -> Result<Element> {
    Ok(match t {
        Term::Var(v) => {
            let x = *asg.get(v).ok_or(Error::UnboundVariable(*v))?;
            if x >= q.order() {
                return Err(Error::ElementOutOfRange {
                    value: x,
                    order: q.order(),
                });
            }
            x
        }
        Term::Op(op, l, r) => {
            let (a, b) = (evaluate_term(q, l, asg)?, evaluate_term(q, r, asg)?);
            apply(q, *op, a, b)
        }
    })
}

#[inline]
fn apply(q: &Quasigroup, op: BinOp, a: Element, b: Element) -> Element {
    match op {
        BinOp::Mul => q.op(a, b),
        BinOp::LeftDiv => q.ldiv(a, b),
        BinOp::RightDiv => q.rdiv(a, b),
    }
}

#[derive(Debug, Clone, Copy)]
enum Instr {
    Load(usize),
    Apply(BinOp),
}

/// Postfix form of a term with variables resolved to slots.
struct Compiled(Vec<Instr>);

impl Compiled {
    fn new(t: &Term, vars: &[char]) -> Compiled {
        fn go(t: &Term, vars: &[char], out: &mut Vec<Instr>) {
            match t {
                Term::Var(v) => out.push(Instr::Load(vars.iter().position(|w| w == v).expect("collected"))),
                Term::Op(op, l, r) => {
                    go(l, vars, out);
                    go(r, vars, out);
                    out.push(Instr::Apply(*op));
                }
            }
        }
        let mut out = Vec::new();
        go(t, vars, &mut out);
        Compiled(out)
    }

    fn eval(&self, q: &Quasigroup, slots: &[Element], stack: &mut Vec<Element>) -> Element {
        stack.clear();
        for ins in &self.0 {
            match *ins {
                Instr::Load(i) => stack.push(slots[i]),
                Instr::Apply(op) => {
                    let b = stack.pop().expect("well-formed");
                    let a = stack.pop().expect("well-formed");
                    stack.push(apply(q, op, a, b));
                }
            }
        }
        stack[0]
    }
}

/// `None` if `id` holds under every assignment; otherwise the first failing
/// assignment in lexicographic order (variables sorted, first most
/// significant).
pub fn identity_holds(q: &Quasigroup, id: &Identity) -> Result<Option<Assignment>> {
    let k = id.vars.len();
    if k > MAX_IDENTITY_VARS {
        return Err(Error::BoundExceeded {
            what: "identity variable count",
            limit: MAX_IDENTITY_VARS,
            actual: k,
        });
    }
    let n = q.order();
    let lhs = Compiled::new(&id.lhs, &id.vars);
    let rhs = Compiled::new(&id.rhs, &id.vars);
    let to_assignment = |slots: &[Element]| id.vars.iter().copied().zip(slots.iter().copied()).collect();
    if k == 0 {
        let mut stack = Vec::new();
        let ok = lhs.eval(q, &[], &mut stack) == rhs.eval(q, &[], &mut stack);
        return Ok((!ok).then(Assignment::new));
    }
    // workers split on the first variable; find_map_first keeps the
    // lexicographically least failure
    let failure = (0..n).into_par_iter().find_map_first(|first| {
        let mut slots = vec![0; k];
        slots[0] = first;
        let mut stack = Vec::with_capacity(16);
        loop {
            if lhs.eval(q, &slots, &mut stack) != rhs.eval(q, &slots, &mut stack) {
                return Some(slots);
            }
            // odometer over slots[1..]
            let mut i = k;
            loop {
                i -= 1;
                if i == 0 {
                    return None;
                }
                slots[i] += 1;
                if slots[i] < n {
                    break;
                }
                slots[i] = 0;
            }
        }
    });
    Ok(failure.map(|s| to_assignment(&s)))
}

/// Every variable occurs exactly once on each side.
pub fn is_balanced(id: &Identity) -> bool {
    id.vars
        .iter()
        .all(|&v| id.lhs.occurrences(v) == 1 && id.rhs.occurrences(v) == 1)
}

/// Source text of the built-in identities, with `*` for juxtaposition.
pub const BUILTINS: [(&str, &str); 8] = [
    ("assoc", "x*(y*z) = (x*y)*z"),
    ("comm", "x*y = y*x"),
    ("khalil1", "x*{z\\[(z/u)*v]} = {[x*(z\\z)]/u}*v"),
    ("khalil2", "x*{u\\[(z/u)*v]} = {[x*(u\\z)]/u}*v"),
    ("khalil3", "x*{z\\[(u/u)*v]} = {[x*(z\\u)]/u}*v"),
    ("khalil4", "x*[y\\{[(y*y)/z]*u}] = [{x*[y\\(y*y)]}/z]*u"),
    ("khalil5", "x*[y\\{[(y*z)/y]*u}] = [{x*[y\\(y*z)]}/y]*u"),
    ("khalil6", "x*[z\\{[(y*y)/y]*u}] = [{x*[z\\(y*y)]}/y]*u"),
];

pub fn builtin(name: &str) -> Option<Identity> {
    BUILTINS
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| parse_identity(src).expect("built-in identities parse"))
}

/// The six identities characterising isotopes of groups.
pub fn khalil_identities() -> [Identity; 6] {
    std::array::from_fn(|i| builtin(&format!("khalil{}", i + 1)).expect("present"))
}

/// Whether each Khalil identity holds in `q`.
pub fn khalil_suite(q: &Quasigroup) -> Result<[bool; 6]> {
    if q.order() > KHALIL_ORDER_BOUND {
        return Err(Error::BoundExceeded {
            what: "Khalil suite order",
            limit: KHALIL_ORDER_BOUND,
            actual: q.order(),
        });
    }
    let ids = khalil_identities();
    let mut out = [false; 6];
    for (slot, id) in out.iter_mut().zip(&ids) {
        *slot = identity_holds(q, id)?.is_none();
    }
    Ok(out)
}

/// Permutations for `[(xP1·yP2)P3·zP4]P5 = [xQ1·(yQ2·zQ3)Q4]Q5`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvansWitness {
    pub p: [Perm; 5],
    pub q: [Perm; 5],
}

impl EvansWitness {
    pub fn identity(n: usize) -> EvansWitness {
        EvansWitness {
            p: std::array::from_fn(|_| Perm::identity(n)),
            q: std::array::from_fn(|_| Perm::identity(n)),
        }
    }

    /// From ten permutations in the order `P1..P5, Q1..Q5`.
    pub fn from_perms(perms: Vec<Perm>) -> Result<EvansWitness> {
        if perms.len() != 10 {
            return Err(Error::Precondition(format!(
                "Evans witness needs 10 permutations, got {}",
                perms.len()
            )));
        }
        let n = perms[0].degree();
        if let Some(p) = perms.iter().find(|p| p.degree() != n) {
            return Err(Error::DegreeMismatch {
                left: n,
                right: p.degree(),
            });
        }
        let mut it = perms.into_iter();
        Ok(EvansWitness {
            p: std::array::from_fn(|_| it.next().expect("len checked")),
            q: std::array::from_fn(|_| it.next().expect("len checked")),
        })
    }

    /// The law read off an isotopism `t: G -> Q` from a group `G`.
    ///
    /// `x·y = (xA ∘ yB)C⁻¹`, and associativity of `·` rewritten in `∘` gives
    /// `P = (A, B, C⁻¹A, B, C⁻¹)` and `Q = (A, A, B, C⁻¹B, C⁻¹)`.
    pub fn from_group_isotopism(t: &IsotopismTriple) -> EvansWitness {
        let c_inv = t.c.inverse();
        EvansWitness {
            p: [t.a.clone(), t.b.clone(), c_inv.then(&t.a), t.b.clone(), c_inv.clone()],
            q: [t.a.clone(), t.a.clone(), t.b.clone(), c_inv.then(&t.b), c_inv],
        }
    }

    pub fn degree(&self) -> usize {
        self.p[0].degree()
    }
}

/// Whether the Evans law with witness `w` holds for every `(x, y, z)`.
pub fn evans_check(q: &Quasigroup, w: &EvansWitness) -> Result<bool> {
    let n = q.order();
    if let Some(p) = w.p.iter().chain(&w.q).find(|p| p.degree() != n) {
        return Err(Error::DegreeMismatch {
            left: n,
            right: p.degree(),
        });
    }
    let [p1, p2, p3, p4, p5] = &w.p;
    let [q1, q2, q3, q4, q5] = &w.q;
    Ok((0..n).all(|x| {
        (0..n).all(|y| {
            let left_xy = p3.apply(q.op(p1.apply(x), p2.apply(y)));
            (0..n).all(|z| {
                let lhs = p5.apply(q.op(left_xy, p4.apply(z)));
                let inner = q4.apply(q.op(q2.apply(y), q3.apply(z)));
                let rhs = q5.apply(q.op(q1.apply(x), inner));
                lhs == rhs
            })
        })
    }))
}

/// Largest order for [`evans_search`].
pub const EVANS_SEARCH_BOUND: usize = 3;

/// Existential search for an Evans witness.
///
/// Substituting `x -> xP1⁻¹`, `y -> yP2⁻¹`, `z -> zP4⁻¹` and cancelling `P5`
/// lets `P1 = P2 = P4 = P5 = I` without loss; `Q5` is then forced, leaving
/// `P3, Q1..Q4` to enumerate.
pub fn evans_search(q: &Quasigroup) -> Result<Option<EvansWitness>> {
    let n = q.order();
    if n > EVANS_SEARCH_BOUND {
        return Err(Error::BoundExceeded {
            what: "Evans search order",
            limit: EVANS_SEARCH_BOUND,
            actual: n,
        });
    }
    let perms: Vec<Perm> = Perm::all(n).collect();
    let id = Perm::identity(n);
    for p3 in &perms {
        for q1 in &perms {
            for q2 in &perms {
                for q3 in &perms {
                    for q4 in &perms {
                        if let Some(q5) = forced_q5(q, p3, [q1, q2, q3, q4]) {
                            let w = EvansWitness {
                                p: [id.clone(), id.clone(), p3.clone(), id.clone(), id.clone()],
                                q: [q1.clone(), q2.clone(), q3.clone(), q4.clone(), q5],
                            };
                            debug_assert!(evans_check(q, &w).unwrap_or(false));
                            return Ok(Some(w));
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

fn forced_q5(q: &Quasigroup, p3: &Perm, [q1, q2, q3, q4]: [&Perm; 4]) -> Option<Perm> {
    let n = q.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    for x in 0..n {
        for y in 0..n {
            let xy = p3.apply(q.op(x, y));
            for z in 0..n {
                let lhs = q.op(xy, z);
                let rhs = q.op(q1.apply(x), q4.apply(q.op(q2.apply(y), q3.apply(z))));
                if map[rhs] == usize::MAX {
                    if used[lhs] {
                        return None;
                    }
                    map[rhs] = lhs;
                    used[lhs] = true;
                } else if map[rhs] != lhs {
                    return None;
                }
            }
        }
    }
    if map.contains(&usize::MAX) {
        return None;
    }
    Some(Perm::from_images_unchecked(map))
}

#[derive(Debug, Clone, Serialize)]
pub struct KhalilParastrophesReport {
    /// Khalil verdicts for each division parastrophe.
    pub verdicts: Vec<(ParastropheKind, [bool; 6])>,
    pub claims: Vec<Claim>,
}

impl KhalilParastrophesReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

fn require_group(g: &Quasigroup) -> Result<()> {
    if g.identity_element().is_some() && g.associative() {
        Ok(())
    } else {
        Err(Error::Precondition("not a group".into()))
    }
}

/// For a group `g`, each of the four division parastrophes satisfies all
/// six Khalil identities, and the Evans law with the witness assembled
/// from its family isotopism at the identity element.
pub fn khalil_on_parastrophes_check(g: &Quasigroup) -> Result<KhalilParastrophesReport> {
    require_group(g)?;
    let e = g.identity_element().expect("checked");
    let families = associativity_families(g);
    let mut verdicts = Vec::new();
    let mut claims = Vec::new();
    for kind in ParastropheKind::DIVISION {
        let p = parastrophe(g, kind);
        let verdict = khalil_suite(&p)?;
        for (i, holds) in verdict.iter().enumerate() {
            claims.push(Claim::fact(format!("{kind}/khalil{}", i + 1), *holds));
        }
        let family = families
            .iter()
            .find(|f| f.target == kind)
            .expect("one family per target");
        let (_, triple, is_iso) = &family.members[e];
        let witness = EvansWitness::from_group_isotopism(triple);
        claims.push(Claim::fact(
            format!("{kind}/evans"),
            *is_iso && evans_check(&p, &witness)?,
        ));
        verdicts.push((kind, verdict));
    }
    Ok(KhalilParastrophesReport { verdicts, claims })
}

#[derive(Debug, Clone, Serialize)]
pub struct ParastropheEquivalenceReport {
    pub claims: Vec<Claim>,
}

impl ParastropheEquivalenceReport {
    pub fn all_ok(&self) -> bool {
        all_ok(&self.claims)
    }
}

/// For a group: `θ ≡ (θ⁻¹)*`, `θ* ≡ θ⁻¹`, `θ ≡ (⁻¹θ)*`, `θ* ≡ ⁻¹θ`, each iff
/// its right-hand parastrophe is associative.
pub fn parastrophe_equivalence_check(g: &Quasigroup) -> Result<ParastropheEquivalenceReport> {
    use ParastropheKind::*;
    require_group(g)?;
    let claims = [(Pi1, Pi5), (Pi2, Pi3), (Pi1, Pi6), (Pi2, Pi4)]
        .iter()
        .enumerate()
        .map(|(i, &(a, b))| {
            let pb = parastrophe(g, b);
            Claim::new(
                format!("part{}", i + 1),
                parastrophe(g, a).tables_equal(&pb),
                pb.associative(),
            )
        })
        .collect();
    Ok(ParastropheEquivalenceReport { claims })
}
