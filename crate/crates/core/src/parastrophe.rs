//! The six parastrophes (conjugates) of a quasigroup and their translations.
//!
//! Numbering is fixed here and nowhere else:
//!
//! | kind  | operation | table entry                 |
//! |-------|-----------|-----------------------------|
//! | `Pi1` | `θ`       | `x θ y`                     |
//! | `Pi2` | `θ*`      | `[y][x] = x θ y`            |
//! | `Pi3` | `θ⁻¹`     | `[x][z] = x \ z`            |
//! | `Pi4` | `⁻¹θ`     | `[z][y] = z / y`            |
//! | `Pi5` | `(θ⁻¹)*`  | `[z][x] = x \ z`            |
//! | `Pi6` | `(⁻¹θ)*`  | `[y][z] = z / y`            |

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::claim::Claim;
use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::quasigroup::{Quasigroup, Side};
use crate::Element;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ParastropheKind {
    Pi1,
    Pi2,
    Pi3,
    Pi4,
    Pi5,
    Pi6,
}

impl ParastropheKind {
    pub const ALL: [ParastropheKind; 6] = [
        ParastropheKind::Pi1,
        ParastropheKind::Pi2,
        ParastropheKind::Pi3,
        ParastropheKind::Pi4,
        ParastropheKind::Pi5,
        ParastropheKind::Pi6,
    ];

    /// The four division parastrophes.
    pub const DIVISION: [ParastropheKind; 4] = [
        ParastropheKind::Pi3,
        ParastropheKind::Pi4,
        ParastropheKind::Pi5,
        ParastropheKind::Pi6,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ParastropheKind::Pi1 => "pi1",
            ParastropheKind::Pi2 => "pi2",
            ParastropheKind::Pi3 => "pi3",
            ParastropheKind::Pi4 => "pi4",
            ParastropheKind::Pi5 => "pi5",
            ParastropheKind::Pi6 => "pi6",
        }
    }

    /// Typeset form of the operation symbol.
    pub fn symbol(self) -> &'static str {
        match self {
            ParastropheKind::Pi1 => "θ",
            ParastropheKind::Pi2 => "θ*",
            ParastropheKind::Pi3 => "θ⁻¹",
            ParastropheKind::Pi4 => "⁻¹θ",
            ParastropheKind::Pi5 => "(θ⁻¹)*",
            ParastropheKind::Pi6 => "(⁻¹θ)*",
        }
    }
}

impl fmt::Display for ParastropheKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ParastropheKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "pi1" | "id" => ParastropheKind::Pi1,
            "pi2" | "star" => ParastropheKind::Pi2,
            "pi3" | "rinv" => ParastropheKind::Pi3,
            "pi4" | "linv" => ParastropheKind::Pi4,
            "pi5" | "rinv-star" => ParastropheKind::Pi5,
            "pi6" | "linv-star" => ParastropheKind::Pi6,
            other => return Err(format!("unknown parastrophe kind '{other}'")),
        })
    }
}

/// Builds the `kind` parastrophe as a fresh table.
pub fn parastrophe(q: &Quasigroup, kind: ParastropheKind) -> Quasigroup {
    let n = q.order();
    let mut table = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let z = q.op(x, y);
            // each (x, y, z) triple of θ lands in exactly one cell
            let (row, col, val) = match kind {
                ParastropheKind::Pi1 => (x, y, z),
                ParastropheKind::Pi2 => (y, x, z),
                ParastropheKind::Pi3 => (x, z, y),
                ParastropheKind::Pi4 => (z, y, x),
                ParastropheKind::Pi5 => (z, x, y),
                ParastropheKind::Pi6 => (y, z, x),
            };
            table[row * n + col] = val;
        }
    }
    Quasigroup::new(n, table).expect("parastrophes of a quasigroup are Latin")
}

/// All six parastrophes, indexed like [`ParastropheKind::ALL`].
pub fn all_parastrophes(q: &Quasigroup) -> [Quasigroup; 6] {
    ParastropheKind::ALL.map(|k| parastrophe(q, k))
}

/// Whether `q` equals all six of its parastrophes.
pub fn is_totally_symmetric(q: &Quasigroup) -> bool {
    ParastropheKind::ALL[1..]
        .iter()
        .all(|&k| parastrophe(q, k).tables_equal(q))
}

/// A translation map of one of the parastrophes: `R*`, `𝓛`, `𝐋*` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TranslationSymbol {
    pub kind: ParastropheKind,
    pub side: Side,
}

impl TranslationSymbol {
    pub const fn new(kind: ParastropheKind, side: Side) -> Self {
        TranslationSymbol { kind, side }
    }

    pub fn name(self) -> &'static str {
        use ParastropheKind::*;
        match (self.kind, self.side) {
            (Pi1, Side::Right) => "R",
            (Pi1, Side::Left) => "L",
            (Pi2, Side::Right) => "R*",
            (Pi2, Side::Left) => "L*",
            (Pi3, Side::Right) => "𝓡",
            (Pi3, Side::Left) => "𝓛",
            (Pi4, Side::Right) => "𝐑",
            (Pi4, Side::Left) => "𝐋",
            (Pi5, Side::Right) => "𝓡*",
            (Pi5, Side::Left) => "𝓛*",
            (Pi6, Side::Right) => "𝐑*",
            (Pi6, Side::Left) => "𝐋*",
        }
    }
}

/// The translation `sym` at `x`, read off the corresponding parastrophe.
pub fn parastrophe_translation(q: &Quasigroup, sym: TranslationSymbol, x: Element) -> Result<Perm> {
    parastrophe(q, sym.kind).translation(sym.side, x)
}

/// One side of a translation identity: a symbol or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationTerm {
    Map(TranslationSymbol),
    Inverse(TranslationSymbol),
}

impl TranslationTerm {
    fn eval(self, translations: &[[Perm; 2]; 6]) -> Perm {
        let pick = |s: TranslationSymbol| {
            let side = match s.side {
                Side::Left => 0,
                Side::Right => 1,
            };
            &translations[s.kind as usize][side]
        };
        match self {
            TranslationTerm::Map(s) => pick(s).clone(),
            TranslationTerm::Inverse(s) => pick(s).inverse(),
        }
    }

    pub fn label(self) -> String {
        match self {
            TranslationTerm::Map(s) => s.name().to_string(),
            TranslationTerm::Inverse(s) => format!("{}⁻¹", s.name()),
        }
    }
}

/// The ten translation identities that hold in every quasigroup.
pub fn translation_identities() -> [(TranslationSymbol, TranslationTerm); 10] {
    use ParastropheKind::*;
    use TranslationTerm::{Inverse, Map};
    let s = TranslationSymbol::new;
    let (l, r) = (Side::Left, Side::Right);
    [
        (s(Pi2, r), Map(s(Pi1, l))),
        (s(Pi2, l), Map(s(Pi1, r))),
        (s(Pi3, l), Inverse(s(Pi1, l))),
        (s(Pi4, r), Inverse(s(Pi1, r))),
        (s(Pi5, r), Inverse(s(Pi1, l))),
        (s(Pi6, l), Inverse(s(Pi1, r))),
        (s(Pi3, l), Inverse(s(Pi2, r))),
        (s(Pi4, r), Inverse(s(Pi2, l))),
        (s(Pi5, r), Map(s(Pi3, l))),
        (s(Pi6, l), Map(s(Pi4, r))),
    ]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LemmaLine {
    pub label: String,
    /// `None` when the identity holds at every `x`.
    pub first_failure: Option<Element>,
}

impl LemmaLine {
    pub fn holds(&self) -> bool {
        self.first_failure.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TranslationLemmaReport {
    pub lines: Vec<LemmaLine>,
}

impl TranslationLemmaReport {
    pub fn all_hold(&self) -> bool {
        self.lines.iter().all(LemmaLine::holds)
    }
}

/// Checks every translation identity at every point of `q`.
///
/// Each side is computed from the materialised parastrophe tables, never
/// from the identity being tested.
pub fn check_translation_lemma(q: &Quasigroup) -> TranslationLemmaReport {
    let paras = all_parastrophes(q);
    let identities = translation_identities();
    let mut first_failure = [None; 10];
    for x in 0..q.order() {
        let translations: [[Perm; 2]; 6] = std::array::from_fn(|k| {
            [
                paras[k].translation(Side::Left, x).expect("in range"),
                paras[k].translation(Side::Right, x).expect("in range"),
            ]
        });
        for (i, (lhs, rhs)) in identities.iter().enumerate() {
            if first_failure[i].is_none() && TranslationTerm::Map(*lhs).eval(&translations) != rhs.eval(&translations) {
                first_failure[i] = Some(x);
            }
        }
    }
    TranslationLemmaReport {
        lines: identities
            .iter()
            .zip(first_failure)
            .map(|((lhs, rhs), first_failure)| LemmaLine {
                label: format!("{} = {}", lhs.name(), rhs.label()),
                first_failure,
            })
            .collect(),
    }
}

/// Identity structure of the parastrophes of `q`.
#[derive(Debug, Clone, Serialize)]
pub struct RemarkReport {
    pub is_loop: bool,
    pub exponent_two: bool,
    /// `(kind, left identities, right identities, is loop)` per parastrophe.
    pub parastrophes: Vec<(ParastropheKind, Vec<Element>, Vec<Element>, bool)>,
    pub claims: Vec<Claim>,
}

impl RemarkReport {
    pub fn all_ok(&self) -> bool {
        crate::claim::all_ok(&self.claims)
    }
}

/// Loop-ness of the parastrophes.
///
/// `θ*` is a loop exactly when `θ` is. When `θ` is a loop with identity `e`,
/// `e` is a left identity of `θ⁻¹` and `(⁻¹θ)*`, a right identity of `⁻¹θ`
/// and `(θ⁻¹)*`, and each of those four is a loop iff `θ` has exponent 2.
/// The last three statements are premised on `θ` being a loop and are only
/// emitted in that case: `θ⁻¹` of `Z_3` is not a loop yet its own `θ⁻¹` is.
pub fn remark_profile(q: &Quasigroup) -> RemarkReport {
    use ParastropheKind::*;
    let profile = q.loop_profile();
    let mut parastrophes = Vec::new();
    let mut claims = Vec::new();
    let paras = all_parastrophes(q);
    for (kind, p) in ParastropheKind::ALL.iter().zip(&paras) {
        let pp = p.loop_profile();
        parastrophes.push((
            *kind,
            pp.left_identities.iter().copied().collect(),
            pp.right_identities.iter().copied().collect(),
            pp.is_loop(),
        ));
    }
    claims.push(Claim::new(
        "pi2/loop",
        profile.is_loop(),
        paras[1].loop_profile().is_loop(),
    ));
    if let Some(e) = profile.two_sided_identity {
        for kind in [Pi3, Pi6] {
            let pp = paras[kind as usize].loop_profile();
            claims.push(Claim::fact(
                format!("{kind}/left-identity"),
                pp.left_identities.contains(&e),
            ));
        }
        for kind in [Pi4, Pi5] {
            let pp = paras[kind as usize].loop_profile();
            claims.push(Claim::fact(
                format!("{kind}/right-identity"),
                pp.right_identities.contains(&e),
            ));
        }
        for kind in ParastropheKind::DIVISION {
            claims.push(Claim::new(
                format!("{kind}/loop-iff-exponent-two"),
                profile.exponent_two,
                paras[kind as usize].loop_profile().is_loop(),
            ));
        }
    }
    RemarkReport {
        is_loop: profile.is_loop(),
        exponent_two: profile.exponent_two,
        parastrophes,
        claims,
    }
}

/// Parses `pi1`..`pi6` or one of the aliases.
pub fn parse_kind(s: &str) -> Result<ParastropheKind> {
    s.parse().map_err(|message| Error::Syntax { position: 0, message })
}
