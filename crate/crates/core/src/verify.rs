//! Suite runner: each suite enumerates tables, runs one check per table and
//! flattens the resulting claims into line-delimited records.

use std::io::{self, Write};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::claim::Claim;
use crate::enumerate::{groups, latin_squares, loops, random_quasigroup, sample_seed};
use crate::error::{Error, Result};
use crate::holomorph::{group_holomorph_interchange_check, holomorph_interchange_check};
use crate::identities::{khalil_on_parastrophes_check, khalil_suite, parastrophe_equivalence_check};
use crate::isotopy::{
    apply_isotopism, associativity_families_check, find_isotopism, group_isotope_parastrophes_check,
    isotopy_isomorphy_check, nucleus_criterion_check, probe_isotopy_converse, IsotopismTriple,
};
use crate::parastrophe::{check_translation_lemma, remark_profile};
use crate::perm::Perm;
use crate::quasigroup::{Quasigroup, Side};

pub const PROBE_SUITE: &str = "probe-1.1-converse";

/// Every suite: `(name, default max order, largest accepted max order)`.
pub const SUITES: [(&str, usize, usize); 12] = [
    ("lemma0.1", 4, 5),
    ("thm1.1", 4, 5),
    ("cor1.2", 6, 6),
    ("thm0.1.2", 4, 4),
    ("cor1.21", 6, 8),
    ("cor1.14", 6, 8),
    ("thm0.12", 5, 6),
    ("thm0.1.3", 4, 4),
    ("thm2.5", 3, 4),
    ("cor2.6", 6, 8),
    ("remark2.2", 4, 5),
    (PROBE_SUITE, 4, 4),
];

/// Seeded order-5 samples added by `lemma0.1`, and triples per case per
/// loop in `thm0.12`, when `--sample` is not given.
pub const DEFAULT_LEMMA_SAMPLES: usize = 1000;
pub const DEFAULT_TRIPLE_SAMPLES: usize = 100;

/// Latin squares above this order are left out of `thm2.5`; only loops are
/// checked beyond it.
const INTERCHANGE_LATIN_ORDER: usize = 3;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SuiteOptions {
    pub max_order: Option<usize>,
    pub seed: u64,
    pub sample: Option<usize>,
    /// Worker threads; `None` uses the global pool.
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub suite: String,
    pub instance: String,
    pub claim: String,
    pub lhs: bool,
    pub rhs: bool,
    pub ok: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub suite: String,
    pub max_order: usize,
    pub seed: u64,
    pub instances: usize,
    /// Instances left out because a resource bound (holomorph size) was hit.
    pub skipped: usize,
    pub records: usize,
    pub failed: usize,
    pub first_failure: Option<String>,
    pub exit: i32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn all_ok(&self) -> bool {
        self.summary.failed == 0
    }

    /// Records, then the summary, one JSON object per line.
    pub fn write_jsonl(&self, mut w: impl Write) -> io::Result<()> {
        for r in &self.records {
            serde_json::to_writer(&mut w, r)?;
            w.write_all(b"\n")?;
        }
        #[derive(Serialize)]
        struct Tail<'a> {
            summary: &'a Summary,
        }
        serde_json::to_writer(&mut w, &Tail { summary: &self.summary })?;
        w.write_all(b"\n")
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = Vec::new();
        self.write_jsonl(&mut out).expect("writing to a Vec");
        String::from_utf8(out).expect("JSON is UTF-8")
    }
}

type Instance = (String, Quasigroup);

/// What one instance produced: claims, or a skip for a resource bound.
enum Outcome {
    Claims(Vec<(String, Claim)>),
    Skipped,
}

fn claims(cs: Vec<Claim>) -> Result<Outcome> {
    Ok(Outcome::Claims(cs.into_iter().map(|c| (String::new(), c)).collect()))
}

pub fn suite_names() -> impl Iterator<Item = &'static str> {
    SUITES.iter().map(|s| s.0)
}

/// Runs `suite` and collects its report. Record order is fixed by the
/// enumeration, whatever the worker count.
pub fn run_suite(suite: &str, opts: &SuiteOptions) -> Result<SuiteReport> {
    let &(name, default_order, limit) = SUITES
        .iter()
        .find(|s| s.0 == suite)
        .ok_or_else(|| Error::Precondition(format!("unknown suite '{suite}'")))?;
    let max_order = opts.max_order.unwrap_or(default_order);
    if max_order > limit {
        return Err(Error::BoundExceeded {
            what: "suite max order",
            limit,
            actual: max_order,
        });
    }
    if max_order == 0 {
        return Err(Error::EmptyCarrier);
    }
    match opts.workers {
        Some(w) => rayon::ThreadPoolBuilder::new()
            .num_threads(w.max(1))
            .build()
            .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?
            .install(|| run(name, max_order, opts)),
        None => run(name, max_order, opts),
    }
}

fn run(name: &'static str, max_order: usize, opts: &SuiteOptions) -> Result<SuiteReport> {
    let instances = instances(name, max_order, opts)?;
    let outcomes: Vec<Result<Outcome>> = instances
        .par_iter()
        .enumerate()
        .map(|(i, (_, q))| check(name, q, opts, i))
        .collect();
    let mut records = Vec::new();
    let mut skipped = 0;
    for ((id, _), outcome) in instances.iter().zip(outcomes) {
        match outcome? {
            Outcome::Skipped => skipped += 1,
            Outcome::Claims(cs) => records.extend(cs.into_iter().map(|(sub, c)| Record {
                suite: name.to_string(),
                instance: format!("{id}{sub}"),
                claim: format!("{name}/{}", c.id),
                ok: c.ok(),
                lhs: c.lhs,
                rhs: c.rhs,
            })),
        }
    }
    let failures: Vec<&Record> = records.iter().filter(|r| !r.ok).collect();
    let probe = name == PROBE_SUITE;
    let summary = Summary {
        suite: name.to_string(),
        max_order,
        seed: opts.seed,
        instances: instances.len(),
        skipped,
        records: records.len(),
        failed: failures.len(),
        first_failure: failures.first().map(|r| format!("{} {}", r.instance, r.claim)),
        exit: if probe || failures.is_empty() { 0 } else { 1 },
    };
    Ok(SuiteReport { records, summary })
}

fn latin(lo: usize, hi: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(latin_squares(n)?.enumerate().map(|(i, q)| (format!("latin{n}:{i}"), q)));
    }
    Ok(out)
}

fn loop_tables(lo: usize, hi: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in lo..=hi {
        out.extend(loops(n)?.enumerate().map(|(i, q)| (format!("loop{n}:{i}"), q)));
    }
    Ok(out)
}

fn group_tables(hi: usize) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for n in 1..=hi {
        out.extend(groups(n)?.enumerate().map(|(i, q)| (format!("group{n}:{i}"), q)));
    }
    Ok(out)
}

fn instances(name: &str, max_order: usize, opts: &SuiteOptions) -> Result<Vec<Instance>> {
    Ok(match name {
        "lemma0.1" => {
            let mut v = latin(2, max_order)?;
            let k = opts.sample.unwrap_or(DEFAULT_LEMMA_SAMPLES);
            for i in 0..k {
                let seed = sample_seed(opts.seed, 5, i as u64);
                v.push((format!("sample5:{i}"), random_quasigroup(5, seed)?));
            }
            v
        }
        "thm1.1" | "thm0.1.2" | "thm0.1.3" | "remark2.2" | PROBE_SUITE => latin(2, max_order)?,
        "thm0.12" => loop_tables(1, max_order)?,
        "thm2.5" => {
            let mut v = latin(2, max_order.min(INTERCHANGE_LATIN_ORDER))?;
            if max_order > INTERCHANGE_LATIN_ORDER {
                v.extend(loop_tables(INTERCHANGE_LATIN_ORDER + 1, max_order)?);
            }
            v
        }
        "cor1.2" | "cor1.21" | "cor1.14" | "cor2.6" => group_tables(max_order)?,
        _ => unreachable!("suite names are checked"),
    })
}

fn check(name: &str, q: &Quasigroup, opts: &SuiteOptions, index: usize) -> Result<Outcome> {
    match name {
        "lemma0.1" => claims(
            check_translation_lemma(q)
                .lines
                .into_iter()
                .map(|l| Claim::fact(l.label.clone(), l.holds()))
                .collect(),
        ),
        "thm1.1" => claims(associativity_families_check(q).claims),
        "cor1.2" => claims(khalil_on_parastrophes_check(q)?.claims),
        "thm0.1.2" => {
            let all_six = khalil_suite(q)?.iter().all(|&b| b);
            let isotopic = group_isotope(q)?.is_some();
            claims(vec![Claim::new("khalil-iff-group-isotope", all_six, isotopic)])
        }
        "cor1.21" => claims(parastrophe_equivalence_check(q)?.claims),
        "cor1.14" => claims(isotopy_isomorphy_check(q)?.claims),
        "thm0.12" => nucleus_samples(q, opts, index),
        "thm0.1.3" => match group_isotope(q)? {
            Some(g) => claims(group_isotope_parastrophes_check(q, &g)?.claims),
            None => claims(vec![]),
        },
        "thm2.5" => match holomorph_interchange_check(q) {
            Ok(r) => claims(r.claims),
            Err(Error::BoundExceeded { .. }) => Ok(Outcome::Skipped),
            Err(e) => Err(e),
        },
        "cor2.6" => match group_holomorph_interchange_check(q) {
            Ok(r) => claims(r.claims),
            Err(Error::BoundExceeded { .. }) => Ok(Outcome::Skipped),
            Err(e) => Err(e),
        },
        "remark2.2" => claims(remark_profile(q).claims),
        PROBE_SUITE => claims(
            probe_isotopy_converse(q)?
                .into_iter()
                .map(|p| {
                    Claim::new(
                        format!("{}/isotopic-iff-associative", p.label),
                        p.isotopic,
                        p.associative,
                    )
                })
                .collect(),
        ),
        _ => unreachable!("suite names are checked"),
    }
}

/// The first group of the same order that `q` is isotopic to.
fn group_isotope(q: &Quasigroup) -> Result<Option<Quasigroup>> {
    for g in groups(q.order())? {
        if find_isotopism(q, &g)?.is_some() {
            return Ok(Some(g));
        }
    }
    Ok(None)
}

fn random_perm(n: usize, rng: &mut impl Rng) -> Perm {
    let mut images: Vec<usize> = (0..n).collect();
    images.shuffle(rng);
    Perm::from_images(images).expect("a shuffle is a permutation")
}

/// Seeded triples `(A, B, B)` and `(A, B, A)` from the loop `g`. Half are
/// arbitrary; half are `B = R_c A` (resp. `A = L_c B`), which is an
/// isomorphism onto the image whenever `c` is in the right (left) nucleus.
pub fn sample_nucleus_triples(g: &Quasigroup, seed: u64, k: usize) -> Vec<(&'static str, IsotopismTriple)> {
    let n = g.order();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(2 * k);
    for case in ["case1", "case2"] {
        for j in 0..k {
            let p = random_perm(n, &mut rng);
            let other = if j % 2 == 0 {
                random_perm(n, &mut rng)
            } else {
                let c = rng.gen_range(0..n);
                let side = if case == "case1" { Side::Right } else { Side::Left };
                g.translation(side, c).expect("element in range").then(&p)
            };
            let t = match case {
                "case1" => IsotopismTriple {
                    a: p,
                    b: other.clone(),
                    c: other,
                },
                _ => IsotopismTriple {
                    a: other.clone(),
                    b: p,
                    c: other,
                },
            };
            out.push((case, t));
        }
    }
    out
}

fn nucleus_samples(g: &Quasigroup, opts: &SuiteOptions, index: usize) -> Result<Outcome> {
    let k = opts.sample.unwrap_or(DEFAULT_TRIPLE_SAMPLES);
    let seed = sample_seed(opts.seed, g.order(), index as u64);
    let mut out = Vec::new();
    for (j, (case, t)) in sample_nucleus_triples(g, seed, k).into_iter().enumerate() {
        let h = apply_isotopism(g, &t)?;
        let report = nucleus_criterion_check(g, &h, &t)?;
        let sub = format!("/t{j}");
        // for n = 1 both cases apply to every triple; keep only the sampled one
        out.extend(
            report
                .claims
                .into_iter()
                .filter(|c| !c.id.starts_with("case") || c.id.starts_with(case))
                .map(|c| (sub.clone(), c)),
        );
    }
    Ok(Outcome::Claims(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(max_order: usize) -> SuiteOptions {
        SuiteOptions {
            max_order: Some(max_order),
            ..SuiteOptions::default()
        }
    }

    #[test]
    fn unknown_suite_and_bounds() {
        assert!(matches!(run_suite("nope", &opts(3)), Err(Error::Precondition(_))));
        assert!(matches!(
            run_suite("thm2.5", &opts(5)),
            Err(Error::BoundExceeded { .. })
        ));
    }

    #[test]
    fn small_runs_pass() {
        for name in suite_names() {
            let o = SuiteOptions {
                max_order: Some(3),
                sample: Some(4),
                ..SuiteOptions::default()
            };
            let r = run_suite(name, &o).unwrap();
            assert!(r.summary.instances > 0, "{name}");
            if name != PROBE_SUITE {
                assert!(r.all_ok(), "{name}: {:?}", r.summary.first_failure);
            }
            assert_eq!(r.summary.exit, 0, "{name}");
        }
    }

    #[test]
    fn report_is_independent_of_workers() {
        let one = SuiteOptions {
            workers: Some(1),
            ..opts(3)
        };
        let four = SuiteOptions {
            workers: Some(4),
            ..opts(3)
        };
        let a = run_suite("thm1.1", &one).unwrap().to_jsonl();
        let b = run_suite("thm1.1", &four).unwrap().to_jsonl();
        assert_eq!(a, b);
        let last = a.lines().last().unwrap();
        assert!(last.starts_with("{\"summary\":"), "{last}");
    }

    #[test]
    fn nucleus_samples_include_both_verdicts() {
        let g = Quasigroup::cyclic(4);
        let triples = sample_nucleus_triples(&g, 7, 20);
        let mut iso = [0; 2];
        for (case, t) in &triples {
            let h = apply_isotopism(&g, t).unwrap();
            let r = nucleus_criterion_check(&g, &h, t).unwrap();
            let c = r.claims.iter().find(|c| c.id == *case).unwrap();
            assert!(c.ok());
            iso[usize::from(c.lhs)] += 1;
        }
        assert!(iso[0] > 0 && iso[1] > 0, "{iso:?}");
    }
}
