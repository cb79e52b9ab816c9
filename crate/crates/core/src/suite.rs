//! Fixture table for the published results, runnable at two bounds.
//!
//! Each fixture reproduces one claim and reports PASS or FAIL with a short
//! detail. Informational fixtures are reported but never fail the suite.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::decide::{
    conjecture_sweep_with, defines_property, distinguishing_formula, find_countermodel, valid_bounded,
    ConjectureBounds, Report, Verdict, Witness,
};
use crate::kripke::{eval, frame_valid, mirror_reduction, Frame, FrameClass, Model, PointedModel, WorldSet};
use crate::proof::{builtin_corpus, check_proof, match_schema, mutations, taut_check, SystemName, PHI};
use crate::syntax::{atoms, desugar, metrics, parse, render, Formula, LanguageTag};
use crate::translate::{equivalent_bounded, reduce_announcements, to_diamond};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Profile {
    Fast,
    Slow,
}

impl Profile {
    /// World bound for validity and definability fixtures.
    pub fn max_worlds(self) -> usize {
        match self {
            Profile::Fast => 3,
            Profile::Slow => 4,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Profile::Fast => "fast",
            Profile::Slow => "slow",
        }
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Profile {
    type Err = String;

    fn from_str(s: &str) -> Result<Profile, String> {
        match s {
            "fast" => Ok(Profile::Fast),
            "slow" => Ok(Profile::Slow),
            _ => Err(format!("unknown profile `{s}`, expected fast or slow")),
        }
    }
}

type Check = fn(Profile) -> Result<String, String>;

pub struct Fixture {
    /// Name of the result the fixture reproduces.
    pub key: &'static str,
    pub claim: &'static str,
    pub informational: bool,
    check: Check,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SuiteRow {
    pub key: &'static str,
    pub claim: &'static str,
    pub pass: bool,
    pub informational: bool,
    pub detail: String,
}

impl SuiteRow {
    pub fn status(&self) -> &'static str {
        match (self.pass, self.informational) {
            (true, _) => "PASS",
            (false, false) => "FAIL",
            (false, true) => "INFO",
        }
    }
}

/// Whether every non-informational row passed.
pub fn suite_passed(rows: &[SuiteRow]) -> bool {
    rows.iter().all(|r| r.pass || r.informational)
}

pub fn run_suite(profile: Profile) -> Vec<SuiteRow> {
    fixtures()
        .into_iter()
        .map(|fx| {
            let (pass, detail) = match (fx.check)(profile) {
                Ok(d) => (true, d),
                Err(d) => (false, d),
            };
            SuiteRow {
                key: fx.key,
                claim: fx.claim,
                pass,
                informational: fx.informational,
                detail,
            }
        })
        .collect()
}

fn f(text: &str) -> Formula {
    parse(text).expect("fixture formula parses")
}

fn ensure(ok: bool, pass: impl Into<String>, fail: impl Into<String>) -> Result<String, String> {
    if ok {
        Ok(pass.into())
    } else {
        Err(fail.into())
    }
}

fn err<E: fmt::Display>(e: E) -> String {
    e.to_string()
}

fn expect_verdict(r: &Report, want: Verdict) -> Result<String, String> {
    let detail = r.to_human();
    let rechecks = r.verdict == Verdict::HoldsAtBound || r.recheck();
    ensure(r.verdict == want && rechecks, detail.clone(), detail)
}

fn valid_on(text: &str, c: FrameClass, n: usize) -> Result<String, String> {
    let r = find_countermodel(&f(text), c, n).map_err(err)?;
    expect_verdict(&r, Verdict::HoldsAtBound)
}

fn refuted_on(text: &str, c: FrameClass, n: usize) -> Result<String, String> {
    let r = find_countermodel(&f(text), c, n).map_err(err)?;
    expect_verdict(&r, Verdict::Refuted)
}

fn all_valid(texts: &[&str], c: FrameClass, n: usize) -> Result<String, String> {
    for t in texts {
        valid_on(t, c, n)?;
    }
    Ok(format!("{} instances hold on class {c} up to {n} worlds", texts.len()))
}

fn frame(n: usize, edges: &[(usize, usize)]) -> Frame {
    Frame::from_pairs(n, edges).expect("fixture frame")
}

fn pointed(fr: Frame, p: u64, point: usize) -> PointedModel {
    PointedModel::new(Model::new(fr).with_atom("p", WorldSet(p)), point).expect("fixture point")
}

/// Reflexive `s:p` and arrowless `s':p`.
fn singleton_pair() -> (PointedModel, PointedModel) {
    (pointed(frame(1, &[(0, 0)]), 1, 0), pointed(frame(1, &[]), 1, 0))
}

/// `s:p → t:¬p, t → t, t → s` and `s':p → t':¬p, t' → s'`.
pub fn serial_pair() -> (PointedModel, PointedModel) {
    (
        pointed(frame(2, &[(0, 1), (1, 1), (1, 0)]), 1, 0),
        pointed(frame(2, &[(0, 1), (1, 0)]), 1, 0),
    )
}

fn distinguisher(
    pair: (PointedModel, PointedModel),
    lang: LanguageTag,
    size: usize,
) -> Result<Option<Formula>, String> {
    let r = distinguishing_formula(&pair.0, &pair.1, lang, &["p"], size).map_err(err)?;
    match r.witness {
        Some(Witness::Formula { formula, .. }) => Ok(Some(formula)),
        _ => Ok(None),
    }
}

fn none_up_to(pair: (PointedModel, PointedModel), lang: LanguageTag, size: usize) -> Result<String, String> {
    match distinguisher(pair, lang, size)? {
        None => Ok(format!("HOLDS_AT_BOUND: no {lang} distinguisher up to size {size}")),
        Some(g) => Err(format!("REFUTED: {} distinguishes the pair", render(&g))),
    }
}

const A_AXIOMS: [&str; 7] = [
    "A p -> p",
    "C p <-> C ~p",
    "A(q -> p) & p -> A p",
    "C(p & q) -> C p | C q",
    "A(p & q) -> A p | A q",
    "C p -> A p | A ~p",
    "A(p -> q) & A(~p -> r) -> C p",
];

const K4_AXIOMS: [&str; 4] = [
    "D p -> D D p",
    "D p -> O(q -> D p)",
    "A q & D p & O(~q -> p) -> D O(~r -> p)",
    "A q & D p & O(~q -> p) -> O(~q -> O(~r -> p))",
];

const TRANSITIVITY: &str = "A q & D p & O(~q -> p) -> O(~q -> O(~r -> p))";
const SYMMETRY: &str = "A(p -> A p) -> p";
const NAD: &str = "A q -> ([] p <-> D p & O(~q -> p))";

pub fn fixtures() -> Vec<Fixture> {
    let fx = |key, claim, check: Check| Fixture {
        key,
        claim,
        informational: false,
        check,
    };
    vec![
        fx("syntax: A1", "`A p -> p` parses as (•p) → p", |_| {
            let want = Formula::implies(Formula::acc(crate::syntax::atom("p")), crate::syntax::atom("p"));
            ensure(f("A p -> p") == want, "parsed", "wrong tree")
        }),
        fx(
            "syntax: Moore announcement",
            "`[! A p] ~ A p` parses as [•p]¬•p",
            |_| {
                let ap = Formula::acc(crate::syntax::atom("p"));
                ensure(
                    f("[! A p] ~ A p") == Formula::ann(ap.clone(), Formula::not(ap)),
                    "parsed",
                    "wrong tree",
                )
            },
        ),
        fx(
            "syntax: A6",
            "∇p → •p ∨ •¬p prints as `C p -> A p | A ~p`",
            |_| {
                let p = crate::syntax::atom("p");
                let g = Formula::implies(
                    Formula::con(p.clone()),
                    Formula::or(Formula::acc(p.clone()), Formula::acc(Formula::not(p))),
                );
                let text = render(&g);
                ensure(text == "C p -> A p | A ~p", text.clone(), text)
            },
        ),
        fx("syntax: box", "□p abbreviates ¬◇¬p", |_| {
            ensure(desugar(&f("[] p")) == f("~<>~p"), "desugared", "wrong expansion")
        }),
        fx(
            "syntax: announcement-whether",
            "[?ψ]φ abbreviates [ψ]φ ∧ [¬ψ]φ",
            |_| {
                ensure(
                    desugar(&f("[? A p] ~A p")) == desugar(&f("[! A p] ~A p & [! ~A p] ~A p")),
                    "desugared",
                    "wrong expansion",
                )
            },
        ),
        fx(
            "syntax: transitivity antecedent atoms",
            "atoms of •q∧Δp∧∘(¬q→p) are {p, q}",
            |_| {
                let got: Vec<String> = atoms(&f("A q & D p & O(~q -> p)")).into_iter().collect();
                ensure(got == ["p", "q"], "{p, q}", format!("{got:?}"))
            },
        ),
        fx("syntax: box-box depth", "□□p has modal depth 2", |_| {
            let d = metrics(&f("[] [] p")).modal_depth;
            ensure(d == 2, "depth 2", format!("depth {d}"))
        }),
        fx(
            "semantics: reflexive singleton",
            "at a reflexive p-world ∇p, •p fail and ◇⊤ holds",
            |_| {
                let m = pointed(frame(1, &[(0, 0)]), 1, 0).model;
                let got = ["C p", "A p", "<> true"].map(|t| eval(&m, 0, &f(t)).unwrap());
                ensure(got == [false, false, true], "as claimed", format!("{got:?}"))
            },
        ),
        fx(
            "frames: corollary frames",
            "F1 is reflexive and serial, F1^m is not serial, F2 is Euclidean and convergent",
            |_| {
                let f1 = frame(1, &[(0, 0)]);
                let f2 = frame(2, &[(0, 1), (1, 1)]);
                let ok = FrameClass::T.holds(&f1)
                    && FrameClass::D.holds(&f1)
                    && !FrameClass::D.holds(&mirror_reduction(&f1))
                    && FrameClass::Five.holds(&f2)
                    && FrameClass::Conv.holds(&f2);
                ensure(ok, "classes as claimed", "class mismatch")
            },
        ),
        fx(
            "frames: mirror reduction",
            "F1^m is the arrowless singleton and F2^m is s→t",
            |_| {
                let ok = mirror_reduction(&frame(1, &[(0, 0)])) == frame(1, &[])
                    && mirror_reduction(&frame(2, &[(0, 1), (1, 1)])) == frame(2, &[(0, 1)]);
                ensure(ok, "reductions as claimed", "wrong reduction")
            },
        ),
        fx(
            "frames: A1 on F1",
            "•p → p is valid on the reflexive singleton",
            |_| {
                let v = frame_valid(&frame(1, &[(0, 0)]), &f("A p -> p")).map_err(err)?;
                ensure(v.is_valid(), "valid", "invalid")
            },
        ),
        fx(
            "rival reduction: loop removal",
            "∘p is valid on the arrowless F^m but not on F = s→t",
            |_| {
                let on_reduced = frame_valid(&frame(1, &[]), &f("O p")).map_err(err)?.is_valid();
                let on_frame = frame_valid(&frame(2, &[(0, 1)]), &f("O p")).map_err(err)?.is_valid();
                ensure(on_reduced && !on_frame, "disagreement reproduced", "no disagreement")
            },
        ),
        fx(
            "rival reduction: symmetric core",
            "Δp is valid on s↔t but not on the complete two-world frame",
            |_| {
                let complete = frame(2, &[(0, 0), (0, 1), (1, 0), (1, 1)]);
                let verdict = frame_valid(&complete, &f("D p")).map_err(err)?;
                let on_core = frame_valid(&frame(2, &[(0, 1), (1, 0)]), &f("D p"))
                    .map_err(err)?
                    .is_valid();
                let witness_ok = match &verdict {
                    crate::kripke::FrameVerdict::Invalid(w) => w.model.atom("p") == WorldSet(0b01),
                    _ => false,
                };
                ensure(
                    on_core && witness_ok,
                    "disagreement reproduced, witness p = {s}",
                    "no disagreement",
                )
            },
        ),
        fx("translation: contingency", "∇p translates to ◇p ∧ ◇¬p", |_| {
            ensure(
                to_diamond(&f("C p")).map_err(err)? == f("<> p & <> ~p"),
                "translated",
                "wrong",
            )
        }),
        fx("translation: accident", "•p translates to p ∧ ◇¬p", |_| {
            ensure(
                to_diamond(&f("A p")).map_err(err)? == f("p & <> ~p"),
                "translated",
                "wrong",
            )
        }),
        fx("reduction: AP", "[p]q reduces to p → q", |_| {
            let r = reduce_announcements(&f("[! p] q"));
            ensure(r.formula == f("p -> q"), render(&r.formula), render(&r.formula))
        }),
        fx("equivalence: A2", "∇p and ∇¬p agree on K up to 3 worlds", |_| {
            let e = equivalent_bounded(&f("C p"), &f("C ~p"), FrameClass::K, 3).map_err(err)?;
            ensure(e.is_equivalent(), "equivalent", "differ")
        }),
        fx(
            "validity: contingency splits into accidents",
            "∇p → •p ∨ •¬p is valid on K",
            |pr| valid_on("C p -> A p | A ~p", FrameClass::K, pr.max_worlds()),
        ),
        fx(
            "invalidity: strong accident combination",
            "•(p→q) ∧ •(¬p→r) → •p fails on K within 3 worlds",
            |_| refuted_on("A(p -> q) & A(~p -> r) -> A p", FrameClass::K, 3),
        ),
        fx(
            "validity: weak accident combination",
            "•(p→q) ∧ •(¬p→r) → •p ∨ •¬p is valid on K",
            |pr| valid_on("A(p -> q) & A(~p -> r) -> A p | A ~p", FrameClass::K, pr.max_worlds()),
        ),
        fx(
            "validity: NAD",
            "•q → (□p ↔ Δp ∧ ∘(¬q→p)) is valid on K",
            |pr| valid_on(NAD, FrameClass::K, pr.max_worlds()),
        ),
        fx("validity: A1-A7", "generic instances of A1-A7 are valid on K", |pr| {
            all_valid(&A_AXIOMS, FrameClass::K, pr.max_worlds())
        }),
        fx(
            "validity: AT",
            "Δp ∧ p → ∘(q → p) is valid on reflexive frames",
            |pr| valid_on("D p & p -> O(q -> p)", FrameClass::T, pr.max_worlds()),
        ),
        fx(
            "validity: A4-1..A4-4",
            "the transitivity axioms are valid on transitive frames",
            |pr| all_valid(&K4_AXIOMS, FrameClass::Four, pr.max_worlds()),
        ),
        fx(
            "definability: transitivity",
            "Tr is valid on exactly the transitive frames",
            |pr| {
                let r = defines_property(&f(TRANSITIVITY), FrameClass::Four, pr.max_worlds()).map_err(err)?;
                expect_verdict(&r, Verdict::HoldsAtBound)
            },
        ),
        fx(
            "definability: symmetry",
            "•(p→•p) → p is valid on exactly the symmetric frames",
            |pr| {
                let r = defines_property(&f(SYMMETRY), FrameClass::B, pr.max_worlds()).map_err(err)?;
                expect_verdict(&r, Verdict::HoldsAtBound)
            },
        ),
        fx(
            "expressivity: singletons, ◇-language",
            "◇⊤ distinguishes the reflexive and arrowless singletons",
            |_| match distinguisher(singleton_pair(), LanguageTag::Diamond, 2)? {
                Some(g) if g == f("<> true") => Ok("◇⊤ found".into()),
                other => Err(format!("found {:?}", other.map(|g| render(&g)))),
            },
        ),
        fx(
            "expressivity: singletons, ∇/•-language",
            "no ∇/• formula up to size 7 distinguishes the singletons",
            |_| none_up_to(singleton_pair(), LanguageTag::NablaBullet, 7),
        ),
        fx(
            "expressivity: serial pair, ◇-language",
            "a formula equivalent to □□p up to negation distinguishes the serial pair within size 6",
            |_| {
                let bb = f("[] [] p");
                match distinguisher(serial_pair(), LanguageTag::Diamond, 6)? {
                    Some(g) => {
                        let pos = equivalent_bounded(&g, &bb, FrameClass::K, 3)
                            .map_err(err)?
                            .is_equivalent();
                        let neg = equivalent_bounded(&Formula::not(g.clone()), &bb, FrameClass::K, 3)
                            .map_err(err)?
                            .is_equivalent();
                        ensure(
                            pos || neg,
                            format!("{} found", render(&g)),
                            format!("{} is not □□p-equivalent", render(&g)),
                        )
                    }
                    None => Err("no distinguisher up to size 6".into()),
                }
            },
        ),
        fx(
            "expressivity: serial pair, ∇/•-language",
            "no ∇/• formula up to size 7 distinguishes the serial pair",
            |_| none_up_to(serial_pair(), LanguageTag::NablaBullet, 7),
        ),
        Fixture {
            key: "expressivity: serial pair, •-language",
            claim: "no • formula up to size 7 distinguishes the serial pair",
            informational: true,
            check: |_| none_up_to(serial_pair(), LanguageTag::Bullet, 7),
        },
        fx(
            "PAL: Moore announcement is self-refuting",
            "[•p]¬•p is valid on K",
            |pr| valid_on("[! A p] ~A p", FrameClass::K, pr.max_worlds()),
        ),
        fx(
            "PAL: negated Moore announcement is successful",
            "[¬•p]¬•p is valid on K",
            |pr| valid_on("[! ~A p] ~A p", FrameClass::K, pr.max_worlds()),
        ),
        fx(
            "PAL: Moore announcement is unsuccessful",
            "[•p]•p fails on K",
            |pr| refuted_on("[! A p] A p", FrameClass::K, pr.max_worlds()),
        ),
        fx(
            "proofs: schema matching",
            "A1 matches •(p∧q)→(p∧q) with φ ↦ p∧q and A6 matches ∇p→•p∨•¬p",
            |_| {
                let a1 = SystemName::K.schema("A1").expect("A1");
                let a6 = SystemName::K.schema("A6").expect("A6");
                let m1 = match_schema(a1, &f("A(p & q) -> p & q")).map(|m| m[PHI].clone());
                let m6 = match_schema(a6, &f("C p -> A p | A ~p")).map(|m| m[PHI].clone());
                ensure(
                    m1 == Some(f("p & q")) && m6 == Some(f("p")),
                    "bindings as claimed",
                    "wrong bindings",
                )
            },
        ),
        fx("proofs: A0", "¬p → (p → q) is a tautology", |_| {
            ensure(
                taut_check(&f("~p -> (p -> q)")).map_err(err)?,
                "tautology",
                "not a tautology",
            )
        }),
        fx(
            "proofs: corpus",
            "every bundled derivation checks, its conclusion is valid on its class and every mutant is rejected",
            |_| {
                let corpus = builtin_corpus();
                let mut mutants = 0;
                for e in &corpus {
                    check_proof(&e.proof).map_err(|errs| format!("{}: {}", e.name, errs[0]))?;
                    let concl = e.proof.conclusion().ok_or_else(|| format!("{}: empty", e.name))?;
                    if !valid_bounded(concl, e.proof.system.frame_class(), 3).map_err(err)? {
                        return Err(format!("{}: conclusion refuted", e.name));
                    }
                    for line in 1..=e.proof.lines.len() {
                        for just in mutations(&e.proof, line) {
                            let mut bad = e.proof.clone();
                            bad.lines[line - 1].just = just;
                            mutants += 1;
                            if check_proof(&bad).is_ok() {
                                return Err(format!("{}: mutated line {line} still checks", e.name));
                            }
                        }
                    }
                }
                Ok(format!(
                    "{} derivations check, {mutants} mutants rejected",
                    corpus.len()
                ))
            },
        ),
        fx(
            "conjectures: A4-1 and anchor",
            "Δp → ΔΔp and Δp → ∘∘p hold on transitive frames",
            |pr| all_valid(&["D p -> D D p", "D p -> O O p"], FrameClass::Four, pr.max_worlds()),
        ),
        fx(
            "conjectures: sweep",
            "the iteration sweep completes and the anchor holds",
            |pr| {
                let b = ConjectureBounds {
                    max_worlds: pr.max_worlds(),
                    max_exponent_sum: 4,
                    max_heart_len: 2,
                    max_delta_power: 2,
                };
                let reports = conjecture_sweep_with(&b).map_err(err)?;
                let anchor = reports.iter().find(|r| r.label.as_deref() == Some("anchor"));
                let refuted = reports.iter().filter(|r| r.verdict == Verdict::Refuted).count();
                ensure(
                    anchor.is_some_and(Report::holds) && reports.iter().all(|r| r.holds() || r.recheck()),
                    format!("{} instances, {refuted} counterframes", reports.len()),
                    "anchor refuted or witness fails to recheck",
                )
            },
        ),
    ]
}
