//! Hand-built derivations, elaborated down to axioms, tautologies and rules.

use super::builder::ProofBuilder;
use super::check::Proof;
use super::schema::{CHI, PHI, PI, PSI};
use super::system::SystemName;
use crate::syntax::{atom, Formula};

#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    pub proof: Proof,
}

fn not(a: Formula) -> Formula {
    Formula::not(a)
}
fn and(a: Formula, b: Formula) -> Formula {
    Formula::and(a, b)
}
fn imp(a: Formula, b: Formula) -> Formula {
    Formula::implies(a, b)
}
fn delta(a: Formula) -> Formula {
    Formula::noncon(a)
}
fn circ(a: Formula) -> Formula {
    Formula::ess(a)
}
fn bullet(a: Formula) -> Formula {
    Formula::acc(a)
}

/// `Δx ∧ Δy → Δ(x∧y)`.
fn delta_and(b: &mut ProofBuilder, x: &Formula, y: &Formula) -> usize {
    let a4 = b.axiom("A4", &[(PHI, x.clone()), (PSI, y.clone())]);
    b.glue(
        &[a4],
        imp(
            and(delta(x.clone()), delta(y.clone())),
            delta(and(x.clone(), y.clone())),
        ),
    )
}

/// `∘x ∧ ∘y → ∘(x∧y)`.
fn circ_and(b: &mut ProofBuilder, x: &Formula, y: &Formula) -> usize {
    let a5 = b.axiom("A5", &[(PHI, x.clone()), (PSI, y.clone())]);
    b.glue(
        &[a5],
        imp(and(circ(x.clone()), circ(y.clone())), circ(and(x.clone(), y.clone()))),
    )
}

/// `Δx → Δ¬x`.
fn delta_neg(b: &mut ProofBuilder, x: &Formula) -> usize {
    let a2 = b.axiom("A2", &[(PHI, x.clone())]);
    b.glue(&[a2], imp(delta(x.clone()), delta(not(x.clone()))))
}

/// `∘x ∧ x → Δx`.
fn circ_truth_to_delta(b: &mut ProofBuilder, x: &Formula) -> usize {
    let a6 = b.axiom("A6", &[(PHI, x.clone())]);
    let a1 = b.axiom("A1", &[(PHI, not(x.clone()))]);
    b.glue(&[a6, a1], imp(and(circ(x.clone()), x.clone()), delta(x.clone())))
}

/// `⋀ op(xk) → op(⋀xk)` for `op` one of `Δ`, `∘`, at least two conjuncts.
fn conjunction(
    b: &mut ProofBuilder,
    xs: &[Formula],
    op: fn(Formula) -> Formula,
    pair: fn(&mut ProofBuilder, &Formula, &Formula) -> usize,
) -> usize {
    assert!(xs.len() >= 2);
    let mut line = pair(b, &xs[0], &xs[1]);
    for k in 2..xs.len() {
        let step = pair(b, &Formula::conj(xs[..k].iter().cloned()), &xs[k]);
        let goal = imp(
            Formula::conj(xs[..=k].iter().cloned().map(op)),
            op(Formula::conj(xs[..=k].iter().cloned())),
        );
        line = b.glue(&[line, step], goal);
    }
    line
}

/// `Δ(χ→φ) ∧ ⋀Δχk ∧ ⋀∘(φ→χk) → φ ∨ Δφ` with `χ = ⋀χk`.
fn shared_premises(b: &mut ProofBuilder, phi: &Formula, chis: &[Formula]) -> usize {
    let chi = Formula::conj(chis.iter().cloned());
    let a = imp(phi.clone(), chi.clone());
    let both = and(chi.clone(), phi.clone());

    let c2d = circ_truth_to_delta(b, &a);
    let ii = b.glue(&[c2d], imp(and(circ(a.clone()), not(phi.clone())), delta(a.clone())));

    let mixed = and(a.clone(), not(both.clone()));
    let n1 = delta_neg(b, &both);
    let d1 = delta_and(b, &a, &not(both.clone()));
    let n2 = delta_neg(b, &mixed);
    let g1 = b.delta_congruence(not(mixed), phi.clone());
    let iii = b.glue(
        &[n1, d1, n2, g1],
        imp(and(delta(a.clone()), delta(both.clone())), delta(phi.clone())),
    );

    let back = imp(chi.clone(), phi.clone());
    let d2 = delta_and(b, &back, &chi);
    let g2 = b.delta_congruence(and(back.clone(), chi.clone()), both.clone());
    let iv = b.glue(
        &[d2, g2],
        imp(and(delta(back.clone()), delta(chi.clone())), delta(both)),
    );

    let conclusion = Formula::or(phi.clone(), delta(phi.clone()));
    let single = imp(
        Formula::conj([delta(back.clone()), delta(chi.clone()), circ(a.clone())]),
        conclusion.clone(),
    );
    let v = b.glue(&[ii, iii, iv], single);
    if chis.len() == 1 {
        return v;
    }

    let vi = conjunction(b, chis, delta, delta_and);
    let forward: Vec<Formula> = chis.iter().map(|c| imp(phi.clone(), c.clone())).collect();
    let cc = conjunction(b, &forward, circ, circ_and);
    let g3 = b.circ_congruence(Formula::conj(forward.iter().cloned()), a.clone());
    let vii = b.glue(
        &[cc, g3],
        imp(Formula::conj(forward.iter().cloned().map(circ)), circ(a)),
    );
    let premises = std::iter::once(delta(back))
        .chain(chis.iter().cloned().map(delta))
        .chain(forward.into_iter().map(circ));
    b.glue(&[v, vi, vii], imp(Formula::conj(premises), conclusion))
}

/// `Δ(χ→φ) ∧ ⋀∘(¬φ→χk) ∧ φ → Δφ` with `χ = ⋀χk`.
fn circ_premises_delta(b: &mut ProofBuilder, phi: &Formula, chis: &[Formula]) -> usize {
    let chi = Formula::conj(chis.iter().cloned());
    let cs: Vec<Formula> = chis.iter().map(|c| imp(not(phi.clone()), c.clone())).collect();
    let mut used = Vec::new();
    for c in &cs {
        let c2d = circ_truth_to_delta(b, c);
        used.push(b.glue(&[c2d], imp(and(circ(c.clone()), phi.clone()), delta(c.clone()))));
    }
    let joined = imp(not(phi.clone()), chi.clone());
    if cs.len() > 1 {
        let dc = conjunction(b, &cs, delta, delta_and);
        let g = b.delta_congruence(Formula::conj(cs.iter().cloned()), joined.clone());
        used.push(b.glue(
            &[dc, g],
            imp(Formula::conj(cs.iter().cloned().map(delta)), delta(joined.clone())),
        ));
    }
    let contra = imp(not(chi.clone()), phi.clone());
    used.push(b.delta_congruence(joined, contra.clone()));

    let back = imp(chi, phi.clone());
    let d = delta_and(b, &back, &contra);
    let g = b.delta_congruence(and(back.clone(), contra.clone()), phi.clone());
    used.push(b.glue(
        &[d, g],
        imp(and(delta(back.clone()), delta(contra)), delta(phi.clone())),
    ));

    let premises = std::iter::once(delta(back))
        .chain(cs.into_iter().map(circ))
        .chain([phi.clone()]);
    b.glue(&used, imp(Formula::conj(premises), delta(phi.clone())))
}

/// `∘(χ→φ) ∧ ⋀∘(¬φ→χk) → ∘φ` with `χ = ⋀χk`.
fn circ_premises_circ(b: &mut ProofBuilder, phi: &Formula, chis: &[Formula]) -> usize {
    let chi = Formula::conj(chis.iter().cloned());
    let cs: Vec<Formula> = chis.iter().map(|c| imp(not(phi.clone()), c.clone())).collect();
    let contra = imp(not(chi.clone()), phi.clone());
    let mut used = Vec::new();
    if cs.len() > 1 {
        used.push(conjunction(b, &cs, circ, circ_and));
    }
    let g = b.circ_congruence(Formula::conj(cs.iter().cloned()), contra.clone());
    used.push(g);

    let back = imp(chi, phi.clone());
    let ca = circ_and(b, &back, &contra);
    let g2 = b.circ_congruence(and(back.clone(), contra.clone()), phi.clone());
    used.push(b.glue(&[ca, g2], imp(and(circ(back.clone()), circ(contra)), circ(phi.clone()))));

    let premises = std::iter::once(circ(back)).chain(cs.into_iter().map(circ));
    b.glue(&used, imp(Formula::conj(premises), circ(phi.clone())))
}

/// `•x ∧ Δx → Δ∘x`, in the base system.
fn accident_fixes_circ(b: &mut ProofBuilder, x: &Formula) -> usize {
    let ex = circ(x.clone());
    let a7 = b.axiom("A7", &[(PHI, x.clone()), (PSI, not(ex.clone())), (CHI, Formula::Bot)]);
    let g1 = b.circ_congruence(imp(x.clone(), not(ex.clone())), imp(ex.clone(), not(x.clone())));
    let g2 = b.circ_congruence(imp(not(x.clone()), Formula::Bot), x.clone());
    let hyp = and(bullet(x.clone()), delta(x.clone()));
    let lem = b.glue(&[a7, g1, g2], imp(hyp.clone(), circ(imp(ex.clone(), not(x.clone())))));

    let sp = shared_premises(b, &ex, &[not(x.clone())]);
    let a1 = b.axiom("A1", &[(PHI, x.clone())]);
    let t = b.glue(&[a1], imp(not(x.clone()), ex.clone()));
    let r = b.r1(t);
    let dn = delta_neg(b, x);
    b.glue(&[lem, sp, r, dn], imp(hyp, delta(ex)))
}

/// `Δx → ΔΔx ∧ Δ∘x ∧ ∘Δx ∧ ∘∘x` over transitive frames.
fn delta_anchor(b: &mut ProofBuilder, x: &Formula) -> usize {
    let dx = delta(x.clone());
    let ex = circ(x.clone());

    let dd = b.axiom("A4-1", &[(PHI, x.clone())]);

    let a42 = b.axiom("A4-2", &[(PHI, x.clone()), (PSI, Formula::Top)]);
    let g = b.circ_congruence(imp(Formula::Top, dx.clone()), dx.clone());
    let cd = b.glue(&[a42, g], imp(dx.clone(), circ(dx.clone())));

    let a1 = b.axiom("A1", &[(PHI, x.clone())]);
    let t = b.glue(&[a1], imp(not(ex.clone()), x.clone()));
    let r = b.r2(t);
    let trivial = imp(not(Formula::Bot), x.clone());
    let g1 = b.circ_congruence(trivial.clone(), x.clone());
    let nested = imp(not(ex.clone()), circ(trivial));
    let inner = b.glue(&[g1], Formula::iff(nested, ex.clone()));
    let g2 = b.r4(inner);
    let a44 = b.axiom("A4-4", &[(PHI, x.clone()), (PSI, ex.clone()), (CHI, Formula::Bot)]);
    let cc = b.glue(&[a44, r, g2], imp(dx.clone(), circ(ex.clone())));

    let fixes = accident_fixes_circ(b, x);
    let a6 = b.axiom("A6", &[(PHI, ex.clone())]);
    let a1n = b.axiom("A1", &[(PHI, not(ex.clone()))]);
    let dc = b.glue(&[a6, cc, a1n, fixes], imp(dx.clone(), delta(ex.clone())));

    let goal = imp(
        dx.clone(),
        Formula::conj([delta(dx.clone()), delta(ex.clone()), circ(dx), circ(ex)]),
    );
    b.glue(&[dd, dc, cd, cc], goal)
}

/// `[•p]¬•p`.
fn moore_positive(b: &mut ProofBuilder) -> usize {
    let p = atom("p");
    let ap = bullet(p.clone());
    let l1 = b.axiom("AN", &[(PSI, ap.clone()), (PHI, ap.clone())]);
    let l2 = b.axiom("A•", &[(PSI, ap.clone()), (PHI, p.clone())]);
    let l3 = b.axiom("AP", &[(PSI, ap.clone()), (PI, p.clone())]);
    let l4 = b.r4(l3);
    let l5 = b.axiom("A1", &[(PHI, p)]);
    let l6 = b.r2(l5);
    b.glue(&[l1, l2, l4, l6], Formula::ann(ap.clone(), not(ap)))
}

/// `[¬•p]¬•p`.
fn moore_negative(b: &mut ProofBuilder) -> usize {
    let p = atom("p");
    let ap = bullet(p.clone());
    let na = not(ap.clone());
    let l1 = b.axiom("AN", &[(PSI, na.clone()), (PHI, ap.clone())]);
    let l2 = b.axiom("A•", &[(PSI, na.clone()), (PHI, p.clone())]);
    let l3 = b.axiom("AP", &[(PSI, na.clone()), (PI, p.clone())]);
    let l4 = b.r4(l3);
    let l5 = b.axiom("A3", &[(PSI, na.clone()), (PHI, p.clone())]);
    let l6 = b.axiom("A1", &[(PHI, imp(na.clone(), p))]);
    b.glue(&[l1, l2, l4, l5, l6], Formula::ann(na.clone(), na))
}

fn build(system: SystemName, f: impl FnOnce(&mut ProofBuilder) -> usize) -> Proof {
    let mut b = ProofBuilder::new(system);
    f(&mut b);
    b.finish()
}

/// The built-in derivations, in a fixed order.
pub fn builtin_corpus() -> Vec<CorpusEntry> {
    let (p, q, r, s) = (atom("p"), atom("q"), atom("r"), atom("s"));
    let entry = |name, description, proof| CorpusEntry {
        name,
        description,
        proof,
    };
    let k = SystemName::K;
    vec![
        entry(
            "fact-circ-to-delta",
            "∘p ∧ p → Δp",
            build(k, |b| circ_truth_to_delta(b, &p)),
        ),
        entry(
            "delta-conjunction-2",
            "Δq ∧ Δr → Δ(q ∧ r)",
            build(k, |b| conjunction(b, &[q.clone(), r.clone()], delta, delta_and)),
        ),
        entry(
            "delta-conjunction-3",
            "Δq ∧ Δr ∧ Δs → Δ(q ∧ r ∧ s)",
            build(k, |b| {
                conjunction(b, &[q.clone(), r.clone(), s.clone()], delta, delta_and)
            }),
        ),
        entry(
            "circ-conjunction-2",
            "∘q ∧ ∘r → ∘(q ∧ r)",
            build(k, |b| conjunction(b, &[q.clone(), r.clone()], circ, circ_and)),
        ),
        entry(
            "circ-conjunction-3",
            "∘q ∧ ∘r ∧ ∘s → ∘(q ∧ r ∧ s)",
            build(k, |b| {
                conjunction(b, &[q.clone(), r.clone(), s.clone()], circ, circ_and)
            }),
        ),
        entry(
            "circ-weakening",
            "∘p ∧ p → ∘(q → p)",
            build(k, |b| {
                let a3 = b.axiom("A3", &[(PSI, q.clone()), (PHI, p.clone())]);
                b.glue(
                    &[a3],
                    imp(and(circ(p.clone()), p.clone()), circ(imp(q.clone(), p.clone()))),
                )
            }),
        ),
        entry(
            "shared-premises-1",
            "Δ(q → p) ∧ Δq ∧ ∘(p → q) → p ∨ Δp",
            build(k, |b| shared_premises(b, &p, std::slice::from_ref(&q))),
        ),
        entry(
            "shared-premises-2",
            "Δ(q ∧ r → p) ∧ Δq ∧ Δr ∧ ∘(p → q) ∧ ∘(p → r) → p ∨ Δp",
            build(k, |b| shared_premises(b, &p, &[q.clone(), r.clone()])),
        ),
        entry(
            "circ-premises-delta-1",
            "Δ(q → p) ∧ ∘(¬p → q) ∧ p → Δp",
            build(k, |b| circ_premises_delta(b, &p, std::slice::from_ref(&q))),
        ),
        entry(
            "circ-premises-delta-2",
            "Δ(q ∧ r → p) ∧ ∘(¬p → q) ∧ ∘(¬p → r) ∧ p → Δp",
            build(k, |b| circ_premises_delta(b, &p, &[q.clone(), r.clone()])),
        ),
        entry(
            "circ-premises-circ-1",
            "∘(q → p) ∧ ∘(¬p → q) → ∘p",
            build(k, |b| circ_premises_circ(b, &p, std::slice::from_ref(&q))),
        ),
        entry(
            "circ-premises-circ-2",
            "∘(q ∧ r → p) ∧ ∘(¬p → q) ∧ ∘(¬p → r) → ∘p",
            build(k, |b| circ_premises_circ(b, &p, &[q.clone(), r.clone()])),
        ),
        entry(
            "accident-fixes-circ",
            "•p ∧ Δp → Δ∘p",
            build(k, |b| accident_fixes_circ(b, &p)),
        ),
        entry(
            "kd-delta-negation",
            "Δp ↔ Δ¬p",
            build(SystemName::KD, |b| {
                let a2 = b.axiom("A2", &[(PHI, p.clone())]);
                b.glue(&[a2], Formula::iff(delta(p.clone()), delta(not(p.clone()))))
            }),
        ),
        entry(
            "k4-delta-anchor",
            "Δp → ΔΔp ∧ Δ∘p ∧ ∘Δp ∧ ∘∘p",
            build(SystemName::K4, |b| delta_anchor(b, &p)),
        ),
        entry(
            "t-delta-truth-circ",
            "Δp ∧ p → ∘p",
            build(SystemName::T, |b| {
                let at = b.axiom("AT", &[(PHI, p.clone()), (PSI, Formula::Top)]);
                let g = b.circ_congruence(imp(Formula::Top, p.clone()), p.clone());
                b.glue(&[at, g], imp(and(delta(p.clone()), p.clone()), circ(p.clone())))
            }),
        ),
        entry(
            "moore-self-refuting",
            "[•p]¬•p",
            build(SystemName::PalK, moore_positive),
        ),
        entry(
            "moore-negation-successful",
            "[¬•p]¬•p",
            build(SystemName::PalK, moore_negative),
        ),
        entry(
            "moore-whether",
            "[?•p]¬•p",
            build(SystemName::PalK, |b| {
                let l = moore_positive(b);
                let m = moore_negative(b);
                let ap = bullet(atom("p"));
                b.glue(&[l, m], Formula::ann_whether(ap.clone(), not(ap)))
            }),
        ),
    ]
}

pub fn corpus_entry(name: &str) -> Option<CorpusEntry> {
    builtin_corpus().into_iter().find(|e| e.name == name)
}
