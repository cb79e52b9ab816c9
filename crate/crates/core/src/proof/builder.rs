use super::check::{Justification, Line, Proof};
use super::system::SystemName;
use crate::syntax::Formula;

/// Appends justified lines and returns their 1-based numbers. Misuse (an MP
/// whose major premise is not an implication, an unknown schema) panics: the
/// builder is for hand-written derivations, and the checker has the final say.
#[derive(Clone, Debug)]
pub struct ProofBuilder {
    proof: Proof,
}

impl ProofBuilder {
    pub fn new(system: SystemName) -> ProofBuilder {
        ProofBuilder {
            proof: Proof {
                system,
                premises: vec![],
                lines: vec![],
            },
        }
    }

    pub fn system(&self) -> SystemName {
        self.proof.system
    }

    pub fn line(&self, i: usize) -> &Formula {
        &self.proof.lines[i - 1].formula
    }

    fn push(&mut self, formula: Formula, just: Justification) -> usize {
        self.proof.lines.push(Line { formula, just });
        self.proof.lines.len()
    }

    pub fn premise(&mut self, f: Formula) -> usize {
        self.proof.premises.push(f.clone());
        let index = self.proof.premises.len();
        self.push(f, Justification::Premise { index })
    }

    pub fn axiom(&mut self, name: &str, bindings: &[(&str, Formula)]) -> usize {
        let schema = self
            .proof
            .system
            .schema(name)
            .unwrap_or_else(|| panic!("no schema {name} in {}", self.proof.system));
        self.push(schema.instantiate(bindings), Justification::axiom(schema.name))
    }

    pub fn taut(&mut self, f: Formula) -> usize {
        self.push(f, Justification::Taut)
    }

    /// From `line i` and `line j = line i → ψ`, concludes `ψ`.
    pub fn mp(&mut self, i: usize, j: usize) -> usize {
        let Formula::Implies(_, b) = self.line(j) else {
            panic!("line {j} is not an implication")
        };
        let b = b.as_ref().clone();
        self.push(b, Justification::mp(i, j))
    }

    pub fn r1(&mut self, i: usize) -> usize {
        let f = Formula::noncon(self.line(i).clone());
        self.push(f, Justification::R1 { from: [i] })
    }

    pub fn r2(&mut self, i: usize) -> usize {
        let f = Formula::ess(self.line(i).clone());
        self.push(f, Justification::R2 { from: [i] })
    }

    fn sides(&self, i: usize) -> (Formula, Formula) {
        let Formula::Iff(a, b) = self.line(i) else {
            panic!("line {i} is not an equivalence")
        };
        (a.as_ref().clone(), b.as_ref().clone())
    }

    pub fn r3(&mut self, i: usize) -> usize {
        let (a, b) = self.sides(i);
        self.push(
            Formula::iff(Formula::noncon(a), Formula::noncon(b)),
            Justification::R3 { from: [i] },
        )
    }

    pub fn r4(&mut self, i: usize) -> usize {
        let (a, b) = self.sides(i);
        self.push(
            Formula::iff(Formula::ess(a), Formula::ess(b)),
            Justification::R4 { from: [i] },
        )
    }

    /// Derives `goal` from the given lines when `l1 → … → lk → goal` is a
    /// tautology: one TAUT line, then one MP per line.
    pub fn glue(&mut self, lines: &[usize], goal: Formula) -> usize {
        let chain = Formula::implies_chain(lines.iter().map(|&i| self.line(i).clone()), goal);
        let mut cur = self.taut(chain);
        for &i in lines {
            cur = self.mp(i, cur);
        }
        cur
    }

    /// `Δα ↔ Δβ` from the tautology `α ↔ β`.
    pub fn delta_congruence(&mut self, a: Formula, b: Formula) -> usize {
        let eq = self.taut(Formula::iff(a, b));
        self.r3(eq)
    }

    /// `∘α ↔ ∘β` from the tautology `α ↔ β`.
    pub fn circ_congruence(&mut self, a: Formula, b: Formula) -> usize {
        let eq = self.taut(Formula::iff(a, b));
        self.r4(eq)
    }

    pub fn finish(self) -> Proof {
        self.proof
    }
}
