//! Bounded evidence for the open iteration conjectures over transitive frames.
//!
//! Series:
//! - `Exponents`: `Δp → ∘ⁿΔᵐ∘ˡΔᵏp` for `2 ≤ n+m+l+k ≤ max_exponent_sum`, plus
//!   the tuple `(0,1,0,0)` as a smoke test.
//! - `Heart`: `Δp → Δᵐ♥p` for nonempty strings `♥` over `Δ ∇ • ∘ ¬`.
//! - `BareDelta`: the empty-string case `Δp → Δᵐp`, kept apart.
//! - `Anchor`: `Δp → ΔΔp ∧ Δ∘p ∧ ∘Δp ∧ ∘∘p`, which is provable.
//!
//! A counterframe refutes provability (the system is sound for transitive
//! frames); a clean sweep is evidence at the bound only.

use std::collections::HashMap;

use super::{find_countermodel, DecideError, Report};
use crate::kripke::FrameClass;
use crate::syntax::{atom, Formula};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Series {
    Exponents,
    Heart,
    BareDelta,
    Anchor,
}

impl Series {
    pub fn name(self) -> &'static str {
        match self {
            Series::Exponents => "exponents",
            Series::Heart => "heart",
            Series::BareDelta => "bare-delta",
            Series::Anchor => "anchor",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjectureBounds {
    pub max_worlds: usize,
    pub max_exponent_sum: usize,
    pub max_heart_len: usize,
    /// Largest `m` in `Δᵐ♥`.
    pub max_delta_power: usize,
}

impl ConjectureBounds {
    pub fn new(max_worlds: usize, max_prefix: usize) -> ConjectureBounds {
        ConjectureBounds {
            max_worlds,
            max_exponent_sum: max_prefix,
            max_heart_len: max_prefix,
            max_delta_power: 2,
        }
    }
}

type Modality = fn(Formula) -> Formula;

const HEART: [(char, Modality); 5] = [
    ('Δ', Formula::noncon),
    ('∇', Formula::con),
    ('•', Formula::acc),
    ('∘', Formula::ess),
    ('¬', Formula::not),
];

fn power(f: Formula, k: usize, op: fn(Formula) -> Formula) -> Formula {
    (0..k).fold(f, |acc, _| op(acc))
}

/// Every instance of the sweep, labelled, in a fixed order.
pub fn conjecture_instances(b: &ConjectureBounds) -> Vec<(Series, String, Formula)> {
    let p = atom("p");
    let delta_p = Formula::noncon(p.clone());
    let claim = |rhs: Formula| Formula::implies(delta_p.clone(), rhs);
    let mut out = Vec::new();

    let mut tuples = vec![(0, 1, 0, 0)];
    for sum in 2..=b.max_exponent_sum {
        for n in 0..=sum {
            for m in 0..=sum - n {
                for l in 0..=sum - n - m {
                    tuples.push((n, m, l, sum - n - m - l));
                }
            }
        }
    }
    for (n, m, l, k) in tuples {
        let inner = power(p.clone(), k, Formula::noncon);
        let inner = power(inner, l, Formula::ess);
        let inner = power(inner, m, Formula::noncon);
        let rhs = power(inner, n, Formula::ess);
        out.push((Series::Exponents, format!("exponents ({n},{m},{l},{k})"), claim(rhs)));
    }

    for m in 1..=b.max_delta_power {
        out.push((
            Series::BareDelta,
            format!("bare-delta m={m}"),
            claim(power(p.clone(), m, Formula::noncon)),
        ));
    }
    let mut hearts: Vec<Vec<usize>> = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..b.max_heart_len {
        layer = layer
            .iter()
            .flat_map(|h| (0..HEART.len()).map(move |i| [h.as_slice(), &[i]].concat()))
            .collect();
        hearts.extend(layer.iter().cloned());
    }
    for m in 1..=b.max_delta_power {
        for h in &hearts {
            // the string is read left to right, outermost first
            let body = h.iter().rev().fold(p.clone(), |acc, &i| (HEART[i].1)(acc));
            let name: String = h.iter().map(|&i| HEART[i].0).collect();
            out.push((
                Series::Heart,
                format!("heart m={m} {name}"),
                claim(power(body, m, Formula::noncon)),
            ));
        }
    }

    let anchor = Formula::conj([
        Formula::noncon(Formula::noncon(p.clone())),
        Formula::noncon(Formula::ess(p.clone())),
        Formula::ess(Formula::noncon(p.clone())),
        Formula::ess(Formula::ess(p.clone())),
    ]);
    out.push((Series::Anchor, "anchor".to_string(), claim(anchor)));
    out
}

/// Runs the sweep with the same bound for exponent sums and string lengths.
pub fn conjecture_sweep(max_worlds: usize, max_prefix: usize) -> Result<Vec<Report>, DecideError> {
    conjecture_sweep_with(&ConjectureBounds::new(max_worlds, max_prefix))
}

pub fn conjecture_sweep_with(b: &ConjectureBounds) -> Result<Vec<Report>, DecideError> {
    let mut cache: HashMap<Formula, Report> = HashMap::new();
    let mut out = Vec::new();
    for (series, label, formula) in conjecture_instances(b) {
        let mut report = match cache.get(&formula) {
            Some(r) => r.clone(),
            None => {
                let r = find_countermodel(&formula, FrameClass::Four, b.max_worlds)?;
                cache.insert(formula, r.clone());
                r
            }
        };
        report.label = Some(label);
        report.note = Some(if report.holds() {
            format!("{}: evidence at bound", series.name())
        } else {
            format!("{}: counterframe found", series.name())
        });
        out.push(report);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse;

    #[test]
    fn instance_counts() {
        let b = ConjectureBounds {
            max_worlds: 2,
            max_exponent_sum: 3,
            max_heart_len: 2,
            max_delta_power: 2,
        };
        let inst = conjecture_instances(&b);
        let count = |s: Series| inst.iter().filter(|(x, _, _)| *x == s).count();
        // tuples of four naturals with sum 2 or 3, plus the smoke tuple
        assert_eq!(count(Series::Exponents), 10 + 20 + 1);
        assert_eq!(count(Series::Heart), 2 * (5 + 25));
        assert_eq!(count(Series::BareDelta), 2);
        assert_eq!(count(Series::Anchor), 1);
    }

    #[test]
    fn instance_shapes() {
        let b = ConjectureBounds::new(2, 2);
        let inst = conjecture_instances(&b);
        let find = |label: &str| inst.iter().find(|(_, l, _)| l == label).unwrap().2.clone();
        assert_eq!(find("exponents (0,1,0,0)"), parse("D p -> D p").unwrap());
        assert_eq!(find("exponents (1,0,0,1)"), parse("D p -> O D p").unwrap());
        assert_eq!(find("exponents (0,1,1,0)"), parse("D p -> D O p").unwrap());
        assert_eq!(find("heart m=2 •¬"), parse("D p -> D D A ~p").unwrap());
    }

    #[test]
    fn known_instances() {
        let b = ConjectureBounds::new(3, 2);
        let reports = conjecture_sweep_with(&b).unwrap();
        let by = |label: &str| reports.iter().find(|r| r.label.as_deref() == Some(label)).unwrap();
        for label in [
            "exponents (0,2,0,0)",
            "exponents (2,0,0,0)",
            "exponents (0,1,0,0)",
            "anchor",
        ] {
            assert!(by(label).holds(), "{label}");
        }
        assert!(reports.iter().all(Report::recheck));
    }
}
