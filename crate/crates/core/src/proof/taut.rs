use std::collections::HashMap;

use thiserror::Error;

use crate::syntax::{desugar, Formula};

/// Largest number of propositional variables after abstraction.
pub const MAX_TAUT_VARIABLES: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TautError {
    #[error("{0} propositional variables after abstraction, limit is {MAX_TAUT_VARIABLES}")]
    TooManyVariables(usize),
}

enum Op {
    Const(bool),
    Var(usize),
    Not,
    And,
}

const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

/// Whether `f` is an instance of a propositional tautology. Maximal
/// subformulas headed by `∇`, `•`, `◇` or an announcement become variables;
/// syntactically equal ones (after desugaring) share a variable.
pub fn taut_check(f: &Formula) -> Result<bool, TautError> {
    let core = desugar(f);
    let mut vars: HashMap<&Formula, usize> = HashMap::new();
    let mut ops = Vec::new();
    flatten(&core, &mut vars, &mut ops);
    let n = vars.len();
    if n > MAX_TAUT_VARIABLES {
        return Err(TautError::TooManyVariables(n));
    }
    let rows = 1u64 << n;
    let words = rows.div_ceil(64);
    let tail_mask = if rows >= 64 { !0 } else { (1u64 << rows) - 1 };
    let mut stack: Vec<u64> = Vec::with_capacity(ops.len());
    for w in 0..words {
        stack.clear();
        for op in &ops {
            match *op {
                Op::Const(b) => stack.push(if b { !0 } else { 0 }),
                Op::Var(i) if i < 6 => stack.push(LOW_PATTERNS[i]),
                Op::Var(i) => stack.push(if (w >> (i - 6)) & 1 == 1 { !0 } else { 0 }),
                Op::Not => {
                    let a = stack.pop().expect("operand");
                    stack.push(!a);
                }
                Op::And => {
                    let b = stack.pop().expect("operand");
                    let a = stack.pop().expect("operand");
                    stack.push(a & b);
                }
            }
        }
        if stack.pop().expect("result") & tail_mask != tail_mask {
            return Ok(false);
        }
    }
    Ok(true)
}

fn flatten<'a>(f: &'a Formula, vars: &mut HashMap<&'a Formula, usize>, ops: &mut Vec<Op>) {
    match f {
        Formula::Top => ops.push(Op::Const(true)),
        Formula::Bot => ops.push(Op::Const(false)),
        Formula::Not(a) => {
            flatten(a, vars, ops);
            ops.push(Op::Not);
        }
        Formula::And(a, b) => {
            flatten(a, vars, ops);
            flatten(b, vars, ops);
            ops.push(Op::And);
        }
        // desugared input has only atoms and modal or announcement heads left
        _ => {
            let next = vars.len();
            let i = *vars.entry(f).or_insert(next);
            ops.push(Op::Var(i));
        }
    }
}
