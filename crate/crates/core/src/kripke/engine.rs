//! Bit-sliced evaluation over many valuations at once.
//!
//! A *block* covers `64 * words` consecutive valuation indices. For each world,
//! the value of a subformula is a bitvector with one bit per valuation in the
//! block. Valuation index `v` makes atom `a` true at world `w` iff bit
//! `a * n + w` of `v` is set (`n` = number of worlds).
//!
//! Announcements are evaluated under a *domain*: a per-world bitvector telling
//! which worlds survive in each valuation's restricted model. Modal clauses
//! only look at successors inside the domain.

use super::{Frame, Model, WorldSet};
use crate::syntax::{desugar, Formula, FormulaDag, Node, NodeId};

/// Largest number of 64-bit words in one block.
pub const MAX_BLOCK_WORDS: usize = 64;

const LOW_PATTERNS: [u64; 6] = [
    0xAAAA_AAAA_AAAA_AAAA,
    0xCCCC_CCCC_CCCC_CCCC,
    0xF0F0_F0F0_F0F0_F0F0,
    0xFF00_FF00_FF00_FF00,
    0xFFFF_0000_FFFF_0000,
    0xFFFF_FFFF_0000_0000,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Op {
    Top,
    Bot,
    Atom(u32),
    Not(u32),
    And(u32, u32),
    Con(u32),
    Acc(u32),
    Dia(u32),
    /// Fills domain `dst` with the current domain intersected with slot `psi`.
    Restrict {
        dst: u32,
        psi: u32,
    },
    Ann {
        psi: u32,
        body: u32,
    },
}

/// A formula compiled to a flat instruction list in evaluation order.
#[derive(Clone, Debug)]
pub struct Program {
    atoms: Vec<String>,
    /// Instruction and the domain it runs under. Slot `i` holds the value of
    /// instruction `i`.
    ops: Vec<(Op, u32)>,
    domain_count: u32,
    root: u32,
}

impl Program {
    /// Compiles `f` against an atom list. Atoms outside the list are false.
    pub fn compile<S: AsRef<str>>(f: &Formula, atoms: &[S]) -> Program {
        let mut prog = Program {
            atoms: atoms.iter().map(|a| a.as_ref().to_string()).collect(),
            ops: Vec::new(),
            domain_count: 1,
            root: 0,
        };
        prog.root = prog.tree(&desugar(f), 0);
        prog
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    fn push(&mut self, op: Op, domain: u32) -> u32 {
        self.ops.push((op, domain));
        (self.ops.len() - 1) as u32
    }

    fn tree(&mut self, f: &Formula, d: u32) -> u32 {
        let op = match f {
            Formula::Top => Op::Top,
            Formula::Bot => Op::Bot,
            Formula::Atom(name) => match self.atoms.iter().position(|a| a == name) {
                Some(i) => Op::Atom(i as u32),
                None => Op::Bot,
            },
            Formula::Not(a) => Op::Not(self.tree(a, d)),
            Formula::And(a, b) => {
                let a = self.tree(a, d);
                Op::And(a, self.tree(b, d))
            }
            Formula::Con(a) => Op::Con(self.tree(a, d)),
            Formula::Acc(a) => Op::Acc(self.tree(a, d)),
            Formula::Diamond(a) => Op::Dia(self.tree(a, d)),
            Formula::Ann(psi, body) => {
                let psi = self.tree(psi, d);
                return self.announcement(psi, body, d);
            }
            _ => unreachable!("desugared input"),
        };
        self.push(op, d)
    }

    fn announcement(&mut self, psi: u32, body: &Formula, d: u32) -> u32 {
        let inner = self.domain_count;
        self.domain_count += 1;
        self.push(Op::Restrict { dst: inner, psi }, d);
        let body = self.tree(body, inner);
        self.push(Op::Ann { psi, body }, d)
    }

    /// Compiles every node of an enumeration DAG. Returns the program and the
    /// slot holding each node's value.
    pub fn from_dag(dag: &FormulaDag) -> (Program, Vec<u32>) {
        let mut prog = Program {
            atoms: dag.atoms().to_vec(),
            ops: Vec::with_capacity(dag.len()),
            domain_count: 1,
            root: 0,
        };
        let mut slot = Vec::with_capacity(dag.len());
        for (id, node) in dag.nodes().iter().enumerate() {
            let s = |i: NodeId| slot[i as usize];
            let op = match *node {
                Node::Top => Op::Top,
                Node::Bot => Op::Bot,
                Node::Atom(i) => Op::Atom(i),
                Node::Not(a) => Op::Not(s(a)),
                Node::Con(a) => Op::Con(s(a)),
                Node::Acc(a) => Op::Acc(s(a)),
                Node::Diamond(a) => Op::Dia(s(a)),
                Node::And(a, b) => Op::And(s(a), s(b)),
                Node::Ann(a, b) => {
                    // the body must be re-evaluated under the restricted domain
                    let body = dag.formula(b);
                    let psi = s(a);
                    let out = prog.announcement(psi, &body, 0);
                    slot.push(out);
                    debug_assert_eq!(slot.len(), id + 1);
                    continue;
                }
            };
            let out = prog.push(op, 0);
            slot.push(out);
        }
        prog.root = prog.ops.len().saturating_sub(1) as u32;
        (prog, slot)
    }
}

/// Where atom values come from.
#[derive(Clone, Copy, Debug)]
pub enum Valuations<'a> {
    /// All valuations, block starting at valuation index `base` (a multiple
    /// of 64).
    Block { base: u64, words: usize },
    /// A single valuation, one set per program atom, replicated across a word.
    Fixed(&'a [WorldSet]),
}

impl Valuations<'_> {
    fn words(&self) -> usize {
        match self {
            Valuations::Block { words, .. } => *words,
            Valuations::Fixed(_) => 1,
        }
    }
}

/// Number of valuations over `atom_count` atoms on `n` worlds, if it fits.
pub fn valuation_count(atom_count: usize, n: usize) -> Option<u64> {
    let bits = atom_count * n;
    (bits < 64).then(|| 1u64 << bits)
}

/// Block layout for enumerating all valuations: (words per block, block count,
/// mask of valid bits in the last word).
pub fn block_plan(total: u64) -> (usize, u64, u64) {
    if total < 64 {
        (1, 1, (1u64 << total) - 1)
    } else {
        let words_total = total / 64;
        let words = (words_total as usize).min(MAX_BLOCK_WORDS);
        (words, words_total / words as u64, u64::MAX)
    }
}

/// Reusable scratch space for running programs.
#[derive(Default)]
pub struct Evaluator {
    values: Vec<u64>,
    domains: Vec<u64>,
    pos: Vec<u64>,
    neg: Vec<u64>,
    n: usize,
    words: usize,
}

impl Evaluator {
    pub fn new() -> Evaluator {
        Evaluator::default()
    }

    /// Runs `prog` on a frame given by successor sets. Afterwards
    /// [`Evaluator::slot`] reads any instruction's value.
    pub fn run(&mut self, prog: &Program, succ: &[WorldSet], vals: Valuations<'_>) {
        let n = succ.len();
        let words = vals.words();
        let stride = n * words;
        self.n = n;
        self.words = words;
        self.values.clear();
        self.values.resize(prog.ops.len() * stride, 0);
        self.domains.clear();
        self.domains.resize(prog.domain_count as usize * stride, 0);
        self.domains[..stride].fill(u64::MAX);
        self.pos.resize(words, 0);
        self.neg.resize(words, 0);

        for (i, &(op, d)) in prog.ops.iter().enumerate() {
            let (done, rest) = self.values.split_at_mut(i * stride);
            let out = &mut rest[..stride];
            let slot = |j: u32| &done[j as usize * stride..(j as usize + 1) * stride];
            let dom_at = d as usize * stride;
            match op {
                Op::Top => out.fill(u64::MAX),
                Op::Bot => out.fill(0),
                Op::Atom(a) => fill_atom(out, a as usize, n, words, vals),
                Op::Not(a) => {
                    for (o, x) in out.iter_mut().zip(slot(a)) {
                        *o = !x;
                    }
                }
                Op::And(a, b) => {
                    for ((o, x), y) in out.iter_mut().zip(slot(a)).zip(slot(b)) {
                        *o = x & y;
                    }
                }
                Op::Con(a) | Op::Acc(a) | Op::Dia(a) => {
                    let x = slot(a);
                    let dom = &self.domains[dom_at..dom_at + stride];
                    for w in 0..n {
                        self.pos.fill(0);
                        self.neg.fill(0);
                        for t in succ[w].iter() {
                            let xt = &x[t * words..(t + 1) * words];
                            let dt = &dom[t * words..(t + 1) * words];
                            for k in 0..words {
                                self.pos[k] |= xt[k] & dt[k];
                                self.neg[k] |= !xt[k] & dt[k];
                            }
                        }
                        let ow = &mut out[w * words..(w + 1) * words];
                        let xw = &x[w * words..(w + 1) * words];
                        for k in 0..words {
                            ow[k] = match op {
                                Op::Con(_) => self.pos[k] & self.neg[k],
                                Op::Acc(_) => xw[k] & self.neg[k],
                                _ => self.pos[k],
                            };
                        }
                    }
                }
                Op::Restrict { dst, psi } => {
                    let p = slot(psi);
                    let (lo, hi) = self.domains.split_at_mut(dst as usize * stride);
                    let parent = &lo[dom_at..dom_at + stride];
                    for ((o, x), y) in hi[..stride].iter_mut().zip(p).zip(parent) {
                        *o = x & y;
                    }
                }
                Op::Ann { psi, body } => {
                    for ((o, x), y) in out.iter_mut().zip(slot(psi)).zip(slot(body)) {
                        *o = !x | y;
                    }
                }
            }
        }
    }

    /// The value of instruction slot `s` at world `w` after [`Evaluator::run`].
    pub fn slot(&self, s: u32, w: usize) -> &[u64] {
        let stride = self.n * self.words;
        let base = s as usize * stride + w * self.words;
        &self.values[base..base + self.words]
    }

    pub fn root(&self, prog: &Program, w: usize) -> &[u64] {
        self.slot(prog.root, w)
    }

    /// Truth set of slot `s` after a [`Valuations::Fixed`] run.
    pub fn fixed_truth_set(&self, s: u32) -> WorldSet {
        let mut out = WorldSet::EMPTY;
        for w in 0..self.n {
            if self.slot(s, w)[0] & 1 == 1 {
                out.insert(w);
            }
        }
        out
    }

    /// Truth set of `prog` on a concrete model.
    pub fn truth_set(&mut self, prog: &Program, m: &Model) -> WorldSet {
        let sets: Vec<WorldSet> = prog.atoms.iter().map(|a| m.atom(a)).collect();
        self.run(prog, m.frame.successor_sets(), Valuations::Fixed(&sets));
        self.fixed_truth_set(prog.root)
    }
}

fn fill_atom(out: &mut [u64], a: usize, n: usize, words: usize, vals: Valuations<'_>) {
    for w in 0..n {
        let ow = &mut out[w * words..(w + 1) * words];
        match vals {
            Valuations::Fixed(sets) => ow.fill(if sets[a].contains(w) { u64::MAX } else { 0 }),
            Valuations::Block { base, .. } => {
                let bit = a * n + w;
                if bit < 6 {
                    ow.fill(LOW_PATTERNS[bit]);
                } else {
                    let word0 = base >> 6;
                    for (j, o) in ow.iter_mut().enumerate() {
                        *o = if (word0 + j as u64) >> (bit - 6) & 1 == 1 {
                            u64::MAX
                        } else {
                            0
                        };
                    }
                }
            }
        }
    }
}

/// Truth set of `f` on `m` via the sliced engine.
pub fn truth_set_fast(m: &Model, f: &Formula) -> WorldSet {
    let atoms: Vec<String> = crate::syntax::atoms(f).into_iter().collect();
    let prog = Program::compile(f, &atoms);
    Evaluator::new().truth_set(&prog, m)
}

/// The model on `frame` given by valuation index `v` over `atoms`.
pub fn model_from_index<S: AsRef<str>>(frame: &Frame, atoms: &[S], v: u64) -> Model {
    let n = frame.len();
    let mask = WorldSet::full(n).0;
    let mut m = Model::new(frame.clone());
    for (i, a) in atoms.iter().enumerate() {
        let bits = if i * n >= 64 { 0 } else { (v >> (i * n)) & mask };
        m.set_atom(a.as_ref(), WorldSet(bits));
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kripke::truth_set;
    use crate::syntax::{enumerate_formulas, parse, LanguageTag};

    #[test]
    fn block_plan_shapes() {
        assert_eq!(block_plan(1), (1, 1, 1));
        assert_eq!(block_plan(16), (1, 1, 0xFFFF));
        assert_eq!(block_plan(64), (1, 1, u64::MAX));
        assert_eq!(block_plan(4096), (64, 1, u64::MAX));
        assert_eq!(block_plan(1 << 16), (64, 16, u64::MAX));
    }

    /// Runs every block of valuations and compares each bit with the
    /// reference evaluator on the corresponding concrete model.
    fn agree_on_frame(frame: &Frame, f: &Formula, atoms: &[&str]) {
        let prog = Program::compile(f, atoms);
        let total = valuation_count(atoms.len(), frame.len()).unwrap();
        let (words, blocks, valid) = block_plan(total);
        let mut ev = Evaluator::new();
        for b in 0..blocks {
            let base = b * 64 * words as u64;
            ev.run(&prog, frame.successor_sets(), Valuations::Block { base, words });
            for j in 0..words {
                for bit in 0..64 {
                    if valid >> bit & 1 == 0 {
                        continue;
                    }
                    let v = base + 64 * j as u64 + bit;
                    let m = model_from_index(frame, atoms, v);
                    let expected = truth_set(&m, f);
                    for w in 0..frame.len() {
                        let got = ev.root(&prog, w)[j] >> bit & 1 == 1;
                        assert_eq!(got, expected.contains(w), "{f} v={v} w={w} {frame}");
                    }
                }
            }
        }
    }

    #[test]
    fn sliced_matches_reference_on_enumerated_formulas() {
        let formulas: Vec<Formula> = enumerate_formulas(&["p", "q"], LanguageTag::Full, 4).collect();
        for idx in [0u64, 1, 2, 5, 7, 9, 11, 15] {
            let frame = Frame::from_relation_index(2, idx);
            for f in &formulas {
                agree_on_frame(&frame, f, &["p", "q"]);
            }
        }
    }

    #[test]
    fn sliced_matches_reference_on_wide_blocks() {
        // 3 atoms on 4 worlds: 4096 valuations in one 64-word block
        let frame = Frame::from_pairs(4, &[(0, 1), (1, 2), (2, 0), (2, 3), (3, 3)]).unwrap();
        for text in [
            "A q & D p & O(~q -> p) -> O(~q -> O(~r -> p))",
            "[! A p] ~A p",
            "[! p | C q] (A r -> [! ~q] <> p)",
            "r",
        ] {
            agree_on_frame(&frame, &parse(text).unwrap(), &["p", "q", "r"]);
        }
        // 2 atoms on 4 worlds: 256 valuations in four words
        let f = parse("[? C p] (A q -> D p)").unwrap();
        agree_on_frame(&frame, &f, &["p", "q"]);
    }

    #[test]
    fn dag_program_matches_tree_program() {
        let dag = FormulaDag::with_max_size(&["p"], LanguageTag::Full, 5);
        let (prog, slots) = Program::from_dag(&dag);
        let frame = Frame::from_pairs(3, &[(0, 1), (1, 1), (1, 2), (2, 0)]).unwrap();
        let m = Model::new(frame).with_atom("p", WorldSet(0b011));
        let mut ev = Evaluator::new();
        let sets = [m.atom("p")];
        ev.run(&prog, m.frame.successor_sets(), Valuations::Fixed(&sets));
        for (id, &s) in slots.iter().enumerate() {
            let f = dag.formula(id as NodeId);
            assert_eq!(ev.fixed_truth_set(s), truth_set(&m, &f), "{f}");
        }
    }
}
