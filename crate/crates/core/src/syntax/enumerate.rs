//! Exhaustive enumeration of formulas by size.
//!
//! Formulas are generated over a canonical core: the leaves `⊤`, `⊥` and the
//! atoms, plus `¬`, `∧` and whichever modal operators (and announcements) the
//! language allows. Each formula appears once, in nondecreasing size order.
//! Within a size the order is: unary `¬`, `∇`, `•`, `◇` (each over the previous
//! size in order), then `∧` by size of its left conjunct, then announcements.
//!
//! The enumeration is held as a DAG so that bounded searches can evaluate
//! every formula with one operation per node.

use super::{Formula, LanguageTag};

pub type NodeId = u32;

type UnaryNode = fn(NodeId) -> Node;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Node {
    Top,
    Bot,
    /// Index into [`FormulaDag::atoms`].
    Atom(u32),
    Not(NodeId),
    Con(NodeId),
    Acc(NodeId),
    Diamond(NodeId),
    And(NodeId, NodeId),
    Ann(NodeId, NodeId),
}

#[derive(Clone, Debug)]
pub struct FormulaDag {
    atoms: Vec<String>,
    language: LanguageTag,
    nodes: Vec<Node>,
    /// `levels[k]` is the half-open id range of formulas of size `k`.
    levels: Vec<(NodeId, NodeId)>,
}

impl FormulaDag {
    pub fn new<S: AsRef<str>>(atoms: &[S], language: LanguageTag) -> Self {
        FormulaDag {
            atoms: atoms.iter().map(|a| a.as_ref().to_string()).collect(),
            language,
            nodes: Vec::new(),
            levels: vec![(0, 0)],
        }
    }

    /// Builds every formula up to the given size.
    pub fn with_max_size<S: AsRef<str>>(atoms: &[S], language: LanguageTag, max_size: usize) -> Self {
        let mut dag = Self::new(atoms, language);
        dag.grow_to(max_size);
        dag
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn language(&self) -> LanguageTag {
        self.language
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn node(&self, id: NodeId) -> Node {
        self.nodes[id as usize]
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Ids of the formulas of exactly size `k`.
    pub fn level(&self, k: usize) -> std::ops::Range<NodeId> {
        let (a, b) = self.levels[k];
        a..b
    }

    /// Extends the enumeration by one size level.
    pub fn grow(&mut self) {
        let k = self.levels.len();
        let start = self.nodes.len() as NodeId;
        if k == 1 {
            self.nodes.push(Node::Top);
            self.nodes.push(Node::Bot);
            for i in 0..self.atoms.len() {
                self.nodes.push(Node::Atom(i as u32));
            }
        } else {
            let prev = self.level(k - 1);
            let lang = self.language;
            let unary: [(bool, UnaryNode); 4] = [
                (true, Node::Not),
                (lang.allows_con(), Node::Con),
                (lang.allows_acc(), Node::Acc),
                (lang.allows_diamond(), Node::Diamond),
            ];
            for (allowed, make) in unary {
                if allowed {
                    self.nodes.extend(prev.clone().map(make));
                }
            }
            self.push_binary(k, Node::And);
            if lang.allows_announcements() {
                self.push_binary(k, Node::Ann);
            }
        }
        let end = self.nodes.len() as NodeId;
        self.levels.push((start, end));
    }

    fn push_binary(&mut self, k: usize, make: fn(NodeId, NodeId) -> Node) {
        // one node for the connective itself
        for left_size in 1..k.saturating_sub(1) {
            let right_size = k - 1 - left_size;
            for a in self.level(left_size) {
                for b in self.level(right_size) {
                    self.nodes.push(make(a, b));
                }
            }
        }
    }

    pub fn grow_to(&mut self, max_size: usize) {
        while self.max_size() < max_size {
            self.grow();
        }
    }

    /// The formula tree of a node.
    pub fn formula(&self, id: NodeId) -> Formula {
        match self.node(id) {
            Node::Top => Formula::Top,
            Node::Bot => Formula::Bot,
            Node::Atom(i) => Formula::Atom(self.atoms[i as usize].clone()),
            Node::Not(a) => Formula::not(self.formula(a)),
            Node::Con(a) => Formula::con(self.formula(a)),
            Node::Acc(a) => Formula::acc(self.formula(a)),
            Node::Diamond(a) => Formula::diamond(self.formula(a)),
            Node::And(a, b) => Formula::and(self.formula(a), self.formula(b)),
            Node::Ann(a, b) => Formula::ann(self.formula(a), self.formula(b)),
        }
    }

    pub fn formulas(&self) -> impl Iterator<Item = Formula> + '_ {
        (0..self.nodes.len() as NodeId).map(move |id| self.formula(id))
    }
}

/// Every core formula over `atoms` in `language` of size at most `max_size`,
/// in enumeration order.
pub fn enumerate_formulas<S: AsRef<str>>(
    atoms: &[S],
    language: LanguageTag,
    max_size: usize,
) -> impl Iterator<Item = Formula> {
    let dag = FormulaDag::with_max_size(atoms, language, max_size);
    (0..dag.len() as NodeId).map(move |id| dag.formula(id))
}

/// Number of enumerated formulas of each size `0..=max_size` (index 0 is 0).
pub fn count_formulas(atom_count: usize, language: LanguageTag, max_size: usize) -> Vec<u128> {
    let unary = 1
        + lang_count(language.allows_con())
        + lang_count(language.allows_acc())
        + lang_count(language.allows_diamond());
    let binary = 1 + lang_count(language.allows_announcements());
    let mut counts = vec![0u128; max_size + 1];
    for k in 1..=max_size {
        counts[k] = if k == 1 {
            2 + atom_count as u128
        } else {
            let pairs: u128 = (1..k.saturating_sub(1)).map(|i| counts[i] * counts[k - 1 - i]).sum();
            unary * counts[k - 1] + binary * pairs
        };
    }
    counts
}

fn lang_count(allowed: bool) -> u128 {
    u128::from(allowed)
}
