//! Workloads shared by the benchmarks.

use conacc_core::kripke::{Frame, Model, WorldSet};
use conacc_core::syntax::{parse, Formula};

pub fn formula(text: &str) -> Formula {
    parse(text).expect("benchmark formula parses")
}

/// The validity claims timed at each bound.
pub const CLAIMS: [&str; 4] = [
    "C p -> A p | A ~p",
    "A(p -> q) & A(~p -> r) -> C p",
    "A q -> ([] p <-> D p & O(~q -> p))",
    "A q & D p & O(~q -> p) -> D O(~r -> p)",
];

/// A cycle over `n` worlds with a chord, `p` true on the even worlds.
pub fn cycle_model(n: usize) -> Model {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|w| (w, (w + 1) % n)).collect();
    edges.push((0, n / 2));
    let frame = Frame::from_pairs(n, &edges).expect("valid frame");
    let even = (0..n).step_by(2).fold(0u64, |acc, w| acc | 1 << w);
    Model::new(frame).with_atom("p", WorldSet(even))
}

/// `∇•∇•…p` nested `depth` times, alternating operators.
pub fn nested(depth: usize) -> Formula {
    (0..depth).fold(
        formula("p"),
        |f, i| if i % 2 == 0 { Formula::con(f) } else { Formula::acc(f) },
    )
}

/// `[•p][•p]…¬•p` with `depth` announcements.
pub fn announcements(depth: usize) -> Formula {
    let ap = formula("A p");
    (0..depth).fold(Formula::not(ap.clone()), |f, _| Formula::ann(ap.clone(), f))
}
