//! Bidirectional breadth-first search over an implicit move graph.

use std::collections::HashMap;
use std::hash::Hash;

/// A graph given by its out-edges. Moves are only required to be reversible
/// at the level of the certificate the caller builds from them.
pub(crate) trait MoveSystem {
    type State: Clone + Eq + Hash;
    type Move: Clone;

    /// Appends every successor of `state`. Successors must come out in a
    /// deterministic order.
    fn successors(&self, state: &Self::State, out: &mut Vec<(Self::Move, Self::State)>);
}

struct Node<S, M> {
    state: S,
    parent: Option<(usize, M)>,
}

struct Side<S, M> {
    nodes: Vec<Node<S, M>>,
    index: HashMap<S, usize>,
    frontier: Vec<usize>,
}

impl<S: Clone + Eq + Hash, M: Clone> Side<S, M> {
    fn new(start: S) -> Self {
        let mut index = HashMap::new();
        index.insert(start.clone(), 0);
        Side { nodes: vec![Node { state: start, parent: None }], index, frontier: vec![0] }
    }

    /// Moves leading from the root to node `at`, each with the state it produces.
    fn trail(&self, mut at: usize) -> Vec<(M, S)> {
        let mut out = Vec::new();
        while let Some((parent, mv)) = &self.nodes[at].parent {
            out.push((mv.clone(), self.nodes[at].state.clone()));
            at = *parent;
        }
        out.reverse();
        out
    }
}

/// Result of a meeting: the start side's trail to the meeting state and the
/// goal side's trail to the same state.
pub(crate) struct Meeting<S, M> {
    pub from_start: Vec<(M, S)>,
    pub from_goal: Vec<(M, S)>,
}

pub(crate) enum Outcome<S, M> {
    Met(Meeting<S, M>),
    Exhausted { explored: usize },
}

/// Expands the smaller frontier one full layer at a time until the two
/// visited sets intersect or either side has seen `max_nodes` states.
pub(crate) fn bidirectional<Sys: MoveSystem>(
    sys: &Sys,
    start: Sys::State,
    goal: Sys::State,
    max_nodes: usize,
) -> Outcome<Sys::State, Sys::Move> {
    if start == goal {
        return Outcome::Met(Meeting { from_start: Vec::new(), from_goal: Vec::new() });
    }
    let mut sides = [Side::new(start), Side::new(goal)];
    let mut buf = Vec::new();
    loop {
        let which = if sides[0].frontier.len() <= sides[1].frontier.len() { 0 } else { 1 };
        let (this, other) = if which == 0 {
            let (a, b) = sides.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = sides.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        if this.frontier.is_empty() || this.nodes.len() >= max_nodes {
            return Outcome::Exhausted { explored: sides[0].nodes.len() + sides[1].nodes.len() };
        }
        let frontier = std::mem::take(&mut this.frontier);
        for at in frontier {
            buf.clear();
            let state = this.nodes[at].state.clone();
            sys.successors(&state, &mut buf);
            for (mv, next) in buf.drain(..) {
                if this.index.contains_key(&next) {
                    continue;
                }
                let id = this.nodes.len();
                this.index.insert(next.clone(), id);
                this.nodes.push(Node { state: next.clone(), parent: Some((at, mv)) });
                if let Some(&hit) = other.index.get(&next) {
                    let mine = this.trail(id);
                    let theirs = other.trail(hit);
                    let (from_start, from_goal) = if which == 0 { (mine, theirs) } else { (theirs, mine) };
                    return Outcome::Met(Meeting { from_start, from_goal });
                }
                this.frontier.push(id);
                if this.nodes.len() >= max_nodes {
                    break;
                }
            }
            if this.nodes.len() >= max_nodes {
                break;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Integers with moves +1 and *2.
    struct Arith;

    impl MoveSystem for Arith {
        type State = i64;
        type Move = &'static str;

        fn successors(&self, s: &i64, out: &mut Vec<(&'static str, i64)>) {
            out.push(("inc", s + 1));
            out.push(("dec", s - 1));
            out.push(("dbl", s * 2));
        }
    }

    #[test]
    fn finds_meeting_point() {
        match bidirectional(&Arith, 3, 25, 10_000) {
            Outcome::Met(m) => {
                let reached_from_start = m.from_start.last().map(|(_, s)| *s).unwrap_or(3);
                let reached_from_goal = m.from_goal.last().map(|(_, s)| *s).unwrap_or(25);
                assert_eq!(reached_from_start, reached_from_goal);
            }
            Outcome::Exhausted { .. } => panic!("should meet"),
        }
    }

    #[test]
    fn identical_endpoints() {
        assert!(matches!(bidirectional(&Arith, 7, 7, 1), Outcome::Met(m) if m.from_start.is_empty()));
    }

    #[test]
    fn respects_node_budget() {
        struct Line;
        impl MoveSystem for Line {
            type State = u32;
            type Move = ();
            fn successors(&self, s: &u32, out: &mut Vec<((), u32)>) {
                out.push(((), s + 1));
            }
        }
        // Both sides only move upward, so 0 can never meet 1_000_000 from below.
        assert!(matches!(bidirectional(&Line, 0, 1_000_000, 50), Outcome::Exhausted { .. }));
    }
}
