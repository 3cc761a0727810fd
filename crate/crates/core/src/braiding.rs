//! Turning an oriented twisted link diagram into a twisted braid.
//!
//! Every ascending part of the diagram is eliminated. A free up-arc is cut at
//! its top. A classical crossing passed by an ascending strand is isolated by
//! cuts just before and after that passage. The resulting pieces only ever
//! travel down through classical crossings, so each becomes one braid strand
//! visiting its crossings from top to bottom. Strands are brought next to each
//! other by virtual crossings wherever needed, and a final virtual
//! permutation at the bottom sends every piece to the top position of the
//! piece that follows it on its component. The closure therefore has the same
//! twisted Gauss code as the input; only virtual crossings are added.

use serde::Serialize;

use crate::diagram::{trace_components, Dir, DiagramError, Event, Layout, MorseDiagram, Passage, Role};
use crate::word::{BraidWord, Category, Generator};

/// A crossing met by at least one ascending strand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidCrossing {
    pub id: usize,
    /// 0-based index of the crossing event.
    pub event: usize,
    pub classical: bool,
    /// How many of the two strands travel upward through it.
    pub ascending_strands: usize,
    /// Bars on the ascending runs through this crossing.
    pub bars: Vec<usize>,
}

/// An ascending run from a cup to a cap that meets no crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeUpArc {
    pub id: usize,
    pub component: usize,
    pub cup: usize,
    pub cap: usize,
    pub bars: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpArcDecomposition {
    pub valid_crossings: Vec<ValidCrossing>,
    pub free_up_arcs: Vec<FreeUpArc>,
    /// Indices of every remaining event.
    pub down_skeleton: Vec<usize>,
}

impl UpArcDecomposition {
    pub fn classical_valid(&self) -> usize {
        self.valid_crossings.iter().filter(|c| c.classical).count()
    }

    pub fn virtual_valid(&self) -> usize {
        self.valid_crossings.len() - self.classical_valid()
    }
}

/// Involved passages of one component, in travel order.
fn involved(comp: &[Passage]) -> Vec<Passage> {
    comp.iter().copied().filter(|p| p.involved).collect()
}

fn is_cup_turn(events: &[Event], p: &Passage) -> bool {
    matches!(events[p.event], Event::Cup(..)) && p.dir == Dir::Down
}

fn is_cap_turn(events: &[Event], p: &Passage) -> bool {
    matches!(events[p.event], Event::Cap(..)) && p.dir == Dir::Up
}

/// Ascending runs of a component as index ranges into its passage list:
/// `(cup turn, cap turn)`, with the passages strictly between them ascending.
fn ascending_runs(events: &[Event], ps: &[Passage]) -> Vec<(usize, usize)> {
    let len = ps.len();
    let mut runs = Vec::new();
    for start in 0..len {
        if !is_cup_turn(events, &ps[start]) {
            continue;
        }
        let mut k = (start + 1) % len;
        while !is_cap_turn(events, &ps[k]) {
            k = (k + 1) % len;
        }
        runs.push((start, k));
    }
    runs
}

fn run_members(len: usize, run: (usize, usize)) -> Vec<usize> {
    let mut out = Vec::new();
    let mut k = (run.0 + 1) % len;
    while k != run.1 {
        out.push(k);
        k = (k + 1) % len;
    }
    out
}

pub fn find_up_arcs(d: &MorseDiagram) -> Result<UpArcDecomposition, DiagramError> {
    let layout = Layout::build(d)?;
    let comps = trace_components(d, &layout);
    let events = d.events();
    let mut ascending_at: Vec<usize> = vec![0; events.len()];
    let mut free_up_arcs = Vec::new();
    // bars on runs that contain crossings, keyed by the crossing they join
    let mut run_bars: Vec<(usize, usize)> = Vec::new();
    for (c, comp) in comps.iter().enumerate() {
        let ps = involved(comp);
        for run in ascending_runs(events, &ps) {
            let members = run_members(ps.len(), run);
            let crossings: Vec<usize> = members.iter().map(|&k| ps[k].event).filter(|&e| events[e].is_crossing()).collect();
            let bars: Vec<usize> =
                members.iter().map(|&k| ps[k].event).filter(|&e| matches!(events[e], Event::Bar(_))).collect();
            for &e in &crossings {
                ascending_at[e] += 1;
            }
            if crossings.is_empty() {
                free_up_arcs.push(FreeUpArc { id: 0, component: c, cup: ps[run.0].event, cap: ps[run.1].event, bars });
            } else {
                for &bar in &bars {
                    let owner = crossings.iter().copied().find(|&e| e > bar).unwrap_or(*crossings.last().unwrap());
                    run_bars.push((owner, bar));
                }
            }
        }
    }
    let mut valid_crossings: Vec<ValidCrossing> = (0..events.len())
        .filter(|&e| ascending_at[e] > 0)
        .map(|e| ValidCrossing {
            id: 0,
            event: e,
            classical: events[e].is_classical(),
            ascending_strands: ascending_at[e],
            bars: run_bars.iter().filter(|(o, _)| *o == e).map(|&(_, b)| b).collect(),
        })
        .collect();
    // scan order: top to bottom
    valid_crossings.sort_by_key(|v| std::cmp::Reverse(v.event));
    free_up_arcs.sort_by_key(|a| std::cmp::Reverse(a.cap));
    let mut id = 1;
    for v in &mut valid_crossings {
        v.id = id;
        id += 1;
    }
    for a in &mut free_up_arcs {
        a.id = id;
        id += 1;
    }
    let mut owned = vec![false; events.len()];
    for v in &valid_crossings {
        owned[v.event] = true;
        for &b in &v.bars {
            owned[b] = true;
        }
    }
    for a in &free_up_arcs {
        for &b in &a.bars {
            owned[b] = true;
        }
    }
    let down_skeleton = (0..events.len()).filter(|&e| !owned[e]).collect();
    Ok(UpArcDecomposition { valid_crossings, free_up_arcs, down_skeleton })
}

/// Where the bar at event `k` slides to when pushed upward along its strand:
/// just below the first classical crossing on that strand, or over the top of
/// the cap onto the descending strand. `None` if it is already parked.
fn slide_target(events: &[Event], k: usize) -> Option<(usize, usize)> {
    let mut pos = events[k].position() - 1;
    for (j, &e) in events.iter().enumerate().skip(k + 1) {
        let q = e.position() - 1;
        let parked = |target: (usize, usize)| {
            if events[k + 1..target.0].iter().all(|e| matches!(e, Event::Bar(_))) && target.1 == events[k].position() - 1 {
                None
            } else {
                Some(target)
            }
        };
        match e {
            Event::Cup(..) if pos >= q => pos += 2,
            Event::Cap(..) if pos == q || pos == q + 1 => {
                let other = if pos == q { q + 1 } else { q };
                return Some((j, other));
            }
            Event::Cap(..) if pos > q + 1 => pos -= 2,
            Event::CrossPos(_) | Event::CrossNeg(_) if pos == q || pos == q + 1 => return parked((j, pos)),
            Event::CrossVirtual(_) if pos == q => pos = q + 1,
            Event::CrossVirtual(_) if pos == q + 1 => pos = q,
            _ => {}
        }
    }
    unreachable!("every strand of a closed diagram reaches a cap")
}

/// Slides every bar on an ascending strand upward until it sits on the
/// descending side just below a cap, or just below the first classical
/// crossing it meets. Only virtual crossings and caps are passed, so the
/// Gauss code is unchanged.
pub fn normalize_bars_off_up_arcs(d: &MorseDiagram) -> Result<MorseDiagram, DiagramError> {
    let mut events = d.events().to_vec();
    loop {
        let layout = Layout::build(&MorseDiagram::new(d.category(), events.clone()))?;
        let mv = (0..events.len()).find_map(|k| match events[k] {
            Event::Bar(p) if layout.dirs[k][p - 1] == Dir::Up => slide_target(&events, k).map(|t| (k, t)),
            _ => None,
        });
        let Some((k, (j, pos))) = mv else { break };
        events.insert(j, Event::Bar(pos + 1));
        events.remove(k);
    }
    Ok(MorseDiagram::new(d.category(), events))
}

/// One step of the braiding trace.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceStep {
    pub step: usize,
    pub kind: &'static str,
    /// Decomposition id of the eliminated valid crossing or free up-arc.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arc: Option<usize>,
    /// 1-based slice of the crossing handled in this step.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<usize>,
    pub letters: String,
    /// Valid crossings and free up-arcs not yet eliminated after this step.
    pub up_arcs_remaining: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Braiding {
    pub word: BraidWord,
    pub decomposition: UpArcDecomposition,
    pub trace: Vec<TraceStep>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Item {
    Visit { event: usize, role: Role },
    Bar,
    Cut,
}

#[derive(Debug, Clone, Default)]
struct Piece {
    leading_bars: usize,
    /// Crossing visits in travel order, each with the bars following it.
    visits: Vec<(usize, Role, usize)>,
}

impl Piece {
    fn push_bar(&mut self) {
        match self.visits.last_mut() {
            Some(v) => v.2 += 1,
            None => self.leading_bars += 1,
        }
    }

    fn absorb_bars(&mut self, count: usize) {
        for _ in 0..count {
            self.push_bar();
        }
    }
}

fn component_items(d: &MorseDiagram, layout: &Layout, ps: &[Passage], cut_after_caps: &[usize]) -> Vec<Item> {
    let events = d.events();
    let mut items = Vec::new();
    for p in ps {
        let e = events[p.event];
        if e.is_classical() {
            let role = crate::diagram::passage_role(d, layout, p);
            if p.dir == Dir::Up {
                items.push(Item::Cut);
                items.push(Item::Visit { event: p.event, role });
                items.push(Item::Cut);
            } else {
                items.push(Item::Visit { event: p.event, role });
            }
        } else if matches!(e, Event::Bar(_)) {
            items.push(Item::Bar);
        } else if is_cap_turn(events, p) && cut_after_caps.contains(&p.event) {
            items.push(Item::Cut);
        }
    }
    items
}

/// Splits a cyclic item list at its cuts and folds pieces without crossings
/// into the piece before them.
fn pieces_of(items: &[Item]) -> Vec<Piece> {
    let Some(first_cut) = items.iter().position(|i| *i == Item::Cut) else {
        let mut p = Piece::default();
        for it in items {
            match *it {
                Item::Visit { event, role } => p.visits.push((event, role, 0)),
                Item::Bar => p.push_bar(),
                Item::Cut => {}
            }
        }
        return vec![p];
    };
    let len = items.len();
    let mut raw = Vec::new();
    let mut cur = Piece::default();
    for k in 1..=len {
        match items[(first_cut + k) % len] {
            Item::Cut => raw.push(std::mem::take(&mut cur)),
            Item::Visit { event, role } => cur.visits.push((event, role, 0)),
            Item::Bar => cur.push_bar(),
        }
    }
    if raw.iter().all(|p| p.visits.is_empty()) {
        let bars = raw.iter().map(|p| p.leading_bars).sum();
        return vec![Piece { leading_bars: bars, visits: Vec::new() }];
    }
    // rotate so a piece with crossings comes first, then fold empties backward
    let lead = raw.iter().position(|p| !p.visits.is_empty()).unwrap();
    raw.rotate_left(lead);
    let mut out: Vec<Piece> = Vec::new();
    for p in raw {
        if p.visits.is_empty() {
            out.last_mut().unwrap().absorb_bars(p.leading_bars);
        } else {
            out.push(p);
        }
    }
    out
}

struct Emitter {
    letters: Vec<Generator>,
    /// Piece occupying each position.
    at: Vec<usize>,
}

impl Emitter {
    fn pos(&self, piece: usize) -> usize {
        self.at.iter().position(|&p| p == piece).unwrap()
    }

    fn swap(&mut self, i: usize) {
        self.letters.push(Generator::v(i + 1));
        self.at.swap(i, i + 1);
    }

    fn bar(&mut self, piece: usize, count: usize) {
        let p = self.pos(piece);
        for _ in 0..count {
            self.letters.push(Generator::b(p + 1));
        }
    }
}

pub fn braid(d: &MorseDiagram) -> Result<BraidWord, DiagramError> {
    Ok(braid_with_trace(d)?.word)
}

pub fn braid_with_trace(d: &MorseDiagram) -> Result<Braiding, DiagramError> {
    let decomposition = find_up_arcs(d)?;
    let normal = normalize_bars_off_up_arcs(d)?;
    let layout = Layout::build(&normal)?;
    let comps = trace_components(&normal, &layout);
    let events = normal.events();
    // ascending runs without classical crossings are cut at their cap
    let mut free_caps: Vec<usize> = Vec::new();
    for comp in &comps {
        let ps = involved(comp);
        for run in ascending_runs(events, &ps) {
            if run_members(ps.len(), run).iter().all(|&k| !events[ps[k].event].is_classical()) {
                free_caps.push(ps[run.1].event);
            }
        }
    }

    let mut pieces: Vec<Piece> = Vec::new();
    let mut successor: Vec<usize> = Vec::new();
    for comp in &comps {
        let items = component_items(&normal, &layout, &involved(comp), &free_caps);
        let ps = pieces_of(&items);
        let base = pieces.len();
        for k in 0..ps.len() {
            successor.push(base + (k + 1) % ps.len());
        }
        pieces.extend(ps);
    }

    let category = match d.category() {
        Category::Classical => Category::Virtual,
        c => c,
    };
    let flat = category.is_flat();
    let n = pieces.len();
    let mut em = Emitter { letters: Vec::new(), at: (0..n).collect() };
    let mut trace = Vec::new();
    let mut remaining = decomposition.valid_crossings.len() + decomposition.free_up_arcs.len();
    let push_step = |trace: &mut Vec<TraceStep>, kind, arc, slice, letters: &[Generator], remaining| {
        trace.push(TraceStep {
            step: trace.len() + 1,
            kind,
            arc,
            slice,
            letters: crate::word::letters_to_string(letters),
            up_arcs_remaining: remaining,
        });
    };

    for arc in &decomposition.free_up_arcs {
        remaining -= 1;
        push_step(&mut trace, "free_up_arc", Some(arc.id), None, &[], remaining);
    }
    for (k, p) in pieces.iter().enumerate() {
        em.bar(k, p.leading_bars);
    }
    if !em.letters.is_empty() {
        let letters = em.letters.clone();
        push_step(&mut trace, "skeleton", None, None, &letters, remaining);
    }

    // (piece, index into its visits) for every classical event
    let mut owners: Vec<Vec<(usize, usize)>> = vec![Vec::new(); events.len()];
    for (k, p) in pieces.iter().enumerate() {
        for (t, v) in p.visits.iter().enumerate() {
            owners[v.0].push((k, t));
        }
    }
    let valid_id = |e: usize| decomposition.valid_crossings.iter().find(|v| v.event == e).map(|v| v.id);
    for e in (0..events.len()).rev() {
        let start = em.letters.len();
        if events[e].is_classical() {
            let [(pa, ta), (pb, tb)] = owners[e][..] else {
                unreachable!("a classical crossing is visited exactly twice")
            };
            let over = if pieces[pa].visits[ta].1 == Role::Over { pa } else { pb };
            let under = if over == pa { pb } else { pa };
            // bring the two strands next to each other
            let (left, right) = if em.pos(pa) < em.pos(pb) { (pa, pb) } else { (pb, pa) };
            while em.pos(right) > em.pos(left) + 1 {
                let r = em.pos(right);
                em.swap(r - 1);
            }
            let i = em.pos(left);
            if flat {
                em.letters.push(Generator::c(i + 1));
            } else {
                let positive = events[e] == Event::CrossPos(events[e].position());
                // positive: over strand enters at i + 1; negative: over strand enters at i
                let over_pos = if positive { i + 1 } else { i };
                if em.pos(over) != over_pos {
                    em.swap(i);
                }
                em.letters.push(if positive { Generator::sigma(i + 1) } else { Generator::sigma_inv(i + 1) });
            }
            em.at.swap(i, i + 1);
            em.bar(pa, pieces[pa].visits[ta].2);
            em.bar(pb, pieces[pb].visits[tb].2);
            let _ = under;
        }
        let letters = em.letters[start..].to_vec();
        match valid_id(e) {
            Some(id) => {
                remaining -= 1;
                push_step(&mut trace, "valid_crossing", Some(id), Some(e + 1), &letters, remaining);
            }
            None if !letters.is_empty() => push_step(&mut trace, "skeleton", None, Some(e + 1), &letters, remaining),
            None => {}
        }
    }

    // route each piece to the top position of its successor
    let start = em.letters.len();
    let target: Vec<usize> = (0..n).map(|k| successor[k]).collect();
    // bubble sort the pieces by their successor's top position
    while let Some(i) = (0..n.saturating_sub(1)).find(|&i| target[em.at[i]] > target[em.at[i + 1]]) {
        em.swap(i);
    }
    let letters = em.letters[start..].to_vec();
    if !letters.is_empty() {
        push_step(&mut trace, "skeleton", None, None, &letters, remaining);
    }
    let word = BraidWord::new(n.max(1), category, em.letters).expect("emitted letters fit the strand count");
    Ok(Braiding { word, decomposition, trace })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{closure_diagram, gauss_code, gauss_equivalent};

    fn diagram(body: &str) -> MorseDiagram {
        MorseDiagram::from_file_str(&format!("morse category=twisted\n{body}")).unwrap()
    }

    fn round_trip(d: &MorseDiagram) -> BraidWord {
        let w = braid(d).unwrap();
        let back = gauss_code(&closure_diagram(&w)).unwrap();
        assert!(gauss_equivalent(&gauss_code(d).unwrap(), &back), "{}\n{w}", d.to_file_string());
        assert_eq!(w.sigma_count(), d.classical_count());
        assert_eq!(w.count(crate::word::Kind::B), d.bar_count());
        w
    }

    #[test]
    fn unknot_has_one_free_up_arc() {
        let d = diagram("cup 1 ccw\ncap 1 ccw\n");
        let dec = find_up_arcs(&d).unwrap();
        assert_eq!(dec.free_up_arcs.len(), 1);
        assert!(dec.valid_crossings.is_empty());
        let w = round_trip(&d);
        assert_eq!((w.n(), w.len()), (1, 0));
    }

    #[test]
    fn bar_leaves_the_up_arc() {
        let d = diagram("cup 1 ccw\nbar 2\ncap 1 ccw\n");
        let moved = normalize_bars_off_up_arcs(&d).unwrap();
        assert_eq!(moved.events(), &[Event::Cup(1, Orientation::Ccw), Event::Bar(1), Event::Cap(1, Orientation::Ccw)]);
        assert_eq!(gauss_code(&moved).unwrap(), gauss_code(&d).unwrap());
        let plain = diagram("cup 1 ccw\nbar 1\ncap 1 ccw\n");
        assert_eq!(normalize_bars_off_up_arcs(&plain).unwrap(), plain);
        round_trip(&d);
    }

    #[test]
    fn closures_rebraid_to_equal_codes() {
        for (text, n) in [("s1 s1 s1", 2), ("b1 s1 v1 S1 b2", 2), ("s1 v2 S1 b3 s2 b1", 3), ("", 3)] {
            let w = BraidWord::parse(text, n, Category::Twisted).unwrap();
            let d = closure_diagram(&w);
            // every closure strand returns upward with no crossings
            let dec = find_up_arcs(&d).unwrap();
            assert_eq!(dec.free_up_arcs.len(), n);
            assert!(dec.valid_crossings.is_empty());
            round_trip(&d);
        }
    }

    #[test]
    fn ascending_crossing_is_valid() {
        // two nested loops, the inner one crossing the outer one's rising side
        let d = diagram("cup 1 ccw\ncup 1 cw\nx+ 3\nxv 3\ncap 1 cw\ncap 1 ccw\n");
        d.validate().unwrap();
        let dec = find_up_arcs(&d).unwrap();
        assert_eq!(dec.valid_crossings.len(), 2);
        let mut all: Vec<usize> = dec.down_skeleton.clone();
        all.extend(dec.valid_crossings.iter().map(|v| v.event));
        all.extend(dec.valid_crossings.iter().flat_map(|v| v.bars.iter().copied()));
        all.extend(dec.free_up_arcs.iter().flat_map(|a| a.bars.iter().copied()));
        all.sort_unstable();
        assert_eq!(all, (0..d.events().len()).collect::<Vec<_>>());
        round_trip(&d);
    }

    #[test]
    fn trace_counts_down() {
        let d = diagram("cup 1 ccw\ncup 1 cw\nx+ 3\nbar 4\nxv 3\ncap 1 cw\ncap 1 ccw\n");
        let b = braid_with_trace(&d).unwrap();
        let total = b.decomposition.valid_crossings.len() + b.decomposition.free_up_arcs.len();
        let up: Vec<usize> = b
            .trace
            .iter()
            .filter(|s| s.kind != "skeleton")
            .map(|s| s.up_arcs_remaining)
            .collect();
        assert_eq!(up, (0..total).rev().collect::<Vec<_>>());
        let letters: Vec<String> = b.trace.iter().filter(|s| !s.letters.is_empty()).map(|s| s.letters.clone()).collect();
        assert_eq!(letters.join(" "), b.word.to_string());
    }

    use crate::diagram::Orientation;
}
