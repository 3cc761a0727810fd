//! Twisted link diagrams as stacks of Morse events, listed bottom to top.
//!
//! A `cup` creates two strands (a local minimum), a `cap` joins two strands
//! (a local maximum). Crossings and bars act on the live strands between
//! them. Positions in events and files are 1-based.
//!
//! Crossing convention: at a crossing with sign `+` the over strand and the
//! under strand, taken in their directions of travel, form a right-handed
//! pair. With both strands travelling down, as in a braid, `x+ i` is the
//! crossing whose over strand moves from position `i + 1` to `i`.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{BraidWord, Category, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Orientation {
    Cw,
    Ccw,
}

impl Orientation {
    pub fn name(self) -> &'static str {
        match self {
            Orientation::Cw => "cw",
            Orientation::Ccw => "ccw",
        }
    }

    /// Directions of the (left, right) strands at the event.
    fn dirs(self) -> (Dir, Dir) {
        match self {
            Orientation::Ccw => (Dir::Down, Dir::Up),
            Orientation::Cw => (Dir::Up, Dir::Down),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    Cup(usize, Orientation),
    Cap(usize, Orientation),
    CrossPos(usize),
    CrossNeg(usize),
    CrossVirtual(usize),
    Bar(usize),
}

impl Event {
    pub fn position(self) -> usize {
        match self {
            Event::Cup(p, _)
            | Event::Cap(p, _)
            | Event::CrossPos(p)
            | Event::CrossNeg(p)
            | Event::CrossVirtual(p)
            | Event::Bar(p) => p,
        }
    }

    pub fn is_classical(self) -> bool {
        matches!(self, Event::CrossPos(_) | Event::CrossNeg(_))
    }

    pub fn is_crossing(self) -> bool {
        matches!(self, Event::CrossPos(_) | Event::CrossNeg(_) | Event::CrossVirtual(_))
    }

    fn sign(self) -> i8 {
        match self {
            Event::CrossNeg(_) => -1,
            _ => 1,
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Event::Cup(p, o) => write!(f, "cup {p} {}", o.name()),
            Event::Cap(p, o) => write!(f, "cap {p} {}", o.name()),
            Event::CrossPos(p) => write!(f, "x+ {p}"),
            Event::CrossNeg(p) => write!(f, "x- {p}"),
            Event::CrossVirtual(p) => write!(f, "xv {p}"),
            Event::Bar(p) => write!(f, "bar {p}"),
        }
    }
}

impl FromStr for Event {
    type Err = String;

    fn from_str(line: &str) -> Result<Self, String> {
        let parts: Vec<&str> = line.split_whitespace().collect();
        let pos = |s: &str| -> Result<usize, String> {
            match s.parse::<usize>() {
                Ok(p) if p >= 1 => Ok(p),
                _ => Err(format!("bad position {s:?}")),
            }
        };
        let orient = |s: &str| match s {
            "cw" => Ok(Orientation::Cw),
            "ccw" => Ok(Orientation::Ccw),
            _ => Err(format!("bad orientation {s:?}")),
        };
        match parts.as_slice() {
            ["cup", p, o] => Ok(Event::Cup(pos(p)?, orient(o)?)),
            ["cap", p, o] => Ok(Event::Cap(pos(p)?, orient(o)?)),
            ["x+", p] => Ok(Event::CrossPos(pos(p)?)),
            ["x-", p] => Ok(Event::CrossNeg(pos(p)?)),
            ["xv", p] => Ok(Event::CrossVirtual(pos(p)?)),
            ["bar", p] => Ok(Event::Bar(pos(p)?)),
            _ => Err(format!("unrecognized event {line:?}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("slice {slice} ({event}): needs more live strands than the {width} present")]
    WidthMismatch { slice: usize, event: Event, width: usize },
    #[error("slice {slice} ({event}): position out of range for width {width}")]
    PositionOutOfRange { slice: usize, event: Event, width: usize },
    #[error("slice {slice} ({event}): strand directions do not match the annotation")]
    OrientationConflict { slice: usize, event: Event },
    #[error("diagram ends with {width} open strands")]
    NotClosed { width: usize },
    #[error("slice {slice} ({event}): not allowed in category {category}")]
    CategoryViolation { slice: usize, event: Event, category: Category },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum Dir {
    Up,
    Down,
}

impl Dir {
    fn signum(self) -> i8 {
        match self {
            Dir::Up => 1,
            Dir::Down => -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MorseDiagram {
    category: Category,
    events: Vec<Event>,
}

impl MorseDiagram {
    /// Builds a diagram without validating it.
    pub fn new(category: Category, events: Vec<Event>) -> Self {
        MorseDiagram { category, events }
    }

    pub fn category(&self) -> Category {
        self.category
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn classical_count(&self) -> usize {
        self.events.iter().filter(|e| e.is_classical()).count()
    }

    pub fn virtual_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::CrossVirtual(_))).count()
    }

    pub fn bar_count(&self) -> usize {
        self.events.iter().filter(|e| matches!(e, Event::Bar(_))).count()
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("morse category={}\n", self.category);
        for e in &self.events {
            out.push_str(&e.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_file_str(text: &str) -> Result<Self, DiagramError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or(DiagramError::Parse { line: 1, message: "empty file".into() })?;
        let category = header
            .strip_prefix("morse")
            .and_then(|rest| rest.trim().strip_prefix("category="))
            .ok_or_else(|| DiagramError::Parse { line: hl, message: format!("expected `morse category=<name>`, got {header:?}") })?
            .parse::<Category>()
            .map_err(|e| DiagramError::Parse { line: hl, message: e.to_string() })?;
        let mut events = Vec::new();
        for (line, text) in lines {
            events.push(text.parse::<Event>().map_err(|message| DiagramError::Parse { line, message })?);
        }
        Ok(MorseDiagram { category, events })
    }

    /// Checks width bookkeeping, positions, orientations, category and closure.
    pub fn validate(&self) -> Result<(), DiagramError> {
        Layout::build(self).map(|_| ())
    }
}

/// Per-level strand directions of a validated diagram. Level `k` lies between
/// events `k - 1` and `k`; level 0 is below everything.
#[derive(Debug, Clone)]
pub(crate) struct Layout {
    pub dirs: Vec<Vec<Dir>>,
}

impl Layout {
    pub(crate) fn build(d: &MorseDiagram) -> Result<Layout, DiagramError> {
        let mut dirs: Vec<Vec<Dir>> = vec![Vec::new()];
        let mut cur: Vec<Dir> = Vec::new();
        for (k, &event) in d.events.iter().enumerate() {
            let slice = k + 1;
            let width = cur.len();
            let allowed = match event {
                Event::Bar(_) => matches!(d.category, Category::Twisted | Category::FlatTwisted),
                Event::CrossVirtual(_) => d.category != Category::Classical,
                _ => true,
            };
            if !allowed {
                return Err(DiagramError::CategoryViolation { slice, event, category: d.category });
            }
            let p = event.position() - 1;
            match event {
                Event::Cup(_, o) => {
                    if p > width {
                        return Err(DiagramError::PositionOutOfRange { slice, event, width });
                    }
                    let (l, r) = o.dirs();
                    cur.splice(p..p, [l, r]);
                }
                Event::Cap(_, o) => {
                    if width < 2 {
                        return Err(DiagramError::WidthMismatch { slice, event, width });
                    }
                    if p + 1 >= width {
                        return Err(DiagramError::PositionOutOfRange { slice, event, width });
                    }
                    if (cur[p], cur[p + 1]) != o.dirs() {
                        return Err(DiagramError::OrientationConflict { slice, event });
                    }
                    cur.drain(p..p + 2);
                }
                Event::CrossPos(_) | Event::CrossNeg(_) | Event::CrossVirtual(_) => {
                    if width < 2 {
                        return Err(DiagramError::WidthMismatch { slice, event, width });
                    }
                    if p + 1 >= width {
                        return Err(DiagramError::PositionOutOfRange { slice, event, width });
                    }
                    cur.swap(p, p + 1);
                }
                Event::Bar(_) => {
                    if width < 1 {
                        return Err(DiagramError::WidthMismatch { slice, event, width });
                    }
                    if p >= width {
                        return Err(DiagramError::PositionOutOfRange { slice, event, width });
                    }
                }
            }
            dirs.push(cur.clone());
        }
        if !cur.is_empty() {
            return Err(DiagramError::NotClosed { width: cur.len() });
        }
        Ok(Layout { dirs })
    }
}

/// One pass of a component through an event.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Passage {
    pub event: usize,
    /// Direction of travel when entering the event.
    pub dir: Dir,
    /// For crossings: whether this strand occupies the lower left end.
    pub bottom_left: bool,
    /// Segment (level, 0-based position) the passage leaves from.
    pub from: (usize, usize),
    /// Whether the event acts on this strand rather than beside it.
    pub involved: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct State {
    level: usize,
    pos: usize,
    up: bool,
}

/// Follows one strand through the next event in its direction of travel.
fn advance(events: &[Event], s: State) -> (State, Passage) {
    let dir = if s.up { Dir::Up } else { Dir::Down };
    if s.up {
        let k = s.level;
        let e = events[k];
        let q = e.position() - 1;
        let mut bottom_left = false;
        let next = match e {
            Event::Cup(..) => State { level: k + 1, pos: if s.pos >= q { s.pos + 2 } else { s.pos }, up: true },
            Event::Cap(..) => {
                if s.pos == q {
                    State { level: k, pos: q + 1, up: false }
                } else if s.pos == q + 1 {
                    State { level: k, pos: q, up: false }
                } else if s.pos > q + 1 {
                    State { level: k + 1, pos: s.pos - 2, up: true }
                } else {
                    State { level: k + 1, pos: s.pos, up: true }
                }
            }
            Event::CrossPos(_) | Event::CrossNeg(_) | Event::CrossVirtual(_) => {
                bottom_left = s.pos == q;
                let pos = if s.pos == q {
                    q + 1
                } else if s.pos == q + 1 {
                    q
                } else {
                    s.pos
                };
                State { level: k + 1, pos, up: true }
            }
            Event::Bar(_) => State { level: k + 1, pos: s.pos, up: true },
        };
        let involved = match e {
            Event::Bar(_) => s.pos == q,
            Event::Cup(..) => false,
            _ => s.pos == q || s.pos == q + 1,
        };
        (next, Passage { event: k, dir, bottom_left, from: (s.level, s.pos), involved })
    } else {
        let k = s.level - 1;
        let e = events[k];
        let q = e.position() - 1;
        let mut bottom_left = false;
        let next = match e {
            Event::Cup(..) => {
                if s.pos == q {
                    State { level: s.level, pos: q + 1, up: true }
                } else if s.pos == q + 1 {
                    State { level: s.level, pos: q, up: true }
                } else if s.pos > q + 1 {
                    State { level: k, pos: s.pos - 2, up: false }
                } else {
                    State { level: k, pos: s.pos, up: false }
                }
            }
            Event::Cap(..) => State { level: k, pos: if s.pos >= q { s.pos + 2 } else { s.pos }, up: false },
            Event::CrossPos(_) | Event::CrossNeg(_) | Event::CrossVirtual(_) => {
                let pos = if s.pos == q {
                    q + 1
                } else if s.pos == q + 1 {
                    q
                } else {
                    s.pos
                };
                bottom_left = pos == q;
                State { level: k, pos, up: false }
            }
            Event::Bar(_) => State { level: k, pos: s.pos, up: false },
        };
        let involved = match e {
            Event::Bar(_) => s.pos == q,
            Event::Cap(..) => false,
            _ => s.pos == q || s.pos == q + 1,
        };
        (next, Passage { event: k, dir, bottom_left, from: (s.level, s.pos), involved })
    }
}

/// Every component as its cyclic sequence of passages, starting from the
/// lowest segment (smallest level, then leftmost position) it contains.
pub(crate) fn trace_components(d: &MorseDiagram, layout: &Layout) -> Vec<Vec<Passage>> {
    let mut seen: HashSet<(usize, usize)> = HashSet::new();
    let mut out = Vec::new();
    for level in 1..layout.dirs.len() {
        for pos in 0..layout.dirs[level].len() {
            if seen.contains(&(level, pos)) {
                continue;
            }
            let start = State { level, pos, up: layout.dirs[level][pos] == Dir::Up };
            let mut s = start;
            let mut passages = Vec::new();
            loop {
                seen.insert((s.level, s.pos));
                let (next, passage) = advance(&d.events, s);
                passages.push(passage);
                s = next;
                if s == start {
                    break;
                }
                debug_assert!(passages.len() <= 2 * d.events.len() * (d.events.len() + 1) + 4, "runaway trace");
            }
            out.push(passages);
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
    /// Flat crossings carry no over/under information.
    Flat,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Symbol {
    Visit { label: usize, role: Role, sign: i8 },
    Bar,
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Symbol::Bar => f.write_str("b"),
            Symbol::Visit { label, role: Role::Flat, .. } => write!(f, "F{label}"),
            Symbol::Visit { label, role, sign } => {
                let r = if role == Role::Over { 'O' } else { 'U' };
                let s = if sign > 0 { '+' } else { '-' };
                write!(f, "{r}{label}{s}")
            }
        }
    }
}

impl FromStr for Symbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s == "b" {
            return Ok(Symbol::Bar);
        }
        let bad = || format!("bad Gauss symbol {s:?}");
        let mut chars = s.chars();
        let role = match chars.next() {
            Some('O') => Role::Over,
            Some('U') => Role::Under,
            Some('F') => Role::Flat,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if role == Role::Flat {
            let label = rest.parse().map_err(|_| bad())?;
            return Ok(Symbol::Visit { label, role, sign: 0 });
        }
        let (digits, sign) = match rest.strip_suffix('+') {
            Some(d) => (d, 1),
            None => (rest.strip_suffix('-').ok_or_else(bad)?, -1),
        };
        let label = digits.parse().map_err(|_| bad())?;
        Ok(Symbol::Visit { label, role, sign })
    }
}

/// Per-component cyclic sequences of classical crossing visits and bars.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TwistedGaussCode {
    pub components: Vec<Vec<Symbol>>,
}

impl TwistedGaussCode {
    pub fn crossing_count(&self) -> usize {
        self.components.iter().flatten().filter(|s| matches!(s, Symbol::Visit { .. })).count() / 2
    }

    pub fn bar_count(&self) -> usize {
        self.components.iter().flatten().filter(|s| **s == Symbol::Bar).count()
    }

    /// Relabels crossings 1, 2, .. in order of first appearance.
    pub fn relabeled(&self) -> TwistedGaussCode {
        let mut map = HashMap::new();
        let components = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|&s| match s {
                        Symbol::Visit { label, role, sign } => {
                            let next = map.len() + 1;
                            let label = *map.entry(label).or_insert(next);
                            Symbol::Visit { label, role, sign }
                        }
                        Symbol::Bar => Symbol::Bar,
                    })
                    .collect()
            })
            .collect();
        TwistedGaussCode { components }
    }

    /// Text form: one component per line, symbols separated by spaces, an
    /// empty component written as `-`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.components {
            if c.is_empty() {
                out.push('-');
            } else {
                let parts: Vec<String> = c.iter().map(Symbol::to_string).collect();
                out.push_str(&parts.join(" "));
            }
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, String> {
        let mut components = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            if line == "-" {
                components.push(Vec::new());
            } else {
                components.push(line.split_whitespace().map(str::parse).collect::<Result<Vec<_>, _>>()?);
            }
        }
        Ok(TwistedGaussCode { components })
    }
}

impl fmt::Display for TwistedGaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.to_text().trim_end())
    }
}

/// Role of the strand entering a classical crossing passage.
pub(crate) fn passage_role(d: &MorseDiagram, layout: &Layout, p: &Passage) -> Role {
    let e = d.events[p.event];
    if d.category.is_flat() {
        return Role::Flat;
    }
    let q = e.position() - 1;
    let below = &layout.dirs[p.event];
    let product = below[q].signum() * below[q + 1].signum();
    let bottom_left_over = e.sign() == product;
    if p.bottom_left == bottom_left_over {
        Role::Over
    } else {
        Role::Under
    }
}

/// Traces every component and records classical crossing visits and bars.
pub fn gauss_code(d: &MorseDiagram) -> Result<TwistedGaussCode, DiagramError> {
    let layout = Layout::build(d)?;
    Ok(gauss_code_with(d, &layout, &trace_components(d, &layout)))
}

pub(crate) fn gauss_code_with(d: &MorseDiagram, layout: &Layout, comps: &[Vec<Passage>]) -> TwistedGaussCode {
    let mut labels: HashMap<usize, usize> = HashMap::new();
    let flat = d.category.is_flat();
    let components = comps
        .iter()
        .map(|c| {
            c.iter()
                .filter(|p| p.involved)
                .filter_map(|p| {
                    let e = d.events[p.event];
                    if e.is_classical() {
                        let next = labels.len() + 1;
                        let label = *labels.entry(p.event).or_insert(next);
                        let sign = if flat { 0 } else { e.sign() };
                        Some(Symbol::Visit { label, role: passage_role(d, layout, p), sign })
                    } else if matches!(e, Event::Bar(_)) {
                        Some(Symbol::Bar)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    TwistedGaussCode { components }
}

/// Whether some matching of components, cyclic rotation of each, and
/// bijection of crossing labels turns `g1` into `g2`.
pub fn gauss_equivalent(g1: &TwistedGaussCode, g2: &TwistedGaussCode) -> bool {
    if g1.components.len() != g2.components.len() {
        return false;
    }
    let mut a: Vec<usize> = g1.components.iter().map(Vec::len).collect();
    let mut b: Vec<usize> = g2.components.iter().map(Vec::len).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b || g1.crossing_count() != g2.crossing_count() {
        return false;
    }
    let mut used = vec![false; g2.components.len()];
    match_from(g1, g2, 0, &mut used, &mut BTreeMap::new(), &mut BTreeMap::new())
}

fn match_from(
    g1: &TwistedGaussCode,
    g2: &TwistedGaussCode,
    k: usize,
    used: &mut [bool],
    fwd: &mut BTreeMap<usize, usize>,
    back: &mut BTreeMap<usize, usize>,
) -> bool {
    if k == g1.components.len() {
        return true;
    }
    let c1 = &g1.components[k];
    for j in 0..g2.components.len() {
        let c2 = &g2.components[j];
        if used[j] || c2.len() != c1.len() {
            continue;
        }
        used[j] = true;
        let rotations = c2.len().max(1);
        for r in 0..rotations {
            let (mut f, mut b) = (fwd.clone(), back.clone());
            let ok = c1.iter().enumerate().all(|(t, s1)| {
                let s2 = &c2[(t + r) % c2.len()];
                match (*s1, *s2) {
                    (Symbol::Bar, Symbol::Bar) => true,
                    (Symbol::Visit { label: l1, role: r1, sign: x1 }, Symbol::Visit { label: l2, role: r2, sign: x2 }) => {
                        r1 == r2 && x1 == x2 && bind(&mut f, &mut b, l1, l2)
                    }
                    _ => false,
                }
            });
            if ok && match_from(g1, g2, k + 1, used, &mut f, &mut b) {
                return true;
            }
        }
        used[j] = false;
    }
    false
}

fn bind(f: &mut BTreeMap<usize, usize>, b: &mut BTreeMap<usize, usize>, l1: usize, l2: usize) -> bool {
    match (f.get(&l1), b.get(&l2)) {
        (Some(&x), _) if x != l2 => false,
        (_, Some(&y)) if y != l1 => false,
        _ => {
            f.insert(l1, l2);
            b.insert(l2, l1);
            true
        }
    }
}

/// Codes reachable by removing one kink (a label visited twice in a row), one
/// cancelling pair of crossings whose visits are adjacent on both strands, or
/// two adjacent bars.
pub fn gauss_reductions(g: &TwistedGaussCode) -> Vec<TwistedGaussCode> {
    let mut out = Vec::new();
    let mut places: HashMap<usize, Vec<(usize, usize, Role, i8)>> = HashMap::new();
    for (c, comp) in g.components.iter().enumerate() {
        for (k, s) in comp.iter().enumerate() {
            if let Symbol::Visit { label, role, sign } = *s {
                places.entry(label).or_default().push((c, k, role, sign));
            }
        }
    }
    let adjacent = |c: usize, k1: usize, k2: usize| {
        let len = g.components[c].len();
        len >= 2 && ((k1 + 1) % len == k2 || (k2 + 1) % len == k1)
    };
    let remove = |drop: &[(usize, usize)]| {
        let components = g
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                comp.iter()
                    .enumerate()
                    .filter(|(k, _)| !drop.contains(&(c, *k)))
                    .map(|(_, s)| *s)
                    .collect()
            })
            .collect();
        TwistedGaussCode { components }
    };
    let mut labels: Vec<usize> = places.keys().copied().collect();
    labels.sort_unstable();
    for &a in &labels {
        let pa = &places[&a];
        if pa.len() == 2 && pa[0].0 == pa[1].0 && adjacent(pa[0].0, pa[0].1, pa[1].1) {
            out.push(remove(&[(pa[0].0, pa[0].1), (pa[1].0, pa[1].1)]));
        }
    }
    for (i, &a) in labels.iter().enumerate() {
        for &b in &labels[i + 1..] {
            let (pa, pb) = (&places[&a], &places[&b]);
            if pa.len() != 2 || pb.len() != 2 {
                continue;
            }
            let flat = pa[0].2 == Role::Flat;
            if !flat && pa[0].3 == pb[0].3 {
                continue;
            }
            // pair up the visits of a with those of b so that partners are adjacent
            let try_pairing = |x: usize, y: usize| {
                let (u1, v1) = (pa[0], pb[x]);
                let (u2, v2) = (pa[1], pb[y]);
                let roles_ok = flat || (u1.2 == v1.2 && u2.2 == v2.2);
                roles_ok && u1.0 == v1.0 && adjacent(u1.0, u1.1, v1.1) && u2.0 == v2.0 && adjacent(u2.0, u2.1, v2.1)
            };
            if try_pairing(0, 1) || try_pairing(1, 0) {
                out.push(remove(&[(pa[0].0, pa[0].1), (pa[1].0, pa[1].1), (pb[0].0, pb[0].1), (pb[1].0, pb[1].1)]));
            }
        }
    }
    for (c, comp) in g.components.iter().enumerate() {
        let len = comp.len();
        for k in 0..len {
            let next = (k + 1) % len;
            if len >= 2 && comp[k] == Symbol::Bar && comp[next] == Symbol::Bar {
                out.push(remove(&[(c, k), (c, next)]));
            }
        }
    }
    out
}

/// All codes that admit no further [`gauss_reductions`], reachable from `g`.
/// Stops after visiting `limit` distinct codes.
pub fn gauss_irreducibles(g: &TwistedGaussCode, limit: usize) -> Vec<TwistedGaussCode> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    let start = g.relabeled();
    seen.insert(start.clone());
    queue.push_back(start);
    while let Some(code) = queue.pop_front() {
        let next = gauss_reductions(&code);
        if next.is_empty() {
            out.push(code);
            continue;
        }
        for n in next {
            let n = n.relabeled();
            if seen.len() < limit && seen.insert(n.clone()) {
                queue.push_back(n);
            }
        }
    }
    out
}

/// Gauss equivalence after cancelling kinks, crossing pairs and bar pairs.
pub fn gauss_equivalent_reduced(g1: &TwistedGaussCode, g2: &TwistedGaussCode) -> bool {
    const LIMIT: usize = 20_000;
    let a = gauss_irreducibles(g1, LIMIT);
    let b = gauss_irreducibles(g2, LIMIT);
    a.iter().any(|x| b.iter().any(|y| gauss_equivalent(x, y)))
}

/// The closure of `w`: `n` nested cups at the bottom, the letters from the
/// bottom of the braid upward, and `n` caps at the top. Braid strands occupy
/// positions `1..=n` and travel down; the returning arcs run up on the right
/// and meet nothing.
pub fn closure_diagram(w: &BraidWord) -> MorseDiagram {
    let n = w.n();
    let category = match w.category() {
        Category::Classical => Category::Virtual,
        c => c,
    };
    let mut events = Vec::with_capacity(w.len() + 2 * n);
    for p in 1..=n {
        events.push(Event::Cup(p, Orientation::Ccw));
    }
    for g in w.letters().iter().rev() {
        events.push(match g.kind {
            Kind::Sigma | Kind::C => Event::CrossPos(g.index),
            Kind::SigmaInv => Event::CrossNeg(g.index),
            Kind::V => Event::CrossVirtual(g.index),
            Kind::B => Event::Bar(g.index),
        });
    }
    for p in (1..=n).rev() {
        events.push(Event::Cap(p, Orientation::Ccw));
    }
    MorseDiagram::new(category, events)
}
