//! Full and reduced presentations of the twisted and flat twisted braid groups,
//! materialized as relation instances for a fixed strand count.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::word::{letters_to_string, Category, Generator, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    TbFull,
    TbReduced,
    FtFull,
    FtReduced,
    VbReduced,
    FvReduced,
}

impl Family {
    pub const ALL: [Family; 6] = [
        Family::TbFull,
        Family::TbReduced,
        Family::FtFull,
        Family::FtReduced,
        Family::VbReduced,
        Family::FvReduced,
    ];

    pub fn category(self) -> Category {
        match self {
            Family::TbFull | Family::TbReduced => Category::Twisted,
            Family::FtFull | Family::FtReduced => Category::FlatTwisted,
            Family::VbReduced => Category::Virtual,
            Family::FvReduced => Category::FlatVirtual,
        }
    }

    pub fn is_full(self) -> bool {
        matches!(self, Family::TbFull | Family::FtFull)
    }

    /// The reduced family that a full family's relations are derived from.
    pub fn reduced_counterpart(self) -> Family {
        match self {
            Family::TbFull | Family::TbReduced => Family::TbReduced,
            Family::FtFull | Family::FtReduced => Family::FtReduced,
            f => f,
        }
    }

    pub fn full_counterpart(self) -> Option<Family> {
        match self {
            Family::TbFull | Family::TbReduced => Some(Family::TbFull),
            Family::FtFull | Family::FtReduced => Some(Family::FtFull),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::TbFull => "TB_full",
            Family::TbReduced => "TB_reduced",
            Family::FtFull => "FT_full",
            Family::FtReduced => "FT_reduced",
            Family::VbReduced => "VB_reduced",
            Family::FvReduced => "FV_reduced",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| PresentationError::UnknownFamily(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentations need at least 2 strands, got {0}")]
    UnsupportedN(usize),
    #[error("{0} is not a {1} family")]
    WrongKind(Family, &'static str),
    #[error("unknown presentation family {0:?}")]
    UnknownFamily(String),
}

/// A bidirectional relation `lhs = rhs` between two letter sequences.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    pub name: String,
    pub lhs: Vec<Generator>,
    pub rhs: Vec<Generator>,
}

impl Relation {
    pub fn new(name: impl Into<String>, lhs: Vec<Generator>, rhs: Vec<Generator>) -> Self {
        Relation { name: name.into(), lhs, rhs }
    }

    pub fn is_involution(&self) -> bool {
        self.rhs.is_empty() && self.lhs.len() == 2 && self.lhs[0].inverse() == self.lhs[1]
    }

    /// `lhs == rhs` with the two sides swapped when `forward` is false.
    pub fn sides(&self, forward: bool) -> (&[Generator], &[Generator]) {
        if forward {
            (&self.lhs, &self.rhs)
        } else {
            (&self.rhs, &self.lhs)
        }
    }

    fn max_index(&self) -> usize {
        self.lhs.iter().chain(&self.rhs).map(|g| g.index).max().unwrap_or(0)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} =", self.name, letters_to_string(&self.lhs))?;
        if !self.rhs.is_empty() {
            write!(f, " {}", letters_to_string(&self.rhs))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    family: Family,
    n: usize,
    relations: Vec<Relation>,
}

impl Presentation {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn category(&self) -> Category {
        self.family.category()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn relation(&self, name: &str) -> Option<&Relation> {
        self.relations.iter().find(|r| r.name == name)
    }

    /// Generators of the presentation, used for pair insertions during search.
    pub fn generators(&self) -> Vec<Generator> {
        let n = self.n;
        let mut gens = Vec::new();
        let reduced = !self.family.is_full();
        let classical_top = if reduced { 1.min(n - 1) } else { n - 1 };
        let bar_top = if reduced { 1 } else { n };
        for i in 1..=n - 1 {
            gens.push(Generator::v(i));
        }
        match self.family {
            Family::TbFull | Family::TbReduced | Family::VbReduced => {
                for i in 1..=classical_top {
                    gens.push(Generator::sigma(i));
                    gens.push(Generator::sigma_inv(i));
                }
            }
            Family::FtFull | Family::FtReduced | Family::FvReduced => {
                for i in 1..=classical_top {
                    gens.push(Generator::c(i));
                }
            }
        }
        if matches!(self.family.category(), Category::Twisted | Category::FlatTwisted) {
            for i in 1..=bar_top {
                gens.push(Generator::b(i));
            }
        }
        gens
    }

    /// One relation per line: `name: <lhs tokens> = <rhs tokens>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for r in &self.relations {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    /// The same family and strand count keeping only relations accepted by `keep`.
    pub fn restricted(&self, keep: impl Fn(&Relation) -> bool) -> Presentation {
        let relations = self.relations.iter().filter(|r| keep(r)).cloned().collect();
        Presentation { family: self.family, n: self.n, relations }
    }

    fn new(family: Family, n: usize, relations: Vec<Relation>) -> Self {
        debug_assert!(relations.iter().all(|r| r.max_index() <= n));
        Presentation { family, n, relations }
    }
}

fn s(i: usize) -> Generator {
    Generator::sigma(i)
}
fn si(i: usize) -> Generator {
    Generator::sigma_inv(i)
}
fn v(i: usize) -> Generator {
    Generator::v(i)
}
fn b(i: usize) -> Generator {
    Generator::b(i)
}
fn c(i: usize) -> Generator {
    Generator::c(i)
}

struct Builder {
    out: Vec<Relation>,
}

impl Builder {
    fn add(&mut self, name: String, lhs: Vec<Generator>, rhs: Vec<Generator>) {
        self.out.push(Relation::new(name, lhs, rhs));
    }
}

/// Virtual relations shared by every family.
fn virtual_relations(bld: &mut Builder, n: usize) {
    for i in 1..n {
        bld.add(format!("virtual.inv[{i}]"), vec![v(i), v(i)], vec![]);
    }
    for i in 1..n {
        for j in i + 2..n {
            bld.add(format!("virtual.commute[{i},{j}]"), vec![v(i), v(j)], vec![v(j), v(i)]);
        }
    }
    for i in 1..n.saturating_sub(1) {
        bld.add(
            format!("virtual.braid[{i}]"),
            vec![v(i), v(i + 1), v(i)],
            vec![v(i + 1), v(i), v(i + 1)],
        );
    }
}

/// Relations involving only bars and virtual crossings.
fn bar_relations(bld: &mut Builder, n: usize) {
    for i in 1..=n {
        bld.add(format!("twisted.inv[{i}]"), vec![b(i), b(i)], vec![]);
    }
    for i in 1..=n {
        for j in i + 1..=n {
            bld.add(format!("twisted.commute[{i},{j}]"), vec![b(i), b(j)], vec![b(j), b(i)]);
        }
    }
    for i in 1..n {
        bld.add(format!("mixed.bar-slide[{i}]"), vec![b(i), v(i)], vec![v(i), b(i + 1)]);
        bld.add(format!("mixed.bar-slide-alt[{i}]"), vec![v(i), b(i)], vec![b(i + 1), v(i)]);
    }
    for i in 1..=n {
        for j in 1..n {
            if j > i || j + 1 < i {
                bld.add(format!("mixed.bar-virtual[{i},{j}]"), vec![b(i), v(j)], vec![v(j), b(i)]);
            }
        }
    }
}

/// Relations of a crossing generator family `x` (classical or flat) with itself,
/// virtual crossings and bars.
fn crossing_relations(bld: &mut Builder, n: usize, flat: bool) {
    let x = |i: usize| if flat { c(i) } else { s(i) };
    let tag = if flat { "flat" } else { "braid" };
    let mix = if flat { "mixed-flat" } else { "mixed" };
    for i in 1..n {
        if flat {
            bld.add(format!("flat.inv[{i}]"), vec![c(i), c(i)], vec![]);
        } else {
            bld.add(format!("braid.inverse[{i}]"), vec![s(i), si(i)], vec![]);
        }
    }
    for i in 1..n.saturating_sub(1) {
        bld.add(
            format!("{tag}.braid[{i}]"),
            vec![x(i), x(i + 1), x(i)],
            vec![x(i + 1), x(i), x(i + 1)],
        );
    }
    for i in 1..n {
        for j in i + 2..n {
            bld.add(format!("{tag}.commute[{i},{j}]"), vec![x(i), x(j)], vec![x(j), x(i)]);
        }
    }
    for i in 1..n {
        for j in 1..n {
            if i.abs_diff(j) >= 2 {
                bld.add(format!("{mix}.crossing-virtual[{i},{j}]"), vec![x(i), v(j)], vec![v(j), x(i)]);
            }
        }
    }
    for i in 1..n.saturating_sub(1) {
        bld.add(
            format!("{mix}.virtual-conjugate[{i}]"),
            vec![v(i), x(i + 1), v(i)],
            vec![v(i + 1), x(i), v(i + 1)],
        );
    }
    for i in 1..n {
        bld.add(
            format!("{mix}.bar-twist[{i}]"),
            vec![b(i), b(i + 1), x(i), b(i + 1), b(i)],
            vec![v(i), x(i), v(i)],
        );
        if !flat {
            bld.add(
                format!("{mix}.bar-twist-alt[{i}]"),
                vec![b(i + 1), b(i), x(i), b(i), b(i + 1)],
                vec![v(i), x(i), v(i)],
            );
        }
    }
    for i in 1..=n {
        for j in 1..n {
            if j > i || j + 1 < i {
                bld.add(format!("{mix}.bar-crossing[{i},{j}]"), vec![b(i), x(j)], vec![x(j), b(i)]);
            }
        }
    }
}

pub fn full_presentation(family: Family, n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::UnsupportedN(n));
    }
    let flat = match family {
        Family::TbFull => false,
        Family::FtFull => true,
        f => return Err(PresentationError::WrongKind(f, "full")),
    };
    let mut bld = Builder { out: Vec::new() };
    crossing_relations(&mut bld, n, flat);
    virtual_relations(&mut bld, n);
    bar_relations(&mut bld, n);
    Ok(Presentation::new(family, n, bld.out))
}

pub fn reduced_presentation(family: Family, n: usize) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::UnsupportedN(n));
    }
    let (flat, bars) = match family {
        Family::TbReduced => (false, true),
        Family::FtReduced => (true, true),
        Family::VbReduced => (false, false),
        Family::FvReduced => (true, false),
        f => return Err(PresentationError::WrongKind(f, "reduced")),
    };
    let x1 = if flat { c(1) } else { s(1) };
    let mut bld = Builder { out: Vec::new() };
    virtual_relations(&mut bld, n);
    if flat {
        bld.add("flat.inv[1]".into(), vec![c(1), c(1)], vec![]);
    }
    for j in 3..n {
        bld.add(format!("reduced.crossing-virtual[{j}]"), vec![x1, v(j)], vec![v(j), x1]);
    }
    if n >= 3 {
        // (v1 x1 v1)(v2 x1 v2)(v1 x1 v1) = (v2 x1 v2)(v1 x1 v1)(v2 x1 v2)
        let a = [v(1), x1, v(1)];
        let bb = [v(2), x1, v(2)];
        bld.add(
            "reduced.braid".into(),
            [a, bb, a].concat(),
            [bb, a, bb].concat(),
        );
    }
    if n >= 4 {
        let conj = [v(2), v(3), v(1), v(2), x1, v(2), v(1), v(3), v(2)];
        let mut lhs = vec![x1];
        lhs.extend_from_slice(&conj);
        let mut rhs = conj.to_vec();
        rhs.push(x1);
        bld.add("reduced.commute".into(), lhs, rhs);
    }
    if bars {
        bld.add("twisted.inv[1]".into(), vec![b(1), b(1)], vec![]);
        for j in 2..n {
            bld.add(format!("reduced.bar-virtual[{j}]"), vec![b(1), v(j)], vec![v(j), b(1)]);
        }
        bld.add(
            "reduced.bar-commute".into(),
            vec![b(1), v(1), b(1), v(1)],
            vec![v(1), b(1), v(1), b(1)],
        );
        if n >= 3 {
            bld.add(
                "reduced.bar-crossing".into(),
                vec![x1, v(2), v(1), b(1), v(1), v(2)],
                vec![v(2), v(1), b(1), v(1), v(2), x1],
            );
        }
        bld.add(
            "reduced.bar-twist".into(),
            vec![v(1), b(1), v(1), b(1), x1, b(1), v(1), b(1), v(1)],
            vec![v(1), x1, v(1)],
        );
    }
    Ok(Presentation::new(family, n, bld.out))
}

/// Dispatches to the full or reduced constructor.
pub fn presentation(family: Family, n: usize) -> Result<Presentation, PresentationError> {
    if family.is_full() {
        full_presentation(family, n)
    } else {
        reduced_presentation(family, n)
    }
}

/// Letter kinds a family's words may contain besides `v`.
pub fn crossing_kind(family: Family) -> Kind {
    if family.category().is_flat() {
        Kind::C
    } else {
        Kind::Sigma
    }
}
