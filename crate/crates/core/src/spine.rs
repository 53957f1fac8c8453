//! Vertex-count ledger for the pillowcase spine of a two-bridge link complement.
//!
//! Each twist region `a_i` contributes a pillowcase `A_i` whose middle disk
//! `D_i` carries `x_i` true vertices. The ledger starts from the counts left
//! after collapsing the glued pillowcases from `∂A_1` and `∂A_n`, then applies
//! one replacement per index with `a_i = 1`, left to right. Every step is
//! appended to an event log that can be exported as JSON lines.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::cf::ContinuedFraction;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VertexFamily {
    /// Vertex of the spine before any replacement touched its pillowcase.
    Y,
    /// Vertex produced by a replacement.
    Z,
}

/// A labeled true vertex `y_k^{(i)}` or `z_k^{(i)}` on `∂D_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexLabel {
    pub family: VertexFamily,
    pub k: u64,
    pub pillowcase: usize,
}

impl VertexLabel {
    fn y(k: u64, pillowcase: usize) -> Self {
        Self {
            family: VertexFamily::Y,
            k,
            pillowcase,
        }
    }

    fn z(k: u64, pillowcase: usize) -> Self {
        Self {
            family: VertexFamily::Z,
            k,
            pillowcase,
        }
    }
}

impl fmt::Display for VertexLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.family {
            VertexFamily::Y => 'y',
            VertexFamily::Z => 'z',
        };
        write!(f, "{prefix}_{}^({})", self.k, self.pillowcase)
    }
}

impl Serialize for VertexLabel {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Corner of a pillowcase boundary, `∂A_i^{NW}` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Corner {
    NW,
    NE,
    SW,
    SE,
}

/// The boundary component a collapse starts from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryComponent {
    pub pillowcase: usize,
    pub corner: Corner,
}

impl fmt::Display for BoundaryComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "∂A_{}^{:?}", self.pillowcase, self.corner)
    }
}

impl Serialize for BoundaryComponent {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Which picture of the replacement applies at index `i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReplacementCase {
    /// `a_{i-1} > 1`
    #[serde(rename = "i")]
    I,
    /// `a_{i-1} = 1`
    #[serde(rename = "ii")]
    II,
}

impl fmt::Display for ReplacementCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::I => f.write_str("(i)"),
            Self::II => f.write_str("(ii)"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    /// Vertices on `∂D_i` in the glued spine before collapsing.
    Vertices,
    /// Vertices removed by collapsing from a boundary component.
    Collapse,
    /// Start of a replacement `P_j -> P_{j+1}` at pillowcase `i`.
    Replacement,
    /// Vertices on `∂D_k` in `P_{j+1}` after a replacement, before collapsing.
    Relabel,
    /// A new vertex appears on `∂D_{i-1}` (case (ii)).
    Appear,
}

/// One line of the ledger trace.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Event {
    pub kind: EventKind,
    pub pillowcase: usize,
    pub labels: Vec<VertexLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub boundary: Option<BoundaryComponent>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub case: Option<ReplacementCase>,
    /// Replacement step `j` (0-based), for replacement events.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step: Option<usize>,
    /// `x_1, ..., x_n` after this event.
    pub counts: Vec<u64>,
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels = self
            .labels
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" ");
        let counts = format_counts(&self.counts);
        let i = self.pillowcase;
        match self.kind {
            EventKind::Vertices => write!(f, "A_{i}: vertices on ∂D_{i}: {labels}")?,
            EventKind::Collapse => {
                let boundary = self.boundary.map(|b| b.to_string()).unwrap_or_default();
                write!(f, "A_{i}: collapse from {boundary} removes {labels}")?
            }
            EventKind::Replacement => {
                let case = self.case.map(|c| c.to_string()).unwrap_or_default();
                let step = self.step.unwrap_or_default();
                write!(
                    f,
                    "replacement P_{step} -> P_{} at i = {i}, case {case}",
                    step + 1
                )?
            }
            EventKind::Relabel => write!(f, "A_{i}: vertices on ∂D_{i}: {labels}")?,
            EventKind::Appear => write!(f, "A_{i}: new vertex {labels}")?,
        }
        write!(f, "  counts = {counts}")
    }
}

fn format_counts(counts: &[u64]) -> String {
    let inner = counts
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(",");
    format!("[{inner}]")
}

/// State of one pillowcase `A_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PillowcaseRecord {
    pub index: usize,
    pub twist: u64,
    vertices: Vec<VertexLabel>,
}

impl PillowcaseRecord {
    pub fn vertices(&self) -> &[VertexLabel] {
        &self.vertices
    }

    /// `x_i`, the number of true vertices on `∂D_i`.
    pub fn count(&self) -> u64 {
        self.vertices.len() as u64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpineLedger {
    cf: ContinuedFraction,
    pillowcases: Vec<PillowcaseRecord>,
    replacements_done: Vec<usize>,
    events: Vec<Event>,
}

impl SpineLedger {
    pub fn cf(&self) -> &ContinuedFraction {
        &self.cf
    }

    pub fn pillowcases(&self) -> &[PillowcaseRecord] {
        &self.pillowcases
    }

    pub fn replacements_done(&self) -> &[usize] {
        &self.replacements_done
    }

    pub fn events(&self) -> &[Event] {
        &self.events
    }

    pub fn counts(&self) -> Vec<u64> {
        self.pillowcases
            .iter()
            .map(PillowcaseRecord::count)
            .collect()
    }

    pub fn total(&self) -> u64 {
        total_true_vertices(self)
    }

    pub fn apply_replacement(&self, index: usize) -> Result<Self> {
        apply_replacement(self, index)
    }

    pub fn run_all_replacements(&self) -> Result<Self> {
        run_all_replacements(self)
    }

    /// Human-readable trace, one event per line, ending with the total.
    pub fn render_trace(&self) -> String {
        let entries: Vec<_> = self.cf.entries().iter().map(ToString::to_string).collect();
        let mut out = format!("spine ledger for C({})\n", entries.join(","));
        for event in &self.events {
            out.push_str(&event.to_string());
            out.push('\n');
        }
        out.push_str(&format!("total = {}\n", self.total()));
        out
    }

    /// The event log as JSON lines.
    pub fn trace_json_lines(&self) -> String {
        let mut out = String::new();
        for event in &self.events {
            out.push_str(&serde_json::to_string(event).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    fn push(&mut self, kind: EventKind, pillowcase: usize, labels: Vec<VertexLabel>) -> &mut Event {
        let counts = self.counts();
        self.events.push(Event {
            kind,
            pillowcase,
            labels,
            boundary: None,
            case: None,
            step: None,
            counts,
        });
        self.events.last_mut().expect("just pushed")
    }

    fn set_vertices(&mut self, index: usize, labels: Vec<VertexLabel>) {
        self.pillowcases[index - 1].vertices = labels;
    }

    fn vertices_of(&self, index: usize) -> &[VertexLabel] {
        &self.pillowcases[index - 1].vertices
    }

    /// Removes `removed` from pillowcase `index` and logs a collapse event.
    fn collapse(&mut self, index: usize, removed: Vec<VertexLabel>, from: BoundaryComponent) {
        let kept = self
            .vertices_of(index)
            .iter()
            .copied()
            .filter(|label| !removed.contains(label))
            .collect();
        self.set_vertices(index, kept);
        self.push(EventKind::Collapse, index, removed).boundary = Some(from);
    }

    /// Relabels pillowcase `index` with `z_1, ..., z_m` and logs it.
    fn relabel(&mut self, index: usize, m: u64) -> Vec<VertexLabel> {
        let labels: Vec<_> = (1..=m).map(|k| VertexLabel::z(k, index)).collect();
        self.set_vertices(index, labels.clone());
        self.push(EventKind::Relabel, index, labels.clone());
        labels
    }
}

/// Counts on `P_0`: `x_1 = a_1 - 1`, `x_i = a_i + 2` for interior `i`, `x_n = a_n - 1`.
pub fn initial_ledger(cf: &ContinuedFraction) -> Result<SpineLedger> {
    cf.ensure_canonical()?;
    let n = cf.len();
    let mut ledger = SpineLedger {
        cf: cf.clone(),
        pillowcases: cf
            .entries()
            .iter()
            .enumerate()
            .map(|(idx, &twist)| PillowcaseRecord {
                index: idx + 1,
                twist,
                vertices: Vec::new(),
            })
            .collect(),
        replacements_done: Vec::new(),
        events: Vec::new(),
    };

    // Vertices of the glued spine P on each ∂D_i.
    for i in 1..=n {
        let a = cf.twist(i);
        let top = if i == 1 || i == n { a + 1 } else { a + 2 };
        let labels: Vec<_> = (1..=top).map(|k| VertexLabel::y(k, i)).collect();
        ledger.set_vertices(i, labels.clone());
        ledger.push(EventKind::Vertices, i, labels);
    }

    // Collapsing P from ∂A_1 and ∂A_n gives P_0.
    ledger.collapse(
        1,
        vec![VertexLabel::y(1, 1), VertexLabel::y(2, 1)],
        BoundaryComponent {
            pillowcase: 1,
            corner: Corner::NW,
        },
    );
    let a_n = cf.twist(n);
    ledger.collapse(
        n,
        vec![VertexLabel::y(a_n - 1, n), VertexLabel::y(a_n, n)],
        BoundaryComponent {
            pillowcase: n,
            corner: Corner::SW,
        },
    );
    Ok(ledger)
}

/// Applies the replacement `P_j -> P_{j+1}` at index `i` (which needs `a_i = 1`).
///
/// Net effect on the counts: `x_{i-1} += 1`, `x_i -= 1`, `x_{i+1} -= 1`.
pub fn apply_replacement(ledger: &SpineLedger, i: usize) -> Result<SpineLedger> {
    let n = ledger.cf.len();
    if i == 0 || i > n {
        return Err(Error::IndexOutOfRange { index: i, n });
    }
    if i == 1 || i == n {
        return Err(Error::BoundaryIndex(i));
    }
    let twist = ledger.cf.twist(i);
    if twist != 1 {
        return Err(Error::NotUnitTwist { index: i, twist });
    }
    if let Some(&last) = ledger.replacements_done.last() {
        if last >= i {
            return Err(Error::OutOfOrder { index: i, last });
        }
    }

    let case = if ledger.cf.twist(i - 1) > 1 {
        ReplacementCase::I
    } else {
        ReplacementCase::II
    };
    let step = ledger.replacements_done.len();
    let before = ledger.total();

    let mut next = ledger.clone();
    let event = next.push(EventKind::Replacement, i, Vec::new());
    event.case = Some(case);
    event.step = Some(step);

    // A_{i-1} gains one vertex.
    match case {
        ReplacementCase::I => {
            let m = next.vertices_of(i - 1).len() as u64 + 1;
            next.relabel(i - 1, m);
        }
        ReplacementCase::II => {
            let k = next
                .vertices_of(i - 1)
                .iter()
                .map(|v| v.k)
                .max()
                .unwrap_or(0)
                + 1;
            let fresh = VertexLabel::z(k, i - 1);
            let mut labels = next.vertices_of(i - 1).to_vec();
            labels.push(fresh);
            next.set_vertices(i - 1, labels);
            next.push(EventKind::Appear, i - 1, vec![fresh]);
        }
    }

    // A_i loses one vertex.
    let c = next.vertices_of(i).len() as u64;
    let se = BoundaryComponent {
        pillowcase: i,
        corner: Corner::SE,
    };
    match case {
        ReplacementCase::I => {
            let z = next.relabel(i, c + 1);
            next.collapse(i, z[..2].to_vec(), se);
        }
        ReplacementCase::II => {
            let z = next.relabel(i, c + 3);
            let ne = BoundaryComponent {
                pillowcase: i - 2,
                corner: Corner::NE,
            };
            next.collapse(i, vec![z[2], z[3]], ne);
            next.collapse(i, vec![z[0], z[z.len() - 1]], se);
        }
    }

    // A_{i+1} loses one vertex.
    let c = next.vertices_of(i + 1).len() as u64;
    let z = next.relabel(i + 1, c + 1);
    next.collapse(
        i + 1,
        z[z.len() - 2..].to_vec(),
        BoundaryComponent {
            pillowcase: i - 1,
            corner: Corner::SW,
        },
    );

    next.replacements_done.push(i);
    debug_assert_eq!(next.total() + 1, before);
    Ok(next)
}

/// Applies the replacement at every remaining index with `a_i = 1`, in increasing order.
pub fn run_all_replacements(ledger: &SpineLedger) -> Result<SpineLedger> {
    let last = ledger.replacements_done.last().copied().unwrap_or(0);
    let mut current = ledger.clone();
    for i in ledger.cf.unit_indices().into_iter().filter(|&i| i > last) {
        current = apply_replacement(&current, i)?;
    }
    Ok(current)
}

pub fn total_true_vertices(ledger: &SpineLedger) -> u64 {
    ledger.pillowcases.iter().map(PillowcaseRecord::count).sum()
}
