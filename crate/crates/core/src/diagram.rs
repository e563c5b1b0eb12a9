//! Combinatorial diagrams of links and punctured-ball tangles.
//!
//! A diagram is a 4-valent graph: crossings with four ports numbered
//! 0..=3 counterclockwise (the over-strand runs through ports 0 and 2),
//! a count of crossing-free closed circles, and zero or more boundary
//! circles each carrying four endpoints labelled NW, NE, SE, SW as drawn
//! in the plane. Boundary 0 is the outer sphere; boundaries 1.. are holes.
//!
//! Arcs are unordered pairs of attachment points forming a perfect
//! matching: every port and every boundary endpoint lies on exactly one
//! arc. All constructors below preserve planarity; a diagram assembled
//! from raw arc data is accepted as long as it is a valid matching, but
//! nothing checks that it embeds in the plane.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Boundary endpoint labels, in counterclockwise order of the plane
/// positions NW(135°), SW(225°), SE(315°), NE(45°).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    NW,
    NE,
    SE,
    SW,
}

impl Label {
    pub const ALL: [Label; 4] = [Label::NW, Label::NE, Label::SE, Label::SW];

    pub fn as_str(&self) -> &'static str {
        match self {
            Label::NW => "NW",
            Label::NE => "NE",
            Label::SE => "SE",
            Label::SW => "SW",
        }
    }

    pub fn from_str(s: &str) -> Option<Label> {
        match s {
            "NW" => Some(Label::NW),
            "NE" => Some(Label::NE),
            "SE" => Some(Label::SE),
            "SW" => Some(Label::SW),
            _ => None,
        }
    }

    /// Label of this endpoint after rotating the diagram 90°
    /// counterclockwise: NW→SW, NE→NW, SE→NE, SW→SE.
    pub fn rotated_ccw(&self) -> Label {
        match self {
            Label::NW => Label::SW,
            Label::NE => Label::NW,
            Label::SE => Label::NE,
            Label::SW => Label::SE,
        }
    }

    /// Reflection across the vertical axis: NW↔NE, SW↔SE.
    pub fn h_flipped(&self) -> Label {
        match self {
            Label::NW => Label::NE,
            Label::NE => Label::NW,
            Label::SE => Label::SW,
            Label::SW => Label::SE,
        }
    }

    /// Reflection across the horizontal axis: NW↔SW, NE↔SE.
    pub fn v_flipped(&self) -> Label {
        match self {
            Label::NW => Label::SW,
            Label::SW => Label::NW,
            Label::NE => Label::SE,
            Label::SE => Label::NE,
        }
    }
}

/// One end of an arc: either a crossing port or a boundary endpoint.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Attachment {
    Port { crossing: u32, port: u8 },
    End { boundary: u32, label: Label },
}

impl Attachment {
    pub fn port(crossing: u32, port: u8) -> Attachment {
        Attachment::Port { crossing, port }
    }

    pub fn end(boundary: u32, label: Label) -> Attachment {
        Attachment::End { boundary, label }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagramError {
    /// The arcs do not form a perfect matching of the attachment points.
    Matching(&'static str),
    /// An operation needed a diagram with a specific boundary count.
    BoundaryCount { expected: u32, got: u32 },
    /// `fill_holes` was given the wrong number of fills.
    FillArity { holes: usize, fills: usize },
    /// A rewrite site did not match its move template.
    PatternMismatch,
    /// An arc index was out of range.
    BadArcIndex,
    /// A requested size does not fit the diagram representation.
    TooLarge,
}

impl fmt::Display for DiagramError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiagramError::Matching(what) => write!(f, "perfect matching violated: {}", what),
            DiagramError::BoundaryCount { expected, got } => {
                write!(f, "expected {} boundary circles, got {}", expected, got)
            }
            DiagramError::FillArity { holes, fills } => {
                write!(f, "tangle has {} holes but {} fills were given", holes, fills)
            }
            DiagramError::PatternMismatch => write!(f, "site does not match the move template"),
            DiagramError::BadArcIndex => write!(f, "arc index out of range"),
            DiagramError::TooLarge => write!(f, "diagram too large"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for DiagramError {}

/// A combinatorial tangle or link diagram. Immutable once built.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Diagram {
    crossings: u32,
    boundaries: u32,
    free_loops: u32,
    arcs: Vec<(Attachment, Attachment)>,
}

impl Diagram {
    /// Validates the perfect-matching invariant and normalizes the
    /// representation: rotating all four ports of one crossing by two
    /// positions names the same crossing (the over-axis and the
    /// counterclockwise order are preserved), so each crossing is put in
    /// a canonical rotation before arcs are sorted. This makes
    /// structural equality respect the rotation gauge, so identities
    /// like `mirror(mirror(d)) == d` hold on the nose.
    pub fn new(
        crossings: u32,
        boundaries: u32,
        free_loops: u32,
        arcs: Vec<(Attachment, Attachment)>,
    ) -> Result<Diagram, DiagramError> {
        let mut d = Diagram { crossings, boundaries, free_loops, arcs };
        d.validate()?;
        d.normalize();
        Ok(d)
    }

    fn normalize(&mut self) {
        self.canonicalize_gauge();
        for arc in self.arcs.iter_mut() {
            if arc.1 < arc.0 {
                core::mem::swap(&mut arc.0, &mut arc.1);
            }
        }
        self.arcs.sort_unstable();
    }

    /// Chooses, per crossing, between the two equivalent port
    /// numberings (rotation by two), comparing gauge-invariant partner
    /// descriptors of the four ports.
    fn canonicalize_gauge(&mut self) {
        if self.crossings == 0 {
            return;
        }
        let mut partner: BTreeMap<Attachment, Attachment> = BTreeMap::new();
        for &(a, b) in &self.arcs {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        // descriptor independent of every crossing's gauge choice:
        // self-partners keep their relative rotation, foreign ports keep
        // only their axis
        let desc = |home: u32, gauge: u8, att: Attachment| -> (u8, u32, u8) {
            match att {
                Attachment::Port { crossing, port } if crossing == home => {
                    (0, crossing, (port + 4 - gauge) % 4)
                }
                Attachment::Port { crossing, port } => (1, crossing, port % 2),
                Attachment::End { boundary, label } => (2, boundary, label as u8),
            }
        };
        let mut rotate = vec![false; self.crossings as usize];
        for c in 0..self.crossings {
            let view = |gauge: u8| -> [(u8, u32, u8); 4] {
                let mut out = [(0u8, 0u32, 0u8); 4];
                for (i, slot) in out.iter_mut().enumerate() {
                    let p = Attachment::port(c, (i as u8 + gauge) % 4);
                    *slot = desc(c, gauge, partner[&p]);
                }
                out
            };
            if view(2) < view(0) {
                rotate[c as usize] = true;
            }
        }
        let map = |att: Attachment| match att {
            Attachment::Port { crossing, port } if rotate[crossing as usize] => {
                Attachment::Port { crossing, port: (port + 2) % 4 }
            }
            other => other,
        };
        for arc in self.arcs.iter_mut() {
            arc.0 = map(arc.0);
            arc.1 = map(arc.1);
        }
    }

    fn validate(&self) -> Result<(), DiagramError> {
        let expected = self.crossings as usize * 4 + self.boundaries as usize * 4;
        if self.arcs.len() * 2 != expected {
            return Err(DiagramError::Matching("arc count does not cover all attachment points"));
        }
        let mut seen = BTreeMap::new();
        for &(a, b) in &self.arcs {
            for att in [a, b] {
                match att {
                    Attachment::Port { crossing, port } => {
                        if crossing >= self.crossings || port > 3 {
                            return Err(DiagramError::Matching("port out of range"));
                        }
                    }
                    Attachment::End { boundary, .. } => {
                        if boundary >= self.boundaries {
                            return Err(DiagramError::Matching("boundary out of range"));
                        }
                    }
                }
                if seen.insert(att, ()).is_some() {
                    return Err(DiagramError::Matching("attachment point used twice"));
                }
            }
        }
        Ok(())
    }

    pub fn crossings(&self) -> u32 {
        self.crossings
    }

    pub fn boundaries(&self) -> u32 {
        self.boundaries
    }

    pub fn holes(&self) -> u32 {
        self.boundaries.saturating_sub(1)
    }

    pub fn free_loops(&self) -> u32 {
        self.free_loops
    }

    pub fn arcs(&self) -> &[(Attachment, Attachment)] {
        &self.arcs
    }

    pub fn is_link(&self) -> bool {
        self.boundaries == 0
    }

    pub fn is_ball(&self) -> bool {
        self.boundaries == 1
    }

    pub fn is_spherical(&self) -> bool {
        self.boundaries == 2
    }

    pub fn require_boundaries(&self, expected: u32) -> Result<(), DiagramError> {
        if self.boundaries != expected {
            return Err(DiagramError::BoundaryCount { expected, got: self.boundaries });
        }
        Ok(())
    }

    /// Partner map: every attachment point to the other end of its arc.
    pub fn partner_map(&self) -> BTreeMap<Attachment, Attachment> {
        let mut m = BTreeMap::new();
        for &(a, b) in &self.arcs {
            m.insert(a, b);
            m.insert(b, a);
        }
        m
    }

    /// Swaps the over and under strands at every crossing.
    pub fn mirror(&self) -> Diagram {
        self.map_ports(|p| (p + 3) % 4)
    }

    /// Rotates the whole diagram 90° counterclockwise. Crossing ports are
    /// unaffected (the over-axis convention is rotation invariant); every
    /// boundary endpoint is relabelled.
    pub fn rotate_ccw(&self) -> Diagram {
        self.map_labels(|_, l| l.rotated_ccw())
    }

    /// 180° rotation about the vertical axis of the projection plane
    /// (left-right flip through 3-space). Ball tangles only.
    pub fn h_flip(&self) -> Result<Diagram, DiagramError> {
        self.require_boundaries(1)?;
        Ok(self.map_ports(flip_port).map_labels(|_, l| l.h_flipped()))
    }

    /// 180° rotation about the horizontal axis. Ball tangles only.
    pub fn v_flip(&self) -> Result<Diagram, DiagramError> {
        self.require_boundaries(1)?;
        Ok(self.map_ports(flip_port).map_labels(|_, l| l.v_flipped()))
    }

    /// Exchanges the roles of the outer sphere and the hole of a
    /// spherical tangle. Inverting the annulus negates angles, so every
    /// endpoint label is reflected through the horizontal axis along
    /// with the index swap; this keeps the embedding planar and fixes
    /// the identity tangle.
    pub fn swap_boundaries(&self) -> Result<Diagram, DiagramError> {
        self.require_boundaries(2)?;
        Ok(self.map_boundary(|b| 1 - b).map_labels(|_, l| l.v_flipped()))
    }

    /// Rotates only the hole's endpoint labels 90° counterclockwise.
    pub fn rotate_inner(&self) -> Result<Diagram, DiagramError> {
        self.require_boundaries(2)?;
        Ok(self.map_labels(|b, l| if b == 1 { l.rotated_ccw() } else { l }))
    }

    /// Rotates only the outer boundary's endpoint labels.
    pub fn rotate_outer(&self) -> Result<Diagram, DiagramError> {
        self.require_boundaries(2)?;
        Ok(self.map_labels(|b, l| if b == 0 { l.rotated_ccw() } else { l }))
    }

    fn map_ports(&self, f: impl Fn(u8) -> u8) -> Diagram {
        let map = |att: Attachment| match att {
            Attachment::Port { crossing, port } => Attachment::Port { crossing, port: f(port) },
            end => end,
        };
        let mut d = Diagram {
            crossings: self.crossings,
            boundaries: self.boundaries,
            free_loops: self.free_loops,
            arcs: self.arcs.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        };
        d.normalize();
        d
    }

    fn map_labels(&self, f: impl Fn(u32, Label) -> Label) -> Diagram {
        let map = |att: Attachment| match att {
            Attachment::End { boundary, label } => {
                Attachment::End { boundary, label: f(boundary, label) }
            }
            port => port,
        };
        let mut d = Diagram {
            crossings: self.crossings,
            boundaries: self.boundaries,
            free_loops: self.free_loops,
            arcs: self.arcs.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        };
        d.normalize();
        d
    }

    fn map_boundary(&self, f: impl Fn(u32) -> u32) -> Diagram {
        let map = |att: Attachment| match att {
            Attachment::End { boundary, label } => Attachment::End { boundary: f(boundary), label },
            port => port,
        };
        let mut d = Diagram {
            crossings: self.crossings,
            boundaries: self.boundaries,
            free_loops: self.free_loops,
            arcs: self.arcs.iter().map(|&(a, b)| (map(a), map(b))).collect(),
        };
        d.normalize();
        d
    }
}

fn flip_port(p: u8) -> u8 {
    // reflection through 3-space: 0↔1, 2↔3
    match p {
        0 => 1,
        1 => 0,
        2 => 3,
        3 => 2,
        _ => p,
    }
}

/// The crossingless ball tangle with two vertical strands (j = 1) or two
/// horizontal strands (j = 2).
pub fn fundamental_tangle(j: u8) -> Diagram {
    let arcs = match j {
        1 => vec![
            (Attachment::end(0, Label::NW), Attachment::end(0, Label::SW)),
            (Attachment::end(0, Label::NE), Attachment::end(0, Label::SE)),
        ],
        2 => vec![
            (Attachment::end(0, Label::NW), Attachment::end(0, Label::NE)),
            (Attachment::end(0, Label::SW), Attachment::end(0, Label::SE)),
        ],
        _ => panic!("fundamental tangle index must be 1 or 2"),
    };
    Diagram::new(0, 1, 0, arcs).expect("fundamental tangle is valid")
}

/// The identity spherical tangle: four radial strands joining equal labels
/// of the outer sphere and the hole.
pub fn identity_spherical() -> Diagram {
    let arcs = Label::ALL
        .iter()
        .map(|&l| (Attachment::end(0, l), Attachment::end(1, l)))
        .collect();
    Diagram::new(0, 2, 0, arcs).expect("identity tangle is valid")
}

/// Compass positions of the four ports of a twist crossing. `positive`
/// selects the chirality whose single twist has invariant `[1; 1]`; the
/// other chirality is its mirror image.
fn twist_ports(positive: bool) -> [u8; 4] {
    // order: (NW, SW, SE, NE)
    if positive {
        [0, 1, 2, 3]
    } else {
        [3, 0, 1, 2]
    }
}

/// Appends a horizontal chain of `count` equal crossings to `arcs`,
/// starting at crossing id `base`. Returns the four loose attachments
/// (in north, in south, out north, out south).
pub(crate) fn twist_chain_for_splice(
    base: u32,
    count: u32,
    positive: bool,
    arcs: &mut Vec<(Attachment, Attachment)>,
) -> [Attachment; 4] {
    twist_chain(base, count, positive, arcs)
}

fn twist_chain(
    base: u32,
    count: u32,
    positive: bool,
    arcs: &mut Vec<(Attachment, Attachment)>,
) -> [Attachment; 4] {
    debug_assert!(count > 0);
    let w = twist_ports(positive);
    let p = |i: u32, pos: usize| Attachment::port(base + i, w[pos]);
    for i in 0..count - 1 {
        arcs.push((p(i, 3), p(i + 1, 0))); // NE -> next NW
        arcs.push((p(i, 2), p(i + 1, 1))); // SE -> next SW
    }
    [p(0, 0), p(0, 1), p(count - 1, 3), p(count - 1, 2)]
}

/// Ball tangle with `p` horizontal half twists; `htwist(0)` is the
/// horizontal fundamental tangle and negative `p` gives the mirror image.
pub fn htwist(p: i64) -> Result<Diagram, DiagramError> {
    if p == 0 {
        return Ok(fundamental_tangle(2));
    }
    let count = u32::try_from(p.unsigned_abs()).map_err(|_| DiagramError::TooLarge)?;
    let mut arcs = Vec::with_capacity(count as usize * 2 + 2);
    let [in_n, in_s, out_n, out_s] = twist_chain(0, count, p > 0, &mut arcs);
    arcs.push((Attachment::end(0, Label::NW), in_n));
    arcs.push((Attachment::end(0, Label::SW), in_s));
    arcs.push((out_n, Attachment::end(0, Label::NE)));
    arcs.push((out_s, Attachment::end(0, Label::SE)));
    Diagram::new(count, 1, 0, arcs)
}

/// Ball tangle with `q` vertical half twists; `vtwist(0)` is the vertical
/// fundamental tangle.
pub fn vtwist(q: i64) -> Result<Diagram, DiagramError> {
    // a vertical twist row is the rotated mirror of a horizontal one
    Ok(htwist(q)?.rotate_ccw().mirror())
}

/// Internal assembly of several diagrams: disjoint union followed by
/// splicing boundary endpoints together.
struct Assembly {
    crossings: u32,
    free_loops: u32,
    arcs: Vec<(Attachment, Attachment)>,
    /// boundary id offset of each part
    bounds: Vec<u32>,
}

impl Assembly {
    fn union(parts: &[&Diagram]) -> Assembly {
        let mut crossings = 0u32;
        let mut free_loops = 0u32;
        let mut boundaries = 0u32;
        let mut bounds = Vec::with_capacity(parts.len());
        let mut arcs = Vec::new();
        for part in parts {
            let (coff, boff) = (crossings, boundaries);
            bounds.push(boff);
            let shift = |att: Attachment| match att {
                Attachment::Port { crossing, port } => {
                    Attachment::Port { crossing: crossing + coff, port }
                }
                Attachment::End { boundary, label } => {
                    Attachment::End { boundary: boundary + boff, label }
                }
            };
            arcs.extend(part.arcs.iter().map(|&(a, b)| (shift(a), shift(b))));
            crossings += part.crossings;
            boundaries += part.boundaries;
            free_loops += part.free_loops;
        }
        Assembly { crossings, free_loops, arcs, bounds }
    }

    /// End attachment of part `i`'s boundary `b` with label `l`, in
    /// union coordinates.
    fn end(&self, part: usize, boundary: u32, label: Label) -> Attachment {
        Attachment::end(self.bounds[part] + boundary, label)
    }

    /// Glues pairs of boundary endpoints together and renames the
    /// surviving endpoints. Splicing may close crossing-free circles,
    /// which are added to the free loop count.
    fn splice(
        self,
        joins: &[(Attachment, Attachment)],
        rename: &BTreeMap<Attachment, (u32, Label)>,
        new_boundaries: u32,
    ) -> Result<Diagram, DiagramError> {
        let mut partner = BTreeMap::new();
        for &(a, b) in &self.arcs {
            partner.insert(a, b);
            partner.insert(b, a);
        }
        let mut joined: BTreeMap<Attachment, Attachment> = BTreeMap::new();
        for &(a, b) in joins {
            if joined.insert(a, b).is_some() || joined.insert(b, a).is_some() {
                return Err(DiagramError::Matching("endpoint joined twice"));
            }
        }
        let translate = |att: Attachment| -> Result<Attachment, DiagramError> {
            match att {
                Attachment::Port { .. } => Ok(att),
                Attachment::End { .. } => {
                    let &(boundary, label) =
                        rename.get(&att).ok_or(DiagramError::Matching("unmapped endpoint"))?;
                    Ok(Attachment::End { boundary, label })
                }
            }
        };

        let mut visited: BTreeMap<Attachment, ()> = BTreeMap::new();
        let mut out_arcs = Vec::new();
        let mut free_loops = self.free_loops;

        let starts: Vec<Attachment> = partner.keys().copied().collect();
        for &start in &starts {
            if joined.contains_key(&start) || visited.contains_key(&start) {
                continue;
            }
            // walk from an unjoined endpoint through arcs and joins
            visited.insert(start, ());
            let mut cur = partner[&start];
            visited.insert(cur, ());
            while let Some(&next) = joined.get(&cur) {
                visited.insert(next, ());
                cur = partner[&next];
                visited.insert(cur, ());
            }
            out_arcs.push((translate(start)?, translate(cur)?));
        }
        // leftover joined points lie on closed circles through the glue
        for &start in &starts {
            if visited.contains_key(&start) {
                continue;
            }
            free_loops += 1;
            let mut cur = start;
            loop {
                visited.insert(cur, ());
                let via_arc = partner[&cur];
                visited.insert(via_arc, ());
                match joined.get(&via_arc) {
                    Some(&next) => {
                        if next == start {
                            break;
                        }
                        cur = next;
                    }
                    None => return Err(DiagramError::Matching("open walk in splice cycle")),
                }
            }
        }
        Diagram::new(self.crossings, new_boundaries, free_loops, out_arcs)
    }
}

/// Numerator closure: joins NW–NE and SW–SE of a ball tangle.
pub fn numerator_closure(b: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    let a = Assembly::union(&[b]);
    let joins = [
        (a.end(0, 0, Label::NW), a.end(0, 0, Label::NE)),
        (a.end(0, 0, Label::SW), a.end(0, 0, Label::SE)),
    ];
    a.splice(&joins, &BTreeMap::new(), 0)
}

/// Denominator closure: joins NW–SW and NE–SE of a ball tangle.
pub fn denominator_closure(b: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    let a = Assembly::union(&[b]);
    let joins = [
        (a.end(0, 0, Label::NW), a.end(0, 0, Label::SW)),
        (a.end(0, 0, Label::NE), a.end(0, 0, Label::SE)),
    ];
    a.splice(&joins, &BTreeMap::new(), 0)
}

/// Horizontal connect sum: `d1` on the left, `d2` on the right, gluing
/// `d1.NE–d2.NW` and `d1.SE–d2.SW`. Works for any two diagrams with an
/// outer boundary; the holes of both operands survive, `d1`'s first.
pub fn connect_h(d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    if d1.boundaries == 0 || d2.boundaries == 0 {
        return Err(DiagramError::BoundaryCount { expected: 1, got: 0 });
    }
    let a = Assembly::union(&[d1, d2]);
    let joins = [
        (a.end(0, 0, Label::NE), a.end(1, 0, Label::NW)),
        (a.end(0, 0, Label::SE), a.end(1, 0, Label::SW)),
    ];
    let mut rename = BTreeMap::new();
    rename.insert(a.end(0, 0, Label::NW), (0, Label::NW));
    rename.insert(a.end(0, 0, Label::SW), (0, Label::SW));
    rename.insert(a.end(1, 0, Label::NE), (0, Label::NE));
    rename.insert(a.end(1, 0, Label::SE), (0, Label::SE));
    // holes keep their order: d1's first, then d2's
    for h in 1..d1.boundaries {
        for l in Label::ALL {
            rename.insert(a.end(0, h, l), (h, l));
        }
    }
    for h in 1..d2.boundaries {
        for l in Label::ALL {
            rename.insert(a.end(1, h, l), (d1.boundaries - 1 + h, l));
        }
    }
    let new_boundaries = d1.boundaries + d2.boundaries - 1;
    a.splice(&joins, &rename, new_boundaries)
}

/// Vertical connect sum, defined from the horizontal one by rotations:
/// `d1 +v d2 = (d1^R +h d2^R)^{RRR}`.
pub fn connect_v(d1: &Diagram, d2: &Diagram) -> Result<Diagram, DiagramError> {
    let sum = connect_h(&d1.rotate_ccw(), &d2.rotate_ccw())?;
    Ok(sum.rotate_ccw().rotate_ccw().rotate_ccw())
}

/// Fills every hole of `t` with the given ball tangles, splicing matching
/// labels together.
pub fn fill_holes(t: &Diagram, fills: &[&Diagram]) -> Result<Diagram, DiagramError> {
    if t.boundaries == 0 {
        return Err(DiagramError::BoundaryCount { expected: 1, got: 0 });
    }
    if t.holes() as usize != fills.len() {
        return Err(DiagramError::FillArity { holes: t.holes() as usize, fills: fills.len() });
    }
    for f in fills {
        f.require_boundaries(1)?;
    }
    let mut parts = vec![t];
    parts.extend(fills.iter().copied());
    let a = Assembly::union(&parts);
    let mut joins = Vec::new();
    for (i, _) in fills.iter().enumerate() {
        for l in Label::ALL {
            joins.push((a.end(0, 1 + i as u32, l), a.end(1 + i, 0, l)));
        }
    }
    let mut rename = BTreeMap::new();
    for l in Label::ALL {
        rename.insert(a.end(0, 0, l), (0, l));
    }
    a.splice(&joins, &rename, 1)
}

/// Product of spherical tangles: `compose(s2, s1)` puts `s1` inside `s2`,
/// gluing `s1`'s outer sphere to `s2`'s hole label by label.
pub fn compose(s2: &Diagram, s1: &Diagram) -> Result<Diagram, DiagramError> {
    s2.require_boundaries(2)?;
    s1.require_boundaries(2)?;
    let a = Assembly::union(&[s2, s1]);
    let joins: Vec<_> =
        Label::ALL.iter().map(|&l| (a.end(0, 1, l), a.end(1, 0, l))).collect();
    let mut rename = BTreeMap::new();
    for l in Label::ALL {
        rename.insert(a.end(0, 0, l), (0, l));
        rename.insert(a.end(1, 1, l), (1, l));
    }
    a.splice(&joins, &rename, 2)
}

/// First inner horizontal connect sum `B +̄h S = (S^- +h B^{h-})^-`.
pub fn inner_h_ball(b: &Diagram, s: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    connect_h(&s.swap_boundaries()?, &b.h_flip()?)?.swap_boundaries()
}

/// Second inner horizontal connect sum `S +̄h B = (B^{h-} +h S^-)^-`.
pub fn inner_h_sph(s: &Diagram, b: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    connect_h(&b.h_flip()?, &s.swap_boundaries()?)?.swap_boundaries()
}

/// First inner vertical connect sum `B +̄v S = (S^- +v B^{v-})^-`.
pub fn inner_v_ball(b: &Diagram, s: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    connect_v(&s.swap_boundaries()?, &b.v_flip()?)?.swap_boundaries()
}

/// Second inner vertical connect sum `S +̄v B = (B^{v-} +v S^-)^-`.
pub fn inner_v_sph(s: &Diagram, b: &Diagram) -> Result<Diagram, DiagramError> {
    b.require_boundaries(1)?;
    connect_v(&b.v_flip()?, &s.swap_boundaries()?)?.swap_boundaries()
}

/// The annular spherical tangle with four twist boxes, one in each
/// diagonal channel between an outer cap strand and an inner cap strand.
/// Box 1 twists at the NW channel, box 2 at NE, box 3 at SW, box 4 at
/// SE; `p_i` counts half twists.
pub fn build_j(p1: i64, p2: i64, p3: i64, p4: i64) -> Result<Diagram, DiagramError> {
    // per-channel chirality aligning the four boxes around the annulus,
    // and the embedding orientation of whichever twist comes first and
    // bridges the outer-cap piece to the inner-cap piece (later boxes
    // follow the face structure)
    const BOX_SIGN: [i64; 4] = [1, 1, 1, 1];
    const FIRST_ORIENT: [(bool, bool); 4] =
        [(false, false), (false, true), (false, false), (false, false)];
    build_j_config([p1, p2, p3, p4], BOX_SIGN, FIRST_ORIENT)
}

/// [`build_j`] with explicit chirality and first-bridge orientation
/// constants; exposed for calibration.
#[doc(hidden)]
pub fn build_j_config(
    p: [i64; 4],
    signs: [i64; 4],
    first_orient: [(bool, bool); 4],
) -> Result<Diagram, DiagramError> {
    let outer = |l: Label| Attachment::end(0, l);
    let inner = |l: Label| Attachment::end(1, l);
    // untwisted core: two outer caps over the top and bottom, two inner
    // caps hugging the hole's west and east sides
    let mut d = Diagram::new(
        0,
        2,
        0,
        vec![
            (outer(Label::NW), outer(Label::NE)),
            (outer(Label::SW), outer(Label::SE)),
            (inner(Label::NW), inner(Label::SW)),
            (inner(Label::NE), inner(Label::SE)),
        ],
    )?;
    let boxes = [
        (outer(Label::NW), inner(Label::NW), p[0].checked_mul(signs[0])),
        (outer(Label::NE), inner(Label::NE), p[1].checked_mul(signs[1])),
        (outer(Label::SW), inner(Label::SW), p[2].checked_mul(signs[2])),
        (outer(Label::SE), inner(Label::SE), p[3].checked_mul(signs[3])),
    ];
    let mut first = true;
    for (i, (outer_end, inner_end, twist)) in boxes.into_iter().enumerate() {
        let twist = twist.ok_or(DiagramError::TooLarge)?;
        if twist == 0 {
            continue;
        }
        let find = |d: &Diagram, end: Attachment| {
            d.arcs().iter().position(|&(a, b)| a == end || b == end)
        };
        let ia = find(&d, outer_end).ok_or(DiagramError::PatternMismatch)?;
        let ib = find(&d, inner_end).ok_or(DiagramError::PatternMismatch)?;
        d = if first {
            let (ra, rb) = first_orient[i];
            crate::moves::twist_arcs_oriented(&d, ia, ra, ib, rb, twist)?
        } else {
            crate::moves::twist_arcs(&d, ia, ib, twist)?
        };
        first = false;
    }
    Ok(d)
}

/// Clasps a new closed circle onto an arc: two crossings, the circle over
/// at one and under at the other, so the circle links the strand once.
pub fn hook_circle(d: &Diagram, arc_index: usize) -> Result<Diagram, DiagramError> {
    let &(u, v) = d.arcs.get(arc_index).ok_or(DiagramError::BadArcIndex)?;
    let x1 = d.crossings;
    let x2 = d.crossings + 1;
    let mut arcs: Vec<_> = d.arcs.iter().copied().collect();
    arcs.remove(arc_index);
    // strand: u -> under x1 -> over x2 -> v
    arcs.push((u, Attachment::port(x1, 1)));
    arcs.push((Attachment::port(x1, 3), Attachment::port(x2, 0)));
    arcs.push((Attachment::port(x2, 2), v));
    // circle: over-axis of x1 joined to under-axis of x2
    arcs.push((Attachment::port(x1, 0), Attachment::port(x2, 3)));
    arcs.push((Attachment::port(x1, 2), Attachment::port(x2, 1)));
    Diagram::new(d.crossings + 2, d.boundaries, d.free_loops, arcs)
}

/// Adds `k` crossing-free circles.
pub fn add_free_loops(d: &Diagram, k: u32) -> Diagram {
    let mut out = d.clone();
    out.free_loops += k;
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fundamental_tangles() {
        let t1 = fundamental_tangle(1);
        assert_eq!(t1.crossings(), 0);
        assert!(t1.is_ball());
        assert_eq!(htwist(0).unwrap(), fundamental_tangle(2));
        assert_eq!(vtwist(0).unwrap(), fundamental_tangle(1));
    }

    #[test]
    fn rotate_four_times_is_identity() {
        for d in [fundamental_tangle(1), htwist(3).unwrap(), identity_spherical()] {
            let r4 = d.rotate_ccw().rotate_ccw().rotate_ccw().rotate_ccw();
            assert_eq!(r4, d);
        }
    }

    #[test]
    fn involutions() {
        let d = htwist(2).unwrap();
        assert_eq!(d.mirror().mirror(), d);
        assert_eq!(d.h_flip().unwrap().h_flip().unwrap(), d);
        assert_eq!(d.v_flip().unwrap().v_flip().unwrap(), d);
        let s = build_j(1, 0, -2, 1).unwrap();
        assert_eq!(s.swap_boundaries().unwrap().swap_boundaries().unwrap(), s);
        assert_eq!(s.mirror().mirror(), s);
    }

    #[test]
    fn spherical_rotations_commute() {
        let s = build_j(1, 2, 0, -1).unwrap();
        let r12 = s.rotate_inner().unwrap().rotate_outer().unwrap();
        let r21 = s.rotate_outer().unwrap().rotate_inner().unwrap();
        assert_eq!(r12, r21);
        // rotating both is the global rotation
        assert_eq!(r12, s.rotate_ccw());
    }

    #[test]
    fn closures_of_fundamental_tangles() {
        let n = numerator_closure(&fundamental_tangle(1)).unwrap();
        assert_eq!(n.free_loops(), 1);
        assert_eq!(n.crossings(), 0);
        let d = denominator_closure(&fundamental_tangle(1)).unwrap();
        assert_eq!(d.free_loops(), 2);
    }

    #[test]
    fn numerator_of_single_twist_is_one_crossing_unknot() {
        let l = numerator_closure(&htwist(1).unwrap()).unwrap();
        assert_eq!(l.crossings(), 1);
        assert_eq!(l.free_loops(), 0);
    }

    #[test]
    fn fill_identity_is_identity() {
        let i = identity_spherical();
        for b in [fundamental_tangle(1), fundamental_tangle(2), htwist(3).unwrap(), vtwist(-2).unwrap()] {
            assert_eq!(fill_holes(&i, &[&b]).unwrap(), b);
        }
    }

    #[test]
    fn compose_with_identity() {
        let i = identity_spherical();
        let s = build_j(1, 1, 1, 1).unwrap();
        assert_eq!(compose(&i, &s).unwrap(), s);
        assert_eq!(compose(&s, &i).unwrap(), s);
    }

    #[test]
    fn identity_tangle_symmetries() {
        let i = identity_spherical();
        assert_eq!(i.swap_boundaries().unwrap(), i);
        assert_eq!(i.mirror(), i);
        assert_eq!(i.rotate_ccw(), i);
    }

    #[test]
    fn filled_two_hole_template_is_vertical_plus_loop() {
        let t = connect_h(&identity_spherical(), &identity_spherical()).unwrap();
        let filled =
            fill_holes(&t, &[&fundamental_tangle(1), &fundamental_tangle(1)]).unwrap();
        assert_eq!(filled, add_free_loops(&fundamental_tangle(1), 1));
    }

    #[test]
    fn fill_after_compose_is_sequential_fills() {
        let s1 = build_j(1, 0, 0, 0).unwrap();
        let s2 = build_j(0, 1, 0, 0).unwrap();
        let b = htwist(2).unwrap();
        let lhs = fill_holes(&compose(&s2, &s1).unwrap(), &[&b]).unwrap();
        let rhs = fill_holes(&s2, &[&fill_holes(&s1, &[&b]).unwrap()]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn connect_h_of_verticals_makes_free_loop() {
        let t1 = fundamental_tangle(1);
        let sum = connect_h(&t1, &t1).unwrap();
        assert_eq!(sum.free_loops(), 1);
        assert_eq!(sum, add_free_loops(&fundamental_tangle(1), 1));
    }

    #[test]
    fn connect_dispatches_boundary_counts() {
        let b = htwist(1).unwrap();
        let s = identity_spherical();
        assert_eq!(connect_h(&b, &b).unwrap().boundaries(), 1);
        assert_eq!(connect_h(&b, &s).unwrap().boundaries(), 2);
        assert_eq!(connect_h(&s, &b).unwrap().boundaries(), 2);
        assert_eq!(connect_h(&s, &s).unwrap().boundaries(), 3);
    }

    #[test]
    fn matching_validation_rejects_reuse() {
        let bad = Diagram::new(
            0,
            1,
            0,
            vec![
                (Attachment::end(0, Label::NW), Attachment::end(0, Label::NE)),
                (Attachment::end(0, Label::NW), Attachment::end(0, Label::SE)),
            ],
        );
        assert!(matches!(bad, Err(DiagramError::Matching(_))));
    }

    #[test]
    fn hook_circle_adds_two_crossings() {
        let b = htwist(1).unwrap();
        let hooked = hook_circle(&b, 0).unwrap();
        assert_eq!(hooked.crossings(), b.crossings() + 2);
        assert!(hooked.is_ball());
    }
}
