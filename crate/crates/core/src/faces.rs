//! Faces of the planar embedding carried by a diagram's rotation data.
//!
//! The counterclockwise port order at each crossing and the cyclic label
//! order around each boundary circle form a rotation system, so the face
//! boundaries can be traced combinatorially. Face data drives the move
//! rewrites: a Reidemeister-II slide needs its two arcs on a common face,
//! and a type-IV slide needs the rerouted arc to share a face with a
//! channel of the hole.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diagram::{Attachment, Diagram, Label};

/// A directed traversal of one arc: `reversed = false` runs from the
/// stored first endpoint to the second.
pub type HalfArc = (usize, bool);

pub struct Faces {
    /// half-arcs of each face, in boundary-walk order
    pub faces: Vec<Vec<HalfArc>>,
    face_of: BTreeMap<HalfArc, usize>,
    /// hole channels visited by each face: (boundary, label) meaning the
    /// gap between `label` and the next label in rotation order
    corners: Vec<Vec<(u32, Label)>>,
}

/// Next label counterclockwise around a circle's positional order
/// NE(45°) → NW(135°) → SW(225°) → SE(315°).
fn circle_ccw(l: Label) -> Label {
    match l {
        Label::NE => Label::NW,
        Label::NW => Label::SW,
        Label::SW => Label::SE,
        Label::SE => Label::NE,
    }
}

fn circle_cw(l: Label) -> Label {
    match l {
        Label::NW => Label::NE,
        Label::SW => Label::NW,
        Label::SE => Label::SW,
        Label::NE => Label::SE,
    }
}

/// Rotation: the next attachment counterclockwise as seen from the face
/// region. The outer circle's order reverses because the diagram lies
/// inside it.
fn sigma(att: Attachment) -> Attachment {
    match att {
        Attachment::Port { crossing, port } => Attachment::port(crossing, (port + 1) % 4),
        Attachment::End { boundary, label } => {
            let next = if boundary == 0 { circle_cw(label) } else { circle_ccw(label) };
            Attachment::end(boundary, next)
        }
    }
}

pub fn faces(d: &Diagram) -> Faces {
    let arcs = d.arcs();
    let mut at: BTreeMap<Attachment, HalfArc> = BTreeMap::new();
    for (i, &(a, _)) in arcs.iter().enumerate() {
        at.insert(a, (i, false));
    }
    for (i, &(_, b)) in arcs.iter().enumerate() {
        at.insert(b, (i, true));
    }
    let head = |h: HalfArc| -> Attachment {
        let (i, rev) = h;
        if rev {
            arcs[i].0
        } else {
            arcs[i].1
        }
    };
    let mut face_of = BTreeMap::new();
    let mut out_faces = Vec::new();
    let mut corners = Vec::new();
    for i in 0..arcs.len() {
        for rev in [false, true] {
            let start: HalfArc = (i, rev);
            if face_of.contains_key(&start) {
                continue;
            }
            let id = out_faces.len();
            let mut cycle = Vec::new();
            let mut cs = Vec::new();
            let mut h = start;
            loop {
                face_of.insert(h, id);
                cycle.push(h);
                // the corner at the arrival attachment: arriving at a
                // boundary endpoint, the face runs along the circle
                // segment between that label and the next in rotation
                let x = head(h);
                if let Attachment::End { boundary, label } = x {
                    cs.push((boundary, label));
                }
                h = at[&sigma(x)];
                if h == start {
                    break;
                }
            }
            out_faces.push(cycle);
            corners.push(cs);
        }
    }
    Faces { faces: out_faces, face_of, corners }
}

impl Faces {
    pub fn face_of(&self, h: HalfArc) -> usize {
        self.face_of[&h]
    }

    /// A face shared by the two arcs, with the traversal direction of
    /// each on that face.
    pub fn common_face(&self, arc_a: usize, arc_b: usize) -> Option<(usize, bool, bool)> {
        for ra in [false, true] {
            for rb in [false, true] {
                let fa = self.face_of[&(arc_a, ra)];
                if fa == self.face_of[&(arc_b, rb)] {
                    return Some((fa, ra, rb));
                }
            }
        }
        None
    }

    /// Whether some face contains both the arc and an endpoint corner of
    /// the given boundary circle.
    pub fn arc_beside_boundary(&self, arc: usize, boundary: u32) -> Option<(usize, bool, Label)> {
        for rev in [false, true] {
            let f = self.face_of[&(arc, rev)];
            if let Some(&(_, label)) = self.corners[f].iter().find(|&&(b, _)| b == boundary) {
                return Some((f, rev, label));
            }
        }
        None
    }
}

/// Face count check: a diagram whose rotation system embeds in the plane
/// has `E - V + 2k` faces, `k` the number of connected pieces (free
/// loops ignored).
pub fn is_planar(d: &Diagram) -> bool {
    let e = d.arcs().len();
    let v = d.crossings() as usize + d.boundaries() as usize;
    if e == 0 {
        return true;
    }
    // connected components over vertices; crude fixed-point labelling,
    // diagrams are small
    let mut vertex_comp: BTreeMap<u64, usize> = BTreeMap::new();
    let vertex_key = |att: Attachment| -> u64 {
        match att {
            Attachment::Port { crossing, .. } => crossing as u64,
            Attachment::End { boundary, .. } => (1 << 40) | boundary as u64,
        }
    };
    let mut next_id = 0usize;
    for &(a, b) in d.arcs() {
        for att in [a, b] {
            vertex_comp.entry(vertex_key(att)).or_insert_with(|| {
                next_id += 1;
                next_id - 1
            });
        }
    }
    let mut changed = true;
    while changed {
        changed = false;
        for &(a, b) in d.arcs() {
            let (ca, cb) = (vertex_comp[&vertex_key(a)], vertex_comp[&vertex_key(b)]);
            if ca != cb {
                let m = ca.min(cb);
                for v in vertex_comp.values_mut() {
                    if *v == ca || *v == cb {
                        *v = m;
                    }
                }
                changed = true;
            }
        }
    }
    let mut roots: Vec<usize> = vertex_comp.values().copied().collect();
    roots.sort_unstable();
    roots.dedup();
    let k = roots.len();
    faces(d).faces.len() == e + 2 * k - v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        build_j, connect_h, fundamental_tangle, htwist, identity_spherical, numerator_closure,
        vtwist,
    };

    #[test]
    fn face_counts_match_euler() {
        // tangles: V = c + 1, E = 2c + 2, faces = c + 3 when connected
        for d in [htwist(1).unwrap(), htwist(3).unwrap(), vtwist(4).unwrap()] {
            let f = faces(&d);
            assert_eq!(f.faces.len(), d.crossings() as usize + 3, "{:?}", d);
            assert!(is_planar(&d));
        }
        // the Hopf link diagram has 4 regions
        let hopf = numerator_closure(&htwist(2).unwrap()).unwrap();
        assert_eq!(faces(&hopf).faces.len(), 4);
        assert!(is_planar(&hopf));
        // identity spherical tangle: V = 2, E = 4, F = 4 quadrants
        let i = identity_spherical();
        assert_eq!(faces(&i).faces.len(), 4);
        assert!(is_planar(&i));
    }

    #[test]
    fn composite_diagrams_stay_planar() {
        let d = connect_h(&htwist(2).unwrap(), &vtwist(-3).unwrap()).unwrap();
        assert!(is_planar(&d));
        let j = build_j(1, 1, 1, 1).unwrap();
        assert!(is_planar(&j));
        let j2 = build_j(2, -1, 0, 3).unwrap();
        assert!(is_planar(&j2));
        let t = connect_h(&identity_spherical(), &identity_spherical()).unwrap();
        assert!(is_planar(&t));
        assert!(is_planar(&fundamental_tangle(1)));
    }

    #[test]
    fn every_arc_has_two_face_sides() {
        let d = numerator_closure(&htwist(3).unwrap()).unwrap();
        let f = faces(&d);
        for i in 0..d.arcs().len() {
            let a = f.face_of((i, false));
            let b = f.face_of((i, true));
            assert!(a < f.faces.len() && b < f.faces.len());
        }
    }
}
