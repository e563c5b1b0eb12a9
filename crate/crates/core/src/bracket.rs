//! The Kauffman bracket at `A = exp(i*pi/4)`, where the loop factor
//! `-A^2 - A^{-2}` vanishes, so only smoothings producing a single circle
//! contribute. Three independent evaluators are provided:
//!
//! * [`bracket_full`] — enumerates every state in plain integer order and
//!   applies the loop factor explicitly; the slow oracle.
//! * [`bracket_monocyclic`] — shared-prefix enumeration with union-find
//!   loop counting and early pruning once two circles exist; the default.
//! * [`bracket_skein`] — recursive smoothing with kink and free-loop
//!   reduction and memoization on a canonical diagram key, accumulating in
//!   the integer span of `{1, A, A^2, A^3}`.
//!
//! An A-smoothing joins ports 0–1 and 2–3 of a crossing; a B-smoothing
//! joins 0–3 and 1–2.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{Attachment, Diagram};
use crate::phi::{PhiError, PhiScalar};

/// Default hard limit on crossings per bracket call (2^24 states).
pub const DEFAULT_CROSSING_CAP: u32 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Smoothing {
    A,
    B,
}

/// A total assignment of smoothings to the crossings of one diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct State {
    pub smoothings: Vec<Smoothing>,
}

impl State {
    /// State number `bits` interpreted crossing-by-crossing: bit i set
    /// means crossing i is B-smoothed.
    pub fn from_bits(crossings: u32, bits: u64) -> State {
        let smoothings = (0..crossings)
            .map(|i| if bits >> i & 1 == 1 { Smoothing::B } else { Smoothing::A })
            .collect();
        State { smoothings }
    }

    pub fn a_count(&self) -> u32 {
        self.smoothings.iter().filter(|&&s| s == Smoothing::A).count() as u32
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BracketError {
    /// The empty diagram has no bracket.
    EmptyDiagram,
    /// Bracket is defined for link diagrams only.
    HasBoundaries(u32),
    /// Crossing count exceeds the configured cap.
    CapExceeded { crossings: u32, cap: u32 },
    /// State mismatch in a parity query.
    StateSize,
    Arith(PhiError),
    /// Partial monocyclic sums left ZΦ; impossible for a valid diagram.
    IncoherentSum,
    /// The skein accumulator did not collapse to a single power of A;
    /// impossible for a valid diagram.
    ResultNotInPhi,
}

impl fmt::Display for BracketError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BracketError::EmptyDiagram => write!(f, "bracket of the empty diagram is undefined"),
            BracketError::HasBoundaries(b) => {
                write!(f, "bracket needs a closed link diagram, found {} boundary circles", b)
            }
            BracketError::CapExceeded { crossings, cap } => {
                write!(f, "{} crossings exceed the cap of {}", crossings, cap)
            }
            BracketError::StateSize => write!(f, "state does not cover the diagram"),
            BracketError::Arith(e) => write!(f, "{}", e),
            BracketError::IncoherentSum => {
                write!(f, "internal error: monocyclic partial sum left ZΦ")
            }
            BracketError::ResultNotInPhi => {
                write!(f, "internal error: skein result is not an integer multiple of a root of unity")
            }
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for BracketError {}

impl From<PhiError> for BracketError {
    fn from(e: PhiError) -> Self {
        BracketError::Arith(e)
    }
}

fn check_input(l: &Diagram, cap: u32) -> Result<(), BracketError> {
    if l.boundaries() != 0 {
        return Err(BracketError::HasBoundaries(l.boundaries()));
    }
    if l.crossings() == 0 && l.free_loops() == 0 {
        return Err(BracketError::EmptyDiagram);
    }
    if l.crossings() > cap || l.crossings() > 62 {
        return Err(BracketError::CapExceeded { crossings: l.crossings(), cap: cap.min(62) });
    }
    Ok(())
}

fn port_node(att: Attachment) -> u32 {
    match att {
        Attachment::Port { crossing, port } => crossing * 4 + port as u32,
        Attachment::End { .. } => unreachable!("link diagrams have no boundary endpoints"),
    }
}

/// Plain union-find with union by size.
struct Dsu {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl Dsu {
    fn new(n: u32) -> Dsu {
        Dsu { parent: (0..n).collect(), size: vec![1; n as usize] }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    /// Returns true when the union merged two components.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra as usize] < self.size[rb as usize] {
            core::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb as usize] = ra;
        self.size[ra as usize] += self.size[rb as usize];
        true
    }
}

const SMOOTH_JOINS: [[(u32, u32); 2]; 2] = [
    [(0, 1), (2, 3)], // A
    [(0, 3), (1, 2)], // B
];

/// Number of circles obtained by applying `state` to `l`.
pub fn circle_count(l: &Diagram, state: &State) -> Result<u32, BracketError> {
    if l.boundaries() != 0 {
        return Err(BracketError::HasBoundaries(l.boundaries()));
    }
    let c = l.crossings();
    if state.smoothings.len() != c as usize {
        return Err(BracketError::StateSize);
    }
    let mut dsu = Dsu::new(c * 4);
    let mut merges = 0u32;
    for &(a, b) in l.arcs() {
        if dsu.union(port_node(a), port_node(b)) {
            merges += 1;
        }
    }
    for (i, &s) in state.smoothings.iter().enumerate() {
        let joins = SMOOTH_JOINS[(s == Smoothing::B) as usize];
        for (p, q) in joins {
            if dsu.union(i as u32 * 4 + p, i as u32 * 4 + q) {
                merges += 1;
            }
        }
    }
    Ok(c * 4 - merges + l.free_loops())
}

/// Whether two states produce circle counts of equal parity.
pub fn state_parity(l: &Diagram, s1: &State, s2: &State) -> Result<bool, BracketError> {
    Ok(circle_count(l, s1)? % 2 == circle_count(l, s2)? % 2)
}

/// Slow oracle: iterates states `0..2^c` in integer order, computes the
/// circle count of each with a fresh union-find pass, and sums
/// `A^{α-β} * loop_factor^{d-1}` where the loop factor is exactly zero.
pub fn bracket_full_with(l: &Diagram, cap: u32) -> Result<PhiScalar, BracketError> {
    check_input(l, cap)?;
    let c = l.crossings();
    if c == 0 {
        return single_loop_value(l.free_loops());
    }
    let n = c * 4;
    let mut base = Dsu::new(n);
    let mut base_merges = 0u32;
    for &(a, b) in l.arcs() {
        if base.union(port_node(a), port_node(b)) {
            base_merges += 1;
        }
    }
    // flatten so that per-state copies start from fully compressed roots
    for x in 0..n {
        base.find(x);
    }
    let mut dsu = Dsu::new(n);
    let mut sum = PhiScalar::ZERO;
    for bits in 0u64..(1u64 << c) {
        dsu.parent.copy_from_slice(&base.parent);
        dsu.size.copy_from_slice(&base.size);
        let mut merges = base_merges;
        for i in 0..c {
            let joins = SMOOTH_JOINS[(bits >> i & 1) as usize];
            for (p, q) in joins {
                if dsu.union(i * 4 + p, i * 4 + q) {
                    merges += 1;
                }
            }
        }
        let d = n - merges + l.free_loops();
        let alpha = c - bits.count_ones();
        let phase = PhiScalar::new(1, 2 * alpha as i64 - c as i64).map_err(BracketError::Arith)?;
        // (-A^2 - A^{-2}) = 0 at this A, so the factor kills all d > 1 terms
        let loop_factor = if d == 1 { PhiScalar::ONE } else { PhiScalar::ZERO };
        let term = phase.mul(&loop_factor)?;
        sum = sum.add(&term).map_err(|e| match e {
            PhiError::NonCoherentPhases => BracketError::IncoherentSum,
            other => BracketError::Arith(other),
        })?;
    }
    Ok(sum)
}

fn single_loop_value(free_loops: u32) -> Result<PhiScalar, BracketError> {
    // k crossing-free circles evaluate to 0^(k-1)
    Ok(if free_loops == 1 { PhiScalar::ONE } else { PhiScalar::ZERO })
}

/// Union-find with an undo trail: union by rank, no path compression.
struct RollbackDsu {
    parent: Vec<u32>,
    rank: Vec<u8>,
    trail: Vec<(u32, bool)>,
}

impl RollbackDsu {
    fn new(n: u32) -> RollbackDsu {
        RollbackDsu { parent: (0..n).collect(), rank: vec![0; n as usize], trail: Vec::new() }
    }

    fn find(&self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            x = self.parent[x as usize];
        }
        x
    }

    /// Returns true when merged; records the merge for rollback.
    fn union(&mut self, a: u32, b: u32) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.rank[ra as usize] < self.rank[rb as usize] {
            core::mem::swap(&mut ra, &mut rb);
        }
        let bumped = self.rank[ra as usize] == self.rank[rb as usize];
        if bumped {
            self.rank[ra as usize] += 1;
        }
        self.parent[rb as usize] = ra;
        self.trail.push((rb, bumped));
        true
    }

    fn mark(&self) -> usize {
        self.trail.len()
    }

    fn rollback(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (child, bumped) = self.trail.pop().expect("trail length checked");
            let root = self.parent[child as usize];
            self.parent[child as usize] = child;
            if bumped {
                self.rank[root as usize] -= 1;
            }
        }
    }
}

struct MonoState {
    dsu: RollbackDsu,
    crossings: u32,
    base_loops: u32,
    sum: PhiScalar,
}

/// Default evaluator: shares smoothing prefixes across states (successive
/// leaves differ in a suffix, like a Gray walk) and prunes a subtree as
/// soon as the sealed-circle count rules out monocyclic completions.
pub fn bracket_monocyclic_with(l: &Diagram, cap: u32) -> Result<PhiScalar, BracketError> {
    check_input(l, cap)?;
    let c = l.crossings();
    if c == 0 {
        return single_loop_value(l.free_loops());
    }
    let mut st = MonoState {
        dsu: RollbackDsu::new(c * 4),
        crossings: c,
        base_loops: l.free_loops(),
        sum: PhiScalar::ZERO,
    };
    for &(a, b) in l.arcs() {
        st.dsu.union(port_node(a), port_node(b));
    }
    mono_dfs(&mut st, 0, 0, 0)?;
    Ok(st.sum)
}

fn mono_dfs(st: &mut MonoState, depth: u32, alpha: u32, closed: u32) -> Result<(), BracketError> {
    let sealed = closed + st.base_loops;
    if sealed >= 2 || (sealed == 1 && depth < st.crossings) {
        return Ok(()); // every completion has at least two circles
    }
    if depth == st.crossings {
        if sealed == 1 {
            let c = st.crossings;
            let phase =
                PhiScalar::new(1, 2 * alpha as i64 - c as i64).map_err(BracketError::Arith)?;
            st.sum = st.sum.add(&phase).map_err(|e| match e {
                PhiError::NonCoherentPhases => BracketError::IncoherentSum,
                other => BracketError::Arith(other),
            })?;
        }
        return Ok(());
    }
    for (variant, joins) in SMOOTH_JOINS.iter().enumerate() {
        let mark = st.dsu.mark();
        let mut newly_closed = 0u32;
        for &(p, q) in joins {
            if !st.dsu.union(depth * 4 + p, depth * 4 + q) {
                newly_closed += 1;
            }
        }
        let a = alpha + (variant == 0) as u32;
        mono_dfs(st, depth + 1, a, closed + newly_closed)?;
        st.dsu.rollback(mark);
    }
    Ok(())
}

/// Exact accumulator over the basis `{1, A, A^2, A^3}` with `A^4 = -1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Z4([i64; 4]);

impl Z4 {
    const ZERO: Z4 = Z4([0; 4]);
    const ONE: Z4 = Z4([1, 0, 0, 0]);

    fn add(&self, other: &Z4) -> Result<Z4, BracketError> {
        let mut out = [0i64; 4];
        for i in 0..4 {
            out[i] = self.0[i]
                .checked_add(other.0[i])
                .ok_or(BracketError::Arith(PhiError::Overflow))?;
        }
        Ok(Z4(out))
    }

    /// Multiplies by `sign * A^exp`.
    fn scale(&self, sign: i64, exp: i64) -> Result<Z4, BracketError> {
        let e = exp.rem_euclid(8);
        let (shift, flip) = if e >= 4 { (e - 4, -1) } else { (e, 1) };
        let s = sign * flip;
        let mut out = [0i64; 4];
        for i in 0..4usize {
            let j = i + shift as usize;
            let (slot, extra) = if j >= 4 { (j - 4, -1) } else { (j, 1) };
            out[slot] = (s * extra)
                .checked_mul(self.0[i])
                .ok_or(BracketError::Arith(PhiError::Overflow))?;
        }
        Ok(Z4(out))
    }

    fn to_phi(&self) -> Result<PhiScalar, BracketError> {
        let mut found: Option<(i64, usize)> = None;
        for (i, &v) in self.0.iter().enumerate() {
            if v != 0 {
                if found.is_some() {
                    return Err(BracketError::ResultNotInPhi);
                }
                found = Some((v, i));
            }
        }
        match found {
            None => Ok(PhiScalar::ZERO),
            Some((v, i)) => PhiScalar::new(v, i as i64).map_err(BracketError::Arith),
        }
    }
}

/// Mutable diagram for the skein recursion: active crossings plus a
/// partner map on port nodes.
#[derive(Clone)]
struct SkeinDiag {
    partner: BTreeMap<u32, u32>,
    alive: Vec<u32>,
    free_loops: u32,
}

impl SkeinDiag {
    fn from_diagram(l: &Diagram) -> SkeinDiag {
        let mut partner = BTreeMap::new();
        for &(a, b) in l.arcs() {
            let (x, y) = (port_node(a), port_node(b));
            partner.insert(x, y);
            partner.insert(y, x);
        }
        SkeinDiag { partner, alive: (0..l.crossings()).collect(), free_loops: l.free_loops() }
    }

    /// Connects the far ends of the arcs at nodes `a` and `b`, removing
    /// both; a direct arc `a`–`b` closes a circle.
    fn join(&mut self, a: u32, b: u32) {
        let x = self.partner.remove(&a).expect("node present");
        if x == b {
            self.partner.remove(&b);
            self.free_loops += 1;
            return;
        }
        let y = self.partner.remove(&b).expect("node present");
        self.partner.remove(&x);
        self.partner.remove(&y);
        if x == y {
            // the two arcs were the two halves of one loop through a third
            // crossing port pair; x == y cannot happen since each node has
            // one partner, but keep the loop count safe.
            self.free_loops += 1;
            return;
        }
        self.partner.insert(x, y);
        self.partner.insert(y, x);
    }

    fn smoothed(&self, crossing: u32, s: Smoothing) -> SkeinDiag {
        let mut out = self.clone();
        let joins = SMOOTH_JOINS[(s == Smoothing::B) as usize];
        for (p, q) in joins {
            out.join(crossing * 4 + p, crossing * 4 + q);
        }
        out.alive.retain(|&c| c != crossing);
        out
    }

    /// Finds an R-I kink: an arc joining two adjacent ports of one live
    /// crossing. Returns the crossing and the loop's exponent factor.
    fn find_kink(&self) -> Option<(u32, i64)> {
        for &c in &self.alive {
            let n = c * 4;
            // (0,1) and (2,3) sit in the A-position: factor -A^3
            if self.partner.get(&n) == Some(&(n + 1)) || self.partner.get(&(n + 2)) == Some(&(n + 3))
            {
                return Some((c, 3));
            }
            // (1,2) and (3,0) sit in the B-position: factor -A^{-3}
            if self.partner.get(&(n + 1)) == Some(&(n + 2)) || self.partner.get(&(n + 3)) == Some(&n)
            {
                return Some((c, -3));
            }
        }
        None
    }

    /// Removes a kinked crossing, joining its through-strand.
    fn remove_kink(&mut self, crossing: u32) {
        let n = crossing * 4;
        let (loop_a, loop_b) = if self.partner.get(&n) == Some(&(n + 1)) {
            (n, n + 1)
        } else if self.partner.get(&(n + 2)) == Some(&(n + 3)) {
            (n + 2, n + 3)
        } else if self.partner.get(&(n + 1)) == Some(&(n + 2)) {
            (n + 1, n + 2)
        } else {
            (n + 3, n)
        };
        self.partner.remove(&loop_a);
        self.partner.remove(&loop_b);
        let through: Vec<u32> = (0..4).map(|p| n + p).filter(|x| *x != loop_a && *x != loop_b).collect();
        self.join(through[0], through[1]);
        self.alive.retain(|&c| c != crossing);
    }

    /// Canonical key: live crossings relabelled in sorted order, arcs
    /// listed sorted. Only called when `free_loops == 0`.
    fn key(&self) -> Vec<u64> {
        let mut relabel = BTreeMap::new();
        for (i, &c) in self.alive.iter().enumerate() {
            relabel.insert(c, i as u32);
        }
        let mut out = Vec::with_capacity(self.partner.len() / 2);
        for (&a, &b) in &self.partner {
            if a < b {
                let ra = relabel[&(a / 4)] * 4 + a % 4;
                let rb = relabel[&(b / 4)] * 4 + b % 4;
                out.push((ra as u64) << 32 | rb as u64);
            }
        }
        out.sort_unstable();
        out
    }
}

/// Skein-relation evaluator with memoization.
pub fn bracket_skein_with(l: &Diagram, cap: u32) -> Result<PhiScalar, BracketError> {
    if l.boundaries() != 0 {
        return Err(BracketError::HasBoundaries(l.boundaries()));
    }
    if l.crossings() == 0 && l.free_loops() == 0 {
        return Err(BracketError::EmptyDiagram);
    }
    if l.crossings() > cap {
        return Err(BracketError::CapExceeded { crossings: l.crossings(), cap });
    }
    let mut memo: BTreeMap<Vec<u64>, Z4> = BTreeMap::new();
    let v = skein_eval(SkeinDiag::from_diagram(l), &mut memo)?;
    v.to_phi()
}

fn skein_eval(
    mut diag: SkeinDiag,
    memo: &mut BTreeMap<Vec<u64>, Z4>,
) -> Result<Z4, BracketError> {
    // reduction phase: a factored-off power of A accumulates in `sign/exp`
    let mut sign = 1i64;
    let mut exp = 0i64;
    loop {
        let live = !diag.alive.is_empty();
        if diag.free_loops > 0 && live {
            return Ok(Z4::ZERO); // a sealed circle plus anything else
        }
        if !live {
            let base = if diag.free_loops == 1 { Z4::ONE } else { Z4::ZERO };
            return base.scale(sign, exp);
        }
        match diag.find_kink() {
            Some((crossing, e)) => {
                // R-I loop contributes -A^{±3}
                sign = -sign;
                exp += e;
                diag.remove_kink(crossing);
            }
            None => break,
        }
    }
    let key = diag.key();
    if let Some(v) = memo.get(&key) {
        return v.scale(sign, exp);
    }
    let crossing = diag.alive[0];
    let va = skein_eval(diag.smoothed(crossing, Smoothing::A), memo)?;
    let vb = skein_eval(diag.smoothed(crossing, Smoothing::B), memo)?;
    let v = va.scale(1, 1)?.add(&vb.scale(1, -1)?)?;
    memo.insert(key, v);
    v.scale(sign, exp)
}

/// Bracket evaluator selection and crossing cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Evaluator {
    Full,
    Monocyclic,
    Skein,
}

#[derive(Clone, Copy, Debug)]
pub struct BracketOpts {
    pub evaluator: Evaluator,
    pub cap: u32,
}

impl Default for BracketOpts {
    fn default() -> Self {
        BracketOpts { evaluator: Evaluator::Monocyclic, cap: DEFAULT_CROSSING_CAP }
    }
}

impl BracketOpts {
    pub fn with_cap(cap: u32) -> BracketOpts {
        BracketOpts { cap, ..Default::default() }
    }
}

pub fn bracket_with(l: &Diagram, opts: &BracketOpts) -> Result<PhiScalar, BracketError> {
    match opts.evaluator {
        Evaluator::Full => bracket_full_with(l, opts.cap),
        Evaluator::Monocyclic => bracket_monocyclic_with(l, opts.cap),
        Evaluator::Skein => bracket_skein_with(l, opts.cap),
    }
}

pub fn bracket_full(l: &Diagram) -> Result<PhiScalar, BracketError> {
    bracket_full_with(l, DEFAULT_CROSSING_CAP)
}

pub fn bracket_monocyclic(l: &Diagram) -> Result<PhiScalar, BracketError> {
    bracket_monocyclic_with(l, DEFAULT_CROSSING_CAP)
}

pub fn bracket_skein(l: &Diagram) -> Result<PhiScalar, BracketError> {
    bracket_skein_with(l, DEFAULT_CROSSING_CAP)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        add_free_loops, connect_v, denominator_closure, fundamental_tangle, htwist,
        numerator_closure, vtwist,
    };

    fn unknot() -> Diagram {
        add_free_loops(&Diagram::new(0, 0, 0, alloc::vec::Vec::new()).unwrap(), 1)
    }

    fn hopf() -> Diagram {
        numerator_closure(&htwist(2).unwrap()).unwrap()
    }

    fn trefoil() -> Diagram {
        numerator_closure(&htwist(3).unwrap()).unwrap()
    }

    fn figure_eight() -> Diagram {
        let t = connect_v(&htwist(2).unwrap(), &vtwist(2).unwrap()).unwrap();
        denominator_closure(&t).unwrap()
    }

    fn all_three(l: &Diagram) -> PhiScalar {
        let f = bracket_full(l).unwrap();
        let m = bracket_monocyclic(l).unwrap();
        let s = bracket_skein(l).unwrap();
        assert_eq!(f, m, "full vs monocyclic");
        assert_eq!(f, s, "full vs skein");
        f
    }

    #[test]
    fn unknot_and_unlink() {
        assert_eq!(all_three(&unknot()), PhiScalar::ONE);
        let two = add_free_loops(&unknot(), 1);
        assert_eq!(all_three(&two), PhiScalar::ZERO);
    }

    #[test]
    fn golden_magnitudes() {
        assert_eq!(all_three(&hopf()).magnitude(), 2);
        assert_eq!(all_three(&trefoil()).magnitude(), 3);
        assert_eq!(all_three(&figure_eight()).magnitude(), 5);
    }

    #[test]
    fn kinked_unknot_has_unit_magnitude() {
        let l = numerator_closure(&htwist(1).unwrap()).unwrap();
        assert_eq!(all_three(&l).magnitude(), 1);
    }

    #[test]
    fn mirror_preserves_magnitude() {
        for l in [hopf(), trefoil(), figure_eight()] {
            assert_eq!(all_three(&l).magnitude(), all_three(&l.mirror()).magnitude());
        }
    }

    #[test]
    fn split_component_kills_bracket() {
        let split = add_free_loops(&trefoil(), 1);
        assert_eq!(all_three(&split), PhiScalar::ZERO);
    }

    #[test]
    fn empty_diagram_rejected() {
        let empty = Diagram::new(0, 0, 0, alloc::vec::Vec::new()).unwrap();
        assert_eq!(bracket_full(&empty), Err(BracketError::EmptyDiagram));
        assert_eq!(bracket_monocyclic(&empty), Err(BracketError::EmptyDiagram));
        assert_eq!(bracket_skein(&empty), Err(BracketError::EmptyDiagram));
    }

    #[test]
    fn boundary_rejected() {
        let b = fundamental_tangle(1);
        assert!(matches!(bracket_monocyclic(&b), Err(BracketError::HasBoundaries(1))));
    }

    #[test]
    fn cap_is_enforced() {
        let l = numerator_closure(&htwist(6).unwrap()).unwrap();
        assert!(matches!(
            bracket_monocyclic_with(&l, 5),
            Err(BracketError::CapExceeded { crossings: 6, cap: 5 })
        ));
        assert_eq!(bracket_skein_with(&l, 25).unwrap().magnitude(), 6);
    }

    #[test]
    fn parity_law_small() {
        let l = trefoil();
        let s0 = State::from_bits(3, 0b000);
        let s1 = State::from_bits(3, 0b001);
        let s3 = State::from_bits(3, 0b011);
        assert!(state_parity(&l, &s0, &s0).unwrap());
        assert!(!state_parity(&l, &s0, &s1).unwrap());
        assert!(state_parity(&l, &s0, &s3).unwrap());
    }

    #[test]
    fn nonplanar_input_aborts_loudly() {
        // two circles crossing exactly once cannot be drawn in the
        // plane; both evaluators must reject rather than return a value
        let fake = Diagram::new(
            1,
            0,
            0,
            alloc::vec![
                (Attachment::port(0, 0), Attachment::port(0, 2)),
                (Attachment::port(0, 1), Attachment::port(0, 3)),
            ],
        )
        .unwrap();
        assert!(!crate::faces::is_planar(&fake));
        assert_eq!(bracket_monocyclic(&fake), Err(BracketError::IncoherentSum));
        assert_eq!(bracket_full(&fake), Err(BracketError::IncoherentSum));
        assert_eq!(bracket_skein(&fake), Err(BracketError::ResultNotInPhi));
    }

    #[test]
    fn torus_twist_family() {
        // numerator closure of p horizontal twists is the (2, p) pattern
        for p in 0..=8i64 {
            let l = numerator_closure(&htwist(p).unwrap()).unwrap();
            assert_eq!(all_three(&l).magnitude(), p.abs(), "p = {}", p);
            let m = numerator_closure(&htwist(-p).unwrap()).unwrap();
            assert_eq!(all_three(&m).magnitude(), p.abs(), "p = -{}", p);
        }
    }
}
