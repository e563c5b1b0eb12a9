//! Deterministic random generators for the property suites: ball,
//! spherical and punctured tangles assembled exclusively from the
//! planarity-preserving constructors, plus move decorators.
//!
//! Everything is a pure function of the seed, so failures reproduce.

use alloc::vec::Vec;

use crate::diagram::{
    self, add_free_loops, connect_h, connect_v, fill_holes, fundamental_tangle, hook_circle,
    identity_spherical, Diagram,
};
use crate::faces;
use crate::moves;

/// splitmix64; tiny, stable across platforms and releases.
#[derive(Clone, Debug)]
pub struct Rng(u64);

impl Rng {
    pub fn new(seed: u64) -> Rng {
        Rng(seed)
    }

    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform value in `0..n` (n > 0).
    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n
    }

    pub fn chance(&mut self, percent: u64) -> bool {
        self.below(100) < percent
    }

    /// Uniform in `lo..=hi`.
    pub fn range(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }

    /// Derives an independent stream, for per-sample seeding.
    pub fn split(&mut self, tag: u64) -> Rng {
        Rng(self.next_u64() ^ tag.wrapping_mul(0x9e3779b97f4a7c15))
    }
}

#[derive(Clone, Debug)]
pub struct GenConfig {
    pub seed: u64,
    /// crossing budget; keep at or below the bracket cap
    pub max_crossings: u32,
    pub depth: u32,
    pub allow_closed_components: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig { seed: 0, max_crossings: 12, depth: 3, allow_closed_components: false }
    }
}

fn ball_atom(rng: &mut Rng, budget: u32) -> Diagram {
    let span = budget.min(3) as i64;
    match rng.below(4) {
        0 => fundamental_tangle(1),
        1 => fundamental_tangle(2),
        2 if span > 0 => diagram::htwist(rng.range(-span, span)).expect("small twist"),
        _ if span > 0 => diagram::vtwist(rng.range(-span, span)).expect("small twist"),
        _ => fundamental_tangle(if rng.chance(50) { 1 } else { 2 }),
    }
}

fn gen_ball_inner(rng: &mut Rng, depth: u32, budget: u32) -> Diagram {
    if depth == 0 || budget < 2 {
        return ball_atom(rng, budget);
    }
    match rng.below(8) {
        0 | 1 => {
            let split = rng.below(budget as u64 + 1) as u32;
            let a = gen_ball_inner(rng, depth - 1, split);
            let b = gen_ball_inner(rng, depth - 1, budget - a.crossings().min(budget));
            let sum = if rng.chance(50) { connect_h(&a, &b) } else { connect_v(&a, &b) };
            sum.expect("ball sums cannot fail")
        }
        2 => gen_ball_inner(rng, depth - 1, budget).mirror(),
        3 => gen_ball_inner(rng, depth - 1, budget).rotate_ccw(),
        4 => {
            let b = gen_ball_inner(rng, depth - 1, budget);
            if rng.chance(50) {
                b.h_flip().expect("ball")
            } else {
                b.v_flip().expect("ball")
            }
        }
        5 if budget >= 4 => {
            // fill a spherical tangle's hole
            let s = gen_spherical_inner(rng, depth - 1, budget / 2, false);
            let used = s.crossings().min(budget);
            let b = gen_ball_inner(rng, depth - 1, budget - used);
            fill_holes(&s, &[&b]).expect("one hole, one fill")
        }
        6 if budget >= 1 => {
            // extra twists between two face-adjacent arcs
            let b = gen_ball_inner(rng, depth - 1, budget.saturating_sub(2));
            let room = budget.saturating_sub(b.crossings());
            random_twist(rng, &b, room)
        }
        _ => ball_atom(rng, budget),
    }
}

fn random_twist(rng: &mut Rng, d: &Diagram, room: u32) -> Diagram {
    if room == 0 || d.arcs().len() < 2 {
        return d.clone();
    }
    let f = faces::faces(d);
    let n = d.arcs().len();
    for _ in 0..6 {
        let i = rng.below(n as u64) as usize;
        let j = rng.below(n as u64) as usize;
        if i == j || f.common_face(i, j).is_none() {
            continue;
        }
        let p = rng.range(1, room.min(3) as i64) * if rng.chance(50) { 1 } else { -1 };
        if let Ok(out) = moves::twist_arcs(d, i, j, p) {
            return out;
        }
    }
    d.clone()
}

fn spherical_atom(rng: &mut Rng, budget: u32) -> Diagram {
    match rng.below(4) {
        0 => identity_spherical(),
        1 if budget >= 4 => {
            let p = |r: &mut Rng| r.range(-1, 1);
            diagram::build_j(p(rng), p(rng), p(rng), p(rng)).expect("small box twists")
        }
        2 if budget >= 1 => {
            // a single twist under the identity annulus
            let b = diagram::htwist(rng.range(-1, 1)).expect("twist");
            connect_v(&b, &identity_spherical()).expect("shapes agree")
        }
        _ => identity_spherical(),
    }
}

fn gen_spherical_inner(rng: &mut Rng, depth: u32, budget: u32, closed: bool) -> Diagram {
    let mut d = if depth == 0 || budget < 2 {
        spherical_atom(rng, budget)
    } else {
        match rng.below(10) {
            0 | 1 => {
                let split = budget / 2;
                let a = gen_spherical_inner(rng, depth - 1, split, false);
                let b = gen_spherical_inner(
                    rng,
                    depth - 1,
                    budget.saturating_sub(a.crossings()),
                    false,
                );
                diagram::compose(&a, &b).expect("both spherical")
            }
            2 | 3 => {
                let s = gen_spherical_inner(rng, depth - 1, budget / 2, false);
                let b =
                    gen_ball_inner(rng, depth - 1, budget.saturating_sub(s.crossings()));
                let sum = match rng.below(4) {
                    0 => connect_h(&b, &s),
                    1 => connect_h(&s, &b),
                    2 => connect_v(&b, &s),
                    _ => connect_v(&s, &b),
                };
                sum.expect("ball and spherical")
            }
            4 => {
                let s = gen_spherical_inner(rng, depth - 1, budget / 2, false);
                let b =
                    gen_ball_inner(rng, depth - 1, budget.saturating_sub(s.crossings()));
                let sum = match rng.below(4) {
                    0 => diagram::inner_h_ball(&b, &s),
                    1 => diagram::inner_h_sph(&s, &b),
                    2 => diagram::inner_v_ball(&b, &s),
                    _ => diagram::inner_v_sph(&s, &b),
                };
                sum.expect("ball and spherical")
            }
            5 => {
                let s = gen_spherical_inner(rng, depth - 1, budget, false);
                match rng.below(5) {
                    0 => s.mirror(),
                    1 => s.swap_boundaries().expect("spherical"),
                    2 => s.rotate_inner().expect("spherical"),
                    3 => s.rotate_outer().expect("spherical"),
                    _ => s.rotate_ccw(),
                }
            }
            6 if budget >= 1 => {
                let s = gen_spherical_inner(rng, depth - 1, budget.saturating_sub(2), false);
                let room = budget.saturating_sub(s.crossings());
                random_twist(rng, &s, room)
            }
            _ => spherical_atom(rng, budget),
        }
    };
    if closed {
        // clasp a circle onto some strand, or in rare cases drop in a
        // split circle
        if rng.chance(85) && !d.arcs().is_empty() && d.crossings() + 2 <= budget + 4 {
            let arc = rng.below(d.arcs().len() as u64) as usize;
            d = hook_circle(&d, arc).expect("arc exists");
        } else {
            d = add_free_loops(&d, 1);
        }
    }
    d
}

/// Deterministic ball tangle: crossings stay within `cfg.max_crossings`.
pub fn gen_ball(cfg: &GenConfig) -> Diagram {
    let mut rng = Rng::new(cfg.seed);
    gen_ball_inner(&mut rng, cfg.depth, cfg.max_crossings)
}

/// Deterministic spherical tangle; with `allow_closed_components` the
/// result contains at least one closed component.
pub fn gen_spherical(cfg: &GenConfig) -> Diagram {
    let mut rng = Rng::new(cfg.seed);
    gen_spherical_inner(&mut rng, cfg.depth, cfg.max_crossings, cfg.allow_closed_components)
}

/// Deterministic tangle with exactly `n` holes, chained from spherical
/// pieces by connect sums.
pub fn gen_punctured(cfg: &GenConfig, n: u32) -> Diagram {
    let mut rng = Rng::new(cfg.seed);
    if n == 0 {
        return gen_ball_inner(&mut rng, cfg.depth, cfg.max_crossings);
    }
    let per = cfg.max_crossings / n;
    let mut d = gen_spherical_inner(&mut rng, cfg.depth, per, false);
    for _ in 1..n {
        let s = gen_spherical_inner(&mut rng, cfg.depth, per, false);
        d = if rng.chance(50) { connect_h(&d, &s) } else { connect_v(&d, &s) }
            .expect("outer boundaries present");
    }
    if rng.chance(30) {
        let b = gen_ball_inner(&mut rng, 1, 2);
        d = if rng.chance(50) { connect_h(&d, &b) } else { connect_h(&b, &d) }
            .expect("outer boundaries present");
    }
    d
}

/// One applied decoration move.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoveKind {
    R1,
    R2,
    R3,
    R4,
    Delta,
}

/// Applies a random sequence of Reidemeister insertions (and Δ-moves
/// when `include_delta` is set), returning the rewritten diagram and the
/// move log. All moves are applied at structurally valid sites, so the
/// result is isotopic (respectively Δ-equivalent) to the input.
pub fn decorate(d: &Diagram, cfg: &GenConfig, include_delta: bool) -> (Diagram, Vec<MoveKind>) {
    let mut rng = Rng::new(cfg.seed ^ 0xdec0de);
    let mut out = d.clone();
    let mut log = Vec::new();
    for _ in 0..cfg.depth {
        if out.crossings() + 4 > cfg.max_crossings + 8 {
            break;
        }
        if out.arcs().is_empty() {
            break;
        }
        let kind = rng.below(if include_delta { 5 } else { 4 });
        match kind {
            0 => {
                let arc = rng.below(out.arcs().len() as u64) as usize;
                if let Ok(next) = moves::r1_insert(&out, arc, rng.chance(50)) {
                    out = next;
                    log.push(MoveKind::R1);
                }
            }
            1 => {
                let n = out.arcs().len() as u64;
                let (i, j) = (rng.below(n) as usize, rng.below(n) as usize);
                if i != j {
                    if let Ok(next) = moves::r2_insert(&out, i, j, rng.chance(50)) {
                        out = next;
                        log.push(MoveKind::R2);
                    }
                }
            }
            2 => {
                let sites = moves::r3_sites(&out);
                if !sites.is_empty() {
                    let site = sites[rng.below(sites.len() as u64) as usize];
                    if let Ok(next) = moves::r3_apply(&out, site) {
                        out = next;
                        log.push(MoveKind::R3);
                    }
                }
            }
            3 if out.boundaries() > 0 => {
                if let Some(next) = random_r4(&mut rng, &out) {
                    out = next;
                    log.push(MoveKind::R4);
                }
            }
            4 => {
                let arc = rng.below(out.arcs().len() as u64) as usize;
                if let Ok((folded, site)) = moves::delta_fold_insert(&out, arc) {
                    if let Ok(next) = moves::delta_move(&folded, site) {
                        out = next;
                        log.push(MoveKind::Delta);
                    }
                }
            }
            _ => {}
        }
    }
    (out, log)
}

fn random_r4(rng: &mut Rng, d: &Diagram) -> Option<Diagram> {
    let f = faces::faces(d);
    let boundary = rng.below(d.boundaries() as u64) as u32;
    for _ in 0..6 {
        let arc = rng.below(d.arcs().len() as u64) as usize;
        if let Some((_, _, label)) = f.arc_beside_boundary(arc, boundary) {
            for ccw in [true, false] {
                let cand = moves::r4_slide(d, boundary, arc, rng.chance(50), label, ccw);
                if let Ok(next) = cand {
                    if faces::is_planar(&next) {
                        return Some(next);
                    }
                }
            }
        }
    }
    None
}

/// Builds a spherical tangle from ball tangles and a single copy of the
/// identity annulus via random inner and outer connect sums. Its
/// invariant determinant is a perfect square.
pub fn gen_i_reducible(cfg: &GenConfig) -> Diagram {
    let mut rng = Rng::new(cfg.seed ^ 0x1d);
    reducible_around(&mut rng, identity_spherical(), cfg)
}

/// Builds a spherical tangle around a four-box annular core with the
/// given half-twist counts.
pub fn gen_j_reducible(cfg: &GenConfig, p: [i64; 4]) -> Diagram {
    let mut rng = Rng::new(cfg.seed ^ 0x7a);
    let core = diagram::build_j(p[0], p[1], p[2], p[3]).expect("box twists fit");
    reducible_around(&mut rng, core, cfg)
}

fn reducible_around(rng: &mut Rng, core: Diagram, cfg: &GenConfig) -> Diagram {
    let mut s = core;
    let steps = rng.below(cfg.depth as u64 + 1) as u32;
    for _ in 0..steps {
        if s.crossings() >= cfg.max_crossings {
            break;
        }
        let b = gen_ball_inner(rng, 2, (cfg.max_crossings - s.crossings()).min(4));
        s = match rng.below(8) {
            0 => connect_h(&b, &s),
            1 => connect_h(&s, &b),
            2 => connect_v(&b, &s),
            3 => connect_v(&s, &b),
            4 => diagram::inner_h_ball(&b, &s),
            5 => diagram::inner_h_sph(&s, &b),
            6 => diagram::inner_v_ball(&b, &s),
            _ => diagram::inner_v_sph(&s, &b),
        }
        .expect("shapes agree");
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bracket::BracketOpts;
    use crate::invariants::inv_fn;

    #[test]
    fn seed_determinism() {
        let cfg = GenConfig { seed: 17, ..Default::default() };
        assert_eq!(gen_ball(&cfg), gen_ball(&cfg));
        assert_eq!(gen_spherical(&cfg), gen_spherical(&cfg));
        assert_eq!(gen_punctured(&cfg, 3), gen_punctured(&cfg, 3));
        let d = gen_spherical(&cfg);
        assert_eq!(decorate(&d, &cfg, true), decorate(&d, &cfg, true));
    }

    #[test]
    fn depth_zero_is_an_atom() {
        let cfg = GenConfig { seed: 5, depth: 0, ..Default::default() };
        assert!(gen_ball(&cfg).crossings() <= 3);
    }

    #[test]
    fn generated_shapes() {
        for seed in 0..30 {
            let cfg = GenConfig { seed, ..Default::default() };
            assert!(gen_ball(&cfg).is_ball(), "seed {}", seed);
            assert!(gen_spherical(&cfg).is_spherical(), "seed {}", seed);
            for n in 0..=3 {
                assert_eq!(gen_punctured(&cfg, n).holes(), n, "seed {}", seed);
            }
        }
    }

    #[test]
    fn generated_diagrams_are_planar() {
        for seed in 0..40 {
            let cfg = GenConfig { seed, ..Default::default() };
            assert!(faces::is_planar(&gen_ball(&cfg)), "ball seed {}", seed);
            assert!(faces::is_planar(&gen_spherical(&cfg)), "spherical seed {}", seed);
        }
    }

    #[test]
    fn closed_components_give_even_entries() {
        let opts = BracketOpts::default();
        for seed in 0..12 {
            let cfg = GenConfig {
                seed,
                allow_closed_components: true,
                max_crossings: 8,
                depth: 2,
                ..Default::default()
            };
            let s = gen_spherical(&cfg);
            let f = inv_fn(&s, &opts).unwrap();
            assert!(
                f.mat.entries().iter().all(|e| e % 2 == 0),
                "seed {} gave {}",
                seed,
                f.mat
            );
        }
    }

    #[test]
    fn decorate_empty_budget_is_identity() {
        let cfg = GenConfig { seed: 3, depth: 0, ..Default::default() };
        let d = gen_spherical(&cfg);
        let (out, log) = decorate(&d, &cfg, true);
        assert_eq!(out, d);
        assert!(log.is_empty());
    }

    #[test]
    fn decorate_preserves_component_count() {
        for seed in 0..15 {
            let cfg = GenConfig { seed, depth: 4, max_crossings: 10, ..Default::default() };
            let d = gen_spherical(&cfg);
            let before = crate::moves::component_count(&d);
            let (out, log) = decorate(&d, &cfg, true);
            assert_eq!(crate::moves::component_count(&out), before, "seed {} log {:?}", seed, log);
            assert!(faces::is_planar(&out), "seed {}", seed);
        }
    }
}
