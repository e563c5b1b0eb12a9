//! The matrix-valued tangle invariants: `f` of ball tangles (a projective
//! integer column), `F^n` of n-punctured tangles (a projective 2 x 2^n
//! integer matrix), the closed-form matrix identities they satisfy under
//! connect sums and symmetries, and the embedding and determinant
//! obstructions built from them.
//!
//! A ball tangle's column is `[z<B_1>; i z <B_2>]` where `B_1`, `B_2` are
//! the numerator and denominator closures and `z` is the 8th root of
//! unity making both entries integers. For n holes, column `k` closes the
//! tangle over the k-th lexicographic filling by fundamental tangles and
//! carries the weight `(-i)^{t_k}`, `t_k` the number of horizontal fills.

use alloc::vec::Vec;
use core::fmt;

use crate::bracket::{bracket_with, BracketError, BracketOpts};
use crate::diagram::{
    denominator_closure, fill_holes, fundamental_tangle, numerator_closure, Diagram, DiagramError,
};
use crate::phi::{divides, gcd_list, MultiIndex, PhiError, PhiScalar, ProjMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantError {
    Bracket(BracketError),
    Diagram(DiagramError),
    Arith(PhiError),
    /// The closure brackets could not be scaled to a common integer
    /// matrix; impossible for a genuine planar diagram.
    PhaseIncoherence,
    Shape,
}

impl fmt::Display for InvariantError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantError::Bracket(e) => write!(f, "{}", e),
            InvariantError::Diagram(e) => write!(f, "{}", e),
            InvariantError::Arith(e) => write!(f, "{}", e),
            InvariantError::PhaseIncoherence => {
                write!(f, "closure brackets have incoherent phases; diagram is not planar")
            }
            InvariantError::Shape => write!(f, "matrix shape mismatch"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for InvariantError {}

impl From<BracketError> for InvariantError {
    fn from(e: BracketError) -> Self {
        InvariantError::Bracket(e)
    }
}

impl From<DiagramError> for InvariantError {
    fn from(e: DiagramError) -> Self {
        InvariantError::Diagram(e)
    }
}

impl From<PhiError> for InvariantError {
    fn from(e: PhiError) -> Self {
        InvariantError::Arith(e)
    }
}

/// The invariant of an n-punctured ball tangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PuncturedInvariant {
    pub holes: usize,
    pub mat: ProjMatrix,
}

/// Scales a matrix of bracket values by the root of unity determined by
/// the first nonzero entry in row-major order, and checks every other
/// entry lands in the integers.
fn normalize_matrix(
    rows: usize,
    cols: usize,
    vals: &[PhiScalar],
) -> Result<ProjMatrix, InvariantError> {
    let shift = match vals.iter().find(|v| !v.is_zero()) {
        None => return Ok(ProjMatrix::zero(rows, cols)),
        Some(p) => p.exp() as i64,
    };
    let mut entries = Vec::with_capacity(vals.len());
    for v in vals {
        if v.is_zero() {
            entries.push(0);
        } else {
            let scaled = v.mul_root(-shift)?;
            if scaled.exp() != 0 {
                return Err(InvariantError::PhaseIncoherence);
            }
            entries.push(scaled.mag());
        }
    }
    ProjMatrix::new(rows, cols, entries).map_err(InvariantError::Arith)
}

/// Krebes' ball tangle invariant `f`.
pub fn inv_f(b: &Diagram, opts: &BracketOpts) -> Result<ProjMatrix, InvariantError> {
    b.require_boundaries(1)?;
    let num = bracket_with(&numerator_closure(b)?, opts)?;
    let den = bracket_with(&denominator_closure(b)?, opts)?;
    normalize_matrix(2, 1, &[num, den.mul_root(2)?])
}

/// The n-punctured tangle invariant `F^n`; at `n = 0` it is `inv_f`.
pub fn inv_fn(t: &Diagram, opts: &BracketOpts) -> Result<PuncturedInvariant, InvariantError> {
    if t.boundaries() == 0 {
        return Err(InvariantError::Diagram(DiagramError::BoundaryCount {
            expected: 1,
            got: 0,
        }));
    }
    let n = t.holes() as usize;
    let cols = 1usize << n;
    let mut top = Vec::with_capacity(cols);
    let mut bottom = Vec::with_capacity(cols);
    for rank in 1..=cols {
        let idx = MultiIndex::from_rank(n, rank).expect("rank in range");
        let fills: Vec<Diagram> =
            idx.bits().iter().map(|&b| fundamental_tangle(b)).collect();
        let fill_refs: Vec<&Diagram> = fills.iter().collect();
        let filled = fill_holes(t, &fill_refs)?;
        let num = bracket_with(&numerator_closure(&filled)?, opts)?;
        let den = bracket_with(&denominator_closure(&filled)?, opts)?;
        // weight (-i)^{t_k} = (-1)^{t_k} A^{2 t_k}
        let t_k = idx.weight() as i64;
        let weight = PhiScalar::new(if t_k % 2 == 0 { 1 } else { -1 }, 2 * t_k)?;
        top.push(weight.mul(&num)?);
        bottom.push(weight.mul(&den.mul_root(2)?)?);
    }
    top.extend(bottom);
    Ok(PuncturedInvariant { holes: n, mat: normalize_matrix(2, cols, &top)? })
}

/// Checks the composition law: filling the holes of `t` multiplies its
/// matrix against the dictionary-order tensor of the fills' columns.
pub fn compose_law_check(
    t: &Diagram,
    fills: &[&Diagram],
    opts: &BracketOpts,
) -> Result<bool, InvariantError> {
    let filled = fill_holes(t, fills)?;
    let lhs = inv_f(&filled, opts)?;
    let f_t = inv_fn(t, opts)?;
    let mut columns = Vec::with_capacity(fills.len());
    for b in fills {
        columns.push(inv_f(b, opts)?);
    }
    let col_refs: Vec<&ProjMatrix> = columns.iter().collect();
    let tensor = crate::phi::xi_proj(&col_refs)?;
    let rhs = f_t.mat.matmul(&tensor)?;
    Ok(lhs == rhs)
}

/// The product of the entrywise gcds of the tangle invariants divides
/// the bracket magnitude of any link embedding the tangles disjointly.
pub fn krebes_check(invariants: &[&ProjMatrix], link_bracket: &PhiScalar) -> bool {
    let mut product: i64 = 1;
    for inv in invariants {
        let g = gcd_list(inv.entries());
        product = match product.checked_mul(g) {
            Some(p) => p,
            None => return false,
        };
    }
    divides(product, link_bracket.magnitude())
}

fn entries2(m: &ProjMatrix) -> Result<(i64, i64, i64, i64), InvariantError> {
    if m.rows() != 2 || m.cols() != 2 {
        return Err(InvariantError::Shape);
    }
    Ok((m.entry(0, 0), m.entry(1, 0), m.entry(0, 1), m.entry(1, 1)))
}

fn column(m: &ProjMatrix) -> Result<(i64, i64), InvariantError> {
    if m.rows() != 2 || m.cols() != 1 {
        return Err(InvariantError::Shape);
    }
    Ok((m.entry(0, 0), m.entry(1, 0)))
}

macro_rules! checked {
    ($e:expr) => {
        $e.ok_or(InvariantError::Arith(PhiError::Overflow))?
    };
}

fn mul(a: i64, b: i64) -> Option<i64> {
    a.checked_mul(b)
}

fn add(a: i64, b: i64) -> Option<i64> {
    a.checked_add(b)
}

/// Matrix action of taking the mirror image of a spherical tangle.
pub fn mat_star(m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(a, -c, -b, d))
}

/// Matrix action of exchanging the inner and outer holes.
pub fn mat_minus(m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(d, c, b, a))
}

/// Matrix action of rotating the inner hole 90° counterclockwise.
pub fn mat_r1(m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(-c, a, -d, b))
}

/// Matrix action of rotating the outer boundary 90° counterclockwise.
pub fn mat_r2(m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(-b, -d, a, c))
}

/// Matrix action of rotating the whole spherical tangle.
pub fn mat_rot(m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(d, -b, -c, a))
}

/// Invariant of the outer horizontal connect sum of a ball tangle and a
/// spherical tangle (both operand orders give the same matrix).
pub fn mat_sum_h(v: &ProjMatrix, m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(v)?;
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(
        checked!(mul(p, b).and_then(|x| mul(q, a).and_then(|y| add(x, y)))),
        checked!(mul(p, d).and_then(|x| mul(q, c).and_then(|y| add(x, y)))),
        checked!(mul(q, b)),
        checked!(mul(q, d)),
    ))
}

/// Invariant of the outer vertical connect sum.
pub fn mat_sum_v(v: &ProjMatrix, m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(v)?;
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(
        checked!(mul(p, a)),
        checked!(mul(p, c)),
        checked!(mul(q, a).and_then(|x| mul(p, b).and_then(|y| add(x, y)))),
        checked!(mul(q, c).and_then(|x| mul(p, d).and_then(|y| add(x, y)))),
    ))
}

/// Invariant of the inner horizontal connect sum.
pub fn mat_inner_h(v: &ProjMatrix, m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(v)?;
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(
        checked!(mul(q, a)),
        checked!(mul(p, a).and_then(|x| mul(q, c).and_then(|y| add(x, y)))),
        checked!(mul(q, b)),
        checked!(mul(p, b).and_then(|x| mul(q, d).and_then(|y| add(x, y)))),
    ))
}

/// Invariant of the inner vertical connect sum.
pub fn mat_inner_v(v: &ProjMatrix, m: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(v)?;
    let (a, b, c, d) = entries2(m)?;
    Ok(ProjMatrix::square2(
        checked!(mul(q, c).and_then(|x| mul(p, a).and_then(|y| add(x, y)))),
        checked!(mul(p, c)),
        checked!(mul(q, d).and_then(|x| mul(p, b).and_then(|y| add(x, y)))),
        checked!(mul(p, d)),
    ))
}

/// Column invariant of the horizontal sum of two ball tangles:
/// `[p; q] +h [r; s] = [ps + qr; qs]`.
pub fn bt_sum_h(x: &ProjMatrix, y: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(x)?;
    let (r, s) = column(y)?;
    Ok(ProjMatrix::column2(
        checked!(mul(p, s).and_then(|u| mul(q, r).and_then(|w| add(u, w)))),
        checked!(mul(q, s)),
    ))
}

/// Column invariant of the vertical sum: `[p; q] +v [r; s] = [pr; qr + ps]`.
pub fn bt_sum_v(x: &ProjMatrix, y: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(x)?;
    let (r, s) = column(y)?;
    Ok(ProjMatrix::column2(
        checked!(mul(p, r)),
        checked!(mul(q, r).and_then(|u| mul(p, s).and_then(|w| add(u, w)))),
    ))
}

/// Column action of the mirror image: `[p; q] -> [p; -q]`.
pub fn bt_star(x: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(x)?;
    Ok(ProjMatrix::column2(p, checked!(q.checked_neg())))
}

/// Column action of the 90° counterclockwise rotation: `[p; q] -> [q; -p]`.
pub fn bt_rot(x: &ProjMatrix) -> Result<ProjMatrix, InvariantError> {
    let (p, q) = column(x)?;
    Ok(ProjMatrix::column2(q, checked!(p.checked_neg())))
}

/// Closed form of the four-box annular tangle's invariant and its
/// determinant `(p1 p4 - p2 p3)^2`.
pub fn j_formula(p1: i64, p2: i64, p3: i64, p4: i64) -> Result<(ProjMatrix, i64), InvariantError> {
    let m3 = |a: i64, b: i64, c: i64| mul(a, b).and_then(|x| mul(x, c));
    let sum4 = |a: Option<i64>, b: Option<i64>, c: Option<i64>, d: Option<i64>| {
        a.and_then(|a| b.and_then(|b| add(a, b)))
            .and_then(|x| c.and_then(|c| add(x, c)))
            .and_then(|x| d.and_then(|d| add(x, d)))
    };
    let top_left = checked!(sum4(m3(p1, p2, p3), m3(p1, p2, p4), m3(p1, p3, p4), m3(p2, p3, p4)));
    let top_right =
        checked!(sum4(mul(p1, p3), mul(p1, p4), mul(p2, p4), mul(p2, p3)).and_then(|x| x.checked_neg()));
    let bot_left = checked!(sum4(mul(p1, p2), mul(p1, p4), mul(p2, p3), mul(p3, p4)));
    let bot_right = checked!(sum4(Some(p1), Some(p2), Some(p3), Some(p4))
        .and_then(|x| x.checked_neg()));
    let mat = ProjMatrix::square2(top_left, top_right, bot_left, bot_right);
    let det = checked!(mul(p1, p4)
        .and_then(|x| mul(p2, p3).and_then(|y| x.checked_sub(y)))
        .and_then(|x| mul(x, x)));
    Ok((mat, det))
}

/// Residue of the determinant mod 4; realizable spherical invariants
/// satisfy residue 0 or 1.
pub fn det_residue(m: &ProjMatrix) -> Result<u8, InvariantError> {
    m.det_residue().map_err(InvariantError::Arith)
}

/// Whether two invariant matrices are congruent mod 4 entrywise, up to
/// one global sign.
pub fn congruent_mod4(a: &ProjMatrix, b: &ProjMatrix) -> bool {
    if a.rows() != b.rows() || a.cols() != b.cols() {
        return false;
    }
    let ok = |sigma: i64| {
        a.entries()
            .iter()
            .zip(b.entries())
            .all(|(&x, &y)| (x - sigma * y).rem_euclid(4) == 0)
    };
    ok(1) || ok(-1)
}

/// Computes both spherical invariants and tests the mod-4 congruence.
pub fn delta_congruence_check(
    s: &Diagram,
    s_delta: &Diagram,
    opts: &BracketOpts,
) -> Result<bool, InvariantError> {
    let a = inv_fn(s, opts)?;
    let b = inv_fn(s_delta, opts)?;
    Ok(congruent_mod4(&a.mat, &b.mat))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{
        add_free_loops, connect_h, connect_v, htwist, identity_spherical, vtwist,
    };

    fn opts() -> BracketOpts {
        BracketOpts::default()
    }

    fn col(p: i64, q: i64) -> ProjMatrix {
        ProjMatrix::column2(p, q)
    }

    #[test]
    fn fundamental_tangle_invariants() {
        assert_eq!(inv_f(&fundamental_tangle(1), &opts()).unwrap(), col(1, 0));
        assert_eq!(inv_f(&fundamental_tangle(2), &opts()).unwrap(), col(0, 1));
    }

    #[test]
    fn double_vertical_is_zero() {
        let a = connect_h(&fundamental_tangle(1), &fundamental_tangle(1)).unwrap();
        assert_eq!(inv_f(&a, &opts()).unwrap(), col(0, 0));
    }

    #[test]
    fn twist_invariants() {
        for p in -3..=3 {
            assert_eq!(inv_f(&htwist(p).unwrap(), &opts()).unwrap(), col(p, 1), "h({})", p);
            assert_eq!(inv_f(&vtwist(p).unwrap(), &opts()).unwrap(), col(1, p), "v({})", p);
        }
    }

    #[test]
    fn mirror_and_rotation_match_column_actions() {
        for p in [-2i64, 1, 3] {
            let b = htwist(p).unwrap();
            let f = inv_f(&b, &opts()).unwrap();
            assert_eq!(inv_f(&b.mirror(), &opts()).unwrap(), bt_star(&f).unwrap());
            assert_eq!(inv_f(&b.rotate_ccw(), &opts()).unwrap(), bt_rot(&f).unwrap());
        }
    }

    #[test]
    fn horizontal_sum_of_single_twists() {
        let d = htwist(1).unwrap();
        let sum = connect_h(&d, &d).unwrap();
        assert_eq!(inv_f(&sum, &opts()).unwrap(), col(2, 1));
        // identity of +h is the horizontal tangle
        let idh = connect_h(&d, &fundamental_tangle(2)).unwrap();
        assert_eq!(inv_f(&idh, &opts()).unwrap(), col(1, 1));
    }

    #[test]
    fn vertical_sum_formula() {
        let b = connect_v(&vtwist(1).unwrap(), &vtwist(1).unwrap()).unwrap();
        assert_eq!(inv_f(&b, &opts()).unwrap(), col(1, 2));
        assert_eq!(
            bt_sum_v(&col(1, 1), &col(1, 1)).unwrap(),
            col(1, 2)
        );
    }

    #[test]
    fn three_zero_realization() {
        // [3; 0] = [1; 3] +h [1; 0]
        let h = connect_h(&vtwist(3).unwrap(), &fundamental_tangle(1)).unwrap();
        assert_eq!(inv_f(&h, &opts()).unwrap(), col(3, 0));
        assert_eq!(bt_sum_h(&col(1, 3), &col(1, 0)).unwrap(), col(3, 0));
    }

    #[test]
    fn zero_holes_reduces_to_the_column_invariant() {
        for seed in 0..20u64 {
            let b = crate::testkit::gen_ball(&crate::testkit::GenConfig {
                seed,
                max_crossings: 7,
                depth: 3,
                allow_closed_components: false,
            });
            let f = inv_fn(&b, &opts()).unwrap();
            assert_eq!(f.holes, 0);
            assert_eq!(f.mat, inv_f(&b, &opts()).unwrap(), "seed {}", seed);
        }
    }

    #[test]
    fn identity_spherical_invariant() {
        let f = inv_fn(&identity_spherical(), &opts()).unwrap();
        assert_eq!(f.holes, 1);
        assert_eq!(f.mat, ProjMatrix::identity2());
    }

    #[test]
    fn split_circle_zeroes_everything() {
        let s = add_free_loops(&identity_spherical(), 1);
        let f = inv_fn(&s, &opts()).unwrap();
        assert!(f.mat.is_zero());
    }

    #[test]
    fn spherical_b_c_d_e_values() {
        // b = single twist summed below the identity annulus
        let b = connect_v(&htwist(1).unwrap(), &identity_spherical()).unwrap();
        let fb = inv_fn(&b, &opts()).unwrap().mat;
        assert_eq!(fb, ProjMatrix::square2(1, 0, 1, 1));
        // c = b inside b
        let c = crate::diagram::compose(&b, &b).unwrap();
        assert_eq!(inv_fn(&c, &opts()).unwrap().mat, ProjMatrix::square2(1, 0, 2, 1));
        // d kills one closure entirely
        let d = connect_v(&fundamental_tangle(2), &identity_spherical()).unwrap();
        assert_eq!(inv_fn(&d, &opts()).unwrap().mat, ProjMatrix::square2(0, 0, 1, 0));
        // e = vertical strands summed beside b
        let e = connect_h(&fundamental_tangle(1), &b).unwrap();
        assert_eq!(inv_fn(&e, &opts()).unwrap().mat, ProjMatrix::square2(1, 1, 0, 0));
        // b ∘ e and its inner rotation
        let be = crate::diagram::compose(&b, &e).unwrap();
        let fbe = inv_fn(&be, &opts()).unwrap().mat;
        assert_eq!(fbe, ProjMatrix::square2(1, 1, 1, 1));
        let rot = be.rotate_inner().unwrap();
        assert_eq!(
            inv_fn(&rot, &opts()).unwrap().mat,
            ProjMatrix::square2(1, -1, 1, -1)
        );
        assert_eq!(mat_r1(&fbe).unwrap(), ProjMatrix::square2(1, -1, 1, -1));
    }

    #[test]
    fn equal_invariants_from_different_diagrams() {
        // the two orders of summing the [1;1] twist with the [0;3] tangle
        // share the invariant [3;3] without being the same diagram
        let d = htwist(1).unwrap();
        let l = connect_h(&vtwist(3).unwrap(), &fundamental_tangle(1)).unwrap().rotate_ccw();
        let m = connect_h(&d, &l).unwrap();
        let i = connect_h(&l, &d).unwrap();
        assert_eq!(inv_f(&m, &opts()).unwrap(), col(3, 3));
        assert_eq!(inv_f(&i, &opts()).unwrap(), col(3, 3));
        assert_ne!(m, i);
    }

    #[test]
    fn disjoint_tangles_divide_composite_brackets() {
        use crate::bracket::bracket_monocyclic_with;
        use crate::diagram::{fill_holes, numerator_closure};
        use crate::synth::synth_ball;
        // [2;0] and [3;0] disjointly embedded force divisibility by 6
        let b1 = synth_ball(&col(2, 0)).unwrap().diagram;
        let b2 = synth_ball(&col(3, 0)).unwrap().diagram;
        for seed in 0..25u64 {
            let t = crate::testkit::gen_punctured(
                &crate::testkit::GenConfig {
                    seed,
                    max_crossings: 5,
                    depth: 2,
                    allow_closed_components: false,
                },
                2,
            );
            let filled = fill_holes(&t, &[&b1, &b2]).unwrap();
            let link = numerator_closure(&filled).unwrap();
            let v = bracket_monocyclic_with(&link, 30).unwrap();
            assert_eq!(v.magnitude() % 6, 0, "seed {}", seed);
            assert!(krebes_check(&[&col(2, 0), &col(3, 0)], &v));
        }
    }

    #[test]
    fn compose_law_identity_case() {
        for b in [htwist(2).unwrap(), vtwist(-1).unwrap()] {
            assert!(compose_law_check(&identity_spherical(), &[&b], &opts()).unwrap());
        }
    }

    #[test]
    fn two_hole_template_matrix() {
        // two annuli side by side: its matrix turns hole fillings into
        // the horizontal sum of their columns
        let t = connect_h(&identity_spherical(), &identity_spherical()).unwrap();
        let f = inv_fn(&t, &opts()).unwrap();
        assert_eq!(f.holes, 2);
        assert_eq!(f.mat, ProjMatrix::new(2, 4, vec![0, 1, 1, 0, 0, 0, 0, 1]).unwrap());
        for (pq, rs) in [((1i64, 1i64), (2i64, 1i64)), ((3, 2), (0, 1))] {
            let b1 = crate::synth::synth_ball(&col(pq.0, pq.1)).unwrap().diagram;
            let b2 = crate::synth::synth_ball(&col(rs.0, rs.1)).unwrap().diagram;
            assert!(compose_law_check(&t, &[&b1, &b2], &opts()).unwrap());
            let filled = crate::diagram::fill_holes(&t, &[&b1, &b2]).unwrap();
            assert_eq!(
                inv_f(&filled, &opts()).unwrap(),
                bt_sum_h(&col(pq.0, pq.1), &col(rs.0, rs.1)).unwrap()
            );
        }
    }

    #[test]
    fn annular_twist_family_congruent_under_triangle_move() {
        use crate::moves::{delta_fold_insert, delta_move};
        let j = crate::diagram::build_j(1, 1, 1, 1).unwrap();
        let o = BracketOpts { cap: 30, ..Default::default() };
        let (folded, site) = delta_fold_insert(&j, 0).unwrap();
        let flipped = delta_move(&folded, site).unwrap();
        assert!(delta_congruence_check(&j, &flipped, &o).unwrap());
        assert!(delta_congruence_check(&j, &j, &o).unwrap());
    }

    #[test]
    fn krebes_divisibility_basics() {
        let two_zero = col(2, 0);
        assert!(krebes_check(&[&two_zero], &PhiScalar::new(2, 1).unwrap()));
        assert!(!krebes_check(&[&two_zero], &PhiScalar::new(3, 0).unwrap()));
        // gcd 1 divides anything
        assert!(krebes_check(&[&col(2, 1)], &PhiScalar::new(7, 2).unwrap()));
        // zero gcd forces a zero bracket
        assert!(krebes_check(&[&col(0, 0)], &PhiScalar::ZERO));
        assert!(!krebes_check(&[&col(0, 0)], &PhiScalar::ONE));
    }

    #[test]
    fn mat_op_identities() {
        let m = ProjMatrix::square2(3, -1, 2, 5);
        assert_eq!(mat_minus(&mat_minus(&m).unwrap()).unwrap(), m);
        assert_eq!(mat_star(&mat_star(&m).unwrap()).unwrap(), m);
        // R = r1 then r2
        assert_eq!(mat_r2(&mat_r1(&m).unwrap()).unwrap(), mat_rot(&m).unwrap());
        assert_eq!(
            mat_rot(&m).unwrap(),
            ProjMatrix::square2(5, -2, 1, 3)
        );
    }

    #[test]
    fn sum_determinant_scalings() {
        let v = col(3, 2);
        let m = ProjMatrix::square2(1, 4, -2, 3);
        let det = m.det2().unwrap();
        assert_eq!(mat_sum_h(&v, &m).unwrap().det2().unwrap(), 4 * det);
        assert_eq!(mat_inner_h(&v, &m).unwrap().det2().unwrap(), 4 * det);
        assert_eq!(mat_sum_v(&v, &m).unwrap().det2().unwrap(), 9 * det);
        assert_eq!(mat_inner_v(&v, &m).unwrap().det2().unwrap(), 9 * det);
    }

    #[test]
    fn j_formula_values() {
        let (m, det) = j_formula(1, 1, 1, 1).unwrap();
        assert_eq!(m, ProjMatrix::square2(4, -4, 4, -4));
        assert_eq!(det, 0);
        let (_, det) = j_formula(1, -1, 1, 1).unwrap();
        assert_eq!(det, 4);
        let (m, _) = j_formula(1, 0, 0, 0).unwrap();
        assert_eq!(m, ProjMatrix::square2(0, 0, 0, 1));
    }

    #[test]
    fn congruence_mod4() {
        let a = ProjMatrix::square2(1, 2, 3, 0);
        let b = ProjMatrix::square2(3, 2, 1, 0);
        // -a = [3, 2, 1, 0] mod 4 entrywise
        assert!(congruent_mod4(&a, &b));
        let c = ProjMatrix::square2(1, 2, 3, 1);
        assert!(!congruent_mod4(&a, &c));
        assert!(congruent_mod4(&a, &a));
    }

    #[test]
    fn three_point_determination() {
        // 2x2 projective matrices agreeing on [1;0], [0;1], [1;1] agree
        let pairs = [
            (ProjMatrix::square2(1, 2, 3, 4), ProjMatrix::square2(1, 2, 3, 4)),
            (ProjMatrix::square2(-1, -2, -3, -4), ProjMatrix::square2(1, 2, 3, 4)),
        ];
        for (a, b) in pairs {
            let probes = [col(1, 0), col(0, 1), col(1, 1)];
            let agree = probes
                .iter()
                .all(|p| a.matmul(p).unwrap() == b.matmul(p).unwrap());
            assert!(agree);
            assert_eq!(a, b);
        }
        // and a genuine counter-pair must disagree on some probe
        let a = ProjMatrix::square2(1, 0, 0, 1);
        let b = ProjMatrix::square2(1, 0, 0, -1);
        let probes = [col(1, 0), col(0, 1), col(1, 1)];
        assert!(probes.iter().any(|p| a.matmul(p).unwrap() != b.matmul(p).unwrap()));
    }
}
