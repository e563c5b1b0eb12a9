//! Algebraic tangle expressions and their elaboration to diagrams.
//!
//! Leaves are the fundamental tangles, twist rows, the identity annulus
//! and the four-box annular tangle; nodes apply connect sums, symmetry
//! operations, composition, hole filling and closures. Elaboration
//! dispatches on boundary counts: `+h`/`+v` accept any operands with an
//! outer boundary, the inner sums need one ball and one spherical
//! operand, and `o` composes two spherical tangles.

use alloc::boxed::Box;
use alloc::vec::Vec;
use core::fmt;

use crate::diagram::{self, Diagram, DiagramError};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TangleExpr {
    /// `t1`, the vertical fundamental tangle
    T1,
    /// `t2`, the horizontal fundamental tangle
    T2,
    /// `I`, the identity spherical tangle
    Identity,
    /// `h(p)`, a row of horizontal half twists
    HTwist(i64),
    /// `v(q)`, a column of vertical half twists
    VTwist(i64),
    /// `J(p1, p2, p3, p4)`, the four-box annular tangle
    J(i64, i64, i64, i64),
    Mirror(Box<TangleExpr>),
    /// boundary swap `-` of a spherical tangle
    Swap(Box<TangleExpr>),
    /// inner-hole rotation `r1`
    R1(Box<TangleExpr>),
    /// outer rotation `r2`
    R2(Box<TangleExpr>),
    /// 90° counterclockwise rotation `R`
    Rotate(Box<TangleExpr>),
    /// flip through the vertical axis `hf`
    HFlip(Box<TangleExpr>),
    /// flip through the horizontal axis `vf`
    VFlip(Box<TangleExpr>),
    ConnectH(Box<TangleExpr>, Box<TangleExpr>),
    ConnectV(Box<TangleExpr>, Box<TangleExpr>),
    InnerH(Box<TangleExpr>, Box<TangleExpr>),
    InnerV(Box<TangleExpr>, Box<TangleExpr>),
    /// `a o b` puts `b` inside `a`
    Compose(Box<TangleExpr>, Box<TangleExpr>),
    /// `fill(T; B1, ..., Bn)`
    Fill(Box<TangleExpr>, Vec<TangleExpr>),
    /// numerator closure of a ball tangle
    Num(Box<TangleExpr>),
    /// denominator closure of a ball tangle
    Den(Box<TangleExpr>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ElabError {
    Diagram(DiagramError),
    /// An operation received operands of the wrong shape, e.g. composing
    /// two ball tangles.
    Shape { op: &'static str, detail: &'static str },
}

impl fmt::Display for ElabError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElabError::Diagram(e) => write!(f, "{}", e),
            ElabError::Shape { op, detail } => write!(f, "{}: {}", op, detail),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for ElabError {}

impl From<DiagramError> for ElabError {
    fn from(e: DiagramError) -> Self {
        ElabError::Diagram(e)
    }
}

fn shape(op: &'static str, detail: &'static str) -> ElabError {
    ElabError::Shape { op, detail }
}

impl TangleExpr {
    pub fn connect_h(a: TangleExpr, b: TangleExpr) -> TangleExpr {
        TangleExpr::ConnectH(Box::new(a), Box::new(b))
    }

    pub fn connect_v(a: TangleExpr, b: TangleExpr) -> TangleExpr {
        TangleExpr::ConnectV(Box::new(a), Box::new(b))
    }

    pub fn mirror(self) -> TangleExpr {
        TangleExpr::Mirror(Box::new(self))
    }

    pub fn rotate(self) -> TangleExpr {
        TangleExpr::Rotate(Box::new(self))
    }

    /// Elaborates the expression to a concrete diagram.
    pub fn elaborate(&self) -> Result<Diagram, ElabError> {
        match self {
            TangleExpr::T1 => Ok(diagram::fundamental_tangle(1)),
            TangleExpr::T2 => Ok(diagram::fundamental_tangle(2)),
            TangleExpr::Identity => Ok(diagram::identity_spherical()),
            TangleExpr::HTwist(p) => Ok(diagram::htwist(*p)?),
            TangleExpr::VTwist(q) => Ok(diagram::vtwist(*q)?),
            TangleExpr::J(p1, p2, p3, p4) => Ok(diagram::build_j(*p1, *p2, *p3, *p4)?),
            TangleExpr::Mirror(e) => Ok(e.elaborate()?.mirror()),
            TangleExpr::Swap(e) => {
                let d = e.elaborate()?;
                if !d.is_spherical() {
                    return Err(shape("-", "boundary swap needs a spherical tangle"));
                }
                Ok(d.swap_boundaries()?)
            }
            TangleExpr::R1(e) => {
                let d = e.elaborate()?;
                if !d.is_spherical() {
                    return Err(shape("r1", "inner rotation needs a spherical tangle"));
                }
                Ok(d.rotate_inner()?)
            }
            TangleExpr::R2(e) => {
                let d = e.elaborate()?;
                if !d.is_spherical() {
                    return Err(shape("r2", "outer rotation needs a spherical tangle"));
                }
                Ok(d.rotate_outer()?)
            }
            TangleExpr::Rotate(e) => Ok(e.elaborate()?.rotate_ccw()),
            TangleExpr::HFlip(e) => {
                let d = e.elaborate()?;
                if !d.is_ball() {
                    return Err(shape("hf", "flips are defined for ball tangles"));
                }
                Ok(d.h_flip()?)
            }
            TangleExpr::VFlip(e) => {
                let d = e.elaborate()?;
                if !d.is_ball() {
                    return Err(shape("vf", "flips are defined for ball tangles"));
                }
                Ok(d.v_flip()?)
            }
            TangleExpr::ConnectH(a, b) => {
                let (da, db) = (a.elaborate()?, b.elaborate()?);
                if da.boundaries() == 0 || db.boundaries() == 0 {
                    return Err(shape("+h", "operands must have an outer boundary"));
                }
                Ok(diagram::connect_h(&da, &db)?)
            }
            TangleExpr::ConnectV(a, b) => {
                let (da, db) = (a.elaborate()?, b.elaborate()?);
                if da.boundaries() == 0 || db.boundaries() == 0 {
                    return Err(shape("+v", "operands must have an outer boundary"));
                }
                Ok(diagram::connect_v(&da, &db)?)
            }
            TangleExpr::InnerH(a, b) => {
                let (da, db) = (a.elaborate()?, b.elaborate()?);
                match (da.is_ball(), db.is_spherical(), da.is_spherical(), db.is_ball()) {
                    (true, true, _, _) => Ok(diagram::inner_h_ball(&da, &db)?),
                    (_, _, true, true) => Ok(diagram::inner_h_sph(&da, &db)?),
                    _ => Err(shape(".+h", "needs one ball tangle and one spherical tangle")),
                }
            }
            TangleExpr::InnerV(a, b) => {
                let (da, db) = (a.elaborate()?, b.elaborate()?);
                match (da.is_ball(), db.is_spherical(), da.is_spherical(), db.is_ball()) {
                    (true, true, _, _) => Ok(diagram::inner_v_ball(&da, &db)?),
                    (_, _, true, true) => Ok(diagram::inner_v_sph(&da, &db)?),
                    _ => Err(shape(".+v", "needs one ball tangle and one spherical tangle")),
                }
            }
            TangleExpr::Compose(a, b) => {
                let (da, db) = (a.elaborate()?, b.elaborate()?);
                if !da.is_spherical() || !db.is_spherical() {
                    return Err(shape("o", "composition needs two spherical tangles"));
                }
                Ok(diagram::compose(&da, &db)?)
            }
            TangleExpr::Fill(t, fills) => {
                let dt = t.elaborate()?;
                if dt.boundaries() == 0 {
                    return Err(shape("fill", "target must have an outer boundary"));
                }
                let elaborated: Vec<Diagram> =
                    fills.iter().map(|f| f.elaborate()).collect::<Result<_, _>>()?;
                for f in &elaborated {
                    if !f.is_ball() {
                        return Err(shape("fill", "fills must be ball tangles"));
                    }
                }
                let refs: Vec<&Diagram> = elaborated.iter().collect();
                Ok(diagram::fill_holes(&dt, &refs)?)
            }
            TangleExpr::Num(e) => {
                let d = e.elaborate()?;
                if !d.is_ball() {
                    return Err(shape("num", "closure needs a ball tangle"));
                }
                Ok(diagram::numerator_closure(&d)?)
            }
            TangleExpr::Den(e) => {
                let d = e.elaborate()?;
                if !d.is_ball() {
                    return Err(shape("den", "closure needs a ball tangle"));
                }
                Ok(diagram::denominator_closure(&d)?)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::{connect_h, fundamental_tangle, htwist};

    #[test]
    fn atoms_elaborate() {
        assert_eq!(TangleExpr::T1.elaborate().unwrap(), fundamental_tangle(1));
        assert_eq!(TangleExpr::HTwist(3).elaborate().unwrap(), htwist(3).unwrap());
    }

    #[test]
    fn sums_elaborate() {
        let e = TangleExpr::connect_h(TangleExpr::HTwist(1), TangleExpr::HTwist(1));
        let d = e.elaborate().unwrap();
        assert_eq!(d, connect_h(&htwist(1).unwrap(), &htwist(1).unwrap()).unwrap());
    }

    #[test]
    fn shape_errors() {
        let two_balls =
            TangleExpr::Compose(Box::new(TangleExpr::T1), Box::new(TangleExpr::T2));
        assert!(matches!(two_balls.elaborate(), Err(ElabError::Shape { op: "o", .. })));
        let close_spherical = TangleExpr::Num(Box::new(TangleExpr::Identity));
        assert!(close_spherical.elaborate().is_err());
        let fill_wrong = TangleExpr::Fill(
            Box::new(TangleExpr::Identity),
            alloc::vec![TangleExpr::T1, TangleExpr::T2],
        );
        assert!(fill_wrong.elaborate().is_err());
    }

    #[test]
    fn closure_of_twist_is_link() {
        let e = TangleExpr::Num(Box::new(TangleExpr::HTwist(3)));
        let d = e.elaborate().unwrap();
        assert!(d.is_link());
        assert_eq!(d.crossings(), 3);
    }
}
