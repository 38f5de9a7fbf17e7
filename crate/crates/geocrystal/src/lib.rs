//! Exact-arithmetic model of the affine geometric crystal of type `A_n^(1)`
//! realized inside the fundamental representation `W(ϖ_k)`, its
//! ultra-discretization on `Z^{k(n+1-k)}`, and the combinatorial crystal
//! `B^{k,∞}`.
//!
//! Every rational computation is exact (`BigRational`). The geometric formulas
//! are written once against the [`Semifield`] trait, so the same code evaluated
//! in the max-plus semifield is its own tropicalization; [`tropical`] holds the
//! hand-derived piecewise-linear forms used to cross-check that.

pub mod birational;
pub mod bkinf;
pub mod fundrep;
pub mod geomcrystal;
pub mod iso;
pub mod lattice;
pub mod paths;
pub mod semiring;
pub mod tropical;
pub mod verify;

mod error;

pub use bkinf::{BElement, CTuple};
pub use error::{Error, Result};
pub use fundrep::FundVector;
pub use geomcrystal::Cartan;
pub use lattice::{Coord, Point, Shape, TropPoint, XPoint, YPoint, L1, L2, Q};
pub use paths::Path;
pub use semiring::{MaxPlus, Semifield};
pub use verify::RunReport;
