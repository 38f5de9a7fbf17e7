//! Piecewise-linear crystal on `Z^{k(n+1-k)}` written out by hand.
//!
//! These are the tropical counterparts of [`crate::geomcrystal`]: products
//! become sums, quotients differences and sums maxima. Off-lattice coordinates
//! read as 0. Index 0 needs maxima of `ux(p)` over path regions, which come
//! from the max-plus path engine.
//!
//! [`ud_degree_probe`] ties both sides together: it evaluates a rational
//! quantity at `x = t^e`, `c = t^d` with `t = 2^128` and reads off the leading
//! exponent.

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::geomcrystal::{act_e, bounds_x, epsilon, gamma};
use crate::lattice::{Point, Shape, TropPoint, L1, Q};
use crate::paths::XTables;
use crate::semiring::{round_log2_pow, MaxPlus, Semifield};

pub fn to_maxplus(x: &TropPoint) -> Point<L1, MaxPlus> {
    x.map(|v| MaxPlus::fin(*v))
}

pub fn from_maxplus(x: &Point<L1, MaxPlus>) -> TropPoint {
    x.map(|v| v.value())
}

fn col_sum(x: &TropPoint, rows: std::ops::RangeInclusive<i64>, m: i64) -> i64 {
    rows.map(|l| x.get(l, m)).sum()
}

/// `D̄_l^{(i)}`, the negated tropical `D_l^{(i)}`.
pub fn dbar(x: &TropPoint, l: i64, i: usize) -> i64 {
    let (_, b) = bounds_x(x.shape(), i);
    let i = i as i64;
    -x.get(l, i) - 2 * col_sum(x, l + 1..=b, i)
        + col_sum(x, l + 1..=b + 1, i - 1)
        + col_sum(x, l..=b, i + 1)
}

pub fn trop_wt(x: &TropPoint, i: usize) -> i64 {
    let s = x.shape();
    if i == 0 {
        return -x.get(1, s.ni()) - x.get(s.ki(), 1);
    }
    let (a, b) = bounds_x(s, i);
    let i = i as i64;
    2 * col_sum(x, a..=b, i) - col_sum(x, a..=b + 1, i - 1) - col_sum(x, a - 1..=b, i + 1)
}

pub fn trop_eps(x: &TropPoint, i: usize) -> i64 {
    let s = x.shape();
    if i == 0 {
        let t = XTables::new(&to_maxplus(x));
        return x.get(1, s.ni()) + t.eps().value();
    }
    let (a, b) = bounds_x(s, i);
    (a..=b)
        .map(|l| dbar(x, l, i))
        .max()
        .expect("nonempty row range")
}

/// `ẽ_i^d(x)`; negative `d` lowers.
pub fn trop_e(x: &TropPoint, i: usize, d: i64) -> TropPoint {
    let s = x.shape();
    if i == 0 {
        let t = XTables::new(&to_maxplus(x));
        let dd = MaxPlus::fin(d);
        // max over paths above (l-1,m) and, shifted by d, below (l,m)
        let alpha = |l: i64, m: i64| t.u(l - 1, m).plus(&dd.times(&t.v(l, m)));
        let top = (1, s.ni());
        return Point::from_fn(s, |l, m| {
            if (l, m) == top {
                x.get(l, m) - d
            } else {
                x.get(l, m) + alpha(l, m).value() - alpha(l + 1, m).value()
            }
        });
    }
    let (a, b) = bounds_x(s, i);
    let dv: Vec<i64> = (a..=b).map(|l| dbar(x, l, i)).collect();
    let mut out = x.clone();
    let ii = i as i64;
    for l in a..=b {
        let idx = (l - a) as usize;
        let plus = dv[..idx]
            .iter()
            .copied()
            .chain(dv[idx..].iter().map(|v| v + d))
            .max();
        let minus = dv[..=idx]
            .iter()
            .copied()
            .chain(dv[idx + 1..].iter().map(|v| v + d))
            .max();
        out.set(l, ii, x.get(l, ii) + plus.unwrap() - minus.unwrap());
    }
    out
}

/// `s̃_i(x) = ẽ_i^{-wt_i(x)}(x)`.
pub fn trop_weyl(x: &TropPoint, i: usize) -> TropPoint {
    trop_e(x, i, -trop_wt(x, i))
}

/// Rational quantities the degree probe can evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Quantity {
    Gamma(usize),
    Epsilon(usize),
    /// Coordinate `(l,m)` of `e_i^c(x)`.
    ECoord {
        i: usize,
        l: i64,
        m: i64,
    },
}

/// Exponent bound accepted by the probe.
pub const PROBE_EXP_BOUND: i64 = 8;
/// Largest number of full paths accepted by the probe.
pub const PROBE_PATH_CAP: u128 = 70;
/// `t = 2^PROBE_BITS`.
pub const PROBE_BITS: u64 = 128;

fn probe_base() -> Q {
    Q::from_integer(BigInt::from(1) << PROBE_BITS)
}

fn validate_probe(shape: Shape, exps: &TropPoint, d: i64) -> Result<()> {
    if shape.path_count() > PROBE_PATH_CAP {
        return Err(Error::Validation(format!(
            "shape {shape} has {} paths; the degree probe allows at most {PROBE_PATH_CAP}",
            shape.path_count()
        )));
    }
    if let Some(v) = exps.values().iter().find(|v| v.abs() > PROBE_EXP_BOUND) {
        return Err(Error::Validation(format!("exponent {v} outside [-8, 8]")));
    }
    if d.abs() > PROBE_EXP_BOUND {
        return Err(Error::Validation(format!(
            "parameter exponent {d} outside [-8, 8]"
        )));
    }
    Ok(())
}

fn validate_quantity(shape: Shape, q: Quantity) -> Result<()> {
    let i = match q {
        Quantity::Gamma(i) | Quantity::Epsilon(i) => i,
        Quantity::ECoord { i, l, m } => {
            if !shape.in_l1(l, m) {
                return Err(Error::Validation(format!(
                    "({l},{m}) is not on the lattice"
                )));
            }
            i
        }
    };
    if i > shape.n() {
        return Err(Error::Validation(format!(
            "index {i} exceeds n = {}",
            shape.n()
        )));
    }
    Ok(())
}

/// Leading exponent of the rational quantity at `x = t^exps`, `c = t^d`.
pub fn ud_degree_probe(q: Quantity, exps: &TropPoint, d: i64) -> Result<i64> {
    let shape = exps.shape();
    validate_probe(shape, exps, d)?;
    validate_quantity(shape, q)?;
    let t = probe_base();
    let x = exps.map(|e| t.powi(*e));
    let value = match q {
        Quantity::Gamma(i) => gamma(&x, i),
        Quantity::Epsilon(i) => epsilon(&x, i),
        Quantity::ECoord { i, l, m } => act_e(&x, i, &t.powi(d)).get(l, m),
    };
    Ok(round_log2_pow(&value, PROBE_BITS))
}

/// The piecewise-linear closed form matching [`ud_degree_probe`].
pub fn tropical_value(q: Quantity, x: &TropPoint, d: i64) -> Result<i64> {
    validate_quantity(x.shape(), q)?;
    Ok(match q {
        Quantity::Gamma(i) => trop_wt(x, i),
        Quantity::Epsilon(i) => trop_eps(x, i),
        Quantity::ECoord { i, l, m } => trop_e(x, i, d).get(l, m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeMap;

    fn t21(a: i64, b: i64) -> TropPoint {
        TropPoint::from_fn(Shape::new(2, 1).unwrap(), |_, m| if m == 1 { a } else { b })
    }

    fn pair(x: &TropPoint) -> (i64, i64) {
        (x.get(1, 1), x.get(1, 2))
    }

    #[test]
    fn weights_smallest_shape() {
        let x = t21(0, 5);
        assert_eq!(trop_wt(&x, 1), -5);
        assert_eq!(trop_wt(&x, 0), -5);
        let z = t21(0, 0);
        for i in 0..=2 {
            assert_eq!(trop_wt(&z, i), 0);
            assert_eq!(trop_eps(&z, i), 0);
        }
    }

    #[test]
    fn epsilons() {
        let x = t21(0, 5);
        assert_eq!(trop_eps(&x, 1), 5);
        assert_eq!(trop_eps(&x, 0), 0);
        let s = Shape::new(3, 2).unwrap();
        let m: BTreeMap<_, _> = [((2, 1), 3), ((2, 2), 10), ((1, 2), -4), ((1, 3), 6)].into();
        let x = TropPoint::from_entries(s, &m).unwrap();
        assert_eq!(trop_eps(&x, 1), 10 - 3);
    }

    #[test]
    fn raising_smallest_shape() {
        let x = t21(0, 5);
        assert_eq!(pair(&trop_e(&x, 1, 1)), (1, 5));
        assert_eq!(pair(&trop_e(&x, 0, 1)), (-1, 4));
        for i in 0..=2 {
            assert_eq!(trop_e(&x, i, 0), x);
        }
    }

    #[test]
    fn weyl_smallest_shape() {
        let x = t21(0, 5);
        assert_eq!(pair(&trop_weyl(&x, 1)), (5, 5));
        let z = t21(0, 0);
        for i in 0..=2 {
            assert_eq!(trop_weyl(&z, i), z);
        }
    }

    #[test]
    fn degree_probe_smallest_shape() {
        let x = t21(0, 5);
        assert_eq!(ud_degree_probe(Quantity::Epsilon(1), &x, 0).unwrap(), 5);
        let y = t21(3, -2);
        assert_eq!(ud_degree_probe(Quantity::Gamma(0), &y, 0).unwrap(), -1);
        let z = t21(0, 0);
        assert_eq!(ud_degree_probe(Quantity::Gamma(1), &z, 0).unwrap(), 0);
        assert_eq!(
            ud_degree_probe(Quantity::ECoord { i: 0, l: 1, m: 1 }, &x, 1).unwrap(),
            -1
        );
    }

    #[test]
    fn degree_probe_validation() {
        let x = t21(0, 9);
        assert!(ud_degree_probe(Quantity::Epsilon(1), &x, 0).is_err());
        let big = TropPoint::from_fn(Shape::new(10, 5).unwrap(), |_, _| 0);
        assert!(ud_degree_probe(Quantity::Epsilon(1), &big, 0).is_err());
        assert!(ud_degree_probe(Quantity::ECoord { i: 1, l: 2, m: 1 }, &t21(0, 0), 0).is_err());
    }
}
