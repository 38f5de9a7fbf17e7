//! The mutually inverse positive birational maps between the x-torus (`L1`)
//! and the y-torus (`L2`):
//!
//! * `Σ`: `y_l^m = x_{l+1}^m · X_l^m(x) / X_{l+1}^m(x)`
//! * `Ξ`: `x_l^m = y_l^m · Y*_{l-1}^m(y) / Y*_l^m(y)`
//!
//! Boundary values of the partial sums come from [`crate::paths`].

use crate::lattice::{Point, L1, L2};
use crate::paths::{XTables, YTables};
use crate::semiring::Semifield;

pub fn sigma<T: Semifield>(x: &Point<L1, T>) -> Point<L2, T> {
    sigma_with(x, &XTables::new(x))
}

/// `Σ` reusing precomputed tables of `x`.
pub fn sigma_with<T: Semifield>(x: &Point<L1, T>, t: &XTables<T>) -> Point<L2, T> {
    Point::from_fn(x.shape(), |l, m| {
        let num = t.x_ext(l, m).expect("closed region");
        let den = t.x_ext(l + 1, m).expect("closed region");
        x.get(l + 1, m).times(&num).over(&den)
    })
}

pub fn xi<T: Semifield>(y: &Point<L2, T>) -> Point<L1, T> {
    let t = YTables::new(y);
    Point::from_fn(y.shape(), |l, m| {
        let num = t.ystar_ext(l - 1, m).expect("closed region");
        let den = t.ystar_ext(l, m).expect("closed region");
        y.get(l, m).times(&num).over(&den)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q, qi, sample_rational, trial_rng, Coord, Shape, XPoint, YPoint};
    use crate::paths::brute_x;
    use std::collections::BTreeMap;

    #[test]
    fn smallest_shape() {
        let x = XPoint::from_fn(Shape::new(2, 1).unwrap(), |_, m| qi(m + 1));
        let y = sigma(&x);
        assert_eq!(y.get(1, 0), q(1, 3));
        assert_eq!(y.get(1, 1), q(2, 3));
        assert_eq!(xi(&y), x);
    }

    #[test]
    fn shape_3_2() {
        let s = Shape::new(3, 2).unwrap();
        let m: BTreeMap<Coord, _> = [
            ((2, 1), qi(1)),
            ((2, 2), qi(2)),
            ((1, 2), qi(3)),
            ((1, 3), qi(4)),
        ]
        .into();
        let x = XPoint::from_entries(s, &m).unwrap();
        let y = sigma(&x);
        assert_eq!(y.get(2, 0), q(1, 4));
        assert_eq!(y.get(2, 1), q(5, 4));
        assert_eq!(y.get(1, 1), q(1, 5));
        assert_eq!(y.get(1, 2), q(3, 2));
        assert_eq!(xi(&y), x);
    }

    #[test]
    fn all_ones_counts_paths() {
        for (n, k) in [(3, 2), (4, 2), (5, 3)] {
            let s = Shape::new(n, k).unwrap();
            let x = XPoint::unit(s);
            let y = sigma(&x);
            for (l, m) in s.l2() {
                // off-lattice partial sums are 1 on this point
                let num = if s.in_l1(l, m) {
                    brute_x(&x, l, m).unwrap().0
                } else {
                    qi(1)
                };
                let den = if s.in_l1(l + 1, m) {
                    brute_x(&x, l + 1, m).unwrap().0
                } else {
                    qi(1)
                };
                assert_eq!(y.get(l, m), num / den, "({l},{m})");
            }
        }
    }

    #[test]
    fn sigma_corner_values() {
        let s = Shape::new(4, 2).unwrap();
        let x = sample_rational::<L1>(s, &mut trial_rng(3, 0), 9);
        let y = sigma(&x);
        let t = XTables::new(&x);
        assert_eq!(y.get(2, 0), x.get(1, 4).recip());
        for m in s.row2(2) {
            if m > 0 {
                assert_eq!(y.get(2, m), t.x(2, m));
            }
        }
    }

    #[test]
    fn xi_inverts_sigma_from_y_side() {
        let s = Shape::new(5, 2).unwrap();
        let y: YPoint = sample_rational(s, &mut trial_rng(11, 1), 12);
        assert_eq!(sigma(&xi(&y)), y);
    }
}
