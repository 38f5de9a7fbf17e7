//! The bijection `Ω: Z^{k(n+1-k)} → B^{k,∞}`, its inverse, and the
//! correspondence between tuples and full paths.
//!
//! `Ω` reads row `j` of `b` off row `k-j+1` of the tropical point as
//! consecutive differences: `b_{ji} = x_{k-j+1}^i - x_{k-j+1}^{i-1}`.

use crate::bkinf::{BElement, CTuple};
use crate::lattice::{Shape, TropPoint};
use crate::paths::Path;

pub fn omega(x: &TropPoint) -> BElement {
    let k = x.shape().ki();
    BElement::from_fn(x.shape(), |j, i| {
        let l = k - j + 1;
        x.get(l, i) - x.get(l, i - 1)
    })
}

/// Prefix sums along each row.
pub fn omega_inv(b: &BElement) -> TropPoint {
    let k = b.shape().ki();
    TropPoint::from_fn(b.shape(), |l, m| {
        let j = k - l + 1;
        (j..=m).map(|s| b.get(j, s)).sum()
    })
}

/// The full path whose strip on row `k-j+1` runs over columns
/// `c_{j-1} ..= c_j - 1`.
pub fn pi_correspondence(shape: Shape, c: &CTuple) -> Path {
    let k = shape.ki();
    let mut points = Vec::new();
    for j in 1..=k {
        let l = k - j + 1;
        for m in c.0[(j - 1) as usize]..c.0[j as usize] {
            points.push((l, m));
        }
    }
    Path { points }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bkinf::c_set;
    use crate::paths::full_paths;
    use std::collections::{BTreeMap, BTreeSet};

    #[test]
    fn smallest_shape() {
        let s = Shape::new(2, 1).unwrap();
        let x = TropPoint::from_fn(s, |_, m| if m == 1 { 4 } else { -3 });
        let b = omega(&x);
        assert_eq!(b.rows()[0], vec![4, -7, 3]);
        assert_eq!(omega_inv(&b), x);
        assert_eq!(omega(&TropPoint::unit(s)), BElement::zero(s));
    }

    #[test]
    fn shape_3_2() {
        let s = Shape::new(3, 2).unwrap();
        let m: BTreeMap<_, _> = [((2, 1), 2), ((2, 2), 7), ((1, 2), -1), ((1, 3), 5)].into();
        let x = TropPoint::from_entries(s, &m).unwrap();
        let b = omega(&x);
        assert_eq!(b.rows()[0], vec![2, 5, -7]);
        assert_eq!(b.rows()[1], vec![-1, 6, -5]);
    }

    #[test]
    fn tuples_to_paths() {
        let s = Shape::new(3, 2).unwrap();
        let p = pi_correspondence(s, &CTuple(vec![1, 2, 4]));
        assert_eq!(p.points, vec![(2, 1), (1, 2), (1, 3)]);
        for (n, k) in [(2, 1), (3, 2), (5, 3), (6, 3)] {
            let s = Shape::new(n, k).unwrap();
            let image: BTreeSet<Path> = c_set(s).iter().map(|c| pi_correspondence(s, c)).collect();
            let all: BTreeSet<Path> = full_paths(s).unwrap().into_iter().collect();
            assert_eq!(image, all);
        }
    }
}
