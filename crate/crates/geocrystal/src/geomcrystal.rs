//! Geometric crystal structures on the two tori and the birational Weyl action.
//!
//! On the x-torus (`L1`), index `i ∈ 1..=n` touches column `i` in rows
//! `a..=b` with `a = max(k-i+1, 1)`, `b = min(k, n-i+1)`. With
//!
//! ```text
//! D_l = x_l^i (x_{l+1..b}^i)^2 / ( x_{l+1..b+1}^{i-1} · x_{l..b}^{i+1} )
//! ```
//!
//! the structure is `γ_i = D_a x_a^i / (x_a^{i-1} x_{a-1}^{i+1})`,
//! `ε_i = Σ 1/D_l`, and `e_i^c` rescales `x_l^i` by a ratio of partial sums of
//! `1/D_p` in which `c` weights the upper part. Index 0 acts through the region
//! sums `U`, `V` of [`crate::paths`].
//!
//! The y-torus (`L2`) carries the mirrored structure for `i ∈ 0..n` with bounds
//! `max(k-i, 1)..=min(k, n-i)`. All functions are generic over the semifield,
//! so evaluating them in [`crate::semiring::MaxPlus`] gives the
//! ultra-discretization.

use crate::birational::{sigma, xi};
use crate::error::{Error, Result};
use crate::lattice::{Point, Shape, Side, L1, L2};
use crate::paths::XTables;
use crate::semiring::Semifield;

/// Cartan matrix of type `A_n^(1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cartan {
    n: usize,
}

impl Cartan {
    pub fn new(n: usize) -> Cartan {
        Cartan { n }
    }

    pub fn a(&self, i: usize, j: usize) -> i64 {
        let m = self.n + 1;
        if i == j {
            2
        } else {
            let d = (i + m - j) % m;
            if d == 1 || d == self.n {
                -1
            } else {
                0
            }
        }
    }

    /// Index set `0..=n`.
    pub fn indices(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.n
    }
}

/// Row bounds `(a, b)` touched by index `i ≥ 1` on `L1`.
pub fn bounds_x(shape: Shape, i: usize) -> (i64, i64) {
    let (n, k, i) = (shape.ni(), shape.ki(), i as i64);
    ((k - i + 1).max(1), k.min(n - i + 1))
}

/// Row bounds touched by index `i < n` on `L2`.
pub fn bounds_y(shape: Shape, i: usize) -> (i64, i64) {
    let (n, k, i) = (shape.ni(), shape.ki(), i as i64);
    ((k - i).max(1), k.min(n - i))
}

fn check_index(shape: Shape, i: usize, max: usize) -> Result<()> {
    if i > max {
        return Err(Error::Validation(format!(
            "index {i} out of range 0..={max} for shape {shape}"
        )));
    }
    Ok(())
}

fn dfactor<S: Side, T: Semifield>(p: &Point<S, T>, l: i64, i: i64, b: i64) -> T {
    let mut num = p.get(l, i);
    for j in l + 1..=b {
        let v = p.get(j, i);
        num = num.times(&v).times(&v);
    }
    let mut den = T::one();
    for j in l + 1..=b + 1 {
        den = den.times(&p.get(j, i - 1));
    }
    for j in l..=b {
        den = den.times(&p.get(j, i + 1));
    }
    num.over(&den)
}

fn gamma_generic<S: Side, T: Semifield>(p: &Point<S, T>, i: i64, (a, b): (i64, i64)) -> T {
    dfactor(p, a, i, b)
        .times(&p.get(a, i))
        .over(&p.get(a, i - 1).times(&p.get(a - 1, i + 1)))
}

fn epsilon_generic<S: Side, T: Semifield>(p: &Point<S, T>, i: i64, (a, b): (i64, i64)) -> T {
    let inv: Vec<T> = (a..=b).map(|l| dfactor(p, l, i, b).inv()).collect();
    T::sum(&inv)
}

/// Rescales column `i`, rows `a..=b`, by
/// `(Σ_{p<l} w_p + c Σ_{p≥l} w_p) / (Σ_{p≤l} w_p + c Σ_{p>l} w_p)` with
/// `w_p = 1/D_p`.
fn act_generic<S: Side, T: Semifield>(
    p: &Point<S, T>,
    i: i64,
    (a, b): (i64, i64),
    c: &T,
) -> Point<S, T> {
    let w: Vec<T> = (a..=b).map(|l| dfactor(p, l, i, b).inv()).collect();
    let cw: Vec<T> = w.iter().map(|v| c.times(v)).collect();
    let mut out = p.clone();
    for l in a..=b {
        let idx = (l - a) as usize;
        let num = T::sum(w[..idx].iter().chain(&cw[idx..]));
        let den = T::sum(w[..=idx].iter().chain(&cw[idx + 1..]));
        out.set(l, i, p.get(l, i).times(&num).over(&den));
    }
    out
}

/// `D_l^{(i)}` on the x-torus.
pub fn dval<T: Semifield>(x: &Point<L1, T>, l: i64, i: usize) -> Result<T> {
    let s = x.shape();
    if i == 0 || i > s.n() {
        return Err(Error::Validation(format!(
            "D is defined for 1 <= i <= n, got {i}"
        )));
    }
    let (a, b) = bounds_x(s, i);
    if l < a || l > b {
        return Err(Error::Validation(format!(
            "row {l} outside [{a},{b}] for i = {i}"
        )));
    }
    Ok(dfactor(x, l, i as i64, b))
}

pub fn gamma<T: Semifield>(x: &Point<L1, T>, i: usize) -> T {
    let s = x.shape();
    if i == 0 {
        return x.get(1, s.ni()).times(&x.get(s.ki(), 1)).inv();
    }
    gamma_generic(x, i as i64, bounds_x(s, i))
}

pub fn epsilon<T: Semifield>(x: &Point<L1, T>, i: usize) -> T {
    let s = x.shape();
    if i == 0 {
        return x.get(1, s.ni()).times(&XTables::new(x).eps());
    }
    epsilon_generic(x, i as i64, bounds_x(s, i))
}

/// `e_i^c(x)`; index 0 uses the closed form through region sums.
pub fn act_e<T: Semifield>(x: &Point<L1, T>, i: usize, c: &T) -> Point<L1, T> {
    let s = x.shape();
    if i == 0 {
        return act_e0(x, c);
    }
    act_generic(x, i as i64, bounds_x(s, i), c)
}

pub fn try_act_e<T: Semifield>(x: &Point<L1, T>, i: usize, c: &T) -> Result<Point<L1, T>> {
    check_index(x.shape(), i, x.shape().n())?;
    Ok(act_e(x, i, c))
}

fn act_e0<T: Semifield>(x: &Point<L1, T>, c: &T) -> Point<L1, T> {
    let s = x.shape();
    let t = XTables::new(x);
    let alpha = |l: i64, m: i64| t.u(l - 1, m).plus(&c.times(&t.v(l, m)));
    let top = (1, s.ni());
    Point::from_fn(s, |l, m| {
        if (l, m) == top {
            x.get(l, m).over(c)
        } else {
            x.get(l, m).times(&alpha(l, m)).over(&alpha(l + 1, m))
        }
    })
}

pub fn gamma_bar<T: Semifield>(y: &Point<L2, T>, i: usize) -> T {
    gamma_generic(y, i as i64, bounds_y(y.shape(), i))
}

pub fn epsilon_bar<T: Semifield>(y: &Point<L2, T>, i: usize) -> T {
    epsilon_generic(y, i as i64, bounds_y(y.shape(), i))
}

/// `ē_i^c(y)` for `0 ≤ i < n`.
pub fn act_ebar<T: Semifield>(y: &Point<L2, T>, i: usize, c: &T) -> Point<L2, T> {
    act_generic(y, i as i64, bounds_y(y.shape(), i), c)
}

/// `σ̄`: coincides with `Σ` in coordinates.
pub fn sigma_bar<T: Semifield>(x: &Point<L1, T>) -> Point<L2, T> {
    sigma(x)
}

pub fn sigma_bar_inv<T: Semifield>(y: &Point<L2, T>) -> Point<L1, T> {
    xi(y)
}

/// `e_0^c` obtained by conjugating `ē_0^c` with `σ̄`.
pub fn act_e0_via_sigma<T: Semifield>(x: &Point<L1, T>, c: &T) -> Point<L1, T> {
    xi(&act_ebar(&sigma(x), 0, c))
}

pub fn gamma0_via_sigma<T: Semifield>(x: &Point<L1, T>) -> T {
    gamma_bar(&sigma(x), 0)
}

pub fn epsilon0_via_sigma<T: Semifield>(x: &Point<L1, T>) -> T {
    epsilon_bar(&sigma(x), 0)
}

/// `s_i(x) = e_i^{1/γ_i(x)}(x)`, by definition.
pub fn weyl_s_def<T: Semifield>(x: &Point<L1, T>, i: usize) -> Point<L1, T> {
    act_e(x, i, &gamma(x, i).inv())
}

/// `s_i(x)` from the closed forms.
///
/// For `i ≥ 1` the upper weights `1/D_p` are kept and the lower ones are
/// replaced by `F_p = γ_i / D_p`, written as the monomial
/// `x_p^i (x_{a..p-1}^i)^2 / (x_{a..p}^{i-1} x_{a-1..p-1}^{i+1})`.
/// For `i = 0` the region-sum form is used with `c = x_1^n x_k^1`, and the
/// corner `(1,n)` becomes `1/x_k^1`.
pub fn weyl_s<T: Semifield>(x: &Point<L1, T>, i: usize) -> Point<L1, T> {
    let s = x.shape();
    if i == 0 {
        let t = XTables::new(x);
        let c = x.get(1, s.ni()).times(&x.get(s.ki(), 1));
        let alpha = |l: i64, m: i64| t.u(l - 1, m).plus(&c.times(&t.v(l, m)));
        let top = (1, s.ni());
        return Point::from_fn(s, |l, m| {
            if (l, m) == top {
                x.get(s.ki(), 1).inv()
            } else {
                x.get(l, m).times(&alpha(l, m)).over(&alpha(l + 1, m))
            }
        });
    }
    let (a, b) = bounds_x(s, i);
    let ii = i as i64;
    let f = |p: i64| {
        let mut num = x.get(p, ii);
        for j in a..p {
            let v = x.get(j, ii);
            num = num.times(&v).times(&v);
        }
        let mut den = T::one();
        for j in a..=p {
            den = den.times(&x.get(j, ii - 1));
        }
        for j in a - 1..p {
            den = den.times(&x.get(j, ii + 1));
        }
        num.over(&den)
    };
    let lower: Vec<T> = (a..=b).map(f).collect();
    let upper: Vec<T> = (a..=b).map(|l| dfactor(x, l, ii, b).inv()).collect();
    let mut out = x.clone();
    for l in a..=b {
        let idx = (l - a) as usize;
        let num = T::sum(lower[..idx].iter().chain(&upper[idx..]));
        let den = T::sum(lower[..=idx].iter().chain(&upper[idx + 1..]));
        out.set(l, ii, x.get(l, ii).times(&num).over(&den));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q, qi, sample_rational, trial_rng, Coord, XPoint};
    use std::collections::BTreeMap;

    fn x21() -> XPoint {
        XPoint::from_fn(Shape::new(2, 1).unwrap(), |_, m| qi(m + 1))
    }

    fn x32() -> XPoint {
        let s = Shape::new(3, 2).unwrap();
        let m: BTreeMap<Coord, _> = [
            ((2, 1), qi(1)),
            ((2, 2), qi(2)),
            ((1, 2), qi(3)),
            ((1, 3), qi(4)),
        ]
        .into();
        XPoint::from_entries(s, &m).unwrap()
    }

    #[test]
    fn cartan_entries() {
        let c = Cartan::new(2);
        for i in 0..3 {
            for j in 0..3 {
                assert_eq!(c.a(i, j), if i == j { 2 } else { -1 });
            }
        }
        let c = Cartan::new(4);
        assert_eq!(c.a(0, 4), -1);
        assert_eq!(c.a(4, 0), -1);
        assert_eq!(c.a(1, 3), 0);
        assert_eq!(c.a(2, 3), -1);
    }

    #[test]
    fn d_values() {
        assert_eq!(dval(&x21(), 1, 1).unwrap(), q(2, 3));
        assert_eq!(dval(&x32(), 2, 1).unwrap(), q(1, 2));
        assert!(dval(&x32(), 1, 1).is_err());
        assert!(dval(&x32(), 2, 0).is_err());
    }

    #[test]
    fn consecutive_d_ratio() {
        for (n, k) in [(4, 2), (5, 3), (5, 2), (6, 3)] {
            let s = Shape::new(n, k).unwrap();
            let x: XPoint = sample_rational(s, &mut trial_rng(5, n as u64), 9);
            for i in 1..=n {
                let (a, b) = bounds_x(s, i);
                let ii = i as i64;
                for l in a..b {
                    let lhs = dval(&x, l + 1, i).unwrap();
                    let rhs = dval(&x, l, i).unwrap() * x.get(l + 1, ii - 1) * x.get(l, ii + 1)
                        / (x.get(l, ii) * x.get(l + 1, ii));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }

    #[test]
    fn smallest_shape_structure() {
        let x = x21();
        assert_eq!(gamma(&x, 1), q(4, 3));
        assert_eq!(gamma(&x, 0), q(1, 6));
        assert_eq!(epsilon(&x, 1), q(3, 2));
        assert_eq!(epsilon(&x, 0), qi(2));
    }

    #[test]
    fn smallest_shape_actions() {
        let x = x21();
        let e1 = act_e(&x, 1, &qi(5));
        assert_eq!((e1.get(1, 1), e1.get(1, 2)), (qi(10), qi(3)));
        let e0 = act_e(&x, 0, &qi(2));
        assert_eq!((e0.get(1, 1), e0.get(1, 2)), (qi(1), q(3, 2)));
        assert_eq!(act_e0_via_sigma(&x, &qi(2)), e0);
        for i in 0..=2 {
            assert_eq!(act_e(&x, i, &qi(1)), x);
        }
    }

    #[test]
    fn y_side_epsilon_zero() {
        let s = Shape::new(2, 1).unwrap();
        let y = sample_rational::<L2>(s, &mut trial_rng(1, 1), 9);
        assert_eq!(epsilon_bar(&y, 0), y.get(1, 1) / y.get(1, 0));
        assert_eq!(act_ebar(&y, 0, &qi(1)), y);
    }

    #[test]
    fn smallest_shape_weyl() {
        let x = x21();
        let s1 = weyl_s(&x, 1);
        assert_eq!((s1.get(1, 1), s1.get(1, 2)), (q(3, 2), qi(3)));
        let s0 = weyl_s(&x, 0);
        assert_eq!((s0.get(1, 1), s0.get(1, 2)), (q(1, 3), q(1, 2)));
        for i in 0..=2 {
            assert_eq!(weyl_s(&x, i), weyl_s_def(&x, i));
        }
    }

    #[test]
    fn index_validation() {
        assert!(try_act_e(&x21(), 3, &qi(2)).is_err());
        assert!(try_act_e(&x21(), 2, &qi(2)).is_ok());
    }
}
