//! Shortest-path sums on the two weighted lattices, over any [`Semifield`].
//!
//! Steps are horizontal `(l,m) → (l,m+1)` or vertical `(l,m) → (l-1,m+1)`.
//! On `L1` a horizontal strip weighs `x_l^m / x_l^{m+1}` and vertical strips
//! weigh 1; on `L2` horizontal strips weigh 1 and a vertical strip weighs
//! `y_{l-1}^{m+1} / y_l^m`. Full paths run from `(k,1)` to `(1,n)` on `L1` and
//! from `(k,0)` to `(1,n-1)` on `L2`.
//!
//! [`XTables`] and [`YTables`] are the dynamic programs; the `brute_*`
//! functions enumerate paths and serve as the independent oracle.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::{Coord, Point, Shape, Side, SideId, L1, L2};
use crate::semiring::Semifield;

/// Largest path family the enumeration oracle will materialize.
pub const ENUMERATION_CAP: u128 = 100_000;

/// A monotone shortest lattice path.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Path {
    pub points: Vec<Coord>,
}

impl Path {
    /// Columns the path occupies in row `l`.
    pub fn row_columns(&self, l: i64) -> impl Iterator<Item = i64> + '_ {
        self.points.iter().filter(move |p| p.0 == l).map(|p| p.1)
    }

    pub fn contains(&self, c: Coord) -> bool {
        self.points.contains(&c)
    }

    /// Strictly above `(l,m)`: every point in row `l` has column `> m`
    /// (vacuous if the path misses row `l`).
    pub fn is_above(&self, l: i64, m: i64) -> bool {
        self.row_columns(l).all(|j| j > m)
    }

    pub fn is_below(&self, l: i64, m: i64) -> bool {
        self.row_columns(l).all(|j| j < m)
    }
}

fn on_side(shape: Shape, side: SideId, c: Coord) -> bool {
    match side {
        SideId::One => shape.in_l1(c.0, c.1),
        SideId::Two => shape.in_l2(c.0, c.1),
    }
}

/// Every monotone path from `src` to `dst` staying on the lattice.
pub fn enumerate_paths(shape: Shape, side: SideId, src: Coord, dst: Coord) -> Result<Vec<Path>> {
    if shape.path_count() > ENUMERATION_CAP {
        return Err(Error::Validation(format!(
            "shape {shape} has {} full paths, above the enumeration cap {ENUMERATION_CAP}",
            shape.path_count()
        )));
    }
    let mut out = Vec::new();
    if !on_side(shape, side, src) || !on_side(shape, side, dst) {
        return Ok(out);
    }
    let mut stack = vec![src];
    walk(shape, side, dst, &mut stack, &mut out);
    Ok(out)
}

fn walk(shape: Shape, side: SideId, dst: Coord, stack: &mut Vec<Coord>, out: &mut Vec<Path>) {
    let (l, m) = *stack.last().unwrap();
    if (l, m) == dst {
        out.push(Path {
            points: stack.clone(),
        });
        return;
    }
    if l < dst.0 || m >= dst.1 {
        return;
    }
    for next in [(l, m + 1), (l - 1, m + 1)] {
        if on_side(shape, side, next) {
            stack.push(next);
            walk(shape, side, dst, stack, out);
            stack.pop();
        }
    }
}

/// All full paths of `L1`.
pub fn full_paths(shape: Shape) -> Result<Vec<Path>> {
    enumerate_paths(shape, SideId::One, (shape.ki(), 1), (1, shape.ni()))
}

/// All full paths of `L2`.
pub fn full_paths_l2(shape: Shape) -> Result<Vec<Path>> {
    enumerate_paths(shape, SideId::Two, (shape.ki(), 0), (1, shape.ni() - 1))
}

fn strip_weight<S: Side, T: Semifield>(pt: &Point<S, T>, a: Coord, b: Coord) -> T {
    let horizontal = a.0 == b.0;
    match (S::ID, horizontal) {
        (SideId::One, true) => pt.get(a.0, a.1).over(&pt.get(b.0, b.1)),
        (SideId::Two, false) => pt.get(b.0, b.1).over(&pt.get(a.0, a.1)),
        _ => T::one(),
    }
}

/// Product of strip weights along `p`.
pub fn path_weight<S: Side, T: Semifield>(pt: &Point<S, T>, p: &Path) -> Result<T> {
    for &(l, m) in &p.points {
        if !S::contains(pt.shape(), l, m) {
            return Err(Error::Validation(format!(
                "path point ({l},{m}) is not on lattice {:?}",
                S::ID
            )));
        }
    }
    let mut w = T::one();
    for pair in p.points.windows(2) {
        w = w.times(&strip_weight(pt, pair[0], pair[1]));
    }
    Ok(w)
}

fn sum_weights<S: Side, T: Semifield>(pt: &Point<S, T>, paths: &[Path]) -> T {
    let mut acc = T::zero();
    for p in paths {
        acc = acc.plus(&path_weight(pt, p).expect("enumerated path is on the lattice"));
    }
    acc
}

/// Dynamic-programming tables for a point on `L1`.
///
/// `X_l^m` sums paths from `(l,m)` to `(1,n)`; `X*_l^m` sums paths from
/// `(k,1)` to `(l,m)`.
#[derive(Clone, Debug)]
pub struct XTables<T> {
    shape: Shape,
    x_top: T,
    down: HashMap<Coord, T>,
    up: HashMap<Coord, T>,
}

impl<T: Semifield> XTables<T> {
    pub fn new(x: &Point<L1, T>) -> Self {
        let s = x.shape();
        let (n, k) = (s.ni(), s.ki());
        let mut down: HashMap<Coord, T> = HashMap::new();
        for l in 1..=k {
            for m in s.row1(l).rev() {
                let v = if (l, m) == (1, n) {
                    T::one()
                } else {
                    let mut v = down.get(&(l - 1, m + 1)).cloned().unwrap_or_else(T::zero);
                    if s.in_l1(l, m + 1) {
                        let w = x.get(l, m).over(&x.get(l, m + 1));
                        v = v.plus(&w.times(&down[&(l, m + 1)]));
                    }
                    v
                };
                down.insert((l, m), v);
            }
        }
        let mut up: HashMap<Coord, T> = HashMap::new();
        for l in (1..=k).rev() {
            for m in s.row1(l) {
                let v = if (l, m) == (k, 1) {
                    T::one()
                } else {
                    let mut v = up.get(&(l + 1, m - 1)).cloned().unwrap_or_else(T::zero);
                    if s.in_l1(l, m - 1) {
                        let w = x.get(l, m - 1).over(&x.get(l, m));
                        v = v.plus(&w.times(&up[&(l, m - 1)]));
                    }
                    v
                };
                up.insert((l, m), v);
            }
        }
        XTables {
            shape: s,
            x_top: x.get(1, n),
            down,
            up,
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `X_l^m` on the lattice, bottom elsewhere.
    pub fn x(&self, l: i64, m: i64) -> T {
        self.down.get(&(l, m)).cloned().unwrap_or_else(T::zero)
    }

    /// `X*_l^m` on the lattice, bottom elsewhere.
    pub fn xstar(&self, l: i64, m: i64) -> T {
        self.up.get(&(l, m)).cloned().unwrap_or_else(T::zero)
    }

    /// `X_l^m` with the boundary conventions used by the birational maps:
    /// 1 below the lattice (`l > k`) and `1/x_1^n` on the diagonal `l+m = k`.
    pub fn x_ext(&self, l: i64, m: i64) -> Result<T> {
        let (n, k) = (self.shape.ni(), self.shape.ki());
        if self.shape.in_l1(l, m) {
            Ok(self.x(l, m))
        } else if l > k || (l + m == n + 1 && l >= 1) {
            Ok(T::one())
        } else if (1..=k).contains(&l) && l + m == k {
            Ok(self.x_top.inv())
        } else {
            Err(Error::Validation(format!(
                "X_{l}^{m} is outside the closed region"
            )))
        }
    }

    /// Total weight of all full paths.
    pub fn eps(&self) -> T {
        self.x(self.shape.ki(), 1)
    }

    /// Sum over full paths strictly above `(l,m)`.
    pub fn u(&self, l: i64, m: i64) -> T {
        let k = self.shape.ki();
        if !(1..=k).contains(&l) {
            return self.eps();
        }
        if l == k {
            return if m < 1 { self.eps() } else { T::zero() };
        }
        // enter row l at column j+1 > m from (l+1, j)
        let mut acc = T::zero();
        for j in self.shape.row1(l + 1) {
            if j + 1 > m {
                acc = acc.plus(&self.xstar(l + 1, j).times(&self.x(l, j + 1)));
            }
        }
        acc
    }

    /// Sum over full paths strictly below `(l,m)`.
    pub fn v(&self, l: i64, m: i64) -> T {
        let k = self.shape.ki();
        if !(1..=k).contains(&l) {
            return self.eps();
        }
        if l == 1 {
            return if self.shape.ni() < m {
                self.eps()
            } else {
                T::zero()
            };
        }
        // leave row l from column j < m towards (l-1, j+1)
        let mut acc = T::zero();
        for j in self.shape.row1(l) {
            if j < m {
                acc = acc.plus(&self.xstar(l, j).times(&self.x(l - 1, j + 1)));
            }
        }
        acc
    }

    /// Sum over full paths through `(l,m)`.
    pub fn r(&self, l: i64, m: i64) -> T {
        if self.shape.in_l1(l, m) {
            self.xstar(l, m).times(&self.x(l, m))
        } else {
            T::zero()
        }
    }
}

/// Dynamic-programming tables for a point on `L2`.
///
/// `Y_l^m` sums paths from `(l,m)` to `(1,n-1)`; `Y*_l^m` sums paths from
/// `(k,0)` to `(l,m)`.
#[derive(Clone, Debug)]
pub struct YTables<T> {
    shape: Shape,
    y_corner: T,
    down: HashMap<Coord, T>,
    up: HashMap<Coord, T>,
}

impl<T: Semifield> YTables<T> {
    pub fn new(y: &Point<L2, T>) -> Self {
        let s = y.shape();
        let (n, k) = (s.ni(), s.ki());
        let mut down: HashMap<Coord, T> = HashMap::new();
        for l in 1..=k {
            for m in s.row2(l).rev() {
                let v = if (l, m) == (1, n - 1) {
                    T::one()
                } else {
                    let mut v = down.get(&(l, m + 1)).cloned().unwrap_or_else(T::zero);
                    if s.in_l2(l - 1, m + 1) {
                        let w = y.get(l - 1, m + 1).over(&y.get(l, m));
                        v = v.plus(&w.times(&down[&(l - 1, m + 1)]));
                    }
                    v
                };
                down.insert((l, m), v);
            }
        }
        let mut up: HashMap<Coord, T> = HashMap::new();
        for l in (1..=k).rev() {
            for m in s.row2(l) {
                let v = if (l, m) == (k, 0) {
                    T::one()
                } else {
                    let mut v = up.get(&(l, m - 1)).cloned().unwrap_or_else(T::zero);
                    if s.in_l2(l + 1, m - 1) {
                        let w = y.get(l, m).over(&y.get(l + 1, m - 1));
                        v = v.plus(&w.times(&up[&(l + 1, m - 1)]));
                    }
                    v
                };
                up.insert((l, m), v);
            }
        }
        YTables {
            shape: s,
            y_corner: y.get(k, 0),
            down,
            up,
        }
    }

    pub fn y(&self, l: i64, m: i64) -> T {
        self.down.get(&(l, m)).cloned().unwrap_or_else(T::zero)
    }

    pub fn ystar(&self, l: i64, m: i64) -> T {
        self.up.get(&(l, m)).cloned().unwrap_or_else(T::zero)
    }

    /// `Y*_l^m` with the boundary conventions used by the inverse map:
    /// `1/y_k^0` on row 0 and 1 on the diagonal `l+m = n+1`.
    pub fn ystar_ext(&self, l: i64, m: i64) -> Result<T> {
        let (n, k) = (self.shape.ni(), self.shape.ki());
        if self.shape.in_l2(l, m) {
            Ok(self.ystar(l, m))
        } else if l == 0 {
            Ok(self.y_corner.inv())
        } else if (1..=k).contains(&l) && l + m == n + 1 {
            Ok(T::one())
        } else {
            Err(Error::Validation(format!(
                "Y*_{l}^{m} is outside the closed region"
            )))
        }
    }
}

/// Which partial path sum to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PartialKind {
    X,
    XStar,
    Y,
    YStar,
}

/// Enumeration oracle for `X_l^m` and `X*_l^m`.
pub fn brute_x<T: Semifield>(x: &Point<L1, T>, l: i64, m: i64) -> Result<(T, T)> {
    let s = x.shape();
    let to_end = enumerate_paths(s, SideId::One, (l, m), (1, s.ni()))?;
    let from_start = enumerate_paths(s, SideId::One, (s.ki(), 1), (l, m))?;
    Ok((sum_weights(x, &to_end), sum_weights(x, &from_start)))
}

/// Enumeration oracle for `Y_l^m` and `Y*_l^m`.
pub fn brute_y<T: Semifield>(y: &Point<L2, T>, l: i64, m: i64) -> Result<(T, T)> {
    let s = y.shape();
    let to_end = enumerate_paths(s, SideId::Two, (l, m), (1, s.ni() - 1))?;
    let from_start = enumerate_paths(s, SideId::Two, (s.ki(), 0), (l, m))?;
    Ok((sum_weights(y, &to_end), sum_weights(y, &from_start)))
}

/// Enumeration oracle for `(U, V, R)` at `(l,m)`.
pub fn brute_regions<T: Semifield>(x: &Point<L1, T>, l: i64, m: i64) -> Result<(T, T, T)> {
    let paths = full_paths(x.shape())?;
    let (mut u, mut v, mut r) = (T::zero(), T::zero(), T::zero());
    for p in &paths {
        let w = path_weight(x, p)?;
        if p.is_above(l, m) {
            u = u.plus(&w);
        }
        if p.is_below(l, m) {
            v = v.plus(&w);
        }
        if p.contains((l, m)) {
            r = r.plus(&w);
        }
    }
    Ok((u, v, r))
}

/// Enumeration oracle for the total weight.
pub fn brute_eps<T: Semifield>(x: &Point<L1, T>) -> Result<T> {
    Ok(sum_weights(x, &full_paths(x.shape())?))
}

/// Evaluates a partial sum from the tables, with the boundary conventions.
pub fn partial_sum_x<T: Semifield>(t: &XTables<T>, kind: PartialKind, l: i64, m: i64) -> Result<T> {
    match kind {
        PartialKind::X => t.x_ext(l, m),
        PartialKind::XStar if t.shape().in_l1(l, m) => Ok(t.xstar(l, m)),
        _ => Err(Error::Validation(format!(
            "{kind:?}_{l}^{m} is not an x-side partial sum"
        ))),
    }
}

pub fn partial_sum_y<T: Semifield>(t: &YTables<T>, kind: PartialKind, l: i64, m: i64) -> Result<T> {
    match kind {
        PartialKind::YStar => t.ystar_ext(l, m),
        PartialKind::Y if t.shape.in_l2(l, m) => Ok(t.y(l, m)),
        _ => Err(Error::Validation(format!(
            "{kind:?}_{l}^{m} is not a y-side partial sum"
        ))),
    }
}

/// Coordinates at which region sums are meaningful: the lattice plus one ring
/// of neighbours on every side.
pub fn region_probe_coords(shape: Shape) -> Vec<Coord> {
    let mut out = Vec::new();
    for l in 0..=shape.ki() + 1 {
        for m in -1..=shape.ni() + 2 {
            out.push((l, m));
        }
    }
    out
}
