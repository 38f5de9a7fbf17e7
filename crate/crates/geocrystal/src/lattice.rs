//! Lattice shapes, coordinate points, seeded sampling and the JSON point format.
//!
//! Coordinates `(l, m)` follow the usual picture of the two weighted lattices:
//! `l` counts horizontal lines from the bottom. The x-lattice `L1` holds
//! `1 ≤ l ≤ k < l+m ≤ n+1` and the y-lattice `L2` holds `1 ≤ l ≤ k ≤ l+m ≤ n`.
//! Both have `k·(n+1-k)` points.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::ops::RangeInclusive;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

/// Exact rationals.
pub type Q = BigRational;

/// A lattice coordinate `(l, m)`.
pub type Coord = (i64, i64);

/// Identifier of the PRNG behind every sampled point and report.
pub const PRNG_ID: &str = "ChaCha8Rng/seed_from_u64";

/// The pair `(n, k)` with `n ≥ 2` and `1 ≤ k ≤ n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    n: usize,
    k: usize,
}

impl Shape {
    pub fn new(n: usize, k: usize) -> Result<Shape> {
        if n < 2 {
            return Err(Error::Shape(format!("n = {n} must be at least 2")));
        }
        if k < 1 || k > n {
            return Err(Error::Shape(format!(
                "k = {k} must satisfy 1 <= k <= n = {n}"
            )));
        }
        Ok(Shape { n, k })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// `k' = n + 1 - k`.
    pub fn kprime(&self) -> usize {
        self.n + 1 - self.k
    }

    /// Number of points in either lattice.
    pub fn size(&self) -> usize {
        self.k * self.kprime()
    }

    pub(crate) fn ni(&self) -> i64 {
        self.n as i64
    }

    pub(crate) fn ki(&self) -> i64 {
        self.k as i64
    }

    /// Columns of row `l` in `L1`.
    pub fn row1(&self, l: i64) -> RangeInclusive<i64> {
        (self.ki() - l + 1)..=(self.ni() + 1 - l)
    }

    /// Columns of row `l` in `L2`.
    pub fn row2(&self, l: i64) -> RangeInclusive<i64> {
        (self.ki() - l)..=(self.ni() - l)
    }

    pub fn in_l1(&self, l: i64, m: i64) -> bool {
        (1..=self.ki()).contains(&l) && self.row1(l).contains(&m)
    }

    pub fn in_l2(&self, l: i64, m: i64) -> bool {
        (1..=self.ki()).contains(&l) && self.row2(l).contains(&m)
    }

    pub fn l1(&self) -> Vec<Coord> {
        L1::coords(*self)
    }

    pub fn l2(&self) -> Vec<Coord> {
        L2::coords(*self)
    }

    /// Number of full paths on `L1`, `binomial(n-1, k-1)`.
    pub fn path_count(&self) -> u128 {
        binomial((self.n - 1) as u64, (self.k - 1) as u64)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.k)
    }
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Which of the two lattices a point lives on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SideId {
    One,
    Two,
}

/// Type-level marker for a lattice.
pub trait Side: Copy + fmt::Debug + PartialEq + Eq + 'static {
    const ID: SideId;

    /// First column of row `l`.
    fn row_start(shape: Shape, l: i64) -> i64;

    fn contains(shape: Shape, l: i64, m: i64) -> bool {
        let s = Self::row_start(shape, l);
        (1..=shape.ki()).contains(&l) && m >= s && m < s + shape.kprime() as i64
    }

    fn index(shape: Shape, l: i64, m: i64) -> Option<usize> {
        if !Self::contains(shape, l, m) {
            return None;
        }
        let s = Self::row_start(shape, l);
        Some((l - 1) as usize * shape.kprime() + (m - s) as usize)
    }

    fn coords(shape: Shape) -> Vec<Coord> {
        let mut out = Vec::with_capacity(shape.size());
        for l in 1..=shape.ki() {
            let s = Self::row_start(shape, l);
            for m in s..s + shape.kprime() as i64 {
                out.push((l, m));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct L1;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct L2;

impl Side for L1 {
    const ID: SideId = SideId::One;

    fn row_start(shape: Shape, l: i64) -> i64 {
        shape.ki() - l + 1
    }
}

impl Side for L2 {
    const ID: SideId = SideId::Two;

    fn row_start(shape: Shape, l: i64) -> i64 {
        shape.ki() - l
    }
}

/// The value an off-lattice coordinate reads as: `1` multiplicatively, `0` for
/// integer (tropical) coordinates.
pub trait Unit {
    fn unit() -> Self;
}

impl Unit for Q {
    fn unit() -> Self {
        Q::one()
    }
}

impl Unit for i64 {
    fn unit() -> Self {
        0
    }
}

/// An assignment of values to every point of one lattice.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Point<S, T> {
    shape: Shape,
    vals: Vec<T>,
    side: PhantomData<S>,
}

/// Positive rational point on `L1`.
pub type XPoint = Point<L1, Q>;
/// Positive rational point on `L2`.
pub type YPoint = Point<L2, Q>;
/// Integer point on `L1` (the ultra-discretized coordinates).
pub type TropPoint = Point<L1, i64>;

impl<S: Side, T: Clone> Point<S, T> {
    pub fn from_fn(shape: Shape, mut f: impl FnMut(i64, i64) -> T) -> Self {
        let vals = S::coords(shape).into_iter().map(|(l, m)| f(l, m)).collect();
        Point {
            shape,
            vals,
            side: PhantomData,
        }
    }

    /// Builds a point whose domain must be exactly the lattice.
    pub fn from_entries(shape: Shape, entries: &BTreeMap<Coord, T>) -> Result<Self> {
        for &(l, m) in entries.keys() {
            if !S::contains(shape, l, m) {
                return Err(Error::Validation(format!(
                    "coordinate ({l},{m}) is not on lattice {:?} of shape {shape}",
                    S::ID
                )));
            }
        }
        let mut vals = Vec::with_capacity(shape.size());
        for c in S::coords(shape) {
            match entries.get(&c) {
                Some(v) => vals.push(v.clone()),
                None => {
                    return Err(Error::Validation(format!(
                        "missing coordinate ({},{}) for shape {shape}",
                        c.0, c.1
                    )))
                }
            }
        }
        Ok(Point {
            shape,
            vals,
            side: PhantomData,
        })
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn entry(&self, l: i64, m: i64) -> Option<&T> {
        S::index(self.shape, l, m).map(|i| &self.vals[i])
    }

    /// Overwrites an on-lattice coordinate; panics off the lattice.
    pub fn set(&mut self, l: i64, m: i64, v: T) {
        let i =
            S::index(self.shape, l, m).unwrap_or_else(|| panic!("({l},{m}) is off the lattice"));
        self.vals[i] = v;
    }

    pub fn entries(&self) -> impl Iterator<Item = (Coord, &T)> + '_ {
        S::coords(self.shape).into_iter().zip(self.vals.iter())
    }

    pub fn values(&self) -> &[T] {
        &self.vals
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Point<S, U> {
        Point {
            shape: self.shape,
            vals: self.vals.iter().map(f).collect(),
            side: PhantomData,
        }
    }
}

impl<S: Side, T: Clone + Unit> Point<S, T> {
    /// On-lattice value, or the unit off the lattice.
    pub fn get(&self, l: i64, m: i64) -> T {
        self.entry(l, m).cloned().unwrap_or_else(T::unit)
    }

    /// The point with every coordinate equal to the unit.
    pub fn unit(shape: Shape) -> Self {
        Self::from_fn(shape, |_, _| T::unit())
    }
}

impl<S: Side> Point<S, Q> {
    pub fn check_positive(&self) -> Result<()> {
        for ((l, m), v) in self.entries() {
            if !v.is_positive() {
                return Err(Error::Validation(format!(
                    "coordinate ({l},{m}) = {v} is not positive"
                )));
            }
        }
        Ok(())
    }
}

impl<S: Side, T: fmt::Debug> fmt::Debug for Point<S, T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (c, v) in S::coords(self.shape).into_iter().zip(self.vals.iter()) {
            m.entry(&format_args!("{},{}", c.0, c.1), v);
        }
        m.finish()
    }
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Deterministic generator for trial `trial` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ trial.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Positive rational with numerator and denominator uniform in `[1, bound]`.
pub fn sample_q(rng: &mut impl Rng, bound: u64) -> Q {
    let b = bound.max(1) as i64;
    q(rng.random_range(1..=b), rng.random_range(1..=b))
}

/// Random scalar for operator parameters; with probability one half it is
/// forced away from 1 so that identities are not passed vacuously.
pub fn sample_scalar(rng: &mut impl Rng, bound: u64) -> Q {
    let b = bound.max(2) as i64;
    let away = rng.random_bool(0.5);
    loop {
        let (n, d) = (rng.random_range(1..=b), rng.random_range(1..=b));
        if !away || n != d {
            return q(n, d);
        }
    }
}

pub fn sample_rational<S: Side>(shape: Shape, rng: &mut impl Rng, bound: u64) -> Point<S, Q> {
    Point::from_fn(shape, |_, _| sample_q(rng, bound))
}

pub fn sample_trop(shape: Shape, rng: &mut impl Rng, bound: i64) -> TropPoint {
    Point::from_fn(shape, |_, _| rng.random_range(-bound..=bound))
}

pub fn sample_x(shape: Shape, seed: u64, bound: u64) -> XPoint {
    sample_rational(shape, &mut ChaCha8Rng::seed_from_u64(seed), bound)
}

pub fn sample_trop_seeded(shape: Shape, seed: u64, bound: i64) -> TropPoint {
    sample_trop(shape, &mut ChaCha8Rng::seed_from_u64(seed), bound)
}

/// `"p/q"` in lowest terms.
pub fn q_to_string(v: &Q) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

/// Parses `"p/q"`, `"p"`, or a JSON integer.
pub fn parse_q(s: &str) -> Result<Q> {
    let bad = || Error::Validation(format!("malformed rational {s:?}"));
    let s = s.trim();
    match s.split_once('/') {
        Some((a, b)) => {
            let n: BigInt = a.trim().parse().map_err(|_| bad())?;
            let d: BigInt = b.trim().parse().map_err(|_| bad())?;
            if d == BigInt::from(0) {
                return Err(Error::Validation(format!("zero denominator in {s:?}")));
            }
            Ok(Q::new(n, d))
        }
        None => Ok(Q::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

fn value_to_q(v: &Value) -> Result<Q> {
    match v {
        Value::String(s) => parse_q(s),
        Value::Number(n) => n
            .as_i64()
            .map(qi)
            .ok_or_else(|| Error::Validation(format!("non-integer number {n}"))),
        other => Err(Error::Validation(format!(
            "expected rational, found {other}"
        ))),
    }
}

fn value_to_int(v: &Value) -> Result<i64> {
    match v {
        Value::Number(n) => n
            .as_i64()
            .ok_or_else(|| Error::Validation(format!("non-integer number {n}"))),
        Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Validation(format!("malformed integer {s:?}"))),
        other => Err(Error::Validation(format!(
            "expected integer, found {other}"
        ))),
    }
}

pub(crate) fn parse_key(key: &str) -> Result<Coord> {
    let bad = || {
        Error::Validation(format!(
            "malformed coordinate key {key:?}, expected \"l,m\""
        ))
    };
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

/// Wire form of a point: `{"n":N,"k":K,"kind":"x"|"y"|"trop","entries":{"l,m":...}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointJson {
    pub n: usize,
    pub k: usize,
    pub kind: String,
    pub entries: BTreeMap<String, Value>,
}

/// A parsed point of any kind.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyPoint {
    X(XPoint),
    Y(YPoint),
    Trop(TropPoint),
}

impl AnyPoint {
    pub fn shape(&self) -> Shape {
        match self {
            AnyPoint::X(p) => p.shape(),
            AnyPoint::Y(p) => p.shape(),
            AnyPoint::Trop(p) => p.shape(),
        }
    }

    pub fn to_json(&self) -> PointJson {
        match self {
            AnyPoint::X(p) => rational_json(p, "x"),
            AnyPoint::Y(p) => rational_json(p, "y"),
            AnyPoint::Trop(p) => PointJson {
                n: p.shape().n(),
                k: p.shape().k(),
                kind: "trop".into(),
                entries: p
                    .entries()
                    .map(|((l, m), v)| (format!("{l},{m}"), Value::from(*v)))
                    .collect(),
            },
        }
    }

    pub fn from_json(j: &PointJson) -> Result<AnyPoint> {
        let shape = Shape::new(j.n, j.k)?;
        let mut keyed = Vec::with_capacity(j.entries.len());
        for (key, v) in &j.entries {
            keyed.push((parse_key(key)?, v));
        }
        match j.kind.as_str() {
            "x" | "y" => {
                let mut map = BTreeMap::new();
                for (c, v) in keyed {
                    map.insert(c, value_to_q(v)?);
                }
                if j.kind == "x" {
                    let p = XPoint::from_entries(shape, &map)?;
                    p.check_positive()?;
                    Ok(AnyPoint::X(p))
                } else {
                    let p = YPoint::from_entries(shape, &map)?;
                    p.check_positive()?;
                    Ok(AnyPoint::Y(p))
                }
            }
            "trop" => {
                let mut map = BTreeMap::new();
                for (c, v) in keyed {
                    map.insert(c, value_to_int(v)?);
                }
                Ok(AnyPoint::Trop(TropPoint::from_entries(shape, &map)?))
            }
            other => Err(Error::Validation(format!("unknown point kind {other:?}"))),
        }
    }
}

fn rational_json<S: Side>(p: &Point<S, Q>, kind: &str) -> PointJson {
    PointJson {
        n: p.shape().n(),
        k: p.shape().k(),
        kind: kind.into(),
        entries: p
            .entries()
            .map(|((l, m), v)| (format!("{l},{m}"), Value::from(q_to_string(v))))
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_shape_index_sets() {
        let s = Shape::new(2, 1).unwrap();
        assert_eq!(s.l1(), vec![(1, 1), (1, 2)]);
        assert_eq!(s.l2(), vec![(1, 0), (1, 1)]);
    }

    #[test]
    fn shape_3_2_index_sets() {
        let s = Shape::new(3, 2).unwrap();
        let mut l1 = s.l1();
        l1.sort();
        assert_eq!(l1, vec![(1, 2), (1, 3), (2, 1), (2, 2)]);
        let mut l2 = s.l2();
        l2.sort();
        assert_eq!(l2, vec![(1, 1), (1, 2), (2, 0), (2, 1)]);
    }

    #[test]
    fn rejects_bad_shapes() {
        assert!(Shape::new(2, 3).is_err());
        assert!(Shape::new(1, 1).is_err());
        assert!(Shape::new(9, 0).is_err());
    }

    #[test]
    fn index_sets_match_inequalities() {
        for n in 2..=8 {
            for k in 1..=n {
                let s = Shape::new(n, k).unwrap();
                let (ni, ki) = (n as i64, k as i64);
                let mut l1 = vec![];
                let mut l2 = vec![];
                for l in -2..=ni + 3 {
                    for m in -2..=ni + 3 {
                        if 1 <= l && l <= ki && ki < l + m && l + m <= ni + 1 {
                            l1.push((l, m));
                        }
                        if 1 <= l && l <= ki && ki <= l + m && l + m <= ni {
                            l2.push((l, m));
                        }
                        assert_eq!(s.in_l1(l, m), L1::contains(s, l, m));
                        assert_eq!(s.in_l2(l, m), L2::contains(s, l, m));
                    }
                }
                let mut a = s.l1();
                a.sort();
                let mut b = s.l2();
                b.sort();
                assert_eq!(a, l1);
                assert_eq!(b, l2);
                assert_eq!(a.len(), k * (n + 1 - k));
                assert_eq!(b.len(), k * (n + 1 - k));
            }
        }
    }

    #[test]
    fn off_lattice_reads() {
        let s = Shape::new(2, 1).unwrap();
        let x = XPoint::from_fn(s, |_, m| qi(m + 1));
        assert_eq!(x.get(1, 1), qi(2));
        assert_eq!(x.get(2, 0), qi(1));
        assert_eq!(x.get(0, 5), qi(1));
        let t = TropPoint::from_fn(s, |_, m| if m == 2 { 5 } else { 0 });
        assert_eq!(t.get(1, 2), 5);
        assert_eq!(t.get(2, 1), 0);
        assert_eq!(t.get(1, 0), 0);
    }

    #[test]
    fn sampling_is_deterministic_and_bounded() {
        let s = Shape::new(2, 1).unwrap();
        assert_eq!(sample_x(s, 7, 16), sample_x(s, 7, 16));
        let s = Shape::new(3, 2).unwrap();
        let x = sample_x(s, 1, 10);
        assert_eq!(x.values().len(), 4);
        for v in x.values() {
            assert!(v.is_positive());
            assert!(v.numer() <= &BigInt::from(10) && v.denom() <= &BigInt::from(10));
        }
    }

    #[test]
    fn json_round_trip() {
        let s = Shape::new(3, 2).unwrap();
        let x = AnyPoint::X(sample_x(s, 3, 9));
        let j = x.to_json();
        let text = serde_json::to_string(&j).unwrap();
        let back: PointJson = serde_json::from_str(&text).unwrap();
        assert_eq!(AnyPoint::from_json(&back).unwrap(), x);
        let t = AnyPoint::Trop(sample_trop_seeded(s, 3, 9));
        assert_eq!(AnyPoint::from_json(&t.to_json()).unwrap(), t);
    }

    #[test]
    fn json_rejects_bad_domain_and_sign() {
        let j: PointJson =
            serde_json::from_str(r#"{"n":2,"k":1,"kind":"x","entries":{"1,1":"2/1"}}"#).unwrap();
        assert!(AnyPoint::from_json(&j).is_err());
        let j: PointJson =
            serde_json::from_str(r#"{"n":2,"k":1,"kind":"x","entries":{"1,1":"-2/1","1,2":3}}"#)
                .unwrap();
        assert!(AnyPoint::from_json(&j).is_err());
        let j: PointJson =
            serde_json::from_str(r#"{"n":2,"k":1,"kind":"x","entries":{"1,1":"2","1,2":3}}"#)
                .unwrap();
        assert!(AnyPoint::from_json(&j).is_ok());
    }
}
