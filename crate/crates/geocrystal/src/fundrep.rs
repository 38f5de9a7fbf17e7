//! The fundamental representation `W(ϖ_k)` on one-column tableaux.
//!
//! Basis vectors are strictly increasing `k`-tuples from `{1, …, n+1}`.
//! For `1 ≤ i ≤ n`, `f_i` replaces an entry `i` by `i+1` when `i+1` is absent
//! and `e_i` does the reverse; `f_0` replaces `n+1` by `1` and `e_0` replaces
//! `1` by `n+1`. The torus element `α_i^∨(c)` scales a basis vector by `c`
//! when `f_i` acts on it nontrivially, by `1/c` when `e_i` does, and by 1
//! otherwise.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{Point, Shape, L1, L2, Q};

/// A basis tuple `(i_1 < … < i_k)`.
pub type Tableau = Vec<usize>;

/// Generators acting on `W(ϖ_k)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Gen {
    E(usize),
    F(usize),
    Alpha(usize, Q),
}

/// A sparse vector in `W(ϖ_k)`; absent keys are zero coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct FundVector {
    shape: Shape,
    coeffs: BTreeMap<Tableau, Q>,
}

impl fmt::Debug for FundVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (t, c) in &self.coeffs {
            m.entry(t, &format_args!("{c}"));
        }
        m.finish()
    }
}

impl FundVector {
    pub fn zero(shape: Shape) -> Self {
        FundVector {
            shape,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis_vector(shape: Shape, t: Tableau) -> Result<Self> {
        validate_tableau(shape, &t)?;
        let mut v = Self::zero(shape);
        v.coeffs.insert(t, Q::from_integer(1.into()));
        Ok(v)
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn coeff(&self, t: &[usize]) -> Q {
        self.coeffs.get(t).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Tableau, &Q)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    fn add_term(&mut self, t: Tableau, c: Q) {
        let slot = self.coeffs.entry(t.clone()).or_insert_with(Q::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&t);
        }
    }

    pub fn add(&self, other: &FundVector) -> FundVector {
        let mut out = self.clone();
        for (t, c) in &other.coeffs {
            out.add_term(t.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Q) -> FundVector {
        if c.is_zero() {
            return Self::zero(self.shape);
        }
        FundVector {
            shape: self.shape,
            coeffs: self
                .coeffs
                .iter()
                .map(|(t, v)| (t.clone(), v * c))
                .collect(),
        }
    }
}

fn validate_tableau(shape: Shape, t: &[usize]) -> Result<()> {
    let ok = t.len() == shape.k()
        && t.windows(2).all(|w| w[0] < w[1])
        && t.first().is_some_and(|&a| a >= 1)
        && t.last().is_some_and(|&b| b <= shape.n() + 1);
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(format!(
            "{t:?} is not a basis tuple for shape {shape}"
        )))
    }
}

/// All basis tuples in lexicographic order.
pub fn basis(shape: Shape) -> Vec<Tableau> {
    let (n, k) = (shape.n(), shape.k());
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        out.push(cur.clone());
        // advance to the next combination
        let mut j = k;
        while j > 0 && cur[j - 1] == n + 1 - (k - j) {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        cur[j - 1] += 1;
        for r in j..k {
            cur[r] = cur[r - 1] + 1;
        }
    }
}

/// `u_1 = (1, …, k)`.
pub fn u1(shape: Shape) -> Tableau {
    (1..=shape.k()).collect()
}

/// `u_2 = (1, …, k-1, n+1)`.
pub fn u2(shape: Shape) -> Tableau {
    let mut t: Tableau = (1..shape.k()).collect();
    t.push(shape.n() + 1);
    t
}

fn replace(t: &[usize], from: usize, to: usize) -> Tableau {
    let mut out: Tableau = t.iter().map(|&a| if a == from { to } else { a }).collect();
    out.sort_unstable();
    out
}

/// Endpoints `(p, q)` of index `i`: `f_i` sends `p ↦ q`, `e_i` sends `q ↦ p`.
fn ends(n: usize, i: usize) -> (usize, usize) {
    if i == 0 {
        (n + 1, 1)
    } else {
        (i, i + 1)
    }
}

/// `f_i` on a basis tuple.
pub fn f_basis(n: usize, t: &[usize], i: usize) -> Option<Tableau> {
    let (p, q) = ends(n, i);
    (t.contains(&p) && !t.contains(&q)).then(|| replace(t, p, q))
}

/// `e_i` on a basis tuple.
pub fn e_basis(n: usize, t: &[usize], i: usize) -> Option<Tableau> {
    let (p, q) = ends(n, i);
    (t.contains(&q) && !t.contains(&p)).then(|| replace(t, q, p))
}

fn alpha_basis(n: usize, t: &[usize], i: usize, c: &Q) -> Q {
    let (p, q) = ends(n, i);
    match (t.contains(&p), t.contains(&q)) {
        (true, false) => c.clone(),
        (false, true) => c.recip(),
        _ => Q::from_integer(1.into()),
    }
}

/// Applies one generator, extended linearly.
pub fn apply_gen(v: &FundVector, g: &Gen) -> Result<FundVector> {
    let n = v.shape.n();
    let i = match g {
        Gen::E(i) | Gen::F(i) | Gen::Alpha(i, _) => *i,
    };
    if i > n {
        return Err(Error::Validation(format!(
            "generator index {i} exceeds n = {n}"
        )));
    }
    if let Gen::Alpha(_, c) = g {
        if !c.is_positive() {
            return Err(Error::Validation(format!(
                "torus parameter {c} must be positive"
            )));
        }
    }
    let mut out = FundVector::zero(v.shape);
    for (t, a) in &v.coeffs {
        match g {
            Gen::E(_) => {
                if let Some(s) = e_basis(n, t, i) {
                    out.add_term(s, a.clone());
                }
            }
            Gen::F(_) => {
                if let Some(s) = f_basis(n, t, i) {
                    out.add_term(s, a.clone());
                }
            }
            Gen::Alpha(_, c) => out.add_term(t.clone(), a * alpha_basis(n, t, i, c)),
        }
    }
    Ok(out)
}

/// `Y_i(c) = y_i(1/c) α_i^∨(c)` with `y_i(t) = 1 + t f_i`.
pub fn y_factor(v: &FundVector, i: usize, c: &Q) -> Result<FundVector> {
    let a = apply_gen(v, &Gen::Alpha(i, c.clone()))?;
    let f = apply_gen(&a, &Gen::F(i))?;
    Ok(a.add(&f.scale(&c.recip())))
}

/// `v_1(x)`: the factors `Y_m(x_l^m)` applied to `u_1`, row 1 first and
/// columns ascending within each row.
pub fn v1_vector(x: &Point<L1, Q>) -> FundVector {
    let s = x.shape();
    let mut v = FundVector::basis_vector(s, u1(s)).expect("u1 is a basis tuple");
    for l in 1..=s.ki() {
        for m in s.row1(l) {
            v = y_factor(&v, m as usize, &x.get(l, m)).expect("positive point");
        }
    }
    v
}

/// `v_2(y)`: the factors `Y_m(y_l^m)` applied to `u_2`, in the same order.
pub fn v2_vector(y: &Point<L2, Q>) -> FundVector {
    let s = y.shape();
    let mut v = FundVector::basis_vector(s, u2(s)).expect("u2 is a basis tuple");
    for l in 1..=s.ki() {
        for m in s.row2(l) {
            v = y_factor(&v, m as usize, &y.get(l, m)).expect("positive point");
        }
    }
    v
}

/// Result of comparing `v_2(Σ(x))` with `v_1(x)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Proportionality {
    pub proportional: bool,
    /// The scalar `a(x)` with `v_2 = a(x) v_1`, when it exists.
    pub ratio: Option<Q>,
    /// A basis tuple where the coefficient ratio first differs (or where only
    /// one vector is supported).
    pub witness: Option<Tableau>,
}

/// Largest representation the probe will handle.
pub const PROBE_DIM_CAP: u128 = 10_000;

pub fn proportionality_probe(x: &Point<L1, Q>) -> Result<Proportionality> {
    let s = x.shape();
    let dim = crate::lattice::binomial(s.n() as u64 + 1, s.k() as u64);
    if dim > PROBE_DIM_CAP {
        return Err(Error::Validation(format!(
            "dimension {dim} exceeds probe cap {PROBE_DIM_CAP}"
        )));
    }
    let a = v1_vector(x);
    let b = v2_vector(&crate::birational::sigma(x));
    compare(&a, &b)
}

/// Tests whether `b = r·a` for a single scalar `r`.
pub fn compare(a: &FundVector, b: &FundVector) -> Result<Proportionality> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Fault("zero vector in proportionality probe".into()));
    }
    let mut ratio: Option<Q> = None;
    let keys: std::collections::BTreeSet<&Tableau> =
        a.coeffs.keys().chain(b.coeffs.keys()).collect();
    for t in keys {
        let (ca, cb) = (a.coeff(t), b.coeff(t));
        if ca.is_zero() || cb.is_zero() {
            return Ok(Proportionality {
                proportional: false,
                ratio: None,
                witness: Some(t.clone()),
            });
        }
        let r = cb / ca;
        match &ratio {
            None => ratio = Some(r),
            Some(r0) if *r0 != r => {
                return Ok(Proportionality {
                    proportional: false,
                    ratio: None,
                    witness: Some(t.clone()),
                })
            }
            _ => {}
        }
    }
    Ok(Proportionality {
        proportional: true,
        ratio,
        witness: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{q, qi, XPoint, YPoint};

    fn s21() -> Shape {
        Shape::new(2, 1).unwrap()
    }

    fn bv(s: Shape, t: &[usize]) -> FundVector {
        FundVector::basis_vector(s, t.to_vec()).unwrap()
    }

    #[test]
    fn basis_enumeration() {
        assert_eq!(basis(s21()), vec![vec![1], vec![2], vec![3]]);
        let s = Shape::new(5, 3).unwrap();
        let b = basis(s);
        assert_eq!(b.len(), 20);
        assert_eq!(b.first().unwrap(), &vec![1, 2, 3]);
        assert_eq!(b.last().unwrap(), &vec![4, 5, 6]);
    }

    #[test]
    fn lowering_on_smallest_shape() {
        let s = s21();
        assert_eq!(apply_gen(&bv(s, &[1]), &Gen::F(1)).unwrap(), bv(s, &[2]));
        assert_eq!(apply_gen(&bv(s, &[2]), &Gen::F(2)).unwrap(), bv(s, &[3]));
        assert_eq!(apply_gen(&bv(s, &[3]), &Gen::F(0)).unwrap(), bv(s, &[1]));
        assert_eq!(apply_gen(&bv(s, &[1]), &Gen::E(0)).unwrap(), bv(s, &[3]));
    }

    #[test]
    fn torus_on_smallest_shape() {
        let s = s21();
        let c = q(5, 7);
        assert_eq!(
            apply_gen(&bv(s, &[1]), &Gen::Alpha(1, c.clone())).unwrap(),
            bv(s, &[1]).scale(&c)
        );
        assert_eq!(
            apply_gen(&bv(s, &[2]), &Gen::Alpha(1, c.clone())).unwrap(),
            bv(s, &[2]).scale(&c.recip())
        );
        assert!(apply_gen(&bv(s, &[2]), &Gen::Alpha(1, qi(0))).is_err());
    }

    #[test]
    fn v1_and_v2_on_smallest_shape() {
        let s = s21();
        let x = XPoint::from_fn(s, |_, m| qi(m + 1));
        let v = v1_vector(&x);
        assert_eq!(
            (v.coeff(&[1]), v.coeff(&[2]), v.coeff(&[3])),
            (qi(2), qi(3), qi(1))
        );
        let y = YPoint::from_fn(s, |_, m| if m == 0 { q(2, 5) } else { q(7, 3) });
        let w = v2_vector(&y);
        assert_eq!(
            (w.coeff(&[1]), w.coeff(&[2]), w.coeff(&[3])),
            (q(7, 3), qi(1), q(2, 5))
        );
    }

    #[test]
    fn probe_on_smallest_shape() {
        let x = XPoint::from_fn(s21(), |_, m| qi(m + 1));
        let p = proportionality_probe(&x).unwrap();
        assert!(p.proportional);
        assert_eq!(p.ratio, Some(q(1, 3)));
    }

    #[test]
    fn probe_on_all_ones() {
        let x = XPoint::unit(Shape::new(4, 2).unwrap());
        let p = proportionality_probe(&x).unwrap();
        assert!(p.proportional);
        assert_eq!(p.ratio, Some(qi(1)));
    }

    #[test]
    fn nonproportional_witness() {
        let s = s21();
        let a = bv(s, &[1]).add(&bv(s, &[2]));
        let b = bv(s, &[1]).add(&bv(s, &[2]).scale(&qi(2)));
        let p = compare(&a, &b).unwrap();
        assert!(!p.proportional);
        assert_eq!(p.witness, Some(vec![2]));
    }
}
