//! The combinatorial crystal `B^{k,∞}`.
//!
//! An element is an integer array `b_{ji}` with `1 ≤ j ≤ k`,
//! `j ≤ i ≤ j + k'` and zero row sums; entries outside that range read as 0.
//!
//! For `1 ≤ i ≤ n` the signature rule runs over rows `β < c ≤ γ` with
//! `β = max(0, i-k')`, `γ = min(k, i)` and the partial sums
//! `Γ_i(c) = Σ_{β<j<c} (b_{ji} - b_{j+1,i+1})`. Index 0 minimizes
//! `Δ_b(c) = Σ_j Σ_{c_{j-1}<i<c_j} b_{ji}` over the tuples
//! `1 = c_0 < c_1 < … < c_k = n+1`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{parse_key, Shape};

/// An element of `B^{k,∞}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BElement {
    shape: Shape,
    rows: Vec<Vec<i64>>,
}

impl fmt::Debug for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

impl BElement {
    /// `b_∞`, all entries zero.
    pub fn zero(shape: Shape) -> Self {
        BElement {
            shape,
            rows: vec![vec![0; shape.kprime() + 1]; shape.k()],
        }
    }

    /// Row `j` lists `b_{j,j}, …, b_{j,j+k'}`.
    pub fn from_rows(shape: Shape, rows: Vec<Vec<i64>>) -> Result<Self> {
        if rows.len() != shape.k() || rows.iter().any(|r| r.len() != shape.kprime() + 1) {
            return Err(Error::Validation(format!(
                "expected {} rows of length {} for shape {shape}",
                shape.k(),
                shape.kprime() + 1
            )));
        }
        if let Some(j) = rows.iter().position(|r| r.iter().sum::<i64>() != 0) {
            return Err(Error::Validation(format!(
                "row {} does not sum to zero",
                j + 1
            )));
        }
        Ok(BElement { shape, rows })
    }

    pub(crate) fn from_fn(shape: Shape, mut f: impl FnMut(i64, i64) -> i64) -> Self {
        let rows = (1..=shape.ki())
            .map(|j| (j..=j + shape.kprime() as i64).map(|i| f(j, i)).collect())
            .collect();
        BElement { shape, rows }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn in_range(&self, j: i64, i: i64) -> bool {
        (1..=self.shape.ki()).contains(&j) && i >= j && i <= j + self.shape.kprime() as i64
    }

    /// `b_{ji}`, or 0 out of range.
    pub fn get(&self, j: i64, i: i64) -> i64 {
        if self.in_range(j, i) {
            self.rows[(j - 1) as usize][(i - j) as usize]
        } else {
            0
        }
    }

    fn bump(&mut self, j: i64, i: i64, by: i64) {
        assert!(self.in_range(j, i), "b_({j},{i}) is out of range");
        self.rows[(j - 1) as usize][(i - j) as usize] += by;
    }

    pub fn row_sums_vanish(&self) -> bool {
        self.rows.iter().all(|r| r.iter().sum::<i64>() == 0)
    }

    /// Compact label, rows separated by `|`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
            .collect();
        rows.join("|")
    }

    pub fn to_json(&self) -> BElementJson {
        let mut entries = BTreeMap::new();
        for j in 1..=self.shape.ki() {
            for i in j..=j + self.shape.kprime() as i64 {
                entries.insert(format!("{j},{i}"), Value::from(self.get(j, i)));
            }
        }
        BElementJson {
            n: self.shape.n(),
            k: self.shape.k(),
            kind: "b".into(),
            entries,
        }
    }

    pub fn from_json(j: &BElementJson) -> Result<Self> {
        if j.kind != "b" {
            return Err(Error::Validation(format!(
                "expected kind \"b\", found {:?}",
                j.kind
            )));
        }
        let shape = Shape::new(j.n, j.k)?;
        let mut seen = BTreeMap::new();
        for (key, v) in &j.entries {
            let (r, c) = parse_key(key)?;
            let v = v
                .as_i64()
                .ok_or_else(|| Error::Validation(format!("entry {key} is not an integer")))?;
            seen.insert((r, c), v);
        }
        let probe = BElement::zero(shape);
        for &(r, c) in seen.keys() {
            if !probe.in_range(r, c) {
                return Err(Error::Validation(format!("entry ({r},{c}) out of range")));
            }
        }
        let mut rows = Vec::new();
        for r in 1..=shape.ki() {
            let mut row = Vec::new();
            for c in r..=r + shape.kprime() as i64 {
                row.push(
                    *seen
                        .get(&(r, c))
                        .ok_or_else(|| Error::Validation(format!("missing entry ({r},{c})")))?,
                );
            }
            rows.push(row);
        }
        BElement::from_rows(shape, rows)
    }
}

/// Wire form `{"n":N,"k":K,"kind":"b","entries":{"j,i":int}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BElementJson {
    pub n: usize,
    pub k: usize,
    pub kind: String,
    pub entries: BTreeMap<String, Value>,
}

/// Random element: free entries uniform in `[-bound, bound]`, the last entry
/// of each row fixed by the zero-sum condition.
pub fn sample_belement(shape: Shape, rng: &mut impl Rng, bound: i64) -> BElement {
    let rows = (0..shape.k())
        .map(|_| {
            let mut r: Vec<i64> = (0..shape.kprime())
                .map(|_| rng.random_range(-bound..=bound))
                .collect();
            r.push(-r.iter().sum::<i64>());
            r
        })
        .collect();
    BElement { shape, rows }
}

/// `(β, γ) = (max(0, i-k'), min(k, i))`.
pub fn beta_gamma(shape: Shape, i: usize) -> (i64, i64) {
    let i = i as i64;
    ((i - shape.kprime() as i64).max(0), shape.ki().min(i))
}

fn step(b: &BElement, j: i64, i: i64) -> i64 {
    b.get(j, i) - b.get(j + 1, i + 1)
}

/// `Γ_i(c)` for `β < c ≤ γ`.
pub fn big_gamma(b: &BElement, i: usize, c: i64) -> i64 {
    let (beta, _) = beta_gamma(b.shape, i);
    (beta + 1..c).map(|j| step(b, j, i as i64)).sum()
}

/// Smallest and largest minimizers of `Γ_i`.
pub fn c0_c1(b: &BElement, i: usize) -> (i64, i64) {
    let (beta, gam) = beta_gamma(b.shape, i);
    let vals: Vec<(i64, i64)> = (beta + 1..=gam).map(|c| (c, big_gamma(b, i, c))).collect();
    let min = vals.iter().map(|v| v.1).min().expect("nonempty range");
    let c0 = vals.iter().find(|v| v.1 == min).unwrap().0;
    let c1 = vals.iter().rev().find(|v| v.1 == min).unwrap().0;
    (c0, c1)
}

/// A tuple `1 = c_0 < c_1 < … < c_k = n+1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CTuple(pub Vec<i64>);

impl CTuple {
    /// Coordinatewise `self ≤ other`.
    pub fn precedes(&self, other: &CTuple) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

/// Every admissible tuple, in lexicographic order.
pub fn c_set(shape: Shape) -> Vec<CTuple> {
    let (n, k) = (shape.ni(), shape.k());
    let mut out = Vec::new();
    let mut mid: Vec<i64> = (2..=k as i64).collect();
    loop {
        let mut c = vec![1];
        c.extend(&mid);
        c.push(n + 1);
        out.push(CTuple(c));
        let inner = k - 1;
        let mut j = inner;
        while j > 0 && mid[j - 1] == n - (inner - j) as i64 {
            j -= 1;
        }
        if j == 0 {
            return out;
        }
        mid[j - 1] += 1;
        for r in j..inner {
            mid[r] = mid[r - 1] + 1;
        }
    }
}

pub fn delta(b: &BElement, c: &CTuple) -> i64 {
    let mut acc = 0;
    for j in 1..=b.shape.ki() {
        let (lo, hi) = (c.0[(j - 1) as usize], c.0[j as usize]);
        acc += (lo + 1..hi).map(|i| b.get(j, i)).sum::<i64>();
    }
    acc
}

/// Which extremal minimizer to select.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Which {
    E,
    F,
}

/// The unique minimizer of `Δ_b` that is least (for `E`) or greatest (for
/// `F`) in the coordinatewise order, checked against its defining
/// inequalities.
pub fn extremal_c(b: &BElement, which: Which) -> Result<CTuple> {
    let all = c_set(b.shape);
    let vals: Vec<i64> = all.iter().map(|c| delta(b, c)).collect();
    let min = *vals.iter().min().unwrap();
    let argmin: Vec<&CTuple> = all
        .iter()
        .zip(&vals)
        .filter(|(_, v)| **v == min)
        .map(|(c, _)| c)
        .collect();
    let k = b.shape.k();
    let pick = |j: usize| {
        let it = argmin.iter().map(|c| c.0[j]);
        match which {
            Which::E => it.min().unwrap(),
            Which::F => it.max().unwrap(),
        }
    };
    let cand = CTuple((0..=k).map(pick).collect());
    let dc = delta(b, &cand);
    let fault = |c: &CTuple| {
        Error::Fault(format!(
            "extremal tuple {:?} ({which:?}) fails against {:?} for b = {}",
            cand.0,
            c.0,
            b.label()
        ))
    };
    if !all.contains(&cand) || dc != min {
        return Err(fault(&cand));
    }
    for (c, v) in all.iter().zip(&vals) {
        let weak = match which {
            Which::E => cand.precedes(c),
            Which::F => c.precedes(&cand),
        };
        let ok = if weak { dc <= *v } else { dc < *v };
        if !ok {
            return Err(fault(c));
        }
    }
    Ok(cand)
}

/// `(ε_i, φ_i)` for any `i ∈ 0..=n`.
pub fn eps_phi(b: &BElement, i: usize) -> (i64, i64) {
    let s = b.shape;
    if i == 0 {
        let ce = extremal_c(b, Which::E).expect("extremal tuple");
        let cf = extremal_c(b, Which::F).expect("extremal tuple");
        return (
            -b.get(s.ki(), s.ni() + 1) - delta(b, &ce),
            -b.get(1, 1) - delta(b, &cf),
        );
    }
    let (beta, gam) = beta_gamma(s, i);
    let (c0, c1) = c0_c1(b, i);
    let ii = i as i64;
    let eps = (beta..c0).map(|j| -step(b, j, ii)).sum();
    let phi = (c1..=gam).map(|j| step(b, j, ii)).sum();
    (eps, phi)
}

pub fn wt(b: &BElement, i: usize) -> i64 {
    let s = b.shape;
    if i == 0 {
        return -b.get(1, 1) + b.get(s.ki(), s.ni() + 1);
    }
    let (beta, gam) = beta_gamma(s, i);
    (beta..=gam).map(|j| step(b, j, i as i64)).sum()
}

/// Raising or lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Op {
    E,
    F,
}

/// `ẽ_i` or `f̃_i`; both are total on `B^{k,∞}`.
pub fn kashiwara(b: &BElement, op: Op, i: usize) -> BElement {
    let mut out = b.clone();
    if i == 0 {
        let which = if op == Op::E { Which::E } else { Which::F };
        let c = extremal_c(b, which).expect("extremal tuple");
        for j in 1..=b.shape.ki() {
            let (lo, hi) = (c.0[(j - 1) as usize], c.0[j as usize]);
            let sign = if op == Op::E { 1 } else { -1 };
            out.bump(j, lo, -sign);
            out.bump(j, hi, sign);
        }
        return out;
    }
    let ii = i as i64;
    let (c0, c1) = c0_c1(b, i);
    match op {
        Op::E => {
            out.bump(c0, ii, 1);
            out.bump(c0, ii + 1, -1);
        }
        Op::F => {
            out.bump(c1, ii, -1);
            out.bump(c1, ii + 1, 1);
        }
    }
    out
}

pub fn try_kashiwara(b: &BElement, op: Op, i: usize) -> Result<BElement> {
    if i > b.shape.n() {
        return Err(Error::Validation(format!(
            "index {i} exceeds n = {}",
            b.shape.n()
        )));
    }
    Ok(kashiwara(b, op, i))
}

/// `ẽ_i^d`, with negative `d` meaning `f̃_i^{-d}`.
pub fn e_pow(b: &BElement, i: usize, d: i64) -> BElement {
    let op = if d >= 0 { Op::E } else { Op::F };
    let mut out = b.clone();
    for _ in 0..d.unsigned_abs() {
        out = kashiwara(&out, op, i);
    }
    out
}

/// `s̃_i(b) = ẽ_i^{-wt_i(b)}(b)` by iteration.
pub fn weyl_s_iter(b: &BElement, i: usize) -> BElement {
    e_pow(b, i, -wt(b, i))
}

/// `s̃_i(b)` in closed form.
///
/// For `i ≥ 1`, row `l ∈ (β, γ]` moves
/// `G_l = min(min_{l<p≤γ} Γ(p), min_{β<p≤l} Γ(p) + wt_i)
///      - min(min_{l≤p≤γ} Γ(p), min_{β<p<l} Γ(p) + wt_i)`
/// units from column `i` to column `i+1`. For `i = 0` the minima run over the
/// tuple set with `Δ^1 = Δ + b_{11}` and `Δ^k = Δ + b_{k,n+1}`.
pub fn weyl_s_tilde(b: &BElement, i: usize) -> BElement {
    if i == 0 {
        return weyl_s0_closed(b);
    }
    let s = b.shape;
    let (beta, gam) = beta_gamma(s, i);
    let w = wt(b, i);
    let g: BTreeMap<i64, i64> = (beta + 1..=gam).map(|p| (p, big_gamma(b, i, p))).collect();
    let min_of = |lo: i64, hi: i64, shift: i64| (lo..=hi).map(|p| g[&p] + shift).min();
    let both = |a: Option<i64>, c: Option<i64>| match (a, c) {
        (Some(x), Some(y)) => x.min(y),
        (x, y) => x.or(y).expect("nonempty minimum"),
    };
    let mut out = b.clone();
    let ii = i as i64;
    for l in beta + 1..=gam {
        let moved = both(min_of(l + 1, gam, 0), min_of(beta + 1, l, w))
            - both(min_of(l, gam, 0), min_of(beta + 1, l - 1, w));
        out.bump(l, ii, -moved);
        out.bump(l, ii + 1, moved);
    }
    out
}

fn weyl_s0_closed(b: &BElement) -> BElement {
    let s = b.shape;
    let all = c_set(s);
    let d1: Vec<i64> = all.iter().map(|c| delta(b, c) + b.get(1, 1)).collect();
    let dk: Vec<i64> = all
        .iter()
        .map(|c| delta(b, c) + b.get(s.ki(), s.ni() + 1))
        .collect();
    // min of Δ^1 over tuples meeting `first`, and of Δ^k over the rest
    let split = |first: &dyn Fn(&CTuple) -> bool| -> i64 {
        all.iter()
            .enumerate()
            .map(|(t, c)| if first(c) { d1[t] } else { dk[t] })
            .min()
            .unwrap()
    };
    BElement::from_fn(s, |l, m| {
        let (lu, lw) = ((l - 1) as usize, l as usize);
        b.get(l, m) + split(&|c| c.0[lu] > m) - split(&|c| c.0[lw] > m) + split(&|c| c.0[lw] >= m)
            - split(&|c| c.0[lu] >= m)
    })
}

/// DOT digraph of the `f̃_i` edges within `radius` steps of `center`, walking
/// both `ẽ_i` and `f̃_i` for every `i`.
pub fn graph_dot(center: &BElement, radius: usize) -> String {
    let n = center.shape.n();
    let mut seen: BTreeMap<BElement, usize> = BTreeMap::new();
    let mut edges: BTreeSet<(BElement, BElement, usize)> = BTreeSet::new();
    let mut queue = VecDeque::new();
    seen.insert(center.clone(), 0);
    queue.push_back(center.clone());
    while let Some(b) = queue.pop_front() {
        let dist = seen[&b];
        if dist == radius {
            continue;
        }
        for i in 0..=n {
            let down = kashiwara(&b, Op::F, i);
            let up = kashiwara(&b, Op::E, i);
            edges.insert((b.clone(), down.clone(), i));
            edges.insert((up.clone(), b.clone(), i));
            for nb in [down, up] {
                if !seen.contains_key(&nb) {
                    seen.insert(nb.clone(), dist + 1);
                    queue.push_back(nb);
                }
            }
        }
    }
    let mut out = String::from("digraph crystal {\n");
    for (b, d) in &seen {
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\", dist={}];",
            b.label(),
            b.label(),
            d
        );
    }
    for (a, c, i) in &edges {
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}\"];",
            a.label(),
            c.label(),
            i
        );
    }
    out.push_str("}\n");
    out
}
