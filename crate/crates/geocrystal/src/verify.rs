//! Randomized verification suites and their reports.
//!
//! Each suite draws its inputs from [`trial_rng`]`(seed, trial)`, so a run is
//! a pure function of `(suite, shape, trials, seed, bound)` and every witness
//! can be replayed. Checks are exact equalities; nothing is tolerance-based.

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::birational::{sigma, xi};
use crate::bkinf::{
    self, delta, e_pow, eps_phi, extremal_c, kashiwara, sample_belement, weyl_s_iter, weyl_s_tilde,
    BElement, Op, Which,
};
use crate::error::{Error, Result};
use crate::fundrep::{self, apply_gen, basis, Gen};
use crate::geomcrystal::{
    act_e, act_e0_via_sigma, act_ebar, epsilon, epsilon0_via_sigma, epsilon_bar, gamma,
    gamma0_via_sigma, gamma_bar, weyl_s, weyl_s_def, Cartan,
};
use crate::iso::{omega, omega_inv, pi_correspondence};
use crate::lattice::{
    q_to_string, sample_rational, sample_scalar, sample_trop, trial_rng, AnyPoint, Point, Shape,
    Side, TropPoint, XPoint, YPoint, L1, L2, PRNG_ID, Q,
};
use crate::paths::{
    brute_eps, brute_regions, brute_x, brute_y, path_weight, region_probe_coords, XTables, YTables,
};
use crate::semiring::{MaxPlus, Semifield};
use crate::tropical::{self, to_maxplus, trop_e, trop_eps, trop_weyl, trop_wt, Quantity};

/// Random operator parameters drawn per sampled point.
pub const SCALAR_REPS: usize = 5;
/// Witnesses kept per report.
pub const WITNESS_CAP: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub trial: u64,
    pub input: Value,
}

/// Outcome of one suite run.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub prng: String,
    pub trials: u64,
    pub bound: u64,
    pub relations: BTreeMap<String, Tally>,
    pub witnesses: Vec<Witness>,
    /// Report-only observations that do not affect the verdict.
    pub observations: Vec<Value>,
    pub wall_ms: u128,
}

impl RunReport {
    fn new(suite: Suite, shape: Shape, cfg: &Config) -> Self {
        RunReport {
            suite: suite.name().into(),
            n: shape.n(),
            k: shape.k(),
            seed: cfg.seed,
            prng: PRNG_ID.into(),
            trials: cfg.trials,
            bound: cfg.bound,
            relations: BTreeMap::new(),
            witnesses: Vec::new(),
            observations: Vec::new(),
            wall_ms: 0,
        }
    }

    fn check(&mut self, relation: &str, ok: bool, trial: u64, input: impl FnOnce() -> Value) {
        let t = self.relations.entry(relation.to_string()).or_default();
        if ok {
            t.pass += 1;
        } else {
            t.fail += 1;
            if self.witnesses.len() < WITNESS_CAP {
                self.witnesses.push(Witness {
                    relation: relation.into(),
                    trial,
                    input: input(),
                });
            }
        }
    }

    pub fn passed(&self) -> bool {
        !self.relations.is_empty() && self.relations.values().all(|t| t.fail == 0)
    }

    pub fn total_checks(&self) -> u64 {
        self.relations.values().map(|t| t.pass + t.fail).sum()
    }

    pub fn failed_relations(&self) -> Vec<&str> {
        self.relations
            .iter()
            .filter(|(_, t)| t.fail > 0)
            .map(|(k, _)| k.as_str())
            .collect()
    }
}

/// Sampling parameters of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Config {
    pub trials: u64,
    pub seed: u64,
    /// Rational numerator/denominator bound, or integer magnitude bound.
    pub bound: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Paths,
    Birational,
    Factorization,
    Intertwining,
    Axioms,
    ZeroRoutes,
    Iso,
    UdProbe,
    Weyl,
    Extremal,
    Conjecture,
    Fundrep,
}

impl Suite {
    pub const ALL: [Suite; 12] = [
        Suite::Paths,
        Suite::Birational,
        Suite::Factorization,
        Suite::Intertwining,
        Suite::Axioms,
        Suite::ZeroRoutes,
        Suite::Iso,
        Suite::UdProbe,
        Suite::Weyl,
        Suite::Extremal,
        Suite::Conjecture,
        Suite::Fundrep,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Paths => "paths",
            Suite::Birational => "birational",
            Suite::Factorization => "factorization",
            Suite::Intertwining => "intertwining",
            Suite::Axioms => "axioms",
            Suite::ZeroRoutes => "zero-routes",
            Suite::Iso => "iso",
            Suite::UdProbe => "ud-probe",
            Suite::Weyl => "weyl",
            Suite::Extremal => "extremal",
            Suite::Conjecture => "conjecture",
            Suite::Fundrep => "fundrep",
        }
    }

    /// Default sampling bound for the suite's inputs.
    pub fn default_bound(self) -> u64 {
        match self {
            Suite::Iso | Suite::Extremal | Suite::Weyl => 10,
            Suite::UdProbe => 8,
            _ => 12,
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Suite::ALL.iter().map(|x| x.name()).collect();
                Error::Validation(format!(
                    "unknown suite {s:?}; expected one of {}",
                    names.join(", ")
                ))
            })
    }
}

pub fn run_suite(suite: Suite, shape: Shape, cfg: Config) -> Result<RunReport> {
    if cfg.trials == 0 {
        return Err(Error::Validation("trials must be at least 1".into()));
    }
    if cfg.bound == 0 {
        return Err(Error::Validation("bound must be at least 1".into()));
    }
    let start = Instant::now();
    let mut r = RunReport::new(suite, shape, &cfg);
    match suite {
        Suite::Paths => suite_paths(shape, &cfg, &mut r)?,
        Suite::Birational => suite_birational(shape, &cfg, &mut r),
        Suite::Factorization => suite_factorization(shape, &cfg, &mut r)?,
        Suite::Intertwining => suite_intertwining(shape, &cfg, &mut r),
        Suite::Axioms => suite_axioms(shape, &cfg, &mut r),
        Suite::ZeroRoutes => suite_zero_routes(shape, &cfg, &mut r),
        Suite::Iso => suite_iso(shape, &cfg, &mut r)?,
        Suite::UdProbe => suite_ud_probe(shape, &cfg, &mut r)?,
        Suite::Weyl => suite_weyl(shape, &cfg, &mut r),
        Suite::Extremal => suite_extremal(shape, &cfg, &mut r),
        Suite::Conjecture => suite_conjecture(shape, &cfg, &mut r)?,
        Suite::Fundrep => suite_fundrep(shape, &cfg, &mut r),
    }
    r.wall_ms = start.elapsed().as_millis();
    Ok(r)
}

fn xj(x: &XPoint) -> Value {
    serde_json::to_value(AnyPoint::X(x.clone()).to_json()).unwrap()
}

fn yj(y: &YPoint) -> Value {
    serde_json::to_value(AnyPoint::Y(y.clone()).to_json()).unwrap()
}

fn tj(x: &TropPoint) -> Value {
    serde_json::to_value(AnyPoint::Trop(x.clone()).to_json()).unwrap()
}

fn bj(b: &BElement) -> Value {
    serde_json::to_value(b.to_json()).unwrap()
}

fn qj(c: &Q) -> Value {
    Value::from(q_to_string(c))
}

fn tbound(cfg: &Config) -> i64 {
    cfg.bound as i64
}

/// DP tables against path enumeration on every node, in one semiring.
fn paths_one<T: Semifield>(
    x: &Point<L1, T>,
    y: &Point<L2, T>,
    tag: &str,
    trial: u64,
    r: &mut RunReport,
    wx: &dyn Fn() -> Value,
) -> Result<()> {
    let s = x.shape();
    let tx = XTables::new(x);
    let ty = YTables::new(y);
    for (l, m) in s.l1() {
        let (bx, bxs) = brute_x(x, l, m)?;
        r.check(
            &format!("{tag}: X dp = enumeration"),
            tx.x(l, m) == bx,
            trial,
            wx,
        );
        r.check(
            &format!("{tag}: X* dp = enumeration"),
            tx.xstar(l, m) == bxs,
            trial,
            wx,
        );
        r.check(
            &format!("{tag}: R = X* X"),
            tx.r(l, m) == bxs.times(&bx),
            trial,
            wx,
        );
        if s.in_l1(l, m + 1) {
            let rec = tx
                .x_ext(l - 1, m + 1)
                .ok()
                .filter(|_| s.in_l1(l - 1, m + 1))
                .unwrap_or_else(T::zero);
            let rhs = rec.plus(&x.get(l, m).over(&x.get(l, m + 1)).times(&tx.x(l, m + 1)));
            r.check(&format!("{tag}: X recursion"), tx.x(l, m) == rhs, trial, wx);
        }
        let up = tx.u(l - 1, m);
        r.check(
            &format!("{tag}: U(l-1) = U(l) + R(l)"),
            up == tx.u(l, m).plus(&tx.r(l, m)),
            trial,
            wx,
        );
        let vdown = tx.v(l + 1, m);
        r.check(
            &format!("{tag}: V(l+1) = V(l) + R(l)"),
            vdown == tx.v(l, m).plus(&tx.r(l, m)),
            trial,
            wx,
        );
    }
    for (l, m) in region_probe_coords(s) {
        let (bu, bv, br) = brute_regions(x, l, m)?;
        r.check(
            &format!("{tag}: U dp = enumeration"),
            tx.u(l, m) == bu,
            trial,
            wx,
        );
        r.check(
            &format!("{tag}: V dp = enumeration"),
            tx.v(l, m) == bv,
            trial,
            wx,
        );
        r.check(
            &format!("{tag}: R dp = enumeration"),
            tx.r(l, m) == br,
            trial,
            wx,
        );
        if (1..=s.ki()).contains(&l) {
            let total = tx.u(l, m).plus(&tx.v(l, m)).plus(&tx.r(l, m));
            r.check(
                &format!("{tag}: U + V + R = eps"),
                total == tx.eps(),
                trial,
                wx,
            );
        }
    }
    r.check(
        &format!("{tag}: eps dp = enumeration"),
        tx.eps() == brute_eps(x)?,
        trial,
        wx,
    );
    for (l, m) in s.l2() {
        let (by, bys) = brute_y(y, l, m)?;
        r.check(
            &format!("{tag}: Y dp = enumeration"),
            ty.y(l, m) == by,
            trial,
            || yj_generic(y),
        );
        r.check(
            &format!("{tag}: Y* dp = enumeration"),
            ty.ystar(l, m) == bys,
            trial,
            || yj_generic(y),
        );
    }
    Ok(())
}

fn yj_generic<T: Semifield>(y: &Point<L2, T>) -> Value {
    Value::from(format!("{y:?}"))
}

fn suite_paths(shape: Shape, cfg: &Config, r: &mut RunReport) -> Result<()> {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let y: YPoint = sample_rational(shape, &mut rng, cfg.bound);
        paths_one(&x, &y, "rational", t, r, &|| xj(&x))?;
        let tx = sample_trop(shape, &mut rng, tbound(cfg));
        let ty: Point<L2, i64> =
            Point::from_fn(shape, |_, _| rng.random_range(-tbound(cfg)..=tbound(cfg)));
        paths_one(
            &to_maxplus(&tx),
            &ty.map(|v| MaxPlus::fin(*v)),
            "max-plus",
            t,
            r,
            &|| tj(&tx),
        )?;
        for p in crate::paths::full_paths_l2(shape)? {
            let w = path_weight(&y, &p)?;
            r.check(
                "rational: L2 path weight positive",
                w > <Q as Semifield>::zero(),
                t,
                || yj(&y),
            );
        }
    }
    Ok(())
}

fn positive<S: Side>(p: &Point<S, Q>) -> bool {
    p.check_positive().is_ok()
}

fn suite_birational(shape: Shape, cfg: &Config, r: &mut RunReport) {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let y: YPoint = sample_rational(shape, &mut rng, cfg.bound);
        let sx = sigma(&x);
        let xy = xi(&y);
        r.check("xi(sigma(x)) = x", xi(&sx) == x, t, || xj(&x));
        r.check("sigma(xi(y)) = y", sigma(&xy) == y, t, || yj(&y));
        r.check("sigma(x) positive", positive(&sx), t, || xj(&x));
        r.check("xi(y) positive", positive(&xy), t, || yj(&y));
        let tx = sample_trop(shape, &mut rng, tbound(cfg));
        let mx = to_maxplus(&tx);
        r.check(
            "max-plus: xi(sigma(x)) = x",
            xi(&sigma(&mx)) == mx,
            t,
            || tj(&tx),
        );
    }
}

fn suite_factorization(shape: Shape, cfg: &Config, r: &mut RunReport) -> Result<()> {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let tx = XTables::new(&x);
        let ty = YTables::new(&sigma(&x));
        for (l, m) in shape.l1() {
            let rhs = tx.x_ext(l, m)? * ty.ystar_ext(l - 1, m)?;
            r.check("x = X(x) Y*(sigma x)", x.get(l, m) == rhs, t, || xj(&x));
        }
        let y: YPoint = sample_rational(shape, &mut rng, cfg.bound);
        let ty = YTables::new(&y);
        let tx = XTables::new(&xi(&y));
        for (l, m) in shape.l2() {
            let rhs = ty.ystar_ext(l, m)? * tx.x_ext(l, m)?;
            r.check("y = Y*(y) X(xi y)", y.get(l, m) == rhs, t, || yj(&y));
        }
    }
    Ok(())
}

fn suite_intertwining(shape: Shape, cfg: &Config, r: &mut RunReport) {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let sx = sigma(&x);
        for i in 1..shape.n() {
            r.check(
                "gamma_i = gammabar_i o sigma",
                gamma(&x, i) == gamma_bar(&sx, i),
                t,
                || xj(&x),
            );
            r.check(
                "eps_i = epsbar_i o sigma",
                epsilon(&x, i) == epsilon_bar(&sx, i),
                t,
                || xj(&x),
            );
            for _ in 0..SCALAR_REPS {
                let c = sample_scalar(&mut rng, cfg.bound);
                let ok = sigma(&act_e(&x, i, &c)) == act_ebar(&sx, i, &c);
                r.check(
                    "sigma o e_i^c = ebar_i^c o sigma",
                    ok,
                    t,
                    || json!({"x": xj(&x), "i": i, "c": qj(&c)}),
                );
            }
        }
    }
}

fn suite_axioms(shape: Shape, cfg: &Config, r: &mut RunReport) {
    let cartan = Cartan::new(shape.n());
    let one = <Q as Semifield>::one();
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let gam: Vec<Q> = cartan.indices().map(|j| gamma(&x, j)).collect();
        let eps: Vec<Q> = cartan.indices().map(|j| epsilon(&x, j)).collect();
        for i in cartan.indices() {
            r.check(
                "e_i^1 = id",
                act_e(&x, i, &one) == x,
                t,
                || json!({"x": xj(&x), "i": i}),
            );
        }
        for _ in 0..SCALAR_REPS {
            let c = sample_scalar(&mut rng, cfg.bound);
            let d = sample_scalar(&mut rng, cfg.bound);
            let w = || json!({"x": xj(&x), "c": qj(&c), "d": qj(&d)});
            let cd = &c * &d;
            let ec: Vec<XPoint> = cartan.indices().map(|i| act_e(&x, i, &c)).collect();
            let ed: Vec<XPoint> = cartan.indices().map(|i| act_e(&x, i, &d)).collect();
            for i in cartan.indices() {
                let ok = act_e(&ec[i], i, &d) == act_e(&x, i, &cd);
                r.check("e_i^c e_i^d = e_i^cd", ok, t, w);
                r.check(
                    "eps_i(e_i^c x) = eps_i(x)/c",
                    epsilon(&ec[i], i) == &eps[i] / &c,
                    t,
                    w,
                );
                for j in cartan.indices() {
                    let ok = gamma(&ec[i], j) == &gam[j] * c.powi(cartan.a(i, j));
                    r.check("gamma_j(e_i^c x) = c^a_ij gamma_j(x)", ok, t, w);
                    if i == j {
                        continue;
                    }
                    match cartan.a(i, j) {
                        0 => {
                            if i < j {
                                let ok = act_e(&ec[i], j, &d) == act_e(&ed[j], i, &c);
                                r.check("e_i^c e_j^d = e_j^d e_i^c (a_ij = 0)", ok, t, w);
                            }
                            let ok = epsilon(&ec[j], i) == eps[i];
                            r.check("eps_i(e_j^c x) = eps_i(x) (a_ij = 0)", ok, t, w);
                        }
                        -1 => {
                            // e_i^c e_j^{cd} e_i^d = e_j^d e_i^{cd} e_j^c
                            let lhs = act_e(&act_e(&ed[i], j, &cd), i, &c);
                            let rhs = act_e(&act_e(&ec[j], i, &cd), j, &d);
                            let name = if i == 0 || j == 0 {
                                "verma (with 0)"
                            } else {
                                "verma"
                            };
                            r.check(
                                name,
                                lhs == rhs,
                                t,
                                || json!({"x": xj(&x), "i": i, "j": j, "c": qj(&c), "d": qj(&d)}),
                            );
                        }
                        _ => unreachable!("type A_n^(1) has no other off-diagonal entries"),
                    }
                }
            }
        }
    }
}

fn suite_zero_routes(shape: Shape, cfg: &Config, r: &mut RunReport) {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        r.check(
            "gamma_0 = gammabar_0 o sigma",
            gamma(&x, 0) == gamma0_via_sigma(&x),
            t,
            || xj(&x),
        );
        r.check(
            "eps_0 = epsbar_0 o sigma",
            epsilon(&x, 0) == epsilon0_via_sigma(&x),
            t,
            || xj(&x),
        );
        for _ in 0..SCALAR_REPS {
            let c = sample_scalar(&mut rng, cfg.bound);
            let ok = act_e(&x, 0, &c) == act_e0_via_sigma(&x, &c);
            r.check(
                "e_0^c closed = xi o ebar_0^c o sigma",
                ok,
                t,
                || json!({"x": xj(&x), "c": qj(&c)}),
            );
        }
    }
}

fn suite_iso(shape: Shape, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let n = shape.n();
    let tuples = bkinf::c_set(shape);
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x = sample_trop(shape, &mut rng, tbound(cfg));
        let b = omega(&x);
        let w = || tj(&x);
        r.check("omega_inv(omega(x)) = x", omega_inv(&b) == x, t, w);
        r.check("omega row sums vanish", b.row_sums_vanish(), t, w);
        let bs = sample_belement(shape, &mut rng, tbound(cfg));
        r.check(
            "omega(omega_inv(b)) = b",
            omega(&omega_inv(&bs)) == bs,
            t,
            || bj(&bs),
        );
        for i in 0..=n {
            r.check(
                "wt'_i(x) = wt_i(omega x)",
                trop_wt(&x, i) == bkinf::wt(&b, i),
                t,
                w,
            );
            r.check(
                "eps'_i(x) = eps_i(omega x)",
                trop_eps(&x, i) == eps_phi(&b, i).0,
                t,
                w,
            );
            for d in -3..=3 {
                let ok = omega(&trop_e(&x, i, d)) == e_pow(&b, i, d);
                r.check(
                    "omega o e'_i^d = e_i^d o omega",
                    ok,
                    t,
                    || json!({"x": tj(&x), "i": i, "d": d}),
                );
            }
            let ok = omega(&trop_weyl(&x, i)) == weyl_s_iter(&b, i);
            r.check(
                "omega o s'_i = s_i o omega",
                ok,
                t,
                || json!({"x": tj(&x), "i": i}),
            );
        }
        let mx = to_maxplus(&x);
        for c in &tuples {
            let ux = path_weight(&mx, &pi_correspondence(shape, c))?.value();
            r.check("delta_omega(x)(c) = -ux(pi(c))", delta(&b, c) == -ux, t, w);
        }
    }
    Ok(())
}

fn suite_ud_probe(shape: Shape, cfg: &Config, r: &mut RunReport) -> Result<()> {
    let n = shape.n();
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x = sample_trop(shape, &mut rng, tbound(cfg).min(tropical::PROBE_EXP_BOUND));
        let mx = to_maxplus(&x);
        let w = || tj(&x);
        for i in 0..=n {
            let gq = tropical::ud_degree_probe(Quantity::Gamma(i), &x, 0)?;
            r.check("probe(gamma_i) = wt'_i", gq == trop_wt(&x, i), t, w);
            let eq = tropical::ud_degree_probe(Quantity::Epsilon(i), &x, 0)?;
            r.check("probe(eps_i) = eps'_i", eq == trop_eps(&x, i), t, w);
            r.check(
                "max-plus gamma_i = wt'_i",
                gamma(&mx, i).value() == trop_wt(&x, i),
                t,
                w,
            );
            r.check(
                "max-plus eps_i = eps'_i",
                epsilon(&mx, i).value() == trop_eps(&x, i),
                t,
                w,
            );
            for d in -3..=3 {
                let closed = trop_e(&x, i, d);
                let engine = act_e(&mx, i, &MaxPlus::fin(d));
                r.check(
                    "max-plus e_i^d = e'_i^d",
                    tropical::from_maxplus(&engine) == closed,
                    t,
                    w,
                );
                let probed = probe_e_coords(&x, i, d);
                for ((l, m), v) in closed.entries() {
                    let ok = probed.get(l, m) == *v;
                    r.check(
                        "probe(e_i^c coord) = e'_i^d coord",
                        ok,
                        t,
                        || json!({"x": tj(&x), "i": i, "d": d, "l": l, "m": m}),
                    );
                }
            }
        }
    }
    Ok(())
}

/// All coordinates of `e_i^{t^d}(t^x)` through the degree probe, evaluated
/// once rather than per coordinate.
fn probe_e_coords(x: &TropPoint, i: usize, d: i64) -> TropPoint {
    let base = Q::from_integer(num_bigint::BigInt::from(1) << tropical::PROBE_BITS);
    let px = x.map(|e| base.powi(*e));
    let out = act_e(&px, i, &base.powi(d));
    out.map(|v| crate::semiring::round_log2_pow(v, tropical::PROBE_BITS))
}

fn suite_weyl(shape: Shape, cfg: &Config, r: &mut RunReport) {
    let cartan = Cartan::new(shape.n());
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound.max(2));
        let tx = sample_trop(shape, &mut rng, tbound(cfg));
        let b = sample_belement(shape, &mut rng, tbound(cfg));
        let (wx, wt, wb) = (|| xj(&x), || tj(&tx), || bj(&b));
        let sx: Vec<XPoint> = cartan.indices().map(|i| weyl_s(&x, i)).collect();
        let st: Vec<TropPoint> = cartan.indices().map(|i| trop_weyl(&tx, i)).collect();
        let sb: Vec<BElement> = cartan.indices().map(|i| weyl_s_tilde(&b, i)).collect();
        for i in cartan.indices() {
            r.check(
                "geom: closed s_i = e_i^(1/gamma_i)",
                sx[i] == weyl_s_def(&x, i),
                t,
                wx,
            );
            r.check("geom: s_i^2 = id", weyl_s(&sx[i], i) == x, t, wx);
            r.check("trop: s_i^2 = id", trop_weyl(&st[i], i) == tx, t, wt);
            let mx = to_maxplus(&tx);
            let ok = tropical::from_maxplus(&weyl_s(&mx, i)) == st[i];
            r.check("trop: s_i = max-plus closed form", ok, t, wt);
            r.check(
                "B: closed s_i = e_i^(-wt_i)",
                sb[i] == weyl_s_iter(&b, i),
                t,
                wb,
            );
            r.check("B: s_i^2 = id", weyl_s_tilde(&sb[i], i) == b, t, wb);
            for j in cartan.indices().filter(|&j| j > i) {
                match cartan.a(i, j) {
                    -1 => {
                        let ok = weyl_s(&weyl_s(&sx[i], j), i) == weyl_s(&weyl_s(&sx[j], i), j);
                        r.check("geom: braid", ok, t, wx);
                        let ok = trop_weyl(&trop_weyl(&st[i], j), i)
                            == trop_weyl(&trop_weyl(&st[j], i), j);
                        r.check("trop: braid", ok, t, wt);
                        let ok = weyl_s_tilde(&weyl_s_tilde(&sb[i], j), i)
                            == weyl_s_tilde(&weyl_s_tilde(&sb[j], i), j);
                        r.check("B: braid", ok, t, wb);
                    }
                    0 => {
                        r.check(
                            "geom: commute",
                            weyl_s(&sx[i], j) == weyl_s(&sx[j], i),
                            t,
                            wx,
                        );
                        r.check(
                            "trop: commute",
                            trop_weyl(&st[i], j) == trop_weyl(&st[j], i),
                            t,
                            wt,
                        );
                        r.check(
                            "B: commute",
                            weyl_s_tilde(&sb[i], j) == weyl_s_tilde(&sb[j], i),
                            t,
                            wb,
                        );
                    }
                    _ => {}
                }
            }
        }
    }
}

fn suite_extremal(shape: Shape, cfg: &Config, r: &mut RunReport) {
    let cartan = Cartan::new(shape.n());
    let tuples = bkinf::c_set(shape);
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let b = sample_belement(shape, &mut rng, tbound(cfg));
        let w = || bj(&b);
        let ce = extremal_c(&b, Which::E);
        let cf = extremal_c(&b, Which::F);
        r.check(
            "c^(e) satisfies its defining inequalities",
            ce.is_ok(),
            t,
            w,
        );
        r.check(
            "c^(f) satisfies its defining inequalities",
            cf.is_ok(),
            t,
            w,
        );
        if let (Ok(ce), Ok(cf)) = (ce, cf) {
            let min = tuples.iter().map(|c| delta(&b, c)).min().unwrap();
            r.check("c^(e) minimizes delta", delta(&b, &ce) == min, t, w);
            r.check("c^(f) minimizes delta", delta(&b, &cf) == min, t, w);
            r.check(
                "delta(c^(e)) = delta(c^(f))",
                delta(&b, &ce) == delta(&b, &cf),
                t,
                w,
            );
        }
        for i in cartan.indices() {
            let (e0, p0) = eps_phi(&b, i);
            let eb = kashiwara(&b, Op::E, i);
            let (e1, p1) = eps_phi(&eb, i);
            r.check("B: f_i e_i = id", kashiwara(&eb, Op::F, i) == b, t, w);
            r.check(
                "B: e_i f_i = id",
                kashiwara(&kashiwara(&b, Op::F, i), Op::E, i) == b,
                t,
                w,
            );
            r.check("B: row sums preserved", eb.row_sums_vanish(), t, w);
            r.check("B: eps_i(e_i b) = eps_i(b) - 1", e1 == e0 - 1, t, w);
            r.check("B: phi_i(e_i b) = phi_i(b) + 1", p1 == p0 + 1, t, w);
            r.check("B: wt_i = phi_i - eps_i", bkinf::wt(&b, i) == p0 - e0, t, w);
            for j in cartan.indices() {
                let ok = bkinf::wt(&eb, j) == bkinf::wt(&b, j) + cartan.a(i, j);
                r.check("B: wt_j(e_i b) = wt_j(b) + a_ij", ok, t, w);
            }
        }
    }
}

fn suite_conjecture(shape: Shape, cfg: &Config, r: &mut RunReport) -> Result<()> {
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let p = fundrep::proportionality_probe(&x)?;
        let corner = x.get(1, shape.ni()).recip();
        r.observations.push(json!({
            "trial": t,
            "proportional": p.proportional,
            "ratio": p.ratio.as_ref().map(q_to_string),
            "ratio_is_inverse_corner": p.ratio.as_ref().map(|a| *a == corner),
            "witness": p.witness,
        }));
        if shape.k() == 1 {
            let ok = p.ratio.as_ref() == Some(&corner);
            r.check("k = 1: ratio = 1/x_1^(n)", ok, t, || xj(&x));
        }
        let v1 = fundrep::v1_vector(&x);
        let v2 = fundrep::v2_vector(&sigma(&x));
        let pos = v1
            .terms()
            .chain(v2.terms())
            .all(|(_, c)| c > &<Q as Semifield>::zero());
        r.check("v1, v2 coefficients positive", pos, t, || xj(&x));
    }
    Ok(())
}

fn suite_fundrep(shape: Shape, cfg: &Config, r: &mut RunReport) {
    let n = shape.n();
    let u1 = fundrep::FundVector::basis_vector(shape, fundrep::u1(shape)).unwrap();
    let u2 = fundrep::FundVector::basis_vector(shape, fundrep::u2(shape)).unwrap();
    for i in 0..=n {
        for tb in basis(shape) {
            let v = fundrep::FundVector::basis_vector(shape, tb.clone()).unwrap();
            let w = || json!({"basis": tb.clone(), "i": i});
            let ee = apply_gen(&apply_gen(&v, &Gen::E(i)).unwrap(), &Gen::E(i)).unwrap();
            let ff = apply_gen(&apply_gen(&v, &Gen::F(i)).unwrap(), &Gen::F(i)).unwrap();
            r.check("e_i^2 = 0", ee.is_zero(), 0, w);
            r.check("f_i^2 = 0", ff.is_zero(), 0, w);
        }
        if i != 0 {
            let ok = apply_gen(&u1, &Gen::E(i)).unwrap().is_zero();
            r.check("e_i u_1 = 0 (i != 0)", ok, 0, || json!({"i": i}));
        }
        if i != n {
            let ok = apply_gen(&u2, &Gen::E(i)).unwrap().is_zero();
            r.check("e_i u_2 = 0 (i != n)", ok, 0, || json!({"i": i}));
        }
    }
    for t in 0..cfg.trials {
        let mut rng = trial_rng(cfg.seed, t);
        let x: XPoint = sample_rational(shape, &mut rng, cfg.bound);
        let y: YPoint = sample_rational(shape, &mut rng, cfg.bound);
        let zero = <Q as Semifield>::zero();
        let ok1 = fundrep::v1_vector(&x).terms().all(|(_, c)| *c > zero);
        let ok2 = fundrep::v2_vector(&y).terms().all(|(_, c)| *c > zero);
        r.check("v1(x) coefficients positive", ok1, t, || xj(&x));
        r.check("v2(y) coefficients positive", ok2, t, || yj(&y));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(trials: u64) -> Config {
        Config {
            trials,
            seed: 1,
            bound: 9,
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn reports_are_deterministic() {
        let s = Shape::new(3, 2).unwrap();
        let mut a = run_suite(Suite::Birational, s, cfg(3)).unwrap();
        let mut b = run_suite(Suite::Birational, s, cfg(3)).unwrap();
        a.wall_ms = 0;
        b.wall_ms = 0;
        assert_eq!(a, b);
        assert!(a.passed());
    }

    #[test]
    fn zero_trials_rejected() {
        let s = Shape::new(2, 1).unwrap();
        assert!(run_suite(Suite::Paths, s, cfg(0)).is_err());
    }

    #[test]
    fn failed_check_records_witness() {
        let s = Shape::new(2, 1).unwrap();
        let mut r = RunReport::new(Suite::Paths, s, &cfg(1));
        r.check("always false", false, 4, || json!({"hello": 1}));
        assert!(!r.passed());
        assert_eq!(r.witnesses[0].trial, 4);
        assert_eq!(r.failed_relations(), vec!["always false"]);
    }
}
