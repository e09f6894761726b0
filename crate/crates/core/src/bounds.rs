//! Analysis constants and lower bounds, all in exact rationals.
//!
//! The LP lower bound is never solved numerically. Its closed-form value is
//! certified per `(n, |V(F)|, α)` by an explicit primal point and an explicit
//! dual point that are both checked against the constraint table below.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::circle;
use crate::error::{Error, Result};
use crate::feasibility;
use crate::instance::{Chord, Instance, LinkSet};
use crate::local_search::{alpha_schedule, is_critical, min_n_max};
use crate::rational::{ceil, ceil_plus, check_alpha, int, is_nonnegative, ratio, Ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Pair {
    AA,
    AB,
    AC,
    AD,
    BB,
    BC,
    BD,
    CC,
    CD,
    DD,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Kind {
    M,
    P,
    MP,
    R,
}

impl Pair {
    pub const ALL: [Pair; 10] = [
        Pair::AA,
        Pair::AB,
        Pair::AC,
        Pair::AD,
        Pair::BB,
        Pair::BC,
        Pair::BD,
        Pair::CC,
        Pair::CD,
        Pair::DD,
    ];
}

impl Kind {
    pub const ALL: [Kind; 4] = [Kind::M, Kind::P, Kind::MP, Kind::R];
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format!("{self:?}").to_lowercase())
    }
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// Link classes that a critical `F` rules out entirely.
pub const ZERO_SET: [(Pair, Kind); 18] = [
    (Pair::AA, Kind::M),
    (Pair::AA, Kind::MP),
    (Pair::AA, Kind::P),
    (Pair::AB, Kind::M),
    (Pair::AB, Kind::MP),
    (Pair::AC, Kind::M),
    (Pair::AC, Kind::R),
    (Pair::AD, Kind::M),
    (Pair::AD, Kind::R),
    (Pair::BB, Kind::MP),
    (Pair::CC, Kind::P),
    (Pair::CC, Kind::MP),
    (Pair::CD, Kind::P),
    (Pair::CD, Kind::MP),
    (Pair::DD, Kind::M),
    (Pair::DD, Kind::P),
    (Pair::DD, Kind::MP),
    (Pair::DD, Kind::R),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Ell {
    Forbidden,
    Budget(i64),
}

/// The nonzero connect budgets at one α.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Ells {
    pub ac_mp: i64,
    pub ad_mp: i64,
    pub bb_m: i64,
    pub bc_m: i64,
    pub bc_mp: i64,
    pub bd_m: i64,
    pub bd_mp: i64,
    pub cc_m: i64,
    pub cd_m: i64,
}

impl Ells {
    pub fn new(alpha: Ratio) -> Result<Self> {
        let a = check_alpha(alpha)?;
        let d = a * 2 - 1;
        let up = |num: Ratio| ceil(num / d) as i64;
        let up_plus = |num: Ratio| ceil_plus(num / d) as i64;
        Ok(Ells {
            ac_mp: up(int(2) - a * 2),
            ad_mp: up_plus(int(2) - a * 3),
            bb_m: up(int(3) - a * 2),
            bc_m: up(int(4) - a * 2),
            bc_mp: up(int(2) - a * 2),
            bd_m: up(int(4) - a * 3),
            bd_mp: up_plus(int(2) - a * 3),
            cc_m: up(int(5) - a * 2),
            cd_m: up(int(5) - a * 3),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EllTable {
    pub alpha: Ratio,
    pub entries: BTreeMap<(Pair, Kind), Ell>,
}

impl EllTable {
    pub fn get(&self, pair: Pair, kind: Kind) -> Ell {
        self.entries[&(pair, kind)]
    }

    pub fn ells(&self) -> Ells {
        Ells::new(self.alpha).expect("validated at construction")
    }
}

pub fn ell_table(alpha: Ratio) -> Result<EllTable> {
    let e = Ells::new(alpha)?;
    let nonzero = [
        ((Pair::AC, Kind::MP), e.ac_mp),
        ((Pair::AD, Kind::MP), e.ad_mp),
        ((Pair::BB, Kind::M), e.bb_m),
        ((Pair::BC, Kind::M), e.bc_m),
        ((Pair::BC, Kind::MP), e.bc_mp),
        ((Pair::BD, Kind::M), e.bd_m),
        ((Pair::BD, Kind::MP), e.bd_mp),
        ((Pair::CC, Kind::M), e.cc_m),
        ((Pair::CD, Kind::M), e.cd_m),
    ];
    let mut entries = BTreeMap::new();
    for p in Pair::ALL {
        for k in Kind::ALL {
            entries.insert((p, k), Ell::Budget(0));
        }
    }
    for key in ZERO_SET {
        entries.insert(key, Ell::Forbidden);
    }
    for (key, v) in nonzero {
        entries.insert(key, Ell::Budget(v));
    }
    Ok(EllTable { alpha, entries })
}

/// `ℓ = ⌈(5−2α)/(2α−1)⌉`, the largest number of matching links one link
/// can connect.
pub fn ell(alpha: Ratio) -> Result<i64> {
    Ok(Ells::new(alpha)?.cc_m)
}

/// Budget for a link `e` given whether it crosses `F` (`x`), and how many
/// of its endpoints lie in `V(M)` and in `V(F)`:
/// `max{0, ⌈(5 − 2X − V_F − (4 − V_M − V_F)α)/(2α − 1)⌉}`.
pub fn ell_budget(x: bool, v_m: u8, v_f: u8, alpha: Ratio) -> Result<i64> {
    let a = check_alpha(alpha)?;
    if v_m + v_f > 2 {
        return Err(Error::Params(format!("a link has two endpoints, got V_M = {v_m}, V_F = {v_f}")));
    }
    let (x, v_m, v_f) = (int(x as i128), int(v_m as i128), int(v_f as i128));
    let num = int(5) - x * 2 - v_f - (int(4) - v_m - v_f) * a;
    Ok(ceil_plus(num / (a * 2 - 1)) as i64)
}

/// `(R, S, T)` with `R = 3 + 3ℓ_cd^M`, `S = 3 + 2ℓ_bd^M + ℓ_ad^MP`,
/// `T = 3 + 6ℓ_cd^M`.
pub fn rst(alpha: Ratio) -> Result<(i128, i128, i128)> {
    let e = Ells::new(alpha)?;
    let (cd, bd, ad) = (e.cd_m as i128, e.bd_m as i128, e.ad_mp as i128);
    Ok((3 + 3 * cd, 3 + 2 * bd + ad, 3 + 6 * cd))
}

/// Fraction of covered vertices at which the LP bound drops to `n/2`.
pub fn f_alpha(alpha: Ratio) -> Result<Ratio> {
    let (_, s, _) = rst(alpha)?;
    Ok(ratio(3, 2 * s))
}

/// `W(x, α) = (R − S x)/T`.
pub fn w(x: Ratio, alpha: Ratio) -> Result<Ratio> {
    let (r, s, t) = rst(alpha)?;
    Ok((int(r) - x * s) / t)
}

/// `max{n/2, n·W(|V(F)|/n, α)}`.
pub fn lp_value(n: u64, v_f: u64, alpha: Ratio) -> Result<Ratio> {
    check_interval(n, v_f)?;
    let (r, s, t) = rst(alpha)?;
    let n = int(n as i128);
    let closed = (n * r - int(v_f as i128) * s) / t;
    Ok(closed.max(n / 2))
}

fn check_interval(n: u64, v_f: u64) -> Result<()> {
    if n == 0 || v_f > n {
        return Err(Error::Interval { v_f, interval: format!("[0, {n}]") });
    }
    Ok(())
}

/// `2 − 2(1−α)f_α`.
pub fn ratio_bound(alpha: Ratio) -> Result<Ratio> {
    Ok(int(2) - int(2) * (int(1) - alpha) * f_alpha(alpha)?)
}

fn schedule_with_one(alphas: &[Ratio]) -> Result<Vec<Ratio>> {
    if alphas.is_empty() {
        return Err(Error::Params("empty alpha list".into()));
    }
    for &a in alphas {
        check_alpha(a)?;
    }
    if alphas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Params("alphas must be strictly ascending".into()));
    }
    let mut out = alphas.to_vec();
    if *out.last().expect("nonempty") != int(1) {
        out.push(int(1));
    }
    Ok(out)
}

/// `2 − 2 Σ_j (α_{j+1} − α_j) f_{α_j}` with `α_{s+1} = 1`.
pub fn refined_bound(alphas: &[Ratio]) -> Result<Ratio> {
    let full = schedule_with_one(alphas)?;
    let mut sum = Ratio::zero();
    for w in full.windows(2) {
        sum += (w[1] - w[0]) * f_alpha(w[0])?;
    }
    Ok(int(2) - sum * 2)
}

/// Running exact sum of small nonnegative fractions. The denominator is
/// grown by lcm steps against small operands only, so each addition is
/// linear in the size of the accumulator; one reduction at the end.
struct FractionSum {
    num: BigUint,
    den: BigUint,
}

impl FractionSum {
    fn new() -> Self {
        FractionSum { num: BigUint::zero(), den: BigUint::one() }
    }

    fn add(&mut self, p: u64, q: u64) {
        if p == 0 {
            return;
        }
        let r = (&self.den % q).to_u64().expect("remainder below q");
        let g = r.gcd(&q);
        let lift = q / g;
        let scale = &self.den / g;
        self.num = &self.num * lift + scale * p;
        self.den *= lift;
    }

    fn finish(self) -> BigRational {
        BigRational::new(self.num.into(), self.den.into())
    }
}

/// `refined_bound(alpha_schedule(k_max))` as an exact big rational.
pub fn integral_bound(k_max: u64) -> Result<BigRational> {
    if k_max == 0 {
        return Err(Error::Params("k_max must be at least 1".into()));
    }
    let full = alpha_schedule(k_max);
    let mut sum = FractionSum::new();
    for w in full.windows(2) {
        let term = (w[1] - w[0]) * f_alpha(w[0])?;
        let (p, q) = (term.numer().to_u64(), term.denom().to_u64());
        sum.add(p.expect("term fits u64"), q.expect("term fits u64"));
    }
    Ok(BigRational::from_integer(2.into()) - sum.finish() * BigRational::from_integer(2.into()))
}

// ---------------------------------------------------------------------------
// The simplified LP, written as `min c·x  s.t.  A x ≥ b,  x ≥ 0` with
// `b = b_n·n + b_v·|V(F)|`.

pub const LP_VARS: [&str; 16] = [
    "x_aa^R", "x_ab^P", "x_bb^M", "x_bb^P", "x_cc^M", "x_ad^P", "x_ad^MP", "x_ac^MP", "x_bc^M", "x_bc^MP",
    "x_bd^M", "x_bd^MP", "x_cd^M", "x_M", "x_A", "x_B",
];

const AA_R: usize = 0;
const AB_P: usize = 1;
const BB_M: usize = 2;
const BB_P: usize = 3;
const CC_M: usize = 4;
const AD_P: usize = 5;
const AD_MP: usize = 6;
const AC_MP: usize = 7;
const BC_M: usize = 8;
const BC_MP: usize = 9;
const BD_M: usize = 10;
const BD_MP: usize = 11;
const CD_M: usize = 12;
const X_M: usize = 13;
const X_A: usize = 14;
const X_B: usize = 15;
const NV: usize = LP_VARS.len();

#[derive(Clone, Debug, PartialEq)]
pub struct LpRow {
    pub name: &'static str,
    pub coeffs: [Ratio; NV],
    pub rhs_n: Ratio,
    pub rhs_v: Ratio,
}

impl LpRow {
    fn new(name: &'static str, terms: &[(usize, i64)], rhs_n: i64, rhs_v: i64) -> Self {
        let mut coeffs = [Ratio::zero(); NV];
        for &(j, c) in terms {
            coeffs[j] += int(c as i128);
        }
        LpRow { name, coeffs, rhs_n: int(rhs_n as i128), rhs_v: int(rhs_v as i128) }
    }

    pub fn rhs(&self, n: Ratio, v_f: Ratio) -> Ratio {
        self.rhs_n * n + self.rhs_v * v_f
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Lp {
    pub objective: [Ratio; NV],
    pub rows: Vec<LpRow>,
}

/// The simplified LP at `α`.
pub fn lp(alpha: Ratio) -> Result<Lp> {
    let e = Ells::new(alpha)?;
    let mut objective = [Ratio::one(); NV];
    objective[X_A] = Ratio::zero();
    objective[X_B] = Ratio::zero();
    let rows = vec![
        LpRow::new("cover A", &[(AA_R, 2), (AB_P, 1), (AD_P, 1), (AD_MP, 1), (AC_MP, 1), (X_A, -1)], 0, 0),
        LpRow::new(
            "cover B",
            &[(AB_P, 1), (BB_M, 2), (BB_P, 2), (BC_M, 1), (BC_MP, 1), (BD_M, 1), (BD_MP, 1), (X_B, -1)],
            0,
            0,
        ),
        LpRow::new("cover D", &[(AD_P, 1), (AD_MP, 1), (BD_M, 1), (BD_MP, 1), (CD_M, 1), (X_M, 2)], 1, -1),
        LpRow::new(
            "cross perimeter",
            &[(AB_P, 2), (AD_P, 2), (AD_MP, 2), (AC_MP, 2), (BB_P, 2), (BC_MP, 2), (BD_MP, 2), (X_B, -1)],
            0,
            0,
        ),
        LpRow::new(
            "connect matching",
            &[
                (BB_M, e.bb_m),
                (AD_MP, e.ad_mp),
                (AC_MP, e.ac_mp),
                (BD_M, e.bd_m),
                (BC_M, e.bc_m),
                (BC_MP, e.ac_mp),
                (CD_M, e.cd_m),
                (BD_MP, e.ad_mp),
                (CC_M, e.cc_m),
                (X_M, -1),
            ],
            0,
            0,
        ),
        LpRow::new("covered count", &[(X_A, 1), (X_B, 1)], 0, 1),
        LpRow::new("vertex budget", &[(X_M, -2), (X_A, -1), (X_B, -1)], -1, 0),
    ];
    Ok(Lp { objective, rows })
}

impl Lp {
    pub fn primal_objective(&self, x: &[Ratio; NV]) -> Ratio {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn dual_objective(&self, y: &[Ratio], n: Ratio, v_f: Ratio) -> Ratio {
        self.rows.iter().zip(y).map(|(r, yi)| r.rhs(n, v_f) * yi).sum()
    }

    /// Every violated primal constraint, by name.
    pub fn primal_violations(&self, x: &[Ratio; NV], n: Ratio, v_f: Ratio) -> Vec<String> {
        let mut out = Vec::new();
        for (j, v) in x.iter().enumerate() {
            if !is_nonnegative(v) {
                out.push(format!("{} = {v} < 0", LP_VARS[j]));
            }
        }
        for row in &self.rows {
            let lhs: Ratio = row.coeffs.iter().zip(x).map(|(a, v)| a * v).sum();
            let rhs = row.rhs(n, v_f);
            if lhs < rhs {
                out.push(format!("primal row '{}': {lhs} < {rhs}", row.name));
            }
        }
        out
    }

    /// Dual constraints are the columns of the primal: `Aᵀy ≤ c`, `y ≥ 0`.
    pub fn dual_violations(&self, y: &[Ratio]) -> Vec<String> {
        let mut out = Vec::new();
        for (i, v) in y.iter().enumerate() {
            if !is_nonnegative(v) {
                out.push(format!("y{} = {v} < 0", i + 1));
            }
        }
        for (j, name) in LP_VARS.iter().enumerate() {
            let lhs: Ratio = self.rows.iter().zip(y).map(|(r, yi)| r.coeffs[j] * yi).sum();
            if lhs > self.objective[j] {
                out.push(format!("dual column {name}: {lhs} > {}", self.objective[j]));
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Interval {
    /// `|V(F)| < f_α n`: the bound exceeds `n/2`.
    First,
    /// `|V(F)| ≥ f_α n`: the bound is `n/2`.
    Second,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpCertificate {
    pub n: u64,
    pub v_f: u64,
    pub alpha: Ratio,
    pub interval: Interval,
    pub primal: [Ratio; NV],
    pub dual: Vec<Ratio>,
    pub primal_objective: Ratio,
    pub dual_objective: Ratio,
}

impl LpCertificate {
    pub fn primal_by_name(&self) -> BTreeMap<&'static str, Ratio> {
        LP_VARS.iter().copied().zip(self.primal).collect()
    }
}

/// Optimal primal point for `|V(F)|` in the first interval.
pub fn table1_primal(n: Ratio, v_f: Ratio, alpha: Ratio) -> Result<[Ratio; NV]> {
    let e = Ells::new(alpha)?;
    let (ad, bd, cd) = (int(e.ad_mp as i128), int(e.bd_m as i128), int(e.cd_m as i128));
    let t = int(3) + cd * 6;
    let mut x = [Ratio::zero(); NV];
    x[X_A] = v_f / 3;
    x[X_B] = v_f * 2 / 3;
    x[X_M] = (cd * n * 3 + (ad + bd * 2 - cd * 6) * v_f) / t;
    if alpha > ratio(2, 3) {
        x[AD_P] = v_f / 3;
    } else {
        x[AD_MP] = v_f / 3;
    }
    x[BD_M] = v_f * 2 / 3;
    x[CD_M] = (n * 3 - v_f * (ad * 2 + bd * 4 + 6)) / t;
    Ok(x)
}

/// Feasible point with value `n/2` once every vertex is in `V(F)`.
fn saturated_primal(n: Ratio) -> [Ratio; NV] {
    let mut x = [Ratio::zero(); NV];
    x[X_A] = n / 3;
    x[X_B] = n * 2 / 3;
    x[AA_R] = n / 6;
    x[BB_P] = n / 3;
    x
}

/// Dual point optimal on the first interval.
pub fn table2_dual_first(alpha: Ratio) -> Result<Vec<Ratio>> {
    let e = Ells::new(alpha)?;
    let (ad, bd, cd) = (int(e.ad_mp as i128), int(e.bd_m as i128), int(e.cd_m as i128));
    let d = cd * 2 + 1;
    let y1 = (cd * 3 - bd * 2 - ad) / (d * 3);
    Ok(vec![y1, (cd - bd) / d, (cd + 1) / d, (bd - ad) / (d * 3), Ratio::one() / d, y1, Ratio::zero()])
}

/// Dual point with value `n/2`, feasible for every `|V(F)|`.
pub fn table2_dual_second() -> Vec<Ratio> {
    let h = ratio(1, 2);
    let z = Ratio::zero();
    vec![h, h, h, z, z, h, z]
}

/// Builds and checks primal and dual certificates for `lp_value(n, v_f, α)`.
pub fn lp_certificate(n: u64, v_f: u64, alpha: Ratio) -> Result<LpCertificate> {
    check_interval(n, v_f)?;
    let value = lp_value(n, v_f, alpha)?;
    let program = lp(alpha)?;
    let (nr, vr) = (int(n as i128), int(v_f as i128));
    let f = f_alpha(alpha)?;
    let boundary = f * nr;
    let (interval, primal, dual) = if vr < boundary {
        (Interval::First, table1_primal(nr, vr, alpha)?, table2_dual_first(alpha)?)
    } else {
        let start = table1_primal(nr, boundary, alpha)?;
        let end = saturated_primal(nr);
        let t = (vr - boundary) / (nr - boundary);
        let mut x = [Ratio::zero(); NV];
        for j in 0..NV {
            x[j] = start[j] * (int(1) - t) + end[j] * t;
        }
        (Interval::Second, x, table2_dual_second())
    };

    let mut problems = program.primal_violations(&primal, nr, vr);
    problems.extend(program.dual_violations(&dual));
    let primal_objective = program.primal_objective(&primal);
    let dual_objective = program.dual_objective(&dual, nr, vr);
    if primal_objective != dual_objective {
        problems.push(format!("primal objective {primal_objective} != dual objective {dual_objective}"));
    }
    if primal_objective != value {
        problems.push(format!("objective {primal_objective} != closed form {value}"));
    }
    if !problems.is_empty() {
        return Err(Error::CertificateInfeasible(format!(
            "n = {n}, |V(F)| = {v_f}, alpha = {alpha}: {}",
            problems.join("; ")
        )));
    }
    Ok(LpCertificate { n, v_f, alpha, interval, primal, dual, primal_objective, dual_objective })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexClasses {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
    pub c: Vec<u32>,
    pub d: Vec<u32>,
}

/// Internal (`A`) and border (`B`) vertices of `F`, matched vertices (`C`)
/// and the rest (`D`).
pub fn classify_vertices(n: u32, f: &[Chord], m: &[Chord]) -> Result<VertexClasses> {
    let partition = circle::components(n, f);
    if let Some(&s) = partition.singletons.first() {
        return Err(Error::Singleton(s));
    }
    let covered = partition.covered();
    if let Some(&e) = m.iter().find(|e| e.endpoints().iter().any(|v| covered.binary_search(v).is_ok())) {
        return Err(Error::Overlap(e));
    }
    let mut b: Vec<u32> = partition.components.iter().flat_map(|c| c.border_vertices()).collect();
    b.sort_unstable();
    b.dedup();
    let a: Vec<u32> = covered.iter().copied().filter(|v| b.binary_search(v).is_err()).collect();
    let c: Vec<u32> = m.iter().copied().collect::<LinkSet>().covered_vertices();
    let d = (1..=n)
        .filter(|v| covered.binary_search(v).is_err() && c.binary_search(v).is_err())
        .collect();
    Ok(VertexClasses { a, b, c, d })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundsReport {
    pub n: u32,
    pub v_f: u64,
    pub alpha: Ratio,
    pub size: usize,
    /// `⌈n/2⌉`
    pub half_bound: u64,
    /// Present only when `F` was re-verified critical with a large enough
    /// `N_max`, and withheld for an empty `F` on an even cycle.
    pub lp_bound: Option<Ratio>,
    pub lower_bound: Ratio,
    pub ratio: Ratio,
}

/// Lower bounds for `solution` and its certified ratio.
pub fn certify(inst: &Instance, f: &LinkSet, solution: &[Chord], alpha: Ratio, n_max: usize) -> Result<BoundsReport> {
    let n = inst.n();
    let report = feasibility::is_feasible_components(n, solution);
    if let Some(witness) = report.uncrossed_chord() {
        return Err(Error::InfeasibleInput { witness });
    }
    check_alpha(alpha)?;
    let v_f = f.covered_vertices().len() as u64;
    let half_bound = n.div_ceil(2) as u64;
    // With `F` empty an optimum may be a perfect matching that is already
    // one circle component. No link outside the matching is then needed to
    // connect it, so the connect row fails; such an optimum needs n even.
    let matching_optimum_possible = f.is_empty() && n % 2 == 0;
    let lp_bound = if !matching_optimum_possible && n_max >= min_n_max(alpha)? && is_critical(inst, f, alpha, n_max)? {
        Some(lp_value(n as u64, v_f, alpha)?)
    } else {
        None
    };
    let lower_bound = lp_bound.map_or(int(half_bound as i128), |lp| lp.max(int(half_bound as i128)));
    let size = solution.iter().copied().collect::<LinkSet>().len();
    Ok(BoundsReport {
        n,
        v_f,
        alpha,
        size,
        half_bound,
        lp_bound,
        lower_bound,
        ratio: int(size as i128) / lower_bound,
    })
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRow {
    pub alpha: Ratio,
    pub f_alpha: Ratio,
    pub ratio_bound: Ratio,
}

fn curve_row(alpha: Ratio) -> Result<CurveRow> {
    Ok(CurveRow { alpha, f_alpha: f_alpha(alpha)?, ratio_bound: ratio_bound(alpha)? })
}

/// One row per breakpoint of `f_α` up to `k_max`.
pub fn breakpoint_curve(k_max: u64) -> Result<Vec<CurveRow>> {
    alpha_schedule(k_max).into_iter().map(curve_row).collect()
}

/// Uniform grid `1/2 + i/(2·steps)`, merged with the breakpoints.
pub fn grid_curve(steps: u64, k_max: u64) -> Result<Vec<CurveRow>> {
    if steps == 0 {
        return Err(Error::Params("steps must be at least 1".into()));
    }
    let mut alphas: Vec<Ratio> = (1..=steps as i128).map(|i| ratio(1, 2) + ratio(i, 2 * steps as i128)).collect();
    alphas.extend(alpha_schedule(k_max));
    alphas.sort_unstable();
    alphas.dedup();
    alphas.into_iter().map(curve_row).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralRow {
    pub k: u64,
    /// `(k+4)/(2k+3)`, the smallest α of the first breakpoint family.
    pub alpha_k: Ratio,
    pub bound: BigRational,
}

pub fn integral_curve(ks: &[u64]) -> Result<Vec<IntegralRow>> {
    ks.iter()
        .map(|&k| {
            let kk = k as i128;
            Ok(IntegralRow { k, alpha_k: ratio(kk + 4, 2 * kk + 3), bound: integral_bound(k)? })
        })
        .collect()
}

/// Log-spaced `k` values `1, 2, 5, 10, 20, 50, …` up to `k_max`, always
/// ending at `k_max`.
pub fn log_spaced(k_max: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut base = 1u64;
    'outer: loop {
        for m in [1, 2, 5] {
            let k = base.saturating_mul(m);
            if k >= k_max {
                break 'outer;
            }
            out.push(k);
        }
        base = base.saturating_mul(10);
    }
    out.push(k_max);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn ells(a: Ratio) -> [i64; 7] {
        let e = Ells::new(a).unwrap();
        [e.ad_mp, e.ac_mp, e.bb_m, e.bc_m, e.bd_m, e.cc_m, e.cd_m]
    }

    #[test]
    fn ell_values() {
        assert_eq!(ells(ratio(3, 4)), [0, 1, 3, 5, 4, 7, 6]);
        assert_eq!(ells(ratio(8, 11)), [0, 2, 4, 6, 4, 8, 7]);
        assert_eq!(ells(int(1)), [0, 0, 1, 2, 1, 3, 2]);
        assert_eq!(ells(ratio(3, 5)), [1, 4, 9, 14, 11, 19, 16]);
        assert!(Ells::new(ratio(1, 2)).is_err());
    }

    #[test]
    fn table_shape() {
        let t = ell_table(ratio(3, 4)).unwrap();
        assert_eq!(t.entries.len(), 40);
        assert_eq!(t.get(Pair::CC, Kind::M), Ell::Budget(7));
        assert_eq!(t.get(Pair::DD, Kind::R), Ell::Forbidden);
        assert_eq!(t.get(Pair::AA, Kind::R), Ell::Budget(0));
        let forbidden = t.entries.values().filter(|e| **e == Ell::Forbidden).count();
        assert_eq!(forbidden, 18);
    }

    #[test]
    fn budgets_reproduce_the_table() {
        // (pair, kind, X, V_F, V_M)
        let cases = [
            (Pair::AC, Kind::MP, true, 1, 1),
            (Pair::AD, Kind::MP, true, 1, 0),
            (Pair::BB, Kind::M, false, 2, 0),
            (Pair::BC, Kind::M, false, 1, 1),
            (Pair::BC, Kind::MP, true, 1, 1),
            (Pair::BD, Kind::M, false, 1, 0),
            (Pair::BD, Kind::MP, true, 1, 0),
            (Pair::CC, Kind::M, false, 0, 2),
            (Pair::CD, Kind::M, false, 0, 1),
        ];
        for a in [ratio(3, 5), ratio(2, 3), ratio(7, 10), ratio(8, 11), ratio(3, 4), ratio(9, 10), int(1)] {
            let t = ell_table(a).unwrap();
            for (p, k, x, v_f, v_m) in cases {
                assert_eq!(Ell::Budget(ell_budget(x, v_m, v_f, a).unwrap()), t.get(p, k), "{p}{k} at {a}");
            }
            // crossing F with both endpoints in V(F) leaves no budget
            assert_eq!(ell_budget(true, 0, 2, a).unwrap(), 0);
            let top = ell(a).unwrap();
            for x in [false, true] {
                for v_m in 0..=2u8 {
                    for v_f in 0..=2 - v_m {
                        assert!(ell_budget(x, v_m, v_f, a).unwrap() <= top);
                    }
                }
            }
        }
        assert!(ell_budget(false, 2, 1, ratio(3, 4)).is_err());
    }

    #[test]
    fn f_alpha_values() {
        assert_eq!(f_alpha(ratio(3, 4)).unwrap(), ratio(3, 22));
        assert_eq!(f_alpha(ratio(8, 11)).unwrap(), ratio(3, 22));
        assert_eq!(f_alpha(int(1)).unwrap(), ratio(3, 10));
        assert_eq!(f_alpha(ratio(3, 5)).unwrap(), ratio(3, 52));
        assert_eq!(f_alpha(ratio(2, 3)).unwrap(), ratio(1, 10));
        assert_eq!(f_alpha(ratio(7, 10)).unwrap(), ratio(3, 26));
        assert_eq!(f_alpha(ratio(9, 10)).unwrap(), ratio(3, 14));
    }

    #[test]
    fn ratio_bounds() {
        assert_eq!(ratio_bound(ratio(8, 11)).unwrap(), ratio(233, 121));
        assert_eq!(ratio_bound(ratio(3, 4)).unwrap(), ratio(85, 44));
        assert_eq!(refined_bound(&[ratio(3, 4)]).unwrap(), ratio_bound(ratio(3, 4)).unwrap());
        assert_eq!(refined_bound(&[ratio(3, 4), int(1)]).unwrap(), ratio_bound(ratio(3, 4)).unwrap());
        assert!(refined_bound(&[int(1), ratio(3, 4)]).is_err());
    }

    #[test]
    fn lp_value_examples() {
        assert_eq!(lp_value(13, 0, ratio(3, 4)).unwrap(), int(7));
        assert_eq!(lp_value(22, 3, ratio(3, 4)).unwrap(), int(11));
        assert_eq!(lp_value(44, 20, ratio(3, 4)).unwrap(), int(22));
        for v in 1..=22 {
            assert!(lp_value(22, v, ratio(3, 4)).unwrap() <= lp_value(22, v - 1, ratio(3, 4)).unwrap());
        }
        assert!(lp_value(10, 11, ratio(3, 4)).is_err());
    }

    #[test]
    fn w_is_one_half_at_f_alpha() {
        for a in [ratio(3, 5), ratio(2, 3), ratio(3, 4), int(1)] {
            assert_eq!(w(f_alpha(a).unwrap(), a).unwrap(), ratio(1, 2));
            let (r, s, _) = rst(a).unwrap();
            assert!(3 * s - r > 0);
        }
    }

    #[test]
    fn dual_first_column_at_three_quarters() {
        let y = table2_dual_first(ratio(3, 4)).unwrap();
        assert_eq!(y[2], ratio(7, 13));
        assert_eq!(y[5], ratio(10, 39));
    }

    #[test]
    fn certificates_verify() {
        let c = lp_certificate(22, 3, ratio(3, 4)).unwrap();
        assert_eq!(c.primal_objective, int(11));
        assert_eq!(c.interval, Interval::Second);
        let c = lp_certificate(39, 0, ratio(3, 4)).unwrap();
        assert_eq!(c.dual_objective, int(21));
        assert_eq!(c.interval, Interval::First);
        for v in 0..=60 {
            lp_certificate(60, v, ratio(2, 3)).unwrap();
        }
    }

    #[test]
    fn classify_examples() {
        let ch = Chord::unchecked;
        let blue = [ch(1, 3), ch(2, 5), ch(3, 6), ch(4, 7)];
        let cl = classify_vertices(12, &blue, &[]).unwrap();
        assert_eq!(cl.a, vec![2, 3, 4, 5, 6]);
        assert_eq!(cl.b, vec![1, 7]);
        assert_eq!(cl.d, vec![8, 9, 10, 11, 12]);
        let cl = classify_vertices(8, &[], &[ch(1, 3)]).unwrap();
        assert!(cl.a.is_empty() && cl.b.is_empty());
        assert_eq!(cl.c, vec![1, 3]);
        assert_eq!(cl.d.len(), 6);
        assert_eq!(classify_vertices(12, &blue, &[ch(2, 9)]), Err(Error::Overlap(ch(2, 9))));
    }

    #[test]
    fn integral_bound_small() {
        let one = integral_bound(1).unwrap();
        let exact = refined_bound(&alpha_schedule(1)).unwrap();
        assert_eq!(one, BigRational::new((*exact.numer()).into(), (*exact.denom()).into()));
        let b10 = integral_bound(10).unwrap().to_f64().unwrap();
        assert!((b10 - 1.8711).abs() < 1e-3, "{b10}");
    }

    #[test]
    fn log_spacing() {
        assert_eq!(log_spaced(1), vec![1]);
        assert_eq!(log_spaced(100), vec![1, 2, 5, 10, 20, 50, 100]);
        assert_eq!(log_spaced(30), vec![1, 2, 5, 10, 20, 30]);
    }
}
