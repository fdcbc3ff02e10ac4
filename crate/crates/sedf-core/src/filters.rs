//! Parameter enumeration and the nonexistence filter battery.
//!
//! Every filter is a parameter-level statement: it may declare a
//! `(v, m, k, lambda)` set nonexistent in *all* abelian groups of order `v`.
//! Filters never enumerate group elements, so there is no order cap here.
//! [`group_constraints`] additionally derives per-group exponent bounds for
//! parameter sets that survive classification.
//!
//! Reason attribution is first-match in the fixed execution order below, but
//! a verdict records every filter that fired: several theorems often exclude
//! the same parameter set.

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::facts::{FactKind, KnownFactsTable};
use crate::group::{enumerate_abelian_groups, GroupSpec};
use crate::nt::{
    factorize, gcd, is_prime, nt_is_primitive_root, nt_is_self_conjugate, nt_valuation, prime_power,
};

type Rat = Ratio<i128>;

/// A candidate parameter set. The constructor enforces the counting relation
/// `k^2 (m-1) = lambda (v-1)` that every family satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ParamSet {
    pub v: u64,
    pub m: u64,
    pub k: u64,
    pub lambda: u64,
}

/// Largest order the classifier accepts. Filter arithmetic runs in 128-bit
/// integers and exact rationals whose intermediates are bounded by small
/// powers of `v`; this limit keeps every product far from overflow.
pub const CLASSIFIER_V_MAX: u64 = 1_000_000_000;

impl ParamSet {
    pub fn new(v: u64, m: u64, k: u64, lambda: u64) -> Result<Self> {
        if v < 2 || m < 2 || k < 1 || lambda < 1 {
            return Err(Error::InvalidParams(format!(
                "({v},{m},{k},{lambda}): need v,m >= 2 and k,lambda >= 1"
            )));
        }
        if v > CLASSIFIER_V_MAX {
            return Err(Error::InvalidParams(format!(
                "v = {v} exceeds the classifier arithmetic bound {CLASSIFIER_V_MAX}"
            )));
        }
        if m > v || k >= v || lambda >= v {
            return Err(Error::InvalidParams(format!(
                "({v},{m},{k},{lambda}): m, k and lambda cannot reach v"
            )));
        }
        if k as u128 * k as u128 * (m as u128 - 1) != lambda as u128 * (v as u128 - 1) {
            return Err(Error::InvalidParams(format!(
                "({v},{m},{k},{lambda}) violates k^2(m-1) = lambda(v-1)"
            )));
        }
        Ok(ParamSet { v, m, k, lambda })
    }

    pub fn is_near_complete(&self) -> bool {
        self.v == self.k * self.m + 1
    }
}

impl std::fmt::Display for ParamSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.m, self.k, self.lambda)
    }
}

/// Coprime pair `(a, b)`, `b > a > 0`, surviving the divisibility battery
/// for a given `(m, lambda)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct ABPair {
    pub a: u64,
    pub b: u64,
}

impl ABPair {
    /// `|chi(D)|^2 = 4 a^2 lambda / (b^2 - a^2)`; exact for feasible pairs.
    fn union_norm(&self, lambda: u64) -> u128 {
        let num = 4 * self.a as u128 * self.a as u128 * lambda as u128;
        let den = (self.b * self.b - self.a * self.a) as u128;
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Larger branch value `(b+a) lambda / (b-a)`.
    fn plus_norm(&self, lambda: u64) -> u128 {
        let num = (self.b + self.a) as u128 * lambda as u128;
        let den = (self.b - self.a) as u128;
        debug_assert_eq!(num % den, 0);
        num / den
    }

    /// Smaller branch value `(b-a) lambda / (b+a)`.
    fn minus_norm(&self, lambda: u64) -> u128 {
        let num = (self.b - self.a) as u128 * lambda as u128;
        let den = (self.b + self.a) as u128;
        debug_assert_eq!(num % den, 0);
        num / den
    }
}

/// Identifier of a single filter (or of the facts lookup).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum FilterId {
    Triv,
    P4(u8),
    M2KPrime,
    TwoPrime,
    Exp,
    ExpBoundary,
    Ab,
    Syl,
    Scvp,
    Pp,
    PpScvp,
    NearComplete,
    Facts,
    DerivedBound,
    /// Self-conjugacy exponent bound; only a cap source in
    /// [`group_constraints`], never a classifier.
    ExpSelfConjugate,
}

impl FilterId {
    pub fn id(&self) -> String {
        match self {
            FilterId::Triv => "F-triv".into(),
            FilterId::P4(i) => format!("F-P4-{i}"),
            FilterId::M2KPrime => "F-M2KP".into(),
            FilterId::TwoPrime => "F-2P".into(),
            FilterId::Exp => "F-EXP".into(),
            FilterId::ExpBoundary => "F-EXP-B".into(),
            FilterId::Ab => "F-AB".into(),
            FilterId::Syl => "F-SYL".into(),
            FilterId::Scvp => "F-SCVP".into(),
            FilterId::Pp => "F-PP".into(),
            FilterId::PpScvp => "F-PP-SCVP".into(),
            FilterId::NearComplete => "F-NC".into(),
            FilterId::Facts => "F-FACTS".into(),
            FilterId::DerivedBound => "F-DERIVED".into(),
            FilterId::ExpSelfConjugate => "F-EXP2".into(),
        }
    }
}

/// Which filters run. Presets are pinned so golden open-case lists stay
/// byte-stable: extra filters could legitimately shrink them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Preset {
    /// Exactly the combination behind the published 70-case open list for
    /// m > 2: the triviality and pair-divisibility lemmas, item (4) of the
    /// known nonexistence conditions, the exponent bound, and the four
    /// Sylow / character-class / prime-power theorems.
    PaperRemark,
    /// The m = 2 toolset: triviality, prime-k, two-prime and exponent-bound
    /// filters, near-complete reduction, known facts.
    M2,
    /// Everything.
    Full,
}

impl Preset {
    pub fn name(&self) -> &'static str {
        match self {
            Preset::PaperRemark => "paper-remark",
            Preset::M2 => "m2",
            Preset::Full => "full",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "paper-remark" => Ok(Preset::PaperRemark),
            "m2" => Ok(Preset::M2),
            "full" => Ok(Preset::Full),
            other => Err(Error::InvalidParams(format!("unknown preset `{other}`"))),
        }
    }

    fn active(&self, f: FilterId) -> bool {
        match self {
            Preset::Full => !matches!(f, FilterId::DerivedBound | FilterId::ExpSelfConjugate),
            Preset::PaperRemark => matches!(
                f,
                FilterId::Triv
                    | FilterId::P4(4)
                    | FilterId::Ab
                    | FilterId::Exp
                    | FilterId::Syl
                    | FilterId::Scvp
                    | FilterId::Pp
                    | FilterId::PpScvp
                    | FilterId::Facts
            ),
            Preset::M2 => matches!(
                f,
                FilterId::Triv
                    | FilterId::P4(6)
                    | FilterId::M2KPrime
                    | FilterId::TwoPrime
                    | FilterId::Exp
                    | FilterId::ExpBoundary
                    | FilterId::NearComplete
                    | FilterId::Facts
            ),
        }
    }
}

/// Classification outcome for one parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum Status {
    Trivial,
    Exists,
    Nonexistent,
    Open,
    OpenNearCompletePdsReduced,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Trivial => "TRIVIAL",
            Status::Exists => "EXISTS",
            Status::Nonexistent => "NONEXISTENT",
            Status::Open => "OPEN",
            Status::OpenNearCompletePdsReduced => "OPEN_NEAR_COMPLETE_PDS_REDUCED",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Reason {
    pub filter: FilterId,
    pub citation: String,
}

impl Reason {
    fn new(filter: FilterId, citation: impl Into<String>) -> Self {
        Reason {
            filter,
            citation: citation.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Verdict {
    pub status: Status,
    /// Ordered justification; nonexistent verdicts carry at least one entry,
    /// existence verdicts carry a witness or a facts citation.
    pub reasons: Vec<Reason>,
    pub witness: Option<String>,
}

/// Extra configuration around a preset.
#[derive(Debug, Clone, Copy)]
pub struct FilterConfig {
    pub preset: Preset,
    /// Derived pruning bound `(b+a) lambda / (b-a) <= k^2` (sound but not
    /// part of the pinned preset combinations); off by default.
    pub extra_pruning: bool,
}

impl FilterConfig {
    pub fn new(preset: Preset) -> Self {
        FilterConfig {
            preset,
            extra_pruning: false,
        }
    }
}

// ---------------------------------------------------------------------------
// enumeration
// ---------------------------------------------------------------------------

/// Smallest `t` with `n | t^2`.
fn squarefull_root(n: u64) -> u64 {
    factorize(n)
        .into_iter()
        .map(|(p, e)| p.pow(e.div_ceil(2)))
        .product()
}

/// All `(v, m, k, lambda)` with `2 <= v <= v_max`, `m` in range, `k >= 2`,
/// `lambda >= 1`, satisfying the counting relation and `v > km`, ordered by
/// `(v, m, k, lambda)`.
pub fn enumerate_params(v_max: u64, m_min: u64, m_max: u64) -> Vec<ParamSet> {
    let mut out = Vec::new();
    let m_min = m_min.max(2);
    for v in 5..=v_max {
        // v > km >= 2m bounds m; k >= 2 bounds it further below
        let m_hi = m_max.min((v - 1) / 2);
        for m in m_min..=m_hi {
            let g = gcd(v - 1, m - 1);
            let n = (v - 1) / g;
            let t = squarefull_root(n);
            // k must be a multiple of t for (v-1) | k^2 (m-1)
            let mut k = t;
            while k * m < v {
                if k >= 2 {
                    let lambda = (k as u128 * k as u128 * (m as u128 - 1)) / (v as u128 - 1);
                    if lambda >= 1 {
                        out.push(ParamSet {
                            v,
                            m,
                            k,
                            lambda: lambda as u64,
                        });
                    }
                }
                k += t;
            }
        }
    }
    out.sort();
    out
}

// ---------------------------------------------------------------------------
// pair feasibility and character class sizes
// ---------------------------------------------------------------------------

/// All coprime pairs `(a, b)` with `b > a > 0` compatible with integral
/// branch counts for an `(v, m, k, lambda)` family with `m > 2`:
/// `b | m-2`, `2b | bm - a(m-2)`, `(b∓a) | (b±a) lambda`, `(b^2-a^2) | 4
/// lambda`, and `(b^2-a^2) | lambda` when `a + b` is odd.
///
/// An empty result proves nonexistence, since some pair is realized by every
/// family (the characters not vanishing on the union are never empty).
pub fn feasible_ab_pairs(m: u64, lambda: u64) -> Vec<ABPair> {
    assert!(m > 2, "pair feasibility is defined for m > 2");
    let mut out = Vec::new();
    let m2 = m - 2;
    for b in 2..=m2 {
        if !m2.is_multiple_of(b) {
            continue;
        }
        for a in 1..b {
            if gcd(a, b) != 1 {
                continue;
            }
            let bm = b as u128 * m as u128;
            let am2 = a as u128 * m2 as u128;
            if !(bm - am2).is_multiple_of(2 * b as u128) {
                continue;
            }
            let (d, s) = ((b - a) as u128, (b + a) as u128);
            let lam = lambda as u128;
            if !(s * lam).is_multiple_of(d) || !(d * lam).is_multiple_of(s) {
                continue;
            }
            let ds = d * s; // b^2 - a^2
            if !(4 * lam).is_multiple_of(ds) {
                continue;
            }
            if s % 2 == 1 && !lam.is_multiple_of(ds) {
                continue;
            }
            out.push(ABPair { a, b });
        }
    }
    out
}

/// Exact sizes of the three character classes (vanishing on the union,
/// larger branch, smaller branch) for a family with the simple character
/// value property with respect to `(a, b)`:
///
/// ```text
/// |G^0| = (v-1) (1 - (b^2-a^2)(v-km) m / (4 a^2 k (m-1)))
/// |G^+| = (v-1)(v-km)(b^2-a^2)((b-a)m + 2a) / (8 a^2 b k (m-1))
/// |G^-| = (v-1)(v-km)(b^2-a^2)((b+a)m - 2a) / (8 a^2 b k (m-1))
/// ```
pub fn scvp_counts(p: &ParamSet, ab: &ABPair) -> (Rat, Rat, Rat) {
    let v = p.v as i128;
    let m = p.m as i128;
    let k = p.k as i128;
    let (a, b) = (ab.a as i128, ab.b as i128);
    let ds = b * b - a * a;
    let excess = v - k * m;

    let g0 = Rat::from(v - 1) * (Rat::from(1) - Rat::new(ds * excess * m, 4 * a * a * k * (m - 1)));
    let gp = Rat::new(
        (v - 1) * excess * ds * ((b - a) * m + 2 * a),
        8 * a * a * b * k * (m - 1),
    );
    let gm = Rat::new(
        (v - 1) * excess * ds * ((b + a) * m - 2 * a),
        8 * a * a * b * k * (m - 1),
    );
    (g0, gp, gm)
}

/// All three class sizes are non-negative integers and at least one
/// character does not vanish on the union.
pub fn scvp_admissible(p: &ParamSet, ab: &ABPair) -> bool {
    let (g0, gp, gm) = scvp_counts(p, ab);
    let ok = |r: &Rat| r.is_integer() && !r.is_negative();
    ok(&g0) && ok(&gp) && ok(&gm) && !(gp + gm).is_zero()
}

// ---------------------------------------------------------------------------
// individual filters
// ---------------------------------------------------------------------------

fn f_triv(p: &ParamSet) -> Option<Reason> {
    if gcd(p.k, p.v - 1) == 1 && p.k > 1 {
        return Some(Reason::new(
            FilterId::Triv,
            format!(
                "gcd(k, v-1) = 1 makes lambda/k^2 integral and forces k = 1, but k = {}",
                p.k
            ),
        ));
    }
    None
}

fn f_p4(p: &ParamSet, preset: &Preset, out: &mut Vec<Reason>) {
    let (v, m, k, lambda) = (p.v, p.m, p.k, p.lambda);
    let mut item = |i: u8, fired: bool, text: &str| {
        if fired && preset.active(FilterId::P4(i)) {
            out.push(Reason::new(FilterId::P4(i), text));
        }
    };
    item(
        1,
        m == 3 || m == 4,
        "no nontrivial family with m in {3,4} (Martin and Stinson 2017, Theorems 3.3 and 3.6)",
    );
    item(
        2,
        m > 2 && is_prime(v),
        "no nontrivial family with m > 2 and prime v (Martin and Stinson 2017, Theorem 3.9)",
    );
    item(
        3,
        m > 2 && lambda == 2,
        "no nontrivial family with m > 2 and lambda = 2 (Huczynska and Paterson 2018, Corollary 3.2)",
    );
    item(
        4,
        m > 2
            && lambda > 1
            && lambda as u128 * (k as u128 - 1) * (m as u128 - 2)
                > (lambda as u128 - 1) * k as u128 * (m as u128 - 1),
        "lambda(k-1)(m-2) > (lambda-1)k(m-1) (Huczynska and Paterson 2018, Theorem 3.5)",
    );
    let p5 = m > 2
        && factorize(v)
            .iter()
            .any(|&(q, _)| gcd(k * m, q) == 1 && m % q != 2 % q);
    item(
        5,
        p5,
        "a prime p | v has gcd(km, p) = 1 and m != 2 (mod p) (Bao, Ji, Wei and Zhang 2017, Theorem 3.5)",
    );
    item(
        6,
        lambda >= k,
        "lambda >= k (Bao, Ji, Wei and Zhang 2017, Lemma 1.1)",
    );
}

fn f_m2kp(p: &ParamSet) -> Option<Reason> {
    if p.m == 2 && is_prime(p.k) && p.lambda > 1 {
        return Some(Reason::new(
            FilterId::M2KPrime,
            "m = 2 with prime k forces lambda = 1 (Huczynska and Paterson 2018, Lemma 3.4)",
        ));
    }
    None
}

/// Two-prime filter for m = 2 and k = p1 p2 (p1 < p2 distinct primes): the
/// remaining values lambda in {p1, p2, p1^2} are excluded by prime-ideal
/// valuation arguments at a suitable prime divisor of v.
fn f_2p(p: &ParamSet) -> Option<Reason> {
    if p.m != 2 {
        return None;
    }
    let kf = factorize(p.k);
    if kf.len() != 2 || kf[0].1 != 1 || kf[1].1 != 1 {
        return None;
    }
    let (p1, p2) = (kf[0].0, kf[1].0);
    for (q, d) in factorize(p.v) {
        let qd = q.pow(d);
        let fired = if p.lambda == p1 {
            // v = p1 p2^2 + 1
            nt_is_primitive_root(p1, qd) && p2 * p2 < q
        } else if p.lambda == p2 {
            // v = p1^2 p2 + 1
            nt_is_primitive_root(p2, qd) && p1 * p1 < q
        } else if p.lambda == p1 * p1 {
            // v = p2^2 + 1
            (nt_is_primitive_root(p1, qd) && p2 * p2 + 1 < p1 * q)
                || (nt_is_primitive_root(p1, q) && p2 * p2 + 1 == p1 * q)
        } else {
            false
        };
        if fired {
            return Some(Reason::new(
                FilterId::TwoPrime,
                format!(
                    "two-prime valuation argument at p = {q}: k = {p1}*{p2}, lambda = {}",
                    p.lambda
                ),
            ));
        }
    }
    None
}

/// Exponent-bound caps: for each `(p, d)` with `p^d || v` and each prime
/// `q^f || lambda` with `q` a primitive root modulo `p^d`, every group needs
/// `exp(G_p) <= v / q^ceil(f/2)`. Returns `(p, q^ceil(f/2))` caps.
fn exponent_bound_caps(p: &ParamSet) -> Vec<(u64, u64)> {
    let mut caps = Vec::new();
    for (pp, d) in factorize(p.v) {
        for (q, f) in factorize(p.lambda) {
            if q == pp {
                continue;
            }
            if nt_is_primitive_root(q, pp.pow(d)) {
                caps.push((pp, q.pow(f.div_ceil(2))));
            }
        }
    }
    caps
}

fn f_exp(p: &ParamSet) -> Option<Reason> {
    for (pp, qc) in exponent_bound_caps(p) {
        // bound v/qc below p leaves no valid exponent for G_p
        if p.v < pp * qc {
            return Some(Reason::new(
                FilterId::Exp,
                format!(
                    "exponent bound exp(G_{pp}) <= {}/{qc} < {pp} is unsatisfiable",
                    p.v
                ),
            ));
        }
    }
    None
}

/// Boundary case of the exponent bound: when `v = p * q^ceil(f/2)` with
/// `p || v` prime and `q` a primitive root modulo `p`, the projection
/// coefficients are forced to be constant (so `p` divides a subset size) or
/// to describe a union of cosets (so some character vanishes on a subset,
/// which the defining equation forbids).
fn f_exp_boundary(p: &ParamSet) -> Option<Reason> {
    for (pp, d) in factorize(p.v) {
        if d != 1 {
            continue;
        }
        for (q, f) in factorize(p.lambda) {
            if q == pp || !nt_is_primitive_root(q, pp) {
                continue;
            }
            let qc = q.pow(f.div_ceil(2));
            if p.v == pp * qc
                && !p.k.is_multiple_of(pp)
                && !(p.k as u128 * (p.m as u128 - 1)).is_multiple_of(pp as u128)
            {
                return Some(Reason::new(
                    FilterId::ExpBoundary,
                    format!(
                        "exponent bound boundary at p = {pp}: v = {pp}*{qc} forces a coset union or {pp} | subset size"
                    ),
                ));
            }
        }
    }
    None
}

/// Branch (1a)+(1b) of the Sylow counting conditions at prime `pp`
/// (`|G_p| = p^d` with `p^d || v`).
fn syl_branch1(p: &ParamSet, pp: u64, d: u32) -> bool {
    let gp = pp.pow(d) as u128;
    let km = p.k as u128 * p.m as u128;
    if !km.is_multiple_of(gp) {
        return false;
    }
    let val = p.k as u128 * p.k as u128 + (gp - 1) * p.lambda as u128;
    val.is_multiple_of(gp) && val / gp >= p.k as u128
}

/// Branch (2a)+(2b)+(2c) of the Sylow counting conditions at prime `pp` for
/// a specific pair.
fn syl_branch2(p: &ParamSet, pp: u64, ab: &ABPair) -> bool {
    let pr = pp as u128;
    let km = p.k as u128 * p.m as u128;
    let k2 = p.k as u128 * p.k as u128;
    // (2a): k^2 m^2 + (p-1) |chi(D)|^2 = p r2, r2 >= km
    let a2 = km * km + (pr - 1) * ab.union_norm(p.lambda);
    if !a2.is_multiple_of(pr) || a2 / pr < km {
        return false;
    }
    // (2b): k^2 + (p-1) (b-a)lambda/(b+a) = p r3, r3 >= k
    let b2 = k2 + (pr - 1) * ab.minus_norm(p.lambda);
    if !b2.is_multiple_of(pr) || b2 / pr < p.k as u128 {
        return false;
    }
    // (2c): k^2 + (p-1) (b+a)lambda/(b-a) = p r4 (r4 unbounded)
    let c2 = k2 + (pr - 1) * ab.plus_norm(p.lambda);
    c2.is_multiple_of(pr)
}

/// Primitive-root primes of odd valuation inside a pair's realized value
/// set, for prime-power `v = p^s`. Returns the offending `(q, u)` if any.
fn pp_odd_valuation(v: u64, values: &[u128]) -> Option<(u64, u128)> {
    for &u in values {
        if u == 0 {
            continue;
        }
        for (q, _) in factorize(u as u64) {
            if nt_is_primitive_root(q, v) {
                let f = nt_valuation(q, u as i128).expect("u nonzero");
                if f % 2 == 1 {
                    return Some((q, u));
                }
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// classification
// ---------------------------------------------------------------------------

/// State shared between classification and group-constraint analysis for
/// m > 2 parameter sets: the admissible pair set after sound narrowing.
struct PairAnalysis {
    pairs: Vec<ABPair>,
    narrowing: Vec<Reason>,
    reasons: Vec<Reason>,
}

fn analyze_pairs(p: &ParamSet, cfg: &FilterConfig) -> PairAnalysis {
    let preset = &cfg.preset;
    let mut reasons = Vec::new();
    let mut narrowing = Vec::new();
    let mut singleton_checked: Option<ABPair> = None;

    let mut pairs = feasible_ab_pairs(p.m, p.lambda);
    if preset.active(FilterId::Ab) && pairs.is_empty() {
        reasons.push(Reason::new(
            FilterId::Ab,
            "no coprime (a,b) satisfies the branch-count divisibility constraints",
        ));
        return PairAnalysis {
            pairs,
            narrowing,
            reasons,
        };
    }

    if cfg.extra_pruning {
        let before = pairs.len();
        pairs.retain(|ab| ab.plus_norm(p.lambda) <= p.k as u128 * p.k as u128);
        if pairs.len() < before {
            narrowing.push(Reason::new(
                FilterId::DerivedBound,
                "pruned pairs with (b+a)lambda/(b-a) > k^2 (subset character sums are at most k in modulus)",
            ));
        }
        if pairs.is_empty() {
            reasons.push(Reason::new(
                FilterId::DerivedBound,
                "every admissible pair violates (b+a)lambda/(b-a) <= k^2",
            ));
            return PairAnalysis {
                pairs,
                narrowing,
                reasons,
            };
        }
    }

    // parameter-level Sylow filter: at every prime p | v, either branch 1
    // holds or some pair satisfies branch 2
    if preset.active(FilterId::Syl) {
        for (pp, d) in factorize(p.v) {
            if !syl_branch1(p, pp, d) && !pairs.iter().any(|ab| syl_branch2(p, pp, ab)) {
                reasons.push(Reason::new(
                    FilterId::Syl,
                    format!("Sylow counting conditions fail at p = {pp} for every admissible pair"),
                ));
                return PairAnalysis {
                    pairs,
                    narrowing,
                    reasons,
                };
            }
        }
    }

    // narrowing only shrinks the admissible set, so the simple character
    // value property is forced as soon as any stage is a singleton
    singleton_checks(p, preset, &pairs, &mut singleton_checked, &mut reasons);

    // prime-power narrowing: for v = p^s every character lifts through the
    // Sylow projection, so every realized pair must satisfy branch 2, and
    // every realized value set must avoid odd primitive-root valuations
    if let Some((pp, _)) = prime_power(p.v) {
        if preset.active(FilterId::Syl) {
            let before = pairs.len();
            pairs.retain(|ab| syl_branch2(p, pp, ab));
            if pairs.len() < before {
                narrowing.push(Reason::new(
                    FilterId::Syl,
                    format!("pairs failing the Sylow counting conditions at p = {pp} cannot be realized"),
                ));
            }
            if pairs.is_empty() {
                reasons.push(Reason::new(
                    FilterId::Syl,
                    format!("Sylow counting conditions at p = {pp} exclude every admissible pair"),
                ));
                return PairAnalysis {
                    pairs,
                    narrowing,
                    reasons,
                };
            }
            singleton_checks(p, preset, &pairs, &mut singleton_checked, &mut reasons);
        }
        if preset.active(FilterId::Pp) {
            let before = pairs.len();
            pairs.retain(|ab| {
                let values = [
                    ab.union_norm(p.lambda),
                    ab.plus_norm(p.lambda),
                    ab.minus_norm(p.lambda),
                ];
                pp_odd_valuation(p.v, &values).is_none()
            });
            if pairs.len() < before {
                narrowing.push(Reason::new(
                    FilterId::Pp,
                    "pairs whose realized norms carry a primitive-root prime at odd valuation cannot occur",
                ));
            }
            if pairs.is_empty() {
                reasons.push(Reason::new(
                    FilterId::Pp,
                    "every admissible pair leaves a primitive-root prime at odd valuation",
                ));
                return PairAnalysis {
                    pairs,
                    narrowing,
                    reasons,
                };
            }
            singleton_checks(p, preset, &pairs, &mut singleton_checked, &mut reasons);
        }
    }

    PairAnalysis {
        pairs,
        narrowing,
        reasons,
    }
}

/// Checks applying once the admissible set is a singleton, i.e. once the
/// simple character value property is forced: integrality and
/// non-negativity of the character class sizes, the lambda valuation test
/// for prime powers, and the parity constraint from self-conjugacy of 2.
fn singleton_checks(
    p: &ParamSet,
    preset: &Preset,
    pairs: &[ABPair],
    already: &mut Option<ABPair>,
    reasons: &mut Vec<Reason>,
) {
    let [ab] = pairs else { return };
    if *already == Some(*ab) {
        return;
    }
    *already = Some(*ab);

    let admissible = scvp_admissible(p, ab);
    if preset.active(FilterId::Scvp) && !admissible {
        let (g0, gp, gm) = scvp_counts(p, ab);
        reasons.push(Reason::new(
            FilterId::Scvp,
            format!(
                "forced pair (a,b) = ({},{}) gives class sizes |G^0| = {g0}, |G^+| = {gp}, |G^-| = {gm}, which are not non-negative integers",
                ab.a, ab.b
            ),
        ));
    }
    if preset.active(FilterId::Pp) && prime_power(p.v).is_some() && admissible {
        // with the class sizes known, lambda itself is a realized norm
        // whenever some character vanishes on the union
        let (g0, _, _) = scvp_counts(p, ab);
        if g0 > Rat::zero() {
            if let Some((q, _)) = pp_odd_valuation(p.v, &[p.lambda as u128]) {
                reasons.push(Reason::new(
                    FilterId::Pp,
                    format!(
                        "lambda = {} is a realized norm (|G^0| > 0) with primitive-root prime {q} at odd valuation",
                        p.lambda
                    ),
                ));
            }
        }
    }
    if preset.active(FilterId::PpScvp) {
        if let Some((pp, _)) = prime_power(p.v) {
            if pp % 2 == 1 && nt_is_self_conjugate(2, p.v) && !(ab.a % 2 == 1 && ab.b % 2 == 1) {
                reasons.push(Reason::new(
                    FilterId::PpScvp,
                    format!(
                        "2 is self-conjugate modulo {}, forcing the pair odd, but (a,b) = ({},{})",
                        p.v, ab.a, ab.b
                    ),
                ));
            }
        }
    }
}

/// Classifies one parameter set under a preset and facts table.
///
/// Existence facts are checked before nonexistence filters; nonexistence
/// reasons list every active filter that fired, in the documented order.
pub fn filter_classify(p: &ParamSet, cfg: &FilterConfig, facts: &KnownFactsTable) -> Verdict {
    let preset = cfg.preset;

    if p.k == 1 {
        // counting forces (v, v, 1, 1); such a family exists in every group
        return Verdict {
            status: Status::Trivial,
            reasons: vec![Reason::new(
                FilterId::Triv,
                "k = 1: the trivial (v, v, 1, 1) family of singletons",
            )],
            witness: Some("singleton partition of the nonidentity elements".into()),
        };
    }
    if p.v <= p.k * p.m {
        return Verdict {
            status: Status::Nonexistent,
            reasons: vec![Reason::new(
                FilterId::Triv,
                "a nontrivial family needs v > km",
            )],
            witness: None,
        };
    }

    // known existence first
    if let Some(fact) = facts.sedf_existence(p.v, p.m, p.k, p.lambda) {
        return Verdict {
            status: Status::Exists,
            reasons: vec![Reason::new(FilterId::Facts, fact.citation.clone())],
            witness: fact.witness,
        };
    }

    // near-complete characterization; a PDS-unknown m = 2 case still goes
    // through the battery below, which may settle it
    let mut reasons: Vec<Reason> = Vec::new();
    let mut nc_pds_open = None;
    if preset.active(FilterId::NearComplete) && p.is_near_complete() {
        if p.m > 2 {
            // the only near-complete parameters with m > 2 are (243,11,22,20),
            // which the facts lookup above already returned as existing
            reasons.push(Reason::new(
                FilterId::NearComplete,
                "near-complete families with m > 2 require (v,m,k,lambda) = (243,11,22,20) by the regular (v,k,mu-1,mu) PDS classification (Arasu, Jungnickel, Ma and Pott)",
            ));
        } else {
            // m = 2: equivalent to a Paley-type PDS of order v
            let pds = format!(
                "({}, {}, {}, {})",
                p.v,
                (p.v - 1) / 2,
                (p.v - 5) / 4,
                (p.v - 1) / 4
            );
            match facts.paley_pds_existence(p.v) {
                Some(f) if f.kind == FactKind::PdsNotExists => {
                    reasons.push(Reason::new(
                        FilterId::NearComplete,
                        format!(
                            "requires a {pds} partial difference set, excluded by {}",
                            f.citation
                        ),
                    ));
                }
                Some(_) => unreachable!("existing Paley PDS entries resolve via the facts lookup"),
                None => {
                    nc_pds_open = Some(Reason::new(
                        FilterId::NearComplete,
                        format!(
                            "equivalent to the existence of a {pds} partial difference set in some abelian group of order {}, which is open",
                            p.v
                        ),
                    ));
                }
            }
        }
    }
    let push_if = |r: Option<Reason>, active: bool, reasons: &mut Vec<Reason>| {
        if let Some(r) = r {
            if active {
                reasons.push(r);
            }
        }
    };

    push_if(f_triv(p), preset.active(FilterId::Triv), &mut reasons);
    f_p4(p, &preset, &mut reasons);
    push_if(f_m2kp(p), preset.active(FilterId::M2KPrime), &mut reasons);
    push_if(f_2p(p), preset.active(FilterId::TwoPrime), &mut reasons);
    push_if(f_exp(p), preset.active(FilterId::Exp), &mut reasons);
    push_if(
        f_exp_boundary(p),
        preset.active(FilterId::ExpBoundary),
        &mut reasons,
    );

    let mut narrowing = Vec::new();
    if p.m > 2 {
        let analysis = analyze_pairs(p, cfg);
        reasons.extend(analysis.reasons);
        narrowing = analysis.narrowing;
    }

    if reasons.is_empty() {
        match nc_pds_open {
            Some(reason) => Verdict {
                status: Status::OpenNearCompletePdsReduced,
                reasons: vec![reason],
                witness: None,
            },
            None => Verdict {
                status: Status::Open,
                reasons: Vec::new(),
                witness: None,
            },
        }
    } else {
        reasons.extend(narrowing);
        Verdict {
            status: Status::Nonexistent,
            reasons,
            witness: None,
        }
    }
}

// ---------------------------------------------------------------------------
// per-group exponent constraints
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ExponentCap {
    pub prime: u64,
    /// Largest admissible exponent of the Sylow subgroup: the biggest power
    /// of `prime` not exceeding the exact bound.
    pub cap: u64,
    /// The exact rational bound, for reporting.
    pub bound: String,
    pub source: FilterId,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupConstraint {
    pub group: GroupSpec,
    pub spec_string: String,
    pub allowed: bool,
    pub caps: Vec<ExponentCap>,
    pub reasons: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct GroupConstraintsReport {
    pub params: ParamSet,
    /// The forced pair when the admissible set is a singleton.
    pub scvp_pair: Option<ABPair>,
    /// |G^0| under the forced pair, when available.
    pub vanishing_class_size: Option<String>,
    pub groups: Vec<GroupConstraint>,
}

fn p_power_floor(p: u64, bound: Rat) -> u64 {
    let mut cap = 1u64;
    while Rat::from((cap * p) as i128) <= bound {
        cap *= p;
    }
    cap
}

/// Per-group exponent analysis for a parameter set that classification left
/// alive: the primitive-root exponent bound applies to every group, and for
/// a forced pair the self-conjugacy bound (with the trivial subgroup)
/// applies through the vanishing-class size. Errors when the parameters are
/// already classified nonexistent.
pub fn group_constraints(
    p: &ParamSet,
    cfg: &FilterConfig,
    facts: &KnownFactsTable,
) -> Result<GroupConstraintsReport> {
    let verdict = filter_classify(p, cfg, facts);
    if verdict.status == Status::Nonexistent {
        return Err(Error::InvalidParams(format!(
            "{p} is classified nonexistent; no group analysis applies"
        )));
    }

    // group-independent caps from the primitive-root exponent bound
    let exp_caps: Vec<(u64, u64)> = exponent_bound_caps(p);

    // forced pair data
    let (scvp_pair, g0) = if p.m > 2 {
        let analysis = analyze_pairs(p, cfg);
        match analysis.pairs.as_slice() {
            [ab] if scvp_admissible(p, ab) => {
                let (g0, _, _) = scvp_counts(p, ab);
                (Some(*ab), Some(g0))
            }
            _ => (None, None),
        }
    } else {
        (None, None)
    };

    let mut groups = Vec::new();
    for group in enumerate_abelian_groups(p.v) {
        let mut caps: Vec<ExponentCap> = Vec::new();
        let mut reasons = Vec::new();

        for &(pp, qc) in &exp_caps {
            let bound = Rat::new(p.v as i128, qc as i128);
            caps.push(ExponentCap {
                prime: pp,
                cap: p_power_floor(pp, bound),
                bound: format!("{}/{qc}", p.v),
                source: FilterId::Exp,
            });
        }

        if let (Some(ab), Some(g0)) = (&scvp_pair, &g0) {
            let exp_g = group.exponent();
            for (pp, d) in factorize(p.v) {
                if !nt_is_self_conjugate(pp, exp_g) {
                    continue;
                }
                let gp_order = pp.pow(d);
                // branch 1: p^{2d'} divides |chi(D)|^2 for all nonprincipal chi
                let union_norm = ab.union_norm(p.lambda);
                if let Some(dd) = max_square_valuation(pp, &[union_norm]) {
                    let b1 = Rat::from(gp_order as i128) / Rat::from(pp.pow(dd) as i128);
                    let b2 = Rat::new(pp as i128, (pp - 1) as i128)
                        * g0
                        * Rat::new(gp_order as i128, p.v as i128);
                    let bound = if b1 > b2 { b1 } else { b2 };
                    caps.push(ExponentCap {
                        prime: pp,
                        cap: p_power_floor(pp, bound),
                        bound: bound.to_string(),
                        source: FilterId::ExpSelfConjugate,
                    });
                    reasons.push(format!(
                        "norms of the union are divisible by {pp}^{}; self-conjugacy caps exp(G_{pp}) at max({b1}, {b2})",
                        2 * dd
                    ));
                }
                // branch 2: p^{2d'} divides |chi(D_1)|^2 for all nonprincipal chi
                let mut set_norms = vec![ab.plus_norm(p.lambda), ab.minus_norm(p.lambda)];
                if *g0 > Rat::zero() {
                    set_norms.push(p.lambda as u128);
                }
                if let Some(dd) = max_square_valuation(pp, &set_norms) {
                    let bound = Rat::from(gp_order as i128) / Rat::from(pp.pow(dd) as i128);
                    caps.push(ExponentCap {
                        prime: pp,
                        cap: p_power_floor(pp, bound),
                        bound: bound.to_string(),
                        source: FilterId::ExpSelfConjugate,
                    });
                    reasons.push(format!(
                        "norms of every subset are divisible by {pp}^{}; self-conjugacy caps exp(G_{pp}) at {bound}",
                        2 * dd
                    ));
                }
            }
        }

        // a group is allowed when each Sylow exponent meets every cap
        let mut allowed = true;
        for cap in &caps {
            if group.sylow_exponent(cap.prime) > cap.cap {
                allowed = false;
                reasons.push(format!(
                    "exp(G_{}) = {} exceeds the cap {}",
                    cap.prime,
                    group.sylow_exponent(cap.prime),
                    cap.cap
                ));
            }
        }

        groups.push(GroupConstraint {
            spec_string: group.spec_string(),
            group,
            allowed,
            caps,
            reasons,
        });
    }

    Ok(GroupConstraintsReport {
        params: *p,
        scvp_pair,
        vanishing_class_size: g0.map(|r| r.to_string()),
        groups,
    })
}

/// Largest `d >= 1` with `p^{2d}` dividing every value, if any.
fn max_square_valuation(p: u64, values: &[u128]) -> Option<u32> {
    let mut d = u32::MAX;
    for &u in values {
        if u == 0 {
            continue;
        }
        let f = nt_valuation(p, u as i128).expect("nonzero");
        d = d.min(f / 2);
    }
    (d >= 1 && d != u32::MAX).then_some(d)
}

// ---------------------------------------------------------------------------
// range classification
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Serialize)]
pub struct ClassifiedRow {
    pub params: ParamSet,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassificationTable {
    pub preset: String,
    pub v_max: u64,
    pub m_min: u64,
    pub m_max: u64,
    pub include_near_complete: bool,
    pub rows: Vec<ClassifiedRow>,
    pub counts: Vec<(String, usize)>,
}

/// Classifies every enumerated parameter set in the range; a deterministic
/// parallel map with ordered merge.
pub fn classify_range(
    v_max: u64,
    m_min: u64,
    m_max: u64,
    cfg: &FilterConfig,
    facts: &KnownFactsTable,
    include_near_complete: bool,
) -> ClassificationTable {
    let params: Vec<ParamSet> = enumerate_params(v_max, m_min, m_max)
        .into_iter()
        .filter(|p| include_near_complete || !p.is_near_complete())
        .collect();
    let rows: Vec<ClassifiedRow> = params
        .par_iter()
        .map(|p| ClassifiedRow {
            params: *p,
            verdict: filter_classify(p, cfg, facts),
        })
        .collect();
    let mut counts: Vec<(String, usize)> = Vec::new();
    for status in [
        Status::Trivial,
        Status::Exists,
        Status::Nonexistent,
        Status::Open,
        Status::OpenNearCompletePdsReduced,
    ] {
        let n = rows.iter().filter(|r| r.verdict.status == status).count();
        if n > 0 {
            counts.push((status.as_str().to_string(), n));
        }
    }
    ClassificationTable {
        preset: cfg.preset.name().to_string(),
        v_max,
        m_min,
        m_max,
        include_near_complete,
        rows,
        counts,
    }
}

fn csv_quote(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

impl ClassificationTable {
    /// CSV with columns `v,m,k,lambda,status,filter_id,citation`; the filter
    /// column carries the first (attributed) reason.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("v,m,k,lambda,status,filter_id,citation\n");
        for row in &self.rows {
            let (fid, cite) = row
                .verdict
                .reasons
                .first()
                .map(|r| (r.filter.id(), r.citation.clone()))
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                row.params.v,
                row.params.m,
                row.params.k,
                row.params.lambda,
                row.verdict.status.as_str(),
                fid,
                csv_quote(&cite)
            ));
        }
        out
    }

    pub fn open_params(&self) -> Vec<ParamSet> {
        self.rows
            .iter()
            .filter(|r| r.verdict.status == Status::Open)
            .map(|r| r.params)
            .collect()
    }

    pub fn status_of(&self, p: &ParamSet) -> Option<&Verdict> {
        self.rows
            .iter()
            .find(|r| r.params == *p)
            .map(|r| &r.verdict)
    }
}
