//! Verification of EDF/SEDF/PDS axioms by exact difference counting,
//! character spectrum analysis, and a small-scale exhaustive-search oracle.
//!
//! Difference counting uses dense count arrays indexed by the mixed-radix
//! element encoding, so results are exact and deterministic. Verifiers never
//! trust generators: every constructed family is checked through the same
//! counting path as user-supplied input.

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::CycInt;
use crate::enumeration_cap;
use crate::error::{Error, Result};
use crate::group::{character_sum, is_subgroup, CharacterIndex, GroupElement, GroupSpec};
use crate::nt::perfect_sqrt;

/// A group together with `m` disjoint `k`-subsets and a declared lambda.
///
/// Structural invariants (equal sizes, disjointness, valid elements, m >= 2)
/// are enforced at construction; whether the family actually satisfies the
/// SEDF/EDF axioms is decided by the verifiers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceFamily {
    group: GroupSpec,
    sets: Vec<Vec<GroupElement>>,
    lambda: u64,
}

/// Declared parameters of a family: (v, m, k, lambda).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilyParams {
    pub v: u64,
    pub m: u64,
    pub k: u64,
    pub lambda: u64,
}

impl DifferenceFamily {
    pub fn new(group: GroupSpec, sets: Vec<Vec<GroupElement>>, lambda: u64) -> Result<Self> {
        if sets.len() < 2 {
            return Err(Error::MalformedFamily("need at least two subsets".into()));
        }
        let order = group.order();
        let cap = enumeration_cap();
        if order > cap {
            return Err(Error::GroupTooLarge { order, cap });
        }
        let k = sets[0].len();
        let mut seen = vec![false; order as usize];
        for set in &sets {
            if set.len() != k {
                return Err(Error::MalformedFamily("subsets have unequal sizes".into()));
            }
            for g in set {
                if !group.is_valid_element(g) {
                    return Err(Error::InvalidElement(g.coords.clone()));
                }
                let idx = group.encode(g) as usize;
                if seen[idx] {
                    return Err(Error::MalformedFamily(format!(
                        "element {:?} appears twice",
                        g.coords
                    )));
                }
                seen[idx] = true;
            }
        }
        // canonical internal order: elements sorted by encoding
        let mut sets = sets;
        for set in &mut sets {
            set.sort_by_key(|g| group.encode(g));
        }
        Ok(DifferenceFamily {
            group,
            sets,
            lambda,
        })
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn sets(&self) -> &[Vec<GroupElement>] {
        &self.sets
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn params(&self) -> FamilyParams {
        FamilyParams {
            v: self.group.order(),
            m: self.sets.len() as u64,
            k: self.sets[0].len() as u64,
            lambda: self.lambda,
        }
    }

    pub fn union(&self) -> Vec<GroupElement> {
        let mut u: Vec<GroupElement> = self.sets.iter().flatten().cloned().collect();
        u.sort_by_key(|g| self.group.encode(g));
        u
    }

    /// Union partitions the nonidentity elements: size v-1 and identity-free.
    pub fn is_near_complete(&self) -> bool {
        let u = self.union();
        u.len() as u64 == self.group.order() - 1 && !u.iter().any(|g| *g == self.group.identity())
    }

    pub fn contains_identity(&self) -> bool {
        let id = self.group.identity();
        self.sets.iter().flatten().any(|g| *g == id)
    }

    /// Translate every set by `g`.
    pub fn translate(&self, g: &GroupElement) -> Self {
        let sets = self
            .sets
            .iter()
            .map(|set| set.iter().map(|x| self.group.add(x, g)).collect())
            .collect();
        DifferenceFamily::new(self.group.clone(), sets, self.lambda)
            .expect("translation preserves structure")
    }
}

/// Outcome of a verification run.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub passed: bool,
    /// First failing set index and its nonzero deviations
    /// (difference count minus expected), keyed by element coordinates.
    pub failure: Option<FailureDetail>,
    pub near_complete: bool,
    pub contains_identity: bool,
    /// Per-set outcome of the subgroup obstructions: true when neither
    /// `D_j ∪ {1}` nor `G \ D_j` is a subgroup.
    pub set_nontrivial: Vec<bool>,
    /// PDS only: `D = D^(-1)`.
    pub regular: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FailureDetail {
    pub set_index: usize,
    /// Nonzero deviations (count minus expected), sorted by element coords.
    pub deviations: Vec<(Vec<u64>, i64)>,
}

impl FailureDetail {
    pub fn deviation_at(&self, coords: &[u64]) -> Option<i64> {
        self.deviations
            .iter()
            .find(|(c, _)| c == coords)
            .map(|(_, d)| *d)
    }
}

fn encode_set(group: &GroupSpec, set: &[GroupElement]) -> Vec<usize> {
    set.iter().map(|g| group.encode(g) as usize).collect()
}

/// Difference counts `d - e` for `d` in `xs`, `e` in `ys`, accumulated into
/// `counts` (dense, indexed by element encoding).
fn accumulate_differences(group: &GroupSpec, xs: &[usize], ys: &[usize], counts: &mut [i64]) {
    for &d in xs {
        let dd = group.decode(d as u64);
        for &e in ys {
            if d == e {
                counts[0] += 1;
                continue;
            }
            let diff = group.sub(&dd, &group.decode(e as u64));
            counts[group.encode(&diff) as usize] += 1;
        }
    }
}

/// True when `set ∪ {identity}` is a subgroup. Uses a divisibility
/// pre-check before the quadratic closure test.
fn union_identity_is_subgroup(group: &GroupSpec, set: &[GroupElement]) -> bool {
    let id = group.identity();
    let mut s: Vec<GroupElement> = set.to_vec();
    if !s.contains(&id) {
        s.push(id);
    }
    if !group.order().is_multiple_of(s.len() as u64) {
        return false;
    }
    is_subgroup(group, &s).unwrap_or(false)
}

/// True when the complement `G \ set` is a subgroup.
fn complement_is_subgroup(group: &GroupSpec, set: &[GroupElement]) -> bool {
    let size = group.order() - set.len() as u64;
    if size == 0 || !group.order().is_multiple_of(size) {
        return false;
    }
    let mut member = vec![true; group.order() as usize];
    for g in set {
        member[group.encode(g) as usize] = false;
    }
    let complement: Vec<GroupElement> = (0..group.order())
        .filter(|&i| member[i as usize])
        .map(|i| group.decode(i))
        .collect();
    is_subgroup(group, &complement).unwrap_or(false)
}

fn subgroup_flags(family: &DifferenceFamily) -> Vec<bool> {
    family
        .sets
        .iter()
        .map(|set| {
            !union_identity_is_subgroup(family.group(), set)
                && !complement_is_subgroup(family.group(), set)
        })
        .collect()
}

/// Checks that for each `j` the external differences from `D_j` against the
/// union of the other subsets cover every nonidentity element exactly
/// `lambda` times (and the identity zero times).
pub fn verify_sedf(family: &DifferenceFamily) -> Result<VerificationReport> {
    verify_family(family, family.lambda(), true)
}

/// Checks the weaker covering condition summed over all ordered pairs of
/// distinct subsets, against the family's declared lambda.
pub fn verify_edf(family: &DifferenceFamily) -> Result<VerificationReport> {
    verify_family(family, family.lambda(), false)
}

fn verify_family(
    family: &DifferenceFamily,
    lambda: u64,
    strong: bool,
) -> Result<VerificationReport> {
    let group = family.group();
    let v = group.order() as usize;
    let m = family.sets.len();
    let encoded: Vec<Vec<usize>> = family.sets.iter().map(|s| encode_set(group, s)).collect();

    let mut failure = None;
    if strong {
        for j in 0..m {
            let mut counts = vec![0i64; v];
            for i in 0..m {
                if i != j {
                    accumulate_differences(group, &encoded[j], &encoded[i], &mut counts);
                }
            }
            if let Some(dev) = deviations(group, &counts, lambda) {
                failure = Some(FailureDetail {
                    set_index: j,
                    deviations: dev,
                });
                break;
            }
        }
    } else {
        let mut counts = vec![0i64; v];
        for j in 0..m {
            for i in 0..m {
                if i != j {
                    accumulate_differences(group, &encoded[j], &encoded[i], &mut counts);
                }
            }
        }
        if let Some(dev) = deviations(group, &counts, lambda) {
            failure = Some(FailureDetail {
                set_index: 0,
                deviations: dev,
            });
        }
    }

    Ok(VerificationReport {
        passed: failure.is_none(),
        failure,
        near_complete: family.is_near_complete(),
        contains_identity: family.contains_identity(),
        set_nontrivial: subgroup_flags(family),
        regular: None,
    })
}

fn deviations(group: &GroupSpec, counts: &[i64], lambda: u64) -> Option<Vec<(Vec<u64>, i64)>> {
    let mut dev = Vec::new();
    for (idx, &c) in counts.iter().enumerate() {
        let expected = if idx == 0 { 0 } else { lambda as i64 };
        if c != expected {
            dev.push((group.decode(idx as u64).coords, c - expected));
        }
    }
    dev.sort();
    (!dev.is_empty()).then_some(dev)
}

/// Checks the partial-difference-set identity for `set`: internal differences
/// hit the identity `k` times, elements of the set `lambda` times and all
/// other elements `mu` times. Also reports regularity (closure under
/// inverses) and the subgroup-triviality flag.
pub fn verify_pds(
    group: &GroupSpec,
    set: &[GroupElement],
    k: u64,
    lambda: u64,
    mu: u64,
) -> Result<VerificationReport> {
    let order = group.order();
    let cap = enumeration_cap();
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let id = group.identity();
    if set.contains(&id) {
        return Err(Error::IdentityInPds);
    }
    let mut sorted = set.to_vec();
    sorted.sort_by_key(|g| group.encode(g));
    sorted.dedup();
    if sorted.len() != set.len() {
        return Err(Error::MalformedFamily("duplicate elements in set".into()));
    }
    if sorted.len() as u64 != k {
        return Err(Error::InvalidParams(format!(
            "set has {} elements but k = {k}",
            sorted.len()
        )));
    }
    for g in &sorted {
        if !group.is_valid_element(g) {
            return Err(Error::InvalidElement(g.coords.clone()));
        }
    }

    let encoded = encode_set(group, &sorted);
    let mut counts = vec![0i64; order as usize];
    accumulate_differences(group, &encoded, &encoded, &mut counts);

    let mut member = vec![false; order as usize];
    for &i in &encoded {
        member[i] = true;
    }
    let mut dev = Vec::new();
    for (idx, &c) in counts.iter().enumerate() {
        let expected = if idx == 0 {
            k as i64
        } else if member[idx] {
            lambda as i64
        } else {
            mu as i64
        };
        if c != expected {
            dev.push((group.decode(idx as u64).coords, c - expected));
        }
    }
    dev.sort();
    let regular = sorted
        .iter()
        .all(|g| member[group.encode(&group.neg(g)) as usize]);
    let nontrivial =
        !union_identity_is_subgroup(group, &sorted) && !complement_is_subgroup(group, &sorted);

    let passed = dev.is_empty();
    Ok(VerificationReport {
        passed,
        failure: (!passed).then_some(FailureDetail {
            set_index: 0,
            deviations: dev,
        }),
        near_complete: false,
        contains_identity: false,
        set_nontrivial: vec![nontrivial],
        regular: Some(regular),
    })
}

/// Cross-check of the equivalence between a near-complete family being an
/// SEDF and each subset being a nontrivial regular
/// `(v, k, k-lambda-1, k-lambda)`-PDS. Returns true when both sides agree
/// (both pass or both fail); a sound implementation always returns true.
pub fn near_complete_equivalence(family: &DifferenceFamily) -> Result<bool> {
    if !family.is_near_complete() {
        return Err(Error::NotNearComplete);
    }
    let p = family.params();
    if p.k < 2 {
        return Err(Error::InvalidParams(
            "equivalence requires subset size k > 1".into(),
        ));
    }
    let left = verify_sedf(family)?.passed;
    let right = if p.lambda + 1 > p.k {
        // PDS parameters would be negative; no subset can comply
        false
    } else {
        let (pl, pm) = (p.k - p.lambda - 1, p.k - p.lambda);
        let mut all = true;
        for set in family.sets() {
            let rep = verify_pds(family.group(), set, p.k, pl, pm)?;
            if !(rep.passed && rep.regular == Some(true) && rep.set_nontrivial[0]) {
                all = false;
                break;
            }
        }
        all
    };
    Ok(left == right)
}

/// Exact value of `|chi(E)|^2`: a rational integer when the cyclotomic value
/// is rational, otherwise the reduced cyclotomic element itself.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum NormValue {
    Rational(String),
    Cyclotomic(CycInt),
}

impl NormValue {
    fn from_cyc(x: &CycInt) -> (Self, Option<BigInt>) {
        let sq = x.absolute_square();
        match sq.as_rational_integer() {
            Some(v) => (NormValue::Rational(v.to_string()), Some(v)),
            None => (NormValue::Cyclotomic(sq), None),
        }
    }
}

/// Character-by-character spectrum data for a verified SEDF.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumEntry {
    /// Character index coordinates.
    pub index: Vec<u64>,
    /// `chi(D)` where `D` is the union of the subsets.
    pub union_sum: CycInt,
    /// `|chi(D)|^2` when it is a rational integer.
    pub union_norm: Option<String>,
    /// True when `chi(D) = 0` (the character vanishes on the union).
    pub vanishes: bool,
    /// Coprime pair `(a, b)` with `b/a = sqrt(1 + 4 lambda / |chi(D)|^2)`,
    /// when that value is a perfect rational square.
    pub ab: Option<(u64, u64)>,
    /// `|chi(D_j)|^2` for each subset.
    pub set_norms: Vec<NormValue>,
    /// How many subsets take the larger / smaller branch value.
    pub plus_minus: Option<(u64, u64)>,
}

/// Full spectrum report over the nonprincipal characters.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumReport {
    pub params: FamilyParams,
    pub entries: Vec<SpectrumEntry>,
    /// Number of nonprincipal characters vanishing on the union.
    pub vanishing_count: u64,
    pub nonvanishing_count: u64,
    /// Violations of the structural consequences of the SEDF equations;
    /// empty for any genuine SEDF.
    pub inconsistencies: Vec<String>,
}

/// Computes the exact character spectrum of a family that passes
/// [`verify_sedf`]; errors on non-SEDF input.
pub fn spectrum(family: &DifferenceFamily) -> Result<SpectrumReport> {
    let report = verify_sedf(family)?;
    if !report.passed {
        let detail = report
            .failure
            .map(|f| {
                format!(
                    "set {} has {} deviating counts",
                    f.set_index,
                    f.deviations.len()
                )
            })
            .unwrap_or_default();
        return Err(Error::NotSedf(detail));
    }
    spectrum_unchecked(family)
}

/// Spectrum computation without the SEDF pre-check; inconsistencies that a
/// genuine SEDF cannot exhibit are reported in the result.
pub(crate) fn spectrum_unchecked(family: &DifferenceFamily) -> Result<SpectrumReport> {
    let group = family.group();
    let params = family.params();
    let v = group.order();
    let m = params.m;
    let lambda = BigInt::from(params.lambda);

    let mut entries = Vec::with_capacity((v - 1) as usize);
    let mut vanishing = 0u64;
    let mut inconsistencies = Vec::new();

    for idx in 1..v {
        let h = CharacterIndex::from_element(&group.decode(idx));
        let set_sums: Vec<CycInt> = family
            .sets()
            .iter()
            .map(|s| character_sum(group, &h, s))
            .collect::<Result<_>>()?;
        let mut union_sum = CycInt::zero(group.exponent());
        for s in &set_sums {
            union_sum = union_sum.add(s)?;
        }
        let vanishes = union_sum.is_zero();
        if vanishes {
            vanishing += 1;
        }

        let (set_norms, set_norm_ints): (Vec<NormValue>, Vec<Option<BigInt>>) =
            set_sums.iter().map(NormValue::from_cyc).unzip();

        let union_sq = union_sum.absolute_square();
        let union_norm_int = union_sq.as_rational_integer();
        let union_norm = union_norm_int.as_ref().map(|x| x.to_string());

        let mut ab = None;
        let mut plus_minus = None;
        if !vanishes {
            match &union_norm_int {
                Some(norm) if norm > &BigInt::zero() => {
                    // 1 + 4 lambda / |chi(D)|^2 = (norm + 4 lambda) / norm in
                    // lowest terms; a rational square yields the (a, b) pair.
                    let num = norm + 4u32 * &lambda;
                    let g = num_integer::gcd(num.clone(), norm.clone());
                    let (num, den) = (&num / &g, norm / &g);
                    let sq = |x: &BigInt| {
                        x.to_u128()
                            .and_then(perfect_sqrt)
                            .and_then(|r| u64::try_from(r).ok())
                    };
                    if let (Some(b), Some(a)) = (sq(&num), sq(&den)) {
                        ab = Some((a, b));
                        if m > 2 {
                            plus_minus = tally_branches(
                                &set_norm_ints,
                                a,
                                b,
                                params.lambda,
                                &mut inconsistencies,
                                &h,
                            );
                        }
                    } else if m > 2 {
                        inconsistencies.push(format!(
                            "character {:?}: 1 + 4*lambda/|chi(D)|^2 = {}/{} is not a rational square",
                            h.coords, num, den
                        ));
                    }
                }
                _ if m > 2 => {
                    inconsistencies.push(format!(
                        "character {:?}: |chi(D)|^2 is not a rational integer",
                        h.coords
                    ));
                }
                _ => {}
            }
            if m == 2 {
                plus_minus = Some((1, 1));
            }
        }

        entries.push(SpectrumEntry {
            index: h.coords,
            union_sum,
            union_norm,
            vanishes,
            ab,
            set_norms,
            plus_minus,
        });
    }

    if vanishing == v - 1 {
        inconsistencies.push(
            "every nonprincipal character vanishes on the union; at least one must not".into(),
        );
    }

    Ok(SpectrumReport {
        params,
        entries,
        vanishing_count: vanishing,
        nonvanishing_count: v - 1 - vanishing,
        inconsistencies,
    })
}

fn tally_branches(
    set_norms: &[Option<BigInt>],
    a: u64,
    b: u64,
    lambda: u64,
    inconsistencies: &mut Vec<String>,
    h: &CharacterIndex,
) -> Option<(u64, u64)> {
    // branch values (b+a)lambda/(b-a) and (b-a)lambda/(b+a)
    let exact = |num: u128, den: u128| -> Option<BigInt> {
        num.is_multiple_of(den).then(|| BigInt::from(num / den))
    };
    let lam = lambda as u128;
    let plus = exact((b + a) as u128 * lam, (b - a) as u128);
    let minus = exact((b - a) as u128 * lam, (b + a) as u128);
    let (Some(plus), Some(minus)) = (plus, minus) else {
        inconsistencies.push(format!(
            "character {:?}: branch values for (a,b)=({a},{b}) are not integers",
            h.coords
        ));
        return None;
    };
    let mut lp = 0u64;
    let mut lm = 0u64;
    for norm in set_norms {
        match norm {
            Some(x) if *x == plus => lp += 1,
            Some(x) if *x == minus => lm += 1,
            _ => {
                inconsistencies.push(format!(
                    "character {:?}: a subset norm matches neither branch value",
                    h.coords
                ));
                return None;
            }
        }
    }
    Some((lp, lm))
}

// ---------------------------------------------------------------------------
// exhaustive search oracle
// ---------------------------------------------------------------------------

struct SearchState<'a> {
    group: &'a GroupSpec,
    v: usize,
    m: usize,
    k: usize,
    lambda: i64,
    /// sets[s] holds encoded elements, ascending
    sets: Vec<Vec<usize>>,
    used: Vec<bool>,
    /// counts[s][g]: differences from set s against all other sets
    counts: Vec<Vec<i64>>,
    nodes: u64,
    budget: u64,
    results: Vec<DifferenceFamily>,
}

impl SearchState<'_> {
    fn place(&mut self, s: usize, x: usize) -> bool {
        // cross-differences against every element of every other set
        for t in 0..self.sets.len() {
            if t == s {
                continue;
            }
            for i in 0..self.sets[t].len() {
                let y = self.sets[t][i];
                let d1 = self.diff(x, y);
                let d2 = self.diff(y, x);
                self.counts[s][d1] += 1;
                self.counts[t][d2] += 1;
                if self.counts[s][d1] > self.lambda || self.counts[t][d2] > self.lambda {
                    // roll back including this pair
                    self.counts[s][d1] -= 1;
                    self.counts[t][d2] -= 1;
                    self.unplace_partial(s, x, t, i);
                    return false;
                }
            }
        }
        self.sets[s].push(x);
        self.used[x] = true;
        true
    }

    fn unplace_partial(&mut self, s: usize, x: usize, upto_t: usize, upto_i: usize) {
        for t in 0..=upto_t {
            if t == s {
                continue;
            }
            let lim = if t == upto_t {
                upto_i
            } else {
                self.sets[t].len()
            };
            for i in 0..lim {
                let y = self.sets[t][i];
                let d1 = self.diff(x, y);
                let d2 = self.diff(y, x);
                self.counts[s][d1] -= 1;
                self.counts[t][d2] -= 1;
            }
        }
    }

    fn unplace(&mut self, s: usize) {
        let x = self.sets[s].pop().expect("set not empty");
        self.used[x] = false;
        for t in 0..self.sets.len() {
            if t == s {
                continue;
            }
            for i in 0..self.sets[t].len() {
                let y = self.sets[t][i];
                let d1 = self.diff(x, y);
                let d2 = self.diff(y, x);
                self.counts[s][d1] -= 1;
                self.counts[t][d2] -= 1;
            }
        }
    }

    fn diff(&self, a: usize, b: usize) -> usize {
        let ga = self.group.decode(a as u64);
        let gb = self.group.decode(b as u64);
        self.group.encode(&self.group.sub(&ga, &gb)) as usize
    }

    fn search(&mut self, s: usize, next_elem: usize) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded {
                budget: self.budget,
            });
        }
        if self.sets[s].len() == self.k {
            if s + 1 == self.m {
                self.emit()?;
                return Ok(());
            }
            // next set starts after this set's first element
            let start = self.sets[s][0] + 1;
            return self.search(s + 1, start);
        }
        for x in next_elem..self.v {
            if self.used[x] {
                continue;
            }
            // sets are ordered by first element; elements ascend within a set
            if self.place(s, x) {
                self.search(s, x + 1)?;
                self.unplace(s);
            }
        }
        Ok(())
    }

    fn emit(&mut self) -> Result<()> {
        // translation dedup: keep only the lexicographically least translate
        let flat: Vec<usize> = self.sets.iter().flatten().copied().collect();
        for g in 1..self.v {
            let ge = self.group.decode(g as u64);
            let mut translated: Vec<Vec<usize>> = self
                .sets
                .iter()
                .map(|set| {
                    let mut t: Vec<usize> = set
                        .iter()
                        .map(|&x| {
                            let xe = self.group.decode(x as u64);
                            self.group.encode(&self.group.add(&xe, &ge)) as usize
                        })
                        .collect();
                    t.sort_unstable();
                    t
                })
                .collect();
            translated.sort_by_key(|set| set[0]);
            let tflat: Vec<usize> = translated.into_iter().flatten().collect();
            if tflat < flat {
                return Ok(()); // a smaller translate exists; skip this one
            }
        }
        let sets: Vec<Vec<GroupElement>> = self
            .sets
            .iter()
            .map(|set| set.iter().map(|&x| self.group.decode(x as u64)).collect())
            .collect();
        self.results.push(DifferenceFamily::new(
            self.group.clone(),
            sets,
            self.lambda as u64,
        )?);
        Ok(())
    }
}

/// Finds all `(v, m, k, lambda)`-SEDFs in `group`, one representative per
/// translation class of the family (the lexicographically least translate
/// under the element encoding), in deterministic order.
///
/// Backtracks over k-subsets with difference-count pruning; errors once more
/// than `budget` search nodes have been expanded.
pub fn exhaustive_sedf_search(
    group: &GroupSpec,
    m: u64,
    k: u64,
    lambda: u64,
    budget: u64,
) -> Result<Vec<DifferenceFamily>> {
    let v = group.order();
    let cap = enumeration_cap();
    if v > cap {
        return Err(Error::GroupTooLarge { order: v, cap });
    }
    if m < 2 || k < 1 {
        return Err(Error::InvalidParams("need m >= 2 and k >= 1".into()));
    }
    // counting relation: a covering with every count = lambda needs exactly
    // k^2 (m-1) = lambda (v-1) differences per set
    if k as u128 * k as u128 * (m - 1) as u128 != lambda as u128 * (v - 1) as u128 {
        return Ok(vec![]);
    }
    if m * k > v {
        return Ok(vec![]); // not enough room for disjoint subsets
    }
    let mut st = SearchState {
        group,
        v: v as usize,
        m: m as usize,
        k: k as usize,
        lambda: lambda as i64,
        sets: vec![Vec::with_capacity(k as usize); m as usize],
        used: vec![false; v as usize],
        counts: vec![vec![0i64; v as usize]; m as usize],
        nodes: 0,
        budget,
        results: Vec::new(),
    };
    st.search(0, 0)?;
    Ok(st.results)
}

// ---------------------------------------------------------------------------
// family document format
// ---------------------------------------------------------------------------

/// On-disk family document: group-spec string, lambda, optional mu (for PDS
/// verification) and the subsets as residue tuples.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FamilyDocument {
    pub group: String,
    pub lambda: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mu: Option<u64>,
    pub sets: Vec<Vec<Vec<u64>>>,
}

impl FamilyDocument {
    pub fn from_family(family: &DifferenceFamily) -> Self {
        FamilyDocument {
            group: family.group().spec_string(),
            lambda: family.lambda(),
            mu: None,
            sets: family
                .sets()
                .iter()
                .map(|s| s.iter().map(|g| g.coords.clone()).collect())
                .collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Document(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    /// Materializes the document as a structural family (at least two sets).
    pub fn to_family(&self) -> Result<DifferenceFamily> {
        let group = crate::group::parse_group_spec(&self.group)?;
        let sets = self.element_sets(&group)?;
        DifferenceFamily::new(group, sets, self.lambda)
    }

    /// Materializes the sets without the family arity requirement (for PDS
    /// documents, which carry a single set).
    pub fn element_sets(&self, group: &GroupSpec) -> Result<Vec<Vec<GroupElement>>> {
        self.sets
            .iter()
            .map(|set| {
                set.iter()
                    .map(|coords| {
                        let g = GroupElement {
                            coords: coords.clone(),
                        };
                        if group.is_valid_element(&g) {
                            Ok(g)
                        } else {
                            Err(Error::InvalidElement(coords.clone()))
                        }
                    })
                    .collect()
            })
            .collect()
    }
}
