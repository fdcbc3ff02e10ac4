//! Finite abelian groups as lists of prime-power cyclic factors, their
//! elements as residue tuples, and character evaluation.
//!
//! The canonical form keeps one entry per prime-power cyclic factor, sorted
//! by prime and then exponent, so Sylow subgroups and exponents read off
//! directly. Characters are indexed by group elements through the standard
//! bilinear pairing, which walks the full character group without building a
//! dual object.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cyclotomic::CycInt;
use crate::enumeration_cap;
use crate::error::{Error, Result};
use crate::nt::{factorize, prime_power};

/// A finite abelian group `Z_{f_1} x ... x Z_{f_r}` with every `f_i` a prime
/// power, in canonical order. The trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupSpec {
    factors: Vec<u64>,
}

/// Group element: one residue per factor, `coords[i] < factor_i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct GroupElement {
    pub coords: Vec<u64>,
}

/// Index of a character: same shape as a group element. The all-zero index
/// is the principal character, and index addition matches pointwise
/// multiplication of characters.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CharacterIndex {
    pub coords: Vec<u64>,
}

impl GroupSpec {
    /// Builds a spec from prime-power factors, sorting into canonical order.
    pub fn new(mut factors: Vec<u64>) -> Result<Self> {
        for &f in &factors {
            if f < 2 || prime_power(f).is_none() {
                return Err(Error::NotPrimePower(f));
            }
        }
        factors.sort_by_key(|&f| prime_power(f).expect("validated above"));
        let spec = GroupSpec { factors };
        spec.order_checked()?;
        Ok(spec)
    }

    pub fn trivial() -> Self {
        GroupSpec { factors: vec![] }
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        if n == 1 {
            return Ok(Self::trivial());
        }
        // Z_n for arbitrary n splits into its prime-power parts.
        let factors = factorize(n).into_iter().map(|(p, e)| p.pow(e)).collect();
        Self::new(factors)
    }

    fn order_checked(&self) -> Result<u64> {
        let mut v: u64 = 1;
        for &f in &self.factors {
            v = v
                .checked_mul(f)
                .ok_or_else(|| Error::InvalidParams("group order overflows u64".into()))?;
        }
        Ok(v)
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u64 {
        self.factors.iter().product::<u64>().max(1)
    }

    /// Exponent: lcm of the factors, i.e. the product over primes of the
    /// largest prime-power factor.
    pub fn exponent(&self) -> u64 {
        let mut exp: u64 = 1;
        for (p, e) in self.sylow() {
            exp *= p.pow(e.iter().copied().max().unwrap_or(0));
        }
        exp
    }

    /// Sylow decomposition: for each prime, the exponents of its cyclic
    /// factors (ascending). `(p, [e1, e2, ...])` means `G_p = Z_{p^e1} x ...`.
    pub fn sylow(&self) -> Vec<(u64, Vec<u32>)> {
        let mut out: Vec<(u64, Vec<u32>)> = Vec::new();
        for &f in &self.factors {
            let (p, e) = prime_power(f).expect("factors are prime powers");
            match out.iter_mut().find(|(q, _)| *q == p) {
                Some((_, es)) => es.push(e),
                None => out.push((p, vec![e])),
            }
        }
        out
    }

    /// Exponent of the Sylow p-subgroup (1 if `p` does not divide the order).
    pub fn sylow_exponent(&self, p: u64) -> u64 {
        self.sylow()
            .into_iter()
            .find(|(q, _)| *q == p)
            .map(|(_, es)| p.pow(es.into_iter().max().unwrap_or(0)))
            .unwrap_or(1)
    }

    pub fn num_factors(&self) -> usize {
        self.factors.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.factors.len()],
        }
    }

    pub fn is_valid_element(&self, g: &GroupElement) -> bool {
        g.coords.len() == self.factors.len()
            && g.coords.iter().zip(&self.factors).all(|(&c, &f)| c < f)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&b.coords)
            .zip(&self.factors)
            .map(|((&x, &y), &f)| (x + y) % f)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        let coords = a
            .coords
            .iter()
            .zip(&self.factors)
            .map(|(&x, &f)| (f - x) % f)
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// Mixed-radix encoding; the first coordinate is most significant.
    pub fn encode(&self, g: &GroupElement) -> u64 {
        let mut idx = 0u64;
        for (&c, &f) in g.coords.iter().zip(&self.factors) {
            idx = idx * f + c;
        }
        idx
    }

    pub fn decode(&self, mut idx: u64) -> GroupElement {
        let mut coords = vec![0u64; self.factors.len()];
        for i in (0..self.factors.len()).rev() {
            coords[i] = idx % self.factors[i];
            idx /= self.factors[i];
        }
        GroupElement { coords }
    }

    /// For a cyclic group (pairwise coprime factors), the image of the
    /// residue `r` under the natural isomorphism `Z_v -> Z_{f_1} x ... x
    /// Z_{f_r}`; this is how integer constructions land in the group.
    pub fn residue_element(&self, r: u64) -> Result<GroupElement> {
        let mut seen = std::collections::BTreeSet::new();
        for &f in &self.factors {
            let p = prime_power(f).expect("factors are prime powers").0;
            if !seen.insert(p) {
                return Err(Error::InvalidParams(
                    "residue embedding needs a cyclic group".into(),
                ));
            }
        }
        Ok(GroupElement {
            coords: self.factors.iter().map(|&f| r % f).collect(),
        })
    }

    fn check_enumerable(&self) -> Result<()> {
        let order = self.order();
        let cap = enumeration_cap();
        if order > cap {
            return Err(Error::GroupTooLarge { order, cap });
        }
        Ok(())
    }

    /// All elements in encoded order. Errors above the enumeration cap.
    pub fn elements(&self) -> Result<Vec<GroupElement>> {
        self.check_enumerable()?;
        Ok((0..self.order()).map(|i| self.decode(i)).collect())
    }

    /// Pairing exponent of character `h` at element `g`:
    /// `sum_i (e / f_i) h_i g_i mod e` where `e` is the group exponent.
    pub fn pairing_exponent(&self, h: &CharacterIndex, g: &GroupElement) -> u64 {
        let e = self.exponent();
        let mut acc: u128 = 0;
        for ((&hi, &gi), &f) in h.coords.iter().zip(&g.coords).zip(&self.factors) {
            acc += (e / f) as u128 * hi as u128 % e as u128 * gi as u128;
        }
        (acc % e as u128) as u64
    }

    /// `chi_h(g)` as a cyclotomic integer over `zeta_e`.
    pub fn character_value(&self, h: &CharacterIndex, g: &GroupElement) -> CycInt {
        CycInt::root_power(self.exponent(), self.pairing_exponent(h, g))
    }

    /// Group-spec string in the grammar accepted by [`parse_group_spec`].
    pub fn spec_string(&self) -> String {
        if self.factors.is_empty() {
            return "1".to_string();
        }
        self.factors
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
            .join("x")
    }
}

impl CharacterIndex {
    pub fn principal(group: &GroupSpec) -> Self {
        CharacterIndex {
            coords: vec![0; group.num_factors()],
        }
    }

    pub fn from_element(g: &GroupElement) -> Self {
        CharacterIndex {
            coords: g.coords.clone(),
        }
    }

    pub fn is_principal(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

/// Parses the group-spec grammar: `spec := term ("x" term)*` where a term is
/// either a prime-power literal `n` (the cyclic group `Z_n`) or `p^e` with
/// `p` prime, meaning `e` copies of `Z_p`. So `3^5` is the elementary
/// abelian group of order 243 while `243` is the cyclic group of that order.
pub fn parse_group_spec(text: &str) -> Result<GroupSpec> {
    let text = text.trim();
    if text.is_empty() {
        return Err(Error::MalformedGroupSpec(text.into()));
    }
    let mut factors = Vec::new();
    for term in text.split('x') {
        let term = term.trim();
        if let Some((base, exp)) = term.split_once('^') {
            let p: u64 = base
                .trim()
                .parse()
                .map_err(|_| Error::MalformedGroupSpec(text.into()))?;
            let e: u32 = exp
                .trim()
                .parse()
                .map_err(|_| Error::MalformedGroupSpec(text.into()))?;
            if e == 0 {
                return Err(Error::MalformedGroupSpec(text.into()));
            }
            match prime_power(p) {
                // p^e with p prime denotes e copies of Z_p
                Some((_, 1)) => factors.extend(std::iter::repeat_n(p, e as usize)),
                _ => return Err(Error::NotPrimePower(p)),
            }
        } else {
            let n: u64 = term
                .parse()
                .map_err(|_| Error::MalformedGroupSpec(text.into()))?;
            if n < 2 || prime_power(n).is_none() {
                return Err(Error::NotPrimePower(n));
            }
            factors.push(n);
        }
    }
    GroupSpec::new(factors)
}

fn partitions(n: u32) -> Vec<Vec<u32>> {
    // partitions in descending-part form, largest-first order
    fn rec(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        let mut part = max.min(n);
        while part >= 1 {
            prefix.push(part);
            rec(n - part, part, prefix, out);
            prefix.pop();
            part -= 1;
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}

/// One [`GroupSpec`] per isomorphism class of abelian groups of order `v`:
/// the product over primes `p | v` of the partitions of the p-exponent.
/// Deterministic order.
pub fn enumerate_abelian_groups(v: u64) -> Vec<GroupSpec> {
    if v == 1 {
        return vec![GroupSpec::trivial()];
    }
    let fac = factorize(v);
    let per_prime: Vec<(u64, Vec<Vec<u32>>)> =
        fac.into_iter().map(|(p, e)| (p, partitions(e))).collect();
    let mut specs = vec![Vec::<u64>::new()];
    for (p, parts) in &per_prime {
        let mut next = Vec::with_capacity(specs.len() * parts.len());
        for base in &specs {
            for part in parts {
                let mut s = base.clone();
                s.extend(part.iter().map(|&e| p.pow(e)));
                next.push(s);
            }
        }
        specs = next;
    }
    specs
        .into_iter()
        .map(|f| GroupSpec::new(f).expect("prime powers by construction"))
        .collect()
}

/// True iff `S` is closed under the group law and inverses. `S` must be
/// nonempty and consist of valid elements.
pub fn is_subgroup(group: &GroupSpec, set: &[GroupElement]) -> Result<bool> {
    if set.is_empty() {
        return Err(Error::InvalidParams(
            "subgroup test needs a nonempty set".into(),
        ));
    }
    for g in set {
        if !group.is_valid_element(g) {
            return Err(Error::InvalidElement(g.coords.clone()));
        }
    }
    group.check_enumerable()?;
    let mut member = vec![false; group.order() as usize];
    for g in set {
        member[group.encode(g) as usize] = true;
    }
    for a in set {
        if !member[group.encode(&group.neg(a)) as usize] {
            return Ok(false);
        }
        for b in set {
            if !member[group.encode(&group.add(a, b)) as usize] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// `sum_{g in S} chi_h(g)` as a canonical element of `Z[zeta_e]`, `e` the
/// group exponent. `S` is a set (duplicates are counted as given).
pub fn character_sum(
    group: &GroupSpec,
    h: &CharacterIndex,
    set: &[GroupElement],
) -> Result<CycInt> {
    let e = group.exponent();
    let mut counts = vec![BigInt::zero(); e as usize];
    for g in set {
        if !group.is_valid_element(g) {
            return Err(Error::InvalidElement(g.coords.clone()));
        }
        counts[group.pairing_exponent(h, g) as usize] += BigInt::one();
    }
    Ok(CycInt::from_exponent_counts(e, counts))
}
