//! Generators for the families this crate can build directly: the projective
//! orbit construction of the (243,11,22,20) family in `Z_3^5`, the
//! `(k^2+1, 2, k, 1)` cyclic family, quadratic-residue partial difference
//! sets over prime fields, and the near-complete family obtained from a
//! Paley-type PDS and its complement.
//!
//! Generators are never trusted: their outputs are exercised through the
//! verifiers in the test suites, and the orbit construction re-checks the
//! defining identities of its compiled-in matrices on every call.

use serde::Serialize;

use crate::designs::DifferenceFamily;
use crate::error::{Error, Result};
use crate::group::{parse_group_spec, GroupElement, GroupSpec};
use crate::nt::is_prime;

/// Square matrix over the prime field `GF(p)`, entries reduced mod p.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatrixGF {
    p: u64,
    d: usize,
    entries: Vec<u64>, // row-major
}

impl MatrixGF {
    pub fn new(p: u64, d: usize, entries: Vec<u64>) -> Result<Self> {
        if !is_prime(p) || entries.len() != d * d {
            return Err(Error::MatrixMismatch);
        }
        let entries = entries.into_iter().map(|e| e % p).collect();
        Ok(MatrixGF { p, d, entries })
    }

    pub fn from_rows(p: u64, rows: &[&[u64]]) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::MatrixMismatch);
        }
        Self::new(p, d, rows.concat())
    }

    pub fn identity(p: u64, d: usize) -> Self {
        let mut entries = vec![0u64; d * d];
        for i in 0..d {
            entries[i * d + i] = 1;
        }
        MatrixGF { p, d, entries }
    }

    pub fn at(&self, r: usize, c: usize) -> u64 {
        self.entries[r * self.d + c]
    }

    pub fn scalar_mul(&self, c: u64) -> Self {
        MatrixGF {
            p: self.p,
            d: self.d,
            entries: self.entries.iter().map(|&e| e * c % self.p).collect(),
        }
    }
}

/// Matrix product over `GF(p)`. Errors on shape or modulus mismatch.
pub fn mat_mul(a: &MatrixGF, b: &MatrixGF) -> Result<MatrixGF> {
    if a.p != b.p || a.d != b.d {
        return Err(Error::MatrixMismatch);
    }
    let d = a.d;
    let mut entries = vec![0u64; d * d];
    for i in 0..d {
        for j in 0..d {
            let mut acc = 0u64;
            for l in 0..d {
                acc += a.at(i, l) * b.at(l, j);
            }
            entries[i * d + j] = acc % a.p;
        }
    }
    Ok(MatrixGF { p: a.p, d, entries })
}

pub fn mat_pow(a: &MatrixGF, mut n: u64) -> MatrixGF {
    let mut base = a.clone();
    let mut acc = MatrixGF::identity(a.p, a.d);
    while n > 0 {
        if n & 1 == 1 {
            acc = mat_mul(&acc, &base).expect("same shape");
        }
        base = mat_mul(&base, &base).expect("same shape");
        n >>= 1;
    }
    acc
}

/// Equality in the projective linear group: `A = cB` for a nonzero scalar c.
pub fn proj_equal(a: &MatrixGF, b: &MatrixGF) -> bool {
    if a.p != b.p || a.d != b.d {
        return false;
    }
    (1..a.p).any(|c| *a == b.scalar_mul(c))
}

/// Point of projective space: a nonzero vector over `GF(p)` normalized so
/// its first nonzero coordinate is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ProjPoint {
    p: u64,
    coords: Vec<u64>,
}

impl ProjPoint {
    pub fn new(p: u64, coords: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::MatrixMismatch);
        }
        let coords: Vec<u64> = coords.into_iter().map(|c| c % p).collect();
        let lead = coords
            .iter()
            .copied()
            .find(|&c| c != 0)
            .ok_or_else(|| Error::InvalidParams("projective point must be nonzero".into()))?;
        // multiply by lead^(-1) so the first nonzero coordinate becomes 1
        let inv = crate::nt::pow_mod(lead, p - 2, p);
        Ok(ProjPoint {
            p,
            coords: coords.into_iter().map(|c| c * inv % p).collect(),
        })
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    /// Image under the right action `<x> -> <xA>`.
    pub fn apply(&self, a: &MatrixGF) -> Result<ProjPoint> {
        if a.p != self.p || a.d != self.coords.len() {
            return Err(Error::MatrixMismatch);
        }
        let d = a.d;
        let mut out = vec![0u64; d];
        for (j, o) in out.iter_mut().enumerate() {
            let mut acc = 0u64;
            for (i, &xi) in self.coords.iter().enumerate() {
                acc += xi * a.at(i, j);
            }
            *o = acc % a.p;
        }
        ProjPoint::new(self.p, out)
    }

    /// The representative vectors `x` and `2x, ..., (p-1)x` of this point.
    fn vectors(&self) -> Vec<Vec<u64>> {
        (1..self.p)
            .map(|c| self.coords.iter().map(|&x| x * c % self.p).collect())
            .collect()
    }
}

/// Orbit of `x` under the cyclic group generated by `a`, in iteration order
/// `x, xA, xA^2, ...` until the start point recurs.
pub fn orbit_of_point(x: &ProjPoint, a: &MatrixGF) -> Result<Vec<ProjPoint>> {
    let mut orbit = vec![x.clone()];
    let mut current = x.apply(a)?;
    while current != *x {
        orbit.push(current.clone());
        current = current.apply(a)?;
        if orbit.len() > (a.p.pow(a.d as u32)) as usize {
            return Err(Error::Internal("orbit iteration failed to close".into()));
        }
    }
    Ok(orbit)
}

const M11_X: [[u64; 5]; 5] = [
    [0, 2, 1, 0, 0],
    [2, 1, 1, 2, 2],
    [0, 1, 1, 2, 2],
    [1, 0, 2, 2, 1],
    [1, 2, 2, 2, 0],
];

const M11_Y: [[u64; 5]; 5] = [
    [0, 0, 2, 0, 2],
    [1, 1, 2, 2, 0],
    [2, 2, 2, 2, 2],
    [1, 2, 1, 1, 0],
    [2, 2, 0, 2, 1],
];

const M11_S: [[u64; 5]; 5] = [
    [1, 2, 2, 1, 2],
    [1, 2, 0, 1, 2],
    [0, 2, 2, 1, 2],
    [0, 0, 0, 0, 2],
    [1, 1, 1, 0, 1],
];

fn matrix_from_const(rows: &[[u64; 5]; 5]) -> MatrixGF {
    let refs: Vec<&[u64]> = rows.iter().map(|r| r.as_slice()).collect();
    MatrixGF::from_rows(3, &refs).expect("compiled-in 5x5 matrix over GF(3)")
}

/// The two compiled-in generators of the point stabilizer copy of the
/// Mathieu group inside `PGL(5,3)`, and the order-121 centralizer generator.
pub fn m11_generators() -> (MatrixGF, MatrixGF, MatrixGF) {
    (
        matrix_from_const(&M11_X),
        matrix_from_const(&M11_Y),
        matrix_from_const(&M11_S),
    )
}

/// Builds the (243,11,22,20) near-complete family in `Z_3^5`.
///
/// The 121 points of the projective space over `GF(3)^5` split under the
/// cyclic group generated by `W = XY` into eleven point-orbits of size 11:
/// the orbit of `<(1,0,0,0,0)>` and its images under powers of the
/// centralizer generator `S` (which satisfies `W = S^11`). Each orbit is
/// doubled into the 22 vectors `{x, 2x}` to give the subsets of the family.
///
/// The defining identities of the compiled-in matrices are re-checked on
/// every call; a failure indicates a transcription error and is reported as
/// an internal error.
pub fn construct_m11_sedf() -> Result<DifferenceFamily> {
    let (x, y, s) = m11_generators();
    let identity = MatrixGF::identity(3, 5);
    let w = mat_mul(&x, &y)?;

    // sanity identities for the embedded constants
    if !proj_equal(&mat_pow(&x, 2), &identity) {
        return Err(Error::Internal("X^2 is not the projective identity".into()));
    }
    if !proj_equal(&mat_pow(&y, 4), &identity) {
        return Err(Error::Internal("Y^4 is not the projective identity".into()));
    }
    if !proj_equal(&mat_pow(&w, 11), &identity) {
        return Err(Error::Internal(
            "(XY)^11 is not the projective identity".into(),
        ));
    }
    if !proj_equal(&mat_pow(&s, 11), &w) {
        return Err(Error::Internal(
            "S^11 does not equal XY projectively".into(),
        ));
    }

    let base = ProjPoint::new(3, vec![1, 0, 0, 0, 0])?;
    let first_orbit = orbit_of_point(&base, &w)?;
    if first_orbit.len() != 11 {
        return Err(Error::Internal(format!(
            "base orbit has size {}, expected 11",
            first_orbit.len()
        )));
    }

    // orbit j is the image of orbit 1 under S^(j-1)
    let mut orbits: Vec<Vec<ProjPoint>> = Vec::with_capacity(11);
    let mut power = MatrixGF::identity(3, 5);
    for _ in 0..11 {
        let orbit: Vec<ProjPoint> = first_orbit
            .iter()
            .map(|pt| pt.apply(&power))
            .collect::<Result<_>>()?;
        orbits.push(orbit);
        power = mat_mul(&power, &s)?;
    }

    // the orbits must partition the 121 points
    let mut seen = std::collections::BTreeSet::new();
    for orbit in &orbits {
        for pt in orbit {
            if !seen.insert(pt.clone()) {
                return Err(Error::Internal("orbits overlap".into()));
            }
        }
    }
    if seen.len() != 121 {
        return Err(Error::Internal(format!(
            "orbits cover {} of 121 points",
            seen.len()
        )));
    }

    let group = parse_group_spec("3^5")?;
    let sets: Vec<Vec<GroupElement>> = orbits
        .iter()
        .map(|orbit| {
            orbit
                .iter()
                .flat_map(|pt| pt.vectors())
                .map(|coords| GroupElement { coords })
                .collect()
        })
        .collect();
    DifferenceFamily::new(group, sets, 20)
}

/// The eleven size-11 point orbits underlying [`construct_m11_sedf`], mainly
/// for inspection and tests.
pub fn m11_point_orbits() -> Result<Vec<Vec<ProjPoint>>> {
    let (x, y, s) = m11_generators();
    let w = mat_mul(&x, &y)?;
    let base = ProjPoint::new(3, vec![1, 0, 0, 0, 0])?;
    let first = orbit_of_point(&base, &w)?;
    let mut orbits = Vec::with_capacity(11);
    let mut power = MatrixGF::identity(3, 5);
    for _ in 0..11 {
        orbits.push(
            first
                .iter()
                .map(|pt| pt.apply(&power))
                .collect::<Result<Vec<_>>>()?,
        );
        power = mat_mul(&power, &s)?;
    }
    Ok(orbits)
}

/// The `(k^2+1, 2, k, 1)` family in the cyclic group of order `k^2+1`, with
/// the fixed representative `D1 = {0, ..., k-1}`, `D2 = {k, 2k, ..., k^2}`.
pub fn construct_k2plus1(k: u64) -> Result<DifferenceFamily> {
    if k < 2 {
        return Err(Error::InvalidParams("need k >= 2".into()));
    }
    let v = k * k + 1;
    let group = GroupSpec::cyclic(v)?;
    let d1: Vec<GroupElement> = (0..k)
        .map(|i| group.residue_element(i))
        .collect::<Result<_>>()?;
    let d2: Vec<GroupElement> = (1..=k)
        .map(|j| group.residue_element(j * k))
        .collect::<Result<_>>()?;
    DifferenceFamily::new(group, vec![d1, d2], 1)
}

/// Nonzero quadratic residues modulo a prime `p = 1 (mod 4)`: a
/// `(p, (p-1)/2, (p-5)/4, (p-1)/4)` partial difference set in `Z_p`.
pub fn construct_paley_pds(p: u64) -> Result<Vec<GroupElement>> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(Error::InvalidParams(
            "Paley set needs a prime p = 1 (mod 4)".into(),
        ));
    }
    let group = GroupSpec::cyclic(p)?;
    let mut residues: Vec<u64> = (1..p).map(|x| x * x % p).collect();
    residues.sort_unstable();
    residues.dedup();
    residues
        .into_iter()
        .map(|r| group.residue_element(r))
        .collect()
}

/// Completes a Paley-parameter PDS `D1` to the near-complete family
/// `{D1, G \ (D1 ∪ {1})}` with `lambda = (v-1)/4`.
///
/// The precondition (identity-free `D1` passing the
/// `(v, (v-1)/2, (v-5)/4, (v-1)/4)` PDS verification) is checked and
/// violations are reported as errors.
pub fn sedf_from_pds(group: &GroupSpec, d1: &[GroupElement]) -> Result<DifferenceFamily> {
    let v = group.order();
    if v % 4 != 1 {
        return Err(Error::InvalidParams("group order must be 1 (mod 4)".into()));
    }
    let (k, l, mu) = ((v - 1) / 2, (v - 5) / 4, (v - 1) / 4);
    let rep = crate::designs::verify_pds(group, d1, k, l, mu)?;
    if !rep.passed {
        return Err(Error::InvalidParams(
            "subset is not a Paley-parameter partial difference set".into(),
        ));
    }
    let mut in_d1 = vec![false; v as usize];
    for g in d1 {
        in_d1[group.encode(g) as usize] = true;
    }
    let d2: Vec<GroupElement> = (1..v)
        .filter(|&i| !in_d1[i as usize])
        .map(|i| group.decode(i))
        .collect();
    DifferenceFamily::new(group.clone(), vec![d1.to_vec(), d2], (v - 1) / 4)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{near_complete_equivalence, verify_pds, verify_sedf};

    /// W = XY as printed alongside the generators.
    const M11_W: [[u64; 5]; 5] = [
        [1, 1, 0, 0, 2],
        [0, 2, 1, 1, 2],
        [0, 2, 0, 1, 1],
        [2, 1, 2, 2, 1],
        [2, 1, 0, 1, 0],
    ];

    #[test]
    fn generator_identities() {
        let (x, y, s) = m11_generators();
        let identity = MatrixGF::identity(3, 5);
        assert!(proj_equal(&mat_pow(&x, 2), &identity));
        assert!(proj_equal(&mat_pow(&y, 4), &identity));
        let w = mat_mul(&x, &y).unwrap();
        assert_eq!(w, matrix_from_const(&M11_W));
        assert!(proj_equal(&mat_pow(&w, 11), &identity));
        assert!(proj_equal(&mat_pow(&s, 11), &w));
        assert_eq!(mat_pow(&identity, 7), identity);
    }

    #[test]
    fn proj_equal_scalars() {
        let (x, _, _) = m11_generators();
        assert!(proj_equal(&x, &x.scalar_mul(2)));
        assert!(!proj_equal(&x, &MatrixGF::identity(3, 5)));
    }

    #[test]
    fn orbit_basics() {
        let identity = MatrixGF::identity(3, 5);
        let pt = ProjPoint::new(3, vec![0, 1, 2, 0, 1]).unwrap();
        assert_eq!(orbit_of_point(&pt, &identity).unwrap(), vec![pt.clone()]);

        let orbits = m11_point_orbits().unwrap();
        assert_eq!(orbits.len(), 11);
        let mut all: Vec<ProjPoint> = orbits.iter().flatten().cloned().collect();
        assert!(orbits.iter().all(|o| o.len() == 11));
        all.sort();
        all.dedup();
        assert_eq!(
            all.len(),
            121,
            "orbits must partition the projective points"
        );
    }

    #[test]
    fn point_normalization() {
        let a = ProjPoint::new(3, vec![2, 2, 1, 0, 1]).unwrap();
        let b = ProjPoint::new(3, vec![1, 1, 2, 0, 2]).unwrap();
        assert_eq!(a, b);
        assert!(ProjPoint::new(3, vec![0, 0, 0, 0, 0]).is_err());
    }

    #[test]
    fn m11_family_verifies() {
        let fam = construct_m11_sedf().unwrap();
        let p = fam.params();
        assert_eq!((p.v, p.m, p.k, p.lambda), (243, 11, 22, 20));
        assert!(fam.is_near_complete());
        let rep = verify_sedf(&fam).unwrap();
        assert!(rep.passed);
        assert!(rep.set_nontrivial.iter().all(|&b| b));

        // each subset is a nontrivial regular (243,22,1,2)-PDS
        for set in fam.sets() {
            let rep = verify_pds(fam.group(), set, 22, 1, 2).unwrap();
            assert!(rep.passed);
            assert_eq!(rep.regular, Some(true));
            assert!(rep.set_nontrivial[0]);
        }
        assert!(near_complete_equivalence(&fam).unwrap());
    }

    #[test]
    fn m11_family_is_deterministic() {
        let a = serde_json::to_string(&construct_m11_sedf().unwrap()).unwrap();
        let b = serde_json::to_string(&construct_m11_sedf().unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn k2plus1_families() {
        for k in [2u64, 3, 4, 5, 6] {
            let fam = construct_k2plus1(k).unwrap();
            let p = fam.params();
            assert_eq!((p.v, p.m, p.k, p.lambda), (k * k + 1, 2, k, 1));
            assert!(verify_sedf(&fam).unwrap().passed, "k={k}");
        }
        assert!(construct_k2plus1(1).is_err());
    }

    #[test]
    fn paley_sets() {
        let g13 = GroupSpec::cyclic(13).unwrap();
        let qr: Vec<u64> = construct_paley_pds(13)
            .unwrap()
            .iter()
            .map(|e| g13.encode(e))
            .collect();
        assert_eq!(qr, vec![1, 3, 4, 9, 10, 12]);

        let g5 = GroupSpec::cyclic(5).unwrap();
        let qr5: Vec<u64> = construct_paley_pds(5)
            .unwrap()
            .iter()
            .map(|e| g5.encode(e))
            .collect();
        assert_eq!(qr5, vec![1, 4]);

        let set17 = construct_paley_pds(17).unwrap();
        assert_eq!(set17.len(), 8);
        let g17 = GroupSpec::cyclic(17).unwrap();
        assert!(verify_pds(&g17, &set17, 8, 3, 4).unwrap().passed);

        assert!(construct_paley_pds(7).is_err()); // 7 = 3 (mod 4)
        assert!(construct_paley_pds(15).is_err());
    }

    #[test]
    fn sedf_from_pds_examples() {
        for p in [5u64, 13, 17, 29] {
            let group = GroupSpec::cyclic(p).unwrap();
            let d1 = construct_paley_pds(p).unwrap();
            let fam = sedf_from_pds(&group, &d1).unwrap();
            let prm = fam.params();
            assert_eq!(
                (prm.v, prm.m, prm.k, prm.lambda),
                (p, 2, (p - 1) / 2, (p - 1) / 4)
            );
            assert!(verify_sedf(&fam).unwrap().passed, "p={p}");
            assert!(fam.is_near_complete());
        }
        // Z5 with {1,4} gives {{1,4},{2,3}}
        let g5 = GroupSpec::cyclic(5).unwrap();
        let fam = sedf_from_pds(&g5, &construct_paley_pds(5).unwrap()).unwrap();
        let sets: Vec<Vec<u64>> = fam
            .sets()
            .iter()
            .map(|s| s.iter().map(|e| g5.encode(e)).collect())
            .collect();
        assert_eq!(sets, vec![vec![1, 4], vec![2, 3]]);

        // precondition violations are errors
        let bad = vec![g5.decode(1), g5.decode(2)];
        assert!(sedf_from_pds(&g5, &bad).is_err());
    }
}
