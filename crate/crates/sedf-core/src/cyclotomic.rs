//! Exact arithmetic in the ring of integers `Z[zeta_n]`.
//!
//! A [`CycInt`] is stored canonically as its coefficient vector on the power
//! basis `{1, zeta_n, ..., zeta_n^(phi(n)-1)}` after reduction modulo the
//! n-th cyclotomic polynomial. Coefficients are arbitrary-precision integers
//! so that character sums over groups of up to a million elements stay exact.
//!
//! Arithmetic across different root orders is intentionally unsupported;
//! callers embed into a common order explicitly.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::nt::euler_phi;

/// Dense integer polynomial, coefficients low to high degree.
///
/// The zero polynomial is the empty coefficient list; otherwise the leading
/// coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// x^n - 1
    pub fn x_pow_minus_one(n: usize) -> Self {
        let mut c = vec![BigInt::zero(); n + 1];
        c[0] = -BigInt::one();
        c[n] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial { coeffs: vec![] };
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Exact division by a monic divisor. Panics if the division leaves a
    /// remainder; callers only divide where exactness is guaranteed.
    fn exact_div_monic(&self, divisor: &Self) -> Self {
        assert!(!divisor.is_zero(), "division by zero polynomial");
        assert!(divisor.coeffs.last().unwrap().is_one(), "divisor not monic");
        if self.is_zero() {
            return IntPolynomial { coeffs: vec![] };
        }
        let mut rem = self.coeffs.clone();
        let d = divisor.coeffs.len() - 1;
        assert!(rem.len() > d || rem.len() == divisor.coeffs.len());
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for i in (0..quot.len()).rev() {
            let c = std::mem::take(&mut rem[i + d]);
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().take(d).enumerate() {
                rem[i + j] -= &c * b;
            }
            quot[i] = c;
        }
        assert!(
            rem.iter().all(|c| c.is_zero()),
            "polynomial division was not exact"
        );
        IntPolynomial::new(quot)
    }
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<IntPolynomial>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<IntPolynomial>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The n-th cyclotomic polynomial, computed by exact division of `x^n - 1`
/// by the cyclotomic polynomials of the proper divisors of `n`.
///
/// Results are memoized for the lifetime of the process since reduction
/// modulo these polynomials dominates character-sum cost.
pub fn cyclotomic_polynomial(n: u64) -> Arc<IntPolynomial> {
    assert!(n >= 1, "cyclotomic polynomial needs n >= 1");
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return Arc::clone(hit);
    }
    let result = if n == 1 {
        IntPolynomial::from_i64(&[-1, 1])
    } else {
        let mut acc = IntPolynomial::x_pow_minus_one(n as usize);
        for d in 1..n {
            if n.is_multiple_of(d) {
                acc = acc.exact_div_monic(&cyclotomic_polynomial(d));
            }
        }
        acc
    };
    let arc = Arc::new(result);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(n, Arc::clone(&arc));
    arc
}

/// Element of `Z[zeta_n]` in canonical reduced form.
///
/// Two values are equal iff their orders and coefficient vectors are equal;
/// the coefficient vector always has length `phi(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycInt {
    n: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    /// Zero in `Z[zeta_n]`.
    pub fn zero(n: u64) -> Self {
        assert!(n >= 1);
        CycInt {
            n,
            coeffs: vec![BigInt::zero(); euler_phi(n) as usize],
        }
    }

    /// The rational integer `v` viewed in `Z[zeta_n]`.
    pub fn from_int(n: u64, v: impl Into<BigInt>) -> Self {
        let mut z = Self::zero(n);
        z.coeffs[0] = v.into();
        z
    }

    /// `zeta_n^k`, reduced.
    pub fn root_power(n: u64, k: u64) -> Self {
        let mut counts = vec![BigInt::zero(); n as usize];
        counts[(k % n) as usize] = BigInt::one();
        Self::from_exponent_counts(n, counts)
    }

    /// Builds `sum_i counts[i] * zeta_n^i` and reduces modulo the n-th
    /// cyclotomic polynomial. `counts` may have any length.
    pub fn from_exponent_counts(n: u64, counts: Vec<BigInt>) -> Self {
        assert!(n >= 1);
        let phi = euler_phi(n) as usize;
        // fold exponents mod n first
        let mut folded = vec![BigInt::zero(); n as usize];
        for (i, c) in counts.into_iter().enumerate() {
            if !c.is_zero() {
                folded[i % n as usize] += c;
            }
        }
        let mut coeffs = reduce_mod_cyclotomic(n, folded);
        coeffs.resize(phi, BigInt::zero());
        CycInt { n, coeffs }
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    /// Coefficients on the basis `{1, zeta, ..., zeta^(phi(n)-1)}`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// `Some(v)` when the value is the rational integer `v`, i.e. every
    /// coefficient beyond index 0 vanishes.
    pub fn as_rational_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    fn check_same_order(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            Err(Error::MismatchedOrders(self.n, other.n))
        } else {
            Ok(())
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycInt { n: self.n, coeffs })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a - b)
            .collect();
        Ok(CycInt { n: self.n, coeffs })
    }

    pub fn neg(&self) -> Self {
        CycInt {
            n: self.n,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    /// Product, canonically reduced. Errors on mismatched orders.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same_order(other)?;
        let mut prod = vec![BigInt::zero(); 2 * self.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        Ok(Self::from_exponent_counts(self.n, prod))
    }

    /// Image under `zeta_n -> zeta_n^(-1)`, reduced.
    pub fn conjugate(&self) -> Self {
        let n = self.n as usize;
        let mut counts = vec![BigInt::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                counts[(n - i) % n] += c;
            }
        }
        Self::from_exponent_counts(self.n, counts)
    }

    /// `x * conj(x)`; the caller may test rational-integrality of the result.
    pub fn absolute_square(&self) -> Self {
        self.multiply(&self.conjugate())
            .expect("same order by construction")
    }

    /// Numerical evaluation at `zeta_n = exp(2 pi i / n)`. Only used by
    /// sanity tests; equality checks elsewhere are exact.
    pub fn approx(&self) -> (f64, f64) {
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = bigint_to_f64(c);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / self.n as f64;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_string().parse::<f64>().unwrap_or(0.0)
}

/// Reduces a dense exponent vector (length n, entry i is the coefficient of
/// `zeta_n^i`) modulo the n-th cyclotomic polynomial.
fn reduce_mod_cyclotomic(n: u64, mut coeffs: Vec<BigInt>) -> Vec<BigInt> {
    let phi = cyclotomic_polynomial(n);
    let d = phi.degree();
    let pc = phi.coeffs();
    for i in (d..coeffs.len()).rev() {
        let c = std::mem::take(&mut coeffs[i]);
        if c.is_zero() {
            continue;
        }
        // zeta^i = -c * (lower terms of Phi_n) * zeta^(i-d)
        for (j, b) in pc.iter().take(d).enumerate() {
            let t = &c * b;
            coeffs[i - d + j] -= t;
        }
    }
    coeffs.truncate(d);
    coeffs
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first && c.is_positive() {
                write!(f, "+")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 if c.is_one() => write!(f, "z")?,
                1 if (-c).is_one() => write!(f, "-z")?,
                1 => write!(f, "{c}*z")?,
                _ if c.is_one() => write!(f, "z^{i}")?,
                _ if (-c).is_one() => write!(f, "-z^{i}")?,
                _ => write!(f, "{c}*z^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for CycInt {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("CycInt", 2)?;
        s.serialize_field("n", &self.n)?;
        let coeffs: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        s.serialize_field("coeffs", &coeffs)?;
        s.end()
    }
}
