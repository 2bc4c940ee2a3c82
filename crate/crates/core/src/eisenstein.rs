//! Eisenstein integers and the arithmetic classification of squared diameters.
//!
//! An element is stored as the pair `(a, b)` standing for `a - b·ω`, where
//! `ω = -1/2 + i·√3/2`. With this convention the norm is the Löschian form
//! `a² + ab + b²`, the same quadratic form that measures squared distances on
//! the triangular lattice.

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EisensteinInteger {
    pub a: i64,
    pub b: i64,
}

impl EisensteinInteger {
    pub const ZERO: Self = Self::new(0, 0);
    pub const ONE: Self = Self::new(1, 0);
    pub const OMEGA: Self = Self::new(0, -1);
    /// `1 - ω`, the prime above 3.
    pub const RAMIFIED: Self = Self::new(1, 1);

    pub const fn new(a: i64, b: i64) -> Self {
        Self { a, b }
    }

    pub fn from_rational(p: i64) -> Self {
        Self::new(p, 0)
    }

    pub fn norm(self) -> u64 {
        let (a, b) = (self.a as i128, self.b as i128);
        (a * a + a * b + b * b) as u64
    }

    /// Complex conjugate `a - b·ω²`.
    pub fn conj(self) -> Self {
        Self::new(self.a + self.b, -self.b)
    }

    pub fn is_zero(self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn is_unit(self) -> bool {
        self.norm() == 1
    }

    /// The six units `±1, ±ω, ±ω²`.
    pub fn units() -> [Self; 6] {
        let w = Self::OMEGA;
        let w2 = w * w;
        [Self::ONE, -Self::ONE, w, -w, w2, -w2]
    }

    pub fn pow(self, mut e: u32) -> Self {
        let mut base = self;
        let mut acc = Self::ONE;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn checked_div(self, d: Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        let n = d.norm() as i128;
        let num = self.mul_wide(d.conj());
        if num.0 % n != 0 || num.1 % n != 0 {
            return None;
        }
        Some(Self::new((num.0 / n) as i64, (num.1 / n) as i64))
    }

    fn mul_wide(self, o: Self) -> (i128, i128) {
        // (a - bω)(c - dω) = (ac - bd) - (ad + bc + bd)ω, using ω² = -1 - ω
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        (a * c - b * d, a * d + b * c + b * d)
    }
}

impl Mul for EisensteinInteger {
    type Output = Self;

    fn mul(self, o: Self) -> Self {
        let (x, y) = self.mul_wide(o);
        Self::new(x as i64, y as i64)
    }
}

impl Neg for EisensteinInteger {
    type Output = Self;

    fn neg(self) -> Self {
        Self::new(-self.a, -self.b)
    }
}

impl fmt::Display for EisensteinInteger {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}ω", self.a, self.b)
    }
}

/// Arithmetic type of a squared diameter.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiameterCase {
    /// No prime `≡ 1 (mod 3)` divides `D²`: a single reflection-symmetric class.
    Case1,
    /// Exactly one prime `≡ 1 (mod 3)`, to the first power: one chiral pair.
    Case2,
    /// Everything else that is attainable: at least two classes.
    Case3,
}

impl fmt::Display for DiameterCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Case1 => "Case1",
            Self::Case2 => "Case2",
            Self::Case3 => "Case3",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiameterClass {
    pub n: u64,
    pub attainable: bool,
    pub case: DiameterCase,
    pub representations: Vec<(u64, u64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinPrimeFactor {
    /// Canonical generator with `a > b >= 1` and `a² + ab + b²` prime.
    pub a: i64,
    pub b: i64,
    pub exponent: u32,
    /// `false` for `a - bω`, `true` for its conjugate `a - bω²`.
    pub conjugate: bool,
}

impl EisensteinPrimeFactor {
    pub fn element(&self) -> EisensteinInteger {
        let p = EisensteinInteger::new(self.a, self.b);
        if self.conjugate {
            p.conj()
        } else {
            p
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EisensteinFactorization {
    pub unit: EisensteinInteger,
    /// Exponent of `1 - ω`.
    pub alpha: u32,
    /// Inert rational primes `p ≡ 2 (mod 3)` with their exponents.
    pub rational_primes: Vec<(u64, u32)>,
    pub eisenstein_primes: Vec<EisensteinPrimeFactor>,
}

impl EisensteinFactorization {
    pub fn recompose(&self) -> EisensteinInteger {
        let mut z = self.unit * EisensteinInteger::RAMIFIED.pow(self.alpha);
        for &(p, e) in &self.rational_primes {
            z = z * EisensteinInteger::from_rational(p as i64).pow(e);
        }
        for f in &self.eisenstein_primes {
            z = z * f.element().pow(f.exponent);
        }
        z
    }
}

// ---------------------------------------------------------------------------
// rational integer helpers

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin, exact for every `u64`.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factorization by trial division, ascending primes.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut push = |p: u64, n: &mut u64| {
        let mut e = 0;
        while *n % p == 0 {
            *n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
    };
    push(2, &mut n);
    push(3, &mut n);
    let mut p = 5u64;
    let mut last = 0;
    while p.saturating_mul(p) <= n {
        if n != last {
            if is_prime(n) {
                break;
            }
            last = n;
        }
        push(p, &mut n);
        push(p + 2, &mut n);
        p += 6;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn isqrt(n: u64) -> u64 {
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as u64;
    while x.saturating_mul(x) > n {
        x -= 1;
    }
    while (x + 1).saturating_mul(x + 1) <= n {
        x += 1;
    }
    x
}

// ---------------------------------------------------------------------------
// classification

pub fn is_attainable(n: u64) -> bool {
    n >= 1
        && factorize(n)
            .iter()
            .all(|&(p, e)| p % 3 != 2 || e % 2 == 0)
}

/// All `(a, b)` with `a >= b >= 0` and `a² + ab + b² = n`, by descending `a`.
pub fn loeschian_representations(n: u64) -> Vec<(u64, u64)> {
    let mut reps = Vec::new();
    if n == 0 {
        return reps;
    }
    let bmax = isqrt(n / 3);
    for b in 0..=bmax {
        // a = (-b + sqrt(4n - 3b²)) / 2
        let disc = 4 * n as u128 - 3 * (b as u128) * (b as u128);
        let disc = disc as u64;
        let s = isqrt(disc);
        if s * s != disc || s < b || (s - b) % 2 != 0 {
            continue;
        }
        let a = (s - b) / 2;
        if a >= b {
            reps.push((a, b));
        }
    }
    reps
}

pub fn classify_diameter(n: u64) -> Result<DiameterClass> {
    if !is_attainable(n) {
        return Err(Error::NotAttainable(n));
    }
    let split: Vec<u32> = factorize(n)
        .into_iter()
        .filter(|&(p, _)| p % 3 == 1)
        .map(|(_, e)| e)
        .collect();
    let case = match split.as_slice() {
        [] => DiameterCase::Case1,
        [1] => DiameterCase::Case2,
        _ => DiameterCase::Case3,
    };
    Ok(DiameterClass {
        n,
        attainable: true,
        case,
        representations: loeschian_representations(n),
    })
}

/// Splits a prime `p ≡ 1 (mod 3)` as `a² + ab + b²` with `a > b >= 1`.
pub fn factor_rational_prime(p: u64) -> Result<(u64, u64)> {
    if p % 3 != 1 || !is_prime(p) {
        return Err(Error::NotDecomposable(p));
    }
    loeschian_representations(p)
        .into_iter()
        .find(|&(a, b)| a > b && b >= 1)
        .ok_or(Error::NotDecomposable(p))
}

/// Number of ground states: `n` per reflection-symmetric class, `2n` per chiral class.
pub fn ground_state_count(n: u64) -> Result<u64> {
    if !is_attainable(n) {
        return Err(Error::NotAttainable(n));
    }
    Ok(loeschian_representations(n)
        .iter()
        .map(|&(a, b)| if b == 0 || a == b { n } else { 2 * n })
        .sum())
}

pub fn factor_eisenstein(z: EisensteinInteger) -> Result<EisensteinFactorization> {
    if z.is_zero() {
        return Err(Error::ZeroElement);
    }
    let mut rest = z;
    let mut alpha = 0;
    let mut rational_primes = Vec::new();
    let mut eisenstein_primes = Vec::new();
    for (p, e) in factorize(z.norm()) {
        match p % 3 {
            0 => {
                while let Some(q) = rest.checked_div(EisensteinInteger::RAMIFIED) {
                    rest = q;
                    alpha += 1;
                }
            }
            2 => {
                let pe = EisensteinInteger::from_rational(p as i64);
                let mut k = 0;
                while let Some(q) = rest.checked_div(pe) {
                    rest = q;
                    k += 1;
                }
                debug_assert_eq!(2 * k, e);
                rational_primes.push((p, k));
            }
            _ => {
                let (a, b) = factor_rational_prime(p)?;
                for conjugate in [false, true] {
                    let f = EisensteinPrimeFactor {
                        a: a as i64,
                        b: b as i64,
                        exponent: 0,
                        conjugate,
                    };
                    let pi = f.element();
                    let mut k = 0;
                    while let Some(q) = rest.checked_div(pi) {
                        rest = q;
                        k += 1;
                    }
                    if k > 0 {
                        eisenstein_primes.push(EisensteinPrimeFactor { exponent: k, ..f });
                    }
                }
            }
        }
    }
    debug_assert!(rest.is_unit());
    Ok(EisensteinFactorization {
        unit: rest,
        alpha,
        rational_primes,
        eisenstein_primes,
    })
}
