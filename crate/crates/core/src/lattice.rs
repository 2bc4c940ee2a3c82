//! Triangular-lattice geometry in integer coordinates.
//!
//! A site `(m, n)` sits at the Euclidean point `(m + n/2, n·√3/2)`, so the
//! squared distance between sites is the integer form `Δm² + Δm·Δn + Δn²`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::eisenstein::{is_attainable, loeschian_representations};
use crate::error::{Error, Result};

/// Largest coordinate magnitude accepted by the checked metric.
pub const COORD_BOUND: i64 = 1 << 30;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct LatticeSite {
    pub m: i64,
    pub n: i64,
}

impl LatticeSite {
    pub const ORIGIN: Self = Self::new(0, 0);

    pub const fn new(m: i64, n: i64) -> Self {
        Self { m, n }
    }

    /// Squared distance without bound checks; callers keep coordinates small.
    #[inline]
    pub fn dist2(self, o: Self) -> i64 {
        let dm = self.m - o.m;
        let dn = self.n - o.n;
        dm * dm + dm * dn + dn * dn
    }

    #[inline]
    pub fn norm2(self) -> i64 {
        self.dist2(Self::ORIGIN)
    }

    pub fn embed(self) -> (f64, f64) {
        (
            self.m as f64 + self.n as f64 / 2.0,
            self.n as f64 * 3f64.sqrt() / 2.0,
        )
    }

    /// Mirror image under `(m, n) ↦ (n, m)`.
    pub fn reflect(self) -> Self {
        Self::new(self.n, self.m)
    }

    /// Rotation by 60° about the origin.
    pub fn rotate60(self) -> Self {
        Self::new(-self.n, self.m + self.n)
    }

    fn in_bounds(self) -> bool {
        self.m.abs() <= COORD_BOUND && self.n.abs() <= COORD_BOUND
    }
}

impl std::ops::Add for LatticeSite {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.m + o.m, self.n + o.n)
    }
}

impl std::ops::Sub for LatticeSite {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.m - o.m, self.n - o.n)
    }
}

impl std::ops::Neg for LatticeSite {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.m, -self.n)
    }
}

impl fmt::Display for LatticeSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.m, self.n)
    }
}

impl From<(i64, i64)> for LatticeSite {
    fn from((m, n): (i64, i64)) -> Self {
        Self::new(m, n)
    }
}

/// Checked squared distance; rejects coordinates beyond [`COORD_BOUND`].
pub fn dist_squared(x: LatticeSite, y: LatticeSite) -> Result<u64> {
    for s in [x, y] {
        if !s.in_bounds() {
            return Err(Error::Overflow(s));
        }
    }
    Ok(x.dist2(y) as u64)
}

pub fn embed(x: LatticeSite) -> (f64, f64) {
    x.embed()
}

/// Sublattice generated by `(a, b)` and its 60° rotation `(-b, a + b)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Sublattice {
    a: i64,
    b: i64,
}

impl Sublattice {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a < b || b < 0 || a == 0 {
            return Err(Error::InvalidSublattice(a, b));
        }
        Ok(Self { a, b })
    }

    /// Canonical class of any nonzero generator: rotates into the cone
    /// `a >= b >= 0`, or `b > a >= 0` for the mirror class.
    pub fn canonical_generator(v: LatticeSite) -> (i64, i64) {
        let mut v = v;
        for _ in 0..6 {
            if v.m > 0 && v.n >= 0 {
                break;
            }
            v = v.rotate60();
        }
        (v.m, v.n)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn generator(&self) -> LatticeSite {
        LatticeSite::new(self.a, self.b)
    }

    /// Index in the full lattice, equal to `D²`.
    pub fn index(&self) -> u64 {
        (self.a * self.a + self.a * self.b + self.b * self.b) as u64
    }

    pub fn basis(&self) -> [LatticeSite; 2] {
        [
            LatticeSite::new(self.a, self.b),
            LatticeSite::new(-self.b, self.a + self.b),
        ]
    }

    /// True when the mirror image is a different sublattice.
    pub fn is_chiral(&self) -> bool {
        self.a != self.b && self.a != 0 && self.b != 0
    }

    pub fn six_neighbors(&self) -> [LatticeSite; 6] {
        let (a, b) = (self.a, self.b);
        [
            LatticeSite::new(a, b),
            LatticeSite::new(-b, a + b),
            LatticeSite::new(-a - b, a),
            LatticeSite::new(-a, -b),
            LatticeSite::new(b, -a - b),
            LatticeSite::new(a + b, -a),
        ]
    }

    /// Integer coordinates of `x` in the basis, scaled by the index.
    fn scaled_coords(&self, x: LatticeSite) -> (i64, i64) {
        let (a, b) = (self.a, self.b);
        (x.m * (a + b) + b * x.n, a * x.n - b * x.m)
    }

    pub fn contains(&self, x: LatticeSite) -> bool {
        let d = self.index() as i64;
        let (u, v) = self.scaled_coords(x);
        u % d == 0 && v % d == 0
    }

    /// The `D²` sites `s·v₁ + t·v₂` with `s, t ∈ [0, 1)`: one per coset.
    pub fn fundamental_sites(&self) -> Vec<LatticeSite> {
        let d = self.index() as i64;
        let [v1, v2] = self.basis();
        let corners = [LatticeSite::ORIGIN, v1, v2, v1 + v2];
        let (m0, m1) = min_max(corners.iter().map(|c| c.m));
        let (n0, n1) = min_max(corners.iter().map(|c| c.n));
        let mut out = Vec::with_capacity(d as usize);
        for m in m0..=m1 {
            for n in n0..=n1 {
                let x = LatticeSite::new(m, n);
                let (u, v) = self.scaled_coords(x);
                if (0..d).contains(&u) && (0..d).contains(&v) {
                    out.push(x);
                }
            }
        }
        out
    }
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

fn min_max(it: impl Iterator<Item = i64>) -> (i64, i64) {
    it.fold((i64::MAX, i64::MIN), |(lo, hi), v| (lo.min(v), hi.max(v)))
}

pub fn six_neighbors(s: &Sublattice) -> [LatticeSite; 6] {
    s.six_neighbors()
}

pub fn sublattice_contains(s: &Sublattice, x: LatticeSite) -> bool {
    s.contains(x)
}

/// One dense-packing configuration: a (possibly mirrored) sublattice shifted by `shift`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroundStateDescriptor {
    pub class: Sublattice,
    pub reflected: bool,
    pub shift: LatticeSite,
}

impl GroundStateDescriptor {
    pub fn occupies(&self, x: LatticeSite) -> bool {
        let rel = x - self.shift;
        if self.reflected {
            self.class.contains(rel.reflect())
        } else {
            self.class.contains(rel)
        }
    }

    /// The six occupied sites at distance `D` from an occupied site.
    pub fn neighbor_offsets(&self) -> [LatticeSite; 6] {
        let mut v = self.class.six_neighbors();
        if self.reflected {
            for s in &mut v {
                *s = s.reflect();
            }
        }
        v
    }
}

pub fn enumerate_ground_states(n: u64) -> Result<Vec<GroundStateDescriptor>> {
    if !is_attainable(n) {
        return Err(Error::NotAttainable(n));
    }
    let mut out = Vec::new();
    for (a, b) in loeschian_representations(n) {
        let class = Sublattice::new(a as i64, b as i64)?;
        let shifts = class.fundamental_sites();
        for &shift in &shifts {
            out.push(GroundStateDescriptor {
                class,
                reflected: false,
                shift,
            });
        }
        if class.is_chiral() {
            for &shift in &shifts {
                out.push(GroundStateDescriptor {
                    class,
                    reflected: true,
                    shift: shift.reflect(),
                });
            }
        }
    }
    Ok(out)
}

/// Index `(k, l)` of the common `D² × D²` parallelogram containing `x`.
pub fn common_parallelogram_index(x: LatticeSite, n: u64) -> (i64, i64) {
    let d = n as i64;
    (x.m.div_euclid(d), x.n.div_euclid(d))
}

/// Squared distance on the torus `[-kD², kD²)²` with opposite sides identified.
pub fn torus_distance_squared(x: LatticeSite, y: LatticeSite, k: u64, n: u64) -> Result<u64> {
    let half = (k * n) as i64;
    for s in [x, y] {
        if !(-half..half).contains(&s.m) || !(-half..half).contains(&s.n) {
            return Err(Error::OutOfDomain { site: s, half });
        }
    }
    let period = 2 * half;
    let wraps = |d: i64| {
        let d = d.rem_euclid(period);
        [d, d - period]
    };
    let mut best = i64::MAX;
    for dm in wraps(x.m - y.m) {
        for dn in wraps(x.n - y.n) {
            best = best.min(dm * dm + dm * dn + dn * dn);
        }
    }
    Ok(best as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(m: i64, n: i64) -> LatticeSite {
        LatticeSite::new(m, n)
    }

    #[test]
    fn metric_examples() {
        assert_eq!(dist_squared(s(0, 0), s(0, 0)), Ok(0));
        assert_eq!(dist_squared(s(0, 0), s(5, 3)), Ok(49));
        assert_eq!(dist_squared(s(0, 0), s(4, 3)), Ok(37));
        assert!(matches!(
            dist_squared(s(COORD_BOUND + 1, 0), s(0, 0)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn embedding() {
        assert_eq!(embed(s(0, 0)), (0.0, 0.0));
        let (x, y) = embed(s(0, 1));
        assert_eq!(x, 0.5);
        assert!((y - 0.866_025_403_784_438_6).abs() < 1e-15);
        let (x, y) = embed(s(1, 1));
        assert_eq!(x, 1.5);
        assert!((y - 0.866_025_403_784_438_6).abs() < 1e-15);
    }

    #[test]
    fn neighbors_of_seven() {
        let sub = Sublattice::new(7, 0).unwrap();
        assert_eq!(
            sub.six_neighbors(),
            [s(7, 0), s(0, 7), s(-7, 7), s(-7, 0), s(0, -7), s(7, -7)]
        );
        let inclined = Sublattice::new(5, 3).unwrap();
        assert!(inclined.six_neighbors().contains(&s(-3, 8)));
        for v in inclined.six_neighbors() {
            assert_eq!(v.norm2(), 49);
            assert!(inclined.contains(v));
        }
    }

    #[test]
    fn membership() {
        let sub = Sublattice::new(7, 0).unwrap();
        assert!(sub.contains(s(14, 7)));
        assert!(!sub.contains(s(1, 1)));
        assert!(Sublattice::new(5, 3).unwrap().contains(s(2, 11)));
        assert!(Sublattice::new(3, 5).is_err());
    }

    #[test]
    fn ground_state_enumeration() {
        assert_eq!(enumerate_ground_states(49).unwrap().len(), 147);
        assert_eq!(enumerate_ground_states(1).unwrap().len(), 1);
        let gs = enumerate_ground_states(169).unwrap();
        assert_eq!(gs.len(), 507);
        assert_eq!(gs.iter().filter(|g| g.class.a() == 8).count(), 338);
        assert_eq!(enumerate_ground_states(2), Err(Error::NotAttainable(2)));
    }

    #[test]
    fn ground_states_are_distinct_configurations() {
        // Distinct descriptors must differ somewhere in a period window.
        let n = 49;
        let gs = enumerate_ground_states(n).unwrap();
        let window: Vec<LatticeSite> = (0..n as i64)
            .flat_map(|m| (0..n as i64).map(move |k| s(m, k)))
            .collect();
        let mut patterns: Vec<Vec<bool>> = gs
            .iter()
            .map(|g| window.iter().map(|&x| g.occupies(x)).collect())
            .collect();
        patterns.sort();
        patterns.dedup();
        assert_eq!(patterns.len(), gs.len());
    }

    #[test]
    fn parallelogram_index() {
        assert_eq!(common_parallelogram_index(s(0, 0), 49), (0, 0));
        assert_eq!(common_parallelogram_index(s(49, -1), 49), (1, -1));
        assert_eq!(common_parallelogram_index(s(-1, 48), 49), (-1, 0));
    }

    #[test]
    fn torus() {
        assert_eq!(torus_distance_squared(s(3, 4), s(3, 4), 1, 49), Ok(0));
        assert_eq!(torus_distance_squared(s(-49, 0), s(48, 0), 1, 49), Ok(1));
        assert_eq!(torus_distance_squared(s(1, 2), s(5, -3), 1, 49), Ok(s(1, 2).dist2(s(5, -3)) as u64));
        assert!(matches!(
            torus_distance_squared(s(49, 0), s(0, 0), 1, 49),
            Err(Error::OutOfDomain { .. })
        ));
    }

    #[test]
    fn canonical_generators() {
        let sub = Sublattice::new(5, 3).unwrap();
        for v in sub.six_neighbors() {
            assert_eq!(Sublattice::canonical_generator(v), (5, 3));
        }
        for v in sub.six_neighbors() {
            assert_eq!(Sublattice::canonical_generator(v.reflect()), (3, 5));
        }
    }
}
