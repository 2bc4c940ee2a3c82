//! Low-order defects of a ground state: particles inserted into the
//! concave circular triangles between sublattice sites.
//!
//! Inserting one particle inside a `D`-triangle repels its three vertices.
//! Two, three or four inserted particles spread over a `D`-parallelogram, a
//! trapezoid or a `2D`-triangle remove four, five or six ground-state
//! particles, so every defect counted here has excess 2.

use serde::{Deserialize, Serialize};

use crate::lattice::{LatticeSite, Sublattice};

/// Removed minus inserted particles for the pair, triple and quadruple defects.
pub const DEFECT_EXCESS: u32 = 2;

/// Third vertex `C` of the equilateral triangle on `A → B`, turning counter-clockwise.
pub fn third_vertex(a: LatticeSite, b: LatticeSite) -> LatticeSite {
    LatticeSite::new(a.m + a.n - b.n, b.m + b.n - a.m)
}

/// Sites inside the triangle `A, B, third_vertex(A, B)` that keep distance
/// `>= D` from the three sublattice sites mirrored across its edges.
///
/// The scan covers the open bounding box in `(m, n)` order, so the output is
/// sorted lexicographically.
pub fn insertable_sites_in_triangle(a: LatticeSite, b: LatticeSite) -> Vec<LatticeSite> {
    let d2 = a.dist2(b);
    let c = third_vertex(a, b);
    let mirrored = [third_vertex(b, a), third_vertex(a, c), third_vertex(c, b)];
    let left = a.m.min(b.m).min(c.m);
    let right = a.m.max(b.m).max(c.m);
    let bottom = a.n.min(b.n).min(c.n);
    let top = a.n.max(b.n).max(c.n);
    let mut out = Vec::new();
    for m in left + 1..right {
        for n in bottom + 1..top {
            let z = LatticeSite::new(m, n);
            if mirrored.iter().all(|&w| z.dist2(w) >= d2) {
                out.push(z);
            }
        }
    }
    out
}

/// The four triangle stacks around a `D`-parallelogram, in enumeration order:
/// the two halves of the parallelogram on the edge `0 -> (a,b)`, the triangle
/// on `(-b, a+b) → (a,b)` completing the trapezoid, and the triangle on
/// `0 → (-b, a+b)` completing the `2D`-triangle.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleStacks {
    pub d2: i64,
    pub a: Vec<LatticeSite>,
    pub b: Vec<LatticeSite>,
    pub c: Vec<LatticeSite>,
    pub d: Vec<LatticeSite>,
}

impl TriangleStacks {
    pub fn new(s: &Sublattice) -> Self {
        let o = LatticeSite::ORIGIN;
        let v = s.generator();
        let w = LatticeSite::new(-s.b(), s.a() + s.b());
        Self {
            d2: s.index() as i64,
            a: insertable_sites_in_triangle(o, v),
            b: insertable_sites_in_triangle(v, o),
            c: insertable_sites_in_triangle(w, v),
            d: insertable_sites_in_triangle(o, w),
        }
    }

    /// Stacks `a` and `b` only, enough for pair counting.
    pub fn pair_only(s: &Sublattice) -> Self {
        let o = LatticeSite::ORIGIN;
        let v = s.generator();
        Self {
            d2: s.index() as i64,
            a: insertable_sites_in_triangle(o, v),
            b: insertable_sites_in_triangle(v, o),
            c: Vec::new(),
            d: Vec::new(),
        }
    }

    fn ok(&self, x: LatticeSite, y: LatticeSite) -> bool {
        x.dist2(y) >= self.d2
    }

    pub fn pairs(&self) -> u64 {
        count_cross(&self.a, &self.b, self.d2)
    }

    pub fn triples(&self) -> u64 {
        let mut count = 0;
        for &x in &self.a {
            let bs: Vec<_> = self.b.iter().copied().filter(|&y| self.ok(x, y)).collect();
            if bs.is_empty() {
                continue;
            }
            for &z in self.c.iter().filter(|&&z| self.ok(x, z)) {
                count += bs.iter().filter(|&&y| self.ok(y, z)).count() as u64;
            }
        }
        count
    }

    pub fn quadruples(&self) -> u64 {
        let mut count = 0;
        for &x in &self.a {
            let bs: Vec<_> = self.b.iter().copied().filter(|&y| self.ok(x, y)).collect();
            if bs.is_empty() {
                continue;
            }
            let cs: Vec<_> = self.c.iter().copied().filter(|&z| self.ok(x, z)).collect();
            let ds: Vec<_> = self.d.iter().copied().filter(|&w| self.ok(x, w)).collect();
            for &y in &bs {
                for &z in cs.iter().filter(|&&z| self.ok(y, z)) {
                    count += ds
                        .iter()
                        .filter(|&&w| self.ok(y, w) && self.ok(z, w))
                        .count() as u64;
                }
            }
        }
        count
    }
}

/// Sites of `xs` with at least one admissible partner in `ys`.
pub fn pairable_sites(xs: &[LatticeSite], ys: &[LatticeSite], d2: i64) -> Vec<LatticeSite> {
    xs.iter()
        .copied()
        .filter(|&x| ys.iter().any(|&y| x.dist2(y) >= d2))
        .collect()
}

/// Number of pairs `(x, y) ∈ xs × ys` at squared distance `>= d2`.
pub fn count_cross(xs: &[LatticeSite], ys: &[LatticeSite], d2: i64) -> u64 {
    xs.iter()
        .map(|&x| ys.iter().filter(|&&y| x.dist2(y) >= d2).count() as u64)
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DefectCounts {
    pub class: Sublattice,
    pub pairs: u64,
    pub triples: u64,
    pub quadruples: u64,
    pub excess: u32,
}

pub fn count_defects(s: &Sublattice) -> DefectCounts {
    let stacks = TriangleStacks::new(s);
    DefectCounts {
        class: *s,
        pairs: stacks.pairs(),
        triples: stacks.triples(),
        quadruples: stacks.quadruples(),
        excess: DEFECT_EXCESS,
    }
}

/// Pair-defect count alone (the quantity that drives dominance).
pub fn count_pair_defects(s: &Sublattice) -> u64 {
    TriangleStacks::pair_only(s).pairs()
}

/// Explicit pair defects in the parallelogram `0, (a,b), (a-b, a+2b), (-b, a+b)`,
/// each pair and the whole list sorted lexicographically.
pub fn enumerate_pair_defects(s: &Sublattice) -> Vec<(LatticeSite, LatticeSite)> {
    let v = s.generator();
    let w = LatticeSite::new(-s.b(), s.a() + s.b());
    let d2 = s.index() as i64;
    let lower = insertable_sites_in_triangle(LatticeSite::ORIGIN, v);
    let upper = insertable_sites_in_triangle(w, v);
    let mut out: Vec<_> = lower
        .iter()
        .flat_map(|&x| upper.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| x.dist2(y) >= d2)
        .map(|(x, y)| if x <= y { (x, y) } else { (y, x) })
        .collect();
    out.sort_unstable();
    out
}
