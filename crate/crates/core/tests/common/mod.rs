//! Brute-force oracles shared by the integration tests.

use hct::excitations::third_vertex;
use hct::{LatticeSite, Sublattice};

/// Sublattice sites closer than `D` to `z`, found by scanning a box.
pub fn repelled(s: &Sublattice, z: LatticeSite) -> Vec<LatticeSite> {
    let d2 = s.index() as i64;
    // |m| and |n| can reach 2D/√3 inside the disk
    let r = hct::eisenstein::isqrt(4 * s.index() / 3) as i64 + 2;
    let mut out = Vec::new();
    for m in z.m - r..=z.m + r {
        for n in z.n - r..=z.n + r {
            let x = LatticeSite::new(m, n);
            if s.contains(x) && x.dist2(z) < d2 {
                out.push(x);
            }
        }
    }
    out.sort_unstable();
    out
}

/// Sites that repel exactly the three corners of the triangle on `0 → v`, in `(m, n)` order.
pub fn oracle_insertable(s: &Sublattice) -> Vec<LatticeSite> {
    let v = s.generator();
    let mut corners = vec![LatticeSite::ORIGIN, v, third_vertex(LatticeSite::ORIGIN, v)];
    corners.sort_unstable();
    let r = s.a() + s.b() + 1;
    let mut out = Vec::new();
    for m in -r..=r {
        for n in -r..=r {
            let z = LatticeSite::new(m, n);
            if repelled(s, z) == corners {
                out.push(z);
            }
        }
    }
    out
}
