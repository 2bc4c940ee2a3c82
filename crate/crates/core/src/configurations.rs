//! Finite particle configurations, correctness with respect to ground states,
//! and contour-support extraction on the grid of common parallelograms.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::eisenstein::isqrt;
use crate::error::{Error, Result};
use crate::lattice::{common_parallelogram_index, enumerate_ground_states, GroundStateDescriptor, LatticeSite};

/// Inclusive rectangle of common-parallelogram indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub k_min: i64,
    pub k_max: i64,
    pub l_min: i64,
    pub l_max: i64,
}

impl Region {
    pub fn new(k_min: i64, k_max: i64, l_min: i64, l_max: i64) -> Self {
        Self {
            k_min,
            k_max,
            l_min,
            l_max,
        }
    }

    /// Square region `0..side` in both indices.
    pub fn square(side: i64) -> Self {
        Self::new(0, side - 1, 0, side - 1)
    }

    pub fn contains_index(&self, (k, l): (i64, i64)) -> bool {
        (self.k_min..=self.k_max).contains(&k) && (self.l_min..=self.l_max).contains(&l)
    }

    pub fn contains_site(&self, x: LatticeSite, n: u64) -> bool {
        self.contains_index(common_parallelogram_index(x, n))
    }

    pub fn indices(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        (self.k_min..=self.k_max).flat_map(move |k| (self.l_min..=self.l_max).map(move |l| (k, l)))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Configuration {
    pub n: u64,
    pub region: Region,
    pub occupied: BTreeSet<LatticeSite>,
}

impl Configuration {
    /// Builds a configuration, dropping nothing: every site must lie in `region`.
    pub fn new(n: u64, region: Region, occupied: impl IntoIterator<Item = LatticeSite>) -> Result<Self> {
        let occupied: BTreeSet<_> = occupied.into_iter().collect();
        if let Some(&x) = occupied.iter().find(|&&x| !region.contains_site(x, n)) {
            return Err(Error::OutOfRegion(x));
        }
        Ok(Self { n, region, occupied })
    }

    /// The restriction of a ground state to `region`.
    pub fn from_ground_state(gs: &GroundStateDescriptor, region: Region) -> Self {
        let n = gs.class.index();
        let d = n as i64;
        let occupied = (region.k_min * d..(region.k_max + 1) * d)
            .flat_map(|m| (region.l_min * d..(region.l_max + 1) * d).map(move |k| LatticeSite::new(m, k)))
            .filter(|&x| gs.occupies(x))
            .collect();
        Self { n, region, occupied }
    }

    pub fn is_occupied(&self, x: LatticeSite) -> bool {
        self.occupied.contains(&x)
    }

    pub fn vacate(&mut self, x: LatticeSite) -> bool {
        self.occupied.remove(&x)
    }

    /// Parses the text format: a `d2 <n>` header, an optional
    /// `region <kmin> <kmax> <lmin> <lmax>` line, then one `m n` pair per line.
    /// `#` starts a comment. Without a region line the bounding box of the
    /// occupied parallelograms is used.
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut region = None;
        let mut sites = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: &str| Error::Parse {
                line: line_no,
                msg: msg.to_string(),
            };
            let mut words = line.split_whitespace();
            let first = words.next().unwrap();
            let ints = |it: std::str::SplitWhitespace<'_>| -> Result<Vec<i64>> {
                it.map(|w| w.parse::<i64>().map_err(|_| err(&format!("bad integer `{w}`"))))
                    .collect()
            };
            match first {
                "d2" => {
                    let v = ints(words)?;
                    match v.as_slice() {
                        [x] if *x >= 1 => n = Some(*x as u64),
                        _ => return Err(err("expected `d2 <n>` with n >= 1")),
                    }
                }
                "region" => {
                    let v = ints(words)?;
                    match v.as_slice() {
                        &[k0, k1, l0, l1] if k0 <= k1 && l0 <= l1 => region = Some(Region::new(k0, k1, l0, l1)),
                        _ => return Err(err("expected `region <kmin> <kmax> <lmin> <lmax>`")),
                    }
                }
                _ => {
                    if n.is_none() {
                        return Err(err("site before `d2` header"));
                    }
                    let m = first
                        .parse::<i64>()
                        .map_err(|_| err(&format!("bad integer `{first}`")))?;
                    match ints(words)?.as_slice() {
                        [k] => sites.push(LatticeSite::new(m, *k)),
                        _ => return Err(err("expected `m n`")),
                    }
                }
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `d2 <n>` header".into(),
        })?;
        let region = match region {
            Some(r) => r,
            None => {
                let idx: Vec<_> = sites.iter().map(|&x| common_parallelogram_index(x, n)).collect();
                if idx.is_empty() {
                    Region::new(0, 0, 0, 0)
                } else {
                    Region::new(
                        idx.iter().map(|p| p.0).min().unwrap(),
                        idx.iter().map(|p| p.0).max().unwrap(),
                        idx.iter().map(|p| p.1).min().unwrap(),
                        idx.iter().map(|p| p.1).max().unwrap(),
                    )
                }
            }
        };
        Self::new(n, region, sites)
    }

    pub fn to_text(&self) -> String {
        let r = &self.region;
        let mut s = format!("d2 {}\nregion {} {} {} {}\n", self.n, r.k_min, r.k_max, r.l_min, r.l_max);
        for x in &self.occupied {
            s.push_str(&format!("{} {}\n", x.m, x.n));
        }
        s
    }
}

/// True iff all occupied pairs are at squared distance `>= n`.
pub fn is_admissible(c: &Configuration) -> bool {
    let n = c.n as i64;
    // |Δm|, |Δn| < sqrt(4n/3) whenever the squared distance is below n
    let cell = isqrt(4 * c.n / 3) as i64 + 1;
    let mut grid: HashMap<(i64, i64), Vec<LatticeSite>> = HashMap::new();
    for &x in &c.occupied {
        let key = (x.m.div_euclid(cell), x.n.div_euclid(cell));
        for dk in -1..=1 {
            for dl in -1..=1 {
                if let Some(v) = grid.get(&(key.0 + dk, key.1 + dl)) {
                    if v.iter().any(|&y| y.dist2(x) < n) {
                        return false;
                    }
                }
            }
        }
        grid.entry(key).or_default().push(x);
    }
    true
}

pub fn phi_correct_site(c: &Configuration, gs: &GroundStateDescriptor, x: LatticeSite) -> Result<bool> {
    let nbrs = gs.neighbor_offsets().map(|v| x + v);
    if !c.region.contains_site(x, c.n) || nbrs.iter().any(|&y| !c.region.contains_site(y, c.n)) {
        return Err(Error::OutOfRegion(x));
    }
    Ok(std::iter::once(x)
        .chain(nbrs)
        .all(|y| c.is_occupied(y) && gs.occupies(y)))
}

/// Occupied sites bucketed by common parallelogram.
struct Buckets {
    by_index: BTreeMap<(i64, i64), Vec<LatticeSite>>,
}

impl Buckets {
    fn new(c: &Configuration) -> Self {
        let mut by_index: BTreeMap<(i64, i64), Vec<LatticeSite>> = BTreeMap::new();
        for &x in &c.occupied {
            by_index.entry(common_parallelogram_index(x, c.n)).or_default().push(x);
        }
        Self { by_index }
    }

    fn block(&self, (k, l): (i64, i64)) -> impl Iterator<Item = LatticeSite> + '_ {
        (-1..=1)
            .flat_map(move |i| (-1..=1).map(move |j| (k + i, l + j)))
            .flat_map(move |kl| self.by_index.get(&kl).into_iter().flatten().copied())
    }

    /// Every common parallelogram holds exactly `n` sites of any ground state,
    /// so agreement on the block means: `9n` occupied sites, all in `gs`.
    fn agrees(&self, gs: &GroundStateDescriptor, kl: (i64, i64), n: u64) -> bool {
        let mut count = 0u64;
        for x in self.block(kl) {
            if !gs.occupies(x) {
                return false;
            }
            count += 1;
        }
        count == 9 * n
    }
}

fn block_inside(region: &Region, (k, l): (i64, i64)) -> bool {
    k > region.k_min && k < region.k_max && l > region.l_min && l < region.l_max
}

pub fn phi_correct_parallelogram(c: &Configuration, gs: &GroundStateDescriptor, kl: (i64, i64)) -> Result<bool> {
    if !block_inside(&c.region, kl) {
        return Err(Error::BlockOutOfRegion(kl.0, kl.1));
    }
    Ok(Buckets::new(c).agrees(gs, kl, c.n))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContourSupport {
    /// Sorted parallelogram indices.
    pub parallelograms: Vec<(i64, i64)>,
    /// Sorted occupied sites inside the support.
    pub restriction: Vec<LatticeSite>,
}

/// Indices of the evaluable parallelograms that are correct for no ground state.
pub fn incorrect_parallelograms(c: &Configuration) -> Result<Vec<(i64, i64)>> {
    let states = enumerate_ground_states(c.n)?;
    Ok(incorrect_with(c, &states))
}

fn incorrect_with(c: &Configuration, states: &[GroundStateDescriptor]) -> Vec<(i64, i64)> {
    let buckets = Buckets::new(c);
    c.region
        .indices()
        .filter(|&kl| block_inside(&c.region, kl))
        .filter(|&kl| {
            // a candidate ground state must contain the block's first occupied site
            let first = buckets.block(kl).next();
            !states.iter().any(|gs| {
                first.is_none_or(|x| gs.occupies(x)) && buckets.agrees(gs, kl, c.n)
            })
        })
        .collect()
}

pub fn contour_supports(c: &Configuration) -> Result<Vec<ContourSupport>> {
    let states = enumerate_ground_states(c.n)?;
    contour_supports_with(c, &states)
}

/// Same as [`contour_supports`] with an explicit list (and order) of ground states.
pub fn contour_supports_with(c: &Configuration, states: &[GroundStateDescriptor]) -> Result<Vec<ContourSupport>> {
    let bad: BTreeSet<(i64, i64)> = incorrect_with(c, states).into_iter().collect();
    let r = &c.region;
    if let Some(&(k, l)) = bad
        .iter()
        .find(|&&(k, l)| k - 1 == r.k_min || k + 1 == r.k_max || l - 1 == r.l_min || l + 1 == r.l_max)
    {
        return Err(Error::BoundaryTouching(k, l));
    }

    let mut seen = BTreeSet::new();
    let mut supports = Vec::new();
    for &start in &bad {
        if !seen.insert(start) {
            continue;
        }
        let mut component = vec![start];
        let mut stack = vec![start];
        while let Some((k, l)) = stack.pop() {
            for dk in -1..=1 {
                for dl in -1..=1 {
                    let nb = (k + dk, l + dl);
                    if bad.contains(&nb) && seen.insert(nb) {
                        component.push(nb);
                        stack.push(nb);
                    }
                }
            }
        }
        component.sort_unstable();
        let restriction = c
            .occupied
            .iter()
            .copied()
            .filter(|&x| component.binary_search(&common_parallelogram_index(x, c.n)).is_ok())
            .collect();
        supports.push(ContourSupport {
            parallelograms: component,
            restriction,
        });
    }
    Ok(supports)
}
