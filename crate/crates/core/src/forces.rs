//! Local repelling forces and the exact check that a force family is proper.
//!
//! An inserted particle at `z` repels the ground-state sites within distance
//! `D` of it; the repelled site at squared distance `r` receives the force
//! `f_r`. A family is proper when every inserted site hands out exactly 1 and
//! every removed site receives at most 1, over every admissible arrangement of
//! inserted sites. All sums here are exact rationals.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{is_attainable, isqrt};
use crate::error::{Error, Result};
use crate::excitations::insertable_sites_in_triangle;
use crate::lattice::{LatticeSite, Sublattice};

pub type Rational = Ratio<i64>;

/// Longest admissible tuple inside the open punctured `D`-disk: points of
/// norm `< D` at mutual distance `>= D` are more than 60° apart.
pub const MAX_TUPLE: usize = 5;

const D7: [(u64, i64, i64); 19] = [
    (1, 44, 56), (3, 40, 56), (4, 40, 56), (7, 31, 56), (9, 31, 56), (12, 22, 56), (13, 22, 56),
    (16, 17, 56), (19, 17, 56), (21, 17, 56), (25, 8, 56), (27, 8, 56), (28, 8, 56), (31, 8, 56),
    (36, 4, 56), (37, 4, 56), (39, 4, 56), (43, 4, 56), (48, 4, 56),
];

const D13: [(u64, i64, i64); 55] = [
    (1, 131, 135), (3, 127, 135), (4, 251, 270), (7, 241, 270), (9, 116, 135), (12, 37, 45),
    (13, 221, 270), (16, 7, 9), (19, 133, 180), (21, 383, 540), (25, 179, 270), (27, 19, 30),
    (28, 169, 270), (31, 317, 540), (36, 281, 540), (37, 14, 27), (39, 131, 270), (43, 41, 90),
    (48, 37, 90), (49, 43, 108), (52, 103, 270), (57, 35, 108), (61, 53, 180), (63, 151, 540),
    (64, 5, 18), (67, 7, 27), (73, 119, 540), (75, 11, 54), (76, 109, 540), (79, 11, 60),
    (81, 22, 135), (84, 83, 540), (91, 2, 15), (93, 31, 270), (97, 29, 270), (100, 1, 9),
    (103, 4, 45), (108, 2, 27), (109, 2, 27), (111, 7, 108), (112, 1, 15), (117, 2, 45),
    (121, 11, 270), (124, 23, 540), (127, 11, 270), (129, 4, 135), (133, 4, 135), (139, 2, 135),
    (144, 1, 54), (147, 2, 135), (148, 2, 135), (151, 1, 270), (156, 1, 270), (157, 1, 180),
    (163, 0, 1),
];

const D147: [(u64, i64, i64); 35] = [
    (1, 24, 24), (3, 24, 24), (4, 24, 24), (7, 23, 24), (9, 22, 24), (12, 21, 24), (13, 21, 24),
    (16, 20, 24), (19, 19, 24), (21, 18, 24), (25, 16, 24), (27, 15, 24), (28, 15, 24),
    (31, 14, 24), (36, 12, 24), (37, 12, 24), (39, 11, 24), (43, 10, 24), (48, 9, 24), (49, 8, 24),
    (52, 7, 24), (57, 6, 24), (61, 5, 24), (63, 4, 24), (64, 4, 24), (67, 4, 24), (73, 3, 24),
    (75, 3, 24), (76, 2, 24), (79, 2, 24), (81, 2, 24), (84, 2, 24), (91, 1, 24), (93, 1, 24),
    (97, 1, 24),
];

/// Map from squared distance `r` to `f_r`; absent keys are zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForceFamily {
    n: u64,
    #[serde(with = "rational_map")]
    values: BTreeMap<u64, Rational>,
}

impl ForceFamily {
    pub fn new(n: u64, values: impl IntoIterator<Item = (u64, Rational)>) -> Result<Self> {
        let values: BTreeMap<_, _> = values.into_iter().collect();
        for (&r, &f) in &values {
            if r == 0 || r >= n || !is_attainable(r) {
                return Err(Error::InvalidFamily(format!(
                    "key {r} is not an attainable squared distance below {n}"
                )));
            }
            if f < Rational::zero() || f > Rational::one() {
                return Err(Error::InvalidFamily(format!("f[{r}] = {f} is outside [0, 1]")));
            }
        }
        Ok(Self { n, values })
    }

    pub fn builtin(name: &str) -> Result<Self> {
        let (n, table): (u64, &[(u64, i64, i64)]) = match name {
            "d7" => (49, &D7),
            "d13" => (169, &D13),
            "d147" => (147, &D147),
            _ => return Err(Error::UnknownFamily(name.to_string())),
        };
        Self::new(n, table.iter().map(|&(r, p, q)| (r, Rational::new(p, q))))
    }

    /// Parses `d2 <n>` followed by `<r> <p>/<q>` lines (`#` comments allowed).
    pub fn parse(text: &str) -> Result<Self> {
        let mut n = None;
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |msg: String| Error::Parse { line: i + 1, msg };
            let words: Vec<&str> = line.split_whitespace().collect();
            match words.as_slice() {
                ["d2", v] => {
                    n = Some(v.parse::<u64>().map_err(|_| err(format!("bad d2 value `{v}`")))?);
                }
                [r, f] => {
                    if n.is_none() {
                        return Err(err("entry before `d2` header".into()));
                    }
                    let r = r.parse::<u64>().map_err(|_| err(format!("bad distance `{r}`")))?;
                    values.push((r, parse_rational(f).ok_or_else(|| err(format!("bad rational `{f}`")))?));
                }
                _ => return Err(err("expected `d2 <n>` or `<r> <p>/<q>`".into())),
            }
        }
        let n = n.ok_or(Error::Parse {
            line: 0,
            msg: "missing `d2 <n>` header".into(),
        })?;
        Self::new(n, values)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("d2 {}\n", self.n);
        for (r, f) in &self.values {
            s.push_str(&format!("{r} {}/{}\n", f.numer(), f.denom()));
        }
        s
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn get(&self, r: u64) -> Rational {
        self.values.get(&r).copied().unwrap_or_else(Rational::zero)
    }

    /// Returns a copy with `f_r` replaced.
    pub fn with(&self, r: u64, f: Rational) -> Result<Self> {
        let mut values = self.values.clone();
        values.insert(r, f);
        Self::new(self.n, values)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u64, Rational)> + '_ {
        self.values.iter().map(|(&r, &f)| (r, f))
    }

    pub fn sum<I: IntoIterator<Item = u64>>(&self, rs: I) -> Rational {
        rs.into_iter().map(|r| self.get(r)).sum()
    }

    /// Integer numerators over a common denominator, indexed by `r < n`.
    fn scaled(&self) -> (Vec<i64>, i64) {
        let denom = self.values.values().fold(1i64, |acc, f| acc.lcm(f.denom()));
        let mut num = vec![0i64; self.n as usize];
        for (&r, f) in &self.values {
            num[r as usize] = f.numer() * (denom / f.denom());
        }
        (num, denom)
    }

    fn check_sublattice(&self, s: &Sublattice) -> Result<()> {
        if s.index() != self.n {
            return Err(Error::IncompatibleFamily {
                family: self.n,
                sublattice: s.index(),
            });
        }
        Ok(())
    }
}

/// Serde adapter writing rationals as `"p/q"` strings.
pub mod rational_str {
    use super::{parse_rational, Rational};
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).ok_or_else(|| D::Error::custom(format!("bad rational `{s}`")))
    }
}

mod rational_map {
    use super::Rational;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    #[derive(Serialize, Deserialize)]
    struct Wrap(#[serde(with = "super::rational_str")] Rational);

    pub fn serialize<S: Serializer>(m: &BTreeMap<u64, Rational>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().map(|(&k, &v)| (k, Wrap(v))).collect::<BTreeMap<_, _>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<u64, Rational>, D::Error> {
        Ok(BTreeMap::<u64, Wrap>::deserialize(d)?.into_iter().map(|(k, v)| (k, v.0)).collect())
    }
}

mod rational_entries {
    use super::Rational;
    use crate::lattice::LatticeSite;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Entry(LatticeSite, #[serde(with = "super::rational_str")] Rational);

    pub fn serialize<S: Serializer>(v: &[(LatticeSite, Rational)], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(|&(x, r)| Entry(x, r)).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<(LatticeSite, Rational)>, D::Error> {
        Ok(Vec::<Entry>::deserialize(d)?.into_iter().map(|e| (e.0, e.1)).collect())
    }
}

pub fn parse_rational(s: &str) -> Option<Rational> {
    match s.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse::<i64>().ok()?;
            let q = q.trim().parse::<i64>().ok()?;
            (q != 0).then(|| Rational::new(p, q))
        }
        None => s.trim().parse::<i64>().ok().map(Rational::from_integer),
    }
}

pub fn builtin_force_family(name: &str) -> Result<ForceFamily> {
    ForceFamily::builtin(name)
}

/// Attainable squared distances `1 <= r < n`.
pub fn distances_in_disk(n: u64) -> Vec<u64> {
    (1..n).filter(|&r| is_attainable(r)).collect()
}

// ---------------------------------------------------------------------------
// inserted sites

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InsertedTypeReport {
    pub holds: bool,
    /// Every inserted site with its total outgoing force.
    #[serde(with = "rational_entries")]
    pub entries: Vec<(LatticeSite, Rational)>,
    /// Distinct sorted distance tuples to the repelled corners.
    pub types: Vec<Vec<u64>>,
}

fn inserted_report(f: &ForceFamily, sites: Vec<LatticeSite>, corners: &[LatticeSite]) -> InsertedTypeReport {
    let mut types = std::collections::BTreeSet::new();
    let entries: Vec<_> = sites
        .into_iter()
        .map(|z| {
            let mut ty: Vec<u64> = corners.iter().map(|&c| z.dist2(c) as u64).collect();
            ty.sort_unstable();
            let total = f.sum(ty.iter().copied());
            types.insert(ty);
            (z, total)
        })
        .collect();
    InsertedTypeReport {
        holds: entries.iter().all(|(_, t)| t.is_one()),
        entries,
        types: types.into_iter().collect(),
    }
}

/// Every site of the concave triangle `0, (a,b), (-b,a+b)` must split force 1
/// over the three corners.
pub fn verify_inserted_triangle_types(f: &ForceFamily, s: &Sublattice) -> Result<InsertedTypeReport> {
    f.check_sublattice(s)?;
    let (a, b) = (s.a(), s.b());
    let corners = [LatticeSite::ORIGIN, LatticeSite::new(a, b), LatticeSite::new(-b, a + b)];
    let d2 = s.index() as i64;
    let mirrored = [LatticeSite::new(a - b, a + 2 * b), LatticeSite::new(-a - b, a), LatticeSite::new(a + b, -a)];
    let mut sites = Vec::new();
    for m in -b + 1..a {
        for n in 1..a + b {
            let z = LatticeSite::new(m, n);
            if mirrored.iter().all(|&w| z.dist2(w) >= d2) {
                sites.push(z);
            }
        }
    }
    Ok(inserted_report(f, sites, &corners))
}

/// Every site of the lens around the long diagonal of the parallelogram
/// `0, (a,b), (a-b,a+2b), (-b,a+b)` must split force 1 over its four corners.
pub fn verify_inserted_lens_types(f: &ForceFamily, s: &Sublattice) -> Result<InsertedTypeReport> {
    f.check_sublattice(s)?;
    let (a, b) = (s.a(), s.b());
    let far = LatticeSite::new(a - b, a + 2 * b);
    let corners = [LatticeSite::ORIGIN, LatticeSite::new(a, b), LatticeSite::new(-b, a + b), far];
    let d2 = s.index() as i64;
    let mut sites = Vec::new();
    for m in -b + 1..a {
        for n in b + 1..a + b {
            let z = LatticeSite::new(m, n);
            if z.norm2() < d2 && z.dist2(far) < d2 {
                sites.push(z);
            }
        }
    }
    Ok(inserted_report(f, sites, &corners))
}

// ---------------------------------------------------------------------------
// removed sites

/// Canonical order on the punctured disk: squared norm, then polar angle in
/// `[0, 2π)`, compared exactly.
pub fn canonical_cmp(x: LatticeSite, y: LatticeSite) -> Ordering {
    x.norm2().cmp(&y.norm2()).then_with(|| angle_cmp(x, y))
}

/// Exact polar-angle comparison. Embedded coordinates are `(2m + n, n·√3) / 2`;
/// the common `√3` drops out of every sign test.
fn angle_cmp(x: LatticeSite, y: LatticeSite) -> Ordering {
    let upper = |s: LatticeSite| s.n > 0 || (s.n == 0 && s.m > 0);
    match (upper(x), upper(y)) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        _ => {
            let cross = (2 * x.m + x.n) * y.n - (2 * y.m + y.n) * x.n;
            0.cmp(&cross)
        }
    }
}

/// Sites `z != 0` with `|z|² < n`, in canonical order.
pub fn disk_sites(n: u64) -> Vec<LatticeSite> {
    let r = isqrt(4 * n / 3) as i64 + 1;
    let mut v: Vec<_> = (-r..=r)
        .flat_map(|m| (-r..=r).map(move |k| LatticeSite::new(m, k)))
        .filter(|&z| z != LatticeSite::ORIGIN && (z.norm2() as u64) < n)
        .collect();
    v.sort_by(|&x, &y| canonical_cmp(x, y));
    v
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub sites: Vec<LatticeSite>,
    #[serde(with = "rational_str")]
    pub total: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct PropernessReport {
    pub proper: bool,
    pub tuple_counts_by_size: BTreeMap<usize, u64>,
    pub distinct_types: u64,
    pub minimal_types: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub violation: Option<Violation>,
}

/// All repelling types of a removed site, grouped by tuple size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TypeCensus {
    pub n: u64,
    pub tuple_counts_by_size: BTreeMap<usize, u64>,
    /// Sorted distance tuples for each size `1..=5`, lexicographically sorted.
    pub types: BTreeMap<usize, Vec<Vec<u64>>>,
}

impl TypeCensus {
    pub fn distinct(&self) -> u64 {
        self.types.values().map(|v| v.len() as u64).sum()
    }

    /// Minimal types under the componentwise order, where a shorter tuple is
    /// padded with absent sites (zero force). A type is dominated exactly when
    /// a different type of its size lies below it or a longer type extends it.
    pub fn minimal(&self) -> BTreeMap<usize, Vec<Vec<u64>>> {
        self.types
            .iter()
            .map(|(&size, list)| {
                let extended: HashSet<&[u64]> = self
                    .types
                    .get(&(size + 1))
                    .map(|longer| longer.iter().map(|t| &t[..size]).collect())
                    .unwrap_or_default();
                let mut mins: Vec<Vec<u64>> = Vec::new();
                // lexicographic order puts every dominating tuple before the ones it dominates
                for t in list {
                    if !mins.iter().any(|m| m.iter().zip(t).all(|(a, b)| a <= b)) {
                        mins.push(t.clone());
                    }
                }
                mins.retain(|t| !extended.contains(t.as_slice()));
                (size, mins)
            })
            .collect()
    }

    pub fn minimal_count(&self) -> u64 {
        self.minimal().values().map(|v| v.len() as u64).sum()
    }
}

/// Bitset of later sites compatible with each site.
struct Compat {
    words: usize,
    rows: Vec<u64>,
}

impl Compat {
    fn new(sites: &[LatticeSite], n: i64) -> Self {
        let words = sites.len().div_ceil(64);
        let mut rows = vec![0u64; words * sites.len()];
        for (i, &x) in sites.iter().enumerate() {
            for (j, &y) in sites.iter().enumerate().skip(i + 1) {
                if x.dist2(y) >= n {
                    rows[i * words + j / 64] |= 1 << (j % 64);
                }
            }
        }
        Self { words, rows }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.rows[i * self.words..(i + 1) * self.words]
    }
}

#[derive(Default)]
struct Branch {
    counts: [u64; MAX_TUPLE + 1],
    types: [HashSet<u128>; MAX_TUPLE + 1],
    violation: Option<(Vec<usize>, i64)>,
    six: Option<Vec<usize>>,
}

struct Search<'a> {
    sites: &'a [LatticeSite],
    dist: Vec<u128>,
    compat: Compat,
    radix: u128,
    forces: Option<(&'a [i64], i64)>,
}

impl Search<'_> {
    fn run_branch(&self, first: usize) -> Branch {
        let mut out = Branch::default();
        let mut stack = vec![first];
        let cand = self.compat.row(first).to_vec();
        let force = self.forces.map_or(0, |(num, _)| num[self.dist[first] as usize]);
        self.visit(&mut stack, &cand, self.dist[first], force, &mut out);
        out
    }

    fn visit(&self, stack: &mut Vec<usize>, cand: &[u64], key: u128, force: i64, out: &mut Branch) {
        let depth = stack.len();
        out.counts[depth] += 1;
        out.types[depth].insert(key);
        if let Some((_, denom)) = self.forces {
            if force > denom && out.violation.is_none() {
                out.violation = Some((stack.clone(), force));
            }
        }
        if depth == MAX_TUPLE {
            if out.six.is_none() {
                if let Some(j) = first_bit(cand) {
                    let mut six = stack.clone();
                    six.push(j);
                    out.six = Some(six);
                }
            }
            return;
        }
        let mut next = vec![0u64; cand.len()];
        for (w, &word) in cand.iter().enumerate() {
            let mut bits = word;
            while bits != 0 {
                let j = w * 64 + bits.trailing_zeros() as usize;
                bits &= bits - 1;
                for (slot, (&c, &r)) in next.iter_mut().zip(cand.iter().zip(self.compat.row(j))) {
                    *slot = c & r;
                }
                let f = self.forces.map_or(0, |(num, _)| num[self.dist[j] as usize]);
                stack.push(j);
                self.visit(stack, &next, key * self.radix + self.dist[j], force + f, out);
                stack.pop();
            }
        }
    }
}

fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .enumerate()
        .find(|(_, &w)| w != 0)
        .map(|(i, &w)| i * 64 + w.trailing_zeros() as usize)
}

struct Enumeration {
    counts: [u64; MAX_TUPLE + 1],
    types: [HashSet<u128>; MAX_TUPLE + 1],
    violation: Option<(Vec<usize>, i64)>,
}

/// Streams every admissible tuple (sizes 1..=5) of the punctured disk by
/// depth-first search in canonical order. First sites are processed in
/// chunks so peak memory stays bounded by the type sets.
fn enumerate(n: u64, forces: Option<(&[i64], i64)>, sites: &[LatticeSite], jobs: usize) -> Result<Enumeration> {
    let search = Search {
        sites,
        dist: sites.iter().map(|s| s.norm2() as u128).collect(),
        compat: Compat::new(sites, n as i64),
        radix: n as u128,
        forces,
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut total = Enumeration {
        counts: [0; MAX_TUPLE + 1],
        types: Default::default(),
        violation: None,
    };
    let chunk = 4 * jobs.max(1);
    let firsts: Vec<usize> = (0..sites.len()).collect();
    for block in firsts.chunks(chunk) {
        let branches: Vec<Branch> = pool.install(|| block.par_iter().map(|&i| search.run_branch(i)).collect());
        for b in branches {
            if let Some(six) = b.six {
                return Err(Error::SixTupleFound(six.iter().map(|&i| search.sites[i]).collect()));
            }
            for d in 1..=MAX_TUPLE {
                total.counts[d] += b.counts[d];
                total.types[d].extend(b.types[d].iter().copied());
            }
            if total.violation.is_none() {
                total.violation = b.violation;
            }
        }
    }
    Ok(total)
}

fn decode(mut key: u128, size: usize, radix: u128) -> Vec<u64> {
    let mut v = vec![0u64; size];
    for slot in v.iter_mut().rev() {
        *slot = (key % radix) as u64;
        key /= radix;
    }
    v
}

/// Enumerates all repelling types of a removed site for squared diameter `n`.
pub fn removed_type_census(n: u64, jobs: usize) -> Result<TypeCensus> {
    let sites = disk_sites(n);
    let e = enumerate(n, None, &sites, jobs)?;
    Ok(census_from(n, &e))
}

fn census_from(n: u64, e: &Enumeration) -> TypeCensus {
    let mut types = BTreeMap::new();
    let mut counts = BTreeMap::new();
    for d in 1..=MAX_TUPLE {
        counts.insert(d, e.counts[d]);
        let mut list: Vec<Vec<u64>> = e.types[d].iter().map(|&k| decode(k, d, n as u128)).collect();
        list.sort_unstable();
        types.insert(d, list);
    }
    TypeCensus {
        n,
        tuple_counts_by_size: counts,
        types,
    }
}

pub fn verify_removed_types(f: &ForceFamily) -> Result<PropernessReport> {
    verify_removed_types_with_jobs(f, 1)
}

/// Properness check over every admissible tuple. The verdict and counts do
/// not depend on `jobs`.
pub fn verify_removed_types_with_jobs(f: &ForceFamily, jobs: usize) -> Result<PropernessReport> {
    let sites = disk_sites(f.n);
    let (num, denom) = f.scaled();
    let e = enumerate(f.n, Some((&num, denom)), &sites, jobs)?;
    let census = census_from(f.n, &e);
    let violation = e.violation.map(|(idx, force)| Violation {
        sites: idx.iter().map(|&i| sites[i]).collect(),
        total: Rational::new(force, denom),
    });
    Ok(PropernessReport {
        proper: violation.is_none(),
        tuple_counts_by_size: census.tuple_counts_by_size.clone(),
        distinct_types: census.distinct(),
        minimal_types: census.minimal_count(),
        violation,
    })
}

// ---------------------------------------------------------------------------
// minimal deficit

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinDelta {
    #[serde(with = "rational_str")]
    pub delta: Rational,
    /// Squared distances from the removed vertex to the two inserted sites.
    pub witness: (u64, u64),
}

impl fmt::Display for MinDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (f[{}], f[{}])", self.delta, self.witness.0, self.witness.1)
    }
}

/// Smallest deficit `1 - f[r₁] - f[r₂]` at the shared vertex `(a, b)` over all
/// admissible pair defects of the parallelogram on the edge `0 -> (a, b)`.
/// Ties keep the first pair in scan order.
pub fn min_delta_nondeletable(f: &ForceFamily, s: &Sublattice) -> Result<MinDelta> {
    f.check_sublattice(s)?;
    let v = s.generator();
    let d2 = s.index() as i64;
    let lower = insertable_sites_in_triangle(LatticeSite::ORIGIN, v);
    let upper = insertable_sites_in_triangle(v, LatticeSite::ORIGIN);
    let mut best: Option<(Rational, (u64, u64))> = None;
    for &p in &lower {
        for &q in &upper {
            if p.dist2(q) < d2 {
                continue;
            }
            let rp = p.dist2(v) as u64;
            let rq = q.dist2(v) as u64;
            let force = f.get(rp) + f.get(rq);
            if best.as_ref().is_none_or(|(b, _)| force > *b) {
                best = Some((force, (rp, rq)));
            }
        }
    }
    let (force, witness) = best.ok_or(Error::NoAdmissiblePairs)?;
    Ok(MinDelta {
        delta: Rational::one() - force,
        witness,
    })
}
