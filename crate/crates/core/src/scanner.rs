//! Dominance scan: for every attainable `n` with several sublattice classes,
//! count the parallelogram pair defects of each class and find the class
//! with the most.
//!
//! The scan also evaluates a shortest-distance heuristic. For each class it
//! takes the minimum of `dist²(z, v)` over the insertable sites `z` of one
//! `D`-triangle and all three vertices `v`. The class with the smallest value
//! is the heuristic guess for the dominant one.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::eisenstein::{classify_diameter, is_attainable, DiameterCase};
use crate::excitations::{count_cross, insertable_sites_in_triangle, third_vertex};
use crate::lattice::{LatticeSite, Sublattice};

/// How the heuristic distance is measured; carried in scan metadata.
pub const HEURISTIC_RULE: &str = "min dist2 from an insertable site to any of the three triangle vertices";

pub const CSV_HEADER: [&str; 10] = [
    "n",
    "case",
    "num_classes",
    "classes",
    "pair_counts",
    "dominant",
    "unique_dominant",
    "heuristic_class",
    "heuristic_min_dist2",
    "heuristic_match",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub n: u64,
    pub case: DiameterCase,
    /// Generators `(a, b)` in the order of `loeschian_representations`.
    pub classes: Vec<(u64, u64)>,
    pub pair_counts: Vec<u64>,
    /// Class with the largest pair count; on a tie, the first of the tied classes.
    pub dominant: (u64, u64),
    pub unique_dominant: bool,
    /// Every class attaining the smallest heuristic distance (more than one on a tie).
    pub heuristic_class: Vec<(u64, u64)>,
    pub heuristic_min_dist2: u64,
    /// The heuristic picks a single class and it is the unique dominant one.
    pub heuristic_match: bool,
}

fn fmt_class(c: (u64, u64)) -> String {
    format!("({},{})", c.0, c.1)
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    let mut s = String::new();
    for (i, x) in items.iter().enumerate() {
        if i > 0 {
            s.push(';');
        }
        let _ = write!(s, "{}", f(x));
    }
    s
}

impl ScanRow {
    /// Fields in `CSV_HEADER` order. Lists are `;`-separated.
    pub fn csv_record(&self) -> [String; 10] {
        [
            self.n.to_string(),
            self.case.to_string(),
            self.classes.len().to_string(),
            join(&self.classes, |&c| fmt_class(c)),
            join(&self.pair_counts, |c| c.to_string()),
            fmt_class(self.dominant),
            self.unique_dominant.to_string(),
            join(&self.heuristic_class, |&c| fmt_class(c)),
            self.heuristic_min_dist2.to_string(),
            self.heuristic_match.to_string(),
        ]
    }
}

/// Per-class work unit: pair-defect count and heuristic distance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassStats {
    pub pairs: u64,
    pub nearest: u64,
}

pub fn class_stats(s: &Sublattice) -> ClassStats {
    let o = LatticeSite::ORIGIN;
    let v = s.generator();
    let d2 = s.index() as i64;
    let lower = insertable_sites_in_triangle(o, v);
    let upper = insertable_sites_in_triangle(v, o);
    let corners = [o, v, third_vertex(o, v)];
    let nearest = lower
        .iter()
        .flat_map(|z| corners.iter().map(move |&c| z.dist2(c)))
        .min()
        .map_or(u64::MAX, |d| d as u64);
    ClassStats {
        pairs: count_cross(&lower, &upper, d2),
        nearest,
    }
}

/// Classes minimising the heuristic distance, and that distance.
pub fn heuristic_class(n: u64) -> crate::Result<(Vec<(u64, u64)>, u64)> {
    let class = classify_diameter(n)?;
    let stats: Vec<_> = class
        .representations
        .iter()
        .map(|&(a, b)| Sublattice::new(a as i64, b as i64).map(|s| class_stats(&s).nearest))
        .collect::<crate::Result<_>>()?;
    let best = stats.iter().copied().min().unwrap_or(u64::MAX);
    let winners = class
        .representations
        .iter()
        .zip(&stats)
        .filter(|(_, &d)| d == best)
        .map(|(&c, _)| c)
        .collect();
    Ok((winners, best))
}

fn build_row(n: u64, case: DiameterCase, classes: Vec<(u64, u64)>, stats: &[ClassStats]) -> ScanRow {
    let pair_counts: Vec<u64> = stats.iter().map(|s| s.pairs).collect();
    let max = pair_counts.iter().copied().max().unwrap_or(0);
    let top: Vec<usize> = (0..classes.len()).filter(|&i| pair_counts[i] == max).collect();
    let near = stats.iter().map(|s| s.nearest).min().unwrap_or(u64::MAX);
    let heuristic: Vec<(u64, u64)> = (0..classes.len())
        .filter(|&i| stats[i].nearest == near)
        .map(|i| classes[i])
        .collect();
    let unique = top.len() == 1;
    let dominant = classes[top[0]];
    ScanRow {
        n,
        case,
        heuristic_match: unique && heuristic == [dominant],
        dominant,
        unique_dominant: unique,
        heuristic_class: heuristic,
        heuristic_min_dist2: near,
        classes,
        pair_counts,
    }
}

/// Row for a single `n`, or `None` if it has fewer than `min_classes` classes.
pub fn scan_row(n: u64, min_classes: usize) -> crate::Result<Option<ScanRow>> {
    if !is_attainable(n) {
        return Ok(None);
    }
    let class = classify_diameter(n)?;
    if class.representations.len() < min_classes.max(1) {
        return Ok(None);
    }
    let stats = class
        .representations
        .iter()
        .map(|&(a, b)| Sublattice::new(a as i64, b as i64).map(|s| class_stats(&s)))
        .collect::<crate::Result<Vec<_>>>()?;
    Ok(Some(build_row(n, class.case, class.representations, &stats)))
}

/// Streams rows for every attainable `n <= max_n` with at least
/// `min_classes` classes, in ascending `n`. Each `(n, class)` pair is one
/// unit of work on a pool of `jobs` threads; the output does not depend on `jobs`.
pub fn scan_dominance_with<F: FnMut(ScanRow)>(max_n: u64, min_classes: usize, jobs: usize, mut sink: F) {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool");
    let mut todo = Vec::new();
    for n in 1..=max_n {
        let Ok(class) = classify_diameter(n) else { continue };
        if class.attainable && class.representations.len() >= min_classes.max(1) {
            todo.push(class);
        }
    }
    // batches keep the output streaming while giving every worker enough units
    let batch = 16 * jobs.max(1);
    for chunk in todo.chunks(batch) {
        let units: Vec<(usize, (u64, u64))> = chunk
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.representations.iter().map(move |&r| (i, r)))
            .collect();
        let stats: Vec<ClassStats> = pool.install(|| {
            units
                .par_iter()
                .map(|&(_, (a, b))| class_stats(&Sublattice::new(a as i64, b as i64).expect("representation")))
                .collect()
        });
        let mut k = 0;
        for c in chunk {
            let r = c.representations.len();
            sink(build_row(c.n, c.case, c.representations.clone(), &stats[k..k + r]));
            k += r;
        }
    }
}

pub fn scan_dominance(max_n: u64, min_classes: usize, jobs: usize) -> Vec<ScanRow> {
    let mut rows = Vec::new();
    scan_dominance_with(max_n, min_classes, jobs, |r| rows.push(r));
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theorem_rows() {
        let rows = scan_dominance(169, 2, 1);
        let get = |n| rows.iter().find(|r| r.n == n).unwrap();
        let r49 = get(49);
        assert_eq!(r49.classes, [(7, 0), (5, 3)]);
        assert_eq!(r49.pair_counts, [7, 6]);
        assert_eq!(r49.dominant, (7, 0));
        assert!(r49.unique_dominant);
        let r169 = get(169);
        assert_eq!(r169.classes, [(13, 0), (8, 7)]);
        assert_eq!(r169.pair_counts, [78, 113]);
        assert_eq!(r169.dominant, (8, 7));
        let r147 = get(147);
        assert_eq!(r147.classes, [(11, 2), (7, 7)]);
        assert_eq!(r147.pair_counts, [51, 86]);
        assert_eq!(r147.dominant, (7, 7));
        assert!(rows.windows(2).all(|w| w[0].n < w[1].n));
        assert!(rows.iter().all(|r| r.classes.len() >= 2));
    }

    #[test]
    fn single_rows_match_stream() {
        let rows = scan_dominance(400, 2, 3);
        for r in &rows {
            assert_eq!(scan_row(r.n, 2).unwrap().as_ref(), Some(r));
        }
        assert_eq!(scan_row(48, 2).unwrap(), None);
        assert_eq!(scan_row(50, 1).unwrap(), None);
        assert_eq!(scan_row(7, 1).unwrap().unwrap().classes, [(2, 1)]);
    }

    #[test]
    fn heuristic_brute_force() {
        for n in [49u64, 147, 169] {
            let (classes, d) = heuristic_class(n).unwrap();
            let class = classify_diameter(n).unwrap();
            let mut best = u64::MAX;
            for &(a, b) in &class.representations {
                let v = LatticeSite::new(a as i64, b as i64);
                let c = third_vertex(LatticeSite::ORIGIN, v);
                for z in insertable_sites_in_triangle(LatticeSite::ORIGIN, v) {
                    for w in [LatticeSite::ORIGIN, v, c] {
                        best = best.min(z.dist2(w) as u64);
                    }
                }
            }
            assert_eq!(d, best);
            assert!(!classes.is_empty());
        }
        // (1,1) is at squared distance 3 from the origin; for (5,3) the nearest are (0,2) and (3,3) at 4
        assert_eq!(heuristic_class(49).unwrap(), (vec![(7, 0)], 3));
        assert_eq!(class_stats(&Sublattice::new(5, 3).unwrap()).nearest, 4);
    }

    #[test]
    fn csv_fields() {
        let r = scan_row(49, 2).unwrap().unwrap();
        let rec = r.csv_record();
        assert_eq!(rec[0], "49");
        assert_eq!(rec[1], "Case3");
        assert_eq!(rec[3], "(7,0);(5,3)");
        assert_eq!(rec[4], "7;6");
        assert_eq!(rec[5], "(7,0)");
    }
}
