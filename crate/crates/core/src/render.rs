//! SVG pictures of ground-state fragments, defect geometry and contours.
//!
//! Output is plain text built with fixed two-decimal formatting, so the same
//! input always gives the same bytes. Elements carry a `class` attribute
//! (`grid`, `site`, `disk`, `insertable`, `removed`, `inserted`, `incorrect`)
//! that makes them easy to style or count.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::configurations::{incorrect_parallelograms, Configuration};
use crate::error::{Error, Result};
use crate::excitations::{enumerate_pair_defects, insertable_sites_in_triangle, third_vertex};
use crate::lattice::{LatticeSite, Sublattice};

/// Largest number of lattice sites a viewport may cover.
pub const MAX_VIEWPORT_SITES: i64 = 1 << 20;

/// Grid lines are drawn only when both sides are at most this many sites.
const GRID_LIMIT: i64 = 80;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RenderMode {
    Sublattice,
    DefectGeometry,
    Contours,
}

impl FromStr for RenderMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sublattice" => Ok(Self::Sublattice),
            "defect-geometry" => Ok(Self::DefectGeometry),
            "contours" => Ok(Self::Contours),
            _ => Err(Error::InvalidRenderSpec(format!("unknown mode {s:?}"))),
        }
    }
}

/// Inclusive rectangle in `(m, n)` site coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Viewport {
    pub m_min: i64,
    pub m_max: i64,
    pub n_min: i64,
    pub n_max: i64,
}

impl Viewport {
    pub fn new(m_min: i64, m_max: i64, n_min: i64, n_max: i64) -> Result<Self> {
        let v = Self {
            m_min,
            m_max,
            n_min,
            n_max,
        };
        v.validate()?;
        Ok(v)
    }

    /// Parses `m0,m1,n0,n1`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<i64> = s
            .split(',')
            .map(|p| p.trim().parse())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidViewport(format!("expected m0,m1,n0,n1, got {s:?}")))?;
        match parts[..] {
            [a, b, c, d] => Self::new(a, b, c, d),
            _ => Err(Error::InvalidViewport(format!("expected four numbers, got {s:?}"))),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.m_min > self.m_max || self.n_min > self.n_max {
            return Err(Error::InvalidViewport(format!("empty rectangle {self:?}")));
        }
        let bound = crate::lattice::COORD_BOUND;
        if [self.m_min, self.m_max, self.n_min, self.n_max].iter().any(|c| c.abs() > bound) {
            return Err(Error::InvalidViewport("coordinates exceed 2^30".into()));
        }
        let area = (self.m_max - self.m_min + 1).saturating_mul(self.n_max - self.n_min + 1);
        if area > MAX_VIEWPORT_SITES {
            return Err(Error::InvalidViewport(format!("{area} sites exceeds {MAX_VIEWPORT_SITES}")));
        }
        Ok(())
    }

    pub fn contains(&self, x: LatticeSite) -> bool {
        (self.m_min..=self.m_max).contains(&x.m) && (self.n_min..=self.n_max).contains(&x.n)
    }

    fn sites(&self) -> impl Iterator<Item = LatticeSite> + '_ {
        (self.n_min..=self.n_max).flat_map(move |n| (self.m_min..=self.m_max).map(move |m| LatticeSite::new(m, n)))
    }

    fn around(points: &[LatticeSite], margin: i64) -> Self {
        let m_min = points.iter().map(|p| p.m).min().unwrap_or(0) - margin;
        let m_max = points.iter().map(|p| p.m).max().unwrap_or(0) + margin;
        let n_min = points.iter().map(|p| p.n).min().unwrap_or(0) - margin;
        let n_max = points.iter().map(|p| p.n).max().unwrap_or(0) + margin;
        Self {
            m_min,
            m_max,
            n_min,
            n_max,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderSpec {
    pub mode: RenderMode,
    pub class: Option<Sublattice>,
    pub config: Option<Configuration>,
    /// Defaults to a rectangle around the drawn object.
    pub viewport: Option<Viewport>,
}

impl RenderSpec {
    pub fn sublattice(class: Sublattice, viewport: Viewport) -> Self {
        Self {
            mode: RenderMode::Sublattice,
            class: Some(class),
            config: None,
            viewport: Some(viewport),
        }
    }

    pub fn defect_geometry(class: Sublattice) -> Self {
        Self {
            mode: RenderMode::DefectGeometry,
            class: Some(class),
            config: None,
            viewport: None,
        }
    }

    pub fn contours(config: Configuration) -> Self {
        Self {
            mode: RenderMode::Contours,
            class: None,
            config: Some(config),
            viewport: None,
        }
    }
}

/// Maps site coordinates to SVG user units (y grows downward).
struct Canvas {
    view: Viewport,
    unit: f64,
    pad: f64,
    out: String,
}

const SQRT3_2: f64 = 0.866_025_403_784_438_6;

impl Canvas {
    fn new(view: Viewport) -> Self {
        let w = (view.m_max - view.m_min) as f64 + (view.n_max - view.n_min) as f64 / 2.0 + 1.0;
        let unit = (800.0 / w).clamp(1.0, 24.0);
        Self {
            view,
            unit,
            pad: unit,
            out: String::new(),
        }
    }

    fn xy(&self, m: f64, n: f64) -> (f64, f64) {
        let v = &self.view;
        let x = (m - v.m_min as f64) + (n - v.n_min as f64) / 2.0;
        let y = (v.n_max as f64 - n) * SQRT3_2;
        (self.pad + x * self.unit, self.pad + y * self.unit)
    }

    fn size(&self) -> (f64, f64) {
        let v = &self.view;
        let w = (v.m_max - v.m_min) as f64 + (v.n_max - v.n_min) as f64 / 2.0;
        let h = (v.n_max - v.n_min) as f64 * SQRT3_2;
        (2.0 * self.pad + w * self.unit, 2.0 * self.pad + h * self.unit)
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64)) {
        let (x1, y1) = self.xy(a.0, a.1);
        let (x2, y2) = self.xy(b.0, b.1);
        let _ = writeln!(
            self.out,
            r#"<line class="grid" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"/>"#
        );
    }

    fn circle(&mut self, class: &str, x: LatticeSite, r: f64) {
        let (cx, cy) = self.xy(x.m as f64, x.n as f64);
        let _ = writeln!(
            self.out,
            r#"<circle class="{class}" cx="{cx:.2}" cy="{cy:.2}" r="{:.2}"/>"#,
            r * self.unit
        );
    }

    fn polygon(&mut self, class: &str, corners: &[(f64, f64)]) {
        let pts: Vec<String> = corners
            .iter()
            .map(|&(m, n)| {
                let (x, y) = self.xy(m, n);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(self.out, r#"<polygon class="{class}" points="{}"/>"#, pts.join(" "));
    }

    fn grid(&mut self) {
        let v = self.view;
        if v.m_max - v.m_min > GRID_LIMIT || v.n_max - v.n_min > GRID_LIMIT {
            return;
        }
        let (m0, m1, n0, n1) = (v.m_min as f64, v.m_max as f64, v.n_min as f64, v.n_max as f64);
        for n in v.n_min..=v.n_max {
            self.line((m0, n as f64), (m1, n as f64));
        }
        for m in v.m_min..=v.m_max {
            self.line((m as f64, n0), (m as f64, n1));
        }
        // third direction: m + n constant, clipped to the rectangle
        for s in (v.m_min + v.n_min + 1)..(v.m_max + v.n_max) {
            let lo_n = v.n_min.max(s - v.m_max);
            let hi_n = v.n_max.min(s - v.m_min);
            if lo_n < hi_n {
                self.line(((s - lo_n) as f64, lo_n as f64), ((s - hi_n) as f64, hi_n as f64));
            }
        }
    }

    fn finish(self) -> String {
        let (w, h) = self.size();
        let mut doc = String::new();
        let _ = writeln!(
            doc,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w:.2}" height="{h:.2}" viewBox="0 0 {w:.2} {h:.2}">"#
        );
        doc.push_str(
            "<style>.grid{stroke:#ccc;stroke-width:0.5}.site{fill:#222}.disk{fill:none;stroke:#888;stroke-width:0.5}\
             .insertable{fill:#f4b400;fill-opacity:0.6}.removed{fill:#fff;stroke:#222;stroke-width:1}\
             .inserted{fill:#c62828}.incorrect{fill:#1565c0;fill-opacity:0.35;stroke:#1565c0}.occupied{fill:#222}</style>\n",
        );
        doc.push_str(&self.out);
        doc.push_str("</svg>\n");
        doc
    }
}

fn need_class(spec: &RenderSpec) -> Result<Sublattice> {
    match (spec.class, &spec.config) {
        (Some(c), None) => Ok(c),
        (None, _) => Err(Error::InvalidRenderSpec("this mode needs a sublattice class".into())),
        (Some(_), Some(_)) => Err(Error::InvalidRenderSpec("this mode takes no configuration".into())),
    }
}

pub fn render_svg(spec: &RenderSpec) -> Result<String> {
    if let Some(v) = &spec.viewport {
        v.validate()?;
    }
    match spec.mode {
        RenderMode::Sublattice => {
            let class = need_class(spec)?;
            let view = spec
                .viewport
                .ok_or_else(|| Error::InvalidRenderSpec("sublattice mode needs a viewport".into()))?;
            let mut c = Canvas::new(view);
            c.grid();
            let radius = (class.index() as f64).sqrt() / 2.0;
            let sites: Vec<_> = view.sites().filter(|&x| class.contains(x)).collect();
            for &x in &sites {
                c.circle("disk", x, radius);
            }
            for &x in &sites {
                c.circle("site", x, 0.3);
            }
            Ok(c.finish())
        }
        RenderMode::DefectGeometry => {
            let class = need_class(spec)?;
            let o = LatticeSite::ORIGIN;
            let v = class.generator();
            let w = third_vertex(o, v);
            let corners = [o, v, w, v + w];
            let view = spec.viewport.unwrap_or_else(|| Viewport::around(&corners, 2));
            view.validate()?;
            let mut c = Canvas::new(view);
            c.grid();
            let mut shaded = insertable_sites_in_triangle(o, v);
            shaded.extend(insertable_sites_in_triangle(w, v));
            for &x in shaded.iter().filter(|x| view.contains(**x)) {
                c.circle("insertable", x, 0.35);
            }
            let pair = enumerate_pair_defects(&class).into_iter().next();
            for x in view.sites().filter(|&x| class.contains(x)) {
                let removed = pair.is_some() && corners.contains(&x);
                c.circle(if removed { "removed" } else { "site" }, x, 0.4);
            }
            if let Some((p, q)) = pair {
                for x in [p, q].into_iter().filter(|x| view.contains(*x)) {
                    c.circle("inserted", x, 0.25);
                }
            }
            Ok(c.finish())
        }
        RenderMode::Contours => {
            let config = match (&spec.config, spec.class) {
                (Some(cfg), None) => cfg,
                (None, _) => return Err(Error::InvalidRenderSpec("contours mode needs a configuration".into())),
                (Some(_), Some(_)) => return Err(Error::InvalidRenderSpec("contours mode takes no class".into())),
            };
            let d = config.n as i64;
            let r = config.region;
            let view = match spec.viewport {
                Some(v) => v,
                None => {
                    let v = Viewport {
                        m_min: r.k_min * d,
                        m_max: (r.k_max + 1) * d - 1,
                        n_min: r.l_min * d,
                        n_max: (r.l_max + 1) * d - 1,
                    };
                    v.validate()?;
                    v
                }
            };
            let mut c = Canvas::new(view);
            c.grid();
            for (k, l) in incorrect_parallelograms(config)? {
                let (m, n) = ((k * d) as f64, (l * d) as f64);
                let s = d as f64;
                c.polygon("incorrect", &[(m, n), (m + s, n), (m + s, n + s), (m, n + s)]);
            }
            for &x in config.occupied.iter().filter(|x| view.contains(**x)) {
                c.circle("occupied", x, 0.4);
            }
            Ok(c.finish())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::configurations::Region;
    use crate::lattice::enumerate_ground_states;

    fn count(svg: &str, class: &str) -> usize {
        svg.matches(&format!(r#"class="{class}""#)).count()
    }

    #[test]
    fn sublattice_marks() {
        let s = Sublattice::new(7, 0).unwrap();
        let svg = render_svg(&RenderSpec::sublattice(s, Viewport::new(0, 9, 0, 9).unwrap())).unwrap();
        // (0,0), (7,0), (0,7), (7,7)
        assert_eq!(count(&svg, "site"), 4);
        assert!(svg.starts_with("<svg "));
        assert!(svg.ends_with("</svg>\n"));
        let again = render_svg(&RenderSpec::sublattice(s, Viewport::new(0, 9, 0, 9).unwrap())).unwrap();
        assert_eq!(svg, again);
    }

    #[test]
    fn defect_geometry_shading() {
        let svg = render_svg(&RenderSpec::defect_geometry(Sublattice::new(5, 3).unwrap())).unwrap();
        assert_eq!(count(&svg, "insertable"), 24);
        assert_eq!(count(&svg, "inserted"), 2);
        assert_eq!(count(&svg, "removed"), 4);
    }

    #[test]
    fn single_vacancy_contours() {
        let gs = enumerate_ground_states(7).unwrap()[0];
        let mut cfg = Configuration::from_ground_state(&gs, Region::square(9));
        let x = *cfg.occupied.iter().find(|x| x.m >= 28 && x.n >= 28).unwrap();
        assert!(cfg.vacate(x));
        let svg = render_svg(&RenderSpec::contours(cfg)).unwrap();
        assert_eq!(count(&svg, "incorrect"), 9);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(Viewport::new(3, 2, 0, 0), Err(Error::InvalidViewport(_))));
        assert!(matches!(Viewport::new(0, 5000, 0, 5000), Err(Error::InvalidViewport(_))));
        assert!(matches!(Viewport::parse("1,2,3"), Err(Error::InvalidViewport(_))));
        assert_eq!(Viewport::parse("0, 9,0,9").unwrap(), Viewport::new(0, 9, 0, 9).unwrap());
        let mut spec = RenderSpec::defect_geometry(Sublattice::new(7, 0).unwrap());
        spec.class = None;
        assert!(matches!(render_svg(&spec), Err(Error::InvalidRenderSpec(_))));
        spec.viewport = Some(Viewport {
            m_min: 1,
            m_max: 0,
            n_min: 0,
            n_max: 0,
        });
        assert!(matches!(render_svg(&spec), Err(Error::InvalidViewport(_))));
        assert_eq!("contours".parse::<RenderMode>().unwrap(), RenderMode::Contours);
    }
}
