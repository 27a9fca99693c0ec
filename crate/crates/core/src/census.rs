//! Labeled census of relative equilibria with strengths `(1, 1, 1, G4)`.
//!
//! Every certified geometry from the collinear, kite and rhombus solvers is expanded into its
//! strength-preserving relabelings. Labeled configurations are identified when an
//! orientation-preserving similarity maps one onto the other, so mirror images stay distinct.
//! Orbits are deduplicated across all sources, and each new orbit is credited to the class of
//! the first geometry that produced it.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::collinear::{self, BifurcationBracket};
use crate::error::{Error, Result};
use crate::kite::{self, KiteClass};
use crate::ratpoly::{int, rat, to_f64, Rational};
use crate::rhombus;
use crate::vortexcore::{certify, interior_vortex, EquilibriumCertificate, PlanarConfiguration};

/// Certification tolerance applied to every counted record.
pub const CERTIFY_TOL: f64 = 1e-10;

/// Two normalized labeled configurations are the same orbit when they agree to this tolerance.
pub const ORBIT_TOL: f64 = 1e-8;

/// Solver that produced a record.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Source {
    /// Collinear solver.
    Collinear,
    /// Kite solver.
    Kite,
    /// Rhombus closed form.
    Rhombus,
}

/// Geometric class used for labeling multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LabelClass {
    /// All four vortices on a line.
    Collinear,
    /// The square.
    Square,
    /// Equilateral triangle with vortex 4 at the center, all strengths equal.
    EquilateralInteriorUnit,
    /// Equilateral triangle with vortex 4 at a vertex and a unit vortex at the center, all strengths equal.
    EquilateralExteriorUnit,
    /// Convex kite other than the square.
    Convex,
    /// Equilateral triangle of unit vortices with vortex 4 at the center.
    EquilateralInterior,
    /// Isosceles triangle with vortex 4 inside on the axis.
    IsoscelesInterior,
    /// Isosceles triangle with vortex 4 at the apex and a unit vortex inside.
    IsoscelesExterior,
}

impl LabelClass {
    /// Every class, in crediting order.
    pub const ALL: [LabelClass; 8] = [
        LabelClass::Collinear,
        LabelClass::Square,
        LabelClass::EquilateralInteriorUnit,
        LabelClass::EquilateralExteriorUnit,
        LabelClass::EquilateralInterior,
        LabelClass::Convex,
        LabelClass::IsoscelesInterior,
        LabelClass::IsoscelesExterior,
    ];

    /// Kebab-case name.
    pub fn name(self) -> &'static str {
        match self {
            LabelClass::Collinear => "collinear",
            LabelClass::Square => "square",
            LabelClass::EquilateralInteriorUnit => "equilateral-interior-unit",
            LabelClass::EquilateralExteriorUnit => "equilateral-exterior-unit",
            LabelClass::Convex => "convex",
            LabelClass::EquilateralInterior => "equilateral-interior",
            LabelClass::IsoscelesInterior => "isosceles-interior",
            LabelClass::IsoscelesExterior => "isosceles-exterior",
        }
    }

    /// Census column the class is reported under.
    pub fn column(self) -> Column {
        match self {
            LabelClass::Collinear => Column::Collinear,
            LabelClass::Square | LabelClass::Convex => Column::Convex,
            LabelClass::EquilateralInteriorUnit
            | LabelClass::EquilateralExteriorUnit
            | LabelClass::EquilateralInterior => Column::Equilateral,
            LabelClass::IsoscelesInterior => Column::ConcaveInterior,
            LabelClass::IsoscelesExterior => Column::ConcaveExterior,
        }
    }

    fn rank(self) -> usize {
        LabelClass::ALL.iter().position(|&c| c == self).expect("listed")
    }
}

impl fmt::Display for LabelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for LabelClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        LabelClass::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown geometry class '{s}'")))
    }
}

/// Columns of a census row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Column {
    /// Collinear configurations.
    Collinear,
    /// Convex kites including the square.
    Convex,
    /// Isosceles triangles with vortex 4 inside.
    ConcaveInterior,
    /// Isosceles triangles with vortex 4 at the apex.
    ConcaveExterior,
    /// Equilateral triangles with a vortex at the center.
    Equilateral,
    /// Rhombus orbits not already produced by another solver.
    RhombusExtra,
}

impl Column {
    /// Every column in CSV order.
    pub const ALL: [Column; 6] = [
        Column::Collinear,
        Column::Convex,
        Column::ConcaveInterior,
        Column::ConcaveExterior,
        Column::Equilateral,
        Column::RhombusExtra,
    ];

    /// Snake-case name used in CSV headers.
    pub fn name(self) -> &'static str {
        match self {
            Column::Collinear => "collinear",
            Column::Convex => "convex",
            Column::ConcaveInterior => "concave_interior",
            Column::ConcaveExterior => "concave_exterior",
            Column::Equilateral => "equilateral",
            Column::RhombusExtra => "rhombus_extra",
        }
    }
}

/// Labeled copies of one geometric solution as tallied in the corollary proof.
///
/// The square contributes 6, the equal-strength equilateral shapes 8 each, a convex kite 6, the
/// equilateral triangle with a distinct central vortex 2, and each isosceles shape 3.
pub fn count_labelings(geometry: LabelClass, gamma4: f64) -> Result<u32> {
    let unit = gamma4 == 1.0;
    let requires = |want_unit: bool| {
        if want_unit == unit {
            Ok(())
        } else if want_unit {
            Err(Error::Domain(format!("{geometry} requires G4 = 1")))
        } else {
            Err(Error::Domain(format!("{geometry} requires G4 != 1")))
        }
    };
    match geometry {
        LabelClass::Collinear => Err(Error::Domain(
            "collinear solutions are already labeled and are counted one by one".into(),
        )),
        LabelClass::Square => Ok(6),
        LabelClass::EquilateralInteriorUnit | LabelClass::EquilateralExteriorUnit => {
            requires(true).map(|_| 8)
        }
        LabelClass::Convex => Ok(6),
        LabelClass::EquilateralInterior => requires(false).map(|_| 2),
        LabelClass::IsoscelesInterior | LabelClass::IsoscelesExterior => {
            requires(false).map(|_| 3)
        }
    }
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn norm(a: [f64; 2]) -> f64 {
    a[0].hypot(a[1])
}

fn scale_of(p: &[[f64; 2]; 4]) -> f64 {
    let mut s: f64 = 0.0;
    for i in 0..4 {
        for j in i + 1..4 {
            s = s.max(norm(sub(p[i], p[j])));
        }
    }
    s
}

/// Geometric class of a certified configuration with strengths `(1, 1, 1, G4)`.
pub fn classify_geometry(cfg: &PlanarConfiguration) -> LabelClass {
    let p = cfg.positions;
    let unit = cfg.gamma[3] == 1.0;
    let s = scale_of(&p);
    let tol = 1e-7 * s;
    let cross = |a: [f64; 2], b: [f64; 2]| a[0] * b[1] - a[1] * b[0];
    if (1..4).all(|i| (2..4).all(|j| cross(sub(p[i], p[0]), sub(p[j], p[0])).abs() <= tol * s)) {
        return LabelClass::Collinear;
    }
    let mut d: Vec<f64> = Vec::with_capacity(6);
    for i in 0..4 {
        for j in i + 1..4 {
            d.push(norm(sub(p[i], p[j])));
        }
    }
    d.sort_by(f64::total_cmp);
    let near = |a: f64, b: f64| (a - b).abs() <= tol;
    if near(d[0], d[3]) && near(d[4], d[5]) && near(d[5], d[0] * 2f64.sqrt()) {
        return LabelClass::Square;
    }
    let center = (0..4).find(|&c| {
        let o: Vec<usize> = (0..4).filter(|&j| j != c).collect();
        let g = [
            (p[o[0]][0] + p[o[1]][0] + p[o[2]][0]) / 3.0,
            (p[o[0]][1] + p[o[1]][1] + p[o[2]][1]) / 3.0,
        ];
        let a = norm(sub(p[o[0]], p[o[1]]));
        let b = norm(sub(p[o[1]], p[o[2]]));
        let c2 = norm(sub(p[o[2]], p[o[0]]));
        norm(sub(p[c], g)) <= tol && near(a, b) && near(b, c2)
    });
    match (center, unit) {
        (Some(3), true) => return LabelClass::EquilateralInteriorUnit,
        (Some(_), true) => return LabelClass::EquilateralExteriorUnit,
        (Some(3), false) => return LabelClass::EquilateralInterior,
        _ => {}
    }
    match interior_vortex(&p) {
        None => LabelClass::Convex,
        Some(3) => LabelClass::IsoscelesInterior,
        Some(_) => LabelClass::IsoscelesExterior,
    }
}

/// Labeled configuration normalized by the orientation-preserving similarity sending vortex 1 to
/// `0` and vortex 2 to `1`; returns the images of vortices 3 and 4.
fn normal_form(p: &[[f64; 2]; 4]) -> [f64; 4] {
    let d = sub(p[1], p[0]);
    let n2 = d[0] * d[0] + d[1] * d[1];
    let map = |z: [f64; 2]| {
        let w = sub(z, p[0]);
        [
            (w[0] * d[0] + w[1] * d[1]) / n2,
            (w[1] * d[0] - w[0] * d[1]) / n2,
        ]
    };
    let a = map(p[2]);
    let b = map(p[3]);
    [a[0], a[1], b[0], b[1]]
}

fn same_orbit(a: &[f64; 4], b: &[f64; 4]) -> bool {
    a.iter()
        .zip(b)
        .all(|(x, y)| (x - y).abs() <= ORBIT_TOL * (1.0 + x.abs().max(y.abs())))
}

const PERMUTATIONS: [[usize; 4]; 24] = [
    [0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3], [0, 2, 3, 1], [0, 3, 1, 2], [0, 3, 2, 1],
    [1, 0, 2, 3], [1, 0, 3, 2], [1, 2, 0, 3], [1, 2, 3, 0], [1, 3, 0, 2], [1, 3, 2, 0],
    [2, 0, 1, 3], [2, 0, 3, 1], [2, 1, 0, 3], [2, 1, 3, 0], [2, 3, 0, 1], [2, 3, 1, 0],
    [3, 0, 1, 2], [3, 0, 2, 1], [3, 1, 0, 2], [3, 1, 2, 0], [3, 2, 0, 1], [3, 2, 1, 0],
];

/// Normal forms of every strength-preserving relabeling of `cfg`, one per orbit.
pub fn labeled_orbits(cfg: &PlanarConfiguration) -> Vec<[f64; 4]> {
    let mut out: Vec<[f64; 4]> = Vec::new();
    for sigma in PERMUTATIONS {
        if (0..4).any(|i| cfg.gamma[sigma[i]] != cfg.gamma[i]) {
            continue;
        }
        let q = [
            cfg.positions[sigma[0]],
            cfg.positions[sigma[1]],
            cfg.positions[sigma[2]],
            cfg.positions[sigma[3]],
        ];
        let nf = normal_form(&q);
        if !out.iter().any(|o| same_orbit(o, &nf)) {
            out.push(nf);
        }
    }
    out
}

/// Chart coordinates of a record.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "chart", rename_all = "kebab-case")]
pub enum ChartData {
    /// Vortices at `x1, x2, -1, 1` on the real axis.
    Collinear {
        /// Position of vortex 1.
        x1: f64,
        /// Position of vortex 2.
        x2: f64,
    },
    /// Kite chart point.
    Kite {
        /// Vortex 3 at `(0, -k)`.
        k: f64,
        /// Vortex 4 at `(0, l)`.
        l: f64,
    },
    /// Rhombus with diagonal ratio squared `x^2`.
    Rhombus {
        /// `(r34 / r12)^2`.
        x_squared: f64,
    },
}

/// One certified geometric solution and its labeled copies.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionRecord {
    /// Solver that found it.
    pub source: Source,
    /// Geometric class.
    pub geometry: LabelClass,
    /// Chart coordinates.
    pub chart: ChartData,
    /// Embedded configuration.
    pub configuration: PlanarConfiguration,
    /// Velocity-field certificate.
    pub certificate: EquilibriumCertificate,
    /// Labeled copies modulo rotation and scaling, from the orbit count.
    pub labelings: u32,
    /// The multiplicity quoted for this class in the corollary proof, when applicable.
    pub published_labelings: Option<u32>,
    /// Orbits not already credited to an earlier record.
    pub new_orbits: u32,
}

/// A candidate the solvers could not resolve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Unresolved {
    /// Solver that produced it.
    pub source: Source,
    /// Explanation.
    pub reason: String,
}

/// Per-column labeled counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    /// Collinear configurations.
    pub collinear: u32,
    /// Convex kites including the square.
    pub convex: u32,
    /// Isosceles triangles with vortex 4 inside.
    pub concave_interior: u32,
    /// Isosceles triangles with vortex 4 at the apex.
    pub concave_exterior: u32,
    /// Equilateral triangles with a central vortex.
    pub equilateral: u32,
    /// Rhombus orbits not produced by the other solvers.
    pub rhombus_extra: u32,
}

impl ClassCounts {
    /// Count in one column.
    pub fn get(&self, c: Column) -> u32 {
        match c {
            Column::Collinear => self.collinear,
            Column::Convex => self.convex,
            Column::ConcaveInterior => self.concave_interior,
            Column::ConcaveExterior => self.concave_exterior,
            Column::Equilateral => self.equilateral,
            Column::RhombusExtra => self.rhombus_extra,
        }
    }

    fn slot(&mut self, c: Column) -> &mut u32 {
        match c {
            Column::Collinear => &mut self.collinear,
            Column::Convex => &mut self.convex,
            Column::ConcaveInterior => &mut self.concave_interior,
            Column::ConcaveExterior => &mut self.concave_exterior,
            Column::Equilateral => &mut self.equilateral,
            Column::RhombusExtra => &mut self.rhombus_extra,
        }
    }

    /// Sum over all columns.
    pub fn total(&self) -> u32 {
        Column::ALL.iter().map(|&c| self.get(c)).sum()
    }
}

/// A published row of the corollary, with the per-family split given in its proof when there is one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PublishedRow {
    /// Range of `G4` the row covers, as printed.
    pub range: String,
    /// Published total.
    pub total: u32,
    /// Per-column split from the proof, absent when the proof does not treat the row.
    pub split: Option<ClassCounts>,
}

impl PublishedRow {
    /// Sum of the proof's per-column split.
    pub fn split_total(&self) -> Option<u32> {
        self.split.as_ref().map(ClassCounts::total)
    }
}

fn published(range: &str, total: u32, split: Option<[u32; 5]>) -> PublishedRow {
    PublishedRow {
        range: range.into(),
        total,
        split: split.map(|[collinear, convex, equilateral, concave_interior, concave_exterior]| {
            ClassCounts {
                collinear,
                convex,
                concave_interior,
                concave_exterior,
                equilateral,
                rhombus_extra: 0,
            }
        }),
    }
}

/// The corollary row covering `gamma4`; `None` at `G4 = -1`, which no row covers.
pub fn published_row(gamma4: &Rational) -> Option<PublishedRow> {
    let zero = int(0);
    let one = int(1);
    let half = rat(-1, 2);
    let minus_one = int(-1);
    Some(match gamma4 {
        g if *g == zero => published("G4 = 0", 26, Some([12, 6, 2, 3, 3])),
        g if *g > zero && *g < one => published("0 < G4 < 1", 29, Some([12, 6, 2, 3, 6])),
        g if *g == one => published("G4 = 1", 34, Some([12, 6, 16, 0, 0])),
        g if *g > one => published("G4 > 1", 23, Some([12, 6, 2, 3, 0])),
        g if *g > half => published("-1/2 < G4 < 0", 20, Some([12, 6, 2, 0, 0])),
        g if *g == half => published("G4 = -1/2", 15, Some([7, 6, 3, 0, 0])),
        g if *g > minus_one => published("-1 < G4 < -1/2", 14, Some([6, 6, 3, 0, 0])),
        g if *g < minus_one => published("G4 < -1", 8, None),
        _ => return None,
    })
}

/// One disagreement between the computed row and the published one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Discrepancy {
    /// Column name, `total`, or a labeling class name.
    pub family: String,
    /// Computed value.
    pub computed: u32,
    /// Published value, when the publication gives one.
    pub published: Option<u32>,
    /// Explanation.
    pub note: String,
}

fn ser_rational<S: Serializer>(q: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

/// Census at one strength.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CensusRow {
    /// The fourth strength, exactly.
    #[serde(serialize_with = "ser_rational")]
    pub gamma4: Rational,
    /// Per-column labeled counts.
    pub counts: ClassCounts,
    /// Sum of `counts`.
    pub total: u32,
    /// The published row covering `gamma4`.
    pub published: Option<PublishedRow>,
    /// True when the computed total equals the published total.
    pub matches: bool,
    /// False when some candidate was left unresolved; such rows are never silently counted.
    pub complete: bool,
    /// Every certified record, in crediting order.
    pub records: Vec<SolutionRecord>,
    /// Candidates that could not be resolved.
    pub unresolved: Vec<Unresolved>,
    /// Closed-form rhombus candidates whose embedding is not an equilibrium.
    pub rejected: Vec<Unresolved>,
    /// Roots of the collinear polynomial with no finite equilibrium.
    pub collinear_roots_at_infinity: u32,
    /// Differences from the published row.
    pub discrepancies: Vec<Discrepancy>,
}

impl CensusRow {
    /// CSV header matching [`CensusRow::csv_line`].
    pub const CSV_HEADER: &'static str =
        "gamma4,collinear,convex,concave_interior,concave_exterior,equilateral,rhombus_extra,total,paper_total,match";

    /// One CSV line.
    pub fn csv_line(&self) -> String {
        let c = &self.counts;
        format!(
            "{},{},{},{},{},{},{},{},{},{}",
            self.gamma4,
            c.collinear,
            c.convex,
            c.concave_interior,
            c.concave_exterior,
            c.equilateral,
            c.rhombus_extra,
            self.total,
            self.published.as_ref().map(|p| p.total.to_string()).unwrap_or_default(),
            self.matches
        )
    }
}

struct Candidate {
    source: Source,
    chart: ChartData,
    configuration: PlanarConfiguration,
    certificate: EquilibriumCertificate,
}

fn kite_class_rank(c: KiteClass) -> usize {
    match c {
        KiteClass::Square => 0,
        KiteClass::EquilateralBarycenter => 1,
        KiteClass::Convex => 2,
        KiteClass::ConcaveInterior => 3,
        KiteClass::ConcaveExterior => 4,
    }
}

fn gather(gamma4: &Rational) -> Result<(Vec<Candidate>, Vec<Unresolved>, u32)> {
    let g = to_f64(gamma4);
    let mut cands = Vec::new();
    let mut unresolved = Vec::new();

    let col = collinear::solve(gamma4, &crate::ratpoly::decimal_eps(30))?;
    for s in &col.solutions {
        let configuration = s.configuration();
        cands.push(Candidate {
            source: Source::Collinear,
            chart: ChartData::Collinear { x1: s.x1, x2: s.x2 },
            certificate: certify(&configuration, CERTIFY_TOL)?,
            configuration,
        });
    }
    let at_infinity = col.unrecovered.len() as u32;

    let report = if gamma4.is_zero() {
        kite::solve_kite_gamma4_zero(CERTIFY_TOL)?
    } else {
        kite::solve_kite(g, CERTIFY_TOL)?
    };
    let mut sols = report.solutions.clone();
    sols.sort_by_key(|s| kite_class_rank(s.class));
    for s in sols {
        cands.push(Candidate {
            source: Source::Kite,
            chart: ChartData::Kite { k: s.point.k, l: s.point.l },
            configuration: s.point.embed(g),
            certificate: s.certificate,
        });
    }
    for u in report.unresolved {
        unresolved.push(Unresolved {
            source: Source::Kite,
            reason: format!("({}, {}) on {}: {}", u.point.k, u.point.l, u.arc.name(), u.reason),
        });
    }

    for r in rhombus::enumerate_families(g, CERTIFY_TOL)? {
        cands.push(Candidate {
            source: Source::Rhombus,
            chart: ChartData::Rhombus { x_squared: r.x_squared },
            configuration: r.configuration,
            certificate: r.certificate,
        });
    }
    Ok((cands, unresolved, at_infinity))
}

fn discrepancies(row: &CensusRow) -> Vec<Discrepancy> {
    let mut out = Vec::new();
    let Some(p) = &row.published else {
        return out;
    };
    if let Some(split) = &p.split {
        if split.total() != p.total {
            out.push(Discrepancy {
                family: "published-split".into(),
                computed: split.total(),
                published: Some(p.total),
                note: format!(
                    "the per-family split in the proof sums to {} but the row states {}",
                    split.total(),
                    p.total
                ),
            });
        }
        for c in Column::ALL {
            let (have, want) = (row.counts.get(c), split.get(c));
            if have != want {
                out.push(Discrepancy {
                    family: c.name().into(),
                    computed: have,
                    published: Some(want),
                    note: format!("computed {have} labeled solutions, the proof lists {want}"),
                });
            }
        }
    } else if row.total != p.total {
        out.push(Discrepancy {
            family: "total".into(),
            computed: row.total,
            published: Some(p.total),
            note: "the proof gives no per-family split for this row".into(),
        });
    }
    let mut seen: Vec<LabelClass> = Vec::new();
    for r in &row.records {
        if let Some(pl) = r.published_labelings {
            if pl != r.labelings && !seen.contains(&r.geometry) {
                seen.push(r.geometry);
                out.push(Discrepancy {
                    family: r.geometry.name().into(),
                    computed: r.labelings,
                    published: Some(pl),
                    note: format!(
                        "each {} shape has {} labelings up to rotation and scaling, the proof counts {}",
                        r.geometry, r.labelings, pl
                    ),
                });
            }
        }
        if r.source == Source::Kite && r.new_orbits == 0 && !seen.contains(&r.geometry) {
            seen.push(r.geometry);
            out.push(Discrepancy {
                family: r.geometry.name().into(),
                computed: 0,
                published: r.published_labelings,
                note: format!(
                    "every labeling of this {} shape coincides with one already counted",
                    r.geometry
                ),
            });
        }
    }
    out
}

/// Labeled census at `gamma4`.
///
/// Records failing certification are not counted. A row with unresolved collinear or kite
/// candidates is marked incomplete; rhombus embeddings that fail certification are listed as
/// rejected, since the closed form is only a candidate.
pub fn census_at(gamma4: &Rational) -> Result<CensusRow> {
    let g = to_f64(gamma4);
    let (cands, mut unresolved, at_infinity) = gather(gamma4)?;
    let mut tagged: Vec<(LabelClass, Candidate)> = Vec::new();
    let mut rejected = Vec::new();
    for c in cands {
        if !c.certificate.pass {
            let sink = if c.source == Source::Rhombus {
                &mut rejected
            } else {
                &mut unresolved
            };
            sink.push(Unresolved {
                source: c.source,
                reason: format!(
                    "certification failed at {:?} (motion residual {:e})",
                    c.chart, c.certificate.residual_motion
                ),
            });
            continue;
        }
        tagged.push((classify_geometry(&c.configuration), c));
    }
    tagged.sort_by(|a, b| {
        let src = |s: Source| s as usize;
        match src(a.1.source).cmp(&src(b.1.source)) {
            Ordering::Equal => a.0.rank().cmp(&b.0.rank()),
            o => o,
        }
    });

    let mut seen: Vec<[f64; 4]> = Vec::new();
    let mut counts = ClassCounts::default();
    let mut records = Vec::new();
    for (geometry, c) in tagged {
        let orbits = labeled_orbits(&c.configuration);
        let mut fresh = 0u32;
        for o in &orbits {
            if !seen.iter().any(|s| same_orbit(s, o)) {
                seen.push(*o);
                fresh += 1;
            }
        }
        let column = if c.source == Source::Rhombus {
            Column::RhombusExtra
        } else {
            geometry.column()
        };
        *counts.slot(column) += fresh;
        records.push(SolutionRecord {
            source: c.source,
            geometry,
            chart: c.chart,
            configuration: c.configuration,
            certificate: c.certificate,
            labelings: orbits.len() as u32,
            published_labelings: count_labelings(geometry, g).ok(),
            new_orbits: fresh,
        });
    }
    let published = published_row(gamma4);
    let total = counts.total();
    let mut row = CensusRow {
        gamma4: gamma4.clone(),
        counts,
        total,
        matches: published.as_ref().is_some_and(|p| p.total == total),
        published,
        complete: unresolved.is_empty(),
        records,
        unresolved,
        rejected,
        collinear_roots_at_infinity: at_infinity,
        discrepancies: Vec::new(),
    };
    row.discrepancies = discrepancies(&row);
    Ok(row)
}

/// Rows of a sweep together with the bifurcation brackets found in the range.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Sweep {
    /// Rows ordered by `G4`.
    pub rows: Vec<CensusRow>,
    /// Brackets of collinear root-count changes, as `[lo, hi]` decimal pairs.
    pub collinear_bifurcations: Vec<[f64; 2]>,
    /// Kite critical values inside the range.
    pub kite_critical_values: Vec<f64>,
}

/// Grid used to locate collinear bifurcations in a sweep.
const BIFURCATION_GRID: usize = 64;

/// Censuses at `samples` equally spaced rational strengths in `[lo, hi]`, computed in parallel.
///
/// A degenerate range `lo = hi` yields a single row.
pub fn sweep(lo: &Rational, hi: &Rational, samples: usize) -> Result<Sweep> {
    if samples < 2 {
        return Err(Error::Precondition("samples must be at least 2".into()));
    }
    if lo > hi {
        return Err(Error::Domain("empty parameter range".into()));
    }
    let points: Vec<Rational> = if lo == hi {
        vec![lo.clone()]
    } else {
        let step = (hi - lo) / int(samples as i64 - 1);
        (0..samples).map(|i| lo + &step * int(i as i64)).collect()
    };
    let rows = points
        .par_iter()
        .map(census_at)
        .collect::<Result<Vec<_>>>()?;
    let collinear_bifurcations = if lo < hi {
        collinear::bifurcation_values(lo, hi, BIFURCATION_GRID)?
            .iter()
            .map(|b: &BifurcationBracket| [to_f64(&b.lo), to_f64(&b.hi)])
            .collect()
    } else {
        Vec::new()
    };
    let (flo, fhi) = (to_f64(lo), to_f64(hi));
    let mut kite_critical_values: Vec<f64> = kite::cached_critical_points()
        .iter()
        .map(|c| c.gamma4)
        .filter(|&v| v >= flo && v <= fhi)
        .collect();
    kite_critical_values.dedup();
    Ok(Sweep {
        rows,
        collinear_bifurcations,
        kite_critical_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kite::KitePoint;

    fn row(n: i64, d: i64) -> CensusRow {
        census_at(&rat(n, d)).unwrap()
    }

    #[test]
    fn labeling_table_examples() {
        assert_eq!(count_labelings(LabelClass::Square, 1.0).unwrap(), 6);
        assert_eq!(count_labelings(LabelClass::EquilateralInterior, 0.5).unwrap(), 2);
        assert_eq!(count_labelings(LabelClass::IsoscelesInterior, 2.0).unwrap(), 3);
        assert_eq!(count_labelings(LabelClass::EquilateralInteriorUnit, 1.0).unwrap(), 8);
        assert!(count_labelings(LabelClass::EquilateralInteriorUnit, 0.5).is_err());
        assert!("trapezoid".parse::<LabelClass>().is_err());
    }

    #[test]
    fn orbit_counts_for_symmetric_shapes() {
        let square = KitePoint::new(1.0, 1.0).embed(1.0);
        assert_eq!(labeled_orbits(&square).len(), 6);
        let bary = kite::barycenter_point();
        assert_eq!(labeled_orbits(&bary.embed(1.0)).len(), 8);
        assert_eq!(labeled_orbits(&bary.embed(0.5)).len(), 2);
        let generic = KitePoint::new(0.7, 1.9).embed(0.5);
        assert_eq!(labeled_orbits(&generic).len(), 6);
    }

    #[test]
    fn brute_force_orbits_against_published_multiplicities() {
        // Rotation-only equivalence reproduces every multiplicity except the isosceles ones,
        // which the proof counts as if mirror images were identified.
        for g in [rat(1, 2), int(1), int(2), int(0)] {
            let r = census_at(&g).unwrap();
            for rec in &r.records {
                let Some(pl) = rec.published_labelings else { continue };
                match rec.geometry {
                    LabelClass::IsoscelesInterior | LabelClass::IsoscelesExterior => {
                        assert_eq!(rec.labelings, 2 * pl, "{:?}", rec.geometry)
                    }
                    _ => assert_eq!(rec.labelings, pl, "{:?} at {}", rec.geometry, g),
                }
            }
        }
    }

    #[test]
    fn all_equal_strengths() {
        let r = row(1, 1);
        assert!(r.complete);
        assert_eq!(r.counts.convex, 6);
        assert_eq!(r.counts.equilateral, 8);
        assert_eq!(r.counts.concave_exterior, 0);
        assert_eq!(r.counts.rhombus_extra, 0);
        assert_eq!(r.total, r.counts.collinear + 14);
        assert!(!r.matches);
        assert!(r.discrepancies.iter().any(|d| d.family == "equilateral"));
    }

    #[test]
    fn between_zero_and_one() {
        let r = row(1, 2);
        assert!(r.complete, "{:?}", r.unresolved);
        assert_eq!(r.counts.collinear, 12);
        assert_eq!(r.counts.convex, 6);
        assert_eq!(r.counts.equilateral, 2);
        assert_eq!(r.counts.concave_interior, 6);
        assert_eq!(r.counts.concave_exterior, 12);
        assert_eq!(r.total, 38);
        assert_eq!(r.published.as_ref().unwrap().total, 29);
        assert!(r.discrepancies.iter().any(|d| d.family == "concave_exterior"));
    }

    #[test]
    fn every_record_is_certified_and_totals_add_up() {
        for g in [rat(-1, 4), rat(-3, 4), int(2), int(0)] {
            let r = census_at(&g).unwrap();
            assert!(r.records.iter().all(|x| x.certificate.pass));
            let fresh: u32 = r.records.iter().map(|x| x.new_orbits).sum();
            assert_eq!(fresh, r.total);
            assert_eq!(r.counts.total(), r.total);
        }
    }

    #[test]
    fn published_split_inconsistencies_are_reported() {
        let r = row(-1, 2);
        assert!(r.discrepancies.iter().any(|d| d.family == "published-split"));
        assert_eq!(r.collinear_roots_at_infinity, 1);
    }

    #[test]
    fn published_rows_cover_the_line_except_minus_one() {
        assert!(published_row(&int(-1)).is_none());
        assert_eq!(published_row(&int(-5)).unwrap().total, 8);
        assert_eq!(published_row(&rat(-3, 4)).unwrap().total, 14);
    }

    #[test]
    fn sweep_is_ordered_and_deterministic() {
        let (lo, hi) = (rat(3, 2), rat(5, 2));
        let one = rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap();
        let many = rayon::ThreadPoolBuilder::new().num_threads(4).build().unwrap();
        let a = one.install(|| sweep(&lo, &hi, 3)).unwrap();
        let b = many.install(|| sweep(&lo, &hi, 3)).unwrap();
        assert_eq!(a, b);
        assert!(a.rows.windows(2).all(|w| w[0].gamma4 < w[1].gamma4));
        let totals: Vec<u32> = a.rows.iter().map(|r| r.total).collect();
        assert!(totals.windows(2).all(|w| w[0] == w[1]));
        assert_eq!(sweep(&int(1), &int(1), 5).unwrap().rows.len(), 1);
        assert!(sweep(&lo, &hi, 1).is_err());
    }
}
