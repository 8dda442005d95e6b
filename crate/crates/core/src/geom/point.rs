//! Exact planar points and validated point sets, with bit-exact JSON and CSV
//! round-trips.
//!
//! On disk a point is a two-element array of canonical rational strings and a
//! point set is `{"label": ..., "points": [[x, y], ...]}`. Because rationals
//! are kept in lowest terms with positive denominators, write-then-read
//! reproduces exactly the same values.

use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::HashSet;
use std::fmt;
use std::path::Path;

use crate::error::{Error, Result};
use crate::exact::{parse_rat, rat_int, Rat};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExactPoint {
    pub x: Rat,
    pub y: Rat,
}

impl ExactPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        ExactPoint { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        ExactPoint::new(rat_int(x), rat_int(y))
    }

    /// Squared Euclidean distance — distances are always compared squared,
    /// never via square roots.
    pub fn squared_dist(&self, other: &ExactPoint) -> Rat {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    /// Squared distance to the origin.
    pub fn norm2(&self) -> Rat {
        &self.x * &self.x + &self.y * &self.y
    }

    pub fn dot(&self, other: &ExactPoint) -> Rat {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> ExactPoint {
        ExactPoint::new(&self.x + dx, &self.y + dy)
    }

    /// Rotation by the rational rotation with cos = 3/5, sin = 4/5; it is
    /// orthogonal, so all squared distances are preserved exactly.
    pub fn rotated345(&self) -> ExactPoint {
        let three = rat_int(3);
        let four = rat_int(4);
        let five = rat_int(5);
        ExactPoint::new(
            (&three * &self.x - &four * &self.y) / &five,
            (&four * &self.x + &three * &self.y) / &five,
        )
    }

    pub fn on_x_axis(&self) -> bool {
        self.y == rat_int(0)
    }

    pub fn on_unit_circle(&self) -> bool {
        self.norm2() == rat_int(1)
    }

    pub fn on_coordinate_axis(&self) -> bool {
        let zero = rat_int(0);
        self.x == zero || self.y == zero
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

impl Serialize for ExactPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.x.to_string(), self.y.to_string()].serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactPoint {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        Ok(ExactPoint::new(
            parse_rat(&x).map_err(D::Error::custom)?,
            parse_rat(&y).map_err(D::Error::custom)?,
        ))
    }
}

/// A labeled set of distinct points. Order is preserved as given (generators
/// emit deterministic orders), and duplicates are rejected at every
/// construction path, including deserialization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(try_from = "RawPointSet")]
pub struct PointSet {
    label: String,
    points: Vec<ExactPoint>,
}

#[derive(Deserialize)]
struct RawPointSet {
    label: String,
    points: Vec<ExactPoint>,
}

impl TryFrom<RawPointSet> for PointSet {
    type Error = Error;
    fn try_from(raw: RawPointSet) -> Result<Self> {
        PointSet::new(raw.label, raw.points)
    }
}

impl<'de> Deserialize<'de> for PointSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawPointSet::deserialize(d)?;
        PointSet::try_from(raw).map_err(D::Error::custom)
    }
}

impl PointSet {
    pub fn new(label: impl Into<String>, points: Vec<ExactPoint>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(points.len());
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::DuplicatePoint {
                    x: p.x.to_string(),
                    y: p.y.to_string(),
                });
            }
        }
        Ok(PointSet {
            label: label.into(),
            points,
        })
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn points(&self) -> &[ExactPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ExactPoint> {
        self.points.iter()
    }

    pub fn contains(&self, p: &ExactPoint) -> bool {
        self.points.contains(p)
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> PointSet {
        PointSet {
            label: self.label.clone(),
            points: self.points.iter().map(|p| p.translated(dx, dy)).collect(),
        }
    }

    pub fn rotated345(&self) -> PointSet {
        PointSet {
            label: self.label.clone(),
            points: self.points.iter().map(ExactPoint::rotated345).collect(),
        }
    }

    /// Split into (on the x-axis, off the x-axis), preserving order.
    pub fn split_by_x_axis(&self) -> (Vec<ExactPoint>, Vec<ExactPoint>) {
        self.points.iter().cloned().partition(ExactPoint::on_x_axis)
    }

    /// Split into (on the unit circle, off it), preserving order.
    pub fn split_by_unit_circle(&self) -> (Vec<ExactPoint>, Vec<ExactPoint>) {
        self.points
            .iter()
            .cloned()
            .partition(ExactPoint::on_unit_circle)
    }
}

fn io_err(path: &Path, e: impl fmt::Display) -> Error {
    Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    }
}

pub fn write_pointset_json(ps: &PointSet, path: &Path) -> Result<()> {
    let body = serde_json::to_string_pretty(ps).map_err(|e| io_err(path, e))?;
    std::fs::write(path, body + "\n").map_err(|e| io_err(path, e))
}

pub fn read_pointset_json(path: &Path) -> Result<PointSet> {
    let body = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    serde_json::from_str(&body).map_err(|e| Error::Parse {
        what: format!("{}: {e}", path.display()),
    })
}

/// CSV form: one `x,y` pair of canonical rationals per line, no header.
pub fn write_pointset_csv(ps: &PointSet, path: &Path) -> Result<()> {
    let mut body = String::new();
    for p in ps.iter() {
        body.push_str(&format!("{},{}\n", p.x, p.y));
    }
    std::fs::write(path, body).map_err(|e| io_err(path, e))
}

pub fn read_pointset_csv(path: &Path, label: impl Into<String>) -> Result<PointSet> {
    let body = std::fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let mut points = Vec::new();
    for (lineno, line) in body.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split(',');
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(Error::Parse {
                what: format!(
                    "{} line {}: expected exactly two comma-separated rationals",
                    path.display(),
                    lineno + 1
                ),
            });
        };
        points.push(ExactPoint::new(parse_rat(x)?, parse_rat(y)?));
    }
    PointSet::new(label, points)
}

/// Dispatch on extension: `.json` or `.csv`.
pub fn read_pointset_auto(path: &Path) -> Result<PointSet> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") => read_pointset_json(path),
        Some("csv") => {
            let label = path
                .file_stem()
                .and_then(|s| s.to_str())
                .unwrap_or("points")
                .to_string();
            read_pointset_csv(path, label)
        }
        other => Err(Error::Parse {
            what: format!(
                "{}: unsupported extension {other:?} (expected .json or .csv)",
                path.display()
            ),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn squared_distance_is_exact() {
        let a = ExactPoint::from_ints(0, 0);
        let b = ExactPoint::new(rat(3, 5), rat(4, 5));
        assert_eq!(a.squared_dist(&b), rat_int(1));
        assert_eq!(b.norm2(), rat_int(1));
        assert!(b.on_unit_circle());
    }

    #[test]
    fn rotation_preserves_distances_exactly() {
        let a = ExactPoint::from_ints(2, 7);
        let b = ExactPoint::new(rat(1, 3), rat(-5, 2));
        assert_eq!(
            a.squared_dist(&b),
            a.rotated345().squared_dist(&b.rotated345())
        );
        assert!(ExactPoint::from_ints(1, 0).rotated345().on_unit_circle());
    }

    #[test]
    fn pointset_rejects_duplicates() {
        let err = PointSet::new(
            "dup",
            vec![ExactPoint::from_ints(1, 2), ExactPoint::from_ints(1, 2)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::DuplicatePoint { .. }));
    }

    #[test]
    fn json_round_trip_is_bit_exact() {
        let ps = PointSet::new(
            "demo",
            vec![
                ExactPoint::new(rat(3, 5), rat(4, 5)),
                ExactPoint::from_ints(-2, 0),
                ExactPoint::new(rat(-7, 3), rat_int(9)),
            ],
        )
        .unwrap();
        let text = serde_json::to_string(&ps).unwrap();
        let back: PointSet = serde_json::from_str(&text).unwrap();
        assert_eq!(ps, back);
        // Canonical strings inside: integers print bare, fractions as n/d.
        assert!(text.contains("\"3/5\""));
        assert!(text.contains("\"-2\""));
    }

    #[test]
    fn json_deserialization_validates_duplicates() {
        let text = r#"{"label":"d","points":[["1","2"],["1","2"]]}"#;
        assert!(serde_json::from_str::<PointSet>(text).is_err());
    }

    #[test]
    fn csv_round_trip_is_bit_exact() {
        let dir = std::env::temp_dir().join("distdist-core-csv-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("pts.csv");
        let ps = PointSet::new(
            "csv",
            vec![
                ExactPoint::new(rat(1, 2), rat(-3, 4)),
                ExactPoint::from_ints(5, 0),
            ],
        )
        .unwrap();
        write_pointset_csv(&ps, &path).unwrap();
        let back = read_pointset_csv(&path, "csv").unwrap();
        assert_eq!(ps, back);
    }

    #[test]
    fn splits_partition_the_set() {
        let ps = PointSet::new(
            "s",
            vec![
                ExactPoint::from_ints(0, 0),
                ExactPoint::from_ints(1, 2),
                ExactPoint::from_ints(3, 0),
            ],
        )
        .unwrap();
        let (on, off) = ps.split_by_x_axis();
        assert_eq!(on.len(), 2);
        assert_eq!(off.len(), 1);
    }
}
