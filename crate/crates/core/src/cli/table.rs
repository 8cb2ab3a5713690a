//! Tabular output shared by every subcommand, and re-ingestion of emitted
//! point listings.
//!
//! CSV output starts with `# key=value` metadata lines, then a header row.
//! Floats are written with 17 significant digits so they parse back to the
//! same bits. JSON output carries the same metadata keys and column names.

use crate::error::{Error, Result};
use crate::netgen::{PrimeBase, UnitSquarePointSet};
use crate::sphere::{lift, SpherePoint, SpherePointSet};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(u64),
    Float(f64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn render(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => render_float(*v),
            Cell::Bool(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(v) => Value::from(*v),
            Cell::Float(v) => Value::from(*v),
            Cell::Bool(v) => Value::from(*v),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Empty => Value::Null,
        }
    }
}

/// Scientific notation with 17 significant digits.
pub fn render_float(v: f64) -> String {
    format!("{v:.16e}")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub metadata: Vec<(String, String)>,
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(header: Vec<&'static str>) -> Self {
        Self {
            metadata: Vec::new(),
            header,
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_string(), value.to_string()));
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            out.push_str(&format!("# {k}={v}\n"));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Parse(e.to_string());
        w.write_record(&self.header).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Parse(e.to_string()))?;
        out.push_str(&String::from_utf8(bytes).map_err(|e| Error::Parse(e.to_string()))?);
        Ok(out)
    }

    pub fn to_json(&self) -> Result<String> {
        let metadata: Map<String, Value> = self
            .metadata
            .iter()
            .map(|(k, v)| (k.clone(), Value::from(v.as_str())))
            .collect();
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .header
                    .iter()
                    .zip(row)
                    .map(|(h, c)| (h.to_string(), c.to_json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut doc = Map::new();
        doc.insert("metadata".into(), Value::Object(metadata));
        doc.insert("rows".into(), Value::Array(rows));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc))
            .map_err(|e| Error::Parse(e.to_string()))?;
        s.push('\n');
        Ok(s)
    }
}

/// Points read back from a CSV listing.
#[derive(Debug, Clone)]
pub enum Ingested {
    Square(UnitSquarePointSet),
    Sphere(SpherePointSet),
}

impl Ingested {
    pub fn len(&self) -> usize {
        match self {
            Ingested::Square(p) => p.len(),
            Ingested::Sphere(z) => z.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Points on the sphere, carrying pre-images when they are known.
    pub fn into_sphere(self) -> SpherePointSet {
        match self {
            Ingested::Square(p) => lift(&p),
            Ingested::Sphere(z) => z,
        }
    }
}

fn metadata(text: &str) -> Vec<(String, String)> {
    text.lines()
        .filter_map(|l| l.strip_prefix('#'))
        .filter_map(|l| l.trim().split_once('='))
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect()
}

fn field<T: std::str::FromStr>(rec: &csv::StringRecord, idx: usize, name: &str) -> Result<T> {
    let raw = rec
        .get(idx)
        .ok_or_else(|| Error::Parse(format!("missing column `{name}`")))?;
    raw.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad value `{raw}` in column `{name}`")))
}

/// Parses a square listing (exact numerators) or a sphere listing.
pub fn read_points(text: &str) -> Result<Ingested> {
    let meta = metadata(text);
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header = rdr
        .headers()
        .map_err(|e| Error::Parse(e.to_string()))?
        .clone();
    let col = |name: &str| header.iter().position(|h| h == name);
    let records = rdr
        .records()
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(e.to_string()))?;

    if let (Some(iu1), Some(iu2), Some(id)) = (col("u1"), col("u2"), col("denominator")) {
        let base = meta
            .iter()
            .find(|(k, _)| k == "base")
            .ok_or_else(|| Error::Parse("square listing lacks `# base=` metadata".into()))?
            .1
            .parse::<u64>()
            .map_err(|_| Error::Parse("bad base in metadata".into()))?;
        let base = PrimeBase::new(base)?;
        let mut denominator = None;
        let mut nums = Vec::with_capacity(records.len());
        for rec in &records {
            let d: u64 = field(rec, id, "denominator")?;
            if *denominator.get_or_insert(d) != d {
                return Err(Error::Parse("denominators differ between rows".into()));
            }
            nums.push((field(rec, iu1, "u1")?, field(rec, iu2, "u2")?));
        }
        let d = denominator.ok_or(Error::EmptyPointSet)?;
        let depth = (0..64)
            .find(|&k| base.power(k).ok() == Some(d))
            .ok_or_else(|| {
                Error::Parse(format!("denominator {d} is not a power of {}", base.get()))
            })?;
        return Ok(Ingested::Square(UnitSquarePointSet::from_numerators(
            base, depth, nums,
        )?));
    }

    if let (Some(ix), Some(iy), Some(iz)) = (col("x"), col("y"), col("z")) {
        let points = records
            .iter()
            .map(|rec| {
                SpherePoint::new(
                    field(rec, ix, "x")?,
                    field(rec, iy, "y")?,
                    field(rec, iz, "z")?,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        return Ok(Ingested::Sphere(SpherePointSet::new(points)?));
    }

    Err(Error::Parse(
        "expected columns u1,u2,denominator or x,y,z".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["n", "x", "flag", "note"]);
        t.meta("base", 2);
        t.push(vec![
            Cell::Int(0),
            Cell::Float(0.1),
            Cell::Bool(true),
            Cell::Empty,
        ]);
        t.push(vec![
            Cell::Int(1),
            Cell::Float(-2.5e-300),
            Cell::Bool(false),
            Cell::Text("a".into()),
        ]);
        t
    }

    #[test]
    fn csv_layout() {
        let s = sample().to_csv().unwrap();
        assert_eq!(
            s,
            "# base=2\nn,x,flag,note\n0,1.0000000000000001e-1,true,\n1,-2.5000000000000000e-300,false,a\n"
        );
    }

    #[test]
    fn floats_round_trip_textually() {
        for v in [0.1, 1.0 / 3.0, std::f64::consts::PI, 5e-324, f64::MAX, -0.0] {
            let back: f64 = render_float(v).parse().unwrap();
            assert_eq!(back.to_bits(), v.to_bits());
        }
    }

    #[test]
    fn json_uses_same_names() {
        let s = sample().to_json().unwrap();
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["metadata"]["base"], "2");
        assert_eq!(v["rows"][0]["x"], 0.1);
        assert_eq!(v["rows"][0]["note"], Value::Null);
        assert_eq!(v["rows"][1]["note"], "a");
    }

    #[test]
    fn reads_square_listing() {
        let text = "# base=2\nn,x1,x2,u1,u2,denominator\n0,0,0,0,0,2\n1,0.5,0.5,1,1,2\n";
        let Ingested::Square(p) = read_points(text).unwrap() else {
            panic!()
        };
        assert_eq!(p.numerators(), &[(0, 0), (1, 1)]);
        assert_eq!(p.depth(), 1);
    }

    #[test]
    fn reads_sphere_listing() {
        let text = "n,x,y,z\n0,0,0,1\n1,-1,0,0\n";
        let Ingested::Sphere(z) = read_points(text).unwrap() else {
            panic!()
        };
        assert_eq!(z.len(), 2);
        assert!(z.preimages().is_none());
    }

    #[test]
    fn rejects_bad_listings() {
        assert!(read_points("a,b\n1,2\n").is_err());
        assert!(read_points("n,x1,x2,u1,u2,denominator\n0,0,0,0,0,2\n").is_err());
        assert!(read_points("# base=2\nn,x1,x2,u1,u2,denominator\n0,0,0,0,0,6\n").is_err());
        assert!(
            read_points("# base=2\nn,x1,x2,u1,u2,denominator\n0,0,0,0,0,2\n1,0,0,1,1,4\n").is_err()
        );
        assert!(read_points("n,x,y,z\n0,0,0,2\n").is_err());
        assert!(read_points("n,x,y,z\n0,0,zero,1\n").is_err());
    }
}
