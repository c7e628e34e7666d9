use std::io;

use serde_json::{Map, Value};

use super::config::OutputFormat;

/// 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        format!("{x}")
    }
}

/// `serde_json` formatter writing floats through [`format_float`].
pub struct CanonicalFormatter;

impl serde_json::ser::Formatter for CanonicalFormatter {
    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_float(value).as_bytes())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}
impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}
impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}
impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}
impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Float(x) => format_float(*x),
            Cell::Int(i) => i.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Int(i) => Value::from(*i),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A result table: header, a units row, data rows and trailing
/// `name,value` notes.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub units: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<(&'static str, Cell)>,
}

impl Table {
    pub fn new(columns: &[(&'static str, &'static str)]) -> Self {
        Table {
            columns: columns.iter().map(|c| c.0).collect(),
            units: columns.iter().map(|c| c.1).collect(),
            ..Default::default()
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn note(&mut self, name: &'static str, value: impl Into<Cell>) {
        self.notes.push((name, value.into()));
    }

    /// Header, then the units row prefixed with `#`, then the data; notes
    /// follow as `# name,value` lines.
    pub fn to_csv(&self) -> String {
        let mut s = self.columns.join(",");
        s.push('\n');
        s.push_str("# units: ");
        s.push_str(&self.units.join(","));
        s.push('\n');
        for row in &self.rows {
            s.push_str(&row.iter().map(Cell::csv).collect::<Vec<_>>().join(","));
            s.push('\n');
        }
        for (name, v) in &self.notes {
            s.push_str(&format!("# {name},{}\n", v.csv()));
        }
        s
    }

    pub fn to_json(&self) -> String {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let mut m = Map::new();
                for (c, v) in self.columns.iter().zip(r) {
                    m.insert(c.to_string(), v.json());
                }
                Value::Object(m)
            })
            .collect();
        let mut units = Map::new();
        for (c, u) in self.columns.iter().zip(&self.units) {
            units.insert(c.to_string(), Value::from(*u));
        }
        let mut notes = Map::new();
        for (name, v) in &self.notes {
            notes.insert(name.to_string(), v.json());
        }
        let mut top = Map::new();
        top.insert("units".into(), Value::Object(units));
        top.insert("rows".into(), Value::Array(rows));
        top.insert("notes".into(), Value::Object(notes));
        let mut out = Vec::new();
        let mut ser = serde_json::Serializer::with_formatter(&mut out, CanonicalFormatter);
        serde::Serialize::serialize(&Value::Object(top), &mut ser).expect("table serialises");
        let mut s = String::from_utf8(out).expect("utf-8");
        s.push('\n');
        s
    }

    pub fn render(&self, format: OutputFormat) -> String {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => self.to_json(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_at_17_digits() {
        for x in [0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, 0.0] {
            let s = format_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.trim_start_matches('-').split('e').next().unwrap().replace('.', "");
            assert_eq!(mantissa.len(), 17, "{s}");
        }
    }

    #[test]
    fn csv_layout() {
        let mut t = Table::new(&[("a", "mu"), ("b", "1")]);
        t.push(vec![0.5.into(), Cell::Empty]);
        t.note("verdict", true);
        assert_eq!(
            t.to_csv(),
            "a,b\n# units: mu,1\n5.0000000000000000e-1,\n# verdict,true\n"
        );
        assert!(t.to_json().contains(r#""a":5.0000000000000000e-1"#));
    }
}
