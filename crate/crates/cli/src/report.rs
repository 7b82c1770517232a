//! Report model shared by all subcommands, rendered either as tab-separated
//! tables or as a JSON document.

use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Printed to 15 significant digits.
    Num(f64),
    /// Relative drift or residual, short scientific notation.
    Sci(f64),
    Int(u64),
    Text(String),
    Bool(bool),
    Null,
}

impl Cell {
    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    fn render(&self) -> String {
        match self {
            Cell::Num(x) => fmt_num(*x),
            Cell::Sci(x) => fmt_sci(*x),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Null => "-".into(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Num(x) => json_num(round_sig(*x, 15)),
            Cell::Sci(x) => json_num(round_sig(*x, 6)),
            Cell::Int(n) => Value::from(*n),
            Cell::Text(s) => Value::from(s.as_str()),
            Cell::Bool(b) => Value::from(*b),
            Cell::Null => Value::Null,
        }
    }
}

fn normalize_zero(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

/// 15 significant digits in scientific notation; `-0` prints as `0`.
pub fn fmt_num(x: f64) -> String {
    format!("{:.14e}", normalize_zero(x))
}

pub fn fmt_sci(x: f64) -> String {
    format!("{:.6e}", normalize_zero(x))
}

fn round_sig(x: f64, digits: usize) -> f64 {
    if !x.is_finite() {
        return x;
    }
    format!("{:.*e}", digits - 1, normalize_zero(x))
        .parse()
        .unwrap_or(x)
}

fn json_num(x: f64) -> Value {
    Number::from_f64(x)
        .map(Value::Number)
        .unwrap_or(Value::Null)
}

#[derive(Debug, Clone)]
pub struct Section {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Section {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Section {
            name: name.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub meta: Vec<(String, Cell)>,
    pub sections: Vec<Section>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Structured,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.into(),
            meta: Vec::new(),
            sections: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: Cell) {
        self.meta.push((key.into(), value));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Table => self.render_table(),
            Format::Structured => self.render_json(),
        }
    }

    fn render_table(&self) -> String {
        let mut out = format!("# command: {}\n", self.command);
        for (k, v) in &self.meta {
            out.push_str(&format!("# {k}: {}\n", v.render()));
        }
        for s in &self.sections {
            out.push_str(&format!("\n## {}\n{}\n", s.name, s.columns.join("\t")));
            for row in &s.rows {
                let cells: Vec<String> = row.iter().map(Cell::render).collect();
                out.push_str(&cells.join("\t"));
                out.push('\n');
            }
        }
        out
    }

    fn render_json(&self) -> String {
        let mut root = Map::new();
        root.insert("command".into(), Value::from(self.command.as_str()));
        for (k, v) in &self.meta {
            root.insert(k.clone(), v.to_json());
        }
        for s in &self.sections {
            let rows = s
                .rows
                .iter()
                .map(|row| {
                    let obj: Map<String, Value> = s
                        .columns
                        .iter()
                        .cloned()
                        .zip(row.iter().map(Cell::to_json))
                        .collect();
                    Value::Object(obj)
                })
                .collect();
            root.insert(s.name.clone(), Value::Array(rows));
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(root)).expect("serializable");
        text.push('\n');
        text
    }
}
