//! CSV and JSON forms of Stirling tables.
//!
//! CSV has the header `n,k,value`. Symbolic values are `c0;c1;…`; evaluated
//! values are a single rational. JSON mirrors [`StirlingTable`] directly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::rational::{format_rational, parse_rational, Exact, Rational};
use crate::stirling::{Kind, StirlingTable};

pub const CSV_HEADER: [&str; 3] = ["n", "k", "value"];

fn csv_error(e: csv::Error) -> Error {
    Error::Parse {
        what: "csv",
        input: e.to_string(),
    }
}

fn write_csv<I>(rows: I) -> String
where
    I: IntoIterator<Item = (usize, usize, String)>,
{
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    w.write_record(CSV_HEADER).expect("in-memory write");
    for (n, k, v) in rows {
        w.write_record([n.to_string(), k.to_string(), v])
            .expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("ascii output")
}

fn read_csv(text: &str) -> Result<Vec<(usize, usize, String)>> {
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header = rdr.headers().map_err(csv_error)?;
    if header.iter().ne(CSV_HEADER) {
        return Err(Error::Parse {
            what: "csv header",
            input: header.iter().collect::<Vec<_>>().join(","),
        });
    }
    let index = |s: &str| {
        s.parse::<usize>().map_err(|_| Error::Parse {
            what: "index",
            input: s.to_string(),
        })
    };
    rdr.records()
        .map(|rec| {
            let rec = rec.map_err(csv_error)?;
            Ok((index(&rec[0])?, index(&rec[1])?, rec[2].to_string()))
        })
        .collect()
}

pub fn table_to_csv(table: &StirlingTable) -> String {
    write_csv(table.rows().iter().enumerate().flat_map(|(n, row)| {
        row.iter()
            .enumerate()
            .map(move |(k, p)| (n, k, p.to_field()))
    }))
}

/// Rebuilds a table from its CSV export. CSV does not carry kind or r, so the
/// caller supplies them; every `(n,k)` cell of the triangle must be present
/// exactly once and in order.
pub fn table_from_csv(kind: Kind, r: usize, text: &str) -> Result<StirlingTable> {
    if r == 0 {
        return Err(Error::ZeroR);
    }
    let mut rows: Vec<Vec<Poly>> = Vec::new();
    for (n, k, v) in read_csv(text)? {
        if k == 0 {
            if n != rows.len() {
                return Err(Error::MalformedTable(format!("unexpected row {n}")));
            }
            rows.push(Vec::new());
        }
        if n + 1 != rows.len() || k != rows[n].len() {
            return Err(Error::MalformedTable(format!(
                "cell ({n},{k}) out of order"
            )));
        }
        let row = &mut rows[n];
        row.push(Poly::from_field(&v)?);
    }
    StirlingTable::from_rows(kind, r, rows)
}

pub fn table_to_csv_evaluated(table: &StirlingTable, lambda: &Rational) -> String {
    write_csv(table.rows().iter().enumerate().flat_map(|(n, row)| {
        row.iter()
            .enumerate()
            .map(move |(k, p)| (n, k, format_rational(&p.eval(lambda))))
    }))
}

pub fn evaluated_from_csv(text: &str) -> Result<Vec<(usize, usize, Rational)>> {
    read_csv(text)?
        .into_iter()
        .map(|(n, k, v)| Ok((n, k, parse_rational(&v)?)))
        .collect()
}

/// JSON form of a table with λ substituted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluatedTable {
    pub kind: Kind,
    pub r: usize,
    pub nmax: usize,
    pub lambda: Exact,
    pub entries: Vec<Vec<Exact>>,
}

impl EvaluatedTable {
    pub fn new(table: &StirlingTable, lambda: &Rational) -> Self {
        EvaluatedTable {
            kind: table.kind(),
            r: table.r(),
            nmax: table.nmax(),
            lambda: Exact(lambda.clone()),
            entries: table
                .eval_lambda(lambda)
                .into_iter()
                .map(|row| row.into_iter().map(Exact).collect())
                .collect(),
        }
    }
}
