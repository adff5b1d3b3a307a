//! CSV readers producing [`TimeSeries`]: Google Trends exports, generic two-column
//! files and timestamped transaction logs rolled up to calendar months.

use std::collections::BTreeMap;

use chrono::{DateTime, Datelike, NaiveDate, NaiveDateTime};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::series::{compare_periods, TimeSeries};

pub const TRENDS_UNIT: &str = "trend-index";

/// How a Google Trends `<1` cell is turned into a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LessThanOnePolicy {
    /// Midpoint of the censored interval, 0.5.
    #[default]
    AsHalf,
    AsZero,
    AsOne,
}

impl LessThanOnePolicy {
    pub fn value(&self) -> f64 {
        match self {
            LessThanOnePolicy::AsHalf => 0.5,
            LessThanOnePolicy::AsZero => 0.0,
            LessThanOnePolicy::AsOne => 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ColumnSelector {
    Index(usize),
    Name(String),
}

impl ColumnSelector {
    /// A bare non-negative integer selects by index, anything else by header name.
    pub fn parse(text: &str) -> Self {
        match text.trim().parse::<usize>() {
            Ok(i) => ColumnSelector::Index(i),
            Err(_) => ColumnSelector::Name(text.trim().to_string()),
        }
    }

    fn resolve(&self, headers: &csv::StringRecord) -> Result<usize> {
        match self {
            ColumnSelector::Index(i) if *i < headers.len() => Ok(*i),
            ColumnSelector::Index(i) => Err(Error::Format {
                line: 1,
                message: format!("column index {i} out of range ({} columns)", headers.len()),
            }),
            ColumnSelector::Name(name) => headers
                .iter()
                .position(|h| h.trim() == name)
                .ok_or_else(|| Error::Format {
                    line: 1,
                    message: format!("no column named {name:?} in header"),
                }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Granularity {
    #[default]
    Monthly,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IngestOptions {
    pub less_than_one_policy: LessThanOnePolicy,
    pub date_column: ColumnSelector,
    pub value_column: ColumnSelector,
    pub aggregation_granularity: Granularity,
}

impl Default for IngestOptions {
    fn default() -> Self {
        Self {
            less_than_one_policy: LessThanOnePolicy::AsHalf,
            date_column: ColumnSelector::Index(0),
            value_column: ColumnSelector::Index(1),
            aggregation_granularity: Granularity::Monthly,
        }
    }
}

fn parse_demand(cell: &str, policy: LessThanOnePolicy, line: usize, row: usize) -> Result<f64> {
    let cell = cell.trim();
    if cell == "<1" {
        return Ok(policy.value());
    }
    match cell.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 => Ok(v),
        Ok(v) => Err(Error::Format {
            line,
            message: format!("row {row}: demand {v} is negative or not finite"),
        }),
        Err(_) => Err(Error::Format {
            line,
            message: format!("row {row}: cannot parse value {cell:?}"),
        }),
    }
}

fn csv_reader(text: &str) -> csv::Reader<&[u8]> {
    csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes())
}

fn csv_error(err: csv::Error, line_offset: usize) -> Error {
    let line = err
        .position()
        .map_or(0, |p| p.line() as usize + line_offset);
    Error::Format {
        line,
        message: err.to_string(),
    }
}

/// Collects `(line, period, demand)` rows into a validated series.
fn build_series(rows: Vec<(usize, String, f64)>, unit: &str) -> Result<TimeSeries> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("no data rows".into()));
    }
    for w in rows.windows(2) {
        let (line, period, _) = &w[1];
        if compare_periods(&w[0].1, period) != std::cmp::Ordering::Less {
            return Err(Error::Validation {
                line: *line,
                message: format!(
                    "period {period:?} is duplicate or out of order after {:?}",
                    w[0].1
                ),
            });
        }
    }
    let (periods, demands) = rows.into_iter().map(|(_, p, d)| (p, d)).unzip();
    TimeSeries::new(periods, demands, unit)
}

fn is_trends_header(line: &str) -> bool {
    let first = line.split(',').next().unwrap_or("").trim();
    ["month", "week", "day"]
        .iter()
        .any(|k| first.eq_ignore_ascii_case(k))
}

/// Parses a Google Trends "interest over time" export.
///
/// Leading blank lines and a `Category:` line are skipped; the next line must be the
/// `Month,<term>: (<region>)` header. The header's term becomes the series name.
pub fn parse_google_trends_csv(text: &str, opts: &IngestOptions) -> Result<TimeSeries> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut offset = 0usize;
    let mut header_line = None;
    for (i, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.trim_end_matches(['\r', '\n']);
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with("Category:") {
            offset += raw.len();
            continue;
        }
        if is_trends_header(trimmed) {
            header_line = Some(i + 1);
            break;
        }
        return Err(Error::Format {
            line: i + 1,
            message: format!("expected a header row starting with \"Month,\", found {line:?}"),
        });
    }
    let Some(header_line) = header_line else {
        return Err(Error::Format {
            line: text.lines().count() + 1,
            message: "missing header row (\"Month,<term>\"); no data rows".into(),
        });
    };

    let body = &text[offset..];
    let mut reader = csv_reader(body);
    let line_offset = header_line - 1;
    let headers = reader.headers().map_err(|e| csv_error(e, line_offset))?.clone();
    if headers.len() < 2 {
        return Err(Error::Format {
            line: header_line,
            message: "header row has no value column".into(),
        });
    }
    let name = headers[1].trim().to_string();

    let mut rows = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(e, line_offset))?;
        let line = record
            .position()
            .map_or(header_line + row_idx + 1, |p| p.line() as usize + line_offset);
        if record.len() < 2 {
            return Err(Error::Format {
                line,
                message: format!("row {}: expected 2 fields, found {}", row_idx + 1, record.len()),
            });
        }
        let value = parse_demand(&record[1], opts.less_than_one_policy, line, row_idx + 1)?;
        rows.push((line, record[0].trim().to_string(), value));
    }
    let series = build_series(rows, TRENDS_UNIT)?;
    Ok(if name.is_empty() {
        series
    } else {
        series.with_name(name)
    })
}

/// Parses a headed CSV, taking the period and demand columns named by `opts`.
pub fn parse_generic_csv(text: &str, opts: &IngestOptions) -> Result<TimeSeries> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv_reader(text);
    let headers = match reader.headers() {
        Ok(h) if !h.is_empty() && !(h.len() == 1 && h[0].is_empty()) => h.clone(),
        Ok(_) => return Err(Error::EmptyInput("no header row and no data rows".into())),
        Err(e) => return Err(csv_error(e, 0)),
    };
    let period_col = opts.date_column.resolve(&headers)?;
    let value_col = opts.value_column.resolve(&headers)?;
    let unit = headers[value_col].trim().to_string();

    let mut rows = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = record.position().map_or(row_idx + 2, |p| p.line() as usize);
        let (Some(period), Some(cell)) = (record.get(period_col), record.get(value_col)) else {
            return Err(Error::Format {
                line,
                message: format!("row {}: missing column", row_idx + 1),
            });
        };
        let value = parse_demand(cell, opts.less_than_one_policy, line, row_idx + 1)?;
        rows.push((line, period.trim().to_string(), value));
    }
    build_series(rows, &unit)
}

/// Calendar `(year, month)` of an ISO-8601 date or date-time.
pub fn parse_timestamp(text: &str) -> Option<(i32, u32)> {
    let text = text.trim();
    if let Ok(d) = NaiveDate::parse_from_str(text, "%Y-%m-%d") {
        return Some((d.year(), d.month()));
    }
    for fmt in ["%Y-%m-%dT%H:%M:%S%.f", "%Y-%m-%d %H:%M:%S%.f", "%Y-%m-%dT%H:%M"] {
        if let Ok(dt) = NaiveDateTime::parse_from_str(text, fmt) {
            return Some((dt.year(), dt.month()));
        }
    }
    DateTime::parse_from_rfc3339(text)
        .ok()
        .map(|dt| (dt.year(), dt.month()))
}

fn month_key(year: i32, month: u32) -> i64 {
    year as i64 * 12 + month as i64 - 1
}

fn aggregate_lines<S: AsRef<str>>(rows: &[(usize, S, u64)]) -> Result<TimeSeries> {
    let mut totals: BTreeMap<i64, u64> = BTreeMap::new();
    for (line, ts, count) in rows {
        let (year, month) = parse_timestamp(ts.as_ref()).ok_or_else(|| Error::Format {
            line: *line,
            message: format!("cannot parse timestamp {:?}", ts.as_ref()),
        })?;
        *totals.entry(month_key(year, month)).or_insert(0) += count;
    }
    let (Some(&first), Some(&last)) = (totals.keys().next(), totals.keys().next_back()) else {
        return Err(Error::EmptyInput("no data rows".into()));
    };
    let (periods, demands) = (first..=last)
        .map(|k| {
            let label = format!("{:04}-{:02}", k.div_euclid(12), k.rem_euclid(12) + 1);
            (label, totals.get(&k).copied().unwrap_or(0) as f64)
        })
        .unzip();
    TimeSeries::new(periods, demands, "count/month")
}

/// Sums `(timestamp, count)` rows per calendar month. Months without rows between the
/// first and last observed month are emitted with zero demand.
///
/// Errors name the 1-based position of the offending row.
pub fn aggregate_transactions<S: AsRef<str>>(
    rows: &[(S, u64)],
    granularity: Granularity,
) -> Result<TimeSeries> {
    match granularity {
        Granularity::Monthly => {
            let numbered: Vec<(usize, &str, u64)> = rows
                .iter()
                .enumerate()
                .map(|(i, (ts, c))| (i + 1, ts.as_ref(), *c))
                .collect();
            aggregate_lines(&numbered)
        }
    }
}

/// Reads a headed `(timestamp, count)` log and aggregates it per [`aggregate_transactions`].
pub fn parse_transaction_csv(text: &str, opts: &IngestOptions) -> Result<TimeSeries> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut reader = csv_reader(text);
    let headers = reader.headers().map_err(|e| csv_error(e, 0))?.clone();
    let ts_col = opts.date_column.resolve(&headers)?;
    let count_col = opts.value_column.resolve(&headers)?;
    let mut rows = Vec::new();
    for (row_idx, record) in reader.records().enumerate() {
        let record = record.map_err(|e| csv_error(e, 0))?;
        let line = record.position().map_or(row_idx + 2, |p| p.line() as usize);
        let (Some(ts), Some(cell)) = (record.get(ts_col), record.get(count_col)) else {
            return Err(Error::Format {
                line,
                message: format!("row {}: missing column", row_idx + 1),
            });
        };
        let count = cell.trim().parse::<u64>().map_err(|_| Error::Format {
            line,
            message: format!("row {}: count {cell:?} is not a non-negative integer", row_idx + 1),
        })?;
        rows.push((line, ts.to_string(), count));
    }
    match opts.aggregation_granularity {
        Granularity::Monthly => aggregate_lines(&rows),
    }
}

/// Writes `period,demand` CSV readable by [`parse_generic_csv`] with default options.
pub fn write_generic_csv(series: &TimeSeries) -> String {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer
        .write_record(["period", "demand"])
        .expect("in-memory write");
    for (p, d) in series.periods().iter().zip(series.demands()) {
        writer
            .write_record([p.as_str(), &d.to_string()])
            .expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("utf-8 input")
}
