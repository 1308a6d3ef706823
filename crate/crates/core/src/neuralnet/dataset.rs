use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::neuralnet::network::INPUTS;
use crate::rng::{RandomSource, RunRng};

pub const COLUMNS: [&str; INPUTS + 1] = [
    "theta1", "theta2", "theta3", "theta4", "theta5", "theta6", "theta7", "theta8", "distance",
];

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KinRow {
    pub theta: [f64; INPUTS],
    pub y: f64,
}

/// Min-max range of one column, mapped onto [-1, 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColumnRange {
    pub min: f64,
    pub max: f64,
}

impl ColumnRange {
    fn of(values: impl Iterator<Item = f64>) -> Self {
        values.fold(
            Self {
                min: f64::INFINITY,
                max: f64::NEG_INFINITY,
            },
            |r, v| Self {
                min: r.min.min(v),
                max: r.max.max(v),
            },
        )
    }

    /// Constant columns map to 0.
    pub fn normalize(&self, v: f64) -> f64 {
        if self.max > self.min {
            (2.0 * (v - self.min) / (self.max - self.min) - 1.0).clamp(-1.0, 1.0)
        } else {
            0.0
        }
    }

    pub fn denormalize(&self, v: f64) -> f64 {
        if self.max > self.min {
            self.min + (v + 1.0) * (self.max - self.min) / 2.0
        } else {
            self.min
        }
    }
}

/// Kinematics samples with their normalized copy. Normalization ranges are
/// computed over every row.
#[derive(Debug, Clone, PartialEq)]
pub struct KinDataset {
    raw: Vec<KinRow>,
    inputs: Vec<[f64; INPUTS]>,
    targets: Vec<f64>,
    ranges: [ColumnRange; INPUTS + 1],
}

impl KinDataset {
    pub fn from_rows(raw: Vec<KinRow>) -> Result<Self> {
        if raw.is_empty() {
            return Err(Error::Config("dataset has no rows".into()));
        }
        if let Some(i) = raw
            .iter()
            .position(|r| !r.y.is_finite() || r.theta.iter().any(|t| !t.is_finite()))
        {
            return Err(Error::Config(format!("row {i} has a non-finite value")));
        }
        let ranges: [ColumnRange; INPUTS + 1] = std::array::from_fn(|c| {
            if c < INPUTS {
                ColumnRange::of(raw.iter().map(|r| r.theta[c]))
            } else {
                ColumnRange::of(raw.iter().map(|r| r.y))
            }
        });
        let inputs = raw
            .iter()
            .map(|r| std::array::from_fn(|j| ranges[j].normalize(r.theta[j])))
            .collect();
        let targets = raw.iter().map(|r| ranges[INPUTS].normalize(r.y)).collect();
        Ok(Self {
            raw,
            inputs,
            targets,
            ranges,
        })
    }

    pub fn len(&self) -> usize {
        self.raw.len()
    }

    pub fn is_empty(&self) -> bool {
        self.raw.is_empty()
    }

    pub fn raw_rows(&self) -> &[KinRow] {
        &self.raw
    }

    pub fn inputs(&self) -> &[[f64; INPUTS]] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn ranges(&self) -> &[ColumnRange; INPUTS + 1] {
        &self.ranges
    }

    /// Writes the raw rows with the `theta1..theta8,distance` header.
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(COLUMNS)?;
        for row in &self.raw {
            let fields = row
                .theta
                .iter()
                .chain(std::iter::once(&row.y))
                .map(|v| v.to_string());
            w.write_record(fields)?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        self.write_csv(std::io::BufWriter::new(file))
    }
}

/// Reads a dataset CSV; errors carry the 1-based line number.
pub fn load_dataset(path: impl AsRef<Path>) -> Result<KinDataset> {
    let path = path.as_ref();
    let file = std::fs::File::open(path)?;
    read_dataset(file, path)
}

pub fn read_dataset<R: Read>(input: R, path: &Path) -> Result<KinDataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(input);
    let ingestion = |line: u64, message: String| Error::Ingestion {
        path: PathBuf::from(path),
        line,
        message,
    };

    let mut rows = Vec::new();
    let mut record = csv::StringRecord::new();
    let mut first = true;
    loop {
        let more = reader
            .read_record(&mut record)
            .map_err(|e| ingestion(e.position().map_or(0, |p| p.line()), e.to_string()))?;
        if !more {
            break;
        }
        let line = record.position().map_or(0, |p| p.line());
        if record.len() == 1 && record[0].is_empty() {
            continue;
        }
        if record.len() != COLUMNS.len() {
            return Err(Error::Schema {
                path: PathBuf::from(path),
                line,
                expected: COLUMNS.len(),
                found: record.len(),
            });
        }
        if first {
            first = false;
            if record.iter().eq(COLUMNS) {
                continue;
            }
            return Err(ingestion(
                line,
                format!("expected header `{}`", COLUMNS.join(",")),
            ));
        }
        let mut values = [0.0; INPUTS + 1];
        for (c, field) in record.iter().enumerate() {
            values[c] = field
                .parse::<f64>()
                .ok()
                .filter(|v| v.is_finite())
                .ok_or_else(|| ingestion(line, format!("column `{}`: bad value `{field}`", COLUMNS[c])))?;
        }
        rows.push(KinRow {
            theta: std::array::from_fn(|j| values[j]),
            y: values[INPUTS],
        });
    }
    if rows.is_empty() {
        return Err(ingestion(1, "no data rows".into()));
    }
    KinDataset::from_rows(rows)
}

/// Train, validation and test row indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DataSplit {
    pub train: Vec<usize>,
    pub validation: Vec<usize>,
    pub test: Vec<usize>,
}

/// Seeded shuffle of `0..n` cut into three contiguous parts whose sizes
/// differ by at most one.
pub fn split_three_ways(n: usize, seed: u64) -> Result<DataSplit> {
    if n < 3 {
        return Err(Error::Config(format!("need at least 3 rows to split, got {n}")));
    }
    let mut rng = RunRng::seed_from(seed);
    let mut order: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i + 1);
        order.swap(i, j);
    }
    let a = n.div_ceil(3);
    let b = a + (n - a).div_ceil(2);
    Ok(DataSplit {
        train: order[..a].to_vec(),
        validation: order[a..b].to_vec(),
        test: order[b..].to_vec(),
    })
}
