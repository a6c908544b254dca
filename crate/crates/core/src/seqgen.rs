//! Test sequences with known limits, partial sums, and sequence files.
//!
//! Sequence files come in two formats:
//!
//! * `LINES`: UTF-8, one decimal literal (or `p/q` fraction) per line.
//!   Lines starting with `#` and blank lines are skipped. Labels start at 0.
//! * `CSV`: comma-separated records with an optional header row. The value
//!   column is chosen by header name or index (default: the last column).
//!   A label column, when present, must hold consecutive integers and
//!   supplies the start label.

use std::fs;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::scalar::{parse_exact, Scalar};
use crate::sequence::Sequence;

/// Sequence families.
#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    /// `S_n = 2^n sin(π / 2^n)`, converging linearly to π.
    ArchimedesPi,
    /// `S_n = Σ_{k=1}^{n} (-1)^{k-1} / k`, converging to ln 2.
    AltHarmonic,
    /// `S_n = Σ_{k=1}^{n} 1/k²`, converging logarithmically to π²/6.
    Zeta2,
    /// `S_n = Σ_{ν=0}^{n} z^ν`, with (anti)limit `1/(1-z)`.
    Geometric(BigRational),
    /// `S_n = Σ_{ν=0}^{n} z^ν / ν!`, converging to `e^z`.
    ExpSeries(BigRational),
    /// `S_n = Σ_{k=1}^{n} k^{-s}` for an integer `s ≥ 1`.
    Zeta(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub count: usize,
    pub start_label: i64,
}

impl GeneratorSpec {
    pub fn new(family: Family, count: usize, start_label: i64) -> Self {
        GeneratorSpec {
            family,
            count,
            start_label,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::Spec("count must be at least 1".into()));
        }
        match &self.family {
            Family::Geometric(z) if z.is_one() => {
                Err(Error::Spec("geometric ratio z = 1 has no limit".into()))
            }
            Family::Zeta(0) => Err(Error::Spec("zeta exponent must be at least 1".into())),
            Family::ArchimedesPi => Ok(()),
            _ if self.start_label < 0 => Err(Error::Spec(format!(
                "partial sums need non-negative labels, got start {}",
                self.start_label
            ))),
            _ => Ok(()),
        }
    }
}

/// A generated prefix together with its analytic limit, when that limit is
/// known and representable in the scalar mode.
#[derive(Debug, Clone)]
pub struct Generated<T: Scalar> {
    pub sequence: Sequence<T>,
    pub limit: Option<T>,
}

/// Generates `count` elements starting at `start_label`.
pub fn generate<T: Scalar>(spec: &GeneratorSpec, ctx: T::Context) -> Result<Generated<T>> {
    spec.validate()?;
    let last = spec.start_label + spec.count as i64 - 1;
    let from = spec.start_label;
    let int = |v: i64| T::from_i64(v, ctx);
    let (sequence, limit) = match &spec.family {
        Family::ArchimedesPi => {
            let pi = T::pi(ctx)?;
            let values = (from..=last)
                .map(|n| {
                    let scale = int(2).powi(n).expect("2^n is defined");
                    let angle = pi.clone() / scale.clone();
                    Ok(scale * angle.sin()?)
                })
                .collect::<Result<Vec<T>>>()?;
            (Sequence::new(from, values)?, Some(pi))
        }
        Family::AltHarmonic => {
            let seq = sums_over(from, last, 1, ctx, |k| {
                let sign = if k % 2 == 1 { 1 } else { -1 };
                int(sign) / int(k)
            })?;
            let limit = int(2).ln().ok();
            (seq, limit)
        }
        Family::Zeta2 => {
            let seq = sums_over(from, last, 1, ctx, |k| int(1) / int(k * k))?;
            (seq, zeta_limit::<T>(2, ctx))
        }
        Family::Zeta(s) => {
            let s = *s;
            let seq = sums_over(from, last, 1, ctx, |k| match k.checked_pow(s) {
                Some(p) => int(1) / int(p),
                None => T::from_rational(
                    &BigRational::new(BigInt::one(), BigInt::from(k).pow(s)),
                    ctx,
                ),
            })?;
            (seq, zeta_limit::<T>(s, ctx))
        }
        Family::Geometric(z) => {
            let zt = T::from_rational(z, ctx);
            let mut power = int(1);
            let seq = sums_over(from, last, 0, ctx, |_| {
                let term = power.clone();
                power = power.clone() * zt.clone();
                term
            })?;
            let limit = T::from_rational(&(BigRational::one() / (BigRational::one() - z)), ctx);
            (seq, Some(limit))
        }
        Family::ExpSeries(z) => {
            let zt = T::from_rational(z, ctx);
            let mut term = int(1);
            let seq = sums_over(from, last, 0, ctx, |nu| {
                if nu > 0 {
                    term = term.clone() * zt.clone() / int(nu);
                }
                term.clone()
            })?;
            let limit = if z.is_zero() {
                Some(int(1))
            } else {
                zt.exp().ok()
            };
            (seq, limit)
        }
    };
    Ok(Generated { sequence, limit })
}

/// Partial sums `Σ_{j=first}^{n} a_j` for `n = from ..= last`, accumulated
/// in increasing `j`.
fn sums_over<T: Scalar>(
    from: i64,
    last: i64,
    first: i64,
    ctx: T::Context,
    mut term: impl FnMut(i64) -> T,
) -> Result<Sequence<T>> {
    let mut acc = T::zero(ctx);
    let mut values = Vec::new();
    for j in first..=last {
        acc = acc + term(j);
        if j >= from {
            values.push(acc.clone());
        }
    }
    while (values.len() as i64) < last - from + 1 {
        // labels below `first` are empty sums
        values.insert(0, T::zero(ctx));
    }
    Sequence::new(from, values)
}

/// Running sums of `terms`, labelled from `start_label`.
pub fn partial_sums<T: Scalar>(start_label: i64, terms: &[T]) -> Result<Sequence<T>> {
    let first = terms
        .first()
        .ok_or(Error::EmptyInput("partial sums of an empty term list"))?;
    let mut acc = T::zero(first.context());
    let values = terms
        .iter()
        .map(|t| {
            acc = acc.clone() + t.clone();
            acc.clone()
        })
        .collect();
    Sequence::new(start_label, values)
}

/// `ζ(s)` for even `s` via `ζ(2m) = (-1)^{m+1} B_{2m} (2π)^{2m} / (2 (2m)!)`;
/// `None` for odd `s` or when π is not representable.
fn zeta_limit<T: Scalar>(s: u32, ctx: T::Context) -> Option<T> {
    if s % 2 == 1 || s == 0 {
        return None;
    }
    let pi = T::pi(ctx).ok()?;
    let b = bernoulli(s as usize);
    let fact: BigInt = (1..=s as u64).map(BigInt::from).product();
    let m = s / 2;
    let sign = if m % 2 == 1 {
        BigInt::one()
    } else {
        -BigInt::one()
    };
    let coeff = BigRational::from_integer(sign * BigInt::from(2).pow(s)) * b
        / BigRational::from_integer(BigInt::from(2) * fact);
    let pi_pow = pi.powi(s as i64)?;
    Some(T::from_rational(&coeff, ctx) * pi_pow)
}

/// Bernoulli number `B_n` (with `B_1 = -1/2`) by the Akiyama-Tanigawa
/// algorithm.
fn bernoulli(n: usize) -> BigRational {
    let mut a: Vec<BigRational> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        a.push(BigRational::new(BigInt::one(), BigInt::from(m + 1)));
        for j in (1..=m).rev() {
            let diff = &a[j - 1] - &a[j];
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * diff;
        }
    }
    let b = a[0].clone();
    if n == 1 {
        -b.abs()
    } else {
        b
    }
}

/// Column selector for CSV input.
#[derive(Debug, Clone, PartialEq)]
pub enum Column {
    Index(usize),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct CsvOptions {
    /// Defaults to the last column.
    pub value: Option<Column>,
    /// Defaults to the first column when a record has two or more fields
    /// and the value column is not the first one.
    pub label: Option<Column>,
    /// `None` detects a header from a non-numeric first record.
    pub has_header: Option<bool>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum InputFormat {
    Lines,
    Csv(CsvOptions),
}

/// Reads a sequence file; decimal literals are parsed exactly and then
/// converted to the requested mode.
pub fn ingest<T: Scalar>(
    path: &Path,
    format: &InputFormat,
    ctx: T::Context,
) -> Result<Sequence<T>> {
    let text = fs::read_to_string(path)?;
    parse_sequence(&text, format, ctx)
}

/// [`ingest`] on in-memory text.
pub fn parse_sequence<T: Scalar>(
    text: &str,
    format: &InputFormat,
    ctx: T::Context,
) -> Result<Sequence<T>> {
    let (start, values) = match format {
        InputFormat::Lines => (0, parse_lines(text)?),
        InputFormat::Csv(opts) => parse_csv(text, opts)?,
    };
    if values.is_empty() {
        return Err(Error::EmptyInput("the input holds no values"));
    }
    Sequence::new(
        start,
        values.iter().map(|q| T::from_rational(q, ctx)).collect(),
    )
}

fn parse_lines(text: &str) -> Result<Vec<BigRational>> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        out.push(parse_exact(line).map_err(|m| Error::parse(i + 1, m))?);
    }
    Ok(out)
}

fn parse_csv(text: &str, opts: &CsvOptions) -> Result<(i64, Vec<BigRational>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line() as usize);
            Error::parse(line, e.to_string())
        })?;
        let line = rec.position().map_or(0, |p| p.line() as usize);
        if rec.iter().all(str::is_empty) {
            continue;
        }
        records.push((line, rec));
    }
    let Some((_, first)) = records.first() else {
        return Err(Error::EmptyInput("the CSV input holds no records"));
    };
    let has_header = opts
        .has_header
        .unwrap_or_else(|| first.iter().any(|f| parse_exact(f).is_err()));
    let header: Option<Vec<String>> = has_header.then(|| first.iter().map(str::to_owned).collect());
    let width = first.len();
    let data = if has_header {
        &records[1..]
    } else {
        &records[..]
    };

    let resolve = |col: &Column| -> Result<usize> {
        match col {
            Column::Index(i) if *i < width => Ok(*i),
            Column::Index(i) => Err(Error::Spec(format!(
                "column {i} out of range (width {width})"
            ))),
            Column::Name(name) => header
                .as_ref()
                .and_then(|h| h.iter().position(|f| f == name))
                .ok_or_else(|| Error::Spec(format!("no column named {name:?}"))),
        }
    };
    let value_col = match &opts.value {
        Some(c) => resolve(c)?,
        None => width - 1,
    };
    let label_col = match &opts.label {
        Some(c) => Some(resolve(c)?),
        None if width >= 2 && value_col != 0 => Some(0),
        None => None,
    };

    let mut values = Vec::with_capacity(data.len());
    let mut start = 0i64;
    for (idx, (line, rec)) in data.iter().enumerate() {
        let field = |c: usize| {
            rec.get(c)
                .ok_or_else(|| Error::parse(*line, format!("missing column {c}")))
        };
        values.push(parse_exact(field(value_col)?).map_err(|m| Error::parse(*line, m))?);
        if let Some(lc) = label_col {
            let label: i64 = field(lc)?.parse().map_err(|_| {
                Error::parse(
                    *line,
                    format!("label {:?} is not an integer", field(lc).unwrap_or("")),
                )
            })?;
            if idx == 0 {
                start = label;
            } else if label != start + idx as i64 {
                return Err(Error::parse(
                    *line,
                    format!("label {label} breaks the consecutive run starting at {start}"),
                ));
            }
        }
    }
    Ok((start, values))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{BigFloat, Precision, Rational};

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn archimedes_first_element_and_limit() {
        let g = generate::<f64>(&GeneratorSpec::new(Family::ArchimedesPi, 3, 1), ()).unwrap();
        assert!((g.sequence.values()[0] - 2.0).abs() < 1e-15);
        assert!((g.sequence.values()[1] - 2.0 * 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(g.limit, Some(std::f64::consts::PI));
    }

    #[test]
    fn archimedes_is_unsupported_in_rational_mode() {
        let r = generate::<Rational>(&GeneratorSpec::new(Family::ArchimedesPi, 3, 1), ());
        assert!(matches!(r, Err(Error::ModeUnsupported(_))));
    }

    #[test]
    fn alt_harmonic_values() {
        let g = generate::<Rational>(&GeneratorSpec::new(Family::AltHarmonic, 4, 1), ()).unwrap();
        assert_eq!(g.sequence.get(2).unwrap(), &Rational::new(1, 2));
        assert_eq!(g.sequence.get(3).unwrap(), &Rational::new(5, 6));
        assert!(g.limit.is_none());
        let f = generate::<f64>(&GeneratorSpec::new(Family::AltHarmonic, 2, 1), ()).unwrap();
        assert_eq!(f.limit, Some(2f64.ln()));
    }

    #[test]
    fn zeta2_value_and_limit() {
        let g = generate::<Rational>(&GeneratorSpec::new(Family::Zeta2, 3, 1), ()).unwrap();
        assert_eq!(g.sequence.get(3).unwrap(), &Rational::new(49, 36));
        let f = generate::<f64>(&GeneratorSpec::new(Family::Zeta2, 3, 1), ()).unwrap();
        let pi = std::f64::consts::PI;
        assert!((f.limit.unwrap() - pi * pi / 6.0).abs() < 1e-15);
    }

    #[test]
    fn zeta_even_limits_from_bernoulli() {
        assert_eq!(bernoulli(2), q(1, 6));
        assert_eq!(bernoulli(4), q(-1, 30));
        assert_eq!(bernoulli(12), q(-691, 2730));
        let pi = std::f64::consts::PI;
        let z4 = zeta_limit::<f64>(4, ()).unwrap();
        assert!((z4 - pi.powi(4) / 90.0).abs() < 1e-14);
        assert!(zeta_limit::<f64>(3, ()).is_none());
    }

    #[test]
    fn zero_label_is_empty_sum() {
        let g = generate::<Rational>(&GeneratorSpec::new(Family::Zeta(3), 3, 0), ()).unwrap();
        assert_eq!(g.sequence.values()[0], Rational::integer(0));
        assert_eq!(g.sequence.values()[2], Rational::new(9, 8));
    }

    #[test]
    fn geometric_and_exp_series() {
        let g = generate::<Rational>(&GeneratorSpec::new(Family::Geometric(q(1, 2)), 3, 0), ())
            .unwrap();
        assert_eq!(
            g.sequence.values(),
            &[
                Rational::integer(1),
                Rational::new(3, 2),
                Rational::new(7, 4)
            ]
        );
        assert_eq!(g.limit, Some(Rational::integer(2)));
        let e =
            generate::<f64>(&GeneratorSpec::new(Family::ExpSeries(q(1, 1)), 20, 0), ()).unwrap();
        assert!((e.sequence.values()[19] - std::f64::consts::E).abs() < 1e-15);
        assert_eq!(e.limit, Some(std::f64::consts::E));
    }

    #[test]
    fn bigfloat_generation() {
        let p = Precision::new(128).unwrap();
        let g = generate::<BigFloat>(&GeneratorSpec::new(Family::ArchimedesPi, 2, 1), p).unwrap();
        let err = (g.sequence.values()[0].clone() - BigFloat::from_i64(2, p)).abs();
        assert!(err.to_f64() < 1e-36);
    }

    #[test]
    fn invalid_specs() {
        let bad = [
            GeneratorSpec::new(Family::Zeta2, 0, 1),
            GeneratorSpec::new(Family::Geometric(q(1, 1)), 3, 0),
            GeneratorSpec::new(Family::Zeta(0), 3, 1),
            GeneratorSpec::new(Family::AltHarmonic, 3, -1),
        ];
        for spec in bad {
            assert!(
                matches!(generate::<f64>(&spec, ()), Err(Error::Spec(_))),
                "{spec:?}"
            );
        }
    }

    #[test]
    fn partial_sums_examples() {
        let ones = vec![Rational::integer(1); 3];
        assert_eq!(
            partial_sums(0, &ones).unwrap().values(),
            &[
                Rational::integer(1),
                Rational::integer(2),
                Rational::integer(3)
            ]
        );
        let terms = [
            Rational::integer(1),
            Rational::new(-1, 2),
            Rational::new(1, 3),
        ];
        let s = partial_sums(1, &terms).unwrap();
        assert_eq!(
            s.values(),
            &[
                Rational::integer(1),
                Rational::new(1, 2),
                Rational::new(5, 6)
            ]
        );
        assert!(matches!(
            partial_sums::<Rational>(0, &[]),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn alt_harmonic_equals_partial_sums_of_terms() {
        let g = generate::<Rational>(&GeneratorSpec::new(Family::AltHarmonic, 12, 1), ()).unwrap();
        let terms: Vec<Rational> = (1..=12)
            .map(|k| Rational::new(if k % 2 == 1 { 1 } else { -1 }, k))
            .collect();
        assert_eq!(g.sequence, partial_sums(1, &terms).unwrap());
    }

    #[test]
    fn lines_format() {
        let s: Sequence<f64> = parse_sequence("1.0\n0.5\n", &InputFormat::Lines, ()).unwrap();
        assert_eq!(s.start_label(), 0);
        assert_eq!(s.values(), &[1.0, 0.5]);
        let s: Sequence<Rational> =
            parse_sequence("# comment\n0.1\n\n1/3\n", &InputFormat::Lines, ()).unwrap();
        assert_eq!(s.values(), &[Rational::new(1, 10), Rational::new(1, 3)]);
    }

    #[test]
    fn lines_format_errors_name_the_line() {
        let err = parse_sequence::<f64>("1.0\nfoo\n", &InputFormat::Lines, ()).unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_sequence::<f64>("# nothing\n", &InputFormat::Lines, ()),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn csv_with_label_header() {
        let fmt = InputFormat::Csv(CsvOptions::default());
        let s: Sequence<Rational> = parse_sequence("n,S\n1,2.0\n2,2.82843\n", &fmt, ()).unwrap();
        assert_eq!(s.start_label(), 1);
        assert_eq!(s.values()[1], Rational::new(282843, 100000));
    }

    #[test]
    fn csv_column_selection() {
        let text = "n,a,b\n3,1,10\n4,2,20\n5,3,30\n";
        let fmt = InputFormat::Csv(CsvOptions {
            value: Some(Column::Name("a".into())),
            ..Default::default()
        });
        let s: Sequence<f64> = parse_sequence(text, &fmt, ()).unwrap();
        assert_eq!((s.start_label(), s.values()), (3, &[1.0, 2.0, 3.0][..]));
        let fmt = InputFormat::Csv(CsvOptions {
            value: Some(Column::Index(2)),
            ..Default::default()
        });
        let s: Sequence<f64> = parse_sequence(text, &fmt, ()).unwrap();
        assert_eq!(s.values(), &[10.0, 20.0, 30.0]);
        let fmt = InputFormat::Csv(CsvOptions {
            value: Some(Column::Name("zzz".into())),
            ..Default::default()
        });
        assert!(matches!(
            parse_sequence::<f64>(text, &fmt, ()),
            Err(Error::Spec(_))
        ));
    }

    #[test]
    fn csv_without_header_or_labels() {
        let fmt = InputFormat::Csv(CsvOptions::default());
        let s: Sequence<f64> = parse_sequence("0.5\n0.25\n", &fmt, ()).unwrap();
        assert_eq!((s.start_label(), s.len()), (0, 2));
    }

    #[test]
    fn csv_errors() {
        let fmt = InputFormat::Csv(CsvOptions::default());
        match parse_sequence::<f64>("n,S\n1,2.0\n2,x\n", &fmt, ()).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        match parse_sequence::<f64>("n,S\n1,2.0\n3,2.5\n", &fmt, ()).unwrap_err() {
            Error::Parse { line, .. } => assert_eq!(line, 3),
            e => panic!("unexpected {e:?}"),
        }
        assert!(matches!(
            parse_sequence::<f64>("n,S\n", &fmt, ()),
            Err(Error::EmptyInput(_))
        ));
    }

    #[test]
    fn ingest_reads_files() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("seq.txt");
        fs::write(&path, "1.0\n0.5\n").unwrap();
        let s: Sequence<f64> = ingest(&path, &InputFormat::Lines, ()).unwrap();
        assert_eq!(s.values(), &[1.0, 0.5]);
        assert!(matches!(
            ingest::<f64>(&dir.path().join("missing"), &InputFormat::Lines, ()),
            Err(Error::Io(_))
        ));
    }
}
