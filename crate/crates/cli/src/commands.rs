use std::fmt;
use std::path::Path;

use lbq_core::analysis::{error_table, estimate_rho};
use lbq_core::epsilon::epsilon_transform;
use lbq_core::oracle::{check_bilinear, molecule_solution, t_determinant};
use lbq_core::scalar::{format_fixed, parse_exact};
use lbq_core::seqgen::{generate, ingest, Column, CsvOptions, Family, GeneratorSpec, InputFormat};
use lbq_core::{
    lbq_transform, BigFloat, BreakdownGuard, Error, Precision, Rational, Scalar, Sequence,
    TransformEntry, TransformTable,
};
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::args::{
    Algorithm, ClassifyArgs, Command, CompareArgs, FamilyArg, GenerateArgs, GeneratorOpts,
    InputFormatArg, ModeArg, ModeOpts, OutputFormat, SourceOpts, TransformArgs, VerifyArgs,
};
use crate::render::{emit, entry_cell, scientific, Grid};

#[derive(Debug)]
pub enum CliError {
    /// Inconsistent or missing flags.
    Usage(String),
    Core(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => f.write_str(m),
            CliError::Core(e) => e.fmt(f),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Spec(m) => CliError::Usage(m),
            e => CliError::Core(e),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(Error::Io(e))
    }
}

type CliResult<T> = Result<T, CliError>;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// Runs one command; `Ok(false)` means a check reported FAIL.
pub fn run(command: Command) -> CliResult<bool> {
    macro_rules! dispatch {
        ($f:ident, $args:expr) => {{
            let args = $args;
            match args.mode.mode {
                ModeArg::Float64 => $f::<f64>(&args, ()),
                ModeArg::Rational => $f::<Rational>(&args, ()),
                ModeArg::Bigfloat => $f::<BigFloat>(&args, precision(&args.mode)?),
            }
        }};
    }
    match command {
        Command::Generate(a) => dispatch!(generate_cmd, a).map(|_| true),
        Command::Transform(a) => dispatch!(transform_cmd, a).map(|_| true),
        Command::Compare(a) => dispatch!(compare_cmd, a).map(|_| true),
        Command::Classify(a) => dispatch!(classify_cmd, a).map(|_| true),
        Command::Verify(a) => dispatch!(verify_cmd, a),
    }
}

fn precision(mode: &ModeOpts) -> CliResult<Precision> {
    Ok(Precision::new(mode.precision_bits as usize)?)
}

fn parse_value(flag: &str, text: &str) -> CliResult<BigRational> {
    parse_exact(text).map_err(|m| usage(format!("--{flag}: {m}")))
}

fn family(g: &GeneratorOpts) -> CliResult<Option<Family>> {
    let need_z = || {
        g.z.as_deref()
            .ok_or_else(|| usage("this family needs --z"))
            .and_then(|z| parse_value("z", z))
    };
    Ok(Some(match g.family {
        None => return Ok(None),
        Some(FamilyArg::Archimedes) => Family::ArchimedesPi,
        Some(FamilyArg::AltHarmonic) => Family::AltHarmonic,
        Some(FamilyArg::Zeta2) => Family::Zeta2,
        Some(FamilyArg::Geometric) => Family::Geometric(need_z()?),
        Some(FamilyArg::Exp) => Family::ExpSeries(need_z()?),
        Some(FamilyArg::Zeta) => Family::Zeta(g.s.ok_or_else(|| usage("--family zeta needs --s"))?),
    }))
}

fn generator_spec(g: &GeneratorOpts) -> CliResult<Option<GeneratorSpec>> {
    Ok(family(g)?.map(|f| GeneratorSpec::new(f, g.count as usize, g.start)))
}

fn column(text: &str) -> Column {
    match text.parse() {
        Ok(i) => Column::Index(i),
        Err(_) => Column::Name(text.to_owned()),
    }
}

fn input_format(format: InputFormatArg, value: Option<&str>, label: Option<&str>) -> InputFormat {
    match format {
        InputFormatArg::Lines => InputFormat::Lines,
        InputFormatArg::Csv => InputFormat::Csv(CsvOptions {
            value: value.map(column),
            label: label.map(column),
            has_header: None,
        }),
    }
}

struct Loaded<T: Scalar> {
    seq: Sequence<T>,
    limit: Option<T>,
}

fn load<T: Scalar>(src: &SourceOpts, ctx: T::Context) -> CliResult<Loaded<T>> {
    let (seq, known) = match (&src.input, generator_spec(&src.generator)?) {
        (Some(path), _) => {
            let format = input_format(
                src.format,
                src.column.as_deref(),
                src.label_column.as_deref(),
            );
            (ingest::<T>(path, &format, ctx)?, None)
        }
        (None, Some(spec)) => {
            let g = generate::<T>(&spec, ctx)?;
            (g.sequence, g.limit)
        }
        (None, None) => return Err(usage("give either --family or --input")),
    };
    let limit = match &src.limit {
        Some(text) => Some(T::from_rational(&parse_value("limit", text)?, ctx)),
        None => known,
    };
    Ok(Loaded { seq, limit })
}

fn guard(threshold: f64) -> CliResult<BreakdownGuard> {
    Ok(BreakdownGuard::new(threshold)?)
}

/// Table of `t_determinant` cells; a vanishing denominator is a breakdown.
fn oracle_table<T: Scalar>(seq: &Sequence<T>, max_order: usize) -> CliResult<TransformTable<T>> {
    let mut columns = Vec::with_capacity(max_order + 1);
    for k in 0..=max_order {
        let len = seq.len().saturating_sub(3 * k);
        let mut col = Vec::with_capacity(len);
        for i in 0..len {
            col.push(match t_determinant(seq, k, seq.start_label() + i as i64) {
                Ok(v) if v.is_finite() => TransformEntry::Valid(v),
                Ok(_) | Err(Error::Singular(_)) => TransformEntry::Breakdown,
                Err(e) => return Err(e.into()),
            });
        }
        columns.push(col);
    }
    Ok(TransformTable::from_columns(
        seq.start_label(),
        seq.len(),
        3,
        columns,
    ))
}

fn exact_text<T: Scalar>(v: &T) -> String {
    match T::mode(v.context()) {
        lbq_core::ScalarMode::Float64 => v.to_f64().to_string(),
        _ => v.to_string(),
    }
}

fn write_out(text: &str, out: Option<&Path>) -> CliResult<()> {
    Ok(emit(text, out)?)
}

fn generate_cmd<T: Scalar>(args: &GenerateArgs, ctx: T::Context) -> CliResult<()> {
    let spec = generator_spec(&args.generator)?.ok_or_else(|| usage("generate needs --family"))?;
    let g = generate::<T>(&spec, ctx)?;
    let cell = |v: &T| match args.digits {
        Some(d) => format_fixed(v, d as usize),
        None => exact_text(v),
    };
    let mut grid = Grid::new(vec!["n".into(), "S".into()]);
    for (n, v) in g.sequence.labels().zip(g.sequence.values()) {
        grid.push(vec![n.to_string(), cell(v)]);
    }
    let mut text = String::new();
    if let (Some(limit), OutputFormat::Csv | OutputFormat::Tsv) = (&g.limit, args.output) {
        text.push_str(&format!("# limit {}\n", cell(limit)));
    }
    text.push_str(&grid.render(args.output));
    write_out(&text, args.out.as_deref())
}

fn transform_cmd<T: Scalar>(args: &TransformArgs, ctx: T::Context) -> CliResult<()> {
    let Loaded { seq, .. } = load::<T>(&args.source, ctx)?;
    let guard = guard(args.threshold)?;
    let k_max = args.k_max;
    let (table, name): (TransformTable<T>, fn(usize) -> String) = match args.algorithm {
        Algorithm::Lbq => (lbq_transform(&seq, k_max, guard), |k| format!("T_{k}")),
        Algorithm::Oracle => (oracle_table(&seq, k_max)?, |k| format!("T_{k}")),
        Algorithm::Epsilon => (epsilon_transform(&seq, k_max, guard), |k| {
            format!("eps_{}", 2 * k)
        }),
    };
    let mut header = vec!["n".to_string()];
    header.extend((0..=k_max).map(name));
    let mut grid = Grid::new(header);
    let rows = args.output.rows.unwrap_or(usize::MAX);
    for n in table.labels().take(rows) {
        let mut row = vec![n.to_string()];
        row.extend((0..=k_max).map(|k| entry_cell(&table.get(k, n), args.output.digits_for(k))));
        grid.push(row);
    }
    write_out(&grid.render(args.output.output), args.output.out.as_deref())
}

fn compare_cmd<T: Scalar>(args: &CompareArgs, ctx: T::Context) -> CliResult<()> {
    let Loaded { seq, limit } = load::<T>(&args.source, ctx)?;
    let limit = limit.ok_or_else(|| usage("compare needs a known limit; pass --limit"))?;
    let guard = guard(args.threshold)?;
    let lbq = error_table(&lbq_transform(&seq, args.k_max, guard), &limit);
    let eps = error_table(&epsilon_transform(&seq, args.k_max, guard), &limit);
    let mut header = vec!["n".to_string(), "S_err".to_string()];
    for k in 1..=args.k_max {
        header.push(format!("lbq_T_{k}"));
        header.push(format!("eps_{}", 2 * k));
    }
    let digits = args.digits as usize;
    let cell = |e: TransformEntry<T>| match e {
        TransformEntry::Valid(v) => scientific(&v, digits),
        other => entry_cell(&other, digits),
    };
    let mut grid = Grid::new(header);
    for n in seq.labels() {
        let mut row = vec![n.to_string(), cell(lbq.get(0, n))];
        for k in 1..=args.k_max {
            row.push(cell(lbq.get(k, n)));
            row.push(cell(eps.get(k, n)));
        }
        grid.push(row);
    }
    write_out(&grid.render(args.output), args.out.as_deref())
}

fn classify_cmd<T: Scalar>(args: &ClassifyArgs, ctx: T::Context) -> CliResult<()> {
    let Loaded { seq, limit } = load::<T>(&args.source, ctx)?;
    let limit = if args.no_limit { None } else { limit };
    let report = estimate_rho(&seq, limit.as_ref(), args.delta)?;
    let digits = args.digits as usize;
    let mut text = format!("classification: {}\n", report.classification);
    if let Some(sign) = report.sign {
        text.push_str(&format!("sign: {sign}\n"));
    }
    if let Some(rho) = report.rho {
        text.push_str(&format!("rho: {rho:.*}\n", digits));
    }
    if let Some(l) = &report.limit_used {
        let how = if report.proxy_limit {
            "proxy: last element"
        } else {
            "known"
        };
        text.push_str(&format!("limit: {} ({how})\n", format_fixed(l, digits)));
    }
    text.push_str(&format!("delta: {}\n", report.delta));
    text.push_str("n,rho_n\n");
    for (n, r) in seq.labels().zip(&report.rho_estimates) {
        let cell = r
            .as_ref()
            .map_or(String::new(), |r| format_fixed(r, digits));
        text.push_str(&format!("{n},{cell}\n"));
    }
    write_out(&text, args.out.as_deref())
}

fn random_sequence<T: Scalar>(rng: &mut ChaCha8Rng, len: usize, ctx: T::Context) -> Sequence<T> {
    let values = (0..len)
        .map(|_| {
            let q = BigRational::new(rng.gen_range(-20..=20).into(), rng.gen_range(1..=10).into());
            T::from_rational(&q, ctx)
        })
        .collect();
    Sequence::new(0, values).expect("length is at least 3")
}

fn agree<T: Scalar>(a: &T, b: &T, tolerance: f64) -> bool {
    if T::EXACT {
        return a == b;
    }
    let scale = a.abs().to_f64().max(b.abs().to_f64()).max(1.0);
    (a.clone() - b.clone()).abs().to_f64() <= tolerance * scale
}

/// Compares lattice, determinant and molecule values of every valid
/// lattice cell; returns `(cells compared, mismatches)`.
fn check_routes<T: Scalar>(
    seq: &Sequence<T>,
    k_max: usize,
    tolerance: f64,
) -> CliResult<(usize, usize)> {
    let k_top = k_max.min((seq.len() - 1) / 3);
    let table = lbq_transform(seq, k_top, BreakdownGuard::default());
    let sol = molecule_solution(seq, 3 * k_top + 3)?;
    let (mut compared, mut bad) = (0, 0);
    for k in 0..=k_top {
        for n in table.labels() {
            let TransformEntry::Valid(v) = table.get(k, n) else {
                continue;
            };
            compared += 1;
            let det_ok = t_determinant(seq, k, n).is_ok_and(|d| agree(&d, &v, tolerance));
            let mol_ok = sol
                .transform(k, n)
                .is_some_and(|m| agree(&m, &v, tolerance));
            if !(det_ok && mol_ok) {
                bad += 1;
            }
        }
    }
    Ok((compared, bad))
}

fn verify_cmd<T: Scalar>(args: &VerifyArgs, ctx: T::Context) -> CliResult<bool> {
    if args.k_max < 2 {
        return Err(usage("verify needs --k-max of at least 2"));
    }
    let inputs: Vec<Sequence<T>> = match &args.input {
        Some(path) => vec![ingest::<T>(
            path,
            &input_format(args.format, args.column.as_deref(), None),
            ctx,
        )?],
        None => {
            let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
            (0..args.trials)
                .map(|_| random_sequence::<T>(&mut rng, args.length as usize, ctx))
                .collect()
        }
    };
    if inputs.is_empty() {
        return Err(usage("nothing to verify; --trials must be positive"));
    }
    let mut text = String::new();
    let mut all_pass = true;
    for (i, seq) in inputs.iter().enumerate() {
        let report = check_bilinear(seq, args.k_max, None)?;
        let bilinear_ok = if T::EXACT {
            report.all_exact()
        } else {
            report.max_scaled() <= args.tolerance
        };
        let (compared, bad) = check_routes(seq, args.k_max, args.tolerance)?;
        let verdict = |ok: bool| if ok { "PASS" } else { "FAIL" };
        text.push_str(&format!(
            "input {}: bilinear {} ({} residuals, max scaled {:.1e}); routes {} ({compared} cells, {bad} mismatches)\n",
            i + 1,
            verdict(bilinear_ok),
            report.residuals.len(),
            report.max_scaled(),
            verdict(bad == 0),
        ));
        all_pass &= bilinear_ok && bad == 0;
    }
    text.push_str(if all_pass { "PASS\n" } else { "FAIL\n" });
    write_out(&text, args.out.as_deref())?;
    Ok(all_pass)
}
