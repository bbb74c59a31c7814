use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ribbon_core::constructions::{build, FamilyId, FamilyTag, TorusKnotParams};
use ribbon_core::formulas::{
    bounds_csv, bounds_markdown, bounds_table, closed_form_ratio, quotient_csv, quotient_markdown,
    quotient_table,
};
use ribbon_core::knot::{certify, certify_family, expected_alexander, Certification};
use ribbon_core::render::{render_table_figure, to_svg, RenderOptions};
use ribbon_core::{layout, unfold, Error, FoldProgram, Measured, Presentation};

/// Flat folded ribbon constructions of torus knots.
#[derive(Parser)]
#[command(name = "ribbon", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write the fold program of a construction as JSON.
    Build {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Check a construction's geometry against its closed form.
    Verify {
        #[command(flatten)]
        source: SourceArgs,
        /// Relative tolerance for ratio agreement.
        #[arg(long, default_value_t = 1e-9)]
        tolerance: f64,
        /// Also certify the knot type from the folded diagram.
        #[arg(long)]
        knot_check: bool,
    },
    /// Write the quotient table, or the bounds table with --bounds.
    Table {
        #[arg(long, default_value_t = 12)]
        q_max: u32,
        #[arg(long, default_value_t = 25)]
        p_max: u32,
        #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
        format: TableFormat,
        #[arg(long)]
        bounds: bool,
        /// Emit an SVG chart of the quotients instead of a table.
        #[arg(long, conflicts_with = "bounds")]
        figure: bool,
        /// Add the measured ratio of every built layout (slower).
        #[arg(long)]
        measure: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Draw a folded layout as SVG.
    Render {
        #[command(flatten)]
        source: SourceArgs,
        #[arg(long, short)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 100.0)]
        scale: f64,
        /// Sideways offset per layer, as a fraction of the ribbon width.
        #[arg(long, default_value_t = 0.0)]
        epsilon_display: f64,
        #[arg(long)]
        circumcircle: bool,
        #[arg(long)]
        no_creases: bool,
        #[arg(long)]
        no_centerline: bool,
    },
    /// Extract the knot diagram and report its invariants.
    Identify {
        #[command(flatten)]
        source: SourceArgs,
        /// Expected torus knot as `p,q`; defaults to the family's own claim.
        #[arg(long)]
        knot: Option<String>,
        #[arg(long)]
        json: bool,
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFormat {
    Csv,
    Markdown,
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// odd-wrap, star-polygon, pinwheel, even-wrap-plus2, even-wrap-plus4, short52, short72, rect74
    #[arg(long)]
    family: String,
    /// Family parameter q.
    #[arg(long, conflicts_with = "p")]
    q: Option<u32>,
    /// Family parameter p (star polygons).
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value = "closed")]
    presentation: String,
    /// Gap of the short presentations, in length units.
    #[arg(long)]
    epsilon: Option<f64>,
}

impl FamilyArgs {
    fn family(&self) -> ribbon_core::Result<FamilyId> {
        let tag: FamilyTag = self.family.parse()?;
        FamilyId::new(tag, self.q.or(self.p))
    }

    fn presentation(&self) -> ribbon_core::Result<Presentation> {
        self.presentation.parse()
    }

    fn program(&self) -> ribbon_core::Result<FoldProgram> {
        build(&self.family()?, self.presentation()?, self.epsilon)
    }
}

#[derive(Args, Clone)]
struct SourceArgs {
    /// Fold program JSON to read.
    #[arg(long, short)]
    input: Option<PathBuf>,
    #[arg(long)]
    family: Option<String>,
    #[arg(long, conflicts_with = "p")]
    q: Option<u32>,
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, default_value = "closed")]
    presentation: String,
    #[arg(long)]
    epsilon: Option<f64>,
}

impl SourceArgs {
    fn family_args(&self) -> Option<FamilyArgs> {
        self.family.as_ref().map(|family| FamilyArgs {
            family: family.clone(),
            q: self.q,
            p: self.p,
            presentation: self.presentation.clone(),
            epsilon: self.epsilon,
        })
    }

    /// The program to work on, and the family it claims to belong to.
    fn load(&self) -> anyhow::Result<(FoldProgram, Option<(FamilyId, Presentation)>)> {
        let family = match self.family_args() {
            Some(args) => Some((
                args.family().map_err(usage)?,
                args.presentation().map_err(usage)?,
                args,
            )),
            None => None,
        };
        let program = match (&self.input, &family) {
            (Some(path), _) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))
                    .map_err(usage)?;
                FoldProgram::from_json(&text).map_err(usage)?
            }
            (None, Some((_, _, args))) => args.program().map_err(usage)?,
            (None, None) => return Err(usage(anyhow!("give --input or --family"))),
        };
        Ok((
            program,
            family.map(|(id, presentation, _)| (id, presentation)),
        ))
    }
}

/// Marks an error as a usage or input problem (exit status 2).
#[derive(Debug)]
struct UsageError(anyhow::Error);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{:#}", self.0)
    }
}

impl std::error::Error for UsageError {}

fn usage(e: impl Into<anyhow::Error>) -> anyhow::Error {
    anyhow::Error::new(UsageError(e.into()))
}

/// A check that ran to completion and failed (exit status 1).
#[derive(Debug)]
struct Failed(String);

impl std::fmt::Display for Failed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Failed {}

/// Geometry that builds but does not hold up is a failed check; anything
/// else from the library is bad input.
fn classify(e: Error) -> anyhow::Error {
    match e {
        Error::Closure(_)
        | Error::Inconsistent(_)
        | Error::DegenerateDiagram(_)
        | Error::Layering(_)
        | Error::InvalidDiagram(_) => anyhow::Error::new(Failed(e.to_string())),
        other => usage(other),
    }
}

/// Writes `contents` to `path` through a temporary file in the same
/// directory, or to stdout when no path is given.
fn emit(path: Option<&Path>, contents: &str) -> anyhow::Result<()> {
    let Some(path) = path else {
        std::io::stdout().write_all(contents.as_bytes())?;
        return Ok(());
    };
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)
        .with_context(|| format!("creating a file in {}", dir.display()))?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path)
        .with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn run_build(family: &FamilyArgs, output: Option<&Path>) -> anyhow::Result<()> {
    let program = family.program().map_err(usage)?;
    let mut json = program.to_json()?;
    json.push('\n');
    emit(output, &json)
}

fn run_verify(source: &SourceArgs, tolerance: f64, knot_check: bool) -> anyhow::Result<()> {
    if !(tolerance > 0.0) {
        return Err(usage(anyhow!("tolerance must be positive")));
    }
    let (program, family) = source.load()?;
    let folded = layout(&program).map_err(classify)?;
    let ratio = folded.ratio()?;
    let mut failures = Vec::new();
    println!("program: {}", program.label);
    println!("panels: {}", folded.panels.len());
    println!("closure: ok");

    let width = program.width;
    let worst_width = folded
        .panels
        .iter()
        .map(|p| (p.separation() - width).abs())
        .fold(0.0, f64::max);
    let width_ok = worst_width <= tolerance * width;
    println!(
        "width: max deviation {worst_width:.3e} {}",
        verdict(width_ok)
    );
    if !width_ok {
        failures.push("width");
    }

    let round_trip = unfold(&folded).map_err(classify)?;
    let drift = round_trip
        .creases
        .iter()
        .zip(&program.creases)
        .map(|(a, b)| (a.position - b.position).abs())
        .fold((round_trip.length - program.length).abs(), f64::max);
    let angles_ok = round_trip
        .creases
        .iter()
        .zip(&program.creases)
        .all(|(a, b)| a.angle == b.angle && a.layer_shift == b.layer_shift);
    let unfold_ok = round_trip.creases.len() == program.creases.len()
        && angles_ok
        && drift <= tolerance * program.length;
    println!("unfold: max drift {drift:.3e} {}", verdict(unfold_ok));
    if !unfold_ok {
        failures.push("unfold");
    }

    println!("ratio: {ratio}");
    if let Some((id, presentation)) = &family {
        let form = closed_form_ratio(id, *presentation).map_err(usage)?;
        let expected = form.value();
        let relative = (ratio - expected).abs() / expected;
        let ok = relative < tolerance;
        println!("closed form: {form} = {expected}");
        println!("relative error: {relative:.3e} {}", verdict(ok));
        if !ok {
            failures.push("ratio");
        }
    }

    if knot_check {
        let Some((id, _)) = &family else {
            return Err(usage(anyhow!(
                "--knot-check needs --family to know the expected knot"
            )));
        };
        let cert = certify_family(&program, id).map_err(classify)?;
        println!(
            "crossings: {} (bound {})",
            cert.crossings(),
            cert.crossing_bound
        );
        println!("alexander: {}", cert.alexander);
        println!("knot: {}", verdict(cert.passed()));
        if !cert.passed() {
            failures.push("knot");
        }
    }

    if failures.is_empty() {
        println!("result: PASS");
        Ok(())
    } else {
        println!("result: FAIL");
        Err(anyhow::Error::new(Failed(format!(
            "failed checks: {}",
            failures.join(", ")
        ))))
    }
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}

fn run_table(
    q_max: u32,
    p_max: u32,
    format: TableFormat,
    bounds: bool,
    figure: bool,
    measure: bool,
    output: Option<&Path>,
) -> anyhow::Result<()> {
    let text = if bounds {
        let rows = bounds_table();
        match format {
            TableFormat::Csv => bounds_csv(&rows),
            TableFormat::Markdown => bounds_markdown(&rows),
        }
    } else {
        let rows = quotient_table(q_max, p_max, measure).map_err(usage)?;
        if figure {
            render_table_figure(&rows)?
        } else {
            match format {
                TableFormat::Csv => quotient_csv(&rows),
                TableFormat::Markdown => quotient_markdown(&rows),
            }
        }
    };
    emit(output, &text)
}

fn run_render(
    source: &SourceArgs,
    options: RenderOptions,
    output: Option<&Path>,
) -> anyhow::Result<()> {
    let (program, _) = source.load()?;
    let folded = layout(&program).map_err(classify)?;
    let options = RenderOptions {
        epsilon_display: options.epsilon_display * program.width,
        ..options
    };
    emit(output, &to_svg(&folded, &options).map_err(usage)?)
}

fn parse_knot(text: &str) -> anyhow::Result<TorusKnotParams> {
    let (p, q) = text
        .split_once(',')
        .ok_or_else(|| anyhow!("expected p,q but got {text:?}"))?;
    Ok(TorusKnotParams::new(p.trim().parse()?, q.trim().parse()?)?)
}

fn identify_text(label: &str, cert: &Certification, checked: bool) -> String {
    let signs: Vec<&str> = cert
        .diagram
        .signs()
        .iter()
        .map(|&s| if s > 0 { "+" } else { "-" })
        .collect();
    let coefficients: Vec<String> = cert
        .alexander
        .dense_coefficients()
        .iter()
        .map(ToString::to_string)
        .collect();
    let mut out = format!(
        "program: {label}\ncrossings: {}\ngauss: {}\nsigns: {}\nalexander: {}\ncoefficients: {}\ndeterminant: {}\n",
        cert.crossings(),
        cert.diagram,
        signs.join(" "),
        cert.alexander,
        coefficients.join(" "),
        cert.determinant
    );
    if checked {
        out.push_str(&format!(
            "reference: {}\ncrossing bound: {} {}\nverdict: {}\n",
            cert.reference,
            cert.crossing_bound,
            verdict(cert.bound_holds()),
            if cert.passed() { "match" } else { "mismatch" }
        ));
    } else {
        out.push_str("verdict: unchecked\n");
    }
    out
}

fn identify_json(label: &str, cert: &Certification, checked: bool) -> anyhow::Result<String> {
    let coefficients = |p: &ribbon_core::knot::LaurentPolynomial| -> Vec<serde_json::Value> {
        p.dense_coefficients()
            .iter()
            .map(|c| {
                c.to_string()
                    .parse::<i64>()
                    .map_or_else(|_| serde_json::Value::String(c.to_string()), Into::into)
            })
            .collect()
    };
    let mut doc = serde_json::json!({
        "program": label,
        "crossings": cert.crossings(),
        "gauss": cert.diagram.signed_code(),
        "signs": cert.diagram.signs(),
        "alexander": coefficients(&cert.alexander),
        "alexander_text": cert.alexander.to_string(),
        "determinant": cert.determinant.to_string(),
    });
    let verdict = if !checked {
        "unchecked"
    } else if cert.passed() {
        "match"
    } else {
        "mismatch"
    };
    if checked {
        doc["reference"] = coefficients(&cert.reference).into();
        doc["crossing_bound"] = cert.crossing_bound.into();
        doc["bound_holds"] = cert.bound_holds().into();
    }
    doc["verdict"] = verdict.into();
    Ok(serde_json::to_string_pretty(&doc)? + "\n")
}

fn run_identify(
    source: &SourceArgs,
    knot: Option<&str>,
    json: bool,
    output: Option<&Path>,
) -> anyhow::Result<()> {
    let (program, family) = source.load()?;
    let (reference, bound) = match (knot, &family) {
        (Some(text), _) => {
            let k = parse_knot(text).map_err(usage)?;
            let reference = ribbon_core::knot::torus_alexander(k.p, k.q)?;
            (
                Some(reference),
                ribbon_core::formulas::crossing_number(k.p as u64, k.q as u64)?,
            )
        }
        (None, Some((id, _))) => (
            Some(expected_alexander(id).map_err(usage)?),
            ribbon_core::formulas::family_crossing_number(id).map_err(usage)?,
        ),
        (None, None) => (None, 0),
    };
    let checked = reference.is_some();
    let reference = reference.unwrap_or_else(ribbon_core::knot::LaurentPolynomial::one);
    let cert = certify(&program, &reference, bound).map_err(classify)?;
    let text = if json {
        identify_json(&program.label, &cert, checked)?
    } else {
        identify_text(&program.label, &cert, checked)
    };
    emit(output, &text)?;
    if checked && !cert.passed() {
        return Err(anyhow::Error::new(Failed(
            "diagram does not match the expected knot".into(),
        )));
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Build { family, output } => run_build(&family, output.as_deref()),
        Command::Verify {
            source,
            tolerance,
            knot_check,
        } => run_verify(&source, tolerance, knot_check),
        Command::Table {
            q_max,
            p_max,
            format,
            bounds,
            figure,
            measure,
            output,
        } => run_table(
            q_max,
            p_max,
            format,
            bounds,
            figure,
            measure,
            output.as_deref(),
        ),
        Command::Render {
            source,
            output,
            scale,
            epsilon_display,
            circumcircle,
            no_creases,
            no_centerline,
        } => {
            let options = RenderOptions {
                epsilon_display,
                show_creases: !no_creases,
                show_circumcircle: circumcircle,
                show_centerline: !no_centerline,
                scale,
            };
            run_render(&source, options, output.as_deref())
        }
        Command::Identify {
            source,
            knot,
            json,
            output,
        } => run_identify(&source, knot.as_deref(), json, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.is::<Failed>() {
                ExitCode::from(1)
            } else {
                ExitCode::from(2)
            }
        }
    }
}
