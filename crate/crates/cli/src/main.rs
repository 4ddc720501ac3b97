//! `charvar` command-line front end.

mod selftest;

use std::io::{Read, Write};
use std::process::ExitCode;

use charvar::cohomology::{self, Cocycle, H1Class};
use charvar::lifting::{self, Representation};
use charvar::linalg3::{Cplx, Mat3};
use charvar::quotients::{self, CurvePoint, StabilizerKind, TraceCoords};
use charvar::real_forms::Involution;
use charvar::su21::{self, CanonicalForm, ElementClass, HermitianModel};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Parser)]
#[command(name = "charvar", version, about = "Real points of SL(3,C) character varieties")]
struct Cli {
    /// Write CSV instead of JSON where the command supports it.
    #[arg(long, global = true)]
    csv: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dynamical type of an SU(2,1) element.
    Classify {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_enum, default_value_t = Model::H1)]
        model: Model,
    },
    /// Canonical conjugacy representative of a semisimple SU(2,1) element.
    Canon {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_enum, default_value_t = Model::H1)]
        model: Model,
    },
    /// Trace coordinates (tr M, tr M^-1), and the stabilizer shape if an
    /// involution is given.
    Trace {
        #[command(flatten)]
        input: MatrixArgs,
        #[arg(long, value_parser = parse_involution)]
        involution: Option<Involution>,
    },
    /// Real-form orbits over a point of the character variety of Z.
    Fiber {
        #[arg(long, value_enum)]
        form: Form,
        /// Trace, for su3 and su21.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        z: Option<Cplx>,
        /// Real coordinates (r, s), for sl3r.
        #[arg(long, value_parser = parse_pair, allow_hyphen_values = true)]
        rs: Option<Cplx>,
    },
    /// Lift a representation with real character, read as JSON from stdin.
    Lift {
        /// Used when the input has no "involution" field.
        #[arg(long, value_parser = parse_involution)]
        involution: Option<Involution>,
    },
    /// H1 classes of stabilizers under the standard involutions.
    H1 {
        /// Aligned text instead of JSON.
        #[arg(long)]
        text: bool,
        #[arg(long, value_parser = parse_involution)]
        involution: Option<Involution>,
    },
    /// Goldman function and region over a grid of traces.
    Curve {
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        xmin: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        xmax: f64,
        #[arg(long, default_value_t = -4.0, allow_hyphen_values = true)]
        ymin: f64,
        #[arg(long, default_value_t = 4.0, allow_hyphen_values = true)]
        ymax: f64,
        #[arg(long, default_value_t = 0.1)]
        step: f64,
    },
    /// Reproduce the standard tables and spot values.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(clap::Args)]
struct MatrixArgs {
    /// Matrix JSON; read from stdin if absent.
    #[arg(long)]
    matrix: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    H1,
    H2,
}

impl From<Model> for HermitianModel {
    fn from(m: Model) -> HermitianModel {
        match m {
            Model::H1 => HermitianModel::H1,
            Model::H2 => HermitianModel::H2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Form {
    Sl3r,
    Su3,
    Su21,
}

fn parse_pair(s: &str) -> Result<Cplx, String> {
    let (a, b) = s.split_once(',').ok_or("expected re,im")?;
    let a: f64 = a.trim().parse().map_err(|e| format!("{a:?}: {e}"))?;
    let b: f64 = b.trim().parse().map_err(|e| format!("{b:?}: {e}"))?;
    charvar::linalg3::cplx(a, b).map_err(|e| e.to_string())
}

fn parse_involution(s: &str) -> Result<Involution, String> {
    Involution::from_name(s).ok_or_else(|| format!("expected tau0, tau1 or tau2, got {s:?}"))
}

/// Malformed input or a failed computation; exit code 1.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure(e.to_string())
    }
}

type Out = Result<String, Failure>;

fn read_stdin() -> Result<String, Failure> {
    let mut s = String::new();
    std::io::stdin().read_to_string(&mut s)?;
    Ok(s)
}

fn read_matrix(args: &MatrixArgs) -> Result<Mat3, Failure> {
    let text = match &args.matrix {
        Some(s) => s.clone(),
        None => read_stdin()?,
    };
    serde_json::from_str(&text).map_err(|e| Failure(format!("bad matrix JSON: {e}")))
}

fn json<T: Serialize>(v: &T) -> Out {
    Ok(serde_json::to_string(v)?)
}

#[derive(Serialize)]
struct ClassifyOut {
    class: ElementClass,
    trace: [f64; 2],
    goldman_f: f64,
}

fn classify(input: &MatrixArgs, model: Model) -> Out {
    let m = read_matrix(input)?;
    let class = su21::classify(&m, model.into())?;
    let z = m.trace();
    json(&ClassifyOut {
        class,
        trace: [z.re, z.im],
        goldman_f: su21::goldman_f(z),
    })
}

fn canon(input: &MatrixArgs, model: Model, csv: bool) -> Out {
    let f = su21::canonical(&read_matrix(input)?, model.into())?;
    if csv {
        Ok(form_csv(&f))
    } else {
        json(&f)
    }
}

fn form_csv(f: &CanonicalForm) -> String {
    match f {
        CanonicalForm::Elliptic { a, b, c } => format!("elliptic,{a},{b},{c}"),
        CanonicalForm::Loxodromic { lambda } => format!("loxodromic,{},{}", lambda.re, lambda.im),
    }
}

#[derive(Serialize)]
struct TraceOut {
    #[serde(flatten)]
    coords: TraceCoords,
    #[serde(skip_serializing_if = "Option::is_none")]
    stabilizer: Option<String>,
}

fn trace(input: &MatrixArgs, t: Option<Involution>, csv: bool) -> Out {
    let m = read_matrix(input)?;
    let coords = quotients::trace_coords(&m)?;
    let stabilizer = match t {
        Some(t) => Some(quotients::stabilizer_kind(&m, &t)?.to_string()),
        None => None,
    };
    if csv {
        let mut line = format!("{},{},{},{}", coords.z.re, coords.z.im, coords.w.re, coords.w.im);
        if let Some(s) = stabilizer {
            line.push(',');
            line.push_str(&s);
        }
        return Ok(line);
    }
    json(&TraceOut { coords, stabilizer })
}

#[derive(Serialize)]
#[serde(tag = "form", rename_all = "lowercase")]
enum FiberOut {
    Su21 {
        #[serde(with = "charvar::linalg3::cplx_pair")]
        z: Cplx,
        region: String,
        count: usize,
        orbits: Vec<CanonicalForm>,
    },
    Su3 {
        #[serde(with = "charvar::linalg3::cplx_pair")]
        z: Cplx,
        count: usize,
        lift: Option<Mat3>,
    },
    Sl3r {
        coords: TraceCoords,
        count: usize,
        lift: Mat3,
    },
}

fn fiber(form: Form, z: Option<Cplx>, rs: Option<Cplx>, csv: bool) -> Result<Out, clap::Error> {
    use clap::error::ErrorKind;
    let missing = |flag: &str| {
        Cli::command_error(
            ErrorKind::MissingRequiredArgument,
            format!("--{flag} is required for this form"),
        )
    };
    let out = match form {
        Form::Su21 => {
            let z = z.ok_or_else(|| missing("z"))?;
            let orbits = quotients::fiber_enumerate_su21(z);
            if csv {
                return Ok(Ok(orbits.iter().map(form_csv).collect::<Vec<_>>().join("\n")));
            }
            FiberOut::Su21 {
                z,
                region: quotients::su21_region(z).to_string(),
                count: orbits.len(),
                orbits,
            }
        }
        Form::Su3 => {
            let z = z.ok_or_else(|| missing("z"))?;
            let lift = quotients::su3_in_image(z).then(|| quotients::diagonal_lift(&TraceCoords::unitary(z)));
            FiberOut::Su3 {
                z,
                count: usize::from(lift.is_some()),
                lift,
            }
        }
        Form::Sl3r => {
            let rs = rs.ok_or_else(|| missing("rs"))?;
            let (r, s) = (rs.re, rs.im);
            FiberOut::Sl3r {
                coords: TraceCoords::new(Cplx::new(r, 0.0), Cplx::new(s, 0.0)),
                count: quotients::fiber_count_sl3r(r, s),
                lift: quotients::companion_lift(r, s),
            }
        }
    };
    Ok(json(&out))
}

impl Cli {
    fn command_error(kind: clap::error::ErrorKind, msg: String) -> clap::Error {
        use clap::CommandFactory;
        Cli::command().error(kind, msg)
    }
}

#[derive(Deserialize)]
struct LiftIn {
    generators: Vec<Mat3>,
    involution: Option<Involution>,
}

fn lift(fallback: Option<Involution>) -> Out {
    let input: LiftIn = serde_json::from_str(&read_stdin()?).map_err(|e| Failure(format!("bad lift JSON: {e}")))?;
    let t = input
        .involution
        .or(fallback)
        .ok_or_else(|| Failure("no involution in the input and no --involution".into()))?;
    let r = Representation::new(input.generators)?;
    json(&lifting::lift(&r, &t)?)
}

#[derive(Serialize)]
struct H1Row {
    stabilizer: String,
    involution: &'static str,
    cardinality: usize,
    representatives: Vec<H1Rep>,
}

#[derive(Serialize)]
struct H1Rep {
    class: H1Class,
    cocycle: Mat3,
}

/// The standard table: every stabilizer shape under each standard involution,
/// minus the uncovered torus (b) row under tau1.
fn h1_rows() -> Vec<(StabilizerKind, &'static str)> {
    use StabilizerKind::*;
    let mut rows = Vec::new();
    for name in ["tau0", "tau1", "tau2"] {
        for kind in [TorusA, TorusB, GL2, Full] {
            if !(name == "tau1" && kind == TorusB) {
                rows.push((kind, name));
            }
        }
    }
    rows
}

fn h1(text: bool, only: Option<Involution>) -> Out {
    let mut rows = Vec::new();
    for (kind, name) in h1_rows() {
        let t = Involution::from_name(name).expect("standard alias");
        if only.is_some_and(|o| o != t) {
            continue;
        }
        let reps = cohomology::h1_enumerate(kind, &t)?;
        rows.push(H1Row {
            stabilizer: kind.to_string(),
            involution: name,
            cardinality: cohomology::h1_cardinality(kind, &t)?,
            representatives: reps
                .into_iter()
                .map(|(co, class): (Cocycle, H1Class)| H1Rep { class, cocycle: co.c })
                .collect(),
        });
    }
    if !text {
        return json(&rows);
    }
    let mut out = format!("{:<10} {:<5} {:>2}  classes", "stabilizer", "inv", "#");
    for r in &rows {
        let classes: Vec<String> = r.representatives.iter().map(|p| p.class.to_string()).collect();
        out.push_str(&format!(
            "\n{:<10} {:<5} {:>2}  {}",
            r.stabilizer,
            r.involution,
            r.cardinality,
            classes.join(" ")
        ));
    }
    Ok(out)
}

fn curve(xmin: f64, xmax: f64, ymin: f64, ymax: f64, step: f64, csv: bool) -> Out {
    let grid_ok =
        [xmin, xmax, ymin, ymax, step].iter().all(|v| v.is_finite()) && step > 0.0 && xmin <= xmax && ymin <= ymax;
    if !grid_ok {
        return Err(Failure("grid needs finite bounds, min <= max and step > 0".into()));
    }
    let nx = ((xmax - xmin) / step + 1e-9).floor() as usize + 1;
    let ny = ((ymax - ymin) / step + 1e-9).floor() as usize + 1;
    // indexed parallel iterators keep the output in grid order
    let points: Vec<CurvePoint> = (0..nx * ny)
        .into_par_iter()
        .map(|k| CurvePoint::at(xmin + (k / ny) as f64 * step, ymin + (k % ny) as f64 * step))
        .collect();
    if csv {
        return Ok(points.iter().map(CurvePoint::csv).collect::<Vec<_>>().join("\n"));
    }
    #[derive(Serialize)]
    struct Row {
        re: f64,
        im: f64,
        f: f64,
        region: &'static str,
    }
    let rows: Vec<Row> = points
        .iter()
        .map(|p| Row {
            re: p.re,
            im: p.im,
            f: p.f,
            region: p.region.label(),
        })
        .collect();
    json(&rows)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let csv = cli.csv;
    let result = match &cli.command {
        Command::Classify { input, model } => classify(input, *model),
        Command::Canon { input, model } => canon(input, *model, csv),
        Command::Trace { input, involution } => trace(input, *involution, csv),
        Command::Fiber { form, z, rs } => match fiber(*form, *z, *rs, csv) {
            Ok(out) => out,
            Err(e) => e.exit(),
        },
        Command::Lift { involution } => lift(*involution),
        Command::H1 { text, involution } => h1(*text, *involution),
        Command::Curve {
            xmin,
            xmax,
            ymin,
            ymax,
            step,
        } => curve(*xmin, *xmax, *ymin, *ymax, *step, csv),
        Command::Selftest { seed } => {
            return if selftest::run(*seed) {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            };
        }
    };
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{out}") {
                // a closed pipe (e.g. `| head`) is not an error
                Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => {
                    eprintln!("error: {e}");
                    ExitCode::FAILURE
                }
                _ => ExitCode::SUCCESS,
            }
        }
        Err(Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
