//! Command-line front end: `run` parses argv, computes, and renders either
//! plain text or JSON. Exit codes: 0 success, 1 verification failure,
//! 2 usage or input error.

pub mod output;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use ruled_core::algebra::{parse_rational, render_rational, CoefficientRing, Rational};
use ruled_core::catalog::{
    bg_groups_dims, bg_rational_presentation, catalog_dump, field_for, isometry_group, kernel_generator, psi_star,
    relation_polynomial, strata, SurfaceFamily,
};
use ruled_core::graded::Field;
use ruled_core::localization::{atiyah_bott_index, euler_class, split_index};
use ruled_core::torus::{fixed_point_weights, moment_polygon, HirzebruchParams, PolygonRecord};
use ruled_core::verify::{run_suites, Status, Suite, DEFAULT_MAX_DEGREE};
use serde::Serialize;

use output::{BgOutput, EulerOutput, IndexOutput, PolygonOutput, PsiOutput, RelationOutput};

#[derive(Parser, Debug)]
#[command(name = "ruled", version, about = "Exact computations for rational ruled surfaces")]
pub struct Cli {
    /// Print JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fixed-point index I(n) of the Dolbeault complex of F_n, split by sign.
    Index { n: u32 },
    /// Euler class e_n of the isotropy representation, in A and X.
    Euler { n: u32 },
    /// Moment polygon of F_n and the isotropy weights at its vertices.
    Polygon {
        #[arg(required_unless_present = "from")]
        n: Option<u32>,
        #[arg(long, required_unless_present = "from", allow_hyphen_values = true)]
        lambda: Option<String>,
        /// Read a polygon record (JSON) instead.
        #[arg(long, conflicts_with_all = ["n", "lambda"])]
        from: Option<PathBuf>,
    },
    /// The ring map psi_n* and the generator of its kernel.
    Psi { n: u32 },
    /// The relation R_l.
    Relation {
        #[arg(long = "l")]
        l: u32,
        #[arg(long, default_value = "untwisted")]
        family: SurfaceFamily,
    },
    /// Cohomology of BG_lambda.
    Bg {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value = "untwisted")]
        family: SurfaceFamily,
        #[arg(long, default_value = "Q")]
        coeff: String,
        #[arg(long, env = "RULED_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
    },
    /// Run acceptance suites (comma separated, or `all`).
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, env = "RULED_MAX_DEGREE", default_value_t = DEFAULT_MAX_DEGREE)]
        max_degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The full catalog as JSON.
    CatalogDump,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl RunOutput {
    fn ok(stdout: String) -> Self {
        RunOutput {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn usage(stderr: String) -> Self {
        RunOutput {
            code: 2,
            stdout: String::new(),
            stderr,
        }
    }
}

pub fn run<I, T>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => RunOutput::ok(text),
                _ => RunOutput::usage(text),
            };
        }
    };
    match execute(&cli) {
        Ok(out) => out,
        Err(e) => RunOutput::usage(format!("error: {e}\n")),
    }
}

fn lambda_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| format!("bad --lambda '{s}': {e}"))
}

fn emit<T: Serialize>(json: bool, value: &T, text: impl FnOnce() -> String) -> Result<RunOutput, String> {
    if json {
        let mut s = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
        s.push('\n');
        Ok(RunOutput::ok(s))
    } else {
        Ok(RunOutput::ok(text()))
    }
}

fn execute(cli: &Cli) -> Result<RunOutput, String> {
    let json = cli.json;
    match &cli.command {
        Command::Index { n } => {
            let i = atiyah_bott_index(*n).map_err(|e| e.to_string())?;
            let s = split_index(&i).map_err(|e| e.to_string())?;
            let out = IndexOutput {
                n: *n,
                character: i.value().to_string(),
                positive: s.positive.to_string(),
                negative: s.negative.to_string(),
                positive_dimension: render_rational(&s.positive_dimension()),
                negative_dimension: render_rational(&s.negative_dimension()),
            };
            emit(json, &out, || {
                format!(
                    "I({n}) = {}\nH0: {} (dimension {})\nH1: {} (dimension {})\n",
                    out.character, out.positive, out.positive_dimension, out.negative, out.negative_dimension
                )
            })
        }
        Command::Euler { n } => {
            let e = euler_class(*n).map_err(|e| e.to_string())?;
            let out = EulerOutput {
                n: *n,
                euler_class: e.value.to_string(),
                degree: e.degree().unwrap_or_default(),
                coefficients: e.coefficients.label().into(),
            };
            emit(json, &out, || {
                format!("e_{n} = {}\ndegree {} over {}\n", out.euler_class, out.degree, out.coefficients)
            })
        }
        Command::Polygon { n, lambda, from } => {
            let (record, poly) = match from {
                Some(path) => {
                    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
                    let record: PolygonRecord = serde_json::from_str(&text).map_err(|e| e.to_string())?;
                    let poly = record.to_polygon().map_err(|e| e.to_string())?;
                    (record, poly)
                }
                None => {
                    let (n, lambda) = (n.expect("required by clap"), lambda_arg(lambda.as_deref().unwrap_or(""))?);
                    let params = HirzebruchParams::new(n, lambda.clone()).map_err(|e| e.to_string())?;
                    let poly = moment_polygon(&params).map_err(|e| e.to_string())?;
                    (poly.to_record(n, &lambda), poly)
                }
            };
            let weights = fixed_point_weights(&poly).map_err(|e| e.to_string())?;
            let out = PolygonOutput {
                rendered: weights.rendered(),
                record,
                weights,
            };
            emit(json, &out, || {
                let vs: Vec<String> = out.record.vertices.iter().map(|[x, y]| format!("({x}, {y})")).collect();
                let mut s = format!("F_{}, lambda = {}\nvertices: {}\n", out.record.n, out.record.lambda, vs.join(" "));
                for (label, a, b) in &out.rendered {
                    s += &format!("{label}: {a}, {b}\n");
                }
                s
            })
        }
        Command::Psi { n } => {
            let psi = psi_star(*n);
            let names = psi.source().vars().names().to_vec();
            let out = PsiOutput {
                n: *n,
                group: isometry_group(*n).label().into(),
                images: names.iter().cloned().zip(psi.images().iter().map(ToString::to_string)).collect(),
                kernel: kernel_generator(*n).to_string(),
            };
            emit(json, &out, || {
                let mut s = format!("psi_{n}*: Q[T, X, Y] -> H*(B{}; Q)\n", out.group);
                for (v, img) in &out.images {
                    s += &format!("{v} -> {img}\n");
                }
                s + &format!("kernel: ({})\n", out.kernel)
            })
        }
        Command::Relation { l, family } => {
            let r = relation_polynomial(*l, *family);
            let out = RelationOutput {
                l: *l,
                family: *family,
                relation: r.value.to_string(),
                degree: r.degree(),
                factors: r.factors.iter().map(ToString::to_string).collect(),
                scalars: r.scalars.iter().map(render_rational).collect(),
            };
            emit(json, &out, || {
                let mut s = format!("R_{l} ({family}) = {}\ndegree {}\n", out.relation, out.degree);
                for (f, c) in out.factors.iter().zip(&out.scalars) {
                    s += &format!("factor: {f} (scalar {c})\n");
                }
                s
            })
        }
        Command::Bg {
            lambda,
            family,
            coeff,
            max_degree,
        } => {
            let lambda = lambda_arg(lambda)?;
            let coefficients: CoefficientRing = coeff.parse().map_err(|e: ruled_core::algebra::AlgebraError| e.to_string())?;
            let field = field_for(coefficients).map_err(|e| e.to_string())?;
            let s = strata(&lambda, *family).map_err(|e| e.to_string())?;
            let mut out = BgOutput {
                lambda: render_rational(&lambda),
                family: *family,
                coefficients: coefficients.label().into(),
                l: s.l,
                m: s.m,
                max_degree: *max_degree,
                presentation: None,
                hilbert_series: None,
                dims: Vec::new(),
            };
            if field == Field::Q {
                let p = bg_rational_presentation(&lambda, *family, *max_degree).map_err(|e| e.to_string())?;
                // Over Z[1/2] the groups are free with these ranks.
                if coefficients == CoefficientRing::Rationals {
                    out.presentation = Some(p.presentation.to_string());
                    out.hilbert_series = Some(p.hilbert_series.to_string());
                }
                out.dims = p.dims.0;
            } else {
                out.dims = bg_groups_dims(&lambda, *family, coefficients, *max_degree)
                    .map_err(|e| e.to_string())?
                    .0;
            }
            emit(json, &out, || {
                let mut t = format!(
                    "BG_lambda, {} family, lambda = {} (l = {}, m = {})\ncoefficients: {}\n",
                    out.family, out.lambda, out.l, out.m, out.coefficients
                );
                if let Some(p) = &out.presentation {
                    t += &format!("ring: {p}\n");
                }
                if let Some(h) = &out.hilbert_series {
                    t += &format!("Hilbert series: {h}\n");
                }
                let d: Vec<String> = out.dims.iter().map(ToString::to_string).collect();
                t + &format!("dims through degree {}: [{}]\n", out.max_degree, d.join(", "))
            })
        }
        Command::Verify { suite, max_degree, seed } => {
            let suites = Suite::parse_list(suite)?;
            let report = run_suites(&suites, *max_degree, *seed);
            let mut out = emit(json, &report, || report.table())?;
            if report.status == Status::Fail {
                out.code = 1;
            }
            Ok(out)
        }
        Command::CatalogDump => {
            let dump = catalog_dump().map_err(|e| e.to_string())?;
            let mut s = serde_json::to_string_pretty(&dump).map_err(|e| e.to_string())?;
            s.push('\n');
            Ok(RunOutput::ok(s))
        }
    }
}
