use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use ftbetti::betti::{sphere_closed_form, torus_closed_form};
use ftbetti::manifold_file::{load_manifold, manifold_to_json};
use ftbetti::torus::{theta0_model, theta_model};
use ftbetti::verify::{verify_structure, verify_theorem, StructureBounds};
use ftbetti::{
    assemble_differential, betti, betti_graded_only, build_model, enumerate_basis,
    poincare_series_coeffs, sphere_preset, torus_preset, BettiTable, Error, Family,
    ManifoldCohomology, ModelDga,
};

#[derive(Parser)]
#[command(name = "ftbetti", version, about = "Rational Betti numbers of unordered configuration spaces")]
struct Cli {
    /// Worker threads for rank computations.
    #[arg(long, global = true, env = "FTBETTI_JOBS")]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct Output {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Betti numbers of C_n(M), or of the auxiliary complexes `theta`/`theta0`.
    Betti {
        /// `torus`, `sphere:d=<k>`, `theta`, `theta0`, or a manifold JSON file.
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        n: Option<u32>,
        /// Top degree for `theta`/`theta0`.
        #[arg(long, default_value_t = 10)]
        i_max: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Compare torus Betti tables with the closed form for 2 ≤ n ≤ n-max.
    VerifyTheorem {
        #[arg(long, default_value_t = 12)]
        n_max: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Structural checks on the torus model and its auxiliary complexes.
    VerifyStructure {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 10)]
        degree_max: u32,
        #[command(flatten)]
        out: Output,
    },
    /// Print the manifold description (json) or the generators and differential (text).
    DumpModel {
        #[arg(long)]
        manifold: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Matrix of D: Ω_n^i → Ω_n^{i+1} in coordinate format.
    DumpMatrix {
        #[arg(long)]
        manifold: String,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        i: u32,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Poincaré series coefficients of a free graded-commutative algebra.
    Series {
        /// Comma-separated generator degrees, e.g. `1,1,3,2,2`.
        #[arg(long, value_delimiter = ',', required = true)]
        degrees: Vec<u32>,
        #[arg(long, default_value_t = 10)]
        i_max: u32,
        #[command(flatten)]
        out: Output,
    },
}

enum Outcome {
    Pass,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            eprintln!("error: cannot configure {jobs} worker threads: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli.command) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Consistency(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn run(command: Command) -> Result<Outcome, Error> {
    match command {
        Command::Betti {
            manifold,
            n,
            i_max,
            out,
        } => match manifold.as_str() {
            "theta" | "theta0" => {
                let dga = if manifold == "theta" { theta_model() } else { theta0_model() };
                let dims = betti_graded_only(&dga, i_max)?;
                emit(&out, &render_graded(&manifold, &dims, out.format))?;
                Ok(Outcome::Pass)
            }
            _ => {
                let n = n.ok_or_else(|| Error::Usage("betti needs --n".into()))?;
                let model = build_model(&resolve_manifold(&manifold)?)?;
                let report = BettiReport::new(&model, betti(&model, n)?);
                emit(&out, &report.render(out.format))?;
                Ok(if report.matches == Some(false) { Outcome::Mismatch } else { Outcome::Pass })
            }
        },
        Command::VerifyTheorem { n_max, out } => {
            let report = verify_theorem(n_max)?;
            let text = match out.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            emit(&out, &text)?;
            Ok(if report.all_passed { Outcome::Pass } else { Outcome::Mismatch })
        }
        Command::VerifyStructure {
            n_max,
            degree_max,
            out,
        } => {
            let report = verify_structure(StructureBounds { n_max, degree_max })?;
            let text = match out.format {
                Format::Json => report.to_json(),
                Format::Csv => report.to_csv(),
                Format::Text => report.to_text(),
            };
            emit(&out, &text)?;
            Ok(if report.all_passed { Outcome::Pass } else { Outcome::Mismatch })
        }
        Command::DumpModel {
            manifold,
            format,
            output,
        } => {
            let mc = resolve_manifold(&manifold)?;
            let model = build_model(&mc)?;
            let text = match format {
                Format::Json => manifold_to_json(&mc),
                Format::Text => describe_model(&model),
                Format::Csv => return Err(Error::Usage("dump-model supports json and text".into())),
            };
            write_to(output.as_deref(), &text)?;
            for w in model.warnings() {
                eprintln!("warning: {w}");
            }
            Ok(Outcome::Pass)
        }
        Command::DumpMatrix {
            manifold,
            n,
            i,
            output,
        } => {
            let model = build_model(&resolve_manifold(&manifold)?)?;
            let alg = model.algebra();
            let domain = enumerate_basis(alg, Some(n), i)?;
            let codomain = enumerate_basis(alg, Some(n), i + 1)?;
            let m = assemble_differential(model.dga(), &domain, &codomain)?;
            write_to(output.as_deref(), &m.to_matrix_market())?;
            Ok(Outcome::Pass)
        }
        Command::Series { degrees, i_max, out } => {
            let coeffs = poincare_series_coeffs(&degrees, i_max)?;
            let text = match out.format {
                Format::Json => {
                    let mut s = serde_json::to_string(&serde_json::json!({
                        "degrees": degrees,
                        "coefficients": coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    }))?;
                    s.push('\n');
                    s
                }
                Format::Csv => {
                    let mut s = String::from("i,coefficient\n");
                    for (i, c) in coeffs.iter().enumerate() {
                        s.push_str(&format!("{i},{c}\n"));
                    }
                    s
                }
                Format::Text => format!("{coeffs:?}\n"),
            };
            emit(&out, &text)?;
            Ok(Outcome::Pass)
        }
    }
}

fn resolve_manifold(spec: &str) -> Result<ManifoldCohomology, Error> {
    if spec == "torus" {
        return Ok(torus_preset());
    }
    if let Some(rest) = spec.strip_prefix("sphere:") {
        let d = rest
            .strip_prefix("d=")
            .and_then(|v| v.parse::<u32>().ok())
            .ok_or_else(|| Error::Usage(format!("expected sphere:d=<k>, got {spec:?}")))?;
        return sphere_preset(d);
    }
    let path = Path::new(spec);
    if !path.exists() {
        return Err(Error::Usage(format!(
            "{spec:?} is neither a preset (torus, sphere:d=<k>) nor an existing file"
        )));
    }
    load_manifold(path)
}

#[derive(Serialize)]
struct BettiReport {
    manifold: String,
    n: u32,
    slice_dims: Vec<usize>,
    ranks: Vec<usize>,
    betti: Vec<usize>,
    closed_form: Option<Vec<u64>>,
    #[serde(rename = "match")]
    matches: Option<bool>,
    euler: i64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    notes: Vec<String>,
}

impl BettiReport {
    fn new(model: &ModelDga, t: BettiTable) -> Self {
        let len = t.dims.len() as u32;
        let closed_form: Option<Vec<u64>> = match model.cohomology().family() {
            Family::Surface { genus: 1 } if t.n >= 2 => {
                (0..len).map(|i| torus_closed_form(t.n, i)).collect::<Result<_, _>>().ok()
            }
            Family::EvenSphere { d } if t.n >= 3 => {
                (0..len).map(|i| sphere_closed_form(d, t.n, i)).collect::<Result<_, _>>().ok()
            }
            _ => None,
        };
        let matches = closed_form
            .as_ref()
            .map(|cf| cf.iter().zip(&t.dims).all(|(&c, &b)| c == b as u64));
        BettiReport {
            manifold: t.manifold.clone(),
            n: t.n,
            euler: t.euler_from_slices(),
            slice_dims: t.slice_dims,
            ranks: t.ranks,
            betti: t.dims,
            closed_form,
            matches,
            notes: t.notes,
        }
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("report serializes");
                s.push('\n');
                s
            }
            Format::Csv => {
                let mut s = String::from("n,i,slice_dim,rank,betti,closed_form,match\n");
                for i in 0..self.betti.len() {
                    let (cf, ok) = match &self.closed_form {
                        Some(cf) => (cf[i].to_string(), (cf[i] == self.betti[i] as u64).to_string()),
                        None => (String::new(), String::new()),
                    };
                    s.push_str(&format!(
                        "{},{},{},{},{},{},{}\n",
                        self.n, i, self.slice_dims[i], self.ranks[i], self.betti[i], cf, ok
                    ));
                }
                s
            }
            Format::Text => self.to_text(),
        }
    }

    fn to_text(&self) -> String {
        let mut s = format!("manifold {}  n = {}\n", self.manifold, self.n);
        s.push_str("   i  dim Ω^i   rank D      b_i");
        if self.closed_form.is_some() {
            s.push_str("  closed form");
        }
        s.push('\n');
        for i in 0..self.betti.len() {
            s.push_str(&format!(
                "{:>4} {:>8} {:>8} {:>8}",
                i, self.slice_dims[i], self.ranks[i], self.betti[i]
            ));
            if let Some(cf) = &self.closed_form {
                let mark = if cf[i] == self.betti[i] as u64 { "✓" } else { "✗" };
                s.push_str(&format!(" {:>12} {mark}", cf[i]));
            }
            s.push('\n');
        }
        let last = self.betti.iter().rposition(|&b| b != 0).map_or(0, |k| k + 1);
        s.push_str(&format!("betti = {:?}\n", &self.betti[..last]));
        s.push_str(&format!("euler = {}\n", self.euler));
        for note in &self.notes {
            s.push_str(&format!("note: {note}\n"));
        }
        s
    }
}

fn render_graded(name: &str, dims: &[usize], format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(&serde_json::json!({ "complex": name, "betti": dims }))
                .expect("report serializes");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = String::from("i,betti\n");
            for (i, d) in dims.iter().enumerate() {
                s.push_str(&format!("{i},{d}\n"));
            }
            s
        }
        Format::Text => format!("{name}: betti = {dims:?}\n"),
    }
}

fn describe_model(model: &ModelDga) -> String {
    let alg = model.algebra();
    let mut s = format!("model of {}\n", model.name());
    for g in alg.generators() {
        let image = model
            .differential()
            .image(g.index);
        s.push_str(&format!(
            "{:<12} degree {:>3}  weight {}  D = {}\n",
            g.name,
            g.degree,
            g.weight.map_or_else(|| "-".to_string(), |w| w.to_string()),
            image
        ));
    }
    for w in model.warnings() {
        s.push_str(&format!("warning: {w}\n"));
    }
    s
}

fn emit(out: &Output, text: &str) -> Result<(), Error> {
    write_to(out.output.as_deref(), text)
}

fn write_to(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text)?,
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(())
}
