//! Command-line front end. [`run`] does all the work so tests can drive it
//! in-process; `main` only forwards the exit code.
//!
//! Exit codes: 0 when the command succeeded and every checked inequality
//! holds, 1 when a check failed (the report is still printed), 2 on input or
//! precondition errors.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use toric_heights::koushnirenko::{
    bkgral_bounds, denso_check, koushnirenko_check, sylvester_resultant_check, LaurentSystem,
};
use toric_heights::nssbounds::{bk_afin_bound, nss_bounds, NssInput};
use toric_heights::numkernel::ExactLog;
use toric_heights::polytope::ExponentSet;
use toric_heights::toric::{sample_verify_minima, toric_report, SampleConfig};
use toric_heights::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "toric-heights",
    about = "Heights, degrees and successive minima of toric varieties"
)]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Digits after the decimal point in rendered logarithms.
    #[arg(long, global = true, default_value_t = 6)]
    decimals: u32,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Lattice data, face counts, successive minima and height bounds of X_A.
    Analyze { pointset: PathBuf },
    /// Sample torsion and rational points and compare against the minima.
    Verify {
        pointset: PathBuf,
        #[arg(long, default_value_t = 200)]
        torsion: usize,
        #[arg(long, default_value_t = 200)]
        rational: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 12)]
        max_order: u64,
        #[arg(long, default_value_t = 9)]
        coeff_bound: u64,
        #[arg(long, default_value_t = 8)]
        per_face: usize,
    },
    /// Arithmetic Koushnirenko inequality with Q-heights.
    Koush { system: PathBuf },
    /// Dense variant with Weil heights and d^(n-1).
    Denso { system: PathBuf },
    /// Degree and height bounds for Z(f_1..f_s) through X_A.
    Bkgral { pointset: PathBuf, system: PathBuf },
    /// Nullstellensatz and affine Koushnirenko bounds.
    Nss { system: PathBuf },
    /// Expand the Sylvester resultant and compare with the resultant bound.
    ResultantOracle {
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Debug, Serialize)]
struct Report {
    command: String,
    inputs_digest: String,
    payload: Value,
    decimals: u32,
}

struct Outcome {
    payload: Value,
    ok: bool,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Input {
        field: path.display().to_string(),
        message: format!("cannot read: {e}"),
    })
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// Hashes the command name, its parameters and the bytes of every input file.
struct Digest256(Sha256);

impl Digest256 {
    fn new(command: &str) -> Self {
        let mut h = Sha256::new();
        h.update(command.as_bytes());
        Digest256(h)
    }

    fn field(&mut self, name: &str, bytes: &[u8]) {
        self.0.update((name.len() as u64).to_le_bytes());
        self.0.update(name.as_bytes());
        self.0.update((bytes.len() as u64).to_le_bytes());
        self.0.update(bytes);
    }

    fn finish(self) -> String {
        hex::encode(self.0.finalize())
    }
}

fn execute(command: &Command) -> Result<(String, String, Outcome), Error> {
    Ok(match command {
        Command::Analyze { pointset } => {
            let text = read(pointset)?;
            let a = ExponentSet::from_json_str(&text)?;
            let mut d = Digest256::new("analyze");
            d.field("pointset", text.as_bytes());
            let out = Outcome {
                payload: to_value(&toric_report(&a)),
                ok: true,
            };
            ("analyze".into(), d.finish(), out)
        }
        Command::Verify {
            pointset,
            torsion,
            rational,
            seed,
            max_order,
            coeff_bound,
            per_face,
        } => {
            let text = read(pointset)?;
            let a = ExponentSet::from_json_str(&text)?;
            let config = SampleConfig {
                torsion_samples: *torsion,
                rational_samples: *rational,
                max_order: *max_order,
                coeff_bound: *coeff_bound,
                per_face_samples: *per_face,
                seed: *seed,
            };
            let mut d = Digest256::new("verify");
            d.field("pointset", text.as_bytes());
            d.field("config", format!("{config:?}").as_bytes());
            let rep = sample_verify_minima(&a, &config)?;
            let out = Outcome {
                ok: rep.violations.is_empty(),
                payload: to_value(&rep),
            };
            ("verify".into(), d.finish(), out)
        }
        Command::Koush { system } | Command::Denso { system } => {
            let text = read(system)?;
            let sys = LaurentSystem::from_json_str(&text)?;
            let name = if matches!(command, Command::Koush { .. }) {
                "koush"
            } else {
                "denso"
            };
            let mut d = Digest256::new(name);
            d.field("system", text.as_bytes());
            let rep = if name == "koush" {
                koushnirenko_check(&sys)?
            } else {
                denso_check(&sys)?
            };
            let out = Outcome {
                ok: rep.ok,
                payload: to_value(&rep),
            };
            (name.into(), d.finish(), out)
        }
        Command::Bkgral { pointset, system } => {
            let pts = read(pointset)?;
            let sys_text = read(system)?;
            let a = ExponentSet::from_json_str(&pts)?;
            let sys = LaurentSystem::from_json_str(&sys_text)?;
            let mut d = Digest256::new("bkgral");
            d.field("pointset", pts.as_bytes());
            d.field("system", sys_text.as_bytes());
            let out = Outcome {
                payload: to_value(&bkgral_bounds(&a, sys.polys())?),
                ok: true,
            };
            ("bkgral".into(), d.finish(), out)
        }
        Command::Nss { system } => {
            let text = read(system)?;
            let sys = LaurentSystem::from_json_str(&text)?;
            let (input, support) = NssInput::from_polys(sys.nvars(), sys.polys())?;
            let mut d = Digest256::new("nss");
            d.field("system", text.as_bytes());
            let bounds = nss_bounds(&input);
            let mut payload = json!({
                "input": to_value(&input),
                "support": to_value(&support),
                "nss": to_value(&bounds),
            });
            match bk_afin_bound(input.n, input.d, &input.h, &input.vol) {
                Ok(b) => payload["bk_afin"] = to_value(&b),
                Err(e @ Error::Precondition { .. }) => {
                    payload["bk_afin_unavailable"] = Value::from(e.to_string())
                }
                Err(e) => return Err(e),
            }
            ("nss".into(), d.finish(), Outcome { payload, ok: true })
        }
        Command::ResultantOracle { degree } => {
            let mut d = Digest256::new("resultant-oracle");
            d.field("degree", degree.to_string().as_bytes());
            let rep = sylvester_resultant_check(*degree)?;
            let out = Outcome {
                ok: rep.ok,
                payload: to_value(&rep),
            };
            ("resultant-oracle".into(), d.finish(), out)
        }
    })
}

fn is_exact_log(map: &Map<String, Value>) -> bool {
    map.len() == 3
        && map.contains_key("terms")
        && map.contains_key("exact")
        && map.contains_key("decimal")
}

/// Re-renders every serialized [`ExactLog`] at `digits` decimals.
fn set_decimals(v: &mut Value, digits: u32) {
    match v {
        Value::Object(map) if is_exact_log(map) => {
            if let Ok(x) = ExactLog::from_json_value(&Value::Object(map.clone())) {
                map.insert("decimal".into(), Value::from(x.to_decimal(digits)));
            }
        }
        Value::Object(map) => map.values_mut().for_each(|x| set_decimals(x, digits)),
        Value::Array(items) => items.iter_mut().for_each(|x| set_decimals(x, digits)),
        _ => {}
    }
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if is_exact_log(m) => Some(format!(
            "{}  (~ {})",
            m["exact"].as_str().unwrap_or_default(),
            m["decimal"].as_str().unwrap_or_default()
        )),
        Value::Array(items) => {
            let parts: Option<Vec<String>> = items
                .iter()
                .map(|x| {
                    if x.is_array()
                        && !x
                            .as_array()?
                            .iter()
                            .all(|y| scalar(y).is_some() && !y.is_array())
                    {
                        None
                    } else {
                        scalar(x)
                    }
                })
                .collect();
            parts.map(|p| format!("[{}]", p.join(", ")))
        }
        Value::Object(_) => None,
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    if let Some(s) = scalar(v) {
        out.push((prefix.to_string(), s));
        return;
    }
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(items) => items
            .iter()
            .enumerate()
            .for_each(|(i, x)| flatten(&format!("{prefix}[{i}]"), x, out)),
        _ => unreachable!("scalars handled above"),
    }
}

fn render_text(report: &Report) -> String {
    let mut rows = vec![
        ("command".to_string(), report.command.clone()),
        ("inputs_digest".to_string(), report.inputs_digest.clone()),
    ];
    flatten("", &report.payload, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    let mut s = String::new();
    for (k, v) in rows {
        s.push_str(&format!("{k:<width$}  {v}\n"));
    }
    s
}

/// Parses `args` (including the program name), runs the command and writes
/// the report to `out` and diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let (command, inputs_digest, outcome) = match execute(&cli.command) {
        Ok(x) => x,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let mut payload = outcome.payload;
    set_decimals(&mut payload, cli.decimals);
    let report = Report {
        command,
        inputs_digest,
        payload,
        decimals: cli.decimals,
    };
    let text = if cli.json {
        let mut s = serde_json::to_string_pretty(&report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        render_text(&report)
    };
    if out.write_all(text.as_bytes()).is_err() {
        return EXIT_INPUT;
    }
    if outcome.ok {
        EXIT_OK
    } else {
        EXIT_CHECK_FAILED
    }
}
