//! The `dualfive` command line: evaluation, group and surface reports, mesh
//! export and verification suites.

mod verify;

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

pub use verify::{run_suite, Check, Status, VerifyReport, SUITES};

use crate::betafun::{b4_gamma, b4_quadrature, b5_quadrature, product_factor, QuadratureSpec, C64};
use crate::contour::{phase_report, pochhammer_b4};
use crate::error::Error;
use crate::exactlin::MatRat;
use crate::meshout::{project, sample_surface, write_mesh, MeshFormat, SurfaceTarget};
use crate::tessellation::symmetric::{p_factor, q_float};
use crate::tessellation::symmetry::{averaged_form, g120, g240};

#[derive(Parser, Debug)]
#[command(name = "dualfive", version, about = "Dual five-point function: groups, surfaces, contours and numerics")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Evaluate B4 or B5 at given exponents.
    Eval(EvalArgs),
    /// Orders of the symmetry groups and the invariant form.
    Group(GroupArgs),
    /// Sample a surface, project it to 3 axes and write a mesh file.
    Surface(SurfaceArgs),
    /// Combinatorics of the phase surface built from 2^k sheets.
    Contour(ContourArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    /// `b4` or `b5`.
    pub function: String,
    /// Comma-separated exponents; complex entries as `re+imi`.
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: String,
    /// `gamma`, `quad` or `pochhammer` for b4; `quad` for b5.
    #[arg(long)]
    pub method: Option<String>,
    /// Loop radius for the Pochhammer contour.
    #[arg(long, default_value_t = 0.25)]
    pub r: f64,
    /// Absolute and relative quadrature tolerance.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct GroupArgs {
    /// `elements`, `q` or `p`.
    #[arg(long)]
    pub dump: Option<String>,
    /// With `--dump q`, print 70·Q.
    #[arg(long)]
    pub scaled: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct SurfaceArgs {
    /// single, double, symmetric, veronese21, veronese18 or b4.
    #[arg(long)]
    pub target: String,
    #[arg(long, default_value_t = 17)]
    pub n: usize,
    /// Three distinct 1-based coordinate indices.
    #[arg(long, default_value = "1,2,3")]
    pub project: String,
    #[arg(long, default_value = "obj")]
    pub format: String,
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ContourArgs {
    #[arg(long, default_value_t = 5)]
    pub k: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// all, group, tessellation, contour, betafun or mesh.
    #[arg(long, default_value = "all")]
    pub suite: String,
    #[arg(long)]
    pub json: bool,
}

/// A failed command: exit code and message.
#[derive(Debug)]
struct Failure(i32, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(2, e.to_string())
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure(2, msg.into())
}

/// Parses `1.5`, `-2`, `0.5+0.25i`, `-1e-3-2i`, `3i`.
pub fn parse_complex(s: &str) -> Option<C64> {
    let s = s.trim();
    let Some(body) = s.strip_suffix('i') else {
        return s.parse().ok().map(|x| C64::new(x, 0.0));
    };
    let split = body
        .char_indices()
        .rev()
        .find(|&(k, ch)| k > 0 && (ch == '+' || ch == '-') && !matches!(body.as_bytes()[k - 1], b'e' | b'E'))
        .map(|(k, _)| k);
    let (re, im) = match split {
        Some(k) => (body[..k].parse().ok()?, &body[k..]),
        None => (0.0, body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        x => x.parse().ok()?,
    };
    Some(C64::new(re, im))
}

fn parse_alpha(s: &str, n: usize) -> Result<Vec<C64>, Failure> {
    let v: Vec<C64> = s
        .split(',')
        .map(|t| parse_complex(t).ok_or_else(|| usage(format!("cannot parse exponent '{t}'; use re or re+imi"))))
        .collect::<Result<_, _>>()?;
    if v.len() != n {
        return Err(usage(format!("expected {n} exponents, got {}", v.len())));
    }
    Ok(v)
}

fn fmt_c(z: C64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else {
        format!("{}{:+}i", z.re, z.im)
    }
}

fn emit(out: &mut dyn Write, json: bool, value: Value, text: String) -> std::io::Result<()> {
    if json {
        writeln!(out, "{}", serde_json::to_string_pretty(&value).expect("plain JSON"))
    } else {
        writeln!(out, "{text}")
    }
}

fn cmd_eval(a: &EvalArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let mut spec = QuadratureSpec::default();
    if let Some(t) = a.tol {
        spec.abs_tol = t;
        spec.rel_tol = t;
    }
    let (value, method, err, extra) = match a.function.as_str() {
        "b4" => {
            let al = parse_alpha(&a.alpha, 2)?;
            let al = [al[0], al[1]];
            match a.method.as_deref().unwrap_or("gamma") {
                "gamma" => (b4_gamma(al)?, "gamma", None, None),
                "quad" => {
                    let e = b4_quadrature(al, &spec)?;
                    (e.value, "quad", Some(e.error), None)
                }
                "pochhammer" => {
                    let e = pochhammer_b4(al, a.r, 200_000)?;
                    let f = product_factor(&al);
                    let cont = (f.norm() > 1e-12).then(|| e.value / f);
                    (e.value, "pochhammer", Some(e.error), Some(cont))
                }
                m => return Err(usage(format!("unknown b4 method '{m}'; use gamma, quad or pochhammer"))),
            }
        }
        "b5" => {
            let al = parse_alpha(&a.alpha, 5)?;
            match a.method.as_deref().unwrap_or("quad") {
                "quad" => {
                    let e = b5_quadrature([al[0], al[1], al[2], al[3], al[4]], &spec)?;
                    (e.value, "quad", Some(e.error), None)
                }
                m => return Err(usage(format!("unknown b5 method '{m}'; use quad"))),
            }
        }
        f => return Err(usage(format!("unknown function '{f}'; use b4 or b5"))),
    };
    let mut j = json!({"value_re": value.re, "value_im": value.im, "method": method, "est_error": err});
    let mut text = format!("{}({}) = {}  [method={method}", a.function, a.alpha, fmt_c(value));
    if let Some(e) = err {
        text += &format!(" est_error={e:.1e}");
    }
    text += "]";
    if let Some(cont) = extra {
        j["continued_re"] = json!(cont.map(|c| c.re));
        j["continued_im"] = json!(cont.map(|c| c.im));
        match cont {
            Some(c) => text += &format!("\ncontour / product factor = {}", fmt_c(c)),
            None => text += "\nproduct factor vanishes; no continued value",
        }
    }
    emit(out, a.json, j, text).map_err(|e| Failure(2, e.to_string()))?;
    Ok(0)
}

fn rows_of(m: &MatRat, f: impl Fn(&crate::exactlin::Rational) -> String) -> Vec<String> {
    (0..m.rows()).map(|i| m.row(i).iter().map(&f).collect::<Vec<_>>().join(" ")).collect()
}

fn cmd_group(a: &GroupArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let (n, nn) = (g120().len(), g240().len());
    let mut j = json!({"order": n, "order_with_neg": nn});
    let mut text = format!("order(G)={n} order(G~)={nn}");
    match a.dump.as_deref() {
        None => {}
        Some("elements") => {
            let els: Vec<Vec<String>> = g120().iter().map(|g| rows_of(g, |x| x.to_string())).collect();
            for (k, e) in els.iter().enumerate() {
                text += &format!("\n# element {}\n{}", k + 1, e.join("\n"));
            }
            j["elements"] = json!(els);
        }
        Some("q") => {
            let q = averaged_form();
            let m = if a.scaled { q.scale(&crate::exactlin::int(70)) } else { q };
            let rows = rows_of(&m, |x| x.to_string());
            text += &format!("\n{}{}", if a.scaled { "70*Q =\n" } else { "Q =\n" }, rows.join("\n"));
            j["q"] = json!(rows);
            j["scaled"] = json!(a.scaled);
        }
        Some("p") => {
            let p = p_factor();
            let rows: Vec<Vec<f64>> = (0..6).map(|i| (0..6).map(|k| p[(i, k)]).collect()).collect();
            let res = (p.transpose() * p - q_float()).abs().max();
            text += "\nP =";
            for r in &rows {
                text += &format!("\n{}", r.iter().map(|x| format!("{x:>20.15}")).collect::<String>());
            }
            text += &format!("\nresidual max|P^T P - Q| = {res:.2e}");
            j["p"] = json!(rows);
            j["residual"] = json!(res);
        }
        Some(d) => return Err(usage(format!("unknown dump '{d}'; use elements, q or p"))),
    }
    emit(out, a.json, j, text).map_err(|e| Failure(2, e.to_string()))?;
    Ok(0)
}

fn cmd_surface(a: &SurfaceArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let target: SurfaceTarget = a.target.parse()?;
    let format: MeshFormat = a.format.parse()?;
    let axes: Vec<usize> = a
        .project
        .split(',')
        .map(|t| t.trim().parse().map_err(|_| Failure(2, format!("bad projection axes: cannot parse '{t}'"))))
        .collect::<Result<_, _>>()?;
    let axes: [usize; 3] = axes.try_into().map_err(|_| usage("bad projection axes: need exactly three"))?;
    let mesh = sample_surface(target, a.n)?;
    let dim = mesh.dim;
    let mesh = project(&mesh, axes)?;
    write_mesh(&mesh, format, &a.out)?;
    let j = json!({
        "target": a.target, "source_dim": dim, "vertices": mesh.vertices.len(), "faces": mesh.faces.len(),
        "polylines": mesh.polylines.len(), "groups": mesh.tags().len(), "path": a.out.display().to_string(),
    });
    let text = format!(
        "wrote {}: {} vertices, {} faces, {} polylines, {} groups (target {} in R^{dim}, axes {})",
        a.out.display(),
        mesh.vertices.len(),
        mesh.faces.len(),
        mesh.polylines.len(),
        mesh.tags().len(),
        a.target,
        a.project
    );
    emit(out, a.json, j, text).map_err(|e| Failure(2, e.to_string()))?;
    Ok(0)
}

fn cmd_contour(a: &ContourArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let r = phase_report(a.k)?;
    let text = if a.k == 2 {
        format!("k=2 loop: segments={} circles={} chi={} closed={}", r.edges, r.vertices, r.chi, r.connected)
    } else {
        let kind = match (r.orientable, r.genus, r.crosscaps) {
            (true, Some(g), _) => format!("orientable genus={g}"),
            (_, _, Some(c)) => format!("non-orientable crosscaps={c}"),
            _ => "unknown".into(),
        };
        format!(
            "k={} V={} E={} F={} chi={} {kind} connected={} holes={} holes_closed={}",
            r.k, r.vertices, r.edges, r.faces, r.chi, r.connected, r.holes, r.holes_closed
        )
    };
    let j = serde_json::to_value(&r).expect("plain record");
    emit(out, a.json, j, text).map_err(|e| Failure(2, e.to_string()))?;
    Ok(0)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let report = run_suite(&a.suite).ok_or_else(|| usage(format!("unknown suite '{}'; use all or one of {SUITES:?}", a.suite)))?;
    let mut text = String::new();
    for c in &report.checks {
        let s = if c.status == Status::Pass { "PASS" } else { "FAIL" };
        text += &format!("{s} {:<24} {} (value={:e}, tol={:e})\n", c.id, c.desc, c.value, c.tol);
    }
    let passed = report.checks.iter().filter(|c| c.status == Status::Pass).count();
    text += &format!("suite {}: {} ({passed}/{} checks)", report.suite, if report.pass { "PASS" } else { "FAIL" }, report.checks.len());
    let j = serde_json::to_value(&report).expect("plain record");
    emit(out, a.json, j, text).map_err(|e| Failure(2, e.to_string()))?;
    Ok(if report.pass { 0 } else { 1 })
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code: 0 on
/// success, 1 when a verification fails, 2 on usage or domain errors.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = if code == 0 { write!(out, "{e}") } else { write!(err, "{e}") };
            return code;
        }
    };
    let res = match &cli.command {
        Command::Eval(a) => cmd_eval(a, out),
        Command::Group(a) => cmd_group(a, out),
        Command::Surface(a) => cmd_surface(a, out),
        Command::Contour(a) => cmd_contour(a, out),
        Command::Verify(a) => cmd_verify(a, out),
    };
    match res {
        Ok(code) => code,
        Err(Failure(code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let (mut o, mut e) = (Vec::new(), Vec::new());
        let code = run(std::iter::once("dualfive").chain(args.iter().copied()), &mut o, &mut e);
        (code, String::from_utf8(o).unwrap(), String::from_utf8(e).unwrap())
    }

    #[test]
    fn complex_syntax() {
        assert_eq!(parse_complex("0.5"), Some(C64::new(0.5, 0.0)));
        assert_eq!(parse_complex("0.5+0.25i"), Some(C64::new(0.5, 0.25)));
        assert_eq!(parse_complex("-1e-3-2i"), Some(C64::new(-1e-3, -2.0)));
        assert_eq!(parse_complex("1e+2+1e-1i"), Some(C64::new(100.0, 0.1)));
        assert_eq!(parse_complex("3i"), Some(C64::new(0.0, 3.0)));
        assert_eq!(parse_complex("-i"), Some(C64::new(0.0, -1.0)));
        assert_eq!(parse_complex("1+i"), Some(C64::new(1.0, 1.0)));
        assert_eq!(parse_complex("abc"), None);
    }

    #[test]
    fn eval_b4_gamma() {
        let (code, out, _) = call(&["eval", "b4", "--alpha", "0.5,0.5", "--method", "gamma"]);
        assert_eq!(code, 0);
        assert!(out.contains("3.14159265"), "{out}");
    }

    #[test]
    fn eval_b5_json() {
        let (code, out, _) = call(&["eval", "b5", "--alpha", "1,1,1,1,1", "--method", "quad", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert!((v["value_re"].as_f64().unwrap() - 1.6449340668482264).abs() < 1e-8);
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn eval_pochhammer_vanishes() {
        let (code, out, _) = call(&["eval", "b4", "--alpha", "1,1", "--method", "pochhammer", "--json"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        let n = v["value_re"].as_f64().unwrap().hypot(v["value_im"].as_f64().unwrap());
        assert!(n <= 1e-8, "{n}");
        assert!(v["continued_re"].is_null());
    }

    #[test]
    fn domain_errors_exit_two() {
        let (code, _, err) = call(&["eval", "b4", "--alpha", "-0.5,0.5", "--method", "quad"]);
        assert_eq!(code, 2);
        assert!(err.contains("must be positive"), "{err}");
        assert_eq!(call(&["eval", "b4", "--alpha", "-1,0.5"]).0, 2);
        assert_eq!(call(&["eval", "b4", "--alpha", "1,2,3"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["contour", "--k", "1"]).0, 2);
        assert_eq!(call(&["verify", "--suite", "nope"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn group_reports() {
        let (code, out, _) = call(&["group"]);
        assert_eq!(code, 0);
        assert_eq!(out.trim(), "order(G)=120 order(G~)=240");
        let (_, out, _) = call(&["group", "--dump", "q", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["q"][0], "20 -6 -6 -6 -6 -6");
        let (_, out, _) = call(&["group", "--dump", "p"]);
        assert!(out.contains("residual"));
    }

    #[test]
    fn contour_reports() {
        let (code, out, _) = call(&["contour", "--k", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("V=40 E=80 F=32 chi=-8 orientable genus=5"), "{out}");
        let (_, out, _) = call(&["contour", "--k", "2"]);
        assert!(out.contains("segments=4"), "{out}");
        let (_, out, _) = call(&["contour", "--k", "5", "--json"]);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["chi"], -8);
        assert_eq!(v["genus"], 5);
    }

    #[test]
    fn surface_export() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("m.obj");
        let p = path.to_str().unwrap();
        let (code, out, _) = call(&["surface", "--target", "symmetric", "--n", "5", "--project", "1,2,3", "--format", "obj", "--out", p]);
        assert_eq!(code, 0, "{out}");
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().filter(|l| l.starts_with("g ")).count(), 24);
        let (code, _, err) = call(&["surface", "--target", "b4", "--n", "8", "--project", "1,2,9", "--out", p]);
        assert_eq!(code, 2);
        assert!(err.contains("axes"), "{err}");
        assert_eq!(call(&["surface", "--target", "torus", "--out", p]).0, 2);
        let ply = dir.path().join("c.ply");
        let code = call(&["surface", "--target", "b4", "--n", "8", "--project", "1,2,6", "--format", "ply", "--out", ply.to_str().unwrap()]).0;
        assert_eq!(code, 0);
    }

    #[test]
    fn verify_group_suite() {
        let (code, out, _) = call(&["verify", "--suite", "group", "--json"]);
        assert_eq!(code, 0, "{out}");
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["pass"], true);
        assert_eq!(v["suite"], "group");
        assert!(v["checks"].as_array().unwrap().len() >= 5);
    }
}
