//! The `berkline` command line front end.

use std::ffi::OsString;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use crate::affinoid::{components_of_union, is_cover, refine_cover, Affinoid};
use crate::berk::{boundary_affinoid, BerkPoint, Line, DEFAULT_DEPTH_CAP};
use crate::dot::export_dot;
use crate::error::{Error, Result};
use crate::magnitude::{int, set_base, Exponent, Magnitude, RealValue, DEFAULT_PRECISION_CAP};
use crate::parse::{fmt_cover, parse, parse_affinoid, parse_cover, parse_point, parse_polynomial, Expr};

const SCHEMA: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "berkline",
    version,
    about = "Exact computations on the Berkovich projective line"
)]
pub struct Cli {
    /// Base of the absolute value, |t| = 1/base.
    #[arg(long, global = true, default_value_t = 2)]
    pub base: u32,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Also print decimal approximations of real values.
    #[arg(long, global = true, value_name = "DIGITS")]
    pub approx: Option<u32>,
    #[arg(long, global = true, default_value_t = DEFAULT_DEPTH_CAP)]
    pub depth_cap: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_CAP)]
    pub precision_cap: usize,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse an expression and print its canonical form.
    Eval {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Path-length distance between two points.
    Dist { a: String, b: String },
    /// Chordal distance between two points.
    Chordal { a: String, b: String },
    /// Least upper bound of two points.
    Join { a: String, b: String },
    /// Whether the first point lies below the second.
    Leq { a: String, b: String },
    /// Branch point of three points.
    Median { a: String, b: String, c: String },
    /// Evenly spaced samples along the geodesic between two points.
    Path {
        a: String,
        b: String,
        #[arg(long, default_value_t = 4)]
        steps: usize,
    },
    /// The direction at a point containing each target.
    Directions {
        point: String,
        #[arg(required = true)]
        targets: Vec<String>,
    },
    /// Boundary points of a ball or affinoid.
    Boundary { region: String },
    /// Connected components of a union of affinoids separated by `|`.
    Components { family: String },
    /// Whether a family of affinoids covers the line.
    CoverCheck { cover: String },
    /// Refine an open cover. Accepts a literal, JSON, or `@file`.
    RefineCover { cover: String },
    /// Leading elements of the canonical neighborhood base of a point.
    FilterBase {
        point: String,
        #[arg(long, default_value_t = 3)]
        budget: usize,
    },
    /// Value of the multiplicative seminorm of a point on a polynomial in T.
    Seminorm {
        #[arg(allow_hyphen_values = true)]
        poly: String,
        point: String,
    },
    /// Graphviz rendering of the subtree spanned by the points.
    ExportDot {
        #[arg(required = true)]
        points: Vec<String>,
    },
}

struct Ctx {
    line: Line,
    json: bool,
    approx: Option<u32>,
}

impl Ctx {
    fn real(&self, v: &RealValue) -> String {
        match self.approx {
            Some(d) => format!("{} ~ {}", v, v.approx(d)),
            None => v.to_string(),
        }
    }

    fn real_json(&self, v: &RealValue) -> Value {
        let mut o = json!({ "exact": v.to_string() });
        if let Some(d) = self.approx {
            o["approx"] = json!(v.approx(d));
        }
        o
    }

    fn emit(&self, text: String, value: Value) -> String {
        if !self.json {
            return text;
        }
        let mut o = json!({ "schema": SCHEMA });
        if let Value::Object(m) = value {
            o.as_object_mut().unwrap().extend(m);
        }
        o.to_string()
    }
}

pub fn point_json(p: &BerkPoint) -> Value {
    let ty = match p.point_type() {
        Some(k) => json!(k),
        None => json!("inf"),
    };
    let mut o = json!({ "type": ty, "literal": p.to_string() });
    if let Some(n) = p.node() {
        o["center"] = json!(n.center.to_string());
        o["radius"] = json!(n.radius.to_string());
    }
    o
}

fn lines<T: ToString>(xs: &[T]) -> String {
    xs.iter().map(T::to_string).collect::<Vec<_>>().join("\n")
}

fn strings<T: ToString>(xs: &[T]) -> Value {
    json!(xs.iter().map(T::to_string).collect::<Vec<_>>())
}

/// Reads a cover from a literal, a JSON string or array, or `@path`.
fn read_cover(arg: &str) -> Result<Vec<Affinoid>> {
    let text = match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).map_err(|_| Error::Syntax {
            position: 0,
            expected: vec!["readable file".into()],
        })?,
        None => arg.to_string(),
    };
    let text = text.trim();
    if text.starts_with('[') || text.starts_with('"') {
        if let Ok(v) = serde_json::from_str::<Value>(text) {
            return cover_from_json(&v);
        }
    }
    parse_cover(text)
}

fn cover_from_json(v: &Value) -> Result<Vec<Affinoid>> {
    let bad = || Error::Syntax {
        position: 0,
        expected: vec!["cover JSON".into()],
    };
    match v {
        Value::String(s) => parse_cover(s),
        Value::Object(m) => cover_from_json(m.get("cover").ok_or_else(bad)?),
        Value::Array(items) => items
            .iter()
            .map(|item| match item {
                Value::String(s) => parse_affinoid(s),
                Value::Array(balls) => {
                    let parts: Option<Vec<&str>> = balls.iter().map(Value::as_str).collect();
                    let parts = parts.ok_or_else(bad)?;
                    if parts.is_empty() {
                        Ok(Affinoid::full())
                    } else {
                        parse_affinoid(&parts.join(" & "))
                    }
                }
                _ => Err(bad()),
            })
            .collect(),
        _ => Err(bad()),
    }
}

fn exponent_of(m: &Magnitude) -> Result<Exponent> {
    m.exponent().cloned().ok_or(Error::UnsupportedPointType)
}

/// Samples the geodesic `a -> a ∨ b -> b` at `steps + 1` points, evenly
/// spaced in the exponent of the diameter. A type 1 endpoint stands in for
/// one unit of exponent below the join.
pub fn path_points(line: &Line, a: &BerkPoint, b: &BerkPoint, steps: usize) -> Result<Vec<BerkPoint>> {
    let (na, nb) = match (a.node(), b.node()) {
        (Some(x), Some(y)) => (x, y),
        _ => {
            if matches!(a, BerkPoint::Infinity) || matches!(b, BerkPoint::Infinity) {
                return Err(Error::InfiniteOperand);
            }
            return Err(Error::UnsupportedPointType);
        }
    };
    let steps = steps.max(1);
    let j = line.join(a, b)?;
    if j.diam().is_zero() {
        return Ok(vec![a.clone(); steps + 1]);
    }
    let ej = exponent_of(&j.diam())?;
    let leg_start = |r: &Magnitude| -> Result<Exponent> {
        if r.is_zero() {
            Ok(&ej - &Exponent::from_int(1))
        } else {
            exponent_of(r)
        }
    };
    let (ea, eb) = (leg_start(&na.radius)?, leg_start(&nb.radius)?);
    let (la, lb) = (&ej - &ea, &ej - &eb);
    let total = &la + &lb;
    let mut out = Vec::with_capacity(steps + 1);
    for k in 0..=steps {
        if k == 0 {
            out.push(a.clone());
            continue;
        }
        if k == steps {
            out.push(b.clone());
            continue;
        }
        let p = total.scale(&(int(k as i64) / int(steps as i64)));
        let (center, e) = if p <= la {
            (na.center.clone(), &ea + &p)
        } else {
            (nb.center.clone(), &ej - &(&p - &la))
        };
        out.push(BerkPoint::from_node(center, Magnitude::base_pow(e)));
    }
    Ok(out)
}

fn run(ctx: &Ctx, cmd: &Command) -> Result<String> {
    let line = &ctx.line;
    Ok(match cmd {
        Command::Eval { expr } => {
            let e = parse(expr)?;
            let (kind, text) = match &e {
                Expr::Affinoid(balls) => ("affinoid", Affinoid::normalize(balls.clone())?.to_string()),
                Expr::Cover(c) => {
                    let members: Vec<Affinoid> = c
                        .iter()
                        .map(|b| Affinoid::normalize(b.clone()))
                        .collect::<Result<_>>()?;
                    ("cover", fmt_cover(&members))
                }
                Expr::Real(v) => ("real", ctx.real(v)),
                Expr::Series(_) => ("series", e.to_string()),
                Expr::Polynomial(_) => ("polynomial", e.to_string()),
                Expr::Magnitude(_) => ("magnitude", e.to_string()),
                Expr::Point(_) => ("point", e.to_string()),
                Expr::Ball(_) => ("ball", e.to_string()),
            };
            let value = match &e {
                Expr::Point(p) => point_json(p),
                Expr::Real(v) => ctx.real_json(v),
                _ => json!(text),
            };
            ctx.emit(text, json!({ "kind": kind, "value": value }))
        }
        Command::Dist { a, b } => {
            let d = line.delta(&parse_point(a)?, &parse_point(b)?)?;
            ctx.emit(ctx.real(&d), json!({ "dist": ctx.real_json(&d) }))
        }
        Command::Chordal { a, b } => {
            let d = line.chordal(&parse_point(a)?, &parse_point(b)?)?;
            ctx.emit(ctx.real(&d), json!({ "chordal": ctx.real_json(&d) }))
        }
        Command::Join { a, b } => {
            let j = line.join(&parse_point(a)?, &parse_point(b)?)?;
            ctx.emit(j.to_string(), json!({ "point": point_json(&j) }))
        }
        Command::Leq { a, b } => {
            let r = line.leq(&parse_point(a)?, &parse_point(b)?)?;
            ctx.emit(r.to_string(), json!({ "leq": r }))
        }
        Command::Median { a, b, c } => {
            let m = line.median(&parse_point(a)?, &parse_point(b)?, &parse_point(c)?)?;
            ctx.emit(m.to_string(), json!({ "point": point_json(&m) }))
        }
        Command::Path { a, b, steps } => {
            let ps = path_points(line, &parse_point(a)?, &parse_point(b)?, *steps)?;
            let js: Vec<Value> = ps.iter().map(point_json).collect();
            ctx.emit(lines(&ps), json!({ "points": js }))
        }
        Command::Directions { point, targets } => {
            let s = parse_point(point)?;
            let mut text = Vec::new();
            let mut js = Vec::new();
            for t in targets {
                let tp = parse_point(t)?;
                let d = line.direction(&s, &tp)?;
                text.push(format!("{}: {}", tp, d));
                js.push(json!({ "target": tp.to_string(), "direction": d.to_string() }));
            }
            ctx.emit(
                text.join("\n"),
                json!({ "point": point_json(&s), "directions": js }),
            )
        }
        Command::Boundary { region } => {
            let a = parse_affinoid(region)?;
            let pts = boundary_affinoid(&a);
            let js: Vec<Value> = pts.iter().map(point_json).collect();
            ctx.emit(lines(&pts), json!({ "region": a.to_string(), "boundary": js }))
        }
        Command::Components { family } => {
            let xs = parse_cover(family)?;
            let comps = components_of_union(&xs);
            let text: Vec<String> = comps
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let m: Vec<String> = c.members.iter().map(usize::to_string).collect();
                    format!("component {} (members {}): {}", k + 1, m.join(", "), c.union)
                })
                .collect();
            let js: Vec<Value> = comps
                .iter()
                .map(|c| json!({ "members": c.members, "union": c.union.to_string() }))
                .collect();
            ctx.emit(text.join("\n"), json!({ "components": js }))
        }
        Command::CoverCheck { cover } => {
            let c = read_cover(cover)?;
            let r = is_cover(&c);
            ctx.emit(r.to_string(), json!({ "cover": strings(&c), "is_cover": r }))
        }
        Command::RefineCover { cover } => {
            let c = read_cover(cover)?;
            let r = refine_cover(&c)?;
            let text = format!("eta: {}\n{}", r.eta, lines(&r.refined));
            ctx.emit(
                text,
                json!({ "cover": strings(&c), "refined": strings(&r.refined), "eta": r.eta.to_string() }),
            )
        }
        Command::FilterBase { point, budget } => {
            let s = parse_point(point)?;
            let base = line.filter_base(&s, *budget)?;
            ctx.emit(
                lines(&base),
                json!({ "point": point_json(&s), "base": strings(&base) }),
            )
        }
        Command::Seminorm { poly, point } => {
            let p = parse_polynomial(poly)?;
            let v = line.seminorm(&p, &parse_point(point)?)?;
            ctx.emit(
                v.to_string(),
                json!({ "polynomial": p.to_string(), "value": v.to_string() }),
            )
        }
        Command::ExportDot { points } => {
            let ps: Vec<BerkPoint> = points.iter().map(|s| parse_point(s)).collect::<Result<_>>()?;
            let dot = export_dot(line, &ps)?;
            if ctx.json {
                ctx.emit(String::new(), json!({ "dot": dot }))
            } else {
                dot.trim_end().to_string()
            }
        }
    })
}

/// Parses arguments, runs the command and returns `(exit code, stdout, stderr)`.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                (0, text, String::new())
            } else {
                (1, String::new(), text)
            };
        }
    };
    let ctx = Ctx {
        line: Line::new(cli.depth_cap, cli.precision_cap),
        json: cli.json,
        approx: cli.approx,
    };
    let result = set_base(cli.base).and_then(|_| run(&ctx, &cli.command));
    match result {
        Ok(out) => (0, out, String::new()),
        Err(e) => {
            let msg = if cli.json {
                json!({ "schema": SCHEMA, "error": { "code": e.exit_code(), "message": e.to_string() } })
                    .to_string()
            } else {
                format!("error: {}", e)
            };
            (e.exit_code(), String::new(), msg)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ok(args: &[&str]) -> String {
        let mut v = vec!["berkline"];
        v.extend_from_slice(args);
        let (code, out, err) = execute(v);
        assert_eq!(code, 0, "{}", err);
        out
    }

    fn code(args: &[&str]) -> i32 {
        let mut v = vec!["berkline"];
        v.extend_from_slice(args);
        execute(v).0
    }

    #[test]
    fn verb_examples() {
        assert_eq!(ok(&["join", "pt(0)", "pt(t)"]), "[0, b^-1]");
        assert_eq!(ok(&["chordal", "[0, b^0]", "inf"]), "1");
        let out = ok(&["components", "B(0,<b^-1) | B(1,<b^-1) | B(0,<1)"]);
        assert_eq!(out.lines().count(), 2);
        assert!(
            out.starts_with("component 1 (members 0, 2): B(0, < b^0)"),
            "{}",
            out
        );
    }

    #[test]
    fn json_schema() {
        let v: Value = serde_json::from_str(&ok(&["--json", "join", "pt(0)", "pt(t)"])).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["point"]["type"], 2);
        let v: Value = serde_json::from_str(&ok(&["--json", "join", "pt(0)", "inf"])).unwrap();
        assert_eq!(v["point"]["type"], "inf");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(code(&["join", "[0, b^-1", "pt(0)"]), 1);
        assert_eq!(code(&["frobnicate", "x"]), 1);
        assert_eq!(code(&["dist", "pt(0)", "inf"]), 2);
        assert_eq!(
            code(&[
                "--depth-cap",
                "3",
                "leq",
                "chain(std)",
                "[t^(1/2) + t^(2/3) + t^(3/4) + t^(4/5), b^-(4/5)]"
            ]),
            3
        );
    }

    #[test]
    fn path_samples() {
        let out = ok(&["path", "pt(0)", "pt(1)", "--steps", "2"]);
        assert_eq!(out, "pt(0)\n[0, b^0]\npt(1)");
        let out = ok(&["path", "[0, b^-2]", "[0, b^0]", "--steps", "2"]);
        assert_eq!(out, "[0, b^-2]\n[0, b^-1]\n[0, b^0]");
    }

    #[test]
    fn refine_cover_inputs() {
        let lit = ok(&["refine-cover", "B(0,<b^1) | B(0,>b^-1)"]);
        let js = ok(&["refine-cover", r#"[["B(0,<b^1)"], ["B(0,>b^-1)"]]"#]);
        assert_eq!(lit, js);
        let v: Value =
            serde_json::from_str(&ok(&["--json", "refine-cover", "B(0,<b^1) | B(0,>b^-1)"])).unwrap();
        assert!(v["refined"].as_array().unwrap().len() >= 2);
        assert!(v["eta"].as_str().unwrap().starts_with("b^"));
    }
}
