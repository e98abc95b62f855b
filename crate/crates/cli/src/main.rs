use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use cnstile::chains::verify_all;
use cnstile::contact::{
    approx_boundary, build_contact_graph, derive_order_extension, perron_data, polygon_is_simple, psi,
    walk_to_param, OrderedContactGraph, Walk, DEFAULT_WALK_BUDGET,
};
use cnstile::neighbors::{neighbor_set_formula, neighbor_set_search};
use cnstile::numsys::{normalize, point_eval, RawInstance};
use cnstile::render::{render_boundary, render_cutpoint, render_patch, DEFAULT_RENDER_LEVEL};
use cnstile::topology::{classify, cut_point_address, verify_cut_point_depth, Classification, DEFAULT_REPLAY_DEPTH};
use cnstile::{Error, RationalPoint, TileParams};
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "cnstile", version, about = "Topology of planar self-affine tiles with collinear digit sets")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output format on standard output.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Directory for file outputs.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct ParamArgs {
    /// Trace parameter: the characteristic polynomial is x² + Ax + B.
    #[arg(long = "A", allow_hyphen_values = true)]
    a: Option<i64>,
    #[arg(long = "B")]
    b: Option<i64>,
    /// Raw expanding matrix as "m11,m12;m21,m22".
    #[arg(long, conflicts_with_all = ["a", "b"])]
    matrix: Option<String>,
    /// Digit direction for --matrix, default "1,0".
    #[arg(long, requires = "matrix")]
    v: Option<String>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Bring an instance to companion form.
    Normalize(ParamArgs),
    /// Topological class from the 2A − B thresholds.
    Classify(ParamArgs),
    /// The neighbor set 𝒮.
    Neighbors {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum, default_value_t = Method::Formula)]
        method: Method,
    },
    /// The contact graph and its ordered extension, as JSON and DOT.
    ContactGraph(ParamArgs),
    /// Boundary parametrization at a parameter or along a walk.
    Param {
        #[command(flatten)]
        p: ParamArgs,
        /// Rational parameter in [0, 1], e.g. "1/3".
        #[arg(long, conflicts_with = "walk")]
        t: Option<String>,
        /// Walk in G°, e.g. "5;2,(6)".
        #[arg(long)]
        walk: Option<String>,
    },
    /// The polygon ∂𝒯ₙ.
    Approx {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_RENDER_LEVEL)]
        n: usize,
    },
    /// Cut-point certificate (2A − B ≥ 5).
    Cutpoint {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, default_value_t = DEFAULT_REPLAY_DEPTH)]
        depth: usize,
    },
    /// Chain and circular-chain checks (2A − B = 3).
    VerifyChains(ParamArgs),
    /// SVG figures.
    Render {
        #[command(flatten)]
        p: ParamArgs,
        #[arg(long, value_enum, default_value_t = Kind::Boundary)]
        kind: Kind,
        #[arg(long, default_value_t = DEFAULT_RENDER_LEVEL)]
        n: usize,
        /// Render every level 0..=n (requires --out).
        #[arg(long)]
        all_levels: bool,
    },
    /// Classification table over 0 ≤ A ≤ B ≤ Bmax.
    Sweep {
        #[arg(long = "Bmax", default_value_t = 12)]
        bmax: i64,
        /// Also run the cut-point certificate for every HasCutPoint pair.
        #[arg(long)]
        certify: bool,
        #[arg(long, default_value_t = DEFAULT_REPLAY_DEPTH)]
        depth: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Formula,
    Search,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Boundary,
    Patch,
    Cutpoint,
}

impl Kind {
    fn name(self) -> &'static str {
        match self {
            Kind::Boundary => "boundary",
            Kind::Patch => "patch",
            Kind::Cutpoint => "cutpoint",
        }
    }
}

enum Fail {
    Usage(String),
    Tile(Error),
    Io(std::io::Error),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        Fail::Tile(e)
    }
}

impl From<std::io::Error> for Fail {
    fn from(e: std::io::Error) -> Self {
        Fail::Io(e)
    }
}

type Res<T> = std::result::Result<T, Fail>;

fn exit_code(e: &Error) -> u8 {
    if e.is_regime() || matches!(e, Error::BudgetExceeded { .. } | Error::NonPeriodicWalk(_)) {
        2
    } else if e.is_verification() {
        3
    } else {
        1
    }
}

fn parse_pair(s: &str) -> Res<[i64; 2]> {
    let v: Vec<i64> = s
        .split(',')
        .map(|x| x.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Fail::Usage(format!("bad integer pair {s:?}: {e}")))?;
    v.try_into().map_err(|_| Fail::Usage(format!("expected two integers, got {s:?}")))
}

impl ParamArgs {
    fn raw(&self) -> Res<RawInstance> {
        match (&self.matrix, self.a, self.b) {
            (Some(m), _, _) => {
                let rows: Vec<&str> = m.split(';').collect();
                if rows.len() != 2 {
                    return Err(Fail::Usage(format!("matrix {m:?} must have two rows")));
                }
                let v = self.v.as_deref().map(parse_pair).transpose()?.unwrap_or([1, 0]);
                Ok(RawInstance::new([parse_pair(rows[0])?, parse_pair(rows[1])?], v))
            }
            (None, Some(a), Some(b)) => Ok(RawInstance::new([[0, -b], [1, -a]], [1, 0])),
            _ => Err(Fail::Usage("give --A and --B, or --matrix".into())),
        }
    }

    fn resolve(&self) -> Res<(TileParams, cnstile::numsys::AffineNormalization)> {
        normalize(&self.raw()?).map_err(|e| Fail::Usage(e.to_string()))
    }

    fn params(&self) -> Res<TileParams> {
        Ok(self.resolve()?.0)
    }
}

fn ordered(p: &TileParams) -> Res<OrderedContactGraph> {
    Ok(derive_order_extension(&build_contact_graph(p)?)?)
}

fn pt(p: &RationalPoint) -> Value {
    json!([p.x.to_string(), p.y.to_string()])
}

fn tag(p: &TileParams) -> String {
    format!("A{}_B{}", p.a, p.b)
}

struct Ctx {
    format: Format,
    out: Option<PathBuf>,
}

impl Ctx {
    fn write_file(&self, name: &str, contents: &str) -> Res<Option<PathBuf>> {
        let Some(dir) = &self.out else { return Ok(None) };
        fs::create_dir_all(dir)?;
        let path = dir.join(name);
        fs::write(&path, contents)?;
        Ok(Some(path))
    }

    fn write_json(&self, name: &str, v: &Value) -> Res<Option<PathBuf>> {
        self.write_file(name, &(serde_json::to_string_pretty(v).expect("json") + "\n"))
    }

    /// Prints `text` or the JSON summary.
    fn report(&self, text: &str, v: &Value) {
        let mut o = std::io::stdout().lock();
        let _ = match self.format {
            Format::Text => writeln!(o, "{text}"),
            Format::Json => writeln!(o, "{}", serde_json::to_string_pretty(v).expect("json")),
        };
    }
}

fn class_line(p: &TileParams) -> String {
    let c = classify(p);
    match (c, cut_point_address(p)) {
        (Classification::HasCutPoint, Ok(z)) => format!("{c} z={}", z.to_overline_string()),
        _ => c.to_string(),
    }
}

fn run(cli: Cli) -> Res<()> {
    let ctx = Ctx { format: cli.format, out: cli.out };
    match cli.cmd {
        Cmd::Normalize(pa) => {
            let (p, aff) = pa.resolve()?;
            let v = json!({
                "schema": "cnstile.normalize/v1",
                "A": p.a,
                "B": p.b,
                "reflected": p.reflected,
                "basis_change": aff.basis_change,
                "reflection": aff.reflection,
                "translation": pt(&aff.translation),
            });
            let text = format!(
                "A={} B={} reflected={}\nbasis_change={:?}\nreflection={:?}\ntranslation={}",
                p.a, p.b, p.reflected, aff.basis_change, aff.reflection, aff.translation
            );
            ctx.write_json(&format!("normalize_{}.json", tag(&p)), &v)?;
            ctx.report(&text, &v);
        }
        Cmd::Classify(pa) => {
            let p = pa.params()?;
            let c = classify(&p);
            let z = cut_point_address(&p).ok().filter(|_| c == Classification::HasCutPoint);
            let v = json!({
                "schema": "cnstile.classify/v1",
                "A": p.a,
                "B": p.b,
                "excess": p.excess(),
                "class": c.name(),
                "z": z.map(|z| z.to_string()),
            });
            ctx.report(&class_line(&p), &v);
        }
        Cmd::Neighbors { p: pa, method } => {
            let p = pa.params()?;
            let set = match method {
                Method::Formula => neighbor_set_formula(&p)?,
                Method::Search => neighbor_set_search(&p),
                Method::Both => {
                    let (f, s) = (neighbor_set_formula(&p)?, neighbor_set_search(&p));
                    if f.members != s.members {
                        return Err(Error::IdentityFailure("formula and search disagree".into()).into());
                    }
                    f
                }
            };
            let v = set.to_json();
            let text = set.members.iter().map(|s| format!("({}, {})", s.x(), s.y())).collect::<Vec<_>>().join("\n");
            ctx.write_json(&format!("neighbors_{}.json", tag(&p)), &v)?;
            ctx.report(&format!("J={} |S|={}\n{text}", set.j, set.len()), &v);
        }
        Cmd::ContactGraph(pa) => {
            let p = pa.params()?;
            let g = build_contact_graph(&p)?;
            let go = derive_order_extension(&g)?;
            let v = json!({
                "schema": "cnstile.contact-graph/v1",
                "graph": g.to_json(),
                "ordered": go.to_json(),
                "strongly_connected": g.is_strongly_connected(),
                "flip_symmetric": g.is_flip_symmetric(),
            });
            ctx.write_json(&format!("contact_{}.json", tag(&p)), &v)?;
            ctx.write_file(&format!("contact_{}.dot", tag(&p)), &g.to_dot())?;
            ctx.write_file(&format!("ordered_{}.dot", tag(&p)), &go.to_dot())?;
            ctx.report(&go.to_dot(), &v);
        }
        Cmd::Param { p: pa, t, walk } => {
            let p = pa.params()?;
            let go = ordered(&p)?;
            let data = perron_data(&go.graph)?;
            let f = &data.field;
            let (w, tv) = match (t, walk) {
                (Some(t), None) => {
                    let x: BigRational = t.parse().map_err(|_| Fail::Usage(format!("bad rational {t:?}")))?;
                    let tv = f.from_rational(x);
                    (cnstile::contact::param_to_walk(&tv, &data, &go)?, tv)
                }
                (None, Some(w)) => {
                    let w: Walk = w.parse()?;
                    let tv = walk_to_param(&w, &data, &go)?;
                    (w, tv)
                }
                _ => return Err(Fail::Usage("give exactly one of --t and --walk".into())),
            };
            let addr = psi(&w, &go)?;
            let x: RationalPoint = point_eval(&addr, &p);
            let v = json!({
                "schema": "cnstile.param/v1",
                "A": p.a,
                "B": p.b,
                "t": tv.to_string(),
                "t_approx": f.to_f64(&tv),
                "walk": w.to_string(),
                "address": addr.to_string(),
                "point": pt(&x),
            });
            let text = format!("t={} (≈{})\nwalk={}\naddress={}\npoint={}", tv, f.to_f64(&tv), w, addr.to_overline_string(), x);
            ctx.report(&text, &v);
        }
        Cmd::Approx { p: pa, n } => {
            let p = pa.params()?;
            let go = ordered(&p)?;
            let a = approx_boundary(&go, n, DEFAULT_WALK_BUDGET)?;
            let simple = polygon_is_simple(&a.vertices);
            let mut v = a.to_json();
            v["simple"] = json!(simple);
            ctx.write_json(&format!("approx_{}_n{n}.json", tag(&p)), &v)?;
            let text = format!(
                "n={n} walks={} vertices={} endpoints_match={} simple={simple}",
                a.walk_count,
                a.vertices.len(),
                a.endpoints_match
            );
            ctx.report(&text, &v);
            if !simple || !a.endpoints_match {
                return Err(Error::IdentityFailure(format!("∂T_{n} failed its checks")).into());
            }
        }
        Cmd::Cutpoint { p: pa, depth } => {
            let p = pa.params()?;
            let c = verify_cut_point_depth(&p, depth)?;
            let v = c.to_json();
            ctx.write_json(&format!("cutpoint_{}.json", tag(&p)), &v)?;
            let text = format!(
                "{} z={} value={}\nproduct states={} live cycles={} replay depth={}",
                c.automaton.kind.label(),
                c.z.to_overline_string(),
                c.value,
                c.automaton.states.len(),
                c.cycles.len(),
                c.replay.depth
            );
            ctx.report(&text, &v);
        }
        Cmd::VerifyChains(pa) => {
            let p = pa.params()?;
            let go = ordered(&p)?;
            let r = verify_all(&go)?;
            let v = r.to_json();
            ctx.write_json(&format!("chains_{}.json", tag(&p)), &v)?;
            let text = format!(
                "chain α_1..α_{b}: ok\n{}\ncircular chain: ok\n{}\nsubdivision lemma: ok ({} singletons)",
                r.chain.to_table(),
                r.circular.to_table(),
                r.subdivision.singletons,
                b = p.b
            );
            ctx.report(&text, &v);
        }
        Cmd::Render { p: pa, kind, n, all_levels } => {
            let p = pa.params()?;
            let f = match kind {
                Kind::Boundary => render_boundary,
                Kind::Patch => render_patch,
                Kind::Cutpoint => render_cutpoint,
            };
            if all_levels && ctx.out.is_none() {
                return Err(Fail::Usage("--all-levels needs --out".into()));
            }
            let levels: Vec<usize> = if all_levels { (0..=n).collect() } else { vec![n] };
            let mut files = Vec::new();
            for k in levels {
                let svg = f(&p, k)?;
                match ctx.write_file(&format!("{}_{}_n{k}.svg", kind.name(), tag(&p)), &svg)? {
                    Some(path) => files.push(path),
                    None => print!("{svg}"),
                }
            }
            if !files.is_empty() {
                let names: Vec<String> = files.iter().map(|f| f.display().to_string()).collect();
                ctx.report(&names.join("\n"), &json!({"schema": "cnstile.render/v1", "files": names}));
            }
        }
        Cmd::Sweep { bmax, certify, depth } => {
            if bmax < 2 {
                return Err(Fail::Usage("--Bmax must be at least 2".into()));
            }
            sweep(&ctx, bmax, certify, depth)?;
        }
    }
    Ok(())
}

fn code(c: Classification) -> &'static str {
    match c {
        Classification::DiskLike => "D",
        Classification::NoCutPointInteriorDisconnected => "N",
        Classification::HasCutPoint => "C",
        Classification::DegenerateRectangle => "R",
        Classification::SquareSpecialCase => "S",
    }
}

fn sweep(ctx: &Ctx, bmax: i64, certify: bool, depth: usize) -> Res<()> {
    let pairs: Vec<(i64, i64)> = (2..=bmax).flat_map(|b| (0..=b).map(move |a| (a, b))).collect();
    let rows: Vec<(TileParams, Classification, Option<Result<String, Error>>)> = pairs
        .par_iter()
        .map(|&(a, b)| {
            let p = TileParams::new(a, b).expect("grid parameters are valid");
            let c = classify(&p);
            let cert = (certify && c == Classification::HasCutPoint)
                .then(|| verify_cut_point_depth(&p, depth).map(|c| c.automaton.kind.label().to_string()));
            (p, c, cert)
        })
        .collect();
    let mut text = String::from("B\\A");
    for a in 0..=bmax {
        text += &format!(" {a:>3}");
    }
    for b in 2..=bmax {
        text += &format!("\n{b:>3}");
        for a in 0..=bmax {
            let cell = rows.iter().find(|(p, _, _)| p.a == a && p.b == b).map(|(_, c, cert)| {
                let mark = match cert {
                    Some(Ok(_)) => "+",
                    Some(Err(_)) => "!",
                    None => "",
                };
                format!("{}{mark}", code(*c))
            });
            text += &format!(" {:>3}", cell.unwrap_or_default());
        }
    }
    text += "\nD DiskLike, N NoCutPointInteriorDisconnected, C HasCutPoint, R DegenerateRectangle, S SquareSpecialCase";
    if certify {
        text += "\n+ certificate UNIQUE_POINT, ! certificate failed";
    }
    let v = json!({
        "schema": "cnstile.sweep/v1",
        "Bmax": bmax,
        "cells": rows.iter().map(|(p, c, cert)| json!({
            "A": p.a,
            "B": p.b,
            "class": c.name(),
            "z": cut_point_address(p).ok().filter(|_| *c == Classification::HasCutPoint).map(|z| z.to_string()),
            "certificate": cert.as_ref().map(|r| match r {
                Ok(l) => l.clone(),
                Err(e) => format!("error: {e}"),
            }),
        })).collect::<Vec<_>>(),
    });
    ctx.write_file("sweep.txt", &(text.clone() + "\n"))?;
    ctx.write_json("sweep.json", &v)?;
    ctx.report(&text, &v);
    if let Some(e) = rows.iter().find_map(|(_, _, c)| c.as_ref().and_then(|r| r.as_ref().err())) {
        return Err(e.clone().into());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Fail::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
        Err(Fail::Tile(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
