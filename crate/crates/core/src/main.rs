use clap::{Args, Parser, Subcommand, ValueEnum};
use cubiczeta::bsd::{compute_mr, p1_from_mr};
use cubiczeta::fermat::{fermat_fano_zeta, fermat_fourfold_fano_zeta, fermat_p0, fermat_small_counts};
use cubiczeta::geometry::*;
use cubiczeta::gf::{FieldCtx, FieldElem};
use cubiczeta::nodal::{h_poly_search, nodal_fano_count, node_curve_auto, node_h_polynomial};
use cubiczeta::search::{find_lineless, histogram, SearchConfig, SearchTarget};
use cubiczeta::weil::{artin_tate, classify_abelian, picard_number, verify_weil, WeilPolynomial};
use cubiczeta::zeta::*;
use cubiczeta::{Error, Result};
use num_bigint::BigInt;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "cubiczeta",
    version,
    about = "Points, lines and zeta functions of cubic hypersurfaces over finite fields"
)]
struct Cli {
    /// Base field as `p` or `p^r`; overrides a `field` line in the cubic file.
    #[arg(long, global = true)]
    field: Option<String>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ViaArg {
    Bsd,
    Count,
}

#[derive(Args)]
struct CubicArg {
    /// Cubic file: coefficient/exponent rows, an expression in x1..xm, or JSON.
    #[arg(long)]
    cubic: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Point counts N_1..N_rmax.
    Count {
        #[command(flatten)]
        cubic: CubicArg,
        #[arg(long, default_value_t = 1)]
        rmax: u32,
    },
    /// Lines defined over F_{q^k}.
    Lines {
        #[command(flatten)]
        cubic: CubicArg,
        #[arg(long, default_value_t = 1)]
        k: u32,
        /// Also compute the count from point counts, assuming smoothness.
        #[arg(long)]
        gs: bool,
        #[arg(long)]
        list: bool,
    },
    /// Zeta functions of a cubic threefold and of its surface of lines.
    Zeta {
        #[command(flatten)]
        cubic: CubicArg,
        #[arg(long, value_enum, default_value = "bsd")]
        via: ViaArg,
        /// Number of predicted point and line counts to print.
        #[arg(long, default_value_t = 3)]
        rmax: usize,
    },
    /// M_r from the discriminant quintic of a line.
    Bsd {
        #[command(flatten)]
        cubic: CubicArg,
        /// Two points spanning the line, e.g. "1,0,0,0,0;0,1,0,0,0" (default: first F_q-line).
        #[arg(long)]
        line: Option<String>,
        #[arg(long, default_value_t = 5)]
        rmax: u32,
    },
    /// Classify P_1 of a cubic threefold, or a given Weil polynomial.
    Classify {
        #[arg(long, conflicts_with = "poly")]
        cubic: Option<String>,
        /// Comma-separated integer coefficients, constant term first.
        #[arg(long, allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 1)]
        weight: u32,
    },
    /// Line count of a one-nodal threefold from the curve at the node.
    Nodal {
        #[command(flatten)]
        cubic: CubicArg,
    },
    /// Quartic H-polynomials compatible with a line-free one-nodal cubic.
    Hsearch {
        #[arg(long)]
        q: Option<u64>,
    },
    /// Closed forms for the Fermat cubic.
    Fermat {
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = 3)]
        n: usize,
    },
    /// Lower and upper bounds on the number of F_q-lines.
    Bounds {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Average number of F_q-lines on degree-d hypersurfaces in P^{n+1}.
    Average {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        d: usize,
    },
    /// Seeded search for cubics with no F_q-lines; appends NDJSON.
    Search {
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Candidates to draw.
        #[arg(long, default_value_t = 10_000)]
        budget: u64,
        /// Keep singular cubics too.
        #[arg(long)]
        all: bool,
        /// NDJSON results file (default: stdout).
        #[arg(long)]
        out: Option<String>,
    },
    /// Distribution of F_q-line counts over seeded random cubics.
    Histogram {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 10_000)]
        samples: u64,
        #[arg(long)]
        all: bool,
        /// Write `lines,frequency` rows here.
        #[arg(long)]
        csv: Option<String>,
    },
}

struct Ctx {
    field: Option<FieldCtx>,
    seed: u64,
}

impl Ctx {
    fn field(&self) -> Result<&FieldCtx> {
        self.field.as_ref().ok_or_else(|| Error::Precondition("--field is required".into()))
    }

    fn q(&self, q: Option<u64>) -> Result<u64> {
        match q {
            Some(q) => Ok(q),
            None => Ok(self.field()?.q() as u64),
        }
    }

    fn cubic(&self, path: &str) -> Result<CubicForm> {
        let s = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{path}: {e}")))?;
        match &self.field {
            // the command line wins over the file header
            Some(k) => {
                let stripped: String =
                    s.lines().filter(|l| !l.trim_start().starts_with("field")).collect::<Vec<_>>().join("\n");
                CubicForm::parse_any(&stripped, Some(k))
            }
            None => CubicForm::parse_any(&s, None),
        }
    }
}

fn strs(v: &[BigInt]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

/// Splits at top-level commas, so `[1,0],[0,1]` gives two parts.
fn split_coords(s: &str) -> Vec<String> {
    let mut out = vec![String::new()];
    let mut depth = 0;
    for c in s.chars() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(String::new());
                continue;
            }
            _ => {}
        }
        out.last_mut().unwrap().push(c);
    }
    out
}

fn parse_line(k: &FieldCtx, s: &str) -> Result<ProjLine> {
    let pts: Vec<&str> = s.split(';').collect();
    if pts.len() != 2 {
        return Err(Error::Parse(format!("expected two points separated by ';', got {s:?}")));
    }
    let row = |p: &str| -> Result<Vec<FieldElem>> {
        let p = p.trim().trim_start_matches('(').trim_end_matches(')');
        split_coords(p).iter().map(|c| k.parse(c.trim())).collect()
    };
    ProjLine::span(k, &row(pts[0])?, &row(pts[1])?)
}

fn gs_count(x: &CubicForm, r: u32) -> Result<BigInt> {
    let counts: BTreeMap<u32, BigInt> =
        (1..=2 * r).map(|i| count_points(x, i).map(|c| (i, BigInt::from(c)))).collect::<Result<_>>()?;
    let none = (1..=r).map(|i| (i, BigInt::from(0))).collect();
    lines_via_gs(&counts, &none, x.n(), x.field().q() as u64, r)
}

fn run(cmd: &Cmd, ctx: &Ctx) -> Result<Value> {
    match cmd {
        Cmd::Count { cubic, rmax } => {
            let x = ctx.cubic(&cubic.cubic)?;
            let counts: Vec<u64> = (1..=*rmax).map(|r| count_points(&x, r)).collect::<Result<_>>()?;
            Ok(json!({"field": x.field().spec_string(), "n": x.n(), "counts": counts}))
        }
        Cmd::Lines { cubic, k, gs, list } => {
            let x = ctx.cubic(&cubic.cubic)?;
            let lines = enumerate_lines_with(&x, *k, DEFAULT_BUDGET)?;
            let mut out = json!({"field": x.field().spec_string(), "k": k, "lines": lines.len()});
            if *gs {
                let g = gs_count(&x, *k)?;
                if g != BigInt::from(lines.len()) {
                    return Err(Error::Verification(format!(
                        "{} lines enumerated, {g} from point counts",
                        lines.len()
                    )));
                }
                out["gs"] = json!(g.to_string());
            }
            if *list {
                out["list"] = Value::Array(lines.iter().map(|l| l.to_json()).collect());
            }
            Ok(out)
        }
        Cmd::Zeta { cubic, via, rmax } => {
            let x = ctx.cubic(&cubic.cubic)?;
            let via = match via {
                ViaArg::Bsd => Via::Bsd,
                ViaArg::Count => Via::Count,
            };
            let (m, p1) = threefold_p1(&x, via)?;
            let zx = zeta_threefold(&p1)?;
            let zf = zeta_fano_threefold(&p1)?;
            zx.verify()?;
            zf.verify()?;
            Ok(json!({
                "field": x.field().spec_string(),
                "M": m,
                "P1": p1.to_json(),
                "zeta_X": zx.to_json(),
                "zeta_F": zf.to_json(),
                "points": strs(&zx.predicted_counts(*rmax)),
                "lines": strs(&zf.predicted_counts(*rmax)),
            }))
        }
        Cmd::Bsd { cubic, line, rmax } => {
            let x = ctx.cubic(&cubic.cubic)?;
            let l = match line {
                Some(s) => parse_line(x.field(), s)?,
                None => enumerate_lines(&x, 1)?
                    .into_iter()
                    .next()
                    .ok_or_else(|| Error::Precondition("the cubic has no F_q-line".into()))?,
            };
            if !l.lies_on(&x) {
                return Err(Error::Precondition(format!("{} does not lie on the cubic", l.format())));
            }
            let m: Vec<i64> = (1..=*rmax).map(|r| compute_mr(&x, &l, r)).collect::<Result<_>>()?;
            let mut out = json!({"field": x.field().spec_string(), "line": l.to_json(), "M": m});
            if m.len() >= 5 {
                let p1 = p1_from_mr(&m[..5], x.field().q() as u64)?;
                out["P1"] = p1.to_json();
            }
            Ok(out)
        }
        Cmd::Classify { cubic, poly, q, weight } => {
            let p = match (cubic, poly) {
                (Some(c), _) => threefold_p1(&ctx.cubic(c)?, Via::Bsd)?.1,
                (None, Some(s)) => {
                    let c: Vec<BigInt> = s
                        .split(',')
                        .map(|t| t.trim().parse().map_err(|_| Error::Parse(format!("bad coefficient {t:?}"))))
                        .collect::<Result<_>>()?;
                    WeilPolynomial::new(c, *weight, ctx.q(*q)?)?
                }
                (None, None) => return Err(Error::Precondition("give --cubic or --poly".into())),
            };
            let verdict = verify_weil(&p);
            if !verdict.passed {
                return Err(Error::Verification(format!("{p} is not a Weil polynomial")));
            }
            let mut out = json!({"poly": p.to_json(), "weil": verdict.to_json()});
            match p.weight() {
                1 => out["classification"] = classify_abelian(&p)?.to_json(),
                2 => {
                    out["picard"] = picard_number(&p)?.to_json();
                    out["artin_tate"] = artin_tate(&p)?.to_json();
                }
                _ => {}
            }
            Ok(out)
        }
        Cmd::Nodal { cubic } => {
            let x = ctx.cubic(&cubic.cubic)?;
            let mut data = node_curve_auto(&x)?;
            let lines = nodal_fano_count(&data)?;
            let h = node_h_polynomial(&mut data)?;
            let brute = enumerate_lines(&x, 1)?.len() as u64;
            if brute != lines {
                return Err(Error::Verification(format!("{lines} lines from the node curve, {brute} enumerated")));
            }
            Ok(json!({"node": data.to_json(), "lines": lines, "H": strs(&h)}))
        }
        Cmd::Hsearch { q } => {
            let q = ctx.q(*q)?;
            let found = h_poly_search(q)?;
            Ok(json!({"q": q, "candidates": found.iter().map(|c| c.to_json()).collect::<Vec<_>>()}))
        }
        Cmd::Fermat { p, n } => {
            let mut out = json!({"p": p, "n": n});
            if *p != 3 {
                out["P0"] = fermat_p0(*n, *p)?.to_json();
            }
            match n {
                3 if *p != 3 => out["fano"] = fermat_fano_zeta(*p)?.to_json(),
                4 if *p != 3 => out["fano"] = fermat_fourfold_fano_zeta(*p)?.to_json(),
                _ => {}
            }
            if *p == 2 {
                out["small_counts"] = fermat_small_counts(*n)?.to_json();
            }
            Ok(out)
        }
        Cmd::Bounds { q, dim } => {
            let q = ctx.q(*q)?;
            match dim {
                3 => Ok(bound_threefold(q)?.to_json()),
                4 => Ok(bound_fourfold(q)?.to_json()),
                _ => Err(Error::Precondition(format!("--dim must be 3 or 4, got {dim}"))),
            }
        }
        Cmd::Average { q, n, d } => Ok(average_lines(*n, *d, ctx.q(*q)?)?.to_json()),
        Cmd::Search { n, budget, all, out } => {
            let cfg = SearchConfig {
                n: *n,
                field: ctx.field()?.clone(),
                budget: *budget,
                seed: ctx.seed,
                smooth_only: !all,
                target: SearchTarget::Lineless,
            };
            let hits = find_lineless(&cfg)?;
            let mut ndjson = serde_json::to_string(&json!({"config": cfg.to_json()})).unwrap() + "\n";
            for h in &hits {
                ndjson += &serde_json::to_string(&h.to_json()).unwrap();
                ndjson.push('\n');
            }
            if let Some(path) = out {
                let mut f = std::fs::OpenOptions::new()
                    .create(true)
                    .append(true)
                    .open(path)
                    .and_then(|mut f| f.write_all(ndjson.as_bytes()).map(|_| f))
                    .map_err(|e| Error::Precondition(format!("{path}: {e}")))?;
                f.flush().ok();
                Ok(json!({"config": cfg.to_json(), "hits": hits.len(), "out": path}))
            } else {
                print!("{ndjson}");
                Ok(Value::Null)
            }
        }
        Cmd::Histogram { n, samples, all, csv } => {
            let cfg = SearchConfig {
                n: *n,
                field: ctx.field()?.clone(),
                budget: *samples,
                seed: ctx.seed,
                smooth_only: !all,
                target: SearchTarget::Histogram,
            };
            let h = histogram(&cfg)?;
            if let Some(path) = csv {
                std::fs::write(path, h.to_csv()).map_err(|e| Error::Precondition(format!("{path}: {e}")))?;
            }
            Ok(json!({"config": cfg.to_json(), "histogram": h.to_json()}))
        }
    }
}

fn text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match v {
                    Value::Object(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        text(v, indent + 1, out);
                    }
                    Value::String(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    _ => out.push_str(&format!("{pad}{k}: {v}\n")),
                }
            }
        }
        Value::Null => {}
        _ => out.push_str(&format!("{pad}{v}\n")),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(t).build_global().expect("thread pool");
    }
    let field = match cli.field.as_deref().map(FieldCtx::from_spec).transpose() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let ctx = Ctx { field, seed: cli.seed };
    match run(&cli.cmd, &ctx) {
        Ok(v) => {
            if cli.text {
                let mut s = String::new();
                text(&v, 0, &mut s);
                print!("{s}");
            } else if !v.is_null() {
                println!("{}", serde_json::to_string_pretty(&v).unwrap());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Verification(_) => 2,
                Error::Budget(_) => 3,
                _ => 1,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinates_split_at_top_level() {
        assert_eq!(split_coords("1,[0,1],2"), vec!["1", "[0,1]", "2"]);
        let k = FieldCtx::new(3, 2).unwrap();
        let l = parse_line(&k, "(1,0,0,0,0);([0,1],1,0,0,0)").unwrap();
        assert_eq!(l.rows()[0][0], k.one());
    }
}
