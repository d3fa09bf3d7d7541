//! `qqcluster`: every verification as a command emitting JSON-line
//! certificates, followed by a summary table.
//!
//! Exit codes: 0 all certificates pass, 1 some certificate fails, 2 usage or
//! input error, 3 term budget exceeded.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use qqcluster::cert::Certificate;
use qqcluster::gvector::{braid_check, compare_three_ways, knit, mesh_check, stabilized_blocks, stabilized_via_braid, t_factor};
use qqcluster::qseries::{qq_instances, QEngine, DEFAULT_BUDGET};
use qqcluster::quiver::{basic_quiver, build_seed_quiver, coxeter_quiver_from_data, mutate_quiver, CoxeterQuiver, HeightConvention, VertexId};
use qqcluster::rootsys::{coxeter_data_from_word, is_reduced, reduced_words, RootSystem};
use qqcluster::seed::{sweep_check, Seed};
use qqcluster::sl2::{self, End};
use qqcluster::wronskian::{bruhat_minor_identity_check, check_wronskian, check_wronskian_for};
use qqcluster::{Error, Result};

const DEFAULT_R_MAX: i64 = 12;
const DEFAULT_DEPTH_BELOW: i64 = 48;

#[derive(Parser)]
#[command(name = "qqcluster", version, about = "Exact certificates for QQ-systems, stabilized g-vectors and their cluster structure")]
#[command(arg_required_else_help = true)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Global {
    /// Dynkin type, e.g. A3, D4, E6.
    #[arg(long = "type", global = true, default_value = "A2")]
    ty: String,
    /// Coxeter word, e.g. 1,2,3 (default: 1,…,n).
    #[arg(long, global = true, value_delimiter = ',')]
    coxeter: Option<Vec<usize>>,
    /// Spectral window `a..b` (inclusive).
    #[arg(long, global = true, value_parser = parse_range, allow_hyphen_values = true)]
    window: Option<(i64, i64)>,
    /// Series truncation depth.
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,
    /// Safety margin of windowed quivers.
    #[arg(long, global = true, default_value_t = 2)]
    margin: i64,
    /// Term budget for series products.
    #[arg(long, global = true, default_value_t = DEFAULT_BUDGET)]
    budget: usize,
    /// Seed for randomized batteries.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// JSON lines only, no summary table.
    #[arg(long, global = true)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Windowed quivers.
    #[command(subcommand)]
    Quiver(QuiverOp),
    /// Seeds with tracked g- and c-vectors.
    #[command(subcommand)]
    Seed(SeedOp),
    /// Stabilized g-vectors.
    #[command(subcommand)]
    Gvec(GvecOp),
    /// QQ-relations.
    #[command(subcommand)]
    Qq(QqOp),
    /// QQ*-relations.
    #[command(subcommand)]
    Qqstar(QqstarOp),
    /// Renormalized Q-variables.
    #[command(subcommand)]
    Qvar(QvarOp),
    /// Series labels of the Coxeter seed.
    #[command(name = "f-eval")]
    FEval,
    /// Segments, Ptolemy relations and factorization in rank one.
    #[command(subcommand)]
    Sl2(Sl2Op),
    /// Quantum Wronskians in type A.
    #[command(subcommand)]
    Wronskian(WronskianOp),
    /// Generalized minors on the open double Bruhat cell.
    #[command(subcommand)]
    Bruhat(BruhatOp),
}

#[derive(Subcommand)]
enum QuiverOp {
    /// Coxeter quiver, or a seed quiver with --word/--heights, or the basic quiver with --basic.
    Build {
        #[arg(long, value_delimiter = ',')]
        word: Option<Vec<usize>>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        heights: Option<Vec<i64>>,
        #[arg(long)]
        basic: bool,
    },
    /// Mutate the Coxeter quiver at each `(i,r)` in turn.
    Mutate {
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<VertexId>,
    },
}

#[derive(Subcommand)]
enum SeedOp {
    /// Green sweeps of the reference seed.
    Sweep {
        #[arg(long, default_value_t = 20)]
        sweeps: usize,
    },
    /// Mutate the seed (after `--sweeps` reference sweeps) at each `(i,r)`.
    Mutate {
        #[arg(long, default_value_t = 0)]
        sweeps: usize,
        #[arg(long = "at", required = true, allow_hyphen_values = true)]
        at: Vec<VertexId>,
    },
}

#[derive(Subcommand)]
enum GvecOp {
    Knit,
    Braid,
    Blocks,
    /// Blocks, knitting and braid action against each other.
    Compare,
}

#[derive(Subcommand)]
enum QqOp {
    /// One instance with --w/--i/--r, else every prefix of reduced words of w0 over the window.
    Verify(InstanceArgs),
}

#[derive(Subcommand)]
enum QqstarOp {
    /// One instance with --w/--i/--j/--r, else every admissible prefix over the window.
    Verify {
        #[command(flatten)]
        inst: InstanceArgs,
        #[arg(long)]
        j: Option<usize>,
    },
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, value_delimiter = ',')]
    w: Option<Vec<usize>>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<i64>,
    /// Number of reduced words of w0 whose prefixes are used.
    #[arg(long, default_value_t = 3)]
    words: usize,
}

#[derive(Subcommand)]
enum QvarOp {
    /// `Q̲_{w(ϖ_i),q^r}`, checked against the letter-by-letter evaluation along `w`.
    Eval {
        #[arg(long, value_delimiter = ',')]
        w: Option<Vec<usize>>,
        #[arg(long)]
        i: usize,
        #[arg(long, allow_hyphen_values = true)]
        r: i64,
    },
}

#[derive(Subcommand)]
enum Sl2Op {
    /// Factorize an ℓ-weight such as `0:1,4:-1,[2]` and round-trip it.
    Factor {
        #[arg(allow_hyphen_values = true)]
        monomial: String,
    },
    /// One Ptolemy relation `r s r' s'` (ends may be ±inf), else the whole grid over --window.
    Ptolemy {
        #[arg(num_args = 0..=4, allow_hyphen_values = true)]
        ends: Vec<String>,
    },
}

#[derive(Subcommand)]
enum WronskianOp {
    Check {
        #[arg(long = "r", value_parser = parse_range, allow_hyphen_values = true, default_value = "-4..4")]
        r: (i64, i64),
    },
}

#[derive(Subcommand)]
enum BruhatOp {
    Verify {
        #[arg(long, default_value_t = 3)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

fn parse_range(s: &str) -> std::result::Result<(i64, i64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got `{s}`"))?;
    let a: i64 = a.trim().parse().map_err(|_| format!("bad lower bound in `{s}`"))?;
    let b: i64 = b.trim().parse().map_err(|_| format!("bad upper bound in `{s}`"))?;
    if a > b {
        return Err(format!("empty range `{s}`"));
    }
    Ok((a, b))
}

struct Record {
    cert: Certificate,
    output: Option<Value>,
}

impl Record {
    fn bare(cert: Certificate) -> Self {
        Record { cert, output: None }
    }

    fn with(cert: Certificate, output: Value) -> Self {
        Record { cert, output: Some(output) }
    }
}

struct Ctx {
    g: Global,
    rs: RootSystem,
}

impl Ctx {
    fn coxeter_word(&self) -> Vec<usize> {
        self.g.coxeter.clone().unwrap_or_else(|| (1..=self.rs.n).collect())
    }

    /// `Γ_c` spanning `--window a..b`: `r_max = b`, bottom edge at `a`.
    fn coxeter_quiver(&self) -> Result<CoxeterQuiver> {
        let data = coxeter_data_from_word(&self.rs, &self.coxeter_word())?;
        let band_bottom = data.sorting_word().iter().map(|&(_, r)| r - 2).min().unwrap_or(0);
        let (r_max, depth_below) = match self.g.window {
            Some((a, b)) => (b, band_bottom - a),
            None => (DEFAULT_R_MAX, DEFAULT_DEPTH_BELOW),
        };
        let mut cq = coxeter_quiver_from_data(&self.rs, data, r_max, depth_below)?;
        cq.quiver.margin = self.g.margin;
        Ok(cq)
    }

    fn engine(&self) -> QEngine {
        QEngine::with_budget(&self.rs, self.g.depth, self.g.budget)
    }

    /// Spectral range for instance batteries: ten slices by default.
    fn r_range(&self) -> (i64, i64) {
        self.g.window.unwrap_or((-10, 9))
    }

    fn params(&self) -> Value {
        json!({ "type": self.rs.dynkin_type.to_string(), "coxeter": self.coxeter_word() })
    }
}

fn gmap<V: ToString>(m: &BTreeMap<VertexId, V>) -> Value {
    Value::Object(m.iter().map(|(v, g)| (v.to_string(), Value::String(g.to_string()))).collect())
}

fn quiver_cmd(ctx: &Ctx, op: &QuiverOp) -> Result<Vec<Record>> {
    match op {
        QuiverOp::Build { word, heights, basic } => {
            let (lo, hi) = ctx.g.window.unwrap_or((-24, DEFAULT_R_MAX));
            let mut params = ctx.params();
            let q = if *basic {
                params["kind"] = "basic".into();
                basic_quiver(&ctx.rs, lo, hi)?
            } else if let (Some(w), Some(h)) = (word, heights) {
                params["kind"] = "seed".into();
                params["word"] = json!(w);
                params["heights"] = json!(h);
                build_seed_quiver(&ctx.rs, lo, hi, w, h, HeightConvention::Final)?
            } else if word.is_some() || heights.is_some() {
                return Err(Error::Precondition("--word and --heights go together".into()));
            } else {
                params["kind"] = "coxeter".into();
                ctx.coxeter_quiver()?.quiver
            };
            params["vertices"] = q.num_vertices().into();
            Ok(vec![Record::with(Certificate::pass("quiver-build", params), serde_json::to_value(q.to_json())?)])
        }
        QuiverOp::Mutate { at } => {
            let mut q = ctx.coxeter_quiver()?.quiver;
            let mut params = ctx.params();
            params["at"] = json!(at.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            for &v in at {
                let next = mutate_quiver(&q, v)?;
                if mutate_quiver(&next, v)? != q {
                    return Ok(vec![Record::bare(Certificate::fail("quiver-mutate", params, format!("μ∘μ ≠ id at {v}")))]);
                }
                q = next;
            }
            Ok(vec![Record::with(Certificate::pass("quiver-mutate", params), serde_json::to_value(q.to_json())?)])
        }
    }
}

fn seed_cmd(ctx: &Ctx, op: &SeedOp) -> Result<Vec<Record>> {
    let cq = ctx.coxeter_quiver()?;
    match op {
        SeedOp::Sweep { sweeps } => {
            let (cert, s) = sweep_check(&ctx.rs, &cq, *sweeps)?;
            let band: BTreeMap<VertexId, _> = s.g.iter().filter(|(v, _)| v.r >= cq.band_bottom).map(|(v, g)| (*v, g.clone())).collect();
            Ok(vec![Record::with(cert, gmap(&band))])
        }
        SeedOp::Mutate { sweeps, at } => {
            let mut s = Seed::coxeter(&cq);
            for _ in 0..*sweeps {
                s.green_sweep()?;
            }
            let mut params = ctx.params();
            params["sweeps"] = (*sweeps).into();
            params["at"] = json!(at.iter().map(|v| v.to_string()).collect::<Vec<_>>());
            for &v in at {
                s.mutate_seed(v)?;
                if let Err(Error::Precondition(why)) = s.check_sign_coherence() {
                    return Ok(vec![Record::bare(Certificate::fail("seed-mutate", params, format!("after {v}: {why}")))]);
                }
            }
            Ok(vec![Record::with(Certificate::pass("seed-mutate", params), s.to_json())])
        }
    }
}

fn gvec_cmd(ctx: &Ctx, op: &GvecOp) -> Result<Vec<Record>> {
    let cq = ctx.coxeter_quiver()?;
    let mut params = ctx.params();
    params["window"] = json!([cq.quiver.r_min, cq.quiver.r_max]);
    match op {
        GvecOp::Knit => {
            let g = knit(&cq)?;
            // the mesh relation at every pair of greens four steps apart
            let greens = cq.quiver.greens();
            let mut failure = None;
            for v in &greens {
                if greens.contains(&VertexId::new(v.i, v.r - 4)) && !mesh_check(&cq, &g, v.i, v.r)? {
                    failure = Some(format!("mesh relation fails at {v}"));
                    break;
                }
            }
            Ok(vec![Record::with(Certificate::new("gvec-knit", params, failure), gmap(&g))])
        }
        GvecOp::Braid => {
            let (lo, hi) = (cq.quiver.r_min + ctx.g.margin + 4, cq.quiver.r_max - ctx.g.margin);
            let cert = braid_check(&ctx.rs, lo, hi);
            Ok(vec![Record::with(cert, gmap(&stabilized_via_braid(&ctx.rs, &cq.data)))])
        }
        GvecOp::Blocks => {
            let f = stabilized_blocks(&ctx.rs, &cq.data);
            // the lowest block is minus a permutation matrix
            let low = f.block(f.h_c);
            let perm = low.iter().all(|row| row.iter().filter(|&&x| x == -1).count() == 1 && row.iter().all(|&x| x == 0 || x == -1))
                && (0..f.n).all(|c| low.iter().filter(|row| row[c] == -1).count() == 1);
            let failure = (!perm).then(|| format!("G({}) = {low:?} is not minus a permutation matrix", f.h_c));
            let factors: BTreeMap<String, _> = (f.h_c..=-1).map(|m| (m.to_string(), t_factor(&ctx.rs, &cq.data, m))).collect();
            let blocks: BTreeMap<String, _> = (f.h_c..=-1).map(|m| (m.to_string(), f.block(m))).collect();
            params["h_c"] = f.h_c.into();
            Ok(vec![Record::with(Certificate::new("gvec-blocks", params, failure), json!({ "T": factors, "G": blocks }))])
        }
        GvecOp::Compare => {
            let lo = cq.quiver.r_min;
            let cmp = compare_three_ways(&ctx.rs, &cq, lo)?;
            params["checked"] = cmp.checked.into();
            let failure = cmp.mismatches.first().cloned();
            Ok(vec![Record::bare(Certificate::new("gvec-compare", params, failure))])
        }
    }
}

fn longest_words(rs: &RootSystem, count: usize) -> Vec<Vec<usize>> {
    reduced_words(rs, &rs.longest_element(), count)
}

fn qq_cmd(ctx: &Ctx, inst: &InstanceArgs) -> Result<Vec<Record>> {
    let e = ctx.engine();
    let d = ctx.g.depth;
    let instances = match (&inst.w, inst.i, inst.r) {
        (w, Some(i), Some(r)) => vec![qqcluster::qseries::QqInstance { w: w.clone().unwrap_or_default(), i, r }],
        (None, None, None) => {
            let (lo, hi) = ctx.r_range();
            qq_instances(&ctx.rs, &longest_words(&ctx.rs, inst.words), lo, hi)?
        }
        _ => return Err(Error::Precondition("give --i and --r (and optionally --w), or none of them".into())),
    };
    e.qq_batch(&instances, d).into_iter().map(|c| c.map(Record::bare)).collect()
}

fn qqstar_cmd(ctx: &Ctx, inst: &InstanceArgs, j: Option<usize>) -> Result<Vec<Record>> {
    let e = ctx.engine();
    let d = ctx.g.depth;
    let mut todo: Vec<(Vec<usize>, usize, usize, i64)> = Vec::new();
    match (inst.i, j, inst.r) {
        (Some(i), Some(j), Some(r)) => todo.push((inst.w.clone().unwrap_or_default(), i, j, r)),
        (None, None, None) if inst.w.is_none() => {
            let (lo, hi) = ctx.r_range();
            let lat = e.lattice().clone();
            let mut seen = std::collections::BTreeSet::new();
            for word in longest_words(&ctx.rs, inst.words) {
                for len in 0..=word.len() {
                    for i in 1..=ctx.rs.n {
                        for &j in lat.neighbors(i) {
                            let mut long = word[..len].to_vec();
                            long.extend([i, j, i]);
                            if !is_reduced(&ctx.rs, &long)? {
                                continue;
                            }
                            for r in (lo..=hi).filter(|&r| lat.in_v(i, r)) {
                                if seen.insert((word[..len].to_vec(), i, j, r)) {
                                    todo.push((word[..len].to_vec(), i, j, r));
                                }
                            }
                        }
                    }
                }
            }
        }
        _ => return Err(Error::Precondition("give --i, --j and --r (and optionally --w), or none of them".into())),
    }
    todo.iter().map(|(w, i, j, r)| e.qqstar_check(w, *i, *j, *r, d).map(Record::bare)).collect()
}

fn qvar_cmd(ctx: &Ctx, w: &[usize], i: usize, r: i64) -> Result<Vec<Record>> {
    let e = ctx.engine();
    let d = ctx.g.depth;
    let lat = e.lattice().clone();
    let by_weight = e.q_bar(&lat.apply_word(w, &lat.fundamental2(i)), r)?;
    let by_word = e.q_bar_word(w, i, r)?;
    let failure = by_weight.first_difference(&by_word, d)?.map(|why| format!("weight and word evaluations differ: {why}"));
    let params = json!({ "type": ctx.rs.dynkin_type.to_string(), "w": w, "i": i, "r": r, "depth": d });
    Ok(vec![Record::with(Certificate::new("qvar", params, failure), by_weight.to_json())])
}

fn f_eval_cmd(ctx: &Ctx) -> Result<Vec<Record>> {
    let cq = ctx.coxeter_quiver()?;
    let e = ctx.engine();
    let g = knit(&cq)?;
    let band: BTreeMap<VertexId, _> = g.into_iter().filter(|(v, _)| v.r >= cq.band_bottom && v.r <= cq.rim(v.i).r).collect();
    let by_braid = e.f_values(&cq, &band)?;
    let word: Vec<usize> = cq.data.sorting_word().iter().map(|x| x.0).collect();
    let by_columns = e.labels_from_word(&cq.quiver, &word)?;
    let mut failure = None;
    let mut labels = serde_json::Map::new();
    for (v, l) in &by_braid {
        match by_columns.get(v) {
            Some(c) if c.lam2 == l.lam2 && c.r == l.r => {}
            _ => {
                failure = Some(format!("{v}: braid and column labels differ"));
                break;
            }
        }
        labels.insert(v.to_string(), json!({ "word": l.word, "node": l.node, "lam2": l.lam2, "r": l.r }));
    }
    let mut params = ctx.params();
    params["depth"] = ctx.g.depth.into();
    Ok(vec![Record::with(Certificate::new("f-eval", params, failure), Value::Object(labels))])
}

fn sl2_cmd(ctx: &Ctx, op: &Sl2Op) -> Result<Vec<Record>> {
    let d = ctx.g.depth;
    match op {
        Sl2Op::Factor { monomial } => {
            let m = sl2::parse_monomial(monomial)?;
            let f = sl2::factorize(&m)?;
            Ok(vec![Record::with(sl2::roundtrip_check(&m, d)?, f.to_json())])
        }
        Sl2Op::Ptolemy { ends } => match ends.len() {
            4 => {
                let e: Vec<End> = ends.iter().map(|s| End::parse(s)).collect::<Result<_>>()?;
                Ok(vec![Record::bare(sl2::ptolemy_check(e[0], e[1], e[2], e[3], d)?)])
            }
            0 => {
                let (lo, hi) = ctx.g.window.unwrap_or((-5, 5));
                Ok(sl2::ptolemy_batch(lo, hi, d)?.into_iter().map(Record::bare).collect())
            }
            _ => Err(Error::Precondition("ptolemy takes four ends r s r' s' or none".into())),
        },
    }
}

fn wronskian_cmd(ctx: &Ctx, (lo, hi): (i64, i64)) -> Result<Vec<Record>> {
    let e = ctx.engine();
    let rs_range: Vec<i64> = (lo..=hi).filter(|&r| e.lattice().in_v(1, r)).collect();
    let standard: Vec<usize> = (1..=ctx.rs.n).collect();
    let cert = match &ctx.g.coxeter {
        Some(c) if *c != standard => check_wronskian_for(&e, c, &rs_range, ctx.g.depth)?,
        _ => check_wronskian(&e, &rs_range, ctx.g.depth)?,
    };
    Ok(vec![Record::bare(cert)])
}

fn run(cli: &Cli) -> Result<(String, Vec<Record>)> {
    let g = cli.global.clone();
    let rs = RootSystem::parse(&g.ty)?;
    let ctx = Ctx { g, rs };
    Ok(match &cli.command {
        Command::Quiver(op) => (format!("quiver {}", match op { QuiverOp::Build { .. } => "build", QuiverOp::Mutate { .. } => "mutate" }), quiver_cmd(&ctx, op)?),
        Command::Seed(op) => (format!("seed {}", match op { SeedOp::Sweep { .. } => "sweep", SeedOp::Mutate { .. } => "mutate" }), seed_cmd(&ctx, op)?),
        Command::Gvec(op) => {
            let name = match op {
                GvecOp::Knit => "knit",
                GvecOp::Braid => "braid",
                GvecOp::Blocks => "blocks",
                GvecOp::Compare => "compare",
            };
            (format!("gvec {name}"), gvec_cmd(&ctx, op)?)
        }
        Command::Qq(QqOp::Verify(inst)) => ("qq verify".into(), qq_cmd(&ctx, inst)?),
        Command::Qqstar(QqstarOp::Verify { inst, j }) => ("qqstar verify".into(), qqstar_cmd(&ctx, inst, *j)?),
        Command::Qvar(QvarOp::Eval { w, i, r }) => ("qvar eval".into(), qvar_cmd(&ctx, w.as_deref().unwrap_or(&[]), *i, *r)?),
        Command::FEval => ("f-eval".into(), f_eval_cmd(&ctx)?),
        Command::Sl2(op) => (format!("sl2 {}", match op { Sl2Op::Factor { .. } => "factor", Sl2Op::Ptolemy { .. } => "ptolemy" }), sl2_cmd(&ctx, op)?),
        Command::Wronskian(WronskianOp::Check { r }) => ("wronskian check".into(), wronskian_cmd(&ctx, *r)?),
        Command::Bruhat(BruhatOp::Verify { n, trials }) => {
            ("bruhat verify".into(), vec![Record::bare(bruhat_minor_identity_check(*n, *trials, ctx.g.seed)?)])
        }
    })
}

fn json_line(command: &str, r: &Record) -> Result<String> {
    let mut v = serde_json::to_value(&r.cert)?;
    v["command"] = command.into();
    if let Some(o) = &r.output {
        v["output"] = o.clone();
    }
    Ok(serde_json::to_string(&v)?)
}

fn clip(s: &str, n: usize) -> String {
    if s.chars().count() <= n {
        s.to_string()
    } else {
        s.chars().take(n - 1).chain(std::iter::once('…')).collect()
    }
}

fn print_table(command: &str, records: &[Record], secs: f64) {
    println!();
    println!("{:<6} {:<22} {:<58} detail", "status", "check", "params");
    for r in records {
        let status = if r.cert.pass { "PASS" } else { "FAIL" };
        let params = clip(&r.cert.params.to_string(), 58);
        let detail = r.cert.detail.as_deref().map(|d| clip(d, 60)).unwrap_or_default();
        println!("{status:<6} {:<22} {params:<58} {detail}", r.cert.check);
    }
    let passed = records.iter().filter(|r| r.cert.pass).count();
    println!("{command}: {passed}/{} passed in {secs:.3}s", records.len());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (command, records) = match run(&cli) {
        Ok(out) => out,
        Err(e @ Error::Budget(_)) => {
            eprintln!("qqcluster: {e}");
            return ExitCode::from(3);
        }
        Err(e) => {
            eprintln!("qqcluster: {e}");
            return ExitCode::from(2);
        }
    };
    for r in &records {
        match json_line(&command, r) {
            Ok(line) => println!("{line}"),
            Err(e) => {
                eprintln!("qqcluster: {e}");
                return ExitCode::from(2);
            }
        }
    }
    if !cli.global.json {
        print_table(&command, &records, start.elapsed().as_secs_f64());
    }
    if records.iter().all(|r| r.cert.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
