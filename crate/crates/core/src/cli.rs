//! Command-line front end. Exit status: 0 on success or a verified claim,
//! 1 on a failed verification (with a witness), 2 on usage or parse errors.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::agreement::solve_agreement;
use crate::campaign::{occ_campaign, CampaignConfig};
use crate::catalogue;
use crate::diagram::{self, check_commutes, DiagramGraph};
use crate::error::Error;
use crate::expr;
use crate::map::CongruentialMap;
use crate::operad::{self, PlanarTree};
use crate::orbit::{self, OrbitOptions, Outcome};
use crate::random::random_bijection_product;
use crate::text;
use crate::thompson::{self, GroupWord};

#[derive(Debug, Parser)]
#[command(name = "congruential", version, about = "Exact algebra of congruential bijections of N")]
pub struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Maps are given as a file path, a builtin name (`rho`, `lambda`, `alpha`,
/// `id`, `x<j>`, `xk:<j>`) or an expression such as `"(lambda' * id) lambda"`.
#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a map at n
    Eval {
        #[arg(long)]
        map: String,
        #[arg(long)]
        n: BigUint,
    },
    /// Print f ∘ g
    Compose {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Print the inverse of a bijection
    Invert {
        #[arg(long)]
        map: String,
    },
    /// Print the canonical normal form
    Normalize {
        #[arg(long)]
        map: String,
    },
    /// Decide f = g on all of N (exit 1 with a witness when they differ)
    Equal {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Solve f(n) = g(n) exactly
    SolveAgree {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Certify that a map is a bijection of N
    Certify {
        #[arg(long)]
        map: String,
    },
    /// Girard's conjunction a ⋆ b
    Star {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The k-ary interleaving mu_(k); pass --map exactly k times
    Mu {
        #[arg(long)]
        k: usize,
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Evaluate a planar tree term such as "(* _ (#3 _ _ _))"
    TreeEval {
        #[arg(long)]
        tree: String,
        #[arg(long = "map", required = true)]
        maps: Vec<String>,
    },
    /// Evaluate a word such as "x0 x1' x0" (applied right to left)
    WordEval {
        #[arg(long)]
        word: String,
    },
    /// Decide equality of two words in F (exit 1 with a witness when they differ)
    WordEqual {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Run a verification suite
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Iterate a map from a seed and report cycles and extrema
    Orbit {
        #[arg(long)]
        map: String,
        #[arg(long)]
        seed: BigUint,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        /// Stop once a value needs more than this many bits
        #[arg(long, default_value_t = 4096)]
        value_bits: u64,
        /// Emit per-step CSV statistics instead of a summary
        #[arg(long)]
        csv: bool,
    },
    /// Long orbit search for rho with resumable checkpoints
    Campaign(CampaignArgs),
    /// Print a map in canonical text form
    Export {
        #[arg(long)]
        map: String,
    },
    /// Parse and validate a map file, printing it back canonically
    Import {
        #[arg(long)]
        file: PathBuf,
    },
}

#[derive(Debug, Args)]
pub struct CampaignArgs {
    #[arg(long)]
    pub checkpoint: PathBuf,
    #[arg(long, default_value = "8")]
    pub seed: BigUint,
    #[arg(long, default_value_t = 1_000_000, conflicts_with = "unbounded")]
    pub steps: u64,
    /// Run until a cycle is found or the process is stopped
    #[arg(long)]
    pub unbounded: bool,
    #[arg(long, default_value_t = 100_000)]
    pub every: u64,
    /// Continue from an existing checkpoint
    #[arg(long)]
    pub resume: bool,
}

#[derive(Debug, Subcommand)]
pub enum Suite {
    /// alpha^2 = (alpha ⋆ Id) alpha (Id ⋆ alpha)
    Pentagon,
    /// X_j = X_i X_{j+1} X_i^-1 for all i < j <= max-index
    Relations {
        #[arg(long, default_value_t = 6)]
        max_index: usize,
    },
    /// Associator naturality on the fixture catalogue plus random bijections
    Naturality {
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// The commuting pentagram, its factorisations and local triangles
    Figure1 {
        #[arg(long, default_value_t = 6)]
        max_path_len: usize,
    },
    /// The third associahedron labelled by lambda and rho
    K3,
    /// Step-level orbit facts for the associator up to n-max
    AlphaOrbits {
        #[arg(long, default_value_t = 100_000)]
        n_max: u64,
    },
    /// lambda^k(n) + 1 = rho^k(n + 1)
    Succ {
        #[arg(long, default_value_t = 100)]
        k_max: u64,
        #[arg(long, default_value_t = 1000)]
        n_max: u64,
    },
    /// Distinct maps for all {2,3}-trees with at most max-leaves leaves on (alpha, ..., alpha)
    Freeness {
        #[arg(long, default_value_t = 5)]
        max_leaves: usize,
    },
    /// mu_k agrees with Id, ⋆ and mu_3, and rho/lambda are components for mu_3
    Mu,
    /// Brown's conjugation identity and closure of F under ⋆ on random words
    Brown {
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check that a diagram file commutes
    Diagram {
        #[arg(long)]
        file: PathBuf,
        #[arg(long, default_value_t = 6)]
        max_path_len: usize,
        /// Print violations as CSV
        #[arg(long)]
        csv: bool,
    },
}

struct Ctx<'a> {
    out: &'a mut dyn Write,
    json: bool,
}

enum Failure {
    Usage(String),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotBijection(_) => Failure::Verification(e.to_string()),
            other => Failure::Usage(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome1 = Result<bool, Failure>;

impl Ctx<'_> {
    fn emit(&mut self, value: Value, text: impl FnOnce() -> String) -> std::io::Result<()> {
        if self.json {
            writeln!(self.out, "{}", serde_json::to_string_pretty(&value).unwrap())
        } else {
            write!(self.out, "{}", text())
        }
    }

    fn map(&mut self, f: &CongruentialMap) -> std::io::Result<()> {
        let v = map_json(f);
        self.emit(v, || text::to_text(f))
    }
}

fn map_json(f: &CongruentialMap) -> Value {
    json!({
        "modulus": f.modulus(),
        "pieces": f.pieces().iter().map(|p| [p.a().to_string(), p.b().to_string(), p.c().to_string()]).collect::<Vec<_>>(),
    })
}

fn load(input: &str) -> Result<CongruentialMap, Failure> {
    expr::resolve(input).map_err(|e| Failure::Usage(format!("map `{input}`: {e}")))
}

fn word(input: &str) -> Result<GroupWord, Failure> {
    input.parse().map_err(|e: Error| Failure::Usage(format!("word `{input}`: {e}")))
}

fn verdict(ctx: &mut Ctx, name: &str, ok: bool, details: Value, lines: Vec<String>) -> Outcome1 {
    let mut v = json!({ "check": name, "passed": ok });
    if let (Value::Object(m), Value::Object(d)) = (&mut v, details) {
        m.extend(d);
    }
    ctx.emit(v, || {
        let mut s = format!("{name}: {}\n", if ok { "PASS" } else { "FAIL" });
        for l in lines {
            s.push_str(&format!("  {l}\n"));
        }
        s
    })?;
    Ok(ok)
}

pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { write!(err, "{rendered}") } else { write!(out, "{rendered}") };
            return code;
        }
    };
    let mut ctx = Ctx { out, json: cli.json };
    match dispatch(&mut ctx, cli.command) {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Failure::Verification(msg)) => {
            let _ = writeln!(err, "verification failed: {msg}");
            1
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(ctx: &mut Ctx, command: Command) -> Outcome1 {
    match command {
        Command::Eval { map, n } => {
            let v = load(&map)?.eval(&n);
            ctx.emit(json!({ "value": v.to_string() }), || format!("{v}\n"))?;
        }
        Command::Compose { f, g } => ctx.map(&load(&f)?.compose(&load(&g)?))?,
        Command::Invert { map } => ctx.map(&load(&map)?.inverse()?)?,
        Command::Normalize { map } => ctx.map(&load(&map)?.normalize())?,
        Command::Export { map } => ctx.map(&load(&map)?)?,
        Command::Import { file } => ctx.map(&expr::load_map_file(&file)?)?,
        Command::Equal { f, g } => {
            let (f, g) = (load(&f)?, load(&g)?);
            return equality(ctx, &f, &g);
        }
        Command::SolveAgree { f, g } => {
            let s = solve_agreement(&load(&f)?, &load(&g)?);
            ctx.emit(serde_json::to_value(&s).unwrap(), || format!("{s}\n"))?;
        }
        Command::Certify { map } => {
            let f = load(&map)?;
            return match f.is_bijection() {
                Ok(cert) => {
                    let progs: Vec<String> = cert.progressions.iter().map(ToString::to_string).collect();
                    let details = json!({ "progressions": progs, "period": cert.period.to_string() });
                    verdict(ctx, "bijection", true, details, vec![format!("image progressions: {}", progs.join(", "))])
                }
                Err(refusal) => {
                    let details = json!({ "refusal": refusal });
                    verdict(ctx, "bijection", false, details, vec![refusal.to_string()])
                }
            };
        }
        Command::Star { a, b } => ctx.map(&operad::star(&load(&a)?, &load(&b)?))?,
        Command::Mu { k, maps } => {
            if maps.len() != k {
                return Err(Failure::Usage(format!("--k {k} needs {k} --map arguments, got {}", maps.len())));
            }
            let family = maps.iter().map(|m| load(m)).collect::<Result<Vec<_>, _>>()?;
            ctx.map(&operad::mu_k(&family)?)?;
        }
        Command::TreeEval { tree, maps } => {
            let t: PlanarTree = tree.parse()?;
            let args = maps.iter().map(|m| load(m)).collect::<Result<Vec<_>, _>>()?;
            ctx.map(&operad::eval_tree(&t, &args)?)?;
        }
        Command::WordEval { word: w } => ctx.map(&thompson::eval_word(&word(&w)?))?,
        Command::WordEqual { u, v } => {
            let (u, v) = (thompson::eval_word(&word(&u)?), thompson::eval_word(&word(&v)?));
            return equality(ctx, &u, &v);
        }
        Command::Verify { suite } => return verify(ctx, suite),
        Command::Orbit { map, seed, steps, value_bits, csv } => {
            if steps == 0 {
                return Err(Failure::Usage("--steps must be at least 1".into()));
            }
            let f = load(&map)?;
            let options = OrbitOptions {
                step_bound: steps,
                value_bound: Some((BigUint::one() << value_bits) - 1u32),
                store_values: csv,
                ..OrbitOptions::default()
            };
            let rec = orbit::orbit(&f, &seed, &options);
            if csv {
                rec.write_stats_csv(&mut ctx.out)?;
                return Ok(true);
            }
            let cycle = orbit::cycle_values(&f, &rec);
            let summary = json!({
                "seed": rec.seed.to_string(),
                "steps": rec.steps,
                "outcome": rec.outcome,
                "cycle": cycle.as_ref().map(|c| c.iter().map(ToString::to_string).collect::<Vec<_>>()),
                "local_minima": rec.minima().count(),
                "local_maxima": rec.maxima().count(),
                "max_bits": rec.max_bits,
                "last_value_bits": rec.last_value.bits(),
            });
            ctx.emit(summary, || {
                let mut s = String::new();
                match (&rec.outcome, &cycle) {
                    (Outcome::Cycle { length, entry_step }, Some(c)) => {
                        let mut vals: Vec<String> = c.iter().map(ToString::to_string).collect();
                        vals.push(vals[0].clone());
                        s.push_str(&format!("cycle {}\n", vals.join("→")));
                        s.push_str(&format!("length {length}, entered at step {entry_step}\n"));
                    }
                    (Outcome::Open { bound }, _) => {
                        s.push_str(&format!("open after {} steps ({bound:?})\n", rec.steps));
                    }
                    _ => {}
                }
                s.push_str(&format!(
                    "local minima {}, local maxima {}, max bits {} at step {}\n",
                    rec.minima().count(),
                    rec.maxima().count(),
                    rec.max_bits,
                    rec.max_bits_step
                ));
                s
            })?;
        }
        Command::Campaign(args) => return campaign(ctx, args),
    }
    Ok(true)
}

fn equality(ctx: &mut Ctx, f: &CongruentialMap, g: &CongruentialMap) -> Outcome1 {
    match f.witness_difference(g) {
        None => {
            ctx.emit(json!({ "equal": true }), || "true\n".into())?;
            Ok(true)
        }
        Some(n) => {
            let (a, b) = (f.eval(&n), g.eval(&n));
            ctx.emit(
                json!({ "equal": false, "witness": n.to_string(), "left": a.to_string(), "right": b.to_string() }),
                || format!("false\nwitness n = {n}: {a} != {b}\n"),
            )?;
            Ok(false)
        }
    }
}

fn campaign(ctx: &mut Ctx, args: CampaignArgs) -> Outcome1 {
    let config = CampaignConfig {
        seed: args.seed,
        step_bound: (!args.unbounded).then_some(args.steps),
        value_bound: None,
        checkpoint_every: args.every,
        checkpoint_path: Some(args.checkpoint),
        resume: args.resume,
    };
    let (report, _) = occ_campaign(&config).map_err(|e| match e {
        Error::Checkpoint { .. } => Failure::Verification(e.to_string()),
        other => Failure::from(other),
    })?;
    ctx.emit(serde_json::to_value(&report).unwrap(), || {
        let head = match report.outcome {
            Outcome::Cycle { length, .. } => format!(
                "*** CYCLE FOUND: the orbit of {} under rho returns after {length} steps ***\n",
                report.seed
            ),
            Outcome::Open { .. } => format!("no cycle in {} steps from {}\n", report.steps, report.seed),
        };
        format!(
            "{head}resumed from step {}, {} checkpoints written, {} linkage checks passed\n\
             local minima {}, local maxima {}, max bits {} at step {}\n",
            report.resumed_from_step,
            report.checkpoints_written,
            report.linkage_checks,
            report.local_minima,
            report.local_maxima,
            report.max_bits,
            report.max_bits_pos
        )
    })?;
    Ok(true)
}

fn random_word(rng: &mut ChaCha8Rng, max_len: usize, max_index: usize) -> GroupWord {
    use rand::Rng;
    let len = rng.gen_range(0..=max_len);
    GroupWord::new(
        (0..len)
            .map(|_| thompson::Letter { index: rng.gen_range(0..=max_index), inverse: rng.gen_bool(0.5) })
            .collect(),
    )
}

fn verify(ctx: &mut Ctx, suite: Suite) -> Outcome1 {
    match suite {
        Suite::Pentagon => {
            let ok = thompson::check_pentagon();
            verdict(ctx, "pentagon", ok, json!({}), vec!["alpha alpha = (alpha * id) alpha (id * alpha)".into()])
        }
        Suite::Relations { max_index } => {
            let r = thompson::check_relations(max_index);
            let lines = r
                .failures
                .iter()
                .map(|f| format!("i={} j={}: witness n = {}", f.i, f.j, f.witness))
                .chain([format!("{} relations checked", r.checked)])
                .collect();
            verdict(ctx, "relations", r.passed(), serde_json::to_value(&r).unwrap(), lines)
        }
        Suite::Naturality { trials, seed } => {
            let fixtures = catalogue::fixtures();
            let mut failures = Vec::new();
            for (a, f) in &fixtures {
                for (b, g) in &fixtures {
                    for (c, h) in &fixtures {
                        if !operad::check_naturality(f, g, h) {
                            failures.push(format!("({a}, {b}, {c})"));
                        }
                    }
                }
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for t in 0..trials {
                let (f, g, h) = (
                    random_bijection_product(&mut rng, 6, 2),
                    random_bijection_product(&mut rng, 6, 2),
                    random_bijection_product(&mut rng, 6, 2),
                );
                if !operad::check_naturality(&f, &g, &h) {
                    failures.push(format!("random trial {t}"));
                }
            }
            let n = fixtures.len().pow(3) + trials;
            let ok = failures.is_empty();
            let mut lines = vec![format!("{n} triples checked")];
            lines.extend(failures.iter().cloned());
            verdict(ctx, "naturality", ok, json!({ "checked": n, "failures": failures }), lines)
        }
        Suite::Figure1 { max_path_len } => {
            let d = diagram::build_figure1();
            let report = check_commutes(&d, max_path_len);
            let factorizations = diagram::check_factorizations(&d, &diagram::figure1_factorizations(&d))?;
            let triangles: Vec<_> = d
                .edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.color == "blue")
                .flat_map(|(i, _)| diagram::local_triangles(&d, i))
                .collect();
            let ok = report.commutes()
                && factorizations.iter().all(|f| f.holds)
                && triangles.iter().all(|t| t.commutes);
            let mut lines = vec![format!(
                "{} node pairs, {} paths, {} violations",
                report.node_pairs,
                report.paths,
                report.violations.len()
            )];
            lines.extend(report.violations.iter().map(|v| {
                format!("{} -> {}: paths {:?} and {:?} differ at n = {}", v.source, v.target, v.path_a, v.path_b, v.witness)
            }));
            lines.extend(factorizations.iter().map(|f| format!("factorisation {}: {}", f.edge, ok_str(f.holds))));
            lines.extend(triangles.iter().map(|t| format!("triangle {} {}: {}", t.edge, t.via, ok_str(t.commutes))));
            let details = json!({ "commute": report, "factorizations": factorizations, "triangles": triangles });
            verdict(ctx, "figure1", ok, details, lines)
        }
        Suite::K3 => {
            let d = diagram::build_k3();
            let closed = check_commutes(&diagram::build_k3_with_associator(), 3);
            let labels_ok = d.edges[0].label.equal(&catalogue::lambda()) && d.edges[1].label.equal(&catalogue::rho());
            let ok = labels_ok && closed.commutes();
            let lines = vec![
                format!("edges: {}, {}", d.describe_edge(0), d.describe_edge(1)),
                format!("lambda = alpha rho: {}", ok_str(closed.commutes())),
            ];
            verdict(ctx, "k3", ok, json!({ "labels": labels_ok, "commute": closed }), lines)
        }
        Suite::AlphaOrbits { n_max } => {
            let r = orbit::verify_alpha_orbit_structure(n_max);
            let mut lines = vec![format!("{} values checked", r.checked)];
            lines.extend(r.counterexamples.iter().cloned());
            verdict(ctx, "alpha-orbits", r.passed(), serde_json::to_value(&r).unwrap(), lines)
        }
        Suite::Succ { k_max, n_max } => {
            let r = orbit::verify_succ_naturality(k_max, n_max);
            let mut lines = vec![format!("{} (k, n) pairs checked", r.checked)];
            lines.extend(r.mismatches.iter().take(20).map(|(k, n)| format!("mismatch at k={k}, n={n}")));
            verdict(ctx, "succ", r.passed(), serde_json::to_value(&r).unwrap(), lines)
        }
        Suite::Freeness { max_leaves } => {
            let r = operad::freeness_probe(max_leaves, &catalogue::alpha());
            let mut lines = vec![format!("{} trees, pairwise distinct on (alpha, ..., alpha)", r.trees)];
            lines.extend(r.collisions.iter().map(|(a, b)| format!("collision: {a} = {b}")));
            verdict(ctx, "freeness", r.passed(), serde_json::to_value(&r).unwrap(), lines)
        }
        Suite::Mu => {
            let fixtures = catalogue::fixtures();
            let id = catalogue::identity();
            let mut failures = Vec::new();
            for (a, f) in &fixtures {
                if !operad::mu_k(std::slice::from_ref(f))?.equal(f) {
                    failures.push(format!("mu_1({a})"));
                }
                for (b, g) in &fixtures {
                    if !operad::mu_k(&[f.clone(), g.clone()])?.equal(&operad::star(f, g)) {
                        failures.push(format!("mu_2({a}, {b})"));
                    }
                    for (c, h) in &fixtures {
                        if !operad::mu_k(&[f.clone(), g.clone(), h.clone()])?.equal(&operad::mu3(f, g, h)) {
                            failures.push(format!("mu_3({a}, {b}, {c})"));
                        }
                        if !operad::check_rho_component(f, g, h) {
                            failures.push(format!("rho component at ({a}, {b}, {c})"));
                        }
                        if !operad::check_lambda_component(f, g, h) {
                            failures.push(format!("lambda component at ({a}, {b}, {c})"));
                        }
                    }
                }
            }
            if !operad::mu_k(&[id.clone(), id.clone(), id])?.is_identity() {
                failures.push("mu_3(id, id, id)".into());
            }
            let ok = failures.is_empty();
            let mut lines = vec!["mu_1 = Id, mu_2 = star, mu_3 = ternary table; rho and lambda components".into()];
            lines.extend(failures.iter().cloned());
            verdict(ctx, "mu", ok, json!({ "failures": failures }), lines)
        }
        Suite::Brown { trials, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut failures = Vec::new();
            for t in 0..trials {
                let (a, b, c) = (random_word(&mut rng, 4, 3), random_word(&mut rng, 4, 3), random_word(&mut rng, 4, 3));
                let r = thompson::check_brown_conjugation(&a, &b, &c);
                if !r.passed() {
                    failures.push(format!("trial {t}: a = {a}, b = {b}, c = {c}: {r:?}"));
                }
            }
            let ok = failures.is_empty();
            let mut lines = vec![format!("{trials} random word triples")];
            lines.extend(failures.iter().cloned());
            verdict(ctx, "brown", ok, json!({ "trials": trials, "failures": failures }), lines)
        }
        Suite::Diagram { file, max_path_len, csv } => {
            let d = DiagramGraph::from_text(&std::fs::read_to_string(&file)?)?;
            let r = check_commutes(&d, max_path_len.max(1));
            if csv {
                write!(ctx.out, "{}", r.violations_csv())?;
                return Ok(r.commutes());
            }
            let mut lines = vec![format!("{} node pairs, {} paths", r.node_pairs, r.paths)];
            lines.extend(r.violations.iter().map(|v| {
                format!(
                    "{} -> {}: paths {:?} and {:?} differ at n = {} ({} vs {})",
                    v.source, v.target, v.path_a, v.path_b, v.witness, v.value_a, v.value_b
                )
            }));
            verdict(ctx, "diagram", r.commutes(), serde_json::to_value(&r).unwrap(), lines)
        }
    }
}

fn ok_str(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILS"
    }
}
