//! End-to-end acceptance suite: one line per criterion with its measured time
//! against its budget. All comparisons are exact.

use std::io::Write;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use congruential::catalogue::{self, alpha, identity, lambda, rho};
use congruential::diagram::{self, check_commutes};
use congruential::operad::{self, star};
use congruential::orbit::{self, BoundHit, OrbitOptions, Outcome};
use congruential::random::{random_bijection_product, random_map};
use congruential::thompson;
use congruential::{solve_agreement, AgreementSet, CongruentialMap};

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c1_alpha_decomposition() -> Result<String, String> {
    let rhs = lambda().compose(&rho().inverse().map_err(|e| e.to_string())?);
    ensure(alpha().equal(&rhs), "alpha != lambda rho^-1")?;
    Ok("alpha = lambda . rho^-1".into())
}

fn c2_pentagon() -> Result<String, String> {
    let (a, id) = (alpha(), identity());
    let lhs = a.compose(&a);
    let rhs = star(&a, &id).compose(&a).compose(&star(&id, &a));
    match lhs.witness_difference(&rhs) {
        None => Ok("alpha^2 = (alpha*Id) alpha (Id*alpha)".into()),
        Some(n) => Err(format!("differs at n = {n}")),
    }
}

fn c3_relations() -> Result<String, String> {
    let mut checked = 0;
    for j in 1..=6 {
        for i in 0..j {
            thompson::check_relation_conjugate_form(i, j)
                .map_err(|n| format!("X_{j} != X_{i} X_{} X_{i}^-1 at n = {n}", j + 1))?;
            thompson::check_relation(i, j, j + 1)
                .map_err(|n| format!("X_{i}^-1 X_{j} X_{i} != X_{} at n = {n}", j + 1))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs 0 <= i < j <= 6, both forms; X_7 has modulus {}", thompson::generator(7).modulus()))
}

fn c4_star_table() -> Result<String, String> {
    let computed = star(&identity(), &alpha()).normalize();
    let table = catalogue::id_star_alpha();
    ensure(computed == table, format!("normal form differs:\n{computed}\nvs table\n{table}"))?;
    Ok(format!("normalize(Id*alpha) is the 4-case table at modulus {}", table.modulus()))
}

fn c5_rho_orbits() -> Result<String, String> {
    let r = rho();
    let expected: [(u64, &[u64]); 9] = [
        (0, &[0]),
        (1, &[1]),
        (2, &[2, 3]),
        (3, &[3, 2]),
        (4, &[4, 5, 7, 9, 6]),
        (5, &[5, 7, 9, 6, 4]),
        (6, &[6, 4, 5, 7, 9]),
        (7, &[7, 9, 6, 4, 5]),
        (9, &[9, 6, 4, 5, 7]),
    ];
    for (seed, cycle) in expected {
        let rec = orbit::orbit(&r, &BigUint::from(seed), &OrbitOptions::steps(1000));
        let got = orbit::cycle_values(&r, &rec).ok_or(format!("no cycle from {seed}"))?;
        let want: Vec<BigUint> = cycle.iter().map(|&v| BigUint::from(v)).collect();
        ensure(got == want, format!("cycle of {seed}: {got:?}"))?;
    }
    let steps = 1_000_000;
    let rec = orbit::orbit(&r, &BigUint::from(8u32), &OrbitOptions::steps(steps).unbounded_values());
    ensure(
        matches!(rec.outcome, Outcome::Open { bound: BoundHit::StepBound }) && rec.steps == steps,
        format!("orbit of 8: {:?} after {} steps", rec.outcome, rec.steps),
    )?;
    Ok(format!(
        "cycles {{0}},{{1}},{{2,3}},{{4,5,7,9,6}}; orbit of 8 open after {steps} steps ({} bits)",
        rec.last_value.bits()
    ))
}

fn c6_lambda_rho_agreement() -> Result<String, String> {
    let s = solve_agreement(&lambda(), &rho());
    ensure(s == AgreementSet::finite([0]), format!("got {s}"))?;
    Ok(format!("{{n : lambda(n) = rho(n)}} = {s}"))
}

fn c7_alpha_inverse_steps() -> Result<String, String> {
    let r = orbit::verify_alpha_orbit_structure(100_000);
    ensure(r.passed(), r.counterexamples.iter().take(3).cloned().collect::<Vec<_>>().join("; "))?;
    Ok(format!("{} values n <= 100000", r.checked))
}

fn c8_naturality() -> Result<String, String> {
    let fixtures = catalogue::fixtures();
    let mut checked = 0;
    for (a, f) in &fixtures {
        for (b, g) in &fixtures {
            for (c, h) in &fixtures {
                ensure(operad::check_naturality(f, g, h), format!("fails at ({a}, {b}, {c})"))?;
                checked += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let pool: Vec<CongruentialMap> = (0..100).map(|_| random_bijection_product(&mut rng, 6, 2)).collect();
    for t in 0..100 {
        let (f, g, h) = (&pool[t], &pool[(t + 1) % 100], &pool[(t + 7) % 100]);
        ensure(operad::check_naturality(f, g, h), format!("fails on random triple {t}:\n{f}\n{g}\n{h}"))?;
        checked += 1;
    }
    Ok(format!("{checked} triples ({} catalogue, 100 over 100 random bijections)", fixtures.len().pow(3)))
}

fn c9_mu_family() -> Result<String, String> {
    let fixtures = catalogue::fixtures();
    let e = |r: congruential::Result<CongruentialMap>| r.map_err(|e| e.to_string());
    for (a, f) in &fixtures {
        ensure(e(operad::mu_k(std::slice::from_ref(f)))?.equal(f), format!("mu_1({a})"))?;
        for (b, g) in &fixtures {
            ensure(e(operad::mu_k(&[f.clone(), g.clone()]))?.equal(&star(f, g)), format!("mu_2({a},{b})"))?;
            for (c, h) in &fixtures {
                let m = e(operad::mu_k(&[f.clone(), g.clone(), h.clone()]))?;
                ensure(m.equal(&operad::mu3(f, g, h)), format!("mu_3({a},{b},{c})"))?;
                ensure(operad::check_rho_component(f, g, h), format!("rho component ({a},{b},{c})"))?;
                ensure(operad::check_lambda_component(f, g, h), format!("lambda component ({a},{b},{c})"))?;
            }
        }
    }
    let id = identity();
    ensure(e(operad::mu_k(&[id.clone(), id.clone(), id]))?.is_identity(), "mu_3(Id,Id,Id)")?;
    Ok("mu_1 = Id, mu_2 = star, mu_3 table; rho o mu3 = (f*(g*h)) o rho and lambda o mu3 = ((f*g)*h) o lambda on 216 triples".into())
}

fn c10_freeness() -> Result<String, String> {
    let r = operad::freeness_probe(5, &alpha());
    ensure(r.passed(), format!("collisions: {:?}", r.collisions))?;
    ensure(r.trees == 53, format!("expected 53 trees, enumerated {}", r.trees))?;
    Ok(format!("{} trees pairwise distinct on (alpha, ..., alpha)", r.trees))
}

fn c11_succ() -> Result<String, String> {
    let r = orbit::verify_succ_naturality(100, 1000);
    ensure(r.passed(), format!("mismatches: {:?}", &r.mismatches[..r.mismatches.len().min(5)]))?;
    Ok(format!("{} pairs (k <= 100, n <= 1000)", r.checked))
}

fn c12_figure1() -> Result<String, String> {
    let d = diagram::build_figure1();
    let report = check_commutes(&d, 6);
    ensure(report.commutes(), format!("{} violations", report.violations.len()))?;
    let claims = diagram::figure1_factorizations(&d);
    let facts = diagram::check_factorizations(&d, &claims).map_err(|e| e.to_string())?;
    if let Some(f) = facts.iter().find(|f| !f.holds) {
        return Err(format!("{} differs from its factorisation", f.edge));
    }
    let reds: Vec<usize> = (0..d.edges.len()).filter(|&i| d.edges[i].color == "red").collect();
    for &r in &reds {
        ensure(claims.iter().any(|c| c.edge == r), format!("red edge {} has no factorisation", d.describe_edge(r)))?;
    }
    Ok(format!(
        "{} node pairs, {} paths; {} red edges and {} other edges match their factorisations",
        report.node_pairs,
        report.paths,
        reds.len(),
        facts.len() - reds.len()
    ))
}

fn c13_mutations() -> Result<String, String> {
    // Swapping each even number with its successor is a cheap, nowhere-trivial perturbation.
    let swap = CongruentialMap::from_cases(&[
        congruential::Case::new(2, 0, 1, 1, 1),
        congruential::Case::new(2, 1, 1, -1, 1),
    ])
    .map_err(|e| e.to_string())?;
    let base = diagram::build_figure1();
    for i in 0..base.edges.len() {
        let mut d = base.clone();
        d.edges[i].label = d.edges[i].label.compose(&swap);
        let report = check_commutes(&d, 6);
        let v = report.violations.first().ok_or(format!("mutating {} went unnoticed", base.describe_edge(i)))?;
        let n: BigUint = v.witness.parse().map_err(|_| "witness is not a number")?;
        let (a, b) = (d.path_map(&v.path_a).eval(&n), d.path_map(&v.path_b).eval(&n));
        ensure(a != b, format!("witness {n} does not separate the reported paths"))?;
    }
    let mut relation_mutants = 0;
    for j in 1..=6 {
        for i in 0..j {
            for target in [j, j + 2] {
                let n = thompson::check_relation(i, j, target)
                    .err()
                    .ok_or(format!("X_{i}^-1 X_{j} X_{i} = X_{target} was accepted"))?;
                let lhs = thompson::generator_inverse(i)
                    .compose(&thompson::generator(j))
                    .compose(&thompson::generator(i));
                ensure(lhs.eval(&n) != thompson::generator(target).eval(&n), format!("witness {n} is wrong"))?;
                relation_mutants += 1;
            }
        }
    }
    Ok(format!(
        "{} edge mutants and {relation_mutants} relation mutants all refuted with checked witnesses",
        base.edges.len()
    ))
}

fn brute_force(label: &str, f: &CongruentialMap, reference: impl Fn(u64) -> BigUint, n_max: u64) -> Result<(), String> {
    for n in 0..=n_max {
        let (got, want) = (f.eval_u64(n), reference(n));
        ensure(got == want, format!("{label} at n = {n}: {got} != {want}"))?;
    }
    Ok(())
}

fn c14_oracles() -> Result<String, String> {
    const N: u64 = 10_000;
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for t in 0..200 {
        let f = random_map(&mut rng, 12, 5, 9);
        let g = random_map(&mut rng, 12, 5, 9);
        brute_force(&format!("normalize #{t}"), &f.normalize(), |n| f.eval_u64(n), N)?;
        brute_force(&format!("compose #{t}"), &f.compose(&g), |n| f.eval(&g.eval_u64(n)), N)?;
        let b = random_bijection_product(&mut rng, 8, 2);
        let inv = b.inverse().map_err(|e| e.to_string())?;
        for n in 0..=N {
            let m = BigUint::from(n);
            ensure(b.eval(&inv.eval(&m)) == m, format!("inverse #{t}: b(b^-1({n})) != {n}"))?;
            ensure(inv.eval(&b.eval(&m)) == m, format!("inverse #{t}: b^-1(b({n})) != {n}"))?;
        }
    }
    Ok("200 random maps: normalize, compose and inverse match pointwise evaluation on n <= 10000".into())
}

fn main() {
    let criteria: [(&str, Check, u64); 14] = [
        ("1 alpha = lambda rho^-1", c1_alpha_decomposition, 1),
        ("2 pentagon", c2_pentagon, 1),
        ("3 Thompson relations", c3_relations, 30),
        ("4 Id*alpha case table", c4_star_table, 1),
        ("5 rho orbits", c5_rho_orbits, 600),
        ("6 lambda/rho agreement", c6_lambda_rho_agreement, 1),
        ("7 alpha^-1 step facts", c7_alpha_inverse_steps, 10),
        ("8 associator naturality", c8_naturality, 120),
        ("9 mu-family coherence", c9_mu_family, 60),
        ("10 freeness probe", c10_freeness, 120),
        ("11 succ naturality", c11_succ, 60),
        ("12 Figure 1 pentagram", c12_figure1, 60),
        ("13 mutation soundness", c13_mutations, 60),
        ("14 oracle equivalence", c14_oracles, 120),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut stdout = std::io::stdout().lock();
    let mut failed = 0;
    for (name, check, budget) in criteria {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= Duration::from_secs(budget);
        let (status, detail) = match &result {
            Ok(d) if in_time => ("PASS", d.clone()),
            Ok(d) => ("FAIL", format!("over budget; {d}")),
            Err(e) => ("FAIL", e.clone()),
        };
        if status == "FAIL" {
            failed += 1;
        }
        writeln!(stdout, "[{status}] {name:<26} {:>9.3}s / {budget}s  {detail}", elapsed.as_secs_f64()).unwrap();
    }
    writeln!(stdout, "acceptance: {} failed", failed).unwrap();
    if failed > 0 {
        std::process::exit(1);
    }
}
