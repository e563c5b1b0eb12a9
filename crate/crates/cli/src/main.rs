//! Command line front end: bracket evaluation, tangle invariants,
//! constructive realization, embedding obstructions, and long-running
//! determinant and congruence scans.
//!
//! Exit codes: 0 success, 1 a checked property failed or an obstruction
//! was found, 2 usage or input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use tanglekit_cli::json::diagram_from_str;
use tanglekit_cli::parse::{parse_expr, print_expr};
use tanglekit_core::bracket::{BracketOpts, Evaluator, DEFAULT_CROSSING_CAP};
use tanglekit_core::diagram::Diagram;
use tanglekit_core::invariants::{self, inv_f, inv_fn, j_formula, krebes_check};
use tanglekit_core::moves;
use tanglekit_core::phi::{gcd_list, PhiScalar, ProjMatrix};
use tanglekit_core::synth::{expr_invariant, synth_ball};
use tanglekit_core::testkit::{
    decorate, gen_i_reducible, gen_j_reducible, gen_spherical, GenConfig, Rng,
};

#[derive(Parser)]
#[command(
    name = "tanglekit",
    about = "Exact Kauffman bracket and punctured-ball tangle invariants",
    version
)]
struct Cli {
    /// Emit machine-readable JSON instead of text
    #[arg(long, global = true)]
    json: bool,
    /// Crossing cap per bracket call (also TANGLEKIT_MAX_CROSSINGS)
    #[arg(long, global = true)]
    max_crossings: Option<u32>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvaluatorArg {
    Full,
    Monocyclic,
    Skein,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the bracket of a link given as an expression or JSON file
    Bracket {
        /// Expression like "num(h(3))" or a path to a .json diagram
        input: String,
        #[arg(long, value_enum, default_value = "monocyclic")]
        evaluator: EvaluatorArg,
    },
    /// Compute the invariant column or matrix of a tangle
    Invariant {
        /// Expression or a path to a .json diagram
        input: String,
        #[arg(long, value_enum, default_value = "monocyclic")]
        evaluator: EvaluatorArg,
    },
    /// Build a ball tangle realizing the column [b; a]
    #[command(allow_negative_numbers = true)]
    Synth {
        b: i64,
        a: i64,
    },
    /// Check the divisibility obstruction for embedding tangles in a link
    Obstruct {
        #[arg(long)]
        link: String,
        #[arg(long = "tangle", required = true)]
        tangles: Vec<String>,
    },
    /// Scan spherical tangle determinants mod 4
    ScanDet {
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Also generate tangles with closed components
        #[arg(long)]
        closed: bool,
        /// Resume/progress file, updated as the scan advances
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// First sample index (overrides the checkpoint file)
        #[arg(long)]
        start: Option<u64>,
    },
    /// Check the mod-4 congruence of invariants across triangle moves
    DeltaCheck {
        #[arg(long, default_value_t = 200)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run the built-in golden values and evaluator cross-checks
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cap = cli
        .max_crossings
        .or_else(|| std::env::var("TANGLEKIT_MAX_CROSSINGS").ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_CROSSING_CAP);
    let as_json = cli.json;
    match run(cli.command, cap, as_json) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {}", msg);
            ExitCode::from(2)
        }
    }
}

fn opts(cap: u32, evaluator: EvaluatorArg) -> BracketOpts {
    let evaluator = match evaluator {
        EvaluatorArg::Full => Evaluator::Full,
        EvaluatorArg::Monocyclic => Evaluator::Monocyclic,
        EvaluatorArg::Skein => Evaluator::Skein,
    };
    BracketOpts { evaluator, cap }
}

/// Loads a diagram from an expression or, when the argument names a
/// .json file, from the JSON schema. The flag reports whether planarity
/// is guaranteed (constructor-built) or unverified (raw JSON).
fn load_input(input: &str) -> Result<(Diagram, bool), String> {
    let path = Path::new(input);
    if input.ends_with(".json") || path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| format!("{}: {}", input, e))?;
        let d = diagram_from_str(&text).map_err(|e| e.to_string())?;
        return Ok((d, false));
    }
    let expr = parse_expr(input).map_err(|e| e.to_string())?;
    let d = expr.elaborate().map_err(|e| e.to_string())?;
    Ok((d, true))
}

fn matrix_rows(m: &ProjMatrix) -> Vec<Vec<i64>> {
    (0..m.rows()).map(|r| (0..m.cols()).map(|c| m.entry(r, c)).collect()).collect()
}

fn run(cmd: Command, cap: u32, as_json: bool) -> Result<ExitCode, String> {
    match cmd {
        Command::Bracket { input, evaluator } => {
            let (d, verified) = load_input(&input)?;
            if !d.is_link() {
                return Err(format!(
                    "bracket needs a closed link diagram; this one has {} boundary circles (close it with num(...) or den(...))",
                    d.boundaries()
                ));
            }
            let value = tanglekit_core::bracket::bracket_with(&d, &opts(cap, evaluator))
                .map_err(|e| e.to_string())?;
            if as_json {
                println!(
                    "{}",
                    json!({
                        "version": 1,
                        "command": "bracket",
                        "p": value.mag(),
                        "exp": value.exp(),
                        "magnitude": value.magnitude(),
                        "planarity_verified": verified,
                    })
                );
            } else {
                if !verified {
                    eprintln!("note: diagram loaded from JSON; planarity unverified");
                }
                println!("<L> = {} (p = {}, A-exponent {})", value, value.mag(), value.exp());
                println!("|<L>| = {}", value.magnitude());
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Invariant { input, evaluator } => {
            let (d, verified) = load_input(&input)?;
            if d.boundaries() == 0 {
                return Err("invariants are defined for tangles; this is a closed link".into());
            }
            let f = inv_fn(&d, &opts(cap, evaluator)).map_err(|e| e.to_string())?;
            if as_json {
                println!(
                    "{}",
                    json!({
                        "version": 1,
                        "command": "invariant",
                        "holes": f.holes,
                        "matrix": matrix_rows(&f.mat),
                        "planarity_verified": verified,
                    })
                );
            } else {
                if !verified {
                    eprintln!("note: diagram loaded from JSON; planarity unverified");
                }
                println!("holes: {}", f.holes);
                println!("F = {}", f.mat);
                if f.holes == 1 {
                    println!("det F = {}", f.mat.det2().map_err(|e| e.to_string())?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Synth { b, a } => {
            let target = ProjMatrix::column2(b, a);
            let s = synth_ball(&target).map_err(|e| e.to_string())?;
            let crossings = s.diagram.crossings();
            // verify the round trip: through the closure brackets when the
            // diagram is small enough, through the column identities
            // otherwise
            let (method, got) = if crossings <= 64 {
                let o = BracketOpts { evaluator: Evaluator::Skein, cap: crossings.max(1) };
                ("bracket", inv_f(&s.diagram, &o).map_err(|e| e.to_string())?)
            } else {
                ("column identities", expr_invariant(&s.expr).map_err(|e| e.to_string())?)
            };
            let ok = got == target;
            if as_json {
                println!(
                    "{}",
                    json!({
                        "version": 1,
                        "command": "synth",
                        "target": [target.entry(0, 0), target.entry(1, 0)],
                        "expr": print_expr(&s.expr),
                        "crossings": crossings,
                        "verification": method,
                        "verified": ok,
                    })
                );
            } else {
                println!("target [{}; {}]", target.entry(0, 0), target.entry(1, 0));
                println!("expr: {}", print_expr(&s.expr));
                println!("crossings: {}", crossings);
                println!("round-trip ({}): {}", method, if ok { "verified" } else { "FAILED" });
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Obstruct { link, tangles } => {
            let (l, _) = load_input(&link)?;
            if !l.is_link() {
                return Err("--link must elaborate to a closed link diagram".into());
            }
            let value =
                tanglekit_core::bracket::bracket_with(&l, &opts(cap, EvaluatorArg::Monocyclic))
                    .map_err(|e| e.to_string())?;
            let mut columns = Vec::new();
            for t in &tangles {
                let (d, _) = load_input(t)?;
                if !d.is_ball() {
                    return Err(format!("--tangle '{}' must be a ball tangle", t));
                }
                columns.push(
                    inv_f(&d, &opts(cap, EvaluatorArg::Monocyclic)).map_err(|e| e.to_string())?,
                );
            }
            let refs: Vec<&ProjMatrix> = columns.iter().collect();
            let ok = krebes_check(&refs, &value);
            let gcds: Vec<i64> = columns.iter().map(|c| gcd_list(c.entries())).collect();
            let product: i64 = gcds.iter().product();
            if as_json {
                println!(
                    "{}",
                    json!({
                        "version": 1,
                        "command": "obstruct",
                        "link_magnitude": value.magnitude(),
                        "tangle_gcds": gcds,
                        "gcd_product": product,
                        "divides": ok,
                    })
                );
            } else {
                for (t, c) in tangles.iter().zip(&columns) {
                    println!("f({}) = {}, gcd {}", t, c, gcd_list(c.entries()));
                }
                println!("|<L>| = {}", value.magnitude());
                if ok {
                    println!("consistent: {} divides {}", product, value.magnitude());
                } else {
                    println!(
                        "obstructed: {} does not divide {}; the tangles cannot be embedded disjointly in this link",
                        product,
                        value.magnitude()
                    );
                }
            }
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::ScanDet { samples, seed, closed, checkpoint, start } => {
            scan_det(samples, seed, closed, checkpoint, start, cap, as_json)
        }
        Command::DeltaCheck { samples, seed } => delta_check(samples, seed, cap, as_json),
        Command::Selftest => selftest(as_json),
    }
}

fn sample_config(seed: u64, index: u64, closed: bool) -> GenConfig {
    let mut mixer = Rng::new(seed ^ index.wrapping_mul(0x9e3779b97f4a7c15));
    GenConfig {
        seed: mixer.next_u64(),
        max_crossings: 10,
        depth: 3,
        allow_closed_components: closed && index % 3 == 0,
    }
}

fn is_perfect_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    for c in [r.saturating_sub(1), r, r + 1] {
        if c >= 0 && c.checked_mul(c) == Some(n) {
            return true;
        }
    }
    false
}

fn scan_det(
    samples: u64,
    seed: u64,
    closed: bool,
    checkpoint: Option<PathBuf>,
    start: Option<u64>,
    cap: u32,
    as_json: bool,
) -> Result<ExitCode, String> {
    let opts = BracketOpts { evaluator: Evaluator::Monocyclic, cap: cap.max(26) };
    let mut begin = start.unwrap_or(0);
    let mut violations: u64 = 0;
    let mut nonsquare: u64 = 0;
    if start.is_none() {
        if let Some(path) = &checkpoint {
            if let Ok(text) = fs::read_to_string(path) {
                if let Ok(v) = serde_json::from_str::<serde_json::Value>(&text) {
                    begin = v["next"].as_u64().unwrap_or(0);
                    violations = v["violations"].as_u64().unwrap_or(0);
                    nonsquare = v["nonsquare"].as_u64().unwrap_or(0);
                    eprintln!("resuming from sample {}", begin);
                }
            }
        }
    }
    for i in begin..samples {
        let cfg = sample_config(seed, i, closed);
        let mut kind_rng = Rng::new(seed ^ i);
        let kind = kind_rng.below(4);
        let (s, kind_name, expect_square) = match kind {
            0 => (gen_spherical(&cfg), "generated", false),
            1 => (gen_i_reducible(&cfg), "i-reducible", true),
            2 => {
                let p = [
                    kind_rng.range(-2, 2),
                    kind_rng.range(-2, 2),
                    kind_rng.range(-2, 2),
                    kind_rng.range(-2, 2),
                ];
                (gen_j_reducible(&cfg, p), "j-reducible", true)
            }
            _ => {
                let base = gen_spherical(&cfg);
                let with_delta = i % 2 == 0;
                (decorate(&base, &cfg, with_delta).0, "decorated", false)
            }
        };
        let f = inv_fn(&s, &opts).map_err(|e| format!("sample {}: {}", i, e))?;
        let det = f.mat.det2().map_err(|e| e.to_string())?;
        let residue = det.rem_euclid(4);
        let bad = residue != 0 && residue != 1;
        if bad {
            violations += 1;
            println!(
                "sample {} ({}): det {} residue {} VIOLATES the mod-4 obstruction",
                i, kind_name, det, residue
            );
        }
        if !is_perfect_square(det) {
            if expect_square {
                return Err(format!(
                    "sample {} ({}): det {} should have been a perfect square",
                    i, kind_name, det
                ));
            }
            nonsquare += 1;
            println!(
                "sample {} ({}): det {} is not a perfect square (open-question hit)",
                i, kind_name, det
            );
        }
        if as_json {
            println!(
                "{}",
                json!({
                    "version": 1,
                    "command": "scan-det",
                    "sample": i,
                    "kind": kind_name,
                    "det": det,
                    "residue": residue,
                    "crossings": s.crossings(),
                })
            );
        } else if (i + 1) % 200 == 0 {
            println!("... {} samples done", i + 1);
        }
        if let Some(path) = &checkpoint {
            if (i + 1) % 100 == 0 || i + 1 == samples {
                let state = json!({
                    "version": 1,
                    "next": i + 1,
                    "violations": violations,
                    "nonsquare": nonsquare,
                });
                fs::write(path, state.to_string()).map_err(|e| e.to_string())?;
            }
        }
    }
    let summary = json!({
        "version": 1,
        "command": "scan-det",
        "summary": true,
        "samples": samples,
        "seed": seed,
        "violations": violations,
        "nonsquare": nonsquare,
    });
    if as_json {
        println!("{}", summary);
    } else {
        println!(
            "scan complete: {} samples (seed {}), {} residue violations, {} non-square determinants",
            samples, seed, violations, nonsquare
        );
    }
    Ok(if violations == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn delta_check(samples: u64, seed: u64, cap: u32, as_json: bool) -> Result<ExitCode, String> {
    let opts = BracketOpts { evaluator: Evaluator::Monocyclic, cap: cap.max(26) };
    let mut failures = 0u64;
    for i in 0..samples {
        let cfg = GenConfig {
            seed: seed ^ i.wrapping_mul(0x9e3779b97f4a7c15),
            max_crossings: 8,
            depth: 2,
            allow_closed_components: false,
        };
        let s = gen_spherical(&cfg);
        // decorate with Reidemeister moves and at least one triangle move
        let (mut t, _) = decorate(&s, &cfg, false);
        let mut rng = Rng::new(cfg.seed ^ 0xde17a);
        let folds = 1 + rng.below(2);
        for _ in 0..folds {
            let arc = rng.below(t.arcs().len() as u64) as usize;
            if let Ok((folded, site)) = moves::delta_fold_insert(&t, arc) {
                if let Ok(next) = moves::delta_move(&folded, site) {
                    t = next;
                }
            }
        }
        let ok = invariants::delta_congruence_check(&s, &t, &opts)
            .map_err(|e| format!("sample {}: {}", i, e))?;
        if !ok {
            failures += 1;
            println!("sample {}: congruence FAILED", i);
        }
        if as_json {
            println!(
                "{}",
                json!({
                    "version": 1,
                    "command": "delta-check",
                    "sample": i,
                    "congruent": ok,
                })
            );
        }
    }
    if as_json {
        println!(
            "{}",
            json!({
                "version": 1,
                "command": "delta-check",
                "summary": true,
                "samples": samples,
                "seed": seed,
                "failures": failures,
            })
        );
    } else {
        println!("delta-check: {} samples (seed {}), {} failures", samples, seed, failures);
    }
    Ok(if failures == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn selftest(as_json: bool) -> Result<ExitCode, String> {
    use tanglekit_core::bracket::{bracket_full, bracket_monocyclic, bracket_skein};
    use tanglekit_core::diagram as dg;

    let mut failures = Vec::new();
    let check = |name: &str, ok: bool, failures: &mut Vec<String>| {
        if ok {
            println!("ok   {}", name);
        } else {
            println!("FAIL {}", name);
            failures.push(name.to_string());
        }
    };

    let opts = BracketOpts::default();
    let triad = |l: &Diagram| -> Option<PhiScalar> {
        let a = bracket_full(l).ok()?;
        let b = bracket_monocyclic(l).ok()?;
        let c = bracket_skein(l).ok()?;
        (a == b && b == c).then_some(a)
    };

    let unknot = dg::add_free_loops(&Diagram::new(0, 0, 0, vec![]).unwrap(), 1);
    check("bracket unknot = 1", triad(&unknot) == Some(PhiScalar::ONE), &mut failures);
    let unlink = dg::add_free_loops(&unknot, 1);
    check("bracket 2-unlink = 0", triad(&unlink) == Some(PhiScalar::ZERO), &mut failures);
    let hopf = dg::numerator_closure(&dg::htwist(2).unwrap()).unwrap();
    check(
        "bracket hopf magnitude 2",
        triad(&hopf).map(|v| v.magnitude()) == Some(2),
        &mut failures,
    );
    let trefoil = dg::numerator_closure(&dg::htwist(3).unwrap()).unwrap();
    check(
        "bracket trefoil magnitude 3",
        triad(&trefoil).map(|v| v.magnitude()) == Some(3),
        &mut failures,
    );
    let fig8 = dg::denominator_closure(
        &dg::connect_v(&dg::htwist(2).unwrap(), &dg::vtwist(2).unwrap()).unwrap(),
    )
    .unwrap();
    check(
        "bracket figure-eight magnitude 5",
        triad(&fig8).map(|v| v.magnitude()) == Some(5),
        &mut failures,
    );

    let col = |p, q| ProjMatrix::column2(p, q);
    check(
        "f(t1) = [1;0]",
        inv_f(&dg::fundamental_tangle(1), &opts).ok() == Some(col(1, 0)),
        &mut failures,
    );
    check(
        "f(t2) = [0;1]",
        inv_f(&dg::fundamental_tangle(2), &opts).ok() == Some(col(0, 1)),
        &mut failures,
    );
    let tt = dg::connect_h(&dg::fundamental_tangle(1), &dg::fundamental_tangle(1)).unwrap();
    check("f(t1 +h t1) = [0;0]", inv_f(&tt, &opts).ok() == Some(col(0, 0)), &mut failures);
    check(
        "f(h(p)) = [p;1] for -3..=3",
        (-3..=3).all(|p| inv_f(&dg::htwist(p).unwrap(), &opts).ok() == Some(col(p, 1))),
        &mut failures,
    );
    check(
        "f(v(q)) = [1;q] for -3..=3",
        (-3..=3).all(|q| inv_f(&dg::vtwist(q).unwrap(), &opts).ok() == Some(col(1, q))),
        &mut failures,
    );
    let hh = dg::connect_h(&dg::htwist(1).unwrap(), &dg::htwist(1).unwrap()).unwrap();
    check("f(h(1) +h h(1)) = [2;1]", inv_f(&hh, &opts).ok() == Some(col(2, 1)), &mut failures);
    let three_zero = dg::connect_h(&dg::vtwist(3).unwrap(), &dg::fundamental_tangle(1)).unwrap();
    check(
        "[3;0] realized as v(3) +h t1",
        inv_f(&three_zero, &opts).ok() == Some(col(3, 0)),
        &mut failures,
    );

    check(
        "F(I) = identity",
        inv_fn(&dg::identity_spherical(), &opts).ok().map(|f| f.mat)
            == Some(ProjMatrix::identity2()),
        &mut failures,
    );
    let b = dg::connect_v(&dg::htwist(1).unwrap(), &dg::identity_spherical()).unwrap();
    let bb = dg::compose(&b, &b).unwrap();
    check(
        "F(b o b) = [[1,0],[2,1]]",
        inv_fn(&bb, &opts).ok().map(|f| f.mat) == Some(ProjMatrix::square2(1, 0, 2, 1)),
        &mut failures,
    );
    let zero = dg::add_free_loops(&dg::identity_spherical(), 1);
    check(
        "F(split circle) = 0",
        inv_fn(&zero, &opts).ok().map(|f| f.mat.is_zero()) == Some(true),
        &mut failures,
    );
    check(
        "four-box tangle matches its closed form",
        [[1i64, 1, 1, 1], [1, 0, 0, 0], [2, -1, 1, 0], [0, 1, 2, -2]].iter().all(|&p| {
            let d = dg::build_j(p[0], p[1], p[2], p[3]).unwrap();
            let f = inv_fn(&d, &BracketOpts { cap: 30, ..Default::default() }).unwrap();
            let (want, det) = j_formula(p[0], p[1], p[2], p[3]).unwrap();
            f.mat == want && f.mat.det2().unwrap() == det
        }),
        &mut failures,
    );
    check(
        "det residue witness [[1,0],[0,-1]] = 3",
        ProjMatrix::square2(1, 0, 0, -1).det_residue().ok() == Some(3),
        &mut failures,
    );
    check(
        "synth [5;3] round trip",
        {
            let s = synth_ball(&col(5, 3)).unwrap();
            inv_f(&s.diagram, &opts).ok() == Some(col(5, 3))
        },
        &mut failures,
    );

    if as_json {
        println!(
            "{}",
            json!({
                "version": 1,
                "command": "selftest",
                "failures": failures,
            })
        );
    }
    Ok(if failures.is_empty() { ExitCode::SUCCESS } else { ExitCode::from(1) })
}
