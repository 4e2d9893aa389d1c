//! End-to-end acceptance suite. Each test covers one numbered criterion from
//! the README and prints a `PASS`/`FAIL` summary line with its counts.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use novikov_core::complexes::mapping_torus;
use novikov_core::document::{execute_command, parse_document, Command as DocCommand, CommandOptions};
use novikov_core::testing::{self, ComplexParams};
use novikov_core::{
    BasedChainComplex, Character, CoefficientDomain, HalfSpace, IntegralCone, IntegralSubset, PositivityVerdict,
    VanishingOptions,
};

const COMPLEXES: usize = 200;
const PROBES: usize = 50;

fn report(criterion: &str, failures: usize, detail: String) {
    let status = if failures == 0 { "PASS" } else { "FAIL" };
    println!("{status} criterion {criterion}: {detail}");
    assert_eq!(failures, 0, "criterion {criterion} failed: {detail}");
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

fn corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).unwrap()
}

/// The complexes of criterion 1, cycling through ℤ, ℚ and GF(2).
fn random_complexes() -> Vec<(BasedChainComplex, Vec<Character>)> {
    let mut rng = testing::rng(20_240_601);
    let params = ComplexParams::default();
    let domains = [CoefficientDomain::Integers, CoefficientDomain::Rationals, CoefficientDomain::PrimeField(2)];
    (0..COMPLEXES)
        .map(|i| {
            let rank = rng.gen_range(1..=3);
            let c = testing::random_complex(&mut rng, domains[i % 3], rank, &params);
            let probes = (0..PROBES).map(|_| testing::random_lattice_character(&mut rng, rank, 5)).collect();
            (c, probes)
        })
        .collect()
}

#[test]
fn criterion_1_oracle_equivalence() {
    let start = Instant::now();
    let opts = VanishingOptions::default();
    let parallel = VanishingOptions { jobs: 4, ..VanishingOptions::default() };
    let (mut probes, mut inside, mut failures, mut nonempty) = (0, 0, 0, 0);
    for (c, points) in random_complexes() {
        assert_eq!(c.validate(), Ok(()));
        let set = c.vanishing_set(&opts).unwrap().vanishing_set;
        if c.vanishing_set(&parallel).unwrap().vanishing_set != set {
            failures += 1;
            eprintln!("parallel result differs for {c:?}");
        }
        nonempty += usize::from(!set.is_empty());
        for xi in &points {
            probes += 1;
            let member = set.contains_point(xi).unwrap();
            inside += usize::from(member);
            if member != c.vanishes_at(xi).unwrap() {
                failures += 1;
                eprintln!("disagreement at {xi} for {c:?}");
            }
        }
    }
    let elapsed = start.elapsed();
    report(
        "1",
        failures + usize::from(elapsed > Duration::from_secs(300)),
        format!(
            "{COMPLEXES} complexes ({nonempty} with nonempty locus), {probes} probes ({inside} inside the locus), {failures} disagreements, {:.1}s",
            elapsed.as_secs_f64()
        ),
    );
}

fn random_points(rng: &mut testing::TestRng, rank: usize, n: usize) -> Vec<Character> {
    (0..n).map(|_| testing::random_rational_character(rng, rank, 6)).collect()
}

#[test]
fn criterion_2_and_3_subset_algebra_and_lattice_points() {
    let mut rng = testing::rng(7);
    let points: Vec<Vec<Character>> = (0..=4).map(|r| random_points(&mut rng, r, 1000)).collect();
    let (mut algebra_failures, mut lattice_failures, mut checks, mut lattice_checks) = (0, 0, 0, 0);
    let mut lattice_check = |s: &IntegralSubset, failures: &mut usize| {
        lattice_checks += 1;
        match s.lattice_point() {
            Some(p) => {
                if s.is_empty() || !s.contains_point(&Character::from_big_integers(&p)).unwrap() {
                    *failures += 1;
                }
            }
            None => *failures += usize::from(!s.is_empty()),
        }
    };
    for _ in 0..100 {
        let rank = rng.gen_range(1..=4);
        let (a, b) = (testing::random_subset(&mut rng, rank), testing::random_subset(&mut rng, rank));
        let complement = a.complement();
        let double = complement.complement();
        let meet = a.intersect(&b).unwrap();
        let join = a.union(&b).unwrap();
        let minus = a.difference(&b).unwrap();
        for xi in &points[rank] {
            checks += 1;
            let (ina, inb) = (a.contains_point(xi).unwrap(), b.contains_point(xi).unwrap());
            let ok = complement.contains_point(xi).unwrap() == !ina
                && double.contains_point(xi).unwrap() == ina
                && meet.contains_point(xi).unwrap() == (ina && inb)
                && join.contains_point(xi).unwrap() == (ina || inb)
                && minus.contains_point(xi).unwrap() == (ina && !inb);
            algebra_failures += usize::from(!ok);
        }
        for s in [&a, &b, &complement, &double, &meet, &join, &minus] {
            lattice_check(s, &mut lattice_failures);
        }
    }
    report(
        "2",
        algebra_failures,
        format!("100 subset pairs, {checks} point checks x 5 operations, {algebra_failures} failures"),
    );
    report("3", lattice_failures, format!("{lattice_checks} lattice-point queries, {lattice_failures} failures"));
}

#[test]
fn criterion_3_lattice_points_of_thin_cones() {
    // Cones whose only integer points are far from the origin.
    let cases = [
        (vec![HalfSpace::from_i64(&[3, -2], true), HalfSpace::from_i64(&[-5, 4], true)], true),
        (
            vec![
                HalfSpace::from_i64(&[7, -6], true),
                HalfSpace::from_i64(&[-8, 7], true),
                HalfSpace::from_i64(&[0, 1], true),
            ],
            true,
        ),
        (
            vec![
                HalfSpace::from_i64(&[1, -1], false),
                HalfSpace::from_i64(&[-1, 1], false),
                HalfSpace::from_i64(&[1, 1], true),
            ],
            true,
        ),
        (vec![HalfSpace::from_i64(&[1, -1], true), HalfSpace::from_i64(&[-1, 1], true)], false),
    ];
    let mut failures = 0;
    for (constraints, nonempty) in cases {
        let s = IntegralSubset::single(2, IntegralCone::new(constraints)).unwrap();
        match s.lattice_point() {
            Some(p) => {
                failures += usize::from(!nonempty || !s.contains_point(&Character::from_big_integers(&p)).unwrap())
            }
            None => failures += usize::from(nonempty),
        }
    }
    report("3 (thin cones)", failures, format!("4 hand-picked cones, {failures} failures"));
}

#[test]
fn criterion_4_fibered_vanishing() {
    let mut rng = testing::rng(4);
    let opts = VanishingOptions::default();
    let (mut failures, mut probes) = (0, 0);
    for _ in 0..50 {
        let (fiber, monodromy) = testing::random_mapping_torus_data(&mut rng, 4);
        let torus = mapping_torus(&fiber, &monodromy).unwrap();
        let set = torus.vanishing_set(&opts).unwrap().vanishing_set;
        for x in (-3..=3).filter(|&x| x != 0) {
            probes += 1;
            let xi = Character::from_integers(&[x]);
            if !set.contains_point(&xi).unwrap() || !torus.vanishes_at(&xi).unwrap() {
                failures += 1;
                eprintln!("mapping torus of {:?} does not vanish at {xi}", fiber.dims());
            }
        }
    }
    report("4", failures, format!("50 mapping tori, {probes} nonzero lattice probes, {failures} failures"));
}

#[test]
fn criterion_5_knot_regressions() {
    let nonzero = IntegralSubset::from_cones(
        1,
        vec![
            IntegralCone::new([HalfSpace::from_i64(&[1], true)]),
            IntegralCone::new([HalfSpace::from_i64(&[-1], true)]),
        ],
    )
    .unwrap();
    let opts = VanishingOptions::default();
    let mut failures = 0;
    let mut lines = Vec::new();
    for (file, fibered) in [("trefoil.json", true), ("figure_eight.json", true), ("five_two.json", false)] {
        let start = Instant::now();
        let doc = parse_document(&corpus(file)).unwrap();
        let c = doc.complex().unwrap();
        let set = c.vanishing_set(&opts).unwrap().vanishing_set;
        let verdict = c.verify_positive_vanishing(&doc.meridians, &opts).unwrap();
        let ok = match (&verdict, fibered) {
            (PositivityVerdict::Vanishes, true) => set.semantically_equal(&nonzero).unwrap(),
            (PositivityVerdict::Witness(v), false) => {
                let xi = Character::from_big_integers(v);
                doc.meridians.iter().all(|mu| xi.pair(mu) > BigRational::from_integer(BigInt::from(0)))
                    && !c.vanishes_at(&xi).unwrap()
            }
            _ => false,
        };
        let elapsed = start.elapsed();
        let ok = ok && elapsed < Duration::from_secs(5);
        failures += usize::from(!ok);
        lines.push(format!("{file}: {verdict} in {:.3}s", elapsed.as_secs_f64()));
    }
    report("5", failures, lines.join("; "));
}

#[test]
fn criterion_6_euler_betti_consistency() {
    let opts = VanishingOptions::default();
    let (mut failures, mut nonempty) = (0, 0);
    for (c, _) in random_complexes() {
        let betti = c.betti_numbers().unwrap();
        let alternating: i64 =
            betti.iter().enumerate().map(|(i, &b)| if i % 2 == 0 { b as i64 } else { -(b as i64) }).sum();
        let mut ok = alternating == c.euler_characteristic();
        if !c.vanishing_set(&opts).unwrap().vanishing_set.is_empty() {
            nonempty += 1;
            ok &= betti.iter().all(|&b| b == 0) && c.euler_characteristic() == 0;
        }
        failures += usize::from(!ok);
    }
    report("6", failures, format!("{COMPLEXES} complexes, {nonempty} with nonempty locus, {failures} failures"));
}

#[test]
fn criterion_7_scaling_invariance() {
    let (mut failures, mut checks) = (0, 0);
    for (c, points) in random_complexes() {
        for xi in &points {
            let base = c.vanishes_at(xi).unwrap();
            for lambda in [2, 3, 7] {
                checks += 1;
                let scaled = xi.scaled(&BigRational::from_integer(BigInt::from(lambda)));
                failures += usize::from(c.vanishes_at(&scaled).unwrap() != base);
            }
        }
    }
    report("7", failures, format!("{checks} scaled probes, {failures} failures"));
}

fn run_cli(args: &[&str]) -> (i32, Vec<u8>, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_novikov")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout, out.stderr)
}

fn corpus_files() -> Vec<PathBuf> {
    let mut files: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    files
}

#[test]
fn criterion_8_cli_determinism() {
    let max_jobs = std::thread::available_parallelism().map_or(1, |n| n.get()).max(2).to_string();
    let (mut runs, mut failures) = (0, 0);
    for file in corpus_files() {
        let input = file.to_str().unwrap();
        for cmd in ["vanish", "check", "betti", "euler", "positive", "fox", "torus"] {
            let reference = run_cli(&[cmd, "--input", input, "--jobs", "1"]);
            for jobs in ["1", max_jobs.as_str(), "0"] {
                runs += 1;
                let again = run_cli(&[cmd, "--input", input, "--jobs", jobs]);
                if again != reference {
                    failures += 1;
                    eprintln!("{cmd} on {input} differs with --jobs {jobs}");
                }
            }
            // `check` must never report a disagreement.
            if cmd == "check" && String::from_utf8_lossy(&reference.1).contains("DISAGREE") {
                failures += 1;
            }
        }
    }
    report(
        "8",
        failures,
        format!(
            "{} corpus documents, {runs} repeated runs (jobs 1 and {max_jobs}), {failures} mismatches",
            corpus_files().len()
        ),
    );
}

#[test]
fn canonical_corpus_round_trips() {
    let mut failures = 0;
    for file in corpus_files() {
        let text = std::fs::read_to_string(&file).unwrap();
        let doc = parse_document(&text).unwrap();
        if doc.to_canonical_string() != text {
            failures += 1;
            eprintln!("{} is not canonical", file.display());
        }
        // Documents emitted by `fox` and `torus` are canonical as well.
        for cmd in [DocCommand::Fox, DocCommand::Torus] {
            if let Ok(emitted) = execute_command(cmd, &doc, &CommandOptions::default()) {
                failures += usize::from(parse_document(&emitted).unwrap().to_canonical_string() != emitted);
            }
        }
    }
    report("round trip", failures, format!("{} documents, {failures} failures", corpus_files().len()));
}

#[test]
fn cli_exit_codes_and_diagnostics() {
    let invalid = corpus_dir().join("invalid");
    let path = |name: &str| invalid.join(name).to_str().unwrap().to_string();
    let mut failures = 0;
    let mut expect = |args: &[&str], code: i32, needle: &str| {
        let (status, _, stderr) = run_cli(args);
        let stderr = String::from_utf8_lossy(&stderr);
        if status != code || !stderr.contains(needle) {
            failures += 1;
            eprintln!("{args:?}: exit {status}, stderr {stderr}");
        }
    };
    expect(&["vanish", "--input", &path("gf4.json")], 3, "modulus must be prime");
    expect(&["vanish", "--input", &path("shape.json")], 3, "boundary A0");
    expect(&["vanish", "--input", &path("not_a_complex.json")], 3, "A1 * A0");
    expect(&["vanish", "--input", &path("bad_psi.json")], 3, "relator 1");
    expect(&["vanish", "--input", &path("syntax.json")], 2, "line 3");
    expect(&["vanish", "--input", &path("missing.json")], 1, "cannot read");
    let koszul = corpus_dir().join("koszul_rank2.json");
    let koszul = koszul.to_str().unwrap();
    expect(&["vanish", "--input", koszul, "--tau-cap", "1"], 4, "tau-chains exceed");
    expect(&["frobnicate", "--input", koszul], 1, "invalid value");
    let exact = corpus_dir().join("exact_but_uncertified.json");
    expect(&["positive", "--input", exact.to_str().unwrap()], 3, "meridians");
    expect(&["check", "--input", koszul, "--xi", "1"], 3, "coordinates");

    let (status, stdout, _) = run_cli(&["check", "--input", koszul, "--xi", "-1/2,3"]);
    failures += usize::from(status != 0 || !String::from_utf8_lossy(&stdout).contains("xi (-1/2, 3)"));
    report("exit codes", failures, format!("{failures} failures"));
}
