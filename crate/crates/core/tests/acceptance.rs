//! End-to-end checks against exhaustive enumeration, one line per check.
//!
//! Runs as a plain binary (`harness = false`) and exits nonzero if any check
//! misses its threshold.

use std::process::ExitCode;
use std::time::Instant;

use algmatch::lmp::build_y;
use algmatch::matching::det_pencil;
use algmatch::oracle::{brute_pfaffian, enum_parity_bases, enum_perfect_matchings};
use algmatch::{
    Edge, Error, LmpFile, LmpInstance, Outcome, Polynomial, PrimeModulus, SkewMatrix, Solver,
    SubstitutedTutte, WeightedGraph,
};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

struct Check {
    pass: bool,
    detail: String,
}

fn check(pass: bool, detail: impl Into<String>) -> Check {
    Check {
        pass,
        detail: detail.into(),
    }
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize, density: f64) -> WeightedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            for w in 0..2 {
                if rng.random_bool(density) {
                    edges.push(Edge::new(u, v, w).unwrap());
                }
            }
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

/// Simple graphs on `n` vertices from a bitmask over the pairs `u < v`.
fn graph_from_mask(n: usize, mask: u64) -> WeightedGraph {
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in (u + 1)..n {
            if mask >> bit & 1 == 1 {
                edges.push(Edge::new(u, v, (bit % 2) as u8).unwrap());
            }
            bit += 1;
        }
    }
    WeightedGraph::new(n, edges).unwrap()
}

fn existence() -> Check {
    let mut graphs = vec![graph_from_mask(2, 0), graph_from_mask(2, 1)];
    graphs.extend((0..64).map(|mask| graph_from_mask(4, mask)));
    let mut rng = ChaCha8Rng::seed_from_u64(0xE1);
    while graphs.len() < 2 + 64 + 500 {
        let mut mask = 0u64;
        let edges = rng.random_range(0..=9);
        while (mask.count_ones() as usize) < edges {
            mask |= 1 << rng.random_range(0..15);
        }
        graphs.push(graph_from_mask(6, mask));
    }
    let (mut pairs, mut false_neg, mut false_pos) = (0usize, 0usize, 0usize);
    for g in &graphs {
        let truth = enum_perfect_matchings(g).unwrap().count() > 0;
        let s = Solver::for_instance_size(g.n());
        for seed in 0..100 {
            let got = s
                .has_perfect_matching(g, &mut ChaCha8Rng::seed_from_u64(seed))
                .unwrap();
            pairs += 1;
            match (truth, got) {
                (true, false) => false_neg += 1,
                (false, true) => false_pos += 1,
                _ => {}
            }
        }
    }
    let rate = (false_neg + false_pos) as f64 / pairs as f64;
    check(
        rate < 1e-3 && false_pos == 0,
        format!(
            "{} graphs x 100 seeds: {false_neg} false negatives, {false_pos} false positives (rate {rate:.2e} < 1e-3)",
            graphs.len()
        ),
    )
}

fn pfaffian_identity() -> Check {
    let m = PrimeModulus::new(1_048_583).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE2);
    let (mut squares, mut expansions, mut bad) = (0, 0, 0);
    for n in (2..=12).step_by(2) {
        for _ in 0..100 {
            let mut a = SkewMatrix::zeros(m, n);
            for i in 0..n {
                for j in (i + 1)..n {
                    // a third of the entries zero, to exercise pivoting
                    if rng.random_bool(0.67) {
                        a.set_pair(i, j, m.sample(&mut rng));
                    }
                }
            }
            let pf = a.pfaffian().unwrap();
            squares += 1;
            bad += usize::from(pf * pf != a.determinant());
            if n <= 8 {
                expansions += 1;
                bad += usize::from(pf != brute_pfaffian(&a).unwrap());
            }
        }
    }
    check(
        bad == 0,
        format!("{squares} squared-pfaffian checks, {expansions} signed expansion checks, {bad} mismatches"),
    )
}

fn pencil_determinant() -> Check {
    let m = PrimeModulus::new(1_048_583).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0xE3);
    let (mut graphs, mut bad, mut skipped) = (0, 0, 0);
    while graphs < 200 {
        let n = 2 * rng.random_range(1..=5);
        let g = random_graph(&mut rng, n, 0.4);
        let st = SubstitutedTutte::substitute(&g, &mut rng, m).unwrap();
        let d = match det_pencil(st.pencil()) {
            Ok(d) => d,
            Err(Error::Singular) => {
                skipped += 1;
                continue;
            }
            Err(e) => return check(false, format!("unexpected error {e}")),
        };
        graphs += 1;
        for _ in 0..20 {
            let a = m.sample(&mut rng);
            bad += usize::from(d.eval(a) != st.pencil().at(a).determinant());
        }
    }
    check(
        bad == 0,
        format!("{graphs} nonsingular graphs x 20 points ({skipped} singular draws skipped), {bad} mismatches"),
    )
}

/// Graphs and seeds shared by the profile and construction checks.
fn profile_corpus() -> Vec<(WeightedGraph, u64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE4);
    (0..300)
        .map(|i| {
            let n = 2 * rng.random_range(1..=4);
            (random_graph(&mut rng, n, 0.45), 1000 + i)
        })
        .collect()
}

fn weight_profiles(corpus: &[(WeightedGraph, u64)]) -> Check {
    let (mut exact, mut unsound) = (0, 0);
    for (g, seed) in corpus {
        let truth = enum_perfect_matchings(g).unwrap().weight_set(g.n());
        let s = Solver::for_instance_size(g.n());
        let got = s
            .weight_profile(g, &mut ChaCha8Rng::seed_from_u64(*seed))
            .unwrap();
        exact += usize::from(got.feasible == truth);
        unsound += got
            .feasible_weights()
            .iter()
            .filter(|&&k| !truth[k])
            .count();
    }
    let rate = exact as f64 / corpus.len() as f64;
    check(
        rate >= 0.99 && unsound == 0,
        format!(
            "{exact}/{} profiles exact ({:.1}% >= 99%), {unsound} unsound weights",
            corpus.len(),
            100.0 * rate
        ),
    )
}

fn exact_construction(corpus: &[(WeightedGraph, u64)]) -> Check {
    let (mut pairs, mut ok, mut invalid) = (0, 0, 0);
    for (g, seed) in corpus {
        let truth = enum_perfect_matchings(g).unwrap().weight_set(g.n());
        let s = Solver::for_instance_size(g.n());
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5EED);
        for k in (0..truth.len()).filter(|&k| truth[k]) {
            pairs += 1;
            match s.find_exact_matching(g, k, &mut rng).unwrap() {
                Outcome::Found(m) if m.weight == k && m.is_perfect_in(g) => ok += 1,
                Outcome::Found(_) => invalid += 1,
                Outcome::Infeasible { .. } => {}
            }
        }
    }
    let rate = ok as f64 / pairs as f64;
    check(
        rate >= 0.99 && invalid == 0,
        format!(
            "{ok}/{pairs} (graph, k) pairs solved ({:.1}% >= 99%), {invalid} invalid outputs",
            100.0 * rate
        ),
    )
}

fn polynomial_sqrt() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE6);
    let (mut roots, mut bad) = (0, 0);
    for p in [1_048_583u64, 1_000_000_007] {
        let m = PrimeModulus::new(p).unwrap();
        let random_poly = |rng: &mut ChaCha8Rng, deg: usize| {
            let mut c: Vec<_> = (0..deg).map(|_| m.sample(rng)).collect();
            c.push(m.elem(rng.random_range(1..p)));
            Polynomial::from_coeffs(m, c)
        };
        for _ in 0..200 {
            let deg = rng.random_range(0..=10);
            let f = random_poly(&mut rng, deg);
            let g = (&f * &f).sqrt(&mut rng).unwrap();
            roots += 1;
            bad += usize::from(g != f && g != -&f);
        }
    }
    let m = PrimeModulus::new(1_048_583).unwrap();
    let non_residue = (2..).map(|a| m.elem(a)).find(|a| !a.is_square()).unwrap();
    let mut rejected = 0;
    for i in 0..50 {
        let deg = rng.random_range(0..=5);
        let f = {
            let mut c: Vec<_> = (0..deg).map(|_| m.sample(&mut rng)).collect();
            c.push(m.one());
            Polynomial::from_coeffs(m, c)
        };
        let f2 = &f * &f;
        let d = match i % 3 {
            // times an irreducible quadratic y^2 - r
            0 => &f2 * &Polynomial::from_coeffs(m, vec![-non_residue, m.zero(), m.one()]),
            // non-residue leading coefficient
            1 => f2.scale(non_residue),
            // odd degree
            _ => &f2 * &Polynomial::from_u64s(m, &[3, 1]),
        };
        rejected += usize::from(matches!(d.sqrt(&mut rng), Err(Error::NotASquare)));
    }
    check(
        bad == 0 && rejected == 50,
        format!("{roots} squares recovered up to sign with {bad} failures, {rejected}/50 non-squares rejected"),
    )
}

fn embedding_equivalence() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE7);
    let (mut same_pencil, mut same_profile) = (0, 0);
    for i in 0..100u64 {
        let n = rng.random_range(1..=8);
        let g = random_graph(&mut rng, n, 0.4);
        let s = Solver::for_instance_size(n);
        let inst = LmpInstance::embed_matching(&g, s.modulus());
        let st = SubstitutedTutte::substitute(&g, &mut ChaCha8Rng::seed_from_u64(i), s.modulus())
            .unwrap();
        let (y, _) = build_y(&inst, &mut ChaCha8Rng::seed_from_u64(i));
        same_pencil += usize::from(&y == st.pencil());
        let a = s
            .weight_profile(&g, &mut ChaCha8Rng::seed_from_u64(i))
            .unwrap();
        let b = s
            .lmp_weight_profile(&inst, &mut ChaCha8Rng::seed_from_u64(i))
            .unwrap();
        same_profile += usize::from(a.feasible == b.feasible);
    }
    check(
        same_pencil == 100 && same_profile == 100,
        format!("{same_pencil}/100 pencils identical, {same_profile}/100 profiles identical"),
    )
}

fn parity_base_extraction() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xE8);
    let (mut instances, mut ok, mut drawn) = (0, 0, 0);
    while instances < 100 {
        drawn += 1;
        let nv = 2 * rng.random_range(1..=3);
        let m = rng.random_range(nv / 2..=8);
        let column = |rng: &mut ChaCha8Rng| -> Vec<i64> {
            (0..nv)
                .map(|_| {
                    if rng.random_bool(0.5) {
                        0
                    } else {
                        rng.random_range(-3..=3)
                    }
                })
                .collect()
        };
        let file = LmpFile {
            nv,
            lines: (0..m)
                .map(|_| (column(&mut rng), column(&mut rng), rng.random_range(0..=1)))
                .collect(),
        };
        let s = Solver::for_instance_size(nv);
        let inst = file.to_instance(s.modulus());
        let bases = enum_parity_bases(&inst).unwrap();
        if bases.is_empty() {
            continue;
        }
        instances += 1;
        if let Outcome::Found(b) = s.find_parity_base(&inst, &mut rng).unwrap() {
            ok += usize::from(bases.iter().any(|(l, w)| *l == b.lines && *w == b.weight));
        }
    }
    check(
        ok >= 99,
        format!(
            "{ok}/100 instances with a parity base returned an enumerated base ({drawn} drawn)"
        ),
    )
}

fn small_prime_bound() -> Check {
    // 8-cycle with two chords
    let g = WeightedGraph::from_triples(
        8,
        &[
            (0, 1, 0),
            (1, 2, 1),
            (2, 3, 0),
            (3, 4, 1),
            (4, 5, 0),
            (5, 6, 1),
            (6, 7, 0),
            (0, 7, 1),
            (0, 4, 0),
            (2, 6, 1),
        ],
    )
    .unwrap();
    assert!(enum_perfect_matchings(&g).unwrap().count() > 0);
    let s = Solver::new(PrimeModulus::new(101).unwrap()).allow_small_prime();
    let trials = 100_000u64;
    let misses = (0..trials)
        .filter(|&seed| {
            !s.has_perfect_matching(&g, &mut ChaCha8Rng::seed_from_u64(seed))
                .unwrap()
        })
        .count();
    let rate = misses as f64 / trials as f64;
    let bound = 8.0 / 101.0;
    check(
        rate <= bound,
        format!("false-negative rate {rate:.4} over {trials} seeds at p=101 (bound {bound:.4})"),
    )
}

fn main() -> ExitCode {
    let corpus = profile_corpus();
    type Run<'a> = Box<dyn Fn() -> Check + 'a>;
    let checks: Vec<(&str, Run)> = vec![
        ("existence vs enumeration", Box::new(existence)),
        (
            "pfaffian squares and expansion",
            Box::new(pfaffian_identity),
        ),
        ("pencil determinant", Box::new(pencil_determinant)),
        ("weight profile", Box::new(|| weight_profiles(&corpus))),
        (
            "exact construction",
            Box::new(|| exact_construction(&corpus)),
        ),
        ("polynomial square root", Box::new(polynomial_sqrt)),
        ("parity embedding", Box::new(embedding_equivalence)),
        ("parity base extraction", Box::new(parity_base_extraction)),
        ("small-prime error rate", Box::new(small_prime_bound)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in checks.iter().enumerate() {
        let start = Instant::now();
        let c = run();
        failed += usize::from(!c.pass);
        println!(
            "{} {} {name}: {} [{:.1}s]",
            i + 1,
            if c.pass { "PASS" } else { "FAIL" },
            c.detail,
            start.elapsed().as_secs_f64()
        );
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} check(s) failed");
        ExitCode::FAILURE
    }
}
