use algmatch::gf::{arith, ArithOp};
use algmatch::lmp::{build_y, build_y_with_values};
use algmatch::matching::{det_pencil, fix_vertex_weight, pencil_pfaffian, pf_pencil};
use algmatch::oracle::{brute_pfaffian, enum_parity_bases, enum_perfect_matchings};
use algmatch::{
    Edge, Error, FieldElement, FieldMatrix, LmpFile, LmpInstance, Outcome, Polynomial,
    PrimeModulus, SkewMatrix, Solver, SubstitutedTutte, WeightedGraph,
};
use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;

const P: u64 = 1_048_583;

fn md() -> PrimeModulus {
    PrimeModulus::new(P).unwrap()
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn any_prime() -> impl Strategy<Value = PrimeModulus> {
    prop::sample::select(vec![
        3u64,
        101,
        65_537,
        P,
        1_000_000_007,
        18_446_744_073_709_551_557,
    ])
    .prop_map(|p| PrimeModulus::new(p).unwrap())
}

fn elems(m: PrimeModulus, v: &[u64]) -> Vec<FieldElement> {
    v.iter().map(|&x| m.elem(x)).collect()
}

fn square(m: PrimeModulus, n: usize, v: &[u64]) -> FieldMatrix {
    FieldMatrix::from_fn(m, n, n, |i, j| m.elem(v[i * n + j]))
}

fn skew(m: PrimeModulus, n: usize, v: &[u64]) -> SkewMatrix {
    let mut s = SkewMatrix::zeros(m, n);
    let mut it = v.iter();
    for i in 0..n {
        for j in (i + 1)..n {
            s.set_pair(i, j, m.elem(*it.next().unwrap()));
        }
    }
    s
}

/// Weighted graphs on `0..=max_n` vertices; pairs may carry both weights.
fn graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    (0..=max_n).prop_flat_map(|n| {
        let slots = n * n.saturating_sub(1);
        prop::collection::vec(prop::bool::weighted(0.35), slots).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut it = bits.into_iter();
            for u in 0..n {
                for v in (u + 1)..n {
                    for w in 0..2 {
                        if it.next().unwrap() {
                            edges.push(Edge::new(u, v, w).unwrap());
                        }
                    }
                }
            }
            WeightedGraph::new(n, edges).unwrap()
        })
    })
}

fn even_graph(max_n: usize) -> impl Strategy<Value = WeightedGraph> {
    graph(max_n).prop_filter("even vertex count", |g| g.n() % 2 == 0)
}

fn poly(m: PrimeModulus, max_deg: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(0..m.p(), 0..=max_deg + 1)
        .prop_map(move |c| Polynomial::from_coeffs(m, elems(m, &c)))
}

fn lmp_file(max_nv: usize, max_m: usize) -> impl Strategy<Value = LmpFile> {
    (1..=max_nv, 0..=max_m).prop_flat_map(|(nv, m)| {
        prop::collection::vec(
            (
                prop::collection::vec(-2i64..=2, nv),
                prop::collection::vec(-2i64..=2, nv),
                0u8..=1,
            ),
            m,
        )
        .prop_map(move |lines| LmpFile { nv, lines })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    // prime field

    #[test]
    fn inverse_round_trips(m in any_prime(), a in any::<u64>()) {
        let a = m.elem(a);
        prop_assume!(!a.is_zero());
        let inv = a.inv().unwrap();
        prop_assert!((a * inv).is_one());
        prop_assert_eq!(inv.inv().unwrap(), a);
    }

    #[test]
    fn sqrt_is_a_root_or_a_non_residue(m in any_prime(), b in any::<u64>(), seed in any::<u64>()) {
        let b = m.elem(b);
        match b.sqrt(&mut rng(seed)) {
            Some(a) => prop_assert_eq!(a * a, b),
            None => prop_assert_eq!(b.pow((m.p() - 1) / 2), -m.one()),
        }
    }

    #[test]
    fn field_axioms(m in any_prime(), a in any::<u64>(), b in any::<u64>(), c in any::<u64>()) {
        let (a, b, c) = (m.elem(a), m.elem(b), m.elem(c));
        prop_assert_eq!((a + b) + c, a + (b + c));
        prop_assert_eq!((a * b) * c, a * (b * c));
        prop_assert_eq!(a + b, b + a);
        prop_assert_eq!(a * b, b * a);
        prop_assert_eq!(a * (b + c), a * b + a * c);
        prop_assert_eq!(arith(a, b, ArithOp::Sub).unwrap() + b, a);
    }

    // polynomials

    #[test]
    fn sqrt_of_square_is_plus_or_minus(f in poly(md(), 10), seed in any::<u64>()) {
        let g = (&f * &f).sqrt(&mut rng(seed)).unwrap();
        prop_assert!(g == f || g == -&f);
    }

    #[test]
    fn shift_keeps_degree_and_reverse_bounds_it(f in poly(md(), 12), c in any::<u64>(), extra in 0usize..4) {
        prop_assert_eq!(f.taylor_shift(md().elem(c)).degree(), f.degree());
        let n = f.degree().unwrap_or(0) + extra;
        let r = f.reverse(n).unwrap();
        prop_assert!(r.degree().is_none_or(|d| d <= n));
        prop_assert_eq!(r.reverse(n).unwrap(), f);
    }

    #[test]
    fn interpolation_inverts_evaluation(f in poly(md(), 10), start in 0u64..1000) {
        let m = md();
        let pts: Vec<_> = (0..=10u64).map(|i| {
            let x = m.elem(start + 7 * i);
            (x, f.eval(x))
        }).collect();
        prop_assert_eq!(Polynomial::interpolate(&pts).unwrap(), f);
    }

    #[test]
    fn coefficients_reassemble(f in poly(md(), 10)) {
        let m = md();
        let mut sum = Polynomial::zero(m);
        for k in 0..=f.degree().unwrap_or(0) {
            sum = &sum + &Polynomial::monomial(f.coeff(k), k);
        }
        prop_assert_eq!(sum, f);
    }

    // matrices

    #[test]
    fn determinant_is_multiplicative(
        n in 1usize..7,
        a in prop::collection::vec(0..P, 36),
        b in prop::collection::vec(0..P, 36),
    ) {
        let (a, b) = (square(md(), n, &a), square(md(), n, &b));
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), a.determinant().unwrap() * b.determinant().unwrap());
    }

    #[test]
    fn charpoly_is_monic_with_signed_determinant(n in 0usize..9, v in prop::collection::vec(0..P, 64)) {
        let a = square(md(), n, &v);
        let c = a.charpoly().unwrap();
        prop_assert_eq!(c.degree(), Some(n));
        prop_assert!(c.leading().is_one());
        let sign = if n % 2 == 0 { md().one() } else { -md().one() };
        prop_assert_eq!(c.coeff(0), sign * a.determinant().unwrap());
    }

    #[test]
    fn charpoly_is_similarity_invariant(
        n in 1usize..8,
        a in prop::collection::vec(0..P, 49),
        q in prop::collection::vec(0..P, 49),
    ) {
        let a = square(md(), n, &a);
        let q = square(md(), n, &q);
        let Some(qi) = q.inverse().unwrap() else { return Ok(()) };
        let b = qi.matmul(&a).unwrap().matmul(&q).unwrap();
        prop_assert_eq!(b.charpoly().unwrap(), a.charpoly().unwrap());
    }

    #[test]
    fn pfaffian_squares_to_determinant(h in 0usize..7, v in prop::collection::vec(0..P, 66)) {
        let s = skew(md(), 2 * h, &v);
        let pf = s.pfaffian().unwrap();
        prop_assert_eq!(pf * pf, s.determinant());
    }

    #[test]
    fn pfaffian_matches_expansion(h in 0usize..5, v in prop::collection::vec(0..P, 28), zeros in prop::collection::vec(any::<bool>(), 28)) {
        // sparse matrices exercise the pivot search
        let v: Vec<u64> = v.iter().zip(&zeros).map(|(&x, &z)| if z { 0 } else { x }).collect();
        let s = skew(md(), 2 * h, &v);
        prop_assert_eq!(s.pfaffian().unwrap(), brute_pfaffian(&s).unwrap());
    }

    // substituted Tutte matrices

    #[test]
    fn tutte_sum_is_skew_on_edges(g in graph(8), seed in any::<u64>()) {
        let st = SubstitutedTutte::substitute(&g, &mut rng(seed), md()).unwrap();
        let t = st.sum();
        let a = t.as_matrix();
        prop_assert_eq!(a.transpose().neg(), a.clone());
        for u in 0..g.n() {
            for v in 0..g.n() {
                let adjacent = g.edges().iter().any(|e| (e.u, e.v) == (u.min(v), u.max(v)));
                if !adjacent {
                    prop_assert!(a[(u, v)].is_zero());
                }
            }
        }
        let again = SubstitutedTutte::substitute(&g, &mut rng(seed), md()).unwrap();
        prop_assert_eq!(again.pencil(), st.pencil());
    }

    #[test]
    fn deleting_a_star_clears_its_row(g in graph(8), seed in any::<u64>(), v in 0usize..8) {
        prop_assume!(v < g.n());
        let st = SubstitutedTutte::substitute(&g, &mut rng(seed), md()).unwrap();
        let h = st.delete_edges(&g.incident(v)).unwrap();
        prop_assert!(h.sum().as_matrix().row(v).iter().all(|x| x.is_zero()));
        prop_assert!(h.live_edges().iter().all(|e| !e.touches(v)));
    }

    // matching

    #[test]
    fn existence_is_one_sided(g in graph(8), seed in any::<u64>()) {
        let s = Solver::for_instance_size(8);
        let truth = enum_perfect_matchings(&g).unwrap().count() > 0;
        let got = s.has_perfect_matching(&g, &mut rng(seed)).unwrap();
        prop_assert!(!got || truth);
    }

    #[test]
    fn found_matchings_are_perfect(g in even_graph(8), seed in any::<u64>()) {
        let s = Solver::for_instance_size(8);
        let truth = enum_perfect_matchings(&g).unwrap();
        match s.find_perfect_matching(&g, &mut rng(seed)).unwrap() {
            Outcome::Found(m) => {
                prop_assert!(m.is_perfect_in(&g));
                prop_assert_eq!(m.weight, m.edges.iter().filter(|e| e.w == 1).count());
            }
            Outcome::Infeasible { .. } => prop_assert_eq!(truth.count(), 0),
        }
    }

    #[test]
    fn profile_is_sound(g in graph(8), seed in any::<u64>()) {
        let s = Solver::for_instance_size(8);
        let truth = enum_perfect_matchings(&g).unwrap().weight_set(g.n());
        let got = s.weight_profile(&g, &mut rng(seed)).unwrap();
        for k in got.feasible_weights() {
            prop_assert!(truth[k], "k={} reported without a matching", k);
        }
    }

    #[test]
    fn pencil_determinant_evaluates_correctly(g in even_graph(8), seed in any::<u64>(), alphas in prop::collection::vec(0..P, 20)) {
        let m = md();
        let st = SubstitutedTutte::substitute(&g, &mut rng(seed), m).unwrap();
        let Ok(d) = det_pencil(st.pencil()) else { return Ok(()) };
        for a in alphas {
            let a = m.elem(a);
            prop_assert_eq!(d.eval(a), st.pencil().at(a).determinant());
        }
    }

    #[test]
    fn pencil_pfaffian_degree_and_weight_zero(g in even_graph(8), seed in any::<u64>()) {
        let st = SubstitutedTutte::substitute(&g, &mut rng(seed), md()).unwrap();
        let pf = pencil_pfaffian(st.pencil(), &mut rng(seed ^ 1)).unwrap();
        prop_assert!(pf.degree().is_none_or(|d| d <= g.n() / 2));
        let light = enum_perfect_matchings(&g).unwrap().weights.contains(&0);
        prop_assert_eq!(!pf.coeff(0).is_zero(), light);
        if let Ok(q) = pf_pencil(st.pencil(), &mut rng(seed)) {
            prop_assert!(q == pf || q == -&pf);
        }
    }

    #[test]
    fn vertex_steps_conserve_the_target(g in even_graph(8), seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let truth = enum_perfect_matchings(&g).unwrap();
        prop_assume!(!truth.weights.is_empty());
        let k = truth.weights[pick.index(truth.weights.len())];
        let mut r = rng(seed);
        let mut h = SubstitutedTutte::substitute(&g, &mut r, md()).unwrap();
        prop_assume!(!pencil_pfaffian(h.pencil(), &mut r).unwrap().coeff(k).is_zero());
        for v in 0..g.n() {
            h = fix_vertex_weight(&h, v, k, &mut r).unwrap().0;
            prop_assert!(!pencil_pfaffian(h.pencil(), &mut r).unwrap().coeff(k).is_zero());
        }
    }

    #[test]
    fn exact_matchings_have_the_requested_weight(g in even_graph(8), seed in any::<u64>(), k in 0usize..5) {
        let s = Solver::for_instance_size(8);
        prop_assume!(k <= g.n() / 2);
        if let Outcome::Found(m) = s.find_exact_matching(&g, k, &mut rng(seed)).unwrap() {
            prop_assert!(m.is_perfect_in(&g));
            prop_assert_eq!(m.weight, k);
        }
        let too_big = s.find_exact_matching(&g, g.n() / 2 + 1, &mut rng(seed));
        let rejected = matches!(too_big, Err(Error::WeightOutOfRange { .. }));
        prop_assert!(rejected);
    }

    // linear matroid parity

    #[test]
    fn build_y_is_skew(f in lmp_file(6, 8), seed in any::<u64>()) {
        let inst = f.to_instance(md());
        let (p, vals) = build_y(&inst, &mut rng(seed));
        for part in [p.low(), p.high()] {
            prop_assert_eq!(part.as_matrix().transpose().neg(), part.as_matrix().clone());
        }
        prop_assert_eq!(build_y_with_values(&inst, &vals).unwrap(), p);
    }

    #[test]
    fn embedding_matches_tutte_determinants(g in graph(8), seed in any::<u64>(), alphas in prop::collection::vec(0..P, 10)) {
        let m = md();
        let st = SubstitutedTutte::substitute(&g, &mut rng(seed), m).unwrap();
        let (y, _) = build_y(&LmpInstance::embed_matching(&g, m), &mut rng(seed));
        for a in alphas {
            let a = m.elem(a);
            prop_assert_eq!(y.at(a).determinant(), st.pencil().at(a).determinant());
        }
    }

    #[test]
    fn embedded_profile_agrees(g in graph(8), seed in any::<u64>()) {
        let s = Solver::for_instance_size(8);
        let a = s.weight_profile(&g, &mut rng(seed)).unwrap();
        let b = s.lmp_weight_profile(&LmpInstance::embed_matching(&g, s.modulus()), &mut rng(seed)).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn parity_bases_found_are_bases(f in lmp_file(6, 8), seed in any::<u64>()) {
        let s = Solver::for_instance_size(6);
        let inst = f.to_instance(s.modulus());
        let bases = enum_parity_bases(&inst).unwrap();
        match s.find_parity_base(&inst, &mut rng(seed)).unwrap() {
            Outcome::Found(b) => {
                prop_assert_eq!(2 * b.lines.len(), inst.nv());
                prop_assert_eq!(inst.columns_of(&b.lines).rank(), inst.nv());
                prop_assert!(bases.iter().any(|(l, w)| *l == b.lines && *w == b.weight));
            }
            Outcome::Infeasible { probable } => prop_assert!(probable || bases.is_empty()),
        }
    }

    #[test]
    fn parity_base_weights_count_heavy_lines(f in lmp_file(6, 8)) {
        let inst = f.to_instance(md());
        for (lines, w) in enum_parity_bases(&inst).unwrap() {
            let heavy = lines.iter().filter(|&&l| f.lines[l].2 == 1).count();
            prop_assert_eq!(w, heavy);
            prop_assert!(inst.is_parity_base(&lines));
        }
    }

    // oracles

    #[test]
    fn brute_pfaffian_squares_to_determinant(h in 0usize..5, v in prop::collection::vec(0..P, 28)) {
        let s = skew(md(), 2 * h, &v);
        let pf = brute_pfaffian(&s).unwrap();
        prop_assert_eq!(pf * pf, s.as_matrix().det_inv().unwrap().0);
    }

    #[test]
    fn embedded_bases_mirror_matchings(g in graph(6)) {
        prop_assume!(g.edges().len() <= 12);
        let mut a: Vec<usize> = enum_parity_bases(&LmpInstance::embed_matching(&g, md()))
            .unwrap()
            .into_iter()
            .map(|(_, w)| w)
            .collect();
        let mut b = enum_perfect_matchings(&g).unwrap().weights;
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn residue_count_is_half_the_units() {
    for p in [3u64, 5, 7, 11, 13, 53, 101] {
        let m = PrimeModulus::new(p).unwrap();
        let squares = (1..p).filter(|&a| m.elem(a).is_square()).count() as u64;
        assert_eq!(squares, (p - 1) / 2);
    }
}

#[test]
fn double_factorial_counts() {
    for k in 1..=4usize {
        let n = 2 * k;
        let mut t = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                t.push((u, v, 0));
            }
        }
        let g = WeightedGraph::from_triples(n, &t).unwrap();
        let expected: usize = (1..n).step_by(2).product();
        assert_eq!(enum_perfect_matchings(&g).unwrap().count(), expected);
    }
}

#[test]
fn existence_on_every_labeled_six_vertex_graph() {
    let pairs: Vec<(usize, usize)> = (0..6)
        .flat_map(|u| ((u + 1)..6).map(move |v| (u, v)))
        .collect();
    let s = Solver::for_instance_size(6);
    let mut r = rng(6);
    let mut disagreements = 0;
    for mask in 0u32..1 << pairs.len() {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(i, &(u, v))| Edge::new(u, v, (i % 2) as u8).unwrap())
            .collect();
        let g = WeightedGraph::new(6, edges).unwrap();
        let truth = enum_perfect_matchings(&g).unwrap().count() > 0;
        let got = s.has_perfect_matching(&g, &mut r).unwrap();
        assert!(!got || truth, "false positive on mask {mask:#x}");
        disagreements += usize::from(got != truth);
    }
    // one-sided error at most 3/p per graph
    assert!(disagreements <= 2, "{disagreements} false negatives");
}
