use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use num::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use krfusion::current::{
    check_theorem_relations, fusion_of_spec, g_decompose, graded_character, GradedModule,
};
use krfusion::dual::{
    basis_of_bar_u, compatibility_failures, compute_p, dim_v, dual_current_function, pair_sum,
    random_u_elements, residue_checks, root_vector_words, word_product, RationalElement, WordSum,
};
use krfusion::fermionic::{fermionic_multiplicity, fermionic_table, fermionic_total, KrSpec};
use krfusion::liealg::{
    build_cartan, dominance_compare, weyl_dim, CartanData, DominanceOrder, NTuplePartitions,
    Partition, RootVector, Weight,
};
use krfusion::linalg::{q, rank, SparseVec, Q};
use krfusion::pbw::{multiplicity_upper_bound, pbw_basis_degree, PbwMonomial};

type Outcome = Result<String, Vec<String>>;
type Criterion = (&'static str, fn() -> Outcome);

fn finish(checked: usize, what: &str, failures: Vec<String>) -> Outcome {
    if failures.is_empty() {
        Ok(format!("{checked} {what}"))
    } else {
        Err(failures)
    }
}

fn cartan(label: &str) -> CartanData {
    build_cartan(label).unwrap()
}

/// Multisets of sl₂ levels with `Σℓ ≤ 6` and at most four factors.
fn sl2_fixtures() -> Vec<KrSpec> {
    (1..=6)
        .flat_map(Partition::all)
        .filter(|p| p.len() <= 4)
        .map(|p| KrSpec::single_node(0, p.parts()).unwrap())
        .collect()
}

/// Per-γ multiplicities read off a `g`-decomposition.
fn decomposition_multiplicity(
    c: &CartanData,
    m: &GradedModule,
    lambda: &Weight,
    gamma: &RootVector,
) -> u64 {
    let mu = lambda - &c.rootvec_to_weight(gamma);
    g_decompose(m, c)
        .unwrap()
        .iter()
        .filter(|((w, _), _)| *w == mu)
        .map(|(_, k)| k)
        .sum()
}

/// The four engines on every `γ` with `λ − γ` dominant.
fn engines_agree(c: &CartanData, s: &KrSpec, m: &GradedModule, failures: &mut Vec<String>) {
    let lambda = s.lambda(c.rank());
    for (g, fer) in fermionic_table(c, s).unwrap() {
        let dec = decomposition_multiplicity(c, m, &lambda, &g);
        let ub = multiplicity_upper_bound(c, s, &g, None).unwrap().value;
        let dv = dim_v(c, s, &g).unwrap().value;
        if !(dec == fer && fer == ub && ub == dv) {
            failures.push(format!(
                "{} {s} γ={g}: g_decompose {dec}, fermionic {fer}, upper bound {ub}, dim V {dv}",
                c.type_label
            ));
        }
    }
}

fn criterion_1() -> Outcome {
    let a1 = cartan("A1");
    let mut failures = Vec::new();
    let fixtures = sl2_fixtures();
    for s in &fixtures {
        let m = fusion_of_spec(&a1, s, None).unwrap();
        let expected: usize = s.factors().iter().map(|f| f.level as usize + 1).product();
        if m.dim() != expected {
            failures.push(format!("{s}: dim {} != {expected}", m.dim()));
        }
        let rep = check_theorem_relations(&m, s);
        if !rep.all_passed() {
            failures.push(format!(
                "{s}: relations {:?}",
                rep.failures().collect::<Vec<_>>()
            ));
        }
        engines_agree(&a1, s, &m, &mut failures);
    }
    finish(fixtures.len(), "sl2 fusion products", failures)
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for label in ["A2", "A3"] {
        let c = cartan(label);
        for t in NTuplePartitions::all_up_to(c.rank(), 3) {
            if t.is_empty() {
                continue;
            }
            let s = KrSpec::from_tuple(&t).unwrap();
            let m = fusion_of_spec(&c, &s, None).unwrap();
            engines_agree(&c, &s, &m, &mut failures);
            let product: u64 = s
                .factors()
                .iter()
                .map(|f| {
                    weyl_dim(&c, &Weight::fundamental(c.rank(), f.node, f.level as i64)).unwrap()
                })
                .product();
            let total = fermionic_total(&c, &s).unwrap();
            if total != product {
                failures.push(format!("{label} {s}: fermionic total {total} != {product}"));
            }
            checked += 1;
        }
    }
    finish(checked, "A2/A3 specs", failures)
}

fn monomial_words(c: &CartanData, m: &PbwMonomial) -> WordSum {
    m.0.iter().fold(vec![(q(1), Vec::new())], |acc, l| {
        let beta = &c.positive_roots[l.root as usize];
        word_product(&acc, &root_vector_words(c, beta, l.k as i64).unwrap())
    })
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for (label, gamma) in [
        ("A1", vec![1]),
        ("A1", vec![2]),
        ("A2", vec![1, 1]),
        ("B2", vec![1, 1]),
        ("B2", vec![1, 2]),
    ] {
        let c = cartan(label);
        let gamma = RootVector(gamma);
        let h = gamma.height();
        for k in h..=h + 3 {
            let mons: Vec<PbwMonomial> = pbw_basis_degree(&c, &gamma, k)
                .into_iter()
                .filter(|m| m.0.iter().all(|l| l.k >= 1))
                .collect();
            let dual: Vec<RationalElement> = basis_of_bar_u(&c, &gamma, -(h as i32) - k as i32);
            let rows: Vec<SparseVec> = mons
                .iter()
                .map(|m| {
                    let w = monomial_words(&c, m);
                    dual.iter()
                        .enumerate()
                        .map(|(t, g)| (t, pair_sum(&w, g).unwrap().as_scalar().unwrap()))
                        .filter(|(_, x)| !x.is_zero())
                        .collect()
                })
                .collect();
            let r = rank(&rows);
            if mons.len() != dual.len() || r != mons.len() {
                failures.push(format!(
                    "{label} γ={gamma} degree {k}: {} × {} of rank {r}",
                    mons.len(),
                    dual.len()
                ));
            }
            checked += 1;
        }
    }
    finish(checked, "pairing matrices", failures)
}

/// `γ ∈ Q⁺` with `1 ≤ ht(γ) ≤ max`.
fn gammas_up_to(rank: usize, max: u32) -> Vec<RootVector> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=max - used).map(move |m| {
                    let mut w = v.clone();
                    w.push(m);
                    w
                })
            })
            .collect();
    }
    out.into_iter()
        .map(RootVector)
        .filter(|g| g.height() >= 1)
        .collect()
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut elements = 0;
    let mut nonzero = 0;
    for label in ["A1", "A2", "B2"] {
        let c = cartan(label);
        for gamma in gammas_up_to(c.rank(), 4) {
            let gs = random_u_elements(&c, &gamma, 100, &mut rng);
            if gs.len() < 100 {
                failures.push(format!("{label} γ={gamma}: only {} elements", gs.len()));
            }
            for g in &gs {
                let r = residue_checks(&c, g, &mut rng).unwrap();
                nonzero += r.nonzero_pairings;
                failures.extend(r.failures.into_iter().map(|f| format!("{label}: {f}")));
            }
            elements += gs.len();
        }
    }
    if nonzero == 0 {
        failures.push("every residue pairing vanished".into());
    }
    finish(elements, "random elements", failures)
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for label in ["A2", "B2", "C2", "G2"] {
        let c = cartan(label);
        for mu in NTuplePartitions::all_up_to(c.rank(), 6) {
            if mu.is_empty() {
                continue;
            }
            let p = compute_p(&c, &mu).unwrap();
            if p <= -(mu.total() as i64) {
                failures.push(format!("{label} μ={mu}: P = {p}"));
            }
            checked += 1;
        }
    }
    finish(checked, "tuples", failures)
}

fn criterion_6() -> Outcome {
    let a1 = cartan("A1");
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 1..=6 {
        let parts = Partition::all(n);
        let tables: Vec<KrSpec> = parts
            .iter()
            .map(|p| KrSpec::single_node(0, p.parts()).unwrap())
            .collect();
        for (a, mu) in parts.iter().enumerate() {
            for (b, nu) in parts.iter().enumerate() {
                if a == b || dominance_compare(mu, nu).unwrap() != DominanceOrder::Less {
                    continue;
                }
                for h in 0..=n / 2 {
                    let g = RootVector(vec![h]);
                    let x = fermionic_multiplicity(&a1, &tables[a], &g).unwrap();
                    let y = fermionic_multiplicity(&a1, &tables[b], &g).unwrap();
                    if x < y {
                        failures.push(format!("{mu} ≤ {nu}, γ={g}: {x} < {y}"));
                    }
                }
                checked += 1;
            }
        }
    }
    finish(checked, "dominance pairs", failures)
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for label in ["A2", "B2", "C2"] {
        let c = cartan(label);
        for gamma in &c.positive_roots {
            for k in 1..=3 {
                let g = dual_current_function(&c, gamma, k).unwrap();
                for (beta, l, v) in compatibility_failures(&c, &g, k, 3).unwrap() {
                    failures.push(format!(
                        "{label} g_({gamma},{k}) against f_({beta},{l}): {v}"
                    ));
                }
                checked += 1;
            }
        }
    }
    finish(checked, "dual current functions", failures)
}

fn criterion_8() -> Outcome {
    let a1 = cartan("A1");
    let point_sets: [Vec<Q>; 3] = [
        vec![q(0), q(1), q(2), q(3)],
        vec![q(5), q(-2), q(1) / q(3), q(7)],
        vec![q(-1), q(4), q(-7) / q(2), q(11) / q(5)],
    ];
    let mut failures = Vec::new();
    let fixtures = sl2_fixtures();
    for s in &fixtures {
        let p = s.factors().len();
        let chars: Vec<BTreeMap<(Weight, u32), u64>> = point_sets
            .iter()
            .map(|pts| graded_character(&fusion_of_spec(&a1, s, Some(&pts[..p])).unwrap()))
            .collect();
        if chars.windows(2).any(|w| w[0] != w[1]) {
            failures.push(format!("{s}: characters differ between point sets"));
        }
    }
    finish(fixtures.len(), "sl2 fusion products", failures)
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        (
            "sl2 fusion: dimension, relations, four engines",
            criterion_1,
        ),
        (
            "A2/A3 four-engine agreement and fermionic total",
            criterion_2,
        ),
        ("pairing of U(tn-[t]) with barU is perfect", criterion_3),
        (
            "residue relations, formula agreement, simple poles",
            criterion_4,
        ),
        ("P(mu) > -|mu| in A2, B2, C2, G2", criterion_5),
        ("sl2 fermionic monotonicity under dominance", criterion_6),
        ("compatibility of g_(gamma,k) in A2, B2, C2", criterion_7),
        ("fusion characters independent of points", criterion_8),
    ];
    let results: Vec<(Outcome, f64)> = std::thread::scope(|scope| {
        let handles: Vec<_> = criteria
            .iter()
            .map(|&(_, run)| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let r = run();
                    (r, start.elapsed().as_secs_f64())
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().unwrap()).collect()
    });
    let mut all = true;
    for (n, ((name, _), (result, secs))) in criteria.iter().zip(results).enumerate() {
        match result {
            Ok(summary) => println!("PASS criterion {}: {name} ({summary}, {secs:.1}s)", n + 1),
            Err(failures) => {
                all = false;
                println!(
                    "FAIL criterion {}: {name} ({} failures, {secs:.1}s)",
                    n + 1,
                    failures.len()
                );
                for f in failures.iter().take(10) {
                    println!("    {f}");
                }
            }
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
