//! One line per acceptance criterion. Runs without the libtest harness so
//! the report reads top to bottom; exits nonzero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{brute_force, copies, goldens, random_complex, random_css, theorem_input, theorem_violations, Family};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use wtred::chain::{kunneth_check, mapping_cone, tensor_product, ChainComplex, ChainMap};
use wtred::classical::code_from_base;
use wtred::classical_wtred::{best_permutation, reduce_full, ReductionOptions};
use wtred::css::{css_distance, hgp, hgp_params, lp_square, CssCode, DistanceOptions, Weights};
use wtred::distance::Distance;
use wtred::fixtures::{code633, code734, hamming743, qc, qrm4};
use wtred::gf2::BinaryMatrix;
use wtred::quantum_wtred::*;
use wtred::tanner::{count_4cycles, count_copy_4cycles, copying_cycle_formula, TannerGraph};

type Outcome = Result<String, String>;

fn fin(d: usize) -> Distance {
    Distance::Finite(d)
}

fn within(w: Weights, bound: (usize, usize, usize, usize)) -> bool {
    let (a, b, c, d) = w.as_tuple();
    a <= bound.0 && b <= bound.1 && c <= bound.2 && d <= bound.3
}

fn hgp_rows() -> Outcome {
    let opts = DistanceOptions { budget: 8, ..Default::default() };
    let mut notes = Vec::new();
    for (name, h, n, k, d) in [
        ("[6,3,3]", code633(), 45, 9, 3),
        ("[7,3,4]", code734(), 65, 9, 4),
        ("[7,4,3]", hamming743(), 58, 16, 3),
    ] {
        let t = Instant::now();
        let p = hgp_params(&h, &h, &opts);
        let took = t.elapsed();
        if (p.n, p.k) != (n, k) || !p.d().exact || p.d().value != fin(d) {
            return Err(format!("{name}: got {p}, want [[{n},{k},{d}]]"));
        }
        if took > Duration::from_secs(1) {
            return Err(format!("{name} took {took:?}"));
        }
        notes.push(format!("{name} -> [[{n},{k},{d}]]"));
    }
    Ok(notes.join(", "))
}

fn hgp_distance(m: &BinaryMatrix) -> usize {
    let opts = DistanceOptions { budget: m.cols(), ..Default::default() };
    let d = hgp_params(m, m, &opts).d();
    assert!(d.exact, "small classical distances are exact");
    d.value.finite().unwrap_or(usize::MAX)
}

fn classical_reduction() -> Outcome {
    let h = code633();
    let mut notes = Vec::new();
    for (name, opts, n) in [
        ("plain", ReductionOptions::plain(), 117),
        ("compressed", ReductionOptions::compressed(), 65),
    ] {
        let r = reduce_full(&h, &opts).map_err(|e| e.to_string())?;
        let c = hgp(&r, &r);
        if (c.n(), c.k()) != (n, 9) || !within(c.weights(), (6, 3, 6, 3)) {
            return Err(format!("{name}: n={} k={} weights {}", c.n(), c.k(), c.weights()));
        }
        let unpermuted = hgp_distance(&r);
        let (_, seed, best) = best_permutation(&h, &opts, 10_000, hgp_distance).map_err(|e| e.to_string())?;
        if best < 4 {
            return Err(format!("{name}: best d {best} over 10000 permutations"));
        }
        notes.push(format!("{name} [[{n},9,{unpermuted}->{best}]] (seed {seed}) {}", c.weights()));
    }
    Ok(notes.join(", "))
}

fn reduction_theorem() -> Outcome {
    let families = [Family::Generic, Family::HeavyRows, Family::HeavyCols];
    let bad: Vec<String> = (0..500u64)
        .into_par_iter()
        .flat_map_iter(|seed| {
            let h = theorem_input(seed, families[seed as usize % 3]);
            theorem_violations(&h, seed).into_iter().map(move |v| format!("seed {seed}: {v}"))
        })
        .collect();
    if bad.is_empty() {
        Ok("500 matrices, 0 violations".into())
    } else {
        Err(format!("{} violations, first: {}", bad.len(), bad[0]))
    }
}

fn qrm_pipeline() -> Outcome {
    let c = qrm4();
    let opts = DistanceOptions::default();
    let variants = [
        (CopyVariant::Original, 60, 7, 724, 3),
        (CopyVariant::Reduced, 32, 4, 512, 2),
        (CopyVariant::Targeted { targ_q_x: 3 }, 16, 3, 315, 2),
    ];
    let mut notes = Vec::new();
    for (variant, n_copy, d_copy, n_final, d_final) in variants {
        let copied = copying(&c, variant).map_err(|e| e.to_string())?.code;
        let p = css_distance(&copied, &opts);
        if (p.n, p.k, p.d().value) != (n_copy, 1, fin(d_copy)) || !p.d().exact {
            return Err(format!("{variant:?} copying gave {p}"));
        }
        if variant == CopyVariant::Original && copied.weights().as_tuple() != (8, 3, 32, 10) {
            return Err(format!("original copying weights {}", copied.weights()));
        }
        let spec = HeightsSpec {
            ell: 3,
            heights: Heights::Explicit(vec![2, 1, 2, 1, 2, 3, 1, 3, 3, 1]),
        };
        let res = full_pipeline(&c, &PipelineOptions::new(variant, spec)).map_err(|e| e.to_string())?;
        let p = css_distance(&res.code, &opts);
        if p.k != 1 || p.d().value != fin(d_final) || !p.d().exact {
            return Err(format!("{variant:?} pipeline gave {p}"));
        }
        let coning_delta = res.code.n() as i64 - n_final as i64;
        if coning_delta != 0 {
            return Err(format!("{variant:?}: n = {} vs {n_final}, coning stage differs by {coning_delta}", res.code.n()));
        }
        notes.push(format!("[[{n_copy},1,{d_copy}]] -> [[{},1,{}]]", p.n, d_final));
    }
    Ok(notes.join(", "))
}

fn cycle_census() -> Outcome {
    let c = qrm4();
    let mut deltas = Vec::new();
    for (variant, want) in [
        (CopyVariant::Original, 906),
        (CopyVariant::Reduced, 564),
        (CopyVariant::Targeted { targ_q_x: 3 }, 55),
    ] {
        let out = copying(&c, variant).map_err(|e| e.to_string())?;
        let new = count_copy_4cycles(&TannerGraph::from_css(&out.code), &out.origin).total();
        if new != want {
            return Err(format!("{variant:?}: {new} new 4-cycles, want {want}"));
        }
        deltas.push(new.to_string());
    }
    for seed in 0..100 {
        let c = random_css(seed, 10);
        for variant in [CopyVariant::Original, CopyVariant::Reduced, CopyVariant::Targeted { targ_q_x: 3 }] {
            let out = copying(&c, variant).map_err(|e| e.to_string())?;
            let g = TannerGraph::from_css(&out.code);
            if count_4cycles(&g) != brute_force(&g) {
                return Err(format!("seed {seed} {variant:?}: census differs from enumeration"));
            }
            if count_copy_4cycles(&g, &out.origin) != copying_cycle_formula(&c, &copies(&out.origin, c.n())) {
                return Err(format!("seed {seed} {variant:?}: lemma formula differs"));
            }
        }
    }
    Ok(format!("deltas {}, lemma holds on 100 random codes", deltas.join("/")))
}

fn worked_examples() -> Outcome {
    goldens::copying_worked_example();
    goldens::gauging_worked_example();
    goldens::thickening_worked_example();
    goldens::coning_worked_example();
    goldens::octagon_triangulation();
    Ok("copying, gauging, thickening, coning, octagon".into())
}

fn composes(c: &ChainComplex) -> bool {
    (c.lo() + 2..=c.hi()).all(|i| c.boundary(i - 1).mul(&c.boundary(i)).is_zero())
}

fn chain_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    use rand::Rng;
    for pair in 0..200 {
        let da: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=5)).collect();
        let db: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..=5)).collect();
        let (a, b) = (random_complex(&mut rng, &da), random_complex(&mut rng, &db));
        let t = tensor_product(&a, &b);
        let cone = mapping_cone(&ChainMap::identity(&a));
        if !(composes(&a) && composes(&b) && composes(&t) && composes(&cone)) {
            return Err(format!("pair {pair}: a boundary pair does not compose to zero"));
        }
        if let Some(l) = kunneth_check(&a, &b).into_iter().find(|l| !l.pass) {
            return Err(format!("pair {pair}: Kunneth fails at degree {}: {} vs {}", l.degree, l.product, l.expected));
        }
        if (cone.lo()..=cone.hi()).any(|i| cone.homology_dim(i) != 0) {
            return Err(format!("pair {pair}: cone of identity has homology"));
        }
    }
    goldens::thickening_matches_direct_formula();
    let c: CssCode = gauging(&copying(&qrm4(), CopyVariant::Reduced).map_err(|e| e.to_string())?.code)
        .map_err(|e| e.to_string())?;
    for ell in 2..=4 {
        let prod = tensor_product(&c.chain_complex(), &ChainComplex::repetition(ell));
        let (tx, tz, d3) = goldens::thickening_direct(&c, ell);
        if prod.boundary(1) != tx || prod.boundary(2) != tz.transpose() || prod.boundary(3) != d3 {
            return Err(format!("tensor product with repetition({ell}) differs from the block formula"));
        }
    }
    Ok("200 pairs: d^2 = 0, Kunneth, acyclic cones; CSS x repetition matches".into())
}

fn lifted_products() -> Outcome {
    let mut notes = Vec::new();
    let opts = DistanceOptions { budget: 4, trials: 5000, seed: 0 };
    for (item, n, k, published) in [(1, 260, 58, 6), (3, 175, 19, 10)] {
        let a = qc(item).expect("fixture");
        let c = lp_square(&a);
        if (c.n(), c.k()) != (n, k) {
            return Err(format!("item {item}: (n,k) = ({}, {}), want ({n}, {k})", c.n(), c.k()));
        }
        let d = css_distance(&c, &opts).d();
        let looser = d.value > fin(published);
        notes.push(format!(
            "LP item {item} [[{n},{k},{d}]] vs <={published}{}",
            if looser { format!(" (looser after {} samples)", opts.trials) } else { String::new() }
        ));
    }
    let t = Instant::now();
    let classical = code_from_base(&qc(1).expect("fixture"));
    match classical.min_distance_exact(6).map_err(|e| e.to_string())? {
        Some(6) => notes.push(format!("[{},{},6] exact in {:.1?}", classical.n(), classical.k(), t.elapsed())),
        other => return Err(format!("classical item 1 distance {other:?}, want 6")),
    }
    Ok(notes.join(", "))
}

fn quantum_vs_classical() -> Outcome {
    let h = code633();
    let c = hgp(&h, &h);
    let mut opts = PipelineOptions::new(
        CopyVariant::Targeted { targ_q_x: 3 },
        HeightsSpec {
            ell: 10,
            heights: Heights::Greedy(3),
        },
    );
    opts.coning = ConingOptions {
        basis: CycleBasis::Short,
        trials: 100,
        ..ConingOptions::default()
    };
    let res = full_pipeline(&c, &opts).map_err(|e| e.to_string())?;
    let code = &res.code;
    let w = code.weights();
    if code.k() != 9 || !within(w, (6, 6, 6, 3)) || !(1446..=5784).contains(&code.n()) {
        return Err(format!("n={} k={} weights {w}", code.n(), code.k()));
    }
    let p = css_distance(code, &DistanceOptions::default());
    let lower = p.d().lower.finite().unwrap_or(usize::MAX);
    if lower < 3 {
        return Err(format!("distance {} (lower bound {lower})", p.d()));
    }
    Ok(format!("[[{},9,{}]] weights {w}, best of 100 trials at trial {}", code.n(), p.d(), res.coning_trial))
}

fn run(id: usize, name: &str, f: fn() -> Outcome) -> bool {
    let t = Instant::now();
    let out = match panic::catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(e) => Err(e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panicked".into())),
    };
    let (tag, detail) = match &out {
        Ok(d) => ("PASS", d),
        Err(d) => ("FAIL", d),
    };
    println!("criterion {id} {tag} {name} ({:.1?}): {detail}", t.elapsed());
    out.is_ok()
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    panic::set_hook(Box::new(|_| {}));
    let criteria: [Criterion; 9] = [
        ("hypergraph product goldens", hgp_rows),
        ("classical reduction lengths and distance", classical_reduction),
        ("reduction distance theorem on random matrices", reduction_theorem),
        ("Reed-Muller quantum pipeline", qrm_pipeline),
        ("4-cycle census", cycle_census),
        ("worked-example matrices", worked_examples),
        ("chain complex suite", chain_suite),
        ("lifted product goldens", lifted_products),
        ("quantum vs classical reduction", quantum_vs_classical),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.into_iter().enumerate() {
        if !run(i + 1, name, f) {
            failed += 1;
        }
    }
    println!("criterion 10 SKIP decoder simulations are out of scope");
    println!("{} of 9 criteria passed", 9 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
