//! Acceptance suite: ten exact pass/fail criteria, one line each.
//! Runs without the libtest harness so the report is always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_traits::Zero;
use rand::Rng;

use common::*;
use sdmod_core::canonical::adversary::{
    adversary_demo, full_budget_strategy, limited_suite, Outcome,
};
use sdmod_core::value::{frac, int};
use sdmod_core::{
    counted, enumerate_faces, inequality_graph, inseparable_decomposition, is_sd_submodular,
    is_separable, is_strictly_submodular, is_submodular, lovasz_extension, phi_face, sd_transform,
    sd_view, solve_canonical, strict_canonical, zoo, GroundSet, Rational, SetFunction, Subset,
    TwoFace,
};

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn solution_set(g: &SetFunction) -> Result<Vec<u32>, String> {
    match solve_canonical(g) {
        None => Ok(Vec::new()),
        Some(family) => {
            let mut v: Vec<u32> = family
                .solutions()
                .map_err(|e| e.to_string())?
                .map(|s| s.0)
                .collect();
            v.sort();
            Ok(v)
        }
    }
}

fn c1_not_clique() -> Check {
    let f = zoo::not_clique();
    ensure(is_submodular(&f).is_yes(), || "not submodular".into())?;
    let strict = is_strictly_submodular(&f);
    let w = strict.witness.ok_or("strict check passed")?;
    let expect = TwoFace::new(Subset::EMPTY, 0, 2).unwrap();
    ensure(w.face == expect && w.slack.is_zero(), || {
        format!("witness {} with slack {}", w.face, w.slack)
    })?;
    let g = inequality_graph(&f);
    ensure(g.edges() == [(0, 1), (1, 2)], || {
        format!("edges {:?}", g.edges())
    })?;
    let family: Vec<Subset> = g.canonical_family().map_err(|e| e.to_string())?.collect();
    let mut family: Vec<u32> = family.iter().map(|s| s.0).collect();
    family.sort();
    ensure(family == [0, 0b111], || {
        format!("canonical family {family:?}")
    })
}

fn c2_three_way() -> Check {
    for n in 2..=5 {
        for f in zoo(n, 2) {
            let t = table(&f);
            if !brute_submodular(&t) {
                continue;
            }
            let graph = inequality_graph(&f);
            for s in Subset::all(n) {
                let a = is_sd_submodular(&f, s).map_err(|e| e.to_string())?;
                let b = graph.is_union_of_components(s);
                let c = brute_submodular(&brute_transform(&t, s.0));
                ensure(a == b && b == c, || {
                    format!("{} at n={n}, S={s}: {a} {b} {c}", f.provenance())
                })?;
            }
        }
    }
    Ok(())
}

fn c3_solver_complete() -> Check {
    let mut infeasible = 0;
    for n in 1..=5 {
        for g in zoo(n, 3) {
            let got = solution_set(&g)?;
            let want = brute_solutions(&table(&g));
            infeasible += usize::from(want.is_empty());
            ensure(got == want, || {
                format!(
                    "{} at n={n}: solver {got:?}, brute {want:?}",
                    g.provenance()
                )
            })?;
        }
    }
    ensure(infeasible > 0, || {
        "zoo produced no infeasible member".into()
    })
}

fn c4_strict_algorithm() -> Check {
    let mut r = rng(4);
    for n in 3..=16 {
        let ground = GroundSet::numbered(n).unwrap();
        let f = zoo::quadratic_strict(&ground).unwrap();
        let full = ground.full();
        for _ in 0..50 {
            let s = Subset(r.gen_range(0..1u32 << n));
            let g = counted(sd_view(&f, s));
            let t = strict_canonical(&g).map_err(|e| e.to_string())?;
            ensure(t == s || t == full - s, || format!("n={n}, S={s}: got {t}"))?;
            ensure(g.distinct_queries() == 2 * n, || {
                format!("n={n}: {} distinct queries", g.distinct_queries())
            })?;
        }
    }
    Ok(())
}

fn c5_min_dip() -> Check {
    for n in 3..=5 {
        let ground = GroundSet::numbered(n).unwrap();
        let full = ground.full();
        for u in Subset::all(n).filter(|&u| !u.is_empty() && u != full) {
            let g = zoo::min_dip(&ground, u);
            let mut want = vec![u.0, (full - u).0];
            want.sort();
            let got = solution_set(&g)?;
            ensure(got == want, || format!("n={n}, U={u}: solutions {got:?}"))?;
            ensure(brute_solutions(&table(&g)) == want, || {
                format!("n={n}, U={u}: brute disagrees")
            })?;
            let vals = g.values();
            let min = vals.iter().min().unwrap();
            let max = vals.iter().max().unwrap();
            ensure(
                vals[0] == *min && vals.iter().filter(|v| *v == min).count() == 1,
                || format!("U={u}: minimizer"),
            )?;
            ensure(
                vals[full.index()] == *max && vals.iter().filter(|v| *v == max).count() == 1,
                || format!("U={u}: maximizer"),
            )?;
        }
    }
    Ok(())
}

fn c6_modular_and_complement() -> Check {
    let mut r = rng(6);
    for n in 1..=5 {
        let ground = GroundSet::numbered(n).unwrap();
        for _ in 0..5 {
            let w: Vec<Rational> = (0..n)
                .map(|_| frac(r.gen_range(-9..=9), r.gen_range(1..=4)))
                .collect();
            let f = zoo::modular(&ground, &w, int(r.gen_range(-5..=5))).unwrap();
            for s in Subset::all(n) {
                let g = sd_transform(&f, s);
                ensure(
                    sdmod_core::is_modular(&g).is_yes() && brute_modular(&table(&g)),
                    || format!("n={n}, S={s}: transform not modular"),
                )?;
            }
        }
        for g in zoo(n, 6) {
            let t = table(&g);
            let full = ground.full();
            if let Some(family) = solve_canonical(&g) {
                for sol in family.solutions().map_err(|e| e.to_string())? {
                    let c = full - sol;
                    ensure(
                        family.contains(c) && brute_submodular(&brute_transform(&t, c.0)),
                        || format!("{}: complement of {sol} rejected", g.provenance()),
                    )?;
                }
            }
        }
    }
    Ok(())
}

fn c7_partition() -> Check {
    let mut r = rng(7);
    for k in 0..20 {
        let n = 1 + k % 8;
        let ground = GroundSet::numbered(n).unwrap();
        let parts = random_partition(&mut r, n);
        let f = zoo::partition_distance(&ground, &parts).unwrap();
        ensure(
            is_submodular(&f).is_yes() && brute_submodular(&table(&f)),
            || format!("partition {parts:?} at n={n} not submodular"),
        )?;
    }
    for k in 0..30 {
        let n = 1 + k % 6;
        let ground = GroundSet::numbered(n).unwrap();
        let parts = random_partition(&mut r, n);
        let masks: Vec<u32> = parts.iter().map(|p| p.0).collect();
        let f = zoo::partition_distance(&ground, &parts).unwrap();
        let t = table(&f);
        for s in Subset::all(n) {
            let got = is_sd_submodular(&f, s).map_err(|e| e.to_string())?;
            let want = is_union_of(&masks, s.0);
            ensure(
                got == want && brute_submodular(&brute_transform(&t, s.0)) == want,
                || format!("parts {parts:?}, S={s}: got {got}, want {want}"),
            )?;
        }
    }
    Ok(())
}

fn c8_decomposition() -> Check {
    let mut r = rng(8);
    for k in 0..24 {
        let n = 1 + k % 12;
        let ground = GroundSet::numbered(n).unwrap();
        let parts = random_partition(&mut r, n);
        let f = zoo::block_quadratic(&ground, &parts).unwrap();
        let dec = inseparable_decomposition(&f).map_err(|e| e.to_string())?;
        ensure(dec.parts == parts, || {
            format!("n={n}: parts {:?}, built from {parts:?}", dec.parts)
        })?;
        let t = table(&f);
        for x in 0..t.len() as u32 {
            let rho = |m: u32| &t[m as usize] - &t[0];
            let sum: Rational = parts.iter().map(|p| rho(x & p.0)).sum();
            ensure(rho(x) == sum, || {
                format!("n={n}: additivity fails at {x:#b}")
            })?;
        }
        if n <= 8 {
            separability(&f, &t)?;
        }
    }
    for n in 2..=8 {
        let ground = GroundSet::numbered(n).unwrap();
        let parts: Vec<Subset> = [Subset::full(n / 2), Subset::full(n) - Subset::full(n / 2)]
            .into_iter()
            .filter(|p| !p.is_empty())
            .collect();
        let f = zoo::partition_distance(&ground, &parts).unwrap();
        let t = table(&f);
        let dec = inseparable_decomposition(&f).map_err(|e| e.to_string())?;
        let comps: Vec<Subset> = brute_components(&t).into_iter().map(Subset).collect();
        ensure(dec.parts == comps, || {
            format!("n={n}: parts {:?} vs components {comps:?}", dec.parts)
        })?;
        separability(&f, &t)?;
    }
    Ok(())
}

fn separability(f: &SetFunction, t: &Table) -> Check {
    let n = f.n();
    let comps = brute_components(t);
    let full = Subset::full(n);
    for u in Subset::all(n).filter(|&u| !u.is_empty() && u != full) {
        let got = is_separable(f, u).map_err(|e| e.to_string())?;
        ensure(got == is_union_of(&comps, u.0), || {
            format!("{}: is_separable({u}) = {got}", f.provenance())
        })?;
    }
    Ok(())
}

fn c9_lovasz() -> Check {
    let mut violations = 0;
    for n in 1..=6 {
        for f in zoo(n, 9) {
            for x in Subset::all(n) {
                let chi: Vec<Rational> = (0..n).map(|i| int(i64::from(x.contains(i)))).collect();
                let v = lovasz_extension(&f, &chi).map_err(|e| e.to_string())?;
                ensure(v == *f.get(x), || {
                    format!("{}: f̂(χ_{x}) = {v}", f.provenance())
                })?;
            }
            if is_submodular(&f).is_yes() {
                continue;
            }
            for face in enumerate_faces(f.ground()) {
                let slack = phi_face(&f, face);
                if slack >= Rational::zero() {
                    continue;
                }
                let (u, v) = face.pair();
                let base: Vec<Rational> = (0..n)
                    .map(|i| int(i64::from(face.base().contains(i))))
                    .collect();
                let mut a = base.clone();
                a[u] = int(1);
                let mut b = base.clone();
                b[v] = int(1);
                let mut mid = base;
                mid[u] = frac(1, 2);
                mid[v] = frac(1, 2);
                let ext = |p: &[Rational]| lovasz_extension(&f, p).map_err(|e| e.to_string());
                let gap = ext(&mid)? - (ext(&a)? + ext(&b)?) / int(2);
                ensure(gap == -&slack / int(2), || {
                    format!("{}: gap {gap} at {face}", f.provenance())
                })?;
                violations += 1;
            }
        }
    }
    ensure(violations > 0, || "no violating faces exercised".into())
}

fn c10_adversary() -> Check {
    let n = 3;
    let budget = (1 << n) - 3;
    let suite = limited_suite(n);
    ensure(!suite.is_empty(), || "empty suite".into())?;
    for mut strategy in suite {
        let rec = adversary_demo(n, budget, strategy.as_mut()).map_err(|e| e.to_string())?;
        match rec.outcome {
            Outcome::Refuted {
                dip,
                canonical,
                verified: true,
            } => {
                let answer = rec.answer.ok_or("refuted without an answer")?;
                ensure(
                    !canonical.contains(&answer) && !rec.queries.contains(&dip),
                    || format!("{}: inconsistent refutation", rec.strategy),
                )?;
            }
            other => return Err(format!("{}: {other:?}", rec.strategy)),
        }
    }
    let mut full = full_budget_strategy(n);
    let rec = adversary_demo(n, budget + 1, &mut full).map_err(|e| e.to_string())?;
    ensure(matches!(rec.outcome, Outcome::NotRefutable { .. }), || {
        format!("full budget: {:?}", rec.outcome)
    })
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("not_clique fixture", c1_not_clique, Duration::from_secs(1)),
        (
            "three-way SD-submodularity equivalence",
            c2_three_way,
            Duration::from_secs(60),
        ),
        (
            "canonical solver completeness",
            c3_solver_complete,
            Duration::from_secs(60),
        ),
        (
            "strict algorithm with 2n queries",
            c4_strict_algorithm,
            Duration::from_secs(30),
        ),
        (
            "min-dip canonical sets",
            c5_min_dip,
            Duration::from_secs(30),
        ),
        (
            "modular invariance and complement closure",
            c6_modular_and_complement,
            Duration::MAX,
        ),
        ("partition distance", c7_partition, Duration::from_secs(120)),
        ("inseparable decomposition", c8_decomposition, Duration::MAX),
        ("Lovász consistency", c9_lovasz, Duration::MAX),
        ("adversary demo", c10_adversary, Duration::from_secs(5)),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed < limit, || {
                format!("took {elapsed:?}, limit {limit:?}")
            })
        });
        match result {
            Ok(()) => println!(
                "criterion {:>2} PASS {name} ({:.2}s)",
                i + 1,
                elapsed.as_secs_f64()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {:>2} FAIL {name} ({:.2}s): {why}",
                    i + 1,
                    elapsed.as_secs_f64()
                );
            }
        }
    }
    println!("{} of 10 criteria passed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
