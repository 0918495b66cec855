//! Acceptance suite: one PASS/FAIL line per criterion. Exits nonzero if any
//! criterion fails.

mod common;

use anncat::algebra::{find_isomorphism, Bimodule, FiniteRing};
use anncat::ann_category::{
    aut_functor, enumerate_regular_functors, functors_congruent, search_functors, AnnCategoryRM, HomPair,
};
use anncat::cochain::{
    delta1, delta2, is_ann_structure, is_cocycle3, stream_cochains, Cochain, Cochain1, Cochain2, Cochain3, Component,
};
use anncat::cohomology::{classify_ann_structures, cohomology_group, same_class, z1_group};
use anncat::extension::{bicenter_module, build_extension, obstruction, obstruction_with};
use anncat::guard::SizeGuard;
use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn guard() -> SizeGuard {
    SizeGuard::default()
}

fn z(n: usize) -> FiniteRing {
    FiniteRing::cyclic(n).unwrap()
}

fn dual() -> FiniteRing {
    FiniteRing::dual_numbers(2).unwrap()
}

fn oracle_equivalence() -> Outcome {
    let start = Instant::now();
    let m2 = Bimodule::regular(&z(2));
    let checker = anncat::ann_category::CoherenceChecker::new(m2.ring());
    let all: Vec<Cochain3> = stream_cochains(&m2, 16).map_err(|e| e.to_string())?.collect();
    ensure(all.len() == 4, format!("expected 4 cochains over Z2, found {}", all.len()))?;
    for f in &all {
        ensure(oracle_agrees(&checker, &m2, f), format!("disagreement on {f:?}"))?;
    }
    let mut cocycles = Vec::new();
    for (name, m, seed) in [("Z3", Bimodule::regular(&z(3)), 1), ("Z2[e]", Bimodule::regular(&dual()), 2)] {
        let (c, disagreements) = oracle_sample(&m, 10_000, seed);
        ensure(disagreements == 0, format!("{name}: {disagreements} disagreements"))?;
        cocycles.push(c);
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, format!("took {secs:.1}s"))?;
    Ok(format!("4 + 2 x 10^4 cochains agree ({} and {} cocycles), {secs:.1}s", cocycles[0], cocycles[1]))
}

fn differentials_compose_to_zero() -> Outcome {
    const EXHAUSTIVE: u128 = 4096;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let (mut pairs, mut checked) = (0, 0usize);
    for (name, m) in corpus() {
        let ones: Vec<Cochain1> = match stream_cochains(&m, EXHAUSTIVE) {
            Ok(all) => all.collect(),
            Err(_) => (0..10_000).map(|_| random_cochain(&m, &mut rng)).collect(),
        };
        let twos: Vec<Cochain2> = match stream_cochains(&m, EXHAUSTIVE) {
            Ok(all) => all.collect(),
            Err(_) => (0..10_000).map(|_| random_cochain(&m, &mut rng)).collect(),
        };
        for a in &ones {
            ensure(delta2(&m, &delta1(&m, a)).is_zero(), format!("{name}: d2 d1 a != 0 for {a:?}"))?;
        }
        for g in &twos {
            ensure(is_cocycle3(&m, &delta2(&m, g)).passed(), format!("{name}: d2 g is not a cocycle for {g:?}"))?;
        }
        pairs += 1;
        checked += ones.len() + twos.len();
    }
    ensure(pairs >= 4, "fewer than 4 pairs")?;
    Ok(format!("{pairs} pairs, {checked} cochains"))
}

fn classification() -> Outcome {
    let mut summary = Vec::new();
    for (name, m) in corpus() {
        let h3 = cohomology_group(3, &m, &guard()).map_err(|e| e.to_string())?;
        let structures = classify_ann_structures(&m, &guard()).map_err(|e| e.to_string())?;
        ensure(structures.len() as u128 == h3.order(), format!("{name}: {} structures", structures.len()))?;
        let cocycles: Vec<Cochain3> = structures.iter().map(|s| s.to_cocycle(&m)).collect();
        for (i, f) in cocycles.iter().enumerate() {
            for f2 in &cocycles[i + 1..] {
                let related = same_class(&m, f, f2, &guard()).map_err(|e| e.to_string())?;
                ensure(related.is_none(), format!("{name}: two representatives are congruent"))?;
            }
        }
        if let Some(n) = brute_force_order(3, &m, 1 << 16) {
            ensure(n == h3.order(), format!("{name}: listing gives {n}, pipeline {}", h3.order()))?;
            summary.push(format!("{name} listed"));
        }
    }
    let m2 = Bimodule::regular(&z(2));
    let n = classify_ann_structures(&m2, &guard()).map_err(|e| e.to_string())?.len();
    ensure(n == 1, format!("Z2 has {n} classes"))?;
    Ok(format!("{} pairs, Z2 has 1 class, {}", corpus().len(), summary.join(", ")))
}

fn h2_fixture() -> Outcome {
    let m = Bimodule::regular(&z(2));
    let h2 = cohomology_group(2, &m, &guard()).map_err(|e| e.to_string())?;
    ensure(h2.group().invariant_factors() == [2], format!("H2 has factors {:?}", h2.group().invariant_factors()))?;
    ensure(brute_force_order(2, &m, 16) == Some(2), "listing disagrees")?;
    Ok("H2(Z2, Z2) = Z2 by both methods".into())
}

fn functor_classes() -> Outcome {
    let m = Bimodule::regular(&z(2));
    let zero = Cochain3::zero(2);
    let pair = HomPair::identity(&m);
    let enumerated = enumerate_regular_functors(&pair, &zero, &zero, &guard()).map_err(|e| e.to_string())?;
    let h2 = cohomology_group(2, &m, &guard()).map_err(|e| e.to_string())?.order();
    ensure(enumerated.len() == 2 && h2 == 2, format!("{} classes, |H2| = {h2}", enumerated.len()))?;
    let congruent = |f, g| functors_congruent(f, g, &guard()).map(|w| w.is_some()).map_err(|e| e.to_string());
    ensure(!congruent(&enumerated[0], &enumerated[1])?, "the two classes are congruent")?;
    let cat = AnnCategoryRM::strict(&m);
    let found = search_functors(&cat, &cat, &pair, &guard()).map_err(|e| e.to_string())?;
    for f in &found {
        let hits = enumerated.iter().map(|e| congruent(f, e)).collect::<Result<Vec<_>, _>>()?;
        ensure(hits.iter().filter(|&&h| h).count() == 1, format!("search found an unlisted class {:?}", f.data))?;
    }
    Ok(format!("2 classes, {} searched functors all covered", found.len()))
}

fn automorphisms() -> Outcome {
    let mut sizes = Vec::new();
    for (name, m, expected) in [("Z2", Bimodule::regular(&z(2)), 1), ("Z2[e]", Bimodule::regular(&dual()), 4)] {
        let z1 = z1_group(&m, &guard()).map_err(|e| e.to_string())?.order();
        let zero = Cochain3::zero(m.ring().order());
        let functors =
            enumerate_regular_functors(&HomPair::identity(&m), &zero, &zero, &guard()).map_err(|e| e.to_string())?;
        let identity = &functors[0];
        ensure(identity.data.is_zero(), "first functor is not the identity")?;
        let n = aut_functor(identity, &guard()).map_err(|e| e.to_string())?.len();
        ensure(n as u128 == z1 && n == expected, format!("{name}: {n} automorphisms, |Z1| = {z1}"))?;
        sizes.push(format!("{name} {n}"));
    }
    Ok(sizes.join(", "))
}

fn obstruction_family() -> Outcome {
    let (mut checked, mut literal_failures) = (0, 0);
    for inst in extension_matrix() {
        for theta in &inst.lifts {
            let least = obstruction(&inst.ma, &inst.r, theta, &guard()).map_err(|e| e.to_string())?;
            let (_, module) = bicenter_module(&inst.ma, &inst.r, theta).map_err(|e| e.to_string())?;
            for (f, g) in admissible_factor_sets(&inst, &least.f, &least.g) {
                let o = obstruction_with(&inst.ma, &inst.r, theta, f.clone(), g.clone(), &guard())
                    .map_err(|e| e.to_string())?;
                ensure(is_ann_structure(&module, &o.family).passed(), format!("{}: corrected family fails", inst.name))?;
                checked += 1;
                literal_failures += !literal_family_passes(&inst, theta, &module, &f, &g) as usize;
            }
        }
    }
    ensure(literal_failures > 0, "the uncorrected formulas never fail")?;
    Ok(format!("corrected family passes on {checked} choices; uncorrected fails on {literal_failures}"))
}

fn extension_realization() -> Outcome {
    let inst = extension_matrix().into_iter().find(|i| i.name == "null Z2 by Z2").ok_or("missing instance")?;
    let theta = inst.lifts.first().ok_or("no regular lift")?;
    let (_, module) = bicenter_module(&inst.ma, &inst.r, theta).map_err(|e| e.to_string())?;
    let h2 = cohomology_group(2, &module, &guard()).map_err(|e| e.to_string())?.order();
    let mut rings = Vec::new();
    for (f, g) in admissible_factor_sets(&inst, &[0; 4], &[0; 4]) {
        let e = build_extension(&inst.ma, &inst.r, theta, &f, &g).map_err(|e| e.to_string())?;
        ensure(is_exact(inst.ma.base(), &e.ring, &inst.r, &e.inclusion, &e.projection), "sequence is not exact")?;
        rings.push(e.ring);
    }
    ensure(rings.len() as u128 == h2 && h2 == 2, format!("{} extensions, |H2| = {h2}", rings.len()))?;
    let iso = |s: &FiniteRing, t: &FiniteRing| find_isomorphism(s.rng(), t.rng()).is_some();
    let has_z4 = rings.iter().any(|s| iso(s, &z(4)));
    let has_dual = rings.iter().any(|s| iso(s, &dual()));
    ensure(has_z4 && has_dual, "Z4 and Z2[e] are not both realized")?;
    Ok("Z4 and Z2[e], both sequences exact".into())
}

fn hochschild_reduction() -> Outcome {
    let m = Bimodule::regular(&z(3));
    let basis = anncat::cochain::Basis::new::<Cochain3>(&m);
    let positions: Vec<(usize, usize)> = (0..basis.position_count())
        .filter(|&p| matches!(basis.describe(p).0, Component::Eta | Component::Alpha))
        .map(|p| basis.positions()[p])
        .collect();
    let total = 3usize.pow(positions.len() as u32);
    let mut passing = 0;
    for mut k in 0..total {
        let mut f = Cochain3::zero(3);
        for &(slot, idx) in &positions {
            f.table_mut(slot)[idx] = k % 3;
            k /= 3;
        }
        let report = is_ann_structure(&m, &f);
        let eta_zero = f.eta.iter().all(|&v| v == 0);
        let reduced = eta_zero && !report.failing_relations().iter().any(|r| (13..=15).contains(r));
        ensure(report.passed() == reduced, format!("pass sets differ at {f:?}"))?;
        ensure(report.passed() == (eta_zero && hochschild_cocycle(&m, &f)), format!("Hochschild check differs at {f:?}"))?;
        passing += report.passed() as usize;
    }
    Ok(format!("{passing} of {total} cochains are structures"))
}

fn smith_engine() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100_000 {
        let (rows, cols) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        check_smith(&random_matrix(&mut rng, rows, cols, 10))?;
    }
    Ok("10^5 matrices exact".into())
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("relation check agrees with coherence diagrams", oracle_equivalence),
        ("differentials compose to zero", differentials_compose_to_zero),
        ("classification by H3", classification),
        ("H2 of Z2", h2_fixture),
        ("functor classes over the identity pair", functor_classes),
        ("functor automorphisms by Z1", automorphisms),
        ("obstruction family", obstruction_family),
        ("extensions of Z2 by the null ring", extension_realization),
        ("Hochschild reduction over Z3", hochschild_reduction),
        ("Smith normal form engine", smith_engine),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
