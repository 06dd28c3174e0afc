//! Acceptance criteria. Each prints one line; the process fails if any
//! criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use orthograph::analysis::{
    automorphisms, check_lifting, chromatic_exact, elliptic_spread_coloring, fiber_wreath_check,
    is_automorphism, is_proper_coloring, AutBudget, Census, ColorBudget, LowerBound,
};
use orthograph::formulas::{
    chromatic_theorem_applies, predict_main, predict_residue, predict_sub, vertex_count,
    ChromaticPrediction, NonAdjacentPrediction,
};
use orthograph::projective::canonicalize;
use orthograph::report::{deterministic_json, verify, VerifyConfig};
use orthograph::subconstituent::{verify_sub, SubVariant};
use orthograph::{enumerate_vertices, FormSpec, OrthoGraph, TupleVec};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn spec(n: u32, nu: u32, delta: u32) -> FormSpec {
    FormSpec::new(n, nu, delta).unwrap()
}

fn build(s: &FormSpec) -> OrthoGraph {
    OrthoGraph::build(s, usize::MAX).unwrap()
}

fn big(v: usize) -> BigUint {
    BigUint::from(v)
}

fn grid() -> Vec<FormSpec> {
    let mut out = Vec::new();
    for n in 1..=3 {
        for nu in 1..=2 {
            for delta in 0..=2 {
                out.push(spec(n, nu, delta));
            }
        }
    }
    out.push(spec(2, 3, 0));
    out.push(spec(2, 3, 1));
    out
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    if t > limit {
        Err(format!("{what} took {t:.1?}, limit {limit:?}"))
    } else {
        Ok(())
    }
}

fn residue_baseline() -> Outcome {
    let start = Instant::now();
    for nu in 1..=3 {
        for delta in 0..=2 {
            let s = spec(1, nu, delta);
            let g = build(&s);
            let c = Census::compute(g.adjacency(), None);
            let p = predict_residue(&s).map_err(|e| e.to_string())?;
            let lambda: Vec<usize> = c.adjacent.keys().copied().collect();
            let mu: Vec<usize> = c.nonadjacent().keys().copied().collect();
            let ok = p.vertex_count == big(c.vertex_count)
                && c.regular_degree().is_some_and(|k| p.degree == big(k))
                && lambda.len() == 1
                && p.lambda == big(lambda[0])
                && match &p.mu {
                    Some(m) => mu.len() == 1 && *m == big(mu[0]),
                    None => mu.is_empty(),
                };
            if !ok {
                return Err(format!("{s}: predicted {p:?}, measured {c:?}"));
            }
        }
    }
    within(start, Duration::from_secs(10), "residue grid")?;
    Ok(format!("9 residue graphs in {:.2?}", start.elapsed()))
}

fn main_census() -> Outcome {
    let start = Instant::now();
    let mut largest = 0;
    for s in grid() {
        let g = build(&s);
        largest = largest.max(g.order());
        let c = Census::compute(g.adjacency(), Some(g.fiber_labels()));
        let p = predict_main(&s, None).map_err(|e| e.to_string())?;
        let fail = |what: &str| Err(format!("{s}: {what}"));
        if p.vertex_count != big(c.vertex_count) {
            return fail("vertex count");
        }
        if !c.regular_degree().is_some_and(|k| p.degree == big(k)) {
            return fail("degree");
        }
        if c.adjacent.len() != 1 || !c.adjacent.keys().all(|&l| p.lambda == big(l)) {
            return fail("lambda");
        }
        if c.adjacent_same_fiber != 0 {
            return fail("adjacent pair inside a fiber");
        }
        let same: Vec<usize> = c.nonadjacent_same_fiber.keys().copied().collect();
        let cross: Vec<usize> = c.nonadjacent_cross_fiber.keys().copied().collect();
        let fiber_pairs = p.fiber_size > BigUint::from(1u32);
        match &p.nonadjacent {
            NonAdjacentPrediction::Mu { mu } => {
                if !same.iter().chain(&cross).all(|&m| *mu == big(m)) {
                    return fail("mu");
                }
            }
            NonAdjacentPrediction::TwoValued { c1, c2 } => {
                if cross.len() != 1 || *c1 != big(cross[0]) {
                    return fail("c1 on pairs from different fibers");
                }
                if fiber_pairs != (same.len() == 1) || !same.iter().all(|&x| *c2 == big(x)) {
                    return fail("c2 on pairs inside one fiber");
                }
            }
        }
    }
    within(start, Duration::from_secs(300), "census grid")?;
    Ok(format!(
        "20 specs up to {largest} vertices in {:.2?}",
        start.elapsed()
    ))
}

fn lifting() -> Outcome {
    for s in grid() {
        let g = build(&s);
        let r = OrthoGraph::residue_graph(&s, usize::MAX).unwrap();
        let l = check_lifting(&g, &r);
        if !(l.fiber_sizes_ok && l.adjacency_descends && l.adjacency_lifts) {
            return Err(format!("{s}: {l:?}"));
        }
    }
    Ok("fiber sizes, descent and lifting hold on all 20 specs".into())
}

fn unit_positions() -> Outcome {
    let mut total = 0;
    for s in grid() {
        let g = build(&s);
        let l = check_lifting(&g, &OrthoGraph::residue_graph(&s, usize::MAX).unwrap());
        if !l.unit_positions_ok {
            return Err(format!("{s}"));
        }
        total += g.order();
    }
    Ok(format!("{total} vertices checked"))
}

fn chromatic() -> Outcome {
    let mut checked = Vec::new();
    for n in 1..=2 {
        for nu in 1..=4 {
            for delta in 0..=2 {
                let s = spec(n, nu, delta);
                if !chromatic_theorem_applies(&s) || vertex_count(&s) > big(500) {
                    continue;
                }
                let start = Instant::now();
                let g = build(&s);
                let seed = elliptic_spread_coloring(&g);
                let r = chromatic_exact(g.adjacency(), seed.as_deref(), ColorBudget::default());
                let ChromaticPrediction::Value { value } =
                    predict_main(&s, None).unwrap().chromatic
                else {
                    unreachable!()
                };
                let value = value.to_usize().unwrap();
                if r.chromatic_number() != Some(value) {
                    return Err(format!(
                        "{s}: predicted {value}, bounds [{}, {}]",
                        r.lower, r.upper
                    ));
                }
                if !is_proper_coloring(g.adjacency(), &r.coloring) {
                    return Err(format!("{s}: witness colouring is improper"));
                }
                let lower_ok = match &r.lower_witness {
                    LowerBound::Clique { vertices } => {
                        vertices.len() == value
                            && vertices
                                .iter()
                                .enumerate()
                                .all(|(i, &a)| vertices[i + 1..].iter().all(|&b| g.adjacent(a, b)))
                    }
                    LowerBound::IndependenceRatio {
                        independence_number,
                        vertex_count,
                        independent_set,
                    } => {
                        vertex_count.div_ceil(*independence_number) == value
                            && independent_set.len() == *independence_number
                            && independent_set
                                .iter()
                                .all(|&a| independent_set.iter().all(|&b| !g.adjacent(a, b)))
                    }
                    LowerBound::Search { .. } => true,
                };
                if !lower_ok {
                    return Err(format!("{s}: lower-bound witness does not certify {value}"));
                }
                within(start, Duration::from_secs(60), &format!("{s}"))?;
                checked.push(format!("({n},{nu},{delta})={value}"));
            }
        }
    }
    Ok(checked.join(" "))
}

const SMALL: &[(u32, u32, u32)] = &[
    (1, 1, 0),
    (1, 1, 1),
    (2, 1, 1),
    (1, 2, 0),
    (1, 2, 1),
    (1, 2, 2),
    (2, 1, 2),
];

fn aut_order() -> Outcome {
    let mut seen = Vec::new();
    for &(n, nu, delta) in SMALL {
        let s = spec(n, nu, delta);
        let g = build(&s);
        let r = OrthoGraph::residue_graph(&s, usize::MAX).unwrap();
        let full = automorphisms(g.adjacency(), AutBudget::default());
        let res = automorphisms(r.adjacency(), AutBudget::default());
        let (Some(full), Some(res)) = (full.complete(), res.complete()) else {
            return Err(format!("{s}: group search did not finish"));
        };
        if !full
            .generators
            .iter()
            .all(|p| is_automorphism(g.adjacency(), p))
        {
            return Err(format!("{s}: a generator is not an automorphism"));
        }
        let fiber = g.fiber_of(0).members.len();
        let fact: BigUint = (1..=fiber).map(BigUint::from).product();
        let expected = &res.order * fact.pow(r.order() as u32);
        if full.order != expected {
            return Err(format!("{s}: measured {}, expected {expected}", full.order));
        }
        if let Some(p) = predict_main(&s, Some(&res.order)).unwrap().aut_order.value {
            if p != full.order {
                return Err(format!("{s}: closed form {p}, measured {}", full.order));
            }
        }
        seen.push(format!("({n},{nu},{delta})={}", full.order));
    }
    if !seen.iter().any(|x| x == "(2,1,1)=48") {
        return Err("octahedron order is not 48".into());
    }
    Ok(seen.join(" "))
}

fn transitivity() -> Outcome {
    for &(n, nu, delta) in SMALL {
        let s = spec(n, nu, delta);
        let g = build(&s);
        let a = automorphisms(g.adjacency(), AutBudget::default());
        let a = a
            .complete()
            .ok_or(format!("{s}: group search did not finish"))?;
        let k = g.adjacency().degree(0);
        if a.vertex_orbit_count != 1
            || a.arc_orbit_size != g.order() * k
            || a.arc_count != g.order() * k
        {
            return Err(format!(
                "{s}: {} vertex orbits, arc orbit {} of {}",
                a.vertex_orbit_count,
                a.arc_orbit_size,
                g.order() * k
            ));
        }
    }
    Ok(format!("{} graphs vertex and arc transitive", SMALL.len()))
}

fn subconstituents() -> Outcome {
    let mut failures = Vec::new();
    let mut lifted_failures = Vec::new();
    let mut relabelled = Vec::new();
    let mut checked = 0;
    for s in grid().into_iter().filter(|s| s.nu() >= 2) {
        let g = build(&s);
        for index in [1, 2] {
            let c = verify_sub(&g, index, SubVariant::Definitional).map_err(|e| e.to_string())?;
            let p = c
                .prediction
                .covered()
                .ok_or(format!("{s}: no prediction for {index}"))?;
            if p.branch.contains("stated for the first") {
                relabelled.push(format!("({},{},{})", s.n(), s.nu(), s.delta()));
            }
            checked += 1;
            if c.pass != Some(true) {
                let bad: Vec<String> = c
                    .checks
                    .iter()
                    .filter(|f| !f.pass)
                    .map(|f| format!("{} {} vs {}", f.field, f.predicted, f.measured))
                    .collect();
                failures.push(format!(
                    "({},{},{}) sub{index} [{}]: {}",
                    s.n(),
                    s.nu(),
                    s.delta(),
                    p.branch,
                    bad.join(", ")
                ));
            }
            if index == 2 {
                let l = verify_sub(&g, 2, SubVariant::ExcludeBaseFiber).unwrap();
                if l.pass != Some(true) {
                    lifted_failures.push(format!("({},{},{})", s.n(), s.nu(), s.delta()));
                }
            }
        }
    }
    let notes = format!(
        "delta 1, nu >= 3 second-subconstituent formula applied to index 2 for {}; second subconstituent without the base fiber: {}",
        if relabelled.is_empty() { "none".into() } else { relabelled.join(" ") },
        if lifted_failures.is_empty() { "all pass".into() } else { format!("fails on {}", lifted_failures.join(" ")) },
    );
    if failures.is_empty() {
        Ok(format!("{checked} subconstituents match; {notes}"))
    } else {
        Err(format!(
            "{} of {checked} subconstituents differ: {}; {notes}",
            failures.len(),
            failures.join("; ")
        ))
    }
}

fn properties() -> Outcome {
    // Rescaling invariance, exhaustive.
    let mut pairs = 0u64;
    for n in 1..=3 {
        for nu in 1..=2 {
            for delta in 0..=2 {
                let s = spec(n, nu, delta);
                if s.dim() > 5 {
                    continue;
                }
                let ring = s.ring();
                let g = build(&s);
                let units: Vec<u32> = ring.units().map(|u| u.value()).collect();
                for (i, a) in g.vertices().iter().enumerate() {
                    for &u in &units {
                        let au = a.rep().scaled(ring, u);
                        if canonicalize(&s, &au).unwrap() != *a {
                            return Err(format!("{s}: {a} rescaled to another class"));
                        }
                        for (j, b) in g.vertices().iter().enumerate() {
                            for &w in &units {
                                let bw = b.rep().scaled(ring, w);
                                pairs += 1;
                                if s.bform(&au, &bw).unwrap().is_unit() != g.adjacent(i, j) {
                                    return Err(format!(
                                        "{s}: adjacency of {a}, {b} not well defined"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    // Symmetry and diagonal, exhaustive over Z/2.
    for nu in 1..=3 {
        for delta in 0..=2 {
            let s = spec(1, nu, delta);
            let ring = s.ring();
            let dim = s.dim();
            let tuples: Vec<TupleVec> = (0..1u64 << dim)
                .map(|m| TupleVec::new(ring, &(0..dim).map(|i| m >> i & 1).collect::<Vec<_>>()))
                .collect();
            for a in &tuples {
                let q = s.qform(a).unwrap();
                if s.bform(a, a).unwrap() != q.add(q).unwrap() {
                    return Err(format!("{s}: B(a,a) != 2Q(a) at {a}"));
                }
                for b in &tuples {
                    if s.bform(a, b).unwrap() != s.bform(b, a).unwrap() {
                        return Err(format!("{s}: B not symmetric at {a}, {b}"));
                    }
                }
            }
        }
    }

    // Symmetry and diagonal, random over Z/2^n for n <= 4.
    let mut runner = TestRunner::deterministic();
    let strategy = (1u32..=4, 1u32..=3, 0u32..=2, 0u64..8).prop_flat_map(|(n, nu, delta, z)| {
        let s = FormSpec::with_z(n, nu, delta, 2 * z + 1).unwrap();
        let m = 1u64 << n;
        let dim = s.dim();
        (
            proptest::strategy::Just(s),
            proptest::collection::vec(0..m, dim),
            proptest::collection::vec(0..m, dim),
        )
    });
    for _ in 0..10_000 {
        let (s, a, b) = strategy.new_tree(&mut runner).unwrap().current();
        let (a, b) = (TupleVec::new(s.ring(), &a), TupleVec::new(s.ring(), &b));
        let q = s.qform(&a).unwrap();
        if s.bform(&a, &b).unwrap() != s.bform(&b, &a).unwrap()
            || s.bform(&a, &a).unwrap() != q.add(q).unwrap()
        {
            return Err(format!("{s}: form identities fail at {a}, {b}"));
        }
    }

    // Identical neighbourhoods within fibers.
    for s in grid() {
        if !fiber_wreath_check(&build(&s)) {
            return Err(format!("{s}: fiber members differ in neighbourhood"));
        }
    }

    // Determinism of enumeration and reports.
    for s in grid() {
        if enumerate_vertices(&s, usize::MAX).unwrap()
            != enumerate_vertices(&s, usize::MAX).unwrap()
        {
            return Err(format!("{s}: enumeration differs between runs"));
        }
    }
    let cfg = VerifyConfig::default();
    let s = spec(2, 2, 1);
    if deterministic_json(&verify(&s, &cfg).unwrap())
        != deterministic_json(&verify(&s, &cfg).unwrap())
    {
        return Err(format!("{s}: reports differ between runs"));
    }
    Ok(format!("{pairs} rescaled pairs, 10000 random form checks"))
}

fn formula_engine() -> Outcome {
    let start = Instant::now();
    let mut count = 0;
    for n in 1..=8 {
        for nu in 1..=6 {
            for delta in 0..=2 {
                let s = spec(n, nu, delta);
                let p = predict_main(&s, None).map_err(|e| format!("{s}: {e}"))?;
                if p.lambda != p.lambda_expanded {
                    return Err(format!(
                        "{s}: lambda {} vs expanded {}",
                        p.lambda, p.lambda_expanded
                    ));
                }
                for index in [1, 2] {
                    predict_sub(&s, index).map_err(|e| format!("{s}: {e}"))?;
                }
                count += 1;
            }
        }
    }
    within(start, Duration::from_secs(1), "formula grid")?;
    Ok(format!("{count} specs in {:.2?}", start.elapsed()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("residue graph baseline", residue_baseline),
        ("main census", main_census),
        ("lifting fibers", lifting),
        ("unit coordinate position", unit_positions),
        ("chromatic number", chromatic),
        ("automorphism group order", aut_order),
        ("vertex and arc transitivity", transitivity),
        ("subconstituent parameters", subconstituents),
        ("property suites", properties),
        ("formula engine", formula_engine),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let (status, detail) = match check() {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {status} {name}: {detail}", i + 1);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
