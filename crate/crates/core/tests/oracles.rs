//! Cross-checks against naive constructions that share no code with the
//! library's enumeration or adjacency fill, plus census values frozen from
//! an external brute-force run.

use std::collections::{BTreeMap, BTreeSet};

use orthograph::analysis::{chromatic_exact, is_proper_coloring, Census, ColorBudget};
use orthograph::subconstituent::{subconstituent, SubVariant};
use orthograph::{FormSpec, OrthoGraph};

/// Dense Gram matrix written out from the definition.
fn gram(n: u32, nu: usize, delta: usize, z: u64) -> Vec<Vec<u64>> {
    let dim = 2 * nu + delta;
    let m = 1u64 << n;
    let mut g = vec![vec![0u64; dim]; dim];
    for i in 0..nu {
        g[i][nu + i] = 1;
    }
    match delta {
        1 => g[2 * nu][2 * nu] = 1,
        2 => {
            g[2 * nu][2 * nu] = z % m;
            g[2 * nu][2 * nu + 1] = 1;
            g[2 * nu + 1][2 * nu + 1] = z % m;
        }
        _ => {}
    }
    g
}

fn quad(g: &[Vec<u64>], a: &[u64], m: u64) -> u64 {
    let mut s = 0;
    for (i, row) in g.iter().enumerate() {
        for (j, &e) in row.iter().enumerate() {
            s = (s + a[i] * e % m * a[j]) % m;
        }
    }
    s
}

fn bil(g: &[Vec<u64>], a: &[u64], b: &[u64], m: u64) -> u64 {
    let mut s = 0;
    for i in 0..a.len() {
        for j in 0..a.len() {
            s = (s + a[i] * ((g[i][j] + g[j][i]) % m) % m * b[j]) % m;
        }
    }
    s
}

/// Class representative: the lexicographically smallest unit multiple.
fn class_min(a: &[u64], m: u64) -> Vec<u64> {
    (1..m)
        .step_by(2)
        .map(|u| a.iter().map(|x| x * u % m).collect::<Vec<_>>())
        .min()
        .unwrap()
}

struct Naive {
    classes: Vec<Vec<u64>>,
    adj: Vec<Vec<bool>>,
}

fn naive(n: u32, nu: usize, delta: usize, z: u64) -> Naive {
    let dim = 2 * nu + delta;
    let m = 1u64 << n;
    let g = gram(n, nu, delta, z);
    let mut set = BTreeSet::new();
    let total = m.pow(dim as u32);
    for idx in 0..total {
        let mut a = vec![0u64; dim];
        let mut t = idx;
        for c in a.iter_mut() {
            *c = t % m;
            t /= m;
        }
        if a.iter().any(|x| x % 2 == 1) && quad(&g, &a, m) == 0 {
            set.insert(class_min(&a, m));
        }
    }
    let classes: Vec<Vec<u64>> = set.into_iter().collect();
    let adj = classes
        .iter()
        .map(|a| classes.iter().map(|b| bil(&g, a, b, m) % 2 == 1).collect())
        .collect();
    Naive { classes, adj }
}

fn check_against_naive(n: u32, nu: u32, delta: u32, z: u64) {
    let spec = FormSpec::with_z(n, nu, delta, z).unwrap();
    let g = OrthoGraph::build(&spec, usize::MAX).unwrap();
    let oracle = naive(n, nu as usize, delta as usize, z);
    let m = 1u64 << n;
    assert_eq!(g.order(), oracle.classes.len(), "{spec}");

    // Library vertex i corresponds to oracle class `pos[i]`.
    let pos: Vec<usize> = g
        .vertices()
        .iter()
        .map(|p| {
            let a: Vec<u64> = p.coords().iter().map(|&c| c as u64).collect();
            oracle
                .classes
                .binary_search(&class_min(&a, m))
                .unwrap_or_else(|_| panic!("{spec}: {p} is not an oracle vertex"))
        })
        .collect();
    let distinct: BTreeSet<usize> = pos.iter().copied().collect();
    assert_eq!(distinct.len(), g.order(), "{spec}: duplicate classes");

    for i in 0..g.order() {
        for j in 0..g.order() {
            assert_eq!(
                g.adjacent(i, j),
                oracle.adj[pos[i]][pos[j]],
                "{spec}: pair {i} {j}"
            );
        }
    }
}

#[test]
fn enumeration_and_adjacency_match_full_scan() {
    for n in 1..=2 {
        for nu in 1..=2 {
            for delta in 0..=2 {
                check_against_naive(n, nu, delta, 1);
            }
        }
    }
    for (n, nu, delta) in [
        (1, 3, 0),
        (1, 3, 1),
        (3, 1, 0),
        (3, 1, 1),
        (3, 1, 2),
        (4, 1, 1),
    ] {
        check_against_naive(n, nu, delta, 1);
    }
}

#[test]
fn nontrivial_z_matches_full_scan() {
    check_against_naive(2, 1, 2, 3);
    check_against_naive(3, 1, 2, 5);
    check_against_naive(2, 2, 2, 3);
}

/// `(n, ν, δ)`, main census, first and second subconstituent censuses.
/// Each census is `(v, degrees, adjacent, non-adjacent)` with histograms as
/// `value -> count`.
type Frozen = (
    usize,
    &'static [(usize, usize)],
    &'static [(usize, u64)],
    &'static [(usize, u64)],
);

type Row = ((u32, u32, u32), Frozen, Frozen, Frozen);

const FROZEN: &[Row] = &[
    (
        (1, 1, 0),
        (2, &[(1, 2)], &[(0, 1)], &[]),
        (1, &[(0, 1)], &[], &[]),
        (0, &[], &[], &[]),
    ),
    (
        (1, 1, 1),
        (3, &[(2, 3)], &[(1, 3)], &[]),
        (2, &[(1, 2)], &[(0, 1)], &[]),
        (0, &[], &[], &[]),
    ),
    (
        (1, 1, 2),
        (5, &[(4, 5)], &[(3, 10)], &[]),
        (4, &[(3, 4)], &[(2, 6)], &[]),
        (0, &[], &[], &[]),
    ),
    (
        (1, 2, 0),
        (9, &[(4, 9)], &[(1, 18)], &[(2, 18)]),
        (4, &[(1, 4)], &[(0, 2)], &[(0, 4)]),
        (4, &[(2, 4)], &[(0, 4)], &[(2, 2)]),
    ),
    (
        (1, 2, 1),
        (15, &[(8, 15)], &[(4, 60)], &[(4, 45)]),
        (8, &[(4, 8)], &[(0, 4), (2, 12)], &[(2, 12)]),
        (6, &[(4, 6)], &[(2, 12)], &[(4, 3)]),
    ),
    (
        (1, 2, 2),
        (27, &[(16, 27)], &[(10, 216)], &[(8, 135)]),
        (16, &[(10, 16)], &[(6, 80)], &[(6, 40)]),
        (10, &[(8, 10)], &[(6, 40)], &[(8, 5)]),
    ),
    (
        (2, 1, 1),
        (6, &[(4, 6)], &[(2, 12)], &[(4, 3)]),
        (4, &[(2, 4)], &[(0, 4)], &[(2, 2)]),
        (1, &[(0, 1)], &[], &[]),
    ),
    (
        (2, 1, 2),
        (20, &[(16, 20)], &[(12, 160)], &[(16, 30)]),
        (16, &[(12, 16)], &[(8, 96)], &[(12, 24)]),
        (3, &[(0, 3)], &[], &[(0, 3)]),
    ),
    (
        (2, 2, 0),
        (36, &[(16, 36)], &[(4, 288)], &[(8, 288), (16, 54)]),
        (16, &[(4, 16)], &[(0, 32)], &[(0, 64), (4, 24)]),
        (19, &[(0, 3), (8, 16)], &[(0, 64)], &[(0, 51), (8, 56)]),
    ),
    (
        (2, 2, 1),
        (120, &[(64, 120)], &[(32, 3840)], &[(32, 2880), (64, 420)]),
        (
            64,
            &[(32, 64)],
            &[(0, 256), (16, 768)],
            &[(16, 768), (32, 224)],
        ),
        (
            55,
            &[(0, 7), (32, 48)],
            &[(16, 768)],
            &[(0, 357), (32, 360)],
        ),
    ),
    (
        (1, 3, 0),
        (35, &[(16, 35)], &[(6, 280)], &[(8, 315)]),
        (16, &[(6, 16)], &[(2, 48)], &[(2, 72)]),
        (18, &[(8, 18)], &[(2, 72)], &[(4, 72), (8, 9)]),
    ),
    (
        (1, 3, 1),
        (63, &[(32, 63)], &[(16, 1008)], &[(16, 945)]),
        (32, &[(16, 32)], &[(0, 16), (8, 240)], &[(8, 240)]),
        (30, &[(16, 30)], &[(8, 240)], &[(8, 180), (16, 15)]),
    ),
    (
        (1, 3, 2),
        (119, &[(64, 119)], &[(36, 3808)], &[(32, 3213)]),
        (64, &[(36, 64)], &[(20, 1152)], &[(20, 864)]),
        (54, &[(32, 54)], &[(20, 864)], &[(16, 540), (32, 27)]),
    ),
    (
        (3, 1, 1),
        (12, &[(8, 12)], &[(4, 48)], &[(8, 18)]),
        (8, &[(4, 8)], &[(0, 16)], &[(4, 12)]),
        (3, &[(0, 3)], &[], &[(0, 3)]),
    ),
    (
        (3, 1, 2),
        (80, &[(64, 80)], &[(48, 2560)], &[(64, 600)]),
        (64, &[(48, 64)], &[(32, 1536)], &[(48, 480)]),
        (15, &[(0, 15)], &[], &[(0, 105)]),
    ),
];

fn assert_census(c: &Census, expected: &Frozen, what: &str) {
    let (v, degrees, adjacent, nonadjacent) = *expected;
    assert_eq!(c.vertex_count, v, "{what}: vertex count");
    let d: BTreeMap<usize, usize> = degrees.iter().copied().collect();
    assert_eq!(c.degrees, d, "{what}: degrees");
    let a: BTreeMap<usize, u64> = adjacent.iter().copied().collect();
    assert_eq!(c.adjacent, a, "{what}: adjacent pairs");
    let na: BTreeMap<usize, u64> = nonadjacent.iter().copied().collect();
    assert_eq!(c.nonadjacent(), na, "{what}: non-adjacent pairs");
}

#[test]
fn frozen_censuses() {
    for &((n, nu, delta), main, first, second) in FROZEN {
        let spec = FormSpec::new(n, nu, delta).unwrap();
        let g = OrthoGraph::build(&spec, usize::MAX).unwrap();
        assert_census(
            &Census::compute(g.adjacency(), Some(g.fiber_labels())),
            &main,
            &format!("{spec}"),
        );
        let s1 = subconstituent(&g, 1, SubVariant::Definitional).unwrap();
        assert_census(&s1.census(&g), &first, &format!("{spec} first"));
        let s2 = subconstituent(&g, 2, SubVariant::Definitional).unwrap();
        assert_census(&s2.census(&g), &second, &format!("{spec} second"));
    }
}

#[test]
fn frozen_chromatic_numbers() {
    // From an external colourability search; fewer colours fail by search or
    // by the independence number.
    for (n, nu, delta, chi) in [
        (1, 1, 1, 3),
        (1, 1, 2, 5),
        (2, 1, 1, 3),
        (1, 2, 0, 3),
        (1, 2, 1, 5),
        (1, 2, 2, 9),
        (1, 3, 0, 6),
        (1, 3, 1, 9),
        (2, 2, 0, 3),
    ] {
        let g = OrthoGraph::build(&FormSpec::new(n, nu, delta).unwrap(), usize::MAX).unwrap();
        let r = chromatic_exact(g.adjacency(), None, ColorBudget::default());
        assert_eq!(r.chromatic_number(), Some(chi), "{n} {nu} {delta}");
        assert!(is_proper_coloring(g.adjacency(), &r.coloring));
    }
}
