//! Cross-checks the decomposition DP against the brute-force solver on
//! small graphs, exhaustively for n <= 5 and on random samples above that.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use vecdom::decomp::construct_exact;
use vecdom::dp::{self, DpConfig, Mode};
use vecdom::generate::random_connected;
use vecdom::oracle::brute_min;
use vecdom::{check_domination, DemandVector, Graph, Instance, ProblemKind, Vertex};

const KINDS: [ProblemKind; 3] = [
    ProblemKind::Vector,
    ProblemKind::TotalVector,
    ProblemKind::Multiple,
];

/// Solves through the DP pipeline and checks the result against the oracle:
/// same optimum (or same infeasibility), and a valid witness of that size.
fn cross_check(g: &Graph, demands: &DemandVector, label: &str) {
    let bd = construct_exact(g, 15).expect("exact decomposition");
    let rooted = bd.root_at(0, g).expect("rooting");
    for kind in KINDS {
        let outcome = dp::run(g, demands, Mode::for_kind(kind), &rooted, &DpConfig::default())
            .unwrap_or_else(|e| panic!("dp failed on {label} ({kind:?}): {e}"));
        let inst = Instance::new(g.clone(), demands.clone(), kind, None).expect("instance");
        let expect = brute_min(&inst).expect("oracle").optimum;
        match (&outcome.optimum, &expect) {
            (None, None) => {}
            (Some((got, witness)), Some((want, _))) => {
                assert_eq!(
                    got, want,
                    "optimum mismatch on {label} ({kind:?}): dp {got}, oracle {want}"
                );
                assert_eq!(witness.len() as u32, *got, "witness size on {label}");
                assert!(
                    check_domination(g, demands, kind, witness).expect("witness check"),
                    "dp witness not dominating on {label} ({kind:?}): {witness:?}"
                );
            }
            (got, want) => {
                panic!("feasibility mismatch on {label} ({kind:?}): dp {got:?}, oracle {want:?}")
            }
        }
    }
}

/// Demand profiles exercised on every exhaustive graph.
fn demand_profiles(n: usize) -> Vec<DemandVector> {
    let mixed: Vec<u32> = (0..n as u32).map(|v| v % 3).collect();
    let spread: Vec<u32> = (0..n as u32).map(|v| (v * 7 + 3) % 4).collect();
    vec![
        DemandVector::uniform(n, 1),
        DemandVector::uniform(n, 2),
        DemandVector::new(mixed),
        DemandVector::new(spread),
    ]
}

/// Every labeled connected graph on `n` vertices with at least two edges.
fn for_each_connected_graph(n: u32, mut f: impl FnMut(&Graph)) {
    let pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    for mask in 0u32..1 << pairs.len() {
        if mask.count_ones() < 2 {
            continue;
        }
        let edges: Vec<(Vertex, Vertex)> = pairs
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::new(n, &edges).expect("valid edge list");
        if g.is_connected() {
            f(&g);
        }
    }
}

#[test]
fn matches_oracle_on_all_small_connected_graphs() {
    for n in [3u32, 4, 5] {
        let profiles = demand_profiles(n as usize);
        for_each_connected_graph(n, |g| {
            for demands in &profiles {
                cross_check(g, demands, &format!("n={n} edges={:?}", g.edges()));
            }
        });
    }
}

#[test]
fn matches_oracle_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0b7);
    for n in [6u32, 7, 8] {
        for round in 0..40 {
            let max_m = (n as usize * (n as usize - 1) / 2).min(12);
            let m = rng.gen_range(n as usize - 1..=max_m);
            let g = random_connected(n, m, &mut rng);
            let demands =
                DemandVector::new((0..n).map(|_| rng.gen_range(0..=3)).collect::<Vec<u32>>());
            cross_check(&g, &demands, &format!("random n={n} round={round}"));
        }
    }
}

#[test]
fn matches_oracle_on_dense_graphs() {
    // Dense small graphs stress merges whose hidden class is large.
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in [5u32, 6] {
        let all = n as usize * (n as usize - 1) / 2;
        for round in 0..12 {
            let m = rng.gen_range(all - 3..=all);
            let g = random_connected(n, m, &mut rng);
            let demands =
                DemandVector::new((0..n).map(|_| rng.gen_range(0..=4)).collect::<Vec<u32>>());
            cross_check(&g, &demands, &format!("dense n={n} round={round}"));
        }
    }
}
