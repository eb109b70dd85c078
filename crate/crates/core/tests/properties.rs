use proptest::prelude::*;

use spacing::oracle::{check_spacing1, count_supports, dc_oracle, enumerate_supports, DcOutcome, DEFAULT_CAP};
use spacing::params::Spacing1Params;
use spacing::propagators::matching::{maximum_matching, regin_filter, BipartiteGraph};
use spacing::propagators::{AllDifferent, Spacing1};
use spacing::rhythm::generate_extended;
use spacing::{search, Domain, Engine, Heuristic, Limits, Propagator, Store, Value};

fn domains_strategy(n: std::ops::RangeInclusive<usize>, max: Value) -> impl Strategy<Value = Vec<Vec<Value>>> {
    prop::collection::vec(prop::collection::btree_set(0..=max, 1..=(max as usize + 1)), n)
        .prop_map(|ds| ds.into_iter().map(|d| d.into_iter().collect()).collect())
}

fn store_of(domains: &[Vec<Value>]) -> Store {
    Store::new(domains.iter().map(|d| Domain::new(d.iter().copied()).unwrap()).collect())
}

fn snapshot(store: &Store) -> Vec<Vec<Value>> {
    store.domains().iter().map(Domain::values).collect()
}

fn fixpoint(domains: &[Vec<Value>], props: Vec<Box<dyn Propagator>>) -> Option<Vec<Vec<Value>>> {
    let mut store = store_of(domains);
    let mut engine = Engine::with_propagators(domains.len(), props);
    engine.propagate_all(&mut store).ok()?;
    Some(snapshot(&store))
}

/// Size of a maximum matching by trying every injective assignment.
fn brute_matching(adj: &[Vec<usize>], used: &mut Vec<bool>, u: usize) -> usize {
    if u == adj.len() {
        return 0;
    }
    let mut best = brute_matching(adj, used, u + 1);
    for &v in &adj[u] {
        if !used[v] {
            used[v] = true;
            best = best.max(1 + brute_matching(adj, used, u + 1));
            used[v] = false;
        }
    }
    best
}

fn all_different(seq: &[Value]) -> bool {
    seq.iter().enumerate().all(|(i, a)| seq[i + 1..].iter().all(|b| a != b))
}

fn spacing1_params() -> impl Strategy<Value = (Spacing1Params, usize)> {
    (1usize..=3, 1usize..=3, 0usize..=2, prop::sample::subsequence(vec![1u32, 2, 3], 0..=3)).prop_filter_map(
        "set fits the period",
        |(p, k, extra, s)| {
            let n = p * k + extra;
            (s.len() <= p && n <= 9).then(|| (Spacing1Params::new(s, p, k, n).unwrap(), n))
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn hopcroft_karp_is_maximum(adj in prop::collection::vec(prop::collection::btree_set(0usize..5, 0..4), 1..6)) {
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut g = BipartiteGraph::new(adj.len(), 5);
        for (u, vs) in adj.iter().enumerate() {
            for &v in vs {
                g.add_edge(u, v);
            }
        }
        let m = maximum_matching(&g, None);
        prop_assert_eq!(m.size(), brute_matching(&adj, &mut vec![false; 5], 0));
        for (u, v) in m.pairs() {
            prop_assert!(g.has_edge(u, v));
        }
    }

    #[test]
    fn regin_keeps_exactly_matchable_edges(adj in prop::collection::vec(prop::collection::btree_set(0usize..5, 1..4), 1..5)) {
        let adj: Vec<Vec<usize>> = adj.into_iter().map(|s| s.into_iter().collect()).collect();
        let mut g = BipartiteGraph::new(adj.len(), 5);
        for (u, vs) in adj.iter().enumerate() {
            for &v in vs {
                g.add_edge(u, v);
            }
        }
        let m = maximum_matching(&g, None);
        prop_assume!(m.covers_left());
        let removed = regin_filter(&g, &m);
        let full = adj.len();
        for (u, vs) in adj.iter().enumerate() {
            for &v in vs {
                // Edge (u, v) is in some left-perfect matching iff the rest
                // of the graph still matches every other left node.
                let mut used = vec![false; 5];
                used[v] = true;
                let rest: Vec<Vec<usize>> = adj
                    .iter()
                    .enumerate()
                    .map(|(w, ns)| if w == u { Vec::new() } else { ns.clone() })
                    .collect();
                let ok = brute_matching(&rest, &mut used, 0) == full - 1;
                prop_assert_eq!(!removed.contains(&(u, v)), ok, "edge ({}, {})", u, v);
            }
        }
    }

    #[test]
    fn alldifferent_is_domain_consistent(domains in domains_strategy(1..=5, 4)) {
        let n = domains.len();
        let engine = fixpoint(&domains, vec![Box::new(AllDifferent::new((0..n).collect()))]);
        let oracle = match dc_oracle(&domains, all_different, DEFAULT_CAP).unwrap() {
            DcOutcome::Pruned(d) => Some(d),
            DcOutcome::Failed => None,
        };
        prop_assert_eq!(engine, oracle);
    }

    #[test]
    fn rollback_restores_domains(domains in domains_strategy(1..=6, 5), ops in prop::collection::vec((0usize..6, 0u32..=5, any::<bool>()), 0..20)) {
        let mut store = store_of(&domains);
        let before = snapshot(&store);
        let mark = store.checkpoint();
        let mut inner = Vec::new();
        for (i, (var, v, assign)) in ops.into_iter().enumerate() {
            let var = var % domains.len();
            if i == 5 {
                inner.push((store.checkpoint(), snapshot(&store)));
            }
            let r = if assign { store.assign(var, v) } else { store.remove(var, v) };
            if r.is_err() {
                break;
            }
        }
        if let Some((m, snap)) = inner.pop() {
            store.rollback(m).unwrap();
            prop_assert_eq!(snapshot(&store), snap);
        }
        store.rollback(mark).unwrap();
        prop_assert_eq!(snapshot(&store), before);
        prop_assert!(store.rollback(mark).is_err());
    }

    #[test]
    fn search_finds_every_support((params, n) in spacing1_params(), seed_domains in domains_strategy(9..=9, 3)) {
        let domains = seed_domains[..n].to_vec();
        let expected = enumerate_supports(&domains, |s| check_spacing1(s, &params), DEFAULT_CAP).unwrap();
        let mut store = store_of(&domains);
        let mut engine = Engine::with_propagators(n, vec![Box::new(Spacing1::new(params.clone(), (0..n).collect()))]);
        let out = search(&mut store, &mut engine, Heuristic::default(), &Limits::default());
        prop_assert!(out.exhausted);
        let mut found = out.solutions.clone();
        found.sort();
        prop_assert_eq!(found, expected);
        prop_assert_eq!(snapshot(&store), domains);
    }

    #[test]
    fn static_search_count_matches((params, n) in spacing1_params(), seed_domains in domains_strategy(9..=9, 3)) {
        let domains = seed_domains[..n].to_vec();
        let expected = count_supports(&domains, |s| check_spacing1(s, &params), DEFAULT_CAP).unwrap();
        let mut store = store_of(&domains);
        let mut engine = Engine::with_propagators(n, vec![Box::new(Spacing1::new(params.clone(), (0..n).collect()))]);
        let out = search(&mut store, &mut engine, Heuristic::STATIC, &Limits::default());
        prop_assert_eq!(out.solution_count, expected);
    }

    #[test]
    fn fixpoint_is_stable((params, n) in spacing1_params(), seed_domains in domains_strategy(9..=9, 3)) {
        let domains = seed_domains[..n].to_vec();
        let prop = || vec![Box::new(Spacing1::new(params.clone(), (0..n).collect())) as Box<dyn Propagator>];
        if let Some(once) = fixpoint(&domains, prop()) {
            prop_assert_eq!(fixpoint(&once, prop()), Some(once));
        }
    }

    #[test]
    fn generator_is_deterministic(h in 1usize..=4, p1 in 2usize..=16, kh in 1usize..=3, seed in any::<u64>(), extended in any::<bool>()) {
        let fraction = if extended { 0.1 } else { 0.0 };
        let a = generate_extended(h, p1, kh, seed, fraction);
        let b = generate_extended(h, p1, kh, seed, fraction);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.to_json(), b.to_json());
            prop_assert!(a.validate().is_ok());
        }
    }
}
