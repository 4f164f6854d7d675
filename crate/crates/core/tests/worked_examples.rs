//! The worked examples and corollaries checked against the numbers printed
//! alongside them.

mod common;

use std::collections::BTreeSet;

use morse_res::splitting::{ideal_intersection, split_tree, NodeKind};
use morse_res::taylor::bits;
use morse_res::{
    betti_numbers, edge_split_recursion, intersection_gens, prune, prune_power, pruned_betti,
    search_minimal_order, split_prune, xi_partition, Graph, GradedComplex, Limits, Monomial,
    MonomialIdeal, Partition, SearchBudget, SplitOptions, SplitPlan, VertexOrder,
};

fn id(s: &str) -> MonomialIdeal {
    s.parse().unwrap()
}

fn gen_set(i: &MonomialIdeal) -> BTreeSet<Monomial> {
    i.gens().iter().cloned().collect()
}

fn projective_plane() -> MonomialIdeal {
    id("x1*x2*x8*x9*x10, x2*x3*x4*x5*x10, x5*x6*x7*x8*x10, x1*x4*x5*x6*x9, x1*x2*x3*x6*x7, x3*x4*x7*x8*x9")
}

fn cell_name(c: u64) -> String {
    bits(c).map(|b| char::from(b'1' + b as u8)).collect()
}

#[test]
fn projective_plane_pruned_cells() {
    let i = projective_plane();
    let c = GradedComplex::taylor(&i, &Limits::default()).unwrap();
    let m = prune(&c);
    let matched: BTreeSet<String> = m
        .pairs()
        .iter()
        .flat_map(|p| [cell_name(p.lower), cell_name(p.upper())])
        .collect();
    // cells drawn in red
    let red = "123456 12345 12356 12456 13456 23456 1235 1245 1345 2345 1256 1356 2356 2456 3456 \
               125 145 345 256 356 12346 1234 1236 1246 1346 2346 136 146 246";
    let red: BTreeSet<String> = red.split_whitespace().map(String::from).collect();
    assert!(red.is_subset(&matched));
    // The drawing leaves {2,3,4} uncoloured although its partner {1,2,3,4}
    // is red; both have degree x1···x10 and the counts need 15 pairs.
    let extra: Vec<&String> = matched.difference(&red).collect();
    assert_eq!(extra, ["234"]);
    assert_eq!(pruned_betti(&c, &m, 2).totals(), [1, 6, 15, 11, 1]);
    assert_eq!(c.degree(0b0111), &i.lcm_all());
    assert_eq!(c.degree(0b111001), &i.lcm_all());
}

#[test]
fn projective_plane_orders_and_enlargement() {
    let l = Limits::default();
    let i = projective_plane();
    // no order at all is minimal in characteristic 0, some is in characteristic 2
    let r0 = search_minimal_order(&i, 0, &SearchBudget::default(), &[], &l).unwrap();
    assert!(r0.order().is_none());
    let r2 = search_minimal_order(&i, 2, &SearchBudget::default(), &[], &l).unwrap();
    assert!(r2.order().is_some());
    // adding x2, x3, x8 gives an ideal with a minimal pruned resolution
    let bigger = i.sum(&id("[n=10] x2, x3, x8")).unwrap();
    let r = search_minimal_order(&bigger, 0, &SearchBudget::default(), &[], &l).unwrap();
    assert!(r.order().is_some());
}

#[test]
fn six_generators_in_six_variables_minimal_everywhere() {
    let l = Limits::default();
    let i = id("x1*x2*x3*x4, x1*x2*x4*x5*x6, x1*x3*x5, x2*x3*x6");
    for p in [0, 2, 3, 5] {
        let r = search_minimal_order(&i, p, &SearchBudget::default(), &[], &l).unwrap();
        assert!(r.order().is_some(), "characteristic {p}");
    }
}

#[test]
fn triangle_square_tables() {
    let i = id("x1*x2, x1*x3, x2*x3");
    let p = prune_power(&i, 2, VertexOrder::Lex, 0, &Limits::default()).unwrap();
    // token-wise: the printed tables pad columns with two spaces
    let tokens = |s: &str| -> Vec<Vec<String>> {
        s.lines().map(|l| l.split_whitespace().map(String::from).collect()).collect()
    };
    let printed = "         0  1  2  3\n  total: 1  6  6  1\n      0: 1  .  .  .\n      1: .  .  .  .\n      2: .  .  .  .\n      3: .  6  6  1\n";
    assert_eq!(tokens(&p.pruned.render_diagram()), tokens(printed));
    assert_eq!(p.unpruned.totals(), [1, 6, 9, 4]);
}

#[test]
fn nine_cycle_walkthrough() {
    let l = Limits::default();
    let i = Graph::cycle(9).unwrap().edge_ideal();
    let p = xi_partition(&i, 8).unwrap();
    assert_eq!(p.j, id("[n=9] x8*x9, x1*x9"));
    assert_eq!(p.k, Graph::path(8).edge_ideal().with_n(9).unwrap());
    let meet = intersection_gens(&p.j, &p.k).unwrap();
    assert_eq!(meet.pairs.len(), 14);
    let removed: Vec<Monomial> = meet
        .dominated
        .iter()
        .map(|&(r, _)| {
            let (a, b) = meet.pairs[r];
            p.j.gen(a).lcm(p.k.gen(b)).unwrap()
        })
        .collect();
    for m in ["x1*x2*x8*x9", "x1*x7*x8*x9"] {
        assert!(removed.contains(&m.parse().unwrap()), "{m}");
    }

    let plan = SplitPlan::split(
        Partition::Var(8),
        SplitPlan::Leaf,
        SplitPlan::Leaf,
        SplitPlan::split(Partition::Var(0), SplitPlan::Leaf, SplitPlan::Leaf, SplitPlan::Leaf),
    );
    let tree = split_tree(&i, &plan, &l).unwrap();
    let NodeKind::Split { children, .. } = &tree.kind else { panic!("root splits") };
    let NodeKind::Split { children: inner, .. } = &children[2].kind else { panic!("meet splits") };
    // J'∩K' = x1x8x9 · (6-cycle on x2, …, x7); each node stores the gcd
    // relative to its parent
    let last = &inner[2];
    let total = children[2].gcd.mul(&last.gcd).unwrap();
    assert_eq!(total, "x1*x8*x9".parse().unwrap());
    let hexagon = id("[n=9] x2*x3, x3*x4, x4*x5, x5*x6, x6*x7, x2*x7");
    let (_, base) = last.ideal.factor_gcd();
    assert_eq!(gen_set(&base), gen_set(&hexagon));

    let out = split_prune(&i, &plan, SplitOptions::default(), &l).unwrap();
    assert!(out.minimal);
    assert_eq!(out.pruned.totals(), [1, 9, 27, 39, 27, 9, 2]);
}

fn is_cycle_ideal(i: &MonomialIdeal, len: usize) -> bool {
    if i.q() != len || i.gens().iter().any(|g| g.degree() != 2 || !g.is_squarefree()) {
        return false;
    }
    let edges: Vec<(usize, usize)> = i
        .gens()
        .iter()
        .map(|g| {
            let s: Vec<usize> = g.support().collect();
            (s[0], s[1])
        })
        .collect();
    let verts: BTreeSet<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    if verts.len() != len || verts.iter().any(|v| edges.iter().filter(|e| e.0 == *v || e.1 == *v).count() != 2) {
        return false;
    }
    // connected
    let mut seen = BTreeSet::from([*verts.iter().next().unwrap()]);
    loop {
        let more: Vec<usize> = edges
            .iter()
            .filter(|(a, b)| seen.contains(a) != seen.contains(b))
            .map(|&(a, b)| if seen.contains(&a) { b } else { a })
            .collect();
        if more.is_empty() {
            return seen.len() == len;
        }
        seen.extend(more);
    }
}

#[test]
fn cycle_pieces() {
    let l = Limits::default();
    for n in 6..=10 {
        let g = Graph::cycle(n).unwrap();
        let e = edge_split_recursion(&g, n - 1, &l).unwrap();
        assert_eq!(e.neighbours, vec![0, n - 2]);
        // M for x1: (x1 xn) ∩ (x2, x3x4, …, x_{n−3}x_{n−2})
        let mut tail = vec![Monomial::var(n, 1)];
        tail.extend((2..n - 3).map(|a| Monomial::squarefree(n, [a, a + 1])));
        let want = ideal_intersection(
            &MonomialIdeal::from_minimal(n, vec![Monomial::squarefree(n, [0, n - 1])]).unwrap(),
            &MonomialIdeal::from_minimal(n, tail).unwrap(),
        )
        .unwrap();
        assert_eq!(gen_set(&e.m[0]), gen_set(&want), "n = {n}");
        // single neighbours give paths, both together an (n−3)-cycle
        let both = e.hypergraphs.iter().find(|h| h.subset.len() == 2).unwrap();
        assert!(is_cycle_ideal(&both.exact, n - 3), "n = {n}: {}", both.exact);
    }
}

#[test]
fn hub_and_bipartite_intersections_are_shifted_k() {
    let mut graphs = Vec::new();
    for n in 4..=9 {
        // the hub is the last vertex
        graphs.push((Graph::wheel(n).unwrap(), n - 1));
    }
    for a in 1..=4 {
        for b in 1..=4 {
            graphs.push((Graph::complete_bipartite(a, b), 0));
        }
    }
    for (g, v) in graphs {
        let i = g.edge_ideal();
        let p = xi_partition(&i, v).unwrap();
        if p.degenerate {
            continue;
        }
        let meet = intersection_gens(&p.j, &p.k).unwrap().ideal;
        let shifted = p.k.scale(&Monomial::var(g.n(), v)).unwrap();
        assert_eq!(gen_set(&meet), gen_set(&shifted), "{i}");
    }
}

#[test]
fn degree_one_vertex_meet() {
    // a leaf x_v with neighbour x_u: x_v J ∩ K = x_u x_v ∩ K
    let g = Graph::path(6);
    let i = g.edge_ideal();
    let p = xi_partition(&i, 0).unwrap();
    let meet = intersection_gens(&p.j, &p.k).unwrap().ideal;
    let uv = MonomialIdeal::from_minimal(6, vec![Monomial::squarefree(6, [0, 1])]).unwrap();
    assert_eq!(gen_set(&meet), gen_set(&ideal_intersection(&uv, &p.k).unwrap()));
}

#[test]
fn edge_pieces_cover_the_intersection() {
    let l = Limits::default();
    let mut graphs: Vec<Graph> = (3..=9).map(|n| Graph::cycle(n).unwrap()).collect();
    graphs.extend((2..=9).map(Graph::path));
    graphs.push(Graph::complete_bipartite(3, 4));
    for g in graphs {
        let i = g.edge_ideal();
        for v in 0..g.n() {
            let Ok(e) = edge_split_recursion(&g, v, &l) else { continue };
            let p = xi_partition(&i, v).unwrap();
            let meet = intersection_gens(&p.j, &p.k).unwrap().ideal;
            let all: Vec<Monomial> = e.m.iter().flat_map(|m| m.gens().iter().cloned()).collect();
            let sum = MonomialIdeal::minimalize(g.n(), all).unwrap();
            assert_eq!(gen_set(&sum), gen_set(&meet), "{i} at x{}", v + 1);
        }
    }
}

#[test]
fn split_tables_match_oracle_on_small_examples() {
    let l = Limits::default();
    for s in ["x1*x2, x2*x3, x3*x4", "x1^2, x1*x2, x2^2", "x1*x2*x3, x2*x3*x4, x1*x4"] {
        let i = id(s);
        for v in 0..i.n() {
            let plan = SplitPlan::split(Partition::Var(v), SplitPlan::Leaf, SplitPlan::Leaf, SplitPlan::Leaf);
            let out = split_prune(&i, &plan, SplitOptions::default(), &l).unwrap();
            assert!(out.pruned.dominates(&betti_numbers(&i, 0, &l).unwrap()), "{s} x{}", v + 1);
        }
    }
}
