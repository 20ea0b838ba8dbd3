//! Acceptance run. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command as Process;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_traits::{Signed, Zero};
use petgraph::graph::UnGraph;
use polydraw_core::geom::construct::{
    cross_polytope, cube, cyclic_default, dodecahedron, icosahedron, klee_minty, permutohedron, product,
    random_spherical, simplex,
};
use polydraw_core::geom::{
    add, convex_hull, format_rational, k_connected, parse_rational, ratio, scale, to_f64, Edge, Graph, Point, Polytope,
    Rational,
};
use polydraw_core::pdgraph::{build_pd_graph, min_c4_triangulation};
use polydraw_core::rubber::{convex_polygon, crossing_pairs, fold_signs, peripheral_cycle, planar_tutte, steinitz_realize};
use polydraw_core::scene::session::Number;
use polydraw_core::scene::{Command, EdgeKind, Session, SessionConfig, Source};
use polydraw_core::schlegel::init_state;
use polydraw_core::spring::{run, EmbeddingState, SpringParams, SpringSystem, Vec3};
use polydraw_core::tightspan::{is_treelike, tight_span, Metric};
use polydraw_core::tropical::{tropical_cyclic, tropical_polytope, Side, TropicalMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn permutohedron_counts() -> Check {
    let p = permutohedron(4).map_err(err)?;
    let sizes: Vec<usize> = p.face_lattice().faces_of_dim(2).map(|f| f.vertices.len()).collect();
    ensure(p.vertices().len() == 24, || format!("{} vertices", p.vertices().len()))?;
    ensure(p.facets().len() == 14, || format!("{} facets", p.facets().len()))?;
    ensure(sizes.iter().all(|&s| s == 4 || s == 6), || format!("2-face sizes {sizes:?}"))?;
    let squares = sizes.iter().filter(|&&s| s == 4).count();
    Ok(format!("24 vertices, 14 facets, {squares} squares and {} hexagons", sizes.len() - squares))
}

fn cyclic_completeness() -> Check {
    for n in 6..=8 {
        let g = cyclic_default(4, n).map_err(err)?.graph();
        let complete = Graph::from_edges(n, (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)))).map_err(err)?;
        ensure(g.node_count() == n && g.is_isomorphic(&complete), || format!("cyclic(4,{n}) is not K_{n}"))?;
    }
    Ok("cyclic(4,n) has graph K_n for n = 6, 7, 8".into())
}

fn balinski() -> Check {
    let mut family: Vec<(String, Polytope)> = Vec::new();
    for d in 1..=5 {
        family.push((format!("simplex:{d}"), simplex(d).map_err(err)?));
        family.push((format!("cube:{d}"), cube(d).map_err(err)?));
        family.push((format!("cross:{d}"), cross_polytope(d).map_err(err)?));
        family.push((format!("klee-minty:{d}"), klee_minty(d).map_err(err)?));
    }
    for n in 2..=6 {
        family.push((format!("permutohedron:{n}"), permutohedron(n).map_err(err)?));
    }
    for d in 2..=5 {
        for n in d + 1..=d + 4 {
            family.push((format!("cyclic:{d}:{n}"), cyclic_default(d, n).map_err(err)?));
        }
    }
    family.push(("icosahedron".into(), icosahedron()));
    family.push(("dodecahedron".into(), dodecahedron()));
    family.push(("simplex:2*cube:3".into(), product(&simplex(2).map_err(err)?, &cube(3).map_err(err)?).map_err(err)?));
    family.push(("cube:2*cube:2".into(), product(&cube(2).map_err(err)?, &cube(2).map_err(err)?).map_err(err)?));
    for seed in 0..4 {
        family.push((format!("random-spherical:12:{seed}"), random_spherical(12, seed).map_err(err)?));
    }
    let mut polars = Vec::new();
    for (name, p) in &family {
        if p.dim() >= 2 {
            polars.push((format!("{name} --polar"), p.polar().map_err(err)?));
        }
    }
    family.extend(polars);
    for (name, p) in &family {
        let d = p.dim();
        ensure(d <= 5, || format!("{name} has dimension {d}"))?;
        ensure(k_connected(&p.graph(), d).map_err(err)?, || format!("{name} is not {d}-connected"))?;
    }
    Ok(format!("{} polytopes of dimension at most 5", family.len()))
}

fn random_convex_combination(rng: &mut ChaCha8Rng, pts: &[&Point]) -> Point {
    let weights: Vec<i64> = pts.iter().map(|_| rng.random_range(1..1_000_000_000)).collect();
    let total: i64 = weights.iter().sum();
    let mut x = vec![Rational::zero(); pts[0].len()];
    for (p, w) in pts.iter().zip(&weights) {
        x = add(&x, &scale(p, &ratio(*w, total)));
    }
    x
}

fn schlegel_subdivision() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut summary = Vec::new();
    for (name, p) in [("permutohedron:4", permutohedron(4).map_err(err)?), ("cube:4", cube(4).map_err(err)?)] {
        let f = 0;
        let d = init_state(p.clone(), f).map_err(err)?.diagram().map_err(err)?;
        let chart = p.chart_vertices();
        for v in p.facet_vertices(f) {
            ensure(d.positions[v] == chart[v], || format!("{name}: vertex {v} of F moved"))?;
        }
        let cells: Vec<Polytope> = d
            .top_cells()
            .map(|c| convex_hull(&c.vertices.iter().map(|&v| d.exact[v].clone()).collect::<Vec<_>>()))
            .collect::<Result<_, _>>()
            .map_err(err)?;
        let fverts: Vec<&Point> = p.facet_vertices(f).iter().map(|&v| &d.exact[v]).collect();
        for _ in 0..10_000 {
            let x = random_convex_combination(&mut rng, &fverts);
            let hits = cells.iter().filter(|c| c.contains(&x)).count();
            ensure(hits == 1, || format!("{name}: a point of F lies in {hits} cells"))?;
        }
        summary.push(format!("{name} ({} cells)", cells.len()));
    }
    Ok(format!("10^4 points each in exactly one cell for {}", summary.join(", ")))
}

fn rational_number(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Number {
    Number::Exact(format_rational(&ratio(rng.random_range(lo..=hi), den)))
}

fn random_command(rng: &mut ChaCha8Rng, p: &Polytope, session: &Session) -> Command {
    let d = p.dim();
    match rng.random_range(0..5) {
        0 => Command::Zoom { zeta: rational_number(rng, 1, 99, 100) },
        1 => {
            let f = rng.random_range(0..p.facets().len());
            Command::SelectFacet { marked: p.facet_vertices(f) }
        }
        2 => {
            let facet = session.schlegel_state().expect("schlegel view").facet();
            let fv = p.facet_vertices(facet);
            let vertex = fv[rng.random_range(0..fv.len())];
            let displacement = (0..d - 1).map(|_| rational_number(rng, -8, 8, 16)).collect();
            Command::Drag { vertex, target: None, displacement: Some(displacement) }
        }
        _ => {
            let facet = session.schlegel_state().expect("schlegel view").facet();
            let off: Vec<usize> = (0..p.vertices().len()).filter(|v| !p.facet_vertices(facet).contains(v)).collect();
            let vertex = off[rng.random_range(0..off.len())];
            let target = (0..d - 1).map(|_| Number::Float(rng.random_range(-2.0..2.0))).collect();
            Command::Drag { vertex, target: Some(target), displacement: None }
        }
    }
}

fn viewpoint_is_valid(p: &Polytope, facet: usize, viewpoint: &[String]) -> Result<bool, String> {
    let v: Vec<Rational> = viewpoint.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>().map_err(err)?;
    Ok(p.chart_facets().iter().enumerate().all(|(i, h)| {
        let s = h.slack(&v);
        if i == facet {
            s.is_negative()
        } else {
            s.is_positive()
        }
    }))
}

fn zoom_drag_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let (mut accepted, mut rejected) = (0, 0);
    let polytopes = [Arc::new(cross_polytope(3).map_err(err)?), Arc::new(permutohedron(4).map_err(err)?)];
    for sequence in 0..1000 {
        let p = &polytopes[sequence % 2];
        let config = SessionConfig { facet: rng.random_range(0..p.facets().len()), ..Default::default() };
        let mut session = Session::new(Source::Polytope(p.clone()), config.clone()).map_err(err)?;
        for _ in 0..rng.random_range(1..=6) {
            let cmd = random_command(&mut rng, p, &session);
            let before = serde_json::to_string(&session.response().map_err(err)?).map_err(err)?;
            match session.apply(cmd) {
                Ok(_) => accepted += 1,
                Err(e) => {
                    rejected += 1;
                    let after = serde_json::to_string(&session.response().map_err(err)?).map_err(err)?;
                    ensure(before == after, || format!("sequence {sequence}: rejected command ({e}) changed the state"))?;
                }
            }
            let s = session.summary();
            let facet = s.facet.ok_or("no facet in summary")?;
            let viewpoint = s.viewpoint.as_deref().ok_or("no viewpoint in summary")?;
            ensure(s.valid && viewpoint_is_valid(p, facet, viewpoint)?, || format!("sequence {sequence}: invalid viewpoint"))?;
        }
        let replayed = Session::replay(Source::Polytope(p.clone()), config, session.log()).map_err(err)?;
        let a = serde_json::to_string(&session.response().map_err(err)?).map_err(err)?;
        let b = serde_json::to_string(&replayed.response().map_err(err)?).map_err(err)?;
        ensure(a == b, || format!("sequence {sequence}: replay differs"))?;
    }
    Ok(format!("1000 sequences, {accepted} commands accepted, {rejected} rejected cleanly, all replays identical"))
}

fn klee_minty_ascent() -> Check {
    for d in 3..=6 {
        let k = klee_minty(d).map_err(err)?;
        let n = k.vertices().len();
        ensure(n == 1 << d, || format!("klee_minty({d}) has {n} vertices"))?;
        let g = k.graph();
        let height = |v: usize| &k.vertices()[v][d - 1];
        // Ascending edges form a DAG; longest path by dynamic programming in height order.
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| height(a).cmp(height(b)));
        let mut longest = vec![1usize; n];
        for &v in &order {
            for &w in g.neighbors(v) {
                if height(w) > height(v) {
                    longest[w] = longest[w].max(longest[v] + 1);
                }
            }
        }
        let found = longest.iter().max() == Some(&n);
        ensure(found, || format!("no ascending path through all vertices of klee_minty({d})"))?;
    }
    Ok("ascending Hamiltonian paths for d = 3..6".into())
}

fn spring_separation() -> Check {
    let km = klee_minty(3).map_err(err)?;
    let g = km.graph();
    let lambda: Vec<f64> = km.vertices().iter().map(|v| to_f64(&v[2])).collect();
    let (mut converged, mut good) = (0, 0);
    for seed in 0..20 {
        let r = run(&g, &SpringParams { seed, ..Default::default() }, Some(&lambda), None).map_err(err)?;
        if !r.converged {
            continue;
        }
        converged += 1;
        let z = |v: usize| r.state.positions[v][2];
        if g.edges().iter().all(|e| (lambda[e.b] - lambda[e.a]) * (z(e.b) - z(e.a)) > 0.0) {
            good += 1;
        }
    }
    ensure(converged > 0, || "no run converged".into())?;
    ensure(good as f64 >= 0.95 * converged as f64, || format!("{good}/{converged} converged runs separated"))?;
    Ok(format!("{good}/{converged} converged runs separate every ascending edge"))
}

fn force_balance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for state in 0..100 {
        let n = rng.random_range(2..=50);
        let density = rng.random_range(0.05..0.6);
        let mut g = Graph::new(n);
        for a in 0..n {
            for b in a + 1..n {
                if rng.random_bool(density) {
                    g.add_edge(a, b).map_err(err)?;
                }
            }
        }
        let mut sys = SpringSystem::new(&g, SpringParams::default()).map_err(err)?;
        if state % 2 == 1 {
            sys = sys.with_objective((0..n).map(|_| rng.random_range(-5.0..5.0)).collect()).map_err(err)?;
        }
        let mut point = || -> Vec3 { [0, 1, 2].map(|_| rng.random_range(-2.0..2.0)) };
        let positions: Vec<Vec3> = (0..n).map(|_| point()).collect();
        let previous: Vec<Vec3> = (0..n).map(|_| point()).collect();
        let forces = sys.forces(&EmbeddingState { positions, previous, iteration: 0 }).map_err(err)?;
        for c in 0..3 {
            let total: f64 = forces.iter().map(|f| f[c]).sum();
            worst = worst.max(total.abs());
        }
    }
    ensure(worst < 1e-9, || format!("largest force sum {worst:e}"))?;
    Ok(format!("largest coordinate of the force sum {worst:.1e}"))
}

fn graph_of_rotation(rotation: &[Vec<usize>]) -> Result<Graph, String> {
    let edges: BTreeSet<(usize, usize)> =
        rotation.iter().enumerate().flat_map(|(v, ns)| ns.iter().map(move |&w| (v.min(w), v.max(w)))).collect();
    Graph::from_edges(rotation.len(), edges).map_err(err)
}

fn steinitz() -> Check {
    let mut out = Vec::new();
    for (name, p) in [("icosahedron", icosahedron()), ("cube", cube(3).map_err(err)?), ("dodecahedron", dodecahedron())] {
        let g = p.graph();
        let r = steinitz_realize(&g).map_err(err)?;
        ensure(r.polytope.dim() == 3, || format!("{name}: dimension {}", r.polytope.dim()))?;
        ensure(r.polytope.graph().is_isomorphic(&g), || format!("{name}: graph not isomorphic"))?;
        let lifted = graph_of_rotation(&r.lift.embedding.rotation)?;
        let points = r.lift.lifted_points();
        let node_of: Vec<usize> = {
            let mut m = vec![usize::MAX; points.len()];
            for (node, x) in points.iter().enumerate() {
                m[r.lift.polytope.vertex_index(x).ok_or("lifted point is not a vertex")?] = node;
            }
            m
        };
        let hull: BTreeSet<Edge> =
            r.lift.polytope.graph().edges().iter().map(|e| Edge::new(node_of[e.a], node_of[e.b])).collect();
        let want: BTreeSet<Edge> = lifted.edges().iter().copied().collect();
        ensure(hull == want, || format!("{name}: hull edges differ from the lifted graph"))?;
        let folds = fold_signs(&lifted, &r.lift.embedding, &r.lift.heights);
        ensure(folds.iter().all(|(_, s)| s.is_positive()), || format!("{name}: a fold is not convex"))?;
        out.push(format!("{name}{}", if r.via_dual { " (via dual)" } else { "" }));
    }
    Ok(format!("realized {} with no new edges and convex folds", out.join(", ")))
}

fn tutte_planarity() -> Check {
    let mut graphs = Vec::new();
    for seed in 0..10u64 {
        let n = 6 + (seed as usize * 5) % 25;
        let p = random_spherical(n, seed).map_err(err)?;
        graphs.push(p.graph());
        let q = random_spherical(5 + seed as usize % 12, 100 + seed).map_err(err)?.polar().map_err(err)?;
        graphs.push(q.graph());
    }
    let mut nodes = Vec::new();
    for g in &graphs {
        ensure(g.node_count() <= 30 && k_connected(g, 3).map_err(err)?, || "bad input graph".into())?;
        let outer = peripheral_cycle(g, 5).ok_or("no peripheral cycle")?;
        let e = planar_tutte(g, &outer, &convex_polygon(outer.len())).map_err(err)?;
        let crossings = crossing_pairs(g, &e.positions);
        ensure(crossings == 0, || format!("{crossings} crossings on {} nodes", g.node_count()))?;
        nodes.push(g.node_count());
    }
    Ok(format!("{} graphs with {}..{} nodes, no crossings", graphs.len(), nodes.iter().min().unwrap(), nodes.iter().max().unwrap()))
}

fn algae_dimension() -> Check {
    let m = Metric::parse(include_str!("../../../data/algae.metric")).map_err(err)?;
    let t = tight_span(&m).map_err(err)?;
    ensure(m.len() == 8, || format!("{} taxa", m.len()))?;
    ensure(t.complex.dim() == 4, || format!("dimension {}", t.complex.dim()))?;
    let matched = t.taxa.iter().flatten().collect::<BTreeSet<_>>().len();
    ensure(matched == 8, || format!("{matched} taxa matched"))?;
    Ok(format!("dimension 4, f-vector {:?}, 8 taxa on distinct vertices", t.complex.f_vector()))
}

struct RandomTree {
    tree: Graph,
    weights: Vec<Rational>,
    taxa: Vec<usize>,
}

fn random_tree(rng: &mut ChaCha8Rng) -> RandomTree {
    loop {
        let n = rng.random_range(2..=10);
        let mut tree = Graph::new(n);
        for v in 1..n {
            tree.add_edge(v, rng.random_range(0..v)).unwrap();
        }
        let taxa: Vec<usize> = (0..n).filter(|&v| tree.degree(v) == 1 || rng.random_bool(0.3)).collect();
        if taxa.len() > 7 {
            continue;
        }
        let weights = (0..n - 1).map(|_| ratio(rng.random_range(1..=12), rng.random_range(1..=3))).collect();
        return RandomTree { tree, weights, taxa };
    }
}

/// The tree with unlabelled degree-2 nodes smoothed away, as a taxon-labelled
/// weighted petgraph.
fn smoothed(t: &RandomTree) -> UnGraph<Option<usize>, Rational> {
    let n = t.tree.node_count();
    let mut adj: Vec<BTreeMap<usize, Rational>> = vec![BTreeMap::new(); n];
    for (e, w) in t.tree.edges().iter().zip(&t.weights) {
        adj[e.a].insert(e.b, w.clone());
        adj[e.b].insert(e.a, w.clone());
    }
    let mut alive = vec![true; n];
    while let Some(v) = (0..n).find(|&v| alive[v] && adj[v].len() == 2 && !t.taxa.contains(&v)) {
        let (a, wa) = adj[v].pop_first().unwrap();
        let (b, wb) = adj[v].pop_first().unwrap();
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[a].insert(b, &wa + &wb);
        adj[b].insert(a, wa + wb);
        alive[v] = false;
    }
    let mut g = UnGraph::new_undirected();
    let mut idx = vec![None; n];
    for v in (0..n).filter(|&v| alive[v]) {
        idx[v] = Some(g.add_node(t.taxa.iter().position(|&x| x == v)));
    }
    for v in 0..n {
        for (&w, len) in &adj[v] {
            if v < w && alive[v] && alive[w] {
                g.add_edge(idx[v].unwrap(), idx[w].unwrap(), len.clone());
            }
        }
    }
    g
}

fn tree_likeness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut sizes = Vec::new();
    for i in 0..50 {
        let t = random_tree(&mut rng);
        let m = Metric::from_tree(&t.tree, &t.weights, &t.taxa).map_err(err)?;
        ensure(is_treelike(&m).map_err(err)?, || format!("tree {i} reported not treelike"))?;
        let ts = tight_span(&m).map_err(err)?;
        let mut got = UnGraph::<Option<usize>, f64>::new_undirected();
        let nodes: Vec<_> =
            (0..ts.complex.vertices.len()).map(|v| got.add_node(ts.taxa.iter().position(|&x| x == Some(v)))).collect();
        for ((a, b), len) in ts.complex.edges().into_iter().zip(ts.edge_lengths()) {
            got.add_edge(nodes[a], nodes[b], len);
        }
        let want = smoothed(&t);
        ensure(petgraph::algo::is_isomorphic_matching(&got, &want, |a, b| a == b, |a, b| (a - to_f64(b)).abs() < 1e-9), || {
            format!("tree {i}: skeleton differs from the source tree")
        })?;
        sizes.push(t.taxa.len());
    }
    Ok(format!("50 trees with {}..{} taxa", sizes.iter().min().unwrap(), sizes.iter().max().unwrap()))
}

fn tropical_cyclic_counts() -> Check {
    let t = tropical_polytope(&tropical_cyclic(6, 4).map_err(err)?).map_err(err)?;
    let (pv, tv) = (t.pseudo_vertex_count(), t.tropical_vertices().len());
    ensure(pv == 126 && tv == 6, || format!("{pv} pseudo-vertices, {tv} tropical vertices"))?;
    Ok("126 pseudo-vertices, 6 tropical vertices".into())
}

fn tropical_triangle() -> Check {
    let c = TropicalMatrix::parse(include_str!("../../../data/eq_c.csv")).map_err(err)?;
    let t = tropical_polytope(&c).map_err(err)?;
    ensure(t.complex.dim() == 2, || format!("dimension {}", t.complex.dim()))?;
    ensure(t.tropical_vertices().len() == 3, || format!("{} tropical vertices", t.tropical_vertices().len()))?;
    let z = t.project(Side::LastN).map_err(err)?;
    for (r, row) in c.rows().iter().enumerate() {
        let normalized: Vec<Rational> = row[1..].iter().map(|x| x - &row[0]).collect();
        let v = t.row_vertices[r].ok_or_else(|| format!("row {r} has no vertex"))?;
        ensure(z[v] == normalized, || format!("row {r} projects to {:?}", z[v]))?;
    }
    Ok("dimension 2, rows project to their normalizations (1,0,0) = (0,-1,-1) etc.".into())
}

fn pd_counts() -> Check {
    let k = min_c4_triangulation();
    ensure(k.f_vector() == vec![16, 57, 86, 60, 16], || format!("f-vector {:?}", k.f_vector()))?;
    let pd = build_pd_graph(&k);
    let (nodes, primal, artificial) =
        (pd.graph.node_count(), pd.count(EdgeKind::Primal), pd.count(EdgeKind::Artificial));
    ensure((nodes, primal, artificial) == (32, 57, 80), || format!("{nodes} nodes, {primal} primal, {artificial} artificial"))?;
    Ok(format!("32 nodes, 57 primal, {} dual, 80 artificial edges", pd.count(EdgeKind::Dual)))
}

fn determinism() -> Check {
    let dir = std::env::temp_dir().join(format!("polydraw-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(err)?;
    let algae = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/algae.metric");
    let eq_c = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/eq_c.csv");
    let scene = dir.join("scene.json");
    let commands = dir.join("commands.json");
    std::fs::write(&commands, r#"[{"command":"zoom","zeta":"1/3"},{"command":"drag","vertex":1,"displacement":["1/10","-1/10"]}]"#)
        .map_err(err)?;
    let invocations: Vec<Vec<&str>> = vec![
        vec!["construct", "permutohedron:4"],
        vec!["construct", "zonotope:6", "--polar", "--format", "svg"],
        vec!["construct", "cyclic:3:7", "--format", "obj"],
        vec!["schlegel", "permutohedron:4", "--facet", "0", "--format", "svg"],
        vec!["schlegel", "cross:3", "--zoom", "1/2"],
        vec!["schlegel", "cube:4", "--facet", "3", "--format", "obj"],
        vec!["schlegel", "cross:3", "--commands", commands.to_str().unwrap()],
        vec!["spring", "cube:3"],
        vec!["spring", "zonotope:6", "--polar", "--lengths", "euclidean"],
        vec!["spring", "klee-minty:3", "--objective", "coord:2", "--format", "svg"],
        vec!["spring", "simplex:2*cube:3", "--objective", "linear:4,-3,0,0,0", "--format", "obj"],
        vec!["spring", "random-spherical:20:4"],
        vec!["tutte", "dodecahedron", "--format", "svg"],
        vec!["realize", "icosahedron", "--format", "raw"],
        vec!["tightspan", algae],
        vec!["tightspan", algae, "--mode", "approximate-metric", "--format", "svg"],
        vec!["tropical", eq_c, "--view", "last-n"],
        vec!["tropical", "cyclic:6:4"],
        vec!["tropical", "permutohedron:4", "--view", "last-n", "--format", "obj"],
        vec!["pdgraph", "min-c4"],
        vec!["pdgraph", "genus-two", "--solid", "--hide-artificial", "--format", "svg"],
    ];
    let exe = env!("CARGO_BIN_EXE_polydraw");
    let call = |args: &[&str]| -> Result<Vec<u8>, String> {
        let o = Process::new(exe)
            .args(args)
            .args(["--seed", "7"])
            .env_remove("POLYDRAW_SEED")
            .env_remove("POLYDRAW_PARAMS")
            .env_remove("POLYDRAW_FORMAT")
            .output()
            .map_err(err)?;
        ensure(o.status.success(), || format!("{args:?}: {}", String::from_utf8_lossy(&o.stderr)))?;
        Ok(o.stdout)
    };
    for args in &invocations {
        let first = call(args)?;
        ensure(first == call(args)?, || format!("{args:?} differs between runs"))?;
    }
    std::fs::write(&scene, call(&["spring", "cube:3"])?).map_err(err)?;
    let export = ["export", scene.to_str().unwrap(), "--format", "svg"];
    ensure(call(&export)? == call(&export)?, || "export differs between runs".into())?;
    std::fs::remove_dir_all(&dir).map_err(err)?;
    Ok(format!("{} invocations byte-identical across two runs", invocations.len() + 1))
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("permutohedron counts", Duration::from_secs(1), permutohedron_counts),
        ("cyclic completeness", Duration::from_secs(5), cyclic_completeness),
        ("Balinski suite", Duration::from_secs(30), balinski),
        ("Schlegel identity and subdivision", Duration::from_secs(60), schlegel_subdivision),
        ("zoom/drag soundness", Duration::from_secs(60), zoom_drag_soundness),
        ("Klee-Minty ascent", Duration::from_secs(10), klee_minty_ascent),
        ("spring vertical separation", Duration::from_secs(120), spring_separation),
        ("spring force balance", Duration::from_secs(10), force_balance),
        ("Tutte/Steinitz", Duration::from_secs(30), steinitz),
        ("Tutte planarity", Duration::from_secs(30), tutte_planarity),
        ("tight span dimension", Duration::from_secs(120), algae_dimension),
        ("tree-likeness", Duration::from_secs(120), tree_likeness),
        ("tropical cyclic counts", Duration::from_secs(120), tropical_cyclic_counts),
        ("tropical triangle", Duration::from_secs(5), tropical_triangle),
        ("pd-graph counts", Duration::from_secs(1), pd_counts),
        ("determinism", Duration::from_secs(300), determinism),
    ];
    let mut failed = 0;
    for (i, (name, budget, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(d) if elapsed <= *budget => (true, d),
            Ok(d) => (false, format!("{d}; over the {budget:?} budget")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "{} {:>2} {name}: {detail} [{:.2} s]",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            elapsed.as_secs_f64()
        );
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
