//! Acceptance suite: one PASS/FAIL line per criterion. Runs without the
//! test harness so the lines always reach stdout.

mod common;

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use bangbox::bangbox::{bang_isomorphic, bang_isomorphic_with, bang_match, copy_bound, BangGraph, GraphPattern};
use bangbox::concrete::{compose, concrete_iso, counit, dual_object, identity, tensor, unit, ConcreteGraph, Sign};
use bangbox::graph::{is_isomorphic, matches, Graph, OpenGraph};
use bangbox::io::{from_json, to_json, GraphCollection, GraphDocument, NormalizeDocument};
use bangbox::label::VertexLabel;
use bangbox::rewrite::{normalize, orient, prepare_rule, rewrite_matches, rewrite_once, step, Policy};
use bangbox::rule::{lift_concrete, LabelTheory, Plain, Rule};
use bangbox::zx::axioms::{one_colour_rules, qft_final, qft_initial, theory};
use bangbox::zx::generators::spider;
use bangbox::zx::semantics::{check_rule_soundness, equal_up_to_scalar, matrix_semantics, pattern_semantics, Matrix};
use bangbox::zx::{AngleExpr, Colour, NodeLabel, Zx};
use bangbox::{e_match, e_matches, EGraph, EqLabel, MatchOptions};
use common::*;
use num_complex::Complex64;
use rand::seq::SliceRandom;
use rand::Rng;

type Outcome = Result<String, String>;

fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

fn read_corpus(name: &str) -> String {
    std::fs::read_to_string(corpus_dir().join(name)).expect("corpus file")
}

fn graph_file(name: &str) -> GraphPattern<NodeLabel> {
    from_json::<GraphDocument<NodeLabel>>(&read_corpus(name))
        .and_then(|d| d.to_pattern())
        .expect("corpus graph")
}

fn yanking() -> Outcome {
    let mut r = rng(1);
    for trial in 0..100 {
        let n = r.gen_range(1..=4);
        let a: Vec<Sign> = (0..n)
            .map(|_| if r.gen_bool(0.5) { Sign::Plus } else { Sign::Minus })
            .collect();
        let a_star = dual_object(&a);
        let id = |x: &[Sign]| identity::<()>(x);
        let left = compose(&tensor(&id(&a), &unit(&a)), &tensor(&counit(&a), &id(&a))).map_err(|e| e.to_string())?;
        let right = compose(&tensor(&unit(&a), &id(&a_star)), &tensor(&id(&a_star), &counit(&a)))
            .map_err(|e| e.to_string())?;
        let iso = |f: &ConcreteGraph<()>, g: &ConcreteGraph<()>| concrete_iso(f, g, &|_, _| true).is_some();
        if !iso(&left, &id(&a)) || !iso(&right, &id(&a_star)) {
            return Err(format!("trial {trial}: A = {a:?}"));
        }
    }
    Ok("100 random signed sets of size 1..4, both equations".into())
}

/// Pairs `i, j` with `i ≤ j ≤ i` that are not equivalent.
fn mutual_violations<T>(fam: &[T], le: impl Fn(&T, &T) -> bool, same: impl Fn(&T, &T) -> bool) -> usize {
    let mut n = 0;
    for i in 0..fam.len() {
        for j in i + 1..fam.len() {
            if le(&fam[i], &fam[j]) && le(&fam[j], &fam[i]) && !same(&fam[i], &fam[j]) {
                n += 1;
            }
        }
    }
    n
}

fn partial_orders() -> Outcome {
    const CASES: u64 = 500;
    let open_le = |a: &OpenGraph<String>, b: &OpenGraph<String>| matches(a, b, &EqLabel);
    let e_le = |a: &EGraph<String>, b: &EGraph<String>| e_matches(a, b, &EqLabel, &MatchOptions::default());
    let e_iso = |a: &EGraph<String>, b: &EGraph<String>| {
        bang_isomorphic(&BangGraph::plain(a.clone()), &BangGraph::plain(b.clone()))
    };
    let b_le = |a: &BangGraph<String>, b: &BangGraph<String>| bangbox::bangbox::bang_matches(a, b);
    let b_iso = |a: &BangGraph<String>, b: &BangGraph<String>| bang_isomorphic(a, b);

    let mut degenerate = [0usize; 3];
    for seed in 0..CASES {
        check_order(&open_family(seed, true), open_le, |a, b| is_isomorphic(a, b))
            .map_err(|e| format!("≤, seed {seed}: {e}"))?;
        check_order(&e_family(seed, true), e_le, e_iso).map_err(|e| format!("≤_e, seed {seed}: {e}"))?;
        let bf = bang_family(seed);
        check_order(&bf, b_le, |a, b| b_iso(a, b) || same_instances(a, b))
            .map_err(|e| format!("≤_!, seed {seed}: {e}"))?;
        for (a, b) in [(0, 1), (1, 2), (0, 2)] {
            let n = covering_bound(&bf[a], &bf[b], 2).ok_or("missing witness")?;
            if !instances_contained(&bf[a], &bf[b], 2, n) {
                return Err(format!("≤_! instance containment, seed {seed}"));
            }
        }
        degenerate[0] += mutual_violations(&open_family(seed, false), open_le, |a, b| is_isomorphic(a, b));
        degenerate[1] += mutual_violations(&e_family(seed, false), e_le, e_iso);
        degenerate[2] += mutual_violations(&bf, b_le, b_iso);
    }
    let summary = format!(
        "{CASES} families each; reflexivity, transitivity and up-set containment hold for ≤, ≤_e, ≤_!; \
         antisymmetry up to iso holds for ≤ without bare wires and ≤_e without isolated or adjacent exterior vertices"
    );
    if degenerate.iter().any(|&n| n > 0) {
        return Err(format!(
            "{summary}; antisymmetry up to iso is violated by {} ≤ pairs with bare wires, {} ≤_e pairs with \
             degenerate exterior vertices, and {} ≤_! pairs (all with equal bounded instance sets)",
            degenerate[0], degenerate[1], degenerate[2]
        ));
    }
    Ok(summary)
}

fn bang_oracle() -> Outcome {
    let mut slowest = Duration::ZERO;
    let mut nonempty = 0;
    for seed in 0..200u64 {
        let mut r = rng(10_000 + seed);
        let g = bang_graph(&mut r, 5);
        let h = match r.gen_range(0..3) {
            0 => bang_graph(&mut r, 8),
            _ => {
                let w = random_witness(&mut r, &g, 3);
                match apply(&w, &g) {
                    Some(h) if h.graph().vertex_count() <= 8 => rename_bang(&mut r, &h),
                    _ => g.clone(),
                }
            }
        };
        let t = Instant::now();
        let fast: std::collections::BTreeSet<_> = bang_match(&g, &h).into_iter().map(normal_witness).collect();
        slowest = slowest.max(t.elapsed());
        let slow = bang_match_oracle(&g, &h, copy_bound(&h));
        if fast != slow {
            return Err(format!("pair {seed}: matcher {} witnesses, oracle {}", fast.len(), slow.len()));
        }
        nonempty += usize::from(!fast.is_empty());
    }
    Ok(format!(
        "200 pairs agree ({nonempty} with witnesses); slowest search {:.1} ms",
        slowest.as_secs_f64() * 1e3
    ))
}

fn corpus_chains() -> Outcome {
    let fig4: GraphCollection<String> = from_json(&read_corpus("fig4.json")).map_err(|e| e.to_string())?;
    let g = |n: &str| fig4.pattern(n).map_err(|e| e.to_string());
    let (g1, g2, g3, g4) = (g("g1")?, g("g2")?, g("g3")?, g("g4")?);
    for (a, b, name) in [(&g1, &g2, "g1 ≤ g2"), (&g2, &g3, "g2 ≤ g3"), (&g3, &g4, "g3 ≤ g4")] {
        if bang_match(a, b).is_empty() {
            return Err(format!("{name} has no witness"));
        }
    }
    let chain = bang_match(&g1, &g4);
    let fig2: GraphCollection<String> = from_json(&read_corpus("fig2.json")).map_err(|e| e.to_string())?;
    let fg = fig2.pattern("g").map_err(|e| e.to_string())?;
    let fh = fig2.pattern("h").map_err(|e| e.to_string())?;
    let em = e_match(fg.egraph(), fh.egraph(), &EqLabel, &MatchOptions::default());
    let verified = em
        .iter()
        .filter(|w| bangbox::egraph::verify_ematch(fg.egraph(), fh.egraph(), w, true))
        .count();
    if chain.is_empty() || em.is_empty() || verified != em.len() {
        return Err(format!("G1 ≤_! G4: {} witnesses; G ≤_e H: {} ({verified} verified)", chain.len(), em.len()));
    }
    Ok(format!(
        "G1 ≤_! G4 with {} witness(es), e.g. {:?}; G ≤_e H with {} verified witness(es)",
        chain.len(),
        chain[0],
        em.len()
    ))
}

fn axiom_soundness() -> Outcome {
    let t = theory().map_err(|e| e.to_string())?;
    let mut checked = 0;
    for r in t.rules() {
        if let Some(c) = check_rule_soundness(r, 3, 3).map_err(|e| format!("{}: {e}", r.name))? {
            return Err(format!("{} fails at {:?}", r.name, c));
        }
        checked += 1;
    }
    Ok(format!(
        "{} axioms and {} lemmas, box copies ≤ 3, 3 angle samples each",
        t.axioms.len(),
        checked - t.axioms.len()
    ))
}

/// Generator shapes as (inputs, outputs, carries a phase).
const SHAPES: [(usize, usize, bool); 5] = [(1, 2, false), (2, 1, false), (1, 0, false), (0, 1, false), (1, 1, true)];

fn for_each_multiplicity(outs: &[usize], ins: &[usize], f: &mut dyn FnMut(&[Vec<usize>])) {
    fn go(
        i: usize,
        j: usize,
        outs: &mut Vec<usize>,
        ins: &mut Vec<usize>,
        m: &mut Vec<Vec<usize>>,
        f: &mut dyn FnMut(&[Vec<usize>]),
    ) {
        let n = outs.len();
        if i == n {
            f(m);
            return;
        }
        let (ni, nj) = if j + 1 == n { (i + 1, 0) } else { (i, j + 1) };
        for k in 0..=outs[i].min(ins[j]) {
            m[i][j] = k;
            outs[i] -= k;
            ins[j] -= k;
            go(ni, nj, outs, ins, m, f);
            outs[i] += k;
            ins[j] += k;
        }
        m[i][j] = 0;
    }
    let n = outs.len();
    go(0, 0, &mut outs.to_vec(), &mut ins.to_vec(), &mut vec![vec![0; n]; n], f);
}

/// Connected single-colour diagrams on the given generator shapes, one per
/// edge multiplicity matrix, with the phase sum.
fn spider_diagrams(c: Colour, shapes: &[usize], f: &mut dyn FnMut(ConcreteGraph<NodeLabel>, AngleExpr)) {
    let n = shapes.len();
    let angles: Vec<AngleExpr> = (0..n)
        .map(|i| {
            if SHAPES[shapes[i]].2 {
                AngleExpr::frac(1, i as i64 + 3)
            } else {
                AngleExpr::zero()
            }
        })
        .collect();
    let total = angles.iter().fold(AngleExpr::zero(), |a, b| a.add(b));
    let outs: Vec<usize> = shapes.iter().map(|&s| SHAPES[s].1).collect();
    let ins: Vec<usize> = shapes.iter().map(|&s| SHAPES[s].0).collect();
    for_each_multiplicity(&outs, &ins, &mut |m| {
        let mut g = Graph::new();
        for i in 0..n {
            g.add_vertex(format!("v{i}"), NodeLabel::spider(c, angles[i].clone())).unwrap();
        }
        let mut k = 0;
        for i in 0..n {
            for j in 0..n {
                for _ in 0..m[i][j] {
                    g.add_edge(format!("e{k}"), format!("v{i}"), format!("v{j}")).unwrap();
                    k += 1;
                }
            }
        }
        if g.components().len() != 1 {
            return;
        }
        let (mut dom, mut cod) = (vec![], vec![]);
        for i in 0..n {
            let used_out: usize = m[i].iter().sum();
            let used_in: usize = (0..n).map(|x| m[x][i]).sum();
            for _ in used_in..ins[i] {
                let b = format!("d{}", dom.len());
                g.add_vertex(b.clone(), NodeLabel::Wire).unwrap();
                g.add_edge(format!("in_{b}"), b.clone(), format!("v{i}")).unwrap();
                dom.push(b);
            }
            for _ in used_out..outs[i] {
                let b = format!("c{}", cod.len());
                g.add_vertex(b.clone(), NodeLabel::Wire).unwrap();
                g.add_edge(format!("out_{b}"), format!("v{i}"), b.clone()).unwrap();
                cod.push(b);
            }
        }
        f(ConcreteGraph::new(g, dom, cod).unwrap(), total.clone());
    });
}

fn spider_theorem() -> Outcome {
    let mut count = 0usize;
    for c in [Colour::Z, Colour::X] {
        let rules = one_colour_rules(c).map_err(|e| e.to_string())?;
        let mut failure = None;
        let mut seqs: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..4 {
            seqs = seqs
                .iter()
                .flat_map(|s| {
                    let from = s.last().copied().unwrap_or(0);
                    (from..SHAPES.len()).map(move |t| {
                        let mut s = s.clone();
                        s.push(t);
                        s
                    })
                })
                .collect();
            for shapes in &seqs {
                spider_diagrams(c, shapes, &mut |d, total| {
                    if failure.is_some() {
                        return;
                    }
                    count += 1;
                    let expected = spider(c, total.clone(), d.dom.len(), d.cod.len());
                    let same = matrix_semantics(&d)
                        .and_then(|a| equal_up_to_scalar(&a, &matrix_semantics(&expected)?));
                    if !matches!(same, Ok(true)) {
                        failure = Some(format!("semantics of {shapes:?} {:?}", d.graph));
                        return;
                    }
                    let p = GraphPattern::plain(lift_concrete(&d).unwrap());
                    let n = normalize(&Zx, &rules, &p, 50, Policy::Size);
                    let target = GraphPattern::plain(lift_concrete(&expected).unwrap());
                    match n {
                        Ok(n) if n.normal && bang_isomorphic_with(&n.graph, &target, false, false) => {}
                        _ => failure = Some(format!("normal form of {shapes:?} {:?}", d.graph)),
                    }
                });
            }
        }
        if let Some(f) = failure {
            return Err(f);
        }
    }
    Ok(format!(
        "{count} connected diagrams over both colours with ≤ 4 generators: semantics is the spider's and \
         normalisation reaches it"
    ))
}

fn qft() -> Outcome {
    let init = graph_file("qft_10.graph.json");
    let fin = graph_file("qft_final.graph.json");
    if init != qft_initial().unwrap() || fin != qft_final().unwrap() {
        return Err("corpus QFT files differ from the builders".into());
    }
    let t = theory().map_err(|e| e.to_string())?;
    let rules: Vec<Rule<NodeLabel>> = t.rules().cloned().collect();
    let n = normalize(&Zx, &rules, &init, 200, Policy::Size).map_err(|e| e.to_string())?;
    if !n.normal || !bang_isomorphic_with(&n.graph, &fin, false, true) {
        return Err(format!("normal form {:?}", n.graph));
    }
    // Every intermediate graph keeps the semantics.
    let sem = |g: &GraphPattern<NodeLabel>| pattern_semantics(g.egraph()).map_err(|e| e.to_string());
    let start = sem(&init)?;
    let oriented = orient(&rules, Policy::Size);
    let mut g = init.clone();
    while let Some((next, s)) = step(&Zx, &oriented, &g, Policy::Size).map_err(|e| e.to_string())? {
        if !equal_up_to_scalar(&start, &sem(&next)?).map_err(|e| e.to_string())? {
            return Err(format!("step {} changes the semantics", s.rule));
        }
        g = next;
    }
    // QFT on |10⟩: (1/2) Σ_k i^{2k} |k⟩, first output most significant.
    let i = Complex64::new(0.0, 1.0);
    let direct = Matrix::new(4, 1, (0..4).map(|k| i.powu(2 * k) / 2.0).collect());
    let agree = |m: &Matrix| equal_up_to_scalar(m, &direct).map_err(|e| e.to_string());
    if !agree(&start)? || !agree(&sem(&fin)?)? {
        return Err("semantics disagree with the direct transform".into());
    }
    let steps: Vec<String> = n.trace.iter().map(|s| s.rule.clone()).collect();
    Ok(format!(
        "{} steps ({}), {:?} → {:?}; initial, final and direct QFT|10⟩ agree",
        n.trace.len(),
        steps.join(", "),
        n.trace.first().map(|s| s.before).unwrap_or_default(),
        n.trace.last().map(|s| s.after).unwrap_or_default()
    ))
}

fn interface<L>(g: &GraphPattern<L>) -> BTreeMap<String, usize> {
    g.egraph()
        .exterior()
        .iter()
        .map(|x| (x.clone(), g.graph().degree(x)))
        .collect()
}

/// A random walk of rewrite steps, restarting from a random start graph
/// when stuck or once the graph grows past `max_vertices`.
fn walk<T: LabelTheory>(
    model: &T,
    rules: &[Rule<T::Label>],
    starts: &[GraphPattern<T::Label>],
    steps: usize,
    seed: u64,
) -> Result<usize, String>
where
    T::Subst: PartialEq,
    T::Label: VertexLabel,
{
    let mut r = rng(seed);
    let both: Vec<Rule<T::Label>> = rules.iter().flat_map(|x| [x.clone(), x.sym()]).collect();
    let mut g = starts[0].clone();
    let mut done = 0;
    let mut restarts = 0;
    while done < steps {
        let mut order: Vec<&Rule<T::Label>> = both.iter().collect();
        order.shuffle(&mut r);
        let mut next = None;
        for rule in order {
            let rule = prepare_rule::<T>(rule, &g);
            let ms = rewrite_matches(model, &rule, &g);
            if let Some(m) = ms.choose(&mut r) {
                next = Some(rewrite_once(model, &rule, &g, m).map_err(|e| format!("{}: {e}", rule.name))?);
                break;
            }
        }
        match next {
            Some(h) => {
                if interface(&h) != interface(&g) {
                    return Err(format!("step {done} changed {:?} into {:?}", interface(&g), interface(&h)));
                }
                done += 1;
                g = if h.graph().vertex_count() > 16 {
                    restarts += 1;
                    starts.choose(&mut r).unwrap().clone()
                } else {
                    h
                };
            }
            None => {
                restarts += 1;
                g = starts.choose(&mut r).unwrap().clone();
            }
        }
        if restarts > 10 * steps {
            return Err("walk keeps getting stuck".into());
        }
    }
    Ok(done)
}

fn type_preservation() -> Outcome {
    let t = theory().map_err(|e| e.to_string())?;
    let rules: Vec<Rule<NodeLabel>> = t.rules().cloned().collect();
    let zx_starts: Vec<GraphPattern<NodeLabel>> = ["qft_10", "qft_final", "two_spiders", "single_node"]
        .iter()
        .map(|n| graph_file(&format!("{n}.graph.json")))
        .collect();
    let zx_steps = walk(&Zx, &rules, &zx_starts, 800, 7)?;
    let plain = bangbox::corpus::plain_theory().map_err(|e| e.to_string())?;
    let fig2: GraphCollection<String> = from_json(&read_corpus("fig2.json")).map_err(|e| e.to_string())?;
    let plain_starts = vec![
        fig2.pattern("h").map_err(|e| e.to_string())?,
        fig2.pattern("g").map_err(|e| e.to_string())?,
    ];
    let plain_steps = walk(&Plain::<String>::new(), &plain.axioms, &plain_starts, 200, 8)?;
    Ok(format!(
        "{} random steps ({zx_steps} ZX, {plain_steps} plain), exterior names and degrees unchanged",
        zx_steps + plain_steps
    ))
}

fn determinism() -> Outcome {
    let t = theory().map_err(|e| e.to_string())?;
    let rules: Vec<Rule<NodeLabel>> = t.rules().cloned().collect();
    let init = graph_file("qft_10.graph.json");
    let run = || {
        let n = normalize(&Zx, &rules, &init, 200, Policy::Size).expect("normalize");
        to_json(&NormalizeDocument::from_result(&n))
    };
    let a = run();
    let b = run();
    let c = std::thread::scope(|s| {
        let h = s.spawn(run);
        let d = run();
        (h.join().unwrap(), d)
    });
    if a != b || a != c.0 || a != c.1 {
        return Err("normalize output differs between runs".into());
    }
    Ok(format!("4 runs (2 concurrent) give identical {}-byte documents", a.len()))
}

/// Criteria that cannot hold as stated, with the reason recorded.
const KNOWN: &[&str] = &["matching partial orders"];

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("compact closed yanking", yanking),
        ("matching partial orders", partial_orders),
        ("!-box matching agrees with generate-and-test", bang_oracle),
        ("corpus matching chains", corpus_chains),
        ("axiom soundness", axiom_soundness),
        ("spider theorem", spider_theorem),
        ("QFT case study", qft),
        ("rewrite type preservation", type_preservation),
        ("normalize determinism", determinism),
    ];
    let mut unexpected = Vec::new();
    for (name, check) in criteria {
        let t = Instant::now();
        let outcome = check();
        let secs = t.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("PASS {name} [{secs:.1}s]: {detail}"),
            Err(detail) => println!("FAIL {name} [{secs:.1}s]: {detail}"),
        }
        if outcome.is_ok() == KNOWN.contains(&name) {
            unexpected.push(name);
        }
    }
    if !unexpected.is_empty() {
        eprintln!("unexpected outcome: {}", unexpected.join(", "));
        std::process::exit(1);
    }
}
