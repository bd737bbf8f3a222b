//! Acceptance criteria 1-9. Each test prints one PASS/FAIL line to stdout.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;

use cubical::complex::{build_salvetti, check_special, DefiningGraph, QuotientComplex};
use cubical::isometries::{
    build_a0, check_avt, compose_all, conjugate_a, equal_to_depth, fixes_ball, left_multiplication, make_a_v_tau,
    peel, AvtError, Isometry,
};
use cubical::labeling::{class_labeling, construct_labeling, verify_labeling, LabelingError, Sym};
use cubical::portraits::{
    enumerate_candidate_taus, extend_red_to_edge, solve_extension, validate_cubical, validate_red, CubicalPortrait,
    ExtendError, LocalMap, PortraitFile, Seed, SolverOptions, ValueOrder,
};
use cubical::selfsim::{build_edge_automaton, build_red_automaton, red_state_representatives};
use cubical::space::Space;
use cubical::words::{
    apply_move, endpoint, is_reduced, move_neighbours, moves_oracle, same_endpoint, MoveSpec, MovesVerdict, Word,
    DEFAULT_STATE_CAP,
};
use petgraph::unionfind::UnionFind;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

const SPECIAL: [&str; 6] = ["t2", "w2", "raag3", "cylinder", "circle2", "digon"];
/// Complexes on which the portrait criteria are swept.
const PORTRAIT_CORPUS: [&str; 4] = ["t2", "w2", "cylinder", "raag3"];
const PORTRAIT_DEPTH: usize = 5;
const PORTRAITS_PER_COMPLEX: u64 = 20;

fn report(n: u32, title: &str, body: impl FnOnce() -> Outcome) {
    let outcome = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_default();
        Err(format!("panicked: {msg}"))
    });
    let line = match &outcome {
        Ok(detail) => format!("criterion {n} ({title}): PASS; {detail}"),
        Err(detail) => format!("criterion {n} ({title}): FAIL; {detail}"),
    };
    let _ = writeln!(std::io::stdout().lock(), "{line}");
    if let Err(detail) = outcome {
        panic!("criterion {n} failed: {detail}");
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn manifest_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn complex(name: &str) -> QuotientComplex {
    let path = manifest_dir().join(format!("corpus/{name}.json"));
    QuotientComplex::from_json(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn space(name: &str) -> Arc<Space> {
    Space::new(complex(name)).unwrap()
}

fn edge_words(space: &Space, n: usize) -> Vec<Word> {
    build_edge_automaton(space).enumerate_words(n).into_iter().flatten().collect()
}

fn random_order(seed: u64) -> SolverOptions {
    SolverOptions {
        order: ValueOrder::Random(seed),
        ..Default::default()
    }
}

/// Roots alternate between the basepoint and deck-generator images, so that
/// the sweep covers both stabilizer elements and translations.
fn solver_portraits(space: &Arc<Space>, count: u64, depth: usize, salt: u64) -> Vec<CubicalPortrait> {
    let loops = cubical::isometries::deck_generators(space);
    (0..count)
        .map(|i| {
            let root = match (i % 2, loops.is_empty()) {
                (0, _) | (_, true) => Word::empty(),
                _ => endpoint(space, &loops[(i as usize / 2) % loops.len()]).unwrap().normal_form,
            };
            solve_extension(space, space, &root, &Seed::default(), depth, random_order(salt + i))
                .unwrap_or_else(|e| panic!("solver failed for seed {}: {e}", salt + i))
        })
        .collect()
}

fn file(p: &CubicalPortrait) -> PortraitFile {
    PortraitFile::from_portrait(p)
}

#[test]
fn criterion_1_specialness_and_labeling() {
    report(1, "specialness iff labeling", || {
        let graph_path = manifest_dir().join("corpus/graphs/raag3.json");
        let graph = DefiningGraph::from_json(&std::fs::read_to_string(graph_path).unwrap()).unwrap();
        let mut corpus: Vec<(String, QuotientComplex)> =
            SPECIAL.iter().map(|n| (n.to_string(), complex(n))).collect();
        corpus.push(("salvetti(raag3 graph)".into(), build_salvetti(&graph).unwrap()));
        // (name, property violated by the class labeling)
        let pathologies = [
            ("self_intersection", 1u8),
            ("mobius", 4),
            ("sosc", 1),
            ("inter_osculation", 3),
        ];
        for (name, _) in pathologies {
            corpus.push((name.to_string(), complex(name)));
        }
        ensure(corpus.len() >= 8, || "corpus too small".into())?;

        let cyl = complex("cylinder");
        let degrees: HashSet<usize> = (0..cyl.vertex_count()).map(|p| cyl.outgoing(p).len()).collect();
        ensure(degrees.len() > 1, || "cylinder should not be vertex-transitive".into())?;

        let mut special = 0;
        for (name, c) in &corpus {
            let expect_special = !pathologies.iter().any(|(p, _)| p == name);
            let is_special = check_special(c).is_special;
            ensure(is_special == expect_special, || format!("{name}: special = {is_special}"))?;
            match construct_labeling(c) {
                Ok(l) => {
                    ensure(expect_special, || format!("{name}: labeled although not special"))?;
                    let report = verify_labeling(c, &l.to_candidate());
                    ensure(report.passed(), || format!("{name}: canonical labeling fails verification"))?;
                    special += 1;
                }
                Err(LabelingError::NotSpecial(_)) => {
                    ensure(!expect_special, || format!("{name}: no labeling although special"))?;
                }
                Err(e) => return Err(format!("{name}: {e}")),
            }
        }
        for (name, property) in pathologies {
            let c = complex(name);
            let r = check_special(&c);
            let witnessed = match name {
                "self_intersection" => r.self_intersecting.is_some(),
                "mobius" => r.one_sided.is_some(),
                "sosc" => r.self_osculating.is_some(),
                _ => r.inter_osculating.is_some(),
            };
            ensure(witnessed, || format!("{name}: pathology not witnessed"))?;
            let report = verify_labeling(&c, &class_labeling(&c));
            ensure(report.fails(property), || {
                format!("{name}: class labeling does not violate property ({property})")
            })?;
        }
        Ok(format!(
            "{} complexes, {special} labeled and verified, 4 pathologies mapped to properties (1),(4),(1),(3)",
            corpus.len()
        ))
    });
}

#[test]
fn criterion_2_automaton_exactness() {
    report(2, "automaton exactness", || {
        const MAX_LEN: usize = 7;
        let mut checked = 0usize;
        for name in SPECIAL {
            let s = space(name);
            let red = build_red_automaton(&s).enumerate_words(MAX_LEN);
            let edge = build_edge_automaton(&s).enumerate_words(MAX_LEN);
            for (n, (r, e)) in red.iter().zip(&edge).enumerate() {
                let expected: HashSet<&Word> = e.iter().filter(|w| is_reduced(s.alphabet(), w)).collect();
                let got: HashSet<&Word> = r.iter().collect();
                ensure(got.len() == r.len(), || format!("{name}: duplicate words at length {n}"))?;
                ensure(got == expected, || format!("{name}: reduced language differs at length {n}"))?;
                checked += r.len();
            }
        }
        let t2 = space("t2");
        let w2 = space("w2");
        ensure(build_red_automaton(&t2).state_count() == 9, || "T2 state count".into())?;
        ensure(build_red_automaton(&w2).state_count() == 5, || "W2 state count".into())?;
        let counts = build_red_automaton(&w2).count_words(6);
        for (n, &count) in counts.iter().enumerate().skip(1) {
            ensure(count == 4 * 3u64.pow(n as u32 - 1), || format!("W2 sphere words at {n}: {count}"))?;
        }
        let ball = t2.ball(6);
        for n in 1..=6 {
            let size = ball.sphere(n).len();
            ensure(size == 4 * n, || format!("T2 vertex sphere at {n}: {size}"))?;
        }
        Ok(format!("{checked} reduced words of length <= {MAX_LEN} over {} complexes; states 9/5; sphere counts exact for n <= 6", SPECIAL.len()))
    });
}

#[test]
fn criterion_3_moves_oracle() {
    report(3, "moves oracle vs normal forms", || {
        const MAX_LEN: usize = 5;
        let mut pairs = 0u64;
        let mut sampled = 0;
        for name in ["t2", "w2"] {
            let s = space(name);
            let all = edge_words(&s, MAX_LEN + 2);
            let index: HashMap<&Word, usize> = all.iter().enumerate().map(|(i, w)| (w, i)).collect();
            let nf: Vec<Word> = all.iter().map(|w| endpoint(&s, w).unwrap().normal_form).collect();
            for len in 0..=MAX_LEN {
                let budget = len + 2;
                let mut uf = UnionFind::<usize>::new(all.len());
                for (i, w) in all.iter().enumerate().filter(|(_, w)| w.len() <= budget) {
                    for x in move_neighbours(&s, w, budget) {
                        uf.union(i, index[&x]);
                    }
                }
                // Equal partitions of the words of length <= len under both
                // relations is the pairwise equivalence.
                let mut by_nf: HashMap<&Word, usize> = HashMap::new();
                let mut by_class: HashMap<usize, &Word> = HashMap::new();
                let mut members = 0u64;
                for (i, w) in all.iter().enumerate().filter(|(_, w)| w.len() <= len) {
                    let class = uf.find(i);
                    let a = *by_nf.entry(&nf[i]).or_insert(class);
                    let b = *by_class.entry(class).or_insert(&nf[i]);
                    ensure(a == class && b == &nf[i], || {
                        format!("{name}: `{}` disagrees at budget {budget}", s.format_word(w))
                    })?;
                    members += 1;
                }
                pairs += members * members;
            }

            // Cross-check the partition against the oracle itself.
            let short: Vec<&Word> = all.iter().filter(|w| w.len() <= MAX_LEN).collect();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            for k in 0..300 {
                let v = short[rng.gen_range(0..short.len())];
                let w = if k % 2 == 0 {
                    // A word with the same endpoint, when one is short enough.
                    let target = endpoint(&s, v).unwrap().normal_form;
                    let same: Vec<&&Word> = short
                        .iter()
                        .filter(|w| w.len() <= MAX_LEN && nf[index[**w]] == target)
                        .collect();
                    **same.choose(&mut rng).unwrap()
                } else {
                    short[rng.gen_range(0..short.len())]
                };
                let budget = v.len().max(w.len()) + 2;
                let related = moves_oracle(&s, v, w, budget, DEFAULT_STATE_CAP).map_err(|e| e.to_string())?
                    == MovesVerdict::Related;
                let same = same_endpoint(&s, v, w).unwrap();
                ensure(related == same, || {
                    format!("{name}: oracle({}, {}) = {related}", s.format_word(v), s.format_word(w))
                })?;
                sampled += 1;
            }
        }
        Ok(format!("{pairs} word pairs of length <= {MAX_LEN} on T2 and W2 agree; {sampled} direct oracle calls agree"))
    });
}

/// All legal moves on `w`.
fn moves_on(space: &Space, w: &[Sym]) -> Vec<MoveSpec> {
    let mut out = Vec::new();
    for i in 0..w.len().saturating_sub(1) {
        out.push(MoveSpec::Commute { position: i });
        out.push(MoveSpec::Delete { position: i });
    }
    let mut at = Some(space.basepoint());
    for i in 0..=w.len() {
        let Some(p) = at else { break };
        for letter in space.sigma(p).iter() {
            out.push(MoveSpec::Insert { position: i, letter });
        }
        at = w.get(i).and_then(|&s| space.step(p, s));
    }
    out.into_iter().filter(|&m| apply_move(space, w, m).is_ok()).collect()
}

fn check_soundness(name: &str, s: &Arc<Space>, p: &CubicalPortrait, words: &[Word]) -> Result<[u64; 4], String> {
    let depth = p.depth();
    let alpha = s.alphabet();
    let offset = p.root().len();
    let mut counts = [0u64; 4];

    // Well-definedness on vertices.
    let mut images: HashMap<Word, Word> = HashMap::new();
    for w in words.iter().filter(|w| w.len() <= depth) {
        let x = endpoint(s, w).unwrap().normal_form;
        let y = p.evaluate_vertex(w).map_err(|e| e.to_string())?.normal_form;
        if let Some(prev) = images.insert(x, y.clone()) {
            ensure(prev == y, || format!("{name}: `{}` has two images", s.format_word(w)))?;
        }
        counts[0] += 1;
    }

    // Moves on source paths become moves of the same kind at the same place.
    for w in words.iter().filter(|w| w.len() + 2 <= depth + 1) {
        let image = p.evaluate(w).map_err(|e| e.to_string())?;
        for m in moves_on(s, w) {
            let w2 = apply_move(s, w, m).unwrap();
            let image2 = p.evaluate(&w2).map_err(|e| e.to_string())?;
            let moved = match m {
                MoveSpec::Commute { position } => MoveSpec::Commute { position: position + offset },
                MoveSpec::Delete { position } => MoveSpec::Delete { position: position + offset },
                MoveSpec::Insert { position, .. } => MoveSpec::Insert {
                    position: position + offset,
                    letter: image2[position + offset],
                },
            };
            let transported = apply_move(p.target(), &image, moved).map_err(|e| {
                format!("{name}: move {m:?} on `{}` does not transport: {e}", s.format_word(w))
            })?;
            ensure(transported == image2, || {
                format!("{name}: move {m:?} on `{}` transports to a different path", s.format_word(w))
            })?;
            counts[1] += 1;
        }
    }

    // Reduced paths stay reduced.
    for w in words.iter().filter(|w| is_reduced(alpha, w)) {
        let image = p.evaluate(w).map_err(|e| e.to_string())?;
        ensure(is_reduced(p.target().alphabet(), &image[offset..]), || {
            format!("{name}: image of reduced `{}` is not reduced", s.format_word(w))
        })?;
        counts[2] += 1;
    }

    // Adjacent vertices of B_depth go to adjacent vertices.
    let ball = s.ball(depth);
    for i in 0..ball.len() {
        let gx = p.evaluate_vertex(&ball.vertex(i).normal_form).map_err(|e| e.to_string())?;
        for letter in s.sigma(ball.vertex(i).quotient_vertex).iter() {
            let Some(j) = ball.neighbor(i, letter) else { continue };
            let gy = p.evaluate_vertex(&ball.vertex(j).normal_form).map_err(|e| e.to_string())?;
            let t = p.target();
            let adjacent = t.sigma(gx.quotient_vertex).iter().any(|u| gx.step(t, u).as_ref() == Some(&gy));
            ensure(adjacent, || {
                format!("{name}: images of `{}` and its {} neighbour are not adjacent", s.format_word(&ball.vertex(i).normal_form), alpha.name(letter))
            })?;
            counts[3] += 1;
        }
    }
    Ok(counts)
}

#[test]
fn criterion_4_portrait_soundness() {
    report(4, "portrait soundness", || {
        let mut totals = [0u64; 4];
        let mut portraits = 0;
        for name in PORTRAIT_CORPUS {
            let s = space(name);
            let words = edge_words(&s, PORTRAIT_DEPTH + 1);
            for p in solver_portraits(&s, PORTRAITS_PER_COMPLEX, PORTRAIT_DEPTH, 0) {
                validate_cubical(&p, PORTRAIT_DEPTH).map_err(|ob| format!("{name}: {}", ob.describe(&s)))?;
                let counts = check_soundness(name, &s, &p, &words)?;
                for k in 0..4 {
                    totals[k] += counts[k];
                }
                portraits += 1;
            }
        }
        Ok(format!(
            "{portraits} validated portraits at depth {PORTRAIT_DEPTH}; checks: {} endpoint, {} move, {} reduced, {} adjacency",
            totals[0], totals[1], totals[2], totals[3]
        ))
    });
}

/// Drops the red letters at every ball vertex.
fn restrict_to_reduced_tree(p: &CubicalPortrait) -> CubicalPortrait {
    let ball = p.ball().clone();
    let maps: Vec<LocalMap> = (0..ball.len()).map(|i| p.local_map(i).clone()).collect();
    CubicalPortrait::from_fn(p.source(), p.target(), p.root().clone(), p.depth(), |x, s| {
        let i = ball.index_of(&x.normal_form).unwrap();
        match ball.red(i).contains(s) {
            true => None,
            false => maps[i][s.index()],
        }
    })
}

/// A random automorphism of the reduced tree of W2, chosen top-down.
fn random_free_tree_portrait(w2: &Arc<Space>, depth: usize, seed: u64) -> CubicalPortrait {
    let alpha = w2.alphabet();
    let ball = w2.ball(depth);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut maps: Vec<LocalMap> = Vec::with_capacity(ball.len());
    for i in 0..ball.len() {
        let nf = &ball.vertex(i).normal_form;
        let (dom_red, img_red) = match nf.letters().split_last() {
            None => (None, None),
            Some((&last, parent)) => {
                let parent = ball.index_of(parent).unwrap();
                (Some(alpha.inv(last)), Some(alpha.inv(maps[parent][last.index()].unwrap())))
            }
        };
        let domain: Vec<Sym> = alpha.symbols().filter(|&s| Some(s) != dom_red).collect();
        let mut image: Vec<Sym> = alpha.symbols().filter(|&s| Some(s) != img_red).collect();
        image.shuffle(&mut rng);
        let mut m: LocalMap = vec![None; alpha.len()];
        for (s, t) in domain.into_iter().zip(image) {
            m[s.index()] = Some(t);
        }
        maps.push(m);
    }
    CubicalPortrait::from_fn(w2, w2, Word::empty(), depth, |x, s| {
        maps[ball.index_of(&x.normal_form).unwrap()][s.index()]
    })
}

#[test]
fn criterion_5_canonical_extension() {
    report(5, "canonical extension", || {
        let mut extended = 0;
        let extend = |name: &str, q: &CubicalPortrait| -> Result<CubicalPortrait, String> {
            validate_red(q, PORTRAIT_DEPTH).map_err(|ob| format!("{name}: reduced validation: {}", ob.describe(q.source())))?;
            match extend_red_to_edge(q, PORTRAIT_DEPTH) {
                Ok(r) => {
                    validate_cubical(&r, PORTRAIT_DEPTH).map_err(|ob| format!("{name}: {}", ob.describe(q.source())))?;
                    Ok(r)
                }
                Err(ExtendError::EdgeValidationFailed(ob)) => {
                    Err(format!("{name}: EdgeValidationFailed (bug): {}", ob.describe(q.source())))
                }
                Err(e) => Err(format!("{name}: {e}")),
            }
        };
        for name in PORTRAIT_CORPUS {
            let s = space(name);
            for p in solver_portraits(&s, PORTRAITS_PER_COMPLEX, PORTRAIT_DEPTH, 500) {
                let r = extend(name, &restrict_to_reduced_tree(&p))?;
                ensure(file(&r) == file(&p), || format!("{name}: extension differs from the original portrait"))?;
                extended += 1;
            }
        }
        let w2 = space("w2");
        for seed in 0..PORTRAITS_PER_COMPLEX {
            extend("w2 random tree", &random_free_tree_portrait(&w2, PORTRAIT_DEPTH, seed))?;
            extended += 1;
        }
        Ok(format!("{extended} reduced-tree portraits at depth {PORTRAIT_DEPTH} extended and edge-validated"))
    });
}

#[test]
fn criterion_6_generator_synthesis() {
    report(6, "generator synthesis", || {
        let mut summary = Vec::new();
        for name in ["t2", "w2"] {
            let s = space(name);
            let mut realized = 0;
            for v in red_state_representatives(&s) {
                let taus = enumerate_candidate_taus(&s, &v).map_err(|e| e.to_string())?;
                let expected = match (name, v.is_empty()) {
                    ("t2", true) => Some(8),
                    ("t2", false) => Some(1),
                    ("w2", false) => Some(6),
                    _ => None,
                };
                if let Some(n) = expected {
                    ensure(taus.len() == n, || format!("{name} at `{}`: {} candidates", s.format_word(&v), taus.len()))?;
                }
                for tau in taus {
                    let g = make_a_v_tau(&s, &v, &tau, PORTRAIT_DEPTH, SolverOptions::default())
                        .map_err(|e| format!("{name} at `{}`: {e}", s.format_word(&v)))?;
                    check_avt(&g, &v, &tau, PORTRAIT_DEPTH).map_err(|e| format!("{name} at `{}`: {e}", s.format_word(&v)))?;
                    realized += 1;
                }
            }
            summary.push(format!("{name}: {realized} realized"));
        }
        Ok(format!("{} at depth {PORTRAIT_DEPTH}", summary.join(", ")))
    });
}

#[test]
fn criterion_7_peeling() {
    report(7, "peeling", || {
        const DEPTH: usize = 6;
        let w2 = space("w2");
        let mut factors = 0;
        for i in 0..10u64 {
            let g = Isometry::from_portrait(
                solve_extension(&w2, &w2, &Word::empty(), &Seed::default(), DEPTH, random_order(7000 + i))
                    .map_err(|e| e.to_string())?,
            );
            let mut residual = g.clone();
            let mut products = Vec::new();
            for n in 0..4 {
                let step = peel(&residual, n, DEPTH, SolverOptions::default()).map_err(|e| format!("element {i}, n = {n}: {e}"))?;
                factors += step.factors.len();
                residual = step.residual.clone();
                ensure(fixes_ball(&residual, n + 1).map_err(|e| e.to_string())?, || {
                    format!("element {i}: residual after n = {n} does not fix B_{}", n + 1)
                })?;
                products.push(step.product().map_err(|e| e.to_string())?);
            }
            let product = compose_all(&products).map_err(|e| e.to_string())?;
            ensure(equal_to_depth(&product, &g, 4).map_err(|e| e.to_string())?, || {
                format!("element {i}: product of factors differs from the original on B_4")
            })?;
            products.push(residual);
            let whole = compose_all(&products).map_err(|e| e.to_string())?;
            ensure(equal_to_depth(&whole, &g, 4).map_err(|e| e.to_string())?, || {
                format!("element {i}: reassembly differs from the original on B_4")
            })?;
        }
        Ok(format!("10 W2 stabilizer elements at depth {DEPTH}; {factors} factors; residuals fix B_1..B_4; products agree on B_4"))
    });
}

#[test]
fn criterion_8_generating_manifest() {
    report(8, "generating manifest", || {
        const DEPTH: usize = 4;
        let mut conjugations = 0;
        let mut mismatched = 0;
        for name in ["t2", "w2", "circle2"] {
            let s = space(name);
            let set = build_a0(&s, DEPTH, SolverOptions::default());
            let golden_path = manifest_dir().join(format!("tests/golden/{name}_a0.json"));
            let actual = serde_json::to_value(&set.manifest).unwrap();
            if std::env::var_os("CUBICAL_BLESS").is_some() {
                std::fs::create_dir_all(golden_path.parent().unwrap()).unwrap();
                std::fs::write(&golden_path, serde_json::to_string_pretty(&actual).unwrap() + "\n").unwrap();
            }
            let golden: serde_json::Value =
                serde_json::from_str(&std::fs::read_to_string(&golden_path).map_err(|e| format!("{name}: {e}"))?)
                    .unwrap();
            ensure(golden == actual, || format!("{name}: manifest differs from golden file"))?;

            let m = &set.manifest;
            if name == "circle2" {
                ensure(m.orbit_reps.len() == 2, || format!("{name}: {} orbit reps", m.orbit_reps.len()))?;
                continue;
            }
            let at_root = m.a_family.iter().filter(|e| e.rep == "ε").count();
            let (reps, root) = match name {
                "t2" => (9, 8),
                _ => (5, 24),
            };
            ensure(m.deck_generators.len() == 4 && m.orbit_reps.len() == 1 && m.red_reps.len() == reps, || {
                format!("{name}: manifest shape")
            })?;
            ensure(at_root == root, || format!("{name}: {at_root} root candidates"))?;
            let per_rep: BTreeMap<&str, usize> = m.a_family.iter().fold(BTreeMap::new(), |mut acc, e| {
                *acc.entry(e.rep.as_str()).or_default() += 1;
                acc
            });
            let non_root = if name == "t2" { 1 } else { 6 };
            ensure(per_rep.iter().all(|(r, &n)| *r == "ε" || n == non_root), || format!("{name}: {per_rep:?}"))?;
            ensure(m.obstructed == 0, || format!("{name}: {} obstructed entries", m.obstructed))?;

            for (v, tau, a) in &set.family {
                for u in &set.deck {
                    match conjugate_a(u, a, v, tau, DEPTH) {
                        Ok(_) => conjugations += 1,
                        Err(AvtError::RedSetMismatch { .. }) => mismatched += 1,
                        Err(e) => {
                            return Err(format!("{name}: conjugating `{}` by `{}`: {e}", s.format_word(v), s.format_word(u)))
                        }
                    }
                }
            }
        }
        Ok(format!("T2, W2 and two-vertex manifests match golden files; {conjugations} conjugations pass the battery, {mismatched} skipped on red-set mismatch"))
    });
}

#[test]
fn criterion_9_deck_freeness() {
    report(9, "deck freeness", || {
        const LEN: usize = 6;
        let mut trivial = 0;
        let mut moving = 0;
        for name in SPECIAL {
            let s = space(name);
            let identity = Isometry::identity(&s);
            let mut seen_nontrivial: HashSet<Word> = HashSet::new();
            for u in edge_words(&s, LEN) {
                if s.walk_from(s.basepoint(), &u) != Some(s.basepoint()) {
                    continue;
                }
                let l = left_multiplication(&s, &u).map_err(|e| e.to_string())?;
                let nf = endpoint(&s, &u).unwrap().normal_form;
                if nf.is_empty() {
                    ensure(equal_to_depth(&l, &identity, 5).map_err(|e| e.to_string())?, || {
                        format!("{name}: L_{} is not the identity", s.format_word(&u))
                    })?;
                    trivial += 1;
                } else if seen_nontrivial.insert(nf) {
                    let o = l.apply_vertex(&cubical::words::XVertex::root(&s)).map_err(|e| e.to_string())?;
                    ensure(!o.normal_form.is_empty(), || format!("{name}: L_{} fixes o", s.format_word(&u)))?;
                    moving += 1;
                }
            }
        }
        Ok(format!("{trivial} null-homotopic loops of length <= {LEN} act trivially on B_5; {moving} other loop classes move o"))
    });
}
