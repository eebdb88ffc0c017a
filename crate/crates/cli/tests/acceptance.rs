//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::process::Command;
use std::time::Instant;

use foldmv::characters::{mv_weight_multiplicity, verify_twining};
use foldmv::folding::parse_sigma;
use foldmv::lusztig::{tropical_move, transport};
use foldmv::polytope::{build_polytope, datum_along, enumerate_data};
use foldmv::weyl::braid_moves;
use foldmv::{
    Coweight, ExactCharacters, FoldedSystem, LiftConvention, LusztigDatum, Rational, ReducedWord,
    RootDatum, WeylGroup,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = fn() -> Result<String, String>;

fn main() {
    let checks: [(&str, Check); 8] = [
        ("MV polytope counts equal Freudenthal multiplicities", mv_counts_match_freudenthal),
        ("transport is independent of the braid path", path_independence),
        ("block criterion agrees with vertex criterion", block_equals_vertex),
        ("theta_P is a coweight-preserving bijection", theta_p_bijection),
        ("twining character equals folded Weyl character", twining_identity),
        ("folded transport is well defined", folded_transport_well_defined),
        ("A4 lifted words and block pattern", a4_lifts),
        ("CLI verification output is deterministic", cli_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in checks.iter().enumerate() {
        let start = Instant::now();
        let result = panic::catch_unwind(AssertUnwindSafe(check))
            .unwrap_or_else(|e| Err(panic_message(&e)));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {}: {name} ({detail}; {secs:.1}s)", k + 1),
            Err(reason) => {
                failed += 1;
                println!("FAIL {}: {name} ({reason}; {secs:.1}s)", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

fn panic_message(e: &Box<dyn std::any::Any + Send>) -> String {
    if let Some(s) = e.downcast_ref::<String>() {
        s.clone()
    } else if let Some(s) = e.downcast_ref::<&str>() {
        s.to_string()
    } else {
        "panic".to_string()
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T>(r: foldmv::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn datum(label: &str) -> RootDatum {
    RootDatum::new(label.parse().unwrap())
}

fn group(label: &str) -> WeylGroup {
    WeylGroup::new(datum(label)).unwrap()
}

fn folded(label: &str, sigma: &str) -> FoldedSystem {
    let d = datum(label);
    let perm = parse_sigma(&d, sigma).unwrap();
    FoldedSystem::from_datum(d, perm).unwrap()
}

fn w(labels: &[usize]) -> ReducedWord {
    ReducedWord::one_based(labels)
}

/// Nonnegative integer vectors of length `n` with entry sum at most `h`.
fn bounded_sum(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut v = vec![0i64; n];
    loop {
        out.push(v.clone());
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            v[k] += 1;
            if v.iter().sum::<i64>() <= h {
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
}

/// Every vector in `0..=bound` of length `n`.
fn box_values(n: usize, bound: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    let mut v = vec![0u64; n];
    loop {
        out.push(v.clone());
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if v[k] < bound {
                v[k] += 1;
                break;
            }
            v[k] = 0;
            k += 1;
        }
    }
}

// 1
fn mv_counts_match_freudenthal() -> Result<String, String> {
    let mut lambdas = 0;
    let mut weights = 0;
    for (label, height) in [("A2", 6), ("A3", 4)] {
        let g = group(label);
        let d = g.datum();
        let word = d.longest_word();
        let system = ExactCharacters::of_datum(d);
        let w0 = g.longest_element();
        for lambda in bounded_sum(d.rank(), height).into_iter().map(Coweight) {
            if !d.is_dominant(&lambda) {
                continue;
            }
            lambdas += 1;
            let character = ok(system.weyl_character(&lambda))?;
            // every coweight between the lowest and highest weight, weights or not
            let low = w0.apply(&lambda);
            let span: Vec<u64> = lambda.0.iter().zip(&low.0).map(|(a, b)| (a - b) as u64).collect();
            let bound = *span.iter().max().unwrap();
            for offset in box_values(d.rank(), bound) {
                if offset.iter().zip(&span).any(|(o, s)| o > s) {
                    continue;
                }
                let mu = Coweight(low.0.iter().zip(&offset).map(|(l, &o)| l + o as i64).collect());
                let count = ok(mv_weight_multiplicity(&g, &lambda, &mu, &word))?;
                let expected = character.coefficient(&mu);
                ensure(count == expected, || {
                    format!("{label} lambda {lambda} mu {mu}: mv {count}, freudenthal {expected}")
                })?;
                weights += 1;
            }
        }
    }
    Ok(format!("{lambdas} highest weights, {weights} coweights compared"))
}

/// Transports every datum from `start` to every word along a BFS tree of the
/// braid graph, then checks that every edge of the graph commutes with the
/// tree values. Any path is a sequence of edges, so all paths agree.
fn check_all_paths(g: &WeylGroup, values: &[Vec<u64>]) -> Result<usize, String> {
    let d = g.datum();
    let graph = ok(g.word_graph(&d.longest_word()))?;
    let n = graph.len();
    let mut edges = 0;
    for start in 0..n {
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut order = vec![start];
        let mut seen = vec![false; n];
        seen[start] = true;
        let mut k = 0;
        while k < order.len() {
            let v = order[k];
            for (e, (t, _)) in graph.edges[v].iter().enumerate() {
                if !seen[*t] {
                    seen[*t] = true;
                    parent[*t] = Some((v, e));
                    order.push(*t);
                }
            }
            k += 1;
        }
        ensure(order.len() == n, || "braid graph is disconnected".into())?;
        for vals in values {
            let mut at: Vec<Option<LusztigDatum>> = vec![None; n];
            at[start] = Some(LusztigDatum::new(graph.words[start].clone(), vals.clone()).unwrap());
            for &v in &order[1..] {
                let (p, e) = parent[v].unwrap();
                let mv = &graph.edges[p][e].1;
                at[v] = Some(ok(tropical_move(d, at[p].as_ref().unwrap(), mv))?);
            }
            for v in 0..n {
                let here = at[v].as_ref().unwrap();
                for (t, mv) in &graph.edges[v] {
                    let moved = ok(tropical_move(d, here, mv))?;
                    ensure(&moved == at[*t].as_ref().unwrap(), || {
                        format!("edge {mv} at ({}) disagrees for {vals:?}", graph.words[v])
                    })?;
                    edges += 1;
                }
            }
            let origin = at[start].as_ref().unwrap();
            for v in 0..n {
                let direct = ok(transport(g, origin, &graph.words[v]))?;
                ensure(&direct == at[v].as_ref().unwrap(), || {
                    format!("shortest path disagrees at ({})", graph.words[v])
                })?;
            }
        }
    }
    Ok(edges)
}

// 2
fn path_independence() -> Result<String, String> {
    let a2 = check_all_paths(&group("A2"), &box_values(3, 3))?;
    let a3 = check_all_paths(&group("A3"), &box_values(6, 3))?;

    let g = group("A4");
    let d = g.datum();
    let graph = ok(g.word_graph(&d.longest_word()))?;
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_611);
    for _ in 0..200 {
        let u = &graph.words[rng.gen_range(0..graph.len())];
        let v = &graph.words[rng.gen_range(0..graph.len())];
        let values = (0..u.len()).map(|_| rng.gen_range(0..=3)).collect();
        let x = LusztigDatum::new(u.clone(), values).unwrap();
        let shortest = ok(transport(&g, &x, v))?;
        // through a random intermediate word
        let mid = &graph.words[rng.gen_range(0..graph.len())];
        let via = ok(transport(&g, &ok(transport(&g, &x, mid))?, v))?;
        // along a random walk of braid moves, then to the target
        let mut walked = x.clone();
        for _ in 0..40 {
            let moves = braid_moves(d, walked.word());
            let mv = moves[rng.gen_range(0..moves.len())];
            walked = ok(tropical_move(d, &walked, &mv))?;
        }
        let walk = ok(transport(&g, &walked, v))?;
        ensure(shortest == via && shortest == walk, || {
            format!("A4 paths disagree for {x} to ({v})")
        })?;
    }
    Ok(format!("A2 {a2} and A3 {a3} edge checks, 200 A4 triples"))
}

fn block_vs_vertex(sys: &FoldedSystem, height: i64) -> Result<(usize, usize), String> {
    let g = sys.group();
    let word = sys.lifted_longest_word(LiftConvention::Ascending);
    let (mut total, mut invariant) = (0, 0);
    for neg in bounded_sum(g.datum().rank(), height) {
        let nu = -Coweight(neg);
        for d in ok(enumerate_data(g, &word, &nu))? {
            let block = ok(sys.data().is_block_constant(&word, &d))?;
            let vertex = sys.is_sigma_invariant(&ok(build_polytope(g, &d))?);
            ensure(block == vertex, || format!("{d}: block {block}, vertex {vertex}"))?;
            total += 1;
            invariant += block as usize;
        }
    }
    Ok((total, invariant))
}

// 3
fn block_equals_vertex() -> Result<String, String> {
    let (a2, a2_inv) = block_vs_vertex(&folded("A2", "flip"), 6)?;
    let (a3, a3_inv) = block_vs_vertex(&folded("A3", "flip"), 4)?;
    Ok(format!(
        "A2 {a2} data ({a2_inv} invariant), A3 {a3} data ({a3_inv} invariant)"
    ))
}

fn theta_p_counts(sys: &FoldedSystem, height: i64) -> Result<(usize, usize), String> {
    let g = sys.group();
    let fg = sys.folded_group();
    let data = sys.data();
    let word = sys.lifted_longest_word(LiftConvention::Ascending);
    let folded_word = sys.folded_longest_word();
    let (mut coweights, mut polytopes) = (0, 0);
    for neg in bounded_sum(fg.datum().rank(), height) {
        let nu = -Coweight(neg);
        let embedded = ok(data.embed(&nu))?;
        let folded_data = ok(enumerate_data(fg, &folded_word, &nu))?;
        let mut invariant = Vec::new();
        for d in ok(enumerate_data(g, &word, &embedded))? {
            let p = ok(build_polytope(g, &d))?;
            if sys.is_sigma_invariant(&p) {
                invariant.push((d, p));
            }
        }
        ensure(invariant.len() == folded_data.len(), || {
            format!(
                "nu {nu}: {} invariant polytopes, {} folded",
                invariant.len(),
                folded_data.len()
            )
        })?;
        let mut images = Vec::new();
        for (d, p) in &invariant {
            let q = ok(sys.theta_p(p))?;
            ensure(q.vertex(fg.longest_index()) == &nu, || format!("theta_P moves the coweight of {d}"))?;
            let f = ok(data.fold_datum(d))?;
            ensure(q.datum() == &f, || format!("theta_P datum differs from fold for {d}"))?;
            ensure(&ok(data.unfold_datum(&f, LiftConvention::Ascending))? == d, || {
                format!("unfold(fold) differs for {d}")
            })?;
            images.push(f);
        }
        images.sort();
        images.dedup();
        ensure(images.len() == invariant.len(), || format!("theta_P not injective at {nu}"))?;
        for f in &folded_data {
            let u = ok(data.unfold_datum(f, LiftConvention::Ascending))?;
            ensure(&ok(data.fold_datum(&u))? == f, || format!("fold(unfold) differs for {f}"))?;
            ensure(images.binary_search(f).is_ok(), || format!("{f} is not in the image"))?;
            // the folded polytope's own chain matches theta_P
            let q = ok(sys.folded_polytope(f))?;
            let chain = f.vertex_chain(fg.datum());
            let prefixes = ok(fg.prefixes(f.word()))?;
            for (k, &e) in prefixes.iter().enumerate() {
                ensure(q.vertex(e) == &chain[k], || format!("folded chain differs for {f}"))?;
            }
        }
        coweights += 1;
        polytopes += folded_data.len();
    }
    Ok((coweights, polytopes))
}

// 4
fn theta_p_bijection() -> Result<String, String> {
    let (a3_nu, a3_p) = theta_p_counts(&folded("A3", "flip"), 4)?;
    let (a4_nu, a4_p) = theta_p_counts(&folded("A4", "flip"), 4)?;
    Ok(format!(
        "A3 {a3_nu} coweights / {a3_p} polytopes, A4 {a4_nu} coweights / {a4_p} polytopes"
    ))
}

// 5
fn twining_identity() -> Result<String, String> {
    let mut cases: Vec<(&str, &str, Vec<i64>)> = (0..=3).map(|k| ("A2", "flip", vec![k, k])).collect();
    cases.push(("A3", "flip", vec![1, 1, 1]));
    cases.push(("A3", "flip", vec![1, 2, 1]));
    cases.push(("A4", "flip", vec![1, 1, 1, 1]));
    // the only invariant dominant coweight of coroot height at most 3 is 0;
    // the highest coroot is the fundamental coweight of the middle node
    cases.push(("D4", "triality", vec![0, 0, 0, 0]));
    cases.push(("D4", "triality", vec![1, 2, 1, 1]));
    let mut rows = 0;
    for (label, sigma, lambda) in &cases {
        let sys = folded(label, sigma);
        let lambda = Coweight(lambda.clone());
        let report = ok(verify_twining::<Rational>(&sys, &lambda))?;
        ensure(report.equal, || {
            let bad: Vec<String> = report
                .mismatches()
                .map(|(mu, t, m)| format!("{mu}: {t} vs {m}"))
                .collect();
            format!("{label} lambda {lambda}: {}", bad.join(", "))
        })?;
        ensure(report.alternating_sum_ok, || {
            format!("{label} lambda {lambda}: alternating sum identity fails")
        })?;
        rows += report.rows.len();
    }
    Ok(format!("{} cases, {rows} weights", cases.len()))
}

// 6
fn folded_transport_well_defined() -> Result<String, String> {
    let sys = folded("A3", "flip");
    let fg = sys.folded_group();
    let words = [w(&[1, 2, 1, 2]), w(&[2, 1, 2, 1])];
    let mut count = 0;
    for from in &words {
        for values in box_values(4, 3) {
            let f = LusztigDatum::new(from.clone(), values).unwrap();
            let p = ok(sys.folded_polytope(&f))?;
            for to in &words {
                // every intermediate lifted datum is checked block-constant inside
                let asc = ok(sys.folded_transport(&f, to, LiftConvention::Ascending))?;
                let desc = ok(sys.folded_transport(&f, to, LiftConvention::Descending))?;
                ensure(asc == desc, || format!("{f} to ({to}): conventions disagree"))?;
                ensure(asc == ok(datum_along(fg, &p, to))?, || {
                    format!("{f} to ({to}): differs from the folded polytope")
                })?;
                let back = ok(sys.folded_transport(&asc, from, LiftConvention::Ascending))?;
                ensure(back == f, || format!("{f}: round trip fails"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} folded transports, both conventions"))
}

// 7
fn a4_lifts() -> Result<String, String> {
    let sys = folded("A4", "flip");
    let data = sys.data();
    let i = ok(data.lift_word(&w(&[1, 2, 1, 2]), LiftConvention::Ascending))?;
    let i_prime = ok(data.lift_word(&w(&[2, 1, 2, 1]), LiftConvention::Ascending))?;
    ensure(i.to_string() == "1,4,2,3,2,1,4,2,3,2", || format!("got ({i})"))?;
    ensure(i_prime.to_string() == "2,3,2,1,4,2,3,2,1,4", || format!("got ({i_prime})"))?;
    let patterns: [(&ReducedWord, &[&[usize]]); 2] = [
        (&i, &[&[0, 1], &[2, 3, 4], &[5, 6], &[7, 8, 9]]),
        (&i_prime, &[&[0, 1, 2], &[3, 4], &[5, 6, 7], &[8, 9]]),
    ];
    let mut accepted = 0;
    for (word, blocks) in patterns {
        for values in box_values(10, 2) {
            let expected = blocks.iter().all(|b| b.iter().all(|&k| values[k] == values[b[0]]));
            let d = LusztigDatum::new(word.clone(), values.clone()).unwrap();
            let got = ok(data.is_block_constant(word, &d))?;
            ensure(got == expected, || format!("({word}) {values:?}: got {got}"))?;
            accepted += got as usize;
        }
    }
    Ok(format!("both words match, {accepted} of {} data accepted", 2 * 3usize.pow(10)))
}

// 8
fn cli_determinism() -> Result<String, String> {
    let bin = env!("CARGO_BIN_EXE_foldmv");
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let record = dir.path().join("a2.json");
    let record = record.to_str().unwrap();
    let commands: Vec<Vec<&str>> = vec![
        vec!["verify-weights", "--type", "A2", "--lambda", "2,2"],
        vec!["verify-weights", "--type", "A3", "--lambda", "1,2,1"],
        vec!["verify-twining", "--type", "A2", "--sigma", "flip", "--lambda", "1,1"],
        vec!["verify-twining", "--type", "A3", "--sigma", "flip", "--lambda", "1,2,1"],
        vec!["verify-twining", "--type", "A4", "--sigma", "flip", "--lambda", "1,1,1,1"],
        vec!["verify-twining", "--type", "D4", "--sigma", "triality", "--lambda", "1,2,1,1"],
        vec!["enumerate", "--type", "A3", "--coweight", "-2,-2,-2"],
        vec!["enumerate", "--type", "A3", "--sigma", "flip", "--coweight", "-2,-2", "--lambda", "2,2,2"],
        vec!["transport", "--type", "A3", "--sigma", "flip", "--from", "1,2,1,2", "--to", "2,1,2,1", "--datum", "1,2,0,3"],
        vec!["braid-path", "--type", "A4", "--from", "1,4,2,3,2,1,4,2,3,2", "--to", "2,3,2,1,4,2,3,2,1,4"],
        vec!["fold", "--type", "A4", "--sigma", "flip", "--datum", "1,1,2,2,2,0,0,3,3,3"],
        vec!["export", "--type", "A2", "--sigma", "flip", "--lambda", "2,2", "--datum", "1,1,1;1,0,1"],
        vec!["export", "--type", "A2", "--datum", "1,1,1", "--output", record],
        vec!["export", "--check", record],
    ];
    for args in &commands {
        let run = || {
            Command::new(bin)
                .args(args)
                .output()
                .map_err(|e| e.to_string())
        };
        let first = run()?;
        let second = run()?;
        ensure(first.status.code() == Some(0), || {
            format!(
                "{} exited {:?}: {}",
                args.join(" "),
                first.status.code(),
                String::from_utf8_lossy(&first.stderr)
            )
        })?;
        ensure(
            first.stdout == second.stdout && first.status.code() == second.status.code(),
            || format!("{} differs between runs", args.join(" ")),
        )?;
    }
    Ok(format!("{} commands run twice, byte-identical", commands.len()))
}
