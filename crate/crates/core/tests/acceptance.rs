//! One PASS/FAIL line per acceptance criterion; exits nonzero on any failure.
//!
//! The expected values come from oracles written here, independently of the
//! library: Burnside counts over brute-force relation enumeration, direct
//! surjection and filling enumeration, and a literal covering diagram.

use std::collections::{BTreeMap, BTreeSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use dqp_core::algebra::Variant;
use dqp_core::canonical::{automorphisms, enumerate_isoclasses};
use dqp_core::dqp::{DoubleQuasiPoset, Family};
use dqp_core::gram::gram;
use dqp_core::pictures::{count_maps, patterns, MapKind};
use dqp_core::preorder::Preorder;
use dqp_core::tableaux::{p_lambda, q_lambda, q_of_composition, YoungDiagram};
use dqp_core::verify::{Suite, SuiteReport};
use dqp_core::words::enumerate_packed_words;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

// ---------------------------------------------------------------------------
// Oracles

/// Every reflexive transitive relation on `n` points, as adjacency matrices,
/// by filtering all subsets of the off-diagonal pairs.
fn brute_preorders(n: usize) -> Vec<Vec<Vec<bool>>> {
    let off: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << off.len()) {
        let mut r = vec![vec![false; n]; n];
        for (i, row) in r.iter_mut().enumerate() {
            row[i] = true;
        }
        for (b, &(i, j)) in off.iter().enumerate() {
            if mask >> b & 1 == 1 {
                r[i][j] = true;
            }
        }
        let transitive =
            (0..n).all(|i| (0..n).all(|j| !r[i][j] || (0..n).all(|k| !r[j][k] || r[i][k])));
        if transitive {
            out.push(r);
        }
    }
    out
}

fn antisymmetric(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| i == j || !(r[i][j] && r[j][i])))
}

fn total(r: &[Vec<bool>]) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| r[i][j] || r[j][i]))
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

fn fixed_by(r: &[Vec<bool>], s: &[usize]) -> bool {
    let n = r.len();
    (0..n).all(|i| (0..n).all(|j| r[i][j] == r[s[i]][s[j]]))
}

/// Isoclass counts of pairs `(≤1, ≤2)` with `≤1` from `first` and `≤2` from
/// `second`, by Burnside's lemma: a pair is fixed by `σ` iff both parts are.
fn burnside(
    n: usize,
    first: impl Fn(&[Vec<bool>]) -> bool,
    second: impl Fn(&[Vec<bool>]) -> bool,
) -> usize {
    let all = brute_preorders(n);
    let perms = permutations(n);
    let fixed: usize = perms
        .iter()
        .map(|s| {
            let a = all.iter().filter(|r| first(r) && fixed_by(r, s)).count();
            let b = all.iter().filter(|r| second(r) && fixed_by(r, s)).count();
            a * b
        })
        .sum();
    assert_eq!(fixed % perms.len(), 0);
    fixed / perms.len()
}

/// Functions `[n] → [k]` with fiber sizes `content`, by direct enumeration.
fn surjections_with_fibers(content: &[usize]) -> u64 {
    let n: usize = content.iter().sum();
    let k = content.len();
    let mut count = 0;
    let mut f = vec![0usize; n];
    loop {
        let mut fibers = vec![0; k];
        for &v in &f {
            fibers[v] += 1;
        }
        if fibers == content {
            count += 1;
        }
        let mut i = 0;
        while i < n && f[i] == k - 1 {
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return count;
        }
        f[i] += 1;
    }
}

/// Cells `(row, column)` of a diagram given by row lengths, rows in the
/// given order. Rows are left-justified.
fn cells_of(rows: &[usize]) -> Vec<(usize, usize)> {
    rows.iter()
        .enumerate()
        .flat_map(|(r, &len)| (0..len).map(move |c| (r, c)))
        .collect()
}

/// Arrangements of the multiset with multiplicities `content` on the cells,
/// weakly increasing along rows and upwards. Row `r` sits directly above
/// row `r + 1`, so the longest row is at the bottom.
fn weak_content_fillings(rows: &[usize], content: &[usize]) -> u64 {
    let cells = cells_of(rows);
    let last = rows.len() - 1;
    // height from the bottom
    let height = |r: usize| last - r;
    let below = |a: (usize, usize), b: (usize, usize)| height(a.0) <= height(b.0) && a.1 <= b.1;
    let mut values: Vec<usize> = content
        .iter()
        .enumerate()
        .flat_map(|(v, &m)| std::iter::repeat_n(v, m))
        .collect();
    let mut count = 0;
    // iterate over distinct arrangements of the multiset
    loop {
        let ok = (0..cells.len()).all(|a| {
            (0..cells.len()).all(|b| !below(cells[a], cells[b]) || values[a] <= values[b])
        });
        count += ok as u64;
        if !next_permutation(&mut values) {
            return count;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Bijective fillings of the diagram by `0..n`, increasing (strictly or
/// weakly) for `le2` along both directions, by brute force over `n!`.
fn bijective_fillings(rows: &[usize], le2: &Preorder, strict: bool) -> u64 {
    let cells = cells_of(rows);
    let last = rows.len() - 1;
    let height = |r: usize| last - r;
    let below =
        |a: (usize, usize), b: (usize, usize)| a != b && height(a.0) <= height(b.0) && a.1 <= b.1;
    permutations(cells.len())
        .iter()
        .filter(|f| {
            (0..cells.len()).all(|a| {
                (0..cells.len()).all(|b| {
                    !below(cells[a], cells[b])
                        || if strict {
                            le2.lt(f[a], f[b])
                        } else {
                            le2.le(f[a], f[b])
                        }
                })
            })
        })
        .count() as u64
}

fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            // rows top-down, weakly increasing lengths
            out.push(cur.iter().rev().copied().collect());
            return;
        }
        for p in (1..=left.min(max)).rev() {
            cur.push(p);
            go(left - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    (1..=n)
        .flat_map(|first| {
            compositions(n - first).into_iter().map(move |mut rest| {
                rest.insert(0, first);
                rest
            })
        })
        .collect()
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

// ---------------------------------------------------------------------------
// Criteria

fn check(ok: bool, what: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn suite(s: Suite, max_n: usize) -> Result<SuiteReport, String> {
    let report = s
        .run(Some(max_n), Default::default())
        .map_err(|e| e.to_string())?;
    if let Some(c) = report.failures().next() {
        return Err(format!(
            "{} failed: {}",
            c.id,
            c.counterexample.as_deref().unwrap_or("?")
        ));
    }
    Ok(report)
}

fn summary(report: &SuiteReport) -> String {
    let cases: u64 = report.checks.iter().map(|c| c.cases).sum();
    format!("{} checks, {cases} cases", report.checks.len())
}

fn require_checks(report: &SuiteReport, ids: &[&str]) -> Result<(), String> {
    for id in ids {
        check(
            report.checks.iter().any(|c| c.id == *id),
            format!("missing check {id}"),
        )?;
    }
    Ok(())
}

fn criterion_1() -> Outcome {
    let dqp_expected = [1, 10, 166, 5965];
    let sqp_expected = [1, 7, 74, 1290];
    let start = Instant::now();
    for n in 1..=4 {
        let dqp = enumerate_isoclasses(n, Family::Dqp)
            .map_err(|e| e.to_string())?
            .len();
        let sqp = enumerate_isoclasses(n, Family::Sqp)
            .map_err(|e| e.to_string())?
            .len();
        check(
            dqp == dqp_expected[n - 1] && sqp == sqp_expected[n - 1],
            format!("n={n}: dqp {dqp}, sqp {sqp}"),
        )?;
    }
    let elapsed = start.elapsed();
    for n in 1..=4 {
        let dqp = burnside(n, |_| true, |_| true);
        let sqp = burnside(n, |_| true, total);
        check(
            dqp == dqp_expected[n - 1] && sqp == sqp_expected[n - 1],
            format!("Burnside n={n}: dqp {dqp}, sqp {sqp}"),
        )?;
    }
    check(
        elapsed < Duration::from_secs(120),
        format!("enumeration took {elapsed:.1?}"),
    )?;
    Ok(format!(
        "dqp 1,10,166,5965 and sqp 1,7,74,1290 (Burnside agrees), enumeration {elapsed:.2?}"
    ))
}

/// `a|bc` style label of a blow-up of the indiscrete 3-point order: the
/// `≤1` classes from the bottom up; chains are written without bars.
fn label(p: &DoubleQuasiPoset) -> String {
    let le1 = p.le1();
    let mut classes = le1.equivalence_classes();
    classes.sort_by_key(|c| (0..3).filter(|&j| le1.le(j, c[0])).count());
    if classes.len() == 1 {
        return "{123}".into();
    }
    let blocks: Vec<String> = classes
        .iter()
        .map(|c| c.iter().map(|i| (i + 1).to_string()).collect())
        .collect();
    if classes.len() == 3 {
        blocks.concat()
    } else {
        blocks.join("|")
    }
}

fn criterion_2() -> Outcome {
    let two_class = DoubleQuasiPoset::new(
        Preorder::closure(3, &[(0, 1), (0, 2), (1, 2), (2, 1)]).map_err(|e| e.to_string())?,
        Preorder::chain(3),
    )
    .map_err(|e| e.to_string())?;
    let three = two_class.blow_ups().len();
    check(three == 3, format!("{{1}}<{{2,3}} has {three} blow-ups"))?;

    let bottom = DoubleQuasiPoset::new(Preorder::indiscrete(3), Preorder::chain(3))
        .map_err(|e| e.to_string())?;
    let nodes = bottom.blow_ups();
    check(
        nodes.len() == 13,
        format!("{} blow-ups of the indiscrete order", nodes.len()),
    )?;

    let labels: Vec<String> = nodes.iter().map(label).collect();
    let m = nodes.len();
    let lt = |a: usize, b: usize| a != b && nodes[a].is_blowup_le(&nodes[b]);
    let mut covers = BTreeSet::new();
    for a in 0..m {
        for b in 0..m {
            if lt(a, b) && !(0..m).any(|c| lt(a, c) && lt(c, b)) {
                covers.insert((labels[a].clone(), labels[b].clone()));
            }
        }
    }
    let two_level = ["1|23", "12|3", "2|13", "13|2", "3|12", "23|1"];
    let upper: BTreeMap<&str, [&str; 2]> = BTreeMap::from([
        ("1|23", ["123", "132"]),
        ("12|3", ["123", "213"]),
        ("2|13", ["213", "231"]),
        ("13|2", ["132", "312"]),
        ("3|12", ["312", "321"]),
        ("23|1", ["231", "321"]),
    ]);
    let mut expected = BTreeSet::new();
    for t in two_level {
        expected.insert(("{123}".to_string(), t.to_string()));
        for c in upper[t] {
            expected.insert((t.to_string(), c.to_string()));
        }
    }
    check(covers == expected, format!("covering edges {covers:?}"))?;
    Ok(format!(
        "3 and 13 blow-ups; {} covering edges match the diagram",
        covers.len()
    ))
}

fn criterion_3() -> Outcome {
    let report = suite(Suite::Hopf, 3)?;
    require_checks(
        &report,
        &[
            "hopf.coassociative.standard",
            "hopf.coassociative.strict",
            "hopf.multiplicative.standard",
            "hopf.multiplicative.strict",
            "hopf.antipode.standard",
            "hopf.antipode.strict",
            "hopf.subfamily.sqp.standard",
            "hopf.subfamily.dp.standard",
            "hopf.subfamily.tqp.standard",
            "hopf.coproducts_agree_on_double_posets",
            "hopf.upsilon_intertwines",
            "hopf.upsilon_unitriangular",
            "hopf.splitting_projection",
            "hopf.splitting_algebra_map",
            "hopf.splitting_coalgebra_map",
        ],
    )?;
    Ok(summary(&report))
}

fn criterion_4() -> Outcome {
    let report = suite(Suite::Pairing, 3)?;
    require_checks(
        &report,
        &[
            "pairing.symmetric.standard",
            "pairing.symmetric.strict",
            "pairing.hopf.standard",
            "pairing.hopf.strict",
            "pairing.strict_through_splitting",
            "pairing.iota_inequalities",
            "pairing.iota_nonzero",
            "pairing.upsilon_isometry",
        ],
    )?;
    Ok(summary(&report))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let dqp_dims = [1, 10, 166];
    let mut dp_dims = Vec::new();
    for n in 1..=3 {
        let dp_oracle = burnside(n, antisymmetric, antisymmetric);
        dp_dims.push(dp_oracle);
        let standard = gram(n, Family::Dqp, Variant::Standard).map_err(|e| e.to_string())?;
        check(
            standard.dim() == dqp_dims[n - 1],
            format!("n={n}: dimension {}", standard.dim()),
        )?;
        check(
            standard.rank() == standard.dim(),
            format!("n={n}: standard rank {}", standard.rank()),
        )?;
        let dp = gram(n, Family::Dp, Variant::Standard).map_err(|e| e.to_string())?;
        check(
            dp.dim() == dp_oracle,
            format!("n={n}: {} double posets, oracle {dp_oracle}", dp.dim()),
        )?;
        check(
            dp.rank() == dp_oracle,
            format!("n={n}: double-poset rank {}", dp.rank()),
        )?;
        let strict = gram(n, Family::Dqp, Variant::Strict).map_err(|e| e.to_string())?;
        check(
            strict.rank() == dp_oracle,
            format!("n={n}: strict rank {}, oracle {dp_oracle}", strict.rank()),
        )?;
    }
    let elapsed = start.elapsed();
    check(
        elapsed < Duration::from_secs(60),
        format!("took {elapsed:.1?}"),
    )?;
    Ok(format!(
        "standard ranks 1,10,166; strict ranks = |dp(n)| = {dp_dims:?}; {elapsed:.2?}"
    ))
}

fn criterion_6() -> Outcome {
    let report = suite(Suite::Internal, 3)?;
    require_checks(
        &report,
        &[
            "internal.associative.le",
            "internal.associative.lt",
            "internal.adjunction.le",
            "internal.adjunction.lt",
            "internal.upsilon_lt_to_le",
            "internal.pictures_from_semi_pictures",
        ],
    )?;
    Ok(summary(&report))
}

fn criterion_7() -> Outcome {
    let report = suite(Suite::Words, 4)?;
    require_checks(
        &report,
        &[
            "words.compatible_count",
            "words.closed_form.le",
            "words.closed_form.lt",
            "words.zeta_multiplicative",
            "words.zeta_prime_multiplicative",
        ],
    )?;
    for n in 1..=4 {
        let words = enumerate_packed_words(n, None, false)
            .map_err(|e| e.to_string())?
            .len();
        let totals = brute_preorders(n).iter().filter(|r| total(r)).count();
        check(
            words == totals,
            format!("n={n}: {words} words, {totals} total preorders"),
        )?;
    }
    Ok(format!(
        "{}; |E_n| matches brute-force total preorders",
        summary(&report)
    ))
}

fn criterion_8() -> Outcome {
    let report = suite(Suite::Tableaux, 6)?;
    let mut cases = 0;
    for n in 1..=6 {
        for rows in partitions(n) {
            let lambda = YoungDiagram::new(rows.clone()).map_err(|e| e.to_string())?;
            let source = q_lambda(&lambda, None).map_err(|e| e.to_string())?;
            for le2 in [
                Preorder::chain(n),
                Preorder::indiscrete(n),
                Preorder::from_ranks(&(0..n).map(|i| i / 2).collect::<Vec<_>>()),
            ] {
                let q =
                    DoubleQuasiPoset::new(Preorder::discrete(n), le2).map_err(|e| e.to_string())?;
                let pictures = count_maps(&source, &q, MapKind::Picture);
                let semi = count_maps(&source, &q, MapKind::SemiStandard);
                let strict = bijective_fillings(&rows, &le2, true);
                let weak = bijective_fillings(&rows, &le2, false);
                check(
                    pictures == strict,
                    format!("{rows:?} -> {q}: {pictures} pictures, {strict} strict fillings"),
                )?;
                check(
                    semi == weak,
                    format!("{rows:?} -> {q}: {semi} semi-standard, {weak} weak fillings"),
                )?;
                cases += 1;
            }
            for content in compositions(n) {
                let target = q_of_composition(&content).map_err(|e| e.to_string())?;
                let got = patterns(&p_lambda(&lambda), &target)
                    .map_err(|e| e.to_string())?
                    .len() as u64;
                let oracle = weak_content_fillings(&rows, &content);
                check(
                    got == oracle,
                    format!("{rows:?} with {content:?}: {got} patterns, {oracle} fillings"),
                )?;
                cases += 1;
            }
        }
        for content in compositions(n) {
            let q = q_of_composition(&content).map_err(|e| e.to_string())?;
            let aut = automorphisms(&q).map_err(|e| e.to_string())?.len() as u64;
            let expected: u64 = content.iter().map(|&c| factorial(c)).product();
            check(aut == expected, format!("|Aut(Q({content:?}))| = {aut}"))?;
            if n <= 5 {
                let target = q_of_composition(&vec![1; n]).map_err(|e| e.to_string())?;
                let got = patterns(&q, &target).map_err(|e| e.to_string())?.len() as u64;
                let oracle = surjections_with_fibers(&content);
                check(
                    got == oracle,
                    format!("{content:?}: {got} patterns, {oracle} surjections"),
                )?;
            }
            cases += 1;
        }
    }
    Ok(format!("{}; {cases} oracle comparisons", summary(&report)))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("isoclass counts", criterion_1),
        ("blow-up examples and covering diagram", criterion_2),
        ("Hopf suite", criterion_3),
        ("pairing suite", criterion_4),
        ("non-degeneracy", criterion_5),
        ("internal products", criterion_6),
        ("words", criterion_7),
        ("tableaux and patterns", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
