use crate::error::Result;
use crate::par::Execution;
use crate::preorder::{bits, enumerate_preorders, full_mask, Preorder, Subset};
use crate::words::enumerate_packed_words;

use super::{ensure, lib, CheckResult};

fn brute_up_sets(p: &Preorder, strict: bool) -> Vec<Subset> {
    let n = p.len();
    (0..=full_mask(n))
        .filter(|&x| {
            bits(x).all(|i| {
                (0..n).all(|j| {
                    let related = if strict { p.lt(i, j) } else { p.le(i, j) };
                    !related || x & (1 << j) != 0
                })
            })
        })
        .collect()
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let mut all: Vec<Preorder> = Vec::new();
    for n in 0..=max_n {
        all.extend(enumerate_preorders(n, false)?);
    }
    let mut checks = Vec::new();

    checks.push(CheckResult::over(
        "preorder.closure_idempotent",
        "closing the related pairs of an enumerated preorder gives it back",
        &all,
        exec,
        |p| {
            let again = lib(Preorder::closure(p.len(), &p.pairs()))?;
            ensure(again == *p, || format!("{p}"))
        },
    ));

    checks.push(CheckResult::over(
        "preorder.up_sets_brute_force",
        "open and preopen sets agree with a filter over all subsets",
        &all,
        exec,
        |p| {
            ensure(
                p.up_sets(false) == brute_up_sets(p, false)
                    && p.up_sets(true) == brute_up_sets(p, true),
                || format!("{p}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "preorder.open_is_preopen",
        "every open set is preopen",
        &all,
        exec,
        |p| {
            let preopen = p.up_sets(true);
            ensure(
                p.up_sets(false)
                    .iter()
                    .all(|o| preopen.binary_search(o).is_ok()),
                || format!("{p}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "preorder.topology_axioms",
        "open and preopen sets contain the empty and full sets and are closed under union and intersection",
        &all,
        exec,
        |p| {
            let full = full_mask(p.len());
            let ok = [false, true].into_iter().all(|strict| {
                let sets = p.up_sets(strict);
                let has = |x: Subset| sets.binary_search(&x).is_ok();
                has(0)
                    && has(full)
                    && sets.iter().all(|&a| sets.iter().all(|&b| has(a | b) && has(a & b)))
            });
            ensure(ok, || format!("{p}"))
        },
    ));

    checks.push(CheckResult::over(
        "preorder.equivalence_classes",
        "equivalence classes partition the ground set into mutually related blocks",
        &all,
        exec,
        |p| {
            let n = p.len();
            let classes = p.equivalence_classes();
            let mut seen = vec![0usize; n];
            for c in &classes {
                for &i in c {
                    seen[i] += 1;
                }
            }
            let ok = seen.iter().all(|&s| s == 1)
                && (0..n).all(|i| {
                    (0..n).all(|j| {
                        let same = classes.iter().any(|c| c.contains(&i) && c.contains(&j));
                        same == (p.le(i, j) && p.le(j, i))
                    })
                });
            ensure(ok, || format!("{p}"))
        },
    ));

    checks.push(CheckResult::over(
        "preorder.splitting",
        "the splitting is an order with the same strict part",
        &all,
        exec,
        |p| {
            let s = p.splitting();
            let n = p.len();
            let ok = s.is_order() && (0..n).all(|i| (0..n).all(|j| s.lt(i, j) == p.lt(i, j)));
            ensure(ok, || format!("{p}"))
        },
    ));

    let sizes: Vec<usize> = (1..=max_n).collect();
    checks.push(CheckResult::over(
        "preorder.total_count_matches_packed_words",
        "total preorders on n points are as many as packed words of length n",
        &sizes,
        exec,
        |&n| {
            let totals = lib(enumerate_preorders(n, true))?.len();
            let words = lib(enumerate_packed_words(n, None, false))?.len();
            ensure(totals == words, || {
                format!("n={n}: {totals} total preorders, {words} words")
            })
        },
    ));

    checks.push(CheckResult::over(
        "preorder.enumeration_counts",
        "labelled preorder counts are 1, 4, 29, 355, 6942 for n = 1..5",
        &sizes,
        exec,
        |&n| {
            let expected = [1, 1, 4, 29, 355, 6942][n];
            let got = lib(enumerate_preorders(n, false))?.len();
            ensure(got == expected, || {
                format!("n={n}: {got} instead of {expected}")
            })
        },
    ));

    Ok(checks)
}
