use std::collections::BTreeSet;

use crate::canonical::{automorphisms, canonical_key, enumerate_isoclasses_with, CanonicalKey};
use crate::dqp::{DoubleQuasiPoset, Family};
use crate::error::Result;
use crate::par::Execution;
use crate::perm::Permutation;
use crate::preorder::{total_preorders, Preorder};

use super::tables::keys_upto;
use super::{ensure, lib, CheckResult, Outcome};

const DQP_COUNTS: [usize; 5] = [1, 1, 10, 166, 5965];
const SQP_COUNTS: [usize; 5] = [1, 1, 7, 74, 1290];

fn fubini(k: usize) -> usize {
    total_preorders(k).len()
}

/// `B(P)` recomputed as the closure of `{P}` under elementary blow-ups.
fn elementary_closure(p: &DoubleQuasiPoset) -> BTreeSet<DoubleQuasiPoset> {
    let mut seen = BTreeSet::from([*p]);
    let mut frontier = vec![*p];
    while let Some(q) = frontier.pop() {
        for r in q.elementary_blow_ups() {
            if seen.insert(r) {
                frontier.push(r);
            }
        }
    }
    seen
}

/// Checks the covering relation of the blow-up order on `B(P)` for `P` the
/// indiscrete 3-point `≤1` with `≤2` a chain: the bottom is covered by the
/// six two-level structures, each of which is covered by exactly the two
/// chains refining it.
fn hasse_of_indiscrete_three() -> Outcome {
    let bottom = lib(DoubleQuasiPoset::new(
        Preorder::indiscrete(3),
        Preorder::chain(3),
    ))?;
    let nodes = bottom.blow_ups();
    ensure(nodes.len() == 13, || {
        format!("{} blow-ups instead of 13", nodes.len())
    })?;
    let keys: BTreeSet<CanonicalKey> = nodes.iter().map(canonical_key).collect();
    ensure(keys.len() == 13, || {
        "blow-ups are not pairwise non-isomorphic".into()
    })?;
    let m = nodes.len();
    let lt: Vec<Vec<bool>> = (0..m)
        .map(|a| {
            (0..m)
                .map(|b| a != b && nodes[a].is_blowup_le(&nodes[b]))
                .collect()
        })
        .collect();
    let covers = |a: usize, b: usize| lt[a][b] && !(0..m).any(|c| lt[a][c] && lt[c][b]);
    let levels = |p: &DoubleQuasiPoset| p.le1().equivalence_classes().len();
    let refines = |fine: &DoubleQuasiPoset, coarse: &DoubleQuasiPoset| {
        (0..3).all(|i| (0..3).all(|j| !fine.le1().le(i, j) || coarse.le1().le(i, j)))
    };
    let mut edges = 0;
    for a in 0..m {
        for b in 0..m {
            let expected = match (levels(&nodes[a]), levels(&nodes[b])) {
                (1, 2) => true,
                (2, 3) => refines(&nodes[b], &nodes[a]),
                _ => false,
            };
            let got = covers(a, b);
            ensure(got == expected, || {
                format!(
                    "covering {} -> {}: got {got}, expected {expected}",
                    nodes[a], nodes[b]
                )
            })?;
            edges += got as usize;
        }
    }
    ensure(edges == 18, || {
        format!("{edges} covering edges instead of 18")
    })
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();
    let sizes: Vec<usize> = (1..=4).collect();
    checks.push(CheckResult::over(
        "dqp.isoclass_counts",
        "isoclass counts are 1, 10, 166, 5965 (dqp) and 1, 7, 74, 1290 (sqp) for n = 1..4",
        &sizes,
        exec,
        |&n| {
            let dqp = lib(enumerate_isoclasses_with(n, Family::Dqp, exec))?.len();
            let sqp = lib(enumerate_isoclasses_with(n, Family::Sqp, exec))?.len();
            ensure(dqp == DQP_COUNTS[n] && sqp == SQP_COUNTS[n], || {
                format!("n={n}: dqp {dqp}, sqp {sqp}")
            })
        },
    ));

    let keys = keys_upto(max_n, Family::Dqp, exec)?;
    let reps: Vec<DoubleQuasiPoset> = keys.iter().map(CanonicalKey::to_dqp).collect();

    checks.push(CheckResult::over(
        "dqp.canonical_invariance",
        "canonical keys are invariant under every relabelling and automorphisms form a group",
        &reps,
        exec,
        |p| {
            let key = canonical_key(p);
            for sigma in Permutation::all(p.len()) {
                let q = p.relabel(sigma.images());
                ensure(canonical_key(&q) == key, || {
                    format!("{p} relabelled by {sigma}")
                })?;
            }
            let aut = lib(automorphisms(p))?;
            let closed = aut.iter().all(|a| {
                aut.contains(&a.inverse()) && aut.iter().all(|b| aut.contains(&a.compose(b)))
            });
            ensure(closed && aut.iter().any(Permutation::is_identity), || {
                format!("Aut of {p}")
            })
        },
    ));

    let small = keys_upto(2.min(max_n), Family::Dqp, exec)?;
    let small_reps: Vec<DoubleQuasiPoset> = small.iter().map(CanonicalKey::to_dqp).collect();
    let m = small.len();
    let triples: Vec<(usize, usize, usize)> = (0..m * m * m)
        .map(|t| (t / (m * m), t / m % m, t % m))
        .collect();
    checks.push(CheckResult::over(
        "dqp.product_associative",
        "(PQ)R = P(QR) as labelled structures, all triples of size at most 2",
        &triples,
        exec,
        |&(a, b, c)| {
            let (p, q, r) = (&small_reps[a], &small_reps[b], &small_reps[c]);
            ensure(p.product(q).product(r) == p.product(&q.product(r)), || {
                format!("{p} / {q} / {r}")
            })
        },
    ));

    let pairs: Vec<(usize, usize)> = (0..reps.len())
        .flat_map(|a| (0..reps.len()).map(move |b| (a, b)))
        .filter(|&(a, b)| reps[a].len() + reps[b].len() <= max_n + 1)
        .collect();
    checks.push(CheckResult::over(
        "dqp.product_unit_and_families",
        "the empty structure is a unit; products of special (trivial) structures are special (trivial)",
        &pairs,
        exec,
        |&(a, b)| {
            let (p, q) = (&reps[a], &reps[b]);
            let pq = p.product(q);
            let empty = DoubleQuasiPoset::empty();
            ensure(p.product(&empty) == *p && empty.product(p) == *p, || format!("unit on {p}"))?;
            ensure(!(p.is_special() && q.is_special()) || pq.is_special(), || format!("special {p} / {q}"))?;
            ensure(!(p.is_trivial() && q.is_trivial()) || pq.is_trivial(), || format!("trivial {p} / {q}"))
        },
    ));

    checks.push(CheckResult::over(
        "dqp.splitting_multiplicative",
        "pos(PQ) = pos(P) pos(Q)",
        &pairs,
        exec,
        |&(a, b)| {
            let (p, q) = (&reps[a], &reps[b]);
            ensure(
                p.product(q).splitting() == p.splitting().product(&q.splitting()),
                || format!("{p} / {q}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "dqp.preopen_is_open_of_splitting",
        "the preopen sets of P are the open sets of pos(P)",
        &reps,
        exec,
        |p| {
            ensure(p.up_sets(true) == p.splitting().up_sets(false), || {
                format!("{p}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "dqp.iota_involution",
        "iota swaps the two preorders and is an involution",
        &reps,
        exec,
        |p| {
            let i = p.iota();
            ensure(
                i.iota() == *p && i.le1() == p.le2() && i.le2() == p.le1(),
                || format!("{p}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "dqp.blow_ups",
        "blow-ups keep the second preorder, lie above P, preserve speciality, number the product of Fubini numbers of the classes, and equal the closure under elementary blow-ups",
        &reps,
        exec,
        |p| {
            let blown = p.blow_ups();
            ensure(blown.first() == Some(p), || format!("{p} is not the first blow-up of itself"))?;
            let expected: usize = p.le1().equivalence_classes().iter().map(|c| fubini(c.len())).product();
            ensure(blown.len() == expected, || format!("{p}: {} blow-ups, expected {expected}", blown.len()))?;
            let as_set: BTreeSet<DoubleQuasiPoset> = blown.iter().copied().collect();
            ensure(as_set.len() == blown.len(), || format!("{p}: repeated labelled blow-up"))?;
            ensure(as_set == elementary_closure(p), || format!("{p}: closure mismatch"))?;
            for q in &blown {
                ensure(q.le2() == p.le2(), || format!("{p} -> {q}: second preorder changed"))?;
                ensure(p.is_blowup_le(q), || format!("{p} is not below its blow-up {q}"))?;
                ensure(p.is_special() == q.is_special(), || format!("{p} -> {q}: speciality changed"))?;
            }
            Ok(())
        },
    ));

    let order_keys = keys_upto(max_n.min(3), Family::Dqp, exec)?;
    let order_reps: Vec<DoubleQuasiPoset> = order_keys.iter().map(CanonicalKey::to_dqp).collect();
    let ups: Vec<BTreeSet<CanonicalKey>> = exec.map(&order_reps, |p| {
        p.blow_ups().iter().map(canonical_key).collect()
    });
    let dim = order_reps.len();
    let le: Vec<Vec<bool>> = exec.map_range(dim, |a| {
        (0..dim)
            .map(|b| order_reps[a].is_blowup_le(&order_reps[b]))
            .collect()
    });
    checks.push(CheckResult::over_range(
        "dqp.blowup_order_characterization",
        "P <= Q iff Q is isomorphic to a blow-up of P",
        dim * dim,
        exec,
        |ab| {
            let (a, b) = (ab / dim, ab % dim);
            ensure(le[a][b] == ups[a].contains(&order_keys[b]), || {
                format!("{} vs {}", order_reps[a], order_reps[b])
            })
        },
    ));
    checks.push(CheckResult::over_range(
        "dqp.blowup_order_partial",
        "the blow-up order is reflexive, antisymmetric and transitive on isoclasses",
        dim,
        exec,
        |a| {
            ensure(le[a][a], || format!("not reflexive at {}", order_reps[a]))?;
            for b in 0..dim {
                if !le[a][b] {
                    continue;
                }
                ensure(a == b || !le[b][a], || {
                    format!("not antisymmetric: {} / {}", order_reps[a], order_reps[b])
                })?;
                for c in 0..dim {
                    ensure(!le[b][c] || le[a][c], || {
                        format!(
                            "not transitive: {} / {} / {}",
                            order_reps[a], order_reps[b], order_reps[c]
                        )
                    })?;
                }
            }
            Ok(())
        },
    ));

    checks.push(CheckResult::single(
        "dqp.blow_up_examples",
        "{1}<{2,3} with a chain as second order has 3 blow-ups; the indiscrete 3-point order has 13",
        2,
        (|| {
            let two_class = lib(DoubleQuasiPoset::new(
                lib(Preorder::closure(3, &[(0, 1), (0, 2), (1, 2), (2, 1)]))?,
                Preorder::chain(3),
            ))?;
            let got: BTreeSet<DoubleQuasiPoset> = two_class.blow_ups().into_iter().collect();
            let expected: BTreeSet<DoubleQuasiPoset> = [
                two_class,
                lib(DoubleQuasiPoset::new(Preorder::chain(3), Preorder::chain(3)))?,
                lib(DoubleQuasiPoset::new(Preorder::from_ranks(&[0, 2, 1]), Preorder::chain(3)))?,
            ]
            .into();
            ensure(got == expected, || format!("{got:?}"))?;
            let indiscrete = lib(DoubleQuasiPoset::new(Preorder::indiscrete(3), Preorder::chain(3)))?;
            let count = indiscrete.blow_ups().len();
            ensure(count == 13, || format!("{count} blow-ups"))
        })(),
    ));

    checks.push(CheckResult::single(
        "dqp.hasse_diagram",
        "the blow-up order on the 13 blow-ups of the indiscrete 3-point order has the expected 18 covering edges",
        1,
        hasse_of_indiscrete_three(),
    ));

    Ok(checks)
}
