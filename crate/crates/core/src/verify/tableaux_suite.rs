use crate::canonical::automorphisms;
use crate::dqp::DoubleQuasiPoset;
use crate::error::Result;
use crate::par::Execution;
use crate::pictures::{count_maps, patterns, MapKind};
use crate::preorder::Preorder;
use crate::tableaux::{
    content_filling_count, p_lambda, preorder_pool, q_lambda, q_of_composition, tableau_oracle,
    FillingMode, YoungDiagram,
};

use super::{ensure, lib, CheckResult};

/// Random preorders added to each pool.
const POOL_EXTRA: usize = 6;
const POOL_SEED: u64 = 2024;
/// Largest size for the surjection check.
const SURJECTION_MAX: usize = 5;

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
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

fn shapes_upto(max_n: usize) -> Vec<YoungDiagram> {
    (1..=max_n).flat_map(YoungDiagram::all).collect()
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let shapes = shapes_upto(max_n);
    let mut with_targets: Vec<(YoungDiagram, DoubleQuasiPoset)> = Vec::new();
    for lambda in &shapes {
        for le2 in preorder_pool(lambda.len(), POOL_EXTRA, POOL_SEED) {
            let q = DoubleQuasiPoset::new(Preorder::discrete(lambda.len()), le2)?;
            with_targets.push((lambda.clone(), q));
        }
    }
    let with_contents: Vec<(YoungDiagram, Vec<usize>)> = shapes
        .iter()
        .flat_map(|l| {
            compositions(l.len())
                .into_iter()
                .map(move |c| (l.clone(), c))
        })
        .collect();
    let mut checks = Vec::new();

    checks.push(CheckResult::over(
        "tableaux.pictures_are_strict_fillings",
        "pictures from Q_λ to Q with discrete first preorder are the strict fillings of λ",
        &with_targets,
        exec,
        |(lambda, q)| {
            let source = lib(q_lambda(lambda, None))?;
            let got = count_maps(&source, q, MapKind::Picture);
            let oracle = lib(tableau_oracle(lambda, q, FillingMode::Strict))?;
            ensure(got == oracle, || {
                format!("{lambda} -> {q}: {got} vs {oracle}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.semistandard_are_weak_fillings",
        "semi-standard pictures from Q_λ to Q are the weak fillings of λ",
        &with_targets,
        exec,
        |(lambda, q)| {
            let source = lib(q_lambda(lambda, None))?;
            let got = count_maps(&source, q, MapKind::SemiStandard);
            let oracle = lib(tableau_oracle(lambda, q, FillingMode::Weak))?;
            ensure(got == oracle, || {
                format!("{lambda} -> {q}: {got} vs {oracle}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.kinds_agree_on_orders",
        "when the second preorder of Q is an order, pictures, prepictures and semi-standard pictures coincide in number",
        &with_targets,
        exec,
        |(lambda, q)| {
            if !q.le2().is_order() {
                return Ok(());
            }
            let source = lib(q_lambda(lambda, None))?;
            let counts = [MapKind::Picture, MapKind::Prepicture, MapKind::SemiStandard]
                .map(|k| count_maps(&source, q, k));
            ensure(counts[0] == counts[1] && counts[1] == counts[2], || {
                format!("{lambda} -> {q}: {counts:?}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.conjugation_invariant",
        "filling counts of λ and its conjugate agree",
        &with_targets,
        exec,
        |(lambda, q)| {
            let conj = lambda.conjugate();
            for mode in [FillingMode::Strict, FillingMode::Weak] {
                let a = lib(tableau_oracle(lambda, q, mode))?;
                let b = lib(tableau_oracle(&conj, q, mode))?;
                ensure(a == b, || format!("{lambda} vs {conj} -> {q}: {a} vs {b}"))?;
            }
            Ok(())
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.patterns_are_content_fillings",
        "|Pat(P_λ, Q(𝐧))| is the number of weakly increasing fillings of λ with content 𝐧",
        &with_contents,
        exec,
        |(lambda, content)| {
            let target = lib(q_of_composition(content))?;
            let got = lib(patterns(&p_lambda(lambda), &target))?.len() as u64;
            let oracle = lib(content_filling_count(lambda, content))?;
            let conj = lib(content_filling_count(&lambda.conjugate(), content))?;
            ensure(got == oracle && oracle == conj, || {
                format!("{lambda} with {content:?}: {got} vs {oracle} (conjugate {conj})")
            })
        },
    ));

    let all_compositions: Vec<Vec<usize>> = (1..=max_n).flat_map(compositions).collect();
    checks.push(CheckResult::over(
        "tableaux.patterns_are_surjections",
        "|Pat(Q(𝐧), P_[n])| = n! / (n_1! .. n_k!)",
        &all_compositions
            .iter()
            .filter(|c| c.iter().sum::<usize>() <= SURJECTION_MAX)
            .cloned()
            .collect::<Vec<_>>(),
        exec,
        |content| {
            let n: usize = content.iter().sum();
            let source = lib(q_of_composition(content))?;
            let target = lib(q_of_composition(&vec![1; n]))?;
            let got = lib(patterns(&source, &target))?.len() as u64;
            let expected = factorial(n) / content.iter().map(|&c| factorial(c)).product::<u64>();
            ensure(got == expected, || {
                format!("{content:?}: {got} vs {expected}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.composition_automorphisms",
        "|Aut(Q(𝐧))| = n_1! .. n_k!",
        &all_compositions,
        exec,
        |content| {
            let got = lib(automorphisms(&lib(q_of_composition(content))?))?.len() as u64;
            let expected: u64 = content.iter().map(|&c| factorial(c)).product();
            ensure(got == expected, || {
                format!("{content:?}: {got} vs {expected}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "tableaux.p_lambda_rigid",
        "P_λ has no automorphism but the identity",
        &shapes,
        exec,
        |lambda| {
            let aut = lib(automorphisms(&p_lambda(lambda)))?;
            ensure(aut.len() == 1, || {
                format!("{lambda}: {} automorphisms", aut.len())
            })
        },
    ));

    Ok(checks)
}
