use std::collections::BTreeSet;

use crate::algebra::{upsilon, Element};
use crate::canonical::{canonical_key, CanonicalKey};
use crate::error::Result;
use crate::internal::{internal_product, internal_product_dqp, InternalKind};
use crate::par::Execution;
use crate::perm::Permutation;
use crate::preorder::enumerate_preorders;
use crate::words::{
    compatible, enumerate_packed_words, group_multiply, word_internal, zeta, zeta_linear,
    zeta_prime, GroupElement, PackedWord, WordCombination,
};

use super::{ensure, lib, CheckResult, Outcome};

/// Largest length covered by the spot checks.
const SPOT_MAX: usize = 5;
/// Every `SPOT_STRIDE`-th pair is taken at the spot-check length.
const SPOT_STRIDE: usize = 97;

fn factorial(k: usize) -> usize {
    (1..=k).product()
}

fn as_element(x: &WordCombination) -> Element {
    x.map_keys(|w| canonical_key(&w.to_dqp()))
}

fn word_key(w: &PackedWord) -> CanonicalKey {
    canonical_key(&w.to_dqp())
}

/// All equal-length pairs for lengths `1..=max_n`, plus a strided sample at
/// `max_n + 1` when that stays within the spot-check range.
fn word_pairs(max_n: usize) -> Result<Vec<(PackedWord, PackedWord)>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        let words = enumerate_packed_words(n, None, false)?;
        for u in &words {
            out.extend(words.iter().map(|v| (u.clone(), v.clone())));
        }
    }
    let spot = max_n + 1;
    if spot <= SPOT_MAX {
        let words = enumerate_packed_words(spot, None, false)?;
        let m = words.len();
        out.extend(
            (0..m * m)
                .step_by(SPOT_STRIDE)
                .map(|ij| (words[ij / m].clone(), words[ij % m].clone())),
        );
    }
    Ok(out)
}

fn closed_form(u: &PackedWord, v: &PackedWord, kind: InternalKind) -> Outcome {
    let fast = as_element(&lib(word_internal(u, v, kind))?);
    let generic = internal_product_dqp(&u.to_dqp(), &v.to_dqp(), kind);
    ensure(fast == generic, || format!("{u} {} {v}", kind.name()))
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let mut words = Vec::new();
    for n in 0..=max_n {
        words.extend(enumerate_packed_words(n, None, false)?);
    }
    let spot_words = if max_n < SPOT_MAX {
        enumerate_packed_words(max_n + 1, None, false)?
    } else {
        Vec::new()
    };
    let pairs = word_pairs(max_n)?;
    let sizes: Vec<usize> = (1..=max_n).collect();
    let mut checks = Vec::new();

    let mut comp_items = words.clone();
    comp_items.extend(spot_words.iter().step_by(7).cloned());
    checks.push(CheckResult::over(
        "words.compatible_count",
        "|Comp(w)| is the product of the factorials of the letter multiplicities",
        &comp_items,
        exec,
        |w| {
            let got = compatible(w).len();
            let expected: usize = w.content().iter().map(|&c| factorial(c)).product();
            ensure(got == expected, || {
                format!("{w}: {got} instead of {expected}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "words.injective",
        "distinct packed words give non-isomorphic structures",
        &sizes,
        exec,
        |&n| {
            let list = lib(enumerate_packed_words(n, None, false))?;
            let keys: BTreeSet<CanonicalKey> = list.iter().map(word_key).collect();
            ensure(keys.len() == list.len(), || format!("n={n}"))
        },
    ));

    checks.push(CheckResult::over(
        "words.count_matches_total_preorders",
        "packed words of length n are as many as total preorders on n points",
        &sizes,
        exec,
        |&n| {
            let w = lib(enumerate_packed_words(n, None, false))?.len();
            let t = lib(enumerate_preorders(n, true))?.len();
            ensure(w == t, || format!("n={n}: {w} words, {t} total preorders"))
        },
    ));

    for kind in InternalKind::BOTH {
        checks.push(CheckResult::over(
            &format!("words.closed_form.{}", kind.name()),
            "the closed forms on words agree with the generic internal product",
            &pairs,
            exec,
            |(u, v)| closed_form(u, v, kind),
        ));
    }

    checks.push(CheckResult::over(
        "words.zeta_multiplicative",
        "ζ(P_u ◁ P_v) = ζ(P_u) ∘ ζ(P_v)",
        &pairs,
        exec,
        |(u, v)| {
            let lhs = zeta_linear(&lib(word_internal(u, v, InternalKind::Lt))?);
            let rhs = group_multiply(&zeta(u), &zeta(v));
            ensure(lhs == rhs, || format!("{u} / {v}"))
        },
    ));

    let mut perm_pairs = Vec::new();
    for n in 1..=(max_n + 1).min(SPOT_MAX) {
        let all = Permutation::all(n);
        for s in &all {
            perm_pairs.extend(all.iter().map(|t| (s.clone(), t.clone())));
        }
    }
    checks.push(CheckResult::over(
        "words.zeta_prime_multiplicative",
        "ζ′(σ ∘ τ) = ζ′(σ) ◁ ζ′(τ) and ζ(ζ′(σ)) = σ",
        &perm_pairs,
        exec,
        |(s, t)| {
            let lhs = WordCombination::basis(zeta_prime(&s.compose(t)));
            let rhs = lib(word_internal(
                &zeta_prime(s),
                &zeta_prime(t),
                InternalKind::Lt,
            ))?;
            ensure(lhs == rhs, || format!("{s} / {t}"))?;
            ensure(
                zeta(&zeta_prime(s)) == GroupElement::basis(s.clone()),
                || format!("{s}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "words.blow_ups_are_words",
        "every blow-up of P_w is P_w′ for a packed word w′",
        &words,
        exec,
        |w| {
            let p = w.to_dqp();
            ensure(
                p.blow_ups()
                    .iter()
                    .all(|q| PackedWord::from_dqp(q).is_some()),
                || format!("{w}"),
            )
        },
    ));

    let small: Vec<(PackedWord, PackedWord)> = pairs
        .iter()
        .filter(|(u, _)| u.len() <= 3)
        .cloned()
        .collect();
    checks.push(CheckResult::over(
        "words.upsilon_lt_to_le",
        "Υ(P_u ◁ P_v) = Υ(P_u) ⊴ Υ(P_v) for words of length at most 3",
        &small,
        exec,
        |(u, v)| {
            let x = Element::basis(word_key(u));
            let y = Element::basis(word_key(v));
            let lhs = upsilon(&internal_product(&x, &y, InternalKind::Lt));
            let rhs = internal_product(&upsilon(&x), &upsilon(&y), InternalKind::Le);
            ensure(lhs == rhs, || format!("{u} / {v}"))
        },
    ));

    Ok(checks)
}
