use crate::algebra::{
    antipode_convolutions, coproduct, coproduct_dqp, coproduct_left, coproduct_right, counit_left,
    counit_right, multiply, splitting_linear, tensor_map, tensor_multiply, unit_counit, upsilon,
    upsilon_dqp, Element, Variant,
};
use crate::canonical::{canonical_key, CanonicalKey};
use crate::dqp::{DoubleQuasiPoset, Family};
use crate::error::Result;
use crate::par::Execution;

use super::tables::keys_upto;
use super::{ensure, CheckResult};

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let keys = keys_upto(max_n, Family::Dqp, exec)?;
    let pairs: Vec<(CanonicalKey, CanonicalKey)> = keys
        .iter()
        .flat_map(|a| keys.iter().map(move |b| (*a, *b)))
        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && a.len() + b.len() <= max_n + 1)
        .collect();
    let mut checks = Vec::new();

    for variant in Variant::BOTH {
        let v = variant.name();
        checks.push(CheckResult::over(
            &format!("hopf.coassociative.{v}"),
            "(Δ ⊗ id) ∘ Δ = (id ⊗ Δ) ∘ Δ",
            &keys,
            exec,
            |k| {
                let delta = coproduct_dqp(&k.to_dqp(), variant);
                ensure(
                    coproduct_left(&delta, variant) == coproduct_right(&delta, variant),
                    || format!("{k:?}"),
                )
            },
        ));
        checks.push(CheckResult::over(
            &format!("hopf.counit.{v}"),
            "(ε ⊗ id) ∘ Δ = id = (id ⊗ ε) ∘ Δ",
            &keys,
            exec,
            |k| {
                let delta = coproduct_dqp(&k.to_dqp(), variant);
                let x = Element::basis(*k);
                ensure(
                    counit_left(&delta) == x && counit_right(&delta) == x,
                    || format!("{k:?}"),
                )
            },
        ));
        checks.push(CheckResult::over(
            &format!("hopf.multiplicative.{v}"),
            "Δ(ab) = Δ(a) Δ(b) for total size up to max_n + 1",
            &pairs,
            exec,
            |(a, b)| {
                let (x, y) = (Element::basis(*a), Element::basis(*b));
                let lhs = coproduct(&multiply(&x, &y), variant);
                let rhs = tensor_multiply(&coproduct(&x, variant), &coproduct(&y, variant));
                ensure(lhs == rhs, || format!("{a:?} / {b:?}"))
            },
        ));
        checks.push(CheckResult::over(
            &format!("hopf.antipode.{v}"),
            "m ∘ (S ⊗ id) ∘ Δ = u ∘ ε = m ∘ (id ⊗ S) ∘ Δ",
            &keys,
            exec,
            |k| {
                let x = Element::basis(*k);
                let (left, right) = antipode_convolutions(&x, variant);
                let target = unit_counit(&x);
                ensure(left == target && right == target, || format!("{k:?}"))
            },
        ));
        for family in [Family::Sqp, Family::Dp, Family::Tqp] {
            let f = family.name();
            let members: Vec<CanonicalKey> = keys
                .iter()
                .filter(|k| family.contains(&k.to_dqp()))
                .copied()
                .collect();
            checks.push(CheckResult::over(
                &format!("hopf.subfamily.{f}.{v}"),
                "coproducts of members have both tensor factors in the family",
                &members,
                exec,
                |k| {
                    let delta = coproduct_dqp(&k.to_dqp(), variant);
                    let inside = delta
                        .keys()
                        .all(|(a, b)| family.contains(&a.to_dqp()) && family.contains(&b.to_dqp()));
                    ensure(inside, || format!("{k:?}"))
                },
            ));
        }
    }

    for family in [Family::Sqp, Family::Dp, Family::Tqp] {
        let f = family.name();
        let members: Vec<(CanonicalKey, CanonicalKey)> = pairs
            .iter()
            .filter(|(a, b)| family.contains(&a.to_dqp()) && family.contains(&b.to_dqp()))
            .copied()
            .collect();
        checks.push(CheckResult::over(
            &format!("hopf.subalgebra.{f}"),
            "products of members are members",
            &members,
            exec,
            |(a, b)| {
                let product = a.to_dqp().product(&b.to_dqp());
                ensure(family.contains(&product), || format!("{a:?} / {b:?}"))
            },
        ));
    }

    let double_posets: Vec<CanonicalKey> = keys
        .iter()
        .filter(|k| k.to_dqp().is_double_poset())
        .copied()
        .collect();
    checks.push(CheckResult::over(
        "hopf.coproducts_agree_on_double_posets",
        "Δ = Δ< on double posets",
        &double_posets,
        exec,
        |k| {
            let p = k.to_dqp();
            ensure(
                coproduct_dqp(&p, Variant::Standard) == coproduct_dqp(&p, Variant::Strict),
                || format!("{k:?}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "hopf.upsilon_intertwines",
        "Δ ∘ Υ = (Υ ⊗ Υ) ∘ Δ<",
        &keys,
        exec,
        |k| {
            let p = k.to_dqp();
            let lhs = coproduct(&upsilon_dqp(&p), Variant::Standard);
            let rhs = tensor_map(
                &coproduct_dqp(&p, Variant::Strict),
                |a| upsilon_dqp(&a.to_dqp()),
                |b| upsilon_dqp(&b.to_dqp()),
            );
            ensure(lhs == rhs, || format!("{k:?}"))
        },
    ));

    checks.push(CheckResult::over(
        "hopf.upsilon_multiplicative",
        "Υ(ab) = Υ(a) Υ(b)",
        &pairs,
        exec,
        |(a, b)| {
            let (x, y) = (Element::basis(*a), Element::basis(*b));
            ensure(
                upsilon(&multiply(&x, &y)) == multiply(&upsilon(&x), &upsilon(&y)),
                || format!("{a:?} / {b:?}"),
            )
        },
    ));

    // Blowing up strictly lowers the number of ≤1-related pairs, so ordering
    // each degree by decreasing x_P is a linear extension of the blow-up
    // order in which Υ is unitriangular.
    checks.push(CheckResult::over(
        "hopf.upsilon_unitriangular",
        "Υ(P) = P + terms Q strictly above P in the blow-up order with x_Q < x_P",
        &keys,
        exec,
        |k| {
            let p = k.to_dqp();
            let image = upsilon_dqp(&p);
            ensure(
                image.coefficient(k) == num_rational::BigRational::from_integer(1.into()),
                || format!("{k:?}: diagonal coefficient {}", image.coefficient(k)),
            )?;
            for (q, _) in image.iter().filter(|(q, _)| *q != k) {
                let qd = q.to_dqp();
                ensure(
                    qd.le1().pair_count() < p.le1().pair_count() && p.is_blowup_le(&qd),
                    || format!("{k:?} -> {q:?}"),
                )?;
            }
            Ok(())
        },
    ));

    checks.push(CheckResult::over(
        "hopf.splitting_projection",
        "pos is idempotent with image in the double posets",
        &keys,
        exec,
        |k| {
            let x = Element::basis(*k);
            let once = splitting_linear(&x);
            let in_dp = once.keys().all(|q| q.to_dqp().is_double_poset());
            ensure(splitting_linear(&once) == once && in_dp, || {
                format!("{k:?}")
            })
        },
    ));

    checks.push(CheckResult::over(
        "hopf.splitting_algebra_map",
        "pos(ab) = pos(a) pos(b)",
        &pairs,
        exec,
        |(a, b)| {
            let (x, y) = (Element::basis(*a), Element::basis(*b));
            ensure(
                splitting_linear(&multiply(&x, &y))
                    == multiply(&splitting_linear(&x), &splitting_linear(&y)),
                || format!("{a:?} / {b:?}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "hopf.splitting_coalgebra_map",
        "Δ(pos(P)) = (pos ⊗ pos)(Δ<(P))",
        &keys,
        exec,
        |k| {
            let p = k.to_dqp();
            let lhs = coproduct_dqp(&p.splitting(), Variant::Standard);
            let pos = |a: &CanonicalKey| Element::basis(canonical_key(&a.to_dqp().splitting()));
            let rhs = tensor_map(&coproduct_dqp(&p, Variant::Strict), pos, pos);
            ensure(lhs == rhs, || format!("{k:?}"))
        },
    ));

    let unit_ok = {
        let empty = DoubleQuasiPoset::empty();
        let one = Element::basis(canonical_key(&empty));
        keys.iter().all(|k| {
            let x = Element::basis(*k);
            multiply(&one, &x) == x && multiply(&x, &one) == x
        })
    };
    checks.push(CheckResult::single(
        "hopf.unit",
        "the empty structure is a two-sided unit",
        keys.len() as u64,
        ensure(unit_ok, || "unit law fails".into()),
    ));

    Ok(checks)
}
