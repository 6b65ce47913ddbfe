use crate::algebra::Variant;
use crate::canonical::{canonical_key, enumerate_isoclasses_with};
use crate::dqp::Family;
use crate::error::Result;
use crate::gram::gram_with;
use crate::par::Execution;

use super::{ensure, lib, CheckResult};

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let sizes: Vec<usize> = (1..=max_n).collect();
    let mut checks = Vec::new();

    for family in [Family::Dqp, Family::Dp] {
        checks.push(CheckResult::over(
            &format!("nondegeneracy.standard_full_rank.{}", family.name()),
            "the standard Gram matrix has full rank",
            &sizes,
            exec,
            |&n| {
                let g = lib(gram_with(n, family, Variant::Standard, exec))?;
                let rank = g.rank();
                ensure(g.is_symmetric() && rank == g.dim(), || {
                    format!("n={n}: rank {rank} of {}", g.dim())
                })
            },
        ));
    }

    checks.push(CheckResult::over(
        "nondegeneracy.double_posets_among_dqp",
        "the double posets among all isoclasses are exactly the enumerated double posets",
        &sizes,
        exec,
        |&n| {
            let all = lib(enumerate_isoclasses_with(n, Family::Dqp, exec))?;
            let dp = lib(enumerate_isoclasses_with(n, Family::Dp, exec))?;
            let filtered: Vec<_> = all
                .into_iter()
                .filter(|k| k.to_dqp().is_double_poset())
                .collect();
            ensure(filtered == dp, || {
                format!("n={n}: {} vs {}", filtered.len(), dp.len())
            })
        },
    ));

    checks.push(CheckResult::over(
        "nondegeneracy.strict_rank",
        "the strict Gram matrix has rank equal to the number of double posets",
        &sizes,
        exec,
        |&n| {
            let g = lib(gram_with(n, Family::Dqp, Variant::Strict, exec))?;
            let dp = lib(enumerate_isoclasses_with(n, Family::Dp, exec))?.len();
            let rank = g.rank();
            ensure(rank == dp, || {
                format!("n={n}: rank {rank}, {dp} double posets")
            })
        },
    ));

    checks.push(CheckResult::over(
        "nondegeneracy.strict_rows_factor_through_splitting",
        "in the strict Gram matrix the rows of P and pos(P) coincide",
        &sizes,
        exec,
        |&n| {
            let g = lib(gram_with(n, Family::Dqp, Variant::Strict, exec))?;
            for (i, key) in g.basis.iter().enumerate() {
                let pos = canonical_key(&key.to_dqp().splitting());
                let j = g
                    .basis
                    .binary_search(&pos)
                    .map_err(|_| format!("{pos:?} missing"))?;
                ensure(g.entries[i] == g.entries[j], || format!("{}", key.to_dqp()))?;
            }
            Ok(())
        },
    ));

    Ok(checks)
}
