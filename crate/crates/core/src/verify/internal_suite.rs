use crate::algebra::{upsilon_dqp, Variant};
use crate::dqp::Family;
use crate::error::Result;
use crate::internal::InternalKind;
use crate::par::Execution;
use crate::pictures::{enumerate_maps, MapKind};

use super::tables::{
    pair_sparse_left, pair_sparse_right, pairing_matrix, Accumulator, Basis, ProductTable, Sparse,
};
use super::{ensure, CheckResult, Outcome};

/// Everything the sweeps need for one degree.
struct Degree {
    basis: Basis,
    le: ProductTable,
    lt: ProductTable,
    standard: Vec<Vec<u64>>,
    strict: Vec<Vec<u64>>,
    upsilon: Vec<Sparse>,
    special: Vec<bool>,
}

impl Degree {
    fn new(n: usize, exec: Execution) -> Result<Self> {
        let basis = Basis::isoclasses(n, Family::Dqp, exec)?;
        let upsilon = exec.map_range(basis.len(), |i| {
            basis.coordinates(&upsilon_dqp(basis.rep(i)))
        });
        Ok(Degree {
            le: ProductTable::internal(&basis, InternalKind::Le, exec),
            lt: ProductTable::internal(&basis, InternalKind::Lt, exec),
            standard: pairing_matrix(&basis, Variant::Standard, exec),
            strict: pairing_matrix(&basis, Variant::Strict, exec),
            special: (0..basis.len())
                .map(|i| basis.rep(i).is_special())
                .collect(),
            upsilon,
            basis,
        })
    }

    fn table(&self, kind: InternalKind) -> &ProductTable {
        match kind {
            InternalKind::Le => &self.le,
            InternalKind::Lt => &self.lt,
        }
    }

    /// The pairing adjoint to `kind`.
    fn matrix(&self, kind: InternalKind) -> &[Vec<u64>] {
        match kind {
            InternalKind::Le => &self.standard,
            InternalKind::Lt => &self.strict,
        }
    }
}

/// `(degree, i, j)` for every ordered pair of equal degree.
fn pair_indices(degrees: &[Degree]) -> Vec<(usize, usize, usize)> {
    degrees
        .iter()
        .enumerate()
        .flat_map(|(n, d)| {
            let dim = d.basis.len();
            (0..dim * dim).map(move |ij| (n, ij / dim, ij % dim))
        })
        .collect()
}

/// Runs `f` once per ordered pair of equal degree; `f` covers the third
/// index itself, so the reported case count is the number of triples.
fn over_pairs<F>(
    id: &str,
    statement: &str,
    degrees: &[Degree],
    exec: Execution,
    f: F,
) -> CheckResult
where
    F: Fn(&Degree, usize, usize) -> Outcome + Sync + Send,
{
    let mut check = CheckResult::over(id, statement, &pair_indices(degrees), exec, |&(n, i, j)| {
        f(&degrees[n], i, j)
    });
    check.cases = degrees.iter().map(|d| d.basis.len().pow(3) as u64).sum();
    check
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let degrees = (1..=max_n)
        .map(|n| Degree::new(n, exec))
        .collect::<Result<Vec<_>>>()?;
    let pairs = pair_indices(&degrees);
    let mut checks = Vec::new();

    for kind in InternalKind::BOTH {
        let k = kind.name();
        checks.push(over_pairs(
            &format!("internal.associative.{k}"),
            "(P · Q) · R = P · (Q · R) for all equal-size triples",
            &degrees,
            exec,
            |d, i, j| {
                let table = d.table(kind);
                let mut acc = Accumulator::new(d.basis.len());
                for l in 0..d.basis.len() {
                    table.left_apply(table.get(i, j), l, &mut acc, 1);
                    table.right_apply(i, table.get(j, l), &mut acc, -1);
                    ensure(acc.drain_is_zero(), || {
                        format!(
                            "{} / {} / {}",
                            d.basis.rep(i),
                            d.basis.rep(j),
                            d.basis.rep(l)
                        )
                    })?;
                }
                Ok(())
            },
        ));
        checks.push(over_pairs(
            &format!("internal.adjunction.{k}"),
            "⟨P · Q, R⟩ = ⟨P, Q · R⟩ for the matching pairing",
            &degrees,
            exec,
            |d, i, j| {
                let (table, m) = (d.table(kind), d.matrix(kind));
                for l in 0..d.basis.len() {
                    let lhs = pair_sparse_left(table.get(i, j), m, l);
                    let rhs = pair_sparse_right(i, m, table.get(j, l));
                    ensure(lhs == rhs, || {
                        format!(
                            "{} / {} / {}: {lhs} vs {rhs}",
                            d.basis.rep(i),
                            d.basis.rep(j),
                            d.basis.rep(l)
                        )
                    })?;
                }
                Ok(())
            },
        ));
        for family in [Family::Dp, Family::Sqp] {
            let f = family.name();
            checks.push(CheckResult::over(
                &format!("internal.stable.{f}.{k}"),
                "products of members are supported on members",
                &pairs,
                exec,
                |&(n, i, j)| {
                    let d = &degrees[n];
                    let (p, q) = (d.basis.rep(i), d.basis.rep(j));
                    if !family.contains(p) || !family.contains(q) {
                        return Ok(());
                    }
                    let inside = d
                        .table(kind)
                        .get(i, j)
                        .iter()
                        .all(|&(e, _)| family.contains(d.basis.rep(e)));
                    ensure(inside, || format!("{p} / {q}"))
                },
            ));
        }
    }

    checks.push(over_pairs(
        "internal.upsilon_lt_to_le",
        "Υ(P ◁ Q) = Υ(P) ⊴ Υ(Q) on special structures",
        &degrees,
        exec,
        |d, i, j| {
            if !d.special[i] || !d.special[j] {
                return Ok(());
            }
            let mut acc = Accumulator::new(d.basis.len());
            for &(e, c) in d.lt.get(i, j) {
                for &(f, u) in &d.upsilon[e] {
                    acc.add(f, c * u);
                }
            }
            for &(a, u) in &d.upsilon[i] {
                for &(b, v) in &d.upsilon[j] {
                    for &(f, c) in d.le.get(a, b) {
                        acc.add(f, -u * v * c);
                    }
                }
            }
            ensure(acc.drain_is_zero(), || {
                format!("{} / {}", d.basis.rep(i), d.basis.rep(j))
            })
        },
    ));

    checks.push(CheckResult::over(
        "internal.pictures_from_semi_pictures",
        "Pic(P, Q) = I(P, Q) ∩ I(Q, P)⁻¹ and Pic<(P, Q) = I<(P, Q) ∩ I<(Q, P)⁻¹",
        &pairs,
        exec,
        |&(n, i, j)| {
            let d = &degrees[n];
            let (p, q) = (d.basis.rep(i), d.basis.rep(j));
            for (full, semi) in [
                (MapKind::Picture, MapKind::Semi),
                (MapKind::Prepicture, MapKind::SemiPrepicture),
            ] {
                let back = enumerate_maps(q, p, semi);
                let mut both: Vec<_> = enumerate_maps(p, q, semi)
                    .into_iter()
                    .filter(|f| back.binary_search(&f.inverse()).is_ok())
                    .collect();
                both.sort();
                ensure(enumerate_maps(p, q, full) == both, || {
                    format!("{p} / {q} ({})", full.name())
                })?;
            }
            Ok(())
        },
    ));

    Ok(checks)
}
