use num_traits::ToPrimitive;

use crate::algebra::{coproduct_dqp, upsilon_dqp, Variant};
use crate::canonical::{canonical_key, is_isomorphic};
use crate::dqp::Family;
use crate::error::Result;
use crate::par::Execution;
use crate::pictures::{enumerate_maps, MapKind};
use crate::preorder::Subset;

use super::tables::{pair_sparse, pairing_matrix, Basis};
use super::{ensure, CheckResult, Outcome};

/// Bases and pairing matrices for every degree `0..=max_n`.
struct Degrees {
    bases: Vec<Basis>,
    standard: Vec<Vec<Vec<u64>>>,
    strict: Vec<Vec<Vec<u64>>>,
}

impl Degrees {
    fn new(max_n: usize, exec: Execution) -> Result<Self> {
        let bases = (0..=max_n)
            .map(|n| Basis::isoclasses(n, Family::Dqp, exec))
            .collect::<Result<Vec<_>>>()?;
        let standard = bases
            .iter()
            .map(|b| pairing_matrix(b, Variant::Standard, exec))
            .collect();
        let strict = bases
            .iter()
            .map(|b| pairing_matrix(b, Variant::Strict, exec))
            .collect();
        Ok(Degrees {
            bases,
            standard,
            strict,
        })
    }

    fn matrix(&self, variant: Variant, n: usize) -> &[Vec<u64>] {
        match variant {
            Variant::Standard => &self.standard[n],
            Variant::Strict => &self.strict[n],
        }
    }

    /// `(degree, index)` for every basis element.
    fn all(&self) -> Vec<(usize, usize)> {
        self.bases
            .iter()
            .enumerate()
            .flat_map(|(n, b)| (0..b.len()).map(move |i| (n, i)))
            .collect()
    }

    /// `(degree, i, j)` for every pair of basis elements of equal degree.
    fn square_pairs(&self) -> Vec<(usize, usize, usize)> {
        self.bases
            .iter()
            .enumerate()
            .flat_map(|(n, b)| {
                let d = b.len();
                (0..d * d).map(move |ij| (n, ij / d, ij % d))
            })
            .collect()
    }
}

/// `⟨PQ, R⟩` against `Σ ⟨P, R′⟩⟨Q, R″⟩` for `P` of degree `a`, `Q` of
/// degree `n - a` and every `R` of degree `n`.
fn hopf_pairing_at(d: &Degrees, variant: Variant, (n, r): (usize, usize)) -> Outcome {
    let target = d.bases[n].rep(r);
    let delta = coproduct_dqp(target, variant);
    for a in 0..=n {
        let (left, right) = (&d.bases[a], &d.bases[n - a]);
        for p in 0..left.len() {
            for q in 0..right.len() {
                let pq = canonical_key(&left.rep(p).product(right.rep(q)));
                let whole = d.bases[n].index_of(&pq).expect("product of degree n");
                let lhs = d.matrix(variant, n)[whole][r] as i64;
                let mut rhs = 0i64;
                for ((r1, r2), c) in delta.iter() {
                    if r1.len() != a {
                        continue;
                    }
                    let i1 = left.index_of(r1).expect("factor of degree a");
                    let i2 = right.index_of(r2).expect("factor of degree n - a");
                    let c = c.to_integer().to_i64().expect("small coefficient");
                    rhs += c
                        * d.matrix(variant, a)[p][i1] as i64
                        * d.matrix(variant, n - a)[q][i2] as i64;
                }
                ensure(lhs == rhs, || {
                    format!(
                        "P={} Q={} R={}: {lhs} vs {rhs}",
                        left.rep(p),
                        right.rep(q),
                        target
                    )
                })?;
            }
        }
    }
    Ok(())
}

pub(super) fn run(max_n: usize, exec: Execution) -> Result<Vec<CheckResult>> {
    let d = Degrees::new(max_n, exec)?;
    let all = d.all();
    let pairs = d.square_pairs();
    let mut checks = Vec::new();

    for variant in Variant::BOTH {
        let v = variant.name();
        checks.push(CheckResult::over(
            &format!("pairing.symmetric.{v}"),
            "⟨P, Q⟩ = ⟨Q, P⟩",
            &pairs,
            exec,
            |&(n, i, j)| {
                let m = d.matrix(variant, n);
                ensure(m[i][j] == m[j][i], || {
                    format!("{} / {}", d.bases[n].rep(i), d.bases[n].rep(j))
                })
            },
        ));
        checks.push(CheckResult::over(
            &format!("pairing.hopf.{v}"),
            "⟨PQ, R⟩ = ⟨P ⊗ Q, Δ(R)⟩ with the matching coproduct, all degree splits",
            &all,
            exec,
            |&at| hopf_pairing_at(&d, variant, at),
        ));
    }

    checks.push(CheckResult::over(
        "pairing.picture_images_open",
        "for f a picture (prepicture) PQ → R, f(V(Q)) is open (preopen) in R",
        &all,
        exec,
        |&(n, r)| {
            let target = d.bases[n].rep(r);
            for a in 0..=n {
                for p in d.bases[a].keys() {
                    for q in d.bases[n - a].keys() {
                        let (p, q) = (p.to_dqp(), q.to_dqp());
                        let pq = p.product(&q);
                        for variant in Variant::BOTH {
                            let opens = target.up_sets(variant.is_strict());
                            for f in enumerate_maps(&pq, target, MapKind::of_pairing(variant)) {
                                let image: Subset = (a..n).fold(0, |m, i| m | (1 << f.apply(i)));
                                ensure(opens.binary_search(&image).is_ok(), || {
                                    format!("{p} / {q} -> {target} by {f} ({})", variant.name())
                                })?;
                            }
                        }
                    }
                }
            }
            Ok(())
        },
    ));

    checks.push(CheckResult::over(
        "pairing.strict_through_splitting",
        "⟨P, Q⟩< = ⟨pos P, pos Q⟩ = ⟨pos P, pos Q⟩<",
        &pairs,
        exec,
        |&(n, i, j)| {
            let b = &d.bases[n];
            let pi = b
                .index_of(&canonical_key(&b.rep(i).splitting()))
                .expect("same degree");
            let pj = b
                .index_of(&canonical_key(&b.rep(j).splitting()))
                .expect("same degree");
            let strict = d.strict[n][i][j];
            ensure(
                strict == d.standard[n][pi][pj] && strict == d.strict[n][pi][pj],
                || format!("{} / {}", b.rep(i), b.rep(j)),
            )
        },
    ));

    checks.push(CheckResult::over(
        "pairing.prepictures_are_pictures_of_splittings",
        "Pic<(P, Q) = Pic(pos P, pos Q) as sets of bijections",
        &pairs,
        exec,
        |&(n, i, j)| {
            let (p, q) = (d.bases[n].rep(i), d.bases[n].rep(j));
            ensure(
                enumerate_maps(p, q, MapKind::Prepicture)
                    == enumerate_maps(&p.splitting(), &q.splitting(), MapKind::Picture),
                || format!("{p} / {q}"),
            )
        },
    ));

    checks.push(CheckResult::over(
        "pairing.iota_inequalities",
        "⟨P, Q⟩ ≠ 0 implies x_P ≤ y_Q and x_Q ≤ y_P, with equality in both only for Q ≅ ι(P)",
        &pairs,
        exec,
        |&(n, i, j)| {
            if d.standard[n][i][j] == 0 {
                return Ok(());
            }
            let (p, q) = (d.bases[n].rep(i), d.bases[n].rep(j));
            let ((xp, yp), (xq, yq)) = (p.pair_stats(), q.pair_stats());
            ensure(xp <= yq && xq <= yp, || format!("{p} / {q}: inequality"))?;
            let equal = xp == yq && xq == yp;
            ensure(!equal || is_isomorphic(q, &p.iota()), || {
                format!("{p} / {q}: equality case")
            })
        },
    ));

    checks.push(CheckResult::over(
        "pairing.iota_nonzero",
        "⟨P, ι(P)⟩ ≥ 1",
        &all,
        exec,
        |&(n, i)| {
            let b = &d.bases[n];
            let j = b
                .index_of(&canonical_key(&b.rep(i).iota()))
                .expect("same degree");
            ensure(d.standard[n][i][j] >= 1, || format!("{}", b.rep(i)))
        },
    ));

    let sqp_pairs: Vec<(usize, usize, usize)> = pairs
        .iter()
        .filter(|&&(n, i, j)| {
            Family::Sqp.contains(d.bases[n].rep(i)) && Family::Sqp.contains(d.bases[n].rep(j))
        })
        .copied()
        .collect();
    checks.push(CheckResult::over(
        "pairing.upsilon_isometry",
        "⟨Υ P, Υ Q⟩ = ⟨P, Q⟩< on special structures",
        &sqp_pairs,
        exec,
        |&(n, i, j)| {
            let b = &d.bases[n];
            let x = b.coordinates(&upsilon_dqp(b.rep(i)));
            let y = b.coordinates(&upsilon_dqp(b.rep(j)));
            let lhs = pair_sparse(&x, &d.standard[n], &y);
            let rhs = d.strict[n][i][j] as i64;
            ensure(lhs == rhs, || {
                format!("{} / {}: {lhs} vs {rhs}", b.rep(i), b.rep(j))
            })
        },
    ));

    Ok(checks)
}
