//! Multiple-action formulas against direct operator application on the chain.

use super::{Comparison, Plan, Sampler, Sizes, Value};
use crate::chain::OperatorFamily;
use crate::error::Result;
use crate::formulas::{
    action_terms, eval_action, eval_scalar, ActionKind, ActionRequest, ScalarForm, Twist, WeightOracle,
};
use crate::kernel::ModelParams;
use crate::scalar::Scalar;

/// Draws a chain, a twist when `kind` needs one, and `ū`, `v̄`; returns the
/// direct state `op(ū) op₁₂(v̄)|0⟩` and the materialized formula.
fn action_vs_chain(s: &mut Sampler, kind: ActionKind, sites: usize, n: usize, m: usize) -> Result<Comparison> {
    let chain = s.chain(sites)?;
    let params = if kind.is_twisted() {
        s.twist()?
    } else {
        ModelParams::untwisted(s.c().clone())
    };
    let fam = if kind.is_twisted() {
        OperatorFamily::twisted(&chain, &params)?
    } else {
        OperatorFamily::plain(&chain)
    };
    let u = s.spectral("u", n)?;
    let v = s.spectral("v", m)?;
    let (i, j) = kind.indices();
    let direct = fam.apply_product(i, j, &u, &fam.bethe_state(&v));
    let req = ActionRequest {
        kind,
        u,
        v,
        oracle: WeightOracle::fundamental(&chain)?,
        twist: Twist::from_params(&params),
        c: s.c().clone(),
    };
    Ok(Comparison::states(eval_action(&req)?.materialize(&fam), direct))
}

fn add_action_grid(plan: &mut Plan, id: &'static str, kind: ActionKind, min_n: usize) {
    let sz = plan.sizes;
    for sites in 1..=sz.sites {
        for n in min_n..=sz.n {
            for m in 0..=sz.m {
                if n + m > sz.total {
                    continue;
                }
                plan.add(id, "", Sizes::chain(sites, n, m), move |s| {
                    action_vs_chain(s, kind, sites, n, m)
                });
            }
        }
    }
}

pub(super) fn build_untwisted(plan: &mut Plan) {
    add_action_grid(plan, "diagonal-action-11", ActionKind::T11, 1);
    add_action_grid(plan, "diagonal-action-22", ActionKind::T22, 1);
    add_action_grid(plan, "lowering-action", ActionKind::T21, 1);

    let sz = plan.sizes;
    let sites = sz.sites.max(1);
    for n in 0..=sz.n.min(sz.m) {
        if 2 * n > sz.total {
            continue;
        }
        for (id, form) in [
            ("scalar-product-sum", ScalarForm::SCe),
            ("scalar-product-independent-sum", ScalarForm::SCbe),
        ] {
            plan.add(id, "", Sizes::chain(sites, n, n), move |s| {
                let chain = s.chain(sites)?;
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", n)?;
                let direct = OperatorFamily::plain(&chain).direct_scalar(&u, &v);
                let oracle = WeightOracle::fundamental(&chain)?;
                let got = eval_scalar(form, &u, &v, &oracle, &Twist::untwisted(), s.c(), 1)?;
                Ok(Comparison::scalars(got, direct))
            });
        }
        plan.add(
            "scalar-product-forms-agree",
            "weights=hashed",
            Sizes::nm(n, n),
            move |s| {
                let oracle = WeightOracle::hashed(s.seed("weights"));
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", n)?;
                let tw = Twist::untwisted();
                Ok(Comparison::scalars(
                    eval_scalar(ScalarForm::SCe, &u, &v, &oracle, &tw, s.c(), 1)?,
                    eval_scalar(ScalarForm::SCbe, &u, &v, &oracle, &tw, s.c(), 1)?,
                ))
            },
        );
    }
}

pub(super) fn build_twisted(plan: &mut Plan) {
    let sz = plan.sizes;
    for sites in 1..=sz.sites {
        for (id, i, j) in [
            ("single-action-11", 1, 1),
            ("single-action-22", 2, 2),
            ("single-action-21", 2, 1),
        ] {
            plan.add(id, "", Sizes::chain(sites, 1, 0), move |s| {
                let chain = s.chain(sites)?;
                let p = s.twist()?;
                let fam = OperatorFamily::twisted(&chain, &p)?;
                let u = s.spectral("u", 1)?.remove(0);
                let (l1, l2) = chain.vacuum_weights(&u);
                let (b1, b2) = (p.beta1(), p.beta2());
                let (vac_coeff, created_coeff) = match (i, j) {
                    (1, 1) => (l1, b2),
                    (2, 2) => (l2, b1),
                    _ => (&b1 * &l1 + &b2 * &l2, &b1 * &b2),
                };
                let vac = chain.vacuum();
                let created = fam.bethe_state(std::slice::from_ref(&u));
                let want = vac
                    .iter()
                    .zip(&created)
                    .map(|(a, b)| a * &vac_coeff + b * &created_coeff)
                    .collect();
                Ok(Comparison::states(fam.entry(i, j, &u).apply(&vac), want))
            });
        }
    }

    add_action_grid(plan, "twisted-diagonal-action-11", ActionKind::Nu11, 1);
    add_action_grid(plan, "twisted-diagonal-action-22", ActionKind::Nu22, 1);
    add_action_grid(plan, "twisted-lowering-action", ActionKind::Nu21, 1);

    // ν₁₂(ū)ν₁₂(v̄)|0⟩ needs n + m ≥ N; the listed points plus the grid within caps
    let mut points = vec![(2, 1, 2), (2, 2, 2), (3, 1, 2), (3, 2, 2)];
    for sites in 1..=sz.sites {
        for n in 1..=sz.n {
            for m in 0..=sz.m {
                if n + m >= sites && n + m <= sz.total && !points.contains(&(sites, n, m)) {
                    points.push((sites, n, m));
                }
            }
        }
    }
    for (sites, n, m) in points {
        plan.add("twisted-raising-product", "", Sizes::chain(sites, n, m), move |s| {
            action_vs_chain(s, ActionKind::Nu12, sites, n, m)
        });
    }

    // every partition term with a part larger than n vanishes identically
    for kind in [ActionKind::Nu11, ActionKind::Nu22, ActionKind::Nu21] {
        for n in 1..=sz.n {
            for m in 0..=sz.m {
                if n + m > sz.total {
                    continue;
                }
                plan.add("restricted-terms-vanish", kind.to_string(), Sizes::nm(n, m), move |s| {
                    let p = s.twist()?;
                    let req = ActionRequest {
                        kind,
                        u: s.spectral("u", n)?,
                        v: s.spectral("v", m)?,
                        oracle: WeightOracle::hashed(s.seed("weights")),
                        twist: Twist::from_params(&p),
                        c: s.c().clone(),
                    };
                    let mut violations = 0i64;
                    for (split, _, val) in action_terms(&req)? {
                        let over = match kind {
                            ActionKind::Nu21 => split.part_len(0) > n || split.part_len(1) > n,
                            _ => split.part_len(0) > n,
                        };
                        if over && !val.is_zero() {
                            violations += 1;
                        }
                    }
                    // coefficient level: survivors too small to leave every part ≤ n
                    let total = n + m;
                    let reach = if kind == ActionKind::Nu21 { 2 * n } else { n };
                    for (key, val) in eval_action(&req)?.coefficients.iter() {
                        if total - (key.count_ones() as usize) > reach && !val.is_zero() {
                            violations += 1;
                        }
                    }
                    Ok(Comparison::new(
                        Value::Scalar(Scalar::int(violations)),
                        Value::Scalar(Scalar::zero()),
                    ))
                });
            }
        }
    }
}
