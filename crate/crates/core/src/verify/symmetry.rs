//! The Yangian automorphism that swaps the diagonal entries, at formula level.

use super::{Comparison, Plan, Sampler, Sizes, Value};
use crate::error::Result;
use crate::formulas::{eval_action, phi_transform, ActionKind, ActionRequest, Twist, WeightOracle};

fn request(s: &mut Sampler, kind: ActionKind, n: usize, m: usize) -> Result<ActionRequest> {
    let twist = if kind.is_twisted() {
        Twist::from_params(&s.twist()?)
    } else {
        Twist::untwisted()
    };
    Ok(ActionRequest {
        kind,
        u: s.spectral("u", n)?,
        v: s.spectral("v", m)?,
        oracle: WeightOracle::hashed(s.seed("weights")),
        twist,
        c: s.c().clone(),
    })
}

pub(super) fn build(plan: &mut Plan) {
    let sz = plan.sizes;
    let grid: Vec<(usize, usize)> = (1..=sz.n)
        .flat_map(|n| (0..=sz.m).map(move |m| (n, m)))
        .filter(|(n, m)| n + m <= sz.total)
        .collect();

    for (id, kind) in [
        ("twisted-diagonal-22-from-11", ActionKind::Nu22),
        ("diagonal-22-from-11", ActionKind::T22),
        ("twisted-lowering-self-image", ActionKind::Nu21),
        ("lowering-self-image", ActionKind::T21),
    ] {
        for &(n, m) in &grid {
            plan.add(id, "weights=hashed", Sizes::nm(n, m), move |s| {
                let req = request(s, kind, n, m)?;
                Ok(Comparison::new(
                    Value::Coefficients(eval_action(&req)?.coefficients),
                    Value::Coefficients(eval_action(&phi_transform(&req))?.coefficients),
                ))
            });
        }
    }

    for kind in ActionKind::ALL.into_iter().filter(|k| *k != ActionKind::Nu12) {
        for &(n, m) in &grid {
            plan.add("involution", kind.to_string(), Sizes::nm(n, m), move |s| {
                let req = request(s, kind, n, m)?;
                let twice = phi_transform(&phi_transform(&req));
                Ok(Comparison::new(
                    Value::Coefficients(eval_action(&req)?.coefficients),
                    Value::Coefficients(eval_action(&twice)?.coefficients),
                ))
            });
        }
    }
}
