//! Partition-sum identities used inside the proofs of the action formulas.

use super::{Comparison, Plan, Sizes, Value};
use crate::formulas::{alternating_sum, binomial_sums, pole_removal_sum, pole_removal_sum_at, single_removal_sum};
use crate::scalar::Scalar;

fn binomial(p: usize, k: usize) -> Scalar {
    let mut acc = Scalar::one();
    for i in 0..k {
        acc = acc * Scalar::int((p - i) as i64) / Scalar::int((i + 1) as i64);
    }
    acc
}

pub(super) fn build(plan: &mut Plan) {
    let pmax = plan.sizes.n;
    let c = plan.c.clone();
    for p in 1..=pmax {
        let c1 = c.clone();
        plan.add("single-removal-sum", "", Sizes::nm(p, 0), move |s| {
            let w = s.spectral("w", p)?;
            let at = s.index("u", p);
            Ok(Comparison::scalars(single_removal_sum(&w, at, &c1)?, Scalar::one()))
        });
        let c2 = c.clone();
        plan.add("pole-removal-sum", "", Sizes::nm(p, 0), move |s| {
            let w = s.spectral("w", p)?;
            let at = s.index("u", p);
            Ok(Comparison::scalars(pole_removal_sum(&w, at, &c2)?, Scalar::one()))
        });
        let c3 = c.clone();
        plan.add("pole-removal-sum-generic-point", "", Sizes::nm(p, 0), move |s| {
            let w = s.spectral("w", p)?;
            let x = s.spectral("x", 1)?.remove(0);
            Ok(Comparison::scalars(pole_removal_sum_at(&w, &x, &c3)?, Scalar::one()))
        });
        let c4 = c.clone();
        plan.add("alternating-sum", "", Sizes::nm(p, 0), move |s| {
            let x = s.spectral("x", p)?;
            Ok(Comparison::scalars(alternating_sum(&x, &c4)?, Scalar::zero()))
        });
    }
    for p in 0..=pmax {
        for k in 0..=p {
            let c = c.clone();
            plan.add("binomial-sum", format!("k={k}"), Sizes::nm(p, 0), move |s| {
                let x = s.spectral("x", p)?;
                let (a, b) = binomial_sums(&x, k, &c)?;
                Ok(Comparison::new(
                    Value::List(vec![a, b]),
                    Value::List(vec![binomial(p, k); 2]),
                ))
            });
        }
    }
}
