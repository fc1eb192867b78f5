//! Twisted scalar products and the vacuum average against the chain, plus the
//! one-off `scalar` command.

use serde::Serialize;

use super::{Comparison, Plan, Record, Sampler, Sizes, Status};
use crate::chain::{dot, OperatorFamily};
use crate::error::{Error, Result};
use crate::formulas::{eval_scalar, eval_vacuum_average, ScalarForm, Twist, WeightOracle};
use crate::kernel::ModelParams;
use crate::scalar::Scalar;

pub(super) fn build(plan: &mut Plan) {
    let sz = plan.sizes;
    let grid: Vec<(usize, usize)> = (0..=sz.n)
        .flat_map(|n| (0..=sz.m).map(move |m| (n, m)))
        .filter(|(n, m)| n + m <= sz.total)
        .collect();

    for (id, form) in [
        ("twisted-scalar-product", ScalarForm::SPfin),
        ("twisted-scalar-product-ik", ScalarForm::SPfinIK),
    ] {
        for sites in 1..=sz.sites {
            for &(n, m) in &grid {
                plan.add(id, "", Sizes::chain(sites, n, m), move |s| {
                    let chain = s.chain(sites)?;
                    let p = s.twist()?;
                    let u = s.spectral("u", n)?;
                    let v = s.spectral("v", m)?;
                    let direct = OperatorFamily::twisted(&chain, &p)?.direct_scalar(&u, &v);
                    let oracle = WeightOracle::fundamental(&chain)?;
                    let got = eval_scalar(form, &u, &v, &oracle, &Twist::from_params(&p), s.c(), 1)?;
                    Ok(Comparison::scalars(got, direct))
                });
            }
        }
    }

    for &(n, m) in &grid {
        plan.add("twisted-forms-agree", "weights=hashed", Sizes::nm(n, m), move |s| {
            let p = s.twist()?;
            let oracle = WeightOracle::hashed(s.seed("weights"));
            let u = s.spectral("u", n)?;
            let v = s.spectral("v", m)?;
            let tw = Twist::from_params(&p);
            Ok(Comparison::scalars(
                eval_scalar(ScalarForm::SPfin, &u, &v, &oracle, &tw, s.c(), 1)?,
                eval_scalar(ScalarForm::SPfinIK, &u, &v, &oracle, &tw, s.c(), 1)?,
            ))
        });
    }

    for n in 0..=sz.n.min(sz.m) {
        if 2 * n > sz.total {
            continue;
        }
        plan.add(
            "untwisted-reduction",
            "weights=hashed,mu=1",
            Sizes::nm(n, n),
            move |s| {
                let tw = Twist {
                    beta1: s.deformation("beta1"),
                    beta2: s.deformation("beta2"),
                    mu: Scalar::one(),
                };
                let oracle = WeightOracle::hashed(s.seed("weights"));
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", n)?;
                Ok(Comparison::scalars(
                    eval_scalar(ScalarForm::SPfin, &u, &v, &oracle, &tw, s.c(), 1)?,
                    eval_scalar(ScalarForm::SCe, &u, &v, &oracle, &tw, s.c(), 1)?,
                ))
            },
        );
    }

    let sites = sz.sites.max(1);
    for p_len in 0..=sz.m {
        plan.add("vacuum-average", "", Sizes::chain(sites, 0, p_len), move |s| {
            let chain = s.chain(sites)?;
            let p = s.twist()?;
            let w = s.spectral("w", p_len)?;
            let fam = OperatorFamily::twisted(&chain, &p)?;
            let direct = dot(&chain.vacuum(), &fam.bethe_state(&w));
            let oracle = WeightOracle::fundamental(&chain)?;
            let got = eval_vacuum_average(&w, &oracle, &Twist::from_params(&p), s.c())?;
            Ok(Comparison::scalars(got, direct))
        });
    }
}

/// Inputs of the `scalar` command. Twist entries left unset are sampled when
/// none is given (twisted forms only); otherwise they default to `ρ = 0`,
/// `κ = 1`.
#[derive(Debug, Clone)]
pub struct ScalarArgs {
    pub n: usize,
    pub m: usize,
    pub sites: usize,
    pub form: ScalarForm,
    pub rho1: Option<Scalar>,
    pub rho2: Option<Scalar>,
    pub kappa_plus: Option<Scalar>,
    pub kappa_minus: Option<Scalar>,
    pub seed: u64,
    pub c: Scalar,
    pub bound: i64,
}

/// Largest `n + m` the `scalar` command accepts.
pub const SCALAR_MAX_TOTAL: usize = 12;

#[derive(Debug, Clone, Serialize)]
pub struct ScalarOutcome {
    pub formula: Scalar,
    pub oracle: Scalar,
    pub passed: bool,
    pub record: Record,
}

impl ScalarOutcome {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("outcome serializes");
        s.push('\n');
        s
    }
}

pub fn cmd_scalar(args: &ScalarArgs) -> Result<ScalarOutcome> {
    if args.n + args.m > SCALAR_MAX_TOTAL {
        return Err(Error::Config(format!("n + m is capped at {SCALAR_MAX_TOTAL}")));
    }
    if args.c.is_zero() {
        return Err(Error::Config("c must be nonzero".into()));
    }
    let mut s = Sampler::new(args.seed, args.c.clone(), args.bound.max(2));
    let chain = s.chain(args.sites)?;
    let given = [&args.rho1, &args.rho2, &args.kappa_plus, &args.kappa_minus];
    let params = if given.iter().all(|x| x.is_none()) {
        if args.form.is_twisted() {
            s.twist()?
        } else {
            ModelParams::untwisted(args.c.clone())
        }
    } else {
        let or = |x: &Option<Scalar>, d: Scalar| x.clone().unwrap_or(d);
        ModelParams::new(
            args.c.clone(),
            or(&args.rho1, Scalar::zero()),
            or(&args.rho2, Scalar::zero()),
            or(&args.kappa_plus, Scalar::one()),
            or(&args.kappa_minus, Scalar::one()),
        )?
    };
    let u = s.spectral("u", args.n)?;
    let v = s.spectral("v", args.m)?;
    let oracle = WeightOracle::fundamental(&chain)?;
    let tw = Twist::from_params(&params);
    let formula = eval_scalar(args.form, &u, &v, &oracle, &tw, &args.c, 1)?;
    let fam = if args.form.is_twisted() {
        OperatorFamily::twisted(&chain, &params)?
    } else {
        OperatorFamily::plain(&chain)
    };
    let direct = fam.direct_scalar(&u, &v);
    let passed = formula == direct;
    let record = Record {
        suite: "scalar".into(),
        identity: "scalar-product-vs-chain".into(),
        trial: 0,
        variant: format!("form={}", args.form),
        sizes: Sizes::chain(args.sites, args.n, args.m),
        seed: args.seed,
        params: s.digest(),
        status: if passed { Status::Pass } else { Status::Fail },
        lhs: formula.to_string(),
        rhs: direct.to_string(),
        detail: None,
        elapsed_ms: None,
    };
    Ok(ScalarOutcome {
        formula,
        oracle: direct,
        passed,
        record,
    })
}
