//! Partition-sum evaluators for multiple actions of monodromy entries on
//! Bethe vectors and for scalar products.
//!
//! Everything here is representation agnostic: vacuum eigenvalues come from a
//! [`WeightOracle`], and the twist enters only through `β₁`, `β₂`, `μ`
//! ([`Twist`]). Actions return a [`CoefficientMap`] keyed by the surviving
//! subset of `w̄ = {ū, v̄}` (u first, then v); [`ActionResult::materialize`]
//! turns it into a state for comparison with the spin-chain oracle.

use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::chain::{Chain, OperatorFamily};
use crate::error::{Error, Result};
use crate::izergin::{conj_mod_izergin, mod_izergin, IzerginTable, Variant};
use crate::kernel::{kernel_f, kernel_g, kernel_h, shifted, ModelParams};
use crate::partition::{full_mask, indices, select, CoefficientMap, GroundSet, Split, SplitSpace};
use crate::scalar::Scalar;

pub type ScalarFn = Arc<dyn Fn(&Scalar) -> Scalar + Send + Sync>;

/// Vacuum eigenvalues `λ₁`, `λ₂` and, for finite-dimensional representations,
/// the function `F` and integer `S` that govern products of `ν₁₂`.
#[derive(Clone)]
pub struct WeightOracle {
    label: String,
    lambda1: ScalarFn,
    lambda2: ScalarFn,
    f: Option<ScalarFn>,
    s: Option<usize>,
}

impl fmt::Debug for WeightOracle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("WeightOracle")
            .field("label", &self.label)
            .field("has_f", &self.f.is_some())
            .field("s", &self.s)
            .finish()
    }
}

impl WeightOracle {
    pub fn new(label: impl Into<String>, lambda1: ScalarFn, lambda2: ScalarFn) -> Self {
        WeightOracle {
            label: label.into(),
            lambda1,
            lambda2,
            f: None,
            s: None,
        }
    }

    pub fn with_f(mut self, f: ScalarFn, s: usize) -> Self {
        self.f = Some(f);
        self.s = Some(s);
        self
    }

    /// Fundamental representation of the inhomogeneous chain:
    /// `λ₁ = ∏ h(u,θ)`, `λ₂ = ∏ (u-θ)/c`, `F = ∏ h(u,θ)/g(u,θ)`, `S = N`.
    pub fn fundamental(chain: &Chain) -> Result<Self> {
        let (c, theta) = (chain.c().clone(), chain.theta().to_vec());
        let (c1, t1) = (c.clone(), theta.clone());
        let (c2, t2) = (c.clone(), theta.clone());
        let (c3, t3) = (c.clone(), theta.clone());
        let oracle = WeightOracle::new(
            "fundamental",
            Arc::new(move |u| t1.iter().map(|t| kernel_h(u, t, &c1)).product()),
            Arc::new(move |u| t2.iter().map(|t| (u - t) / &c2).product()),
        )
        .with_f(
            // h/g = h (u-θ)/c; written out so it has no pole at u = θ
            Arc::new(move |u| t3.iter().map(|t| kernel_h(u, t, &c3) * (u - t) / &c3).product()),
            theta.len(),
        );
        // F must equal λ₁λ₂ away from the inhomogeneities
        let probe =
            theta.iter().fold(Scalar::one(), |acc, t| acc + t.clone() * t) + Scalar::ratio(1, 7).expect("nonzero");
        let g_form: Scalar = theta
            .iter()
            .map(|t| Ok(kernel_h(&probe, t, &c) / kernel_g(&probe, t, &c)?))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .product();
        if oracle.f_value(&probe)? != &oracle.lambda1(&probe) * &oracle.lambda2(&probe)
            || g_form != oracle.f_value(&probe)?
        {
            return Err(Error::Config("fundamental weights inconsistent with F".into()));
        }
        Ok(oracle)
    }

    /// Independent pseudo-random nonzero rationals for `λ₁(x)`, `λ₂(x)` at every
    /// point `x`, derived from a hash of `(seed, which, x)`.
    pub fn hashed(seed: u64) -> Self {
        fn draw(seed: u64, which: u8, x: &Scalar) -> Scalar {
            let mut h = Sha256::new();
            h.update(seed.to_le_bytes());
            h.update([which]);
            h.update(x.to_string().as_bytes());
            let d = h.finalize();
            let p = i64::from(u16::from_le_bytes([d[0], d[1]]) % 97) + 1;
            let q = i64::from(u16::from_le_bytes([d[2], d[3]]) % 23) + 1;
            let sign = if d[4] & 1 == 0 { 1 } else { -1 };
            Scalar::ratio(sign * p, q).expect("positive denominator")
        }
        WeightOracle::new(
            format!("hashed:{seed}"),
            Arc::new(move |x| draw(seed, 1, x)),
            Arc::new(move |x| draw(seed, 2, x)),
        )
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn lambda1(&self, x: &Scalar) -> Scalar {
        (self.lambda1)(x)
    }

    pub fn lambda2(&self, x: &Scalar) -> Scalar {
        (self.lambda2)(x)
    }

    pub fn s(&self) -> Option<usize> {
        self.s
    }

    pub fn f_value(&self, x: &Scalar) -> Result<Scalar> {
        let f = self
            .f
            .as_ref()
            .ok_or_else(|| Error::Capability(format!("oracle {} has no F", self.label)))?;
        Ok(f(x))
    }

    /// Image under the Yangian automorphism: `λ₁'(x) = λ₂(-x)`, `λ₂'(x) = λ₁(-x)`,
    /// `F'(x) = F(-x)`.
    pub fn phi(&self) -> WeightOracle {
        let (l1, l2) = (self.lambda1.clone(), self.lambda2.clone());
        WeightOracle {
            label: format!("phi({})", self.label),
            lambda1: Arc::new(move |x| l2(&-x)),
            lambda2: Arc::new(move |x| l1(&-x)),
            f: self.f.clone().map(|f| -> ScalarFn { Arc::new(move |x| f(&-x)) }),
            s: self.s,
        }
    }
}

/// The twist data the formulas depend on. Formula-level tests may choose the
/// three values independently; [`Twist::from_params`] gives the physical ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Twist {
    pub beta1: Scalar,
    pub beta2: Scalar,
    pub mu: Scalar,
}

impl Twist {
    pub fn from_params(p: &ModelParams) -> Self {
        Twist {
            beta1: p.beta1(),
            beta2: p.beta2(),
            mu: p.mu(),
        }
    }

    pub fn untwisted() -> Self {
        Twist {
            beta1: Scalar::zero(),
            beta2: Scalar::zero(),
            mu: Scalar::one(),
        }
    }

    pub fn swapped(&self) -> Self {
        Twist {
            beta1: self.beta2.clone(),
            beta2: self.beta1.clone(),
            mu: self.mu.clone(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ActionKind {
    T11,
    T22,
    T21,
    Nu11,
    Nu22,
    Nu21,
    Nu12,
}

impl ActionKind {
    pub const ALL: [ActionKind; 7] = [
        ActionKind::T11,
        ActionKind::T22,
        ActionKind::T21,
        ActionKind::Nu11,
        ActionKind::Nu22,
        ActionKind::Nu21,
        ActionKind::Nu12,
    ];

    /// Operator indices `(i, j)`.
    pub fn indices(self) -> (usize, usize) {
        match self {
            ActionKind::T11 | ActionKind::Nu11 => (1, 1),
            ActionKind::T22 | ActionKind::Nu22 => (2, 2),
            ActionKind::T21 | ActionKind::Nu21 => (2, 1),
            ActionKind::Nu12 => (1, 2),
        }
    }

    pub fn is_twisted(self) -> bool {
        matches!(
            self,
            ActionKind::Nu11 | ActionKind::Nu22 | ActionKind::Nu21 | ActionKind::Nu12
        )
    }

    /// Diagonal transposition swaps the two diagonal entries.
    pub fn phi(self) -> ActionKind {
        match self {
            ActionKind::T11 => ActionKind::T22,
            ActionKind::T22 => ActionKind::T11,
            ActionKind::Nu11 => ActionKind::Nu22,
            ActionKind::Nu22 => ActionKind::Nu11,
            k => k,
        }
    }
}

impl fmt::Display for ActionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ActionKind::T11 => "t11",
            ActionKind::T22 => "t22",
            ActionKind::T21 => "t21",
            ActionKind::Nu11 => "nu11",
            ActionKind::Nu22 => "nu22",
            ActionKind::Nu21 => "nu21",
            ActionKind::Nu12 => "nu12",
        };
        f.write_str(s)
    }
}

/// Everything needed to evaluate one multiple-action formula.
#[derive(Debug, Clone)]
pub struct ActionRequest {
    pub kind: ActionKind,
    pub u: Vec<Scalar>,
    pub v: Vec<Scalar>,
    pub oracle: WeightOracle,
    pub twist: Twist,
    pub c: Scalar,
}

/// Coefficients of `op(ū) op₁₂(v̄)|0⟩` over Bethe vectors `op₁₂(w̄_key)|0⟩`.
#[derive(Debug, Clone)]
pub struct ActionResult {
    pub coefficients: CoefficientMap,
    pub ground: GroundSet,
    /// Parameter values of the ground set, `ū` then `v̄`.
    pub values: Vec<Scalar>,
}

impl ActionResult {
    /// `Σ_key coeff · op₁₂(w̄_key)|0⟩` using the creation operators of `family`.
    pub fn materialize(&self, family: &OperatorFamily) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); family.chain().dim()];
        for (key, coeff) in self.coefficients.iter() {
            if coeff.is_zero() {
                continue;
            }
            let state = family.bethe_state(&select(&self.values, key));
            for (o, s) in out.iter_mut().zip(state) {
                *o += coeff * &s;
            }
        }
        out
    }

    /// Surviving-subset keys rendered as sorted origin tags.
    pub fn tagged(&self) -> Vec<(Vec<String>, Scalar)> {
        self.coefficients
            .iter()
            .map(|(k, v)| (self.ground.tags(k), v.clone()))
            .collect()
    }
}

/// Shared per-evaluation tables: the ground values, λ's at each point, and
/// pairwise `f`.
struct Ground<'a> {
    c: &'a Scalar,
    values: Vec<Scalar>,
    l1: Vec<Scalar>,
    l2: Vec<Scalar>,
    f: Vec<Vec<Result<Scalar>>>,
}

impl<'a> Ground<'a> {
    fn new(values: Vec<Scalar>, oracle: &WeightOracle, c: &'a Scalar) -> Self {
        let l1 = values.iter().map(|x| oracle.lambda1(x)).collect();
        let l2 = values.iter().map(|x| oracle.lambda2(x)).collect();
        let f = values
            .iter()
            .enumerate()
            .map(|(a, x)| {
                values
                    .iter()
                    .enumerate()
                    .map(|(b, y)| if a == b { Ok(Scalar::one()) } else { kernel_f(x, y, c) })
                    .collect()
            })
            .collect();
        Ground { c, values, l1, l2, f }
    }

    fn lam1(&self, mask: u64) -> Scalar {
        indices(mask).map(|i| &self.l1[i]).product()
    }

    fn lam2(&self, mask: u64) -> Scalar {
        indices(mask).map(|i| &self.l2[i]).product()
    }

    /// `f(x̄_a, x̄_b)` for disjoint masks.
    fn f(&self, a: u64, b: u64) -> Result<Scalar> {
        let mut factors = Vec::new();
        for i in indices(a) {
            for j in indices(b) {
                factors.push(self.f[i][j].as_ref().map_err(Clone::clone)?);
            }
        }
        Ok(factors.into_iter().product())
    }

    fn izergin(&self, z: &Scalar, u: &[Scalar], shift: &Scalar, conj: bool) -> IzerginTable {
        IzerginTable::new(z, u, &shifted(&self.values, shift), self.c, conj, Variant::Auto)
    }
}

fn concat(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

fn sign(n: usize) -> Scalar {
    if n.is_multiple_of(2) {
        Scalar::one()
    } else {
        -Scalar::one()
    }
}

/// `(-β)^e`; a negative power of a vanishing `β` is a domain error.
fn neg_pow(beta: &Scalar, e: i64) -> Result<Scalar> {
    (-beta)
        .powi(e)
        .map_err(|_| Error::Domain(format!("negative power {e} of beta = 0")))
}

/// Per-split terms of a multiple-action formula: `(split, surviving key, value)`.
pub fn action_terms(req: &ActionRequest) -> Result<Vec<(Split, u64, Scalar)>> {
    let (n, m) = (req.u.len(), req.v.len());
    let total = n + m;
    let c = &req.c;
    let g = Ground::new(concat(&req.u, &req.v), &req.oracle, c);
    let one = Scalar::one();
    let mc = -c;
    let tw = &req.twist;
    let mut out = Vec::new();
    match req.kind {
        ActionKind::T11 | ActionKind::T22 => {
            if n > total {
                return Ok(out);
            }
            let diag11 = req.kind == ActionKind::T11;
            let k = if diag11 {
                g.izergin(&one, &req.u, &mc, true)
            } else {
                g.izergin(&one, &req.u, c, false)
            };
            let sp = SplitSpace::new(total, 2, Some(&[n, m]))?;
            for s in sp.iter() {
                let (a, b) = (s.part(0), s.part(1));
                let val = if diag11 {
                    g.lam1(a) * k.eval(a)? * g.f(b, a)?
                } else {
                    g.lam2(a) * k.eval(a)? * g.f(a, b)?
                };
                out.push((s, b, sign(n) * val));
            }
        }
        ActionKind::T21 => {
            if 2 * n > total {
                return Ok(out);
            }
            let kp = g.izergin(&one, &req.u, c, false);
            let km = g.izergin(&one, &req.u, &mc, true);
            let sp = SplitSpace::new(total, 3, Some(&[n, n, total - 2 * n]))?;
            for s in sp.iter() {
                let (a, b, r) = (s.part(0), s.part(1), s.part(2));
                let val = g.lam2(a) * g.lam1(b) * kp.eval(a)? * km.eval(b)? * g.f(a, b)? * g.f(a, r)? * g.f(r, b)?;
                out.push((s, r, val));
            }
        }
        ActionKind::Nu11 | ActionKind::Nu22 => {
            let diag11 = req.kind == ActionKind::Nu11;
            let (beta, k) = if diag11 {
                (&tw.beta2, g.izergin(&one, &req.u, &mc, true))
            } else {
                (&tw.beta1, g.izergin(&one, &req.u, c, false))
            };
            let pre = beta.pow_u(n as u64);
            for s in SplitSpace::two(total).iter() {
                let (a, b) = (s.part(0), s.part(1));
                let l = a.count_ones() as i64;
                let kv = k.eval(a)?;
                let val = if kv.is_zero() {
                    kv
                } else if diag11 {
                    &pre * neg_pow(beta, -l)? * g.lam1(a) * kv * g.f(b, a)?
                } else {
                    &pre * neg_pow(beta, -l)? * g.lam2(a) * kv * g.f(a, b)?
                };
                out.push((s, b, val));
            }
        }
        ActionKind::Nu21 => {
            let kp = g.izergin(&one, &req.u, c, false);
            let km = g.izergin(&one, &req.u, &mc, true);
            for s in SplitSpace::three(total).iter() {
                let (a, b, r) = (s.part(0), s.part(1), s.part(2));
                let k = kp.eval(a)? * km.eval(b)?;
                let val = if k.is_zero() {
                    k
                } else {
                    let (la, lb) = (a.count_ones() as i64, b.count_ones() as i64);
                    neg_pow(&tw.beta1, n as i64 - la)?
                        * neg_pow(&tw.beta2, n as i64 - lb)?
                        * g.lam2(a)
                        * g.lam1(b)
                        * k
                        * g.f(a, b)?
                        * g.f(a, r)?
                        * g.f(r, b)?
                };
                out.push((s, r, val));
            }
        }
        ActionKind::Nu12 => {
            let s_int = req
                .oracle
                .s()
                .ok_or_else(|| Error::Capability(format!("oracle {} has no S", req.oracle.label())))?;
            req.oracle.f_value(&Scalar::zero())?;
            if total < s_int {
                return Err(Error::Domain(format!("m + n = {total} is below S = {s_int}")));
            }
            let e = total - s_int;
            let pre = if e == 0 {
                Scalar::one()
            } else {
                let bb = &tw.beta1 * &tw.beta2;
                let p = (&tw.mu - &one) * (&tw.beta1 + &tw.beta2);
                p.checked_div(&bb)
                    .ok_or_else(|| Error::Domain("beta1 * beta2 = 0".into()))?
                    .pow_u(e as u64)
            };
            let fw: Vec<Scalar> = g.values.iter().map(|x| req.oracle.f_value(x)).collect::<Result<_>>()?;
            for s in SplitSpace::new(total, 2, Some(&[e, s_int]))?.iter() {
                let (a, b) = (s.part(0), s.part(1));
                let mut val = pre.clone();
                for i in indices(a) {
                    val *= &fw[i];
                    for j in indices(b) {
                        val *= kernel_g(&g.values[i], &g.values[j], c)?;
                    }
                }
                out.push((s, b, val));
            }
        }
    }
    Ok(out)
}

pub fn eval_action(req: &ActionRequest) -> Result<ActionResult> {
    let ground = GroundSet::concat(&[("u", req.u.len()), ("v", req.v.len())])?;
    let mut coefficients = CoefficientMap::new();
    for (_, key, val) in action_terms(req)? {
        coefficients.add(key, val);
    }
    Ok(ActionResult {
        coefficients,
        ground,
        values: concat(&req.u, &req.v),
    })
}

/// Yangian automorphism on requests: diagonal kinds swap, spectral parameters
/// are negated, `λ₁(x) ↔ λ₂(-x)`, and `β₁ ↔ β₂`. Survivor keys are positional,
/// so coefficient maps of a request and its image agree key by key.
pub fn phi_transform(req: &ActionRequest) -> ActionRequest {
    ActionRequest {
        kind: req.kind.phi(),
        u: req.u.iter().map(|x| -x).collect(),
        v: req.v.iter().map(|x| -x).collect(),
        oracle: req.oracle.phi(),
        twist: req.twist.swapped(),
        c: req.c.clone(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ScalarForm {
    SCe,
    SCbe,
    SPfin,
    SPfinIK,
}

impl ScalarForm {
    pub const ALL: [ScalarForm; 4] = [
        ScalarForm::SCe,
        ScalarForm::SCbe,
        ScalarForm::SPfin,
        ScalarForm::SPfinIK,
    ];

    /// Whether the form computes the twisted scalar product.
    pub fn is_twisted(self) -> bool {
        matches!(self, ScalarForm::SPfin | ScalarForm::SPfinIK)
    }
}

impl fmt::Display for ScalarForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl std::str::FromStr for ScalarForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        ScalarForm::ALL
            .into_iter()
            .find(|f| f.to_string() == s)
            .ok_or_else(|| Error::Config(format!("unknown scalar-product form {s:?}")))
    }
}

/// Scalar product `⟨0| op₂₁(ū) op₁₂(v̄) |0⟩` by one of the four partition-sum
/// forms. `SCe`/`SCbe` give the untwisted product and ignore `twist`;
/// `SPfin`/`SPfinIK` give the twisted one. `jobs` workers share the sum.
pub fn eval_scalar(
    form: ScalarForm,
    u: &[Scalar],
    v: &[Scalar],
    oracle: &WeightOracle,
    twist: &Twist,
    c: &Scalar,
    jobs: usize,
) -> Result<Scalar> {
    let (n, m) = (u.len(), v.len());
    let one = Scalar::one();
    let mc = -c;
    match form {
        ScalarForm::SCe | ScalarForm::SCbe if n != m => {
            Err(Error::Cardinality(format!("{form} needs #u = #v, got {n} and {m}")))
        }
        ScalarForm::SCe => {
            let g = Ground::new(concat(u, v), oracle, c);
            let kp = g.izergin(&one, u, c, false);
            let km = g.izergin(&one, u, &mc, true);
            SplitSpace::new(2 * n, 2, Some(&[n, n]))?.sum(jobs, |s| {
                let (a, b) = (s.part(0), s.part(1));
                Ok(g.lam2(a) * g.lam1(b) * kp.eval(a)? * km.eval(b)? * g.f(a, b)?)
            })
        }
        ScalarForm::SCbe => {
            let gu = Ground::new(u.to_vec(), oracle, c);
            let gv = Ground::new(v.to_vec(), oracle, c);
            let mut acc = Scalar::zero();
            for n1 in 0..=n {
                let n2 = n - n1;
                let sp = SplitSpace::new(n, 2, Some(&[n1, n2]))?;
                for su in sp.iter() {
                    let (ui, uii) = (su.part(0), su.part(1));
                    let (xu1, xu2) = (select(u, ui), select(u, uii));
                    let wu = gu.lam2(ui) * gu.lam1(uii) * gu.f(ui, uii)?;
                    for sv in sp.iter() {
                        let (vi, vii) = (sv.part(0), sv.part(1));
                        let kk = mod_izergin(&one, &select(v, vii), &xu2, c, Variant::VSide)?
                            * conj_mod_izergin(&one, &select(v, vi), &xu1, c, Variant::VSide)?;
                        if kk.is_zero() {
                            continue;
                        }
                        acc += &wu * gv.lam2(vii) * gv.lam1(vi) * kk * gv.f(vii, vi)?;
                    }
                }
            }
            Ok(acc)
        }
        ScalarForm::SPfin => {
            let g = Ground::new(concat(u, v), oracle, c);
            let kp = g.izergin(&twist.mu, u, c, false);
            let km = g.izergin(&twist.mu, u, &mc, true);
            SplitSpace::two(n + m).sum(jobs, |s| {
                let (a, b) = (s.part(0), s.part(1));
                let k = kp.eval(a)?;
                if k.is_zero() {
                    return Ok(k);
                }
                let k = k * km.eval(b)?;
                if k.is_zero() {
                    return Ok(k);
                }
                let (la, lb) = (a.count_ones() as i64, b.count_ones() as i64);
                Ok(neg_pow(&twist.beta1, n as i64 - la)?
                    * neg_pow(&twist.beta2, n as i64 - lb)?
                    * g.lam2(a)
                    * g.lam1(b)
                    * k
                    * g.f(a, b)?)
            })
        }
        ScalarForm::SPfinIK => {
            let mu = &twist.mu;
            let inv = mu
                .recip()
                .ok_or_else(|| Error::Domain("mu = 0 has no inverse".into()))?;
            let e = m as i64 - n as i64;
            if mu.is_one() && e != 0 {
                return Err(Error::Domain(format!(
                    "(1 - mu)^(m - n) is singular or zero at mu = 1 with m - n = {e}; use SPfin"
                )));
            }
            let pre = mu.pow_u(2 * n as u64) * (&one - mu).powi(e)?;
            let gu = Ground::new(u.to_vec(), oracle, c);
            let gv = Ground::new(v.to_vec(), oracle, c);
            let us = SplitSpace::two(n);
            let mut acc = Scalar::zero();
            for su in us.iter() {
                let (ui, uii) = (su.part(0), su.part(1));
                let (n1, n2) = (ui.count_ones() as i64, uii.count_ones() as i64);
                let (xu1, xu2) = (select(u, ui), select(u, uii));
                let wu = gu.lam2(ui) * gu.lam1(uii) * gu.f(ui, uii)?;
                for sv in SplitSpace::two(m).iter() {
                    let (vi, vii) = (sv.part(0), sv.part(1));
                    let (m1, m2) = (vi.count_ones() as i64, vii.count_ones() as i64);
                    let kk = mod_izergin(&inv, &select(v, vii), &xu2, c, Variant::Auto)?
                        * conj_mod_izergin(&inv, &select(v, vi), &xu1, c, Variant::Auto)?;
                    if kk.is_zero() {
                        continue;
                    }
                    acc += neg_pow(&twist.beta1, n2 - m2)?
                        * neg_pow(&twist.beta2, n1 - m1)?
                        * &wu
                        * gv.lam2(vii)
                        * gv.lam1(vi)
                        * gv.f(vii, vi)?
                        * kk;
                }
            }
            Ok(pre * acc)
        }
    }
}

/// `⟨0|ν₁₂(w̄)|0⟩ = (1-μ)^p Σ (-β₂)^{-#w̄_II} (-β₁)^{-#w̄_I} λ₂(w̄_I) λ₁(w̄_II) f(w̄_I,w̄_II)`.
pub fn eval_vacuum_average(w: &[Scalar], oracle: &WeightOracle, twist: &Twist, c: &Scalar) -> Result<Scalar> {
    let p = w.len();
    if p == 0 {
        return Ok(Scalar::one());
    }
    if twist.beta1.is_zero() || twist.beta2.is_zero() {
        return Err(Error::Domain("vacuum average formula needs beta1 * beta2 != 0".into()));
    }
    let g = Ground::new(w.to_vec(), oracle, c);
    let sum = SplitSpace::two(p).sum(1, |s| {
        let (a, b) = (s.part(0), s.part(1));
        Ok(neg_pow(&twist.beta2, -(b.count_ones() as i64))?
            * neg_pow(&twist.beta1, -(a.count_ones() as i64))?
            * g.lam2(a)
            * g.lam1(b)
            * g.f(a, b)?)
    })?;
    Ok((Scalar::one() - &twist.mu).pow_u(p as u64) * sum)
}

/// `Σ_{#x̄_I=k} f(x̄_II, x̄_I)` and `Σ_{#x̄_I=k} f(x̄_I, x̄_II)`, both `C(p,k)`.
pub fn binomial_sums(x: &[Scalar], k: usize, c: &Scalar) -> Result<(Scalar, Scalar)> {
    let p = x.len();
    let g = Ground::new(x.to_vec(), &WeightOracle::hashed(0), c);
    let sp = SplitSpace::new(p, 2, Some(&[k, p - k]))?;
    let a = sp.sum(1, |s| g.f(s.part(1), s.part(0)))?;
    let b = sp.sum(1, |s| g.f(s.part(0), s.part(1)))?;
    Ok((a, b))
}

/// `Σ_{x̄⇒{x̄_I,x̄_II}} (-1)^{#x̄_II} f(x̄_II, x̄_I)`, zero for nonempty `x̄`.
pub fn alternating_sum(x: &[Scalar], c: &Scalar) -> Result<Scalar> {
    let g = Ground::new(x.to_vec(), &WeightOracle::hashed(0), c);
    SplitSpace::two(x.len()).sum(1, |s| Ok(sign(s.part_len(1)) * g.f(s.part(1), s.part(0))?))
}

/// `G = Σ_{#w̄_I=1} f(w̄_II, w̄_I) / h(u, w̄_I)` for `u = w[u_index]`; equals 1.
pub fn single_removal_sum(w: &[Scalar], u_index: usize, c: &Scalar) -> Result<Scalar> {
    let u = &w[u_index];
    let g = Ground::new(w.to_vec(), &WeightOracle::hashed(0), c);
    SplitSpace::new(w.len(), 2, Some(&[1, w.len() - 1]))?.sum(1, |s| {
        let i = s.part(0).trailing_zeros() as usize;
        let h = kernel_h(u, &w[i], c);
        let num = g.f(s.part(1), s.part(0))?;
        num.checked_div(&h)
            .ok_or_else(|| Error::pole(crate::error::KernelKind::H, u, &w[i]))
    })
}

/// `Σ_{#w̄_II=1} g(w̄_I, w̄_II) / g(w̄_I, u)` for `u = w[u_index]`, with
/// `1/g(x,y) = (x-y)/c` so the terms with `u ∈ w̄_I` vanish; equals 1.
pub fn pole_removal_sum(w: &[Scalar], u_index: usize, c: &Scalar) -> Result<Scalar> {
    let u = &w[u_index];
    let p = w.len();
    SplitSpace::new(p, 2, Some(&[p - 1, 1]))?.sum(1, |s| {
        let j = s.part(1).trailing_zeros() as usize;
        let mut acc = Scalar::one();
        for i in indices(s.part(0)) {
            acc *= kernel_g(&w[i], &w[j], c)? * crate::kernel::kernel_g_inv(&w[i], u, c);
        }
        Ok(acc)
    })
}

/// `Σ_{#w̄_II=1} g(w̄_I, w̄_II) g(w̄_II, x) / g(w̄, x)` for a generic point `x`;
/// equals 1. This is the form the pole-removal identity is proved in.
pub fn pole_removal_sum_at(w: &[Scalar], x: &Scalar, c: &Scalar) -> Result<Scalar> {
    let p = w.len();
    let sum = SplitSpace::new(p, 2, Some(&[p - 1, 1]))?.sum(1, |s| {
        let j = s.part(1).trailing_zeros() as usize;
        let mut acc = kernel_g(&w[j], x, c)?;
        for i in indices(s.part(0)) {
            acc *= kernel_g(&w[i], &w[j], c)?;
        }
        Ok(acc)
    })?;
    let mut norm = Scalar::one();
    for y in w {
        norm *= kernel_g(y, x, c)?;
    }
    Ok(sum / norm)
}

/// Number of splits the `SPfin` form sums over for `n + m` parameters.
pub fn spfin_split_count(total: usize) -> u64 {
    SplitSpace::two(total).len()
}

/// Full ground mask helper re-exported for callers building keys by hand.
pub fn ground_mask(n: usize) -> u64 {
    full_mask(n)
}
