//! The rational kernels `g`, `f`, `h`, their set-product conventions, spectral
//! parameter sets, twist parameters, and generic sampling.
//!
//! ```text
//! g(u,v) = c/(u-v)      f(u,v) = (u-v+c)/(u-v)      h(u,v) = (u-v+c)/c
//! ```
//!
//! A product over an empty set is 1; a double product is 1 as soon as either
//! side is empty.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, KernelKind, Result};
use crate::scalar::Scalar;

pub fn kernel_g(u: &Scalar, v: &Scalar, c: &Scalar) -> Result<Scalar> {
    let d = u - v;
    if d.is_zero() {
        return Err(Error::pole(KernelKind::G, u, v));
    }
    Ok(c / &d)
}

pub fn kernel_f(u: &Scalar, v: &Scalar, c: &Scalar) -> Result<Scalar> {
    let d = u - v;
    if d.is_zero() {
        return Err(Error::pole(KernelKind::F, u, v));
    }
    let f = (&d + c) / &d;
    Ok(if fault::f_flipped() { -f } else { f })
}

/// Process-wide fault switch used by mutation smoke tests of the
/// verification harness. Off unless a test turns it on.
#[doc(hidden)]
pub mod fault {
    use std::sync::atomic::{AtomicBool, Ordering};

    static FLIP_F: AtomicBool = AtomicBool::new(false);

    /// Makes `kernel_f` return `-f` while on.
    pub fn flip_f_sign(on: bool) {
        FLIP_F.store(on, Ordering::SeqCst);
    }

    pub(crate) fn f_flipped() -> bool {
        FLIP_F.load(Ordering::Relaxed)
    }
}

pub fn kernel_h(u: &Scalar, v: &Scalar, c: &Scalar) -> Scalar {
    (u - v + c) / c
}

/// `1/h(u,v) = c/(u-v+c)`, which has a pole at `u - v = -c`.
pub fn kernel_h_inv(u: &Scalar, v: &Scalar, c: &Scalar) -> Result<Scalar> {
    let d = u - v + c;
    if d.is_zero() {
        return Err(Error::pole(KernelKind::H, u, v));
    }
    Ok(c / &d)
}

/// `1/g(u,v) = (u-v)/c`, total; vanishes at `u = v`.
pub fn kernel_g_inv(u: &Scalar, v: &Scalar, c: &Scalar) -> Scalar {
    (u - v) / c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductKind {
    G,
    F,
    H,
}

/// Double product `χ(left, right)` over all pairs.
pub fn set_product(kind: ProductKind, left: &[Scalar], right: &[Scalar], c: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for a in left {
        for b in right {
            let x = match kind {
                ProductKind::G => kernel_g(a, b, c)?,
                ProductKind::F => kernel_f(a, b, c)?,
                ProductKind::H => kernel_h(a, b, c),
            };
            acc *= x;
        }
    }
    Ok(acc)
}

pub fn f_prod(left: &[Scalar], right: &[Scalar], c: &Scalar) -> Result<Scalar> {
    set_product(ProductKind::F, left, right, c)
}

pub fn g_prod(left: &[Scalar], right: &[Scalar], c: &Scalar) -> Result<Scalar> {
    set_product(ProductKind::G, left, right, c)
}

pub fn h_prod(left: &[Scalar], right: &[Scalar], c: &Scalar) -> Scalar {
    set_product(ProductKind::H, left, right, c).expect("h is total")
}

/// `f(x̄_k, x_k)`: product of `f(x_j, x_k)` over `j != k`.
pub fn f_complement_left(set: &[Scalar], k: usize, c: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for (j, x) in set.iter().enumerate() {
        if j != k {
            acc *= kernel_f(x, &set[k], c)?;
        }
    }
    Ok(acc)
}

/// `f(x_k, x̄_k)`: product of `f(x_k, x_j)` over `j != k`.
pub fn f_complement_right(set: &[Scalar], k: usize, c: &Scalar) -> Result<Scalar> {
    let mut acc = Scalar::one();
    for (j, x) in set.iter().enumerate() {
        if j != k {
            acc *= kernel_f(&set[k], x, c)?;
        }
    }
    Ok(acc)
}

pub fn shifted(set: &[Scalar], delta: &Scalar) -> Vec<Scalar> {
    set.iter().map(|x| x + delta).collect()
}

pub fn negated(set: &[Scalar]) -> Vec<Scalar> {
    set.iter().map(|x| -x).collect()
}

/// An ordered finite set of spectral parameters with a free-form label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectralSet {
    pub label: String,
    pub elements: Vec<Scalar>,
}

impl SpectralSet {
    pub fn new(label: impl Into<String>, elements: Vec<Scalar>) -> Self {
        SpectralSet {
            label: label.into(),
            elements,
        }
    }

    pub fn empty(label: impl Into<String>) -> Self {
        Self::new(label, Vec::new())
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn as_slice(&self) -> &[Scalar] {
        &self.elements
    }

    pub fn shifted(&self, delta: &Scalar) -> SpectralSet {
        SpectralSet::new(self.label.clone(), shifted(&self.elements, delta))
    }

    pub fn negated(&self) -> SpectralSet {
        SpectralSet::new(self.label.clone(), negated(&self.elements))
    }
}

impl std::ops::Deref for SpectralSet {
    type Target = [Scalar];
    fn deref(&self) -> &[Scalar] {
        &self.elements
    }
}

/// First pair in `points` whose difference lies in `{0, +c, -c}`, if any.
pub fn find_collision(points: &[Scalar], c: &Scalar) -> Option<(Scalar, Scalar)> {
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            let d = a - b;
            if d.is_zero() || &d == c || d == -c {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

pub fn is_generic(points: &[Scalar], c: &Scalar) -> bool {
    find_collision(points, c).is_none()
}

fn collides(x: &Scalar, others: &[Scalar], c: &Scalar) -> bool {
    others.iter().any(|y| {
        let d = x - y;
        d.is_zero() || &d == c || d == -c
    })
}

const ATTEMPTS_PER_POINT: usize = 512;

/// Draws `count` rationals `p/q` with `|p| <= bound` and `1 <= q <= bound` such
/// that the union with `context` stays generic (no difference in `{0, ±c}`).
///
/// Include shifted copies (`x ± c`) in `context` when the caller's formula
/// evaluates kernels at shifted arguments.
pub fn sample_generic<R: Rng + ?Sized>(
    rng: &mut R,
    label: &str,
    count: usize,
    context: &[Scalar],
    bound: i64,
    c: &Scalar,
) -> Result<SpectralSet> {
    if bound < 1 {
        return Err(Error::Config(format!("sampling bound must be >= 1, got {bound}")));
    }
    let mut taken: Vec<Scalar> = context.to_vec();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut found = None;
        for _ in 0..ATTEMPTS_PER_POINT {
            let p = rng.gen_range(-bound..=bound);
            let d = rng.gen_range(1..=bound);
            let x = Scalar::ratio(p, d).expect("positive denominator");
            if !collides(&x, &taken, c) {
                found = Some(x);
                break;
            }
        }
        let x = found.ok_or(Error::Exhaustion {
            wanted: count,
            attempts: ATTEMPTS_PER_POINT,
        })?;
        taken.push(x.clone());
        out.push(x);
    }
    Ok(SpectralSet::new(label, out))
}

/// [`sample_generic`] with a fresh ChaCha8 generator seeded by `seed`.
pub fn sample_generic_seeded(
    label: &str,
    count: usize,
    context: &[Scalar],
    seed: u64,
    bound: i64,
    c: &Scalar,
) -> Result<SpectralSet> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_generic(&mut rng, label, count, context, bound, c)
}

/// Twist data `(c, ρ₁, ρ₂, κ⁺, κ⁻)`. The derived `β₁ = ρ₁/κ⁺`, `β₂ = ρ₂/κ⁺`
/// and `μ = 1/(1 - ρ₁ρ₂/(κ⁺κ⁻))` are computed on demand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelParams {
    c: Scalar,
    rho1: Scalar,
    rho2: Scalar,
    kappa_plus: Scalar,
    kappa_minus: Scalar,
}

impl ModelParams {
    pub fn new(c: Scalar, rho1: Scalar, rho2: Scalar, kappa_plus: Scalar, kappa_minus: Scalar) -> Result<Self> {
        if c.is_zero() {
            return Err(Error::Domain("c must be nonzero".into()));
        }
        if kappa_plus.is_zero() || kappa_minus.is_zero() {
            return Err(Error::Domain("kappa+ and kappa- must be nonzero".into()));
        }
        let p = ModelParams {
            c,
            rho1,
            rho2,
            kappa_plus,
            kappa_minus,
        };
        if p.mu_denominator().is_zero() {
            return Err(Error::Domain(
                "1 - rho1*rho2/(kappa+*kappa-) vanishes; mu is infinite".into(),
            ));
        }
        Ok(p)
    }

    /// No twist: `ρ₁ = ρ₂ = 0`, `κ± = 1`, hence `β₁ = β₂ = 0`, `μ = 1`.
    pub fn untwisted(c: Scalar) -> Self {
        ModelParams::new(c, Scalar::zero(), Scalar::zero(), Scalar::one(), Scalar::one())
            .expect("untwisted parameters are valid")
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn rho1(&self) -> &Scalar {
        &self.rho1
    }

    pub fn rho2(&self) -> &Scalar {
        &self.rho2
    }

    pub fn kappa_plus(&self) -> &Scalar {
        &self.kappa_plus
    }

    pub fn kappa_minus(&self) -> &Scalar {
        &self.kappa_minus
    }

    fn mu_denominator(&self) -> Scalar {
        Scalar::one() - &(&self.rho1 * &self.rho2) / &(&self.kappa_plus * &self.kappa_minus)
    }

    pub fn beta1(&self) -> Scalar {
        &self.rho1 / &self.kappa_plus
    }

    pub fn beta2(&self) -> Scalar {
        &self.rho2 / &self.kappa_plus
    }

    pub fn mu(&self) -> Scalar {
        self.mu_denominator().recip().expect("validated at construction")
    }

    /// Same twist with the roles of `ρ₁` and `ρ₂` exchanged (so `β₁ ↔ β₂`, `μ` fixed).
    pub fn swapped(&self) -> Self {
        ModelParams {
            c: self.c.clone(),
            rho1: self.rho2.clone(),
            rho2: self.rho1.clone(),
            kappa_plus: self.kappa_plus.clone(),
            kappa_minus: self.kappa_minus.clone(),
        }
    }

    /// Draws a twist with nonzero `ρ₁`, `ρ₂` and `μ ∉ {0, 1}`.
    pub fn sample<R: Rng + ?Sized>(rng: &mut R, c: &Scalar, bound: i64) -> Result<Self> {
        let bound = bound.max(2);
        let nonzero = |rng: &mut R| loop {
            let p = rng.gen_range(-bound..=bound);
            if p != 0 {
                let d = rng.gen_range(1..=bound);
                return Scalar::ratio(p, d).expect("positive denominator");
            }
        };
        for _ in 0..ATTEMPTS_PER_POINT {
            let rho1 = nonzero(rng);
            let rho2 = nonzero(rng);
            let kp = nonzero(rng);
            let km = nonzero(rng);
            if let Ok(p) = ModelParams::new(c.clone(), rho1, rho2, kp, km) {
                return Ok(p);
            }
        }
        Err(Error::Exhaustion {
            wanted: 1,
            attempts: ATTEMPTS_PER_POINT,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;
    use proptest::prelude::*;

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn g_values_and_pole() {
        assert_eq!(kernel_g(&q(3, 1), &q(1, 1), &one()).unwrap(), q(1, 2));
        assert!(matches!(
            kernel_g(&q(2, 1), &q(2, 1), &one()),
            Err(Error::Pole {
                kind: KernelKind::G,
                ..
            })
        ));
        let c = q(2, 1);
        assert_eq!(kernel_g(&q(0, 1), &q(-2, 1), &c).unwrap(), one());
        // g(-u,-v) = g(v,u) at (u,v) = (1,0)
        assert_eq!(
            kernel_g(&q(-1, 1), &q(0, 1), &c).unwrap(),
            kernel_g(&q(0, 1), &q(1, 1), &c).unwrap()
        );
    }

    #[test]
    fn f_h_values() {
        let c = one();
        assert_eq!(kernel_f(&q(2, 1), &q(1, 1), &c).unwrap(), q(2, 1));
        assert_eq!(kernel_h(&q(2, 1), &q(1, 1), &c), q(2, 1));
        // f(u, v+c) = 1/f(v,u) at u=3, v=1
        assert_eq!(kernel_f(&q(3, 1), &q(2, 1), &c).unwrap(), q(2, 1));
        assert_eq!(kernel_f(&q(1, 1), &q(3, 1), &c).unwrap().recip().unwrap(), q(2, 1));
        // h(u, v+c) g(u,v) = 1 at (5,1)
        let hg = kernel_h(&q(5, 1), &q(2, 1), &c) * kernel_g(&q(5, 1), &q(1, 1), &c).unwrap();
        assert_eq!(hg, one());
        assert!(kernel_f(&q(4, 3), &q(4, 3), &c).is_err());
    }

    #[test]
    fn set_products() {
        let c = one();
        assert_eq!(f_prod(&[q(7, 2)], &[], &c).unwrap(), one());
        assert_eq!(f_prod(&[], &[q(7, 2)], &c).unwrap(), one());
        assert_eq!(f_prod(&[q(3, 1), q(5, 1)], &[q(0, 1)], &c).unwrap(), q(8, 5));
        let u = [q(1, 1), q(2, 1), q(4, 1)];
        assert_eq!(f_complement_left(&u, 1, &c).unwrap(), Scalar::zero());
        let err = f_prod(&[q(1, 1)], &[q(1, 1)], &c).unwrap_err();
        assert_eq!(err, Error::pole(KernelKind::F, &q(1, 1), &q(1, 1)));
    }

    #[test]
    fn sampling_is_deterministic_and_generic() {
        let c = one();
        assert!(sample_generic_seeded("u", 0, &[], 7, 10, &c).unwrap().is_empty());
        let a = sample_generic_seeded("u", 3, &[], 7, 10, &c).unwrap();
        let b = sample_generic_seeded("u", 3, &[], 7, 10, &c).unwrap();
        assert_eq!(a, b);
        let context = vec![q(0, 1), q(7, 3), q(1, 2)];
        for seed in 0..50 {
            let s = sample_generic_seeded("v", 6, &context, seed, 8, &c).unwrap();
            let mut joint = context.clone();
            joint.extend(s.elements.iter().cloned());
            // exhaustive pairwise scan
            for i in 0..joint.len() {
                for j in 0..joint.len() {
                    if i != j {
                        let d = &joint[i] - &joint[j];
                        assert!(!d.is_zero() && d != c && d != -&c);
                    }
                }
            }
        }
    }

    #[test]
    fn sampling_exhausts_on_tiny_bound() {
        // bound 1 offers only {-1, 0, 1}, all within distance c of the context.
        let err = sample_generic_seeded("u", 1, &[q(0, 1)], 1, 1, &one()).unwrap_err();
        assert!(matches!(err, Error::Exhaustion { .. }));
        assert!(sample_generic_seeded("u", 1, &[], 1, 0, &one()).is_err());
    }

    #[test]
    fn model_params_derived() {
        let p = ModelParams::new(one(), q(1, 1), q(2, 1), q(2, 1), q(3, 1)).unwrap();
        assert_eq!(p.mu(), q(3, 2));
        assert_eq!(p.beta1(), q(1, 2));
        assert_eq!(p.beta2(), q(1, 1));
        let id = ModelParams::untwisted(one());
        assert_eq!(id.mu(), one());
        assert!(ModelParams::new(one(), q(1, 1), q(1, 1), q(1, 1), q(1, 1)).is_err());
        assert!(ModelParams::new(one(), q(1, 1), q(1, 1), Scalar::zero(), q(1, 1)).is_err());
    }

    fn small_q() -> impl Strategy<Value = Scalar> {
        (-40i64..40, 1i64..12).prop_map(|(p, d)| q(p, d))
    }

    fn nonzero_c() -> impl Strategy<Value = Scalar> {
        prop_oneof![Just(one()), Just(q(2, 1)), Just(q(-1, 1)), Just(q(3, 7))]
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]

        #[test]
        fn f_is_one_plus_g_and_h_is_f_over_g(u in small_q(), v in small_q(), c in nonzero_c()) {
            prop_assume!(u != v);
            let g = kernel_g(&u, &v, &c).unwrap();
            let f = kernel_f(&u, &v, &c).unwrap();
            prop_assert_eq!(&f, &(Scalar::one() + &g));
            prop_assert_eq!(kernel_h(&u, &v, &c), &f / &g);
        }

        #[test]
        fn sign_and_shift_symmetries(u in small_q(), v in small_q(), c in nonzero_c()) {
            prop_assume!(u != v && &u - &v != c && &v - &u != c);
            let (nu, nv) = (-&u, -&v);
            prop_assert_eq!(kernel_g(&nu, &nv, &c).unwrap(), kernel_g(&v, &u, &c).unwrap());
            prop_assert_eq!(kernel_f(&nu, &nv, &c).unwrap(), kernel_f(&v, &u, &c).unwrap());
            prop_assert_eq!(kernel_h(&nu, &nv, &c), kernel_h(&v, &u, &c));
            // c -> -c swaps the arguments
            let mc = -&c;
            prop_assert_eq!(kernel_f(&u, &v, &mc).unwrap(), kernel_f(&v, &u, &c).unwrap());
            prop_assert_eq!(kernel_h(&u, &v, &mc), kernel_h(&v, &u, &c));
            // chi(u - c, v) = chi(u, v + c)
            let (um, vp) = (&u - &c, &v + &c);
            prop_assert_eq!(kernel_g(&um, &v, &c).unwrap(), kernel_g(&u, &vp, &c).unwrap());
            prop_assert_eq!(kernel_f(&um, &v, &c).unwrap(), kernel_f(&u, &vp, &c).unwrap());
            prop_assert_eq!(kernel_h(&um, &v, &c), kernel_h(&u, &vp, &c));
            // g(u, v-c) = 1/h(u,v), h(u,v+c) = 1/g(u,v), f(u,v+c) = 1/f(v,u)
            let vm = &v - &c;
            prop_assert_eq!(kernel_g(&u, &vm, &c).unwrap() * kernel_h(&u, &v, &c), Scalar::one());
            prop_assert_eq!(kernel_h(&u, &vp, &c) * kernel_g(&u, &v, &c).unwrap(), Scalar::one());
            prop_assert_eq!(kernel_f(&u, &vp, &c).unwrap() * kernel_f(&v, &u, &c).unwrap(), Scalar::one());
        }

        #[test]
        fn products_are_permutation_invariant(seed in 0u64..1000) {
            let c = one();
            let a = sample_generic_seeded("a", 4, &[], seed, 12, &c).unwrap();
            let b = sample_generic_seeded("b", 3, &a, seed + 1, 12, &c).unwrap();
            let p = f_prod(&a, &b, &c).unwrap();
            let mut ar = a.elements.clone();
            ar.reverse();
            let mut br = b.elements.clone();
            br.rotate_left(1);
            prop_assert_eq!(f_prod(&ar, &br, &c).unwrap(), p);
            prop_assert_eq!(f_prod(&a[..1], &b[..1], &c).unwrap(), kernel_f(&a[0], &b[0], &c).unwrap());
        }
    }
}
