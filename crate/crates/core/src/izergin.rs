//! Modified Izergin determinants `K^{(z)}_{n,m}(ū|v̄)` and their conjugates.
//!
//! ```text
//! v-side:  K = det_m( -z δ_jk + f(ū,v_j) f(v_j,v̄_j) / h(v_j,v_k) )
//! u-side:  K = (1-z)^{m-n} det_n( δ_jk f(u_j,v̄) - z f(u_j,ū_j) / h(u_j,u_k) )
//! ```
//!
//! The conjugate `K̄` is `K` with `c → -c`, which amounts to swapping the
//! arguments of every `f` and `h`. It is implemented with the swapped
//! arguments rather than by flipping `c`, so that the two can be compared.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::interp::rational_interpolate;
use crate::kernel::{f_prod, kernel_f, kernel_g, kernel_h, kernel_h_inv, shifted};
use crate::partition::{indices, select, SplitSpace};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// `m × m` determinant over the second argument set; defined for every `z`.
    VSide,
    /// `(1-z)^{m-n}` times an `n × n` determinant over the first argument set.
    USide,
    /// v-side at `z = 1`, otherwise whichever matrix is smaller.
    Auto,
}

/// Exact determinant by fraction-free elimination. Each row is first scaled
/// to integers by the lcm of its denominators; those scales are divided out at
/// the end. Pivot: first nonzero entry in the column.
pub fn determinant(rows: &[Vec<Scalar>]) -> Scalar {
    let n = rows.len();
    if n == 0 {
        return Scalar::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            assert_eq!(row.len(), n, "determinant of a non-square matrix");
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            let ints = row.iter().map(|x| x.numer() * (&l / x.denom())).collect();
            scale *= &l;
            ints
        })
        .collect();
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&i| !a[i][k].is_zero()) else {
            return Scalar::zero();
        };
        if p != k {
            a.swap(p, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = t / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    let mut det = a[n - 1][n - 1].clone();
    if sign {
        det = -det;
    }
    if scale.is_negative() {
        det = -det;
        scale = -scale;
    }
    Scalar::from_big(det, scale).expect("nonzero row scale")
}

fn fx(a: &Scalar, b: &Scalar, c: &Scalar, conj: bool) -> Result<Scalar> {
    if conj {
        kernel_f(b, a, c)
    } else {
        kernel_f(a, b, c)
    }
}

fn hinv(a: &Scalar, b: &Scalar, c: &Scalar, conj: bool) -> Result<Scalar> {
    if conj {
        kernel_h_inv(b, a, c)
    } else {
        kernel_h_inv(a, b, c)
    }
}

/// `(1-z)^e` for a possibly negative exponent.
fn one_minus_pow(z: &Scalar, e: i64) -> Result<Scalar> {
    (Scalar::one() - z).powi(e)
}

/// Precomputed kernel tables for evaluating `K^{(z)}_{n,l}(ū|x̄_S)` (or its
/// conjugate) for many subsets `S` of a fixed ground set `x̄`.
pub struct IzerginTable {
    z: Scalar,
    n: usize,
    variant: Variant,
    // v-side: f(ū, x_a), f(x_a, x_b), 1/h(x_a, x_b)  (arguments swapped when conjugated)
    fu: Vec<Result<Scalar>>,
    fxx: Vec<Vec<Result<Scalar>>>,
    hxx: Vec<Vec<Result<Scalar>>>,
    // u-side: f(u_j, x_a) and the constant part z f(u_j,ū_j)/h(u_j,u_k)
    fux: Vec<Vec<Result<Scalar>>>,
    cuu: Option<Result<Vec<Vec<Scalar>>>>,
}

impl IzerginTable {
    pub fn new(z: &Scalar, u: &[Scalar], x: &[Scalar], c: &Scalar, conj: bool, variant: Variant) -> Self {
        let need_v = variant != Variant::USide;
        let need_u = variant != Variant::VSide && !z.is_one();
        let fu = if need_v {
            x.iter()
                .map(|xa| {
                    let mut acc = Scalar::one();
                    for uj in u {
                        acc *= fx(uj, xa, c, conj)?;
                    }
                    Ok(acc)
                })
                .collect()
        } else {
            Vec::new()
        };
        let pair_table = |k: fn(&Scalar, &Scalar, &Scalar, bool) -> Result<Scalar>| -> Vec<Vec<Result<Scalar>>> {
            x.iter()
                .enumerate()
                .map(|(a, xa)| {
                    x.iter()
                        .enumerate()
                        .map(|(b, xb)| if a == b { Ok(Scalar::one()) } else { k(xa, xb, c, conj) })
                        .collect()
                })
                .collect()
        };
        let (fxx, hxx) = if need_v {
            (pair_table(fx), pair_table(hinv))
        } else {
            (Vec::new(), Vec::new())
        };
        let (fux, cuu) = if need_u || variant == Variant::USide {
            let fux = u
                .iter()
                .map(|uj| x.iter().map(|xa| fx(uj, xa, c, conj)).collect())
                .collect();
            let cuu = (|| -> Result<Vec<Vec<Scalar>>> {
                let mut rows = Vec::with_capacity(u.len());
                for (j, uj) in u.iter().enumerate() {
                    let mut fj = Scalar::one();
                    for (i, ui) in u.iter().enumerate() {
                        if i != j {
                            fj *= fx(uj, ui, c, conj)?;
                        }
                    }
                    let zf = z * &fj;
                    let mut row = Vec::with_capacity(u.len());
                    for (k, uk) in u.iter().enumerate() {
                        let h = if j == k { Scalar::one() } else { hinv(uj, uk, c, conj)? };
                        row.push(&zf * &h);
                    }
                    rows.push(row);
                }
                Ok(rows)
            })();
            (fux, Some(cuu))
        } else {
            (Vec::new(), None)
        };
        IzerginTable {
            z: z.clone(),
            n: u.len(),
            variant,
            fu,
            fxx,
            hxx,
            fux,
            cuu,
        }
    }

    fn resolve(&self, l: usize) -> Variant {
        match self.variant {
            Variant::Auto if self.z.is_one() || self.n >= l => Variant::VSide,
            Variant::Auto => Variant::USide,
            v => v,
        }
    }

    /// `K^{(z)}_{n,#S}(ū|x̄_S)` for the subset `S = mask`.
    pub fn eval(&self, mask: u64) -> Result<Scalar> {
        let l = mask.count_ones() as usize;
        match self.resolve(l) {
            Variant::USide => self.eval_u(mask, l),
            _ => self.eval_v(mask),
        }
    }

    fn eval_v(&self, mask: u64) -> Result<Scalar> {
        let idx: Vec<usize> = indices(mask).collect();
        let mut rows = Vec::with_capacity(idx.len());
        for &a in &idx {
            let mut factors = vec![self.fu[a].as_ref().map_err(Clone::clone)?];
            for &b in &idx {
                if b != a {
                    factors.push(self.fxx[a][b].as_ref().map_err(Clone::clone)?);
                }
            }
            let d: Scalar = factors.into_iter().product();
            let mut row = Vec::with_capacity(idx.len());
            for &b in &idx {
                let mut e = &d * self.hxx[a][b].as_ref().map_err(Clone::clone)?;
                if a == b {
                    e -= &self.z;
                }
                row.push(e);
            }
            rows.push(row);
        }
        Ok(determinant(&rows))
    }

    fn eval_u(&self, mask: u64, l: usize) -> Result<Scalar> {
        let e = l as i64 - self.n as i64;
        if self.z.is_one() {
            if e < 0 {
                return Err(Error::VariantUndefined(format!(
                    "u-side determinant at z = 1 with m = {l} < n = {}",
                    self.n
                )));
            }
            if e > 0 {
                return Ok(Scalar::zero());
            }
        }
        let cuu = match &self.cuu {
            Some(Ok(c)) => c,
            Some(Err(err)) => return Err(err.clone()),
            None => unreachable!("u-side tables are built whenever the u-side can be chosen"),
        };
        let mut rows = cuu
            .iter()
            .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>())
            .collect::<Vec<_>>();
        for (j, row) in rows.iter_mut().enumerate() {
            let mut factors = Vec::new();
            for a in indices(mask) {
                factors.push(self.fux[j][a].as_ref().map_err(Clone::clone)?);
            }
            row[j] += factors.into_iter().product::<Scalar>();
        }
        Ok(determinant(&rows) * one_minus_pow(&self.z, e)?)
    }
}

fn concat(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    let mut out = a.to_vec();
    out.extend_from_slice(b);
    out
}

fn izergin_impl(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, variant: Variant, conj: bool) -> Result<Scalar> {
    if v.len() > 63 {
        return Err(Error::Constraint("more than 63 parameters".into()));
    }
    IzerginTable::new(z, u, v, c, conj, variant).eval(crate::partition::full_mask(v.len()))
}

/// `K^{(z)}_{n,m}(ū|v̄)`.
pub fn mod_izergin(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, variant: Variant) -> Result<Scalar> {
    izergin_impl(z, u, v, c, variant, false)
}

/// `K̄^{(z)}_{n,m}(ū|v̄)`, the `c → -c` image of [`mod_izergin`].
pub fn conj_mod_izergin(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, variant: Variant) -> Result<Scalar> {
    izergin_impl(z, u, v, c, variant, true)
}

/// `K^{(z)}` or `K̄^{(z)}` selected by a flag.
pub fn izergin(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, conj: bool) -> Result<Scalar> {
    izergin_impl(z, u, v, c, Variant::Auto, conj)
}

/// Ordinary Izergin determinant `K_n(ū|v̄) = K^{(1)}_{n,n}(ū|v̄)`.
pub fn ordinary_izergin(u: &[Scalar], v: &[Scalar], c: &Scalar) -> Result<Scalar> {
    if u.len() != v.len() {
        return Err(Error::Cardinality(format!(
            "ordinary Izergin determinant needs equal sizes, got {} and {}",
            u.len(),
            v.len()
        )));
    }
    mod_izergin(&Scalar::one(), u, v, c, Variant::VSide)
}

/// Ordinary Izergin determinant in its classical form
///
/// ```text
/// K_n(x̄|ȳ) = Δ'_g(x̄) Δ_g(ȳ) h(x̄,ȳ) det_n( g(x_j,y_k) / h(x_j,y_k) )
/// ```
///
/// with `Δ'_g(x̄) = ∏_{j<k} g(x_j,x_k)` and `Δ_g(ȳ) = ∏_{j>k} g(y_j,y_k)`.
/// Independent of the modified determinant; used to cross-check it at `z = 1`.
pub fn izergin_cauchy_form(x: &[Scalar], y: &[Scalar], c: &Scalar) -> Result<Scalar> {
    if x.len() != y.len() {
        return Err(Error::Cardinality(format!(
            "ordinary Izergin determinant needs equal sizes, got {} and {}",
            x.len(),
            y.len()
        )));
    }
    let n = x.len();
    let mut pre = Scalar::one();
    for j in 0..n {
        for k in j + 1..n {
            pre *= kernel_g(&x[j], &x[k], c)? * kernel_g(&y[k], &y[j], c)?;
        }
    }
    let mut rows = Vec::with_capacity(n);
    for xj in x {
        let mut row = Vec::with_capacity(n);
        for yk in y {
            pre *= kernel_h(xj, yk, c);
            row.push(kernel_g(xj, yk, c)? * kernel_h_inv(xj, yk, c)?);
        }
        rows.push(row);
    }
    Ok(pre * determinant(&rows))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartitionSide {
    /// Sum over splits of the second argument set.
    V,
    /// Sum over splits of the first argument set, with the `(1-z)^{m-n}` prefactor.
    U,
}

/// Partition-sum expansion of the (conjugated) modified Izergin determinant,
/// computed term by term with no determinant involved.
pub fn izergin_partition_sum(
    z: &Scalar,
    u: &[Scalar],
    v: &[Scalar],
    c: &Scalar,
    side: PartitionSide,
    conj: bool,
) -> Result<Scalar> {
    let (n, m) = (u.len(), v.len());
    let mz = -z;
    // f with arguments swapped when conjugated
    let ff = |a: &[Scalar], b: &[Scalar]| if conj { f_prod(b, a, c) } else { f_prod(a, b, c) };
    match side {
        PartitionSide::V => SplitSpace::two(m).sum(1, |s| {
            let (vi, vii) = (select(v, s.part(0)), select(v, s.part(1)));
            Ok(mz.pow_u(vii.len() as u64) * ff(u, &vi)? * ff(&vi, &vii)?)
        }),
        PartitionSide::U => {
            let e = m as i64 - n as i64;
            if z.is_one() && e < 0 {
                return Err(Error::VariantUndefined(format!(
                    "u-side expansion at z = 1 with m = {m} < n = {n}"
                )));
            }
            let pre = one_minus_pow(z, e)?;
            if pre.is_zero() {
                return Ok(pre);
            }
            let sum = SplitSpace::two(n).sum(1, |s| {
                let (ui, uii) = (select(u, s.part(0)), select(u, s.part(1)));
                Ok(mz.pow_u(ui.len() as u64) * ff(&uii, v)? * ff(&ui, &uii)?)
            })?;
            Ok(pre * sum)
        }
    }
}

/// Left side of the convolution identity
///
/// ```text
/// Σ_{ξ̄⇒{ξ̄_I,ξ̄_II}} z₂^{#ξ̄_I} K^{(z₁)}(ū|ξ̄_I) K^{(z₂)}(v̄|ξ̄_II) f(ξ̄_II,ξ̄_I) f(ū,ξ̄_II)
/// ```
///
/// which equals `K^{(z₁z₂)}_{n+m,l}({ū,v̄}|ξ̄)`. The conjugated form uses `K̄`
/// and `f(ξ̄_I,ξ̄_II) f(ξ̄_II,ū)`.
pub fn izergin_convolution(
    z1: &Scalar,
    z2: &Scalar,
    u: &[Scalar],
    v: &[Scalar],
    xi: &[Scalar],
    c: &Scalar,
    conj: bool,
) -> Result<Scalar> {
    let ff = |a: &[Scalar], b: &[Scalar]| if conj { f_prod(b, a, c) } else { f_prod(a, b, c) };
    let ku = IzerginTable::new(z1, u, xi, c, conj, Variant::VSide);
    let kv = IzerginTable::new(z2, v, xi, c, conj, Variant::VSide);
    SplitSpace::two(xi.len()).sum(1, |s| {
        let (a, b) = (s.part(0), s.part(1));
        let (xa, xb) = (select(xi, a), select(xi, b));
        Ok(z2.pow_u(xa.len() as u64) * ku.eval(a)? * kv.eval(b)? * ff(&xb, &xa)? * ff(u, &xb)?)
    })
}

/// Right side of [`izergin_convolution`].
pub fn izergin_convolution_rhs(
    z1: &Scalar,
    z2: &Scalar,
    u: &[Scalar],
    v: &[Scalar],
    xi: &[Scalar],
    c: &Scalar,
    conj: bool,
) -> Result<Scalar> {
    izergin_impl(&(z1 * z2), &concat(u, v), xi, c, Variant::VSide, conj)
}

/// Shifted specialization at `z₁ = z₂ = 1`:
///
/// ```text
/// Σ K^{(1)}(ū|ξ̄_I+c) K^{(1)}(v̄|ξ̄_II+c) f(ξ̄_II,ξ̄_I)/f(ξ̄_II,ū)  =  K^{(1)}({ū,v̄}|ξ̄+c)
/// Σ K̄^{(1)}(ū|ξ̄_I-c) K̄^{(1)}(v̄|ξ̄_II-c) f(ξ̄_I,ξ̄_II)/f(ū,ξ̄_II)  =  K̄^{(1)}({ū,v̄}|ξ̄-c)
/// ```
///
/// Returns `(lhs, rhs)`.
pub fn izergin_convolution_shifted(
    u: &[Scalar],
    v: &[Scalar],
    xi: &[Scalar],
    c: &Scalar,
    conj: bool,
) -> Result<(Scalar, Scalar)> {
    let one = Scalar::one();
    let shift = if conj { -c } else { c.clone() };
    let xs = shifted(xi, &shift);
    let ff = |a: &[Scalar], b: &[Scalar]| if conj { f_prod(b, a, c) } else { f_prod(a, b, c) };
    let ku = IzerginTable::new(&one, u, &xs, c, conj, Variant::VSide);
    let kv = IzerginTable::new(&one, v, &xs, c, conj, Variant::VSide);
    let lhs = SplitSpace::two(xi.len()).sum(1, |s| {
        let (a, b) = (s.part(0), s.part(1));
        let (xa, xb) = (select(xi, a), select(xi, b));
        let k = ku.eval(a)? * kv.eval(b)?;
        if k.is_zero() {
            return Ok(k);
        }
        let den = ff(&xb, u)?;
        let ratio = ff(&xb, &xa)?
            .checked_div(&den)
            .ok_or_else(|| Error::Domain("vanishing f in shifted convolution".into()))?;
        Ok(k * ratio)
    })?;
    let rhs = izergin_impl(&one, &concat(u, v), &xs, c, Variant::VSide, conj)?;
    Ok((lhs, rhs))
}

/// `Σ_{v̄⇒{v̄_I,v̄_II}} z₁^{#v̄_II} K^{(z₂)}(ū|v̄_I) f(v̄_I,v̄_II)`, which equals
/// `K^{(z₂-z₁)}(ū|v̄)`. The conjugated form uses `K̄` and `f(v̄_II,v̄_I)`.
pub fn izergin_deformation_sum(
    z1: &Scalar,
    z2: &Scalar,
    u: &[Scalar],
    v: &[Scalar],
    c: &Scalar,
    conj: bool,
) -> Result<Scalar> {
    let ff = |a: &[Scalar], b: &[Scalar]| if conj { f_prod(b, a, c) } else { f_prod(a, b, c) };
    let k = IzerginTable::new(z2, u, v, c, conj, Variant::VSide);
    SplitSpace::two(v.len()).sum(1, |s| {
        let (a, b) = (s.part(0), s.part(1));
        Ok(z1.pow_u(b.count_ones() as u64) * k.eval(a)? * ff(&select(v, a), &select(v, b))?)
    })
}

/// Residue of `K^{(z)}_{n,m}` at `u_n = v_m` (last elements), by exact
/// interpolation of `ε ↦ (ε/c') K(ū|v̄)` with `u_n = v_m + ε`, where `c' = c`
/// for `K` and `c' = -c` for `K̄`. Returns `(limit at ε = 0, predicted value)`
/// with the prediction
///
/// ```text
/// K:  f(ū_n,u_n) f(v_m,v̄_m) K_{n-1,m-1}(ū_n|v̄_m)
/// K̄:  f(u_n,ū_n) f(v̄_m,v_m) K̄_{n-1,m-1}(ū_n|v̄_m)
/// ```
///
/// evaluated at `u_n = v_m`. Only `ū_n`, `v̄` are read from the inputs; the last
/// element of `u` is ignored.
pub fn residue_check(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, conj: bool) -> Result<(Scalar, Scalar)> {
    let (n, m) = (u.len(), v.len());
    if n == 0 || m == 0 {
        return Err(Error::Cardinality("residue needs nonempty sets".into()));
    }
    let u_rest = &u[..n - 1];
    let vm = &v[m - 1];
    let cc = if conj { -c } else { c.clone() };
    let degree = 2 * (n + m);
    let wanted = 4 * (n + m) + 3;
    let held_out = 3;
    let mut samples = Vec::with_capacity(wanted + held_out);
    let mut k: i64 = 1;
    while samples.len() < wanted + held_out {
        // small ε of both signs
        let eps = Scalar::ratio(if k % 2 == 0 { k } else { -k }, 1009).expect("nonzero");
        k += 1;
        if k > 100_000 {
            return Err(Error::Degenerate("ran out of regular sample points".into()));
        }
        let mut uu = u_rest.to_vec();
        uu.push(vm + &eps);
        match izergin_impl(z, &uu, v, c, Variant::VSide, conj) {
            Ok(val) => samples.push((eps.clone(), &eps / &cc * val)),
            Err(Error::Pole { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    let (fit, check) = samples.split_at(wanted);
    let rf = rational_interpolate(fit, degree)?;
    for (x, y) in check {
        if &rf.eval(x)? != y {
            return Err(Error::Degenerate(format!("interpolant misses held-out point {x}")));
        }
    }
    let limit = rf
        .eval(&Scalar::zero())
        .map_err(|_| Error::Degenerate("interpolant still singular at the collision; pole is not simple".into()))?;
    let v_rest = &v[..m - 1];
    let single = std::slice::from_ref(vm);
    let predicted = if conj {
        f_prod(single, u_rest, c)?
            * f_prod(v_rest, single, c)?
            * conj_mod_izergin(z, u_rest, v_rest, c, Variant::VSide)?
    } else {
        f_prod(u_rest, single, c)? * f_prod(single, v_rest, c)? * mod_izergin(z, u_rest, v_rest, c, Variant::VSide)?
    };
    Ok((limit, predicted))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sample_generic_seeded;
    use crate::scalar::q;

    fn sample(n: usize, m: usize, seed: u64) -> (Vec<Scalar>, Vec<Scalar>) {
        let c = Scalar::one();
        let u = sample_generic_seeded("u", n, &[], seed, 30, &c).unwrap();
        let v = sample_generic_seeded("v", m, &u, seed ^ 0x9e37, 30, &c).unwrap();
        (u.elements, v.elements)
    }

    #[test]
    fn determinant_small() {
        assert_eq!(determinant(&[]), Scalar::one());
        let m = vec![vec![q(1, 2), q(1, 3)], vec![q(1, 4), q(1, 5)]];
        assert_eq!(determinant(&m), q(1, 10) - q(1, 12));
        let m = vec![vec![q(0, 1), q(1, 1)], vec![q(1, 1), q(0, 1)]];
        assert_eq!(determinant(&m), q(-1, 1));
        let m = vec![vec![q(1, 1), q(2, 1)], vec![q(2, 1), q(4, 1)]];
        assert_eq!(determinant(&m), Scalar::zero());
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        fn cofactor(m: &[Vec<Scalar>]) -> Scalar {
            if m.is_empty() {
                return Scalar::one();
            }
            let mut acc = Scalar::zero();
            for j in 0..m.len() {
                let minor: Vec<Vec<Scalar>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|(k, _)| *k != j)
                            .map(|(_, x)| x.clone())
                            .collect()
                    })
                    .collect();
                let t = &m[0][j] * cofactor(&minor);
                if j % 2 == 0 {
                    acc += t;
                } else {
                    acc -= &t;
                }
            }
            acc
        }
        for seed in 0..20u64 {
            let n = (seed % 5) as usize + 1;
            let vals = sample_generic_seeded("x", n * n, &[], seed, 9, &q(1, 1000)).unwrap();
            let mut m: Vec<Vec<Scalar>> = vals.elements.chunks(n).map(|r| r.to_vec()).collect();
            if seed % 3 == 0 && n > 1 {
                m[0][0] = Scalar::zero(); // force a pivot swap
            }
            assert_eq!(determinant(&m), cofactor(&m));
        }
    }

    #[test]
    fn cauchy_form_matches_modified_at_z1() {
        for n in 0..5 {
            let (u, v) = sample(n, n, 40 + n as u64);
            let c = Scalar::one();
            assert_eq!(
                izergin_cauchy_form(&u, &v, &c).unwrap(),
                ordinary_izergin(&u, &v, &c).unwrap(),
                "n={n}"
            );
        }
    }

    #[test]
    fn boundary_cases() {
        let c = Scalar::one();
        let z = q(5, 3);
        let (u, v) = sample(3, 2, 4);
        for var in [Variant::VSide, Variant::USide] {
            assert_eq!(mod_izergin(&z, &u, &[], &c, var).unwrap(), Scalar::one());
            assert_eq!(
                mod_izergin(&z, &[], &v, &c, var).unwrap(),
                (Scalar::one() - &z).pow_u(2)
            );
        }
        assert_eq!(
            mod_izergin(&q(3, 1), &[q(2, 1)], &[q(0, 1)], &c, Variant::VSide).unwrap(),
            q(-3, 2)
        );
        assert_eq!(
            conj_mod_izergin(&Scalar::zero(), &[q(2, 1)], &[q(0, 1)], &c, Variant::USide).unwrap(),
            q(1, 2)
        );
        let one = Scalar::one();
        assert_eq!(
            mod_izergin(&one, &u[..1], &v, &c, Variant::VSide).unwrap(),
            Scalar::zero()
        );
        assert!(matches!(
            mod_izergin(&one, &u, &v, &c, Variant::USide),
            Err(Error::VariantUndefined(_))
        ));
        let k1 = ordinary_izergin(&u[..1], &v[..1], &c).unwrap();
        assert_eq!(k1, crate::kernel::kernel_g(&u[0], &v[0], &c).unwrap());
        assert!(matches!(ordinary_izergin(&u, &v, &c), Err(Error::Cardinality(_))));
    }

    #[test]
    fn sides_agree() {
        let c = Scalar::one();
        for seed in 0..6 {
            for n in 0..4 {
                for m in 0..4 {
                    let (u, v) = sample(n, m, seed);
                    for z in [q(2, 1), q(-3, 7), Scalar::zero()] {
                        for conj in [false, true] {
                            let a = izergin_impl(&z, &u, &v, &c, Variant::VSide, conj).unwrap();
                            let b = izergin_impl(&z, &u, &v, &c, Variant::USide, conj).unwrap();
                            assert_eq!(a, b, "n={n} m={m} z={z} conj={conj}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn partition_sums_agree() {
        let c = Scalar::one();
        let z = q(3, 2);
        for seed in 0..4 {
            let (u, v) = sample(2, 3, seed);
            for conj in [false, true] {
                let k = izergin_impl(&z, &u, &v, &c, Variant::VSide, conj).unwrap();
                assert_eq!(
                    izergin_partition_sum(&z, &u, &v, &c, PartitionSide::V, conj).unwrap(),
                    k
                );
                assert_eq!(
                    izergin_partition_sum(&z, &u, &v, &c, PartitionSide::U, conj).unwrap(),
                    k
                );
            }
        }
        let (u, v) = sample(2, 2, 9);
        let k2 = ordinary_izergin(&u, &v, &c).unwrap();
        let one = Scalar::one();
        assert_eq!(
            izergin_partition_sum(&one, &u, &v, &c, PartitionSide::V, false).unwrap(),
            k2
        );
        assert_eq!(
            izergin_partition_sum(&one, &u, &[], &c, PartitionSide::V, false).unwrap(),
            one
        );
    }

    #[test]
    fn residue_simple() {
        let c = Scalar::one();
        let (limit, pred) = residue_check(&q(2, 1), &[q(0, 1)], &[q(1, 3)], &c, false).unwrap();
        assert_eq!(limit, Scalar::one());
        assert_eq!(pred, Scalar::one());
        let (u, v) = sample(2, 2, 3);
        for conj in [false, true] {
            let (limit, pred) = residue_check(&q(2, 1), &u, &v, &c, conj).unwrap();
            assert_eq!(limit, pred);
        }
    }
}
