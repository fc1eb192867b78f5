//! Algebraic laws of the modified Izergin determinant.

use super::{Comparison, Plan, Sampler, Sizes, Value};
use crate::izergin::{
    conj_mod_izergin, izergin, izergin_cauchy_form, izergin_convolution, izergin_convolution_rhs,
    izergin_convolution_shifted, izergin_deformation_sum, izergin_partition_sum, mod_izergin, residue_check,
    PartitionSide, Variant,
};
use crate::kernel::{f_prod, negated, shifted};
use crate::scalar::Scalar;

#[derive(Debug, Clone)]
enum Z {
    Random,
    Fixed(Scalar),
}

impl Z {
    fn label(&self) -> String {
        match self {
            Z::Random => "z=random".into(),
            Z::Fixed(z) => format!("z={z}"),
        }
    }

    fn draw(&self, s: &mut Sampler) -> Scalar {
        match self {
            Z::Random => s.deformation("z"),
            Z::Fixed(z) => z.clone(),
        }
    }
}

fn k(z: &Scalar, u: &[Scalar], v: &[Scalar], c: &Scalar, conj: bool) -> crate::Result<Scalar> {
    izergin(z, u, v, c, conj)
}

fn pick(conj: bool, plain: &'static str, conjugate: &'static str) -> &'static str {
    if conj {
        conjugate
    } else {
        plain
    }
}

pub(super) fn build(plan: &mut Plan) {
    let (nmax, mmax, total) = (plan.sizes.n, plan.sizes.m, plan.sizes.total);
    let c = plan.c.clone();
    let grid: Vec<(usize, usize)> = (0..=nmax)
        .flat_map(|n| (0..=mmax).map(move |m| (n, m)))
        .filter(|(n, m)| n + m <= total)
        .collect();
    let zs = [Z::Random, Z::Fixed(Scalar::zero()), Z::Fixed(Scalar::int(2))];

    for conj in [false, true] {
        let id = pick(conj, "determinant-sides-agree", "determinant-sides-agree-conjugate");
        for z in &zs {
            for &(n, m) in grid.iter().filter(|(n, m)| *n >= 1 && *m >= 1) {
                let (z, c) = (z.clone(), c.clone());
                plan.add(id, z.label(), Sizes::nm(n, m), move |s| {
                    let z = z.draw(s);
                    let u = s.spectral("u", n)?;
                    let v = s.spectral("v", m)?;
                    let f = if conj { conj_mod_izergin } else { mod_izergin };
                    Ok(Comparison::scalars(
                        f(&z, &u, &v, &c, Variant::VSide)?,
                        f(&z, &u, &v, &c, Variant::USide)?,
                    ))
                });
            }
        }

        let id = pick(conj, "shift-between-arguments", "shift-between-arguments-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                Ok(Comparison::scalars(
                    k(&z, &shifted(&u, &-&c), &v, &c, conj)?,
                    k(&z, &u, &shifted(&v, &c), &c, conj)?,
                ))
            });
        }

        let id = pick(conj, "empty-second-argument", "empty-second-argument-conjugate");
        for n in 0..=nmax {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, 0), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                Ok(Comparison::scalars(k(&z, &u, &[], &c, conj)?, Scalar::one()))
            });
        }

        let id = pick(conj, "empty-first-argument", "empty-first-argument-conjugate");
        for m in 0..=mmax {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(0, m), move |s| {
                let z = s.deformation("z");
                let v = s.spectral("v", m)?;
                Ok(Comparison::scalars(
                    k(&z, &[], &v, &c, conj)?,
                    (Scalar::one() - &z).pow_u(m as u64),
                ))
            });
        }

        let id = pick(conj, "single-first-argument", "single-first-argument-conjugate");
        for m in 0..=mmax {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(1, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", 1)?;
                let v = s.spectral("v", m)?;
                let f = if conj { f_prod(&v, &u, &c)? } else { f_prod(&u, &v, &c)? };
                let rhs = (Scalar::one() - &z).powi(m as i64 - 1)? * (f - &z);
                Ok(Comparison::scalars(k(&z, &u, &v, &c, conj)?, rhs))
            });
        }

        let id = pick(conj, "single-second-argument", "single-second-argument-conjugate");
        for n in 0..=nmax {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, 1), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", 1)?;
                let f = if conj { f_prod(&v, &u, &c)? } else { f_prod(&u, &v, &c)? };
                Ok(Comparison::scalars(k(&z, &u, &v, &c, conj)?, f - &z))
            });
        }

        // {ū, w∓c} | {v̄, w}: the extra pair drops out with a factor -z
        let id = pick(conj, "shifted-pair-removal", "shifted-pair-removal-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                let w = s.spectral("w", 1)?.remove(0);
                let mut uu = u.clone();
                uu.push(if conj { &w + &c } else { &w - &c });
                let mut vv = v.clone();
                vv.push(w);
                Ok(Comparison::scalars(
                    k(&z, &uu, &vv, &c, conj)?,
                    -&z * k(&z, &u, &v, &c, conj)?,
                ))
            });
        }

        let id = pick(
            conj,
            "partition-expansion-second",
            "partition-expansion-second-conjugate",
        );
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                Ok(Comparison::scalars(
                    k(&z, &u, &v, &c, conj)?,
                    izergin_partition_sum(&z, &u, &v, &c, PartitionSide::V, conj)?,
                ))
            });
        }

        let id = pick(conj, "partition-expansion-first", "partition-expansion-first-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                Ok(Comparison::scalars(
                    k(&z, &u, &v, &c, conj)?,
                    izergin_partition_sum(&z, &u, &v, &c, PartitionSide::U, conj)?,
                ))
            });
        }

        // K(ū|v̄+c) = (-z)^n (1-z)^{m-n} K^{(1/z)}(v̄|ū) / f(v̄,ū), conjugate with v̄-c and f(ū,v̄)
        let id = pick(conj, "inversion", "inversion-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                let shift = if conj { -&c } else { c.clone() };
                let lhs = k(&z, &u, &shifted(&v, &shift), &c, conj)?;
                let f = if conj { f_prod(&u, &v, &c)? } else { f_prod(&v, &u, &c)? };
                let zi = z.recip().expect("z != 0");
                let rhs = (-&z).pow_u(n as u64) * (Scalar::one() - &z).powi(m as i64 - n as i64)? / f
                    * k(&zi, &v, &u, &c, conj)?;
                Ok(Comparison::scalars(lhs, rhs))
            });
        }

        let id = pick(conj, "residue", "residue-conjugate");
        for &(n, m) in grid.iter().filter(|(n, m)| (1..=3).contains(n) && (1..=3).contains(m)) {
            let c = c.clone();
            plan.add(id, "z=random", Sizes::nm(n, m), move |s| {
                let z = s.deformation("z");
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                let (limit, predicted) = residue_check(&z, &u, &v, &c, conj)?;
                Ok(Comparison::scalars(limit, predicted))
            });
        }

        let id = pick(conj, "convolution", "convolution-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z1,z2=random", Sizes::nm(n, m), move |s| {
                let (z1, z2) = (s.deformation("z1"), s.deformation("z2"));
                let l = s.index("l", n + m + 2);
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                let xi = s.spectral("xi", l)?;
                Ok(Comparison::scalars(
                    izergin_convolution(&z1, &z2, &u, &v, &xi, &c, conj)?,
                    izergin_convolution_rhs(&z1, &z2, &u, &v, &xi, &c, conj)?,
                ))
            });
        }

        let id = pick(conj, "convolution-shifted", "convolution-shifted-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z=1", Sizes::nm(n, m), move |s| {
                let l = s.index("l", n + m + 2);
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                let xi = s.spectral("xi", l)?;
                let (lhs, rhs) = izergin_convolution_shifted(&u, &v, &xi, &c, conj)?;
                Ok(Comparison::scalars(lhs, rhs))
            });
        }

        let id = pick(conj, "deformation-sum", "deformation-sum-conjugate");
        for &(n, m) in &grid {
            let c = c.clone();
            plan.add(id, "z1,z2=random", Sizes::nm(n, m), move |s| {
                let (z1, z2) = (s.deformation("z1"), s.deformation("z2"));
                let u = s.spectral("u", n)?;
                let v = s.spectral("v", m)?;
                Ok(Comparison::scalars(
                    izergin_deformation_sum(&z1, &z2, &u, &v, &c, conj)?,
                    k(&(&z2 - &z1), &u, &v, &c, conj)?,
                ))
            });
        }
    }

    for &(n, m) in &grid {
        let c = c.clone();
        plan.add("negation-gives-conjugate", "z=random", Sizes::nm(n, m), move |s| {
            let z = s.deformation("z");
            let u = s.spectral("u", n)?;
            let v = s.spectral("v", m)?;
            Ok(Comparison::scalars(
                k(&z, &negated(&u), &negated(&v), &c, false)?,
                k(&z, &u, &v, &c, true)?,
            ))
        });
    }

    for &(n, m) in &grid {
        let c = c.clone();
        plan.add("conjugate-by-transposition", "z=random", Sizes::nm(n, m), move |s| {
            let z = s.deformation("z");
            let u = s.spectral("u", n)?;
            let v = s.spectral("v", m)?;
            let rhs = (Scalar::one() - &z).powi(m as i64 - n as i64)? * k(&z, &v, &u, &c, false)?;
            Ok(Comparison::scalars(k(&z, &u, &v, &c, true)?, rhs))
        });
    }

    for &(n, m) in grid.iter().filter(|(n, m)| n < m) {
        let c = c.clone();
        plan.add("vanishes-at-z1", "z=1", Sizes::nm(n, m), move |s| {
            let u = s.spectral("u", n)?;
            let v = s.spectral("v", m)?;
            let one = Scalar::one();
            Ok(Comparison::new(
                Value::List(vec![
                    mod_izergin(&one, &u, &v, &c, Variant::VSide)?,
                    conj_mod_izergin(&one, &u, &v, &c, Variant::VSide)?,
                ]),
                Value::List(vec![Scalar::zero(), Scalar::zero()]),
            ))
        });
    }

    for n in 0..=nmax.min(mmax) {
        let c = c.clone();
        plan.add("reduces-to-ordinary", "z=1", Sizes::nm(n, n), move |s| {
            let u = s.spectral("u", n)?;
            let v = s.spectral("v", n)?;
            Ok(Comparison::scalars(
                mod_izergin(&Scalar::one(), &u, &v, &c, Variant::VSide)?,
                izergin_cauchy_form(&u, &v, &c)?,
            ))
        });
    }
}
