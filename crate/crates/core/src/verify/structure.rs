//! R-matrix identities and exchange relations of the monodromy entries, for
//! both the plain and the twisted family.

use super::{Comparison, Plan, Sampler, Sizes, Value};
use crate::chain::{permutation, r_matrix, Matrix, OperatorFamily};
use crate::error::Result;
use crate::izergin::izergin;
use crate::kernel::{f_prod, kernel_f, kernel_g, shifted};
use crate::partition::{select, SplitSpace};
use crate::scalar::Scalar;

fn unit(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m.set(i, j, Scalar::one());
    m
}

fn family(s: &mut Sampler, sites: usize, twisted: bool) -> Result<OperatorFamily> {
    let chain = s.chain(sites)?;
    if twisted {
        let p = s.twist()?;
        OperatorFamily::twisted(&chain, &p)
    } else {
        Ok(OperatorFamily::plain(&chain))
    }
}

/// `op_ij(x_1) op_ij(x_2) ⋯` as one operator.
fn product(fam: &OperatorFamily, i: usize, j: usize, xs: &[Scalar]) -> Matrix {
    let mut acc = Matrix::identity(fam.chain().dim());
    for x in xs {
        acc = &acc * &fam.entry(i, j, x);
    }
    acc
}

fn label(twisted: bool) -> &'static str {
    if twisted {
        "family=nu"
    } else {
        "family=t"
    }
}

pub(super) fn build(plan: &mut Plan) {
    let sizes = plan.sizes;
    let c = plan.c.clone();

    {
        let c = c.clone();
        plan.add("yang-baxter", "", Sizes::default(), move |s| {
            let x = s.spectral("u", 3)?;
            let (u, v, w) = (&x[0], &x[1], &x[2]);
            let i2 = Matrix::identity(2);
            let p23 = i2.kron(&permutation());
            let r12 = |a: &Scalar| r_matrix(a, &c).kron(&i2);
            let r23 = |a: &Scalar| i2.kron(&r_matrix(a, &c));
            let r13 = |a: &Scalar| &(&p23 * &r12(a)) * &p23;
            let lhs = &(&r12(&(u - v)) * &r13(&(u - w))) * &r23(&(v - w));
            let rhs = &(&r23(&(v - w)) * &r13(&(u - w))) * &r12(&(u - v));
            Ok(Comparison::operators(lhs, rhs))
        });
    }

    for (id, product_form) in [("gl2-invariance-sum", false), ("gl2-invariance-product", true)] {
        let c = c.clone();
        plan.add(id, "", Sizes::default(), move |s| {
            let u = s.spectral("u", 1)?.remove(0);
            let k = Matrix::from_rows(vec![
                vec![s.deformation("k11"), s.deformation("k12")],
                vec![s.deformation("k21"), s.deformation("k22")],
            ]);
            let i2 = Matrix::identity(2);
            let kk = if product_form {
                k.kron(&k)
            } else {
                &k.kron(&i2) + &i2.kron(&k)
            };
            let r = r_matrix(&u, &c);
            Ok(Comparison::operators(&r * &kk, &kk * &r))
        });
    }

    for twisted in [false, true] {
        for n_sites in 1..=sizes.sites {
            let c = c.clone();
            plan.add("rtt", label(twisted), Sizes::chain(n_sites, 0, 0), move |s| {
                let fam = family(s, n_sites, twisted)?;
                let x = s.spectral("u", 2)?;
                let (u, v) = (&x[0], &x[1]);
                let (tu, tv) = (fam.monodromy(u), fam.monodromy(v));
                let i2 = Matrix::identity(2);
                let ih = Matrix::identity(fam.chain().dim());
                let mut ta = Matrix::zeros(4 * ih.rows(), 4 * ih.rows());
                let mut tb = ta.clone();
                for i in 0..2 {
                    for j in 0..2 {
                        ta = &ta + &unit(i, j).kron(&i2).kron(tu.entry(i + 1, j + 1));
                        tb = &tb + &i2.kron(&unit(i, j)).kron(tv.entry(i + 1, j + 1));
                    }
                }
                let r = r_matrix(&(u - v), &c).kron(&ih);
                Ok(Comparison::operators(&(&r * &ta) * &tb, &(&tb * &ta) * &r))
            });
        }

        let n_sites = sizes.sites.max(1);
        for (i, j, k, l) in (0..16).map(|b| (1 + (b >> 3 & 1), 1 + (b >> 2 & 1), 1 + (b >> 1 & 1), 1 + (b & 1))) {
            let c = c.clone();
            let variant = format!("{},t{i}{j},t{k}{l}", label(twisted));
            plan.add("general-commutator", variant, Sizes::chain(n_sites, 1, 1), move |s| {
                let fam = family(s, n_sites, twisted)?;
                let x = s.spectral("u", 2)?;
                let (u, v) = (&x[0], &x[1]);
                let a = fam.entry(i, j, u);
                let b = fam.entry(k, l, v);
                let lhs = &(&a * &b) - &(&b * &a);
                let rhs = (&(&fam.entry(k, j, v) * &fam.entry(i, l, u)) - &(&fam.entry(k, j, u) * &fam.entry(i, l, v)))
                    .scale(&kernel_g(u, v, &c)?);
                Ok(Comparison::operators(lhs, rhs))
            });
        }

        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            plan.add(
                "equal-entries-commute",
                format!("{},t{i}{j}", label(twisted)),
                Sizes::chain(n_sites, 1, 1),
                move |s| {
                    let fam = family(s, n_sites, twisted)?;
                    let x = s.spectral("u", 2)?;
                    let (a, b) = (fam.entry(i, j, &x[0]), fam.entry(i, j, &x[1]));
                    Ok(Comparison::operators(&a * &b, &b * &a))
                },
            );
        }

        {
            let c = c.clone();
            plan.add(
                "exchange-11-12",
                label(twisted),
                Sizes::chain(n_sites, 1, 1),
                move |s| {
                    let fam = family(s, n_sites, twisted)?;
                    let x = s.spectral("u", 2)?;
                    let (u, v) = (&x[0], &x[1]);
                    let lhs = &fam.entry(1, 1, u) * &fam.entry(1, 2, v);
                    let rhs = &(&fam.entry(1, 2, v) * &fam.entry(1, 1, u)).scale(&kernel_f(v, u, &c)?)
                        + &(&fam.entry(1, 2, u) * &fam.entry(1, 1, v)).scale(&kernel_g(u, v, &c)?);
                    Ok(Comparison::operators(lhs, rhs))
                },
            );
        }
        {
            let c = c.clone();
            plan.add(
                "exchange-22-12",
                label(twisted),
                Sizes::chain(n_sites, 1, 1),
                move |s| {
                    let fam = family(s, n_sites, twisted)?;
                    let x = s.spectral("u", 2)?;
                    let (u, v) = (&x[0], &x[1]);
                    let lhs = &fam.entry(2, 2, u) * &fam.entry(1, 2, v);
                    let rhs = &(&fam.entry(1, 2, v) * &fam.entry(2, 2, u)).scale(&kernel_f(u, v, &c)?)
                        + &(&fam.entry(1, 2, u) * &fam.entry(2, 2, v)).scale(&kernel_g(v, u, &c)?);
                    Ok(Comparison::operators(lhs, rhs))
                },
            );
        }
        {
            let c = c.clone();
            plan.add(
                "commutator-21-12",
                label(twisted),
                Sizes::chain(n_sites, 1, 1),
                move |s| {
                    let fam = family(s, n_sites, twisted)?;
                    let x = s.spectral("u", 2)?;
                    let (u, v) = (&x[0], &x[1]);
                    let (a, b) = (fam.entry(2, 1, u), fam.entry(1, 2, v));
                    let lhs = &(&a * &b) - &(&b * &a);
                    let rhs = (&(&fam.entry(1, 1, v) * &fam.entry(2, 2, u))
                        - &(&fam.entry(1, 1, u) * &fam.entry(2, 2, v)))
                        .scale(&kernel_g(u, v, &c)?);
                    Ok(Comparison::operators(lhs, rhs))
                },
            );
        }

        // op_ii(ū) op_12(v̄) = (-1)^n Σ_{#w̄_I=n} K(...) f(...) op_12(w̄_II) op_ii(w̄_I)
        for diag in [1usize, 2] {
            let id = if diag == 1 {
                "multiple-exchange-11"
            } else {
                "multiple-exchange-22"
            };
            for n in 1..=sizes.n {
                for m in 0..=sizes.m {
                    let c = c.clone();
                    plan.add(id, label(twisted), Sizes::chain(n_sites, n, m), move |s| {
                        let fam = family(s, n_sites, twisted)?;
                        let u = s.spectral("u", n)?;
                        let v = s.spectral("v", m)?;
                        let lhs = &product(&fam, diag, diag, &u) * &product(&fam, 1, 2, &v);
                        let mut w = u.clone();
                        w.extend(v.iter().cloned());
                        let mut rhs = Matrix::zeros(lhs.rows(), lhs.cols());
                        let sign = if n % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                        for sp in SplitSpace::new(n + m, 2, Some(&[n, m]))?.iter() {
                            let (wi, wii) = (select(&w, sp.part(0)), select(&w, sp.part(1)));
                            let coeff = if diag == 1 {
                                izergin(&Scalar::one(), &u, &shifted(&wi, &-&c), &c, true)? * f_prod(&wii, &wi, &c)?
                            } else {
                                izergin(&Scalar::one(), &u, &shifted(&wi, &c), &c, false)? * f_prod(&wi, &wii, &c)?
                            };
                            if coeff.is_zero() {
                                continue;
                            }
                            let op = &product(&fam, 1, 2, &wii) * &product(&fam, diag, diag, &wi);
                            rhs = &rhs + &op.scale(&(&sign * &coeff));
                        }
                        Ok(Comparison::operators(lhs, rhs))
                    });
                }
            }
        }
    }

    for n_sites in 1..=sizes.sites {
        plan.add(
            "highest-weight-vector",
            "family=t",
            Sizes::chain(n_sites, 1, 0),
            move |s| {
                let fam = family(s, n_sites, false)?;
                let u = s.spectral("u", 1)?.remove(0);
                let (l1, l2) = fam.chain().vacuum_weights(&u);
                let vac = fam.chain().vacuum();
                let zero = vec![Scalar::zero(); vac.len()];
                let scaled = |x: &Scalar| vac.iter().map(|a| a * x).collect::<Vec<_>>();
                let mut lhs = Vec::new();
                let mut rhs = Vec::new();
                for (i, j, want) in [(1, 1, scaled(&l1)), (2, 2, scaled(&l2)), (2, 1, zero.clone())] {
                    lhs.extend(fam.entry(i, j, &u).apply(&vac));
                    rhs.extend(want);
                }
                for (i, j, want) in [(1, 1, scaled(&l1)), (2, 2, scaled(&l2)), (1, 2, zero.clone())] {
                    lhs.extend(fam.entry(i, j, &u).apply_left(&vac));
                    rhs.extend(want);
                }
                Ok(Comparison::new(Value::State(lhs), Value::State(rhs)))
            },
        );
    }
}
