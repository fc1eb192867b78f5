//! Univariate rational interpolation over the rationals.
//!
//! Given samples `(x_i, y_i)` and a degree bound `d`, finds polynomials `p`, `q`
//! of degree at most `d` with `p(x_i) = y_i q(x_i)` by solving the homogeneous
//! linear system exactly, then cancels `gcd(p, q)`.

use crate::error::{Error, KernelKind, Result};
use crate::scalar::Scalar;

/// Dense polynomial, coefficients from the constant term up, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Poly(Vec<Scalar>);

impl Poly {
    pub fn new(mut coeffs: Vec<Scalar>) -> Self {
        while coeffs.last().is_some_and(Scalar::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.0
    }

    pub fn eval(&self, x: &Scalar) -> Scalar {
        let mut acc = Scalar::zero();
        for a in self.0.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    fn lead(&self) -> &Scalar {
        self.0.last().expect("nonzero polynomial")
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return Poly::zero();
        }
        let l = self.lead().clone();
        Poly(self.0.iter().map(|a| a / &l).collect())
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut rem = self.0.clone();
        let mut quot = vec![Scalar::zero(); rem.len().saturating_sub(dd)];
        let lead = d.lead();
        while rem.len() > dd && !rem.is_empty() {
            let k = rem.len() - 1 - dd;
            let t = rem.last().expect("nonempty") / lead;
            for (i, a) in d.0.iter().enumerate() {
                rem[k + i] -= &(&t * a);
            }
            quot[k] = t;
            rem.pop();
            while rem.last().is_some_and(Scalar::is_zero) {
                rem.pop();
            }
        }
        (Poly::new(quot), Poly::new(rem))
    }

    pub fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y);
            x = y;
            y = r;
        }
        x.monic()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalFunction {
    num: Poly,
    den: Poly,
}

impl RationalFunction {
    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn eval(&self, x: &Scalar) -> Result<Scalar> {
        let d = self.den.eval(x);
        if d.is_zero() {
            return Err(Error::Pole {
                kind: KernelKind::Rational,
                left: x.clone(),
                right: Scalar::zero(),
            });
        }
        Ok(self.num.eval(x) / d)
    }
}

/// Basis of the right null space of `rows` (each row has `cols` entries).
fn null_space(mut rows: Vec<Vec<Scalar>>, cols: usize) -> Vec<Vec<Scalar>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip().expect("nonzero pivot");
        for a in rows[r].iter_mut() {
            *a *= &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let t = row[col].clone();
                for (a, b) in row.iter_mut().zip(&pivot_row) {
                    *a -= &(&t * b);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![Scalar::zero(); cols];
            v[f] = Scalar::one();
            for (k, &pc) in pivots.iter().enumerate() {
                v[pc] = -&rows[k][f];
            }
            v
        })
        .collect()
}

/// Fits a rational function with numerator and denominator degree at most
/// `degree_bound` through `samples`. Needs more than `2 * degree_bound + 1`
/// samples with distinct abscissae.
pub fn rational_interpolate(samples: &[(Scalar, Scalar)], degree_bound: usize) -> Result<RationalFunction> {
    let d = degree_bound;
    if samples.len() <= 2 * d + 1 {
        return Err(Error::Degenerate(format!(
            "{} samples cannot pin down a degree-{d} rational function",
            samples.len()
        )));
    }
    for (i, (x, _)) in samples.iter().enumerate() {
        if samples[..i].iter().any(|(y, _)| y == x) {
            return Err(Error::Degenerate(format!("repeated sample point {x}")));
        }
    }
    // unknowns: p_0..p_d, q_0..q_d
    let rows: Vec<Vec<Scalar>> = samples
        .iter()
        .map(|(x, y)| {
            let mut row = Vec::with_capacity(2 * d + 2);
            let mut pw = Scalar::one();
            let mut powers = Vec::with_capacity(d + 1);
            for _ in 0..=d {
                powers.push(pw.clone());
                pw *= x;
            }
            row.extend(powers.iter().cloned());
            row.extend(powers.iter().map(|p| -(p * y)));
            row
        })
        .collect();
    let basis = null_space(rows, 2 * d + 2);
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::Degenerate(format!("no rational function of degree <= {d} fits the samples")))?;
    let num = Poly::new(v[..=d].to_vec());
    let den = Poly::new(v[d + 1..].to_vec());
    if den.is_zero() {
        return Err(Error::Degenerate(
            "interpolated denominator vanishes identically".into(),
        ));
    }
    let g = Poly::gcd(&num, &den);
    let (num, den) = if num.is_zero() {
        (Poly::zero(), Poly::new(vec![Scalar::one()]))
    } else {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    };
    let lead = den.lead().clone();
    let rf = RationalFunction {
        num: Poly::new(num.0.iter().map(|a| a / &lead).collect()),
        den: den.monic(),
    };
    for (x, y) in samples {
        match rf.eval(x) {
            Ok(val) if &val == y => {}
            _ => {
                return Err(Error::Degenerate(format!(
                    "interpolant does not reproduce the sample at {x}"
                )))
            }
        }
    }
    Ok(rf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::q;

    fn pts(f: impl Fn(&Scalar) -> Scalar, xs: &[i64]) -> Vec<(Scalar, Scalar)> {
        xs.iter().map(|&x| (q(x, 1), f(&q(x, 1)))).collect()
    }

    #[test]
    fn recovers_square() {
        let s = pts(|x| x * x, &[-3, -1, 0, 2, 4, 5, 7]);
        let rf = rational_interpolate(&s, 2).unwrap();
        assert_eq!(rf.eval(&q(3, 1)).unwrap(), q(9, 1));
        assert_eq!(rf.denominator().degree(), Some(0));
    }

    #[test]
    fn pole_survives_reduction() {
        let s = pts(|x| (x - &q(1, 1)).recip().unwrap(), &[2, 3, 4, 5, 6, -1, -2]);
        let rf = rational_interpolate(&s, 2).unwrap();
        assert!(matches!(rf.eval(&q(1, 1)), Err(Error::Pole { .. })));
        assert_eq!(rf.eval(&q(11, 1)).unwrap(), q(1, 10));
    }

    #[test]
    fn removable_singularity_is_cancelled() {
        // (x^2 - 1)/(x - 1) sampled away from 1
        let s = pts(|x| x + &q(1, 1), &[2, 3, 4, 5, 6, 7, 8, 9, 10]);
        let rf = rational_interpolate(&s, 3).unwrap();
        assert_eq!(rf.eval(&q(1, 1)).unwrap(), q(2, 1));
    }

    #[test]
    fn too_few_or_inconsistent() {
        let s = pts(|x| x * x, &[0, 1, 2]);
        assert!(matches!(rational_interpolate(&s, 1), Err(Error::Degenerate(_))));
        let s = pts(|x| x * x * x * x, &[0, 1, 2, 3, 4, 5, 6]);
        assert!(matches!(rational_interpolate(&s, 1), Err(Error::Degenerate(_))));
        let mut s = pts(|x| x.clone(), &[0, 1, 2, 3]);
        s.push((q(1, 1), q(1, 1)));
        assert!(rational_interpolate(&s, 1).is_err());
    }

    #[test]
    fn zero_function() {
        let s = pts(|_| Scalar::zero(), &[0, 1, 2, 3, 4]);
        let rf = rational_interpolate(&s, 1).unwrap();
        assert_eq!(rf.eval(&q(9, 1)).unwrap(), Scalar::zero());
    }

    #[test]
    fn poly_gcd() {
        let a = Poly::new(vec![q(-1, 1), Scalar::zero(), q(1, 1)]); // x^2 - 1
        let b = Poly::new(vec![q(1, 1), q(1, 1)]); // x + 1
        assert_eq!(Poly::gcd(&a, &b), Poly::new(vec![q(1, 1), q(1, 1)]));
    }
}
