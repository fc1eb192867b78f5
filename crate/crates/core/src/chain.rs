//! Brute-force oracle: the inhomogeneous XXX spin-1/2 chain as exact dense
//! linear algebra on `(C²)^{⊗N}`.
//!
//! Basis conventions: index 0 of `C²` is spin up, site `k` (1-based) is bit
//! `k-1` of a basis index, and the vacuum `|0⟩` is basis vector 0. The
//! monodromy is `T(u) = L_N(u-θ_N) ⋯ L_1(u-θ_1)` in the auxiliary space with
//! `L(x)_{ij} = (x/c) δ_ij + E_ji` acting on one site.
//!
//! The twisted entries `ν_ij(u) = μ (A₀ T(u) B₀)_ij` carry one factor `μ`
//! instead of two factors `√μ`, so everything stays rational.

use std::fmt::Write as _;
use std::ops::{Add, Mul, Sub};

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::{kernel_h, ModelParams};
use crate::scalar::Scalar;

pub const MAX_SITES: usize = 10;

/// Dense exact matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = Scalar::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * s).collect(),
        }
    }

    /// Kronecker product; `self` acts on the more significant factor.
    pub fn kron(&self, other: &Matrix) -> Matrix {
        let mut out = Matrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        let b = other.get(k, l);
                        if !b.is_zero() {
                            out.set(i * other.rows + k, j * other.cols + l, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = Scalar::zero();
                for (a, x) in self.data[i * self.cols..(i + 1) * self.cols].iter().zip(v) {
                    if !a.is_zero() && !x.is_zero() {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// Row vector times matrix.
    pub fn apply_left(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.rows, "dimension mismatch");
        let mut out = vec![Scalar::zero(); self.cols];
        for (i, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(&self.data[i * self.cols..(i + 1) * self.cols]) {
                if !a.is_zero() {
                    *o += x * a;
                }
            }
        }
        out
    }

    /// SHA-256 of the canonical `p/q` entry listing, hex encoded.
    pub fn digest(&self) -> String {
        let mut s = format!("{}x{}:", self.rows, self.cols);
        for x in &self.data {
            let _ = write!(s, "{x},");
        }
        hex::encode(Sha256::digest(s.as_bytes()))
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &Matrix {
    type Output = Matrix;
    fn sub(self, rhs: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

/// SHA-256 digest of a state's canonical entry listing.
pub fn state_digest(v: &[Scalar]) -> String {
    let mut s = format!("{}:", v.len());
    for x in v {
        let _ = write!(s, "{x},");
    }
    hex::encode(Sha256::digest(s.as_bytes()))
}

pub fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `E_ij` on `C²`.
fn unit(i: usize, j: usize) -> Matrix {
    let mut m = Matrix::zeros(2, 2);
    m.set(i, j, Scalar::one());
    m
}

/// Permutation on `C² ⊗ C²`.
pub fn permutation() -> Matrix {
    let mut p = Matrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            p = &p + &unit(i, j).kron(&unit(j, i));
        }
    }
    p
}

/// `R(u) = (u/c) I + P` on `C² ⊗ C²`.
pub fn r_matrix(u: &Scalar, c: &Scalar) -> Matrix {
    &Matrix::identity(4).scale(&(u / c)) + &permutation()
}

/// One entry of the Lax operator as a 2×2 matrix on the site.
fn lax_entry(x: &Scalar, c: &Scalar, i: usize, j: usize) -> Matrix {
    let mut m = unit(j, i);
    if i == j {
        m = &m + &Matrix::identity(2).scale(&(x / c));
    }
    m
}

/// 2×2 block matrix of operators in the auxiliary space.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Monodromy {
    entries: [[Matrix; 2]; 2],
}

impl Monodromy {
    /// Entry `(i, j)` with 1-based indices as in `t_ij`.
    pub fn entry(&self, i: usize, j: usize) -> &Matrix {
        &self.entries[i - 1][j - 1]
    }

    /// The whole monodromy as one operator on `C²_aux ⊗ H`, auxiliary factor
    /// most significant.
    pub fn full(&self) -> Matrix {
        let mut out: Option<Matrix> = None;
        for i in 0..2 {
            for j in 0..2 {
                let term = unit(i, j).kron(&self.entries[i][j]);
                out = Some(match out {
                    None => term,
                    Some(acc) => &acc + &term,
                });
            }
        }
        out.expect("four terms")
    }
}

/// Inhomogeneous chain of `N` spin-1/2 sites.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    theta: Vec<Scalar>,
    c: Scalar,
}

impl Chain {
    pub fn new(theta: Vec<Scalar>, c: Scalar) -> Result<Self> {
        if theta.is_empty() || theta.len() > MAX_SITES {
            return Err(Error::Config(format!(
                "site count must be in 1..={MAX_SITES}, got {}",
                theta.len()
            )));
        }
        if c.is_zero() {
            return Err(Error::Domain("c must be nonzero".into()));
        }
        Ok(Chain { theta, c })
    }

    pub fn sites(&self) -> usize {
        self.theta.len()
    }

    pub fn dim(&self) -> usize {
        1 << self.theta.len()
    }

    pub fn theta(&self) -> &[Scalar] {
        &self.theta
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn vacuum(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[0] = Scalar::one();
        v
    }

    pub fn monodromy(&self, u: &Scalar) -> Monodromy {
        let lax = |k: usize| -> [[Matrix; 2]; 2] {
            let x = u - &self.theta[k];
            [0, 1].map(|i| [0, 1].map(|j| lax_entry(&x, &self.c, i, j)))
        };
        let mut t = lax(0);
        for k in 1..self.sites() {
            let l = lax(k);
            t = [0, 1].map(|i| [0, 1].map(|j| &l[i][0].kron(&t[0][j]) + &l[i][1].kron(&t[1][j])));
        }
        Monodromy { entries: t }
    }

    /// `(λ₁(u), λ₂(u)) = (∏ h(u,θ_k), ∏ (u-θ_k)/c)`.
    pub fn vacuum_weights(&self, u: &Scalar) -> (Scalar, Scalar) {
        let l1 = self.theta.iter().map(|t| kernel_h(u, t, &self.c)).product();
        let l2 = self.theta.iter().map(|t| (u - t) / &self.c).product();
        (l1, l2)
    }
}

/// The twist matrices without their `√μ` prefactors, and `μ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistPair {
    pub a0: [[Scalar; 2]; 2],
    pub b0: [[Scalar; 2]; 2],
    pub mu: Scalar,
}

impl TwistPair {
    pub fn det_a0(&self) -> Scalar {
        &self.a0[0][0] * &self.a0[1][1] - &self.a0[0][1] * &self.a0[1][0]
    }

    pub fn det_b0(&self) -> Scalar {
        &self.b0[0][0] * &self.b0[1][1] - &self.b0[0][1] * &self.b0[1][0]
    }
}

/// `A₀ = [[1, ρ₂/κ⁻], [ρ₁/κ⁺, 1]]`, `B₀ = [[1, ρ₁/κ⁻], [ρ₂/κ⁺, 1]]`.
pub fn twist_pair(p: &ModelParams) -> TwistPair {
    let one = Scalar::one();
    TwistPair {
        a0: [
            [one.clone(), p.rho2() / p.kappa_minus()],
            [p.rho1() / p.kappa_plus(), one.clone()],
        ],
        b0: [
            [one.clone(), p.rho1() / p.kappa_minus()],
            [p.rho2() / p.kappa_plus(), one],
        ],
        mu: p.mu(),
    }
}

/// Either the plain monodromy entries `t_ij` or the twisted `ν_ij`.
#[derive(Debug, Clone)]
pub struct OperatorFamily {
    chain: Chain,
    twist: Option<TwistPair>,
}

impl OperatorFamily {
    pub fn plain(chain: &Chain) -> Self {
        OperatorFamily {
            chain: chain.clone(),
            twist: None,
        }
    }

    pub fn twisted(chain: &Chain, params: &ModelParams) -> Result<Self> {
        if params.c() != chain.c() {
            return Err(Error::Config("chain and twist use different c".into()));
        }
        Ok(OperatorFamily {
            chain: chain.clone(),
            twist: Some(twist_pair(params)),
        })
    }

    pub fn chain(&self) -> &Chain {
        &self.chain
    }

    pub fn is_twisted(&self) -> bool {
        self.twist.is_some()
    }

    /// All four entries at `u`.
    pub fn monodromy(&self, u: &Scalar) -> Monodromy {
        let t = self.chain.monodromy(u);
        let Some(tw) = &self.twist else {
            return t;
        };
        let entries = [0, 1].map(|i| {
            [0, 1].map(|j| {
                let mut acc = Matrix::zeros(self.chain.dim(), self.chain.dim());
                for a in 0..2 {
                    for b in 0..2 {
                        let w = &tw.a0[i][a] * &tw.b0[b][j];
                        if !w.is_zero() {
                            acc = &acc + &t.entries[a][b].scale(&w);
                        }
                    }
                }
                acc.scale(&tw.mu)
            })
        });
        Monodromy { entries }
    }

    /// `t_ij(u)` or `ν_ij(u)`, 1-based indices.
    pub fn entry(&self, i: usize, j: usize, u: &Scalar) -> Matrix {
        self.monodromy(u).entries[i - 1][j - 1].clone()
    }

    /// `∏_k op_{ij}(x_k)` applied to `state`, rightmost factor `x_last`.
    pub fn apply_product(&self, i: usize, j: usize, xs: &[Scalar], state: &[Scalar]) -> Vec<Scalar> {
        let mut s = state.to_vec();
        for x in xs.iter().rev() {
            s = self.entry(i, j, x).apply(&s);
        }
        s
    }

    /// `⟨0| ∏_k op_{ij}(x_k)` as a row vector.
    pub fn dual_product(&self, i: usize, j: usize, xs: &[Scalar]) -> Vec<Scalar> {
        let mut s = self.chain.vacuum();
        for x in xs {
            s = self.entry(i, j, x).apply_left(&s);
        }
        s
    }

    /// Bethe vector `∏ op_12(v_k) |0⟩`.
    pub fn bethe_state(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.apply_product(1, 2, v, &self.chain.vacuum())
    }

    /// Dual Bethe vector `⟨0| ∏ op_21(u_k)`.
    pub fn dual_bethe_state(&self, u: &[Scalar]) -> Vec<Scalar> {
        self.dual_product(2, 1, u)
    }

    /// `⟨0| ∏ op_21(u) ∏ op_12(v) |0⟩` by explicit linear algebra.
    pub fn direct_scalar(&self, u: &[Scalar], v: &[Scalar]) -> Scalar {
        dot(&self.dual_bethe_state(u), &self.bethe_state(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::sample_generic_seeded;
    use crate::scalar::q;

    fn one() -> Scalar {
        Scalar::one()
    }

    #[test]
    fn r_at_zero_is_permutation() {
        assert_eq!(r_matrix(&Scalar::zero(), &one()), permutation());
    }

    #[test]
    fn single_site_vacuum() {
        let chain = Chain::new(vec![q(0, 1)], one()).unwrap();
        let t = chain.monodromy(&q(2, 1));
        let vac = chain.vacuum();
        assert_eq!(t.entry(1, 1).apply(&vac), vec![q(3, 1), q(0, 1)]);
        assert_eq!(t.entry(2, 2).apply(&vac), vec![q(2, 1), q(0, 1)]);
        assert_eq!(chain.vacuum_weights(&q(2, 1)), (q(3, 1), q(2, 1)));
    }

    #[test]
    fn highest_weight() {
        for n in 1..=4 {
            let theta = sample_generic_seeded("theta", n, &[], n as u64, 20, &one()).unwrap();
            let chain = Chain::new(theta.elements, one()).unwrap();
            let u = q(7, 3);
            let t = chain.monodromy(&u);
            let vac = chain.vacuum();
            assert!(t.entry(2, 1).apply(&vac).iter().all(Scalar::is_zero));
            assert!(t.entry(1, 2).apply_left(&vac).iter().all(Scalar::is_zero));
            let (l1, l2) = chain.vacuum_weights(&u);
            let scaled = |s: &Scalar| vac.iter().map(|x| x * s).collect::<Vec<_>>();
            assert_eq!(t.entry(1, 1).apply(&vac), scaled(&l1));
            assert_eq!(t.entry(2, 2).apply(&vac), scaled(&l2));
            assert_eq!(t.entry(1, 1).apply_left(&vac), scaled(&l1));
            assert_eq!(t.entry(2, 2).apply_left(&vac), scaled(&l2));
        }
    }

    #[test]
    fn twist_data() {
        let id = twist_pair(&ModelParams::untwisted(one()));
        assert_eq!(id.a0, [[one(), Scalar::zero()], [Scalar::zero(), one()]]);
        assert_eq!(id.b0, id.a0);
        assert_eq!(id.mu, one());
        let p = ModelParams::new(one(), q(1, 1), q(2, 1), q(2, 1), q(3, 1)).unwrap();
        let tw = twist_pair(&p);
        assert_eq!(tw.mu, q(3, 2));
        // det A0 = 1 - ρ₁ρ₂/(κ⁺κ⁻) = 1/μ
        assert_eq!(tw.det_a0(), tw.mu.recip().unwrap());
        assert_eq!(tw.det_b0(), tw.mu.recip().unwrap());
    }

    #[test]
    fn untwisted_family_is_plain() {
        let chain = Chain::new(vec![q(1, 3), q(-2, 5)], one()).unwrap();
        let nu = OperatorFamily::twisted(&chain, &ModelParams::untwisted(one())).unwrap();
        let t = OperatorFamily::plain(&chain);
        assert_eq!(nu.monodromy(&q(4, 7)), t.monodromy(&q(4, 7)));
    }

    #[test]
    fn empty_products() {
        let chain = Chain::new(vec![q(1, 3)], one()).unwrap();
        let t = OperatorFamily::plain(&chain);
        assert_eq!(t.bethe_state(&[]), chain.vacuum());
        assert_eq!(t.direct_scalar(&[], &[]), one());
        assert!(Chain::new(vec![], one()).is_err());
    }

    #[test]
    fn digests_are_stable() {
        let m = r_matrix(&q(1, 2), &one());
        assert_eq!(m.digest(), r_matrix(&q(1, 2), &one()).digest());
        assert_ne!(m.digest(), r_matrix(&q(1, 3), &one()).digest());
        assert_eq!(state_digest(&[q(1, 2)]).len(), 64);
    }
}
