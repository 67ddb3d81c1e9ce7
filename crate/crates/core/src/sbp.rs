//! Gauss-Lobatto quadrature and the summation-by-parts operators on the
//! reference element [−1, 1].

use crate::error::{Error, Result};

/// Largest degree for which the operators are exercised by the test suite.
pub const MAX_TESTED_DEGREE: usize = 8;

/// Gauss-Lobatto rule of degree `k`: k+1 nodes including both endpoints.
#[derive(Clone, Debug, PartialEq)]
pub struct QuadratureRule {
    pub degree: usize,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Σ ω_j f(ξ_j).
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Returns (P_k(x), P'_k(x)).
fn legendre_with_derivative(k: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    if k == 0 {
        return (1.0, 0.0);
    }
    for n in 1..k {
        let nf = n as f64;
        let p2 = ((2.0 * nf + 1.0) * x * p1 - nf * p0) / (nf + 1.0);
        p0 = p1;
        p1 = p2;
    }
    let kf = k as f64;
    let dp = if x.abs() == 1.0 {
        x.powi(k as i32 + 1) * kf * (kf + 1.0) / 2.0
    } else {
        kf * (x * p1 - p0) / (x * x - 1.0)
    };
    (p1, dp)
}

/// Builds the Gauss-Lobatto rule with k+1 points.
///
/// Interior nodes are the roots of P'_k, found by Newton iteration from
/// Chebyshev-Gauss-Lobatto guesses and then symmetrized about 0.
pub fn gauss_lobatto(k: usize) -> Result<QuadratureRule> {
    if k < 1 {
        return Err(Error::UnsupportedDegree(k));
    }
    let n = k + 1;
    let kf = k as f64;
    let mut nodes = vec![0.0; n];
    nodes[0] = -1.0;
    nodes[k] = 1.0;
    for (j, node) in nodes.iter_mut().enumerate().take(k).skip(1) {
        let mut x = -(std::f64::consts::PI * j as f64 / kf).cos();
        for _ in 0..100 {
            let (p, dp) = legendre_with_derivative(k, x);
            // P'' from the Legendre equation
            let d2p = (2.0 * x * dp - kf * (kf + 1.0) * p) / (1.0 - x * x);
            let dx = dp / d2p;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        *node = x;
    }
    for j in 0..n / 2 {
        let a = 0.5 * (nodes[k - j] - nodes[j]);
        nodes[j] = -a;
        nodes[k - j] = a;
    }
    if k.is_multiple_of(2) {
        nodes[k / 2] = 0.0;
    }
    let weights = nodes
        .iter()
        .map(|&x| {
            let (p, _) = legendre_with_derivative(k, x);
            2.0 / (kf * (kf + 1.0) * p * p)
        })
        .collect();
    Ok(QuadratureRule { degree: k, nodes, weights })
}

/// Small dense row-major square matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseMatrix {
    n: usize,
    data: Vec<f64>,
}

impl DenseMatrix {
    pub fn zeros(n: usize) -> Self {
        Self { n, data: vec![0.0; n * n] }
    }

    pub fn diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m[(i, i)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn row(&self, r: usize) -> &[f64] {
        &self.data[r * self.n..(r + 1) * self.n]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.n);
        for r in 0..self.n {
            for c in 0..self.n {
                t[(c, r)] = self[(r, c)];
            }
        }
        t
    }

    pub fn matmul(&self, other: &Self) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out[(r, c)] = (0..n).map(|i| self[(r, i)] * other[(i, c)]).sum();
            }
        }
        out
    }

    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.data.iter().zip(&other.data).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max)
    }
}

impl std::ops::Index<(usize, usize)> for DenseMatrix {
    type Output = f64;
    #[inline]
    fn index(&self, (r, c): (usize, usize)) -> &f64 {
        &self.data[r * self.n + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for DenseMatrix {
    #[inline]
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut f64 {
        &mut self.data[r * self.n + c]
    }
}

impl std::ops::Add for &DenseMatrix {
    type Output = DenseMatrix;
    fn add(self, o: &DenseMatrix) -> DenseMatrix {
        DenseMatrix {
            n: self.n,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Differentiation, mass, stiffness and boundary matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct SbpMatrices {
    pub d: DenseMatrix,
    pub m: DenseMatrix,
    pub s: DenseMatrix,
    pub b: DenseMatrix,
    /// Boundary indicators τ_j: −1 at the left node, +1 at the right, 0 inside.
    pub tau: Vec<f64>,
}

fn barycentric_weights(nodes: &[f64]) -> Vec<f64> {
    (0..nodes.len())
        .map(|j| {
            let prod: f64 = nodes
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, &xl)| nodes[j] - xl)
                .product();
            1.0 / prod
        })
        .collect()
}

/// D_jl = L'_l(ξ_j), M = diag(ω), S = MD, B = diag(τ).
///
/// The diagonal of D is set to minus the off-diagonal row sum so that
/// D annihilates constants to rounding.
pub fn build_sbp(rule: &QuadratureRule) -> SbpMatrices {
    let n = rule.len();
    let x = &rule.nodes;
    let lam = barycentric_weights(x);
    let mut d = DenseMatrix::zeros(n);
    for j in 0..n {
        let mut diag = 0.0;
        for l in 0..n {
            if l != j {
                let v = lam[l] / lam[j] / (x[j] - x[l]);
                d[(j, l)] = v;
                diag -= v;
            }
        }
        d[(j, j)] = diag;
    }
    let m = DenseMatrix::diagonal(&rule.weights);
    let s = m.matmul(&d);
    let mut tau = vec![0.0; n];
    tau[0] = -1.0;
    tau[n - 1] = 1.0;
    let b = DenseMatrix::diagonal(&tau);
    SbpMatrices { d, m, s, b, tau }
}

/// D·values.
pub fn differentiate(matrices: &SbpMatrices, values: &[f64]) -> Result<Vec<f64>> {
    let n = matrices.d.dim();
    if values.len() != n {
        return Err(Error::DimensionMismatch { expected: n, got: values.len() });
    }
    Ok((0..n)
        .map(|r| matrices.d.row(r).iter().zip(values).map(|(a, b)| a * b).sum())
        .collect())
}

/// Values of all Lagrange basis polynomials on `nodes` at `x`.
pub fn lagrange_basis_at(nodes: &[f64], x: f64) -> Vec<f64> {
    (0..nodes.len())
        .map(|j| {
            nodes
                .iter()
                .enumerate()
                .filter(|&(l, _)| l != j)
                .map(|(_, &xl)| (x - xl) / (nodes[j] - xl))
                .product()
        })
        .collect()
}

/// Quadrature rule plus operators for one polynomial degree, shared by the
/// solver and the limiters.
#[derive(Clone, Debug)]
pub struct SbpOperator {
    pub rule: QuadratureRule,
    pub matrices: SbpMatrices,
    /// ∫ L_j(ξ) ξ dξ, exact; yields the first Legendre moment of a nodal
    /// polynomial.
    pub first_moment: Vec<f64>,
}

impl SbpOperator {
    pub fn new(k: usize) -> Result<Self> {
        let rule = gauss_lobatto(k)?;
        let matrices = build_sbp(&rule);
        // k+2 Lobatto points integrate degree 2k+1 exactly, enough for L_j·ξ.
        let fine = gauss_lobatto(k + 1)?;
        let mut first_moment = vec![0.0; k + 1];
        for (&xf, &wf) in fine.nodes.iter().zip(&fine.weights) {
            for (acc, lj) in first_moment.iter_mut().zip(lagrange_basis_at(&rule.nodes, xf)) {
                *acc += wf * lj * xf;
            }
        }
        Ok(Self { rule, matrices, first_moment })
    }

    pub fn degree(&self) -> usize {
        self.rule.degree
    }

    pub fn nodes_per_element(&self) -> usize {
        self.rule.len()
    }

    #[inline]
    pub fn weights(&self) -> &[f64] {
        &self.rule.weights
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_vec_close(a: &[f64], b: &[f64], tol: f64) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() <= tol, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn low_order_rules() {
        let r1 = gauss_lobatto(1).unwrap();
        assert_vec_close(&r1.nodes, &[-1.0, 1.0], 0.0);
        assert_vec_close(&r1.weights, &[1.0, 1.0], 1e-15);

        let r2 = gauss_lobatto(2).unwrap();
        assert_vec_close(&r2.nodes, &[-1.0, 0.0, 1.0], 0.0);
        assert_vec_close(&r2.weights, &[1.0 / 3.0, 4.0 / 3.0, 1.0 / 3.0], 1e-15);

        let r3 = gauss_lobatto(3).unwrap();
        let a = 1.0 / 5.0_f64.sqrt();
        assert_vec_close(&r3.nodes, &[-1.0, -a, a, 1.0], 1e-15);
        assert_vec_close(&r3.weights, &[1.0 / 6.0, 5.0 / 6.0, 5.0 / 6.0, 1.0 / 6.0], 1e-15);
    }

    #[test]
    fn degree_zero_rejected() {
        assert!(matches!(gauss_lobatto(0), Err(Error::UnsupportedDegree(0))));
    }

    #[test]
    fn rules_are_exact_and_symmetric() {
        for k in 1..=MAX_TESTED_DEGREE {
            let r = gauss_lobatto(k).unwrap();
            assert!(r.nodes.windows(2).all(|w| w[0] < w[1]));
            assert!((r.weights.iter().sum::<f64>() - 2.0).abs() < 1e-13);
            for j in 0..=k {
                assert_eq!(r.nodes[j], -r.nodes[k - j]);
                assert!(r.weights[j] > 0.0);
            }
            for m in 0..=(2 * k - 1) {
                let exact = if m % 2 == 1 { 0.0 } else { 2.0 / (m as f64 + 1.0) };
                let got = r.integrate(|x| x.powi(m as i32));
                assert!((got - exact).abs() < 1e-12, "k={k} m={m}: {got} vs {exact}");
            }
        }
    }

    #[test]
    fn low_order_differentiation_matrices() {
        let s1 = build_sbp(&gauss_lobatto(1).unwrap());
        assert_vec_close(s1.d.row(0), &[-0.5, 0.5], 1e-15);
        assert_vec_close(s1.d.row(1), &[-0.5, 0.5], 1e-15);
        let s2 = build_sbp(&gauss_lobatto(2).unwrap());
        assert_vec_close(s2.d.row(0), &[-1.5, 2.0, -0.5], 1e-14);
        assert_vec_close(s2.d.row(1), &[-0.5, 0.0, 0.5], 1e-14);
        assert_vec_close(s2.d.row(2), &[0.5, -2.0, 1.5], 1e-14);
    }

    #[test]
    fn differentiation_is_exact_for_polynomials() {
        for k in 1..=MAX_TESTED_DEGREE {
            let rule = gauss_lobatto(k).unwrap();
            let ops = build_sbp(&rule);
            for m in 0..=k {
                let vals: Vec<f64> = rule.nodes.iter().map(|x| x.powi(m as i32)).collect();
                let expect: Vec<f64> = rule
                    .nodes
                    .iter()
                    .map(|x| if m == 0 { 0.0 } else { m as f64 * x.powi(m as i32 - 1) })
                    .collect();
                assert_vec_close(&differentiate(&ops, &vals).unwrap(), &expect, 1e-11);
            }
        }
    }

    #[test]
    fn differentiate_examples() {
        let rule = gauss_lobatto(2).unwrap();
        let ops = build_sbp(&rule);
        assert_vec_close(&differentiate(&ops, &[3.0; 3]).unwrap(), &[0.0; 3], 1e-15);
        assert_vec_close(&differentiate(&ops, &rule.nodes).unwrap(), &[1.0; 3], 1e-14);
        assert_vec_close(&differentiate(&ops, &[1.0, 0.0, 1.0]).unwrap(), &[-2.0, 0.0, 2.0], 1e-14);
        assert!(matches!(
            differentiate(&ops, &[1.0, 2.0]),
            Err(Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn first_moment_matches_closed_form() {
        // ∫ ξ·ξ = 2/3 and ∫ 1·ξ = 0
        for k in 1..=5 {
            let op = SbpOperator::new(k).unwrap();
            let lin: f64 = op.first_moment.iter().zip(&op.rule.nodes).map(|(c, x)| c * x).sum();
            let cst: f64 = op.first_moment.iter().sum();
            assert!((lin - 2.0 / 3.0).abs() < 1e-14);
            assert!(cst.abs() < 1e-14);
        }
    }
}
