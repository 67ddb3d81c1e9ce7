//! Uniform structured grids and nodal DG field storage.
//!
//! Nodal states are stored on the global node lattice in row-major order:
//! node (I, J) with I = ex·(k+1) + p along x and J = ey·(k+1) + q along y
//! lives at index J·(Nx·(k+1)) + I. Every x-line of nodes is contiguous and
//! a 1D field is a single line.

use crate::error::{Error, Result};
use crate::sbp::QuadratureRule;
use crate::state::{prim_to_cons, ConservedState, GasParams, PrimitiveState};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid1D {
    pub cells: usize,
    pub xmin: f64,
    pub xmax: f64,
    pub dx: f64,
}

impl Grid1D {
    pub fn new(cells: usize, xmin: f64, xmax: f64) -> Result<Self> {
        if cells == 0 || !(xmax > xmin) {
            return Err(Error::Validation(format!(
                "grid needs at least one cell and xmax > xmin (cells = {cells}, [{xmin}, {xmax}])"
            )));
        }
        Ok(Self { cells, xmin, xmax, dx: (xmax - xmin) / cells as f64 })
    }

    /// Left face x_{i−1/2} of element `i`.
    #[inline]
    pub fn left_face(&self, i: usize) -> f64 {
        self.xmin + i as f64 * self.dx
    }

    /// x_i(ξ) = ½(x_{i−1/2} + x_{i+1/2}) + ξΔx/2, measured from the nearer
    /// face so that shared end nodes coincide exactly.
    #[inline]
    pub fn map(&self, i: usize, xi: f64) -> f64 {
        if xi <= 0.0 {
            self.left_face(i) + (xi + 1.0) * 0.5 * self.dx
        } else {
            self.left_face(i + 1) - (1.0 - xi) * 0.5 * self.dx
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid2D {
    pub x: Grid1D,
    pub y: Grid1D,
}

impl Grid2D {
    pub fn new(nx: usize, ny: usize, bounds: [f64; 4]) -> Result<Self> {
        Ok(Self {
            x: Grid1D::new(nx, bounds[0], bounds[1])?,
            y: Grid1D::new(ny, bounds[2], bounds[3])?,
        })
    }

    pub fn elements(&self) -> usize {
        self.x.cells * self.y.cells
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Mesh {
    Line(Grid1D),
    Plane(Grid2D),
}

impl Mesh {
    pub fn dimension(&self) -> usize {
        match self {
            Mesh::Line(_) => 1,
            Mesh::Plane(_) => 2,
        }
    }

    pub fn elements(&self) -> usize {
        match self {
            Mesh::Line(g) => g.cells,
            Mesh::Plane(g) => g.elements(),
        }
    }

    /// Grid along x (the only grid in 1D).
    pub fn x_grid(&self) -> &Grid1D {
        match self {
            Mesh::Line(g) => g,
            Mesh::Plane(g) => &g.x,
        }
    }

    pub fn y_grid(&self) -> Option<&Grid1D> {
        match self {
            Mesh::Line(_) => None,
            Mesh::Plane(g) => Some(&g.y),
        }
    }
}

/// Physical coordinate of node `node` of element `element`.
pub fn node_coordinate(grid: &Grid1D, element: usize, node: usize, rule: &QuadratureRule) -> Result<f64> {
    if element >= grid.cells {
        return Err(Error::IndexOutOfRange { index: element, len: grid.cells });
    }
    let xi = rule
        .nodes
        .get(node)
        .ok_or(Error::IndexOutOfRange { index: node, len: rule.len() })?;
    Ok(grid.map(element, *xi))
}

/// Nodal conserved states over a 1D or 2D mesh.
#[derive(Clone, Debug, PartialEq)]
pub struct DgField {
    mesh: Mesh,
    degree: usize,
    nodes: Vec<ConservedState>,
}

impl DgField {
    pub fn new(mesh: Mesh, degree: usize, nodes: Vec<ConservedState>) -> Result<Self> {
        let expected = storage_len(&mesh, degree);
        if nodes.len() != expected {
            return Err(Error::DimensionMismatch { expected, got: nodes.len() });
        }
        Ok(Self { mesh, degree, nodes })
    }

    pub fn constant(mesh: Mesh, degree: usize, state: ConservedState) -> Self {
        let n = storage_len(&mesh, degree);
        Self { mesh, degree, nodes: vec![state; n] }
    }

    pub fn zeros_like(&self) -> Self {
        Self { mesh: self.mesh, degree: self.degree, nodes: vec![ConservedState::ZERO; self.nodes.len()] }
    }

    pub fn mesh(&self) -> &Mesh {
        &self.mesh
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn nodes_per_element_1d(&self) -> usize {
        self.degree + 1
    }

    pub fn nodes(&self) -> &[ConservedState] {
        &self.nodes
    }

    pub fn nodes_mut(&mut self) -> &mut [ConservedState] {
        &mut self.nodes
    }

    pub fn into_nodes(self) -> Vec<ConservedState> {
        self.nodes
    }

    /// Number of nodes along one x-line.
    pub fn row_len(&self) -> usize {
        self.mesh.x_grid().cells * (self.degree + 1)
    }

    /// Number of x-lines (1 in 1D).
    pub fn rows(&self) -> usize {
        match &self.mesh {
            Mesh::Line(_) => 1,
            Mesh::Plane(g) => g.y.cells * (self.degree + 1),
        }
    }

    /// Storage index of node (p, q) of element (ex, ey); pass ey = q = 0 in 1D.
    #[inline]
    pub fn index(&self, ex: usize, ey: usize, p: usize, q: usize) -> usize {
        let n = self.degree + 1;
        (ey * n + q) * self.row_len() + ex * n + p
    }

    /// Splits a flat element index into (ex, ey).
    #[inline]
    pub fn element_coords(&self, element: usize) -> (usize, usize) {
        let nx = self.mesh.x_grid().cells;
        (element % nx, element / nx)
    }

    /// Storage indices of one element's nodes, p fastest.
    pub fn element_indices(&self, element: usize) -> Vec<usize> {
        let n = self.degree + 1;
        let (ex, ey) = self.element_coords(element);
        match self.mesh {
            Mesh::Line(_) => (0..n).map(|p| self.index(ex, 0, p, 0)).collect(),
            Mesh::Plane(_) => (0..n * n).map(|i| self.index(ex, ey, i % n, i / n)).collect(),
        }
    }

    pub fn get(&self, index: usize) -> ConservedState {
        self.nodes[index]
    }

    pub fn set(&mut self, index: usize, state: ConservedState) {
        self.nodes[index] = state;
    }

    /// self += a·x
    pub fn axpy(&mut self, a: f64, x: &DgField) {
        debug_assert_eq!(self.nodes.len(), x.nodes.len());
        for (s, o) in self.nodes.iter_mut().zip(&x.nodes) {
            *s += *o * a;
        }
    }

    pub fn scale(&mut self, a: f64) {
        for s in &mut self.nodes {
            *s = *s * a;
        }
    }

    /// Physical coordinates (x, y) of every stored node, in storage order.
    pub fn coordinates(&self, rule: &QuadratureRule) -> Vec<(f64, f64)> {
        let n = self.degree + 1;
        let gx = self.mesh.x_grid();
        let xs: Vec<f64> = (0..gx.cells)
            .flat_map(|e| rule.nodes.iter().map(move |&xi| gx.map(e, xi)))
            .collect();
        match self.mesh {
            Mesh::Line(_) => xs.into_iter().map(|x| (x, 0.0)).collect(),
            Mesh::Plane(g) => {
                let mut out = Vec::with_capacity(self.nodes.len());
                for ey in 0..g.y.cells {
                    for q in 0..n {
                        let y = g.y.map(ey, rule.nodes[q]);
                        out.extend(xs.iter().map(|&x| (x, y)));
                    }
                }
                out
            }
        }
    }

    /// Evaluates the 1D DG polynomial at `x` (clamped to the domain).
    pub fn evaluate_1d(&self, rule: &QuadratureRule, x: f64) -> Result<ConservedState> {
        let Mesh::Line(g) = self.mesh else {
            return Err(Error::Validation("evaluate_1d called on a 2D field".into()));
        };
        let e = (((x - g.xmin) / g.dx).floor().max(0.0) as usize).min(g.cells - 1);
        let xi = ((x - g.left_face(e)) / g.dx * 2.0 - 1.0).clamp(-1.0, 1.0);
        let basis = crate::sbp::lagrange_basis_at(&rule.nodes, xi);
        let mut out = ConservedState::ZERO;
        for (p, b) in basis.iter().enumerate() {
            out += self.nodes[self.index(e, 0, p, 0)] * *b;
        }
        Ok(out)
    }
}

fn storage_len(mesh: &Mesh, degree: usize) -> usize {
    let n = degree + 1;
    match mesh {
        Mesh::Line(g) => g.cells * n,
        Mesh::Plane(g) => g.elements() * n * n,
    }
}

/// Quadrature cell mean: ½Σ ω_j w_j in 1D, ¼Σ ω_pω_q w_{p,q} in 2D.
///
/// The 2D mean is accumulated as r_0 + Σ_q ½ω_q (r_q − r_0) over the row
/// means r_q, so data that is constant in y gives exactly the 1D mean.
pub fn cell_average(field: &DgField, rule: &QuadratureRule, element: usize) -> ConservedState {
    let n = field.degree + 1;
    let (ex, ey) = field.element_coords(element);
    let w = &rule.weights;
    let row_mean = |q: usize| {
        let mut acc = ConservedState::ZERO;
        for p in 0..n {
            acc += field.nodes[field.index(ex, ey, p, q)] * (0.5 * w[p]);
        }
        acc
    };
    match field.mesh {
        Mesh::Line(_) => row_mean(0),
        Mesh::Plane(_) => {
            let r0 = row_mean(0);
            let mut acc = r0;
            for q in 1..n {
                acc += (row_mean(q) - r0) * (0.5 * w[q]);
            }
            acc
        }
    }
}

/// Relative inward shift of element end nodes when sampling initial data.
const END_NODE_SHIFT: f64 = 1e-9;

/// Collocates prim_to_cons ∘ ic at the mapped Gauss-Lobatto nodes. End
/// nodes sample the data a hair inside their own element, so a jump that
/// sits on an element face gives each element its one-sided state. In 1D
/// the initial condition receives y = 0.
pub fn project_initial_condition(
    mesh: Mesh,
    rule: &QuadratureRule,
    gas: GasParams,
    ic: &dyn Fn(f64, f64) -> PrimitiveState,
) -> Result<DgField> {
    let mut field = DgField::constant(mesh, rule.degree, ConservedState::ZERO);
    let n = rule.len();
    let sample: Vec<f64> = rule
        .nodes
        .iter()
        .map(|&xi| if xi.abs() == 1.0 { xi * (1.0 - 2.0 * END_NODE_SHIFT) } else { xi })
        .collect();
    let gx = *mesh.x_grid();
    let xs: Vec<f64> = (0..gx.cells * n).map(|i| gx.map(i / n, sample[i % n])).collect();
    let ys: Vec<f64> = match mesh {
        Mesh::Line(_) => vec![0.0],
        Mesh::Plane(g) => (0..g.y.cells * n).map(|j| g.y.map(j / n, sample[j % n])).collect(),
    };
    let row_len = xs.len();
    for (j, &y) in ys.iter().enumerate() {
        for (i, &x) in xs.iter().enumerate() {
            let prim = ic(x, y);
            field.nodes[j * row_len + i] = prim_to_cons(&prim, gas).map_err(|e| {
                Error::Validation(format!("inadmissible initial data at ({x}, {y}): {e}"))
            })?;
        }
    }
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sbp::gauss_lobatto;

    #[test]
    fn coordinates_of_nodes() {
        let r2 = gauss_lobatto(2).unwrap();
        let g = Grid1D::new(1, 0.0, 1.0).unwrap();
        assert_eq!(node_coordinate(&g, 0, 0, &r2).unwrap(), 0.0);
        assert_eq!(node_coordinate(&g, 0, 1, &r2).unwrap(), 0.5);
        let r1 = gauss_lobatto(1).unwrap();
        let g = Grid1D::new(100, 0.0, 1.0).unwrap();
        assert!((node_coordinate(&g, 9, 1, &r1).unwrap() - 0.10).abs() < 1e-15);
        assert!(node_coordinate(&g, 100, 0, &r1).is_err());
        assert!(node_coordinate(&g, 0, 2, &r1).is_err());
    }

    #[test]
    fn adjacent_faces_coincide() {
        let r = gauss_lobatto(3).unwrap();
        let g = Grid1D::new(37, -0.35, 1.0).unwrap();
        for e in 0..36 {
            let right = node_coordinate(&g, e, 3, &r).unwrap();
            let left = node_coordinate(&g, e + 1, 0, &r).unwrap();
            assert_eq!(right, left);
            let xs: Vec<f64> = (0..4).map(|j| node_coordinate(&g, e, j, &r).unwrap()).collect();
            assert!(xs.windows(2).all(|w| w[0] < w[1]));
        }
    }

    #[test]
    fn cell_average_examples() {
        let a = ConservedState::new(1.0, 2.0, 3.0, 10.0);
        let b = ConservedState::new(2.0, -1.0, 0.0, 12.0);
        let c = ConservedState::new(4.0, 0.0, 1.0, 20.0);
        let g = Mesh::Line(Grid1D::new(1, 0.0, 1.0).unwrap());
        let r1 = gauss_lobatto(1).unwrap();
        let f = DgField::new(g, 1, vec![a, b]).unwrap();
        assert!((cell_average(&f, &r1, 0) - (a + b) * 0.5).max_abs() < 1e-15);
        let r2 = gauss_lobatto(2).unwrap();
        let f = DgField::new(g, 2, vec![a, b, c]).unwrap();
        assert!((cell_average(&f, &r2, 0) - (a + b * 4.0 + c) * (1.0 / 6.0)).max_abs() < 1e-14);
        let f = DgField::constant(Mesh::Plane(Grid2D::new(2, 3, [0.0, 1.0, 0.0, 1.0]).unwrap()), 2, a);
        for e in 0..6 {
            assert!((cell_average(&f, &r2, e) - a).max_abs() < 1e-14);
        }
    }

    #[test]
    fn storage_layout_and_lengths() {
        let g2 = Grid2D::new(3, 2, [0.0, 3.0, 0.0, 2.0]).unwrap();
        let f = DgField::constant(Mesh::Plane(g2), 2, ConservedState::ZERO);
        assert_eq!(f.nodes().len(), 3 * 2 * 9);
        assert_eq!(f.row_len(), 9);
        assert_eq!(f.rows(), 6);
        let idx = f.element_indices(4); // ex = 1, ey = 1
        assert_eq!(idx[0], 3 * 9 + 3);
        assert_eq!(idx[1], 3 * 9 + 4);
        assert_eq!(idx[3], 4 * 9 + 3);
        assert!(DgField::new(Mesh::Plane(g2), 2, vec![ConservedState::ZERO; 5]).is_err());
    }

    #[test]
    fn projection_collocates() {
        let gas = GasParams::default();
        let r = gauss_lobatto(2).unwrap();
        let g = Grid1D::new(32, 0.0, 1.0).unwrap();
        let ic = |x: f64, _y: f64| {
            PrimitiveState::new(2.0 + (2.0 * std::f64::consts::PI * x).sin(), 0.5, 0.0, 1.0)
        };
        let f = project_initial_condition(Mesh::Line(g), &r, gas, &ic).unwrap();
        for e in [0, 7, 31] {
            for j in 0..3 {
                let x = node_coordinate(&g, e, j, &r).unwrap();
                let expect = prim_to_cons(&ic(x, 0.0), gas).unwrap();
                let got = f.get(f.index(e, 0, j, 0));
                if j == 1 {
                    assert_eq!(got, expect);
                } else {
                    // end nodes sample a hair inside the element
                    for c in 0..4 {
                        assert!((got.component(c) - expect.component(c)).abs() < 1e-9);
                    }
                }
            }
        }
        let bad = |_x: f64, _y: f64| PrimitiveState::new(-1.0, 0.0, 0.0, 1.0);
        assert!(project_initial_condition(Mesh::Line(g), &r, gas, &bad).is_err());
    }

    #[test]
    fn face_jump_gives_each_element_its_own_side() {
        let gas = GasParams::default();
        let r = gauss_lobatto(1).unwrap();
        let g = Grid1D::new(2, 0.0, 1.0).unwrap();
        let ic = |x: f64, _y: f64| PrimitiveState::new(if x > 0.5 { 1.0 } else { 10.0 }, 0.0, 0.0, 1.0);
        let f = project_initial_condition(Mesh::Line(g), &r, gas, &ic).unwrap();
        assert_eq!(f.get(f.index(0, 0, 1, 0)).d, 10.0);
        assert_eq!(f.get(f.index(1, 0, 0, 0)).d, 1.0);
    }

    #[test]
    fn polynomial_cell_average_is_exact() {
        let r = gauss_lobatto(3).unwrap();
        let g = Grid1D::new(4, 0.0, 2.0).unwrap();
        let mesh = Mesh::Line(g);
        let mut f = DgField::constant(mesh, 3, ConservedState::ZERO);
        let coords = f.coordinates(&r);
        for (i, (x, _)) in coords.iter().enumerate() {
            f.set(i, ConservedState::new(x.powi(3), 0.0, 0.0, 0.0));
        }
        for e in 0..4 {
            let (a, b) = (g.left_face(e), g.left_face(e + 1));
            let exact = (b.powi(4) - a.powi(4)) / 4.0 / g.dx;
            assert!((cell_average(&f, &r, e).d - exact).abs() < 1e-13);
        }
    }

    #[test]
    fn evaluate_reproduces_nodes() {
        let r = gauss_lobatto(2).unwrap();
        let g = Grid1D::new(5, 0.0, 1.0).unwrap();
        let gas = GasParams::default();
        let ic = |x: f64, _| PrimitiveState::new(1.0 + x * x, 0.1, 0.0, 1.0);
        let f = project_initial_condition(Mesh::Line(g), &r, gas, &ic).unwrap();
        let x = node_coordinate(&g, 2, 1, &r).unwrap();
        assert!((f.evaluate_1d(&r, x).unwrap() - f.get(f.index(2, 0, 1, 0))).max_abs() < 1e-14);
    }
}
