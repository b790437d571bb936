use serde::{Deserialize, Serialize};

use super::maps::{gauge_f3, gauge_f4, sigma_map, theta_map, FormMap};
use crate::linalg::{Mode, Scalar, Solver, SparseSystem, Subspace};
use crate::symtensor::{multinomial, MonomialBasis, NValuedForm};
use crate::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OrderVerdict {
    RigidAtOrder,
    Obstructed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Arithmetic {
    Exact,
    ModularVerified,
}

impl From<Mode> for Arithmetic {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Exact => Arithmetic::Exact,
            Mode::Probabilistic => Arithmetic::ModularVerified,
        }
    }
}

/// Dimensions of the realizable space `V_k`, the gauge image and the
/// obstruction space `H_k = V_k / (V_k ∩ gauge image)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObstructionReport {
    pub order: usize,
    pub dim_v: usize,
    pub dim_gauge_image: usize,
    pub dim_intersection: usize,
    pub dim_h: usize,
    /// The whole gauge image lies in `V_k`.
    pub gauge_contained: bool,
    pub verdict: OrderVerdict,
    pub arithmetic: Arithmetic,
}

/// Index tables shared by the order-`k` systems: the generator map has
/// degree `d`, realizable tensors degree `d + 1`.
struct Layout {
    n: usize,
    a: usize,
    lo: usize,
    hi: usize,
    /// `raise[m][γ]` = index of `x^m x_γ` in degree `d + 1`.
    raise: Vec<Vec<usize>>,
}

impl Layout {
    fn new(gen: &FormMap) -> Self {
        let (n, d) = (gen.tangent_dim(), gen.degree());
        let lo = MonomialBasis::get(n, d);
        let hi = MonomialBasis::get(n, d + 1);
        let raise = (0..lo.len())
            .map(|m| {
                (0..n)
                    .map(|g| {
                        let mut e = lo.exps(m).to_vec();
                        e[g] += 1;
                        hi.index_of(&e).expect("raised degree")
                    })
                    .collect()
            })
            .collect();
        Layout { n, a: gen.normal_dim(), lo: lo.len(), hi: hi.len(), raise }
    }

    fn n_r(&self) -> usize {
        self.a * self.hi
    }
}

/// `R_{m + γ} - gen(p_γ)_m = 0` over unknowns `[R | p_0 .. p_{n-1}]`, all in
/// polarized coordinates.
fn system_e(layout: &Layout, gen_rows: &[Vec<(usize, Scalar)>], h: usize) -> SparseSystem {
    let n_r = layout.n_r();
    let mut sys = SparseSystem::new(n_r + layout.n * h);
    for mu in 0..layout.a {
        for m in 0..layout.lo {
            let g = &gen_rows[mu * layout.lo + m];
            for gamma in 0..layout.n {
                let r = mu * layout.hi + layout.raise[m][gamma];
                let row = std::iter::once((r, Scalar::from_integer(1.into())))
                    .chain(g.iter().map(|(j, v)| (n_r + gamma * h + j, -v.clone())));
                sys.push_row(row);
            }
        }
    }
    sys
}

/// The same system with `R` replaced by the gauge image `Φ(g)`; unknowns
/// `[p_0 .. p_{n-1} | g]`.
fn system_e_gauge(
    layout: &Layout,
    gen_rows: &[Vec<(usize, Scalar)>],
    h: usize,
    phi_rows: &[Vec<(usize, Scalar)>],
    ng: usize,
) -> SparseSystem {
    let off = layout.n * h;
    let mut sys = SparseSystem::new(off + ng);
    for mu in 0..layout.a {
        for m in 0..layout.lo {
            let g = &gen_rows[mu * layout.lo + m];
            for gamma in 0..layout.n {
                let s = mu * layout.hi + layout.raise[m][gamma];
                let row = g
                    .iter()
                    .map(|(j, v)| (gamma * h + j, -v.clone()))
                    .chain(phi_rows[s].iter().map(|(j, v)| (off + j, v.clone())));
                sys.push_row(row);
            }
        }
    }
    sys
}

fn tower(order: usize, gen: &FormMap, gauge: Option<&FormMap>, solver: &Solver) -> Result<ObstructionReport> {
    let layout = Layout::new(gen);
    let h = gen.domain_dim();
    let gen_rows = gen.polarized_rows();
    let rank_ep = layout.n * gen.rank(solver)?;
    let rank_e = solver.rank(&system_e(&layout, &gen_rows, h))?;
    let dim_v = layout.n_r() + rank_ep - rank_e;
    let (dim_gauge_image, dim_intersection, gauge_contained) = match gauge {
        None => (0, 0, true),
        Some(phi) => {
            let rank_phi = phi.rank(solver)?;
            let e2 = system_e_gauge(&layout, &gen_rows, h, &phi.polarized_rows(), phi.domain_dim());
            let rank_e2 = solver.rank(&e2)?;
            (rank_phi, rank_phi + rank_ep - rank_e2, rank_e2 == rank_ep)
        }
    };
    let dim_h = dim_v - dim_intersection;
    Ok(ObstructionReport {
        order,
        dim_v,
        dim_gauge_image,
        dim_intersection,
        dim_h,
        gauge_contained,
        verdict: if dim_h == 0 { OrderVerdict::RigidAtOrder } else { OrderVerdict::Obstructed },
        arithmetic: solver.mode.into(),
    })
}

/// The realizable space of the generator map, exactly, in polynomial
/// coordinates of `S^{d+1} T* ⊗ N`: the projection of the solution space of
/// the full system onto its `R` unknowns.
pub fn realizable_space(gen: &FormMap) -> Result<Subspace> {
    let layout = Layout::new(gen);
    let n_r = layout.n_r();
    let kernel = Solver::exact().kernel(&system_e(&layout, &gen.polarized_rows(), gen.domain_dim()))?;
    let hi = MonomialBasis::get(layout.n, gen.degree() + 1);
    let mults: Vec<Scalar> = (0..layout.hi).map(|s| multinomial(hi.exps(s))).collect();
    let projected = kernel
        .basis_vectors()
        .into_iter()
        .map(|v| v[..n_r].iter().enumerate().map(|(i, x)| x * &mults[i % layout.hi]).collect())
        .collect();
    Ok(Subspace::span(n_r, projected))
}

/// `V₃` exactly.
pub fn realizable_f3(q: &NValuedForm) -> Result<Subspace> {
    realizable_space(&sigma_map(q))
}

/// Order 3: `H₃ = V₃ / (V₃ ∩ Im Φ)`.
pub fn obstruction(q: &NValuedForm, solver: &Solver) -> Result<ObstructionReport> {
    tower(3, &sigma_map(q), Some(&gauge_f3(q).map), solver)
}

/// Order 4 in frames where `F₃ = 0`: `H₄ = V₄ / (V₄ ∩ Im Φ₄)`.
pub fn obstruction_f4(q: &NValuedForm, solver: &Solver) -> Result<ObstructionReport> {
    tower(4, &theta_map(q), Some(&gauge_f4(q).map), solver)
}

/// Order 5 in frames where `F₃ = F₄ = 0`; there is no residual gauge, so
/// `H₅ = V₅`.
pub fn residual_f5(q: &NValuedForm, solver: &Solver) -> Result<ObstructionReport> {
    tower(5, &gauge_f4(q).map, None, solver)
}
