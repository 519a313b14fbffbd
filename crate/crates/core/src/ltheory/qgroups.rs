//! Symmetric and quadratic structures on `X = C ⊗ C` over the standard
//! free resolution `W` of Z over Z[Z_2].
//!
//! `W_s = Z[Z_2]` with `d_s = 1 + (−1)^s T`. An element of `X_m` is stored
//! as a vector in the Kronecker basis of [`tensor_layout`]; its `(p, q)`
//! block read as a matrix `M` of shape `rank C_q × rank C_p` with
//! `M[j][i]` the coefficient of `e_i ⊗ e_j`. The transposition is
//! `T(e_i ⊗ e_j) = (−1)^{pq} ε e_j ⊗ e_i`, so `(Tφ)[q,p] = (−1)^{pq} ε φ[p,q]ᵗ`.
//!
//! Symmetric complex, degree `k`: `φ = (φ_s)_{s≥0}`, `φ_s ∈ X_{k+s}`,
//! `(dφ)_s = d_X φ_s − (−1)^k (1 + (−1)^s T) φ_{s−1}`.
//!
//! Quadratic complex, degree `k`: `ψ_s ∈ X_{k−s}`,
//! `(dψ)_s = (−1)^s d_X ψ_s + (1 + (−1)^{s+1} T) ψ_{s+1}`.

use std::fmt;

use crate::algebra::{Matrix, Ring, Scalar};
use crate::complexes::{
    cone, homology, localized_homology, sign, tensor_layout, tensor_product, ChainComplex, ChainMap,
    GroupDescription,
};
use crate::error::{Error, Result};
use crate::localize::SigmaSet;

/// A central unit with `ε̄ε = 1`; with the trivial involution, `±1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Epsilon {
    Plus,
    Minus,
}

impl Epsilon {
    pub fn from_i64(e: i64) -> Result<Epsilon> {
        match e {
            1 => Ok(Epsilon::Plus),
            -1 => Ok(Epsilon::Minus),
            _ => Err(Error::invalid("epsilon", format!("{e} is not ±1"))),
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Epsilon::Plus => 1,
            Epsilon::Minus => -1,
        }
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if *self == Epsilon::Plus { "+1" } else { "-1" })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Symmetric,
    Quadratic,
}

fn ensure_backend(c: &ChainComplex) -> Result<()> {
    let ring = c.ring();
    if ring == Ring::Integers || ring.is_field() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("Q-groups over {ring}")))
    }
}

/// `X = C ⊗ C` with the transposition.
struct Square {
    c: ChainComplex,
    x: ChainComplex,
    eps: Epsilon,
}

impl Square {
    fn new(c: &ChainComplex, eps: Epsilon) -> Result<Square> {
        ensure_backend(c)?;
        Ok(Square { c: c.clone(), x: tensor_product(c, c)?, eps })
    }

    fn ring(&self) -> Ring {
        self.c.ring()
    }

    fn rank(&self, m: i64) -> usize {
        self.x.rank(m)
    }

    /// `T` on `X_m`.
    fn t(&self, m: i64) -> Matrix {
        let ring = self.ring();
        let layout = tensor_layout(&self.c, &self.c, m);
        let mut t = Matrix::zeros(ring, self.rank(m), self.rank(m));
        for &(p, q, off, _) in &layout {
            let (rp, rq) = (self.c.rank(p), self.c.rank(q));
            let dst = layout.iter().find(|l| l.0 == q).expect("transposed block").2;
            let s = Scalar::from_i64(ring, sign(p * q) * self.eps.value());
            for i in 0..rp {
                for j in 0..rq {
                    t.set(dst + j * rp + i, off + i * rq + j, s.clone());
                }
            }
        }
        t
    }

    /// `1 + (−1)^s T` on `X_m`.
    fn norm(&self, s: i64, m: i64) -> Matrix {
        let ring = self.ring();
        let t = self.t(m).scale(&Scalar::from_i64(ring, sign(s)));
        Matrix::identity(ring, self.rank(m)).add(&t).expect("square")
    }

    fn bounds(&self) -> Option<(i64, i64)> {
        self.x.support()
    }

    /// Components `(s, m)` of the degree-`k` group, with `X_m ≠ 0`.
    fn components(&self, side: Side, k: i64) -> Vec<(i64, i64)> {
        let Some((bot, top)) = self.bounds() else {
            return Vec::new();
        };
        let range: Vec<(i64, i64)> = match side {
            Side::Symmetric => ((bot - k).max(0)..=top - k).map(|s| (s, k + s)).collect(),
            Side::Quadratic => ((k - top).max(0)..=k - bot).map(|s| (s, k - s)).collect(),
        };
        range.into_iter().filter(|&(_, m)| self.rank(m) > 0).collect()
    }

    fn group_rank(&self, side: Side, k: i64) -> usize {
        self.components(side, k).iter().map(|&(_, m)| self.rank(m)).sum()
    }

    /// Differential from degree `k` to `k − 1` of the chosen side.
    fn differential(&self, side: Side, k: i64) -> Matrix {
        let ring = self.ring();
        let src = self.components(side, k);
        let dst = self.components(side, k - 1);
        let offsets = |comps: &[(i64, i64)]| {
            let mut acc = 0;
            comps
                .iter()
                .map(|&(s, m)| {
                    let o = acc;
                    acc += self.rank(m);
                    (s, o)
                })
                .collect::<Vec<_>>()
        };
        let (so, dof) = (offsets(&src), offsets(&dst));
        let find = |s: i64| dof.iter().find(|&&(t, _)| t == s).map(|&(_, o)| o);
        let mut out = Matrix::zeros(ring, self.group_rank(side, k - 1), self.group_rank(side, k));
        let mut place = |row: usize, col: usize, block: &Matrix| {
            for i in 0..block.rows() {
                for j in 0..block.cols() {
                    let v = out.get(row + i, col + j) + block.get(i, j);
                    out.set(row + i, col + j, v);
                }
            }
        };
        for (&(s, m), &(_, col)) in src.iter().zip(&so) {
            match side {
                Side::Symmetric => {
                    if let Some(row) = find(s) {
                        place(row, col, &self.x.d(m));
                    }
                    if let Some(row) = find(s + 1) {
                        let c = Scalar::from_i64(ring, -sign(k));
                        place(row, col, &self.norm(s + 1, m).scale(&c));
                    }
                }
                Side::Quadratic => {
                    if let Some(row) = find(s) {
                        place(row, col, &self.x.d(m).scale(&Scalar::from_i64(ring, sign(s))));
                    }
                    if s >= 1 {
                        if let Some(row) = find(s - 1) {
                            place(row, col, &self.norm(s, m));
                        }
                    }
                }
            }
        }
        out
    }

    /// The three-term piece `k+1 → k → k−1` of the total complex.
    fn window(&self, side: Side, k: i64) -> Result<ChainComplex> {
        let ranks = (k - 1..=k + 1).map(|j| self.group_rank(side, j)).collect();
        ChainComplex::new(self.ring(), k - 1, ranks, vec![self.differential(side, k), self.differential(side, k + 1)])
    }

    fn block_to_matrix(&self, v: &[Scalar], m: i64, p: i64) -> Matrix {
        let q = m - p;
        let (rp, rq) = (self.c.rank(p), self.c.rank(q));
        let off = tensor_layout(&self.c, &self.c, m).iter().find(|l| l.0 == p).map(|l| l.2);
        Matrix::from_fn(self.ring(), rq, rp, |j, i| match off {
            Some(o) => v[o + i * rq + j].clone(),
            None => Scalar::zero(self.ring()),
        })
    }

    fn vector_from_blocks(&self, m: i64, blocks: &[(i64, Matrix)]) -> Result<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(self.ring()); self.rank(m)];
        let layout = tensor_layout(&self.c, &self.c, m);
        for (p, b) in blocks {
            let q = m - p;
            let (rp, rq) = (self.c.rank(*p), self.c.rank(q));
            if b.shape() != (rq, rp) {
                return Err(Error::Shape(format!(
                    "block ({p}, {q}) is {}x{}, expected {rq}x{rp}",
                    b.rows(),
                    b.cols()
                )));
            }
            if rp * rq == 0 {
                continue;
            }
            let off = layout.iter().find(|l| l.0 == *p).expect("block in layout").2;
            for i in 0..rp {
                for j in 0..rq {
                    v[off + i * rq + j] = b.get(j, i).clone();
                }
            }
        }
        Ok(v)
    }
}

/// `Q^n(C, ε)` or `Q_n(C, ε)`: degree-`n` homology of the total complex.
pub fn q_group(c: &ChainComplex, eps: Epsilon, n: i64, side: Side) -> Result<GroupDescription> {
    let sq = Square::new(c, eps)?;
    let h = homology(&sq.window(side, n)?)?;
    Ok(h.get(n).expect("degree n in window").clone())
}

/// A structure: `parts[s]` is `φ_s ∈ X_{n+s}` (symmetric) or
/// `ψ_s ∈ X_{n−s}` (quadratic).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Structure {
    pub complex: ChainComplex,
    pub eps: Epsilon,
    pub n: i64,
    pub side: Side,
    parts: Vec<Vec<Scalar>>,
}

pub type SymmetricStructure = Structure;
pub type QuadraticStructure = Structure;

impl Structure {
    /// `blocks[s]` lists `(p, M)` with `M` the `(p, q)` block of the `s`-th
    /// part; missing blocks are zero. The cycle condition is checked.
    pub fn from_blocks(
        complex: &ChainComplex,
        eps: Epsilon,
        n: i64,
        side: Side,
        blocks: &[Vec<(i64, Matrix)>],
    ) -> Result<Structure> {
        let sq = Square::new(complex, eps)?;
        let parts = blocks
            .iter()
            .enumerate()
            .map(|(s, b)| sq.vector_from_blocks(part_degree(side, n, s as i64), b))
            .collect::<Result<Vec<_>>>()?;
        let st = Structure { complex: complex.clone(), eps, n, side, parts };
        st.validate()?;
        Ok(st)
    }

    /// A 0-dimensional structure on a free module in degree 0 given by one
    /// matrix (a bilinear form on the dual basis).
    pub fn form(matrix: &Matrix, eps: Epsilon, side: Side) -> Result<Structure> {
        if !matrix.is_square() {
            return Err(Error::Shape("form matrices must be square".into()));
        }
        let c = ChainComplex::concentrated(matrix.ring(), 0, matrix.rows());
        Structure::from_blocks(&c, eps, 0, side, &[vec![(0, matrix.clone())]])
    }

    pub fn part_count(&self) -> usize {
        self.parts.len()
    }

    /// The `(p, ·)` block of part `s` as a matrix.
    pub fn block(&self, s: usize, p: i64) -> Matrix {
        let sq = Square::new(&self.complex, self.eps).expect("validated");
        let m = part_degree(self.side, self.n, s as i64);
        let zero = vec![Scalar::zero(self.complex.ring()); sq.rank(m)];
        sq.block_to_matrix(self.parts.get(s).unwrap_or(&zero), m, p)
    }

    /// The cycle condition in the total complex.
    pub fn validate(&self) -> Result<()> {
        let sq = Square::new(&self.complex, self.eps)?;
        let comps = sq.components(self.side, self.n);
        let mut v = Vec::new();
        for &(s, m) in &comps {
            match self.parts.get(s as usize) {
                Some(p) => v.extend(p.iter().cloned()),
                None => v.extend(std::iter::repeat(Scalar::zero(sq.ring())).take(sq.rank(m))),
            }
        }
        for (s, p) in self.parts.iter().enumerate() {
            let m = part_degree(self.side, self.n, s as i64);
            if p.iter().any(|x| !x.is_zero()) && !comps.iter().any(|&(t, _)| t == s as i64) {
                return Err(Error::invalid("structure", format!("part {s} lies outside X_{m}")));
            }
        }
        let d = sq.differential(self.side, self.n);
        let col = Matrix::from_fn(sq.ring(), v.len(), 1, |i, _| v[i].clone());
        if !d.mul(&col)?.is_zero() {
            return Err(Error::invalid("structure", "cycle condition fails"));
        }
        Ok(())
    }
}

fn part_degree(side: Side, n: i64, s: i64) -> i64 {
    match side {
        Side::Symmetric => n + s,
        Side::Quadratic => n - s,
    }
}

/// `φ_0 = (1 + T)ψ_0`, higher parts zero.
pub fn symmetrize(psi: &QuadraticStructure) -> Result<SymmetricStructure> {
    if psi.side != Side::Quadratic {
        return Err(Error::invalid("structure", "symmetrize expects a quadratic structure"));
    }
    psi.validate()?;
    let sq = Square::new(&psi.complex, psi.eps)?;
    let ring = sq.ring();
    let zero = vec![Scalar::zero(ring); sq.rank(psi.n)];
    let psi0 = psi.parts.first().unwrap_or(&zero);
    let col = Matrix::from_fn(ring, psi0.len(), 1, |i, _| psi0[i].clone());
    let phi0 = sq.norm(0, psi.n).mul(&col)?;
    let parts = vec![(0..phi0.rows()).map(|i| phi0.get(i, 0).clone()).collect()];
    let st = Structure { complex: psi.complex.clone(), eps: psi.eps, n: psi.n, side: Side::Symmetric, parts };
    st.validate()?;
    Ok(st)
}

/// The dual complex `C^{n−*}`: degree `r` holds `(C_{n−r})*` and
/// `d_r = (−1)^{n−r+1} d*_{n−r+1}`.
pub fn dual_complex(c: &ChainComplex, n: i64) -> Result<ChainComplex> {
    let ring = c.ring();
    let Some((lo, hi)) = c.support() else {
        return Ok(ChainComplex::zero(ring));
    };
    let ranks = (n - hi..=n - lo).map(|r| c.rank(n - r)).collect();
    ChainComplex::from_fn(ring, n - hi, ranks, |r| {
        c.d(n - r + 1).star_transpose().scale(&Scalar::from_i64(ring, sign(n - r + 1)))
    })
}

/// `φ_0` as a chain map `C^{n−*} → C` (component `r` is the `(n−r, r)` block).
pub fn phi0_map(phi: &SymmetricStructure) -> Result<ChainMap> {
    if phi.side != Side::Symmetric {
        return Err(Error::invalid("structure", "expected a symmetric structure"));
    }
    let dual = dual_complex(&phi.complex, phi.n)?;
    ChainMap::from_fn(dual, phi.complex.clone(), |r| phi.block(0, phi.n - r))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PoincareMode {
    Integral,
    Localized(SigmaSet),
}

/// Whether `φ_0: C^{n−*} → C` is a chain equivalence, integrally or after
/// localization.
pub fn is_poincare(phi: &SymmetricStructure, mode: &PoincareMode) -> Result<bool> {
    let k = cone(&phi0_map(phi)?)?;
    match mode {
        PoincareMode::Integral => Ok(homology(&k)?.is_acyclic()),
        PoincareMode::Localized(sigma) => Ok(localized_homology(&k, sigma)?.is_acyclic()),
    }
}
