//! Finite-dimensional algebras over the rationals, given by structure constants.
//!
//! A [`BasedAlgebra`] fixes a basis `e_0 … e_{D-1}` with
//! `e_i e_j = Σ_k c[i][j][k] e_k`, the coordinates of the unit, and an optional
//! anti-involution `*` (row `i` of the star matrix holds the coordinates of
//! `e_i*`). From these it derives the trace form `Tr(x) = trace(m_x)`, the Gram
//! matrix of `T₂(x, y) = Tr(xy)`, its inverse the copairing `p ∈ A ⊗ A`, and the
//! cyclic triple form `T₃(x, y, z) = Tr(xyz)`.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::grouptheory::{FiniteGroup, IrrepData};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("expected a vector of length {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("the trace form is degenerate; the algebra is not semisimple")]
    NotSemisimple,
    #[error("antisymmetric star is only built natively for n = 2 (got n = {n})")]
    UnsupportedStar { n: usize },
    #[error("cannot combine an algebra with a star and one without")]
    StarMismatch,
    #[error("multiplication is not associative on basis triple ({i}, {j}, {k})")]
    NotAssociative { i: usize, j: usize, k: usize },
    #[error("unit law fails on basis vector {i}")]
    UnitLaw { i: usize },
    #[error("star axiom violated: {0}")]
    StarAxiom(&'static str),
    #[error("invalid block: {0}")]
    InvalidBlock(String),
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasedAlgebra {
    dim: usize,
    consts: Vec<Rational>,
    /// Nonzero `(k, c[i][j][k])` for each pair `i * dim + j`.
    products: Vec<Vec<(usize, Rational)>>,
    unit: Vec<Rational>,
    star: Option<Vec<Rational>>,
    traces: Vec<Rational>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarKind {
    None,
    Transpose,
    Anti,
}

impl BasedAlgebra {
    /// Builds and validates an algebra: associativity, unit laws and, when a
    /// star is given, the *-algebra axioms.
    pub fn from_structure_constants(
        dim: usize,
        consts: Vec<Rational>,
        unit: Vec<Rational>,
        star: Option<Vec<Rational>>,
    ) -> Result<Self, AlgebraError> {
        if dim == 0 {
            return Err(AlgebraError::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        check_len(&consts, dim * dim * dim)?;
        check_len(&unit, dim)?;
        if let Some(s) = &star {
            check_len(s, dim * dim)?;
        }
        let algebra = Self::assemble(dim, consts, unit, star);
        algebra.check_axioms()?;
        if algebra.has_star() {
            algebra.check_star_axioms()?;
        }
        Ok(algebra)
    }

    fn assemble(
        dim: usize,
        consts: Vec<Rational>,
        unit: Vec<Rational>,
        star: Option<Vec<Rational>>,
    ) -> Self {
        let products: Vec<Vec<(usize, Rational)>> = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter(|&k| !consts[ij * dim + k].is_zero())
                    .map(|k| (k, consts[ij * dim + k].clone()))
                    .collect()
            })
            .collect();
        let traces = (0..dim)
            .map(|i| {
                (0..dim)
                    .map(|j| consts[(i * dim + j) * dim + j].clone())
                    .sum()
            })
            .collect();
        BasedAlgebra {
            dim,
            consts,
            products,
            unit,
            star,
            traces,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn unit(&self) -> &[Rational] {
        &self.unit
    }

    pub fn has_star(&self) -> bool {
        self.star.is_some()
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.consts[(i * self.dim + j) * self.dim + k]
    }

    /// Coordinates of `e_i`.
    pub fn basis_vector(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        v[i] = Rational::one();
        v
    }

    /// Nonzero terms of `e_i e_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        &self.products[i * self.dim + j]
    }

    pub fn multiply(&self, x: &[Rational], y: &[Rational]) -> Result<Vec<Rational>, AlgebraError> {
        check_len(x, self.dim)?;
        check_len(y, self.dim)?;
        let mut out = vec![Rational::zero(); self.dim];
        for (i, xi) in x.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, v)| !v.is_zero()) {
                let coeff = xi * yj;
                for (k, c) in self.basis_product(i, j) {
                    out[*k] += &coeff * c;
                }
            }
        }
        Ok(out)
    }

    /// `Tr(m_x)`, the trace of left multiplication by `x`.
    pub fn trace_form(&self, x: &[Rational]) -> Result<Rational, AlgebraError> {
        check_len(x, self.dim)?;
        Ok(x.iter().zip(&self.traces).map(|(a, b)| a * b).sum())
    }

    /// `Tr(m_{e_i})` for every basis vector.
    pub fn basis_traces(&self) -> &[Rational] {
        &self.traces
    }

    /// Row-major `D × D` matrix of `T₂(e_i, e_j) = Tr(e_i e_j)`.
    pub fn gram(&self) -> Vec<Rational> {
        let d = self.dim;
        let mut g = vec![Rational::zero(); d * d];
        for i in 0..d {
            for j in 0..d {
                g[i * d + j] = self
                    .basis_product(i, j)
                    .iter()
                    .map(|(k, c)| c * &self.traces[*k])
                    .sum();
            }
        }
        g
    }

    /// `p[a][b]` with `p = Σ p[a][b] e_a ⊗ e_b`: the inverse of the Gram matrix.
    pub fn copairing(&self) -> Result<Vec<Rational>, AlgebraError> {
        invert(&self.gram(), self.dim).ok_or(AlgebraError::NotSemisimple)
    }

    /// `(1 ⊗ *) p`, the copairing placed on an edge whose triangles disagree.
    pub fn twisted_copairing(&self) -> Result<Option<Vec<Rational>>, AlgebraError> {
        let Some(star) = &self.star else {
            return Ok(None);
        };
        let p = self.copairing()?;
        Ok(Some(mat_mul(&p, star, self.dim)))
    }

    /// Row-major star matrix: row `i` holds the coordinates of `e_i*`.
    pub fn star_matrix(&self) -> Option<&[Rational]> {
        self.star.as_deref()
    }

    pub fn star(&self, x: &[Rational]) -> Option<Result<Vec<Rational>, AlgebraError>> {
        let star = self.star.as_ref()?;
        Some(check_len(x, self.dim).map(|_| {
            let d = self.dim;
            (0..d)
                .map(|j| (0..d).map(|i| &x[i] * &star[i * d + j]).sum())
                .collect()
        }))
    }

    pub fn t3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<Rational, AlgebraError> {
        let xy = self.multiply(x, y)?;
        self.trace_form(&self.multiply(&xy, z)?)
    }

    /// All nonzero `Tr(e_a e_b e_c)` as `(a, b, c, value)`, lexicographic in `(a, b, c)`.
    pub fn triple_trace_table(&self) -> Vec<(usize, usize, usize, Rational)> {
        let d = self.dim;
        let mut out = Vec::new();
        let mut row = vec![Rational::zero(); d];
        for a in 0..d {
            for b in 0..d {
                row.iter_mut().for_each(Rational::set_zero);
                for (k, ck) in self.basis_product(a, b) {
                    for (c, slot) in row.iter_mut().enumerate() {
                        for (l, cl) in self.basis_product(*k, c) {
                            *slot += ck * cl * &self.traces[*l];
                        }
                    }
                }
                for (c, v) in row.iter().enumerate() {
                    if !v.is_zero() {
                        out.push((a, b, c, v.clone()));
                    }
                }
            }
        }
        out
    }

    /// Exhaustive associativity and unit-law check over basis vectors.
    pub fn check_axioms(&self) -> Result<(), AlgebraError> {
        let d = self.dim;
        for i in 0..d {
            let e = self.basis_vector(i);
            if self.multiply(&self.unit, &e)? != e || self.multiply(&e, &self.unit)? != e {
                return Err(AlgebraError::UnitLaw { i });
            }
        }
        let mut left = vec![Rational::zero(); d];
        let mut right = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    left.iter_mut().for_each(Rational::set_zero);
                    right.iter_mut().for_each(Rational::set_zero);
                    for (m, c) in self.basis_product(i, j) {
                        for (n, c2) in self.basis_product(*m, k) {
                            left[*n] += c * c2;
                        }
                    }
                    for (m, c) in self.basis_product(j, k) {
                        for (n, c2) in self.basis_product(i, *m) {
                            right[*n] += c * c2;
                        }
                    }
                    if left != right {
                        return Err(AlgebraError::NotAssociative { i, j, k });
                    }
                }
            }
        }
        Ok(())
    }

    /// `** = id`, `(e_i e_j)* = e_j* e_i*`, `Tr(e_i*) = Tr(e_i)` and
    /// `(* ⊗ 1) p = (1 ⊗ *) p`. An algebra without a star passes trivially.
    pub fn check_star_axioms(&self) -> Result<(), AlgebraError> {
        let Some(star) = &self.star else {
            return Ok(());
        };
        let d = self.dim;
        if mat_mul(star, star, d) != identity(d) {
            return Err(AlgebraError::StarAxiom("star is not an involution"));
        }
        let rows: Vec<Vec<Rational>> = (0..d).map(|i| star[i * d..(i + 1) * d].to_vec()).collect();
        for i in 0..d {
            for j in 0..d {
                let mut lhs = vec![Rational::zero(); d];
                for (k, c) in self.basis_product(i, j) {
                    for (l, s) in rows[*k].iter().enumerate() {
                        lhs[l] += c * s;
                    }
                }
                if lhs != self.multiply(&rows[j], &rows[i])? {
                    return Err(AlgebraError::StarAxiom("star is not anti-multiplicative"));
                }
            }
            if self.trace_form(&rows[i])? != self.traces[i] {
                return Err(AlgebraError::StarAxiom("star does not preserve the trace"));
            }
        }
        let p = self.copairing()?;
        // (1 ⊗ *) p = P S and (* ⊗ 1) p = Sᵀ P.
        if mat_mul(&p, star, d) != mat_mul(&transpose(star, d), &p, d) {
            return Err(AlgebraError::StarAxiom("copairing is not star-symmetric"));
        }
        Ok(())
    }
}

fn check_len(v: &[Rational], expected: usize) -> Result<(), AlgebraError> {
    if v.len() == expected {
        Ok(())
    } else {
        Err(AlgebraError::DimensionMismatch {
            expected,
            found: v.len(),
        })
    }
}

fn identity(n: usize) -> Vec<Rational> {
    let mut m = vec![Rational::zero(); n * n];
    for i in 0..n {
        m[i * n + i] = Rational::one();
    }
    m
}

fn transpose(m: &[Rational], n: usize) -> Vec<Rational> {
    let mut t = vec![Rational::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            t[j * n + i] = m[i * n + j].clone();
        }
    }
    t
}

fn mat_mul(a: &[Rational], b: &[Rational], n: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = &a[i * n + k];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let bkj = &b[k * n + j];
                if !bkj.is_zero() {
                    out[i * n + j] += aik * bkj;
                }
            }
        }
    }
    out
}

/// Gauss–Jordan inverse of a row-major `n × n` matrix; `None` if singular.
fn invert(m: &[Rational], n: usize) -> Option<Vec<Rational>> {
    let mut a = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r * n + col].is_zero())?;
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                inv.swap(pivot * n + j, col * n + j);
            }
        }
        let scale = a[col * n + col].recip();
        for j in 0..n {
            a[col * n + j] *= &scale;
            inv[col * n + j] *= &scale;
        }
        for r in 0..n {
            if r == col || a[r * n + col].is_zero() {
                continue;
            }
            let factor = a[r * n + col].clone();
            for j in 0..n {
                let (x, y) = (a[col * n + j].clone(), inv[col * n + j].clone());
                a[r * n + j] -= &factor * x;
                inv[r * n + j] -= &factor * y;
            }
        }
    }
    Some(inv)
}

/// `k[G]` on the group-element basis, with `g* = g⁻¹`.
pub fn group_algebra(group: &FiniteGroup) -> BasedAlgebra {
    let d = group.order();
    let mut consts = vec![Rational::zero(); d * d * d];
    for i in 0..d {
        for j in 0..d {
            consts[(i * d + j) * d + group.mul(i, j)] = Rational::one();
        }
    }
    let mut unit = vec![Rational::zero(); d];
    unit[group.identity()] = Rational::one();
    let mut star = vec![Rational::zero(); d * d];
    for g in 0..d {
        star[g * d + group.inv(g)] = Rational::one();
    }
    BasedAlgebra::assemble(d, consts, unit, Some(star))
}

/// `M_n` on matrix units `e_ij` (index `i * n + j`).
///
/// `Anti` is only available for `n = 2`, with rows/columns indexed by
/// `+1, -1` and `e_ij* = i·j·e_{-j,-i}`.
pub fn matrix_algebra(n: usize, star_kind: StarKind) -> Result<BasedAlgebra, AlgebraError> {
    if n == 0 {
        return Err(AlgebraError::InvalidBlock("matrix size must be positive".into()));
    }
    if star_kind == StarKind::Anti && n != 2 {
        return Err(AlgebraError::UnsupportedStar { n });
    }
    let d = n * n;
    let mut consts = vec![Rational::zero(); d * d * d];
    for i in 0..n {
        for j in 0..n {
            for l in 0..n {
                consts[((i * n + j) * d + j * n + l) * d + i * n + l] = Rational::one();
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    for i in 0..n {
        unit[i * n + i] = Rational::one();
    }
    let star = match star_kind {
        StarKind::None => None,
        StarKind::Transpose => {
            let mut s = vec![Rational::zero(); d * d];
            for i in 0..n {
                for j in 0..n {
                    s[(i * n + j) * d + j * n + i] = Rational::one();
                }
            }
            Some(s)
        }
        StarKind::Anti => {
            // Position 0 is the index +1, position 1 is -1.
            let sign = |p: usize| if p == 0 { 1 } else { -1 };
            let mut s = vec![Rational::zero(); d * d];
            for i in 0..2 {
                for j in 0..2 {
                    let target = (1 - j) * 2 + (1 - i);
                    s[(i * 2 + j) * d + target] = int(sign(i) * sign(j));
                }
            }
            Some(s)
        }
    };
    Ok(BasedAlgebra::assemble(d, consts, unit, star))
}

/// `(k ⊕ k)^swap`: two orthogonal idempotents exchanged by the star.
pub fn swap_algebra() -> BasedAlgebra {
    let mut consts = vec![Rational::zero(); 8];
    consts[0] = Rational::one(); // e₁e₁ = e₁
    consts[7] = Rational::one(); // e₋₁e₋₁ = e₋₁
    let unit = vec![Rational::one(), Rational::one()];
    let star = vec![Rational::zero(), Rational::one(), Rational::one(), Rational::zero()];
    BasedAlgebra::assemble(2, consts, unit, Some(star))
}

fn combined_star(
    a: &BasedAlgebra,
    b: &BasedAlgebra,
    combine: impl FnOnce(&[Rational], &[Rational]) -> Vec<Rational>,
) -> Result<Option<Vec<Rational>>, AlgebraError> {
    match (&a.star, &b.star) {
        (Some(sa), Some(sb)) => Ok(Some(combine(sa, sb))),
        (None, None) => Ok(None),
        _ => Err(AlgebraError::StarMismatch),
    }
}

/// `A ⊕ B`: basis of `A` followed by basis of `B`.
pub fn direct_sum(a: &BasedAlgebra, b: &BasedAlgebra) -> Result<BasedAlgebra, AlgebraError> {
    let (da, db) = (a.dim, b.dim);
    let d = da + db;
    let star = combined_star(a, b, |sa, sb| {
        let mut s = vec![Rational::zero(); d * d];
        for i in 0..da {
            for j in 0..da {
                s[i * d + j] = sa[i * da + j].clone();
            }
        }
        for i in 0..db {
            for j in 0..db {
                s[(da + i) * d + da + j] = sb[i * db + j].clone();
            }
        }
        s
    })?;
    let mut consts = vec![Rational::zero(); d * d * d];
    for i in 0..da {
        for j in 0..da {
            for (k, c) in a.basis_product(i, j) {
                consts[(i * d + j) * d + k] = c.clone();
            }
        }
    }
    for i in 0..db {
        for j in 0..db {
            for (k, c) in b.basis_product(i, j) {
                consts[((da + i) * d + da + j) * d + da + k] = c.clone();
            }
        }
    }
    let unit = a.unit.iter().chain(&b.unit).cloned().collect();
    Ok(BasedAlgebra::assemble(d, consts, unit, star))
}

/// `A ⊗ B` on the basis `e_i ⊗ f_j` (index `i * dim B + j`), with `(a ⊗ b)* = a* ⊗ b*`.
pub fn tensor_product(a: &BasedAlgebra, b: &BasedAlgebra) -> Result<BasedAlgebra, AlgebraError> {
    let (da, db) = (a.dim, b.dim);
    let d = da * db;
    let star = combined_star(a, b, |sa, sb| {
        let mut s = vec![Rational::zero(); d * d];
        for i in 0..da {
            for k in 0..da {
                if sa[i * da + k].is_zero() {
                    continue;
                }
                for j in 0..db {
                    for l in 0..db {
                        s[(i * db + j) * d + k * db + l] = &sa[i * da + k] * &sb[j * db + l];
                    }
                }
            }
        }
        s
    })?;
    let mut consts = vec![Rational::zero(); d * d * d];
    for i1 in 0..da {
        for i2 in 0..da {
            for (k1, c1) in a.basis_product(i1, i2) {
                for j1 in 0..db {
                    for j2 in 0..db {
                        for (k2, c2) in b.basis_product(j1, j2) {
                            let (x, y, z) = (i1 * db + j1, i2 * db + j2, k1 * db + k2);
                            consts[(x * d + y) * d + z] = c1 * c2;
                        }
                    }
                }
            }
        }
    }
    let mut unit = vec![Rational::zero(); d];
    for i in 0..da {
        for j in 0..db {
            unit[i * db + j] = &a.unit[i] * &b.unit[j];
        }
    }
    Ok(BasedAlgebra::assemble(d, consts, unit, star))
}

/// One summand of a semisimple *-algebra, classified by its star type.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Block {
    /// `M_n` with transpose star.
    Plain(usize),
    /// `(M_n ⊕ M_n)^swap ≅ M_n ⊗ (k ⊕ k)^swap`.
    Swap(usize),
    /// `M_n` with antisymmetric star, `n` even: `M_{n/2} ⊗ M₂^anti`.
    Anti(usize),
}

impl Block {
    pub fn dim(self) -> usize {
        match self {
            Block::Plain(n) | Block::Anti(n) => n * n,
            Block::Swap(n) => 2 * n * n,
        }
    }
}

/// Formal direct sum of classified *-blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredAlgebra {
    blocks: Vec<Block>,
}

impl StructuredAlgebra {
    pub fn new(blocks: Vec<Block>) -> Result<Self, AlgebraError> {
        for b in &blocks {
            match *b {
                Block::Plain(0) | Block::Swap(0) | Block::Anti(0) => {
                    return Err(AlgebraError::InvalidBlock(format!("{b:?}: size must be positive")))
                }
                Block::Anti(n) if n % 2 != 0 => {
                    return Err(AlgebraError::InvalidBlock(format!("{b:?}: size must be even")))
                }
                _ => {}
            }
        }
        Ok(StructuredAlgebra { blocks })
    }

    /// Blocks of `k[G]`: `ν = 1` gives `Plain(d)`, `ν = -1` gives `Anti(d)`,
    /// and each conjugate pair with `ν = 0` gives one `Swap(d)`.
    pub fn from_irreps(irreps: &IrrepData) -> Self {
        let mut blocks = Vec::new();
        let mut unpaired: Vec<usize> = Vec::new();
        for &(d, fs) in irreps.entries() {
            match fs {
                1 => blocks.push(Block::Plain(d)),
                -1 => blocks.push(Block::Anti(d)),
                _ => {
                    if let Some(pos) = unpaired.iter().position(|&x| x == d) {
                        unpaired.swap_remove(pos);
                        blocks.push(Block::Swap(d));
                    } else {
                        unpaired.push(d);
                    }
                }
            }
        }
        debug_assert!(unpaired.is_empty(), "complex irreps come in pairs");
        StructuredAlgebra { blocks }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks.iter().map(|b| b.dim()).sum()
    }

    /// Explicit structure constants for the block sum.
    pub fn realize(&self) -> Result<BasedAlgebra, AlgebraError> {
        let mut acc: Option<BasedAlgebra> = None;
        for &block in &self.blocks {
            let alg = match block {
                Block::Plain(n) => matrix_algebra(n, StarKind::Transpose)?,
                Block::Swap(n) => tensor_product(&matrix_algebra(n, StarKind::Transpose)?, &swap_algebra())?,
                Block::Anti(n) => tensor_product(
                    &matrix_algebra(n / 2, StarKind::Transpose)?,
                    &matrix_algebra(2, StarKind::Anti)?,
                )?,
            };
            acc = Some(match acc {
                None => alg,
                Some(prev) => direct_sum(&prev, &alg)?,
            });
        }
        acc.ok_or_else(|| AlgebraError::InvalidBlock("no blocks".into()))
    }
}
