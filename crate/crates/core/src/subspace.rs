//! Rational subspaces, their circuits and the operations built on them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};

/// A subspace `W` of `Q^n`, held both as `ker(A)` and as a row span.
///
/// Both representations are canonical (reduced row echelon form), so
/// structural equality is subspace equality.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    n: usize,
    kernel_rep: RatMatrix,
    span_rep: RatMatrix,
}

impl Subspace {
    /// `W = ker(a)`.
    pub fn kernel_of(a: &RatMatrix) -> Self {
        let kernel_rep = linalg::row_space_basis(a);
        let (_, _, basis) = linalg::rref_kernel(a);
        let span_rep = linalg::row_space_basis(&basis);
        Subspace { n: a.cols(), kernel_rep, span_rep }
    }

    /// `W` = row space of `s`.
    pub fn span_of(s: &RatMatrix) -> Self {
        let span_rep = linalg::row_space_basis(s);
        let (_, _, normals) = linalg::rref_kernel(s);
        let kernel_rep = linalg::row_space_basis(&normals);
        Subspace { n: s.cols(), kernel_rep, span_rep }
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.span_rep.rows()
    }

    /// Full-row-rank `A` with `ker(A) = W`.
    pub fn kernel_rep(&self) -> &RatMatrix {
        &self.kernel_rep
    }

    /// Rows form a basis of `W`.
    pub fn span_rep(&self) -> &RatMatrix {
        &self.span_rep
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        v.len() == self.n
            && self.kernel_rep.mul_vec(v).map(|r| num::is_zero_vec(&r)).unwrap_or(false)
    }

    /// Orthogonal projection onto `W^⊥ = rowspace(A)`.
    pub fn project_complement(&self, v: &[Rational]) -> Vec<Rational> {
        project_rows(&self.kernel_rep, v)
    }

    /// Orthogonal projection onto `W`.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        num::sub(v, &self.project_complement(v))
    }
}

/// Projection of `v` onto the row space of the full-row-rank `m`,
/// `mᵀ (m mᵀ)^{-1} m v`.
pub(crate) fn project_rows(m: &RatMatrix, v: &[Rational]) -> Vec<Rational> {
    if m.rows() == 0 {
        return alloc::vec![Rational::zero(); v.len()];
    }
    let gram = m.mul(&m.transpose()).expect("shapes agree");
    let rhs = m.mul_vec(v).expect("shapes agree");
    let coef = linalg::solve_linear(&gram, &rhs)
        .expect("shapes agree")
        .expect("Gram matrix of independent rows is nonsingular");
    m.vec_mul(&coef).expect("shapes agree")
}

/// Primitive integer elementary vector `g^C` of a circuit `C`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementaryVector {
    pub support: Vec<usize>,
    pub vector: Vec<BigInt>,
}

impl ElementaryVector {
    /// Normalizes a nonzero vector with circuit support.
    pub fn from_rational(v: &[Rational]) -> Result<Self> {
        let (g, _) = linalg::integer_normalize(v)?;
        Ok(Self::from_integer(g))
    }

    fn from_integer(vector: Vec<BigInt>) -> Self {
        let support = vector.iter().positions(|x| !x.is_zero()).collect();
        ElementaryVector { support, vector }
    }

    pub fn to_rational(&self) -> Vec<Rational> {
        self.vector.iter().map(num::from_int).collect()
    }

    pub fn negated(&self) -> Self {
        ElementaryVector { support: self.support.clone(), vector: self.vector.iter().map(|x| -x).collect() }
    }

    /// `max |g_i|`.
    pub fn max_abs(&self) -> BigInt {
        self.vector.iter().map(|x| x.abs()).max().unwrap_or_else(BigInt::zero)
    }

    pub fn min_abs(&self) -> BigInt {
        self.support.iter().map(|&i| self.vector[i].abs()).min().unwrap_or_else(BigInt::zero)
    }

    pub fn lcm(&self) -> BigInt {
        self.support.iter().fold(BigInt::one(), |acc, &i| num::lcm(&acc, &self.vector[i]))
    }

    pub fn norm1(&self) -> BigInt {
        self.vector.iter().map(|x| x.abs()).sum()
    }

    /// `|g_j / g_i|`, for `i, j` in the support.
    pub fn ratio(&self, i: usize, j: usize) -> Rational {
        Rational::new(self.vector[j].abs(), self.vector[i].abs())
    }

    pub fn contains(&self, i: usize) -> bool {
        self.support.binary_search(&i).is_ok()
    }

    /// Same sign as `z` on the support, and support inside `supp(z)`.
    pub fn conforms_to(&self, z: &[Rational]) -> bool {
        self.support.iter().all(|&i| {
            let zi = &z[i];
            !zi.is_zero() && zi.is_positive() == self.vector[i].is_positive()
        })
    }

    /// The orientation (`g` or `-g`) conforming to `z`, if either does.
    pub fn oriented_to(&self, z: &[Rational]) -> Option<Self> {
        if self.conforms_to(z) {
            Some(self.clone())
        } else {
            let neg = self.negated();
            neg.conforms_to(z).then_some(neg)
        }
    }
}

/// All circuits of `W`, one primitive elementary vector each, ordered by
/// support lexicographically.
///
/// A set `C` is a circuit of `ker(A)` exactly when `ker(A_C)` is
/// one-dimensional and spanned by a vector without zero entries.
pub fn circuits(w: &Subspace) -> Vec<ElementaryVector> {
    let a = w.kernel_rep();
    let r = a.rows();
    let mut out = Vec::new();
    for size in 1..=(r + 1).min(w.n) {
        for c in (0..w.n).combinations(size) {
            let (_, _, ker) = linalg::rref_kernel(&a.select_columns(&c));
            if ker.rows() != 1 || ker.row(0).iter().any(Zero::is_zero) {
                continue;
            }
            let mut full = alloc::vec![Rational::zero(); w.n];
            for (k, &j) in c.iter().enumerate() {
                full[j] = ker[(0, k)].clone();
            }
            out.push(ElementaryVector::from_rational(&full).expect("nonzero kernel vector"));
        }
    }
    out.sort_by(|x, y| x.support.cmp(&y.support));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionRule {
    /// Lexicographically first conformal circuit, maximal step.
    GreedyMaximal,
    /// Conformal circuit allowing the largest step coefficient.
    LargestStep,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConformalDecomposition {
    pub terms: Vec<(Rational, ElementaryVector)>,
    pub target: Vec<Rational>,
}

impl ConformalDecomposition {
    pub fn sum(&self) -> Vec<Rational> {
        let mut s = alloc::vec![Rational::zero(); self.target.len()];
        for (c, g) in &self.terms {
            s = num::axpy(&s, c, &g.to_rational());
        }
        s
    }

    /// The decomposition invariants: exact sum, positive coefficients,
    /// conformity, and at most `n` terms.
    pub fn is_valid(&self) -> bool {
        self.sum() == self.target
            && self.terms.len() <= self.target.len()
            && self.terms.iter().all(|(c, g)| c.is_positive() && g.conforms_to(&self.target))
    }
}

/// Largest `alpha` keeping `z - alpha g` conformal to `z`, for `g` conforming to `z`.
fn max_conformal_step(z: &[Rational], g: &ElementaryVector) -> Rational {
    g.support
        .iter()
        .map(|&i| &z[i] / num::from_int(&g.vector[i]))
        .min()
        .expect("circuits are nonempty")
}

pub fn conformal_decompose(
    w: &Subspace,
    z: &[Rational],
    rule: DecompositionRule,
) -> Result<ConformalDecomposition> {
    if !w.contains(z) {
        return Err(Error::NotInSubspace);
    }
    decompose_with(&circuits(w), z, rule)
}

/// Conformal decomposition against a precomputed circuit list.
pub fn decompose_with(
    circs: &[ElementaryVector],
    z: &[Rational],
    rule: DecompositionRule,
) -> Result<ConformalDecomposition> {
    let mut residual = z.to_vec();
    let mut terms = Vec::new();
    while !num::is_zero_vec(&residual) {
        let candidates = circs.iter().filter_map(|g| g.oriented_to(&residual));
        let chosen = match rule {
            DecompositionRule::GreedyMaximal => candidates.map(|g| (max_conformal_step(&residual, &g), g)).next(),
            DecompositionRule::LargestStep => candidates
                .map(|g| (max_conformal_step(&residual, &g), g))
                .fold(None, |best: Option<(Rational, ElementaryVector)>, cur| match best {
                    Some(b) if b.0 >= cur.0 => Some(b),
                    _ => Some(cur),
                }),
        };
        let (alpha, g) = chosen.ok_or(Error::NotInSubspace)?;
        residual = num::axpy(&residual, &-alpha.clone(), &g.to_rational());
        terms.push((alpha, g));
    }
    Ok(ConformalDecomposition { terms, target: z.to_vec() })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinorMode {
    /// `π_J(W)`
    Project,
    /// `W_J = π_J(W ∩ R^n_J)`
    Restrict,
}

pub fn minor(w: &Subspace, j: &[usize], mode: MinorMode) -> Result<Subspace> {
    if j.is_empty() {
        return Err(Error::EmptyIndexSet);
    }
    if let Some(&bad) = j.iter().find(|&&i| i >= w.n) {
        return Err(Error::IndexOutOfRange(bad));
    }
    Ok(match mode {
        MinorMode::Project => Subspace::span_of(&w.span_rep.select_columns(j)),
        MinorMode::Restrict => Subspace::kernel_of(&w.kernel_rep.select_columns(j)),
    })
}

/// `W^⊥`.
pub fn dual(w: &Subspace) -> Subspace {
    Subspace { n: w.n, kernel_rep: w.span_rep.clone(), span_rep: w.kernel_rep.clone() }
}

/// The minimum-norm `z ∈ W` with `z_I = p`.
///
/// Any extension `z0` is corrected by subtracting its projection onto
/// `K = W ∩ R^n_{[n]∖I}`; the result is orthogonal to `K`, hence minimal.
pub fn lift_min_norm(w: &Subspace, idx: &[usize], p: &[Rational]) -> Result<Vec<Rational>> {
    if idx.len() != p.len() {
        return Err(Error::DimensionMismatch("index set and vector lengths differ".into()));
    }
    if let Some(&bad) = idx.iter().find(|&&i| i >= w.n) {
        return Err(Error::IndexOutOfRange(bad));
    }
    let s = w.span_rep();
    // Coefficients λ with (Sᵀλ)_I = p.
    let s_i = s.select_columns(idx).transpose();
    let lambda = linalg::solve_linear(&s_i, p)?.ok_or(Error::NotInProjection)?;
    let z0 = s.vec_mul(&lambda)?;
    let (_, _, free) = linalg::rref_kernel(&s_i);
    if free.rows() == 0 {
        return Ok(z0);
    }
    let k_basis = linalg::row_space_basis(&free.mul(s)?);
    Ok(num::sub(&z0, &project_rows(&k_basis, &z0)))
}

/// Connected components of the matroid: `i ~ j` when a circuit contains both.
pub fn components(w: &Subspace) -> Vec<Vec<usize>> {
    components_with(w.n, &circuits(w))
}

pub fn components_with(n: usize, circs: &[ElementaryVector]) -> Vec<Vec<usize>> {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for g in circs {
        let first = g.support[0];
        for &i in &g.support[1..] {
            let (a, b) = (find(&mut parent, first), find(&mut parent, i));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut blocks: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        blocks.entry(root).or_default().push(i);
    }
    blocks.into_values().collect()
}

/// `Ok(())` when every elementary vector has a `±1` entry, else a violating circuit.
pub fn is_anchored(w: &Subspace) -> core::result::Result<(), ElementaryVector> {
    for g in circuits(w) {
        if !g.vector.iter().any(|x| x.abs().is_one()) {
            return Err(g);
        }
    }
    Ok(())
}
