//! Vertices, edges and fractionality of `{x : Ax = b, 0 ≤ x ≤ u}`.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{simplex, Expanded, LpInstance};
use crate::error::{Error, Result};
use crate::linalg;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    /// Coordinates in the original variables.
    pub point: Vec<Rational>,
    /// Every feasible basis of the expanded form producing this point.
    pub bases: Vec<Vec<usize>>,
    /// Full expanded coordinates, slacks included.
    pub(crate) expanded: Vec<Rational>,
}

/// Drops redundant rows; `None` when `Ax = b` has no solution.
fn reduce_rows(a: &RatMatrix, b: &[Rational]) -> Option<(RatMatrix, Vec<Rational>)> {
    let aug = a.hstack(&RatMatrix::from_vec(b.len(), 1, b.to_vec()).expect("column")).expect("same rows");
    let (r, pivots) = linalg::rref(&aug);
    if pivots.contains(&a.cols()) {
        return None;
    }
    let rows: Vec<usize> = (0..pivots.len()).collect();
    let keep = r.select_rows(&rows);
    let cols: Vec<usize> = (0..a.cols()).collect();
    Some((keep.select_columns(&cols), keep.column(a.cols())))
}

fn expanded_vertices(ex: &Expanded) -> Vec<Vertex> {
    let Some((a, b)) = reduce_rows(&ex.a, &ex.b) else {
        return Vec::new();
    };
    let width = a.cols();
    let mut found: BTreeMap<Vec<Rational>, Vec<Vec<usize>>> = BTreeMap::new();
    if a.rows() == 0 {
        found.insert(alloc::vec![Rational::zero(); width], alloc::vec![Vec::new()]);
    }
    for basis in (0..width).combinations(a.rows()) {
        if a.rows() == 0 {
            break;
        }
        let ab = a.select_columns(&basis);
        let Ok(Some(xb)) = linalg::solve_linear(&ab, &b) else { continue };
        if linalg::rank(&ab) < a.rows() || xb.iter().any(|v| *v < Rational::zero()) {
            continue;
        }
        let mut x = alloc::vec![Rational::zero(); width];
        for (&j, v) in basis.iter().zip(xb) {
            x[j] = v;
        }
        found.entry(x).or_default().push(basis);
    }
    found
        .into_iter()
        .map(|(x, bases)| Vertex { point: x[..ex.n].to_vec(), bases, expanded: x })
        .collect()
}

/// All vertices, one entry per point, sorted by expanded coordinates.
/// Standard-form regions lie in the nonnegative orthant and are always
/// pointed, so no pointedness error arises.
pub fn vertices(lp: &LpInstance) -> Result<Vec<Vertex>> {
    lp.validate()?;
    Ok(expanded_vertices(&lp.expand()))
}

/// Whether the feasible region has no recession direction other than 0.
pub fn is_bounded(lp: &LpInstance) -> Result<bool> {
    lp.validate()?;
    let ex = lp.expand();
    // A recession direction scaled to Σd = 1.
    let ones = RatMatrix::from_vec(1, ex.a.cols(), alloc::vec![Rational::one(); ex.a.cols()])?;
    let a = ex.a.vstack(&ones)?;
    let mut b = alloc::vec![Rational::zero(); ex.a.rows()];
    b.push(Rational::one());
    let c = alloc::vec![Rational::zero(); a.cols()];
    Ok(matches!(simplex::solve_standard(&a, &b, &c), simplex::StdOutcome::Infeasible { .. }))
}

/// Adjacent iff the union of supports spans a one-dimensional face.
fn adjacent(a: &RatMatrix, u: &[Rational], v: &[Rational]) -> bool {
    let s: Vec<usize> = (0..u.len()).filter(|&j| !u[j].is_zero() || !v[j].is_zero()).collect();
    s.len() - linalg::rank(&a.select_columns(&s)) == 1
}

/// Diameter of the vertex-edge graph by breadth-first search from each vertex.
pub fn edge_graph_diameter(lp: &LpInstance) -> Result<usize> {
    if !is_bounded(lp)? {
        return Err(Error::UnboundedRegion);
    }
    let ex = lp.expand();
    let verts = expanded_vertices(&ex);
    if verts.is_empty() {
        return Err(Error::Infeasible { farkas: Vec::new() });
    }
    let k = verts.len();
    let adj: Vec<Vec<usize>> = (0..k)
        .map(|i| (0..k).filter(|&j| j != i && adjacent(&ex.a, &verts[i].expanded, &verts[j].expanded)).collect())
        .collect();
    let mut diameter = 0;
    for s in 0..k {
        let mut dist = alloc::vec![usize::MAX; k];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        diameter = diameter.max(*dist.iter().max().expect("nonempty"));
    }
    Ok(diameter)
}

/// Least `k` with every vertex `1/k`-integral.
pub fn fractionality(lp: &LpInstance) -> Result<BigInt> {
    let verts = vertices(lp)?;
    if verts.is_empty() {
        return Err(Error::Infeasible { farkas: Vec::new() });
    }
    Ok(verts.iter().fold(BigInt::one(), |acc, v| num::lcm(&acc, &num::denominator_lcm(&v.point))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::num::rat;

    fn rv(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn simplex_vertices() {
        let lp = LpInstance::standard(RatMatrix::from_i64(&[&[1, 1, 1]]), rv(&[1]), rv(&[0, 0, 0])).unwrap();
        let vs = vertices(&lp).unwrap();
        assert_eq!(vs.len(), 3);
        assert_eq!(edge_graph_diameter(&lp).unwrap(), 1);
        assert_eq!(fractionality(&lp).unwrap(), BigInt::one());
    }

    #[test]
    fn cube() {
        let u = alloc::vec![Some(rat(1)); 3];
        let lp = LpInstance::bounded(RatMatrix::zeros(0, 3), Vec::new(), rv(&[0, 0, 0]), u).unwrap();
        assert_eq!(vertices(&lp).unwrap().len(), 8);
        assert_eq!(edge_graph_diameter(&lp).unwrap(), 3);
    }

    #[test]
    fn unbounded_region_rejected() {
        let lp = LpInstance::standard(RatMatrix::from_i64(&[&[1, -1]]), rv(&[0]), rv(&[0, 0])).unwrap();
        assert!(!is_bounded(&lp).unwrap());
        assert!(matches!(edge_graph_diameter(&lp), Err(Error::UnboundedRegion)));
    }

    #[test]
    fn half_integral_vertex() {
        // Triangle edge-incidence with all-ones demand: unique vertex (1/2,1/2,1/2).
        let a = RatMatrix::from_i64(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, 1]]);
        let lp = LpInstance::standard(a, rv(&[1, 1, 1]), rv(&[0, 0, 0])).unwrap();
        assert_eq!(fractionality(&lp).unwrap(), BigInt::from(2));
    }
}
