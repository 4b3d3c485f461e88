//! Network flows as bounded LPs over the node-arc incidence matrix.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::lp::LpInstance;
use crate::matrix::RatMatrix;
use crate::num::{self, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct FlowNetwork {
    pub nodes: usize,
    /// `(tail, head)` per arc.
    pub arcs: Vec<(usize, usize)>,
    pub capacity: Vec<Option<Rational>>,
    pub cost: Vec<Rational>,
    /// Inflow minus outflow required at each node.
    pub demand: Vec<Rational>,
}

impl FlowNetwork {
    /// Incidence matrix: `+1` at the head, `−1` at the tail.
    pub fn incidence(&self) -> RatMatrix {
        let mut a = RatMatrix::zeros(self.nodes, self.arcs.len());
        for (e, &(t, h)) in self.arcs.iter().enumerate() {
            a[(h, e)] += num::rat(1);
            a[(t, e)] -= num::rat(1);
        }
        a
    }
}

pub fn flow_to_lp(net: &FlowNetwork) -> Result<LpInstance> {
    let m = net.arcs.len();
    if net.capacity.len() != m || net.cost.len() != m || net.demand.len() != net.nodes {
        return Err(Error::DimensionMismatch(format!("{} arcs, {} nodes", m, net.nodes)));
    }
    if let Some(&(t, h)) = net.arcs.iter().find(|&&(t, h)| t >= net.nodes || h >= net.nodes) {
        return Err(Error::IndexOutOfRange(t.max(h)));
    }
    let total: Rational = net.demand.iter().cloned().fold(Rational::zero(), |a, b| a + b);
    if !total.is_zero() {
        return Err(Error::UnbalancedDemands);
    }
    LpInstance::bounded(net.incidence(), net.demand.clone(), net.cost.clone(), net.capacity.clone())
}

/// Maximum `s`–`t` flow as a circulation: a return arc `(t, s)` with no
/// capacity and cost −1 is appended as the last column.
pub fn max_flow_lp(
    nodes: usize,
    arcs: &[(usize, usize)],
    capacity: &[Option<Rational>],
    s: usize,
    t: usize,
) -> Result<LpInstance> {
    let mut all = arcs.to_vec();
    all.push((t, s));
    let mut caps = capacity.to_vec();
    caps.push(None);
    let mut cost = alloc::vec![Rational::zero(); arcs.len()];
    cost.push(num::rat(-1));
    flow_to_lp(&FlowNetwork { nodes, arcs: all, capacity: caps, cost, demand: alloc::vec![Rational::zero(); nodes] })
}
