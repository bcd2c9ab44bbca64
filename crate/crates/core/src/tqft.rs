//! State-sum tensor networks and their exact contraction.
//!
//! Every flag (triangle side) is a wire. Triangle nodes carry `T₃` with their
//! legs in the order of the triangle's assigned orientation; edge nodes carry
//! the copairing, twisted by the star when the two triangles disagree.
//! Contraction proceeds one edge node at a time: the edge matrix is absorbed
//! and the tensors at its two flags are merged.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, BasedAlgebra, Block, StructuredAlgebra};
use crate::grouptheory::{hom_count_nonorientable, hom_count_orientable, FiniteGroup, GroupError, IrrepData};
use crate::surface::{EdgeKind, Orientability, OrientationAssignment, Triangulation};
use crate::{Limits, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TqftError {
    #[error("triangles {first} and {second} disagree across an edge but the algebra has no star")]
    StarRequired { first: usize, second: usize },
    #[error("assignment covers {found} triangles, surface has {expected}")]
    AssignmentMismatch { expected: usize, found: usize },
    #[error("contraction plan does not match the network: {0}")]
    PlanMismatch(String),
    #[error("cannot identify a closed surface with χ = {chi} (orientable: {orientable}, connected: {connected})")]
    UnrecognizedTopology { chi: i64, orientable: bool, connected: bool },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sparse tensor over `0..D` per leg; legs are named by flag index.
///
/// Entries are integers times one rational scale, which keeps gcd work out
/// of the inner loops.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    legs: Vec<usize>,
    scale: Rational,
    entries: HashMap<Vec<u32>, BigInt>,
}

impl Tensor {
    fn from_rationals(legs: Vec<usize>, values: HashMap<Vec<u32>, Rational>) -> Self {
        let (scale, ints) = integerize(values.values());
        let entries = values.into_keys().zip(ints).filter(|(_, v)| !v.is_zero()).collect();
        Tensor { legs, scale, entries }
    }

    /// Drops zeros and moves the gcd of the entries into the scale.
    fn normalized(mut self) -> Self {
        self.entries.retain(|_, v| !v.is_zero());
        let g = self.entries.values().fold(BigInt::zero(), |g, v| g.gcd(v));
        if !g.is_zero() && !g.is_one() {
            self.entries.values_mut().for_each(|v| *v /= &g);
            self.scale *= Rational::from_integer(g);
        }
        self
    }

    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn rank(&self) -> usize {
        self.legs.len()
    }

    pub fn nonzeros(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, index: &[u32]) -> Rational {
        match self.entries.get(index) {
            Some(v) => &self.scale * Rational::from_integer(v.clone()),
            None => Rational::zero(),
        }
    }

    fn scalar(&self) -> Rational {
        debug_assert!(self.legs.is_empty());
        self.get(&[])
    }
}

/// `(s, n)` with `values[i] = s · n[i]` and `n` integral.
fn integerize<'a>(values: impl Iterator<Item = &'a Rational> + Clone) -> (Rational, Vec<BigInt>) {
    let denom = values.clone().fold(BigInt::one(), |l, v| l.lcm(v.denom()));
    let ints: Vec<BigInt> = values.map(|v| v.numer() * (&denom / v.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return (Rational::one(), ints);
    }
    let ints = ints.into_iter().map(|v| v / &g).collect();
    (Rational::new(g, denom), ints)
}

/// Rank-2 node on an edge: `matrix[a * D + b]` pairs `a` on `legs[0]` with `b` on `legs[1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct EdgeNode {
    legs: [usize; 2],
    kind: EdgeKind,
    matrix: Vec<Rational>,
}

impl EdgeNode {
    pub fn legs(&self) -> [usize; 2] {
        self.legs
    }

    pub fn kind(&self) -> EdgeKind {
        self.kind
    }

    pub fn matrix(&self) -> &[Rational] {
        &self.matrix
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TensorNetwork {
    dim: usize,
    triangles: Vec<Tensor>,
    edges: Vec<EdgeNode>,
}

impl TensorNetwork {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn triangle_nodes(&self) -> &[Tensor] {
        &self.triangles
    }

    pub fn edge_nodes(&self) -> &[EdgeNode] {
        &self.edges
    }

    /// `(triangle node, edge node)` joined by each flag wire, indexed by flag.
    pub fn wiring(&self) -> Vec<(usize, usize)> {
        let mut out = vec![(usize::MAX, usize::MAX); 3 * self.triangles.len()];
        for (t, tri) in self.triangles.iter().enumerate() {
            for &leg in &tri.legs {
                out[leg].0 = t;
            }
        }
        for (e, edge) in self.edges.iter().enumerate() {
            for leg in edge.legs {
                out[leg].1 = e;
            }
        }
        out
    }
}

/// Flag legs of a triangle in its oriented cyclic order.
fn oriented_legs(triangle: usize, sign: i8) -> Vec<usize> {
    let base = 3 * triangle;
    if sign > 0 {
        vec![base, base + 1, base + 2]
    } else {
        vec![base + 2, base + 1, base]
    }
}

pub fn build_network(
    algebra: &BasedAlgebra,
    t: &Triangulation,
    assignment: &OrientationAssignment,
) -> Result<TensorNetwork, TqftError> {
    if assignment.len() != t.face_count() {
        return Err(TqftError::AssignmentMismatch {
            expected: t.face_count(),
            found: assignment.len(),
        });
    }
    let plain = algebra.copairing()?;
    let twisted = algebra.twisted_copairing()?;
    let mut edges = Vec::with_capacity(t.edge_count());
    for edge in t.edges() {
        let kind = assignment.classify(&edge);
        let matrix = match (kind, &twisted) {
            (EdgeKind::Agree, _) => plain.clone(),
            (EdgeKind::Disagree, Some(tw)) => tw.clone(),
            (EdgeKind::Disagree, None) => {
                return Err(TqftError::StarRequired {
                    first: edge.first.triangle,
                    second: edge.second.triangle,
                })
            }
        };
        edges.push(EdgeNode {
            legs: [edge.first.index(), edge.second.index()],
            kind,
            matrix,
        });
    }
    let table: HashMap<Vec<u32>, Rational> = algebra
        .triple_trace_table()
        .into_iter()
        .map(|(a, b, c, v)| (vec![a as u32, b as u32, c as u32], v))
        .collect();
    let triangles = (0..t.face_count())
        .map(|f| Tensor::from_rationals(oriented_legs(f, assignment.sign(f)), table.clone()))
        .collect();
    Ok(TensorNetwork {
        dim: algebra.dim(),
        triangles,
        edges,
    })
}

/// Order in which edge nodes are absorbed. Each step lists edge nodes that
/// join the same two live tensors (or one tensor to itself) and contracts
/// them together.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionPlan {
    steps: Vec<Vec<usize>>,
    cost_estimate: u128,
}

impl ContractionPlan {
    pub fn steps(&self) -> &[Vec<usize>] {
        &self.steps
    }

    /// Edge nodes in execution order.
    pub fn order(&self) -> Vec<usize> {
        self.steps.iter().flatten().copied().collect()
    }

    /// Number of edge contractions; equals the edge count of the network.
    pub fn len(&self) -> usize {
        self.steps.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Sum over steps of `D^(open legs entering the step)`, saturating.
    pub fn cost_estimate(&self) -> u128 {
        self.cost_estimate
    }
}

/// Which live tensor owns each flag leg, and the open legs of each tensor.
struct Groups {
    owner: Vec<usize>,
    legs: Vec<Vec<usize>>,
}

impl Groups {
    fn new(network: &TensorNetwork) -> Self {
        let mut owner = vec![0; 3 * network.triangles.len()];
        for (t, tri) in network.triangles.iter().enumerate() {
            for &l in &tri.legs {
                owner[l] = t;
            }
        }
        Groups {
            owner,
            legs: network.triangles.iter().map(|t| t.legs.clone()).collect(),
        }
    }

    /// Live tensors at the two ends of an edge node.
    fn ends(&self, node: &EdgeNode) -> (usize, usize) {
        let (a, b) = (self.owner[node.legs[0]], self.owner[node.legs[1]]);
        (a.min(b), a.max(b))
    }

    /// `(open legs entering, rank after)` for contracting `wires` edges between `a` and `b`.
    fn shape(&self, (a, b): (usize, usize), wires: usize) -> (usize, usize) {
        let entering = if a == b {
            self.legs[a].len()
        } else {
            self.legs[a].len() + self.legs[b].len()
        };
        (entering, entering - 2 * wires)
    }

    /// Records a step; the merged tensor keeps the smaller id.
    fn apply(&mut self, (a, b): (usize, usize), contracted: &[usize]) {
        if a != b {
            let moved = std::mem::take(&mut self.legs[b]);
            for &l in &moved {
                self.owner[l] = a;
            }
            self.legs[a].extend(moved);
        }
        self.legs[a].retain(|l| !contracted.contains(l));
    }
}

fn size(dim: usize, rank: usize) -> u128 {
    (dim as u128).saturating_pow(rank as u32)
}

/// Checks a step sequence against the network and prices it.
fn priced(network: &TensorNetwork, steps: Vec<Vec<usize>>) -> Result<ContractionPlan, TqftError> {
    let e_count = network.edges.len();
    let mut seen = vec![false; e_count];
    let mut groups = Groups::new(network);
    let mut cost: u128 = 0;
    for step in &steps {
        let Some(&first) = step.first() else {
            return Err(TqftError::PlanMismatch("empty step".into()));
        };
        for &e in step {
            if e >= e_count || std::mem::replace(&mut seen[e], true) {
                return Err(TqftError::PlanMismatch(format!("edge node {e} is out of range or repeated")));
            }
        }
        let ends = groups.ends(&network.edges[first]);
        if step.iter().any(|&e| groups.ends(&network.edges[e]) != ends) {
            return Err(TqftError::PlanMismatch(format!("step starting at edge node {first} spans more than two tensors")));
        }
        cost = cost.saturating_add(size(network.dim, groups.shape(ends, step.len()).0));
        let legs: Vec<usize> = step.iter().flat_map(|&e| network.edges[e].legs).collect();
        groups.apply(ends, &legs);
    }
    if seen.iter().any(|s| !s) {
        return Err(TqftError::PlanMismatch("some edge nodes are never contracted".into()));
    }
    Ok(ContractionPlan {
        steps,
        cost_estimate: cost,
    })
}

/// Greedy order: among all pairs of live tensors joined by at least one edge
/// node (a tensor may pair with itself), contract the pair whose merged
/// tensor is smallest, along every edge node between them. Ties go to the
/// pair holding the lowest edge index.
pub fn plan_contraction(network: &TensorNetwork) -> ContractionPlan {
    let mut groups = Groups::new(network);
    let mut remaining: Vec<usize> = (0..network.edges.len()).collect();
    let mut steps = Vec::new();
    while !remaining.is_empty() {
        let mut between: HashMap<(usize, usize), Vec<usize>> = HashMap::new();
        for &e in &remaining {
            between.entry(groups.ends(&network.edges[e])).or_default().push(e);
        }
        let (ends, step) = between
            .into_iter()
            .min_by_key(|(ends, es)| (size(network.dim, groups.shape(*ends, es.len()).1), es[0]))
            .expect("nonempty");
        let legs: Vec<usize> = step.iter().flat_map(|&e| network.edges[e].legs).collect();
        groups.apply(ends, &legs);
        remaining.retain(|e| !step.contains(e));
        steps.push(step);
    }
    priced(network, steps).expect("greedy plan is valid")
}

/// One edge node per step, in index order.
pub fn naive_plan(network: &TensorNetwork) -> ContractionPlan {
    priced(network, (0..network.edges.len()).map(|e| vec![e]).collect()).expect("sequential plan is valid")
}

/// Rebuilds a plan from explicit steps, validating it against the network.
pub fn plan_from_steps(network: &TensorNetwork, steps: Vec<Vec<usize>>) -> Result<ContractionPlan, TqftError> {
    priced(network, steps)
}

/// Integer form of an edge matrix: scale, dense entries and nonzero rows.
struct WireMatrix {
    scale: Rational,
    dense: Vec<BigInt>,
    rows: Vec<Vec<(u32, BigInt)>>,
}

impl WireMatrix {
    fn new(matrix: &[Rational], dim: usize) -> Self {
        let (scale, dense) = integerize(matrix.iter());
        let rows = (0..dim)
            .map(|a| {
                (0..dim)
                    .filter(|&b| !dense[a * dim + b].is_zero())
                    .map(|b| (b as u32, dense[a * dim + b].clone()))
                    .collect()
            })
            .collect();
        WireMatrix { scale, dense, rows }
    }
}

fn position(legs: &[usize], leg: usize) -> usize {
    legs.iter().position(|&l| l == leg).expect("leg on tensor")
}

fn pick(key: &[u32], positions: &[usize]) -> Vec<u32> {
    positions.iter().map(|&p| key[p]).collect()
}

fn drop_positions(key: &[u32], positions: &[usize]) -> Vec<u32> {
    key.iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, &x)| x)
        .collect()
}

/// Contracts wires `(leg on a, leg on b, matrix)` within a single tensor.
fn trace_wires(a: &Tensor, wires: &[(usize, usize, &WireMatrix)], dim: usize) -> Tensor {
    let pa: Vec<usize> = wires.iter().map(|w| position(&a.legs, w.0)).collect();
    let pb: Vec<usize> = wires.iter().map(|w| position(&a.legs, w.1)).collect();
    let dropped: Vec<usize> = pa.iter().chain(&pb).copied().collect();
    let mut entries: HashMap<Vec<u32>, BigInt> = HashMap::new();
    'entry: for (key, v) in &a.entries {
        let mut w = v.clone();
        for (i, wire) in wires.iter().enumerate() {
            let m = &wire.2.dense[key[pa[i]] as usize * dim + key[pb[i]] as usize];
            if m.is_zero() {
                continue 'entry;
            }
            w *= m;
        }
        *entries.entry(drop_positions(key, &dropped)).or_default() += w;
    }
    let scale = wires.iter().fold(a.scale.clone(), |s, w| s * &w.2.scale);
    Tensor {
        legs: a.legs.iter().copied().filter(|l| !wires.iter().any(|w| w.0 == *l || w.1 == *l)).collect(),
        scale,
        entries,
    }
    .normalized()
}

/// Contracts wires `(leg on a, leg on b, matrix)` between two tensors by a
/// hash join on the values at `b`'s wired legs.
fn join_wires(a: &Tensor, b: &Tensor, wires: &[(usize, usize, &WireMatrix)]) -> Tensor {
    let pa: Vec<usize> = wires.iter().map(|w| position(&a.legs, w.0)).collect();
    let pb: Vec<usize> = wires.iter().map(|w| position(&b.legs, w.1)).collect();
    let mut by_values: HashMap<Vec<u32>, Vec<(Vec<u32>, &BigInt)>> = HashMap::new();
    for (key, v) in &b.entries {
        by_values.entry(pick(key, &pb)).or_default().push((drop_positions(key, &pb), v));
    }
    let mut entries: HashMap<Vec<u32>, BigInt> = HashMap::new();
    // Images of one entry of `a` under the wire matrices.
    let mut images: Vec<(Vec<u32>, BigInt)> = Vec::new();
    for (key, va) in &a.entries {
        images.clear();
        images.push((Vec::with_capacity(wires.len()), va.clone()));
        for (i, wire) in wires.iter().enumerate() {
            let row = &wire.2.rows[key[pa[i]] as usize];
            images = images
                .drain(..)
                .flat_map(|(ys, w)| {
                    row.iter().map(move |(y, m)| {
                        let mut ys = ys.clone();
                        ys.push(*y);
                        (ys, &w * m)
                    })
                })
                .collect();
        }
        let rest_a = drop_positions(key, &pa);
        for (ys, w) in &images {
            let Some(matches) = by_values.get(ys) else {
                continue;
            };
            for (rest_b, vb) in matches {
                let mut k = rest_a.clone();
                k.extend_from_slice(rest_b);
                *entries.entry(k).or_default() += w * *vb;
            }
        }
    }
    let mut legs = drop_legs(&a.legs, &pa);
    legs.extend(drop_legs(&b.legs, &pb));
    let scale = wires.iter().fold(&a.scale * &b.scale, |s, w| s * &w.2.scale);
    Tensor { legs, scale, entries }.normalized()
}

fn drop_legs(legs: &[usize], positions: &[usize]) -> Vec<usize> {
    legs.iter()
        .enumerate()
        .filter(|(i, _)| !positions.contains(i))
        .map(|(_, &l)| l)
        .collect()
}

/// Exact value of the network. Disconnected networks give the product of
/// their components.
pub fn contract(network: &TensorNetwork, plan: &ContractionPlan) -> Result<Rational, TqftError> {
    // Revalidate: plans are plain data and may come from another network.
    let plan = priced(network, plan.steps.clone())?;
    let dim = network.dim;
    let mut groups = Groups::new(network);
    let mut slots: Vec<Option<Tensor>> = network.triangles.iter().cloned().map(Some).collect();
    let matrices: Vec<WireMatrix> = network.edges.iter().map(|e| WireMatrix::new(&e.matrix, dim)).collect();
    for step in &plan.steps {
        let (a, b) = groups.ends(&network.edges[step[0]]);
        // Orient each wire as (leg on a, leg on b); edge matrices are symmetric.
        let oriented: Vec<(usize, usize, usize)> = step
            .iter()
            .map(|&e| {
                let [l0, l1] = network.edges[e].legs;
                if groups.owner[l0] == a {
                    (l0, l1, e)
                } else {
                    (l1, l0, e)
                }
            })
            .collect();
        let wires: Vec<(usize, usize, &WireMatrix)> =
            oriented.iter().map(|&(x, y, e)| (x, y, &matrices[e])).collect();
        let merged = if a == b {
            trace_wires(slots[a].as_ref().expect("live tensor"), &wires, dim)
        } else {
            let tb = slots[b].take().expect("live tensor");
            join_wires(slots[a].as_ref().expect("live tensor"), &tb, &wires)
        };
        let legs: Vec<usize> = step.iter().flat_map(|&e| network.edges[e].legs).collect();
        groups.apply((a, b), &legs);
        slots[a] = Some(merged);
    }
    Ok(slots.into_iter().flatten().map(|t| t.scalar()).product())
}

fn default_assignment(t: &Triangulation) -> OrientationAssignment {
    match t.orientability() {
        Orientability::Orientable(a) => a,
        Orientability::Nonorientable => OrientationAssignment::all_positive(t.face_count()),
    }
}

/// `I_A(T)` under a chosen orientation assignment.
pub fn invariant_with_assignment(
    algebra: &BasedAlgebra,
    t: &Triangulation,
    assignment: &OrientationAssignment,
) -> Result<Rational, TqftError> {
    let network = build_network(algebra, t, assignment)?;
    let plan = plan_contraction(&network);
    contract(&network, &plan)
}

/// `I_A(T)`. Orientable surfaces use a coherent orientation, so no star is
/// needed; otherwise every triangle gets `+1`.
pub fn invariant_direct(algebra: &BasedAlgebra, t: &Triangulation) -> Result<Rational, TqftError> {
    invariant_with_assignment(algebra, t, &default_assignment(t))
}

fn power(base: i64, exp: i64) -> Rational {
    Rational::from_integer(BigInt::from(base)).pow(exp as i32)
}

/// Closed form for a classified block sum.
pub fn invariant_structured(algebra: &StructuredAlgebra, t: &Triangulation) -> Rational {
    let chi = t.euler_characteristic();
    let orientations = if t.is_orientable() { 2 } else { 0 };
    algebra
        .blocks()
        .iter()
        .map(|&b| match b {
            Block::Plain(n) => power(n as i64, chi),
            Block::Swap(n) => power(n as i64, chi) * Rational::from_integer(orientations.into()),
            Block::Anti(n) => power(-(n as i64), chi),
        })
        .sum()
}

/// Character side: `Σ d^χ` when orientable, `Σ_{ν≠0} (ν d)^χ` otherwise.
pub fn mednykh_lhs(irreps: &IrrepData, chi: i64, orientable: bool) -> Rational {
    irreps
        .entries()
        .iter()
        .filter_map(|&(d, fs)| match (orientable, fs) {
            (true, _) => Some(power(d as i64, chi)),
            (false, 0) => None,
            (false, s) => Some(power(s as i64 * d as i64, chi)),
        })
        .sum()
}

/// Closed surface type read from `χ` and orientability.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurfaceType {
    Genus(usize),
    Crosscaps(usize),
}

pub fn classify_surface(t: &Triangulation) -> Result<SurfaceType, TqftError> {
    let chi = t.euler_characteristic();
    let orientable = t.is_orientable();
    let connected = t.is_connected();
    let bad = TqftError::UnrecognizedTopology {
        chi,
        orientable,
        connected,
    };
    if !connected {
        return Err(bad);
    }
    match orientable {
        true if chi <= 2 && chi % 2 == 0 => Ok(SurfaceType::Genus(((2 - chi) / 2) as usize)),
        false if chi <= 1 => Ok(SurfaceType::Crosscaps((2 - chi) as usize)),
        _ => Err(bad),
    }
}

/// Homomorphism side: `#G^(χ-1) · #Hom(π₁(T), G)`.
pub fn mednykh_rhs(g: &FiniteGroup, t: &Triangulation, limits: &Limits) -> Result<Rational, TqftError> {
    let homs = match classify_surface(t)? {
        SurfaceType::Genus(genus) => hom_count_orientable(g, genus, limits)?,
        SurfaceType::Crosscaps(k) => hom_count_nonorientable(g, k, limits)?,
    };
    let homs = Rational::from_integer(BigInt::from(homs));
    Ok(power(g.order() as i64, t.euler_characteristic() - 1) * homs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;
    use crate::algebra::{direct_sum, group_algebra, matrix_algebra, swap_algebra, tensor_product, StarKind};
    use crate::grouptheory::{catalog, irrep_data};
    use crate::surface::{nonorientable_surface, orientable_genus_surface, tetrahedron};

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    fn fans() -> Vec<Triangulation> {
        vec![
            orientable_genus_surface(0),
            orientable_genus_surface(1),
            orientable_genus_surface(2),
            nonorientable_surface(1).unwrap(),
            nonorientable_surface(2).unwrap(),
            nonorientable_surface(3).unwrap(),
        ]
    }

    #[test]
    fn network_shape() {
        let m2 = matrix_algebra(2, StarKind::Transpose).unwrap();
        let tet = tetrahedron();
        let net = build_network(&m2, &tet, &default_assignment(&tet)).unwrap();
        assert_eq!(net.triangle_nodes().len(), 4);
        assert_eq!(net.edge_nodes().len(), 6);
        assert!(net.triangle_nodes().iter().all(|t| t.nonzeros() == 8 && t.rank() == 3));
        let wiring = net.wiring();
        assert_eq!(wiring.len(), 12);
        assert!(wiring.iter().all(|&(t, e)| t < 4 && e < 6));

        let c2 = group_algebra(&catalog("C2").unwrap());
        let rp2 = nonorientable_surface(1).unwrap();
        let net = build_network(&c2, &rp2, &OrientationAssignment::all_positive(2)).unwrap();
        assert!(net.edge_nodes().iter().any(|e| e.kind() == EdgeKind::Disagree));
    }

    #[test]
    fn star_required_without_star() {
        let m2 = matrix_algebra(2, StarKind::None).unwrap();
        let klein = nonorientable_surface(2).unwrap();
        assert!(matches!(invariant_direct(&m2, &klein), Err(TqftError::StarRequired { .. })));
        // Orientable surfaces never need one.
        assert_eq!(invariant_direct(&m2, &orientable_genus_surface(1)).unwrap(), r(1, 1));
    }

    #[test]
    fn plans() {
        let m2 = matrix_algebra(2, StarKind::Transpose).unwrap();
        let sphere = orientable_genus_surface(0);
        let net = build_network(&m2, &sphere, &default_assignment(&sphere)).unwrap();
        let plan = plan_contraction(&net);
        assert_eq!(plan.len(), 3);
        assert!(plan.cost_estimate() >= 16);

        let torus = orientable_genus_surface(1);
        let net = build_network(&m2, &torus, &default_assignment(&torus)).unwrap();
        assert_eq!(plan_contraction(&net), plan_contraction(&net));
        let repeated = vec![vec![0], vec![0], vec![1], vec![2], vec![3], vec![4]];
        assert!(matches!(plan_from_steps(&net, repeated), Err(TqftError::PlanMismatch(_))));
        assert!(matches!(plan_from_steps(&net, vec![vec![0]]), Err(TqftError::PlanMismatch(_))));
        assert_eq!(
            contract(&net, &naive_plan(&net)).unwrap(),
            contract(&net, &plan_contraction(&net)).unwrap()
        );
    }

    #[test]
    fn contraction_examples() {
        let m3 = matrix_algebra(3, StarKind::Transpose).unwrap();
        assert_eq!(invariant_direct(&m3, &orientable_genus_surface(0)).unwrap(), r(9, 1));
        let anti = matrix_algebra(2, StarKind::Anti).unwrap();
        assert_eq!(invariant_direct(&anti, &nonorientable_surface(1).unwrap()).unwrap(), r(-2, 1));
        assert_eq!(invariant_direct(&anti, &orientable_genus_surface(2)).unwrap(), r(1, 4));
        assert_eq!(invariant_direct(&swap_algebra(), &nonorientable_surface(2).unwrap()).unwrap(), r(0, 1));
        let k = matrix_algebra(1, StarKind::Transpose).unwrap();
        for t in fans() {
            assert_eq!(invariant_direct(&k, &t).unwrap(), Rational::one());
        }
        let s3 = group_algebra(&catalog("S3").unwrap());
        assert_eq!(invariant_direct(&s3, &orientable_genus_surface(1)).unwrap(), r(3, 1));
    }

    #[test]
    fn orientation_choice_is_immaterial() {
        let algebras = [
            matrix_algebra(2, StarKind::Anti).unwrap(),
            swap_algebra(),
            group_algebra(&catalog("C3").unwrap()),
        ];
        for a in &algebras {
            for t in fans().into_iter().take(5) {
                let base = invariant_direct(a, &t).unwrap();
                let assign = default_assignment(&t);
                for f in 0..t.face_count() {
                    assert_eq!(invariant_with_assignment(a, &t, &assign.flipped(f)).unwrap(), base);
                }
            }
        }
    }

    #[test]
    fn sum_and_product_rules() {
        let a = matrix_algebra(2, StarKind::Anti).unwrap();
        let b = swap_algebra();
        for t in fans().into_iter().take(5) {
            let ia = invariant_direct(&a, &t).unwrap();
            let ib = invariant_direct(&b, &t).unwrap();
            assert_eq!(invariant_direct(&direct_sum(&a, &b).unwrap(), &t).unwrap(), &ia + &ib);
            assert_eq!(invariant_direct(&tensor_product(&a, &b).unwrap(), &t).unwrap(), ia * ib);
        }
    }

    #[test]
    fn structured_examples() {
        let g2 = orientable_genus_surface(2);
        let s3 = StructuredAlgebra::new(vec![Block::Plain(1), Block::Plain(1), Block::Plain(2)]).unwrap();
        assert_eq!(invariant_structured(&s3, &g2), r(9, 4));
        let q8 = StructuredAlgebra::new(vec![Block::Plain(1); 4].into_iter().chain([Block::Anti(2)]).collect()).unwrap();
        assert_eq!(invariant_structured(&q8, &nonorientable_surface(1).unwrap()), r(2, 1));
        let swap = StructuredAlgebra::new(vec![Block::Swap(1)]).unwrap();
        for k in 1..=3 {
            assert!(invariant_structured(&swap, &nonorientable_surface(k).unwrap()).is_zero());
        }
    }

    #[test]
    fn structured_matches_direct() {
        let cases = [
            (Block::Plain(2), matrix_algebra(2, StarKind::Transpose).unwrap()),
            (Block::Swap(1), swap_algebra()),
            (Block::Anti(2), matrix_algebra(2, StarKind::Anti).unwrap()),
        ];
        for (block, alg) in &cases {
            let s = StructuredAlgebra::new(vec![*block]).unwrap();
            for t in fans() {
                assert_eq!(invariant_structured(&s, &t), invariant_direct(alg, &t).unwrap(), "{block:?}");
            }
        }
    }

    #[test]
    fn mednykh_sides() {
        let s3 = irrep_data(&catalog("S3").unwrap()).unwrap();
        assert_eq!(mednykh_lhs(&s3, 0, true), r(3, 1));
        let q8 = irrep_data(&catalog("Q8").unwrap()).unwrap();
        assert_eq!(mednykh_lhs(&q8, 1, false), r(2, 1));
        let c4 = irrep_data(&catalog("C4").unwrap()).unwrap();
        assert_eq!(mednykh_lhs(&c4, 0, false), r(2, 1));

        let lim = Limits::default();
        let s3g = catalog("S3").unwrap();
        assert_eq!(mednykh_rhs(&s3g, &orientable_genus_surface(1), &lim).unwrap(), r(3, 1));
        assert_eq!(mednykh_rhs(&s3g, &nonorientable_surface(1).unwrap(), &lim).unwrap(), r(4, 1));
        let c2 = catalog("C2").unwrap();
        assert_eq!(mednykh_rhs(&c2, &orientable_genus_surface(2), &lim).unwrap(), r(2, 1));
    }

    #[test]
    fn disconnected_surface_is_unrecognized() {
        let sphere = orientable_genus_surface(0);
        // Two disjoint copies of the 2-triangle sphere.
        let mut data = Vec::new();
        for copy in 0..2 {
            for e in sphere.edges() {
                let shift = |s: crate::surface::Side| crate::surface::Side::new(s.triangle + 2 * copy, s.slot);
                data.push((shift(e.first), shift(e.second), e.flip));
            }
        }
        let two = Triangulation::from_gluing_data(4, &data).unwrap();
        assert!(matches!(
            mednykh_rhs(&catalog("C2").unwrap(), &two, &Limits::default()),
            Err(TqftError::UnrecognizedTopology { connected: false, .. })
        ));
        let m2 = matrix_algebra(2, StarKind::Transpose).unwrap();
        assert_eq!(invariant_direct(&m2, &two).unwrap(), r(16, 1));
    }
}
