//! Directed multigraphs and vector-valued vertex labelings.

use crate::error::{Error, Result};
use crate::exactla::{image_basis, kernel_basis, Matrix, Subspace};
use crate::field::{FieldSpec, Scalar};
use crate::tensor::{basis_of_span, TensorElem, Word};

/// A finite directed multigraph; loops and parallel edges are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Multigraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl Multigraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(s, t) in &edges {
            for v in [s, t] {
                if v >= vertex_count {
                    return Err(Error::UnknownVertex(v.to_string()));
                }
            }
        }
        Ok(Multigraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }
}

/// `|X| × |E|` matrix with `+1` at the target and `-1` at the source.
pub fn incidence_matrix(g: &Multigraph, field: FieldSpec) -> Matrix {
    let mut m = Matrix::zeros(field, g.vertex_count, g.edges.len());
    for (e, &(s, t)) in g.edges.iter().enumerate() {
        if s != t {
            m.set(t, e, field.one());
            m.set(s, e, -field.one());
        }
    }
    m
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Weakly connected components. Ids are assigned in order of the smallest
/// vertex of each component.
pub fn weak_components(g: &Multigraph) -> (Vec<usize>, usize) {
    let n = g.vertex_count;
    let mut parent: Vec<usize> = (0..n).collect();
    for &(s, t) in &g.edges {
        let (a, b) = (find(&mut parent, s), find(&mut parent, t));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut ids = vec![usize::MAX; n];
    let mut count = 0;
    let labels = (0..n)
        .map(|v| {
            let r = find(&mut parent, v);
            if ids[r] == usize::MAX {
                ids[r] = count;
                count += 1;
            }
            ids[r]
        })
        .collect();
    (labels, count)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpanningForest {
    tree_edges: Vec<usize>,
    in_tree: Vec<bool>,
    /// Parent vertex and the tree edge joining to it; `None` at roots.
    parent: Vec<Option<(usize, usize)>>,
    depth: Vec<usize>,
    component: Vec<usize>,
    roots: Vec<usize>,
}

impl SpanningForest {
    /// Sorted tree edge indices.
    pub fn tree_edges(&self) -> &[usize] {
        &self.tree_edges
    }

    pub fn is_tree_edge(&self, e: usize) -> bool {
        self.in_tree[e]
    }

    /// One root per component, indexed by component id.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn component_of(&self, v: usize) -> usize {
        self.component[v]
    }

    pub fn root_of(&self, v: usize) -> usize {
        self.roots[self.component[v]]
    }

    pub fn component_count(&self) -> usize {
        self.roots.len()
    }

    pub fn parent(&self, v: usize) -> Option<(usize, usize)> {
        self.parent[v]
    }
}

/// Spanning forest grown from the smallest vertex of each component.
///
/// Each round scans the edges in index order and adds every edge with exactly
/// one endpoint already reached; rounds repeat until nothing changes.
pub fn spanning_forest(g: &Multigraph) -> SpanningForest {
    let n = g.vertex_count;
    let (component, c) = weak_components(g);
    let mut roots = vec![usize::MAX; c];
    for v in 0..n {
        if roots[component[v]] == usize::MAX {
            roots[component[v]] = v;
        }
    }
    let mut reached = vec![false; n];
    let mut parent = vec![None; n];
    let mut depth = vec![0; n];
    let mut in_tree = vec![false; g.edges.len()];
    for &r in &roots {
        reached[r] = true;
    }
    loop {
        let mut changed = false;
        for (e, &(s, t)) in g.edges.iter().enumerate() {
            if reached[s] == reached[t] {
                continue;
            }
            let (from, to) = if reached[s] { (s, t) } else { (t, s) };
            reached[to] = true;
            parent[to] = Some((from, e));
            depth[to] = depth[from] + 1;
            in_tree[e] = true;
            changed = true;
        }
        if !changed {
            break;
        }
    }
    let tree_edges = (0..g.edges.len()).filter(|&e| in_tree[e]).collect();
    SpanningForest {
        tree_edges,
        in_tree,
        parent,
        depth,
        component,
        roots,
    }
}

/// The signed path vector `F[a, b]` along tree edges, with `+1` where the
/// path traverses an edge from source to target.
pub fn signed_path_vector(
    g: &Multigraph,
    f: &SpanningForest,
    a: usize,
    b: usize,
    field: FieldSpec,
) -> Result<Vec<Scalar>> {
    if f.component[a] != f.component[b] {
        return Err(Error::DifferentComponents(a, b));
    }
    let mut v = vec![field.zero(); g.edges.len()];
    let (mut x, mut y) = (a, b);
    while x != y {
        if f.depth[x] >= f.depth[y] {
            let (p, e) = f.parent[x].expect("non-root vertex has a parent");
            let sign = if g.edges[e].0 == x { 1 } else { -1 };
            v[e] = &v[e] + &field.from_i64(sign);
            x = p;
        } else {
            let (p, e) = f.parent[y].expect("non-root vertex has a parent");
            let sign = if g.edges[e].0 == p { 1 } else { -1 };
            v[e] = &v[e] + &field.from_i64(sign);
            y = p;
        }
    }
    Ok(v)
}

/// `1_e − F[s(e), t(e)]` for every non-tree edge, in edge order.
pub fn topological_cycle_basis(g: &Multigraph, f: &SpanningForest, field: FieldSpec) -> Vec<Vec<Scalar>> {
    (0..g.edges.len())
        .filter(|&e| !f.in_tree[e])
        .map(|e| {
            let (s, t) = g.edges[e];
            let mut z = signed_path_vector(g, f, s, t, field)
                .expect("edge endpoints share a component")
                .into_iter()
                .map(|x| -x)
                .collect::<Vec<_>>();
            z[e] = &z[e] + &field.one();
            z
        })
        .collect()
}

/// A vertex labeling `φ : X → U`, stored as the coordinate matrix of its
/// linear extension (one column per vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labeling {
    graph: Multigraph,
    evaluation: Matrix,
    words: Option<Vec<Word>>,
}

impl Labeling {
    pub fn from_matrix(graph: Multigraph, evaluation: Matrix) -> Result<Self> {
        if evaluation.cols() != graph.vertex_count {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} vertices",
                evaluation.cols(),
                graph.vertex_count
            )));
        }
        Ok(Labeling {
            graph,
            evaluation,
            words: None,
        })
    }

    /// Labels given as tensors, coordinatized over the union of their supports.
    pub fn from_tensors(graph: Multigraph, field: FieldSpec, labels: &[TensorElem]) -> Result<Self> {
        let (words, rows) = basis_of_span(field, labels)?;
        let mut l = Labeling::from_matrix(graph, rows.transpose())?;
        l.words = Some(words);
        Ok(l)
    }

    /// `φ(x) = 1_x`.
    pub fn identity(graph: Multigraph, field: FieldSpec) -> Self {
        let evaluation = Matrix::identity(field, graph.vertex_count);
        Labeling {
            graph,
            evaluation,
            words: None,
        }
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn evaluation(&self) -> &Matrix {
        &self.evaluation
    }

    pub fn field(&self) -> FieldSpec {
        self.evaluation.field()
    }

    /// Word index of the rows when built from tensors.
    pub fn words(&self) -> Option<&[Word]> {
        self.words.as_deref()
    }

    fn label(&self, x: usize) -> Vec<Scalar> {
        self.evaluation.column(x)
    }
}

/// Coordinate matrix of `∂_φ(1_e) = φ(t(e)) − φ(s(e))`.
pub fn labeled_incidence(l: &Labeling) -> Matrix {
    let field = l.field();
    let cols: Vec<Vec<Scalar>> = l
        .graph
        .edges
        .iter()
        .map(|&(s, t)| {
            l.label(t)
                .iter()
                .zip(l.label(s))
                .map(|(a, b)| a - &b)
                .collect()
        })
        .collect();
    Matrix::from_columns(field, l.evaluation.rows(), &cols).expect("columns share the label dimension")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Defect {
    pub delta: usize,
    pub z_alg: Subspace,
}

/// `Im(B_D) ∩ Ker(φ̂)` and its dimension, checked against the rank drop.
pub fn defect(l: &Labeling) -> Result<Defect> {
    let field = l.field();
    let b = incidence_matrix(&l.graph, field);
    let z_alg = image_basis(&b).intersect(&kernel_basis(&l.evaluation))?;
    let delta = z_alg.dim();
    let (_, c) = weak_components(&l.graph);
    let drop = l.graph.vertex_count - c - labeled_incidence(l).rank();
    if drop != delta {
        return Err(Error::inconsistency(format!(
            "defect {delta} disagrees with rank drop {drop}"
        )));
    }
    Ok(Defect { delta, z_alg })
}

/// Matrix of `1_x ↦ φ(x) − φ(r_C)` over the non-root vertices.
fn rooted_differences(l: &Labeling, roots_of: impl Fn(usize) -> usize) -> Matrix {
    let cols: Vec<Vec<Scalar>> = (0..l.graph.vertex_count)
        .filter(|&x| roots_of(x) != x)
        .map(|x| {
            let r = l.label(roots_of(x));
            l.label(x).iter().zip(r).map(|(a, b)| a - &b).collect()
        })
        .collect();
    Matrix::from_columns(l.field(), l.evaluation.rows(), &cols).expect("columns share the label dimension")
}

/// Nullity of the rooted difference map, with the forest roots as basepoints.
pub fn rooted_difference_nullity(l: &Labeling, f: &SpanningForest) -> usize {
    let m = rooted_differences(l, |x| f.root_of(x));
    m.cols() - m.rank()
}

/// Nullity of the rooted difference map for arbitrary basepoints, given per
/// component id.
pub fn rooted_difference_nullity_with_roots(l: &Labeling, roots: &[usize]) -> Result<usize> {
    let (labels, c) = weak_components(&l.graph);
    if roots.len() != c {
        return Err(Error::DimensionMismatch(format!("{} roots for {c} components", roots.len())));
    }
    for (id, &r) in roots.iter().enumerate() {
        if r >= l.graph.vertex_count || labels[r] != id {
            return Err(Error::UnknownVertex(r.to_string()));
        }
    }
    let m = rooted_differences(l, |x| roots[labels[x]]);
    Ok(m.cols() - m.rank())
}

/// Rank of the stacked rooted differences, which equals `rank ∂_φ`.
pub fn rooted_difference_rank(l: &Labeling, f: &SpanningForest) -> usize {
    rooted_differences(l, |x| f.root_of(x)).rank()
}

/// `ζ_r = Σ_x r_x F[r_C, x]`, an edge vector with `B_D ζ_r = r` and
/// `∂_φ ζ_r = 0`.
pub fn algebraic_lift(l: &Labeling, f: &SpanningForest, r: &[Scalar]) -> Result<Vec<Scalar>> {
    let field = l.field();
    let n = l.graph.vertex_count;
    if r.len() != n {
        return Err(Error::DimensionMismatch(format!("vector of length {} for {n} vertices", r.len())));
    }
    if !defect(l)?.z_alg.contains(r)? {
        return Err(Error::NotInAlgebraicCycleSpace);
    }
    let mut zeta = vec![field.zero(); l.graph.edges.len()];
    for (x, rx) in r.iter().enumerate() {
        if rx.is_zero() {
            continue;
        }
        let path = signed_path_vector(&l.graph, f, f.root_of(x), x, field)?;
        for (z, p) in zeta.iter_mut().zip(path) {
            if !p.is_zero() {
                *z = &*z + &(rx * &p);
            }
        }
    }
    let b = incidence_matrix(&l.graph, field);
    if b.mul_vec(&zeta)? != r {
        return Err(Error::inconsistency("lift does not map onto r"));
    }
    if labeled_incidence(l).mul_vec(&zeta)?.iter().any(|x| !x.is_zero()) {
        return Err(Error::inconsistency("lift is not a cycle"));
    }
    Ok(zeta)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtendedBasis {
    pub topological: Vec<Vec<Scalar>>,
    pub lifted: Vec<Vec<Scalar>>,
}

impl ExtendedBasis {
    pub fn len(&self) -> usize {
        self.topological.len() + self.lifted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn vectors(&self) -> Vec<Vec<Scalar>> {
        self.topological.iter().chain(&self.lifted).cloned().collect()
    }
}

/// Fundamental cycles of the spanning forest together with lifts of the RREF
/// basis of the algebraic cycle space.
pub fn extended_kernel_basis(l: &Labeling) -> Result<ExtendedBasis> {
    let field = l.field();
    let g = &l.graph;
    let f = spanning_forest(g);
    let d = defect(l)?;
    let topological = topological_cycle_basis(g, &f, field);
    let lifted = d
        .z_alg
        .vectors()
        .iter()
        .map(|r| algebraic_lift(l, &f, r))
        .collect::<Result<Vec<_>>>()?;
    let basis = ExtendedBasis { topological, lifted };

    let m = g.edge_count();
    let expected = m + f.component_count() + d.delta - g.vertex_count;
    let stacked = Matrix::from_rows(field, m, basis.vectors())?;
    if basis.len() != expected || stacked.rank() != expected {
        return Err(Error::inconsistency(format!(
            "extended basis has {} vectors of rank {}, expected {expected}",
            basis.len(),
            stacked.rank()
        )));
    }
    let del = labeled_incidence(l);
    for v in basis.vectors() {
        if del.mul_vec(&v)?.iter().any(|x| !x.is_zero()) {
            return Err(Error::inconsistency("extended basis vector outside the kernel"));
        }
    }
    Ok(basis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rref;
    use proptest::prelude::*;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn graph(n: usize, edges: &[(usize, usize)]) -> Multigraph {
        Multigraph::new(n, edges.to_vec()).unwrap()
    }

    fn ints(field: FieldSpec, v: &[i64]) -> Vec<Scalar> {
        v.iter().map(|&x| field.from_i64(x)).collect()
    }

    fn span(field: FieldSpec, n: usize, vs: &[Vec<Scalar>]) -> Subspace {
        Subspace::span(field, n, vs).unwrap()
    }

    /// Labeling by columns of small integers.
    fn labeling(g: Multigraph, field: FieldSpec, labels: &[Vec<i64>]) -> Labeling {
        let dim = labels.first().map_or(0, Vec::len);
        let cols: Vec<Vec<Scalar>> = labels.iter().map(|l| ints(field, l)).collect();
        Labeling::from_matrix(g, Matrix::from_columns(field, dim, &cols).unwrap()).unwrap()
    }

    #[test]
    fn incidence_examples() {
        let b = incidence_matrix(&graph(2, &[(0, 1), (0, 0)]), Q);
        assert_eq!(b, Matrix::from_i64(Q, &[vec![-1, 0], vec![1, 0]]));
        assert!(matches!(Multigraph::new(2, vec![(0, 2)]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn component_examples() {
        assert_eq!(weak_components(&graph(4, &[])).1, 4);
        assert_eq!(weak_components(&graph(3, &[(0, 1), (1, 2)])).1, 1);
        let (labels, c) = weak_components(&graph(4, &[(3, 1), (0, 2)]));
        assert_eq!((labels, c), (vec![0, 1, 0, 1], 2));
    }

    #[test]
    fn forest_examples() {
        let tree = graph(4, &[(1, 0), (1, 2), (3, 2)]);
        assert_eq!(spanning_forest(&tree).tree_edges(), &[0, 1, 2]);
        let triangle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        assert_eq!(spanning_forest(&triangle).tree_edges(), &[0, 1]);
        assert!(spanning_forest(&graph(1, &[(0, 0)])).tree_edges().is_empty());
        let late = graph(4, &[(2, 3), (1, 2), (0, 1)]);
        let f = spanning_forest(&late);
        assert_eq!(f.tree_edges(), &[0, 1, 2]);
        assert_eq!(f.roots(), &[0]);
    }

    #[test]
    fn signed_path_examples() {
        let p = graph(3, &[(0, 1), (1, 2)]);
        let f = spanning_forest(&p);
        assert_eq!(signed_path_vector(&p, &f, 0, 2, Q).unwrap(), ints(Q, &[1, 1]));
        assert_eq!(signed_path_vector(&p, &f, 1, 1, Q).unwrap(), ints(Q, &[0, 0]));
        assert_eq!(signed_path_vector(&p, &f, 2, 0, Q).unwrap(), ints(Q, &[-1, -1]));
        let rev = graph(2, &[(1, 0)]);
        let f = spanning_forest(&rev);
        assert_eq!(signed_path_vector(&rev, &f, 0, 1, Q).unwrap(), ints(Q, &[-1]));
        let two = graph(3, &[(0, 1)]);
        let f = spanning_forest(&two);
        assert_eq!(signed_path_vector(&two, &f, 0, 2, Q), Err(Error::DifferentComponents(0, 2)));
    }

    #[test]
    fn topological_cycle_examples() {
        let tree = graph(3, &[(0, 1), (2, 1)]);
        assert!(topological_cycle_basis(&tree, &spanning_forest(&tree), Q).is_empty());

        let triangle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let z = topological_cycle_basis(&triangle, &spanning_forest(&triangle), Q);
        assert_eq!(z.len(), 1);
        assert!(z[0].iter().all(|x| !x.is_zero()));
        let b = incidence_matrix(&triangle, Q);
        assert_eq!(span(Q, 3, &z), kernel_basis(&b));

        let parallel = graph(2, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        let z = topological_cycle_basis(&parallel, &spanning_forest(&parallel), Q);
        let expected: Vec<Vec<Scalar>> = (1..4)
            .map(|i| {
                let mut v = vec![0; 4];
                v[0] = 1;
                v[i] = -1;
                ints(Q, &v)
            })
            .collect();
        assert_eq!(span(Q, 4, &z), span(Q, 4, &expected));
    }

    #[test]
    fn labeled_incidence_examples() {
        let g = graph(3, &[(0, 1), (1, 2), (2, 2)]);
        assert_eq!(labeled_incidence(&Labeling::identity(g.clone(), Q)), incidence_matrix(&g, Q));
        let constant = labeling(g.clone(), Q, &[vec![1, 2], vec![1, 2], vec![1, 2]]);
        assert!(labeled_incidence(&constant).is_zero());
        let any = labeling(g, Q, &[vec![1, 0], vec![4, 5], vec![-2, 7]]);
        assert!(labeled_incidence(&any).column(2).iter().all(Scalar::is_zero));
    }

    #[test]
    fn defect_examples() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        assert_eq!(defect(&Labeling::identity(g.clone(), Q)).unwrap().delta, 0);
        let constant = labeling(g.clone(), Q, &[vec![3], vec![3], vec![3]]);
        assert_eq!(defect(&constant).unwrap().delta, 2);

        // Star centred at a with leaves a+b and a−b, over the basis (a, b).
        let star = graph(3, &[(0, 1), (0, 2)]);
        let l = labeling(star, Q, &[vec![1, 0], vec![1, 1], vec![1, -1]]);
        let d = defect(&l).unwrap();
        assert_eq!(d.delta, 1);
        assert_eq!(d.z_alg, span(Q, 3, &[ints(Q, &[-2, 1, 1])]));
    }

    #[test]
    fn rooted_difference_examples() {
        let g = graph(3, &[(0, 1), (1, 2)]);
        let affine = labeling(g.clone(), Q, &[vec![0, 0], vec![1, 0], vec![0, 1]]);
        assert_eq!(rooted_difference_nullity(&affine, &spanning_forest(&g)), 0);
        let pair = graph(2, &[(0, 1)]);
        let eq = labeling(pair.clone(), Q, &[vec![5], vec![5]]);
        assert_eq!(rooted_difference_nullity(&eq, &spanning_forest(&pair)), 1);
        let star = graph(3, &[(0, 1), (0, 2)]);
        let l = labeling(star.clone(), Q, &[vec![1, 0], vec![1, 1], vec![1, -1]]);
        assert_eq!(rooted_difference_nullity(&l, &spanning_forest(&star)), 1);
        assert!(rooted_difference_nullity_with_roots(&l, &[5]).is_err());
    }

    #[test]
    fn lift_examples() {
        let star = graph(3, &[(0, 1), (0, 2)]);
        let l = labeling(star.clone(), Q, &[vec![1, 0], vec![1, 1], vec![1, -1]]);
        let f = spanning_forest(&star);
        assert_eq!(algebraic_lift(&l, &f, &ints(Q, &[0, 0, 0])).unwrap(), ints(Q, &[0, 0]));
        let r = ints(Q, &[-2, 1, 1]);
        assert_eq!(algebraic_lift(&l, &f, &r).unwrap(), ints(Q, &[1, 1]));
        assert_eq!(algebraic_lift(&l, &f, &ints(Q, &[-1, 1, 0])), Err(Error::NotInAlgebraicCycleSpace));
    }

    #[test]
    fn four_leaf_star_lift() {
        // Centre a+b+c; leaves a+c, b+c, c, d. The differences are −b, −a,
        // −a−b and d−a−b−c.
        let star = graph(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]);
        let l = labeling(
            star.clone(),
            Q,
            &[vec![1, 1, 1, 0], vec![1, 0, 1, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]],
        );
        let f = spanning_forest(&star);
        let b = incidence_matrix(&star, Q);
        let r = b.mul_vec(&ints(Q, &[1, 1, -1, 0])).unwrap();
        let zeta = algebraic_lift(&l, &f, &r).unwrap();
        assert_eq!(zeta, ints(Q, &[1, 1, -1, 0]));
        assert_eq!(defect(&l).unwrap().delta, 1);
    }

    #[test]
    fn extended_basis_examples() {
        let triangle = graph(3, &[(0, 1), (1, 2), (2, 0)]);
        let basis = extended_kernel_basis(&Labeling::identity(triangle.clone(), Q)).unwrap();
        assert!(basis.lifted.is_empty());
        assert_eq!(basis.topological, topological_cycle_basis(&triangle, &spanning_forest(&triangle), Q));

        let star = graph(3, &[(0, 1), (0, 2)]);
        let l = labeling(star, Q, &[vec![1, 0], vec![1, 1], vec![1, -1]]);
        let basis = extended_kernel_basis(&l).unwrap();
        assert_eq!((basis.topological.len(), basis.lifted.len()), (0, 1));

        let empty = extended_kernel_basis(&Labeling::identity(graph(3, &[]), Q)).unwrap();
        assert!(empty.is_empty());
        let nothing = extended_kernel_basis(&Labeling::identity(graph(0, &[]), Q)).unwrap();
        assert!(nothing.is_empty());
    }

    #[test]
    fn tensor_labels() {
        let star = graph(3, &[(0, 1), (0, 2)]);
        let a = TensorElem::pure(Q, vec![0]);
        let b = TensorElem::pure(Q, vec![1]);
        let labels = [a.clone(), a.add(&b).unwrap(), a.sub(&b).unwrap()];
        let l = Labeling::from_tensors(star, Q, &labels).unwrap();
        assert_eq!(l.words().unwrap().len(), 2);
        assert_eq!(defect(&l).unwrap().delta, 1);
    }

    type Instance = (usize, Vec<(usize, usize)>, usize, Vec<Vec<i64>>);

    /// Random graph plus labels in `F^dim` with small integer entries.
    fn instance() -> impl Strategy<Value = Instance> {
        (1usize..7, 0usize..4).prop_flat_map(|(n, dim)| {
            (
                Just(n),
                proptest::collection::vec((0..n, 0..n), 0..9),
                Just(dim),
                proptest::collection::vec(proptest::collection::vec(-2i64..3, dim), n),
            )
        })
    }

    fn fields() -> [FieldSpec; 3] {
        [Q, FieldSpec::Prime(2), FieldSpec::Prime(3)]
    }

    fn kernel_size_f2(del: &Matrix) -> usize {
        let m = del.cols();
        (0u32..1 << m)
            .filter(|mask| {
                let v: Vec<Scalar> = (0..m).map(|i| FieldSpec::Prime(2).from_i64(((mask >> i) & 1) as i64)).collect();
                del.mul_vec(&v).unwrap().iter().all(Scalar::is_zero)
            })
            .count()
    }

    proptest! {
        #[test]
        fn classical_rank(n in 1usize..7, edges in proptest::collection::vec((0usize..6, 0usize..6), 0..10), fi in 0usize..3) {
            let edges: Vec<_> = edges.into_iter().map(|(s, t)| (s % n, t % n)).collect();
            let g = graph(n, &edges);
            let (_, c) = weak_components(&g);
            prop_assert_eq!(incidence_matrix(&g, fields()[fi]).rank(), n - c);
            let f = spanning_forest(&g);
            prop_assert_eq!(f.tree_edges().len(), n - c);
            prop_assert!(f.tree_edges().iter().all(|&e| g.edge(e).0 != g.edge(e).1));
        }

        #[test]
        fn path_vectors_telescope((n, edges, _, _) in instance(), fi in 0usize..3) {
            let field = fields()[fi];
            let g = graph(n, &edges);
            let f = spanning_forest(&g);
            let b = incidence_matrix(&g, field);
            for a in 0..n {
                for c in 0..n {
                    match signed_path_vector(&g, &f, a, c, field) {
                        Ok(p) => {
                            let mut expected = vec![field.zero(); n];
                            expected[c] = &expected[c] + &field.one();
                            expected[a] = &expected[a] - &field.one();
                            prop_assert_eq!(b.mul_vec(&p).unwrap(), expected);
                        }
                        Err(e) => prop_assert_eq!(e, Error::DifferentComponents(a, c)),
                    }
                }
            }
        }

        #[test]
        fn labeling_identities((n, edges, dim, labels) in instance(), fi in 0usize..3) {
            let field = fields()[fi];
            let g = graph(n, &edges);
            let l = labeling(g.clone(), field, &labels);
            let _ = dim;
            let del = labeled_incidence(&l);
            let b = incidence_matrix(&g, field);
            prop_assert_eq!(&del, &l.evaluation().mul(&b).unwrap());

            let d = defect(&l).unwrap();
            let (_, c) = weak_components(&g);
            let kernel = kernel_basis(&del);
            prop_assert_eq!(kernel.dim(), edges.len() + c + d.delta - n);

            let f = spanning_forest(&g);
            prop_assert_eq!(rooted_difference_rank(&l, &f), del.rank());
            prop_assert_eq!(rooted_difference_nullity(&l, &f), d.delta);
            let (labels_c, _) = weak_components(&g);
            let mut largest = vec![0; c];
            for v in 0..n {
                largest[labels_c[v]] = v;
            }
            prop_assert_eq!(rooted_difference_nullity_with_roots(&l, &largest).unwrap(), d.delta);

            let basis = extended_kernel_basis(&l).unwrap();
            let spanned = span(field, edges.len(), &basis.vectors());
            prop_assert_eq!(&spanned, &kernel);
            let lifted_images: Vec<Vec<Scalar>> = basis.lifted.iter().map(|z| b.mul_vec(z).unwrap()).collect();
            prop_assert_eq!(lifted_images, d.z_alg.vectors());
        }

        #[test]
        fn exhaustive_f2_kernel((n, edges, _, labels) in instance()) {
            let field = FieldSpec::Prime(2);
            let l = labeling(graph(n, &edges), field, &labels);
            let del = labeled_incidence(&l);
            let dim = kernel_basis(&del).dim();
            prop_assert_eq!(kernel_size_f2(&del), 1usize << dim);
            prop_assert_eq!(rref(&del).rank + dim, edges.len());
        }
    }
}
