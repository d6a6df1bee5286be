//! Finite-dimensional graded Lie algebras and the nilpotency tests on them.

use std::collections::{BTreeMap, BTreeSet};
use std::ops::RangeInclusive;

use super::series::{bch_series, LieOps};
use crate::error::{Error, Result};
use crate::qalgebra::{Scalar, SparseVec, SpanBasis};

/// A graded Lie algebra given by a homogeneous basis and structure constants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGradedLie {
    degrees: Vec<i32>,
    labels: Vec<String>,
    table: BTreeMap<(usize, usize), Vec<(usize, Scalar)>>,
}

fn sign_swap(p: i32, q: i32) -> Scalar {
    // [b,a] = -(-1)^{pq}[a,b]
    if (p * q).rem_euclid(2) == 1 {
        Scalar::one()
    } else {
        Scalar::from_int(-1)
    }
}

impl FiniteGradedLie {
    pub fn new(degrees: Vec<i32>, labels: Vec<String>) -> Self {
        assert_eq!(degrees.len(), labels.len());
        FiniteGradedLie { degrees, labels, table: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.degrees[i]
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// Basis elements of degree `p`, in order.
    pub fn basis_of_degree(&self, p: i32) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.degrees[i] == p).collect()
    }

    /// The `k`-th basis element of degree `p`.
    pub fn index_of(&self, p: i32, k: usize) -> Option<usize> {
        self.basis_of_degree(p).get(k).copied()
    }

    /// Sets `[e_i, e_j]` and, by graded antisymmetry, `[e_j, e_i]`.
    pub fn set_bracket(&mut self, i: usize, j: usize, v: Vec<(usize, Scalar)>) {
        let s = sign_swap(self.degrees[i], self.degrees[j]);
        let w: Vec<(usize, Scalar)> = v.iter().map(|(k, c)| (*k, c * &s)).collect();
        if v.is_empty() {
            self.table.remove(&(i, j));
            self.table.remove(&(j, i));
            return;
        }
        self.table.insert((i, j), v);
        if i != j {
            self.table.insert((j, i), w);
        }
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        self.table.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// Bracket of dense coordinate vectors (must be homogeneous for the
    /// graded signs to be meaningful; the table handles them termwise).
    pub fn bracket(&self, a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (i, ca) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, cb) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                if let Some(v) = self.table.get(&(i, j)) {
                    let c = ca * cb;
                    for (k, s) in v {
                        out[*k] += &c * s;
                    }
                }
            }
        }
        out
    }

    fn bracket_sparse(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (j, c) in v {
            if let Some(t) = self.table.get(&(i, *j)) {
                for (k, s) in t {
                    out[*k] += c * s;
                }
            }
        }
        crate::qalgebra::sparse::sparse_from_dense(&out)
    }

    /// Basis vector `i` as a dense coordinate vector.
    pub fn unit(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[i] = Scalar::one();
        v
    }

    /// Checks degree compatibility, graded antisymmetry and the graded Jacobi
    /// identity on basis elements.
    pub fn check_axioms(&self) -> Result<()> {
        for (&(i, j), v) in &self.table {
            for (k, _) in v {
                if self.degrees[*k] != self.degrees[i] + self.degrees[j] {
                    return Err(Error::Invariant(format!("[{i},{j}] has a term of the wrong degree")));
                }
            }
            let back = self.bracket_basis(j, i);
            let s = sign_swap(self.degrees[i], self.degrees[j]);
            let expect: Vec<(usize, Scalar)> = v.iter().map(|(k, c)| (*k, c * &s)).collect();
            if back != expect {
                return Err(Error::Invariant(format!("antisymmetry fails on basis pair ({i},{j})")));
            }
        }
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    // [a,[b,c]] = [[a,b],c] + (-1)^{|a||b|}[b,[a,c]]
                    let (ea, eb, ec) = (self.unit(a), self.unit(b), self.unit(c));
                    let lhs = self.bracket(&ea, &self.bracket(&eb, &ec));
                    let r1 = self.bracket(&self.bracket(&ea, &eb), &ec);
                    let r2 = self.bracket(&eb, &self.bracket(&ea, &ec));
                    let odd = (self.degrees[a] * self.degrees[b]).rem_euclid(2) == 1;
                    let ok = lhs.iter().zip(r1.iter().zip(&r2)).all(|(l, (x, y))| {
                        if odd {
                            *l == x - y
                        } else {
                            *l == x + y
                        }
                    });
                    if !ok {
                        return Err(Error::Invariant(format!("Jacobi fails on ({a},{b},{c})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// The degree-0 subalgebra, with its own basis numbering.
    pub fn degree_zero_part(&self) -> FiniteGradedLie {
        let idx = self.basis_of_degree(0);
        let pos: BTreeMap<usize, usize> = idx.iter().enumerate().map(|(n, &i)| (i, n)).collect();
        let mut out = FiniteGradedLie::new(
            vec![0; idx.len()],
            idx.iter().map(|&i| self.labels[i].clone()).collect(),
        );
        for (&(i, j), v) in &self.table {
            if let (Some(&a), Some(&b)) = (pos.get(&i), pos.get(&j)) {
                let w = v.iter().map(|(k, c)| (pos[k], c.clone())).collect();
                out.table.insert((a, b), w);
            }
        }
        out
    }

    /// Dimension of `[G, G]`.
    pub fn derived_dim(&self) -> usize {
        let mut span = SpanBasis::new();
        for (_, v) in &self.table {
            let mut v = v.clone();
            v.sort_by_key(|e| e.0);
            span.insert(&v);
        }
        span.dim()
    }
}

/// A subspace kept as an echelon basis plus the independent spanning vectors.
struct Subspace {
    span: SpanBasis,
    vectors: Vec<SparseVec>,
}

impl Subspace {
    fn new() -> Self {
        Subspace { span: SpanBasis::new(), vectors: Vec::new() }
    }

    fn add(&mut self, v: SparseVec) {
        if !v.is_empty() && self.span.insert(&v) {
            self.vectors.push(v);
        }
    }

    fn dim(&self) -> usize {
        self.vectors.len()
    }

    fn dims_by_degree(&self, g: &FiniteGradedLie) -> BTreeMap<i32, usize> {
        // vectors are homogeneous by construction
        let mut out = BTreeMap::new();
        for v in &self.vectors {
            *out.entry(g.degrees[v[0].0]).or_insert(0) += 1;
        }
        out
    }
}

/// Iterates `V ↦ [A, V]` starting from `start`, where `A` runs over the basis
/// elements `acting`. Returns dims of each term (as a per-degree map) until the
/// term vanishes or stops shrinking.
fn descending_series(
    g: &FiniteGradedLie,
    acting: &[usize],
    start: Subspace,
) -> (Vec<BTreeMap<i32, usize>>, bool) {
    let mut terms = vec![start.dims_by_degree(g)];
    let mut current = start;
    loop {
        if current.dim() == 0 {
            return (terms, true);
        }
        let mut next = Subspace::new();
        for &i in acting {
            for v in &current.vectors {
                next.add(g.bracket_sparse(i, v));
            }
        }
        if next.dim() == current.dim() {
            return (terms, false);
        }
        terms.push(next.dims_by_degree(g));
        current = next;
    }
}

fn full(g: &FiniteGradedLie, filter: impl Fn(i32) -> bool) -> Subspace {
    let mut s = Subspace::new();
    for i in 0..g.dim() {
        if filter(g.degrees[i]) {
            s.add(vec![(i, Scalar::one())]);
        }
    }
    s
}

/// Result of a lower-central-series computation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyVerdict {
    pub nilpotent: bool,
    /// Standard class: abelian nonzero algebras have class 1, zero has 0.
    pub class: Option<usize>,
    /// Total dimension (within the degree window) of `G^1, G^2, …`.
    pub series: Vec<usize>,
    /// For each degree, the first `k` with `(G^k)_p = 0`.
    pub vanishing_stage: BTreeMap<i32, Option<usize>>,
}

/// Lower central series of `g`, inspected degree by degree over `degrees`.
pub fn is_degreewise_nilpotent(g: &FiniteGradedLie, degrees: RangeInclusive<i32>) -> NilpotencyVerdict {
    let all: Vec<usize> = (0..g.dim()).collect();
    let (terms, reached_zero) = descending_series(g, &all, full(g, |_| true));
    let mut vanishing = BTreeMap::new();
    for p in degrees.clone() {
        let first = terms.iter().position(|t| t.get(&p).copied().unwrap_or(0) == 0);
        let first = match first {
            Some(k) => Some(k + 1),
            None if reached_zero => Some(terms.len() + 1),
            None => None,
        };
        vanishing.insert(p, first);
    }
    let nilpotent = vanishing.values().all(|v| v.is_some());
    let class = nilpotent.then(|| vanishing.values().map(|v| v.unwrap() - 1).max().unwrap_or(0));
    let series = terms
        .iter()
        .map(|t| t.iter().filter(|(p, _)| degrees.contains(p)).map(|(_, d)| d).sum())
        .collect();
    NilpotencyVerdict { nilpotent, class, series, vanishing_stage: vanishing }
}

/// Evidence for homological nilpotency from three routes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotencyEvidence {
    pub nilpotent: bool,
    /// `H_0` is nilpotent and acts nilpotently on each `H_p`: for each degree
    /// the first `k` with `ad_{H_0}^k(H_p) = 0`.
    pub h0_action: BTreeMap<i32, Option<usize>>,
    pub h0_class: Option<usize>,
    /// Lower central series degree by degree.
    pub degreewise: NilpotencyVerdict,
    /// Class of `H_0` as a group under BCH, from iterated group commutators;
    /// `None` when the BCH series does not terminate.
    pub group_class: Option<usize>,
}

struct FiniteOps<'a>(&'a FiniteGradedLie);

impl LieOps for FiniteOps<'_> {
    type Elem = Vec<Scalar>;
    fn zero(&self) -> Vec<Scalar> {
        vec![Scalar::zero(); self.0.dim()]
    }
    fn axpy(&self, a: &Vec<Scalar>, c: &Scalar, b: &Vec<Scalar>) -> Vec<Scalar> {
        a.iter().zip(b).map(|(x, y)| x + &(c * y)).collect()
    }
    fn bracket(&self, a: &Vec<Scalar>, b: &Vec<Scalar>) -> Vec<Scalar> {
        self.0.bracket(a, b)
    }
    fn is_zero(&self, a: &Vec<Scalar>) -> bool {
        a.iter().all(Scalar::is_zero)
    }
}

/// BCH product on a nilpotent degree-0 algebra of class `class`.
pub fn finite_bch(g: &FiniteGradedLie, class: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    bch_series(&FiniteOps(g), &x.to_vec(), &y.to_vec(), class.max(1))
}

/// Group commutator `log(e^x e^y e^{-x} e^{-y})`.
pub(crate) fn group_commutator(g: &FiniteGradedLie, class: usize, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
    let neg = |v: &[Scalar]| v.iter().map(|c| -c).collect::<Vec<_>>();
    let a = finite_bch(g, class, x, y);
    let b = finite_bch(g, class, &a, &neg(x));
    finite_bch(g, class, &b, &neg(y))
}

/// Nilpotency class of `H_0` viewed as a group, from simple commutators of the
/// basis exponentials. `class` bounds the BCH series.
fn bch_group_class(h0: &FiniteGradedLie, class: usize) -> usize {
    let n = h0.dim();
    let basis: Vec<Vec<Scalar>> = (0..n).map(|i| h0.unit(i)).collect();
    let mut level: BTreeSet<Vec<Scalar>> = basis.iter().cloned().collect();
    let mut k = if n == 0 { 0 } else { 1 };
    loop {
        let mut next = BTreeSet::new();
        for b in &basis {
            for s in &level {
                let c = group_commutator(h0, class, b, s);
                if c.iter().any(|x| !x.is_zero()) {
                    next.insert(c);
                }
            }
        }
        if next.is_empty() || k > class + 1 {
            return k;
        }
        k += 1;
        level = next;
    }
}

/// Evaluates nilpotency of `g` restricted to `degrees` by the three routes
/// and insists that they agree.
pub fn nilpotency_routes(g: &FiniteGradedLie, degrees: RangeInclusive<i32>) -> Result<NilpotencyEvidence> {
    let zero_idx = g.basis_of_degree(0);
    let (h0_terms, h0_zero) = descending_series(g, &zero_idx, full(g, |p| p == 0));
    let h0_class = h0_zero.then(|| h0_terms.len() - 1);
    let mut h0_action = BTreeMap::new();
    for p in degrees.clone() {
        let (terms, zero) = descending_series(g, &zero_idx, full(g, |q| q == p));
        h0_action.insert(p, zero.then(|| terms.len() - 1));
    }
    let route_ii = h0_class.is_some() && h0_action.values().all(|v| v.is_some());
    let degreewise = is_degreewise_nilpotent(g, degrees);
    if route_ii != degreewise.nilpotent {
        return Err(Error::Invariant(format!(
            "nilpotency routes disagree: H_0 action says {route_ii}, degreewise says {}",
            degreewise.nilpotent
        )));
    }
    let group_class = h0_class.map(|c| bch_group_class(&g.degree_zero_part(), c));
    if let (Some(gc), Some(lc)) = (group_class, h0_class) {
        if gc != lc {
            return Err(Error::Invariant(format!(
                "BCH group class {gc} differs from Lie class {lc} of H_0"
            )));
        }
    }
    Ok(NilpotencyEvidence { nilpotent: route_ii, h0_action, h0_class, degreewise, group_class })
}

/// The rotation algebra: `[e1,e2] = e3`, `[e2,e3] = e1`, `[e3,e1] = e2`, in
/// degree 0. It is simple, so never nilpotent.
pub fn simple_rotation_algebra() -> FiniteGradedLie {
    let mut g = FiniteGradedLie::new(vec![0; 3], vec!["e1".into(), "e2".into(), "e3".into()]);
    let one = Scalar::one();
    g.set_bracket(0, 1, vec![(2, one.clone())]);
    g.set_bracket(1, 2, vec![(0, one.clone())]);
    g.set_bracket(2, 0, vec![(1, one)]);
    g
}
