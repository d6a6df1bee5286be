use std::collections::HashMap;
use std::ops::RangeInclusive;

use super::finite::FiniteGradedLie;
use super::Cdgl;
use crate::error::{Error, Result};
use crate::freelie::{basis_in_degree, decompose, BasisBracket, LieElement};
use crate::qalgebra::{ChainComplexSlice, HomologyDegree, Scalar, SparseMatrix, SparseVec};

/// Homology of one degree of a cdgl, with Lie-element representatives.
#[derive(Clone, Debug)]
pub struct HomologyGroup {
    pub degree: i32,
    pub chain_dim: usize,
    pub cycle_dim: usize,
    pub boundary_rank: usize,
    pub representatives: Vec<LieElement>,
    basis: Vec<BasisBracket>,
    index: HashMap<BasisBracket, usize>,
    inner: HomologyDegree,
}

impl HomologyGroup {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Basis of the chains in this degree.
    pub fn chain_basis(&self) -> &[BasisBracket] {
        &self.basis
    }

    fn coords(&self, x: &LieElement) -> Option<SparseVec> {
        coordinates(x, &self.index).ok()
    }

    /// Class of a cycle in the representative basis; `None` if `x` is not a
    /// cycle of this degree.
    pub fn class_of(&self, x: &LieElement) -> Option<Vec<Scalar>> {
        self.inner.class_of(&self.coords(x)?)
    }

    pub fn is_boundary(&self, x: &LieElement) -> bool {
        self.coords(x).map_or(false, |v| self.inner.is_boundary(&v))
    }
}

/// Homology of a cdgl over a degree window, with the induced bracket.
#[derive(Clone, Debug)]
pub struct DglHomology {
    pub groups: Vec<HomologyGroup>,
    /// Brackets whose degree leaves the window are recorded as zero.
    pub lie: FiniteGradedLie,
}

impl DglHomology {
    pub fn group(&self, degree: i32) -> Option<&HomologyGroup> {
        self.groups.iter().find(|g| g.degree == degree)
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.group(degree).map_or(0, |g| g.dim())
    }

    pub fn dims(&self) -> Vec<(i32, usize)> {
        self.groups.iter().map(|g| (g.degree, g.dim())).collect()
    }
}

fn coordinates(x: &LieElement, index: &HashMap<BasisBracket, usize>) -> Result<SparseVec> {
    let mut v: SparseVec = Vec::new();
    for (b, c) in decompose(x.gens(), x.tensor())? {
        let i = *index
            .get(&b)
            .ok_or_else(|| Error::Invariant(format!("term {} outside the degree basis", b.display(x.gens()))))?;
        v.push((i, c));
    }
    v.sort_by_key(|e| e.0);
    Ok(v)
}

/// Exact homology of `(L/L^{>N}, d)` in the given degrees.
pub fn dgl_homology(l: &Cdgl, degrees: RangeInclusive<i32>) -> Result<DglHomology> {
    let (lo, hi) = (*degrees.start(), *degrees.end());
    let gens = l.gens();
    let mut bases: HashMap<i32, (Vec<BasisBracket>, HashMap<BasisBracket, usize>)> = HashMap::new();
    let mut chains = ChainComplexSlice::new();
    for p in lo - 1..=hi + 1 {
        let basis = basis_in_degree(gens, p, l.order());
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        chains.set_dim(p, basis.len());
        bases.insert(p, (basis, index));
    }
    for p in lo..=hi + 1 {
        let (src, _) = &bases[&p];
        let (_, tgt_index) = &bases[&(p - 1)];
        let mut cols = Vec::with_capacity(src.len());
        for b in src {
            let db = l.d(&LieElement::from_basis(gens, l.order(), b));
            cols.push(coordinates(&db, tgt_index)?);
        }
        chains.set_boundary(p, SparseMatrix::from_columns(chains.dim(p - 1), &cols))?;
    }
    let mut groups = Vec::new();
    for p in lo..=hi {
        let h = chains.homology_at(p)?;
        let (basis, index) = bases.remove(&p).unwrap();
        let reps = h
            .representatives
            .iter()
            .map(|v| {
                let mut e = LieElement::zero(gens, l.order());
                for (i, c) in v {
                    e.add_scaled(&LieElement::from_basis(gens, l.order(), &basis[*i]), c);
                }
                e
            })
            .collect();
        groups.push(HomologyGroup {
            degree: p,
            chain_dim: h.chain_dim,
            cycle_dim: h.cycle_dim,
            boundary_rank: h.boundary_rank,
            representatives: reps,
            basis,
            index,
            inner: h,
        });
    }
    let lie = induced_bracket(&groups)?;
    Ok(DglHomology { groups, lie })
}

fn induced_bracket(groups: &[HomologyGroup]) -> Result<FiniteGradedLie> {
    let mut degrees = Vec::new();
    let mut labels = Vec::new();
    let mut offsets = HashMap::new();
    for g in groups {
        offsets.insert(g.degree, degrees.len());
        for r in &g.representatives {
            degrees.push(g.degree);
            labels.push(r.to_string());
        }
    }
    let mut lie = FiniteGradedLie::new(degrees, labels);
    let flat: Vec<(i32, usize, &LieElement)> = groups
        .iter()
        .flat_map(|g| g.representatives.iter().enumerate().map(move |(i, r)| (g.degree, i, r)))
        .collect();
    for (a, (pa, ia, ra)) in flat.iter().enumerate() {
        for (pb, ib, rb) in flat.iter().skip(a) {
            let target = pa + pb;
            let Some(tg) = groups.iter().find(|g| g.degree == target) else { continue };
            let prod = ra.bracket(rb);
            let class = tg.class_of(&prod).ok_or_else(|| {
                Error::Invariant(format!("bracket of cycles {ra} and {rb} is not a cycle"))
            })?;
            let off = offsets[&target];
            let v: Vec<(usize, Scalar)> = class
                .into_iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (off + i, c))
                .collect();
            lie.set_bracket(offsets[pa] + ia, offsets[pb] + ib, v);
        }
    }
    Ok(lie)
}
