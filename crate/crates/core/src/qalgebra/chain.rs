//! Finite chain complexes over ℚ and their homology.

use std::collections::BTreeMap;

use super::sparse::{SparseMatrix, SparseVec, SpanBasis};
use super::Scalar;
use crate::error::{Error, Result};

/// A finite window of a chain complex: `dims[p]` and the boundary `C_p → C_{p-1}`
/// for each stored degree. Missing degrees are zero.
#[derive(Clone, Debug, Default)]
pub struct ChainComplexSlice {
    dims: BTreeMap<i32, usize>,
    boundaries: BTreeMap<i32, SparseMatrix>,
}

/// Homology in one degree, with representative cycles (as coordinate vectors in
/// the chain basis) and enough data to read off the class of any cycle.
#[derive(Clone, Debug)]
pub struct HomologyDegree {
    pub degree: i32,
    pub chain_dim: usize,
    pub cycle_dim: usize,
    pub boundary_rank: usize,
    pub representatives: Vec<SparseVec>,
    span: SpanBasis,
}

impl HomologyDegree {
    pub fn dim(&self) -> usize {
        self.representatives.len()
    }

    /// Coordinates of the class of `cycle` in the representative basis.
    /// Returns `None` when `cycle` is not in cycles ⊇ boundaries + reps span.
    pub fn class_of(&self, cycle: &SparseVec) -> Option<Vec<Scalar>> {
        let coords = self.span.coordinates(cycle)?;
        let mut out = vec![Scalar::zero(); self.representatives.len()];
        for (i, v) in coords {
            if i >= self.boundary_rank {
                out[i - self.boundary_rank] = v;
            }
        }
        Some(out)
    }

    /// `true` when `chain` is a boundary.
    pub fn is_boundary(&self, chain: &SparseVec) -> bool {
        match self.span.coordinates(chain) {
            Some(c) => c.iter().all(|(i, v)| *i < self.boundary_rank || v.is_zero()),
            None => false,
        }
    }
}

impl ChainComplexSlice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set_dim(&mut self, degree: i32, dim: usize) {
        self.dims.insert(degree, dim);
    }

    pub fn dim(&self, degree: i32) -> usize {
        self.dims.get(&degree).copied().unwrap_or(0)
    }

    /// Boundary from degree `p` to `p - 1`. Dimensions must match the declared
    /// chain dimensions.
    pub fn set_boundary(&mut self, degree: i32, m: SparseMatrix) -> Result<()> {
        if m.cols() != self.dim(degree) {
            return Err(Error::DimensionMismatch { expected: self.dim(degree), found: m.cols() });
        }
        if m.rows() != self.dim(degree - 1) {
            return Err(Error::DimensionMismatch { expected: self.dim(degree - 1), found: m.rows() });
        }
        self.boundaries.insert(degree, m);
        Ok(())
    }

    pub fn boundary(&self, degree: i32) -> SparseMatrix {
        self.boundaries
            .get(&degree)
            .cloned()
            .unwrap_or_else(|| SparseMatrix::zeros(self.dim(degree - 1), self.dim(degree)))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i32> + '_ {
        self.dims.keys().copied()
    }

    /// Checks `∂_{p} ∘ ∂_{p+1} = 0`.
    pub fn check_square_zero(&self, degree: i32) -> Result<()> {
        let upper = self.boundary(degree + 1);
        let lower = self.boundary(degree);
        if lower.rows() == 0 || upper.cols() == 0 {
            return Ok(());
        }
        if !lower.mul(&upper)?.is_zero() {
            return Err(Error::BoundarySquare { degree: degree + 1 });
        }
        Ok(())
    }

    /// Homology in one degree. Requires ∂² = 0 around `degree`.
    pub fn homology_at(&self, degree: i32) -> Result<HomologyDegree> {
        self.check_square_zero(degree)?;
        self.check_square_zero(degree - 1)?;
        let d_out = self.boundary(degree);
        let d_in = self.boundary(degree + 1);
        let kernel = d_out.kernel();
        // only independent vectors are inserted, so insertion indices below
        // `boundary_rank` are boundaries and the rest are representatives
        let mut clean = SpanBasis::new();
        for col in d_in.column_vectors() {
            if !clean.contains(&col) {
                clean.insert(&col);
            }
        }
        let boundary_rank = clean.dim();
        let mut reps = Vec::new();
        for k in &kernel {
            let v: SparseVec = k
                .iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(i, x)| (i, x.clone()))
                .collect();
            if !clean.contains(&v) {
                clean.insert(&v);
                reps.push(v);
            }
        }
        Ok(HomologyDegree {
            degree,
            chain_dim: self.dim(degree),
            cycle_dim: kernel.len(),
            boundary_rank,
            representatives: reps,
            span: clean,
        })
    }
}

/// Homology for every degree in `degrees`.
pub fn chain_homology(
    c: &ChainComplexSlice,
    degrees: std::ops::RangeInclusive<i32>,
) -> Result<Vec<HomologyDegree>> {
    degrees.map(|p| c.homology_at(p)).collect()
}
