use std::sync::Arc;

use super::Cdgl;
use crate::error::{Error, Result};
use crate::freelie::{LieElement, Tensor};

/// A morphism of presented cdgl's, given on generators.
#[derive(Clone, Debug)]
pub struct CdglMorphism {
    source: Arc<Cdgl>,
    target: Arc<Cdgl>,
    images: Vec<LieElement>,
}

impl CdglMorphism {
    /// `images[g]` is the image of source generator `g`; it must live in the
    /// target and have the same degree as `g` (or be zero).
    pub fn new(source: Arc<Cdgl>, target: Arc<Cdgl>, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != source.gens().len() {
            return Err(Error::DimensionMismatch { expected: source.gens().len(), found: images.len() });
        }
        let mut out = Vec::with_capacity(images.len());
        for (g, img) in images.into_iter().enumerate() {
            if **img.gens() != **target.gens() || img.order() != target.order() {
                return Err(Error::MismatchedAlgebras);
            }
            let deg = source.gens().degree(g);
            if !img.has_degree(deg) {
                return Err(Error::WrongDegree {
                    expected: deg,
                    found: img.degree().map_or("mixed".into(), |d| d.to_string()),
                });
            }
            out.push(img.rehome(target.gens()));
        }
        Ok(CdglMorphism { source, target, images: out })
    }

    pub fn source(&self) -> &Arc<Cdgl> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Cdgl> {
        &self.target
    }

    pub fn image(&self, g: usize) -> &LieElement {
        &self.images[g]
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub fn apply(&self, x: &LieElement) -> LieElement {
        assert!(**x.gens() == **self.source.gens(), "element is not in the source");
        let imgs: Vec<Tensor> = self.images.iter().map(|e| e.tensor().clone()).collect();
        let t = x
            .tensor()
            .apply_morphism(&imgs, &self.target.gens().weights(), self.target.order());
        LieElement::from_tensor_unchecked(self.target.gens(), self.target.order(), t)
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &CdglMorphism) -> Result<CdglMorphism> {
        if **first.target.gens() != **self.source.gens() {
            return Err(Error::MismatchedAlgebras);
        }
        let images = first.images.iter().map(|e| self.apply(e)).collect();
        CdglMorphism::new(first.source.clone(), self.target.clone(), images)
    }

    /// Generators `g` with `φ(dg) ≠ d(φ g)`, by name.
    pub fn commutation_failures(&self) -> Vec<String> {
        (0..self.source.gens().len())
            .filter(|&g| {
                let lhs = self.apply(self.source.d_gen(g));
                let rhs = self.target.d(&self.images[g]);
                lhs != rhs
            })
            .map(|g| self.source.gens().name(g).to_string())
            .collect()
    }

    pub fn check(&self) -> Result<()> {
        let bad = self.commutation_failures();
        if bad.is_empty() {
            Ok(())
        } else {
            Err(Error::Invariant(format!("morphism does not commute with d on {}", bad.join(", "))))
        }
    }

    /// Equality of generator images.
    pub fn same_as(&self, other: &CdglMorphism) -> bool {
        **self.source.gens() == **other.source.gens()
            && **self.target.gens() == **other.target.gens()
            && self.images == other.images
    }
}
