//! Lie models of finite simplicial sets: the global model, its component at a
//! vertex, and minimal models of nilpotent stages.

mod minimal;

use std::sync::Arc;

use crate::cdgl::{component, differential_check, Cdgl, MCElement};
use crate::error::{Error, Result};
use crate::freelie::tensor::Accumulator;
use crate::freelie::{Generator, GeneratorSet, LieElement, Tensor, Word};
use crate::lscosimplicial::{mask_name, simplex_model};
use crate::qalgebra::{chain_homology, ChainComplexSlice, Scalar, SparseMatrix};
use crate::simpset::{Simplex, SimplexId, SimplicialSetSpec};

pub use minimal::{
    minimal_model_of_stage, minimal_model_with_window, MinimalModelChecks, StageMinimalModel, ZGenerator, ZKind,
};

/// Where a simplex's characteristic morphism `𝔏_k → 𝔏_X` sends each generator
/// `a_T` of the simplex model: a generator of `𝔏_X`, or zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicMap {
    pub simplex: String,
    pub dim: usize,
    /// `(mask name, image generator)` in the generator order of `𝔏_k`.
    pub images: Vec<(String, Option<usize>)>,
}

/// `𝔏_X` with the data that produced it.
#[derive(Clone, Debug)]
pub struct GlobalModel {
    pub name: String,
    pub cdgl: Arc<Cdgl>,
    pub characteristic: Vec<CharacteristicMap>,
}

/// Builds `𝔏_X` modulo brackets of length `> order`.
///
/// Generators are the desuspended nondegenerate simplices, named after them.
/// The differential of `s⁻¹σ` is the image of the top differential of the
/// simplex model under `σ`'s characteristic morphism. A degenerate face is
/// the image of a codegeneracy, which kills the top generator, so such faces
/// contribute zero.
pub fn global_model(x: &SimplicialSetSpec, order: u32) -> Result<GlobalModel> {
    let ids: Vec<SimplexId> = x.ids().collect();
    let gens = GeneratorSet::new(
        ids.iter().map(|&id| Generator::new(x.simplex_name(id), id.dim as i32 - 1)).collect(),
    )?;
    let gen_of = |id: SimplexId| gens.index_of(x.simplex_name(id)).expect("every simplex is a generator");
    let mut diff = vec![Tensor::zero(); gens.len()];
    let mut characteristic = Vec::with_capacity(ids.len());
    for &id in &ids {
        let model = simplex_model(id.dim, order)?;
        let sigma = Simplex::nondegenerate(id);
        let images: Vec<Option<usize>> = model
            .masks()
            .iter()
            .map(|&m| {
                let f = x.sub_face(&sigma, m);
                (!f.is_degenerate()).then(|| gen_of(f.base))
            })
            .collect();
        let top = model.cdgl().d_gen(model.top());
        diff[gen_of(id)] = substitute(top.tensor(), &images);
        characteristic.push(CharacteristicMap {
            simplex: x.simplex_name(id).to_string(),
            dim: id.dim,
            images: model.masks().iter().map(|&m| mask_name(m)).zip(images).collect(),
        });
    }
    let elems = diff.into_iter().map(|t| LieElement::from_tensor_unchecked(&gens, order, t)).collect();
    let mut cdgl = Cdgl::new(gens.clone(), order, elems)?;
    for id in ids.iter().filter(|id| id.dim == 0) {
        cdgl.mark_mc(x.simplex_name(*id))?;
    }
    if let Some(v) = differential_check(&cdgl).into_iter().next() {
        return Err(Error::Invariant(format!("global model of {}: {v}", x.name())));
    }
    Ok(GlobalModel { name: x.name().to_string(), cdgl: Arc::new(cdgl), characteristic })
}

/// Letter substitution by generators or zero.
fn substitute(t: &Tensor, images: &[Option<usize>]) -> Tensor {
    let mut acc = Accumulator::default();
    'words: for (w, c) in t.iter() {
        let mut nw = Word::with_capacity(w.len());
        for &g in w {
            match images[g as usize] {
                Some(h) => nw.push(h as u16),
                None => continue 'words,
            }
        }
        acc.add(nw, c.clone());
    }
    acc.finish()
}

impl GlobalModel {
    /// Checks that the linear part of `d` is the desuspended normalized
    /// boundary, generator by generator.
    pub fn check_linear_part(&self, x: &SimplicialSetSpec) -> Result<()> {
        let gens = self.cdgl.gens();
        for id in x.ids() {
            let g = gens.index_of(x.simplex_name(id)).unwrap();
            let mut expect = self.cdgl.zero();
            if id.dim > 0 {
                for (i, f) in x.faces(id).iter().enumerate() {
                    if f.is_degenerate() {
                        continue;
                    }
                    let h = gens.index_of(x.simplex_name(f.base)).unwrap();
                    let c = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                    expect.add_scaled(&self.cdgl.generator(h), &c);
                }
            }
            let lin = self.cdgl.d_gen(g).length_part(1);
            if lin != expect {
                return Err(Error::Invariant(format!(
                    "linear part of d{} is {lin}, expected {expect}",
                    gens.name(g)
                )));
            }
        }
        Ok(())
    }
}

/// The component `𝔏ᵃ_X` at the single vertex of a reduced simplicial set.
pub fn based_component_model(x: &SimplicialSetSpec, order: u32) -> Result<Cdgl> {
    if !x.is_reduced() {
        return Err(Error::InvalidInput(format!(
            "{} has {} vertices; the based component needs exactly one",
            x.name(),
            x.count(0)
        )));
    }
    let global = global_model(x, order)?;
    component_at_vertex(&global.cdgl)
}

/// Perturbs by the unique MC vertex and takes the connected component.
pub fn component_at_vertex(l: &Cdgl) -> Result<Cdgl> {
    let [a] = l.mc_generators() else {
        return Err(Error::InvalidInput("expected exactly one marked vertex".into()));
    };
    let a = MCElement::new(l, l.generator(*a))?;
    component(l, &a)
}

/// Homology of the generators under the linear part of the differential,
/// as `(degree, dim)` for every degree that carries generators.
pub fn indecomposables_homology(l: &Cdgl) -> Result<Vec<(i32, usize)>> {
    let gens = l.gens();
    if gens.is_empty() {
        return Ok(Vec::new());
    }
    let degrees = gens.degrees();
    let lo = *degrees.iter().min().unwrap();
    let hi = *degrees.iter().max().unwrap();
    // position of each generator within its degree
    let by_degree = |p: i32| -> Vec<usize> { (0..gens.len()).filter(|&g| degrees[g] == p).collect() };
    let mut c = ChainComplexSlice::new();
    for p in lo..=hi {
        c.set_dim(p, by_degree(p).len());
    }
    for p in lo + 1..=hi {
        let src = by_degree(p);
        let dst = by_degree(p - 1);
        let mut m = SparseMatrix::zeros(dst.len(), src.len());
        for (col, &g) in src.iter().enumerate() {
            for (w, coef) in l.d_gen(g).length_part(1).words() {
                let row = dst.iter().position(|&h| h == w[0] as usize).ok_or_else(|| {
                    Error::Invariant(format!("linear part of d{} has the wrong degree", gens.name(g)))
                })?;
                m.set(row, col, coef.clone());
            }
        }
        c.set_boundary(p, m)?;
    }
    Ok(chain_homology(&c, lo..=hi)?.iter().map(|h| (h.degree, h.dim())).collect())
}
