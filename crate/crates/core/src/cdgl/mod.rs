//! Presented complete dgl's `(L̂(V), d)` computed modulo weight `> N`.

mod finite;
mod homology;
mod morphism;
mod series;

use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::freelie::{format_terms, Generator, GeneratorSet, LieElement, Tensor};
use crate::qalgebra::Scalar;

pub use finite::{
    finite_bch,
    is_degreewise_nilpotent, nilpotency_routes, simple_rotation_algebra, FiniteGradedLie,
    NilpotencyEvidence, NilpotencyVerdict,
};
pub use homology::{dgl_homology, DglHomology, HomologyGroup};
pub use morphism::CdglMorphism;
pub use series::{bch, bch_series, exp_ad, gauge_transform, FreeLieOps, LieOps};

/// A free graded Lie algebra with a differential given on generators.
#[derive(Clone)]
pub struct Cdgl {
    gens: Arc<GeneratorSet>,
    order: u32,
    diff: Vec<LieElement>,
    mc: Vec<usize>,
}

impl Cdgl {
    /// `diff[g]` is the differential of generator `g` (in generator order).
    pub fn new(gens: Arc<GeneratorSet>, order: u32, diff: Vec<LieElement>) -> Result<Self> {
        if diff.len() != gens.len() {
            return Err(Error::DimensionMismatch { expected: gens.len(), found: diff.len() });
        }
        let mut out = Vec::with_capacity(diff.len());
        for d in diff {
            if d.order() != order || **d.gens() != *gens {
                return Err(Error::MismatchedAlgebras);
            }
            out.push(d.rehome(&gens));
        }
        Ok(Cdgl { gens, order, diff: out, mc: Vec::new() })
    }

    /// Differential specified by generator name; unnamed generators are cycles.
    pub fn from_named(
        gens: Arc<GeneratorSet>,
        order: u32,
        diff: &[(&str, LieElement)],
    ) -> Result<Self> {
        let mut d = vec![LieElement::zero(&gens, order); gens.len()];
        for (name, v) in diff {
            let g = gens
                .index_of(name)
                .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
            d[g] = v.clone();
        }
        Self::new(gens, order, d)
    }

    /// `(L̂(V), 0)` on the given generators.
    pub fn free(gens: Vec<Generator>, order: u32) -> Result<Self> {
        let gens = GeneratorSet::new(gens)?;
        let d = vec![LieElement::zero(&gens, order); gens.len()];
        Self::new(gens, order, d)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn zero(&self) -> LieElement {
        LieElement::zero(&self.gens, self.order)
    }

    pub fn generator(&self, g: usize) -> LieElement {
        LieElement::generator(&self.gens, self.order, g)
    }

    pub fn named(&self, name: &str) -> Result<LieElement> {
        LieElement::named(&self.gens, self.order, name)
    }

    /// Differential of generator `g`.
    pub fn d_gen(&self, g: usize) -> &LieElement {
        &self.diff[g]
    }

    pub fn differentials(&self) -> &[LieElement] {
        &self.diff
    }

    pub fn mc_generators(&self) -> &[usize] {
        &self.mc
    }

    /// Applies the differential.
    pub fn d(&self, x: &LieElement) -> LieElement {
        assert!(x.gens() == &self.gens || **x.gens() == *self.gens, "mismatched algebras");
        let images: Vec<Option<&Tensor>> =
            self.diff.iter().map(|e| (!e.is_zero()).then(|| e.tensor())).collect();
        let t = x.tensor().apply_derivation(
            &images,
            -1,
            &self.gens.degrees(),
            &self.gens.weights(),
            self.order.min(x.order()),
        );
        LieElement::from_tensor_unchecked(&self.gens, x.order(), t)
    }

    /// Marks generator `name` as Maurer–Cartan after checking the equation.
    pub fn mark_mc(&mut self, name: &str) -> Result<()> {
        let g = self
            .gens
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
        let v = self.generator(g);
        if !is_mc(self, &v)? {
            return Err(Error::NotMc(name.to_string()));
        }
        if !self.mc.contains(&g) {
            self.mc.push(g);
            self.mc.sort_unstable();
        }
        Ok(())
    }

    /// Linear part of the differential on each generator.
    pub fn linear_part(&self) -> Vec<LieElement> {
        self.diff.iter().map(|d| d.length_part(1)).collect()
    }

    /// `true` when no generator's differential has a linear term.
    pub fn is_minimal(&self) -> bool {
        self.diff.iter().all(|d| d.length_part(1).is_zero())
    }

    /// Stable text listing of generators, differentials and MC marks.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (g, gen) in self.gens.iter().enumerate() {
            let mark = if self.mc.contains(&g) { " mc" } else { "" };
            s.push_str(&format!(
                "{} : {}{} ; d = {}\n",
                gen.name,
                gen.degree,
                mark,
                format_terms(&self.gens, &self.diff[g].terms())
            ));
        }
        s
    }
}

/// Field-for-field machine form of [`Cdgl::dump`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CdglDocument {
    pub order: u32,
    pub generators: Vec<GeneratorEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
    pub mc: bool,
    /// `(basis bracket, exact coefficient)` in basis order.
    pub differential: Vec<(String, String)>,
}

impl Cdgl {
    pub fn document(&self) -> CdglDocument {
        let generators = self
            .gens
            .iter()
            .enumerate()
            .map(|(g, gen)| GeneratorEntry {
                name: gen.name.clone(),
                degree: gen.degree,
                mc: self.mc.contains(&g),
                differential: self.diff[g]
                    .terms()
                    .into_iter()
                    .map(|(b, c)| (b.display(&self.gens).to_string(), c.to_string()))
                    .collect(),
            })
            .collect();
        CdglDocument { order: self.order, generators }
    }
}

impl fmt::Debug for Cdgl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cdgl(N={})\n{}", self.order, self.dump())
    }
}

impl PartialEq for Cdgl {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && *self.gens == *other.gens && self.diff == other.diff
    }
}

/// One failure found by [`differential_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// Some term of `d g` has the wrong degree.
    Degree { generator: String, expected: i32, found: Vec<i32> },
    /// `d(d g)` is nonzero; the residue is printed in basis form.
    Square { generator: String, residue: String },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Degree { generator, expected, found } => {
                write!(f, "d({generator}) should have degree {expected}, has terms in degrees {found:?}")
            }
            Violation::Square { generator, residue } => {
                write!(f, "d(d({generator})) = {residue} ≠ 0")
            }
        }
    }
}

/// Checks that `d` lowers degree by one and squares to zero, generator by
/// generator. An empty list means the check passed.
pub fn differential_check(l: &Cdgl) -> Vec<Violation> {
    let mut out = Vec::new();
    let degrees = l.gens.degrees();
    for g in 0..l.gens.len() {
        let dg = &l.diff[g];
        let expected = degrees[g] - 1;
        let mut found: Vec<i32> = dg
            .words()
            .map(|(w, _)| crate::freelie::tensor::word_degree(w, &degrees))
            .filter(|&d| d != expected)
            .collect();
        found.sort_unstable();
        found.dedup();
        if !found.is_empty() {
            out.push(Violation::Degree { generator: l.gens.name(g).to_string(), expected, found });
            continue;
        }
        let dd = l.d(dg);
        if !dd.is_zero() {
            out.push(Violation::Square {
                generator: l.gens.name(g).to_string(),
                residue: dd.to_string(),
            });
        }
    }
    out
}

/// `true` iff `v` has degree −1 and `dv + ½[v,v] = 0`.
pub fn is_mc(l: &Cdgl, v: &LieElement) -> Result<bool> {
    if v.order() != l.order || **v.gens() != *l.gens {
        return Err(Error::MismatchedAlgebras);
    }
    if !v.has_degree(-1) {
        return Ok(false);
    }
    let mut r = l.d(v);
    r.add_scaled(&v.bracket(v), &Scalar::new(1, 2));
    Ok(r.is_zero())
}

/// A Maurer–Cartan element of a particular cdgl.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MCElement {
    value: LieElement,
}

impl MCElement {
    pub fn new(l: &Cdgl, value: LieElement) -> Result<Self> {
        if !is_mc(l, &value)? {
            return Err(Error::NotMc(value.to_string()));
        }
        Ok(MCElement { value: value.rehome(l.gens()) })
    }

    pub fn zero(l: &Cdgl) -> Self {
        MCElement { value: l.zero() }
    }

    pub fn value(&self) -> &LieElement {
        &self.value
    }
}

/// `(L, d_a)` with `d_a = d + ad_a`.
pub fn perturb(l: &Cdgl, a: &MCElement) -> Result<Cdgl> {
    if !is_mc(l, a.value())? {
        return Err(Error::NotMc(a.value().to_string()));
    }
    let diff: Vec<LieElement> = (0..l.gens.len())
        .map(|g| {
            let mut d = l.diff[g].clone();
            d.add_scaled(&a.value().bracket(&l.generator(g)), &Scalar::one());
            d
        })
        .collect();
    let out = Cdgl { gens: l.gens.clone(), order: l.order, diff, mc: Vec::new() };
    if let Some(v) = differential_check(&out).into_iter().next() {
        return Err(Error::Invariant(format!("perturbed differential: {v}")));
    }
    Ok(out)
}

/// The connected component of `L` at `a`: the sub-cdgl of `(L, d_a)` with
/// `ker d_a` in degree 0 and everything in positive degrees.
///
/// Supported inputs: `L` without negative-degree generators (then `a` must be
/// 0 and the component is `L`), or `a` the unique degree −1 generator with no
/// generators below degree −1. In the latter case the perturbed differential
/// of every other generator must avoid `a`; the component is then the free
/// algebra on the remaining generators.
pub fn component(l: &Cdgl, a: &MCElement) -> Result<Cdgl> {
    let negative: Vec<usize> = (0..l.gens.len()).filter(|&g| l.gens.degree(g) < 0).collect();
    if negative.is_empty() {
        // nothing lives in degree −1, so ker d_a is all of degree 0
        return Ok(l.clone());
    }
    if negative.iter().any(|&g| l.gens.degree(g) < -1) {
        return Err(Error::Unsupported("generators below degree −1".into()));
    }
    if negative.len() > 1 {
        return Err(Error::Unsupported(format!(
            "{} generators of degree −1 (input is not reduced)",
            negative.len()
        )));
    }
    let base = negative[0];
    if *a.value() != l.generator(base) {
        return Err(Error::Unsupported("base point must be the degree −1 generator".into()));
    }
    let pert = perturb(l, a)?;
    let keep: Vec<usize> = (0..l.gens.len()).filter(|&g| g != base).collect();
    let new_gens =
        GeneratorSet::new(keep.iter().map(|&g| l.gens.get(g).clone()).collect())?;
    // generator order is preserved by removal, so letters shift down past `base`
    let remap = |g: u16| if (g as usize) > base { g - 1 } else { g };
    let mut diff = Vec::with_capacity(keep.len());
    for &g in &keep {
        let dg = &pert.diff[g];
        if dg.support().contains(&base) {
            return Err(Error::Unsupported(format!(
                "d_a({}) involves the base point",
                l.gens.name(g)
            )));
        }
        diff.push(LieElement::from_tensor_unchecked(&new_gens, l.order, dg.tensor().relabel(remap)));
    }
    Cdgl::new(new_gens, l.order, diff)
}

/// `L / L^n`: the same presentation with truncation order `n − 1`.
pub fn lcs_quotient(l: &Cdgl, n: u32) -> Result<Cdgl> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("stage {n} must be at least 2")));
    }
    if n - 1 > l.order {
        return Err(Error::Truncation { order: l.order, needed: n - 1 });
    }
    let diff = l.diff.iter().map(|d| d.truncated(n - 1)).collect();
    let mc = l.mc.clone();
    Ok(Cdgl { gens: l.gens.clone(), order: n - 1, diff, mc })
}
