//! Minimal models of the stages `L/Lⁿ` of a minimal cdgl.
//!
//! Work happens in a finite window: homological degrees `≤ D` for the
//! homology that is certified, and upper degrees (bracket length in `V`,
//! carried by generator weights) `≤ M`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::cdgl::{differential_check, lcs_quotient, Cdgl};
use crate::error::{Error, Result};
use crate::freelie::{basis_in_degree, decompose, BasisBracket, Generator, GeneratorSet, LieElement};
use crate::qalgebra::{
    solve_linear, ChainComplexSlice, HomologyDegree, Scalar, SpanBasis, SparseMatrix, SparseVec,
};

/// How an adjoined generator arose.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ZKind {
    /// Cokernel of the stage projection in upper degree `n − 1`.
    Cokernel,
    /// Kills `Hⁿ` in round `r` of the quadratic phase.
    Kernel { round: usize },
    /// Kills `H^{m+1}` for an upper degree `m ≥ n`.
    Higher,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ZGenerator {
    pub name: String,
    pub degree: i32,
    pub upper: u32,
    pub kind: ZKind,
}

/// Outcome of the checks run on a constructed stage model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimalModelChecks {
    /// No generator has a linear term in its differential.
    pub decomposable: bool,
    /// `H^m_p` of the quadratic phase vanishes for `n ≤ m < M`, `p ≤ D`.
    pub upper_vanishing: bool,
    /// `d₁ Z^{n−1} ⊆ [V, Z^{n−1}] ⊕ 𝕃ⁿ(V)`.
    pub quadratic_shape: bool,
    /// Nonzero pieces `(p, m, dim)` of `H(𝕃(Z), d̄)` with `p ≤ D`, `m < M`.
    pub z_homology: Vec<(i32, u32, usize)>,
    /// `z_homology` sits in upper degree `n − 1` and matches `Z^{n−1}`.
    pub z_concentrated: bool,
    /// `φ` commutes with the differentials.
    pub phi_commutes: bool,
    /// `φ` is an isomorphism on the `d₁`-homology pieces of the window.
    pub graded_isomorphism: bool,
    /// `d² = 0` on the perturbed model.
    pub square_zero: bool,
}

impl MinimalModelChecks {
    pub fn all_pass(&self) -> bool {
        self.decomposable
            && self.upper_vanishing
            && self.quadratic_shape
            && self.z_concentrated
            && self.phi_commutes
            && self.graded_isomorphism
            && self.square_zero
    }
}

/// A minimal model `φ: (𝕃̂(V ⊕ Z), d) → L/Lⁿ` certified in a finite window.
#[derive(Clone, Debug)]
pub struct StageMinimalModel {
    pub stage: u32,
    pub degree_cutoff: i32,
    pub upper_cutoff: u32,
    /// The model with `d = d₁ + d₂ + …`; weights are upper degrees.
    pub model: Cdgl,
    /// The same generators with the quadratic differential only.
    pub quadratic: Cdgl,
    pub z: Vec<ZGenerator>,
    /// `d_m g` for every model generator with a nonzero component.
    pub perturbation: Vec<(String, u32, LieElement)>,
    /// `L/Lⁿ` with its full differential.
    pub target: Cdgl,
    /// Image of each model generator, in model generator order.
    pub phi: Vec<LieElement>,
    pub checks: MinimalModelChecks,
}

/// Elements of homological degree `p` and upper degree exactly `m`.
struct Piece {
    basis: Vec<BasisBracket>,
    index: HashMap<BasisBracket, usize>,
}

impl Piece {
    fn new(gens: &GeneratorSet, p: i32, m: u32, order: u32) -> Piece {
        let basis: Vec<BasisBracket> = if m == 0 || m > order {
            Vec::new()
        } else {
            basis_in_degree(gens, p, m).into_iter().filter(|b| b.weight() == m).collect()
        };
        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
        Piece { basis, index }
    }

    fn len(&self) -> usize {
        self.basis.len()
    }

    fn coords(&self, e: &LieElement) -> Result<SparseVec> {
        let mut v: SparseVec = Vec::new();
        for (b, c) in decompose(e.gens(), e.tensor())? {
            let i = self.index.get(&b).ok_or_else(|| {
                Error::Invariant(format!("term {} outside the expected piece", b.display(e.gens())))
            })?;
            v.push((*i, c));
        }
        v.sort_by_key(|x| x.0);
        Ok(v)
    }

    fn element(&self, gens: &Arc<GeneratorSet>, order: u32, v: &SparseVec) -> LieElement {
        let mut e = LieElement::zero(gens, order);
        for (i, c) in v {
            e.add_scaled(&LieElement::from_basis(gens, order, &self.basis[*i]), c);
        }
        e
    }
}

/// Matrix of `x ↦ (d x)` restricted to upper degree `m + 1`, from `(p, m)`.
fn d_matrix(l: &Cdgl, src: &Piece, tgt: &Piece, m: u32) -> Result<SparseMatrix> {
    let mut cols = Vec::with_capacity(src.len());
    for b in &src.basis {
        let db = l.d(&LieElement::from_basis(l.gens(), l.order(), b)).weight_part(m + 1);
        cols.push(tgt.coords(&db)?);
    }
    Ok(SparseMatrix::from_columns(tgt.len(), &cols))
}

/// `H^m_p` of a cdgl whose differential raises upper degree by exactly one.
fn graded_homology(l: &Cdgl, p: i32, m: u32) -> Result<(HomologyDegree, Piece)> {
    let gens = l.gens();
    let above = Piece::new(gens, p + 1, m.saturating_sub(1), l.order());
    let here = Piece::new(gens, p, m, l.order());
    let below = Piece::new(gens, p - 1, m + 1, l.order());
    let mut c = ChainComplexSlice::new();
    c.set_dim(p + 1, above.len());
    c.set_dim(p, here.len());
    c.set_dim(p - 1, below.len());
    c.set_boundary(p + 1, d_matrix(l, &above, &here, m.saturating_sub(1))?)?;
    c.set_boundary(p, d_matrix(l, &here, &below, m)?)?;
    Ok((c.homology_at(p)?, here))
}

/// Generator data kept by name while the generator set grows.
#[derive(Clone)]
struct Draft {
    gens: Vec<Generator>,
    /// Differential of each generator as `(word over names, coefficient)`.
    diff: Vec<Vec<(Vec<String>, Scalar)>>,
}

impl Draft {
    fn push(&mut self, g: Generator, d: &LieElement) {
        self.gens.push(g);
        self.diff.push(by_name(d));
    }

    fn build(&self, order: u32) -> Result<Cdgl> {
        let set = GeneratorSet::new(self.gens.clone())?;
        let mut diff = vec![LieElement::zero(&set, order); set.len()];
        for (g, d) in self.gens.iter().zip(&self.diff) {
            diff[set.index_of(&g.name).unwrap()] = from_names(&set, order, d)?;
        }
        Cdgl::new(set, order, diff)
    }
}

fn by_name(e: &LieElement) -> Vec<(Vec<String>, Scalar)> {
    e.words()
        .map(|(w, c)| (w.iter().map(|&g| e.gens().name(g as usize).to_string()).collect(), c.clone()))
        .collect()
}

fn from_names(set: &Arc<GeneratorSet>, order: u32, terms: &[(Vec<String>, Scalar)]) -> Result<LieElement> {
    let mut t = crate::freelie::Tensor::zero();
    for (w, c) in terms {
        let word = w
            .iter()
            .map(|n| set.index_of(n).map(|g| g as u16))
            .collect::<Option<crate::freelie::Word>>()
            .ok_or_else(|| Error::Invariant("generator vanished from the model".into()))?;
        if set.word_weight(&word) <= order {
            t.add_term(word, c.clone());
        }
    }
    Ok(LieElement::from_tensor_unchecked(set, order, t))
}

/// Carries an element to another generator set by generator names.
fn transfer(e: &LieElement, set: &Arc<GeneratorSet>, order: u32) -> Result<LieElement> {
    from_names(set, order, &by_name(e))
}

fn fresh_name(taken: &[Generator], k: &mut usize) -> String {
    loop {
        *k += 1;
        let name = format!("z{k}");
        if taken.iter().all(|g| g.name != name) {
            return name;
        }
    }
}

/// Builds the minimal model of `L/Lⁿ` for a minimal, connected `L`.
///
/// `degree_cutoff` bounds the homological degrees whose homology is
/// certified; the upper-degree window is `≤ n + 3`.
pub fn minimal_model_of_stage(l: &Cdgl, n: u32, degree_cutoff: i32) -> Result<StageMinimalModel> {
    minimal_model_with_window(l, n, degree_cutoff, n + 3)
}

/// As [`minimal_model_of_stage`] with an explicit upper-degree window `M`.
pub fn minimal_model_with_window(l: &Cdgl, n: u32, d_cut: i32, upper: u32) -> Result<StageMinimalModel> {
    if n < 2 {
        return Err(Error::InvalidInput(format!("stage {n} must be at least 2")));
    }
    if upper < n + 1 {
        return Err(Error::InvalidInput(format!("upper window {upper} must exceed the stage {n}")));
    }
    if d_cut < 0 {
        return Err(Error::InvalidInput("degree cutoff must be non-negative".into()));
    }
    let gens = l.gens();
    if (0..gens.len()).any(|g| gens.degree(g) < 0) {
        return Err(Error::Unsupported("stage minimal models need a connected cdgl".into()));
    }
    if (0..gens.len()).any(|g| gens.weight(g) != 1) {
        return Err(Error::Unsupported("generators must carry weight 1".into()));
    }
    if !l.is_minimal() {
        return Err(Error::Unsupported("the input differential has a linear part".into()));
    }
    if l.order() < n - 1 {
        return Err(Error::Truncation { order: l.order(), needed: n - 1 });
    }
    let target = lcs_quotient(l, n)?;
    let d1_of = |c: &Cdgl| -> Result<Cdgl> {
        let d = c.differentials().iter().map(|e| e.length_part(2)).collect();
        Cdgl::new(c.gens().clone(), c.order(), d)
    };
    let target_quadratic = d1_of(&target)?;

    // V with the quadratic differential, computed up to the window
    let mut draft = Draft { gens: Vec::new(), diff: Vec::new() };
    for (g, gen) in gens.iter().enumerate() {
        draft.push(gen.clone(), &l.d_gen(g).length_part(2));
    }
    let v_quadratic = draft.build(upper)?;
    let mut z: Vec<ZGenerator> = Vec::new();
    let mut phi_named: HashMap<String, LieElement> = HashMap::new();
    let mut counter = 0;

    // U: stage classes of upper degree n − 1 missed by 𝕃(V)
    for p in 0..=d_cut {
        let top = Piece::new(v_quadratic.gens(), p, n - 1, upper);
        let above = Piece::new(v_quadratic.gens(), p + 1, n - 2, upper);
        let below = Piece::new(v_quadratic.gens(), p - 1, n, upper);
        let mut span = SpanBasis::new();
        for b in d_matrix(&v_quadratic, &above, &top, n - 2)?.column_vectors() {
            span.insert(&b);
        }
        for k in d_matrix(&v_quadratic, &top, &below, n - 1)?.kernel() {
            let k: SparseVec =
                k.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            span.insert(&k);
        }
        for i in 0..top.len() {
            let e: SparseVec = vec![(i, Scalar::one())];
            if span.contains(&e) {
                continue;
            }
            span.insert(&e);
            let name = fresh_name(&draft.gens, &mut counter);
            let rep = top.element(v_quadratic.gens(), upper, &e);
            phi_named.insert(name.clone(), transfer(&rep, target.gens(), target.order())?);
            let zero = LieElement::zero(v_quadratic.gens(), upper);
            draft.push(Generator::with_weight(&name, p, n - 1), &zero);
            z.push(ZGenerator { name, degree: p, upper: n - 1, kind: ZKind::Cokernel });
        }
    }

    // W and the higher Z: kill H^{m+1} with generators of upper degree m
    let max_rounds = d_cut as usize + 3;
    for m in (n - 1)..upper.saturating_sub(1) {
        let mut round = 0;
        loop {
            let current = draft.build(upper)?;
            let mut added = false;
            for p in 0..=d_cut {
                let (h, piece) = graded_homology(&current, p, m + 1)?;
                for rep in &h.representatives {
                    let name = fresh_name(&draft.gens, &mut counter);
                    let d = piece.element(current.gens(), upper, rep);
                    draft.push(Generator::with_weight(&name, p + 1, m), &d);
                    let kind = if m == n - 1 { ZKind::Kernel { round: round + 1 } } else { ZKind::Higher };
                    z.push(ZGenerator { name, degree: p + 1, upper: m, kind });
                    added = true;
                }
            }
            if !added {
                break;
            }
            round += 1;
            if round > max_rounds {
                return Err(Error::Unsupported(format!(
                    "upper degree {}: homology keeps reappearing below degree {}",
                    m + 1,
                    d_cut + 1
                )));
            }
        }
    }
    let quadratic = draft.build(upper)?;

    // perturbation: the higher parts of d on V, then solve on Z degree by degree
    let mset = quadratic.gens().clone();
    let mut full: Vec<LieElement> = quadratic.differentials().to_vec();
    let mut perturbation = Vec::new();
    for (g, gen) in gens.iter().enumerate() {
        let mg = mset.index_of(&gen.name).unwrap();
        let d = transfer(l.d_gen(g), &mset, upper)?;
        for k in 3..=upper + 1 {
            let part = d.length_part(k as usize);
            if !part.is_zero() {
                perturbation.push((gen.name.clone(), k - 1, part));
            }
        }
        full[mg] = d;
    }
    let mut order: Vec<&ZGenerator> = z.iter().collect();
    order.sort_by_key(|g| (g.degree, g.upper));
    for zg in order {
        let g = mset.index_of(&zg.name).unwrap();
        for m in 2..=upper.saturating_sub(zg.upper + 1) {
            let known = Cdgl::new(mset.clone(), upper, full.clone())?;
            let r = known.d(&known.d(&known.generator(g))).weight_part(zg.upper + m + 1);
            if r.is_zero() {
                continue;
            }
            let src = Piece::new(&mset, zg.degree - 1, zg.upper + m, upper);
            let tgt = Piece::new(&mset, zg.degree - 2, zg.upper + m + 1, upper);
            let mat = d_matrix(&quadratic, &src, &tgt, zg.upper + m)?;
            let mut rhs = vec![Scalar::zero(); tgt.len()];
            for (i, c) in tgt.coords(&r)? {
                rhs[i] = -c;
            }
            let sol = solve_linear(&mat, &rhs)?.ok_or_else(|| {
                Error::Obstruction(format!("d{m} on {} at upper degree {}", zg.name, zg.upper + m))
            })?;
            let v: SparseVec = sol.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
            let psi = src.element(&mset, upper, &v);
            perturbation.push((zg.name.clone(), m, psi.clone()));
            full[g].add_scaled(&psi, &Scalar::one());
        }
    }
    let model = Cdgl::new(mset.clone(), upper, full)?;

    // φ: V to itself, U to its stage representative, everything else to 0
    let phi: Vec<LieElement> = (0..mset.len())
        .map(|g| {
            let name = mset.name(g);
            if let Some(e) = phi_named.get(name) {
                Ok(e.clone())
            } else if let Some(h) = gens.index_of(name) {
                Ok(target.generator(h))
            } else {
                Ok(target.zero())
            }
        })
        .collect::<Result<_>>()?;

    let checks = run_checks(&Context {
        n,
        d_cut,
        upper,
        v_names: gens.iter().map(|g| g.name.clone()).collect(),
        z: &z,
        model: &model,
        quadratic: &quadratic,
        target: &target,
        target_quadratic: &target_quadratic,
        phi: &phi,
    })?;
    Ok(StageMinimalModel {
        stage: n,
        degree_cutoff: d_cut,
        upper_cutoff: upper,
        model,
        quadratic,
        z,
        perturbation,
        target,
        phi,
        checks,
    })
}

struct Context<'a> {
    n: u32,
    d_cut: i32,
    upper: u32,
    v_names: Vec<String>,
    z: &'a [ZGenerator],
    model: &'a Cdgl,
    quadratic: &'a Cdgl,
    target: &'a Cdgl,
    target_quadratic: &'a Cdgl,
    phi: &'a [LieElement],
}

/// Applies `φ` (given on generators) to an element of the model.
fn apply_phi(e: &LieElement, phi: &[LieElement], target: &Cdgl) -> LieElement {
    let images: Vec<crate::freelie::Tensor> = phi.iter().map(|x| x.tensor().clone()).collect();
    let t = e.tensor().apply_morphism(&images, &target.gens().weights(), target.order());
    LieElement::from_tensor_unchecked(target.gens(), target.order(), t)
}

fn run_checks(cx: &Context) -> Result<MinimalModelChecks> {
    let mset = cx.model.gens();
    let n = cx.n;
    let decomposable = cx.model.is_minimal();
    let square_zero = differential_check(cx.model).is_empty();

    let mut upper_vanishing = true;
    for m in n..cx.upper {
        for p in 0..=cx.d_cut {
            if graded_homology(cx.quadratic, p, m)?.0.dim() != 0 {
                upper_vanishing = false;
            }
        }
    }

    let is_v = |g: u16| cx.v_names.iter().any(|v| v == mset.name(g as usize));
    let is_z_top = |g: u16| cx.z.iter().any(|z| z.upper == n - 1 && z.name == mset.name(g as usize));
    let mut quadratic_shape = true;
    for zg in cx.z.iter().filter(|z| z.upper == n - 1) {
        let g = mset.index_of(&zg.name).unwrap();
        for (w, _) in cx.quadratic.d_gen(g).words() {
            let pure = w.len() == n as usize && w.iter().all(|&x| is_v(x));
            let mixed = w.len() == 2 && w.iter().filter(|&&x| is_v(x)).count() == 1
                && w.iter().filter(|&&x| is_z_top(x)).count() == 1;
            if !pure && !mixed {
                quadratic_shape = false;
            }
        }
    }

    // (𝕃(Z), d̄): drop every word that meets V
    let z_gens: Vec<Generator> = cx
        .z
        .iter()
        .map(|z| Generator::with_weight(&z.name, z.degree, z.upper))
        .collect();
    let mut z_homology = Vec::new();
    let mut z_concentrated = true;
    if !z_gens.is_empty() {
        let zset = GeneratorSet::new(z_gens)?;
        let mut dbar = Vec::with_capacity(zset.len());
        for g in 0..zset.len() {
            let d = cx.quadratic.d_gen(mset.index_of(zset.name(g)).unwrap());
            let terms: Vec<(Vec<String>, Scalar)> =
                by_name(d).into_iter().filter(|(w, _)| w.iter().all(|x| !cx.v_names.contains(x))).collect();
            dbar.push(from_names(&zset, cx.upper, &terms)?);
        }
        let lz = Cdgl::new(zset.clone(), cx.upper, dbar)?;
        for p in 0..=cx.d_cut {
            for m in 1..cx.upper {
                let dim = graded_homology(&lz, p, m)?.0.dim();
                if dim > 0 {
                    z_homology.push((p, m, dim));
                }
                let expected = if m == n - 1 {
                    cx.z.iter().filter(|z| z.upper == m && z.degree == p).count()
                } else {
                    0
                };
                if dim != expected {
                    z_concentrated = false;
                }
            }
        }
    }

    let mut phi_commutes = true;
    for g in 0..mset.len() {
        let lhs = apply_phi(cx.model.d_gen(g), cx.phi, cx.target);
        let rhs = cx.target.d(&cx.phi[g]);
        if lhs != rhs {
            phi_commutes = false;
        }
    }

    // φ on d₁-homology, piece by piece; upper degrees ≥ n are zero in the stage
    let mut graded_isomorphism = true;
    for p in 0..=cx.d_cut {
        for m in 1..cx.upper {
            let (hm, piece) = graded_homology(cx.quadratic, p, m)?;
            let ht = if m <= cx.target.order() {
                Some(graded_homology(cx.target_quadratic, p, m)?.0)
            } else {
                None
            };
            let tdim = ht.as_ref().map_or(0, |h| h.dim());
            if hm.dim() != tdim {
                graded_isomorphism = false;
                continue;
            }
            let Some(ht) = ht else { continue };
            let tpiece = Piece::new(cx.target.gens(), p, m, cx.target.order());
            let mut span = SpanBasis::new();
            for rep in &hm.representatives {
                let e = piece.element(mset, cx.upper, rep);
                let img = apply_phi(&e, cx.phi, cx.target);
                let class = ht
                    .class_of(&tpiece.coords(&img)?)
                    .ok_or_else(|| Error::Invariant("φ sends a cycle to a non-cycle".into()))?;
                let class: SparseVec =
                    class.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !span.contains(&class) {
                    span.insert(&class);
                }
            }
            if span.dim() != tdim {
                graded_isomorphism = false;
            }
        }
    }

    Ok(MinimalModelChecks {
        decomposable,
        upper_vanishing,
        quadratic_shape,
        z_homology,
        z_concentrated,
        phi_commutes,
        graded_isomorphism,
        square_zero,
    })
}
