//! The cosimplicial cdgl `𝔏_•`: the Lawrence–Sullivan interval, the models
//! `𝔏_n` of the standard simplices, and their cofaces and codegeneracies.
//!
//! Generators of `𝔏_n` are `a_S` for nonempty `S ⊆ {0..n}`, written `a012`
//! etc., of degree `|S| − 2`. For `n ≥ 2` the differential of the top
//! generator is built length by length: at length `k` the residue `R_k` of
//! `d²` is a cycle for the linear part `δ`, and
//! `Φ_k = −(1/k)·θ(H(R_k))` satisfies `δΦ_k = −R_k`, where `H` is the tensor
//! extension of the cone contraction toward vertex 0 and `θ` is right-normed
//! bracketing (`θ = k·id` on Lie elements of length `k`).

mod operators;

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::cdgl::{differential_check, Cdgl};
use crate::error::{Error, Result};
use crate::freelie::tensor::{koszul, Accumulator};
use crate::freelie::{Generator, GeneratorSet, LieElement, Tensor, Word};
use crate::qalgebra::Scalar;

pub use operators::{check_cosimplicial_identities, cosimplicial_operator, operator_between, OperatorKind};

/// Largest simplex dimension with single-digit vertex labels.
pub const MAX_DIMENSION: usize = 9;

/// `𝔏_n` truncated at order `N`.
#[derive(Clone, Debug)]
pub struct SimplexModel {
    n: usize,
    cdgl: Cdgl,
    masks: Vec<u32>,
}

impl SimplexModel {
    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn cdgl(&self) -> &Cdgl {
        &self.cdgl
    }

    pub fn into_cdgl(self) -> Cdgl {
        self.cdgl
    }

    /// Vertex set of each generator, as a bitmask, in generator order.
    pub fn masks(&self) -> &[u32] {
        &self.masks
    }

    /// Generator index of `a_S`.
    pub fn generator_of(&self, mask: u32) -> Option<usize> {
        self.masks.iter().position(|&m| m == mask)
    }

    /// Index of the top generator `a_{0…n}`.
    pub fn top(&self) -> usize {
        self.generator_of(full_mask(self.n)).unwrap()
    }
}

pub fn full_mask(n: usize) -> u32 {
    (1u32 << (n + 1)) - 1
}

pub fn mask_name(mask: u32) -> String {
    let mut s = String::from("a");
    for v in 0..32 {
        if mask & (1 << v) != 0 {
            s.push(char::from_digit(v, 10).unwrap());
        }
    }
    s
}

fn vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|v| mask & (1 << v) != 0).collect()
}

/// Generators of `𝔏_n` and the vertex mask of each.
fn model_generators(n: usize) -> Result<(Arc<GeneratorSet>, Vec<u32>)> {
    if n > MAX_DIMENSION {
        return Err(Error::Unsupported(format!("simplex dimension {n} exceeds {MAX_DIMENSION}")));
    }
    let gens: Vec<Generator> = (1..=full_mask(n))
        .map(|m| Generator::new(mask_name(m), m.count_ones() as i32 - 2))
        .collect();
    let set = GeneratorSet::new(gens)?;
    let masks = (0..set.len())
        .map(|g| {
            set.name(g)[1..].chars().fold(0u32, |m, c| m | 1 << c.to_digit(10).unwrap())
        })
        .collect();
    Ok((set, masks))
}

/// Top differential of `𝔏_k`, over `𝔏_k`'s own generators.
struct TopDifferential {
    masks: Vec<u32>,
    d: Tensor,
}

type TopCache = Mutex<HashMap<(usize, u32), Arc<TopDifferential>>>;

fn cache() -> &'static TopCache {
    static CACHE: OnceLock<TopCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `d a₀ = −½[a₀,a₀]`.
fn point_top(order: u32) -> Result<TopDifferential> {
    let (gens, masks) = model_generators(0)?;
    let a = LieElement::generator(&gens, order, 0);
    let d = a.bracket(&a).scale(&Scalar::new(-1, 2));
    Ok(TopDifferential { masks, d: d.tensor().clone() })
}

/// `dx = [x,b] + Σ_k (B_k/k!) ad_x^k(b − a)` with `B₁ = −½`.
fn interval_top(order: u32) -> Result<TopDifferential> {
    let (gens, masks) = model_generators(1)?;
    let idx = |m: u32| masks.iter().position(|&x| x == m).unwrap();
    let a = LieElement::generator(&gens, order, idx(0b01));
    let b = LieElement::generator(&gens, order, idx(0b10));
    let x = LieElement::generator(&gens, order, idx(0b11));
    let mut dx = x.bracket(&b);
    let mut term = &b - &a;
    let mut k = 0usize;
    while !term.is_zero() {
        let c = Scalar::bernoulli(k) * Scalar::inv_factorial(k as u32);
        dx.add_scaled(&term, &c);
        term = x.bracket(&term);
        k += 1;
    }
    Ok(TopDifferential { masks, d: dx.tensor().clone() })
}

fn top_differential(n: usize, order: u32) -> Result<Arc<TopDifferential>> {
    if let Some(t) = cache().lock().unwrap().get(&(n, order)) {
        return Ok(t.clone());
    }
    let t = Arc::new(match n {
        0 => point_top(order)?,
        1 => interval_top(order)?,
        _ => solve_top(n, order)?,
    });
    cache().lock().unwrap().insert((n, order), t.clone());
    Ok(t)
}

/// Transports `𝔏_k`'s top differential to the face `face` of `𝔏_n`.
fn transport(top: &TopDifferential, face: u32, target: &HashMap<u32, u16>) -> Tensor {
    let verts = vertices(face);
    let letter: Vec<u16> = top
        .masks
        .iter()
        .map(|&m| {
            let image = vertices(m).iter().fold(0u32, |acc, &v| acc | 1 << verts[v]);
            target[&image]
        })
        .collect();
    top.d.relabel(|g| letter[g as usize])
}

/// Differentials of all proper faces of `𝔏_n`, plus the linear boundary on
/// the top generator.
fn faces_and_boundary(n: usize, order: u32) -> Result<(Arc<GeneratorSet>, Vec<u32>, Vec<Tensor>)> {
    let (gens, masks) = model_generators(n)?;
    let index: HashMap<u32, u16> = masks.iter().enumerate().map(|(g, &m)| (m, g as u16)).collect();
    let mut diff = vec![Tensor::zero(); gens.len()];
    for (g, &m) in masks.iter().enumerate() {
        let k = m.count_ones() as usize - 1;
        if k < n {
            let top = top_differential(k, order)?;
            diff[g] = transport(&top, m, &index);
        } else if n > 0 {
            let verts = vertices(m);
            for (i, v) in verts.iter().enumerate() {
                let face = m & !(1 << v);
                let c = if i % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                diff[g].add_term(Word::from_slice(&[index[&face]]), c);
            }
        }
    }
    Ok((gens, masks, diff))
}

/// Cone contraction `H` on a homogeneous tensor, extended by `P` to the right.
fn cone_homotopy(t: &Tensor, masks: &[u32], index: &HashMap<u32, u16>, degrees: &[i32]) -> Tensor {
    let apex = index[&1];
    let full = masks.iter().copied().max().unwrap_or(0);
    let mut cone = vec![None; full as usize + 1];
    for &m in masks {
        if m & 1 == 0 {
            cone[m as usize] = index.get(&(m | 1)).copied();
        }
    }
    let mut out = Accumulator::default();
    for (w, c) in t.iter() {
        // P kills everything except vertices, so only positions followed by
        // vertices alone contribute
        let mut start = w.len();
        while start > 0 && masks[w[start - 1] as usize].count_ones() == 1 {
            start -= 1;
        }
        let start = start.saturating_sub(1);
        let mut prefix_deg: i32 = w[..start].iter().map(|&g| degrees[g as usize]).sum();
        for i in start..w.len() {
            if let Some(coned) = cone[masks[w[i] as usize] as usize] {
                let mut nw = Word::with_capacity(w.len());
                nw.extend_from_slice(&w[..i]);
                nw.push(coned);
                nw.extend(std::iter::repeat(apex).take(w.len() - i - 1));
                out.add(nw, if koszul(1, prefix_deg) { -c } else { c.clone() });
            }
            prefix_deg += degrees[w[i] as usize];
        }
    }
    out.finish()
}

/// Right-normed bracketing `x1 x2 … xk ↦ [x1,[x2,…[x(k-1),xk]…]]`, expanded
/// directly: each letter but the last lands left or right of the rest.
fn dynkin_bracketing(t: &Tensor, degrees: &[i32]) -> Tensor {
    let mut out = Accumulator::default();
    let mut suffix_deg = Vec::new();
    for (w, c) in t.iter() {
        let k = w.len();
        suffix_deg.clear();
        suffix_deg.resize(k + 1, 0);
        for i in (0..k).rev() {
            suffix_deg[i] = suffix_deg[i + 1] + degrees[w[i] as usize];
        }
        for choice in 0u32..(1 << (k - 1)) {
            let mut left = Word::with_capacity(k);
            let mut right = Word::new();
            let mut neg = false;
            for i in 0..k - 1 {
                if choice >> i & 1 == 0 {
                    left.push(w[i]);
                } else {
                    right.push(w[i]);
                    neg ^= !koszul(degrees[w[i] as usize], suffix_deg[i + 1]);
                }
            }
            left.push(w[k - 1]);
            left.extend(right.iter().rev().copied());
            out.add(left, if neg { -c } else { c.clone() });
        }
    }
    out.finish()
}

fn solve_top(n: usize, order: u32) -> Result<TopDifferential> {
    let (gens, masks, mut diff) = faces_and_boundary(n, order)?;
    let index: HashMap<u32, u16> = masks.iter().enumerate().map(|(g, &m)| (m, g as u16)).collect();
    let top = index[&full_mask(n)] as usize;
    let degrees = gens.degrees();
    let weights = gens.weights();
    for k in 2..=order {
        let images: Vec<Option<&Tensor>> = diff.iter().map(|t| (!t.is_empty()).then_some(t)).collect();
        let residue = diff[top].apply_derivation_in(&images, -1, &degrees, &weights, k, k);
        if residue.is_empty() {
            continue;
        }
        let h = cone_homotopy(&residue, &masks, &index, &degrees);
        let phi = dynkin_bracketing(&h, &degrees);
        diff[top].add_scaled(&phi, &Scalar::new(-1, k as i64));
    }
    let d = std::mem::take(&mut diff[top]);
    Ok(TopDifferential { masks, d })
}

/// `𝔏_1`: vertices `a0`, `a1` and the edge `a01`.
pub fn ls_interval(order: u32) -> Result<SimplexModel> {
    simplex_model(1, order)
}

/// `𝔏_n` truncated at `order`.
pub fn simplex_model(n: usize, order: u32) -> Result<SimplexModel> {
    if order == 0 {
        return Err(Error::InvalidInput("truncation order must be at least 1".into()));
    }
    let (gens, masks, mut diff) = faces_and_boundary(n, order)?;
    let top = masks.iter().position(|&m| m == full_mask(n)).unwrap();
    diff[top] = top_differential(n, order)?.d.clone();
    let elems = diff
        .into_iter()
        .map(|t| LieElement::from_tensor_unchecked(&gens, order, t))
        .collect();
    let mut cdgl = Cdgl::new(gens, order, elems)?;
    for v in 0..=n {
        cdgl.mark_mc(&mask_name(1 << v))?;
    }
    Ok(SimplexModel { n, cdgl, masks })
}

/// Runs the differential check and the vertex/linear-part conditions.
pub fn check_simplex_model(m: &SimplexModel) -> Result<()> {
    if let Some(v) = differential_check(&m.cdgl).into_iter().next() {
        return Err(Error::Invariant(v.to_string()));
    }
    let gens = m.cdgl.gens();
    for (g, &mask) in m.masks.iter().enumerate() {
        let lin = m.cdgl.d_gen(g).length_part(1);
        let mut expect = LieElement::zero(gens, m.cdgl.order());
        if mask.count_ones() > 1 {
            for (i, v) in vertices(mask).iter().enumerate() {
                let face = m.generator_of(mask & !(1 << v)).unwrap();
                let c = if i % 2 == 0 { Scalar::one() } else { Scalar::from_int(-1) };
                expect.add_scaled(&m.cdgl.generator(face), &c);
            }
        }
        if lin != expect {
            return Err(Error::Invariant(format!("linear part of d{} is {lin}", gens.name(g))));
        }
    }
    Ok(())
}
