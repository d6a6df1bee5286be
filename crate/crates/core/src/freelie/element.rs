use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use super::basis::{decompose, BasisBracket};
use super::generators::same_gens;
use super::tensor::{word_degree, Tensor};
use super::{GeneratorSet, Word};
use crate::error::{Error, Result};
use crate::qalgebra::Scalar;

/// An element of the free Lie algebra modulo words of weight `> order`.
///
/// Stored in tensor form; see [`LieElement::terms`] for the basis expansion.
#[derive(Clone)]
pub struct LieElement {
    gens: Arc<GeneratorSet>,
    order: u32,
    poly: Tensor,
}

impl LieElement {
    pub fn zero(gens: &Arc<GeneratorSet>, order: u32) -> Self {
        LieElement { gens: gens.clone(), order, poly: Tensor::zero() }
    }

    pub fn generator(gens: &Arc<GeneratorSet>, order: u32, g: usize) -> Self {
        assert!(g < gens.len(), "generator index {g} out of range");
        let poly = if gens.weight(g) <= order { Tensor::letter(g as u16) } else { Tensor::zero() };
        LieElement { gens: gens.clone(), order, poly }
    }

    pub fn named(gens: &Arc<GeneratorSet>, order: u32, name: &str) -> Result<Self> {
        let g = gens
            .index_of(name)
            .ok_or_else(|| Error::InvalidInput(format!("unknown generator {name}")))?;
        Ok(Self::generator(gens, order, g))
    }

    pub fn from_basis(gens: &Arc<GeneratorSet>, order: u32, b: &BasisBracket) -> Self {
        let poly = if b.weight() <= order { (*b.expand(gens)).clone() } else { Tensor::zero() };
        LieElement { gens: gens.clone(), order, poly }
    }

    /// Builds an element from tensor form without checking that it is Lie.
    /// Callers guarantee the tensor is a Lie polynomial.
    pub(crate) fn from_tensor_unchecked(gens: &Arc<GeneratorSet>, order: u32, poly: Tensor) -> Self {
        let weights = gens.weights();
        let poly = poly.filter(|w| super::tensor::word_weight(w, &weights) <= order);
        LieElement { gens: gens.clone(), order, poly }
    }

    /// Builds an element from tensor form, rejecting non-Lie polynomials.
    pub fn from_tensor(gens: &Arc<GeneratorSet>, order: u32, poly: Tensor) -> Result<Self> {
        let e = Self::from_tensor_unchecked(gens, order, poly);
        decompose(gens, &e.poly)?;
        Ok(e)
    }

    pub fn gens(&self) -> &Arc<GeneratorSet> {
        &self.gens
    }

    /// Truncation order: words of weight above it are zero.
    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn tensor(&self) -> &Tensor {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn compatible(&self, other: &LieElement) -> bool {
        self.order == other.order && same_gens(&self.gens, &other.gens)
    }

    fn check(&self, other: &LieElement) -> Result<()> {
        if self.compatible(other) {
            Ok(())
        } else {
            Err(Error::MismatchedAlgebras)
        }
    }

    /// Homological degree when all terms share it; `None` for zero or mixed.
    pub fn degree(&self) -> Option<i32> {
        let degrees = self.gens.degrees();
        let mut it = self.poly.words().map(|w| word_degree(w, &degrees));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// `true` when every term has homological degree `d` (zero counts).
    pub fn has_degree(&self, d: i32) -> bool {
        let degrees = self.gens.degrees();
        self.poly.words().all(|w| word_degree(w, &degrees) == d)
    }

    /// Smallest bracket length among the terms.
    pub fn min_length(&self) -> Option<usize> {
        self.poly.words().map(|w| w.len()).min()
    }

    pub fn max_length(&self) -> Option<usize> {
        self.poly.words().map(|w| w.len()).max()
    }

    /// The part of bracket length exactly `k`.
    pub fn length_part(&self, k: usize) -> LieElement {
        self.with_poly(self.poly.filter(|w| w.len() == k))
    }

    /// The part of weight exactly `k`.
    pub fn weight_part(&self, k: u32) -> LieElement {
        let weights = self.gens.weights();
        self.with_poly(self.poly.filter(|w| super::tensor::word_weight(w, &weights) == k))
    }

    pub(crate) fn with_poly(&self, poly: Tensor) -> LieElement {
        LieElement { gens: self.gens.clone(), order: self.order, poly }
    }

    /// Same element viewed with a different truncation order (dropping terms
    /// when lowering).
    pub fn truncated(&self, order: u32) -> LieElement {
        let weights = self.gens.weights();
        LieElement {
            gens: self.gens.clone(),
            order,
            poly: self.poly.filter(|w| super::tensor::word_weight(w, &weights) <= order),
        }
    }

    /// Moves the element to another (equal) generator set handle.
    pub fn rehome(&self, gens: &Arc<GeneratorSet>) -> LieElement {
        assert!(same_gens(&self.gens, gens));
        LieElement { gens: gens.clone(), order: self.order, poly: self.poly.clone() }
    }

    pub fn scale(&self, c: &Scalar) -> LieElement {
        self.with_poly(self.poly.scaled(c))
    }

    pub fn add_scaled(&mut self, other: &LieElement, c: &Scalar) {
        assert!(self.compatible(other), "mismatched algebras");
        self.poly.add_scaled(&other.poly, c);
    }

    /// Graded bracket, truncated.
    pub fn bracket(&self, other: &LieElement) -> LieElement {
        assert!(self.compatible(other), "mismatched algebras");
        let degrees = self.gens.degrees();
        let weights = self.gens.weights();
        self.with_poly(self.poly.commutator(&other.poly, &degrees, &weights, self.order))
    }

    /// Basis expansion, in basis order.
    pub fn terms(&self) -> Vec<(BasisBracket, Scalar)> {
        decompose(&self.gens, &self.poly).expect("Lie element with non-Lie tensor form")
    }

    /// Coefficient of a single basis bracket.
    pub fn coefficient(&self, b: &BasisBracket) -> Scalar {
        self.terms()
            .into_iter()
            .find(|(t, _)| t == b)
            .map(|(_, c)| c)
            .unwrap_or_default()
    }

    /// Letters that occur in some term.
    pub fn support(&self) -> Vec<usize> {
        let mut seen = vec![false; self.gens.len()];
        for w in self.poly.words() {
            for &g in w.iter() {
                seen[g as usize] = true;
            }
        }
        (0..seen.len()).filter(|&g| seen[g]).collect()
    }

    pub fn words(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.poly.iter()
    }
}

/// The graded bracket with compatibility checking.
pub fn normalize_bracket(u: &LieElement, v: &LieElement) -> Result<LieElement> {
    u.check(v)?;
    Ok(u.bracket(v))
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.compatible(other) && self.poly == other.poly
    }
}

impl Eq for LieElement {}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::one());
        out
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, rhs: &LieElement) -> LieElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Scalar::from_int(-1));
        out
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scale(&Scalar::from_int(-1))
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, rhs: LieElement) -> LieElement {
        &self + &rhs
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, rhs: LieElement) -> LieElement {
        &self - &rhs
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}

/// Writes `c·b` terms as `2[x,y] - 1/2[a,a]`.
pub fn format_terms(gens: &GeneratorSet, terms: &[(BasisBracket, Scalar)]) -> String {
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut s = String::new();
    for (i, (b, c)) in terms.iter().enumerate() {
        let neg = c.signum() < 0;
        let abs = if neg { -c } else { c.clone() };
        if i == 0 {
            if neg {
                s.push('-');
            }
        } else {
            s.push_str(if neg { " - " } else { " + " });
        }
        if !abs.is_one() {
            s.push_str(&abs.to_string());
        }
        s.push_str(&b.display(gens).to_string());
    }
    s
}

impl fmt::Display for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_terms(&self.gens, &self.terms()))
    }
}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement(N={}, {})", self.order, self)
    }
}
