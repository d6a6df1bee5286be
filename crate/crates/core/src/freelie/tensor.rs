//! Truncated free associative algebra on the generators. Lie elements are
//! stored here, inside their universal enveloping algebra.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use super::Word;
use crate::qalgebra::Scalar;

/// Sign `(-1)^(a*b)`.
pub fn koszul(a: i32, b: i32) -> bool {
    (a * b).rem_euclid(2) == 1
}

/// A noncommutative polynomial: words to nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Tensor(BTreeMap<Word, Scalar>);

impl Tensor {
    pub fn zero() -> Self {
        Tensor(BTreeMap::new())
    }

    pub fn monomial(w: Word, c: Scalar) -> Self {
        let mut t = Tensor::zero();
        t.add_term(w, c);
        t
    }

    pub fn letter(g: u16) -> Self {
        Tensor::monomial(Word::from_slice(&[g]), Scalar::one())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &Scalar)> {
        self.0.iter()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.0.keys()
    }

    pub fn coeff(&self, w: &[u16]) -> Scalar {
        self.0.get(w).cloned().unwrap_or_default()
    }

    pub fn first(&self) -> Option<(&Word, &Scalar)> {
        self.0.iter().next()
    }

    pub fn add_term(&mut self, w: Word, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(w) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (w, v) in &other.0 {
            self.add_term(w.clone(), v * c);
        }
    }

    pub fn scaled(&self, c: &Scalar) -> Tensor {
        if c.is_zero() {
            return Tensor::zero();
        }
        Tensor(self.0.iter().map(|(w, v)| (w.clone(), v * c)).collect())
    }

    pub fn filter(&self, mut keep: impl FnMut(&Word) -> bool) -> Tensor {
        Tensor(self.0.iter().filter(|(w, _)| keep(w)).map(|(w, v)| (w.clone(), v.clone())).collect())
    }

    /// Relabels letters; `map` must be injective on the letters that occur.
    pub fn relabel(&self, map: impl Fn(u16) -> u16) -> Tensor {
        let mut out = Tensor::zero();
        for (w, v) in &self.0 {
            out.add_term(w.iter().map(|&g| map(g)).collect(), v.clone());
        }
        out
    }

    /// Product, dropping words whose weight exceeds `max`.
    pub fn mul_trunc(&self, other: &Tensor, weights: &[u32], max: u32) -> Tensor {
        let mut out = Accumulator::default();
        let rhs: Vec<(u32, &Word, &Scalar)> =
            other.0.iter().map(|(w, v)| (word_weight(w, weights), w, v)).collect();
        for (w1, c1) in &self.0 {
            let k1 = word_weight(w1, weights);
            for (k2, w2, c2) in &rhs {
                if k1 + k2 > max {
                    continue;
                }
                out.add(concat(w1, w2), c1 * *c2);
            }
        }
        out.finish()
    }

    /// Graded commutator `ab - (-1)^{|a||b|} ba`, termwise in degree.
    pub fn commutator(&self, other: &Tensor, degrees: &[i32], weights: &[u32], max: u32) -> Tensor {
        let mut out = Accumulator::default();
        let rhs: Vec<(u32, i32, &Word, &Scalar)> = other
            .0
            .iter()
            .map(|(w, v)| (word_weight(w, weights), word_degree(w, degrees), w, v))
            .collect();
        for (w1, c1) in &self.0 {
            let k1 = word_weight(w1, weights);
            let d1 = word_degree(w1, degrees);
            for (k2, d2, w2, c2) in &rhs {
                if k1 + k2 > max {
                    continue;
                }
                let c = c1 * *c2;
                out.add(concat(w1, w2), c.clone());
                if koszul(d1, *d2) {
                    out.add(concat(w2, w1), c);
                } else {
                    out.add(concat(w2, w1), -c);
                }
            }
        }
        out.finish()
    }

    /// Extends `images` (one per letter, `None` = 0) to a derivation of degree
    /// `deg` and applies it.
    pub fn apply_derivation(
        &self,
        images: &[Option<&Tensor>],
        deg: i32,
        degrees: &[i32],
        weights: &[u32],
        max: u32,
    ) -> Tensor {
        self.apply_derivation_in(images, deg, degrees, weights, 0, max)
    }

    /// As [`Tensor::apply_derivation`], keeping only output words of weight in
    /// `min..=max`.
    pub fn apply_derivation_in(
        &self,
        images: &[Option<&Tensor>],
        deg: i32,
        degrees: &[i32],
        weights: &[u32],
        min: u32,
        max: u32,
    ) -> Tensor {
        // terms of each image grouped by weight, so a substitution only visits
        // the terms that fit the remaining budget
        let buckets: Vec<Vec<Vec<(&Word, &Scalar)>>> = images
            .iter()
            .map(|img| {
                let mut b: Vec<Vec<(&Word, &Scalar)>> = Vec::new();
                if let Some(t) = img {
                    for (u, a) in &t.0 {
                        let k = word_weight(u, weights) as usize;
                        if k as u32 > max {
                            continue;
                        }
                        if b.len() <= k {
                            b.resize_with(k + 1, Vec::new);
                        }
                        b[k].push((u, a));
                    }
                }
                b
            })
            .collect();
        let mut acc = Accumulator::default();
        for (w, c) in &self.0 {
            let total = word_weight(w, weights);
            let mut prefix_deg = 0;
            for i in 0..w.len() {
                let g = w[i] as usize;
                let rest = total - weights[g];
                let sign = koszul(deg, prefix_deg);
                prefix_deg += degrees[g];
                let bucket = &buckets[g];
                if bucket.is_empty() || rest > max {
                    continue;
                }
                let lo = min.saturating_sub(rest) as usize;
                let hi = ((max - rest) as usize).min(bucket.len() - 1);
                for terms in bucket.iter().take(hi + 1).skip(lo) {
                    for (u, a) in terms {
                        let mut nw = Word::with_capacity(w.len() + u.len());
                        nw.extend_from_slice(&w[..i]);
                        nw.extend_from_slice(u);
                        nw.extend_from_slice(&w[i + 1..]);
                        let v = *a * c;
                        acc.add(nw, if sign { -v } else { v });
                    }
                }
            }
        }
        acc.finish()
    }

    /// Applies the algebra map sending letter `g` to `images[g]` (degree 0, so
    /// no signs), truncating in the target at weight `max`.
    pub fn apply_morphism(&self, images: &[Tensor], target_weights: &[u32], max: u32) -> Tensor {
        let mut out = Tensor::zero();
        // words come sorted, so consecutive words share prefixes; reuse them
        let mut stack: Vec<(u16, Tensor)> = Vec::new();
        let one = Tensor::monomial(Word::new(), Scalar::one());
        for (w, c) in &self.0 {
            let mut common = 0;
            while common < stack.len() && common < w.len() && stack[common].0 == w[common] {
                common += 1;
            }
            stack.truncate(common);
            for i in common..w.len() {
                let prev = stack.last().map_or(&one, |s| &s.1);
                let next = prev.mul_trunc(&images[w[i] as usize], target_weights, max);
                stack.push((w[i], next));
            }
            let img = stack.last().map_or(&one, |s| &s.1);
            out.add_scaled(img, c);
        }
        out
    }
}

/// Hash-based accumulation for large outputs, sorted once at the end.
#[derive(Default)]
pub(crate) struct Accumulator(rustc_hash::FxHashMap<Word, Scalar>);

impl Accumulator {
    pub(crate) fn add(&mut self, w: Word, c: Scalar) {
        match self.0.entry(w) {
            std::collections::hash_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::hash_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
            }
        }
    }

    pub(crate) fn finish(self) -> Tensor {
        Tensor(self.0.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }
}

pub fn word_weight(w: &[u16], weights: &[u32]) -> u32 {
    w.iter().map(|&g| weights[g as usize]).sum()
}

pub fn word_degree(w: &[u16], degrees: &[i32]) -> i32 {
    w.iter().map(|&g| degrees[g as usize]).sum()
}

pub fn concat(a: &[u16], b: &[u16]) -> Word {
    let mut w = Word::with_capacity(a.len() + b.len());
    w.extend_from_slice(a);
    w.extend_from_slice(b);
    w
}
