//! The normal basis: standard bracketings of Lyndon words, plus the squares
//! `[P_u, P_u]` of odd Lyndon brackets.
//!
//! Every basis element `P` expands in the tensor algebra as `c·lead(P) +`
//! (lexicographically larger words), with distinct leading words across the
//! basis. That makes decomposition of a Lie element a triangular sweep over
//! its smallest word.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use super::tensor::Tensor;
use super::{GeneratorSet, Word};
use crate::error::{Error, Result};
use crate::qalgebra::{Scalar, SpanBasis};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BracketKind {
    Lyndon,
    /// `[P_u, P_u]` for an odd Lyndon word `u`.
    Square,
}

/// A member of the normal basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasisBracket {
    kind: BracketKind,
    root: Word,
    lead: Word,
    degree: i32,
    weight: u32,
}

impl BasisBracket {
    pub fn lyndon(gens: &GeneratorSet, w: Word) -> Self {
        debug_assert!(is_lyndon(&w));
        BasisBracket {
            kind: BracketKind::Lyndon,
            degree: gens.word_degree(&w),
            weight: gens.word_weight(&w),
            lead: w.clone(),
            root: w,
        }
    }

    pub fn square(gens: &GeneratorSet, u: Word) -> Self {
        debug_assert!(is_lyndon(&u) && gens.word_degree(&u) % 2 != 0);
        let mut lead = u.clone();
        lead.extend_from_slice(&u);
        BasisBracket {
            kind: BracketKind::Square,
            degree: 2 * gens.word_degree(&u),
            weight: 2 * gens.word_weight(&u),
            root: u,
            lead,
        }
    }

    pub fn generator(gens: &GeneratorSet, g: usize) -> Self {
        Self::lyndon(gens, Word::from_slice(&[g as u16]))
    }

    pub fn kind(&self) -> BracketKind {
        self.kind
    }

    /// The Lyndon word the bracket is built from.
    pub fn root(&self) -> &Word {
        &self.root
    }

    pub fn leading_word(&self) -> &Word {
        &self.lead
    }

    pub fn length(&self) -> usize {
        self.lead.len()
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    /// Coefficient of the leading word in the expansion.
    fn lead_coeff(&self) -> Scalar {
        match self.kind {
            BracketKind::Lyndon => Scalar::one(),
            BracketKind::Square => Scalar::from_int(2),
        }
    }

    /// Tensor expansion (untruncated), memoised per generator set.
    pub fn expand(&self, gens: &GeneratorSet) -> Arc<Tensor> {
        expansion(gens, self.kind == BracketKind::Square, &self.root)
    }

    pub fn display<'a>(&'a self, gens: &'a GeneratorSet) -> impl fmt::Display + 'a {
        DisplayBracket { b: self, gens }
    }
}

impl Ord for BasisBracket {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.lead.len(), &self.lead).cmp(&(other.lead.len(), &other.lead))
    }
}

impl PartialOrd for BasisBracket {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct DisplayBracket<'a> {
    b: &'a BasisBracket,
    gens: &'a GeneratorSet,
}

fn write_lyndon(f: &mut fmt::Formatter<'_>, gens: &GeneratorSet, w: &[u16]) -> fmt::Result {
    if w.len() == 1 {
        return write!(f, "{}", gens.name(w[0] as usize));
    }
    let (u, v) = standard_factorization(w);
    write!(f, "[")?;
    write_lyndon(f, gens, u)?;
    write!(f, ",")?;
    write_lyndon(f, gens, v)?;
    write!(f, "]")
}

impl fmt::Display for DisplayBracket<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.b.kind {
            BracketKind::Lyndon => write_lyndon(f, self.gens, &self.b.root),
            BracketKind::Square => {
                write!(f, "[")?;
                write_lyndon(f, self.gens, &self.b.root)?;
                write!(f, ",")?;
                write_lyndon(f, self.gens, &self.b.root)?;
                write!(f, "]")
            }
        }
    }
}

/// `w` is Lyndon iff it is strictly smaller than each of its proper suffixes.
pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

/// `w = uv` with `v` the smallest proper suffix; both factors are Lyndon.
pub fn standard_factorization(w: &[u16]) -> (&[u16], &[u16]) {
    debug_assert!(w.len() >= 2);
    let mut best = w.len() - 1;
    for i in 1..w.len() {
        if w[i..] < w[best..] {
            best = i;
        }
    }
    (&w[..best], &w[best..])
}

fn expansion(gens: &GeneratorSet, square: bool, root: &Word) -> Arc<Tensor> {
    let key = (square, root.clone());
    if let Some(t) = gens.expansions.lock().unwrap().get(&key) {
        return t.clone();
    }
    let degrees = gens.degrees();
    let weights = gens.weights();
    let t = if square {
        let p = expansion(gens, false, root);
        p.commutator(&p, &degrees, &weights, u32::MAX)
    } else if root.len() == 1 {
        Tensor::letter(root[0])
    } else {
        let (u, v) = standard_factorization(root);
        let pu = expansion(gens, false, &Word::from_slice(u));
        let pv = expansion(gens, false, &Word::from_slice(v));
        pu.commutator(&pv, &degrees, &weights, u32::MAX)
    };
    let t = Arc::new(t);
    gens.expansions.lock().unwrap().insert(key, t.clone());
    t
}

/// Writes a tensor as a combination of basis brackets, sorted by basis order.
/// Fails when the tensor is not a Lie element.
pub fn decompose(gens: &GeneratorSet, t: &Tensor) -> Result<Vec<(BasisBracket, Scalar)>> {
    let mut rem = t.clone();
    let mut out = Vec::new();
    while let Some((w, c)) = rem.first() {
        let (w, c) = (w.clone(), c.clone());
        let b = if is_lyndon(&w) {
            BasisBracket::lyndon(gens, w)
        } else {
            let half = w.len() / 2;
            if w.len() % 2 == 0
                && w[..half] == w[half..]
                && is_lyndon(&w[..half])
                && gens.word_degree(&w[..half]) % 2 != 0
            {
                BasisBracket::square(gens, Word::from_slice(&w[..half]))
            } else {
                return Err(Error::NotLie);
            }
        };
        let coeff = &c / &b.lead_coeff();
        rem.add_scaled(&b.expand(gens), &-&coeff);
        out.push((b, coeff));
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    Ok(out)
}

/// All words of exactly `len` letters that pass the degree and weight
/// constraints, found by depth-first search with bound pruning.
fn constrained_words(
    gens: &GeneratorSet,
    len: usize,
    degree: Option<i32>,
    max_weight: u32,
    visit: &mut dyn FnMut(&[u16]),
) {
    if gens.is_empty() || len == 0 {
        return;
    }
    let dmin = gens.iter().map(|g| g.degree).min().unwrap();
    let dmax = gens.iter().map(|g| g.degree).max().unwrap();
    let wmin = gens.iter().map(|g| g.weight).min().unwrap();
    let mut word = Vec::with_capacity(len);
    fn rec(
        gens: &GeneratorSet,
        len: usize,
        degree: Option<i32>,
        max_weight: u32,
        bounds: (i32, i32, u32),
        word: &mut Vec<u16>,
        deg: i32,
        wt: u32,
        visit: &mut dyn FnMut(&[u16]),
    ) {
        let left = (len - word.len()) as i32;
        if let Some(target) = degree {
            if deg + left * bounds.0 > target || deg + left * bounds.1 < target {
                return;
            }
        }
        if wt + left as u32 * bounds.2 > max_weight {
            return;
        }
        if left == 0 {
            visit(word);
            return;
        }
        for g in 0..gens.len() {
            // a Lyndon word starts with its smallest letter
            if let Some(&first) = word.first() {
                if (g as u16) < first {
                    continue;
                }
            }
            word.push(g as u16);
            let gd = gens.degree(g);
            let gw = gens.weight(g);
            rec(gens, len, degree, max_weight, bounds, word, deg + gd, wt + gw, visit);
            word.pop();
        }
    }
    rec(gens, len, degree, max_weight, (dmin, dmax, wmin), &mut word, 0, 0, visit);
}

/// Basis of the length-`length` component, optionally restricted to one
/// homological degree.
pub fn lyndon_basis(gens: &GeneratorSet, length: usize, degree: Option<i32>) -> Vec<BasisBracket> {
    let mut out = Vec::new();
    constrained_words(gens, length, degree, u32::MAX, &mut |w| {
        if is_lyndon(w) {
            out.push(BasisBracket::lyndon(gens, Word::from_slice(w)));
        }
    });
    if length % 2 == 0 {
        let half_degree = match degree {
            Some(d) if d % 2 != 0 => None,
            Some(d) => Some(Some(d / 2)),
            None => Some(None),
        };
        if let Some(hd) = half_degree {
            constrained_words(gens, length / 2, hd, u32::MAX, &mut |w| {
                if is_lyndon(w) && gens.word_degree(w) % 2 != 0 {
                    out.push(BasisBracket::square(gens, Word::from_slice(w)));
                }
            });
        }
    }
    out.sort();
    out
}

/// Basis of the homological-degree-`degree` part of the quotient by weight
/// `> max_weight`, in basis order.
pub fn basis_in_degree(gens: &GeneratorSet, degree: i32, max_weight: u32) -> Vec<BasisBracket> {
    let mut out = Vec::new();
    let max_len = max_weight as usize;
    for len in 1..=max_len {
        constrained_words(gens, len, Some(degree), max_weight, &mut |w| {
            if is_lyndon(w) {
                out.push(BasisBracket::lyndon(gens, Word::from_slice(w)));
            }
        });
    }
    if degree % 2 == 0 {
        for len in 1..=max_len / 2 {
            constrained_words(gens, len, Some(degree / 2), max_weight / 2, &mut |w| {
                if is_lyndon(w) && gens.word_degree(w) % 2 != 0 {
                    out.push(BasisBracket::square(gens, Word::from_slice(w)));
                }
            });
        }
    }
    out.sort();
    out
}

/// Right-normed bracket `[w1,[w2,[...,wk]]]` in tensor form.
pub fn right_normed(gens: &GeneratorSet, w: &[u16]) -> Tensor {
    let degrees = gens.degrees();
    let weights = gens.weights();
    let mut t = Tensor::letter(*w.last().expect("nonempty word"));
    for &g in w[..w.len() - 1].iter().rev() {
        t = Tensor::letter(g).commutator(&t, &degrees, &weights, u32::MAX);
    }
    t
}

/// Dimension of the length-`length` component computed without the Lyndon
/// basis: right-normed brackets of all words span it, so the dimension is the
/// rank of their tensor expansions.
pub fn graded_witt_dimension(gens: &GeneratorSet, length: usize) -> usize {
    graded_witt_dimension_in(gens, length, None)
}

pub fn graded_witt_dimension_in(gens: &GeneratorSet, length: usize, degree: Option<i32>) -> usize {
    let mut index: BTreeMap<Word, usize> = BTreeMap::new();
    let mut span = SpanBasis::new();
    let n = gens.len() as u16;
    if n == 0 || length == 0 {
        return 0;
    }
    let mut w = vec![0u16; length];
    loop {
        if degree.map_or(true, |d| gens.word_degree(&w) == d) {
            let t = right_normed(gens, &w);
            let mut v: Vec<(usize, Scalar)> = t
                .iter()
                .map(|(word, c)| {
                    let next = index.len();
                    (*index.entry(word.clone()).or_insert(next), c.clone())
                })
                .collect();
            v.sort_by_key(|e| e.0);
            span.insert(&v);
        }
        // odometer over all words
        let mut i = length;
        loop {
            if i == 0 {
                return span.dim();
            }
            i -= 1;
            w[i] += 1;
            if w[i] < n {
                break;
            }
            w[i] = 0;
        }
    }
}

/// Necklace count `(1/q) Σ_{d|q} μ(d) m^{q/d}`: the Witt dimension for `m`
/// generators of degree 0.
pub fn necklace_dimension(m: u64, q: u32) -> u64 {
    fn mobius(mut n: u32) -> i64 {
        let mut result = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                result = -result;
            }
            p += 1;
        }
        if n > 1 {
            result = -result;
        }
        result
    }
    let mut total: i128 = 0;
    for d in 1..=q {
        if q % d == 0 {
            total += mobius(d) as i128 * (m as i128).pow(q / d);
        }
    }
    (total / q as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &[u16]) -> Word {
        Word::from_slice(s)
    }

    #[test]
    fn lyndon_words() {
        assert!(is_lyndon(&[0, 1]));
        assert!(!is_lyndon(&[1, 0]));
        assert!(!is_lyndon(&[0, 0]));
        assert!(is_lyndon(&[0, 0, 1]));
        assert!(is_lyndon(&[0, 1, 1]));
        assert!(!is_lyndon(&[0, 1, 0, 1]));
        assert_eq!(standard_factorization(&[0, 0, 1]), (&[0u16][..], &[0u16, 1][..]));
        assert_eq!(standard_factorization(&[0, 1, 1]), (&[0u16, 1][..], &[1u16][..]));
    }

    #[test]
    fn two_even_generators() {
        let g = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).unwrap();
        let b2 = lyndon_basis(&g, 2, None);
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0].display(&g).to_string(), "[x,y]");
        assert_eq!(lyndon_basis(&g, 1, None).len(), 2);
    }

    #[test]
    fn one_odd_generator() {
        let g = GeneratorSet::from_degrees(&[("u", 1)]).unwrap();
        let b2 = lyndon_basis(&g, 2, None);
        assert_eq!(b2.len(), 1);
        assert_eq!(b2[0].display(&g).to_string(), "[u,u]");
        assert!(lyndon_basis(&g, 3, None).is_empty());
        assert_eq!(
            (1..=3).map(|q| graded_witt_dimension(&g, q)).collect::<Vec<_>>(),
            vec![1, 1, 0]
        );
    }

    #[test]
    fn witt_counts_two_generators() {
        let g = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).unwrap();
        let dims: Vec<usize> = (1..=5).map(|q| graded_witt_dimension(&g, q)).collect();
        assert_eq!(dims, vec![2, 1, 2, 3, 6]);
        let neck: Vec<u64> = (1..=5).map(|q| necklace_dimension(2, q)).collect();
        assert_eq!(neck, vec![2, 1, 2, 3, 6]);
    }

    #[test]
    fn decomposition_round_trip() {
        let g = GeneratorSet::from_degrees(&[("u", 1), ("x", 0), ("y", 0)]).unwrap();
        for len in 1..=4 {
            for b in lyndon_basis(&g, len, None) {
                let t = b.expand(&g);
                let d = decompose(&g, &t).unwrap();
                assert_eq!(d, vec![(b.clone(), Scalar::one())]);
            }
        }
    }

    #[test]
    fn non_lie_rejected() {
        let g = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).unwrap();
        let t = Tensor::monomial(w(&[0, 1]), Scalar::one());
        assert_eq!(decompose(&g, &t), Err(Error::NotLie));
    }

    #[test]
    fn degree_basis_counts() {
        let g = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).unwrap();
        assert_eq!(basis_in_degree(&g, 0, 4).len(), 2 + 1 + 2 + 3);
        let u = GeneratorSet::from_degrees(&[("u", 1)]).unwrap();
        assert_eq!(basis_in_degree(&u, 2, 4).len(), 1);
        assert_eq!(basis_in_degree(&u, 3, 4).len(), 0);
    }

    #[test]
    fn basis_size_matches_tensor_rank() {
        let sets: &[&[(&str, i32)]] = &[
            &[("x", 0), ("y", 0), ("z", 0)],
            &[("u", 1), ("x", 0)],
            &[("a", -1), ("u", 1), ("x", 0)],
            &[("u", 1), ("v", 1), ("w", 3)],
            &[("a", -1), ("b", -1)],
        ];
        for spec in sets {
            let g = GeneratorSet::from_degrees(spec).unwrap();
            for q in 1..=5 {
                assert_eq!(
                    lyndon_basis(&g, q, None).len(),
                    graded_witt_dimension(&g, q),
                    "{spec:?} length {q}"
                );
            }
        }
    }
}
