use std::sync::Arc;

use super::{simplex_model, SimplexModel};
use crate::cdgl::CdglMorphism;
use crate::error::{Error, Result};
use crate::freelie::LieElement;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorKind {
    /// `δ^i : 𝔏_{n−1} → 𝔏_n`, skipping vertex `i`.
    Coface,
    /// `σ^i : 𝔏_{n+1} → 𝔏_n`, repeating vertex `i`.
    Codegeneracy,
}

/// Image of a vertex set under a monotone vertex map; `None` when two
/// vertices collide.
fn image_mask(mask: u32, f: impl Fn(u32) -> u32) -> Option<u32> {
    let mut out = 0u32;
    for v in 0..32 {
        if mask & (1 << v) != 0 {
            let w = f(v);
            if out & (1 << w) != 0 {
                return None;
            }
            out |= 1 << w;
        }
    }
    Some(out)
}

fn morphism_from_vertex_map(
    source: &SimplexModel,
    target: &SimplexModel,
    f: impl Fn(u32) -> u32,
) -> Result<CdglMorphism> {
    let tgt = target.cdgl();
    let images = source
        .masks()
        .iter()
        .map(|&m| match image_mask(m, &f) {
            Some(im) => tgt.generator(target.generator_of(im).expect("vertex map stays in range")),
            None => LieElement::zero(tgt.gens(), tgt.order()),
        })
        .collect();
    CdglMorphism::new(Arc::new(source.cdgl().clone()), Arc::new(tgt.clone()), images)
}

/// The coface or codegeneracy with index `i` into `𝔏_n`, checked to commute
/// with the differentials.
pub fn cosimplicial_operator(kind: OperatorKind, i: usize, n: usize, order: u32) -> Result<CdglMorphism> {
    let src = match kind {
        OperatorKind::Coface if n == 0 || i > n => {
            return Err(Error::InvalidInput(format!("coface {i} into dimension {n}")));
        }
        OperatorKind::Codegeneracy if i > n => {
            return Err(Error::InvalidInput(format!("codegeneracy {i} into dimension {n}")));
        }
        OperatorKind::Coface => simplex_model(n - 1, order)?,
        OperatorKind::Codegeneracy => simplex_model(n + 1, order)?,
    };
    operator_between(kind, i, &src, &simplex_model(n, order)?)
}

/// As [`cosimplicial_operator`], between models already built.
pub fn operator_between(
    kind: OperatorKind,
    i: usize,
    source: &SimplexModel,
    target: &SimplexModel,
) -> Result<CdglMorphism> {
    let (s, n) = (source.dimension(), target.dimension());
    let i32_ = i as u32;
    let m = match kind {
        OperatorKind::Coface => {
            if s + 1 != n || i > n {
                return Err(Error::InvalidInput(format!("coface {i} from dimension {s} to {n}")));
            }
            morphism_from_vertex_map(source, target, |j| if j < i32_ { j } else { j + 1 })?
        }
        OperatorKind::Codegeneracy => {
            if s != n + 1 || i > n {
                return Err(Error::InvalidInput(format!("codegeneracy {i} from dimension {s} to {n}")));
            }
            morphism_from_vertex_map(source, target, |k| if k <= i32_ { k } else { k - 1 })?
        }
    };
    m.check()?;
    Ok(m)
}

/// Checks the cosimplicial identities among operators landing in dimensions
/// `≤ max_n`, as equalities of generator images. Returns the list of failures.
pub fn check_cosimplicial_identities(max_n: usize, order: u32) -> Result<Vec<String>> {
    use OperatorKind::*;
    let op = |k, i, n| cosimplicial_operator(k, i, n, order);
    let mut failures = Vec::new();
    let mut expect = |name: String, lhs: CdglMorphism, rhs: CdglMorphism| {
        if !lhs.same_as(&rhs) {
            failures.push(name);
        }
    };
    // δ^j δ^i = δ^i δ^{j−1} for i < j, into dimension n
    for n in 2..=max_n {
        for j in 0..=n {
            for i in 0..j {
                let lhs = op(Coface, j, n)?.after(&op(Coface, i, n - 1)?)?;
                let rhs = op(Coface, i, n)?.after(&op(Coface, j - 1, n - 1)?)?;
                expect(format!("δ{j}δ{i} = δ{i}δ{}  (n={n})", j - 1), lhs, rhs);
            }
        }
    }
    // σ^j σ^i = σ^i σ^{j+1} for i ≤ j, from dimension n+2 to n
    for n in 0..max_n.saturating_sub(1) {
        for j in 0..=n {
            for i in 0..=j {
                let lhs = op(Codegeneracy, j, n)?.after(&op(Codegeneracy, i, n + 1)?)?;
                let rhs = op(Codegeneracy, i, n)?.after(&op(Codegeneracy, j + 1, n + 1)?)?;
                expect(format!("σ{j}σ{i} = σ{i}σ{}  (n={n})", j + 1), lhs, rhs);
            }
        }
    }
    // σ^j δ^i on 𝔏_n for 1 ≤ n < max_n: δ^i : 𝔏_n → 𝔏_{n+1}, σ^j : 𝔏_{n+1} → 𝔏_n
    for n in 1..max_n {
        for j in 0..=n {
            for i in 0..=n + 1 {
                let lhs = op(Codegeneracy, j, n)?.after(&op(Coface, i, n + 1)?)?;
                let (name, rhs) = if i < j {
                    (
                        format!("σ{j}δ{i} = δ{i}σ{}  (n={n})", j - 1),
                        op(Coface, i, n)?.after(&op(Codegeneracy, j - 1, n - 1)?)?,
                    )
                } else if i == j || i == j + 1 {
                    let m = simplex_model(n, order)?;
                    let l = Arc::new(m.cdgl().clone());
                    let id = (0..l.gens().len()).map(|g| l.generator(g)).collect();
                    (format!("σ{j}δ{i} = id  (n={n})"), CdglMorphism::new(l.clone(), l, id)?)
                } else {
                    (
                        format!("σ{j}δ{i} = δ{}σ{j}  (n={n})", i - 1),
                        op(Coface, i - 1, n)?.after(&op(Codegeneracy, j, n - 1)?)?,
                    )
                };
                expect(name, lhs, rhs);
            }
        }
    }
    Ok(failures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn codegeneracy_of_interval() {
        let s = cosimplicial_operator(OperatorKind::Codegeneracy, 0, 0, 4).unwrap();
        let l0 = s.target().clone();
        let a0 = l0.named("a0").unwrap();
        assert_eq!(*s.image(s.source().gens().index_of("a0").unwrap()), a0);
        assert_eq!(*s.image(s.source().gens().index_of("a1").unwrap()), a0);
        assert!(s.image(s.source().gens().index_of("a01").unwrap()).is_zero());
    }

    #[test]
    fn cofaces_commute_with_d() {
        for i in 0..=2 {
            cosimplicial_operator(OperatorKind::Coface, i, 2, 4).unwrap();
        }
    }

    #[test]
    fn identities_low_dimensions() {
        assert!(check_cosimplicial_identities(3, 3).unwrap().is_empty());
    }
}
