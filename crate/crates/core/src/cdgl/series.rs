//! Baker–Campbell–Hausdorff product, exponential action and gauge action.

use std::collections::HashMap;

use super::{is_mc, Cdgl, MCElement};
use crate::error::{Error, Result};
use crate::freelie::LieElement;
use crate::qalgebra::Scalar;

/// The operations the series below need from a Lie algebra.
pub trait LieOps {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    /// `a + c·b`
    fn axpy(&self, a: &Self::Elem, c: &Scalar, b: &Self::Elem) -> Self::Elem;
    fn bracket(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
}

/// Free Lie algebra arithmetic on [`LieElement`]s (truncation is carried by the
/// elements themselves).
pub struct FreeLieOps<'a>(pub &'a LieElement);

impl LieOps for FreeLieOps<'_> {
    type Elem = LieElement;
    fn zero(&self) -> LieElement {
        LieElement::zero(self.0.gens(), self.0.order())
    }
    fn axpy(&self, a: &LieElement, c: &Scalar, b: &LieElement) -> LieElement {
        let mut out = a.clone();
        out.add_scaled(b, c);
        out
    }
    fn bracket(&self, a: &LieElement, b: &LieElement) -> LieElement {
        a.bracket(b)
    }
    fn is_zero(&self, a: &LieElement) -> bool {
        a.is_zero()
    }
}

/// Dynkin coefficient of the right-normed bracket on the letter sequence `w`
/// (`false` = x, `true` = y).
fn dynkin_coefficient(w: &[bool]) -> Scalar {
    let m = w.len();
    // f[i][n]: splits of w[..i] into n blocks of the form x^r y^s, weighted by 1/(r! s!)
    let mut f = vec![vec![Scalar::zero(); m + 1]; m + 1];
    f[0][0] = Scalar::one();
    for i in 0..m {
        for n in 0..=i {
            if f[i][n].is_zero() {
                continue;
            }
            let mut r = 0;
            let mut s = 0;
            for j in i..m {
                if w[j] {
                    s += 1;
                } else if s > 0 {
                    break;
                } else {
                    r += 1;
                }
                let c = &f[i][n] * &(Scalar::inv_factorial(r) * Scalar::inv_factorial(s));
                f[j + 1][n + 1] += c;
            }
        }
    }
    let mut total = Scalar::zero();
    for n in 1..=m {
        let c = &f[m][n] / &Scalar::from_int(n as i64);
        if n % 2 == 1 {
            total += c;
        } else {
            total -= c;
        }
    }
    total / Scalar::from_int(m as i64)
}

/// `log(e^x e^y)` through words of length `max_len`, via the Dynkin series.
pub fn bch_series<O: LieOps>(ops: &O, x: &O::Elem, y: &O::Elem, max_len: usize) -> O::Elem {
    let mut out = ops.zero();
    // right-normed brackets of suffixes, shared between words
    let mut memo: HashMap<Vec<bool>, O::Elem> = HashMap::new();
    for m in 1..=max_len {
        for bits in 0u64..(1u64 << m) {
            let w: Vec<bool> = (0..m).map(|i| (bits >> (m - 1 - i)) & 1 == 1).collect();
            let c = dynkin_coefficient(&w);
            if c.is_zero() {
                continue;
            }
            let v = right_normed(ops, x, y, &w, &mut memo);
            if !ops.is_zero(&v) {
                out = ops.axpy(&out, &c, &v);
            }
        }
    }
    out
}

fn right_normed<O: LieOps>(
    ops: &O,
    x: &O::Elem,
    y: &O::Elem,
    w: &[bool],
    memo: &mut HashMap<Vec<bool>, O::Elem>,
) -> O::Elem {
    if let Some(v) = memo.get(w) {
        return v.clone();
    }
    let head = if w[0] { y } else { x };
    let v = if w.len() == 1 {
        head.clone()
    } else {
        let tail = right_normed(ops, x, y, &w[1..], memo);
        if ops.is_zero(&tail) {
            tail
        } else {
            ops.bracket(head, &tail)
        }
    };
    memo.insert(w.to_vec(), v.clone());
    v
}

fn require_degree_zero(x: &LieElement) -> Result<()> {
    if x.has_degree(0) {
        Ok(())
    } else {
        Err(Error::WrongDegree {
            expected: 0,
            found: x.degree().map_or("mixed".into(), |d| d.to_string()),
        })
    }
}

/// BCH product of two degree-0 elements, exact modulo the truncation.
pub fn bch(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    require_degree_zero(x)?;
    require_degree_zero(y)?;
    if !x.compatible(y) {
        return Err(Error::MismatchedAlgebras);
    }
    Ok(bch_series(&FreeLieOps(x), x, y, x.order() as usize))
}

/// `e^{ad_α}(β) = Σ ad_α^k(β)/k!`.
pub fn exp_ad(alpha: &LieElement, beta: &LieElement) -> Result<LieElement> {
    require_degree_zero(alpha)?;
    if !alpha.compatible(beta) {
        return Err(Error::MismatchedAlgebras);
    }
    let mut out = beta.clone();
    let mut term = beta.clone();
    let mut k = 0;
    loop {
        k += 1;
        term = alpha.bracket(&term);
        if term.is_zero() {
            return Ok(out);
        }
        out.add_scaled(&term, &Scalar::inv_factorial(k));
    }
}

/// Gauge action `x·a = e^{ad_x}(a) − Σ_k ad_x^k(dx)/(k+1)!`. The output is
/// checked to be Maurer–Cartan.
pub fn gauge_transform(l: &Cdgl, a: &MCElement, x: &LieElement) -> Result<MCElement> {
    require_degree_zero(x)?;
    let mut out = exp_ad(x, a.value())?;
    let mut term = l.d(x);
    let mut k = 0;
    while !term.is_zero() {
        out.add_scaled(&term, &-Scalar::inv_factorial(k + 1));
        k += 1;
        term = x.bracket(&term);
    }
    if !is_mc(l, &out)? {
        return Err(Error::Invariant(format!("gauge action left the MC set: {out}")));
    }
    MCElement::new(l, out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::{Generator, GeneratorSet};

    fn xy(order: u32) -> (LieElement, LieElement) {
        let g = GeneratorSet::from_degrees(&[("x", 0), ("y", 0)]).unwrap();
        (LieElement::named(&g, order, "x").unwrap(), LieElement::named(&g, order, "y").unwrap())
    }

    #[test]
    fn bch_identity_and_inverse() {
        let (x, y) = xy(4);
        assert_eq!(bch(&x, &x.scale(&Scalar::zero())).unwrap(), x);
        assert!(bch(&x, &-&x).unwrap().is_zero());
        let s = &x + &y;
        assert!(bch(&s, &-&s).unwrap().is_zero());
    }

    #[test]
    fn bch_second_order() {
        let (x, y) = xy(2);
        let mut expect = &x + &y;
        expect.add_scaled(&x.bracket(&y), &Scalar::new(1, 2));
        assert_eq!(bch(&x, &y).unwrap(), expect);
    }

    #[test]
    fn bch_third_order_terms() {
        let (x, y) = xy(3);
        let b = bch(&x, &y).unwrap();
        let xxy = crate::freelie::BasisBracket::lyndon(x.gens(), smallvec::smallvec![0, 0, 1]);
        let xyy = crate::freelie::BasisBracket::lyndon(x.gens(), smallvec::smallvec![0, 1, 1]);
        assert_eq!(b.coefficient(&xxy), Scalar::new(1, 12));
        // [y,[y,x]] = [[x,y],y] = [x,y,y] in the basis
        assert_eq!(b.coefficient(&xyy), Scalar::new(1, 12));
    }

    #[test]
    fn bch_rejects_odd() {
        let g = GeneratorSet::from_degrees(&[("u", 1)]).unwrap();
        let u = LieElement::named(&g, 3, "u").unwrap();
        assert!(matches!(bch(&u, &u), Err(Error::WrongDegree { .. })));
    }

    #[test]
    fn exp_ad_series() {
        let (x, y) = xy(4);
        assert_eq!(exp_ad(&x.scale(&Scalar::zero()), &y).unwrap(), y);
        let e = exp_ad(&x, &y).unwrap();
        let xy_ = x.bracket(&y);
        let mut expect = &y + &xy_;
        expect.add_scaled(&x.bracket(&xy_), &Scalar::new(1, 2));
        expect.add_scaled(&x.bracket(&x.bracket(&xy_)), &Scalar::new(1, 6));
        assert_eq!(e, expect);
    }

    #[test]
    fn exp_ad_is_multiplicative() {
        let (x, y) = xy(4);
        let z = bch(&x, &y).unwrap();
        for probe in [&x, &y, &x.bracket(&y)] {
            let lhs = exp_ad(&z, probe).unwrap();
            let rhs = exp_ad(&x, &exp_ad(&y, probe).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn gauge_in_abelian_setting() {
        // at N = 1 every bracket vanishes, so x·a = a − dx
        let gens = GeneratorSet::new(vec![Generator::new("a", -1), Generator::new("x", 0)]).unwrap();
        let a = LieElement::named(&gens, 1, "a").unwrap();
        let l = Cdgl::from_named(gens, 1, &[("x", a.clone())]).unwrap();
        let x = l.named("x").unwrap();
        let zero = MCElement::zero(&l);
        assert_eq!(*gauge_transform(&l, &zero, &x).unwrap().value(), -&a);
        let am = MCElement::new(&l, a.clone()).unwrap();
        assert!(gauge_transform(&l, &am, &x).unwrap().value().is_zero());
        assert_eq!(*gauge_transform(&l, &am, &l.zero()).unwrap().value(), a);
    }
}
