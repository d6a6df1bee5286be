//! Finite simplicial sets given by their nondegenerate simplices, with
//! normalized chains and simplicial homology.
//!
//! A face of a nondegenerate simplex is a degeneracy word applied to a
//! nondegenerate simplex. Degenerate simplices are never stored.

use std::collections::HashMap;
use std::path::Path;

use serde_json::Value;

use crate::error::{Error, Result};
use crate::qalgebra::{chain_homology, ChainComplexSlice, Scalar, SparseMatrix};

/// A nondegenerate simplex, addressed by dimension and position in its level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexId {
    pub dim: usize,
    pub index: usize,
}

/// `s_{j1} s_{j2} … s_{jt} x` with `j1 > j2 > … > jt` (normal form).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Simplex {
    pub degeneracy: Vec<usize>,
    pub base: SimplexId,
}

impl Simplex {
    pub fn nondegenerate(base: SimplexId) -> Self {
        Simplex { degeneracy: Vec::new(), base }
    }

    pub fn dim(&self) -> usize {
        self.base.dim + self.degeneracy.len()
    }

    pub fn is_degenerate(&self) -> bool {
        !self.degeneracy.is_empty()
    }
}

/// Rewrites a degeneracy word (outermost first) into strictly decreasing form
/// using `s_i s_j = s_{j+1} s_i` for `i ≤ j`.
pub fn normalize_degeneracy(word: &[usize]) -> Vec<usize> {
    let mut w = word.to_vec();
    loop {
        let Some(p) = (0..w.len().saturating_sub(1)).find(|&p| w[p] <= w[p + 1]) else {
            return w;
        };
        let (i, j) = (w[p], w[p + 1]);
        w[p] = j + 1;
        w[p + 1] = i;
    }
}

fn degeneracy_fits(word: &[usize], base_dim: usize) -> bool {
    // s_{j_r} acts on a simplex of dimension base_dim + (t - 1 - r)
    let t = word.len();
    word.iter().enumerate().all(|(r, &j)| j <= base_dim + (t - 1 - r))
}

#[derive(Clone, Debug)]
struct Entry {
    name: String,
    faces: Vec<Simplex>,
}

/// A finite simplicial set.
#[derive(Clone, Debug)]
pub struct SimplicialSetSpec {
    name: String,
    levels: Vec<Vec<Entry>>,
}

impl SimplicialSetSpec {
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Top dimension, or `None` when empty.
    pub fn dimension(&self) -> Option<usize> {
        self.levels.iter().rposition(|l| !l.is_empty())
    }

    pub fn count(&self, dim: usize) -> usize {
        self.levels.get(dim).map_or(0, Vec::len)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.levels.iter().map(Vec::len).collect()
    }

    /// Exactly one vertex.
    pub fn is_reduced(&self) -> bool {
        self.count(0) == 1
    }

    pub fn simplex_name(&self, id: SimplexId) -> &str {
        &self.levels[id.dim][id.index].name
    }

    pub fn find(&self, name: &str) -> Option<SimplexId> {
        self.ids().find(|&id| self.simplex_name(id) == name)
    }

    /// All nondegenerate simplices, by dimension then declaration order.
    pub fn ids(&self) -> impl Iterator<Item = SimplexId> + '_ {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(dim, l)| (0..l.len()).map(move |index| SimplexId { dim, index }))
    }

    /// Stored faces of a nondegenerate simplex of positive dimension.
    pub fn faces(&self, id: SimplexId) -> &[Simplex] {
        &self.levels[id.dim][id.index].faces
    }

    /// `d_i` of an arbitrary simplex, via the simplicial identities.
    pub fn face(&self, i: usize, x: &Simplex) -> Simplex {
        assert!(x.dim() > 0 && i <= x.dim(), "face index out of range");
        if x.degeneracy.is_empty() {
            return self.faces(x.base)[i].clone();
        }
        let j = x.degeneracy[0];
        let rest = Simplex { degeneracy: x.degeneracy[1..].to_vec(), base: x.base };
        if i == j || i == j + 1 {
            return rest;
        }
        let (outer, inner) = if i < j { (j - 1, self.face(i, &rest)) } else { (j, self.face(i - 1, &rest)) };
        let mut word = vec![outer];
        word.extend_from_slice(&inner.degeneracy);
        Simplex { degeneracy: normalize_degeneracy(&word), base: inner.base }
    }

    /// The face spanned by the vertices in `mask` (bit `v` = vertex `v`).
    pub fn sub_face(&self, x: &Simplex, mask: u32) -> Simplex {
        let mut out = x.clone();
        for v in (0..=x.dim()).rev() {
            if mask >> v & 1 == 0 {
                out = self.face(v, &out);
            }
        }
        out
    }

    /// Checks `d_i d_j = d_{j-1} d_i` for `i < j` on every nondegenerate simplex.
    pub fn check_identities(&self) -> Result<()> {
        for id in self.ids().filter(|id| id.dim >= 2) {
            let x = Simplex::nondegenerate(id);
            for j in 0..=id.dim {
                let dj = self.face(j, &x);
                for i in 0..j {
                    let lhs = self.face(i, &dj);
                    let rhs = self.face(j - 1, &self.face(i, &x));
                    if lhs != rhs {
                        return Err(Error::Simplex {
                            simplex: self.simplex_name(id).to_string(),
                            reason: format!("d{i} d{j} ≠ d{} d{i}", j - 1),
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

fn simplex_err(name: &str, reason: impl Into<String>) -> Error {
    Error::Simplex { simplex: name.to_string(), reason: reason.into() }
}

/// Parses and validates a simplicial set document.
pub fn load_simplicial_set(document: &str) -> Result<SimplicialSetSpec> {
    let v: Value =
        serde_json::from_str(document).map_err(|e| Error::InvalidInput(format!("malformed document: {e}")))?;
    let name = v
        .get("name")
        .and_then(Value::as_str)
        .ok_or_else(|| Error::InvalidInput("missing string field \"name\"".into()))?
        .to_string();
    let simplices = v
        .get("simplices")
        .and_then(Value::as_object)
        .ok_or_else(|| Error::InvalidInput("missing object field \"simplices\"".into()))?;
    let mut raw: Vec<(usize, &Vec<Value>)> = Vec::new();
    for (key, list) in simplices {
        let dim: usize =
            key.parse().map_err(|_| Error::InvalidInput(format!("dimension key {key:?} is not a natural number")))?;
        let list = list.as_array().ok_or_else(|| Error::InvalidInput(format!("dimension {dim}: expected an array")))?;
        raw.push((dim, list));
    }
    raw.sort_by_key(|(d, _)| *d);
    let top = raw.last().map_or(0, |(d, _)| *d);
    let mut levels: Vec<Vec<Entry>> = vec![Vec::new(); top + 1];
    let mut names: HashMap<String, SimplexId> = HashMap::new();
    let register = |names: &mut HashMap<String, SimplexId>, n: &str, id: SimplexId| {
        if names.insert(n.to_string(), id).is_some() {
            return Err(simplex_err(n, "declared more than once"));
        }
        Ok(())
    };
    // declare names first so faces may refer to any lower dimension
    for (dim, list) in &raw {
        for (index, item) in list.iter().enumerate() {
            let n = if *dim == 0 {
                item.as_str().ok_or_else(|| Error::InvalidInput("vertex entries must be strings".into()))?
            } else {
                item.get("id")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Error::InvalidInput(format!("dimension {dim}: entry {index} lacks a string \"id\"")))?
            };
            register(&mut names, n, SimplexId { dim: *dim, index })?;
            levels[*dim].push(Entry { name: n.to_string(), faces: Vec::new() });
        }
    }
    for (dim, list) in &raw {
        if *dim == 0 {
            continue;
        }
        for (index, item) in list.iter().enumerate() {
            let n = levels[*dim][index].name.clone();
            let faces = item
                .get("faces")
                .and_then(Value::as_array)
                .ok_or_else(|| simplex_err(&n, "missing \"faces\" array"))?;
            if faces.len() != dim + 1 {
                return Err(simplex_err(&n, format!("has {} faces, expected {}", faces.len(), dim + 1)));
            }
            let mut parsed = Vec::with_capacity(faces.len());
            for (i, f) in faces.iter().enumerate() {
                parsed.push(parse_face(&n, i, *dim, f, &names)?);
            }
            levels[*dim][index].faces = parsed;
        }
    }
    let spec = SimplicialSetSpec { name, levels };
    spec.check_identities()?;
    Ok(spec)
}

fn parse_face(owner: &str, i: usize, dim: usize, f: &Value, names: &HashMap<String, SimplexId>) -> Result<Simplex> {
    let pair = f.as_array().filter(|p| p.len() == 2).ok_or_else(|| {
        simplex_err(owner, format!("face {i} must be a pair [degeneracy word, target]"))
    })?;
    let word = pair[0]
        .as_array()
        .ok_or_else(|| simplex_err(owner, format!("face {i}: degeneracy word must be an array")))?
        .iter()
        .map(|x| x.as_u64().map(|x| x as usize))
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| simplex_err(owner, format!("face {i}: degeneracy indices must be natural numbers")))?;
    if word.windows(2).any(|p| p[0] < p[1]) {
        return Err(simplex_err(owner, format!("face {i}: degeneracy word {word:?} is not weakly decreasing")));
    }
    let target_name = pair[1]
        .as_str()
        .ok_or_else(|| simplex_err(owner, format!("face {i}: target must be a name")))?;
    let base = *names
        .get(target_name)
        .ok_or_else(|| simplex_err(owner, format!("face {i} names unknown simplex {target_name:?}")))?;
    if base.dim + word.len() != dim - 1 {
        return Err(simplex_err(
            owner,
            format!(
                "face {i}: {target_name} has dimension {} and {} degeneracies, expected total dimension {}",
                base.dim,
                word.len(),
                dim - 1
            ),
        ));
    }
    let degeneracy = normalize_degeneracy(&word);
    if !degeneracy_fits(&degeneracy, base.dim) {
        return Err(simplex_err(owner, format!("face {i}: degeneracy word {word:?} out of range")));
    }
    Ok(Simplex { degeneracy, base })
}

/// Reads a document from disk; a missing `.json` extension is tolerated.
pub fn load_simplicial_set_file(path: impl AsRef<Path>) -> Result<SimplicialSetSpec> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).or_else(|e| {
        if path.extension().is_none() {
            std::fs::read_to_string(path.with_extension("json"))
        } else {
            Err(e)
        }
    });
    let text = text.map_err(|e| Error::InvalidInput(format!("cannot read {}: {e}", path.display())))?;
    load_simplicial_set(&text)
}

/// Normalized chains: nondegenerate simplices, degenerate faces dropped.
pub fn normalized_chains(x: &SimplicialSetSpec) -> ChainComplexSlice {
    let mut c = ChainComplexSlice::new();
    for (dim, level) in x.levels.iter().enumerate() {
        c.set_dim(dim as i32, level.len());
    }
    for dim in 1..x.levels.len() {
        let mut m = SparseMatrix::zeros(x.count(dim - 1), x.count(dim));
        for (col, e) in x.levels[dim].iter().enumerate() {
            for (i, f) in e.faces.iter().enumerate() {
                if f.is_degenerate() {
                    continue;
                }
                let sign = if i % 2 == 0 { Scalar::one() } else { -Scalar::one() };
                let old = m.get(f.base.index, col);
                m.set(f.base.index, col, old + sign);
            }
        }
        c.set_boundary(dim as i32, m).expect("dimensions follow the levels");
    }
    c
}

/// Homology dimensions in degrees `0..=dim X`.
pub fn simplicial_homology(x: &SimplicialSetSpec) -> Vec<usize> {
    let Some(top) = x.dimension() else { return Vec::new() };
    let c = normalized_chains(x);
    chain_homology(&c, 0..=top as i32)
        .expect("normalized chains satisfy ∂² = 0 once the identities hold")
        .iter()
        .map(|h| h.dim())
        .collect()
}

/// Reduced homology: degree 0 lowered by one.
pub fn reduced_homology(x: &SimplicialSetSpec) -> Vec<usize> {
    let mut h = simplicial_homology(x);
    if let Some(h0) = h.first_mut() {
        *h0 = h0.saturating_sub(1);
    }
    h
}

/// Alternating sum of nondegenerate simplex counts.
pub fn euler_characteristic(x: &SimplicialSetSpec) -> i64 {
    x.counts().iter().enumerate().map(|(d, &c)| if d % 2 == 0 { c as i64 } else { -(c as i64) }).sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    const CIRCLE: &str = r#"{"name":"S1","simplices":{"0":["v"],"1":[{"id":"e","faces":[[[],"v"],[[],"v"]]}]}}"#;

    #[test]
    fn circle_loads_reduced() {
        let x = load_simplicial_set(CIRCLE).unwrap();
        assert!(x.is_reduced());
        assert_eq!(reduced_homology(&x), vec![0, 1]);
    }

    #[test]
    fn degeneracy_normal_form() {
        assert_eq!(normalize_degeneracy(&[0, 0]), vec![1, 0]);
        assert_eq!(normalize_degeneracy(&[0, 0, 0]), vec![2, 1, 0]);
        assert_eq!(normalize_degeneracy(&[2, 0]), vec![2, 0]);
        assert_eq!(normalize_degeneracy(&[1, 1]), vec![2, 1]);
    }

    #[test]
    fn faces_of_degenerate_simplices() {
        let x = load_simplicial_set(CIRCLE).unwrap();
        let e = Simplex::nondegenerate(x.find("e").unwrap());
        // s0 e has faces d0 = e, d1 = e, d2 = s0 d1 e
        let s0e = Simplex { degeneracy: vec![0], base: e.base };
        assert_eq!(x.face(0, &s0e), e);
        assert_eq!(x.face(1, &s0e), e);
        let d2 = x.face(2, &s0e);
        assert_eq!(d2.degeneracy, vec![0]);
        assert_eq!(x.simplex_name(d2.base), "v");
    }

    #[test]
    fn missing_face_names_the_simplex() {
        let doc = r#"{"name":"bad","simplices":{"0":["v"],"1":[{"id":"e","faces":[[[],"v"],[[],"w"]]}]}}"#;
        match load_simplicial_set(doc) {
            Err(Error::Simplex { simplex, .. }) => assert_eq!(simplex, "e"),
            other => panic!("expected a simplex error, got {other:?}"),
        }
    }

    #[test]
    fn identity_violation_is_reported() {
        // two distinct vertices glued inconsistently along a triangle
        let doc = r#"{"name":"bad","simplices":{"0":["p","q"],
            "1":[{"id":"e","faces":[[[],"q"],[[],"p"]]}],
            "2":[{"id":"t","faces":[[[],"e"],[[],"e"],[[],"e"]]}]}}"#;
        match load_simplicial_set(doc) {
            Err(Error::Simplex { simplex, .. }) => assert_eq!(simplex, "t"),
            other => panic!("expected a simplex error, got {other:?}"),
        }
    }

    #[test]
    fn wrong_face_dimension() {
        let doc = r#"{"name":"bad","simplices":{"0":["v"],"1":[{"id":"e","faces":[[[],"v"],[[],"v"]]}],
            "2":[{"id":"t","faces":[[[],"v"],[[],"e"],[[],"e"]]}]}}"#;
        assert!(matches!(load_simplicial_set(doc), Err(Error::Simplex { .. })));
    }

    #[test]
    fn sub_face_of_triangle() {
        let doc = r#"{"name":"tri","simplices":{"0":["p","q","r"],
            "1":[{"id":"pq","faces":[[[],"q"],[[],"p"]]},{"id":"pr","faces":[[[],"r"],[[],"p"]]},{"id":"qr","faces":[[[],"r"],[[],"q"]]}],
            "2":[{"id":"t","faces":[[[],"qr"],[[],"pr"],[[],"pq"]]}]}}"#;
        let x = load_simplicial_set(doc).unwrap();
        let t = Simplex::nondegenerate(x.find("t").unwrap());
        assert_eq!(x.simplex_name(x.sub_face(&t, 0b101).base), "pr");
        assert_eq!(x.simplex_name(x.sub_face(&t, 0b010).base), "q");
        assert_eq!(reduced_homology(&x), vec![0, 0, 0]);
        assert_eq!(euler_characteristic(&x), 1);
    }
}
