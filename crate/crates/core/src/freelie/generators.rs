use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use super::tensor::Tensor;
use crate::error::{Error, Result};

/// One generator: name, homological degree, and upper degree (weight).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
    pub weight: u32,
}

impl Generator {
    pub fn new(name: impl Into<String>, degree: i32) -> Self {
        Generator { name: name.into(), degree, weight: 1 }
    }

    pub fn with_weight(name: impl Into<String>, degree: i32, weight: u32) -> Self {
        Generator { name: name.into(), degree, weight }
    }
}

/// Ordered generators of a free graded Lie algebra. Generators are sorted by
/// `(degree, name)`; indices into this order are the letters of tensor words.
pub struct GeneratorSet {
    gens: Vec<Generator>,
    by_name: HashMap<String, u16>,
    pub(crate) expansions: Mutex<HashMap<(bool, super::Word), Arc<Tensor>>>,
}

impl GeneratorSet {
    pub fn new(mut gens: Vec<Generator>) -> Result<Arc<Self>> {
        if gens.len() > u16::MAX as usize {
            return Err(Error::InvalidInput(format!("too many generators ({})", gens.len())));
        }
        gens.sort_by(|a, b| (a.degree, &a.name).cmp(&(b.degree, &b.name)));
        let mut by_name = HashMap::new();
        for (i, g) in gens.iter().enumerate() {
            if g.weight == 0 {
                return Err(Error::InvalidInput(format!("generator {} has upper degree 0", g.name)));
            }
            if by_name.insert(g.name.clone(), i as u16).is_some() {
                return Err(Error::InvalidInput(format!("duplicate generator name {}", g.name)));
            }
        }
        Ok(Arc::new(GeneratorSet { gens, by_name, expansions: Mutex::new(HashMap::new()) }))
    }

    /// Convenience constructor from `(name, degree)` pairs, all of weight 1.
    pub fn from_degrees(spec: &[(&str, i32)]) -> Result<Arc<Self>> {
        Self::new(spec.iter().map(|(n, d)| Generator::new(*n, *d)).collect())
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn get(&self, i: usize) -> &Generator {
        &self.gens[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = &Generator> {
        self.gens.iter()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.by_name.get(name).map(|&i| i as usize)
    }

    pub fn degree(&self, i: usize) -> i32 {
        self.gens[i].degree
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.gens[i].weight
    }

    pub fn name(&self, i: usize) -> &str {
        &self.gens[i].name
    }

    pub fn weights(&self) -> Vec<u32> {
        self.gens.iter().map(|g| g.weight).collect()
    }

    pub fn degrees(&self) -> Vec<i32> {
        self.gens.iter().map(|g| g.degree).collect()
    }

    pub fn word_degree(&self, w: &[u16]) -> i32 {
        w.iter().map(|&g| self.gens[g as usize].degree).sum()
    }

    pub fn word_weight(&self, w: &[u16]) -> u32 {
        w.iter().map(|&g| self.gens[g as usize].weight).sum()
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }
}

impl PartialEq for GeneratorSet {
    fn eq(&self, other: &Self) -> bool {
        self.gens == other.gens
    }
}

impl Eq for GeneratorSet {}

impl fmt::Debug for GeneratorSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.gens.iter().map(|g| (&g.name, g.degree, g.weight)))
            .finish()
    }
}

pub(crate) fn same_gens(a: &Arc<GeneratorSet>, b: &Arc<GeneratorSet>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
