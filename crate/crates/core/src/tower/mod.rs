//! The completion tower `L/Lⁿ` of the based model of a reduced simplicial
//! set, with the homotopy groups of each stage and their stabilization.

use serde::Serialize;

use crate::cdgl::{
    dgl_homology, exp_ad, finite_bch, is_degreewise_nilpotent, lcs_quotient, nilpotency_routes, Cdgl,
    DglHomology, FiniteGradedLie,
};
use crate::error::{Error, Result};
use crate::freelie::{basis_in_degree, LieElement};
use crate::model::based_component_model;
use crate::qalgebra::{Scalar, SpanBasis, SparseVec};
use crate::simpset::SimplicialSetSpec;

/// Stage `n` of the tower: the based model computed modulo `Lⁿ`.
#[derive(Clone, Debug)]
pub struct Stage {
    pub n: u32,
    pub cdgl: Cdgl,
}

#[derive(Clone, Debug)]
pub struct CompletionTower {
    pub name: String,
    pub base_vertex: String,
    pub stages: Vec<Stage>,
}

/// Stages `2..=n_max`, each built from scratch at truncation `n − 1`.
pub fn completion_tower(x: &SimplicialSetSpec, n_max: u32) -> Result<CompletionTower> {
    if n_max < 2 {
        return Err(Error::InvalidInput(format!("the tower needs at least stage 2, got {n_max}")));
    }
    let base = x
        .ids()
        .find(|id| id.dim == 0)
        .map(|id| x.simplex_name(id).to_string())
        .ok_or_else(|| Error::InvalidInput(format!("{} has no vertex", x.name())))?;
    let stages = (2..=n_max)
        .map(|n| Ok(Stage { n, cdgl: based_component_model(x, n - 1)? }))
        .collect::<Result<Vec<_>>>()?;
    Ok(CompletionTower { name: x.name().to_string(), base_vertex: base, stages })
}

impl CompletionTower {
    pub fn stage(&self, n: u32) -> Option<&Stage> {
        self.stages.iter().find(|s| s.n == n)
    }

    /// Each stage is the quotient of the next, generator by generator, and
    /// the projection hits every basis element in degrees `0..=max_degree`.
    pub fn check_projections(&self, max_degree: i32) -> Result<()> {
        for pair in self.stages.windows(2) {
            let (lo, hi) = (&pair[0], &pair[1]);
            if lcs_quotient(&hi.cdgl, lo.n)? != lo.cdgl {
                return Err(Error::Invariant(format!(
                    "stage {} is not the quotient of stage {}",
                    lo.n, hi.n
                )));
            }
            for p in 0..=max_degree {
                let upper = basis_in_degree(hi.cdgl.gens(), p, hi.cdgl.order());
                for b in basis_in_degree(lo.cdgl.gens(), p, lo.cdgl.order()) {
                    let lifted = upper.contains(&b)
                        && LieElement::from_basis(hi.cdgl.gens(), hi.cdgl.order(), &b).truncated(lo.cdgl.order())
                            == LieElement::from_basis(lo.cdgl.gens(), lo.cdgl.order(), &b);
                    if !lifted {
                        return Err(Error::Invariant(format!(
                            "projection onto stage {} misses {} in degree {p}",
                            lo.n,
                            b.display(lo.cdgl.gens())
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// The group `H₀` of a stage under the BCH product.
#[derive(Clone, Debug, Serialize)]
pub struct NilpotentGroupData {
    pub dim: usize,
    pub basis: Vec<String>,
    /// Lie nilpotency class of `H₀` (0 for the trivial group).
    pub class: usize,
    pub abelianization_dim: usize,
    /// `table[i][j]` = coordinates of `e_i * e_j`.
    pub table: Vec<Vec<Vec<String>>>,
    #[serde(skip)]
    pub lie: FiniteGradedLie,
}

/// `H₀` of a connected stage with its BCH group structure.
pub fn fundamental_group_data(stage: &Cdgl) -> Result<NilpotentGroupData> {
    let h = dgl_homology(stage, 0..=0)?;
    group_from_homology(&h)
}

fn group_from_homology(h: &DglHomology) -> Result<NilpotentGroupData> {
    let lie = h.lie.degree_zero_part();
    let verdict = is_degreewise_nilpotent(&lie, 0..=0);
    let class = verdict
        .class
        .ok_or_else(|| Error::Invariant("H_0 of a stage is not nilpotent".into()))?;
    let dim = lie.dim();
    let mut table = Vec::with_capacity(dim);
    for i in 0..dim {
        let row = (0..dim)
            .map(|j| {
                finite_bch(&lie, class, &lie.unit(i), &lie.unit(j)).iter().map(|c| c.to_string()).collect()
            })
            .collect();
        table.push(row);
    }
    Ok(NilpotentGroupData {
        dim,
        basis: (0..dim).map(|i| lie.label(i).to_string()).collect(),
        class,
        abelianization_dim: dim - lie.derived_dim(),
        table,
        lie,
    })
}

impl NilpotentGroupData {
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        finite_bch(&self.lie, self.class, x, y)
    }

    /// Identity, inverses and associativity on basis elements and their
    /// pairwise sums, exactly.
    pub fn check_group_axioms(&self) -> Result<()> {
        let n = self.dim;
        let zero = vec![Scalar::zero(); n];
        let mut samples: Vec<Vec<Scalar>> = (0..n).map(|i| self.lie.unit(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                let mut v = self.lie.unit(i);
                v[j] = Scalar::new(-2, 3);
                samples.push(v);
            }
        }
        for x in &samples {
            let inv: Vec<Scalar> = x.iter().map(|c| -c).collect();
            if self.product(x, &zero) != *x || self.product(&zero, x) != *x {
                return Err(Error::Invariant("BCH identity fails".into()));
            }
            if self.product(x, &inv) != zero {
                return Err(Error::Invariant("BCH inverse fails".into()));
            }
            for y in &samples {
                let xy = self.product(x, y);
                for z in &samples {
                    if self.product(&xy, z) != self.product(x, &self.product(y, z)) {
                        return Err(Error::Invariant("BCH product is not associative".into()));
                    }
                }
            }
        }
        Ok(())
    }
}

/// How fast `H₀` acts unipotently on `H_p`: the first `k` with every
/// composite of `k` maps `e^{ad α} − id` vanishing on homology.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionRecord {
    pub degree: i32,
    pub vanishes_after: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageRecord {
    pub stage: u32,
    /// `dim πᵢ` for `i = 1..=d_max`.
    pub pi_dims: Vec<usize>,
    pub group_dim: usize,
    pub group_class: usize,
    pub abelianization_dim: usize,
    pub nilpotent: bool,
    /// Route through `H₀` and its action.
    pub nilpotent_by_action: bool,
    /// Route through the degreewise lower central series.
    pub nilpotent_degreewise: bool,
    pub action: Vec<ActionRecord>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Stabilization {
    pub degree: usize,
    /// First stage from which the dimension stays constant; `None` when it
    /// is still changing at the last stage.
    pub stable_from: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerReport {
    pub name: String,
    pub base_vertex: String,
    pub stages: Vec<u32>,
    pub degrees: Vec<usize>,
    /// `dims[i - 1][k]` = `dim πᵢ` at `stages[k]`.
    pub dims: Vec<Vec<usize>>,
    pub records: Vec<StageRecord>,
    pub stabilization: Vec<Stabilization>,
}

/// `πᵢ` of each stage as `H_{i−1}`, for `i = 1..=d_max`.
pub fn tower_homotopy(x: &SimplicialSetSpec, n_max: u32, d_max: usize) -> Result<TowerReport> {
    if d_max == 0 {
        return Err(Error::InvalidInput("need at least one homotopy degree".into()));
    }
    let tower = completion_tower(x, n_max)?;
    tower.check_projections(d_max as i32 - 1)?;
    let mut records = Vec::new();
    for stage in &tower.stages {
        records.push(stage_record(stage, d_max)?);
    }
    let dims: Vec<Vec<usize>> =
        (0..d_max).map(|i| records.iter().map(|r| r.pi_dims[i]).collect()).collect();
    let stages: Vec<u32> = tower.stages.iter().map(|s| s.n).collect();
    let mut report = TowerReport {
        name: tower.name,
        base_vertex: tower.base_vertex,
        stages,
        degrees: (1..=d_max).collect(),
        dims,
        records,
        stabilization: Vec::new(),
    };
    report.stabilization = stabilization_report(&report);
    Ok(report)
}

fn stage_record(stage: &Stage, d_max: usize) -> Result<StageRecord> {
    let top = d_max as i32 - 1;
    let h = dgl_homology(&stage.cdgl, 0..=top)?;
    let evidence = nilpotency_routes(&h.lie, 0..=top)?;
    let group = group_from_homology(&h)?;
    let mut action = Vec::new();
    for p in 0..=top {
        action.push(ActionRecord { degree: p, vanishes_after: action_length(&h, p, stage.n as usize + 1)? });
    }
    Ok(StageRecord {
        stage: stage.n,
        pi_dims: (0..=top).map(|p| h.dim(p)).collect(),
        group_dim: group.dim,
        group_class: group.class,
        abelianization_dim: group.abelianization_dim,
        nilpotent: evidence.nilpotent,
        nilpotent_by_action: evidence.h0_class.is_some() && evidence.h0_action.values().all(Option::is_some),
        nilpotent_degreewise: evidence.degreewise.nilpotent,
        action,
    })
}

/// Iterates `W ↦ span{(e^{ad α} − id) w}` over representatives `α` of `H₀`.
fn action_length(h: &DglHomology, p: i32, cap: usize) -> Result<Option<usize>> {
    let (Some(h0), Some(hp)) = (h.group(0), h.group(p)) else { return Ok(Some(0)) };
    let to_element = |class: &SparseVec| {
        let mut e = hp.representatives[0].scale(&Scalar::zero());
        for (i, c) in class {
            e.add_scaled(&hp.representatives[*i], c);
        }
        e
    };
    let mut current: Vec<SparseVec> =
        (0..hp.dim()).map(|i| vec![(i, Scalar::one())]).collect();
    for k in 0..=cap {
        if current.is_empty() {
            return Ok(Some(k));
        }
        let mut span = SpanBasis::new();
        let mut next = Vec::new();
        for alpha in &h0.representatives {
            for w in &current {
                let we = to_element(w);
                let mut moved = exp_ad(alpha, &we)?;
                moved.add_scaled(&we, &-Scalar::one());
                let class = hp
                    .class_of(&moved)
                    .ok_or_else(|| Error::Invariant("e^{ad α} does not preserve cycles".into()))?;
                let v: SparseVec = class.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
                if !v.is_empty() && span.insert(&v) {
                    next.push(v);
                }
            }
        }
        current = next;
    }
    Ok(None)
}

/// For each degree, the first stage after which the dimension stops moving.
pub fn stabilization_report(report: &TowerReport) -> Vec<Stabilization> {
    report
        .degrees
        .iter()
        .enumerate()
        .map(|(i, &degree)| {
            let row = &report.dims[i];
            let last = row.len().saturating_sub(1);
            let mut k = last;
            while k > 0 && row[k - 1] == row[last] {
                k -= 1;
            }
            // a value seen only at the final stage is not evidence of stability
            let stable_from = (k < last || row.len() == 1).then(|| report.stages[k]);
            Stabilization { degree, stable_from }
        })
        .collect()
}
