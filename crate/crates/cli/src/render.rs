use std::fmt::Write;

use serde::Serialize;

use lietower::cdgl::{dgl_homology, CdglDocument};
use lietower::lscosimplicial::simplex_model as build_simplex_model;
use lietower::model::{
    based_component_model, global_model, indecomposables_homology, minimal_model_of_stage, MinimalModelChecks,
    ZGenerator,
};
use lietower::simpset::{euler_characteristic, reduced_homology, simplicial_homology, SimplicialSetSpec};
use lietower::tower::{completion_tower, fundamental_group_data, NilpotentGroupData, TowerReport};
use lietower::verify::VerifyReport;
use lietower::Result;

#[derive(Serialize)]
pub struct ModelReport {
    pub name: String,
    pub truncation: u32,
    pub global: CdglDocument,
    pub component: Option<CdglDocument>,
    #[serde(skip)]
    dumps: (String, Option<String>),
}

#[derive(Serialize)]
pub struct HomologyReport {
    pub name: String,
    pub simplicial: Vec<usize>,
    pub reduced: Vec<usize>,
    pub euler_characteristic: i64,
    /// `(degree, dim)` of the indecomposables of the based component.
    pub indecomposables: Option<Vec<(i32, usize)>>,
    /// `(degree, dim)` of the homology of the based component.
    pub lie_homology: Option<Vec<(i32, usize)>>,
}

#[derive(Serialize)]
pub struct GroupReport {
    pub name: String,
    pub stage: u32,
    pub group: NilpotentGroupData,
}

#[derive(Serialize)]
pub struct MinimalReport {
    pub name: String,
    pub stage: u32,
    pub degree_cutoff: i32,
    pub upper_cutoff: u32,
    pub adjoined: Vec<ZGenerator>,
    pub model: CdglDocument,
    /// `(generator, image in the stage)`.
    pub phi: Vec<(String, String)>,
    pub checks: MinimalModelChecks,
}

#[derive(Serialize)]
pub struct SimplexModelReport {
    pub dimension: usize,
    pub model: CdglDocument,
    #[serde(skip)]
    dump: String,
}

pub enum Report {
    Model(ModelReport),
    Homology(HomologyReport),
    Tower(TowerReport),
    Pi(GroupReport),
    Minimal(MinimalReport),
    Verify(VerifyReport),
    SimplexModel(SimplexModelReport),
}

pub fn model(x: &SimplicialSetSpec, order: u32) -> Result<Report> {
    let g = global_model(x, order)?;
    g.check_linear_part(x)?;
    let component = x.is_reduced().then(|| based_component_model(x, order)).transpose()?;
    Ok(Report::Model(ModelReport {
        name: x.name().to_string(),
        truncation: order,
        global: g.cdgl.document(),
        component: component.as_ref().map(|c| c.document()),
        dumps: (g.cdgl.dump(), component.map(|c| c.dump())),
    }))
}

pub fn homology(x: &SimplicialSetSpec, order: u32, d_max: usize) -> Result<Report> {
    let (indecomposables, lie_homology) = if x.is_reduced() {
        let c = based_component_model(x, order)?;
        let h = dgl_homology(&c, 0..=d_max as i32 - 1)?;
        (Some(indecomposables_homology(&c)?), Some(h.dims()))
    } else {
        (None, None)
    };
    Ok(Report::Homology(HomologyReport {
        name: x.name().to_string(),
        simplicial: simplicial_homology(x),
        reduced: reduced_homology(x),
        euler_characteristic: euler_characteristic(x),
        indecomposables,
        lie_homology,
    }))
}

pub fn pi(x: &SimplicialSetSpec, n: u32) -> Result<Report> {
    let tower = completion_tower(x, n)?;
    let group = fundamental_group_data(&tower.stage(n).expect("last stage").cdgl)?;
    group.check_group_axioms()?;
    Ok(Report::Pi(GroupReport { name: x.name().to_string(), stage: n, group }))
}

pub fn minimal(x: &SimplicialSetSpec, n: u32, cutoff: i32) -> Result<Report> {
    let l = based_component_model(x, n)?;
    let m = minimal_model_of_stage(&l, n, cutoff)?;
    let gens = m.model.gens();
    Ok(Report::Minimal(MinimalReport {
        name: x.name().to_string(),
        stage: n,
        degree_cutoff: m.degree_cutoff,
        upper_cutoff: m.upper_cutoff,
        adjoined: m.z.clone(),
        model: m.model.document(),
        phi: m.phi.iter().enumerate().map(|(g, e)| (gens.name(g).to_string(), e.to_string())).collect(),
        checks: m.checks,
    }))
}

pub fn simplex_model(n: usize, order: u32) -> Result<Report> {
    let m = build_simplex_model(n, order)?;
    Ok(Report::SimplexModel(SimplexModelReport {
        dimension: n,
        model: m.cdgl().document(),
        dump: m.cdgl().dump(),
    }))
}

fn json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports serialize");
    s.push('\n');
    s
}

fn dims(v: &[(i32, usize)]) -> String {
    v.iter().map(|(p, d)| format!("{p}:{d}")).collect::<Vec<_>>().join(" ")
}

fn terms(d: &[(String, String)]) -> String {
    if d.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (b, c)) in d.iter().enumerate() {
        let (neg, abs) = match c.strip_prefix('-') {
            Some(a) => (true, a),
            None => (false, c.as_str()),
        };
        match (i, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        if abs != "1" {
            out.push_str(abs);
        }
        out.push_str(b);
    }
    out
}

impl Report {
    pub fn machine(&self) -> String {
        match self {
            Report::Model(r) => json(r),
            Report::Homology(r) => json(r),
            Report::Tower(r) => json(r),
            Report::Pi(r) => json(r),
            Report::Minimal(r) => json(r),
            Report::Verify(r) => json(r),
            Report::SimplexModel(r) => json(r),
        }
    }

    pub fn human(&self) -> String {
        let mut s = String::new();
        match self {
            Report::Model(r) => {
                let _ = writeln!(s, "global model of {} (N = {})", r.name, r.truncation);
                s.push_str(&r.dumps.0);
                if let Some(c) = &r.dumps.1 {
                    let _ = writeln!(s, "\nbased component");
                    s.push_str(c);
                }
            }
            Report::Homology(r) => {
                let _ = writeln!(s, "{}", r.name);
                let _ = writeln!(s, "  H_*(X)          {:?}", r.simplicial);
                let _ = writeln!(s, "  reduced         {:?}", r.reduced);
                let _ = writeln!(s, "  euler char      {}", r.euler_characteristic);
                if let Some(v) = &r.indecomposables {
                    let _ = writeln!(s, "  H(V, d_1)       {}", dims(v));
                }
                if let Some(v) = &r.lie_homology {
                    let _ = writeln!(s, "  H(L)            {}", dims(v));
                }
            }
            Report::Tower(r) => tower_human(&mut s, r),
            Report::Pi(r) => {
                let g = &r.group;
                let _ = writeln!(s, "H_0 of stage {} of {}", r.stage, r.name);
                let _ = writeln!(s, "  dim {}, class {}, abelianization {}", g.dim, g.class, g.abelianization_dim);
                let _ = writeln!(s, "  basis {}", g.basis.join(", "));
                for (i, row) in g.table.iter().enumerate() {
                    for (j, prod) in row.iter().enumerate() {
                        let _ = writeln!(s, "  {} * {} = ({})", g.basis[i], g.basis[j], prod.join(", "));
                    }
                }
            }
            Report::Minimal(r) => {
                let _ = writeln!(
                    s,
                    "minimal model of stage {} of {} (degrees ≤ {}, upper < {})",
                    r.stage, r.name, r.degree_cutoff, r.upper_cutoff
                );
                for g in &r.model.generators {
                    let _ = writeln!(s, "  {} : {} ; d = {}", g.name, g.degree, terms(&g.differential));
                }
                for (g, image) in &r.phi {
                    let _ = writeln!(s, "  φ({g}) = {image}");
                }
                let _ = writeln!(s, "  checks: {:?}", r.checks);
            }
            Report::Verify(r) => {
                for c in &r.checks {
                    let _ = writeln!(s, "{} {:<30} {}", if c.passed { "ok  " } else { "FAIL" }, c.name, c.detail);
                }
                let _ = writeln!(s, "{}", if r.passed() { "all checks passed" } else { "some checks failed" });
            }
            Report::SimplexModel(r) => {
                let _ = writeln!(s, "model of the {}-simplex", r.dimension);
                s.push_str(&r.dump);
            }
        }
        s
    }
}

fn tower_human(s: &mut String, r: &TowerReport) {
    let _ = writeln!(s, "tower of {} at {}, stages {:?}", r.name, r.base_vertex, r.stages);
    let _ = write!(s, "      ");
    for n in &r.stages {
        let _ = write!(s, "{:>6}", format!("n={n}"));
    }
    s.push('\n');
    for (i, row) in r.dims.iter().enumerate() {
        let _ = write!(s, "  π{:<3}", r.degrees[i]);
        for d in row {
            let _ = write!(s, "{d:>6}");
        }
        s.push('\n');
    }
    for st in &r.stabilization {
        let verdict = match st.stable_from {
            Some(n) => format!("stable from stage {n}"),
            None => "not stabilized".to_string(),
        };
        let _ = writeln!(s, "  π{}: {verdict}", st.degree);
    }
    for rec in &r.records {
        let _ = writeln!(
            s,
            "  stage {}: π₁ dim {}, class {}, abelianization {}, nilpotent {}",
            rec.stage, rec.group_dim, rec.group_class, rec.abelianization_dim, rec.nilpotent
        );
    }
}
