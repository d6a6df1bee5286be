//! The invariant suite run by `lietower verify`: every structural check the
//! library knows how to make, on the bundled fixtures.

use serde::Serialize;

use crate::cdgl::{bch, differential_check, nilpotency_routes, simple_rotation_algebra, Cdgl};
use crate::error::{Error, Result};
use crate::freelie::{
    basis_in_degree, graded_witt_dimension, lyndon_basis, necklace_dimension, Generator, GeneratorSet, LieElement,
};
use crate::lscosimplicial::{check_cosimplicial_identities, check_simplex_model, simplex_model};
use crate::model::{global_model, indecomposables_homology, based_component_model, minimal_model_of_stage};
use crate::simpset::{load_simplicial_set, reduced_homology, SimplicialSetSpec};
use crate::tower::{completion_tower, fundamental_group_data, tower_homotopy};

/// `(file stem, document)` for each bundled fixture.
pub const FIXTURES: &[(&str, &str)] = &[
    ("point", include_str!("../../../fixtures/point.json")),
    ("s1", include_str!("../../../fixtures/s1.json")),
    ("wedge", include_str!("../../../fixtures/wedge.json")),
    ("s2", include_str!("../../../fixtures/s2.json")),
    ("s3", include_str!("../../../fixtures/s3.json")),
    ("torus", include_str!("../../../fixtures/torus.json")),
    ("broken", include_str!("../../../fixtures/broken.json")),
];

pub fn fixture(stem: &str) -> Result<SimplicialSetSpec> {
    let (_, doc) = FIXTURES
        .iter()
        .find(|(s, _)| *s == stem)
        .ok_or_else(|| Error::InvalidInput(format!("no bundled fixture {stem}")))?;
    load_simplicial_set(doc)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckOutcome>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

type Check = fn() -> Result<String>;

const CHECKS: &[(&str, Check)] = &[
    ("free-lie-dimensions", free_lie_dimensions),
    ("bch-group-law", bch_group_law),
    ("simplex-models", simplex_models),
    ("cosimplicial-identities", cosimplicial_identities),
    ("global-models", global_models),
    ("indecomposables-homology", indecomposables),
    ("broken-input-rejected", broken_rejected),
    ("tower-consistency", tower_consistency),
    ("tower-known-values", tower_known_values),
    ("stage-groups", stage_groups),
    ("simple-algebra-not-nilpotent", simple_algebra),
    ("stage-minimal-model", stage_minimal_model),
    ("report-determinism", report_determinism),
];

/// Runs every check. A check that errors counts as failed.
pub fn run_suite() -> VerifyReport {
    let checks = CHECKS
        .iter()
        .map(|(name, f)| {
            let (passed, detail) = match f() {
                Ok(d) => (true, d),
                Err(e) => (false, e.to_string()),
            };
            CheckOutcome { name: name.to_string(), passed, detail }
        })
        .collect();
    VerifyReport { checks }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(msg()))
    }
}

fn free_lie_dimensions() -> Result<String> {
    let mut cases = 0;
    for k in 1..=3usize {
        let names = ["x", "y", "z"];
        let gens = GeneratorSet::new((0..k).map(|i| Generator::new(names[i], 0)).collect())?;
        for len in 1..=6 {
            let lyndon = lyndon_basis(&gens, len, None).len();
            let witt = necklace_dimension(k as u64, len as u32) as usize;
            let rank = graded_witt_dimension(&gens, len);
            ensure(lyndon == witt && witt == rank, || {
                format!("{k} generators, length {len}: lyndon {lyndon}, witt {witt}, rank {rank}")
            })?;
            cases += 1;
        }
    }
    let mixed = GeneratorSet::from_degrees(&[("x", 0), ("u", 1)])?;
    for len in 1..=5 {
        let rank = graded_witt_dimension(&mixed, len);
        let basis = (0..=len as i32)
            .map(|p| basis_in_degree(&mixed, p, len as u32).iter().filter(|b| b.length() == len).count())
            .sum::<usize>();
        ensure(rank == basis, || format!("mixed degrees, length {len}: rank {rank}, basis {basis}"))?;
        cases += 1;
    }
    Ok(format!("{cases} length/generator cases"))
}

fn bch_group_law() -> Result<String> {
    let gens = GeneratorSet::from_degrees(&[("x", 0), ("y", 0), ("z", 0)])?;
    let order = 4;
    let e = |n: &str| LieElement::named(&gens, order, n);
    let (x, y, z) = (e("x")?, e("y")?, e("z")?);
    let zero = LieElement::zero(&gens, order);
    ensure(bch(&x, &zero)? == x && bch(&zero, &y)? == y, || "identity".into())?;
    ensure(bch(&x, &-&x)?.is_zero(), || "inverse".into())?;
    let left = bch(&bch(&x, &y)?, &z)?;
    let right = bch(&x, &bch(&y, &z)?)?;
    ensure(left == right, || format!("associativity: {left} vs {right}"))?;
    Ok(format!("3 generators, order {order}"))
}

fn simplex_models() -> Result<String> {
    let mut cases = 0;
    for n in 0..=3 {
        for order in 1..=5 {
            check_simplex_model(&simplex_model(n, order)?)?;
            cases += 1;
        }
    }
    Ok(format!("{cases} (dimension, order) pairs"))
}

fn cosimplicial_identities() -> Result<String> {
    let failures = check_cosimplicial_identities(3, 4)?;
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("dimensions ≤ 3, order 4".into())
}

fn reduced_fixtures() -> Result<Vec<SimplicialSetSpec>> {
    FIXTURES
        .iter()
        .filter(|(s, _)| *s != "broken")
        .map(|(s, _)| fixture(s))
        .collect()
}

fn global_models() -> Result<String> {
    let xs = reduced_fixtures()?;
    for x in &xs {
        x.check_identities()?;
        for order in 1..=4 {
            let g = global_model(x, order)?;
            g.check_linear_part(x)?;
            let c = based_component_model(x, order)?;
            ensure(differential_check(&c).is_empty(), || format!("{} component d² ≠ 0", x.name()))?;
        }
    }
    Ok(format!("{} fixtures, orders 1..4", xs.len()))
}

fn indecomposables() -> Result<String> {
    let xs = reduced_fixtures()?;
    for x in &xs {
        let reduced = reduced_homology(x);
        let c = based_component_model(x, 3)?;
        let mut got = vec![0; reduced.len()];
        for (p, d) in indecomposables_homology(&c)? {
            let i = (p + 1) as usize;
            if i < got.len() {
                got[i] = d;
            } else {
                ensure(d == 0, || format!("{}: homology beyond the top simplex", x.name()))?;
            }
        }
        ensure(got == reduced, || format!("{}: {got:?} vs reduced homology {reduced:?}", x.name()))?;
    }
    Ok(format!("{} fixtures", xs.len()))
}

fn broken_rejected() -> Result<String> {
    match fixture("broken") {
        Err(e @ Error::Simplex { .. }) => Ok(e.to_string()),
        Err(e) => Err(Error::Invariant(format!("wrong error kind: {e}"))),
        Ok(_) => Err(Error::Invariant("broken fixture loaded".into())),
    }
}

fn tower_consistency() -> Result<String> {
    let xs = reduced_fixtures()?;
    for x in &xs {
        let r = tower_homotopy(x, 5, 4)?;
        for s in &r.records {
            ensure(s.nilpotent && s.nilpotent_by_action && s.nilpotent_degreewise, || {
                format!("{} stage {} not nilpotent", x.name(), s.stage)
            })?;
            ensure(s.action.iter().all(|a| a.vanishes_after.is_some()), || {
                format!("{} stage {}: π₁ action not unipotent", x.name(), s.stage)
            })?;
        }
    }
    Ok(format!("{} fixtures, stages 2..5", xs.len()))
}

fn tower_known_values() -> Result<String> {
    let expect: &[(&str, u32, usize, &[&[usize]])] = &[
        ("s1", 5, 4, &[&[1, 1, 1, 1], &[0; 4], &[0; 4], &[0; 4]]),
        ("s2", 5, 4, &[&[0; 4], &[1, 1, 1, 1], &[0, 1, 1, 1], &[0; 4]]),
        ("s3", 4, 4, &[&[0; 3], &[0; 3], &[1, 1, 1], &[0; 3]]),
        ("wedge", 5, 1, &[&[2, 3, 5, 8]]),
    ];
    for (stem, n_max, d_max, dims) in expect {
        let r = tower_homotopy(&fixture(stem)?, *n_max, *d_max)?;
        ensure(r.dims.iter().map(Vec::as_slice).eq(dims.iter().copied()), || {
            format!("{stem}: {:?}", r.dims)
        })?;
    }
    let wedge = tower_homotopy(&fixture("wedge")?, 5, 1)?;
    ensure(wedge.stabilization[0].stable_from.is_none(), || "wedge π₁ reported stable".into())?;
    Ok("s1, s2, s3, wedge".into())
}

fn stage_groups() -> Result<String> {
    let mut count = 0;
    for x in reduced_fixtures()? {
        for stage in completion_tower(&x, 4)?.stages {
            fundamental_group_data(&stage.cdgl)?.check_group_axioms()?;
            count += 1;
        }
    }
    let wedge = completion_tower(&fixture("wedge")?, 3)?;
    let g = fundamental_group_data(&wedge.stage(3).unwrap().cdgl)?;
    ensure(g.dim == 3 && g.class == 2, || format!("wedge stage 3: dim {}, class {}", g.dim, g.class))?;
    Ok(format!("{count} stages"))
}

fn simple_algebra() -> Result<String> {
    let ev = nilpotency_routes(&simple_rotation_algebra(), 0..=0)?;
    ensure(!ev.nilpotent && !ev.degreewise.nilpotent, || "rotation algebra reported nilpotent".into())?;
    Ok("both routes say no".into())
}

fn stage_minimal_model() -> Result<String> {
    let l = Cdgl::free(vec![Generator::new("x", 0), Generator::new("y", 0)], 3)?;
    let m = minimal_model_of_stage(&l, 2, 1)?;
    ensure(m.z.len() == 1, || format!("{} generators adjoined", m.z.len()))?;
    let z = m.model.gens().index_of(&m.z[0].name).unwrap();
    let dz = m.model.d_gen(z).to_string();
    ensure(dz == "[x,y]", || format!("d{} = {dz}", m.z[0].name))?;
    ensure(m.checks.all_pass(), || format!("{:?}", m.checks))?;
    Ok(format!("d{} = {dz}", m.z[0].name))
}

fn report_determinism() -> Result<String> {
    let x = fixture("wedge")?;
    let a = serde_json::to_string(&tower_homotopy(&x, 4, 2)?).map_err(|e| Error::Invariant(e.to_string()))?;
    let b = serde_json::to_string(&tower_homotopy(&x, 4, 2)?).map_err(|e| Error::Invariant(e.to_string()))?;
    ensure(a == b, || "two runs differ".into())?;
    Ok(format!("{} bytes", a.len()))
}
