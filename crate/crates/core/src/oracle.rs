//! Randomized cross-checks between independent computations. Every case is
//! generated from its own seed so a failure can be replayed alone.

use crate::equivariant::{check_condition1, check_condition1_all_pairs, coordinate_quotient_check};
use crate::error::Result;
use crate::lattice::TorusSubgroup;
use crate::moment_angle::{hochster, skeleton_wedge};
use crate::quotient::{cubical_quotient_cohomology, cw_census, koszul_cohomology};
use crate::random::{random_complex, random_condition1_subgroup, random_free_subgroup, rng};
use crate::simplicial::{full_set, SimplicialComplex};
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Clone, Debug)]
pub struct OracleBounds {
    pub max_m: usize,
    pub cases: usize,
    pub max_degree: i64,
}

impl Default for OracleBounds {
    fn default() -> Self {
        OracleBounds { max_m: 5, cases: 40, max_degree: 12 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleFailure {
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatteryResult {
    pub name: String,
    pub cases: usize,
    pub failures: Vec<OracleFailure>,
}

impl BatteryResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleSummary {
    pub seed: u64,
    pub batteries: Vec<BatteryResult>,
}

impl OracleSummary {
    pub fn passed(&self) -> bool {
        self.batteries.iter().all(BatteryResult::passed)
    }
}

/// Complex for one case. Case 0 is always the complex `{∅}` on no vertices.
pub fn case_complex(seed: u64, max_m: usize) -> SimplicialComplex {
    if seed == 0 {
        return SimplicialComplex::empty_face(0);
    }
    let mut r = rng(seed);
    let m = r.gen_range(1..=max_m.max(1));
    random_complex(&mut r, m)
}

fn case_seed(seed: u64, battery: u64, case: usize) -> u64 {
    if case == 0 {
        return 0;
    }
    seed.wrapping_mul(1_000_003).wrapping_add(battery << 32).wrapping_add(case as u64)
}

type Check = fn(u64, &OracleBounds) -> Result<Option<String>>;

fn run(name: &str, battery: u64, seed: u64, bounds: &OracleBounds, check: Check) -> BatteryResult {
    let failures = (0..bounds.cases)
        .into_par_iter()
        .filter_map(|case| {
            let s = case_seed(seed, battery, case);
            let detail = match check(s, bounds) {
                Ok(None) => return None,
                Ok(Some(d)) => d,
                Err(e) => e.to_string(),
            };
            Some(OracleFailure { seed: s, detail })
        })
        .collect();
    BatteryResult { name: name.into(), cases: bounds.cases, failures }
}

fn hochster_vs_koszul(s: u64, b: &OracleBounds) -> Result<Option<String>> {
    let k = case_complex(s, b.max_m);
    let want = hochster(&k, b.max_degree, 63)?;
    let got = koszul_cohomology(&k, &TorusSubgroup::trivial(k.m(), 2), b.max_degree)?;
    Ok((want != got).then(|| format!("{k:?}: hochster {want}, koszul {got}")))
}

fn cubical_vs_census(s: u64, b: &OracleBounds) -> Result<Option<String>> {
    let k = case_complex(s, b.max_m);
    let h = random_free_subgroup(&mut rng(s ^ 0x5eed), &k, 1);
    let cubical = cubical_quotient_cohomology(&k, &h)?.euler_characteristic() as i128;
    let census = cw_census(&k, &h)?.euler_characteristic;
    Ok((cubical != census).then(|| format!("{k:?}: cubical chi {cubical}, census chi {census}")))
}

fn coordinate_vs_contraction(s: u64, b: &OracleBounds) -> Result<Option<String>> {
    let k = case_complex(s, b.max_m);
    let mut r = rng(s ^ 0xc0de);
    let i0 = r.gen::<u64>() & full_set(k.m());
    let d = if r.gen_bool(0.5) { 1 } else { 2 };
    let ok = coordinate_quotient_check(&k, d, i0, b.max_degree.min(10))?;
    Ok((!ok).then(|| format!("{k:?}: I0 {i0:#b}, d {d}")))
}

fn cover_vs_all_pairs(s: u64, b: &OracleBounds) -> Result<Option<String>> {
    let k = case_complex(s, b.max_m);
    let mut r = rng(s ^ 0xface);
    let d = if r.gen_bool(0.5) { 1 } else { 2 };
    let h = if r.gen_bool(0.5) {
        random_condition1_subgroup(&mut r, &k, d)
    } else {
        TorusSubgroup::from_annihilator(crate::random::random_lattice(&mut r, k.m()))
    };
    let cover = check_condition1(&k, &h)?.holds;
    let all = check_condition1_all_pairs(&k, &h)?.holds;
    Ok((cover != all).then(|| format!("{k:?}: cover pairs {cover}, all pairs {all}")))
}

fn skeleton_family(s: u64, _: &OracleBounds) -> Result<Option<String>> {
    let m = (s % 5) as usize + 2;
    let k = (s / 5 % (m as u64 - 1)) as usize;
    let sk = SimplicialComplex::skeleton(m, k)?;
    let g = hochster(&sk, 2 * m as i64, 63)?;
    if !g.is_torsion_free() {
        return Ok(Some(format!("skeleton({m},{k}) has torsion: {g}")));
    }
    let wedge = skeleton_wedge(m, k)?;
    let ranks: std::collections::BTreeMap<i64, u128> =
        g.ranks().into_iter().filter(|&(_, r)| r > 0).map(|(n, r)| (n, r as u128)).collect();
    Ok((ranks != wedge).then(|| format!("skeleton({m},{k}): {ranks:?} vs wedge {wedge:?}")))
}

/// Runs every battery. Results are ordered by battery and by case.
pub fn oracle_suite(seed: u64, bounds: &OracleBounds) -> OracleSummary {
    let batteries = vec![
        run("hochster_equals_koszul_at_trivial_h", 1, seed, bounds, hochster_vs_koszul),
        run("cubical_chi_equals_census_chi", 2, seed, bounds, cubical_vs_census),
        run("coordinate_quotient_equals_contraction", 3, seed, bounds, coordinate_vs_contraction),
        run("condition1_cover_pairs_equal_all_pairs", 4, seed, bounds, cover_vs_all_pairs),
        run("skeleton_family_torsion_free", 5, seed, bounds, skeleton_family),
    ];
    OracleSummary { seed, batteries }
}
