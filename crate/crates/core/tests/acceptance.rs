//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criterion 12 prints one extra line per property battery. Battery 12d
//! (truncation order) is known to fail; the process exits nonzero only on
//! failures outside `KNOWN_FAILURES`.

use maq_core::constructions::{bosio_meersseman_nerve, torsion_pipeline, truncate_along, PipelineOptions};
use maq_core::equivariant::{check_condition1, check_free, equivariant_limit};
use maq_core::homology::{smith_invariants, GradedAbGroup, SparseMatrix};
use maq_core::int::{int, Int};
use maq_core::lattice::{annihilator_of, parametrize, snf, FinAbGroup, Lattice, TorusSubgroup};
use maq_core::moment_angle::{hochster, skeleton_quotient_hrk, skeleton_wedge, sr_dimension};
use maq_core::quotient::{cubical_quotient_cohomology, cw_census, koszul_cohomology, KoszulComplex, KoszulOptions};
use maq_core::random::{
    random_complex, random_condition1_subgroup, random_free_subgroup, random_lattice, random_matrix, random_unimodular,
    rng, TestRng,
};
use maq_core::simplicial::{full_set, set_of, vertices_of, SimplicialComplex, VertexSet};
use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::time::Instant;

type Criterion<'a> = (&'static str, &'static str, Box<dyn Fn() -> Outcome + 'a>);

const KNOWN_FAILURES: &[&str] = &["12d"];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn sphere(n: i64) -> GradedAbGroup {
    let mut g = GradedAbGroup::new();
    g.set(0, FinAbGroup::free(1));
    g.set(n, FinAbGroup::free(1));
    g
}

fn c1_spheres() -> Outcome {
    let two = SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap();
    if hochster(&two, 20, 63).unwrap() != sphere(3) {
        return outcome(false, "two points do not give S^3");
    }
    for m in 1..=6 {
        // the boundary of a point is the complex {∅}
        let k = if m == 1 { SimplicialComplex::empty_face(1) } else { SimplicialComplex::boundary_simplex(m).unwrap() };
        let g = hochster(&k, 4 * m as i64, 63).unwrap();
        if g != sphere(2 * m as i64 - 1) {
            return outcome(false, format!("boundary of the simplex on {m} vertices: {g}"));
        }
    }
    outcome(true, "two points and boundary simplices m = 1..6")
}

fn c2_rp3() -> Outcome {
    let k = SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap();
    let h = TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, 1], vec![0, 2]]));
    let g = koszul_cohomology(&k, &h, 6).unwrap();
    let want = [FinAbGroup::free(1), FinAbGroup::trivial(), FinAbGroup::new(0, vec![int(2)]), FinAbGroup::free(1)];
    let pass = (0..4).all(|n| g.get(n) == want[n as usize]) && g.iter().all(|(n, _)| n <= 3);
    outcome(pass, format!("{g}"))
}

fn c3_hochster_koszul() -> Outcome {
    let bad: Vec<String> = (0..200u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut r = rng(3_000 + i);
            let m = r.gen_range(1..=6);
            let k = random_complex(&mut r, m);
            let top = m as i64 + k.dim().unwrap_or(0) + 1;
            let a = hochster(&k, top, 63).unwrap();
            let b = koszul_cohomology(&k, &TorusSubgroup::trivial(m, 2), top).unwrap();
            (a != b).then(|| format!("seed {}: {k:?}", 3_000 + i))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "200 complexes, m <= 6".into() } else { bad.join("; ") })
}

/// Every simplicial complex on `[m]`, ghost vertices allowed, void included.
fn all_complexes(m: usize) -> Vec<SimplicialComplex> {
    let mut sets: Vec<VertexSet> = (0..1u64 << m).collect();
    sets.sort_by_key(|s| (s.count_ones(), *s));
    let mut out = Vec::new();
    fn grow(sets: &[VertexSet], i: usize, chosen: &mut Vec<VertexSet>, out: &mut Vec<Vec<VertexSet>>) {
        if i == sets.len() {
            out.push(chosen.clone());
            return;
        }
        let s = sets[i];
        grow(sets, i + 1, chosen, out);
        let boundary_present = (0..64).filter(|b| s >> b & 1 == 1).all(|b| chosen.contains(&(s & !(1 << b))));
        if boundary_present && (s == 0 || chosen.contains(&0)) {
            chosen.push(s);
            grow(sets, i + 1, chosen, out);
            chosen.pop();
        }
    }
    grow(&sets, 0, &mut Vec::new(), &mut out);
    out.into_iter().map(|faces| SimplicialComplex::new(m, faces).unwrap()).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// One complex per isomorphism class on `[m]`.
fn complexes_up_to_iso(m: usize) -> Vec<SimplicialComplex> {
    let perms = permutations(m);
    let mut classes: BTreeMap<Vec<VertexSet>, SimplicialComplex> = BTreeMap::new();
    for k in all_complexes(m) {
        let key = perms
            .iter()
            .map(|p| {
                let mut f: Vec<VertexSet> = k
                    .facets()
                    .iter()
                    .map(|&s| (0..m).filter(|&v| s >> v & 1 == 1).fold(0, |a, v| a | 1 << p[v]))
                    .collect();
                f.sort_unstable();
                f
            })
            .min()
            .unwrap();
        classes.entry(key).or_insert(k);
    }
    classes.into_values().collect()
}

fn limit_matches_sr(k: &SimplicialComplex, h: &TorusSubgroup, target: &SimplicialComplex, d: u8) -> bool {
    let lim = equivariant_limit(k, h, 10).unwrap();
    (0..=10).all(|n| {
        let g = lim.get(n);
        let dim = if d == 2 {
            if !g.is_free() {
                return false;
            }
            g.free_rank()
        } else {
            g.torsion().len()
        };
        dim as u128 == sr_dimension(target, d, n)
    })
}

fn c4_coordinate(classes: &[(usize, Vec<SimplicialComplex>)]) -> Outcome {
    let cases: Vec<(&SimplicialComplex, VertexSet, u8)> = classes
        .iter()
        .flat_map(|(m, ks)| ks.iter().flat_map(move |k| (0..1u64 << m).flat_map(move |i0| [(k, i0, 1), (k, i0, 2)])))
        .filter(|(k, _, _)| !k.is_void())
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(k, i0, d)| {
            let h = TorusSubgroup::coordinate(k.m(), d, i0);
            (!limit_matches_sr(k, &h, &k.contraction(i0), d)).then(|| format!("{k:?} I0 {:?} d {d}", vertices_of(i0)))
        })
        .collect();
    let classes: usize = classes.iter().map(|(_, ks)| ks.len()).sum();
    let detail = if bad.is_empty() {
        format!("{} cases over {classes} isomorphism classes, m <= 5, d = 1 and 2, degrees 0..10", cases.len())
    } else {
        bad[..bad.len().min(5)].join("; ")
    };
    outcome(bad.is_empty(), detail)
}

fn c5_stanley_reisner(classes: &[(usize, Vec<SimplicialComplex>)]) -> Outcome {
    let cases: Vec<(&SimplicialComplex, u8)> = classes
        .iter()
        .flat_map(|(_, ks)| ks.iter().flat_map(|k| [(k, 1), (k, 2)]))
        .filter(|(k, _)| !k.is_void())
        .collect();
    let bad: Vec<String> = cases
        .par_iter()
        .filter_map(|&(k, d)| {
            (!limit_matches_sr(k, &TorusSubgroup::trivial(k.m(), d), k, d)).then(|| format!("{k:?} d {d}"))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("{} cases", cases.len()) } else { bad.join("; ") })
}

fn c6_fixtures() -> Outcome {
    let edge = SimplicialComplex::simplex(2);
    let two = SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap();
    let free = TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, 1], vec![0, 2]]));
    let coord = TorusSubgroup::coordinate(2, 2, set_of(&[1]));
    let diagonal = TorusSubgroup::from_annihilator(Lattice::from_i64(2, &[vec![1, -1]]));
    let free_ok = check_free(&two, &free).unwrap().free && check_condition1(&two, &free).unwrap().holds;
    let coord_ok = check_condition1(&edge, &coord).unwrap().holds;
    let diag = check_condition1(&edge, &diagonal).unwrap();
    let witness = diag.witness.as_ref().map(|w| (w.lower.clone(), w.upper.clone()));
    let diag_ok = !diag.holds && witness == Some((vec![1], vec![1, 2]));
    outcome(free_ok && coord_ok && diag_ok, format!("free {free_ok}, coordinate {coord_ok}, diagonal witness {witness:?}"))
}

fn c7_odd_vanishing() -> Outcome {
    let bad: Vec<String> = (0..50u64)
        .into_par_iter()
        .filter_map(|i| {
            let mut r = rng(7_000 + i);
            let m = r.gen_range(1..=5);
            let k = random_complex(&mut r, m);
            let h = random_condition1_subgroup(&mut r, &k, 2);
            let g = equivariant_limit(&k, &h, 12).unwrap();
            let odd = g.iter().any(|(n, x)| n % 2 == 1 && !x.is_trivial());
            odd.then(|| format!("seed {}: {g}", 7_000 + i))
        })
        .collect();
    outcome(bad.is_empty(), if bad.is_empty() { "50 pairs, degrees 0..12".into() } else { bad.join("; ") })
}

fn c8_skeleta() -> Outcome {
    let mut checked = 0;
    for m in 2..=6 {
        for k in 0..=m - 2 {
            let g = hochster(&SimplicialComplex::skeleton(m, k).unwrap(), 2 * m as i64, 63).unwrap();
            let ranks: BTreeMap<i64, u128> =
                g.ranks().into_iter().filter(|&(_, r)| r > 0).map(|(n, r)| (n, r as u128)).collect();
            if !g.is_torsion_free() || ranks != skeleton_wedge(m, k).unwrap() {
                return outcome(false, format!("m {m}, k {k}: {g}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} skeleta, m <= 6"))
}

fn c9_trc() -> Outcome {
    let mut checked = 0;
    for m in 2..=10 {
        for k in 0..=m - 2 {
            let r = skeleton_quotient_hrk(m, k).unwrap();
            if !r.verdict {
                return outcome(false, format!("{r:?}"));
            }
            checked += 1;
        }
    }
    outcome(true, format!("{checked} pairs (m, k), m <= 10"))
}

fn c10_pipeline() -> Outcome {
    let rp2 = maq_core::simplicial::rp2_6();
    let r = torsion_pipeline(&rp2, 2, &PipelineOptions::default()).unwrap();
    let pass = r.m == 7 && r.big_m == 21 && r.q == 9 && r.quotient_dimension == 26 && r.free && r.sphere_sanity.passes();
    outcome(
        pass,
        format!(
            "m {}, M {}, q {}, dim {}, free {}, sphere sanity {}",
            r.m,
            r.big_m,
            r.q,
            r.quotient_dimension,
            r.free,
            r.sphere_sanity.passes()
        ),
    )
}

fn c11_cubical_census() -> Outcome {
    let results: Vec<(bool, Option<String>)> = (0..100u64)
        .into_par_iter()
        .map(|i| {
            let mut r = rng(11_000 + i);
            // redraw a few times to favour pairs with a nontrivial free H
            let (k, h) = (0..8)
                .map(|_| {
                    let m = r.gen_range(1..=5);
                    let k = random_complex(&mut r, m);
                    let h = random_free_subgroup(&mut r, &k, 1);
                    (k, h)
                })
                .find(|(_, h)| h.rank() > 0)
                .unwrap_or_else(|| (SimplicialComplex::skeleton(2, 0).unwrap(), TorusSubgroup::trivial(2, 1)));
            let a = cubical_quotient_cohomology(&k, &h).unwrap().euler_characteristic() as i128;
            let b = cw_census(&k, &h).unwrap().euler_characteristic;
            (h.rank() > 0, (a != b).then(|| format!("seed {}: {a} vs {b}", 11_000 + i)))
        })
        .collect();
    let nontrivial = results.iter().filter(|(n, _)| *n).count();
    let bad: Vec<String> = results.into_iter().filter_map(|(_, b)| b).collect();
    outcome(bad.is_empty(), if bad.is_empty() { format!("100 pairs, {nontrivial} with nontrivial H") } else { bad.join("; ") })
}

fn battery(seed: u64, case: impl Fn(&mut TestRng) -> Option<String> + Sync) -> Outcome {
    let bad: Vec<String> = (0..1000u64)
        .into_par_iter()
        .filter_map(|i| case(&mut rng(seed + i)).map(|d| format!("seed {}: {d}", seed + i)))
        .collect();
    let detail = if bad.is_empty() {
        "1000 cases".to_string()
    } else {
        format!("{} of 1000 failed, first: {}", bad.len(), bad[0])
    };
    outcome(bad.is_empty(), detail)
}

fn c12a_snf() -> Outcome {
    battery(12_000_000, |r| {
        let rows = r.gen_range(1..=6);
        let cols = r.gen_range(1..=6);
        let a = random_matrix(r, rows, cols, 6);
        let u = random_unimodular(r, rows);
        let v = random_unimodular(r, cols);
        let b = u.mul(&a).mul(&v);
        let da = snf(&a).diagonal();
        let db = snf(&b).diagonal();
        let sparse = smith_invariants(&SparseMatrix::from_dense(b.rows(), cols));
        let ones = da.iter().filter(|x| **x == Int::from(1)).count();
        let sparse_ok = sparse.rank == da.len() && sparse.torsion[..] == da[ones..];
        (da != db || !sparse_ok).then(|| format!("{da:?} vs {db:?} vs {sparse:?}"))
    })
}

fn c12b_duality() -> Outcome {
    battery(12_100_000, |r| {
        let m = r.gen_range(1..=6);
        let lat = random_lattice(r, m);
        let back = annihilator_of(&parametrize(&lat));
        (back != lat).then(|| format!("{lat:?} -> {back:?}"))
    })
}

fn c12c_koszul_basis() -> Outcome {
    battery(12_200_000, |r| {
        let m = r.gen_range(1..=4);
        let k = random_complex(r, m);
        let h = random_condition1_subgroup(r, &k, 2);
        let ann = h.annihilator().unwrap();
        let u = random_unimodular(r, ann.rank());
        let forms = u.mul(ann.basis()).into_rows();
        let top = m as i64 + k.dim().unwrap_or(0) + 1;
        let opts = KoszulOptions::default();
        let a = KoszulComplex::new(&k, &h).unwrap().cohomology(top, &opts).unwrap();
        let b = KoszulComplex::with_forms(&k, &h, forms).unwrap().cohomology(top, &opts).unwrap();
        (a != b).then(|| format!("{k:?}: {a} vs {b}"))
    })
}

/// Relabels the truncation vertices so the one created for `order[t]` gets
/// the label it would have under lexicographic order.
fn align_apexes(nerve: &SimplicialComplex, m: usize, order: &[VertexSet], lex: &[VertexSet]) -> SimplicialComplex {
    let mut perm: Vec<usize> = (0..nerve.m()).collect();
    for (t, s) in order.iter().enumerate() {
        perm[m + t] = m + lex.iter().position(|x| x == s).unwrap();
    }
    nerve.relabel(&perm)
}

fn c12d_truncation_order() -> Outcome {
    battery(12_300_000, |r| {
        let m = r.gen_range(3..=6);
        let k = random_complex(r, m);
        let lex = k.minimal_non_faces();
        if lex.is_empty() || lex.contains(&full_set(m)) {
            return None;
        }
        let reference = bosio_meersseman_nerve(&k).unwrap();
        let mut order = lex.clone();
        order.shuffle(r);
        match truncate_along(&k, &order) {
            Err(e) => Some(format!("{k:?} order {order:?}: {e}")),
            Ok(other) => {
                let aligned = align_apexes(&other, m, &order, &lex);
                (aligned != reference && !aligned.is_isomorphic(&reference))
                    .then(|| format!("{k:?} order {order:?}: different nerve"))
            }
        }
    })
}

fn main() {
    let started = Instant::now();
    let classes: Vec<(usize, Vec<SimplicialComplex>)> = (0..=5).map(|m| (m, complexes_up_to_iso(m))).collect();
    let criteria: Vec<Criterion> = vec![
        ("1", "sphere identities", Box::new(c1_spheres)),
        ("2", "RP^3 from the Koszul model", Box::new(c2_rp3)),
        ("3", "Hochster equals Koszul at trivial H", Box::new(c3_hochster_koszul)),
        ("4", "coordinate subgroups give the face ring of the contraction", Box::new(|| c4_coordinate(&classes))),
        ("5", "trivial subgroup gives the face ring", Box::new(|| c5_stanley_reisner(&classes))),
        ("6", "Condition 1 fixtures", Box::new(c6_fixtures)),
        ("7", "odd part of the limit vanishes", Box::new(c7_odd_vanishing)),
        ("8", "skeleta are torsion free wedges", Box::new(c8_skeleta)),
        ("9", "toral rank bound for skeleton quotients", Box::new(c9_trc)),
        ("10", "torsion pipeline on RP^2_6", Box::new(c10_pipeline)),
        ("11", "cubical and census Euler characteristics", Box::new(c11_cubical_census)),
        ("12a", "Smith form invariance", Box::new(c12a_snf)),
        ("12b", "annihilator duality round trip", Box::new(c12b_duality)),
        ("12c", "Koszul basis independence", Box::new(c12c_koszul_basis)),
        ("12d", "truncation order independence", Box::new(c12d_truncation_order)),
    ];
    let mut unexpected = Vec::new();
    let mut battery_failures = Vec::new();
    for (id, name, run) in &criteria {
        let t = Instant::now();
        let o = run();
        let status = if o.pass { "PASS" } else { "FAIL" };
        let known = KNOWN_FAILURES.contains(id);
        let note = match (o.pass, known) {
            (false, true) => " (known failure)",
            (true, true) => " (listed as a known failure but passed)",
            _ => "",
        };
        println!("{status} {id:>3} {name}: {} [{:.2?}]{note}", o.detail, t.elapsed());
        if id.starts_with("12") && !o.pass {
            battery_failures.push(*id);
        }
        if !o.pass && !known {
            unexpected.push(*id);
        }
    }
    let status = if battery_failures.is_empty() { "PASS" } else { "FAIL" };
    println!("{status}  12 property batteries: failing {battery_failures:?}");
    println!("acceptance finished in {:.2?}", started.elapsed());
    if !unexpected.is_empty() {
        println!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
