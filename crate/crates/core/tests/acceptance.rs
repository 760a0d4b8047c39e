//! End-to-end acceptance checks, one line of output per criterion.

use std::collections::BTreeSet;
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use stairgb::fds::{
    boolean_to_poly, enumerate_models, lac, min_augmentation, model_select, state_space, weak_components,
    Augmentation, DataSet,
};
use stairgb::groebner::{all_reduced_gbs, bm_reduced_gb, ideal_membership, is_unique_gb, transport_gb, FanBudget};
use stairgb::points::{enumerate_order_ideals, evaluation_matrix, is_basic};
use stairgb::poly::parse;
use stairgb::shifts::{all_shifts, classify, detect_shift, find_staircase_shift, ClassifyMode};
use stairgb::{ExponentVector, LinearShift, MonomialOrder, OrderIdealSet, PointSet, Polynomial, ReducedGroebnerBasis};

mod common;

use common::{grid_fan, pts, zp};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn polys(texts: &[&str], n: usize, p: u64) -> BTreeSet<String> {
    texts.iter().map(|t| format!("{:?}", parse(t, n, zp(p)).unwrap())).collect()
}

fn basis_set(g: &ReducedGroebnerBasis) -> BTreeSet<String> {
    g.polynomials().iter().map(|f| format!("{f:?}")).collect()
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn sm_rows(rows: &[&[u32]]) -> Vec<Vec<u32>> {
    rows.iter().map(|r| r.to_vec()).collect()
}

/// Structural invariants plus x_i^p - x_i membership.
fn audit(g: &ReducedGroebnerBasis, v: &PointSet) -> Result<(), String> {
    g.check_invariants(v).map_err(|e| e.to_string())?;
    let m = v.modulus();
    for i in 0..v.nvars() {
        let x = Polynomial::variable(v.nvars(), i, m);
        let f = &x.pow(m.get()) - &x;
        ensure(ideal_membership(&f, v), format!("x{}^p - x{} not in I(V)", i + 1, i + 1))?;
        ensure(g.normal_form(&f).map_err(|e| e.to_string())?.is_zero(), "x^p - x does not reduce to 0")?;
    }
    Ok(())
}

fn toy() -> PointSet {
    pts(3, 2, &[&[0, 0], &[1, 0], &[2, 1]])
}

fn criterion_1() -> Outcome {
    let v = toy();
    let g1 = bm_reduced_gb(&v, &MonomialOrder::weight(&[1, 1]).unwrap()).map_err(|e| e.to_string())?;
    let g2 = bm_reduced_gb(&v, &MonomialOrder::weight(&[1, 3]).unwrap()).map_err(|e| e.to_string())?;
    ensure(basis_set(&g1) == polys(&["x2^2 + 2*x2", "x1*x2 + x2", "x1^2 + 2*x1 + x2"], 2, 3), "GB1 differs")?;
    ensure(basis_set(&g2) == polys(&["x1^3 + 2*x1", "x2 + x1^2 + 2*x1"], 2, 3), "GB2 differs")?;
    ensure(g1.standard_monomials().to_rows() == sm_rows(&[&[0, 0], &[0, 1], &[1, 0]]), "SM1 differs")?;
    ensure(g2.standard_monomials().to_rows() == sm_rows(&[&[0, 0], &[1, 0], &[2, 0]]), "SM2 differs")?;
    let fan = all_reduced_gbs(&v).map_err(|e| e.to_string())?;
    ensure(fan.len() == 2, format!("fan size {} != 2", fan.len()))?;
    let fan_sets: BTreeSet<_> = fan.entries.iter().map(|e| basis_set(&e.basis)).collect();
    ensure(fan_sets == [basis_set(&g1), basis_set(&g2)].into_iter().collect(), "fan bases differ")?;
    audit(&g1, &v)?;
    audit(&g2, &v)?;
    Ok("fan size 2, both bases and staircases exact".into())
}

fn criterion_2() -> Outcome {
    let d = DataSet::new(toy(), vec![vec![0, 0, 1]]).map_err(|e| e.to_string())?;
    let sm1 = OrderIdealSet::from_rows(zp(3), 2, &sm_rows(&[&[0, 0], &[0, 1], &[1, 0]])).unwrap();
    let sm2 = OrderIdealSet::from_rows(zp(3), 2, &sm_rows(&[&[0, 0], &[1, 0], &[2, 0]])).unwrap();
    let f1 = model_select(&d, &sm1, 0).map_err(|e| e.to_string())?;
    let f2 = model_select(&d, &sm2, 0).map_err(|e| e.to_string())?;
    ensure(f1 == parse("x2", 2, zp(3)).unwrap(), format!("model over SM1 is {f1:?}"))?;
    ensure(f2 == parse("x1 + 2*x1^2", 2, zp(3)).unwrap(), format!("model over SM2 is {f2:?}"))?;
    Ok("f = y and f = x + 2x^2".into())
}

/// Evaluation matrix with rows in the listed order of the points.
fn matrix_in_order(lambda: &[&[u32]], rows: &[&[u32]]) -> Vec<Vec<u32>> {
    let v = pts(3, 2, rows);
    let lam: Vec<ExponentVector> = lambda.iter().map(|r| ExponentVector::from(r.to_vec())).collect();
    let x = evaluation_matrix(&lam, &v).unwrap().to_rows();
    rows.iter().map(|r| x[v.points().iter().position(|p| p.as_slice() == *r).unwrap()].clone()).collect()
}

fn criterion_3() -> Outcome {
    let l1: &[&[u32]] = &[&[0, 0], &[1, 0]];
    let l2: &[&[u32]] = &[&[0, 0], &[0, 1]];
    let v: &[&[u32]] = &[&[2, 0], &[0, 1]];
    ensure(matrix_in_order(l1, v) == vec![vec![1, 2], vec![1, 0]], "X(lambda1, V) differs")?;
    ensure(matrix_in_order(l2, v) == vec![vec![1, 0], vec![1, 1]], "X(lambda2, V) differs")?;
    let w = pts(3, 2, &[&[0, 0], &[1, 0]]);
    let to_ev = |l: &[&[u32]]| l.iter().map(|r| ExponentVector::from(r.to_vec())).collect::<Vec<_>>();
    ensure(matrix_in_order(l1, &[&[0, 0], &[1, 0]]) == vec![vec![1, 0], vec![1, 1]], "X(lambda1, W) differs")?;
    ensure(matrix_in_order(l2, &[&[0, 0], &[1, 0]]) == vec![vec![1, 0], vec![1, 0]], "X(lambda2, W) differs")?;
    ensure(is_basic(&to_ev(l1), &w), "lambda1 should be basic")?;
    ensure(!is_basic(&to_ev(l2), &w), "lambda2 should not be basic")?;
    Ok("matrices and basic verdicts exact".into())
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (3, 2)] {
        let size = (p as usize).pow(n as u32);
        for m in 1..=size {
            for s in enumerate_order_ideals(zp(p), n, m) {
                let v = s.to_point_set();
                let fan = all_reduced_gbs(&v).map_err(|e| e.to_string())?;
                ensure(fan.len() == 1, format!("staircase {:?} has fan size {}", v.to_rows(), fan.len()))?;
                audit(&fan.entries[0].basis, &v)?;
                checked += 1;
            }
        }
    }
    let v = pts(3, 2, &[&[0, 0], &[0, 1], &[1, 0]]);
    let g = bm_reduced_gb(&v, &MonomialOrder::GrevLex).map_err(|e| e.to_string())?;
    ensure(basis_set(&g) == polys(&["x2^2 + 2*x2", "x1*x2", "x1^2 + 2*x1"], 2, 3), "staircase GB differs")?;
    Ok(format!("{checked} staircases, all fan size 1"))
}

fn criterion_5() -> Outcome {
    let v1 = pts(3, 2, &[&[0, 0], &[0, 1]]);
    let v2 = pts(3, 2, &[&[1, 1], &[1, 2]]);
    let v3 = pts(3, 2, &[&[1, 1], &[2, 2]]);
    let phi = detect_shift(&v1, &v2).ok_or("no shift found for V1, V2")?;
    ensure(phi == LinearShift::new(zp(3), vec![1, 1], vec![1, 1]).unwrap(), format!("shift {phi}"))?;
    ensure(detect_shift(&v1, &v3).is_none(), "V1 and V3 reported equivalent")?;
    let w = pts(3, 2, &[&[0, 1], &[0, 2], &[2, 2]]);
    let (psi, s) = find_staircase_shift(&w).ok_or("V2 not recognized as a shifted staircase")?;
    ensure(psi.apply(&s.to_point_set()).unwrap() == w, "shift does not carry staircase to V2")?;
    let fan = all_reduced_gbs(&w).map_err(|e| e.to_string())?;
    ensure(fan.len() == 1, format!("fan size {}", fan.len()))?;
    ensure(basis_set(&fan.entries[0].basis) == polys(&["x2^2 + 2", "x1*x2 + x1", "x1^2 + x1"], 2, 3), "GB differs")?;
    Ok(format!("phi = {phi}; V2 = {psi} applied to {:?}", s.to_rows()))
}

fn criterion_6() -> Outcome {
    let v = pts(2, 3, &[&[0, 0, 0], &[1, 0, 0], &[1, 1, 0], &[1, 1, 1]]);
    ensure(find_staircase_shift(&v).is_none(), "unexpected staircase shift")?;
    let (unique, count) = is_unique_gb(&v).map_err(|e| e.to_string())?;
    ensure(unique && count == 1, format!("basic count {count}"))?;
    let fan = all_reduced_gbs(&v).map_err(|e| e.to_string())?;
    ensure(fan.len() == 1, format!("fan size {}", fan.len()))?;
    let want = polys(&["x3^2 + x3", "x2*x3 + x3", "x2^2 + x2", "x1*x3 + x3", "x1*x2 + x2", "x1^2 + x1"], 3, 2);
    ensure(basis_set(&fan.entries[0].basis) == want, "GB differs")?;
    Ok("no staircase shift, unique 6-element basis".into())
}

fn criterion_7() -> Outcome {
    let f = lac::system();
    for (g, text) in f.functions().iter().zip(lac::polynomials()) {
        ensure(*g == parse(text, 4, zp(2)).unwrap(), format!("translation {g:?} != {text}"))?;
    }
    let m_rule = boolean_to_poly(&lac::unreduced_m_rule(), 4).map_err(|e| e.to_string())?;
    ensure(m_rule == f.functions()[0], "substitution chain disagrees")?;
    let comps = weak_components(&state_space(&f, 1 << 16).map_err(|e| e.to_string())?);
    let c = |x3: u32, x4: u32| pts(2, 4, &[&[0, 0, x3, x4], &[0, 1, x3, x4], &[1, 0, x3, x4], &[1, 1, x3, x4]]);
    let expected = vec![c(0, 0), c(0, 1), c(1, 0), c(1, 1)];
    ensure(comps == expected, format!("components {comps:?}"))?;
    let g1 = bm_reduced_gb(&expected[0], &MonomialOrder::GrLex).map_err(|e| e.to_string())?;
    ensure(basis_set(&g1) == polys(&["x1^2 + x1", "x2^2 + x2", "x3", "x4"], 4, 2), "G1 differs")?;
    ensure(
        g1.standard_monomials().to_rows() == sm_rows(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[1, 0, 0, 0], &[1, 1, 0, 0]]),
        "SM of C1 differs",
    )?;
    let targets = [
        (vec![0, 0, 0, 1], ["x1^2 + x1", "x2^2 + x2", "x3", "x4 + 1"]),
        (vec![0, 0, 1, 0], ["x1^2 + x1", "x2^2 + x2", "x3 + 1", "x4"]),
        (vec![0, 0, 1, 1], ["x1^2 + x1", "x2^2 + x2", "x3 + 1", "x4 + 1"]),
    ];
    for (k, (b, want)) in targets.iter().enumerate() {
        let phi = LinearShift::new(zp(2), vec![1; 4], b.clone()).unwrap();
        ensure(detect_shift(&expected[0], &expected[k + 1]) == Some(phi.clone()), format!("phi1{} not detected", k + 2))?;
        let moved = transport_gb(&g1, &phi).map_err(|e| e.to_string())?;
        ensure(basis_set(&moved) == polys(want, 4, 2), format!("G{} differs", k + 2))?;
        audit(&moved, &expected[k + 1])?;
    }
    Ok("translation, C1..C4, G1..G4 exact".into())
}

/// Distinct interpolants over the fan of `v` for every possible 0/1 output column.
fn achievable_model_counts(v: &PointSet) -> BTreeSet<usize> {
    (0u32..1 << v.len())
        .map(|mask| {
            let col: Vec<u32> = (0..v.len()).map(|i| (mask >> i) & 1).collect();
            let d = DataSet::new(v.clone(), vec![col]).unwrap();
            enumerate_models(&d).unwrap().counts[0]
        })
        .collect()
}

fn criterion_8() -> Outcome {
    let s5 = lac::s5();
    let mut notes = Vec::new();
    let mut failures = Vec::new();
    let fan = all_reduced_gbs(&s5).map_err(|e| e.to_string())?;
    for e in &fan.entries {
        audit(&e.basis, &s5)?;
    }
    if fan.len() == 13 {
        notes.push("fan 13 ok".to_string());
    } else {
        failures.push(format!("fan size {} != 13", fan.len()));
    }
    let d = lac::system().sample(&s5).map_err(|e| e.to_string())?;
    let models = enumerate_models(&d).map_err(|e| e.to_string())?;
    if models.counts == vec![4, 7, 3, 5] && models.total == 420 {
        notes.push("models (4,7,3,5) = 420 ok".to_string());
    } else {
        let reachable = achievable_model_counts(&s5);
        failures.push(format!(
            "model counts {:?} (total {}) != (4,7,3,5) = 420; over this fan any output column yields a count in {:?}",
            models.counts, models.total, reachable
        ));
    }
    let start = Instant::now();
    let aug = min_augmentation(&s5, 8, &FanBudget::default()).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    match aug {
        Augmentation::Found { k: 6, witness } if secs < 60.0 => {
            let union = s5.union(&witness).unwrap();
            ensure(is_unique_gb(&union).map_err(|e| e.to_string())?.0, "witness does not give a unique basis")?;
            notes.push(format!("augmentation k = 6 in {secs:.2}s ok"));
        }
        other => failures.push(format!("augmentation {other:?} in {secs:.1}s")),
    }
    if failures.is_empty() {
        Ok(notes.join(", "))
    } else {
        Err(format!("{}; {}", failures.join("; "), notes.join(", ")))
    }
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let r = classify(zp(2), 4, 5, ClassifyMode::Exhaustive).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    ensure(r.total == 4368, format!("total {}", r.total))?;
    ensure((550..=650).contains(&r.unique_sets), format!("unique sets {}", r.unique_sets))?;
    ensure((r.unique_fraction - 0.14).abs() <= 0.02, format!("fraction {:.4}", r.unique_fraction))?;
    ensure(secs < 180.0, format!("took {secs:.1}s"))?;
    Ok(format!(
        "total 4368, {} classes, unique sets {} (fraction {:.4}) in {secs:.2}s",
        r.classes.len(),
        r.unique_sets,
        r.unique_fraction
    ))
}

fn random_set(rng: &mut ChaCha8Rng) -> PointSet {
    let p = *[2u64, 3].choose(rng).unwrap();
    let n = rng.gen_range(1..=3usize);
    let full = PointSet::full(zp(p), n);
    let m = rng.gen_range(1..=full.len().min(6));
    let rows: Vec<Vec<u32>> =
        full.points().choose_multiple(rng, m).map(|e| e.as_slice().to_vec()).collect();
    PointSet::from_rows(zp(p), n, &rows).unwrap()
}

fn criterion_10() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut mismatches = 0;
    let mut audited = 0;
    for _ in 0..100 {
        let v = random_set(&mut rng);
        let fan = all_reduced_gbs(&v).map_err(|e| e.to_string())?;
        let fan_sms: BTreeSet<OrderIdealSet> = fan.entries.iter().map(|e| e.standard_monomials().clone()).collect();
        if fan_sms != grid_fan(&v, 8) {
            mismatches += 1;
        }
        for e in &fan.entries {
            audit(&e.basis, &v)?;
            audited += 1;
        }
    }
    ensure(mismatches == 0, format!("{mismatches} fan/oracle mismatches"))?;

    let mut shift_failures = 0;
    for _ in 0..100 {
        let v = random_set(&mut rng);
        let shifts = all_shifts(v.modulus(), v.nvars());
        let phi = shifts.choose(&mut rng).unwrap();
        let w = phi.apply(&v).unwrap();
        let n = v.nvars();
        for o in [MonomialOrder::lex(n), MonomialOrder::GrLex, MonomialOrder::GrevLex,
                  MonomialOrder::weight(&(1..=n as u64).rev().collect::<Vec<_>>()).unwrap()] {
            let a = bm_reduced_gb(&v, &o).map_err(|e| e.to_string())?;
            let b = bm_reduced_gb(&w, &o).map_err(|e| e.to_string())?;
            audit(&b, &w)?;
            audited += 1;
            if a.standard_monomials() != b.standard_monomials() {
                shift_failures += 1;
            }
            if transport_gb(&a, phi).map_err(|e| e.to_string())? != b {
                shift_failures += 1;
            }
        }
        if all_reduced_gbs(&v).unwrap().len() != all_reduced_gbs(&w).unwrap().len() {
            shift_failures += 1;
        }
    }
    ensure(shift_failures == 0, format!("{shift_failures} shift invariance failures"))?;
    Ok(format!("0 oracle mismatches on 100 sets, 0 shift failures on 100 pairs, {audited} bases audited"))
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("toy example bases and fan", criterion_1),
        ("model fitting by interpolation", criterion_2),
        ("evaluation matrices and basic test", criterion_3),
        ("staircases have unique bases", criterion_4),
        ("shift detection examples", criterion_5),
        ("unique basis without staircase shift", criterion_6),
        ("lac operon pipeline", criterion_7),
        ("discussion counts", criterion_8),
        ("classification sweep p=2 n=4 m=5", criterion_9),
        ("property suites", criterion_10),
    ];
    // criteria that cannot be met as stated; see the README
    let known_red = [8];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {:>2}  {name}: {detail} [{secs:.2}s]", i + 1),
            Err(detail) => {
                failed.push(i + 1);
                println!("FAIL  criterion {:>2}  {name}: {detail} [{secs:.2}s]", i + 1);
            }
        }
    }
    let unexpected: Vec<usize> = failed.iter().copied().filter(|c| !known_red.contains(c)).collect();
    println!(
        "acceptance: {} passed, {} failed (known: {:?}, unexpected: {:?})",
        criteria.len() - failed.len(),
        failed.len(),
        failed.iter().filter(|c| known_red.contains(c)).collect::<Vec<_>>(),
        unexpected
    );
    if !unexpected.is_empty() {
        std::process::exit(1);
    }
}
