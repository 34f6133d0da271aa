//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

mod common;

use std::time::{Duration, Instant};

use qtcodes::bounds::{
    bch_records, compare_all, exact_record, ht_records, jensen_bound, roos_records, BoundOptions, BoundRecord, Caps,
    RoosShape, TieMode,
};
use qtcodes::cli::{simulate, summarize, write_csv, SimulationConfig};
use qtcodes::exponents::ExponentSet;
use qtcodes::galois::{Elem, RootSetup};
use qtcodes::linalg::{column_independence_number, kronecker, Distance, Matrix, DEFAULT_SUBSET_CAP};
use qtcodes::polyring::{factor_xm_minus_lambda, Polynomial};
use qtcodes::qtstruct::{groebner_matrix, random_qtcode, reassemble, spectrum, QtCode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn fin(d: u32) -> Option<Distance> {
    Some(Distance::Finite(d))
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    let e = t.elapsed();
    check(e < limit, || format!("runtime {e:?} exceeds {limit:?}"))
}

/// Criterion 1: the first reference code (`example1.json`).
fn example_one_golden() -> Outcome {
    let t = Instant::now();
    let code = example_one();
    let g = groebner_matrix(&code);
    let expected = vec![vec!["x^2 + 2x + 2", "2x^2 + x + 1"], vec!["0", "x^4 + 1"]];
    check(g.display_entries() == expected, || format!("Groebner matrix {:?}", g.display_entries()))?;
    let r = compare_all(&code, &BoundOptions::default()).map_err(|e| e.to_string())?;
    check(r.dimension == 2, || format!("dim {}", r.dimension))?;
    check(r.eigenvalues == ExponentSet::full(4), || format!("eigenvalues {}", r.eigenvalues))?;
    let d_true = r.d_true.as_ref().and_then(|d| d.value);
    check(d_true == fin(6), || format!("d_true {d_true:?}"))?;
    check(brute_force_distance(&code.scalar_generator_matrix()) == Distance::Finite(6), || "brute force".into())?;
    check(r.d_spec_s.value == fin(6) && r.sharp.spec_s, || format!("d_Spec(2) {:?}", r.d_spec_s.value))?;
    check(r.d_spec_1.value == fin(3), || format!("d_Spec(1) {:?}", r.d_spec_1.value))?;
    within(t, Duration::from_secs(1))?;
    Ok(format!("G~ matches reference, dim 2, d_true 6, d_Spec(2) 6 sharp, d_Spec(1) 3 in {:?}", t.elapsed()))
}

/// Criterion 2: the second reference code (`example2.json`).
fn example_two_golden() -> Outcome {
    let t = Instant::now();
    let code = example_two();
    let f3 = f(3);
    let g = groebner_matrix(&code);
    let x4p1 = poly(&f3, &[1, 0, 0, 0, 1]);
    check(g.determinant() == x4p1.mul(&x4p1, &f3), || format!("det {}", g.determinant().display(&f3)))?;
    let r = compare_all(&code, &BoundOptions::default()).map_err(|e| e.to_string())?;
    let d_true = r.d_true.as_ref().and_then(|d| d.value);
    check(r.dimension == 8, || format!("dim {}", r.dimension))?;
    check(d_true == fin(3), || format!("d_true {d_true:?}"))?;
    check(brute_force_distance(&code.scalar_generator_matrix()) == Distance::Finite(3), || "brute force".into())?;
    check(r.d_jensen.value == fin(2), || format!("d_J {:?}", r.d_jensen.value))?;
    check(r.d_spec_1.value == fin(2), || format!("d_S {:?}", r.d_spec_1.value))?;
    check(r.d_spec_s.value == fin(3), || format!("d_Spec(2) {:?}", r.d_spec_s.value))?;
    within(t, Duration::from_secs(10))?;
    Ok(format!("det (x^4+1)^2, dim 8, d_true 3, d_J 2, d_S 2, d_Spec(2) 3 in {:?}", t.elapsed()))
}

/// The seeded sweep shared by criteria 3 and 4: ternary, lambda = 2, m = 4,
/// ell in {2,3,4}, r <= ell, 0 < dim <= 12.
fn sweep_codes() -> Vec<(QtCode, u64)> {
    let f3 = f(3);
    let tuples = [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 1), (4, 2), (4, 3), (4, 4)];
    let mut out = Vec::new();
    let mut seed = 0u64;
    while out.len() < 100 {
        let (ell, r) = tuples[out.len() % tuples.len()];
        let code = random_qtcode(&f3, 4, ell, f3.from_int(2), r, seed).unwrap();
        let dim = groebner_matrix(&code).dimension();
        if dim > 0 && dim <= 12 {
            out.push((code, seed));
        }
        seed += 1;
    }
    out
}

/// Criterion 3: every bound is at most the true distance.
fn soundness_sweep(codes: &[(QtCode, u64)]) -> Outcome {
    let t = Instant::now();
    let caps = Caps::default();
    let mut violations = Vec::new();
    for (code, seed) in codes {
        let truth = brute_force_distance(&code.scalar_generator_matrix().independent_rows());
        let r = compare_all(code, &BoundOptions::default()).map_err(|e| format!("seed {seed}: {e}"))?;
        let oracle = r.d_true.as_ref().and_then(|d| d.value);
        if oracle != Some(truth) {
            violations.push(format!("seed {seed}: oracle {oracle:?} vs brute force {truth}"));
        }
        let setup = code.root_setup().unwrap();
        let fact = factor_xm_minus_lambda(&setup).unwrap();
        let exhaustive = jensen_bound(code, &fact, &setup, &caps, TieMode::Exhaustive).map_err(|e| e.to_string())?;
        for (name, v) in [
            ("jensen", r.d_jensen.value),
            ("jensen-exhaustive", Some(exhaustive)),
            ("spec1", r.d_spec_1.value),
            ("spec2", r.d_spec_s.value),
        ] {
            match v {
                Some(b) if b <= truth => {}
                other => violations.push(format!("seed {seed}: {name} {other:?} vs d {truth}")),
            }
        }
    }
    check(violations.is_empty(), || violations.join("; "))?;
    within(t, Duration::from_secs(600))?;
    Ok(format!("{} codes, 0 violations in {:?}", codes.len(), t.elapsed()))
}

/// Multiplicity of `beta` as a root of `a` lifted to the splitting field.
fn root_multiplicity(a: &Polynomial, beta: Elem, setup: &RootSetup) -> usize {
    let big = setup.field();
    let mut p = a.lift(setup.tower());
    let linear = Polynomial::from_coeffs(vec![big.neg(beta), Elem::ONE]);
    let mut k = 0;
    while !p.is_zero() {
        let (quo, rem) = p.divmod(&linear, big).unwrap();
        if !rem.is_zero() {
            break;
        }
        p = quo;
        k += 1;
    }
    k
}

/// Criterion 4: structural identities.
fn structural_identities(codes: &[(QtCode, u64)]) -> Outcome {
    let mut failures = Vec::new();
    let mut checks = 0;
    for (code, seed) in codes {
        let setup = code.root_setup().unwrap();
        let big = setup.field();
        let g = groebner_matrix(code);
        let sp = spectrum(&g, &setup).map_err(|e| format!("seed {seed}: {e}"))?;
        let scalar = code.scalar_generator_matrix();
        let n = code.length();
        let mut fail = |what: &str| failures.push(format!("seed {seed}: {what}"));
        checks += 5;
        let diag_deg: usize = g.diagonal().iter().map(|d| d.degree_or_zero()).sum();
        if g.dimension() != scalar.rank() || g.dimension() != n - diag_deg {
            fail("dimension");
        }
        for e in sp.eigenvalues() {
            let from_diag: usize = g.diagonal().iter().map(|d| root_multiplicity(d, e.beta, &setup)).sum();
            let nullity = code.ell() - g.evaluate(setup.tower(), e.beta).rank();
            if e.multiplicity != from_diag || e.multiplicity != nullity || e.eigenspace.rows() != nullity {
                fail("multiplicity");
            }
        }
        let h = sp.parity_check();
        if h.rank() != n - g.dimension() {
            fail("rank H");
        }
        let lifted = scalar.map_into(big, |x| setup.tower().embed(x));
        if !scalar.is_zero() && !h.mul(&lifted.transpose()).unwrap().is_zero() {
            fail("H annihilates shifts");
        }
        let fact = factor_xm_minus_lambda(&setup).unwrap();
        let re = reassemble(code, &fact, &setup).map_err(|e| format!("seed {seed}: {e}"))?;
        if !re.row_space_eq(&scalar).unwrap() {
            fail("reassembly");
        }
    }
    check(failures.is_empty(), || failures.join("; "))?;
    Ok(format!("{} codes, {checks} identity checks, 0 failures", codes.len()))
}

fn n_a(a: &Matrix) -> usize {
    column_independence_number(a, DEFAULT_SUBSET_CAP).unwrap()
}

/// Criterion 5: column independence numbers under stacking and Kronecker products.
fn n_a_suite() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let fields = [f(2), f(3)];
    let mut violations = Vec::new();
    for i in 0..300 {
        let fd = &fields[i % 2];
        let cols = rng.random_range(1..=5);
        let (ra, rb) = (rng.random_range(1..=3), rng.random_range(1..=3));
        let a = random_matrix(&mut rng, fd, ra, cols);
        let b = random_matrix(&mut rng, fd, rb, cols);
        let m = Matrix::vstack(fd, cols, &[&a, &b]).unwrap();
        let (na, nb, nm) = (n_a(&a), n_a(&b), n_a(&m));
        if na != brute_n_a(&a) || nm != brute_n_a(&m) {
            violations.push(format!("stack {i}: n_A disagrees with brute force"));
        }
        if nm < na.max(nb) {
            violations.push(format!("stack {i}: {nm} < max({na},{nb})"));
        }
    }
    for i in 0..300 {
        let fd = &fields[i % 2];
        let (ka, na) = (rng.random_range(1..=2), rng.random_range(1..=3));
        let (kb, nb) = (rng.random_range(1..=2), rng.random_range(1..=3));
        let a = random_matrix(&mut rng, fd, ka, na);
        let b = random_matrix(&mut rng, fd, kb, nb);
        let m = kronecker(&a, &b).unwrap();
        let (na, nb, nm) = (n_a(&a), n_a(&b), n_a(&m));
        if nm != brute_n_a(&m) {
            violations.push(format!("kronecker {i}: n_A disagrees with brute force"));
        }
        if nm < na.min(nb) {
            violations.push(format!("kronecker {i}: {nm} < min({na},{nb})"));
        }
    }
    for i in 0..100 {
        let fd = &fields[i % 2];
        let s = rng.random_range(1..=3);
        let (k1, n1) = (rng.random_range(1..=2), rng.random_range(1..=4));
        let (k2, n2) = (rng.random_range(1..=2), rng.random_range(1..=4));
        let mut pairs: Vec<(Matrix, Matrix)> =
            (0..s).map(|_| (random_matrix(&mut rng, fd, k1, n1), random_matrix(&mut rng, fd, k2, n2))).collect();
        pairs.sort_by_key(|(a, _)| std::cmp::Reverse(n_a(a)));
        let blocks: Vec<Matrix> = pairs.iter().map(|(a, b)| kronecker(a, b).unwrap()).collect();
        let m = Matrix::vstack(fd, n1 * n2, &blocks.iter().collect::<Vec<_>>()).unwrap();
        let mut bound = n_a(&pairs[0].0);
        let mut b_stack = Matrix::zeros(fd, 0, n2);
        for j in 0..s {
            b_stack = Matrix::vstack(fd, n2, &[&b_stack, &pairs[j].1]).unwrap();
            let nb = n_a(&b_stack);
            bound = bound.min(if j + 1 < s { n_a(&pairs[j + 1].0) * nb } else { nb });
        }
        let nm = n_a(&m);
        if nm < bound {
            violations.push(format!("proposition {i}: {nm} < {bound}"));
        }
    }
    // Strict instances of the equality forms: stacking and Kronecker.
    let f2 = f(2);
    let a = Matrix::from_ints(&f2, &[&[1, 0]]);
    let b = Matrix::from_ints(&f2, &[&[0, 1]]);
    let m = Matrix::vstack(&f2, 2, &[&a, &b]).unwrap();
    if (n_a(&a), n_a(&b), n_a(&m)) != (0, 0, 2) {
        violations.push("stacking counterexample".into());
    }
    let i2 = Matrix::identity(&f2, 2);
    if (n_a(&i2), n_a(&kronecker(&i2, &i2).unwrap())) != (2, 4) {
        violations.push("kronecker counterexample".into());
    }
    check(violations.is_empty(), || violations.join("; "))?;
    Ok("300 stacking, 300 Kronecker, 100 stacked-Kronecker instances and 2 strict cases, 0 violations".into())
}

fn key(r: &BoundRecord) -> (ExponentSet, Distance) {
    (r.set, r.d)
}

/// Criterion 6: family cross-checks on every universe for m = 4.
fn family_cross_checks() -> Outcome {
    let f3 = f(3);
    let cap = 1 << 24;
    let caps = Caps::default();
    let mut violations = Vec::new();
    let mut records = 0;
    for lambda in [1, 2] {
        let setup = RootSetup::new(&f3, 4, f3.from_int(lambda)).unwrap();
        for u in std::iter::once(ExponentSet::EMPTY).chain(ExponentSet::full(4).nonempty_subsets()) {
            let bch = bch_records(u, 4).records;
            let ht = ht_records(u, 4, cap).records;
            let roos = roos_records(u, 4, RoosShape::Any, cap).records;
            let singleton = roos_records(u, 4, RoosShape::SingletonM, cap).records;
            let same = roos_records(u, 4, RoosShape::MEqualsMPrime, cap).records;
            let bch_keys: Vec<_> = bch.iter().map(key).collect();
            let singleton_keys: Vec<_> = singleton.iter().map(key).collect();
            if bch_keys != singleton_keys {
                violations.push(format!("U={u}: BCH {bch_keys:?} vs Roos(|M|=1) {singleton_keys:?}"));
            }
            for h in &ht {
                if !same.iter().any(|r| r.set == h.set && r.d >= h.d) {
                    violations.push(format!("U={u}: HT ({}, {}) not reproduced with M'=M", h.set, h.d));
                }
            }
            for r in bch.iter().chain(&ht).chain(&roos).chain(&singleton).chain(&same) {
                records += 1;
                let exact = exact_record(r.set, &setup, &caps).unwrap();
                if r.d > exact.d || !r.set.is_subset(u) {
                    violations.push(format!("U={u}: {:?} ({}, {}) exceeds exact {}", r.kind, r.set, r.d, exact.d));
                }
            }
        }
    }
    check(violations.is_empty(), || violations.join("; "))?;
    Ok(format!("32 universes, {records} records, 0 violations"))
}

/// Criterion 7: the simulation protocol.
fn simulation_protocol() -> Outcome {
    let t = Instant::now();
    let cfg = SimulationConfig { seed: 20_240_901, ..SimulationConfig::default() };
    let rows = simulate(&cfg).map_err(|e| e.to_string())?;
    check(rows.len() == 135, || format!("{} rows", rows.len()))?;
    let mut csv = Vec::new();
    write_csv(&cfg, &rows, &mut csv).map_err(|e| e.to_string())?;
    let header = String::from_utf8(csv).unwrap().lines().next().unwrap_or_default().to_string();
    for col in ["d_spec_s2", "d_spec_s3", "d_spec_s4", "d_jensen", "d_spec1"] {
        check(header.split(',').any(|c| c == col), || format!("missing column {col}"))?;
    }
    let mut violations = Vec::new();
    for row in &rows {
        // bounds: jensen, spec1, spec_s2, spec_s3, spec_s4
        let b = &row.bounds;
        if b.iter().any(Option::is_none) {
            violations.push(format!("seed {}: missing value", row.seed));
            continue;
        }
        if b[2] < b[1] {
            violations.push(format!("seed {}: d_Spec(2) < d_S", row.seed));
        }
        if !(b[1] <= b[2] && b[2] <= b[3] && b[3] <= b[4]) {
            violations.push(format!("seed {}: d_Spec(s) not monotone", row.seed));
        }
    }
    let summary = summarize(&cfg, &rows);
    let recount = |idx: usize, sharp: bool| {
        rows.iter().filter(|r| r.nontrivial() && if sharp { r.sharp[idx] } else { r.best[idx] }).count() as u64
    };
    for i in 0..summary.labels.len() {
        if summary.sharp[i] != recount(i, true) || summary.best[i] != recount(i, false) {
            violations.push(format!("summary {} disagrees with rows", summary.labels[i]));
        }
    }
    check(violations.is_empty(), || violations.join("; "))?;
    let tally = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join("/");
    Ok(format!(
        "135 rows ({} nontrivial); sharp {} best {} for {}; in {:?}",
        summary.nontrivial,
        tally(&summary.sharp),
        tally(&summary.best),
        summary.labels.join("/"),
        t.elapsed()
    ))
}

fn main() {
    let codes = sweep_codes();
    let criteria: Vec<Criterion> = vec![
        ("1 example 1 golden", Box::new(example_one_golden)),
        ("2 example 2 golden", Box::new(example_two_golden)),
        ("3 soundness sweep", Box::new(|| soundness_sweep(&codes))),
        ("4 structural identities", Box::new(|| structural_identities(&codes))),
        ("5 n_A property suite", Box::new(n_a_suite)),
        ("6 bound-family cross-checks", Box::new(family_cross_checks)),
        ("7 simulation protocol", Box::new(simulation_protocol)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail}");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
