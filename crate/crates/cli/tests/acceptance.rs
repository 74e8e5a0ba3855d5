//! Acceptance criteria, one line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use arith_bertini::arithseek::{find_small_smooth_section, verify_certificate, NormFamily, ProblemSpec, SectionCertificate};
use arith_bertini::bertini::{bad_hyperplane_hypersurface, degree_bound_profile, LinearSeries, DEFAULT_M_CHECK};
use arith_bertini::cnsolve::{cn_search, poschr_offsets, GridSpec, PolyFunction, ResiduePoint};
use arith_bertini::elimination::{bi_vars, eliminate_projection, sylvester_resultant, BiSystem};
use arith_bertini::bertini::{singular_locus_system, universal_hyperplane_system};
use arith_bertini::exactalg::{
    binary_gcd, indexed_vars, make_vars, monomials_of_degree, BinaryForm, Domain, Fp, MultiPoly, Scalar, Vars,
};
use arith_bertini::variety::VarietyPresentation;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn run(n: u32, title: &str, limit: Duration, f: fn() -> Outcome) -> bool {
    let t = Instant::now();
    let r = std::panic::catch_unwind(f).unwrap_or_else(|e| {
        let msg = e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()));
        outcome(false, format!("panicked: {}", msg.unwrap_or_default()))
    });
    let elapsed = t.elapsed();
    let ok = r.ok && elapsed < limit;
    println!(
        "{} criterion {n} ({title}): {} [{:.2?} of {:?}]",
        if ok { "PASS" } else { "FAIL" },
        r.detail,
        elapsed,
        limit
    );
    ok
}

fn q(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

fn conic() -> VarietyPresentation {
    let x = indexed_vars("X", 3);
    let g = MultiPoly::from_int_terms(&x, &[(&[1, 0, 1], 1), (&[0, 2, 0], -1)]);
    VarietyPresentation::new(2, vec![g], 1, 2).unwrap()
}

fn random_form(vars: &Vars, d: u32, range: i64, rng: &mut ChaCha8Rng) -> MultiPoly {
    let terms = monomials_of_degree(vars.len(), d)
        .into_iter()
        .map(|m| (m.exponents().to_vec(), Scalar::int(rng.gen_range(-range..=range))));
    MultiPoly::from_terms(vars, Domain::Rational, terms).unwrap()
}

fn squarefree(f: &BinaryForm) -> bool {
    let v = make_vars(&["U", "V"]);
    let p = f.to_poly(&v);
    let d0 = BinaryForm::from_poly(&p.partial_derivative(0).unwrap()).unwrap();
    let d1 = BinaryForm::from_poly(&p.partial_derivative(1).unwrap()).unwrap();
    !f.is_zero() && binary_gcd(&binary_gcd(f, &d0), &d1).degree == 0
}

// 1 ------------------------------------------------------------------------

fn discriminant_containment() -> Outcome {
    let series = LinearSeries::hyperplane_series(VarietyPresentation::projective_space(1), 1).unwrap();
    let cert = bad_hyperplane_hypersurface(&series, 2, 1).unwrap();
    let basis: Vec<Vec<u32>> = cert.basis.forms.iter().map(|f| f.terms().next().unwrap().0.exponents().to_vec()).collect();
    if basis != vec![vec![2, 0], vec![1, 1], vec![0, 2]] {
        return outcome(false, format!("unexpected level basis {basis:?}"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut hits = 0;
    let mut tried = 0;
    while tried < 50 {
        let (a, b): (i64, i64) = (rng.gen_range(-20..=20), rng.gen_range(-20..=20));
        if a == 0 && b == 0 {
            continue;
        }
        tried += 1;
        // (a X0 + b X1)^2 in the basis X0^2, X0 X1, X1^2
        let y = [a * a, 2 * a * b, b * b].map(Scalar::int);
        if cert.poly.eval(&y).unwrap().is_zero() {
            hits += 1;
        }
    }
    let w = &cert.hypersurface.as_ref().unwrap().witness_point;
    let ws: Vec<Scalar> = w.iter().map(|c| Scalar::from_bigint(c, Domain::Rational)).collect();
    let nonzero = !cert.poly.eval(&ws).unwrap().is_zero();
    // the hyperplane w0 X0^2 + w1 X0 X1 + w2 X1^2 is smooth iff its discriminant is nonzero
    let disc = &w[1] * &w[1] - BigInt::from(4) * &w[0] * &w[2];
    let smooth = !disc.is_zero();
    let prof = degree_bound_profile(&series, DEFAULT_M_CHECK);
    let p2 = prof.eval(2);
    let ok = hits == 50 && nonzero && smooth && prof.degree() == 4 && num_bigint::BigUint::from(cert.degree) <= p2;
    outcome(
        ok,
        format!(
            "vanishes at {hits}/50 squares, witness {:?} smooth={smooth}, degree {} <= P(2) = {p2}, deg P = {}",
            w.iter().map(ToString::to_string).collect::<Vec<_>>(),
            cert.degree,
            prof.degree()
        ),
    )
}

// 2 ------------------------------------------------------------------------

fn projective_points(n: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..=n {
        for mut code in 0..p.pow((n - lead) as u32) {
            let mut pt = vec![0; n + 1];
            pt[lead] = 1;
            for c in pt.iter_mut().skip(lead + 1) {
                *c = code % p;
                code /= p;
            }
            out.push(pt);
        }
    }
    out
}

fn fp_point(pt: &[u64], p: u64) -> Vec<Scalar> {
    pt.iter().map(|&c| Scalar::Mod(Fp::new(c, p))).collect()
}

fn zero_mod(f: &MultiPoly, pt: &[Scalar], p: u64) -> bool {
    f.reduce_mod(p).unwrap().eval(pt).unwrap().is_zero()
}

fn system(x: VarietyPresentation, ny: usize, eqs: &[&[(&[u32], i64)]]) -> BiSystem {
    let v = bi_vars(&x, ny);
    BiSystem::new(x, ny, eqs.iter().map(|t| MultiPoly::from_int_terms(&v, t)).collect()).unwrap()
}

/// Returns (projection points found, points off the hypersurface, degree ok).
fn check_system(sys: &BiSystem, seed: u64) -> (usize, usize, bool) {
    let cert = eliminate_projection(sys, seed).unwrap();
    let x = sys.variety();
    let ell = x.degree() as u128 * (sys.p_bound().max(1) as u128).pow(x.dim() as u32 + 1);
    let phi = x.degree() as u128 * (ell + x.dim() as u128).pow(x.dim() as u32);
    let degree_ok = (cert.degree as u128) <= phi * sys.q_bound() as u128;
    let (mut found, mut outside) = (0, 0);
    for p in [5u64, 7] {
        let on_x: Vec<Vec<u64>> = projective_points(x.ambient_dim(), p)
            .into_iter()
            .filter(|pt| x.generators().iter().all(|g| zero_mod(g, &fp_point(pt, p), p)))
            .collect();
        for y in projective_points(sys.y_count() - 1, p) {
            let hit = on_x.iter().any(|xp| {
                let full: Vec<u64> = xp.iter().chain(&y).copied().collect();
                let full = fp_point(&full, p);
                sys.equations().iter().all(|e| zero_mod(e, &full, p))
            });
            if hit {
                found += 1;
                if !cert.poly.eval(&fp_point(&y, p)).unwrap().is_zero() {
                    outside += 1;
                }
            }
        }
    }
    (found, outside, degree_ok)
}

fn elimination_degree_bound() -> Outcome {
    let p1 = || VarietyPresentation::projective_space(1);
    let series = LinearSeries::hyperplane_series(conic(), 1).unwrap();
    let tangent = singular_locus_system(&universal_hyperplane_system(&series, 1).unwrap(), series.n1()).unwrap();
    let systems = [system(p1(), 2, &[&[(&[1, 0, 1, 0], 1)], &[(&[0, 1, 1, 0], 1)]]),
        system(p1(), 2, &[&[(&[1, 0, 1, 0], 1), (&[0, 1, 0, 1], 1)], &[(&[0, 1, 1, 0], 1), (&[1, 0, 0, 1], -1)]]),
        system(p1(), 3, &[&[(&[1, 0, 1, 0, 0], 1), (&[0, 1, 0, 1, 0], -1)], &[(&[1, 0, 0, 0, 1], 1), (&[0, 1, 1, 0, 0], -1)]]),
        system(
            p1(),
            3,
            &[
                &[(&[2, 0, 1, 0, 0], 1), (&[1, 1, 0, 1, 0], 1), (&[0, 2, 0, 0, 1], 1)],
                &[(&[1, 0, 1, 0, 0], 2), (&[0, 1, 0, 1, 0], 1)],
                &[(&[1, 0, 0, 1, 0], 1), (&[0, 1, 0, 0, 1], 2)],
            ],
        ),
        system(conic(), 2, &[&[(&[1, 0, 0, 1, 0], 1)], &[(&[0, 1, 0, 1, 0], 1)], &[(&[0, 0, 1, 0, 1], 1)]]),
        system(conic(), 2, &[&[(&[1, 0, 0, 1, 0], 1), (&[0, 1, 0, 0, 1], 1)], &[(&[0, 0, 1, 1, 0], 1)]]),
        tangent];
    let (mut found, mut outside, mut bounds) = (0, 0, 0);
    for (i, s) in systems.iter().enumerate() {
        let (f, o, d) = check_system(s, i as u64 + 1);
        found += f;
        outside += o;
        bounds += d as usize;
    }
    let n = systems.len();
    outcome(
        outside == 0 && bounds == n && n >= 5,
        format!("{n} systems, {bounds}/{n} within the degree bound, {found} projection points over F5/F7, {outside} outside"),
    )
}

// 3 ------------------------------------------------------------------------

fn lex_first_nonzero(u: &MultiPoly, sets: &[Vec<i64>]) -> Option<Vec<i64>> {
    let total: usize = sets.iter().map(Vec::len).product();
    (0..total).find_map(|mut code| {
        let mut pt = vec![0; sets.len()];
        for k in (0..sets.len()).rev() {
            pt[k] = sets[k][code % sets[k].len()];
            code /= sets[k].len();
        }
        let sc: Vec<Scalar> = pt.iter().map(|&v| Scalar::int(v)).collect();
        (!u.eval(&sc).unwrap().is_zero()).then_some(pt)
    })
}

fn combinatorial_nullstellensatz() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let (mut cases, mut agree) = (0, 0);
    while cases < 1000 {
        let n = rng.gen_range(1..=4usize);
        let vars = indexed_vars("v", n);
        let terms: Vec<(Vec<u32>, Scalar)> = (0..rng.gen_range(1..=4))
            .map(|_| {
                let d = rng.gen_range(0..=3u32);
                let mut e = vec![0u32; n];
                for _ in 0..d {
                    e[rng.gen_range(0..n)] += 1;
                }
                (e, Scalar::int(rng.gen_range(-5..=5)))
            })
            .collect();
        let u = MultiPoly::from_terms(&vars, Domain::Rational, terms).unwrap();
        if u.is_zero() {
            continue;
        }
        cases += 1;
        let size = u.total_degree().unwrap() as usize + 1;
        let sets: Vec<Vec<i64>> = (0..n)
            .map(|_| {
                let mut s: Vec<i64> = Vec::new();
                while s.len() < size {
                    let v = rng.gen_range(-10..=10);
                    if !s.contains(&v) {
                        s.push(v);
                    }
                }
                s.sort_unstable();
                s
            })
            .collect();
        let grid = GridSpec::new(sets.iter().map(|s| s.iter().map(|&v| q(v)).collect()).collect());
        let want = lex_first_nonzero(&u, &sets).map(|p| p.into_iter().map(q).collect::<Vec<_>>());
        if let Ok(got) = cn_search(&PolyFunction(u), &grid, cases as u64) {
            if Some(got) == want {
                agree += 1;
            }
        }
    }
    outcome(agree == 1000, format!("{agree}/1000 searches succeed and match the full-grid scan"))
}

// 4 ------------------------------------------------------------------------

fn poschr_perturbations() -> Outcome {
    let series = LinearSeries::hyperplane_series(VarietyPresentation::projective_space(1), 1).unwrap();
    let basis = series.level_basis(2).unwrap();
    let points = vec![ResiduePoint { prime: 2, coords: vec![1, 1] }, ResiduePoint { prime: 3, coords: vec![1, 2] }];
    let off = poschr_offsets(&basis.forms, &points, 0).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut good = 0;
    for _ in 0..100 {
        let c: Vec<BigInt> = off
            .offsets
            .iter()
            .map(|&a| BigInt::from(a) + BigInt::from(off.modulus) * BigInt::from(rng.gen_range(-1_000_000i64..=1_000_000)))
            .collect();
        // residues of Σ c_j e_j at each point, evaluated directly
        let all = points.iter().all(|pt| {
            let p = BigInt::from(pt.prime);
            let v: BigInt = basis
                .forms
                .iter()
                .zip(&c)
                .map(|(f, cj)| {
                    let (m, _) = f.terms().next().unwrap();
                    let e = m.exponents();
                    cj * BigInt::from(pt.coords[0]).pow(e[0]) * BigInt::from(pt.coords[1]).pow(e[1])
                })
                .sum();
            !(v % &p).is_zero()
        });
        good += all as usize;
    }
    outcome(good == 100 && off.modulus == 6, format!("F = {}, offsets {:?}, {good}/100 perturbations keep residues nonzero", off.modulus, off.offsets))
}

// 5 ------------------------------------------------------------------------

fn line_problem() -> ProblemSpec {
    let p1 = VarietyPresentation::projective_space(1);
    ProblemSpec {
        series: LinearSeries::hyperplane_series(p1.clone(), 1).unwrap(),
        norm: NormFamily::l1_theta(BigRational::new(1.into(), 2.into())).unwrap(),
        subvarieties: vec![p1],
        char0_points: vec![vec![q(1), q(0)]],
        charp_points: vec![ResiduePoint { prime: 2, coords: vec![0, 1] }],
        m_range: 1..=6,
        seed: 11,
    }
}

fn conic_problem() -> ProblemSpec {
    let c = conic();
    ProblemSpec {
        series: LinearSeries::hyperplane_series(c.clone(), 1).unwrap(),
        norm: NormFamily::l1_theta(BigRational::new(1.into(), 2.into())).unwrap(),
        subvarieties: vec![c],
        char0_points: vec![vec![q(1), q(1), q(1)]],
        charp_points: vec![],
        m_range: 1..=4,
        seed: 11,
    }
}

/// `ℓ1(s) · 2^{-m}` computed from the terms.
fn half_norm(s: &MultiPoly, m: u32) -> BigRational {
    let l1: BigRational = s.terms().map(|(_, c)| c.as_rational().unwrap().abs()).sum();
    l1 / BigRational::from_integer(BigInt::from(2).pow(m))
}

fn conclusions(problem: &ProblemSpec, cert: &SectionCertificate, restrict: impl Fn(&MultiPoly) -> BinaryForm) -> (bool, bool, bool) {
    let reduced = squarefree(&restrict(&cert.section));
    let points = problem.char0_points.iter().all(|p| {
        let sc: Vec<Scalar> = p.iter().cloned().map(Scalar::rational).collect();
        !cert.section.eval(&sc).unwrap().is_zero()
    }) && problem.charp_points.iter().all(|p| !zero_mod(&cert.section, &fp_point(&p.coords, p.prime), p.prime));
    let norm = half_norm(&cert.section, cert.m) < BigRational::one();
    (reduced, points, norm)
}

fn small_section(problem: ProblemSpec, max_m: u32, restrict: fn(&MultiPoly) -> BinaryForm) -> Outcome {
    let (cert, _) = match find_small_smooth_section(&problem) {
        Ok(r) => r,
        Err(e) => return outcome(false, e.to_string()),
    };
    let report = verify_certificate(&cert, &problem);
    let (a, b, c) = conclusions(&problem, &cert, restrict);
    outcome(
        cert.m <= max_m && a && b && c && report.all_passed(),
        format!("m = {}, section {}, squarefree={a} nonvanishing={b} norm {} < 1: {c}", cert.m, cert.section, cert.norm_value),
    )
}

fn line_restriction(s: &MultiPoly) -> BinaryForm {
    BinaryForm::from_poly(s).unwrap()
}

/// The section at `(u^2, uv, v^2)`, a parametrization of the conic.
fn conic_restriction(s: &MultiPoly) -> BinaryForm {
    let uv = make_vars(&["U", "V"]);
    let terms = s.terms().map(|(m, c)| {
        let e = m.exponents();
        (vec![2 * e[0] + e[1], e[1] + 2 * e[2]], c.clone())
    });
    BinaryForm::from_poly(&MultiPoly::from_terms(&uv, Domain::Rational, terms).unwrap()).unwrap()
}

fn small_section_on_the_line() -> Outcome {
    small_section(line_problem(), 6, line_restriction)
}

fn small_section_on_the_conic() -> Outcome {
    small_section(conic_problem(), 4, conic_restriction)
}

// 6 ------------------------------------------------------------------------

fn random_poly(vars: &Vars, rng: &mut ChaCha8Rng) -> MultiPoly {
    let n = vars.len();
    let terms: Vec<(Vec<u32>, Scalar)> = (0..rng.gen_range(0..=5))
        .map(|_| {
            let e: Vec<u32> = (0..n).map(|_| rng.gen_range(0..=3)).collect();
            (e, Scalar::rational(BigRational::new(rng.gen_range(-9..=9).into(), rng.gen_range(1..=5).into())))
        })
        .collect();
    MultiPoly::from_terms(vars, Domain::Rational, terms).unwrap()
}

fn exactness_substrate() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let v3 = indexed_vars("X", 3);
    let v2 = indexed_vars("X", 2);
    let (mut l1, mut euler, mut hom, mut res) = (0, 0, 0, 0);
    for _ in 0..500 {
        let (a, b) = (random_poly(&v3, &mut rng), random_poly(&v3, &mut rng));
        let ab = a.checked_mul(&b).unwrap();
        l1 += (ab.l1_norm().unwrap() <= a.l1_norm().unwrap() * b.l1_norm().unwrap()) as u32;

        let pt: Vec<Scalar> =
            (0..3).map(|_| Scalar::rational(BigRational::new(rng.gen_range(-7..=7).into(), rng.gen_range(1..=4).into()))).collect();
        let (va, vb) = (a.eval(&pt).unwrap(), b.eval(&pt).unwrap());
        hom += (ab.eval(&pt).unwrap() == va.mul(&vb) && a.checked_add(&b).unwrap().eval(&pt).unwrap() == va.add(&vb)) as u32;

        let d = rng.gen_range(0..=4);
        let f = random_form(&v3, d, 9, &mut rng);
        let mut lhs = MultiPoly::zero(&v3, Domain::Rational);
        for i in 0..3 {
            let xi = MultiPoly::var(&v3, i, Domain::Rational);
            lhs = lhs.checked_add(&xi.checked_mul(&f.partial_derivative(i).unwrap()).unwrap()).unwrap();
        }
        euler += (lhs == f.scale(&Scalar::int(d as i64))) as u32;

        // forms with a shared factor half the time
        let shared = random_form(&v2, rng.gen_range(1..=2), 3, &mut rng);
        let mut f = random_form(&v2, rng.gen_range(1..=2), 3, &mut rng);
        let mut g = random_form(&v2, rng.gen_range(1..=2), 3, &mut rng);
        if rng.gen_bool(0.5) {
            f = f.checked_mul(&shared).unwrap();
            g = g.checked_mul(&shared).unwrap();
        }
        if f.is_zero() || g.is_zero() {
            res += 1;
            continue;
        }
        let r = sylvester_resultant(&f, &g, 0, 1).unwrap();
        let gcd = binary_gcd(&BinaryForm::from_poly(&f).unwrap(), &BinaryForm::from_poly(&g).unwrap());
        res += (r.is_zero() == (gcd.degree > 0)) as u32;
    }
    outcome(
        l1 == 500 && euler == 500 && hom == 500 && res == 500,
        format!("l1 {l1}/500, Euler {euler}/500, evaluation {hom}/500, resultant vs gcd {res}/500"),
    )
}

// 7 ------------------------------------------------------------------------

fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn hilbert_bound() -> Outcome {
    let cubic = {
        let x = indexed_vars("X", 3);
        let g = MultiPoly::from_int_terms(&x, &[(&[3, 0, 0], 1), (&[0, 3, 0], 1), (&[0, 0, 3], 1)]);
        VarietyPresentation::new(2, vec![g], 1, 3).unwrap()
    };
    let cases = [
        ("P1", VarietyPresentation::projective_space(1), true),
        ("P2", VarietyPresentation::projective_space(2), true),
        ("conic", conic(), false),
        ("cubic", cubic, false),
    ];
    let mut failures = Vec::new();
    for (name, v, is_space) in &cases {
        for l in 0..=12u32 {
            let q = v.ideal_graded_piece(l).quotient_dim as u64;
            let dim = v.dim() as u32;
            let phi = v.degree() * (l as u64 + dim as u64).pow(dim);
            if q > phi || (*is_space && q != choose(l as u64 + dim as u64, dim as u64)) {
                failures.push(format!("{name} l={l}: {q} vs {phi}"));
            }
        }
    }
    outcome(failures.is_empty(), if failures.is_empty() { "all 52 levels within the bound, projective spaces exact".into() } else { failures.join("; ") })
}

// 8 ------------------------------------------------------------------------

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn cli(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_arith-bertini")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into(), String::from_utf8_lossy(&out.stderr).into())
}

fn determinism_and_tamper() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let p = |n: &str| dir.path().join(n).to_string_lossy().into_owned();
    let problem = data("p1_problem.json").to_string_lossy().into_owned();
    let (c1, _, _) = cli(&["search", &problem, "--out", &p("a.json")]);
    let (c2, _, _) = cli(&["--jobs", "1", "search", &problem, "--out", &p("b.json")]);
    let a = std::fs::read(p("a.json")).unwrap();
    let b = std::fs::read(p("b.json")).unwrap();
    let identical = c1 == 0 && c2 == 0 && a == b;

    let (fresh, _, _) = cli(&["verify", &p("a.json"), &problem]);

    let mut doc: serde_json::Value = serde_json::from_slice(&a).unwrap();
    doc["coefficients"] = serde_json::json!(["1", "2", "1"]);
    std::fs::write(p("t.json"), serde_json::to_vec(&doc).unwrap()).unwrap();
    let (tampered, out, _) = cli(&["verify", &p("t.json"), &problem]);
    let names_smooth = out.lines().any(|l| l.starts_with("FAIL smooth[0]"));

    let (wrong, _, _) = cli(&["verify", &p("a.json"), &data("conic_problem.json").to_string_lossy()]);

    std::fs::write(p("bad.json"), b"{\"variety\": {\"ambient_dim\": 1, \"dim\": 1, \"generators\": []}}").unwrap();
    let (malformed, _, _) = cli(&["search", &p("bad.json")]);

    let mut tight: serde_json::Value = serde_json::from_slice(&std::fs::read(&problem).unwrap()).unwrap();
    tight["norm"] = serde_json::json!({"theta": "9/10"});
    tight["m_range"] = serde_json::json!("1..1");
    std::fs::write(p("tight.json"), serde_json::to_vec(&tight).unwrap()).unwrap();
    let (budget, _, _) = cli(&["search", &p("tight.json")]);

    let ok = identical && fresh == 0 && tampered == 6 && names_smooth && wrong == 7 && malformed == 2 && budget == 3;
    outcome(
        ok,
        format!(
            "identical={identical}, verify fresh={fresh}, tampered={tampered} (smoothness named: {names_smooth}), wrong problem={wrong}, malformed={malformed}, tight budget={budget}"
        ),
    )
}

fn main() {
    let s = Duration::from_secs;
    let results = [
        run(1, "discriminant containment", s(10), discriminant_containment),
        run(2, "elimination degree bound", s(60), elimination_degree_bound),
        run(3, "combinatorial Nullstellensatz", s(30), combinatorial_nullstellensatz),
        run(4, "residue offsets", s(5), poschr_perturbations),
        run(5, "small smooth section on the line", s(120), small_section_on_the_line),
        run(5, "small smooth section on the conic", s(120), small_section_on_the_conic),
        run(6, "exactness substrate", s(60), exactness_substrate),
        run(7, "Hilbert bound", s(10), hilbert_bound),
        run(8, "determinism and tamper detection", s(60), determinism_and_tamper),
    ];
    let failed = results.iter().filter(|ok| !**ok).count();
    println!("{} of {} acceptance checks passed", results.len() - failed, results.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
