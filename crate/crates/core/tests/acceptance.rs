//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit if any fails.
//!
//! Runs with `cargo test -p eqloc-core --test acceptance`.

use std::process::ExitCode;

use eqloc::algebra::{q, qf, LaurentPoly, RationalFunction, Scalar, TheoryKind, UniPoly};
use eqloc::fgl::{
    euler_series, fgl_builtin, invert_euler_series, reconstruction_holds, residue_axiom_check,
    BuiltinLaw,
};
use eqloc::localization::{
    component_condition, global_residue_vanishing, kappa, neg_expansion_bound, pushforward_closed,
    qr_check, FixedComponent, ManifoldModel, Side,
};
use eqloc::models::{build_cp1, build_cpn, build_product};
use eqloc::series::{residue_at, residue_at_infinity, residue_map, Domain, ResidueKind};
use eqloc::Error;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = Box<dyn FnOnce(&mut StdRng) -> Outcome>;

fn rand_scalar(rng: &mut StdRng) -> Scalar {
    qf(rng.gen_range(-9..=9), rng.gen_range(1..=5))
}

fn rand_laurent(rng: &mut StdRng, lo: i64, hi: i64) -> LaurentPoly {
    let n = rng.gen_range(0..=6);
    LaurentPoly::from_terms((0..n).map(|_| (rng.gen_range(lo..=hi), rand_scalar(rng))))
}

fn rand_poly(rng: &mut StdRng, max_deg: usize) -> UniPoly {
    let deg = rng.gen_range(0..=max_deg);
    UniPoly::new((0..=deg).map(|_| rand_scalar(rng)).collect())
}

fn rf(p: &LaurentPoly) -> RationalFunction {
    RationalFunction::from_laurent(p)
}

/// `(1 - u)^-k` etc. built directly from polynomials, not through the parser.
fn inv_pow(p: &UniPoly, k: i64) -> RationalFunction {
    RationalFunction::from_poly(p.clone()).powi(-k).unwrap()
}

fn check(cond: bool, failures: &mut Vec<String>, msg: impl FnOnce() -> String) {
    if !cond {
        failures.push(msg());
    }
}

fn finish(failures: Vec<String>, ok: &str) -> Outcome {
    if failures.is_empty() {
        Ok(ok.to_string())
    } else {
        let n = failures.len();
        let shown: Vec<_> = failures.into_iter().take(4).collect();
        Err(format!("{n} failure(s): {}", shown.join("; ")))
    }
}

fn c1_residue_closed_forms(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    let one_minus_u = UniPoly::from_ints(&[1, -1]);
    let u_plus_one = UniPoly::from_ints(&[1, 1]);
    for k in 1..=50 {
        let got =
            residue_map(ResidueKind::Rho1, &inv_pow(&one_minus_u, k), Domain::Strict).unwrap();
        check(got.is_one(), &mut failures, || {
            format!("Rho1((1-u)^-{k}) = {got}")
        });
    }
    for k in 1..=50 {
        let expected = if k % 2 == 0 { q(1) } else { q(-1) };
        let got = residue_map(
            ResidueKind::Rho0Inf,
            &inv_pow(&u_plus_one, k),
            Domain::Strict,
        )
        .unwrap();
        check(got == expected, &mut failures, || {
            format!("Rho0Inf((u+1)^-{k}) = {got}, expected {expected}")
        });
    }
    for _ in 0..100 {
        let p = rand_laurent(rng, -6, 6);
        let got = residue_map(ResidueKind::BorelRes, &rf(&p), Domain::Strict).unwrap();
        check(got == p.coeff(-1), &mut failures, || {
            format!("BorelRes({p}) = {got}")
        });
    }
    finish(
        failures,
        "Rho1 k=1..50, Rho0Inf k=1..50, BorelRes on 100 random Laurent polynomials",
    )
}

fn c2_residue_axioms(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for kind in ResidueKind::ALL {
        for _ in 0..200 {
            let p = match kind.theory() {
                TheoryKind::Borel => rand_laurent(rng, 0, 8),
                TheoryKind::KTheory => rand_laurent(rng, -8, 8),
            };
            let got = residue_map(kind, &rf(&p), Domain::Strict).unwrap();
            check(got.is_zero(), &mut failures, || {
                format!("{kind}({p}) = {got}")
            });
        }
    }
    for (kind, law) in [
        (ResidueKind::BorelRes, BuiltinLaw::Additive),
        (ResidueKind::Rho1, BuiltinLaw::Multiplicative),
        (ResidueKind::Rho0Inf, BuiltinLaw::Multiplicative),
    ] {
        let (f, e) = fgl_builtin(law);
        let report = residue_axiom_check(kind, &f, &e, 16).unwrap();
        check(report.passed(), &mut failures, || {
            format!("axiom check {kind}/{law}: {report:?}")
        });
    }
    finish(
        failures,
        "200 unlocalized elements per kind; axiom checks at N = 16",
    )
}

fn c3_agreement(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    let one_minus_u = UniPoly::from_ints(&[1, -1]);
    for _ in 0..200 {
        let a = rng.gen_range(0..=5);
        let b = rng.gen_range(0..=5);
        let den = &UniPoly::monomial(q(1), a) * &one_minus_u.pow(b);
        let f = RationalFunction::normalize(rand_poly(rng, 8), den).unwrap();
        let r1 = residue_map(ResidueKind::Rho1, &f, Domain::Strict).unwrap();
        let r0 = residue_map(ResidueKind::Rho0Inf, &f, Domain::Strict).unwrap();
        check(r1 == r0, &mut failures, || {
            format!("{f}: rho1 = {r1}, rho0inf = {r0}")
        });
    }
    let g = inv_pow(&UniPoly::from_ints(&[1, 1]), 1);
    let r1 = residue_map(ResidueKind::Rho1, &g, Domain::Strict).unwrap();
    let r0 = residue_map(ResidueKind::Rho0Inf, &g, Domain::Strict).unwrap();
    check(r1.is_zero() && r0.is_one(), &mut failures, || {
        format!("(u+1)^-1: rho1 = {r1}, rho0inf = {r0}")
    });
    finish(
        failures,
        "agree on 200 u^a(1-u)^b denominators; differ on (u+1)^-1 (0 vs 1)",
    )
}

fn c4_fgl_closed_forms() -> Outcome {
    let mut failures = Vec::new();
    let n = 16;
    let one_minus_u = UniPoly::from_ints(&[1, -1]);
    let (mul, e_mul) = fgl_builtin(BuiltinLaw::Multiplicative);
    let s = euler_series(&mul, &e_mul, n);
    let inv = invert_euler_series(&s, n).unwrap();
    for k in 1..=n {
        let expected = &inv_pow(&one_minus_u, k as i64) - &inv_pow(&one_minus_u, k as i64 + 1);
        check(*inv.c(k) == expected, &mut failures, || {
            format!("multiplicative c_{k} = {}", inv.c(k))
        });
    }
    check(reconstruction_holds(&s, &inv), &mut failures, || {
        "multiplicative reconstruction".into()
    });

    let (add, e_add) = fgl_builtin(BuiltinLaw::Additive);
    let s = euler_series(&add, &e_add, n);
    let inv = invert_euler_series(&s, n).unwrap();
    check(reconstruction_holds(&s, &inv), &mut failures, || {
        "additive reconstruction".into()
    });
    for k in 1..=n {
        let minus = RationalFunction::monomial(q(-1), -(k as i64) - 1);
        check(*inv.c(k) == minus, &mut failures, || {
            format!("additive c_{k} = {}", inv.c(k))
        });
    }
    // the opposite sign must break the invariant at y^1: b_0 c_1 + b_1 e^-1 = 0 forces the sign
    let b = s.coeffs();
    let flipped = &(&b[0] * &RationalFunction::monomial(q(1), -2)) + &(&b[1] * inv.e_inverse());
    check(!flipped.is_zero(), &mut failures, || {
        "additive: +u^-2 also reconstructs".into()
    });
    finish(
        failures,
        "multiplicative c_k for k = 1..16; additive c_k = -u^(-k-1); reconstruction to order 16",
    )
}

fn c5_integrality(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for k in 0..=20u32 {
        let m = build_cp1(k, TheoryKind::KTheory);
        let expected = LaurentPoly::from_terms((0..=k as i64).map(|j| (j, q(1))));
        match pushforward_closed(&m) {
            Ok(p) => {
                check(p == expected, &mut failures, || {
                    format!("CP1/O({k}) pushes to {p}")
                });
                for x in [q(2), q(3)] {
                    let geometric =
                        (num_traits::pow(x.clone(), k as usize + 1) - q(1)) / (&x - q(1));
                    check(p.eval(&x) == Some(geometric.clone()), &mut failures, || {
                        format!("CP1/O({k}) at {x}")
                    });
                }
            }
            Err(e) => failures.push(format!("CP1/O({k}): {e}")),
        }
    }
    for _ in 0..20 {
        let (a, b) = (rng.gen_range(0..=6), rng.gen_range(0..=6));
        let (ma, mb) = (
            build_cp1(a, TheoryKind::KTheory),
            build_cp1(b, TheoryKind::KTheory),
        );
        let prod = build_product(&ma, &mb).unwrap();
        let lhs = pushforward_closed(&prod).unwrap();
        let rhs = &pushforward_closed(&ma).unwrap() * &pushforward_closed(&mb).unwrap();
        check(lhs == rhs, &mut failures, || {
            format!("CP1/O({a}) x CP1/O({b})")
        });
    }
    let pn = build_cpn(2, 1);
    let prod = build_product(&pn, &build_cp1(3, TheoryKind::KTheory)).unwrap();
    check(
        pushforward_closed(&prod).unwrap()
            == &pushforward_closed(&pn).unwrap()
                * &pushforward_closed(&build_cp1(3, TheoryKind::KTheory)).unwrap(),
        &mut failures,
        || "CP2/O(1) x CP1/O(3)".into(),
    );
    for theory in [TheoryKind::KTheory, TheoryKind::Borel] {
        let single = ManifoldModel::new(
            theory,
            "point",
            vec![FixedComponent::new(
                "p",
                vec![1],
                LaurentPoly::one(),
                Side::Plus,
            )],
        )
        .unwrap();
        let r = pushforward_closed(&single);
        check(
            matches!(r, Err(Error::NotIntegral(_))),
            &mut failures,
            || format!("{theory} single point gave {r:?}"),
        );
    }
    finish(
        failures,
        "CP1/O(k) for k = 0..20; products multiply; single points are NotIntegral",
    )
}

fn admissible_sides(m: &ManifoldModel, rng: &mut StdRng) -> Vec<Side> {
    m.components()
        .iter()
        .map(|c| {
            let ok = |side| {
                component_condition(&FixedComponent { side, ..c.clone() })
                    .unwrap()
                    .ok
            };
            match (ok(Side::Plus), ok(Side::Minus)) {
                (true, true) => {
                    if rng.gen_bool(0.5) {
                        Side::Plus
                    } else {
                        Side::Minus
                    }
                }
                (true, false) => Side::Plus,
                (false, true) => Side::Minus,
                (false, false) => panic!("no admissible side for {}", c.id),
            }
        })
        .collect()
}

fn random_cp1_product(rng: &mut StdRng) -> ManifoldModel {
    let factors = rng.gen_range(1..=3);
    let mut m = build_cp1(rng.gen_range(0..=6), TheoryKind::KTheory);
    for _ in 1..factors {
        m = build_product(&m, &build_cp1(rng.gen_range(0..=6), TheoryKind::KTheory)).unwrap();
    }
    m
}

fn c6_quantization(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for k in 0..=20 {
        let r = qr_check(&build_cp1(k, TheoryKind::KTheory)).unwrap();
        check(
            r.all_conditions_hold() && r.q_mred.is_one() && r.q_m0.is_one() && r.equal,
            &mut failures,
            || format!("CP1/O({k}): {r:?}"),
        );
    }
    for _ in 0..50 {
        let m = random_cp1_product(rng);
        let sides = admissible_sides(&m, rng);
        let r = qr_check(&m.with_sides(&sides)).unwrap();
        check(r.all_conditions_hold() && r.equal, &mut failures, || {
            format!(
                "{} with {sides:?}: qM0 = {}, qMred = {}",
                m.name(),
                r.q_m0,
                r.q_mred
            )
        });
    }
    let mut violating = 0;
    for _ in 0..100 {
        let m = random_cp1_product(rng);
        let sides: Vec<Side> = (0..m.components().len())
            .map(|_| {
                if rng.gen_bool(0.5) {
                    Side::Plus
                } else {
                    Side::Minus
                }
            })
            .collect();
        let r = qr_check(&m.with_sides(&sides)).unwrap();
        if !r.all_conditions_hold() {
            violating += 1;
        }
        check(
            &r.q_mred - &r.q_m0 == &r.defect_plus + &r.defect_minus,
            &mut failures,
            || format!("{} with {sides:?}: defect identity", m.name()),
        );
    }
    check(violating > 0, &mut failures, || {
        "no condition-violating assignment sampled".into()
    });
    finish(
        failures,
        &format!("CP1/O(k) k = 0..20; 50 admissible products; defect identity on 100 assignments ({violating} violating)"),
    )
}

fn c7_global_vanishing() -> Outcome {
    let mut failures = Vec::new();
    let mut models: Vec<ManifoldModel> = (0..=20)
        .map(|k| build_cp1(k, TheoryKind::KTheory))
        .collect();
    for n in 1..=4 {
        for k in 0..=3 {
            models.push(build_cpn(n, k));
        }
    }
    for (a, b) in [(0, 0), (1, 2), (3, 1), (2, 2)] {
        models.push(
            build_product(
                &build_cp1(a, TheoryKind::KTheory),
                &build_cp1(b, TheoryKind::KTheory),
            )
            .unwrap(),
        );
    }
    models.push(build_product(&build_cpn(2, 1), &build_cp1(1, TheoryKind::KTheory)).unwrap());
    for m in &models {
        for kind in [ResidueKind::Rho1, ResidueKind::Rho0Inf] {
            let ok = global_residue_vanishing(m, kind);
            check(matches!(ok, Ok(true)), &mut failures, || {
                format!("{} / {kind}: {ok:?}", m.name())
            });
        }
    }
    let mut borel = vec![ManifoldModel::new(
        TheoryKind::Borel,
        "two points",
        vec![
            FixedComponent::new(
                "p0",
                vec![1],
                LaurentPoly::monomial(q(1), 1),
                Side::Unassigned,
            ),
            FixedComponent::new(
                "p1",
                vec![-1],
                LaurentPoly::monomial(q(1), 1),
                Side::Unassigned,
            ),
        ],
    )
    .unwrap()];
    borel.extend((0..=10).map(|k| build_cp1(k, TheoryKind::Borel)));
    for m in &borel {
        let ok = global_residue_vanishing(m, ResidueKind::BorelRes);
        check(matches!(ok, Ok(true)), &mut failures, || {
            format!("{} / borel: {ok:?}", m.name())
        });
    }
    finish(
        failures,
        &format!(
            "{} K-theory models x 2 kinds; {} Borel two-point fixtures",
            models.len(),
            borel.len()
        ),
    )
}

fn c8_lemma_bound(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..100 {
        let deg = rng.gen_range(0..=8);
        let mut coeffs: Vec<Scalar> = (0..=deg).map(|_| rand_scalar(rng)).collect();
        for i in [0, deg] {
            while coeffs[i].is_zero() {
                coeffs[i] = rand_scalar(rng);
            }
        }
        let p = UniPoly::new(coeffs);
        let s = neg_expansion_bound(&p, 24).unwrap();
        let top = s.terms().iter().map(|(e, _)| *e).max();
        check(
            top.is_none_or(|t| t <= -(deg as i64)),
            &mut failures,
            || {
                format!(
                    "1/({}) has exponent {top:?} above -{deg}",
                    eqloc::algebra::RationalFunction::from_poly(p.clone())
                )
            },
        );
    }
    finish(failures, "100 random polynomials of degree <= 8")
}

/// Residue at zero of `a(u) / (prod m_j * u^d)` read off as a single coefficient.
fn kalkman_by_extraction(m: &ManifoldModel) -> Scalar {
    m.components()
        .iter()
        .map(|c| {
            let d = c.weights.len() as i64;
            let prod: i64 = c.weights.iter().product();
            c.restriction.coeff(d - 1) / q(prod)
        })
        .sum()
}

fn c9_kalkman(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..50 {
        let a = rand_poly(rng, 6);
        let m = ManifoldModel::new(
            TheoryKind::Borel,
            "hemisphere",
            vec![FixedComponent::new(
                "north",
                vec![1],
                LaurentPoly::from_poly(&a),
                Side::Plus,
            )],
        )
        .unwrap();
        let got = kappa(&m, ResidueKind::BorelRes).unwrap();
        let extracted = kalkman_by_extraction(&m);
        check(got == a.coeff(0) && got == extracted, &mut failures, || {
            format!(
                "a = {}: kappa = {got}, a(0) = {}, extracted = {extracted}",
                LaurentPoly::from_poly(&a),
                a.coeff(0)
            )
        });
    }
    // several points with several nonzero weights each
    for _ in 0..50 {
        let comps = (0..rng.gen_range(1..=3))
            .map(|i| {
                let weights = (0..rng.gen_range(1..=3))
                    .map(|_| {
                        if rng.gen_bool(0.5) {
                            rng.gen_range(1..=4)
                        } else {
                            -rng.gen_range(1..=4)
                        }
                    })
                    .collect();
                FixedComponent::new(
                    format!("p{i}"),
                    weights,
                    LaurentPoly::from_poly(&rand_poly(rng, 5)),
                    Side::Plus,
                )
            })
            .collect();
        let m = ManifoldModel::new(TheoryKind::Borel, "random", comps).unwrap();
        let got = kappa(&m, ResidueKind::BorelRes).unwrap();
        let extracted = kalkman_by_extraction(&m);
        check(got == extracted, &mut failures, || {
            format!("multi-weight: kappa = {got}, extracted = {extracted}")
        });
    }
    finish(
        failures,
        "50 hemispheres give a(0); 50 multi-point models match coefficient extraction",
    )
}

fn c10_sum_of_residues(rng: &mut StdRng) -> Outcome {
    let mut failures = Vec::new();
    for _ in 0..200 {
        let mut poles: Vec<Scalar> = Vec::new();
        while poles.len() < rng.gen_range(1..=4) {
            let a = rand_scalar(rng);
            if !poles.contains(&a) {
                poles.push(a);
            }
        }
        let den = poles.iter().fold(UniPoly::one(), |acc, a| {
            let factor = UniPoly::new(vec![-a.clone(), q(1)]);
            &acc * &factor.pow(rng.gen_range(1..=3))
        });
        let f = RationalFunction::normalize(rand_poly(rng, 8), den).unwrap();
        let total: Scalar =
            poles.iter().map(|a| residue_at(&f, a)).sum::<Scalar>() + residue_at_infinity(&f);
        check(total.is_zero(), &mut failures, || {
            format!("{f}: residues sum to {total}")
        });
    }
    finish(failures, "200 random functions with rational poles")
}

fn main() -> ExitCode {
    let mut rng = StdRng::seed_from_u64(0x5eed_2024);
    let criteria: Vec<(&str, Criterion)> = vec![
        ("C1 residue closed forms", Box::new(c1_residue_closed_forms)),
        ("C2 residue-map axioms", Box::new(c2_residue_axioms)),
        ("C3 agreement and disagreement", Box::new(c3_agreement)),
        (
            "C4 formal group law closed forms",
            Box::new(|_| c4_fgl_closed_forms()),
        ),
        ("C5 localization integrality", Box::new(c5_integrality)),
        (
            "C6 quantization commutes with reduction",
            Box::new(c6_quantization),
        ),
        (
            "C7 global residue vanishing",
            Box::new(|_| c7_global_vanishing()),
        ),
        ("C8 negative-expansion bound", Box::new(c8_lemma_bound)),
        ("C9 Kalkman specialization", Box::new(c9_kalkman)),
        ("C10 sum of residues", Box::new(c10_sum_of_residues)),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = std::time::Instant::now();
        match run(&mut rng) {
            Ok(detail) => println!("PASS  {name}: {detail} ({:.2?})", start.elapsed()),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {name}: {detail} ({:.2?})", start.elapsed());
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
