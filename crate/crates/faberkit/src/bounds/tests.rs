use super::*;
use crate::ensembles::{self, Draw};
use num_complex::Complex;
use std::f64::consts::PI;

fn cplx(re: f64, im: f64) -> num_complex::Complex<f64> {
    num_complex::Complex::new(re, im)
}

fn disk32() -> DomainE<f64> {
    DomainE::convex(ConvexBase::disk(cplx(3.0, 0.0), 2.0).unwrap())
}

fn lens_0512() -> DomainE<f64> {
    DomainE::lens(0.5, 1.0, 3.0, 2.0).unwrap()
}

/// Normal matrix with eigenvalues drawn uniformly from a safe sub-region of
/// the lens (right half, clear of the cut and the outer boundary).
fn lens_admissible_normal(n: usize, seed: u64) -> Mat<f64> {
    let lens = lens_0512();
    let mut draw = Draw::seeded(seed);
    let mut eigs = Vec::with_capacity(n);
    while eigs.len() < n {
        let x = 1.8 + 2.8 * draw.uniform::<f64>();
        let y = -1.2 + 2.4 * draw.uniform::<f64>();
        let z = cplx(x, y);
        if lens.contains(z) && lens.boundary_distance(z).unwrap() > 0.25 {
            eigs.push(z);
        }
    }
    ensembles::normal_with_spectrum(&eigs, seed ^ 0xabc)
}

#[test]
fn lemma3_is_two_for_convex_enclosure() {
    let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
    let quad = boundary_quadrature(&dom, 512).unwrap();
    let eigs = [cplx(0.4, 0.3), cplx(-0.5, -0.2), cplx(0.2, -0.6), cplx(0.0, 0.1)];
    let a = ensembles::normal_with_spectrum(&eigs, 3);
    let bound = lemma3_bound(&a, &dom, &quad).unwrap();
    assert!((bound - 2.0).abs() < 1e-8, "bound {bound}");
}

#[test]
fn lemma3_respects_cut_budget() {
    // case (a) configuration on the lens: integral of alpha_- <= theta0/pi,
    // so the bound stays below 1 + v(E)
    let lens = lens_0512();
    let quad = boundary_quadrature(&lens, 512).unwrap();
    let a = lens_admissible_normal(5, 41);
    let bound = lemma3_bound(&a, &lens, &quad).unwrap();
    let v = v_of(&lens).unwrap();
    assert!(bound <= 1.0 + v + 1e-6, "bound {bound} vs {}", 1.0 + v);
    assert!(bound >= 2.0 - 1e-9);
}

#[test]
fn theorem_case_a_holds_on_lens() {
    let lens = lens_0512();
    for seed in [7u64, 8, 9] {
        let a = lens_admissible_normal(6, seed);
        let reports = theorem_check(&a, &lens, TheoremCase::NormCondition, &[1, 5, 10, 15]).unwrap();
        for rep in &reports {
            assert!(rep.preconditions.all_hold(), "seed {seed}: {:?}", rep.preconditions);
            assert!(rep.passed, "seed {seed} n={}", rep.n);
            let norm = rep.norm_fn_a.unwrap();
            assert!(norm <= 1.0 + rep.v + 1e-6, "seed {seed} n={}: {norm}", rep.n);
        }
    }
}

#[test]
fn theorem_case_b_holds_on_lens() {
    let lens = lens_0512();
    for seed in [21u64, 22] {
        let a = lens_admissible_normal(5, seed);
        let reports = theorem_check(&a, &lens, TheoremCase::NumericalRadiusCondition, &[1, 6, 12]).unwrap();
        for rep in &reports {
            assert!(rep.preconditions.all_hold());
            assert!(rep.passed);
            assert!(rep.norm_fn_a.unwrap() <= 2.0 * rep.v + 1e-6);
        }
    }
}

#[test]
fn theorem_flags_violated_preconditions_without_failing() {
    let lens = lens_0512();
    // spectrum partly inside the cut disk: resolvent condition fails
    let eigs = [cplx(1.2, 0.0), cplx(3.0, 0.5), cplx(4.0, -0.3)];
    let a = ensembles::normal_with_spectrum(&eigs, 5);
    let reports = theorem_check(&a, &lens, TheoremCase::NormCondition, &[3]).unwrap();
    let rep = &reports[0];
    assert!(!rep.preconditions.resolvent_condition || !rep.preconditions.spectrum_inside);
    // no assertion was armed, so the report does not fail
    assert!(rep.passed);
}

#[test]
fn theorem_rejects_plain_convex_domains() {
    let a = Mat::<f64>::identity(3);
    assert!(matches!(
        theorem_check(&a, &disk32(), TheoremCase::NormCondition, &[1]),
        Err(Error::UnsupportedDomain(_))
    ));
}

#[test]
fn theorem_bound_only_mode_for_disk_cut() {
    // disk-cut domains have no closed-form map: only the alpha_- route reports
    let base = ConvexBase::disk(cplx(3.0, 0.0), 2.0).unwrap();
    let cut = DomainE::disk_cut(base, cplx(0.5, 0.0), 1.0).unwrap();
    let a = lens_admissible_normal(4, 61); // same geometry as the lens
    let reports = theorem_check(&a, &cut, TheoremCase::NormCondition, &[2, 7]).unwrap();
    for rep in &reports {
        assert!(rep.norm_fn_a.is_none());
        assert!(rep.gamma.is_none());
        let l3 = rep.bound_lemma3.expect("lemma3 available when spectrum inside");
        assert!(rep.preconditions.all_hold());
        assert!(l3 <= rep.bound_theorem + 1e-6);
        assert!(rep.passed);
    }
}

#[test]
fn est6bis_disk_normal_matrix_closed_form() {
    // A = diag(2, 3, 4) on Disk(3, 2): middle = max_i |((l_i - 3)/2)^4| / (3/2)^4
    let dom = disk32();
    let a = Mat::diag(&[cplx(2.0, 0.0), cplx(3.0, 0.0), cplx(4.0, 0.0)]);
    let est = est6bis_bound(&a, &dom, 4).unwrap();
    let expect = (0.5f64 / 1.5).powi(4);
    assert!((est.middle - expect).abs() < 1e-10, "middle {} vs {expect}", est.middle);
    assert!((est.gamma - 2.0 / 3.0).abs() < 1e-14);
    let right = est.right.unwrap();
    assert!(est.middle <= right + 1e-10);
}

#[test]
fn est6bis_middle_below_right_when_applicable() {
    let lens = lens_0512();
    let a = lens_admissible_normal(6, 77);
    for n in 1..=10 {
        let est = est6bis_bound(&a, &lens, n).unwrap();
        if let Some(right) = est.right {
            assert!(est.middle <= right + 1e-6 * right.max(1.0), "n={n}");
        }
    }
}

#[test]
fn est6bis_right_form_guard_matches_damping_sign() {
    // a lens hugging the origin keeps gamma close to 1, so small degrees are
    // not applicable while large ones are
    let lens = DomainE::lens(-0.9, 1.0, 1.1, 1.5).unwrap();
    let map = build_map(&lens).unwrap();
    let g = gamma(&map).unwrap();
    let v = v_of(&lens).unwrap();
    let eigs = [cplx(1.4, 0.0), cplx(1.8, 0.3), cplx(1.6, -0.4)];
    let a = ensembles::normal_with_spectrum(&eigs, 2);
    for n in 0..14 {
        let est = est6bis_bound(&a, &lens, n).unwrap();
        let applicable = g.powi(n as i32 + 1) * v < 1.0;
        assert_eq!(est.right.is_some(), applicable, "n={n} gamma={g} v={v}");
    }
}

#[test]
fn est6bis_rejects_origin_inside() {
    let dom = DomainE::convex(ConvexBase::disk(cplx(0.0, 0.0), 2.0).unwrap());
    let a = Mat::diag(&[cplx(0.5, 0.0)]);
    assert!(matches!(est6bis_bound(&a, &dom, 2), Err(Error::DomainContainsOrigin)));
}

#[test]
fn corollary_bound_is_twice_v() {
    let lens = lens_0512();
    let ang = lens_angles(&lens).unwrap();
    let bound = 2.0 + 4.0 * ang.theta0 / PI;
    assert!((bound - 3.0995).abs() < 1e-3);
    // exact identity with 2 v(E): doubling is exact in binary arithmetic
    assert_eq!(bound, 2.0 * v_of(&lens).unwrap());
    let a = lens_admissible_normal(5, 33);
    let reports = corollary_bound(&a, &lens, &[1, 4, 9]).unwrap();
    for rep in &reports {
        assert!(rep.preconditions.all_hold());
        assert!(rep.passed);
        assert_eq!(rep.bound_theorem, bound);
        let g = rep.gamma.unwrap();
        assert!((g - lens_gamma_closed_form(&ang)).abs() < 1e-15);
        assert!(rep.norm_fn_a.unwrap() <= bound + 1e-6);
    }
}

#[test]
fn chebyshev_disk_recovers_faber_quotient() {
    let dom = disk32();
    let map = build_map(&dom).unwrap();
    let gamma3 = (2.0f64 / 3.0).powi(3);
    let (delta, p) = constrained_chebyshev(&dom, &map, 3, 256, 300).unwrap();
    assert!((delta - gamma3).abs() <= 1e-4 * gamma3, "delta {delta} vs {gamma3}");
    let eval = |z: Complex<f64>| p.iter().rev().fold(Complex::new(0.0, 0.0), |acc, &c| acc * z + c);
    // p(0) = 1 by construction
    assert!((eval(Complex::new(0.0, 0.0)) - Complex::new(1.0, 0.0)).norm() < 1e-10);
    // the optimal polynomial is F_3 / F_3(0) = ((z-3)/(-3))^3
    for t in 0..8 {
        let z = cplx(3.0, 0.0) + 2.0 * Complex::new((t as f64).cos(), (t as f64).sin());
        let want = ((z - 3.0) / (-3.0)).powi(3);
        assert!((eval(z) - want).norm() < 1e-3, "z={z}");
    }
}

#[test]
fn chebyshev_degree_zero_is_trivial() {
    let dom = disk32();
    let map = build_map(&dom).unwrap();
    let (delta, p) = constrained_chebyshev(&dom, &map, 0, 64, 10).unwrap();
    assert_eq!(delta, 1.0);
    assert_eq!(p.len(), 1);
}

#[test]
fn chebyshev_sandwich_on_lens() {
    let lens = lens_0512();
    let map = build_map(&lens).unwrap();
    let g = gamma(&map).unwrap();
    let v = v_of(&lens).unwrap();
    for n in 1..=4 {
        let (delta, _) = constrained_chebyshev(&lens, &map, n, 320, 400).unwrap();
        let lower = g.powi(n as i32);
        assert!(delta >= lower - 1e-6, "n={n}: {delta} < {lower}");
        let damping = 1.0 - g.powi(n as i32 + 1) * v;
        if damping > 0.0 {
            let upper = g.powi(n as i32) * (1.0 + v) / damping;
            assert!(delta <= upper + 1e-6, "n={n}: {delta} > {upper}");
        }
    }
}

#[test]
fn chebyshev_dominated_by_est6bis_for_boundary_spectra() {
    // normal A with eigenvalues hugging the boundary: the middle form of the
    // est6bis chain dominates the set-level optimum up to 1%
    let dom = disk32();
    let map = build_map(&dom).unwrap();
    let eigs: Vec<Complex<f64>> = (0..24)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / 24.0;
            cplx(3.0, 0.0) + 1.9955 * Complex::new(t.cos(), t.sin())
        })
        .collect();
    let a = ensembles::normal_with_spectrum(&eigs, 13);
    for n in 1..=3 {
        let est = est6bis_bound(&a, &dom, n).unwrap();
        let (delta, _) = constrained_chebyshev(&dom, &map, n, 256, 300).unwrap();
        assert!(est.middle >= delta * 0.99, "n={n}: middle {} vs delta {delta}", est.middle);
    }
}

#[test]
fn gmres_identity_converges_in_one_step() {
    let a = Mat::<f64>::identity(5);
    let mut draw = Draw::seeded(1);
    let b = draw.unit_vector::<f64>(5);
    let trace = gmres_run(&a, &b, 5).unwrap();
    assert!((trace.residual_norms[0] - 1.0).abs() < 1e-14);
    assert!(trace.residual_norms[1] <= 1e-13);
}

#[test]
fn gmres_residuals_monotone() {
    for seed in 0..10u64 {
        let a: Mat<f64> = ensembles::generate(ensembles::Family::RandomDense, 12, seed);
        let a = a.add(&Mat::identity(12)); // keep it comfortably nonsingular
        let mut draw = Draw::seeded(seed + 500);
        let b = draw.unit_vector::<f64>(12);
        let trace = gmres_run(&a, &b, 12).unwrap();
        for w in trace.residual_norms.windows(2) {
            assert!(w[1] <= w[0] + 1e-12, "seed {seed}: {:?}", trace.residual_norms);
        }
    }
}

#[test]
fn gmres_residuals_below_est6bis_bound() {
    let dom = disk32();
    let mut draw = Draw::seeded(40);
    let eigs: Vec<Complex<f64>> = (0..8)
        .map(|_| {
            let r = 1.7 * draw.uniform::<f64>().sqrt();
            let t = 2.0 * PI * draw.uniform::<f64>();
            cplx(3.0, 0.0) + r * Complex::new(t.cos(), t.sin())
        })
        .collect();
    let a = ensembles::normal_with_spectrum(&eigs, 88);
    let b = draw.unit_vector::<f64>(8);
    let trace = gmres_run(&a, &b, 8).unwrap();
    let bnorm = 1.0;
    for n in 1..trace.residual_norms.len() {
        let est = est6bis_bound(&a, &dom, n).unwrap();
        assert!(
            trace.residual_norms[n] <= est.middle * bnorm + 1e-8,
            "n={n}: {} vs {}",
            trace.residual_norms[n],
            est.middle
        );
    }
}

#[test]
fn elman_limit_gap_shrinks_monotonically() {
    for beta in [PI / 6.0, PI / 4.0, PI / 3.0] {
        let c0s = [-10.0, -100.0, -1000.0, -10000.0];
        let steps = elman_limit_check(beta, 1.0, &c0s).unwrap();
        for w in steps.windows(2) {
            assert!(w[1].gap < w[0].gap, "beta={beta}: gaps {:?}", steps.iter().map(|s| s.gap).collect::<Vec<_>>());
            assert!(w[1].theta0 < w[0].theta0);
        }
        let last = steps.last().unwrap();
        assert!(last.gap <= 1e-3, "beta={beta}: final gap {}", last.gap);
        assert!((last.arg_a - beta).abs() <= 1e-3);
        assert!(last.theta0 < 1e-3);
        // the numeric gamma agrees with the closed form along the sweep
        for s in &steps {
            assert!((s.gamma_closed - s.gamma_numeric).abs() < 1e-10);
        }
    }
}

#[test]
fn elman_limit_validates_input() {
    assert!(elman_limit_check(PI / 4.0, 1.0, &[-10.0, -5.0]).is_err());
    assert!(elman_limit_check(2.0, 1.0, &[-10.0, -100.0]).is_err());
    assert!(elman_limit_check(PI / 4.0, 1.0, &[1.0, -10.0]).is_err());
}
