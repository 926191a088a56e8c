mod common;

use rand::Rng;
use twr_mec::inner::split_budget;
use twr_mec::partition::{
    candidate_given_pr, case_a_interior, case_b_interior, case_budget, interior_fixed_point, schedule_for_alpha,
    solve_given_pr, xi_gradient_case_a, xi_gradient_case_b, Case, CaseCoefficients, CandidateLabel,
};
use twr_mec::{check_feasible, ChannelRealization, SystemParams};

use common::{grid_partition_energy, random_channels, rng};

fn xi_at(p: &SystemParams, chan: &ChannelRealization, coeffs: &CaseCoefficients, alpha1: f64, case: Case) -> f64 {
    let inner = split_budget(case_budget(p, coeffs, alpha1, case), chan, p).unwrap();
    inner.offload_energy(p, chan).unwrap()
}

fn check_gradient(p: &SystemParams, chan: &ChannelRealization, pr: f64, alpha1: f64, case: Case) -> f64 {
    let coeffs = CaseCoefficients::new(p, chan, pr).unwrap();
    let inner = split_budget(case_budget(p, &coeffs, alpha1, case), chan, p).unwrap();
    let analytic = match case {
        Case::A => xi_gradient_case_a(p, chan, &inner, pr).unwrap(),
        Case::B => xi_gradient_case_b(p, chan, &inner, pr).unwrap(),
    };
    let h = 1e-5;
    let fd = (xi_at(p, chan, &coeffs, alpha1 + h, case) - xi_at(p, chan, &coeffs, alpha1 - h, case)) / (2.0 * h);
    ((analytic - fd) / fd).abs()
}

#[test]
fn xi_gradient_matches_finite_differences() {
    let mut rng = rng(21);
    let mut checked = [0usize; 2];
    while checked[0] + checked[1] < 60 {
        let chan = random_channels(&mut rng);
        let p = SystemParams::default().with_deadline(rng.gen_range(0.8..1.6));
        let pr = 10f64.powf(rng.gen_range(-3.0..0.5));
        let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
        let boundary = coeffs.boundary_alpha1();
        let case = if rng.gen_bool(0.5) { Case::A } else { Case::B };
        let (lo, hi) = match case {
            Case::A => (0.0, boundary),
            Case::B => (boundary, 1.0),
        };
        let alpha1 = rng.gen_range(lo + 0.02..hi - 0.02);
        if case_budget(&p, &coeffs, alpha1 + 1e-4, case) <= 0.05 || case_budget(&p, &coeffs, alpha1 - 1e-4, case) <= 0.05 {
            continue;
        }
        let rel = check_gradient(&p, &chan, pr, alpha1, case);
        assert!(rel < 1e-4, "case {case:?} alpha1 {alpha1} rel err {rel}");
        checked[(case == Case::B) as usize] += 1;
    }
}

#[test]
fn xi_gradient_signs_and_convexity() {
    let p = SystemParams::default();
    let chan = ChannelRealization::uniform(1000.0);
    let pr = 0.1;
    let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
    let b = coeffs.boundary_alpha1();
    for alpha1 in [0.05, 0.2, 0.4] {
        let inner = split_budget(case_budget(&p, &coeffs, alpha1, Case::A), &chan, &p).unwrap();
        assert!(xi_gradient_case_a(&p, &chan, &inner, pr).unwrap() < 0.0);
        let h = 1e-3;
        let second = xi_at(&p, &chan, &coeffs, alpha1 + h, Case::A) - 2.0 * xi_at(&p, &chan, &coeffs, alpha1, Case::A)
            + xi_at(&p, &chan, &coeffs, alpha1 - h, Case::A);
        assert!(second > 0.0);
    }
    // In case B the offload budget shrinks as alpha1 grows, so xi increases.
    for alpha1 in [b + 0.05, 0.8, 0.95] {
        let inner = split_budget(case_budget(&p, &coeffs, alpha1, Case::B), &chan, &p).unwrap();
        assert!(xi_gradient_case_b(&p, &chan, &inner, pr).unwrap() > 0.0);
    }
}

#[test]
fn interior_fixed_point_matches_envelope_condition() {
    // At a KKT split dxi/dtau_hat = -theta, so the stationary point of
    // xi + varphi (a1 L1 + a2 L2) has theta = 2 varphi / omega in case A and
    // theta = -varphi Fr / k in case B.
    let mut rng = rng(22);
    for _ in 0..40 {
        let chan = random_channels(&mut rng);
        let mut p = SystemParams::default().with_deadline(rng.gen_range(0.8..1.6));
        p.task_bits_2 = rng.gen_range(1.2e5..2.4e5);
        let pr = 10f64.powf(rng.gen_range(-3.0..1.0));
        let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
        let (case, theta_star) = if coeffs.varphi > 0.0 {
            (Case::A, 2.0 * coeffs.varphi / coeffs.omega)
        } else {
            (Case::B, -coeffs.varphi * p.cpu_relay / p.cycles_per_bit)
        };
        let (alpha1, theta) = interior_fixed_point(&p, &chan, &coeffs, case, 1e-3).unwrap();
        assert!(((theta - theta_star) / theta_star).abs() < 1e-8, "theta {theta} expected {theta_star}");
        // The unclipped alpha1 spends exactly the stationary budget.
        let stationary = twr_mec::inner::solution_at_theta(theta_star, &p, &chan).unwrap();
        let budget = case_budget(&p, &coeffs, alpha1, case);
        assert!(
            (budget - stationary.budget()).abs() < 1e-8 * stationary.budget(),
            "case {case:?} budget {budget} stationary {}",
            stationary.budget()
        );
    }
}

#[test]
fn case_a_candidate_matches_restricted_oracle() {
    let p = SystemParams::default();
    let chan = ChannelRealization::uniform(1000.0);
    let pr = 0.1;
    let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
    assert!(coeffs.varphi > 0.0);
    let c = candidate_given_pr(&p, &chan, pr, CandidateLabel::CaseAInterior).unwrap();
    let (oracle, _) = grid_partition_energy(&p, &chan, pr, (0.0, coeffs.boundary_alpha1()), 256, 256).unwrap();
    assert!(c.energy.total <= oracle * (1.0 + 1e-12));
    assert!(c.energy.total >= oracle * 0.99);
}

#[test]
fn case_b_candidate_matches_restricted_oracle() {
    for l2 in [1.8e5, 1.2e5, 2.6e5] {
        let mut p = SystemParams::default().with_deadline(0.7);
        p.task_bits_2 = l2;
        let chan = ChannelRealization::new(900.0, 1400.0, 1000.0, 1000.0).unwrap();
        let mut interior = 0;
        for i in 0..40 {
            let pr = 0.4 * 1.03f64.powi(i);
            let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
            if coeffs.varphi >= 0.0 {
                continue;
            }
            let lo = coeffs.boundary_alpha1().max(p.alpha1_min());
            let Ok(c) = candidate_given_pr(&p, &chan, pr, CandidateLabel::CaseBInterior) else {
                continue;
            };
            if c.alpha1 > lo + 1e-3 && c.alpha1 < 1.0 - 1e-3 {
                interior += 1;
            }
            let (oracle, _) = grid_partition_energy(&p, &chan, pr, (lo, 1.0), 256, 256).unwrap();
            assert!(c.energy.total <= oracle * (1.0 + 1e-12), "L2 {l2} Pr {pr}: {} vs {oracle}", c.energy.total);
            assert!(c.energy.total >= oracle * 0.99);
        }
        assert!(interior > 0, "L2 {l2}: no interior case-B optimum in the P_r scan");
    }
}

#[test]
fn unequal_tasks_case_a_matches_restricted_oracle() {
    for l2 in [1.2e5, 2.6e5] {
        let mut p = SystemParams::default().with_deadline(0.9);
        p.task_bits_2 = l2;
        let chan = ChannelRealization::new(900.0, 1400.0, 700.0, 1000.0).unwrap();
        let pr = 0.05;
        let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
        let lo = p.alpha1_min();
        let hi = coeffs.boundary_alpha1();
        assert!(coeffs.varphi > 0.0 && hi > lo);
        let c = candidate_given_pr(&p, &chan, pr, CandidateLabel::CaseAInterior).unwrap();
        let (oracle, _) = grid_partition_energy(&p, &chan, pr, (lo, hi), 512, 256).unwrap();
        assert!(c.energy.total <= oracle * (1.0 + 1e-12));
        assert!(c.energy.total >= oracle * 0.99);
    }
}

#[test]
fn vanishing_varphi_pushes_case_a_to_boundary() {
    let p = SystemParams::default();
    let chan = ChannelRealization::uniform(1000.0);
    // varphi(P_r) decreases in P_r; find P_r with varphi just above zero.
    let varphi = |pr: f64| CaseCoefficients::new(&p, &chan, pr).unwrap().varphi;
    let (mut lo, mut hi) = (1e-3f64, 10.0f64);
    for _ in 0..200 {
        let mid = (lo * hi).sqrt();
        if varphi(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let pr = lo;
    let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
    assert!(coeffs.varphi > 0.0 && coeffs.varphi < 1e-20);
    let alpha = case_a_interior(&p, &chan, pr, 1e-3).unwrap().unwrap();
    assert_eq!(alpha, coeffs.boundary_alpha1());
    // xi alone is minimized at the upper end of the case-A range.
    let xi = |a: f64| split_budget(case_budget(&p, &coeffs, a, Case::A), &chan, &p).unwrap().offload_energy(&p, &chan).unwrap();
    let grid_min = (0..=100)
        .map(|i| coeffs.boundary_alpha1() * i as f64 / 100.0)
        .min_by(|a, b| xi(*a).partial_cmp(&xi(*b)).unwrap())
        .unwrap();
    assert_eq!(grid_min, coeffs.boundary_alpha1());
}

#[test]
fn candidates_stay_on_their_side_of_the_boundary() {
    let mut rng = rng(23);
    for _ in 0..40 {
        let chan = random_channels(&mut rng);
        let p = SystemParams::default().with_deadline(rng.gen_range(0.7..1.6));
        let pr = 10f64.powf(rng.gen_range(-3.0..1.0));
        let coeffs = CaseCoefficients::new(&p, &chan, pr).unwrap();
        if let Ok(Some(a)) = case_a_interior(&p, &chan, pr, 1e-3) {
            assert!(a <= coeffs.boundary_alpha1());
            if let Ok((s, _, _)) = schedule_for_alpha(&p, &chan, pr, a) {
                let load = twr_mec::model::compute_times_and_energies(&p, s.alpha1, s.alpha2, s.tau3);
                assert!(load.t_user >= load.t_relay - 1e-9);
            }
        }
        if let Ok(Some(b)) = case_b_interior(&p, &chan, pr, 1e-3) {
            assert!(b >= coeffs.boundary_alpha1());
            if let Ok((s, _, _)) = schedule_for_alpha(&p, &chan, pr, b) {
                let load = twr_mec::model::compute_times_and_energies(&p, s.alpha1, s.alpha2, s.tau3);
                assert!(load.t_user <= load.t_relay + 1e-9);
            }
        }
    }
}

#[test]
fn solve_given_pr_beats_partition_grid() {
    let mut rng = rng(24);
    let mut compared = 0;
    while compared < 50 {
        let chan = random_channels(&mut rng);
        let p = SystemParams::default().with_deadline(rng.gen_range(0.7..1.6));
        let pr = 10f64.powf(rng.gen_range(-3.0..0.5));
        let Ok(best) = solve_given_pr(&p, &chan, pr) else {
            continue;
        };
        let (oracle, _) = grid_partition_energy(&p, &chan, pr, (0.0, 1.0), 128, 128).unwrap();
        assert!(best.energy.total <= oracle * 1.01);
        assert!(best.energy.total <= oracle * (1.0 + 1e-12), "{} vs grid {oracle}", best.energy.total);

        let s = best.schedule;
        assert!((s.total_duration() - p.deadline).abs() <= 1e-9 * p.deadline);
        assert!(((1.0 - s.alpha1) * p.task_bits_1 - (1.0 - s.alpha2) * p.task_bits_2).abs() <= 1e-12 * p.task_bits_1);
        assert!(check_feasible(&p, &chan, &s, 1e-9).is_feasible());
        for label in [CandidateLabel::AlphaZero, CandidateLabel::AlphaOne, CandidateLabel::AlphaPhiBoundary] {
            if let Ok(c) = candidate_given_pr(&p, &chan, pr, label) {
                assert!(best.energy.total <= c.energy.total);
            }
        }
        compared += 1;
    }
}

#[test]
fn relay_only_limits() {
    let p = SystemParams::default();
    let chan = ChannelRealization::uniform(1000.0);
    let c = candidate_given_pr(&p, &chan, 0.1, CandidateLabel::AlphaOne).unwrap();
    assert_eq!(c.schedule.tau3, 0.0);
    let load = twr_mec::model::compute_times_and_energies(&p, 1.0, 1.0, 0.0);
    assert_eq!(load.t_user, 0.0);
    assert!((c.schedule.tau4 - 0.6).abs() < 1e-12);

    // k (L1 + L2) / Fr = 0.6 s: nothing is feasible with alpha1 = 1 at T = 0.5 s.
    let tight = p.with_deadline(0.5);
    for pr in [1e-3, 0.1, 1.0] {
        assert!(candidate_given_pr(&tight, &chan, pr, CandidateLabel::AlphaOne).is_err());
    }
}
