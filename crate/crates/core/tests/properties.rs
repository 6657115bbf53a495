use std::f64::consts::PI;

use num_complex::Complex64;
use proptest::prelude::*;
use tripartite_core::catalog::{Party, TABLE_COUNT};
use tripartite_core::fidelity::FormProbe;
use tripartite_core::measurement::{
    bloch_state, pauli_eigenstates, BellOutcome, BlochAngles, CosenderBasis, CosenderOutcome,
};
use tripartite_core::protocol::{run_all, BranchMaps};
use tripartite_core::qcore::{Pauli, StateVector};
use tripartite_core::{
    average_quadrature, average_two_design, best_condition, extract_form, CorrectionTable, CosenderSetting,
    FidelityForm, QuadratureRule, RoleAssignment, Scenario, StateTypeId,
};

fn state_tag() -> impl Strategy<Value = StateTypeId> {
    prop::sample::select(StateTypeId::ALL.to_vec())
}

fn roles() -> impl Strategy<Value = RoleAssignment> {
    prop::sample::select(RoleAssignment::all())
}

fn scenario() -> impl Strategy<Value = Scenario> {
    (state_tag(), roles()).prop_map(|(s, r)| Scenario::new(s, r))
}

fn table() -> impl Strategy<Value = CorrectionTable> {
    (0..TABLE_COUNT).prop_map(|c| CorrectionTable::from_code(c).unwrap())
}

fn angles() -> impl Strategy<Value = (f64, f64)> {
    (0.0..PI, 0.0..2.0 * PI)
}

fn pauli() -> impl Strategy<Value = Pauli> {
    prop::sample::select(Pauli::ALL.to_vec())
}

fn random_state(n: usize) -> impl Strategy<Value = StateVector> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 1 << n)
        .prop_filter("nonzero", |v| v.iter().any(|(a, b)| a.abs() + b.abs() > 1e-3))
        .prop_map(move |v| {
            let amps = v.into_iter().map(|(re, im)| Complex64::new(re, im)).collect();
            StateVector::new(n, amps).unwrap().normalized().unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn branch_probabilities_sum_to_one(s in scenario(), t in table(), (nu, kappa) in angles(), (th, ph) in angles()) {
        let info = bloch_state(BlochAngles::new(th, ph));
        let setting = CosenderBasis::new(nu, kappa).into();
        let total: f64 = run_all(&info, &s, &setting, &t).unwrap().iter().map(|r| r.probability).sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn probabilities_do_not_depend_on_corrections(s in scenario(), t in table(), (nu, kappa) in angles(), (th, ph) in angles()) {
        let info = bloch_state(BlochAngles::new(th, ph));
        let setting = CosenderBasis::new(nu, kappa).into();
        let a = run_all(&info, &s, &setting, &t).unwrap();
        let b = run_all(&info, &s, &setting, &CorrectionTable::uniform(Pauli::I)).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.probability - y.probability).abs() < 1e-14);
        }
    }

    #[test]
    fn fidelity_lies_in_unit_interval(s in scenario(), t in table(), (nu, kappa) in angles(), (th, ph) in angles()) {
        let info = bloch_state(BlochAngles::new(th, ph));
        let setting: CosenderSetting = CosenderBasis::new(nu, kappa).into();
        let f = tripartite_core::pointwise_fidelity(&info, &s, &setting, &t).unwrap();
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&f));
        for r in run_all(&info, &s, &setting, &t).unwrap() {
            prop_assert!((0.0..=1.0).contains(&r.branch_fidelity));
        }
    }

    #[test]
    fn averaging_routes_agree(s in scenario(), t in table(), (nu, kappa) in angles()) {
        let setting = CosenderBasis::new(nu, kappa).into();
        let quad = average_quadrature(&s, &t, &setting, QuadratureRule::default()).unwrap();
        let design = average_two_design(&s, &t, &setting).unwrap();
        let form = extract_form(&s, &t).unwrap().eval(nu, kappa);
        prop_assert!((quad - design).abs() < 1e-10);
        prop_assert!((quad - form).abs() < 1e-10);
    }

    #[test]
    fn form_is_additive_over_cells(s in scenario(), t in table(), p in pauli(), (nu, kappa) in angles()) {
        // replacing one cell shifts F by that cell's own change, whatever the other cells hold
        let probe = FormProbe::new(&s).unwrap();
        let mut u = t;
        u.cells[1][2] = p;
        let mut w = CorrectionTable::uniform(Pauli::I);
        w.cells[1][2] = p;
        let mut x = CorrectionTable::uniform(Pauli::I);
        x.cells[1][2] = t.cells[1][2];
        let f = |t: &CorrectionTable| probe.form(t).unwrap().eval(nu, kappa);
        prop_assert!((f(&u) - f(&t) - (f(&w) - f(&x))).abs() < 1e-10);
    }

    #[test]
    fn best_condition_dominates(a in -1.0f64..1.0, b in -1.0f64..1.0, c in -1.0f64..1.0, d in -1.0f64..1.0, (nu, kappa) in angles()) {
        let form = FidelityForm::new(a, b, c, d);
        let best = best_condition(&form);
        prop_assert!(form.eval(nu, kappa) <= best.f_max + 1e-12);
        prop_assert!((form.eval(best.nu_star, best.kappa_star) - best.f_max).abs() < 1e-12);
        prop_assert!((0.0..PI).contains(&best.nu_star));
        prop_assert!((0.0..2.0 * PI).contains(&best.kappa_star));
    }

    #[test]
    fn form_is_periodic(s in scenario(), t in table(), (nu, kappa) in angles()) {
        let form = extract_form(&s, &t).unwrap();
        let f = form.eval(nu, kappa);
        prop_assert!((form.eval(nu + PI, kappa) - f).abs() < 1e-12);
        prop_assert!((form.eval(nu, kappa + 2.0 * PI) - f).abs() < 1e-12);
    }

    #[test]
    fn phase_free_products_give_matrix_product_fidelity(s in scenario(), p in pauli(), q in pauli(), (th, ph) in angles()) {
        let maps = BranchMaps::new(&s, &CosenderBasis::new(0.4, 1.3).into()).unwrap();
        let info = bloch_state(BlochAngles::new(th, ph));
        let psi = [info.amp(0), info.amp(1)];
        for j in BellOutcome::ALL {
            for k in CosenderOutcome::ALL {
                let tau = p.matrix().mul(&q.matrix()).apply(maps.map(j, k).apply(psi));
                let direct = (psi[0].conj() * tau[0] + psi[1].conj() * tau[1]).norm_sqr();
                prop_assert!((maps.cell_fidelity(psi, j, k, p.product(q)) - direct).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn pauli_products_match_matrices_up_to_phase(p in pauli(), q in pauli()) {
        let m = p.matrix().mul(&q.matrix());
        let r = p.product(q).matrix();
        let phases = [Complex64::new(1.0, 0.0), Complex64::new(-1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(0.0, -1.0)];
        prop_assert!(phases.iter().any(|c| m.max_diff(&r.scaled(*c)) < 1e-15));
        prop_assert!(p.matrix().is_unitary(1e-15));
    }

    #[test]
    fn projection_undoes_tensor(a in random_state(1), b in random_state(3)) {
        // ⟨a|₀ (a ⊗ b) = b when a is normalized
        let joint = a.tensor(&b).unwrap();
        let back = joint.project_single(&a, 0).unwrap();
        for (x, y) in back.amps().iter().zip(b.amps()) {
            prop_assert!((x - y).norm() < 1e-12);
        }
    }

    #[test]
    fn single_qubit_unitaries_preserve_norm(s in random_state(3), p in pauli(), target in 0usize..3) {
        let out = s.apply_single(&p.matrix(), target).unwrap();
        prop_assert!((out.norm2() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn eigenstates_reproduce_sphere_average_of_quadratics(re in prop::array::uniform4(-1.0f64..1.0), im in prop::array::uniform4(-1.0f64..1.0)) {
        let m: Vec<Complex64> = re.iter().zip(&im).map(|(r, i)| Complex64::new(*r, *i)).collect();
        // |⟨ψ|M|ψ⟩|² averaged over the sphere is (|tr M|² + tr M†M)/6
        let quad = |psi: [Complex64; 2]| {
            let mpsi = [m[0] * psi[0] + m[1] * psi[1], m[2] * psi[0] + m[3] * psi[1]];
            (psi[0].conj() * mpsi[0] + psi[1].conj() * mpsi[1]).norm_sqr()
        };
        let design: f64 = pauli_eigenstates().iter().map(|s| quad([s.amp(0), s.amp(1)])).sum::<f64>() / 6.0;
        let tr = m[0] + m[3];
        let hs: f64 = m.iter().map(|z| z.norm_sqr()).sum();
        prop_assert!((design - (tr.norm_sqr() + hs) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn symmetric_states_ignore_role_assignment(t in table(), (nu, kappa) in angles()) {
        // GHZ and W are invariant under any qubit permutation
        for state in [StateTypeId::T2b, StateTypeId::WStd] {
            for r in RoleAssignment::all() {
                let s = Scenario::new(state, r);
                let relabeled = Scenario::new(state, RoleAssignment::new(Party::A, Party::B, Party::C).unwrap());
                let f1 = extract_form(&s, &t).unwrap().eval(nu, kappa);
                let f2 = extract_form(&relabeled, &t).unwrap().eval(nu, kappa);
                prop_assert!((f1 - f2).abs() < 1e-10);
            }
        }
    }
}
