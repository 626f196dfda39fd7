mod common;

use std::sync::Arc;

use common::{cc, charge_sets, mono, vec_of};
use w22_core::algebra::{Family, Mode};
use w22_core::embedding::{
    branch, contragredient_check, is_singular, psi_map, v_r_minus, verify_w22_relations,
    verma_branch_decomposition, w_closure_dims, w_mode, PsiModel,
};
use w22_core::model::{GradedModel, Submodule};
use w22_core::rational::{frac, int};
use w22_core::series::p2;
use w22_core::verma::{find_singular, maximal_submodule_generators, HighestWeightSpec};
use w22_core::Error;

#[test]
fn w_modes_on_highest_weight_vectors() {
    let c = cc();
    let hi = frac(2, 3);
    let v = HighestWeightSpec::hv(c.clone(), frac(1, 5), hi.clone()).verma();
    let hw = mono(Family::I, &[], &[]);
    let hw_w = &hi * (&hi - int(2) * c.c_li());
    assert_eq!(w_mode(&*v, 0, &hw).unwrap(), hw.scaled(&hw_w));
    assert_eq!(
        w_mode(&*v, -1, &hw).unwrap(),
        mono(Family::I, &[1], &[]).scaled(&(int(2) * &hi))
    );
    for n in 1..=3 {
        assert!(w_mode(&*v, n, &hw).unwrap().is_zero());
    }
    let vac = HighestWeightSpec::hv(c.clone(), int(0), int(0)).verma();
    let want = vec_of(&[
        (int(1), mono(Family::I, &[1, 1], &[])),
        (int(2) * c.c_li(), mono(Family::I, &[2], &[])),
    ]);
    assert_eq!(w_mode(&*vac, -2, &hw).unwrap(), want);
}

#[test]
fn relations_hold_and_perturbation_is_witnessed() {
    for c in charge_sets() {
        let host: Arc<dyn GradedModel> =
            HighestWeightSpec::hv(c.clone(), frac(-3, 7), frac(5, 4)).verma();
        assert!(verify_w22_relations(host.clone(), 4, c.c_w())
            .unwrap()
            .passed());
        let bad = verify_w22_relations(host, 4, &(c.c_w() + int(1))).unwrap();
        assert!(bad.witness.is_some());
    }
}

#[test]
fn l2_w_minus_two_on_hw() {
    let c = cc();
    let hi = frac(-4, 3);
    let v = HighestWeightSpec::hv(c.clone(), frac(1, 2), hi.clone()).verma();
    let psi = PsiModel::new(v).unwrap();
    let hw = mono(Family::I, &[], &[]);
    let lw = psi
        .act(Mode::l(2), &psi.act(Mode::w(-2), &hw).unwrap())
        .unwrap();
    let hw_w = &hi * (&hi - int(2) * c.c_li());
    assert_eq!(lw, hw.scaled(&(int(4) * hw_w + c.c_w() / int(2))));
    assert!(psi.act(Mode::i(-1), &hw).is_err());
}

#[test]
fn psi_examples() {
    let c = cc();
    let target = HighestWeightSpec::hv(c.clone(), int(0), int(0));
    let source = target.to_w22();
    let hw = mono(Family::W, &[], &[]);
    assert_eq!(
        psi_map(&hw, &source, &target).unwrap(),
        mono(Family::I, &[], &[])
    );
    assert_eq!(
        psi_map(&mono(Family::W, &[], &[1]), &source, &target).unwrap(),
        mono(Family::I, &[], &[1])
    );
    assert!(psi_map(&mono(Family::W, &[1], &[]), &source, &target)
        .unwrap()
        .is_zero());
    let wrong = HighestWeightSpec::w22(c.clone(), int(1), int(0));
    assert!(matches!(
        psi_map(&hw, &wrong, &target),
        Err(Error::IncompatibleWeights(_))
    ));
}

#[test]
fn psi_and_maximal_submodules() {
    let c = cc();
    let n = 4;
    let minus = HighestWeightSpec::hv(c.clone(), int(0), int(0));
    let hv_max = Submodule::generated(
        minus.verma(),
        &maximal_submodule_generators(&minus, n).unwrap(),
    )
    .unwrap();
    for y in maximal_submodule_generators(&minus.to_w22(), n).unwrap() {
        assert!(
            hv_max.contains(&psi_map(&y, &minus.to_w22(), &minus).unwrap()),
            "{y}"
        );
    }
    let plus = HighestWeightSpec::hv(c.clone(), int(0), int(2) * c.c_li());
    let hv_max = Submodule::generated(
        plus.verma(),
        &maximal_submodule_generators(&plus, n).unwrap(),
    )
    .unwrap();
    let u1 = mono(Family::W, &[], &[1]);
    assert!(!hv_max.contains(&psi_map(&u1, &plus.to_w22(), &plus).unwrap()));
}

#[test]
fn branch_reports() {
    let c = cc();
    let cli = c.c_li().clone();
    let t = branch(
        &HighestWeightSpec::hv(c.clone(), frac(1, 3), &cli / int(3)),
        5,
    )
    .unwrap();
    assert!(t.passed());
    assert!(t.certificates.is_empty());
    assert_eq!(t.host_dims, [1, 2, 5, 10, 20, 36]);
    let json = serde_json::to_value(&t).unwrap();
    assert_eq!(json["atypicality"]["classification"], "typical");
    assert_eq!(json["certificates"], serde_json::json!([]));

    let plus = branch(&HighestWeightSpec::hv(c.clone(), int(0), int(2) * &cli), 5).unwrap();
    assert_eq!(plus.submodule_dims, [0, 1, 1, 3, 5, 10]);
    assert_eq!(plus.quotient_dims, [1, 0, 2, 2, 5, 6]);
    assert!(plus.passed() && plus.dims_consistent());
    let minus = branch(&HighestWeightSpec::hv(c.clone(), int(0), int(0)), 5).unwrap();
    assert_eq!(minus.submodule_dims, [1, 0, 2, 2, 5, 6]);
    assert_eq!(minus.quotient_dims, [0, 1, 1, 3, 5, 10]);
    assert!(minus.passed() && minus.dims_consistent());
}

#[test]
fn contragredient_duality() {
    let c = cc();
    let cli = c.c_li().clone();
    for p in 1..=3i64 {
        let r = contragredient_check(
            &HighestWeightSpec::hv(c.clone(), frac(2, 5), int(1 + p) * &cli),
            5,
        )
        .unwrap();
        assert!(r.passed(), "p = {p}: {r:?}");
        assert_eq!(r.dual.second(), &(int(1 - p) * &cli));
    }
    let r = contragredient_check(
        &HighestWeightSpec::hv(c.clone(), frac(2, 5), &cli / int(3)),
        4,
    )
    .unwrap();
    assert_eq!(r.dims, [1, 2, 5, 10, 20]);
    assert!(r.passed());
    let w = HighestWeightSpec::w22(c.clone(), int(0), int(0));
    assert_eq!(w.dual(), w);
}

#[test]
fn decomposition() {
    let c = cc();
    let d = verma_branch_decomposition(frac(1, 3), 1, &c, 6).unwrap();
    assert!(d.passed(), "{d:?}");
    assert_eq!(
        d.dim_sums,
        (0..=6).map(|n| p2(n) as usize).collect::<Vec<_>>()
    );
    assert!(d.chain.iter().all(|e| e.h_singular && e.w_singular));
    assert_eq!(d.chain[1].closure_dims, [0, 1, 1, 3, 5, 10, 16]);
    assert!(matches!(
        verma_branch_decomposition(int(0), 1, &c, 4),
        Err(Error::Atypical(_))
    ));
}

#[test]
fn atypical_closures_nest() {
    let c = cc();
    let v: Arc<dyn GradedModel> = HighestWeightSpec::hv(c.clone(), int(0), int(0)).verma();
    let (top, _) = w_closure_dims(v.clone(), &[mono(Family::I, &[], &[])], 5).unwrap();
    let (inner, dims) = w_closure_dims(v, &[mono(Family::I, &[], &[1])], 5).unwrap();
    for n in 0..=5 {
        for x in inner.basis(n).unwrap() {
            assert!(top.contains(&x));
        }
    }
    assert!(dims.iter().sum::<usize>() > 0);
}

#[test]
fn v_r_minus_products() {
    let c = cc();
    let (spec, x) = v_r_minus(1, &c).unwrap();
    assert_eq!(spec, HighestWeightSpec::hv(c.clone(), int(0), int(0)));
    assert_eq!(x, mono(Family::I, &[], &[1]));
    for r in 1..=4 {
        let (spec, x) = v_r_minus(r, &c).unwrap();
        assert!(is_singular(&*spec.verma(), &x).unwrap(), "r = {r}");
        let found = find_singular(&spec, r).unwrap();
        assert_eq!(found, vec![x.normalized()], "r = {r}");
    }
    assert!(v_r_minus(0, &c).is_err());
}

// With the i = 0 factor applied last the product is not annihilated.
#[test]
fn v_r_minus_factor_order_matters() {
    let c = cc();
    let (spec, _) = v_r_minus(2, &c).unwrap();
    let v = spec.verma();
    let mut x = mono(Family::I, &[], &[]);
    for i in (0..2i64).rev() {
        let a = int(-1 + 2 * i) / (int(2) * c.c_li());
        let mut next = v.apply_mode(Mode::l(-1), &x).unwrap();
        next.add_scaled(&a, &v.apply_mode(Mode::i(-1), &x).unwrap());
        x = next;
    }
    assert!(!is_singular(&*v, &x).unwrap());
}

#[test]
fn h_singular_implies_w_singular() {
    let c = cc();
    let cli = c.c_li().clone();
    for p in 1..=3i64 {
        for sign in [-1, 1] {
            let spec = HighestWeightSpec::hv(c.clone(), frac(3, 11), int(1 + sign * p) * &cli);
            let psi = PsiModel::new(spec.verma()).unwrap();
            for n in 1..=4 {
                for x in find_singular(&spec, n).unwrap() {
                    assert!(
                        is_singular(&psi, &x).unwrap(),
                        "{} level {n}",
                        spec.describe()
                    );
                }
            }
        }
    }
}
