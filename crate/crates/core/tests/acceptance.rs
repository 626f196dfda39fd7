//! Acceptance criteria, exact arithmetic throughout. Prints one line per
//! criterion and exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use w22_core::algebra::{check_axioms, make_charges, AlgebraKind, CentralCharges, Family, Mode};
use w22_core::embedding::{
    branch, v_r_minus, verify_w22_relations, verma_branch_decomposition, w_closure_dims,
};
use w22_core::linalg::LevelMatrix;
use w22_core::model::{GradedModel, Submodule};
use w22_core::pbw::rewrite::{normal_order_word, Strategy};
use w22_core::rational::{frac, int, Rational};
use w22_core::screening::{kernel_data, verify_screening_commutators, Screening, ScreeningOps};
use w22_core::series::{p2_series, telescoping_sum, Series};
use w22_core::verma::{
    character_dims, classify, find_singular, gram_matrix, irr_graded_dims, HighestWeightSpec,
};
use w22_core::{BaseTag, ModuleVector, Monomial};

type Outcome = Result<String, String>;

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn rational(r: &mut ChaCha8Rng) -> Rational {
    frac(r.random_range(-40..=40), r.random_range(1..=11))
}

fn nonzero(r: &mut ChaCha8Rng) -> Rational {
    loop {
        let q = rational(r);
        if !q.is_zero() {
            return q;
        }
    }
}

fn charges(r: &mut ChaCha8Rng) -> CentralCharges {
    make_charges(rational(r), nonzero(r)).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_brackets() -> Outcome {
    let mut r = rng();
    let mut total = 0;
    for _ in 0..2 {
        let cc = charges(&mut r);
        for kind in [AlgebraKind::W22, AlgebraKind::Hv] {
            let rep = check_axioms(kind, &cc, 4).map_err(|e| e.to_string())?;
            ensure(rep.passed(), || {
                format!(
                    "{kind}: {:?} {:?}",
                    rep.antisymmetry_violations, rep.jacobi_violations
                )
            })?;
            total += rep.triples;
        }
    }
    Ok(format!("{total} triples, zero violations"))
}

fn c2_singular_grid() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    let cli = cc.c_li().clone();
    let mut checked = 0;
    for p in 1..=3u32 {
        for _ in 0..3 {
            let h = rational(&mut r);
            for sign in [-1i64, 1] {
                let s =
                    HighestWeightSpec::hv(cc.clone(), h.clone(), int(1 + sign * p as i64) * &cli);
                let v = s.verma();
                let mut prev: Option<ModuleVector> = None;
                for l in 1..=6 {
                    let found = find_singular(&s, l).map_err(|e| e.to_string())?;
                    let want = usize::from(l % p == 0);
                    ensure(found.len() == want, || {
                        format!("{} level {l}: {} vectors", s.describe(), found.len())
                    })?;
                    if let Some(x) = found.first() {
                        if let Some(y) = &prev {
                            let sub = Submodule::generated(v.clone(), std::slice::from_ref(y))
                                .map_err(|e| e.to_string())?;
                            ensure(sub.contains(x), || {
                                format!("{} level {l}: chain broken", s.describe())
                            })?;
                        }
                        prev = Some(x.clone());
                    }
                    checked += 1;
                }
            }
        }
    }
    for _ in 0..3 {
        let h = rational(&mut r);
        let hi = loop {
            let q = rational(&mut r);
            let s = HighestWeightSpec::hv(cc.clone(), h.clone(), q.clone());
            if classify(&s).p.is_none() {
                break q;
            }
        };
        let s = HighestWeightSpec::hv(cc.clone(), h, hi);
        for l in 1..=6 {
            ensure(
                find_singular(&s, l).map_err(|e| e.to_string())?.is_empty(),
                || format!("{} level {l}", s.describe()),
            )?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (weight, level) cases"))
}

/// `mode * v` through the word-rewriting engine rather than the module.
fn oracle_apply(spec: &HighestWeightSpec, mode: Mode, v: &ModuleVector) -> ModuleVector {
    let ms = spec.module_spec(BaseTag::Hw);
    let mut out = ModuleVector::zero();
    for (m, c) in v.terms() {
        let mut word = vec![mode];
        word.extend(m.word());
        out.add_scaled(
            c,
            &normal_order_word(&ms, &word, BaseTag::Hw, Strategy::Rightmost).unwrap(),
        );
    }
    out
}

fn c3_example() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    for _ in 0..3 {
        let h = rational(&mut r);
        let s = HighestWeightSpec::hv(cc.clone(), h.clone(), int(0));
        let xf = Family::I;
        let mut want = ModuleVector::from_monomial(Monomial::new(xf, vec![], vec![1], BaseTag::Hw));
        want.add_term(
            Monomial::new(xf, vec![1], vec![], BaseTag::Hw),
            &h / cc.c_li(),
        );
        let got = find_singular(&s, 1).map_err(|e| e.to_string())?;
        ensure(got == vec![want.clone()], || format!("h={h}: {got:?}"))?;
    }
    let w = HighestWeightSpec::w22(cc.clone(), int(0), int(0));
    let w1 = ModuleVector::from_monomial(Monomial::new(Family::W, vec![1], vec![], BaseTag::Hw));
    let sing = find_singular(&w, 1).map_err(|e| e.to_string())?;
    let v = w.verma();
    let sub = Submodule::generated(v, &sing).map_err(|e| e.to_string())?;
    ensure(sub.contains(&w1), || {
        "W(-1)hw not singular in V^W(0,0)".into()
    })?;
    for rr in 1..=4 {
        let (spec, x) = v_r_minus(rr, &cc).map_err(|e| e.to_string())?;
        for op in [Mode::l(1), Mode::l(2), Mode::i(1)] {
            ensure(oracle_apply(&spec, op, &x).is_zero(), || {
                format!("r={rr}: {op} does not annihilate")
            })?;
        }
        ensure(!x.is_zero(), || format!("r={rr}: zero vector"))?;
    }
    Ok("u'_1 exact for 3 weights; v_r^- annihilated for r = 1..4".into())
}

fn c4_gram() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    for _ in 0..5 {
        let (h, hw) = (rational(&mut r), rational(&mut r));
        let g = gram_matrix(
            &HighestWeightSpec::w22(cc.clone(), h.clone(), hw.clone()),
            1,
        )
        .map_err(|e| e.to_string())?;
        let want = LevelMatrix::from_rows(vec![
            vec![int(0), int(2) * &hw],
            vec![int(2) * &hw, int(2) * &h],
        ]);
        ensure(g.matrix == want, || {
            format!("W(2,2) h={h} h_W={hw}: {}", g.matrix)
        })?;
        let hi = rational(&mut r);
        let g = gram_matrix(&HighestWeightSpec::hv(cc.clone(), h.clone(), hi.clone()), 1)
            .map_err(|e| e.to_string())?;
        let det = &hi * (&hi - int(2) * cc.c_li());
        ensure(g.matrix.determinant() == det, || {
            format!("HV h={h} h_I={hi}: {}", g.matrix)
        })?;
    }
    Ok("5 samples each".into())
}

fn c5_relations() -> Outcome {
    let mut r = rng();
    for _ in 0..3 {
        let cc = charges(&mut r);
        let host = HighestWeightSpec::hv(cc.clone(), rational(&mut r), rational(&mut r)).verma();
        let good = verify_w22_relations(host.clone(), 6, cc.c_w()).map_err(|e| e.to_string())?;
        ensure(good.passed(), || format!("{:?}", good.witness))?;
        let bad = verify_w22_relations(host, 6, &(cc.c_w() + int(1))).map_err(|e| e.to_string())?;
        ensure(bad.witness.is_some(), || {
            "perturbed c_W not detected".into()
        })?;
    }
    Ok("levels 0..=6, three charge sets; perturbation witnessed".into())
}

fn c6_branching() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    let cli = cc.c_li().clone();
    for hi in [&cli / int(3), rational(&mut r)] {
        let s = HighestWeightSpec::hv(cc.clone(), frac(1, 3), hi);
        if classify(&s).is_atypical() {
            continue;
        }
        let b = branch(&s, 6).map_err(|e| e.to_string())?;
        ensure(b.w_singular_dims.iter().all(|&d| d == 0), || {
            format!("{}: {:?}", s.describe(), b.w_singular_dims)
        })?;
        let w = irr_graded_dims(&s.to_w22(), 6).map_err(|e| e.to_string())?;
        ensure(b.host_dims == w, || {
            format!("{}: host {:?} vs {w:?}", s.describe(), b.host_dims)
        })?;
    }
    let plus = branch(&HighestWeightSpec::hv(cc.clone(), int(0), int(2) * &cli), 5)
        .map_err(|e| e.to_string())?;
    ensure(plus.host_dims == [1, 1, 3, 5, 10, 16], || {
        format!("{:?}", plus.host_dims)
    })?;
    ensure(plus.quotient_dims == [1, 0, 2, 2, 5, 6], || {
        format!("{:?}", plus.quotient_dims)
    })?;
    ensure(plus.submodule_dims == [0, 1, 1, 3, 5, 10], || {
        format!("{:?}", plus.submodule_dims)
    })?;
    ensure(plus.passed(), || format!("{:?}", plus.certificates))?;
    let minus =
        branch(&HighestWeightSpec::hv(cc.clone(), int(0), int(0)), 5).map_err(|e| e.to_string())?;
    ensure(minus.submodule_dims == [1, 0, 2, 2, 5, 6], || {
        format!("{:?}", minus.submodule_dims)
    })?;
    ensure(minus.quotient_dims == [0, 1, 1, 3, 5, 10], || {
        format!("{:?}", minus.quotient_dims)
    })?;
    ensure(minus.passed(), || format!("{:?}", minus.certificates))?;
    Ok("typical irreducible; (0,2c) = (1,0,2,2,5,6) + q(1,1,3,5,10); (0,0) minus sequence".into())
}

fn c7_decomposition() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    for p in 1..=2u32 {
        let h = loop {
            let h = rational(&mut r);
            let s = HighestWeightSpec::hv(cc.clone(), h.clone(), int(1 - p as i64) * cc.c_li());
            if !classify(&s).is_atypical() {
                break h;
            }
        };
        let d = verma_branch_decomposition(h, p, &cc, 6).map_err(|e| e.to_string())?;
        ensure(d.passed(), || format!("p={p}: {:?}", d.dim_sums))?;
    }
    Ok("p = 1, 2: independent closures summing to P2(n), n <= 6".into())
}

fn c8_screening() -> Outcome {
    let mut r = rng();
    let cc = charges(&mut r);
    let ops = ScreeningOps::new(&cc).map_err(|e| e.to_string())?;
    let vac = ops.vacuum();
    let mono = |x: Vec<u32>, l: Vec<u32>| {
        vac.reduce(&ModuleVector::from_monomial(Monomial::new(
            Family::I,
            x,
            l,
            BaseTag::Vacuum,
        )))
    };
    let s1 = |v: &ModuleVector| ops.apply(Screening::S1, 0, v).unwrap();
    ensure(s1(&mono(vec![], vec![])).is_zero(), || "S1(0)1".into())?;
    let v0 = ops
        .u()
        .quotient()
        .reduce(&ModuleVector::from_monomial(Monomial::base_only(
            Family::I,
            BaseTag::V0,
        )));
    ensure(s1(&mono(vec![1], vec![])) == -&v0, || "S1(0)I(-1)1".into())?;
    ensure(s1(&mono(vec![], vec![2])).is_zero(), || {
        "S1(0)L(-2)1".into()
    })?;
    // W(-2)1 = I(-1)^2 1 + 2 c_LI I(-2) 1
    let mut w2 = mono(vec![1, 1], vec![]);
    w2.add_scaled(&(int(2) * cc.c_li()), &mono(vec![2], vec![]));
    ensure(s1(&w2).is_zero(), || "S1(0)W(-2)1".into())?;
    for f in verify_screening_commutators(&ops, 4).map_err(|e| e.to_string())? {
        ensure(f.passed(), || format!("{:?}", f.witness))?;
    }
    let data = kernel_data(&ops, 5).map_err(|e| e.to_string())?;
    ensure(data.kernel_dims == [1, 0, 2, 2, 5, 6], || {
        format!("{:?}", data.kernel_dims)
    })?;
    let one = vac.reduce(&mono(vec![], vec![]));
    let (_, closure) = w_closure_dims(vac.clone(), &[one], 5).map_err(|e| e.to_string())?;
    let chars = character_dims(&HighestWeightSpec::w22(cc.clone(), int(0), int(0)), 5);
    ensure(closure == data.kernel_dims && chars == closure, || {
        format!("closure {closure:?}, character {chars:?}")
    })?;
    Ok(
        "values, four commutator families (levels <= 4), kernel 1,0,2,2,5,6 = closure = character"
            .into(),
    )
}

fn brute_partitions(n: u32, max: u32) -> u64 {
    if n == 0 {
        return 1;
    }
    (1..=n.min(max)).map(|k| brute_partitions(n - k, k)).sum()
}

fn c9_characters() -> Outcome {
    let oracle: Vec<i64> = (0..=8u32)
        .map(|n| {
            (0..=n)
                .map(|i| (brute_partitions(n - i, n) * brute_partitions(i, n)) as i64)
                .collect::<Vec<_>>()
                .iter()
                .sum()
        })
        .collect();
    ensure(oracle == [1, 2, 5, 10, 20, 36, 65, 110, 185], || {
        format!("oracle {oracle:?}")
    })?;
    ensure(p2_series(8).coefficients() == oracle.as_slice(), || {
        format!("{:?}", p2_series(8))
    })?;
    for p in 1..=8 {
        ensure(telescoping_sum(p, 8) == Series::one(8), || format!("p={p}"))?;
    }
    Ok("P2(0..8) = 1,2,5,10,20,36,65,110,185; telescoping holds through q^8".into())
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 9] = [
        ("bracket antisymmetry and Jacobi", c1_brackets),
        ("singular vector grid", c2_singular_grid),
        ("level-one singular vector and product formula", c3_example),
        ("level-one Gram matrices", c4_gram),
        ("embedding relations", c5_relations),
        ("branching of irreducible modules", c6_branching),
        ("Verma decomposition into W-closures", c7_decomposition),
        ("screening operator and kernel", c8_screening),
        ("character identities", c9_characters),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let res = f();
        let ms = t.elapsed().as_millis();
        match res {
            Ok(d) => println!("criterion {}: PASS {name} ({d}) [{ms} ms]", i + 1),
            Err(d) => {
                failed += 1;
                println!("criterion {}: FAIL {name}: {d} [{ms} ms]", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
