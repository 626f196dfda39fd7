use std::collections::HashMap;
use std::sync::Mutex;

use num_traits::{One, Zero};

use crate::algebra::{bracket, AlgebraKind, CentralCharges, Family, Mode};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};
use crate::series::partitions;

use super::monomial::{BaseTag, ModuleVector, Monomial};

/// A vector the module is induced from. The positive part of the algebra
/// annihilates it, `L(0)` acts by `weight`, and the extra zero mode
/// (`I(0)` or `W(0)`) maps it to `zero_mode`.
#[derive(Debug, Clone)]
pub struct BaseVector {
    pub tag: BaseTag,
    pub weight: Rational,
    pub zero_mode: Vec<(BaseTag, Rational)>,
}

#[derive(Debug, Clone)]
pub struct ModuleSpec {
    pub kind: AlgebraKind,
    pub charges: CentralCharges,
    pub bases: Vec<BaseVector>,
}

impl ModuleSpec {
    /// Verma module over a single highest-weight vector; `second` is `h_I`
    /// or `h_W` according to `kind`.
    pub fn verma(
        kind: AlgebraKind,
        charges: CentralCharges,
        tag: BaseTag,
        h: Rational,
        second: Rational,
    ) -> Self {
        ModuleSpec {
            kind,
            charges,
            bases: vec![BaseVector {
                tag,
                weight: h,
                zero_mode: vec![(tag, second)],
            }],
        }
    }

    fn base(&self, tag: BaseTag) -> Option<&BaseVector> {
        self.bases.iter().find(|b| b.tag == tag)
    }
}

/// The module `U(g) ⊗ E` induced from the base vectors of a [`ModuleSpec`],
/// with the normal-ordering rewriter.
///
/// Mode actions on single monomials are memoized; the cache is the only
/// mutable state and is safe to share.
#[derive(Debug)]
pub struct InducedModule {
    spec: ModuleSpec,
    cache: Mutex<HashMap<(Mode, Monomial), ModuleVector>>,
}

impl InducedModule {
    pub fn new(spec: ModuleSpec) -> Self {
        InducedModule {
            spec,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &ModuleSpec {
        &self.spec
    }

    pub fn kind(&self) -> AlgebraKind {
        self.spec.kind
    }

    pub fn charges(&self) -> &CentralCharges {
        &self.spec.charges
    }

    pub fn x_family(&self) -> Family {
        self.spec.kind.extra_family()
    }

    pub fn base_vector(&self, tag: BaseTag) -> ModuleVector {
        ModuleVector::from_monomial(Monomial::base_only(self.x_family(), tag))
    }

    pub fn base_tags(&self) -> Vec<BaseTag> {
        let mut t: Vec<BaseTag> = self.spec.bases.iter().map(|b| b.tag).collect();
        t.sort();
        t
    }

    /// All PBW monomials of the given level over `base`, in canonical order.
    pub fn graded_basis(&self, base: BaseTag, level: u32) -> Vec<Monomial> {
        let xf = self.x_family();
        let mut out = Vec::new();
        for xl in 0..=level {
            for x in partitions(xl) {
                for l in partitions(level - xl) {
                    out.push(Monomial::new(xf, x.clone(), l, base));
                }
            }
        }
        out.sort();
        out
    }

    /// Level piece over every base vector.
    pub fn level_basis(&self, level: u32) -> Vec<Monomial> {
        let mut out: Vec<Monomial> = self
            .base_tags()
            .into_iter()
            .flat_map(|b| self.graded_basis(b, level))
            .collect();
        out.sort();
        out
    }

    /// Acts with the word on the base vector, rightmost mode first.
    pub fn normal_order(&self, word: &[Mode], base: BaseTag) -> Result<ModuleVector> {
        if self.spec.base(base).is_none() {
            return Err(Error::Invalid(format!("unknown base vector {base}")));
        }
        let mut v = self.base_vector(base);
        for &m in word.iter().rev() {
            v = self.apply_mode(m, &v)?;
        }
        Ok(v)
    }

    pub fn apply_mode(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (m, c) in v.terms() {
            let r = self.act_mono(mode, m)?;
            out.add_scaled(c, &r);
        }
        Ok(out)
    }

    pub fn apply_word(&self, word: &[Mode], v: &ModuleVector) -> Result<ModuleVector> {
        let mut v = v.clone();
        for &m in word.iter().rev() {
            v = self.apply_mode(m, &v)?;
        }
        Ok(v)
    }

    /// Action of one mode on one monomial, in PBW form.
    pub fn act_mono(&self, mode: Mode, mono: &Monomial) -> Result<ModuleVector> {
        if !self.spec.kind.contains(mode) {
            return Err(Error::MixedAlgebra {
                mode,
                kind: self.spec.kind,
            });
        }
        // cheap cases without touching the cache
        if mode.index < 0 && mode.family != Family::Vir {
            return Ok(ModuleVector::from_monomial(
                mono.with_x((-mode.index) as u32),
            ));
        }
        if mode.index < 0
            && mono.x_part().is_empty()
            && mono
                .l_part()
                .first()
                .is_none_or(|&a| a as i64 <= -mode.index)
        {
            return Ok(ModuleVector::from_monomial(
                mono.with_leading_l((-mode.index) as u32),
            ));
        }
        if mode == Mode::l(0) {
            let w = &self.base_spec(mono.base(), mode)?.weight + int(mono.level() as i64);
            return Ok(ModuleVector::term(w, mono.clone()));
        }
        if mode.index > mono.level() as i64 {
            return Ok(ModuleVector::zero());
        }
        let key = (mode, mono.clone());
        if let Some(v) = self.cache.lock().expect("cache poisoned").get(&key) {
            return Ok(v.clone());
        }
        let v = self.act_uncached(mode, mono)?;
        self.cache
            .lock()
            .expect("cache poisoned")
            .insert(key, v.clone());
        Ok(v)
    }

    fn base_spec(&self, tag: BaseTag, mode: Mode) -> Result<&BaseVector> {
        self.spec.base(tag).ok_or(Error::Unresolvable {
            mode,
            base: tag.to_string(),
        })
    }

    fn act_on_base(&self, mode: Mode, mono: &Monomial) -> Result<ModuleVector> {
        let b = self.base_spec(mono.base(), mode)?;
        if mode.index > 0 {
            return Ok(ModuleVector::zero());
        }
        match mode.family {
            Family::Vir => Ok(ModuleVector::term(b.weight.clone(), mono.clone())),
            _ => Ok(b
                .zero_mode
                .iter()
                .map(|(t, c)| (mono.with_base(*t), c.clone()))
                .collect()),
        }
    }

    fn act_uncached(&self, mode: Mode, mono: &Monomial) -> Result<ModuleVector> {
        let Some((f, rest)) = mono.split_first() else {
            return self.act_on_base(mode, mono);
        };
        // mode f rest = f (mode rest) + [mode, f] rest
        let inner = self.act_mono(mode, &rest)?;
        let mut out = self.apply_mode(f, &inner)?;
        let br = bracket(self.spec.kind, mode, f, &self.spec.charges)?;
        if let Some((c, m)) = br.linear {
            let t = self.act_mono(m, &rest)?;
            out.add_scaled(&c, &t);
        }
        if !br.central.is_zero() {
            out.add_term(rest, br.central);
        }
        Ok(out)
    }
}

impl ModuleSpec {
    /// Two-dimensional `E = span{v0, v1}` of weight 1 with `I(0) v1 = v0`.
    pub fn extension_e(charges: CentralCharges) -> Self {
        ModuleSpec {
            kind: AlgebraKind::Hv,
            charges,
            bases: vec![
                BaseVector {
                    tag: BaseTag::V0,
                    weight: Rational::one(),
                    zero_mode: vec![],
                },
                BaseVector {
                    tag: BaseTag::V1,
                    weight: Rational::one(),
                    zero_mode: vec![(BaseTag::V0, Rational::one())],
                },
            ],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_charges;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn hv(h: Rational, hi: Rational) -> InducedModule {
        let cc = make_charges(frac(3, 2), frac(2, 5)).unwrap();
        InducedModule::new(ModuleSpec::verma(AlgebraKind::Hv, cc, BaseTag::Hw, h, hi))
    }

    fn w22(h: Rational, hw: Rational) -> InducedModule {
        let cc = make_charges(frac(3, 2), frac(2, 5)).unwrap();
        InducedModule::new(ModuleSpec::verma(AlgebraKind::W22, cc, BaseTag::Hw, h, hw))
    }

    fn m(xf: Family, x: &[u32], l: &[u32]) -> Monomial {
        Monomial::new(xf, x.to_vec(), l.to_vec(), BaseTag::Hw)
    }

    #[test]
    fn normal_order_examples() {
        let h = frac(-7, 3);
        let v = hv(h.clone(), frac(5, 4));
        let r = v
            .normal_order(&[Mode::l(1), Mode::l(-1)], BaseTag::Hw)
            .unwrap();
        assert_eq!(r, ModuleVector::term(int(2) * &h, m(Family::I, &[], &[])));

        let r = v
            .normal_order(&[Mode::l(-2), Mode::i(-1)], BaseTag::Hw)
            .unwrap();
        let mut want = ModuleVector::from_monomial(m(Family::I, &[1], &[2]));
        want.add_term(m(Family::I, &[3], &[]), int(1));
        assert_eq!(r, want);

        let hw = frac(9, 7);
        let w = w22(h, hw.clone());
        let r = w
            .normal_order(&[Mode::w(0), Mode::l(-1)], BaseTag::Hw)
            .unwrap();
        let mut want = ModuleVector::term(hw, m(Family::W, &[], &[1]));
        want.add_term(m(Family::W, &[1], &[]), int(1));
        assert_eq!(r, want);
    }

    #[test]
    fn apply_mode_examples() {
        let h = frac(1, 3);
        let v = hv(h.clone(), frac(-2, 9));
        for mono in v.level_basis(3) {
            let r = v.act_mono(Mode::l(0), &mono).unwrap();
            assert_eq!(r, ModuleVector::term(&h + int(3), mono));
        }
        let x = m(Family::I, &[1], &[]);
        assert!(v.act_mono(Mode::i(1), &x).unwrap().is_zero());
        let w = w22(h, frac(2, 3));
        assert!(w
            .act_mono(Mode::w(2), &m(Family::W, &[1], &[]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn rejects_foreign_modes() {
        let v = hv(int(0), int(0));
        assert!(matches!(
            v.normal_order(&[Mode::w(-1)], BaseTag::Hw),
            Err(Error::MixedAlgebra { .. })
        ));
        assert!(v.normal_order(&[Mode::l(-1)], BaseTag::V1).is_err());
    }

    #[test]
    fn graded_basis_examples() {
        let v = hv(int(0), int(0));
        assert_eq!(v.graded_basis(BaseTag::Hw, 0).len(), 1);
        assert_eq!(v.graded_basis(BaseTag::Hw, 1).len(), 2);
        let txt: Vec<String> = v
            .graded_basis(BaseTag::Hw, 2)
            .iter()
            .map(|m| m.to_string())
            .collect();
        assert_eq!(
            txt,
            [
                "I(-2) hw",
                "I(-1)^2 hw",
                "I(-1) L(-1) hw",
                "L(-2) hw",
                "L(-1)^2 hw"
            ]
        );
        let p2 = [1, 2, 5, 10, 20, 36, 65, 110, 185, 300, 481];
        for (n, &d) in p2.iter().enumerate() {
            assert_eq!(v.graded_basis(BaseTag::Hw, n as u32).len(), d);
        }
    }

    #[test]
    fn extension_zero_mode() {
        let cc = make_charges(int(1), int(1)).unwrap();
        let e = InducedModule::new(ModuleSpec::extension_e(cc));
        let r = e
            .normal_order(&[Mode::i(0), Mode::l(-1)], BaseTag::V1)
            .unwrap();
        assert_eq!(r.to_string(), "L(-1) v0");
        assert!(e
            .normal_order(&[Mode::i(0), Mode::i(-2)], BaseTag::V0)
            .unwrap()
            .is_zero());
    }

    fn arb_vec(kind: AlgebraKind) -> impl Strategy<Value = ModuleVector> {
        let xf = kind.extra_family();
        prop::collection::vec((0usize..10, -5i64..=5, 1i64..4), 1..4).prop_map(move |ts| {
            let cc = make_charges(int(1), int(1)).unwrap();
            let basis =
                InducedModule::new(ModuleSpec::verma(kind, cc, BaseTag::Hw, int(0), int(0)))
                    .level_basis(3);
            let _ = xf;
            ts.into_iter()
                .map(|(i, n, d)| (basis[i % basis.len()].clone(), frac(n, d)))
                .collect()
        })
    }

    proptest! {
        #[test]
        fn apply_mode_is_linear(
            u in arb_vec(AlgebraKind::Hv),
            v in arb_vec(AlgebraKind::Hv),
            a in -4i64..4, b in -4i64..4,
            idx in -3i64..=3, fam in 0u8..2,
        ) {
            let module = hv(frac(2, 7), frac(-3, 5));
            let mode = if fam == 0 { Mode::l(idx) } else { Mode::i(idx) };
            let (a, b) = (int(a), int(b));
            let mut comb = u.scaled(&a);
            comb.add_scaled(&b, &v);
            let lhs = module.apply_mode(mode, &comb).unwrap();
            let mut rhs = module.apply_mode(mode, &u).unwrap().scaled(&a);
            rhs.add_scaled(&b, &module.apply_mode(mode, &v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }
}
