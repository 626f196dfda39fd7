//! Global word rewriting, independent of [`InducedModule::act_mono`].
//!
//! Words are rewritten by swapping adjacent out-of-order pairs,
//! `ab = ba + [a, b]`, until every word is a PBW monomial. Two strategies
//! pick the leftmost or the rightmost violation; by confluence both must
//! agree with the recursive engine.
//!
//! [`InducedModule::act_mono`]: super::InducedModule::act_mono

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::algebra::{bracket, Family, Mode};
use crate::error::{Error, Result};
use crate::rational::{int, Rational};

use super::module::ModuleSpec;
use super::monomial::{BaseTag, ModuleVector, Monomial};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

// negative X modes, then negative L modes, then everything that must reach the base vector
fn rank(m: Mode) -> (u8, i64) {
    if m.index < 0 {
        let class = if m.family == Family::Vir { 1 } else { 0 };
        (class, m.index)
    } else {
        (2, 0)
    }
}

fn out_of_order(a: Mode, b: Mode) -> bool {
    rank(a) > rank(b)
}

pub fn normal_order_word(
    spec: &ModuleSpec,
    word: &[Mode],
    base: BaseTag,
    strategy: Strategy,
) -> Result<ModuleVector> {
    let xf = spec.kind.extra_family();
    for &m in word {
        if !spec.kind.contains(m) {
            return Err(Error::MixedAlgebra {
                mode: m,
                kind: spec.kind,
            });
        }
    }
    let mut pending: BTreeMap<(Vec<Mode>, BaseTag), Rational> = BTreeMap::new();
    pending.insert((word.to_vec(), base), int(1));
    let mut done = ModuleVector::zero();

    while let Some(((w, b), c)) = pending.pop_first() {
        if c.is_zero() {
            continue;
        }
        let mut push = |w: Vec<Mode>, b: BaseTag, c: Rational| {
            *pending.entry((w, b)).or_insert_with(Rational::zero) += c;
        };
        let bv = spec
            .bases
            .iter()
            .find(|v| v.tag == b)
            .ok_or(Error::Unresolvable {
                mode: w.last().copied().unwrap_or(Mode::l(0)),
                base: b.to_string(),
            })?;
        if let Some(&last) = w.last() {
            if last.index >= 0 {
                let head = w[..w.len() - 1].to_vec();
                if last.index > 0 {
                    continue;
                }
                if last.family == Family::Vir {
                    push(head, b, c * &bv.weight);
                } else {
                    for (t, a) in &bv.zero_mode {
                        push(head.clone(), *t, &c * a);
                    }
                }
                continue;
            }
        }
        let violations: Vec<usize> = (0..w.len().saturating_sub(1))
            .filter(|&i| out_of_order(w[i], w[i + 1]))
            .collect();
        let pick = match strategy {
            Strategy::Leftmost => violations.first(),
            Strategy::Rightmost => violations.last(),
        };
        let Some(&i) = pick else {
            let x: Vec<u32> = w
                .iter()
                .filter(|m| m.family != Family::Vir)
                .map(|m| (-m.index) as u32)
                .collect();
            let l: Vec<u32> = w
                .iter()
                .filter(|m| m.family == Family::Vir)
                .map(|m| (-m.index) as u32)
                .collect();
            done.add_term(Monomial::new(xf, x, l, b), c);
            continue;
        };
        let (a, bm) = (w[i], w[i + 1]);
        let mut swapped = w.clone();
        swapped.swap(i, i + 1);
        push(swapped, b, c.clone());
        let br = bracket(spec.kind, a, bm, &spec.charges)?;
        let mut shorter: Vec<Mode> = w[..i].to_vec();
        let tail = &w[i + 2..];
        if let Some((k, m)) = br.linear {
            let mut with = shorter.clone();
            with.push(m);
            with.extend_from_slice(tail);
            push(with, b, &c * k);
        }
        if !br.central.is_zero() {
            shorter.extend_from_slice(tail);
            push(shorter, b, c * br.central);
        }
    }
    Ok(done)
}

#[cfg(test)]
mod tests {
    use super::Strategy as Order;
    use super::{normal_order_word, BaseTag, Mode, ModuleSpec};
    use crate::algebra::{make_charges, AlgebraKind};
    use crate::pbw::InducedModule;
    use crate::rational::frac;
    use proptest::prelude::*;

    fn arb_word(kind: AlgebraKind) -> impl proptest::strategy::Strategy<Value = Vec<Mode>> {
        let xf = kind.extra_family();
        prop::collection::vec((any::<bool>(), -4i64..=4), 0..=6).prop_map(move |v| {
            v.into_iter()
                .map(|(vir, n)| if vir { Mode::l(n) } else { Mode::new(xf, n) })
                .collect()
        })
    }

    fn check(kind: AlgebraKind, word: &[Mode]) {
        let cc = make_charges(frac(5, 3), frac(-3, 7)).unwrap();
        let spec = ModuleSpec::verma(kind, cc, BaseTag::Hw, frac(2, 9), frac(11, 4));
        let a = normal_order_word(&spec, word, BaseTag::Hw, Order::Leftmost).unwrap();
        let b = normal_order_word(&spec, word, BaseTag::Hw, Order::Rightmost).unwrap();
        let c = InducedModule::new(spec)
            .normal_order(word, BaseTag::Hw)
            .unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(128))]
        #[test]
        fn strategies_agree_hv(word in arb_word(AlgebraKind::Hv)) {
            check(AlgebraKind::Hv, &word);
        }

        #[test]
        fn strategies_agree_w22(word in arb_word(AlgebraKind::W22)) {
            check(AlgebraKind::W22, &word);
        }
    }

    #[test]
    fn extension_module_words() {
        let cc = make_charges(frac(1, 2), frac(3, 2)).unwrap();
        let spec = ModuleSpec::extension_e(cc);
        let word = [Mode::l(1), Mode::i(0), Mode::i(-1), Mode::l(-1)];
        let a = normal_order_word(&spec, &word, BaseTag::V1, Order::Leftmost).unwrap();
        let c = InducedModule::new(spec)
            .normal_order(&word, BaseTag::V1)
            .unwrap();
        assert_eq!(a, c);
    }
}
