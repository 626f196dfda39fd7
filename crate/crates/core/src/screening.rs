//! The two-dimensional extension `E`, the quotient `U` of the module
//! induced from it, and the screening operators `S_0(m)`, `S_1(m)` from the
//! vacuum module into `U`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraKind, CentralCharges, Family, Mode};
use crate::embedding::{PsiModel, Witness};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, LevelMatrix};
use crate::model::{annihilators, GradedModel, QuotientModule, Submodule};
use crate::pbw::{BaseTag, InducedModule, ModuleSpec, ModuleVector, Monomial};
use crate::rational::{int, Rational};
use crate::verma::{irr_graded_dims, HighestWeightSpec};

/// `U = E~ / <(L(-1) + I(-1)/c_LI) v0>`.
pub struct ExtModuleU {
    charges: CentralCharges,
    induced: Arc<InducedModule>,
    relation: ModuleVector,
    quotient: Arc<QuotientModule>,
}

impl std::fmt::Debug for ExtModuleU {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ExtModuleU")
            .field("relation", &self.relation.to_string())
            .finish_non_exhaustive()
    }
}

impl ExtModuleU {
    pub fn build(charges: &CentralCharges) -> Result<Self> {
        let induced = Arc::new(InducedModule::new(ModuleSpec::extension_e(charges.clone())));
        let relation = ext_relation(&induced, BaseTag::V0)?;
        let quotient = Arc::new(QuotientModule::new(
            induced.clone(),
            std::slice::from_ref(&relation),
        )?);
        Ok(ExtModuleU {
            charges: charges.clone(),
            induced,
            relation,
            quotient,
        })
    }

    pub fn charges(&self) -> &CentralCharges {
        &self.charges
    }

    pub fn induced(&self) -> &Arc<InducedModule> {
        &self.induced
    }

    pub fn relation(&self) -> &ModuleVector {
        &self.relation
    }

    pub fn quotient(&self) -> &Arc<QuotientModule> {
        &self.quotient
    }

    pub fn dims(&self, max_level: u32) -> Vec<usize> {
        self.quotient.dims(max_level)
    }
}

/// `(L(-1) + I(-1)/c_LI) v` for a base vector `v` of the induced module.
pub fn ext_relation(induced: &InducedModule, base: BaseTag) -> Result<ModuleVector> {
    let mut r = induced.normal_order(&[Mode::l(-1)], base)?;
    let c = Rational::one() / induced.charges().c_li();
    r.add_scaled(&c, &induced.normal_order(&[Mode::i(-1)], base)?);
    Ok(r)
}

pub fn build_ext_module(charges: &CentralCharges) -> Result<ExtModuleU> {
    ExtModuleU::build(charges)
}

/// The irreducible vacuum module `V^H(0,0) / <L(-1) 1>`.
pub fn vacuum_module(charges: &CentralCharges) -> Result<QuotientModule> {
    let v = Arc::new(InducedModule::new(ModuleSpec::verma(
        AlgebraKind::Hv,
        charges.clone(),
        BaseTag::Vacuum,
        Rational::zero(),
        Rational::zero(),
    )));
    let gen = v.normal_order(&[Mode::l(-1)], BaseTag::Vacuum)?;
    QuotientModule::new(v, &[gen])
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Screening {
    S0,
    S1,
}

impl Screening {
    fn base(self) -> BaseTag {
        match self {
            Screening::S0 => BaseTag::V0,
            Screening::S1 => BaseTag::V1,
        }
    }
}

impl std::fmt::Display for Screening {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Screening::S0 => write!(f, "S0"),
            Screening::S1 => write!(f, "S1"),
        }
    }
}

/// Screening operators evaluated by commuting modes through:
/// `S_i(m) L(n) = L(n) S_i(m) + m S_i(n + m)`,
/// `S_1(m) I(n) = I(n) S_1(m) - S_0(n + m)`, `S_0(m) I(n) = I(n) S_0(m)`,
/// down to `S_i(m) 1 = L(-1)^k v^i / k!` with `k = -m - 1`.
pub struct ScreeningOps {
    u: ExtModuleU,
    vacuum: Arc<QuotientModule>,
    cache: Mutex<HashMap<(Screening, i64, Monomial), ModuleVector>>,
}

impl std::fmt::Debug for ScreeningOps {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("ScreeningOps")
            .field("u", &self.u)
            .finish_non_exhaustive()
    }
}

impl ScreeningOps {
    pub fn new(charges: &CentralCharges) -> Result<Self> {
        Ok(ScreeningOps {
            u: ExtModuleU::build(charges)?,
            vacuum: Arc::new(vacuum_module(charges)?),
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn u(&self) -> &ExtModuleU {
        &self.u
    }

    pub fn vacuum(&self) -> &Arc<QuotientModule> {
        &self.vacuum
    }

    fn base_value(&self, which: Screening, m: i64) -> Result<ModuleVector> {
        if m >= 0 {
            return Ok(ModuleVector::zero());
        }
        let k = (-m - 1) as usize;
        let q = &*self.u.quotient;
        let mut v = q.reduce(&ModuleVector::from_monomial(Monomial::base_only(
            Family::I,
            which.base(),
        )));
        let mut fact = Rational::one();
        for j in 1..=k {
            v = q.act(Mode::l(-1), &v)?;
            fact *= int(j as i64);
        }
        Ok(v.scaled(&(Rational::one() / fact)))
    }

    fn on_monomial(&self, which: Screening, m: i64, mono: &Monomial) -> Result<ModuleVector> {
        if mono.base() != BaseTag::Vacuum {
            return Err(Error::Invalid(format!(
                "screening operators act on the vacuum module, not on {mono}"
            )));
        }
        let key = (which, m, mono.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let out = match mono.split_first() {
            None => self.base_value(which, m)?,
            Some((f, rest)) => {
                self.pull_through(which, m, f, |w, k| self.on_monomial(w, k, &rest))?
            }
        };
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, out.clone());
        Ok(out)
    }

    fn pull_through(
        &self,
        which: Screening,
        m: i64,
        f: Mode,
        rest: impl Fn(Screening, i64) -> Result<ModuleVector>,
    ) -> Result<ModuleVector> {
        let q = &*self.u.quotient;
        let mut out = q.act(f, &rest(which, m)?)?;
        match f.family {
            Family::Vir => {
                if m != 0 {
                    out.add_scaled(&int(m), &rest(which, f.index + m)?);
                }
            }
            Family::I => {
                if which == Screening::S1 {
                    out -= &rest(Screening::S0, f.index + m)?;
                }
            }
            Family::W => {
                return Err(Error::MixedAlgebra {
                    mode: f,
                    kind: AlgebraKind::Hv,
                })
            }
        }
        Ok(out)
    }

    /// `S_i(m) x` for `x` in the vacuum module (PBW form over `1`).
    pub fn apply(&self, which: Screening, m: i64, x: &ModuleVector) -> Result<ModuleVector> {
        let mut out = ModuleVector::zero();
        for (mono, c) in x.terms() {
            out.add_scaled(c, &self.on_monomial(which, m, mono)?);
        }
        Ok(out)
    }

    /// `S_i(m) (f_1 ... f_k 1)` for an arbitrary word, without normal
    /// ordering the word first.
    pub fn apply_word(&self, which: Screening, m: i64, word: &[Mode]) -> Result<ModuleVector> {
        match word.split_first() {
            None => self.base_value(which, m),
            Some((&f, rest)) => self.pull_through(which, m, f, |w, k| self.apply_word(w, k, rest)),
        }
    }

    /// Matrix of `S_i(m)` from vacuum level `level` to the matching level of `U`.
    pub fn matrix(&self, which: Screening, m: i64, level: u32) -> Result<LevelMatrix> {
        let src = self.vacuum.basis(level);
        let target = level as i64 - m - 1;
        if target < 0 {
            return Ok(LevelMatrix::zeros(0, src.len()));
        }
        let dst = self.u.quotient.basis(target as u32);
        let mut mat = LevelMatrix::zeros(dst.len(), src.len());
        for (j, b) in src.iter().enumerate() {
            let img = self.apply(which, m, &ModuleVector::from_monomial(b.clone()))?;
            for (i, c) in coordinates(&dst, &img).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        Ok(mat)
    }

    /// Basis of `ker S_1(0)` at a vacuum level.
    pub fn kernel(&self, level: u32) -> Result<Vec<ModuleVector>> {
        let src = self.vacuum.basis(level);
        let mat = self.matrix(Screening::S1, 0, level)?;
        Ok(mat
            .nullspace()
            .into_iter()
            .map(|x| crate::linalg::from_coordinates(&src, &x))
            .collect())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct KernelData {
    pub vacuum_dims: Vec<usize>,
    pub kernel_dims: Vec<usize>,
    pub ranks: Vec<usize>,
}

pub fn kernel_data(ops: &ScreeningOps, max_level: u32) -> Result<KernelData> {
    let mut out = KernelData {
        vacuum_dims: Vec::new(),
        kernel_dims: Vec::new(),
        ranks: Vec::new(),
    };
    for lvl in 0..=max_level {
        let mat = ops.matrix(Screening::S1, 0, lvl)?;
        let rank = mat.rank();
        let dim = ops.vacuum.dim(lvl);
        out.vacuum_dims.push(dim);
        out.ranks.push(rank);
        out.kernel_dims.push(dim - rank);
    }
    Ok(out)
}

pub fn kernel_dims(charges: &CentralCharges, max_level: u32) -> Result<Vec<usize>> {
    Ok(kernel_data(&ScreeningOps::new(charges)?, max_level)?.kernel_dims)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilyCheck {
    pub family: String,
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl FamilyCheck {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `[L(n), S_i(m)] = -m S_i(n + m)`, `[W(n), S_1(m)] = 2 m c_LI S_0(n + m)`
/// and `[W(n), S_0(m)] = 0` for `|n|, |m| <= 2` on vacuum levels `0..=max_level`.
pub fn verify_screening_commutators(
    ops: &ScreeningOps,
    max_level: u32,
) -> Result<Vec<FamilyCheck>> {
    let u_w = PsiModel::new(ops.u.quotient.clone())?;
    let vac_w = PsiModel::new(ops.vacuum.clone())?;
    let c = ops.u.charges.c_li().clone();
    let mut out = Vec::new();
    for (fam, which) in [
        (Family::Vir, Screening::S0),
        (Family::Vir, Screening::S1),
        (Family::W, Screening::S0),
        (Family::W, Screening::S1),
    ] {
        let name = format!(
            "[{}(n),{which}(m)]",
            if fam == Family::Vir { "L" } else { "W" }
        );
        let mut check = FamilyCheck {
            family: name,
            checked: 0,
            witness: None,
        };
        'outer: for lvl in 0..=max_level {
            for b in ops.vacuum.basis(lvl) {
                let x = ModuleVector::from_monomial(b);
                for n in -2i64..=2 {
                    for m in -2i64..=2 {
                        let mode = Mode::new(fam, n);
                        let sx = ops.apply(which, m, &x)?;
                        let lhs =
                            &u_w.act(mode, &sx)? - &ops.apply(which, m, &vac_w.act(mode, &x)?)?;
                        let rhs = match (fam, which) {
                            (Family::Vir, _) => ops.apply(which, n + m, &x)?.scaled(&int(-m)),
                            (_, Screening::S1) => ops
                                .apply(Screening::S0, n + m, &x)?
                                .scaled(&(int(2 * m) * &c)),
                            _ => ModuleVector::zero(),
                        };
                        check.checked += 1;
                        let defect = &lhs - &rhs;
                        if !defect.is_zero() {
                            check.witness = Some(Witness {
                                relation: format!("{} with n={n}, m={m}", check.family),
                                level: lvl,
                                vector: x.to_string(),
                                defect: defect.to_string(),
                            });
                            break 'outer;
                        }
                    }
                }
            }
        }
        out.push(check);
    }
    Ok(out)
}

/// Kernel vectors stay in the kernel under `L(-1), L(-2), W(-1), W(-2)`,
/// checked from levels `0..=max_level`.
pub fn kernel_is_stable(ops: &ScreeningOps, max_level: u32) -> Result<bool> {
    let vac_w = PsiModel::new(ops.vacuum.clone())?;
    for lvl in 0..=max_level {
        for x in ops.kernel(lvl)? {
            for mode in [Mode::l(-1), Mode::l(-2), Mode::w(-1), Mode::w(-2)] {
                let y = vac_w.act(mode, &x)?;
                if !ops.apply(Screening::S1, 0, &y)?.is_zero() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// `S_i(m)` kills the maximal submodule of `V^H(0,0)` through `max_level`,
/// so it descends to the vacuum module.
pub fn descends_to_vacuum(ops: &ScreeningOps, max_level: u32) -> Result<bool> {
    let sub: &Submodule = ops.vacuum.submodule();
    for lvl in 0..=max_level {
        for x in sub.basis(lvl)? {
            for which in [Screening::S0, Screening::S1] {
                for m in -2..=2 {
                    if !ops.apply(which, m, &x)?.is_zero() {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// `rank S_1(0)` at level `n` equals `dim L^H(1,0)` at level `n - 1`.
pub fn rank_complement(ops: &ScreeningOps, max_level: u32) -> Result<bool> {
    let data = kernel_data(ops, max_level)?;
    let target = HighestWeightSpec::hv(ops.u.charges.clone(), Rational::one(), Rational::zero());
    let dims = irr_graded_dims(&target, max_level.saturating_sub(1))?;
    Ok((1..=max_level as usize).all(|n| data.ranks[n] == dims[n - 1]))
}

/// Whether `x` in the module induced from `E` is killed by `L(1), L(2), I(1)`.
pub fn is_singular_in_induced(induced: &InducedModule, x: &ModuleVector) -> Result<bool> {
    for op in annihilators(AlgebraKind::Hv) {
        if !induced.apply_mode(op, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_charges;
    use crate::rational::frac;

    fn ops() -> ScreeningOps {
        ScreeningOps::new(&make_charges(frac(3, 7), frac(-5, 2)).unwrap()).unwrap()
    }

    #[test]
    fn u_dims() {
        let o = ops();
        assert_eq!(o.u().dims(3), [2, 3, 8, 15]);
        assert!(is_singular_in_induced(o.u().induced(), o.u().relation()).unwrap());
        let other = ext_relation(o.u().induced(), BaseTag::V1).unwrap();
        assert!(!is_singular_in_induced(o.u().induced(), &other).unwrap());
    }

    #[test]
    fn special_values() {
        let o = ops();
        let vac = o.vacuum();
        let one = vac.reduce(&ModuleVector::from_monomial(Monomial::base_only(
            Family::I,
            BaseTag::Vacuum,
        )));
        assert!(o.apply(Screening::S1, 0, &one).unwrap().is_zero());
        let i1 = vac.act(Mode::i(-1), &one).unwrap();
        let v0 = o
            .u()
            .quotient()
            .reduce(&ModuleVector::from_monomial(Monomial::base_only(
                Family::I,
                BaseTag::V0,
            )));
        assert_eq!(o.apply(Screening::S1, 0, &i1).unwrap(), -&v0);
        let l2 = vac.act(Mode::l(-2), &one).unwrap();
        assert!(o.apply(Screening::S1, 0, &l2).unwrap().is_zero());
        let w = PsiModel::new(vac.clone()).unwrap();
        let w2 = w.act(Mode::w(-2), &one).unwrap();
        assert!(o.apply(Screening::S1, 0, &w2).unwrap().is_zero());
    }

    #[test]
    fn kernel_small() {
        let o = ops();
        assert_eq!(kernel_data(&o, 4).unwrap().kernel_dims, [1, 0, 2, 2, 5]);
    }

    #[test]
    fn commutators_low() {
        let o = ops();
        for f in verify_screening_commutators(&o, 2).unwrap() {
            assert!(f.passed(), "{f:?}");
        }
        assert!(descends_to_vacuum(&o, 3).unwrap());
    }
}
