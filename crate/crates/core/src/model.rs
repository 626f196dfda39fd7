//! Graded module models and the generic algorithms run on them:
//! operator matrices, annihilator solving, submodule closures and
//! quotients.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::{Arc, Mutex};

use crate::algebra::{AlgebraKind, CentralCharges, Mode};
use crate::error::{Error, Result};
use crate::linalg::{coordinates, Echelon, LevelMatrix};
use crate::pbw::{InducedModule, ModuleVector, Monomial};

/// A module graded by level, with a canonical monomial basis per level and
/// an action of one of the two algebras. Vectors handed out by `act` are
/// always in reduced form.
pub trait GradedModel: Send + Sync {
    /// Algebra whose modes `act` accepts.
    fn kind(&self) -> AlgebraKind;
    fn charges(&self) -> &CentralCharges;
    fn basis(&self, level: u32) -> Vec<Monomial>;
    /// Canonical representative (identity for free modules).
    fn reduce(&self, v: &ModuleVector) -> ModuleVector;
    fn act(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector>;

    fn dim(&self, level: u32) -> usize {
        self.basis(level).len()
    }
}

impl GradedModel for InducedModule {
    fn kind(&self) -> AlgebraKind {
        InducedModule::kind(self)
    }

    fn charges(&self) -> &CentralCharges {
        InducedModule::charges(self)
    }

    fn basis(&self, level: u32) -> Vec<Monomial> {
        self.level_basis(level)
    }

    fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        v.clone()
    }

    fn act(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        self.apply_mode(mode, v)
    }
}

impl<T: GradedModel + ?Sized> GradedModel for Arc<T> {
    fn kind(&self) -> AlgebraKind {
        (**self).kind()
    }
    fn charges(&self) -> &CentralCharges {
        (**self).charges()
    }
    fn basis(&self, level: u32) -> Vec<Monomial> {
        (**self).basis(level)
    }
    fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        (**self).reduce(v)
    }
    fn act(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        (**self).act(mode, v)
    }
    fn dim(&self, level: u32) -> usize {
        (**self).dim(level)
    }
}

pub fn apply_word<M: GradedModel + ?Sized>(
    model: &M,
    word: &[Mode],
    v: &ModuleVector,
) -> Result<ModuleVector> {
    let mut v = model.reduce(v);
    for &m in word.iter().rev() {
        v = model.act(m, &v)?;
    }
    Ok(v)
}

/// Generators of the positive part used as annihilator tests:
/// `{L(1), L(2), I(1)}` or `{L(1), L(2), W(1), W(2)}`. `W(2)` is needed
/// because `[L(1), W(1)] = 0`.
pub fn annihilators(kind: AlgebraKind) -> Vec<Mode> {
    match kind {
        AlgebraKind::Hv => vec![Mode::l(1), Mode::l(2), Mode::i(1)],
        AlgebraKind::W22 => vec![Mode::l(1), Mode::l(2), Mode::w(1), Mode::w(2)],
    }
}

fn positive_generators(kind: AlgebraKind) -> Vec<Mode> {
    let x = kind.extra_family();
    vec![Mode::l(1), Mode::l(2), Mode::new(x, 1), Mode::new(x, 2)]
}

fn negative_generators(kind: AlgebraKind) -> Vec<Mode> {
    let x = kind.extra_family();
    vec![Mode::l(-1), Mode::l(-2), Mode::new(x, -1), Mode::new(x, -2)]
}

/// Matrix of `mode` from `level` to `level - mode.index`.
pub fn operator_matrix<M: GradedModel + ?Sized>(
    model: &M,
    mode: Mode,
    level: u32,
) -> Result<LevelMatrix> {
    let src = model.basis(level);
    let target = level as i64 - mode.index;
    if target < 0 {
        return Ok(LevelMatrix::zeros(0, src.len()));
    }
    let dst = model.basis(target as u32);
    let mut mat = LevelMatrix::zeros(dst.len(), src.len());
    for (j, b) in src.iter().enumerate() {
        let img = model.act(mode, &ModuleVector::from_monomial(b.clone()))?;
        for (i, c) in coordinates(&dst, &img).into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    Ok(mat)
}

/// Basis of the combinations `x` of `candidates` with `op x` in `modulo`
/// (or zero) for every `op`, returned as a reduced echelon basis with
/// leading coefficients 1, greatest leading monomial first.
pub fn solve_annihilated<M: GradedModel + ?Sized>(
    model: &M,
    candidates: &[ModuleVector],
    ops: &[Mode],
    modulo: Option<&Submodule>,
) -> Result<Vec<ModuleVector>> {
    if candidates.is_empty() {
        return Ok(Vec::new());
    }
    let mut blocks = Vec::new();
    for &op in ops {
        let images: Vec<ModuleVector> = candidates
            .iter()
            .map(|c| {
                let img = model.act(op, c)?;
                Ok(match modulo {
                    Some(s) => s.reduce(&img),
                    None => img,
                })
            })
            .collect::<Result<_>>()?;
        let monos: BTreeSet<Monomial> = images
            .iter()
            .flat_map(|v| v.terms().map(|(m, _)| m.clone()))
            .collect();
        let monos: Vec<Monomial> = monos.into_iter().collect();
        let mut mat = LevelMatrix::zeros(monos.len(), candidates.len());
        for (j, img) in images.iter().enumerate() {
            for (i, c) in coordinates(&monos, img).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        blocks.push(mat);
    }
    let stacked = LevelMatrix::vstack(&blocks);
    let mut ech = Echelon::new();
    for x in stacked.nullspace() {
        let mut v = ModuleVector::zero();
        for (c, cand) in x.iter().zip(candidates) {
            v.add_scaled(c, cand);
        }
        ech.insert(&v);
    }
    Ok(ech.basis())
}

/// Vectors at `level` killed by every op in `ops`.
pub fn annihilated_space<M: GradedModel + ?Sized>(
    model: &M,
    ops: &[Mode],
    level: u32,
) -> Result<Vec<ModuleVector>> {
    let cands: Vec<ModuleVector> = model
        .basis(level)
        .into_iter()
        .map(ModuleVector::from_monomial)
        .collect();
    solve_annihilated(model, &cands, ops, None)
}

/// Submodule `U(g) S` generated by homogeneous vectors, computed level by
/// level as `U(g^-) U(g^0) U(g^+) S`. The downward part is finite; upper
/// levels are filled in on demand.
pub struct Submodule {
    model: Arc<dyn GradedModel>,
    seeds: BTreeMap<u32, Echelon>,
    levels: Mutex<Vec<Echelon>>,
}

impl std::fmt::Debug for Submodule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let n = self.levels.lock().map(|l| l.len()).unwrap_or(0);
        f.debug_struct("Submodule")
            .field("computed_levels", &n)
            .finish()
    }
}

impl Submodule {
    pub fn generated(model: Arc<dyn GradedModel>, generators: &[ModuleVector]) -> Result<Self> {
        let kind = model.kind();
        let zero = Mode::new(kind.extra_family(), 0);
        let mut seeds: BTreeMap<u32, Echelon> = BTreeMap::new();
        for g in generators {
            let g = model.reduce(g);
            if g.is_zero() {
                continue;
            }
            let lvl = g
                .level()
                .ok_or_else(|| Error::Invalid(format!("generator {g} is not homogeneous")))?;
            seeds.entry(lvl).or_default().insert(&g);
        }
        let top = seeds.keys().next_back().copied();
        if let Some(top) = top {
            for lvl in (0..=top).rev() {
                // zero-mode closure at this level
                let mut ech = seeds.remove(&lvl).unwrap_or_default();
                let mut queue = ech.basis();
                while let Some(v) = queue.pop() {
                    let img = model.act(zero, &v)?;
                    if ech.insert(&img) {
                        queue.push(img);
                    }
                }
                for v in ech.basis() {
                    for op in positive_generators(kind) {
                        let k = op.index as u32;
                        if k > lvl {
                            continue;
                        }
                        let img = model.act(op, &v)?;
                        seeds.entry(lvl - k).or_default().insert(&img);
                    }
                }
                if !ech.is_empty() {
                    seeds.insert(lvl, ech);
                }
            }
        }
        Ok(Submodule {
            model,
            seeds,
            levels: Mutex::new(Vec::new()),
        })
    }

    pub fn model(&self) -> &Arc<dyn GradedModel> {
        &self.model
    }

    fn ensure(&self, level: u32) -> Result<std::sync::MutexGuard<'_, Vec<Echelon>>> {
        let mut levels = self.levels.lock().expect("submodule lock poisoned");
        let kind = self.model.kind();
        while levels.len() <= level as usize {
            let n = levels.len() as u32;
            let mut ech = self.seeds.get(&n).cloned().unwrap_or_default();
            for op in negative_generators(kind) {
                let k = (-op.index) as u32;
                if k > n {
                    continue;
                }
                for v in levels[(n - k) as usize].basis() {
                    let img = self.model.act(op, &v)?;
                    ech.insert(&img);
                }
            }
            levels.push(ech);
        }
        Ok(levels)
    }

    pub fn level(&self, level: u32) -> Result<Echelon> {
        Ok(self.ensure(level)?[level as usize].clone())
    }

    pub fn dim(&self, level: u32) -> Result<usize> {
        Ok(self.ensure(level)?[level as usize].dim())
    }

    pub fn dims(&self, max_level: u32) -> Result<Vec<usize>> {
        let levels = self.ensure(max_level)?;
        Ok(levels[..=max_level as usize]
            .iter()
            .map(Echelon::dim)
            .collect())
    }

    pub fn basis(&self, level: u32) -> Result<Vec<ModuleVector>> {
        Ok(self.ensure(level)?[level as usize].basis())
    }

    /// Reduces a (possibly inhomogeneous) vector modulo the submodule.
    pub fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        let Some(top) = v.max_level() else {
            return ModuleVector::zero();
        };
        let levels = self.ensure(top).expect("submodule extension failed");
        let mut out = v.clone();
        let mut by_level: BTreeMap<u32, ModuleVector> = BTreeMap::new();
        for (m, c) in v.terms() {
            by_level
                .entry(m.level())
                .or_default()
                .add_term(m.clone(), c.clone());
        }
        for (lvl, part) in by_level {
            let red = levels[lvl as usize].reduce(&part);
            out -= &part;
            out += &red;
        }
        out
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.reduce(&self.model.reduce(v)).is_zero()
    }
}

/// Per-level dimensions and reduced bases of a closure.
#[derive(Debug, Clone)]
pub struct ClosureData {
    pub dims: Vec<usize>,
    pub bases: Vec<Vec<ModuleVector>>,
}

pub fn submodule_closure(
    model: Arc<dyn GradedModel>,
    generators: &[ModuleVector],
    max_level: u32,
) -> Result<ClosureData> {
    let sub = Submodule::generated(model, generators)?;
    let dims = sub.dims(max_level)?;
    let bases = (0..=max_level)
        .map(|n| sub.basis(n))
        .collect::<Result<_>>()?;
    Ok(ClosureData { dims, bases })
}

/// `ambient / submodule`, with representatives reduced against the
/// submodule's echelon basis; the complement basis at each level is the set
/// of non-pivot monomials.
pub struct QuotientModule {
    ambient: Arc<dyn GradedModel>,
    sub: Submodule,
}

impl std::fmt::Debug for QuotientModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("QuotientModule")
            .field("sub", &self.sub)
            .finish()
    }
}

impl QuotientModule {
    pub fn new(ambient: Arc<dyn GradedModel>, generators: &[ModuleVector]) -> Result<Self> {
        let sub = Submodule::generated(ambient.clone(), generators)?;
        Ok(QuotientModule { ambient, sub })
    }

    pub fn ambient(&self) -> &Arc<dyn GradedModel> {
        &self.ambient
    }

    pub fn submodule(&self) -> &Submodule {
        &self.sub
    }

    pub fn submodule_dims(&self, max_level: u32) -> Result<Vec<usize>> {
        self.sub.dims(max_level)
    }

    pub fn dims(&self, max_level: u32) -> Vec<usize> {
        (0..=max_level).map(|n| self.dim(n)).collect()
    }

    /// Matrix sending ambient coordinates at `level` to complement
    /// coordinates.
    pub fn projection_matrix(&self, level: u32) -> LevelMatrix {
        let src = self.ambient.basis(level);
        let dst = self.basis(level);
        let mut mat = LevelMatrix::zeros(dst.len(), src.len());
        for (j, b) in src.iter().enumerate() {
            let r = self.reduce(&ModuleVector::from_monomial(b.clone()));
            for (i, c) in coordinates(&dst, &r).into_iter().enumerate() {
                mat.set(i, j, c);
            }
        }
        mat
    }
}

impl GradedModel for QuotientModule {
    fn kind(&self) -> AlgebraKind {
        self.ambient.kind()
    }

    fn charges(&self) -> &CentralCharges {
        self.ambient.charges()
    }

    fn basis(&self, level: u32) -> Vec<Monomial> {
        let ech = self.sub.level(level).expect("submodule extension failed");
        self.ambient
            .basis(level)
            .into_iter()
            .filter(|m| !ech.is_pivot(m))
            .collect()
    }

    fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        self.sub.reduce(&self.ambient.reduce(v))
    }

    fn act(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        let img = self.ambient.act(mode, v)?;
        Ok(self.sub.reduce(&img))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::make_charges;
    use crate::pbw::{BaseTag, ModuleSpec};
    use crate::rational::{frac, int, Rational};
    use crate::series::p2;

    fn verma(kind: AlgebraKind, h: Rational, second: Rational) -> Arc<InducedModule> {
        let cc = make_charges(frac(2, 3), frac(5, 4)).unwrap();
        Arc::new(InducedModule::new(ModuleSpec::verma(
            kind,
            cc,
            BaseTag::Hw,
            h,
            second,
        )))
    }

    #[test]
    fn closure_of_hw_is_everything() {
        let v = verma(AlgebraKind::Hv, frac(1, 3), frac(2, 7));
        let hw = v.base_vector(BaseTag::Hw);
        let c = submodule_closure(v, &[hw], 5).unwrap();
        assert_eq!(c.dims, (0..=5).map(|n| p2(n) as usize).collect::<Vec<_>>());
    }

    #[test]
    fn quotient_by_nothing_is_identity() {
        let v = verma(AlgebraKind::W22, frac(1, 3), frac(2, 7));
        let q = QuotientModule::new(v.clone(), &[]).unwrap();
        for n in 0..4 {
            assert_eq!(q.basis(n), v.basis(n));
        }
    }

    #[test]
    fn operator_matrix_shapes() {
        let v = verma(AlgebraKind::Hv, int(0), int(1));
        let m = operator_matrix(&*v, Mode::l(2), 3).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 10));
        let m = operator_matrix(&*v, Mode::i(-1), 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (10, 5));
        let m = operator_matrix(&*v, Mode::l(3), 2).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 5));
    }

    #[test]
    fn inhomogeneous_generator_rejected() {
        let v = verma(AlgebraKind::Hv, int(0), int(1));
        let mut g = v.base_vector(BaseTag::Hw);
        g += &v.normal_order(&[Mode::l(-1)], BaseTag::Hw).unwrap();
        assert!(Submodule::generated(v, &[g]).is_err());
    }
}
