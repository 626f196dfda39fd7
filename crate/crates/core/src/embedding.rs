//! The W(2,2) action on Heisenberg–Virasoro modules through the
//! quadratic realization of `W`, and branching certificates.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::{AlgebraKind, CentralCharges, Family, Mode};
use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::model::{annihilated_space, annihilators, GradedModel, Submodule};
use crate::pbw::{BaseTag, ModuleVector, Monomial};
use crate::rational::{frac, int, Rational};
use crate::series::{p2, Series};
use crate::verma::{
    character, classify, find_singular, irr_graded_dims, irreducible, substitute,
    AtypicalityReport, Branch, HighestWeightSpec,
};

/// An HV module viewed as a W(2,2) module: `L(n)` acts as before and
/// `W(n) = -2 c_LI (n + 1) I(n) + sum_i I(-i) I(n + i)`.
pub struct PsiModel {
    host: Arc<dyn GradedModel>,
    cache: Mutex<HashMap<(i64, Monomial), ModuleVector>>,
}

impl std::fmt::Debug for PsiModel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PsiModel").finish_non_exhaustive()
    }
}

impl PsiModel {
    pub fn new(host: Arc<dyn GradedModel>) -> Result<Self> {
        if host.kind() != AlgebraKind::Hv {
            return Err(Error::Invalid(
                "the W action needs a Heisenberg-Virasoro host".into(),
            ));
        }
        Ok(PsiModel {
            host,
            cache: Mutex::new(HashMap::new()),
        })
    }

    pub fn host(&self) -> &Arc<dyn GradedModel> {
        &self.host
    }

    fn w_mono(&self, n: i64, m: &Monomial) -> Result<ModuleVector> {
        let key = (n, m.clone());
        if let Some(v) = self.cache.lock().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = w_mode_uncached(
            &*self.host,
            n,
            &ModuleVector::from_monomial(m.clone()),
            m.level(),
        )?;
        self.cache
            .lock()
            .expect("cache lock")
            .insert(key, v.clone());
        Ok(v)
    }
}

fn w_mode_uncached<M: GradedModel + ?Sized>(
    host: &M,
    n: i64,
    x: &ModuleVector,
    level: u32,
) -> Result<ModuleVector> {
    let lvl = level as i64;
    if n > lvl {
        return Ok(ModuleVector::zero());
    }
    let c = host.charges().c_li().clone();
    let mut out = host.act(Mode::i(n), x)?.scaled(&(int(-2) * c * int(n + 1)));
    for i in -lvl..=(lvl - n) {
        let (a, b) = if -i >= n + i {
            (-i, n + i)
        } else {
            (n + i, -i)
        };
        let first = host.act(Mode::i(a), x)?;
        if first.is_zero() {
            continue;
        }
        out += &host.act(Mode::i(b), &first)?;
    }
    Ok(out)
}

/// `W(n) x` in an HV module.
pub fn w_mode<M: GradedModel + ?Sized>(host: &M, n: i64, x: &ModuleVector) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (m, c) in x.terms() {
        let single = ModuleVector::from_monomial(m.clone());
        out.add_scaled(c, &w_mode_uncached(host, n, &single, m.level())?);
    }
    Ok(out)
}

impl GradedModel for PsiModel {
    fn kind(&self) -> AlgebraKind {
        AlgebraKind::W22
    }

    fn charges(&self) -> &CentralCharges {
        self.host.charges()
    }

    fn basis(&self, level: u32) -> Vec<Monomial> {
        self.host.basis(level)
    }

    fn reduce(&self, v: &ModuleVector) -> ModuleVector {
        self.host.reduce(v)
    }

    fn act(&self, mode: Mode, v: &ModuleVector) -> Result<ModuleVector> {
        match mode.family {
            Family::Vir => self.host.act(mode, v),
            Family::W => {
                let mut out = ModuleVector::zero();
                for (m, c) in v.terms() {
                    out.add_scaled(c, &self.w_mono(mode.index, m)?);
                }
                Ok(out)
            }
            Family::I => Err(Error::MixedAlgebra {
                mode,
                kind: AlgebraKind::W22,
            }),
        }
    }
}

/// First failing identity found by a relation check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub relation: String,
    pub level: u32,
    pub vector: String,
    pub defect: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub checked: usize,
    pub witness: Option<Witness>,
}

impl RelationReport {
    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }
}

/// Checks `[L(n), W(m)] = (n - m) W(n + m) + delta_{n,-m} (n^3 - n)/12 c_W`
/// and `[W(n), W(m)] = 0` for `|n|, |m| <= 3` on every basis vector of the
/// host at levels `0..=max_level`, using `c_w` as the claimed charge.
pub fn verify_w22_relations(
    host: Arc<dyn GradedModel>,
    max_level: u32,
    c_w: &Rational,
) -> Result<RelationReport> {
    let psi = PsiModel::new(host)?;
    let mut checked = 0;
    for lvl in 0..=max_level {
        for b in psi.basis(lvl) {
            let x = ModuleVector::from_monomial(b.clone());
            for n in -3i64..=3 {
                for m in -3i64..=3 {
                    let lw = psi.act(Mode::l(n), &psi.act(Mode::w(m), &x)?)?;
                    let wl = psi.act(Mode::w(m), &psi.act(Mode::l(n), &x)?)?;
                    let mut want = psi.act(Mode::w(n + m), &x)?.scaled(&int(n - m));
                    if n + m == 0 {
                        want.add_scaled(&(frac(n * n * n - n, 12) * c_w), &x);
                    }
                    let defect = &(&lw - &wl) - &want;
                    checked += 1;
                    if !defect.is_zero() {
                        return Ok(fail(checked, format!("[L({n}),W({m})]"), lvl, &x, &defect));
                    }
                    if n < m {
                        let ww = psi.act(Mode::w(n), &psi.act(Mode::w(m), &x)?)?;
                        let ww2 = psi.act(Mode::w(m), &psi.act(Mode::w(n), &x)?)?;
                        let defect = &ww - &ww2;
                        checked += 1;
                        if !defect.is_zero() {
                            return Ok(fail(checked, format!("[W({n}),W({m})]"), lvl, &x, &defect));
                        }
                    }
                }
            }
        }
    }
    Ok(RelationReport {
        checked,
        witness: None,
    })
}

fn fail(
    checked: usize,
    relation: String,
    level: u32,
    x: &ModuleVector,
    defect: &ModuleVector,
) -> RelationReport {
    RelationReport {
        checked,
        witness: Some(Witness {
            relation,
            level,
            vector: x.to_string(),
            defect: defect.to_string(),
        }),
    }
}

/// Image of a vector of the W(2,2) Verma module `source` in the HV Verma
/// module `target` under the map fixing highest-weight vectors.
pub fn psi_map(
    y: &ModuleVector,
    source: &HighestWeightSpec,
    target: &HighestWeightSpec,
) -> Result<ModuleVector> {
    if source.kind() != AlgebraKind::W22 || target.kind() != AlgebraKind::Hv {
        return Err(Error::IncompatibleWeights(
            "expected a W(2,2) source and an HV target".into(),
        ));
    }
    if target.to_w22() != *source {
        return Err(Error::IncompatibleWeights(format!(
            "{} does not restrict to {}",
            target.describe(),
            source.describe()
        )));
    }
    let psi = PsiModel::new(target.verma())?;
    let hw = ModuleVector::from_monomial(Monomial::base_only(Family::I, BaseTag::Hw));
    substitute(&psi, y, &hw)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub name: String,
    pub passed: bool,
    pub level: Option<u32>,
    pub detail: String,
}

/// Branching of an irreducible HV module over W(2,2), through level `max_level`.
#[derive(Debug, Clone, Serialize)]
pub struct BranchReport {
    pub spec: HighestWeightSpec,
    pub atypicality: AtypicalityReport,
    pub max_level: u32,
    pub host_dims: Vec<usize>,
    /// Dimensions of the W-singular space of the host at levels `1..=max_level`.
    pub w_singular_dims: Vec<usize>,
    pub submodule_dims: Vec<usize>,
    pub quotient_dims: Vec<usize>,
    pub expected_submodule_dims: Vec<usize>,
    pub expected_quotient_dims: Vec<usize>,
    pub certificates: Vec<Certificate>,
}

impl BranchReport {
    pub fn dims_consistent(&self) -> bool {
        self.submodule_dims == self.expected_submodule_dims
            && self.quotient_dims == self.expected_quotient_dims
            && self
                .host_dims
                .iter()
                .zip(&self.submodule_dims)
                .zip(&self.quotient_dims)
                .all(|((h, s), q)| *h == s + q)
    }

    pub fn passed(&self) -> bool {
        let typical_ok =
            self.atypicality.is_atypical() || self.w_singular_dims.iter().all(|&d| d == 0);
        typical_ok && self.dims_consistent() && self.certificates.iter().all(|c| c.passed)
    }
}

fn shifted_dims(s: &Series, by: u32) -> Vec<usize> {
    s.shifted(by).to_dims()
}

pub fn w_closure_dims(
    model: Arc<dyn GradedModel>,
    gens: &[ModuleVector],
    max_level: u32,
) -> Result<(Submodule, Vec<usize>)> {
    let psi: Arc<dyn GradedModel> = Arc::new(PsiModel::new(model)?);
    let sub = Submodule::generated(psi, gens)?;
    let dims = sub.dims(max_level)?;
    Ok((sub, dims))
}

pub fn branch(spec: &HighestWeightSpec, max_level: u32) -> Result<BranchReport> {
    if spec.kind() != AlgebraKind::Hv {
        return Err(Error::Invalid(
            "branching starts from a Heisenberg-Virasoro weight".into(),
        ));
    }
    let n = max_level;
    let rep = classify(spec);
    let host: Arc<dyn GradedModel> = Arc::new(irreducible(spec, n)?);
    let psi = PsiModel::new(host.clone())?;
    let host_dims: Vec<usize> = (0..=n).map(|l| host.dim(l)).collect();
    let w_ann = annihilators(AlgebraKind::W22);
    let mut singular = Vec::new();
    for l in 1..=n {
        singular.push(annihilated_space(&psi, &w_ann, l)?);
    }
    let w_singular_dims = singular.iter().map(Vec::len).collect();
    let w_spec = spec.to_w22();
    let hw = host.reduce(&ModuleVector::from_monomial(Monomial::base_only(
        Family::I,
        BaseTag::Hw,
    )));

    let mut certificates = Vec::new();
    let (submodule_dims, expected_submodule_dims, expected_quotient_dims) =
        match (rep.pr(), rep.branch) {
            (Some((p, r)), Some(br)) => {
                let top = r * p;
                let upper = character(&w_spec.shifted(top), n);
                let lower = character(&w_spec, n);
                let (hw_sub, hw_dims) = w_closure_dims(host.clone(), std::slice::from_ref(&hw), n)?;
                match br {
                    Branch::Plus => {
                        let found: Vec<ModuleVector> = if top <= n {
                            singular[(top - 1) as usize].clone()
                        } else {
                            Vec::new()
                        };
                        certificates.push(Certificate {
                            name: "unique W-singular vector".into(),
                            passed: top > n || found.len() == 1,
                            level: Some(top),
                            detail: format!(
                                "{} independent W-singular vectors at level {top}",
                                found.len()
                            ),
                        });
                        let (_, sub_dims) = w_closure_dims(host.clone(), &found, n)?;
                        let full = hw_dims == host_dims;
                        let nonzero = sub_dims.iter().any(|&d| d > 0);
                        certificates.push(Certificate {
                            name: "non-split (plus)".into(),
                            passed: full && (nonzero || top > n),
                            level: Some(top),
                            detail: format!("W-closure of hw has dims {hw_dims:?}"),
                        });
                        (sub_dims, shifted_dims(&upper, top), lower.to_dims())
                    }
                    Branch::Minus => {
                        let at_top: Vec<ModuleVector> = if top <= n {
                            singular[(top - 1) as usize].clone()
                        } else {
                            Vec::new()
                        };
                        let inside = at_top.iter().all(|x| hw_sub.contains(x));
                        let proper = top > n || hw_dims[top as usize] < host_dims[top as usize];
                        certificates.push(Certificate {
                            name: "non-split (minus)".into(),
                            passed: inside && proper,
                            level: Some(top),
                            detail: format!(
                            "{} W-singular vectors at level {top}, all inside the W-closure of hw",
                            at_top.len()
                        ),
                        });
                        (hw_dims, lower.to_dims(), shifted_dims(&upper, top))
                    }
                }
            }
            _ => (
                vec![0; n as usize + 1],
                vec![0; n as usize + 1],
                character(&w_spec, n).to_dims(),
            ),
        };
    let quotient_dims = host_dims
        .iter()
        .zip(&submodule_dims)
        .map(|(h, s)| h - s.min(h))
        .collect();
    Ok(BranchReport {
        spec: spec.clone(),
        atypicality: rep,
        max_level: n,
        host_dims,
        w_singular_dims,
        submodule_dims,
        quotient_dims,
        expected_submodule_dims,
        expected_quotient_dims,
        certificates,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContragredientReport {
    pub spec: HighestWeightSpec,
    pub dual: HighestWeightSpec,
    pub dims: Vec<usize>,
    pub dual_dims: Vec<usize>,
}

impl ContragredientReport {
    pub fn passed(&self) -> bool {
        self.dims == self.dual_dims
    }
}

pub fn contragredient_check(
    spec: &HighestWeightSpec,
    max_level: u32,
) -> Result<ContragredientReport> {
    let dual = spec.dual();
    Ok(ContragredientReport {
        spec: spec.clone(),
        dims: irr_graded_dims(spec, max_level)?,
        dual_dims: irr_graded_dims(&dual, max_level)?,
        dual,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainEntry {
    pub level: u32,
    pub vector: String,
    pub h_singular: bool,
    pub w_singular: bool,
    pub closure_dims: Vec<usize>,
    pub expected_dims: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub spec: HighestWeightSpec,
    pub p: u32,
    pub chain: Vec<ChainEntry>,
    pub dim_sums: Vec<usize>,
    pub verma_dims: Vec<usize>,
    pub independent: bool,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.independent
            && self.dim_sums == self.verma_dims
            && self
                .chain
                .iter()
                .all(|c| c.h_singular && c.w_singular && c.closure_dims == c.expected_dims)
    }
}

/// Splits `V^H(h, (1 - p) c_LI)` into the W-closures of its singular
/// chain `v_{ip}` through level `max_level`.
pub fn verma_branch_decomposition(
    h: Rational,
    p: u32,
    charges: &CentralCharges,
    max_level: u32,
) -> Result<DecompositionReport> {
    let n = max_level;
    let h_i = int(1 - p as i64) * charges.c_li();
    let spec = HighestWeightSpec::hv(charges.clone(), h, h_i);
    if classify(&spec).is_atypical() {
        return Err(Error::Atypical(format!(
            "{}; use branch for atypical weights",
            spec.describe()
        )));
    }
    if p == 0 {
        return Err(Error::Invalid("p must be positive".into()));
    }
    let verma = spec.verma();
    let psi = PsiModel::new(verma.clone())?;
    let w_ann = annihilators(AlgebraKind::W22);
    let h_ann = annihilators(AlgebraKind::Hv);
    let w_spec = spec.to_w22();
    let mut chain = Vec::new();
    let mut subs = Vec::new();
    let mut i = 0;
    while i * p <= n {
        let lvl = i * p;
        let x = if i == 0 {
            verma.base_vector(BaseTag::Hw)
        } else {
            let found = find_singular(&spec, lvl)?;
            if found.len() != 1 {
                return Err(Error::Invalid(format!(
                    "expected one singular vector at level {lvl}, found {}",
                    found.len()
                )));
            }
            found.into_iter().next().expect("one vector")
        };
        let annihilated = |ops: &[Mode], m: &dyn GradedModel| -> Result<bool> {
            for &op in ops {
                if !m.act(op, &x)?.is_zero() {
                    return Ok(false);
                }
            }
            Ok(true)
        };
        let h_singular = annihilated(&h_ann, &*verma)?;
        let w_singular = annihilated(&w_ann, &psi)?;
        let (sub, closure_dims) = w_closure_dims(verma.clone(), std::slice::from_ref(&x), n)?;
        let expected_dims = shifted_dims(&character(&w_spec.shifted(lvl), n), lvl);
        chain.push(ChainEntry {
            level: lvl,
            vector: x.to_string(),
            h_singular,
            w_singular,
            closure_dims,
            expected_dims,
        });
        subs.push(sub);
        i += 1;
    }
    let mut independent = true;
    let mut dim_sums = Vec::new();
    for lvl in 0..=n {
        let mut ech = Echelon::new();
        let mut total = 0;
        for s in &subs {
            for v in s.basis(lvl)? {
                total += 1;
                if !ech.insert(&v) {
                    independent = false;
                }
            }
        }
        dim_sums.push(total);
    }
    Ok(DecompositionReport {
        spec,
        p,
        chain,
        dim_sums,
        verma_dims: (0..=n).map(|l| p2(l) as usize).collect(),
        independent,
    })
}

/// `v_r^- = prod_{i=0}^{r-1} (L(-1) + (1 - r + 2i)/(2 c_LI) I(-1)) hw` in
/// `V^H((1 - r)/2, 0)`. Factor `i` acts on weight `(1 - r)/2 + i`, so the
/// `i = 0` factor is rightmost.
pub fn v_r_minus(r: u32, charges: &CentralCharges) -> Result<(HighestWeightSpec, ModuleVector)> {
    if r == 0 {
        return Err(Error::Invalid("r must be positive".into()));
    }
    let ri = r as i64;
    let spec = HighestWeightSpec::hv(charges.clone(), frac(1 - ri, 2), Rational::zero());
    let v = spec.verma();
    let mut x = v.base_vector(BaseTag::Hw);
    for i in 0..ri {
        let a = int(1 - ri + 2 * i) / (int(2) * charges.c_li());
        let mut next = v.apply_mode(Mode::l(-1), &x)?;
        next.add_scaled(&a, &v.apply_mode(Mode::i(-1), &x)?);
        x = next;
    }
    Ok((spec, x))
}

/// Whether every annihilator of the algebra kills `x`.
pub fn is_singular<M: GradedModel + ?Sized>(model: &M, x: &ModuleVector) -> Result<bool> {
    for op in annihilators(model.kind()) {
        if !model.act(op, x)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(!x.is_zero())
}
