//! Highest weights, atypicality, singular and cosingular vectors, Gram
//! pairings and irreducible quotients of Verma modules.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{AlgebraKind, CentralCharges, Family, Mode};
use crate::error::{Error, Result};
use crate::linalg::{from_coordinates, Echelon, LevelMatrix};
use crate::model::{
    annihilated_space, annihilators, operator_matrix, solve_annihilated, GradedModel,
    QuotientModule, Submodule,
};
use crate::pbw::{BaseTag, InducedModule, ModuleSpec, ModuleVector, Monomial};
use crate::rational::{as_positive_int, exact_sqrt, fmt_rational, frac, int, Rational};
use crate::series::{p2_series, Series};

/// Highest weight `(h, h_I)` for the Heisenberg–Virasoro algebra or
/// `(h, h_W)` for W(2,2).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HighestWeightSpec {
    kind: AlgebraKind,
    charges: CentralCharges,
    #[serde(with = "crate::rational::serde_str")]
    h: Rational,
    #[serde(with = "crate::rational::serde_str")]
    second: Rational,
}

impl HighestWeightSpec {
    pub fn hv(charges: CentralCharges, h: Rational, h_i: Rational) -> Self {
        HighestWeightSpec {
            kind: AlgebraKind::Hv,
            charges,
            h,
            second: h_i,
        }
    }

    pub fn w22(charges: CentralCharges, h: Rational, h_w: Rational) -> Self {
        HighestWeightSpec {
            kind: AlgebraKind::W22,
            charges,
            h,
            second: h_w,
        }
    }

    pub fn kind(&self) -> AlgebraKind {
        self.kind
    }

    pub fn charges(&self) -> &CentralCharges {
        &self.charges
    }

    pub fn h(&self) -> &Rational {
        &self.h
    }

    /// `h_I` or `h_W`.
    pub fn second(&self) -> &Rational {
        &self.second
    }

    /// The W(2,2) weight seen through the embedding: `h_W = h_I (h_I - 2 c_LI)`.
    pub fn to_w22(&self) -> HighestWeightSpec {
        match self.kind {
            AlgebraKind::W22 => self.clone(),
            AlgebraKind::Hv => {
                let h_w = &self.second * (&self.second - int(2) * self.charges.c_li());
                HighestWeightSpec::w22(self.charges.clone(), self.h.clone(), h_w)
            }
        }
    }

    /// Weight of the contragredient pairing partner: `(h, 2c_LI - h_I)`
    /// for HV, the same weight for W(2,2).
    pub fn dual(&self) -> HighestWeightSpec {
        match self.kind {
            AlgebraKind::W22 => self.clone(),
            AlgebraKind::Hv => {
                let h_i = int(2) * self.charges.c_li() - &self.second;
                HighestWeightSpec::hv(self.charges.clone(), self.h.clone(), h_i)
            }
        }
    }

    pub fn shifted(&self, by: u32) -> HighestWeightSpec {
        let mut s = self.clone();
        s.h += int(by as i64);
        s
    }

    pub fn module_spec(&self, tag: BaseTag) -> ModuleSpec {
        ModuleSpec::verma(
            self.kind,
            self.charges.clone(),
            tag,
            self.h.clone(),
            self.second.clone(),
        )
    }

    pub fn verma(&self) -> Arc<InducedModule> {
        Arc::new(InducedModule::new(self.module_spec(BaseTag::Hw)))
    }

    pub fn describe(&self) -> String {
        let second = match self.kind {
            AlgebraKind::Hv => "h_I",
            AlgebraKind::W22 => "h_W",
        };
        format!(
            "{} h={} {}={}",
            self.kind,
            fmt_rational(&self.h),
            second,
            fmt_rational(&self.second)
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Typicality {
    Typical,
    Atypical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Plus,
    Minus,
}

/// Result of [`classify`]. `p` (and `branch` for HV) are reported whenever
/// the second weight determines them, even if `h` is not of the form
/// `h_{p,r}`; `classification` is atypical only when `r` exists too.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtypicalityReport {
    pub classification: Typicality,
    pub p: Option<u32>,
    pub r: Option<u32>,
    pub branch: Option<Branch>,
}

impl AtypicalityReport {
    pub fn is_atypical(&self) -> bool {
        self.classification == Typicality::Atypical
    }

    /// `(p, r)` of an atypical weight.
    pub fn pr(&self) -> Option<(u32, u32)> {
        match (self.classification, self.p, self.r) {
            (Typicality::Atypical, Some(p), Some(r)) => Some((p, r)),
            _ => None,
        }
    }
}

/// `h_{p,r} = (1 - p^2)(c_L - 2)/24 + p(p - 1) + p(1 - r)/2`.
pub fn h_pr(p: u32, r: i64, c_l: &Rational) -> Rational {
    let p = p as i64;
    int(1 - p * p) * (c_l - int(2)) / int(24) + int(p * (p - 1)) + frac(p * (1 - r), 2)
}

fn solve_r(p: u32, h: &Rational, c_l: &Rational) -> Option<u32> {
    // h = h_{p,1} + p(1 - r)/2 - p(1 - 1)/2, linear in r
    let base = h_pr(p, 1, c_l);
    let r = Rational::one() - int(2) * (h - base) / int(p as i64);
    as_positive_int(&r)
}

/// Level `p` at which the Verma module of the second weight has its first
/// singular vector, if any, together with the HV branch.
fn reducibility(spec: &HighestWeightSpec) -> Option<(u32, Option<Branch>)> {
    let cc = &spec.charges;
    match spec.kind {
        AlgebraKind::Hv => {
            let t = &spec.second / cc.c_li() - Rational::one();
            let p = as_positive_int(&t.abs())?;
            let branch = if t.is_negative() {
                Branch::Minus
            } else {
                Branch::Plus
            };
            Some((p, Some(branch)))
        }
        AlgebraKind::W22 => {
            let p_sq = Rational::one() - int(24) * &spec.second / cc.c_w();
            let p = exact_sqrt(&p_sq)?;
            Some((as_positive_int(&p)?, None))
        }
    }
}

pub fn classify(spec: &HighestWeightSpec) -> AtypicalityReport {
    match reducibility(spec) {
        None => AtypicalityReport {
            classification: Typicality::Typical,
            p: None,
            r: None,
            branch: None,
        },
        Some((p, branch)) => {
            let r = solve_r(p, &spec.h, spec.charges.c_l());
            let classification = if r.is_some() {
                Typicality::Atypical
            } else {
                Typicality::Typical
            };
            AtypicalityReport {
                classification,
                p: Some(p),
                r,
                branch,
            }
        }
    }
}

/// Coefficients of the graded character of the irreducible quotient up to
/// level `n`.
pub fn character(spec: &HighestWeightSpec, n: u32) -> Series {
    let base = p2_series(n);
    let rep = classify(spec);
    match (spec.kind, rep.p) {
        (_, None) => base,
        (AlgebraKind::Hv, Some(p)) => base.times_one_minus_q_pow(p),
        (AlgebraKind::W22, Some(p)) => match rep.r {
            Some(r) => base.times_one_minus_q_pow(p).times_one_minus_q_pow(r * p),
            None => base.times_one_minus_q_pow(p),
        },
    }
}

pub fn character_dims(spec: &HighestWeightSpec, n: u32) -> Vec<usize> {
    character(spec, n).to_dims()
}

/// Basis of the level-`n` singular vectors of the Verma module.
pub fn find_singular(spec: &HighestWeightSpec, n: u32) -> Result<Vec<ModuleVector>> {
    if n == 0 {
        return Err(Error::Invalid(
            "singular vectors live at positive levels".into(),
        ));
    }
    let v = spec.verma();
    annihilated_space(&*v, &annihilators(spec.kind), n)
}

/// The W-only singular vector `P hw` at level `p` of a W(2,2) Verma module
/// with `h_W = (1 - p^2) c_W / 24`.
pub fn w_singular_vector(spec: &HighestWeightSpec) -> Result<Option<ModuleVector>> {
    if spec.kind != AlgebraKind::W22 {
        return Err(Error::Invalid(
            "W-only singular vectors belong to W(2,2) weights".into(),
        ));
    }
    let Some((p, _)) = reducibility(spec) else {
        return Ok(None);
    };
    let v = spec.verma();
    let cands: Vec<ModuleVector> = v
        .level_basis(p)
        .into_iter()
        .filter(|m| m.l_part().is_empty())
        .map(ModuleVector::from_monomial)
        .collect();
    let sols = solve_annihilated(&*v, &cands, &annihilators(AlgebraKind::W22), None)?;
    Ok(sols.into_iter().next())
}

/// Applies the PBW operator of every term of `y` (a vector over some
/// highest-weight vector) to `target`.
pub fn substitute<M: GradedModel + ?Sized>(
    model: &M,
    y: &ModuleVector,
    target: &ModuleVector,
) -> Result<ModuleVector> {
    let mut out = ModuleVector::zero();
    for (m, c) in y.terms() {
        let img = crate::model::apply_word(model, &m.word(), target)?;
        out.add_scaled(c, &img);
    }
    Ok(out)
}

/// Vectors at level `n` that are singular modulo `<u'_p>`, as complement
/// representatives. For a weight with no singular vector `u'_p` these are
/// the ordinary singular vectors.
pub fn quotient_singular(spec: &HighestWeightSpec, n: u32) -> Result<Vec<ModuleVector>> {
    let v = spec.verma();
    let gens = match spec.kind {
        AlgebraKind::W22 => w_singular_vector(spec)?.into_iter().collect::<Vec<_>>(),
        AlgebraKind::Hv => match reducibility(spec) {
            Some((p, _)) => find_singular(spec, p)?,
            None => Vec::new(),
        },
    };
    let sub = Submodule::generated(v.clone(), &gens)?;
    let lvl = sub.level(n)?;
    let cands: Vec<ModuleVector> = v
        .level_basis(n)
        .into_iter()
        .filter(|m| !lvl.is_pivot(m))
        .map(ModuleVector::from_monomial)
        .collect();
    solve_annihilated(&*v, &cands, &annihilators(spec.kind), Some(&sub))
}

fn l_power(p: u32, r: u32) -> Monomial {
    Monomial::new(Family::W, vec![], vec![p; r as usize], BaseTag::Hw)
}

/// Cosingular vectors of an atypical W(2,2) Verma module at level `n`.
///
/// With `P` the W-only singular polynomial and `S_i = <P^i hw>`, the
/// vectors returned at level `n = (r - i) p` are lifts of the classes in
/// `S_i / S_{i+1}` that become singular modulo `S_{i+1}` and carry the
/// component `L(-p)^{r - 2i}` over `P^i hw`.
pub fn find_cosingular(spec: &HighestWeightSpec, n: u32) -> Result<Vec<ModuleVector>> {
    let w = spec.to_w22();
    let rep = classify(&w);
    let Some((p, r)) = rep.pr() else {
        return Err(Error::Typical(w.describe()));
    };
    if n == 0 {
        return Err(Error::Invalid(
            "cosingular vectors live at positive levels".into(),
        ));
    }
    let mut out = Vec::new();
    for i in 0..r {
        if r < 2 * i + 1 || (r - i) * p != n {
            continue;
        }
        let inner = w.shifted(i * p);
        let rr = r - 2 * i;
        let Some(x) = cosingular_top(&inner, p, rr)? else {
            continue;
        };
        if i == 0 {
            out.push(x);
            continue;
        }
        let big = w.verma();
        let poly = w_singular_vector(&w)?
            .ok_or_else(|| Error::Invalid("missing W-only singular vector".into()))?;
        let mut target = big.base_vector(BaseTag::Hw);
        for _ in 0..i {
            target = substitute(&*big, &poly, &target)?;
        }
        out.push(substitute(&*big, &x, &target)?.normalized());
    }
    Ok(out)
}

fn cosingular_top(spec: &HighestWeightSpec, p: u32, r: u32) -> Result<Option<ModuleVector>> {
    let marker = l_power(p, r);
    let found = quotient_singular(spec, r * p)?;
    Ok(found
        .into_iter()
        .find(|x| !x.coeff(&marker).is_zero())
        .map(|x| {
            let c = x.coeff(&marker);
            x.scaled(&(Rational::one() / c))
        }))
}

/// Contravariant pairing at one level. Rows are indexed by the PBW basis
/// of the dual-weight Verma module, columns by that of the module itself.
#[derive(Debug, Clone)]
pub struct GramData {
    pub level: u32,
    pub basis: Vec<Monomial>,
    pub matrix: LevelMatrix,
    pub rank: usize,
    pub radical: Vec<ModuleVector>,
}

/// Adjoint of a negative mode: `L(-n)^† = L(n)`, `W(-n)^† = W(n)`,
/// `I(-n)^† = -I(n)`.
fn adjoint(mode: Mode) -> (Rational, Mode) {
    let sign = if mode.family == Family::I {
        -Rational::one()
    } else {
        Rational::one()
    };
    (sign, Mode::new(mode.family, -mode.index))
}

/// Gram matrices for all levels `0..=n`, computed with
/// `<Y b, m> = <b, Y^† m>` from lower levels.
pub fn gram_matrices(spec: &HighestWeightSpec, n: u32) -> Result<Vec<GramData>> {
    let v = spec.verma();
    let mut mats: Vec<LevelMatrix> = Vec::new();
    let mut bases: Vec<Vec<Monomial>> = Vec::new();
    let mut out = Vec::new();
    for lvl in 0..=n {
        let basis = v.level_basis(lvl);
        let mut mat = LevelMatrix::zeros(basis.len(), basis.len());
        let mut adj_cache: BTreeMap<Mode, LevelMatrix> = BTreeMap::new();
        for (i, b) in basis.iter().enumerate() {
            let Some((first, rest)) = b.split_first() else {
                mat.set(i, i, Rational::one());
                continue;
            };
            let (sign, adj) = adjoint(first);
            if let std::collections::btree_map::Entry::Vacant(e) = adj_cache.entry(adj) {
                e.insert(operator_matrix(&*v, adj, lvl)?);
            }
            let a = &adj_cache[&adj];
            let k = rest.level() as usize;
            let ri = bases[k]
                .iter()
                .position(|m| *m == rest)
                .expect("rest of a PBW monomial is a PBW monomial");
            let row = a.left_apply(mats[k].row(ri));
            for (j, c) in row.into_iter().enumerate() {
                mat.set(i, j, &sign * c);
            }
        }
        let rank = mat.rank();
        let mut ech = Echelon::new();
        for x in mat.nullspace() {
            ech.insert(&from_coordinates(&basis, &x));
        }
        out.push(GramData {
            level: lvl,
            basis: basis.clone(),
            matrix: mat.clone(),
            rank,
            radical: ech.basis(),
        });
        mats.push(mat);
        bases.push(basis);
    }
    Ok(out)
}

pub fn gram_matrix(spec: &HighestWeightSpec, n: u32) -> Result<GramData> {
    Ok(gram_matrices(spec, n)?.pop().expect("at least level 0"))
}

/// Dimensions of the irreducible quotient at levels `0..=n`, as Gram ranks.
pub fn irr_graded_dims(spec: &HighestWeightSpec, n: u32) -> Result<Vec<usize>> {
    Ok(gram_matrices(spec, n)?
        .into_iter()
        .map(|g| g.rank)
        .collect())
}

/// Generators of the maximal submodule through level `n`: radical vectors
/// not already in the submodule generated by earlier ones.
pub fn maximal_submodule_generators(spec: &HighestWeightSpec, n: u32) -> Result<Vec<ModuleVector>> {
    let v: Arc<dyn GradedModel> = spec.verma();
    let grams = gram_matrices(spec, n)?;
    let mut gens: Vec<ModuleVector> = Vec::new();
    let mut sub = Submodule::generated(v.clone(), &gens)?;
    for g in grams.iter().skip(1) {
        if sub.dim(g.level)? == g.radical.len() {
            continue;
        }
        for x in &g.radical {
            if !sub.contains(x) {
                gens.push(x.clone());
                sub = Submodule::generated(v.clone(), &gens)?;
            }
        }
    }
    Ok(gens)
}

/// The irreducible quotient `L(h, .)`, exact through level `n`.
pub fn irreducible(spec: &HighestWeightSpec, n: u32) -> Result<QuotientModule> {
    let gens = maximal_submodule_generators(spec, n)?;
    QuotientModule::new(spec.verma(), &gens)
}

pub fn verma_quotient(
    spec: &HighestWeightSpec,
    generators: &[ModuleVector],
) -> Result<QuotientModule> {
    QuotientModule::new(spec.verma(), generators)
}
