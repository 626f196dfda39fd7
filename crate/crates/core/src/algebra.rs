//! Mode symbols, central charges and the two bracket tables.
//!
//! Central elements never appear as modes: every module handled here has a
//! fixed central character, so central terms are evaluated to scalars as
//! soon as a bracket is taken.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, frac, int, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum AlgebraKind {
    #[serde(rename = "w22")]
    W22,
    #[serde(rename = "hv")]
    Hv,
}

impl AlgebraKind {
    /// The non-Virasoro generator family of this algebra.
    pub fn extra_family(self) -> Family {
        match self {
            AlgebraKind::W22 => Family::W,
            AlgebraKind::Hv => Family::I,
        }
    }

    pub fn contains(self, mode: Mode) -> bool {
        mode.family == Family::Vir || mode.family == self.extra_family()
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraKind::W22 => write!(f, "W(2,2)"),
            AlgebraKind::Hv => write!(f, "Heisenberg-Virasoro"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Family {
    Vir,
    W,
    I,
}

/// A single generator `L(n)`, `W(n)` or `I(n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mode {
    pub family: Family,
    pub index: i64,
}

impl Mode {
    pub const fn l(index: i64) -> Self {
        Mode {
            family: Family::Vir,
            index,
        }
    }

    pub const fn w(index: i64) -> Self {
        Mode {
            family: Family::W,
            index,
        }
    }

    pub const fn i(index: i64) -> Self {
        Mode {
            family: Family::I,
            index,
        }
    }

    pub const fn new(family: Family, index: i64) -> Self {
        Mode { family, index }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.family {
            Family::Vir => 'L',
            Family::W => 'W',
            Family::I => 'I',
        };
        write!(f, "{}({})", c, self.index)
    }
}

/// Central charges at level zero (`C_I` acts by 0).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CentralCharges {
    #[serde(with = "crate::rational::serde_str")]
    c_l: Rational,
    #[serde(with = "crate::rational::serde_str")]
    c_li: Rational,
    #[serde(with = "crate::rational::serde_str")]
    c_w: Rational,
}

impl CentralCharges {
    pub fn c_l(&self) -> &Rational {
        &self.c_l
    }

    pub fn c_li(&self) -> &Rational {
        &self.c_li
    }

    /// Always `-24 c_LI^2`.
    pub fn c_w(&self) -> &Rational {
        &self.c_w
    }

    pub fn c_i(&self) -> Rational {
        Rational::zero()
    }
}

/// Builds charges with `c_W = -24 c_LI^2` and `c_I = 0`; `c_LI = 0` is rejected.
pub fn make_charges(c_l: Rational, c_li: Rational) -> Result<CentralCharges> {
    if c_li.is_zero() {
        return Err(Error::ZeroMixedCharge);
    }
    let c_w = int(-24) * &c_li * &c_li;
    Ok(CentralCharges { c_l, c_li, c_w })
}

/// `[a, b] = coeff * mode + central`; the linear part has at most one term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketResult {
    pub linear: Option<(Rational, Mode)>,
    pub central: Rational,
}

impl BracketResult {
    fn zero() -> Self {
        BracketResult {
            linear: None,
            central: Rational::zero(),
        }
    }

    fn new(coeff: Rational, mode: Mode, central: Rational) -> Self {
        let linear = if coeff.is_zero() {
            None
        } else {
            Some((coeff, mode))
        };
        BracketResult { linear, central }
    }

    pub fn is_zero(&self) -> bool {
        self.linear.is_none() && self.central.is_zero()
    }
}

impl fmt::Display for BracketResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some((c, m)) = &self.linear {
            parts.push(format!("{} {}", fmt_rational(c), m));
        }
        if !self.central.is_zero() || parts.is_empty() {
            parts.push(fmt_rational(&self.central));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn delta(n: i64, m: i64) -> bool {
    n + m == 0
}

fn vir_cocycle(n: i64) -> Rational {
    frac(n * n * n - n, 12)
}

fn lvir(n: i64, m: i64, cc: &CentralCharges) -> BracketResult {
    let central = if delta(n, m) {
        vir_cocycle(n) * &cc.c_l
    } else {
        Rational::zero()
    };
    BracketResult::new(int(n - m), Mode::l(n + m), central)
}

pub fn bracket_w22(a: Mode, b: Mode, cc: &CentralCharges) -> Result<BracketResult> {
    for m in [a, b] {
        if !AlgebraKind::W22.contains(m) {
            return Err(Error::MixedAlgebra {
                mode: m,
                kind: AlgebraKind::W22,
            });
        }
    }
    let (n, m) = (a.index, b.index);
    Ok(match (a.family, b.family) {
        (Family::Vir, Family::Vir) => lvir(n, m, cc),
        (Family::Vir, Family::W) => {
            let central = if delta(n, m) {
                vir_cocycle(n) * &cc.c_w
            } else {
                Rational::zero()
            };
            BracketResult::new(int(n - m), Mode::w(n + m), central)
        }
        (Family::W, Family::Vir) => {
            // [W(n), L(m)] = (n - m) W(n+m) + delta (n^3 - n)/12 c_W
            let central = if delta(n, m) {
                vir_cocycle(n) * &cc.c_w
            } else {
                Rational::zero()
            };
            BracketResult::new(int(n - m), Mode::w(n + m), central)
        }
        _ => BracketResult::zero(),
    })
}

pub fn bracket_hv(a: Mode, b: Mode, cc: &CentralCharges) -> Result<BracketResult> {
    for m in [a, b] {
        if !AlgebraKind::Hv.contains(m) {
            return Err(Error::MixedAlgebra {
                mode: m,
                kind: AlgebraKind::Hv,
            });
        }
    }
    let (n, m) = (a.index, b.index);
    Ok(match (a.family, b.family) {
        (Family::Vir, Family::Vir) => lvir(n, m, cc),
        (Family::Vir, Family::I) => {
            let central = if delta(n, m) {
                -(int(n * n + n) * &cc.c_li)
            } else {
                Rational::zero()
            };
            BracketResult::new(int(-m), Mode::i(n + m), central)
        }
        (Family::I, Family::Vir) => {
            // [I(n), L(m)] = n I(n+m) + delta (n^2 - n) c_LI
            let central = if delta(n, m) {
                int(n * n - n) * &cc.c_li
            } else {
                Rational::zero()
            };
            BracketResult::new(int(n), Mode::i(n + m), central)
        }
        // [I(n), I(m)] = n delta C_I with C_I = 0
        _ => BracketResult::zero(),
    })
}

pub fn bracket(kind: AlgebraKind, a: Mode, b: Mode, cc: &CentralCharges) -> Result<BracketResult> {
    match kind {
        AlgebraKind::W22 => bracket_w22(a, b, cc),
        AlgebraKind::Hv => bracket_hv(a, b, cc),
    }
}

/// A finite combination of modes plus a central scalar; used to check the
/// Jacobi identity.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LieElement {
    pub terms: BTreeMap<Mode, Rational>,
    pub central: Rational,
}

impl LieElement {
    pub fn mode(m: Mode) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(m, int(1));
        LieElement {
            terms,
            central: Rational::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() && self.central.is_zero()
    }

    fn add_mode(&mut self, m: Mode, c: Rational) {
        let e = self.terms.entry(m).or_insert_with(Rational::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&mut self, other: &LieElement) {
        for (m, c) in &other.terms {
            self.add_mode(*m, c.clone());
        }
        self.central += &other.central;
    }

    /// Bilinear extension of the bracket; central parts bracket to zero.
    pub fn bracket(
        kind: AlgebraKind,
        a: &LieElement,
        b: &LieElement,
        cc: &CentralCharges,
    ) -> Result<LieElement> {
        let mut out = LieElement::default();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                let r = bracket(kind, *ma, *mb, cc)?;
                let s = ca * cb;
                if let Some((c, m)) = r.linear {
                    out.add_mode(m, &s * c);
                }
                out.central += &s * r.central;
            }
        }
        Ok(out)
    }
}

impl From<BracketResult> for LieElement {
    fn from(r: BracketResult) -> Self {
        let mut e = LieElement {
            central: r.central,
            ..Default::default()
        };
        if let Some((c, m)) = r.linear {
            e.add_mode(m, c);
        }
        e
    }
}

/// Counts of checked pairs/triples and the violations found.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub pairs: usize,
    pub triples: usize,
    pub antisymmetry_violations: Vec<String>,
    pub jacobi_violations: Vec<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.antisymmetry_violations.is_empty() && self.jacobi_violations.is_empty()
    }
}

/// Antisymmetry on all pairs and Jacobi on all triples of modes with
/// `|index| <= bound`.
pub fn check_axioms(kind: AlgebraKind, cc: &CentralCharges, bound: i64) -> Result<AxiomReport> {
    let modes: Vec<Mode> = [Family::Vir, kind.extra_family()]
        .into_iter()
        .flat_map(|f| (-bound..=bound).map(move |n| Mode::new(f, n)))
        .collect();
    let mut rep = AxiomReport::default();
    for &a in &modes {
        for &b in &modes {
            rep.pairs += 1;
            let mut s = LieElement::from(bracket(kind, a, b, cc)?);
            s.add(&LieElement::from(bracket(kind, b, a, cc)?));
            if !s.is_zero() {
                rep.antisymmetry_violations.push(format!("[{a},{b}]"));
            }
        }
    }
    let bracket_with =
        |x: Mode, e: &LieElement| LieElement::bracket(kind, &LieElement::mode(x), e, cc);
    for &a in &modes {
        for &b in &modes {
            let bc_cache: Vec<LieElement> = modes
                .iter()
                .map(|&c| bracket(kind, b, c, cc).map(LieElement::from))
                .collect::<Result<_>>()?;
            for (k, &c) in modes.iter().enumerate() {
                rep.triples += 1;
                let mut sum = bracket_with(a, &bc_cache[k])?;
                sum.add(&bracket_with(
                    b,
                    &LieElement::from(bracket(kind, c, a, cc)?),
                )?);
                sum.add(&bracket_with(
                    c,
                    &LieElement::from(bracket(kind, a, b, cc)?),
                )?);
                if !sum.is_zero() {
                    rep.jacobi_violations.push(format!("({a},{b},{c})"));
                }
            }
        }
    }
    Ok(rep)
}
