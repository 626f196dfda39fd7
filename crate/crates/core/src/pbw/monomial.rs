use std::cmp::{Ordering, Reverse};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::algebra::{Family, Mode};
use crate::rational::{fmt_rational, Rational};

/// Names of the vectors a module is induced from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum BaseTag {
    /// highest-weight vector of a Verma module
    Hw,
    /// vacuum vector `1`
    Vacuum,
    /// `v0` of the two-dimensional module `E` (`I(0) v0 = 0`)
    V0,
    /// `v1` of `E` (`I(0) v1 = v0`)
    V1,
}

impl fmt::Display for BaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BaseTag::Hw => "hw",
            BaseTag::Vacuum => "1",
            BaseTag::V0 => "v0",
            BaseTag::V1 => "v1",
        })
    }
}

/// `X(-m_s)..X(-m_1) L(-n_t)..L(-n_1) base` with `m_s >= .. >= m_1 >= 1` and
/// `n_t >= .. >= n_1 >= 1`. Only magnitudes are stored, leftmost first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    xf: Family,
    x: Vec<u32>,
    l: Vec<u32>,
    base: BaseTag,
}

impl Monomial {
    /// Sorts the parts into canonical order; zero parts are dropped.
    pub fn new(xf: Family, mut x: Vec<u32>, mut l: Vec<u32>, base: BaseTag) -> Self {
        debug_assert!(xf != Family::Vir);
        x.retain(|&k| k > 0);
        l.retain(|&k| k > 0);
        x.sort_unstable_by(|a, b| b.cmp(a));
        l.sort_unstable_by(|a, b| b.cmp(a));
        Monomial { xf, x, l, base }
    }

    pub fn base_only(xf: Family, base: BaseTag) -> Self {
        Monomial {
            xf,
            x: Vec::new(),
            l: Vec::new(),
            base,
        }
    }

    pub fn x_family(&self) -> Family {
        self.xf
    }

    pub fn x_part(&self) -> &[u32] {
        &self.x
    }

    pub fn l_part(&self) -> &[u32] {
        &self.l
    }

    pub fn base(&self) -> BaseTag {
        self.base
    }

    pub fn level(&self) -> u32 {
        self.x.iter().sum::<u32>() + self.l.iter().sum::<u32>()
    }

    pub fn is_base(&self) -> bool {
        self.x.is_empty() && self.l.is_empty()
    }

    /// True when no X factor occurs.
    pub fn is_pure_virasoro(&self) -> bool {
        self.x.is_empty()
    }

    /// The factors as modes, leftmost first.
    pub fn word(&self) -> Vec<Mode> {
        self.x
            .iter()
            .map(|&k| Mode::new(self.xf, -(k as i64)))
            .chain(self.l.iter().map(|&k| Mode::l(-(k as i64))))
            .collect()
    }

    /// Splits off the leftmost factor.
    pub(crate) fn split_first(&self) -> Option<(Mode, Monomial)> {
        if let Some((&k, rest)) = self.x.split_first() {
            let m = Monomial {
                xf: self.xf,
                x: rest.to_vec(),
                l: self.l.clone(),
                base: self.base,
            };
            Some((Mode::new(self.xf, -(k as i64)), m))
        } else if let Some((&k, rest)) = self.l.split_first() {
            let m = Monomial {
                xf: self.xf,
                x: Vec::new(),
                l: rest.to_vec(),
                base: self.base,
            };
            Some((Mode::l(-(k as i64)), m))
        } else {
            None
        }
    }

    pub(crate) fn with_x(&self, k: u32) -> Monomial {
        let mut x = self.x.clone();
        let pos = x.iter().position(|&a| a < k).unwrap_or(x.len());
        x.insert(pos, k);
        Monomial {
            xf: self.xf,
            x,
            l: self.l.clone(),
            base: self.base,
        }
    }

    /// Prepends `L(-k)`; only valid when `k >= ` the current leftmost `L` and
    /// there is no X part.
    pub(crate) fn with_leading_l(&self, k: u32) -> Monomial {
        debug_assert!(self.x.is_empty() && self.l.first().is_none_or(|&a| a <= k));
        let mut l = Vec::with_capacity(self.l.len() + 1);
        l.push(k);
        l.extend_from_slice(&self.l);
        Monomial {
            xf: self.xf,
            x: Vec::new(),
            l,
            base: self.base,
        }
    }

    pub(crate) fn with_base(&self, base: BaseTag) -> Monomial {
        Monomial {
            base,
            ..self.clone()
        }
    }

    #[allow(clippy::type_complexity)]
    fn sort_key(&self) -> (u32, Reverse<u32>, Reverse<&[u32]>, Reverse<&[u32]>, BaseTag) {
        let xl: u32 = self.x.iter().sum();
        (
            self.level(),
            Reverse(xl),
            Reverse(&self.x),
            Reverse(&self.l),
            self.base,
        )
    }
}

/// Canonical order: by level, then X-heavy monomials first, then X and L
/// parts lexicographically descending, then base tag. The greatest monomial
/// of a homogeneous vector is its leading monomial.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn fmt_factors(
    f: &mut fmt::Formatter<'_>,
    c: char,
    parts: &[u32],
    first: &mut bool,
) -> fmt::Result {
    let mut i = 0;
    while i < parts.len() {
        let k = parts[i];
        let run = parts[i..].iter().take_while(|&&a| a == k).count();
        if !*first {
            f.write_str(" ")?;
        }
        *first = false;
        write!(f, "{c}(-{k})")?;
        if run > 1 {
            write!(f, "^{run}")?;
        }
        i += run;
    }
    Ok(())
}

impl Monomial {
    /// The monomial without its base vector, e.g. `I(-1)^2 L(-2)`; empty for
    /// the base vector itself.
    pub fn operator_text(&self) -> String {
        struct Ops<'a>(&'a Monomial);
        impl fmt::Display for Ops<'_> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let c = if self.0.xf == Family::W { 'W' } else { 'I' };
                let mut first = true;
                fmt_factors(f, c, &self.0.x, &mut first)?;
                fmt_factors(f, 'L', &self.0.l, &mut first)
            }
        }
        Ops(self).to_string()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_base() {
            write!(f, "{}", self.base)
        } else {
            write!(f, "{} {}", self.operator_text(), self.base)
        }
    }
}

/// Finite combination of PBW monomials; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default, Hash)]
pub struct ModuleVector {
    terms: BTreeMap<Monomial, Rational>,
}

impl ModuleVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_monomial(m: Monomial) -> Self {
        Self::term(Rational::one(), m)
    }

    pub fn term(c: Rational, m: Monomial) -> Self {
        let mut v = Self::zero();
        v.add_term(m, c);
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(e) => {
                *e += c;
                if e.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &ModuleVector) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), c * a);
        }
    }

    pub fn scaled(&self, c: &Rational) -> ModuleVector {
        if c.is_zero() {
            return Self::zero();
        }
        ModuleVector {
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Monomial, Rational)> {
        self.terms.into_iter()
    }

    /// Greatest monomial in canonical order.
    pub fn leading(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading coefficient is 1.
    pub fn normalized(&self) -> ModuleVector {
        match self.leading() {
            Some((_, c)) => self.scaled(&c.recip()),
            None => Self::zero(),
        }
    }

    pub fn max_level(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::level).max()
    }

    /// The common level of all terms, if homogeneous and nonzero.
    pub fn level(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::level);
        let first = it.next()?;
        it.all(|l| l == first).then_some(first)
    }

    pub fn map_monomials(&self, f: impl Fn(&Monomial) -> Monomial) -> ModuleVector {
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            out.add_term(f(m), c.clone());
        }
        out
    }
}

impl FromIterator<(Monomial, Rational)> for ModuleVector {
    fn from_iter<T: IntoIterator<Item = (Monomial, Rational)>>(iter: T) -> Self {
        let mut v = Self::zero();
        for (m, c) in iter {
            v.add_term(m, c);
        }
        v
    }
}

impl AddAssign<&ModuleVector> for ModuleVector {
    fn add_assign(&mut self, rhs: &ModuleVector) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&ModuleVector> for ModuleVector {
    fn sub_assign(&mut self, rhs: &ModuleVector) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&ModuleVector> for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&ModuleVector> for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &ModuleVector {
    type Output = ModuleVector;
    fn neg(self) -> ModuleVector {
        ModuleVector {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.clone(), -c.clone()))
                .collect(),
        }
    }
}

fn push_term(out: &mut String, c: &Rational, body: &str, first: bool) {
    let neg = c.is_negative();
    let a = c.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let unit = a.is_one();
    if !unit || body.is_empty() {
        out.push_str(&fmt_rational(&a));
        if !body.is_empty() {
            out.push(' ');
        }
    }
    out.push_str(body);
}

/// Leading term first, grouped by base vector, e.g. `(L(-1) + 2 I(-1)) hw`.
impl fmt::Display for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut groups: BTreeMap<BaseTag, Vec<(&Monomial, &Rational)>> = BTreeMap::new();
        for (m, c) in self.terms.iter().rev() {
            groups.entry(m.base).or_default().push((m, c));
        }
        let mut out = String::new();
        for (gi, (base, terms)) in groups.iter().enumerate() {
            if gi > 0 {
                out.push_str(" + ");
            }
            if terms.len() == 1 {
                let (m, c) = terms[0];
                let mut s = String::new();
                let body = if m.is_base() {
                    base.to_string()
                } else {
                    m.to_string()
                };
                push_term(&mut s, c, &body, true);
                out.push_str(&s);
            } else {
                out.push('(');
                for (i, (m, c)) in terms.iter().enumerate() {
                    let body = m.operator_text();
                    push_term(&mut out, c, &body, i == 0);
                }
                out.push_str(") ");
                out.push_str(&base.to_string());
            }
        }
        f.write_str(&out)
    }
}
