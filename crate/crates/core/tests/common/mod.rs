#![allow(dead_code)]

use w22_core::algebra::{make_charges, CentralCharges, Family};
use w22_core::rational::{frac, Rational};
use w22_core::{BaseTag, ModuleVector, Monomial};

pub fn cc() -> CentralCharges {
    make_charges(frac(3, 7), frac(-5, 2)).unwrap()
}

pub fn charge_sets() -> Vec<CentralCharges> {
    [
        (frac(3, 7), frac(-5, 2)),
        (frac(26, 1), frac(1, 1)),
        (frac(-2, 3), frac(7, 4)),
    ]
    .into_iter()
    .map(|(a, b)| make_charges(a, b).unwrap())
    .collect()
}

pub fn mono(xf: Family, x: &[u32], l: &[u32]) -> ModuleVector {
    ModuleVector::from_monomial(Monomial::new(xf, x.to_vec(), l.to_vec(), BaseTag::Hw))
}

pub fn vec_of(terms: &[(Rational, ModuleVector)]) -> ModuleVector {
    let mut v = ModuleVector::zero();
    for (c, t) in terms {
        v.add_scaled(c, t);
    }
    v
}
