//! Zero searches for diagonal forms that are already known to be isotropic.
//! Meet-in-the-middle over a growing coordinate box, with a subform
//! reduction that keeps the box dimension at five or below.

use std::collections::HashMap;

use num::bigint::BigInt;
use num::integer::Integer;
use num::{Signed, ToPrimitive, Zero};

use crate::squareclass::SquareClass;

/// A nonzero integer zero of sum c_i x_i^2, content-reduced. The caller
/// guarantees isotropy over Q, which makes the escalating search total.
pub(crate) fn isotropy_witness_search(entries: &[SquareClass]) -> Vec<BigInt> {
    let n = entries.len();
    assert!(n >= 2, "no nontrivial zeros below dimension 2");
    // Opposite classes in two slots give a zero on the spot: the values of
    // the reduced classes are exact negatives.
    for i in 0..n {
        for j in i + 1..n {
            if entries[j] == entries[i].negate() {
                let mut w = vec![BigInt::zero(); n];
                w[i] = BigInt::from(1);
                w[j] = BigInt::from(1);
                return w;
            }
        }
    }
    if n <= 5 {
        return boxed_search(entries);
    }
    // Pick five entries spanning both signs. Such a subform is isotropic at
    // every finite place by its rank and at the real place because it is
    // indefinite, so the recursion bottoms out in a boxed search.
    let pos = entries
        .iter()
        .position(|c| !c.is_negative())
        .expect("an isotropic form is indefinite");
    let neg = entries
        .iter()
        .position(|c| c.is_negative())
        .expect("an isotropic form is indefinite");
    let mut picked = vec![pos, neg];
    for i in 0..n {
        if picked.len() == 5 {
            break;
        }
        if i != pos && i != neg {
            picked.push(i);
        }
    }
    picked.sort_unstable();
    let sub: Vec<SquareClass> = picked.iter().map(|&i| entries[i].clone()).collect();
    let sub_witness = isotropy_witness_search(&sub);
    let mut w = vec![BigInt::zero(); n];
    for (k, &i) in picked.iter().enumerate() {
        w[i] = sub_witness[k].clone();
    }
    w
}

fn boxed_search(entries: &[SquareClass]) -> Vec<BigInt> {
    let values: Vec<BigInt> = entries.iter().map(|c| c.value()).collect();
    let left = values.len() / 2;
    let mut bound: u32 = 16;
    loop {
        let found = match small_values(&values, bound) {
            Some(small) => attempt_small(&small, left, bound),
            None => attempt_big(&values, left, bound),
        };
        if let Some(w) = found {
            return content_reduce(w);
        }
        bound = bound.checked_mul(2).expect("search box exhausted u32");
    }
}

/// i128 copies of the values if every partial sum over the box stays well
/// inside range.
fn small_values(values: &[BigInt], bound: u32) -> Option<Vec<i128>> {
    let b = BigInt::from(bound);
    let budget = BigInt::from(i128::MAX >> 3);
    let total: BigInt = values.iter().map(|v| v.abs() * &b * &b).sum();
    if total < budget {
        Some(values.iter().map(|v| v.to_i128().unwrap()).collect())
    } else {
        None
    }
}

fn advance(coords: &mut [u32], bound: u32) -> bool {
    for c in coords.iter_mut() {
        if *c < bound {
            *c += 1;
            return true;
        }
        *c = 0;
    }
    false
}

fn assemble(left: &[u32], right: &[u32]) -> Vec<BigInt> {
    left.iter().chain(right).map(|&c| BigInt::from(c)).collect()
}

fn attempt_small(values: &[i128], left: usize, bound: u32) -> Option<Vec<BigInt>> {
    let eval = |vals: &[i128], coords: &[u32]| -> i128 {
        vals.iter()
            .zip(coords)
            .map(|(v, &c)| v * (c as i128) * (c as i128))
            .sum()
    };
    let (lv, rv) = values.split_at(left);
    let mut table: HashMap<i128, Vec<u32>> = HashMap::new();
    let mut coords = vec![0u32; left];
    loop {
        let v = eval(lv, &coords);
        if v == 0 && coords.iter().any(|&c| c != 0) {
            return Some(assemble(&coords, &vec![0; values.len() - left]));
        }
        table.entry(v).or_insert_with(|| coords.clone());
        if !advance(&mut coords, bound) {
            break;
        }
    }
    let mut coords = vec![0u32; values.len() - left];
    while advance(&mut coords, bound) {
        let v = eval(rv, &coords);
        if let Some(l) = table.get(&-v) {
            return Some(assemble(l, &coords));
        }
    }
    None
}

fn attempt_big(values: &[BigInt], left: usize, bound: u32) -> Option<Vec<BigInt>> {
    let eval = |vals: &[BigInt], coords: &[u32]| -> BigInt {
        vals.iter()
            .zip(coords)
            .map(|(v, &c)| v * BigInt::from(c) * BigInt::from(c))
            .sum()
    };
    let (lv, rv) = values.split_at(left);
    let mut table: HashMap<BigInt, Vec<u32>> = HashMap::new();
    let mut coords = vec![0u32; left];
    loop {
        let v = eval(lv, &coords);
        if v.is_zero() && coords.iter().any(|&c| c != 0) {
            return Some(assemble(&coords, &vec![0; values.len() - left]));
        }
        table.entry(v).or_insert_with(|| coords.clone());
        if !advance(&mut coords, bound) {
            break;
        }
    }
    let mut coords = vec![0u32; values.len() - left];
    while advance(&mut coords, bound) {
        let v = eval(rv, &coords);
        if let Some(l) = table.get(&-v) {
            return Some(assemble(l, &coords));
        }
    }
    None
}

fn content_reduce(mut w: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &w {
        g = g.gcd(x);
    }
    if !g.is_zero() && g != BigInt::from(1) {
        for x in w.iter_mut() {
            *x /= &g;
        }
    }
    w
}
