//! Deterministic samplers for campaign inputs. Every sample gets its own
//! stream seeded from (campaign seed, sample index), so reports depend only
//! on the configuration and not on evaluation order.

use kwitt::{DiagonalForm, KElement, SquareClass, Symbol};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn splitmix64(state: u64) -> u64 {
    let mut z = state.wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

/// The generator for one sample of a campaign.
pub fn sub_rng(seed: u64, index: u32) -> ChaCha8Rng {
    let mixed = splitmix64(seed ^ (u64::from(index) + 1).wrapping_mul(0x9E3779B97F4A7C15));
    ChaCha8Rng::seed_from_u64(mixed)
}

fn primes_up_to(bound: u64) -> Vec<u64> {
    let mut out = Vec::new();
    'outer: for n in 2..=bound {
        for p in &out {
            if p * p > n {
                break;
            }
            if n % p == 0 {
                continue 'outer;
            }
        }
        out.push(n);
    }
    out
}

/// A square-free integer as a class: a product of up to three distinct
/// primes, capped by `bound` in absolute value, with a fair sign. The
/// trivial classes 1 and -1 occur when zero primes are drawn.
pub fn square_class(rng: &mut ChaCha8Rng, bound: u64) -> SquareClass {
    let primes = primes_up_to(bound);
    let mut chosen: Vec<u64> = Vec::new();
    let want = rng.gen_range(0..=3usize);
    let mut value = 1u64;
    for _ in 0..want {
        let available: Vec<u64> = primes
            .iter()
            .copied()
            .filter(|p| !chosen.contains(p) && value.saturating_mul(*p) <= bound)
            .collect();
        if available.is_empty() {
            break;
        }
        let p = available[rng.gen_range(0..available.len())];
        chosen.push(p);
        value *= p;
    }
    let negative = rng.gen_bool(0.5);
    SquareClass::from_parts(negative, &chosen).expect("distinct primes")
}

/// Like `square_class` but never the class of 1, so the result is a legal
/// symbol entry. The class of -1 stays in the pool.
pub fn symbol_entry(rng: &mut ChaCha8Rng, bound: u64) -> SquareClass {
    loop {
        let c = square_class(rng, bound);
        if !c.is_one() {
            return c;
        }
    }
}

pub fn symbol(rng: &mut ChaCha8Rng, degree: usize, bound: u64) -> Symbol {
    let entries: Vec<SquareClass> = (0..degree).map(|_| symbol_entry(rng, bound)).collect();
    Symbol::new(entries).expect("entries are never trivial")
}

/// A sum of 1 to `max_terms` symbols of the given degree.
pub fn element(rng: &mut ChaCha8Rng, degree: usize, bound: u64, max_terms: u32) -> KElement {
    let terms = rng.gen_range(1..=max_terms);
    let mut out = KElement::zero(degree);
    for _ in 0..terms {
        out = out
            .add(&KElement::from_symbol(symbol(rng, degree, bound)))
            .expect("degrees match");
    }
    out
}

/// A scaled Pfister form with `n` slots. With `negative_entries` every slot
/// argument is forced negative, which makes the form definite and therefore
/// anisotropic regardless of the scalar.
pub fn scaled_pfister(
    rng: &mut ChaCha8Rng,
    n: usize,
    bound: u64,
    negative_entries: bool,
) -> DiagonalForm {
    let entries: Vec<SquareClass> = (0..n)
        .map(|_| {
            let c = symbol_entry(rng, bound);
            if negative_entries && !c.is_negative() {
                c.negate()
            } else {
                c
            }
        })
        .collect();
    let t = square_class(rng, bound);
    DiagonalForm::pfister(&entries).scale(&t)
}

/// Small nonzero coordinates for an element of a quadratic field.
pub fn quadratic_field_coords(rng: &mut ChaCha8Rng) -> [i64; 2] {
    loop {
        let u = rng.gen_range(-9i64..=9);
        let v = rng.gen_range(-9i64..=9);
        if u != 0 || v != 0 {
            return [u, v];
        }
    }
}
