//! Deterministic catalog of small presented families under sampled order
//! relabelings, used to stress the compatibility/convexity equivalence
//! against brute-force oracles.
//!
//! Instances are valid presentations by construction: generators are
//! symmetric, form a chain, and the top generator is the equivalence
//! closure of everything below it, so composition and inverse claims always
//! land inside the base. Order variation is realized by transporting the
//! ball structure along a permutation while the ground keeps coordinate
//! order.

use std::sync::Arc;

use crate::error::Result;
use crate::ground::{IdealExtension, OrderedGround};
use crate::pointset::PointSet;
use crate::rational::Rational;
use crate::relations::Entourage;
use crate::structures::GeneratorFamily;

/// SplitMix64: tiny deterministic stream, stable across platforms and
/// toolchains, so catalog-derived expectations can be frozen in tests.
#[derive(Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next_u64() % n.max(1)
    }
}

#[derive(Clone, Debug)]
pub struct CatalogInstance {
    pub id: usize,
    pub family: GeneratorFamily,
    /// Permutation the base family was transported along.
    pub order: Vec<usize>,
}

fn sample_permutation(rng: &mut SplitMix64, n: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        p.swap(i, j);
    }
    p
}

fn base_family(rng: &mut SplitMix64) -> Result<GeneratorFamily> {
    let g = 3 + rng.below(4) as usize; // ground of 3..=6 points
    let coords: Vec<Rational> = (0..g as i64).map(Rational::from_int).collect();
    let ground: Arc<OrderedGround> = OrderedGround::explicit(coords, IdealExtension::None)?;
    let b = 1 + rng.below(3) as usize; // 1..=3 generators

    // Seed relations: each ball is the center plus at most two extras.
    let mut seed_union = Entourage::delta(ground.clone());
    let mut chain: Vec<Entourage> = Vec::new();
    for _ in 0..b {
        let mut balls: Vec<PointSet> = (0..g).map(|i| PointSet::singleton(g, i)).collect();
        for (x, ball) in balls.iter_mut().enumerate() {
            if rng.below(3) == 0 {
                let extras = 1 + rng.below(2);
                for _ in 0..extras {
                    let y = rng.below(g as u64) as usize;
                    ball.insert(y);
                }
            }
            ball.insert(x);
        }
        let seed = Entourage::from_balls(ground.clone(), balls)?;
        seed_union = seed_union.union(&seed)?.symmetrize();
        chain.push(seed_union.clone());
    }

    // Replace the top by the equivalence closure of everything below it.
    let components = seed_union.omega_components();
    let closure_balls: Vec<PointSet> = (0..g)
        .map(|x| {
            components
                .iter()
                .find(|c| c.contains(x))
                .expect("components cover")
                .clone()
        })
        .collect();
    let top = Entourage::from_balls(ground.clone(), closure_balls)?;
    *chain.last_mut().expect("at least one generator") = top;

    let labels = (0..chain.len()).map(|i| format!("g{i}")).collect();
    GeneratorFamily::from_entourages(ground, chain, labels)
}

/// Generate `count` instances from the explicit seed: each base family is
/// tested under the identity order and three sampled relabelings.
pub fn generate(seed: u64, count: usize) -> Result<Vec<CatalogInstance>> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let family = base_family(&mut rng)?;
        let n = family.ground().len();
        let mut orders: Vec<Vec<usize>> = vec![(0..n).collect()];
        for _ in 0..3 {
            orders.push(sample_permutation(&mut rng, n));
        }
        for order in orders {
            if out.len() >= count {
                break;
            }
            let family = family.relabel(&order)?;
            out.push(CatalogInstance {
                id: out.len(),
                family,
                order,
            });
        }
    }
    Ok(out)
}
