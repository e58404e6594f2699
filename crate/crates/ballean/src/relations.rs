//! Entourage relation algebra: balls, composition, inverse, powers,
//! symmetrization, and connectivity components.
//!
//! An entourage is a diagonal-containing relation on a ground, stored as a
//! ball map `x -> E[x]`; the relation is recovered as
//! `(x, y) in E  iff  y in E[x]`. Composition follows the convention
//! `(E o F)[x] = F[E[x]]`, i.e. `(x,y) in E o F` iff there is `z` with
//! `(x,z) in E` and `(z,y) in F`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ground::{interval_hull, is_convex, OrderedGround};
use crate::pointset::PointSet;
use crate::rational::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Entourage {
    ground: Arc<OrderedGround>,
    balls: Vec<PointSet>,
}

impl std::fmt::Debug for Entourage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_map()
            .entries(self.balls.iter().enumerate())
            .finish()
    }
}

impl Entourage {
    /// Build from explicit balls. Each ball must contain its center.
    pub fn from_balls(ground: Arc<OrderedGround>, balls: Vec<PointSet>) -> Result<Self> {
        if balls.len() != ground.len() {
            return Err(Error::Invalid(format!(
                "expected {} balls, got {}",
                ground.len(),
                balls.len()
            )));
        }
        for (x, b) in balls.iter().enumerate() {
            if b.universe_len() != ground.len() {
                return Err(Error::Invalid("ball over wrong universe".into()));
            }
            if !b.contains(x) {
                return Err(Error::Invalid(format!(
                    "ball at index {x} does not contain the diagonal"
                )));
            }
        }
        Ok(Entourage { ground, balls })
    }

    /// The diagonal relation.
    pub fn delta(ground: Arc<OrderedGround>) -> Self {
        let n = ground.len();
        let balls = (0..n).map(|i| PointSet::singleton(n, i)).collect();
        Entourage { ground, balls }
    }

    /// Metric entourage: `E[x] = { y : |x - y| <= radius }` in ground
    /// coordinates, clipped to the window.
    pub fn metric(ground: Arc<OrderedGround>, radius: &Rational) -> Self {
        let n = ground.len();
        let balls = (0..n)
            .map(|i| {
                let c = ground.coord(i);
                let lo = c - radius;
                let hi = c + radius;
                PointSet::from_indices(
                    n,
                    (0..n).filter(|&j| {
                        let d = ground.coord(j);
                        *d >= lo && *d <= hi
                    }),
                )
            })
            .collect();
        Entourage { ground, balls }
    }

    /// Discrete entourage of a bounded set: `E_B[x] = B` for `x` in `B`,
    /// `{x}` elsewhere.
    pub fn discrete(ground: Arc<OrderedGround>, bounded: &PointSet) -> Self {
        let n = ground.len();
        let balls = (0..n)
            .map(|i| {
                if bounded.contains(i) {
                    let mut b = bounded.clone();
                    b.insert(i);
                    b
                } else {
                    PointSet::singleton(n, i)
                }
            })
            .collect();
        Entourage { ground, balls }
    }

    pub fn ground(&self) -> &Arc<OrderedGround> {
        &self.ground
    }

    pub fn same_ground(&self, other: &Entourage) -> bool {
        Arc::ptr_eq(&self.ground, &other.ground) || self.ground == other.ground
    }

    fn require_same_ground(&self, other: &Entourage) -> Result<()> {
        if self.same_ground(other) {
            Ok(())
        } else {
            Err(Error::GroundMismatch)
        }
    }

    pub fn ball(&self, x: usize) -> &PointSet {
        &self.balls[x]
    }

    /// Ball at a coordinate rather than an index.
    pub fn ball_at(&self, coord: &Rational) -> Result<&PointSet> {
        let i = self.ground.require_index_of(coord)?;
        Ok(self.ball(i))
    }

    /// `E[A] = union of E[a] over a in A`.
    pub fn ball_of_set(&self, a: &PointSet) -> PointSet {
        let mut out = PointSet::empty(self.ground.len());
        for i in a.iter() {
            out.union_with(&self.balls[i]);
        }
        out
    }

    /// `(E o F)[x] = F[E[x]]`.
    pub fn compose(&self, other: &Entourage) -> Result<Entourage> {
        self.require_same_ground(other)?;
        let balls = self
            .balls
            .iter()
            .map(|b| other.ball_of_set(b))
            .collect();
        Ok(Entourage {
            ground: self.ground.clone(),
            balls,
        })
    }

    /// `y in inverse(E)[x]  iff  x in E[y]`.
    pub fn inverse(&self) -> Entourage {
        let n = self.ground.len();
        let mut balls = vec![PointSet::empty(n); n];
        for (y, b) in self.balls.iter().enumerate() {
            for x in b.iter() {
                balls[x].insert(y);
            }
        }
        Entourage {
            ground: self.ground.clone(),
            balls,
        }
    }

    /// `E^n`; `n = 0` yields the diagonal by convention so that powers are
    /// monotone in `n`.
    pub fn power(&self, n: u32) -> Entourage {
        let mut acc = Entourage::delta(self.ground.clone());
        for _ in 0..n {
            acc = acc.compose(self).expect("same ground");
        }
        acc
    }

    pub fn union(&self, other: &Entourage) -> Result<Entourage> {
        self.require_same_ground(other)?;
        let balls = self
            .balls
            .iter()
            .zip(&other.balls)
            .map(|(a, b)| a.union(b))
            .collect();
        Ok(Entourage {
            ground: self.ground.clone(),
            balls,
        })
    }

    /// Pointwise ball containment, which is relation containment.
    pub fn is_subset_of(&self, other: &Entourage) -> bool {
        self.same_ground(other)
            && self
                .balls
                .iter()
                .zip(&other.balls)
                .all(|(a, b)| a.is_subset_of(b))
    }

    pub fn is_symmetric(&self) -> bool {
        self.balls.iter().enumerate().all(|(x, b)| {
            b.iter().all(|y| self.balls[y].contains(x))
        })
    }

    /// `E  union  E^{-1}`.
    pub fn symmetrize(&self) -> Entourage {
        self.union(&self.inverse()).expect("same ground")
    }

    pub fn has_convex_balls(&self) -> bool {
        self.balls.iter().all(is_convex)
    }

    /// Maximum index displacement of any ball; the order-distance bound
    /// used to derive interior depths.
    pub fn reach(&self) -> usize {
        self.balls
            .iter()
            .enumerate()
            .map(|(x, b)| {
                b.iter()
                    .map(|y| x.abs_diff(y))
                    .max()
                    .unwrap_or(0)
            })
            .max()
            .unwrap_or(0)
    }

    /// Transport the entourage along a permutation of indices:
    /// `result[perm[x]] = perm(E[x])`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Entourage> {
        let n = self.ground.len();
        if perm.len() != n {
            return Err(Error::Invalid("permutation length mismatch".into()));
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::Invalid("not a permutation".into()));
            }
            seen[p] = true;
        }
        let mut balls = vec![PointSet::empty(n); n];
        for (x, b) in self.balls.iter().enumerate() {
            balls[perm[x]] = PointSet::from_indices(n, b.iter().map(|y| perm[y]));
        }
        Ok(Entourage {
            ground: self.ground.clone(),
            balls,
        })
    }

    /// Restrict to a nonempty subset of the ground, reindexed over the new
    /// ground; the diagonal is restored on every point.
    pub fn restrict(&self, keep: &PointSet, new_ground: Arc<OrderedGround>) -> Result<Entourage> {
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        let old_to_new: Vec<Option<usize>> = {
            let mut map = vec![None; self.ground.len()];
            for (new_i, old_i) in keep.iter().enumerate() {
                map[old_i] = Some(new_i);
            }
            map
        };
        let n = new_ground.len();
        let balls = keep
            .iter()
            .enumerate()
            .map(|(new_i, old_i)| {
                let mut b = PointSet::from_indices(
                    n,
                    self.balls[old_i]
                        .iter()
                        .filter_map(|y| old_to_new[y]),
                );
                b.insert(new_i);
                b
            })
            .collect();
        Ok(Entourage {
            ground: new_ground,
            balls,
        })
    }

    /// Connectivity classes of the relation, computed on the symmetrized
    /// entourage; each class equals `E^omega[z]` for any member `z`.
    /// Classes are returned in ascending order of their minimum.
    pub fn omega_components(&self) -> Vec<PointSet> {
        let sym = if self.is_symmetric() {
            self.clone()
        } else {
            self.symmetrize()
        };
        let n = self.ground.len();
        let mut seen = PointSet::empty(n);
        let mut classes = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            let mut class = PointSet::singleton(n, start);
            let mut frontier = class.clone();
            loop {
                let grown = sym.ball_of_set(&frontier);
                let new = grown.difference(&class);
                if new.is_empty() {
                    break;
                }
                class.union_with(&new);
                frontier = new;
            }
            seen.union_with(&class);
            classes.push(class);
        }
        classes
    }

    /// Hull of each ball: the smallest per-ball convex entourage
    /// containing this one.
    pub fn convexify_balls(&self) -> Entourage {
        let n = self.ground.len();
        let balls = self
            .balls
            .iter()
            .map(|b| {
                let h = interval_hull(b).expect("balls are nonempty");
                h.members(n)
            })
            .collect();
        Entourage {
            ground: self.ground.clone(),
            balls,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn window(lo: i64, hi: i64) -> Arc<OrderedGround> {
        OrderedGround::int_window(lo, hi).unwrap()
    }

    #[test]
    fn metric_balls() {
        let g = window(0, 10);
        let e = Entourage::metric(g.clone(), &Rational::from_int(2));
        assert_eq!(e.ball(5).to_vec(), vec![3, 4, 5, 6, 7]);
        assert_eq!(e.ball(0).to_vec(), vec![0, 1, 2]);
    }

    #[test]
    fn discrete_balls() {
        // B = {0, 2}: the ball away from B is a singleton.
        let g = window(0, 10);
        let b = PointSet::from_indices(g.len(), [0, 2]);
        let e = Entourage::discrete(g, &b);
        assert_eq!(e.ball(1).to_vec(), vec![1]);
        assert_eq!(e.ball(0).to_vec(), vec![0, 2]);
        assert_eq!(e.ball(2).to_vec(), vec![0, 2]);
    }

    #[test]
    fn compose_metric_adds_radii_on_interior() {
        let g = window(0, 30);
        let e2 = Entourage::metric(g.clone(), &Rational::from_int(2));
        let e3 = Entourage::metric(g.clone(), &Rational::from_int(3));
        let c = e2.compose(&e3).unwrap();
        let e5 = Entourage::metric(g.clone(), &Rational::from_int(5));
        for x in 0..g.len() {
            if g.is_interior(x, 5) {
                assert_eq!(c.ball(x), e5.ball(x), "at {x}");
            }
        }
    }

    #[test]
    fn delta_is_identity_for_compose() {
        let g = window(0, 8);
        let e = Entourage::metric(g.clone(), &Rational::from_int(2));
        let d = Entourage::delta(g);
        assert_eq!(d.compose(&e).unwrap(), e);
        assert_eq!(e.compose(&d).unwrap(), e);
    }

    #[test]
    fn discrete_is_idempotent() {
        let g = window(0, 10);
        let b = PointSet::from_indices(g.len(), [0, 1, 2, 5]);
        let e = Entourage::discrete(g, &b);
        assert_eq!(e.compose(&e).unwrap(), e);
    }

    #[test]
    fn inverse_examples() {
        let g = window(0, 10);
        let m = Entourage::metric(g.clone(), &Rational::from_int(3));
        assert_eq!(m.inverse(), m);

        // Balls {x, x+2}, clipped at the window.
        let n = g.len();
        let balls: Vec<PointSet> = (0..n)
            .map(|i| {
                let mut b = PointSet::singleton(n, i);
                if i + 2 < n {
                    b.insert(i + 2);
                }
                b
            })
            .collect();
        let shift = Entourage::from_balls(g, balls).unwrap();
        let inv = shift.inverse();
        assert_eq!(inv.ball(5).to_vec(), vec![3, 5]);
        assert_eq!(inv.ball(1).to_vec(), vec![1]);
        assert_eq!(inv.inverse(), shift);
    }

    #[test]
    fn power_examples() {
        let g = window(-20, 20);
        let e1 = Entourage::metric(g.clone(), &Rational::from_int(1));
        let e4 = Entourage::metric(g.clone(), &Rational::from_int(4));
        let p = e1.power(4);
        for x in 0..g.len() {
            if g.is_interior(x, 4) {
                assert_eq!(p.ball(x), e4.ball(x));
            }
        }
        assert_eq!(e1.power(1), e1);
        assert_eq!(e1.power(0), Entourage::delta(g.clone()));

        let b = PointSet::from_indices(g.len(), [0, 3]);
        let eb = Entourage::discrete(g, &b);
        assert_eq!(eb.power(3), eb);
    }

    #[test]
    fn omega_components_examples() {
        let g = window(0, 20);
        let e = Entourage::metric(g, &Rational::from_int(1));
        assert_eq!(e.omega_components().len(), 1);

        // Two clusters further apart than the radius.
        let pts: Vec<Rational> = [0, 1, 2, 100, 101]
            .iter()
            .map(|&v| Rational::from_int(v))
            .collect();
        let g = OrderedGround::explicit(pts, crate::ground::IdealExtension::None).unwrap();
        let e = Entourage::metric(g, &Rational::from_int(2));
        let classes = e.omega_components();
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].to_vec(), vec![0, 1, 2]);
        assert_eq!(classes[1].to_vec(), vec![3, 4]);
    }

    #[test]
    fn symmetrize_and_reach() {
        let g = window(0, 6);
        let n = g.len();
        let balls: Vec<PointSet> = (0..n)
            .map(|i| {
                let mut b = PointSet::singleton(n, i);
                if i + 2 < n {
                    b.insert(i + 2);
                }
                b
            })
            .collect();
        let e = Entourage::from_balls(g, balls).unwrap();
        assert!(!e.is_symmetric());
        let s = e.symmetrize();
        assert!(s.is_symmetric());
        assert!(e.is_subset_of(&s));
        assert_eq!(e.reach(), 2);
    }

    #[test]
    fn diagonal_invariant_on_results() {
        let g = window(0, 12);
        let e = Entourage::metric(g.clone(), &Rational::from_int(2));
        let b = PointSet::from_indices(g.len(), [1, 4]);
        let eb = Entourage::discrete(g.clone(), &b);
        for r in [
            e.compose(&eb).unwrap(),
            eb.compose(&e).unwrap(),
            e.inverse(),
            e.union(&eb).unwrap(),
            e.power(3),
            e.symmetrize(),
            e.convexify_balls(),
        ] {
            for x in 0..g.len() {
                assert!(r.ball(x).contains(x));
            }
        }
    }

    #[test]
    fn restrict_to_evens() {
        let g = window(0, 10);
        let e = Entourage::metric(g.clone(), &Rational::from_int(2));
        let evens = PointSet::from_indices(g.len(), (0..g.len()).filter(|i| i % 2 == 0));
        let coords: Vec<Rational> = evens.iter().map(|i| g.coord(i).clone()).collect();
        let sub =
            OrderedGround::explicit(coords, crate::ground::IdealExtension::Declared).unwrap();
        let r = e.restrict(&evens, sub.clone()).unwrap();
        // Ball at coordinate 4 is {2, 4, 6}.
        let i4 = sub.require_index_of(&Rational::from_int(4)).unwrap();
        let got: Vec<String> = sub.render_set(r.ball(i4));
        assert_eq!(got, vec!["2", "4", "6"]);
    }
}
