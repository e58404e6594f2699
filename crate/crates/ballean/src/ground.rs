//! Finite totally ordered ground sets, intervals, convex hulls, and the
//! window/interior discipline used to approximate infinite spaces.
//!
//! A ground is a strictly increasing list of rational coordinates; the order
//! is coordinate order, and points are addressed by index. Windows sampled
//! from an infinite ideal space carry an [`IdealExtension`] tag so that
//! checks near the truncation boundary can be restricted to interior points.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pointset::PointSet;
use crate::rational::Rational;

/// Which infinite ideal space, if any, the finite ground approximates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdealExtension {
    /// The ground is the whole space; every point is interior.
    None,
    /// Consecutive integers sampled from the integer line.
    IntLine,
    /// Consecutive integers sampled from the non-negative half line; the
    /// left edge at 0 is a true boundary, not a truncation.
    IntHalfline,
    /// A declared infinite set sampled by this window; interiority falls
    /// back to index distance from the window edges.
    Declared,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderedGround {
    points: Vec<Rational>,
    ideal: IdealExtension,
}

impl OrderedGround {
    pub fn new(points: Vec<Rational>, ideal: IdealExtension) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptySet);
        }
        for w in points.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid(format!(
                    "points not strictly increasing near {}",
                    w[0]
                )));
            }
        }
        match ideal {
            IdealExtension::IntLine | IdealExtension::IntHalfline => {
                let one = Rational::one();
                for w in points.windows(2) {
                    if &(&w[0] + &one) != &w[1] {
                        return Err(Error::Invalid(
                            "integer window must consist of consecutive integers".into(),
                        ));
                    }
                }
                if !points[0].is_integer() {
                    return Err(Error::Invalid("integer window must start at an integer".into()));
                }
                if ideal == IdealExtension::IntHalfline && points[0] < Rational::zero() {
                    return Err(Error::Invalid("half-line window must be non-negative".into()));
                }
            }
            _ => {}
        }
        Ok(OrderedGround { points, ideal })
    }

    /// Integer window `[lo, hi]` of the integer line.
    pub fn int_window(lo: i64, hi: i64) -> Result<Arc<Self>> {
        if lo > hi {
            return Err(Error::OutOfRange(format!("window [{lo},{hi}]")));
        }
        let points = (lo..=hi).map(Rational::from_int).collect();
        Ok(Arc::new(Self::new(points, IdealExtension::IntLine)?))
    }

    /// Window `[0, hi]` of the non-negative integers.
    pub fn nat_window(hi: i64) -> Result<Arc<Self>> {
        if hi < 0 {
            return Err(Error::OutOfRange(format!("window [0,{hi}]")));
        }
        let points = (0..=hi).map(Rational::from_int).collect();
        Ok(Arc::new(Self::new(points, IdealExtension::IntHalfline)?))
    }

    pub fn explicit(points: Vec<Rational>, ideal: IdealExtension) -> Result<Arc<Self>> {
        Ok(Arc::new(Self::new(points, ideal)?))
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn coord(&self, i: usize) -> &Rational {
        &self.points[i]
    }

    pub fn coords(&self) -> &[Rational] {
        &self.points
    }

    pub fn ideal(&self) -> IdealExtension {
        self.ideal
    }

    pub fn index_of(&self, c: &Rational) -> Option<usize> {
        self.points.binary_search(c).ok()
    }

    pub fn require_index_of(&self, c: &Rational) -> Result<usize> {
        self.index_of(c)
            .ok_or_else(|| Error::UnknownPoint(c.to_string()))
    }

    /// True when every ideal point within order distance `depth` of the
    /// point is present in the window, so checks at this point are
    /// truncation safe.
    pub fn is_interior(&self, i: usize, depth: usize) -> bool {
        debug_assert!(i < self.len());
        match self.ideal {
            IdealExtension::None => true,
            IdealExtension::IntLine => i >= depth && i + depth < self.len(),
            IdealExtension::IntHalfline => {
                let left_ok = i >= depth || self.points[0] == Rational::zero();
                left_ok && i + depth < self.len()
            }
            IdealExtension::Declared => i >= depth && i + depth < self.len(),
        }
    }

    pub fn interior_points(&self, depth: usize) -> PointSet {
        PointSet::from_indices(
            self.len(),
            (0..self.len()).filter(|&i| self.is_interior(i, depth)),
        )
    }

    pub fn full_set(&self) -> PointSet {
        PointSet::full(self.len())
    }

    /// Render a point set as its coordinate list, for reports.
    pub fn render_set(&self, s: &PointSet) -> Vec<String> {
        s.iter().map(|i| self.coord(i).to_string()).collect()
    }
}

/// Order interval `[lo, hi]` of a ground, stored as endpoint indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    /// All ground points between the endpoints, inclusive.
    pub fn members(&self, universe: usize) -> PointSet {
        PointSet::range(universe, self.lo, self.hi)
    }
}

/// Smallest interval containing a nonempty set: `[min S, max S]`.
pub fn interval_hull(s: &PointSet) -> Result<Interval> {
    match (s.min(), s.max()) {
        (Some(lo), Some(hi)) => Ok(Interval { lo, hi }),
        _ => Err(Error::EmptySet),
    }
}

/// True when the set contains every ground point between any two of its
/// members. The empty set counts as convex.
pub fn is_convex(s: &PointSet) -> bool {
    match (s.min(), s.max()) {
        (Some(lo), Some(hi)) => s.len() == hi - lo + 1,
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hull_examples() {
        let g = OrderedGround::int_window(0, 10).unwrap();
        let s = PointSet::from_indices(g.len(), [1, 4]);
        let h = interval_hull(&s).unwrap();
        assert_eq!((h.lo, h.hi), (1, 4));

        let single = PointSet::singleton(g.len(), 7);
        let h = interval_hull(&single).unwrap();
        assert_eq!((h.lo, h.hi), (7, 7));

        let s = PointSet::from_indices(g.len(), [0, 2, 7]);
        let h = interval_hull(&s).unwrap();
        assert_eq!(h.members(g.len()).to_vec(), (0..=7).collect::<Vec<_>>());

        assert_eq!(interval_hull(&PointSet::empty(5)), Err(Error::EmptySet));
    }

    #[test]
    fn convexity_examples() {
        let u = 11;
        assert!(is_convex(&PointSet::from_indices(u, [3, 4, 5])));
        assert!(!is_convex(&PointSet::from_indices(u, [3, 5])));
        assert!(is_convex(&PointSet::empty(u)));
    }

    #[test]
    fn convexity_iff_hull_fixed_point() {
        // Exhaustive over all subsets of a 12-point ground.
        let u = 12;
        for mask in 0u32..(1 << u) {
            let s = PointSet::from_indices(u, (0..u).filter(|i| mask & (1 << i) != 0));
            if s.is_empty() {
                continue;
            }
            let hull = interval_hull(&s).unwrap().members(u);
            assert!(is_convex(&hull), "hull must be convex");
            assert_eq!(is_convex(&s), s == hull, "mask {mask:b}");
        }
    }

    #[test]
    fn interior_examples() {
        let g = OrderedGround::int_window(0, 10).unwrap();
        assert!(g.is_interior(5, 2));
        assert!(!g.is_interior(1, 2));
        assert!(g.is_interior(1, 0));
        assert!((0..g.len()).all(|i| g.is_interior(i, 0)));

        let n = OrderedGround::nat_window(10).unwrap();
        // Left edge of the half line is a real boundary.
        assert!(n.is_interior(0, 3));
        assert!(!n.is_interior(9, 3));

        let e = OrderedGround::explicit(
            vec![Rational::from_int(0), Rational::ratio(1, 2).unwrap(), Rational::from_int(3)],
            IdealExtension::None,
        )
        .unwrap();
        assert!(e.is_interior(0, 100));
    }

    #[test]
    fn window_validation() {
        assert!(OrderedGround::int_window(3, 1).is_err());
        let bad = OrderedGround::new(
            vec![Rational::from_int(0), Rational::from_int(2)],
            IdealExtension::IntLine,
        );
        assert!(bad.is_err());
        let dup = OrderedGround::new(
            vec![Rational::from_int(0), Rational::from_int(0)],
            IdealExtension::None,
        );
        assert!(dup.is_err());
    }
}
