//! Exact rational interval-set algebra: finite unions of intervals with
//! open/closed endpoints, kept in a unique normal form.
//!
//! This is the backend for the dyadic-component space whose coarse
//! structure has a locally convex base but no interval base; the escape
//! argument there hinges on endpoints being excluded, so everything here is
//! exact rational arithmetic with no floating point.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One maximal interval of a normalized set. `lo < hi`, or `lo == hi` with
/// both endpoints closed (a degenerate point).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Segment {
    pub lo: Rational,
    pub lo_closed: bool,
    pub hi: Rational,
    pub hi_closed: bool,
}

impl Segment {
    fn valid(lo: &Rational, lo_closed: bool, hi: &Rational, hi_closed: bool) -> bool {
        lo < hi || (lo == hi && lo_closed && hi_closed)
    }

    fn contains(&self, x: &Rational) -> bool {
        let above = x > &self.lo || (x == &self.lo && self.lo_closed);
        let below = x < &self.hi || (x == &self.hi && self.hi_closed);
        above && below
    }
}

/// Finite union of rational intervals in normal form: segments pairwise
/// disjoint, non-adjacent, and sorted by lower endpoint.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct RationalIntervalSet {
    segments: Vec<Segment>,
}

// Lower bound `a` starts at or before lower bound `b`.
fn lo_le(a: (&Rational, bool), b: (&Rational, bool)) -> bool {
    a.0 < b.0 || (a.0 == b.0 && (a.1 || !b.1))
}

// Upper bound `a` ends at or after upper bound `b`.
fn hi_ge(a: (&Rational, bool), b: (&Rational, bool)) -> bool {
    a.0 > b.0 || (a.0 == b.0 && (a.1 || !b.1))
}

impl RationalIntervalSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Single interval with explicit endpoint flags.
    pub fn segment(lo: Rational, lo_closed: bool, hi: Rational, hi_closed: bool) -> Result<Self> {
        if !Segment::valid(&lo, lo_closed, &hi, hi_closed) {
            return Err(Error::Invalid(format!(
                "degenerate interval ({lo}, {hi}) with open endpoint"
            )));
        }
        Ok(RationalIntervalSet {
            segments: vec![Segment {
                lo,
                lo_closed,
                hi,
                hi_closed,
            }],
        })
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Self::segment(lo, false, hi, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Self::segment(lo, true, hi, true)
    }

    pub fn point(x: Rational) -> Self {
        Self::closed(x.clone(), x).expect("point interval")
    }

    pub fn from_segments(segments: Vec<Segment>) -> Result<Self> {
        for s in &segments {
            if !Segment::valid(&s.lo, s.lo_closed, &s.hi, s.hi_closed) {
                return Err(Error::Invalid("invalid segment".into()));
            }
        }
        let mut out = RationalIntervalSet::empty();
        for s in segments {
            let one = RationalIntervalSet { segments: vec![s] };
            out = out.union(&one);
        }
        Ok(out)
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn member(&self, x: &Rational) -> bool {
        self.segments.iter().any(|s| s.contains(x))
    }

    /// Least endpoint with its attained flag, if nonempty.
    pub fn inf(&self) -> Option<(&Rational, bool)> {
        self.segments.first().map(|s| (&s.lo, s.lo_closed))
    }

    /// Greatest endpoint with its attained flag, if nonempty.
    pub fn sup(&self) -> Option<(&Rational, bool)> {
        self.segments.last().map(|s| (&s.hi, s.hi_closed))
    }

    pub fn union(&self, other: &Self) -> Self {
        let mut all: Vec<Segment> = self
            .segments
            .iter()
            .chain(other.segments.iter())
            .cloned()
            .collect();
        all.sort_by(|a, b| {
            (&a.lo, !a.lo_closed)
                .cmp(&(&b.lo, !b.lo_closed))
                .then_with(|| (&a.hi, a.hi_closed).cmp(&(&b.hi, b.hi_closed)))
        });
        let mut merged: Vec<Segment> = Vec::new();
        for s in all {
            match merged.last_mut() {
                Some(last)
                    if s.lo < last.hi
                        || (s.lo == last.hi && (last.hi_closed || s.lo_closed)) =>
                {
                    if hi_ge((&s.hi, s.hi_closed), (&last.hi, last.hi_closed)) {
                        last.hi = s.hi;
                        last.hi_closed = s.hi_closed;
                    }
                }
                _ => merged.push(s),
            }
        }
        RationalIntervalSet { segments: merged }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        let mut out: Vec<Segment> = Vec::new();
        for a in &self.segments {
            for b in &other.segments {
                // Later start, earlier end; at equal values open wins.
                let (lo, lo_closed) = if lo_le((&a.lo, a.lo_closed), (&b.lo, b.lo_closed)) {
                    (b.lo.clone(), b.lo_closed)
                } else {
                    (a.lo.clone(), a.lo_closed)
                };
                let (hi, hi_closed) = if hi_ge((&a.hi, a.hi_closed), (&b.hi, b.hi_closed)) {
                    (b.hi.clone(), b.hi_closed)
                } else {
                    (a.hi.clone(), a.hi_closed)
                };
                if Segment::valid(&lo, lo_closed, &hi, hi_closed) {
                    out.push(Segment {
                        lo,
                        lo_closed,
                        hi,
                        hi_closed,
                    });
                }
            }
        }
        // Pairwise intersections of normalized inputs are already disjoint
        // and sorted per `a`; re-normalize anyway for a canonical result.
        RationalIntervalSet::from_segments(out).expect("segments validated")
    }

    pub fn difference(&self, other: &Self) -> Self {
        let mut out: Vec<Segment> = Vec::new();
        for a in &self.segments {
            let mut cur_lo = a.lo.clone();
            let mut cur_closed = a.lo_closed;
            let mut dead = false;
            for b in &other.segments {
                if b.hi < cur_lo || (b.hi == cur_lo && !(b.hi_closed && cur_closed)) {
                    continue; // b entirely before the remaining part
                }
                if b.lo > a.hi || (b.lo == a.hi && !(b.lo_closed && a.hi_closed)) {
                    break; // b and everything after start beyond a
                }
                // Emit the part of [cur, ...] strictly before b.
                let cut_hi = b.lo.clone();
                let cut_closed = !b.lo_closed;
                if Segment::valid(&cur_lo, cur_closed, &cut_hi, cut_closed) {
                    out.push(Segment {
                        lo: cur_lo.clone(),
                        lo_closed: cur_closed,
                        hi: cut_hi,
                        hi_closed: cut_closed,
                    });
                }
                // Continue after b.
                if b.hi > a.hi || (b.hi == a.hi && (b.hi_closed || !a.hi_closed)) {
                    dead = true;
                    break;
                }
                cur_lo = b.hi.clone();
                cur_closed = !b.hi_closed;
            }
            if !dead && Segment::valid(&cur_lo, cur_closed, &a.hi, a.hi_closed) {
                out.push(Segment {
                    lo: cur_lo,
                    lo_closed: cur_closed,
                    hi: a.hi.clone(),
                    hi_closed: a.hi_closed,
                });
            }
        }
        RationalIntervalSet::from_segments(out).expect("segments validated")
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Open dilation: each segment `(lo, hi)` grows to `(lo - r, hi + r)`,
    /// open at both ends, matching the union of open balls of radius `r`
    /// around the set's points.
    pub fn dilate_open(&self, r: &Rational) -> Self {
        let segs = self
            .segments
            .iter()
            .map(|s| Segment {
                lo: &s.lo - r,
                lo_closed: false,
                hi: &s.hi + r,
                hi_closed: false,
            })
            .collect();
        RationalIntervalSet::from_segments(segs).expect("dilated segments valid")
    }

    /// Convex hull: the single interval spanning the set.
    pub fn hull(&self) -> Self {
        match (self.segments.first(), self.segments.last()) {
            (Some(f), Some(l)) => RationalIntervalSet {
                segments: vec![Segment {
                    lo: f.lo.clone(),
                    lo_closed: f.lo_closed,
                    hi: l.hi.clone(),
                    hi_closed: l.hi_closed,
                }],
            },
            _ => RationalIntervalSet::empty(),
        }
    }

    /// Intersection with the closed ray `[c, +inf)`.
    pub fn upper_clip(&self, c: &Rational) -> Self {
        let mut out = Vec::new();
        for s in &self.segments {
            if s.hi < *c || (s.hi == *c && !s.hi_closed) {
                continue;
            }
            let (lo, lo_closed) = if s.lo > *c || (s.lo == *c && s.lo_closed) {
                (s.lo.clone(), s.lo_closed)
            } else {
                (c.clone(), true)
            };
            if Segment::valid(&lo, lo_closed, &s.hi, s.hi_closed) {
                out.push(Segment {
                    lo,
                    lo_closed,
                    hi: s.hi.clone(),
                    hi_closed: s.hi_closed,
                });
            }
        }
        RationalIntervalSet { segments: out }
    }

    pub fn render(&self) -> String {
        if self.segments.is_empty() {
            return "{}".into();
        }
        self.segments
            .iter()
            .map(|s| {
                format!(
                    "{}{},{}{}",
                    if s.lo_closed { "[" } else { "(" },
                    s.lo,
                    s.hi,
                    if s.hi_closed { "]" } else { ")" }
                )
            })
            .collect::<Vec<_>>()
            .join(" u ")
    }
}

impl std::fmt::Display for RationalIntervalSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.render())
    }
}

/// All points of `space` lying at or above every point of `s`:
/// `{ b in X : b >= s for all s in S }`. If `S` has a maximum in `X` the
/// result includes it; otherwise the result's infimum is `sup S`, which is
/// excluded from `X` itself.
pub fn strict_upper_set(
    space: &RationalIntervalSet,
    s: &RationalIntervalSet,
) -> Result<RationalIntervalSet> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    if !s.is_subset_of(space) {
        return Err(Error::NotSubset);
    }
    let (sup, _) = s.sup().expect("nonempty");
    Ok(space.upper_clip(&sup.clone()))
}

/// The dyadic component `C_n = (2^n - 1, 2^n + 1)`.
pub fn dyadic_component(n: u32) -> RationalIntervalSet {
    let p = Rational::two_pow(n);
    let one = Rational::one();
    RationalIntervalSet::open(&p - &one, &p + &one).expect("width-2 interval")
}

/// The space `X = union of C_n for 2 <= n <= cutoff`.
pub fn dyadic_space(cutoff: u32) -> Result<RationalIntervalSet> {
    if cutoff < 3 {
        return Err(Error::OutOfRange(format!("component cutoff {cutoff} < 3")));
    }
    let mut x = RationalIntervalSet::empty();
    for n in 2..=cutoff {
        x = x.union(&dyadic_component(n));
    }
    Ok(x)
}

/// Ball of the base entourage `E_0 = { |x - y| < 2 }` at a point of the
/// dyadic space.
pub fn e0_ball(space: &RationalIntervalSet, x: &Rational) -> Result<RationalIntervalSet> {
    if !space.member(x) {
        return Err(Error::UnknownPoint(x.to_string()));
    }
    let two = Rational::from_int(2);
    RationalIntervalSet::open(x - &two, x + &two).map(|b| b.intersection(space))
}

/// Proof data that any relation with interval balls containing `E_0` must,
/// at the center `2^n`, reach into the next component.
#[derive(Clone, Debug, Serialize)]
pub struct EscapeReport {
    pub n: u32,
    /// `C_n`, which equals `E_0[2^n]`.
    pub component: RationalIntervalSet,
    pub ball_matches_component: bool,
    /// `sup C_n = 2^n + 1`.
    pub sup: Rational,
    pub sup_in_space: bool,
    /// Every point of the space above all of `C_n`.
    pub upper_set: RationalIntervalSet,
    /// Whether the upper set is contained in the components above `C_n`.
    pub upper_set_in_tail: bool,
    /// `inf` of the upper set, `2^{n+1} - 1`.
    pub upper_inf: Rational,
    pub upper_inf_in_space: bool,
    /// Index of the component any qualifying interval endpoint forces the
    /// ball to meet.
    pub forced_component: u32,
}

impl EscapeReport {
    pub fn holds(&self) -> bool {
        self.ball_matches_component
            && !self.sup_in_space
            && self.upper_set_in_tail
            && !self.upper_inf_in_space
    }
}

/// Escape witness at component index `n > 1` on the space truncated at
/// `cutoff >= n + 1`: any order interval `[a, b]` of the space containing
/// `E_0[2^n] = C_n` must have `b` in some component above `C_n`, hence the
/// corresponding ball meets `C_{n+1}`.
pub fn interval_ball_escape_witness(cutoff: u32, n: u32) -> Result<EscapeReport> {
    if n <= 1 {
        return Err(Error::OutOfRange(format!("component index {n} <= 1")));
    }
    if cutoff < n + 1 {
        return Err(Error::OutOfRange(format!(
            "cutoff {cutoff} too small for component {n}"
        )));
    }
    let space = dyadic_space(cutoff)?;
    let component = dyadic_component(n);
    let ball = e0_ball(&space, &Rational::two_pow(n))?;
    let ball_matches_component = ball == component;

    let one = Rational::one();
    let sup = &Rational::two_pow(n) + &one;
    let sup_in_space = space.member(&sup);

    let upper_set = strict_upper_set(&space, &component)?;
    let mut tail = RationalIntervalSet::empty();
    for k in (n + 1)..=cutoff {
        tail = tail.union(&dyadic_component(k));
    }
    let upper_set_in_tail = upper_set.is_subset_of(&tail);

    let upper_inf = &Rational::two_pow(n + 1) - &one;
    let inf_matches = upper_set
        .inf()
        .map(|(v, attained)| v == &upper_inf && !attained)
        .unwrap_or(false);
    let upper_inf_in_space = space.member(&upper_inf) || !inf_matches;

    Ok(EscapeReport {
        n,
        component,
        ball_matches_component,
        sup,
        sup_in_space,
        upper_set,
        upper_set_in_tail,
        upper_inf,
        upper_inf_in_space,
        forced_component: n + 1,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn membership_flags() {
        let s = RationalIntervalSet::open(q(3), q(5)).unwrap();
        assert!(s.member(&q(4)));
        assert!(!s.member(&q(5)));
        assert!(!s.member(&q(3)));
        let p = RationalIntervalSet::point(q(5));
        assert!(p.member(&q(5)));
    }

    #[test]
    fn union_merges_and_keeps_gaps() {
        let a = RationalIntervalSet::open(q(1), q(2)).unwrap();
        let b = RationalIntervalSet::open(q(2), q(3)).unwrap();
        let u = a.union(&b);
        // The shared endpoint 2 is in neither part, so segments stay apart.
        assert_eq!(u.segments().len(), 2);
        let u2 = u.union(&RationalIntervalSet::point(q(2)));
        assert_eq!(u2.segments().len(), 1);
        assert_eq!(u2.render(), "(1,3)");
    }

    #[test]
    fn difference_splits() {
        let a = RationalIntervalSet::closed(q(0), q(10)).unwrap();
        let b = RationalIntervalSet::open(q(3), q(5)).unwrap();
        let d = a.difference(&b);
        assert_eq!(d.render(), "[0,3] u [5,10]");
        let d2 = a.difference(&RationalIntervalSet::closed(q(3), q(5)).unwrap());
        assert_eq!(d2.render(), "[0,3) u (5,10]");
        assert!(a.difference(&a).is_empty());
    }

    #[test]
    fn strict_upper_set_examples() {
        let x = RationalIntervalSet::closed(q(0), q(10)).unwrap();
        let s = RationalIntervalSet::closed(q(0), q(4)).unwrap();
        assert_eq!(strict_upper_set(&x, &s).unwrap().render(), "[4,10]");

        let x = RationalIntervalSet::open(q(0), q(1))
            .unwrap()
            .union(&RationalIntervalSet::open(q(2), q(3)).unwrap());
        let s = RationalIntervalSet::open(q(0), q(1)).unwrap();
        let up = strict_upper_set(&x, &s).unwrap();
        assert_eq!(up.render(), "(2,3)");

        let not_sub = RationalIntervalSet::open(q(5), q(6)).unwrap();
        assert_eq!(strict_upper_set(&x, &not_sub), Err(Error::NotSubset));
        assert_eq!(
            strict_upper_set(&x, &RationalIntervalSet::empty()),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn upper_set_members_are_upper_bounds() {
        // Directly assert the defining property on the dyadic space.
        let x = dyadic_space(6).unwrap();
        let c = dyadic_component(3);
        let up = strict_upper_set(&x, &c).unwrap();
        // inf of up is an upper bound of C_3 and up meets C_3 at most in a max.
        assert!(up.intersection(&c).is_empty());
        let (sup_c, _) = c.sup().unwrap();
        let (inf_up, _) = up.inf().unwrap();
        assert!(inf_up >= sup_c);
    }

    #[test]
    fn escape_witness_small() {
        let r = interval_ball_escape_witness(12, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.forced_component, 3);
        assert_eq!(r.component.render(), "(3,5)");
        assert_eq!(r.sup.to_string(), "5");
        assert_eq!(r.upper_inf.to_string(), "7");

        let r = interval_ball_escape_witness(12, 5).unwrap();
        assert!(r.holds());
        assert_eq!(r.forced_component, 6);

        assert!(matches!(
            interval_ball_escape_witness(12, 1),
            Err(Error::OutOfRange(_))
        ));
        assert!(matches!(
            interval_ball_escape_witness(4, 4),
            Err(Error::OutOfRange(_))
        ));
    }

    #[test]
    fn e0_ball_is_one_component_at_powers() {
        let x = dyadic_space(8).unwrap();
        for n in 2..=7 {
            let b = e0_ball(&x, &Rational::two_pow(n)).unwrap();
            assert_eq!(b, dyadic_component(n), "n = {n}");
        }
    }

    #[test]
    fn dilate_and_hull() {
        let s = RationalIntervalSet::closed(q(3), q(4))
            .unwrap()
            .union(&RationalIntervalSet::point(q(10)));
        let d = s.dilate_open(&q(2));
        assert_eq!(d.render(), "(1,6) u (8,12)");
        assert_eq!(s.hull().render(), "[3,10]");
    }
}
