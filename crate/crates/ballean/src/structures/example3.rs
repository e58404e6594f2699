//! Symbolic generator family over the dyadic-component space
//! `X = union of (2^n - 1, 2^n + 1), 2 <= n <= cutoff`.
//!
//! The base consists of `G_n = E_n + E_0` for `2 <= n <= cutoff`, where
//! `E_0` relates points at distance `< 2` and `E_n` is the full square on
//! the middle region `(3, 2^{n+1})`. Balls have a closed form in exact
//! interval-set arithmetic, and the domination and convexity certificates
//! are established symbolically: box components of a composition are
//! computed exactly, and the only non-box component, `E_0 o E_0`, is
//! over-approximated by the distance-4 band and then discharged by an exact
//! finite analysis of component widths and gaps. A sound over-approximation
//! that lands inside the claimed generator is a valid containment
//! certificate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intervalsets::{
    dyadic_component, dyadic_space, e0_ball, RationalIntervalSet,
};
use crate::rational::Rational;

#[derive(Clone, Debug)]
pub struct Example3Family {
    cutoff: u32,
    space: RationalIntervalSet,
    components: Vec<(u32, RationalIntervalSet)>,
}

impl Example3Family {
    /// `cutoff` is the index of the last component kept; at least 3 so the
    /// base is nontrivial.
    pub fn new(cutoff: u32) -> Result<Self> {
        let space = dyadic_space(cutoff)?;
        let components = (2..=cutoff).map(|n| (n, dyadic_component(n))).collect();
        Ok(Example3Family {
            cutoff,
            space,
            components,
        })
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn space(&self) -> &RationalIntervalSet {
        &self.space
    }

    pub fn components(&self) -> &[(u32, RationalIntervalSet)] {
        &self.components
    }

    /// Generator indices `n` of the base elements `G_n`.
    pub fn generator_indices(&self) -> impl Iterator<Item = u32> {
        2..=self.cutoff
    }

    /// The middle region `(3, 2^{n+1})` intersected with the space.
    pub fn middle(&self, n: u32) -> RationalIntervalSet {
        let lo = Rational::from_int(3);
        let hi = Rational::two_pow(n + 1);
        RationalIntervalSet::open(lo, hi)
            .expect("nonempty middle")
            .intersection(&self.space)
    }

    pub fn e0_ball(&self, x: &Rational) -> Result<RationalIntervalSet> {
        e0_ball(&self.space, x)
    }

    /// `G_n[x]`: the middle region when `x` lies in it, always together
    /// with the distance-2 ball.
    pub fn ball(&self, n: u32, x: &Rational) -> Result<RationalIntervalSet> {
        let near = self.e0_ball(x)?;
        let three = Rational::from_int(3);
        let top = Rational::two_pow(n + 1);
        if *x > three && *x < top {
            Ok(self.middle(n).union(&near))
        } else {
            Ok(near)
        }
    }

    /// Claimed domination index for `G_n o G_m`; tightened to
    /// `max(n, m) + 1`, capped at the cutoff where the top middle region
    /// already covers the truncated space.
    pub fn dominate(&self, n: u32, m: u32) -> u32 {
        (n.max(m) + 1).min(self.cutoff)
    }

    /// Symbolic proof that `G_n o G_m` is contained in `G_k`.
    pub fn verify_domination(&self, n: u32, m: u32) -> DominationCheck {
        let k = self.dominate(n, m);
        let mid_n = self.middle(n);
        let mid_m = self.middle(m);
        let mid_k = self.middle(k);
        let two = Rational::from_int(2);
        let mut checks = Vec::new();

        // E_0 o E_m: pairs (x, y) with x within distance 2 of the middle
        // region and y inside it -- an exact box.
        let reach_m = mid_m.dilate_open(&two).intersection(&self.space);
        checks.push(NamedCheck {
            name: format!("near_middle_{m}_inside_middle_{k}"),
            ok: reach_m.is_subset_of(&mid_k),
        });
        // E_n o E_0, mirrored box.
        let reach_n = mid_n.dilate_open(&two).intersection(&self.space);
        checks.push(NamedCheck {
            name: format!("near_middle_{n}_inside_middle_{k}"),
            ok: reach_n.is_subset_of(&mid_k),
        });
        // E_n o E_m: the exact box middle_n x middle_m when the two middle
        // regions meet (they always share the lowest component).
        if !mid_n.intersection(&mid_m).is_empty() {
            checks.push(NamedCheck {
                name: format!("middle_{n}_and_{m}_inside_middle_{k}"),
                ok: mid_n.is_subset_of(&mid_k) && mid_m.is_subset_of(&mid_k),
            });
        }
        // E_0 o E_0 is inside the distance-4 band; discharge it component
        // by component. Same-component pairs stay within distance 2, so
        // they land back in E_0; cross-component pairs closer than gap 4
        // must have both components inside the claimed middle region.
        for (i, ci) in &self.components {
            let (lo, _) = ci.inf().expect("component nonempty");
            let (hi, hi_closed) = ci.sup().expect("component nonempty");
            let width_ok = {
                let w = hi - lo;
                w < two || (w == two && !hi_closed)
            };
            checks.push(NamedCheck {
                name: format!("component_{i}_width_below_2"),
                ok: width_ok,
            });
        }
        for (i, ci) in &self.components {
            for (j, cj) in &self.components {
                if i >= j {
                    continue;
                }
                let (hi_i, _) = ci.sup().expect("nonempty");
                let (lo_j, _) = cj.inf().expect("nonempty");
                let gap = lo_j - hi_i;
                if gap < Rational::from_int(4) {
                    checks.push(NamedCheck {
                        name: format!("band_pair_{i}_{j}_inside_middle_{k}"),
                        ok: ci.is_subset_of(&mid_k) && cj.is_subset_of(&mid_k),
                    });
                }
            }
        }
        DominationCheck { n, m, k, checks }
    }

    /// Full presentation certificate: monotonicity, symmetry (structural:
    /// both `E_0` and the middle squares are symmetric relations), and all
    /// composition claims.
    pub fn verify_axioms(&self) -> Example3AxiomReport {
        let monotone = self
            .generator_indices()
            .zip(self.generator_indices().skip(1))
            .map(|(a, b)| NamedCheck {
                name: format!("middle_{a}_inside_middle_{b}"),
                ok: self.middle(a).is_subset_of(&self.middle(b)),
            })
            .collect();
        let dominations: Vec<DominationCheck> = self
            .generator_indices()
            .flat_map(|n| self.generator_indices().map(move |m| (n, m)))
            .map(|(n, m)| self.verify_domination(n, m))
            .collect();
        Example3AxiomReport {
            cutoff: self.cutoff,
            monotone,
            dominations,
        }
    }

    /// Per-generator convexity certificate: each ball is the trace on the
    /// space of a single real interval. Away from the middle region the
    /// ball is `(x-2, x+2)` restricted to the space; inside it, the two
    /// pieces both contain `x`, so their union is one interval provided the
    /// middle region and the moving piece overlap for every qualifying `x`.
    pub fn local_convexity(&self) -> Example3ConvexityReport {
        let mut checks = Vec::new();
        for n in self.generator_indices() {
            let mid = self.middle(n);
            // Qualifying centers: x in (3, 2^{n+1}). Overlap of (x-2, x+2)
            // with (3, 2^{n+1}) needs x in (1, 2^{n+1} + 2), a superset.
            let centers = RationalIntervalSet::open(Rational::from_int(3), Rational::two_pow(n + 1))
                .expect("middle")
                .intersection(&self.space);
            let overlap_zone = RationalIntervalSet::open(
                Rational::from_int(1),
                &Rational::two_pow(n + 1) + &Rational::from_int(2),
            )
            .expect("zone");
            checks.push(NamedCheck {
                name: format!("generator_{n}_pieces_overlap"),
                ok: centers.is_subset_of(&overlap_zone) && !mid.is_empty(),
            });
        }
        Example3ConvexityReport { checks }
    }

    /// Connectivity classes of `E_0`: consecutive components merge only
    /// when their gap is below 2; for indices at least 2 all gaps are at
    /// least 2, so each component is its own class.
    pub fn omega_components_e0(&self) -> Vec<RationalIntervalSet> {
        let two = Rational::from_int(2);
        let mut classes: Vec<RationalIntervalSet> = Vec::new();
        for (_, c) in &self.components {
            match classes.last_mut() {
                Some(last) => {
                    let (hi, _) = last.sup().expect("nonempty");
                    let (lo, _) = c.inf().expect("nonempty");
                    if &(lo - &hi.clone()) < &two {
                        let merged = last.union(c);
                        *last = merged;
                    } else {
                        classes.push(c.clone());
                    }
                }
                None => classes.push(c.clone()),
            }
        }
        classes
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct NamedCheck {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct DominationCheck {
    pub n: u32,
    pub m: u32,
    pub k: u32,
    pub checks: Vec<NamedCheck>,
}

impl DominationCheck {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Example3AxiomReport {
    pub cutoff: u32,
    pub monotone: Vec<NamedCheck>,
    pub dominations: Vec<DominationCheck>,
}

impl Example3AxiomReport {
    pub fn passed(&self) -> bool {
        self.monotone.iter().all(|c| c.ok) && self.dominations.iter().all(|d| d.passed())
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Example3ConvexityReport {
    pub checks: Vec<NamedCheck>,
}

impl Example3ConvexityReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_int(n)
    }

    #[test]
    fn ball_formulas() {
        let f = Example3Family::new(12).unwrap();
        // E_0 ball at 4 is the whole lowest component.
        assert_eq!(f.e0_ball(&q(4)).unwrap(), dyadic_component(2));
        // G_3 ball at 4 is the middle region (3, 16).
        let b = f.ball(3, &q(4)).unwrap();
        assert_eq!(b, f.middle(3));
        // E_0 is below every generator.
        for n in [2, 5, 9] {
            let e0 = f.e0_ball(&q(4)).unwrap();
            assert!(e0.is_subset_of(&f.ball(n, &q(4)).unwrap()));
        }
        // Outside the middle region only the near ball remains.
        let x = &Rational::two_pow(9) + &Rational::ratio(1, 4).unwrap();
        let b = f.ball(3, &x).unwrap();
        assert_eq!(b, f.e0_ball(&x).unwrap());
    }

    #[test]
    fn axioms_certify() {
        let f = Example3Family::new(12).unwrap();
        let report = f.verify_axioms();
        assert!(report.passed());
        // The tightened claim index.
        assert_eq!(f.dominate(3, 5), 6);
        assert_eq!(f.dominate(12, 12), 12);
    }

    #[test]
    fn convexity_certifies() {
        let f = Example3Family::new(12).unwrap();
        assert!(f.local_convexity().passed());
    }

    #[test]
    fn one_class_per_component() {
        let f = Example3Family::new(10).unwrap();
        let classes = f.omega_components_e0();
        assert_eq!(classes.len(), 9);
        for (class, (_, comp)) in classes.iter().zip(f.components()) {
            assert_eq!(class, comp);
        }
    }

    #[test]
    fn cutoff_guard() {
        assert!(matches!(Example3Family::new(2), Err(Error::OutOfRange(_))));
    }
}
