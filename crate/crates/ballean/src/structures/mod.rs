//! Coarse structures as finitely presented generator families, bornologies,
//! the built-in spaces (metric windows, discrete spaces from a bornology,
//! affine set-valued maps), subspaces, and the hyperballean relation.
//!
//! A coarse structure is never materialized as its full downward-closed
//! family: the finite object under test is a monotone generator base plus a
//! domination table claiming, for every pair of generators, a base element
//! containing their composition (and one containing each inverse).
//! [`GeneratorFamily::verify_axioms`] re-checks every claim exactly and is
//! the finite certificate that the presentation generates a coarse
//! structure.

pub mod example3;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec;
use crate::ground::{is_convex, IdealExtension, OrderedGround};
use crate::pointset::PointSet;
use crate::rational::Rational;
use crate::relations::Entourage;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum BornologyKind {
    Interval,
    FiniteSets,
    Explicit,
}

/// A directed base of bounded sets, stored as an ascending chain.
///
/// Directed bases that are not chains are turned into chains of cumulative
/// unions (for the interval kind the caller must already supply a chain,
/// since a union of intervals need not be an interval).
#[derive(Clone, Debug)]
pub struct Bornology {
    ground: Arc<OrderedGround>,
    kind: BornologyKind,
    base: Vec<PointSet>,
}

impl Bornology {
    /// Interval bornology presented by a chain of intervals `[lo, hi]`.
    pub fn interval_chain(
        ground: Arc<OrderedGround>,
        intervals: &[(Rational, Rational)],
    ) -> Result<Self> {
        let mut base = Vec::new();
        for (lo, hi) in intervals {
            let li = ground.require_index_of(lo)?;
            let hi_i = ground.require_index_of(hi)?;
            if li > hi_i {
                return Err(Error::Invalid(format!("interval [{lo},{hi}] is empty")));
            }
            base.push(PointSet::range(ground.len(), li, hi_i));
        }
        for w in base.windows(2) {
            if !w[0].is_subset_of(&w[1]) {
                return Err(Error::Invalid(
                    "interval base must be an ascending chain".into(),
                ));
            }
        }
        if base.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Bornology {
            ground,
            kind: BornologyKind::Interval,
            base,
        })
    }

    /// The bornology of all finite sets; on a finite ground its base is the
    /// whole ground.
    pub fn finite_sets(ground: Arc<OrderedGround>) -> Self {
        let full = PointSet::full(ground.len());
        Bornology {
            ground,
            kind: BornologyKind::FiniteSets,
            base: vec![full],
        }
    }

    /// Explicit base; chainified by cumulative unions.
    pub fn explicit(ground: Arc<OrderedGround>, sets: Vec<PointSet>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::EmptySet);
        }
        let mut base: Vec<PointSet> = Vec::new();
        for s in sets {
            let next = match base.last() {
                Some(prev) => prev.union(&s),
                None => s,
            };
            if base.last() != Some(&next) {
                base.push(next);
            }
        }
        Ok(Bornology {
            ground,
            kind: BornologyKind::Explicit,
            base,
        })
    }

    pub fn ground(&self) -> &Arc<OrderedGround> {
        &self.ground
    }

    pub fn kind(&self) -> BornologyKind {
        self.kind
    }

    pub fn base(&self) -> &[PointSet] {
        &self.base
    }

    /// Every two base sets have a base superset. True by construction for
    /// chains; kept as an explicit check for reports.
    pub fn is_directed(&self) -> bool {
        self.base.windows(2).all(|w| w[0].is_subset_of(&w[1]))
    }

    /// Every singleton lies in some base set.
    pub fn covers_ground(&self) -> bool {
        match self.base.last() {
            Some(top) => top.len() == self.ground.len(),
            None => false,
        }
    }

    /// Windowed boundedness check. A set is reported bounded when it fits
    /// in a base set and, on a window of an infinite ideal space, stays
    /// clear of the truncation edge: a set reaching beyond the interior
    /// margin stands for an ideal set whose extent the window cannot
    /// measure.
    pub fn is_bounded(&self, s: &PointSet, margin: usize) -> bool {
        if s.is_empty() {
            return true;
        }
        let contained = self.base.iter().any(|b| s.is_subset_of(b));
        if !contained {
            return false;
        }
        match self.ground.ideal() {
            IdealExtension::None => true,
            _ => s.iter().all(|i| self.ground.is_interior(i, margin + 1)),
        }
    }
}

/// Affine set-valued map `phi(x) = [p*x + q, r*x + s]` intersected with the
/// ground (so inward rounding to ground points is automatic), plus an
/// optional finite override table sending chosen points to explicit convex
/// sets.
#[derive(Clone, Debug)]
pub struct PhiSpec {
    pub p: Rational,
    pub q: Rational,
    pub r: Rational,
    pub s: Rational,
    pub overrides: BTreeMap<usize, PointSet>,
}

impl PhiSpec {
    pub fn affine(p: Rational, q: Rational, r: Rational, s: Rational) -> Self {
        PhiSpec {
            p,
            q,
            r,
            s,
            overrides: BTreeMap::new(),
        }
    }

    pub fn with_override(mut self, x: usize, set: PointSet) -> Self {
        self.overrides.insert(x, set);
        self
    }

    pub fn validate(&self, ground: &OrderedGround) -> Result<()> {
        for (&x, set) in &self.overrides {
            if x >= ground.len() {
                return Err(Error::UnknownPoint(format!("override index {x}")));
            }
            if set.universe_len() != ground.len() {
                return Err(Error::Invalid("override over wrong universe".into()));
            }
            if !is_convex(set) {
                return Err(Error::Invalid(format!(
                    "override at index {x} is not convex"
                )));
            }
        }
        Ok(())
    }

    /// `phi(x)` as a set of ground points.
    pub fn eval(&self, ground: &OrderedGround, x: usize) -> PointSet {
        if let Some(set) = self.overrides.get(&x) {
            return set.clone();
        }
        let c = ground.coord(x);
        let lb = &(&self.p * c) + &self.q;
        let ub = &(&self.r * c) + &self.s;
        PointSet::from_indices(
            ground.len(),
            (0..ground.len()).filter(|&y| {
                let d = ground.coord(y);
                *d >= lb && *d <= ub
            }),
        )
    }
}

/// `E_phi[x] = phi(x) + {x}`; the diagonal is added explicitly since an
/// admissible map need not satisfy `x in phi(x)`.
pub fn entourage_from_phi(ground: &Arc<OrderedGround>, phi: &PhiSpec) -> Result<Entourage> {
    phi.validate(ground)?;
    let n = ground.len();
    let balls = (0..n)
        .map(|x| {
            let mut b = phi.eval(ground, x);
            b.insert(x);
            b
        })
        .collect();
    Entourage::from_balls(ground.clone(), balls)
}

#[derive(Clone, Debug, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum AdmissibilityVerdict {
    /// Both conditions hold as far as the window can measure.
    Pass { window_limited: bool },
    /// A condition set escapes beyond the interior margin; witnesses are
    /// the offending coordinates.
    Violated {
        condition: String,
        witnesses: Vec<String>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub a: String,
    pub b: String,
    pub union_size: usize,
    pub preimage_size: usize,
    pub verdict: AdmissibilityVerdict,
}

impl AdmissibilityReport {
    pub fn passed(&self) -> bool {
        matches!(self.verdict, AdmissibilityVerdict::Pass { .. })
    }
}

/// Check both admissibility conditions of a set-valued map on the interval
/// `[a, b]`: the union of its values over the interval and the preimage of
/// the interval must both be bounded. On a window, "unbounded" is
/// semi-decided as reaching beyond the interior margin.
pub fn phi_admissible(
    ground: &OrderedGround,
    phi: &PhiSpec,
    a: usize,
    b: usize,
    margin: usize,
) -> Result<AdmissibilityReport> {
    if a > b {
        return Err(Error::OutOfRange(format!("interval indices {a} > {b}")));
    }
    let n = ground.len();
    let mut union = PointSet::empty(n);
    for x in a..=b {
        union.union_with(&phi.eval(ground, x));
    }
    let interval = PointSet::range(n, a, b);
    let preimage = PointSet::from_indices(
        n,
        (0..n).filter(|&x| !phi.eval(ground, x).is_disjoint_from(&interval)),
    );

    let edge_witnesses = |s: &PointSet| -> Vec<String> {
        match ground.ideal() {
            IdealExtension::None => Vec::new(),
            _ => s
                .iter()
                .filter(|&i| !ground.is_interior(i, margin + 1))
                .map(|i| ground.coord(i).to_string())
                .collect(),
        }
    };

    let union_escape = edge_witnesses(&union);
    let preimage_escape = edge_witnesses(&preimage);
    let verdict = if !union_escape.is_empty() {
        AdmissibilityVerdict::Violated {
            condition: "union_bounded".into(),
            witnesses: union_escape,
        }
    } else if !preimage_escape.is_empty() {
        AdmissibilityVerdict::Violated {
            condition: "preimage_bounded".into(),
            witnesses: preimage_escape,
        }
    } else {
        AdmissibilityVerdict::Pass {
            window_limited: ground.ideal() != IdealExtension::None,
        }
    };
    Ok(AdmissibilityReport {
        a: ground.coord(a).to_string(),
        b: ground.coord(b).to_string(),
        union_size: union.len(),
        preimage_size: preimage.len(),
        verdict,
    })
}

/// A monotone base of entourages with a composition/inverse domination
/// table: the finite presentation of a coarse structure.
#[derive(Clone, Debug)]
pub struct GeneratorFamily {
    ground: Arc<OrderedGround>,
    generators: Vec<Entourage>,
    labels: Vec<String>,
    dominate: Vec<Vec<Option<usize>>>,
    dominate_inv: Vec<Option<usize>>,
}

impl GeneratorFamily {
    /// Build from explicit entourages; domination claims are found by
    /// scanning for the first containing generator.
    pub fn from_entourages(
        ground: Arc<OrderedGround>,
        generators: Vec<Entourage>,
        labels: Vec<String>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptySet);
        }
        if labels.len() != generators.len() {
            return Err(Error::Invalid("label count mismatch".into()));
        }
        for g in &generators {
            if !g.ground().as_ref().eq(ground.as_ref()) {
                return Err(Error::GroundMismatch);
            }
        }
        let dominate = generators
            .iter()
            .map(|a| {
                generators
                    .iter()
                    .map(|b| {
                        let c = a.compose(b).expect("same ground");
                        generators.iter().position(|g| c.is_subset_of(g))
                    })
                    .collect()
            })
            .collect();
        let dominate_inv = generators
            .iter()
            .map(|a| {
                let inv = a.inverse();
                generators.iter().position(|g| inv.is_subset_of(g))
            })
            .collect();
        Ok(GeneratorFamily {
            ground,
            generators,
            labels,
            dominate,
            dominate_inv,
        })
    }

    /// Metric family over a window from a strictly increasing radius list.
    /// The composition claim for radii `r_i, r_j` is the first radius at
    /// least `r_i + r_j`, falling back to the top generator (which is a
    /// valid claim once the top radius spans the window).
    pub fn metric_family(ground: Arc<OrderedGround>, radii: &[Rational]) -> Result<Self> {
        if radii.is_empty() {
            return Err(Error::EmptySet);
        }
        for w in radii.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Invalid("radii must be strictly increasing".into()));
            }
        }
        let generators: Vec<Entourage> = radii
            .iter()
            .map(|r| Entourage::metric(ground.clone(), r))
            .collect();
        let labels = radii.iter().map(|r| format!("radius {r}")).collect();
        let top = radii.len() - 1;
        let dominate = (0..radii.len())
            .map(|i| {
                (0..radii.len())
                    .map(|j| {
                        let need = &radii[i] + &radii[j];
                        Some(radii.iter().position(|r| *r >= need).unwrap_or(top))
                    })
                    .collect()
            })
            .collect();
        let dominate_inv = (0..radii.len()).map(Some).collect();
        Ok(GeneratorFamily {
            ground,
            generators,
            labels,
            dominate,
            dominate_inv,
        })
    }

    /// The discrete structure defined by a bornology: one generator per
    /// base set.
    pub fn discrete_from_bornology(b: &Bornology) -> Result<Self> {
        let ground = b.ground().clone();
        let base = b.base();
        let generators: Vec<Entourage> = base
            .iter()
            .map(|s| Entourage::discrete(ground.clone(), s))
            .collect();
        let labels = base
            .iter()
            .map(|s| match (s.min(), s.max()) {
                (Some(lo), Some(hi)) => format!(
                    "discrete [{},{}] ({} pts)",
                    ground.coord(lo),
                    ground.coord(hi),
                    s.len()
                ),
                _ => "discrete {}".into(),
            })
            .collect();
        // The base is a chain, so B_i and B_j are both inside B_max(i,j).
        let m = base.len();
        let dominate = (0..m)
            .map(|i| (0..m).map(|j| Some(i.max(j))).collect())
            .collect();
        let dominate_inv = (0..m).map(Some).collect();
        Ok(GeneratorFamily {
            ground,
            generators,
            labels,
            dominate,
            dominate_inv,
        })
    }

    /// Family generated by iterating a set-valued map: generators are the
    /// powers `E_phi^1 .. E_phi^depth`, with composition claimed at the sum
    /// of exponents, capped at the top power.
    pub fn phi_family(ground: Arc<OrderedGround>, phi: &PhiSpec, depth: u32) -> Result<Self> {
        if depth == 0 {
            return Err(Error::OutOfRange("depth 0".into()));
        }
        let e = entourage_from_phi(&ground, phi)?;
        let mut generators = Vec::with_capacity(depth as usize);
        let mut acc = e.clone();
        for _ in 0..depth {
            generators.push(acc.clone());
            acc = acc.compose(&e)?;
        }
        let labels = (1..=depth).map(|n| format!("phi^{n}")).collect();
        let top = depth as usize - 1;
        let dominate = (0..depth as usize)
            .map(|i| {
                (0..depth as usize)
                    .map(|j| Some((i + j + 1).min(top)))
                    .collect()
            })
            .collect();
        let dominate_inv = (0..depth as usize)
            .map(|i| {
                let inv = generators[i].inverse();
                generators.iter().position(|g| inv.is_subset_of(g))
            })
            .collect();
        Ok(GeneratorFamily {
            ground,
            generators,
            labels,
            dominate,
            dominate_inv,
        })
    }

    pub fn ground(&self) -> &Arc<OrderedGround> {
        &self.ground
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generators(&self) -> &[Entourage] {
        &self.generators
    }

    pub fn generator(&self, i: usize) -> &Entourage {
        &self.generators[i]
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn dominate_claim(&self, i: usize, j: usize) -> Option<usize> {
        self.dominate[i][j]
    }

    pub fn dominate_inverse_claim(&self, i: usize) -> Option<usize> {
        self.dominate_inv[i]
    }

    /// Transport the whole family along a permutation of ground indices.
    /// Relation algebra is preserved, so the domination tables carry over;
    /// only order-dependent checks see a difference.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let generators = self
            .generators
            .iter()
            .map(|g| g.relabel(perm))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorFamily {
            ground: self.ground.clone(),
            generators,
            labels: self.labels.clone(),
            dominate: self.dominate.clone(),
            dominate_inv: self.dominate_inv.clone(),
        })
    }

    /// Subspace family on a nonempty subset: balls intersected with the
    /// subset (diagonal restored). Domination claims restrict soundly.
    pub fn restrict(&self, keep: &PointSet) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySet);
        }
        if keep.len() == self.ground.len() {
            return Ok(self.clone());
        }
        let coords: Vec<Rational> = keep.iter().map(|i| self.ground.coord(i).clone()).collect();
        let sub = OrderedGround::explicit(coords, IdealExtension::Declared)?;
        let generators = self
            .generators
            .iter()
            .map(|g| g.restrict(keep, sub.clone()))
            .collect::<Result<Vec<_>>>()?;
        Ok(GeneratorFamily {
            ground: sub,
            generators,
            labels: self.labels.clone(),
            dominate: self.dominate.clone(),
            dominate_inv: self.dominate_inv.clone(),
        })
    }

    /// `Y` is large when some generator's ball of `Y` is the whole ground.
    pub fn is_large(&self, y: &PointSet) -> bool {
        let full = self.ground.full_set();
        self.generators.iter().any(|g| g.ball_of_set(y) == full)
    }

    /// Re-check every presentation claim exactly. Points examined are those
    /// interior at depth `margin`; on windows of ideal spaces whose
    /// generator balls are ideal balls clipped to the window, truncation
    /// cannot manufacture violations, so `margin = 0` is the sound default.
    pub fn verify_axioms(&self, margin: usize) -> AxiomReport {
        let interior = self.ground.interior_points(margin);
        let diagonal: Vec<bool> = self
            .generators
            .iter()
            .map(|g| (0..self.ground.len()).all(|x| g.ball(x).contains(x)))
            .collect();
        let monotone: Vec<bool> = self
            .generators
            .windows(2)
            .map(|w| {
                interior
                    .iter()
                    .all(|x| w[0].ball(x).is_subset_of(w[1].ball(x)))
            })
            .collect();

        let pairs: Vec<(usize, usize)> = (0..self.len())
            .flat_map(|i| (0..self.len()).map(move |j| (i, j)))
            .collect();
        let compose = exec::map_ordered(&pairs, |&(i, j)| {
            let claim = self.dominate[i][j];
            match claim {
                None => ComposeClaim {
                    i,
                    j,
                    claimed: None,
                    ok: false,
                    witness: None,
                },
                Some(k) => {
                    let c = self.generators[i]
                        .compose(&self.generators[j])
                        .expect("same ground");
                    let target = &self.generators[k];
                    let mut witness = None;
                    for x in interior.iter() {
                        if !c.ball(x).is_subset_of(target.ball(x)) {
                            let y = c
                                .ball(x)
                                .difference(target.ball(x))
                                .min()
                                .expect("nonempty difference");
                            witness = Some(ClaimWitness {
                                x: self.ground.coord(x).to_string(),
                                y: self.ground.coord(y).to_string(),
                            });
                            break;
                        }
                    }
                    ComposeClaim {
                        i,
                        j,
                        claimed: Some(k),
                        ok: witness.is_none(),
                        witness,
                    }
                }
            }
        });

        let inverse: Vec<InverseClaim> = (0..self.len())
            .map(|i| {
                let claim = self.dominate_inv[i];
                match claim {
                    None => InverseClaim {
                        i,
                        claimed: None,
                        ok: false,
                        witness: None,
                    },
                    Some(k) => {
                        let inv = self.generators[i].inverse();
                        let target = &self.generators[k];
                        let mut witness = None;
                        for x in interior.iter() {
                            if !inv.ball(x).is_subset_of(target.ball(x)) {
                                let y = inv
                                    .ball(x)
                                    .difference(target.ball(x))
                                    .min()
                                    .expect("nonempty difference");
                                witness = Some(ClaimWitness {
                                    x: self.ground.coord(x).to_string(),
                                    y: self.ground.coord(y).to_string(),
                                });
                                break;
                            }
                        }
                        InverseClaim {
                            i,
                            claimed: Some(k),
                            ok: witness.is_none(),
                            witness,
                        }
                    }
                }
            })
            .collect();

        AxiomReport {
            margin,
            points_checked: interior.len(),
            diagonal,
            monotone,
            compose,
            inverse,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimWitness {
    pub x: String,
    pub y: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComposeClaim {
    pub i: usize,
    pub j: usize,
    pub claimed: Option<usize>,
    pub ok: bool,
    pub witness: Option<ClaimWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct InverseClaim {
    pub i: usize,
    pub claimed: Option<usize>,
    pub ok: bool,
    pub witness: Option<ClaimWitness>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub margin: usize,
    pub points_checked: usize,
    pub diagonal: Vec<bool>,
    pub monotone: Vec<bool>,
    pub compose: Vec<ComposeClaim>,
    pub inverse: Vec<InverseClaim>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.diagonal.iter().all(|&b| b)
            && self.monotone.iter().all(|&b| b)
            && self.compose.iter().all(|c| c.ok)
            && self.inverse.iter().all(|c| c.ok)
    }
}

/// Hyperballean relatedness: `A` and `B` are `exp E`-related when each is
/// inside the `E`-neighbourhood of the other.
pub fn exp_related(e: &Entourage, a: &PointSet, b: &PointSet) -> Result<bool> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptySet);
    }
    Ok(a.is_subset_of(&e.ball_of_set(b)) && b.is_subset_of(&e.ball_of_set(a)))
}

/// The entourage `exp E` of the hyperballean, as a predicate on nonempty
/// subsets.
#[derive(Clone, Debug)]
pub struct HyperEntourage {
    base: Entourage,
}

impl HyperEntourage {
    pub fn new(base: Entourage) -> Self {
        HyperEntourage { base }
    }

    pub fn base(&self) -> &Entourage {
        &self.base
    }

    pub fn related(&self, a: &PointSet, b: &PointSet) -> Result<bool> {
        exp_related(&self.base, a, b)
    }
}
