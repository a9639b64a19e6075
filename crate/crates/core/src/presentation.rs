//! Finite presentations read off a quiver with potential, and their
//! evaluation in braid groups.
//!
//! Generators are the quiver vertices. With `x^y = y⁻¹xy`, `C(x, y)` is
//! `xy = yx` and `B(x, y)` is `xyx = yxy`. Patterns, on full subquivers:
//!
//! 1. no arrow between `a, b`: `C(a, b)`
//! 2. one arrow between `a, b`: `B(a, b)`
//! 3. 3-cycle `a -> b -> c -> a` in the potential: `C(a^b, c)`
//! 4. `c -> a -> b`, `b => c`, one potential 3-cycle: `B(a^b, c)`
//! 5. `c -> a -> b`, `c -> e -> b`, `b => c`, no `a`-`e` arrow, potential
//!    terms through `a, b, c` and `e, b, c` on different `b -> c` arrows:
//!    `C(c^{ae}, b)`
//! 6. as 5 with `a -> e`: `B(c^{ae}, b)` and `B(c^{ea}, b)`
//! 7. as 6 with `e -> f -> a` in the potential, `f` away from `b, c`:
//!    `C(e, f^{abc})`

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::cover::{disc_frame, tree_frames};
use crate::error::{Error, Result};
use crate::exchange::ExchangeGraph;
use crate::group::{FreeWord, Group};
use crate::surface::{quiver_from_triangulation, ArcId, QuiverWithPotential};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PresentationRelation {
    /// Pattern number, 1 to 7.
    pub case: u8,
    pub left: FreeWord,
    pub right: FreeWord,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupPresentation {
    pub generators: Vec<ArcId>,
    pub relations: Vec<PresentationRelation>,
}

impl GroupPresentation {
    pub fn cases(&self) -> BTreeSet<u8> {
        self.relations.iter().map(|r| r.case).collect()
    }

    /// Rename generator `i` (0-based) to `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        let map = |w: &FreeWord| {
            FreeWord::new(w.letters().iter().map(|&l| {
                let g = perm[l.unsigned_abs() as usize - 1] as i32 + 1;
                g * l.signum()
            }))
        };
        let mut relations: Vec<PresentationRelation> = self
            .relations
            .iter()
            .map(|r| PresentationRelation { case: r.case, left: map(&r.left), right: map(&r.right) })
            .collect();
        relations.sort();
        GroupPresentation { generators: self.generators.clone(), relations }
    }
}

fn gen(a: usize) -> FreeWord {
    FreeWord::generator(a as i32 + 1)
}

/// `x^{y_1 y_2 ⋯} = ⋯ y_2⁻¹ y_1⁻¹ x y_1 y_2 ⋯`
fn conj(x: usize, by: &[usize]) -> FreeWord {
    let y = by.iter().fold(gen(x).one(), |acc, &b| acc.mul(&gen(b)));
    gen(x).conj(&y)
}

fn crel(case: u8, x: FreeWord, y: FreeWord) -> PresentationRelation {
    PresentationRelation { case, left: x.mul(&y), right: y.mul(&x) }
}

fn brel(case: u8, x: FreeWord, y: FreeWord) -> PresentationRelation {
    PresentationRelation { case, left: x.mul(&y).mul(&x), right: y.mul(&x).mul(&y) }
}

struct Scanner<'a> {
    q: &'a QuiverWithPotential,
}

impl Scanner<'_> {
    fn b(&self, x: usize, y: usize) -> i64 {
        self.q.b[(x, y)]
    }

    /// `b -> c` arrow used by each potential term on the cycle `x -> y -> z`.
    fn terms(&self, cycle: [usize; 3], b: usize, c: usize) -> Vec<usize> {
        let ids = cycle.map(ArcId::from_index);
        self.q
            .terms_on(ids)
            .filter(|t| (0..3).any(|r| (0..3).all(|i| t.cycle[(i + r) % 3] == ids[i])))
            .filter_map(|t| (0..3).find(|&k| t.cycle[k].index() == b && t.cycle[(k + 1) % 3].index() == c).map(|k| t.arrows[k]))
            .collect()
    }

    fn has_term(&self, cycle: [usize; 3]) -> bool {
        !self.terms(cycle, cycle[0], cycle[1]).is_empty()
    }
}

pub fn presentation_from_qp(q: &QuiverWithPotential) -> Result<GroupPresentation> {
    if q.multiplicity() > 2 {
        return Err(Error::UnsupportedPattern(format!("{} parallel arrows", q.multiplicity())));
    }
    let n = q.size();
    let s = Scanner { q };
    let mut out: BTreeSet<PresentationRelation> = BTreeSet::new();

    for a in 0..n {
        for b in a + 1..n {
            match s.b(a, b).abs() {
                0 => out.insert(crel(1, gen(a), gen(b))),
                1 => out.insert(brel(2, gen(a), gen(b))),
                _ => false,
            };
        }
    }

    let distinct = |v: &[usize]| v.iter().collect::<BTreeSet<_>>().len() == v.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if !distinct(&[a, b, c]) {
                    continue;
                }
                if s.b(a, b) == 1 && s.b(b, c) == 1 && s.b(c, a) == 1 && s.has_term([a, b, c]) {
                    out.insert(crel(3, conj(a, &[b]), gen(c)));
                }
                if s.b(c, a) == 1 && s.b(a, b) == 1 && s.b(b, c) == 2 && s.terms([a, b, c], b, c).len() == 1 {
                    out.insert(brel(4, conj(a, &[b]), gen(c)));
                }
                if !(s.b(c, a) == 1 && s.b(a, b) == 1 && s.b(b, c) == 2) {
                    continue;
                }
                for e in 0..n {
                    if !distinct(&[a, b, c, e]) || s.b(c, e) != 1 || s.b(e, b) != 1 {
                        continue;
                    }
                    let (t1, t2) = (s.terms([a, b, c], b, c), s.terms([e, b, c], b, c));
                    if !t1.iter().any(|x| t2.iter().any(|y| x != y)) {
                        continue;
                    }
                    match s.b(a, e) {
                        0 => {
                            out.insert(crel(5, conj(c, &[a, e]), gen(b)));
                        }
                        1 => {
                            out.insert(brel(6, conj(c, &[a, e]), gen(b)));
                            out.insert(brel(6, conj(c, &[e, a]), gen(b)));
                            for f in 0..n {
                                if distinct(&[a, b, c, e, f])
                                    && s.b(f, a) == 1
                                    && s.b(e, f) == 1
                                    && s.b(f, b) == 0
                                    && s.b(f, c) == 0
                                    && s.has_term([a, e, f])
                                {
                                    out.insert(crel(7, gen(e), conj(f, &[a, b, c])));
                                }
                            }
                        }
                        _ => {}
                    }
                }
            }
        }
    }

    Ok(GroupPresentation { generators: q.vertices().collect(), relations: out.into_iter().collect() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationCheck {
    pub relation: PresentationRelation,
    pub holds: bool,
    /// `left · right⁻¹` when it is not the identity.
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SoundnessReport {
    pub checks: Vec<RelationCheck>,
}

impl SoundnessReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> impl Iterator<Item = &RelationCheck> {
        self.checks.iter().filter(|c| !c.holds)
    }
}

/// Substitute `images[i]` for generator `i + 1` in every relation.
pub fn verify_sound<G: Group>(p: &GroupPresentation, images: &[G]) -> Result<SoundnessReport> {
    if images.len() != p.generators.len() {
        return Err(Error::Shape(format!("{} images for {} generators", images.len(), p.generators.len())));
    }
    let checks = p
        .relations
        .iter()
        .map(|r| {
            let l = r.left.evaluate(images).expect("letters in range");
            let rr = r.right.evaluate(images).expect("letters in range");
            let q = l.mul(&rr.inv());
            let holds = q.is_one();
            RelationCheck { relation: r.clone(), holds, witness: (!holds).then(|| q.to_string()) }
        })
        .collect();
    Ok(SoundnessReport { checks })
}

/// The presentation at vertex `v` of a disc exchange graph, evaluated on
/// the braid twists of the transported frame there.
pub fn local_twist_relation_report(g: &ExchangeGraph, v: usize) -> Result<SoundnessReport> {
    let base = &g.vertex(0).triangulation;
    if !base.surface().is_disc() {
        return Err(Error::OracleUnavailable(format!("{:?}", base.surface())));
    }
    if v >= g.vertex_count() {
        return Err(Error::IndexOutOfRange { index: v, size: g.vertex_count() });
    }
    let frames = tree_frames(g, disc_frame(base)?)?;
    let p = presentation_from_qp(&quiver_from_triangulation(&g.vertex(v).triangulation))?;
    verify_sound(&p, &frames[v].braid_twists())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::GarsideNF;
    use crate::cover::TwistFrame;
    use crate::exchange::{Radius, DEFAULT_BUDGET};
    use crate::group::artin_generators;
    use crate::surface::polygon_fan;

    fn w(l: &[i32]) -> FreeWord {
        FreeWord::new(l.iter().copied())
    }

    #[test]
    fn a2_and_a1xa1() {
        let p = presentation_from_qp(&QuiverWithPotential::from_arrows(2, &[(1, 2)], &[]).unwrap()).unwrap();
        assert_eq!(p.relations, vec![PresentationRelation { case: 2, left: w(&[1, 2, 1]), right: w(&[2, 1, 2]) }]);
        let p = presentation_from_qp(&QuiverWithPotential::from_arrows(2, &[], &[]).unwrap()).unwrap();
        assert_eq!(p.relations, vec![PresentationRelation { case: 1, left: w(&[1, 2]), right: w(&[2, 1]) }]);
        assert!(verify_sound(&p, &artin_generators(2)).unwrap().failures().count() == 1);
    }

    #[test]
    fn three_cycle() {
        let q = QuiverWithPotential::from_arrows(3, &[(1, 2), (2, 3), (3, 1)], &[[1, 2, 3]]).unwrap();
        let p = presentation_from_qp(&q).unwrap();
        assert_eq!(p.cases(), BTreeSet::from([2, 3]));
        assert_eq!(p.relations.iter().filter(|r| r.case == 2).count(), 3);
        assert_eq!(p.relations.iter().filter(|r| r.case == 3).count(), 3);
        // a^b c = c a^b for (a, b, c) = (1, 2, 3)
        assert!(p.relations.contains(&crel(3, w(&[-2, 1, 2]), w(&[3]))));
        let without = QuiverWithPotential::from_arrows(3, &[(1, 2), (2, 3), (3, 1)], &[]).unwrap();
        assert_eq!(presentation_from_qp(&without).unwrap().cases(), BTreeSet::from([2]));
    }

    #[test]
    fn fan_and_inner_triangle() {
        let fan = polygon_fan(6).unwrap();
        let p = presentation_from_qp(&quiver_from_triangulation(&fan)).unwrap();
        let report = verify_sound(&p, &TwistFrame::standard(3).braid_twists()).unwrap();
        assert!(report.passed());
        assert!(verify_sound(&p, &artin_generators(3)).unwrap().passed());

        let g = ExchangeGraph::enumerate(&fan, Radius::Full, DEFAULT_BUDGET).unwrap();
        let mut saw_case3 = false;
        for v in 0..g.vertex_count() {
            let r = local_twist_relation_report(&g, v).unwrap();
            assert!(r.passed(), "vertex {v}: {:?}", r.failures().collect::<Vec<_>>());
            saw_case3 |= r.checks.iter().any(|c| c.relation.case == 3);
        }
        assert!(saw_case3);
    }

    #[test]
    fn case_three_needs_the_inverse_convention() {
        // at the inner triangle, frame entries themselves fail case 3
        let fan = polygon_fan(6).unwrap();
        let g = ExchangeGraph::enumerate(&fan, Radius::Full, DEFAULT_BUDGET).unwrap();
        let frames = tree_frames(&g, TwistFrame::standard(3)).unwrap();
        let inner = (0..g.vertex_count())
            .find(|&v| !quiver_from_triangulation(&g.vertex(v).triangulation).potential.is_empty())
            .unwrap();
        let p = presentation_from_qp(&quiver_from_triangulation(&g.vertex(inner).triangulation)).unwrap();
        let raw: Vec<GarsideNF> = frames[inner].entries().to_vec();
        assert!(!verify_sound(&p, &raw).unwrap().passed());
        assert!(verify_sound(&p, &frames[inner].braid_twists()).unwrap().passed());
    }

    #[test]
    fn figure_patterns() {
        // a=1, b=2, c=3, e=4, f=5
        let q4 = QuiverWithPotential::from_arrows(3, &[(3, 1), (1, 2), (2, 3), (2, 3)], &[[1, 2, 3]]).unwrap();
        assert!(presentation_from_qp(&q4).unwrap().cases().contains(&4));

        let five = [(3, 1), (1, 2), (3, 4), (4, 2), (2, 3), (2, 3)];
        let q5 = QuiverWithPotential::from_arrows(4, &five, &[[1, 2, 3], [4, 2, 3]]).unwrap();
        let p5 = presentation_from_qp(&q5).unwrap();
        assert!(p5.relations.contains(&crel(5, w(&[-4, -1, 3, 1, 4]), w(&[2]))));
        // both potential terms on the same b -> c arrow: no case 5
        let same = QuiverWithPotential {
            potential: q5.potential.iter().map(|t| { let mut t = t.clone(); if let Some(k) = (0..3).find(|&k| t.cycle[k] == ArcId(2)) { t.arrows[k] = 4; } t }).collect(),
            ..q5.clone()
        };
        assert!(!presentation_from_qp(&same).unwrap().cases().contains(&5));

        let mut six = five.to_vec();
        six.push((1, 4));
        let q6 = QuiverWithPotential::from_arrows(4, &six, &[[1, 2, 3], [4, 2, 3]]).unwrap();
        let p6 = presentation_from_qp(&q6).unwrap();
        assert!(p6.relations.contains(&brel(6, w(&[-4, -1, 3, 1, 4]), w(&[2]))));
        assert!(p6.relations.contains(&brel(6, w(&[-1, -4, 3, 4, 1]), w(&[2]))));
        assert!(!p6.cases().contains(&7));

        let mut seven = six.clone();
        seven.extend([(5, 1), (4, 5)]);
        let q7 = QuiverWithPotential::from_arrows(5, &seven, &[[1, 2, 3], [4, 2, 3], [1, 4, 5]]).unwrap();
        let p7 = presentation_from_qp(&q7).unwrap();
        assert!(p7.relations.contains(&crel(7, w(&[4]), w(&[-3, -2, -1, 5, 1, 2, 3]))));
    }

    #[test]
    fn pentagon_profiles_agree() {
        let g = ExchangeGraph::enumerate(&polygon_fan(5).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        let profile = |v| {
            let r = local_twist_relation_report(&g, v).unwrap();
            r.checks.iter().map(|c| (c.relation.case, c.holds)).collect::<Vec<_>>()
        };
        assert_eq!(profile(0), vec![(2, true)]);
        for v in 1..g.vertex_count() {
            assert_eq!(profile(v), profile(0));
        }
        let annulus = ExchangeGraph::enumerate(&crate::surface::annulus(1, 1).unwrap(), Radius::Bounded(1), 100).unwrap();
        assert!(matches!(local_twist_relation_report(&annulus, 0), Err(Error::OracleUnavailable(_))));
    }

    #[test]
    fn rejects_triple_arrows() {
        let q = QuiverWithPotential::from_arrows(2, &[(1, 2), (1, 2), (1, 2)], &[]).unwrap();
        assert!(matches!(presentation_from_qp(&q), Err(Error::UnsupportedPattern(_))));
    }

    #[test]
    fn relabel_equivariance() {
        let q = QuiverWithPotential::from_arrows(3, &[(1, 2), (2, 3), (3, 1)], &[[1, 2, 3]]).unwrap();
        let p = presentation_from_qp(&q).unwrap();
        assert_eq!(p.relabel(&[1, 2, 0]).relabel(&[2, 0, 1]), p.relabel(&[0, 1, 2]));
    }
}
