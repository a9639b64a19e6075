use flipgroupoid::braid::{normal_form, BraidWord};
use flipgroupoid::cover::{tree_frames, Connection, Direction, TwistFrame};
use flipgroupoid::exchange::{ExchangeGraph, Radius, DEFAULT_BUDGET};
use flipgroupoid::group::{FreeWord, Group};
use flipgroupoid::presentation::{local_twist_relation_report, presentation_from_qp, verify_sound};
use flipgroupoid::surface::{annulus, polygon_fan, quiver_from_triangulation, ArcId};
use proptest::prelude::*;

/// Artin action of a braid on the free group `F_k`, images of `x_1..x_k`.
fn artin_action(strands: usize, letters: &[i32]) -> Vec<Vec<i32>> {
    fn reduce(w: Vec<i32>) -> Vec<i32> {
        let mut out: Vec<i32> = Vec::new();
        for l in w {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        out
    }
    fn inv(w: &[i32]) -> Vec<i32> {
        w.iter().rev().map(|l| -l).collect()
    }
    fn subst(w: &[i32], images: &[Vec<i32>]) -> Vec<i32> {
        let mut out = Vec::new();
        for &l in w {
            let im = &images[l.unsigned_abs() as usize - 1];
            out.extend(if l > 0 { im.clone() } else { inv(im) });
        }
        reduce(out)
    }
    let mut images: Vec<Vec<i32>> = (1..=strands as i32).map(|i| vec![i]).collect();
    for &l in letters {
        let i = l.unsigned_abs() as usize;
        let (a, b) = (i as i32, i as i32 + 1);
        let mut gen: Vec<Vec<i32>> = (1..=strands as i32).map(|j| vec![j]).collect();
        if l > 0 {
            gen[i - 1] = vec![a, b, -a];
            gen[i] = vec![a];
        } else {
            gen[i - 1] = vec![b];
            gen[i] = vec![-b, a, b];
        }
        // act by the generator after the accumulated braid
        images = images.iter().map(|w| subst(w, &gen)).collect();
    }
    images
}

fn word(k: usize, max: usize) -> impl Strategy<Value = Vec<i32>> {
    prop::collection::vec((1..k as i32, any::<bool>()).prop_map(|(i, s)| if s { i } else { -i }), 0..max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn normal_form_agrees_with_artin_action(a in word(4, 10), b in word(4, 10)) {
        let (wa, wb) = (BraidWord::new(4, a.clone()).unwrap(), BraidWord::new(4, b.clone()).unwrap());
        let same_nf = normal_form(&wa) == normal_form(&wb);
        prop_assert_eq!(same_nf, artin_action(4, &a) == artin_action(4, &b));
    }

    #[test]
    fn inserted_relations_do_not_change_normal_form(w in word(5, 20), at in 0usize..20, i in 1i32..3) {
        let mut v = w.clone();
        let at = at.min(v.len());
        let rel = [i, i + 1, i, -(i + 1), -i, -(i + 1)];
        v.splice(at..at, rel);
        prop_assert_eq!(normal_form(&BraidWord::new(5, v).unwrap()), normal_form(&BraidWord::new(5, w).unwrap()));
    }

    /// Transport around a closed walk conjugates the frame by the inverse of
    /// the connection image of the walk.
    #[test]
    fn loops_act_by_conjugation(m in 5u32..7, steps in prop::collection::vec(0usize..4, 1..14)) {
        let g = ExchangeGraph::enumerate(&polygon_fan(m).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        let frames = tree_frames(&g, TwistFrame::standard(m as usize - 3)).unwrap();
        let (conn, _) = Connection::solve(&g, &frames).unwrap();
        let n = g.rank();
        let mut at = 0;
        let mut f = frames[0].clone();
        let mut path = Vec::new();
        for s in steps {
            let a = ArcId::from_index(s % n);
            let nb = g.neighbor(at, a).unwrap();
            f = f.transport_edge(&g.vertex(at).seed.b, a, Direction::Forward, nb).unwrap();
            path.push((a, Direction::Forward));
            at = nb.target;
        }
        // return along the tree
        let tree = g.bfs_tree();
        while let Some((p, a)) = tree[at] {
            let nb = g.neighbor(p, a).unwrap();
            let back = nb.map(a);
            let there = g.neighbor(at, back).unwrap();
            f = f.transport_edge(&g.vertex(at).seed.b, back, Direction::Backward, there).unwrap();
            path.push((back, Direction::Backward));
            at = p;
        }
        let (end, gamma) = conn.path_image(&g, 0, &path).unwrap();
        prop_assert_eq!(end, 0);
        for l in 0..n {
            prop_assert_eq!(&f.entries()[l], &frames[0].entries()[l].conj(&gamma.inv()));
        }
    }
}

#[test]
fn presentations_sound_on_small_polygons() {
    for m in 4..=7u32 {
        let g = ExchangeGraph::enumerate(&polygon_fan(m).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        for v in 0..g.vertex_count() {
            let r = local_twist_relation_report(&g, v).unwrap();
            assert!(r.passed(), "m={m} v={v}");
        }
    }
}

#[test]
fn annulus_reaches_double_arrow_cases() {
    let g = ExchangeGraph::enumerate(&annulus(2, 2).unwrap(), Radius::Bounded(3), DEFAULT_BUDGET).unwrap();
    let mut seen = std::collections::BTreeSet::new();
    for v in g.vertices() {
        let p = presentation_from_qp(&quiver_from_triangulation(&v.triangulation)).unwrap();
        seen.extend(p.cases());
        // the free group on the arcs does not satisfy them
        let free: Vec<FreeWord> = (1..=g.rank() as i32).map(FreeWord::generator).collect();
        if !p.relations.is_empty() {
            assert!(!verify_sound(&p, &free).unwrap().passed());
        }
    }
    assert_eq!(seen, (1..=5).collect());
}

#[test]
fn relation_sides_transport_to_the_same_frame() {
    for m in 5..=7u32 {
        let g = ExchangeGraph::enumerate(&polygon_fan(m).unwrap(), Radius::Full, DEFAULT_BUDGET).unwrap();
        let frames = tree_frames(&g, TwistFrame::standard(m as usize - 3)).unwrap();
        for v in 0..g.vertex_count() {
            for r in g.relation_instances(v) {
                let l = flipgroupoid::cover::transport_path(&g, v, &frames[v], &r.left).unwrap();
                let rt = flipgroupoid::cover::transport_path(&g, v, &frames[v], &r.right).unwrap();
                assert_eq!(l, rt, "m={m} v={v} {:?}", r.kind);
            }
        }
    }
}
