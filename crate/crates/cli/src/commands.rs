//! One function per sub-command.

use std::collections::BTreeMap;

use flipgroupoid::braid::{normal_form, BraidWord};
use flipgroupoid::cover::{build_cover_ball, disc_frame, FiberReport};
use flipgroupoid::exchange::{
    homology_h1, relation_closure_check, to_dot, ClosureReport, ExchangeGraph, Radius,
};
use flipgroupoid::presentation::{presentation_from_qp, verify_sound, PresentationRelation, SoundnessReport};
use flipgroupoid::surface::{quiver_from_triangulation, ArcId, DualGraph, MarkedSurface, PairClass, Triangulation};
use serde::Serialize;

use crate::config::{BraidCmd, CoverCmd, EnumerateCmd, ExportCmd, Format, GraphInput, PresentationCmd, SurfaceCmd};
use crate::report::{read, CliError, Outcome};

#[derive(Serialize)]
struct SurfaceReport {
    surface: MarkedSurface,
    arc_count: usize,
    triangle_count: usize,
    boundary_segments: usize,
    euler_characteristic: i64,
    triangulation: Triangulation,
    exchange_matrix: Vec<Vec<i64>>,
    potential: Vec<[ArcId; 3]>,
    /// `[a, b, shared triangles]` for each pair `a < b` sharing one.
    adjacent_pairs: Vec<(ArcId, ArcId, usize)>,
    dual_graph: DualGraph,
}

pub fn surface(cmd: &SurfaceCmd) -> Result<Outcome, CliError> {
    let t = cmd.surface.resolve()?;
    let q = quiver_from_triangulation(&t);
    let mut adjacent_pairs = Vec::new();
    for a in t.arcs() {
        for b in t.arcs().filter(|&b| b > a) {
            let shared = match t.classify_pair(a, b)? {
                PairClass::Disjoint => continue,
                PairClass::OneSharedTriangle => 1,
                PairClass::TwoSharedTriangles => 2,
            };
            adjacent_pairs.push((a, b, shared));
        }
    }
    let report = SurfaceReport {
        surface: t.surface().clone(),
        arc_count: t.arc_count(),
        triangle_count: t.triangle_count(),
        boundary_segments: t.boundary_segment_count(),
        euler_characteristic: t.euler_characteristic(),
        exchange_matrix: q.b.to_rows(),
        potential: q.potential.iter().map(|term| term.cycle).collect(),
        adjacent_pairs,
        dual_graph: t.dual_graph(),
        triangulation: t,
    };
    Ok(Outcome::json(&report, true))
}

fn radius(r: Option<usize>) -> Radius {
    r.map_or(Radius::Full, Radius::Bounded)
}

pub fn enumerate(cmd: &EnumerateCmd, budget: usize) -> Result<Outcome, CliError> {
    let g = ExchangeGraph::enumerate(&cmd.surface.resolve()?, radius(cmd.radius), budget)?;
    Ok(render(&g, cmd.format))
}

fn render(g: &ExchangeGraph, format: Format) -> Outcome {
    let mut artifact = match format {
        Format::Json => g.to_json(),
        Format::Dot => to_dot(g),
    };
    if !artifact.ends_with('\n') {
        artifact.push('\n');
    }
    Outcome { artifact, passed: true }
}

fn load_graph(input: &GraphInput, budget: usize) -> Result<ExchangeGraph, CliError> {
    let has_surface = input.surface.polygon.is_some()
        || input.surface.annulus.is_some()
        || input.surface.genus.is_some()
        || input.surface.triangulation.is_some();
    match (&input.graph, has_surface) {
        (Some(_), true) => Err(CliError::Usage {
            flag: "GRAPH".into(),
            message: "give a graph file or a surface, not both".into(),
        }),
        (Some(path), false) => Ok(ExchangeGraph::from_json(&read(path)?)?),
        (None, _) => Ok(ExchangeGraph::enumerate(&input.surface.resolve()?, radius(input.radius), budget)?),
    }
}

fn require_complete(g: &ExchangeGraph, allow: bool) -> Result<(), CliError> {
    if g.is_complete() || allow {
        Ok(())
    } else {
        Err(CliError::Usage {
            flag: "--allow-incomplete".into(),
            message: format!("graph is truncated ({} vertices); pass --allow-incomplete to check it anyway", g.vertex_count()),
        })
    }
}

#[derive(Serialize)]
struct RelationsReport {
    passed: bool,
    complete: bool,
    vertex_count: usize,
    edge_count: usize,
    closure: ClosureReport,
}

pub fn relations(input: &GraphInput, budget: usize) -> Result<Outcome, CliError> {
    let g = load_graph(input, budget)?;
    require_complete(&g, input.allow_incomplete)?;
    let closure = relation_closure_check(&g);
    let passed = closure.passed();
    let report = RelationsReport {
        passed,
        complete: g.is_complete(),
        vertex_count: g.vertex_count(),
        edge_count: g.edge_count(),
        closure,
    };
    Ok(Outcome::json(&report, passed))
}

pub fn homology(input: &GraphInput, budget: usize) -> Result<Outcome, CliError> {
    let g = load_graph(input, budget)?;
    let h = homology_h1(&g)?;
    #[derive(Serialize)]
    struct Report<'a> {
        trivial: bool,
        homology: &'a flipgroupoid::exchange::Homology,
    }
    let trivial = h.is_trivial();
    Ok(Outcome::json(&Report { trivial, homology: &h }, trivial))
}

#[derive(Serialize)]
struct PresentationReport {
    generators: Vec<ArcId>,
    relations: Vec<RelationText>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<SoundnessReport>,
}

#[derive(Serialize)]
struct RelationText {
    case: u8,
    left: String,
    right: String,
}

impl From<&PresentationRelation> for RelationText {
    fn from(r: &PresentationRelation) -> Self {
        RelationText { case: r.case, left: r.left.to_string(), right: r.right.to_string() }
    }
}

pub fn presentation(cmd: &PresentationCmd) -> Result<Outcome, CliError> {
    let t = cmd.surface.resolve()?;
    let p = presentation_from_qp(&quiver_from_triangulation(&t))?;
    let verification = if cmd.verify {
        let frame = disc_frame(&t)?;
        Some(verify_sound(&p, &frame.braid_twists())?)
    } else {
        None
    };
    let passed = verification.as_ref().is_none_or(|r| r.passed());
    let report = PresentationReport {
        generators: p.generators.clone(),
        relations: p.relations.iter().map(RelationText::from).collect(),
        verification,
    };
    Ok(Outcome::json(&report, passed))
}

#[derive(Serialize)]
struct CoverReport {
    passed: bool,
    radius: usize,
    shadow_vertices: usize,
    shadow_complete: bool,
    nodes: usize,
    classes: usize,
    interior_classes: usize,
    rewrites: usize,
    /// `"out,in"` forward degrees of interior classes, with counts.
    interior_degrees: BTreeMap<String, usize>,
    frame_conflicts: usize,
    image_conflicts: usize,
    double_flip_failures: usize,
    fiber: FiberReport,
}

pub fn cover(cmd: &CoverCmd, budget: usize) -> Result<Outcome, CliError> {
    let t = cmd.surface.resolve()?;
    let ball = build_cover_ball(&t, cmd.radius, budget)?;
    if cmd.fiber >= ball.graph().vertex_count() {
        return Err(CliError::Usage {
            flag: "--fiber".into(),
            message: format!("vertex {} out of range, graph has {}", cmd.fiber, ball.graph().vertex_count()),
        });
    }
    let classes = ball.classes();
    let interior: Vec<usize> = classes.iter().copied().filter(|&c| ball.is_interior(c)).collect();
    let mut interior_degrees = BTreeMap::new();
    for &c in &interior {
        let (o, i) = ball.forward_degrees(c);
        *interior_degrees.entry(format!("{o},{i}")).or_insert(0) += 1;
    }
    let fiber = ball.fiber_report(cmd.fiber);
    let frame_conflicts = ball.frame_conflicts().len();
    let image_conflicts = ball.image_conflicts().len();
    let double_flip_failures = ball.double_flip_failures().len();
    let passed = frame_conflicts == 0
        && image_conflicts == 0
        && double_flip_failures == 0
        && fiber.images_distinct != Some(false);
    let report = CoverReport {
        passed,
        radius: ball.radius(),
        shadow_vertices: ball.graph().vertex_count(),
        shadow_complete: ball.graph().is_complete(),
        nodes: ball.nodes().len(),
        classes: classes.len(),
        interior_classes: interior.len(),
        rewrites: ball.rewrites(),
        interior_degrees,
        frame_conflicts,
        image_conflicts,
        double_flip_failures,
        fiber,
    };
    Ok(Outcome::json(&report, passed))
}

pub fn braid(cmd: &BraidCmd) -> Result<Outcome, CliError> {
    match cmd {
        BraidCmd::Nf { word, strands } => {
            let nf = normal_form(&BraidWord::parse(*strands, word)?);
            Ok(Outcome { artifact: format!("{nf}\n"), passed: true })
        }
        BraidCmd::Eq { left, right, strands } => {
            let l = normal_form(&BraidWord::parse(*strands, left)?);
            let r = normal_form(&BraidWord::parse(*strands, right)?);
            let equal = l == r;
            let artifact = if equal { "Equal\n".to_string() } else { format!("Distinct\n{l}\n{r}\n") };
            Ok(Outcome { artifact, passed: equal })
        }
    }
}

pub fn export(cmd: &ExportCmd) -> Result<Outcome, CliError> {
    let g = ExchangeGraph::from_json(&read(&cmd.graph)?)?;
    Ok(render(&g, cmd.format))
}
