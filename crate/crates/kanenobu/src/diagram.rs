//! Combinatorial planar knot diagrams.
//!
//! A diagram is a 4-valent map: crossings with four ports in counterclockwise
//! order (0=NE, 1=NW, 2=SW, 3=SE) joined by arcs, plus the choice of over
//! strand at each crossing (the axis through ports {0,2} or {1,3}). Faces,
//! the chessboard coloring, crossing signs, orientations and writhe are all
//! derived from this data; no coordinates are stored. The distinguished
//! unbounded face is remembered as a corner marker.
//!
//! Corners are indexed like ports: corner k sits between ports k and k+1,
//! so 0=N, 1=W, 2=S, 3=E.

use serde::Serialize;

use crate::braid::BraidWord;
use crate::error::{Error, Result};
use crate::whitegraph::{SignedWhiteGraph, WEdge, UNBOUNDED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Axis {
    /// Over strand runs through ports 0 and 2 (the NE–SW diagonal).
    A02,
    /// Over strand runs through ports 1 and 3 (the NW–SE diagonal).
    A13,
}

impl Axis {
    pub fn flip(self) -> Axis {
        match self {
            Axis::A02 => Axis::A13,
            Axis::A13 => Axis::A02,
        }
    }

    fn contains_port(self, port: u8) -> bool {
        match self {
            Axis::A02 => port % 2 == 0,
            Axis::A13 => port % 2 == 1,
        }
    }
}

/// In a braid or twist region drawn with horizontal strands, a positive
/// crossing is the one whose lower-left strand passes over: it occupies the
/// NE–SW diagonal.
const POSITIVE_OVER: Axis = Axis::A02;

pub type Port = (usize, u8);

#[derive(Debug, Clone)]
pub struct Diagram {
    over: Vec<Axis>,
    /// arc id attached at each port of each crossing
    port_arc: Vec<[usize; 4]>,
    /// the two port endpoints of each arc
    arcs: Vec<(Port, Port)>,
    /// corner marking the unbounded face
    outer: Port,
}

impl Diagram {
    pub fn crossing_count(&self) -> usize {
        self.over.len()
    }

    pub fn over_axis(&self, c: usize) -> Axis {
        self.over[c]
    }

    pub fn mirror(&self) -> Diagram {
        Diagram {
            over: self.over.iter().map(|a| a.flip()).collect(),
            port_arc: self.port_arc.clone(),
            arcs: self.arcs.clone(),
            outer: self.outer,
        }
    }

    pub fn arcs(&self) -> &[(Port, Port)] {
        &self.arcs
    }

    fn other_end(&self, arc: usize, from: Port) -> Port {
        let (a, b) = self.arcs[arc];
        if a == from {
            b
        } else {
            a
        }
    }

    /// Face walk: the face containing corner (c, k) continues, through the
    /// arc at port k+1, at the arrival corner of the far end.
    fn next_corner(&self, (c, k): Port) -> Port {
        let exit = (k + 1) % 4;
        let arc = self.port_arc[c][exit as usize];
        self.other_end(arc, (c, exit))
    }

    /// Groups the 4·C corners into faces. Returns (face id per corner,
    /// number of faces), with corners identified by 4c+k.
    fn trace_faces(&self) -> (Vec<usize>, usize) {
        let n = self.crossing_count();
        let mut face = vec![usize::MAX; 4 * n];
        let mut count = 0;
        for start in 0..4 * n {
            if face[start] != usize::MAX {
                continue;
            }
            let mut cur = (start / 4, (start % 4) as u8);
            loop {
                let idx = 4 * cur.0 + cur.1 as usize;
                if face[idx] != usize::MAX {
                    break;
                }
                face[idx] = count;
                cur = self.next_corner(cur);
            }
            count += 1;
        }
        (face, count)
    }

    /// Faces, colors, crossing signs and orientations bundled together.
    pub fn analyze(&self) -> Result<DiagramAnalysis> {
        let n = self.crossing_count();
        if n == 0 {
            return Err(Error::InvalidParams("analysis needs at least one crossing".into()));
        }
        let (face_of_corner, face_count) = self.trace_faces();
        // Euler characteristic check: V − E + F = 2 on the sphere
        if face_count != n + 2 {
            return Err(Error::ShapeMismatch(format!(
                "face count {} does not match crossings {} (non-planar wiring)",
                face_count, n
            )));
        }

        // chessboard coloring by BFS from the unbounded face
        let outer_face = face_of_corner[4 * self.outer.0 + self.outer.1 as usize];
        let mut color = vec![None::<bool>; face_count]; // true = white
        color[outer_face] = Some(true);
        let mut queue = std::collections::VecDeque::from([outer_face]);
        let mut adj = vec![Vec::new(); face_count];
        for (a, &((c1, k1), _)) in self.arcs.iter().enumerate() {
            let _ = a;
            let f1 = face_of_corner[4 * c1 + k1 as usize];
            let f2 = face_of_corner[4 * c1 + ((k1 + 3) % 4) as usize];
            adj[f1].push(f2);
            adj[f2].push(f1);
        }
        while let Some(f) = queue.pop_front() {
            let c = color[f].unwrap();
            for &g in &adj[f] {
                match color[g] {
                    None => {
                        color[g] = Some(!c);
                        queue.push_back(g);
                    }
                    Some(cg) => {
                        if cg == c {
                            return Err(Error::ShapeMismatch(
                                "diagram is not chessboard colorable".into(),
                            ));
                        }
                    }
                }
            }
        }
        if color.iter().any(|c| c.is_none()) {
            return Err(Error::ShapeMismatch("diagram is disconnected".into()));
        }
        let white: Vec<bool> = color.into_iter().map(|c| c.unwrap()).collect();

        // signs: +1 when the white corner pair and the over axis have the
        // same parity
        let mut sign = Vec::with_capacity(n);
        for c in 0..n {
            let f0_white = white[face_of_corner[4 * c]];
            let f2_white = white[face_of_corner[4 * c + 2]];
            if f0_white != f2_white {
                return Err(Error::ShapeMismatch("opposite corners disagree in color".into()));
            }
            let whites_even = f0_white;
            let over_even = self.over[c] == Axis::A02;
            sign.push(if whites_even == over_even { 1i8 } else { -1 });
        }

        // orient the single component
        let orientation = self.orient()?;

        Ok(DiagramAnalysis {
            face_of_corner,
            face_count,
            white,
            outer_face,
            sign,
            strand_in_ports: orientation,
        })
    }

    /// Walks the knot and records, per crossing, the two entry ports in
    /// visit order. Errors when the diagram has several components.
    fn orient(&self) -> Result<Vec<[u8; 2]>> {
        let n = self.crossing_count();
        let mut in_ports: Vec<Vec<u8>> = vec![Vec::new(); n];
        let mut visited_arcs = vec![false; self.arcs.len()];
        let (start_arc, start_from) = (0, self.arcs[0].0);
        let mut arc = start_arc;
        let mut to = self.other_end(arc, start_from);
        loop {
            visited_arcs[arc] = true;
            let (c, k) = to;
            in_ports[c].push(k);
            let exit = (k + 2) % 4;
            arc = self.port_arc[c][exit as usize];
            to = self.other_end(arc, (c, exit));
            if arc == start_arc && to == self.other_end(start_arc, start_from) {
                break;
            }
        }
        if visited_arcs.iter().any(|v| !v) {
            let missing = visited_arcs.iter().filter(|v| !**v).count();
            return Err(Error::NotAKnot { components: 1 + missing.div_ceil(2) });
        }
        let mut out = Vec::with_capacity(n);
        for (c, ports) in in_ports.iter().enumerate() {
            if ports.len() != 2 {
                return Err(Error::ShapeMismatch(format!(
                    "crossing {} visited {} times",
                    c,
                    ports.len()
                )));
            }
            out.push([ports[0], ports[1]]);
        }
        Ok(out)
    }

    pub fn writhe(&self) -> Result<i64> {
        let a = self.analyze()?;
        Ok((0..self.crossing_count()).map(|c| a.writhe_sign(self, c)).sum())
    }

    /// Signed white graph of the chessboard coloring, vertices canonically
    /// ordered by first appearance along the face walk.
    pub fn white_graph(&self) -> Result<SignedWhiteGraph> {
        let a = self.analyze()?;
        let n = self.crossing_count();

        // bounded white faces get vertex ids 1..=w
        let mut vertex_of_face = vec![None::<usize>; a.face_count];
        let mut w = 0;
        for f in 0..a.face_count {
            if a.white[f] && f != a.outer_face {
                w += 1;
                vertex_of_face[f] = Some(w);
            }
        }
        vertex_of_face[a.outer_face] = Some(UNBOUNDED);

        // one edge per crossing between its two white corners
        let mut edges = Vec::with_capacity(n);
        for c in 0..n {
            let f0 = a.face_of_corner[4 * c];
            let (ca, cb) = if a.white[f0] { (0, 2) } else { (1, 3) };
            let fa = a.face_of_corner[4 * c + ca];
            let fb = a.face_of_corner[4 * c + cb];
            let va = vertex_of_face[fa].expect("white face has a vertex id");
            let vb = vertex_of_face[fb].expect("white face has a vertex id");
            edges.push(WEdge { a: va, b: vb, sign: a.sign[c] });
        }

        // rotations: the face walk visits the corners of a bounded face in
        // counterclockwise order
        let mut rotations = vec![Vec::new(); w];
        let mut corner_seen = vec![false; 4 * n];
        for start in 0..4 * n {
            if corner_seen[start] {
                continue;
            }
            let f = a.face_of_corner[start];
            let Some(v) = vertex_of_face[f].filter(|&v| v != UNBOUNDED && a.white[f]) else {
                // mark the whole orbit visited
                let mut cur = (start / 4, (start % 4) as u8);
                loop {
                    let idx = 4 * cur.0 + cur.1 as usize;
                    if corner_seen[idx] {
                        break;
                    }
                    corner_seen[idx] = true;
                    cur = self.next_corner(cur);
                }
                continue;
            };
            let mut orbit = Vec::new();
            let mut cur = (start / 4, (start % 4) as u8);
            loop {
                let idx = 4 * cur.0 + cur.1 as usize;
                if corner_seen[idx] {
                    break;
                }
                corner_seen[idx] = true;
                orbit.push(cur.0); // the crossing = the edge at this corner
                cur = self.next_corner(cur);
            }
            rotations[v - 1] = orbit;
        }

        SignedWhiteGraph::new(w, edges, rotations)
    }

    /// Export shape: crossings with signs and region 4-tuples, regions with
    /// colors and the unbounded flag.
    pub fn planar_diagram(&self) -> Result<PlanarDiagram> {
        let a = self.analyze()?;
        let crossings = (0..self.crossing_count())
            .map(|c| PdCrossing {
                sign: a.sign[c],
                regions: [
                    a.face_of_corner[4 * c],
                    a.face_of_corner[4 * c + 1],
                    a.face_of_corner[4 * c + 2],
                    a.face_of_corner[4 * c + 3],
                ],
                arcs: self.port_arc[c],
                over_axis: self.over[c],
            })
            .collect();
        let regions = (0..a.face_count)
            .map(|f| PdRegion {
                id: f,
                color: if a.white[f] { "white" } else { "black" },
                unbounded: f == a.outer_face,
            })
            .collect();
        Ok(PlanarDiagram { crossings, regions })
    }
}

/// Derived facts about a diagram, shared by the invariant computations.
pub struct DiagramAnalysis {
    pub face_of_corner: Vec<usize>,
    pub face_count: usize,
    /// face id → is white
    pub white: Vec<bool>,
    pub outer_face: usize,
    /// crossing → chessboard sign
    pub sign: Vec<i8>,
    /// crossing → the two strand entry ports in knot-walk order
    pub strand_in_ports: Vec<[u8; 2]>,
}

impl DiagramAnalysis {
    /// Writhe sign: +1 when the over strand exits one counterclockwise step
    /// after the under strand.
    pub fn writhe_sign(&self, d: &Diagram, c: usize) -> i64 {
        let [i1, i2] = self.strand_in_ports[c];
        let (o1, o2) = ((i1 + 2) % 4, (i2 + 2) % 4);
        let (over_out, under_out) = if d.over[c].contains_port(o1) {
            (o1, o2)
        } else {
            (o2, o1)
        };
        if (under_out + 1) % 4 == over_out {
            1
        } else {
            -1
        }
    }

    /// A crossing is of the second Gordon–Litherland type when the corner
    /// between the two outgoing strand directions is black.
    pub fn is_type_ii(&self, c: usize) -> bool {
        let [i1, i2] = self.strand_in_ports[c];
        let (o1, o2) = ((i1 + 2) % 4, (i2 + 2) % 4);
        let corner = if (o1 + 1) % 4 == o2 { o1 } else { o2 };
        let f = self.face_of_corner[4 * c + corner as usize];
        !self.white[f]
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PdCrossing {
    pub sign: i8,
    /// region ids at corners N, W, S, E (counterclockwise)
    pub regions: [usize; 4],
    /// arc ids at ports NE, NW, SW, SE
    pub arcs: [usize; 4],
    pub over_axis: Axis,
}

#[derive(Debug, Clone, Serialize)]
pub struct PdRegion {
    pub id: usize,
    pub color: &'static str,
    pub unbounded: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlanarDiagram {
    pub crossings: Vec<PdCrossing>,
    pub regions: Vec<PdRegion>,
}

impl PlanarDiagram {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "schema_version": 1,
            "crossings": self.crossings,
            "regions": self.regions,
        })
    }
}

// ---------------------------------------------------------------------------
// construction

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum End {
    Port(usize, u8),
    Handle(usize),
}

/// Assembles crossings and wire segments, then resolves handle chains into
/// arcs. Handles are pass-through junctions appearing in exactly two
/// segments; ports appear in exactly one.
struct Builder {
    over: Vec<Axis>,
    segments: Vec<(End, End)>,
    handles: usize,
}

impl Builder {
    fn new() -> Self {
        Builder { over: Vec::new(), segments: Vec::new(), handles: 0 }
    }

    fn handle(&mut self) -> End {
        self.handles += 1;
        End::Handle(self.handles - 1)
    }

    fn crossing(&mut self, over: Axis) -> usize {
        self.over.push(over);
        self.over.len() - 1
    }

    fn seg(&mut self, a: End, b: End) {
        self.segments.push((a, b));
    }

    /// A horizontal braid-like block. `rows` open wire rows run west to
    /// east; each letter (i, ε) puts a crossing on positions (i, i+1),
    /// where position 1 is the bottom row. Returns (crossing ids in word
    /// order, west handles per row, east ends per row), rows indexed from
    /// the top.
    fn block(&mut self, rows: usize, letters: &[(usize, i8)]) -> BlockEnds {
        let west: Vec<End> = (0..rows).map(|_| self.handle()).collect();
        let mut cur = west.clone();
        let mut ids = Vec::with_capacity(letters.len());
        for &(i, s) in letters {
            let upper = rows - 1 - i; // position i+1
            let lower = rows - i; // position i
            let over = if s > 0 { POSITIVE_OVER } else { POSITIVE_OVER.flip() };
            let c = self.crossing(over);
            ids.push(c);
            self.seg(cur[upper], End::Port(c, 1)); // NW
            self.seg(cur[lower], End::Port(c, 2)); // SW
            cur[upper] = End::Port(c, 0); // NE
            cur[lower] = End::Port(c, 3); // SE
        }
        BlockEnds { crossings: ids, west, east: cur }
    }

    /// Resolves segments into arcs. Returns (arcs, free loop count).
    fn resolve(self) -> Result<(Vec<Axis>, Vec<(Port, Port)>, usize)> {
        let mut by_handle: Vec<Vec<usize>> = vec![Vec::new(); self.handles];
        for (si, &(a, b)) in self.segments.iter().enumerate() {
            for e in [a, b] {
                if let End::Handle(h) = e {
                    by_handle[h].push(si);
                }
            }
        }
        for (h, segs) in by_handle.iter().enumerate() {
            if segs.len() != 2 {
                return Err(Error::ShapeMismatch(format!(
                    "handle {} used {} times",
                    h,
                    segs.len()
                )));
            }
        }

        let mut seg_used = vec![false; self.segments.len()];
        let mut arcs = Vec::new();

        // chase each port chain to the opposite port
        for start_si in 0..self.segments.len() {
            if seg_used[start_si] {
                continue;
            }
            let (a, b) = self.segments[start_si];
            let start_port = match (a, b) {
                (End::Port(c, k), _) => Some(((c, k), b)),
                (_, End::Port(c, k)) => Some(((c, k), a)),
                _ => None,
            };
            let Some((from, mut cur)) = start_port else { continue };
            seg_used[start_si] = true;
            let mut cur_seg = start_si;
            let to = loop {
                match cur {
                    End::Port(c, k) => break (c, k),
                    End::Handle(h) => {
                        let next_seg = by_handle[h]
                            .iter()
                            .copied()
                            .find(|&s| s != cur_seg)
                            .expect("handle has two segments");
                        seg_used[next_seg] = true;
                        let (x, y) = self.segments[next_seg];
                        cur = if x == End::Handle(h) { y } else { x };
                        cur_seg = next_seg;
                    }
                }
            };
            arcs.push((from, to));
        }

        // anything left is a crossing-free loop
        let mut free_loops = 0;
        for si in 0..self.segments.len() {
            if seg_used[si] {
                continue;
            }
            free_loops += 1;
            let mut cur_seg = si;
            let (mut cur, _) = self.segments[si];
            loop {
                seg_used[cur_seg] = true;
                let End::Handle(h) = cur else { unreachable!("port in unused chain") };
                let next_seg = by_handle[h].iter().copied().find(|&s| s != cur_seg).unwrap();
                if seg_used[next_seg] {
                    break;
                }
                let (x, y) = self.segments[next_seg];
                cur = if x == End::Handle(h) { y } else { x };
                cur_seg = next_seg;
            }
        }

        Ok((self.over, arcs, free_loops))
    }

    fn finish(self, outer: Port) -> Result<(Diagram, usize)> {
        let n = self.over.len();
        let (over, arcs, free_loops) = self.resolve()?;
        let mut port_arc = vec![[usize::MAX; 4]; n];
        for (ai, &((c1, k1), (c2, k2))) in arcs.iter().enumerate() {
            port_arc[c1][k1 as usize] = ai;
            port_arc[c2][k2 as usize] = ai;
        }
        for (c, ports) in port_arc.iter().enumerate() {
            if ports.iter().any(|&a| a == usize::MAX) {
                return Err(Error::ShapeMismatch(format!("crossing {} has an open port", c)));
            }
        }
        Ok((Diagram { over, port_arc, arcs, outer }, free_loops))
    }
}

struct BlockEnds {
    crossings: Vec<usize>,
    west: Vec<End>,
    east: Vec<End>,
}

impl BlockEnds {
    /// First crossing whose upper row is `row`, if any.
    fn first_on_upper_row(&self, letters: &[(usize, i8)], rows: usize, row: usize) -> Option<usize> {
        letters
            .iter()
            .zip(&self.crossings)
            .find(|(&(i, _), _)| rows - 1 - i == row)
            .map(|(_, &c)| c)
    }

    /// First crossing whose lower row is `row`, if any.
    fn first_on_lower_row(&self, letters: &[(usize, i8)], rows: usize, row: usize) -> Option<usize> {
        letters
            .iter()
            .zip(&self.crossings)
            .find(|(&(i, _), _)| rows - i == row)
            .map(|(_, &c)| c)
    }
}

/// Counts the components of the closed-up template without building faces.
fn component_count(segments_arcs: &[(Port, Port)], crossings: usize, free_loops: usize) -> usize {
    // union ports along arcs and across crossings (port k joins port k+2)
    let mut parent: Vec<usize> = (0..4 * crossings).collect();
    fn find(p: &mut Vec<usize>, i: usize) -> usize {
        if p[i] != i {
            let r = find(p, p[i]);
            p[i] = r;
        }
        p[i]
    }
    let union = |p: &mut Vec<usize>, a: usize, b: usize| {
        let (ra, rb) = (find(p, a), find(p, b));
        if ra != rb {
            p[ra] = rb;
        }
    };
    for &((c1, k1), (c2, k2)) in segments_arcs {
        union(&mut parent, 4 * c1 + k1 as usize, 4 * c2 + k2 as usize);
    }
    for c in 0..crossings {
        union(&mut parent, 4 * c, 4 * c + 2);
        union(&mut parent, 4 * c + 1, 4 * c + 3);
    }
    let mut roots = std::collections::HashSet::new();
    for i in 0..4 * crossings {
        let r = find(&mut parent, i);
        roots.insert(r);
    }
    roots.len() + free_loops
}

/// The closed-up two-box template: `braid` in the bottom box, its rotated
/// inverse in the top box, p half twists joining the left sides and q the
/// right sides, outer closure arcs joining the extreme rows.
pub fn template_diagram(braid: &BraidWord, p: i64, q: i64) -> Result<Diagram> {
    if braid.strands() != 3 {
        return Err(Error::InvalidParams("template needs a 3-strand braid".into()));
    }
    let mut b = Builder::new();

    let bot_word = braid.letters().to_vec();
    let top_word = braid.rotated_inverse().letters().to_vec();
    let bot = b.block(3, &bot_word);
    let top = b.block(3, &top_word);

    // twist bands: two rows, |p| (resp. |q|) crossings, positive count means
    // positive half twists
    let band_letters = |t: i64| -> Vec<(usize, i8)> {
        (0..t.unsigned_abs()).map(|_| (1, if t >= 0 { 1 } else { -1 })).collect()
    };
    let lp = band_letters(p);
    let lq = band_letters(q);
    let left = b.block(2, &lp);
    let right = b.block(2, &lq);

    // outer closure arcs
    b.seg(top.west[0], bot.west[2]);
    b.seg(top.east[0], bot.east[2]);
    // left band: far end carries the middle rows, near end the inner rows
    b.seg(top.west[1], left.west[0]);
    b.seg(bot.west[1], left.west[1]);
    b.seg(top.west[2], left.east[0]);
    b.seg(bot.west[0], left.east[1]);
    // right band, mirrored
    b.seg(top.east[2], right.west[0]);
    b.seg(bot.east[0], right.west[1]);
    b.seg(top.east[1], right.east[0]);
    b.seg(bot.east[1], right.east[1]);

    // unbounded face: north of the top box's top row, or south of the bottom
    // box's bottom row
    let outer = if let Some(c) = top.first_on_upper_row(&top_word, 3, 0) {
        (c, 0u8)
    } else if let Some(c) = bot.first_on_lower_row(&bot_word, 3, 2) {
        (c, 2u8)
    } else {
        // both extreme rows are crossing-free: the outer wire is a split
        // unknot component
        return Err(Error::NotAKnot { components: 2 });
    };

    let (diagram, free_loops) = b.finish(outer)?;
    let comps = component_count(&diagram.arcs, diagram.crossing_count(), free_loops);
    if comps != 1 {
        return Err(Error::NotAKnot { components: comps });
    }
    Ok(diagram)
}

/// The companion knot of a 3-braid: middle and bottom strands capped on both
/// sides, top strand closed around the outside.
pub fn companion_diagram(braid: &BraidWord) -> Result<Diagram> {
    if braid.strands() != 3 {
        return Err(Error::InvalidParams("companion knot needs a 3-strand braid".into()));
    }
    let mut b = Builder::new();
    let word = braid.rotated_inverse().letters().to_vec();
    let block = b.block(3, &word);
    b.seg(block.west[1], block.west[2]);
    b.seg(block.east[1], block.east[2]);
    b.seg(block.west[0], block.east[0]);

    let outer = block
        .first_on_upper_row(&word, 3, 0)
        .map(|c| (c, 0u8))
        .ok_or_else(|| Error::InvalidParams("braid never crosses the closed strand".into()))?;

    let (diagram, free_loops) = b.finish(outer)?;
    let comps = component_count(&diagram.arcs, diagram.crossing_count(), free_loops);
    if comps != 1 {
        return Err(Error::NotAKnot { components: comps });
    }
    Ok(diagram)
}

/// Trace closure of a braid: every row closes around to itself.
pub fn braid_closure(braid: &BraidWord) -> Result<Diagram> {
    let rows = braid.strands();
    let mut b = Builder::new();
    let word = braid.letters().to_vec();
    let block = b.block(rows, &word);
    for r in 0..rows {
        b.seg(block.east[r], block.west[r]);
    }
    let outer = block
        .first_on_upper_row(&word, rows, 0)
        .map(|c| (c, 0u8))
        .ok_or_else(|| Error::InvalidParams("top row has no crossing".into()))?;
    let (diagram, free_loops) = b.finish(outer)?;
    let comps = component_count(&diagram.arcs, diagram.crossing_count(), free_loops);
    if comps != 1 {
        return Err(Error::NotAKnot { components: comps });
    }
    Ok(diagram)
}

/// Diagram of K(n,p,q): the template closed over β_n = σ₁σ₂⁻¹σ₁ⁿ.
pub fn build_kanenobu_diagram(params: &crate::whitegraph::KanenobuParams) -> Diagram {
    template_diagram(&BraidWord::beta_n(params.n), params.p, params.q)
        .expect("the beta_n template always closes to a knot")
}

/// Signed reduced white graph of the companion knot B of β_n, labeled so
/// that the vertex with one unbounded edge comes first.
pub fn bbeta_white_graph(n: u64) -> Result<SignedWhiteGraph> {
    if n < 2 {
        return Err(Error::InvalidParams("n must be at least 2".into()));
    }
    let d = companion_diagram(&BraidWord::beta_n(n))?;
    let g = d.white_graph()?;
    if g.vertex_count != 2 {
        return Err(Error::ShapeMismatch(format!(
            "companion white graph has {} bounded vertices",
            g.vertex_count
        )));
    }
    let unb1 = g.edges.iter().filter(|e| e.touches(1) && e.other(1) == UNBOUNDED).count();
    let map = if unb1 == 1 { vec![0, 1, 2] } else { vec![0, 2, 1] };
    Ok(g.relabel(&map))
}

/// Right-handed trefoil: closure of σ₁³.
pub fn trefoil_right() -> Diagram {
    braid_closure(&BraidWord::new(2, vec![(1, 1), (1, 1), (1, 1)]).unwrap())
        .expect("trefoil closes to a knot")
}

/// Left-handed trefoil: closure of σ₁⁻³.
pub fn trefoil_left() -> Diagram {
    trefoil_right().mirror()
}

/// Figure-eight knot: closure of (σ₁σ₂⁻¹)².
pub fn figure_eight() -> Diagram {
    braid_closure(&BraidWord::new(3, vec![(1, 1), (2, -1), (1, 1), (2, -1)]).unwrap())
        .expect("figure eight closes to a knot")
}

/// Unknot with a single positive kink: closure of σ₁.
pub fn kinked_unknot() -> Diagram {
    braid_closure(&BraidWord::new(2, vec![(1, 1)]).unwrap()).expect("kink closes to a knot")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::whitegraph::{
        canonical_kanenobu_labeling, goeritz_matrix, kanenobu_white_graph, presentation_matrix,
        KanenobuParams,
    };

    #[test]
    fn kink_faces_and_colors() {
        let d = kinked_unknot();
        assert_eq!(d.crossing_count(), 1);
        let a = d.analyze().unwrap();
        assert_eq!(a.face_count, 3);
        assert_eq!(a.white.iter().filter(|&&w| w).count(), 2);
        assert_eq!(d.writhe().unwrap(), 1);
    }

    #[test]
    fn trefoil_writhe_and_signs() {
        let d = trefoil_right();
        assert_eq!(d.writhe().unwrap(), 3);
        let a = d.analyze().unwrap();
        assert_eq!(a.sign, vec![1, 1, 1]);
        assert!((0..3).all(|c| a.is_type_ii(c)));
        assert_eq!(trefoil_left().writhe().unwrap(), -3);
    }

    #[test]
    fn template_crossing_count_and_connectivity() {
        for n in 2..=4 {
            for p in [-3i64, 0, 2] {
                for q in [-2i64, 0, 3] {
                    let d = template_diagram(&BraidWord::beta_n(n), p, q).unwrap();
                    let expected =
                        2 * (n as usize + 2) + p.unsigned_abs() as usize + q.unsigned_abs() as usize;
                    assert_eq!(d.crossing_count(), expected);
                    d.analyze().unwrap();
                }
            }
        }
    }

    #[test]
    fn template_white_graph_matches_direct_construction() {
        for n in 2..=4 {
            for p in [-2i64, 0, 1, 3] {
                for q in [-3i64, 0, 1, 2] {
                    let params = KanenobuParams::new(n, p, q).unwrap();
                    let d = template_diagram(&BraidWord::beta_n(n), p, q).unwrap();
                    let extracted = canonical_kanenobu_labeling(&d.white_graph().unwrap()).unwrap();
                    let direct = kanenobu_white_graph(&params);
                    assert!(
                        extracted.same_rotation_graph(&direct),
                        "white graphs differ at n={} p={} q={}:\n{:?}\nvs\n{:?}",
                        n,
                        p,
                        q,
                        extracted,
                        direct
                    );
                }
            }
        }
    }

    #[test]
    fn template_goeritz_matches_reference() {
        let params = KanenobuParams::new(2, 0, 1).unwrap();
        let d = template_diagram(&BraidWord::beta_n(2), 0, 1).unwrap();
        let g = canonical_kanenobu_labeling(&d.white_graph().unwrap()).unwrap();
        assert_eq!(goeritz_matrix(&g), presentation_matrix(&params));
    }

    #[test]
    fn companion_goeritz_is_bottom_right_minor() {
        use crate::matrix::IntMatrix;
        for n in 2..=6 {
            let g = bbeta_white_graph(n).unwrap();
            let m = goeritz_matrix(&g);
            // bottom-right 2×2 minor of the reference matrix at p = q = 0
            let reference = presentation_matrix(&KanenobuParams::new(n, 0, 0).unwrap())
                .submatrix(&[2, 3], &[2, 3]);
            assert_eq!(m, reference);
            assert_eq!(m.det(), crate::rational::int(2 * n as i64 + 1));
        }
        let m = goeritz_matrix(&bbeta_white_graph(2).unwrap());
        assert_eq!(m, IntMatrix::from_rows_i64(&[vec![2, -1], vec![-1, 3]]));
    }

    #[test]
    fn split_closure_detected() {
        // σ₂-only braid: the top strand never crosses, the template splits
        let braid = BraidWord::new(3, vec![(2, 1), (2, 1)]).unwrap();
        assert!(matches!(
            template_diagram(&braid, 1, 1),
            Err(Error::NotAKnot { .. }) | Err(Error::InvalidParams(_))
        ));
    }

    #[test]
    fn planar_diagram_export_is_consistent() {
        let d = template_diagram(&BraidWord::beta_n(2), 1, 1).unwrap();
        let pd = d.planar_diagram().unwrap();
        assert_eq!(pd.crossings.len(), 10);
        assert_eq!(pd.regions.len(), 12);
        assert_eq!(pd.regions.iter().filter(|r| r.unbounded).count(), 1);
        let unb = pd.regions.iter().find(|r| r.unbounded).unwrap();
        assert_eq!(unb.color, "white");
        // adjacent corners around a crossing alternate colors
        for c in &pd.crossings {
            for k in 0..4 {
                let a = pd.regions[c.regions[k]].color;
                let b = pd.regions[c.regions[(k + 1) % 4]].color;
                assert_ne!(a, b);
            }
        }
    }
}
