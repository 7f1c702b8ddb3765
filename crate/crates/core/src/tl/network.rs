use std::collections::{BTreeSet, HashMap};

use super::element::delta_pow;
use super::jones_wenzl::jones_wenzl_with;
use super::OracleConfig;
use crate::error::{Error, Result};
use crate::qcore::VRational;

/// What sits at a vertex of a closed network.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum VertexKind {
    /// A Jones–Wenzl projector with `color` strands entering at the top and
    /// `color` at the bottom.
    Box { color: usize },
    /// A crossing with corners numbered counterclockwise from the
    /// south-west: 0 = SW, 1 = SE, 2 = NE, 3 = NW. The over-strand runs
    /// 0–2, the under-strand 1–3.
    Crossing,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub name: String,
    pub kind: VertexKind,
}

impl Vertex {
    pub fn port_count(&self) -> usize {
        match self.kind {
            VertexKind::Box { color } => 2 * color,
            VertexKind::Crossing => 4,
        }
    }
}

/// An endpoint position on a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Top(usize),
    Bottom(usize),
    Corner(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Port {
    pub vertex: usize,
    pub slot: Slot,
}

impl Port {
    pub fn top(vertex: usize, i: usize) -> Self {
        Self {
            vertex,
            slot: Slot::Top(i),
        }
    }

    pub fn bottom(vertex: usize, i: usize) -> Self {
        Self {
            vertex,
            slot: Slot::Bottom(i),
        }
    }

    pub fn corner(vertex: usize, k: usize) -> Self {
        Self {
            vertex,
            slot: Slot::Corner(k),
        }
    }
}

/// A closed planar diagram of projector boxes and crossings joined by arcs,
/// plus a number of free unknotted loops.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClosedNetwork {
    vertices: Vec<Vertex>,
    arcs: Vec<(Port, Port)>,
    loops: usize,
}

impl ClosedNetwork {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_box(&mut self, name: impl Into<String>, color: usize) -> usize {
        self.vertices.push(Vertex {
            name: name.into(),
            kind: VertexKind::Box { color },
        });
        self.vertices.len() - 1
    }

    pub fn add_crossing(&mut self, name: impl Into<String>) -> usize {
        self.vertices.push(Vertex {
            name: name.into(),
            kind: VertexKind::Crossing,
        });
        self.vertices.len() - 1
    }

    pub fn connect(&mut self, a: Port, b: Port) {
        self.arcs.push((a, b));
    }

    pub fn add_loops(&mut self, k: usize) {
        self.loops += k;
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn arcs(&self) -> &[(Port, Port)] {
        &self.arcs
    }

    pub fn loops(&self) -> usize {
        self.loops
    }

    pub fn crossing_count(&self) -> usize {
        self.vertices
            .iter()
            .filter(|v| v.kind == VertexKind::Crossing)
            .count()
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.name == name)
    }

    fn local_index(&self, port: Port) -> Result<usize> {
        let v = self
            .vertices
            .get(port.vertex)
            .ok_or_else(|| Error::domain(format!("no vertex {}", port.vertex)))?;
        let bad = || Error::domain(format!("{} has no port {:?}", v.name, port.slot));
        match (&v.kind, port.slot) {
            (VertexKind::Box { color }, Slot::Top(i)) if i < *color => Ok(i),
            (VertexKind::Box { color }, Slot::Bottom(i)) if i < *color => Ok(color + i),
            (VertexKind::Crossing, Slot::Corner(k)) if k < 4 => Ok(k),
            _ => Err(bad()),
        }
    }

    /// Human-readable port label, e.g. `a.t0` or `x.2`.
    pub fn port_label(&self, port: Port) -> String {
        let name = self
            .vertices
            .get(port.vertex)
            .map(|v| v.name.as_str())
            .unwrap_or("?");
        match port.slot {
            Slot::Top(i) => format!("{name}.t{i}"),
            Slot::Bottom(i) => format!("{name}.b{i}"),
            Slot::Corner(k) => format!("{name}.{k}"),
        }
    }

    /// Checks names are unique, every arc endpoint exists and every port
    /// is used by exactly one arc.
    pub fn validate(&self) -> Result<()> {
        let mut names = BTreeSet::new();
        for v in &self.vertices {
            if !names.insert(v.name.as_str()) {
                return Err(Error::domain(format!("duplicate vertex name {}", v.name)));
            }
        }
        let offsets = self.offsets();
        let total = *offsets.last().unwrap_or(&0);
        let mut used = vec![false; total];
        for &(a, b) in &self.arcs {
            for p in [a, b] {
                let g = offsets[p.vertex] + self.local_index(p)?;
                if used[g] {
                    return Err(Error::domain(format!(
                        "port {} used twice",
                        self.port_label(p)
                    )));
                }
                used[g] = true;
            }
        }
        for (vi, v) in self.vertices.iter().enumerate() {
            for l in 0..v.port_count() {
                if !used[offsets[vi] + l] {
                    let slot = match v.kind {
                        VertexKind::Box { color } if l < color => Slot::Top(l),
                        VertexKind::Box { color } => Slot::Bottom(l - color),
                        VertexKind::Crossing => Slot::Corner(l),
                    };
                    return Err(Error::domain(format!(
                        "port {} is not connected",
                        self.port_label(Port { vertex: vi, slot })
                    )));
                }
            }
        }
        Ok(())
    }

    /// Prefix sums of port counts; the last entry is the total.
    fn offsets(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.vertices.len() + 1);
        let mut acc = 0;
        out.push(0);
        for v in &self.vertices {
            acc += v.port_count();
            out.push(acc);
        }
        out
    }
}

/// Coefficient of one planar resolution of a vertex.
enum TermCoeff {
    VPow(i64),
    Value(VRational),
}

struct Resolution {
    partner: Vec<u8>,
    coeff: TermCoeff,
}

/// The Kauffman bracket of a closed network with the default limits.
pub fn bracket_closed(net: &ClosedNetwork) -> Result<VRational> {
    bracket_closed_with(net, &OracleConfig::default())
}

/// The Kauffman bracket of a closed network.
///
/// Each crossing is resolved as `A·(A-smoothing) + A^-1·(B-smoothing)` and
/// each box expanded into its Jones–Wenzl terms. Rather than enumerating
/// every combination, vertices are absorbed one at a time while tracking
/// how the arcs leaving the absorbed part are paired up, so identical
/// partial states merge. Crossings are absorbed before boxes.
pub fn bracket_closed_with(net: &ClosedNetwork, config: &OracleConfig) -> Result<VRational> {
    net.validate()?;
    let crossings = net.crossing_count();
    if crossings > config.max_crossings {
        return Err(Error::capacity(format!(
            "{crossings} crossings exceed the limit {}",
            config.max_crossings
        )));
    }
    let offsets = net.offsets();
    let total = *offsets.last().unwrap();
    let mut owner = vec![0usize; total];
    for (vi, w) in offsets.windows(2).enumerate() {
        owner[w[0]..w[1]].fill(vi);
    }
    let mut arc_of = vec![0usize; total];
    for &(a, b) in &net.arcs {
        let ga = offsets[a.vertex] + net.local_index(a)?;
        let gb = offsets[b.vertex] + net.local_index(b)?;
        arc_of[ga] = gb;
        arc_of[gb] = ga;
    }

    let order = absorption_order(net, &offsets, &owner, &arc_of);
    check_frontier(&order, &offsets, &owner, &arc_of, config)?;

    let mut resolutions: Vec<Vec<Resolution>> = Vec::with_capacity(net.vertices.len());
    for v in &net.vertices {
        resolutions.push(match v.kind {
            VertexKind::Crossing => vec![
                Resolution {
                    partner: vec![3, 2, 1, 0],
                    coeff: TermCoeff::VPow(1),
                },
                Resolution {
                    partner: vec![1, 0, 3, 2],
                    coeff: TermCoeff::VPow(-1),
                },
            ],
            VertexKind::Box { color } => jones_wenzl_with(color, config)?
                .terms()
                .map(|(m, c)| Resolution {
                    partner: m.partners().to_vec(),
                    coeff: TermCoeff::Value(c.clone()),
                })
                .collect(),
        });
    }

    let mut processed = vec![false; net.vertices.len()];
    let mut states: HashMap<Vec<(u32, u32)>, VRational> = HashMap::new();
    states.insert(Vec::new(), VRational::one());
    for &vi in &order {
        let base = offsets[vi];
        let k = offsets[vi + 1] - base;
        let mut next: HashMap<(Vec<(u32, u32)>, usize), VRational> = HashMap::new();
        for (state, coeff) in &states {
            let (ext, carried) = external_links(state, vi, base, k, &owner, &arc_of, &processed);
            for res in &resolutions[vi] {
                let (mut pairs, loops) = trace_vertex(&res.partner, &ext);
                pairs.extend_from_slice(&carried);
                pairs.sort_unstable();
                let c = match &res.coeff {
                    TermCoeff::VPow(e) => coeff.shift(*e),
                    TermCoeff::Value(x) => coeff * x,
                };
                match next.get_mut(&(pairs.clone(), loops)) {
                    Some(acc) => *acc += &c,
                    None => {
                        next.insert((pairs, loops), c);
                    }
                }
            }
        }
        processed[vi] = true;
        states = HashMap::new();
        let mut keys: Vec<_> = next.into_iter().collect();
        keys.sort_by(|a, b| a.0.cmp(&b.0));
        for ((pairs, loops), c) in keys {
            if c.is_zero() {
                continue;
            }
            let c = &c * &delta_pow(loops);
            match states.get_mut(&pairs) {
                Some(acc) => *acc += &c,
                None => {
                    states.insert(pairs, c);
                }
            }
        }
    }
    let value = states.remove(&Vec::new()).unwrap_or_default();
    debug_assert!(
        states.values().all(|c| c.is_zero()),
        "open arcs remained after absorbing every vertex"
    );
    Ok(&value * &delta_pow(net.loops))
}

#[derive(Clone, Copy)]
enum Ext {
    Local(usize),
    Outside(u32),
}

/// For each port of vertex `vi`, where its strand leads outside the vertex:
/// to another port of the same vertex or to an open endpoint. Also returns
/// the state pairs that do not touch the vertex.
fn external_links(
    state: &[(u32, u32)],
    vi: usize,
    base: usize,
    k: usize,
    owner: &[usize],
    arc_of: &[usize],
    processed: &[bool],
) -> (Vec<Ext>, Vec<(u32, u32)>) {
    let mut carried = Vec::with_capacity(state.len());
    let mut path_end: HashMap<u32, u32> = HashMap::new();
    for &(a, b) in state {
        let touches = |g: u32| owner[g as usize] == vi;
        if touches(a) || touches(b) {
            path_end.insert(a, b);
            path_end.insert(b, a);
        } else {
            carried.push((a, b));
        }
    }
    let ext = (0..k)
        .map(|l| {
            let g = base + l;
            let r = arc_of[g];
            if owner[r] == vi {
                Ext::Local(r - base)
            } else if processed[owner[r]] {
                let s = path_end[&(g as u32)] as usize;
                if owner[s] == vi {
                    Ext::Local(s - base)
                } else {
                    Ext::Outside(s as u32)
                }
            } else {
                Ext::Outside(r as u32)
            }
        })
        .collect();
    (ext, carried)
}

/// Combines a planar resolution of a vertex with its external links.
/// Returns the new open pairs and the number of closed loops.
fn trace_vertex(partner: &[u8], ext: &[Ext]) -> (Vec<(u32, u32)>, usize) {
    let k = partner.len();
    let mut seen = vec![false; k];
    let mut pairs = Vec::new();
    for start in 0..k {
        let Ext::Outside(x) = ext[start] else {
            continue;
        };
        if seen[start] {
            continue;
        }
        let mut cur = start;
        loop {
            seen[cur] = true;
            let j = partner[cur] as usize;
            seen[j] = true;
            match ext[j] {
                Ext::Outside(y) => {
                    pairs.push((x.min(y), x.max(y)));
                    break;
                }
                Ext::Local(l) => cur = l,
            }
        }
    }
    let mut loops = 0;
    for start in 0..k {
        if seen[start] {
            continue;
        }
        loops += 1;
        let mut cur = start;
        loop {
            seen[cur] = true;
            let j = partner[cur] as usize;
            seen[j] = true;
            let Ext::Local(l) = ext[j] else {
                unreachable!("open strand inside a closed loop")
            };
            if l == start {
                break;
            }
            cur = l;
        }
    }
    (pairs, loops)
}

/// Crossings first, then boxes; within each class, greedily the vertex with
/// the most arcs into the absorbed part (ties by index).
fn absorption_order(
    net: &ClosedNetwork,
    offsets: &[usize],
    owner: &[usize],
    arc_of: &[usize],
) -> Vec<usize> {
    let mut done = vec![false; net.vertices.len()];
    let mut order = Vec::with_capacity(net.vertices.len());
    for want_crossing in [true, false] {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for (vi, v) in net.vertices.iter().enumerate() {
                if done[vi] || (v.kind == VertexKind::Crossing) != want_crossing {
                    continue;
                }
                let links = (offsets[vi]..offsets[vi + 1])
                    .filter(|&g| done[owner[arc_of[g]]])
                    .count();
                if best.map_or(true, |(_, b)| links > b) {
                    best = Some((vi, links));
                }
            }
            let Some((vi, _)) = best else { break };
            done[vi] = true;
            order.push(vi);
        }
    }
    order
}

fn check_frontier(
    order: &[usize],
    offsets: &[usize],
    owner: &[usize],
    arc_of: &[usize],
    config: &OracleConfig,
) -> Result<()> {
    let mut done = vec![false; offsets.len() - 1];
    let mut open: i64 = 0;
    for &vi in order {
        let k = offsets[vi + 1] - offsets[vi];
        let into_done = (offsets[vi]..offsets[vi + 1])
            .filter(|&g| done[owner[arc_of[g]]])
            .count();
        let self_ports = (offsets[vi]..offsets[vi + 1])
            .filter(|&g| owner[arc_of[g]] == vi)
            .count();
        // boundary points present while the vertex is expanded
        let during = open as usize + k;
        if during > config.max_boundary {
            return Err(Error::capacity(format!(
                "expansion needs {during} boundary points, above the limit {}",
                config.max_boundary
            )));
        }
        open += (k - into_done - self_ports) as i64 - into_done as i64;
        done[vi] = true;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{delta_n, VLaurent};

    fn laurent(x: VRational) -> VLaurent {
        x.to_laurent().unwrap()
    }

    #[test]
    fn single_loop() {
        let mut net = ClosedNetwork::new();
        net.add_loops(1);
        assert_eq!(laurent(bracket_closed(&net).unwrap()), delta_n(1));
    }

    #[test]
    fn kinked_loop() {
        let mut net = ClosedNetwork::new();
        let x = net.add_crossing("x");
        net.connect(Port::corner(x, 2), Port::corner(x, 3));
        net.connect(Port::corner(x, 0), Port::corner(x, 1));
        let expect = &VLaurent::v_pow(-3) * &delta_n(1);
        assert_eq!(laurent(bracket_closed(&net).unwrap()), -expect);

        let mut mirror = ClosedNetwork::new();
        let x = mirror.add_crossing("x");
        mirror.connect(Port::corner(x, 1), Port::corner(x, 2));
        mirror.connect(Port::corner(x, 3), Port::corner(x, 0));
        let expect = &VLaurent::v_pow(3) * &delta_n(1);
        assert_eq!(laurent(bracket_closed(&mirror).unwrap()), -expect);
    }

    #[test]
    fn closed_projectors() {
        for n in 0..=4 {
            let mut net = ClosedNetwork::new();
            let b = net.add_box("f", n);
            for i in 0..n {
                net.connect(Port::top(b, i), Port::bottom(b, i));
            }
            assert_eq!(
                laurent(bracket_closed(&net).unwrap()),
                delta_n(n as u32),
                "n = {n}"
            );
        }
    }

    #[test]
    fn unused_port_is_rejected() {
        let mut net = ClosedNetwork::new();
        let x = net.add_crossing("x");
        net.connect(Port::corner(x, 0), Port::corner(x, 1));
        assert!(matches!(bracket_closed(&net), Err(Error::Domain(_))));
    }

    #[test]
    fn crossing_limit() {
        let mut net = ClosedNetwork::new();
        let x = net.add_crossing("x");
        net.connect(Port::corner(x, 2), Port::corner(x, 3));
        net.connect(Port::corner(x, 0), Port::corner(x, 1));
        let cfg = OracleConfig {
            max_crossings: 0,
            ..OracleConfig::default()
        };
        assert!(matches!(
            bracket_closed_with(&net, &cfg),
            Err(Error::Capacity(_))
        ));
    }
}
