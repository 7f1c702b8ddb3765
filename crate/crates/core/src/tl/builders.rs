//! Constructors for the networks the formulas are checked against.

use super::network::{ClosedNetwork, Port};
use crate::error::{Error, Result};

/// The closed projector: `f^(n)` with top point `i` joined to bottom point `i`.
pub fn trace_closure(n: usize) -> ClosedNetwork {
    let mut net = ClosedNetwork::new();
    let f = net.add_box("f", n);
    for i in 0..n {
        net.connect(Port::top(f, i), Port::bottom(f, i));
    }
    net
}

/// A planar trivalent graph with colored edges, given by a rotation system.
///
/// `rotation[w]` lists the edges at vertex `w` in counterclockwise order.
/// Each edge becomes a projector box whose top faces its first endpoint.
/// At a vertex with counterclockwise edges of colors `a, b, c`, adjacent
/// bundles are joined by `(a+b-c)/2`, `(b+c-a)/2` and `(c+a-b)/2` nested
/// arcs.
#[derive(Clone, Debug)]
pub struct SpinGraph {
    edges: Vec<(usize, usize, usize)>,
    rotation: Vec<Vec<usize>>,
}

impl SpinGraph {
    pub fn new(edges: Vec<(usize, usize, usize)>, rotation: Vec<Vec<usize>>) -> Result<Self> {
        for (ei, &(u, v, _)) in edges.iter().enumerate() {
            if u == v || u >= rotation.len() || v >= rotation.len() {
                return Err(Error::domain(format!(
                    "edge {ei} has bad endpoints ({u}, {v})"
                )));
            }
            for w in [u, v] {
                if rotation[w].iter().filter(|&&e| e == ei).count() != 1 {
                    return Err(Error::domain(format!(
                        "edge {ei} must appear once at vertex {w}"
                    )));
                }
            }
        }
        for (w, rot) in rotation.iter().enumerate() {
            if rot.len() != 3 {
                return Err(Error::domain(format!("vertex {w} is not trivalent")));
            }
            let [a, b, c] = [0, 1, 2].map(|s| edges.get(rot[s]).map_or(usize::MAX, |e| e.2));
            if a == usize::MAX || b == usize::MAX || c == usize::MAX {
                return Err(Error::domain(format!("vertex {w} names an unknown edge")));
            }
            if (a + b + c) % 2 != 0 || a + b < c || b + c < a || a + c < b {
                return Err(Error::domain(format!(
                    "colors ({a}, {b}, {c}) at vertex {w} are not admissible"
                )));
            }
            if !rotation[w]
                .iter()
                .all(|&e| edges[e].0 == w || edges[e].1 == w)
            {
                return Err(Error::domain(format!(
                    "vertex {w} lists an edge not incident to it"
                )));
            }
        }
        Ok(Self { edges, rotation })
    }

    pub fn to_network(&self) -> ClosedNetwork {
        let mut net = ClosedNetwork::new();
        let boxes: Vec<usize> = self
            .edges
            .iter()
            .enumerate()
            .map(|(ei, &(_, _, c))| net.add_box(format!("e{ei}"), c))
            .collect();
        // Ports of edge `e` seen from vertex `w`, counterclockwise.
        let strands = |w: usize, e: usize| -> Vec<Port> {
            let (u, _, c) = self.edges[e];
            if w == u {
                (0..c).map(|i| Port::top(boxes[e], i)).collect()
            } else {
                (0..c).rev().map(|i| Port::bottom(boxes[e], i)).collect()
            }
        };
        for (w, rot) in self.rotation.iter().enumerate() {
            let s: Vec<Vec<Port>> = rot.iter().map(|&e| strands(w, e)).collect();
            for t in 0..3 {
                let (p, q, r) = (&s[t], &s[(t + 1) % 3], &s[(t + 2) % 3]);
                // arcs between consecutive bundles p and q
                let x = (p.len() + q.len() - r.len()) / 2;
                for j in 0..x {
                    net.connect(p[p.len() - 1 - j], q[j]);
                }
            }
        }
        net
    }
}

/// The theta network with edges colored `a, b, c`.
pub fn theta(a: usize, b: usize, c: usize) -> Result<ClosedNetwork> {
    let g = SpinGraph::new(
        vec![(0, 1, a), (0, 1, b), (0, 1, c)],
        vec![vec![0, 1, 2], vec![2, 1, 0]],
    )?;
    Ok(g.to_network())
}

/// The tetrahedron network. Edge colors are given in the order
/// `01, 02, 03, 12, 13, 23` of the vertex pairs they join.
pub fn tetrahedron(colors: [usize; 6]) -> Result<ClosedNetwork> {
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let edges = pairs
        .iter()
        .zip(colors)
        .map(|(&(u, v), c)| (u, v, c))
        .collect();
    let edge = |u: usize, v: usize| {
        pairs
            .iter()
            .position(|&p| p == (u.min(v), u.max(v)))
            .unwrap()
    };
    // vertex 3 in the middle of the triangle 0, 1, 2
    let neighbours = [[1, 3, 2], [2, 3, 0], [0, 3, 1], [0, 1, 2]];
    let rotation = neighbours
        .iter()
        .enumerate()
        .map(|(w, ns)| ns.iter().map(|&x| edge(w, x)).collect())
        .collect();
    Ok(SpinGraph::new(edges, rotation)?.to_network())
}

/// The closure of the 2-braid `σ^f` with both strands cabled by `n`
/// parallel strands and decorated by `f^(n)` (one box per component).
///
/// Every crossing has the left incoming strand passing over; `mirror`
/// flips all crossings.
pub fn torus_closure(f: usize, n: usize, mirror: bool) -> Result<ClosedNetwork> {
    if f == 0 || n == 0 {
        return Err(Error::domain("torus closure needs f >= 1 and n >= 1"));
    }
    let mut net = ClosedNetwork::new();
    let width = 2 * n;
    let mut cur: Vec<Option<Port>> = vec![None; width];
    let mut start: Vec<Option<Port>> = vec![None; width];
    let p1 = net.add_box("p1", n);
    for i in 0..n {
        cur[i] = Some(Port::top(p1, i));
        start[i] = Some(Port::bottom(p1, i));
    }
    if f % 2 == 0 {
        let p2 = net.add_box("p2", n);
        for i in 0..n {
            cur[n + i] = Some(Port::top(p2, i));
            start[n + i] = Some(Port::bottom(p2, i));
        }
    }
    // corner numbers at the SW, SE, NE, NW positions
    let corners = if mirror { [3, 0, 1, 2] } else { [0, 1, 2, 3] };
    let mut count = 0;
    for _ in 0..f {
        for a in (0..n).rev() {
            for p in a..a + n {
                let x = net.add_crossing(format!("x{count}"));
                count += 1;
                for (pos, corner) in [(p, corners[0]), (p + 1, corners[1])] {
                    let input = Port::corner(x, corner);
                    match cur[pos] {
                        Some(prev) => net.connect(prev, input),
                        None => start[pos] = Some(input),
                    }
                }
                cur[p + 1] = Some(Port::corner(x, corners[2]));
                cur[p] = Some(Port::corner(x, corners[3]));
            }
        }
    }
    for pos in 0..width {
        let (Some(top), Some(bottom)) = (cur[pos], start[pos]) else {
            unreachable!("every position is crossed at least once");
        };
        net.connect(top, bottom);
    }
    Ok(net)
}

/// Parameters of the bubble element: `m, n` strands leave the top
/// clusters, a band of `k` strands joins the two projectors above and a
/// band of `l` strands below. The bottom clusters then carry
/// `m' = m + k - l` and `n' = n + k - l` strands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BubbleShape {
    pub m: usize,
    pub n: usize,
    pub k: usize,
    pub l: usize,
}

impl BubbleShape {
    pub fn new(m: usize, n: usize, k: usize, l: usize) -> Result<Self> {
        if l == 0 || k < l {
            return Err(Error::domain(format!(
                "bubble needs k >= l >= 1, got k = {k}, l = {l}"
            )));
        }
        Ok(Self { m, n, k, l })
    }

    pub fn m_prime(&self) -> usize {
        self.m + self.k - self.l
    }

    pub fn n_prime(&self) -> usize {
        self.n + self.k - self.l
    }

    /// Closures available for comparison: `0..=min(m, n)`.
    pub fn closures(&self) -> std::ops::RangeInclusive<usize> {
        0..=self.m.min(self.n)
    }
}

struct Clusters {
    cm: usize,
    cn: usize,
    cmp: usize,
    cnp: usize,
}

/// Four cluster projectors closed off by `W_j`: `j` arcs between the top
/// clusters, `k - l + j` between the bottom ones, and the rest run around
/// the outside from top to bottom on each side. With `k = l` and `j = 0`
/// this is the trace closure.
fn closed_clusters(net: &mut ClosedNetwork, s: &BubbleShape, j: usize) -> Result<Clusters> {
    if j > s.m.min(s.n) {
        return Err(Error::domain(format!("closure {j} exceeds min(m, n)")));
    }
    let (mp, np) = (s.m_prime(), s.n_prime());
    let cm = net.add_box("cm", s.m);
    let cn = net.add_box("cn", s.n);
    let cmp = net.add_box("cmp", mp);
    let cnp = net.add_box("cnp", np);
    let cj = s.k - s.l + j;
    for t in 0..j {
        net.connect(Port::top(cm, s.m - 1 - t), Port::top(cn, t));
    }
    for t in 0..cj {
        net.connect(Port::bottom(cmp, mp - 1 - t), Port::bottom(cnp, t));
    }
    for t in 0..s.m - j {
        net.connect(Port::top(cm, t), Port::bottom(cmp, t));
    }
    for t in 0..s.n - j {
        net.connect(Port::top(cn, j + t), Port::bottom(cnp, cj + t));
    }
    Ok(Clusters { cm, cn, cmp, cnp })
}

/// The bubble element inside closure `W_j`.
pub fn bubble_lhs(s: &BubbleShape, j: usize) -> Result<ClosedNetwork> {
    let mut net = ClosedNetwork::new();
    let c = closed_clusters(&mut net, s, j)?;
    let (m, n, k, l) = (s.m, s.n, s.k, s.l);
    let (mp, np) = (s.m_prime(), s.n_prime());
    let left = net.add_box("left", m + k);
    let right = net.add_box("right", n + k);
    for t in 0..m {
        net.connect(Port::bottom(c.cm, t), Port::top(left, t));
    }
    for t in 0..k {
        net.connect(Port::top(left, m + k - 1 - t), Port::top(right, t));
    }
    for t in 0..n {
        net.connect(Port::top(right, k + t), Port::bottom(c.cn, t));
    }
    for t in 0..mp {
        net.connect(Port::bottom(left, t), Port::top(c.cmp, t));
    }
    for t in 0..l {
        net.connect(Port::bottom(left, mp + l - 1 - t), Port::bottom(right, t));
    }
    for t in 0..np {
        net.connect(Port::bottom(right, l + t), Port::top(c.cnp, t));
    }
    Ok(net)
}

/// The `i`-th basis diagram of the expansion inside closure `W_j`: `i` arcs
/// between the top clusters, `k - l + i` between the bottom clusters, and
/// vertical strands on each side.
pub fn bubble_rhs(s: &BubbleShape, i: usize, j: usize) -> Result<ClosedNetwork> {
    if i > s.m.min(s.n).min(s.l) {
        return Err(Error::domain(format!("term {i} exceeds min(m, n, l)")));
    }
    let mut net = ClosedNetwork::new();
    let c = closed_clusters(&mut net, s, j)?;
    let (m, n) = (s.m, s.n);
    let mp = s.m_prime();
    let ci = s.k - s.l + i;
    for t in 0..i {
        net.connect(Port::bottom(c.cm, m - 1 - t), Port::bottom(c.cn, t));
    }
    for t in 0..ci {
        net.connect(Port::top(c.cmp, mp - 1 - t), Port::top(c.cnp, t));
    }
    for t in 0..m - i {
        net.connect(Port::bottom(c.cm, t), Port::top(c.cmp, t));
    }
    for t in 0..n - i {
        net.connect(Port::bottom(c.cn, i + t), Port::top(c.cnp, ci + t));
    }
    Ok(net)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::{delta_n, VLaurent};
    use crate::tl::bracket_closed;

    fn eval(net: &ClosedNetwork) -> VLaurent {
        bracket_closed(net).unwrap().to_laurent().unwrap()
    }

    #[test]
    fn networks_validate() {
        trace_closure(3).validate().unwrap();
        theta(2, 2, 2).unwrap().validate().unwrap();
        tetrahedron([2; 6]).unwrap().validate().unwrap();
        torus_closure(3, 2, false).unwrap().validate().unwrap();
        torus_closure(2, 2, true).unwrap().validate().unwrap();
        let s = BubbleShape::new(1, 2, 2, 1).unwrap();
        for j in s.closures() {
            bubble_lhs(&s, j).unwrap().validate().unwrap();
            for i in 0..=1 {
                bubble_rhs(&s, i, j).unwrap().validate().unwrap();
            }
        }
    }

    #[test]
    fn inadmissible_vertices_rejected() {
        assert!(theta(1, 1, 1).is_err());
        assert!(theta(1, 2, 5).is_err());
    }

    #[test]
    fn theta_with_a_zero_edge_is_a_closed_projector() {
        assert_eq!(eval(&theta(3, 3, 0).unwrap()), delta_n(3));
    }

    #[test]
    fn torus_one_crossing_is_a_kinked_unknot() {
        // (2,1) torus knot colored 1 is a one-crossing unknot
        let v = eval(&torus_closure(1, 1, false).unwrap());
        let u = eval(&torus_closure(1, 1, true).unwrap());
        assert_eq!(v.mirror(), u);
        assert_eq!(v.len(), 2);
    }
}
