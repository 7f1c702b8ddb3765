//! Text format for closed networks.
//!
//! ```text
//! network   = { line } ;
//! line      = [ statement ] [ comment ] "\n" ;
//! comment   = "#" { any character } ;
//! statement = box | crossing | arc | loop ;
//! box       = "box" name color ;
//! crossing  = "crossing" name ;
//! arc       = "arc" port port ;
//! loop      = "loop" [ count ] ;
//! port      = name "." slot ;
//! slot      = "t" range | "b" range | range ;
//! range     = integer | "[" integer ".." integer "]" ;
//! name      = letter { letter | digit | "_" } ;
//! color     = integer ;
//! count     = integer ;
//! ```
//!
//! `t` and `b` address the top and bottom ports of a box, numbered from
//! the left; a bare index addresses a crossing corner (0 = SW, 1 = SE,
//! 2 = NE, 3 = NW; the over-strand joins 0 and 2). A bracketed range is
//! inclusive and may run downwards; the two ranges of an arc must have the
//! same length and are paired elementwise. Vertices must be declared before
//! they are used. `loop` adds free unknotted components.
//!
//! A single loop threaded through three boxes of color 1:
//!
//! ```text
//! box a 1
//! box b 1
//! box c 1
//! arc a.t0 b.t0
//! arc b.b0 c.t0
//! arc c.b0 a.b0
//! ```

use std::fmt;

use super::network::{ClosedNetwork, Port, Slot, VertexKind};
use crate::error::{Error, Result};

/// Parses the text format into a network and validates it.
pub fn parse_network(text: &str) -> Result<ClosedNetwork> {
    let mut net = ClosedNetwork::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| Error::Parse { line, message };
        let content = raw.split('#').next().unwrap_or("");
        let words: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = words.split_first() else {
            continue;
        };
        match (head, rest) {
            ("box", [name, color]) => {
                check_name(name).map_err(err)?;
                if net.vertex_index(name).is_some() {
                    return Err(err(format!("vertex {name} declared twice")));
                }
                let color: usize = color
                    .parse()
                    .map_err(|_| err(format!("bad color {color}")))?;
                net.add_box(*name, color);
            }
            ("crossing", [name]) => {
                check_name(name).map_err(err)?;
                if net.vertex_index(name).is_some() {
                    return Err(err(format!("vertex {name} declared twice")));
                }
                net.add_crossing(*name);
            }
            ("arc", [a, b]) => {
                let left = parse_ports(&net, a).map_err(err)?;
                let right = parse_ports(&net, b).map_err(err)?;
                if left.len() != right.len() {
                    return Err(err(format!(
                        "bundle sizes differ: {} has {}, {} has {}",
                        a,
                        left.len(),
                        b,
                        right.len()
                    )));
                }
                for (p, q) in left.into_iter().zip(right) {
                    net.connect(p, q);
                }
            }
            ("loop", []) => net.add_loops(1),
            ("loop", [count]) => {
                let k: usize = count
                    .parse()
                    .map_err(|_| err(format!("bad loop count {count}")))?;
                net.add_loops(k);
            }
            _ => return Err(err(format!("unrecognized statement: {}", content.trim()))),
        }
    }
    net.validate().map_err(|e| Error::Parse {
        line: text.lines().count(),
        message: e.to_string(),
    })?;
    Ok(net)
}

fn check_name(name: &str) -> std::result::Result<(), String> {
    let mut chars = name.chars();
    let ok = chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
    if ok {
        Ok(())
    } else {
        Err(format!("bad vertex name {name}"))
    }
}

fn parse_ports(net: &ClosedNetwork, spec: &str) -> std::result::Result<Vec<Port>, String> {
    let (name, slot) = spec
        .split_once('.')
        .ok_or_else(|| format!("port {spec} lacks a '.'"))?;
    let vertex = net
        .vertex_index(name)
        .ok_or_else(|| format!("unknown vertex {name}"))?;
    let (side, range) = match slot.as_bytes().first() {
        Some(b't') => (Some(true), &slot[1..]),
        Some(b'b') => (Some(false), &slot[1..]),
        _ => (None, slot),
    };
    let indices = parse_range(range).ok_or_else(|| format!("bad port index in {spec}"))?;
    let is_box = matches!(net.vertices()[vertex].kind, VertexKind::Box { .. });
    if side.is_some() != is_box {
        return Err(if is_box {
            format!("box port {spec} needs a t or b side")
        } else {
            format!("crossing port {spec} takes a bare corner index")
        });
    }
    Ok(indices
        .into_iter()
        .map(|i| match side {
            Some(true) => Port::top(vertex, i),
            Some(false) => Port::bottom(vertex, i),
            None => Port::corner(vertex, i),
        })
        .collect())
}

fn parse_range(s: &str) -> Option<Vec<usize>> {
    if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let (a, b) = inner.split_once("..")?;
        let (a, b): (usize, usize) = (a.parse().ok()?, b.parse().ok()?);
        Some(if a <= b {
            (a..=b).collect()
        } else {
            (b..=a).rev().collect()
        })
    } else {
        Some(vec![s.parse().ok()?])
    }
}

impl fmt::Display for ClosedNetwork {
    /// One declaration or arc per line, in insertion order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in self.vertices() {
            match v.kind {
                VertexKind::Box { color } => writeln!(f, "box {} {color}", v.name)?,
                VertexKind::Crossing => writeln!(f, "crossing {}", v.name)?,
            }
        }
        for &(a, b) in self.arcs() {
            writeln!(f, "arc {} {}", self.port_label(a), self.port_label(b))?;
        }
        if self.loops() > 0 {
            writeln!(f, "loop {}", self.loops())?;
        }
        Ok(())
    }
}

impl Slot {
    pub fn index(self) -> usize {
        match self {
            Slot::Top(i) | Slot::Bottom(i) | Slot::Corner(i) => i,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qcore::delta_n;
    use crate::tl::bracket_closed;

    #[test]
    fn theta_one_one_one() {
        let text = "box a 1\nbox b 1\nbox c 1\narc a.t0 b.t0\narc b.b0 c.t0\narc c.b0 a.b0\n";
        let net = parse_network(text).unwrap();
        assert_eq!(
            bracket_closed(&net).unwrap().to_laurent().unwrap(),
            delta_n(1)
        );
    }

    #[test]
    fn bundles_and_comments() {
        let text = "# closed projector\nbox f 3   # color three\narc f.t[0..2] f.b[0..2]\n\nloop\n";
        let net = parse_network(text).unwrap();
        assert_eq!(net.arcs().len(), 3);
        assert_eq!(net.loops(), 1);
        let v = bracket_closed(&net).unwrap().to_laurent().unwrap();
        assert_eq!(v, &delta_n(3) * &delta_n(1));
    }

    #[test]
    fn round_trip() {
        let text = "box f 2\ncrossing x\ncrossing y\narc f.t[1..0] f.b[0..1]\narc x.0 y.2\narc x.1 y.3\narc x.2 y.0\narc x.3 y.1\nloop 2\n";
        let net = parse_network(text).unwrap();
        let printed = net.to_string();
        assert_eq!(parse_network(&printed).unwrap(), net);
        assert_eq!(printed.lines().filter(|l| l.starts_with("arc")).count(), 6);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let e = parse_network("box a 1\narc a.t0 z.b0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_network("box a 2\narc a.t[0..1] a.b0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_network("crossing x\narc x.t0 x.1\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        assert!(parse_network("frobnicate\n").is_err());
        // unconnected ports are reported after the last line
        assert!(matches!(
            parse_network("box a 1\n"),
            Err(Error::Parse { .. })
        ));
    }
}
