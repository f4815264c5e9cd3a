//! Text codes for diagrams.
//!
//! Grammar (whitespace between tokens is ignored, trailing input rejected):
//!
//! ```text
//! diagram   := ('K' | 'L') '[' body ']'
//! body      := ε | crossings | crossings ';' loops | ';' loops
//! crossings := crossing (',' crossing)*
//! crossing  := 'X' '(' label ',' label ',' label ',' label ')'
//! loops     := 'loops' '=' integer
//! ```
//!
//! A crossing lists its four edge labels counterclockwise starting from an
//! under-strand end; every label must appear exactly twice overall. An empty
//! body denotes the trivial diagram (one isolated loop).

use super::{DiagramError, EndPoint, LinkDiagram};

pub fn parse_diagram(text: &str) -> Result<LinkDiagram, DiagramError> {
    let mut p = Parser { s: text.as_bytes(), i: 0 };
    p.skip_ws();
    let h = p.next_byte().ok_or_else(|| p.err("empty input"))?;
    if h != b'K' && h != b'L' {
        return Err(p.err("expected 'K' or 'L' header"));
    }
    p.expect(b'[')?;
    p.skip_ws();
    let mut tuples: Vec<[u64; 4]> = Vec::new();
    let mut loops: Option<usize> = None;
    if p.peek() == Some(b'X') {
        loop {
            p.expect(b'X')?;
            p.expect(b'(')?;
            let a = p.number()?;
            p.expect(b',')?;
            let b = p.number()?;
            p.expect(b',')?;
            let c = p.number()?;
            p.expect(b',')?;
            let d = p.number()?;
            p.expect(b')')?;
            tuples.push([a, b, c, d]);
            p.skip_ws();
            if p.peek() == Some(b',') {
                p.expect(b',')?;
                p.skip_ws();
                continue;
            }
            break;
        }
    }
    p.skip_ws();
    if p.peek() == Some(b';') {
        p.expect(b';')?;
        p.skip_ws();
        for ch in b"loops" {
            if p.next_byte() != Some(*ch) {
                return Err(p.err("expected 'loops=<k>'"));
            }
        }
        p.expect(b'=')?;
        loops = Some(p.number()? as usize);
    }
    p.expect(b']')?;
    p.skip_ws();
    if p.i != p.s.len() {
        return Err(p.err("trailing input after ']'"));
    }

    let loops = match loops {
        Some(k) => k,
        None if tuples.is_empty() => 1, // bare "K[]" is the trivial diagram
        None => 0,
    };
    build(&tuples, loops)
}

fn build(tuples: &[[u64; 4]], loops: usize) -> Result<LinkDiagram, DiagramError> {
    let mut label_index: std::collections::HashMap<u64, usize> = std::collections::HashMap::new();
    let mut edges: Vec<Vec<EndPoint>> = Vec::new();
    for (v, t) in tuples.iter().enumerate() {
        for (s, lab) in t.iter().enumerate() {
            let e = *label_index.entry(*lab).or_insert_with(|| {
                edges.push(Vec::new());
                edges.len() - 1
            });
            edges[e].push(EndPoint { vertex: v, slot: s as u8 });
            if edges[e].len() > 2 {
                return Err(DiagramError::Invalid(format!("edge label {lab} appears more than twice")));
            }
        }
    }
    let mut fixed = Vec::with_capacity(edges.len());
    for (e, ends) in edges.iter().enumerate() {
        if ends.len() != 2 {
            let lab = label_index.iter().find(|(_, &i)| i == e).map(|(l, _)| *l).unwrap_or(0);
            return Err(DiagramError::Invalid(format!("edge label {lab} appears only once")));
        }
        fixed.push([ends[0], ends[1]]);
    }
    let mut slots = vec![[(usize::MAX, 0u8); 4]; tuples.len()];
    for (e, ends) in fixed.iter().enumerate() {
        for (end, p) in ends.iter().enumerate() {
            slots[p.vertex][p.slot as usize] = (e, end as u8);
        }
    }
    let d = LinkDiagram { slots, edges: fixed, isolated_loops: loops };
    d.validate()?;
    Ok(d)
}

/// Canonical text form: vertices in index order, edge labels assigned by
/// first appearance starting at 1. `serialize(parse(s)) == s` for any string
/// this function produces.
pub fn serialize_diagram(d: &LinkDiagram) -> String {
    let mut labels = vec![0u64; d.edges.len()];
    let mut next = 1u64;
    let mut parts = Vec::with_capacity(d.slots.len());
    for sl in &d.slots {
        let mut lab4 = [0u64; 4];
        for (s, &(e, _)) in sl.iter().enumerate() {
            if labels[e] == 0 {
                labels[e] = next;
                next += 1;
            }
            lab4[s] = labels[e];
        }
        parts.push(format!("X({},{},{},{})", lab4[0], lab4[1], lab4[2], lab4[3]));
    }
    let body = parts.join(", ");
    match (body.is_empty(), d.isolated_loops) {
        (true, l) => format!("K[; loops={l}]"),
        (false, 0) => format!("K[{body}]"),
        (false, l) => format!("K[{body}; loops={l}]"),
    }
}

struct Parser<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: &str) -> DiagramError {
        DiagramError::Syntax(format!("{msg} (at byte {})", self.i))
    }

    fn skip_ws(&mut self) {
        while self.i < self.s.len() && (self.s[self.i] as char).is_whitespace() {
            self.i += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.i).copied()
    }

    fn next_byte(&mut self) -> Option<u8> {
        self.skip_ws();
        let b = self.s.get(self.i).copied();
        if b.is_some() {
            self.i += 1;
        }
        b
    }

    fn expect(&mut self, b: u8) -> Result<(), DiagramError> {
        match self.next_byte() {
            Some(x) if x == b => Ok(()),
            _ => Err(self.err(&format!("expected '{}'", b as char))),
        }
    }

    fn number(&mut self) -> Result<u64, DiagramError> {
        self.skip_ws();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if self.i == start {
            return Err(self.err("expected a number"));
        }
        std::str::from_utf8(&self.s[start..self.i])
            .unwrap()
            .parse()
            .map_err(|_| self.err("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip_trefoil() {
        let d = parse_diagram("K[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]").unwrap();
        let s = serialize_diagram(&d);
        let d2 = parse_diagram(&s).unwrap();
        assert_eq!(serialize_diagram(&d2), s);
        assert!(d.is_isomorphic(&d2));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_diagram("K[X(1,1,2,2)] extra").is_err());
        assert!(parse_diagram("K[X(1,2,3)]").is_err());
        assert!(parse_diagram("Q[]").is_err());
        assert!(parse_diagram("K[X(1,1,2,3)]").is_err(), "label 3 appears once");
    }

    #[test]
    fn axiom_violation_is_validity_error() {
        // single crossing whose loop edges sit at opposite slots: each
        // "strand" would need to be over at one end and under at the other,
        // which is fine structurally -- but the rotation system is not planar
        // (it forces Euler characteristic 0).
        let r = parse_diagram("K[X(1,2,1,2)]");
        assert!(matches!(r, Err(DiagramError::NonPlanar(_))), "{r:?}");
    }

    #[test]
    fn curl_parses() {
        // one-crossing curl, both configurations
        for code in ["K[X(1,1,2,2)]", "K[X(1,2,2,1)]"] {
            let d = parse_diagram(code).unwrap();
            assert_eq!(d.vertex_count(), 1);
            assert_eq!(d.order(), 1);
            assert_eq!(d.crossing_measure(), 1);
            assert_eq!(d.writhe().unwrap().abs(), 1);
        }
    }
}
