//! Triangulation text format.
//!
//! ```text
//! tets=N
//! <tet 0>: four records, each `t:f:perm` (perm = image of 0123) or `bd:<mark>`
//! ...
//! coord <vertex-class> <x> <y> <z>      (optional, integers)
//! ```
//!
//! Serialization is canonical; `parse(serialize(t)) == t` bit-exactly.

use super::{ComplexError, Gluing, Perm4, Triangulation};
use num_bigint::BigInt;

pub fn serialize_triangulation(t: &Triangulation) -> String {
    let mut out = format!("tets={}\n", t.tets());
    for tet in 0..t.tets() {
        let mut recs = Vec::with_capacity(4);
        for f in 0..4u8 {
            match t.gluing(tet, f) {
                Some(g) => {
                    let p = g.perm.0;
                    recs.push(format!("{}:{}:{}{}{}{}", g.tet, g.face, p[0], p[1], p[2], p[3]));
                }
                None => {
                    let mark = t.marks[tet][f as usize].as_deref().unwrap_or("-");
                    recs.push(format!("bd:{mark}"));
                }
            }
        }
        out.push_str(&recs.join(" "));
        out.push('\n');
    }
    if let Some(coords) = &t.coords {
        for (v, c) in coords.iter().enumerate() {
            out.push_str(&format!("coord {} {} {} {}\n", v, c[0], c[1], c[2]));
        }
    }
    out
}

pub fn parse_triangulation(text: &str) -> Result<Triangulation, ComplexError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let head = lines.next().ok_or_else(|| ComplexError::Syntax("empty input".into()))?;
    let n: usize = head
        .trim()
        .strip_prefix("tets=")
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| ComplexError::Syntax("expected 'tets=N' header".into()))?;
    let mut gluings = Vec::with_capacity(n);
    let mut marks = Vec::with_capacity(n);
    for tet in 0..n {
        let line = lines
            .next()
            .ok_or_else(|| ComplexError::Syntax(format!("missing line for tet {tet}")))?;
        let recs: Vec<&str> = line.split_whitespace().collect();
        if recs.len() != 4 {
            return Err(ComplexError::Syntax(format!("tet {tet}: expected 4 records")));
        }
        let mut grow: [Option<Gluing>; 4] = [None, None, None, None];
        let mut mrow: [Option<String>; 4] = [None, None, None, None];
        for (f, rec) in recs.iter().enumerate() {
            if let Some(mark) = rec.strip_prefix("bd:") {
                mrow[f] = if mark == "-" { None } else { Some(mark.to_string()) };
                continue;
            }
            let parts: Vec<&str> = rec.split(':').collect();
            if parts.len() != 3 {
                return Err(ComplexError::Syntax(format!("tet {tet} face {f}: bad record '{rec}'")));
            }
            let tt: usize =
                parts[0].parse().map_err(|_| ComplexError::Syntax(format!("bad tet id '{}'", parts[0])))?;
            let ff: u8 =
                parts[1].parse().map_err(|_| ComplexError::Syntax(format!("bad face id '{}'", parts[1])))?;
            let pd = parts[2].as_bytes();
            if pd.len() != 4 || pd.iter().any(|b| !(b'0'..=b'3').contains(b)) {
                return Err(ComplexError::Syntax(format!("bad perm '{}'", parts[2])));
            }
            let perm = Perm4([pd[0] - b'0', pd[1] - b'0', pd[2] - b'0', pd[3] - b'0']);
            if !perm.is_valid() || ff > 3 {
                return Err(ComplexError::Syntax(format!("bad gluing record '{rec}'")));
            }
            grow[f] = Some(Gluing { tet: tt, face: ff, perm });
        }
        gluings.push(grow);
        marks.push(mrow);
    }
    let mut coords: Vec<(usize, [BigInt; 3])> = Vec::new();
    for line in lines {
        let toks: Vec<&str> = line.split_whitespace().collect();
        if toks.len() == 5 && toks[0] == "coord" {
            let v: usize =
                toks[1].parse().map_err(|_| ComplexError::Syntax("bad coord vertex".into()))?;
            let mut c = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
            for k in 0..3 {
                c[k] = toks[2 + k]
                    .parse()
                    .map_err(|_| ComplexError::Syntax(format!("bad coordinate '{}'", toks[2 + k])))?;
            }
            coords.push((v, c));
        } else {
            return Err(ComplexError::Syntax(format!("unexpected line '{line}'")));
        }
    }
    let mut t = Triangulation::new(gluings, marks);
    t.check_involutive()?;
    if !coords.is_empty() {
        let sk = t.skeleton()?;
        let mut table = vec![[BigInt::from(0), BigInt::from(0), BigInt::from(0)]; sk.vertex_count];
        for (v, c) in coords {
            if v >= sk.vertex_count {
                return Err(ComplexError::Syntax(format!("coord vertex {v} out of range")));
            }
            table[v] = c;
        }
        t.coords = Some(table);
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{one_tet_ball, two_tet_sphere};

    #[test]
    fn roundtrip_bit_exact() {
        for t in [one_tet_ball(), two_tet_sphere()] {
            let s = serialize_triangulation(&t);
            let t2 = parse_triangulation(&s).unwrap();
            assert_eq!(serialize_triangulation(&t2), s);
            assert_eq!(t2, t);
        }
    }

    #[test]
    fn rejects_bad_involution() {
        let text = "tets=2\n1:0:0123 bd:- bd:- bd:-\n0:2:0123 bd:- bd:- bd:-\n";
        assert!(matches!(parse_triangulation(text), Err(ComplexError::NotInvolutive { .. })));
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_triangulation("tets=1\nbd:- bd:- bd:-\n").is_err());
        assert!(parse_triangulation("tets=1\nbd:- bd:- bd:- bd:-\nwhat\n").is_err());
    }
}
