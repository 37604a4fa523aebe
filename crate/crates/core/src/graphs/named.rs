//! Fixed constructions, mostly given by their graph6 strings.

use super::{parse_graph6, Graph};

/// The unique (3,5)-Ramsey graph on 13 vertices: the Cayley graph on Z13
/// generated by the cubic non-residues.
pub const RAMSEY_13_G6: &str = r"LJ]lmZRnn]]\v[";
pub const SCHLAFLI_G6: &str = r"ZBXzz|z^Z|tFixjTtp|mFk\uqm|gz}]FbHvHqjh]WzFy[RmtSUztaLvyF`vw";
pub const SCHLAFLI_COMPLEMENT_G6: &str = r"Z??G`@?@wrDSLGQoigbKO]CA?^{VDsjIqehgmK[EM[OzIqCyegO|FO_^{?_?";
/// Vertex-transitive on 24 vertices, clique number 3, independence number 6.
pub const VT24_G6: &str = r"W@TBOkkJBBAoSCW?Qv{V}jRrhfC{UEfaRPtAw\_ckqGt`oL";
/// A (3,4)-Ramsey graph of order 8 with two vertex orbits of size 4.
pub const RAMSEY_34_8_G6: &str = r"GK^d}w";
/// A (5,4)-Ramsey graph of order 13 with 5 orbits.
pub const RAMSEY_54_13_G6: &str = r"L@OZ@\Vmmu}hzL";
/// A (3,6)-Ramsey graph of order 17 with 9 orbits.
pub const RAMSEY_36_17_G6: &str = r"P~TktL|vdu{{^]vl[z|v]B~{";
/// A (3,7)-Ramsey graph of order 22 with 11 orbits.
pub const RAMSEY_37_22_G6: &str = r"U`K~vj\zff\Zt]rlzv^Zm}z^v]r~^r}~m}~kn^vG";

fn g6(s: &str) -> Graph {
    parse_graph6(s).expect("built-in graph6 string is valid")
}

pub fn ramsey_13() -> Graph {
    g6(RAMSEY_13_G6)
}

pub fn schlafli() -> Graph {
    g6(SCHLAFLI_G6)
}

pub fn schlafli_complement() -> Graph {
    g6(SCHLAFLI_COMPLEMENT_G6)
}

pub fn vt24() -> Graph {
    g6(VT24_G6)
}

/// Two triangles `{0,1,2}` and `{3,4,5}` joined by the edge `2-3`.
pub fn triangles_joined_by_edge() -> Graph {
    Graph::from_edges(6, &[(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])
}

/// Two triangles sharing vertex 0.
pub fn triangles_sharing_vertex() -> Graph {
    Graph::from_edges(5, &[(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])
}

/// Looped non-adjacent pair `0, 1`, unlooped edge `2-3`, matching `0-2`, `1-3`.
pub fn goodman_gadget() -> Graph {
    let mut g = Graph::from_edges(4, &[(2, 3), (0, 2), (1, 3)]);
    g.set_loop(0, true);
    g.set_loop(1, true);
    g
}

/// Looks up a construction by name; used by the command line.
pub fn by_name(name: &str) -> Option<Graph> {
    let g = match name {
        "ramsey13" | "cr35" => ramsey_13(),
        "schlafli" => schlafli(),
        "schlafli-complement" => schlafli_complement(),
        "vt24" => vt24(),
        "ramsey34-8" => g6(RAMSEY_34_8_G6),
        "ramsey54-13" => g6(RAMSEY_54_13_G6),
        "ramsey36-17" => g6(RAMSEY_36_17_G6),
        "ramsey37-22" => g6(RAMSEY_37_22_G6),
        "goodman-gadget" => goodman_gadget(),
        "triangles-edge" => triangles_joined_by_edge(),
        "triangles-vertex" => triangles_sharing_vertex(),
        "c5-looped-complement" => Graph::cycle(5).looped_complement(),
        "clebsch" => clebsch(),
        "petersen" => petersen(),
        _ => {
            let (head, tail) = name.split_at(name.find(|c: char| c.is_ascii_digit())?);
            let n: usize = tail.parse().ok()?;
            match head {
                "K" => Graph::complete(n),
                "C" => Graph::cycle(n),
                "P" => Graph::path(n),
                "E" => Graph::empty(n),
                "M" if n.is_multiple_of(2) => Graph::perfect_matching(n),
                _ => return None,
            }
        }
    };
    Some(g)
}

pub const NAMES: &[&str] = &[
    "ramsey13",
    "schlafli",
    "schlafli-complement",
    "vt24",
    "ramsey34-8",
    "ramsey54-13",
    "ramsey36-17",
    "ramsey37-22",
    "goodman-gadget",
    "triangles-edge",
    "triangles-vertex",
    "c5-looped-complement",
    "clebsch",
    "petersen",
    "K<n>",
    "C<n>",
    "P<n>",
    "E<n>",
    "M<n>",
];

pub fn petersen() -> Graph {
    let mut g = Graph::empty(10);
    for i in 0..5 {
        g.add_edge(i, (i + 1) % 5);
        g.add_edge(5 + i, 5 + (i + 2) % 5);
        g.add_edge(i, 5 + i);
    }
    g
}

/// The folded 5-cube: vertices are 4-bit words, adjacent when they differ in
/// one bit or in all four.
pub fn clebsch() -> Graph {
    let mut g = Graph::empty(16);
    for u in 0..16usize {
        for v in u + 1..16 {
            let d = (u ^ v).count_ones();
            if d == 1 || d == 4 {
                g.add_edge(u, v);
            }
        }
    }
    g
}
