//! Dynkin diagram rendering as plain text and Graphviz DOT.
//!
//! Bond multiplicity is `max(|a_ij|, |a_ji|)` when the smaller entry is 1
//! and the product is at most 3; other nonzero pairs are drawn as a single
//! bond labeled `(|a_ij|,|a_ji|)`. Arrows point at the shorter root.

use serde::Serialize;

use crate::gcm::Gcm;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Marker {
    /// Vertex outside `J`.
    Black,
    /// Vertex in `J`.
    White,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Node {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub marker: Option<Marker>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Edge {
    pub from: String,
    pub to: String,
    /// Number of lines, 0 for a labeled bond.
    pub multiplicity: u8,
    /// Endpoint the arrow points at (the shorter root).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub arrow_to: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagram {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
}

impl Diagram {
    pub fn of(gcm: &Gcm) -> Self {
        Self::build(gcm, None)
    }

    /// Vertices in `j_set` drawn white, the rest black.
    pub fn of_pair(gcm: &Gcm, j_set: &[usize]) -> Self {
        Self::build(gcm, Some(j_set))
    }

    fn build(gcm: &Gcm, j_set: Option<&[usize]>) -> Self {
        let n = gcm.n();
        let nodes = (0..n)
            .map(|i| Node {
                label: gcm.label(i).to_string(),
                marker: j_set.map(|j| {
                    if j.contains(&i) {
                        Marker::White
                    } else {
                        Marker::Black
                    }
                }),
            })
            .collect();
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (x, y) = (gcm.a(i, j).abs(), gcm.a(j, i).abs());
                if x == 0 {
                    continue;
                }
                let classical = x.min(y) == 1 && x * y <= 3;
                let arrow_to = if classical && x != y {
                    // the row with the larger entry is the shorter root
                    Some(gcm.label(if x > y { i } else { j }).to_string())
                } else {
                    None
                };
                edges.push(Edge {
                    from: gcm.label(i).to_string(),
                    to: gcm.label(j).to_string(),
                    multiplicity: if classical { x.max(y) as u8 } else { 0 },
                    arrow_to,
                    label: (!classical).then(|| format!("({x},{y})")),
                });
            }
        }
        Self { nodes, edges }
    }

    /// One line of vertices, then one line per bond.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let verts: Vec<String> = self
            .nodes
            .iter()
            .map(|v| match v.marker {
                Some(Marker::Black) => format!("●{}", v.label),
                Some(Marker::White) => format!("○{}", v.label),
                None => v.label.clone(),
            })
            .collect();
        out.push_str(&format!("vertices: {}\n", verts.join(" ")));
        for e in &self.edges {
            let bond = match (e.multiplicity, &e.label) {
                (0, Some(l)) => format!("-{l}-"),
                (m, _) => {
                    let line = ["-", "=", "≡"][m as usize - 1].repeat(2);
                    match &e.arrow_to {
                        Some(t) if *t == e.to => format!("{line}>"),
                        Some(_) => format!("<{line}"),
                        None => line,
                    }
                }
            };
            out.push_str(&format!("{} {bond} {}\n", e.from, e.to));
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut out =
            String::from("graph dynkin {\n  node [shape=circle, label=\"\", xlabel=\"\\N\"];\n");
        for v in &self.nodes {
            let style = match v.marker {
                Some(Marker::Black) => ", style=filled, fillcolor=black",
                Some(Marker::White) | None => "",
            };
            out.push_str(&format!(
                "  \"{}\" [xlabel=\"{}\"{style}];\n",
                v.label, v.label
            ));
        }
        for e in &self.edges {
            let mut attrs = Vec::new();
            match (e.multiplicity, &e.label) {
                (0, Some(l)) => attrs.push(format!("label=\"{l}\"")),
                (1, _) => {}
                (m, _) => attrs.push(format!(
                    "color=\"{}\"",
                    vec!["black"; m as usize].join(":invis:")
                )),
            }
            if let Some(t) = &e.arrow_to {
                attrs.push(if *t == e.to {
                    "dir=forward".into()
                } else {
                    "dir=back".into()
                });
            }
            let attrs = if attrs.is_empty() {
                String::new()
            } else {
                format!(" [{}]", attrs.join(", "))
            };
            out.push_str(&format!("  \"{}\" -- \"{}\"{attrs};\n", e.from, e.to));
        }
        out.push_str("}\n");
        out
    }
}
