//! Random programs in the accepted C subset, with a consistent profile.

use proptest::prelude::*;

use offload_core::analysis::{LoopCounts, Profile};

#[derive(Debug, Clone)]
pub enum Node {
    For(u64, Vec<Node>),
    While(Vec<Node>),
    Stmt(u8),
}

pub fn node() -> impl Strategy<Value = Node> {
    let leaf = (0u8..7).prop_map(Node::Stmt);
    leaf.prop_recursive(3, 24, 4, |inner| {
        prop_oneof![
            3 => (1u64..6, prop::collection::vec(inner.clone(), 0..4)).prop_map(|(k, b)| Node::For(k, b)),
            1 => prop::collection::vec(inner.clone(), 0..3).prop_map(Node::While),
            2 => (0u8..7).prop_map(Node::Stmt),
        ]
    })
}

pub fn body() -> impl Strategy<Value = Vec<Node>> {
    prop::collection::vec(node(), 1..6)
}

#[derive(Debug, Clone)]
pub struct Generated {
    pub text: String,
    /// Loop-id order matches header order.
    pub profile: Profile,
    pub loops: usize,
}

struct Render {
    out: String,
    profile: Profile,
    next: usize,
}

const WHILE_TRIPS: u64 = 3;

impl Render {
    fn line(&mut self, depth: usize, s: &str) {
        for _ in 0..depth {
            self.out.push_str("    ");
        }
        self.out.push_str(s);
        self.out.push('\n');
    }

    fn stmt(&mut self, depth: usize, k: u8, idx: &str) {
        let s = match k {
            0 => format!("a[{idx}] = b[{idx}] + 1.0;"),
            1 => format!("b[{idx}] = a[{idx}] * 2.0;"),
            2 => format!("s = s + c[{idx}];"),
            3 => format!("t = a[{idx}];"),
            4 => format!("if (s > 1.0) {{ c[{idx}] = t; }}"),
            5 => "a[0] = s;".to_string(),
            _ => format!("c[{idx}] = c[{idx}] * 0.5;"),
        };
        self.line(depth, &s);
    }

    fn nodes(&mut self, nodes: &[Node], depth: usize, counter: Option<&str>, entry: u64) {
        for n in nodes {
            match n {
                Node::Stmt(k) => self.stmt(depth, *k, counter.unwrap_or("0")),
                Node::For(trip, body) => {
                    let id = self.next;
                    self.next += 1;
                    self.profile.entries.insert(id, LoopCounts { entry_count: entry, total_iterations: entry * trip });
                    let name = format!("i{depth}");
                    self.line(depth, &format!("for (int {name} = 0; {name} < {trip}; {name}++) {{"));
                    self.nodes(body, depth + 1, Some(&name), entry * trip);
                    self.line(depth, "}");
                }
                Node::While(body) => {
                    let id = self.next;
                    self.next += 1;
                    self.profile
                        .entries
                        .insert(id, LoopCounts { entry_count: entry, total_iterations: entry * WHILE_TRIPS });
                    self.line(depth, "while (w < 3) {");
                    self.nodes(body, depth + 1, counter, entry * WHILE_TRIPS);
                    self.line(depth + 1, "w = w + 1;");
                    self.line(depth, "}");
                }
            }
        }
    }
}

pub fn render(body: &[Node]) -> Generated {
    let mut r = Render { out: String::new(), profile: Profile::default(), next: 0 };
    r.line(0, "void f(float a[64], float b[64], float c[64]) {");
    r.line(1, "float s = 0.0;");
    r.line(1, "float t = 0.0;");
    r.line(1, "int w = 0;");
    r.nodes(body, 1, None, 1);
    r.line(0, "}");
    let loops = r.next;
    Generated { text: r.out, profile: r.profile, loops }
}

pub fn program() -> impl Strategy<Value = Generated> {
    body().prop_map(|b| render(&b))
}
