//! `G`-conjugacy classes inside a normal subgroup and the graph on their sizes.
//!
//! Vertices of the graph are the classes of size greater than one; two
//! vertices are adjacent when their sizes share a prime factor.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::arith::gcd;
use crate::error::{GroupError, Result};
use crate::group::{FiniteGroup, Subgroup};

/// One `G`-class inside `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GClass {
    /// Index of the lexicographically smallest member.
    pub representative: usize,
    pub members: FixedBitSet,
    pub size: usize,
    pub rep_order: u64,
}

impl GClass {
    pub fn elements(&self) -> Vec<usize> {
        self.members.ones().collect()
    }
}

/// Partition of `N` into conjugation orbits under all of `G`.
///
/// Sorted by `(size, representative order, representative)`; the position in
/// the returned list is the class id used everywhere else.
pub fn g_classes(g: &FiniteGroup, n: &Subgroup) -> Result<Vec<GClass>> {
    if !g.is_normal(n) {
        return Err(GroupError::NotNormal);
    }
    let mut classes: Vec<GClass> = g
        .conjugation_orbits(n.members())
        .into_iter()
        .map(|orbit| {
            let representative = *orbit
                .iter()
                .min_by(|&&a, &&b| g.element(a).cmp(g.element(b)))
                .expect("orbits are nonempty");
            let mut members = FixedBitSet::with_capacity(g.order());
            for &x in &orbit {
                members.insert(x);
            }
            GClass {
                representative,
                size: orbit.len(),
                rep_order: g.order_of(representative),
                members,
            }
        })
        .collect();
    classes.sort_by(|a, b| {
        (a.size, a.rep_order)
            .cmp(&(b.size, b.rep_order))
            .then_with(|| g.element(a.representative).cmp(g.element(b.representative)))
    });
    Ok(classes)
}

/// A vertex: class id and class size.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: usize,
    pub size: u64,
}

#[derive(Clone, Debug)]
pub struct ClassGraph {
    pub vertices: Vec<Vertex>,
    pub adjacency: Vec<Vec<bool>>,
    /// Ids of the size-one classes left out of the vertex set.
    pub central_classes: Vec<usize>,
    /// All class sizes, indexed by class id.
    pub class_sizes: Vec<u64>,
}

impl ClassGraph {
    /// Builds the graph from class sizes indexed by class id.
    pub fn from_sizes(class_sizes: &[u64]) -> ClassGraph {
        let mut vertices = Vec::new();
        let mut central_classes = Vec::new();
        for (id, &size) in class_sizes.iter().enumerate() {
            if size > 1 {
                vertices.push(Vertex { id, size });
            } else {
                central_classes.push(id);
            }
        }
        let adjacency = vertices
            .iter()
            .enumerate()
            .map(|(i, a)| {
                vertices
                    .iter()
                    .enumerate()
                    .map(|(j, b)| i != j && gcd(a.size, b.size) > 1)
                    .collect()
            })
            .collect();
        ClassGraph {
            vertices,
            adjacency,
            central_classes,
            class_sizes: class_sizes.to_vec(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .count()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.vertices.len();
        (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.adjacency[i][j])
            .collect()
    }

    /// Connected components as sorted lists of vertex positions.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertices.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut k = 0;
            while k < comp.len() {
                let v = comp[k];
                for w in 0..n {
                    if self.adjacency[v][w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                    }
                }
                k += 1;
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn triangle_count(&self) -> usize {
        let n = self.vertices.len();
        let mut count = 0;
        for i in 0..n {
            for j in i + 1..n {
                if !self.adjacency[i][j] {
                    continue;
                }
                for k in j + 1..n {
                    if self.adjacency[i][k] && self.adjacency[j][k] {
                        count += 1;
                    }
                }
            }
        }
        count
    }

    /// Whether the given vertex positions are pairwise adjacent.
    pub fn is_complete(&self, set: &[usize]) -> bool {
        set.iter()
            .enumerate()
            .all(|(a, &i)| set[a + 1..].iter().all(|&j| self.adjacency[i][j]))
    }

    /// DOT rendering with nodes `C<id>:<size>`, stable-sorted.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph \"{}\" {{", name.replace('"', "'"));
        for v in &self.vertices {
            let _ = writeln!(out, "  \"C{}:{}\";", v.id, v.size);
        }
        for (i, j) in self.edges() {
            let (a, b) = (self.vertices[i], self.vertices[j]);
            let _ = writeln!(out, "  \"C{}:{}\" -- \"C{}:{}\";", a.id, a.size, b.id, b.size);
        }
        out.push_str("}\n");
        out
    }
}

/// Γ_G(N). `build_gamma(G, G)` is the ordinary class graph of `G`.
pub fn build_gamma(g: &FiniteGroup, n: &Subgroup) -> Result<ClassGraph> {
    let classes = g_classes(g, n)?;
    Ok(graph_of(&classes))
}

pub fn graph_of(classes: &[GClass]) -> ClassGraph {
    let sizes: Vec<u64> = classes.iter().map(|c| c.size as u64).collect();
    ClassGraph::from_sizes(&sizes)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ShapeTag {
    Empty,
    OneVertex,
    TwoIsolated,
    TwoEdge,
    ThreeOneEdge,
    ThreeLine,
    Triangle,
    Other,
}

impl ShapeTag {
    pub fn as_str(self) -> &'static str {
        match self {
            ShapeTag::Empty => "Empty",
            ShapeTag::OneVertex => "OneVertex",
            ShapeTag::TwoIsolated => "TwoIsolated",
            ShapeTag::TwoEdge => "TwoEdge",
            ShapeTag::ThreeOneEdge => "ThreeOneEdge",
            ShapeTag::ThreeLine => "ThreeLine",
            ShapeTag::Triangle => "Triangle",
            ShapeTag::Other => "Other",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphShape {
    pub tag: ShapeTag,
    pub vertices: usize,
    pub edges: usize,
    pub triangles: usize,
    pub components: usize,
}

pub fn classify_shape(graph: &ClassGraph) -> GraphShape {
    let vertices = graph.vertex_count();
    let edges = graph.edge_count();
    let triangles = graph.triangle_count();
    let components = graph.components().len();
    let tag = match (vertices, edges) {
        (0, _) => ShapeTag::Empty,
        (1, _) => ShapeTag::OneVertex,
        (2, 0) => ShapeTag::TwoIsolated,
        (2, 1) => ShapeTag::TwoEdge,
        (3, 1) => ShapeTag::ThreeOneEdge,
        (3, 2) => ShapeTag::ThreeLine,
        (3, 3) => ShapeTag::Triangle,
        _ => ShapeTag::Other,
    };
    GraphShape {
        tag,
        vertices,
        edges,
        triangles,
        components,
    }
}

/// A class is real when it is closed under inversion.
pub fn is_real_class(g: &FiniteGroup, class: &GClass) -> bool {
    class.members.ones().all(|x| class.members.contains(g.inv(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn cyc(degree: usize, cycles: &[&[u32]]) -> Permutation {
        Permutation::from_cycles(degree, cycles).unwrap()
    }

    fn s4() -> FiniteGroup {
        FiniteGroup::generate(4, vec![cyc(4, &[&[0, 1]]), cyc(4, &[&[0, 1, 2, 3]])]).unwrap()
    }

    #[test]
    fn s4_on_a4() {
        let g = s4();
        let a4 = g.derived_subgroup();
        let classes = g_classes(&g, &a4).unwrap();
        let sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
        assert_eq!(sizes, vec![1, 3, 8]);
        let shape = classify_shape(&graph_of(&classes));
        assert_eq!(shape.tag, ShapeTag::TwoIsolated);
        assert_eq!(shape.components, 2);
        // 3-cycles are real in S4
        assert!(is_real_class(&g, &classes[2]));
    }

    #[test]
    fn non_normal_is_rejected() {
        let g = s4();
        let t = g.index_of(&cyc(4, &[&[0, 1]])).unwrap();
        let h = g.subgroup_generated(&[t]);
        assert_eq!(g_classes(&g, &h).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn trivial_subgroup_has_one_class() {
        let g = s4();
        let classes = g_classes(&g, &g.trivial()).unwrap();
        assert_eq!(classes.len(), 1);
        assert_eq!(classify_shape(&graph_of(&classes)).tag, ShapeTag::Empty);
    }

    #[test]
    fn graph_algorithms_on_sizes() {
        let g = ClassGraph::from_sizes(&[1, 3, 3, 7, 7]);
        assert_eq!(g.components().len(), 2);
        assert!(g.components().iter().all(|c| g.is_complete(c)));
        assert_eq!(g.triangle_count(), 0);
        let q8 = ClassGraph::from_sizes(&[1, 1, 2, 2, 2]);
        assert_eq!(q8.triangle_count(), 1);
        assert_eq!(classify_shape(&q8).tag, ShapeTag::Triangle);
        let empty = ClassGraph::from_sizes(&[1, 1]);
        assert_eq!(empty.components().len(), 0);
        assert_eq!(empty.triangle_count(), 0);
        let line = ClassGraph::from_sizes(&[1, 3, 7, 21]);
        assert_eq!(classify_shape(&line).tag, ShapeTag::ThreeLine);
        let k4 = ClassGraph::from_sizes(&[1, 12, 12, 15, 20]);
        assert_eq!(k4.triangle_count(), 4);
        assert_eq!(classify_shape(&k4).tag, ShapeTag::Other);
    }

    #[test]
    fn dot_is_stable() {
        let g = ClassGraph::from_sizes(&[1, 3, 8]);
        assert_eq!(g.to_dot("S4/A4"), "graph \"S4/A4\" {\n  \"C1:3\";\n  \"C2:8\";\n}\n");
    }

    #[test]
    fn generator_of_z3_is_not_real() {
        let g = FiniteGroup::generate(3, vec![cyc(3, &[&[0, 1, 2]])]).unwrap();
        let classes = g_classes(&g, &g.whole()).unwrap();
        assert!(classes.iter().filter(|c| c.rep_order == 3).all(|c| !is_real_class(&g, c)));
    }
}
