//! Browser bindings: analyze a group, list its normal subgroups, and the
//! table of worked examples. Every export returns a JSON string.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use classgraph::constructions::{build, example_catalog, resolve, select_normals, BuiltGroup};
use classgraph::theorems::{audit_pair, Check, Verdict};
use classgraph::{ClassGraph, GroupError};

#[derive(Serialize)]
struct Vertex {
    id: usize,
    size: u64,
}

#[derive(Serialize)]
struct PairView {
    normal: String,
    normal_order: usize,
    center_meet_order: usize,
    class_sizes: Vec<u64>,
    shape: &'static str,
    vertices: Vec<Vertex>,
    edges: Vec<(usize, usize)>,
    triangles: usize,
    components: usize,
    checks: Vec<Check>,
    dot: String,
}

#[derive(Serialize)]
struct AnalyzeView {
    group: String,
    group_order: usize,
    degree: usize,
    pairs: Vec<PairView>,
}

#[derive(Serialize)]
struct NormalView {
    selector: String,
    order: usize,
    index: usize,
}

#[derive(Serialize)]
struct ExampleView {
    id: &'static str,
    description: &'static str,
    spec: String,
    normal: String,
    expected: Vec<u64>,
    computed: Option<Vec<u64>>,
    status: &'static str,
    error: Option<String>,
}

fn load(source: &str) -> Result<BuiltGroup, GroupError> {
    let source = source.trim();
    let source = source.strip_prefix("builtin:").unwrap_or(source);
    if source.starts_with("file:") || source.ends_with(".json") {
        return Err(GroupError::InvalidSpec("files are not available in the browser".into()));
    }
    build(&resolve(source)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("views serialize")
}

/// Class sizes, graph and applicable checks for each selected subgroup.
pub fn analyze_json(group: &str, selector: &str) -> Result<String, String> {
    let built = load(group).map_err(|e| e.to_string())?;
    let name = group.trim().to_string();
    let g = &built.group;
    let mut pairs = Vec::new();
    for (desc, n) in select_normals(&built, selector.trim()).map_err(|e| e.to_string())? {
        let report = audit_pair(g, &n, &name, &desc).map_err(|e| e.to_string())?;
        let graph = ClassGraph::from_sizes(&report.class_sizes);
        pairs.push(PairView {
            normal: desc.clone(),
            normal_order: report.n_order,
            center_meet_order: report.center_meet_order,
            shape: report.shape.tag.as_str(),
            vertices: graph
                .vertices
                .iter()
                .map(|v| Vertex { id: v.id, size: v.size })
                .collect(),
            edges: graph.edges(),
            triangles: report.shape.triangles,
            components: report.shape.components,
            checks: report
                .checks
                .into_iter()
                .filter(|c| c.verdict != Verdict::NotApplicable)
                .map(|mut c| {
                    c.counterexample = None;
                    c
                })
                .collect(),
            dot: graph.to_dot(&format!("{name} / {desc}")),
            class_sizes: report.class_sizes,
        });
    }
    Ok(to_json(&AnalyzeView {
        group: name,
        group_order: g.order(),
        degree: g.degree(),
        pairs,
    }))
}

/// The normal lattice, smallest first, with `index:i` selectors.
pub fn normal_subgroups_json(group: &str) -> Result<String, String> {
    let built = load(group).map_err(|e| e.to_string())?;
    let views: Vec<NormalView> = built
        .group
        .normal_subgroups()
        .iter()
        .enumerate()
        .map(|(index, n)| NormalView {
            selector: format!("index:{index}"),
            order: n.order(),
            index,
        })
        .collect();
    Ok(to_json(&views))
}

/// Expected against computed class sizes for every worked example.
pub fn examples_json() -> String {
    let rows: Vec<ExampleView> = example_catalog()
        .into_iter()
        .map(|entry| {
            let computed = build(&entry.spec).and_then(|built| {
                let n = entry
                    .normal
                    .resolve(&built)
                    .ok_or_else(|| GroupError::InvalidSpec("selector matches nothing".into()))?;
                let mut sizes: Vec<u64> = classgraph::g_classes(&built.group, &n)?
                    .iter()
                    .map(|c| c.size as u64)
                    .collect();
                sizes.sort_unstable();
                Ok(sizes)
            });
            let (computed, error) = match computed {
                Ok(s) => (Some(s), None),
                Err(e) => (None, Some(e.to_string())),
            };
            let status = match &computed {
                Some(s) if *s == entry.expected => "MATCH",
                Some(_) => "MISMATCH",
                None => "ERROR",
            };
            ExampleView {
                id: entry.id,
                description: entry.description,
                spec: format!("example:{}", entry.id),
                normal: "name:N".into(),
                expected: entry.expected,
                computed,
                status,
                error,
            }
        })
        .collect();
    to_json(&rows)
}

#[wasm_bindgen]
pub fn analyze(group: &str, selector: &str) -> Result<String, JsError> {
    analyze_json(group, selector).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn normal_subgroups(group: &str) -> Result<String, JsError> {
    normal_subgroups_json(group).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn examples() -> String {
    examples_json()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_gl23() {
        let json = analyze_json("gl23", "order:24").unwrap();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["group_order"], 48);
        assert_eq!(v["pairs"][0]["class_sizes"], serde_json::json!([1, 1, 6, 8, 8]));
        assert_eq!(v["pairs"][0]["shape"], "Triangle");
        assert_eq!(v["pairs"][0]["edges"].as_array().unwrap().len(), 3);
    }

    #[test]
    fn lattice_of_s4() {
        let v: serde_json::Value = serde_json::from_str(&normal_subgroups_json("symmetric:4").unwrap()).unwrap();
        let orders: Vec<u64> = v.as_array().unwrap().iter().map(|n| n["order"].as_u64().unwrap()).collect();
        assert_eq!(orders, vec![1, 4, 12, 24]);
    }

    #[test]
    fn bad_input_is_an_error() {
        assert!(analyze_json("nonsense:3", "all").is_err());
        assert!(analyze_json("gl23", "order:5").is_err());
        assert!(analyze_json("file:x.json", "all").is_err());
    }

    #[test]
    fn example_table() {
        let v: serde_json::Value = serde_json::from_str(&examples_json()).unwrap();
        let rows = v.as_array().unwrap();
        assert_eq!(rows.len(), example_catalog().len());
        assert!(rows.iter().filter(|r| r["status"] == "MATCH").count() >= rows.len() - 1);
    }
}
