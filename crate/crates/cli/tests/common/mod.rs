#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::Command;

use serde_json::Value;

pub struct Run {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn msa(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_msa")).args(args).output().expect("binary runs");
    Run {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

pub fn fixture(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).expect("fixture exists")).expect("fixture parses")
}

/// Rational string `p` or `p/q` in lowest terms with positive denominator.
fn rational(s: &str) -> (i64, i64) {
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p.trim().parse::<i64>().unwrap(), q.trim().parse::<i64>().unwrap()),
        None => (s.trim().parse::<i64>().unwrap(), 1),
    };
    let g = gcd(p.abs(), q.abs()).max(1);
    let sign = if q < 0 { -1 } else { 1 };
    (sign * p / g, sign * q / g)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

type Relation = Vec<((i64, i64), Vec<String>)>;

/// Sorted terms, scaled so the first coefficient is positive; relations sorted.
fn normalize_relations(mut rels: Vec<Relation>) -> Vec<Relation> {
    for r in rels.iter_mut() {
        r.sort_by(|a, b| a.1.cmp(&b.1));
        if r.first().is_some_and(|t| t.0 .0 < 0) {
            r.iter_mut().for_each(|t| t.0 .0 = -t.0 .0);
        }
    }
    rels.sort();
    rels
}

#[derive(Debug, PartialEq, Eq)]
pub struct Shape {
    pub vertices: Vec<String>,
    pub arrows: Vec<(String, String, String)>,
    pub relations: Vec<Relation>,
}

/// Presentation of a listing entry in the program's own labels.
pub fn shape_of_presentation(p: &Value) -> Shape {
    let q = &p["quiver"];
    let mut vertices: Vec<String> = q["vertices"].as_array().unwrap().iter().map(|v| v.as_str().unwrap().to_string()).collect();
    vertices.sort();
    let mut arrows: Vec<(String, String, String)> = q["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (a["name"].as_str().unwrap().into(), a["src"].as_str().unwrap().into(), a["tgt"].as_str().unwrap().into()))
        .collect();
    arrows.sort();
    let relations = p["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|t| {
                    let path = t["path"].as_array().unwrap().iter().map(|x| x.as_str().unwrap().to_string()).collect();
                    (rational(t["coeff"].as_str().unwrap()), path)
                })
                .collect()
        })
        .collect();
    Shape {
        vertices,
        arrows,
        relations: normalize_relations(relations),
    }
}

/// Golden entry rewritten in the program's labels: vertices `v_k` become
/// signed labels, glued vertices join labels with `+` in label order, and
/// arrow names follow the fixture's table.
pub fn shape_of_golden(entry: &Value, vertex_names: &Value, arrow_names: &Value) -> Shape {
    let vertex = |s: &str| -> String {
        let mut parts: Vec<i32> = s.split('+').map(|p| vertex_names[p].as_str().expect("known vertex").parse().unwrap()).collect();
        parts.sort();
        parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("+")
    };
    let arrow = |s: &str| -> String { arrow_names[s].as_str().unwrap_or_else(|| panic!("unknown arrow {s}")).to_string() };
    let mut arrows: Vec<(String, String, String)> = entry["arrows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|a| (arrow(a[0].as_str().unwrap()), vertex(a[1].as_str().unwrap()), vertex(a[2].as_str().unwrap())))
        .collect();
    arrows.sort();
    let mut vertices: Vec<String> = arrows.iter().flat_map(|a| [a.1.clone(), a.2.clone()]).collect();
    vertices.sort();
    vertices.dedup();
    let relations = entry["relations"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| {
            r.as_array()
                .unwrap()
                .iter()
                .map(|t| (rational(t[0].as_str().unwrap()), t[1].as_array().unwrap().iter().map(|x| arrow(x.as_str().unwrap())).collect()))
                .collect()
        })
        .collect();
    Shape {
        vertices,
        arrows,
        relations: normalize_relations(relations),
    }
}

/// Tag of a golden entry: glued pairs give `A_{i,j}`, split edges `A_{i}`
/// with `i` the smaller label of the edge.
pub fn golden_tag(entry: &Value, vertex_names: &Value) -> String {
    let label = |v: &Value| -> i32 { vertex_names[v.as_str().unwrap()].as_str().unwrap().parse().unwrap() };
    if let Some(g) = entry.get("glued") {
        let (a, b) = (label(&g[0]), label(&g[1]));
        format!("A_{{{},{}}}", a.min(b), a.max(b))
    } else {
        let e = &entry["edge"];
        format!("A_{{{}}}", label(&e[0]).min(label(&e[1])))
    }
}

/// Compares a listing from `enumerate --format json` against the golden
/// equioriented file; returns the mismatches.
pub fn compare_with_golden(listing: &Value, golden: &Value) -> Vec<String> {
    let mut problems = Vec::new();
    let (vn, an) = (&golden["vertex_names"], &golden["arrow_names"]);
    let reps: BTreeMap<String, &Value> = listing["reps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| (r["tag"].as_str().unwrap().to_string(), &r["presentation"]))
        .collect();
    let entries: Vec<&Value> = ["separable", "split"].iter().flat_map(|k| golden[*k].as_array().unwrap()).collect();
    if entries.len() != reps.len() {
        problems.push(format!("{} golden rows, {} listed", entries.len(), reps.len()));
    }
    for e in entries {
        let tag = golden_tag(e, vn);
        let name = e["algebra"].as_str().unwrap();
        match reps.get(&tag) {
            None => problems.push(format!("{name}: no representative {tag}")),
            Some(p) => {
                let (got, want) = (shape_of_presentation(p), shape_of_golden(e, vn, an));
                if got != want {
                    problems.push(format!("{name} ({tag}): got {got:?}, expected {want:?}"));
                }
            }
        }
    }
    problems
}
