//! Shared fixtures for the benchmarks.

use std::sync::Arc;

use gitfan_core::{DimVector, Quiver};

/// A benchmark instance: a quiver and a dimension vector.
pub struct Fixture {
    pub name: &'static str,
    pub quiver: Arc<Quiver>,
    pub beta: DimVector,
}

fn fixture(name: &'static str, vertices: &[&str], arrows: &[(&str, &str, &str)], beta: &[u32]) -> Fixture {
    let quiver = Quiver::new(vertices.iter().copied(), arrows.iter().copied()).expect("acyclic");
    Fixture {
        name,
        quiver: Arc::new(quiver),
        beta: DimVector::new(beta.to_vec()),
    }
}

pub fn fixtures() -> Vec<Fixture> {
    vec![
        fixture("a2", &["x", "y"], &[("a", "x", "y")], &[1, 1]),
        fixture("k2_22", &["x", "y"], &[("a", "x", "y"), ("b", "x", "y")], &[2, 2]),
        fixture("s2", &["x", "y", "z"], &[("a", "x", "z"), ("b", "y", "z")], &[1, 1, 1]),
        fixture("a3", &["x", "y", "z"], &[("a", "x", "y"), ("b", "y", "z")], &[1, 1, 1]),
        fixture(
            "square",
            &["x", "y", "z", "w"],
            &[("a", "x", "z"), ("b", "x", "w"), ("c", "y", "z"), ("d", "y", "w")],
            &[1, 1, 1, 1],
        ),
    ]
}

/// Star with `arms` sources pointing at one sink, all dimensions 1.
pub fn star(arms: usize) -> Fixture {
    let names: Vec<String> = (0..=arms).map(|i| format!("v{i}")).collect();
    let arrows: Vec<(String, String, String)> =
        (1..=arms).map(|i| (format!("a{i}"), names[i].clone(), names[0].clone())).collect();
    let quiver = Quiver::new(names.iter().map(String::as_str), arrows.iter().map(|(a, t, h)| (a.as_str(), t.as_str(), h.as_str())))
        .expect("acyclic");
    Fixture {
        name: "star",
        quiver: Arc::new(quiver),
        beta: DimVector::new(vec![1; arms + 1]),
    }
}
