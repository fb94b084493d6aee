//! Loads the shipped catalog and the reference data exported alongside it.

#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use charseries::group::{from_generators, FiniteGroup, GroupConfig, PermSpec};
use serde::Deserialize;

#[derive(Deserialize)]
struct Raw {
    id: String,
    order: usize,
    degree: usize,
    generators: Vec<Vec<usize>>,
}

pub struct Entry {
    pub id: String,
    pub group: FiniteGroup,
}

#[derive(Deserialize, Clone, Debug)]
pub struct Reference {
    pub id: String,
    pub aut_order: usize,
    pub aut_supersolvable: bool,
    pub solvable: bool,
    pub supersolvable: bool,
    pub abelian: bool,
    pub nr_normal_subgroups: usize,
    pub center_order: usize,
}

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn catalog() -> Vec<Entry> {
    std::fs::read_to_string(data("small_groups_1_63.jsonl"))
        .unwrap()
        .lines()
        .map(|l| {
            let r: Raw = serde_json::from_str(l).unwrap();
            let group = from_generators(
                &PermSpec::new(r.degree, r.generators),
                100_000,
                &GroupConfig::default(),
            )
            .unwrap();
            assert_eq!(group.order(), r.order, "{}", r.id);
            Entry { id: r.id, group }
        })
        .collect()
}

pub fn reference() -> HashMap<String, Reference> {
    std::fs::read_to_string(data("reference_1_63.jsonl"))
        .unwrap()
        .lines()
        .map(|l| {
            let r: Reference = serde_json::from_str(l).unwrap();
            (r.id.clone(), r)
        })
        .collect()
}
