//! WebAssembly bindings for the browser demo.
//!
//! Graphs cross the boundary in the text file format. Matchings come back
//! as indices into the input's edge list, profiles as one byte per weight.

use algmatch::{MatchingResult, Outcome, Solver, WeightedGraph};
use rand_chacha::ChaCha8Rng;
use rand_core::SeedableRng;
use wasm_bindgen::prelude::*;

fn parse(text: &str) -> Result<(WeightedGraph, Solver), String> {
    let g: WeightedGraph = text.parse().map_err(|e| format!("{e}"))?;
    let solver = Solver::for_instance_size(g.n());
    Ok((g, solver))
}

fn edge_indices(g: &WeightedGraph, m: &MatchingResult) -> Vec<u32> {
    m.edges
        .iter()
        .map(|e| g.edges().iter().position(|f| f == e).expect("edge of g") as u32)
        .collect()
}

fn found_indices(g: &WeightedGraph, got: Outcome<MatchingResult>) -> Option<Vec<u32>> {
    match got {
        Outcome::Found(m) => Some(edge_indices(g, &m)),
        Outcome::Infeasible { .. } => None,
    }
}

pub fn profile_of(text: &str, seed: u64) -> Result<Vec<u8>, String> {
    let (g, s) = parse(text)?;
    let p = s
        .weight_profile(&g, &mut ChaCha8Rng::seed_from_u64(seed))
        .map_err(|e| e.to_string())?;
    Ok(p.feasible.iter().map(|&b| u8::from(b)).collect())
}

pub fn perfect_matching_of(text: &str, seed: u64) -> Result<Option<Vec<u32>>, String> {
    let (g, s) = parse(text)?;
    let got = s
        .find_perfect_matching(&g, &mut ChaCha8Rng::seed_from_u64(seed))
        .map_err(|e| e.to_string())?;
    Ok(found_indices(&g, got))
}

pub fn exact_matching_of(text: &str, k: usize, seed: u64) -> Result<Option<Vec<u32>>, String> {
    let (g, s) = parse(text)?;
    let got = s
        .find_exact_matching(&g, k, &mut ChaCha8Rng::seed_from_u64(seed))
        .map_err(|e| e.to_string())?;
    Ok(found_indices(&g, got))
}

/// `feasible[k]` for `k = 0..=n/2`.
#[wasm_bindgen]
pub fn weight_profile(graph: &str, seed: u64) -> Result<Vec<u8>, JsError> {
    profile_of(graph, seed).map_err(|e| JsError::new(&e))
}

/// Edge indices of a perfect matching, or `undefined` if none was found.
#[wasm_bindgen]
pub fn perfect_matching(graph: &str, seed: u64) -> Result<Option<Vec<u32>>, JsError> {
    perfect_matching_of(graph, seed).map_err(|e| JsError::new(&e))
}

/// Edge indices of a perfect matching with exactly `k` heavy edges.
#[wasm_bindgen]
pub fn exact_matching(graph: &str, k: usize, seed: u64) -> Result<Option<Vec<u32>>, JsError> {
    exact_matching_of(graph, k, seed).map_err(|e| JsError::new(&e))
}
