#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use slopelab::rational::{ratio, Rational};
use slopelab::{Fiber, SingularityForest, SingularityNode};

/// Largest multiplicity drawn for ordinary nodes. Even genus stops at g+1:
/// normalized models of even genus carry no multiplicity-(g+2) points.
fn cap(g: u32) -> u32 {
    if g.is_multiple_of(2) {
        g + 1
    } else {
        g + 2
    }
}

fn random_node(rng: &mut ChaCha8Rng, g: u32, m: u32, budget: &mut usize) -> SingularityNode {
    let mut node = SingularityNode::leaf(m);
    if *budget == 0 {
        return node;
    }
    // Odd points often resolve through a (m -> m) pair.
    if m % 2 == 1 && m >= 3 && rng.gen_bool(0.4) {
        *budget -= 1;
        let child_m = m + 1;
        let child = random_node(rng, g, child_m, budget);
        node.children.push(child);
        return node;
    }
    let kids = rng.gen_range(0..=2usize).min(*budget);
    for _ in 0..kids {
        if *budget == 0 {
            break;
        }
        *budget -= 1;
        let limit = if m.is_multiple_of(2) { m } else { m + 1 };
        let limit = limit.min(cap(g));
        let child_m = rng.gen_range(2..=limit);
        node.children.push(random_node(rng, g, child_m, budget));
    }
    node
}

/// A valid forest with at most `max_nodes` nodes and a random rational `n`.
pub fn random_forest(rng: &mut ChaCha8Rng, g: u32, max_nodes: usize) -> SingularityForest {
    let mut budget = rng.gen_range(0..=max_nodes);
    let fiber_count = rng.gen_range(1..=3usize);
    let mut fibers: Vec<Fiber> = (0..fiber_count).map(|_| Fiber { roots: Vec::new() }).collect();
    while budget > 0 {
        budget -= 1;
        let m = rng.gen_range(2..=cap(g));
        let root = random_node(rng, g, m, &mut budget);
        let f = rng.gen_range(0..fiber_count);
        fibers[f].roots.push(root);
    }
    let n: Rational = ratio(rng.gen_range(-50..=400), rng.gen_range(1..=7));
    SingularityForest::new(g, n, fibers)
}

fn negligible_chain(rng: &mut ChaCha8Rng, top: u32) -> SingularityNode {
    let m = rng.gen_range(2..=top.min(3));
    let mut node = SingularityNode::leaf(m);
    if rng.gen_bool(0.5) {
        node.children.push(negligible_chain(rng, m));
    }
    node
}

fn even_paths(n: &SingularityNode, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if n.m.is_multiple_of(2) {
        out.push(path.clone());
    }
    for (i, c) in n.children.iter().enumerate() {
        path.push(i);
        even_paths(c, path, out);
        path.pop();
    }
}

/// Inserts a chain of multiplicity-2/3 points either as a new root or under
/// an even-multiplicity node, where it cannot disturb any `(2k+1 -> 2k+1)`
/// pair.
pub fn insert_negligible_chain(rng: &mut ChaCha8Rng, f: &SingularityForest) -> SingularityForest {
    let mut out = f.clone();
    if out.fibers.is_empty() {
        out.fibers.push(Fiber { roots: Vec::new() });
    }
    // (fiber, root, child path)
    let mut hosts: Vec<(usize, usize, Vec<usize>)> = Vec::new();
    for (fi, fiber) in out.fibers.iter().enumerate() {
        for (ri, root) in fiber.roots.iter().enumerate() {
            let mut paths = Vec::new();
            even_paths(root, &mut Vec::new(), &mut paths);
            hosts.extend(paths.into_iter().map(|p| (fi, ri, p)));
        }
    }
    if hosts.is_empty() || rng.gen_bool(0.4) {
        let chain = negligible_chain(rng, 3);
        let fi = rng.gen_range(0..out.fibers.len());
        out.fibers[fi].roots.push(chain);
    } else {
        let (fi, ri, path) = hosts.swap_remove(rng.gen_range(0..hosts.len()));
        let mut host = &mut out.fibers[fi].roots[ri];
        for i in path {
            host = &mut host.children[i];
        }
        let chain = negligible_chain(rng, host.m);
        host.children.push(chain);
    }
    out
}
