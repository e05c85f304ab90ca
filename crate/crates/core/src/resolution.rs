//! Canonical resolution of a branch divisor, modeled as a forest of
//! infinitely near singular points.
//!
//! Each node records the multiplicity `m` of the transformed branch divisor
//! at that point, *including the exceptional curve when the parent had odd
//! multiplicity*. Children are the singular points of the next transform
//! lying on the node's exceptional curve.
//!
//! Two independent routes give the relative invariants of a forest: the
//! direct double-cover computation over the blow-ups ([`resolve_invariants`])
//! and the closed formulas in the singularity indices read off the forest
//! ([`classify_indices`] + [`s2_from_n`] + [`relative_invariants`]).

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::indices::{n_form, relative_invariants, RelativeInvariants, SingularityIndexVector};
use crate::rational::{self, int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityNode {
    pub m: u32,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<SingularityNode>,
}

impl SingularityNode {
    pub fn leaf(m: u32) -> Self {
        Self { m, children: Vec::new() }
    }

    pub fn with_children(m: u32, children: Vec<SingularityNode>) -> Self {
        Self { m, children }
    }

    /// First component of a `(2k+1 -> 2k+1)` singularity: odd multiplicity
    /// with exactly one child, of multiplicity one higher.
    pub fn is_pair_first(&self) -> bool {
        self.m % 2 == 1 && self.m >= 3 && self.children.len() == 1 && self.children[0].m == self.m + 1
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(SingularityNode::node_count).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Fiber {
    #[serde(default)]
    pub roots: Vec<SingularityNode>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SingularityForest {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub schema: Option<u32>,
    pub g: u32,
    /// `n = L²/(g+1)`.
    #[serde(with = "rational::serde_str")]
    pub n: Rational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s2: Option<i64>,
    #[serde(default)]
    pub fibers: Vec<Fiber>,
}

impl SingularityForest {
    pub fn new(g: u32, n: Rational, fibers: Vec<Fiber>) -> Self {
        Self { schema: None, g, n, s2: None, fibers }
    }

    pub fn node_count(&self) -> usize {
        self.fibers.iter().flat_map(|f| &f.roots).map(SingularityNode::node_count).sum()
    }

    fn nodes_preorder(&self) -> Vec<&SingularityNode> {
        fn walk<'a>(n: &'a SingularityNode, out: &mut Vec<&'a SingularityNode>) {
            out.push(n);
            for c in &n.children {
                walk(c, out);
            }
        }
        let mut out = Vec::new();
        for root in self.fibers.iter().flat_map(|f| &f.roots) {
            walk(root, &mut out);
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strictness {
    #[default]
    Lenient,
    /// Also rejects multiplicity `g+2` points for even `g`.
    Strict,
}

pub fn validate_forest(f: &SingularityForest, strictness: Strictness) -> Result<()> {
    if let Some(found) = f.schema {
        if found != 1 {
            return Err(Error::Schema { found });
        }
    }
    if f.g < 2 {
        return Err(Error::GenusTooSmall { g: i64::from(f.g) });
    }
    for (fi, fiber) in f.fibers.iter().enumerate() {
        for (ri, root) in fiber.roots.iter().enumerate() {
            let path = format!("fibers[{fi}].roots[{ri}]");
            validate_node(root, None, &path, f.g, strictness)?;
        }
    }
    Ok(())
}

/// `parent` is `(multiplicity, number of children)` of the parent node.
fn validate_node(
    node: &SingularityNode,
    parent: Option<(u32, usize)>,
    path: &str,
    g: u32,
    strictness: Strictness,
) -> Result<()> {
    let m = node.m;
    if m < 2 {
        return Err(Error::MultiplicityTooSmall { path: path.to_string(), m });
    }
    // The second component of a (g+2 -> g+2) singularity sits at g+3.
    let max = match parent {
        Some((pm, 1)) if pm == g + 2 => g + 3,
        _ => g + 2,
    };
    if m > max {
        return Err(Error::MultiplicityTooLarge { path: path.to_string(), m, max });
    }
    if let Some((pm, _)) = parent {
        let limit = if pm % 2 == 0 { pm } else { pm + 1 };
        if m > limit {
            return Err(Error::Monotonicity { path: path.to_string(), parent: pm, child: m });
        }
    }
    if strictness == Strictness::Strict && g.is_multiple_of(2) && m == g + 2 {
        return Err(Error::StrictEvenTop { path: path.to_string(), m });
    }
    for (ci, child) in node.children.iter().enumerate() {
        let child_path = format!("{path}.children[{ci}]");
        validate_node(child, Some((m, node.children.len())), &child_path, g, strictness)?;
    }
    Ok(())
}

/// Counts `s_3..s_{g+2}` for a forest, per fiber and in total.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassifiedIndices {
    pub g: u32,
    /// `per_fiber[f][i - 3]` is `s_i` of fiber `f`.
    pub per_fiber: Vec<Vec<i64>>,
    /// `totals[i - 3]` is `s_i`.
    pub totals: Vec<i64>,
}

impl ClassifiedIndices {
    pub fn get(&self, i: u32) -> i64 {
        self.totals[(i - 3) as usize]
    }

    /// Full index vector with the given `s_2`.
    pub fn with_s2(&self, s2: Rational) -> SingularityIndexVector {
        let entries = std::iter::once(s2).chain(self.totals.iter().map(|&v| int(v))).collect();
        SingularityIndexVector::new(self.g, entries).expect("counts are non-negative")
    }
}

fn classify_node(node: &SingularityNode, is_second: bool, counts: &mut [i64], g: u32) {
    let first = node.is_pair_first();
    if first {
        counts[(node.m - 3) as usize] += 1;
    } else if !is_second {
        let i = if node.m.is_multiple_of(2) { node.m } else { node.m - 1 };
        // Multiplicity 2 and 3 points (i = 2) are negligible.
        if i >= 4 && i <= g + 2 {
            counts[(i - 3) as usize] += 1;
        }
    }
    for child in &node.children {
        classify_node(child, first, counts, g);
    }
}

pub fn classify_indices(f: &SingularityForest, strictness: Strictness) -> Result<ClassifiedIndices> {
    validate_forest(f, strictness)?;
    let width = f.g as usize;
    let per_fiber: Vec<Vec<i64>> = f
        .fibers
        .iter()
        .map(|fiber| {
            let mut counts = vec![0; width];
            for root in &fiber.roots {
                classify_node(root, false, &mut counts, f.g);
            }
            counts
        })
        .collect();
    let totals = (0..width).map(|k| per_fiber.iter().map(|c| c[k]).sum()).collect();
    Ok(ClassifiedIndices { g: f.g, per_fiber, totals })
}

/// Solves the `n`-expansion of the indices for `s_2`. If the forest carries
/// an explicit `s_2`, it must agree.
pub fn s2_from_n(f: &SingularityForest, classified: &ClassifiedIndices) -> Result<Rational> {
    let g = i64::from(f.g);
    let rest = n_form(f.g).eval(&classified.with_s2(Rational::zero()));
    let computed = int(2 * (2 * g + 1)) * (&f.n - rest);
    if let Some(explicit) = f.s2 {
        if int(explicit) != computed {
            return Err(Error::S2Mismatch { explicit, computed: Box::new(computed) });
        }
    }
    Ok(computed)
}

/// `2 s_{g+2} + Σ_{k=1..floor(g/2)} s_{2k+1}`: the number of (-1)-curves
/// contracted to reach the relatively minimal model.
pub fn minus_one_count(s: &SingularityIndexVector) -> Rational {
    let g = s.g();
    let odd: Rational = (1..=g / 2).map(|k| s.get(2 * k + 1).clone()).sum();
    int(2) * s.get(g + 2) + odd
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    /// `[m/2]` of every blown-up point, in resolution (pre-)order.
    pub half_multiplicities: Vec<u32>,
    pub blowup_count: usize,
    #[serde(with = "rational::serde_str")]
    pub minus_one_curve_count: Rational,
}

/// Relative invariants by the direct double-cover computation:
/// `L̂² = (g+1)n - Σh²`, `K·L̂ = -n + Σh`, `K² = -#blow-ups`, then
/// `χ = (L̂² + K·L̂)/2`, `K² = 2(L̂ + K)² + #(-1)-curves`.
pub fn resolve_invariants(
    f: &SingularityForest,
    strictness: Strictness,
) -> Result<(RelativeInvariants, ResolutionTrace)> {
    let classified = classify_indices(f, strictness)?;
    let half_multiplicities: Vec<u32> = f.nodes_preorder().iter().map(|n| n.m / 2).collect();
    let sum_h: i64 = half_multiplicities.iter().map(|&h| i64::from(h)).sum();
    let sum_h2: i64 = half_multiplicities.iter().map(|&h| i64::from(h) * i64::from(h)).sum();
    let blowups = half_multiplicities.len();

    let l2 = int(i64::from(f.g) + 1) * &f.n - int(sum_h2);
    let kl = -&f.n + int(sum_h);
    let kk = int(-(blowups as i64));

    let chi = (&l2 + &kl) / int(2);
    let k2_tilde = int(2) * (&l2 + int(2) * &kl + &kk);
    let minus_one = minus_one_count(&classified.with_s2(Rational::zero()));
    let k2 = k2_tilde + &minus_one;

    let trace = ResolutionTrace {
        half_multiplicities,
        blowup_count: blowups,
        minus_one_curve_count: minus_one,
    };
    Ok((RelativeInvariants::new(k2, chi), trace))
}

/// Both routes side by side.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualPathReport {
    pub classified: ClassifiedIndices,
    pub index_vector: SingularityIndexVector,
    pub direct: RelativeInvariants,
    pub from_indices: RelativeInvariants,
    pub agree: bool,
    pub trace: ResolutionTrace,
}

pub fn compare_paths(f: &SingularityForest, strictness: Strictness) -> Result<DualPathReport> {
    let classified = classify_indices(f, strictness)?;
    let s2 = s2_from_n(f, &classified)?;
    let index_vector = classified.with_s2(s2);
    let from_indices = relative_invariants(&index_vector);
    let (direct, trace) = resolve_invariants(f, strictness)?;
    Ok(DualPathReport {
        agree: direct == from_indices,
        classified,
        index_vector,
        direct,
        from_indices,
        trace,
    })
}
