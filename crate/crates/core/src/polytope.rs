//! MV polytopes as vertex maps over the Weyl group.
//!
//! The polytope of a Lusztig datum is recovered one chain at a time: for
//! every reduced word of the longest element, transporting the datum onto
//! that word and running the vertex recurrence gives the vertices `mu_w` for
//! all prefixes `w` of the word. A [`VertexPlan`] fixes, once per base word,
//! a tree of braid moves whose words cover every element of `W` as a prefix.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lusztig::{tropical_move, LusztigDatum};
use crate::root_datum::Coweight;
use crate::weyl::{braid_moves, BraidMove, ReducedWord, WeylGroup};

/// Default bound on the number of data produced by [`enumerate_data`].
pub const DEFAULT_ENUMERATION_CAP: usize = 1_000_000;

/// An MV polytope, stored densely: `vertices[k]` is `mu_w` for the group
/// element with index `k`, normalized so that `mu_e = 0`.
///
/// Equality compares vertex maps only; the same polytope built from data on
/// different words is the same polytope.
#[derive(Clone, Debug)]
pub struct MVPolytope {
    vertices: Vec<Coweight>,
    base_word: ReducedWord,
    datum: LusztigDatum,
}

impl PartialEq for MVPolytope {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
    }
}

impl Eq for MVPolytope {}

impl MVPolytope {
    pub(crate) fn from_parts(vertices: Vec<Coweight>, datum: LusztigDatum) -> Self {
        Self {
            vertices,
            base_word: datum.word().clone(),
            datum,
        }
    }

    pub fn vertices(&self) -> &[Coweight] {
        &self.vertices
    }

    pub fn vertex(&self, k: usize) -> &Coweight {
        &self.vertices[k]
    }

    pub fn base_word(&self) -> &ReducedWord {
        &self.base_word
    }

    pub fn datum(&self) -> &LusztigDatum {
        &self.datum
    }

    /// The vertex at the longest element, i.e. the stable coweight.
    pub fn coweight(&self, group: &WeylGroup) -> &Coweight {
        &self.vertices[group.longest_index()]
    }

    pub fn is_point(&self) -> bool {
        self.vertices.iter().all(Coweight::is_zero)
    }
}

#[derive(Clone, Debug)]
struct PlanNode {
    parent: usize,
    mv: BraidMove,
}

#[derive(Clone, Debug)]
struct Readout {
    node: usize,
    coroots: Vec<Coweight>,
    /// `(k, element)`: the prefix of length `k` of this node's word is the
    /// group element `element`, not covered by an earlier node.
    targets: Vec<(usize, usize)>,
}

/// A datum-independent recipe for reading every vertex of a polytope from a
/// datum on a fixed base word.
#[derive(Clone, Debug)]
pub struct VertexPlan {
    base: ReducedWord,
    /// Node 0 is the base word; node `t > 0` is its parent rewritten by `mv`.
    nodes: Vec<PlanNode>,
    readouts: Vec<Readout>,
    group_size: usize,
}

impl VertexPlan {
    /// Breadth-first search from `base` until every group element is a
    /// prefix of some visited word, then prunes to the needed subtree.
    pub fn new(group: &WeylGroup, base: &ReducedWord) -> Result<Self> {
        group.check_longest_word(base)?;
        let datum = group.datum();
        let mut words = vec![base.clone()];
        let mut parents: Vec<Option<(usize, BraidMove)>> = vec![None];
        let mut seen = HashMap::from([(base.clone(), 0usize)]);
        let mut covered = vec![false; group.len()];
        let mut remaining = group.len();
        let mut raw_readouts: Vec<(usize, Vec<(usize, usize)>)> = Vec::new();
        let mut queue = VecDeque::from([0usize]);

        while let Some(t) = queue.pop_front() {
            let prefixes = group.prefixes(&words[t])?;
            let targets: Vec<(usize, usize)> = prefixes
                .iter()
                .enumerate()
                .filter(|&(_, &e)| !covered[e])
                .map(|(k, &e)| (k, e))
                .collect();
            if !targets.is_empty() {
                for &(_, e) in &targets {
                    covered[e] = true;
                }
                remaining -= targets.len();
                raw_readouts.push((t, targets));
                if remaining == 0 {
                    break;
                }
            }
            for mv in braid_moves(datum, &words[t]) {
                let next = mv.apply(&words[t])?;
                if seen.contains_key(&next) {
                    continue;
                }
                if words.len() >= group.word_cap() {
                    return Err(Error::CapExceeded {
                        cap: group.word_cap(),
                    });
                }
                seen.insert(next.clone(), words.len());
                queue.push_back(words.len());
                words.push(next);
                parents.push(Some((t, mv)));
            }
        }
        if remaining != 0 {
            return Err(Error::Inconsistent(
                "reduced words of the longest element do not cover W".into(),
            ));
        }

        // Keep only ancestors of readout nodes, in BFS order.
        let mut needed = vec![false; words.len()];
        for &(t, _) in &raw_readouts {
            let mut cur = t;
            while !needed[cur] {
                needed[cur] = true;
                match parents[cur] {
                    Some((p, _)) => cur = p,
                    None => break,
                }
            }
        }
        let mut renumber = vec![usize::MAX; words.len()];
        let mut nodes = Vec::new();
        for t in (0..words.len()).filter(|&t| needed[t]) {
            renumber[t] = nodes.len();
            let node = match parents[t] {
                None => PlanNode {
                    parent: 0,
                    mv: BraidMove {
                        position: 0,
                        order: 0,
                        nodes: (0, 0),
                    },
                },
                Some((p, mv)) => PlanNode {
                    parent: renumber[p],
                    mv,
                },
            };
            nodes.push(node);
        }
        let readouts = raw_readouts
            .into_iter()
            .map(|(t, targets)| Readout {
                node: renumber[t],
                coroots: words[t].inversion_coroots(datum),
                targets,
            })
            .collect();
        Ok(Self {
            base: base.clone(),
            nodes,
            readouts,
            group_size: group.len(),
        })
    }

    pub fn base(&self) -> &ReducedWord {
        &self.base
    }

    /// Number of words the plan visits, including the base word.
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    fn execute(&self, group: &WeylGroup, lusztig: &LusztigDatum) -> Result<Vec<Coweight>> {
        debug_assert_eq!(lusztig.word(), &self.base);
        let datum = group.datum();
        let mut data: Vec<LusztigDatum> = Vec::with_capacity(self.nodes.len());
        data.push(lusztig.clone());
        for node in &self.nodes[1..] {
            let next = tropical_move(datum, &data[node.parent], &node.mv)?;
            data.push(next);
        }
        let mut vertices = vec![Coweight::default(); self.group_size];
        for r in &self.readouts {
            let values = data[r.node].values();
            let mut mu = datum.zero();
            let mut k = 0;
            for &(target_k, e) in &r.targets {
                while k < target_k {
                    mu -= &r.coroots[k].scaled(values[k] as i64);
                    k += 1;
                }
                vertices[e] = mu.clone();
            }
        }
        Ok(vertices)
    }
}

impl WeylGroup {
    /// The memoized vertex plan for a base word.
    pub fn vertex_plan(&self, base: &ReducedWord) -> Result<Arc<VertexPlan>> {
        if let Some(p) = self.plans.lock().unwrap().get(base) {
            return Ok(Arc::clone(p));
        }
        let plan = Arc::new(VertexPlan::new(self, base)?);
        self.plans
            .lock()
            .unwrap()
            .insert(base.clone(), Arc::clone(&plan));
        Ok(plan)
    }
}

/// The MV polytope with the given Lusztig datum.
pub fn build_polytope(group: &WeylGroup, lusztig: &LusztigDatum) -> Result<MVPolytope> {
    let plan = group.vertex_plan(lusztig.word())?;
    let vertices = plan.execute(group, lusztig)?;
    Ok(MVPolytope::from_parts(vertices, lusztig.clone()))
}

/// Reads the Lusztig datum of `polytope` along `word` from the edge lengths
/// of its vertex chain.
pub fn datum_along(
    group: &WeylGroup,
    polytope: &MVPolytope,
    word: &ReducedWord,
) -> Result<LusztigDatum> {
    group.check_longest_word(word)?;
    let prefixes = group.prefixes(word)?;
    let coroots = word.inversion_coroots(group.datum());
    let mut values = Vec::with_capacity(word.len());
    for (k, beta) in coroots.iter().enumerate() {
        let step = polytope.vertex(prefixes[k]) - polytope.vertex(prefixes[k + 1]);
        let pivot = beta
            .0
            .iter()
            .position(|&c| c != 0)
            .expect("coroots are nonzero");
        let n = step.0[pivot] / beta.0[pivot];
        if n < 0 || beta.scaled(n) != step {
            return Err(Error::CorruptVertexMap(k + 1));
        }
        values.push(n as u64);
    }
    LusztigDatum::new(word.clone(), values)
}

/// Whether `lambda + P` lies in the Weyl polytope `Conv(W lambda)`, tested
/// vertexwise: `w^{-1}(mu_w + lambda) <= lambda` for every `w`.
pub fn lies_in_weyl_hull(
    group: &WeylGroup,
    polytope: &MVPolytope,
    lambda: &Coweight,
) -> Result<bool> {
    let datum = group.datum();
    datum.check_dominant(lambda)?;
    Ok((0..group.len()).all(|k| {
        let shifted = polytope.vertex(k) + lambda;
        let inv = group.element(group.inverse_index(k));
        datum.leq(&inv.apply(&shifted), lambda)
    }))
}

/// All Lusztig data on `word` whose coweight is `nu`, in lexicographic order.
pub fn enumerate_data(
    group: &WeylGroup,
    word: &ReducedWord,
    nu: &Coweight,
) -> Result<Vec<LusztigDatum>> {
    enumerate_data_capped(group, word, nu, DEFAULT_ENUMERATION_CAP)
}

/// As [`enumerate_data`], failing once more than `cap` data are found.
pub fn enumerate_data_capped(
    group: &WeylGroup,
    word: &ReducedWord,
    nu: &Coweight,
    cap: usize,
) -> Result<Vec<LusztigDatum>> {
    let datum = group.datum();
    group.check_longest_word(word)?;
    datum.check_rank(nu.rank())?;
    let target = -nu.clone();
    if !target.is_nonnegative() {
        return Ok(Vec::new());
    }
    let coroots = word.inversion_coroots(datum);
    let m = coroots.len();
    // support[k][i]: some coroot at position >= k has a positive i-th coordinate
    let mut support = vec![vec![false; datum.rank()]; m + 1];
    for k in (0..m).rev() {
        for i in 0..datum.rank() {
            support[k][i] = support[k + 1][i] || coroots[k].0[i] > 0;
        }
    }
    let search = Search {
        coroots: &coroots,
        support: &support,
        cap,
    };
    if m == 0 {
        return Ok(if target.is_zero() {
            vec![LusztigDatum::zero(word.clone())]
        } else {
            Vec::new()
        });
    }
    let branches: Vec<Result<Vec<Vec<u64>>>> = (0..=search.bound(0, &target))
        .into_par_iter()
        .map(|n0| {
            let mut residual = target.clone();
            residual -= &coroots[0].scaled(n0 as i64);
            let mut values = vec![n0];
            let mut out = Vec::new();
            search.descend(1, &mut residual, &mut values, &mut out)?;
            Ok(out)
        })
        .collect();
    let mut out = Vec::new();
    for b in branches {
        out.extend(b?);
        if out.len() > cap {
            return Err(Error::CapExceeded { cap });
        }
    }
    out.into_iter()
        .map(|v| LusztigDatum::new(word.clone(), v))
        .collect()
}

struct Search<'a> {
    coroots: &'a [Coweight],
    support: &'a [Vec<bool>],
    cap: usize,
}

impl Search<'_> {
    fn bound(&self, k: usize, residual: &Coweight) -> u64 {
        self.coroots[k]
            .0
            .iter()
            .zip(&residual.0)
            .filter(|(&b, _)| b > 0)
            .map(|(&b, &r)| (r / b) as u64)
            .min()
            .unwrap_or(0)
    }

    fn feasible(&self, k: usize, residual: &Coweight) -> bool {
        residual
            .0
            .iter()
            .zip(&self.support[k])
            .all(|(&r, &s)| r >= 0 && (r == 0 || s))
    }

    fn descend(
        &self,
        k: usize,
        residual: &mut Coweight,
        values: &mut Vec<u64>,
        out: &mut Vec<Vec<u64>>,
    ) -> Result<()> {
        if !self.feasible(k, residual) {
            return Ok(());
        }
        if k == self.coroots.len() {
            if residual.is_zero() {
                out.push(values.clone());
                if out.len() > self.cap {
                    return Err(Error::CapExceeded { cap: self.cap });
                }
            }
            return Ok(());
        }
        let beta = &self.coroots[k];
        let bound = self.bound(k, residual);
        for n in 0..=bound {
            if n > 0 {
                *residual -= beta;
            }
            values.push(n);
            let r = self.descend(k + 1, residual, values, out);
            values.pop();
            r?;
        }
        *residual += &beta.scaled(bound as i64);
        Ok(())
    }
}
