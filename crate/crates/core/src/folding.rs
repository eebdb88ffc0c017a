//! Dynkin diagram automorphisms and the folded root datum.
//!
//! For an automorphism `sigma` of a simply-laced diagram, each orbit `eta`
//! gives a folded coroot `alpha_eta^vee = 2^h sum_{i in eta} alpha_i^vee`,
//! where `h = 1` exactly when `eta = {i, j}` with `a_ij = -1`. The folded
//! Cartan matrix is `<alpha_eta^vee, alpha_i>` for any `i` in the second orbit.
//! Folded coweights are written in the basis of folded coroots and embedded
//! into the coweight lattice through the formula above.
//!
//! Each `s_eta` is the longest element of the parabolic subgroup on `eta`. It
//! has length `r_eta`: 1 for a fixed node, `|eta|` for an orbit of orthogonal
//! nodes, 3 for an `h = 1` pair. A folded reduced word is lifted by
//! substituting a fixed reduced expression of each `s_eta`.

use std::fmt;

use crate::error::{Error, Result};
use crate::lusztig::{apply_moves, LusztigDatum};
use crate::polytope::{build_polytope, datum_along, MVPolytope};
use crate::root_datum::{Coweight, Family, RootDatum};
use crate::weyl::{braid_moves, BraidMove, ReducedWord, WeylGroup};

/// Which reduced expression of `s_eta` a lift uses.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum LiftConvention {
    /// Orthogonal orbits in increasing node order; `(i, j, i)` with `i < j`.
    #[default]
    Ascending,
    /// Orthogonal orbits in decreasing node order; `(j, i, j)` with `i < j`.
    Descending,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    nodes: Vec<usize>,
    h: u8,
}

impl Orbit {
    /// Sorted 0-based nodes of the orbit.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn h(&self) -> u8 {
        self.h
    }

    /// Length of `s_eta` in `W`.
    pub fn r(&self) -> usize {
        if self.h == 1 {
            3
        } else {
            self.nodes.len()
        }
    }

    pub fn contains(&self, i: usize) -> bool {
        self.nodes.contains(&i)
    }

    /// The fixed reduced expression of `s_eta`.
    pub fn expression(&self, convention: LiftConvention) -> Vec<usize> {
        match (self.h, convention) {
            (1, LiftConvention::Ascending) => vec![self.nodes[0], self.nodes[1], self.nodes[0]],
            (1, LiftConvention::Descending) => vec![self.nodes[1], self.nodes[0], self.nodes[1]],
            (_, LiftConvention::Ascending) => self.nodes.clone(),
            (_, LiftConvention::Descending) => self.nodes.iter().rev().copied().collect(),
        }
    }

    /// Whether `block` is a reduced expression of `s_eta`.
    fn is_expression(&self, block: &[usize]) -> bool {
        if self.h == 1 {
            let (i, j) = (self.nodes[0], self.nodes[1]);
            block == [i, j, i] || block == [j, i, j]
        } else {
            let mut sorted = block.to_vec();
            sorted.sort_unstable();
            sorted == self.nodes
        }
    }
}

/// A diagram automorphism together with its orbits and folded root datum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoldingData {
    datum: RootDatum,
    sigma: Vec<usize>,
    order: usize,
    orbits: Vec<Orbit>,
    orbit_of: Vec<usize>,
    folded: RootDatum,
}

impl FoldingData {
    /// Builds the folding for a node permutation `sigma` (0-based images).
    pub fn new(datum: RootDatum, sigma: Vec<usize>) -> Result<Self> {
        let n = datum.rank();
        datum.check_rank(sigma.len())?;
        let mut hit = vec![false; n];
        for &s in &sigma {
            if s >= n || hit[s] {
                return Err(Error::NotDiagramAutomorphism("not a permutation of the nodes".into()));
            }
            hit[s] = true;
        }
        if sigma.iter().enumerate().all(|(i, &s)| i == s) {
            return Err(Error::NotDiagramAutomorphism("sigma is the identity".into()));
        }
        for i in 0..n {
            for j in 0..n {
                if datum.entry(sigma[i], sigma[j]) != datum.entry(i, j) {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "a({},{}) is not preserved",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        if !datum.is_simply_laced() {
            return Err(Error::NotDiagramAutomorphism(
                "folding is supported for simply-laced types only".into(),
            ));
        }

        let mut orbit_of = vec![usize::MAX; n];
        let mut orbits = Vec::new();
        for start in 0..n {
            if orbit_of[start] != usize::MAX {
                continue;
            }
            let mut nodes = vec![start];
            let mut cur = sigma[start];
            while cur != start {
                nodes.push(cur);
                cur = sigma[cur];
            }
            nodes.sort_unstable();
            let linked: Vec<(usize, usize)> = nodes
                .iter()
                .flat_map(|&a| nodes.iter().map(move |&b| (a, b)))
                .filter(|&(a, b)| a < b && datum.entry(a, b) != 0)
                .collect();
            let h = match (nodes.len(), linked.len()) {
                (_, 0) => 0,
                (2, 1) if datum.entry(nodes[0], nodes[1]) == -1 => 1,
                _ => {
                    return Err(Error::NotDiagramAutomorphism(format!(
                        "orbit {:?} is neither orthogonal nor an adjacent pair",
                        nodes.iter().map(|x| x + 1).collect::<Vec<_>>()
                    )))
                }
            };
            for &i in &nodes {
                orbit_of[i] = orbits.len();
            }
            orbits.push(Orbit { nodes, h });
        }
        let order = orbits
            .iter()
            .map(|o| o.nodes.len())
            .fold(1, num_lcm);

        let k = orbits.len();
        let cartan: Vec<Vec<i64>> = (0..k)
            .map(|a| {
                (0..k)
                    .map(|b| {
                        let i = orbits[b].nodes[0];
                        let scale = 1i64 << orbits[a].h;
                        scale * orbits[a].nodes.iter().map(|&j| datum.entry(j, i)).sum::<i64>()
                    })
                    .collect()
            })
            .collect();
        let folded = RootDatum::from_cartan(cartan)?;
        Ok(Self {
            datum,
            sigma,
            order,
            orbits,
            orbit_of,
            folded,
        })
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn folded(&self) -> &RootDatum {
        &self.folded
    }

    pub fn sigma(&self) -> &[usize] {
        &self.sigma
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn orbits(&self) -> &[Orbit] {
        &self.orbits
    }

    /// Index of the orbit containing node `i`.
    pub fn orbit_of(&self, i: usize) -> usize {
        self.orbit_of[i]
    }

    /// `sigma` in cycle notation with 1-based labels, e.g. `(1 4)(2 3)`.
    pub fn cycles(&self) -> String {
        cycle_notation(&self.sigma)
    }

    /// `sigma(mu)`: the coefficient of `alpha_i^vee` moves to `alpha_{sigma(i)}^vee`.
    pub fn sigma_coweight(&self, mu: &Coweight) -> Coweight {
        let mut out = Coweight::zero(mu.rank());
        for (i, &c) in mu.0.iter().enumerate() {
            out.0[self.sigma[i]] = c;
        }
        out
    }

    pub fn is_invariant(&self, mu: &Coweight) -> bool {
        self.sigma_coweight(mu) == *mu
    }

    /// The embedding of folded coweights: `alpha_eta^vee -> 2^h sum alpha_i^vee`.
    pub fn embed(&self, nu: &Coweight) -> Result<Coweight> {
        self.folded.check_rank(nu.rank())?;
        let mut out = self.datum.zero();
        for (orbit, &c) in self.orbits.iter().zip(&nu.0) {
            for &i in &orbit.nodes {
                out.0[i] = c << orbit.h;
            }
        }
        Ok(out)
    }

    /// Inverse of [`FoldingData::embed`] on its image.
    pub fn restrict(&self, mu: &Coweight) -> Result<Coweight> {
        self.datum.check_rank(mu.rank())?;
        let coords = self
            .orbits
            .iter()
            .map(|o| {
                let c = mu.0[o.nodes[0]];
                let scale = 1i64 << o.h;
                if c % scale != 0 || o.nodes.iter().any(|&i| mu.0[i] != c) {
                    Err(Error::NotFoldable(mu.to_string()))
                } else {
                    Ok(c / scale)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Coweight(coords))
    }

    /// Substitutes the reduced expression of each `s_eta`; no checks.
    pub fn lift_letters(&self, folded_word: &ReducedWord, convention: LiftConvention) -> ReducedWord {
        ReducedWord(
            folded_word
                .letters()
                .iter()
                .flat_map(|&eta| self.orbits[eta].expression(convention))
                .collect(),
        )
    }

    /// Lifts a reduced word of the folded longest element to a reduced word
    /// of the longest element of `W`.
    pub fn lift_word(&self, folded_word: &ReducedWord, convention: LiftConvention) -> Result<ReducedWord> {
        let w = self.folded.element_of(folded_word)?;
        if folded_word.len() != self.folded.num_positive() || w.length() != folded_word.len() {
            return Err(Error::NotLongestWord(folded_word.to_string()));
        }
        let lifted = self.lift_letters(folded_word, convention);
        debug_assert_eq!(lifted.len(), self.datum.num_positive());
        Ok(lifted)
    }

    /// Splits a lifted word into orbit blocks, returning the folded word and
    /// the block lengths.
    pub fn unlift(&self, word: &ReducedWord) -> Result<(ReducedWord, Vec<usize>)> {
        let letters = word.letters();
        let mut folded = Vec::new();
        let mut blocks = Vec::new();
        let mut p = 0;
        while p < letters.len() {
            self.datum.check_node(letters[p])?;
            let eta = self.orbit_of[letters[p]];
            let r = self.orbits[eta].r();
            if p + r > letters.len() || !self.orbits[eta].is_expression(&letters[p..p + r]) {
                return Err(Error::NotLifted(word.to_string()));
            }
            folded.push(eta);
            blocks.push(r);
            p += r;
        }
        let folded = ReducedWord(folded);
        let w = self.folded.element_of(&folded)?;
        if folded.len() != self.folded.num_positive() || w.length() != folded.len() {
            return Err(Error::NotLifted(word.to_string()));
        }
        Ok((folded, blocks))
    }

    /// Whether the datum is constant on each orbit block of its lifted word.
    pub fn is_block_constant(&self, lifted_word: &ReducedWord, lusztig: &LusztigDatum) -> Result<bool> {
        if lusztig.word() != lifted_word {
            return Err(Error::NotLifted(lusztig.word().to_string()));
        }
        let (_, blocks) = self.unlift(lifted_word)?;
        let mut p = 0;
        let values = lusztig.values();
        Ok(blocks.iter().all(|&r| {
            let ok = values[p..p + r].iter().all(|&v| v == values[p]);
            p += r;
            ok
        }))
    }

    /// One value per orbit block.
    pub fn fold_datum(&self, lusztig: &LusztigDatum) -> Result<LusztigDatum> {
        let (folded, blocks) = self.unlift(lusztig.word())?;
        if !self.is_block_constant(lusztig.word(), lusztig)? {
            return Err(Error::NotBlockConstant);
        }
        let mut p = 0;
        let values = blocks
            .iter()
            .map(|&r| {
                let v = lusztig.values()[p];
                p += r;
                v
            })
            .collect();
        LusztigDatum::new(folded, values)
    }

    /// Repeats each folded value over its orbit block.
    pub fn unfold_datum(&self, folded: &LusztigDatum, convention: LiftConvention) -> Result<LusztigDatum> {
        let word = self.lift_word(folded.word(), convention)?;
        let values = folded
            .word()
            .letters()
            .iter()
            .zip(folded.values())
            .flat_map(|(&eta, &v)| std::iter::repeat_n(v, self.orbits[eta].r()))
            .collect();
        LusztigDatum::new(word, values)
    }
}

impl fmt::Display for FoldingData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} folded by {} -> {}",
            self.datum.label(),
            self.cycles(),
            self.folded.label()
        )
    }
}

fn num_lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// Cycle notation with 1-based labels; fixed points are omitted.
pub fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut cur = perm[start];
        while cur != start {
            seen[cur] = true;
            cycle.push(cur + 1);
            cur = perm[cur];
        }
        out.push('(');
        out.push_str(
            &cycle
                .iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(" "),
        );
        out.push(')');
    }
    if out.is_empty() {
        out.push_str("()");
    }
    out
}

/// The standard involution of the diagram: `i -> n+1-i` for `A_n`, the swap
/// of the two short legs for `D_n`, and `(1 6)(3 5)` for `E6`.
pub fn flip(datum: &RootDatum) -> Result<Vec<usize>> {
    let n = datum.rank();
    match datum.label().family() {
        Family::A if n >= 2 => Ok((0..n).map(|i| n - 1 - i).collect()),
        Family::D => {
            let mut p: Vec<usize> = (0..n).collect();
            p.swap(n - 2, n - 1);
            Ok(p)
        }
        Family::E => Ok(vec![5, 1, 4, 3, 2, 0]),
        _ => Err(Error::NotDiagramAutomorphism(format!(
            "{} has no diagram flip",
            datum.label()
        ))),
    }
}

/// The order-3 automorphism `(1 3 4)` of `D4`.
pub fn triality(datum: &RootDatum) -> Result<Vec<usize>> {
    if datum.label().to_string() != "D4" {
        return Err(Error::NotDiagramAutomorphism(format!(
            "triality needs D4, not {}",
            datum.label()
        )));
    }
    Ok(vec![2, 1, 3, 0])
}

/// Parses `flip`, `triality`, or cycle notation such as `(1 4)(2 3)`.
pub fn parse_sigma(datum: &RootDatum, spec: &str) -> Result<Vec<usize>> {
    let spec = spec.trim();
    match spec.to_ascii_lowercase().as_str() {
        "flip" => return flip(datum),
        "triality" => return triality(datum),
        _ => {}
    }
    let n = datum.rank();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut used = vec![false; n];
    let mut rest = spec;
    while !rest.is_empty() {
        let open = rest
            .strip_prefix('(')
            .ok_or_else(|| Error::Parse(format!("expected '(' in {spec:?}")))?;
        let close = open
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unclosed cycle in {spec:?}")))?;
        let cycle = open[..close]
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| match t.parse::<usize>() {
                Ok(l) if (1..=n).contains(&l) => Ok(l - 1),
                _ => Err(Error::Parse(format!("bad node {t:?} in {spec:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        for (k, &i) in cycle.iter().enumerate() {
            if used[i] {
                return Err(Error::Parse(format!("node {} repeated in {spec:?}", i + 1)));
            }
            used[i] = true;
            perm[i] = cycle[(k + 1) % cycle.len()];
        }
        rest = open[close + 1..].trim_start();
    }
    Ok(perm)
}

/// A folding together with both Weyl groups and the maps between them.
#[derive(Debug)]
pub struct FoldedSystem {
    data: FoldingData,
    group: WeylGroup,
    folded_group: WeylGroup,
    sigma_on_w: Vec<usize>,
    sigma_inv_on_w: Vec<usize>,
    folded_to_w: Vec<usize>,
}

impl FoldedSystem {
    pub fn new(data: FoldingData) -> Result<Self> {
        let group = WeylGroup::new(data.datum().clone())?;
        let folded_group = WeylGroup::new(data.folded().clone())?;
        let walk = |word: &ReducedWord| -> Result<usize> { Ok(*group.prefixes(word)?.last().unwrap()) };
        let sigma_on_w = (0..group.len())
            .map(|k| walk(&group.word(k).permuted(data.sigma())))
            .collect::<Result<Vec<_>>>()?;
        let mut sigma_inv_on_w = vec![0; group.len()];
        for (k, &s) in sigma_on_w.iter().enumerate() {
            sigma_inv_on_w[s] = k;
        }
        let folded_to_w = (0..folded_group.len())
            .map(|f| walk(&data.lift_letters(folded_group.word(f), LiftConvention::Ascending)))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            data,
            group,
            folded_group,
            sigma_on_w,
            sigma_inv_on_w,
            folded_to_w,
        })
    }

    /// Builds the folding of `datum` by `sigma` and both Weyl groups.
    pub fn from_datum(datum: RootDatum, sigma: Vec<usize>) -> Result<Self> {
        Self::new(FoldingData::new(datum, sigma)?)
    }

    pub fn data(&self) -> &FoldingData {
        &self.data
    }

    pub fn group(&self) -> &WeylGroup {
        &self.group
    }

    pub fn folded_group(&self) -> &WeylGroup {
        &self.folded_group
    }

    /// Index in `W` of the image of folded element `f`.
    pub fn folded_element_in_w(&self, f: usize) -> usize {
        self.folded_to_w[f]
    }

    /// Index of `sigma(w)` for the element with index `k`.
    pub fn sigma_element(&self, k: usize) -> usize {
        self.sigma_on_w[k]
    }

    /// The default folded reduced word of the longest element.
    pub fn folded_longest_word(&self) -> ReducedWord {
        self.data.folded().longest_word()
    }

    /// Lift of [`FoldedSystem::folded_longest_word`].
    pub fn lifted_longest_word(&self, convention: LiftConvention) -> ReducedWord {
        self.data
            .lift_word(&self.folded_longest_word(), convention)
            .expect("the folded longest word is reduced")
    }

    /// The polytope `sigma(P)`, with vertex map `w -> sigma(mu_{sigma^{-1}(w)})`.
    pub fn apply_sigma(&self, polytope: &MVPolytope) -> MVPolytope {
        let vertices = (0..self.group.len())
            .map(|k| {
                self.data
                    .sigma_coweight(polytope.vertex(self.sigma_inv_on_w[k]))
            })
            .collect();
        let datum = LusztigDatum::new(
            polytope.datum().word().permuted(self.data.sigma()),
            polytope.datum().values().to_vec(),
        )
        .expect("permuting a word keeps its length");
        MVPolytope::from_parts(vertices, datum)
    }

    /// Vertex criterion: `sigma(mu_w) = mu_{sigma(w)}` for every `w`.
    pub fn is_sigma_invariant(&self, polytope: &MVPolytope) -> bool {
        self.apply_sigma(polytope) == *polytope
    }

    /// The folded MV polytope `P^sigma`, with vertices `mu_w` for `w` in the
    /// folded Weyl group, written in folded coordinates.
    pub fn theta_p(&self, polytope: &MVPolytope) -> Result<MVPolytope> {
        if !self.is_sigma_invariant(polytope) {
            return Err(Error::NotSigmaInvariant);
        }
        let vertices = self
            .folded_to_w
            .iter()
            .map(|&k| self.data.restrict(polytope.vertex(k)))
            .collect::<Result<Vec<_>>>()?;
        let lifted = self.lifted_longest_word(LiftConvention::Ascending);
        let datum = datum_along(&self.group, polytope, &lifted)?;
        let folded = self.data.fold_datum(&datum)?;
        Ok(MVPolytope::from_parts(vertices, folded))
    }

    /// The folded polytope of a folded datum, built through the unfolded
    /// group.
    pub fn folded_polytope(&self, folded: &LusztigDatum) -> Result<MVPolytope> {
        let unfolded = self.data.unfold_datum(folded, LiftConvention::Ascending)?;
        let polytope = build_polytope(&self.group, &unfolded)?;
        let out = self.theta_p(&polytope)?;
        if folded.word() == out.datum().word() {
            Ok(out)
        } else {
            let vertices = out.vertices().to_vec();
            Ok(MVPolytope::from_parts(vertices, folded.clone()))
        }
    }

    /// A single folded braid move (of any order), computed by unfolding both
    /// folded words, transporting in `W`, and folding back.
    pub fn folded_move(
        &self,
        folded: &LusztigDatum,
        mv: &BraidMove,
        convention: LiftConvention,
    ) -> Result<LusztigDatum> {
        let target = mv.apply(folded.word())?;
        let source = self.data.unfold_datum(folded, convention)?;
        let lifted_target = self.data.lift_word(&target, convention)?;
        let path = self.group.braid_path(source.word(), &lifted_target)?;
        let moved = apply_moves(self.group.datum(), &source, &path)?;
        if !self.data.is_block_constant(&lifted_target, &moved)? {
            return Err(Error::Inconsistent(format!(
                "transport of a block-constant datum to ({lifted_target}) is not block-constant"
            )));
        }
        self.data.fold_datum(&moved)
    }

    /// The folded Lusztig transform to `target`, applied move by move along a
    /// shortest braid path between folded words. Every intermediate datum is
    /// checked to be block-constant.
    pub fn folded_transport(
        &self,
        folded: &LusztigDatum,
        target: &ReducedWord,
        convention: LiftConvention,
    ) -> Result<LusztigDatum> {
        self.folded_group.check_longest_word(folded.word())?;
        self.folded_group.check_longest_word(target)?;
        let path = self.folded_group.braid_path(folded.word(), target)?;
        path.iter()
            .try_fold(folded.clone(), |d, mv| self.folded_move(&d, mv, convention))
    }

    /// All folded braid moves available at a folded word.
    pub fn folded_moves(&self, word: &ReducedWord) -> Vec<BraidMove> {
        braid_moves(self.data.folded(), word)
    }
}
