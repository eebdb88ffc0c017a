//! Formal characters, the Freudenthal multiplicity oracle, and twining
//! characters counted through MV polytopes.
//!
//! Characters are taken on the coweight lattice: `V(lambda)` is a
//! representation of the dual group, whose roots are the simple coroots.
//! A [`CharacterSystem`] describes such a root system inside the ambient
//! coweight lattice by its simple roots `r_j` (integer vectors) and the
//! functionals `c_j` pairing with them. For a folding, the roots are the
//! embedded orbit coroots and `c_eta` is `alpha_i` for any `i` in `eta`, so
//! folded characters are supported on `sigma`-invariant coweights.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};
use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::folding::{FoldedSystem, FoldingData};
use crate::lusztig::LusztigDatum;
use crate::polytope::{build_polytope, enumerate_data, lies_in_weyl_hull};
use crate::root_datum::{Coweight, RootDatum};
use crate::scalar::Scalar;
use crate::weyl::{ReducedWord, WeylGroup};

/// A finitely supported integer combination of `e^mu`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct FormalCharacter {
    terms: BTreeMap<Coweight, i64>,
}

impl FormalCharacter {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e^mu`.
    pub fn monomial(mu: Coweight) -> Self {
        let mut out = Self::new();
        out.add(mu, 1);
        out
    }

    pub fn add(&mut self, mu: Coweight, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(mu.clone()).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&mu);
        }
    }

    pub fn coefficient(&self, mu: &Coweight) -> i64 {
        self.terms.get(mu).copied().unwrap_or(0)
    }

    pub fn support(&self) -> impl Iterator<Item = &Coweight> {
        self.terms.keys()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Coweight, i64)> {
        self.terms.iter().map(|(k, &v)| (k, v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Sum of the coefficients; the dimension for an honest character.
    pub fn total(&self) -> i64 {
        self.terms.values().sum()
    }

    pub fn mul(&self, other: &FormalCharacter) -> FormalCharacter {
        let mut out = FormalCharacter::new();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add(a + b, x * y);
            }
        }
        out
    }
}

impl FromIterator<(Coweight, i64)> for FormalCharacter {
    fn from_iter<I: IntoIterator<Item = (Coweight, i64)>>(iter: I) -> Self {
        let mut out = FormalCharacter::new();
        for (mu, c) in iter {
            out.add(mu, c);
        }
        out
    }
}

impl fmt::Display for FormalCharacter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mu, c) in by_height(self.terms.iter().map(|(k, &v)| (k.clone(), v))) {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if c == 1 {
                write!(f, "e^{mu}")?;
            } else {
                write!(f, "{c} e^{mu}")?;
            }
        }
        Ok(())
    }
}

/// Sorts by height, highest first, then by coordinates descending.
fn by_height<I: IntoIterator<Item = (Coweight, i64)>>(items: I) -> Vec<(Coweight, i64)> {
    let mut v: Vec<_> = items.into_iter().collect();
    v.sort_by(|(a, _), (b, _)| b.height().cmp(&a.height()).then_with(|| b.cmp(a)));
    v
}

/// A root system realized inside the coweight lattice, with exact
/// arithmetic in `T` for `rho` and the invariant form.
#[derive(Clone, Debug)]
pub struct CharacterSystem<T> {
    ambient: usize,
    roots: Vec<Coweight>,
    functionals: Vec<Vec<i64>>,
    cartan: Vec<Vec<i64>>,
    lengths: Vec<i64>,
    positive: Vec<Vec<i64>>,
    rho: Vec<T>,
}

impl<T: Scalar> CharacterSystem<T> {
    /// The system whose roots are the simple coroots of `datum`.
    pub fn of_datum(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let roots = (0..n).map(|i| datum.simple_coroot(i)).collect();
        let functionals = (0..n)
            .map(|j| (0..n).map(|i| datum.entry(i, j)).collect())
            .collect();
        Self::from_parts(n, roots, functionals).expect("a root datum gives a valid system")
    }

    /// The folded system: roots are the embedded orbit coroots.
    pub fn folded(folding: &FoldingData) -> Self {
        let datum = folding.datum();
        let n = datum.rank();
        let k = folding.orbits().len();
        let roots = (0..k)
            .map(|eta| {
                let mut e = Coweight::zero(k);
                e.0[eta] = 1;
                folding.embed(&e).expect("rank matches")
            })
            .collect();
        let functionals = folding
            .orbits()
            .iter()
            .map(|o| (0..n).map(|i| datum.entry(i, o.nodes()[0])).collect())
            .collect();
        Self::from_parts(n, roots, functionals).expect("a folding gives a valid system")
    }

    fn from_parts(ambient: usize, roots: Vec<Coweight>, functionals: Vec<Vec<i64>>) -> Result<Self> {
        let k = roots.len();
        let pair = |f: &[i64], x: &[i64]| -> i64 { f.iter().zip(x).map(|(a, b)| a * b).sum() };
        let cartan: Vec<Vec<i64>> = (0..k)
            .map(|j| (0..k).map(|l| pair(&functionals[l], &roots[j].0)).collect())
            .collect();
        if (0..k).any(|j| cartan[j][j] != 2) {
            return Err(Error::InvalidCartan(format!("{cartan:?}")));
        }
        // d_l with d_l C_jl = d_j C_lj, computed along a spanning tree
        let mut lengths = vec![0i64; k];
        let mut scale: Vec<Option<(i64, i64)>> = vec![None; k];
        for start in 0..k {
            if scale[start].is_some() {
                continue;
            }
            scale[start] = Some((1, 1));
            let mut queue = VecDeque::from([start]);
            while let Some(j) = queue.pop_front() {
                let (pj, qj) = scale[j].unwrap();
                for l in 0..k {
                    if l != j && cartan[j][l] != 0 && scale[l].is_none() {
                        // d_l = d_j C_lj / C_jl
                        let (p, q) = (pj * cartan[l][j], qj * cartan[j][l]);
                        let g = gcd(p.abs(), q.abs());
                        let s = q.signum();
                        scale[l] = Some((s * p / g, s * q / g));
                        queue.push_back(l);
                    }
                }
            }
        }
        let lcm = scale.iter().map(|s| s.unwrap().1).fold(1, |a, b| a / gcd(a, b) * b);
        for (d, s) in lengths.iter_mut().zip(&scale) {
            let (p, q) = s.unwrap();
            *d = p * (lcm / q);
        }
        let g = lengths.iter().fold(0, |a, &b| gcd(a, b));
        for d in &mut lengths {
            *d /= g;
        }
        for j in 0..k {
            for l in 0..k {
                if lengths[l] * cartan[j][l] != lengths[j] * cartan[l][j] {
                    return Err(Error::InvalidCartan(format!("{cartan:?} is not symmetrizable")));
                }
            }
        }

        // positive roots in root coordinates, closed under simple reflections
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for j in 0..k {
            let mut e = vec![0; k];
            e[j] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for l in 0..k {
                let c: i64 = (0..k).map(|j| b[j] * cartan[j][l]).sum();
                let mut out = b.clone();
                out[l] -= c;
                if out.iter().all(|&x| x >= 0) && seen.insert(out.clone()) {
                    queue.push_back(out);
                }
            }
        }
        let mut positive: Vec<Vec<i64>> = seen.into_iter().collect();
        positive.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| a.cmp(b))
        });

        let mut rho = vec![T::zero(); ambient];
        let half = T::from_int(1) / T::from_int(2);
        for b in &positive {
            for (j, &c) in b.iter().enumerate() {
                for (i, &r) in roots[j].0.iter().enumerate() {
                    rho[i] = rho[i].clone() + T::from_int(c * r) * half.clone();
                }
            }
        }
        Ok(Self {
            ambient,
            roots,
            functionals,
            cartan,
            lengths,
            positive,
            rho,
        })
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn simple_roots(&self) -> &[Coweight] {
        &self.roots
    }

    /// `C_jl = <r_j, c_l>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    /// Half squared lengths of the simple roots; short roots get 1.
    pub fn lengths(&self) -> &[i64] {
        &self.lengths
    }

    /// Positive roots in root coordinates, by height.
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// Positive roots as ambient coweights.
    pub fn positive_root_vectors(&self) -> Vec<Coweight> {
        self.positive.iter().map(|b| self.vector_of(b)).collect()
    }

    pub fn rho(&self) -> &[T] {
        &self.rho
    }

    fn vector_of(&self, b: &[i64]) -> Coweight {
        let mut out = Coweight::zero(self.ambient);
        for (j, &c) in b.iter().enumerate() {
            out += &self.roots[j].scaled(c);
        }
        out
    }

    /// `<x, c_j>` for an integer vector.
    pub fn pairing(&self, x: &Coweight, j: usize) -> i64 {
        self.functionals[j].iter().zip(&x.0).map(|(a, b)| a * b).sum()
    }

    fn pairing_t(&self, x: &[T], j: usize) -> T {
        self.functionals[j]
            .iter()
            .zip(x)
            .fold(T::zero(), |acc, (&a, b)| acc + T::from_int(a) * b.clone())
    }

    /// `<rho, c_j>` for every `j`; equal to one throughout.
    pub fn rho_pairings(&self) -> Vec<T> {
        (0..self.rank()).map(|j| self.pairing_t(&self.rho, j)).collect()
    }

    /// `(x, y)` where `x` is given in root coordinates; `(r_j, y) = d_j <y, c_j>`.
    pub fn form_root(&self, x: &[i64], y: &[T]) -> T {
        x.iter().enumerate().fold(T::zero(), |acc, (j, &b)| {
            acc + T::from_int(b * self.lengths[j]) * self.pairing_t(y, j)
        })
    }

    /// Root coordinates of a vector in the span of the roots.
    pub fn root_coords(&self, x: &[T]) -> Result<Vec<T>> {
        // solve sum_j b_j C_jl = <x, c_l>
        let k = self.rank();
        let mut m: Vec<Vec<T>> = (0..k)
            .map(|l| {
                let mut row: Vec<T> = (0..k).map(|j| T::from_int(self.cartan[j][l])).collect();
                row.push(self.pairing_t(x, l));
                row
            })
            .collect();
        for col in 0..k {
            let pivot = (col..k)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::Inconsistent("singular Cartan matrix".into()))?;
            m.swap(col, pivot);
            let p = m[col][col].clone();
            for c in col..=k {
                m[col][c] = m[col][c].clone() / p.clone();
            }
            for r in 0..k {
                if r != col && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in col..=k {
                        let v = m[col][c].clone() * f.clone();
                        m[r][c] = m[r][c].clone() - v;
                    }
                }
            }
        }
        let b: Vec<T> = m.into_iter().map(|row| row[k].clone()).collect();
        // x must lie in the span
        let mut back = vec![T::zero(); self.ambient];
        for (j, bj) in b.iter().enumerate() {
            for (i, &r) in self.roots[j].0.iter().enumerate() {
                back[i] = back[i].clone() + bj.clone() * T::from_int(r);
            }
        }
        if back.iter().zip(x).any(|(a, c)| (a.clone() - c.clone()).abs() > tolerance::<T>()) {
            return Err(Error::Inconsistent("vector is outside the span of the roots".into()));
        }
        Ok(b)
    }

    /// The invariant form `(x, y)`, with `x` in the span of the roots.
    pub fn form(&self, x: &[T], y: &[T]) -> Result<T> {
        let b = self.root_coords(x)?;
        Ok(b.iter().enumerate().fold(T::zero(), |acc, (j, bj)| {
            acc + bj.clone() * T::from_int(self.lengths[j]) * self.pairing_t(y, j)
        }))
    }

    /// The simple reflection `s_j(x) = x - <x, c_j> r_j` on integer vectors.
    pub fn reflect(&self, j: usize, x: &Coweight) -> Coweight {
        x - &self.roots[j].scaled(self.pairing(x, j))
    }

    pub fn is_dominant(&self, lambda: &Coweight) -> bool {
        (0..self.rank()).all(|j| self.pairing(lambda, j) >= 0)
    }

    pub fn check_dominant(&self, lambda: &Coweight) -> Result<()> {
        if lambda.rank() != self.ambient {
            return Err(Error::RankMismatch {
                expected: self.ambient,
                found: lambda.rank(),
            });
        }
        match (0..self.rank()).find(|&j| self.pairing(lambda, j) < 0) {
            None => Ok(()),
            Some(j) => Err(Error::NotDominant {
                coweight: lambda.to_string(),
                node: j + 1,
                value: self.pairing(lambda, j),
            }),
        }
    }

    fn to_t(x: &Coweight) -> Vec<T> {
        x.0.iter().map(|&c| T::from_int(c)).collect()
    }

    /// The full character of `V(lambda)` by the Freudenthal recursion
    /// `((l+rho, l+rho) - (m+rho, m+rho)) m(mu) = 2 sum_{a>0} sum_{k>=1} (mu+ka, a) m(mu+ka)`.
    pub fn weyl_character(&self, lambda: &Coweight) -> Result<FormalCharacter> {
        self.check_dominant(lambda)?;
        let roots: Vec<(Vec<i64>, Coweight)> = self
            .positive
            .iter()
            .map(|b| (b.clone(), self.vector_of(b)))
            .collect();
        let lambda_t = Self::to_t(lambda);
        let two_rho: Vec<T> = self.rho.iter().map(|r| r.clone() + r.clone()).collect();
        let two = T::from_int(2);

        let mut mult: HashMap<Coweight, i64> = HashMap::from([(lambda.clone(), 1)]);
        let mut level = vec![lambda.clone()];
        while !level.is_empty() {
            let mut next: Vec<Coweight> = level
                .iter()
                .flat_map(|nu| self.roots.iter().map(move |r| nu - r))
                .collect();
            next.sort();
            next.dedup();
            let mut kept = Vec::new();
            for mu in next {
                // (lambda - mu, lambda + mu + 2 rho), with lambda - mu a root combination
                let diff = self.root_coords(&Self::to_t(&(lambda - &mu)))?;
                let diff: Vec<i64> = diff
                    .iter()
                    .map(|c| c.to_integer().ok_or_else(|| Error::Inconsistent("non-integral root coordinates".into())))
                    .collect::<Result<_>>()?;
                let sum: Vec<T> = lambda_t
                    .iter()
                    .zip(&mu.0)
                    .zip(&two_rho)
                    .map(|((l, &m), r)| l.clone() + T::from_int(m) + r.clone())
                    .collect();
                let denom = self.form_root(&diff, &sum);
                if denom <= tolerance::<T>() {
                    continue;
                }
                let mut numer = T::zero();
                for (b, alpha) in &roots {
                    let mut k = 1;
                    loop {
                        let up = &mu + &alpha.scaled(k);
                        if !self.reaches_above(&up, lambda) {
                            break;
                        }
                        if let Some(&m) = mult.get(&up) {
                            numer = numer + T::from_int(m) * self.form_root(b, &Self::to_t(&up));
                        }
                        k += 1;
                    }
                }
                let value = two.clone() * numer / denom;
                let m = value
                    .to_integer()
                    .ok_or_else(|| Error::Inconsistent(format!("non-integral multiplicity {value:?} at {mu}")))?;
                if m < 0 {
                    return Err(Error::Inconsistent(format!("negative multiplicity at {mu}")));
                }
                if m > 0 {
                    mult.insert(mu.clone(), m);
                    kept.push(mu);
                }
            }
            level = kept;
        }
        Ok(mult.into_iter().collect())
    }

    /// Whether `lambda - x` is still a nonnegative root combination, so that
    /// weights can appear at `x`.
    fn reaches_above(&self, x: &Coweight, lambda: &Coweight) -> bool {
        match self.root_coords(&Self::to_t(&(lambda - x))) {
            Ok(b) => b.iter().all(|c| *c >= T::zero()),
            Err(_) => false,
        }
    }

    /// `dim V_mu(lambda)`.
    pub fn freudenthal_multiplicity(&self, lambda: &Coweight, mu: &Coweight) -> Result<i64> {
        Ok(self.weyl_character(lambda)?.coefficient(mu))
    }

    /// `prod_{a>0} (lambda + rho, a) / (rho, a)`.
    pub fn weyl_dimension(&self, lambda: &Coweight) -> Result<i64> {
        self.check_dominant(lambda)?;
        let shifted: Vec<T> = Self::to_t(lambda)
            .into_iter()
            .zip(&self.rho)
            .map(|(l, r)| l + r.clone())
            .collect();
        let mut value = T::one();
        for b in &self.positive {
            value = value * self.form_root(b, &shifted) / self.form_root(b, &self.rho);
        }
        value
            .to_integer()
            .ok_or_else(|| Error::Inconsistent(format!("non-integral dimension {value:?}")))
    }

    /// `sum_w (-1)^{l(w)} e^{w(x)}` for a regular `x`, in doubled coordinates.
    fn alternating_sum(&self, doubled: &Coweight) -> FormalCharacter {
        let mut seen: HashMap<Coweight, i64> = HashMap::from([(doubled.clone(), 1)]);
        let mut queue = VecDeque::from([doubled.clone()]);
        while let Some(x) = queue.pop_front() {
            let sign = seen[&x];
            for j in 0..self.rank() {
                let y = self.reflect(j, &x);
                if !seen.contains_key(&y) {
                    seen.insert(y.clone(), -sign);
                    queue.push_back(y);
                }
            }
        }
        seen.into_iter().collect()
    }

    fn doubled_rho(&self) -> Coweight {
        Coweight(
            self.rho
                .iter()
                .map(|r| (r.clone() + r.clone()).to_integer().expect("2 rho is integral"))
                .collect(),
        )
    }

    /// Checks `sum_w (-1)^{l(w)} e^{w(lambda+rho)} = ch V(lambda) * sum_w (-1)^{l(w)} e^{w rho}`.
    pub fn alternating_sum_identity(&self, lambda: &Coweight, character: &FormalCharacter) -> bool {
        let two_rho = self.doubled_rho();
        let lhs = self.alternating_sum(&(&lambda.scaled(2) + &two_rho));
        let denominator = self.alternating_sum(&two_rho);
        let doubled: FormalCharacter = character.iter().map(|(mu, c)| (mu.scaled(2), c)).collect();
        lhs == doubled.mul(&denominator)
    }
}

fn tolerance<T: Scalar>() -> T {
    T::tolerance()
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Number of MV polytopes of coweight `mu - lambda` on `word` that lie in
/// the Weyl polytope of `lambda`.
pub fn mv_weight_multiplicity(
    group: &WeylGroup,
    lambda: &Coweight,
    mu: &Coweight,
    word: &ReducedWord,
) -> Result<i64> {
    group.datum().check_dominant(lambda)?;
    let data = enumerate_data(group, word, &(mu - lambda))?;
    count_in_hull(group, lambda, data)
}

fn count_in_hull(group: &WeylGroup, lambda: &Coweight, data: Vec<LusztigDatum>) -> Result<i64> {
    data.par_iter()
        .map(|d| Ok(lies_in_weyl_hull(group, &build_polytope(group, d)?, lambda)? as i64))
        .sum()
}

/// The character of `V(lambda)` counted through MV polytopes.
pub fn mv_character(group: &WeylGroup, lambda: &Coweight, word: &ReducedWord) -> Result<FormalCharacter> {
    let weights = group.datum().weights_of(lambda)?;
    let counts = weights
        .par_iter()
        .map(|mu| Ok((mu.clone(), mv_weight_multiplicity(group, lambda, mu, word)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(counts.into_iter().collect())
}

/// Coefficient at `mu` of the twining character: the number of
/// block-constant data on the lifted word with coweight `mu - lambda` whose
/// polytope lies in the Weyl polytope of `lambda`.
pub fn twining_coefficient(system: &FoldedSystem, lambda: &Coweight, mu: &Coweight) -> Result<i64> {
    let folding = system.data();
    for x in [lambda, mu] {
        if !folding.is_invariant(x) {
            return Err(Error::NotInvariantCoweight(x.to_string()));
        }
    }
    let nu = match folding.restrict(&(mu - lambda)) {
        Ok(nu) => nu,
        Err(_) => return Ok(0),
    };
    let folded = enumerate_data(system.folded_group(), &system.folded_longest_word(), &nu)?;
    let lifted = folded
        .iter()
        .map(|d| folding.unfold_datum(d, Default::default()))
        .collect::<Result<Vec<_>>>()?;
    count_in_hull(system.group(), lambda, lifted)
}

/// The same count by enumerating every datum on the lifted word and keeping
/// the block-constant ones.
pub fn twining_coefficient_by_filter(system: &FoldedSystem, lambda: &Coweight, mu: &Coweight) -> Result<i64> {
    let folding = system.data();
    let word = system.lifted_longest_word(Default::default());
    let all = enumerate_data(system.group(), &word, &(mu - lambda))?;
    let mut kept = Vec::new();
    for d in all {
        if folding.is_block_constant(&word, &d)? {
            kept.push(d);
        }
    }
    count_in_hull(system.group(), lambda, kept)
}

/// The twining character of `V(lambda)` on every `sigma`-invariant weight,
/// zero coefficients included.
pub fn twining_table(system: &FoldedSystem, lambda: &Coweight) -> Result<Vec<(Coweight, i64)>> {
    let folding = system.data();
    if !folding.is_invariant(lambda) {
        return Err(Error::NotInvariantCoweight(lambda.to_string()));
    }
    let weights: Vec<Coweight> = system
        .group()
        .datum()
        .weights_of(lambda)?
        .into_iter()
        .filter(|mu| folding.is_invariant(mu))
        .collect();
    let rows = weights
        .par_iter()
        .map(|mu| Ok((mu.clone(), twining_coefficient(system, lambda, mu)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(by_height(rows))
}

pub fn twining_character(system: &FoldedSystem, lambda: &Coweight) -> Result<FormalCharacter> {
    Ok(twining_table(system, lambda)?.into_iter().collect())
}

/// Per-weight comparison of the twining character with the folded Weyl
/// character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwiningReport {
    pub lambda: Coweight,
    pub folded_lambda: Coweight,
    /// `(mu, twining coefficient, folded multiplicity)`, highest first.
    pub rows: Vec<(Coweight, i64, i64)>,
    pub equal: bool,
    pub alternating_sum_ok: bool,
}

impl TwiningReport {
    pub fn mismatches(&self) -> impl Iterator<Item = &(Coweight, i64, i64)> {
        self.rows.iter().filter(|(_, a, b)| a != b)
    }
}

impl fmt::Display for TwiningReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "lambda {} (folded {})", self.lambda, self.folded_lambda)?;
        let width = self
            .rows
            .iter()
            .map(|(mu, _, _)| mu.to_string().len())
            .max()
            .unwrap_or(0)
            .max("weight".len());
        writeln!(f, "{:<width$}  {:>7}  {:>6}", "weight", "twining", "folded")?;
        for (mu, t, m) in &self.rows {
            let mark = if t == m { "" } else { "  *" };
            writeln!(f, "{:<width$}  {:>7}  {:>6}{mark}", mu.to_string(), t, m)?;
        }
        writeln!(
            f,
            "alternating sum: {}",
            if self.alternating_sum_ok { "ok" } else { "FAILED" }
        )?;
        write!(f, "equal: {}", self.equal)
    }
}

/// Compares the twining character of `V(lambda)` against the Weyl character
/// of the folded system at the same highest weight.
pub fn verify_twining<T: Scalar>(system: &FoldedSystem, lambda: &Coweight) -> Result<TwiningReport> {
    let folding = system.data();
    system.group().datum().check_dominant(lambda)?;
    let twining = twining_table(system, lambda)?;
    let characters = CharacterSystem::<T>::folded(folding);
    let folded = characters.weyl_character(lambda)?;
    let alternating_sum_ok = characters.alternating_sum_identity(lambda, &folded);

    let mut rows: BTreeMap<Coweight, (i64, i64)> = BTreeMap::new();
    for (mu, t) in &twining {
        rows.entry(mu.clone()).or_default().0 = *t;
    }
    for (mu, m) in folded.iter() {
        rows.entry(mu.clone()).or_default().1 = m;
    }
    let mut rows: Vec<(Coweight, i64, i64)> = rows.into_iter().map(|(mu, (t, m))| (mu, t, m)).collect();
    rows.sort_by(|(a, _, _), (b, _, _)| b.height().cmp(&a.height()).then_with(|| b.cmp(a)));
    let equal = rows.iter().all(|(_, t, m)| t == m);
    let folded_lambda = folding
        .restrict(lambda)
        .unwrap_or_else(|_| Coweight(folding.orbits().iter().map(|o| lambda.0[o.nodes()[0]]).collect()));
    Ok(TwiningReport {
        lambda: lambda.clone(),
        folded_lambda,
        rows,
        equal,
        alternating_sum_ok,
    })
}
