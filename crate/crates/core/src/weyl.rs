//! Weyl group elements, reduced words and the braid-move graph.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::polytope::VertexPlan;
use crate::root_datum::{Coweight, RootDatum};
use crate::scalar::Scalar;
use crate::WeightVector;

/// Default bound on the number of group elements enumerated.
pub const DEFAULT_GROUP_CAP: usize = 100_000;
/// Default bound on the number of reduced words visited by a breadth-first search.
pub const DEFAULT_WORD_CAP: usize = 2_000_000;

/// A Weyl group element acting on the coweight lattice, stored as an integer
/// matrix in the simple-coroot basis (column `j` is the image of `alpha_j^vee`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    rank: usize,
    matrix: Vec<i64>,
    length: usize,
}

impl WeylElement {
    pub fn identity(datum: &RootDatum) -> Self {
        let n = datum.rank();
        let mut matrix = vec![0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1;
        }
        Self {
            rank: n,
            matrix,
            length: 0,
        }
    }

    /// The simple reflection `s_i`.
    pub fn simple(datum: &RootDatum, i: usize) -> Self {
        let n = datum.rank();
        let mut matrix = vec![0; n * n];
        for j in 0..n {
            matrix[j * n + j] = 1;
            // s_i(alpha_j^vee) = alpha_j^vee - a_ji alpha_i^vee
            matrix[i * n + j] -= datum.entry(j, i);
        }
        Self {
            rank: n,
            matrix,
            length: 1,
        }
    }

    /// Wraps a matrix, computing the length as the number of positive
    /// coroots sent to negative ones.
    pub fn from_matrix(datum: &RootDatum, matrix: Vec<i64>) -> Self {
        let n = datum.rank();
        assert_eq!(matrix.len(), n * n, "matrix size must match rank");
        let mut w = Self {
            rank: n,
            matrix,
            length: 0,
        };
        w.length = datum
            .positive_coroots()
            .iter()
            .filter(|b| w.apply(b).is_nonpositive())
            .count();
        w
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply(&self, mu: &Coweight) -> Coweight {
        let n = self.rank;
        Coweight(
            (0..n)
                .map(|r| (0..n).map(|c| self.matrix[r * n + c] * mu.0[c]).sum())
                .collect(),
        )
    }

    /// The product `self * other` (apply `other` first).
    pub fn mul(&self, datum: &RootDatum, other: &WeylElement) -> WeylElement {
        let n = self.rank;
        let mut m = vec![0; n * n];
        for r in 0..n {
            for c in 0..n {
                m[r * n + c] = (0..n)
                    .map(|k| self.matrix[r * n + k] * other.matrix[k * n + c])
                    .sum();
            }
        }
        WeylElement::from_matrix(datum, m)
    }

    /// `w s_i` is shorter than `w`.
    pub fn has_right_descent(&self, i: usize) -> bool {
        let n = self.rank;
        (0..n).any(|r| self.matrix[r * n + i] < 0)
    }

    /// A reduced word, built by repeatedly stripping the smallest right descent.
    pub fn reduced_word(&self, datum: &RootDatum) -> ReducedWord {
        let mut letters = Vec::with_capacity(self.length);
        let mut w = self.clone();
        while let Some(i) = (0..self.rank).find(|&i| w.has_right_descent(i)) {
            letters.push(i);
            w = w.mul(datum, &WeylElement::simple(datum, i));
        }
        letters.reverse();
        ReducedWord(letters)
    }

    pub fn inverse(&self, datum: &RootDatum) -> WeylElement {
        let mut word = self.reduced_word(datum).0;
        word.reverse();
        datum
            .element_of(&ReducedWord(word))
            .expect("letters of a computed reduced word are valid nodes")
    }

    /// Action on weights: `<mu, w.xi> = <w^{-1} mu, xi>`.
    pub fn act_weight<T: Scalar>(&self, datum: &RootDatum, xi: &WeightVector<T>) -> WeightVector<T> {
        let inv = self.inverse(datum);
        WeightVector(
            (0..self.rank)
                .map(|i| {
                    let image = inv.apply(&datum.simple_coroot(i));
                    image
                        .0
                        .iter()
                        .zip(&xi.0)
                        .fold(T::zero(), |acc, (&c, x)| acc + T::from_int(c) * x.clone())
                })
                .collect(),
        )
    }
}

/// A word in the simple reflections. Letters are 0-based node indices;
/// parsing and display use 1-based labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord(pub Vec<usize>);

impl ReducedWord {
    pub fn new(letters: Vec<usize>) -> Self {
        Self(letters)
    }

    /// From 1-based node labels, e.g. `one_based(&[1, 2, 1])`.
    ///
    /// Panics on a zero label.
    pub fn one_based(labels: &[usize]) -> Self {
        Self(
            labels
                .iter()
                .map(|&l| l.checked_sub(1).expect("node labels start at 1"))
                .collect(),
        )
    }

    pub fn letters(&self) -> &[usize] {
        &self.0
    }

    pub fn labels(&self) -> Vec<usize> {
        self.0.iter().map(|l| l + 1).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_reduced(&self, datum: &RootDatum) -> bool {
        datum
            .element_of(self)
            .map(|w| w.length() == self.len())
            .unwrap_or(false)
    }

    /// The coroots `beta_k = s_{i_1} ... s_{i_{k-1}} (alpha_{i_k}^vee)`.
    pub fn inversion_coroots(&self, datum: &RootDatum) -> Vec<Coweight> {
        let mut w = WeylElement::identity(datum);
        let mut out = Vec::with_capacity(self.len());
        for &i in &self.0 {
            out.push(w.apply(&datum.simple_coroot(i)));
            w = w.mul(datum, &WeylElement::simple(datum, i));
        }
        out
    }

    /// Apply a node permutation letterwise.
    pub fn permuted(&self, perm: &[usize]) -> ReducedWord {
        ReducedWord(self.0.iter().map(|&i| perm[i]).collect())
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", l + 1)?;
        }
        Ok(())
    }
}

impl FromStr for ReducedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.is_empty() {
            return Ok(ReducedWord::default());
        }
        s.split(',')
            .map(|t| match t.trim().parse::<usize>() {
                Ok(l) if l >= 1 => Ok(l - 1),
                _ => Err(Error::Parse(format!("bad word letter {t:?}"))),
            })
            .collect::<Result<Vec<_>>>()
            .map(ReducedWord)
    }
}

/// A braid relation applied at a window of a word: the alternating block
/// `i j i ...` of length `order` starting at `position` becomes `j i j ...`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BraidMove {
    /// 0-based start of the window.
    pub position: usize,
    pub order: u8,
    /// `(i, j)`: the window currently starts with `i`.
    pub nodes: (usize, usize),
}

impl BraidMove {
    /// Checks that the window of `word` matches this move.
    pub fn matches(&self, word: &ReducedWord) -> bool {
        let d = usize::from(self.order);
        let (i, j) = self.nodes;
        i != j
            && self.position + d <= word.len()
            && (0..d).all(|k| word.0[self.position + k] == if k % 2 == 0 { i } else { j })
    }

    pub fn apply(&self, word: &ReducedWord) -> Result<ReducedWord> {
        if !self.matches(word) {
            return Err(Error::MoveMismatch(self.to_string(), word.to_string()));
        }
        let (i, j) = self.nodes;
        let mut out = word.clone();
        for k in 0..usize::from(self.order) {
            out.0[self.position + k] = if k % 2 == 0 { j } else { i };
        }
        Ok(out)
    }

    /// The move that undoes this one.
    pub fn reversed(&self) -> BraidMove {
        BraidMove {
            position: self.position,
            order: self.order,
            nodes: (self.nodes.1, self.nodes.0),
        }
    }
}

impl fmt::Display for BraidMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "position {} d={} ({},{})",
            self.position + 1,
            self.order,
            self.nodes.0 + 1,
            self.nodes.1 + 1
        )
    }
}

/// Every braid move applicable to `word`, ordered by position.
pub fn braid_moves(datum: &RootDatum, word: &ReducedWord) -> Vec<BraidMove> {
    let w = word.letters();
    let mut out = Vec::new();
    for p in 0..w.len().saturating_sub(1) {
        let (i, j) = (w[p], w[p + 1]);
        if i == j {
            continue;
        }
        let mv = BraidMove {
            position: p,
            order: datum.braid_order(i, j),
            nodes: (i, j),
        };
        if mv.matches(word) {
            out.push(mv);
        }
    }
    out
}

impl RootDatum {
    /// The product `s_{i_1} ... s_{i_k}`; non-reduced words are allowed.
    pub fn element_of(&self, word: &ReducedWord) -> Result<WeylElement> {
        let n = self.rank();
        let mut w = WeylElement::identity(self);
        for &i in word.letters() {
            self.check_node(i)?;
            // (w s_i)(alpha_j^vee) = w(alpha_j^vee) - a_ji w(alpha_i^vee)
            let col_i: Vec<i64> = (0..n).map(|r| w.matrix[r * n + i]).collect();
            for j in 0..n {
                let a = self.entry(j, i);
                if a != 0 {
                    for r in 0..n {
                        w.matrix[r * n + j] -= a * col_i[r];
                    }
                }
            }
        }
        Ok(WeylElement::from_matrix(self, w.matrix))
    }

    /// A reduced word of the longest element, built greedily from the left.
    pub fn longest_word(&self) -> ReducedWord {
        let mut w = WeylElement::identity(self);
        let mut letters = Vec::new();
        while let Some(i) = (0..self.rank()).find(|&i| !w.has_right_descent(i)) {
            letters.push(i);
            w = w.mul(self, &WeylElement::simple(self, i));
        }
        ReducedWord(letters)
    }

    /// The unique element sending every positive coroot to a negative one.
    pub fn longest_element(&self) -> WeylElement {
        self.element_of(&self.longest_word())
            .expect("greedy word uses valid nodes")
    }
}

/// All reduced words of `w`, sorted lexicographically. Fails when there are
/// more than `cap` of them.
pub fn all_reduced_words(
    datum: &RootDatum,
    w: &WeylElement,
    cap: usize,
) -> Result<Vec<ReducedWord>> {
    fn count(
        datum: &RootDatum,
        w: &WeylElement,
        memo: &mut HashMap<WeylElement, u128>,
    ) -> u128 {
        if w.is_identity() {
            return 1;
        }
        if let Some(&c) = memo.get(w) {
            return c;
        }
        let c = (0..datum.rank())
            .filter(|&i| w.has_right_descent(i))
            .map(|i| count(datum, &w.mul(datum, &WeylElement::simple(datum, i)), memo))
            .fold(0u128, u128::saturating_add);
        memo.insert(w.clone(), c);
        c
    }

    fn words(
        datum: &RootDatum,
        w: &WeylElement,
        memo: &mut HashMap<WeylElement, Vec<ReducedWord>>,
    ) -> Vec<ReducedWord> {
        if w.is_identity() {
            return vec![ReducedWord::default()];
        }
        if let Some(ws) = memo.get(w) {
            return ws.clone();
        }
        let mut out = Vec::new();
        for i in (0..datum.rank()).filter(|&i| w.has_right_descent(i)) {
            let shorter = w.mul(datum, &WeylElement::simple(datum, i));
            for mut word in words(datum, &shorter, memo) {
                word.0.push(i);
                out.push(word);
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    let total = count(datum, w, &mut HashMap::new());
    if total > cap as u128 {
        return Err(Error::CapExceeded { cap });
    }
    let mut out = words(datum, w, &mut HashMap::new());
    out.sort();
    Ok(out)
}

/// The Weyl group of a root datum, enumerated once, together with caches for
/// braid paths and vertex plans. Caches sit behind mutexes so a group can be
/// shared between worker threads.
#[derive(Debug)]
pub struct WeylGroup {
    datum: RootDatum,
    elements: Vec<WeylElement>,
    words: Vec<ReducedWord>,
    index: HashMap<Vec<i64>, usize>,
    right: Vec<Vec<usize>>,
    inverse: Vec<usize>,
    longest: usize,
    word_cap: usize,
    paths: Mutex<PathCache>,
    pub(crate) plans: Mutex<HashMap<ReducedWord, Arc<VertexPlan>>>,
}

impl WeylGroup {
    pub fn new(datum: RootDatum) -> Result<Self> {
        Self::with_caps(datum, DEFAULT_GROUP_CAP, DEFAULT_WORD_CAP)
    }

    /// Enumerates the group breadth-first by length. Each element records
    /// the first reduced word found, which is the lexicographically
    /// smallest among its reduced words.
    pub fn with_caps(datum: RootDatum, group_cap: usize, word_cap: usize) -> Result<Self> {
        let n = datum.rank();
        let e = WeylElement::identity(&datum);
        let mut elements = vec![e.clone()];
        let mut words = vec![ReducedWord::default()];
        let mut index = HashMap::from([(e.matrix.clone(), 0usize)]);
        let mut k = 0;
        while k < elements.len() {
            for i in 0..n {
                if elements[k].has_right_descent(i) {
                    continue;
                }
                let next = elements[k].mul(&datum, &WeylElement::simple(&datum, i));
                if index.contains_key(&next.matrix) {
                    continue;
                }
                if elements.len() >= group_cap {
                    return Err(Error::CapExceeded { cap: group_cap });
                }
                let mut word = words[k].clone();
                word.0.push(i);
                index.insert(next.matrix.clone(), elements.len());
                elements.push(next);
                words.push(word);
            }
            k += 1;
        }
        let right: Vec<Vec<usize>> = elements
            .iter()
            .map(|w| {
                (0..n)
                    .map(|i| index[&w.mul(&datum, &WeylElement::simple(&datum, i)).matrix])
                    .collect()
            })
            .collect();
        let mut group = Self {
            longest: elements.len() - 1,
            datum,
            elements,
            words,
            index,
            right,
            inverse: Vec::new(),
            word_cap,
            paths: Mutex::new(HashMap::new()),
            plans: Mutex::new(HashMap::new()),
        };
        group.inverse = (0..group.len())
            .map(|k| {
                let mut rev = group.words[k].clone();
                rev.0.reverse();
                group.walk_to(&rev)
            })
            .collect();
        debug_assert_eq!(group.elements[group.longest].length, group.datum.num_positive());
        Ok(group)
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    /// The canonical reduced word of element `k`.
    pub fn word(&self, k: usize) -> &ReducedWord {
        &self.words[k]
    }

    pub fn index_of(&self, w: &WeylElement) -> Option<usize> {
        self.index.get(&w.matrix).copied()
    }

    pub fn identity_index(&self) -> usize {
        0
    }

    pub fn longest_index(&self) -> usize {
        self.longest
    }

    pub fn longest_element(&self) -> &WeylElement {
        &self.elements[self.longest]
    }

    /// Index of `w s_i`.
    pub fn right_mul(&self, k: usize, i: usize) -> usize {
        self.right[k][i]
    }

    pub fn inverse_index(&self, k: usize) -> usize {
        self.inverse[k]
    }

    pub fn word_cap(&self) -> usize {
        self.word_cap
    }

    fn walk_to(&self, word: &ReducedWord) -> usize {
        word.letters()
            .iter()
            .fold(0, |k, &i| self.right[k][i])
    }

    /// Indices of the prefix elements `w_0 = e, w_1, ..., w_k` of a word.
    pub fn prefixes(&self, word: &ReducedWord) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(word.len() + 1);
        let mut k = 0;
        out.push(k);
        for &i in word.letters() {
            self.datum.check_node(i)?;
            k = self.right[k][i];
            out.push(k);
        }
        Ok(out)
    }

    /// Index of the element of a reduced word; errors when not reduced.
    pub fn reduced_index(&self, word: &ReducedWord) -> Result<usize> {
        let prefixes = self.prefixes(word)?;
        if self.elements[*prefixes.last().unwrap()].length != word.len() {
            return Err(Error::NotReduced(word.to_string()));
        }
        Ok(*prefixes.last().unwrap())
    }

    /// Checks that `word` is a reduced word of the longest element.
    pub fn check_longest_word(&self, word: &ReducedWord) -> Result<()> {
        match self.reduced_index(word) {
            Ok(k) if k == self.longest => Ok(()),
            Ok(_) | Err(Error::NotReduced(_)) => Err(Error::NotLongestWord(word.to_string())),
            Err(e) => Err(e),
        }
    }

    /// A shortest sequence of braid moves rewriting `from` into `to`, found
    /// by breadth-first search over reduced words. Results are memoized.
    pub fn braid_path(&self, from: &ReducedWord, to: &ReducedWord) -> Result<Arc<Vec<BraidMove>>> {
        let a = self.reduced_index(from)?;
        let b = self.reduced_index(to)?;
        if a != b {
            return Err(Error::DifferentElements(from.to_string(), to.to_string()));
        }
        let key = (from.clone(), to.clone());
        if let Some(p) = self.paths.lock().unwrap().get(&key) {
            return Ok(Arc::clone(p));
        }
        let path = Arc::new(self.search_path(from, to)?);
        self.paths
            .lock()
            .unwrap()
            .insert(key, Arc::clone(&path));
        Ok(path)
    }

    fn search_path(&self, from: &ReducedWord, to: &ReducedWord) -> Result<Vec<BraidMove>> {
        if from == to {
            return Ok(Vec::new());
        }
        let mut parent: HashMap<ReducedWord, (ReducedWord, BraidMove)> = HashMap::new();
        let mut queue = VecDeque::from([from.clone()]);
        while let Some(word) = queue.pop_front() {
            for mv in braid_moves(&self.datum, &word) {
                let next = mv.apply(&word)?;
                if next == *from || parent.contains_key(&next) {
                    continue;
                }
                parent.insert(next.clone(), (word.clone(), mv));
                if next == *to {
                    let mut moves = Vec::new();
                    let mut cur = next;
                    while cur != *from {
                        let (prev, mv) = parent.remove(&cur).unwrap();
                        moves.push(mv);
                        cur = prev;
                    }
                    moves.reverse();
                    return Ok(moves);
                }
                if parent.len() >= self.word_cap {
                    return Err(Error::CapExceeded { cap: self.word_cap });
                }
                queue.push_back(next);
            }
        }
        Err(Error::Inconsistent(format!(
            "no braid path from ({from}) to ({to})"
        )))
    }

    /// Every reduced word of the longest element reachable from `start`,
    /// with adjacency lists; used for exhaustive checks.
    pub fn word_graph(&self, start: &ReducedWord) -> Result<WordGraph> {
        self.check_longest_word(start)?;
        let mut words = vec![start.clone()];
        let mut index = HashMap::from([(start.clone(), 0usize)]);
        let mut edges = Vec::new();
        let mut k = 0;
        while k < words.len() {
            let mut adj = Vec::new();
            for mv in braid_moves(&self.datum, &words[k]) {
                let next = mv.apply(&words[k])?;
                let t = match index.get(&next) {
                    Some(&t) => t,
                    None => {
                        if words.len() >= self.word_cap {
                            return Err(Error::CapExceeded { cap: self.word_cap });
                        }
                        index.insert(next.clone(), words.len());
                        words.push(next);
                        words.len() - 1
                    }
                };
                adj.push((t, mv));
            }
            edges.push(adj);
            k += 1;
        }
        Ok(WordGraph {
            words,
            index,
            edges,
        })
    }
}

type PathCache = HashMap<(ReducedWord, ReducedWord), Arc<Vec<BraidMove>>>;

/// The braid-move graph on the reduced words of an element.
#[derive(Clone, Debug)]
pub struct WordGraph {
    pub words: Vec<ReducedWord>,
    pub index: HashMap<ReducedWord, usize>,
    pub edges: Vec<Vec<(usize, BraidMove)>>,
}

impl WordGraph {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Family;

    fn datum(s: &str) -> RootDatum {
        RootDatum::new(s.parse().unwrap())
    }

    /// Brute-force matrix product of simple reflections.
    fn brute_product(d: &RootDatum, labels: &[usize]) -> Vec<i64> {
        let n = d.rank();
        let mut m: Vec<i64> = (0..n * n).map(|k| i64::from(k / n == k % n)).collect();
        for &l in labels {
            let s = WeylElement::simple(d, l - 1);
            let mut out = vec![0; n * n];
            for r in 0..n {
                for c in 0..n {
                    out[r * n + c] = (0..n).map(|k| m[r * n + k] * s.matrix()[k * n + c]).sum();
                }
            }
            m = out;
        }
        m
    }

    #[test]
    fn element_of_examples() {
        let a2 = datum("A2");
        let w = a2.element_of(&ReducedWord::one_based(&[1, 2, 1])).unwrap();
        assert_eq!(w.length(), 3);
        assert_eq!(w, a2.longest_element());

        let e = a2.element_of(&ReducedWord::one_based(&[1, 1])).unwrap();
        assert!(e.is_identity());
        assert!(!ReducedWord::one_based(&[1, 1]).is_reduced(&a2));

        let a3 = datum("A3");
        let labels = [1, 2, 1, 3, 2, 1];
        let w = a3.element_of(&ReducedWord::one_based(&labels)).unwrap();
        assert_eq!(w.matrix(), brute_product(&a3, &labels).as_slice());
        assert_eq!(w.length(), 6);
        for beta in a3.positive_coroots() {
            assert!(w.apply(beta).is_nonpositive());
        }
        assert!(a3.element_of(&ReducedWord::one_based(&[4])).is_err());
    }

    #[test]
    fn longest_element_lengths() {
        assert_eq!(datum("A2").longest_element().length(), 3);
        assert_eq!(datum("A4").longest_element().length(), 10);
        // D4: count positive coroots independently by reflection closure.
        let d4 = datum("D4");
        let mut roots: Vec<Coweight> = (0..4).map(|i| d4.simple_coroot(i)).collect();
        let mut k = 0;
        while k < roots.len() {
            for i in 0..4 {
                let r = d4.reflect(i, &roots[k]).unwrap();
                if r.is_nonnegative() && !roots.contains(&r) {
                    roots.push(r);
                }
            }
            k += 1;
        }
        assert_eq!(roots.len(), 12);
        assert_eq!(d4.longest_element().length(), 12);
    }

    /// Stanley: the number of reduced words of w0 in S_n is
    /// binom(n,2)! / prod (2k-1)^(n-k).
    fn stanley(n: u128) -> u128 {
        let m = n * (n - 1) / 2;
        let num: u128 = (1..=m).product();
        let den: u128 = (1..n).map(|k| (2 * k - 1).pow((n - k) as u32)).product();
        num / den
    }

    /// Brute force: all words of length m over the alphabet, keep reduced
    /// words of w0.
    fn brute_force_count(d: &RootDatum) -> usize {
        let m = d.num_positive();
        let w0 = d.longest_element();
        let mut count = 0;
        let mut stack = vec![(Vec::<usize>::new(), WeylElement::identity(d))];
        while let Some((word, w)) = stack.pop() {
            if word.len() == m {
                count += usize::from(w == w0);
                continue;
            }
            for i in 0..d.rank() {
                if !w.has_right_descent(i) {
                    let mut next = word.clone();
                    next.push(i);
                    stack.push((next, w.mul(d, &WeylElement::simple(d, i))));
                }
            }
        }
        count
    }

    #[test]
    fn reduced_word_counts() {
        let a2 = datum("A2");
        let words = all_reduced_words(&a2, &a2.longest_element(), 100).unwrap();
        assert_eq!(
            words,
            vec![ReducedWord::one_based(&[1, 2, 1]), ReducedWord::one_based(&[2, 1, 2])]
        );
        assert_eq!(stanley(4), 16);
        assert_eq!(stanley(5), 768);
        for (label, n) in [("A3", 4), ("A4", 5)] {
            let d = datum(label);
            let words = all_reduced_words(&d, &d.longest_element(), 10_000).unwrap();
            assert_eq!(words.len() as u128, stanley(n));
            assert_eq!(words.len(), brute_force_count(&d));
            assert!(words.iter().all(|w| w.is_reduced(&d)));
        }
        let a4 = datum("A4");
        assert!(matches!(
            all_reduced_words(&a4, &a4.longest_element(), 100),
            Err(Error::CapExceeded { cap: 100 })
        ));
    }

    #[test]
    fn braid_relations_hold_on_coroots() {
        for label in ["A3", "B3", "C3", "D4", "G2", "F4"] {
            let d = datum(label);
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    if i == j {
                        continue;
                    }
                    let m = usize::from(d.braid_order(i, j));
                    let alt = |a: usize, b: usize| {
                        ReducedWord((0..m).map(|k| if k % 2 == 0 { a } else { b }).collect())
                    };
                    let u = d.element_of(&alt(i, j)).unwrap();
                    let v = d.element_of(&alt(j, i)).unwrap();
                    for k in 0..d.rank() {
                        let c = d.simple_coroot(k);
                        assert_eq!(u.apply(&c), v.apply(&c), "{label} m({i},{j})");
                    }
                }
            }
        }
    }

    #[test]
    fn group_orders() {
        for (label, order) in [("A2", 6), ("A3", 24), ("A4", 120), ("B2", 8), ("G2", 12), ("D4", 192)] {
            let g = WeylGroup::new(datum(label)).unwrap();
            assert_eq!(g.len(), order, "{label}");
            for k in 0..g.len() {
                let w = g.element(k);
                assert_eq!(g.element(g.inverse_index(k)), &w.inverse(g.datum()));
                assert_eq!(g.word(k).len(), w.length());
            }
        }
        assert!(matches!(
            WeylGroup::with_caps(datum("A4"), 50, 10),
            Err(Error::CapExceeded { cap: 50 })
        ));
    }

    #[test]
    fn inversion_coroots_enumerate_positive_coroots() {
        for label in ["A2", "A3", "A4", "D4"] {
            let d = datum(label);
            let mut expected = d.positive_coroots().to_vec();
            expected.sort();
            let words = all_reduced_words(&d, &d.longest_element(), 5_000).unwrap();
            for word in words.iter().step_by(7) {
                let mut betas = word.inversion_coroots(&d);
                betas.sort();
                assert_eq!(betas, expected, "{label} {word}");
            }
        }
    }

    #[test]
    fn braid_path_examples() {
        let g = WeylGroup::new(datum("A2")).unwrap();
        let from = ReducedWord::one_based(&[1, 2, 1]);
        let to = ReducedWord::one_based(&[2, 1, 2]);
        let path = g.braid_path(&from, &to).unwrap();
        assert_eq!(
            path.as_slice(),
            &[BraidMove {
                position: 0,
                order: 3,
                nodes: (0, 1)
            }]
        );
        assert!(g.braid_path(&from, &from).unwrap().is_empty());
        assert!(g.braid_path(&from, &ReducedWord::one_based(&[1, 2])).is_err());
        assert!(g
            .braid_path(&ReducedWord::one_based(&[1, 1, 2]), &to)
            .is_err());
    }

    #[test]
    fn braid_path_a4_replays() {
        let g = WeylGroup::new(datum("A4")).unwrap();
        let from = ReducedWord::one_based(&[1, 4, 2, 3, 2, 1, 4, 2, 3, 2]);
        let to = ReducedWord::one_based(&[2, 3, 2, 1, 4, 2, 3, 2, 1, 4]);
        let path = g.braid_path(&from, &to).unwrap();
        assert!(!path.is_empty());
        let end = path
            .iter()
            .try_fold(from.clone(), |w, mv| mv.apply(&w))
            .unwrap();
        assert_eq!(end, to);
        // BFS distances are symmetric
        assert_eq!(g.braid_path(&to, &from).unwrap().len(), path.len());
    }

    #[test]
    fn word_graphs_are_connected() {
        for (family, rank, size) in [(Family::A, 2, 2), (Family::A, 3, 16), (Family::A, 4, 768)] {
            let d = RootDatum::build(family, rank).unwrap();
            let g = WeylGroup::new(d.clone()).unwrap();
            let graph = g.word_graph(&d.longest_word()).unwrap();
            assert_eq!(graph.len(), size);
        }
    }

    #[test]
    fn non_simply_laced_moves_have_higher_order() {
        let g2 = datum("G2");
        let word = g2.longest_word();
        let moves = braid_moves(&g2, &word);
        assert_eq!(moves.len(), 1);
        assert_eq!(moves[0].order, 6);
        let b2 = datum("B2");
        assert_eq!(braid_moves(&b2, &b2.longest_word())[0].order, 4);
    }

    #[test]
    fn word_parsing() {
        let w: ReducedWord = "1,2,1".parse().unwrap();
        assert_eq!(w, ReducedWord::one_based(&[1, 2, 1]));
        assert_eq!(w.to_string(), "1,2,1");
        assert!("1,0".parse::<ReducedWord>().is_err());
        assert!("".parse::<ReducedWord>().unwrap().is_empty());
    }
}
